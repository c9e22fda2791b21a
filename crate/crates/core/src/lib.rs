pub mod arith;
pub mod automata;
pub mod config;
pub mod conjugacy;
pub mod cube;
pub mod error;
pub mod lattice;
pub mod macro_micro;
pub mod mixed_base;
pub mod tessellation;
