//! Conjugacies and factor maps between multiplication automata in
//! different bases, built from tessellations and macro/micro regrouping.

use crate::arith::factorize;
use crate::config::DigitConfig;
use crate::error::{Error, Result};
use crate::macro_micro::{macrotile, microtile, MacroMatrix};
use crate::mixed_base::Prebasis;
use crate::tessellation::Tessellation;

/// `tess_n(x)`.
pub fn tess_map(x: &DigitConfig, n: &Prebasis) -> Result<Tessellation> {
    Tessellation::new(n.clone(), x.clone())
}

/// `diag_n(f)`.
pub fn diag_map(f: &Tessellation) -> DigitConfig {
    f.diagonal().clone()
}

/// The prime prebasis `(p_i)` and exponent prebasis `(p_i^{k_i})` of `N`,
/// together with `A_N = diag(k_i)`.
struct PrimeSplit {
    radical: Prebasis,
    powers: Prebasis,
    exponents: MacroMatrix,
}

fn split(base: u64) -> Result<PrimeSplit> {
    if base < 2 {
        return Err(Error::InvalidBase(base, 2));
    }
    let f = factorize(base);
    let primes: Vec<u64> = f.iter().map(|&(p, _)| p).collect();
    let powers: Vec<u64> = f.iter().map(|&(p, k)| p.pow(k)).collect();
    let ks: Vec<u64> = f.iter().map(|&(_, k)| u64::from(k)).collect();
    Ok(PrimeSplit {
        radical: Prebasis::new(primes)?,
        powers: Prebasis::new(powers)?,
        exponents: MacroMatrix::diag(&ks)?,
    })
}

fn radical(s: &PrimeSplit) -> u64 {
    s.radical.entries().iter().product()
}

/// `conj_{N,M}` where `M` is the product of the primes of `N`.
fn to_radical(x: &DigitConfig, s: &PrimeSplit) -> Result<DigitConfig> {
    let f = tess_map(x, &s.powers)?;
    Ok(diag_map(&microtile(&f, &s.exponents, &s.radical)?))
}

/// `conj_{N,M}^{-1}`.
fn from_radical(y: &DigitConfig, s: &PrimeSplit) -> Result<DigitConfig> {
    let g = tess_map(y, &s.radical)?;
    Ok(diag_map(&macrotile(&g, &s.exponents)?))
}

/// `conj_{N_1,N_2}` for bases with the same prime divisors.
pub fn conj(x: &DigitConfig, target: u64) -> Result<DigitConfig> {
    let source = split(x.base())?;
    let dest = split(target)?;
    if source.radical != dest.radical {
        return Err(Error::PrimeSetMismatch(x.base(), target));
    }
    from_radical(&to_radical(x, &source)?, &dest)
}

/// `fact_{N_1,N_2}` for targets whose primes all divide the source base.
pub fn fact(x: &DigitConfig, target: u64) -> Result<DigitConfig> {
    let source = split(x.base())?;
    let dest = split(target)?;
    let primes = source.radical.entries();
    let axes = dest
        .radical
        .entries()
        .iter()
        .map(|p| primes.iter().position(|q| q == p))
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::PrimeCondition {
            source_base: x.base(),
            target,
        })?;
    let m1 = tess_map(&to_radical(x, &source)?, &source.radical)?;
    let select = MacroMatrix::column_selection(primes.len(), &axes)?;
    let m2 = diag_map(&macrotile(&m1, &select)?);
    debug_assert_eq!(m2.base(), radical(&dest));
    from_radical(&m2, &dest)
}
