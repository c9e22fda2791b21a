//! Randomized instances of the mixed-base lemmas. Each check draws one
//! instance from `rng` and reports a counterexample as `Err`.

use mulcube::arith::Nat;
use mulcube::lattice::Point;
use mulcube::mixed_base::{
    base_n_digits, embed, ins, insover, mixed_digits, DirectiveSequence, MixedBase, Prebasis,
};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use super::random_prebasis;

pub type Check = fn(&mut rand_chacha::ChaCha8Rng) -> Result<(), String>;

pub const ALL: &[(&str, Check)] = &[
    ("scope", scope),
    ("prescope", prescope),
    ("endscope", endscope),
    ("twostepbase", twostepbase),
    ("prebasispath", prebasispath),
    ("subbasis", subbasis),
];

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn nat(rng: &mut impl Rng) -> Nat {
    Nat::from(rng.gen_range(0u64..10_000_000))
}

/// Partial products of random ratios.
fn base_chain(rng: &mut impl Rng, len: usize) -> Vec<Nat> {
    let mut acc = Nat::from(1u32);
    (0..len)
        .map(|_| {
            acc *= rng.gen_range(1u64..=7);
            acc.clone()
        })
        .collect()
}

/// A random directive sequence of `len` vectors, possibly with repeats.
fn vchain(rng: &mut impl Rng, d: usize, len: usize) -> Vec<Point> {
    let mut acc = Point::zero(d);
    (0..len)
        .map(|_| {
            acc = &acc - &Point((0..d).map(|_| rng.gen_range(0..=2)).collect());
            acc.clone()
        })
        .collect()
}

fn seq(d: usize, v: &[Point]) -> DirectiveSequence {
    DirectiveSequence::new(d, v.to_vec()).expect("decreasing by construction")
}

fn digits(n: &Prebasis, a: &Nat, v: &[Point]) -> Vec<Nat> {
    base_n_digits(n, a, &seq(n.dim(), v)).expect("dimensions agree")
}

/// Cuts `full` into an outer part and the contiguous block inserted at `i`.
fn split<T: Clone>(rng: &mut impl Rng, full: &[T]) -> (Vec<T>, usize, Vec<T>) {
    let i = rng.gen_range(0..full.len());
    let k2 = rng.gen_range(1..=full.len() - i);
    let inner = full[i..i + k2].to_vec();
    let outer = [&full[..i], &full[i + k2..]].concat();
    (outer, i, inner)
}

pub fn scope(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(), String> {
    let len = rng.gen_range(1..=7);
    let full = base_chain(rng, len);
    let (m, i, m2) = split(rng, &full);
    let a = nat(rng);
    let mb = MixedBase::new(m.clone()).map_err(|e| e.to_string())?;
    let outer = mixed_digits(&a, &mb);
    let mi = mb.at(i);
    let inner = MixedBase::new(m2.iter().map(|x| x / &mi).collect()).map_err(|e| e.to_string())?;
    let joined = MixedBase::new(ins(&m, i, &m2).unwrap()).map_err(|e| e.to_string())?;
    let lhs = mixed_digits(&a, &joined);
    let rhs = insover(&outer, i + 1, &mixed_digits(&outer[i], &inner)).unwrap();
    ensure(lhs == rhs, || format!("a={a} m={m:?} i={i} m'={m2:?}"))
}

pub fn prescope(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(), String> {
    let d = rng.gen_range(1..=3);
    let n = random_prebasis(rng, d, 6);
    let len = rng.gen_range(1..=6);
    let full = vchain(rng, d, len);
    let (v, i, w) = split(rng, &full);
    let a = nat(rng);
    let outer = digits(&n, &a, &v);
    let vi = seq(d, &v).at(i);
    let shifted: Vec<Point> = w.iter().map(|x| x - &vi).collect();
    let inner = digits(&n, &outer[i], &shifted);
    let lhs = digits(&n, &a, &ins(&v, i, &w).unwrap());
    let rhs = insover(&outer, i + 1, &inner).unwrap();
    ensure(lhs == rhs, || {
        format!("n={n:?} a={a} v={v:?} i={i} w={w:?}")
    })
}

/// Random sorted subset of `range`.
fn subset(rng: &mut impl Rng, range: std::ops::Range<usize>) -> Vec<usize> {
    range.filter(|_| rng.gen_bool(0.5)).collect()
}

pub fn endscope(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(), String> {
    let d = rng.gen_range(1..=3);
    let n = random_prebasis(rng, d, 6);
    let len = rng.gen_range(2..=8);
    // index 0 stands for the implicit zero vector
    let mut full = vec![Point::zero(d)];
    full.extend(vchain(rng, d, len));
    let s = rng.gen_range(0..full.len() - 1);
    let same_end = rng.gen_bool(0.5);
    let pick = |rng: &mut rand_chacha::ChaCha8Rng| -> (Vec<Point>, usize) {
        let mut idx = subset(rng, 1..s);
        if s > 0 {
            idx.push(s);
        }
        let i = idx.len();
        idx.push(s + 1);
        idx.extend(subset(rng, s + 2..full.len()));
        if same_end && *idx.last().unwrap() != full.len() - 1 {
            idx.push(full.len() - 1);
        }
        (idx.iter().map(|&j| full[j].clone()).collect(), i)
    };
    let (v, i) = pick(rng);
    let (w, i2) = pick(rng);
    let a = nat(rng);
    let dv = digits(&n, &a, &v);
    let dw = digits(&n, &a, &w);
    ensure(dv[i] == dw[i2], || {
        format!("shared pair: n={n:?} a={a} v={v:?} w={w:?}")
    })?;
    if v.last() == w.last() {
        ensure(dv.last() == dw.last(), || {
            format!("shared end: n={n:?} a={a} v={v:?} w={w:?}")
        })?;
    }
    Ok(())
}

pub fn twostepbase(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(), String> {
    let d = rng.gen_range(1..=3);
    let n = random_prebasis(rng, d, 6);
    let c = vchain(rng, d, 4);
    let (p1, p2) = (&c[0], &c[3]);
    let (q1, q2) = (&c[1] - p1, &c[2] - p1);
    let a = nat(rng);
    let outer = digits(&n, &a, &[p1.clone(), p2.clone()]);
    let lhs = digits(&n, &a, &[c[1].clone(), c[2].clone()]);
    let rhs = digits(&n, &outer[1], &[q1, q2]);
    ensure(lhs[1] == rhs[1], || format!("n={n:?} a={a} chain={c:?}"))
}

pub fn prebasispath(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(), String> {
    let d = rng.gen_range(1..=3);
    let n = random_prebasis(rng, d, 6);
    let len = rng.gen_range(1..=6);
    let v = vchain(rng, d, len);
    let k = v.len();
    let a = nat(rng);
    let lhs = digits(&n, &a, &[v[0].clone(), v[k - 1].clone()])[1].clone();
    let mut rhs = Nat::zero();
    for i in 0..k - 1 {
        let m = n.weight_nat(&(&v[i] - &v[0])).unwrap();
        rhs += m * &digits(&n, &a, &[v[i].clone(), v[i + 1].clone()])[1];
    }
    ensure(lhs == rhs, || format!("n={n:?} a={a} v={v:?}"))
}

pub fn subbasis(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(), String> {
    let d = rng.gen_range(1..=4);
    let n = random_prebasis(rng, d, 6);
    let mut axes: Vec<usize> = (0..d).collect();
    axes.shuffle(rng);
    let iota = &axes[..rng.gen_range(1..=d)];
    let sub = Prebasis::new(iota.iter().map(|&j| n.entries()[j]).collect()).unwrap();
    let len = rng.gen_range(0..=5);
    let v = vchain(rng, iota.len(), len);
    let w: Vec<Point> = v
        .iter()
        .map(|x| embed(&Point::zero(d), iota, x).unwrap())
        .collect();
    let a = nat(rng);
    ensure(digits(&sub, &a, &v) == digits(&n, &a, &w), || {
        format!("n={n:?} iota={iota:?} a={a} v={v:?}")
    })
}
