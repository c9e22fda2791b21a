//! Mixed bases, prebases and directive sequences.
//!
//! Axis indices are 0-based throughout the crate: the usual `e_1` is
//! `Point::unit(d, 0)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{checked_product, pow_nat, pow_rat, Nat, Rat};
use crate::error::{Error, Result};
use crate::lattice::Point;

/// A vector of positive integers whose product is the working digit base.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Prebasis(Vec<u64>);

impl Prebasis {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidPrebasis("empty prebasis".into()));
        }
        if let Some(i) = entries.iter().position(|&e| e == 0) {
            return Err(Error::InvalidPrebasis(format!("entry {i} is zero")));
        }
        Ok(Prebasis(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `N`, the product of the entries. Fails if it does not fit in 64 bits.
    pub fn product(&self) -> Result<u64> {
        checked_product(self.0.iter().map(|&e| (e, 1)))
    }

    /// `m(n, v) = prod n[j]^(-v[j])`.
    pub fn weight(&self, v: &Point) -> Result<Rat> {
        self.check_dim(v)?;
        Ok(self
            .0
            .iter()
            .zip(v.coords())
            .fold(Rat::one(), |acc, (&n, &e)| acc * pow_rat(n, -e)))
    }

    /// `m(n, v)` for `v <= 0`, where it is a natural number.
    pub fn weight_nat(&self, v: &Point) -> Result<Nat> {
        self.check_dim(v)?;
        if let Some(j) = v.coords().iter().position(|&x| x > 0) {
            return Err(Error::InvalidDirectiveSequence(format!(
                "weight of {v:?} is not integral (coordinate {j} positive)"
            )));
        }
        Ok(self
            .0
            .iter()
            .zip(v.coords())
            .fold(Nat::one(), |acc, (&n, &e)| {
                acc * pow_nat(n, e.unsigned_abs())
            }))
    }

    /// The prebasis `n'` with `n'[i] = n[iota[i]]`.
    pub fn select(&self, iota: &[usize]) -> Result<Prebasis> {
        check_injection(iota, self.dim())?;
        Prebasis::new(iota.iter().map(|&i| self.0[i]).collect())
    }

    pub fn check_dim(&self, v: &Point) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: v.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<u64>> for Prebasis {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Prebasis::new(v)
    }
}

impl From<Prebasis> for Vec<u64> {
    fn from(p: Prebasis) -> Self {
        p.0
    }
}

impl fmt::Debug for Prebasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", Point(self.0.iter().map(|&x| x as i64).collect()))
    }
}

impl std::str::FromStr for Prebasis {
    type Err = Error;
    /// Parses `"2,5"`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("prebasis entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Prebasis::new(entries)
    }
}

/// A divisibility chain `m[1] | m[2] | ... | m[k]` of positive integers.
/// The implicit `m[0] = 1` is not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedBase(Vec<Nat>);

impl MixedBase {
    pub fn new(entries: Vec<Nat>) -> Result<Self> {
        let mut prev = Nat::one();
        for (index, m) in entries.iter().enumerate() {
            if m.is_zero() || !(m % &prev).is_zero() {
                return Err(Error::InvalidMixedBase { index });
            }
            prev = m.clone();
        }
        Ok(MixedBase(entries))
    }

    pub fn from_u64(entries: &[u64]) -> Result<Self> {
        MixedBase::new(entries.iter().map(|&e| Nat::from(e)).collect())
    }

    pub fn entries(&self) -> &[Nat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m[i]` with the convention `m[0] = 1`.
    pub fn at(&self, i: usize) -> Nat {
        if i == 0 {
            Nat::one()
        } else {
            self.0[i - 1].clone()
        }
    }
}

/// A componentwise decreasing sequence `0 >= v_1 >= ... >= v_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DirSeqRecord", into = "DirSeqRecord")]
pub struct DirectiveSequence {
    dim: usize,
    vectors: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct DirSeqRecord {
    dim: usize,
    vectors: Vec<Point>,
}

impl TryFrom<DirSeqRecord> for DirectiveSequence {
    type Error = Error;
    fn try_from(r: DirSeqRecord) -> Result<Self> {
        DirectiveSequence::new(r.dim, r.vectors)
    }
}

impl From<DirectiveSequence> for DirSeqRecord {
    fn from(s: DirectiveSequence) -> Self {
        DirSeqRecord {
            dim: s.dim,
            vectors: s.vectors,
        }
    }
}

impl DirectiveSequence {
    pub fn new(dim: usize, vectors: Vec<Point>) -> Result<Self> {
        let mut prev = Point::zero(dim);
        for (i, v) in vectors.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: v.dim(),
                });
            }
            if !v.le(&prev) {
                return Err(Error::InvalidDirectiveSequence(format!(
                    "entry {i} = {v:?} is not below its predecessor {prev:?}"
                )));
            }
            prev = v.clone();
        }
        Ok(DirectiveSequence { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Point] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// All entries lie in `{-1, 0}^d`.
    pub fn is_binary(&self) -> bool {
        self.vectors
            .iter()
            .all(|v| v.coords().iter().all(|&x| x == 0 || x == -1))
    }

    /// `v_i` with the convention `v_0 = 0`.
    pub fn at(&self, i: usize) -> Point {
        if i == 0 {
            Point::zero(self.dim)
        } else {
            self.vectors[i - 1].clone()
        }
    }
}

/// The mixed-base digits `(a_0, ..., a_k)` of `a`.
pub fn mixed_digits(a: &Nat, m: &MixedBase) -> Vec<Nat> {
    let mut out = Vec::with_capacity(m.len() + 1);
    let mut rest = a.clone();
    let mut prev = Nat::one();
    for mi in m.entries() {
        let (q, r) = rest.div_rem(&(mi / &prev));
        out.push(r);
        rest = q;
        prev = mi.clone();
    }
    out.push(rest);
    out
}

/// `sum a_i m[i]`, the inverse of [`mixed_digits`].
pub fn eval_digits(digits: &[Nat], m: &MixedBase) -> Result<Nat> {
    if digits.len() != m.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: m.len() + 1,
            actual: digits.len(),
        });
    }
    let mut acc = Nat::zero();
    for (i, a) in digits.iter().enumerate() {
        let mi = m.at(i);
        if i < m.len() {
            let bound = m.at(i + 1) / &mi;
            if a >= &bound {
                return Err(Error::DigitOutOfRange {
                    position: i,
                    digit: a.to_string(),
                    bound: bound.to_string(),
                });
            }
        }
        acc += a * mi;
    }
    Ok(acc)
}

/// `m(n, (v_i))`.
pub fn base_from_dirseq(n: &Prebasis, seq: &DirectiveSequence) -> Result<MixedBase> {
    if seq.dim() != n.dim() {
        return Err(Error::DimensionMismatch {
            expected: n.dim(),
            actual: seq.dim(),
        });
    }
    let entries = seq
        .vectors()
        .iter()
        .map(|v| n.weight_nat(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(MixedBase(entries))
}

/// `base_n(a, (v_1, ..., v_k))`.
pub fn base_n_digits(n: &Prebasis, a: &Nat, seq: &DirectiveSequence) -> Result<Vec<Nat>> {
    Ok(mixed_digits(a, &base_from_dirseq(n, seq)?))
}

/// `x ins_i y`: `y` placed after the first `i` entries of `x`.
pub fn ins<T: Clone>(x: &[T], i: usize, y: &[T]) -> Result<Vec<T>> {
    if i > x.len() {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            max: x.len() as i64,
        });
    }
    Ok([&x[..i], y, &x[i..]].concat())
}

/// `x insover_i y`: the entry at 1-based position `i` of `x` replaced by `y`.
pub fn insover<T: Clone>(x: &[T], i: usize, y: &[T]) -> Result<Vec<T>> {
    if i == 0 || i > x.len() {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            max: x.len() as i64,
        });
    }
    Ok([&x[..i - 1], y, &x[i..]].concat())
}

fn check_injection(iota: &[usize], d: usize) -> Result<()> {
    let mut seen = vec![false; d];
    for &j in iota {
        if j >= d {
            return Err(Error::AxisOutOfRange { axis: j, dim: d });
        }
        if std::mem::replace(&mut seen[j], true) {
            return Err(Error::NotInjective(format!("{iota:?} repeats axis {j}")));
        }
    }
    Ok(())
}

/// The affine embedding `Emb_{p, iota}(v) = p + sum v[i] e_{iota(i)}`.
pub fn embed(p: &Point, iota: &[usize], v: &Point) -> Result<Point> {
    check_injection(iota, p.dim())?;
    if v.dim() != iota.len() {
        return Err(Error::DimensionMismatch {
            expected: iota.len(),
            actual: v.dim(),
        });
    }
    let mut out = p.clone();
    for (i, &j) in iota.iter().enumerate() {
        out[j] += v[i];
    }
    Ok(out)
}
