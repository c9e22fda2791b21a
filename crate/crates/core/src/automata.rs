//! Multiplication cellular automata `Mul_{p,N}` and their compositions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use crate::arith::{parse_rational, prime_steps, Nat, Rat};
use crate::config::DigitConfig;
use crate::error::{Error, Result};

/// The rule descriptor `(p, N)` with `p | N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MulRule {
    p: u64,
    base: u64,
}

impl MulRule {
    pub fn new(p: u64, base: u64) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidBase(0, 1));
        }
        if p == 0 || !base.is_multiple_of(p) {
            return Err(Error::NotADivisor { p, base });
        }
        Ok(MulRule { p, base })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.base / self.p
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// `mul_{p,N}(a, b) = a_0 p + b_1` where `a = a_1 q + a_0`, `b = b_1 q + b_0`.
    /// Digits must be below `N`.
    pub fn local(&self, a: u64, b: u64) -> u64 {
        let q = self.q();
        (a % q) * self.p + b / q
    }

    /// The rule `Mul_{N/p, N}`.
    pub fn complement(&self) -> MulRule {
        MulRule {
            p: self.q(),
            base: self.base,
        }
    }

    fn check_base(&self, x: &DigitConfig) -> Result<()> {
        if x.base() != self.base {
            return Err(Error::BaseMismatch {
                expected: self.base,
                actual: x.base(),
            });
        }
        Ok(())
    }

    /// One application of `Mul_{p,N}`.
    pub fn step(&self, x: &DigitConfig) -> Result<DigitConfig> {
        self.check_base(x)?;
        Ok(x.apply_local_rule(|a, b| self.local(a, b)))
    }

    /// `Mul_{p,N}^{-1} = sigma^{-1} o Mul_{N/p,N}`.
    pub fn inverse_step(&self, x: &DigitConfig) -> Result<DigitConfig> {
        Ok(self.complement().step(x)?.translate(1))
    }

    /// `k` applications, using inverse steps when `k < 0`.
    pub fn iterate(&self, x: &DigitConfig, k: i64) -> Result<DigitConfig> {
        self.check_base(x)?;
        let mut y = x.clone();
        for _ in 0..k.unsigned_abs() {
            y = if k > 0 {
                self.step(&y)?
            } else {
                self.inverse_step(&y)?
            };
        }
        Ok(y)
    }
}

/// `mul_{p,N}(a, b)` with range checks.
pub fn local_rule(rule: &MulRule, a: u64, b: u64) -> Result<u64> {
    for (position, d) in [a, b].into_iter().enumerate() {
        if d >= rule.base {
            return Err(Error::DigitOutOfRange {
                position,
                digit: d.to_string(),
                bound: rule.base.to_string(),
            });
        }
    }
    Ok(rule.local(a, b))
}

/// One prime factor step of `Mul_{alpha,N}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Forward(u64),
    Inverse(u64),
}

/// `alpha = p/q` whose numerator and denominator factor over primes of `N`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMultiplier {
    alpha: Rat,
    base: u64,
    numer_steps: Vec<u64>,
    denom_steps: Vec<u64>,
}

impl RationalMultiplier {
    pub fn new(alpha: Rat, base: u64) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidBase(0, 1));
        }
        let not_rep = || Error::NotRepresentable {
            multiplier: alpha.to_string(),
            base,
        };
        if alpha <= Rat::zero() {
            return Err(not_rep());
        }
        let numer = alpha.numer().to_biguint().ok_or_else(not_rep)?;
        let denom = alpha.denom().to_biguint().ok_or_else(not_rep)?;
        let numer_steps = prime_steps(&numer, base).ok_or_else(not_rep)?;
        let denom_steps = prime_steps(&denom, base).ok_or_else(not_rep)?;
        Ok(RationalMultiplier {
            alpha,
            base,
            numer_steps,
            denom_steps,
        })
    }

    /// Parses `"p/q@N"`.
    pub fn parse_with_base(s: &str) -> Result<Self> {
        let (a, n) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("expected \"p/q@N\", got {s:?}")))?;
        let base = n
            .trim()
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("base in {s:?}: {e}")))?;
        RationalMultiplier::new(parse_rational(a)?, base)
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Numerator steps first, then inverse steps for the denominator.
    pub fn steps(&self) -> Vec<Step> {
        self.numer_steps
            .iter()
            .map(|&p| Step::Forward(p))
            .chain(self.denom_steps.iter().map(|&p| Step::Inverse(p)))
            .collect()
    }

    pub fn apply(&self, x: &DigitConfig) -> Result<DigitConfig> {
        apply_steps(x, &self.steps())
    }
}

impl fmt::Debug for RationalMultiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.alpha, self.base)
    }
}

impl FromStr for RationalMultiplier {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_base(s)
    }
}

/// Applies the steps in the given order.
pub fn apply_steps(x: &DigitConfig, steps: &[Step]) -> Result<DigitConfig> {
    let mut y = x.clone();
    for s in steps {
        y = match *s {
            Step::Forward(p) => MulRule::new(p, x.base())?.step(&y)?,
            Step::Inverse(p) => MulRule::new(p, x.base())?.inverse_step(&y)?,
        };
    }
    Ok(y)
}

/// `Mul_{alpha,N}(x)` with `N` the base of `x`.
pub fn mul_alpha(alpha: &Rat, x: &DigitConfig) -> Result<DigitConfig> {
    RationalMultiplier::new(alpha.clone(), x.base())?.apply(x)
}

/// `block_{N,k}`: reads `word` (most significant digit first) as a base-`N`
/// number.
pub fn block_map(base: u64, word: &[u64]) -> Result<Nat> {
    let mut acc = Nat::zero();
    for (position, &d) in word.iter().enumerate() {
        if d >= base {
            return Err(Error::DigitOutOfRange {
                position,
                digit: d.to_string(),
                bound: base.to_string(),
            });
        }
        acc = acc * base + d;
    }
    Ok(acc)
}

/// One trace word: `word[t]` is the window `F^t(x)[-(k-1), 0]`.
pub type TraceWord = Vec<Vec<u64>>;

pub const DEFAULT_TRACE_LIMIT: u64 = 1 << 22;

/// All `[-(k-1), 0]`-traces of length `horizon + 1`, sorted.
///
/// `F^t(x)[j]` depends only on `x[j..=j+t]`, so enumerating every word on
/// `[-(k-1), horizon]` yields exactly the set of traces.
pub fn trace_words(
    rule: &MulRule,
    width: usize,
    horizon: usize,
    limit: u64,
) -> Result<Vec<TraceWord>> {
    if width == 0 {
        return Err(Error::Parse("trace width must be at least 1".into()));
    }
    let len = width + horizon;
    let estimate = Nat::from(rule.base).pow(len as u32);
    let count = match estimate.to_u64() {
        Some(c) if c <= limit => c,
        _ => {
            return Err(Error::EnumerationTooLarge {
                estimate: estimate.to_string(),
                limit,
            })
        }
    };
    let mut out = BTreeSet::new();
    let mut window = vec![0u64; len];
    for code in 0..count {
        let mut c = code;
        for slot in window.iter_mut().rev() {
            *slot = c % rule.base;
            c /= rule.base;
        }
        let mut row = window.clone();
        let mut word = Vec::with_capacity(horizon + 1);
        for t in 0..=horizon {
            word.push(row[..width].to_vec());
            if t < horizon {
                let next_len = len - t - 1;
                row = (0..next_len)
                    .map(|j| rule.local(row[j], row[j + 1]))
                    .collect();
            }
        }
        out.insert(word);
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::config::Tail;
    use proptest::prelude::*;

    fn cfg(xi: Rat, base: u64) -> DigitConfig {
        DigitConfig::from_real(&xi, base).unwrap()
    }

    #[test]
    fn local_rule_examples() {
        let r = MulRule::new(2, 10).unwrap();
        assert_eq!(local_rule(&r, 7, 3).unwrap(), 4);
        assert_eq!(local_rule(&r, 0, 0).unwrap(), 0);
        assert_eq!(local_rule(&MulRule::new(3, 6).unwrap(), 4, 5).unwrap(), 2);
        assert!(local_rule(&r, 10, 0).is_err());
        assert!(matches!(
            MulRule::new(3, 10),
            Err(Error::NotADivisor { p: 3, base: 10 })
        ));
    }

    #[test]
    fn steps_multiply() {
        let r = MulRule::new(2, 10).unwrap();
        let y = r.step(&cfg(rat(5, 1), 10)).unwrap();
        assert_eq!(y, cfg(rat(10, 1), 10));
        assert_eq!(y.digit_at(-1), 1);
        assert_eq!(
            r.step(&DigitConfig::zero(10)).unwrap(),
            DigitConfig::zero(10)
        );
        let r36 = MulRule::new(3, 6).unwrap();
        assert_eq!(r36.step(&cfg(rat(1, 1), 6)).unwrap(), cfg(rat(3, 1), 6));
        assert!(r.step(&DigitConfig::zero(6)).is_err());
    }

    #[test]
    fn inverse_steps_divide() {
        let r = MulRule::new(2, 10).unwrap();
        let y = r.inverse_step(&cfg(rat(1, 1), 10)).unwrap();
        assert_eq!(y, cfg(rat(1, 2), 10));
        assert_eq!(y.digit_at(1), 5);
        assert_eq!(
            r.inverse_step(&DigitConfig::zero(10)).unwrap(),
            DigitConfig::zero(10)
        );
    }

    #[test]
    fn rational_multipliers() {
        let x = cfg(rat(2, 1), 6);
        assert_eq!(mul_alpha(&rat(1, 1), &x).unwrap(), x);
        assert_eq!(mul_alpha(&rat(3, 2), &x).unwrap(), cfg(rat(3, 1), 6));
        assert_eq!(
            mul_alpha(&rat(5, 1), &cfg(rat(3, 1), 10)).unwrap(),
            cfg(rat(15, 1), 10)
        );
        assert!(matches!(
            mul_alpha(&rat(5, 1), &x),
            Err(Error::NotRepresentable { .. })
        ));
        let m: RationalMultiplier = "3/2@6".parse().unwrap();
        assert_eq!(m.steps(), vec![Step::Forward(3), Step::Inverse(2)]);
    }

    #[test]
    fn nines_tail_is_preserved() {
        // 0.4999... = 1/2 in its lower expansion; doubling gives 0.999...
        let x = DigitConfig::new(10, 1, vec![4], Tail::Periodic(vec![9])).unwrap();
        let y = MulRule::new(2, 10).unwrap().step(&x).unwrap();
        assert_eq!(
            y,
            DigitConfig::new(10, 1, vec![], Tail::Periodic(vec![9])).unwrap()
        );
        assert_eq!(y.real(), rat(1, 1));
    }

    #[test]
    fn block_map_examples() {
        assert_eq!(block_map(10, &[3, 8]).unwrap(), Nat::from(38u32));
        assert_eq!(block_map(7, &[5]).unwrap(), Nat::from(5u32));
        assert_eq!(block_map(2, &[1, 0, 1]).unwrap(), Nat::from(5u32));
        assert!(block_map(2, &[2]).is_err());
    }

    #[test]
    fn trace_word_counts() {
        let words = trace_words(&MulRule::new(2, 10).unwrap(), 1, 1, DEFAULT_TRACE_LIMIT).unwrap();
        assert_eq!(words.len(), 20);
        for w in &words {
            let a = w[0][0];
            assert!(w[1][0] == 2 * (a % 5) || w[1][0] == 2 * (a % 5) + 1);
        }
        let id = trace_words(&MulRule::new(1, 4).unwrap(), 2, 3, DEFAULT_TRACE_LIMIT).unwrap();
        assert_eq!(id.len(), 16);
        assert!(id.iter().all(|w| w.iter().all(|row| row == &w[0])));
        assert_eq!(
            trace_words(&MulRule::new(3, 6).unwrap(), 1, 0, DEFAULT_TRACE_LIMIT)
                .unwrap()
                .len(),
            6
        );
        assert!(matches!(
            trace_words(&MulRule::new(2, 10).unwrap(), 4, 10, DEFAULT_TRACE_LIMIT),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    fn config_strategy(base: u64) -> impl Strategy<Value = DigitConfig> {
        (
            -4i64..4,
            prop::collection::vec(0..base, 0..6),
            prop::option::of(prop::collection::vec(0..base, 1..4)),
        )
            .prop_map(move |(start, core, tail)| {
                let tail = tail.map(Tail::Periodic).unwrap_or(Tail::Zeros);
                DigitConfig::new(base, start, core, tail).unwrap()
            })
    }

    proptest! {
        #[test]
        fn step_multiplies_real(x in config_strategy(12), p in prop::sample::select(vec![1u64, 2, 3, 4, 6, 12])) {
            let r = MulRule::new(p, 12).unwrap();
            prop_assert_eq!(r.step(&x).unwrap().real(), x.real() * rat(p as i64, 1));
            prop_assert_eq!(r.step(&r.inverse_step(&x).unwrap()).unwrap(), x.clone());
            prop_assert_eq!(r.inverse_step(&r.step(&x).unwrap()).unwrap(), x);
        }

        #[test]
        fn multiplier_order_does_not_matter(x in config_strategy(6), ups in prop::collection::vec(prop::sample::select(vec![2u64, 3]), 0..4), downs in prop::collection::vec(prop::sample::select(vec![2u64, 3]), 0..4), seed in any::<u64>()) {
            let mut steps: Vec<Step> = ups.iter().map(|&p| Step::Forward(p)).chain(downs.iter().map(|&p| Step::Inverse(p))).collect();
            let a = apply_steps(&x, &steps).unwrap();
            // deterministic shuffle
            let mut s = seed;
            for i in (1..steps.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                steps.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(apply_steps(&x, &steps).unwrap(), a);
        }
    }
}
