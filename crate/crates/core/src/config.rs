//! Bi-infinite base-`N` digit configurations with a zero left tail, a finite
//! core and a zero or periodic right tail.
//!
//! Index `i` carries weight `N^-i`: index 0 is the units digit, negative
//! indices are the more significant digits and positive indices are the
//! fractional digits. Every configuration is kept in a normal form, so the
//! derived equality is digitwise equality over all of `Z`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{pow_rat, Nat, Rat};
use crate::error::{Error, Result};

/// Right tail of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    Zeros,
    /// Word repeated forever, starting right after the core.
    Periodic(Vec<u64>),
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ConfigRecord", into = "ConfigRecord")]
pub struct DigitConfig {
    base: u64,
    start: i64,
    core: Vec<u64>,
    tail: Tail,
}

impl DigitConfig {
    /// Builds a configuration whose core occupies `start..start + core.len()`
    /// and whose tail follows immediately.
    pub fn new(base: u64, start: i64, core: Vec<u64>, tail: Tail) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidBase(0, 1));
        }
        let tail_word: &[u64] = match &tail {
            Tail::Zeros => &[],
            Tail::Periodic(w) if w.is_empty() => {
                return Err(Error::Parse("periodic tail needs a nonempty word".into()))
            }
            Tail::Periodic(w) => w,
        };
        for (position, &d) in core.iter().chain(tail_word).enumerate() {
            if d >= base {
                return Err(Error::DigitOutOfRange {
                    position,
                    digit: d.to_string(),
                    bound: base.to_string(),
                });
            }
        }
        let mut x = DigitConfig {
            base,
            start,
            core,
            tail,
        };
        x.normalize();
        Ok(x)
    }

    /// The all-zero configuration.
    pub fn zero(base: u64) -> Self {
        DigitConfig {
            base,
            start: 0,
            core: Vec::new(),
            tail: Tail::Zeros,
        }
    }

    /// Finite-support configuration with `digits` starting at index `start`.
    pub fn from_digits(base: u64, start: i64, digits: Vec<u64>) -> Result<Self> {
        Self::new(base, start, digits, Tail::Zeros)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// First index of the core; every digit below it is zero.
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn core(&self) -> &[u64] {
        &self.core
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn tail_start(&self) -> i64 {
        self.start + self.core.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.core.is_empty() && self.tail == Tail::Zeros
    }

    pub fn has_finite_support(&self) -> bool {
        self.tail == Tail::Zeros
    }

    /// A configuration is canonical iff it does not end in an infinite run
    /// of `N - 1`, i.e. iff it is the floor-digit expansion of its value.
    pub fn is_canonical(&self) -> bool {
        match &self.tail {
            Tail::Periodic(w) => !(self.base > 1 && w.len() == 1 && w[0] == self.base - 1),
            Tail::Zeros => true,
        }
    }

    pub fn digit_at(&self, i: i64) -> u64 {
        if i < self.start {
            return 0;
        }
        let ts = self.tail_start();
        if i < ts {
            return self.core[(i - self.start) as usize];
        }
        match &self.tail {
            Tail::Zeros => 0,
            Tail::Periodic(w) => w[((i - ts) as usize) % w.len()],
        }
    }

    /// Digits at indices `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<u64> {
        (lo..=hi).map(|i| self.digit_at(i)).collect()
    }

    /// Exact value `sum_i x[i] N^-i`, periodic tails summed as geometric
    /// series.
    pub fn real(&self) -> Rat {
        if self.base == 1 {
            return Rat::zero();
        }
        let n = BigInt::from(self.base);
        let mut value = Rat::zero();
        if !self.core.is_empty() {
            let c = self
                .core
                .iter()
                .fold(BigInt::zero(), |acc, &d| acc * &n + BigInt::from(d));
            let last = self.start + self.core.len() as i64 - 1;
            value += Rat::from_integer(c) * pow_rat(self.base, -last);
        }
        if let Tail::Periodic(w) = &self.tail {
            let u = w
                .iter()
                .fold(BigInt::zero(), |acc, &d| acc * &n + BigInt::from(d));
            let denom = n.pow(w.len() as u32) - BigInt::one();
            value += Rat::new(u, denom) * pow_rat(self.base, 1 - self.tail_start());
        }
        value
    }

    /// The canonical base-`N` configuration of `xi >= 0`. The periodic tail
    /// is found by tracking long-division remainders.
    pub fn from_real(xi: &Rat, base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base, 2));
        }
        if xi.is_negative() {
            return Err(Error::Parse(format!("negative value {xi}")));
        }
        let num = xi.numer().to_biguint().expect("nonnegative");
        let den = xi.denom().to_biguint().expect("positive");
        let (int_part, mut rem) = num.div_rem(&den);

        let mut int_digits = radix_le(&int_part, base);
        int_digits.reverse();
        let start = 1 - int_digits.len() as i64;

        let big_base = Nat::from(base);
        let mut frac = Vec::new();
        let mut seen: HashMap<Nat, usize> = HashMap::new();
        let tail = loop {
            if rem.is_zero() {
                break Tail::Zeros;
            }
            if let Some(&at) = seen.get(&rem) {
                let word = frac.split_off(at);
                break Tail::Periodic(word);
            }
            seen.insert(rem.clone(), frac.len());
            let (d, r) = (&rem * &big_base).div_rem(&den);
            frac.push(d.to_u64().expect("digit below base"));
            rem = r;
        };
        let mut core = int_digits;
        core.extend(frac);
        Self::new(base, start, core, tail)
    }

    /// The expansion of `xi` that ends in an infinite run of `N - 1` when
    /// `xi > 0` has a terminating base-`N` expansion; the canonical one
    /// otherwise.
    pub fn lower_from_real(xi: &Rat, base: u64) -> Result<Self> {
        let canon = Self::from_real(xi, base)?;
        if canon.is_zero() || canon.tail != Tail::Zeros {
            return Ok(canon);
        }
        let mut core = canon.core.clone();
        let last = core
            .last_mut()
            .expect("normal form has a nonzero last digit");
        *last -= 1;
        Self::new(base, canon.start, core, Tail::Periodic(vec![base - 1]))
    }

    /// Integer read from the digits at indices `<= 0`.
    pub fn integer_part(&self) -> Nat {
        let big_base = Nat::from(self.base);
        (self.start.min(1)..=0).fold(Nat::zero(), |acc, i| acc * &big_base + self.digit_at(i))
    }

    /// `y[i] = x[i - k]`: moves every digit `k` places towards the less
    /// significant end, dividing the value by `N^k`.
    pub fn translate(&self, k: i64) -> Self {
        let mut y = self.clone();
        if !y.is_zero() {
            y.start += k;
        }
        y
    }

    /// Applies a `(0,1)` local rule `y[i] = rule(x[i], x[i+1])`. The rule
    /// must map `(0, 0)` to 0.
    pub fn apply_local_rule(&self, rule: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(rule(0, 0), 0);
        let ts = self.tail_start();
        let core: Vec<u64> = (self.start - 1..ts)
            .map(|i| rule(self.digit_at(i), self.digit_at(i + 1)))
            .collect();
        let tail = match &self.tail {
            Tail::Zeros => Tail::Zeros,
            Tail::Periodic(w) => Tail::Periodic(
                (0..w.len())
                    .map(|j| rule(w[j], w[(j + 1) % w.len()]))
                    .collect(),
            ),
        };
        let mut y = DigitConfig {
            base: self.base,
            start: self.start - 1,
            core,
            tail,
        };
        y.normalize();
        y
    }

    fn normalize(&mut self) {
        // minimal period
        if let Tail::Periodic(w) = &mut self.tail {
            let len = w.len();
            if let Some(p) = (1..=len)
                .filter(|p| len % p == 0)
                .find(|&p| (0..len).all(|i| w[i] == w[i % p]))
            {
                w.truncate(p);
            }
            if w.iter().all(|&d| d == 0) {
                self.tail = Tail::Zeros;
            }
        }
        // absorb the core's suffix into the tail
        match &mut self.tail {
            Tail::Zeros => {
                while self.core.last() == Some(&0) {
                    self.core.pop();
                }
            }
            Tail::Periodic(w) => {
                while !self.core.is_empty() && self.core.last() == w.last() {
                    self.core.pop();
                    w.rotate_right(1);
                }
            }
        }
        let leading = self.core.iter().take_while(|&&d| d == 0).count();
        self.core.drain(..leading);
        self.start += leading as i64;
        if self.core.is_empty() {
            match &mut self.tail {
                Tail::Zeros => self.start = 0,
                Tail::Periodic(w) => {
                    while w[0] == 0 {
                        w.rotate_left(1);
                        self.start += 1;
                    }
                }
            }
        }
    }
}

fn radix_le(x: &Nat, base: u64) -> Vec<u64> {
    let b = Nat::from(base);
    let mut out = Vec::new();
    let mut x = x.clone();
    while !x.is_zero() {
        let (q, r) = x.div_rem(&b);
        out.push(r.to_u64().expect("digit below base"));
        x = q;
    }
    out
}

impl fmt::Debug for DigitConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[base {}] @{} {:?}", self.base, self.start, self.core)?;
        match &self.tail {
            Tail::Zeros => write!(f, " 0^inf"),
            Tail::Periodic(w) => write!(f, " ({w:?})^inf"),
        }
    }
}

/// Serialized form: `{base, core: {start, digits}, tail: {kind, word}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub base: u64,
    pub core: CoreRecord,
    pub tail: TailRecord,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoreRecord {
    pub start: i64,
    pub digits: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TailRecord {
    pub kind: TailKind,
    #[serde(default)]
    pub word: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailKind {
    Zeros,
    Periodic,
}

impl TryFrom<ConfigRecord> for DigitConfig {
    type Error = Error;
    fn try_from(r: ConfigRecord) -> Result<Self> {
        let tail = match r.tail.kind {
            TailKind::Zeros => Tail::Zeros,
            TailKind::Periodic => Tail::Periodic(r.tail.word),
        };
        DigitConfig::new(r.base, r.core.start, r.core.digits, tail)
    }
}

impl From<DigitConfig> for ConfigRecord {
    fn from(x: DigitConfig) -> Self {
        let (kind, word) = match x.tail {
            Tail::Zeros => (TailKind::Zeros, Vec::new()),
            Tail::Periodic(w) => (TailKind::Periodic, w),
        };
        ConfigRecord {
            base: x.base,
            core: CoreRecord {
                start: x.start,
                digits: x.core,
            },
            tail: TailRecord { kind, word },
        }
    }
}
