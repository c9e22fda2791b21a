//! Exact arithmetic helpers: big rationals, floor digits, and small-integer
//! factorization.
//!
//! Magnitudes are arbitrary precision (`num-bigint`); bases and prebasis
//! entries are machine integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Nat = BigUint;
pub type Int = BigInt;
/// Signed exact rational. Represented values (`real`, weights) are always
/// nonnegative; path integrals and directed labels may be negative.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_nat(n: &Nat) -> Rat {
    Rat::from_integer(BigInt::from(n.clone()))
}

/// `base^exp` for any integer exponent.
pub fn pow_rat(base: u64, exp: i64) -> Rat {
    let p = BigInt::from(base).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

pub fn pow_nat(base: u64, exp: u64) -> Nat {
    Nat::from(base).pow(exp as u32)
}

/// `floor(x)` for `x >= 0`.
pub fn floor_nat(x: &Rat) -> Nat {
    debug_assert!(!x.is_negative());
    x.floor()
        .to_integer()
        .to_biguint()
        .expect("nonnegative rational")
}

/// Converts an integral rational into a natural number.
pub fn rat_to_nat(x: &Rat) -> Option<Nat> {
    if x.is_integer() && !x.is_negative() {
        x.to_integer().to_biguint()
    } else {
        None
    }
}

/// `floor(N^i * xi) mod N`: the digit at index `i` of the canonical base-`N`
/// expansion of `xi`, where index `i` carries weight `N^-i`.
pub fn canonical_digit(xi: &Rat, base: u64, i: i64) -> Result<u64> {
    if base < 2 {
        return Err(Error::InvalidBase(base, 2));
    }
    if xi.is_negative() {
        return Err(Error::Parse(format!("negative value {xi}")));
    }
    let scaled = xi * pow_rat(base, i);
    let digit = floor_nat(&scaled) % Nat::from(base);
    Ok(digit.to_u64().expect("digit below base"))
}

/// Parses `"p/q"` or `"p"` into a nonnegative rational.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("malformed rational {s:?}: {e}")))
    };
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rat::new(parse_int(p)?, q)
        }
        None => Rat::from_integer(parse_int(s)?),
    };
    if value.is_negative() {
        return Err(Error::Parse(format!("negative rational {s:?}")));
    }
    Ok(value)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The distinct primes dividing `n`, ascending.
pub fn prime_set(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Splits `x` into prime factors, each of which must divide `base`.
/// Returns the factors with multiplicity, ascending.
pub fn prime_steps(x: &Nat, base: u64) -> Option<Vec<u64>> {
    let mut rest = x.clone();
    let mut steps = Vec::new();
    for p in prime_set(base) {
        let bp = Nat::from(p);
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            steps.push(p);
        }
    }
    if rest.is_one() {
        Some(steps)
    } else {
        None
    }
}

pub fn checked_product(factors: impl IntoIterator<Item = (u64, u64)>) -> Result<u64> {
    let mut acc: u64 = 1;
    let mut big = Nat::one();
    let mut overflow = false;
    for (b, e) in factors {
        big *= pow_nat(b, e);
        if !overflow {
            match u32::try_from(e).ok().and_then(|e| b.checked_pow(e)) {
                Some(v) => match acc.checked_mul(v) {
                    Some(a) => acc = a,
                    None => overflow = true,
                },
                None => overflow = true,
            }
        }
    }
    if overflow {
        Err(Error::BaseOverflow(big.to_string()))
    } else {
        Ok(acc)
    }
}
