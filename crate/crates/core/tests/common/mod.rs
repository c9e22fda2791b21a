#![allow(dead_code)]

pub mod lemmas;

use mulcube::arith::{Nat, Rat};
use mulcube::config::DigitConfig;
use mulcube::lattice::Point;
use mulcube::mixed_base::Prebasis;
use mulcube::tessellation::{LatticePath, Tessellation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn p(v: &[i64]) -> Point {
    Point(v.to_vec())
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// A random prebasis of dimension `d` with entries in `1..=max`, base >= 2.
pub fn random_prebasis(rng: &mut impl Rng, d: usize, max: u64) -> Prebasis {
    loop {
        let v: Vec<u64> = (0..d).map(|_| rng.gen_range(1..=max)).collect();
        if v.iter().product::<u64>() >= 2 {
            return Prebasis::new(v).unwrap();
        }
    }
}

/// A random nonnegative rational with a small denominator.
pub fn random_real(rng: &mut impl Rng) -> Rat {
    let num: i64 = rng.gen_range(0..200_000);
    let den: i64 = *[1, 2, 3, 4, 7, 8, 9, 11, 12, 25, 49, 60, 100, 1000]
        .choose(rng)
        .unwrap();
    rat(num, den)
}

/// A tessellation backed by a random rational. About one in five diagonals
/// uses the non-canonical expansion when one exists.
pub fn random_tessellation(rng: &mut impl Rng, n: &Prebasis) -> Tessellation {
    let base = n.product().unwrap();
    let xi = random_real(rng);
    let x = if rng.gen_ratio(1, 5) {
        DigitConfig::lower_from_real(&xi, base).unwrap()
    } else {
        DigitConfig::from_real(&xi, base).unwrap()
    };
    Tessellation::new(n.clone(), x).unwrap()
}

pub fn random_point(rng: &mut impl Rng, d: usize, r: i64) -> Point {
    Point((0..d).map(|_| rng.gen_range(-r..=r)).collect())
}

/// A random path from `a` to `b`: the required unit steps in random order,
/// with up to `detours` back-and-forth excursions spliced in.
pub fn random_path(rng: &mut impl Rng, a: &Point, b: &Point, detours: usize) -> LatticePath {
    let d = a.dim();
    let mut moves: Vec<(usize, i64)> = Vec::new();
    for j in 0..d {
        let delta = b[j] - a[j];
        for _ in 0..delta.abs() {
            moves.push((j, delta.signum()));
        }
    }
    for _ in 0..rng.gen_range(0..=detours) {
        let j = rng.gen_range(0..d);
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        moves.push((j, s));
        moves.push((j, -s));
    }
    moves.shuffle(rng);
    let mut cur = a.clone();
    let mut pts = vec![cur.clone()];
    for (j, s) in moves {
        cur[j] += s;
        pts.push(cur.clone());
    }
    LatticePath::new(pts).unwrap()
}

/// Value of the cube at `z` straight from `floor(alpha(z) xi) mod N`.
pub fn floor_oracle(n: &Prebasis, xi: &Rat, z: &Point) -> u64 {
    let alpha = n.weight(&-z).unwrap();
    let v: BigInt = (alpha * xi).floor().to_integer();
    let base = BigInt::from(n.product().unwrap());
    v.mod_floor(&base).to_u64().unwrap()
}

/// `lbl(f, (a, b))` for `a <= b` as `floor(alpha(b) xi) mod m(n, a - b)`.
pub fn floor_label(n: &Prebasis, xi: &Rat, a: &Point, b: &Point) -> Nat {
    let alpha = n.weight(&-b).unwrap();
    let m: BigInt = n.weight_nat(&(a - b)).unwrap().into();
    let v: BigInt = (alpha * xi).floor().to_integer();
    v.mod_floor(&m).to_biguint().unwrap()
}

/// A random configuration: short core, then a zero, periodic or all
/// `N - 1` tail.
pub fn random_config(rng: &mut impl Rng, base: u64) -> DigitConfig {
    use mulcube::config::Tail;
    let start = rng.gen_range(-4..=2);
    let core: Vec<u64> = (0..rng.gen_range(0..=6))
        .map(|_| rng.gen_range(0..base))
        .collect();
    let tail = match rng.gen_range(0..4) {
        0 | 1 => Tail::Zeros,
        2 => Tail::Periodic(
            (0..rng.gen_range(1..=3))
                .map(|_| rng.gen_range(0..base))
                .collect(),
        ),
        _ => Tail::Periodic(vec![base - 1]),
    };
    DigitConfig::new(base, start, core, tail).unwrap()
}
