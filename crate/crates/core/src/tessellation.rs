//! Tessellations of `Z^d` by multiplication cubes, finite patches, edge
//! labels and path integrals.
//!
//! The cube at lattice position `z` occupies `[z - 1, z]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat_from_nat, Rat};
use crate::automata::MulRule;
use crate::config::DigitConfig;
use crate::cube::{Face, MulCube};
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::mixed_base::Prebasis;

/// The unique valid tessellation over `T_n` whose main diagonal reads
/// `diagonal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tessellation {
    prebasis: Prebasis,
    base: u64,
    diagonal: DigitConfig,
}

impl Tessellation {
    pub fn new(prebasis: Prebasis, diagonal: DigitConfig) -> Result<Self> {
        let base = prebasis.product()?;
        if diagonal.base() != base {
            return Err(Error::BaseMismatch {
                expected: base,
                actual: diagonal.base(),
            });
        }
        Ok(Tessellation {
            prebasis,
            base,
            diagonal,
        })
    }

    /// The tessellation whose diagonal is the canonical expansion of `xi`.
    pub fn from_real(prebasis: Prebasis, xi: &Rat) -> Result<Self> {
        let base = prebasis.product()?;
        if base < 2 {
            if !xi.is_zero() {
                return Err(Error::InvalidBase(base, 2));
            }
            return Tessellation::new(prebasis, DigitConfig::zero(base));
        }
        Tessellation::new(prebasis, DigitConfig::from_real(xi, base)?)
    }

    pub fn prebasis(&self) -> &Prebasis {
        &self.prebasis
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.prebasis.dim()
    }

    pub fn diagonal(&self) -> &DigitConfig {
        &self.diagonal
    }

    /// `real(f)`, the value carried by the diagonal.
    pub fn real(&self) -> Rat {
        self.diagonal.real()
    }

    /// `Mul_{alpha(z,n),N}(diagonal)`, composed from single-axis steps.
    pub fn config_at(&self, z: &Point) -> Result<DigitConfig> {
        self.prebasis.check_dim(z)?;
        let mut x = self.diagonal.clone();
        for (i, &n) in self.prebasis.entries().iter().enumerate() {
            x = MulRule::new(n, self.base)?.iterate(&x, z[i])?;
        }
        Ok(x)
    }

    /// `f[z]`.
    pub fn cube_at(&self, z: &Point) -> Result<MulCube> {
        let x = self.config_at(z)?;
        MulCube::new(self.prebasis.clone(), x.digit_at(0))
    }

    /// `sigma_v(f)`, i.e. `z -> f[z + v]`.
    pub fn shift(&self, v: &Point) -> Result<Tessellation> {
        Tessellation::new(self.prebasis.clone(), self.config_at(v)?)
    }

    /// All cubes in the box `lo..=hi`. An empty box yields an empty patch.
    pub fn extract_patch(&self, lo: &Point, hi: &Point) -> Result<Patch> {
        self.prebasis.check_dim(lo)?;
        self.prebasis.check_dim(hi)?;
        let mut patch = Patch::new(self.prebasis.clone());
        if !lo.le(hi) {
            return Ok(patch);
        }
        let d = self.dim();
        let step0 = MulRule::new(self.prebasis.entries()[0], self.base)?;
        // walk each row along axis 0 with single CA steps
        let mut rest = lo.clone();
        loop {
            let mut x = self.config_at(&rest)?;
            let mut z = rest.clone();
            loop {
                patch.insert(z.clone(), x.digit_at(0))?;
                if z[0] == hi[0] {
                    break;
                }
                x = step0.step(&x)?;
                z[0] += 1;
            }
            // advance the remaining coordinates
            let mut axis = 1;
            loop {
                if axis == d {
                    return Ok(patch);
                }
                if rest[axis] < hi[axis] {
                    rest[axis] += 1;
                    break;
                }
                rest[axis] = lo[axis];
                axis += 1;
            }
        }
    }

    /// `integ`, `fractional` and `real` along the infinite path through `p`
    /// in direction `v`.
    pub fn real_parts(&self, p: &Point, v: &Point) -> Result<RealParts> {
        check_direction(&self.prebasis, v)?;
        self.prebasis.check_dim(p)?;
        let shifted = self.config_at(p)?;
        let integral = self.prebasis.weight(p)? * rat_from_nat(&shifted.integer_part());
        let real = self.real();
        Ok(RealParts {
            fractional: &real - &integral,
            integral,
            real,
        })
    }

    /// `integ_{p,v}` summed edge by edge along the path until the labels
    /// are forced to vanish.
    pub fn integ_by_cutoff(&self, p: &Point, v: &Point) -> Result<ExtendedValue> {
        check_direction(&self.prebasis, v)?;
        let xi = self.real();
        let mut total = Rat::zero();
        let mut q = p.clone();
        // labels below p + iv vanish once wgt(p + iv) exceeds real(f)
        while self.prebasis.weight(&q)? <= xi {
            let next = &q + v;
            total += directed_integral(self, &next, &q)?;
            q = next;
        }
        Ok(ExtendedValue::Finite(total))
    }
}

fn check_direction(n: &Prebasis, v: &Point) -> Result<()> {
    n.check_dim(v)?;
    if !v.le(&Point::zero(v.dim())) || n.weight(v)? <= Rat::one() {
        return Err(Error::InadmissibleDirection(format!(
            "{v:?} must satisfy v <= 0 and wgt(v) > 1"
        )));
    }
    Ok(())
}

/// A possibly infinite value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedValue {
    Finite(Rat),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealParts {
    pub fractional: Rat,
    pub integral: Rat,
    pub real: Rat,
}

/// A finite set of placed cubes. Positions need not form a box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PatchRecord", into = "PatchRecord")]
pub struct Patch {
    prebasis: Prebasis,
    cells: BTreeMap<Point, u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatchRecord {
    pub prebasis: Prebasis,
    pub cells: Vec<CellRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellRecord {
    pub pos: Point,
    pub value: u64,
}

impl TryFrom<PatchRecord> for Patch {
    type Error = Error;
    fn try_from(r: PatchRecord) -> Result<Self> {
        let mut p = Patch::new(r.prebasis);
        for c in r.cells {
            if p.get(&c.pos).is_some() {
                return Err(Error::Parse(format!("duplicate cell at {:?}", c.pos)));
            }
            p.insert(c.pos, c.value)?;
        }
        Ok(p)
    }
}

impl From<Patch> for PatchRecord {
    fn from(p: Patch) -> Self {
        PatchRecord {
            prebasis: p.prebasis,
            cells: p
                .cells
                .into_iter()
                .map(|(pos, value)| CellRecord { pos, value })
                .collect(),
        }
    }
}

/// Result of a validity check: each violation is `(z, i)` where the cubes
/// at `z` and `z + e_i` disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub violations: Vec<(Point, usize)>,
}

impl Patch {
    pub fn new(prebasis: Prebasis) -> Self {
        Patch {
            prebasis,
            cells: BTreeMap::new(),
        }
    }

    pub fn from_cells(
        prebasis: Prebasis,
        cells: impl IntoIterator<Item = (Point, u64)>,
    ) -> Result<Self> {
        let mut p = Patch::new(prebasis);
        for (z, a) in cells {
            p.insert(z, a)?;
        }
        Ok(p)
    }

    /// Builds a 2-D patch from rows listed top (largest y) to bottom, with
    /// the upper-left cell at `(x0, y_top)`.
    pub fn from_rows(prebasis: Prebasis, x0: i64, y_top: i64, rows: &[Vec<u64>]) -> Result<Self> {
        if prebasis.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: prebasis.dim(),
            });
        }
        let mut p = Patch::new(prebasis);
        for (r, row) in rows.iter().enumerate() {
            for (c, &a) in row.iter().enumerate() {
                p.insert(Point::from([x0 + c as i64, y_top - r as i64]), a)?;
            }
        }
        Ok(p)
    }

    pub fn prebasis(&self) -> &Prebasis {
        &self.prebasis
    }

    pub fn insert(&mut self, z: Point, value: u64) -> Result<()> {
        self.prebasis.check_dim(&z)?;
        let base = self.prebasis.product()?;
        if value >= base {
            return Err(Error::DigitOutOfRange {
                position: 0,
                digit: value.to_string(),
                bound: base.to_string(),
            });
        }
        self.cells.insert(z, value);
        Ok(())
    }

    pub fn remove(&mut self, z: &Point) -> Option<u64> {
        self.cells.remove(z)
    }

    pub fn get(&self, z: &Point) -> Option<u64> {
        self.cells.get(z).copied()
    }

    pub fn cube(&self, z: &Point) -> Option<MulCube> {
        self.get(z)
            .map(|a| MulCube::new(self.prebasis.clone(), a).expect("checked on insert"))
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Point, &u64)> {
        self.cells.iter()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Smallest box containing every cell.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        let mut it = self.cells.keys();
        let first = it.next()?.clone();
        let (mut lo, mut hi) = (first.clone(), first);
        for z in it {
            lo = Point::min(&lo, z);
            hi = Point::max(&hi, z);
        }
        Some((lo, hi))
    }

    /// Checks `top_i(c(z)) = bot_i(c(z + e_i))` for every adjacent present
    /// pair.
    pub fn validity(&self) -> ValidityReport {
        let d = self.prebasis.dim();
        let mut violations = Vec::new();
        for z in self.cells.keys() {
            let c = self.cube(z).expect("present");
            for i in 0..d {
                let up = z + &Point::unit(d, i);
                if let Some(c2) = self.cube(&up) {
                    if !c.matches(&c2, i).expect("same prebasis") {
                        violations.push((z.clone(), i));
                    }
                }
            }
        }
        ValidityReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validity().valid
    }

    /// Checks that every geometric face is labelled identically by all
    /// present cubes containing it.
    pub fn check_face_consistency(&self) -> Result<()> {
        let d = self.prebasis.dim();
        let faces = Face::all(d);
        let mut seen: BTreeMap<(Point, Point), (Point, u64)> = BTreeMap::new();
        for z in self.cells.keys() {
            let c = self.cube(z).expect("present");
            for s in &faces {
                let label = c.label(s)?;
                let key = (z + s.anchor(), s.direction().clone());
                match seen.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert((z.clone(), label));
                    }
                    Entry::Occupied(e) => {
                        let (z0, l0) = e.get();
                        if *l0 != label {
                            let (corner, dir) = e.key();
                            return Err(Error::InconsistentLabels {
                                from: corner + dir,
                                to: corner.clone(),
                                witnesses: vec![(z0.clone(), *l0), (z.clone(), label)],
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Anything that assigns labels to unit edges of `Z^d`.
pub trait EdgeLabels {
    fn prebasis(&self) -> &Prebasis;

    /// The undirected label of `{a, b}`, where `b - a = ±e_i`.
    fn edge_label(&self, a: &Point, b: &Point) -> Result<u64>;
}

fn edge_axis(a: &Point, b: &Point) -> Result<(usize, Point)> {
    let (i, _) = a
        .unit_step_to(b)
        .ok_or_else(|| Error::InvalidPath(format!("{a:?} and {b:?} are not adjacent")))?;
    Ok((i, Point::max(a, b)))
}

impl EdgeLabels for Tessellation {
    fn prebasis(&self) -> &Prebasis {
        &self.prebasis
    }

    fn edge_label(&self, a: &Point, b: &Point) -> Result<u64> {
        let (i, top) = edge_axis(a, b)?;
        self.cube_at(&top)?
            .label(&Face::edge(Point::zero(self.dim()), i)?)
    }
}

impl EdgeLabels for Patch {
    fn prebasis(&self) -> &Prebasis {
        &self.prebasis
    }

    fn edge_label(&self, a: &Point, b: &Point) -> Result<u64> {
        let (i, top) = edge_axis(a, b)?;
        let d = self.prebasis.dim();
        let mut witnesses: Vec<(Point, u64)> = Vec::new();
        // incident cubes c have c[i] = top[i] and c[j] in {top[j], top[j] + 1}
        let others: Vec<usize> = (0..d).filter(|&j| j != i).collect();
        for mask in 0..(1u32 << others.len()) {
            let mut c = top.clone();
            for (bit, &j) in others.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    c[j] += 1;
                }
            }
            if let Some(cube) = self.cube(&c) {
                let face = Face::edge(&top - &c, i)?;
                witnesses.push((c, cube.label(&face)?));
            }
        }
        let Some((_, first)) = witnesses.first() else {
            return Err(Error::UnlabelableEdge {
                from: a.clone(),
                to: b.clone(),
            });
        };
        if witnesses.iter().any(|(_, l)| l != first) {
            return Err(Error::InconsistentLabels {
                from: a.clone(),
                to: b.clone(),
                witnesses,
            });
        }
        Ok(*first)
    }
}

/// A lattice path whose consecutive points differ by a unit vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct LatticePath(Vec<Point>);

impl TryFrom<Vec<Point>> for LatticePath {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        LatticePath::new(v)
    }
}

impl From<LatticePath> for Vec<Point> {
    fn from(p: LatticePath) -> Self {
        p.0
    }
}

impl LatticePath {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPath("a path needs at least one point".into()));
        }
        for (k, w) in points.windows(2).enumerate() {
            if w[0].unit_step_to(&w[1]).is_none() {
                return Err(Error::InvalidPath(format!(
                    "step {k} from {:?} to {:?} is not a unit step",
                    w[0], w[1]
                )));
            }
        }
        Ok(LatticePath(points))
    }

    /// The path from `from` to `to` moving along the axes in order.
    pub fn straight(from: &Point, to: &Point) -> Result<Self> {
        if from.dim() != to.dim() {
            return Err(Error::DimensionMismatch {
                expected: from.dim(),
                actual: to.dim(),
            });
        }
        let mut points = vec![from.clone()];
        let mut cur = from.clone();
        for j in 0..from.dim() {
            let sign = (to[j] - cur[j]).signum();
            while cur[j] != to[j] {
                cur[j] += sign;
                points.push(cur.clone());
            }
        }
        LatticePath::new(points)
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn start(&self) -> &Point {
        &self.0[0]
    }

    pub fn end(&self) -> &Point {
        self.0.last().expect("nonempty")
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.0.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn reversed(&self) -> LatticePath {
        let mut v = self.0.clone();
        v.reverse();
        LatticePath(v)
    }

    /// Same endpoints, axes visited in order, no back-and-forth.
    pub fn abelianize(&self) -> LatticePath {
        LatticePath::straight(self.start(), self.end()).expect("same dimension")
    }
}

/// `(a, b)f = sign(b - a) wgt(max{a, b}) lbl({a, b})` for a unit step.
pub fn edge_term<L: EdgeLabels + ?Sized>(f: &L, a: &Point, b: &Point) -> Result<Rat> {
    let (i, top) = edge_axis(a, b)?;
    let sign = b[i] - a[i];
    let w = f.prebasis().weight(&top)?;
    let label = Rat::from_integer(f.edge_label(a, b)?.into());
    Ok(if sign > 0 { w * label } else { -(w * label) })
}

/// `Pf`, the path integral of `f` over `path`.
pub fn path_integral<L: EdgeLabels + ?Sized>(f: &L, path: &LatticePath) -> Result<Rat> {
    f.prebasis().check_dim(path.start())?;
    let mut total = Rat::zero();
    for (a, b) in path.edges() {
        total += edge_term(f, a, b)?;
    }
    Ok(total)
}

/// `(p, p')f`, integrated along the axis-ordered path.
pub fn directed_integral<L: EdgeLabels + ?Sized>(f: &L, p: &Point, q: &Point) -> Result<Rat> {
    path_integral(f, &LatticePath::straight(p, q)?)
}

/// `lbl(f, (p, p')) = (p, p')f / wgt(p')`.
pub fn label(f: &Tessellation, p: &Point, q: &Point) -> Result<Rat> {
    Ok(directed_integral(f, p, q)? / f.prebasis().weight(q)?)
}

/// The path integral around a closed path; nonzero means the enclosed
/// holes cannot be filled validly.
pub fn cycle_defect<L: EdgeLabels + ?Sized>(f: &L, path: &LatticePath) -> Result<Rat> {
    if !path.is_closed() {
        return Err(Error::OpenPath);
    }
    path_integral(f, path)
}

/// `lbl` as a natural number, for `p <= p'`.
pub fn label_nat(f: &Tessellation, p: &Point, q: &Point) -> Result<num_bigint::BigUint> {
    let l = label(f, p, q)?;
    if !l.is_integer() || l.is_negative() {
        return Err(Error::InvalidPath(format!(
            "label from {p:?} to {q:?} is {l}, not a natural number"
        )));
    }
    Ok(l.to_integer().to_biguint().expect("nonnegative"))
}
