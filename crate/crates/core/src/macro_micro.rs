//! Macrotiles, microtiles and partial shifts.
//!
//! A `d x d'` natural matrix `A` groups the cubes of a tessellation over `n`
//! (dimension `d`) into cubes over `n^A` (dimension `d'`). Both maps act on
//! the diagonal carrier; [`macro_cube_at`] and [`micro_cube_at`] evaluate the
//! definitions cube by cube for cross-checking.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::config::DigitConfig;
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::mixed_base::{base_n_digits, DirectiveSequence, Prebasis};
use crate::tessellation::{label_nat, Tessellation};

/// A `rows x cols` matrix of naturals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRecord", into = "MatrixRecord")]
pub struct MacroMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u64>>,
}

impl TryFrom<MatrixRecord> for MacroMatrix {
    type Error = Error;
    fn try_from(r: MatrixRecord) -> Result<Self> {
        if r.entries.len() != r.rows {
            return Err(Error::InvalidMatrix(format!(
                "expected {} rows, found {}",
                r.rows,
                r.entries.len()
            )));
        }
        if let Some(row) = r.entries.iter().find(|row| row.len() != r.cols) {
            return Err(Error::InvalidMatrix(format!(
                "expected {} columns, found a row of length {}",
                r.cols,
                row.len()
            )));
        }
        MacroMatrix::from_rows(r.entries)
    }
}

impl From<MacroMatrix> for MatrixRecord {
    fn from(a: MacroMatrix) -> Self {
        MatrixRecord {
            rows: a.rows,
            cols: a.cols,
            entries: a.entries.chunks(a.cols).map(|r| r.to_vec()).collect(),
        }
    }
}

impl MacroMatrix {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 {
            return Err(Error::InvalidMatrix("matrix must be at least 1 x 1".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidMatrix("rows have different lengths".into()));
        }
        Ok(MacroMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(d: usize) -> Self {
        MacroMatrix::diag(&vec![1; d]).expect("nonempty")
    }

    pub fn diag(k: &[u64]) -> Result<Self> {
        let d = k.len();
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { k[i] } else { 0 }).collect())
            .collect();
        MacroMatrix::from_rows(rows)
    }

    /// The `d x k` matrix whose column `j` is `e_{axes[j]}`.
    pub fn column_selection(d: usize, axes: &[usize]) -> Result<Self> {
        if let Some(&axis) = axes.iter().find(|&&a| a >= d) {
            return Err(Error::AxisOutOfRange { axis, dim: d });
        }
        let rows = (0..d)
            .map(|i| axes.iter().map(|&a| u64::from(a == i)).collect())
            .collect();
        MacroMatrix::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    /// Every row has a positive entry, which is exactly when `micro_A`
    /// exists. Returns the first all-zero row otherwise.
    pub fn zero_row(&self) -> Option<usize> {
        (0..self.rows).find(|&i| (0..self.cols).all(|j| self.get(i, j) == 0))
    }

    pub fn is_invertible_class(&self) -> bool {
        self.zero_row().is_none()
    }

    /// `A v` for `v` of dimension `cols`.
    pub fn apply(&self, v: &Point) -> Result<Point> {
        if v.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.dim(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut s: i64 = 0;
            for j in 0..self.cols {
                let a = i64::try_from(self.get(i, j))
                    .map_err(|_| Error::InvalidMatrix("entry exceeds i64".into()))?;
                s = a
                    .checked_mul(v[j])
                    .and_then(|t| s.checked_add(t))
                    .ok_or_else(|| Error::InvalidMatrix("coordinate overflow".into()))?;
            }
            out.push(s);
        }
        Ok(Point(out))
    }

    /// `A 1`, the row sums.
    pub fn row_sums(&self) -> Point {
        self.apply(&Point::constant(self.cols, 1))
            .expect("dimension matches")
    }

    /// The product `self * other`.
    pub fn mul(&self, other: &MacroMatrix) -> Result<MacroMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let rows = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| {
                        (0..self.cols).try_fold(0u64, |acc, k| {
                            self.get(i, k)
                                .checked_mul(other.get(k, j))
                                .and_then(|t| acc.checked_add(t))
                                .ok_or_else(|| Error::InvalidMatrix("entry overflow".into()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MacroMatrix::from_rows(rows)
    }
}

impl fmt::Debug for MacroMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rows separated by `;`, entries by `,`: `"2,0;0,2"`.
impl fmt::Display for MacroMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.cols)
            .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for MacroMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad matrix entry {e:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MacroMatrix::from_rows(rows)
    }
}

/// `n^A`: entry `j` is `wgt(n, -A e_j)`.
pub fn derived_prebasis(n: &Prebasis, a: &MacroMatrix) -> Result<Prebasis> {
    if n.dim() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            actual: n.dim(),
        });
    }
    let entries = (0..a.cols())
        .map(|j| {
            let col = Point((0..a.rows()).map(|i| -(a.get(i, j) as i64)).collect());
            let w = n.weight_nat(&col)?;
            w.to_u64()
                .ok_or_else(|| Error::BaseOverflow(format!("derived prebasis entry {w}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Prebasis::new(entries)
}

/// The carrier of value `xi` in base `target`, canonical or not as `like`.
fn recarry(like: &DigitConfig, target: u64) -> Result<DigitConfig> {
    if target == 1 {
        return Ok(DigitConfig::zero(1));
    }
    let xi = like.real();
    if like.is_canonical() {
        DigitConfig::from_real(&xi, target)
    } else {
        DigitConfig::lower_from_real(&xi, target)
    }
}

/// `macro_A(f)`, a tessellation over `n^A`.
pub fn macrotile(f: &Tessellation, a: &MacroMatrix) -> Result<Tessellation> {
    let derived = derived_prebasis(f.prebasis(), a)?;
    let diagonal = recarry(f.diagonal(), derived.product()?)?;
    Tessellation::new(derived, diagonal)
}

fn check_micro(g: &Tessellation, a: &MacroMatrix, n: &Prebasis) -> Result<()> {
    if let Some(row) = a.zero_row() {
        return Err(Error::NotMicrotileable(row));
    }
    let derived = derived_prebasis(n, a)?;
    if &derived != g.prebasis() {
        return Err(Error::PrebasisMismatch(format!(
            "{n:?} under {a} gives {derived:?}, but the input is over {:?}",
            g.prebasis()
        )));
    }
    Ok(())
}

/// `micro_A(g)`, the tessellation over `n` whose `A`-macrotiling is `g`.
pub fn microtile(g: &Tessellation, a: &MacroMatrix, n: &Prebasis) -> Result<Tessellation> {
    check_micro(g, a, n)?;
    let diagonal = recarry(g.diagonal(), n.product()?)?;
    Tessellation::new(n.clone(), diagonal)
}

/// `sigma_{A,z} = macro_A . sigma_z . micro_A`.
pub fn partial_shift(
    g: &Tessellation,
    a: &MacroMatrix,
    n: &Prebasis,
    z: &Point,
) -> Result<Tessellation> {
    macrotile(&microtile(g, a, n)?.shift(z)?, a)
}

/// The value of `macro_A(f)` at `v`, computed as `lbl(f, (A(v - 1), Av))`.
pub fn macro_cube_at(f: &Tessellation, a: &MacroMatrix, v: &Point) -> Result<u64> {
    let top = a.apply(v)?;
    let bottom = a.apply(&(v - &Point::constant(v.dim(), 1)))?;
    let l = label_nat(f, &bottom, &top)?;
    l.to_u64()
        .ok_or_else(|| Error::BaseOverflow(format!("macro value {l}")))
}

/// The value of `micro_A(g)` at `x`, read off a label of `g` by mixed-base
/// digit extraction.
pub fn micro_cube_at(g: &Tessellation, a: &MacroMatrix, n: &Prebasis, x: &Point) -> Result<u64> {
    check_micro(g, a, n)?;
    n.check_dim(x)?;
    let w = a.row_sums();
    let d2 = a.cols();
    // a diagonal box of g whose image under A contains the cube at x
    let hi = (0..w.dim())
        .map(|j| x[j].div_euclid(w[j]) + 1)
        .max()
        .expect("d >= 1");
    let lo = (0..w.dim())
        .map(|j| (x[j] - 1).div_euclid(w[j]))
        .min()
        .expect("d >= 1");
    let z1 = Point::constant(d2, hi);
    let z2 = Point::constant(d2, lo);
    let big = label_nat(g, &z2, &z1)?;
    let v = &a.apply(&z1)? - x;
    let one = Point::constant(x.dim(), 1);
    let seq = DirectiveSequence::new(x.dim(), vec![-&v, -&(&v + &one)])?;
    let digits = base_n_digits(n, &big, &seq)?;
    let val: &BigUint = &digits[1];
    val.to_u64()
        .ok_or_else(|| Error::BaseOverflow(format!("micro value {val}")))
}
