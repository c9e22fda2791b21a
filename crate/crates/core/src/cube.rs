//! Hyperfaces of `[-1,0]^d` and multiplication cubes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::Nat;
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::mixed_base::{base_n_digits, embed, DirectiveSequence, Prebasis};

/// The hyperface `faceat(p, u)` of `[-1,0]^d`: anchor `p` and direction `u`,
/// both in `{-1,0}^d` and never `-1` on the same axis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face {
    anchor: Point,
    direction: Point,
}

fn is_binary(v: &Point) -> bool {
    v.coords().iter().all(|&x| x == 0 || x == -1)
}

impl Face {
    pub fn new(anchor: Point, direction: Point) -> Result<Self> {
        if anchor.dim() != direction.dim() {
            return Err(Error::DimensionMismatch {
                expected: anchor.dim(),
                actual: direction.dim(),
            });
        }
        if !is_binary(&anchor) || !is_binary(&direction) {
            return Err(Error::InvalidFace(format!(
                "anchor {anchor:?} and direction {direction:?} must lie in {{-1,0}}^d"
            )));
        }
        if let Some(i) = (0..anchor.dim()).find(|&i| anchor[i] == -1 && direction[i] == -1) {
            return Err(Error::InvalidFace(format!(
                "anchor {anchor:?} and direction {direction:?} overlap on axis {i}"
            )));
        }
        Ok(Face { anchor, direction })
    }

    /// The minimal face containing `v1 >= v2`, i.e. `faceat(v1, v2 - v1)`.
    pub fn from_pair(v1: &Point, v2: &Point) -> Result<Self> {
        if !v2.le(v1) {
            return Err(Error::InvalidFace(format!("{v1:?} is not above {v2:?}")));
        }
        Face::new(v1.clone(), v2 - v1)
    }

    /// `(v1, v2) = (p, p + u)`.
    pub fn pair(&self) -> (Point, Point) {
        (self.anchor.clone(), &self.anchor + &self.direction)
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn direction(&self) -> &Point {
        &self.direction
    }

    pub fn ambient_dim(&self) -> usize {
        self.anchor.dim()
    }

    /// Number of free axes.
    pub fn face_dim(&self) -> usize {
        self.free_axes().len()
    }

    /// Axes along which the face extends, ascending.
    pub fn free_axes(&self) -> Vec<usize> {
        (0..self.ambient_dim())
            .filter(|&i| self.direction[i] == -1)
            .collect()
    }

    /// The whole cube.
    pub fn full(d: usize) -> Face {
        Face {
            anchor: Point::zero(d),
            direction: Point::constant(d, -1),
        }
    }

    /// The bottom hyperface orthogonal to `e_i`.
    pub fn bot(d: usize, i: usize) -> Face {
        let mut u = Point::constant(d, -1);
        u[i] = 0;
        Face {
            anchor: Point::unit(d, i).scale(-1),
            direction: u,
        }
    }

    /// The top hyperface orthogonal to `e_i`.
    pub fn top(d: usize, i: usize) -> Face {
        let mut u = Point::constant(d, -1);
        u[i] = 0;
        Face {
            anchor: Point::zero(d),
            direction: u,
        }
    }

    /// The edge `faceat(p, -e_i)`.
    pub fn edge(anchor: Point, i: usize) -> Result<Face> {
        let d = anchor.dim();
        Face::new(anchor, Point::unit(d, i).scale(-1))
    }

    /// All `3^d` faces, in a fixed order.
    pub fn all(d: usize) -> Vec<Face> {
        let mut out = Vec::with_capacity(3usize.pow(d as u32));
        let total = 3usize.pow(d as u32);
        for code in 0..total {
            let mut c = code;
            let mut p = Point::zero(d);
            let mut u = Point::zero(d);
            for i in 0..d {
                match c % 3 {
                    1 => p[i] = -1,
                    2 => u[i] = -1,
                    _ => {}
                }
                c /= 3;
            }
            out.push(Face {
                anchor: p,
                direction: u,
            });
        }
        out
    }

    /// All faces contained in this one, including itself.
    pub fn subfaces(&self) -> Vec<Face> {
        Face::all(self.ambient_dim())
            .into_iter()
            .filter(|s| self.contains(s))
            .collect()
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains(&self, other: &Face) -> bool {
        (0..self.ambient_dim()).all(|i| {
            if self.direction[i] == -1 {
                true
            } else {
                other.direction[i] == 0 && other.anchor[i] == self.anchor[i]
            }
        })
    }

    /// `self + w`, if it is still a face of the cube.
    pub fn translate(&self, w: &Point) -> Option<Face> {
        let anchor = &self.anchor + w;
        if (0..self.ambient_dim()).any(|i| self.direction[i] == -1 && w[i] != 0) {
            return None;
        }
        Face::new(anchor, self.direction.clone()).ok()
    }

    /// `Emb_{p, iota}(self)`, a face of the `d`-cube.
    pub fn embedded(&self, p: &Point, iota: &[usize]) -> Result<Face> {
        let anchor = embed(p, iota, &self.anchor)?;
        let direction = embed(&Point::zero(p.dim()), iota, &self.direction)?;
        Face::new(anchor, direction)
    }
}

/// The multiplication cube `cube_n(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MulCube {
    prebasis: Prebasis,
    value: u64,
}

impl MulCube {
    pub fn new(prebasis: Prebasis, value: u64) -> Result<Self> {
        let base = prebasis.product()?;
        if value >= base {
            return Err(Error::DigitOutOfRange {
                position: 0,
                digit: value.to_string(),
                bound: base.to_string(),
            });
        }
        Ok(MulCube { prebasis, value })
    }

    pub fn prebasis(&self) -> &Prebasis {
        &self.prebasis
    }

    pub fn base(&self) -> u64 {
        self.prebasis.product().expect("checked at construction")
    }

    fn check_face(&self, s: &Face) -> Result<()> {
        if s.ambient_dim() != self.prebasis.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.prebasis.dim(),
                actual: s.ambient_dim(),
            });
        }
        Ok(())
    }

    fn check_axis(&self, i: usize) -> Result<()> {
        if i >= self.prebasis.dim() {
            return Err(Error::AxisOutOfRange {
                axis: i,
                dim: self.prebasis.dim(),
            });
        }
        Ok(())
    }

    /// Weight of a binary vector; it divides `N`, so it fits in 64 bits.
    fn binary_weight(&self, v: &Point) -> u64 {
        self.prebasis
            .entries()
            .iter()
            .zip(v.coords())
            .filter(|(_, &x)| x == -1)
            .map(|(&n, _)| n)
            .product()
    }

    /// The label `cube_n(a)[v1, v2]` of the face.
    pub fn label(&self, s: &Face) -> Result<u64> {
        self.check_face(s)?;
        let (v1, v2) = s.pair();
        let m1 = self.binary_weight(&v1);
        let m2 = self.binary_weight(&v2);
        Ok((self.value / m1) % (m2 / m1))
    }

    /// The same label computed through the mixed-base expansion.
    pub fn label_by_expansion(&self, s: &Face) -> Result<Nat> {
        self.check_face(s)?;
        let (v1, v2) = s.pair();
        let seq = DirectiveSequence::new(s.ambient_dim(), vec![v1, v2])?;
        let digits = base_n_digits(&self.prebasis, &Nat::from(self.value), &seq)?;
        Ok(digits[1].clone())
    }

    pub fn bot(&self, i: usize) -> Result<u64> {
        self.check_axis(i)?;
        Ok(self.value / self.prebasis.entries()[i])
    }

    pub fn top(&self, i: usize) -> Result<u64> {
        self.check_axis(i)?;
        Ok(self.value % (self.base() / self.prebasis.entries()[i]))
    }

    pub fn val(&self) -> u64 {
        self.value
    }

    /// Whether `other` may sit at `+e_i` from `self`.
    pub fn matches(&self, other: &MulCube, i: usize) -> Result<bool> {
        if self.prebasis != other.prebasis {
            return Err(Error::PrebasisMismatch(format!(
                "{:?} vs {:?}",
                self.prebasis, other.prebasis
            )));
        }
        Ok(self.top(i)? == other.bot(i)?)
    }

    /// The lower-dimensional cube carried by face `s`, with coordinates
    /// ordered by `iota`, whose image must be the free axes of `s`.
    pub fn face_restrict(&self, s: &Face, iota: &[usize]) -> Result<MulCube> {
        self.check_face(s)?;
        let image: BTreeSet<usize> = iota.iter().copied().collect();
        let free: BTreeSet<usize> = s.free_axes().into_iter().collect();
        if image.len() != iota.len() {
            return Err(Error::NotInjective(format!("{iota:?}")));
        }
        if image != free {
            return Err(Error::InvalidFace(format!(
                "injection image {image:?} differs from the free axes {free:?}"
            )));
        }
        if iota.is_empty() {
            return Err(Error::InvalidFace(
                "a vertex carries no multiplication cube".into(),
            ));
        }
        let n = self.prebasis.select(iota)?;
        MulCube::new(n, self.label(s)?)
    }
}

/// The tile set `T_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSet {
    prebasis: Prebasis,
    cubes: Vec<MulCube>,
}

impl TileSet {
    pub fn new(prebasis: &Prebasis) -> Result<Self> {
        let base = prebasis.product()?;
        let cubes = (0..base)
            .map(|a| MulCube {
                prebasis: prebasis.clone(),
                value: a,
            })
            .collect();
        Ok(TileSet {
            prebasis: prebasis.clone(),
            cubes,
        })
    }

    pub fn prebasis(&self) -> &Prebasis {
        &self.prebasis
    }

    pub fn cubes(&self) -> &[MulCube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn to_record(&self) -> TileSetRecord {
        let faces = Face::all(self.prebasis.dim());
        TileSetRecord {
            prebasis: self.prebasis.clone(),
            cubes: self
                .cubes
                .iter()
                .map(|c| CubeRecord {
                    value: c.value,
                    faces: faces
                        .iter()
                        .map(|s| FaceLabel {
                            anchor: s.anchor.clone(),
                            direction: s.direction.clone(),
                            label: c.label(s).expect("dimension matches"),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileSetRecord {
    pub prebasis: Prebasis,
    pub cubes: Vec<CubeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeRecord {
    pub value: u64,
    pub faces: Vec<FaceLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLabel {
    pub anchor: Point,
    pub direction: Point,
    pub label: u64,
}
