//! Points, directions and lines of the affine space `F_q^n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;

/// A point of `F_q^n`, coordinates given by field representations.
///
/// Ordering is lexicographic on coordinates, which coincides with the order
/// of [`Space::index`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<u32>);

impl Point {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A nonzero vector of `F_q^n` used as a line direction.
///
/// Directions built through [`Space::canonical_directions`] or
/// [`Space::canonicalize`] have first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(pub Vec<u32>);

impl Direction {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|&&c| c != 0) == Some(&1)
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.0)
    }
}

/// The line `{base + t·dir : t ∈ F_q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSpec {
    pub base: Point,
    pub dir: Direction,
}

/// The affine space `F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    field: Field,
    n: usize,
}

impl Space {
    pub fn new(field: Field, n: usize) -> Result<Space> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        Ok(Space { field, n })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `q^n`, saturating at `u64::MAX`.
    pub fn size(&self) -> u64 {
        (self.field.q() as u64).saturating_pow(self.n as u32)
    }

    /// Number of canonical directions, `(q^n - 1)/(q - 1)`.
    pub fn direction_count(&self) -> u64 {
        let q = self.field.q() as u64;
        (0..self.n as u32).map(|i| q.pow(i)).sum()
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.dim(),
            });
        }
        p.0.iter().try_for_each(|&c| self.field.check(c as u64))
    }

    pub fn check_direction(&self, d: &Direction) -> Result<()> {
        self.check_point(&Point(d.0.clone()))?;
        if d.0.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument("direction must be nonzero".into()));
        }
        Ok(())
    }

    /// Mixed-radix index with the first coordinate most significant.
    pub fn index(&self, p: &Point) -> u64 {
        let q = self.field.q() as u64;
        p.0.iter().fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn point(&self, mut index: u64) -> Point {
        let q = self.field.q() as u64;
        let mut coords = vec![0; self.n];
        for c in coords.iter_mut().rev() {
            *c = (index % q) as u32;
            index /= q;
        }
        Point(coords)
    }

    pub fn origin(&self) -> Point {
        Point(vec![0; self.n])
    }

    /// All `q^n` points in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.size()).map(|i| self.point(i))
    }

    /// `a + t·b`.
    pub fn along(&self, a: &Point, t: u32, b: &Direction) -> Point {
        let f = &self.field;
        Point(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| f.add(x, f.mul(t, y)))
                .collect(),
        )
    }

    pub fn translate(&self, a: &Point, v: &Point) -> Point {
        let f = &self.field;
        Point(a.0.iter().zip(&v.0).map(|(&x, &y)| f.add(x, y)).collect())
    }

    /// Scales `d` so its first nonzero coordinate is 1.
    pub fn canonicalize(&self, d: &Direction) -> Result<Direction> {
        let lead =
            *d.0.iter()
                .find(|&&c| c != 0)
                .ok_or_else(|| Error::InvalidArgument("direction must be nonzero".into()))?;
        let s = self.field.inv(lead)?;
        Ok(Direction(
            d.0.iter().map(|&c| self.field.mul(s, c)).collect(),
        ))
    }

    /// The `(q^n-1)/(q-1)` canonical directions in lexicographic order.
    pub fn canonical_directions(&self) -> Vec<Direction> {
        let q = self.field.q() as u64;
        let n = self.n;
        let mut out = Vec::with_capacity(self.direction_count() as usize);
        // leading 1 at position `lead`, zeros before it, anything after;
        // earlier lead positions sort later, so iterate from the last
        for lead in (0..n).rev() {
            let tail_len = n - 1 - lead;
            let tail = Space {
                field: self.field.clone(),
                n: tail_len.max(1),
            };
            let count = q.pow(tail_len as u32);
            for i in 0..count {
                let mut coords = vec![0; n];
                coords[lead] = 1;
                if tail_len > 0 {
                    coords[lead + 1..].copy_from_slice(&tail.point(i).0);
                }
                out.push(Direction(coords));
            }
        }
        out
    }

    /// The `q` points of a line, sorted.
    pub fn line_points(&self, line: &LineSpec) -> Vec<Point> {
        let mut pts: Vec<Point> = self
            .field
            .elements()
            .map(|t| self.along(&line.base, t, &line.dir))
            .collect();
        pts.sort();
        pts
    }

    /// Indices of the points on a line, in `t` order.
    pub fn line_indices(&self, base: &Point, dir: &Direction) -> impl Iterator<Item = u64> + '_ {
        let base = base.clone();
        let dir = dir.clone();
        self.field
            .elements()
            .map(move |t| self.index(&self.along(&base, t, &dir)))
    }
}
