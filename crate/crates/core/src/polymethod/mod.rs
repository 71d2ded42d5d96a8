//! Polynomials vanishing to high multiplicity on a point set.
//!
//! A polynomial `g` has a zero of multiplicity `m` at `a` when `g(x + a)` has
//! no monomial of total degree `< m`. Each coefficient of `g(x + a)` is a
//! linear form in the coefficients of `g`, so asking for multiplicity `m` at
//! every point of `S` is a homogeneous system with `C(m+n-1, n)·|S|` rows over
//! the `N_q(n, m)` monomials of individual degree `≤ q-1` and total degree
//! `< mq`. With fewer rows than columns a nonzero solution exists.

mod binom;
pub mod linalg;
mod monomial;
mod multipoly;
mod univariate;

use num_traits::ToPrimitive;

pub use binom::BinomialModP;
pub use monomial::Monomial;
pub use multipoly::{MultiPoly, Multiplicity};
pub use univariate::UniPoly;

use crate::bounds::{count_nq, per_point_constraints};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::space::{Point, Space};

/// Column cap for the dense solver.
pub const MAX_COLUMNS: u64 = 1 << 20;
/// Cap on `rows × columns` for the dense solver.
pub const MAX_ENTRIES: u64 = 1 << 27;

/// The `N_q(n, m)` monomials with exponents `≤ q-1` and total degree `< mq`,
/// graded-lex.
pub fn monomial_basis(n: usize, field: &Field, m: u32) -> Vec<Monomial> {
    let q = field.q();
    monomial::bounded_exponents(n, q - 1, m as u64 * q as u64)
}

/// Monomials of total degree `< m` with no individual cap: the targets whose
/// coefficients in `g(x + a)` must vanish.
pub fn low_degree_targets(n: usize, m: u32) -> Vec<Monomial> {
    monomial::bounded_exponents(n, m.saturating_sub(1), m as u64)
}

/// Homogeneous linear system for multiplicity-`m` vanishing on a point set.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub columns: Vec<Monomial>,
    pub rows: Vec<Vec<u32>>,
}

/// Rows saying "the coefficient of `x^f` in `g(x + a)` is zero", one per
/// target `f` with `|f| < m`. The entry for basis monomial `e` is
/// `Π_i C(e_i, f_i)·a_i^{e_i - f_i}` (zero when some `f_i > e_i`).
pub fn shift_constraint_rows(
    field: &Field,
    a: &Point,
    m: u32,
    basis: &[Monomial],
) -> Vec<Vec<u32>> {
    let binom = BinomialModP::for_field(field);
    let n = a.dim();
    let top = basis.iter().map(Monomial::max_exponent).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<u32>> = a
        .coords()
        .iter()
        .map(|&x| {
            let mut row = vec![1u32; top + 1];
            for e in 1..=top {
                row[e] = field.mul(row[e - 1], x);
            }
            row
        })
        .collect();
    low_degree_targets(n, m)
        .iter()
        .map(|target| {
            let f = target.exponents();
            basis
                .iter()
                .map(|col| {
                    let e = col.exponents();
                    let mut v = 1u32;
                    for i in 0..n {
                        if f[i] > e[i] {
                            return 0;
                        }
                        let b = binom.get(e[i] as u64, f[i] as u64);
                        v = field.mul(v, field.mul(b, powers[i][(e[i] - f[i]) as usize]));
                        if v == 0 {
                            return 0;
                        }
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Stacks [`shift_constraint_rows`] for every point, in the given order.
pub fn build_constraints(space: &Space, points: &[Point], m: u32) -> Result<ConstraintSystem> {
    for p in points {
        space.check_point(p)?;
    }
    let field = space.field();
    let columns = monomial_basis(space.dim(), field, m);
    #[cfg(feature = "parallel")]
    let blocks: Vec<Vec<Vec<u32>>> = {
        use rayon::prelude::*;
        points
            .par_iter()
            .map(|a| shift_constraint_rows(field, a, m, &columns))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let blocks: Vec<Vec<Vec<u32>>> = points
        .iter()
        .map(|a| shift_constraint_rows(field, a, m, &columns))
        .collect();
    Ok(ConstraintSystem {
        columns,
        rows: blocks.into_iter().flatten().collect(),
    })
}

/// Both sides of the existence condition `C(m+n-1, n)·|S| < N_q(n, m)`.
pub fn constraint_counts(n: usize, q: u32, m: u32, set_size: usize) -> (u64, u64) {
    let per_point = per_point_constraints(n, m).to_u64().unwrap_or(u64::MAX);
    let unknowns = count_nq(n, q, m).to_u64().unwrap_or(u64::MAX);
    (per_point.saturating_mul(set_size as u64), unknowns)
}

/// A nonzero polynomial of individual degree `≤ q-1` and total degree `< mq`
/// vanishing to order `≥ m` at every point of `points`.
///
/// Refuses unless `C(m+n-1, n)·|S| < N_q(n, m)`. The result is the nullspace
/// vector with the first free column set to 1, so it is deterministic.
pub fn find_vanishing_poly(space: &Space, points: &[Point], m: u32) -> Result<MultiPoly> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "multiplicity must be at least 1".into(),
        ));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let n = space.dim();
    let field = space.field();
    let (constraints, unknowns) = constraint_counts(n, field.q(), m, pts.len());
    if constraints >= unknowns {
        return Err(Error::BoundNotSatisfied {
            constraints,
            unknowns,
        });
    }
    if unknowns > MAX_COLUMNS {
        return Err(Error::TooLarge(format!(
            "N_q(n,m) = {unknowns} columns exceeds the solver cap {MAX_COLUMNS}"
        )));
    }
    if constraints.saturating_mul(unknowns) > MAX_ENTRIES {
        return Err(Error::TooLarge(format!(
            "{constraints} x {unknowns} matrix exceeds {MAX_ENTRIES} entries"
        )));
    }
    let system = build_constraints(space, &pts, m)?;
    let ncols = system.columns.len();
    let x = linalg::nullspace_vector(field, system.rows, ncols).ok_or_else(|| {
        Error::Internal("no nonzero solution although constraints < unknowns".into())
    })?;
    let mut g = MultiPoly::zero(field, n);
    for (mono, c) in system.columns.into_iter().zip(x) {
        g.add_term(mono, c);
    }
    if g.is_zero() {
        return Err(Error::Internal(
            "solver returned the zero polynomial".into(),
        ));
    }
    Ok(g)
}
