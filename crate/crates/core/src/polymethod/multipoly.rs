use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::space::{LineSpec, Point};

use super::binom::BinomialModP;
use super::monomial::Monomial;
use super::univariate::UniPoly;

/// Multivariate polynomial over `F_q` with every individual degree `≤ q-1`.
///
/// Terms are kept in graded-lex order and no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    n: usize,
    terms: BTreeMap<Monomial, u32>,
}

/// Order of vanishing at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u32),
    /// The zero polynomial vanishes to every order.
    Infinite,
}

impl Multiplicity {
    pub fn at_least(self, m: u32) -> bool {
        match self {
            Multiplicity::Finite(k) => k >= m,
            Multiplicity::Infinite => true,
        }
    }
}

impl MultiPoly {
    pub fn zero(field: &Field, n: usize) -> MultiPoly {
        MultiPoly {
            field: field.clone(),
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, n: usize, c: u32) -> MultiPoly {
        let mut p = Self::zero(field, n);
        if c != 0 {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs. Repeated
    /// monomials are summed and zero results dropped.
    pub fn from_terms(
        field: &Field,
        n: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, u32)>,
    ) -> Result<MultiPoly> {
        let mut p = Self::zero(field, n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.len(),
                });
            }
            if let Some(&bad) = e.iter().find(|&&x| x >= field.q()) {
                return Err(Error::InvalidArgument(format!(
                    "exponent {bad} exceeds the individual degree cap q-1 = {}",
                    field.q() - 1
                )));
            }
            field.check(c as u64)?;
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let f = &self.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::total_degree)
    }

    pub fn max_individual_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::max_exponent)
            .max()
            .unwrap_or(0)
    }

    fn check_same(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field.q(), other.field.q()));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> MultiPoly {
        let mut out = Self::zero(&self.field, self.n);
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), self.field.mul(c, x));
        }
        out
    }

    fn check_point(&self, a: &Point) -> Result<()> {
        if a.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a.dim(),
            });
        }
        a.coords()
            .iter()
            .try_for_each(|&c| self.field.check(c as u64))
    }

    /// `powers[i][e] = a_i^e` for `e ≤ max individual degree`.
    fn power_table(&self, a: &Point) -> Vec<Vec<u32>> {
        let top = self.max_individual_degree() as usize;
        let f = &self.field;
        a.coords()
            .iter()
            .map(|&x| {
                let mut row = Vec::with_capacity(top + 1);
                let mut cur = 1;
                for _ in 0..=top {
                    row.push(cur);
                    cur = f.mul(cur, x);
                }
                row
            })
            .collect()
    }

    /// `g(a) = Σ c_e Π a_i^{e_i}`.
    pub fn evaluate(&self, a: &Point) -> Result<u32> {
        self.check_point(a)?;
        let f = &self.field;
        let powers = self.power_table(a);
        Ok(self.terms.iter().fold(0, |acc, (m, &c)| {
            let v = m
                .exponents()
                .iter()
                .enumerate()
                .fold(c, |v, (i, &e)| f.mul(v, powers[i][e as usize]));
            f.add(acc, v)
        }))
    }

    /// `g(x + a)`, expanded with binomial coefficients reduced mod `p`.
    pub fn translate(&self, a: &Point) -> Result<MultiPoly> {
        self.check_point(a)?;
        let f = &self.field;
        let binom = BinomialModP::for_field(f);
        let powers = self.power_table(a);
        let mut out = Self::zero(f, self.n);
        let mut target = vec![0u32; self.n];
        for (m, &c) in &self.terms {
            let e = m.exponents();
            // every target f ≤ e coordinate-wise
            target.iter_mut().for_each(|x| *x = 0);
            loop {
                let mut v = c;
                for i in 0..self.n {
                    let b = binom.get(e[i] as u64, target[i] as u64);
                    v = f.mul(v, f.mul(b, powers[i][(e[i] - target[i]) as usize]));
                    if v == 0 {
                        break;
                    }
                }
                out.add_term(Monomial::new(target.clone()), v);
                // odometer increment over the box [0, e]
                let mut i = 0;
                while i < self.n {
                    if target[i] < e[i] {
                        target[i] += 1;
                        break;
                    }
                    target[i] = 0;
                    i += 1;
                }
                if i == self.n {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Order of vanishing at `a`: the least total degree in the support of
    /// `g(x + a)`.
    pub fn multiplicity_at(&self, a: &Point) -> Result<Multiplicity> {
        let shifted = self.translate(a)?;
        Ok(match shifted.terms.keys().next() {
            None => Multiplicity::Infinite,
            Some(m) => Multiplicity::Finite(m.total_degree()),
        })
    }

    /// The univariate `t ↦ g(a + t·b)`.
    pub fn restrict_to_line(&self, line: &LineSpec) -> Result<UniPoly> {
        self.check_point(&line.base)?;
        self.check_point(&Point(line.dir.coords().to_vec()))?;
        let f = &self.field;
        let top = self.max_individual_degree() as usize;
        // powers[i][e] = (a_i + t·b_i)^e
        let powers: Vec<Vec<UniPoly>> = line
            .base
            .coords()
            .iter()
            .zip(line.dir.coords())
            .map(|(&a, &b)| {
                let lin = UniPoly::linear(f, a, b);
                let mut row = vec![UniPoly::constant(f, 1)];
                for e in 1..=top {
                    let next = row[e - 1].mul(&lin);
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = UniPoly::zero(f);
        for (m, &c) in &self.terms {
            let term = m
                .exponents()
                .iter()
                .enumerate()
                .fold(UniPoly::constant(f, c), |t, (i, &e)| {
                    t.mul(&powers[i][e as usize])
                });
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `g_0`: the terms of top total degree.
    pub fn leading_homogeneous(&self) -> Result<MultiPoly> {
        let d = self
            .total_degree()
            .ok_or(Error::ZeroPolynomial("leading homogeneous part"))?;
        let mut out = Self::zero(&self.field, self.n);
        for (m, &c) in self
            .terms
            .range(Monomial::new(first_of_degree(self.n, d))..)
        {
            out.terms.insert(m.clone(), c);
        }
        Ok(out)
    }
}

/// Smallest exponent vector of total degree `d` in graded-lex order.
fn first_of_degree(n: usize, d: u32) -> Vec<u32> {
    let mut v = vec![0; n];
    if let Some(last) = v.last_mut() {
        *last = d;
    }
    v
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| format!("({})*{:?}", self.field.format(c), m))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
