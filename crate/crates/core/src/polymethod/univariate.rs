use std::fmt;

use crate::gf::Field;

/// Dense univariate polynomial over `F_q`, coefficients low to high with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<u32>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<u32>) -> UniPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> UniPoly {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: u32) -> UniPoly {
        Self::new(field, vec![c])
    }

    /// `c0 + c1·t`.
    pub fn linear(field: &Field, c0: u32, c1: u32) -> UniPoly {
        Self::new(field, vec![c0, c1])
    }

    /// `(t - t0)^m`.
    pub fn root_power(field: &Field, t0: u32, m: u32) -> UniPoly {
        let factor = Self::linear(field, field.neg(t0), 1);
        (0..m).fold(Self::constant(field, 1), |acc, _| acc.mul(&factor))
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            f,
            (0..len)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            f,
            (0..len)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: u32) -> UniPoly {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|&x| self.field.mul(c, x)).collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, t), c))
    }

    /// Long division; `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        let f = &self.field;
        let dd = divisor.degree()?;
        let lead_inv = f.inv(divisor.coeffs[dd]).ok()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            quot[i - dd] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Some((Self::new(f, quot), Self::new(f, rem)))
    }

    /// Largest `m` with `(t - t0)^m` dividing `self`; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, t0: u32) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let factor = Self::linear(&self.field, self.field.neg(t0), 1);
        let mut cur = self.clone();
        let mut m = 0;
        loop {
            let (quot, rem) = cur.div_rem(&factor).expect("nonzero divisor");
            if !rem.is_zero() {
                return Some(m);
            }
            cur = quot;
            m += 1;
        }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let c = self.field.format(c);
                match i {
                    0 => c,
                    1 => format!("({c})t"),
                    _ => format!("({c})t^{i}"),
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
