use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial `x_1^{e_1} ⋯ x_n^{e_n}`.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared from `x_1` onwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if any {
                f.write_str("*")?;
            }
            any = true;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if !any {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Exponent vectors with every entry `≤ cap` and total degree `< bound`, in
/// graded-lex order.
pub(crate) fn bounded_exponents(n: usize, cap: u32, bound: u64) -> Vec<Monomial> {
    fn rec(n: usize, cap: u32, budget: u64, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial(prefix.clone()));
            return;
        }
        let top = (cap as u64).min(budget);
        for e in 0..=top {
            prefix.push(e as u32);
            rec(n, cap, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    rec(n, cap, bound - 1, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let m = |v: &[u32]| Monomial::new(v.to_vec());
        assert!(m(&[0, 0]) < m(&[0, 1]));
        assert!(m(&[0, 1]) < m(&[1, 0]));
        assert!(m(&[1, 0]) < m(&[0, 2]));
        assert!(m(&[1, 1]) < m(&[2, 0]));
        assert_eq!(format!("{:?}", m(&[2, 1])), "x1^2*x2");
    }

    #[test]
    fn bounded_counts() {
        // stars and bars without an active cap: C(bound-1+n, n)
        assert_eq!(bounded_exponents(3, 100, 3).len(), 10);
        assert_eq!(bounded_exponents(2, 1, 2).len(), 3);
        assert!(bounded_exponents(2, 1, 0).is_empty());
    }
}
