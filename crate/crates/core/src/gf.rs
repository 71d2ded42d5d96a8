//! Exact arithmetic in `F_q`, `q = p^k ≤ 2^16`.
//!
//! Elements are plain integers in `[0, q)`. For `k = 1` the integer is the
//! residue mod `p`; for `k > 1` it packs the coefficients of a polynomial over
//! `F_p` in base-`p` digits, least significant digit being the constant term.
//! So in `F_4 = F_2[x]/(x^2+x+1)` the element `x` is `2` and `x + 1` is `3`.
//!
//! Extension-field multiplication and inversion go through log/antilog tables
//! built once per [`Field`]; addition is digit-wise (XOR in characteristic 2).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// A finite field `F_q`. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients low to high (length `k + 1`); `None` for prime fields.
    modulus: Option<Vec<u32>>,
    /// `exp[i] = g^i` for `i < 2(q-1)`; empty for prime fields.
    exp: Vec<u32>,
    /// Discrete log base `g`; `log[0]` unused. Empty for prime fields.
    log: Vec<u32>,
}

impl Field {
    /// Builds `F_q`. The modulus for `k > 1` is the least monic irreducible
    /// polynomial of degree `k`, ordering candidates by their base-`p` value.
    pub fn new(q: u64) -> Result<Field> {
        if !(2..=MAX_ORDER).contains(&q) {
            return Err(Error::OrderOutOfRange(q));
        }
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let q = q as u32;
        if k == 1 {
            return Ok(Field {
                inner: Arc::new(Inner {
                    p,
                    k,
                    q,
                    modulus: None,
                    exp: Vec::new(),
                    log: Vec::new(),
                }),
            });
        }
        let modulus = least_irreducible(p, k);
        let (exp, log) = build_tables(p, k, q, &modulus);
        Ok(Field {
            inner: Arc::new(Inner {
                p,
                k,
                q,
                modulus: Some(modulus),
                exp,
                log,
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    pub fn is_char2(&self) -> bool {
        self.inner.p == 2
    }

    /// All element representations `0..q`.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.inner.q
    }

    /// Wraps a representation as a checked element.
    pub fn element(&self, rep: u64) -> Result<FieldElement> {
        self.check(rep)?;
        Ok(FieldElement {
            field: self.clone(),
            rep: rep as u32,
        })
    }

    pub fn check(&self, rep: u64) -> Result<()> {
        if rep >= self.inner.q as u64 {
            return Err(Error::ElementOutOfRange {
                rep,
                q: self.inner.q,
            });
        }
        Ok(())
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.inner.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.inner;
        if f.k == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if f.p == 2 {
            a ^ b
        } else {
            digitwise(a, b, f.p, |x, y| (x + y) % f.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let f = &*self.inner;
        if f.k == 1 {
            if a >= b {
                a - b
            } else {
                a + f.p - b
            }
        } else if f.p == 2 {
            a ^ b
        } else {
            digitwise(a, b, f.p, |x, y| (x + f.p - y) % f.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let f = &*self.inner;
        if a == 0 || b == 0 {
            return 0;
        }
        if f.k == 1 {
            ((a as u64 * b as u64) % f.p as u64) as u32
        } else {
            f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let f = &*self.inner;
        if f.k == 1 {
            Ok(self.pow(a, (f.p - 2) as u64))
        } else {
            let order = f.q - 1;
            Ok(f.exp[((order - f.log[a as usize]) % order) as usize])
        }
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any `e ≥ 0`, with `0^0 = 1`.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.inner;
        if f.k > 1 {
            let order = (f.q - 1) as u64;
            let l = (f.log[a as usize] as u64 * (e % order)) % order;
            return f.exp[l as usize];
        }
        let mut base = a;
        let mut e = e;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Square root in characteristic 2: `a^(q/2)`.
    pub fn sqrt_char2(&self, a: u32) -> Result<u32> {
        if !self.is_char2() {
            return Err(Error::WrongCharacteristic {
                expected: "even",
                p: self.p(),
            });
        }
        Ok(self.pow(a, (self.q() / 2) as u64))
    }

    /// Euler's criterion: `a` is a square iff `a^((q-1)/2) ∈ {0, 1}`.
    pub fn is_square(&self, a: u32) -> Result<bool> {
        if self.is_char2() {
            return Err(Error::WrongCharacteristic {
                expected: "odd",
                p: self.p(),
            });
        }
        Ok(self.pow(a, ((self.q() - 1) / 2) as u64) <= 1)
    }

    /// `{γ² + βγ : γ ∈ F_q}` by enumeration, in characteristic 2.
    pub fn artin_schreier_image(&self, beta: u32) -> Result<BTreeSet<u32>> {
        if !self.is_char2() {
            return Err(Error::WrongCharacteristic {
                expected: "even",
                p: self.p(),
            });
        }
        Ok(self.quadratic_image(beta))
    }

    /// `{γ² + βγ : γ ∈ F_q}` in any characteristic.
    pub(crate) fn quadratic_image(&self, beta: u32) -> BTreeSet<u32> {
        self.elements()
            .map(|g| self.add(self.square(g), self.mul(beta, g)))
            .collect()
    }

    /// Sorted list of the squares of `F_q`.
    pub fn squares(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self.elements().map(|c| self.square(c)).collect();
        set.into_iter().collect()
    }

    /// Human-readable form: the residue for prime fields, a polynomial in `x`
    /// otherwise.
    pub fn format(&self, rep: u32) -> String {
        if self.k() == 1 {
            return rep.to_string();
        }
        let p = self.p();
        let mut terms = Vec::new();
        let mut r = rep;
        let mut deg = 0;
        while r > 0 {
            let d = r % p;
            if d != 0 {
                let mono = match deg {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{deg}"),
                };
                terms.push(match (d, deg) {
                    (_, 0) => d.to_string(),
                    (1, _) => mono,
                    _ => format!("{d}{mono}"),
                });
            }
            r /= p;
            deg += 1;
        }
        if terms.is_empty() {
            return "0".into();
        }
        terms.reverse();
        terms.join("+")
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // the modulus is a deterministic function of q
        self.q() == other.q()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => write!(f, "F_{}", self.q()),
            Some(m) => write!(f, "F_{} (p={}, modulus={:?})", self.q(), self.p(), m),
        }
    }
}

fn digitwise(mut a: u32, mut b: u32, p: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += op(a % p, b % p) * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

fn prime_power(q: u64) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, coefficients low to high.

fn to_digits(mut rep: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = rep % p;
        rep /= p;
    }
    out
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm && r.len() > 1 {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        // all monic divisors of degree d
        for low in 0..(p as u64).pow(d as u32) {
            let mut div = to_digits(low as u32, p, d);
            div.push(1);
            let r = poly_rem(poly, &div, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    (0..count)
        .map(|low| {
            let mut m = to_digits(low as u32, p, k as usize);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn build_tables(p: u32, k: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let len = k as usize;
    let mulmod = |a: u32, b: u32| -> u32 {
        let r = poly_mulmod(&to_digits(a, p, len), &to_digits(b, p, len), modulus, p);
        from_digits(&r, p)
    };
    let powmod = |a: u32, mut e: u64| -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let order = (q - 1) as u64;
    let factors = prime_factors(order);
    let generator = (2..q)
        .find(|&g| factors.iter().all(|&r| powmod(g, order / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * (q as usize - 1)];
    let mut log = vec![0u32; q as usize];
    let mut cur = 1;
    for i in 0..q as usize - 1 {
        exp[i] = cur;
        exp[i + q as usize - 1] = cur;
        log[cur as usize] = i as u32;
        cur = mulmod(cur, generator);
    }
    (exp, log)
}

/// Operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Inv,
}

/// Second operand of [`arith`]: a field element, or an integer exponent for `Pow`.
#[derive(Debug, Clone)]
pub enum Operand {
    Element(FieldElement),
    Integer(u64),
}

/// A field element bound to its field, with checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    rep: u32,
}

impl FieldElement {
    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field.q(), other.field.q()));
        }
        Ok(())
    }

    fn with(&self, rep: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            rep,
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.rep, other.rep)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.rep, other.rep)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.rep, other.rep)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.div(self.rep, other.rep)?))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.rep)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.rep, e))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in F_{}", self.field.format(self.rep), self.field.q())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.rep))
    }
}

/// Dispatches one arithmetic operation. `Inv` ignores `b`; `Pow` needs an
/// integer exponent, every other binary op needs an element from the same field.
pub fn arith(op: ArithOp, a: &FieldElement, b: &Operand) -> Result<FieldElement> {
    match (op, b) {
        (ArithOp::Inv, _) => a.inv(),
        (ArithOp::Pow, Operand::Integer(e)) => Ok(a.pow(*e)),
        (ArithOp::Pow, Operand::Element(_)) => Err(Error::InvalidArgument(
            "pow takes a nonnegative integer exponent".into(),
        )),
        (_, Operand::Integer(v)) => {
            let rhs = a.field().element(*v)?;
            arith(op, a, &Operand::Element(rhs))
        }
        (ArithOp::Add, Operand::Element(e)) => a.try_add(e),
        (ArithOp::Sub, Operand::Element(e)) => a.try_sub(e),
        (ArithOp::Mul, Operand::Element(e)) => a.try_mul(e),
        (ArithOp::Div, Operand::Element(e)) => a.try_div(e),
    }
}
