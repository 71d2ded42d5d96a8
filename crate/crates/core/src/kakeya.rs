//! Explicit Kakeya sets and exhaustive verification.
//!
//! A set `K ⊆ F_q^n` is Kakeya when it contains a full line `{a + t·b}` in
//! every direction `b`. Lines are invariant under `b ↦ λb`, so only the
//! canonical directions are checked; `b = 0` asks for a single point and is
//! satisfied by any nonempty set.
//!
//! Constructions:
//! - odd `q`: `D_n ∪ (F^{n-1} × {0})` where `D_n` collects the points whose
//!   coordinates satisfy "`α_i + β²` is a square";
//! - even `q`: `E_n`, the points with `α_i = γ_i² + γ_i β` solvable for every `i`;
//! - the recursive odd variant, replacing the slab by `K_{n-1} × {0}`;
//! - `E_n ∪ (F^{n-1} × {0})` in odd characteristic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::space::{Direction, Point, Space};

/// Where a point set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    OddConstruction,
    EvenConstruction,
    Recursive,
    EvenStyleOdd,
    MinSearch,
    FullSpace,
    Custom,
}

/// Which construction to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Odd,
    Even,
    RecursiveOdd,
    EvenStyleOdd,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Odd,
        Variant::Even,
        Variant::RecursiveOdd,
        Variant::EvenStyleOdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Odd => "odd",
            Variant::Even => "even",
            Variant::RecursiveOdd => "recursive-odd",
            Variant::EvenStyleOdd => "even-style-odd",
        }
    }

    /// Whether the variant is defined over a field of this characteristic.
    pub fn supports(self, field: &Field) -> bool {
        match self {
            Variant::Even => field.is_char2(),
            _ => !field.is_char2(),
        }
    }

    /// The natural construction for a field: odd or even.
    pub fn default_for(field: &Field) -> Variant {
        if field.is_char2() {
            Variant::Even
        } else {
            Variant::Odd
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Variant::Odd),
            "even" => Ok(Variant::Even),
            "recursive-odd" | "recursive" => Ok(Variant::RecursiveOdd),
            "even-style-odd" | "even-style-in-odd-char" => Ok(Variant::EvenStyleOdd),
            other => Err(Error::InvalidArgument(format!("unknown variant {other:?}"))),
        }
    }
}

/// A finite point set in `F_q^n`, kept sorted, with optional per-direction
/// witness shifts.
#[derive(Clone, Debug)]
pub struct KakeyaSet {
    space: Space,
    points: Vec<Point>,
    keys: Vec<u64>,
    witnesses: Option<BTreeMap<Direction, Point>>,
    provenance: Provenance,
}

impl KakeyaSet {
    pub fn new(
        space: Space,
        points: impl IntoIterator<Item = Point>,
        provenance: Provenance,
    ) -> Result<KakeyaSet> {
        let mut keys = Vec::new();
        for p in points {
            space.check_point(&p)?;
            keys.push(space.index(&p));
        }
        Ok(Self::from_indices(space, keys, provenance))
    }

    pub(crate) fn from_indices(space: Space, mut keys: Vec<u64>, provenance: Provenance) -> Self {
        keys.sort_unstable();
        keys.dedup();
        let points = keys.iter().map(|&i| space.point(i)).collect();
        KakeyaSet {
            space,
            points,
            keys,
            witnesses: None,
            provenance,
        }
    }

    /// All of `F_q^n`.
    pub fn full_space(space: Space) -> KakeyaSet {
        let keys = (0..space.size()).collect();
        Self::from_indices(space, keys, Provenance::FullSpace)
    }

    /// Attaches witnesses after checking each one is a valid point and direction.
    pub fn with_witnesses(mut self, witnesses: BTreeMap<Direction, Point>) -> Result<Self> {
        for (d, a) in &witnesses {
            self.space.check_direction(d)?;
            self.space.check_point(a)?;
        }
        self.witnesses = Some(witnesses);
        Ok(self)
    }

    pub fn without_witnesses(mut self) -> Self {
        self.witnesses = None;
        self
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn witnesses(&self) -> Option<&BTreeMap<Direction, Point>> {
        self.witnesses.as_ref()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim() && self.contains_index(self.space.index(p))
    }

    #[inline]
    pub fn contains_index(&self, i: u64) -> bool {
        self.keys.binary_search(&i).is_ok()
    }

    /// True iff the whole line `{a + t·b}` lies in the set.
    pub fn contains_line(&self, a: &Point, b: &Direction) -> bool {
        self.space
            .line_indices(a, b)
            .all(|i| self.contains_index(i))
    }

    /// Shifts every point (and witness) by `v`.
    pub fn translate(&self, v: &Point) -> Result<KakeyaSet> {
        self.space.check_point(v)?;
        let keys = self
            .points
            .iter()
            .map(|p| self.space.index(&self.space.translate(p, v)))
            .collect();
        let mut out = Self::from_indices(self.space.clone(), keys, self.provenance);
        out.witnesses = self.witnesses.as_ref().map(|w| {
            w.iter()
                .map(|(d, a)| (d.clone(), self.space.translate(a, v)))
                .collect()
        });
        Ok(out)
    }
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// One shift per canonical direction.
    Kakeya {
        witnesses: BTreeMap<Direction, Point>,
    },
    /// The first canonical direction with no line inside the set.
    NotKakeya { direction: Direction },
}

impl Verdict {
    pub fn is_kakeya(&self) -> bool {
        matches!(self, Verdict::Kakeya { .. })
    }
}

fn find_witness(set: &KakeyaSet, b: &Direction) -> Option<Point> {
    if let Some(a) = set.witnesses.as_ref().and_then(|w| w.get(b)) {
        if set.contains_line(a, b) {
            return Some(a.clone());
        }
    }
    // a lies on its own line (t = 0), so only shifts inside the set can work
    set.points.iter().find(|a| set.contains_line(a, b)).cloned()
}

fn collect_verdict(dirs: Vec<Direction>, found: Vec<Option<Point>>) -> Verdict {
    let mut witnesses = BTreeMap::new();
    for (d, w) in dirs.into_iter().zip(found) {
        match w {
            Some(a) => {
                witnesses.insert(d, a);
            }
            None => return Verdict::NotKakeya { direction: d },
        }
    }
    Verdict::Kakeya { witnesses }
}

/// Exhaustive Kakeya check over all canonical directions. Stored witnesses
/// are tried first; otherwise shifts are searched among the set's points in
/// sorted order, so the result is deterministic.
pub fn verify(set: &KakeyaSet) -> Verdict {
    let dirs = set.space.canonical_directions();
    #[cfg(feature = "parallel")]
    let found: Vec<Option<Point>> = {
        use rayon::prelude::*;
        dirs.par_iter().map(|b| find_witness(set, b)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let found: Vec<Option<Point>> = dirs.iter().map(|b| find_witness(set, b)).collect();
    collect_verdict(dirs, found)
}

/// Checks the stored witnesses only, without any search. `None` when the set
/// carries no witnesses.
pub fn verify_stored(set: &KakeyaSet) -> Option<Verdict> {
    let stored = set.witnesses.as_ref()?;
    let dirs = set.space.canonical_directions();
    let found = dirs
        .iter()
        .map(|b| stored.get(b).filter(|a| set.contains_line(a, b)).cloned())
        .collect();
    Some(collect_verdict(dirs, found))
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "constructions need n >= 2, got {n}"
        )));
    }
    Ok(())
}

fn require_odd(field: &Field) -> Result<()> {
    if field.is_char2() {
        return Err(Error::WrongCharacteristic {
            expected: "odd",
            p: field.p(),
        });
    }
    Ok(())
}

fn require_even(field: &Field) -> Result<()> {
    if !field.is_char2() {
        return Err(Error::WrongCharacteristic {
            expected: "even",
            p: field.p(),
        });
    }
    Ok(())
}

/// Indices of `A_1 × … × A_n`, one admissible value list per coordinate.
fn product_indices(q: u64, per_coord: &[&[u32]], out: &mut Vec<u64>) {
    fn rec(q: u64, rest: &[&[u32]], prefix: u64, out: &mut Vec<u64>) {
        match rest.split_first() {
            None => out.push(prefix),
            Some((head, tail)) => {
                for &c in head.iter() {
                    rec(q, tail, prefix * q + c as u64, out);
                }
            }
        }
    }
    rec(q, per_coord, 0, out);
}

/// Points `⟨α_1, …, α_{n-1}, β⟩` with every `α_i` drawn from `admissible(β)`.
fn fibred_indices(space: &Space, admissible: impl Fn(u32) -> Vec<u32>) -> Vec<u64> {
    let f = space.field();
    let q = f.q() as u64;
    let n = space.dim();
    let mut out = Vec::new();
    for beta in f.elements() {
        let alphas = admissible(beta);
        let last = [beta];
        let mut coords: Vec<&[u32]> = vec![alphas.as_slice(); n - 1];
        coords.push(&last);
        product_indices(q, &coords, &mut out);
    }
    out
}

fn slab_indices(space: &Space) -> Vec<u64> {
    // F^{n-1} × {0}
    let q = space.field().q() as u64;
    (0..q.pow(space.dim() as u32 - 1)).map(|i| i * q).collect()
}

/// `D_n`: `α_i + β²` is a square for every `i`.
fn odd_d_indices(space: &Space) -> Vec<u64> {
    let f = space.field();
    let squares = f.squares();
    fibred_indices(space, |beta| {
        let b2 = f.square(beta);
        let mut v: Vec<u32> = squares.iter().map(|&s| f.sub(s, b2)).collect();
        v.sort_unstable();
        v
    })
}

/// `E_n`: `α_i = γ_i² + γ_i β` is solvable for every `i`.
fn quadratic_image_indices(space: &Space) -> Vec<u64> {
    let f = space.field();
    fibred_indices(space, |beta| f.quadratic_image(beta).into_iter().collect())
}

/// `a = ⟨(b_i / (c·b_n))², …, 0⟩` when `b_n ≠ 0`, origin otherwise; `c = 2`
/// for the odd construction and `1` for the quadratic-image ones.
fn sheared_witness(space: &Space, b: &Direction, scale: u32) -> Point {
    let f = space.field();
    let n = space.dim();
    let bn = b.0[n - 1];
    if bn == 0 {
        return space.origin();
    }
    let denom_inv = f.inv(f.mul(scale, bn)).expect("nonzero");
    let mut coords: Vec<u32> = b.0[..n - 1]
        .iter()
        .map(|&bi| f.square(f.mul(bi, denom_inv)))
        .collect();
    coords.push(0);
    Point(coords)
}

fn witness_map(space: &Space, rule: impl Fn(&Direction) -> Point) -> BTreeMap<Direction, Point> {
    space
        .canonical_directions()
        .into_iter()
        .map(|b| {
            let a = rule(&b);
            (b, a)
        })
        .collect()
}

/// The odd-characteristic construction `K_n = D_n ∪ (F^{n-1} × {0})`.
pub fn construct_odd(field: &Field, n: usize) -> Result<KakeyaSet> {
    require_odd(field)?;
    check_n(n)?;
    let space = Space::new(field.clone(), n)?;
    let mut keys = odd_d_indices(&space);
    keys.extend(slab_indices(&space));
    let two = field.from_int(2);
    let witnesses = witness_map(&space, |b| sheared_witness(&space, b, two));
    let mut set = KakeyaSet::from_indices(space, keys, Provenance::OddConstruction);
    set.witnesses = Some(witnesses);
    Ok(set)
}

/// `D_n` alone, without the `β = 0` slab. Not Kakeya: it misses every
/// horizontal line.
pub fn odd_core(field: &Field, n: usize) -> Result<KakeyaSet> {
    require_odd(field)?;
    check_n(n)?;
    let space = Space::new(field.clone(), n)?;
    let keys = odd_d_indices(&space);
    Ok(KakeyaSet::from_indices(space, keys, Provenance::Custom))
}

/// The characteristic-2 construction `E_n`.
pub fn construct_even(field: &Field, n: usize) -> Result<KakeyaSet> {
    require_even(field)?;
    check_n(n)?;
    let space = Space::new(field.clone(), n)?;
    // β = 0 gives α_i = γ_i², i.e. all of F^{n-1} × {0}
    let keys = quadratic_image_indices(&space);
    let witnesses = witness_map(&space, |b| sheared_witness(&space, b, 1));
    let mut set = KakeyaSet::from_indices(space, keys, Provenance::EvenConstruction);
    set.witnesses = Some(witnesses);
    Ok(set)
}

/// `K_n = D_n ∪ (K_{n-1} × {0})` with `K_1 = F`, odd characteristic.
fn construct_recursive(field: &Field, n: usize) -> Result<KakeyaSet> {
    require_odd(field)?;
    check_n(n)?;
    let q = field.q() as u64;
    // (indices of K_{d}, witness map of K_{d}) built bottom-up
    let line = Space::new(field.clone(), 1)?;
    let mut prev_keys: Vec<u64> = (0..q).collect();
    let mut prev_witnesses: BTreeMap<Direction, Point> =
        BTreeMap::from([(Direction(vec![1]), line.origin())]);
    let two = field.from_int(2);
    for d in 2..=n {
        let space = Space::new(field.clone(), d)?;
        let mut keys = odd_d_indices(&space);
        keys.extend(prev_keys.iter().map(|&i| i * q));
        let witnesses = witness_map(&space, |b| {
            if b.0[d - 1] != 0 {
                sheared_witness(&space, b, two)
            } else {
                let lower = Direction(b.0[..d - 1].to_vec());
                let mut a = prev_witnesses[&lower].0.clone();
                a.push(0);
                Point(a)
            }
        });
        keys.sort_unstable();
        keys.dedup();
        prev_keys = keys;
        prev_witnesses = witnesses;
    }
    let space = Space::new(field.clone(), n)?;
    let mut set = KakeyaSet::from_indices(space, prev_keys, Provenance::Recursive);
    set.witnesses = Some(prev_witnesses);
    Ok(set)
}

/// `E_n ∪ (F^{n-1} × {0})` over an odd-characteristic field.
fn construct_even_style_odd(field: &Field, n: usize) -> Result<KakeyaSet> {
    require_odd(field)?;
    check_n(n)?;
    let space = Space::new(field.clone(), n)?;
    let mut keys = quadratic_image_indices(&space);
    keys.extend(slab_indices(&space));
    let witnesses = witness_map(&space, |b| sheared_witness(&space, b, 1));
    let mut set = KakeyaSet::from_indices(space, keys, Provenance::EvenStyleOdd);
    set.witnesses = Some(witnesses);
    Ok(set)
}

/// Builds the requested construction.
pub fn construct(field: &Field, n: usize, variant: Variant) -> Result<KakeyaSet> {
    match variant {
        Variant::Odd => construct_odd(field, n),
        Variant::Even => construct_even(field, n),
        Variant::RecursiveOdd => construct_recursive(field, n),
        Variant::EvenStyleOdd => construct_even_style_odd(field, n),
    }
}

/// `|D_n| = q·((q+1)/2)^{n-1}`.
pub fn odd_d_size(q: u64, n: usize) -> BigUint {
    BigUint::from(q) * BigUint::from(q.div_ceil(2)).pow(n as u32 - 1)
}

/// `|K_n| = |D_n| + q^{n-1} - ((q+1)/2)^{n-1}`: the slab meets `D_n` exactly
/// in the points whose `α_i` are all squares.
pub fn odd_size(q: u64, n: usize) -> BigUint {
    let half = BigUint::from(q.div_ceil(2)).pow(n as u32 - 1);
    odd_d_size(q, n) + BigUint::from(q).pow(n as u32 - 1) - half
}

/// `|E_n| = q^{n-1} + (q-1)·(q/2)^{n-1}`.
pub fn even_size(q: u64, n: usize) -> BigUint {
    BigUint::from(q).pow(n as u32 - 1)
        + BigUint::from(q - 1) * BigUint::from(q / 2).pow(n as u32 - 1)
}

/// Largest `q^n` for which [`upper_bound_size`] will enumerate a construction.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

/// Exact size of a construction, split as `2^{-(n-1)} q^n + remainder` with
/// `remainder = constant · q^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBoundReport {
    pub q: u64,
    pub n: usize,
    pub variant: Variant,
    pub exact: BigUint,
    /// `"closed-form"` or `"enumerated"`.
    pub source: &'static str,
    pub leading: BigRational,
    pub remainder: BigRational,
    pub constant: BigRational,
}

impl UpperBoundReport {
    pub fn leading_f64(&self) -> f64 {
        self.leading.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn constant_f64(&self) -> f64 {
        self.constant.to_f64().unwrap_or(f64::NAN)
    }

    /// `exact / q^n`.
    pub fn density(&self) -> f64 {
        let qn = BigRational::from_integer(BigUint::from(self.q).pow(self.n as u32).into());
        (BigRational::from_integer(self.exact.clone().into()) / qn)
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Construction size with its leading-term decomposition. Odd and even use
/// closed forms (any `q`); the two variants are enumerated and require
/// `q^n ≤ ENUMERATION_LIMIT`.
pub fn upper_bound_size(field: &Field, n: usize, variant: Variant) -> Result<UpperBoundReport> {
    check_n(n)?;
    if !variant.supports(field) {
        return Err(Error::WrongCharacteristic {
            expected: if variant == Variant::Even {
                "even"
            } else {
                "odd"
            },
            p: field.p(),
        });
    }
    let q = field.q() as u64;
    let (exact, source) = match variant {
        Variant::Odd => (odd_size(q, n), "closed-form"),
        Variant::Even => (even_size(q, n), "closed-form"),
        _ => {
            let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            if size > ENUMERATION_LIMIT as u128 {
                return Err(Error::TooLarge(format!(
                    "q^n = {size} exceeds the enumeration limit {ENUMERATION_LIMIT}"
                )));
            }
            (
                BigUint::from(construct(field, n, variant)?.len()),
                "enumerated",
            )
        }
    };
    let qn1 = BigUint::from(q).pow(n as u32 - 1);
    let leading = BigRational::new(
        (BigUint::from(q).pow(n as u32)).into(),
        (BigUint::from(2u32).pow(n as u32 - 1)).into(),
    );
    let remainder = BigRational::from_integer(exact.clone().into()) - &leading;
    let constant = if qn1.is_zero() {
        BigRational::zero()
    } else {
        &remainder / BigRational::from_integer(qn1.into())
    };
    Ok(UpperBoundReport {
        q,
        n,
        variant,
        exact,
        source,
        leading,
        remainder,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn field(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    /// Filters all of F_q^n by the defining predicate.
    fn brute_odd_d(f: &Field, n: usize) -> BTreeSet<Point> {
        let s = Space::new(f.clone(), n).unwrap();
        s.points()
            .filter(|p| {
                let beta = p.0[n - 1];
                p.0[..n - 1]
                    .iter()
                    .all(|&a| f.is_square(f.add(a, f.square(beta))).unwrap())
            })
            .collect()
    }

    fn brute_quadratic(f: &Field, n: usize) -> BTreeSet<Point> {
        let s = Space::new(f.clone(), n).unwrap();
        s.points()
            .filter(|p| {
                let beta = p.0[n - 1];
                p.0[..n - 1].iter().all(|&a| {
                    f.elements()
                        .any(|g| f.add(f.square(g), f.mul(g, beta)) == a)
                })
            })
            .collect()
    }

    #[test]
    fn odd_sizes_match_filter() {
        let f5 = field(5);
        assert_eq!(brute_odd_d(&f5, 3).len(), 45);
        assert_eq!(odd_d_size(5, 3), BigUint::from(45u32));
        for q in [3u64, 5, 7, 9] {
            for n in [2, 3] {
                let f = field(q);
                let s = Space::new(f.clone(), n).unwrap();
                let d = KakeyaSet::from_indices(
                    s,
                    odd_d_indices(&Space::new(f.clone(), n).unwrap()),
                    Provenance::Custom,
                );
                let brute = brute_odd_d(&f, n);
                assert_eq!(d.points().iter().cloned().collect::<BTreeSet<_>>(), brute);
                let k = construct_odd(&f, n).unwrap();
                assert_eq!(BigUint::from(k.len()), odd_size(q, n));
            }
        }
    }

    #[test]
    fn q3_n2_union() {
        let f = field(3);
        let k = construct_odd(&f, 2).unwrap();
        assert_eq!(k.len(), 7);
        let d = brute_odd_d(&f, 2);
        assert_eq!(d.len(), 6);
        let overlap: Vec<_> = d.iter().filter(|p| p.0[1] == 0).cloned().collect();
        assert_eq!(overlap, vec![Point(vec![0, 0]), Point(vec![1, 0])]);
    }

    #[test]
    fn even_sizes_match_filter() {
        assert_eq!(construct_even(&field(4), 2).unwrap().len(), 10);
        assert_eq!(construct_even(&field(8), 2).unwrap().len(), 36);
        for q in [2u64, 4, 8] {
            for n in [2, 3] {
                let f = field(q);
                let e = construct_even(&f, n).unwrap();
                assert_eq!(
                    e.points().iter().cloned().collect::<BTreeSet<_>>(),
                    brute_quadratic(&f, n)
                );
                assert_eq!(BigUint::from(e.len()), even_size(q, n));
            }
        }
    }

    #[test]
    fn constructions_verify_with_stored_witnesses() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = field(q);
            for n in 2..=3 {
                for v in Variant::ALL.into_iter().filter(|v| v.supports(&f)) {
                    let set = construct(&f, n, v).unwrap();
                    let stored = verify_stored(&set).unwrap();
                    assert!(stored.is_kakeya(), "q={q} n={n} {v}: {stored:?}");
                    assert_eq!(verify(&set), stored);
                }
            }
        }
    }

    #[test]
    fn recursive_is_smaller_and_bounded() {
        for q in [3u64, 5, 7] {
            let f = field(q);
            for n in 3..=4 {
                let r = construct(&f, n, Variant::RecursiveOdd).unwrap();
                let o = construct_odd(&f, n).unwrap();
                let lower = construct(&f, n - 1, Variant::RecursiveOdd).unwrap();
                assert!(r.len() < o.len());
                assert!(BigUint::from(r.len()) <= odd_d_size(q, n) + BigUint::from(lower.len()));
            }
            // n = 2 coincides with the plain construction
            let r2 = construct(&f, 2, Variant::RecursiveOdd).unwrap();
            assert_eq!(r2.points(), construct_odd(&f, 2).unwrap().points());
        }
    }

    #[test]
    fn odd_lines_stay_in_squares() {
        // α_i + β² = (b_i/(2b_n) + t·b_n)² along every witness line with b_n ≠ 0
        for q in [3u64, 5, 7, 9, 11] {
            let f = field(q);
            let set = construct_odd(&f, 3).unwrap();
            let s = set.space();
            for (b, a) in set.witnesses().unwrap() {
                if b.0[2] == 0 {
                    continue;
                }
                for t in f.elements() {
                    let p = s.along(a, t, b);
                    let beta = p.0[2];
                    for &alpha in &p.0[..2] {
                        assert!(f.is_square(f.add(alpha, f.square(beta))).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn wrong_characteristic_and_dimension() {
        assert!(matches!(
            construct_odd(&field(4), 2),
            Err(Error::WrongCharacteristic { .. })
        ));
        assert!(matches!(
            construct_even(&field(5), 2),
            Err(Error::WrongCharacteristic { .. })
        ));
        assert!(construct(&field(8), 2, Variant::RecursiveOdd).is_err());
        assert!(construct(&field(8), 2, Variant::EvenStyleOdd).is_err());
        assert!(matches!(
            construct_odd(&field(5), 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn verify_negative_and_full_space() {
        let f = field(3);
        let s = Space::new(f.clone(), 2).unwrap();
        assert!(verify(&KakeyaSet::full_space(s.clone())).is_kakeya());
        let d2 = KakeyaSet::from_indices(s.clone(), odd_d_indices(&s), Provenance::Custom);
        assert_eq!(
            verify(&d2),
            Verdict::NotKakeya {
                direction: Direction(vec![1, 0])
            }
        );
        let empty = KakeyaSet::new(s, Vec::new(), Provenance::Custom).unwrap();
        assert!(!verify(&empty).is_kakeya());
    }

    #[test]
    fn verify_search_ignores_bad_stored_witness() {
        let f = field(5);
        let set = construct_odd(&f, 2).unwrap();
        let mut w = set.witnesses().unwrap().clone();
        let first = w.keys().next().unwrap().clone();
        w.insert(first, Point(vec![4, 4]));
        let set = set.with_witnesses(w).unwrap();
        assert!(!verify_stored(&set).unwrap().is_kakeya());
        assert!(verify(&set).is_kakeya());
    }

    #[test]
    fn translation_invariance() {
        let f = field(5);
        let set = construct_odd(&f, 2).unwrap();
        for v in [Point(vec![1, 2]), Point(vec![4, 0])] {
            let moved = set.translate(&v).unwrap();
            assert!(verify_stored(&moved).unwrap().is_kakeya());
            assert!(verify(&moved.clone().without_witnesses()).is_kakeya());
        }
        let s = Space::new(f, 2).unwrap();
        let d2 = KakeyaSet::from_indices(s.clone(), odd_d_indices(&s), Provenance::Custom);
        assert!(!verify(&d2.translate(&Point(vec![3, 1])).unwrap()).is_kakeya());
    }

    #[test]
    fn upper_bound_reports() {
        let r = upper_bound_size(&field(5), 3, Variant::Odd).unwrap();
        assert!(r.exact <= BigUint::from(70u32));
        assert_eq!(r.exact, BigUint::from(61u32));
        assert!((r.leading_f64() - 31.25).abs() < 1e-12);
        let e = upper_bound_size(&field(4), 2, Variant::Even).unwrap();
        assert_eq!(e.exact, BigUint::from(10u32));
        assert!((e.leading_f64() - 8.0).abs() < 1e-12);
        assert_eq!(e.remainder, BigRational::from_integer(2.into()));
        assert!(e.constant_f64() <= 1.0);
        for q in [101u64, 499] {
            let r2 = upper_bound_size(&field(q), 2, Variant::Odd).unwrap();
            let r3 = upper_bound_size(&field(q), 3, Variant::Odd).unwrap();
            assert!((r2.density() - 0.5).abs() < 1.5 / q as f64);
            assert!((r3.density() - 0.25).abs() < 1.5 / q as f64);
        }
        let enumerated = upper_bound_size(&field(7), 3, Variant::RecursiveOdd).unwrap();
        assert_eq!(enumerated.source, "enumerated");
        assert!(upper_bound_size(&field(101), 5, Variant::RecursiveOdd).is_err());
    }
}
