//! Exact minimum Kakeya sets in the plane `F_q^2` by branch and bound.
//!
//! Any Kakeya set contains one full line per canonical direction, and the
//! union of such a choice of lines is itself Kakeya. A minimum Kakeya set is
//! therefore the smallest union obtained by picking one of the `q` parallel
//! lines in each of the `q + 1` directions, which is what the search
//! enumerates.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::bounds::best_m;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::kakeya::{construct, upper_bound_size, KakeyaSet, Provenance, Variant};
use crate::space::{Direction, Point, Space};

/// Largest field order the exact search accepts.
pub const MAX_SEARCH_Q: u32 = 9;

/// The `q` parallel lines in one direction, as bitmasks over `F_q^2`.
#[derive(Debug, Clone)]
struct DirectionLines {
    dir: Direction,
    /// (least point index on the line, mask), sorted by the index.
    lines: Vec<(u64, u128)>,
}

fn parallel_lines(space: &Space, dir: &Direction) -> Vec<(u64, u128)> {
    let mut seen = 0u128;
    let mut lines = Vec::new();
    for i in 0..space.size() {
        if seen >> i & 1 == 1 {
            continue;
        }
        let mask = space
            .line_indices(&space.point(i), dir)
            .fold(0u128, |m, j| m | 1 << j);
        seen |= mask;
        // i is the first point not yet covered, hence the least on its line
        lines.push((i, mask));
    }
    lines
}

/// Result of [`min_kakeya`].
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub size: usize,
    pub witness: KakeyaSet,
    /// Search nodes expanded.
    pub nodes: u64,
}

struct Search<'a> {
    dirs: &'a [DirectionLines],
    q: usize,
    best: usize,
    best_choice: Option<Vec<usize>>,
    choice: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    /// Lines `k + 1, k + 2, …` each add at least `q - (lines already chosen)`
    /// new points, since two lines in different directions share at most one.
    fn tail_bound(&self, chosen: usize) -> usize {
        (chosen + 1..self.dirs.len())
            .map(|c| self.q.saturating_sub(c))
            .sum()
    }

    fn dfs(&mut self, depth: usize, union: u128) {
        self.nodes += 1;
        let size = union.count_ones() as usize;
        if depth == self.dirs.len() {
            if size < self.best {
                self.best = size;
                self.best_choice = Some(self.choice.clone());
            }
            return;
        }
        let lines = &self.dirs[depth].lines;
        // the first two lines can be moved through the origin by a translation
        let options = if depth < 2 { 1 } else { lines.len() };
        let min_new = lines[..options]
            .iter()
            .map(|&(_, m)| (m & !union).count_ones() as usize)
            .min()
            .unwrap_or(0);
        if size + min_new + self.tail_bound(depth) >= self.best {
            return;
        }
        for (idx, &(_, mask)) in lines[..options].iter().enumerate() {
            let added = (mask & !union).count_ones() as usize;
            if size + added + self.tail_bound(depth) >= self.best {
                continue;
            }
            self.choice.push(idx);
            self.dfs(depth + 1, union | mask);
            self.choice.pop();
        }
    }
}

fn check_instance(field: &Field, n: usize) -> Result<Space> {
    if n != 2 {
        return Err(Error::Unsupported(format!(
            "exact search covers n = 2 only, got n = {n}"
        )));
    }
    if field.q() > MAX_SEARCH_Q {
        return Err(Error::Unsupported(format!(
            "exact search covers q <= {MAX_SEARCH_Q}, got q = {}",
            field.q()
        )));
    }
    Space::new(field.clone(), 2)
}

fn lines_by_direction(space: &Space) -> Vec<DirectionLines> {
    space
        .canonical_directions()
        .into_iter()
        .map(|dir| DirectionLines {
            lines: parallel_lines(space, &dir),
            dir,
        })
        .collect()
}

fn assemble(space: Space, dirs: &[DirectionLines], choice: &[usize]) -> Result<KakeyaSet> {
    let mut union = 0u128;
    let mut witnesses = BTreeMap::new();
    for (d, &c) in dirs.iter().zip(choice) {
        let (rep, mask) = d.lines[c];
        union |= mask;
        witnesses.insert(d.dir.clone(), space.point(rep));
    }
    let keys: Vec<u64> = (0..space.size()).filter(|&i| union >> i & 1 == 1).collect();
    KakeyaSet::from_indices(space, keys, Provenance::MinSearch).with_witnesses(witnesses)
}

/// Exact minimum size of a Kakeya set in `F_q^2`, `q ≤ 9`, with the
/// lexicographically first optimal choice of lines (ordered by each line's
/// least point) as witness.
pub fn min_kakeya(field: &Field, n: usize) -> Result<SearchResult> {
    let space = check_instance(field, n)?;
    let dirs = lines_by_direction(&space);
    let construction = construct(field, 2, Variant::default_for(field))?;
    let mut search = Search {
        dirs: &dirs,
        q: field.q() as usize,
        best: construction.len() + 1,
        best_choice: None,
        choice: Vec::with_capacity(dirs.len()),
        nodes: 0,
    };
    search.dfs(0, 0);
    let choice = search
        .best_choice
        .ok_or_else(|| Error::Internal("search found no union of lines".into()))?;
    let witness = assemble(space, &dirs, &choice)?;
    Ok(SearchResult {
        size: search.best,
        witness,
        nodes: search.nodes,
    })
}

/// Exhaustive minimum over all `q^{q+1}` line choices, no pruning. Only for
/// tiny `q`; used to cross-check [`min_kakeya`].
pub fn min_kakeya_brute_force(field: &Field) -> Result<usize> {
    let space = check_instance(field, 2)?;
    let dirs = lines_by_direction(&space);
    let q = field.q() as u64;
    let total = q.pow(dirs.len() as u32);
    if total > 1 << 24 {
        return Err(Error::TooLarge(format!("{total} line choices")));
    }
    let best = (0..total)
        .map(|mut code| {
            dirs.iter()
                .fold(0u128, |u, d| {
                    let c = (code % q) as usize;
                    code /= q;
                    u | d.lines[c].1
                })
                .count_ones() as usize
        })
        .min()
        .expect("at least one choice");
    Ok(best)
}

/// Lower and upper estimates for the minimum Kakeya size in `F_q^n`.
#[derive(Debug, Clone)]
pub struct Sandwich {
    pub q: u32,
    pub n: usize,
    /// Best certified lower bound over `m ≤ m_cap`, and its `m`.
    pub lower: u64,
    pub lower_m: u32,
    /// Exact minimum when the search applies.
    pub exact: Option<usize>,
    /// Smallest construction size available for this field.
    pub upper: u64,
    pub upper_variant: Variant,
}

/// `[lemma bound, construction size]`, with the exact minimum filled in for
/// planar instances the search supports.
pub fn sandwich(field: &Field, n: usize, m_cap: u32) -> Result<Sandwich> {
    let lb = best_m(n, field.q(), m_cap)?;
    let (upper, upper_variant) = Variant::ALL
        .into_iter()
        .filter(|v| v.supports(field))
        .filter_map(|v| {
            let r = upper_bound_size(field, n, v).ok()?;
            Some((r.exact.to_u64()?, v))
        })
        .min_by_key(|&(s, _)| s)
        .ok_or_else(|| Error::Unsupported("no construction for this field".into()))?;
    let exact = if n == 2 && field.q() <= MAX_SEARCH_Q {
        Some(min_kakeya(field, n)?.size)
    } else {
        None
    };
    Ok(Sandwich {
        q: field.q(),
        n,
        lower: lb.ceiling_u64().unwrap_or(u64::MAX),
        lower_m: lb.m,
        exact,
        upper,
        upper_variant,
    })
}

/// `Point` of the first witness line for a direction, for display.
pub fn witness_line(set: &KakeyaSet, dir: &Direction) -> Option<Vec<Point>> {
    let a = set.witnesses()?.get(dir)?;
    Some(set.space().line_points(&crate::space::LineSpec {
        base: a.clone(),
        dir: dir.clone(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kakeya::{verify, verify_stored};

    fn field(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn q2_is_a_triangle() {
        let r = min_kakeya(&field(2), 2).unwrap();
        assert_eq!(r.size, 3);
        assert_eq!(
            r.witness.points(),
            &[Point(vec![0, 0]), Point(vec![0, 1]), Point(vec![1, 0])]
        );
        assert!(verify_stored(&r.witness).unwrap().is_kakeya());
    }

    #[test]
    fn matches_brute_force() {
        for q in [2u64, 3, 4, 5] {
            let f = field(q);
            let r = min_kakeya(&f, 2).unwrap();
            assert_eq!(r.size, min_kakeya_brute_force(&f).unwrap(), "q={q}");
            assert_eq!(r.witness.len(), r.size);
            assert!(verify(&r.witness).is_kakeya());
        }
    }

    #[test]
    fn q3_between_bounds() {
        let r = min_kakeya(&field(3), 2).unwrap();
        assert!((6..=7).contains(&r.size));
    }

    #[test]
    fn sandwich_and_monotone() {
        let mut prev = 0;
        for q in [2u64, 3, 4, 5, 7] {
            let f = field(q);
            let s = sandwich(&f, 2, 4).unwrap();
            let exact = s.exact.unwrap() as u64;
            assert!(s.lower <= exact && exact <= s.upper, "{s:?}");
            assert!(exact >= prev);
            prev = exact;
        }
        let s3 = sandwich(&field(5), 3, 6).unwrap();
        assert!(s3.exact.is_none());
        assert!(s3.lower <= s3.upper);
    }

    #[test]
    fn unsupported_instances() {
        assert!(matches!(
            min_kakeya(&field(3), 3),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            min_kakeya(&field(11), 2),
            Err(Error::Unsupported(_))
        ));
    }
}
