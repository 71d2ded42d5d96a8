//! Exact lower bounds from multiplicity interpolation, and their asymptotics.
//!
//! `N_q(n, m)` counts monomials in `n` variables with every exponent `≤ q-1`
//! and total degree `< mq`. A Kakeya set `K` in `F_q^n` satisfies
//! `|K| ≥ N_q(n, m) / C(m+n-1, n)` for every `m ≥ 1`; everything here is
//! exact big-integer or rational arithmetic except [`AsymptoticReport`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// `C(n, k)` exactly; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of `e ∈ [0, q-1]^n` with `Σ e_i ≤ total`, by inclusion–exclusion
/// over the coordinates forced above the cap.
fn bounded_compositions_upto(n: usize, q: u64, total: u64) -> BigUint {
    let mut acc = BigInt::zero();
    for j in 0..=n as u64 {
        let Some(rest) = total.checked_sub(j * q) else {
            break;
        };
        let term = BigInt::from(binomial(n as u64, j) * binomial(rest + n as u64, n as u64));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint()
        .expect("inclusion-exclusion count is nonnegative")
}

/// `N_q(n, m)`: monomials with individual degree `≤ q-1` and total degree `< mq`.
pub fn count_nq(n: usize, q: u32, m: u32) -> BigUint {
    if m == 0 {
        return BigUint::zero();
    }
    bounded_compositions_upto(n, q as u64, m as u64 * q as u64 - 1)
}

/// `C(m+n-1, n)`: linear constraints imposed by one multiplicity-`m` zero.
pub fn per_point_constraints(n: usize, m: u32) -> BigUint {
    if m == 0 {
        return BigUint::zero();
    }
    binomial(m as u64 + n as u64 - 1, n as u64)
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

fn ceil_nonneg(r: &BigRational) -> BigUint {
    r.ceil()
        .to_integer()
        .to_biguint()
        .expect("nonnegative rational")
}

/// Lower bound `N_q(n,m) / C(m+n-1, n)` for one choice of `m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub q: u32,
    pub n: usize,
    pub m: u32,
    #[serde(serialize_with = "ser_display")]
    pub nq: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub denom: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub bound: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub ceiling: BigUint,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl BoundReport {
    pub fn bound_f64(&self) -> f64 {
        rational_to_f64(&self.bound)
    }

    /// Certified minimum Kakeya size as a machine integer, when it fits.
    pub fn ceiling_u64(&self) -> Option<u64> {
        self.ceiling.to_u64()
    }
}

/// `|K| ≥ N_q(n,m) / C(m+n-1, n)` for any Kakeya set in `F_q^n`.
pub fn lemma_bound(n: usize, q: u32, m: u32) -> Result<BoundReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let nq = count_nq(n, q, m);
    let denom = per_point_constraints(n, m);
    let bound = ratio(&nq, &denom);
    let ceiling = ceil_nonneg(&bound);
    Ok(BoundReport {
        q,
        n,
        m,
        nq,
        denom,
        bound,
        ceiling,
    })
}

/// Scans `m ∈ [1, m_cap]`; returns the smallest `m` attaining the largest bound.
pub fn best_m(n: usize, q: u32, m_cap: u32) -> Result<BoundReport> {
    if m_cap == 0 {
        return Err(Error::InvalidArgument("m-cap must be at least 1".into()));
    }
    let mut best = lemma_bound(n, q, 1)?;
    for m in 2..=m_cap {
        let r = lemma_bound(n, q, m)?;
        // strict: ties keep the smaller m
        if r.bound > best.bound {
            best = r;
        }
    }
    Ok(best)
}

/// One of the two fixed choices of `m` together with its target `c0·(c1·q)^n`.
#[derive(Debug, Clone, Serialize)]
pub struct PresetReport {
    pub label: &'static str,
    pub report: BoundReport,
    #[serde(serialize_with = "ser_display")]
    pub target: BigRational,
    pub holds: bool,
}

/// `m = n`: `q^n / C(2n-1, n) ≥ (q/4)^n`.
pub fn preset_quarter(n: usize, q: u32) -> Result<PresetReport> {
    let report = lemma_bound(n, q, n as u32)?;
    let target = BigRational::new(
        BigInt::from(q).pow(n as u32),
        BigInt::from(4u32).pow(n as u32),
    );
    let holds = report.bound >= target;
    Ok(PresetReport {
        label: "c0=1, c1=1/4 (m=n)",
        report,
        target,
        holds,
    })
}

/// `m = ⌈n/2⌉`: bound `≥ ½·(q/2.6)^n`, with `q/2.6 = 5q/13`.
pub fn preset_half(n: usize, q: u32) -> Result<PresetReport> {
    let m = n.div_ceil(2) as u32;
    let report = lemma_bound(n, q, m)?;
    let target = BigRational::new(
        BigInt::from(5 * q).pow(n as u32),
        BigInt::from(2u32) * BigInt::from(13u32).pow(n as u32),
    );
    let holds = report.bound >= target;
    Ok(PresetReport {
        label: "c0=1/2, c1=1/2.6 (m=ceil(n/2))",
        report,
        target,
        holds,
    })
}

/// Eulerian numbers `A(n, 0..n)`: permutations of `n` with `k` descents.
pub fn eulerian(n: usize) -> Result<Vec<BigUint>> {
    if !(1..=64).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "eulerian numbers supported for 1 <= n <= 64, got {n}"
        )));
    }
    let mut row = vec![BigUint::one()];
    for size in 2..=n {
        let mut next = vec![BigUint::zero(); size];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += &row[k] * BigUint::from(k + 1);
            }
            if k >= 1 {
                *slot += &row[k - 1] * BigUint::from(size - k);
            }
        }
        row = next;
    }
    Ok(row)
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `Vol{x ∈ [0,1]^n : Σx ≤ t}` for rational `t`, via
/// `(1/n!)·Σ_{j ≤ ⌊t⌋} (-1)^j C(n,j) (t-j)^n`.
pub fn irwin_hall_cdf(n: usize, t: &BigRational) -> BigRational {
    if !t.is_positive() {
        return BigRational::zero();
    }
    if *t >= BigRational::from_integer(BigInt::from(n)) {
        return BigRational::one();
    }
    let (a, b) = (t.numer(), t.denom());
    let floor = t.floor().to_integer().to_u64().expect("t < n");
    let mut acc = BigInt::zero();
    for j in 0..=floor {
        let base = a - BigInt::from(j) * b;
        let term = BigInt::from(binomial(n as u64, j)) * base.pow(n as u32);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let den = b.pow(n as u32) * BigInt::from(factorial(n));
    BigRational::new(acc, den)
}

/// The same volume at an integer threshold `k`, as `(1/n!)·Σ_{j<k} A(n,j)`.
pub fn region_volume_eulerian(n: usize, k: usize) -> Result<BigRational> {
    let a = eulerian(n)?;
    let sum: BigUint = a.iter().take(k).sum();
    Ok(ratio(&sum, &factorial(n)))
}

fn check_alpha(alpha: f64) -> Result<BigRational> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    BigRational::from_float(alpha)
        .ok_or_else(|| Error::InvalidArgument(format!("alpha {alpha} is not finite")))
}

/// Exact `Vol{x ∈ [0,1]^n : Σx ≤ αn}`, with `α` taken as the exact value of
/// the given float.
pub fn region_volume_exact(n: usize, alpha: f64) -> Result<BigRational> {
    let a = check_alpha(alpha)?;
    Ok(irwin_hall_cdf(n, &(a * BigInt::from(n))))
}

/// [`region_volume_exact`] rounded to `f64`.
pub fn region_volume(n: usize, alpha: f64) -> Result<f64> {
    Ok(rational_to_f64(&region_volume_exact(n, alpha)?))
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("fits in 64 bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational without overflowing `f64`.
pub fn ln_rational(r: &BigRational) -> f64 {
    let num = r.numer().magnitude();
    if num.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_biguint(num) - ln_biguint(r.denom().magnitude())
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let ln = ln_rational(&r.abs());
    let v = ln.exp();
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// Binary entropy `H(x) = -x·log2 x - (1-x)·log2(1-x)`, `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `2^{(1+α)·H(1/(1+α))}`: the growth rate of `C((1+α)n, n)^{1/n}`.
pub fn entropy_factor(alpha: f64) -> f64 {
    2f64.powf((1.0 + alpha) * binary_entropy(1.0 / (1.0 + alpha)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VolumeMethod {
    EulerianExact,
    MonteCarlo,
}

/// One finite-`n` probe of the volume.
#[derive(Debug, Clone, Serialize)]
pub struct LadderRung {
    pub n: usize,
    /// `ln Vol_n`.
    pub ln_volume: f64,
    /// `Vol_n^{1/n}`.
    pub tau: f64,
    pub c_alpha: f64,
}

/// Estimate of `τ_α` and `c_α = τ_α / 2^{(1+α)H(1/(1+α))}`.
///
/// `probe_tau` is `Vol_{n_probe}^{1/n_probe}`. It converges slowly
/// (`ln Vol_n / n = ln τ + β·ln(n)/n + γ/n + …`), so `tau` fits those three
/// terms through the rungs `n_probe/4, n_probe/2, n_probe` and reports the
/// constant term. `c_alpha` uses the fitted `tau`.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticReport {
    pub alpha: f64,
    pub n_probe: usize,
    pub method: VolumeMethod,
    pub probe_tau: f64,
    pub probe_c_alpha: f64,
    pub tau: f64,
    pub entropy_factor: f64,
    pub c_alpha: f64,
    /// Fitted coefficient of `ln(n)/n`.
    pub log_correction: f64,
    pub ladder: Vec<LadderRung>,
    /// Whether the probe `c_alpha` is non-decreasing along the ladder.
    pub monotone: bool,
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(a);
    if d.abs() < 1e-300 {
        return None;
    }
    let mut out = [0.0; 3];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut m = a;
        for row in 0..3 {
            m[row][col] = b[row];
        }
        *slot = det(m) / d;
    }
    Some(out)
}

fn ladder_sizes(n_probe: usize) -> [usize; 3] {
    [n_probe / 4, n_probe / 2, n_probe]
}

fn assemble(
    alpha: f64,
    n_probe: usize,
    method: VolumeMethod,
    ln_volumes: [(usize, f64); 3],
) -> AsymptoticReport {
    let factor = entropy_factor(alpha);
    let ladder: Vec<LadderRung> = ln_volumes
        .iter()
        .map(|&(n, lv)| {
            let tau = (lv / n as f64).exp();
            LadderRung {
                n,
                ln_volume: lv,
                tau,
                c_alpha: tau / factor,
            }
        })
        .collect();
    let rows = ln_volumes.map(|(n, _)| {
        let nf = n as f64;
        [1.0, nf.ln() / nf, 1.0 / nf]
    });
    let rhs = ln_volumes.map(|(n, lv)| lv / n as f64);
    let probe = ladder.last().expect("three rungs");
    let (tau, log_correction) = match solve3(rows, rhs) {
        Some([ln_tau, beta, _]) if ln_tau.is_finite() => (ln_tau.exp().min(1.0), beta),
        _ => (probe.tau, 0.0),
    };
    let monotone = ladder
        .windows(2)
        .all(|w| w[1].c_alpha >= w[0].c_alpha - 1e-15);
    AsymptoticReport {
        alpha,
        n_probe,
        method,
        probe_tau: probe.tau,
        probe_c_alpha: probe.c_alpha,
        tau,
        entropy_factor: factor,
        c_alpha: tau / factor,
        log_correction,
        monotone,
        ladder,
    }
}

/// `c_α` from exact Irwin–Hall volumes on the ladder `n_probe/4, n_probe/2, n_probe`.
pub fn c_alpha(alpha: f64, n_probe: usize) -> Result<AsymptoticReport> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    if n_probe < 8 {
        return Err(Error::InvalidArgument(format!(
            "n-probe must be at least 8, got {n_probe}"
        )));
    }
    let sizes = ladder_sizes(n_probe);
    let mut lv = [(0usize, 0.0f64); 3];
    for (slot, &n) in lv.iter_mut().zip(&sizes) {
        *slot = (n, ln_rational(&region_volume_exact(n, alpha)?));
    }
    Ok(assemble(alpha, n_probe, VolumeMethod::EulerianExact, lv))
}

/// Monte Carlo estimate of the volume: `(mean, standard error)`.
pub fn region_volume_monte_carlo(n: usize, alpha: f64, samples: u64, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let threshold = alpha * n as f64;
    let hits = (0..samples)
        .filter(|_| (0..n).map(|_| rng.gen::<f64>()).sum::<f64>() <= threshold)
        .count() as f64;
    let p = hits / samples as f64;
    (p, (p * (1.0 - p) / samples as f64).sqrt())
}

/// [`c_alpha`] with Monte Carlo volumes at each rung. Rungs that see no hit
/// fall back to the probe-only estimate.
pub fn c_alpha_monte_carlo(
    alpha: f64,
    n_probe: usize,
    samples: u64,
    seed: u64,
) -> Result<AsymptoticReport> {
    check_alpha(alpha)?;
    if n_probe < 8 || samples == 0 {
        return Err(Error::InvalidArgument(
            "n-probe must be at least 8 and samples positive".into(),
        ));
    }
    let sizes = ladder_sizes(n_probe);
    let mut lv = [(0usize, 0.0f64); 3];
    for (i, (slot, &n)) in lv.iter_mut().zip(&sizes).enumerate() {
        let (p, _) = region_volume_monte_carlo(n, alpha, samples, seed.wrapping_add(i as u64));
        *slot = (n, p.ln());
    }
    Ok(assemble(alpha, n_probe, VolumeMethod::MonteCarlo, lv))
}

/// `gcd`-reduced display of a rational as `a/b`, or `a` when integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let g = r.numer().gcd(r.denom());
        format!("{}/{}", r.numer() / &g, r.denom() / &g)
    }
}
