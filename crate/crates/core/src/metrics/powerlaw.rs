//! Maximum-likelihood power-law exponents.
//!
//! Integer data (degrees) use the exact discrete likelihood
//! `P(k) = k^-γ / ζ(γ, k_min)`, maximized numerically with the Hurwitz zeta
//! function evaluated by Euler-Maclaurin summation. Real-valued data
//! (strengths, edge weights) use the closed-form continuous estimator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fewest tail samples accepted by a fit.
pub const MIN_TAIL_SAMPLES: usize = 50;

const GAMMA_LO: f64 = 1.000_001;
const GAMMA_HI: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    DiscreteMle,
    ContinuousMle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub std_err: f64,
    pub x_min: f64,
    /// Largest sample in the fitted tail.
    pub x_max: f64,
    pub tail_samples: usize,
    pub method: FitMethod,
}

// B_{2j} / (2j)! for j = 1..=8
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
];

/// Hurwitz zeta `ζ(s, q) = Σ_{k≥0} (q + k)^-s` for `s > 1`, `q > 0`.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    debug_assert!(s > 1.0 && q > 0.0);
    const DIRECT: usize = 12;
    let mut sum = 0.0;
    for k in 0..DIRECT {
        sum += (q + k as f64).powf(-s);
    }
    let a = q + DIRECT as f64;
    sum += a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    // Σ B_2j/(2j)! · s(s+1)...(s+2j-2) · a^(-s-2j+1)
    let mut rising = s;
    let mut power = a.powf(-s - 1.0);
    for (j, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum += coef * rising * power;
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power /= a * a;
    }
    sum
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > 1e-10 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Discrete MLE over samples `>= x_min`.
pub fn fit_discrete(samples: &[u64], x_min: u64) -> Result<PowerLawFit> {
    let x_min = x_min.max(1);
    let tail: Vec<u64> = samples.iter().copied().filter(|&k| k >= x_min).collect();
    if tail.len() < MIN_TAIL_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_TAIL_SAMPLES, have: tail.len() });
    }
    let n = tail.len() as f64;
    let sum_ln: f64 = tail.iter().map(|&k| (k as f64).ln()).sum();
    let q = x_min as f64;
    let loglik = |g: f64| -g * sum_ln - n * hurwitz_zeta(g, q).ln();
    let gamma = golden_max(loglik, GAMMA_LO, GAMMA_HI);
    // Observed information: n · d²/dγ² ln ζ(γ, x_min), by central differences.
    let h = 1e-4;
    let lz = |g: f64| hurwitz_zeta(g, q).ln();
    let curvature = (lz(gamma + h) - 2.0 * lz(gamma) + lz(gamma - h)) / (h * h);
    let std_err = if curvature > 0.0 { 1.0 / (n * curvature).sqrt() } else { f64::NAN };
    Ok(PowerLawFit {
        gamma,
        std_err,
        x_min: q,
        x_max: tail.iter().copied().max().unwrap_or(x_min) as f64,
        tail_samples: tail.len(),
        method: FitMethod::DiscreteMle,
    })
}

/// Continuous MLE `γ = 1 + n / Σ ln(x / x_min)` over samples `>= x_min`.
pub fn fit_continuous(samples: &[f64], x_min: f64) -> Result<PowerLawFit> {
    if !(x_min > 0.0) {
        return Err(Error::InvalidParams(format!("x_min must be positive, got {x_min}")));
    }
    let tail: Vec<f64> = samples.iter().copied().filter(|&x| x >= x_min).collect();
    if tail.len() < MIN_TAIL_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_TAIL_SAMPLES, have: tail.len() });
    }
    let n = tail.len() as f64;
    let sum: f64 = tail.iter().map(|&x| (x / x_min).ln()).sum();
    if !(sum > 0.0) {
        return Err(Error::Format("all tail samples equal x_min; exponent undefined".into()));
    }
    let gamma = 1.0 + n / sum;
    Ok(PowerLawFit {
        gamma,
        std_err: (gamma - 1.0) / n.sqrt(),
        x_min,
        x_max: tail.iter().copied().fold(x_min, f64::max),
        tail_samples: tail.len(),
        method: FitMethod::ContinuousMle,
    })
}

/// Kolmogorov-Smirnov distance between the tail samples (sorted ascending)
/// and the fitted complementary CDF `ccdf`.
fn ks_distance(sorted_tail: &[f64], ccdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted_tail.len() as f64;
    let mut worst: f64 = 0.0;
    let mut i = 0;
    while i < sorted_tail.len() {
        let x = sorted_tail[i];
        let mut j = i;
        while j < sorted_tail.len() && sorted_tail[j] == x {
            j += 1;
        }
        // empirical P(X >= x) just before and just after the tie block
        let above = (sorted_tail.len() - i) as f64 / n;
        let beyond = (sorted_tail.len() - j) as f64 / n;
        let model = ccdf(x);
        worst = worst.max((above - model).abs());
        if j < sorted_tail.len() {
            let next = ccdf(sorted_tail[j]);
            worst = worst.max((beyond - next).abs());
        }
        i = j;
    }
    worst
}

/// Fit with `x_min` chosen to minimize the Kolmogorov-Smirnov distance
/// between the tail and the fitted law. Candidates are up to
/// `max_candidates` distinct sample values, evenly spaced in rank, that
/// leave at least [`MIN_TAIL_SAMPLES`] samples in the tail. Returns the
/// fit and its distance.
pub fn fit_scanning_x_min(samples: &[f64], discrete: bool, max_candidates: usize) -> Result<(PowerLawFit, f64)> {
    let mut sorted: Vec<f64> = samples.iter().copied().filter(|&x| x > 0.0).collect();
    sorted.sort_by(f64::total_cmp);
    if sorted.len() < MIN_TAIL_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_TAIL_SAMPLES, have: sorted.len() });
    }
    let mut distinct: Vec<usize> = Vec::new();
    for (i, &x) in sorted[..=sorted.len() - MIN_TAIL_SAMPLES].iter().enumerate() {
        if i == 0 || sorted[i - 1] != x {
            distinct.push(i);
        }
    }
    let stride = distinct.len().div_ceil(max_candidates.max(1));
    let mut best: Option<(PowerLawFit, f64)> = None;
    for &start in distinct.iter().step_by(stride) {
        let tail = &sorted[start..];
        let x_min = tail[0];
        let fit = if discrete {
            let ints: Vec<u64> = tail.iter().map(|&x| x.round() as u64).collect();
            fit_discrete(&ints, x_min.round() as u64)
        } else {
            fit_continuous(tail, x_min)
        };
        let Ok(fit) = fit else { continue };
        let d = if discrete {
            let norm = hurwitz_zeta(fit.gamma, x_min);
            ks_distance(tail, |x| hurwitz_zeta(fit.gamma, x) / norm)
        } else {
            ks_distance(tail, |x| (x / x_min).powf(1.0 - fit.gamma))
        };
        if best.as_ref().is_none_or(|(_, bd)| d < *bd) {
            best = Some((fit, d));
        }
    }
    best.ok_or(Error::InsufficientSamples { needed: MIN_TAIL_SAMPLES, have: 0 })
}

/// Exponent from an ordinary least-squares line through `(ln x, ln p)`
/// points with `x` in `[x_min, ∞)` and `p > 0`; `None` with fewer than two
/// usable points.
pub fn least_squares_slope(points: &[(f64, f64)], x_min: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, p)| x >= x_min && x > 0.0 && p > 0.0)
        .map(|&(x, p)| (x.ln(), p.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| -sxy / sxx)
}
