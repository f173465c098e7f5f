//! Closed-form bound quantities and the density optimization.

use crate::error::{Error, Result};

/// `p = (n − 2k) / (n − (k+1)/2 − b/(2n−k−2) − λ)`.
pub fn p_value(n: usize, k: usize, b: usize, lambda: f64) -> Result<f64> {
    if 2 * k > n {
        return Err(Error::DomainError("n − 2k < 0"));
    }
    let (nf, kf) = (n as f64, k as f64);
    let inner = 2.0 * nf - kf - 2.0;
    if inner <= 0.0 {
        return Err(Error::NonpositiveDenominator("2n − k − 2"));
    }
    let denom = nf - (kf + 1.0) / 2.0 - b as f64 / inner - lambda;
    if denom <= 0.0 {
        return Err(Error::NonpositiveDenominator("p"));
    }
    Ok((nf - 2.0 * kf) / denom)
}

/// `q = 1 − 2n/λ²`.
pub fn q_value(n: usize, lambda: f64) -> f64 {
    1.0 - 2.0 * n as f64 / (lambda * lambda)
}

/// The expected missing-edge bound for given `p` and `q`, with real-valued
/// size parameters so that asymptotic substitutions can be evaluated.
pub fn j_rhs(n: f64, k: f64, a: f64, b: f64, p: f64, q: f64) -> f64 {
    let d2 = 2.0 * n - k - 2.0;
    let d4 = 2.0 * n - k - 4.0;
    let quad = b * (k - 1.0).powi(2) * p * p / (4.0 * d2 * d4);
    let triple = a * (k - 1.0) * p / (2.0 * d2);
    (quad + triple) / q
}

/// Upper bound on the expected number of missing edges of the minor.
pub fn bound_j(n: usize, k: usize, a: usize, b: usize, lambda: f64) -> Result<f64> {
    if q_value(n, lambda) <= 0.0 {
        return Err(Error::InvalidHypotheses("λ² ≤ 2n"));
    }
    if 2 * n <= k + 4 {
        return Err(Error::InvalidHypotheses("2n − k − 4 ≤ 0"));
    }
    let p = p_value(n, k, b, lambda).map_err(|_| Error::InvalidHypotheses("p undefined"))?;
    Ok(j_rhs(
        n as f64,
        k as f64,
        a as f64,
        b as f64,
        p,
        q_value(n, lambda),
    ))
}

/// Limiting missing-edge fraction as a function of `z = k/(2n)` and
/// `ζ = a/(4n²)`.
pub fn g_asymptotic(z: f64, zeta: f64) -> Result<f64> {
    if !(0.0..=0.25).contains(&z) {
        return Err(Error::DomainError("z outside [0, 1/4]"));
    }
    if !(0.0..=z * z).contains(&zeta) {
        return Err(Error::DomainError("ζ outside [0, z²]"));
    }
    let denom = 1.0 + zeta - 3.0 * z + 2.0 * z * z;
    if denom <= 0.0 {
        return Err(Error::DomainError("nonpositive denominator"));
    }
    let poly = z * z * (1.0 - 5.0 * z + 4.0 * z * z)
        + zeta * (4.0 - 13.0 * z + 12.0 * z * z)
        + 4.0 * zeta * zeta;
    Ok(z * (1.0 - 4.0 * z) * poly / (denom * denom))
}

/// `f(z) = z³(5 − 38z + 92z² − 80z³) / (1 − 3z + 3z²)²` on `[0, 1/4]`.
pub fn f_univariate(z: f64) -> Result<f64> {
    if !(0.0..=0.25).contains(&z) {
        return Err(Error::DomainError("z outside [0, 1/4]"));
    }
    let denom = 1.0 - 3.0 * z + 3.0 * z * z;
    Ok(z.powi(3) * (5.0 - 38.0 * z + 92.0 * z * z - 80.0 * z.powi(3)) / (denom * denom))
}

fn f_unchecked(z: f64) -> f64 {
    f_univariate(z).expect("z in domain")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaResult {
    pub z_star: f64,
    pub max_f: f64,
    pub gamma: f64,
}

pub const GAMMA_GRID_POINTS: usize = 10_000;
pub const DEFAULT_GAMMA_TOLERANCE: f64 = 1e-7;

/// Maximizes `f` over `[0, 1/4]`: a uniform grid locates the best cell,
/// golden-section search refines inside its neighbours.
pub fn gamma_optimize(tolerance: f64) -> GammaResult {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let step = 0.25 / GAMMA_GRID_POINTS as f64;
    let best = (0..=GAMMA_GRID_POINTS)
        .map(|i| (i, f_unchecked(i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc })
        .0;
    let mut lo = best.saturating_sub(1) as f64 * step;
    let mut hi = ((best + 1).min(GAMMA_GRID_POINTS)) as f64 * step;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f_unchecked(x1), f_unchecked(x2));
    while hi - lo > tolerance {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f_unchecked(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f_unchecked(x1);
        }
    }
    let z_star = (lo + hi) / 2.0;
    let max_f = f_unchecked(z_star);
    GammaResult {
        z_star,
        max_f,
        gamma: 1.0 - max_f,
    }
}

/// Checks that `g(z, ·)` is nondecreasing on `[0, z²]` over a grid of
/// `z ∈ [0, 1/4]`, up to `1e−12`.
pub fn zeta_monotonicity_check(grid_steps: usize) -> bool {
    zeta_monotonicity_check_with(grid_steps, |z, zeta| {
        g_asymptotic(z, zeta).expect("grid point in domain")
    })
}

/// As [`zeta_monotonicity_check`] for an arbitrary function. Every pair
/// `ζ1 < ζ2` on the grid is covered by comparing against the running maximum.
pub fn zeta_monotonicity_check_with<F: Fn(f64, f64) -> f64>(grid_steps: usize, g: F) -> bool {
    assert!(grid_steps >= 2, "grid_steps must be at least 2");
    (0..=grid_steps).all(|i| {
        let z = 0.25 * i as f64 / grid_steps as f64;
        let mut running_max = f64::NEG_INFINITY;
        (0..=grid_steps).all(|j| {
            let zeta = z * z * (j as f64 / grid_steps as f64);
            let v = g(z, zeta);
            let ok = running_max <= v + 1e-12;
            running_max = running_max.max(v);
            ok
        })
    })
}

/// The missing-edge bound expressed through `z` and `ζ`, divided by
/// `C(n, 2)`, with `b`, `p` at their extremal substitutions and
/// `λ = n^{2/3}`. Tends to `g(z, ζ)` as `n` grows.
pub fn substituted_fraction(n: f64, z: f64, zeta: f64) -> f64 {
    let k = 2.0 * n * z;
    let a = 4.0 * n * n * zeta;
    let b = 2.0 * n * n * ((1.0 - z) * z - zeta);
    let p = (1.0 - 4.0 * z) / (1.0 - 2.0 * z + zeta / (1.0 - z));
    let lambda = n.powf(2.0 / 3.0);
    let q = 1.0 - 2.0 * n / (lambda * lambda);
    j_rhs(n, k, a, b, p, q) / (n * (n - 1.0) / 2.0)
}

/// Every bound quantity for one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub lambda: f64,
    pub p: Option<f64>,
    pub q: f64,
    pub rhs_j: Option<f64>,
    pub z: f64,
    pub zeta: f64,
    pub rhs_j2_fraction: Option<f64>,
}

impl BoundReport {
    pub fn new(n: usize, k: usize, a: usize, b: usize, lambda: f64) -> Self {
        let nf = n as f64;
        let z = k as f64 / (2.0 * nf);
        let zeta = a as f64 / (4.0 * nf * nf);
        BoundReport {
            n,
            k,
            a,
            b,
            lambda,
            p: p_value(n, k, b, lambda).ok(),
            q: q_value(n, lambda),
            rhs_j: bound_j(n, k, a, b, lambda).ok(),
            z,
            zeta,
            rhs_j2_fraction: g_asymptotic(z, zeta).ok(),
        }
    }
}
