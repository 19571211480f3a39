//! Quadrature engines.
//!
//! * [`circle_integral`]: equal-weight rule on `{j/N}`, spectrally accurate for
//!   smooth periodic integrands.
//! * [`RadialRule`]: geometric panels `[1 − 2^{-j}, 1 − 2^{-j-1}]` with
//!   Gauss–Legendre nodes, closed by a Gauss–Jacobi panel that absorbs the
//!   `(1 − r)^α` endpoint weight exactly.
//! * [`radial_sup`]: graded scan plus golden-section refinement; the result is
//!   always a value actually attained, hence a lower bound of the supremum.
//! * [`window_integral`]: polar product rule over a Carleson window, optionally
//!   graded toward a focus point where the integrand concentrates.
//! * [`sphere3_mc`]: seeded Monte-Carlo on the unit sphere of ℂ².

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::disc::CarlesonWindow;
use crate::error::{check_finite, Error, Result};

/// Discretization parameters shared by all engines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Circle nodes; a power of two, at least 16.
    pub n_circle: usize,
    /// Geometric radial panels.
    pub l_radial: usize,
    /// Gauss nodes per panel.
    pub k_panel: usize,
    /// Monte-Carlo samples.
    pub n_mc: usize,
    pub seed: u64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            n_circle: 4096,
            l_radial: 20,
            k_panel: 16,
            n_mc: 1_000_000,
            seed: 0x5eed,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_circle < 16 || !self.n_circle.is_power_of_two() {
            return Err(Error::param(format!(
                "n_circle = {} must be a power of two ≥ 16",
                self.n_circle
            )));
        }
        if !(4..=50).contains(&self.l_radial) {
            return Err(Error::param(format!("l_radial = {} outside [4, 50]", self.l_radial)));
        }
        if !(4..=64).contains(&self.k_panel) {
            return Err(Error::param(format!("k_panel = {} outside [4, 64]", self.k_panel)));
        }
        Ok(())
    }

    /// The same configuration with circle, radial and panel resolution doubled.
    pub fn refined(&self) -> Self {
        QuadConfig {
            n_circle: self.n_circle * 2,
            l_radial: (self.l_radial * 2).min(50),
            k_panel: (self.k_panel * 2).min(64),
            ..*self
        }
    }
}

/// Values that can be summed by the circle rule.
pub trait Summable: Copy + Default + std::ops::AddAssign + std::ops::Mul<f64, Output = Self> {
    fn is_finite_value(&self) -> bool;
}

impl Summable for f64 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Summable for Complex64 {
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// `(1/N) Σ g(j/N)` with `N = cfg.n_circle`.
pub fn circle_integral<T: Summable>(g: impl FnMut(f64) -> T, cfg: &QuadConfig) -> Result<T> {
    cfg.validate()?;
    circle_integral_n(g, cfg.n_circle)
}

/// Equal-weight circle rule on `n` nodes.
pub fn circle_integral_n<T: Summable>(mut g: impl FnMut(f64) -> T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::param("circle rule needs at least one node"));
    }
    let step = 1.0 / n as f64;
    let mut acc = T::default();
    for j in 0..n {
        let t = j as f64 * step;
        let v = g(t);
        if !v.is_finite_value() {
            return Err(Error::eval(format!("t = {t}"), "non-finite circle node value"));
        }
        acc += v;
    }
    Ok(acc * step)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "number of points must be positive");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // n P_n = (2n-1) x P_{n-1} - (n-1) P_{n-2}
            let (mut p1, mut p2) = (1.0, 0.0);
            for k in 1..=n {
                let k = k as f64;
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Gauss–Jacobi nodes and weights on `[-1, 1]` for the weight `(1 − x)^α`.
///
/// Newton iteration on the three-term recurrence with the classical
/// asymptotic starting guesses; needs `n ≥ 4` and `α > −1`.
#[allow(clippy::approx_constant)]
pub fn gauss_jacobi(n: usize, alpha: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 4 {
        return Err(Error::param(format!("Gauss–Jacobi rule needs n ≥ 4, got {n}")));
    }
    if alpha <= -1.0 || !alpha.is_finite() {
        return Err(Error::Divergence(format!(
            "weight (1-r)^{alpha} is not integrable at r = 1 (needs alpha > -1)"
        )));
    }
    let alf = alpha;
    let bet = 0.0;
    let nf = n as f64;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z = 0.0;
    for i in 1..=n {
        if i == 1 {
            let an = alf / nf;
            let bn = bet / nf;
            let r1 = (1.0 + alf) * (2.78 / (4.0 + nf * nf) + 0.768 * an / nf);
            let r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
            z = 1.0 - r1 / r2;
        } else if i == 2 {
            let r1 = (4.1 + alf) / ((1.0 + alf) * (1.0 + 0.156 * alf));
            let r2 = 1.0 + 0.06 * (nf - 8.0) * (1.0 + 0.12 * alf) / nf;
            let r3 = 1.0 + 0.012 * bet * (1.0 + 0.25 * alf.abs()) / nf;
            z -= (1.0 - z) * r1 * r2 * r3;
        } else if i == 3 {
            let r1 = (1.67 + 0.28 * alf) / (1.0 + 0.37 * alf);
            let r2 = 1.0 + 0.22 * (nf - 8.0) / nf;
            let r3 = 1.0 + 8.0 * bet / ((6.28 + bet) * nf * nf);
            z -= (x[0] - z) * r1 * r2 * r3;
        } else if i == n - 1 {
            let r1 = (1.0 + 0.235 * bet) / (0.766 + 0.119 * bet);
            let r2 = 1.0 / (1.0 + 0.639 * (nf - 4.0) / (1.0 + 0.71 * (nf - 4.0)));
            let r3 = 1.0 / (1.0 + 20.0 * alf / ((7.5 + alf) * nf * nf));
            z += (z - x[n - 4]) * r1 * r2 * r3;
        } else if i == n {
            let r1 = (1.0 + 0.37 * bet) / (1.67 + 0.28 * bet);
            let r2 = 1.0 / (1.0 + 0.22 * (nf - 8.0) / nf);
            let r3 = 1.0 / (1.0 + 8.0 * alf / ((6.28 + alf) * nf * nf));
            z += (z - x[n - 3]) * r1 * r2 * r3;
        } else {
            z = 3.0 * x[i - 2] - 3.0 * x[i - 3] + x[i - 4];
        }
        let ab = alf + bet;
        let (mut p1, mut p2, mut pp, mut temp);
        let mut iter = 0;
        loop {
            temp = 2.0 + ab;
            p1 = (alf - bet + temp * z) / 2.0;
            p2 = 1.0;
            for j in 2..=n {
                let jf = j as f64;
                let p3 = p2;
                p2 = p1;
                temp = 2.0 * jf + ab;
                let a = 2.0 * jf * (jf + ab) * (temp - 2.0);
                let b = (temp - 1.0) * (alf * alf - bet * bet + temp * (temp - 2.0) * z);
                let c = 2.0 * (jf - 1.0 + alf) * (jf - 1.0 + bet) * temp;
                p1 = (b * p2 - c * p3) / a;
            }
            pp = (nf * (alf - bet - temp * z) * p1 + 2.0 * (nf + alf) * (nf + bet) * p2)
                / (temp * (1.0 - z * z));
            let z1 = z;
            z = z1 - p1 / pp;
            iter += 1;
            if (z - z1).abs() <= 1e-15 || iter > 100 {
                break;
            }
        }
        x[i - 1] = z;
        // Γ-ratio reduces to 1/((n+α) n) for β = 0
        w[i - 1] = temp * 2f64.powf(ab) / ((nf + alf) * nf * pp * p2);
    }
    x.reverse();
    w.reverse();
    if x.iter().chain(&w).any(|v| !v.is_finite()) || x.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::eval(
            format!("Gauss–Jacobi n = {n}, alpha = {alpha}"),
            "node computation did not converge",
        ));
    }
    Ok((x, w))
}

/// Nodes and weights for `∫_0^{1} g(r) (1 − r)^α dr` (or a truncation of it).
#[derive(Debug, Clone)]
pub struct RadialRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl RadialRule {
    /// Full rule on `[0, 1)`: `L` geometric panels plus a Gauss–Jacobi closing panel.
    pub fn new(alpha: f64, cfg: &QuadConfig) -> Result<Self> {
        cfg.validate()?;
        if alpha <= -1.0 || !alpha.is_finite() {
            return Err(Error::Divergence(format!(
                "radial weight (1-r)^{alpha} diverges at r = 1 (needs alpha > -1)"
            )));
        }
        let (gx, gw) = gauss_legendre(cfg.k_panel);
        let mut rule = RadialRule {
            nodes: Vec::with_capacity((cfg.l_radial + 1) * cfg.k_panel),
            weights: Vec::with_capacity((cfg.l_radial + 1) * cfg.k_panel),
        };
        for j in 0..cfg.l_radial {
            let lo = 1.0 - 0.5f64.powi(j as i32);
            let hi = 1.0 - 0.5f64.powi(j as i32 + 1);
            rule.push_legendre_panel(lo, hi, alpha, &gx, &gw);
        }
        let eps = 0.5f64.powi(cfg.l_radial as i32);
        let (jx, jw) = gauss_jacobi(cfg.k_panel, alpha)?;
        let scale = (eps / 2.0).powf(alpha + 1.0);
        for (x, w) in jx.iter().zip(&jw) {
            rule.nodes.push(1.0 - eps * (1.0 - x) / 2.0);
            rule.weights.push(w * scale);
        }
        Ok(rule)
    }

    /// Rule on `[0, r_max]` with `r_max < 1`; panels are the geometric panels
    /// clipped to the range, continued past `L` when `r_max` lies beyond them.
    pub fn truncated(alpha: f64, r_max: f64, cfg: &QuadConfig) -> Result<Self> {
        cfg.validate()?;
        if !(r_max < 1.0) || r_max.is_nan() {
            return Err(Error::param(format!(
                "r_max = {r_max} must be < 1 (only partial integrals are computed)"
            )));
        }
        if alpha <= -1.0 {
            return Err(Error::Divergence(format!("alpha = {alpha} ≤ -1")));
        }
        let (gx, gw) = gauss_legendre(cfg.k_panel);
        let mut rule = RadialRule {
            nodes: Vec::new(),
            weights: Vec::new(),
        };
        if r_max <= 0.0 {
            return Ok(rule);
        }
        let mut j = 0i32;
        loop {
            let lo = 1.0 - 0.5f64.powi(j);
            if lo >= r_max || j > 1100 {
                break;
            }
            let hi = (1.0 - 0.5f64.powi(j + 1)).min(r_max);
            rule.push_legendre_panel(lo, hi, alpha, &gx, &gw);
            j += 1;
        }
        Ok(rule)
    }

    fn push_legendre_panel(&mut self, lo: f64, hi: f64, alpha: f64, gx: &[f64], gw: &[f64]) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in gx.iter().zip(gw) {
            let r = mid + half * x;
            self.nodes.push(r);
            self.weights.push(w * half * (1.0 - r).powf(alpha));
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i g(r_i)`, failing on the first non-finite node value.
    pub fn integrate(&self, mut g: impl FnMut(f64) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&r, &w) in self.nodes.iter().zip(&self.weights) {
            let v = g(r);
            check_finite(v, || format!("r = {r}"))?;
            acc += w * v;
        }
        Ok(acc)
    }

    /// Like [`RadialRule::integrate`] for fallible integrands.
    pub fn try_integrate(&self, mut g: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (&r, &w) in self.nodes.iter().zip(&self.weights) {
            let v = g(r)?;
            check_finite(v, || format!("r = {r}"))?;
            acc += w * v;
        }
        Ok(acc)
    }
}

/// `∫_0^1 g(r) (1 − r)^α dr`; the weight is applied here, `g` is the smooth part.
pub fn radial_integral(g: impl FnMut(f64) -> f64, alpha: f64, cfg: &QuadConfig) -> Result<f64> {
    RadialRule::new(alpha, cfg)?.integrate(g)
}

/// A supremum located by [`radial_sup`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupValue {
    pub value: f64,
    pub argmax: f64,
}

/// Golden-section maximization of `g` on `[lo, hi]`; returns the best point seen.
pub(crate) fn golden_max(
    mut g: impl FnMut(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
) -> Result<SupValue> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut best = SupValue {
        value: f64::NEG_INFINITY,
        argmax: lo,
    };
    let mut probe = |x: f64, best: &mut SupValue| -> Result<f64> {
        let v = g(x)?;
        check_finite(v, || format!("r = {x}"))?;
        if v > best.value {
            *best = SupValue { value: v, argmax: x };
        }
        Ok(v)
    };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = probe(x1, &mut best)?;
    let mut f2 = probe(x2, &mut best)?;
    for _ in 0..120 {
        if hi - lo <= 1e-16 * (1.0 + hi.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = probe(x2, &mut best)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = probe(x1, &mut best)?;
        }
    }
    Ok(best)
}

/// Graded radii `1 − 2^{-j/K}`, `j = 0..=L·K`.
pub fn graded_radii(cfg: &QuadConfig) -> Vec<f64> {
    let k = cfg.k_panel as f64;
    (0..=cfg.l_radial * cfg.k_panel)
        .map(|j| 1.0 - (-(j as f64) / k).exp2())
        .collect()
}

/// Supremum of `g` over `[0, 1)`: graded scan, then golden-section refinement
/// in the cells adjacent to the winning node. The returned value is attained
/// at `argmax`, so it never exceeds the true supremum.
pub fn radial_sup(mut g: impl FnMut(f64) -> f64, cfg: &QuadConfig) -> Result<SupValue> {
    try_radial_sup(|r| Ok(g(r)), cfg)
}

/// [`radial_sup`] for fallible integrands.
pub fn try_radial_sup(mut g: impl FnMut(f64) -> Result<f64>, cfg: &QuadConfig) -> Result<SupValue> {
    cfg.validate()?;
    let radii = graded_radii(cfg);
    let mut best = SupValue {
        value: f64::NEG_INFINITY,
        argmax: 0.0,
    };
    let mut best_idx = 0;
    for (i, &r) in radii.iter().enumerate() {
        let v = g(r)?;
        check_finite(v, || format!("r = {r}"))?;
        if v > best.value {
            best = SupValue { value: v, argmax: r };
            best_idx = i;
        }
    }
    let lo = radii[best_idx.saturating_sub(1)];
    let hi = radii[(best_idx + 1).min(radii.len() - 1)];
    if hi > lo {
        let refined = golden_max(&mut g, lo, hi)?;
        if refined.value > best.value {
            best = refined;
        }
    }
    Ok(best)
}

/// Angular breakpoints on `[a, b]` graded geometrically toward `target` with
/// innermost half-width `w`.
fn graded_breakpoints(a: f64, b: f64, target: f64, w: f64, out: &mut Vec<f64>) {
    out.clear();
    out.push(a);
    let mut d = w;
    let mut left = Vec::new();
    while target - d > a {
        left.push(target - d);
        d *= 2.0;
    }
    out.extend(left.iter().rev());
    if target > a && target < b {
        out.push(target);
    }
    let mut d = w;
    while target + d < b {
        out.push(target + d);
        d *= 2.0;
    }
    out.push(b);
}

/// `∫_{S_{I,h}} g(λ) dA(λ)` with `dA` the Lebesgue area (disc area π).
pub fn window_integral(
    g: impl FnMut(Complex64) -> f64,
    window: &CarlesonWindow,
    cfg: &QuadConfig,
) -> Result<f64> {
    window_integral_focused(g, window, None, cfg)
}

/// [`window_integral`] graded toward `focus`, a point near which `g` is sharply
/// peaked (its angular width at radius `r` is taken to be `1 − r|focus|`).
pub fn window_integral_focused(
    mut g: impl FnMut(Complex64) -> f64,
    window: &CarlesonWindow,
    focus: Option<Complex64>,
    cfg: &QuadConfig,
) -> Result<f64> {
    cfg.validate()?;
    let (gx, gw) = gauss_legendre(cfg.k_panel);
    let h = window.depth();
    let arc = window.arc;
    let a = arc.start();
    let b = a + arc.length();

    // radial panels graded toward r = 1 on [1-h, 1]
    let mut radial: Vec<(f64, f64)> = Vec::new();
    let push_panel = |lo: f64, hi: f64, radial: &mut Vec<(f64, f64)>| {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in gx.iter().zip(&gw) {
            radial.push((mid + half * x, w * half));
        }
    };
    for j in 0..cfg.l_radial {
        let lo = 1.0 - h * 0.5f64.powi(j as i32);
        let hi = 1.0 - h * 0.5f64.powi(j as i32 + 1);
        push_panel(lo, hi, &mut radial);
    }
    push_panel(1.0 - h * 0.5f64.powi(cfg.l_radial as i32), 1.0, &mut radial);

    let target = focus.map(|f| {
        let theta = f.arg() / TAU;
        let offset = (theta - a).rem_euclid(1.0);
        let t = if offset <= arc.length() {
            a + offset
        } else if offset - arc.length() < 1.0 - offset {
            b
        } else {
            a
        };
        (t, f.norm())
    });

    let uniform_panels = ((arc.length() * 64.0).ceil() as usize).max(4);
    let mut breaks = Vec::new();
    let mut total = 0.0;
    for &(r, wr) in &radial {
        match target {
            Some((t0, rho)) => {
                let w = ((1.0 - r * rho).max(0.0) / TAU).max(1e-15);
                graded_breakpoints(a, b, t0, w, &mut breaks);
            }
            None => {
                breaks.clear();
                let step = (b - a) / uniform_panels as f64;
                breaks.extend((0..=uniform_panels).map(|i| a + i as f64 * step));
            }
        }
        let mut ring = 0.0;
        for pair in breaks.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            if hi <= lo {
                continue;
            }
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (x, w) in gx.iter().zip(&gw) {
                let t = mid + half * x;
                let lambda = Complex64::from_polar(r, TAU * t);
                let v = g(lambda);
                check_finite(v, || format!("lambda = {lambda}"))?;
                ring += w * half * v;
            }
        }
        total += wr * r * TAU * ring;
    }
    Ok(total)
}

/// A Monte-Carlo estimate with its sample standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Uniform points on the unit sphere of ℂ², from normalized 4-d Gaussian vectors.
pub struct SphereSampler {
    rng: ChaCha8Rng,
}

impl SphereSampler {
    pub fn new(seed: u64) -> Self {
        SphereSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Iterator for SphereSampler {
    type Item = [Complex64; 2];

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut self.rng));
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-300 {
                return Some([
                    Complex64::new(v[0] / norm, v[1] / norm),
                    Complex64::new(v[2] / norm, v[3] / norm),
                ]);
            }
        }
    }
}

/// Mean of `g` against the probability-normalized surface measure of the
/// unit sphere in ℂ².
pub fn sphere3_mc(mut g: impl FnMut([Complex64; 2]) -> f64, cfg: &QuadConfig) -> Result<McEstimate> {
    if cfg.n_mc < 1000 {
        return Err(Error::param(format!("n_mc = {} < 1000", cfg.n_mc)));
    }
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, zeta) in SphereSampler::new(cfg.seed).take(cfg.n_mc).enumerate() {
        let v = g(zeta);
        check_finite(v, || format!("sphere sample {i}"))?;
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    let n = cfg.n_mc as f64;
    let variance = m2 / (n - 1.0);
    Ok(McEstimate {
        estimate: mean,
        std_error: (variance.max(0.0) / n).sqrt(),
        samples: cfg.n_mc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::Arc;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        // degree 15 is exact
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert_relative_eq!(s, 2.0 / 15.0, max_relative = 1e-14);
        assert_relative_eq!(w.iter().sum::<f64>(), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn jacobi_moments() {
        for &alpha in &[-0.5, 0.0, 0.5, 1.0, 2.5, -0.9] {
            for &n in &[4usize, 8, 16, 32] {
                let (x, w) = gauss_jacobi(n, alpha).unwrap();
                // ∫ (1-x)^α (1+x)^k dx = 2^{α+k+1} B(α+1, k+1), checked for k = 0, 1
                let m0: f64 = w.iter().sum();
                assert_relative_eq!(m0, 2f64.powf(alpha + 1.0) / (alpha + 1.0), max_relative = 1e-10);
                let m1: f64 = x.iter().zip(&w).map(|(x, w)| w * (1.0 + x)).sum();
                let exact = 2f64.powf(alpha + 2.0) / ((alpha + 1.0) * (alpha + 2.0));
                assert_relative_eq!(m1, exact, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn circle_rule_examples() {
        let c = cfg();
        assert_relative_eq!(circle_integral(|_| 3.5, &c).unwrap(), 3.5);
        let z: Complex64 = circle_integral(crate::disc::circle_point, &c).unwrap();
        assert!(z.norm() < 1e-14);
        let v = circle_integral_n(
            |t| 1.0 / (Complex64::new(1.0, 0.0) - 0.9 * crate::disc::circle_point(t)).norm_sqr(),
            4096,
        )
        .unwrap();
        assert_relative_eq!(v, 1.0 / (1.0 - 0.81), max_relative = 1e-12);
        assert!((v - 5.263158).abs() < 1e-6);
    }

    #[test]
    fn circle_rule_exact_on_trig_polynomials() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = 64;
        for _ in 0..20 {
            let coeffs: Vec<(i32, Complex64)> = (-(n as i32 / 2 - 1)..(n as i32 / 2))
                .map(|k| (k, Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)))
                .collect();
            let c0 = coeffs.iter().find(|(k, _)| *k == 0).unwrap().1;
            let v: Complex64 = circle_integral_n(
                |t| coeffs.iter().map(|(k, c)| c * crate::disc::circle_point(*k as f64 * t)).sum(),
                n,
            )
            .unwrap();
            assert!((v - c0).norm() < 1e-12 * (1.0 + c0.norm()));
        }
    }

    #[test]
    fn nonfinite_node_is_reported() {
        let err = circle_integral(|t| if t == 0.5 { f64::NAN } else { 1.0 }, &cfg()).unwrap_err();
        assert!(err.is_evaluation());
    }

    #[test]
    fn radial_examples() {
        let c = cfg();
        assert_relative_eq!(radial_integral(|_| 1.0, 0.0, &c).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(radial_integral(|_| 1.0, 1.0, &c).unwrap(), 0.5, max_relative = 1e-12);
        let c40 = QuadConfig {
            l_radial: 40,
            k_panel: 16,
            ..c
        };
        let v = radial_integral(|r| r, -0.5, &c40).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-8, "{v}");
        assert!(matches!(radial_integral(|_| 1.0, -1.0, &c), Err(Error::Divergence(_))));
    }

    #[test]
    fn radial_self_consistency_under_refinement() {
        let c = cfg();
        let f = |r: f64| (1.0 + r * r).recip() + (3.0 * r).sin();
        for &alpha in &[-0.5, 0.0, 0.5, 1.0, 2.0] {
            let a = radial_integral(f, alpha, &c).unwrap();
            let b = radial_integral(f, alpha, &c.refined()).unwrap();
            assert!(((a - b) / b).abs() < 1e-8, "alpha {alpha}: {a} vs {b}");
        }
    }

    #[test]
    fn truncated_rule_matches_closed_form() {
        let c = cfg();
        let r_max = 1.0 - 2f64.powi(-12);
        let v = RadialRule::truncated(1.0, r_max, &c).unwrap().integrate(|_| 1.0).unwrap();
        let exact = 0.5 - 0.5 * (1.0 - r_max).powi(2);
        assert_relative_eq!(v, exact, max_relative = 1e-13);
        assert!(RadialRule::truncated(1.0, 1.0, &c).is_err());
    }

    #[test]
    fn sup_examples() {
        let c = cfg();
        let s = radial_sup(|r| 1.0 - r, &c).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.argmax, 0.0);
        let s = radial_sup(|r| 2.0 * r * (1.0 - r), &c).unwrap();
        assert!((s.value - 0.5).abs() < 1e-8 && (s.argmax - 0.5).abs() < 1e-6);
        let s = radial_sup(|r| 4.0 * r.powi(3) * (1.0 - r), &c).unwrap();
        assert!((s.value - 27.0 / 64.0).abs() < 1e-8 && (s.argmax - 0.75).abs() < 1e-6);
    }

    #[test]
    fn sup_refinement_never_decreases() {
        let g = |r: f64| 50.0 * r.powi(49) * (1.0 - r).powf(0.7) + 0.1 * (20.0 * r).sin();
        let coarse = QuadConfig {
            k_panel: 4,
            l_radial: 10,
            ..cfg()
        };
        let mut last = radial_sup(g, &coarse).unwrap().value;
        for k in [8usize, 16, 32] {
            let v = radial_sup(g, &QuadConfig { k_panel: k, ..coarse }).unwrap().value;
            assert!(v >= last - 1e-14 * last.abs(), "{v} < {last}");
            last = v;
        }
    }

    #[test]
    fn window_area_examples() {
        let c = cfg();
        let h = 0.3;
        let full = CarlesonWindow::new(Arc::full(), h).unwrap();
        let a = window_integral(|_| 1.0, &full, &c).unwrap();
        assert_relative_eq!(a, PI * (1.0 - (1.0 - h) * (1.0 - h)), max_relative = 1e-12);
        let half = CarlesonWindow::new(Arc::new(0.0, 0.5).unwrap(), 0.2).unwrap();
        let a = window_integral(|_| 1.0, &half, &c).unwrap();
        assert!((a - 0.565487).abs() < 1e-6);
        // (1-|λ|)^{q-1} with q = 2: 2π ∫_{1-h}^1 (1-r) r dr
        let v = window_integral(|l| 1.0 - l.norm(), &full, &c).unwrap();
        let exact = TAU * (h * h / 2.0 - h * h * h / 3.0);
        assert_relative_eq!(v, exact, max_relative = 1e-10);
    }

    #[test]
    fn focused_window_handles_peaks() {
        // a Poisson-like bump of width 1e-4 centred inside the arc
        let c = cfg();
        let w = CarlesonWindow::new(Arc::new(0.1, 0.2).unwrap(), 0.5).unwrap();
        let z0 = Complex64::from_polar(0.9999, TAU * 0.2);
        let g = |l: Complex64| (1.0 - 0.9999f64 * 0.9999) / (Complex64::new(1.0, 0.0) - l.conj() * z0).norm_sqr();
        let a = window_integral_focused(g, &w, Some(z0), &c).unwrap();
        let b = window_integral_focused(g, &w, Some(z0), &c.refined()).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-7);
    }

    #[test]
    fn sphere_examples() {
        let c = QuadConfig {
            n_mc: 200_000,
            ..cfg()
        };
        let one = sphere3_mc(|_| 1.0, &c).unwrap();
        assert_eq!(one.estimate, 1.0);
        assert!(one.std_error < 1e-12);
        let w = [Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)];
        let lin = sphere3_mc(|z| (z[0] * w[0].conj() + z[1] * w[1].conj()).re, &c).unwrap();
        assert!(lin.estimate.abs() < 3.0 * lin.std_error);
        assert!(sphere3_mc(|_| 1.0, &QuadConfig { n_mc: 999, ..c }).is_err());
    }

    #[test]
    fn sphere_mc_is_reproducible() {
        let c = QuadConfig {
            n_mc: 10_000,
            ..cfg()
        };
        let g = |z: [Complex64; 2]| z[0].re.powi(2) + z[1].im;
        let a = sphere3_mc(g, &c).unwrap();
        let b = sphere3_mc(g, &c).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
    }

    #[test]
    fn config_validation() {
        assert!(QuadConfig { n_circle: 100, ..cfg() }.validate().is_err());
        assert!(QuadConfig { n_circle: 8, ..cfg() }.validate().is_err());
        assert!(QuadConfig { l_radial: 3, ..cfg() }.validate().is_err());
        assert!(QuadConfig { k_panel: 3, ..cfg() }.validate().is_err());
        assert!(cfg().validate().is_ok());
    }
}
