//! Condition testers for reverse Carleson measures on the disc: the
//! geometric, kernel and window constants and their agreement, the
//! boundary-density integrability test, and sweep certificates for spaces
//! that admit no reverse Carleson measures.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disc::{circle_point, dyadic_arcs, reduce_turns, Arc, CarlesonWindow, DiscPoint};
use crate::error::{check_finite, Error, Result};
use crate::funcs::HoloFunction;
use crate::measures::{BoundaryDensity, Measure};
use crate::quad::{gauss_legendre, radial_sup, window_integral_focused, QuadConfig};
use crate::report::extended_float;
use crate::spaces::{besov_norm, q_variation, NormPart, SpaceSpec};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Threshold `τ` on the geometric constant.
pub const GEOMETRIC_THRESHOLD: f64 = 0.01;
/// `τ′` is this fraction of the kernel constant measured on Lebesgue measure.
pub const KERNEL_THRESHOLD_FACTOR: f64 = 0.01;
/// Half-width, in decades, of the band around each threshold inside which a
/// disagreement is reported as inconclusive.
pub const GREY_ZONE_DECADES: f64 = 1.0;
/// Default number of rings in the kernel test grid.
pub const DEFAULT_LAMBDA_DEPTH: u32 = 10;
/// Two successive refinement ratios at or above this value mark the
/// integrability ladder of [`beta_rcm_test`] as divergent.
pub const DIVERGENCE_RATIO: f64 = 0.97;

/// Smallest integer `l` with `pl > 1`.
pub fn default_power(p: f64) -> Result<u32> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::param(format!("p = {p} must be positive and finite")));
    }
    Ok(((1.0 / p).floor() + 1.0) as u32)
}

fn check_pl(p: f64, l: u32) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::param(format!("p = {p} must be positive and finite")));
    }
    let pl = p * l as f64;
    if !(pl > 1.0) {
        return Err(Error::param(format!(
            "kernel tests need pl > 1 (got p = {p}, l = {l}, pl = {pl})"
        )));
    }
    Ok(pl)
}

/// `s^{-e}`, with a fast path for integer `e`.
fn inv_pow(s: f64, e: f64) -> f64 {
    if e.fract() == 0.0 && e.abs() <= 64.0 {
        1.0 / s.powi(e as i32)
    } else {
        s.powf(-e)
    }
}

/// `|1 − λ̄z|^{-q}`.
fn kernel_modulus_pow(lambda_conj: Complex64, z: Complex64, q: f64) -> f64 {
    inv_pow((ONE - lambda_conj * z).norm_sqr(), 0.5 * q)
}

fn extreme_arc(level_max: u32, minimize: bool, mut ratio: impl FnMut(&Arc) -> f64) -> Result<(f64, Arc)> {
    let mut best: Option<(f64, Arc)> = None;
    for arc in dyadic_arcs(level_max)? {
        let v = ratio(&arc);
        let better = match best {
            None => true,
            Some((b, _)) => (minimize && v < b) || (!minimize && v > b),
        };
        if better {
            best = Some((v, arc));
        }
    }
    Ok(best.expect("dyadic families are nonempty"))
}

/// `min μ(I)/m(I)` over both dyadic families up to `level_max`, with the arc
/// attaining it. An upper bound for the infimum over all arcs.
pub fn geometric_scan(mu: &Measure, level_max: u32) -> Result<(f64, Arc)> {
    extreme_arc(level_max, true, |arc| mu.arc_mass(arc) / arc.measure())
}

/// The value of [`geometric_scan`].
pub fn geometric_constant(mu: &Measure, level_max: u32) -> Result<f64> {
    Ok(geometric_scan(mu, level_max)?.0)
}

/// `max μ(S_I)/m(I)` over the standard windows of both dyadic families, with
/// the arc attaining it. A lower bound for the supremum over all windows.
pub fn direct_scan(mu: &Measure, level_max: u32) -> Result<(f64, Arc)> {
    extreme_arc(level_max, false, |arc| mu.window_mass(&CarlesonWindow::over(*arc)) / arc.measure())
}

/// The value of [`direct_scan`].
pub fn direct_constant(mu: &Measure, level_max: u32) -> Result<f64> {
    Ok(direct_scan(mu, level_max)?.0)
}

/// Rings `(1 − 2^{-j}, 2^{j+3})`, `j = 1..=depth`: radius and number of
/// equispaced angles.
pub fn lambda_grid(depth: u32) -> Result<Vec<(f64, usize)>> {
    if depth == 0 || depth > 20 {
        return Err(Error::param(format!("lambda grid depth {depth} outside [1, 20]")));
    }
    Ok((1..=depth).map(|j| (1.0 - 0.5f64.powi(j as i32), 1usize << (j + 3))).collect())
}

/// Circle-rule size and `‖k_λ^l‖_{H^p}^p` for `|λ| = radius`.
pub fn kernel_norm_pp(radius: f64, p: f64, l: u32, cfg: &QuadConfig) -> Result<(usize, f64)> {
    cfg.validate()?;
    let k = HoloFunction::kernel(Complex64::new(radius, 0.0), l)?;
    let n = k.circle_nodes(1.0, cfg.n_circle);
    Ok((n, k.circle_power_mean(0, p, 1.0, n)?))
}

/// Outcome of [`kernel_test_constant`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelScan {
    pub constant: f64,
    /// `λ` attaining the minimum, as `[re, im]`.
    pub argmin: [f64; 2],
    pub points: usize,
}

/// `min_λ ∫ |k_λ^l|^p dμ / ‖k_λ^l‖_{H^p}^p` over [`lambda_grid`]. The density
/// part uses the same node count as the norm on each ring.
pub fn kernel_test_constant(mu: &Measure, p: f64, l: u32, depth: u32, cfg: &QuadConfig) -> Result<KernelScan> {
    let pl = check_pl(p, l)?;
    let mut scan = KernelScan {
        constant: f64::INFINITY,
        argmin: [0.0, 0.0],
        points: 0,
    };
    let interior: Vec<(Complex64, f64)> = mu
        .interior_atoms()
        .iter()
        .map(|a| (a.point.to_complex(), a.weight))
        .collect();
    for (radius, angles) in lambda_grid(depth)? {
        let (nodes, norm) = kernel_norm_pp(radius, p, l, cfg)?;
        let boundary = mu.boundary_nodes(nodes);
        for k in 0..angles {
            let lambda = circle_point(k as f64 / angles as f64) * radius;
            let lc = lambda.conj();
            let mut acc = 0.0;
            for &(z, w) in interior.iter().chain(&boundary) {
                acc += w * kernel_modulus_pow(lc, z, pl);
            }
            let v = check_finite(acc / norm, || format!("kernel test at lambda = {lambda}"))?;
            if v < scan.constant {
                scan.constant = v;
                scan.argmin = [lambda.re, lambda.im];
            }
        }
        scan.points += angles;
    }
    Ok(scan)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

/// The thresholds `τ` (geometric) and `τ′` (kernel) behind a [`Verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub geometric: f64,
    pub kernel: f64,
    pub grey_zone_decades: f64,
}

impl Thresholds {
    /// `τ = 0.01`, and `τ′` = 0.01 × the kernel constant of Lebesgue measure
    /// on the same grid.
    pub fn calibrated(p: f64, l: u32, depth: u32, cfg: &QuadConfig) -> Result<Self> {
        let lebesgue = kernel_test_constant(&Measure::lebesgue(), p, l, depth, cfg)?.constant;
        Ok(Thresholds {
            geometric: GEOMETRIC_THRESHOLD,
            kernel: KERNEL_THRESHOLD_FACTOR * lebesgue,
            grey_zone_decades: GREY_ZONE_DECADES,
        })
    }

    fn in_grey_zone(&self, value: f64, threshold: f64) -> bool {
        let slack = 10f64.powf(self.grey_zone_decades);
        value >= threshold / slack && value <= threshold * slack
    }

    /// Consistent when both constants sit on the same side of their
    /// thresholds; a disagreement is inconclusive when either constant lies
    /// in its grey zone.
    pub fn verdict(&self, geometric: f64, kernel: f64) -> Verdict {
        if (geometric > self.geometric) == (kernel > self.kernel) {
            Verdict::Consistent
        } else if self.in_grey_zone(geometric, self.geometric) || self.in_grey_zone(kernel, self.kernel) {
            Verdict::Inconclusive
        } else {
            Verdict::Inconsistent
        }
    }
}

/// The three constants tied together by the disc equivalence theorem, with
/// the grid they were computed on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub geometric_constant: f64,
    pub kernel_constant: f64,
    pub direct_constant: f64,
    pub verdict: Verdict,
    pub thresholds: Thresholds,
    pub p: f64,
    pub l: u32,
    pub level_max: u32,
    pub lambda_depth: u32,
    pub lambda_points: usize,
    pub geometric_argmin: Arc,
    pub direct_argmax: Arc,
    pub kernel_argmin: [f64; 2],
}

/// [`equivalence_report_with`] under [`Thresholds::calibrated`].
pub fn equivalence_report(
    mu: &Measure,
    p: f64,
    l: u32,
    level_max: u32,
    depth: u32,
    cfg: &QuadConfig,
) -> Result<ConditionReport> {
    let thresholds = Thresholds::calibrated(p, l, depth, cfg)?;
    equivalence_report_with(mu, p, l, level_max, depth, thresholds, cfg)
}

pub fn equivalence_report_with(
    mu: &Measure,
    p: f64,
    l: u32,
    level_max: u32,
    depth: u32,
    thresholds: Thresholds,
    cfg: &QuadConfig,
) -> Result<ConditionReport> {
    check_pl(p, l)?;
    let (geometric, geometric_argmin) = geometric_scan(mu, level_max)?;
    let (direct, direct_argmax) = direct_scan(mu, level_max)?;
    let kernel = kernel_test_constant(mu, p, l, depth, cfg)?;
    Ok(ConditionReport {
        geometric_constant: geometric,
        kernel_constant: kernel.constant,
        direct_constant: direct,
        verdict: thresholds.verdict(geometric, kernel.constant),
        thresholds,
        p,
        l,
        level_max,
        lambda_depth: depth,
        lambda_points: kernel.points,
        geometric_argmin,
        direct_argmax,
        kernel_argmin: kernel.argmin,
    })
}

/// `Φ_h(z) = (1/h) ∫_{S_{I,h}} (1 − |λ|)^{q−1} |1 − λ̄z|^{-q} dA(λ)`, with `dA`
/// the unnormalized area element.
pub fn phi_h(z: DiscPoint, arc: &Arc, h: f64, q: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::param(format!("Φ_h needs q > 1 (got q = {q})")));
    }
    let window = CarlesonWindow::new(*arc, h)?;
    let zc = z.to_complex();
    let integrand = |lambda: Complex64| {
        let depth = 1.0 - lambda.norm();
        let weight = if q == 2.0 { depth } else { depth.powf(q - 1.0) };
        weight * kernel_modulus_pow(lambda.conj(), zc, q)
    };
    Ok(window_integral_focused(integrand, &window, Some(zc), cfg)? / h)
}

/// `min |1 − λ̄z|` over the closed window `S_{I,h}`.
pub fn window_gap(z: DiscPoint, window: &CarlesonWindow) -> f64 {
    let r = z.modulus();
    if r == 0.0 {
        return 1.0;
    }
    let c = (TAU * window.arc.angular_gap(z.turns())).cos();
    let rho = (c / r).clamp(window.inner_radius(), 1.0);
    let x = rho * r;
    (1.0 - 2.0 * x * c + x * x).max(0.0).sqrt()
}

/// `δ^{-q} |I| h^{q−1}`, the bound on `Φ_h(z)` when `|1 − λ̄z| ≥ δ` on the
/// window. `|I|` is the arc length in radians, matching the area element.
pub fn phi_h_gap_bound(delta: f64, arc: &Arc, h: f64, q: f64) -> f64 {
    delta.powf(-q) * TAU * arc.length() * h.powf(q - 1.0)
}

/// `∫ Φ_h dμ` (with `q = pl`) against `m(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSmoke {
    pub h: f64,
    pub value: f64,
    pub arc_measure: f64,
    pub ratio: f64,
}

/// Largest density grid whose cell edges become panel breakpoints in
/// [`kernel_window_smoke`].
const SMOKE_MAX_CELL_BREAKS: usize = 1024;

/// `∫ Φ_h dμ` for `q = pl`. The density part is integrated in `t` by
/// Gauss–Legendre panels graded toward the arc endpoints at scale `h`.
pub fn kernel_window_smoke(
    mu: &Measure,
    p: f64,
    l: u32,
    arc: &Arc,
    h: f64,
    cfg: &QuadConfig,
) -> Result<WindowSmoke> {
    let q = check_pl(p, l)?;
    let mut value = 0.0;
    for a in mu.interior_atoms() {
        value += a.weight * phi_h(a.point, arc, h, q, cfg)?;
    }
    for a in mu.boundary_atoms() {
        value += a.weight * phi_h(DiscPoint::from_polar(1.0, a.t)?, arc, h, q, cfg)?;
    }
    if let Some(density) = mu.density() {
        value += smoke_density_part(density, arc, h, q, cfg)?;
    }
    Ok(WindowSmoke {
        h,
        value,
        arc_measure: arc.measure(),
        ratio: value / arc.measure(),
    })
}

fn smoke_density_part(density: &BoundaryDensity, arc: &Arc, h: f64, q: f64, cfg: &QuadConfig) -> Result<f64> {
    let a = arc.start();
    let b = a + arc.length();
    let mut breaks = vec![a, b, a + 1.0];
    for edge in [a, b, a + 1.0] {
        let mut d = h / 16.0;
        while d < 0.5 {
            breaks.push(edge - d);
            breaks.push(edge + d);
            d *= 2.0;
        }
    }
    let n = density.n_grid();
    if n <= SMOKE_MAX_CELL_BREAKS {
        for i in 0..n {
            breaks.push(a + (i as f64 / n as f64 - a).rem_euclid(1.0));
        }
    }
    breaks.retain(|&t| t >= a && t <= a + 1.0);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|x, y| (*x - *y).abs() < 1e-15);

    let (gx, gw) = gauss_legendre(8);
    let values = density.values();
    let mut acc = 0.0;
    for pair in breaks.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in gx.iter().zip(&gw) {
            let t = reduce_turns(mid + half * x);
            let beta = values[((t * n as f64) as usize).min(n - 1)];
            if beta == 0.0 {
                continue;
            }
            acc += w * half * beta * phi_h(DiscPoint::from_polar(1.0, t)?, arc, h, q, cfg)?;
        }
    }
    Ok(acc)
}

/// One row of a balayage sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalayageRow {
    pub n: u32,
    /// `∫_D |z^N f|^q dμ` over the interior atoms.
    pub value: f64,
    /// `ρ^{Nq} ‖f‖_∞^q μ(D)`, `ρ` the largest interior atom radius.
    pub envelope: f64,
}

/// Interior integrals of `|z^N f|^q` along `n_list`. `‖f‖_∞` is the largest
/// modulus seen on a boundary sample of `f` or at an atom.
pub fn balayage_decay(mu: &Measure, f: &HoloFunction, q: f64, n_list: &[u32], cfg: &QuadConfig) -> Result<Vec<BalayageRow>> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::param(format!("q = {q} must be positive and finite")));
    }
    cfg.validate()?;
    let atoms: Vec<(f64, f64, f64)> = mu
        .interior_atoms()
        .iter()
        .map(|a| {
            let z = a.point.to_complex();
            (z.norm(), f.value(z).norm(), a.weight)
        })
        .collect();
    let samples = f.boundary_samples(f.circle_nodes(1.0, cfg.n_circle));
    let sup = samples
        .iter()
        .map(|v| v.norm())
        .chain(atoms.iter().map(|a| a.1))
        .fold(0.0f64, f64::max);
    check_finite(sup, || "sup of |f| on the closed disc".to_string())?;
    let rho = mu.interior_radius();
    Ok(n_list
        .iter()
        .map(|&n| {
            let (mut value, mut envelope) = (0.0, 0.0);
            let top = (rho.powf(n as f64) * sup).powf(q);
            for &(r, fz, w) in &atoms {
                value += w * (r.powf(n as f64) * fz).powf(q);
                envelope += w * top;
            }
            BalayageRow { n, value, envelope }
        })
        .collect())
}

/// One level of the coarsening ladder in [`beta_rcm_test`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderStep {
    pub n_grid: usize,
    pub sum: f64,
}

/// Outcome of [`beta_rcm_test`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaTest {
    pub decision: bool,
    /// `∫ β^{-p/(q−p)} dt`, or `∞` when judged divergent.
    #[serde(with = "extended_float")]
    pub integral: f64,
    /// `integral^{(q−p)/q}`, the `p/q`-th power of `‖1/β‖_{L^{p/(q−p)}}`.
    #[serde(with = "extended_float")]
    pub holder_constant: f64,
    pub exponent: f64,
    pub ladder: Vec<LadderStep>,
}

/// Decides `1/β ∈ L^{p/(q−p)}` for `p < q`.
///
/// A zero cell makes the integral infinite. Otherwise the grid sum is
/// recomputed on the grid coarsened by pairwise averaging; when the gain per
/// halving of the cell width stops shrinking (two successive ratios of at
/// least [`DIVERGENCE_RATIO`]) the sums are taken to grow without bound under
/// refinement and the integral is reported as `∞`.
pub fn beta_rcm_test(beta: &BoundaryDensity, p: f64, q: f64) -> Result<BetaTest> {
    if !(p > 0.0 && p.is_finite() && q.is_finite()) {
        return Err(Error::param(format!("exponents p = {p}, q = {q} must be positive and finite")));
    }
    if q <= p {
        return Err(Error::param(format!(
            "beta test needs q > p (got p = {p}, q = {q}); for q ≤ p use the q < p certificate"
        )));
    }
    let exponent = p / (q - p);
    let divergent = |ladder: Vec<LadderStep>| BetaTest {
        decision: false,
        integral: f64::INFINITY,
        holder_constant: f64::INFINITY,
        exponent,
        ladder,
    };
    if beta.values().contains(&0.0) {
        return Ok(divergent(Vec::new()));
    }
    let mut values = beta.values().to_vec();
    let mut ladder = Vec::new();
    loop {
        let n = values.len();
        let sum = values.iter().map(|&b| b.powf(-exponent)).sum::<f64>() / n as f64;
        ladder.push(LadderStep { n_grid: n, sum });
        if !n.is_multiple_of(2) || n < 8 || ladder.len() >= 16 {
            break;
        }
        values = values.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect();
    }
    let integral = ladder[0].sum;
    let gains: Vec<f64> = ladder.windows(2).map(|w| w[0].sum - w[1].sum).collect();
    let stalls = gains.len() >= 3
        && gains[0] > 1e-12 * integral
        && gains[0] >= DIVERGENCE_RATIO * gains[1]
        && gains[1] >= DIVERGENCE_RATIO * gains[2];
    if stalls || !integral.is_finite() {
        return Ok(divergent(ladder));
    }
    Ok(BetaTest {
        decision: true,
        integral,
        holder_constant: integral.powf((q - p) / q),
        exponent,
        ladder,
    })
}

/// Monotone direction of a certificate's ratios over its sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
    Mixed,
}

impl Trend {
    fn of(values: &[f64]) -> Trend {
        let up = values.windows(2).all(|w| w[1] >= w[0]);
        let down = values.windows(2).all(|w| w[1] <= w[0]);
        match (up, down) {
            (true, true) => Trend::Constant,
            (true, false) => Trend::Increasing,
            (false, true) => Trend::Decreasing,
            (false, false) => Trend::Mixed,
        }
    }
}

/// One point of a certificate sweep: the two sides of the inequality that a
/// reverse Carleson measure would have to satisfy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub parameter: f64,
    pub left_side: f64,
    pub right_side: f64,
    #[serde(with = "extended_float")]
    pub ratio: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, f64>,
}

impl CertificateRow {
    fn new(parameter: f64, left_side: f64, right_side: f64) -> Self {
        CertificateRow {
            parameter,
            left_side,
            right_side,
            ratio: left_side / right_side,
            extras: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }
}

/// A parameter sweep whose ratios `left_side / right_side` grow without
/// bound for a nonexistence result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub inequality: String,
    pub rows: Vec<CertificateRow>,
    pub trend: Trend,
}

impl Certificate {
    fn new(kind: &str, inequality: &str, rows: Vec<CertificateRow>) -> Self {
        let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
        Certificate {
            kind: kind.to_string(),
            inequality: inequality.to_string(),
            trend: Trend::of(&ratios),
            rows,
        }
    }
}

/// For `q < p`: testing the reverse Carleson inequality on an arc of length
/// `ε` forces total mass at least `ε^{q/p−1}`. Rows compare that bound with
/// the unit mass of a normalized measure.
pub fn q_less_p_certificate(p: f64, q: f64, eps_list: &[f64]) -> Result<Certificate> {
    if !(q > 0.0 && p.is_finite()) {
        return Err(Error::param(format!("exponents p = {p}, q = {q} must be positive and finite")));
    }
    if q >= p {
        return Err(Error::param(format!(
            "the q < p certificate needs q < p (got p = {p}, q = {q}); for q > p use the beta test"
        )));
    }
    let exponent = q / p - 1.0;
    let rows = eps_list
        .iter()
        .map(|&eps| {
            if !(eps > 0.0 && eps <= 1.0) {
                return Err(Error::param(format!("arc length ε = {eps} outside (0, 1]")));
            }
            Ok(CertificateRow::new(eps, eps.powf(exponent), 1.0).with("exponent", exponent))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate::new("q-less-p", "mu(T) >= eps^(q/p-1)", rows))
}

/// `(1 − |z_n|)|f_n'(z_n)|` at `z_n = e^{-1/n} e^{2πiφ}`, a lower bound for
/// the Bloch seminorm of the Fejér-type polynomial `f_n`.
pub fn fejer_witness(n: u32, phi: f64) -> Result<f64> {
    let f = HoloFunction::fejer(n, phi)?;
    let depth = -(-1.0 / n as f64).exp_m1();
    let z = circle_point(phi) * (1.0 - depth);
    Ok(depth * f.eval(1, z).norm())
}

/// `H_n / n · Σ_{j=1}^n |z|^j` integrated over the interior atoms: an upper
/// bound for `∫_D |f_n| dμ` by Chebyshev's sum inequality.
fn fejer_interior_bound(mu: &Measure, n: u32) -> f64 {
    let harmonic: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
    let geometric = |r: f64| {
        if r == 0.0 {
            0.0
        } else {
            r * -(n as f64 * r.ln()).exp_m1() / (1.0 - r)
        }
    };
    mu.interior_atoms()
        .iter()
        .fold(0.0, |acc, a| acc + a.weight * geometric(a.point.modulus()))
        * harmonic
        / n as f64
}

/// `max |f_n(e^{it})| / max(ln(1/d), 1)` over boundary samples at angular
/// distance `d ≥ 1/n` radians from the phase.
fn fejer_log_constant(f: &HoloFunction, n: u32, phi: f64) -> f64 {
    let nodes = (4 * n as usize).max(1024).next_power_of_two();
    f.boundary_samples(nodes)
        .iter()
        .enumerate()
        .filter_map(|(j, v)| {
            let off = reduce_turns(j as f64 / nodes as f64 - phi);
            let d = TAU * off.min(1.0 - off);
            (d >= 1.0 / n as f64).then(|| v.norm() / (1.0 / d).ln().max(1.0))
        })
        .fold(0.0, f64::max)
}

/// The Bloch-space decomposition for each `n`: left side the witness
/// [`fejer_witness`], right side `∫_D |f_n| dμ + ∫_{∂D} |f_n| dμ`.
///
/// Extras: the interior term and its geometric-series bound, the boundary
/// term, `c0 = ln n / witness`, the measured `c2` of [`fejer_log_constant`],
/// and the arc diagnostic `a = n^{-1/(2 c0 c1 c2 μ(∂D))}` (radians, `c1` the
/// row ratio) with `μ([φ−a, φ+a])` against `1/(4 c0)`.
pub fn bloch_nonexistence_witness(mu: &Measure, n_list: &[u32], phi: f64, cfg: &QuadConfig) -> Result<Certificate> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        if n < 4 {
            return Err(Error::param(format!("Bloch witness needs n ≥ 4 (got {n})")));
        }
        let f = HoloFunction::fejer(n, phi)?;
        let witness = fejer_witness(n, phi)?;
        let interior = mu.integrate_interior(|z| f.value(z).norm())?;
        let boundary = mu.integrate_boundary(|z| f.value(z).norm(), cfg.n_circle.max(8 * n as usize))?;
        let log_n = (n as f64).ln();
        let c0 = log_n / witness;
        let c2 = fejer_log_constant(&f, n, phi);
        let row = CertificateRow::new(n as f64, witness, interior + boundary);
        let boundary_mass = mu.boundary_mass();
        let (a, arc_mass) = if boundary_mass > 0.0 && row.ratio.is_finite() {
            let a = (n as f64).powf(-1.0 / (2.0 * c0 * row.ratio * c2 * boundary_mass));
            let arc_mass = match Arc::new(phi - a / TAU, (2.0 * a / TAU).min(1.0)) {
                Ok(arc) => mu.arc_mass(&arc),
                Err(_) => 0.0,
            };
            (a, arc_mass)
        } else {
            (0.0, 0.0)
        };
        rows.push(
            row.with("witness_over_log_n", witness / log_n)
                .with("interior_term", interior)
                .with("interior_bound", fejer_interior_bound(mu, n))
                .with("boundary_term", boundary)
                .with("c0", c0)
                .with("c2", c2)
                .with("a", a)
                .with("arc_mass", arc_mass)
                .with("arc_threshold", 1.0 / (4.0 * c0)),
        );
    }
    Ok(Certificate::new(
        "bloch",
        "witness(f_n) <= C (int_D |f_n| dmu + int_dD |f_n| dmu)",
        rows,
    ))
}

/// `sup_r n r^{n−1} (1−r)^{1−s}` by radial scan and in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriebelGrowth {
    pub n: u64,
    pub s: f64,
    pub numeric: f64,
    pub closed_form: f64,
    pub argmax: f64,
    pub r_star: f64,
}

/// The `HF_s^{p,∞}` seminorm of `z^n` (with `m = 1`), whose maximizer is
/// `r* = (n−1)/(n−s)`.
pub fn triebel_s_growth(n: u64, s: f64, cfg: &QuadConfig) -> Result<TriebelGrowth> {
    if n == 0 {
        return Err(Error::param("monomial degree n must be ≥ 1"));
    }
    if !(0.0..1.0).contains(&s) {
        return Err(Error::param(format!("smoothness s = {s} outside [0, 1)")));
    }
    let nf = n as f64;
    let closed_form = triebel_s_closed_form(n, s);
    let sup = radial_sup(|r| nf * r.powf(nf - 1.0) * (1.0 - r).powf(1.0 - s), cfg)?;
    Ok(TriebelGrowth {
        n,
        s,
        numeric: sup.value,
        closed_form,
        argmax: sup.argmax,
        r_star: (nf - 1.0) / (nf - s),
    })
}

/// `n r*^{n−1} (1−r*)^{1−s}` evaluated in logarithms.
pub fn triebel_s_closed_form(n: u64, s: f64) -> f64 {
    if n == 1 {
        return 1.0;
    }
    let nf = n as f64;
    let gap = (1.0 - s) / (nf - s);
    (nf.ln() + (nf - 1.0) * (-gap).ln_1p() + (1.0 - s) * gap.ln()).exp()
}

/// Monomials `z^n` against `HF_s^{p,∞}`: left side the seminorm (closed
/// form), right side `1 ≥ ‖z^n‖_{L^p(μ)}` for a probability measure.
pub fn triebel_s_certificate(n_list: &[u64], s: f64, cfg: &QuadConfig) -> Result<Certificate> {
    let rows = n_list
        .iter()
        .map(|&n| {
            let g = triebel_s_growth(n, s, cfg)?;
            Ok(CertificateRow::new(n as f64, g.closed_form, 1.0)
                .with("numeric", g.numeric)
                .with("r_star", g.r_star))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate::new("triebel-s", "||z^n||_F <= C ||z^n||_{L^p(mu)} <= C", rows))
}

/// Extra lacunary terms kept past the largest `N` of a sweep: on
/// `r ≤ 1 − 2^{-N}` the dropped terms are below `2^{N+6} e^{-64}`.
pub const LACUNARY_TAIL_TERMS: u32 = 6;

/// Partial q-variations of the lacunary series against Waterman's lower
/// bound: left side `∫_0^{r_N} |g'(re^{2πit})|^q (1−r)^{q−1} dr` with
/// `r_N = 1 − 2^{-N}`, right side `H_N = Σ_{k≤N} 1/k`. One truncation of `g`
/// serves the whole sweep (see [`LACUNARY_TAIL_TERMS`]).
pub fn triebel_q_certificate(q: f64, t: f64, n_list: &[u32], cfg: &QuadConfig) -> Result<Certificate> {
    let top = n_list.iter().copied().max().unwrap_or(1);
    let terms = top + LACUNARY_TAIL_TERMS;
    let f = HoloFunction::lacunary(q, terms)?;
    let rows = n_list
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::param("partial index N must be ≥ 1"));
            }
            let r_max = 1.0 - 0.5f64.powi(n as i32);
            let value = q_variation(&f, q, t, r_max, cfg)?;
            let harmonic: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
            Ok(CertificateRow::new(n as f64, value, harmonic)
                .with("r_max", r_max)
                .with("terms", terms as f64))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate::new("triebel-q", "q-variation(g) on [0, 1-2^-N] >= c H_N", rows))
}

/// Blaschke products `B_n` against `HB_0^{4,2}`: left side the seminorm,
/// right side `1 = ‖B_n‖_{L^p(m)}`; the extra `log_growth` is
/// `(ln n)^{1/q − 1/p}`.
pub fn besov_blaschke_certificate(n_list: &[u32], cfg: &QuadConfig) -> Result<Certificate> {
    let spec = SpaceSpec::besov(0.0, 4.0, 2.0, Some(1))?;
    let rows = n_list
        .iter()
        .map(|&n| {
            let f = HoloFunction::blaschke(n)?;
            let value = besov_norm(&f, &spec, NormPart::Seminorm, cfg)?.value;
            Ok(CertificateRow::new(n as f64, value, 1.0).with("log_growth", (n as f64).ln().powf(0.25)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate::new("besov-blaschke", "||B_n||_B <= C ||B_n||_{L^p(mu)}", rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::measures::{BoundaryAtom, InteriorAtom};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn light() -> QuadConfig {
        QuadConfig {
            n_circle: 1024,
            l_radial: 8,
            k_panel: 8,
            ..QuadConfig::default()
        }
    }

    fn interior(points: &[(f64, f64, f64)]) -> Measure {
        let atoms = points
            .iter()
            .map(|&(re, im, w)| InteriorAtom {
                point: DiscPoint::new(re, im).unwrap(),
                weight: w,
            })
            .collect();
        Measure::new(atoms, Vec::new(), None).unwrap()
    }

    fn boundary(points: &[(f64, f64)]) -> Measure {
        let atoms = points.iter().map(|&(t, w)| BoundaryAtom { t, weight: w }).collect();
        Measure::new(Vec::new(), atoms, None).unwrap()
    }

    #[test]
    fn geometric_constant_examples() {
        assert_relative_eq!(geometric_constant(&Measure::lebesgue(), 10).unwrap(), 1.0, max_relative = 1e-12);
        for level in 1..6 {
            assert_eq!(geometric_constant(&boundary(&[(0.3, 1.0)]), level).unwrap(), 0.0);
        }
        let mu = corpus::builtin("half_lebesgue_atoms").unwrap();
        assert!((geometric_constant(&mu, 12).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn direct_constant_examples() {
        assert_relative_eq!(direct_constant(&Measure::lebesgue(), 10).unwrap(), 1.0, max_relative = 1e-12);
        assert_eq!(direct_constant(&Measure::zero(), 10).unwrap(), 0.0);
        for j in [3, 6, 9] {
            let r = 1.0 - 0.5f64.powi(j);
            let mu = interior(&[(r * 0.6f64.cos(), r * 0.6f64.sin(), 0.3)]);
            assert!(direct_constant(&mu, 12).unwrap() >= 0.3 * 2f64.powi(j) * (1.0 - 1e-12));
        }
    }

    #[test]
    fn kernel_test_on_lebesgue_is_one() {
        for (p, l) in [(2.0, 1), (1.0, 2), (0.5, 3)] {
            let scan = kernel_test_constant(&Measure::lebesgue(), p, l, 6, &light()).unwrap();
            assert!((scan.constant - 1.0).abs() < 1e-9, "p={p} l={l}: {}", scan.constant);
            assert_eq!(scan.points, (1..=6).map(|j| 1 << (j + 3)).sum::<usize>());
        }
    }

    #[test]
    fn kernel_test_atom_at_origin_decays_at_rate() {
        let w = 0.4;
        let mu = interior(&[(0.0, 0.0, w)]);
        for (p, l) in [(2.0, 1), (1.0, 2)] {
            let pl = p * l as f64;
            let mut scaled = Vec::new();
            for depth in [4, 6, 8] {
                let v = kernel_test_constant(&mu, p, l, depth, &light()).unwrap().constant;
                let (_, norm) = kernel_norm_pp(1.0 - 0.5f64.powi(depth as i32), p, l, &light()).unwrap();
                assert_relative_eq!(v, w / norm, max_relative = 1e-12);
                scaled.push(v / 0.5f64.powi(depth as i32).powf(pl - 1.0));
            }
            let (lo, hi) = scaled.iter().fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
            assert!(hi / lo < 4.0, "p={p} l={l}: {scaled:?}");
        }
    }

    #[test]
    fn kernel_test_on_half_circle_vanishes_with_depth() {
        let mu = corpus::builtin("half_circle").unwrap();
        let values: Vec<f64> = [3, 5, 7]
            .iter()
            .map(|&d| kernel_test_constant(&mu, 2.0, 1, d, &light()).unwrap().constant)
            .collect();
        assert!(values[0] > values[1] && values[1] > values[2] && values[2] < 0.01, "{values:?}");
        let argmin = kernel_test_constant(&mu, 2.0, 1, 7, &light()).unwrap().argmin;
        assert!(argmin[1] < 0.0, "minimum should sit over the dead half: {argmin:?}");
    }

    #[test]
    fn kernel_test_requires_pl_above_one() {
        let err = kernel_test_constant(&Measure::lebesgue(), 0.5, 2, 4, &light()).unwrap_err();
        assert!(err.to_string().contains("pl > 1"));
        assert_eq!(default_power(0.5).unwrap(), 3);
        assert_eq!(default_power(2.0).unwrap(), 1);
        assert_eq!(default_power(1.0).unwrap(), 2);
    }

    #[test]
    fn verdict_rules() {
        let th = Thresholds {
            geometric: 0.01,
            kernel: 0.01,
            grey_zone_decades: 1.0,
        };
        assert_eq!(th.verdict(1.0, 0.9), Verdict::Consistent);
        assert_eq!(th.verdict(0.0, 0.004), Verdict::Consistent);
        assert_eq!(th.verdict(0.5, 0.005), Verdict::Inconclusive);
        assert_eq!(th.verdict(0.05, 0.0), Verdict::Inconclusive);
        assert_eq!(th.verdict(1.0, 1e-4), Verdict::Inconsistent);
        assert_eq!(th.verdict(0.0, 1.0), Verdict::Inconsistent);
    }

    #[test]
    fn equivalence_report_examples() {
        let cfg = light();
        let th = Thresholds::calibrated(2.0, 1, 6, &cfg).unwrap();
        assert!((th.kernel - 0.01).abs() < 1e-10);
        let leb = equivalence_report_with(&Measure::lebesgue(), 2.0, 1, 10, 6, th, &cfg).unwrap();
        assert_eq!(leb.verdict, Verdict::Consistent);
        assert!((leb.geometric_constant - 1.0).abs() < 1e-12 && (leb.kernel_constant - 1.0).abs() < 1e-9);

        let cloud = corpus::builtin("interior_cloud").unwrap();
        let shallow = equivalence_report_with(&cloud, 2.0, 1, 10, 4, th, &cfg).unwrap();
        let deep = equivalence_report_with(&cloud, 2.0, 1, 10, 8, th, &cfg).unwrap();
        assert_eq!(deep.verdict, Verdict::Consistent);
        assert_eq!(deep.geometric_constant, 0.0);
        assert!(deep.kernel_constant < shallow.kernel_constant && deep.kernel_constant < th.kernel);

        let mixed = equivalence_report_with(&corpus::builtin("mixed").unwrap(), 2.0, 1, 10, 6, th, &cfg).unwrap();
        assert_eq!(mixed.verdict, Verdict::Consistent);
        assert!(mixed.geometric_constant >= 1.0 - 1e-12 && mixed.kernel_constant >= 1.0 - 1e-9);
        assert!(mixed.direct_constant > 1.0);

        let json = serde_json::to_string(&mixed).unwrap();
        assert!(json.contains("\"verdict\":\"consistent\""));
        let back: ConditionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, mixed);
    }

    #[test]
    fn constants_scale_linearly() {
        let cfg = light();
        let th = Thresholds::calibrated(2.0, 1, 5, &cfg).unwrap();
        for (_, mu) in corpus::all() {
            let base = equivalence_report_with(&mu, 2.0, 1, 8, 5, th, &cfg).unwrap();
            for c in [0.5, 2.0] {
                let r = equivalence_report_with(&mu.scaled(c).unwrap(), 2.0, 1, 8, 5, th, &cfg).unwrap();
                assert_relative_eq!(r.geometric_constant, c * base.geometric_constant, max_relative = 1e-12);
                assert_relative_eq!(r.kernel_constant, c * base.kernel_constant, max_relative = 1e-12);
                assert_relative_eq!(r.direct_constant, c * base.direct_constant, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn verdict_survives_scaling() {
        // λ depth must match the arc level for atom-only measures, whose
        // kernel constants only fall below τ′ on deep rings
        let cfg = light();
        let cases = [
            ("lebesgue", 8, 5),
            ("mixed", 8, 5),
            ("half_lebesgue_atoms", 8, 5),
            ("boundary_comb", 12, 10),
            ("interior_cloud", 12, 10),
        ];
        for (name, level, depth) in cases {
            let th = Thresholds::calibrated(2.0, 1, depth, &cfg).unwrap();
            let mu = corpus::builtin(name).unwrap();
            let base = equivalence_report_with(&mu, 2.0, 1, level, depth, th, &cfg).unwrap();
            assert_eq!(base.verdict, Verdict::Consistent, "{name}");
            for c in [0.5, 2.0] {
                let r = equivalence_report_with(&mu.scaled(c).unwrap(), 2.0, 1, level, depth, th, &cfg).unwrap();
                assert_eq!(r.verdict, base.verdict, "{name} scaled by {c}");
            }
        }
    }

    #[test]
    fn geometric_constant_survives_finest_grid_rotation() {
        let level = 10;
        for (name, mu) in corpus::all() {
            let refined = match mu.density() {
                Some(d) => {
                    let factor = (1usize << level) / d.n_grid();
                    let values = d.values().iter().flat_map(|&v| std::iter::repeat_n(v, factor)).collect();
                    Measure::new(
                        mu.interior_atoms().to_vec(),
                        mu.boundary_atoms().to_vec(),
                        Some(BoundaryDensity::new(values).unwrap()),
                    )
                    .unwrap()
                }
                None => mu.clone(),
            };
            let cells = if refined.density().is_some() { 1 } else { 1 << (24 - level) };
            let rotated = refined.rotated_by_cells(cells).unwrap();
            assert_eq!(
                geometric_constant(&refined, level).unwrap(),
                geometric_constant(&rotated, level).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn phi_h_closed_form_at_origin() {
        let zero = DiscPoint::new(0.0, 0.0).unwrap();
        for h in [1.0, 0.5, 0.125, 0.01] {
            let v = phi_h(zero, &Arc::full(), h, 2.0, &QuadConfig::default()).unwrap();
            assert!((v - PI * h * (1.0 - 2.0 * h / 3.0)).abs() < 1e-8, "h={h}: {v}");
        }
        assert!(phi_h(zero, &Arc::full(), 0.5, 1.0, &light()).is_err());
        assert!(phi_h(zero, &Arc::full(), 0.0, 2.0, &light()).is_err());
    }

    #[test]
    fn phi_h_off_arc_obeys_gap_bound_and_vanishes() {
        let arc = Arc::new(0.0, 0.25).unwrap();
        // angular gap with sin(ψ) = 0.3 keeps |1 − λ̄z| ≥ 0.3 on every window
        let psi = 0.3f64.asin() / TAU;
        let z = DiscPoint::from_polar(1.0, 0.25 + psi).unwrap();
        let mut first = None;
        let mut last = f64::INFINITY;
        for k in 3..=10 {
            let h = 0.5f64.powi(k);
            let window = CarlesonWindow::new(arc, h).unwrap();
            assert!(window_gap(z, &window) >= 0.3 - 1e-12);
            for q in [1.5, 2.0, 3.0] {
                let v = phi_h(z, &arc, h, q, &light()).unwrap();
                assert!(v <= phi_h_gap_bound(0.3, &arc, h, q), "h={h} q={q}: {v}");
            }
            let v = phi_h(z, &arc, h, 2.0, &light()).unwrap();
            assert!(v < last);
            first.get_or_insert(v);
            last = v;
        }
        assert!(last < 1e-2 && last < first.unwrap() / 64.0, "{first:?} -> {last}");
    }

    #[test]
    fn window_gap_matches_sampling() {
        let window = CarlesonWindow::new(Arc::new(0.9, 0.2).unwrap(), 0.3).unwrap();
        for (r, t) in [(0.0, 0.0), (0.5, 0.4), (1.0, 0.5), (0.95, 0.2), (1.0, 0.12), (0.8, 0.95)] {
            let z = DiscPoint::from_polar(r, t).unwrap();
            let mut brute = f64::INFINITY;
            for i in 0..=400 {
                for k in 0..=400 {
                    let rho = 0.7 + 0.3 * i as f64 / 400.0;
                    let lambda = circle_point(0.9 + 0.2 * k as f64 / 400.0) * rho;
                    brute = brute.min((ONE - lambda.conj() * z.to_complex()).norm());
                }
            }
            let gap = window_gap(z, &window);
            assert!(gap <= brute + 1e-12 && brute - gap < 2e-3, "r={r} t={t}: {gap} vs {brute}");
        }
    }

    #[test]
    fn window_smoke_tracks_arc_length() {
        let cfg = light();
        let arc = Arc::new(0.1, 0.25).unwrap();
        let ratios: Vec<f64> = [0.125, 0.03125, 0.0078125]
            .iter()
            .map(|&h| kernel_window_smoke(&Measure::lebesgue(), 2.0, 1, &arc, h, &cfg).unwrap().ratio)
            .collect();
        for r in &ratios {
            assert!(*r > 1.0 && *r < 5.0, "{ratios:?}");
        }
        assert!(ratios[2] / ratios[0] > 0.8 && ratios[2] / ratios[0] < 1.25, "{ratios:?}");

        let off = boundary(&[(0.6, 1.0)]);
        let values: Vec<f64> = [0.125, 0.03125, 0.0078125]
            .iter()
            .map(|&h| kernel_window_smoke(&off, 2.0, 1, &arc, h, &cfg).unwrap().value)
            .collect();
        assert!(values[0] > values[1] && values[1] > values[2] && values[2] < 1e-2, "{values:?}");

        for h in [0.25, 0.0625] {
            let full = kernel_window_smoke(&Measure::lebesgue(), 2.0, 1, &Arc::full(), h, &cfg).unwrap();
            assert!(full.value > 1.0 && full.value < 5.0, "{full:?}");
        }
    }

    #[test]
    fn balayage_examples() {
        let one = HoloFunction::polynomial(vec![ONE]).unwrap();
        let mu = interior(&[(0.5, 0.0, 1.0)]);
        let rows = balayage_decay(&mu, &one, 1.0, &[10], &light()).unwrap();
        assert_eq!(rows[0].value, 0.0009765625);
        let rows = balayage_decay(&Measure::lebesgue(), &one, 2.0, &[0, 5, 50], &light()).unwrap();
        assert!(rows.iter().all(|r| r.value == 0.0 && r.envelope == 0.0));
        let cloud = corpus::builtin("interior_cloud").unwrap();
        let rows = balayage_decay(&cloud, &one, 1.5, &(0..60).collect::<Vec<_>>(), &light()).unwrap();
        assert!(rows.windows(2).all(|w| w[1].value <= w[0].value));
    }

    proptest! {
        #[test]
        fn balayage_stays_under_envelope(
            atoms in prop::collection::vec((0.0..0.999f64, 0.0..1.0f64, 0.01..1.0f64), 1..8),
            q in 0.3..4.0f64,
            n in 0u32..200,
        ) {
            let pts: Vec<(f64, f64, f64)> = atoms
                .iter()
                .map(|&(r, t, w)| (r * (TAU * t).cos(), r * (TAU * t).sin(), w))
                .collect();
            let mu = interior(&pts);
            let f = HoloFunction::kernel(Complex64::new(0.3, -0.2), 2).unwrap();
            for row in balayage_decay(&mu, &f, q, &[n], &light()).unwrap() {
                prop_assert!(row.value <= row.envelope);
            }
        }

        #[test]
        fn fejer_interior_bound_holds(
            atoms in prop::collection::vec((0.0..0.9999f64, 0.0..1.0f64, 0.01..1.0f64), 1..6),
            n in 4u32..300,
            phi in 0.0..1.0f64,
        ) {
            let pts: Vec<(f64, f64, f64)> = atoms
                .iter()
                .map(|&(r, t, w)| (r * (TAU * t).cos(), r * (TAU * t).sin(), w))
                .collect();
            let mu = interior(&pts);
            let f = HoloFunction::fejer(n, phi).unwrap();
            let term = mu.integrate_interior(|z| f.value(z).norm()).unwrap();
            prop_assert!(term <= fejer_interior_bound(&mu, n) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn beta_test_examples() {
        let flat = BoundaryDensity::constant(64, 1.0).unwrap();
        for (p, q) in [(1.0, 2.0), (0.5, 3.0), (2.0, 2.5)] {
            let r = beta_rcm_test(&flat, p, q).unwrap();
            assert!(r.decision);
            assert_relative_eq!(r.integral, 1.0, max_relative = 1e-14);
            assert_relative_eq!(r.holder_constant, 1.0, max_relative = 1e-14);
        }
        let root = BoundaryDensity::discretize(1 << 16, 8, |t| (t - 0.5f64).abs().sqrt()).unwrap();
        let r = beta_rcm_test(&root, 1.0, 2.0).unwrap();
        assert!(r.decision);
        assert!((r.integral / (2.0 * 2f64.sqrt()) - 1.0).abs() < 0.01, "{}", r.integral);

        let holed = BoundaryDensity::new(vec![1.0, 0.0, 2.0, 1.0]).unwrap();
        let r = beta_rcm_test(&holed, 1.0, 2.0).unwrap();
        assert!(!r.decision && r.integral.is_infinite());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"integral\":\"inf\""));

        let err = beta_rcm_test(&flat, 2.0, 2.0).unwrap_err();
        assert!(err.to_string().contains("q < p certificate"));
    }

    #[test]
    fn beta_test_flips_at_log_divergence() {
        for (a, expected) in [(0.5, true), (0.9, true), (1.0, false), (1.3, false)] {
            let beta = BoundaryDensity::discretize(1 << 14, 4, |t| (t - 0.5f64).abs().powf(a)).unwrap();
            assert_eq!(beta_rcm_test(&beta, 1.0, 2.0).unwrap().decision, expected, "a = {a}");
        }
    }

    #[test]
    fn q_less_p_examples() {
        let c = q_less_p_certificate(2.0, 1.0, &[1e-4, 1e-8]).unwrap();
        assert!((c.rows[0].left_side - 100.0).abs() <= 100.0 * 1e-15);
        assert!((c.rows[1].left_side - 1e4).abs() <= 1e4 * 1e-15);
        assert_eq!(c.trend, Trend::Increasing);
        assert!(q_less_p_certificate(2.0, 2.0, &[0.1]).is_err());
        assert!(q_less_p_certificate(2.0, 1.0, &[0.0]).is_err());
    }

    #[test]
    fn bloch_witness_on_lebesgue() {
        let cert = bloch_nonexistence_witness(&Measure::lebesgue(), &[64, 256, 1024], 0.3, &light()).unwrap();
        assert_eq!(cert.trend, Trend::Increasing);
        for row in &cert.rows {
            let per_log = row.left_side / row.parameter.ln();
            assert!((0.1..=10.0).contains(&per_log));
            let boundary = row.extras["boundary_term"];
            assert!(boundary > 0.5 && boundary < 2.0, "{boundary}");
            assert_eq!(row.extras["interior_term"], 0.0);
        }
    }

    #[test]
    fn bloch_interior_term_vanishes_for_small_support() {
        let cloud = corpus::builtin("interior_cloud").unwrap();
        let cert = bloch_nonexistence_witness(&cloud, &[16, 64, 256, 1024], 0.0, &light()).unwrap();
        let bounds: Vec<f64> = cert.rows.iter().map(|r| r.extras["interior_bound"]).collect();
        for row in &cert.rows {
            assert!(row.extras["interior_term"] <= row.extras["interior_bound"]);
            assert_eq!(row.extras["boundary_term"], 0.0);
        }
        assert!(bounds.windows(2).all(|w| w[1] < w[0]) && bounds[3] < 0.01, "{bounds:?}");
    }

    #[test]
    fn bloch_witness_against_zero_measure() {
        let cert = bloch_nonexistence_witness(&Measure::zero(), &[4, 8], 0.0, &light()).unwrap();
        for row in &cert.rows {
            assert_eq!(row.right_side, 0.0);
            assert!(row.left_side > 0.0 && row.ratio.is_infinite());
        }
        assert!(bloch_nonexistence_witness(&Measure::zero(), &[3], 0.0, &light()).is_err());
    }

    #[test]
    fn fejer_witness_matches_direct_sum() {
        for n in [4u32, 17, 100] {
            let u = (-1.0 / n as f64).exp();
            let direct: f64 = (1..=n)
                .map(|j| j as f64 * u.powi(j as i32 - 1) / (n - j + 1) as f64)
                .sum::<f64>()
                * (1.0 - u);
            assert_relative_eq!(fejer_witness(n, 0.37).unwrap(), direct, max_relative = 1e-12);
        }
    }

    #[test]
    fn triebel_growth_examples() {
        let cfg = QuadConfig::default();
        let g = triebel_s_growth(1, 0.0, &cfg).unwrap();
        assert_eq!((g.numeric, g.closed_form), (1.0, 1.0));
        assert_eq!(g.argmax, 0.0);
        let g = triebel_s_growth(2, 0.0, &cfg).unwrap();
        assert!((g.numeric - 0.5).abs() < 1e-12 && (g.closed_form - 0.5).abs() < 1e-15);
        assert!((g.argmax - 0.5).abs() < 1e-6);

        let n = 10_000.0f64;
        let s = 0.5;
        let g = triebel_s_growth(10_000, s, &cfg).unwrap();
        let reference = (s * (n - s).ln() - n * ((n - s) / (n - 1.0)).ln()).exp();
        let ratio = g.numeric / reference;
        assert!(ratio > 0.1 && ratio < 10.0, "{ratio}");
        assert!(triebel_s_closed_form(1_000_000, s) > 10.0 * triebel_s_closed_form(100, s));
        assert!(triebel_s_growth(0, 0.5, &cfg).is_err() && triebel_s_growth(5, 1.0, &cfg).is_err());
    }

    #[test]
    fn sweep_certificates_grow() {
        let cfg = light();
        let c = triebel_s_certificate(&[10, 100, 1000], 0.5, &cfg).unwrap();
        assert_eq!(c.trend, Trend::Increasing);
        let c = besov_blaschke_certificate(&[2, 4], &cfg).unwrap();
        assert!(c.rows[1].left_side >= c.rows[0].left_side);
        let c = triebel_q_certificate(1.5, 0.137, &[4, 6, 8], &cfg).unwrap();
        assert!(c.rows.windows(2).all(|w| w[1].left_side > w[0].left_side));
        let json = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
