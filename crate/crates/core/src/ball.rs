//! The unit ball of ℂ²: non-isotropic balls on the sphere, measures on the
//! closed ball, and Monte-Carlo checks of the kernel and ball conditions.
//! Surface measure `σ` is normalized to mass one.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};
use crate::quad::{sphere3_mc, McEstimate, QuadConfig};

/// Complex dimension of the ball.
pub const DIM: u32 = 2;
/// Slack allowed on `|z| ≤ 1` and on `|ζ| = 1`.
pub const SPHERE_TOLERANCE: f64 = 1e-12;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// A point of the closed unit ball of ℂ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl BallPoint {
    pub fn new(z1: Complex64, z2: Complex64) -> Result<Self> {
        let p = BallPoint { z1, z2 };
        let n = p.norm();
        if !n.is_finite() || n > 1.0 + SPHERE_TOLERANCE {
            return Err(Error::Domain(format!("|z| = {n} lies outside the closed unit ball")));
        }
        Ok(p)
    }

    /// A point of the sphere; inputs within [`SPHERE_TOLERANCE`] are
    /// renormalized.
    pub fn on_sphere(z1: Complex64, z2: Complex64) -> Result<Self> {
        let p = BallPoint { z1, z2 };
        let n = p.norm();
        if !((n - 1.0).abs() <= SPHERE_TOLERANCE) {
            return Err(Error::Domain(format!("|ζ| = {n} is not on the unit sphere")));
        }
        Ok(BallPoint { z1: z1 / n, z2: z2 / n })
    }

    pub fn from_array(z: [Complex64; 2]) -> Self {
        BallPoint { z1: z[0], z2: z[1] }
    }

    pub fn norm(&self) -> f64 {
        (self.z1.norm_sqr() + self.z2.norm_sqr()).sqrt()
    }

    /// `⟨z, w⟩ = z1 w̄1 + z2 w̄2`.
    pub fn inner(&self, w: &BallPoint) -> Complex64 {
        self.z1 * w.z1.conj() + self.z2 * w.z2.conj()
    }

    pub fn scaled(&self, r: f64) -> BallPoint {
        BallPoint {
            z1: self.z1 * r,
            z2: self.z2 * r,
        }
    }

    /// `U z` for a 2×2 matrix given by rows.
    pub fn mapped(&self, u: &[[Complex64; 2]; 2]) -> BallPoint {
        BallPoint {
            z1: u[0][0] * self.z1 + u[0][1] * self.z2,
            z2: u[1][0] * self.z1 + u[1][1] * self.z2,
        }
    }

    fn check_sphere(&self, what: &str) -> Result<()> {
        let n = self.norm();
        if !((n - 1.0).abs() <= SPHERE_TOLERANCE) {
            return Err(Error::Domain(format!("{what}: |ζ| = {n} is not on the unit sphere")));
        }
        Ok(())
    }
}

/// The non-isotropic metric `ρ(ζ, ξ) = |1 − ⟨ζ, ξ⟩|^{1/2}` on the sphere.
pub fn ns_metric(zeta: &BallPoint, xi: &BallPoint) -> Result<f64> {
    zeta.check_sphere("first point")?;
    xi.check_sphere("second point")?;
    Ok((ONE - zeta.inner(xi)).norm().sqrt())
}

/// `Q(ζ, δ) = {ξ ∈ ∂B : |1 − ⟨ζ, ξ⟩| ≤ δ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonIsotropicBall {
    center: BallPoint,
    delta: f64,
}

impl NonIsotropicBall {
    pub fn new(center: BallPoint, delta: f64) -> Result<Self> {
        center.check_sphere("ball center")?;
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::param(format!("ball radius δ = {delta} must be positive and finite")));
        }
        Ok(NonIsotropicBall { center, delta })
    }

    pub fn center(&self) -> BallPoint {
        self.center
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Membership of a sphere point.
    pub fn contains(&self, xi: &BallPoint) -> bool {
        (ONE - self.center.inner(xi)).norm() <= self.delta
    }

    /// Membership in the window `S_Q = {z : 1 − δ ≤ |z| ≤ 1, z/|z| ∈ Q}`.
    pub fn window_contains(&self, z: &BallPoint) -> bool {
        let r = z.norm();
        r >= 1.0 - self.delta && r > 0.0 && self.contains(&z.scaled(1.0 / r))
    }

    /// `σ(Q)`: for `d = 2`, `⟨ξ, ζ⟩` is uniform on the unit disc, so this is
    /// the area of `{w ∈ D : |1 − w| ≤ δ}` over `π`.
    pub fn sigma_exact(&self) -> f64 {
        let d = self.delta;
        if d >= 2.0 {
            return 1.0;
        }
        let lens = d * d * (d / 2.0).acos() + (1.0 - d * d / 2.0).acos() - 0.5 * d * (4.0 - d * d).sqrt();
        lens / PI
    }
}

/// `density · σ` restricted to `{ξ : Re⟨ξ, center⟩ ≥ min_re}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformCap {
    pub center: BallPoint,
    pub min_re: f64,
    pub density: f64,
}

impl UniformCap {
    pub fn contains(&self, xi: &BallPoint) -> bool {
        xi.inner(&self.center).re >= self.min_re
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallAtom {
    pub point: BallPoint,
    pub weight: f64,
}

/// A finite positive measure on the closed ball: interior atoms, sphere
/// atoms, a multiple of `σ`, and an optional uniform cap.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BallMeasure {
    interior_atoms: Vec<BallAtom>,
    sphere_atoms: Vec<BallAtom>,
    uniform_sphere_mass: f64,
    uniform_cap: Option<UniformCap>,
}

impl BallMeasure {
    pub fn new(
        interior_atoms: Vec<BallAtom>,
        sphere_atoms: Vec<BallAtom>,
        uniform_sphere_mass: f64,
        uniform_cap: Option<UniformCap>,
    ) -> Result<Self> {
        for (i, a) in interior_atoms.iter().enumerate() {
            check_weight(a.weight, || format!("interior_atoms[{i}].w"))?;
            if !(a.point.norm() < 1.0) {
                return Err(Error::ingest(
                    format!("interior_atoms[{i}]"),
                    format!("|z| = {} must be < 1", a.point.norm()),
                ));
            }
        }
        let mut sphere = Vec::with_capacity(sphere_atoms.len());
        for (i, a) in sphere_atoms.iter().enumerate() {
            check_weight(a.weight, || format!("sphere_atoms[{i}].w"))?;
            let point = BallPoint::on_sphere(a.point.z1, a.point.z2)
                .map_err(|e| Error::ingest(format!("sphere_atoms[{i}]"), e.to_string()))?;
            sphere.push(BallAtom { point, weight: a.weight });
        }
        check_weight(uniform_sphere_mass, || "uniform_sphere_mass".to_string())?;
        let uniform_cap = match uniform_cap {
            Some(cap) => {
                check_weight(cap.density, || "uniform_cap.density".to_string())?;
                if !cap.min_re.is_finite() {
                    return Err(Error::ingest("uniform_cap.min_re", "must be finite"));
                }
                let center = BallPoint::on_sphere(cap.center.z1, cap.center.z2)
                    .map_err(|e| Error::ingest("uniform_cap", e.to_string()))?;
                Some(UniformCap { center, ..cap })
            }
            None => None,
        };
        Ok(BallMeasure {
            interior_atoms,
            sphere_atoms: sphere,
            uniform_sphere_mass,
            uniform_cap,
        })
    }

    /// `c · σ`.
    pub fn uniform(mass: f64) -> Result<Self> {
        BallMeasure::new(Vec::new(), Vec::new(), mass, None)
    }

    pub fn interior_atoms(&self) -> &[BallAtom] {
        &self.interior_atoms
    }

    pub fn sphere_atoms(&self) -> &[BallAtom] {
        &self.sphere_atoms
    }

    pub fn uniform_sphere_mass(&self) -> f64 {
        self.uniform_sphere_mass
    }

    pub fn uniform_cap(&self) -> Option<&UniformCap> {
        self.uniform_cap.as_ref()
    }

    fn has_continuous_part(&self) -> bool {
        self.uniform_sphere_mass > 0.0 || self.uniform_cap.is_some_and(|c| c.density > 0.0)
    }

    /// Density of the continuous part with respect to `σ` at a sphere point.
    fn continuous_density(&self, xi: &BallPoint) -> f64 {
        let cap = match &self.uniform_cap {
            Some(c) if c.contains(xi) => c.density,
            _ => 0.0,
        };
        self.uniform_sphere_mass + cap
    }

    /// The image under a 2×2 matrix (meant to be unitary) applied to every
    /// support point and to the cap center.
    pub fn mapped(&self, u: &[[Complex64; 2]; 2]) -> Result<Self> {
        let map = |atoms: &[BallAtom]| -> Vec<BallAtom> {
            atoms
                .iter()
                .map(|a| BallAtom {
                    point: a.point.mapped(u),
                    weight: a.weight,
                })
                .collect()
        };
        let cap = self.uniform_cap.map(|c| UniformCap {
            center: c.center.mapped(u),
            ..c
        });
        BallMeasure::new(
            map(&self.interior_atoms),
            map(&self.sphere_atoms),
            self.uniform_sphere_mass,
            cap,
        )
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::ingest("document", e.to_string()))?;
        let serde_json::Value::Object(fields) = value else {
            return Err(Error::ingest("document", "expected a JSON object"));
        };
        let mut doc = BallMeasureDoc::default();
        for (key, v) in fields {
            let bad = |e: serde_json::Error| Error::ingest(key.as_str(), e.to_string());
            match key.as_str() {
                "interior_atoms" => doc.interior_atoms = serde_json::from_value(v).map_err(bad)?,
                "sphere_atoms" => doc.sphere_atoms = serde_json::from_value(v).map_err(bad)?,
                "uniform_sphere_mass" => doc.uniform_sphere_mass = serde_json::from_value(v).map_err(bad)?,
                "uniform_cap" => doc.uniform_cap = serde_json::from_value(v).map_err(bad)?,
                _ => return Err(Error::ingest(key.as_str(), "unknown field")),
            }
        }
        let atoms = |list: Vec<BallAtomDoc>| -> Vec<BallAtom> {
            list.into_iter()
                .map(|a| BallAtom {
                    point: BallPoint {
                        z1: Complex64::new(a.re1, a.im1),
                        z2: Complex64::new(a.re2, a.im2),
                    },
                    weight: a.w,
                })
                .collect()
        };
        let cap = doc.uniform_cap.map(|c| UniformCap {
            center: BallPoint {
                z1: Complex64::new(c.re1, c.im1),
                z2: Complex64::new(c.re2, c.im2),
            },
            min_re: c.min_re,
            density: c.density,
        });
        BallMeasure::new(
            atoms(doc.interior_atoms),
            atoms(doc.sphere_atoms),
            doc.uniform_sphere_mass,
            cap,
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ingest(path.display().to_string(), e.to_string()))?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let atoms = |list: &[BallAtom]| -> Vec<BallAtomDoc> {
            list.iter()
                .map(|a| BallAtomDoc {
                    re1: a.point.z1.re,
                    im1: a.point.z1.im,
                    re2: a.point.z2.re,
                    im2: a.point.z2.im,
                    w: a.weight,
                })
                .collect()
        };
        let doc = BallMeasureDoc {
            interior_atoms: atoms(&self.interior_atoms),
            sphere_atoms: atoms(&self.sphere_atoms),
            uniform_sphere_mass: self.uniform_sphere_mass,
            uniform_cap: self.uniform_cap.map(|c| CapDoc {
                re1: c.center.z1.re,
                im1: c.center.z1.im,
                re2: c.center.z2.re,
                im2: c.center.z2.im,
                min_re: c.min_re,
                density: c.density,
            }),
        };
        serde_json::to_value(doc).expect("ball measure documents always serialize")
    }
}

fn check_weight(w: f64, field: impl FnOnce() -> String) -> Result<()> {
    if !w.is_finite() || w < 0.0 {
        return Err(Error::ingest(field(), format!("weight {w} must be finite and ≥ 0")));
    }
    Ok(())
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BallMeasureDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    interior_atoms: Vec<BallAtomDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    sphere_atoms: Vec<BallAtomDoc>,
    #[serde(default)]
    uniform_sphere_mass: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    uniform_cap: Option<CapDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BallAtomDoc {
    re1: f64,
    im1: f64,
    re2: f64,
    im2: f64,
    w: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CapDoc {
    re1: f64,
    im1: f64,
    re2: f64,
    im2: f64,
    min_re: f64,
    density: f64,
}

/// `μ(Q)` (or `μ(S_Q)`) against `σ(Q)`, both with Monte-Carlo errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionMass {
    pub mass: f64,
    /// Standard error of `mass`, from the continuous part only.
    pub std_error: f64,
    pub sigma: McEstimate,
    pub sigma_exact: f64,
}

impl RegionMass {
    pub fn ratio(&self) -> f64 {
        self.mass / self.sigma.estimate
    }
}

/// Mass of the non-isotropic ball `Q`, or of its window `S_Q` of depth `δ`.
/// Atoms are summed exactly; the continuous part and `σ(Q)` are sampled
/// with `cfg.n_mc` points.
pub fn ball_region_mass(mu: &BallMeasure, q: &NonIsotropicBall, with_window: bool, cfg: &QuadConfig) -> Result<RegionMass> {
    let mut mass = 0.0;
    for a in &mu.sphere_atoms {
        if q.contains(&a.point) {
            mass += a.weight;
        }
    }
    if with_window {
        for a in &mu.interior_atoms {
            if q.window_contains(&a.point) {
                mass += a.weight;
            }
        }
    }
    let sigma = sphere3_mc(|z| if q.contains(&BallPoint::from_array(z)) { 1.0 } else { 0.0 }, cfg)?;
    let mut std_error = 0.0;
    if mu.has_continuous_part() {
        let cont = sphere3_mc(
            |z| {
                let xi = BallPoint::from_array(z);
                if q.contains(&xi) {
                    mu.continuous_density(&xi)
                } else {
                    0.0
                }
            },
            cfg,
        )?;
        mass += cont.estimate;
        std_error = cont.std_error;
    }
    Ok(RegionMass {
        mass,
        std_error,
        sigma,
        sigma_exact: q.sigma_exact(),
    })
}

/// `‖k_w^l‖_{H^p}` with `k_w^l(z) = (1 − ⟨z, w⟩)^{-2l}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallKernelNorm {
    pub norm: f64,
    /// Estimate of `‖k_w^l‖_p^p = ∫ |1 − ⟨ζ, w⟩|^{-2pl} dσ`.
    pub pth_power: McEstimate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

pub fn ball_kernel_norm(w: &BallPoint, l: u32, p: f64, cfg: &QuadConfig) -> Result<BallKernelNorm> {
    if !(p > 0.0 && p.is_finite()) || l == 0 {
        return Err(Error::param(format!("need p > 0 and l ≥ 1 (got p = {p}, l = {l})")));
    }
    if !(w.norm() < 1.0) {
        return Err(Error::Domain(format!("kernel point |w| = {} must be < 1", w.norm())));
    }
    let exponent = p * (l * DIM) as f64;
    let warning = (exponent <= DIM as f64).then(|| {
        format!("pld = {exponent} ≤ d = {DIM}: the norm stays bounded and the (1−|w|²) asymptotics do not apply")
    });
    if w.z1 == Complex64::default() && w.z2 == Complex64::default() {
        return Ok(BallKernelNorm {
            norm: 1.0,
            pth_power: McEstimate {
                estimate: 1.0,
                std_error: 0.0,
                samples: 0,
            },
            warning,
        });
    }
    let est = sphere3_mc(|z| kernel_pow(w, &BallPoint::from_array(z), exponent), cfg)?;
    Ok(BallKernelNorm {
        norm: est.estimate.powf(1.0 / p),
        pth_power: est,
        warning,
    })
}

/// `|1 − ⟨z, w⟩|^{-e}`.
fn kernel_pow(w: &BallPoint, z: &BallPoint, e: f64) -> f64 {
    let s = (ONE - z.inner(w)).norm_sqr();
    if e == 4.0 {
        1.0 / (s * s)
    } else {
        s.powf(-0.5 * e)
    }
}

/// Outcome of [`ball_kernel_test_constant`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallKernelScan {
    pub constant: f64,
    /// Propagated standard error of the minimizing ratio.
    pub std_error: f64,
    pub argmin: BallPoint,
}

/// Per-point result of [`ball_kernel_ratios`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallKernelRatio {
    pub w: BallPoint,
    pub ratio: f64,
    pub std_error: f64,
}

/// `∫ |k_w^l|^p dμ / ‖k_w^l‖_p^p` at each grid point. Numerator and
/// denominator use independent sample streams (seeds derived from
/// `cfg.seed` and the grid index).
pub fn ball_kernel_ratios(mu: &BallMeasure, p: f64, l: u32, w_grid: &[BallPoint], cfg: &QuadConfig) -> Result<Vec<BallKernelRatio>> {
    if !(p * l as f64 > 1.0) {
        return Err(Error::param(format!("kernel tests need pl > 1 (got p = {p}, l = {l})")));
    }
    let exponent = p * (l * DIM) as f64;
    w_grid
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let seeded = |k: u64| QuadConfig {
                seed: cfg.seed.wrapping_add(2 * i as u64 + k),
                ..*cfg
            };
            let norm = ball_kernel_norm(w, l, p, &seeded(1))?.pth_power;
            let mut num = 0.0;
            for a in mu.interior_atoms.iter().chain(&mu.sphere_atoms) {
                num += a.weight * kernel_pow(w, &a.point, exponent);
            }
            let mut num_err = 0.0;
            if mu.has_continuous_part() {
                let cont = sphere3_mc(
                    |z| {
                        let xi = BallPoint::from_array(z);
                        mu.continuous_density(&xi) * kernel_pow(w, &xi, exponent)
                    },
                    &seeded(2),
                )?;
                num += cont.estimate;
                num_err = cont.std_error;
            }
            let ratio = check_finite(num / norm.estimate, || format!("ball kernel test at w = {w:?}"))?;
            let rel = (num_err / num.max(f64::MIN_POSITIVE)).hypot(norm.std_error / norm.estimate);
            Ok(BallKernelRatio {
                w: *w,
                ratio,
                std_error: ratio * rel,
            })
        })
        .collect()
}

/// Minimum of [`ball_kernel_ratios`] over the grid.
pub fn ball_kernel_test_constant(mu: &BallMeasure, p: f64, l: u32, w_grid: &[BallPoint], cfg: &QuadConfig) -> Result<BallKernelScan> {
    if w_grid.is_empty() {
        return Err(Error::param("kernel test grid is empty"));
    }
    let best = ball_kernel_ratios(mu, p, l, w_grid, cfg)?
        .into_iter()
        .min_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .expect("grid is nonempty");
    Ok(BallKernelScan {
        constant: best.ratio,
        std_error: best.std_error,
        argmin: best.w,
    })
}

/// Fixed sphere directions used by [`ball_w_grid`].
pub fn ball_directions() -> [BallPoint; 8] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [
        BallPoint { z1: c(1.0, 0.0), z2: c(0.0, 0.0) },
        BallPoint { z1: c(-1.0, 0.0), z2: c(0.0, 0.0) },
        BallPoint { z1: c(0.0, 0.0), z2: c(1.0, 0.0) },
        BallPoint { z1: c(0.0, 0.0), z2: c(0.0, -1.0) },
        BallPoint { z1: c(0.0, 1.0), z2: c(0.0, 0.0) },
        BallPoint { z1: c(0.0, -1.0), z2: c(0.0, 0.0) },
        BallPoint { z1: c(h, 0.0), z2: c(h, 0.0) },
        BallPoint { z1: c(-h, 0.0), z2: c(0.0, -h) },
    ]
}

/// `radius × direction` for every pair.
pub fn ball_w_grid(radii: &[f64], directions: &[BallPoint]) -> Result<Vec<BallPoint>> {
    let mut out = Vec::with_capacity(radii.len() * directions.len());
    for &r in radii {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::param(format!("grid radius {r} outside [0, 1)")));
        }
        out.extend(directions.iter().map(|d| d.scaled(r)));
    }
    Ok(out)
}
