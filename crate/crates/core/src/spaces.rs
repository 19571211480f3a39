//! (Quasi)norm evaluators: Hardy, Bloch, BMOA, Triebel–Lizorkin and Besov
//! spaces of analytic functions, and the radial q-variation functional.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disc::{circle_point, dyadic_arcs, MAX_DYADIC_LEVEL};
use crate::error::{check_finite, Error, Result};
use crate::funcs::HoloFunction;
use crate::quad::{golden_max, graded_radii, try_radial_sup, QuadConfig, RadialRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Hardy,
    Bloch,
    Bmoa,
    Triebel,
    Besov,
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hardy" => Ok(SpaceKind::Hardy),
            "bloch" => Ok(SpaceKind::Bloch),
            "bmoa" => Ok(SpaceKind::Bmoa),
            "triebel" => Ok(SpaceKind::Triebel),
            "besov" => Ok(SpaceKind::Besov),
            other => Err(Error::param(format!(
                "unknown space `{other}` (hardy, bloch, bmoa, triebel, besov)"
            ))),
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SpaceKind::Hardy => "hardy",
            SpaceKind::Bloch => "bloch",
            SpaceKind::Bmoa => "bmoa",
            SpaceKind::Triebel => "triebel",
            SpaceKind::Besov => "besov",
        };
        f.write_str(name)
    }
}

/// Which (quasi)norm to evaluate. `q = ∞` is encoded as `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    pub s: f64,
    pub p: f64,
    #[serde(with = "crate::report::extended_float")]
    pub q: f64,
    pub m: usize,
}

impl SpaceSpec {
    pub fn hardy(p: f64) -> Result<Self> {
        Self::new(SpaceKind::Hardy, 0.0, p, 2.0, None)
    }

    pub fn bloch() -> Self {
        SpaceSpec {
            kind: SpaceKind::Bloch,
            s: 0.0,
            p: f64::INFINITY,
            q: f64::INFINITY,
            m: 1,
        }
    }

    pub fn bmoa() -> Self {
        SpaceSpec {
            kind: SpaceKind::Bmoa,
            ..Self::bloch()
        }
    }

    pub fn triebel(s: f64, p: f64, q: f64, m: Option<usize>) -> Result<Self> {
        Self::new(SpaceKind::Triebel, s, p, q, m)
    }

    pub fn besov(s: f64, p: f64, q: f64, m: Option<usize>) -> Result<Self> {
        Self::new(SpaceKind::Besov, s, p, q, m)
    }

    /// Builds and validates a spec; `m` defaults to `floor(s) + 1`.
    pub fn new(kind: SpaceKind, s: f64, p: f64, q: f64, m: Option<usize>) -> Result<Self> {
        let spec = match kind {
            SpaceKind::Bloch => Self::bloch(),
            SpaceKind::Bmoa => Self::bmoa(),
            _ => SpaceSpec {
                kind,
                s,
                p,
                q,
                m: m.unwrap_or_else(|| default_order(s)),
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            SpaceKind::Bloch | SpaceKind::Bmoa => Ok(()),
            SpaceKind::Hardy => check_exponent("p", self.p),
            SpaceKind::Triebel | SpaceKind::Besov => {
                check_exponent("p", self.p)?;
                if !(self.q > 0.0) {
                    return Err(Error::param(format!("q = {} must be > 0 (or inf)", self.q)));
                }
                if !(self.s >= 0.0) || !self.s.is_finite() {
                    return Err(Error::param(format!("smoothness s = {} must be finite and ≥ 0", self.s)));
                }
                if self.m < 1 || (self.m as f64) <= self.s {
                    return Err(Error::param(format!(
                        "derivative order m = {} must satisfy m ≥ 1 and m > s = {}",
                        self.m, self.s
                    )));
                }
                Ok(())
            }
        }
    }
}

fn default_order(s: f64) -> usize {
    if s.is_finite() && s >= 0.0 {
        s.floor() as usize + 1
    } else {
        1
    }
}

fn check_exponent(name: &str, p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("{name} = {p} must be finite and > 0")))
    }
}

/// Full quasinorm, or the seminorm without the `Σ_{j<m} |f^{(j)}(0)|` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NormPart {
    #[default]
    Full,
    Seminorm,
}

/// One evaluation in a refinement history.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub n_circle: usize,
    pub l_radial: usize,
    pub k_panel: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    /// True when `value` is a supremum over a finite set, hence a lower bound.
    pub lower_bound_certified: bool,
    pub diagnostics: Vec<Refinement>,
}

impl NormResult {
    fn new(value: f64, certified: bool, n_circle: usize, cfg: &QuadConfig) -> Self {
        NormResult {
            value,
            lower_bound_certified: certified,
            diagnostics: vec![Refinement {
                n_circle,
                l_radial: cfg.l_radial,
                k_panel: cfg.k_panel,
                value,
            }],
        }
    }

    /// Relative change between the last two refinement steps.
    pub fn refinement_change(&self) -> Option<f64> {
        let n = self.diagnostics.len();
        (n >= 2).then(|| {
            let (a, b) = (self.diagnostics[n - 2].value, self.diagnostics[n - 1].value);
            (b - a).abs() / b.abs().max(f64::MIN_POSITIVE)
        })
    }
}

/// `M_p(f, r) = (∫_0^1 |f(re^{2πit})|^p dt)^{1/p}`.
pub fn integral_mean(f: &HoloFunction, p: f64, r: f64, cfg: &QuadConfig) -> Result<f64> {
    check_exponent("p", p)?;
    cfg.validate()?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::param(format!("radius {r} outside [0, 1]")));
    }
    let n = f.circle_nodes(r, cfg.n_circle);
    Ok(f.circle_power_mean(0, p, r, n)?.powf(1.0 / p))
}

/// `‖f‖_{H^p}`, evaluated on the boundary circle.
pub fn hardy_norm(f: &HoloFunction, p: f64, cfg: &QuadConfig) -> Result<NormResult> {
    check_exponent("p", p)?;
    cfg.validate()?;
    let n = f.circle_nodes(1.0, cfg.n_circle);
    let value = f.circle_power_mean(0, p, 1.0, n)?.powf(1.0 / p);
    Ok(NormResult::new(value, false, n, cfg))
}

/// `|f(0)| + sup_z (1 − |z|²)|f'(z)|` over circle nodes × graded radii, refined
/// by alternating golden-section searches around the best node.
pub fn bloch_norm(f: &HoloFunction, cfg: &QuadConfig) -> Result<NormResult> {
    f.require_derivative(1)?;
    cfg.validate()?;
    let n = f.circle_nodes(1.0, cfg.n_circle);
    let radii = graded_radii(cfg);
    let weighted = |r: f64, t: f64| -> Result<f64> {
        let v = (1.0 - r * r) * f.eval(1, circle_point(t) * r).norm();
        check_finite(v, || format!("r = {r}, t = {t}"))
    };
    let (mut best, mut best_r, mut best_j) = (f64::NEG_INFINITY, 0, 0);
    for (i, &r) in radii.iter().enumerate() {
        for j in 0..n {
            let v = weighted(r, j as f64 / n as f64)?;
            if v > best {
                (best, best_r, best_j) = (v, i, j);
            }
        }
    }
    let mut r = radii[best_r];
    let mut t = best_j as f64 / n as f64;
    let r_lo = radii[best_r.saturating_sub(1)];
    let r_hi = radii[(best_r + 1).min(radii.len() - 1)];
    let dt = 1.0 / n as f64;
    for _ in 0..3 {
        let sr = golden_max(|x| weighted(x, t), r_lo, r_hi)?;
        if sr.value > best {
            best = sr.value;
            r = sr.argmax;
        }
        let st = golden_max(|x| weighted(r, x), t - dt, t + dt)?;
        if st.value > best {
            best = st.value;
            t = st.argmax;
        }
    }
    let value = f.value(Complex64::new(0.0, 0.0)).norm() + best;
    Ok(NormResult::new(value, true, n, cfg))
}

/// `sup_I (1/|I|) ∫_I |f − f_I| dm` over both dyadic families up to
/// `level_max`, from boundary samples.
pub fn bmoa_norm(f: &HoloFunction, cfg: &QuadConfig, level_max: u32) -> Result<NormResult> {
    cfg.validate()?;
    if level_max > MAX_DYADIC_LEVEL {
        return Err(Error::param(format!("level_max = {level_max} > {MAX_DYADIC_LEVEL}")));
    }
    let n = f
        .circle_nodes(1.0, cfg.n_circle)
        .max(16usize << level_max)
        .next_power_of_two();
    let samples = f.boundary_samples(n);
    for (j, v) in samples.iter().enumerate() {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::eval(format!("t = {}", j as f64 / n as f64), "non-finite boundary value"));
        }
    }
    let mut best = 0.0f64;
    for arc in dyadic_arcs(level_max)? {
        let start = (arc.start() * n as f64).round() as usize;
        let count = (arc.length() * n as f64).round() as usize;
        let idx = |i: usize| (start + i) % n;
        let mean: Complex64 = (0..count).map(|i| samples[idx(i)]).sum::<Complex64>() / count as f64;
        let osc = (0..count).map(|i| (samples[idx(i)] - mean).norm()).sum::<f64>() / count as f64;
        best = best.max(osc);
    }
    Ok(NormResult::new(best, true, n, cfg))
}

fn check_order(f: &HoloFunction, spec: &SpaceSpec, kind: SpaceKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::param(format!("expected a {kind} spec, got {}", spec.kind)));
    }
    spec.validate()?;
    f.require_derivative(spec.m)
}

fn taylor_head(f: &HoloFunction, m: usize) -> f64 {
    (0..m).map(|j| f.eval(j, Complex64::new(0.0, 0.0)).norm()).sum()
}

/// The Triebel–Lizorkin quasinorm
/// `(∫_0^1 (∫_0^1 |f^{(m)}(re^{2πit})|^q (1−r)^{(m−s)q−1} dr)^{p/q} dt)^{1/p}`
/// (`q = ∞`: the inner integral becomes `sup_r |f^{(m)}|(1−r)^{m−s}`), plus
/// `Σ_{j<m} |f^{(j)}(0)|` unless only the seminorm is asked for.
pub fn triebel_norm(f: &HoloFunction, spec: &SpaceSpec, part: NormPart, cfg: &QuadConfig) -> Result<NormResult> {
    check_order(f, spec, SpaceKind::Triebel)?;
    cfg.validate()?;
    let (m, s, p, q) = (spec.m, spec.s, spec.p, spec.q);
    let n = f.circle_nodes(1.0, cfg.n_circle);
    let rule = if q.is_finite() {
        Some(RadialRule::new((m as f64 - s) * q - 1.0, cfg)?)
    } else {
        None
    };
    let mut outer = 0.0;
    for j in 0..n {
        let t = j as f64 / n as f64;
        let e = circle_point(t);
        let inner = match &rule {
            Some(rule) => rule
                .integrate(|r| f.eval(m, e * r).norm().powf(q))?
                .powf(p / q),
            None => try_radial_sup(
                |r| Ok(f.eval(m, e * r).norm() * (1.0 - r).powf(m as f64 - s)),
                cfg,
            )?
            .value
            .powf(p),
        };
        outer += check_finite(inner, || format!("t = {t}"))?;
    }
    let seminorm = (outer / n as f64).powf(1.0 / p);
    let value = match part {
        NormPart::Full => seminorm + taylor_head(f, m),
        NormPart::Seminorm => seminorm,
    };
    Ok(NormResult::new(value, !q.is_finite(), n, cfg))
}

/// The Besov quasinorm
/// `(∫_0^1 (M_p(f^{(m)}, r)(1−r)^{m−s−1/q})^q dr)^{1/q}`
/// (`q = ∞`: `sup_r M_p(f^{(m)}, r)(1−r)^{m−s}`), plus `Σ_{j<m} |f^{(j)}(0)|`
/// unless only the seminorm is asked for.
pub fn besov_norm(f: &HoloFunction, spec: &SpaceSpec, part: NormPart, cfg: &QuadConfig) -> Result<NormResult> {
    check_order(f, spec, SpaceKind::Besov)?;
    cfg.validate()?;
    let (m, s, p, q) = (spec.m, spec.s, spec.p, spec.q);
    let mut max_nodes = 0;
    let mut circle_norm = |r: f64| -> Result<f64> {
        let n = f.circle_nodes(r, cfg.n_circle);
        max_nodes = max_nodes.max(n);
        Ok(f.circle_power_mean(m, p, r, n)?.powf(1.0 / p))
    };
    let seminorm = if q.is_finite() {
        let rule = RadialRule::new((m as f64 - s) * q - 1.0, cfg)?;
        rule.try_integrate(|r| Ok(circle_norm(r)?.powf(q)))?.powf(1.0 / q)
    } else {
        try_radial_sup(|r| Ok(circle_norm(r)? * (1.0 - r).powf(m as f64 - s)), cfg)?.value
    };
    let value = match part {
        NormPart::Full => seminorm + taylor_head(f, m),
        NormPart::Seminorm => seminorm,
    };
    Ok(NormResult::new(value, !q.is_finite(), max_nodes, cfg))
}

/// Evaluates the norm named by `spec`; `level_max` is used by BMOA only.
pub fn norm(f: &HoloFunction, spec: &SpaceSpec, part: NormPart, level_max: u32, cfg: &QuadConfig) -> Result<NormResult> {
    spec.validate()?;
    match spec.kind {
        SpaceKind::Hardy => hardy_norm(f, spec.p, cfg),
        SpaceKind::Bloch => bloch_norm(f, cfg),
        SpaceKind::Bmoa => bmoa_norm(f, cfg, level_max),
        SpaceKind::Triebel => triebel_norm(f, spec, part, cfg),
        SpaceKind::Besov => besov_norm(f, spec, part, cfg),
    }
}

/// [`norm`] at `cfg` and again at `cfg.refined()`, keeping both in the
/// diagnostics; the reported value is the refined one.
pub fn norm_with_refinement(
    f: &HoloFunction,
    spec: &SpaceSpec,
    part: NormPart,
    level_max: u32,
    cfg: &QuadConfig,
) -> Result<NormResult> {
    let coarse = norm(f, spec, part, level_max, cfg)?;
    let mut fine = norm(f, spec, part, level_max, &cfg.refined())?;
    let mut history = coarse.diagnostics;
    history.append(&mut fine.diagnostics);
    fine.diagnostics = history;
    Ok(fine)
}

/// `∫_0^{r_max} |f'(re^{2πit})|^q (1−r)^{q−1} dr` for `r_max < 1`.
pub fn q_variation(f: &HoloFunction, q: f64, t: f64, r_max: f64, cfg: &QuadConfig) -> Result<f64> {
    f.require_derivative(1)?;
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::param(format!("q = {q} must be finite and ≥ 1")));
    }
    let e = circle_point(t);
    RadialRule::truncated(q - 1.0, r_max, cfg)?.integrate(|r| f.eval(1, e * r).norm().powf(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn shipped() -> Vec<HoloFunction> {
        vec![
            HoloFunction::polynomial(vec![c(1.0, 0.0), c(0.5, -0.5), c(0.0, 0.25)]).unwrap(),
            HoloFunction::kernel(c(0.5, 0.3), 2).unwrap(),
            HoloFunction::fejer(16, 0.1).unwrap(),
            HoloFunction::lacunary(1.5, 6).unwrap(),
            HoloFunction::blaschke(4).unwrap(),
            HoloFunction::monomial(5),
        ]
    }

    #[test]
    fn hardy_examples() {
        let one = HoloFunction::polynomial(vec![c(1.0, 0.0)]).unwrap();
        for p in [0.5, 1.0, 2.0, 3.7] {
            assert_relative_eq!(hardy_norm(&one, p, &cfg()).unwrap().value, 1.0, max_relative = 1e-14);
            let v = hardy_norm(&HoloFunction::monomial(9), p, &cfg()).unwrap().value;
            assert_relative_eq!(v, 1.0, max_relative = 1e-13);
        }
        let k = HoloFunction::kernel(c(0.9, 0.0), 1).unwrap();
        assert!((hardy_norm(&k, 2.0, &cfg()).unwrap().value - 2.294157338705618).abs() < 1e-8);
        assert!(hardy_norm(&one, 0.0, &cfg()).is_err());
    }

    #[test]
    fn parseval() {
        let coeffs = vec![c(0.3, -1.0), c(2.0, 0.5), c(0.0, 0.0), c(-0.7, 0.1), c(0.01, 0.4)];
        let oracle: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        let f = HoloFunction::polynomial(coeffs).unwrap();
        let v = hardy_norm(&f, 2.0, &cfg()).unwrap().value;
        assert!((v * v - oracle).abs() < 1e-10);
    }

    #[test]
    fn bloch_examples() {
        let v = bloch_norm(&HoloFunction::monomial(1), &cfg()).unwrap();
        assert_relative_eq!(v.value, 1.0, max_relative = 1e-12);
        assert!(v.lower_bound_certified);
        let v = bloch_norm(&HoloFunction::monomial(2), &cfg()).unwrap().value;
        assert!((v - 4.0 / (3.0 * 3f64.sqrt())).abs() < 1e-6, "{v}");
    }

    #[test]
    fn bloch_of_fejer_dominates_the_witness() {
        let n = 256u32;
        let nf = n as f64;
        let f = HoloFunction::fejer(n, 0.0).unwrap();
        let witness = (1.0 - (-1.0 / nf).exp())
            * (1..=n)
                .map(|j| j as f64 * (-((j - 1) as f64) / nf).exp() / (n - j + 1) as f64)
                .sum::<f64>();
        let v = bloch_norm(&f, &cfg()).unwrap().value;
        assert!(v >= witness * (1.0 - 1e-12), "{v} < {witness}");
        let ratio = v / nf.ln();
        assert!((0.1..=10.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn bmoa_examples() {
        let konst = HoloFunction::polynomial(vec![c(2.0, -1.0)]).unwrap();
        assert!(bmoa_norm(&konst, &cfg(), 8).unwrap().value < 1e-14);
        let v = bmoa_norm(&HoloFunction::monomial(1), &cfg(), 10).unwrap().value;
        assert!((v - 1.0).abs() < 1e-3, "{v}");
        let f = HoloFunction::fejer(8, 0.2).unwrap();
        let a = bmoa_norm(&f, &cfg(), 6).unwrap().value;
        let b = bmoa_norm(&f.clone().scaled(c(0.0, -3.0)), &cfg(), 6).unwrap().value;
        assert_relative_eq!(b, 3.0 * a, max_relative = 1e-12);
    }

    #[test]
    fn triebel_examples() {
        let spec = SpaceSpec::triebel(0.0, 2.0, f64::INFINITY, Some(1)).unwrap();
        let v = triebel_norm(&HoloFunction::monomial(1), &spec, NormPart::Seminorm, &cfg()).unwrap();
        assert_relative_eq!(v.value, 1.0, max_relative = 1e-12);
        let v = triebel_norm(&HoloFunction::monomial(4), &spec, NormPart::Seminorm, &cfg()).unwrap();
        assert!((v.value - 0.421875).abs() < 1e-8);
        // Monomial(1) with s = 0, q = 2, p = 2: ∫(1-r) dr = 1/2, plus |f(0)| = 0
        let spec = SpaceSpec::triebel(0.0, 2.0, 2.0, None).unwrap();
        let v = triebel_norm(&HoloFunction::monomial(1), &spec, NormPart::Full, &cfg()).unwrap();
        assert_relative_eq!(v.value, 0.5f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn besov_examples() {
        let konst = HoloFunction::polynomial(vec![c(5.0, 0.0)]).unwrap();
        let spec = SpaceSpec::besov(0.0, 2.0, 2.0, None).unwrap();
        assert_eq!(besov_norm(&konst, &spec, NormPart::Seminorm, &cfg()).unwrap().value, 0.0);
        assert_eq!(besov_norm(&konst, &spec, NormPart::Full, &cfg()).unwrap().value, 5.0);
        // z^2, p = 2: M_2(f', r) = 2r; ∫ 4r^2 (1-r) dr = 1/3
        let v = besov_norm(&HoloFunction::monomial(2), &spec, NormPart::Seminorm, &cfg()).unwrap();
        assert_relative_eq!(v.value, (1.0f64 / 3.0).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn spec_validation() {
        assert!(SpaceSpec::triebel(1.0, 2.0, 2.0, Some(1)).is_err());
        assert_eq!(SpaceSpec::triebel(1.5, 2.0, 2.0, None).unwrap().m, 2);
        assert!(SpaceSpec::besov(0.0, 2.0, 0.0, None).is_err());
        let bl = HoloFunction::blaschke(3).unwrap();
        let spec = SpaceSpec::besov(1.2, 2.0, 2.0, None).unwrap();
        assert!(matches!(besov_norm(&bl, &spec, NormPart::Full, &cfg()), Err(Error::Capability(_))));
        assert!(matches!(
            triebel_norm(&bl, &SpaceSpec::hardy(2.0).unwrap(), NormPart::Full, &cfg()),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn q_variation_examples() {
        let konst = HoloFunction::polynomial(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(q_variation(&konst, 2.0, 0.3, 0.9, &cfg()).unwrap(), 0.0);
        let r_max = 1.0 - 2f64.powi(-30);
        let v = q_variation(&HoloFunction::monomial(1), 2.0, 0.3, r_max, &cfg()).unwrap();
        assert!((v - 0.5).abs() < 1e-9);
        assert!(q_variation(&konst, 2.0, 0.0, 1.0, &cfg()).is_err());
    }

    #[test]
    fn integral_means_increase_with_radius() {
        for f in shipped() {
            for p in [1.0, 2.0, 4.0] {
                let means: Vec<f64> = [0.5, 0.9, 0.99]
                    .iter()
                    .map(|&r| integral_mean(&f, p, r, &cfg()).unwrap())
                    .collect();
                assert!(means[0] <= means[1] * (1.0 + 1e-12) && means[1] <= means[2] * (1.0 + 1e-12), "{f} p={p}: {means:?}");
            }
        }
    }

    #[test]
    fn norms_are_rotation_invariant_and_homogeneous() {
        let c0 = QuadConfig {
            n_circle: 1024,
            l_radial: 12,
            k_panel: 8,
            ..cfg()
        };
        let specs = [
            SpaceSpec::hardy(1.5).unwrap(),
            SpaceSpec::triebel(0.5, 2.0, 2.0, None).unwrap(),
            SpaceSpec::besov(0.0, 2.0, 2.0, None).unwrap(),
            SpaceSpec::triebel(0.0, 1.0, f64::INFINITY, None).unwrap(),
        ];
        for f in [HoloFunction::kernel(c(0.3, 0.4), 1).unwrap(), HoloFunction::fejer(6, 0.3).unwrap()] {
            for spec in &specs {
                let base = norm(&f, spec, NormPart::Full, 6, &c0).unwrap().value;
                let aligned = norm(&f.clone().rotated(3.0 / 1024.0), spec, NormPart::Full, 6, &c0).unwrap().value;
                assert_relative_eq!(aligned, base, max_relative = 1e-12);
                let any = norm(&f.clone().rotated(0.123_456), spec, NormPart::Full, 6, &c0).unwrap().value;
                assert_relative_eq!(any, base, max_relative = 1e-6);
                let scaled = norm(&f.clone().scaled(c(-1.5, 2.0)), spec, NormPart::Full, 6, &c0).unwrap().value;
                assert_relative_eq!(scaled, 2.5 * base, max_relative = 1e-12);
            }
        }
    }
}
