//! Analytic test functions with closed-form derivatives.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::disc::circle_point;
use crate::error::{Error, Result};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Largest circle rule handed out by [`HoloFunction::circle_nodes`].
pub const MAX_CIRCLE_NODES: usize = 1 << 22;

/// An analytic function on the disc that can be evaluated together with its
/// derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum HoloFunction {
    /// `Σ c_k z^k`.
    Polynomial(Vec<Complex64>),
    /// `(1 − λ̄z)^{-l}`.
    KernelPower { lambda: Complex64, power: u32 },
    /// `Σ_{j=1}^{n} z^j e^{2πi(n−j+1)φ} / (n−j+1)`, phase `φ` in turns.
    Fejer { n: u32, phi: f64 },
    /// `Σ_{k=1}^{N} z^{2^k} / k^{1/q}`.
    Lacunary { q: f64, terms: u32 },
    /// `Π_{k=1}^{n} (z^{2^k} − a)/(1 − a z^{2^k})` with `a = 1 − 1/n`.
    Blaschke { n: u32 },
    /// `z^n`.
    Monomial { n: u32 },
    /// `c · g(e^{2πiθ} z)`.
    Transformed {
        scale: Complex64,
        rotation: f64,
        inner: Box<HoloFunction>,
    },
}

impl HoloFunction {
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::param("polynomial needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::param("polynomial coefficients must be finite"));
        }
        Ok(HoloFunction::Polynomial(coeffs))
    }

    pub fn kernel(lambda: Complex64, power: u32) -> Result<Self> {
        if !(lambda.norm() < 1.0) {
            return Err(Error::param(format!("kernel point |lambda| = {} must be < 1", lambda.norm())));
        }
        if power == 0 {
            return Err(Error::param("kernel power l must be ≥ 1"));
        }
        Ok(HoloFunction::KernelPower { lambda, power })
    }

    pub fn fejer(n: u32, phi: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("Fejér degree n must be ≥ 1"));
        }
        if !phi.is_finite() {
            return Err(Error::param("Fejér phase must be finite"));
        }
        Ok(HoloFunction::Fejer { n, phi })
    }

    pub fn lacunary(q: f64, terms: u32) -> Result<Self> {
        if !(1.0..2.0).contains(&q) {
            return Err(Error::param(format!("lacunary exponent q = {q} outside [1, 2)")));
        }
        if terms == 0 || terms > 40 {
            return Err(Error::param(format!("lacunary truncation N = {terms} outside [1, 40]")));
        }
        Ok(HoloFunction::Lacunary { q, terms })
    }

    pub fn blaschke(n: u32) -> Result<Self> {
        if n == 0 || n > 40 {
            return Err(Error::param(format!("Blaschke index n = {n} outside [1, 40]")));
        }
        Ok(HoloFunction::Blaschke { n })
    }

    pub fn monomial(n: u32) -> Self {
        HoloFunction::Monomial { n }
    }

    /// `c · f`.
    pub fn scaled(self, c: Complex64) -> Self {
        match self {
            HoloFunction::Transformed { scale, rotation, inner } => HoloFunction::Transformed {
                scale: scale * c,
                rotation,
                inner,
            },
            f => HoloFunction::Transformed {
                scale: c,
                rotation: 0.0,
                inner: Box::new(f),
            },
        }
    }

    /// `z ↦ f(e^{2πiθ} z)`.
    pub fn rotated(self, turns: f64) -> Self {
        match self {
            HoloFunction::Transformed { scale, rotation, inner } => HoloFunction::Transformed {
                scale,
                rotation: rotation + turns,
                inner,
            },
            f => HoloFunction::Transformed {
                scale: ONE,
                rotation: turns,
                inner: Box::new(f),
            },
        }
    }

    /// Highest supported derivative order; `None` means unbounded.
    pub fn max_derivative(&self) -> Option<usize> {
        match self {
            HoloFunction::Lacunary { .. } | HoloFunction::Blaschke { .. } => Some(1),
            HoloFunction::Transformed { inner, .. } => inner.max_derivative(),
            _ => None,
        }
    }

    pub fn supports_derivative(&self, m: usize) -> bool {
        self.max_derivative().is_none_or(|max| m <= max)
    }

    pub(crate) fn require_derivative(&self, m: usize) -> Result<()> {
        if self.supports_derivative(m) {
            Ok(())
        } else {
            Err(Error::Capability(format!(
                "derivative of order {m} is not available for {self} (max {})",
                self.max_derivative().unwrap_or(0)
            )))
        }
    }

    /// `f(z)`.
    pub fn value(&self, z: Complex64) -> Complex64 {
        self.eval(0, z)
    }

    /// `f^{(m)}(z)`.
    pub fn derivative(&self, m: usize, z: Complex64) -> Result<Complex64> {
        self.require_derivative(m)?;
        Ok(self.eval(m, z))
    }

    /// `f^{(m)}(z)` without the capability check; callers check once up front.
    pub(crate) fn eval(&self, m: usize, z: Complex64) -> Complex64 {
        match self {
            HoloFunction::Polynomial(c) => horner_derivative(c.len() - 1, |j| c[j], m, z),
            HoloFunction::Monomial { n } => {
                let n = *n as usize;
                if m > n {
                    Complex64::new(0.0, 0.0)
                } else {
                    z.powi((n - m) as i32) * falling_factorial(n, m)
                }
            }
            HoloFunction::KernelPower { lambda, power } => {
                let lb = lambda.conj();
                let l = *power as f64;
                let rising: f64 = (0..m).map(|i| l + i as f64).product();
                lb.powi(m as i32) * rising * (ONE - lb * z).powi(-(*power as i32) - m as i32)
            }
            HoloFunction::Fejer { n, phi } => {
                let n = *n as usize;
                let omega = circle_point(*phi);
                let u = z * omega.conj();
                let p = horner_derivative(
                    n,
                    |j| {
                        if j == 0 {
                            Complex64::new(0.0, 0.0)
                        } else {
                            Complex64::new(1.0 / (n - j + 1) as f64, 0.0)
                        }
                    },
                    m,
                    u,
                );
                circle_point(*phi * (n + 1) as f64 - *phi * m as f64) * p
            }
            HoloFunction::Lacunary { q, terms } => {
                let inv_q = 1.0 / q;
                let mut acc = Complex64::new(0.0, 0.0);
                if m == 0 {
                    let mut w = z;
                    for k in 1..=*terms {
                        w = w * w;
                        acc += w / (k as f64).powf(inv_q);
                    }
                } else {
                    // e_k = z^{2^k - 1}
                    let mut e = z;
                    for k in 1..=*terms {
                        acc += e * (2f64.powi(k as i32) / (k as f64).powf(inv_q));
                        e = e * e * z;
                    }
                }
                acc
            }
            HoloFunction::Blaschke { n } => blaschke_eval(*n, m, z),
            HoloFunction::Transformed { scale, rotation, inner } => {
                let omega = circle_point(*rotation);
                scale * omega.powi(m as i32) * inner.eval(m, omega * z)
            }
        }
    }

    /// `f(e^{2πij/N})` for `j = 0..N`.
    pub fn boundary_samples(&self, n: usize) -> Vec<Complex64> {
        (0..n).map(|j| self.value(circle_point(j as f64 / n as f64))).collect()
    }

    /// Polynomial degree, when the function is a polynomial.
    pub fn degree(&self) -> Option<usize> {
        match self {
            HoloFunction::Polynomial(c) => Some(c.len() - 1),
            HoloFunction::Monomial { n } | HoloFunction::Fejer { n, .. } => Some(*n as usize),
            HoloFunction::Lacunary { terms, .. } => Some(1 << terms),
            HoloFunction::Transformed { inner, .. } => inner.degree(),
            _ => None,
        }
    }

    /// Modulus of the singularity of `f` closest to the origin (`∞` for polynomials).
    pub fn singularity_radius(&self) -> f64 {
        match self {
            HoloFunction::KernelPower { lambda, .. } => 1.0 / lambda.norm(),
            HoloFunction::Blaschke { n } => {
                let a = 1.0 - 1.0 / *n as f64;
                if a == 0.0 {
                    f64::INFINITY
                } else {
                    a.powf(-0.5f64.powi(*n as i32))
                }
            }
            HoloFunction::Transformed { inner, .. } => inner.singularity_radius(),
            _ => f64::INFINITY,
        }
    }

    /// Circle-rule size adequate for integrands built from `f` on the circle
    /// of the given radius: a power of two, at least `base`, resolving the
    /// polynomial degree or the distance to the nearest singularity.
    pub fn circle_nodes(&self, radius: f64, base: usize) -> usize {
        let mut need = 0.0f64;
        if let Some(d) = self.degree() {
            need = need.max(8.0 * (d as f64 + 1.0));
        }
        let rho = self.singularity_radius();
        if rho.is_finite() {
            let gap = (rho / radius.max(1e-300)).ln();
            need = need.max(36.0 / gap.max(1e-12));
        }
        let need = need.min(MAX_CIRCLE_NODES as f64) as usize;
        need.max(base).next_power_of_two().min(MAX_CIRCLE_NODES.max(base))
    }

    /// `(1/N) Σ_j |f^{(m)}(r e^{2πij/N})|^p`.
    pub fn circle_power_mean(&self, m: usize, p: f64, r: f64, n: usize) -> Result<f64> {
        self.require_derivative(m)?;
        if n == 0 {
            return Err(Error::param("circle rule needs at least one node"));
        }
        if let HoloFunction::Blaschke { n: order } = self {
            if n.is_multiple_of(4) && n.is_power_of_two() {
                return blaschke_power_mean(*order, m, p, r, n);
            }
        }
        let mut acc = 0.0;
        for j in 0..n {
            let t = j as f64 / n as f64;
            let v = self.eval(m, circle_point(t) * r).norm().powf(p);
            if !v.is_finite() {
                return Err(Error::eval(format!("r = {r}, t = {t}"), "non-finite integrand"));
            }
            acc += v;
        }
        Ok(acc / n as f64)
    }
}

fn falling_factorial(n: usize, m: usize) -> f64 {
    (0..m).map(|i| (n - i) as f64).product()
}

/// `d^m/dz^m Σ_{j=0}^{d} c_j z^j` by Horner on the shifted coefficients.
fn horner_derivative(d: usize, c: impl Fn(usize) -> Complex64, m: usize, z: Complex64) -> Complex64 {
    if m > d {
        return Complex64::new(0.0, 0.0);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in (m..=d).rev() {
        acc = acc * z + c(j) * falling_factorial(j, m);
    }
    acc
}

/// `B_n` (m = 0) or `B_n'` (m = 1) by the product rule with prefix and suffix
/// products, which stays exact at the zeros of individual factors.
fn blaschke_eval(n: u32, m: usize, z: Complex64) -> Complex64 {
    let a = 1.0 - 1.0 / n as f64;
    let n = n as usize;
    let mut factors = Vec::with_capacity(n);
    let mut slopes = Vec::with_capacity(n);
    // powers in polar form: repeated squaring would drift off the unit circle
    let (r, theta) = z.to_polar();
    // a unit point computed in floating point has |z| = 1 ± ulp, which the
    // 2^n-th power would inflate; treat it as exactly unimodular
    let r = if (r - 1.0).abs() <= 4.0 * f64::EPSILON { 1.0 } else { r };
    for k in 1..=n {
        let p = 2f64.powi(k as i32);
        let w = Complex64::from_polar(r.powf(p), theta * p);
        let den = ONE - a * w;
        factors.push((w - a) / den);
        if m == 1 {
            let e = Complex64::from_polar(r.powf(p - 1.0), theta * (p - 1.0));
            slopes.push((1.0 - a * a) / (den * den) * e * p);
        }
    }
    if m == 0 {
        return factors.iter().product();
    }
    let mut prefix = vec![ONE; n + 1];
    for k in 0..n {
        prefix[k + 1] = prefix[k] * factors[k];
    }
    let mut suffix = ONE;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (0..n).rev() {
        acc += prefix[k] * slopes[k] * suffix;
        suffix *= factors[k];
    }
    acc
}

/// `e^{2πik/N}` for a power of two `N`, from two short tables.
struct UnitRoots {
    mask: usize,
    shift: u32,
    low: Vec<Complex64>,
    high: Vec<Complex64>,
}

impl UnitRoots {
    fn new(n: usize) -> Self {
        let bits = n.trailing_zeros();
        let shift = bits.div_ceil(2);
        let low = (0..1usize << shift).map(|k| circle_point(k as f64 / n as f64)).collect();
        let high = (0..1usize << (bits - shift))
            .map(|k| circle_point(((k << shift) as f64) / n as f64))
            .collect();
        UnitRoots {
            mask: n - 1,
            shift,
            low,
            high,
        }
    }

    fn get(&self, k: usize) -> Complex64 {
        let k = k & self.mask;
        self.high[k >> self.shift] * self.low[k & ((1 << self.shift) - 1)]
    }
}

/// Circle mean of `|B_n^{(m)}|^p` on `N` nodes with exact node angles for
/// every power `z^{2^k}`. `|B_n^{(m)}|` is invariant under `z ↦ −z` and
/// `z ↦ z̄`, so only the nodes of the first quarter turn are evaluated.
fn blaschke_power_mean(order: u32, m: usize, p: f64, r: f64, n: usize) -> Result<f64> {
    let a = 1.0 - 1.0 / order as f64;
    let roots = UnitRoots::new(n);
    let bits = n.trailing_zeros() as usize;
    let order = order as usize;
    let powers: Vec<(f64, f64)> = (1..=order)
        .map(|k| {
            let e = 2f64.powi(k as i32);
            (r.powf(e), r.powf(e - 1.0))
        })
        .collect();
    let index = |j: usize, k: usize| if k >= bits { 0 } else { (j << k) & (n - 1) };
    let mut factors = vec![ONE; order];
    let mut slopes = vec![ONE; order];
    let mut prefix = vec![ONE; order + 1];
    let mut acc = 0.0;
    for j in 0..=n / 4 {
        for k in 1..=order {
            let (rw, re) = powers[k - 1];
            let w = roots.get(index(j, k)) * rw;
            let den = ONE - a * w;
            factors[k - 1] = (w - a) / den;
            if m == 1 {
                // z^{2^k - 1} has angle index j(2^k - 1)
                let e = roots.get(index(j, k).wrapping_sub(j)) * re;
                slopes[k - 1] = (1.0 - a * a) / (den * den) * e * 2f64.powi(k as i32);
            }
        }
        let v = if m == 0 {
            factors.iter().product::<Complex64>()
        } else {
            for k in 0..order {
                prefix[k + 1] = prefix[k] * factors[k];
            }
            let mut suffix = ONE;
            let mut d = Complex64::new(0.0, 0.0);
            for k in (0..order).rev() {
                d += prefix[k] * slopes[k] * suffix;
                suffix *= factors[k];
            }
            d
        };
        let val = v.norm().powf(p);
        if !val.is_finite() {
            return Err(Error::eval(format!("r = {r}, t = {}", j as f64 / n as f64), "non-finite integrand"));
        }
        let multiplicity = if j == 0 || j == n / 4 { 2.0 } else { 4.0 };
        acc += multiplicity * val;
    }
    Ok(acc / n as f64)
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::param(format!("cannot parse complex number `{s}`"));
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not an exponent sign or the leading one
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => t.parse::<f64>().map_err(|_| bad())?,
        };
        let re = re.parse::<f64>().map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(s.parse::<f64>().map_err(|_| bad())?, 0.0))
    }
}

fn parse_params<'a>(body: &'a str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let mut out = vec![None; keys.len()];
    for part in body.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::param(format!("expected key=value, got `{part}`")))?;
        let idx = keys
            .iter()
            .position(|key| *key == k.trim())
            .ok_or_else(|| Error::param(format!("unknown parameter `{}` (expected {keys:?})", k.trim())))?;
        out[idx] = Some(v.trim());
    }
    out.into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| Error::param(format!("missing parameter `{k}`"))))
        .collect()
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse::<T>()
        .map_err(|_| Error::param(format!("invalid value `{v}` for `{key}`")))
}

fn parse_positive(key: &str, v: &str) -> Result<u32> {
    let n: i64 = parse_num(key, v)?;
    if n <= 0 || n > u32::MAX as i64 {
        return Err(Error::param(format!("`{key}` must be a positive integer, got {n}")));
    }
    Ok(n as u32)
}

impl FromStr for HoloFunction {
    type Err = Error;

    /// Parses the function DSL: `poly:c0,c1,...`, `kernel:lambda=a+bi,l=L`,
    /// `fejer:n=N,phi=P`, `lacunary:q=Q,N=K`, `blaschke:n=N`, `monomial:n=N`.
    fn from_str(spec: &str) -> Result<Self> {
        let (kind, body) = spec
            .split_once(':')
            .ok_or_else(|| Error::param(format!("function `{spec}` lacks a `kind:` prefix")))?;
        match kind.trim() {
            "poly" => HoloFunction::polynomial(body.split(',').map(parse_complex).collect::<Result<_>>()?),
            "kernel" => {
                let v = parse_params(body, &["lambda", "l"])?;
                HoloFunction::kernel(parse_complex(v[0])?, parse_positive("l", v[1])?)
            }
            "fejer" => {
                let v = parse_params(body, &["n", "phi"])?;
                HoloFunction::fejer(parse_positive("n", v[0])?, parse_num("phi", v[1])?)
            }
            "lacunary" => {
                let v = parse_params(body, &["q", "N"])?;
                HoloFunction::lacunary(parse_num("q", v[0])?, parse_positive("N", v[1])?)
            }
            "blaschke" => {
                let v = parse_params(body, &["n"])?;
                HoloFunction::blaschke(parse_positive("n", v[0])?)
            }
            "monomial" => {
                let v = parse_params(body, &["n"])?;
                let n: i64 = parse_num("n", v[0])?;
                if !(0..=u32::MAX as i64).contains(&n) {
                    return Err(Error::param(format!("monomial degree {n} must be ≥ 0")));
                }
                Ok(HoloFunction::monomial(n as u32))
            }
            other => Err(Error::param(format!(
                "unknown function kind `{other}` (poly, kernel, fejer, lacunary, blaschke, monomial)"
            ))),
        }
    }
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.im < 0.0 {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

impl fmt::Display for HoloFunction {
    /// DSL form; transformed functions render as `scale*(inner)@rotation`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HoloFunction::Polynomial(c) => {
                let parts: Vec<String> = c.iter().map(|c| fmt_complex(*c)).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            HoloFunction::KernelPower { lambda, power } => {
                write!(f, "kernel:lambda={},l={power}", fmt_complex(*lambda))
            }
            HoloFunction::Fejer { n, phi } => write!(f, "fejer:n={n},phi={phi}"),
            HoloFunction::Lacunary { q, terms } => write!(f, "lacunary:q={q},N={terms}"),
            HoloFunction::Blaschke { n } => write!(f, "blaschke:n={n}"),
            HoloFunction::Monomial { n } => write!(f, "monomial:n={n}"),
            HoloFunction::Transformed { scale, rotation, inner } => {
                write!(f, "{}*({inner})@{rotation}", fmt_complex(*scale))
            }
        }
    }
}
