//! Finite positive measures on the closed disc: interior atoms, boundary
//! atoms and a piecewise-constant boundary density.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disc::{circle_point, reduce_turns, Arc, CarlesonWindow, DiscPoint, Region};
use crate::error::{check_finite, Error, Result};
use crate::quad::QuadConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorAtom {
    pub point: DiscPoint,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryAtom {
    /// Angle in turns, reduced to `[0, 1)`.
    pub t: f64,
    pub weight: f64,
}

/// A density `β` constant on each cell `[i/N, (i+1)/N)`; represents `β dm`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDensity {
    values: Vec<f64>,
}

impl BoundaryDensity {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ingest("boundary_density.values", "need at least one cell"));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::ingest(
                    format!("boundary_density.values[{i}]"),
                    format!("density value {v} must be finite and ≥ 0"),
                ));
            }
        }
        Ok(BoundaryDensity { values })
    }

    /// `β ≡ c` on `n_grid` cells.
    pub fn constant(n_grid: usize, c: f64) -> Result<Self> {
        Self::new(vec![c; n_grid])
    }

    /// Cell averages of `f` on `n_grid` cells, computed with `sub` midpoint
    /// nodes per cell.
    pub fn discretize(n_grid: usize, sub: usize, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        let sub = sub.max(1);
        let values = (0..n_grid)
            .map(|i| {
                (0..sub)
                    .map(|k| f((i as f64 + (k as f64 + 0.5) / sub as f64) / n_grid as f64))
                    .sum::<f64>()
                    / sub as f64
            })
            .collect();
        Self::new(values)
    }

    pub fn n_grid(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cell_width(&self) -> f64 {
        1.0 / self.values.len() as f64
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `∫_I β dm`, splitting end cells proportionally. Cells are visited in
    /// arc order, so rotating arc and density by whole cells gives bitwise
    /// identical results.
    pub fn arc_mass(&self, arc: &Arc) -> f64 {
        let n = self.values.len();
        let nf = n as f64;
        let a = arc.start() * nf;
        let b = a + arc.length() * nf;
        let mut mass = 0.0;
        let mut i = a.floor();
        while i < b {
            let lo = i.max(a);
            let hi = (i + 1.0).min(b);
            if hi > lo {
                mass += self.values[(i as usize) % n] * (hi - lo);
            }
            i += 1.0;
        }
        mass / nf
    }
}

/// A finite positive Borel measure on the closed unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    interior_atoms: Vec<InteriorAtom>,
    boundary_atoms: Vec<BoundaryAtom>,
    density: Option<BoundaryDensity>,
    total_mass: f64,
}

impl Measure {
    pub fn new(
        interior_atoms: Vec<InteriorAtom>,
        boundary_atoms: Vec<BoundaryAtom>,
        density: Option<BoundaryDensity>,
    ) -> Result<Self> {
        for (i, a) in interior_atoms.iter().enumerate() {
            check_weight(a.weight, || format!("interior_atoms[{i}].w"))?;
            if a.point.modulus() >= 1.0 {
                return Err(Error::ingest(
                    format!("interior_atoms[{i}]"),
                    format!("|z| = {} must be < 1; put it in boundary_atoms", a.point.modulus()),
                ));
            }
        }
        let mut boundary_atoms = boundary_atoms;
        for (i, a) in boundary_atoms.iter_mut().enumerate() {
            check_weight(a.weight, || format!("boundary_atoms[{i}].w"))?;
            if !a.t.is_finite() {
                return Err(Error::ingest(format!("boundary_atoms[{i}].t"), "angle must be finite"));
            }
            a.t = reduce_turns(a.t);
        }
        let total_mass = interior_atoms.iter().map(|a| a.weight).sum::<f64>()
            + boundary_atoms.iter().map(|a| a.weight).sum::<f64>()
            + density.as_ref().map_or(0.0, BoundaryDensity::total);
        Ok(Measure {
            interior_atoms,
            boundary_atoms,
            density,
            total_mass,
        })
    }

    pub fn zero() -> Self {
        Measure {
            interior_atoms: Vec::new(),
            boundary_atoms: Vec::new(),
            density: None,
            total_mass: 0.0,
        }
    }

    /// Normalized arc length `m`, carried by a one-cell density.
    pub fn lebesgue() -> Self {
        Self::from_density(BoundaryDensity { values: vec![1.0] })
    }

    pub fn from_density(density: BoundaryDensity) -> Self {
        let total_mass = density.total();
        Measure {
            interior_atoms: Vec::new(),
            boundary_atoms: Vec::new(),
            density: Some(density),
            total_mass,
        }
    }

    pub fn interior_atoms(&self) -> &[InteriorAtom] {
        &self.interior_atoms
    }

    pub fn boundary_atoms(&self) -> &[BoundaryAtom] {
        &self.boundary_atoms
    }

    pub fn density(&self) -> Option<&BoundaryDensity> {
        self.density.as_ref()
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn interior_mass(&self) -> f64 {
        self.interior_atoms.iter().map(|a| a.weight).sum()
    }

    pub fn boundary_mass(&self) -> f64 {
        self.boundary_atoms.iter().map(|a| a.weight).sum::<f64>()
            + self.density.as_ref().map_or(0.0, BoundaryDensity::total)
    }

    /// Largest modulus among interior atoms of positive weight (0 if none).
    pub fn interior_radius(&self) -> f64 {
        self.interior_atoms
            .iter()
            .filter(|a| a.weight > 0.0)
            .map(|a| a.point.modulus())
            .fold(0.0, f64::max)
    }

    /// `μ(I)`: boundary atoms on the arc plus the density over it.
    pub fn arc_mass(&self, arc: &Arc) -> f64 {
        let atoms: f64 = self
            .boundary_atoms
            .iter()
            .filter(|a| arc.contains_angle(a.t))
            .map(|a| a.weight)
            .sum();
        atoms + self.density.as_ref().map_or(0.0, |d| d.arc_mass(arc))
    }

    /// `μ(S_{I,h})`: the boundary part over `I` plus interior atoms in the window.
    pub fn window_mass(&self, window: &CarlesonWindow) -> f64 {
        let interior: f64 = self
            .interior_atoms
            .iter()
            .filter(|a| window.contains_point(a.point))
            .map(|a| a.weight)
            .sum();
        interior + self.arc_mass(&window.arc)
    }

    pub fn region_mass(&self, region: impl Into<Region>) -> f64 {
        match region.into() {
            Region::Arc(arc) => self.arc_mass(&arc),
            Region::Window(w) => self.window_mass(&w),
        }
    }

    /// `μ|_{∂D}`.
    pub fn restrict_to_boundary(&self) -> Measure {
        Measure {
            interior_atoms: Vec::new(),
            boundary_atoms: self.boundary_atoms.clone(),
            density: self.density.clone(),
            total_mass: self.boundary_mass(),
        }
    }

    /// `μ|_D`.
    pub fn restrict_to_interior(&self) -> Measure {
        Measure {
            interior_atoms: self.interior_atoms.clone(),
            boundary_atoms: Vec::new(),
            density: None,
            total_mass: self.interior_mass(),
        }
    }

    /// `c·μ` for `c ≥ 0`.
    pub fn scaled(&self, c: f64) -> Result<Measure> {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::param(format!("scale factor {c} must be finite and ≥ 0")));
        }
        let density = self
            .density
            .as_ref()
            .map(|d| BoundaryDensity::new(d.values.iter().map(|v| v * c).collect()))
            .transpose()?;
        Measure::new(
            self.interior_atoms
                .iter()
                .map(|a| InteriorAtom {
                    weight: a.weight * c,
                    ..*a
                })
                .collect(),
            self.boundary_atoms
                .iter()
                .map(|a| BoundaryAtom {
                    weight: a.weight * c,
                    ..*a
                })
                .collect(),
            density,
        )
    }

    /// Image of `μ` under the rotation by `cells/N_grid` turns; without a
    /// density the unit is `2^{-24}` turns.
    pub fn rotated_by_cells(&self, cells: i64) -> Result<Measure> {
        let n = self.density.as_ref().map_or(1 << 24, BoundaryDensity::n_grid);
        let turns = cells as f64 / n as f64;
        let density = self.density.as_ref().map(|d| {
            let k = cells.rem_euclid(n as i64) as usize;
            let mut values = d.values.clone();
            values.rotate_right(k);
            BoundaryDensity { values }
        });
        let interior = self
            .interior_atoms
            .iter()
            .map(|a| {
                Ok(InteriorAtom {
                    point: DiscPoint::from_complex(a.point.to_complex() * circle_point(turns))?,
                    weight: a.weight,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let boundary = self
            .boundary_atoms
            .iter()
            .map(|a| BoundaryAtom {
                t: a.t + turns,
                weight: a.weight,
            })
            .collect();
        Measure::new(interior, boundary, density)
    }

    /// `∫ g dμ`, with the density part computed by a midpoint rule on at least
    /// `cfg.n_circle` nodes.
    pub fn integrate(&self, g: impl FnMut(Complex64) -> f64, cfg: &QuadConfig) -> Result<f64> {
        cfg.validate()?;
        self.integrate_with_nodes(g, cfg.n_circle)
    }

    /// [`Measure::integrate`] with an explicit density resolution.
    pub fn integrate_with_nodes(&self, mut g: impl FnMut(Complex64) -> f64, nodes: usize) -> Result<f64> {
        let interior = self.integrate_interior(&mut g)?;
        Ok(interior + self.integrate_boundary(&mut g, nodes)?)
    }

    /// `∫_D g dμ` over the interior atoms only.
    pub fn integrate_interior(&self, mut g: impl FnMut(Complex64) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for a in &self.interior_atoms {
            let z = a.point.to_complex();
            acc += a.weight * check_finite(g(z), || format!("interior atom z = {z}"))?;
        }
        Ok(acc)
    }

    /// The boundary part as weighted points: the atoms, then the density's
    /// midpoint nodes (`ceil(nodes / N_grid)` per nonzero cell).
    pub fn boundary_nodes(&self, nodes: usize) -> Vec<(Complex64, f64)> {
        let mut out: Vec<(Complex64, f64)> =
            self.boundary_atoms.iter().map(|a| (circle_point(a.t), a.weight)).collect();
        if let Some(d) = &self.density {
            let n = d.n_grid();
            let sub = nodes.div_ceil(n).max(1);
            let scale = 1.0 / (n * sub) as f64;
            for (i, &beta) in d.values.iter().enumerate() {
                if beta == 0.0 {
                    continue;
                }
                for k in 0..sub {
                    let t = (i as f64 + (k as f64 + 0.5) / sub as f64) / n as f64;
                    out.push((circle_point(t), beta * scale));
                }
            }
        }
        out
    }

    /// `∫_{∂D} g dμ`: boundary atoms plus the density by a midpoint rule with
    /// `ceil(nodes / N_grid)` nodes per cell.
    pub fn integrate_boundary(&self, mut g: impl FnMut(Complex64) -> f64, nodes: usize) -> Result<f64> {
        let mut acc = 0.0;
        for a in &self.boundary_atoms {
            acc += a.weight * check_finite(g(circle_point(a.t)), || format!("boundary atom t = {}", a.t))?;
        }
        if let Some(d) = &self.density {
            let n = d.n_grid();
            let sub = nodes.div_ceil(n).max(1);
            let scale = 1.0 / (n * sub) as f64;
            for (i, &beta) in d.values.iter().enumerate() {
                if beta == 0.0 {
                    continue;
                }
                let mut cell = 0.0;
                for k in 0..sub {
                    let t = (i as f64 + (k as f64 + 0.5) / sub as f64) / n as f64;
                    cell += check_finite(g(circle_point(t)), || format!("boundary t = {t}"))?;
                }
                acc += beta * cell * scale;
            }
        }
        Ok(acc)
    }

    pub fn from_json_str(text: &str) -> Result<Measure> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::ingest("document", e.to_string()))?;
        let serde_json::Value::Object(fields) = value else {
            return Err(Error::ingest("document", "expected a JSON object"));
        };
        let mut doc = MeasureDoc::default();
        for (key, v) in fields {
            let bad = |e: serde_json::Error| Error::ingest(key.as_str(), e.to_string());
            match key.as_str() {
                "interior_atoms" => doc.interior_atoms = serde_json::from_value(v).map_err(bad)?,
                "boundary_atoms" => doc.boundary_atoms = serde_json::from_value(v).map_err(bad)?,
                "boundary_density" => doc.boundary_density = serde_json::from_value(v).map_err(bad)?,
                _ => return Err(Error::ingest(key.as_str(), "unknown field")),
            }
        }
        doc.try_into()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Measure> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ingest(path.display().to_string(), e.to_string()))?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MeasureDoc::from(self)).expect("measure documents always serialize")
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
struct MeasureDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    interior_atoms: Vec<InteriorAtomDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    boundary_atoms: Vec<BoundaryAtomDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boundary_density: Option<DensityDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InteriorAtomDoc {
    re: f64,
    im: f64,
    w: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryAtomDoc {
    t: f64,
    w: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityDoc {
    #[serde(rename = "N_grid")]
    n_grid: usize,
    values: Vec<f64>,
}

impl TryFrom<MeasureDoc> for Measure {
    type Error = Error;

    fn try_from(doc: MeasureDoc) -> Result<Measure> {
        let mut interior = Vec::with_capacity(doc.interior_atoms.len());
        for (i, a) in doc.interior_atoms.iter().enumerate() {
            let r = a.re.hypot(a.im);
            if r >= 1.0 {
                return Err(Error::ingest(
                    format!("interior_atoms[{i}]"),
                    format!("|z| = {r} must be < 1; put it in boundary_atoms"),
                ));
            }
            interior.push(InteriorAtom {
                point: DiscPoint { re: a.re, im: a.im },
                weight: a.w,
            });
        }
        let boundary = doc
            .boundary_atoms
            .iter()
            .map(|a| BoundaryAtom { t: a.t, weight: a.w })
            .collect();
        let density = match doc.boundary_density {
            None => None,
            Some(d) => {
                if d.n_grid == 0 {
                    return Err(Error::ingest("boundary_density.N_grid", "must be ≥ 1"));
                }
                if d.values.len() != d.n_grid {
                    return Err(Error::ingest(
                        "boundary_density.values",
                        format!("{} values for N_grid = {}", d.values.len(), d.n_grid),
                    ));
                }
                Some(BoundaryDensity::new(d.values)?)
            }
        };
        Measure::new(interior, boundary, density)
    }
}

impl From<&Measure> for MeasureDoc {
    fn from(m: &Measure) -> Self {
        MeasureDoc {
            interior_atoms: m
                .interior_atoms
                .iter()
                .map(|a| InteriorAtomDoc {
                    re: a.point.re,
                    im: a.point.im,
                    w: a.weight,
                })
                .collect(),
            boundary_atoms: m
                .boundary_atoms
                .iter()
                .map(|a| BoundaryAtomDoc { t: a.t, w: a.weight })
                .collect(),
            boundary_density: m.density.as_ref().map(|d| DensityDoc {
                n_grid: d.n_grid(),
                values: d.values.clone(),
            }),
        }
    }
}
