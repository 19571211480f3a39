//! Geometry of the closed unit disc.
//!
//! The circle is parameterized by turns: `t ∈ [0, 1)` stands for the point
//! `e^{2πit}`, and arc lengths are normalized so that the whole circle has
//! length 1.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on `|z| ≤ 1` for points given in floating point.
pub const DISC_TOLERANCE: f64 = 1e-12;

/// Largest supported level of the dyadic arc families.
pub const MAX_DYADIC_LEVEL: u32 = 24;

/// Reduces an angle in turns to `[0, 1)`.
pub fn reduce_turns(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// `e^{2πit}`.
pub fn circle_point(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * t)
}

/// A point of the closed unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscPoint {
    pub re: f64,
    pub im: f64,
}

impl DiscPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        let p = DiscPoint { re, im };
        if !(re.is_finite() && im.is_finite()) || p.modulus() > 1.0 + DISC_TOLERANCE {
            return Err(Error::Domain(format!(
                "point ({re}, {im}) lies outside the closed unit disc"
            )));
        }
        Ok(p)
    }

    /// `r e^{2πit}`.
    pub fn from_polar(radius: f64, turns: f64) -> Result<Self> {
        let z = Complex64::from_polar(radius, TAU * turns);
        DiscPoint::new(z.re, z.im)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        DiscPoint::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Argument in turns, in `[0, 1)`. The origin is assigned angle 0.
    pub fn turns(self) -> f64 {
        if self.re == 0.0 && self.im == 0.0 {
            0.0
        } else {
            reduce_turns(self.im.atan2(self.re) / TAU)
        }
    }

    /// True when the point sits on the unit circle (within tolerance).
    pub fn on_boundary(self) -> bool {
        (self.modulus() - 1.0).abs() <= DISC_TOLERANCE
    }
}

/// The arc `{e^{2πit} : t ∈ [start, start + length) mod 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    start: f64,
    length: f64,
}

impl Arc {
    /// `start` is reduced mod 1; `length` must lie in `(0, 1]`.
    pub fn new(start: f64, length: f64) -> Result<Self> {
        if !start.is_finite() {
            return Err(Error::param(format!("arc start {start} is not finite")));
        }
        if !(length > 0.0 && length <= 1.0) {
            return Err(Error::param(format!("arc length {length} outside (0, 1]")));
        }
        Ok(Arc {
            start: reduce_turns(start),
            length,
        })
    }

    /// The whole circle, starting at angle 0.
    pub fn full() -> Self {
        Arc {
            start: 0.0,
            length: 1.0,
        }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Normalized Lebesgue measure of the arc.
    pub fn measure(&self) -> f64 {
        self.length
    }

    /// Midpoint angle, in turns.
    pub fn center(&self) -> f64 {
        reduce_turns(self.start + 0.5 * self.length)
    }

    pub fn contains_angle(&self, t: f64) -> bool {
        if self.length >= 1.0 {
            return true;
        }
        (t - self.start).rem_euclid(1.0) < self.length
    }

    /// Membership of a disc point: only points of the unit circle can lie on an arc.
    pub fn contains_point(&self, z: DiscPoint) -> bool {
        z.on_boundary() && self.contains_angle(z.turns())
    }

    /// The arc as up to two subintervals of `[0, 1]`.
    pub fn intervals(&self) -> ([f64; 2], Option<[f64; 2]>) {
        let end = self.start + self.length;
        if end <= 1.0 {
            ([self.start, end], None)
        } else {
            ([self.start, 1.0], Some([0.0, end - 1.0]))
        }
    }

    /// Angular distance (in turns) from `t` to the arc; zero inside it.
    pub fn angular_gap(&self, t: f64) -> f64 {
        if self.contains_angle(t) {
            return 0.0;
        }
        let after_end = (t - (self.start + self.length)).rem_euclid(1.0);
        let before_start = (self.start - t).rem_euclid(1.0);
        after_end.min(before_start)
    }
}

/// The Carleson window `S_{I,h} = {z : 1 − h ≤ |z| ≤ 1, z/|z| ∈ I}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonWindow {
    pub arc: Arc,
    depth: f64,
}

impl CarlesonWindow {
    pub fn new(arc: Arc, depth: f64) -> Result<Self> {
        if !(depth > 0.0 && depth <= 1.0) {
            return Err(Error::param(format!("window depth {depth} outside (0, 1]")));
        }
        Ok(CarlesonWindow { arc, depth })
    }

    /// The standard window over `arc`, with depth equal to the arc length.
    pub fn over(arc: Arc) -> Self {
        CarlesonWindow {
            arc,
            depth: arc.length(),
        }
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn inner_radius(&self) -> f64 {
        1.0 - self.depth
    }

    pub fn contains_point(&self, z: DiscPoint) -> bool {
        let r = z.modulus();
        r >= self.inner_radius() && r <= 1.0 + DISC_TOLERANCE && self.arc.contains_angle(z.turns())
    }

    /// Lebesgue area of the window (the unit disc has area π).
    pub fn area(&self) -> f64 {
        let r0 = self.inner_radius();
        std::f64::consts::PI * (1.0 - r0 * r0) * self.arc.length()
    }
}

/// A region queried for membership or mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Arc(Arc),
    Window(CarlesonWindow),
}

impl Region {
    pub fn arc(&self) -> Arc {
        match self {
            Region::Arc(a) => *a,
            Region::Window(w) => w.arc,
        }
    }
}

impl From<Arc> for Region {
    fn from(a: Arc) -> Self {
        Region::Arc(a)
    }
}

impl From<CarlesonWindow> for Region {
    fn from(w: CarlesonWindow) -> Self {
        Region::Window(w)
    }
}

/// A location tested against a region: a disc point or a boundary angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    Point(DiscPoint),
    Angle(f64),
}

/// Exact set membership, with wraparound.
pub fn contains(region: impl Into<Region>, at: Location) -> bool {
    match (region.into(), at) {
        (Region::Arc(a), Location::Angle(t)) => a.contains_angle(reduce_turns(t)),
        (Region::Arc(a), Location::Point(z)) => a.contains_point(z),
        (Region::Window(w), Location::Angle(t)) => w.arc.contains_angle(reduce_turns(t)),
        (Region::Window(w), Location::Point(z)) => w.contains_point(z),
    }
}

fn check_level(level_max: u32) -> Result<()> {
    if level_max > MAX_DYADIC_LEVEL {
        return Err(Error::param(format!(
            "dyadic level {level_max} exceeds the supported maximum {MAX_DYADIC_LEVEL}"
        )));
    }
    Ok(())
}

/// Lazily enumerates both dyadic arc families up to `level_max`.
///
/// Per level `j` the standard arcs `[k 2^{-j}, (k+1) 2^{-j})` are yielded first,
/// then the same arcs shifted by `2^{-j-1}`.
pub fn dyadic_arcs(level_max: u32) -> Result<impl Iterator<Item = Arc>> {
    check_level(level_max)?;
    Ok((0..=level_max).flat_map(|j| {
        let count = 1u64 << j;
        let len = 1.0 / count as f64;
        (0..2 * count).map(move |i| {
            let (k, shift) = if i < count { (i, 0.0) } else { (i - count, 0.5) };
            Arc {
                start: reduce_turns((k as f64 + shift) * len),
                length: len,
            }
        })
    }))
}

/// Both dyadic families up to `level_max`, collected; `2(2^{L+1} − 1)` arcs.
///
/// Every arc of length at least `1.5 · 2^{-level_max}` contains a member of
/// at least a third (so at least a quarter) of its length. Arcs between
/// `2^{-level_max}` and that bound may only contain members of an eighth of
/// their length.
pub fn dyadic_arc_family(level_max: u32) -> Result<Vec<Arc>> {
    Ok(dyadic_arcs(level_max)?.collect())
}

/// Number of arcs in [`dyadic_arc_family`].
pub fn dyadic_family_size(level_max: u32) -> u64 {
    2 * ((1u64 << (level_max + 1)) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn level_zero_is_full_circle_twice() {
        let fam = dyadic_arc_family(0).unwrap();
        assert_eq!(fam, vec![Arc::new(0.0, 1.0).unwrap(), Arc::new(0.5, 1.0).unwrap()]);
    }

    #[test]
    fn level_one_members() {
        let fam = dyadic_arc_family(1).unwrap();
        for (s, l) in [(0.0, 0.5), (0.5, 0.5), (0.25, 0.5), (0.75, 0.5)] {
            assert!(fam.contains(&Arc::new(s, l).unwrap()), "missing Arc({s},{l})");
        }
    }

    #[test]
    fn family_size_matches_geometric_sum() {
        for level in 0..=10u32 {
            let oracle: u64 = (0..=level).map(|j| 2 * (1u64 << j)).sum();
            assert_eq!(dyadic_arc_family(level).unwrap().len() as u64, oracle);
            assert_eq!(dyadic_family_size(level), oracle);
        }
    }

    #[test]
    fn level_bound_is_enforced() {
        assert!(matches!(dyadic_arc_family(25), Err(Error::Parameter(_))));
    }

    #[test]
    fn covering_slack_of_a_quarter() {
        let level = 6;
        let fam = dyadic_arc_family(level).unwrap();
        let min_len = 1.5 / (1u64 << level) as f64;
        for i in 0..2000 {
            let start = (i as f64 * 0.618_033_988_7).fract();
            let length = min_len * (1.0 / min_len).powf((i * 37 % 101) as f64 / 100.0);
            let arc = Arc::new(start, length).unwrap();
            let covered = fam.iter().any(|m| {
                m.length() >= length / 4.0 && {
                    let offset = (m.start() - arc.start()).rem_euclid(1.0);
                    offset + m.length() <= arc.length() + 1e-15
                }
            });
            assert!(covered, "arc {arc:?} has no quarter-size member");
        }
    }

    #[test]
    fn wraparound_membership() {
        let a = Arc::new(0.9, 0.2).unwrap();
        assert!(contains(a, Location::Angle(0.05)));
        assert!(contains(a, Location::Angle(0.95)));
        assert!(!contains(a, Location::Angle(0.5)));
        assert!(contains(a, Location::Angle(-0.05)));
    }

    #[test]
    fn window_membership() {
        let w = CarlesonWindow::new(Arc::new(0.0, 0.25).unwrap(), 0.1).unwrap();
        let inside = DiscPoint::from_polar(0.95, 0.1).unwrap();
        let too_deep = DiscPoint::from_polar(0.85, 0.1).unwrap();
        assert!(contains(w, Location::Point(inside)));
        assert!(!contains(w, Location::Point(too_deep)));
    }

    #[test]
    fn outside_disc_is_domain_error() {
        assert!(matches!(DiscPoint::new(1.0, 1e-3), Err(Error::Domain(_))));
        assert!(DiscPoint::new(1.0 + 1e-13, 0.0).is_ok());
    }

    #[test]
    fn arcs_hold_only_boundary_points() {
        let a = Arc::full();
        assert!(a.contains_point(DiscPoint::new(0.0, 1.0).unwrap()));
        assert!(!a.contains_point(DiscPoint::new(0.0, 0.5).unwrap()));
    }

    #[test]
    fn gap_to_arc() {
        let a = Arc::new(0.0, 0.25).unwrap();
        assert!((a.angular_gap(0.5) - 0.25).abs() < 1e-15);
        assert!((a.angular_gap(0.9) - 0.1).abs() < 1e-12);
        assert_eq!(a.angular_gap(0.1), 0.0);
    }

    fn direct_membership(start: f64, len: f64, t: f64) -> bool {
        // interval arithmetic on the unrolled line
        let t = t.rem_euclid(1.0);
        let end = start + len;
        (t >= start && t < end) || (t + 1.0 >= start && t + 1.0 < end)
    }

    #[test]
    fn family_agrees_with_interval_arithmetic() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for arc in dyadic_arc_family(5).unwrap() {
            for _ in 0..10_000 / 126 + 1 {
                let t: f64 = rng.random();
                assert_eq!(
                    arc.contains_angle(t),
                    direct_membership(arc.start(), arc.length(), t),
                    "{arc:?} at {t}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn shift_consistency(start in 0.0f64..1.0, len in 1e-3f64..1.0, t in 0.0f64..1.0, k in 0u32..64) {
            // dyadic shifts keep the arithmetic exact
            let delta = k as f64 / 64.0;
            let a = Arc::new(start, len).unwrap();
            let b = Arc::new(start + delta, len).unwrap();
            let s = (start * 64.0).round() / 64.0;
            let aa = Arc::new(s, len).unwrap();
            let bb = Arc::new(s + delta, len).unwrap();
            prop_assert_eq!(aa.contains_angle(t), bb.contains_angle(reduce_turns(t + delta)));
            // generic shifts agree away from the endpoints
            let near_edge = a.angular_gap(t).min((t - a.start()).rem_euclid(1.0)) < 1e-9
                || ((t - a.start()).rem_euclid(1.0) - len).abs() < 1e-9;
            if !near_edge {
                prop_assert_eq!(a.contains_angle(t), b.contains_angle(reduce_turns(t + delta)));
            }
        }
    }
}
