//! Geometry of the two-dimensional egg: a half-disc of radius `r` on the
//! right (x ≥ 0) glued to a half-ellipse with semi-axes `R` (horizontal) and
//! `r` (vertical) on the left.

use serde::{Deserialize, Serialize};

use crate::error::{GptError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EggShape {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

impl EggShape {
    pub fn new(r: f64, big_r: f64) -> Result<Self> {
        if !(r > 0.0 && big_r > 0.0 && r.is_finite() && big_r.is_finite()) {
            return Err(GptError::InvalidInput(format!(
                "egg radii must be positive, got r={r}, R={big_r}"
            )));
        }
        Ok(EggShape { r, big_r })
    }

    /// Point on the half-circle at angle `alpha ∈ [−π/2, π/2]`.
    pub fn circle_point(&self, alpha: f64) -> [f64; 2] {
        [self.r * alpha.cos(), self.r * alpha.sin()]
    }

    /// Point on the half-ellipse at angle `beta ∈ [−π/2, π/2]`.
    pub fn ellipse_point(&self, beta: f64) -> [f64; 2] {
        [-self.big_r * beta.cos(), self.r * beta.sin()]
    }

    /// Gauge function: < 1 inside, = 1 on the boundary, > 1 outside.
    pub fn gauge(&self, p: [f64; 2]) -> f64 {
        let [x, y] = p;
        if x >= 0.0 {
            (x * x + y * y).sqrt() / self.r
        } else {
            ((x / self.big_r).powi(2) + (y / self.r).powi(2)).sqrt()
        }
    }

    pub fn contains(&self, p: [f64; 2], tol: f64) -> bool {
        self.gauge(p) <= 1.0 + tol
    }

    pub fn on_boundary(&self, p: [f64; 2], tol: f64) -> bool {
        (self.gauge(p) - 1.0).abs() <= tol
    }

    /// Residual of the boundary equation that applies on `p`'s side.
    pub fn boundary_residual(&self, p: [f64; 2]) -> f64 {
        let [x, y] = p;
        if x >= 0.0 {
            x * x + y * y - self.r * self.r
        } else {
            (x / self.big_r).powi(2) + (y / self.r).powi(2) - 1.0
        }
    }

    /// Unit outward normal at a boundary point.
    pub fn outward_normal(&self, p: [f64; 2]) -> [f64; 2] {
        let [x, y] = p;
        let n = if x >= 0.0 {
            [x, y]
        } else {
            [x / (self.big_r * self.big_r), y / (self.r * self.r)]
        };
        let len = (n[0] * n[0] + n[1] * n[1]).sqrt();
        [n[0] / len, n[1] / len]
    }

    /// Boundary point in direction `theta` as seen from the origin.
    pub fn boundary_in_direction(&self, theta: f64) -> [f64; 2] {
        let (dx, dy) = (theta.cos(), theta.sin());
        let t = if dx >= 0.0 {
            self.r
        } else {
            1.0 / ((dx / self.big_r).powi(2) + (dy / self.r).powi(2)).sqrt()
        };
        [t * dx, t * dy]
    }

    /// Largest `t ≥ 0` with `p + t·d` still in the egg (`p` inside).
    pub fn ray_exit(&self, p: [f64; 2], d: [f64; 2]) -> f64 {
        let mut best = 0.0f64;
        // circle part: |p + t d|² = r², x ≥ 0
        if let Some(t) = largest_root(
            d[0] * d[0] + d[1] * d[1],
            2.0 * (p[0] * d[0] + p[1] * d[1]),
            p[0] * p[0] + p[1] * p[1] - self.r * self.r,
        ) {
            if p[0] + t * d[0] >= -1e-12 {
                best = best.max(t);
            }
        }
        // ellipse part, x ≤ 0
        let (a2, b2) = (self.big_r * self.big_r, self.r * self.r);
        if let Some(t) = largest_root(
            d[0] * d[0] / a2 + d[1] * d[1] / b2,
            2.0 * (p[0] * d[0] / a2 + p[1] * d[1] / b2),
            p[0] * p[0] / a2 + p[1] * p[1] / b2 - 1.0,
        ) {
            if p[0] + t * d[0] <= 1e-12 {
                best = best.max(t);
            }
        }
        best
    }
}

fn largest_root(a: f64, b: f64, c: f64) -> Option<f64> {
    if a <= 0.0 {
        return None;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    Some((-b + disc.sqrt()) / (2.0 * a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parametrizations_land_on_boundary() {
        let egg = EggShape::new(1.0, 2.0).unwrap();
        for k in 0..=20 {
            let a = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * k as f64 / 20.0;
            assert!(egg.boundary_residual(egg.circle_point(a)).abs() < 1e-14);
            assert!(egg.boundary_residual(egg.ellipse_point(a)).abs() < 1e-14);
        }
    }

    #[test]
    fn membership() {
        let egg = EggShape::new(1.0, 2.0).unwrap();
        assert!(egg.contains([0.0, 0.0], 0.0));
        assert!(egg.contains([-1.9, 0.0], 0.0));
        assert!(!egg.contains([1.1, 0.0], 1e-9));
        assert!(egg.contains([-2.0, 0.0], 1e-12));
    }

    #[test]
    fn ray_exit_hits_boundary() {
        let egg = EggShape::new(1.0, 3.0).unwrap();
        let p = [0.1, -0.2];
        for k in 0..16 {
            let th = k as f64 * std::f64::consts::PI / 8.0;
            let d = [th.cos(), th.sin()];
            let t = egg.ray_exit(p, d);
            let q = [p[0] + t * d[0], p[1] + t * d[1]];
            assert!(egg.on_boundary(q, 1e-10), "theta={th} q={q:?}");
        }
    }

    #[test]
    fn rejects_nonpositive_radii() {
        assert!(EggShape::new(0.0, 1.0).is_err());
        assert!(EggShape::new(1.0, -2.0).is_err());
    }
}
