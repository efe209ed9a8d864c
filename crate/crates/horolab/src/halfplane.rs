//! Points on the upper half plane and reduction to the standard fundamental
//! domain of the modular group.

use crate::{Error, Result};

/// A point `x + iy` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    pub x: f64,
    pub y: f64,
}

impl HalfPlanePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !y.is_finite() || !x.is_finite() {
            return Err(Error::Domain(format!("not in the upper half plane: {x} + {y}i")));
        }
        Ok(HalfPlanePoint { x, y })
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }
}

/// An integer matrix `[[a, b], [c, d]]` acting by Moebius transformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GL2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GL2 {
    pub const IDENTITY: GL2 = GL2 { a: 1, b: 0, c: 0, d: 1 };

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &GL2) -> GL2 {
        GL2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Moebius action on the upper half plane.
    pub fn apply(&self, z: HalfPlanePoint) -> HalfPlanePoint {
        let (a, b, c, d) = (self.a as f64, self.b as f64, self.c as f64, self.d as f64);
        let den = (c * z.x + d) * (c * z.x + d) + c * c * z.y * z.y;
        let x = ((a * z.x + b) * (c * z.x + d) + a * c * z.y * z.y) / den;
        let y = z.y / den;
        HalfPlanePoint { x, y }
    }

    /// `|c z + d|^2` for the cocycle of non-zero weight.
    pub fn cocycle_norm_sq(&self, z: HalfPlanePoint) -> f64 {
        let (c, d) = (self.c as f64, self.d as f64);
        (c * z.x + d) * (c * z.x + d) + c * c * z.y * z.y
    }
}

/// Reduce `z` into the standard fundamental domain `|Re z| <= 1/2`,
/// `|z| >= 1`. Returns the reduced point and the matrix `g` with `g z = z'`.
pub fn fd_reduce(z: HalfPlanePoint) -> (HalfPlanePoint, GL2) {
    let mut w = z;
    let mut g = GL2::IDENTITY;
    for _ in 0..10_000 {
        let n = w.x.round();
        if n != 0.0 {
            let t = GL2 { a: 1, b: -(n as i64), c: 0, d: 1 };
            g = t.mul(&g);
            w.x -= n;
        }
        if w.norm_sq() < 1.0 - 1e-15 {
            let s = GL2 { a: 0, b: -1, c: 1, d: 0 };
            g = s.mul(&g);
            let den = w.norm_sq();
            w = HalfPlanePoint { x: -w.x / den, y: w.y / den };
        } else {
            break;
        }
    }
    // Canonical boundary choice: Re on the right edge maps to the left edge.
    if w.x > 0.5 - 1e-15 {
        let t = GL2 { a: 1, b: -1, c: 0, d: 1 };
        g = t.mul(&g);
        w.x -= 1.0;
    }
    (w, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: HalfPlanePoint, b: HalfPlanePoint, tol: f64) {
        assert!((a.x - b.x).abs() < tol && (a.y - b.y).abs() < tol, "{a:?} vs {b:?}");
    }

    #[test]
    fn already_reduced_points_are_fixed() {
        let i = HalfPlanePoint::new(0.0, 1.0).unwrap();
        let (z, g) = fd_reduce(i);
        assert_close(z, i, 1e-15);
        assert_eq!(g, GL2::IDENTITY);
    }

    #[test]
    fn translation_reduction() {
        let z0 = HalfPlanePoint::new(5.0, 1.0).unwrap();
        let (z, g) = fd_reduce(z0);
        assert_close(z, HalfPlanePoint { x: 0.0, y: 1.0 }, 1e-15);
        assert_eq!(g.det(), 1);
        assert_close(g.apply(z0), z, 1e-12);
    }

    #[test]
    fn deep_point_reduces_with_certified_matrix() {
        // Oracle: iterate translate-and-invert; verify g z = z' to 1e-12.
        let z0 = HalfPlanePoint::new(0.1, 0.1).unwrap();
        let (z, g) = fd_reduce(z0);
        assert!(z.y >= 3.0f64.sqrt() / 2.0 - 1e-12);
        assert!(z.x.abs() <= 0.5 + 1e-12);
        assert!(z.norm_sq() >= 1.0 - 1e-12);
        assert_eq!(g.det(), 1);
        assert_close(g.apply(z0), z, 1e-12);
    }

    #[test]
    fn hecke_point_heights_are_raised() {
        for q in [5u64, 101, 10007] {
            for a in [0u64, 1, q / 3, q - 1] {
                let z0 = HalfPlanePoint::new(a as f64 / q as f64, 1.0 / q as f64).unwrap();
                let (z, g) = fd_reduce(z0);
                assert!(z.y >= 3.0f64.sqrt() / 2.0 - 1e-9, "q={q} a={a}");
                assert_eq!(g.det(), 1);
                let img = g.apply(z0);
                assert!((img.x - z.x).abs() < 1e-9 && (img.y - z.y).abs() < 1e-9);
            }
        }
    }
}
