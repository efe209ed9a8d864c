//! The congruence lattice `{(n1, n2) : n1 + b*n2 = 0 mod q}`, Lagrange-Gauss
//! reduction of rank-2 integer lattices, the minimum `s(q; b)`, and the
//! transformation checks for `s` under multiplication of `b`.
//!
//! Norm comparisons use exact integer squared norms throughout; a floating
//! square root appears only at the reporting boundary.

use crate::arith::{gcd, mod_inv};
use crate::{Error, Result};

pub type Vec2 = [i64; 2];

fn norm_sq(v: Vec2) -> i128 {
    let x = v[0] as i128;
    let y = v[1] as i128;
    x * x + y * y
}

fn dot(a: Vec2, b: Vec2) -> i128 {
    a[0] as i128 * b[0] as i128 + a[1] as i128 * b[1] as i128
}

/// An integer basis of a finite-index sublattice of Z^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice2D {
    pub v1: Vec2,
    pub v2: Vec2,
}

impl Lattice2D {
    pub fn new(v1: Vec2, v2: Vec2) -> Result<Self> {
        let l = Lattice2D { v1, v2 };
        if l.det() == 0 {
            return Err(Error::Domain(format!(
                "degenerate basis ({:?}, {:?})",
                v1, v2
            )));
        }
        Ok(l)
    }

    pub fn det(&self) -> i128 {
        self.v1[0] as i128 * self.v2[1] as i128 - self.v1[1] as i128 * self.v2[0] as i128
    }

    /// Index in Z^2 (absolute determinant).
    pub fn covolume(&self) -> i128 {
        self.det().abs()
    }

    /// Does `(n1, n2)` belong to the lattice spanned by the basis?
    pub fn contains(&self, n: Vec2) -> bool {
        // Solve u*v1 + v*v2 = n over the rationals; membership iff integral.
        let det = self.det();
        let u_num = n[0] as i128 * self.v2[1] as i128 - n[1] as i128 * self.v2[0] as i128;
        let v_num = self.v1[0] as i128 * n[1] as i128 - self.v1[1] as i128 * n[0] as i128;
        u_num % det == 0 && v_num % det == 0
    }
}

/// A Lagrange-Gauss reduced basis: `x` attains the lattice minimum,
/// `|x| <= |y|` and `|x ± y| >= |y|`.
#[derive(Debug, Clone, Copy)]
pub struct ReducedBasis {
    pub x: Vec2,
    pub y: Vec2,
    /// Exact squared length of `x`.
    pub s_sq: i128,
}

impl ReducedBasis {
    /// The minimum as a real number.
    pub fn s(&self) -> f64 {
        (self.s_sq as f64).sqrt()
    }
}

/// The lattice `{(n1, n2) : n1 + sign*b*n2 = 0 mod q}` with basis
/// `(-sign*b, 1), (q, 0)` and covolume `q`.
pub fn lambda_lattice(q: u64, b: u64, sign: i8) -> Result<Lattice2D> {
    if q == 0 {
        return Err(Error::Domain("q must be positive".into()));
    }
    if gcd(b % q, q) != 1 {
        return Err(Error::Domain(format!("gcd(b, q) > 1 for b = {b}, q = {q}")));
    }
    let b = (b % q) as i64;
    let s = if sign >= 0 { 1i64 } else { -1i64 };
    Lattice2D::new([-s * b, 1], [q as i64, 0])
}

/// Lagrange-Gauss reduction. Terminates in O(log max-norm) swap steps.
pub fn gauss_reduce(lattice: &Lattice2D) -> Result<ReducedBasis> {
    if lattice.det() == 0 {
        return Err(Error::Domain("degenerate basis".into()));
    }
    let mut a = lattice.v1;
    let mut b = lattice.v2;
    if norm_sq(a) > norm_sq(b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        // mu = round(<a,b> / |a|^2), rounding half away from zero.
        let n = norm_sq(a);
        let d = dot(a, b);
        let mu = if d >= 0 { (2 * d + n) / (2 * n) } else { -((-2 * d + n) / (2 * n)) };
        let b_new = [
            b[0] - (mu as i64).wrapping_mul(a[0]),
            b[1] - (mu as i64).wrapping_mul(a[1]),
        ];
        b = b_new;
        if norm_sq(b) >= norm_sq(a) {
            break;
        }
        std::mem::swap(&mut a, &mut b);
    }
    Ok(ReducedBasis {
        x: a,
        y: b,
        s_sq: norm_sq(a),
    })
}

/// Exact squared minimum of the lattice for `(q, b)`.
pub fn s_min_sq(q: u64, b: u64) -> Result<i128> {
    let lattice = lambda_lattice(q, b, 1)?;
    Ok(gauss_reduce(&lattice)?.s_sq)
}

/// The minimum `s(q; b)` as a real number.
pub fn s_min(q: u64, b: u64) -> Result<f64> {
    Ok((s_min_sq(q, b)? as f64).sqrt())
}

/// Brute-force minimum over all lattice points with coordinates in
/// `[-ceil(sqrt(2q)), ceil(sqrt(2q))]`. Independent oracle for `s_min`.
pub fn s_min_sq_bruteforce(q: u64, b: u64) -> Result<i128> {
    if gcd(b % q, q) != 1 {
        return Err(Error::Domain(format!("gcd(b, q) > 1 for b = {b}, q = {q}")));
    }
    let bound = ((2.0 * q as f64).sqrt().ceil()) as i64;
    let qi = q as i64;
    let bi = (b % q) as i64;
    let mut best = i128::MAX;
    for n2 in -bound..=bound {
        for n1 in -bound..=bound {
            if n1 == 0 && n2 == 0 {
                continue;
            }
            if (n1 + bi * n2).rem_euclid(qi) == 0 {
                let ns = norm_sq([n1, n2]);
                if ns < best {
                    best = ns;
                }
            }
        }
    }
    // The Minkowski bound guarantees a vector with |v|^2 <= 2q/sqrt(3)
    // inside the search box.
    assert!(best < i128::MAX);
    Ok(best)
}

/// Per-inequality report for the transformation of `s` under `b -> b*d`
/// and `b -> b*inverse(d)`.
#[derive(Debug, Clone, Copy)]
pub struct MinLemmaReport {
    pub s_b_sq: i128,
    pub s_bd_sq: i128,
    pub s_bdinv_sq: i128,
    pub s_binv_sq: i128,
    /// d^{-1} s(b) <= s(bd)
    pub lower_bd: bool,
    /// s(bd) <= d s(b)
    pub upper_bd: bool,
    /// d^{-1} s(b) <= s(b*dinv)
    pub lower_bdinv: bool,
    /// s(b*dinv) <= d s(b)
    pub upper_bdinv: bool,
    /// s(b) = s(binv)
    pub inverse_eq: bool,
}

impl MinLemmaReport {
    pub fn all_pass(&self) -> bool {
        self.lower_bd && self.upper_bd && self.lower_bdinv && self.upper_bdinv && self.inverse_eq
    }
}

/// Exact check of the five minimum inequalities for `(q, b, d)`.
pub fn check_min_lemma(q: u64, b: u64, d: u64) -> Result<MinLemmaReport> {
    if gcd(d % q, q) != 1 || gcd(b % q, q) != 1 {
        return Err(Error::Domain(format!(
            "gcd(db, q) must be 1 (b = {b}, d = {d}, q = {q})"
        )));
    }
    let bd = (b as u128 * d as u128 % q as u128) as u64;
    let dinv = mod_inv(d % q, q)?;
    let binv = mod_inv(b % q, q)?;
    let bdinv = (b as u128 * dinv as u128 % q as u128) as u64;
    let s_b = s_min_sq(q, b)?;
    let s_bd = s_min_sq(q, bd)?;
    let s_bdinv = s_min_sq(q, bdinv)?;
    let s_binv = s_min_sq(q, binv)?;
    let d2 = (d as i128) * (d as i128);
    Ok(MinLemmaReport {
        s_b_sq: s_b,
        s_bd_sq: s_bd,
        s_bdinv_sq: s_bdinv,
        s_binv_sq: s_binv,
        // All squared: d^{-1} s(b) <= s(bd)  <=>  s(b)^2 <= d^2 s(bd)^2.
        lower_bd: s_b <= d2 * s_bd,
        upper_bd: s_bd <= d2 * s_b,
        lower_bdinv: s_b <= d2 * s_bdinv,
        upper_bdinv: s_bdinv <= d2 * s_b,
        inverse_eq: s_b == s_binv,
    })
}
