//! Dirichlet characters represented by full value tables.

use num_complex::Complex64;

use crate::arith::{gcd, is_prime, pow_mod};
use crate::{Error, Result};

/// A Dirichlet character modulo `modulus`, stored as a value table.
#[derive(Debug, Clone)]
pub struct DirichletChar {
    modulus: u64,
    values: Vec<Complex64>,
}

impl DirichletChar {
    /// The trivial (principal) character mod `modulus`.
    pub fn trivial(modulus: u64) -> Self {
        let values = (0..modulus)
            .map(|r| {
                if gcd(r, modulus) == 1 || modulus == 1 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        DirichletChar { modulus, values }
    }

    /// The quadratic character mod an odd prime (Legendre symbol).
    pub fn legendre(p: u64) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::Domain(format!("legendre character needs an odd prime, got {p}")));
        }
        let mut values = vec![Complex64::new(0.0, 0.0); p as usize];
        for r in 1..p {
            let e = pow_mod(r, (p - 1) / 2, p);
            values[r as usize] = if e == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            };
        }
        Ok(DirichletChar { modulus: p, values })
    }

    /// The power-residue character of order `k` mod an odd prime `p`:
    /// `chi(g^j) = e(j/k)` for the smallest primitive root `g`.
    pub fn power_residue_char(p: u64, k: u64) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::Domain(format!("need an odd prime, got {p}")));
        }
        if k == 0 || (p - 1) % k != 0 {
            return Err(Error::Domain(format!("order {k} does not divide p - 1 = {}", p - 1)));
        }
        let g = primitive_root(p)?;
        let mut values = vec![Complex64::new(0.0, 0.0); p as usize];
        let mut pow = 1u64;
        for j in 0..p - 1 {
            let angle = std::f64::consts::TAU * ((j % k) as f64) / (k as f64);
            values[pow as usize] = Complex64::from_polar(1.0, angle);
            pow = (pow as u128 * g as u128 % p as u128) as u64;
        }
        Ok(DirichletChar { modulus: p, values })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn eval(&self, n: u64) -> Complex64 {
        if self.modulus == 1 {
            return Complex64::new(1.0, 0.0);
        }
        self.values[(n % self.modulus) as usize]
    }

    /// Real part of the value at `n` (exact for real characters).
    pub fn eval_re(&self, n: u64) -> f64 {
        self.eval(n).re
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.modulus)
            .filter(|&r| gcd(r, self.modulus) == 1)
            .all(|r| (self.eval(r) - Complex64::new(1.0, 0.0)).norm() < 1e-12)
    }

    /// Conductor: the smallest `f | modulus` such that the character is
    /// constant on residues that agree mod `f` (and are coprime to the
    /// modulus).
    pub fn conductor(&self) -> u64 {
        let m = self.modulus;
        let mut divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
        divisors.sort_unstable();
        'next: for &f in &divisors {
            for a in 1..m {
                if gcd(a, m) != 1 {
                    continue;
                }
                for b in (a + 1)..m {
                    if gcd(b, m) != 1 || (b - a) % f != 0 {
                        continue;
                    }
                    if (self.eval(a) - self.eval(b)).norm() > 1e-9 {
                        continue 'next;
                    }
                }
            }
            return f;
        }
        m
    }

    /// The primitive character inducing this one (value table mod the
    /// conductor). Values at residues coprime to the conductor but not to
    /// the modulus are recovered via `chi*(a) = chi(a + k*f)` for a shift
    /// making the argument coprime to the modulus.
    pub fn primitive_part(&self) -> DirichletChar {
        let f = self.conductor();
        if f == self.modulus {
            return self.clone();
        }
        let mut values = vec![Complex64::new(0.0, 0.0); f as usize];
        for a in 0..f {
            if gcd(a, f) != 1 && f > 1 {
                continue;
            }
            // Find a lift coprime to the full modulus.
            let mut lift = a;
            while gcd(lift.max(1), self.modulus) != 1 {
                lift += f;
            }
            values[a as usize] = self.eval(lift);
        }
        if f == 1 {
            values = vec![Complex64::new(1.0, 0.0)];
        }
        DirichletChar { modulus: f, values }
    }
}

/// Smallest primitive root mod an odd prime.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(1);
    }
    let phi = p - 1;
    let mut prime_factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            prime_factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        prime_factors.push(m);
    }
    for g in 2..p {
        if prime_factors.iter().all(|&f| pow_mod(g, phi / f, p) != 1) {
            return Ok(g);
        }
    }
    Err(Error::Numerical(format!("no primitive root found mod {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_mod_229_is_the_square_of_the_order_4_character() {
        let psi = DirichletChar::power_residue_char(229, 4).unwrap();
        let leg = DirichletChar::legendre(229).unwrap();
        for n in 1..229 {
            let sq = psi.eval(n) * psi.eval(n);
            assert!((sq - leg.eval(n)).norm() < 1e-12, "mismatch at {n}");
        }
    }

    #[test]
    fn power_residue_char_is_multiplicative() {
        let psi = DirichletChar::power_residue_char(229, 4).unwrap();
        for (a, b) in [(3u64, 7u64), (10, 22), (100, 201), (37, 53)] {
            let lhs = psi.eval(a * b % 229);
            let rhs = psi.eval(a) * psi.eval(b);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn conductor_of_induced_character() {
        // Trivial character mod 6 is induced by the character mod 1.
        let chi = DirichletChar::trivial(6);
        assert_eq!(chi.conductor(), 1);
        // Legendre mod 7 is primitive.
        let leg = DirichletChar::legendre(7).unwrap();
        assert_eq!(leg.conductor(), 7);
        let prim = chi.primitive_part();
        assert_eq!(prim.modulus(), 1);
        assert!((prim.eval(5) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn primitive_roots_are_generators() {
        for p in [3u64, 7, 229, 1009] {
            let g = primitive_root(p).unwrap();
            let mut seen = vec![false; p as usize];
            let mut x = 1u64;
            for _ in 0..p - 1 {
                seen[x as usize] = true;
                x = x * g % p;
            }
            assert!((1..p).all(|r| seen[r as usize]));
        }
    }
}
