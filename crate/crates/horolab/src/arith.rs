//! Exact integer and modular arithmetic primitives shared by every other
//! module.
//!
//! All modular products go through 128-bit intermediates, so moduli up to
//! 2^62 are safe.

use crate::{Error, Result};

/// A residue class `value` modulo `modulus`, kept normalized to `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        let m = modulus as i64;
        let v = value.rem_euclid(m) as u64;
        Ok(Residue { value: v, modulus })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mul(&self, other: &Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn pow(&self, k: u64) -> Residue {
        Residue {
            value: pow_mod(self.value, k, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse; errors when `gcd(value, modulus) > 1`.
    pub fn inv(&self) -> Result<Residue> {
        mod_inv(self.value, self.modulus).map(|v| Residue {
            value: v,
            modulus: self.modulus,
        })
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = ext_gcd(b, a % b);
    (g, y, x - (a / b) * y)
}

pub fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `q`; errors when not coprime.
pub fn mod_inv(a: u64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let (g, x, _) = ext_gcd(a as i128, q as i128);
    if g != 1 {
        return Err(Error::Domain(format!(
            "{a} is not invertible mod {q} (gcd = {g})"
        )));
    }
    Ok(x.rem_euclid(q as i128) as u64)
}

/// Deterministic Miller-Rabin, valid for all `n < 2^63`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    // This base set is a proven deterministic witness set far beyond 2^63.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Is `a` a k-th power residue modulo the prime modulus of `a`?
///
/// Uses the Euler criterion `a^((p-1)/k) = 1 (mod p)`; requires `k | p - 1`.
pub fn power_residue(a: &Residue, k: u64) -> Result<bool> {
    let p = a.modulus();
    if !is_prime(p) {
        return Err(Error::Domain(format!("modulus {p} is not prime")));
    }
    if gcd(a.value(), p) != 1 {
        return Err(Error::Domain(format!(
            "{} is not coprime to {p}",
            a.value()
        )));
    }
    if k == 0 || (p - 1) % k != 0 {
        return Err(Error::Domain(format!("{k} does not divide p - 1 = {}", p - 1)));
    }
    Ok(pow_mod(a.value(), (p - 1) / k, p) == 1)
}

/// A rational approximation `numerator / denominator` to some real, with
/// gcd(numerator, denominator) = 1 and a certified error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalApprox {
    pub numerator: u64,
    pub denominator: u64,
    pub error_bound: f64,
}

/// Continued-fraction convergent of `y` with the largest denominator `<= cap`.
///
/// When a further convergent exists the returned error bound is
/// `1/(q * q_next) <= 1/(q * cap)`; for (numerically) exact rationals it is
/// the observed difference.
pub fn best_rational(y: f64, cap: u64) -> Result<RationalApprox> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("best_rational needs y > 0, got {y}")));
    }
    if cap < 1 {
        return Err(Error::Domain("denominator cap must be >= 1".into()));
    }
    // Convergent recurrences h_k = a_k h_{k-1} + h_{k-2}.
    let (mut h_prev, mut h) = (1u64, y.floor() as u64);
    let (mut k_prev, mut k) = (0u64, 1u64);
    let mut frac = y - y.floor();
    // 1e-13 relative cutoff: below f64 resolution the tail digits are noise.
    let eps = 1e-13 * y.max(1.0);
    loop {
        if frac.abs() < eps {
            break;
        }
        let x = 1.0 / frac;
        let a = x.floor();
        if !(a >= 1.0) || a > 1e15 {
            break;
        }
        let a_int = a as u64;
        // Next convergent; stop before exceeding the cap.
        let k_next = match a_int.checked_mul(k).and_then(|v| v.checked_add(k_prev)) {
            Some(v) if v <= cap => v,
            _ => break,
        };
        let h_next = a_int * h + h_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        frac = x - a;
    }
    let err = (y - h as f64 / k as f64).abs();
    Ok(RationalApprox {
        numerator: h,
        denominator: k,
        error_bound: err.max(1.0 / (k as f64 * cap as f64)),
    })
}

/// Primes `<= limit` in increasing order (sieve of Eratosthenes).
pub fn prime_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Smallest-prime-factor table for `2..=limit`; `spf[n]` is the least prime
/// dividing `n` (`spf[0] = spf[1] = 0`).
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn build(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut m = i;
                while m <= limit {
                    if spf[m] == 0 {
                        spf[m] = i as u32;
                    }
                    m += i;
                }
            }
        }
        SpfTable { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn smallest_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    /// Factorization of `n` as `(prime, exponent)` pairs, primes increasing.
    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        assert!(
            (n as usize) < self.spf.len(),
            "factor({n}) beyond table limit {}",
            self.limit()
        );
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    /// Number of divisors.
    pub fn divisor_count(&self, n: u64) -> u64 {
        self.factor(n).iter().map(|&(_, e)| e as u64 + 1).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mod_inv_examples() {
        assert_eq!(mod_inv(1, 7).unwrap(), 1);
        // Oracle: exhaustive search over residues.
        let exhaustive = |a: u64, q: u64| (1..q).find(|x| (x * a) % q == 1).unwrap();
        assert_eq!(mod_inv(2, 7).unwrap(), exhaustive(2, 7));
        assert_eq!(mod_inv(2, 7).unwrap(), 4);
        assert_eq!(mod_inv(3, 10).unwrap(), exhaustive(3, 10));
        assert_eq!(mod_inv(3, 10).unwrap(), 7);
        assert!(mod_inv(6, 10).is_err());
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(229));
        assert!(!is_prime(1));
        assert!(!is_prime(221)); // 13 * 17
        assert!(is_prime(100003));
        assert!(!is_prime(100001));
    }

    #[test]
    fn is_prime_matches_trial_division_below_10000() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..10_000u64 {
            assert_eq!(is_prime(n), trial(n), "disagree at {n}");
        }
    }

    #[test]
    fn power_residue_examples() {
        // 37 and 53 are 4th power residues mod 229 (modular exponentiation
        // oracle: a^57 mod 229).
        let r37 = Residue::new(37, 229).unwrap();
        let r53 = Residue::new(53, 229).unwrap();
        assert_eq!(pow_mod(37, 57, 229), 1);
        assert_eq!(pow_mod(53, 57, 229), 1);
        assert!(power_residue(&r37, 4).unwrap());
        assert!(power_residue(&r53, 4).unwrap());
        let one = Residue::new(1, 229).unwrap();
        assert!(power_residue(&one, 4).unwrap());
        // k must divide p - 1.
        assert!(power_residue(&r37, 5).is_err());
    }

    #[test]
    fn squares_are_quadratic_residues() {
        let p = 1009u64;
        for a in 1..p {
            let sq = Residue::new((mul_mod(a, a, p)) as i64, p).unwrap();
            assert!(power_residue(&sq, 2).unwrap());
        }
    }

    #[test]
    fn best_rational_examples() {
        let r = best_rational(1.5, 10).unwrap();
        assert_eq!((r.numerator, r.denominator), (3, 2));

        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        // Convergents 1, 2, 3/2, 5/3, 8/5, 13/8, 21/13, ...
        let r = best_rational(golden, 10).unwrap();
        assert_eq!((r.numerator, r.denominator), (13, 8));
        assert!((golden - 13.0 / 8.0).abs() <= r.error_bound);

        let r = best_rational(1.0, 5).unwrap();
        assert_eq!((r.numerator, r.denominator), (1, 1));
    }

    #[test]
    fn prime_sieve_examples() {
        assert_eq!(prime_sieve(10), vec![2, 3, 5, 7]);
        assert_eq!(prime_sieve(2), vec![2]);
        let primes = prime_sieve(229);
        // Oracle: trial division count, pi(229) = 50.
        let trial: Vec<u64> = (2..=229)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, trial);
        assert_eq!(primes.len(), 50);
        assert_eq!(*primes.last().unwrap(), 229);
    }

    #[test]
    fn spf_table_factors() {
        let spf = SpfTable::build(1000);
        assert_eq!(spf.factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(spf.divisor_count(360), 24);
        assert_eq!(spf.factor(1), vec![]);
        assert_eq!(spf.smallest_factor(221), 13);
    }

    proptest! {
        #[test]
        fn mod_inv_is_an_involution(q in 2u64..100_000, a in 1u64..100_000) {
            let a = a % q;
            prop_assume!(a > 0 && gcd(a, q) == 1);
            let inv = mod_inv(a, q).unwrap();
            prop_assert_eq!(mod_inv(inv, q).unwrap(), a);
            prop_assert_eq!(mul_mod(a, inv, q), 1 % q);
        }

        #[test]
        fn best_rational_recovers_exact_fractions(a in 1u64..500, q in 1u64..500) {
            let g = gcd(a, q);
            let r = best_rational(a as f64 / q as f64, 500).unwrap();
            prop_assert_eq!((r.numerator, r.denominator), (a / g, q / g));
        }
    }
}
