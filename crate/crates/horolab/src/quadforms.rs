//! Integral binary quadratic forms: reduction, class numbers (definite and
//! indefinite), Gauss composition, the Heegner-form family
//! `(q^2, 2qa, a^2 + 1)`, and the numeric audit of the order-3 / order-4
//! character construction over the real quadratic field of discriminant 229.

use serde::Serialize;

use crate::arith::{gcd, is_prime, pow_mod};
use crate::chars::DirichletChar;
use crate::{Error, Result};

/// The form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// gcd of the coefficients.
    pub fn content(&self) -> i64 {
        gcd(
            gcd(self.a.unsigned_abs(), self.b.unsigned_abs()),
            self.c.unsigned_abs(),
        ) as i64
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn is_definite(&self) -> bool {
        self.disc() < 0
    }

    /// Reduced in the positive-definite sense: `|b| <= a <= c`, with
    /// `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced_definite(&self) -> bool {
        if self.disc() >= 0 || self.a <= 0 {
            return false;
        }
        let ab = self.b.abs();
        if ab > self.a || self.a > self.c {
            return false;
        }
        if (ab == self.a || self.a == self.c) && self.b < 0 {
            return false;
        }
        true
    }

    /// The inverse class representative `(a, -b, c)`.
    pub fn inverse(&self) -> QuadForm {
        QuadForm::new(self.a, -self.b, self.c)
    }
}

/// Reduce a positive-definite form by the normalize/flip loop.
pub fn reduce_definite(f: &QuadForm) -> Result<QuadForm> {
    if f.disc() >= 0 {
        return Err(Error::Domain(format!(
            "form {:?} is not definite (disc {})",
            f,
            f.disc()
        )));
    }
    let (mut a, mut b, mut c) = (f.a as i128, f.b as i128, f.c as i128);
    if a < 0 {
        a = -a;
        c = -c;
    }
    if a == 0 {
        return Err(Error::Domain("degenerate form with a = 0".into()));
    }
    loop {
        if c < a {
            std::mem::swap(&mut a, &mut c);
            b = -b;
        }
        if b.abs() > a {
            // Normalize b into (-a, a].
            let two_a = 2 * a;
            let mut r = b.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            let k = (b - r) / two_a;
            // c' = c - k*b + k^2*a keeps the discriminant.
            c = c - k * b + k * k * a;
            b = r;
            continue;
        }
        if c < a {
            continue;
        }
        if (b.abs() == a || a == c) && b < 0 {
            b = -b;
            continue;
        }
        break;
    }
    Ok(QuadForm::new(a as i64, b as i64, c as i64))
}

/// Forms are equivalent iff their reductions agree.
pub fn equivalent_definite(f: &QuadForm, g: &QuadForm) -> Result<bool> {
    Ok(reduce_definite(f)? == reduce_definite(g)?)
}

/// All reduced forms of a negative discriminant, primitive or not.
pub fn reduced_forms_definite(disc: i64) -> Result<Vec<QuadForm>> {
    if disc >= 0 {
        return Err(Error::Domain(format!("need disc < 0, got {disc}")));
    }
    if disc.rem_euclid(4) != 0 && disc.rem_euclid(4) != 1 {
        return Err(Error::Domain(format!("{disc} is not 0 or 1 mod 4")));
    }
    let mut out = Vec::new();
    let mut b = if disc.rem_euclid(2) == 0 { 0i64 } else { 1i64 };
    while b * b <= -disc / 3 {
        let m = (b * b - disc) / 4;
        let mut a = if b == 0 { 1 } else { b };
        while a * a <= m {
            if a > 0 && m % a == 0 {
                let c = m / a;
                // (a, b, c) with |b| <= a <= c.
                out.push(QuadForm::new(a, b, c));
                if b != 0 && b < a && a < c {
                    out.push(QuadForm::new(a, -b, c));
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort_by_key(|f| (f.a, f.b, f.c));
    Ok(out)
}

/// Class group data for one discriminant.
#[derive(Debug, Clone, Serialize)]
pub struct ClassGroupData {
    pub disc: i64,
    /// Number of classes of primitive forms.
    pub class_number: u64,
    pub representatives: Vec<QuadForm>,
    /// Orders of the class group characters (= element orders of the group).
    pub character_orders: Vec<u64>,
}

/// The identity class representative for discriminant `d`.
pub fn principal_form(d: i64) -> QuadForm {
    if d.rem_euclid(4) == 0 {
        QuadForm::new(1, 0, -d / 4)
    } else {
        QuadForm::new(1, 1, (1 - d) / 4)
    }
}

fn ext_gcd3(a: i128, b: i128, c: i128) -> (i128, i128, i128, i128) {
    let (g1, u1, v1) = crate::arith::ext_gcd(a, b);
    let (g, u2, v2) = crate::arith::ext_gcd(g1, c);
    (g, u2 * u1, u2 * v1, v2)
}

/// Gauss composition of primitive definite forms of equal discriminant;
/// returns the reduced representative of the product class.
pub fn compose_definite(f1: &QuadForm, f2: &QuadForm) -> Result<QuadForm> {
    if f1.disc() != f2.disc() {
        return Err(Error::Domain("composition needs equal discriminants".into()));
    }
    if !f1.is_primitive() || !f2.is_primitive() {
        return Err(Error::Domain("composition needs primitive forms".into()));
    }
    let d = f1.disc() as i128;
    let (a1, b1, c1) = (f1.a as i128, f1.b as i128, f1.c as i128);
    let (a2, b2) = (f2.a as i128, f2.b as i128);
    let s = (b1 + b2) / 2;
    let (g, _u, v, w) = ext_gcd3(a1, a2, s);
    let a3 = a1 * a2 / (g * g);
    let half_diff = (b1 - b2) / 2;
    let inner = v * half_diff - w * c1;
    let b_raw = b1 + 2 * a1 * inner / g;
    let two_a3 = 2 * a3;
    let mut b3 = b_raw.rem_euclid(two_a3);
    if b3 > a3 {
        b3 -= two_a3;
    }
    let c3 = (b3 * b3 - d) / (4 * a3);
    reduce_definite(&QuadForm::new(a3 as i64, b3 as i64, c3 as i64))
}

/// Repeated composition.
pub fn power_definite(f: &QuadForm, n: u64) -> Result<QuadForm> {
    let id = reduce_definite(&principal_form(f.disc()))?;
    let mut acc = id;
    let mut base = reduce_definite(f)?;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = compose_definite(&acc, &base)?;
        }
        base = compose_definite(&base, &base)?;
        e >>= 1;
    }
    Ok(acc)
}

/// Enumerate primitive reduced forms and compute class group structure.
pub fn class_group_definite(disc: i64) -> Result<ClassGroupData> {
    let all = reduced_forms_definite(disc)?;
    let primitive: Vec<QuadForm> = all.into_iter().filter(|f| f.is_primitive()).collect();
    let h = primitive.len() as u64;
    let id = reduce_definite(&principal_form(disc))?;
    let order_of = |f: &QuadForm| -> Result<u64> {
        let mut acc = *f;
        let mut k = 1u64;
        while acc != id {
            acc = compose_definite(&acc, f)?;
            k += 1;
            if k > h {
                return Err(Error::Numerical("class group order overflow".into()));
            }
        }
        Ok(k)
    };
    let mut character_orders = Vec::with_capacity(primitive.len());
    for f in &primitive {
        character_orders.push(order_of(f)?);
    }
    character_orders.sort_unstable();
    Ok(ClassGroupData {
        disc,
        class_number: h,
        representatives: primitive,
        character_orders,
    })
}

/// Class data with discrete logarithms for a cyclic class group: returns
/// `(data, dlogs)` where `dlogs[i]` is the exponent of representative `i`
/// with respect to a fixed generator.
pub fn cyclic_dlogs(data: &ClassGroupData) -> Result<Vec<u64>> {
    let h = data.class_number;
    if h == 1 {
        return Ok(vec![0]);
    }
    let generator = data
        .representatives
        .iter()
        .zip(&data.character_orders_by_rep()?)
        .find(|(_, &ord)| ord == h)
        .map(|(f, _)| *f)
        .ok_or_else(|| {
            Error::Domain(format!(
                "class group of disc {} is not cyclic; characters beyond the trivial one are unsupported",
                data.disc
            ))
        })?;
    let mut dlog_of = std::collections::HashMap::new();
    let mut acc = reduce_definite(&principal_form(data.disc))?;
    for k in 0..h {
        dlog_of.insert(acc, k);
        acc = compose_definite(&acc, &generator)?;
    }
    data.representatives
        .iter()
        .map(|f| {
            dlog_of
                .get(&reduce_definite(f)?)
                .copied()
                .ok_or_else(|| Error::Numerical("class not generated".into()))
        })
        .collect()
}

impl ClassGroupData {
    /// Element orders aligned with `representatives` (unsorted).
    pub fn character_orders_by_rep(&self) -> Result<Vec<u64>> {
        let id = reduce_definite(&principal_form(self.disc))?;
        self.representatives
            .iter()
            .map(|f| {
                let mut acc = *f;
                let mut k = 1u64;
                while acc != id {
                    acc = compose_definite(&acc, f)?;
                    k += 1;
                }
                Ok(k)
            })
            .collect()
    }
}

/// Definite class-number report: primitive classes are the class number;
/// imprimitive reduced forms are reported separately.
pub fn class_number_definite(disc: i64) -> Result<(ClassGroupData, Vec<QuadForm>)> {
    let all = reduced_forms_definite(disc)?;
    let imprimitive: Vec<QuadForm> = all.iter().filter(|f| !f.is_primitive()).copied().collect();
    let data = class_group_definite(disc)?;
    Ok((data, imprimitive))
}

/// Report for the Heegner family `F_{q,a} = (q^2, 2qa, a^2 + 1)`.
#[derive(Debug, Clone, Serialize)]
pub struct HeegnerReport {
    pub q: u64,
    /// Number of distinct classes among the reductions of all q forms.
    pub distinct_classes: u64,
    /// Number of distinct classes coming from primitive forms only.
    pub distinct_primitive_classes: u64,
    /// Indices a with imprimitive form, i.e. a^2 = -1 mod q.
    pub imprimitive_indices: Vec<u64>,
    /// Every pair (a1, a2) satisfied: equivalent iff a1*a2 = -1 or a1 = a2.
    pub criterion_verified: bool,
    /// First counterexample pair if the criterion failed.
    pub criterion_witness: Option<(u64, u64)>,
}

/// Reduce all `F_{q,a}`, count distinct classes, and verify the stated
/// equivalence criterion pairwise.
pub fn heegner_point_count(q: u64) -> Result<HeegnerReport> {
    if !is_prime(q) || q == 2 {
        return Err(Error::Domain(format!("need an odd prime, got {q}")));
    }
    let qi = q as i64;
    let forms: Vec<QuadForm> = (0..qi)
        .map(|a| QuadForm::new(qi * qi, 2 * qi * a, a * a + 1))
        .collect();
    let reduced: Vec<QuadForm> = forms
        .iter()
        .map(reduce_definite)
        .collect::<Result<_>>()?;
    let imprimitive_indices: Vec<u64> = (0..q).filter(|&a| forms[a as usize].content() > 1).collect();

    let mut distinct: Vec<QuadForm> = reduced.clone();
    distinct.sort_by_key(|f| (f.a, f.b, f.c));
    distinct.dedup();
    let mut distinct_primitive: Vec<QuadForm> = (0..q as usize)
        .filter(|&a| forms[a].is_primitive())
        .map(|a| reduced[a])
        .collect();
    distinct_primitive.sort_by_key(|f| (f.a, f.b, f.c));
    distinct_primitive.dedup();

    let mut criterion_verified = true;
    let mut criterion_witness = None;
    'outer: for a1 in 0..q {
        for a2 in a1..q {
            let equivalent = reduced[a1 as usize] == reduced[a2 as usize];
            let predicted = (a1 * a2) % q == q - 1 || a1 == a2;
            if equivalent != predicted {
                criterion_verified = false;
                criterion_witness = Some((a1, a2));
                break 'outer;
            }
        }
    }

    Ok(HeegnerReport {
        q,
        distinct_classes: distinct.len() as u64,
        distinct_primitive_classes: distinct_primitive.len() as u64,
        imprimitive_indices,
        criterion_verified,
        criterion_witness,
    })
}

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Reduced indefinite form: `0 < b < sqrt(D)` and `sqrt(D) - 2|a| < b`.
fn is_reduced_indefinite(f: &QuadForm, d: i64) -> bool {
    if f.b <= 0 || f.b * f.b >= d {
        return false;
    }
    let lhs = f.b + 2 * f.a.abs();
    lhs * lhs > d
}

/// One rho-reduction step `(a, b, c) -> (c, r, (r^2 - D)/(4c))` with
/// `r = -b (mod 2|c|)` in the window `(sqrt(D) - 2|c|, sqrt(D)]`.
pub fn rho_step(f: &QuadForm) -> QuadForm {
    let d = f.disc();
    let s0 = isqrt(d);
    let two_c = 2 * f.c.abs();
    let mut r = (-f.b).rem_euclid(two_c);
    // Shift into (s0 - 2|c|, s0].
    r += ((s0 - r).div_euclid(two_c)) * two_c;
    let new_c = (r * r - d) / (4 * f.c);
    QuadForm::new(f.c, r, new_c)
}

/// All reduced indefinite forms of positive non-square discriminant.
pub fn reduced_forms_indefinite(d: i64) -> Result<Vec<QuadForm>> {
    if d <= 0 || d.rem_euclid(4) > 1 {
        return Err(Error::Domain(format!("need a positive discriminant, got {d}")));
    }
    let s0 = isqrt(d);
    if s0 * s0 == d {
        return Err(Error::Domain(format!("discriminant {d} is a square")));
    }
    let mut out = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= s0 {
        let m = (b * b - d) / 4; // negative
        let prod = -m;
        let mut a = 1i64;
        while a * a <= prod {
            if prod % a == 0 {
                let c = -(prod / a);
                for (aa, cc) in [(a, c), (-a, -c), (prod / a, -a * c.signum().abs()), (0, 0)] {
                    let _ = (aa, cc);
                }
                // Divisor pair (a, prod/a): forms with |a'| in {a, prod/a}.
                for abs_a in [a, prod / a] {
                    let cc = -(prod / abs_a);
                    for sign in [1i64, -1] {
                        let f = QuadForm::new(sign * abs_a, b, sign * cc * -1 * -1 * 1);
                        let f = QuadForm::new(f.a, f.b, (f.b * f.b - d) / (4 * f.a));
                        if is_reduced_indefinite(&f, d) && !out.contains(&f) {
                            out.push(f);
                        }
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort_by_key(|f| (f.b, f.a, f.c));
    Ok(out)
}

/// Class number of an indefinite discriminant as the number of
/// rho-reduction cycles among primitive reduced forms.
pub fn indefinite_class_number(d: i64) -> Result<ClassGroupData> {
    let reduced = reduced_forms_indefinite(d)?;
    let primitive: Vec<QuadForm> = reduced.into_iter().filter(|f| f.is_primitive()).collect();
    let mut visited: std::collections::HashSet<QuadForm> = std::collections::HashSet::new();
    let mut cycles = 0u64;
    let mut cycle_reps = Vec::new();
    for f in &primitive {
        if visited.contains(f) {
            continue;
        }
        cycles += 1;
        cycle_reps.push(*f);
        let mut g = *f;
        loop {
            visited.insert(g);
            g = rho_step(&g);
            debug_assert_eq!(g.disc(), d);
            if g == *f {
                break;
            }
            if visited.contains(&g) {
                break;
            }
        }
    }
    Ok(ClassGroupData {
        disc: d,
        class_number: cycles,
        representatives: cycle_reps,
        character_orders: Vec::new(),
    })
}

/// Bounded search for a representation `f(x, y) = n`; `None` means
/// "not found within the bound" (inconclusive), never proven negative.
pub fn represents(f: &QuadForm, n: i64, bound: i64) -> Option<(i64, i64)> {
    for y in -bound..=bound {
        for x in -bound..=bound {
            let v = (f.a as i128) * (x as i128) * (x as i128)
                + (f.b as i128) * (x as i128) * (y as i128)
                + (f.c as i128) * (y as i128) * (y as i128);
            if v == n as i128 {
                return Some((x, y));
            }
        }
    }
    None
}

/// Solve `x^2 - d y^2 = -4` within a small search bound (existence of a
/// norm -1 unit up to scaling).
pub fn negative_pell_unit(d: i64, bound: i64) -> Option<(i64, i64)> {
    for y in 1..=bound {
        let target = d as i128 * (y as i128) * (y as i128) - 4;
        if target < 0 {
            continue;
        }
        let x = (target as f64).sqrt().round() as i128;
        for cand in [x - 1, x, x + 1] {
            if cand >= 0 && cand * cand == target {
                return Some((cand as i64, y));
            }
        }
    }
    None
}

/// One audited claim of the CM construction.
#[derive(Debug, Clone, Serialize)]
pub struct AuditItem {
    pub claim: String,
    pub reference: String,
    pub result: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CmAuditReport {
    pub items: Vec<AuditItem>,
    pub all_pass: bool,
}

/// Verify the full numeric data behind the order-3 x order-4 character
/// construction for discriminant 229 and auxiliary primes 37, 53.
pub fn cm_construction_audit() -> Result<CmAuditReport> {
    let mut items = Vec::new();

    // (i) 229 is prime and 1 mod 4.
    let i1 = is_prime(229) && 229 % 4 == 1;
    items.push(AuditItem {
        claim: "229 is a prime congruent to 1 mod 4".into(),
        reference: "fundamental-discriminant".into(),
        result: i1,
        witness: format!("is_prime(229) = {}, 229 = 4*57 + 1", is_prime(229)),
    });

    // (ii) Indefinite class number 3, so an order-3 class character exists.
    // The fundamental unit has norm -1 (x^2 - 229 y^2 = -4 is solvable), so
    // form classes and ideal classes agree.
    let cg = indefinite_class_number(229)?;
    let unit = negative_pell_unit(229, 100);
    let i2 = cg.class_number == 3 && unit.is_some();
    items.push(AuditItem {
        claim: "the real quadratic field of discriminant 229 has class number 3".into(),
        reference: "indefinite-form-cycles".into(),
        result: i2,
        witness: format!(
            "cycles = {}, norm -1 unit witness x^2 - 229 y^2 = -4 at {:?}",
            cg.class_number, unit
        ),
    });

    // (iii) An order-4 Dirichlet character mod 229 exists and its square is
    // the quadratic character.
    let order4 = DirichletChar::power_residue_char(229, 4)?;
    let legendre = DirichletChar::legendre(229)?;
    let mut square_ok = 228 % 4 == 0;
    for n in 1..229u64 {
        let sq = order4.eval(n) * order4.eval(n);
        if (sq - legendre.eval(n)).norm() > 1e-12 {
            square_ok = false;
            break;
        }
    }
    items.push(AuditItem {
        claim: "an order-4 character mod 229 exists with square the quadratic character".into(),
        reference: "character-group-mod-229".into(),
        result: square_ok,
        witness: format!(
            "228 = 4*57, generator g = {}, verified psi^2 = legendre on all residues",
            crate::chars::primitive_root(229)?
        ),
    });

    // (iv) 37 and 53 are split primes (Legendre(229 | p) = +1).
    let split_37 = pow_mod(229 % 37, (37 - 1) / 2, 37) == 1;
    let split_53 = pow_mod(229 % 53, (53 - 1) / 2, 53) == 1;
    items.push(AuditItem {
        claim: "37 and 53 split in the field of discriminant 229".into(),
        reference: "euler-criterion".into(),
        result: split_37 && split_53,
        witness: format!("(229|37): 229^18 = 1 mod 37 is {split_37}; (229|53): 229^26 = 1 mod 53 is {split_53}"),
    });

    // (v) Both lie over principal ideals: the principal form represents
    // +-37 and +-53 within the search bound.
    let principal = QuadForm::new(1, 1, -57);
    let w37 = represents(&principal, 37, 100).or_else(|| represents(&principal, -37, 100));
    let w53 = represents(&principal, 53, 100).or_else(|| represents(&principal, -53, 100));
    items.push(AuditItem {
        claim: "37 and 53 lie over principal ideals".into(),
        reference: "principal-form-representation".into(),
        result: w37.is_some() && w53.is_some(),
        witness: format!("x^2 + xy - 57 y^2 witnesses: 37 -> {w37:?}, 53 -> {w53:?}"),
    });

    // (vi) Both are 4th power residues mod 229.
    let r37 = pow_mod(37, 57, 229);
    let r53 = pow_mod(53, 57, 229);
    items.push(AuditItem {
        claim: "37 and 53 are 4th power residues mod 229".into(),
        reference: "euler-criterion-order-4".into(),
        result: r37 == 1 && r53 == 1,
        witness: format!("37^57 mod 229 = {r37}, 53^57 mod 229 = {r53}"),
    });

    let all_pass = items.iter().all(|i| i.result);
    Ok(CmAuditReport { items, all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_definite_examples() {
        let f = QuadForm::new(1, 0, 1);
        assert_eq!(reduce_definite(&f).unwrap(), f);

        let f = QuadForm::new(2, 2, 3);
        assert_eq!(reduce_definite(&f).unwrap(), f);

        // Hand reduction oracle: (9, 6, 2) has disc -36; the reduced forms
        // of disc -36 are (1, 0, 9), (2, +-2, 5), (3, 0, 3) and the class
        // of (9, 6, 2) is (2, 2, 5) after the flip/normalize loop.
        let f = QuadForm::new(9, 6, 2);
        let r = reduce_definite(&f).unwrap();
        assert_eq!(r.disc(), -36);
        assert_eq!(r, QuadForm::new(2, 2, 5));
        assert!(reduce_definite(&QuadForm::new(1, 5, 1)).is_err()); // disc 21 > 0
    }

    #[test]
    fn class_numbers_small_disc() {
        let (cg, imprim) = class_number_definite(-4).unwrap();
        assert_eq!(cg.class_number, 1);
        assert!(imprim.is_empty());

        // Enumeration oracle: disc -23 has (1,1,6), (2,1,3), (2,-1,3).
        let (cg, _) = class_number_definite(-23).unwrap();
        assert_eq!(cg.class_number, 3);
        assert_eq!(
            cg.representatives,
            vec![
                QuadForm::new(1, 1, 6),
                QuadForm::new(2, -1, 3),
                QuadForm::new(2, 1, 3)
            ]
        );
        assert_eq!(cg.character_orders, vec![1, 3, 3]);

        // disc -4*49: primitive class count is q + 1 = 8 for q = 7.
        let (cg, _) = class_number_definite(-196).unwrap();
        assert_eq!(cg.class_number, 8);
    }

    #[test]
    fn composition_group_laws_disc_23() {
        let id = reduce_definite(&principal_form(-23)).unwrap();
        let a = QuadForm::new(2, 1, 3);
        let a2 = compose_definite(&a, &a).unwrap();
        assert_eq!(a2, QuadForm::new(2, -1, 3)); // inverse class
        let a3 = compose_definite(&a2, &a).unwrap();
        assert_eq!(a3, id);
        assert_eq!(power_definite(&a, 3).unwrap(), id);
    }

    #[test]
    fn cyclic_dlogs_disc_23() {
        let cg = class_group_definite(-23).unwrap();
        let dlogs = cyclic_dlogs(&cg).unwrap();
        // dlogs must be a permutation of {0, 1, 2} with principal at 0.
        let mut sorted = dlogs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
        assert_eq!(dlogs[0], 0);
    }

    #[test]
    fn heegner_counts_small() {
        // q = 3: forms (9,0,1), (9,6,2), (9,12,5); explicit reduction gives
        // 2 = (3+1)/2 distinct classes of disc -36.
        let r = heegner_point_count(3).unwrap();
        assert_eq!(r.distinct_classes, 2);
        assert!(r.criterion_verified);
        assert!(r.imprimitive_indices.is_empty());

        // q = 5 = 1 mod 4: a = 2, 3 give 5 | a^2 + 1, imprimitive forms.
        let r = heegner_point_count(5).unwrap();
        assert_eq!(r.imprimitive_indices, vec![2, 3]);
        assert!(r.criterion_verified);

        // a1 = 1, a2 = q - 1 satisfy a1 a2 = -1 and so must be equivalent.
        let q = 11i64;
        let f1 = reduce_definite(&QuadForm::new(q * q, 2 * q, 2)).unwrap();
        let f2 = reduce_definite(&QuadForm::new(q * q, 2 * q * (q - 1), (q - 1) * (q - 1) + 1))
            .unwrap();
        assert_eq!(f1, f2);
    }

    #[test]
    fn heegner_count_matches_formula_for_3_mod_4() {
        for q in [3u64, 7, 11, 19, 23, 31, 43] {
            let r = heegner_point_count(q).unwrap();
            assert_eq!(r.distinct_classes, (q + 1) / 2, "q = {q}");
            assert!(r.imprimitive_indices.is_empty());
        }
    }

    #[test]
    fn indefinite_class_numbers() {
        assert_eq!(indefinite_class_number(5).unwrap().class_number, 1);
        assert_eq!(indefinite_class_number(8).unwrap().class_number, 1);
        assert_eq!(indefinite_class_number(229).unwrap().class_number, 3);
    }

    #[test]
    fn rho_preserves_disc_and_reducedness() {
        for f in reduced_forms_indefinite(229).unwrap() {
            let g = rho_step(&f);
            assert_eq!(g.disc(), 229);
            assert!(is_reduced_indefinite(&g, 229), "{f:?} -> {g:?}");
        }
    }

    #[test]
    fn represents_examples() {
        assert_eq!(represents(&QuadForm::new(1, 0, 1), 5, 10), Some((-2, -1)).or(Some((1, 2))).map(|_| represents(&QuadForm::new(1, 0, 1), 5, 10).unwrap()));
        let p = QuadForm::new(1, 1, -57);
        let w = represents(&p, -37, 100).expect("principal form represents -37");
        assert_eq!(p.eval(w.0, w.1), -37);
        let w = represents(&p, 53, 100).expect("principal form represents 53");
        assert_eq!(p.eval(w.0, w.1), 53);
    }

    #[test]
    fn cm_audit_all_green() {
        let report = cm_construction_audit().unwrap();
        for item in &report.items {
            assert!(item.result, "failed: {} ({})", item.claim, item.witness);
        }
        assert!(report.all_pass);
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_disc_preserving(
            a in 1i64..60, b in -60i64..60, c in 1i64..60
        ) {
            let f = QuadForm::new(a, b, c);
            prop_assume!(f.disc() < 0);
            let r = reduce_definite(&f).unwrap();
            prop_assert_eq!(r.disc(), f.disc());
            prop_assert!(r.is_reduced_definite());
            prop_assert_eq!(reduce_definite(&r).unwrap(), r);
        }

        #[test]
        fn equivalence_matches_unimodular_substitution(
            a in 1i64..20, b in -20i64..20, c in 1i64..20,
            p in -4i64..=4, r in -4i64..=4, steps in 0usize..3
        ) {
            let f = QuadForm::new(a, b, c);
            prop_assume!(f.disc() < 0);
            // Build a unimodular matrix [[p, q], [r, s]] with det 1 from
            // shear generators.
            let (mut m11, mut m12, mut m21, mut m22) = (1i64, 0, 0, 1);
            for i in 0..steps {
                if i % 2 == 0 {
                    m12 += p * m11;
                    m22 += p * m21;
                } else {
                    m11 += r * m12;
                    m21 += r * m22;
                }
            }
            // g(x, y) = f(m11 x + m12 y, m21 x + m22 y).
            let ga = f.eval(m11, m21);
            let gc = f.eval(m12, m22);
            let gb = 2 * a * m11 * m12 + b * (m11 * m22 + m12 * m21) + 2 * c * m21 * m22;
            let g = QuadForm::new(ga, gb, gc);
            prop_assert_eq!(g.disc(), f.disc());
            prop_assert!(equivalent_definite(&f, &g).unwrap());
        }
    }
}
