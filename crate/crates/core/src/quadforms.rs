//! Positive definite integral binary quadratic forms: reduction with a
//! tracked transform, enumeration of reduced forms of a given discriminant,
//! class numbers, and proper-equivalence testing.
//!
//! A form `(a, b, c)` stands for `a X^2 + b X Y + c Y^2`. Reduced means
//! `-a < b <= a <= c` with `b >= 0` whenever `a = c` (Gauss convention), so
//! every proper equivalence class contains exactly one reduced form.

use crate::{EvalError, EvalResult, Int};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integral binary quadratic form `a X^2 + b X Y + c Y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadForm {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

/// A proper equivalence class, represented by its unique reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormClass {
    pub reduced: QuadForm,
    pub disc: Int,
    pub primitive: bool,
}

/// Column-major 2x2 integer matrix `[[a, b], [c, d]]` acting on forms by
/// substitution `(X, Y) -> (aX + bY, cX + dY)`.
pub type Transform = [[Int; 2]; 2];

impl QuadForm {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>, c: impl Into<Int>) -> Self {
        QuadForm { a: a.into(), b: b.into(), c: c.into() }
    }

    /// `b^2 - 4ac`.
    pub fn discriminant(&self) -> Int {
        &self.b * &self.b - Int::from(4) * &self.a * &self.c
    }

    /// `gcd(a, b, c)`.
    pub fn content(&self) -> Int {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// `-a < b <= a <= c`, with `b >= 0` when `a = c`.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = self;
        -a < *b && b <= a && a <= c && !(a == c && b.is_negative())
    }

    /// Value `f(x, y)`.
    pub fn eval(&self, x: &Int, y: &Int) -> Int {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// Substituted form `f(aX + bY, cX + dY)` for `m = [[a, b], [c, d]]`.
    pub fn substitute(&self, m: &Transform) -> QuadForm {
        let [[p, q], [r, s]] = m;
        QuadForm {
            a: self.eval(p, r),
            b: Int::from(2) * (&self.a * p * q + &self.c * r * s)
                + &self.b * (p * s + q * r),
            c: self.eval(q, s),
        }
    }
}

fn mat_mul(m: &Transform, n: &Transform) -> Transform {
    [
        [&m[0][0] * &n[0][0] + &m[0][1] * &n[1][0], &m[0][0] * &n[0][1] + &m[0][1] * &n[1][1]],
        [&m[1][0] * &n[0][0] + &m[1][1] * &n[1][0], &m[1][0] * &n[0][1] + &m[1][1] * &n[1][1]],
    ]
}

fn mat_inv_det1(m: &Transform) -> Transform {
    [
        [m[1][1].clone(), -m[0][1].clone()],
        [-m[1][0].clone(), m[0][0].clone()],
    ]
}

pub fn identity_transform() -> Transform {
    [[Int::one(), Int::zero()], [Int::zero(), Int::one()]]
}

/// Gauss reduction. Returns the class and a determinant-one transform `V`
/// such that substituting `V` into the reduced form reproduces the input:
/// `reduced.substitute(V) == f`.
pub fn reduce(f: &QuadForm) -> EvalResult<(FormClass, Transform)> {
    if !f.is_positive_definite() {
        return Err(EvalError::Domain(format!(
            "reduce: form ({}, {}, {}) is not positive definite",
            f.a, f.b, f.c
        )));
    }
    let disc = f.discriminant();
    let mut g = f.clone();
    // g == f.substitute(u) throughout
    let mut u = identity_transform();
    loop {
        // normalize b into (-a, a] by X -> X + mY
        let two_a = Int::from(2) * &g.a;
        let m = (&g.a - &g.b).div_floor(&two_a);
        if !m.is_zero() {
            let t = [[Int::one(), m], [Int::zero(), Int::one()]];
            g = g.substitute(&t);
            u = mat_mul(&u, &t);
        }
        if g.a > g.c || (g.a == g.c && g.b.is_negative()) {
            // (X, Y) -> (-Y, X) swaps outer coefficients and flips b
            let s = [[Int::zero(), -Int::one()], [Int::one(), Int::zero()]];
            g = g.substitute(&s);
            u = mat_mul(&u, &s);
        } else {
            break;
        }
    }
    debug_assert!(g.is_reduced());
    debug_assert_eq!(g.discriminant(), disc);
    let v = mat_inv_det1(&u);
    let primitive = g.is_primitive();
    Ok((FormClass { reduced: g, disc, primitive }, v))
}

fn check_disc(d: i64) -> EvalResult<()> {
    if d >= 0 || !(d % 4 == 0 || d.rem_euclid(4) == 1) {
        return Err(EvalError::Domain(format!(
            "discriminant {d} must be negative and congruent to 0 or 1 mod 4"
        )));
    }
    Ok(())
}

/// All reduced positive definite forms of discriminant `d < 0`, by scanning
/// `|b| <= sqrt(|d|/3)` and solving `4ac = b^2 - d`. With
/// `include_imprimitive = false` only primitive forms are returned.
pub fn enumerate_reduced(d: i64, include_imprimitive: bool) -> EvalResult<Vec<FormClass>> {
    check_disc(d)?;
    let mut out = Vec::new();
    let bmax = ((d.unsigned_abs() / 3) as f64).sqrt() as i64 + 1;
    let start = if d % 2 == 0 { 0 } else { 1 };
    let mut b = start;
    while b <= bmax {
        let m4 = b * b - d;
        if m4 % 4 == 0 {
            let m = m4 / 4;
            let mut a = b.max(1);
            while a * a <= m {
                if m % a == 0 {
                    let c = m / a;
                    let mut push = |bb: i64| {
                        let f = QuadForm::new(a, bb, c);
                        debug_assert!(f.is_reduced());
                        let primitive = f.is_primitive();
                        if primitive || include_imprimitive {
                            out.push(FormClass { reduced: f, disc: Int::from(d), primitive });
                        }
                    };
                    push(b);
                    if b > 0 && a > b && a < c {
                        push(-b);
                    }
                }
                a += 1;
            }
        }
        b += 2;
    }
    out.sort_by(|x, y| {
        (x.reduced.a.clone(), x.reduced.b.clone(), x.reduced.c.clone()).cmp(&(
            y.reduced.a.clone(),
            y.reduced.b.clone(),
            y.reduced.c.clone(),
        ))
    });
    Ok(out)
}

/// Class number `h(d)`: the number of primitive reduced forms of
/// discriminant `d < 0`.
pub fn class_number(d: i64) -> EvalResult<u64> {
    Ok(enumerate_reduced(d, false)?.len() as u64)
}

/// Proper equivalence test by comparing reduced representatives.
pub fn is_properly_equivalent(f: &QuadForm, g: &QuadForm) -> EvalResult<bool> {
    if f.discriminant() != g.discriminant() {
        return Err(EvalError::Domain(
            "is_properly_equivalent: discriminants differ".into(),
        ));
    }
    let (cf, _) = reduce(f)?;
    let (cg, _) = reduce(g)?;
    Ok(cf.reduced == cg.reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qf(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a, b, c)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(qf(1, 0, 5).discriminant(), Int::from(-20));
        assert_eq!(qf(2, 2, 3).discriminant(), Int::from(-20));
        assert_eq!(qf(1, 1, 3).discriminant(), Int::from(-11));
    }

    #[test]
    fn reduce_examples() {
        let (c, v) = reduce(&qf(1, 0, 5)).unwrap();
        assert_eq!(c.reduced, qf(1, 0, 5));
        assert_eq!(v, identity_transform());

        let f = qf(5, 2, 1);
        let (c, v) = reduce(&f).unwrap();
        assert_eq!(c.reduced.a, Int::from(1));
        assert_eq!(c.reduced.discriminant(), f.discriminant());
        assert_eq!(c.reduced.substitute(&v), f);

        let f = qf(3, -2, 4);
        let (c, _) = reduce(&f).unwrap();
        assert_eq!(c.reduced, f); // already reduced
    }

    #[test]
    fn reduce_transform_substitutes_back() {
        // a couple of large-coefficient inputs exercise the big-int path
        for f in [qf(250, 468, 220), qf(10_000, 19_999, 10_001), qf(7, 5, 11)] {
            assert!(f.is_positive_definite());
            let (c, v) = reduce(&f).unwrap();
            assert!(c.reduced.is_reduced());
            assert_eq!(c.reduced.substitute(&v), f);
            // determinant +1
            let det = &v[0][0] * &v[1][1] - &v[0][1] * &v[1][0];
            assert_eq!(det, Int::from(1));
        }
    }

    #[test]
    fn reduce_rejects_indefinite() {
        assert!(reduce(&qf(1, 5, 1)).is_err());
        assert!(reduce(&qf(-1, 0, -5)).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let forms: Vec<_> = enumerate_reduced(-20, true)
            .unwrap()
            .into_iter()
            .map(|c| c.reduced)
            .collect();
        assert_eq!(forms, vec![qf(1, 0, 5), qf(2, 2, 3)]);

        let forms: Vec<_> = enumerate_reduced(-44, true)
            .unwrap()
            .into_iter()
            .map(|c| c.reduced)
            .collect();
        assert_eq!(forms, vec![qf(1, 0, 11), qf(2, 2, 6), qf(3, -2, 4), qf(3, 2, 4)]);
        assert!(enumerate_reduced(-44, true).unwrap()[1].primitive == false);

        let forms = enumerate_reduced(-3, false).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].reduced, qf(1, 1, 1));

        assert!(enumerate_reduced(-6, false).is_err()); // -6 = 2 mod 4
        assert!(enumerate_reduced(20, false).is_err());
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(-20).unwrap(), 2);
        assert_eq!(class_number(-11).unwrap(), 1);
        assert_eq!(class_number(-68).unwrap(), 4);
        assert_eq!(class_number(-76).unwrap(), 3);
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-163).unwrap(), 1);
    }

    #[test]
    fn equivalence_examples() {
        // (5,0,1) ~ (1,0,5) via the swap
        assert!(is_properly_equivalent(&qf(1, 0, 5), &qf(5, 0, 1)).unwrap());
        // distinct classes of disc -44
        assert!(!is_properly_equivalent(&qf(3, 2, 4), &qf(3, -2, 4)).unwrap());
        assert!(is_properly_equivalent(&qf(2, 2, 3), &qf(2, 2, 3)).unwrap());
        assert!(is_properly_equivalent(&qf(1, 0, 5), &qf(1, 1, 3)).is_err());
    }

    /// Counting primitive reduced forms two ways: the scan, and reducing
    /// every positive definite form with small coefficients.
    #[test]
    fn class_number_cross_check() {
        for d in (-500..0i64).filter(|d| d % 4 == 0 || d.rem_euclid(4) == 1) {
            let scan = class_number(d).unwrap();
            let mut seen = std::collections::HashSet::new();
            let bound = ((d.unsigned_abs()) as f64).sqrt() as i64 + 1;
            for a in 1..=bound {
                for b in -bound..=bound {
                    let num = b * b - d;
                    if num % (4 * a) == 0 {
                        let c = num / (4 * a);
                        let f = qf(a, b, c);
                        if f.is_positive_definite() && f.is_primitive() {
                            let (cl, _) = reduce(&f).unwrap();
                            seen.insert((cl.reduced.a.clone(), cl.reduced.b.clone(), cl.reduced.c.clone()));
                        }
                    }
                }
            }
            assert_eq!(scan, seen.len() as u64, "disc {d}");
        }
    }

    proptest! {
        /// reduce is idempotent and the transform substitutes back exactly.
        #[test]
        fn reduce_roundtrip(a in 1i64..40, b in -60i64..60, c in 1i64..40,
                            p in -6i64..=6, q in -6i64..=6) {
            let f = qf(a, b, c);
            prop_assume!(f.is_positive_definite());
            let (cl, v) = reduce(&f).unwrap();
            prop_assert_eq!(cl.reduced.substitute(&v), f.clone());
            let (cl2, _) = reduce(&cl.reduced).unwrap();
            prop_assert_eq!(cl2.reduced.clone(), cl.reduced.clone());
            // equivalence is invariant under unimodular substitution
            // [[1, p], [0, 1]] * [[1, 0], [q, 1]] has determinant 1
            let t: Transform = [
                [Int::from(1 + p * q), Int::from(p)],
                [Int::from(q), Int::from(1)],
            ];
            let g = f.substitute(&t);
            prop_assert!(is_properly_equivalent(&f, &g).unwrap());
        }
    }
}
