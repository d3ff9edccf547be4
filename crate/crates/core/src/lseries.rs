//! Dirichlet series attached to Ramanujan-type Gauss sums: the closed form
//! for the principal series, local factors and truncations, the shifted
//! series, the closed form for finitely generated dual characters, and the
//! completion factors `f_{N,b}`, `f_N`, `psi_p`.

use crate::arith::{factorize, gcd, p_valuation};
use crate::special::zeta;
use crate::{Cplx, EvalError, EvalResult, Real};
use num_traits::Zero;

fn cp<T: Real>(x: f64) -> Cplx<T> {
    Cplx::new(T::of(x), T::zero())
}

fn pole_guard<T: Real>(v: Cplx<T>, locus: &str) -> EvalResult<Cplx<T>> {
    if v.norm() < T::of(1e-12) {
        return Err(EvalError::Pole { locus: locus.to_string() });
    }
    Ok(v)
}

/// `p^w` for complex `w`.
fn p_pow<T: Real>(p: u64, w: Cplx<T>) -> Cplx<T> {
    (w * T::of(p as f64).ln()).exp()
}

/// Gauss sum `G(b, 1_{p^m})` of the principal character at a prime power.
pub fn gauss_sum_prime_power(b: i64, p: u64, m: u32) -> i64 {
    if m == 0 {
        return 1;
    }
    let v = if b == 0 { u32::MAX } else { p_valuation(b, p).unwrap() };
    if v == u32::MAX {
        // b = 0: phi(p^m)
        return (p as i64 - 1) * (p as i64).pow(m - 1);
    }
    if m <= v {
        (p as i64).pow(m) - (p as i64).pow(m - 1)
    } else if m == v + 1 {
        -(p as i64).pow(v)
    } else {
        0
    }
}

/// Closed form for `L(b, 1_., s)`: `sigma_{s-1}(b) / (zeta(s) |b|^{s-1})`
/// for `b != 0`, and `zeta(s-1)/zeta(s)` for `b = 0`.
pub fn l_trivial<T: Real>(b: i64, s: Cplx<T>) -> EvalResult<Cplx<T>> {
    let one = cp::<T>(1.0);
    if (s - one).norm() < T::of(1e-12) {
        return Err(EvalError::Pole { locus: "zeta(s) at s = 1".into() });
    }
    let zs = pole_guard(zeta(s), "zeta(s) = 0 in l_trivial")?;
    if b == 0 {
        return Ok(zeta(s - one) / zs);
    }
    let sig = crate::arith::sigma_power(b, s - one)?;
    let babs = Cplx::new(T::of(b.unsigned_abs() as f64), T::zero());
    Ok(sig / (zs * babs.powc(s - one)))
}

/// Truncated local zeta `zeta_p(s; v) = sum_{n=0}^{v} p^{-ns}`.
pub fn zeta_p_trunc<T: Real>(p: u64, s: Cplx<T>, v: u32) -> Cplx<T> {
    let mut acc = Cplx::zero();
    for n in 0..=v {
        acc += p_pow(p, -s * T::of(n as f64));
    }
    acc
}

/// Local series `L_p(b, 1_., s)`: `1 - p^{-s}` when `p` does not divide `b`,
/// `(1 - p^{-s}) zeta_p(s - 1; v_p(b))` otherwise, and the `b = 0` case
/// `(1 - p^{-s})/(1 - p^{1-s})`.
pub fn l_local_trivial<T: Real>(b: i64, p: u64, s: Cplx<T>) -> EvalResult<Cplx<T>> {
    let one = cp::<T>(1.0);
    let factor = one - p_pow(p, -s);
    if b == 0 {
        let den = pole_guard(one - p_pow(p, one - s), "1 - p^{1-s} in l_local_trivial")?;
        return Ok(factor / den);
    }
    let v = p_valuation(b, p).unwrap();
    if v == 0 {
        Ok(factor)
    } else {
        Ok(factor * zeta_p_trunc(p, s - one, v))
    }
}

/// Truncated local series `L_p(b, 1_., s; v) = sum_{m=0}^{v} G(b, 1_{p^m}) p^{-ms}`.
pub fn l_local_trivial_trunc<T: Real>(b: i64, p: u64, s: Cplx<T>, v: u32) -> Cplx<T> {
    let mut acc = Cplx::zero();
    for m in 0..=v {
        acc += p_pow(p, -s * T::of(m as f64)) * T::of(gauss_sum_prime_power(b, p, m) as f64);
    }
    acc
}

/// Shifted series `L(b, 1_{N.}, s)` by the local decomposition:
/// `N^s (L / L_N) prod_{p | N} (L_p(s) - L_p(s; v_p(N) - 1))`.
pub fn l_shifted<T: Real>(b: i64, n: u64, s: Cplx<T>) -> EvalResult<Cplx<T>> {
    if n == 0 {
        return Err(EvalError::Domain("l_shifted: N must be positive".into()));
    }
    let mut acc = p_pow(n, s) * l_trivial(b, s)?;
    for (p, e) in factorize(n) {
        let lp = l_local_trivial(b, p, s)?;
        let lp_trunc = l_local_trivial_trunc(b, p, s, e - 1);
        acc = acc * (lp - lp_trunc) / pole_guard(lp, "local factor L_p in l_shifted")?;
    }
    Ok(acc)
}

// ---- finitely generated dual characters ----

/// One generator of a finitely generated dual character: a prime `ell`, a
/// modulus, and a unit-modulus value table on residues coprime to the
/// modulus (zero elsewhere).
#[derive(Debug, Clone)]
pub struct CharGen<T: Real> {
    pub ell: u64,
    pub modulus: u64,
    /// values indexed by residue `0..modulus`; entries off the unit group
    /// must be zero
    pub values: Vec<Cplx<T>>,
}

/// A finitely generated dual character: finitely many generator primes with
/// stabilized value tables; all other primes carry the trivial pair.
#[derive(Debug, Clone)]
pub struct DualCharacter<T: Real> {
    pub generators: Vec<CharGen<T>>,
}

impl<T: Real> DualCharacter<T> {
    pub fn new(generators: Vec<CharGen<T>>) -> EvalResult<Self> {
        let mut primes = std::collections::BTreeSet::new();
        for g in &generators {
            if !crate::arith::is_prime(g.ell) {
                return Err(EvalError::Domain(format!("generator index {} not prime", g.ell)));
            }
            if !primes.insert(g.ell) {
                return Err(EvalError::Domain(format!("duplicate generator prime {}", g.ell)));
            }
            if g.values.len() != g.modulus as usize {
                return Err(EvalError::Domain("value table length != modulus".into()));
            }
            for (a, v) in g.values.iter().enumerate() {
                let coprime = gcd(a as i64, g.modulus as i64) == 1;
                if coprime {
                    if (v.norm() - T::one()).abs() > T::of(1e-9) {
                        return Err(EvalError::Domain(format!(
                            "value at unit {a} mod {} is not unit-modulus",
                            g.modulus
                        )));
                    }
                } else if !v.is_zero() {
                    return Err(EvalError::Domain(format!(
                        "value at non-unit {a} mod {} must be zero",
                        g.modulus
                    )));
                }
            }
        }
        Ok(DualCharacter { generators })
    }

    pub fn trivial() -> Self {
        DualCharacter { generators: Vec::new() }
    }

    /// Generators active at `n` (those whose prime divides `n`).
    fn active(&self, n: u64) -> Vec<&CharGen<T>> {
        self.generators.iter().filter(|g| n % g.ell == 0).collect()
    }

    /// Modulus `Q_n` of `chi_n`.
    pub fn modulus_at(&self, n: u64) -> u64 {
        self.active(n).iter().map(|g| g.modulus).product()
    }

    /// `chi_n(a)`: the product of the active generator values at the
    /// projections through the product decomposition of `(Z/Q_n)^x`. The
    /// projection to the factor of modulus `Q_g` is `a (Q_n/Q_g)^{-1} mod
    /// Q_g`, matching the combination `(a_1, a_2) -> a_1 Q_n + a_2 Q_m`.
    pub fn value_at(&self, n: u64, a: u64) -> Cplx<T> {
        let q_n = self.modulus_at(n);
        let mut v = Cplx::new(T::one(), T::zero());
        for g in self.active(n) {
            let cof = (q_n / g.modulus) % g.modulus;
            let proj = if cof == 0 {
                a % g.modulus
            } else {
                let (_, inv, _) = crate::arith::extended_gcd(cof as i64, g.modulus as i64);
                ((a as i64 * inv).rem_euclid(g.modulus as i64)) as u64
            };
            v = v * g.values[proj as usize];
        }
        v
    }
}

/// Gauss sum `G(b, chi_n) = sum_{a in (Z/Q_n)^x} chi_n(a) zeta_{Q_n}^{ab}`.
pub fn gauss_sum<T: Real>(chi: &DualCharacter<T>, n: u64, b: i64) -> EvalResult<Cplx<T>> {
    if n == 0 {
        return Err(EvalError::Domain("gauss_sum: n must be positive".into()));
    }
    let q = chi.modulus_at(n);
    let mut acc = Cplx::zero();
    let two_pi = T::of(2.0) * T::PI();
    for a in 0..q {
        if gcd(a as i64, q as i64) != 1 {
            continue;
        }
        let angle = two_pi * T::of((a as i64 as f64) * (b as f64)) / T::of(q as f64);
        acc += chi.value_at(n, a) * Cplx::new(angle.cos(), angle.sin());
    }
    if q == 1 {
        acc = Cplx::new(T::one(), T::zero());
    }
    Ok(acc)
}

/// Closed form for the Dirichlet series of a finitely generated dual
/// character:
/// `prod_i (1 - p_i^{-s}) * zeta(s) * (1 + sum over nonempty subsets of
/// G(b, chi_{prod}) / prod (p^s - 1))`.
pub fn l_fingen_closed<T: Real>(
    chi: &DualCharacter<T>,
    b: i64,
    s: Cplx<T>,
) -> EvalResult<Cplx<T>> {
    let one = cp::<T>(1.0);
    let r = chi.generators.len();
    let mut prefactor = zeta(s);
    for g in &chi.generators {
        prefactor = prefactor * (one - p_pow(g.ell, -s));
    }
    let mut bracket = Cplx::zero();
    for mask in 0..(1u32 << r) {
        let mut nn = 1u64;
        let mut denom = one;
        for (i, g) in chi.generators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                nn *= g.ell;
                denom = denom * pole_guard(p_pow(g.ell, s) - one, "p^s - 1 in l_fingen_closed")?;
            }
        }
        bracket += gauss_sum(chi, nn, b)? / denom;
    }
    Ok(prefactor * bracket)
}

/// Direct partial sum of `L(b, chi_., s)` up to `n_max` (test oracle).
pub fn l_fingen_direct<T: Real>(
    chi: &DualCharacter<T>,
    b: i64,
    s: Cplx<T>,
    n_max: u64,
) -> EvalResult<Cplx<T>> {
    let mut acc = Cplx::zero();
    for n in 1..=n_max {
        let g = gauss_sum(chi, n, b)?;
        acc += g * p_int_pow(n, -s);
    }
    Ok(acc)
}

fn p_int_pow<T: Real>(n: u64, w: Cplx<T>) -> Cplx<T> {
    (w * T::of(n as f64).ln()).exp()
}

// ---- completion factors ----

/// `f_{N,b}(s)` at even weight `k`, for square-free `N`, `b != 0`:
///
/// ```text
///            N^{-(s-1)-k/2} prod_{p|N} (S_p(s) - p^{v + (v+1)(2s+k-2)}) + 1
/// f_{N,b} = -----------------------------------------------------------------
///            prod_{p|N} (1 - p^{2s+k-2}) * sum_{n=0}^{v} p^{n(2s+k-1)}
/// ```
///
/// with `v = v_p(b)` and `S_p(s) = sum_{i=1}^{v} (p-1) p^{i-1+i(2s+k-2)}`.
pub fn f_nb<T: Real>(n: u64, b: i64, s: Cplx<T>, k: i64) -> EvalResult<Cplx<T>> {
    if b == 0 {
        return Err(EvalError::Domain("f_nb: b must be nonzero".into()));
    }
    let facs = factorize(n);
    if facs.iter().any(|&(_, e)| e > 1) {
        return Err(EvalError::Domain(format!("f_nb: N = {n} is not square-free")));
    }
    let one = cp::<T>(1.0);
    let kc = cp::<T>(k as f64);
    let two = cp::<T>(2.0);
    let expo = two * s + kc - two; // 2s + k - 2
    let mut numer = p_pow(n, -(s - one) - kc / two);
    for &(p, _) in &facs {
        let v = p_valuation(b, p).unwrap();
        let mut sp: Cplx<T> = Cplx::zero();
        for i in 1..=v {
            // (p - 1) p^{i - 1 + i (2s + k - 2)}
            sp += p_pow(p, cp::<T>(i as f64 - 1.0) + expo * T::of(i as f64))
                * T::of(p as f64 - 1.0);
        }
        let tail = p_pow(p, cp::<T>(v as f64) + expo * T::of((v + 1) as f64));
        numer = numer * (sp - tail);
    }
    numer += one;
    let mut denom = one;
    for &(p, _) in &facs {
        let v = p_valuation(b, p).unwrap();
        denom = denom * (one - p_pow(p, expo));
        let mut zp = Cplx::zero();
        for nterm in 0..=v {
            zp += p_pow(p, (two * s + kc - one) * T::of(nterm as f64));
        }
        denom = denom * zp;
    }
    let denom = pole_guard(denom, "f_nb denominator")?;
    Ok(numer / denom)
}

/// `f_N(s) = f_{N,1}(s) = ((-1)^{omega(N)} N^{(s-1)+k/2} + 1) prod_{p|N}
/// (1 - p^{2s+k-2})^{-1}`.
pub fn f_n<T: Real>(n: u64, s: Cplx<T>, k: i64) -> EvalResult<Cplx<T>> {
    let facs = factorize(n);
    if facs.iter().any(|&(_, e)| e > 1) {
        return Err(EvalError::Domain(format!("f_n: N = {n} is not square-free")));
    }
    let one = cp::<T>(1.0);
    let kc = cp::<T>(k as f64);
    let two = cp::<T>(2.0);
    let sign = if facs.len() % 2 == 0 { T::one() } else { -T::one() };
    let numer = p_pow(n, (s - one) + kc / two) * sign + one;
    let mut denom = one;
    for &(p, _) in &facs {
        denom = denom * (one - p_pow(p, two * s + kc - two));
    }
    Ok(numer / pole_guard(denom, "f_n denominator")?)
}

/// `psi_p(s) = (1 + p^{s + k/2 - 1}) / (1 + p^{-s - k/2})`.
pub fn psi_p<T: Real>(p: u64, s: Cplx<T>, k: i64) -> EvalResult<Cplx<T>> {
    let one = cp::<T>(1.0);
    let kc = cp::<T>(k as f64);
    let two = cp::<T>(2.0);
    let den = pole_guard(one + p_pow(p, -s - kc / two), "psi_p denominator")?;
    Ok((one + p_pow(p, s + kc / two - one)) / den)
}

/// `psi_{N,b}(s) = f_{N,b}(1 - k - s) / f_{N,b}(s)`.
pub fn psi_nb<T: Real>(n: u64, b: i64, s: Cplx<T>, k: i64) -> EvalResult<Cplx<T>> {
    let dual = cp::<T>(1.0 - k as f64) - s;
    let num = f_nb(n, b, dual, k)?;
    let den = pole_guard(f_nb(n, b, s, k)?, "f_nb(s) in psi_nb")?;
    Ok(num / den)
}
