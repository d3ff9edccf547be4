//! Exact elementary number theory: gcd, valuations, multiplicative functions,
//! Ramanujan sums and divisor power sums.
//!
//! Everything here is pure and exact. The Ramanujan sum uses the von Sterneck
//! closed form `G(b, 1_n) = mu(n/g) phi(n) / phi(n/g)` with `g = gcd(b, n)`;
//! direct summation over primitive roots of unity is kept in the tests as an
//! independent oracle.

use crate::{Cplx, EvalError, EvalResult, Real};

/// Euclidean gcd on `i64`, always nonnegative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`, `g >= 0`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = extended_gcd(b, a % b);
    (g, y, x - (a / b) * y)
}

/// Factorization of `n >= 1` as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Deterministic primality test via trial division (inputs here are small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Möbius function; `n <= 0` is a domain error.
pub fn mobius(n: i64) -> EvalResult<i64> {
    if n <= 0 {
        return Err(EvalError::Domain(format!("mobius({n}): n must be >= 1")));
    }
    let mut m = 1i64;
    for (_, e) in factorize(n as u64) {
        if e > 1 {
            return Ok(0);
        }
        m = -m;
    }
    Ok(m)
}

/// Euler totient; `n <= 0` is a domain error.
pub fn euler_phi(n: i64) -> EvalResult<i64> {
    if n <= 0 {
        return Err(EvalError::Domain(format!("euler_phi({n}): n must be >= 1")));
    }
    let mut phi = n;
    for (p, _) in factorize(n as u64) {
        phi = phi / p as i64 * (p as i64 - 1);
    }
    Ok(phi)
}

/// Positive divisors of `n >= 1`, ascending.
pub fn divisors(n: i64) -> EvalResult<Vec<i64>> {
    if n <= 0 {
        return Err(EvalError::Domain(format!("divisors({n}): n must be >= 1")));
    }
    let mut ds = vec![1i64];
    for (p, e) in factorize(n as u64) {
        let prev = ds.clone();
        let mut pe = 1i64;
        for _ in 0..e {
            pe *= p as i64;
            ds.extend(prev.iter().map(|d| d * pe));
        }
    }
    ds.sort_unstable();
    Ok(ds)
}

/// `p`-adic valuation of `n != 0`; `p` must be prime.
pub fn p_valuation(n: i64, p: u64) -> EvalResult<u32> {
    if n == 0 {
        return Err(EvalError::Domain("p_valuation(0, p) undefined".into()));
    }
    if !is_prime(p) {
        return Err(EvalError::Domain(format!("p_valuation: {p} is not prime")));
    }
    let mut m = n.unsigned_abs();
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    Ok(v)
}

/// Ramanujan sum `G(b, 1_n)`: the sum of `b`-th powers of the primitive
/// `n`-th roots of unity. Computed by the von Sterneck formula
/// `mu(n/g) phi(n) / phi(n/g)` with `g = gcd(b, n)`.
pub fn ramanujan_sum(b: i64, n: i64) -> EvalResult<i64> {
    if n <= 0 {
        return Err(EvalError::Domain(format!("ramanujan_sum(b, {n}): n must be >= 1")));
    }
    let g = gcd(b, n);
    let m = n / g;
    let mu = mobius(m)?;
    if mu == 0 {
        return Ok(0);
    }
    Ok(mu * (euler_phi(n)? / euler_phi(m)?))
}

/// Divisor power sum `sigma_w(n) = sum_{d | |n|, d > 0} d^w` for complex `w`.
pub fn sigma_power<T: Real>(n: i64, w: Cplx<T>) -> EvalResult<Cplx<T>> {
    if n == 0 {
        return Err(EvalError::Domain("sigma_power(0, w) undefined".into()));
    }
    let mut s = Cplx::new(T::zero(), T::zero());
    for d in divisors(n.abs())? {
        s += Cplx::new(T::of(d as f64), T::zero()).powc(w);
    }
    Ok(s)
}

/// Exact divisor power sum for nonnegative integer exponents.
pub fn sigma_power_int(n: i64, w: u32) -> EvalResult<i64> {
    if n == 0 {
        return Err(EvalError::Domain("sigma_power_int(0, w) undefined".into()));
    }
    Ok(divisors(n.abs())?.iter().map(|d| d.pow(w)).sum())
}

/// Sieved `mu` and `phi` tables up to `n` inclusive (index 0 unused), for
/// fast bulk Ramanujan sums in the series oracles.
pub struct MultTables {
    pub mu: Vec<i32>,
    pub phi: Vec<i64>,
}

impl MultTables {
    pub fn up_to(n: usize) -> Self {
        let mut mu = vec![1i32; n + 1];
        let mut phi: Vec<i64> = (0..=n as i64).collect();
        let mut is_comp = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !is_comp[i] {
                primes.push(i);
                mu[i] = -1;
                phi[i] = i as i64 - 1;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > n {
                    break;
                }
                is_comp[ip] = true;
                if i % p == 0 {
                    mu[ip] = 0;
                    phi[ip] = phi[i] * p as i64;
                    break;
                } else {
                    mu[ip] = -mu[i];
                    phi[ip] = phi[i] * (p as i64 - 1);
                }
            }
        }
        if n >= 1 {
            mu[1] = 1;
            phi[1] = 1;
        }
        MultTables { mu, phi }
    }

    /// `G(b, 1_n)` via von Sterneck using the sieved tables.
    pub fn ramanujan(&self, b: i64, n: usize) -> i64 {
        debug_assert!(n >= 1 && n < self.phi.len());
        let g = gcd(b, n as i64);
        let m = (n as i64 / g) as usize;
        let mu = self.mu[m] as i64;
        if mu == 0 {
            0
        } else {
            mu * (self.phi[n] / self.phi[m])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    /// Direct root-of-unity summation oracle for the Ramanujan sum.
    fn ramanujan_direct(b: i64, n: i64) -> i64 {
        let mut s = 0.0f64;
        for a in 1..=n {
            if gcd(a, n) == 1 {
                s += (2.0 * std::f64::consts::PI * (a as f64) * (b as f64) / (n as f64)).cos();
            }
        }
        s.round() as i64
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(1, 6).unwrap(), 1); // mu(6)
        assert_eq!(ramanujan_sum(0, 12).unwrap(), 4); // phi(12)
        assert_eq!(ramanujan_sum(6, 4).unwrap(), -2);
        assert_eq!(ramanujan_sum(6, 4).unwrap(), ramanujan_direct(6, 4));
    }

    #[test]
    fn ramanujan_matches_direct_summation() {
        for n in 1..=60 {
            for b in -10..=10 {
                assert_eq!(
                    ramanujan_sum(b, n).unwrap(),
                    ramanujan_direct(b, n),
                    "b={b} n={n}"
                );
            }
        }
    }

    #[test]
    fn ramanujan_multiplicative() {
        for m in 1..=50i64 {
            for n in 1..=50i64 {
                if gcd(m, n) != 1 {
                    continue;
                }
                for b in [0, 1, 2, 7, 30] {
                    assert_eq!(
                        ramanujan_sum(b, m * n).unwrap(),
                        ramanujan_sum(b, m).unwrap() * ramanujan_sum(b, n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn ramanujan_convolution_identity() {
        // sum_{d | m} G(n, 1_d) = m if m | n else 0
        for m in 1..=300i64 {
            for n in [1i64, 2, 3, 17, 60, 121, 300] {
                let s: i64 = divisors(m)
                    .unwrap()
                    .iter()
                    .map(|&d| ramanujan_sum(n, d).unwrap())
                    .sum();
                assert_eq!(s, if n % m == 0 { m } else { 0 }, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let z = |re: f64, im: f64| Complex64::new(re, im);
        assert!((sigma_power::<f64>(6, z(0.0, 0.0)).unwrap() - z(4.0, 0.0)).norm() < 1e-12);
        assert!((sigma_power::<f64>(2, z(2.0, 0.0)).unwrap() - z(5.0, 0.0)).norm() < 1e-12);
        // direct divisor enumeration at w = 1.5
        let expect: f64 = [1.0f64, 2.0, 3.0, 4.0, 6.0, 12.0].iter().map(|d| d.powf(1.5)).sum();
        assert!((sigma_power::<f64>(12, z(1.5, 0.0)).unwrap().re - expect).abs() < 1e-10);
        assert!(sigma_power::<f64>(0, z(1.0, 0.0)).is_err());
        // integer exponents are exact integers
        for n in 1..=40 {
            for w in 0..=3u32 {
                let v = sigma_power::<f64>(n, z(w as f64, 0.0)).unwrap();
                assert!((v.re - sigma_power_int(n, w).unwrap() as f64).abs() < 1e-9);
                assert!(v.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p_valuation(40, 2).unwrap(), 3);
        assert_eq!(p_valuation(7, 5).unwrap(), 0);
        assert_eq!(p_valuation(-250, 5).unwrap(), 3);
        assert!(p_valuation(12, 6).is_err());
        assert!(p_valuation(0, 3).is_err());
    }

    #[test]
    fn helper_examples() {
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert!(mobius(0).is_err());
        assert!(divisors(-3).is_err());
    }

    #[test]
    fn sieved_tables_agree() {
        let t = MultTables::up_to(500);
        for n in 1..=500usize {
            assert_eq!(t.mu[n] as i64, mobius(n as i64).unwrap());
            assert_eq!(t.phi[n], euler_phi(n as i64).unwrap());
            for b in [0i64, 1, 17, 36] {
                assert_eq!(t.ramanujan(b, n), ramanujan_sum(b, n as i64).unwrap());
            }
        }
    }
}
