//! Exact algebra of the groups `R(N)`.
//!
//! Elements are stored as a parity flag plus four integers:
//!
//! * plus parity:  `[a, b*sqrt(N); c*sqrt(N), d]` with `a d - N b c = 1`,
//! * minus parity: `[a*sqrt(N), b; c, d*sqrt(N)]` with `N a d - b c = 1`.
//!
//! The module provides the standard generators `T_p`, `omega_1`, `s_p(n)`,
//! the descent writing any element of `R(p)` as a word in them (up to a
//! global sign), the dependence identities between `s_p`-generators, and the
//! seven-step reduction of the generating set followed by a bounded
//! dependence sweep.

use crate::arith::{extended_gcd, gcd, is_prime};
use crate::{Cplx, EvalError, EvalResult, Int, Real};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    /// Parity multiplication: minus * minus = plus.
    pub fn compose(self, other: Parity) -> Parity {
        if self == other {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        }
    }
}

/// An element of `R(N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub level: u64,
    pub parity: Parity,
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.level;
        match self.parity {
            Parity::Plus => write!(
                f,
                "[{}, {}*sqrt({n}); {}*sqrt({n}), {}]",
                self.a, self.b, self.c, self.d
            ),
            Parity::Minus => write!(
                f,
                "[{}*sqrt({n}), {}; {}, {}*sqrt({n})]",
                self.a, self.b, self.c, self.d
            ),
        }
    }
}

/// Validated constructor; checks the determinant condition for the parity.
pub fn make_element(
    level: u64,
    parity: Parity,
    a: impl Into<Int>,
    b: impl Into<Int>,
    c: impl Into<Int>,
    d: impl Into<Int>,
) -> EvalResult<GroupElement> {
    let g = GroupElement { level, parity, a: a.into(), b: b.into(), c: c.into(), d: d.into() };
    let det = g.det();
    if !det.is_one() {
        return Err(EvalError::Domain(format!(
            "make_element: determinant {det} != 1 for parity {} at level {level}",
            parity.symbol()
        )));
    }
    Ok(g)
}

impl GroupElement {
    pub fn identity(level: u64) -> Self {
        GroupElement {
            level,
            parity: Parity::Plus,
            a: Int::one(),
            b: Int::zero(),
            c: Int::zero(),
            d: Int::one(),
        }
    }

    /// `a d - N b c` (plus) or `N a d - b c` (minus); equals 1 for members.
    pub fn det(&self) -> Int {
        let n = Int::from(self.level);
        match self.parity {
            Parity::Plus => &self.a * &self.d - n * &self.b * &self.c,
            Parity::Minus => n * &self.a * &self.d - &self.b * &self.c,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.det().is_one()
    }

    /// `-g` (same Möbius action).
    pub fn neg(&self) -> Self {
        GroupElement {
            level: self.level,
            parity: self.parity,
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// Sign-normalized representative of `{g, -g}` (first nonzero entry > 0).
    pub fn normalized_sign(&self) -> Self {
        for v in [&self.a, &self.b, &self.c, &self.d] {
            if v.is_positive() {
                return self.clone();
            }
            if v.is_negative() {
                return self.neg();
            }
        }
        self.clone()
    }

    pub fn mul(&self, other: &GroupElement) -> EvalResult<GroupElement> {
        if self.level != other.level {
            return Err(EvalError::Domain(format!(
                "level mismatch: {} vs {}",
                self.level, other.level
            )));
        }
        let n = Int::from(self.level);
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&other.a, &other.b, &other.c, &other.d);
        let parity = self.parity.compose(other.parity);
        let (a, b, c, d) = match (self.parity, other.parity) {
            (Parity::Plus, Parity::Plus) => (
                a1 * a2 + &n * b1 * c2,
                a1 * b2 + b1 * d2,
                c1 * a2 + d1 * c2,
                &n * c1 * b2 + d1 * d2,
            ),
            (Parity::Plus, Parity::Minus) => (
                a1 * a2 + b1 * c2,
                a1 * b2 + &n * b1 * d2,
                &n * c1 * a2 + d1 * c2,
                c1 * b2 + d1 * d2,
            ),
            (Parity::Minus, Parity::Plus) => (
                a1 * a2 + b1 * c2,
                &n * a1 * b2 + b1 * d2,
                c1 * a2 + &n * d1 * c2,
                c1 * b2 + d1 * d2,
            ),
            (Parity::Minus, Parity::Minus) => (
                &n * a1 * a2 + b1 * c2,
                a1 * b2 + b1 * d2,
                c1 * a2 + d1 * c2,
                c1 * b2 + &n * d1 * d2,
            ),
        };
        Ok(GroupElement { level: self.level, parity, a, b, c, d })
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement {
            level: self.level,
            parity: self.parity,
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn transpose(&self) -> GroupElement {
        GroupElement {
            level: self.level,
            parity: self.parity,
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn pow(&self, k: i64) -> EvalResult<GroupElement> {
        let mut base = if k >= 0 { self.clone() } else { self.inv() };
        let mut e = k.unsigned_abs();
        let mut acc = GroupElement::identity(self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Real 2x2 matrix of the element.
    pub fn to_matrix<T: Real>(&self) -> [[T; 2]; 2] {
        let rt = T::of(self.level as f64).sqrt();
        let f = |x: &Int| T::of(x.to_f64().expect("entry too large for float"));
        match self.parity {
            Parity::Plus => [[f(&self.a), f(&self.b) * rt], [f(&self.c) * rt, f(&self.d)]],
            Parity::Minus => [[f(&self.a) * rt, f(&self.b)], [f(&self.c), f(&self.d) * rt]],
        }
    }

    /// Möbius action on the upper half plane.
    pub fn act<T: Real>(&self, z: Cplx<T>) -> Cplx<T> {
        let m = self.to_matrix::<T>();
        let num = z * m[0][0] + m[0][1];
        let den = z * m[1][0] + m[1][1];
        num / den
    }

    /// Automorphy denominator `j(g, z)`: `c*sqrt(N) z + d` (plus) or
    /// `c z + d*sqrt(N)` (minus).
    pub fn automorphy<T: Real>(&self, z: Cplx<T>) -> Cplx<T> {
        let m = self.to_matrix::<T>();
        z * m[1][0] + m[1][1]
    }

    /// True when the element fixes a point of the upper half plane:
    /// `trace^2 < 4` and not `+-I`.
    pub fn is_elliptic(&self) -> bool {
        let t = &self.a + &self.d;
        let tr2 = match self.parity {
            Parity::Plus => &t * &t,
            Parity::Minus => Int::from(self.level) * &t * &t,
        };
        tr2 < Int::from(4) && !(self.b.is_zero() && self.c.is_zero())
    }

    /// JSON value on the documented schema
    /// `{"N": .., "parity": "+"|"-", "a": .., "b": .., "c": .., "d": ..}`.
    /// Entries exceeding the safe integer range are emitted as strings.
    pub fn to_json(&self) -> serde_json::Value {
        let num = |x: &Int| -> serde_json::Value {
            match x.to_i64() {
                Some(v) if v.abs() <= (1i64 << 53) => serde_json::json!(v),
                _ => serde_json::json!(x.to_string()),
            }
        };
        serde_json::json!({
            "N": self.level,
            "parity": self.parity.symbol(),
            "a": num(&self.a),
            "b": num(&self.b),
            "c": num(&self.c),
            "d": num(&self.d),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> EvalResult<GroupElement> {
        let get_int = |key: &str| -> EvalResult<Int> {
            let field = v
                .get(key)
                .ok_or_else(|| EvalError::Domain(format!("missing field {key}")))?;
            if let Some(n) = field.as_i64() {
                return Ok(Int::from(n));
            }
            if let Some(s) = field.as_str() {
                return s
                    .parse::<Int>()
                    .map_err(|e| EvalError::Domain(format!("bad integer {s}: {e}")));
            }
            Err(EvalError::Domain(format!("field {key} is not an integer")))
        };
        let level = v
            .get("N")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| EvalError::Domain("missing level N".into()))?;
        let parity = match v.get("parity").and_then(|x| x.as_str()) {
            Some("+") => Parity::Plus,
            Some("-") => Parity::Minus,
            _ => return Err(EvalError::Domain("parity must be \"+\" or \"-\"".into())),
        };
        make_element(level, parity, get_int("a")?, get_int("b")?, get_int("c")?, get_int("d")?)
    }
}

/// `T_p = [1, sqrt(p); 0, 1]`.
pub fn t_gen(p: u64) -> GroupElement {
    make_element(p, Parity::Plus, 1, 1, 0, 1).unwrap()
}

/// `omega_1 = [0, -1; 1, 0]` (minus parity at every level).
pub fn omega_gen(p: u64) -> GroupElement {
    make_element(p, Parity::Minus, 0, -1, 1, 0).unwrap()
}

/// `s_p(n, nhat) = [(n*nhat+1)/p * sqrt(p), n; nhat, sqrt(p)]`.
/// Requires `n*nhat = -1 mod p`.
pub fn s_gen(p: u64, n: i64, nhat: i64) -> EvalResult<GroupElement> {
    let prod = n as i128 * nhat as i128 + 1;
    if prod % p as i128 != 0 {
        return Err(EvalError::Domain(format!(
            "s_gen: n*nhat+1 = {prod} not divisible by {p}"
        )));
    }
    make_element(p, Parity::Minus, Int::from(prod / p as i128), n, nhat, 1)
}

/// Canonical `nhat` for `s_p(n)`: the representative of `-n^{-1} mod p`
/// in `(-p/2, p/2]`.
pub fn canonical_nhat(p: u64, n: i64) -> EvalResult<i64> {
    if !is_prime(p) {
        return Err(EvalError::Domain(format!("canonical_nhat: {p} is not prime")));
    }
    let pi = p as i64;
    let nm = n.rem_euclid(pi);
    if nm == 0 {
        return Err(EvalError::Domain(format!("canonical_nhat: {n} divisible by {p}")));
    }
    let (g, x, _) = extended_gcd(nm, pi);
    debug_assert_eq!(g, 1);
    // x = n^{-1} mod p; we want -x centered
    let mut r = (-x).rem_euclid(pi);
    if 2 * r > pi {
        r -= pi;
    }
    Ok(r)
}

/// A named generator for listings.
#[derive(Debug, Clone)]
pub struct Generator {
    pub label: String,
    pub element: GroupElement,
}

/// The generating set of `R(p)`: `T_p`, `omega_1`, and `s_p(n, nhat)` for
/// `-(p+1)/2 <= n <= (p+1)/2`, `n != 0`, `p` prime. For `p = 2` this is
/// `{T_2, omega_1, s_2(+-1)}`.
pub fn standard_generators(p: u64) -> EvalResult<Vec<Generator>> {
    if !is_prime(p) {
        return Err(EvalError::Domain(format!("standard_generators: {p} is not prime")));
    }
    let mut gens = vec![
        Generator { label: format!("T_{p}"), element: t_gen(p) },
        Generator { label: "w_1".to_string(), element: omega_gen(p) },
    ];
    let bound = ((p + 1) / 2) as i64;
    for n in -bound..=bound {
        if n == 0 || n.rem_euclid(p as i64) == 0 {
            continue;
        }
        let nhat = canonical_nhat(p, n)?;
        gens.push(Generator {
            label: format!("s_{p}({n},{nhat})"),
            element: s_gen(p, n, nhat)?,
        });
    }
    Ok(gens)
}

/// One token of a generator word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    /// `T_p^power`
    T { power: i64 },
    /// `omega_1^power`, power in {-1, +1}
    Omega { power: i64 },
    /// `s_p(n, nhat)^power`, power in {-1, +1}
    S { n: i64, nhat: i64, power: i64 },
}

impl Token {
    pub fn element(&self, p: u64) -> EvalResult<GroupElement> {
        match *self {
            Token::T { power } => t_gen(p).pow(power),
            Token::Omega { power } => omega_gen(p).pow(power),
            Token::S { n, nhat, power } => s_gen(p, n, nhat)?.pow(power),
        }
    }

    pub fn label(&self, p: u64) -> String {
        match *self {
            Token::T { power } => format!("T_{p}^{power}"),
            Token::Omega { power } => format!("w_1^{power}"),
            Token::S { n, nhat, power } => format!("s_{p}({n},{nhat})^{power}"),
        }
    }
}

/// A word in the standard generators, with its exact product.
#[derive(Debug, Clone)]
pub struct GeneratorWord {
    pub level: u64,
    pub tokens: Vec<Token>,
    /// Product of the tokens, equal to the target element up to sign.
    pub product: GroupElement,
}

impl GeneratorWord {
    pub fn describe(&self) -> String {
        if self.tokens.is_empty() {
            return "I".to_string();
        }
        self.tokens
            .iter()
            .map(|t| t.label(self.level))
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

fn word_product(p: u64, tokens: &[Token]) -> EvalResult<GroupElement> {
    let mut acc = GroupElement::identity(p);
    for t in tokens {
        acc = acc.mul(&t.element(p)?)?;
    }
    Ok(acc)
}

/// Writes `g` (an element of `R(p)`, `p` prime) as a word in the standard
/// generators; the product of the word equals `g` or `-g`.
///
/// The algorithm is a descent on the leading entry of minus-parity elements:
/// conjugated translations shift the off-diagonal integer entry, and when it
/// is too large relative to the diagonal one, a right factor `s_p(nu)`
/// strictly shrinks the diagonal entry.
pub fn express_in_generators(g: &GroupElement) -> EvalResult<GeneratorWord> {
    let p = g.level;
    if !is_prime(p) {
        return Err(EvalError::Domain(format!("express_in_generators: level {p} is not prime")));
    }
    if !g.is_valid() {
        return Err(EvalError::Domain("express_in_generators: invalid element".into()));
    }
    let mut tokens: Vec<Token> = Vec::new();
    let mut m = g.clone();
    if m.parity == Parity::Plus {
        // g = omega * (omega^{-1} g)
        tokens.push(Token::Omega { power: 1 });
        m = omega_gen(p).inv().mul(&m)?;
    }
    // suffix groups collected innermost-first; final word = base ++ reversed suffix
    let mut suffix: Vec<Vec<Token>> = Vec::new();
    let pi = Int::from(p);
    let mut steps = 0usize;
    let base: Vec<Token> = loop {
        steps += 1;
        if steps > 20_000 {
            return Err(EvalError::Unsupported(
                "express_in_generators: descent did not terminate".into(),
            ));
        }
        if m.a.is_negative() {
            m = m.neg();
        }
        if m.a.is_zero() {
            // [[0, b], [c, d*sqrt(p)]] with -bc = 1
            let d = m.d.to_i64().ok_or_else(|| {
                EvalError::Unsupported("descent: translation power exceeds i64".into())
            })?;
            if m.b == Int::from(-1) {
                break vec![Token::Omega { power: 1 }, Token::T { power: d }];
            } else {
                // b = 1, c = -1: m = -omega * T^{-d}
                break vec![Token::Omega { power: 1 }, Token::T { power: -d }];
            }
        }
        // normalize b modulo p*a into (-pa/2, pa/2]
        let pa = &pi * &m.a;
        let k = div_round_half_down(&m.b, &pa);
        if !k.is_zero() {
            // m <- m * T^{-k}; original = new * T^{k}
            let kk = k.to_i64().ok_or_else(|| {
                EvalError::Unsupported("descent: translation power exceeds i64".into())
            })?;
            m = m.mul(&t_gen(p).pow(-kk)?)?;
            suffix.push(vec![Token::T { power: kk }]);
        }
        let two_a = Int::from(2) * &m.a;
        if m.b.magnitude() < two_a.magnitude() {
            // choose mm with |a + mm*b| minimal (< a)
            let mm = -div_round_half_down(&m.a, &m.b);
            let mmi = mm.to_i64().ok_or_else(|| {
                EvalError::Unsupported("descent: shear power exceeds i64".into())
            })?;
            // L^{m} = omega T^{-m} omega^{-1} = [1, 0; m*sqrt(p), 1]
            let l = omega_gen(p)
                .mul(&t_gen(p).pow(-mmi)?)?
                .mul(&omega_gen(p).inv())?;
            m = m.mul(&l)?;
            // original = new * L^{-mm} = new * omega T^{mm} omega^{-1}
            suffix.push(vec![
                Token::Omega { power: 1 },
                Token::T { power: mmi },
                Token::Omega { power: -1 },
            ]);
        } else {
            // |b| >= 2a: right-multiply by s_p(nu) then omega to shrink a
            let a = m.a.to_i64().ok_or_else(|| {
                EvalError::Unsupported("descent: entry exceeds i64 in pivot selection".into())
            })?;
            let babs = m.b.magnitude().to_i64().ok_or_else(|| {
                EvalError::Unsupported("descent: entry exceeds i64 in pivot selection".into())
            })?;
            let mut nu = (babs + a / 2) / a; // round(|b|/a)
            nu = nu.clamp(1, ((p + 1) / 2) as i64);
            if m.b.is_positive() {
                nu = -nu;
            }
            let nhat = canonical_nhat(p, nu)?;
            let s = s_gen(p, nu, nhat)?;
            m = m.mul(&s)?.mul(&omega_gen(p))?;
            // original = new * omega^{-1} * s^{-1}
            suffix.push(vec![
                Token::Omega { power: -1 },
                Token::S { n: nu, nhat, power: -1 },
            ]);
        }
    };
    tokens.extend(base);
    for grp in suffix.into_iter().rev() {
        tokens.extend(grp);
    }
    let product = word_product(p, &tokens)?;
    let ok = product == *g || product == g.neg();
    if !ok {
        return Err(EvalError::Unsupported(
            "express_in_generators: verification failed".into(),
        ));
    }
    Ok(GeneratorWord { level: p, tokens, product })
}

/// Nearest integer to `a / b`, ties toward negative infinity; exact integers.
fn div_round_half_down(a: &Int, b: &Int) -> Int {
    use num_integer::Integer;
    let two = Int::from(2);
    // floor((2a + b) / (2b)) rounds to nearest with ties down for b > 0;
    // normalize sign of b first
    let (a, b) = if b.is_negative() { (-a.clone(), -b.clone()) } else { (a.clone(), b.clone()) };
    (&two * &a + &b - Int::one()).div_floor(&(&two * &b))
}

/// Witness for a dependence relation among `s_p`-generators: an exact matrix
/// identity between a product of generators and a single `s_p`.
#[derive(Debug, Clone)]
pub struct DependenceWitness {
    /// `+1` for the `D_p^+` identity, `-1` for `D_p^-`.
    pub side: i64,
    pub nhat1: i64,
    pub nhat2: i64,
    /// Product side of the identity.
    pub lhs: GroupElement,
    /// Single-generator side `s_p(-nhat1*n2, ..)` resp. `s_p(nhat1*n2, ..)`.
    pub rhs: GroupElement,
}

/// Tests whether `(n1, n2, n3)` lies in `D_p^+` or `D_p^-` and, if so,
/// returns a verified matrix identity witnessing the dependence: a short
/// word over `T_p`, `omega_1`, `s_p(n1)`, `s_p(n2)` whose product is an
/// `s_p`-generator with first off-diagonal entry congruent to `n3` mod `p`.
pub fn check_dependence(
    p: u64,
    n1: i64,
    n2: i64,
    n3: i64,
) -> EvalResult<Option<DependenceWitness>> {
    let pi = p as i64;
    for n in [n1, n2, n3] {
        if gcd(n, pi) != 1 {
            return Err(EvalError::Domain(format!(
                "check_dependence: {n} is not prime to {p}"
            )));
        }
        if n == 1 || n == -1 {
            return Ok(None);
        }
    }
    for side in [1i64, -1] {
        // n3 = -side * nhat1 * n2 exactly
        if n3 % n2 != 0 {
            continue;
        }
        let nhat1 = -side * (n3 / n2);
        if (n1 as i128 * nhat1 as i128 + 1) % pi as i128 != 0 {
            continue;
        }
        let a1 = (n1 as i128 * nhat1 as i128 + 1) / pi as i128;
        // membership condition n2*a1 + side*n1 = 1
        if n2 as i128 * a1 + side as i128 * n1 as i128 != 1 {
            continue;
        }
        if let Some(w) = dependence_witness(p, side, n1, nhat1, n2, n3)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Searches short exact identities `X * s_p(ni) * s_p(nj) = s_p(m, mhat)`
/// with `X` a word in `T_p, omega_1` and `m = n3 mod p`.
fn dependence_witness(
    p: u64,
    side: i64,
    n1: i64,
    nhat1: i64,
    n2: i64,
    n3: i64,
) -> EvalResult<Option<DependenceWitness>> {
    let pi = p as i64;
    let t = t_gen(p);
    let w = omega_gen(p);
    let mut prefixes = vec![GroupElement::identity(p)];
    for x in [t.clone(), t.inv(), w.clone(), w.inv()] {
        prefixes.push(x);
    }
    for x in [&t, &t.inv()] {
        for y in [&w, &w.inv()] {
            prefixes.push(x.mul(y)?);
            prefixes.push(y.mul(x)?);
        }
    }
    let s1_pos = s_gen(p, n1, nhat1)?;
    let s1_neg = s_gen(p, -n1, -nhat1)?;
    for dt in -3..=3i64 {
        let nhat2 = canonical_nhat(p, n2)? + dt * pi;
        let s2_pos = match s_gen(p, n2, nhat2) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let s2_neg = s_gen(p, -n2, -nhat2)?;
        let mut orders: Vec<[&GroupElement; 2]> = Vec::new();
        for a in [&s1_pos, &s1_neg] {
            for b in [&s2_pos, &s2_neg] {
                orders.push([a, b]);
                orders.push([b, a]);
            }
        }
        for order in orders {
            let tail = order[0].mul(order[1])?;
            for x in &prefixes {
                let prod = x.mul(&tail)?;
                // want an s-form: minus parity with last diagonal slot +-1
                if prod.parity != Parity::Minus {
                    continue;
                }
                let (b, d) = (&prod.b, &prod.d);
                let norm = if d == &Int::from(1) {
                    prod.clone()
                } else if d == &Int::from(-1) {
                    prod.neg()
                } else {
                    continue;
                };
                let bval = match norm.b.to_i64() {
                    Some(v) => v,
                    None => continue,
                };
                let _ = b;
                if (bval - n3).rem_euclid(pi) == 0 {
                    return Ok(Some(DependenceWitness {
                        side,
                        nhat1,
                        nhat2,
                        lhs: x.mul(&tail)?,
                        rhs: norm,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Sign annotation for a surviving index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signs {
    PlusOnly,
    Both,
}

/// One surviving generator index with its sign annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedIndex {
    pub n: u64,
    pub signs: Signs,
}

fn center_mod(x: i64, p: i64) -> i64 {
    let mut r = x.rem_euclid(p);
    if 2 * r > p {
        r -= p;
    }
    r
}

/// Dependence-rule instances at level `p`: `target` is derivable once every
/// partner (signed index, centered mod p) is available.
struct Rule {
    target: i64,
    partners: Vec<i64>,
}

fn dependence_rules(p: u64) -> Vec<Rule> {
    let pi = p as i64;
    let half = (pi - 1) / 2;
    let mut rules = Vec::new();
    let in_range = |x: i64| x != 0 && x.abs() <= half;
    // pair rules from the translation/inversion identities:
    //   x*y = 1-p  (s(x) from s(y) and back), x*y = -1-p, and x | p-1 links x with -x
    for x in -half..=half {
        if x == 0 || gcd(x, pi) != 1 {
            continue;
        }
        for target_prod in [1 - pi, -1 - pi] {
            if target_prod % x == 0 {
                let y = center_mod(target_prod / x, pi);
                if in_range(y) {
                    rules.push(Rule { target: x, partners: vec![y] });
                }
            }
        }
        if x > 0 && (pi - 1) % x == 0 {
            rules.push(Rule { target: x, partners: vec![-x] });
            rules.push(Rule { target: -x, partners: vec![x] });
        }
    }
    // triple rules from D_p^{+-}: each member is derivable from the other two
    for n1 in -half..=half {
        if n1 == 0 || n1.abs() == 1 || gcd(n1, pi) != 1 {
            continue;
        }
        let r0 = canonical_nhat(p, n1).unwrap();
        for t in -2..=2i64 {
            let nhat1 = r0 + t * pi;
            let a1_num = n1 as i128 * nhat1 as i128 + 1;
            debug_assert_eq!(a1_num % pi as i128, 0);
            let a1 = (a1_num / pi as i128) as i64;
            if a1 == 0 {
                continue;
            }
            for side in [1i64, -1] {
                let numer = 1 - side * n1;
                if numer % a1 != 0 {
                    continue;
                }
                let n2 = numer / a1;
                if n2 == 0 || n2.abs() == 1 || gcd(n2, pi) != 1 {
                    continue;
                }
                let n3_raw = match (-side * nhat1).checked_mul(n2) {
                    Some(v) => v,
                    None => continue,
                };
                let members = [center_mod(n1, pi), center_mod(n2, pi), center_mod(n3_raw, pi)];
                if members.iter().any(|&m| m == 0) {
                    continue;
                }
                for i in 0..3 {
                    if members[i].abs() == 1 {
                        continue;
                    }
                    let partners: Vec<i64> =
                        (0..3).filter(|&j| j != i).map(|j| members[j]).collect();
                    rules.push(Rule { target: members[i], partners });
                }
            }
        }
    }
    rules
}

/// Signed indices derivable from `base` in at most `depth` rule applications.
fn closure(p: u64, base: &BTreeSet<i64>, rules: &[Rule], depth: usize) -> BTreeSet<i64> {
    let _ = p;
    let mut level: BTreeSet<i64> = base.clone();
    level.insert(1);
    level.insert(-1);
    for _ in 0..depth {
        let mut next = level.clone();
        for r in rules {
            if !next.contains(&r.target) && r.partners.iter().all(|x| level.contains(x)) {
                next.insert(r.target);
            }
        }
        if next == level {
            break;
        }
        level = next;
    }
    level
}

/// Fixpoint closure under the pair rules alone.
fn pair_closure(base: &BTreeSet<i64>, rules: &[Rule]) -> BTreeSet<i64> {
    let mut level: BTreeSet<i64> = base.clone();
    level.insert(1);
    level.insert(-1);
    loop {
        let mut changed = false;
        for r in rules {
            if r.partners.len() == 1
                && !level.contains(&r.target)
                && level.contains(&r.partners[0])
            {
                level.insert(r.target);
                changed = true;
            }
        }
        if !changed {
            break level;
        }
    }
}

/// Pair closure, then every index reachable by a single triple identity,
/// then pairs again. This is the reach of one Lemma-2.6 application combined
/// with the translation/inversion identities.
fn sign_closure(base: &BTreeSet<i64>, rules: &[Rule]) -> BTreeSet<i64> {
    let p0 = pair_closure(base, rules);
    let mut p1 = p0.clone();
    for r in rules {
        if r.partners.len() == 2 && r.partners.iter().all(|x| p0.contains(x)) {
            p1.insert(r.target);
        }
    }
    pair_closure(&p1, rules)
}

/// The seven-step reduction of the generating set of `R(p)` followed by a
/// depth-two dependence sweep, returning the surviving indices `S` with
/// sign annotations: `R(p) = < T_p, omega_1, s_p(+-n) : n in S >`.
///
/// For `p < 5` the set is empty (`R(2)`, `R(3)` are generated by `T_p` and
/// `omega_1` alone).
pub fn reduce_generator_indices(p: u64) -> EvalResult<Vec<ReducedIndex>> {
    if !is_prime(p) {
        return Err(EvalError::Domain(format!("reduce_generator_indices: {p} not prime")));
    }
    if p < 5 {
        return Ok(Vec::new());
    }
    let pi = p as i64;
    let half = ((p - 1) / 2) as i64;
    let mut s: BTreeSet<i64> = (2..=half).collect();
    let divs = |m: i64| crate::arith::divisors(m).unwrap();

    // Step 1: divisors d of p-1 with d > sqrt(p-1)
    for d in divs(pi - 1) {
        if d * d > pi - 1 {
            s.remove(&d);
        }
    }
    // Step 2: divisors d of p+1 with d > sqrt(p+1)
    for d in divs(pi + 1) {
        if d * d > pi + 1 {
            s.remove(&d);
        }
    }
    // Steps 3-5 carry the guard (d+1)^2 < p from the supporting statements.
    let mut removed34: Vec<(i64, i64)> = Vec::new(); // (value m, divisor d)
    for base in [pi - 1, pi + 1] {
        for d in divs(base) {
            if (d + 1) * (d + 1) >= pi {
                continue;
            }
            for m in [base / d - 1, base / d + 1] {
                removed34.push((m, d));
                s.remove(&m);
            }
        }
    }
    // Step 5: inverses modulo p of the removed values
    for &(m, d) in &removed34 {
        let mm = m.rem_euclid(pi);
        if mm == 0 {
            continue;
        }
        for mp in 1..=half {
            let prod = (mm as i128 * mp as i128).rem_euclid(pi as i128);
            if (prod == 1 || prod == pi as i128 - 1) && mp > d + 1 {
                s.remove(&mp);
            }
        }
    }
    // Step 6: divisors d != p-2 of p-2 with d > sqrt(p-2)
    for d in divs(pi - 2) {
        if d != pi - 2 && d * d > pi - 2 {
            s.remove(&d);
        }
    }
    // Step 7: divisors d != p+2 of p+2 with d > sqrt(p+2)
    for d in divs(pi + 2) {
        if d != pi + 2 && d * d > pi + 2 {
            s.remove(&d);
        }
    }

    let rules = dependence_rules(p);
    // Dependence sweep over the survivors, largest first: drop n when both
    // signs are reachable from strictly smaller retained indices in two
    // rule steps (redundancy relative to smaller indices).
    let snapshot: Vec<i64> = s.iter().copied().rev().collect();
    for n in snapshot {
        let mut smaller: BTreeSet<i64> = BTreeSet::new();
        for &m in &s {
            if m < n {
                smaller.insert(m);
                smaller.insert(-m);
            }
        }
        let cl = closure(p, &smaller, &rules, 2);
        if cl.contains(&n) && cl.contains(&-n) {
            s.remove(&n);
        }
    }
    // Sign pass: -n is dropped when reachable from the retained signed set
    // by the inversion/translation pairs plus at most one triple identity.
    let mut signed: BTreeSet<i64> = s.iter().copied().collect();
    let mut out = Vec::new();
    for &n in &s {
        let cl = sign_closure(&signed, &rules);
        if cl.contains(&-n) {
            out.push(ReducedIndex { n: n as u64, signs: Signs::PlusOnly });
        } else {
            signed.insert(-n);
            out.push(ReducedIndex { n: n as u64, signs: Signs::Both });
        }
    }
    Ok(out)
}

/// The reduced generating set as transposed `s`-generators, mirroring the
/// published presentation: `T_p`, `omega_1`, and `s_p(n, nhat)^t` for each
/// surviving signed index.
pub fn reduced_generators(p: u64) -> EvalResult<Vec<Generator>> {
    let mut gens = vec![
        Generator { label: format!("T_{p}"), element: t_gen(p) },
        Generator { label: "w_1".to_string(), element: omega_gen(p) },
    ];
    for idx in reduce_generator_indices(p)? {
        let mut ns = vec![idx.n as i64];
        if idx.signs == Signs::Both {
            ns.push(-(idx.n as i64));
        }
        for n in ns {
            let nhat = canonical_nhat(p, n)?;
            gens.push(Generator {
                label: format!("s_{p}({n},{nhat})^t"),
                element: s_gen(p, n, nhat)?.transpose(),
            });
        }
    }
    Ok(gens)
}

/// Elements of `R(p)` reachable as products of `gens` (and their inverses)
/// whose Poincaré-disk lower-left entry stays below `c_cutoff`; used to build
/// Dirichlet domains. Returns sign-normalized distinct elements, identity
/// excluded.
pub fn group_ball(
    p: u64,
    gens: &[GroupElement],
    c_cutoff: f64,
    max_depth: usize,
) -> EvalResult<Vec<GroupElement>> {
    let mut alphabet: Vec<GroupElement> = Vec::new();
    for g in gens {
        for h in [g.clone(), g.inv()] {
            let h = h.normalized_sign();
            if !alphabet.contains(&h) {
                alphabet.push(h);
            }
        }
    }
    let mut seen: HashMap<(Parity, Int, Int, Int, Int), usize> = HashMap::new();
    let key = |g: &GroupElement| (g.parity, g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone());
    let id = GroupElement::identity(p);
    seen.insert(key(&id), 0);
    let mut frontier = vec![id];
    let mut out: Vec<GroupElement> = Vec::new();
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for g in &frontier {
            for a in &alphabet {
                let h = g.mul(a)?.normalized_sign();
                if seen.contains_key(&key(&h)) {
                    continue;
                }
                seen.insert(key(&h), 0);
                if disk_c_abs(&h) <= c_cutoff {
                    out.push(h.clone());
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(out)
}

/// `|c|` of the Poincaré-disk conjugate (centered at `2i`); the isometric
/// circle radius is its reciprocal.
pub fn disk_c_abs(g: &GroupElement) -> f64 {
    let m = g.to_matrix::<f64>();
    let re = (m[0][0] - m[1][1]) / 2.0;
    let im = (m[0][1] + 4.0 * m[1][0]) / 4.0;
    (re * re + im * im).sqrt()
}
