//! Hyperbolic geometry in the Poincaré unit disk: conjugation of `R(N)` to
//! the disk (centered at `2i`), isometric circles, Dirichlet domains as
//! circular-arc polygons, Gauss-Bonnet areas, the exact rational `h_p`, and
//! genus-zero certification.

use crate::arith::is_prime;
use crate::group::{group_ball, reduced_generators, t_gen, GroupElement};
use crate::quadforms::class_number;
use crate::{Cplx, EvalError, EvalResult, Rat, Real};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A 2x2 complex matrix acting on the unit disk, `rho g rho^{-1}` for
/// `rho(z) = (z - 2i)/(z + 2i)`.
#[derive(Debug, Clone)]
pub struct DiskElement<T: Real> {
    pub a: Cplx<T>,
    pub b: Cplx<T>,
    pub c: Cplx<T>,
    pub d: Cplx<T>,
}

impl<T: Real> DiskElement<T> {
    pub fn det(&self) -> Cplx<T> {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, w: Cplx<T>) -> Cplx<T> {
        (self.a * w + self.b) / (self.c * w + self.d)
    }

    pub fn mul(&self, o: &DiskElement<T>) -> DiskElement<T> {
        DiskElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// Conjugates a group element into the disk model. For the real matrix
/// `[A, B; C, D]` the result is
/// `[(A+D)/2 + i(B-4C)/4, (A-D)/2 - i(B+4C)/4;`
/// ` (A-D)/2 + i(B+4C)/4, (A+D)/2 - i(B-4C)/4]`.
pub fn to_disk<T: Real>(g: &GroupElement) -> DiskElement<T> {
    let m = g.to_matrix::<T>();
    let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    let half = T::of(0.5);
    let quarter = T::of(0.25);
    let four = T::of(4.0);
    DiskElement {
        a: Cplx::new((a + d) * half, (b - four * c) * quarter),
        b: Cplx::new((a - d) * half, -(b + four * c) * quarter),
        c: Cplx::new((a - d) * half, (b + four * c) * quarter),
        d: Cplx::new((a + d) * half, -(b - four * c) * quarter),
    }
}

/// Isometric circle `|c w + d| = 1` of a disk element: center `-d/c`,
/// radius `1/|c|`; orthogonal to the unit circle.
#[derive(Debug, Clone, Copy)]
pub struct IsoCircle<T: Real> {
    pub center: Cplx<T>,
    pub radius: T,
}

pub fn isometric_circle<T: Real>(d: &DiskElement<T>) -> EvalResult<IsoCircle<T>> {
    let cn = d.c.norm();
    if cn < T::of(1e-12) {
        return Err(EvalError::Domain(
            "isometric_circle: lower-left entry vanishes (rotation about 0)".into(),
        ));
    }
    Ok(IsoCircle { center: -d.d / d.c, radius: T::one() / cn })
}

impl<T: Real> IsoCircle<T> {
    /// `| |center|^2 - 1 - radius^2 |`, zero for disk isometries.
    pub fn orthogonality_defect(&self) -> T {
        (self.center.norm_sqr() - T::one() - self.radius * self.radius).abs()
    }
}

/// One vertex of a Dirichlet polygon.
#[derive(Debug, Clone)]
pub struct PolygonVertex<T: Real> {
    pub point: Cplx<T>,
    /// Interior angle; ideal vertices contribute zero.
    pub angle: T,
    pub ideal: bool,
}

/// One boundary arc, on the circle `circle`, from vertex `from` to vertex
/// `to` (indices into the vertex list, counterclockwise).
#[derive(Debug, Clone)]
pub struct PolygonArc<T: Real> {
    pub circle: IsoCircle<T>,
    pub from: usize,
    pub to: usize,
}

/// A compact hyperbolic polygon around the origin: the intersection of the
/// unit disk with the exteriors of finitely many isometric circles.
#[derive(Debug, Clone)]
pub struct HyperbolicPolygon<T: Real> {
    pub vertices: Vec<PolygonVertex<T>>,
    pub arcs: Vec<PolygonArc<T>>,
}

impl<T: Real> HyperbolicPolygon<T> {
    pub fn sides(&self) -> usize {
        self.arcs.len()
    }
}

/// Gauss-Bonnet area `(m - 2) pi - sum of interior angles`.
pub fn hyperbolic_area<T: Real>(poly: &HyperbolicPolygon<T>) -> T {
    let m = T::of(poly.sides() as f64);
    let two = T::of(2.0);
    let mut s = T::zero();
    for v in &poly.vertices {
        s += v.angle;
    }
    (m - two) * T::PI() - s
}

const MERGE_TOL: f64 = 1e-9;

fn dedupe_circles<T: Real>(circles: Vec<IsoCircle<T>>) -> Vec<IsoCircle<T>> {
    let mut out: Vec<IsoCircle<T>> = Vec::new();
    'next: for c in circles {
        for o in &out {
            if (c.center - o.center).norm() < T::of(MERGE_TOL)
                && (c.radius - o.radius).abs() < T::of(MERGE_TOL)
            {
                continue 'next;
            }
        }
        out.push(c);
    }
    out
}

/// Drops circles whose disk is contained in another circle's disk (their
/// exterior constraint is implied).
fn prune_dominated<T: Real>(circles: Vec<IsoCircle<T>>) -> Vec<IsoCircle<T>> {
    let mut keep = vec![true; circles.len()];
    for i in 0..circles.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..circles.len() {
            if i == j || !keep[j] {
                continue;
            }
            let d = (circles[i].center - circles[j].center).norm();
            if d + circles[i].radius <= circles[j].radius + T::of(MERGE_TOL) {
                keep[i] = false;
                break;
            }
        }
    }
    circles
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| if k { Some(c) } else { None })
        .collect()
}

/// Entry parameter of the ray `t e^{i theta}` into the circle, or `None`
/// when the ray misses it. Uses `|center|^2 - r^2 = 1`.
fn ray_entry<T: Real>(circle: &IsoCircle<T>, theta: T) -> Option<T> {
    let beta = circle.center.re * theta.cos() + circle.center.im * theta.sin();
    if beta <= T::one() {
        return None;
    }
    Some(beta - (beta * beta - T::one()).sqrt())
}

fn circle_pair_intersections<T: Real>(a: &IsoCircle<T>, b: &IsoCircle<T>) -> Vec<Cplx<T>> {
    let delta = b.center - a.center;
    let d = delta.norm();
    if d < T::of(MERGE_TOL) {
        return Vec::new();
    }
    let (r1, r2) = (a.radius, b.radius);
    if d > r1 + r2 || d < (r1 - r2).abs() {
        return Vec::new();
    }
    let x = (d * d + r1 * r1 - r2 * r2) / (T::of(2.0) * d);
    let h2 = r1 * r1 - x * x;
    let h = if h2 > T::zero() { h2.sqrt() } else { T::zero() };
    let u = delta / d;
    let base = a.center + u * x;
    let n = Cplx::new(-u.im, u.re);
    vec![base + n * h, base - n * h]
}

/// Intersection angles of the circle with the unit circle.
fn unit_circle_touch_angles<T: Real>(c: &IsoCircle<T>) -> [T; 2] {
    let arg = c.center.im.atan2(c.center.re);
    let cosd = (T::one() / c.center.norm()).min(T::one());
    let d = cosd.acos();
    [arg - d, arg + d]
}

#[derive(Debug, Clone)]
struct RawVertex<T: Real> {
    point: Cplx<T>,
    circles: Vec<usize>,
    ideal: bool,
}

/// Computes the boundary polygon of `K intersect prod Ext(C_j)`.
///
/// Returns an error when the region has a free boundary arc on the unit
/// circle (infinite area): the supplied circles do not close up a compact
/// polygon.
pub fn arc_arrangement<T: Real>(circles: &[IsoCircle<T>]) -> EvalResult<HyperbolicPolygon<T>> {
    let circles: Vec<IsoCircle<T>> = prune_dominated(dedupe_circles(circles.to_vec()));
    if circles.is_empty() {
        return Err(EvalError::Domain("arc_arrangement: no circles".into()));
    }
    let tol = T::of(1e-9);
    let satisfied = |w: Cplx<T>, skip: &[usize]| -> bool {
        circles.iter().enumerate().all(|(k, c)| {
            skip.contains(&k) || (w - c.center).norm() >= c.radius - tol * T::of(16.0)
        })
    };
    // candidate vertices
    let mut raw: Vec<RawVertex<T>> = Vec::new();
    for i in 0..circles.len() {
        for j in (i + 1)..circles.len() {
            for w in circle_pair_intersections(&circles[i], &circles[j]) {
                if w.norm() > T::one() - tol {
                    continue;
                }
                if satisfied(w, &[i, j]) {
                    raw.push(RawVertex { point: w, circles: vec![i, j], ideal: false });
                }
            }
        }
        // ideal candidates on the unit circle
        for th in unit_circle_touch_angles(&circles[i]) {
            let w = Cplx::new(th.cos(), th.sin());
            if satisfied(w, &[i]) {
                raw.push(RawVertex { point: w, circles: vec![i], ideal: true });
            }
        }
    }
    // merge coincident vertices
    let merge_tol = T::of(1e-7);
    let mut merged: Vec<RawVertex<T>> = Vec::new();
    for v in raw {
        if let Some(m) = merged.iter_mut().find(|m| (m.point - v.point).norm() < merge_tol) {
            for c in v.circles {
                if !m.circles.contains(&c) {
                    m.circles.push(c);
                }
            }
            m.ideal = m.ideal || v.ideal;
        } else {
            merged.push(v);
        }
    }
    if merged.len() < 2 {
        return Err(EvalError::Domain(
            "arc_arrangement: region has no polygon boundary (free arc)".into(),
        ));
    }
    merged.sort_by(|a, b| {
        let ta = a.point.im.atan2(a.point.re);
        let tb = b.point.im.atan2(b.point.re);
        ta.partial_cmp(&tb).unwrap()
    });
    // walk consecutive vertices, identifying the supporting circle of each arc
    let n = merged.len();
    let mut arcs = Vec::with_capacity(n);
    for k in 0..n {
        let a = &merged[k];
        let b = &merged[(k + 1) % n];
        let ta = a.point.im.atan2(a.point.re);
        let mut tb = b.point.im.atan2(b.point.re);
        if k + 1 == n {
            tb += T::of(2.0) * T::PI();
        }
        let tm = (ta + tb) * T::of(0.5);
        // active circle along the mid-direction
        let mut best: Option<(T, usize)> = None;
        for (idx, c) in circles.iter().enumerate() {
            if let Some(t) = ray_entry(c, tm) {
                if best.map_or(true, |(bt, _)| t < bt) {
                    best = Some((t, idx));
                }
            }
        }
        let Some((_, mid_circle)) = best else {
            return Err(EvalError::Unsupported(
                "arc_arrangement: free boundary arc on the unit circle (region not compact)"
                    .into(),
            ));
        };
        // the supporting circle must pass through both endpoints
        let on_circle = |v: &RawVertex<T>| v.circles.contains(&mid_circle);
        if !on_circle(a) || !on_circle(b) {
            return Err(EvalError::Unsupported(
                "arc_arrangement: inconsistent arc support (degenerate configuration)".into(),
            ));
        }
        arcs.push((mid_circle, k, (k + 1) % n));
    }
    // interior angles
    let mut vertices = Vec::with_capacity(n);
    for k in 0..n {
        let v = &merged[k];
        let angle = if v.ideal {
            T::zero()
        } else {
            let incoming = arcs[(k + n - 1) % n].0;
            let outgoing = arcs[k].0;
            let n1 = (v.point - circles[incoming].center)
                / (v.point - circles[incoming].center).norm();
            let n2 = (v.point - circles[outgoing].center)
                / (v.point - circles[outgoing].center).norm();
            let dot = (n1.re * n2.re + n1.im * n2.im).min(T::one()).max(-T::one());
            T::PI() - dot.acos()
        };
        vertices.push(PolygonVertex { point: v.point, angle, ideal: v.ideal });
    }
    let arcs = arcs
        .into_iter()
        .map(|(c, from, to)| PolygonArc { circle: circles[c], from, to })
        .collect();
    Ok(HyperbolicPolygon { vertices, arcs })
}

/// Isometric circles of a generator list (optionally adding inverses),
/// skipping elements that act as rotations about the origin.
pub fn circles_of<T: Real>(gens: &[GroupElement], include_inverses: bool) -> Vec<IsoCircle<T>> {
    let mut circles = Vec::new();
    for g in gens {
        let mut items = vec![g.clone()];
        if include_inverses {
            items.push(g.inv());
        }
        for e in items {
            if let Ok(c) = isometric_circle(&to_disk::<T>(&e)) {
                circles.push(c);
            }
        }
    }
    circles
}

/// Dirichlet domain of a generator list: the intersection of the exteriors
/// of the isometric circles. With `close_under_products` the list is closed
/// under short products first (walls of the true fundamental domain that are
/// not isometric circles of single generators are then found too).
pub fn dirichlet_domain<T: Real>(
    p: u64,
    gens: &[GroupElement],
    include_inverses: bool,
    close_under_products: bool,
) -> EvalResult<HyperbolicPolygon<T>> {
    if gens.is_empty() {
        return Err(EvalError::Domain("dirichlet_domain: empty generator list".into()));
    }
    let circles: Vec<IsoCircle<T>> = if close_under_products {
        let ball = group_ball(p, gens, 25.0, 16)?;
        circles_of(&ball, false)
    } else {
        circles_of(gens, include_inverses)
    };
    arc_arrangement(&circles)
}

/// The Dirichlet fundamental domain of `R(p)` centered at `2i`, computed
/// from the reduced generators closed under products.
pub fn fundamental_domain<T: Real>(p: u64) -> EvalResult<HyperbolicPolygon<T>> {
    if !is_prime(p) {
        return Err(EvalError::Domain(format!("fundamental_domain: {p} not prime")));
    }
    let gens: Vec<GroupElement> =
        reduced_generators(p)?.into_iter().map(|g| g.element).collect();
    dirichlet_domain::<T>(p, &gens, true, true)
}

/// Exact rational `h_p` from the class-number formula by `p mod 12`:
/// `13/6 + h(-4p)/2`, `3/2 + h(-4p)/2`, `5/3 + (h(-4p) + h(-p))/2`,
/// `1 + (h(-4p) + h(-p))/2` for `p = 1, 5, 7, 11 mod 12`.
pub fn h_p(p: u64) -> EvalResult<Rat> {
    if !is_prime(p) || p < 5 {
        return Err(EvalError::Domain(format!("h_p: need a prime p >= 5, got {p}")));
    }
    let h4p = Rat::from_integer(class_number(-4 * p as i64)?.into());
    let half = Rat::new(1.into(), 2.into());
    let base = match p % 12 {
        1 => Rat::new(13.into(), 6.into()) + &half * h4p,
        5 => Rat::new(3.into(), 2.into()) + &half * h4p,
        7 => {
            let hp = Rat::from_integer(class_number(-(p as i64))?.into());
            Rat::new(5.into(), 3.into()) + &half * (h4p + hp)
        }
        11 => {
            let hp = Rat::from_integer(class_number(-(p as i64))?.into());
            Rat::one() + &half * (h4p + hp)
        }
        _ => unreachable!(),
    };
    Ok(base)
}

/// Genus-zero certificate for `X(R(p))`.
#[derive(Debug, Clone)]
pub struct GenusCertificate {
    pub p: u64,
    /// Number of sides of the Dirichlet domain.
    pub m_p: usize,
    /// Exact `h_p`.
    pub h_p: Rat,
    /// Float area of the computed domain.
    pub area: f64,
    /// `true` when `m_p/2 - 1 <= h_p`: the genus is then zero and the area
    /// equals `2 pi (h_p - 2)`.
    pub certified: bool,
    /// Exact area as the rational multiple `v_p / (2 pi) = h_p - 2` when
    /// certified.
    pub v_p_over_two_pi: Option<Rat>,
    /// Failure reason when not certified.
    pub reason: Option<String>,
}

/// Runs the certification: builds the Dirichlet domain of `R(p)`, counts its
/// sides `m_p`, and checks `m_p/2 - 1 <= h_p` in exact arithmetic. When the
/// inequality holds the genus is zero and `v_p = 2 pi (h_p - 2)`.
pub fn certify_genus_zero(p: u64) -> EvalResult<GenusCertificate> {
    let poly = fundamental_domain::<f64>(p)?;
    let m = poly.sides();
    let h = h_p(p)?;
    let area = hyperbolic_area(&poly);
    let bound = Rat::new((m as i64).into(), 2.into()) - Rat::one();
    let certified = bound <= h;
    let (v, reason) = if certified {
        (Some(h.clone() - Rat::from_integer(2.into())), None)
    } else {
        (None, Some(format!("1/2*m_p - 1 = {bound} > h_p = {h}")))
    };
    Ok(GenusCertificate {
        p,
        m_p: m,
        h_p: h,
        area,
        certified,
        v_p_over_two_pi: v,
        reason,
    })
}

/// Isometric circle of `T_p` in the disk: center `1 + (4/sqrt p) i`, radius
/// `4/sqrt p`.
pub fn t_circle_reference(p: u64) -> (Cplx<f64>, f64) {
    let r = 4.0 / (p as f64).sqrt();
    (Cplx::new(1.0, r), r)
}

/// Isometric circle of `omega_1` in the disk: center `-5/3`, radius `4/3`.
/// The center sits on the negative real axis (the wall separates the origin
/// from the image of 0).
pub fn omega_circle_reference() -> (Cplx<f64>, f64) {
    (Cplx::new(-5.0 / 3.0, 0.0), 4.0 / 3.0)
}
