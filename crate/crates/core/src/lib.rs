//! Fuchsian groups `R(N)` and their non-holomorphic Eisenstein series.
//!
//! The group `R(N)` is the union of the two sets of unimodular matrices
//!
//! ```text
//! R(N)+ = { [a, b*sqrt(N); c*sqrt(N), d] },   R(N)- = { [a*sqrt(N), b; c, d*sqrt(N)] }
//! ```
//!
//! with integer `a, b, c, d`. This crate implements, exactly where possible:
//!
//! * [`arith`] — elementary multiplicative number theory (Ramanujan sums,
//!   divisor power sums, valuations),
//! * [`quadforms`] — reduction and enumeration of positive definite binary
//!   quadratic forms, class numbers,
//! * [`group`] — exact algebra of `R(N)`: membership, generators, the descent
//!   expressing elements as generator words, and generator-set reduction,
//! * [`elliptic`] — elliptic points and cusps of `R(p)` and the bijection with
//!   form classes of discriminant `-4p`,
//! * [`geometry`] — isometric circles in the Poincaré disk, Dirichlet domains,
//!   hyperbolic polygon areas, and genus-zero certification,
//! * [`lseries`] — Dirichlet series attached to Ramanujan sums and dual
//!   characters, with closed forms and local factors,
//! * [`special`] — Whittaker functions, the `h`-kernel, incomplete gamma,
//!   complex gamma and zeta,
//! * [`eisenstein`] — lattice sums, Fourier expansions, completed series and
//!   their functional equation, Taylor coefficients at `s = 0`,
//! * [`acceptance`] — the end-to-end verification suite used by the CLI.
//!
//! Floating-point numerics are generic over the scalar type through the
//! [`Real`] trait (implemented for `f32` and `f64`); exact data (group
//! elements, quadratic forms, `h_p`) uses arbitrary-precision integers and
//! rationals. The concrete aliases below fix the default `f64` instantiation.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

pub mod acceptance;
pub mod arith;
pub mod eisenstein;
pub mod elliptic;
pub mod geometry;
pub mod group;
pub mod lseries;
pub mod quadforms;
pub mod special;

/// Floating-point scalar the numeric modules are generic over.
///
/// `f32` works for quick experiments; the documented accuracy targets
/// (functional-equation residuals below `1e-6`, Whittaker values to `1e-10`)
/// assume `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + num_traits::NumAssign
    + std::fmt::Debug
    + std::fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`, used for tabulated constants.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in this scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact arbitrary-precision signed integer used throughout the exact modules.
pub type Int = num_bigint::BigInt;
/// Exact rational (`h_p`, certified areas as multiples of `pi`).
pub type Rat = num_rational::BigRational;

/// Default real scalar.
pub type R64 = f64;
/// Default complex scalar.
pub type C64 = Complex<f64>;
/// Complex number over any [`Real`].
pub type Cplx<T> = Complex<T>;

pub use group::{GeneratorWord, GroupElement, Parity};
pub use quadforms::{FormClass, QuadForm};

/// Errors shared by the numeric evaluators.
#[derive(Debug, Clone, thiserror::Error)]
pub enum EvalError {
    /// A closed form was requested at a pole; the locus names the factor.
    #[error("pole encountered at {locus}")]
    Pole { locus: String },
    /// A defining series is evaluated outside its convergence region.
    #[error("series diverges: {0}")]
    Divergence(String),
    /// Parameters outside the supported region of an algorithm.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    /// Precondition violation on a domain argument.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type EvalResult<T> = Result<T, EvalError>;
