//! Exact coefficient arithmetic: rationals, Laurent polynomials in `v`,
//! `Q[sqrt q]`, `Q(v)` fractions and the q-combinatorial quantities.

pub mod laurent;
pub mod qcomb;
pub mod qsqrt;
pub mod ratfunc;

pub use laurent::LaurentPoly;
pub use qcomb::{binom2, pochhammer, qbinom, qcomb, qdfact, qfact, qint, QComb};
pub use qsqrt::{specialize_sqrtq, QSqrt};
pub use ratfunc::RatFunc;

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Mul,
    Neg,
    Scalar,
    Bar,
}

/// Uniform entry point for the Laurent ring operations. `Neg` and `Bar`
/// read one operand, `Scalar` multiplies the operand by `c`.
pub fn laurent_arith(op: LaurentOp, x: &LaurentPoly, y: Option<&LaurentPoly>, c: Option<&Rational>) -> LaurentPoly {
    match op {
        LaurentOp::Add => x + y.expect("add needs two operands"),
        LaurentOp::Mul => x * y.expect("mul needs two operands"),
        LaurentOp::Neg => -x,
        LaurentOp::Scalar => x.scale(c.expect("scalar needs a coefficient")),
        LaurentOp::Bar => x.bar(),
    }
}
