use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, Rational};

/// An element `a + b*sqrt(q)` of `Q[sqrt(q)]`.
///
/// When `q` is a perfect square the `b` part is folded into `a`, so `b` is
/// always zero and equality stays component-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt {
    q: u64,
    a: Rational,
    b: Rational,
}

fn exact_sqrt(q: u64) -> Option<u64> {
    let s = q.sqrt();
    (s * s == q).then_some(s)
}

impl QSqrt {
    pub fn new(q: u64, a: Rational, b: Rational) -> Self {
        assert!(q >= 2, "QSqrt needs q >= 2");
        match exact_sqrt(q) {
            Some(s) => Self {
                q,
                a: a + b * Rational::from_integer(BigInt::from(s)),
                b: Rational::zero(),
            },
            None => Self { q, a, b },
        }
    }

    pub fn zero(q: u64) -> Self {
        Self::new(q, Rational::zero(), Rational::zero())
    }

    pub fn one(q: u64) -> Self {
        Self::from_rational(q, Rational::one())
    }

    pub fn from_rational(q: u64, a: Rational) -> Self {
        Self::new(q, a, Rational::zero())
    }

    pub fn from_int(q: u64, n: i64) -> Self {
        Self::from_rational(q, Rational::from_integer(n.into()))
    }

    /// `v = sqrt(q)`.
    pub fn v(q: u64) -> Self {
        Self::new(q, Rational::zero(), Rational::one())
    }

    /// `v^e` for any integer `e`.
    pub fn v_pow(q: u64, e: i64) -> Self {
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let qpow = rational_pow(&Rational::from_integer(q.into()), half);
        if odd {
            Self::new(q, Rational::zero(), qpow)
        } else {
            Self::from_rational(q, qpow)
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check(&self, other: &QSqrt) {
        assert_eq!(self.q, other.q, "QSqrt values over different q");
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.q.into())
    }

    pub fn inv(&self) -> Option<QSqrt> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(self.q, &self.a / &n, -(&self.b / &n)))
    }

    pub fn scale(&self, c: &Rational) -> QSqrt {
        Self::new(self.q, &self.a * c, &self.b * c)
    }

    pub fn pow(&self, e: i64) -> QSqrt {
        if e < 0 {
            return self.inv().expect("inverse of zero").pow(-e);
        }
        let mut acc = QSqrt::one(self.q);
        let mut base = self.clone();
        let mut n = e as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

pub(crate) fn rational_pow(x: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Specialize `v -> sqrt(q)`.
pub fn specialize_sqrtq(p: &LaurentPoly, q: u64) -> QSqrt {
    let mut out = QSqrt::zero(q);
    for (e, c) in p.terms() {
        out += &QSqrt::v_pow(q, e).scale(c);
    }
    out
}

impl AddAssign<&QSqrt> for QSqrt {
    fn add_assign(&mut self, rhs: &QSqrt) {
        self.check(rhs);
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QSqrt> for QSqrt {
    fn sub_assign(&mut self, rhs: &QSqrt) {
        self.check(rhs);
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl<'a> Add<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn add(self, rhs: &QSqrt) -> QSqrt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn sub(self, rhs: &QSqrt) -> QSqrt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn mul(self, rhs: &QSqrt) -> QSqrt {
        self.check(rhs);
        let q = Rational::from_integer(self.q.into());
        QSqrt {
            q: self.q,
            a: &self.a * &rhs.a + &self.b * &rhs.b * q,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl<'a> Div<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn div(self, rhs: &QSqrt) -> QSqrt {
        self * &rhs.inv().expect("division by zero in Q[sqrt q]")
    }
}

impl Add for QSqrt {
    type Output = QSqrt;
    fn add(self, rhs: QSqrt) -> QSqrt {
        &self + &rhs
    }
}

impl Sub for QSqrt {
    type Output = QSqrt;
    fn sub(self, rhs: QSqrt) -> QSqrt {
        &self - &rhs
    }
}

impl Mul for QSqrt {
    type Output = QSqrt;
    fn mul(self, rhs: QSqrt) -> QSqrt {
        &self * &rhs
    }
}

impl Div for QSqrt {
    type Output = QSqrt;
    fn div(self, rhs: QSqrt) -> QSqrt {
        &self / &rhs
    }
}

impl Neg for &QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        QSqrt {
            q: self.q,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl Neg for QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        -&self
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}·√{}", self.b, self.q),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}·√{}", self.a, sign, self.b.abs(), self.q)
            }
        }
    }
}

impl fmt::Debug for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSqrt[q={}]({})", self.q, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qcomb::qint;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn v_at_two() {
        let x = specialize_sqrtq(&LaurentPoly::v(), 2);
        assert_eq!(x.a(), &rat(0, 1));
        assert_eq!(x.b(), &rat(1, 1));
    }

    #[test]
    fn square_q_folds() {
        let x = specialize_sqrtq(&qint(2), 4);
        assert_eq!(x.a(), &rat(5, 2));
        assert!(x.b().is_zero());
    }

    #[test]
    fn v_minus_vinv_squared() {
        let p = LaurentPoly::v() - LaurentPoly::v_pow(-1);
        let p2 = &p * &p;
        for q in [2u64, 3, 5, 7] {
            let x = specialize_sqrtq(&p2, q);
            let qq = q as i64;
            assert_eq!(x.a(), &rat((qq - 1) * (qq - 1), qq));
            assert!(x.b().is_zero());
        }
    }

    #[test]
    fn inverse() {
        let x = QSqrt::new(3, rat(2, 1), rat(-1, 3));
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn v_pow_negative_odd() {
        let x = QSqrt::v_pow(2, -3);
        assert!((&x * &QSqrt::v_pow(2, 3)).is_one());
    }
}
