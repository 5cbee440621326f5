use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::qsqrt::specialize_sqrtq;
use super::{LaurentPoly, QSqrt};

/// Element of `Q(v)` stored as an unreduced fraction of Laurent polynomials.
///
/// Equality is decided by cross multiplication. Sums keep a shared
/// denominator when one divides the other, which keeps q-factorial
/// denominators from multiplying out.
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut out = Self { num, den };
        out.tidy();
        out
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn tidy(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
        } else if !self.den.is_one() {
            if let Some(p) = self.num.div_exact(&self.den) {
                self.num = p;
                self.den = LaurentPoly::one();
            }
        }
    }

    /// The value as a Laurent polynomial, if the denominator divides out.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den)
    }

    pub fn inv(&self) -> Option<RatFunc> {
        (!self.num.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        self * &other.inv().expect("division by zero in Q(v)")
    }

    pub fn specialize(&self, q: u64) -> QSqrt {
        &specialize_sqrtq(&self.num, q) / &specialize_sqrtq(&self.den, q)
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        if let Some(k) = self.den.div_exact(&rhs.den) {
            return RatFunc::new(&self.num + &(&rhs.num * &k), self.den.clone());
        }
        if let Some(k) = rhs.den.div_exact(&self.den) {
            return RatFunc::new(&(&self.num * &k) + &rhs.num, rhs.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qcomb::qint;
    use num_traits::Zero;

    #[test]
    fn fraction_equality() {
        let a = RatFunc::new(LaurentPoly::v_pow(1) + LaurentPoly::v_pow(3), qint(2));
        assert_eq!(a, RatFunc::from_poly(LaurentPoly::v_pow(2)));
        assert_eq!(a.as_poly(), Some(LaurentPoly::v_pow(2)));
    }

    #[test]
    fn sum_to_zero() {
        let a = RatFunc::new(LaurentPoly::one(), qint(3));
        let b = RatFunc::new(-LaurentPoly::one(), qint(3));
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn specialize_fraction() {
        // 1/[2] at q=2: 1/(sqrt2 + 1/sqrt2) = sqrt2/3
        let a = RatFunc::new(LaurentPoly::one(), qint(2));
        let x = a.specialize(2);
        assert!(x.a().is_zero());
        assert_eq!(x.b(), &crate::ring::Rational::new(1.into(), 3.into()));
    }
}
