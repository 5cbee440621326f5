use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Laurent polynomial in `v` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// The indeterminate `v`.
    pub fn v() -> Self {
        Self::monomial(1, Rational::one())
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The bar involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitute `v -> v^k`.
    pub fn subst_pow(&self, k: i64) -> Self {
        assert!(k != 0, "subst_pow by zero collapses the ring");
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
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

    /// Exact division. Returns `None` when `d` does not divide `self` in
    /// `Q[v, v^{-1}]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (dlo, dhi) = (d.min_exp()?, d.max_exp()?);
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = d.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Any quotient term sits at exponent >= min(self) - dlo.
        let floor = self.min_exp().unwrap() - dlo;
        while let Some(top) = rem.max_exp() {
            let e = top - dhi;
            if e < floor {
                return None;
            }
            let c = rem.coeff(top) / &lead;
            for (de, dc) in d.terms() {
                rem.add_term(e + de, -(dc * &c));
            }
            quot.add_term(e, c);
        }
        Some(quot)
    }

    /// Integer coefficients only.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_integral() && rhs.is_integral() {
            return mul_integral(self, rhs);
        }
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Dense product over `BigInt`, avoiding a gcd per coefficient operation.
fn mul_integral(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (Some(alo), Some(blo)) = (a.min_exp(), b.min_exp()) else {
        return LaurentPoly::zero();
    };
    let width = (a.max_exp().unwrap() - alo + b.max_exp().unwrap() - blo + 1) as usize;
    let mut acc = vec![BigInt::zero(); width];
    let bs: Vec<(usize, &BigInt)> = b.terms.iter().map(|(e, c)| ((e - blo) as usize, c.numer())).collect();
    for (e1, c1) in a.terms.iter() {
        let off = (e1 - alo) as usize;
        for (o2, c2) in &bs {
            acc[off + o2] += c1.numer() * *c2;
        }
    }
    let terms = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (alo + blo + i as i64, Rational::from_integer(c)))
        .collect();
    LaurentPoly { terms }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

pub(crate) fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for ch in n.unsigned_abs().to_string().chars() {
        s.push(DIGITS[ch.to_digit(10).unwrap() as usize]);
    }
    s
}

/// `v`, `v²`, `v⁻¹`, ... ; empty for exponent 0.
pub(crate) fn v_power_str(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "v".to_string(),
        _ => format!("v{}", superscript(e)),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let vp = v_power_str(*e);
            if abs.is_one() && !vp.is_empty() {
                write!(f, "{vp}")?;
            } else if vp.is_empty() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}{vp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn bar_negates_exponents() {
        let p = LaurentPoly::from_terms([(2, r(1)), (-1, r(-1))]);
        let expect = LaurentPoly::from_terms([(-2, r(1)), (1, r(-1))]);
        assert_eq!(p.bar(), expect);
    }

    #[test]
    fn add_neg_is_zero() {
        let p = LaurentPoly::from_terms([(3, r(4)), (-2, r(1)), (0, r(-7))]);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = LaurentPoly::from_terms([(1, r(1)), (-1, r(1))]);
        let b = LaurentPoly::from_terms([(3, r(2)), (0, r(-1)), (-4, r(5))]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
    }

    #[test]
    fn inexact_division_is_none() {
        let a = LaurentPoly::from_terms([(1, r(1)), (-1, r(1))]);
        assert_eq!(LaurentPoly::one().div_exact(&a), None);
        let b = LaurentPoly::from_terms([(2, r(1)), (0, r(1))]);
        assert_eq!(LaurentPoly::v().div_exact(&b), None);
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(2, r(1)), (0, r(1)), (-2, r(1))]);
        assert_eq!(p.to_string(), "v² + 1 + v⁻²");
        let p = LaurentPoly::from_terms([(1, r(1)), (-1, r(-1))]);
        assert_eq!(p.to_string(), "v - v⁻¹");
    }
}
