//! Quantum integers, factorials, binomials and Pochhammer products.

use crate::error::{Error, Result};

use super::{LaurentPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QComb {
    Qint,
    Qfact,
    Qdfact,
    Qbinom,
    Pochhammer,
}

/// Dispatch by kind. Argument layouts:
/// `Qint [n]`, `Qfact [n]`, `Qdfact [n]`, `Qbinom [m, r]`,
/// `Pochhammer [e_a, e_x, n]` for `(v^{e_a}; v^{e_x})_n`.
pub fn qcomb(kind: QComb, args: &[i64]) -> Result<LaurentPoly> {
    let want = match kind {
        QComb::Qint | QComb::Qfact | QComb::Qdfact => 1,
        QComb::Qbinom => 2,
        QComb::Pochhammer => 3,
    };
    if args.len() != want {
        return Err(Error::Domain(format!(
            "{kind:?} takes {want} arguments, got {}",
            args.len()
        )));
    }
    let nonneg = |n: i64| {
        if n < 0 {
            Err(Error::Domain(format!("{kind:?} needs n >= 0, got {n}")))
        } else {
            Ok(n as u32)
        }
    };
    Ok(match kind {
        QComb::Qint => qint(args[0]),
        QComb::Qfact => qfact(nonneg(args[0])?),
        QComb::Qdfact => qdfact(nonneg(args[0])?),
        QComb::Qbinom => {
            if args[1] < 0 {
                return Err(Error::Domain(format!("qbinom needs r >= 0, got {}", args[1])));
            }
            qbinom(args[0], args[1])
        }
        QComb::Pochhammer => pochhammer(args[0], args[1], nonneg(args[2])?),
    })
}

/// `[n] = (v^n - v^{-n}) / (v - v^{-1})`, for any integer `n`.
pub fn qint(n: i64) -> LaurentPoly {
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    let one = Rational::from_integer(sign.into());
    LaurentPoly::from_terms((0..m).map(|j| (m - 1 - 2 * j, one.clone())))
}

/// `[n]! = [1][2]...[n]`.
pub fn qfact(n: u32) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, j| &acc * &qint(j))
}

/// `[n]!! = [n][n-2]...`, stopping at `[2]` or `[1]`; `[0]!! = 1`.
pub fn qdfact(n: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut j = n as i64;
    while j >= 1 {
        acc = &acc * &qint(j);
        j -= 2;
    }
    acc
}

/// `[m choose r] = [m][m-1]...[m-r+1] / [r]!`; zero for `r < 0`.
pub fn qbinom(m: i64, r: i64) -> LaurentPoly {
    if r < 0 {
        return LaurentPoly::zero();
    }
    let num = (0..r).fold(LaurentPoly::one(), |acc, j| &acc * &qint(m - j));
    num.div_exact(&qfact(r as u32))
        .unwrap_or_else(|| panic!("q-binomial [{m} choose {r}] is not a Laurent polynomial"))
}

/// `(v^{e_a}; v^{e_x})_n = prod_{j<n} (1 - v^{e_a + j e_x})`.
pub fn pochhammer(e_a: i64, e_x: i64, n: u32) -> LaurentPoly {
    (0..n as i64).fold(LaurentPoly::one(), |acc, j| {
        &acc * &(LaurentPoly::one() - LaurentPoly::v_pow(e_a + j * e_x))
    })
}

/// `binom(n, 2) = n(n-1)/2` extended to all integers.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vp(e: i64) -> LaurentPoly {
        LaurentPoly::v_pow(e)
    }

    #[test]
    fn small_values() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(3), vp(2) + vp(0) + vp(-2));
        assert_eq!(qbinom(2, 1), vp(1) + vp(-1));
        assert_eq!(qdfact(2), vp(1) + vp(-1));
        assert_eq!(pochhammer(-2, -2, 1), vp(0) - vp(-2));
    }

    #[test]
    fn telescoping() {
        let d = vp(1) - vp(-1);
        assert_eq!(&d * &qint(2), vp(2) - vp(-2));
    }

    #[test]
    fn negative_qint() {
        assert_eq!(qint(-3), -qint(3));
    }

    #[test]
    fn binomial_edges() {
        assert!(qbinom(3, 0).is_one());
        assert!(qbinom(2, 3).is_zero());
        assert!(qbinom(5, -1).is_zero());
        // [-1 choose 2] = [-1][-2]/[2] = [1][2]/[2] = 1
        assert!(qbinom(-1, 2).is_one());
    }

    #[test]
    fn dispatcher_domain_errors() {
        assert!(qcomb(QComb::Qfact, &[-1]).is_err());
        assert!(qcomb(QComb::Pochhammer, &[1, 1, -2]).is_err());
        assert!(qcomb(QComb::Qbinom, &[3]).is_err());
        assert_eq!(qcomb(QComb::Qbinom, &[4, 2]).unwrap(), qbinom(4, 2));
    }
}
