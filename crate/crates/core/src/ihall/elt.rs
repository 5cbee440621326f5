use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::frep::ClassId;
use crate::ring::{QSqrt, Rational};

/// Basis element `[X] * K_alpha` of the iHall algebra, `X` a `kQ`-module
/// class (indexed in the `kQ` class tables).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct HallBasisKey {
    pub x: ClassId,
    pub alpha: Vec<i64>,
}

impl HallBasisKey {
    pub fn is_torus(&self) -> bool {
        self.x.dim.iter().all(|&d| d == 0)
    }
}

impl fmt::Display for HallBasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let torus = self.alpha.iter().any(|&a| a != 0);
        if !self.is_torus() || !torus {
            let d: Vec<String> = self.x.dim.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}#{}]", d.join(","), self.x.index)?;
        }
        if torus {
            if !self.is_torus() {
                write!(f, "*")?;
            }
            let a: Vec<String> = self.alpha.iter().map(|x| x.to_string()).collect();
            write!(f, "K({})", a.join(","))?;
        }
        Ok(())
    }
}

/// Finite combination of basis keys with coefficients in `Q[sqrt q]`.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HallElt {
    q: u64,
    terms: BTreeMap<HallBasisKey, QSqrt>,
}

impl HallElt {
    pub fn zero(q: u64) -> HallElt {
        HallElt { q, terms: BTreeMap::new() }
    }

    pub fn basis(q: u64, key: HallBasisKey) -> HallElt {
        let mut e = HallElt::zero(q);
        e.terms.insert(key, QSqrt::one(q));
        e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HallBasisKey, &QSqrt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &HallBasisKey) -> QSqrt {
        self.terms.get(key).cloned().unwrap_or_else(|| QSqrt::zero(self.q))
    }

    pub fn add_term(&mut self, key: HallBasisKey, c: &QSqrt) {
        assert_eq!(c.q(), self.q, "coefficient over a different q");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &QSqrt) -> HallElt {
        let mut out = HallElt::zero(self.q);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), &(x * c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> HallElt {
        self.scale(&QSqrt::from_rational(self.q, c.clone()))
    }

    /// Multiply every key by `K_beta` on the right (no twist).
    pub fn shift_torus(&self, beta: &[i64]) -> HallElt {
        let mut out = HallElt::zero(self.q);
        for (k, x) in &self.terms {
            let alpha = k.alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
            out.add_term(HallBasisKey { x: k.x.clone(), alpha }, x);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| {
                    serde_json::json!({
                        "class": { "dim": k.x.dim, "index": k.x.index },
                        "alpha": k.alpha,
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

impl<'a> Add<&'a HallElt> for &'a HallElt {
    type Output = HallElt;
    fn add(self, o: &HallElt) -> HallElt {
        assert_eq!(self.q, o.q, "HallElt values over different q");
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a HallElt> for &'a HallElt {
    type Output = HallElt;
    fn sub(self, o: &HallElt) -> HallElt {
        self + &(-o)
    }
}

impl Neg for &HallElt {
    type Output = HallElt;
    fn neg(self) -> HallElt {
        HallElt {
            q: self.q,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for HallElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){k}")?;
        }
        Ok(())
    }
}
