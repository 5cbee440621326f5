//! Exact checks of the q-binomial identities behind the iSerre relation.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ihall::oracle::p_sss;
use crate::ring::{binom2, pochhammer, qbinom, qdfact, qfact, qint, LaurentPoly, RatFunc};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TVariant {
    T,
    T1,
}

/// Index data of one summand of `T(a, d, u)`, with `r = d - k - m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityArgs {
    pub a: i64,
    pub d: i64,
    pub u: i64,
    pub n: i64,
    pub k: i64,
    pub m: i64,
    pub r: i64,
}

impl IdentityArgs {
    pub fn w(&self) -> i64 {
        self.n + self.m - self.k - self.d
    }

    /// `p(a, r, n - 2k, 1 + a - n - 2m)` with `u_M = u`.
    pub fn p_value(&self) -> i64 {
        p_sss(self.a, self.r, self.n - 2 * self.k, 1 + self.a - self.n - 2 * self.m, self.u)
    }

    pub fn z(&self) -> i64 {
        let (a, n, k, m) = (self.a, self.n, self.k, self.m);
        k * (k - 1) + m * (m + 1) - binom2(n - 2 * k) - binom2(1 + a - n - 2 * m) + self.p_value()
    }

    /// `L` from the vanishing argument for `T`, as printed. It does not
    /// match `z - binom(r+1, 2) + 2(k-1)m` summand by summand, and the
    /// checker never uses it.
    pub fn l(&self) -> i64 {
        let (a, d, u, w) = (self.a, self.d, self.u, self.w());
        d * (d - 1) - a * w + (u - a + 2 * d + 2 * w) * (1 + a - 2 * d - w) + w * w + 1
    }

    /// Lower entry of the binomial `[u, 1 + a - n - 2m - r]`.
    pub fn bottom(&self) -> i64 {
        1 + self.a - self.n - 2 * self.m - self.r
    }

    /// Power of `v` in this summand of `T` or `T1`.
    pub fn exponent(&self, variant: TVariant) -> i64 {
        let shifted = (self.n % 2 == 1) == (variant == TVariant::T);
        if shifted {
            self.z() + 2 * self.k - 2 * self.m
        } else {
            self.z()
        }
    }
}

pub fn check_adu(a: i64, d: i64, u: i64) -> Result<()> {
    let ok = a >= 0 && d >= 0 && 2 * d <= a + 1 && u >= 0 && u <= a + 1 - 2 * d && (d, u) != (0, 0);
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("(a, d, u) = ({a}, {d}, {u}) violates the T constraints")))
    }
}

/// Summands of `T(a, d, u)` whose binomial is nonzero.
pub fn t_summands(a: i64, d: i64, u: i64) -> Result<Vec<IdentityArgs>> {
    check_adu(a, d, u)?;
    let mut out = Vec::new();
    for n in 0..=a + 1 {
        for k in 0..=n / 2 {
            for m in 0..=(a + 1 - n) / 2 {
                let r = d - k - m;
                if r < 0 || r > n - 2 * k {
                    continue;
                }
                let x = IdentityArgs { a, d, u, n, k, m, r };
                let b = x.bottom();
                if b >= 0 && b <= u {
                    out.push(x);
                }
            }
        }
    }
    Ok(out)
}

/// `T(a, d, u)` or `T1(a, d, u)` as an exact element of `Q(v)`.
///
/// The sum is formed over the common denominator `[d]! [2d]!!`; each
/// `[2k]!! [2m]!!` divides `[2d]!!` since `k + m <= d`.
pub fn t_value(a: i64, d: i64, u: i64, variant: TVariant) -> Result<RatFunc> {
    let mut num = LaurentPoly::zero();
    for x in t_summands(a, d, u)? {
        let t = &(&sign(x.n) * &qbinom(u, x.bottom())) * &LaurentPoly::v_pow(x.exponent(variant));
        num = num + &t * &cofactor(d, x.k, x.m);
    }
    Ok(RatFunc::new(num, &qfact(d as u32) * &qdfact(2 * d as u32)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Qbinom1,
    Km1,
    Km3,
    Km5,
    Kmrd,
    T,
    T1,
}

impl Suite {
    pub const ALL: [Suite; 7] = [Suite::Qbinom1, Suite::Km1, Suite::Km3, Suite::Km5, Suite::Kmrd, Suite::T, Suite::T1];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qbinom1 => "qbinom1",
            Suite::Km1 => "km1",
            Suite::Km3 => "km3",
            Suite::Km5 => "km5",
            Suite::Kmrd => "kmrd",
            Suite::T => "t",
            Suite::T1 => "t1",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown identity suite '{s}'")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub suite: String,
    pub instance: String,
    pub status: String,
    /// `LHS - RHS`, empty on pass.
    pub residual: String,
    pub wall_ms: f64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn v(e: i64) -> LaurentPoly {
    LaurentPoly::v_pow(e)
}

fn frac(num: LaurentPoly, den: LaurentPoly) -> RatFunc {
    RatFunc::new(num, den)
}

fn sign(n: i64) -> LaurentPoly {
    LaurentPoly::from_int(if n % 2 == 0 { 1 } else { -1 })
}

/// `[d]! [2d]!! / ([r]! [2k]!! [2m]!!)` for `k + m + r = d`, as the
/// product `prod_{r<j<=d} [j] * prod_{k+m<j<=d} [2j] * [k+m, k]_{v^2}`.
fn cofactor(d: i64, k: i64, m: i64) -> LaurentPoly {
    let r = d - k - m;
    let mut c = qbinom(k + m, k).subst_pow(2);
    for j in r + 1..=d {
        c = &c * &qint(j);
    }
    for j in k + m + 1..=d {
        c = &c * &qint(2 * j);
    }
    c
}

/// `sum_t (-1)^t v^{e t} [p, t]`.
fn alt_binom_sum(p: i64, e: i64) -> LaurentPoly {
    (0..=p).fold(LaurentPoly::zero(), |acc, t| acc + &(&sign(t) * &v(e * t)) * &qbinom(p, t))
}

/// `(LHS, RHS)` for each instance, as `(name, lhs, rhs)`.
type Instance = (String, Box<dyn Fn() -> Result<(RatFunc, RatFunc)> + Send + Sync>);

fn instances(suite: Suite, bound: i64) -> Vec<Instance> {
    let mut out: Vec<Instance> = Vec::new();
    match suite {
        Suite::Qbinom1 => {
            for p in 1..=bound {
                for d in -(p - 1)..=(p - 1) {
                    if (d - (p - 1)).rem_euclid(2) != 0 {
                        continue;
                    }
                    out.push((
                        format!("case1 p={p} d={d}"),
                        Box::new(move || Ok((alt_binom_sum(p, -d).into(), RatFunc::zero()))),
                    ));
                }
                out.push((
                    format!("case2 p={p}"),
                    Box::new(move || Ok((alt_binom_sum(p, -(p + 1)).into(), pochhammer(-2, -2, p as u32).into()))),
                ));
                out.push((
                    format!("case3 p={p}"),
                    Box::new(move || Ok((alt_binom_sum(p, p + 1).into(), pochhammer(2, 2, p as u32).into()))),
                ));
            }
        }
        Suite::Km1 => {
            for p in 0..=bound {
                out.push((
                    format!("p={p}"),
                    Box::new(move || {
                        // [2p]!! / ([2k]!! [2m]!!) = [p, k]_{v^2}
                        let num = (0..=p).fold(LaurentPoly::zero(), |acc, k| {
                            let m = p - k;
                            acc + &v(-2 * (k - 1) * m - p * (3 - p) / 2) * &qbinom(p, k).subst_pow(2)
                        });
                        let s = frac(num, qdfact(2 * p as u32));
                        Ok((&RatFunc::from_poly(qfact(p as u32)) * &s, RatFunc::one()))
                    }),
                ));
            }
        }
        Suite::Km3 => {
            for p in 0..=bound {
                out.push((
                    format!("p={p}"),
                    Box::new(move || {
                        let lhs = (0..=p).fold(LaurentPoly::zero(), |acc, k| {
                            acc + &v(p * (p + 1) / 2 - 2 * k * (p - k + 1)) * &qbinom(p, k).subst_pow(2)
                        });
                        Ok((lhs.into(), frac(qdfact(2 * p as u32), qfact(p as u32))))
                    }),
                ));
            }
        }
        Suite::Km5 => {
            for p in 0..=bound {
                out.push((
                    format!("p={p}"),
                    Box::new(move || {
                        let lhs = (0..=p)
                            .fold(LaurentPoly::zero(), |acc, k| acc + &v(-k * (p - k + 1)) * &qbinom(p, k));
                        let rhs = (1..=p).fold(LaurentPoly::one(), |acc, j| &acc * &(LaurentPoly::one() + v(-j)));
                        Ok((lhs.into(), rhs.into()))
                    }),
                ));
            }
        }
        Suite::Kmrd => {
            for d in 1..=bound {
                out.push((
                    format!("d={d}"),
                    Box::new(move || {
                        // the cofactor splits as (part depending on r) * [k+m, k]_{v^2}
                        let mut num = LaurentPoly::zero();
                        for r in 0..=d {
                            let inner = (0..=d - r).fold(LaurentPoly::zero(), |acc, k| {
                                let m = d - r - k;
                                acc + &v(binom2(r + 1) - 2 * (k - 1) * m) * &qbinom(d - r, k).subst_pow(2)
                            });
                            let outer = &sign(r) * &cofactor(d, d - r, 0);
                            num = num + &inner * &outer;
                        }
                        let s = frac(num, &qfact(d as u32) * &qdfact(2 * d as u32));
                        Ok((s, RatFunc::zero()))
                    }),
                ));
            }
        }
        Suite::T | Suite::T1 => {
            let variant = if suite == Suite::T { TVariant::T } else { TVariant::T1 };
            for a in 0..=bound {
                for d in 0..=(a + 1) / 2 {
                    for u in 0..=a + 1 - 2 * d {
                        if (d, u) == (0, 0) {
                            continue;
                        }
                        out.push((
                            format!("a={a} d={d} u={u}"),
                            Box::new(move || Ok((t_value(a, d, u, variant)?, RatFunc::zero()))),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Verify every instance of `suite` with parameters up to `bound`.
/// Reports come back in instance order.
pub fn identity_suite(suite: Suite, bound: u32) -> Result<Vec<IdentityReport>> {
    if bound < 1 {
        return Err(Error::Domain("identity bound must be at least 1".into()));
    }
    let jobs = instances(suite, bound as i64);
    jobs.par_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let (lhs, rhs) = f()?;
            let diff = &lhs - &rhs;
            let ok = diff.is_zero();
            Ok(IdentityReport {
                suite: suite.name().to_string(),
                instance: name.clone(),
                status: if ok { "pass" } else { "fail" }.to_string(),
                residual: if ok { String::new() } else { diff.to_string() },
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn all_pass(suite: Suite, bound: u32) -> usize {
        let r = identity_suite(suite, bound).unwrap();
        for x in &r {
            assert!(x.passed(), "{x:?}");
        }
        r.len()
    }

    #[test]
    fn suites_pass() {
        assert_eq!(all_pass(Suite::Km1, 12), 13);
        assert_eq!(all_pass(Suite::Km3, 12), 13);
        assert_eq!(all_pass(Suite::Km5, 12), 13);
        assert_eq!(all_pass(Suite::Kmrd, 12), 12);
        // p valid d values, plus cases 2 and 3
        assert_eq!(all_pass(Suite::Qbinom1, 12), (1..=12).map(|p| p + 2).sum::<usize>());
    }

    #[test]
    fn t_suites_pass() {
        let n = all_pass(Suite::T, 8);
        assert_eq!(n, all_pass(Suite::T1, 8));
        let want: usize = (0..=8i64)
            .map(|a| (0..=(a + 1) / 2).map(|d| (a + 2 - 2 * d) as usize).sum::<usize>() - 1)
            .sum();
        assert_eq!(n, want);
    }

    #[test]
    fn small_t_values() {
        assert!(t_value(1, 0, 1, TVariant::T).unwrap().is_zero());
        assert!(t_value(1, 1, 0, TVariant::T).unwrap().is_zero());
        assert!(t_value(2, 1, 0, TVariant::T1).unwrap().is_zero());
        assert!(t_value(0, 0, 0, TVariant::T).is_err());
        assert!(t_value(1, 2, 0, TVariant::T).is_err());
    }

    /// Enumerate the summands of T(a,d,u) from the (k, m, r) side.
    fn summand_oracle(a: i64, d: i64, u: i64) -> usize {
        let mut c = 0;
        for k in 0..=d {
            for m in 0..=d - k {
                let r = d - k - m;
                for n in 0..=a + 1 {
                    let in_range = 2 * k <= n && 2 * m <= a + 1 - n && r <= n - 2 * k;
                    let b = 1 + a - n - 2 * m - r;
                    if in_range && !qbinom(u, b).is_zero() {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn summand_count() {
        assert_eq!(t_summands(2, 1, 0).unwrap().len(), 3);
        for a in 0..=6 {
            for d in 0..=(a + 1) / 2 {
                for u in 0..=a + 1 - 2 * d {
                    if (d, u) != (0, 0) {
                        assert_eq!(t_summands(a, d, u).unwrap().len(), summand_oracle(a, d, u));
                    }
                }
            }
        }
    }

    #[test]
    fn cofactor_divides_out() {
        for d in 0..=7 {
            for k in 0..=d {
                for m in 0..=d - k {
                    let den = &qfact(d as u32) * &qdfact(2 * d as u32);
                    let part = &(&qfact((d - k - m) as u32) * &qdfact(2 * k as u32)) * &qdfact(2 * m as u32);
                    assert_eq!(den.div_exact(&part), Some(cofactor(d, k, m)), "d={d} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn z_at_d_zero() {
        // with k = m = r = 0 the exponent is (1 - u) w + (1 + a) u + 1
        for a in 0..=8 {
            for u in 1..=a + 1 {
                for x in t_summands(a, 0, u).unwrap() {
                    assert_eq!(x.z(), (1 - u) * x.w() + (1 + a) * u + 1, "{x:?}");
                }
            }
        }
    }

    #[test]
    fn spec_examples() {
        // km5 at p = 1
        let l = LaurentPoly::one() + v(-1);
        assert_eq!(
            (0..=1).fold(LaurentPoly::zero(), |acc, k| acc + &v(-k * (2 - k)) * &qbinom(1, k)),
            l
        );
        // kmrd at d = 1: (1 + v^2)/[2] - v
        let x = &frac(LaurentPoly::one() + v(2), qint(2)) - &RatFunc::from_poly(v(1));
        assert!(x.is_zero());
        // qbinom1 case 1 at p = 2, d = 1: 1 - v^-1 [2] + v^-2
        let y = LaurentPoly::one() - &v(-1) * &qint(2) + v(-2);
        assert!(y.is_zero());
        assert_eq!(alt_binom_sum(2, -1), y);
    }

    #[test]
    fn broken_identity_fails() {
        let lhs = alt_binom_sum(3, -(3 + 1));
        assert_ne!(RatFunc::from(lhs), RatFunc::from(pochhammer(2, 2, 3)));
        assert!(!LaurentPoly::constant(rat(1)).is_zero());
        assert!("kmx".parse::<Suite>().is_err());
        assert_eq!("KM5".parse::<Suite>().unwrap(), Suite::Km5);
        assert!(identity_suite(Suite::Km1, 0).is_err());
    }
}
