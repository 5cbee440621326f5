//! Divided powers and idivided powers of `[S]`.
//!
//! The rank-one algebra spanned by `[nS] * [K]^k` is multiplied exactly
//! with Laurent coefficients. Idivided powers are kept in the scaled form
//! `[n]! [S]^{(n)}`, which has coefficients in `Z[v, v^-1]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ihall::{HallBasisKey, HallContext, HallElt};
use crate::ring::laurent::{superscript, v_power_str};
use crate::ring::{binom2, qdfact, qfact, qint, specialize_sqrtq, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// `0̄`
    Ev,
    /// `1̄`
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Ev => Parity::Odd,
            Parity::Odd => Parity::Ev,
        }
    }

    /// Parity of `self + c` for an integer `c`.
    pub fn shift(self, c: i64) -> Parity {
        if c.rem_euclid(2) == 0 {
            self
        } else {
            self.flip()
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Ev
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Ev => 0,
            Parity::Odd => 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Parity::Ev { "ev" } else { "odd" })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Parity> {
        match s {
            "ev" | "0" | "even" => Ok(Parity::Ev),
            "odd" | "1" => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!("parity must be ev or odd, got '{s}'"))),
        }
    }
}

/// Element of the rank-one algebra: `(n, k) -> coefficient` for the basis
/// element `[nS] * [K]^k`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SymRank1Elt {
    terms: BTreeMap<(u32, i64), LaurentPoly>,
}

impl SymRank1Elt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(0, 0)
    }

    pub fn basis(n: u32, k: i64) -> Self {
        Self::term(n, k, LaurentPoly::one())
    }

    pub fn term(n: u32, k: i64, c: LaurentPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(n, k, &c);
        e
    }

    pub fn s() -> Self {
        Self::basis(1, 0)
    }

    pub fn kk() -> Self {
        Self::basis(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i64), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, n: u32, k: i64) -> LaurentPoly {
        self.terms.get(&(n, k)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, n: u32, k: i64, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((n, k)).or_insert_with(LaurentPoly::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(n, k));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(n, k), c) in &o.terms {
            out.add_term(n, k, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&LaurentPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (&(n, k), x) in &self.terms {
            out.add_term(n, k, &(x * c));
        }
        out
    }

    /// Multiply by `[K]^j` (central).
    pub fn shift_k(&self, j: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(n, k), c)| ((n, k + j), c.clone())).collect(),
        }
    }

    /// `[S] * self`, by `[S]*[mS] = v^{-m}[(m+1)S] + (v^m - v^{-m})[(m-1)S]*[K]`.
    fn left_s(&self) -> Self {
        let mut out = Self::zero();
        for (&(m, k), c) in &self.terms {
            let mi = m as i64;
            out.add_term(m + 1, k, &(c * &LaurentPoly::v_pow(-mi)));
            if m > 0 {
                out.add_term(m - 1, k + 1, &(c * &(LaurentPoly::v_pow(mi) - LaurentPoly::v_pow(-mi))));
            }
        }
        out
    }

    /// Map `[nS] * [K]^k` to the basis key `([n S_i], k e_i)`.
    pub fn to_hall(&self, ctx: &HallContext, i: usize) -> Result<HallElt> {
        if ctx.iq.tau(i) != i {
            return Err(Error::Domain("rank-one embedding needs a tau-fixed vertex".into()));
        }
        let mut out = ctx.zero();
        for (&(n, k), c) in &self.terms {
            let x = ctx.semisimple(i, n)?;
            let (key, _) = x.terms().next().unwrap();
            let mut alpha = vec![0; ctx.n()];
            alpha[i] = k;
            out.add_term(
                HallBasisKey {
                    x: key.x.clone(),
                    alpha,
                },
                &specialize_sqrtq(c, ctx.q),
            );
        }
        Ok(out)
    }
}

/// Exact product in the rank-one algebra. `[K]` is central, and
/// `[mS] * X` is unfolded with
/// `[mS] = v^{m-1} ([S] * [(m-1)S] - (v^{m-1} - v^{1-m}) [(m-2)S] * [K])`.
pub fn sym_rank1_mul(a: &SymRank1Elt, b: &SymRank1Elt) -> SymRank1Elt {
    let top = a.terms.keys().map(|&(m, _)| m).max().unwrap_or(0);
    // left[m] = [mS] * b
    let mut left: Vec<SymRank1Elt> = vec![b.clone()];
    for m in 1..=top as i64 {
        let mut x = left[m as usize - 1].left_s();
        if m >= 2 {
            let c = LaurentPoly::v_pow(m - 1) - LaurentPoly::v_pow(1 - m);
            x = x.sub(&left[m as usize - 2].shift_k(1).scale(&c));
        }
        left.push(x.scale(&LaurentPoly::v_pow(m - 1)));
    }
    let mut out = SymRank1Elt::zero();
    for (&(m, k), c) in &a.terms {
        out = out.add(&left[m as usize].shift_k(k).scale(c));
    }
    out
}

impl fmt::Display for SymRank1Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, (&(n, k), c)) in self.terms.iter().rev().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){}", basis_str(n, k))?;
        }
        Ok(())
    }
}

fn basis_str(n: u32, k: i64) -> String {
    let s = match n {
        0 => String::new(),
        1 => "[S]".to_string(),
        _ => format!("[{n}S]"),
    };
    let kk = match k {
        0 => String::new(),
        1 => "[𝕂]".to_string(),
        _ => format!("[𝕂]{}", superscript(k)),
    };
    match (s.is_empty(), kk.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => s,
        (true, false) => kk,
        (false, false) => format!("{s}*{kk}"),
    }
}

/// `[n]! [S]^{(n)}_parity`, with its normalizing denominator `[n]!`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scaled {
    pub n: u32,
    pub scaled: SymRank1Elt,
}

impl Scaled {
    pub fn denominator(&self) -> LaurentPoly {
        qfact(self.n)
    }
}

/// Exponent of `v` in the `k`-th closed-form summand.
fn closed_exponent(n: u32, k: u32, parity: Parity) -> i64 {
    let (n, k) = (n as i64, k as i64);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let lin = match parity {
        Parity::Ev => k * (k - sign),
        Parity::Odd => k * (k + sign),
    };
    lin - binom2(n - 2 * k)
}

/// Closed formula: `sum_k v^{e_k} (v - v^-1)^k / ([n-2k]! [2k]!!) [(n-2k)S] * [K]^k`,
/// returned times `[n]!`.
pub fn idp_closed(n: u32, parity: Parity) -> Result<Scaled> {
    let vm = LaurentPoly::v() - LaurentPoly::v_pow(-1);
    let nf = qfact(n);
    let mut out = SymRank1Elt::zero();
    for k in 0..=n / 2 {
        let den = &qfact(n - 2 * k) * &qdfact(2 * k);
        let ratio = nf
            .div_exact(&den)
            .ok_or_else(|| Error::Internal(format!("[{n}]! not divisible by [{}]![{}]!!", n - 2 * k, 2 * k)))?;
        let c = &(&LaurentPoly::v_pow(closed_exponent(n, k, parity)) * &vm.pow(k)) * &ratio;
        out.add_term(n - 2 * k, k as i64, &c);
    }
    Ok(Scaled { n, scaled: out })
}

/// Human form of the closed formula, e.g. `(v⁻¹/[2])[2S] + ((v−v⁻¹)/[2])[𝕂]`.
pub fn idp_closed_string(n: u32, parity: Parity) -> String {
    if n == 0 {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for k in 0..=n / 2 {
        let vp = v_power_str(closed_exponent(n, k, parity));
        let vm = match k {
            0 => String::new(),
            1 => "(v−v⁻¹)".to_string(),
            _ => format!("(v−v⁻¹){}", superscript(k as i64)),
        };
        let mut num = format!("{vp}{vm}");
        if num.is_empty() {
            num = "1".to_string();
        }
        let a = n - 2 * k;
        let mut den = String::new();
        if a >= 2 {
            den.push_str(&if a == 2 { "[2]".to_string() } else { format!("[{a}]!") });
        }
        if k >= 1 {
            den.push_str(&if k == 1 { "[2]".to_string() } else { format!("[{}]!!", 2 * k) });
        }
        let coeff = if den.is_empty() { num } else { format!("{num}/{den}") };
        let basis = basis_str(a, k as i64);
        if coeff == "1" {
            parts.push(basis);
        } else if basis == "1" {
            parts.push(format!("({coeff})"));
        } else {
            parts.push(format!("({coeff}){basis}"));
        }
    }
    parts.join(" + ")
}

/// `[n]! [S]^{(n)}` built from `1` and `[S]` with the four recursions.
pub fn idp_recursive(n: u32, parity: Parity) -> Scaled {
    let c = &LaurentPoly::v() * &(LaurentPoly::v() - LaurentPoly::v_pow(-1)).pow(2);
    let mut seq: Vec<SymRank1Elt> = vec![SymRank1Elt::one(), SymRank1Elt::s()];
    for m in 2..=n {
        let prev = sym_rank1_mul(&SymRank1Elt::s(), &seq[m as usize - 1]);
        // the correction appears when m - 1 has the parity's residue
        let corrected = match parity {
            Parity::Odd => m % 2 == 0,
            Parity::Ev => m % 2 == 1,
        };
        let next = if corrected {
            let j = qint(m as i64 - 1);
            prev.add(&seq[m as usize - 2].shift_k(1).scale(&(&c * &(&j * &j))))
        } else {
            prev
        };
        seq.push(next);
    }
    Scaled {
        n,
        scaled: seq.swap_remove(n as usize),
    }
}

/// `[n]! [S]^{(n)}` straight from the defining product
/// `[S]^{e} prod_j ([S]^2 + v^{-1}(v^2-1)^2 [c_j]^2 [K])`.
pub fn idp_definition(n: u32, parity: Parity) -> Scaled {
    let mut acc = if n % 2 == 1 { SymRank1Elt::s() } else { SymRank1Elt::one() };
    let s2 = sym_rank1_mul(&SymRank1Elt::s(), &SymRank1Elt::s());
    for j in 1..=(n / 2) as i64 {
        let cj = factor_index(n, j, parity);
        let w = &LaurentPoly::v() * &(LaurentPoly::v() - LaurentPoly::v_pow(-1)).pow(2);
        let f = s2.add(&SymRank1Elt::kk().scale(&(&w * &qint(cj).pow(2))));
        acc = sym_rank1_mul(&acc, &f);
    }
    Scaled { n, scaled: acc }
}

/// `c_j` in the `j`-th factor `[S]^2 + v^{-1}(v^2-1)^2 [c_j]^2 [K]`.
fn factor_index(n: u32, j: i64, parity: Parity) -> i64 {
    match (parity, n % 2) {
        (Parity::Odd, _) => 2 * j - 1,
        (Parity::Ev, 1) => 2 * j,
        (Parity::Ev, _) => 2 * j - 2,
    }
}

/// The idivided power of `[S_i]` computed enumeratively. At a fixed vertex
/// it is the defining polynomial in `[S_i]` and `[K_i]`; otherwise it is
/// `[S_i]^{*n} / [n]!` and `parity` has no effect.
pub fn idp_hall(ctx: &HallContext, i: usize, n: u32, parity: Parity) -> Result<HallElt> {
    let s = ctx.simple(i)?;
    let nf_inv = specialize_sqrtq(&qfact(n), ctx.q)
        .inv()
        .ok_or_else(|| Error::Internal("[n]! vanished".into()))?;
    if ctx.iq.tau(i) != i {
        return Ok(ctx.power(&s, n)?.scale(&nf_inv));
    }
    let mut acc = if n % 2 == 1 { s.clone() } else { ctx.one() };
    let s2 = ctx.product(&s, &s)?;
    let w = &LaurentPoly::v() * &(LaurentPoly::v() - LaurentPoly::v_pow(-1)).pow(2);
    for j in 1..=(n / 2) as i64 {
        let c = specialize_sqrtq(&(&w * &qint(factor_index(n, j, parity)).pow(2)), ctx.q);
        let f = &s2 + &ctx.torus_unit(i, 1).scale(&c);
        acc = ctx.product(&acc, &f)?;
    }
    Ok(acc.scale(&nf_inv))
}

/// Specialize `[n]! [S]^{(n)}` at `v = sqrt q` and divide by `[n]!`.
pub fn specialize_scaled(ctx: &HallContext, i: usize, s: &Scaled) -> Result<HallElt> {
    let inv = specialize_sqrtq(&s.denominator(), ctx.q)
        .inv()
        .ok_or_else(|| Error::Internal("[n]! vanished".into()))?;
    Ok(s.scaled.to_hall(ctx, i)?.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frep::Budget;
    use crate::iquiver::builtin;
    use crate::ring::rat;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    #[test]
    fn s_times_s() {
        let got = sym_rank1_mul(&SymRank1Elt::s(), &SymRank1Elt::s());
        let mut want = SymRank1Elt::term(2, 0, LaurentPoly::v_pow(-1));
        want.add_term(0, 1, &lp(&[(1, 1), (-1, -1)]));
        assert_eq!(got, want);
    }

    #[test]
    fn s_times_2s() {
        let got = sym_rank1_mul(&SymRank1Elt::s(), &SymRank1Elt::basis(2, 0));
        let mut want = SymRank1Elt::term(3, 0, LaurentPoly::v_pow(-2));
        want.add_term(1, 1, &lp(&[(2, 1), (-2, -1)]));
        assert_eq!(got, want);
        assert_eq!(sym_rank1_mul(&SymRank1Elt::s(), &SymRank1Elt::one()), SymRank1Elt::s());
    }

    #[test]
    fn semisimple_times_nothing() {
        for l in 0..6u32 {
            let x = SymRank1Elt::basis(l, 1);
            assert_eq!(sym_rank1_mul(&x, &SymRank1Elt::one()), x);
            let mut y = SymRank1Elt::one();
            for _ in 0..l {
                y = sym_rank1_mul(&y, &SymRank1Elt::s());
            }
            // leading term of [S]^{*l} is v^{-l(l-1)/2} [lS]
            assert_eq!(y.coeff(l, 0), LaurentPoly::v_pow(-binom2(l as i64)));
        }
    }

    #[test]
    fn closed_small_cases() {
        for p in [Parity::Ev, Parity::Odd] {
            assert_eq!(idp_closed(0, p).unwrap().scaled, SymRank1Elt::one());
            assert_eq!(idp_closed(1, p).unwrap().scaled, SymRank1Elt::s());
        }
        // n = 2, ev: [2] * ((v^-1/[2])[2S] + ((v - v^-1)/[2])[K])
        let c = idp_closed(2, Parity::Ev).unwrap().scaled;
        assert_eq!(c.coeff(2, 0), LaurentPoly::v_pow(-1));
        assert_eq!(c.coeff(0, 1), lp(&[(1, 1), (-1, -1)]));
    }

    #[test]
    fn closed_strings() {
        assert_eq!(idp_closed_string(3, Parity::Ev), "(v⁻³/[3]!)[3S] + (v²(v−v⁻¹)/[2])[S]*[𝕂]");
        assert_eq!(idp_closed_string(2, Parity::Ev), "(v⁻¹/[2])[2S] + ((v−v⁻¹)/[2])[𝕂]");
        assert_eq!(idp_closed_string(1, Parity::Odd), "[S]");
    }

    #[test]
    fn closed_equals_recursive_and_definition() {
        for n in 0..=8 {
            for p in [Parity::Ev, Parity::Odd] {
                let c = idp_closed(n, p).unwrap();
                assert_eq!(c, idp_recursive(n, p), "n={n} {p}");
                assert_eq!(c, idp_definition(n, p), "n={n} {p}");
                assert!(c.scaled.terms().all(|(_, x)| x.is_integral()));
            }
        }
    }

    #[test]
    fn enumerative_rank1_agrees() {
        for q in [2u64, 3] {
            let ctx = HallContext::new(builtin("rank1-split").unwrap(), q, Budget::default()).unwrap();
            for n in 0..=4 {
                for p in [Parity::Ev, Parity::Odd] {
                    let want = specialize_scaled(&ctx, 0, &idp_closed(n, p).unwrap()).unwrap();
                    assert_eq!(idp_hall(&ctx, 0, n, p).unwrap(), want, "q={q} n={n} {p}");
                }
            }
        }
    }

    #[test]
    fn mul_matches_enumeration() {
        let ctx = HallContext::new(builtin("rank1-split").unwrap(), 3, Budget::default()).unwrap();
        for a in 0..=2u32 {
            for b in 0..=2u32 {
                if a + b > 4 {
                    continue;
                }
                let x = SymRank1Elt::basis(a, 1);
                let y = SymRank1Elt::basis(b, 0);
                let sym = sym_rank1_mul(&x, &y).to_hall(&ctx, 0).unwrap();
                let en = ctx.product(&x.to_hall(&ctx, 0).unwrap(), &y.to_hall(&ctx, 0).unwrap()).unwrap();
                assert_eq!(sym, en, "{a} {b}");
            }
        }
    }

    fn elt() -> impl Strategy<Value = SymRank1Elt> {
        prop::collection::vec((0u32..3, -1i64..2, -2i64..3, -2i64..3), 1..3).prop_map(|ts| {
            let mut e = SymRank1Elt::zero();
            for (n, k, ex, c) in ts {
                e.add_term(n, k, &LaurentPoly::monomial(ex, rat(c)));
            }
            e
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn mul_associative(a in elt(), b in elt(), c in elt()) {
            let l = sym_rank1_mul(&sym_rank1_mul(&a, &b), &c);
            let r = sym_rank1_mul(&a, &sym_rank1_mul(&b, &c));
            prop_assert_eq!(l, r);
        }

        #[test]
        fn mul_unit(a in elt()) {
            prop_assert_eq!(sym_rank1_mul(&SymRank1Elt::one(), &a), a.clone());
            prop_assert_eq!(sym_rank1_mul(&a, &SymRank1Elt::one()), a);
        }
    }
}
