//! The twisted semi-derived iHall algebra of an iquiver over `F_q`,
//! computed in the basis `[X] * K_alpha`.

mod elt;
pub mod oracle;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

pub use elt::{HallBasisKey, HallElt};

use crate::error::{Error, Result};
use crate::frep::{fp, homology, hom, Budget, ClassId, ModuleTable, Rep};
use crate::iquiver::{bar_quiver, BoundQuiver, IQuiver};
use crate::ring::{QSqrt, Rational};

/// Counts of the consistency checks run while multiplying.
#[derive(Debug, Default, Clone)]
pub struct CheckLog {
    /// Middle terms checked against the Riedtmann-Peng formula.
    pub rp_checked: u64,
    /// Pairs `(X, Y)` whose middle-term Ext counts summed to `|Ext^1(X,Y)|`.
    pub ext_sums_checked: u64,
    /// Reductions whose output was verified to be a `kQ`-module key.
    pub reductions: u64,
    pub failures: Vec<String>,
}

type ProductTerms = Arc<Vec<(HallBasisKey, QSqrt)>>;

pub struct HallContext {
    pub iq: IQuiver,
    pub q: u64,
    /// Modules of `Lambda^i`.
    pub li: ModuleTable,
    /// Modules of `kQ`.
    pub kq: ModuleTable,
    rp_check: bool,
    cache: Mutex<HashMap<(ClassId, ClassId), ProductTerms>>,
    log: Mutex<CheckLog>,
}

impl HallContext {
    pub fn new(iq: IQuiver, q: u64, budget: Budget) -> Result<HallContext> {
        let p = u32::try_from(q).map_err(|_| Error::Domain(format!("field size {q} too large")))?;
        let li = ModuleTable::new(bar_quiver(&iq), p, budget)?;
        let kq = ModuleTable::new(BoundQuiver::path_algebra(&iq), p, budget)?;
        Ok(HallContext {
            iq,
            q,
            li,
            kq,
            rp_check: false,
            cache: Mutex::new(HashMap::new()),
            log: Mutex::new(CheckLog::default()),
        })
    }

    /// Cross-check every computed middle term with Hall numbers counted by
    /// subrepresentations (slow; meant for verification runs).
    pub fn with_rp_check(mut self, on: bool) -> Self {
        self.rp_check = on;
        self
    }

    pub fn n(&self) -> usize {
        self.iq.n()
    }

    pub fn p(&self) -> u32 {
        self.q as u32
    }

    pub fn log(&self) -> CheckLog {
        self.log.lock().unwrap().clone()
    }

    fn fail(&self, msg: String) -> Error {
        self.log.lock().unwrap().failures.push(msg.clone());
        Error::Internal(msg)
    }

    pub fn v_pow(&self, e: i64) -> QSqrt {
        QSqrt::v_pow(self.q, e)
    }

    pub fn zero(&self) -> HallElt {
        HallElt::zero(self.q)
    }

    fn zero_class(&self) -> ClassId {
        ClassId {
            dim: vec![0; self.n()],
            index: 0,
        }
    }

    pub fn one(&self) -> HallElt {
        self.torus(&vec![0; self.n()])
    }

    pub fn torus(&self, alpha: &[i64]) -> HallElt {
        HallElt::basis(
            self.q,
            HallBasisKey {
                x: self.zero_class(),
                alpha: alpha.to_vec(),
            },
        )
    }

    pub fn torus_unit(&self, i: usize, power: i64) -> HallElt {
        let mut a = vec![0; self.n()];
        a[i] = power;
        self.torus(&a)
    }

    pub fn class(&self, x: ClassId) -> HallElt {
        HallElt::basis(
            self.q,
            HallBasisKey {
                alpha: vec![0; self.n()],
                x,
            },
        )
    }

    /// `[m S_i]`, the semisimple module with `m` copies of `S_i`.
    pub fn semisimple(&self, i: usize, m: u32) -> Result<HallElt> {
        let mut dim = vec![0; self.n()];
        dim[i] = m;
        let t = self.kq.table(&dim)?;
        let c = t
            .classes
            .iter()
            .find(|c| c.canon.iter().all(|&x| x == 0))
            .ok_or_else(|| Error::Internal("semisimple class missing".into()))?;
        Ok(self.class(c.id.clone()))
    }

    pub fn simple(&self, i: usize) -> Result<HallElt> {
        self.semisimple(i, 1)
    }

    /// Exponent `g` with `K_alpha * [Y] = v^g [Y] * K_alpha`.
    pub fn commute_torus(&self, alpha: &[i64], yhat: &[i64]) -> i64 {
        (0..self.n())
            .map(|i| {
                let ti = self.iq.unit(self.iq.tau(i));
                let ei = self.iq.unit(i);
                alpha[i] * (self.iq.sym_form(&ti, yhat) - self.iq.sym_form(&ei, yhat))
            })
            .sum()
    }

    /// Reduce a `Lambda^i`-module to `v^e [X] * K_alpha`, asserting that the
    /// result is a `kQ`-module key of the right dimension.
    pub fn reduce(&self, m: &Rep) -> Result<(i64, HallBasisKey)> {
        let red = homology::homology_reduce(&self.iq, &self.li.bq, m, self.p())?;
        let n = self.n();
        let ta = self.iq.tau_vec(&red.alpha);
        for i in 0..n {
            if red.x.dim[i] as i64 + red.alpha[i] + ta[i] != m.dim[i] as i64 {
                return Err(self.fail(format!("reduction of a module at {:?} changed its class in K_0", m.dim)));
            }
        }
        if red.x.mats.len() != self.iq.arrows().len() {
            return Err(self.fail("reduced module carries eps data".into()));
        }
        let x = self.kq.class_of(&red.x)?;
        let ext = red.x.extend_by_zero(&self.li.bq);
        if !ext.satisfies_relations(&self.li.bq, self.p()) {
            return Err(self.fail(format!("reduced key {x:?} is not a kQ-module")));
        }
        self.log.lock().unwrap().reductions += 1;
        Ok((red.vexp, HallBasisKey { x, alpha: red.alpha }))
    }

    /// `[X] * [Y]` for `kQ`-module classes.
    fn class_product(&self, x: &ClassId, y: &ClassId) -> Result<ProductTerms> {
        let key = (x.clone(), y.clone());
        if let Some(t) = self.cache.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let xr = self.kq.rep_of(x)?.extend_by_zero(&self.li.bq);
        let yr = self.kq.rep_of(y)?.extend_by_zero(&self.li.bq);
        let (counts, zdim) = self.li.cocycle_middles(&xr, &yr)?;
        let full: u32 = xr.dim.iter().zip(&yr.dim).map(|(a, b)| a * b).sum();
        if self.rp_check {
            self.check_counts(&xr, &yr, &counts, zdim, full)?;
        }
        let xh: Vec<i64> = x.dim.iter().map(|&d| d as i64).collect();
        let yh: Vec<i64> = y.dim.iter().map(|&d| d as i64).collect();
        let twist = self.iq.euler_q(&xh, &yh);
        let qfull = Rational::from_integer(fp::pow_u128(self.p(), full).into());
        let mut acc = HallElt::zero(self.q);
        for (l, c) in &counts {
            let (e, k) = self.reduce(&self.li.rep_of(l)?)?;
            let coeff = self.v_pow(twist + e).scale(&(Rational::from_integer((*c).into()) / &qfull));
            acc.add_term(k, &coeff);
        }
        let terms: ProductTerms = Arc::new(acc.terms().map(|(k, c)| (k.clone(), c.clone())).collect());
        self.cache.lock().unwrap().insert(key, terms.clone());
        Ok(terms)
    }

    /// Riedtmann-Peng: `|Z_L| |Aut L| = F^L_{XY} |Aut X| |Aut Y| q^{sum x_i y_i}`
    /// for every middle term, and the Ext classes over all middle terms add
    /// up to `|Ext^1(X, Y)|`.
    fn check_counts(
        &self,
        xr: &Rep,
        yr: &Rep,
        counts: &std::collections::BTreeMap<ClassId, u128>,
        zdim: u32,
        full: u32,
    ) -> Result<()> {
        let p = self.p();
        let xid = self.li.class_of(xr)?;
        let yid = self.li.class_of(yr)?;
        let ax = self.li.aut_order(&xid)?;
        let ay = self.li.aut_order(&yid)?;
        let homd = hom::hom_dim(&self.li.bq, xr, yr, p);
        let qfull = fp::pow_u128(p, full);
        // sum_L F^L |Aut X||Aut Y||Hom| / |Aut L| = |Ext^1|
        let mut ext_sum = Rational::from_integer(0.into());
        for (l, &c) in counts {
            let f = self.li.hall_number(l, &xid, &yid)?;
            let al = self.li.aut_order(l)?;
            if c * al != f * ax * ay * qfull {
                return Err(self.fail(format!(
                    "Riedtmann-Peng mismatch for {xid:?} x {yid:?} -> {l:?}: |Z_L|={c}, F={f}"
                )));
            }
            ext_sum += Rational::new(
                (f * ax * ay * fp::pow_u128(p, homd)).into(),
                al.into(),
            );
        }
        let ext_total = fp::pow_u128(p, zdim + homd - full);
        if ext_sum != Rational::from_integer(ext_total.into()) {
            return Err(self.fail(format!(
                "middle terms of Ext^1({xid:?}, {yid:?}) add up to {ext_sum}, expected {ext_total}"
            )));
        }
        let mut log = self.log.lock().unwrap();
        log.rp_checked += counts.len() as u64;
        log.ext_sums_checked += 1;
        Ok(())
    }

    /// `([X], alpha) * ([Y], beta) = v^{g(alpha, Y)} ([X] * [Y]) * K_{alpha+beta}`.
    pub fn key_product(&self, a: &HallBasisKey, b: &HallBasisKey) -> Result<HallElt> {
        let yh: Vec<i64> = b.x.dim.iter().map(|&d| d as i64).collect();
        let g = self.commute_torus(&a.alpha, &yh);
        let shift: Vec<i64> = a.alpha.iter().zip(&b.alpha).map(|(x, y)| x + y).collect();
        let mut out = HallElt::zero(self.q);
        let vg = self.v_pow(g);
        if a.is_torus() || b.is_torus() {
            let x = if a.is_torus() { &b.x } else { &a.x };
            out.add_term(
                HallBasisKey {
                    x: x.clone(),
                    alpha: shift,
                },
                &vg,
            );
            return Ok(out);
        }
        for (k, c) in self.class_product(&a.x, &b.x)?.iter() {
            let alpha = k.alpha.iter().zip(&shift).map(|(x, y)| x + y).collect();
            out.add_term(HallBasisKey { x: k.x.clone(), alpha }, &(c * &vg));
        }
        Ok(out)
    }

    pub fn product(&self, e1: &HallElt, e2: &HallElt) -> Result<HallElt> {
        if e1.q() != self.q || e2.q() != self.q {
            return Err(Error::Context(format!(
                "product of elements over q={} and q={} in a context over q={}",
                e1.q(),
                e2.q(),
                self.q
            )));
        }
        let pairs: Vec<(&HallBasisKey, &QSqrt, &HallBasisKey, &QSqrt)> = e1
            .terms()
            .flat_map(|(a, ca)| e2.terms().map(move |(b, cb)| (a, ca, b, cb)))
            .collect();
        let parts: Vec<HallElt> = pairs
            .par_iter()
            .map(|(a, ca, b, cb)| Ok(self.key_product(a, b)?.scale(&(*ca * *cb))))
            .collect::<Result<_>>()?;
        let mut out = HallElt::zero(self.q);
        for p in &parts {
            out = &out + p;
        }
        Ok(out)
    }

    pub fn product_all(&self, es: &[&HallElt]) -> Result<HallElt> {
        let mut acc = self.one();
        for e in es {
            acc = self.product(&acc, e)?;
        }
        Ok(acc)
    }

    pub fn power(&self, e: &HallElt, n: u32) -> Result<HallElt> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.product(&acc, e)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iquiver::builtin;
    use crate::ring::{rat, QSqrt};

    fn ctx(name: &str, q: u64) -> HallContext {
        HallContext::new(builtin(name).unwrap(), q, Budget::default())
            .unwrap()
            .with_rp_check(true)
    }

    #[test]
    fn rank1_s_times_s() {
        for q in [2u64, 3] {
            let c = ctx("rank1-split", q);
            let s = c.simple(0).unwrap();
            let got = c.product(&s, &s).unwrap();
            let v = QSqrt::v(q);
            let vi = c.v_pow(-1);
            let want = &c.semisimple(0, 2).unwrap().scale(&vi) + &c.torus_unit(0, 1).scale(&(&v - &vi));
            assert_eq!(got, want);
            assert!(c.log().rp_checked > 0);
        }
    }

    #[test]
    fn torus_law() {
        let c = ctx("kronecker-r1", 2);
        let a = c.torus(&[1, -2]);
        let b = c.torus(&[3, 1]);
        assert_eq!(c.product(&a, &b).unwrap(), c.torus(&[4, -1]));
    }

    #[test]
    fn a2_s1_s2() {
        for q in [2u64, 3] {
            let c = ctx("a2-split", q);
            let got = c.product(&c.simple(0).unwrap(), &c.simple(1).unwrap()).unwrap();
            let vi = c.v_pow(-1);
            let t = c.kq.table(&[1, 1]).unwrap();
            // class 0 is the zero map (S1 + S2), class 1 is P1
            let ss = c.class(t.classes[0].id.clone()).scale(&vi);
            let p1 = c.class(t.classes[1].id.clone()).scale(&vi.scale(&rat(q as i64 - 1)));
            assert_eq!(got, &ss + &p1);
        }
    }

    #[test]
    fn commute_torus_examples() {
        let c = ctx("rank1-split", 2);
        assert_eq!(c.commute_torus(&[1], &[1]), 0);
        let c = ctx("a3-quasisplit", 2);
        assert_eq!(c.commute_torus(&[1, 0, 0], &[0, 1, 0]), 0);
        let c = ctx("kronecker-r1", 2);
        assert_eq!(c.commute_torus(&[1, 0], &[1, 0]), -4);
    }

    #[test]
    fn torus_commutation_both_ways() {
        for name in ["a3-quasisplit", "kronecker-r1"] {
            let c = ctx(name, 2);
            for i in 0..c.n() {
                for j in 0..c.n() {
                    let s = c.simple(j).unwrap();
                    let k = c.torus_unit(i, 1);
                    let ks = c.product(&k, &s).unwrap();
                    let sk = c.product(&s, &k).unwrap();
                    let mut yh = vec![0; c.n()];
                    yh[j] = 1;
                    let g = c.commute_torus(&c.iq.unit(i), &yh);
                    assert_eq!(ks, sk.scale(&c.v_pow(g)));
                }
            }
        }
    }

    #[test]
    fn associativity_small() {
        for (name, q) in [("a2-split", 2u64), ("kronecker-r1", 2), ("a3-quasisplit", 2)] {
            let c = ctx(name, q);
            let gens: Vec<HallElt> = (0..c.n())
                .map(|i| c.simple(i).unwrap())
                .chain((0..c.n()).map(|i| c.torus_unit(i, 1)))
                .collect();
            for a in &gens {
                for b in &gens {
                    for d in &gens {
                        let l = c.product(&c.product(a, b).unwrap(), d).unwrap();
                        let r = c.product(a, &c.product(b, d).unwrap()).unwrap();
                        assert_eq!(l, r, "{name}: {a} {b} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn kronecker_torus_associativity() {
        let c = ctx("kronecker-r1", 3);
        let s = c.simple(0).unwrap();
        let k = c.torus_unit(0, 1);
        let lhs = c.product(&c.product(&s, &s).unwrap(), &k).unwrap();
        let rhs = c.product(&s, &c.product(&s, &k).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
