//! The universal iquantum group side: expressions in `B_i` and `k_i`, the
//! map `psi` into the iHall algebra, the Serre-presentation relation suite
//! and the combinatorial identity checkers.

pub mod identities;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use identities::{identity_suite, t_summands, t_value, IdentityArgs, IdentityReport, Suite, TVariant};

use crate::error::{Error, Result};
use crate::idp::{idp_hall, Parity};
use crate::ihall::{HallContext, HallElt};
use crate::iquiver::IQuiver;
use crate::ring::{pochhammer, LaurentPoly, QSqrt, RatFunc};

/// Expression in the generators of the universal iquantum group.
#[derive(Clone, Debug, PartialEq)]
pub enum IExpr {
    B(usize),
    /// `k_i^power`.
    K(usize, i64),
    Scalar(RatFunc),
    Sum(Vec<IExpr>),
    Prod(Vec<IExpr>),
    /// `B_{i,parity}^{(n)}`; an ordinary divided power when `tau i != i`.
    Idp { i: usize, n: u32, parity: Parity },
}

impl IExpr {
    pub fn scalar(p: LaurentPoly) -> IExpr {
        IExpr::Scalar(RatFunc::from_poly(p))
    }

    pub fn prod(xs: Vec<IExpr>) -> IExpr {
        IExpr::Prod(xs)
    }

    pub fn sum(xs: Vec<IExpr>) -> IExpr {
        IExpr::Sum(xs)
    }

    pub fn neg(self) -> IExpr {
        IExpr::Prod(vec![IExpr::scalar(-LaurentPoly::one()), self])
    }

    pub fn sub(self, o: IExpr) -> IExpr {
        IExpr::Sum(vec![self, o.neg()])
    }

    pub fn scaled(self, c: RatFunc) -> IExpr {
        IExpr::Prod(vec![IExpr::Scalar(c), self])
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: Option<&[String]>) -> fmt::Result {
        let name = |i: usize| names.map(|n| n[i].clone()).unwrap_or_else(|| (i + 1).to_string());
        match self {
            IExpr::B(i) => write!(f, "B{}", name(*i)),
            IExpr::K(i, 1) => write!(f, "k{}", name(*i)),
            IExpr::K(i, p) => write!(f, "k{}^{}", name(*i), p),
            IExpr::Scalar(c) => write!(f, "({c})"),
            IExpr::Idp { i, n, parity } => write!(f, "B{}^({n},{parity})", name(*i)),
            IExpr::Sum(xs) | IExpr::Prod(xs) => {
                if xs.is_empty() {
                    return write!(f, "{}", if matches!(self, IExpr::Sum(_)) { "0" } else { "1" });
                }
                let sep = if matches!(self, IExpr::Sum(_)) { " + " } else { " " };
                write!(f, "(")?;
                for (n, x) in xs.iter().enumerate() {
                    if n > 0 {
                        write!(f, "{sep}")?;
                    }
                    x.fmt_with(f, names)?;
                }
                write!(f, ")")
            }
        }
    }

    /// Render with the vertex ids of `iq`.
    pub fn render(&self, iq: &IQuiver) -> String {
        struct R<'a>(&'a IExpr, &'a [String]);
        impl fmt::Display for R<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, Some(self.1))
            }
        }
        R(self, iq.vertices()).to_string()
    }
}

impl fmt::Display for IExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, None)
    }
}

/// Evaluator for `psi` with a memo of idivided powers.
pub struct Psi<'a> {
    ctx: &'a HallContext,
    idp: Mutex<HashMap<(usize, u32, Parity), HallElt>>,
}

impl<'a> Psi<'a> {
    pub fn new(ctx: &'a HallContext) -> Self {
        Psi { ctx, idp: Mutex::new(HashMap::new()) }
    }

    /// Coefficient `c` with `psi(B_j) = c [S_j]`.
    pub fn b_coeff(&self, j: usize) -> QSqrt {
        let q = self.ctx.q;
        let qm1 = QSqrt::from_int(q, q as i64 - 1);
        let c = if self.ctx.iq.in_orbit_reps(j) {
            QSqrt::from_int(q, -1)
        } else {
            QSqrt::v(q)
        };
        &c / &qm1
    }

    /// Coefficient `c` with `psi(k_i) = c [K_i]`.
    pub fn k_coeff(&self, i: usize) -> Result<QSqrt> {
        let q = self.ctx.q;
        let ti = self.ctx.iq.tau(i);
        if ti == i {
            return Ok(-&QSqrt::v_pow(q, -2));
        }
        let c = self.ctx.iq.cartan(i, ti);
        if c % 2 != 0 {
            return Err(Error::Internal(format!("c(i, tau i) = {c} is odd")));
        }
        Ok(QSqrt::v_pow(q, -c / 2))
    }

    fn idp(&self, i: usize, n: u32, parity: Parity) -> Result<HallElt> {
        let fixed = self.ctx.iq.tau(i) == i;
        let key = (i, n, if fixed { parity } else { Parity::Ev });
        if let Some(x) = self.idp.lock().unwrap().get(&key) {
            return Ok(x.clone());
        }
        let h = idp_hall(self.ctx, i, n, key.2)?;
        let c = if fixed {
            // 1/(1 - v^2) = -1/(q - 1)
            let one_minus = QSqrt::from_int(self.ctx.q, 1 - self.ctx.q as i64);
            one_minus.inv().expect("q != 1").pow(n as i64)
        } else {
            self.b_coeff(i).pow(n as i64)
        };
        let out = h.scale(&c);
        self.idp.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    pub fn eval(&self, e: &IExpr) -> Result<HallElt> {
        let ctx = self.ctx;
        match e {
            IExpr::B(j) => Ok(ctx.simple(*j)?.scale(&self.b_coeff(*j))),
            IExpr::K(i, p) => Ok(ctx.torus_unit(*i, *p).scale(&self.k_coeff(*i)?.pow(*p))),
            IExpr::Scalar(c) => Ok(ctx.one().scale(&c.specialize(ctx.q))),
            IExpr::Idp { i, n, parity } => self.idp(*i, *n, *parity),
            IExpr::Sum(xs) => {
                let mut acc = ctx.zero();
                for x in xs {
                    acc = &acc + &self.eval(x)?;
                }
                Ok(acc)
            }
            IExpr::Prod(xs) => {
                let mut acc = ctx.one();
                for x in xs {
                    if let IExpr::Scalar(c) = x {
                        acc = acc.scale(&c.specialize(ctx.q));
                    } else {
                        acc = ctx.product(&acc, &self.eval(x)?)?;
                    }
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
        }
    }
}

/// `psi(e)` in the iHall algebra of `ctx`.
pub fn psi_eval(e: &IExpr, ctx: &HallContext) -> Result<HallElt> {
    Psi::new(ctx).eval(e)
}

/// One relation of the Serre presentation, as `LHS - RHS`.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub label: &'static str,
    /// Vertex indices `(i, l)` or `(i, j)`; a single index for relation 5.
    pub indices: Vec<usize>,
    /// Parity of the fixed vertex, for relation 6.
    pub parity: Option<Parity>,
    pub expr: IExpr,
}

pub const RELATION_LABELS: [&str; 6] =
    ["relation1", "relation1-torus", "relation2", "relation3", "relation5", "relation6"];

fn divided(iq: &IQuiver, i: usize, n: u32, parity: Parity) -> IExpr {
    let parity = if iq.tau(i) == i { parity } else { Parity::Ev };
    IExpr::Idp { i, n, parity }
}

/// `sum_n (-1)^n B_{i,p}^{(n)} B_j B_{i,p'}^{(1-c-n)}`.
fn serre_sum(iq: &IQuiver, i: usize, j: usize, c: i64, p: Parity, p2: Parity) -> IExpr {
    let top = (1 - c) as u32;
    IExpr::Sum(
        (0..=top)
            .map(|n| {
                let t = IExpr::prod(vec![divided(iq, i, n, p), IExpr::B(j), divided(iq, i, top - n, p2)]);
                if n % 2 == 1 {
                    t.neg()
                } else {
                    t
                }
            })
            .collect(),
    )
}

/// Every applicable instance of relations (1)-(6) for the given parities
/// (one per vertex; only fixed vertices read theirs).
pub fn build_relation_suite(iq: &IQuiver, parities: &[Parity]) -> Vec<RelationInstance> {
    let n = iq.n();
    assert_eq!(parities.len(), n, "one parity per vertex");
    let mut out = Vec::new();
    let c = |i: usize, j: usize| iq.cartan(i, j);
    for i in 0..n {
        for l in 0..n {
            let e = c(iq.tau(i), l) - c(i, l);
            let lhs = IExpr::prod(vec![IExpr::K(i, 1), IExpr::B(l)]);
            let rhs = IExpr::prod(vec![IExpr::scalar(LaurentPoly::v_pow(e)), IExpr::B(l), IExpr::K(i, 1)]);
            out.push(RelationInstance { label: "relation1", indices: vec![i, l], parity: None, expr: lhs.sub(rhs) });
        }
    }
    for i in 0..n {
        for l in i + 1..n {
            let lhs = IExpr::prod(vec![IExpr::K(i, 1), IExpr::K(l, 1)]);
            let rhs = IExpr::prod(vec![IExpr::K(l, 1), IExpr::K(i, 1)]);
            out.push(RelationInstance {
                label: "relation1-torus",
                indices: vec![i, l],
                parity: None,
                expr: lhs.sub(rhs),
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && c(i, j) == 0 && iq.tau(i) != j {
                let e = IExpr::prod(vec![IExpr::B(i), IExpr::B(j)]).sub(IExpr::prod(vec![IExpr::B(j), IExpr::B(i)]));
                out.push(RelationInstance { label: "relation2", indices: vec![i, j], parity: None, expr: e });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && j != iq.tau(i) && iq.tau(i) != i {
                let e = serre_sum(iq, i, j, c(i, j), Parity::Ev, Parity::Ev);
                out.push(RelationInstance { label: "relation3", indices: vec![i, j], parity: None, expr: e });
            }
        }
    }
    for i in 0..n {
        let ti = iq.tau(i);
        if ti == i {
            continue;
        }
        let ct = c(i, ti);
        let m = (-ct) as u32;
        let lhs = serre_sum(iq, i, ti, ct, Parity::Ev, Parity::Ev);
        let d = IExpr::Idp { i, n: m, parity: Parity::Ev };
        let a = &LaurentPoly::v_pow(ct) * &pochhammer(-2, -2, m);
        let b = pochhammer(2, 2, m);
        let inner = IExpr::Sum(vec![
            IExpr::prod(vec![IExpr::scalar(a), d.clone(), IExpr::K(i, 1)]),
            IExpr::prod(vec![IExpr::scalar(-b), d, IExpr::K(ti, 1)]),
        ]);
        let inv = RatFunc::new(LaurentPoly::one(), LaurentPoly::v() - LaurentPoly::v_pow(-1));
        out.push(RelationInstance {
            label: "relation5",
            indices: vec![i],
            parity: None,
            expr: lhs.sub(inner.scaled(inv)),
        });
    }
    for i in 0..n {
        if iq.tau(i) != i {
            continue;
        }
        for j in 0..n {
            if j == i {
                continue;
            }
            let cij = c(i, j);
            let p = parities[i];
            let e = serre_sum(iq, i, j, cij, p, p.shift(cij));
            out.push(RelationInstance { label: "relation6", indices: vec![i, j], parity: Some(p), expr: e });
        }
    }
    out
}

/// Outcome of evaluating one relation instance.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub label: String,
    pub instance: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,
    pub q: u64,
    pub status: String,
    /// Nonzero terms of `psi(LHS - RHS)`; empty on pass.
    pub residual: serde_json::Value,
    pub error: Option<String>,
    /// The error was an enumeration budget overrun.
    #[serde(skip)]
    pub budget_exceeded: bool,
    pub wall_ms: f64,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

fn evaluate(psi: &Psi, inst: &RelationInstance) -> RelationReport {
    let ctx = psi.ctx;
    let start = Instant::now();
    let got = psi.eval(&inst.expr);
    let budget_exceeded = matches!(got, Err(Error::Budget { .. }));
    let (status, residual, error) = match got {
        Ok(r) if r.is_zero() => ("pass", serde_json::json!([]), None),
        Ok(r) => ("fail", r.to_json(), None),
        Err(e) => ("error", serde_json::json!([]), Some(e.to_string())),
    };
    RelationReport {
        label: inst.label.to_string(),
        instance: inst.indices.iter().map(|&i| ctx.iq.vertices()[i].clone()).collect(),
        parity: inst.parity.map(|p| p.to_string()),
        q: ctx.q,
        status: status.to_string(),
        residual,
        error,
        budget_exceeded,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Evaluate the relation suite under each parity assignment, restricted to
/// `labels` when given. Instances that do not read parities are run once.
/// Reports are sorted by label, instance and parity.
pub fn run_suite(ctx: &HallContext, parity_sets: &[Vec<Parity>], labels: Option<&[String]>) -> Vec<RelationReport> {
    let mut jobs: Vec<RelationInstance> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for ps in parity_sets {
        for inst in build_relation_suite(&ctx.iq, ps) {
            if let Some(ls) = labels {
                if !ls.iter().any(|l| l == inst.label) {
                    continue;
                }
            }
            if seen.insert((inst.label, inst.indices.clone(), inst.parity)) {
                jobs.push(inst);
            }
        }
    }
    let psi = Psi::new(ctx);
    let mut out: Vec<RelationReport> = jobs.par_iter().map(|inst| evaluate(&psi, inst)).collect();
    out.sort_by(|a, b| (&a.label, &a.instance, &a.parity).cmp(&(&b.label, &b.instance, &b.parity)));
    out
}

/// Check every instance of one relation label.
pub fn check_relation(label: &str, ctx: &HallContext, parities: &[Parity]) -> Result<Vec<RelationReport>> {
    if !RELATION_LABELS.contains(&label) {
        return Err(Error::Domain(format!("unknown relation '{label}'")));
    }
    Ok(run_suite(ctx, &[parities.to_vec()], Some(&[label.to_string()])))
}

/// The uniform parity assignments, all even and all odd.
pub fn both_parities(n: usize) -> Vec<Vec<Parity>> {
    vec![vec![Parity::Ev; n], vec![Parity::Odd; n]]
}
