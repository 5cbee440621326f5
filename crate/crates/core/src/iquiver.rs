//! iquivers `(Q, tau)`, the bound quiver presenting the iquiver algebra,
//! Euler forms and Cartan data.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimension vector of a module, indexed by vertex position.
pub type DimVector = Vec<u32>;
/// Integral torus exponent, indexed by vertex position.
pub type TorusVec = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// Input record for [`build_iquiver`]. Vertex ids are strings; arrows name
/// their endpoints by id.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct IQuiverSpec {
    pub vertices: Vec<String>,
    /// `(source, target, label)`; a missing label becomes `a<index>`.
    pub arrows: Vec<(String, String, Option<String>)>,
    /// Vertex involution; `None` means the identity.
    pub tau: Option<BTreeMap<String, String>>,
    /// Explicit arrow pairing by label.
    pub tau_arrows: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerData {
    /// `euler_q[i][j] = delta_ij - #{arrows i -> j}`.
    pub euler_q: Vec<Vec<i64>>,
    /// `c_ij = 2 delta_ij - n_ij`.
    pub cartan: Vec<Vec<i64>>,
    pub sym: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    tau: Vec<usize>,
    tau_arrow: Vec<usize>,
    euler: EulerData,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerKind {
    /// `<x, y>_Q` on module classes.
    Q,
    /// `<K_x, y>` with `x` a torus class.
    LambdaKS,
    /// `<x, K_y>` with `y` a torus class.
    LambdaSK,
}

pub fn build_iquiver(spec: &IQuiverSpec) -> Result<IQuiver> {
    let n = spec.vertices.len();
    if n == 0 {
        return Err(Error::Quiver("no vertices".into()));
    }
    let mut index = BTreeMap::new();
    for (k, v) in spec.vertices.iter().enumerate() {
        if index.insert(v.clone(), k).is_some() {
            return Err(Error::Quiver(format!("duplicate vertex '{v}'")));
        }
    }
    let lookup = |v: &str, what: &str| {
        index
            .get(v)
            .copied()
            .ok_or_else(|| Error::Quiver(format!("{what} refers to unknown vertex '{v}'")))
    };

    let mut arrows = Vec::with_capacity(spec.arrows.len());
    for (k, (s, t, label)) in spec.arrows.iter().enumerate() {
        let source = lookup(s, &format!("arrow {k}"))?;
        let target = lookup(t, &format!("arrow {k}"))?;
        if source == target {
            return Err(Error::Quiver(format!("arrow {k} is a loop at '{s}'")));
        }
        let label = label.clone().unwrap_or_else(|| format!("a{k}"));
        if arrows.iter().any(|a: &Arrow| a.label == label) {
            return Err(Error::Quiver(format!("duplicate arrow label '{label}'")));
        }
        arrows.push(Arrow { source, target, label });
    }

    let mut tau: Vec<usize> = (0..n).collect();
    if let Some(map) = &spec.tau {
        for (a, b) in map {
            tau[lookup(a, "tau")?] = lookup(b, "tau")?;
        }
    }
    for i in 0..n {
        if tau[tau[i]] != i {
            return Err(Error::Quiver(format!(
                "tau is not an involution at '{}'",
                spec.vertices[i]
            )));
        }
    }

    let tau_arrow = match &spec.tau_arrows {
        Some(pairs) => explicit_arrow_pairing(&arrows, &tau, pairs)?,
        None => infer_arrow_pairing(&arrows, &tau, &spec.vertices)?,
    };

    let euler = euler_data(n, &arrows);
    for i in 0..n {
        for j in 0..n {
            if euler.cartan[i][j] != euler.cartan[tau[i]][tau[j]] {
                return Err(Error::Quiver(format!(
                    "Cartan matrix not tau-invariant at ({}, {})",
                    spec.vertices[i], spec.vertices[j]
                )));
            }
        }
    }

    Ok(IQuiver {
        vertices: spec.vertices.clone(),
        arrows,
        tau,
        tau_arrow,
        euler,
    })
}

fn explicit_arrow_pairing(arrows: &[Arrow], tau: &[usize], pairs: &[(String, String)]) -> Result<Vec<usize>> {
    let pos = |l: &str| {
        arrows
            .iter()
            .position(|a| a.label == l)
            .ok_or_else(|| Error::Quiver(format!("tau_arrows names unknown arrow '{l}'")))
    };
    let mut map = vec![usize::MAX; arrows.len()];
    for (a, b) in pairs {
        let (x, y) = (pos(a)?, pos(b)?);
        for (u, w) in [(x, y), (y, x)] {
            if map[u] != usize::MAX && map[u] != w {
                return Err(Error::Quiver(format!("arrow '{}' paired twice", arrows[u].label)));
            }
            map[u] = w;
        }
    }
    for (k, a) in arrows.iter().enumerate() {
        if map[k] == usize::MAX {
            return Err(Error::Quiver(format!("arrow '{}' missing from tau_arrows", a.label)));
        }
        let b = &arrows[map[k]];
        if b.source != tau[a.source] || b.target != tau[a.target] {
            return Err(Error::Quiver(format!(
                "tau does not map arrow '{}' onto '{}'",
                a.label, b.label
            )));
        }
    }
    Ok(map)
}

/// Arrows with both endpoints fixed by tau are fixed. Otherwise the arrows
/// `i -> j` must be matched with the arrows `tau i -> tau j`; this is only
/// inferred when each side has exactly one arrow.
fn infer_arrow_pairing(arrows: &[Arrow], tau: &[usize], names: &[String]) -> Result<Vec<usize>> {
    let mut map = vec![usize::MAX; arrows.len()];
    for (k, a) in arrows.iter().enumerate() {
        let (ts, tt) = (tau[a.source], tau[a.target]);
        if (ts, tt) == (a.source, a.target) {
            map[k] = k;
            continue;
        }
        let group: Vec<usize> = (0..arrows.len())
            .filter(|&m| arrows[m].source == a.source && arrows[m].target == a.target)
            .collect();
        let image: Vec<usize> = (0..arrows.len())
            .filter(|&m| arrows[m].source == ts && arrows[m].target == tt)
            .collect();
        if image.is_empty() || image.len() != group.len() {
            return Err(Error::Quiver(format!(
                "tau is not a quiver automorphism: {} arrow(s) {}->{} but {} arrow(s) {}->{}",
                group.len(),
                names[a.source],
                names[a.target],
                image.len(),
                names[ts],
                names[tt]
            )));
        }
        if image.len() > 1 {
            return Err(Error::Quiver(format!(
                "tau on the arrows {}->{} is ambiguous; give tau_arrows",
                names[a.source], names[a.target]
            )));
        }
        map[k] = image[0];
    }
    Ok(map)
}

fn euler_data(n: usize, arrows: &[Arrow]) -> EulerData {
    let mut euler_q = vec![vec![0i64; n]; n];
    for (i, row) in euler_q.iter_mut().enumerate() {
        row[i] = 1;
    }
    for a in arrows {
        euler_q[a.source][a.target] -= 1;
    }
    let sym: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| euler_q[i][j] + euler_q[j][i]).collect())
        .collect();
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        cartan[i][i] = 2;
    }
    for a in arrows {
        cartan[a.source][a.target] -= 1;
        cartan[a.target][a.source] -= 1;
    }
    EulerData { euler_q, cartan, sym }
}

impl IQuiver {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn tau(&self, i: usize) -> usize {
        self.tau[i]
    }

    pub fn tau_arrow(&self, k: usize) -> usize {
        self.tau_arrow[k]
    }

    pub fn is_split(&self) -> bool {
        (0..self.n()).all(|i| self.tau[i] == i)
    }

    pub fn euler(&self) -> &EulerData {
        &self.euler
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.euler.cartan[i][j]
    }

    /// Orbit representatives: the lexicographically least vertex id of each
    /// tau-orbit.
    pub fn in_orbit_reps(&self, i: usize) -> bool {
        self.vertices[i] <= self.vertices[self.tau[i]]
    }

    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == i && a.target == j).count()
    }

    /// Euler forms on K_0 classes, bilinear in integer vectors.
    pub fn euler_form(&self, x: &[i64], y: &[i64], which: EulerKind) -> i64 {
        let n = self.n();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                let e = match which {
                    EulerKind::Q | EulerKind::LambdaKS => self.euler.euler_q[i][j],
                    EulerKind::LambdaSK => self.euler.euler_q[i][self.tau[j]],
                };
                s += x[i] * y[j] * e;
            }
        }
        s
    }

    pub fn euler_q(&self, x: &[i64], y: &[i64]) -> i64 {
        self.euler_form(x, y, EulerKind::Q)
    }

    /// Symmetrized form `(x, y)`.
    pub fn sym_form(&self, x: &[i64], y: &[i64]) -> i64 {
        self.euler_q(x, y) + self.euler_q(y, x)
    }

    /// `tau` acting on an integer vector: `(tau x)(tau i) = x(i)`.
    pub fn tau_vec(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n()];
        for i in 0..self.n() {
            out[self.tau[i]] = x[i];
        }
        out
    }

    /// True iff the only oriented cycles of `Q` are 2-cycles between some
    /// `i` and `tau i != i`: every strongly connected component is a single
    /// vertex or such a pair.
    pub fn is_virtually_acyclic(&self) -> bool {
        let n = self.n();
        let mut reach = vec![vec![false; n]; n];
        for a in &self.arrows {
            reach[a.source][a.target] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        (0..n).all(|i| {
            let scc: Vec<usize> = (0..n).filter(|&j| j != i && reach[i][j] && reach[j][i]).collect();
            scc.is_empty() || (scc.len() == 1 && scc[0] == self.tau[i])
        })
    }

    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.n()];
        e[i] = 1;
        e
    }

    /// Canonical text used for content addressing of caches.
    pub fn fingerprint(&self) -> String {
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}>{}:{}", a.source, a.target, a.label))
            .collect();
        format!(
            "v={};a={};tau={:?};ta={:?}",
            self.vertices.join(","),
            arrows.join(","),
            self.tau,
            self.tau_arrow
        )
    }
}

impl fmt::Display for IQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "iquiver(vertices: {}; arrows:", self.vertices.join(","))?;
        for a in &self.arrows {
            write!(f, " {}:{}->{}", a.label, self.vertices[a.source], self.vertices[a.target])?;
        }
        let swaps: Vec<String> = (0..self.n())
            .filter(|&i| self.tau[i] > i)
            .map(|i| format!("({} {})", self.vertices[i], self.vertices[self.tau[i]]))
            .collect();
        if swaps.is_empty() {
            write!(f, "; tau = id)")
        } else {
            write!(f, "; tau = {})", swaps.join(""))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowKind {
    /// Arrow of `Q`, by index.
    Q(usize),
    /// `eps_i : i -> tau i`.
    Eps(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BArrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
    pub kind: ArrowKind,
}

/// Path of length two: `first` then `second`, written `second first`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Path2 {
    pub first: usize,
    pub second: usize,
}

/// Linear combination of length-two paths with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Path2)>,
}

/// A quiver with relations. Arrows of `Q` come first in the arrow list, in
/// their original order; for `Lambda^i` the eps arrows follow, one per
/// vertex in vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    pub n: usize,
    pub arrows: Vec<BArrow>,
    pub relations: Vec<Relation>,
    pub name: String,
}

impl BoundQuiver {
    /// `kQ` itself: no eps arrows, no relations.
    pub fn path_algebra(iq: &IQuiver) -> BoundQuiver {
        BoundQuiver {
            n: iq.n(),
            arrows: iq
                .arrows()
                .iter()
                .enumerate()
                .map(|(k, a)| BArrow {
                    source: a.source,
                    target: a.target,
                    label: a.label.clone(),
                    kind: ArrowKind::Q(k),
                })
                .collect(),
            relations: Vec::new(),
            name: format!("kQ[{}]", iq.fingerprint()),
        }
    }

    pub fn eps_arrow(&self, i: usize) -> Option<usize> {
        self.arrows.iter().position(|a| a.kind == ArrowKind::Eps(i))
    }

    pub fn q_arrow_count(&self) -> usize {
        self.arrows.iter().filter(|a| matches!(a.kind, ArrowKind::Q(_))).count()
    }

    pub fn relation_string(&self, r: &Relation) -> String {
        let mut s = String::new();
        for (k, (c, p)) in r.terms.iter().enumerate() {
            let word = format!("{}{}", self.arrows[p.second].label, self.arrows[p.first].label);
            let sign = if *c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            s.push_str(&format!("{sign}{mag}{word}"));
        }
        s
    }
}

/// The bound quiver `(Q̄, Ī)`: `eps_i : i -> tau i` added for every vertex,
/// with relations `eps_i eps_{tau i}` and `eps_i alpha - tau(alpha) eps_j`
/// for each arrow `alpha : j -> i`.
pub fn bar_quiver(iq: &IQuiver) -> BoundQuiver {
    let mut bq = BoundQuiver::path_algebra(iq);
    let base = bq.arrows.len();
    for i in 0..iq.n() {
        bq.arrows.push(BArrow {
            source: i,
            target: iq.tau(i),
            label: format!("e{}", iq.vertices()[i]),
            kind: ArrowKind::Eps(i),
        });
    }
    let eps = |i: usize| base + i;
    for i in 0..iq.n() {
        bq.relations.push(Relation {
            terms: vec![(
                1,
                Path2 {
                    first: eps(iq.tau(i)),
                    second: eps(i),
                },
            )],
        });
    }
    for (k, a) in iq.arrows().iter().enumerate() {
        let (j, i) = (a.source, a.target);
        bq.relations.push(Relation {
            terms: vec![
                (1, Path2 { first: k, second: eps(i) }),
                (-1, Path2 { first: eps(j), second: iq.tau_arrow(k) }),
            ],
        });
    }
    bq.name = format!("Li[{}]", iq.fingerprint());
    bq
}

fn simple_spec(vertices: &[&str], arrows: &[(&str, &str, &str)], tau: &[(&str, &str)], pairs: &[(&str, &str)]) -> IQuiverSpec {
    IQuiverSpec {
        vertices: vertices.iter().map(|s| s.to_string()).collect(),
        arrows: arrows
            .iter()
            .map(|(s, t, l)| (s.to_string(), t.to_string(), Some(l.to_string())))
            .collect(),
        tau: if tau.is_empty() {
            None
        } else {
            Some(tau.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
        },
        tau_arrows: if pairs.is_empty() {
            None
        } else {
            Some(pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
        },
    }
}

/// Split quiver `1 => 2` with `a` parallel arrows.
pub fn split_rank2(a: usize) -> IQuiver {
    let labels: Vec<String> = (1..=a).map(|k| format!("a{k}")).collect();
    let arrows: Vec<(&str, &str, &str)> = labels.iter().map(|l| ("1", "2", l.as_str())).collect();
    build_iquiver(&simple_spec(&["1", "2"], &arrows, &[], &[])).expect("split rank-2 quiver")
}

/// Generalized Kronecker iquiver: `r` arrows `alpha_k : 1 -> 2`, `r` arrows
/// `beta_k : 2 -> 1`, tau swapping the vertices and `alpha_k <-> beta_k`.
pub fn kronecker(r: usize) -> IQuiver {
    let al: Vec<String> = (1..=r).map(|k| format!("alpha{k}")).collect();
    let be: Vec<String> = (1..=r).map(|k| format!("beta{k}")).collect();
    let mut arrows: Vec<(&str, &str, &str)> = al.iter().map(|l| ("1", "2", l.as_str())).collect();
    arrows.extend(be.iter().map(|l| ("2", "1", l.as_str())));
    let pairs: Vec<(&str, &str)> = al.iter().zip(&be).map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build_iquiver(&simple_spec(&["1", "2"], &arrows, &[("1", "2"), ("2", "1")], &pairs)).expect("Kronecker iquiver")
}

/// Named built-in iquivers.
pub fn builtin(name: &str) -> Result<IQuiver> {
    match name {
        "rank1-split" => build_iquiver(&simple_spec(&["1"], &[], &[], &[])),
        "a2-split" => Ok(split_rank2(1)),
        "a3-quasisplit" => build_iquiver(&simple_spec(
            &["1", "2", "3"],
            &[("1", "2", "a"), ("3", "2", "b")],
            &[("1", "3"), ("3", "1")],
            &[("a", "b")],
        )),
        "kronecker-r1" => Ok(kronecker(1)),
        _ => {
            let parse = |s: &str| s.parse::<usize>().ok().filter(|&k| (1..=4).contains(&k));
            if let Some(a) = name.strip_prefix("split-rank2-").and_then(parse) {
                return Ok(split_rank2(a));
            }
            if let Some(r) = name.strip_prefix("kronecker-r").and_then(parse) {
                return Ok(kronecker(r));
            }
            Err(Error::Quiver(format!("unknown builtin quiver '{name}'")))
        }
    }
}

pub const BUILTINS: [&str; 4] = ["rank1-split", "a2-split", "a3-quasisplit", "kronecker-r1"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        for name in BUILTINS {
            let iq = builtin(name).unwrap();
            assert!(iq.is_virtually_acyclic(), "{name}");
        }
    }

    #[test]
    fn swap_without_image_arrow_fails() {
        let spec = simple_spec(&["1", "2"], &[("1", "2", "a")], &[("1", "2"), ("2", "1")], &[]);
        assert!(build_iquiver(&spec).is_err());
    }

    #[test]
    fn tau_must_be_involution() {
        let spec = simple_spec(&["1", "2", "3"], &[], &[("1", "2"), ("2", "3"), ("3", "1")], &[]);
        assert!(build_iquiver(&spec).is_err());
    }

    #[test]
    fn loops_rejected() {
        let spec = simple_spec(&["1"], &[("1", "1", "x")], &[], &[]);
        assert!(build_iquiver(&spec).is_err());
    }

    #[test]
    fn ambiguous_pairing_needs_explicit_map() {
        let spec = simple_spec(
            &["1", "2"],
            &[("1", "2", "a"), ("1", "2", "b"), ("2", "1", "c"), ("2", "1", "d")],
            &[("1", "2"), ("2", "1")],
            &[],
        );
        assert!(build_iquiver(&spec).is_err());
        assert_eq!(kronecker(2).tau_arrow(0), 2);
    }

    #[test]
    fn bar_quiver_relations() {
        let bq = bar_quiver(&builtin("rank1-split").unwrap());
        assert_eq!(bq.arrows.len(), 1);
        let rels: Vec<String> = bq.relations.iter().map(|r| bq.relation_string(r)).collect();
        assert_eq!(rels, vec!["e1e1"]);

        let bq = bar_quiver(&builtin("a2-split").unwrap());
        let rels: Vec<String> = bq.relations.iter().map(|r| bq.relation_string(r)).collect();
        assert_eq!(rels, vec!["e1e1", "e2e2", "e2a1-a1e1"]);

        let bq = bar_quiver(&builtin("kronecker-r1").unwrap());
        let rels: Vec<String> = bq.relations.iter().map(|r| bq.relation_string(r)).collect();
        assert_eq!(rels, vec!["e1e2", "e2e1", "e2alpha1-beta1e1", "e1beta1-alpha1e2"]);
    }

    #[test]
    fn euler_forms() {
        let a2 = builtin("a2-split").unwrap();
        assert_eq!(a2.euler_q(&[1, 0], &[0, 1]), -1);
        assert_eq!(a2.euler_q(&[0, 1], &[1, 0]), 0);
        assert_eq!(a2.euler_q(&[1, 0], &[1, 0]), 1);
        let kr = builtin("kronecker-r1").unwrap();
        assert_eq!(kr.euler_form(&[1, 0], &[1, 0], EulerKind::LambdaSK), -1);
        assert_eq!(kr.euler_form(&[1, 0], &[0, 1], EulerKind::LambdaKS), -1);
        for name in BUILTINS {
            let iq = builtin(name).unwrap();
            let e = iq.euler();
            assert_eq!(e.sym, e.cartan, "{name}");
        }
    }

    #[test]
    fn virtual_acyclicity() {
        let spec = simple_spec(&["1", "2"], &[("1", "2", "a"), ("2", "1", "b")], &[], &[]);
        assert!(!build_iquiver(&spec).unwrap().is_virtually_acyclic());
        assert!(kronecker(1).is_virtually_acyclic());
    }

    #[test]
    fn kronecker_tau_pairs_have_balanced_arrows() {
        for r in 1..=3 {
            let iq = kronecker(r);
            assert_eq!(iq.arrow_count(0, 1), iq.arrow_count(1, 0));
            assert_eq!(iq.cartan(0, 1), -2 * r as i64);
        }
    }

    #[test]
    fn orbit_reps_are_least_ids() {
        let a3 = builtin("a3-quasisplit").unwrap();
        assert!(a3.in_orbit_reps(0));
        assert!(a3.in_orbit_reps(1));
        assert!(!a3.in_orbit_reps(2));
    }
}
