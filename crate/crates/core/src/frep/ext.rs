//! Extensions `0 -> Y -> L -> X -> 0` realized as block upper triangular
//! matrix tuples `L(a) = [[Y(a), phi_a], [0, X(a)]]`.
//!
//! The cocycles `phi` form a linear space `Z`; each extension class is a
//! coset of the coboundaries, which have `q^{sum x_i y_i} / |Hom(X, Y)|`
//! elements. Hence `|Ext^1(X,Y)_L| / |Hom(X,Y)| = #{phi : L_phi ~ L} /
//! q^{sum x_i y_i}`.

use crate::iquiver::BoundQuiver;

use super::fp::Mat;
use super::hom;
use super::rep::Rep;

pub struct CocycleSpace {
    /// Per arrow: offset of `phi_a` (row-major, `y_t x x_s`).
    pub offsets: Vec<usize>,
    pub len: usize,
    pub basis: Vec<Vec<u8>>,
}

pub fn cocycles(bq: &BoundQuiver, x: &Rep, y: &Rep, p: u32) -> CocycleSpace {
    let mut offsets = Vec::with_capacity(bq.arrows.len());
    let mut len = 0;
    for a in &bq.arrows {
        offsets.push(len);
        len += (y.dim[a.target] * x.dim[a.source]) as usize;
    }
    if len == 0 {
        return CocycleSpace {
            offsets,
            len,
            basis: Vec::new(),
        };
    }
    let xs = |a: usize| x.dim[bq.arrows[a].source] as usize;
    let mut eqs: Vec<u8> = Vec::new();
    let mut rows = 0;
    for rel in &bq.relations {
        let first0 = rel.terms[0].1;
        let s0 = bq.arrows[first0.first].source;
        let t0 = bq.arrows[first0.second].target;
        for r in 0..y.dim[t0] as usize {
            for c in 0..x.dim[s0] as usize {
                let mut row = vec![0u8; len];
                for (coef, path) in &rel.terms {
                    let cm = coef.rem_euclid(p as i64) as u32;
                    let mid = bq.arrows[path.first].target;
                    // Y(second) phi_first
                    for k in 0..y.dim[mid] as usize {
                        let yv = y.mats[path.second].get(r, k) as u32;
                        if yv != 0 {
                            let u = offsets[path.first] + k * xs(path.first) + c;
                            row[u] = ((row[u] as u32 + cm * yv) % p) as u8;
                        }
                    }
                    // phi_second X(first)
                    for k in 0..x.dim[mid] as usize {
                        let xv = x.mats[path.first].get(k, c) as u32;
                        if xv != 0 {
                            let u = offsets[path.second] + r * xs(path.second) + k;
                            row[u] = ((row[u] as u32 + cm * xv) % p) as u8;
                        }
                    }
                }
                eqs.extend(row);
                rows += 1;
            }
        }
    }
    let basis = if rows == 0 {
        (0..len)
            .map(|k| {
                let mut e = vec![0u8; len];
                e[k] = 1;
                e
            })
            .collect()
    } else {
        Mat::from_rows(rows, len, eqs).nullspace(p)
    };
    CocycleSpace { offsets, len, basis }
}

impl CocycleSpace {
    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    /// Middle term of the extension given by a cocycle.
    pub fn middle(&self, bq: &BoundQuiver, x: &Rep, y: &Rep, phi: &[u8]) -> Rep {
        let dim: Vec<u32> = x.dim.iter().zip(&y.dim).map(|(a, b)| a + b).collect();
        let mats = bq
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (s, t) = (a.source, a.target);
                let (ys, yt, xs, xt) = (y.dim[s] as usize, y.dim[t] as usize, x.dim[s] as usize, x.dim[t] as usize);
                let mut m = Mat::zeros(yt + xt, ys + xs);
                for i in 0..yt {
                    for j in 0..ys {
                        m.set(i, j, y.mats[k].get(i, j));
                    }
                    for j in 0..xs {
                        m.set(i, ys + j, phi[self.offsets[k] + i * xs + j]);
                    }
                }
                for i in 0..xt {
                    for j in 0..xs {
                        m.set(yt + i, ys + j, x.mats[k].get(i, j));
                    }
                }
                m
            })
            .collect();
        Rep { dim, mats }
    }

    pub fn elements(&self, p: u32) -> impl Iterator<Item = Vec<u8>> + '_ {
        hom::span_elements(&self.basis, self.len, p)
    }
}

/// `dim Ext^1(X, Y) = dim Z - (sum x_i y_i - dim Hom(X, Y))`.
pub fn ext1_dim(bq: &BoundQuiver, x: &Rep, y: &Rep, p: u32) -> u32 {
    let z = cocycles(bq, x, y, p).dim();
    let full: u32 = x.dim.iter().zip(&y.dim).map(|(a, b)| a * b).sum();
    let h = hom::hom_dim(bq, x, y, p);
    z + h - full
}
