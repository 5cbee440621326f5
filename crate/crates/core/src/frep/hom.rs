use crate::iquiver::BoundQuiver;

use super::fp::{self, Mat};
use super::rep::Rep;

/// Basis of `Hom(M, N)`. Each element is a vector of unknowns laid out
/// vertex by vertex, `f_i` row-major of shape `dim N_i x dim M_i`.
pub fn hom_basis(bq: &BoundQuiver, m: &Rep, n: &Rep, p: u32) -> Vec<Vec<u8>> {
    let nv = m.dim.len();
    let mut off = vec![0usize; nv + 1];
    for i in 0..nv {
        off[i + 1] = off[i] + (m.dim[i] * n.dim[i]) as usize;
    }
    let unknowns = off[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let idx = |i: usize, r: usize, c: usize| off[i] + r * m.dim[i] as usize + c;
    let mut eqs: Vec<u8> = Vec::new();
    let mut rows = 0;
    for (a, (ma, na)) in bq.arrows.iter().zip(m.mats.iter().zip(&n.mats)) {
        let (s, t) = (a.source, a.target);
        // N(a) f_s - f_t M(a) = 0, entry (r, c)
        for r in 0..n.dim[t] as usize {
            for c in 0..m.dim[s] as usize {
                let mut row = vec![0u8; unknowns];
                for k in 0..n.dim[s] as usize {
                    let x = na.get(r, k) as u32;
                    let u = idx(s, k, c);
                    row[u] = ((row[u] as u32 + x) % p) as u8;
                }
                for k in 0..m.dim[t] as usize {
                    let x = ma.get(k, c) as u32;
                    let u = idx(t, r, k);
                    row[u] = ((row[u] as u32 + p - x % p) % p) as u8;
                }
                eqs.extend(row);
                rows += 1;
            }
        }
    }
    Mat::from_rows(rows, unknowns, eqs).nullspace(p)
}

pub fn hom_dim(bq: &BoundQuiver, m: &Rep, n: &Rep, p: u32) -> u32 {
    hom_basis(bq, m, n, p).len() as u32
}

/// Split a flat hom vector into per-vertex matrices.
pub fn hom_components(m: &Rep, n: &Rep, v: &[u8]) -> Vec<Mat> {
    let mut off = 0;
    (0..m.dim.len())
        .map(|i| {
            let (r, c) = (n.dim[i] as usize, m.dim[i] as usize);
            let f = Mat::from_rows(r, c, v[off..off + r * c].to_vec());
            off += r * c;
            f
        })
        .collect()
}

/// Every element of the span of `basis`, in a fixed order.
pub fn span_elements(basis: &[Vec<u8>], len: usize, p: u32) -> impl Iterator<Item = Vec<u8>> + '_ {
    let total = (p as u64).pow(basis.len() as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0u8; len];
        for b in basis {
            let c = (code % p as u64) as u32;
            code /= p as u64;
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = ((*x as u32 + c * y as u32) % p) as u8;
                }
            }
        }
        v
    })
}

/// Automorphism count by brute force over `End(M)`.
pub fn aut_order_direct(bq: &BoundQuiver, m: &Rep, p: u32) -> u128 {
    let basis = hom_basis(bq, m, m, p);
    let len: usize = m.dim.iter().map(|&d| (d * d) as usize).sum();
    span_elements(&basis, len, p)
        .filter(|v| {
            hom_components(m, m, v)
                .iter()
                .all(|f| f.rows == 0 || f.rank(p) == f.rows)
        })
        .count() as u128
}

/// Kernel and cokernel of a morphism `f : M -> N`, as representations in
/// RREF-adapted bases.
pub fn kernel_cokernel(bq: &BoundQuiver, m: &Rep, n: &Rep, f: &[Mat], p: u32) -> (Rep, Rep) {
    let nv = m.dim.len();
    let kers: Vec<Vec<Vec<u8>>> = (0..nv).map(|i| fp::span_basis(f[i].nullspace(p), p)).collect();
    let ims: Vec<Vec<Vec<u8>>> = (0..nv).map(|i| f[i].column_space(p)).collect();
    let ker = super::sub::restrict(bq, m, &kers, p);
    let coker = super::sub::quotient(bq, n, &ims, p);
    (ker, coker)
}
