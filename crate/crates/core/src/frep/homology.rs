//! Reduction of a `Lambda^i`-module to the iHall basis: the eps-homology
//! carries an induced `kQ`-structure `X`, and `[M] = v^vexp [X] * K_alpha`
//! with `alpha(i) = rank eps_i`.

use crate::error::{Error, Result};
use crate::iquiver::{ArrowKind, BoundQuiver, IQuiver};

use super::fp::{self, Mat};
use super::rep::Rep;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub vexp: i64,
    /// Representation of `kQ` (only the arrows of `Q`).
    pub x: Rep,
    pub alpha: Vec<i64>,
}

/// Twist exponent in `[X (+) K_alpha] = v^e [X] * [K_alpha]`:
/// `e = -(<x, alpha>_Q - <x, tau alpha>_Q)`.
pub fn split_exponent(iq: &IQuiver, xdim: &[i64], alpha: &[i64]) -> i64 {
    -(iq.euler_q(xdim, alpha) - iq.euler_q(xdim, &iq.tau_vec(alpha)))
}

pub fn homology_reduce(iq: &IQuiver, bq: &BoundQuiver, m: &Rep, p: u32) -> Result<Reduced> {
    let n = iq.n();
    let nq = iq.arrows().len();
    let eps: Vec<usize> = (0..n)
        .map(|i| bq.eps_arrow(i).ok_or_else(|| Error::Internal("bound quiver without eps arrows".into())))
        .collect::<Result<_>>()?;
    let mut alpha = vec![0i64; n];
    let mut ims = Vec::with_capacity(n);
    let mut hs = Vec::with_capacity(n);
    for i in 0..n {
        let e_out = &m.mats[eps[i]];
        let e_in = &m.mats[eps[iq.tau(i)]];
        alpha[i] = e_out.rank(p) as i64;
        let im = e_in.column_space(p);
        let im_piv = fp::pivots_of(&im);
        let ker = e_out.nullspace(p);
        for u in &im {
            if !fp::is_zero_vec(&e_out.apply(u, p)) {
                return Err(Error::Internal(format!("eps image not inside eps kernel at vertex {i}")));
            }
        }
        let reduced: Vec<Vec<u8>> = ker
            .into_iter()
            .map(|mut k| {
                fp::reduce_mod(&mut k, &im, &im_piv, p);
                k
            })
            .collect();
        let h = fp::span_basis(reduced, p);
        ims.push(im);
        hs.push(h);
    }
    let xdim: Vec<u32> = hs.iter().map(|h| h.len() as u32).collect();
    for i in 0..n {
        let expect = m.dim[i] as i64 - alpha[i] - alpha[iq.tau(i)];
        if expect != xdim[i] as i64 {
            return Err(Error::Internal(format!("homology dimension mismatch at vertex {i}")));
        }
    }
    let mut mats = Vec::with_capacity(nq);
    for (k, a) in bq.arrows.iter().enumerate().take(nq) {
        debug_assert_eq!(a.kind, ArrowKind::Q(k));
        let (s, t) = (a.source, a.target);
        let ma = &m.mats[k];
        let piv_im = fp::pivots_of(&ims[t]);
        let piv_h = fp::pivots_of(&hs[t]);
        for u in &ims[s] {
            let mut w = ma.apply(u, p);
            fp::reduce_mod(&mut w, &ims[t], &piv_im, p);
            if !fp::is_zero_vec(&w) {
                return Err(Error::Internal(format!("arrow {} does not preserve eps images", a.label)));
            }
        }
        let mut cols = Vec::with_capacity(hs[s].len());
        for c in &hs[s] {
            let mut w = ma.apply(c, p);
            if !fp::is_zero_vec(&m.mats[eps[t]].apply(&w, p)) {
                return Err(Error::Internal(format!("arrow {} does not preserve eps kernels", a.label)));
            }
            fp::reduce_mod(&mut w, &ims[t], &piv_im, p);
            let coords = fp::reduce_mod(&mut w, &hs[t], &piv_h, p);
            if !fp::is_zero_vec(&w) {
                return Err(Error::Internal("homology coordinates failed".into()));
            }
            cols.push(coords);
        }
        mats.push(Mat::from_columns(xdim[t] as usize, &cols));
    }
    let x = Rep { dim: xdim.clone(), mats };
    let xd: Vec<i64> = xdim.iter().map(|&d| d as i64).collect();
    Ok(Reduced {
        vexp: split_exponent(iq, &xd, &alpha),
        x,
        alpha,
    })
}

/// `res_H(M)` is projective iff at each vertex the eps-complex is exact,
/// i.e. `dim M_i = rank eps_i + rank eps_{tau i}`.
pub fn has_finite_projective_dimension(iq: &IQuiver, bq: &BoundQuiver, m: &Rep, p: u32) -> bool {
    (0..iq.n()).all(|i| {
        let a = m.mats[bq.eps_arrow(i).unwrap()].rank(p);
        let b = m.mats[bq.eps_arrow(iq.tau(i)).unwrap()].rank(p);
        m.dim[i] as usize == a + b
    })
}
