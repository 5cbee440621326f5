use crate::iquiver::BoundQuiver;

use super::fp::{self, Mat};
use super::rep::Rep;

/// True iff the subspace tuple (RREF bases) is stable under every arrow.
pub fn is_invariant(bq: &BoundQuiver, z: &Rep, sub: &[Vec<Vec<u8>>], p: u32) -> bool {
    bq.arrows
        .iter()
        .zip(&z.mats)
        .all(|(a, m)| arrow_preserves(m, &sub[a.source], &sub[a.target], p))
}

fn arrow_preserves(m: &Mat, src: &[Vec<u8>], dst: &[Vec<u8>], p: u32) -> bool {
    let piv = fp::pivots_of(dst);
    src.iter().all(|u| {
        let mut w = m.apply(u, p);
        fp::reduce_mod(&mut w, dst, &piv, p);
        fp::is_zero_vec(&w)
    })
}

/// The subrepresentation on an invariant subspace tuple, in the given bases.
pub fn restrict(bq: &BoundQuiver, z: &Rep, sub: &[Vec<Vec<u8>>], p: u32) -> Rep {
    let dim: Vec<u32> = sub.iter().map(|b| b.len() as u32).collect();
    let pivs: Vec<Vec<usize>> = sub.iter().map(|b| fp::pivots_of(b)).collect();
    let mats = bq
        .arrows
        .iter()
        .zip(&z.mats)
        .map(|(a, m)| {
            let (s, t) = (a.source, a.target);
            let cols: Vec<Vec<u8>> = sub[s]
                .iter()
                .map(|u| {
                    let mut w = m.apply(u, p);
                    let c = fp::reduce_mod(&mut w, &sub[t], &pivs[t], p);
                    debug_assert!(fp::is_zero_vec(&w), "subspace not invariant");
                    c
                })
                .collect();
            Mat::from_columns(dim[t] as usize, &cols)
        })
        .collect();
    Rep { dim, mats }
}

/// The quotient by an invariant subspace tuple, using the standard basis
/// vectors off the pivot columns as coset representatives.
pub fn quotient(bq: &BoundQuiver, z: &Rep, sub: &[Vec<Vec<u8>>], p: u32) -> Rep {
    let nv = z.dim.len();
    let pivs: Vec<Vec<usize>> = sub.iter().map(|b| fp::pivots_of(b)).collect();
    let free: Vec<Vec<usize>> = (0..nv)
        .map(|i| (0..z.dim[i] as usize).filter(|c| !pivs[i].contains(c)).collect())
        .collect();
    let dim: Vec<u32> = free.iter().map(|f| f.len() as u32).collect();
    let mats = bq
        .arrows
        .iter()
        .zip(&z.mats)
        .map(|(a, m)| {
            let (s, t) = (a.source, a.target);
            let cols: Vec<Vec<u8>> = free[s]
                .iter()
                .map(|&c| {
                    let mut e = vec![0u8; z.dim[s] as usize];
                    e[c] = 1;
                    let mut w = m.apply(&e, p);
                    fp::reduce_mod(&mut w, &sub[t], &pivs[t], p);
                    free[t].iter().map(|&j| w[j]).collect()
                })
                .collect();
            Mat::from_columns(dim[t] as usize, &cols)
        })
        .collect();
    Rep { dim, mats }
}

/// All invariant subspace tuples of `z` with dimension vector `ydim`.
pub fn invariant_subspaces(bq: &BoundQuiver, z: &Rep, ydim: &[u32], p: u32) -> Vec<Vec<Vec<Vec<u8>>>> {
    let nv = z.dim.len();
    let choices: Vec<Vec<Vec<Vec<u8>>>> = (0..nv)
        .map(|i| fp::subspaces(z.dim[i] as usize, ydim[i] as usize, p))
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<Vec<Vec<u8>>> = Vec::with_capacity(nv);

    fn go(
        bq: &BoundQuiver,
        z: &Rep,
        p: u32,
        choices: &[Vec<Vec<Vec<u8>>>],
        cur: &mut Vec<Vec<Vec<u8>>>,
        out: &mut Vec<Vec<Vec<Vec<u8>>>>,
    ) {
        let i = cur.len();
        if i == choices.len() {
            out.push(cur.clone());
            return;
        }
        for u in &choices[i] {
            cur.push(u.clone());
            // arrows whose endpoints are both decided now and one of them is i
            let ok = bq.arrows.iter().zip(&z.mats).all(|(a, m)| {
                let (s, t) = (a.source, a.target);
                if s.max(t) != i {
                    return true;
                }
                arrow_preserves(m, &cur[s], &cur[t], p)
            });
            if ok {
                go(bq, z, p, choices, cur, out);
            }
            cur.pop();
        }
    }

    go(bq, z, p, &choices, &mut cur, &mut out);
    out
}

/// `(sub, quotient)` pairs for every subrepresentation of dimension `ydim`.
pub fn subreps(bq: &BoundQuiver, z: &Rep, ydim: &[u32], p: u32) -> Vec<(Rep, Rep)> {
    invariant_subspaces(bq, z, ydim, p)
        .into_iter()
        .map(|u| (restrict(bq, z, &u, p), quotient(bq, z, &u, p)))
        .collect()
}
