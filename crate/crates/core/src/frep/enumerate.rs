use crate::error::{Error, Result};
use crate::iquiver::BoundQuiver;

use super::fp::Mat;
use super::rep::Rep;

/// Enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_dim: u32,
    pub max_space: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_dim: 6,
            max_space: 1 << 28,
        }
    }
}

/// Number of raw matrix tuples at dimension vector `dim`.
pub fn search_space(bq: &BoundQuiver, dim: &[u32], p: u32) -> u128 {
    let entries: u32 = bq.arrows.iter().map(|a| dim[a.source] * dim[a.target]).sum();
    (p as u128).checked_pow(entries).unwrap_or(u128::MAX)
}

pub fn check_budget(bq: &BoundQuiver, dim: &[u32], p: u32, budget: &Budget) -> Result<()> {
    let total: u32 = dim.iter().sum();
    if total > budget.max_dim {
        return Err(Error::Budget {
            dim: dim.to_vec(),
            reason: format!("total dimension {total} exceeds {}", budget.max_dim),
        });
    }
    let space = search_space(bq, dim, p);
    if space > budget.max_space {
        return Err(Error::Budget {
            dim: dim.to_vec(),
            reason: format!("search space {space} exceeds {}", budget.max_space),
        });
    }
    Ok(())
}

/// Arrow order for backtracking: greedily take the arrow that completes the
/// most relations, preferring small matrices.
fn arrow_order(bq: &BoundQuiver, dim: &[u32]) -> Vec<usize> {
    let rel_arrows: Vec<Vec<usize>> = bq
        .relations
        .iter()
        .map(|r| {
            let mut v: Vec<usize> = r.terms.iter().flat_map(|(_, p)| [p.first, p.second]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let size = |a: usize| dim[bq.arrows[a].source] * dim[bq.arrows[a].target];
    let mut chosen: Vec<usize> = Vec::new();
    while chosen.len() < bq.arrows.len() {
        let best = (0..bq.arrows.len())
            .filter(|a| !chosen.contains(a))
            .max_by_key(|&a| {
                let done = rel_arrows
                    .iter()
                    .filter(|ra| ra.contains(&a) && ra.iter().all(|x| *x == a || chosen.contains(x)))
                    .count();
                (done, std::cmp::Reverse(size(a)), std::cmp::Reverse(a))
            })
            .unwrap();
        chosen.push(best);
    }
    chosen
}

/// All relation-satisfying nilpotent representations at `dim`, as flattened
/// matrix tuples in lexicographic order.
pub fn enumerate_flat(bq: &BoundQuiver, dim: &[u32], p: u32, budget: &Budget) -> Result<Vec<Vec<u8>>> {
    check_budget(bq, dim, p, budget)?;
    let order = arrow_order(bq, dim);
    let mut offsets = Vec::with_capacity(bq.arrows.len());
    let mut off = 0;
    for a in &bq.arrows {
        offsets.push(off);
        off += (dim[a.source] * dim[a.target]) as usize;
    }
    let total = off;
    // relations to test once the arrow at each position has been assigned
    let checks: Vec<Vec<usize>> = (0..order.len())
        .map(|k| {
            (0..bq.relations.len())
                .filter(|&r| {
                    let arrows: Vec<usize> = bq.relations[r].terms.iter().flat_map(|(_, pth)| [pth.first, pth.second]).collect();
                    arrows.contains(&order[k]) && arrows.iter().all(|x| order[..=k].contains(x))
                })
                .collect()
        })
        .collect();

    struct St<'a> {
        bq: &'a BoundQuiver,
        dim: &'a [u32],
        p: u32,
        order: Vec<usize>,
        offsets: Vec<usize>,
        checks: Vec<Vec<usize>>,
        buf: Vec<u8>,
        out: Vec<Vec<u8>>,
    }

    fn mat(st: &St, a: usize) -> Mat {
        let ar = &st.bq.arrows[a];
        let (r, c) = (st.dim[ar.target] as usize, st.dim[ar.source] as usize);
        Mat::from_rows(r, c, st.buf[st.offsets[a]..st.offsets[a] + r * c].to_vec())
    }

    fn relation_holds(st: &St, r: usize) -> bool {
        let rel = &st.bq.relations[r];
        let mut acc: Option<Vec<u32>> = None;
        for (c, path) in &rel.terms {
            let prod = mat(st, path.second).mul(&mat(st, path.first), st.p);
            let cm = c.rem_euclid(st.p as i64) as u32;
            match &mut acc {
                None => acc = Some(prod.data.iter().map(|&x| x as u32 * cm % st.p).collect()),
                Some(v) => {
                    for (x, &y) in v.iter_mut().zip(&prod.data) {
                        *x = (*x + y as u32 * cm) % st.p;
                    }
                }
            }
        }
        acc.is_none_or(|v| v.iter().all(|&x| x == 0))
    }

    fn go(st: &mut St, k: usize) {
        if k == st.order.len() {
            let rep = Rep::from_flat(st.bq, st.dim, &st.buf);
            if rep.is_nilpotent(st.bq, st.p) {
                st.out.push(st.buf.clone());
            }
            return;
        }
        let a = st.order[k];
        let ar = &st.bq.arrows[a];
        let len = (st.dim[ar.target] * st.dim[ar.source]) as usize;
        let start = st.offsets[a];
        for x in st.buf[start..start + len].iter_mut() {
            *x = 0;
        }
        loop {
            if st.checks[k].iter().all(|&r| relation_holds(st, r)) {
                go(st, k + 1);
            }
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == len {
                    return;
                }
                let x = &mut st.buf[start + pos];
                *x += 1;
                if (*x as u32) < st.p {
                    break;
                }
                *x = 0;
                pos += 1;
            }
        }
    }

    let mut st = St {
        bq,
        dim,
        p,
        order,
        offsets,
        checks,
        buf: vec![0; total],
        out: Vec::new(),
    };
    go(&mut st, 0);
    let mut out = st.out;
    out.sort();
    Ok(out)
}

pub fn enumerate_modules(bq: &BoundQuiver, dim: &[u32], p: u32, budget: &Budget) -> Result<Vec<Rep>> {
    Ok(enumerate_flat(bq, dim, p, budget)?
        .iter()
        .map(|f| Rep::from_flat(bq, dim, f))
        .collect())
}
