use crate::iquiver::BoundQuiver;

use super::fp::{self, Mat};

/// Representation of a bound quiver over `F_p`: one matrix per arrow,
/// `target-dim x source-dim`, in the bound quiver's arrow order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rep {
    pub dim: Vec<u32>,
    pub mats: Vec<Mat>,
}

impl Rep {
    pub fn zero(bq: &BoundQuiver, dim: &[u32]) -> Rep {
        Rep {
            dim: dim.to_vec(),
            mats: bq
                .arrows
                .iter()
                .map(|a| Mat::zeros(dim[a.target] as usize, dim[a.source] as usize))
                .collect(),
        }
    }

    pub fn total_dim(&self) -> u32 {
        self.dim.iter().sum()
    }

    /// Concatenated row-major entries of all arrow matrices; the total
    /// order used for canonical representatives is lexicographic on this.
    pub fn flatten(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.mats.iter().map(|m| m.data.len()).sum());
        for m in &self.mats {
            out.extend_from_slice(&m.data);
        }
        out
    }

    pub fn from_flat(bq: &BoundQuiver, dim: &[u32], flat: &[u8]) -> Rep {
        let mut off = 0;
        let mats = bq
            .arrows
            .iter()
            .map(|a| {
                let (r, c) = (dim[a.target] as usize, dim[a.source] as usize);
                let m = Mat::from_rows(r, c, flat[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        assert_eq!(off, flat.len(), "flat representation has the wrong length");
        Rep { dim: dim.to_vec(), mats }
    }

    pub fn satisfies_relations(&self, bq: &BoundQuiver, p: u32) -> bool {
        bq.relations.iter().all(|rel| {
            let mut acc: Option<Mat> = None;
            for (c, path) in &rel.terms {
                let prod = self.mats[path.second].mul(&self.mats[path.first], p);
                let cm = c.rem_euclid(p as i64) as u32;
                let term = Mat {
                    rows: prod.rows,
                    cols: prod.cols,
                    data: prod.data.iter().map(|&x| (x as u32 * cm % p) as u8).collect(),
                };
                acc = Some(match acc {
                    None => term,
                    Some(a) => Mat {
                        rows: a.rows,
                        cols: a.cols,
                        data: a.data.iter().zip(&term.data).map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8).collect(),
                    },
                });
            }
            acc.is_none_or(|m| m.is_zero())
        })
    }

    /// Radical series test: `rad^{k+1}` at vertex `i` is the span of the
    /// images of `rad^k` under the arrows into `i`.
    pub fn is_nilpotent(&self, bq: &BoundQuiver, p: u32) -> bool {
        let n = self.dim.len();
        let mut layer: Vec<Vec<Vec<u8>>> = (0..n)
            .map(|i| {
                let d = self.dim[i] as usize;
                (0..d).map(|k| (0..d).map(|j| (j == k) as u8).collect()).collect()
            })
            .collect();
        for _ in 0..=self.total_dim() {
            if layer.iter().all(|b| b.is_empty()) {
                return true;
            }
            let mut next: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
            for (a, m) in bq.arrows.iter().zip(&self.mats) {
                for u in &layer[a.source] {
                    next[a.target].push(m.apply(u, p));
                }
            }
            layer = next.into_iter().map(|vs| fp::span_basis(vs, p)).collect();
        }
        layer.iter().all(|b| b.is_empty())
    }

    /// Base change at vertex `i` by `g` (with inverse `ginv`):
    /// `M(a) -> g_t M(a) g_s^{-1}`.
    pub fn act_at(&self, bq: &BoundQuiver, i: usize, g: &Mat, ginv: &Mat, p: u32) -> Rep {
        let mats = bq
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| {
                let mut x = m.clone();
                if a.target == i {
                    x = g.mul(&x, p);
                }
                if a.source == i {
                    x = x.mul(ginv, p);
                }
                x
            })
            .collect();
        Rep {
            dim: self.dim.clone(),
            mats,
        }
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let dim: Vec<u32> = self.dim.iter().zip(&other.dim).map(|(a, b)| a + b).collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let mut m = Mat::zeros(a.rows + b.rows, a.cols + b.cols);
                for i in 0..a.rows {
                    for j in 0..a.cols {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        m.set(a.rows + i, a.cols + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Rep { dim, mats }
    }

    /// Append zero matrices for the arrows of `big` beyond this
    /// representation's arrows (a `kQ`-module viewed as a `Lambda^i`-module).
    pub fn extend_by_zero(&self, big: &BoundQuiver) -> Rep {
        let mut mats = self.mats.clone();
        for a in &big.arrows[self.mats.len()..] {
            mats.push(Mat::zeros(self.dim[a.target] as usize, self.dim[a.source] as usize));
        }
        Rep {
            dim: self.dim.clone(),
            mats,
        }
    }

    /// Keep only the first `k` arrows.
    pub fn truncate_arrows(&self, k: usize) -> Rep {
        Rep {
            dim: self.dim.clone(),
            mats: self.mats[..k].to_vec(),
        }
    }
}
