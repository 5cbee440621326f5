use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::iquiver::BoundQuiver;

use super::fp::{gl_generators, gl_order, Mat};
use super::rep::Rep;

/// Handle of an isomorphism class: dimension vector plus position in the
/// sorted class list of that dimension vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize)]
pub struct ClassId {
    pub dim: Vec<u32>,
    pub index: u32,
}

/// An isomorphism class with its canonical (lexicographically least)
/// representative and orbit data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoClass {
    pub id: ClassId,
    pub canon: Vec<u8>,
    pub aut_order: u128,
    pub orbit_size: u128,
}

/// Complete classification of the modules at one dimension vector.
#[derive(Debug)]
pub struct ClassTable {
    pub dim: Vec<u32>,
    pub classes: Vec<IsoClass>,
    pub lookup: HashMap<Vec<u8>, u32>,
    pub group_order: u128,
}

impl ClassTable {
    pub fn rep_count(&self) -> usize {
        self.lookup.len()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut y = x;
        while self.parent[y as usize] != r {
            let next = self.parent[y as usize];
            self.parent[y as usize] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so the result is order independent
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Partition a complete list of representations into orbits of
/// `prod_i GL_{d_i}(F_p)` by closing under group generators.
pub fn classify_iso(bq: &BoundQuiver, dim: &[u32], p: u32, reps: Vec<Vec<u8>>) -> Result<ClassTable> {
    let lookup: HashMap<Vec<u8>, u32> = reps.iter().enumerate().map(|(k, r)| (r.clone(), k as u32)).collect();
    let mut gens: Vec<(usize, Mat, Mat)> = Vec::new();
    for (i, &d) in dim.iter().enumerate() {
        for g in gl_generators(d as usize, p) {
            let gi = g.inverse(p).expect("generator is invertible");
            gens.push((i, g, gi));
        }
    }
    let images: Vec<Vec<u32>> = reps
        .par_iter()
        .map(|flat| {
            let rep = Rep::from_flat(bq, dim, flat);
            gens.iter()
                .map(|(i, g, gi)| {
                    let img = rep.act_at(bq, *i, g, gi, p).flatten();
                    *lookup.get(&img).expect("orbit left the enumerated set")
                })
                .collect()
        })
        .collect();
    let mut uf = UnionFind::new(reps.len());
    for (k, imgs) in images.iter().enumerate() {
        for &j in imgs {
            uf.union(k as u32, j);
        }
    }
    let mut members: HashMap<u32, Vec<u32>> = HashMap::new();
    for k in 0..reps.len() as u32 {
        let r = uf.find(k);
        members.entry(r).or_default().push(k);
    }
    let group_order: u128 = dim.iter().map(|&d| gl_order(d, p)).product();
    let mut classes: Vec<(Vec<u8>, Vec<u32>)> = members
        .into_values()
        .map(|m| {
            let canon = m.iter().map(|&k| &reps[k as usize]).min().unwrap().clone();
            (canon, m)
        })
        .collect();
    classes.sort_by(|a, b| a.0.cmp(&b.0));
    let mut lookup_final = HashMap::with_capacity(reps.len());
    let mut out = Vec::with_capacity(classes.len());
    for (idx, (canon, m)) in classes.into_iter().enumerate() {
        let orbit = m.len() as u128;
        if group_order % orbit != 0 {
            return Err(Error::Internal(format!(
                "orbit size {orbit} does not divide |GL| = {group_order} at {dim:?}"
            )));
        }
        for &k in &m {
            lookup_final.insert(reps[k as usize].clone(), idx as u32);
        }
        out.push(IsoClass {
            id: ClassId {
                dim: dim.to_vec(),
                index: idx as u32,
            },
            canon,
            aut_order: group_order / orbit,
            orbit_size: orbit,
        });
    }
    Ok(ClassTable {
        dim: dim.to_vec(),
        classes: out,
        lookup: lookup_final,
        group_order,
    })
}
