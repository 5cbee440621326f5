//! Finite-field representations of bound quivers: enumeration,
//! isomorphism classification, Hom/Ext, and eps-homology.

pub mod cache;
pub mod classify;
pub mod enumerate;
pub mod ext;
pub mod fp;
pub mod hom;
pub mod homology;
pub mod rep;
pub mod sub;

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

pub use classify::{ClassId, ClassTable, IsoClass};
pub use enumerate::Budget;
pub use fp::Mat;
pub use rep::Rep;

use crate::error::{Error, Result};
use crate::iquiver::BoundQuiver;

/// Lazily built class tables for one bound quiver over `F_p`.
pub struct ModuleTable {
    pub bq: BoundQuiver,
    pub p: u32,
    pub budget: Budget,
    tables: RwLock<HashMap<Vec<u32>, Arc<ClassTable>>>,
    cache_dir: Option<PathBuf>,
    signature: String,
}

impl ModuleTable {
    /// Uses `IHALL_CACHE_DIR` for persistent tables when it is set.
    pub fn new(bq: BoundQuiver, p: u32, budget: Budget) -> Result<ModuleTable> {
        let dir = std::env::var_os("IHALL_CACHE_DIR").map(PathBuf::from);
        Self::with_cache_dir(bq, p, budget, dir)
    }

    pub fn with_cache_dir(bq: BoundQuiver, p: u32, budget: Budget, cache_dir: Option<PathBuf>) -> Result<ModuleTable> {
        if !matches!(p, 2 | 3 | 5 | 7) {
            return Err(Error::Domain(format!("unsupported field size {p}; expected a prime in {{2,3,5,7}}")));
        }
        let arrows: Vec<String> = bq
            .arrows
            .iter()
            .map(|a| format!("{}:{}>{}", a.label, a.source, a.target))
            .collect();
        let rels: Vec<String> = bq.relations.iter().map(|r| bq.relation_string(r)).collect();
        let signature = format!("{}|{}|{}", bq.name, arrows.join(","), rels.join(","));
        Ok(ModuleTable {
            bq,
            p,
            budget,
            tables: RwLock::new(HashMap::new()),
            cache_dir,
            signature,
        })
    }

    pub fn n(&self) -> usize {
        self.bq.n
    }

    pub fn table(&self, dim: &[u32]) -> Result<Arc<ClassTable>> {
        if dim.len() != self.bq.n {
            return Err(Error::Domain(format!("dimension vector {dim:?} has the wrong length")));
        }
        if let Some(t) = self.tables.read().unwrap().get(dim) {
            return Ok(t.clone());
        }
        let path = self
            .cache_dir
            .as_ref()
            .map(|d| cache::cache_path(d, &self.signature, dim, self.p));
        let table = match path.as_ref().and_then(|pth| cache::load(pth, dim, self.p)) {
            Some(t) => t,
            None => {
                let reps = enumerate::enumerate_flat(&self.bq, dim, self.p, &self.budget)?;
                let t = classify::classify_iso(&self.bq, dim, self.p, reps)?;
                if let Some(pth) = &path {
                    // a failed write only costs a recomputation later
                    let _ = cache::store(pth, &t, self.p);
                }
                t
            }
        };
        let t = Arc::new(table);
        self.tables.write().unwrap().insert(dim.to_vec(), t.clone());
        Ok(t)
    }

    pub fn classes(&self, dim: &[u32]) -> Result<Vec<IsoClass>> {
        Ok(self.table(dim)?.classes.clone())
    }

    pub fn class_of(&self, m: &Rep) -> Result<ClassId> {
        let t = self.table(&m.dim)?;
        match t.lookup.get(&m.flatten()) {
            Some(&k) => Ok(t.classes[k as usize].id.clone()),
            None => Err(Error::Internal(format!(
                "representation at {:?} is not in the enumerated module set",
                m.dim
            ))),
        }
    }

    pub fn iso_class(&self, id: &ClassId) -> Result<IsoClass> {
        let t = self.table(&id.dim)?;
        t.classes
            .get(id.index as usize)
            .cloned()
            .ok_or_else(|| Error::Domain(format!("no class #{} at {:?}", id.index, id.dim)))
    }

    pub fn rep_of(&self, id: &ClassId) -> Result<Rep> {
        let c = self.iso_class(id)?;
        Ok(Rep::from_flat(&self.bq, &id.dim, &c.canon))
    }

    pub fn aut_order(&self, id: &ClassId) -> Result<u128> {
        Ok(self.iso_class(id)?.aut_order)
    }

    pub fn count_hom(&self, x: &ClassId, y: &ClassId) -> Result<u128> {
        let d = hom::hom_dim(&self.bq, &self.rep_of(x)?, &self.rep_of(y)?, self.p);
        Ok(fp::pow_u128(self.p, d))
    }

    /// `F^L_{X,Y}`: number of subrepresentations `U` of `L` with `U ~ Y`
    /// and `L/U ~ X`.
    pub fn hall_number(&self, l: &ClassId, x: &ClassId, y: &ClassId) -> Result<u128> {
        let expect: Vec<u32> = x.dim.iter().zip(&y.dim).map(|(a, b)| a + b).collect();
        if l.dim != expect {
            return Ok(0);
        }
        let lr = self.rep_of(l)?;
        let mut count = 0;
        for sub in sub::invariant_subspaces(&self.bq, &lr, &y.dim, self.p) {
            let u = sub::restrict(&self.bq, &lr, &sub, self.p);
            if &self.class_of(&u)? != y {
                continue;
            }
            let qt = sub::quotient(&self.bq, &lr, &sub, self.p);
            if &self.class_of(&qt)? == x {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Number of cocycles `phi` in `Z(X, Y)` with middle term in each class,
    /// together with `dim Z`. Dividing by `q^{sum x_i y_i}` gives
    /// `|Ext^1(X,Y)_L| / |Hom(X,Y)|`.
    pub fn cocycle_middles(&self, x: &Rep, y: &Rep) -> Result<(BTreeMap<ClassId, u128>, u32)> {
        let z = ext::cocycles(&self.bq, x, y, self.p);
        let mid: Vec<u32> = x.dim.iter().zip(&y.dim).map(|(a, b)| a + b).collect();
        let table = self.table(&mid)?;
        let mut counts: BTreeMap<ClassId, u128> = BTreeMap::new();
        let mut buf: HashMap<u32, u128> = HashMap::new();
        for phi in z.elements(self.p) {
            let l = z.middle(&self.bq, x, y, &phi);
            let k = *table.lookup.get(&l.flatten()).ok_or_else(|| {
                Error::Internal(format!("extension middle at {mid:?} is not in the enumerated set"))
            })?;
            *buf.entry(k).or_default() += 1;
        }
        for (k, c) in buf {
            counts.insert(table.classes[k as usize].id.clone(), c);
        }
        Ok((counts, z.dim()))
    }
}
