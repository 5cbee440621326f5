//! Content-addressed on-disk store for class tables.
//!
//! File layout (little endian): magic `IHCT`, format version, `p`, the
//! dimension vector, entry length, then every class (canonical entries and
//! orbit size) followed by every representation with its class index.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::classify::{ClassId, ClassTable, IsoClass};

const MAGIC: &[u8; 4] = b"IHCT";
const VERSION: u32 = 1;

pub fn cache_path(dir: &Path, quiver_name: &str, dim: &[u32], p: u32) -> PathBuf {
    let mut h = Sha256::new();
    h.update(quiver_name.as_bytes());
    h.update(format!("|{dim:?}|{p}|v{VERSION}").as_bytes());
    let digest = h.finalize();
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    dir.join(format!("{hex}.ihct"))
}

fn put_u32(w: &mut Vec<u8>, x: u32) {
    w.extend_from_slice(&x.to_le_bytes());
}

pub fn encode(table: &ClassTable, p: u32) -> Vec<u8> {
    let mut w = Vec::new();
    w.extend_from_slice(MAGIC);
    put_u32(&mut w, VERSION);
    put_u32(&mut w, p);
    put_u32(&mut w, table.dim.len() as u32);
    for &d in &table.dim {
        put_u32(&mut w, d);
    }
    let entry_len = table.classes.first().map_or(0, |c| c.canon.len());
    put_u32(&mut w, entry_len as u32);
    w.extend_from_slice(&table.group_order.to_le_bytes());
    put_u32(&mut w, table.classes.len() as u32);
    for c in &table.classes {
        w.extend_from_slice(&c.canon);
        w.extend_from_slice(&c.orbit_size.to_le_bytes());
    }
    let mut reps: Vec<(&Vec<u8>, &u32)> = table.lookup.iter().collect();
    reps.sort();
    w.extend_from_slice(&(reps.len() as u64).to_le_bytes());
    for (r, k) in reps {
        w.extend_from_slice(r);
        put_u32(&mut w, *k);
    }
    w
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> io::Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "truncated class table"));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> io::Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> io::Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn u128(&mut self) -> io::Result<u128> {
        Ok(u128::from_le_bytes(self.take(16)?.try_into().unwrap()))
    }
}

pub fn decode(buf: &[u8], dim: &[u32], p: u32) -> io::Result<ClassTable> {
    let bad = |m: &str| io::Error::new(io::ErrorKind::InvalidData, m.to_string());
    let mut c = Cursor { buf, pos: 0 };
    if c.take(4)? != MAGIC {
        return Err(bad("bad magic"));
    }
    if c.u32()? != VERSION {
        return Err(bad("unsupported version"));
    }
    if c.u32()? != p {
        return Err(bad("field mismatch"));
    }
    let n = c.u32()? as usize;
    let stored: Vec<u32> = (0..n).map(|_| c.u32()).collect::<io::Result<_>>()?;
    if stored != dim {
        return Err(bad("dimension vector mismatch"));
    }
    let entry_len = c.u32()? as usize;
    let group_order = c.u128()?;
    let ncl = c.u32()? as usize;
    let mut classes = Vec::with_capacity(ncl);
    for idx in 0..ncl {
        let canon = c.take(entry_len)?.to_vec();
        let orbit = c.u128()?;
        if orbit == 0 || group_order % orbit != 0 {
            return Err(bad("corrupt orbit size"));
        }
        classes.push(IsoClass {
            id: ClassId {
                dim: dim.to_vec(),
                index: idx as u32,
            },
            canon,
            aut_order: group_order / orbit,
            orbit_size: orbit,
        });
    }
    let nreps = c.u64()? as usize;
    let mut lookup = HashMap::with_capacity(nreps);
    for _ in 0..nreps {
        let r = c.take(entry_len)?.to_vec();
        let k = c.u32()?;
        if k as usize >= ncl {
            return Err(bad("class index out of range"));
        }
        lookup.insert(r, k);
    }
    Ok(ClassTable {
        dim: dim.to_vec(),
        classes,
        lookup,
        group_order,
    })
}

pub fn load(path: &Path, dim: &[u32], p: u32) -> Option<ClassTable> {
    let mut f = fs::File::open(path).ok()?;
    let mut buf = Vec::new();
    f.read_to_end(&mut buf).ok()?;
    decode(&buf, dim, p).ok()
}

/// Write through a temporary file so concurrent readers never see a
/// partial table.
pub fn store(path: &Path, table: &ClassTable, p: u32) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(table, p))?;
    }
    fs::rename(tmp, path)
}
