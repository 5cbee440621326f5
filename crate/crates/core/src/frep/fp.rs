//! Dense linear algebra over a prime field `F_p`, `p < 256`.
//!
//! Vectors are `Vec<u8>`; matrices are row-major.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u8>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<u8>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u32 + a * other.get(k, j) as u32) % p) as u8;
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[u8], p: u32) -> Vec<u8> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                let s: u32 = (0..self.cols).map(|j| self.get(i, j) as u32 * x[j] as u32).sum();
                (s % p) as u8
            })
            .collect()
    }

    pub fn rank(&self, p: u32) -> usize {
        let rows: Vec<Vec<u8>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        span_basis(rows, p).len()
    }

    pub fn inverse(&self, p: u32) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| (i == j) as u8));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, p);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug[i][n + j]);
            }
        }
        Some(out)
    }

    /// Basis of `{x : self x = 0}`.
    pub fn nullspace(&self, p: u32) -> Vec<Vec<u8>> {
        let mut rows: Vec<Vec<u8>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, p);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u8; self.cols];
                x[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = neg(rows[r][f], p);
                }
                x
            })
            .collect()
    }

    /// RREF basis of the column space.
    pub fn column_space(&self, p: u32) -> Vec<Vec<u8>> {
        span_basis((0..self.cols).map(|j| self.column(j)).collect(), p)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

#[inline]
pub fn neg(x: u8, p: u32) -> u8 {
    ((p - x as u32) % p) as u8
}

pub fn inv(x: u8, p: u32) -> u8 {
    assert!(x != 0, "inverse of zero in F_p");
    // p is prime, so x^(p-2) is the inverse
    let mut acc = 1u32;
    let mut base = x as u32 % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u8
}

/// Row-reduce in place; zero rows are dropped. Returns pivot columns.
pub fn rref_in_place(rows: &mut Vec<Vec<u8>>, p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv(rows[r][c], p) as u32;
        for x in rows[r].iter_mut() {
            *x = (*x as u32 * s % p) as u8;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c] as u32;
                for j in 0..ncols {
                    let sub = f * rows[r][j] as u32 % p;
                    rows[k][j] = ((rows[k][j] as u32 + p - sub) % p) as u8;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// RREF basis of the span of `vectors`.
pub fn span_basis(mut vectors: Vec<Vec<u8>>, p: u32) -> Vec<Vec<u8>> {
    vectors.retain(|v| v.iter().any(|&x| x != 0));
    rref_in_place(&mut vectors, p);
    vectors
}

pub fn pivots_of(rref: &[Vec<u8>]) -> Vec<usize> {
    rref.iter()
        .map(|r| r.iter().position(|&x| x != 0).expect("zero row in RREF basis"))
        .collect()
}

/// Subtract from `v` the combination of the RREF basis that clears its
/// pivot positions. Returns the coordinates used and leaves the residue.
pub fn reduce_mod(v: &mut [u8], basis: &[Vec<u8>], pivots: &[usize], p: u32) -> Vec<u8> {
    let mut coords = Vec::with_capacity(basis.len());
    for (b, &pc) in basis.iter().zip(pivots) {
        let c = v[pc];
        coords.push(c);
        if c != 0 {
            for (x, &y) in v.iter_mut().zip(b.iter()) {
                let sub = c as u32 * y as u32 % p;
                *x = ((*x as u32 + p - sub) % p) as u8;
            }
        }
    }
    coords
}

pub fn is_zero_vec(v: &[u8]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// `p^k` as `u128`.
pub fn pow_u128(p: u32, k: u32) -> u128 {
    (p as u128).pow(k)
}

/// `|GL_n(F_p)|`.
pub fn gl_order(n: u32, p: u32) -> u128 {
    let pn = pow_u128(p, n);
    (0..n).map(|i| pn - pow_u128(p, i)).product()
}

/// All subspaces of `F_p^n` of dimension `k`, as RREF bases, in a fixed
/// order.
pub fn subspaces(n: usize, k: usize, p: u32) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for pivots in combinations(n, k) {
        // free slots: row r, column c > pivots[r], c not a pivot
        let mut slots = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    slots.push((r, c));
                }
            }
        }
        let total = (p as usize).pow(slots.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![0u8; n]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            for &(r, c) in &slots {
                rows[r][c] = (code % p as usize) as u8;
                code /= p as usize;
            }
            out.push(rows);
        }
    }
    out
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Generators of `GL_n(F_p)`: a primitive diagonal scaling, an elementary
/// transvection, a transposition and an n-cycle.
pub fn gl_generators(n: usize, p: u32) -> Vec<Mat> {
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    let w = primitive_root(p);
    if w != 1 {
        let mut d = Mat::identity(n);
        d.set(0, 0, w);
        gens.push(d);
    }
    if n >= 2 {
        let mut e = Mat::identity(n);
        e.set(0, 1, 1);
        gens.push(e);
        let mut t = Mat::zeros(n, n);
        t.set(0, 1, 1);
        t.set(1, 0, 1);
        for i in 2..n {
            t.set(i, i, 1);
        }
        gens.push(t);
        if n >= 3 {
            let mut c = Mat::zeros(n, n);
            for i in 0..n {
                c.set((i + 1) % n, i, 1);
            }
            gens.push(c);
        }
    }
    gens
}

pub fn primitive_root(p: u32) -> u8 {
    if p == 2 {
        return 1;
    }
    'cand: for g in 2..p {
        let mut x = 1u32;
        for k in 1..p - 1 {
            x = x * g % p;
            if x == 1 && k < p - 1 {
                continue 'cand;
            }
        }
        return g as u8;
    }
    unreachable!("no primitive root mod {p}")
}
