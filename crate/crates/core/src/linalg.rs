//! Integer linear algebra: Smith normal form invariants, ranks modulo a prime
//! and exact solving of integer linear systems.
//!
//! All arithmetic is checked; overflow surfaces as [`Error::Overflow`].

use std::collections::{BTreeMap, HashMap};

use crate::error::{checked_add, checked_mul, Error, Result};

/// Column-major sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![BTreeMap::new(); cols] }
    }

    pub fn from_dense(d: &[Vec<i64>], cols: usize) -> Self {
        let mut m = SparseMatrix::new(d.len(), cols);
        for (i, row) in d.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols.len(), "index out of range");
        if v == 0 {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.cols[c].get(&r).copied().unwrap_or(0)
    }

    pub fn column(&self, c: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.cols[c].iter().map(|(r, v)| (*r, *v))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// Non-zero entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                out.push((*r, c, *v));
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols(), self.rows);
        for (r, c, v) in self.triplets() {
            t.set(c, r, v);
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols()]; self.rows];
        for (r, c, v) in self.triplets() {
            d[r][c] = v;
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// Matrix product, checked.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols() != other.rows {
            return Err(Error::contract("matrix product with mismatched shapes"));
        }
        let mut out = SparseMatrix::new(self.rows, other.cols());
        for (c, col) in other.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (&k, &b) in col {
                for (&r, &a) in &self.cols[k] {
                    let e = acc.entry(r).or_insert(0);
                    *e = checked_add(*e, checked_mul(a, b, "matrix product")?, "matrix product")?;
                }
            }
            acc.retain(|_, v| *v != 0);
            out.cols[c] = acc;
        }
        Ok(out)
    }

    /// `self * x` for a dense vector.
    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.cols() {
            return Err(Error::contract("vector length does not match matrix"));
        }
        let mut y = vec![0i64; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            if x[c] == 0 {
                continue;
            }
            for (&r, &a) in col {
                y[r] = checked_add(y[r], checked_mul(a, x[c], "matrix-vector product")?, "matrix-vector product")?;
            }
        }
        Ok(y)
    }
}

/// Row-oriented working copy used by the eliminators.
struct Work {
    rows: Vec<HashMap<usize, i64>>,
    col_rows: Vec<Vec<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl Work {
    fn new(m: &SparseMatrix, modulus: Option<i64>) -> Self {
        let mut rows = vec![HashMap::new(); m.rows()];
        let mut col_rows = vec![Vec::new(); m.cols()];
        for (r, c, v) in m.triplets() {
            let v = match modulus {
                Some(p) => v.rem_euclid(p),
                None => v,
            };
            if v != 0 {
                rows[r].insert(c, v);
                col_rows[c].push(r);
            }
        }
        Work { row_alive: vec![true; m.rows()], col_alive: vec![true; m.cols()], rows, col_rows }
    }

    /// Live rows with a non-zero entry in column `c` (lazily cleans the index).
    fn rows_in(&mut self, c: usize) -> Vec<usize> {
        let rows = &self.rows;
        let alive = &self.row_alive;
        let list = &mut self.col_rows[c];
        list.sort_unstable();
        list.dedup();
        list.retain(|&r| alive[r] && rows[r].contains_key(&c));
        list.clone()
    }

    /// Eliminates with pivot `(pr, c)` whose entry is a unit, then drops that
    /// row and column. With a modulus the arithmetic is in Z/p.
    fn eliminate(&mut self, pr: usize, c: usize, modulus: Option<i64>) -> Result<()> {
        let pivot = self.rows[pr][&c];
        let inv = match modulus {
            Some(p) => mod_inverse(pivot, p),
            None => pivot, // ±1 is its own inverse
        };
        let prow: Vec<(usize, i64)> = self.rows[pr].iter().map(|(k, v)| (*k, *v)).collect();
        for r in self.rows_in(c) {
            if r == pr {
                continue;
            }
            let a = self.rows[r][&c];
            let f = match modulus {
                Some(p) => (a as i128 * inv as i128).rem_euclid(p as i128) as i64,
                None => checked_mul(a, inv, "elimination")?,
            };
            for &(k, v) in &prow {
                let row = &mut self.rows[r];
                let old = row.get(&k).copied().unwrap_or(0);
                let new = match modulus {
                    Some(p) => (old as i128 - f as i128 * v as i128).rem_euclid(p as i128) as i64,
                    None => checked_add(old, -checked_mul(f, v, "elimination")?, "elimination")?,
                };
                if new == 0 {
                    row.remove(&k);
                } else {
                    if old == 0 {
                        self.col_rows[k].push(r);
                    }
                    row.insert(k, new);
                }
            }
        }
        self.row_alive[pr] = false;
        self.col_alive[c] = false;
        self.rows[pr].clear();
        Ok(())
    }

    /// One sweep of unit pivots. Within a column the shortest eligible row wins.
    fn sweep(&mut self, modulus: Option<i64>) -> Result<usize> {
        let mut count = 0;
        for c in 0..self.col_alive.len() {
            if !self.col_alive[c] {
                continue;
            }
            let candidates = self.rows_in(c);
            if candidates.is_empty() {
                self.col_alive[c] = false;
                continue;
            }
            let best = candidates
                .iter()
                .copied()
                .filter(|&r| {
                    let v = self.rows[r][&c];
                    modulus.is_some() || v == 1 || v == -1
                })
                .min_by_key(|&r| self.rows[r].len());
            if let Some(r) = best {
                self.eliminate(r, c, modulus)?;
                count += 1;
            }
        }
        Ok(count)
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a.rem_euclid(p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as i64
}

fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of `m` over the field with `p` elements.
pub fn rank_mod_p(m: &SparseMatrix, p: i64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::contract(format!("{p} is not a prime")));
    }
    let mut w = Work::new(m, Some(p));
    let mut rank = 0;
    loop {
        let n = w.sweep(Some(p))?;
        rank += n;
        if n == 0 {
            return Ok(rank);
        }
    }
}

/// Non-zero invariant factors of the Smith normal form of `m`, ascending and
/// positive, each dividing the next. Their count is the rank over Q.
pub fn invariant_factors(m: &SparseMatrix) -> Result<Vec<i64>> {
    let mut w = Work::new(m, None);
    let mut units = 0;
    loop {
        let n = w.sweep(None)?;
        units += n;
        if n == 0 {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..w.rows.len()).filter(|&r| w.row_alive[r] && !w.rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..w.col_alive.len()).filter(|&c| w.col_alive[c]).collect();
    let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut dense = vec![vec![0i64; live_cols.len()]; live_rows.len()];
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in &w.rows[r] {
            if let Some(&j) = col_pos.get(c) {
                dense[i][j] = *v;
            }
        }
    }
    let mut out = vec![1i64; units];
    out.extend(dense_smith_diagonal(dense)?);
    out.sort_unstable();
    Ok(out)
}

/// Rank over Q.
pub fn rank(m: &SparseMatrix) -> Result<usize> {
    Ok(invariant_factors(m)?.len())
}

/// Diagonal of the Smith form of a dense matrix (non-zero entries only,
/// normalised to a divisibility chain).
fn dense_smith_diagonal(mut a: Vec<Vec<i64>>) -> Result<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map(Vec::len).unwrap_or(0);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Choose the non-zero entry of least magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].unsigned_abs() < a[bi][bj].unsigned_abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(p);
                    for j in t..cols {
                        a[i][j] = checked_add(a[i][j], -checked_mul(q, a[t][j], "smith form")?, "smith form")?;
                    }
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(p);
                    for row in a.iter_mut().skip(t) {
                        row[j] = checked_add(row[j], -checked_mul(q, row[t], "smith form")?, "smith form")?;
                    }
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            // Move the smallest remaining entry in row/column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].unsigned_abs() < a[best.0][best.1].unsigned_abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].unsigned_abs() < a[best.0][best.1].unsigned_abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    // Normalise to a divisibility chain.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd(diag[i], diag[j]);
            if g != diag[i] {
                let l = checked_mul(diag[i] / g, diag[j], "smith form")?;
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    Ok(diag)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Solver for `A u = z` over the integers with `A` fixed.
///
/// `A` is brought to column echelon form `H = A U` with `U` unimodular; each
/// right-hand side is then handled by forward substitution.
#[derive(Debug, Clone)]
pub struct IntegerSolver {
    rows: usize,
    h: Vec<Vec<i64>>,
    u: Vec<Vec<i64>>,
    pivots: Vec<(usize, usize)>,
}

impl IntegerSolver {
    /// `a` is given as dense rows, each of length `cols`.
    pub fn new(a: &[Vec<i64>], cols: usize) -> Result<Self> {
        let rows = a.len();
        let mut h: Vec<Vec<i64>> = a.to_vec();
        let mut u: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| i64::from(i == j)).collect()).collect();
        let mut pivots = Vec::new();
        let mut c = 0;
        for r in 0..rows {
            if c == cols {
                break;
            }
            loop {
                // Smallest non-zero entry of row r among columns c.. goes to column c.
                let best = (c..cols).filter(|&j| h[r][j] != 0).min_by_key(|&j| h[r][j].unsigned_abs());
                let Some(b) = best else { break };
                if b != c {
                    swap_cols(&mut h, c, b);
                    swap_cols(&mut u, c, b);
                }
                let mut done = true;
                for j in c + 1..cols {
                    if h[r][j] != 0 {
                        let q = h[r][j].div_euclid(h[r][c]);
                        col_axpy(&mut h, j, c, -q)?;
                        col_axpy(&mut u, j, c, -q)?;
                        if h[r][j] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if h[r][c] != 0 {
                pivots.push((r, c));
                c += 1;
            }
        }
        Ok(IntegerSolver { rows, h, u, pivots })
    }

    /// Integer solution of `A u = z`, or `None` if there is none.
    pub fn solve(&self, z: &[i64]) -> Result<Option<Vec<i64>>> {
        if z.len() != self.rows {
            return Err(Error::contract("right-hand side has the wrong length"));
        }
        let cols = self.u.len();
        let mut resid = z.to_vec();
        let mut w = vec![0i64; cols];
        for &(r, c) in &self.pivots {
            let p = self.h[r][c];
            if resid[r] % p != 0 {
                return Ok(None);
            }
            let q = resid[r] / p;
            w[c] = q;
            for (i, row) in self.h.iter().enumerate() {
                if row[c] != 0 {
                    resid[i] = checked_add(resid[i], -checked_mul(q, row[c], "integer solve")?, "integer solve")?;
                }
            }
        }
        if resid.iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let mut out = vec![0i64; cols];
        for (i, row) in self.u.iter().enumerate() {
            let mut acc = 0i64;
            for (j, &x) in row.iter().enumerate() {
                if w[j] != 0 && x != 0 {
                    acc = checked_add(acc, checked_mul(x, w[j], "integer solve")?, "integer solve")?;
                }
            }
            out[i] = acc;
        }
        Ok(Some(out))
    }
}

fn swap_cols(m: &mut [Vec<i64>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Column `dst += k * column src`.
fn col_axpy(m: &mut [Vec<i64>], dst: usize, src: usize, k: i64) -> Result<()> {
    for row in m.iter_mut() {
        if row[src] != 0 {
            row[dst] = checked_add(row[dst], checked_mul(k, row[src], "column operation")?, "column operation")?;
        }
    }
    Ok(())
}
