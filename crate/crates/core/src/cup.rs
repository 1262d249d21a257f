//! Cup products: simplicial, Morse-level, product tables on cohomology bases
//! and the tensor algebra used for zero-divisor cup-length bounds.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainExpr, OrderedComplex, Simplex};
use crate::error::{checked_add, checked_mul, Error, Result};
use crate::linalg::IntegerSolver;
use crate::morse::{MorseComplex, MorseContext};

/// Alexander–Whitney cup product of a `p`-cochain and a `q`-cochain:
/// `(x ⌣ y)(σ) = x(σ_0…σ_p) · y(σ_p…σ_{p+q})`.
pub fn simplicial_cup(x: &ChainExpr, y: &ChainExpr, k: &OrderedComplex) -> Result<ChainExpr> {
    let (Some(p), Some(q)) = (x.dim(), y.dim()) else { return Ok(ChainExpr::zero()) };
    let mut out = ChainExpr::zero_in(p + q);
    if x.is_zero() || y.is_zero() {
        return Ok(out);
    }
    for sigma in k.faces(p + q) {
        let vs = sigma.vertices();
        let front = Simplex::new(vs[..=p].to_vec())?;
        let a = x.coeff(&front);
        if a == 0 {
            continue;
        }
        let back = Simplex::new(vs[p..].to_vec())?;
        let b = y.coeff(&back);
        if b != 0 {
            out.add_term(sigma.clone(), checked_mul(a, b, "cup product")?)?;
        }
    }
    Ok(out)
}

/// Morse-level cup product `Φ̲(Φ̄x ⌣ Φ̄y)` of two Morse cocycles.
pub fn morse_cup(ctx: &MorseContext<'_>, mc: &MorseComplex, x: &ChainExpr, y: &ChainExpr) -> Result<ChainExpr> {
    for (name, c) in [("left factor", x), ("right factor", y)] {
        if !mc.delta(c)?.is_zero() {
            return Err(Error::NotCocycle(format!("{name} {c}")));
        }
    }
    let px = ctx.phi_up(x)?;
    let py = ctx.phi_up(y)?;
    let prod = simplicial_cup(&px, &py, ctx.complex())?;
    let out = ctx.phi_down(&prod)?;
    if !mc.delta(&out)?.is_zero() {
        return Err(Error::Contract("Morse cup product is not a cocycle".into()));
    }
    Ok(out)
}

/// Expresses Morse `p`-cocycles in a basis of cohomology classes, modulo
/// coboundaries, by solving `z = Σ c_i B_i + δw` over the integers.
pub struct ClassSolver {
    solver: IntegerSolver,
    basis_len: usize,
    critical: Vec<Simplex>,
    mc: MorseComplex,
    degree: usize,
}

impl ClassSolver {
    pub fn new(mc: &MorseComplex, degree: usize, basis: &[ChainExpr]) -> Result<Self> {
        let critical = mc.critical.get(degree).cloned().unwrap_or_default();
        let pos: HashMap<&Simplex, usize> = critical.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut columns: Vec<Vec<i64>> = Vec::new();
        for b in basis {
            if b.dim().is_some_and(|d| d != degree) {
                return Err(Error::contract("basis element of the wrong degree"));
            }
            if !mc.delta(b)?.is_zero() {
                return Err(Error::NotCocycle(format!("basis element {b}")));
            }
            let mut col = vec![0i64; critical.len()];
            for (s, c) in b.iter() {
                let i = *pos.get(s).ok_or_else(|| Error::contract(format!("{s} is not critical")))?;
                col[i] = c;
            }
            columns.push(col);
        }
        if degree > 0 {
            let d = mc.coboundary(degree - 1);
            for j in 0..d.cols() {
                let mut col = vec![0i64; critical.len()];
                for (r, v) in d.column(j) {
                    col[r] = v;
                }
                columns.push(col);
            }
        }
        let rows: Vec<Vec<i64>> = (0..critical.len()).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
        let solver = IntegerSolver::new(&rows, columns.len())?;
        Ok(ClassSolver { solver, basis_len: basis.len(), critical, mc: mc.clone(), degree })
    }

    /// Coefficients of the class of `z` in the basis.
    pub fn solve(&self, z: &ChainExpr) -> Result<Vec<i64>> {
        if z.dim().is_some_and(|d| d != self.degree) {
            return Err(Error::contract("cocycle of the wrong degree"));
        }
        if !self.mc.delta(z)?.is_zero() {
            return Err(Error::NotCocycle(format!("{z}")));
        }
        let rhs: Vec<i64> = self.critical.iter().map(|s| z.coeff(s)).collect();
        for (s, _) in z.iter() {
            if self.critical.binary_search(s).is_err() {
                return Err(Error::contract(format!("{s} is not critical")));
            }
        }
        match self.solver.solve(&rhs)? {
            Some(u) => Ok(u[..self.basis_len].to_vec()),
            None => Err(Error::NotInSpan),
        }
    }
}

/// One-shot form of [`ClassSolver::solve`].
pub fn class_in_basis(mc: &MorseComplex, z: &ChainExpr, basis: &[ChainExpr]) -> Result<Vec<i64>> {
    let degree = z.dim().or_else(|| basis.iter().find_map(ChainExpr::dim)).unwrap_or(0);
    ClassSolver::new(mc, degree, basis)?.solve(z)
}

/// Products of degree-1 basis classes, expressed in a degree-2 basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupTable {
    pub basis: Vec<String>,
    pub target: Vec<String>,
    /// `products[i][j]` = coefficients of `basis[i] ⌣ basis[j]`.
    pub products: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct CupTableJson {
    basis: Vec<String>,
    target: Vec<String>,
    products: BTreeMap<String, Vec<i64>>,
}

impl CupTable {
    /// Computes all products of the named degree-1 cocycles and expresses
    /// them in the named degree-2 basis.
    pub fn compute(
        ctx: &MorseContext<'_>,
        mc: &MorseComplex,
        basis: &[(String, ChainExpr)],
        target: &[(String, ChainExpr)],
    ) -> Result<Self> {
        let t: Vec<ChainExpr> = target.iter().map(|(_, c)| c.clone()).collect();
        let solver = ClassSolver::new(mc, 2, &t)?;
        let ups: Vec<ChainExpr> = basis.iter().map(|(_, c)| ctx.phi_up(c)).collect::<Result<_>>()?;
        for (name, c) in basis {
            if !mc.delta(c)?.is_zero() {
                return Err(Error::NotCocycle(name.clone()));
            }
        }
        let mut products = Vec::with_capacity(basis.len());
        for x in &ups {
            let mut row = Vec::with_capacity(basis.len());
            for y in &ups {
                let prod = ctx.phi_down(&simplicial_cup(x, y, ctx.complex())?)?;
                let z = if prod.is_zero() { ChainExpr::zero_in(2) } else { prod };
                row.push(solver.solve(&z)?);
            }
            products.push(row);
        }
        Ok(CupTable {
            basis: basis.iter().map(|(n, _)| n.clone()).collect(),
            target: target.iter().map(|(n, _)| n.clone()).collect(),
            products,
        })
    }

    pub fn product(&self, i: usize, j: usize) -> &[i64] {
        &self.products[i][j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|n| n == name)
    }

    /// Product of two named classes.
    pub fn product_by_name(&self, x: &str, y: &str) -> Option<&[i64]> {
        Some(self.product(self.index_of(x)?, self.index_of(y)?))
    }

    /// Product of two integer combinations of basis classes.
    pub fn product_of(&self, x: &[i64], y: &[i64]) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.target.len()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = checked_mul(a, b, "cup table")?;
                for (t, &c) in self.products[i][j].iter().enumerate() {
                    out[t] = checked_add(out[t], checked_mul(ab, c, "cup table")?, "cup table")?;
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut products = BTreeMap::new();
        for (i, x) in self.basis.iter().enumerate() {
            for (j, y) in self.basis.iter().enumerate() {
                products.insert(format!("{x},{y}"), self.products[i][j].clone());
            }
        }
        serde_json::to_value(CupTableJson { basis: self.basis.clone(), target: self.target.clone(), products })
            .expect("serializable")
    }

    /// Renders a coefficient vector as a combination of target names.
    pub fn render_value(&self, v: &[i64]) -> String {
        render_combination(v, &self.target)
    }

    /// Aligned text matrix, rows times columns.
    pub fn render_text(&self) -> String {
        let cells: Vec<Vec<String>> =
            self.products.iter().map(|row| row.iter().map(|v| self.render_value(v)).collect()).collect();
        let head_w = self.basis.iter().map(String::len).max().unwrap_or(0);
        let mut widths: Vec<usize> = self.basis.iter().map(String::len).collect();
        for row in &cells {
            for (j, c) in row.iter().enumerate() {
                widths[j] = widths[j].max(c.len());
            }
        }
        let mut out = String::new();
        let _ = write!(out, "{:head_w$}", "");
        for (j, n) in self.basis.iter().enumerate() {
            let _ = write!(out, "  {:>w$}", n, w = widths[j]);
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            let _ = write!(out, "{:head_w$}", self.basis[i]);
            for (j, c) in row.iter().enumerate() {
                let _ = write!(out, "  {:>w$}", c, w = widths[j]);
            }
            out.push('\n');
        }
        out
    }
}

/// `2a-b`-style rendering of an integer vector over named generators.
pub fn render_combination(v: &[i64], names: &[String]) -> String {
    let mut out = String::new();
    for (c, n) in v.iter().zip(names) {
        if *c == 0 {
            continue;
        }
        if *c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if c.abs() != 1 {
            let _ = write!(out, "{}", c.abs());
        }
        out.push_str(n);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A graded-commutative ring presented by a basis in each degree and
/// structure constants for products of positive-degree basis elements.
///
/// Degree 0 is spanned by the unit. Coefficients are integers, reduced modulo
/// `modulus` when it is non-zero.
#[derive(Debug, Clone)]
pub struct GradedRing {
    dims: Vec<usize>,
    modulus: i64,
    table: HashMap<((usize, usize), (usize, usize)), Vec<i64>>,
}

/// A basis element of [`GradedRing`]: `(degree, index)`.
pub type Basis = (usize, usize);

impl GradedRing {
    /// `dims[p]` is the rank in degree `p` (`dims[0]` must be 1).
    pub fn new(dims: Vec<usize>, modulus: i64) -> Result<Self> {
        if dims.first() != Some(&1) {
            return Err(Error::contract("degree 0 must be spanned by the unit"));
        }
        if modulus < 0 {
            return Err(Error::contract("modulus must be non-negative"));
        }
        Ok(GradedRing { dims, modulus, table: HashMap::new() })
    }

    /// Ring whose degree-1 products are given by a cup table.
    pub fn from_cup_table(t: &CupTable, modulus: i64) -> Result<Self> {
        let mut r = GradedRing::new(vec![1, t.basis.len(), t.target.len()], modulus)?;
        for i in 0..t.basis.len() {
            for j in 0..t.basis.len() {
                r.set_product((1, i), (1, j), t.product(i, j).to_vec())?;
            }
        }
        Ok(r)
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn reduce(&self, c: i64) -> i64 {
        if self.modulus == 0 {
            c
        } else {
            c.rem_euclid(self.modulus)
        }
    }

    pub fn set_product(&mut self, a: Basis, b: Basis, value: Vec<i64>) -> Result<()> {
        let deg = a.0 + b.0;
        if deg >= self.dims.len() || value.len() != self.dims[deg] {
            return Err(Error::contract("product value has the wrong shape"));
        }
        let v = value.into_iter().map(|c| self.reduce(c)).collect();
        self.table.insert((a, b), v);
        Ok(())
    }

    /// Product of two basis elements as `(basis element, coefficient)` pairs.
    pub fn mul_basis(&self, a: Basis, b: Basis) -> Vec<(Basis, i64)> {
        if a.0 == 0 {
            return vec![(b, 1)];
        }
        if b.0 == 0 {
            return vec![(a, 1)];
        }
        let deg = a.0 + b.0;
        if deg >= self.dims.len() {
            return Vec::new();
        }
        match self.table.get(&(a, b)) {
            Some(v) => v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| ((deg, i), *c)).collect(),
            None => Vec::new(),
        }
    }
}

/// An element of the `s`-fold tensor power of a [`GradedRing`], as a sum of
/// pure tensors of basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorClass {
    slots: usize,
    terms: BTreeMap<Vec<Basis>, i64>,
}

impl TensorClass {
    pub fn one(slots: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(0, 0); slots], 1);
        TensorClass { slots, terms }
    }

    pub fn zero(slots: usize) -> Self {
        TensorClass { slots, terms: BTreeMap::new() }
    }

    /// `1 ⊗ ⋯ ⊗ x ⊗ ⋯ ⊗ 1` with `x` (a combination in degree `deg`) in `slot`.
    pub fn in_slot(slots: usize, slot: usize, deg: usize, x: &[i64]) -> Self {
        let mut t = TensorClass::zero(slots);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                let mut key = vec![(0, 0); slots];
                key[slot] = (deg, i);
                t.terms.insert(key, c);
            }
        }
        t
    }

    /// The zero-divisor `x_(i) - x_(j)`; over Z/2 this is `x_(i) + x_(j)`.
    pub fn zero_divisor(slots: usize, i: usize, j: usize, deg: usize, x: &[i64]) -> Self {
        let a = TensorClass::in_slot(slots, i, deg, x);
        let b = TensorClass::in_slot(slots, j, deg, x);
        a.add_scaled(&b, -1).expect("small coefficients")
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Basis>, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&self, other: &TensorClass, k: i64) -> Result<TensorClass> {
        let mut out = self.clone();
        for (key, v) in &other.terms {
            let e = out.terms.entry(key.clone()).or_insert(0);
            *e = checked_add(*e, checked_mul(*v, k, "tensor sum")?, "tensor sum")?;
            if *e == 0 {
                out.terms.remove(key);
            }
        }
        Ok(out)
    }

    fn reduced(mut self, ring: &GradedRing) -> TensorClass {
        for v in self.terms.values_mut() {
            *v = ring.reduce(*v);
        }
        self.terms.retain(|_, v| *v != 0);
        self
    }

    /// Product in `H^{⊗s}` with the Koszul sign
    /// `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac ⊗ bd`.
    pub fn mul(&self, other: &TensorClass, ring: &GradedRing) -> Result<TensorClass> {
        if self.slots != other.slots {
            return Err(Error::contract("tensor factors with different numbers of slots"));
        }
        let mut acc: BTreeMap<Vec<Basis>, i64> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                // Sign from moving each b_j past a_{j+1..}.
                let mut swaps = 0usize;
                for j in 0..self.slots {
                    let later: usize = a[j + 1..].iter().map(|x| x.0).sum();
                    swaps += b[j].0 * later;
                }
                let sign = if swaps % 2 == 0 { 1 } else { -1 };
                let mut partial: Vec<(Vec<Basis>, i64)> = vec![(Vec::with_capacity(self.slots), 1)];
                for j in 0..self.slots {
                    let prods = ring.mul_basis(a[j], b[j]);
                    let mut next = Vec::with_capacity(partial.len() * prods.len());
                    for (key, c) in &partial {
                        for (e, d) in &prods {
                            let mut k2 = key.clone();
                            k2.push(*e);
                            next.push((k2, checked_mul(*c, *d, "tensor product")?));
                        }
                    }
                    partial = next;
                }
                let base = checked_mul(checked_mul(*ca, *cb, "tensor product")?, sign, "tensor product")?;
                for (key, c) in partial {
                    let e = acc.entry(key).or_insert(0);
                    *e = ring.reduce(checked_add(*e, checked_mul(base, c, "tensor product")?, "tensor product")?);
                }
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(TensorClass { slots: self.slots, terms: acc }.reduced(ring))
    }

    /// Image under the diagonal: the product of the slots, in order.
    pub fn diagonal(&self, ring: &GradedRing) -> Result<BTreeMap<Basis, i64>> {
        let mut out: BTreeMap<Basis, i64> = BTreeMap::new();
        for (key, c) in &self.terms {
            let mut partial: Vec<(Basis, i64)> = vec![((0, 0), *c)];
            for e in key {
                let mut next = Vec::new();
                for (b, k) in &partial {
                    for (r, d) in ring.mul_basis(*b, *e) {
                        next.push((r, checked_mul(*k, d, "diagonal")?));
                    }
                }
                partial = next;
            }
            for (b, k) in partial {
                let e = out.entry(b).or_insert(0);
                *e = ring.reduce(checked_add(*e, k, "diagonal")?);
            }
        }
        out.retain(|_, v| *v != 0);
        Ok(out)
    }

    /// Human-readable rendering using per-degree basis names.
    pub fn render(&self, names: &[Vec<String>]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (key, c) in &self.terms {
            let slots: Vec<String> =
                key.iter().map(|(d, i)| if *d == 0 { "1".to_string() } else { names[*d][*i].clone() }).collect();
            let coeff = match *c {
                1 => String::new(),
                -1 => "-".into(),
                n => format!("{n}·"),
            };
            parts.push(format!("{coeff}{}", slots.join("⊗")));
        }
        parts.join(" + ")
    }
}

/// Product of several tensor classes.
pub fn tensor_product(classes: &[TensorClass], ring: &GradedRing) -> Result<TensorClass> {
    let slots = classes.first().map_or(1, TensorClass::slots);
    let mut acc = TensorClass::one(slots);
    for c in classes {
        acc = acc.mul(c, ring)?;
    }
    Ok(acc)
}

/// Length of the longest non-zero product of distinct candidates.
///
/// Every candidate must be a zero divisor (vanish under the diagonal);
/// otherwise the call fails with [`Error::NotZeroDivisor`].
pub fn zcl_lower_bound(ring: &GradedRing, candidates: &[TensorClass]) -> Result<usize> {
    for (i, c) in candidates.iter().enumerate() {
        if !c.diagonal(ring)?.is_empty() {
            return Err(Error::NotZeroDivisor(format!("candidate {i}")));
        }
    }
    let slots = candidates.first().map_or(1, TensorClass::slots);
    let mut best = 0;
    search(ring, candidates, 0, &TensorClass::one(slots), 0, &mut best)?;
    Ok(best)
}

fn search(
    ring: &GradedRing,
    cands: &[TensorClass],
    start: usize,
    acc: &TensorClass,
    len: usize,
    best: &mut usize,
) -> Result<()> {
    *best = (*best).max(len);
    if *best == cands.len() {
        return Ok(());
    }
    for i in start..cands.len() {
        if len + (cands.len() - i) <= *best {
            break;
        }
        let next = acc.mul(&cands[i], ring)?;
        if !next.is_zero() {
            search(ring, cands, i + 1, &next, len + 1, best)?;
        }
    }
    Ok(())
}
