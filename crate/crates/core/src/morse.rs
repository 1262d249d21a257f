//! Gradient paths, the Morse chain complex and the comparison maps between
//! Morse and simplicial cochains.
//!
//! Path multiplicity sums are never computed by listing paths. For a fixed
//! dimension the pairs of a gradient field induce a directed acyclic graph on
//! the faces of that dimension (one step of an upper or lower path), and the
//! sums are dynamic programs over a topological order of that graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainExpr, OrderedComplex, Simplex};
use crate::error::{checked_add, checked_mul, Error, Result};
use crate::gradient::{GradientField, Role};
use crate::linalg::{invariant_factors, rank_mod_p, SparseMatrix};

/// The Morse chain complex: critical faces and boundary matrices.
///
/// `boundary[p]` has rows indexed by the critical `(p-1)`-faces and columns by
/// the critical `p`-faces, both in lex order. `boundary[0]` has no rows.
#[derive(Debug, Clone)]
pub struct MorseComplex {
    pub critical: Vec<Vec<Simplex>>,
    pub boundary: Vec<SparseMatrix>,
}

impl MorseComplex {
    /// Sparse triplet export, one `dim row col value` line per non-zero entry.
    pub fn to_triplets(&self) -> String {
        let mut out = String::new();
        for (p, m) in self.boundary.iter().enumerate() {
            for (r, c, v) in m.triplets() {
                let _ = writeln!(out, "{p} {r} {c} {v}");
            }
        }
        out
    }

    /// Matrix of the Morse coboundary `μ^p → μ^{p+1}` (the transpose of `∂_{p+1}`).
    pub fn coboundary(&self, p: usize) -> SparseMatrix {
        match self.boundary.get(p + 1) {
            Some(m) => m.transpose(),
            None => SparseMatrix::new(0, self.critical.get(p).map_or(0, Vec::len)),
        }
    }

    pub fn homology(&self) -> Result<BettiProfile> {
        let dims: Vec<usize> = self.critical.iter().map(Vec::len).collect();
        homology_of(&dims, &self.boundary)
    }

    pub fn betti_mod_p(&self, p: i64) -> Result<Vec<usize>> {
        let dims: Vec<usize> = self.critical.iter().map(Vec::len).collect();
        betti_mod_p_of(&dims, &self.boundary, p)
    }

    /// Position of a critical face in its dimension's list.
    pub fn critical_index(&self, s: &Simplex) -> Option<usize> {
        self.critical.get(s.dim())?.binary_search(s).ok()
    }

    /// Morse coboundary of a Morse cochain (keys are critical faces).
    pub fn delta(&self, x: &ChainExpr) -> Result<ChainExpr> {
        let Some(p) = x.dim() else { return Ok(ChainExpr::zero()) };
        let mut out = ChainExpr::zero_in(p + 1);
        let Some(m) = self.boundary.get(p + 1) else { return Ok(out) };
        for (col, beta) in self.critical[p + 1].iter().enumerate() {
            let mut acc = 0i64;
            for (row, v) in m.column(col) {
                let c = x.coeff(&self.critical[p][row]);
                if c != 0 {
                    acc = checked_add(acc, checked_mul(c, v, "morse coboundary")?, "morse coboundary")?;
                }
            }
            out.add_term(beta.clone(), acc)?;
        }
        Ok(out)
    }
}

/// Betti numbers and torsion coefficients of a chain complex over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<i64>>,
}

impl BettiProfile {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(p, b)| if p % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }
}

/// Integral homology of the chain complex with the given chain ranks and
/// boundary matrices (`boundary[p] : C_p → C_{p-1}`).
pub fn homology_of(dims: &[usize], boundary: &[SparseMatrix]) -> Result<BettiProfile> {
    let n = dims.len();
    let mut factors: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    for p in 0..=n {
        factors.push(match boundary.get(p) {
            Some(m) if p > 0 => invariant_factors(m)?,
            _ => Vec::new(),
        });
    }
    let mut betti = Vec::with_capacity(n);
    let mut torsion = Vec::with_capacity(n);
    for p in 0..n {
        betti.push(dims[p] - factors[p].len() - factors[p + 1].len());
        torsion.push(factors[p + 1].iter().copied().filter(|&d| d > 1).collect());
    }
    Ok(BettiProfile { betti, torsion })
}

/// Betti numbers with coefficients in the field with `p` elements.
pub fn betti_mod_p_of(dims: &[usize], boundary: &[SparseMatrix], p: i64) -> Result<Vec<usize>> {
    let n = dims.len();
    let mut ranks = vec![0usize; n + 1];
    for q in 1..n {
        if let Some(m) = boundary.get(q) {
            ranks[q] = rank_mod_p(m, p)?;
        }
    }
    Ok((0..n).map(|q| dims[q] - ranks[q] - ranks[q + 1]).collect())
}

/// Simplicial boundary matrices of `k`, indexed like [`MorseComplex::boundary`].
pub fn simplicial_boundaries(k: &OrderedComplex) -> Vec<SparseMatrix> {
    (0..k.levels()).map(|p| k.boundary_matrix(p)).collect()
}

/// Integral homology of the simplicial chain complex of `k`.
pub fn simplicial_homology(k: &OrderedComplex) -> Result<BettiProfile> {
    homology_of(&k.f_vector(), &simplicial_boundaries(k))
}

pub fn simplicial_betti_mod_p(k: &OrderedComplex, p: i64) -> Result<Vec<usize>> {
    betti_mod_p_of(&k.f_vector(), &simplicial_boundaries(k), p)
}

/// Alternating sum of face counts.
pub fn euler_characteristic(k: &OrderedComplex) -> i64 {
    k.euler_characteristic()
}

type Sparse = BTreeMap<usize, i64>;

fn axpy(acc: &mut Sparse, k: i64, x: &Sparse, ctx: &'static str) -> Result<()> {
    for (&i, &v) in x {
        let e = acc.entry(i).or_insert(0);
        *e = checked_add(*e, checked_mul(k, v, ctx)?, ctx)?;
        if *e == 0 {
            acc.remove(&i);
        }
    }
    Ok(())
}

/// Gradient-path machinery for a fixed complex and acyclic field.
pub struct MorseContext<'a> {
    k: &'a OrderedComplex,
    f: &'a GradientField,
    // Per dimension: faces ordered so every upper-path step goes to a later face.
    up_order: Vec<Vec<usize>>,
    // Per dimension: faces ordered so every lower-path step goes to a later face.
    low_order: Vec<Vec<usize>>,
    critical: Vec<Vec<usize>>,
    critical_pos: Vec<Vec<usize>>,
}

impl<'a> MorseContext<'a> {
    /// Fails with a contract error when the field has a cycle.
    pub fn new(k: &'a OrderedComplex, f: &'a GradientField) -> Result<Self> {
        let mut up_order = Vec::with_capacity(k.levels());
        let mut low_order = Vec::with_capacity(k.levels());
        let mut critical = Vec::with_capacity(k.levels());
        let mut critical_pos = Vec::with_capacity(k.levels());
        for p in 0..k.levels() {
            let n = k.num_faces(p);
            up_order.push(topo_order(n, |x, out| upper_steps(k, f, p, x, out))?);
            low_order.push(topo_order(n, |x, out| lower_steps(k, f, p, x, out))?);
            let crit = f.critical_ranks(p);
            let mut pos = vec![usize::MAX; n];
            for (j, &c) in crit.iter().enumerate() {
                pos[c] = j;
            }
            critical.push(crit);
            critical_pos.push(pos);
        }
        Ok(MorseContext { k, f, up_order, low_order, critical, critical_pos })
    }

    pub fn complex(&self) -> &OrderedComplex {
        self.k
    }

    pub fn field(&self) -> &GradientField {
        self.f
    }

    pub fn critical_faces(&self, p: usize) -> Vec<Simplex> {
        self.critical.get(p).map(|c| c.iter().map(|&i| self.k.face(p, i).clone()).collect()).unwrap_or_default()
    }

    fn index(&self, s: &Simplex) -> Result<usize> {
        self.k.face_index(s).ok_or_else(|| Error::contract(format!("{s} is not a face of the complex")))
    }

    /// Upper DP for a target distribution `base` on the `p`-faces:
    /// `h(x) = base(x) + Σ_{steps x→η} μ · h(η)`.
    fn upper_dp(&self, p: usize, base: &[i64]) -> Result<Vec<i64>> {
        let mut h = base.to_vec();
        let mut steps = Vec::new();
        for &x in self.up_order[p].iter().rev() {
            upper_steps(self.k, self.f, p, x, &mut steps);
            for &(eta, mu) in &steps {
                if h[eta] != 0 {
                    h[x] = checked_add(h[x], checked_mul(mu, h[eta], "upper path sum")?, "upper path sum")?;
                }
            }
        }
        Ok(h)
    }

    /// Lower DP `g(x) = base(x) + Σ_{steps x→γ} μ · g(γ)`.
    fn lower_dp(&self, p: usize, base: &[i64]) -> Result<Vec<i64>> {
        let mut g = base.to_vec();
        let mut steps = Vec::new();
        for &x in self.low_order[p].iter().rev() {
            lower_steps(self.k, self.f, p, x, &mut steps);
            for &(gamma, mu) in &steps {
                if g[gamma] != 0 {
                    g[x] = checked_add(g[x], checked_mul(mu, g[gamma], "lower path sum")?, "lower path sum")?;
                }
            }
        }
        Ok(g)
    }

    /// Multiplicity sum over upper paths from `from` to `to` (same dimension).
    pub fn upper_path_sum(&self, from: &Simplex, to: &Simplex) -> Result<i64> {
        if from.dim() != to.dim() {
            return Err(Error::contract("upper paths join faces of equal dimension"));
        }
        let (a, b) = (self.index(from)?, self.index(to)?);
        let mut base = vec![0i64; self.k.num_faces(to.dim())];
        base[b] = 1;
        Ok(self.upper_dp(to.dim(), &base)?[a])
    }

    /// Multiplicity sum over lower paths from `from` to `to` (same dimension).
    pub fn lower_path_sum(&self, from: &Simplex, to: &Simplex) -> Result<i64> {
        if from.dim() != to.dim() {
            return Err(Error::contract("lower paths join faces of equal dimension"));
        }
        let (a, b) = (self.index(from)?, self.index(to)?);
        let mut base = vec![0i64; self.k.num_faces(to.dim())];
        base[b] = 1;
        Ok(self.lower_dp(to.dim(), &base)?[a])
    }

    /// Multiplicity sum over mixed paths from `beta` (dim `p+1`) to `alpha` (dim `p`):
    /// a non-reversed edge `beta ↘ γ` followed by an upper path from `γ` to `alpha`.
    pub fn mixed_path_sum(&self, beta: &Simplex, alpha: &Simplex) -> Result<i64> {
        if beta.dim() != alpha.dim() + 1 {
            return Err(Error::contract("mixed paths go down one dimension"));
        }
        let (bi, ai) = (self.index(beta)?, self.index(alpha)?);
        let p = alpha.dim();
        let mut base = vec![0i64; self.k.num_faces(p)];
        base[ai] = 1;
        let h = self.upper_dp(p, &base)?;
        let skip = (self.f.role(p + 1, bi) == Role::Collapsible).then(|| self.f.mate(p + 1, bi)).flatten();
        let mut acc = 0i64;
        for (j, &g) in self.k.facet_ranks(p + 1, bi).iter().enumerate() {
            if Some(g) == skip || h[g] == 0 {
                continue;
            }
            let iota = if j % 2 == 0 { 1 } else { -1 };
            acc = checked_add(acc, checked_mul(iota, h[g], "mixed path sum")?, "mixed path sum")?;
        }
        Ok(acc)
    }

    /// For every `p`-face `x`, the vector `(U(x, c))_c` over critical `p`-faces `c`
    /// (indexed by position in the critical list).
    fn flows(&self, p: usize) -> Result<Vec<Sparse>> {
        let n = self.k.num_faces(p);
        let mut fl: Vec<Sparse> = vec![Sparse::new(); n];
        let mut steps = Vec::new();
        for &x in self.up_order[p].iter().rev() {
            match self.f.role(p, x) {
                Role::Critical => {
                    fl[x].insert(self.critical_pos[p][x], 1);
                }
                Role::Collapsible => {}
                Role::Redundant => {
                    upper_steps(self.k, self.f, p, x, &mut steps);
                    let mut acc = Sparse::new();
                    for &(eta, mu) in &steps {
                        axpy(&mut acc, mu, &fl[eta], "gradient flow")?;
                    }
                    fl[x] = acc;
                }
            }
        }
        Ok(fl)
    }

    /// Assembles the Morse chain complex.
    pub fn morse_complex(&self) -> Result<MorseComplex> {
        let levels = self.k.levels();
        let critical: Vec<Vec<Simplex>> = (0..levels).map(|p| self.critical_faces(p)).collect();
        let mut boundary = Vec::with_capacity(levels);
        if levels > 0 {
            boundary.push(SparseMatrix::new(0, critical[0].len()));
        }
        for p in 1..levels {
            let fl = self.flows(p - 1)?;
            let mut m = SparseMatrix::new(critical[p - 1].len(), critical[p].len());
            for (col, &a) in self.critical[p].iter().enumerate() {
                let mut acc = Sparse::new();
                for (j, &g) in self.k.facet_ranks(p, a).iter().enumerate() {
                    let iota = if j % 2 == 0 { 1 } else { -1 };
                    axpy(&mut acc, iota, &fl[g], "morse boundary")?;
                }
                for (row, v) in acc {
                    m.set(row, col, v);
                }
            }
            boundary.push(m);
        }
        Ok(MorseComplex { critical, boundary })
    }

    fn dense_on(&self, p: usize, x: &ChainExpr) -> Result<Vec<i64>> {
        let mut v = vec![0i64; self.k.num_faces(p)];
        for (s, c) in x.iter() {
            v[self.index(s)?] = c;
        }
        Ok(v)
    }

    /// Morse cochain (keys: critical faces) to simplicial cochain:
    /// `Φ̄(x)(β) = Σ_α x(α) · U(β, α)`.
    pub fn phi_up(&self, x: &ChainExpr) -> Result<ChainExpr> {
        let Some(p) = x.dim() else { return Ok(ChainExpr::zero()) };
        for (s, _) in x.iter() {
            if self.f.role_of(self.k, s) != Some(Role::Critical) {
                return Err(Error::contract(format!("{s} is not a critical face")));
            }
        }
        let h = self.upper_dp(p, &self.dense_on(p, x)?)?;
        let mut out = ChainExpr::zero_in(p);
        for (i, &c) in h.iter().enumerate() {
            out.add_term(self.k.face(p, i).clone(), c)?;
        }
        Ok(out)
    }

    /// Simplicial cochain to Morse cochain: `Φ̲(y)(α) = Σ_β L(α, β) · y(β)`.
    pub fn phi_down(&self, y: &ChainExpr) -> Result<ChainExpr> {
        let Some(p) = y.dim() else { return Ok(ChainExpr::zero()) };
        let g = self.lower_dp(p, &self.dense_on(p, y)?)?;
        let mut out = ChainExpr::zero_in(p);
        for &c in &self.critical[p] {
            out.add_term(self.k.face(p, c).clone(), g[c])?;
        }
        Ok(out)
    }
}

/// Upper-path steps out of the `p`-face `x`: `x ↗ x' ↘ η` with `η ≠ x`,
/// weighted by `−ι(x,x')·ι(η,x')`.
fn upper_steps(k: &OrderedComplex, f: &GradientField, p: usize, x: usize, out: &mut Vec<(usize, i64)>) {
    out.clear();
    if f.role(p, x) != Role::Redundant {
        return;
    }
    let up = f.mate(p, x).expect("redundant face has a mate");
    let facets = k.facet_ranks(p + 1, up);
    let jx = facets.iter().position(|&g| g == x).expect("mate contains the face");
    let ix: i64 = if jx % 2 == 0 { 1 } else { -1 };
    for (j, &eta) in facets.iter().enumerate() {
        if eta != x {
            let ie: i64 = if j % 2 == 0 { 1 } else { -1 };
            out.push((eta, -ix * ie));
        }
    }
}

/// Lower-path steps out of the `p`-face `x`: `x ↘ δ ↗ δ'` with δ redundant,
/// `δ' ≠ x`, weighted by `−ι(δ,x)·ι(δ,δ')`.
fn lower_steps(k: &OrderedComplex, f: &GradientField, p: usize, x: usize, out: &mut Vec<(usize, i64)>) {
    out.clear();
    if p == 0 {
        return;
    }
    for (j, &d) in k.facet_ranks(p, x).iter().enumerate() {
        if f.role(p - 1, d) != Role::Redundant {
            continue;
        }
        let up = f.mate(p - 1, d).expect("redundant face has a mate");
        if up == x {
            continue;
        }
        let jd = k.facet_ranks(p, up).iter().position(|&g| g == d).expect("mate contains the face");
        let a: i64 = if j % 2 == 0 { 1 } else { -1 };
        let b: i64 = if jd % 2 == 0 { 1 } else { -1 };
        out.push((up, -a * b));
    }
}

/// Topological order (sources first) of a graph on `0..n`; errors on a cycle.
fn topo_order<F>(n: usize, mut succ: F) -> Result<Vec<usize>>
where
    F: FnMut(usize, &mut Vec<(usize, i64)>),
{
    let mut indeg = vec![0usize; n];
    let mut buf = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n);
    for x in 0..n {
        succ(x, &mut buf);
        let next: Vec<usize> = buf.iter().map(|e| e.0).collect();
        for &y in &next {
            indeg[y] += 1;
        }
        adj.push(next);
    }
    let mut order: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &adj[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                order.push(y);
            }
        }
    }
    if order.len() != n {
        return Err(Error::contract("gradient field has a cycle"));
    }
    Ok(order)
}
