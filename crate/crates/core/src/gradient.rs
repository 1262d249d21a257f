//! The algorithmic discrete gradient field of an ordered complex.
//!
//! Two constructions are provided: the three-level process indexed by
//! dimension, insertion position and inserted vertex, and the faster
//! two-level variant that ignores the insertion position. Both produce the
//! same set of pairings; only the construction order differs.
//!
//! The module also exposes the local collapsibility predicates (maximal and
//! collapsing vertices) that certify particular pairings without running the
//! construction.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::complex::{OrderedComplex, Simplex, Vertex};
use crate::error::{Error, Result};

/// A gradient pair `redundant ↗ collapsible`, obtained by inserting
/// `inserted_vertex`, which lands in position `position` of `collapsible`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    pub redundant: Simplex,
    pub collapsible: Simplex,
    pub inserted_vertex: Vertex,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Critical,
    Redundant,
    Collapsible,
}

/// A partial matching on the faces of a complex.
///
/// Faces are addressed by `(dimension, lex rank)` in the complex the field
/// was built on; the field does not hold on to the complex.
#[derive(Debug, Clone)]
pub struct GradientField {
    role: Vec<Vec<Role>>,
    mate: Vec<Vec<usize>>,
    pairings: Vec<Pairing>,
}

/// Partition of the faces by role, per dimension, each list in lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub critical: Vec<Vec<Simplex>>,
    pub redundant: Vec<Vec<Simplex>>,
    pub collapsible: Vec<Vec<Simplex>>,
}

impl Classification {
    pub fn critical_counts(&self) -> Vec<usize> {
        self.critical.iter().map(Vec::len).collect()
    }

    pub fn redundant_counts(&self) -> Vec<usize> {
        self.redundant.iter().map(Vec::len).collect()
    }

    pub fn collapsible_counts(&self) -> Vec<usize> {
        self.collapsible.iter().map(Vec::len).collect()
    }
}

/// Outcome of the acyclicity check. `witness` lists a closed path of faces
/// (first face repeated at the end) when a cycle exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub acyclic: bool,
    pub witness: Vec<Simplex>,
}

impl GradientField {
    fn empty(k: &OrderedComplex) -> Self {
        let role = (0..k.levels()).map(|p| vec![Role::Critical; k.num_faces(p)]).collect();
        let mate = (0..k.levels()).map(|p| vec![usize::MAX; k.num_faces(p)]).collect();
        GradientField { role, mate, pairings: Vec::new() }
    }

    /// The field with no pairings.
    pub fn empty_on(k: &OrderedComplex) -> Self {
        Self::empty(k)
    }

    fn push(&mut self, k: &OrderedComplex, p: usize, lo: usize, hi: usize, position: usize) {
        let collapsible = k.face(p + 1, hi).clone();
        self.pairings.push(Pairing {
            redundant: k.face(p, lo).clone(),
            inserted_vertex: collapsible.vertex(position),
            collapsible,
            position,
        });
        self.role[p][lo] = Role::Redundant;
        self.role[p + 1][hi] = Role::Collapsible;
        self.mate[p][lo] = hi;
        self.mate[p + 1][hi] = lo;
    }

    /// Builds a matching from explicit `(redundant, collapsible)` pairs.
    ///
    /// Each pair must be a facet/cofacet pair of `k` and no face may occur
    /// twice. Acyclicity is *not* checked here; see [`verify_acyclic`].
    pub fn from_pairs(k: &OrderedComplex, pairs: &[(Simplex, Simplex)]) -> Result<Self> {
        let mut f = Self::empty(k);
        for (a, b) in pairs {
            if !a.is_facet_of(b) {
                return Err(Error::contract(format!("{a} is not a facet of {b}")));
            }
            let (p, lo, hi) = match (k.face_index(a), k.face_index(b)) {
                (Some(lo), Some(hi)) => (a.dim(), lo, hi),
                _ => return Err(Error::contract(format!("pair {a} ↗ {b} is not in the complex"))),
            };
            if f.role[p][lo] != Role::Critical || f.role[p + 1][hi] != Role::Critical {
                return Err(Error::contract(format!("face reused in pair {a} ↗ {b}")));
            }
            let v = b.vertices().iter().copied().find(|v| !a.contains(*v)).expect("facet differs by one vertex");
            let pos = b.position(v).expect("vertex of b");
            f.push(k, p, lo, hi, pos);
        }
        Ok(f)
    }

    /// Pairings in construction order.
    pub fn pairings(&self) -> &[Pairing] {
        &self.pairings
    }

    pub fn pairing_set(&self) -> BTreeSet<(Simplex, Simplex)> {
        self.pairings.iter().map(|p| (p.redundant.clone(), p.collapsible.clone())).collect()
    }

    pub fn role(&self, p: usize, i: usize) -> Role {
        self.role[p][i]
    }

    pub fn role_of(&self, k: &OrderedComplex, s: &Simplex) -> Option<Role> {
        k.face_index(s).map(|i| self.role[s.dim()][i])
    }

    /// Rank of the partner face (in dimension `p+1` for redundant faces,
    /// `p-1` for collapsible ones).
    pub fn mate(&self, p: usize, i: usize) -> Option<usize> {
        (self.role[p][i] != Role::Critical).then(|| self.mate[p][i])
    }

    /// Partner of a face, if it is paired.
    pub fn partner(&self, k: &OrderedComplex, s: &Simplex) -> Option<Simplex> {
        let i = k.face_index(s)?;
        let p = s.dim();
        match self.role[p][i] {
            Role::Critical => None,
            Role::Redundant => Some(k.face(p + 1, self.mate[p][i]).clone()),
            Role::Collapsible => Some(k.face(p - 1, self.mate[p][i]).clone()),
        }
    }

    /// True when `lower ↗ upper` is one of the pairings.
    pub fn contains_pair(&self, k: &OrderedComplex, lower: &Simplex, upper: &Simplex) -> bool {
        match (k.face_index(lower), k.face_index(upper)) {
            (Some(lo), Some(hi)) if upper.dim() == lower.dim() + 1 => {
                self.role[lower.dim()][lo] == Role::Redundant && self.mate[lower.dim()][lo] == hi
            }
            _ => false,
        }
    }

    /// Ranks of the critical faces in dimension `p`, ascending.
    pub fn critical_ranks(&self, p: usize) -> Vec<usize> {
        self.role
            .get(p)
            .map(|r| (0..r.len()).filter(|&i| r[i] == Role::Critical).collect())
            .unwrap_or_default()
    }

    pub fn critical_counts(&self) -> Vec<usize> {
        self.role.iter().map(|r| r.iter().filter(|x| **x == Role::Critical).count()).collect()
    }

    pub fn classify(&self, k: &OrderedComplex) -> Classification {
        let pick = |want: Role| -> Vec<Vec<Simplex>> {
            (0..k.levels())
                .map(|p| (0..k.num_faces(p)).filter(|&i| self.role[p][i] == want).map(|i| k.face(p, i).clone()).collect())
                .collect()
        };
        Classification {
            critical: pick(Role::Critical),
            redundant: pick(Role::Redundant),
            collapsible: pick(Role::Collapsible),
        }
    }

    /// Critical faces of all dimensions, in dimension then lex order.
    pub fn critical_faces(&self, k: &OrderedComplex) -> Vec<Simplex> {
        self.classify(k).critical.into_iter().flatten().collect()
    }

    /// One `REDUNDANT -> COLLAPSIBLE` line per pairing, in construction order.
    pub fn to_pairing_text(&self, k: &OrderedComplex) -> String {
        let mut out = String::new();
        for p in &self.pairings {
            let _ = writeln!(out, "{} -> {}", k.show(&p.redundant), k.show(&p.collapsible));
        }
        out
    }

    /// Graphviz rendering of the modified Hasse diagram. Matched edges point
    /// upwards and are drawn bold; critical faces are boxed.
    pub fn to_dot(&self, k: &OrderedComplex) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for p in 0..k.levels() {
            for i in 0..k.num_faces(p) {
                let shape = if self.role[p][i] == Role::Critical { "box" } else { "ellipse" };
                let _ = writeln!(out, "  \"{}\" [shape={shape}];", k.show(k.face(p, i)));
            }
        }
        for p in 1..k.levels() {
            for i in 0..k.num_faces(p) {
                let hi = k.show(k.face(p, i));
                for &f in k.facet_ranks(p, i) {
                    let lo = k.show(k.face(p - 1, f));
                    if self.role[p][i] == Role::Collapsible && self.mate[p][i] == f {
                        let _ = writeln!(out, "  \"{lo}\" -> \"{hi}\" [style=bold];");
                    } else {
                        let _ = writeln!(out, "  \"{hi}\" -> \"{lo}\";");
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Candidate pairs `(α rank, γ rank, omitted position)` between dimensions
/// `i` and `i+1`, with `α` in lex order.
fn candidates(k: &OrderedComplex, i: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..k.num_faces(i) {
        for &(g, j) in k.cofacet_ranks(i, a) {
            out.push((a, g, j));
        }
    }
    out
}

fn run_blocks(k: &OrderedComplex, mut field: GradientField, i: usize, block: &[(usize, usize, usize)]) -> GradientField {
    for &(a, g, j) in block {
        if field.role[i][a] == Role::Critical && field.role[i + 1][g] == Role::Critical {
            field.push(k, i, a, g, j);
        }
    }
    field
}

/// Algorithm with processes indexed by `(i, r, v)`: `i` descending, insertion
/// position `r` descending, inserted vertex `v` descending, `α` in lex order.
pub fn build_field_a(k: &OrderedComplex) -> GradientField {
    let mut field = GradientField::empty(k);
    let top = k.levels();
    for i in (0..top.saturating_sub(1)).rev() {
        let mut cand = candidates(k, i);
        // Stable: ties keep the lex order of α.
        cand.sort_by(|x, y| {
            let vx = k.face(i + 1, x.1).vertex(x.2);
            let vy = k.face(i + 1, y.1).vertex(y.2);
            y.2.cmp(&x.2).then(vy.cmp(&vx))
        });
        field = run_blocks(k, field, i, &cand);
    }
    field
}

/// Faster algorithm with processes indexed by `(i, v)` only.
pub fn build_field_fast(k: &OrderedComplex) -> GradientField {
    let mut field = GradientField::empty(k);
    let top = k.levels();
    for i in (0..top.saturating_sub(1)).rev() {
        let mut cand = candidates(k, i);
        cand.sort_by(|x, y| {
            let vx = k.face(i + 1, x.1).vertex(x.2);
            let vy = k.face(i + 1, y.1).vertex(y.2);
            vy.cmp(&vx)
        });
        field = run_blocks(k, field, i, &cand);
    }
    field
}

fn offsets(k: &OrderedComplex) -> Vec<usize> {
    let mut off = vec![0; k.levels() + 1];
    for p in 0..k.levels() {
        off[p + 1] = off[p] + k.num_faces(p);
    }
    off
}

/// Out-neighbours of face `(p, i)` in the modified Hasse diagram.
fn hasse_out(k: &OrderedComplex, f: &GradientField, p: usize, i: usize, out: &mut Vec<(usize, usize)>) {
    out.clear();
    if f.role[p][i] == Role::Redundant {
        out.push((p + 1, f.mate[p][i]));
    }
    if p > 0 {
        let skip = (f.role[p][i] == Role::Collapsible).then(|| f.mate[p][i]);
        for &x in k.facet_ranks(p, i) {
            if Some(x) != skip {
                out.push((p - 1, x));
            }
        }
    }
}

/// Cycle detection on the modified Hasse diagram (matched edges reversed).
pub fn verify_acyclic(f: &GradientField, k: &OrderedComplex) -> AcyclicityReport {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let off = offsets(k);
    let n = off[k.levels()];
    let mut color = vec![WHITE; n];
    let mut buf = Vec::new();
    // Stack frames: (dim, rank, out-neighbours, next index).
    let mut stack: Vec<(usize, usize, Vec<(usize, usize)>, usize)> = Vec::new();
    for p0 in 0..k.levels() {
        for i0 in 0..k.num_faces(p0) {
            if color[off[p0] + i0] != WHITE {
                continue;
            }
            hasse_out(k, f, p0, i0, &mut buf);
            color[off[p0] + i0] = GREY;
            stack.push((p0, i0, buf.clone(), 0));
            while let Some(top) = stack.last_mut() {
                if top.3 == top.2.len() {
                    color[off[top.0] + top.1] = BLACK;
                    stack.pop();
                    continue;
                }
                let (q, j) = top.2[top.3];
                top.3 += 1;
                match color[off[q] + j] {
                    WHITE => {
                        hasse_out(k, f, q, j, &mut buf);
                        color[off[q] + j] = GREY;
                        stack.push((q, j, buf.clone(), 0));
                    }
                    GREY => {
                        let start = stack.iter().position(|fr| fr.0 == q && fr.1 == j).expect("grey node on stack");
                        let mut witness: Vec<Simplex> =
                            stack[start..].iter().map(|fr| k.face(fr.0, fr.1).clone()).collect();
                        witness.push(k.face(q, j).clone());
                        return AcyclicityReport { acyclic: false, witness };
                    }
                    _ => {}
                }
            }
        }
    }
    AcyclicityReport { acyclic: true, witness: Vec::new() }
}

/// True iff every facet and every cofacet of every critical face is paired.
pub fn verify_maximality(f: &GradientField, k: &OrderedComplex) -> bool {
    maximality_violations(f, k).is_empty()
}

/// Pairs `(critical face, unpaired facet or cofacet)` breaking maximality.
pub fn maximality_violations(f: &GradientField, k: &OrderedComplex) -> Vec<(Simplex, Simplex)> {
    let mut out = Vec::new();
    for p in 0..k.levels() {
        for i in 0..k.num_faces(p) {
            if f.role[p][i] != Role::Critical {
                continue;
            }
            if p > 0 {
                for &x in k.facet_ranks(p, i) {
                    if f.role[p - 1][x] == Role::Critical {
                        out.push((k.face(p, i).clone(), k.face(p - 1, x).clone()));
                    }
                }
            }
            for &(g, _) in k.cofacet_ranks(p, i) {
                if f.role[p + 1][g] == Role::Critical {
                    out.push((k.face(p, i).clone(), k.face(p + 1, g).clone()));
                }
            }
        }
    }
    out
}

/// Vertices `v ≻ α_i` with `∂_{α_i}(α) ∪ {v}` a face, ascending.
fn replacements(k: &OrderedComplex, alpha: &Simplex, i: usize) -> Vec<Vertex> {
    let ai = alpha.vertex(i);
    match alpha.omit(i) {
        None => k.vertices().iter().copied().filter(|v| *v > ai).collect(),
        Some(facet) => {
            let Some(fi) = k.face_index(&facet) else { return Vec::new() };
            let mut vs: Vec<Vertex> = k
                .cofacet_ranks(facet.dim(), fi)
                .iter()
                .map(|&(g, j)| k.face(facet.dim() + 1, g).vertex(j))
                .filter(|v| *v > ai)
                .collect();
            vs.sort_unstable();
            vs
        }
    }
}

/// Whether the vertex in position `i` of `alpha` is maximal in `alpha`:
/// no larger vertex can replace it while staying inside the complex.
pub fn is_maximal_vertex(k: &OrderedComplex, alpha: &Simplex, i: usize) -> bool {
    replacements(k, alpha, i).is_empty()
}

/// For a non-maximal vertex in position `i`, returns `(α(i), α^i)`: the face
/// obtained by replacing `α_i` by the largest admissible vertex `α^i`.
pub fn alpha_sup(k: &OrderedComplex, alpha: &Simplex, i: usize) -> Option<(Simplex, Vertex)> {
    let v = *replacements(k, alpha, i).last()?;
    let base = alpha.omit(i);
    let face = match base {
        None => Simplex::new(vec![v]).expect("single vertex"),
        Some(b) => b.with(v).expect("v is not in the facet").0,
    };
    Some((face, v))
}

/// Whether the vertices in positions `ts` (strictly increasing) of `alpha`
/// form a non-maximal sequence: each one, tracked by identity, is
/// non-maximal in the face produced by the previous replacements.
pub fn is_non_maximal_sequence(k: &OrderedComplex, alpha: &Simplex, ts: &[usize]) -> bool {
    let targets: Vec<Vertex> = ts.iter().map(|&t| alpha.vertex(t)).collect();
    let mut cur = alpha.clone();
    for v in targets {
        let Some(pos) = cur.position(v) else { return false };
        match alpha_sup(k, &cur, pos) {
            Some((next, _)) => cur = next,
            None => return false,
        }
    }
    true
}

/// Condition guarding the general sufficient criterion: every non-empty
/// increasing sequence of positions in `r+1..=k` is a non-maximal sequence.
pub fn additional_restriction(k: &OrderedComplex, alpha: &Simplex, r: usize) -> bool {
    let positions: Vec<usize> = (r + 1..=alpha.dim()).collect();
    let n = positions.len();
    assert!(n < 31, "face dimension too large for subset enumeration");
    for mask in 1u32..(1u32 << n) {
        let ts: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| positions[b]).collect();
        if !is_non_maximal_sequence(k, alpha, &ts) {
            return false;
        }
    }
    true
}

/// Memoized evaluator of the recursive collapsing-vertex predicate.
///
/// Redundancy in condition (i) is read off the supplied field.
pub struct CollapsingOracle<'a> {
    k: &'a OrderedComplex,
    field: &'a GradientField,
    memo: HashMap<(Simplex, usize), bool>,
    depth_limit: usize,
}

impl<'a> CollapsingOracle<'a> {
    pub fn new(k: &'a OrderedComplex, field: &'a GradientField) -> Self {
        CollapsingOracle { k, field, memo: HashMap::new(), depth_limit: 10_000 }
    }

    pub fn with_depth_limit(mut self, limit: usize) -> Self {
        self.depth_limit = limit;
        self
    }

    /// Whether the vertex in position `r` of `alpha` is collapsing in `alpha`.
    pub fn is_collapsing(&mut self, alpha: &Simplex, r: usize) -> Result<bool> {
        if !self.k.contains(alpha) || r > alpha.dim() {
            return Err(Error::contract(format!("{alpha} with position {r} is not a face/vertex of the complex")));
        }
        self.eval(alpha, r, 0)
    }

    fn eval(&mut self, alpha: &Simplex, r: usize, depth: usize) -> Result<bool> {
        if depth > self.depth_limit {
            return Err(Error::RecursionLimit(self.depth_limit));
        }
        if let Some(&b) = self.memo.get(&(alpha.clone(), r)) {
            return Ok(b);
        }
        let value = self.eval_uncached(alpha, r, depth)?;
        self.memo.insert((alpha.clone(), r), value);
        Ok(value)
    }

    fn eval_uncached(&mut self, alpha: &Simplex, r: usize, depth: usize) -> Result<bool> {
        if self.field.role_of(self.k, alpha) == Some(Role::Redundant) {
            return Ok(false);
        }
        if !additional_restriction(self.k, alpha, r) {
            return Ok(false);
        }
        let base = alpha.omit(r);
        for v in replacements(self.k, alpha, r) {
            let beta = match &base {
                None => Simplex::new(vec![v]).expect("single vertex"),
                Some(b) => b.with(v).expect("v not in facet").0,
            };
            let mut ok = false;
            for &aj in alpha.vertices().iter().filter(|aj| **aj > v) {
                let pos = beta.position(aj).expect("α_j ≻ v ≻ α_r survives in β");
                if self.eval(&beta, pos, depth + 1)? {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One-shot form of [`CollapsingOracle::is_collapsing`].
pub fn is_collapsing_vertex(k: &OrderedComplex, field: &GradientField, alpha: &Simplex, r: usize) -> Result<bool> {
    CollapsingOracle::new(k, field).is_collapsing(alpha, r)
}
