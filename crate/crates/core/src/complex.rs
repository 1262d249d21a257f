//! Finite ordered abstract simplicial complexes.
//!
//! A face is stored as the strictly increasing list of its vertices, which
//! fixes its orientation. Faces of each dimension are kept sorted in
//! lexicographic order, so "lexicographic order" and "iteration order" coincide
//! everywhere downstream. Every face is addressed by its dimension and its rank
//! inside that sorted list.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{checked_add, checked_mul, Error, Result};

/// A vertex of an ordered complex. The integer order is the vertex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub u32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An oriented simplex: a strictly increasing, non-empty sequence of vertices.
///
/// The derived order is the lexicographic extension of the vertex order. On
/// faces of different dimensions a proper prefix sorts first; the algorithms
/// only ever compare faces of equal dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from a strictly increasing vertex list.
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::malformed("empty simplex"));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::malformed(format!(
                "simplex vertices must be strictly increasing: {vertices:?}"
            )));
        }
        Ok(Simplex(vertices))
    }

    /// Sorts the vertex list; rejects duplicates.
    pub fn from_unsorted(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::malformed(format!("duplicate vertex {} in face", w[0])));
        }
        Simplex::new(vertices)
    }

    /// Convenience constructor from raw integers (sorted, duplicates rejected).
    pub fn of(ids: &[u32]) -> Result<Self> {
        Simplex::from_unsorted(ids.iter().copied().map(Vertex).collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Position of `v` in the simplex, if present.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        self.0[i]
    }

    pub fn last(&self) -> Vertex {
        *self.0.last().expect("simplex is non-empty")
    }

    /// The facet obtained by omitting the vertex in position `j`.
    /// Returns `None` for a vertex (its only facet is the empty set).
    pub fn omit(&self, j: usize) -> Option<Simplex> {
        if self.0.len() <= 1 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(j);
        Some(Simplex(v))
    }

    /// Removes vertex `v`; `None` if absent or if the result would be empty.
    pub fn without(&self, v: Vertex) -> Option<Simplex> {
        self.position(v).and_then(|j| self.omit(j))
    }

    /// Inserts `v`, returning the position it lands in. `None` if already present.
    pub fn with(&self, v: Vertex) -> Option<(Simplex, usize)> {
        match self.0.binary_search(&v) {
            Ok(_) => None,
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v);
                Some((Simplex(out), pos))
            }
        }
    }

    pub fn is_facet_of(&self, other: &Simplex) -> bool {
        other.0.len() == self.0.len() + 1 && self.0.iter().all(|v| other.contains(*v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Lexicographic comparison of faces.
pub fn lex_compare(a: &Simplex, b: &Simplex) -> Ordering {
    a.cmp(b)
}

/// A graded formal linear combination with integer coefficients.
///
/// Used both for chains (keys are oriented simplices) and for cochains (keys
/// are read as dual basis elements). Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainExpr {
    dim: Option<usize>,
    terms: BTreeMap<Simplex, i64>,
}

impl ChainExpr {
    pub fn zero() -> Self {
        ChainExpr::default()
    }

    pub fn zero_in(dim: usize) -> Self {
        ChainExpr { dim: Some(dim), terms: BTreeMap::new() }
    }

    pub fn single(s: Simplex, coeff: i64) -> Self {
        let mut c = ChainExpr::zero_in(s.dim());
        if coeff != 0 {
            c.terms.insert(s, coeff);
        }
        c
    }

    /// Builds an expression from `(simplex, coefficient)` pairs; repeated keys add up.
    pub fn from_terms<I: IntoIterator<Item = (Simplex, i64)>>(terms: I) -> Result<Self> {
        let mut c = ChainExpr::zero();
        for (s, k) in terms {
            c.add_term(s, k)?;
        }
        Ok(c)
    }

    /// Dimension of the expression, when known (fixed by the first term or by `zero_in`).
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &Simplex) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, i64)> {
        self.terms.iter().map(|(s, k)| (s, *k))
    }

    pub fn add_term(&mut self, s: Simplex, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        match self.dim {
            Some(d) if d != s.dim() => {
                return Err(Error::contract(format!(
                    "mixed dimensions in chain expression: {d} and {}",
                    s.dim()
                )))
            }
            None => self.dim = Some(s.dim()),
            _ => {}
        }
        let entry = self.terms.entry(s);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = checked_add(*o.get(), coeff, "chain addition")?;
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainExpr) -> Result<ChainExpr> {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &ChainExpr) -> Result<ChainExpr> {
        self.add_scaled(other, -1)
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &ChainExpr, k: i64) -> Result<ChainExpr> {
        let mut out = self.clone();
        if out.dim.is_none() {
            out.dim = other.dim;
        }
        for (s, c) in other.iter() {
            out.add_term(s.clone(), checked_mul(c, k, "chain scaling")?)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Result<ChainExpr> {
        ChainExpr::zero_in_opt(self.dim).add_scaled(self, k)
    }

    fn zero_in_opt(dim: Option<usize>) -> Self {
        ChainExpr { dim, terms: BTreeMap::new() }
    }

    /// Reduces every coefficient modulo `p`, dropping the ones that vanish.
    pub fn reduce_mod(&self, p: i64) -> ChainExpr {
        let terms = self
            .terms
            .iter()
            .filter_map(|(s, k)| {
                let r = k.rem_euclid(p);
                (r != 0).then(|| (s.clone(), r))
            })
            .collect();
        ChainExpr { dim: self.dim, terms }
    }
}

impl fmt::Display for ChainExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, k)) in self.terms.iter().enumerate() {
            let sign = if *k < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let mag = k.unsigned_abs();
            if mag == 1 {
                write!(f, "{sep}{sign}{}{s}", if i > 0 { " " } else { "" })?;
            } else {
                write!(f, "{sep}{sign}{}{mag}{s}", if i > 0 { " " } else { "" })?;
            }
        }
        Ok(())
    }
}

/// A finite ordered abstract simplicial complex.
///
/// Immutable after construction. Besides the sorted face lists it caches the
/// facet and cofacet incidences of every face.
#[derive(Debug, Clone)]
pub struct OrderedComplex {
    vertices: Vec<Vertex>,
    labels: Vec<String>,
    faces: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    // facets[p][i][j]: rank of the facet of face (p, i) omitting position j.
    facets: Vec<Vec<Vec<usize>>>,
    // cofacets[p][i]: (rank of coface in dimension p+1, omitted position).
    cofacets: Vec<Vec<Vec<(usize, usize)>>>,
}

/// Canonical JSON export of a complex.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub faces_by_dim: Vec<Vec<Vec<usize>>>,
}

impl OrderedComplex {
    /// Downward closure of a family of faces given by integer vertex ids.
    ///
    /// Vertex order is the integer order; input order within a face is irrelevant.
    pub fn from_maximal_faces<F: AsRef<[u32]>>(max_faces: &[F]) -> Result<Self> {
        let mut simplices = Vec::with_capacity(max_faces.len());
        for f in max_faces {
            let f = f.as_ref();
            if f.is_empty() {
                return Err(Error::malformed("empty face in input"));
            }
            simplices.push(Simplex::of(f)?);
        }
        Ok(Self::from_simplices(simplices, None))
    }

    /// Downward closure of `simplices`. `labels` maps vertex ids to display names.
    pub fn from_simplices(simplices: Vec<Simplex>, labels: Option<&HashMap<Vertex, String>>) -> Self {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in simplices {
            close_downward(s, &mut by_dim);
        }
        let faces: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        Self::from_sorted_closed(faces, labels)
    }

    fn from_sorted_closed(faces: Vec<Vec<Simplex>>, labels: Option<&HashMap<Vertex, String>>) -> Self {
        let vertices: Vec<Vertex> = faces.first().map(|f| f.iter().map(|s| s.vertex(0)).collect()).unwrap_or_default();
        let labels = vertices
            .iter()
            .map(|v| labels.and_then(|l| l.get(v).cloned()).unwrap_or_else(|| v.to_string()))
            .collect();
        let index: Vec<HashMap<Simplex, usize>> = faces
            .iter()
            .map(|fs| fs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut facets: Vec<Vec<Vec<usize>>> = Vec::with_capacity(faces.len());
        let mut cofacets: Vec<Vec<Vec<(usize, usize)>>> = faces.iter().map(|fs| vec![Vec::new(); fs.len()]).collect();
        for (p, fs) in faces.iter().enumerate() {
            if p == 0 {
                facets.push(vec![Vec::new(); fs.len()]);
                continue;
            }
            let mut level = Vec::with_capacity(fs.len());
            for (i, s) in fs.iter().enumerate() {
                let fi: Vec<usize> = (0..=p)
                    .map(|j| index[p - 1][&s.omit(j).expect("positive dimension")])
                    .collect();
                for (j, &f) in fi.iter().enumerate() {
                    cofacets[p - 1][f].push((i, j));
                }
                level.push(fi);
            }
            facets.push(level);
        }
        OrderedComplex { vertices, labels, faces, index, facets, cofacets }
    }

    /// Parses the text format: one maximal face per line, whitespace separated
    /// vertex labels, `#` starts a comment.
    ///
    /// Labels are ordered by natural order (runs of digits compare numerically),
    /// so purely numeric labels keep their integer order. Numeric labels are
    /// used directly as vertex ids; otherwise ids are assigned densely in
    /// label order.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<String>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("");
            let toks: Vec<String> = content.split_whitespace().map(str::to_owned).collect();
            if toks.is_empty() {
                continue;
            }
            let mut seen = BTreeSet::new();
            for t in &toks {
                if !seen.insert(t.as_str()) {
                    return Err(Error::malformed(format!("line {}: duplicate vertex {t}", lineno + 1)));
                }
            }
            rows.push(toks);
        }
        let all_numeric = rows.iter().flatten().all(|t| t.parse::<u32>().is_ok());
        let mut label_of: HashMap<Vertex, String> = HashMap::new();
        let id_of: HashMap<String, Vertex> = if all_numeric {
            rows.iter()
                .flatten()
                .map(|t| (t.clone(), Vertex(t.parse().expect("checked numeric"))))
                .collect()
        } else {
            let mut labels: Vec<&String> = rows.iter().flatten().collect::<BTreeSet<_>>().into_iter().collect();
            labels.sort_by(|a, b| natural_cmp(a, b));
            labels.dedup();
            labels.iter().enumerate().map(|(i, l)| ((*l).clone(), Vertex(i as u32))).collect()
        };
        let mut simplices = Vec::with_capacity(rows.len());
        for row in &rows {
            let ids: Vec<Vertex> = row.iter().map(|t| id_of[t]).collect();
            for (t, v) in row.iter().zip(&ids) {
                label_of.insert(*v, t.clone());
            }
            simplices.push(Simplex::from_unsorted(ids)?);
        }
        Ok(Self::from_simplices(simplices, Some(&label_of)))
    }

    /// Writes the maximal faces in the text format, one per line, using labels.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in self.maximal_faces() {
            let line: Vec<&str> = s.vertices().iter().map(|v| self.label(*v)).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.labels.clone(),
            faces_by_dim: self
                .faces
                .iter()
                .map(|fs| {
                    fs.iter()
                        .map(|s| s.vertices().iter().map(|v| self.vertex_rank(*v).expect("own vertex")).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let mut labels = HashMap::new();
        let mut simplices = Vec::new();
        for (i, l) in json.vertices.iter().enumerate() {
            labels.insert(Vertex(i as u32), l.clone());
        }
        for fs in &json.faces_by_dim {
            for f in fs {
                if let Some(bad) = f.iter().find(|&&i| i >= json.vertices.len()) {
                    return Err(Error::malformed(format!("vertex index {bad} out of range")));
                }
                simplices.push(Simplex::from_unsorted(f.iter().map(|&i| Vertex(i as u32)).collect())?);
            }
        }
        Ok(Self::from_simplices(simplices, Some(&labels)))
    }

    /// Maximal faces (faces with no cofacet), in dimension then lex order.
    pub fn maximal_faces(&self) -> Vec<&Simplex> {
        let mut out = Vec::new();
        for (p, fs) in self.faces.iter().enumerate() {
            for (i, s) in fs.iter().enumerate() {
                if self.cofacets[p][i].is_empty() {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Number of dimension levels (`dim + 1`, or 0 when empty).
    pub fn levels(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_rank(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn label(&self, v: Vertex) -> &str {
        self.vertex_rank(v).map(|i| self.labels[i].as_str()).unwrap_or("?")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Renders a simplex with vertex labels, e.g. `[a,b,c]`.
    pub fn show(&self, s: &Simplex) -> String {
        let parts: Vec<&str> = s.vertices().iter().map(|v| self.label(*v)).collect();
        format!("[{}]", parts.join(","))
    }

    /// Faces of dimension `p` in lex order (empty slice beyond the top dimension).
    pub fn faces(&self, p: usize) -> &[Simplex] {
        self.faces.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face(&self, p: usize, i: usize) -> &Simplex {
        &self.faces[p][i]
    }

    pub fn num_faces(&self, p: usize) -> usize {
        self.faces(p).len()
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn face_index(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim()).and_then(|m| m.get(s).copied())
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.face_index(s).is_some()
    }

    /// Ranks of the facets of face `(p, i)`, ordered by omitted position.
    pub fn facet_ranks(&self, p: usize, i: usize) -> &[usize] {
        &self.facets[p][i]
    }

    /// Cofacets of face `(p, i)` as `(rank in dimension p+1, omitted position)`.
    pub fn cofacet_ranks(&self, p: usize, i: usize) -> &[(usize, usize)] {
        &self.cofacets[p][i]
    }

    /// Simplicial boundary `Σ (-1)^j [v_0,…,v̂_j,…,v_p]`; zero on vertices.
    pub fn boundary(&self, alpha: &Simplex) -> ChainExpr {
        boundary(alpha)
    }

    /// Incidence number of `alpha` in the boundary of `beta`.
    pub fn incidence(&self, alpha: &Simplex, beta: &Simplex) -> Result<i32> {
        incidence(alpha, beta)
    }

    /// `alpha ∪ {v}` when it is a face with `v` in position `r`.
    pub fn iota_r(&self, v: Vertex, alpha: &Simplex, r: usize) -> Option<Simplex> {
        let (s, pos) = alpha.with(v)?;
        (pos == r && self.contains(&s)).then_some(s)
    }

    /// Alternating sum of the face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(p, fs)| if p % 2 == 0 { fs.len() as i64 } else { -(fs.len() as i64) })
            .sum()
    }

    /// Integer boundary matrix `∂_p : C_p → C_{p-1}` as sparse columns.
    pub fn boundary_matrix(&self, p: usize) -> crate::linalg::SparseMatrix {
        let rows = if p == 0 { 0 } else { self.num_faces(p - 1) };
        let mut m = crate::linalg::SparseMatrix::new(rows, self.num_faces(p));
        if p > 0 {
            for i in 0..self.num_faces(p) {
                for (j, &f) in self.facets[p][i].iter().enumerate() {
                    m.set(f, i, if j % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        m
    }
}

/// Free-standing boundary operator on a single simplex.
pub fn boundary(alpha: &Simplex) -> ChainExpr {
    let mut c = ChainExpr::zero();
    if alpha.dim() == 0 {
        return c;
    }
    c.dim = Some(alpha.dim() - 1);
    for j in 0..=alpha.dim() {
        let f = alpha.omit(j).expect("positive dimension");
        c.terms.insert(f, if j % 2 == 0 { 1 } else { -1 });
    }
    c
}

/// Boundary of a chain, by linearity.
pub fn boundary_of_chain(c: &ChainExpr) -> Result<ChainExpr> {
    let mut out = ChainExpr::zero();
    if let Some(d) = c.dim() {
        if d > 0 {
            out.dim = Some(d - 1);
        }
    }
    for (s, k) in c.iter() {
        out = out.add_scaled(&boundary(s), k)?;
    }
    Ok(out)
}

/// Incidence number `ι_{α,β} ∈ {-1,0,1}`.
pub fn incidence(alpha: &Simplex, beta: &Simplex) -> Result<i32> {
    if beta.dim() != alpha.dim() + 1 {
        return Err(Error::contract(format!(
            "incidence needs dim(beta) = dim(alpha)+1, got {} and {}",
            alpha.dim(),
            beta.dim()
        )));
    }
    let mut j = 0;
    let mut missing = None;
    for (pos, v) in beta.vertices().iter().enumerate() {
        if j < alpha.vertices().len() && alpha.vertices()[j] == *v {
            j += 1;
        } else if missing.is_none() {
            missing = Some(pos);
        } else {
            return Ok(0);
        }
    }
    if j != alpha.vertices().len() {
        return Ok(0);
    }
    Ok(match missing {
        Some(pos) if pos % 2 == 0 => 1,
        Some(_) => -1,
        None => 0,
    })
}

fn close_downward(s: Simplex, by_dim: &mut Vec<BTreeSet<Simplex>>) {
    let d = s.dim();
    while by_dim.len() <= d {
        by_dim.push(BTreeSet::new());
    }
    if by_dim[d].contains(&s) {
        return;
    }
    let facets: Vec<Simplex> = (0..=d).filter_map(|j| s.omit(j)).collect();
    by_dim[d].insert(s);
    for f in facets {
        close_downward(f, by_dim);
    }
}

/// Natural order on labels: digit runs compare by numeric value.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let lx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let ly = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let nx = trim_zeros(&x[..lx]);
                let ny = trim_zeros(&y[..ly]);
                let ord = nx.len().cmp(&ny.len()).then_with(|| nx.cmp(ny));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[lx..];
                y = &y[ly..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let k = s.iter().take_while(|&&c| c == b'0').count();
    &s[k..]
}
