//! Munkres' simplicial model for the configuration space of two ordered
//! points, and its detailed structure over complete graphs.
//!
//! A vertex of the model is an off-diagonal pair `(a, b)` of vertices of the
//! base complex, written as a column with `a` on top. A simplex is a sequence
//! of columns whose two rows are non-decreasing, whose row supports are faces
//! of the base, and where every step strictly increases at least one row.
//! Pairs are ordered lexicographically; they are encoded as integers
//! `rank(a) * n + rank(b)` so the integer order is the pair order.

use std::collections::{BTreeSet, HashMap};

use crate::complex::{ChainExpr, OrderedComplex, Simplex, Vertex};
use crate::cup::{zcl_lower_bound, CupTable, GradedRing, TensorClass};
use crate::error::{Error, Result};
use crate::gradient::{build_field_a, GradientField};
use crate::morse::{BettiProfile, MorseComplex, MorseContext};

/// The complete graph on vertices `1..=m`.
pub fn complete_graph(m: u32) -> OrderedComplex {
    let mut faces: Vec<Vec<u32>> = Vec::new();
    for a in 1..=m {
        faces.push(vec![a]);
        for b in a + 1..=m {
            faces.push(vec![a, b]);
        }
    }
    OrderedComplex::from_maximal_faces(&faces).expect("valid complete graph")
}

/// Munkres' model of `Conf(|K|, 2)` inside the ordered product `K × K`.
///
/// Vertex labels are `(a,b)` built from the labels of `k`.
pub fn munkres_conf2(k: &OrderedComplex) -> OrderedComplex {
    let n = k.vertices().len() as u32;
    let verts = k.vertices();
    let cols: Vec<(u32, u32)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out: Vec<Simplex> = Vec::new();
    let mut chain: Vec<(u32, u32)> = Vec::new();
    for &c in &cols {
        chain.push(c);
        extend(k, verts, &cols, &mut chain, &mut out, n);
        chain.pop();
    }
    let mut labels = HashMap::new();
    for &(a, b) in &cols {
        labels.insert(
            Vertex(a * n + b),
            format!("({},{})", k.label(verts[a as usize]), k.label(verts[b as usize])),
        );
    }
    OrderedComplex::from_simplices(out, Some(&labels))
}

fn row_is_face(k: &OrderedComplex, verts: &[Vertex], row: impl Iterator<Item = u32>) -> bool {
    let set: BTreeSet<u32> = row.collect();
    let s = Simplex::new(set.into_iter().map(|i| verts[i as usize]).collect()).expect("non-empty");
    k.contains(&s)
}

fn extend(
    k: &OrderedComplex,
    verts: &[Vertex],
    cols: &[(u32, u32)],
    chain: &mut Vec<(u32, u32)>,
    out: &mut Vec<Simplex>,
    n: u32,
) {
    out.push(Simplex::new(chain.iter().map(|&(a, b)| Vertex(a * n + b)).collect()).expect("increasing"));
    let last = *chain.last().expect("non-empty chain");
    for &c in cols {
        if c.0 < last.0 || c.1 < last.1 || c == last {
            continue;
        }
        chain.push(c);
        let ok = row_is_face(k, verts, chain.iter().map(|x| x.0)) && row_is_face(k, verts, chain.iter().map(|x| x.1));
        if ok {
            extend(k, verts, cols, chain, out, n);
        }
        chain.pop();
    }
}

/// A column `(top, bottom)` of the model over `K_m`.
pub type Col = (u32, u32);

/// The model over the complete graph `K_m`, with helpers for the matrix
/// notation used throughout.
#[derive(Debug, Clone)]
pub struct ConfKm {
    pub m: u32,
    pub complex: OrderedComplex,
}

impl ConfKm {
    pub fn new(m: u32) -> Self {
        ConfKm { m, complex: munkres_conf2(&complete_graph(m)) }
    }

    /// The vertex encoding the column `(a, b)`, `1 ≤ a, b ≤ m`.
    pub fn vertex(&self, c: Col) -> Vertex {
        Vertex((c.0 - 1) * self.m + (c.1 - 1))
    }

    pub fn decode(&self, v: Vertex) -> Col {
        (v.0 / self.m + 1, v.0 % self.m + 1)
    }

    /// The simplex with the given columns (any order).
    pub fn cols(&self, cs: &[Col]) -> Simplex {
        Simplex::from_unsorted(cs.iter().map(|&c| self.vertex(c)).collect()).expect("distinct columns")
    }

    /// The 2-simplex with rows `top` and `bottom`.
    pub fn tri(&self, top: [u32; 3], bottom: [u32; 3]) -> Simplex {
        self.cols(&[(top[0], bottom[0]), (top[1], bottom[1]), (top[2], bottom[2])])
    }

    /// The 1-simplex with rows `top` and `bottom`.
    pub fn edge(&self, top: [u32; 2], bottom: [u32; 2]) -> Simplex {
        self.cols(&[(top[0], bottom[0]), (top[1], bottom[1])])
    }

    pub fn columns(&self, s: &Simplex) -> Vec<Col> {
        s.vertices().iter().map(|v| self.decode(*v)).collect()
    }

    /// Matrix notation `[[top row],[bottom row]]`.
    pub fn show(&self, s: &Simplex) -> String {
        let cs = self.columns(s);
        let top: Vec<String> = cs.iter().map(|c| c.0.to_string()).collect();
        let bot: Vec<String> = cs.iter().map(|c| c.1.to_string()).collect();
        format!("[[{}],[{}]]", top.join(","), bot.join(","))
    }
}

/// Arithmetic validity of a column sequence as a simplex of the model over
/// `K_m`, independent of any enumeration.
pub fn is_valid_km(m: u32, cs: &[Col]) -> bool {
    if cs.is_empty() {
        return false;
    }
    for &(a, b) in cs {
        if a == b || a < 1 || b < 1 || a > m || b > m {
            return false;
        }
    }
    for w in cs.windows(2) {
        let (x, y) = (w[0], w[1]);
        if y.0 < x.0 || y.1 < x.1 || (y.0 == x.0 && y.1 == x.1) {
            return false;
        }
    }
    // Faces of K_m are vertices and edges: each row has at most two values.
    let top: BTreeSet<u32> = cs.iter().map(|c| c.0).collect();
    let bot: BTreeSet<u32> = cs.iter().map(|c| c.1).collect();
    top.len() <= 2 && bot.len() <= 2
}

fn range(m: u32) -> std::ops::RangeInclusive<u32> {
    1..=m
}

/// The pairings of the algorithmic field on the model over `K_m`, as
/// `(redundant, collapsible)` column lists, generated from their closed-form
/// description (`m ≥ 4`).
pub fn expected_pairings_wm(m: u32) -> Vec<(Vec<Col>, Vec<Col>)> {
    let mut out: BTreeSet<(Vec<Col>, Vec<Col>)> = BTreeSet::new();
    let mut add = |lo: Vec<Col>, hi: Vec<Col>| {
        if is_valid_km(m, &lo) && is_valid_km(m, &hi) {
            out.insert((lo, hi));
        }
    };
    for a in range(m) {
        for b in range(m) {
            // (g)
            if b + 1 < m || (a + 1 < m && b == m - 1) {
                add(vec![(a, b)], vec![(a, b), (m, m - 1)]);
            }
            // (h)
            if a + 1 < m && b == m {
                add(vec![(a, m)], vec![(a, m), (m - 1, m)]);
            }
            // (b)
            if a + 1 < m {
                add(vec![(a, b), (a, m)], vec![(a, b), (a, m), (m - 1, m)]);
            }
            // (d)
            if b + 1 < m {
                add(vec![(a, b), (m, b)], vec![(a, b), (m, b), (m, m - 1)]);
            }
            for c in range(m) {
                for d in range(m) {
                    // (a)
                    if c == a && a < m && d < m {
                        add(vec![(a, b), (a, d)], vec![(a, b), (a, d), (m, d)]);
                    }
                    // (c)
                    if d == b && b < m && c < m {
                        add(vec![(a, b), (c, b)], vec![(a, b), (c, b), (c, m)]);
                    }
                    if a < c && b < d {
                        // (e)
                        if b != c && ((c < m && d < m) || (c == m && m > d + 1)) {
                            add(vec![(a, b), (c, d)], vec![(a, b), (c, b), (c, d)]);
                        }
                        // (f)
                        if a != d && ((b == c && c < m && d < m) || (c + 1 < m && m == d)) {
                            add(vec![(a, b), (c, d)], vec![(a, b), (a, d), (c, d)]);
                        }
                    }
                }
            }
        }
    }
    // (i)
    add(vec![(m - 1, m)], vec![(m - 1, m - 2), (m - 1, m)]);
    out.into_iter().collect()
}

/// Critical faces of the algorithmic field over `K_m` from their closed-form
/// description, per dimension, as column lists.
pub fn expected_critical(m: u32) -> Vec<Vec<Vec<Col>>> {
    let mut dims: Vec<BTreeSet<Vec<Col>>> = vec![BTreeSet::new(); 3];
    dims[0].insert(vec![(m, m - 1)]);
    for a in range(m) {
        for b in range(m) {
            let k1 = vec![(a, b), (m - 1, m)];
            if ((a == m - 1 && m > b + 2) || (a + 1 < m && m > b)) && is_valid_km(m, &k1) {
                dims[1].insert(k1);
            }
            for d in range(m) {
                let k2 = vec![(m, b), (m, d)];
                if d + 1 < m && is_valid_km(m, &k2) {
                    dims[1].insert(k2);
                }
                let k3 = vec![(a, m), (d, m)];
                if d + 1 < m && is_valid_km(m, &k3) {
                    dims[1].insert(k3);
                }
                for c in range(m) {
                    let l = vec![(a, b), (a, d), (c, d)];
                    if b != c && c < m && d < m && is_valid_km(m, &l) {
                        dims[2].insert(l);
                    }
                }
            }
        }
    }
    dims.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Closed-form critical counts `(c0, c1, c2)`.
pub fn critical_count_formula(m: u32) -> (u64, u64, u64) {
    let m = m as u64;
    (1, 2 * (m - 2) * (m - 2) - 1, (m - 1) * (m - 2) * (m - 3) * (m - 4) / 4)
}

/// Closed-form Euler characteristic.
pub fn euler_formula(m: u32) -> i64 {
    let m = m as i64;
    m * (m * m * m - 10 * m * m + 27 * m - 18) / 4
}

/// Closed-form Betti numbers `(b0, b1, b2)` for `m ≥ 5`.
pub fn betti_formula(m: u32) -> (u64, u64, u64) {
    let m = m as u64;
    (1, (m - 1) * (m - 2), m * (m - 2) * (m - 3) * (m - 5) / 4 + 1)
}

fn idx(a: u32, b: u32) -> String {
    if a < 10 && b < 10 {
        format!("{a}{b}")
    } else {
        format!("{a},{b}")
    }
}

/// Named Morse cochains over the model on `K_m`.
pub struct Cochains<'a> {
    conf: &'a ConfKm,
}

impl<'a> Cochains<'a> {
    pub fn new(conf: &'a ConfKm) -> Self {
        Cochains { conf }
    }

    fn m(&self) -> u32 {
        self.conf.m
    }

    /// Whether `b̂_ab` (dual of the critical edge `[(a,b),(m-1,m)]`) exists.
    pub fn has_b_hat(&self, a: u32, b: u32) -> bool {
        let m = self.m();
        a >= 1 && b >= 1 && a < m && b < m && a != b && (a, b) != (m - 1, m - 2)
    }

    /// `b̂_ab`, the dual of `[(a,b),(m-1,m)]`.
    pub fn b_hat(&self, a: u32, b: u32) -> ChainExpr {
        let m = self.m();
        assert!(self.has_b_hat(a, b), "b̂_{a}{b} is not defined for m = {m}");
        ChainExpr::single(self.conf.cols(&[(a, b), (m - 1, m)]), 1)
    }

    /// `δ_{b,d}`, the dual of `[(m,b),(m,d)]`.
    pub fn delta(&self, b: u32, d: u32) -> ChainExpr {
        let m = self.m();
        ChainExpr::single(self.conf.cols(&[(m, b), (m, d)]), 1)
    }

    /// `υ_{a,c}`, the dual of `[(a,m),(c,m)]`.
    pub fn upsilon(&self, a: u32, c: u32) -> ChainExpr {
        let m = self.m();
        ChainExpr::single(self.conf.cols(&[(a, m), (c, m)]), 1)
    }

    fn sum_b_hat<I: IntoIterator<Item = (u32, u32)>>(&self, idx: I) -> ChainExpr {
        let mut out = ChainExpr::zero_in(1);
        for (i, j) in idx {
            if self.has_b_hat(i, j) {
                out = out.add(&self.b_hat(i, j)).expect("small coefficients");
            }
        }
        out
    }

    /// The element `â_ab` of the region-based basis change (`m ≥ 5`).
    pub fn a_hat(&self, a: u32, b: u32) -> ChainExpr {
        let m = self.m();
        assert!(self.has_b_hat(a, b), "â_{a}{b} is not defined for m = {m}");
        let rows = |hi: u32| 1..=hi;
        if a <= 2 || (a + 3 <= m && b == m - 1) || (a, b) == (3, 1) {
            return self.sum_b_hat(rows(b).filter(|&j| j != a).map(|j| (a, j)));
        }
        if (a >= 4 && b == 1) || (a == m - 1 && b + 4 <= m) {
            return self.sum_b_hat(rows(a).filter(|&i| i != b).map(|i| (i, b)));
        }
        if (a, b) == (3, 2) {
            return self.sum_b_hat([(3, 2), (3, 1), (2, 3), (2, 1), (1, 3), (1, 2)]);
        }
        if a >= 4 && a + 2 <= m && b == 2 {
            let first = self.sum_b_hat(rows(a).filter(|&i| i != 2).map(|i| (i, 2)));
            return first.add(&self.sum_b_hat(rows(a - 1).map(|i| (i, a)))).expect("small");
        }
        if (3..=m - 2).contains(&a) && (3..=m - 2).contains(&b) {
            let mut pairs = Vec::new();
            for i in rows(a) {
                for j in rows(b) {
                    if j != i && j != a {
                        pairs.push((i, j));
                    }
                }
            }
            let first = self.sum_b_hat(pairs);
            return first.add(&self.sum_b_hat(rows(a - 1).map(|i| (i, a)))).expect("small");
        }
        if (a, b) == (m - 1, m - 3) {
            let mut pairs = Vec::new();
            for i in rows(m - 2) {
                for j in rows(m - 2) {
                    if j != m - 3 && j != i {
                        pairs.push((i, j));
                    }
                }
            }
            return self.b_hat(a, b).sub(&self.sum_b_hat(pairs)).expect("small");
        }
        if (a, b) == (m - 2, m - 1) {
            let mut pairs = Vec::new();
            for i in rows(m - 3) {
                for j in rows(m - 2) {
                    if j != i {
                        pairs.push((i, j));
                    }
                }
            }
            return self.b_hat(a, b).sub(&self.sum_b_hat(pairs)).expect("small");
        }
        unreachable!("regions cover every admissible (a, b)")
    }

    /// All admissible index pairs of `â`/`b̂`, lex ordered.
    pub fn hat_indices(&self) -> Vec<(u32, u32)> {
        let m = self.m();
        let mut out = Vec::new();
        for a in 1..m {
            for b in 1..m {
                if self.has_b_hat(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The degree-1 cohomology basis: selected `λ_ab = â_ab`, then `δ`, then `υ`.
    ///
    /// The `λ` are ordered as those with `a = m-1`, those with `b = m-1`,
    /// and finally `λ_{m-2,m-3}`.
    pub fn basis_dim1(&self) -> Vec<(String, ChainExpr)> {
        let m = self.m();
        let mut out = Vec::new();
        for b in 1..m - 2 {
            out.push((format!("λ{}", idx(m - 1, b)), self.a_hat(m - 1, b)));
        }
        for a in 1..m - 1 {
            out.push((format!("λ{}", idx(a, m - 1)), self.a_hat(a, m - 1)));
        }
        out.push((format!("λ{}", idx(m - 2, m - 3)), self.a_hat(m - 2, m - 3)));
        for b in 1..m {
            for d in b + 1..m - 1 {
                out.push((format!("δ{}", idx(b, d)), self.delta(b, d)));
            }
        }
        for a in 1..m {
            for c in a + 1..m - 1 {
                out.push((format!("υ{}", idx(a, c)), self.upsilon(a, c)));
            }
        }
        out
    }

    /// The 2-simplex `[[a,a,c],[b,d,d]]`.
    pub fn l(&self, a: u32, c: u32, b: u32, d: u32) -> Simplex {
        self.conf.tri([a, a, c], [b, d, d])
    }

    /// The special critical 2-faces (four families) that complement the
    /// leading set in the degree-2 basis.
    pub fn c_set(&self) -> Vec<Simplex> {
        let m = self.m();
        let mut out = BTreeSet::new();
        for c in 3..m {
            for d in 3..m {
                if c != d {
                    out.insert(self.l(1, c, 2, d));
                }
            }
        }
        for d in 4..m {
            out.insert(self.l(1, 2, 3, d));
        }
        for c in 4..m {
            out.insert(self.l(2, c, 1, 3));
        }
        out.insert(self.l(2, 3, 1, 4));
        out.into_iter().collect()
    }

    /// Critical 2-faces outside [`Self::c_set`]; their duals form a basis of
    /// degree-2 cohomology.
    pub fn b_set(&self) -> Vec<Simplex> {
        let c: BTreeSet<Simplex> = self.c_set().into_iter().collect();
        expected_critical(self.m())[2]
            .iter()
            .map(|cs| self.conf.cols(cs))
            .filter(|s| !c.contains(s))
            .collect()
    }

    /// The cycle `X'` attached to `X = [[a,a,c],[b,d,d]]` in the leading set:
    /// `X` plus a combination of faces of the special set.
    pub fn b_prime(&self, x: &Simplex) -> ChainExpr {
        let cs = self.conf.columns(x);
        let (a, b, c, d) = (cs[0].0, cs[0].1, cs[2].0, cs[2].1);
        let t = |sign: i64, a: u32, c: u32, b: u32, d: u32| (self.l(a, c, b, d), sign);
        let terms: Vec<(Simplex, i64)> = match (a, b) {
            (1, _) if c >= 3 => vec![t(-1, 1, c, 2, d), t(1, 1, c, 2, b)],
            (1, _) => vec![t(-1, 1, 2, 3, d), t(1, 1, 2, 3, b)],
            (2, 1) if c >= 4 => vec![t(-1, 2, c, 1, 3), t(1, 1, 2, 3, d), t(-1, 1, c, 2, d), t(1, 1, c, 2, 3)],
            (2, 1) => vec![
                t(-1, 2, 3, 1, 4),
                t(1, 1, 2, 3, d),
                t(-1, 1, 2, 3, 4),
                t(1, 1, 3, 2, 4),
                t(-1, 1, 3, 2, d),
            ],
            (2, 3) => vec![t(1, 1, 2, 3, d), t(-1, 1, c, 2, d), t(1, 1, c, 2, 3)],
            (2, _) => vec![t(-1, 1, 2, 3, b), t(1, 1, 2, 3, d), t(-1, 1, c, 2, d), t(1, 1, c, 2, b)],
            (3, 1) => {
                let mut v = vec![t(1, 2, 3, 1, 4), t(-1, 2, c, 1, 3), t(1, 1, 2, 3, 4)];
                match d {
                    2 => v.extend([t(-1, 1, 3, 2, 4), t(1, 1, c, 2, 3)]),
                    4 => v.extend([t(-1, 1, c, 2, 4), t(1, 1, c, 2, 3)]),
                    _ => v.extend([t(-1, 1, c, 2, d), t(1, 1, c, 2, 3), t(-1, 1, 3, 2, 4), t(1, 1, 3, 2, d)]),
                }
                v
            }
            (3, 2) => vec![t(-1, 1, c, 2, d), t(1, 1, 3, 2, d)],
            (3, _) => vec![t(-1, 1, c, 2, d), t(1, 1, c, 2, b), t(-1, 1, 3, 2, b), t(1, 1, 3, 2, d)],
            (_, 1) => match d {
                2 => vec![t(-1, 1, a, 2, 3), t(1, 1, c, 2, 3), t(-1, 2, c, 1, 3), t(1, 2, a, 1, 3)],
                3 => vec![t(-1, 2, c, 1, 3), t(1, 2, a, 1, 3)],
                _ => vec![
                    t(-1, 2, c, 1, 3),
                    t(1, 2, a, 1, 3),
                    t(-1, 1, c, 2, d),
                    t(1, 1, c, 2, 3),
                    t(-1, 1, a, 2, 3),
                    t(1, 1, a, 2, d),
                ],
            },
            (_, 2) => vec![t(-1, 1, c, 2, d), t(1, 1, a, 2, d)],
            _ => vec![t(-1, 1, c, 2, d), t(1, 1, c, 2, b), t(-1, 1, a, 2, b), t(1, 1, a, 2, d)],
        };
        let mut out = ChainExpr::single(x.clone(), 1);
        for (s, k) in terms {
            out.add_term(s, k).expect("small coefficients");
        }
        out
    }

    /// Degree-2 cohomology basis: duals of the leading set, named by their
    /// matrix notation.
    pub fn basis_dim2(&self) -> Vec<(String, ChainExpr)> {
        self.b_set().into_iter().map(|s| (self.conf.show(&s), ChainExpr::single(s, 1))).collect()
    }
}

/// The algorithmic field on the model over `K_m` with its Morse complex.
pub struct ConfMorse {
    pub conf: ConfKm,
    pub field: GradientField,
    pub morse: MorseComplex,
}

impl ConfMorse {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::contract("the model needs m >= 2"));
        }
        let conf = ConfKm::new(m);
        let field = build_field_a(&conf.complex);
        let morse = MorseContext::new(&conf.complex, &field)?.morse_complex()?;
        Ok(ConfMorse { conf, field, morse })
    }

    pub fn context(&self) -> Result<MorseContext<'_>> {
        MorseContext::new(&self.conf.complex, &self.field)
    }

    pub fn cochains(&self) -> Cochains<'_> {
        Cochains::new(&self.conf)
    }

    pub fn homology(&self) -> Result<BettiProfile> {
        self.morse.homology()
    }

    /// Products of the degree-1 basis, expressed in the degree-2 basis
    /// (`m ≥ 5`).
    pub fn cup_table(&self) -> Result<CupTable> {
        if self.conf.m < 5 {
            return Err(Error::contract("the named cohomology bases need m >= 5"));
        }
        let co = self.cochains();
        CupTable::compute(&self.context()?, &self.morse, &co.basis_dim1(), &co.basis_dim2())
    }

    /// Largest dimension carrying critical faces; bounds the homotopy dimension.
    pub fn critical_dimension(&self) -> usize {
        self.morse.critical.iter().rposition(|c| !c.is_empty()).unwrap_or(0)
    }
}

/// Certified bounds on the higher topological complexity `TC_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TcReport {
    pub m: u32,
    pub s: usize,
    /// Zero-divisor cup-length found among the candidates.
    pub lower: usize,
    /// `s` times the dimension of the Morse complex.
    pub upper: usize,
    /// Coefficient modulus of the computation (0 for the integers).
    pub modulus: i64,
    /// Names of the classes feeding the zero divisors.
    pub classes: Vec<String>,
}

impl TcReport {
    /// `TC_s` when the bounds agree.
    pub fn value(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Builds the zero divisors `x_(1) - x_(i)` (`2 ≤ i ≤ s`) for each class in
/// `spread`, and `x_(1) - x_(s)` for each class in `tail`.
pub fn zero_divisor_family(s: usize, spread: &[Vec<i64>], tail: &[Vec<i64>]) -> Vec<TensorClass> {
    let mut out = Vec::new();
    for x in spread {
        for i in 1..s {
            out.push(TensorClass::zero_divisor(s, 0, i, 1, x));
        }
    }
    for x in tail {
        out.push(TensorClass::zero_divisor(s, 0, s - 1, 1, x));
    }
    out
}

/// Lower and upper bounds for `TC_s(Conf(|K_m|, 2))` from explicit zero
/// divisors in the computed cohomology ring.
///
/// For `m = 4` all products vanish and two independent classes are used.
/// For `m = 5` integer coefficients are used: the top product of the chosen
/// zero divisors is twice the top class, so it dies mod 2. For `m ≥ 6` the
/// computation is mod 2 with `x = δ12`, `y = υ34`, `z = υ13`, `w = δ24`.
pub fn tc_report(m: u32, s: usize) -> Result<TcReport> {
    if m < 4 || s < 2 {
        return Err(Error::contract("tc bounds need m >= 4 and s >= 2"));
    }
    let cm = ConfMorse::new(m)?;
    let upper = s * cm.critical_dimension();
    let (ring, spread, tail, classes) = if m == 4 {
        let n = cm.morse.critical[1].len();
        let ring = GradedRing::new(vec![1, n], 2)?;
        let names = vec![cm.conf.show(&cm.morse.critical[1][0]), cm.conf.show(&cm.morse.critical[1][1])];
        (ring, vec![unit(n, 0)], vec![unit(n, 1)], names)
    } else {
        let table = cm.cup_table()?;
        let n = table.basis.len();
        let by = |name: &str| -> Result<Vec<i64>> {
            table.index_of(name).map(|i| unit(n, i)).ok_or_else(|| Error::contract(format!("no class {name}")))
        };
        if m == 5 {
            let mut x = vec![0i64; n];
            for name in ["λ42", "λ41", "λ34", "λ32", "λ24", "λ14"] {
                x[table.index_of(name).expect("named class")] += 1;
            }
            let ring = GradedRing::from_cup_table(&table, 0)?;
            let names = ["λ42+λ41+λ34+λ32+λ24+λ14", "υ12", "λ24", "δ13"].map(String::from).to_vec();
            (ring, vec![x, by("υ12")?], vec![by("λ24")?, by("δ13")?], names)
        } else {
            let ring = GradedRing::from_cup_table(&table, 2)?;
            let names = ["δ12", "υ34", "υ13", "δ24"].map(String::from).to_vec();
            (ring, vec![by("δ12")?, by("υ34")?], vec![by("υ13")?, by("δ24")?], names)
        }
    };
    let cands = zero_divisor_family(s, &spread, &tail);
    let lower = zcl_lower_bound(&ring, &cands)?;
    Ok(TcReport { m, s, lower, upper, modulus: ring.modulus(), classes })
}
