//! Small hand-triangulated surfaces used in examples and tests.

use crate::complex::OrderedComplex;

/// Six-vertex projective plane.
pub const RP2_FACETS: [[u32; 3]; 10] = [
    [2, 3, 4],
    [1, 3, 4],
    [1, 2, 5],
    [1, 3, 5],
    [1, 2, 6],
    [2, 3, 6],
    [2, 4, 5],
    [4, 5, 6],
    [1, 4, 6],
    [3, 5, 6],
];

/// Relabelling of [`RP2_FACETS`] producing the punctured plane's vertex order.
const PUNCTURE_RELABEL: [u32; 7] = [0, 2, 3, 6, 5, 4, 1];

/// Nine-vertex torus on a 3×3 grid, rows listed bottom to top.
pub const TORUS_GRID: [[u32; 4]; 4] = [[1, 7, 2, 1], [8, 5, 6, 8], [3, 4, 9, 3], [1, 7, 2, 1]];

pub fn rp2() -> OrderedComplex {
    OrderedComplex::from_maximal_faces(&RP2_FACETS).expect("valid fixture")
}

/// The projective plane with vertices relabelled and the facet `[1,2,3]` removed.
pub fn punctured_rp2() -> OrderedComplex {
    let facets: Vec<Vec<u32>> = RP2_FACETS
        .iter()
        .map(|f| {
            let mut g: Vec<u32> = f.iter().map(|&v| PUNCTURE_RELABEL[v as usize]).collect();
            g.sort_unstable();
            g
        })
        .filter(|g| g != &[1, 2, 3])
        .collect();
    OrderedComplex::from_maximal_faces(&facets).expect("valid fixture")
}

pub fn torus_facets() -> Vec<[u32; 3]> {
    let g = &TORUS_GRID;
    let mut out = Vec::new();
    for y in 0..3 {
        for x in 0..3 {
            let (ll, lr, ul, ur) = (g[y][x], g[y][x + 1], g[y + 1][x], g[y + 1][x + 1]);
            out.push([ll, lr, ur]);
            out.push([ll, ul, ur]);
        }
    }
    out
}

pub fn torus() -> OrderedComplex {
    OrderedComplex::from_maximal_faces(&torus_facets()).expect("valid fixture")
}

/// Full simplex on vertices `1..=n`.
pub fn full_simplex(n: u32) -> OrderedComplex {
    let f: Vec<u32> = (1..=n).collect();
    OrderedComplex::from_maximal_faces(&[f]).expect("valid fixture")
}
