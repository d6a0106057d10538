//! Periodic topological CSS codes and their Tanner graphs.
//!
//! Qubit indexing:
//!
//! * 2D toric, lattice size `L`: edge `(o, x, y)` has index `o·L² + x·L + y`,
//!   where `o = 0` is the edge from vertex `(x, y)` to `(x+1, y)` and `o = 1`
//!   the edge to `(x, y+1)`. Vertex and face rows are indexed `x·L + y`.
//! * 3D toric: edge `(o, x, y, z)` has index `o·L³ + x·L² + y·L + z`, with
//!   `o ∈ {0, 1, 2}` the direction. Vertex rows are `x·L² + y·L + z`; face
//!   rows are `plane·L³ + vertex` for planes `xy, xz, yz` anchored at the
//!   face's lowest corner.
//! * 6.6.6 colour code on an `lx × ly` torus: faces sit on a triangular
//!   lattice and qubits on its triangles. Cell `(x, y)` owns the up-triangle
//!   `{(x,y), (x+1,y), (x,y+1)}` at qubit `2(y·lx + x)` and the
//!   down-triangle `{(x+1,y), (x,y+1), (x+1,y+1)}` at `2(y·lx + x) + 1`.
//!   Face rows are `y·lx + x`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

/// Code family plus size parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CodeSpec {
    Toric2d { l: usize },
    Toric3d { l: usize },
    Color666 { lx: usize, ly: usize },
}

/// Colour-code sizes used for the experiment grid, keyed by qubit count.
pub const COLOR_SIZES: [(usize, (usize, usize)); 7] = [
    (18, (3, 3)),
    (36, (6, 3)),
    (72, (6, 6)),
    (144, (12, 6)),
    (288, (12, 12)),
    (432, (18, 12)),
    (648, (18, 18)),
];

impl CodeSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CodeSpec::Toric2d { .. } => "toric2d",
            CodeSpec::Toric3d { .. } => "toric3d",
            CodeSpec::Color666 { .. } => "color666",
        }
    }

    /// Size label: `L` for toric codes, `LXxLY` for the colour code.
    pub fn size_label(&self) -> String {
        match *self {
            CodeSpec::Toric2d { l } | CodeSpec::Toric3d { l } => l.to_string(),
            CodeSpec::Color666 { lx, ly } => format!("{lx}x{ly}"),
        }
    }

    pub fn build(&self) -> Result<CssCode> {
        match *self {
            CodeSpec::Toric2d { l } => build_toric_2d(l),
            CodeSpec::Toric3d { l } => build_toric_3d(l),
            CodeSpec::Color666 { lx, ly } => build_color_666(lx, ly),
        }
    }

    /// Colour-code spec for one of the grid qubit counts in [`COLOR_SIZES`].
    pub fn color_for_n(n: usize) -> Result<CodeSpec> {
        COLOR_SIZES
            .iter()
            .find(|(k, _)| *k == n)
            .map(|&(_, (lx, ly))| CodeSpec::Color666 { lx, ly })
            .ok_or_else(|| {
                Error::Parameter(format!(
                    "no colour-code size with n = {n}; known sizes are {:?}",
                    COLOR_SIZES.iter().map(|(k, _)| *k).collect::<Vec<_>>()
                ))
            })
    }

    /// The default sweep for a family: 2D toric L = 7..=23 step 2, 3D toric
    /// L = 3..=11 step 2, colour code over [`COLOR_SIZES`].
    pub fn default_grid(family: &str) -> Result<Vec<CodeSpec>> {
        match family {
            "toric2d" => Ok((7..=23).step_by(2).map(|l| CodeSpec::Toric2d { l }).collect()),
            "toric3d" => Ok((3..=11).step_by(2).map(|l| CodeSpec::Toric3d { l }).collect()),
            "color666" => Ok(COLOR_SIZES
                .iter()
                .map(|&(_, (lx, ly))| CodeSpec::Color666 { lx, ly })
                .collect()),
            other => Err(Error::Parameter(format!("unknown code family {other:?}"))),
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name(), self.size_label())
    }
}

/// Parses `toric2d:7`, `toric3d:3` or `color666:6x3`.
impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, size) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `family:size`, got {s:?}")))?;
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad size {t:?}: {e}")))
        };
        match name {
            "toric2d" => Ok(CodeSpec::Toric2d { l: num(size)? }),
            "toric3d" => Ok(CodeSpec::Toric3d { l: num(size)? }),
            "color666" => {
                let (lx, ly) = size
                    .split_once('x')
                    .ok_or_else(|| Error::Parse(format!("colour size must be LXxLY, got {size:?}")))?;
                Ok(CodeSpec::Color666 {
                    lx: num(lx)?,
                    ly: num(ly)?,
                })
            }
            other => Err(Error::Parse(format!("unknown code family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub spec: CodeSpec,
    pub n_qubits: usize,
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    /// `L` for both toric codes (the Z distance in 3D), unset for the colour code.
    pub distance_hint: Option<usize>,
}

impl CssCode {
    pub fn name(&self) -> &'static str {
        self.spec.name()
    }

    /// Whether `hx · hzᵀ = 0`.
    pub fn is_css(&self) -> bool {
        self.hx.mul(&self.hz.transpose()).map(|p| p.is_zero()).unwrap_or(false)
    }
}

/// Check/qubit adjacency of one parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    pub check_adj: Vec<Vec<usize>>,
    pub qubit_adj: Vec<Vec<usize>>,
    pub max_degree: usize,
}

impl TannerGraph {
    pub fn n_checks(&self) -> usize {
        self.check_adj.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.qubit_adj.len()
    }
}

pub fn tanner_graph(h: &BitMatrix) -> TannerGraph {
    let check_adj: Vec<Vec<usize>> = h.iter_rows().map(|r| r.iter_ones().collect()).collect();
    let mut qubit_adj = vec![Vec::new(); h.cols()];
    for (i, adj) in check_adj.iter().enumerate() {
        for &j in adj {
            qubit_adj[j].push(i);
        }
    }
    let max_degree = check_adj.iter().chain(&qubit_adj).map(Vec::len).max().unwrap_or(0);
    TannerGraph {
        check_adj,
        qubit_adj,
        max_degree,
    }
}

/// Number of 1-bits in `h`.
pub fn total_weight(h: &BitMatrix) -> usize {
    h.count_ones()
}

fn rows_from_supports(cols: usize, supports: impl IntoIterator<Item = Vec<usize>>) -> BitMatrix {
    let rows = supports
        .into_iter()
        .map(|s| {
            let mut row = BitVec::zeros(cols);
            for q in s {
                row.flip(q);
            }
            row
        })
        .collect();
    BitMatrix::from_rows(cols, rows).expect("rows are built with the right width")
}

/// Toric code on an `L × L` periodic square lattice, `[[2L², 2, L]]`.
/// `hx` rows are vertex stars, `hz` rows are plaquettes.
pub fn build_toric_2d(l: usize) -> Result<CssCode> {
    if l < 2 {
        return Err(Error::Parameter(format!("toric code needs L >= 2, got {l}")));
    }
    let n = 2 * l * l;
    let edge = |o: usize, x: usize, y: usize| o * l * l + (x % l) * l + (y % l);
    let sites = || (0..l).flat_map(move |x| (0..l).map(move |y| (x, y)));

    let hx = rows_from_supports(
        n,
        sites().map(|(x, y)| {
            vec![
                edge(0, x, y),
                edge(0, x + l - 1, y),
                edge(1, x, y),
                edge(1, x, y + l - 1),
            ]
        }),
    );
    let hz = rows_from_supports(
        n,
        sites().map(|(x, y)| vec![edge(0, x, y), edge(0, x, y + 1), edge(1, x, y), edge(1, x + 1, y)]),
    );
    Ok(CssCode {
        spec: CodeSpec::Toric2d { l },
        n_qubits: n,
        hx,
        hz,
        distance_hint: Some(l),
    })
}

/// Toric code on an `L × L × L` periodic cubic lattice, `[[3L³, 3]]` with
/// `d_X = L²`, `d_Z = L`. `hx` rows are weight-6 vertex stars, `hz` rows are
/// weight-4 faces.
pub fn build_toric_3d(l: usize) -> Result<CssCode> {
    if l < 2 {
        return Err(Error::Parameter(format!("3D toric code needs L >= 2, got {l}")));
    }
    let l3 = l * l * l;
    let n = 3 * l3;
    let vertex = |v: [usize; 3]| (v[0] % l) * l * l + (v[1] % l) * l + (v[2] % l);
    let edge = |o: usize, v: [usize; 3]| o * l3 + vertex(v);
    let step = |v: [usize; 3], o: usize, by: usize| {
        let mut w = v;
        w[o] += by;
        w
    };
    let sites = || (0..l).flat_map(move |x| (0..l).flat_map(move |y| (0..l).map(move |z| [x, y, z])));

    let hx = rows_from_supports(
        n,
        sites().map(|v| (0..3).flat_map(|o| [edge(o, v), edge(o, step(v, o, l - 1))]).collect()),
    );
    let hz = rows_from_supports(
        n,
        [(0, 1), (0, 2), (1, 2)].into_iter().flat_map(|(a, b)| {
            sites().map(move |v| vec![edge(a, v), edge(a, step(v, b, 1)), edge(b, v), edge(b, step(v, a, 1))])
        }),
    );
    Ok(CssCode {
        spec: CodeSpec::Toric3d { l },
        n_qubits: n,
        hx,
        hz,
        distance_hint: Some(l),
    })
}

/// 6.6.6 colour code on a periodic hexagonal lattice with `lx × ly` faces
/// and `2·lx·ly` qubits. Both dimensions must be multiples of 3 so the faces
/// are three-colourable. `hx = hz`, one weight-6 row per face.
pub fn build_color_666(lx: usize, ly: usize) -> Result<CssCode> {
    if lx < 3 || ly < 3 || !lx.is_multiple_of(3) || !ly.is_multiple_of(3) {
        return Err(Error::Parameter(format!(
            "colour code needs lx, ly >= 3 and divisible by 3, got ({lx}, {ly})"
        )));
    }
    let n = 2 * lx * ly;
    let up = |x: usize, y: usize| 2 * ((y % ly) * lx + (x % lx));
    let down = |x: usize, y: usize| up(x, y) + 1;
    let faces = (0..ly).flat_map(|y| (0..lx).map(move |x| (x, y)));
    let (xm, ym) = (lx - 1, ly - 1);
    let h = rows_from_supports(
        n,
        faces.map(|(x, y)| {
            vec![
                up(x, y),
                up(x + xm, y),
                up(x, y + ym),
                down(x + xm, y),
                down(x, y + ym),
                down(x + xm, y + ym),
            ]
        }),
    );
    Ok(CssCode {
        spec: CodeSpec::Color666 { lx, ly },
        n_qubits: n,
        hx: h.clone(),
        hz: h,
        distance_hint: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::lup_decompose;

    fn row_weights(h: &BitMatrix) -> Vec<usize> {
        let mut w: Vec<usize> = h.iter_rows().map(BitVec::count_ones).collect();
        w.dedup();
        w
    }

    fn col_weights(h: &BitMatrix) -> Vec<usize> {
        let mut w: Vec<usize> = (0..h.cols()).map(|j| h.column_weight(j)).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    #[test]
    fn toric_2d_shapes() {
        assert_eq!(build_toric_2d(7).unwrap().n_qubits, 98);
        let c = build_toric_2d(2).unwrap();
        assert_eq!(c.n_qubits, 8);
        assert_eq!(row_weights(&c.hx), vec![4]);
        assert_eq!(row_weights(&c.hz), vec![4]);
        for l in [2, 3, 4, 5] {
            let c = build_toric_2d(l).unwrap();
            assert_eq!((c.hx.rows(), c.hz.rows()), (l * l, l * l));
            assert_eq!(col_weights(&c.hx), vec![2]);
            assert!(c.is_css());
        }
        assert!(matches!(build_toric_2d(1), Err(Error::Parameter(_))));
    }

    #[test]
    fn toric_2d_rank() {
        let c = build_toric_2d(3).unwrap();
        assert_eq!(lup_decompose(&c.hx, None).unwrap().rank(), 8);
    }

    #[test]
    fn toric_3d_shapes() {
        assert_eq!(build_toric_3d(3).unwrap().n_qubits, 81);
        let c = build_toric_3d(2).unwrap();
        assert_eq!(c.n_qubits, 24);
        assert_eq!(row_weights(&c.hx), vec![6]);
        assert_eq!(row_weights(&c.hz), vec![4]);
        assert_eq!(col_weights(&c.hx), vec![2]);
        assert!(c.is_css());
        let c3 = build_toric_3d(3).unwrap();
        assert_eq!(c3.hz.rows(), 81);
        assert!(c3.is_css());
        assert_eq!(lup_decompose(&c3.hx, None).unwrap().rank(), 26);
        assert!(build_toric_3d(0).is_err());
    }

    #[test]
    fn colour_shapes() {
        for &(n, (lx, ly)) in &COLOR_SIZES {
            let c = build_color_666(lx, ly).unwrap();
            assert_eq!(c.n_qubits, n);
            assert_eq!(c.hx.rows(), lx * ly);
            assert_eq!(row_weights(&c.hx), vec![6]);
            assert_eq!(col_weights(&c.hx), vec![3]);
            assert!(c.distance_hint.is_none());
        }
        let c = build_color_666(3, 3).unwrap();
        assert!(c.is_css());
        assert_eq!(total_weight(&c.hx), 54);
        assert!(build_color_666(4, 3).is_err());
        assert!(build_color_666(3, 0).is_err());
    }

    #[test]
    fn colour_faces_share_zero_or_two_qubits() {
        let c = build_color_666(6, 3).unwrap();
        for a in c.hx.iter_rows() {
            for b in c.hx.iter_rows() {
                let mut both = a.clone();
                for j in 0..both.len() {
                    both.set(j, a.get(j) && b.get(j));
                }
                assert!(matches!(both.count_ones(), 0 | 2 | 6));
            }
        }
    }

    #[test]
    fn tanner_graph_examples() {
        let t = tanner_graph(&build_toric_2d(3).unwrap().hx);
        assert!(t.check_adj.iter().all(|a| a.len() == 4));
        assert!(t.qubit_adj.iter().all(|a| a.len() == 2));
        assert_eq!(t.max_degree, 4);

        let t = tanner_graph(&BitMatrix::zeros(3, 2));
        assert!(t.check_adj.iter().chain(&t.qubit_adj).all(Vec::is_empty));
        assert_eq!(t.max_degree, 0);

        let t = tanner_graph(&BitMatrix::identity(1));
        assert_eq!(t.check_adj, vec![vec![0]]);
        assert_eq!(t.qubit_adj, vec![vec![0]]);
        assert_eq!(t.max_degree, 1);
    }

    #[test]
    fn total_weight_examples() {
        assert_eq!(total_weight(&build_toric_2d(7).unwrap().hx), 196);
        assert_eq!(total_weight(&BitMatrix::zeros(4, 4)), 0);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("toric2d:7".parse::<CodeSpec>().unwrap(), CodeSpec::Toric2d { l: 7 });
        assert_eq!(
            "color666:6x3".parse::<CodeSpec>().unwrap(),
            CodeSpec::Color666 { lx: 6, ly: 3 }
        );
        assert!("color666:6".parse::<CodeSpec>().is_err());
        assert!("surface:3".parse::<CodeSpec>().is_err());
        assert_eq!(
            CodeSpec::color_for_n(144).unwrap(),
            CodeSpec::Color666 { lx: 12, ly: 6 }
        );
        assert!(CodeSpec::color_for_n(100).is_err());
        assert_eq!(CodeSpec::default_grid("toric2d").unwrap().len(), 9);
        assert_eq!(CodeSpec::default_grid("toric3d").unwrap().len(), 5);
    }
}
