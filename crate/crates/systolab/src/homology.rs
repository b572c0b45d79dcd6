//! Chain complexes over Z with exact homology (Betti numbers and torsion),
//! independent mod-2 homology, relative (quotient) complexes, and a catalog
//! of small CW/simplicial spaces.

use crate::exactlin::{rank_mod2, rank_rational, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
    #[error("subcells are not closed under boundary: cell {cell} of degree {degree} has a boundary cell outside the set")]
    NotSubcomplex { degree: usize, cell: usize },
    #[error("unknown catalog name: {0}")]
    UnknownCatalog(String),
}

/// A finite chain complex of free Z-modules.
///
/// `boundaries[k-1]` is ∂_k, mapping degree-k chains to degree-(k−1) chains,
/// of shape `cell_counts[k-1] × cell_counts[k]`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    cell_counts: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

/// One entry of the ∂∂ = 0 / shape-consistency report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub degree: usize,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Betti numbers, torsion coefficients, and mod-2 Betti numbers per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
    pub betti_mod2: Vec<usize>,
}

/// A coefficient vector on the cells of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub coefficients: Vec<BigInt>,
}

impl Chain {
    pub fn from_i64(degree: usize, coeffs: &[i64]) -> Self {
        Chain {
            degree,
            coefficients: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }
}

/// Validation report for raw wire data that may not form a legal complex
/// (ChainComplex::new rejects such data outright).
pub fn validate_raw(cell_counts: Vec<usize>, boundaries: Vec<IntMatrix>) -> ValidationReport {
    ChainComplex { cell_counts, boundaries }.validate()
}

impl ChainComplex {
    pub fn new(cell_counts: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, HomologyError> {
        let c = ChainComplex { cell_counts, boundaries };
        let report = c.validate();
        if report.valid {
            Ok(c)
        } else {
            Err(HomologyError::InvalidComplex(
                report
                    .violations
                    .iter()
                    .map(|v| format!("degree {}: {}", v.degree, v.message))
                    .collect::<Vec<_>>()
                    .join("; "),
            ))
        }
    }

    pub fn top_degree(&self) -> usize {
        self.cell_counts.len() - 1
    }

    pub fn cell_counts(&self) -> &[usize] {
        &self.cell_counts
    }

    pub fn cell_count(&self, degree: usize) -> usize {
        self.cell_counts.get(degree).copied().unwrap_or(0)
    }

    /// ∂_k. Degrees outside 1..=top yield an empty matrix of correct shape.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k == 0 || k > self.top_degree() {
            IntMatrix::zero(self.cell_count(k.wrapping_sub(1)), self.cell_count(k))
        } else {
            self.boundaries[k - 1].clone()
        }
    }

    /// Checks ∂∂ = 0 and shape consistency; lists every violated pair.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.cell_counts.is_empty() {
            violations.push(Violation {
                degree: 0,
                message: "complex must have at least degree 0".into(),
            });
            return ValidationReport { valid: false, violations };
        }
        let top = self.top_degree();
        if self.boundaries.len() != top {
            violations.push(Violation {
                degree: 0,
                message: format!("expected {} boundary matrices, got {}", top, self.boundaries.len()),
            });
            return ValidationReport { valid: false, violations };
        }
        for k in 1..=top {
            let b = &self.boundaries[k - 1];
            if b.rows() != self.cell_counts[k - 1] || b.cols() != self.cell_counts[k] {
                violations.push(Violation {
                    degree: k,
                    message: format!(
                        "boundary_{} has shape {}x{}, expected {}x{}",
                        k,
                        b.rows(),
                        b.cols(),
                        self.cell_counts[k - 1],
                        self.cell_counts[k]
                    ),
                });
            }
        }
        if !violations.is_empty() {
            return ValidationReport { valid: false, violations };
        }
        for k in 1..top {
            let prod = self.boundaries[k - 1].mul(&self.boundaries[k]);
            if !prod.is_zero() {
                violations.push(Violation {
                    degree: k + 1,
                    message: format!("boundary_{} · boundary_{} != 0", k, k + 1),
                });
            }
        }
        ValidationReport { valid: violations.is_empty(), violations }
    }

    /// ∂ applied to a chain of its degree.
    pub fn apply_boundary(&self, chain: &Chain) -> Chain {
        let b = self.boundary(chain.degree);
        let mut out = vec![BigInt::zero(); b.rows()];
        for (j, c) in chain.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += b.get(i, j) * c;
            }
        }
        Chain {
            degree: chain.degree.saturating_sub(1),
            coefficients: out,
        }
    }

    /// Exact homology in every degree, with mod-2 Betti numbers computed
    /// independently and cross-checked against universal coefficients.
    pub fn homology(&self) -> Result<HomologySummary, HomologyError> {
        let report = self.validate();
        if !report.valid {
            return Err(HomologyError::InvalidComplex(
                report
                    .violations
                    .iter()
                    .map(|v| v.message.clone())
                    .collect::<Vec<_>>()
                    .join("; "),
            ));
        }
        let top = self.top_degree();
        let mut betti = Vec::with_capacity(top + 1);
        let mut torsion = Vec::with_capacity(top + 1);
        let mut betti_mod2 = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let dk = self.boundary(k);
            let dk1 = self.boundary(k + 1);
            let rk = rank_rational(&dk);
            let rk1_snf = smith_normal_form(&dk1);
            let rk1 = rk1_snf.rank();
            let b = self.cell_counts[k] - rk - rk1;
            betti.push(b);
            torsion.push(rk1_snf.torsion());
            let b2 = self.cell_counts[k] - rank_mod2(&dk) - rank_mod2(&dk1);
            betti_mod2.push(b2);
        }
        // universal coefficients: b2_k = b_k + even torsion in degrees k and k-1
        for k in 0..=top {
            let even_k = torsion[k].iter().filter(|d| d.is_even()).count();
            let even_km1 = if k > 0 {
                torsion[k - 1].iter().filter(|d| d.is_even()).count()
            } else {
                0
            };
            let expected = betti[k] + even_k + even_km1;
            if betti_mod2[k] != expected {
                return Err(HomologyError::InvalidComplex(format!(
                    "universal coefficient cross-check failed in degree {}: mod-2 rank gives {}, integral data gives {}",
                    k, betti_mod2[k], expected
                )));
            }
        }
        Ok(HomologySummary { betti, torsion, betti_mod2 })
    }

    /// Quotient complex by a subcomplex: the listed cells and their
    /// rows/columns are deleted. Its homology is H_*(self, sub).
    pub fn relative_complex(&self, subcells: &[Vec<usize>]) -> Result<ChainComplex, HomologyError> {
        let top = self.top_degree();
        let mut keep: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
        let mut in_sub: Vec<Vec<bool>> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut mask = vec![false; self.cell_counts[k]];
            if let Some(list) = subcells.get(k) {
                for &c in list {
                    if c >= self.cell_counts[k] {
                        return Err(HomologyError::InvalidComplex(format!(
                            "subcell index {} out of range in degree {}",
                            c, k
                        )));
                    }
                    mask[c] = true;
                }
            }
            keep.push((0..self.cell_counts[k]).filter(|&i| !mask[i]).collect());
            in_sub.push(mask);
        }
        // closure under boundary
        for k in 1..=top {
            let b = self.boundary(k);
            for (cell, &is_sub) in in_sub[k].iter().enumerate() {
                if !is_sub {
                    continue;
                }
                for i in 0..b.rows() {
                    if !b.get(i, cell).is_zero() && !in_sub[k - 1][i] {
                        return Err(HomologyError::NotSubcomplex { degree: k, cell });
                    }
                }
            }
        }
        let cell_counts: Vec<usize> = keep.iter().map(|v| v.len()).collect();
        let mut boundaries = Vec::with_capacity(top);
        for k in 1..=top {
            let b = self.boundary(k);
            let mut q = IntMatrix::zero(keep[k - 1].len(), keep[k].len());
            for (jj, &j) in keep[k].iter().enumerate() {
                for (ii, &i) in keep[k - 1].iter().enumerate() {
                    q.set(ii, jj, b.get(i, j).clone());
                }
            }
            boundaries.push(q);
        }
        ChainComplex::new(cell_counts, boundaries)
    }
}

// ---------------------------------------------------------------------------
// JSON wire format: {"cells": [n0,...,ntop], "boundaries": [matrix per degree]}

#[derive(Serialize, Deserialize)]
struct ComplexWire {
    cells: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl Serialize for ChainComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComplexWire {
            cells: self.cell_counts.clone(),
            boundaries: self.boundaries.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChainComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = ComplexWire::deserialize(deserializer)?;
        ChainComplex::new(wire.cells, wire.boundaries).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Catalog

/// Builds a named complex from the catalog.
///
/// Names: `torus`, `klein`, `rp2`, `rp2_6`, `sphere(n)`, `s4_surgery_X`,
/// `s4_surgery_W`, `s4_surgery_Y`, `P(m)`, `W(m)`, `cpn_cw(n)`.
pub fn catalog(name: &str) -> Result<ChainComplex, HomologyError> {
    if let Some(n) = parse_param(name, "sphere") {
        return sphere(n);
    }
    if let Some(m) = parse_param(name, "P") {
        return whitehead_square_cone(m);
    }
    if let Some(m) = parse_param(name, "W") {
        return diagonal_cone(m);
    }
    if let Some(n) = parse_param(name, "cpn_cw") {
        return complex_projective(n);
    }
    match name {
        "torus" => ChainComplex::new(
            vec![1, 2, 1],
            vec![IntMatrix::zero(1, 2), IntMatrix::zero(2, 1)],
        ),
        "klein" => ChainComplex::new(
            vec![1, 2, 1],
            vec![IntMatrix::zero(1, 2), IntMatrix::from_i64(2, 1, &[2, 0])],
        ),
        "rp2" => ChainComplex::new(
            vec![1, 1, 1],
            vec![IntMatrix::zero(1, 1), IntMatrix::from_i64(1, 1, &[2])],
        ),
        "rp2_6" => rp2_minimal(),
        // S^4, surgered along an unknotted circle: W ~ S^2 v S^4, Y = S^2 x S^2
        "s4_surgery_X" => sphere(4),
        "s4_surgery_W" => ChainComplex::new(
            vec![1, 0, 1, 0, 1],
            zero_boundaries(&[1, 0, 1, 0, 1]),
        ),
        "s4_surgery_Y" => ChainComplex::new(
            vec![1, 0, 2, 0, 1],
            zero_boundaries(&[1, 0, 2, 0, 1]),
        ),
        other => Err(HomologyError::UnknownCatalog(other.to_string())),
    }
}

/// All catalog names, `sphere`/`P`/`W`/`cpn_cw` instantiated at small parameters.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = [
        "torus",
        "klein",
        "rp2",
        "rp2_6",
        "s4_surgery_X",
        "s4_surgery_W",
        "s4_surgery_Y",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for n in 1..=6 {
        names.push(format!("sphere({})", n));
    }
    for m in 2..=4 {
        names.push(format!("P({})", m));
        names.push(format!("W({})", m));
    }
    for n in 1..=3 {
        names.push(format!("cpn_cw({})", n));
    }
    names
}

fn parse_param(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    inner.parse().ok()
}

fn zero_boundaries(cells: &[usize]) -> Vec<IntMatrix> {
    (1..cells.len())
        .map(|k| IntMatrix::zero(cells[k - 1], cells[k]))
        .collect()
}

fn sphere(n: usize) -> Result<ChainComplex, HomologyError> {
    if n == 0 {
        return ChainComplex::new(vec![2], vec![]);
    }
    let mut cells = vec![0usize; n + 1];
    cells[0] = 1;
    cells[n] = 1;
    let b = zero_boundaries(&cells);
    ChainComplex::new(cells, b)
}

/// One cell in degrees 0, m, 2m; all boundaries vanish.
fn whitehead_square_cone(m: usize) -> Result<ChainComplex, HomologyError> {
    if m < 1 {
        return Err(HomologyError::UnknownCatalog(format!("P({})", m)));
    }
    let mut cells = vec![0usize; 2 * m + 1];
    cells[0] = 1;
    cells[m] = 1;
    cells[2 * m] = 1;
    let b = zero_boundaries(&cells);
    ChainComplex::new(cells, b)
}

/// Product of spheres with an (m+1)-cell attached along the diagonal class
/// a + b: cells in degrees 0, m (twice), m+1, 2m; ∂_{m+1} is the column (1,1).
fn diagonal_cone(m: usize) -> Result<ChainComplex, HomologyError> {
    if m < 2 {
        return Err(HomologyError::UnknownCatalog(format!("W({})", m)));
    }
    let mut cells = vec![0usize; 2 * m + 1];
    cells[0] = 1;
    cells[m] = 2;
    cells[m + 1] = 1;
    cells[2 * m] += 1;
    let mut b = zero_boundaries(&cells);
    b[m] = IntMatrix::from_i64(2, 1, &[1, 1]); // ∂_{m+1}
    ChainComplex::new(cells, b)
}

fn complex_projective(n: usize) -> Result<ChainComplex, HomologyError> {
    if n < 1 {
        return Err(HomologyError::UnknownCatalog(format!("cpn_cw({})", n)));
    }
    let mut cells = vec![0usize; 2 * n + 1];
    for k in (0..=2 * n).step_by(2) {
        cells[k] = 1;
    }
    let b = zero_boundaries(&cells);
    ChainComplex::new(cells, b)
}

/// Minimal 6-vertex triangulation of RP² (the hemi-icosahedron):
/// 6 vertices, 15 edges, 10 triangles.
fn rp2_minimal() -> Result<ChainComplex, HomologyError> {
    let faces: [[usize; 3]; 10] = [
        [0, 1, 4],
        [0, 1, 5],
        [0, 2, 3],
        [0, 2, 5],
        [0, 3, 4],
        [1, 2, 3],
        [1, 2, 4],
        [1, 3, 5],
        [2, 4, 5],
        [3, 4, 5],
    ];
    simplicial_surface(6, &faces)
}

/// Edge ordering of rp2_6, exposed so weighted-complex tests can refer to
/// specific edges by index.
pub fn rp2_minimal_edges() -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            edges.push((a, b));
        }
    }
    edges
}

fn simplicial_surface(nverts: usize, faces: &[[usize; 3]]) -> Result<ChainComplex, HomologyError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for f in faces {
        for &(a, b) in &[(f[0], f[1]), (f[0], f[2]), (f[1], f[2])] {
            let e = (a.min(b), a.max(b));
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    edges.sort();
    let edge_index = |a: usize, b: usize| edges.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
    let mut d1 = IntMatrix::zero(nverts, edges.len());
    for (j, &(a, b)) in edges.iter().enumerate() {
        d1.set(a, j, BigInt::from(-1));
        d1.set(b, j, BigInt::one());
    }
    let mut d2 = IntMatrix::zero(edges.len(), faces.len());
    for (j, f) in faces.iter().enumerate() {
        // ∂[v0<v1<v2] = [v1,v2] − [v0,v2] + [v0,v1]
        d2.set(edge_index(f[1], f[2]), j, BigInt::one());
        d2.set(edge_index(f[0], f[2]), j, BigInt::from(-1));
        d2.set(edge_index(f[0], f[1]), j, BigInt::one());
    }
    ChainComplex::new(vec![nverts, edges.len(), faces.len()], vec![d1, d2])
}

/// Random valid complex for property suites: each ∂_{k+1} is built inside
/// ker ∂_k from an SNF kernel basis, so ∂∂ = 0 holds by construction.
pub fn random_complex(rng: &mut impl rand::Rng, max_cells: usize) -> ChainComplex {
    let top = rng.gen_range(1..=3);
    let counts: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_cells)).collect();
    let mut boundaries: Vec<IntMatrix> = Vec::new();
    for k in 1..=top {
        let rows = counts[k - 1];
        let cols = counts[k];
        if k == 1 {
            let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
            boundaries.push(IntMatrix::from_i64(rows, cols, &entries));
        } else {
            let prev = &boundaries[k - 2];
            let snf = smith_normal_form(prev);
            let r = snf.rank();
            let kernel_dim = prev.cols() - r;
            let mut b = IntMatrix::zero(rows, cols);
            if kernel_dim > 0 {
                for j in 0..cols {
                    for t in 0..kernel_dim {
                        let coef = BigInt::from(rng.gen_range(-2i64..=2));
                        if coef.is_zero() {
                            continue;
                        }
                        for i in 0..rows {
                            let v = b.get(i, j) + snf.v.get(i, r + t) * &coef;
                            b.set(i, j, v);
                        }
                    }
                }
            }
            boundaries.push(b);
        }
    }
    ChainComplex::new(counts, boundaries).expect("construction enforces boundary-squared = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validate_torus() {
        let c = catalog("torus").unwrap();
        assert!(c.validate().valid);
    }

    #[test]
    fn validate_names_degree_of_violation() {
        // ∂1∂2 = [2] != 0
        let c = ChainComplex {
            cell_counts: vec![1, 1, 1],
            boundaries: vec![IntMatrix::from_i64(1, 1, &[2]), IntMatrix::from_i64(1, 1, &[1])],
        };
        let report = c.validate();
        assert!(!report.valid);
        assert_eq!(report.violations[0].degree, 2);
    }

    #[test]
    fn validate_rp2() {
        assert!(catalog("rp2").unwrap().validate().valid);
    }

    #[test]
    fn homology_torus() {
        let h = catalog("torus").unwrap().homology().unwrap();
        assert_eq!(h.betti, vec![1, 2, 1]);
        assert!(h.torsion.iter().all(|t| t.is_empty()));
        assert_eq!(h.betti_mod2, vec![1, 2, 1]);
    }

    #[test]
    fn homology_klein() {
        let h = catalog("klein").unwrap().homology().unwrap();
        assert_eq!(h.betti, vec![1, 1, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(h.betti_mod2, vec![1, 2, 1]);
    }

    #[test]
    fn homology_rp2() {
        let h = catalog("rp2").unwrap().homology().unwrap();
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(h.betti_mod2, vec![1, 1, 1]);
    }

    #[test]
    fn homology_rp2_minimal_triangulation() {
        let c = catalog("rp2_6").unwrap();
        assert_eq!(c.cell_counts(), &[6, 15, 10]);
        let h = c.homology().unwrap();
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(h.betti_mod2, vec![1, 1, 1]);
    }

    #[test]
    fn surgery_betti_triple() {
        let bx = catalog("s4_surgery_X").unwrap().homology().unwrap().betti[2];
        let bw = catalog("s4_surgery_W").unwrap().homology().unwrap().betti[2];
        let by = catalog("s4_surgery_Y").unwrap().homology().unwrap().betti[2];
        assert_eq!((bx, bw, by), (0, 1, 2));
    }

    #[test]
    fn p_and_w_complexes() {
        let h = catalog("P(2)").unwrap().homology().unwrap();
        assert_eq!(h.betti, vec![1, 0, 1, 0, 1]);
        let h = catalog("W(2)").unwrap().homology().unwrap();
        assert_eq!(h.betti[2], 1);
        assert!(h.torsion.iter().all(|t| t.is_empty()));
        let h = catalog("W(3)").unwrap().homology().unwrap();
        assert_eq!(h.betti[3], 1);
        assert_eq!(h.betti[4], 0);
    }

    #[test]
    fn spheres() {
        for n in 1..=6 {
            let h = catalog(&format!("sphere({})", n)).unwrap().homology().unwrap();
            for k in 0..=n {
                let expect = usize::from(k == 0 || k == n);
                assert_eq!(h.betti[k], expect, "sphere({}) degree {}", n, k);
            }
        }
    }

    #[test]
    fn cpn() {
        let h = catalog("cpn_cw(2)").unwrap().homology().unwrap();
        assert_eq!(h.betti, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn unknown_catalog_name() {
        assert!(matches!(catalog("bogus"), Err(HomologyError::UnknownCatalog(_))));
    }

    /// S¹×[0,1] with the product CW structure: one vertex and one loop per
    /// end circle, a seam edge, one face.
    fn cylinder() -> ChainComplex {
        // vertices v0, v1 (ends); edges: c0, c1 (end circles, loops), s (seam)
        // faces: the one product face F with ∂F = c1 - c0 (seam cancels).
        let d1 = IntMatrix::from_i64(2, 3, &[0, 0, -1, 0, 0, 1]);
        let d2 = IntMatrix::from_i64(3, 1, &[-1, 1, 0]);
        ChainComplex::new(vec![2, 3, 1], vec![d1, d2]).unwrap()
    }

    #[test]
    fn relative_cylinder_both_ends() {
        let c = cylinder();
        // subcomplex: both boundary circles and their vertices
        let q = c.relative_complex(&[vec![0, 1], vec![0, 1]]).unwrap();
        let h = q.homology().unwrap();
        // Lefschetz duality: H_k(Y, bdry) = H^{2-k}(Y), so betti (0, 1, 1)
        assert_eq!(h.betti, vec![0, 1, 1]);
    }

    #[test]
    fn relative_all_and_empty() {
        let c = catalog("torus").unwrap();
        let all: Vec<Vec<usize>> = vec![vec![0], vec![0, 1], vec![0]];
        let q = c.relative_complex(&all).unwrap();
        let h = q.homology().unwrap();
        assert!(h.betti.iter().all(|&b| b == 0));
        let q = c.relative_complex(&[]).unwrap();
        assert_eq!(q.homology().unwrap(), c.homology().unwrap());
    }

    #[test]
    fn relative_rejects_non_subcomplex() {
        let c = cylinder();
        // the face without its boundary edges is not a subcomplex
        assert!(matches!(
            c.relative_complex(&[vec![], vec![], vec![0]]),
            Err(HomologyError::NotSubcomplex { .. })
        ));
    }

    #[test]
    fn cylinder_rel_one_end() {
        let c = cylinder();
        // rel one end circle: homotopy equivalent to (cone, point)-style
        // collapse; quotient complex is contractible-ish: compute and check
        // the universal coefficient identity holds (exercise of the machinery).
        let q = c.relative_complex(&[vec![0], vec![0]]).unwrap();
        let h = q.homology().unwrap();
        assert!(h.betti.iter().all(|&b| b == 0));
    }

    #[test]
    fn universal_coefficients_on_random_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let c = random_complex(&mut rng, 5);
            // homology() internally cross-checks universal coefficients and
            // errors out on mismatch.
            c.homology().unwrap();
        }
    }

    #[test]
    fn universal_coefficients_on_catalog() {
        for name in catalog_names() {
            catalog(&name).unwrap().homology().unwrap();
        }
    }

    #[test]
    fn complex_json_round_trip() {
        let c = catalog("klein").unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: ChainComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back.homology().unwrap(), c.homology().unwrap());
    }
}
