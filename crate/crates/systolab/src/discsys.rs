//! Discrete systoles on weighted complexes: minimum-weight homologically
//! nontrivial cycles over Z, Z-mod-torsion, and Z₂, stable-norm estimation,
//! and the coarea cross-section check on height-sliced complexes.
//!
//! The cycle search is an exact branch-and-bound over per-cell coefficient
//! boxes; results carry a certificate flag saying whether the box provably
//! contains the optimum.

use crate::exactlin::{rank_mod2, rank_rational, smith_normal_form, IntMatrix, SnfResult};
use crate::families;
use crate::homology::{Chain, ChainComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiscsysError {
    #[error("no nontrivial class in degree {degree} for mode {mode:?}")]
    NoNontrivialClass { degree: usize, mode: Mode },
    #[error("search box exhausted without certifying optimality")]
    SearchBoxExhausted,
    #[error("complex failed validation: {0}")]
    InvalidComplex(String),
    #[error("weights malformed: {0}")]
    BadWeights(String),
    #[error("height data missing (required for coarea slicing)")]
    MissingHeights,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain length {got} does not match cell count {expected} in degree {degree}")]
    BadChainLength { degree: usize, expected: usize, got: usize },
    #[error("cylinder length must exceed 1, got {0}")]
    BadCylinderLength(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    All,
    ModTorsion,
    Z2,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Mode::All),
            "modtorsion" => Ok(Mode::ModTorsion),
            "z2" => Ok(Mode::Z2),
            other => Err(format!("unknown mode {:?} (expected all|modtorsion|z2)", other)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// No chain outside the search box can beat the returned value.
    Certified,
    /// Optimal within the coefficient box only.
    BestFound,
}

/// Chain complex with nonnegative rational cell weights per degree
/// (lengths in degree 1, areas in degree 2, …) and optional cell heights
/// for coarea slicing.
#[derive(Clone, Debug)]
pub struct WeightedComplex {
    complex: ChainComplex,
    weights: Vec<Vec<BigRational>>,
    heights: Option<Vec<Vec<BigRational>>>,
}

impl WeightedComplex {
    pub fn new(
        complex: ChainComplex,
        weights: Vec<Vec<BigRational>>,
        heights: Option<Vec<Vec<BigRational>>>,
    ) -> Result<Self, DiscsysError> {
        let report = complex.validate();
        if !report.valid {
            return Err(DiscsysError::InvalidComplex(
                report
                    .violations
                    .iter()
                    .map(|v| v.message.clone())
                    .collect::<Vec<_>>()
                    .join("; "),
            ));
        }
        if weights.len() != complex.cell_counts().len() {
            return Err(DiscsysError::BadWeights(format!(
                "expected weights for {} degrees, got {}",
                complex.cell_counts().len(),
                weights.len()
            )));
        }
        for (k, w) in weights.iter().enumerate() {
            if w.len() != complex.cell_count(k) {
                return Err(DiscsysError::BadWeights(format!(
                    "degree {}: {} weights for {} cells",
                    k,
                    w.len(),
                    complex.cell_count(k)
                )));
            }
            if w.iter().any(|x| x.is_negative()) {
                return Err(DiscsysError::BadWeights(format!("negative weight in degree {}", k)));
            }
        }
        if let Some(h) = &heights {
            if h.len() != complex.cell_counts().len()
                || h.iter().enumerate().any(|(k, v)| v.len() != complex.cell_count(k))
            {
                return Err(DiscsysError::BadWeights("height shape mismatch".into()));
            }
        }
        Ok(WeightedComplex { complex, weights, heights })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn weights(&self, degree: usize) -> &[BigRational] {
        &self.weights[degree]
    }

    pub fn has_heights(&self) -> bool {
        self.heights.is_some()
    }

    /// Weight of a chain: Σ |coefficient| · weight.
    pub fn chain_weight(&self, chain: &Chain) -> BigRational {
        let w = &self.weights[chain.degree];
        chain
            .coefficients
            .iter()
            .zip(w)
            .map(|(c, w)| BigRational::from(c.abs()) * w)
            .sum()
    }

    /// Height span [min, max] of each cell of each degree, computed over the
    /// closure (the cell itself and its iterated boundary).
    fn spans(&self) -> Result<Vec<Vec<(BigRational, BigRational)>>, DiscsysError> {
        let heights = self.heights.as_ref().ok_or(DiscsysError::MissingHeights)?;
        let top = self.complex.top_degree();
        let mut spans: Vec<Vec<(BigRational, BigRational)>> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut level: Vec<(BigRational, BigRational)> = heights[k]
                .iter()
                .map(|h| (h.clone(), h.clone()))
                .collect();
            if k > 0 {
                let b = self.complex.boundary(k);
                for (j, span) in level.iter_mut().enumerate() {
                    for i in 0..b.rows() {
                        if b.get(i, j).is_zero() {
                            continue;
                        }
                        let (lo, hi) = &spans[k - 1][i];
                        if *lo < span.0 {
                            span.0 = lo.clone();
                        }
                        if *hi > span.1 {
                            span.1 = hi.clone();
                        }
                    }
                }
            }
            spans.push(level);
        }
        Ok(spans)
    }
}

/// Result of a systole computation.
#[derive(Clone, Debug)]
pub struct SystoleResult {
    pub value: BigRational,
    pub witness: Chain,
    pub mode: Mode,
    pub certificate: Certificate,
    pub warnings: Vec<String>,
}

/// Default per-cell coefficient box for the Z-coefficient search.
pub const DEFAULT_COEFF_BOX: i64 = 3;

// ---------------------------------------------------------------------------
// Branch-and-bound cycle search

struct SearchProblem<'a> {
    weights: &'a [BigRational],
    boundary: IntMatrix, // ∂_k
    /// rows of ∂_k whose last nonzero column is j, per column j
    rows_closing_at: Vec<Vec<usize>>,
    candidates: Vec<i64>,
    /// cycle constraints read mod 2 instead of over Z
    mod2: bool,
}

impl<'a> SearchProblem<'a> {
    fn new(wc: &'a WeightedComplex, degree: usize, coeff_box: i64, mod2: bool) -> Self {
        let boundary = wc.complex.boundary(degree);
        let n = boundary.cols();
        let mut last_col = vec![None; boundary.rows()];
        for i in 0..boundary.rows() {
            for j in 0..n {
                if !boundary.get(i, j).is_zero() {
                    last_col[i] = Some(j);
                }
            }
        }
        let mut rows_closing_at = vec![Vec::new(); n];
        for (i, lc) in last_col.iter().enumerate() {
            if let Some(j) = lc {
                rows_closing_at[*j].push(i);
            }
        }
        let mut candidates = vec![0i64];
        for c in 1..=coeff_box {
            candidates.push(c);
            if !mod2 {
                candidates.push(-c);
            }
        }
        SearchProblem {
            weights: wc.weights(degree),
            boundary,
            rows_closing_at,
            candidates,
            mod2,
        }
    }

    /// Exhaustive DFS over per-cell coefficients with cycle-constraint
    /// propagation and incumbent-weight pruning. `accept` decides whether a
    /// completed cycle's homology class qualifies. Returns the minimum-weight
    /// qualifying chain, canonicalized (first nonzero coefficient positive,
    /// then lexicographically least among optima).
    fn solve(&self, accept: &dyn Fn(&[BigInt]) -> bool, allow_zero: bool) -> Option<(BigRational, Vec<BigInt>)> {
        let n = self.boundary.cols();
        let mut coeffs = vec![0i64; n];
        let mut rowsum = vec![BigInt::zero(); self.boundary.rows()];
        let mut best: Option<(BigRational, Vec<BigInt>)> = None;
        self.dfs(0, &mut coeffs, &mut rowsum, BigRational::zero(), accept, allow_zero, &mut best);
        best
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        j: usize,
        coeffs: &mut Vec<i64>,
        rowsum: &mut Vec<BigInt>,
        partial: BigRational,
        accept: &dyn Fn(&[BigInt]) -> bool,
        allow_zero: bool,
        best: &mut Option<(BigRational, Vec<BigInt>)>,
    ) {
        if let Some((bw, _)) = best {
            if partial > *bw {
                return;
            }
        }
        if j == self.boundary.cols() {
            let is_zero = coeffs.iter().all(|&c| c == 0);
            if is_zero && !allow_zero {
                return;
            }
            let vec: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
            if !accept(&vec) {
                return;
            }
            let canon = canonical_sign(&vec);
            match best {
                None => *best = Some((partial, canon)),
                Some((bw, bv)) => {
                    if partial < *bw || (partial == *bw && canon < *bv) {
                        *best = Some((partial, canon));
                    }
                }
            }
            return;
        }
        for &c in &self.candidates {
            coeffs[j] = c;
            let mut next_partial = partial.clone();
            if c != 0 {
                next_partial += self.weights[j].clone() * BigRational::from_i64(c.abs()).unwrap();
                if let Some((bw, _)) = best {
                    if next_partial > *bw {
                        coeffs[j] = 0;
                        continue;
                    }
                }
            }
            // update row sums incrementally
            let mut touched = Vec::new();
            if c != 0 {
                for i in 0..self.boundary.rows() {
                    let e = self.boundary.get(i, j);
                    if !e.is_zero() {
                        rowsum[i] += e * BigInt::from(c);
                        touched.push(i);
                    }
                }
            }
            // constraints whose last column is j must be satisfied now
            let ok = self.rows_closing_at[j]
                .iter()
                .all(|&i| if self.mod2 { rowsum[i].is_even() } else { rowsum[i].is_zero() });
            if ok {
                self.dfs(j + 1, coeffs, rowsum, next_partial, accept, allow_zero, best);
            }
            for i in touched {
                let e = self.boundary.get(i, j);
                rowsum[i] -= e * BigInt::from(c);
            }
            coeffs[j] = 0;
        }
    }
}

fn canonical_sign(v: &[BigInt]) -> Vec<BigInt> {
    for c in v {
        if c.is_positive() {
            return v.to_vec();
        }
        if c.is_negative() {
            return v.iter().map(|x| -x).collect();
        }
    }
    v.to_vec()
}

/// Class-membership machinery for one degree, precomputed once per solve.
struct ClassTester {
    /// SNF of ∂_{k+1}, for exact Z-image membership.
    snf_up: SnfResult,
    /// Image matrix ∂_{k+1} and its rational and mod-2 ranks.
    up: IntMatrix,
    rank_q: usize,
    rank_2: usize,
}

impl ClassTester {
    fn new(c: &ChainComplex, degree: usize) -> Self {
        let up = c.boundary(degree + 1);
        let snf_up = smith_normal_form(&up);
        let rank_q = rank_rational(&up);
        let rank_2 = rank_mod2(&up);
        ClassTester { snf_up, up, rank_q, rank_2 }
    }

    /// c in image of ∂_{k+1} over Z (i.e. trivial integral class)?
    fn is_boundary_z(&self, c: &[BigInt]) -> bool {
        // solve S x = U c over Z
        let rows = self.snf_up.u.rows();
        let mut y = vec![BigInt::zero(); rows];
        for (i, yi) in y.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if !cj.is_zero() {
                    *yi += self.snf_up.u.get(i, j) * cj;
                }
            }
        }
        for (i, yi) in y.iter().enumerate() {
            match self.snf_up.diagonal.get(i) {
                Some(d) if !d.is_zero() => {
                    if !yi.mod_floor(d).is_zero() {
                        return false;
                    }
                }
                _ => {
                    if !yi.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// c in image over Q (i.e. torsion-or-trivial class)?
    fn is_torsion_or_boundary(&self, c: &[BigInt]) -> bool {
        rank_rational(&augment(&self.up, c)) == self.rank_q
    }

    /// c in image over Z₂ (i.e. trivial mod-2 class)?
    fn is_boundary_mod2(&self, c: &[BigInt]) -> bool {
        rank_mod2(&augment(&self.up, c)) == self.rank_2
    }
}

fn augment(m: &IntMatrix, c: &[BigInt]) -> IntMatrix {
    let mut out = IntMatrix::zero(m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).clone());
        }
        out.set(i, m.cols(), c[i].clone());
    }
    out
}

/// Is the chosen mode's class set nonempty in this degree?
fn mode_has_classes(c: &ChainComplex, degree: usize, mode: Mode) -> bool {
    let n = c.cell_count(degree);
    let rank_down = rank_rational(&c.boundary(degree));
    let up = c.boundary(degree + 1);
    match mode {
        Mode::ModTorsion => n - rank_down - rank_rational(&up) > 0,
        Mode::All => {
            let snf = smith_normal_form(&up);
            let betti = n - rank_down - snf.rank();
            betti > 0 || !snf.torsion().is_empty()
        }
        Mode::Z2 => n - rank_mod2(&c.boundary(degree)) - rank_mod2(&up) > 0,
    }
}

/// Exact discrete systole in the given degree and coefficient mode.
pub fn systole(wc: &WeightedComplex, degree: usize, mode: Mode) -> Result<SystoleResult, DiscsysError> {
    systole_with_box(wc, degree, mode, DEFAULT_COEFF_BOX)
}

pub fn systole_with_box(
    wc: &WeightedComplex,
    degree: usize,
    mode: Mode,
    coeff_box: i64,
) -> Result<SystoleResult, DiscsysError> {
    let c = wc.complex();
    if !mode_has_classes(c, degree, mode) {
        return Err(DiscsysError::NoNontrivialClass { degree, mode });
    }
    let tester = ClassTester::new(c, degree);
    let (problem, accept): (SearchProblem, Box<dyn Fn(&[BigInt]) -> bool>) = match mode {
        Mode::Z2 => (
            SearchProblem::new_mod2(wc, degree),
            Box::new(move |v: &[BigInt]| !tester.is_boundary_mod2(v)),
        ),
        Mode::All => (
            SearchProblem::new(wc, degree, coeff_box, false),
            Box::new(move |v: &[BigInt]| !tester.is_boundary_z(v)),
        ),
        Mode::ModTorsion => (
            SearchProblem::new(wc, degree, coeff_box, false),
            Box::new(move |v: &[BigInt]| !tester.is_torsion_or_boundary(v)),
        ),
    };
    let (value, witness) = problem
        .solve(accept.as_ref(), false)
        .ok_or(DiscsysError::NoNontrivialClass { degree, mode })?;
    let mut warnings = Vec::new();
    if value.is_zero() {
        warnings.push("nontrivial cycle of zero weight (degenerate weights)".to_string());
    }
    let certificate = certify(wc, degree, mode, coeff_box, &value);
    Ok(SystoleResult {
        value,
        witness: Chain { degree, coefficients: witness },
        mode,
        certificate,
        warnings,
    })
}

impl<'a> SearchProblem<'a> {
    fn new_mod2(wc: &'a WeightedComplex, degree: usize) -> Self {
        // coefficients {0, 1}; cycle constraints are parity checks
        SearchProblem::new(wc, degree, 1, true)
    }
}

fn certify(wc: &WeightedComplex, degree: usize, mode: Mode, coeff_box: i64, value: &BigRational) -> Certificate {
    if mode == Mode::Z2 {
        // {0,1} coefficients exhaust all mod-2 chains
        return Certificate::Certified;
    }
    if value.is_zero() {
        return Certificate::Certified;
    }
    let min_w = wc.weights(degree).iter().min();
    match min_w {
        Some(w) if w.is_positive() => {
            let out_of_box_lb = BigRational::from_i64(coeff_box + 1).unwrap() * w;
            if *value <= out_of_box_lb {
                Certificate::Certified
            } else {
                Certificate::BestFound
            }
        }
        _ => Certificate::BestFound,
    }
}

/// Minimum weight of a cycle homologous to q·α over Z.
pub fn norm_of_class(wc: &WeightedComplex, alpha: &Chain, q: u64) -> Result<BigRational, DiscsysError> {
    norm_of_class_with_box(wc, alpha, q, DEFAULT_COEFF_BOX)
}

pub fn norm_of_class_with_box(
    wc: &WeightedComplex,
    alpha: &Chain,
    q: u64,
    coeff_box: i64,
) -> Result<BigRational, DiscsysError> {
    let c = wc.complex();
    let degree = alpha.degree;
    if alpha.coefficients.len() != c.cell_count(degree) {
        return Err(DiscsysError::BadChainLength {
            degree,
            expected: c.cell_count(degree),
            got: alpha.coefficients.len(),
        });
    }
    if !c.apply_boundary(alpha).is_zero() {
        return Err(DiscsysError::NotACycle);
    }
    let tester = ClassTester::new(c, degree);
    if alpha.is_zero() || tester.is_boundary_z(&alpha.coefficients) {
        return Err(DiscsysError::NoNontrivialClass { degree, mode: Mode::All });
    }
    // the target representative q·α must be reachable inside the box
    let max_alpha = alpha
        .coefficients
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let needed = (BigInt::from(q) * &max_alpha)
        .to_i64()
        .ok_or(DiscsysError::SearchBoxExhausted)?;
    let eff_box = coeff_box.max(needed);
    let target: Vec<BigInt> = alpha.coefficients.iter().map(|a| a * BigInt::from(q)).collect();
    let problem = SearchProblem::new(wc, degree, eff_box, false);
    let accept = move |v: &[BigInt]| {
        let diff: Vec<BigInt> = v.iter().zip(&target).map(|(a, b)| a - b).collect();
        tester.is_boundary_z(&diff)
    };
    let (value, _witness) = problem
        .solve(&accept, true)
        .ok_or(DiscsysError::SearchBoxExhausted)?;
    Ok(value)
}

/// The sequence ‖qα‖/q for q = 1..q_max, subadditivity checks, and the
/// Fekete upper estimate of the stable norm.
#[derive(Clone, Debug, Serialize)]
pub struct StableNormEstimate {
    pub norms: Vec<BigRational>,
    pub normalized: Vec<f64>,
    pub limit_estimate: f64,
    pub subadditive: bool,
}

pub fn stable_norm_estimate(
    wc: &WeightedComplex,
    alpha: &Chain,
    q_max: u64,
) -> Result<StableNormEstimate, DiscsysError> {
    assert!(q_max >= 2, "q_max must be at least 2");
    let mut norms = Vec::with_capacity(q_max as usize);
    for q in 1..=q_max {
        norms.push(norm_of_class(wc, alpha, q)?);
    }
    let mut subadditive = true;
    for p in 1..=q_max as usize {
        for q in 1..=q_max as usize {
            if p + q <= q_max as usize
                && norms[p + q - 1] > &norms[p - 1] + &norms[q - 1]
            {
                subadditive = false;
            }
        }
    }
    let normalized: Vec<f64> = norms
        .iter()
        .enumerate()
        .map(|(i, n)| n.to_f64().unwrap() / (i as f64 + 1.0))
        .collect();
    let limit_estimate = normalized.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(StableNormEstimate { norms, normalized, limit_estimate, subadditive })
}

// ---------------------------------------------------------------------------
// Coarea slicing

#[derive(Clone, Debug, Serialize)]
pub struct SliceLevel {
    pub level: f64,
    pub weight: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoareaReport {
    pub levels: Vec<SliceLevel>,
    pub min_slice_weight: f64,
    pub chain_volume: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Discrete coarea cross-section check: at each regular level (a height
/// carried by some flat (q−1)-cell), the slice collects the flat
/// (q−1)-cells at that height incident to a cell of z whose height span
/// contains the level with positive width. Asserts
/// min-level slice weight ≤ vol_q(z)/(ℓ−1).
pub fn coarea_slice_check(
    wc: &WeightedComplex,
    z: &Chain,
    cylinder_length: f64,
) -> Result<CoareaReport, DiscsysError> {
    if cylinder_length <= 1.0 {
        return Err(DiscsysError::BadCylinderLength(cylinder_length));
    }
    let c = wc.complex();
    let q = z.degree;
    if q == 0 {
        return Err(DiscsysError::BadChainLength { degree: 0, expected: 0, got: 0 });
    }
    if z.coefficients.len() != c.cell_count(q) {
        return Err(DiscsysError::BadChainLength {
            degree: q,
            expected: c.cell_count(q),
            got: z.coefficients.len(),
        });
    }
    let spans = wc.spans()?;
    let boundary = c.boundary(q);
    // regular levels: heights of degenerate-span (q−1)-cells
    let mut levels: Vec<BigRational> = spans[q - 1]
        .iter()
        .filter(|(lo, hi)| lo == hi)
        .map(|(lo, _)| lo.clone())
        .collect();
    levels.sort();
    levels.dedup();
    let mut out_levels = Vec::new();
    let mut min_weight: Option<BigRational> = None;
    for level in &levels {
        let mut weight = BigRational::zero();
        for f in 0..c.cell_count(q - 1) {
            let (flo, fhi) = &spans[q - 1][f];
            if flo != fhi || flo != level {
                continue;
            }
            // incident to a straddling cell of z?
            let hit = (0..c.cell_count(q)).any(|s| {
                if z.coefficients[s].is_zero() || boundary.get(f, s).is_zero() {
                    return false;
                }
                let (lo, hi) = &spans[q][s];
                lo < hi && lo <= level && level <= hi
            });
            if hit {
                weight += &wc.weights[q - 1][f];
            }
        }
        out_levels.push(SliceLevel {
            level: level.to_f64().unwrap(),
            weight: weight.to_f64().unwrap(),
        });
        if min_weight.as_ref().map_or(true, |m| weight < *m) {
            min_weight = Some(weight);
        }
    }
    let min_slice_weight = min_weight.map(|m| m.to_f64().unwrap()).unwrap_or(0.0);
    let chain_volume = wc.chain_weight(z).to_f64().unwrap();
    let bound = chain_volume / (cylinder_length - 1.0);
    Ok(CoareaReport {
        levels: out_levels,
        min_slice_weight,
        chain_volume,
        bound,
        holds: min_slice_weight <= bound + 1e-12,
    })
}

// ---------------------------------------------------------------------------
// Hodge cylinder mesh: the discretized model used by the coarea criterion

/// Mesh of T²×[0, 2j] with one vertex per torus slice: per level i a vertex,
/// two loop edges (y and z directions), and a torus face; per slab a
/// vertical edge, two vertical faces, and one solid cell. Weights are
/// rational approximations of the metric lengths/areas; heights make it
/// sliceable. Returns the mesh and the distinguished cylinder chain (the
/// relative 2-cycle swept by the y-circle).
pub fn hodge_cylinder_mesh(j: u64) -> (WeightedComplex, Chain) {
    let levels = (2 * j + 1) as usize;
    let slabs = (2 * j) as usize;
    // degree 1 layout: [e_y 0..levels | e_z levels..2*levels | vertical 2*levels..]
    // degree 2 layout: [f 0..levels | Y levels..levels+slabs | Z ..+slabs]
    let n1 = 2 * levels + slabs;
    let n2 = levels + 2 * slabs;
    let n3 = slabs;
    let mut d1 = IntMatrix::zero(levels, n1);
    for s in 0..slabs {
        d1.set(s, 2 * levels + s, BigInt::from(-1));
        d1.set(s + 1, 2 * levels + s, BigInt::one());
    }
    let mut d2 = IntMatrix::zero(n1, n2);
    for s in 0..slabs {
        // Y_s = y-circle swept over slab s: boundary e_y(s) − e_y(s+1)
        d2.set(s, levels + s, BigInt::one());
        d2.set(s + 1, levels + s, BigInt::from(-1));
        // Z_s likewise for the z-circle
        d2.set(levels + s, levels + slabs + s, BigInt::one());
        d2.set(levels + s + 1, levels + slabs + s, BigInt::from(-1));
    }
    let mut d3 = IntMatrix::zero(n2, n3);
    for s in 0..slabs {
        d3.set(s + 1, s, BigInt::one());
        d3.set(s, s, BigInt::from(-1));
    }
    let complex = ChainComplex::new(vec![levels, n1, n2, n3], vec![d1, d2, d3])
        .expect("mesh boundaries compose to zero");

    let fold = |i: usize| -> f64 { (i as f64).min(2.0 * j as f64 - i as f64) };
    let approx = |v: f64| -> BigRational {
        BigRational::new(BigInt::from((v * 1e6).round() as i64), BigInt::from(1_000_000))
    };
    let one = BigRational::one;

    let w0 = vec![BigRational::one(); levels];
    let mut w1 = Vec::with_capacity(n1);
    for i in 0..levels {
        w1.push(approx((1.0 + fold(i).powi(2)).sqrt())); // e_y
    }
    w1.extend(std::iter::repeat_with(one).take(levels)); // e_z
    w1.extend(std::iter::repeat_with(one).take(slabs)); // vertical
    let mut w2 = Vec::with_capacity(n2);
    w2.extend(std::iter::repeat_with(one).take(levels)); // f: unit-area slices
    for s in 0..slabs {
        // Y_s: strip area over the slab, folded across the midpoint
        let (a, b) = if (s as u64) < j {
            (s as f64, s as f64 + 1.0)
        } else {
            (2.0 * j as f64 - s as f64 - 1.0, 2.0 * j as f64 - s as f64)
        };
        w2.push(approx(families::antiderivative(b) - families::antiderivative(a)));
    }
    w2.extend(std::iter::repeat_with(one).take(slabs)); // Z strips: area 1
    let w3 = vec![BigRational::one(); n3];

    let h0: Vec<BigRational> = (0..levels).map(|i| BigRational::from_i64(i as i64).unwrap()).collect();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mid = |s: usize| BigRational::from_i64(s as i64).unwrap() + half.clone();
    let mut h1: Vec<BigRational> = h0.clone();
    h1.extend(h0.clone());
    h1.extend((0..slabs).map(mid));
    let mut h2: Vec<BigRational> = h0.clone();
    h2.extend((0..slabs).map(mid));
    h2.extend((0..slabs).map(mid));
    let h3: Vec<BigRational> = (0..slabs).map(mid).collect();

    let wc = WeightedComplex::new(
        complex,
        vec![w0, w1, w2, w3],
        Some(vec![h0, h1, h2, h3]),
    )
    .expect("mesh weights are consistent");
    let mut m = vec![BigInt::zero(); n2];
    for s in 0..slabs {
        m[levels + s] = BigInt::one();
    }
    (wc, Chain { degree: 2, coefficients: m })
}

/// Adds a boundary perturbation Σ r_s ∂(solid_s) to a degree-2 chain on the
/// mesh: the relative homology class is unchanged.
pub fn perturb_on_mesh(wc: &WeightedComplex, z: &Chain, coeffs: &[i64]) -> Chain {
    let c = wc.complex();
    let d3 = c.boundary(3);
    let mut out = z.coefficients.clone();
    for (s, &r) in coeffs.iter().enumerate() {
        if r == 0 || s >= d3.cols() {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o += d3.get(i, s) * BigInt::from(r);
        }
    }
    Chain { degree: 2, coefficients: out }
}

// ---------------------------------------------------------------------------
// JSON wire format

#[derive(Serialize, Deserialize)]
struct WeightedWire {
    cells: Vec<usize>,
    boundaries: Vec<IntMatrix>,
    weights: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    heights: Option<Vec<Vec<String>>>,
}

impl Serialize for WeightedComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let fmt = |v: &Vec<BigRational>| v.iter().map(crate::lattice::format_rational).collect();
        WeightedWire {
            cells: self.complex.cell_counts().to_vec(),
            boundaries: (1..=self.complex.top_degree())
                .map(|k| self.complex.boundary(k))
                .collect(),
            weights: self.weights.iter().map(fmt).collect(),
            heights: self.heights.as_ref().map(|h| h.iter().map(fmt).collect()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightedComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WeightedWire::deserialize(deserializer)?;
        let complex = ChainComplex::new(wire.cells, wire.boundaries).map_err(serde::de::Error::custom)?;
        let parse = |v: &Vec<String>| -> Result<Vec<BigRational>, D::Error> {
            v.iter()
                .map(|s| crate::lattice::parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        };
        let weights = wire.weights.iter().map(&parse).collect::<Result<_, _>>()?;
        let heights = match &wire.heights {
            Some(h) => Some(h.iter().map(&parse).collect::<Result<_, _>>()?),
            None => None,
        };
        WeightedComplex::new(complex, weights, heights).map_err(serde::de::Error::custom)
    }
}
