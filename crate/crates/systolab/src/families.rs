//! Closed-form evaluators for two explicit systolically free metric
//! families: the S¹×S³ family given by the quadratic forms
//! (dz−jb)² + b² + (1+j²)(b′²+b″²), and the T²×I family built from the
//! sheared slice metrics (dz−xdy)² + dy² with dx² added.
//!
//! Volumes and candidate systoles come out in closed form; a calibration
//! integral gives the rigorous area lower bound, cross-checked against
//! adaptive quadrature.

use crate::lattice::{successive_minima, FlatTorus, Minima};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use std::f64::consts::PI;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("parameter x = {x} outside [0, {max}]")]
    OutOfRange { x: f64, max: f64 },
    #[error("operation requires j >= {min}, got {got}")]
    ParameterTooSmall { min: u64, got: u64 },
    #[error("mod-2 cycle construction requires even j, got {0}")]
    OddParameter(u64),
}

/// Whether a reported bound is a certified lower bound or just the value of
/// a candidate cycle (an upper bound on the systole).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    RigorousLower,
    CandidateUpper,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::RigorousLower => write!(f, "rigorous-lower"),
            BoundKind::CandidateUpper => write!(f, "candidate-upper"),
        }
    }
}

/// One row of a freedom-ratio table.
#[derive(Clone, Debug, Serialize)]
pub struct FreedomRow {
    pub j: u64,
    pub volume: f64,
    pub sys1_bound: f64,
    pub sysk_bound: f64,
    pub ratio: f64,
    pub bound_kind: BoundKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyModel {
    Gromov,
    Hodge,
}

impl std::str::FromStr for FamilyModel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gromov" => Ok(FamilyModel::Gromov),
            "hodge" => Ok(FamilyModel::Hodge),
            other => Err(format!("unknown family model {:?}", other)),
        }
    }
}

// ---------------------------------------------------------------------------
// S¹×S³ family

/// 4×4 Gram matrix of the family metric in the coframe (dz, b, b′, b″):
/// upper block [[1, −j], [−j, 1+j²]], lower block (1+j²)·id.
pub fn gromov_gram(j: u64) -> [[i128; 4]; 4] {
    let j = j as i128;
    let c = 1 + j * j;
    [
        [1, -j, 0, 0],
        [-j, c, 0, 0],
        [0, 0, c, 0],
        [0, 0, 0, c],
    ]
}

/// Determinant of the 2×2 (dz, b) block; identically 1.
pub fn gromov_block_det(j: &BigInt) -> BigInt {
    // det [[1, -j], [-j, 1+j²]] = (1+j²) − j²
    (BigInt::one() + j * j) - j * j
}

/// vol(g_j) = √det · vol(S¹×S³) = (1+j²)·4π³, with length(S¹) = 2π and
/// vol(S³) = 2π² for the unit sphere.
pub fn gromov_volume(j: u64) -> f64 {
    let c = 1.0 + (j as f64) * (j as f64);
    c * 4.0 * PI.powi(3)
}

/// Volume of the candidate 3-cycle {z = const}×S³, with induced metric
/// (1+j²)(b²+b′²+b″²): an upper bound for the 3-systole.
pub fn gromov_fiber_volume(j: u64) -> f64 {
    let c = 1.0 + (j as f64) * (j as f64);
    c.powf(1.5) * 2.0 * PI * PI
}

/// Length of the candidate loop winding once in z and k times along the
/// b-fiber: 2π√((1−jk)² + k²).
pub fn gromov_loop_length(j: u64, k: i64) -> f64 {
    let jk = (j as f64) * (k as f64);
    2.0 * PI * ((1.0 - jk).powi(2) + (k as f64).powi(2)).sqrt()
}

/// Minimum candidate loop length over windings |k| ≤ j+1; equals 2π.
pub fn gromov_candidate_sys1(j: u64) -> f64 {
    let kmax = (j + 1) as i64;
    (-kmax..=kmax)
        .map(|k| gromov_loop_length(j, k))
        .fold(f64::INFINITY, f64::min)
}

/// Freedom row vol/(sys₁·sys₃) using the candidate cycles; the closed form
/// is (1+j²)^{−1/2}. Candidates are upper bounds for the systoles, so the
/// row documents the decay mechanism, not a certified ratio.
pub fn gromov_ratio(j: u64) -> FreedomRow {
    let volume = gromov_volume(j);
    let sys1 = gromov_candidate_sys1(j);
    let sys3 = gromov_fiber_volume(j);
    FreedomRow {
        j,
        volume,
        sys1_bound: sys1,
        sysk_bound: sys3,
        ratio: volume / (sys1 * sys3),
        bound_kind: BoundKind::CandidateUpper,
    }
}

// ---------------------------------------------------------------------------
// T²×I family

/// Folding x̂ = min(x, 2j−x); the metric is symmetric about x = j.
pub fn fold(j: u64, x: f64) -> f64 {
    x.min(2.0 * (j as f64) - x)
}

/// Slice Gram matrix in the (y, z) basis: [[1+x̂², −x̂], [−x̂, 1]].
pub fn slice_gram(j: u64, x: f64) -> [[f64; 2]; 2] {
    let xh = fold(j, x);
    [[1.0 + xh * xh, -xh], [-xh, 1.0]]
}

/// Exact rational slice Gram matrix, for the shear-isometry identity.
pub fn slice_gram_exact(x: &BigRational) -> Vec<Vec<BigRational>> {
    vec![
        vec![BigRational::one() + x * x, -x.clone()],
        vec![-x.clone(), BigRational::one()],
    ]
}

/// Pointwise squared norm of dz: 1 + x̂².
pub fn hodge_dz_norm_sq(j: u64, x: f64) -> Result<f64, FamilyError> {
    check_range(j, x)?;
    let xh = fold(j, x);
    Ok(1.0 + xh * xh)
}

fn check_range(j: u64, x: f64) -> Result<(), FamilyError> {
    let max = 2.0 * j as f64;
    if !(0.0..=max).contains(&x) {
        return Err(FamilyError::OutOfRange { x, max });
    }
    Ok(())
}

/// Total volume of T²×[0,2j]: slices have unit area (det slice gram = 1),
/// so the volume is exactly 2j.
pub fn hodge_volume(j: u64) -> Result<BigRational, FamilyError> {
    if j < 1 {
        return Err(FamilyError::ParameterTooSmall { min: 1, got: j });
    }
    Ok(BigRational::from(BigInt::from(2 * j)))
}

/// Antiderivative F(x) = (x√(1+x²) + asinh x)/2 of √(1+x²).
pub fn antiderivative(x: f64) -> f64 {
    (x * (1.0 + x * x).sqrt() + x.asinh()) / 2.0
}

/// Rigorous lower bound for the area of any surface in the relative class
/// of the calibrated cylinder: ∫₁^{j−1} √(1+x²) dx = F(j−1) − F(1).
pub fn calibration_bound(j: u64) -> Result<f64, FamilyError> {
    if j < 2 {
        return Err(FamilyError::ParameterTooSmall { min: 2, got: j });
    }
    Ok(antiderivative((j - 1) as f64) - antiderivative(1.0))
}

/// Exact area of the cylinder M = T¹×I itself:
/// ∫₀^{2j} √(1+x̂²) dx = 2F(j). Always ≥ calibration_bound.
pub fn cylinder_area(j: u64) -> Result<f64, FamilyError> {
    if j < 1 {
        return Err(FamilyError::ParameterTooSmall { min: 1, got: j });
    }
    Ok(2.0 * antiderivative(j as f64))
}

/// Adaptive Simpson quadrature, the independent oracle for the closed-form
/// integrals. Tolerance is absolute.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = (a + b) / 2.0;
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// λ₁ of the slice torus; equals 1 at every x (witness: the z direction).
/// Delegates to the lattice enumeration on an exact rationalization of x̂.
pub fn slice_systole(j: u64, x: f64) -> Result<Minima, FamilyError> {
    check_range(j, x)?;
    let xh = fold(j, x);
    let xr = BigRational::from_float(xh)
        .unwrap_or_else(BigRational::zero);
    let t = FlatTorus::new(slice_gram_exact(&xr)).expect("slice gram has unit determinant");
    Ok(successive_minima(&t).expect("slice gram is positive definite"))
}

/// Slice-length profile x ↦ √(1+x̂²) on a grid over [0, j], with the
/// domination flag for length ≥ x.
#[derive(Clone, Debug, Serialize)]
pub struct CoareaProfile {
    pub samples: Vec<(f64, f64)>,
    pub dominates: bool,
}

pub fn coarea_profile(j: u64) -> Result<CoareaProfile, FamilyError> {
    if j < 1 {
        return Err(FamilyError::ParameterTooSmall { min: 1, got: j });
    }
    let steps = 4 * j;
    let mut samples = Vec::with_capacity(steps as usize + 1);
    let mut dominates = true;
    for i in 0..=steps {
        let x = i as f64 * (j as f64) / steps as f64;
        let len = (1.0 + fold(j, x).powi(2)).sqrt();
        if len < x {
            dominates = false;
        }
        samples.push((x, len));
    }
    Ok(CoareaProfile { samples, dominates })
}

/// Verifies Sᵀ·G(x+1)·S = G(x) exactly, where S is the shear
/// (y, z) ↦ (y, z+y). The identity makes consecutive slices isometric.
pub fn shear_isometry_check(j: u64, x: &BigRational) -> Result<bool, FamilyError> {
    let upper = BigRational::from(BigInt::from(j));
    if x.is_negative() || x + BigRational::one() > upper {
        return Err(FamilyError::OutOfRange {
            x: x.to_f64().unwrap_or(f64::NAN),
            max: j as f64,
        });
    }
    let g_next = slice_gram_exact(&(x + BigRational::one()));
    let g_here = slice_gram_exact(x);
    // shear columns: y ↦ (1,1), z ↦ (0,1)
    let s = [[BigInt::one(), BigInt::zero()], [BigInt::one(), BigInt::one()]];
    Ok(shear_conjugate(&g_next, &s) == g_here)
}

/// Negative control: an arbitrary integer matrix conjugation of the slice
/// metric, for testing that non-shears fail the isometry identity.
pub fn conjugate_slice(x: &BigRational, m: &[[i64; 2]; 2]) -> Vec<Vec<BigRational>> {
    let s = [
        [BigInt::from(m[0][0]), BigInt::from(m[0][1])],
        [BigInt::from(m[1][0]), BigInt::from(m[1][1])],
    ];
    shear_conjugate(&slice_gram_exact(x), &s)
}

fn shear_conjugate(g: &[Vec<BigRational>], s: &[[BigInt; 2]; 2]) -> Vec<Vec<BigRational>> {
    let mut out = vec![vec![BigRational::zero(); 2]; 2];
    for p in 0..2 {
        for q in 0..2 {
            let mut acc = BigRational::zero();
            for i in 0..2 {
                for k in 0..2 {
                    acc += &g[i][k] * BigRational::from(&s[i][p] * &s[k][q]);
                }
            }
            out[p][q] = acc;
        }
    }
    out
}

/// One translated-and-sheared copy of the basic mod-2 chain c = a + b.
#[derive(Clone, Debug, Serialize)]
pub struct Mod2Copy {
    pub shear_power: u64,
    pub support: (f64, f64),
    pub area: f64,
}

/// The mod-2 relative 2-cycle d = c + h²(c) + … + h^{j−2}(c), doubled over
/// [0, 2j]. The basic chain c is a cylinder piece T¹×[0,2] of area F(2)
/// plus a base-1, altitude-2 triangle of Euclidean area 1 in a
/// unit-determinant slice.
#[derive(Clone, Debug, Serialize)]
pub struct Mod2Cycle {
    pub j: u64,
    pub copies: Vec<Mod2Copy>,
    pub copy_area: f64,
    pub total_area: f64,
}

pub fn mod2_cycle(j: u64) -> Result<Mod2Cycle, FamilyError> {
    if j < 2 {
        return Err(FamilyError::ParameterTooSmall { min: 2, got: j });
    }
    if j % 2 != 0 {
        return Err(FamilyError::OddParameter(j));
    }
    let copy_area = antiderivative(2.0) + 1.0;
    let mut copies = Vec::new();
    // copies over [0, j], then mirrored over [j, 2j]
    for half in 0..2 {
        for i in (0..j).step_by(2) {
            let (lo, hi) = if half == 0 {
                (i as f64, (i + 2) as f64)
            } else {
                ((2 * j - i - 2) as f64, (2 * j - i) as f64)
            };
            copies.push(Mod2Copy {
                shear_power: i,
                support: (lo, hi),
                area: copy_area,
            });
        }
    }
    let total_area = j as f64 * copy_area;
    Ok(Mod2Cycle { j, copies, copy_area, total_area })
}

/// Freedom table for either family. Gromov rows carry candidate-upper
/// bounds; the T²×I rows are rigorous: sys₁ ≥ 1 (the metric dominates the
/// slice metric, whose λ₁ is 1 everywhere) and the relative 2-systole is
/// bounded below by the calibration integral.
pub fn freedom_table(model: FamilyModel, j_list: &[u64]) -> Result<Vec<FreedomRow>, FamilyError> {
    j_list
        .iter()
        .map(|&j| match model {
            FamilyModel::Gromov => Ok(gromov_ratio(j)),
            FamilyModel::Hodge => {
                if j < 3 {
                    // calibration bound degenerates (empty integration range)
                    return Err(FamilyError::ParameterTooSmall { min: 3, got: j });
                }
                let volume = 2.0 * j as f64;
                let sysk = calibration_bound(j)?;
                Ok(FreedomRow {
                    j,
                    volume,
                    sys1_bound: 1.0,
                    sysk_bound: sysk,
                    ratio: volume / sysk,
                    bound_kind: BoundKind::RigorousLower,
                })
            }
        })
        .collect()
}
