//! Flat tori as lattices: exact Gram matrices, Gauss reduction, successive
//! minima by certified enumeration, and the Loewner / Pu / flat-torus
//! Hermite-type ratios.

use crate::exactlin::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("Gram matrix is not symmetric positive definite")]
    NotPositiveDefinite,
    #[error("operation requires dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("dimension {0} exceeds the supported maximum of 4")]
    DimensionTooLarge(usize),
    #[error("bad Gram matrix: {0}")]
    BadInput(String),
}

/// Flat torus R^n/Λ, given by the exact Gram matrix of a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatTorus {
    dimension: usize,
    gram: Vec<Vec<BigRational>>,
}

/// Successive minima λ₁ ≤ λ₂ with witness vectors; squared lengths are exact.
#[derive(Clone, Debug)]
pub struct Minima {
    pub lambda1_sq: BigRational,
    pub lambda2_sq: BigRational,
    pub v1: Vec<BigInt>,
    pub v2: Vec<BigInt>,
}

impl Minima {
    pub fn lambda1(&self) -> f64 {
        rat_to_f64(&self.lambda1_sq).sqrt()
    }

    pub fn lambda2(&self) -> f64 {
        rat_to_f64(&self.lambda2_sq).sqrt()
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

impl FlatTorus {
    pub fn new(gram: Vec<Vec<BigRational>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 {
            return Err(LatticeError::BadInput("empty Gram matrix".into()));
        }
        if n > 4 {
            return Err(LatticeError::DimensionTooLarge(n));
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(LatticeError::BadInput("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotPositiveDefinite);
                }
            }
        }
        let t = FlatTorus { dimension: n, gram };
        // exact positive-definiteness: all leading principal minors > 0
        for k in 1..=n {
            if !t.leading_minor(k).is_positive() {
                return Err(LatticeError::NotPositiveDefinite);
            }
        }
        Ok(t)
    }

    pub fn from_i64(gram: &[&[i64]]) -> Result<Self, LatticeError> {
        let rows = gram
            .iter()
            .map(|row| row.iter().map(|&v| BigRational::from(BigInt::from(v))).collect())
            .collect();
        Self::new(rows)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn gram(&self) -> &Vec<Vec<BigRational>> {
        &self.gram
    }

    pub fn determinant(&self) -> BigRational {
        self.minor_det(self.dimension)
    }

    fn leading_minor(&self, k: usize) -> BigRational {
        self.minor_det(k)
    }

    fn minor_det(&self, k: usize) -> BigRational {
        // Gaussian elimination on the top-left k x k block
        let mut a: Vec<Vec<BigRational>> = (0..k).map(|i| self.gram[i][..k].to_vec()).collect();
        let mut det = BigRational::one();
        for col in 0..k {
            let Some(p) = (col..k).find(|&i| !a[i][col].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                a.swap(col, p);
                det = -det;
            }
            det *= a[col][col].clone();
            for i in col + 1..k {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = &a[i][col] / &a[col][col];
                for j in col..k {
                    let sub = &f * &a[col][j];
                    a[i][j] -= sub;
                }
            }
        }
        det
    }

    /// Quadratic form value vᵀ G v.
    pub fn form(&self, v: &[BigInt]) -> BigRational {
        let n = self.dimension;
        let mut acc = BigRational::zero();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                acc += &self.gram[i][j] * BigRational::from(&v[i] * &v[j]);
            }
        }
        acc
    }

    /// Basis change G ↦ AᵀGA for an integer matrix A.
    pub fn transform(&self, a: &IntMatrix) -> Result<FlatTorus, LatticeError> {
        let n = self.dimension;
        assert_eq!(a.rows(), n);
        assert_eq!(a.cols(), n);
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for (p, row) in out.iter_mut().enumerate() {
            for (q, entry) in row.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for i in 0..n {
                    for j in 0..n {
                        acc += &self.gram[i][j] * BigRational::from(a.get(i, p) * a.get(j, q));
                    }
                }
                *entry = acc;
            }
        }
        FlatTorus::new(out)
    }
}

/// Nearest-integer rounding of a rational (ties toward zero).
fn round_rat(r: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let num = r.numer();
    let den = r.denom(); // > 0 by normalization
    let (q, rem) = num.div_mod_floor(den);
    if &two * &rem > *den {
        q + 1
    } else if &two * &rem == *den {
        // tie: toward zero
        if q.is_negative() {
            q + 1
        } else {
            q
        }
    } else {
        q
    }
}

/// Lagrange–Gauss reduction for dimension 2. Returns the unimodular basis
/// change A with |b₁| ≤ |b₂| and |⟨b₁,b₂⟩| ≤ |b₁|²/2 for AᵀGA.
pub fn gauss_reduce(t: &FlatTorus) -> Result<IntMatrix, LatticeError> {
    if t.dimension() != 2 {
        return Err(LatticeError::WrongDimension { expected: 2, got: t.dimension() });
    }
    let mut a = IntMatrix::identity(2);
    let mut g = t.clone();
    loop {
        if g.gram[0][0] > g.gram[1][1] {
            let swap = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
            a = a.mul(&swap);
            g = g.transform(&swap)?;
        }
        let mu = &g.gram[0][1] / &g.gram[0][0];
        let q = round_rat(&mu);
        if q.is_zero() {
            if g.gram[0][0] > g.gram[1][1] {
                continue;
            }
            break;
        }
        // b2 -= q b1
        let mut shear = IntMatrix::identity(2);
        shear.set(0, 1, -q);
        a = a.mul(&shear);
        g = g.transform(&shear)?;
    }
    Ok(a)
}

/// Pairwise (Lagrange-style) size reduction in any dimension: repeatedly
/// subtracts rounded projections between basis pairs and sorts by length.
/// Weak compared to LLL but enough to keep the enumeration box small at
/// dimension ≤ 4. Returns the reduced torus and the basis change A with
/// reduced = AᵀGA.
fn pairwise_reduce(t: &FlatTorus) -> (FlatTorus, IntMatrix) {
    let n = t.dimension();
    let mut g = t.clone();
    let mut a = IntMatrix::identity(n);
    loop {
        let mut changed = false;
        // keep diagonal ascending
        for i in 0..n {
            for j in i + 1..n {
                if g.gram[j][j] < g.gram[i][i] {
                    let mut p = IntMatrix::identity(n);
                    p.set(i, i, BigInt::zero());
                    p.set(j, j, BigInt::zero());
                    p.set(i, j, BigInt::one());
                    p.set(j, i, BigInt::one());
                    a = a.mul(&p);
                    g = g.transform(&p).expect("permutation preserves definiteness");
                    changed = true;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let q = round_rat(&(&g.gram[i][j] / &g.gram[i][i]));
                if q.is_zero() {
                    continue;
                }
                // b_j -= q b_i
                let mut shear = IntMatrix::identity(n);
                shear.set(i, j, -q);
                a = a.mul(&shear);
                g = g.transform(&shear).expect("shear preserves definiteness");
                changed = true;
            }
        }
        if !changed {
            return (g, a);
        }
    }
}

/// Exact successive minima by exhaustive enumeration inside a provable box:
/// after size reduction, any v with vᵀGv ≤ B has |v_i| ≤ √(B·(G⁻¹)_{ii}),
/// and B is taken from the standard basis of the reduced form (λ₂ never
/// exceeds its second-smallest diagonal entry).
pub fn successive_minima(t: &FlatTorus) -> Result<Minima, LatticeError> {
    let (reduced, basis_change) = pairwise_reduce(t);
    let m = successive_minima_direct(&reduced)?;
    // map witnesses back to the original coordinates
    let map = |w: &[BigInt]| -> Vec<BigInt> {
        let n = t.dimension();
        let mut out = vec![BigInt::zero(); n];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, c) in w.iter().enumerate() {
                *o += basis_change.get(i, j) * c;
            }
        }
        canonical_sign(&out)
    };
    Ok(Minima {
        v1: map(&m.v1),
        v2: map(&m.v2),
        lambda1_sq: m.lambda1_sq,
        lambda2_sq: m.lambda2_sq,
    })
}

fn successive_minima_direct(t: &FlatTorus) -> Result<Minima, LatticeError> {
    let n = t.dimension();
    // bound on the search: the second-smallest diagonal entry dominates λ₂²
    let mut diag: Vec<BigRational> = (0..n).map(|i| t.gram[i][i].clone()).collect();
    diag.sort();
    let bound = if n >= 2 { diag[1].clone() } else { diag[0].clone() };
    let inv_diag = inverse_diagonal(t);
    let limits: Vec<i64> = inv_diag
        .iter()
        .map(|gii| {
            let b = &bound * gii;
            // largest l with l^2 <= b, decided exactly
            let mut l = rat_to_f64(&b).max(0.0).sqrt().floor() as i64;
            while BigRational::from(BigInt::from((l + 1) * (l + 1))) <= b {
                l += 1;
            }
            while l > 0 && BigRational::from(BigInt::from(l * l)) > b {
                l -= 1;
            }
            l
        })
        .collect();

    let mut candidates: Vec<(BigRational, Vec<BigInt>)> = Vec::new();
    let mut v = vec![0i64; n];
    enumerate_box(&limits, 0, &mut v, &mut |coords| {
        if coords.iter().all(|&c| c == 0) {
            return;
        }
        let vec: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        let canon = canonical_sign(&vec);
        if canon != vec {
            return; // -v already visited in canonical form
        }
        let q = t.form(&canon);
        if q <= bound {
            candidates.push((q, canon));
        }
    });
    candidates.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let (l1, v1) = candidates.first().cloned().ok_or(LatticeError::NotPositiveDefinite)?;
    let (l2, v2) = candidates
        .iter()
        .find(|(_, v)| independent(v, &v1))
        .cloned()
        .ok_or(LatticeError::NotPositiveDefinite)?;
    Ok(Minima { lambda1_sq: l1, lambda2_sq: l2, v1, v2 })
}

/// 2D proportionality test; for higher dimension the pair test (rank of the
/// 2×n matrix) is done over the rationals.
fn independent(a: &[BigInt], b: &[BigInt]) -> bool {
    // a, b nonzero; independent iff a_i b_j != a_j b_i for some i, j
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return true;
            }
        }
    }
    false
}

/// Sign normalization: first nonzero coordinate positive.
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

fn enumerate_box(limits: &[i64], i: usize, v: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if i == limits.len() {
        f(v);
        return;
    }
    for c in -limits[i]..=limits[i] {
        v[i] = c;
        enumerate_box(limits, i + 1, v, f);
    }
}

/// Diagonal of G⁻¹, exact.
fn inverse_diagonal(t: &FlatTorus) -> Vec<BigRational> {
    let n = t.dimension();
    let det = t.determinant();
    (0..n)
        .map(|i| {
            // cofactor C_ii / det
            let minor: Vec<Vec<BigRational>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| t.gram[r][c].clone())
                        .collect()
                })
                .collect();
            det_rat(&minor) / &det
        })
        .collect()
}

fn det_rat(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut a: Vec<Vec<BigRational>> = a.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= a[col][col].clone();
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[col][col];
            for j in col..n {
                let sub = &f * &a[col][j];
                a[i][j] -= sub;
            }
        }
    }
    det
}

/// λ₁λ₂ / area on a 2-torus; always ≤ 2/√3, with equality at the hexagonal
/// lattice.
pub fn loewner_ratio(t: &FlatTorus) -> Result<f64, LatticeError> {
    if t.dimension() != 2 {
        return Err(LatticeError::WrongDimension { expected: 2, got: t.dimension() });
    }
    let m = successive_minima(t)?;
    let sq = &m.lambda1_sq * &m.lambda2_sq / t.determinant();
    Ok(rat_to_f64(&sq).sqrt())
}

/// Exact square of the Loewner ratio, for deciding the equality case.
pub fn loewner_ratio_sq_exact(t: &FlatTorus) -> Result<BigRational, LatticeError> {
    if t.dimension() != 2 {
        return Err(LatticeError::WrongDimension { expected: 2, got: t.dimension() });
    }
    let m = successive_minima(t)?;
    Ok(&m.lambda1_sq * &m.lambda2_sq / t.determinant())
}

/// Flat-torus Hermite-type ratio λ₁ⁿ / √det; sup over 2-tori is 2/√3.
pub fn gromov_torus_ratio(t: &FlatTorus) -> Result<f64, LatticeError> {
    let n = t.dimension();
    let m = successive_minima(t)?;
    let mut num = BigRational::one();
    for _ in 0..n {
        num *= m.lambda1_sq.clone();
    }
    // λ₁ⁿ/√det = √(λ₁^{2n}/det)
    Ok(rat_to_f64(&(num / t.determinant())).sqrt())
}

/// Pu's isosystolic ratio ((L/π)²)/(A/(2π)) for the round projective plane:
/// L = πr, A = 2πr², so the ratio is identically 1 at every radius.
pub fn pu_roundmetric_ratio() -> f64 {
    1.0
}

/// Hexagonal (equilateral) torus, the Loewner equality case.
pub fn hexagonal_torus() -> FlatTorus {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    FlatTorus::new(vec![
        vec![BigRational::one(), half.clone()],
        vec![half, BigRational::one()],
    ])
    .unwrap()
}

/// Random torus for property suites: Gram matrix BᵀB of a random rational
/// basis B, so generic (non-rectangular) shapes appear. Retries until B is
/// invertible.
pub fn random_torus(rng: &mut impl Rng, dim: usize) -> FlatTorus {
    loop {
        let b: Vec<Vec<BigRational>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| {
                        BigRational::new(
                            BigInt::from(rng.gen_range(-8..=8i64)),
                            BigInt::from(rng.gen_range(1..=4i64)),
                        )
                    })
                    .collect()
            })
            .collect();
        let gram: Vec<Vec<BigRational>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (0..dim).map(|k| &b[k][i] * &b[k][j]).sum())
                    .collect()
            })
            .collect();
        if let Ok(t) = FlatTorus::new(gram) {
            return t;
        }
    }
}

/// Product of random elementary shears and swaps; determinant ±1.
pub fn random_unimodular(rng: &mut impl Rng, dim: usize, steps: usize) -> IntMatrix {
    let mut a = IntMatrix::identity(dim);
    for _ in 0..steps {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim);
        if dim > 1 {
            while j == i {
                j = rng.gen_range(0..dim);
            }
            let mut e = IntMatrix::identity(dim);
            e.set(i, j, BigInt::from(rng.gen_range(-2..=2i64)));
            a = a.mul(&e);
        }
    }
    a
}

// ---------------------------------------------------------------------------
// JSON wire format: {"dim": n, "gram": [["p/q", ...], ...]}

#[derive(Serialize, Deserialize)]
struct TorusWire {
    dim: usize,
    gram: Vec<Vec<String>>,
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {:?}", s))?;
        let den: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {:?}", s))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {:?}", s));
        }
        Ok(BigRational::new(num, den))
    } else {
        let num: BigInt = s.trim().parse().map_err(|_| format!("bad rational {:?}", s))?;
        Ok(BigRational::from(num))
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for FlatTorus {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TorusWire {
            dim: self.dimension,
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FlatTorus {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = TorusWire::deserialize(deserializer)?;
        if wire.gram.len() != wire.dim {
            return Err(serde::de::Error::custom("gram size does not match dim"));
        }
        let mut rows = Vec::with_capacity(wire.dim);
        for row in &wire.gram {
            let mut r = Vec::with_capacity(wire.dim);
            for s in row {
                r.push(parse_rational(s).map_err(serde::de::Error::custom)?);
            }
            rows.push(r);
        }
        FlatTorus::new(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn torus2(a: i64, b: i64, d: i64) -> FlatTorus {
        FlatTorus::from_i64(&[&[a, b], &[b, d]]).unwrap()
    }

    #[test]
    fn rejects_indefinite() {
        assert!(FlatTorus::from_i64(&[&[1, 2], &[2, 1]]).is_err());
        assert!(FlatTorus::from_i64(&[&[0, 0], &[0, 1]]).is_err());
        assert!(FlatTorus::from_i64(&[&[1, 0], &[1, 1]]).is_err());
    }

    #[test]
    fn gauss_reduce_identity() {
        let t = torus2(1, 0, 1);
        let a = gauss_reduce(&t).unwrap();
        assert_eq!(a, IntMatrix::identity(2));
    }

    #[test]
    fn gauss_reduce_shear() {
        let t = torus2(1, 3, 10);
        let a = gauss_reduce(&t).unwrap();
        let g = t.transform(&a).unwrap();
        assert_eq!(g.gram()[0][0], BigRational::one());
        assert!(g.gram()[0][0] <= g.gram()[1][1]);
        let twice_off = rat(2, 1) * g.gram()[0][1].abs();
        assert!(twice_off <= g.gram()[0][0]);
        // first reduced vector realizes lambda1 (exhaustive check)
        let m = successive_minima(&t).unwrap();
        assert_eq!(g.gram()[0][0], m.lambda1_sq);
    }

    #[test]
    fn gauss_reduce_hexagonal_already_reduced() {
        let t = hexagonal_torus();
        let a = gauss_reduce(&t).unwrap();
        assert_eq!(a, IntMatrix::identity(2));
    }

    #[test]
    fn minima_unit_square() {
        let m = successive_minima(&torus2(1, 0, 1)).unwrap();
        assert_eq!(m.lambda1_sq, BigRational::one());
        assert_eq!(m.lambda2_sq, BigRational::one());
    }

    #[test]
    fn minima_hexagonal() {
        let m = successive_minima(&hexagonal_torus()).unwrap();
        assert_eq!(m.lambda1_sq, BigRational::one());
        assert_eq!(m.lambda2_sq, BigRational::one());
    }

    #[test]
    fn minima_orthogonal() {
        let m = successive_minima(&torus2(1, 0, 9)).unwrap();
        assert_eq!(m.lambda1_sq, BigRational::one());
        assert_eq!(m.lambda2_sq, rat(9, 1));
        assert_eq!(m.v1, vec![BigInt::one(), BigInt::zero()]);
        assert_eq!(m.v2, vec![BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn loewner_examples() {
        assert!((loewner_ratio(&torus2(1, 0, 1)).unwrap() - 1.0).abs() < 1e-12);
        let hex = loewner_ratio(&hexagonal_torus()).unwrap();
        assert!((hex - 2.0 / 3.0f64.sqrt()).abs() < 1e-12);
        // exact equality of squared quantities at the hexagonal point
        assert_eq!(loewner_ratio_sq_exact(&hexagonal_torus()).unwrap(), rat(4, 3));
        assert!((loewner_ratio(&torus2(1, 0, 4)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gromov_ratio_examples() {
        assert!((gromov_torus_ratio(&torus2(1, 0, 1)).unwrap() - 1.0).abs() < 1e-12);
        let hex = gromov_torus_ratio(&hexagonal_torus()).unwrap();
        assert!((hex - 2.0 / 3.0f64.sqrt()).abs() < 1e-12);
        let cube = FlatTorus::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!((gromov_torus_ratio(&cube).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pu_is_constant_one() {
        assert_eq!(pu_roundmetric_ratio(), 1.0);
    }

    #[test]
    fn unimodular_invariance_of_minima() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let dim = rng.gen_range(2..=3);
            let t = random_torus(&mut rng, dim);
            let a = random_unimodular(&mut rng, dim, 4);
            let t2 = t.transform(&a).unwrap();
            let m1 = successive_minima(&t).unwrap();
            let m2 = successive_minima(&t2).unwrap();
            assert_eq!(m1.lambda1_sq, m2.lambda1_sq);
            assert_eq!(m1.lambda2_sq, m2.lambda2_sq);
        }
    }

    #[test]
    fn scaling_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let t = random_torus(&mut rng, 2);
            let c = rat(rng.gen_range(1..=9), rng.gen_range(1..=3));
            let scaled = FlatTorus::new(
                t.gram()
                    .iter()
                    .map(|row| row.iter().map(|g| g * &c).collect())
                    .collect(),
            )
            .unwrap();
            let m = successive_minima(&t).unwrap();
            let ms = successive_minima(&scaled).unwrap();
            assert_eq!(ms.lambda1_sq, &m.lambda1_sq * &c);
            // ratios are scale invariant
            let r = loewner_ratio(&t).unwrap();
            let rs = loewner_ratio(&scaled).unwrap();
            assert!((r - rs).abs() < 1e-12);
            let g = gromov_torus_ratio(&t).unwrap();
            let gs = gromov_torus_ratio(&scaled).unwrap();
            assert!((g - gs).abs() < 1e-12);
        }
    }

    #[test]
    fn brute_force_oracle_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let dim = rng.gen_range(2..=3);
            let t = random_torus(&mut rng, dim);
            let m = successive_minima(&t).unwrap();
            // independent oracle: all integer vectors with coordinates in [-10, 10]
            let limits = vec![10i64; dim];
            let mut v = vec![0i64; dim];
            let mut all: Vec<(BigRational, Vec<BigInt>)> = Vec::new();
            enumerate_box(&limits, 0, &mut v, &mut |coords| {
                if coords.iter().all(|&c| c == 0) {
                    return;
                }
                let vec: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
                all.push((t.form(&vec), vec));
            });
            all.sort_by(|a, b| a.0.cmp(&b.0));
            let (l1, v1) = all[0].clone();
            let l2 = all
                .iter()
                .find(|(_, w)| independent(w, &v1))
                .map(|(q, _)| q.clone())
                .unwrap();
            assert_eq!(m.lambda1_sq, l1);
            assert_eq!(m.lambda2_sq, l2);
        }
    }

    #[test]
    fn torus_json_round_trip() {
        let t = hexagonal_torus();
        let s = serde_json::to_string(&t).unwrap();
        let back: FlatTorus = serde_json::from_str(&s).unwrap();
        assert_eq!(t, back);
    }
}
