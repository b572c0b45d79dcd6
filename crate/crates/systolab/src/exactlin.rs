//! Exact integer and rational linear algebra: arbitrary-precision matrices,
//! Smith normal form with unimodular transforms, and rank over Q and GF(2).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix, row-major, arbitrary-precision entries.
///
/// Empty matrices (0×n, n×0) are valid and show up routinely as boundary
/// maps of degrees with no cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale_col(&mut self, j: usize, s: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, j) * s;
            self.set(i, j, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a -= q * row_b
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(a, j) - q * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col_a -= q * col_b
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, a) - q * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j);
            self.set(a, j, v);
        }
    }
}

/// Smith normal form u·m·v = s with unimodular u, v and divisibility chain
/// d₁ | d₂ | … on the diagonal, entries normalized nonnegative.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

impl SnfResult {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors exceeding 1 (the torsion coefficients).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

/// Quotient rounding to nearest (ties toward zero), so |a − qb| ≤ |b|/2.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    // adjust toward nearest
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.sign() == b.sign()) || a.is_zero() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Pivot: smallest nonzero absolute value in the trailing submatrix,
/// ties broken by lowest (row, col).
fn find_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let e = s.get(i, j);
            if e.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if e.abs() < s.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let limit = rows.min(cols);
    let mut t = 0;
    while t < limit {
        let Some((pi, pj)) = find_pivot(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        'reduce: loop {
            // clear the pivot column
            let mut dirty = false;
            for i in t + 1..rows {
                if !s.get(i, t).is_zero() {
                    let q = div_round(s.get(i, t), s.get(t, t));
                    s.row_sub(i, t, &q);
                    u.row_sub(i, t, &q);
                    if !s.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // a strictly smaller remainder exists; re-pivot on it
                let (pi, pj) = find_pivot(&s, t).expect("nonzero remainder present");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue 'reduce;
            }
            // clear the pivot row
            let mut dirty = false;
            for j in t + 1..cols {
                if !s.get(t, j).is_zero() {
                    let q = div_round(s.get(t, j), s.get(t, t));
                    s.col_sub(j, t, &q);
                    v.col_sub(j, t, &q);
                    if !s.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (pi, pj) = find_pivot(&s, t).expect("nonzero remainder present");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue 'reduce;
            }
            // enforce divisibility of the rest by the pivot
            let pivot = s.get(t, t).clone();
            let mut bad: Option<usize> = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(s.get(i, j) % &pivot).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.row_sub(t, i, &minus_one);
                    u.row_sub(t, i, &minus_one);
                    continue 'reduce;
                }
                None => break 'reduce,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..limit).map(|i| s.get(i, i).clone()).collect();
    SnfResult { u, s, v, diagonal }
}

/// Rank over Q, by fraction-based Gaussian elimination (independent of SNF).
pub fn rank_rational(m: &IntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| (0..cols).map(|j| BigRational::from(m.get(i, j).clone())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[rank][col];
            for j in col..cols {
                let sub = &f * &a[rank][j];
                a[i][j] -= sub;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank of m reduced mod 2, by elimination over GF(2).
pub fn rank_mod2(m: &IntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<bool>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).is_odd()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| a[i][col]) else { continue };
        a.swap(rank, p);
        for i in 0..rows {
            if i != rank && a[i][col] {
                for j in 0..cols {
                    a[i][j] ^= a[rank][j];
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Determinant, by rational elimination. Used for unimodularity checks.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from(m.get(i, j).clone())).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= &a[col][col];
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
    assert!(det.is_integer());
    det.to_integer()
}

// ---------------------------------------------------------------------------
// JSON wire format: {"rows": r, "cols": c, "entries": [row-major integers]}.
// Entries may be JSON numbers or decimal strings (for values beyond i64).

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<serde_json::Value>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = self
            .entries
            .iter()
            .map(|e| match i64::try_from(e.clone()) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(e.to_string()),
            })
            .collect();
        let wire = MatrixWire {
            rows: self.rows,
            cols: self.cols,
            entries,
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        if wire.entries.len() != wire.rows * wire.cols {
            return Err(serde::de::Error::custom(format!(
                "expected {} entries, got {}",
                wire.rows * wire.cols,
                wire.entries.len()
            )));
        }
        let mut entries = Vec::with_capacity(wire.entries.len());
        for v in &wire.entries {
            let e = match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom("non-integer matrix entry")),
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| serde::de::Error::custom("unparseable matrix entry")),
                _ => Err(serde::de::Error::custom("matrix entry must be integer or string")),
            }?;
            entries.push(e);
        }
        Ok(IntMatrix::new(wire.rows, wire.cols, entries))
    }
}
