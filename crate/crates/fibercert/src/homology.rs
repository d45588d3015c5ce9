//! Integral homology via Smith normal form.
//!
//! The reduction runs on 64-bit integers with checked arithmetic and
//! escalates to arbitrary precision only if an operation would overflow, so
//! results are exact regardless of entry growth. Pivots are chosen by
//! minimal absolute value.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::complex::FlagComplex;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn multiply(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
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
}

/// Scalar interface the reduction is generic over. The `i64` instance
/// reports overflow through `None`; `BigInt` never fails.
trait SnfScalar: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn checked_neg(&self) -> Option<Self>;
    /// `self - q * x`.
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    /// Truncated quotient.
    fn checked_div_trunc(&self, d: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
}

impl SnfScalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn checked_div_trunc(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn divides(&self, other: &Self) -> bool {
        *self != 0 && other % self == 0
    }
}

impl SnfScalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn checked_div_trunc(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn divides(&self, other: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&(other % self))
    }
}

struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: SnfScalar> Mat<T> {
    fn from_int(m: &IntMatrix) -> Mat<T> {
        Mat {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data.iter().map(|&v| T::from_i64(v)).collect(),
        }
    }

    fn identity(n: usize) -> Mat<T> {
        let mut data = vec![T::from_i64(0); n * n];
        for i in 0..n {
            data[i * n + i] = T::from_i64(1);
        }
        Mat {
            rows: n,
            cols: n,
            data,
        }
    }

    fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_i -= q * row_t`.
    fn row_sub_mul(&mut self, i: usize, q: &T, t: usize) -> Option<()> {
        for j in 0..self.cols {
            let x = self.get(t, j).clone();
            if !x.is_zero() {
                self.data[i * self.cols + j] = self.get(i, j).checked_sub_mul(q, &x)?;
            }
        }
        Some(())
    }

    /// `col_j -= q * col_t`.
    fn col_sub_mul(&mut self, j: usize, q: &T, t: usize) -> Option<()> {
        for i in 0..self.rows {
            let x = self.get(i, t).clone();
            if !x.is_zero() {
                self.data[i * self.cols + j] = self.get(i, j).checked_sub_mul(q, &x)?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for j in 0..self.cols {
            self.data[i * self.cols + j] = self.get(i, j).checked_neg()?;
        }
        Some(())
    }
}

struct SnfRaw<T> {
    factors: Vec<T>,
    transforms: Option<(Mat<T>, Mat<T>)>,
}

/// Core reduction. Returns `None` if the scalar type overflowed.
fn snf_core<T: SnfScalar>(m: &mut Mat<T>, with_transforms: bool) -> Option<SnfRaw<T>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut u = with_transforms.then(|| Mat::<T>::identity(rows));
    let mut v = with_transforms.then(|| Mat::<T>::identity(cols));
    let mut t = 0;
    while t < rows.min(cols) {
        // Minimal-absolute-value pivot in the remaining submatrix; a unit
        // entry ends the scan immediately.
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in t..rows {
            for j in t..cols {
                let x = m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.cmp_abs(m.get(bi, bj)) == Ordering::Less) {
                    best = Some((i, j));
                    if x.cmp_abs(&T::from_i64(1)) == Ordering::Equal {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        m.swap_cols(t, pj);
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        'reduce: loop {
            // Clear the pivot column. A nonzero remainder means a strictly
            // smaller pivot was produced; promote it and start over.
            for i in (t + 1)..rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = m.get(i, t).checked_div_trunc(m.get(t, t))?;
                m.row_sub_mul(i, &q, t)?;
                if let Some(u) = u.as_mut() {
                    u.row_sub_mul(i, &q, t)?;
                }
                if !m.get(i, t).is_zero() {
                    m.swap_rows(t, i);
                    if let Some(u) = u.as_mut() {
                        u.swap_rows(t, i);
                    }
                    continue 'reduce;
                }
            }
            // Clear the pivot row. Column operations leave the already
            // cleared column untouched below the pivot.
            for j in (t + 1)..cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = m.get(t, j).checked_div_trunc(m.get(t, t))?;
                m.col_sub_mul(j, &q, t)?;
                if let Some(v) = v.as_mut() {
                    v.col_sub_mul(j, &q, t)?;
                }
                if !m.get(t, j).is_zero() {
                    m.swap_cols(t, j);
                    if let Some(v) = v.as_mut() {
                        v.swap_cols(t, j);
                    }
                    continue 'reduce;
                }
            }
            // Enforce the divisibility chain: fold in any offending row and
            // reduce again.
            let one = T::from_i64(1);
            if m.get(t, t).cmp_abs(&one) == Ordering::Equal {
                break 'reduce;
            }
            let pivot = m.get(t, t).clone();
            for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !pivot.divides(m.get(i, j)) {
                        let minus_one = T::from_i64(-1);
                        m.row_sub_mul(t, &minus_one, i)?;
                        if let Some(u) = u.as_mut() {
                            u.row_sub_mul(t, &minus_one, i)?;
                        }
                        continue 'reduce;
                    }
                }
            }
            break 'reduce;
        }
        t += 1;
    }
    let mut factors = Vec::with_capacity(t);
    for k in 0..t {
        if m.get(k, k).is_negative() {
            m.negate_row(k)?;
            if let Some(u) = u.as_mut() {
                u.negate_row(k)?;
            }
        }
        factors.push(m.get(k, k).clone());
    }
    Some(SnfRaw {
        factors,
        transforms: u.zip(v),
    })
}

/// A matrix of arbitrary-precision integers; only produced as an SNF
/// transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn from_mat(m: Mat<BigInt>) -> BigMatrix {
        BigMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data,
        }
    }

    fn multiply(&self, other: &BigMatrix) -> BigMatrix {
        assert_eq!(self.cols, other.rows);
        let mut data = vec![BigInt::ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if Zero::is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let val = &data[i * other.cols + j] + a * other.get(k, j);
                    data[i * other.cols + j] = val;
                }
            }
        }
        BigMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }
}

/// Result of [`smith_normal_form`]: positive invariant factors forming a
/// divisibility chain, plus optional unimodular transforms with
/// `U * A * V = D`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub factors: Vec<BigInt>,
    pub transforms: Option<(BigMatrix, BigMatrix)>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors exceeding 1, i.e. the torsion coefficients contributed by
    /// this boundary operator.
    pub fn torsion(&self) -> Vec<u64> {
        self.factors
            .iter()
            .filter(|f| **f > BigInt::from(1))
            .map(|f| u64::try_from(f.clone()).expect("torsion coefficient exceeds u64"))
            .collect()
    }

    pub fn factors_i64(&self) -> Vec<i64> {
        self.factors
            .iter()
            .map(|f| i64::try_from(f.clone()).expect("invariant factor exceeds i64"))
            .collect()
    }
}

/// Smith normal form of an integer matrix.
///
/// Starts on 64-bit arithmetic and silently redoes the computation with big
/// integers if anything would overflow. When transforms are requested, the
/// identity `U * A * V = D` is re-checked before returning.
pub fn smith_normal_form(a: &IntMatrix, with_transforms: bool) -> SmithDecomposition {
    let fast =
        snf_core(&mut Mat::<i64>::from_int(a), with_transforms).map(|raw| SmithDecomposition {
            factors: raw.factors.into_iter().map(BigInt::from).collect(),
            transforms: raw.transforms.map(|(u, v)| {
                let to_big = |m: Mat<i64>| BigMatrix {
                    rows: m.rows,
                    cols: m.cols,
                    data: m.data.into_iter().map(BigInt::from).collect(),
                };
                (to_big(u), to_big(v))
            }),
        });
    let result = fast.unwrap_or_else(|| {
        let raw = snf_core(&mut Mat::<BigInt>::from_int(a), with_transforms)
            .expect("big integer arithmetic cannot overflow");
        SmithDecomposition {
            factors: raw.factors,
            transforms: raw
                .transforms
                .map(|(u, v)| (BigMatrix::from_mat(u), BigMatrix::from_mat(v))),
        }
    });
    for w in result.factors.windows(2) {
        assert!(
            Zero::is_zero(&(&w[1] % &w[0])),
            "invariant factors must form a divisibility chain"
        );
    }
    if let Some((u, v)) = &result.transforms {
        let a_big = BigMatrix {
            rows: a.rows(),
            cols: a.cols(),
            data: a.data.iter().map(|&x| BigInt::from(x)).collect(),
        };
        let d = u.multiply(&a_big).multiply(v);
        for i in 0..d.rows {
            for j in 0..d.cols {
                let expect = if i == j && i < result.factors.len() {
                    result.factors[i].clone()
                } else {
                    BigInt::ZERO
                };
                assert_eq!(*d.get(i, j), expect, "U*A*V mismatch at ({i},{j})");
            }
        }
    }
    result
}

/// Rank and torsion of a boundary operator, on the fast path used by the
/// orbit sweeps. Escalates exactly like [`smith_normal_form`].
pub fn rank_and_torsion(a: &IntMatrix) -> (usize, Vec<u64>) {
    if let Some(raw) = snf_core(&mut Mat::<i64>::from_int(a), false) {
        let torsion = raw
            .factors
            .iter()
            .filter(|&&f| f > 1)
            .map(|&f| f as u64)
            .collect();
        (raw.factors.len(), torsion)
    } else {
        let raw = snf_core(&mut Mat::<BigInt>::from_int(a), false)
            .expect("big integer arithmetic cannot overflow");
        let torsion = raw
            .factors
            .iter()
            .filter(|f| **f > BigInt::from(1))
            .map(|f| u64::try_from(f.clone()).expect("torsion coefficient exceeds u64"))
            .collect();
        (raw.factors.len(), torsion)
    }
}

/// Integral homology of a complex through the given dimension.
///
/// Serialises as `{"betti": [..], "torsion": [[..], ..], "empty": bool}`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HomologySummary {
    /// `betti[d]` for `d = 0..=through_dim`.
    pub betti: Vec<usize>,
    /// `torsion[d]`: invariant factors of the (d+1)-boundary exceeding 1.
    pub torsion: Vec<Vec<u64>>,
    /// True for the complex with no vertices; all other fields are zero then.
    pub empty: bool,
}

impl HomologySummary {
    /// Rank of reduced H0: component count minus one.
    pub fn reduced_b0(&self) -> usize {
        if self.empty {
            0
        } else {
            self.betti[0] - 1
        }
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    /// Alternating sum of Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Compute `H_d(K; Z)` for `d <= through_dim` from ranks and invariant
/// factors of the boundary operators.
pub fn homology_summary(k: &FlagComplex, through_dim: usize) -> HomologySummary {
    assert!(through_dim <= 3);
    if k.is_empty() {
        return HomologySummary {
            empty: true,
            betti: vec![0; through_dim + 1],
            torsion: vec![Vec::new(); through_dim + 1],
        };
    }
    // rank_d = rank of the boundary operator from d-chains; index 0 unused.
    let mut rank = [0usize; 5];
    let mut torsion_from = vec![Vec::new(); 5];
    for d in 1..=(through_dim + 1).min(k.max_dim()) {
        if k.face_count(d) > 0 {
            let (r, t) = rank_and_torsion(&k.boundary_matrix(d));
            rank[d] = r;
            torsion_from[d] = t;
        }
    }
    let betti = (0..=through_dim)
        .map(|d| k.face_count(d) - rank[d] - rank[d + 1])
        .collect();
    let torsion = (0..=through_dim)
        .map(|d| torsion_from[d + 1].clone())
        .collect();
    HomologySummary {
        empty: false,
        betti,
        torsion,
    }
}

/// True iff the complex is nonempty and connected.
///
/// Computed by union-find over the 1-skeleton, deliberately not via SNF:
/// this is the cheap path the exhaustive sweeps lean on, and tests hold the
/// two routes against each other.
pub fn reduced_h0_is_zero(k: &FlagComplex) -> bool {
    !k.is_empty() && component_count(k) == 1
}

/// Connected components of a complex's 1-skeleton.
pub fn component_count(k: &FlagComplex) -> usize {
    let verts = k.vertices();
    if verts.is_empty() {
        return 0;
    }
    let index = |v: u8| verts.binary_search(&v).expect("edge endpoint not a vertex");
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut components = verts.len();
    for e in k.edges() {
        let (a, b) = (
            find(&mut parent, index(e[0])),
            find(&mut parent, index(e[1])),
        );
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components
}
