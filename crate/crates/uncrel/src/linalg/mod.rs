//! Dense complex linear algebra substrate: matrices, vectors, index sets,
//! normalized dictionaries, the DFT, selectors and orthogonal projectors,
//! matrix norms, and coherence measures.
//!
//! Everything here is plain `Vec<Complex64>` row-major storage with no
//! external solver dependency. Index sets are 1-based in all public I/O,
//! matching the usual convention for subsets of `{1,…,m}`.

pub mod factor;
pub mod io;
mod norms;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use norms::{matrix_norms, op_norm_1, op_norm_2};

/// Default tolerance for unitarity checks.
pub const UNITARY_TOL: f64 = 1e-10;

/// Default tolerance on column 2-norms of a [`Dictionary`].
pub const COLUMN_NORM_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    #[error("index {index} out of range 1..={universe}")]
    IndexOutOfRange { index: usize, universe: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("matrix is not unitary: deviation {deviation:.3e} exceeds {tolerance:.1e}")]
    NotUnitary { deviation: f64, tolerance: f64 },
    #[error("column {col} has 2-norm {norm} outside tolerance {tolerance:.1e} of 1")]
    UnnormalizedColumn { col: usize, norm: f64, tolerance: f64 },
    #[error("column {0} has zero norm and cannot be normalized")]
    ZeroColumn(usize),
    #[error("matrix is singular at pivot {0}")]
    Singular(usize),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

// ---------------------------------------------------------------------------
// ComplexMatrix
// ---------------------------------------------------------------------------

/// Dense complex matrix, row-major. Dimensions are at least 1x1 and all
/// entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::InvalidDimension(format!(
                "matrix dimensions must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        let m = Self { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    fn check_finite(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self.get(i, j);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(LinalgError::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, col: usize) -> ComplexVector {
        ComplexVector::from_entries((0..self.rows).map(|i| self.get(i, col)).collect())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions must agree for matrix product"
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                let orow = other.row(k);
                let base = i * out.cols;
                for j in 0..other.cols {
                    out.data[base + j] += a * orow[j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &ComplexVector) -> ComplexVector {
        assert_eq!(self.cols, x.dim(), "matrix-vector dimension mismatch");
        let mut out = vec![ZERO; self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = ZERO;
            for j in 0..self.cols {
                acc += row[j] * x.entries()[j];
            }
            out[i] = acc;
        }
        ComplexVector::from_entries(out)
    }

    /// Submatrix with the given 0-based row and column indices, in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert!(!rows.is_empty() && !cols.is_empty());
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Columns selected by a 1-based index set, in increasing order.
    pub fn select_columns(&self, set: &IndexSet) -> Option<Self> {
        if set.is_empty() {
            return None;
        }
        let cols: Vec<usize> = set.members().iter().map(|&k| k - 1).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        Some(self.submatrix(&rows, &cols))
    }

    /// Horizontal concatenation `[self other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot concatenate {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn entrywise_l1_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).sum()
    }

    /// Maximum entrywise deviation of `U U^H` from the identity.
    pub fn unitary_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let m = self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..m {
            let ri = self.row(i);
            for j in i..m {
                let rj = self.row(j);
                let mut acc = ZERO;
                for k in 0..m {
                    acc += ri[k] * rj[k].conj();
                }
                if i == j {
                    acc -= ONE;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

/// Checks that `u` is square and unitary to within `tol` (entrywise on
/// `U U^H - I`).
pub fn ensure_unitary(u: &ComplexMatrix, tol: f64) -> Result<()> {
    let deviation = u.unitary_deviation();
    if deviation > tol {
        return Err(LinalgError::NotUnitary {
            deviation,
            tolerance: tol,
        });
    }
    Ok(())
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(deserializer)?;
        let data = raw
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(raw.rows, raw.cols, data).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

// ---------------------------------------------------------------------------
// ComplexVector
// ---------------------------------------------------------------------------

/// Dense complex vector with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(data: Vec<Complex64>) -> Result<Self> {
        for (i, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite { row: i, col: 0 });
            }
        }
        Ok(Self { data })
    }

    pub fn from_entries(data: Vec<Complex64>) -> Self {
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: vec![ZERO; dim],
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[index] = ONE;
        v
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Self {
            data: entries.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, i: usize) -> Complex64 {
        self.data[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, z: Complex64) {
        self.data[i] = z;
    }

    pub fn norm2(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm1(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).sum()
    }

    /// Number of entries with modulus above `tol`.
    pub fn norm0(&self, tol: f64) -> usize {
        self.data.iter().filter(|z| z.norm() > tol).count()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self` with every entry outside the 1-based set `a` zeroed, i.e.
    /// multiplication by the selector of `a`.
    pub fn restrict(&self, a: &IndexSet) -> Self {
        assert_eq!(self.dim(), a.universe());
        let mut out = Self::zeros(self.dim());
        for &k in a.members() {
            out.data[k - 1] = self.data[k - 1];
        }
        out
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

impl Serialize for ComplexVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawVector {
            dim: self.dim(),
            entries: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawVector::deserialize(deserializer)?;
        if raw.entries.len() != raw.dim {
            return Err(serde::de::Error::custom(format!(
                "vector declares dim {} but has {} entries",
                raw.dim,
                raw.entries.len()
            )));
        }
        let data = raw
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexVector::new(data).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawVector {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

// ---------------------------------------------------------------------------
// IndexSet
// ---------------------------------------------------------------------------

/// Subset of `{1,…,m}` with strictly increasing 1-based members. May be
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "RawIndexSet")]
pub struct IndexSet {
    universe: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(universe: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(LinalgError::DuplicateIndex(pair[0]));
            }
        }
        for &k in &members {
            if k == 0 || k > universe {
                return Err(LinalgError::IndexOutOfRange {
                    index: k,
                    universe,
                });
            }
        }
        Ok(Self { universe, members })
    }

    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            members: Vec::new(),
        }
    }

    pub fn full(universe: usize) -> Self {
        Self {
            universe,
            members: (1..=universe).collect(),
        }
    }

    /// Circular interval `{l+1, …, l+n}` reduced modulo `universe` into
    /// `{1,…,universe}`. `n` may be 0 (empty set) and at most `universe`.
    pub fn circular_interval(universe: usize, start: usize, len: usize) -> Result<Self> {
        if universe == 0 {
            return Err(LinalgError::InvalidDimension(
                "universe must be at least 1".into(),
            ));
        }
        if len > universe {
            return Err(LinalgError::InvalidDimension(format!(
                "interval length {len} exceeds universe {universe}"
            )));
        }
        let members = (1..=len)
            .map(|i| (start + i - 1) % universe + 1)
            .collect();
        Self::new(universe, members)
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted 1-based members.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Sorted 0-based positions.
    pub fn positions(&self) -> Vec<usize> {
        self.members.iter().map(|&k| k - 1).collect()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn complement(&self) -> Self {
        let members = (1..=self.universe)
            .filter(|k| !self.contains(*k))
            .collect();
        Self {
            universe: self.universe,
            members,
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.universe == other.universe && self.members.iter().all(|&k| other.contains(k))
    }

    /// Detects whether the set is a circular interval; returns `(start, len)`
    /// with the same convention as [`IndexSet::circular_interval`]. The empty
    /// set is not considered an interval.
    pub fn as_circular_interval(&self) -> Option<(usize, usize)> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        if n == self.universe {
            return Some((0, n));
        }
        // Exactly one circular gap may exceed 1; it precedes the start.
        let mut start = None;
        for i in 0..n {
            let prev = self.members[(i + n - 1) % n];
            let cur = self.members[i];
            let gap = (cur + self.universe - prev - 1) % self.universe + 1;
            if gap != 1 {
                if start.is_some() {
                    return None;
                }
                start = Some(cur);
            }
        }
        start.map(|s| (s - 1, n))
    }
}

impl From<IndexSet> for RawIndexSet {
    fn from(value: IndexSet) -> Self {
        RawIndexSet {
            universe_size: value.universe,
            members: value.members,
        }
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawIndexSet::deserialize(deserializer)?;
        IndexSet::new(raw.universe_size, raw.members).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawIndexSet {
    universe_size: usize,
    members: Vec<usize>,
}

// ---------------------------------------------------------------------------
// Dictionary
// ---------------------------------------------------------------------------

/// Matrix whose columns are 2-normalized to 1 within a declared tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "RawDictionary")]
pub struct Dictionary {
    matrix: ComplexMatrix,
    column_norm_tolerance: f64,
}

impl Dictionary {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, COLUMN_NORM_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, column_norm_tolerance: f64) -> Result<Self> {
        for j in 0..matrix.cols() {
            let norm = (0..matrix.rows())
                .map(|i| matrix.get(i, j).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if (norm - 1.0).abs() > column_norm_tolerance {
                return Err(LinalgError::UnnormalizedColumn {
                    col: j + 1,
                    norm,
                    tolerance: column_norm_tolerance,
                });
            }
        }
        Ok(Self {
            matrix,
            column_norm_tolerance,
        })
    }

    /// Rescales every column to unit 2-norm. Returns the dictionary together
    /// with the largest deviation found, so callers can surface a warning
    /// when the input was not normalized.
    pub fn renormalized(mut matrix: ComplexMatrix) -> Result<(Self, f64)> {
        let mut worst: f64 = 0.0;
        for j in 0..matrix.cols() {
            let norm = (0..matrix.rows())
                .map(|i| matrix.get(i, j).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if norm == 0.0 {
                return Err(LinalgError::ZeroColumn(j + 1));
            }
            worst = worst.max((norm - 1.0).abs());
            let inv = Complex64::new(1.0 / norm, 0.0);
            for i in 0..matrix.rows() {
                let z = matrix.get(i, j);
                matrix.set(i, j, z * inv);
            }
        }
        Ok((
            Self {
                matrix,
                column_norm_tolerance: COLUMN_NORM_TOL,
            },
            worst,
        ))
    }

    pub fn identity(m: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(m),
            column_norm_tolerance: COLUMN_NORM_TOL,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn column_norm_tolerance(&self) -> f64 {
        self.column_norm_tolerance
    }

    /// `[self other]` as a dictionary; both operands keep their columns.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let matrix = self.matrix.hcat(&other.matrix)?;
        let tol = self.column_norm_tolerance.max(other.column_norm_tolerance);
        Ok(Self {
            matrix,
            column_norm_tolerance: tol,
        })
    }
}

impl From<Dictionary> for RawDictionary {
    fn from(value: Dictionary) -> Self {
        RawDictionary {
            matrix: value.matrix,
            column_norm_tolerance: value.column_norm_tolerance,
        }
    }
}

impl<'de> Deserialize<'de> for Dictionary {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDictionary::deserialize(deserializer)?;
        Dictionary::with_tolerance(raw.matrix, raw.column_norm_tolerance)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawDictionary {
    matrix: ComplexMatrix,
    column_norm_tolerance: f64,
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// The `m x m` DFT matrix with entry `(1/sqrt(m)) exp(-2*pi*j*k*l/m)` in row
/// `k`, column `l`, for 1-based `k, l`. The phase argument is reduced with an
/// exact integer modulus so entries stay accurate for large `m`.
pub fn dft_matrix(m: usize) -> Result<ComplexMatrix> {
    if m == 0 {
        return Err(LinalgError::InvalidDimension(
            "DFT size must be at least 1".into(),
        ));
    }
    let scale = 1.0 / (m as f64).sqrt();
    Ok(ComplexMatrix::from_fn(m, m, |i, j| {
        let red = ((i + 1) * (j + 1)) % m;
        let theta = 2.0 * std::f64::consts::PI * (red as f64) / (m as f64);
        Complex64::new(theta.cos() * scale, -theta.sin() * scale)
    }))
}

/// Diagonal 0/1 selector matrix of a 1-based index set.
pub fn selector(a: &IndexSet) -> ComplexMatrix {
    let m = a.universe();
    let mut d = ComplexMatrix::zeros(m, m);
    for &k in a.members() {
        d.set(k - 1, k - 1, ONE);
    }
    d
}

/// Orthogonal projector `U D_Q U^H` onto the span of the columns of `U`
/// selected by `Q`.
pub fn projector(u: &ComplexMatrix, q: &IndexSet) -> Result<ComplexMatrix> {
    if !u.is_square() || u.rows() != q.universe() {
        return Err(LinalgError::DimensionMismatch(format!(
            "projector needs a square matrix over the set universe, got {}x{} and universe {}",
            u.rows(),
            u.cols(),
            q.universe()
        )));
    }
    ensure_unitary(u, UNITARY_TOL)?;
    let m = u.rows();
    let mut p = ComplexMatrix::zeros(m, m);
    for &k in q.members() {
        let col = k - 1;
        for i in 0..m {
            let ui = u.get(i, col);
            for j in 0..m {
                let val = p.get(i, j) + ui * u.get(j, col).conj();
                p.set(i, j, val);
            }
        }
    }
    Ok(p)
}

/// Coherence: the largest absolute inner product between distinct columns.
/// Zero for a single column.
pub fn coherence(dict: &Dictionary) -> f64 {
    let a = dict.matrix();
    let (m, n) = (a.rows(), a.cols());
    if n < 2 {
        return 0.0;
    }
    // Column-major copy so the pairwise dots run over contiguous slices.
    let mut cols = vec![ZERO; m * n];
    for j in 0..n {
        for i in 0..m {
            cols[j * m + i] = a.get(i, j);
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let ci = &cols[i * m..(i + 1) * m];
        for j in (i + 1)..n {
            let cj = &cols[j * m..(j + 1) * m];
            let mut acc = ZERO;
            for k in 0..m {
                acc += ci[k].conj() * cj[k];
            }
            let mag = acc.norm();
            if mag > worst {
                worst = mag;
            }
        }
    }
    worst
}

/// Mutual coherence: the largest absolute inner product between a column of
/// `a` and a column of `b`. Diagonal pairs are included since the two column
/// indices range independently.
pub fn mutual_coherence(a: &Dictionary, b: &Dictionary) -> Result<f64> {
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "mutual coherence needs equal row counts, got {} and {}",
            a.rows(),
            b.rows()
        )));
    }
    let (am, bm) = (a.matrix(), b.matrix());
    let m = am.rows();
    let mut worst: f64 = 0.0;
    for i in 0..am.cols() {
        for j in 0..bm.cols() {
            let mut acc = ZERO;
            for k in 0..m {
                acc += am.get(k, i).conj() * bm.get(k, j);
            }
            worst = worst.max(acc.norm());
        }
    }
    Ok(worst)
}
