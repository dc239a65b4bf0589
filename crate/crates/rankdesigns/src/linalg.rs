//! Dense exact linear algebra over `F_q`: rank, RREF, kernels, canonical
//! subspaces (column spaces / supports) and basis-change matrices.
//!
//! Matrices are immutable values; every operation is pure. Subspaces are
//! always stored as the RREF of a row basis, so equal subspaces have
//! bit-identical encodings and can be hashed and ordered directly.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::gf::{Field, FiniteField, FqElem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("mixed field contexts")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("entry {0} out of range for field of order {1}")]
    BadEntry(u64, u64),
}

/// In-place reduction of `rows` to reduced row echelon form over `f`,
/// considering only the first `ncols` entries of each row for pivot selection
/// (trailing entries ride along, which implements augmented elimination).
/// Returns the pivot columns.
pub(crate) fn row_reduce<F: FiniteField>(f: &F, rows: &mut [Vec<u64>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = f.inv(rows[rank][col]).expect("pivot is nonzero");
        let width = rows[rank].len();
        for c in 0..width {
            rows[rank][c] = f.mul(rows[rank][c], inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..width {
                    let sub = f.mul(factor, rows[rank][c]);
                    rows[r][c] = f.sub(rows[r][c], sub);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of the matrix given as rows over `f`.
pub(crate) fn rank_of_rows<F: FiniteField>(f: &F, rows: &[Vec<u64>], ncols: usize) -> usize {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    row_reduce(f, &mut work, ncols).len()
}

/// Basis of `{v : sum_j rows[i][j] v_j = 0 for all i}`, not canonicalized.
pub(crate) fn kernel_of_rows<F: FiniteField>(f: &F, rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    let pivots = row_reduce(f, &mut work, ncols);
    let mut basis = Vec::with_capacity(ncols - pivots.len());
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(work[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// A dense matrix over `F_q`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<FqElem>,
}

impl FqMatrix {
    pub fn new(field: Arc<Field>, rows: usize, cols: usize, data: Vec<FqElem>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(LinalgError::BadEntry(bad, field.order()));
        }
        Ok(FqMatrix { field, rows, cols, data })
    }

    pub fn zero(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        FqMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Self {
        let mut m = FqMatrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: Arc<Field>, rows: Vec<Vec<FqElem>>, cols: usize) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "row of length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        FqMatrix::new(field, nrows, cols, data)
    }

    pub fn random<R: Rng>(field: Arc<Field>, rows: usize, cols: usize, rng: &mut R) -> Self {
        let q = field.order();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
        FqMatrix { field, rows, cols, data }
    }

    /// Uniformly random invertible n x n matrix, by rejection.
    pub fn random_invertible<R: Rng>(field: Arc<Field>, n: usize, rng: &mut R) -> Self {
        loop {
            let m = FqMatrix::random(field.clone(), n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FqElem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FqElem) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[FqElem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[FqElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<FqElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut data = vec![0; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        FqMatrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn add(&self, other: &FqMatrix) -> Result<FqMatrix, LinalgError> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FqMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &FqMatrix) -> Result<FqMatrix, LinalgError> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(FqMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: FqElem) -> FqMatrix {
        let data = self.data.iter().map(|&a| self.field.mul(c, a)).collect();
        FqMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field.as_ref();
        let mut data = vec![0; self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    data[idx] = f.add(data[idx], f.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(FqMatrix { field: self.field.clone(), rows: self.rows, cols: other.cols, data })
    }

    /// Rank over `F_q`. Over GF(2) with at most 128 columns, rows are packed
    /// into machine words and eliminated with XOR; this is the innermost loop
    /// of all codeword enumerations.
    pub fn rank(&self) -> usize {
        if self.field.order() == 2 && self.cols <= 128 {
            return self.rank_gf2();
        }
        rank_of_rows(self.field.as_ref(), &self.rows_vec(), self.cols)
    }

    fn rank_gf2(&self) -> usize {
        let mut packed: Vec<u128> = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .fold(0u128, |acc, (c, &v)| acc | (u128::from(v) << c))
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let mask = 1u128 << col;
            let Some(pivot) = (rank..packed.len()).find(|&r| packed[r] & mask != 0) else {
                continue;
            };
            packed.swap(rank, pivot);
            let pivot_row = packed[rank];
            for (r, row) in packed.iter_mut().enumerate() {
                if r != rank && *row & mask != 0 {
                    *row ^= pivot_row;
                }
            }
            rank += 1;
            if rank == packed.len() {
                break;
            }
        }
        rank
    }

    /// Reduced row echelon form. Returns `(R, pivots, T)` with `R = T * self`
    /// and `T` invertible.
    pub fn rref(&self) -> (FqMatrix, Vec<usize>, FqMatrix) {
        let f = self.field.as_ref();
        let mut work: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..self.rows).map(|i| u64::from(i == r)));
                row
            })
            .collect();
        let pivots = row_reduce(f, &mut work, self.cols);
        let mut rdata = Vec::with_capacity(self.rows * self.cols);
        let mut tdata = Vec::with_capacity(self.rows * self.rows);
        for row in &work {
            rdata.extend_from_slice(&row[..self.cols]);
            tdata.extend_from_slice(&row[self.cols..]);
        }
        let r = FqMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: rdata };
        let t = FqMatrix { field: self.field.clone(), rows: self.rows, cols: self.rows, data: tdata };
        (r, pivots, t)
    }

    /// The right kernel `{v : self * v^T = 0}` as a canonical subspace of
    /// `F_q^cols`, of dimension `cols - rank`.
    pub fn kernel(&self) -> Subspace {
        let basis = kernel_of_rows(self.field.as_ref(), &self.rows_vec(), self.cols);
        Subspace::from_rows(self.field.clone(), self.cols, basis)
    }

    /// The column space of the matrix: the support `sigma(X)`, a canonical
    /// subspace of `F_q^rows` of dimension `rank(X)`.
    pub fn support(&self) -> Subspace {
        Subspace::from_generators(&self.transpose())
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<FqMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch(format!("{}x{}", self.rows, self.cols)));
        }
        let (r, pivots, t) = self.rref();
        if pivots.len() != self.rows {
            return Err(LinalgError::Singular);
        }
        debug_assert!(r == FqMatrix::identity(self.field.clone(), self.rows));
        Ok(t)
    }

    fn check_same_shape(&self, other: &FqMatrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// A subspace of `F_q^n` in canonical form: the basis is the RREF of any
/// generating set, with zero rows dropped. Equality, hashing and ordering all
/// work on the canonical encoding.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: FqMatrix,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.basis.rows == other.basis.rows
            && self.basis.data == other.basis.data
    }
}
impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.rows.hash(state);
        self.basis.data.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.basis.rows, &self.basis.data).cmp(&(
            other.ambient,
            other.basis.rows,
            &other.basis.data,
        ))
    }
}

impl Subspace {
    /// The row space of `gens`, canonicalized.
    pub fn from_generators(gens: &FqMatrix) -> Subspace {
        Subspace::from_rows(gens.field.clone(), gens.cols, gens.rows_vec())
    }

    pub(crate) fn from_rows(field: Arc<Field>, ambient: usize, mut rows: Vec<Vec<u64>>) -> Subspace {
        let pivots = row_reduce(field.as_ref(), &mut rows, ambient);
        rows.truncate(pivots.len());
        let basis = FqMatrix::from_rows(field, rows, ambient).expect("rows have ambient length");
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(field: Arc<Field>, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: FqMatrix::zero(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Arc<Field>, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: FqMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn field(&self) -> &Arc<Field> {
        self.basis.field()
    }

    /// The RREF basis, one row per dimension.
    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Whether `v` lies in the subspace, by reduction against the RREF basis.
    pub fn contains_vector(&self, v: &[FqElem]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let f = self.basis.field.as_ref();
        let mut v = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            if v[pc] != 0 {
                let factor = v[pc];
                for c in 0..self.ambient {
                    let sub = f.mul(factor, self.basis.get(i, c));
                    v[c] = f.sub(v[c], sub);
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Whether `other <= self` as subspaces.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok((0..other.dim()).all(|r| self.contains_vector(other.basis.row(r))))
    }

    /// `U^perp` with respect to the standard inner product; the kernel of the
    /// basis matrix, so `dim(U) + dim(U^perp) = n`.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.basis.field.clone(), self.ambient);
        }
        self.basis.kernel()
    }

    /// The sum `U + W`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        let mut rows = self.basis.rows_vec();
        rows.extend(other.basis.rows_vec());
        Ok(Subspace::from_rows(self.basis.field.clone(), self.ambient, rows))
    }

    /// `dim(U intersect W)`, from the dimension formula.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize, LinalgError> {
        let s = self.sum(other)?;
        Ok(self.dim() + other.dim() - s.dim())
    }

    /// All `q^dim` vectors of the subspace, as coefficient combinations of the
    /// basis rows in lexicographic order.
    pub fn vectors(&self) -> Vec<Vec<FqElem>> {
        let f = self.basis.field.as_ref();
        let q = f.order();
        let k = self.dim();
        let total = q.pow(k as u32);
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut v = vec![0; self.ambient];
            let mut rest = idx;
            for i in 0..k {
                let c = rest % q;
                rest /= q;
                if c != 0 {
                    for j in 0..self.ambient {
                        v[j] = f.add(v[j], f.mul(c, self.basis.get(i, j)));
                    }
                }
            }
            out.push(v);
        }
        out
    }
}

/// Complete the rows of `basis` to a basis of `F_q^n`, greedily appending
/// standard vectors in index order. Returns the n x n invertible matrix whose
/// first rows are the given basis.
fn complete_basis(s: &Subspace) -> FqMatrix {
    let field = s.basis.field.clone();
    let n = s.ambient;
    let mut rows = s.basis.rows_vec();
    let mut rank = rows.len();
    for i in 0..n {
        if rank == n {
            break;
        }
        let mut e = vec![0; n];
        e[i] = 1;
        let mut cand = rows.clone();
        cand.push(e.clone());
        if rank_of_rows(field.as_ref(), &cand, n) > rank {
            rows.push(e);
            rank += 1;
        }
    }
    FqMatrix::from_rows(field, rows, n).expect("completion has ambient length")
}

/// An invertible `A` in `GL_n(F_q)` with `{A v^T : v in T} = target`.
/// Deterministic: both bases are completed with the lowest-index standard
/// vectors first.
pub fn basis_change_matrix(t: &Subspace, target: &Subspace) -> Result<FqMatrix, LinalgError> {
    if t.ambient != target.ambient {
        return Err(LinalgError::DimensionMismatch(format!(
            "ambient {} vs {}",
            t.ambient, target.ambient
        )));
    }
    if t.dim() != target.dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "dim {} vs {}",
            t.dim(),
            target.dim()
        )));
    }
    let p = complete_basis(t);
    let q = complete_basis(target);
    // A maps the i-th completed basis vector of T to the i-th of the target:
    // A = Q^T (P^T)^{-1}.
    let a = q.transpose().mul(&p.transpose().inverse()?)?;
    debug_assert!(a.is_invertible());
    Ok(a)
}
