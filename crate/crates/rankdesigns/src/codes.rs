//! Rank-metric code objects: matrix codes over `F_q^{n x m}`, vector codes
//! over `F_{q^m}^n`, duals, weight distributions (brute force and via the
//! MacWilliams identities), puncturing and shortening, Gabidulin and MRD
//! machinery, and the external-distance / covering-radius quantities.
//!
//! Every enumeration is exact and gated by an explicit [`Budget`]; exceeding a
//! budget is a hard error, never silent sampling.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::gf::{ExtElem, ExtField, Field, FiniteField, GfError};
use crate::linalg::{kernel_of_rows, rank_of_rows, FqMatrix, LinalgError, Subspace};
use crate::qcomb::{q_binomial, q_pascal_system, BigCount, QcombError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Qcomb(#[from] QcombError),
    #[error("enumeration budget exceeded: {required} items needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("basis matrices are F_q-linearly dependent")]
    DependentBasis,
    #[error("evaluation points are not F_q-linearly independent")]
    DependentPoints,
    #[error("transform matrix is singular")]
    SingularTransform,
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("not a valid code distribution: {0}")]
    InvalidDistribution(String),
    #[error("hypothesis violated: {found} dual weights in window, at most {allowed} allowed")]
    HypothesisViolated { found: usize, allowed: usize },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

/// Hard limits for exhaustive enumerations.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Maximum number of codewords `q^k` an enumeration may visit.
    pub max_codewords: u64,
    /// Maximum ambient space size `q^{nm}` for coset-style scans.
    pub max_ambient: u64,
    /// Maximum number of subspaces a design enumeration may produce.
    pub max_subspaces: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_codewords: 1 << 24, max_ambient: 1 << 20, max_subspaces: 1 << 20 }
    }
}

impl Budget {
    fn check_codewords(&self, q: u64, k: usize) -> Result<u64, CodeError> {
        let required = (q as u128).pow(k as u32);
        if required > self.max_codewords as u128 {
            return Err(CodeError::BudgetExceeded { required, budget: self.max_codewords });
        }
        Ok(required as u64)
    }

    fn check_ambient(&self, q: u64, cells: usize) -> Result<u64, CodeError> {
        let required = (q as u128).pow(cells as u32);
        if required > self.max_ambient as u128 {
            return Err(CodeError::BudgetExceeded { required, budget: self.max_ambient });
        }
        Ok(required as u64)
    }
}

/// Exact rank weight distribution `(W_0, ..., W_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigCount>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigCount>) -> Self {
        WeightDistribution { counts }
    }

    /// `W_i`; zero beyond the stored range.
    pub fn get(&self, i: usize) -> BigCount {
        self.counts.get(i).cloned().unwrap_or_else(BigCount::zero)
    }

    pub fn counts(&self) -> &[BigCount] {
        &self.counts
    }

    pub fn total(&self) -> BigCount {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight, i.e. the minimum distance; `None` for the
    /// zero code.
    pub fn min_distance(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&i| !self.counts[i].is_zero())
    }

    /// Indices `i >= 1` with `W_i != 0`.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        (1..self.counts.len()).filter(|&i| !self.counts[i].is_zero()).collect()
    }
}

/// An `F_q`-linear subspace of `F_q^{n x m}`: the codewords are matrices, the
/// metric is the rank of the difference. The stored basis is F_q-linearly
/// independent; `k = 0` encodes the zero code.
#[derive(Debug)]
pub struct MatrixCode {
    field: Arc<Field>,
    n: usize,
    m: usize,
    basis: Vec<FqMatrix>,
    wd_cache: OnceLock<WeightDistribution>,
}

impl Clone for MatrixCode {
    fn clone(&self) -> Self {
        let wd_cache = OnceLock::new();
        if let Some(wd) = self.wd_cache.get() {
            let _ = wd_cache.set(wd.clone());
        }
        MatrixCode {
            field: self.field.clone(),
            n: self.n,
            m: self.m,
            basis: self.basis.clone(),
            wd_cache,
        }
    }
}

fn flatten(x: &FqMatrix) -> Vec<u64> {
    x.data().to_vec()
}

impl MatrixCode {
    /// Build a code from an independent basis. Fails if the matrices are
    /// F_q-linearly dependent or shapes disagree.
    pub fn new(field: Arc<Field>, n: usize, m: usize, basis: Vec<FqMatrix>) -> Result<Self, CodeError> {
        for b in &basis {
            if b.field() != &field {
                return Err(CodeError::Linalg(LinalgError::FieldMismatch));
            }
            if b.nrows() != n || b.ncols() != m {
                return Err(CodeError::Linalg(LinalgError::DimensionMismatch(format!(
                    "{}x{} basis element in an {n}x{m} code",
                    b.nrows(),
                    b.ncols()
                ))));
            }
        }
        let flat: Vec<Vec<u64>> = basis.iter().map(flatten).collect();
        if rank_of_rows(field.as_ref(), &flat, n * m) != basis.len() {
            return Err(CodeError::DependentBasis);
        }
        Ok(MatrixCode { field, n, m, basis, wd_cache: OnceLock::new() })
    }

    /// Build a code from an arbitrary spanning set, canonicalizing to the
    /// RREF basis of the flattened span.
    pub fn from_spanning(field: Arc<Field>, n: usize, m: usize, gens: &[FqMatrix]) -> Result<Self, CodeError> {
        let mut flat: Vec<Vec<u64>> = gens.iter().map(flatten).collect();
        let pivots = crate::linalg::row_reduce(field.as_ref(), &mut flat, n * m);
        flat.truncate(pivots.len());
        let basis = flat
            .into_iter()
            .map(|row| FqMatrix::new(field.clone(), n, m, row).map_err(CodeError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixCode { field, n, m, basis, wd_cache: OnceLock::new() })
    }

    /// The full ambient space `F_q^{n x m}` as a code of dimension nm.
    pub fn full_space(field: Arc<Field>, n: usize, m: usize) -> Self {
        let basis = (0..n * m)
            .map(|i| {
                let mut data = vec![0; n * m];
                data[i] = 1;
                FqMatrix::new(field.clone(), n, m, data).expect("standard basis element")
            })
            .collect();
        MatrixCode { field, n, m, basis, wd_cache: OnceLock::new() }
    }

    pub fn zero_code(field: Arc<Field>, n: usize, m: usize) -> Self {
        MatrixCode { field, n, m, basis: Vec::new(), wd_cache: OnceLock::new() }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// F_q-dimension of the code.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FqMatrix] {
        &self.basis
    }

    /// The code as a canonical subspace of the flattened ambient `F_q^{nm}`.
    /// Two codes are equal as sets iff their flattened subspaces are equal.
    pub fn as_subspace(&self) -> Subspace {
        let flat: Vec<Vec<u64>> = self.basis.iter().map(flatten).collect();
        Subspace::from_rows(self.field.clone(), self.n * self.m, flat)
    }

    pub fn same_code(&self, other: &MatrixCode) -> bool {
        self.n == other.n && self.m == other.m && self.as_subspace() == other.as_subspace()
    }

    /// The codeword with the given coefficient vector (length k).
    pub fn codeword(&self, coeffs: &[u64]) -> FqMatrix {
        let f = self.field.as_ref();
        let mut data = vec![0; self.n * self.m];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (slot, &v) in data.iter_mut().zip(b.data()) {
                *slot = f.add(*slot, f.mul(*c, v));
            }
        }
        FqMatrix::new(self.field.clone(), self.n, self.m, data).expect("codeword shape")
    }

    fn codeword_at(&self, mut idx: u64) -> FqMatrix {
        let q = self.field.order();
        let coeffs: Vec<u64> = (0..self.dim())
            .map(|_| {
                let c = idx % q;
                idx /= q;
                c
            })
            .collect();
        self.codeword(&coeffs)
    }

    /// All `q^k` codewords in lexicographic coefficient order.
    pub fn codewords(&self, budget: Budget) -> Result<Vec<FqMatrix>, CodeError> {
        let total = budget.check_codewords(self.field.order(), self.dim())?;
        Ok((0..total).map(|i| self.codeword_at(i)).collect())
    }

    /// Exact rank weight distribution by full enumeration of all `q^k`
    /// codewords. The coefficient space is partitioned across worker threads;
    /// counts are merged by summation, so the result is identical to the
    /// sequential scan.
    pub fn weight_distribution(&self, budget: Budget) -> Result<WeightDistribution, CodeError> {
        if let Some(wd) = self.wd_cache.get() {
            return Ok(wd.clone());
        }
        let total = budget.check_codewords(self.field.order(), self.dim())?;
        let n = self.n;
        let tallies = (0..total)
            .into_par_iter()
            .fold(
                || vec![0u64; n + 1],
                |mut acc, idx| {
                    acc[self.codeword_at(idx).rank()] += 1;
                    acc
                },
            )
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        let wd = WeightDistribution::new(tallies.into_iter().map(BigCount::from).collect());
        let _ = self.wd_cache.set(wd.clone());
        Ok(wd)
    }

    /// Minimum rank distance; errors on the zero code.
    pub fn min_distance(&self, budget: Budget) -> Result<usize, CodeError> {
        self.weight_distribution(budget)?
            .min_distance()
            .ok_or(CodeError::ZeroCode)
    }

    /// The dual code under the trace form `<X, Y> = Tr(X Y^T)`, which equals
    /// the entrywise pairing `sum_ij X_ij Y_ij`. Dimension `nm - k`.
    pub fn dual(&self) -> MatrixCode {
        let flat: Vec<Vec<u64>> = self.basis.iter().map(flatten).collect();
        let ker = kernel_of_rows(self.field.as_ref(), &flat, self.n * self.m);
        let gens: Vec<FqMatrix> = ker
            .into_iter()
            .map(|row| FqMatrix::new(self.field.clone(), self.n, self.m, row).expect("kernel shape"))
            .collect();
        MatrixCode::from_spanning(self.field.clone(), self.n, self.m, &gens)
            .expect("kernel basis spans a code")
    }

    /// `A C = {A X : X in C}` for invertible `A`.
    pub fn left_multiply(&self, a: &FqMatrix) -> Result<MatrixCode, CodeError> {
        if !a.is_invertible() {
            return Err(CodeError::SingularTransform);
        }
        let gens: Vec<FqMatrix> = self
            .basis
            .iter()
            .map(|x| a.mul(x))
            .collect::<Result<_, _>>()?;
        MatrixCode::from_spanning(self.field.clone(), self.n, self.m, &gens)
    }

    /// Punctured code `Pi(C, A, s)`: apply `A` on the left and delete the
    /// first `s` rows of every codeword.
    pub fn puncture(&self, a: &FqMatrix, s: usize) -> Result<MatrixCode, CodeError> {
        self.check_transform(a, s)?;
        let gens: Vec<FqMatrix> = self
            .basis
            .iter()
            .map(|x| Ok(drop_rows(&a.mul(x)?, s)))
            .collect::<Result<_, CodeError>>()?;
        MatrixCode::from_spanning(self.field.clone(), self.n - s, self.m, &gens)
    }

    /// Shortened code `Sigma(C, A, s)`: the codewords of `A C` whose first `s`
    /// rows vanish, projected onto the remaining rows.
    pub fn shorten(&self, a: &FqMatrix, s: usize) -> Result<MatrixCode, CodeError> {
        self.check_transform(a, s)?;
        let transformed: Vec<FqMatrix> = self
            .basis
            .iter()
            .map(|x| a.mul(x))
            .collect::<Result<_, _>>()?;
        // coefficient vectors whose combination has zero first s rows
        let constraint_rows: Vec<Vec<u64>> = (0..s * self.m)
            .map(|cell| transformed.iter().map(|t| t.data()[cell]).collect())
            .collect();
        let coeff_kernel = kernel_of_rows(self.field.as_ref(), &constraint_rows, self.dim());
        let f = self.field.as_ref();
        let gens: Vec<FqMatrix> = coeff_kernel
            .iter()
            .map(|coeffs| {
                let mut data = vec![0; self.n * self.m];
                for (c, t) in coeffs.iter().zip(&transformed) {
                    if *c == 0 {
                        continue;
                    }
                    for (slot, &v) in data.iter_mut().zip(t.data()) {
                        *slot = f.add(*slot, f.mul(*c, v));
                    }
                }
                drop_rows(
                    &FqMatrix::new(self.field.clone(), self.n, self.m, data).expect("codeword shape"),
                    s,
                )
            })
            .collect();
        MatrixCode::from_spanning(self.field.clone(), self.n - s, self.m, &gens)
    }

    fn check_transform(&self, a: &FqMatrix, s: usize) -> Result<(), CodeError> {
        if a.nrows() != self.n || a.ncols() != self.n {
            return Err(CodeError::Linalg(LinalgError::DimensionMismatch(format!(
                "{}x{} transform for n = {}",
                a.nrows(),
                a.ncols(),
                self.n
            ))));
        }
        if !a.is_invertible() {
            return Err(CodeError::SingularTransform);
        }
        if s == 0 || s >= self.n {
            return Err(CodeError::BadParams(format!("s = {s} outside 1..{}", self.n - 1)));
        }
        Ok(())
    }

    /// `C(U)` (the subcode of codewords with support inside `U`) and
    /// `C_=(U)` (the list of codewords with support exactly `U`).
    pub fn codewords_with_support_in(
        &self,
        u: &Subspace,
        budget: Budget,
    ) -> Result<(MatrixCode, Vec<FqMatrix>), CodeError> {
        if u.ambient() != self.n {
            return Err(CodeError::Linalg(LinalgError::DimensionMismatch(format!(
                "support ambient {} for n = {}",
                u.ambient(),
                self.n
            ))));
        }
        let mut inside = Vec::new();
        let mut exact = Vec::new();
        for x in self.codewords(budget)? {
            let supp = x.support();
            if u.contains(&supp)? {
                if supp == *u {
                    exact.push(x.clone());
                }
                inside.push(x);
            }
        }
        let sub = MatrixCode::from_spanning(self.field.clone(), self.n, self.m, &inside)?;
        Ok((sub, exact))
    }

    /// External distance `tau(C)`: the number of nonzero weights of the dual,
    /// computed through the MacWilliams transform of the primal distribution.
    pub fn external_distance(&self, budget: Budget) -> Result<usize, CodeError> {
        let w = self.weight_distribution(budget)?;
        let dual_w = macwilliams_transform(&w, self.n, self.m, self.dim(), self.field.order())?;
        Ok(dual_w.nonzero_weights().len())
    }

    /// Covering radius `rho(C)`: the largest rank distance from any ambient
    /// matrix to the code, by full coset enumeration. Desk scale only.
    pub fn covering_radius(&self, budget: Budget) -> Result<usize, CodeError> {
        let ambient_total = budget.check_ambient(self.field.order(), self.n * self.m)?;
        let codewords = self.codewords(budget)?;
        let q = self.field.order();
        let rho = (0..ambient_total)
            .into_par_iter()
            .map(|idx| {
                let mut rest = idx;
                let data: Vec<u64> = (0..self.n * self.m)
                    .map(|_| {
                        let v = rest % q;
                        rest /= q;
                        v
                    })
                    .collect();
                let y = FqMatrix::new(self.field.clone(), self.n, self.m, data).expect("ambient shape");
                codewords
                    .iter()
                    .map(|x| y.sub(x).expect("same shape").rank())
                    .min()
                    .expect("code is nonempty")
            })
            .max()
            .expect("ambient space is nonempty");
        Ok(rho)
    }

    /// Whether the code meets the rank-metric Singleton bound
    /// `k = max(n,m) (min(n,m) - d + 1)`. When `m >= n` the two equivalent
    /// characterizations (dual distance sum and projection surjectivity) are
    /// cross-checked and any disagreement is an internal error.
    pub fn is_mrd(&self, budget: Budget) -> Result<bool, CodeError> {
        let d = self.min_distance(budget)?;
        let (mx, mn) = (self.n.max(self.m), self.n.min(self.m));
        let singleton = self.dim() == mx * (mn - d + 1);
        if self.m >= self.n {
            // d* of the zero dual (full-space C) is taken as n + 1 so the
            // criterion d + d* = n + 2 degenerates correctly.
            let dual = self.dual();
            let d_star = if dual.dim() == 0 { self.n + 1 } else { dual.min_distance(budget)? };
            let by_distance = d + d_star == self.n + 2;
            let proj_rows = self.n - d + 1;
            let projected: Vec<Vec<u64>> = self
                .basis
                .iter()
                .map(|x| flatten(&drop_rows(x, self.n - proj_rows)))
                .collect();
            let by_projection =
                rank_of_rows(self.field.as_ref(), &projected, proj_rows * self.m) == proj_rows * self.m;
            if by_distance != singleton || by_projection != singleton {
                return Err(CodeError::Inconsistency(format!(
                    "MRD criteria disagree: singleton={singleton} distances={by_distance} projection={by_projection}"
                )));
            }
        }
        Ok(singleton)
    }

    /// Whether `d(C) + d(C*) = min(n, m) + 1`.
    pub fn is_dually_qmrd(&self, budget: Budget) -> Result<bool, CodeError> {
        let d = self.min_distance(budget)?;
        let d_star = self.dual().min_distance(budget)?;
        Ok(d + d_star == self.n.min(self.m) + 1)
    }
}

/// Delete the first `s` rows of a matrix.
fn drop_rows(x: &FqMatrix, s: usize) -> FqMatrix {
    let rows: Vec<Vec<u64>> = (s..x.nrows()).map(|r| x.row(r).to_vec()).collect();
    FqMatrix::from_rows(x.field().clone(), rows, x.ncols()).expect("row projection shape")
}

/// Append a zero column to every codeword: `{z(M) : M in D}` inside
/// `F_q^{n x (m+1)}`. Ranks and supports are preserved.
pub fn append_zero_column_code(d: &MatrixCode) -> MatrixCode {
    let gens: Vec<FqMatrix> = d
        .basis()
        .iter()
        .map(|x| {
            let rows: Vec<Vec<u64>> = (0..x.nrows())
                .map(|r| {
                    let mut row = x.row(r).to_vec();
                    row.push(0);
                    row
                })
                .collect();
            FqMatrix::from_rows(d.field().clone(), rows, x.ncols() + 1).expect("padded shape")
        })
        .collect();
    MatrixCode::new(d.field().clone(), d.n(), d.m() + 1, gens).expect("padding preserves independence")
}

/// The MacWilliams transform for matrix codes: the unique dual distribution
/// satisfying, for each `l` in `0..=n`,
///
/// `sum_i W*_i [n-i choose l]_q = q^{m(n-l)-k} sum_{i<=l} W_i [n-i choose l-i]_q`.
///
/// Solved exactly over the rationals on the full index set; a non-integral
/// solution means `w` is not the distribution of any `[n x m, k]` code.
pub fn macwilliams_transform(
    w: &WeightDistribution,
    n: usize,
    m: usize,
    k: usize,
    q: u64,
) -> Result<WeightDistribution, CodeError> {
    let rhs: Vec<BigCount> = (0..=n as u64)
        .map(|l| {
            let mut sum = BigRational::zero();
            for i in 0..=l {
                let w_i = BigRational::from_integer(BigInt::from(w.get(i as usize)));
                let b = BigRational::from_integer(BigInt::from(q_binomial(n as u64 - i, l - i, q)));
                sum += w_i * b;
            }
            // q^{m(n-l)-k}, which may be a proper fraction for l near n
            let scale = BigRational::new(
                BigInt::from(q).pow((m * (n - l as usize)) as u32),
                BigInt::from(q).pow(k as u32),
            );
            let v = sum * scale;
            if !v.is_integer() || v.is_negative() {
                return Err(CodeError::InvalidDistribution(format!(
                    "MacWilliams right-hand side {v} at l = {l} is not a nonnegative integer"
                )));
            }
            Ok(v.to_integer().to_biguint().expect("nonnegative"))
        })
        .collect::<Result<_, _>>()?;
    let weights: Vec<u64> = (0..=n as u64).collect();
    let counts = q_pascal_system(&weights, n as u64, q, &rhs).map_err(|e| match e {
        QcombError::NonIntegerSolution(v, i) => {
            CodeError::InvalidDistribution(format!("dual count {v} at weight {i}"))
        }
        other => CodeError::from(other),
    })?;
    Ok(WeightDistribution::new(counts))
}

/// The weight distribution of any puncturing `Pi(C, A, t)`, determined by the
/// code parameters and the set of nonzero dual weights alone, hence
/// independent of `A`. Requires `t < d` and at most `d - t` dual weights in
/// the window `[1, n-t]`.
pub fn punctured_wd_from_dual_weights(
    n: usize,
    m: usize,
    k: usize,
    d: usize,
    q: u64,
    t: usize,
    dual_weights: &BTreeSet<usize>,
) -> Result<WeightDistribution, CodeError> {
    if t >= d {
        return Err(CodeError::BadParams(format!("t = {t} must satisfy t < d = {d}")));
    }
    let n_p = n - t;
    let window: Vec<u64> = dual_weights
        .iter()
        .copied()
        .filter(|&i| i >= 1 && i <= n_p)
        .map(|i| i as u64)
        .collect();
    let r = window.len();
    if r > d - t {
        return Err(CodeError::HypothesisViolated { found: r, allowed: d - t });
    }
    // r equations: sum_j W_{i_j}(Pi*) [n'-i_j choose l]_q = (q^{m(n'-l)-k} - 1) [n' choose l]_q
    let rhs: Vec<BigCount> = (0..r as u64)
        .map(|l| {
            let scale = BigRational::new(
                BigInt::from(q).pow((m * (n_p - l as usize)) as u32),
                BigInt::from(q).pow(k as u32),
            ) - BigRational::one();
            let v = scale * BigRational::from_integer(BigInt::from(q_binomial(n_p as u64, l, q)));
            if !v.is_integer() || v.is_negative() {
                return Err(CodeError::InvalidDistribution(format!(
                    "punctured system right-hand side {v} at l = {l}"
                )));
            }
            Ok(v.to_integer().to_biguint().expect("nonnegative"))
        })
        .collect::<Result<_, _>>()?;
    let solved = q_pascal_system(&window, n_p as u64, q, &rhs)?;
    let mut dual_counts = vec![BigCount::zero(); n_p + 1];
    dual_counts[0] = BigCount::one();
    for (i, c) in window.iter().zip(solved) {
        dual_counts[*i as usize] = c;
    }
    // one MacWilliams transform back: Pi* has dimension n'm - k since the
    // projection is injective for t < d
    let dual_wd = WeightDistribution::new(dual_counts);
    macwilliams_transform(&dual_wd, n_p, m, n_p * m - k, q)
}

/// An `F_{q^m}`-linear subspace of `F_{q^m}^n`, carried by a full-rank
/// generator matrix. Excludes the zero code and the full space.
#[derive(Debug, Clone)]
pub struct VectorCode {
    ext: Arc<ExtField>,
    n: usize,
    k: usize,
    generator: Vec<ExtElem>, // k x n row-major
}

impl VectorCode {
    pub fn new(ext: Arc<ExtField>, n: usize, generator_rows: Vec<Vec<ExtElem>>) -> Result<Self, CodeError> {
        let k = generator_rows.len();
        if k == 0 || k >= n {
            return Err(CodeError::BadParams(format!("vector code dimension {k} outside 1..{n}")));
        }
        let mut generator = Vec::with_capacity(k * n);
        for row in &generator_rows {
            if row.len() != n {
                return Err(CodeError::BadParams(format!("generator row of length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| !ext.contains(v)) {
                return Err(CodeError::Gf(GfError::OutOfRange(bad, ext.order())));
            }
            generator.extend_from_slice(row);
        }
        if rank_of_rows(ext.as_ref(), &generator_rows, n) != k {
            return Err(CodeError::DependentBasis);
        }
        Ok(VectorCode { ext, n, k, generator })
    }

    pub fn ext(&self) -> &Arc<ExtField> {
        &self.ext
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `F_{q^m}`-dimension.
    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn generator_rows(&self) -> Vec<Vec<ExtElem>> {
        (0..self.k).map(|r| self.generator[r * self.n..(r + 1) * self.n].to_vec()).collect()
    }

    /// The dual with respect to the standard inner product of `F_{q^m}^n`,
    /// of dimension `n - k`.
    pub fn dual(&self) -> VectorCode {
        let rows = self.generator_rows();
        let ker = kernel_of_rows(self.ext.as_ref(), &rows, self.n);
        VectorCode::new(self.ext.clone(), self.n, ker).expect("dual generator has full rank")
    }

    /// Expand to the matrix code `Gamma(C)` with respect to the F_q-basis
    /// `gamma` of `F_{q^m}`: codeword `x` becomes the n x m matrix whose i-th
    /// row is the coordinate vector of `x_i` in `gamma`. The result has
    /// F_q-dimension `m k`.
    pub fn expand(&self, gamma: &[ExtElem]) -> Result<MatrixCode, CodeError> {
        let ext = self.ext.as_ref();
        if !ext.is_basis(gamma) {
            return Err(CodeError::Gf(GfError::NotABasis));
        }
        let base = ext.base().clone();
        let m = ext.m() as usize;
        // change of basis from polynomial coordinates to gamma coordinates
        let gamma_rows: Vec<Vec<u64>> = gamma.iter().map(|&g| ext.coords(g)).collect();
        let gamma_mat = FqMatrix::from_rows(base.clone(), gamma_rows, m)?;
        let to_gamma = gamma_mat.inverse()?;
        let expand_word = |x: &[ExtElem]| -> FqMatrix {
            let rows: Vec<Vec<u64>> = x.iter().map(|&c| ext.coords(c)).collect();
            let poly = FqMatrix::from_rows(base.clone(), rows, m).expect("coordinate shape");
            poly.mul(&to_gamma).expect("square transform")
        };
        let mut basis = Vec::with_capacity(m * self.k);
        for row in self.generator_rows() {
            for &g in gamma {
                let scaled: Vec<ExtElem> = row.iter().map(|&c| ext.mul(g, c)).collect();
                basis.push(expand_word(&scaled));
            }
        }
        MatrixCode::new(base, self.n, m, basis)
    }
}

/// A Gabidulin code: generator `G_{ij} = g_j^{q^i}` for F_q-linearly
/// independent evaluation points, an `F_{q^m}`-[n, k, n-k+1] MRD code.
pub fn gabidulin(
    ext: Arc<ExtField>,
    n: usize,
    k: usize,
    points: &[ExtElem],
) -> Result<VectorCode, CodeError> {
    let m = ext.m() as usize;
    if points.len() != n || n > m {
        return Err(CodeError::BadParams(format!(
            "need n <= m with n evaluation points, got n = {n}, m = {m}"
        )));
    }
    if k == 0 || k >= n {
        return Err(CodeError::BadParams(format!("dimension {k} outside 1..{n}")));
    }
    let coords: Vec<Vec<u64>> = points.iter().map(|&g| ext.coords(g)).collect();
    if rank_of_rows(ext.base().as_ref(), &coords, m) != n {
        return Err(CodeError::DependentPoints);
    }
    let q = ext.base().order();
    let rows: Vec<Vec<ExtElem>> = (0..k)
        .map(|i| {
            points
                .iter()
                .map(|&g| ext.pow(g, q.pow(i as u32)))
                .collect()
        })
        .collect();
    VectorCode::new(ext, n, rows)
}

/// Random [n x m, k] code over `field`, by drawing matrices until the span
/// has dimension k. Test helper.
#[cfg(test)]
pub(crate) fn random_code<R: rand::Rng>(
    field: Arc<Field>,
    n: usize,
    m: usize,
    k: usize,
    rng: &mut R,
) -> MatrixCode {
    loop {
        let gens: Vec<FqMatrix> = (0..k)
            .map(|_| FqMatrix::random(field.clone(), n, m, rng))
            .collect();
        let code = MatrixCode::from_spanning(field.clone(), n, m, &gens).unwrap();
        if code.dim() == k {
            return code;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis_change_matrix;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn f2() -> Arc<Field> {
        Arc::new(Field::new(2, 1).unwrap())
    }

    fn f16() -> Arc<ExtField> {
        Arc::new(ExtField::new(f2(), 4).unwrap())
    }

    fn counts(v: &[u64]) -> Vec<BigCount> {
        v.iter().map(|&x| BigCount::from(x)).collect()
    }

    #[test]
    fn full_space_distribution_2x2() {
        let c = MatrixCode::full_space(f2(), 2, 2);
        let wd = c.weight_distribution(Budget::default()).unwrap();
        assert_eq!(wd.counts(), &counts(&[1, 9, 6]));
        assert_eq!(wd.total(), BigCount::from(16u32));
    }

    #[test]
    fn dual_dimensions_and_biduality() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..20 {
            let c = random_code(f2(), 3, 3, 4, &mut rng);
            let d = c.dual();
            assert_eq!(c.dim() + d.dim(), 9);
            assert!(d.dual().same_code(&c));
        }
    }

    #[test]
    fn macwilliams_full_space_and_roundtrip() {
        let c = MatrixCode::full_space(f2(), 2, 2);
        let wd = c.weight_distribution(Budget::default()).unwrap();
        let dual_wd = macwilliams_transform(&wd, 2, 2, 4, 2).unwrap();
        assert_eq!(dual_wd.counts(), &counts(&[1, 0, 0]));
        let back = macwilliams_transform(&dual_wd, 2, 2, 0, 2).unwrap();
        assert_eq!(back, wd);
    }

    #[test]
    fn macwilliams_matches_brute_force_dual() {
        let mut rng = StdRng::seed_from_u64(29);
        let budget = Budget::default();
        for k in 1..=5 {
            for _ in 0..5 {
                let c = random_code(f2(), 3, 3, k, &mut rng);
                let got = macwilliams_transform(&c.weight_distribution(budget).unwrap(), 3, 3, k, 2).unwrap();
                let want = c.dual().weight_distribution(budget).unwrap();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn puncture_examples() {
        let mut rng = StdRng::seed_from_u64(31);
        let budget = Budget::default();
        let c = random_code(f2(), 3, 3, 3, &mut rng);

        // A = I: puncturing is row deletion on a spanning set
        let id = FqMatrix::identity(f2(), 3);
        let p = c.puncture(&id, 1).unwrap();
        let deleted: Vec<FqMatrix> = c.basis().iter().map(|x| drop_rows(x, 1)).collect();
        let direct = MatrixCode::from_spanning(f2(), 2, 3, &deleted).unwrap();
        assert!(p.same_code(&direct));

        // rank drops by at most s on every codeword
        let a = FqMatrix::random_invertible(f2(), 3, &mut rng);
        for x in c.codewords(budget).unwrap() {
            let px = drop_rows(&a.mul(&x).unwrap(), 1);
            assert!(px.rank() + 1 >= x.rank());
        }
    }

    #[test]
    fn puncture_preserves_dimension_below_distance() {
        let ext = f16();
        let basis = ext.polynomial_basis();
        let g = gabidulin(ext.clone(), 4, 2, &basis).unwrap();
        let c = g.expand(&basis).unwrap();
        assert_eq!(c.min_distance(Budget::default()).unwrap(), 3);
        let mut rng = StdRng::seed_from_u64(37);
        for t in [1, 2] {
            let a = FqMatrix::random_invertible(f2(), 4, &mut rng);
            assert_eq!(c.puncture(&a, t).unwrap().dim(), c.dim());
        }
    }

    #[test]
    fn duality_lemma_small_codes() {
        // Pi(C,A,s)* = Sigma(C*,(A^T)^{-1},s)
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..20 {
            let k = rng.gen_range(1..=6);
            let c = random_code(f2(), 3, 3, k, &mut rng);
            let a = FqMatrix::random_invertible(f2(), 3, &mut rng);
            let s = rng.gen_range(1..=2);
            let lhs = c.puncture(&a, s).unwrap().dual();
            let at_inv = a.transpose().inverse().unwrap();
            let rhs = c.dual().shorten(&at_inv, s).unwrap();
            assert!(lhs.same_code(&rhs));

            // (AC)* = (A^T)^{-1} C*
            let lhs2 = c.left_multiply(&a).unwrap().dual();
            let rhs2 = c.dual().left_multiply(&at_inv).unwrap();
            assert!(lhs2.same_code(&rhs2));
        }
    }

    #[test]
    fn shorten_zero_code() {
        let z = MatrixCode::zero_code(f2(), 3, 3);
        let id = FqMatrix::identity(f2(), 3);
        assert_eq!(z.shorten(&id, 1).unwrap().dim(), 0);
    }

    #[test]
    fn gabidulin_is_mrd() {
        let ext = f16();
        let basis = ext.polynomial_basis();
        let budget = Budget::default();
        let g = gabidulin(ext.clone(), 4, 2, &basis).unwrap();
        let c = g.expand(&basis).unwrap();
        assert_eq!(c.dim(), 8);
        assert!(c.is_mrd(budget).unwrap());
        // W_3 = [4 choose 3]_2 (2^4 - 1) = 225
        let wd = c.weight_distribution(budget).unwrap();
        assert_eq!(wd.get(3), BigCount::from(225u32));

        // k = n-1 gives minimum distance 2
        let g2 = gabidulin(ext.clone(), 4, 3, &basis).unwrap();
        let c2 = g2.expand(&basis).unwrap();
        assert_eq!(c2.min_distance(budget).unwrap(), 2);

        let bad = gabidulin(ext, 4, 2, &[1, 2, 3, 4]);
        assert!(matches!(bad, Err(CodeError::DependentPoints)));
    }

    #[test]
    fn rank_multiset_independent_of_expansion_basis() {
        let ext = f16();
        let poly = ext.polynomial_basis();
        let g = gabidulin(ext.clone(), 4, 2, &poly).unwrap();
        let budget = Budget::default();
        // a second basis: 1+t, t, t^2, t^3
        let other = vec![3, 2, 4, 8];
        assert!(ext.is_basis(&other));
        let w1 = g.expand(&poly).unwrap().weight_distribution(budget).unwrap();
        let w2 = g.expand(&other).unwrap().weight_distribution(budget).unwrap();
        assert_eq!(w1, w2);
    }

    #[test]
    fn scalar_multiples_share_support() {
        let ext = f16();
        let poly = ext.polynomial_basis();
        let g = gabidulin(ext.clone(), 4, 2, &poly).unwrap();
        let rows = g.generator_rows();
        let x = &rows[0];
        let expand_one = |x: &[ExtElem]| {
            let coords: Vec<Vec<u64>> = x.iter().map(|&c| ext.coords(c)).collect();
            FqMatrix::from_rows(f2(), coords, 4).unwrap()
        };
        let base_supp = expand_one(x).support();
        for alpha in 1..16 {
            let scaled: Vec<ExtElem> = x.iter().map(|&c| ext.mul(alpha, c)).collect();
            assert_eq!(expand_one(&scaled).support(), base_supp);
        }
    }

    #[test]
    fn trace_dual_expansion_lemma() {
        // Gamma(C)* = Gammabar(C^perp) for the [4,2] Gabidulin code
        let ext = f16();
        let poly = ext.polynomial_basis();
        let g = gabidulin(ext.clone(), 4, 2, &poly).unwrap();
        let lhs = g.expand(&poly).unwrap().dual();
        let dual_basis = ext.trace_dual_basis(&poly).unwrap();
        let rhs = g.dual().expand(&dual_basis).unwrap();
        assert!(lhs.same_code(&rhs));
    }

    #[test]
    fn vector_dual_orthogonality() {
        let ext = f16();
        let poly = ext.polynomial_basis();
        let g = gabidulin(ext.clone(), 4, 2, &poly).unwrap();
        let d = g.dual();
        assert_eq!(g.dim() + d.dim(), 4);
        for grow in g.generator_rows() {
            for drow in d.generator_rows() {
                let dot = grow
                    .iter()
                    .zip(&drow)
                    .fold(0, |acc, (&a, &b)| ext.add(acc, ext.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn punctured_wd_matches_brute_force() {
        let ext = f16();
        let poly = ext.polynomial_basis();
        let g = gabidulin(ext.clone(), 4, 2, &poly).unwrap();
        let c = g.expand(&poly).unwrap();
        let budget = Budget::default();
        let dual_wd = c.dual().weight_distribution(budget).unwrap();
        let dual_weights: BTreeSet<usize> = dual_wd.nonzero_weights().into_iter().collect();
        let d = c.min_distance(budget).unwrap();
        let mut rng = StdRng::seed_from_u64(43);
        for t in [1, 2] {
            let predicted =
                punctured_wd_from_dual_weights(4, 4, c.dim(), d, 2, t, &dual_weights).unwrap();
            let a = FqMatrix::random_invertible(f2(), 4, &mut rng);
            let actual = c.puncture(&a, t).unwrap().weight_distribution(budget).unwrap();
            assert_eq!(predicted, actual);
        }
    }

    #[test]
    fn punctured_wd_empty_window_is_full_space() {
        // r = 0: the punctured dual is the zero code, the puncturing is the
        // full space
        let wd = punctured_wd_from_dual_weights(3, 3, 6, 2, 2, 1, &BTreeSet::new()).unwrap();
        let full = MatrixCode::full_space(f2(), 2, 3);
        assert_eq!(wd, full.weight_distribution(Budget::default()).unwrap());
    }

    #[test]
    fn support_subcode_examples() {
        let ext = f16();
        let poly = ext.polynomial_basis();
        let c = gabidulin(ext.clone(), 4, 2, &poly).unwrap().expand(&poly).unwrap();
        let budget = Budget::default();
        let zero = Subspace::zero(f2(), 4);
        let (sub, exact) = c.codewords_with_support_in(&zero, budget).unwrap();
        assert_eq!(sub.dim(), 0);
        assert_eq!(exact.len(), 1); // only the zero codeword has zero support

        // MRD with dim U = d: |C(U)| = q^m
        let u = Subspace::from_generators(
            &FqMatrix::from_rows(
                f2(),
                vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]],
                4,
            )
            .unwrap(),
        );
        let (sub, _) = c.codewords_with_support_in(&u, budget).unwrap();
        assert_eq!(sub.dim(), 4); // q^m = 2^4 elements
    }

    #[test]
    fn support_cardinality_lemma_uses_orthogonal_complement() {
        // |C(U)| = q^{k - m(n-u)} |C*(U^perp)| for m >= n; the variant with
        // C*(U) in place of C*(U^perp) fails already on the zero code.
        let mut rng = StdRng::seed_from_u64(47);
        let budget = Budget::default();
        for _ in 0..10 {
            let k = rng.gen_range(1..=6);
            let c = random_code(f2(), 3, 3, k, &mut rng);
            let gens = FqMatrix::random(f2(), 2, 3, &mut rng);
            let u = Subspace::from_generators(&gens);
            let (cu, _) = c.codewords_with_support_in(&u, budget).unwrap();
            let (dual_perp, _) = c
                .dual()
                .codewords_with_support_in(&u.orthogonal_complement(), budget)
                .unwrap();
            // compare q^{m(n-u)} |C(U)| with q^k |C*(U^perp)|
            let lhs = 3 * (3 - u.dim()) + cu.dim();
            let rhs = k + dual_perp.dim();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn zero_column_code_properties() {
        let ext8 = Arc::new(ExtField::new(f2(), 3).unwrap());
        let poly = ext8.polynomial_basis();
        // transpose of an expanded [2,1,2] Gabidulin: MRD [3x2, 3, 2]
        let g = gabidulin(ext8.clone(), 2, 1, &poly[..2]).unwrap();
        let expanded = g.expand(&poly).unwrap();
        let transposed: Vec<FqMatrix> = expanded.basis().iter().map(|x| x.transpose()).collect();
        let d_code = MatrixCode::new(f2(), 3, 2, transposed).unwrap();
        let budget = Budget::default();
        assert_eq!(d_code.min_distance(budget).unwrap(), 2);
        assert!(d_code.is_mrd(budget).unwrap());

        let c = append_zero_column_code(&d_code);
        assert_eq!(
            c.weight_distribution(budget).unwrap(),
            d_code.weight_distribution(budget).unwrap()
        );
        assert_eq!(c.dual().min_distance(budget).unwrap(), 1);
        assert!(!c.is_mrd(budget).unwrap());
        assert!(!c.is_dually_qmrd(budget).unwrap());
    }

    #[test]
    fn mrd_trivial_cases() {
        let budget = Budget::default();
        let full = MatrixCode::full_space(f2(), 2, 2);
        assert!(full.is_mrd(budget).unwrap());
        assert!(!full.is_dually_qmrd(budget).is_ok_and(|b| b)); // dual is the zero code
    }

    #[test]
    fn external_distance_and_covering_radius() {
        let budget = Budget::default();
        let full = MatrixCode::full_space(f2(), 2, 2);
        assert_eq!(full.external_distance(budget).unwrap(), 0);
        assert_eq!(full.covering_radius(budget).unwrap(), 0);

        let mut rng = StdRng::seed_from_u64(53);
        for _ in 0..10 {
            let k = rng.gen_range(1..=5);
            let c = random_code(f2(), 3, 3, k, &mut rng);
            let rho = c.covering_radius(budget).unwrap();
            let tau = c.external_distance(budget).unwrap();
            assert!(rho <= tau, "rho = {rho} > tau = {tau}");
        }
    }

    #[test]
    fn budget_errors() {
        let tight = Budget { max_codewords: 4, max_ambient: 4, ..Budget::default() };
        let c = MatrixCode::full_space(f2(), 2, 2);
        assert!(matches!(
            c.weight_distribution(tight),
            Err(CodeError::BudgetExceeded { required: 16, .. })
        ));
        assert!(matches!(
            c.covering_radius(tight),
            Err(CodeError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn basis_change_roundtrip_via_puncture() {
        // smoke test that basis_change_matrix composes with puncture
        let f = f2();
        let t = Subspace::from_generators(&FqMatrix::from_rows(f.clone(), vec![vec![1, 1, 0]], 3).unwrap());
        let e = Subspace::from_generators(&FqMatrix::from_rows(f.clone(), vec![vec![1, 0, 0]], 3).unwrap());
        let a = basis_change_matrix(&t, &e).unwrap();
        let mut rng = StdRng::seed_from_u64(59);
        let c = random_code(f, 3, 2, 3, &mut rng);
        let p = c.puncture(&a, 1).unwrap();
        assert_eq!(p.n(), 2);
    }
}
