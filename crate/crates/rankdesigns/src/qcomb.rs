//! Exact q-analog combinatorics: Gaussian binomial coefficients and the
//! q-Pascal linear systems behind the MacWilliams solver.
//!
//! Everything here is exact. Linear systems are solved over the rationals and
//! the solutions asserted integral; a fractional or negative value always
//! signals an upstream error and is surfaced, never rounded.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact nonnegative count. Weight distribution entries, design parameters
/// and Gaussian coefficients are all of this type.
pub type BigCount = BigUint;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QcombError {
    #[error("inconsistent weight system: solution {0} at index {1} is not a nonnegative integer")]
    NonIntegerSolution(String, usize),
    #[error("singular coefficient system (weights not distinct?)")]
    SingularSystem,
    #[error("weights must be distinct and in [0, n]")]
    BadWeights,
}

/// `q^e` as an exact big integer.
pub fn q_pow(q: u64, e: u64) -> BigCount {
    BigCount::from(q).pow(e as u32)
}

/// The Gaussian coefficient `[N choose M]_q`: the number of M-dimensional
/// subspaces of an N-dimensional space over `F_q`, via the product formula
/// `prod_{i=0}^{M-1} (q^N - q^i) / (q^M - q^i)`. Zero when `M > N`.
pub fn q_binomial(n: u64, m: u64, q: u64) -> BigCount {
    if m > n {
        return BigCount::zero();
    }
    let mut num = BigCount::one();
    let mut den = BigCount::one();
    for i in 0..m {
        num *= q_pow(q, n) - q_pow(q, i);
        den *= q_pow(q, m) - q_pow(q, i);
    }
    let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(rem.is_zero(), "Gaussian coefficient is always integral");
    quot
}

fn rational(c: &BigCount) -> BigRational {
    BigRational::from_integer(BigInt::from(c.clone()))
}

fn to_count(r: &BigRational) -> Option<BigCount> {
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    r.to_integer().to_biguint()
}

/// Solve a square system `M x = rhs` exactly over the rationals and return the
/// integral solution. Exposed for the q-Pascal systems; elimination with full
/// pivot search, no pivoting heuristics needed at these sizes.
fn solve_rational(
    mut m: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
) -> Result<Vec<BigCount>, QcombError> {
    let n = rhs.len();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Err(QcombError::SingularSystem);
        };
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for c in col..n {
            m[col][c] = &m[col][c] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..n {
                    m[r][c] = &m[r][c] - &factor * &m[col][c];
                }
                rhs[r] = &rhs[r] - &factor * &rhs[col];
            }
        }
    }
    rhs.iter()
        .enumerate()
        .map(|(i, r)| to_count(r).ok_or_else(|| QcombError::NonIntegerSolution(r.to_string(), i)))
        .collect()
}

/// Solve the r x r q-Pascal system with unknowns `W_{i_1}, ..., W_{i_r}`
/// attached to the distinct weights `i_1 < ... < i_r` in `[0, n]`:
///
/// `sum_j W_{i_j} [n - i_j choose l]_q = rhs_l` for `l = 0, ..., r-1`.
///
/// The coefficient minor is nonzero whenever the `n - i_j` are distinct, so
/// the system always has a unique rational solution; it is an error for that
/// solution not to be a nonnegative integer vector.
pub fn q_pascal_system(
    weights: &[u64],
    n: u64,
    q: u64,
    rhs: &[BigCount],
) -> Result<Vec<BigCount>, QcombError> {
    let r = weights.len();
    if rhs.len() != r {
        return Err(QcombError::BadWeights);
    }
    if weights.windows(2).any(|w| w[0] >= w[1]) || weights.iter().any(|&i| i > n) {
        return Err(QcombError::BadWeights);
    }
    let m: Vec<Vec<BigRational>> = (0..r as u64)
        .map(|l| {
            weights
                .iter()
                .map(|&i| rational(&q_binomial(n - i, l, q)))
                .collect()
        })
        .collect();
    let rhs = rhs.iter().map(rational).collect();
    solve_rational(m, rhs)
}

/// Determinant of `([r_i choose j-1]_q)_{1 <= i, j <= l}` for the given row
/// parameters, computed by exact elimination. Used to cross-check the minor
/// product identity in tests.
pub fn q_pascal_minor_det(row_params: &[u64], q: u64) -> BigInt {
    let l = row_params.len();
    let mut m: Vec<Vec<BigRational>> = row_params
        .iter()
        .map(|&ri| (0..l as u64).map(|j| rational(&q_binomial(ri, j, q))).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..l {
        let Some(pivot) = (col..l).find(|&r| !m[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].recip();
        for r in col + 1..l {
            if !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for c in col..l {
                    m[r][c] = &m[r][c] - &factor * &m[col][c];
                }
            }
        }
    }
    debug_assert!(det.is_integer());
    det.to_integer()
}
