//! Canonical example codes: the spread construction, Gabidulin instances and
//! the zero-column counterexample. Shared by the unit tests, the runnable
//! examples and the `gen-examples` CLI command.

use std::sync::Arc;

use crate::codes::{append_zero_column_code, gabidulin, CodeError, MatrixCode, VectorCode};
use crate::gf::{ExtElem, ExtField, Field, FiniteField};

/// The spread construction for `q = 2` and `m = 2s` (s >= 2): the
/// `F_{2^m}`-[m, m-2, 2] vector code whose parity check matrix has rows
/// `(g_1, ..., g_m)` and `(g_1^{2^s}, ..., g_m^{2^s})` over the polynomial
/// basis `g` of `F_{2^m}`. Its dual has nonzero weights `{s, 2s}` only, and
/// the rank-s supports of the dual form a 1-(m, s, 1) spread.
///
/// Returns the code together with the expansion basis. For `s = 1` the
/// construction degenerates to the zero code and is rejected; see
/// [`spread_dual_expansion`] for the object that remains meaningful there.
pub fn spread_code(s: usize) -> Result<(VectorCode, Vec<ExtElem>), CodeError> {
    if s < 2 {
        return Err(CodeError::BadParams(format!(
            "spread primal code needs s >= 2 (dimension m - 2 = {}), got s = {s}",
            2 * s as i64 - 2
        )));
    }
    let m = 2 * s;
    let f2 = Arc::new(Field::new(2, 1)?);
    let ext = Arc::new(ExtField::new(f2, m as u32)?);
    let basis = ext.polynomial_basis();
    let parity = spread_parity_rows(&ext, &basis, s);
    let checks = VectorCode::new(ext, m, parity)?;
    Ok((checks.dual(), basis))
}

/// The rows of the spread parity check matrix for any `s >= 1`.
pub fn spread_parity_rows(ext: &ExtField, basis: &[ExtElem], s: usize) -> Vec<Vec<ExtElem>> {
    let q = ext.base().order();
    vec![
        basis.to_vec(),
        basis.iter().map(|&g| ext.pow(g, q.pow(s as u32))).collect(),
    ]
}

/// The expanded dual code of the spread construction, defined for all
/// `s >= 1`. For `s = 1` the primal code is zero and the dual is the full
/// space `F_2^{2 x 2}`; for `s >= 2` this is `Gamma(C^perp)` in the
/// polynomial basis.
pub fn spread_dual_expansion(s: usize) -> Result<MatrixCode, CodeError> {
    let m = 2 * s;
    let f2 = Arc::new(Field::new(2, 1)?);
    if s == 1 {
        return Ok(MatrixCode::full_space(f2, 2, 2));
    }
    let ext = Arc::new(ExtField::new(f2, m as u32)?);
    let basis = ext.polynomial_basis();
    let parity = spread_parity_rows(&ext, &basis, s);
    let checks = VectorCode::new(ext, m, parity)?;
    checks.expand(&basis)
}

/// A Gabidulin `F_{q^m}`-[n, k, n-k+1] code with the first n polynomial basis
/// elements as evaluation points, plus the expansion basis.
pub fn gabidulin_fixture(
    q: u64,
    m: u32,
    n: usize,
    k: usize,
) -> Result<(VectorCode, Vec<ExtElem>), CodeError> {
    let base = Arc::new(Field::new(q, 1)?);
    let ext = Arc::new(ExtField::new(base, m)?);
    let basis = ext.polynomial_basis();
    let code = gabidulin(ext, n, k, &basis[..n])?;
    Ok((code, basis))
}

/// The zero-column counterexample: an MRD `F_2`-[3x2, 3, 2] code `D` (the
/// transpose of an expanded Gabidulin `F_8`-[2, 1, 2] code) and the code `C`
/// in `F_2^{3x3}` obtained by appending a zero column to every word of `D`.
/// `C` is neither MRD nor dually QMRD, yet its rank-2 supports still hold
/// the trivial design of 2-subspaces of `F_2^3`.
pub fn zero_column_counterexample() -> Result<(MatrixCode, MatrixCode), CodeError> {
    let (g, basis) = gabidulin_fixture(2, 3, 2, 1)?;
    let expanded = g.expand(&basis)?;
    let transposed: Vec<_> = expanded.basis().iter().map(|x| x.transpose()).collect();
    let d = MatrixCode::new(expanded.field().clone(), 3, 2, transposed)?;
    let c = append_zero_column_code(&d);
    Ok((d, c))
}
