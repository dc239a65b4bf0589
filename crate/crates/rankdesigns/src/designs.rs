//! Subspace designs (designs over `F_q`): canonical enumeration of
//! t-dimensional subspaces, brute-force design verification, dual designs,
//! intersection numbers, and codeword-support statistics.
//!
//! A t-(n, r, lambda) design over `F_q` is a set of r-dimensional subspaces
//! of `F_q^n` (the blocks) such that every t-dimensional subspace lies in
//! exactly lambda blocks. Only simple designs (distinct blocks) appear here.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{Budget, CodeError, MatrixCode};
use crate::gf::{Field, FiniteField};
use crate::linalg::{LinalgError, Subspace};
use crate::qcomb::{q_binomial, BigCount};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("enumeration budget exceeded: {required} subspaces needed, budget is {budget}")]
    BudgetExceeded { required: BigCount, budget: u64 },
    #[error("invalid design parameters: {0}")]
    BadParams(String),
    #[error("formula yields a non-integer value: {0}")]
    NonInteger(String),
    #[error("dual design verification disagrees with the predicted parameters: {0}")]
    DualMismatch(String),
    #[error("design has not been verified to any strength yet")]
    Unverified,
}

/// Result of brute-force design verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    /// Every t-subspace lies in exactly `lambda` blocks.
    Design { lambda: BigCount },
    /// Two t-subspaces covered by different numbers of blocks.
    NotDesign {
        witness_a: Subspace,
        count_a: u64,
        witness_b: Subspace,
        count_b: u64,
    },
}

/// Result of a u-invariance check on a matrix code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvarianceOutcome {
    /// Every u-support holds the same number `mu` of codewords; `mu` is zero
    /// when the code has no words of rank u at all (vacuous invariance).
    Invariant { mu: BigCount },
    /// Two u-supports with different codeword counts.
    NotInvariant {
        witness_a: (Subspace, BigCount),
        witness_b: (Subspace, BigCount),
    },
}

/// A (candidate) design: a set of distinct r-dimensional blocks in `F_q^n`,
/// together with the verified strength and lambda once `verify` has run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignInstance {
    field: Arc<Field>,
    n: usize,
    r: usize,
    blocks: BTreeSet<Subspace>,
    t: Option<usize>,
    lambda: Option<BigCount>,
}

impl DesignInstance {
    pub fn new(
        field: Arc<Field>,
        n: usize,
        r: usize,
        blocks: BTreeSet<Subspace>,
    ) -> Result<Self, DesignError> {
        for b in &blocks {
            if b.field() != &field {
                return Err(DesignError::Linalg(LinalgError::FieldMismatch));
            }
            if b.ambient() != n || b.dim() != r {
                return Err(DesignError::BadParams(format!(
                    "block of dimension {} in ambient {} for a ({n}, {r}) design",
                    b.dim(),
                    b.ambient()
                )));
            }
        }
        Ok(DesignInstance { field, n, r, blocks, t: None, lambda: None })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn blocks(&self) -> &BTreeSet<Subspace> {
        &self.blocks
    }

    pub fn strength(&self) -> Option<usize> {
        self.t
    }

    pub fn lambda(&self) -> Option<&BigCount> {
        self.lambda.as_ref()
    }

    /// Brute-force verification at strength `t`; on success the instance
    /// records `t` and lambda.
    pub fn verify(&mut self, t: usize, budget: Budget) -> Result<VerifyOutcome, DesignError> {
        let outcome = verify_design(&self.blocks, t, budget)?;
        if let VerifyOutcome::Design { ref lambda } = outcome {
            self.t = Some(t);
            self.lambda = Some(lambda.clone());
        }
        Ok(outcome)
    }

    /// The dual design: orthogonal complements of the blocks, with lambda
    /// predicted as `lambda [n-t choose r]_q [n-t choose r-t]_q^{-1}` and
    /// confirmed by brute force. Any disagreement is an error.
    pub fn dual(&self, budget: Budget) -> Result<DesignInstance, DesignError> {
        let (t, lambda) = match (self.t, &self.lambda) {
            (Some(t), Some(l)) => (t, l),
            _ => return Err(DesignError::Unverified),
        };
        let q = self.q();
        let predicted = {
            let num = BigInt::from(lambda.clone())
                * BigInt::from(q_binomial((self.n - t) as u64, self.r as u64, q));
            let den = BigInt::from(q_binomial((self.n - t) as u64, (self.r - t) as u64, q));
            let v = BigRational::new(num, den);
            if !v.is_integer() || v.is_negative() {
                return Err(DesignError::NonInteger(format!("predicted dual lambda {v}")));
            }
            v.to_integer().to_biguint().expect("nonnegative")
        };
        let blocks: BTreeSet<Subspace> =
            self.blocks.iter().map(|b| b.orthogonal_complement()).collect();
        let mut dual = DesignInstance::new(self.field.clone(), self.n, self.n - self.r, blocks)?;
        match dual.verify(t, budget)? {
            VerifyOutcome::Design { lambda } if lambda == predicted => Ok(dual),
            VerifyOutcome::Design { lambda } => Err(DesignError::DualMismatch(format!(
                "verified lambda {lambda}, predicted {predicted}"
            ))),
            VerifyOutcome::NotDesign { witness_a, count_a, witness_b, count_b } => {
                Err(DesignError::DualMismatch(format!(
                    "complements are not a design: {:?} in {count_a} blocks, {:?} in {count_b}",
                    witness_a, witness_b
                )))
            }
        }
    }
}

/// Every t-dimensional subspace of `F_q^n`, exactly once, in canonical order:
/// pivot-column patterns lexicographically, then the free RREF entries in
/// lexicographic order. The total count is `[n choose t]_q`.
pub fn enumerate_subspaces(
    field: Arc<Field>,
    n: usize,
    t: usize,
    budget: Budget,
) -> Result<Vec<Subspace>, DesignError> {
    if t > n {
        return Ok(Vec::new());
    }
    let q = field.order();
    let total = q_binomial(n as u64, t as u64, q);
    if total > BigCount::from(budget.max_subspaces) {
        return Err(DesignError::BudgetExceeded { required: total, budget: budget.max_subspaces });
    }
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..t).collect();
    loop {
        // free positions of the RREF pattern: (i, j) with j > pivots[i] and
        // j itself not a pivot column
        let free: Vec<(usize, usize)> = (0..t)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..n)
                    .filter(move |j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let combos = (q as u128).pow(free.len() as u32) as u64;
        for idx in 0..combos {
            let mut rows = vec![vec![0u64; n]; t];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut rest = idx;
            for &(i, j) in &free {
                rows[i][j] = rest % q;
                rest /= q;
            }
            out.push(Subspace::from_rows(field.clone(), n, rows));
        }
        // next pivot pattern in lexicographic order
        let Some(bump) = (0..t).rev().find(|&i| pivots[i] < n - t + i) else {
            break;
        };
        pivots[bump] += 1;
        for i in bump + 1..t {
            pivots[i] = pivots[i - 1] + 1;
        }
    }
    debug_assert_eq!(BigCount::from(out.len() as u64), total);
    Ok(out)
}

/// Check whether `blocks` form a t-design by full enumeration of the
/// t-subspaces. Counts are computed per t-subspace in parallel; on imbalance
/// the two witnesses with the lexicographically smallest subspaces are
/// returned, so the outcome is deterministic.
pub fn verify_design(
    blocks: &BTreeSet<Subspace>,
    t: usize,
    budget: Budget,
) -> Result<VerifyOutcome, DesignError> {
    let Some(first) = blocks.iter().next() else {
        return Err(DesignError::BadParams("no blocks".into()));
    };
    let field = first.field().clone();
    let n = first.ambient();
    let r = first.dim();
    if blocks.iter().any(|b| b.ambient() != n || b.dim() != r) {
        return Err(DesignError::BadParams("blocks of mixed shape".into()));
    }
    if t > r {
        return Err(DesignError::BadParams(format!("strength {t} exceeds block dimension {r}")));
    }
    let t_spaces = enumerate_subspaces(field, n, t, budget)?;
    let counts: Vec<u64> = t_spaces
        .par_iter()
        .map(|sub| {
            blocks
                .iter()
                .filter(|b| b.contains(sub).expect("same ambient"))
                .count() as u64
        })
        .collect();
    let lambda = counts[0];
    match counts.iter().position(|&c| c != lambda) {
        None => Ok(VerifyOutcome::Design { lambda: BigCount::from(lambda) }),
        Some(i) => Ok(VerifyOutcome::NotDesign {
            witness_a: t_spaces[0].clone(),
            count_a: lambda,
            witness_b: t_spaces[i].clone(),
            count_b: counts[i],
        }),
    }
}

/// The intersection number `lambda_{i,j}` of a t-(n, r, lambda) design: the
/// number of blocks containing a fixed i-subspace I and meeting a fixed
/// j-subspace J (with I and J in direct sum) trivially, for `i + j <= t`:
///
/// `lambda_{i,j} = q^{j(r-i)} lambda [n-i-j choose r-i]_q [n-t choose r-t]_q^{-1}`.
pub fn intersection_number(
    t: usize,
    n: usize,
    r: usize,
    lambda: &BigCount,
    i: usize,
    j: usize,
    q: u64,
) -> Result<BigCount, DesignError> {
    if i + j > t || t > r || r > n {
        return Err(DesignError::BadParams(format!(
            "need i + j <= t <= r <= n, got i = {i}, j = {j}, t = {t}, r = {r}, n = {n}"
        )));
    }
    let num = BigInt::from(q).pow((j * (r - i)) as u32)
        * BigInt::from(lambda.clone())
        * BigInt::from(q_binomial((n - i - j) as u64, (r - i) as u64, q));
    let den = BigInt::from(q_binomial((n - t) as u64, (r - t) as u64, q));
    let v = BigRational::new(num, den);
    if !v.is_integer() || v.is_negative() {
        return Err(DesignError::NonInteger(format!("lambda_{{{i},{j}}} = {v}")));
    }
    Ok(v.to_integer().to_biguint().expect("nonnegative"))
}

/// Map each u-support of the code to `|C_=(U)|`, the number of codewords with
/// that exact support, by one pass over all codewords of rank u.
pub fn supports_of_rank(
    c: &MatrixCode,
    u: usize,
    budget: Budget,
) -> Result<BTreeMap<Subspace, BigCount>, DesignError> {
    let mut map: BTreeMap<Subspace, BigCount> = BTreeMap::new();
    for x in c.codewords(budget)? {
        if x.rank() == u {
            *map.entry(x.support()).or_insert_with(BigCount::zero) += 1u32;
        }
    }
    Ok(map)
}

/// Whether `|C_=(U)|` takes the same value `mu(C, u)` on every u-support.
pub fn is_u_invariant(
    c: &MatrixCode,
    u: usize,
    budget: Budget,
) -> Result<InvarianceOutcome, DesignError> {
    let map = supports_of_rank(c, u, budget)?;
    let mut iter = map.iter();
    let Some((first_supp, mu)) = iter.next() else {
        return Ok(InvarianceOutcome::Invariant { mu: BigCount::zero() });
    };
    for (supp, count) in iter {
        if count != mu {
            return Ok(InvarianceOutcome::NotInvariant {
                witness_a: (first_supp.clone(), mu.clone()),
                witness_b: (supp.clone(), count.clone()),
            });
        }
    }
    Ok(InvarianceOutcome::Invariant { mu: mu.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{gabidulin, random_code};
    use crate::gf::ExtField;
    use crate::linalg::FqMatrix;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn f2() -> Arc<Field> {
        Arc::new(Field::new(2, 1).unwrap())
    }

    /// The spread of F_2^4 induced by the 1-dimensional F_4-subspaces of
    /// F_4^2, expanding each F_4 coordinate to two F_2 coordinates.
    fn f4_spread() -> BTreeSet<Subspace> {
        let f4 = Arc::new(ExtField::new(f2(), 2).unwrap());
        let gens: Vec<[u64; 2]> = vec![[1, 0], [0, 1], [1, 1], [1, 2], [1, 3]];
        gens.into_iter()
            .map(|g| {
                let rows: Vec<Vec<u64>> = (1..4)
                    .map(|alpha| {
                        let mut row = f4.coords(f4.mul(alpha, g[0]));
                        row.extend(f4.coords(f4.mul(alpha, g[1])));
                        row
                    })
                    .collect();
                Subspace::from_rows(f2(), 4, rows)
            })
            .collect()
    }

    #[test]
    fn enumeration_counts_and_distinctness() {
        let budget = Budget::default();
        for (n, t, q, expect) in [(4usize, 2usize, 2u64, 35usize), (3, 1, 3, 13), (4, 0, 2, 1)] {
            let field = Arc::new(Field::new(q, 1).unwrap());
            let subs = enumerate_subspaces(field, n, t, budget).unwrap();
            assert_eq!(subs.len(), expect);
            let dedup: BTreeSet<_> = subs.iter().cloned().collect();
            assert_eq!(dedup.len(), expect);
            assert!(subs.iter().all(|s| s.dim() == t && s.ambient() == n));
        }
    }

    #[test]
    fn enumeration_matches_q_binomial() {
        let budget = Budget::default();
        for q in [2u64, 3] {
            let field = Arc::new(Field::new(q, 1).unwrap());
            let n_max = if q == 2 { 5 } else { 4 };
            for n in 0..=n_max {
                for t in 0..=n {
                    let subs = enumerate_subspaces(field.clone(), n, t, budget).unwrap();
                    assert_eq!(
                        BigCount::from(subs.len() as u64),
                        q_binomial(n as u64, t as u64, q)
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_budget() {
        let tight = Budget { max_subspaces: 10, ..Budget::default() };
        assert!(matches!(
            enumerate_subspaces(f2(), 4, 2, tight),
            Err(DesignError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn trivial_designs_verify() {
        let budget = Budget::default();
        for q in [2u64, 3] {
            let field = Arc::new(Field::new(q, 1).unwrap());
            let n_max = if q == 2 { 5 } else { 4 };
            for n in 1..=n_max {
                for r in 1..=n {
                    let blocks: BTreeSet<Subspace> =
                        enumerate_subspaces(field.clone(), n, r, budget).unwrap().into_iter().collect();
                    for t in 0..=r {
                        let outcome = verify_design(&blocks, t, budget).unwrap();
                        let expect = q_binomial((n - t) as u64, (r - t) as u64, q);
                        assert_eq!(outcome, VerifyOutcome::Design { lambda: expect });
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_design_minus_block_fails() {
        let budget = Budget::default();
        let mut blocks: BTreeSet<Subspace> =
            enumerate_subspaces(f2(), 4, 3, budget).unwrap().into_iter().collect();
        let removed = blocks.iter().next().unwrap().clone();
        blocks.remove(&removed);
        match verify_design(&blocks, 1, budget).unwrap() {
            VerifyOutcome::NotDesign { count_a, count_b, .. } => {
                assert_ne!(count_a, count_b);
            }
            other => panic!("expected a counterexample, got {other:?}"),
        }
    }

    #[test]
    fn spread_is_a_design() {
        let budget = Budget::default();
        let blocks = f4_spread();
        assert_eq!(blocks.len(), 5);
        // pairwise trivial intersection
        let v: Vec<&Subspace> = blocks.iter().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                assert_eq!(v[i].intersection_dim(v[j]).unwrap(), 0);
            }
        }
        let outcome = verify_design(&blocks, 1, budget).unwrap();
        assert_eq!(outcome, VerifyOutcome::Design { lambda: BigCount::from(1u32) });
    }

    #[test]
    fn dual_design_examples() {
        let budget = Budget::default();

        // dual of the 1-(4,2,1) spread is again a 1-(4,2,1) design
        let mut spread = DesignInstance::new(f2(), 4, 2, f4_spread()).unwrap();
        spread.verify(1, budget).unwrap();
        let dual = spread.dual(budget).unwrap();
        assert_eq!(dual.r(), 2);
        assert_eq!(dual.lambda(), Some(&BigCount::from(1u32)));

        // double dual restores the original block set
        let double = dual.dual(budget).unwrap();
        assert_eq!(double.blocks(), spread.blocks());

        // trivial t=1 design on (n=4, r=3): dual lambda = 7 * [3 choose 3] / [3 choose 2] = 1
        let blocks: BTreeSet<Subspace> =
            enumerate_subspaces(f2(), 4, 3, budget).unwrap().into_iter().collect();
        let mut trivial = DesignInstance::new(f2(), 4, 3, blocks).unwrap();
        trivial.verify(1, budget).unwrap();
        assert_eq!(trivial.lambda(), Some(&BigCount::from(7u32)));
        let dual = trivial.dual(budget).unwrap();
        assert_eq!(dual.r(), 1);
        assert_eq!(dual.lambda(), Some(&BigCount::from(1u32)));
    }

    #[test]
    fn intersection_numbers_on_spread() {
        let budget = Budget::default();
        let blocks = f4_spread();
        let lambda = BigCount::from(1u32);

        // formula values
        assert_eq!(intersection_number(1, 4, 2, &lambda, 1, 0, 2).unwrap(), lambda);
        assert_eq!(
            intersection_number(1, 4, 2, &lambda, 0, 0, 2).unwrap(),
            BigCount::from(5u32)
        );
        assert_eq!(
            intersection_number(1, 4, 2, &lambda, 0, 1, 2).unwrap(),
            BigCount::from(4u32)
        );
        assert!(intersection_number(1, 4, 2, &lambda, 1, 1, 2).is_err());

        // brute-force comparison over all valid (I, J) pairs with i + j <= 1
        for (i, j) in [(0usize, 0usize), (1, 0), (0, 1)] {
            let want = intersection_number(1, 4, 2, &lambda, i, j, 2).unwrap();
            for big_i in enumerate_subspaces(f2(), 4, i, budget).unwrap() {
                for big_j in enumerate_subspaces(f2(), 4, j, budget).unwrap() {
                    if big_i.intersection_dim(&big_j).unwrap() != 0 {
                        continue;
                    }
                    let count = blocks
                        .iter()
                        .filter(|b| {
                            b.contains(&big_i).unwrap()
                                && b.intersection_dim(&big_j).unwrap() == 0
                        })
                        .count();
                    assert_eq!(BigCount::from(count as u64), want, "(i, j) = ({i}, {j})");
                }
            }
        }
    }

    #[test]
    fn supports_of_expanded_gabidulin() {
        let budget = Budget::default();
        let ext = Arc::new(ExtField::new(f2(), 4).unwrap());
        let poly = ext.polynomial_basis();
        let c = gabidulin(ext, 4, 2, &poly).unwrap().expand(&poly).unwrap();

        // u below the minimum distance: no supports
        assert!(supports_of_rank(&c, 1, budget).unwrap().is_empty());
        assert!(supports_of_rank(&c, 2, budget).unwrap().is_empty());

        // at u = d = 3: every support holds q^m - 1 = 15 words, and the
        // counts sum to W_3 = 225
        let map = supports_of_rank(&c, 3, budget).unwrap();
        assert_eq!(map.len(), 15);
        assert!(map.values().all(|v| *v == BigCount::from(15u32)));
        let total: BigCount = map.values().sum();
        assert_eq!(total, c.weight_distribution(budget).unwrap().get(3));

        assert_eq!(
            is_u_invariant(&c, 3, budget).unwrap(),
            InvarianceOutcome::Invariant { mu: BigCount::from(15u32) }
        );
    }

    #[test]
    fn invariance_preserved_under_left_multiplication() {
        let budget = Budget::default();
        let ext = Arc::new(ExtField::new(f2(), 4).unwrap());
        let poly = ext.polynomial_basis();
        let c = gabidulin(ext, 4, 2, &poly).unwrap().expand(&poly).unwrap();
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..5 {
            let a = FqMatrix::random_invertible(f2(), 4, &mut rng);
            let ac = c.left_multiply(&a).unwrap();
            assert_eq!(
                is_u_invariant(&ac, 3, budget).unwrap(),
                InvarianceOutcome::Invariant { mu: BigCount::from(15u32) }
            );
        }
    }

    #[test]
    fn non_invariant_code_detected() {
        // span{E11, E12, E21} in F_2^{2x2}: the support <e1> holds three
        // rank-1 words, the support <e2> only one
        let budget = Budget::default();
        let e = |r: usize, c: usize| {
            let mut m = FqMatrix::zero(f2(), 2, 2);
            m.set(r, c, 1);
            m
        };
        let c = MatrixCode::new(f2(), 2, 2, vec![e(0, 0), e(0, 1), e(1, 0)]).unwrap();
        match is_u_invariant(&c, 1, budget).unwrap() {
            InvarianceOutcome::NotInvariant { witness_a, witness_b } => {
                let counts = [witness_a.1, witness_b.1];
                assert!(counts.contains(&BigCount::from(3u32)));
                assert!(counts.contains(&BigCount::from(1u32)));
            }
            other => panic!("expected non-invariance, got {other:?}"),
        }
    }

    #[test]
    fn random_code_support_counts_sum_to_distribution() {
        let budget = Budget::default();
        let mut rng = StdRng::seed_from_u64(67);
        for _ in 0..10 {
            let c = random_code(f2(), 3, 3, 4, &mut rng);
            let wd = c.weight_distribution(budget).unwrap();
            for u in 0..=3 {
                let total: BigCount = supports_of_rank(&c, u, budget).unwrap().values().sum();
                assert_eq!(total, wd.get(u));
            }
        }
    }
}
