//! MRD is sufficient but not necessary for the trivial design: appending a
//! zero column to an MRD code destroys MRD-ness (and dual QMRD-ness) while
//! the minimum-weight supports still hold the trivial design.

use rankdesigns::codes::Budget;
use rankdesigns::designs::{enumerate_subspaces, supports_of_rank, DesignInstance};
use rankdesigns::fixtures::zero_column_counterexample;

fn main() {
    let budget = Budget::default();
    let (d_code, c) = zero_column_counterexample().unwrap();

    println!(
        "D: [{} x {}, {}, {}], MRD: {}",
        d_code.n(),
        d_code.m(),
        d_code.dim(),
        d_code.min_distance(budget).unwrap(),
        d_code.is_mrd(budget).unwrap()
    );
    println!(
        "C = D with a zero column: [{} x {}, {}], MRD: {}, dually QMRD: {}",
        c.n(),
        c.m(),
        c.dim(),
        c.is_mrd(budget).unwrap(),
        c.is_dually_qmrd(budget).unwrap()
    );

    let blocks: std::collections::BTreeSet<_> =
        supports_of_rank(&c, 2, budget).unwrap().into_keys().collect();
    let all: std::collections::BTreeSet<_> = enumerate_subspaces(c.field().clone(), c.n(), 2, budget)
        .unwrap()
        .into_iter()
        .collect();
    println!("rank-2 supports: {} of {} possible 2-subspaces", blocks.len(), all.len());
    assert_eq!(blocks, all);

    let mut design = DesignInstance::new(c.field().clone(), c.n(), 2, blocks).unwrap();
    design.verify(2, budget).unwrap();
    println!(
        "trivial design verified: 2-(3, 2, {}) with {} blocks",
        design.lambda().unwrap(),
        design.blocks().len()
    );
}
