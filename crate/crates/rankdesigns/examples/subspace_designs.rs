//! Working with subspace designs directly: enumeration, verification, dual
//! designs and intersection numbers on the trivial design of 3-subspaces of
//! F_2^4.

use std::collections::BTreeSet;
use std::sync::Arc;

use rankdesigns::codes::Budget;
use rankdesigns::designs::{enumerate_subspaces, intersection_number, DesignInstance};
use rankdesigns::{q_binomial, Field, Subspace};

fn main() {
    let f2 = Arc::new(Field::new(2, 1).unwrap());
    let budget = Budget::default();

    let blocks: BTreeSet<Subspace> =
        enumerate_subspaces(f2.clone(), 4, 3, budget).unwrap().into_iter().collect();
    println!("all 3-subspaces of F_2^4: {} = [4 choose 3]_2", blocks.len());

    let mut design = DesignInstance::new(f2, 4, 3, blocks).unwrap();
    design.verify(1, budget).unwrap();
    println!(
        "trivial design verified: 1-(4, 3, {}) with {} blocks",
        design.lambda().unwrap(),
        design.blocks().len()
    );

    let dual = design.dual(budget).unwrap();
    println!(
        "dual design: 1-(4, {}, {}) — predicted by the lemma, confirmed by brute force",
        dual.r(),
        dual.lambda().unwrap()
    );

    let lambda = design.lambda().unwrap();
    for (i, j) in [(0usize, 0usize), (1, 0), (0, 1)] {
        let l = intersection_number(1, 4, 3, lambda, i, j, 2).unwrap();
        println!("lambda_{{{i},{j}}} = {l}");
    }
    assert_eq!(
        intersection_number(1, 4, 3, lambda, 0, 0, 2).unwrap(),
        q_binomial(4, 3, 2)
    );
}
