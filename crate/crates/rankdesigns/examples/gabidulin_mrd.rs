//! Gabidulin codes are MRD, and for MRD codes the words of minimum rank hold
//! the trivial design: their supports are all d-subspaces.

use rankdesigns::am::mrd_trivial_design_equivalence;
use rankdesigns::codes::Budget;
use rankdesigns::fixtures::gabidulin_fixture;

fn main() {
    let budget = Budget::default();
    let (code, basis) = gabidulin_fixture(2, 4, 4, 2).unwrap();
    let expanded = code.expand(&basis).unwrap();

    let d = expanded.min_distance(budget).unwrap();
    println!(
        "expanded Gabidulin code: [{} x {}, {}, {}] over F_2",
        expanded.n(),
        expanded.m(),
        expanded.dim(),
        d
    );
    println!("is MRD: {}", expanded.is_mrd(budget).unwrap());

    let wd = expanded.weight_distribution(budget).unwrap();
    println!("W_{d} = {} (expect 225 = [4 choose 3]_2 * (2^4 - 1))", wd.get(d));

    let (is_mrd, trivial) = mrd_trivial_design_equivalence(&code, &basis, budget).unwrap();
    println!("MRD verdict {is_mrd} == trivial-design verdict {trivial}");
}
