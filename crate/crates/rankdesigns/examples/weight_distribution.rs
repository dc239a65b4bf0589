//! Compute a rank weight distribution twice: by exhaustive enumeration of the
//! dual code, and through the MacWilliams transform of the primal
//! distribution. The two must agree exactly.

use std::sync::Arc;

use rankdesigns::codes::{macwilliams_transform, Budget, MatrixCode};
use rankdesigns::gf::FiniteField;
use rankdesigns::{Field, FqMatrix};

fn main() {
    let f2 = Arc::new(Field::new(2, 1).unwrap());
    let budget = Budget::default();

    // an [3 x 3, 3] code spanned by three fixed matrices
    let rows = [
        vec![1, 0, 0, 0, 1, 0, 0, 0, 1],
        vec![0, 1, 0, 0, 0, 1, 1, 0, 0],
        vec![0, 0, 1, 1, 0, 0, 0, 1, 0],
    ];
    let basis: Vec<FqMatrix> = rows
        .iter()
        .map(|r| FqMatrix::new(f2.clone(), 3, 3, r.clone()).unwrap())
        .collect();
    let code = MatrixCode::new(f2.clone(), 3, 3, basis).unwrap();

    let wd = code.weight_distribution(budget).unwrap();
    println!("W(C)  = {:?}", wd.counts());

    let brute = code.dual().weight_distribution(budget).unwrap();
    let transformed =
        macwilliams_transform(&wd, code.n(), code.m(), code.dim(), code.field().order()).unwrap();
    println!("W(C*) = {:?} (brute force)", brute.counts());
    println!("W(C*) = {:?} (MacWilliams)", transformed.counts());
    assert_eq!(brute, transformed);
    println!("the two dual distributions agree");
}
