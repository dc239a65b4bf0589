//! Puncturing and shortening are dual operations:
//! Pi(C, A, s)* = Sigma(C*, (A^T)^{-1}, s).

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;
use rankdesigns::codes::{Budget, MatrixCode};
use rankdesigns::{Field, FqMatrix};

fn main() {
    let f2 = Arc::new(Field::new(2, 1).unwrap());
    let budget = Budget::default();
    let mut rng = StdRng::seed_from_u64(7);

    let gens: Vec<FqMatrix> =
        (0..4).map(|_| FqMatrix::random(f2.clone(), 3, 3, &mut rng)).collect();
    let code = MatrixCode::from_spanning(f2.clone(), 3, 3, &gens).unwrap();
    println!("C: [3 x 3, {}] over F_2", code.dim());

    let a = FqMatrix::random_invertible(f2.clone(), 3, &mut rng);
    for s in [1usize, 2] {
        let punctured = code.puncture(&a, s).unwrap();
        let lhs = punctured.dual();
        let rhs = code.dual().shorten(&a.transpose().inverse().unwrap(), s).unwrap();
        assert!(lhs.same_code(&rhs));
        println!(
            "s = {s}: Pi(C,A,{s})* = Sigma(C*,(A^T)^-1,{s})  (both [{} x 3, {}])",
            lhs.n(),
            lhs.dim()
        );
        println!(
            "  W(Pi(C,A,{s})) = {:?}",
            punctured.weight_distribution(budget).unwrap().counts()
        );
    }
}
