//! Desk-scale check of the external-distance bound: the covering radius
//! rho(C) never exceeds the external distance tau(C).

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rankdesigns::codes::{Budget, MatrixCode};
use rankdesigns::{Field, FqMatrix};

fn main() {
    let f2 = Arc::new(Field::new(2, 1).unwrap());
    let budget = Budget::default();
    let mut rng = StdRng::seed_from_u64(11);

    for _ in 0..8 {
        let k = rng.gen_range(1..=5);
        let gens: Vec<FqMatrix> =
            (0..k).map(|_| FqMatrix::random(f2.clone(), 3, 3, &mut rng)).collect();
        let code = MatrixCode::from_spanning(f2.clone(), 3, 3, &gens).unwrap();
        let rho = code.covering_radius(budget).unwrap();
        let tau = code.external_distance(budget).unwrap();
        assert!(rho <= tau);
        println!("[3 x 3, {}]: rho = {rho} <= tau = {tau}", code.dim());
    }
}
