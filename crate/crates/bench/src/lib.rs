//! Fixed inputs for the benchmarks in `benches/`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trimat_core::lab::sample;
use trimat_core::{BetaMap, DenseMatrix, FdModule, FieldSpec, IdealGens};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(field: FieldSpec, n: usize, seed: u64) -> DenseMatrix {
    let mut r = rng(seed);
    let rows = (0..n).map(|_| sample::vector(&mut r, field, n)).collect();
    DenseMatrix::from_rows(field, rows).expect("square")
}

pub fn random_module(field: FieldSpec, nvars: usize, dim: usize, seed: u64) -> FdModule {
    let mut r = rng(seed);
    loop {
        if let Ok(m) = sample::module(&mut r, field, nvars, dim, 20) {
            if m.dim() == dim {
                return m;
            }
        }
    }
}

pub fn random_pair(field: FieldSpec, nvars: usize, dim: usize, seed: u64) -> BetaMap {
    let m = random_module(field, nvars, dim, seed);
    sample::hom_element(&mut rng(seed + 1), &m).expect("origin supported")
}

pub fn complete_intersection(field: FieldSpec, a: u32, b: u32, c: u32) -> IdealGens {
    let gens = [format!("x^{a}"), format!("y^{b}"), format!("z^{c}"), "x*y*z - y^2".to_string()];
    let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
    IdealGens::parse(field, 3, &gens).expect("valid")
}
