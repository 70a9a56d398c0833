use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trimat_core::io::{BetaFile, ModuleFile};
use trimat_core::lab::sample;
use trimat_core::{
    beta_to_extension, counterexample_check, cyclic_quotient, parse_poly, BetaDomain, BetaMap, DenseMatrix, FieldSpec,
    Scalar, Subspace,
};

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::prime(101).unwrap()),
        Just(FieldSpec::prime(2147483647).unwrap()),
        Just(FieldSpec::rational()),
    ]
}

fn scalars(f: FieldSpec, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-50i64..50, 1i64..6), n).prop_map(move |v| {
        v.into_iter()
            .map(|(a, b)| {
                let b = if f.is_infinite() { b } else { 1 };
                f.from_i64(a).checked_div(&f.from_i64(b)).unwrap()
            })
            .collect()
    })
}

fn matrix() -> impl Strategy<Value = DenseMatrix> {
    (field(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        scalars(f, r * c).prop_map(move |v| DenseMatrix::from_rows(f, v.chunks(c).map(<[_]>::to_vec).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (sample::scalar(&mut rng, f), sample::scalar(&mut rng, f), sample::scalar(&mut rng, f));
        let ab_c = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let a_bc = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let rhs = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        if !a.is_zero() {
            prop_assert!(a.checked_mul(&a.inv().unwrap()).unwrap().is_one());
        }
        prop_assert_eq!(f.parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_recovers_a_consistent_system(m in matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample::vector(&mut rng, m.field(), m.cols());
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn subspace_dimensions(f in field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gen = |rng: &mut ChaCha8Rng, k| (0..k).map(|_| sample::vector(rng, f, 6)).collect::<Vec<_>>();
        let a = Subspace::span(f, 6, gen(&mut rng, 3));
        let b = Subspace::span(f, 6, gen(&mut rng, 4));
        prop_assert_eq!(a.sum(&b).dim() + a.intersection(&b).dim(), a.dim() + b.dim());
        prop_assert!(a.intersection(&b).is_subspace_of(&a));
    }

    #[test]
    fn poly_display_parses_back(f in field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample::poly_in_maximal(&mut rng, f, 3, 3, 4);
        let q = sample::poly_in_maximal(&mut rng, f, 3, 3, 4);
        prop_assert_eq!(parse_poly(&p.to_string(), 3, f).unwrap(), p.clone());
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert!(p.sub(&p).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn module_invariants(f in field(), nvars in 1usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = sample::module(&mut rng, f, nvars, 7, 20).unwrap();
        prop_assert_eq!(m.algebra_dimension(), m.algebra_dimension_by_monomials());
        let soc = m.socle();
        for v in soc.basis() {
            for i in 0..nvars {
                prop_assert!(m.act(i, v).iter().all(Scalar::is_zero));
            }
        }
        prop_assert!(m.dim() == 0 || !soc.is_zero());
        let dual = m.dual();
        prop_assert_eq!(dual.algebra_dimension(), m.algebra_dimension());
        prop_assert_eq!(dual.dual(), m.clone());
        let file = ModuleFile::from_module(&m);
        let json = serde_json::to_string(&file).unwrap();
        let back: ModuleFile = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_module().unwrap(), m);
    }

    #[test]
    fn two_variable_algebras_are_small(f in field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = sample::module(&mut rng, f, 2, 9, 20).unwrap();
        prop_assert!(m.algebra_dimension() <= m.dim());
    }

    #[test]
    fn cyclic_quotients_are_cyclic(f in field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = sample::cyclic_ideal(&mut rng, f, 3, 6);
        let ring = cyclic_quotient(&ideal, 20).unwrap();
        let m = ring.module();
        prop_assert_eq!(m.algebra_dimension(), m.dim());
        prop_assert_eq!(m.is_cyclic(), Ok(true));
        for g in ideal.gens() {
            prop_assert!(ring.normal_form(g).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn verdict_matches_extension(f in field(), nvars in 2usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = sample::module(&mut rng, f, nvars, 6, 20).unwrap();
        let beta = sample::hom_element(&mut rng, &m).unwrap();
        let report = counterexample_check(&beta).unwrap();
        let n = beta_to_extension(&beta).unwrap().total;
        prop_assert_eq!(n.dim(), m.dim() + 1);
        prop_assert_eq!(report.is_counterexample(), n.algebra_dimension() > n.dim());
        prop_assert!(report.consistent);
        let u = sample::vector(&mut rng, f, m.dim());
        let shifted = beta.add(&BetaMap::coboundary(m.clone(), BetaDomain::Maximal, &u).unwrap());
        prop_assert_eq!(counterexample_check(&shifted).unwrap().verdict, report.verdict);
        let file = BetaFile::from_beta(&beta, None);
        let json = serde_json::to_string(&file).unwrap();
        let back: BetaFile = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.load(std::path::Path::new("."), 20).unwrap().beta, beta);
    }
}
