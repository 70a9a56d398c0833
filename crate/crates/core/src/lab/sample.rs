//! Random instances. Every module produced here is commuting by
//! construction: cyclic quotients, direct sums and extensions.

use std::collections::BTreeSet;

use rand::Rng;

use crate::ext::{beta_to_extension, hom_m_to_M, BetaDomain, BetaMap, ExtError};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{DenseMatrix, Vector};
use crate::module::{cyclic_quotient, FdModule, ModuleError, QuotientRing};
use crate::poly::{IdealGens, Monomial, Poly};

pub fn scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field.modulus() {
        Some(p) => field.from_i64(rng.random_range(0..p) as i64),
        None => field.from_i64(rng.random_range(-4..=4)),
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    loop {
        let c = scalar(rng, field);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn vector<R: Rng>(rng: &mut R, field: FieldSpec, dim: usize) -> Vector {
    (0..dim).map(|_| scalar(rng, field)).collect()
}

pub fn monomial<R: Rng>(rng: &mut R, nvars: usize, min_degree: u32, max_degree: u32) -> Monomial {
    let d = rng.random_range(min_degree..=max_degree);
    let mut e = vec![0; nvars];
    for _ in 0..d {
        e[rng.random_range(0..nvars)] += 1;
    }
    Monomial::new(e)
}

/// A nonzero polynomial in `m` with up to `max_terms` terms.
pub fn poly_in_maximal<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> Poly {
    loop {
        let terms = rng.random_range(1..=max_terms);
        let p = Poly::from_terms(
            field,
            nvars,
            (0..terms).map(|_| (nonzero_scalar(rng, field), monomial(rng, nvars, 1, max_degree))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// A monomial ideal containing pure powers of every variable, with colength
/// at most `max_colength`, and its standard monomials.
pub fn monomial_ideal<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    nvars: usize,
    max_colength: usize,
) -> (IdealGens, Vec<Monomial>) {
    let top = max_colength.clamp(1, 4) as u32;
    let powers: Vec<u32> = (0..nvars).map(|_| rng.random_range(1..=top)).collect();
    let mut standard: BTreeSet<Monomial> = BTreeSet::new();
    let mut e = vec![0u32; nvars];
    loop {
        standard.insert(Monomial::new(e.clone()));
        let mut i = 0;
        while i < nvars {
            e[i] += 1;
            if e[i] < powers[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
        if i == nvars {
            break;
        }
    }
    let mut gens: Vec<Monomial> = (0..nvars)
        .map(|i| {
            let mut e = vec![0; nvars];
            e[i] = powers[i];
            Monomial::new(e)
        })
        .collect();
    let one = Monomial::one(nvars);
    let mut extra = rng.random_bool(0.5);
    while standard.len() > max_colength || (extra && standard.len() > 1) {
        extra = false;
        let candidates: Vec<&Monomial> = standard.iter().filter(|m| **m != one).collect();
        let m = candidates[rng.random_range(0..candidates.len())].clone();
        standard.retain(|s| !m.divides(s));
        gens.push(m);
    }
    let polys = gens
        .into_iter()
        .map(|m| Poly::monomial(field, field.one(), m))
        .collect();
    (
        IdealGens::new(field, nvars, polys).expect("same ring"),
        standard.into_iter().collect(),
    )
}

/// A monomial ideal as above, plus (sometimes) a binomial in two of its
/// standard monomials. The pure powers keep the quotient supported at the
/// origin.
pub fn cyclic_ideal<R: Rng>(rng: &mut R, field: FieldSpec, nvars: usize, max_colength: usize) -> IdealGens {
    let (ideal, standard) = monomial_ideal(rng, field, nvars, max_colength);
    let inner: Vec<&Monomial> = standard.iter().filter(|m| m.degree() > 0).collect();
    if inner.len() < 2 || rng.random_bool(0.3) {
        return ideal;
    }
    let a = rng.random_range(0..inner.len());
    let mut b = rng.random_range(0..inner.len() - 1);
    if b >= a {
        b += 1;
    }
    let binomial = Poly::from_terms(
        field,
        nvars,
        [
            (field.one(), inner[a].clone()),
            (nonzero_scalar(rng, field), inner[b].clone()),
        ],
    );
    let mut gens = ideal.gens().to_vec();
    gens.push(binomial);
    IdealGens::new(field, nvars, gens).expect("same ring")
}

/// A random element of `Hom(m, M)`.
pub fn hom_element<R: Rng>(rng: &mut R, m: &FdModule) -> Result<BetaMap, ExtError> {
    let hom = hom_m_to_M(m)?;
    let mut beta = BetaMap::zero(m.clone(), BetaDomain::Maximal);
    for b in &hom.basis {
        let c = scalar(rng, m.field());
        if c.is_zero() {
            continue;
        }
        let images = b
            .images()
            .iter()
            .map(|v| v.iter().map(|x| &c * x).collect())
            .collect();
        beta = beta.add(&BetaMap::on_maximal(m.clone(), images)?);
    }
    Ok(beta)
}

pub fn cyclic_module<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    nvars: usize,
    max_colength: usize,
    degree_cap: u32,
) -> Result<QuotientRing, ModuleError> {
    cyclic_quotient(&cyclic_ideal(rng, field, nvars, max_colength), degree_cap)
}

/// A module of dimension at most `max_dim` (and at least one), built from a
/// cyclic quotient by random direct sums and random extensions by `S/m`.
pub fn module<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    nvars: usize,
    max_dim: usize,
    degree_cap: u32,
) -> Result<FdModule, ExtError> {
    let max_dim = max_dim.max(1);
    let start = rng.random_range(1..=max_dim.div_ceil(2));
    let mut m = cyclic_module(rng, field, nvars, start, degree_cap)?.into_module();
    let steps = rng.random_range(0..=max_dim - m.dim());
    for _ in 0..steps {
        if m.dim() >= max_dim {
            break;
        }
        if rng.random_bool(0.25) {
            let room = max_dim - m.dim();
            let other = cyclic_module(rng, field, nvars, room.min(3), degree_cap)?.into_module();
            m = m.direct_sum(&other)?;
        } else {
            let beta = hom_element(rng, &m)?;
            m = beta_to_extension(&beta)?.total;
        }
    }
    Ok(m)
}

/// A random matrix with about `density` of its entries nonzero.
pub fn sparse_matrix<R: Rng>(rng: &mut R, field: FieldSpec, d: usize, density: f64) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(field, d, d);
    for r in 0..d {
        for c in 0..d {
            if rng.random_bool(density) {
                a[(r, c)] = scalar(rng, field);
            }
        }
    }
    a
}

/// `sum c_k A^k` for `k < d`, with random coefficients.
pub fn polynomial_in<R: Rng>(rng: &mut R, a: &DenseMatrix) -> DenseMatrix {
    let field = a.field();
    let d = a.rows();
    let mut acc = DenseMatrix::zeros(field, d, d);
    let mut power = DenseMatrix::identity(field, d);
    for _ in 0..d.max(1) {
        acc = acc.add(&power.scale(&scalar(rng, field))).expect("square");
        power = power.mul(a).expect("square");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::DEFAULT_DEGREE_CAP;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomial_ideals_have_bounded_colength() {
        let f = FieldSpec::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (i, standard) = monomial_ideal(&mut rng, f, 3, 7);
            assert!(!standard.is_empty() && standard.len() <= 7);
            let q = cyclic_quotient(&i, DEFAULT_DEGREE_CAP).unwrap();
            assert_eq!(q.basis(), &standard[..]);
        }
    }

    #[test]
    fn random_modules_are_origin_supported() {
        let f = FieldSpec::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let m = module(&mut rng, f, 3, 6, DEFAULT_DEGREE_CAP).unwrap();
            assert!((1..=6).contains(&m.dim()));
            assert!(m.is_origin_supported());
        }
    }
}
