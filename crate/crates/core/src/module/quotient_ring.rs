use std::collections::HashMap;

use super::{FdModule, ModuleError, Subspace};
use crate::matrix::{DenseMatrix, Vector};
use crate::poly::{monomials_up_to, IdealGens, Monomial, Poly};

pub const DEFAULT_DEGREE_CAP: u32 = 20;

/// `S/I` for an ideal of finite colength, as a module on its standard
/// monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRing {
    ideal: IdealGens,
    module: FdModule,
    basis: Vec<Monomial>,
    degree: u32,
}

impl QuotientRing {
    pub fn ideal(&self) -> &IdealGens {
        &self.ideal
    }
    pub fn module(&self) -> &FdModule {
        &self.module
    }
    pub fn into_module(self) -> FdModule {
        self.module
    }
    /// Standard monomials, ascending; the first one is `1` unless `I = S`.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }
    /// Truncation degree at which the quotient was certified.
    pub fn certified_degree(&self) -> u32 {
        self.degree
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Class of `p`, in the standard monomial basis.
    pub fn normal_form(&self, p: &Poly) -> Result<Vector, ModuleError> {
        if self.basis.is_empty() {
            return Ok(Vec::new());
        }
        self.module.apply_poly(p, &self.module.unit_vector(0))
    }

    /// The polynomial with the given coordinates.
    pub fn lift(&self, v: &[crate::field::Scalar]) -> Poly {
        let field = self.module.field();
        Poly::from_terms(
            field,
            self.module.nvars(),
            v.iter().cloned().zip(self.basis.iter().cloned()),
        )
    }
}

/// Build `S/I` by Macaulay truncation.
///
/// For each truncation degree `T`, the products `m*g` of degree at most `T`
/// are echelonized with larger monomials first. If for some `D <= T` every
/// monomial of degree `D` is a leading monomial, the non-leading monomials
/// of degree below `D` span `S/I`; the multiplication matrices read off from
/// the echelon form are then checked to commute, to kill every generator and
/// to carry `1` to each basis monomial, which proves they present `S/I`
/// exactly. Otherwise the next `T` is tried, up to `degree_cap`.
pub fn cyclic_quotient(ideal: &IdealGens, degree_cap: u32) -> Result<QuotientRing, ModuleError> {
    let field = ideal.field();
    let nv = ideal.nvars();
    for trunc in ideal.max_degree()..=degree_cap {
        // ascending order; column of monomial k is len - 1 - k
        let mons = monomials_up_to(nv, trunc);
        let len = mons.len();
        let index: HashMap<&Monomial, usize> = mons
            .iter()
            .enumerate()
            .map(|(k, m)| (m, len - 1 - k))
            .collect();
        let to_vec = |p: &Poly| {
            let mut v = vec![field.zero(); len];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        };
        let mut span = Subspace::zero(field, len);
        for g in ideal.gens() {
            let dg = g.degree().unwrap_or(0);
            for m in monomials_up_to(nv, trunc - dg) {
                span.insert(to_vec(&g.mul_monomial(&m)));
            }
        }
        let mut is_pivot = vec![false; len];
        for &p in span.pivots() {
            is_pivot[p] = true;
        }
        let covered = (0..=trunc).find(|&d| {
            mons.iter()
                .filter(|m| m.degree() == d)
                .all(|m| is_pivot[index[m]])
        });
        let Some(covered) = covered else {
            continue;
        };
        let basis: Vec<Monomial> = mons
            .iter()
            .filter(|m| m.degree() < covered && !is_pivot[index[*m]])
            .cloned()
            .collect();
        if let Some(q) = certify(ideal, &span, &index, basis, trunc)? {
            return Ok(q);
        }
    }
    Err(ModuleError::DegreeCapExceeded(degree_cap))
}

fn certify(
    ideal: &IdealGens,
    span: &Subspace,
    index: &HashMap<&Monomial, usize>,
    basis: Vec<Monomial>,
    degree: u32,
) -> Result<Option<QuotientRing>, ModuleError> {
    let field = ideal.field();
    let nv = ideal.nvars();
    let k = basis.len();
    let len = span.ambient();
    let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(j, m)| (index[m], j)).collect();
    let mut actions = Vec::with_capacity(nv);
    for i in 0..nv {
        let cols: Vec<Vector> = basis
            .iter()
            .map(|b| {
                let mut v = vec![field.zero(); len];
                v[index[&b.times_var(i)]] = field.one();
                let r = span.reduce(&v);
                let mut col = vec![field.zero(); k];
                for (c, x) in r.into_iter().enumerate() {
                    if !x.is_zero() {
                        col[pos[&c]] = x;
                    }
                }
                col
            })
            .collect();
        actions.push(DenseMatrix::from_columns(field, k, &cols));
    }
    let module = match FdModule::new(field, nv, k, actions) {
        Ok(m) => m,
        Err(ModuleError::NotCommuting { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if k > 0 {
        let one = module.unit_vector(0);
        for g in ideal.gens() {
            if super::nonzero(&module.apply_poly(g, &one)?) {
                return Ok(None);
            }
        }
        for (j, b) in basis.iter().enumerate() {
            let p = Poly::monomial(field, field.one(), b.clone());
            if module.apply_poly(&p, &one)? != module.unit_vector(j) {
                return Ok(None);
            }
        }
    }
    Ok(Some(QuotientRing {
        ideal: ideal.clone(),
        module,
        basis,
        degree,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn names(q: &QuotientRing) -> Vec<String> {
        q.basis()
            .iter()
            .map(|m| Poly::monomial(q.module().field(), q.module().field().one(), m.clone()).to_string())
            .collect()
    }

    #[test]
    fn monomial_quotients() {
        let f = FieldSpec::rational();
        let i = IdealGens::parse(f, 3, &["x", "y^2", "z"]).unwrap();
        let q = cyclic_quotient(&i, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(names(&q), ["1", "y"]);
        let m2 = IdealGens::maximal_power(f, 3, 2);
        let q2 = cyclic_quotient(&m2, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(names(&q2), ["1", "x", "y", "z"]);
    }

    #[test]
    fn curve_ideal_with_linear_generator() {
        let f = FieldSpec::prime(7).unwrap();
        let i = IdealGens::parse(f, 3, &["x*z - y^2", "x^3 - y*z", "x^2*y - z^2", "x"]).unwrap();
        let q = cyclic_quotient(&i, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(names(&q), ["1", "y", "z"]);
        for g in i.gens() {
            assert!(q.module().annihilates(g).unwrap());
        }
        assert_eq!(q.module().algebra_dimension(), 3);
    }

    #[test]
    fn non_monomial_ideal() {
        let f = FieldSpec::rational();
        // (x^2 - y, y^2) has colength 4 in two variables: 1, x, x^2, x^3
        let i = IdealGens::parse(f, 2, &["x^2 - y", "y^2"]).unwrap();
        let q = cyclic_quotient(&i, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(q.dim(), 4);
        let x4 = crate::poly::parse_poly("x^4", 2, f).unwrap();
        assert!(q.module().annihilates(&x4).unwrap());
        let x3 = crate::poly::parse_poly("x^3", 2, f).unwrap();
        assert!(!q.module().annihilates(&x3).unwrap());
    }

    #[test]
    fn unit_and_infinite_ideals() {
        let f = FieldSpec::rational();
        let unit = IdealGens::parse(f, 2, &["x + 1", "x"]).unwrap();
        assert_eq!(cyclic_quotient(&unit, 5).unwrap().dim(), 0);
        let line = IdealGens::parse(f, 2, &["x"]).unwrap();
        assert_eq!(cyclic_quotient(&line, 6), Err(ModuleError::DegreeCapExceeded(6)));
    }

    #[test]
    fn points_away_from_origin() {
        let f = FieldSpec::rational();
        // x(x - 1) = 0, y = 0: two points
        let i = IdealGens::parse(f, 2, &["x^2 - x", "y"]).unwrap();
        let q = cyclic_quotient(&i, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(!q.module().is_origin_supported());
        let nf = q.normal_form(&crate::poly::parse_poly("x^5 + y", 2, f).unwrap()).unwrap();
        assert_eq!(q.lift(&nf).to_string(), "x");
    }
}
