use std::collections::HashMap;

use super::{FdModule, ModuleError, Subspace};
use crate::matrix::DenseMatrix;
use crate::poly::{monomials_up_to, Monomial, Poly};

/// Annihilator of an origin-supported module, truncated at the nilpotency
/// degree `c`.
///
/// If `p` annihilates `N`, its part of degree above `c` lies in `m^(c+1)`,
/// which kills `N` already, so `ann(N)` is `ann(N) ∩ V_c` plus `m^(c+1)`.
/// For the same reason a map `b: m -> N` sends `ann(N)` onto the span of the
/// images of `ann(N) ∩ V_c`: `b(m^(c+1)) ⊆ m^c N = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnData {
    pub nilpotency_degree: usize,
    /// Degree `D` of the truncation `V_D`; equal to the nilpotency degree.
    pub stabilization_degree: u32,
    /// Basis of `ann(N) ∩ V_D`: one element per monomial that is not a
    /// pivot of the evaluation map, each monic in its leading monomial.
    pub ann_basis: Vec<Poly>,
    /// `dim S/ann(N)`.
    pub quotient_dim: usize,
}

/// Annihilator data via the kernel of `V_c -> End(N)`.
pub fn annihilator(n: &FdModule) -> Result<AnnData, ModuleError> {
    let c = n.nilpotency_degree().ok_or(ModuleError::NotOriginSupported)?;
    let field = n.field();
    let d = n.dim();
    let nv = n.nvars();
    let mons = monomials_up_to(nv, c as u32);
    let mut mats: HashMap<Monomial, DenseMatrix> = HashMap::new();
    let mut cols = Vec::with_capacity(mons.len());
    for m in &mons {
        let mat = match m.first_var() {
            None => DenseMatrix::identity(field, d),
            Some(i) => {
                let rest = m.div_var(i).expect("divisible");
                n.action(i).mul(&mats[&rest]).expect("square")
            }
        };
        cols.push(mat.entries().to_vec());
        mats.insert(m.clone(), mat);
    }
    let eval = DenseMatrix::from_columns(field, d * d, &cols);
    let kernel = eval.kernel_basis();
    let ann_basis = kernel
        .into_iter()
        .map(|v| {
            Poly::from_terms(
                field,
                nv,
                v.into_iter().zip(mons.iter().cloned()),
            )
        })
        .collect::<Vec<_>>();
    let quotient_dim = mons.len() - ann_basis.len();
    Ok(AnnData {
        nilpotency_degree: c,
        stabilization_degree: c as u32,
        ann_basis,
        quotient_dim,
    })
}

impl AnnData {
    /// A small generating set: together with `m^(D+1)` these generate
    /// `ann(N)`. Chosen greedily in increasing leading monomial, skipping
    /// anything already in the ideal generated so far, computed modulo
    /// `m^(D+1)`.
    pub fn ideal_generators(&self) -> Vec<Poly> {
        let Some(first) = self.ann_basis.first() else {
            return Vec::new();
        };
        let field = first.field();
        let nv = first.nvars();
        let dd = self.stabilization_degree;
        let mons = monomials_up_to(nv, dd);
        let index: HashMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_vec = |p: &Poly| {
            let mut v = vec![field.zero(); mons.len()];
            for (m, c) in p.terms() {
                if let Some(&i) = index.get(m) {
                    v[i] = c.clone();
                }
            }
            v
        };
        let mut sorted: Vec<&Poly> = self.ann_basis.iter().collect();
        sorted.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        let mut span = Subspace::zero(field, mons.len());
        let mut gens = Vec::new();
        for g in sorted {
            if span.contains(&to_vec(g)) {
                continue;
            }
            let dg = g.degree().unwrap_or(0);
            for m in monomials_up_to(nv, dd.saturating_sub(dg)) {
                span.insert(to_vec(&g.mul_monomial(&m)));
            }
            gens.push(g.clone());
        }
        gens
    }

    /// Membership in `ann(N) ∩ V_D` by linear algebra on the basis.
    pub fn span_contains(&self, p: &Poly) -> bool {
        if p.degree().is_some_and(|dg| dg > self.stabilization_degree) {
            return false;
        }
        let Some(first) = self.ann_basis.first() else {
            return p.is_zero();
        };
        let mons = monomials_up_to(first.nvars(), self.stabilization_degree);
        let field = first.field();
        let to_vec = |p: &Poly| mons.iter().map(|m| p.coeff(m)).collect::<Vec<_>>();
        let span = Subspace::span(field, mons.len(), self.ann_basis.iter().map(to_vec));
        span.contains(&to_vec(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::parse_poly;

    #[test]
    fn residue_field_annihilator_is_maximal_ideal() {
        let q = FieldSpec::rational();
        let k = FdModule::residue_field(q, 3);
        let a = annihilator(&k).unwrap();
        assert_eq!(a.quotient_dim, 1);
        assert_eq!(a.nilpotency_degree, 1);
        let gens: Vec<String> = a.ideal_generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(gens, ["x", "y", "z"]);
    }

    #[test]
    fn four_variable_module_has_square_of_maximal_ideal() {
        let q = FieldSpec::rational();
        let n = super::super::tests::e_matrices(q);
        let a = annihilator(&n).unwrap();
        assert_eq!(a.quotient_dim, 5);
        assert_eq!(a.nilpotency_degree, 2);
        let gens = a.ideal_generators();
        assert_eq!(gens.len(), 10);
        assert!(gens.iter().all(|g| g.degree() == Some(2)));
        for g in &a.ann_basis {
            assert!(n.annihilates(g).unwrap());
        }
        assert!(a.span_contains(&parse_poly("x*y + z^2", 4, q).unwrap()));
        assert!(!a.span_contains(&parse_poly("x", 4, q).unwrap()));
    }

    #[test]
    fn non_nilpotent_is_refused() {
        let q = FieldSpec::rational();
        let m = FdModule::from_matrices(q, vec![DenseMatrix::identity(q, 2)]).unwrap();
        assert_eq!(annihilator(&m), Err(ModuleError::NotOriginSupported));
    }
}
