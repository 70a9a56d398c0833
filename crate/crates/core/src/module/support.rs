use super::{roots::univariate_roots, FdModule, ModuleError, Subspace};
use crate::field::Scalar;
use crate::matrix::Vector;

/// A point of `k^n` where the module is supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPoint(pub Vec<Scalar>);

impl SupportPoint {
    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

/// One summand of the decomposition by support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportComponent {
    pub point: SupportPoint,
    /// The summand as a subspace of the original module.
    pub subspace: Subspace,
    /// The summand as a module, in the coordinates of `subspace`.
    pub module: FdModule,
}

impl SupportComponent {
    /// The summand translated so that it is supported at the origin.
    pub fn localized(&self) -> FdModule {
        self.module.translate(&self.point.0)
    }
}

impl FdModule {
    /// Split into common generalized eigenspaces, one variable at a time.
    /// Components come in the order of their points, compared coordinate by
    /// coordinate.
    pub fn support_split(&self) -> Result<Vec<SupportComponent>, ModuleError> {
        if self.dim() == 0 {
            return Ok(Vec::new());
        }
        let mut parts: Vec<(Vec<Scalar>, Subspace)> =
            vec![(Vec::new(), Subspace::full(self.field(), self.dim()))];
        for var in 0..self.nvars() {
            let mut next = Vec::new();
            for (point, w) in parts {
                let sub = self.restrict(&w)?;
                let a = sub.action(var);
                let roots = univariate_roots(self.field(), &a.charpoly()).ok_or_else(|| {
                    ModuleError::NonSplitSupport {
                        field: self.field(),
                        detail: format!("could not find the eigenvalues of action {var}"),
                    }
                })?;
                let lift = w.basis_matrix();
                let mut found = 0;
                for r in roots {
                    let gen_kernel = a.shift(&r).pow(sub.dim() as u32).kernel_basis();
                    found += gen_kernel.len();
                    let vecs = gen_kernel.iter().map(|k| lift.mul_vec(k));
                    let piece = Subspace::span(self.field(), self.dim(), vecs);
                    let mut p = point.clone();
                    p.push(r);
                    next.push((p, piece));
                }
                if found < w.dim() {
                    return Err(ModuleError::NonSplitSupport {
                        field: self.field(),
                        detail: format!(
                            "action {var} has an irreducible factor of degree > 1 on a summand of dimension {}",
                            w.dim()
                        ),
                    });
                }
            }
            parts = next;
        }
        parts
            .into_iter()
            .map(|(point, subspace)| {
                Ok(SupportComponent {
                    module: self.restrict(&subspace)?,
                    point: SupportPoint(point),
                    subspace,
                })
            })
            .collect()
    }

    /// A generator if the module is cyclic: every local summand needs
    /// exactly one generator (`dim N_p / m_p N_p = 1`), and the sum of
    /// local generators generates the whole module.
    pub fn cyclic_generator(&self) -> Result<Option<Vector>, ModuleError> {
        let mut generator = self.zero_vector();
        for comp in self.support_split()? {
            let local = comp.localized();
            let rad = local.radical_image();
            if local.dim() - rad.dim() != 1 {
                return Ok(None);
            }
            let f = rad.free_coordinates()[0];
            let lifted = comp.subspace.basis_matrix().mul_vec(&local.unit_vector(f));
            for (g, x) in generator.iter_mut().zip(&lifted) {
                *g = &*g + x;
            }
        }
        Ok(Some(generator))
    }

    pub fn is_cyclic(&self) -> Result<bool, ModuleError> {
        Ok(self.cyclic_generator()?.is_some())
    }
}

/// Reassemble components into one module (block diagonal).
pub fn reassemble(components: &[SupportComponent]) -> Option<FdModule> {
    let mut it = components.iter();
    let first = it.next()?.module.clone();
    Some(it.fold(first, |acc, c| acc.direct_sum(&c.module).expect("same ring")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::matrix::DenseMatrix;
    use crate::module::{cyclic_quotient, DEFAULT_DEGREE_CAP};
    use crate::poly::IdealGens;

    #[test]
    fn origin_supported_is_one_component() {
        let q = FieldSpec::rational();
        let n = crate::module::tests::e_matrices(q);
        let parts = n.support_split().unwrap();
        assert_eq!(parts.len(), 1);
        assert!(parts[0].point.is_origin());
        assert_eq!(parts[0].module.dim(), 4);
    }

    #[test]
    fn diagonal_splits_into_points() {
        let q = FieldSpec::rational();
        let m = FdModule::from_matrices(q, vec![DenseMatrix::from_i64(q, &[&[0, 0], &[0, 1]])]).unwrap();
        let parts = m.support_split().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].point.0, vec![q.zero()]);
        assert_eq!(parts[1].point.0, vec![q.one()]);
        assert!(parts.iter().all(|c| c.module.dim() == 1));
        assert_eq!(reassemble(&parts).unwrap().algebra_dimension(), m.algebra_dimension());
    }

    #[test]
    fn irreducible_quadratic_does_not_split() {
        let f3 = FieldSpec::prime(3).unwrap();
        let companion = DenseMatrix::from_i64(f3, &[&[0, -1], &[1, 0]]);
        let m = FdModule::from_matrices(f3, vec![companion]).unwrap();
        assert!(matches!(m.support_split(), Err(ModuleError::NonSplitSupport { .. })));
        assert!(m.is_cyclic().is_err());
    }

    #[test]
    fn cyclicity() {
        let q = FieldSpec::rational();
        let i = IdealGens::parse(q, 3, &["x", "y^2", "z"]).unwrap();
        let m = cyclic_quotient(&i, DEFAULT_DEGREE_CAP).unwrap().into_module();
        assert!(m.is_cyclic().unwrap());
        let k = FdModule::residue_field(q, 3);
        assert!(!k.direct_sum(&k).unwrap().is_cyclic().unwrap());
        assert!(!crate::module::tests::e_matrices(q).is_cyclic().unwrap());
        // two distinct points: k[x]/(x(x-1)) is cyclic even though it is
        // S/m ⊕ S/m' as a vector space
        let i2 = IdealGens::parse(q, 1, &["x^2 - x"]).unwrap();
        let m2 = cyclic_quotient(&i2, DEFAULT_DEGREE_CAP).unwrap().into_module();
        let g = m2.cyclic_generator().unwrap().unwrap();
        assert_eq!(m2.submodule_generated([g]).dim(), 2);
    }
}
