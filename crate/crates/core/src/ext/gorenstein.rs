use super::{BetaDomain, BetaMap, ExtError};
use crate::matrix::{DenseMatrix, Vector};

/// Find `r` with `x_i r = g(x_i)` for `i = 1, 2, 3`, i.e. write `g` as the
/// coboundary of `r`. `None` when the system is inconsistent. The answer is
/// the first solution of the echelon form; any two differ by an element of
/// the socle.
pub fn gorenstein_divisibility_solve(gamma: &BetaMap) -> Result<Option<Vector>, ExtError> {
    let m = gamma.target();
    if m.nvars() != 3 {
        return Err(ExtError::WrongArity(m.nvars()));
    }
    if gamma.domain() != &BetaDomain::Maximal {
        return Err(ExtError::NeedsMaximalDomain);
    }
    if !m.is_origin_supported() {
        return Err(ExtError::NotOriginSupported);
    }
    let soc = m.socle().dim();
    if soc != 1 {
        return Err(ExtError::NotGorenstein(soc));
    }
    let refs: Vec<&DenseMatrix> = m.actions().iter().collect();
    let stacked = DenseMatrix::vstack(m.field(), m.dim(), &refs);
    let rhs: Vector = gamma.images().concat();
    Ok(stacked.solve(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::module::{cyclic_quotient, DEFAULT_DEGREE_CAP};
    use crate::poly::{parse_poly, IdealGens};

    fn ring(f: FieldSpec) -> crate::module::QuotientRing {
        let i = IdealGens::parse(f, 3, &["x^2", "y^2", "z^2"]).unwrap();
        cyclic_quotient(&i, DEFAULT_DEGREE_CAP).unwrap()
    }

    #[test]
    fn planted_solution_round_trips() {
        for f in [FieldSpec::rational(), FieldSpec::prime(7).unwrap()] {
            let q = ring(f);
            let m = q.module().clone();
            let r = q.normal_form(&parse_poly("x + y*z", 3, f).unwrap()).unwrap();
            let gamma = BetaMap::coboundary(m.clone(), BetaDomain::Maximal, &r).unwrap();
            let found = gorenstein_divisibility_solve(&gamma).unwrap().unwrap();
            let again = BetaMap::coboundary(m, BetaDomain::Maximal, &found).unwrap();
            assert_eq!(again, gamma);
        }
    }

    #[test]
    fn zero_and_unsolvable() {
        let f = FieldSpec::rational();
        let q = ring(f);
        let m = q.module().clone();
        let zero = BetaMap::zero(m.clone(), BetaDomain::Maximal);
        let r = gorenstein_divisibility_solve(&zero).unwrap().unwrap();
        assert!(crate::matrix::is_zero_vector(&r));
        let y = q.normal_form(&parse_poly("y", 3, f).unwrap()).unwrap();
        let gamma = BetaMap::on_maximal(m.clone(), vec![y, m.zero_vector(), m.zero_vector()]).unwrap();
        assert_eq!(gorenstein_divisibility_solve(&gamma).unwrap(), None);
    }

    #[test]
    fn preconditions() {
        let f = FieldSpec::rational();
        let m2 = cyclic_quotient(&IdealGens::maximal_power(f, 3, 2), DEFAULT_DEGREE_CAP)
            .unwrap()
            .into_module();
        let beta = BetaMap::zero(m2, BetaDomain::Maximal);
        assert_eq!(gorenstein_divisibility_solve(&beta), Err(ExtError::NotGorenstein(3)));
        let k4 = crate::module::FdModule::residue_field(f, 4);
        let beta = BetaMap::zero(k4, BetaDomain::Maximal);
        assert_eq!(gorenstein_divisibility_solve(&beta), Err(ExtError::WrongArity(4)));
    }
}
