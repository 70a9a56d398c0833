use serde::{Deserialize, Serialize};

use super::{beta_to_extension, BetaDomain, BetaMap, ExtError, IdealGraph};
use crate::matrix::{DenseMatrix, Vector};
use crate::module::{annihilator, FdModule, ModuleError, QuotientRing, Subspace};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub value: usize,
}

fn term(name: &str, value: usize) -> Term {
    Term {
        name: name.to_string(),
        value,
    }
}

/// Outcome of one inequality `sum(lhs_terms) <= sum(rhs_terms)`, plus the
/// same question asked of the extension module as a cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub inequality: String,
    pub lhs_terms: Vec<Term>,
    pub rhs_terms: Vec<Term>,
    pub lhs: usize,
    pub rhs: usize,
    pub verdict: Verdict,
    /// Basis of the image subspace entering the left-hand side.
    pub witnesses: Vec<Vec<String>>,
    /// Degree `D` of the truncation used for annihilators.
    pub truncation_degree: u32,
    pub extension_dim: usize,
    pub extension_algebra_dim: usize,
    /// Whether the extension's algebra dimension agrees with the terms.
    pub consistent: bool,
}

impl InequalityReport {
    fn new(
        inequality: &str,
        lhs_terms: Vec<Term>,
        rhs_terms: Vec<Term>,
        witnesses: &Subspace,
        truncation_degree: u32,
    ) -> Self {
        let lhs = lhs_terms.iter().map(|t| t.value).sum();
        let rhs = rhs_terms.iter().map(|t| t.value).sum();
        InequalityReport {
            inequality: inequality.to_string(),
            lhs_terms,
            rhs_terms,
            lhs,
            rhs,
            verdict: if lhs > rhs {
                Verdict::Counterexample
            } else {
                Verdict::Holds
            },
            witnesses: witnesses
                .basis()
                .iter()
                .map(|v| v.iter().map(ToString::to_string).collect())
                .collect(),
            truncation_degree,
            extension_dim: 0,
            extension_algebra_dim: 0,
            consistent: true,
        }
    }

    pub fn is_counterexample(&self) -> bool {
        self.verdict == Verdict::Counterexample
    }

    /// `3 + 2 > 3 + 1` style summary.
    pub fn summary(&self) -> String {
        let join = |ts: &[Term]| {
            ts.iter()
                .map(|t| t.value.to_string())
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let op = if self.is_counterexample() { ">" } else { "<=" };
        format!("{} {op} {}", join(&self.lhs_terms), join(&self.rhs_terms))
    }
}

fn not_origin(e: ModuleError) -> ExtError {
    match e {
        ModuleError::NotOriginSupported => ExtError::NotOriginSupported,
        other => ExtError::Module(other),
    }
}

/// `dim S/ann M + dim b(ann M) <= dim M + 1` for `b: m -> M`.
///
/// `b(ann M)` is spanned by the images of the truncated annihilator basis.
/// Cross-check: the extension `N` has `ann N = ann M ∩ m ∩ ker b`, so its
/// algebra dimension must be `dim S/(ann M ∩ m) + dim b(ann M ∩ m)`.
pub fn counterexample_check(beta: &BetaMap) -> Result<InequalityReport, ExtError> {
    if beta.domain() != &BetaDomain::Maximal {
        return Err(ExtError::NeedsMaximalDomain);
    }
    beta.validate()?;
    let m = beta.target();
    let ann = annihilator(m).map_err(not_origin)?;
    let image = if m.dim() == 0 {
        Subspace::zero(m.field(), 0)
    } else {
        let imgs = ann
            .ann_basis
            .iter()
            .map(|p| beta.apply(p))
            .collect::<Result<Vec<Vector>, _>>()?;
        Subspace::span(m.field(), m.dim(), imgs)
    };
    let mut report = InequalityReport::new(
        "dim S/ann(M) + dim b(ann M) <= dim M + 1",
        vec![
            term("dim S/ann(M)", ann.quotient_dim),
            term("dim b(ann M)", image.dim()),
        ],
        vec![term("dim M", m.dim()), term("1", 1)],
        &image,
        ann.stabilization_degree,
    );
    let ext = beta_to_extension(beta)?;
    report.extension_dim = ext.total.dim();
    report.extension_algebra_dim = ext.total.algebra_dimension();
    let expected = if m.dim() == 0 {
        1
    } else {
        ann.quotient_dim + image.dim()
    };
    report.consistent = report.extension_algebra_dim == expected
        && report.is_counterexample() == (report.extension_algebra_dim > report.extension_dim);
    Ok(report)
}

/// For `M = S/I`: the pair is a counterexample iff `dim b(I) >= 2`. `b(I)`
/// is generated by the images of the generators of `I`.
pub fn cyclic_counterexample_check(ring: &QuotientRing, beta: &BetaMap) -> Result<InequalityReport, ExtError> {
    let ideal = ring.ideal();
    if ring.module() != beta.target() {
        return Err(ExtError::TargetMismatch);
    }
    let m = beta.target();
    if !m.is_origin_supported() {
        return Err(ExtError::NotOriginSupported);
    }
    let image = if m.dim() == 0 {
        Subspace::zero(m.field(), 0)
    } else {
        let imgs = ideal
            .gens()
            .iter()
            .map(|g| beta.apply(g))
            .collect::<Result<Vec<Vector>, _>>()?;
        m.submodule_generated(imgs)
    };
    let general = counterexample_check(beta)?;
    let mut report = InequalityReport::new(
        "dim b(I) <= 1",
        vec![term("dim b(I)", image.dim())],
        vec![term("1", 1)],
        &image,
        general.truncation_degree,
    );
    report.extension_dim = general.extension_dim;
    report.extension_algebra_dim = general.extension_algebra_dim;
    report.consistent = general.consistent && general.verdict == report.verdict;
    Ok(report)
}

/// `dim J/(J ∩ ann M) + dim b(J ∩ ann M) <= dim M` for `b: J -> M`.
///
/// Everything happens in `R = S/(m^c J)`: `J ∩ ann M` becomes the
/// intersection of `J/(m^c J)` with the kernel of `R -> End(M)`.
/// Cross-check: the extension has algebra dimension
/// `dim S/J + dim J/(J ∩ ann M) + dim b(J ∩ ann M)`.
pub fn inequality_j(beta: &BetaMap) -> Result<InequalityReport, ExtError> {
    let ideal_map = beta.as_ideal_map();
    let graph = IdealGraph::new(&ideal_map)?;
    let m = beta.target();
    let field = m.field();
    let ring = graph.ring();
    let cols: Vec<Vector> = ring
        .basis()
        .iter()
        .map(|b| {
            let p = Poly::monomial(field, field.one(), b.clone());
            m.poly_matrix(&p).map(|a| a.entries().to_vec())
        })
        .collect::<Result<_, _>>()?;
    let eval = DenseMatrix::from_columns(field, m.dim() * m.dim(), &cols);
    let kbar = Subspace::span(field, ring.dim(), eval.kernel_basis());
    let meet = graph.jbar().intersection(&kbar);
    let imgs = meet
        .basis()
        .iter()
        .map(|v| graph.value_on(v))
        .collect::<Result<Vec<_>, _>>()?;
    let image = Subspace::span(field, m.dim(), imgs);
    let colength = graph.jbar().dim() - meet.dim();
    let mut report = InequalityReport::new(
        "dim J/(J ∩ ann M) + dim b(J ∩ ann M) <= dim M",
        vec![
            term("dim J/(J ∩ ann M)", colength),
            term("dim b(J ∩ ann M)", image.dim()),
        ],
        vec![term("dim M", m.dim())],
        &image,
        m.nilpotency_degree().unwrap_or(0) as u32,
    );
    let ext = graph.extension();
    report.extension_dim = ext.total.dim();
    report.extension_algebra_dim = ext.total.algebra_dimension();
    report.consistent = report.extension_algebra_dim == graph.quotient_dim() + report.lhs
        && report.is_counterexample() == (report.extension_algebra_dim > report.extension_dim);
    Ok(report)
}

/// Premise: the inequality for `b` viewed as a map into `M'`.
/// Conclusion: the inequality for `b` into `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductiveStep {
    pub premise: InequalityReport,
    pub conclusion: InequalityReport,
    /// Premise holds while the conclusion fails.
    pub step_fails: bool,
}

/// Compare the inequality for a map into a codimension-one submodule `M'`
/// with the inequality for the same map into `M`.
pub fn inductive_step_check(
    module: &FdModule,
    sub: &Subspace,
    beta: &BetaMap,
) -> Result<InductiveStep, ExtError> {
    if beta.target() != module {
        return Err(ExtError::TargetMismatch);
    }
    module.check_submodule(sub)?;
    if module.dim() != sub.dim() + 1 {
        return Err(ExtError::CodimNotOne {
            dim: module.dim(),
            sub_dim: sub.dim(),
        });
    }
    let mut coords = Vec::new();
    for (index, v) in beta.images().iter().enumerate() {
        coords.push(
            sub.coordinates(v)
                .ok_or(ExtError::ImageOutsideSubmodule { index })?,
        );
    }
    let restricted = module.restrict(sub)?;
    let inner = match beta.domain() {
        BetaDomain::Maximal => BetaMap::on_maximal(restricted, coords)?,
        BetaDomain::Ideal(j) => BetaMap::on_ideal(restricted, j.clone(), coords)?,
    };
    let premise = inequality_j(&inner)?;
    let conclusion = inequality_j(beta)?;
    let step_fails = !premise.is_counterexample() && conclusion.is_counterexample();
    Ok(InductiveStep {
        premise,
        conclusion,
        step_fails,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::module::{cyclic_quotient, DEFAULT_DEGREE_CAP};
    use crate::poly::IdealGens;

    fn ring(f: FieldSpec, n: usize, gens: &[&str]) -> QuotientRing {
        cyclic_quotient(&IdealGens::parse(f, n, gens).unwrap(), DEFAULT_DEGREE_CAP).unwrap()
    }

    fn quotient(f: FieldSpec, n: usize, gens: &[&str]) -> FdModule {
        cyclic_quotient(&IdealGens::parse(f, n, gens).unwrap(), DEFAULT_DEGREE_CAP)
            .unwrap()
            .into_module()
    }

    fn four_matrix(f: FieldSpec) -> (QuotientRing, BetaMap) {
        let i = ring(f, 4, &["x", "y", "z^2", "z*w", "w^2"]);
        let m = i.module().clone();
        let images = vec![m.unit_vector(1), m.unit_vector(2), m.zero_vector(), m.zero_vector()];
        (i, BetaMap::on_maximal(m, images).unwrap())
    }

    #[test]
    fn four_matrix_counterexample_terms() {
        for f in [FieldSpec::rational(), FieldSpec::prime(2).unwrap()] {
            let (i, beta) = four_matrix(f);
            let r = counterexample_check(&beta).unwrap();
            assert_eq!(r.lhs_terms[0].value, 3);
            assert_eq!(r.lhs_terms[1].value, 2);
            assert_eq!((r.lhs, r.rhs), (5, 4));
            assert_eq!((r.extension_dim, r.extension_algebra_dim), (4, 5));
            assert!(r.is_counterexample());
            assert!(r.consistent);
            assert_eq!(r.summary(), "3 + 2 > 3 + 1");
            let c = cyclic_counterexample_check(&i, &beta).unwrap();
            assert_eq!(c.lhs, 2);
            assert!(c.is_counterexample() && c.consistent);
        }
    }

    #[test]
    fn five_example_holds() {
        let q = FieldSpec::rational();
        let i = ring(q, 3, &["x", "y^2", "z"]);
        let m = i.module().clone();
        let beta = BetaMap::on_maximal(m.clone(), vec![m.unit_vector(1), m.zero_vector(), m.zero_vector()]).unwrap();
        let c = cyclic_counterexample_check(&i, &beta).unwrap();
        assert_eq!(c.lhs, 1);
        assert!(!c.is_counterexample());
        let zero = BetaMap::zero(m, BetaDomain::Maximal);
        let z = cyclic_counterexample_check(&i, &zero).unwrap();
        assert_eq!(z.lhs, 0);
        let r = counterexample_check(&zero).unwrap();
        // cyclic modules hold with slack one when b = 0
        assert_eq!(r.lhs + 1, r.rhs);
    }

    #[test]
    fn ideal_inequality_on_maximal_ideal_matches() {
        let (_, beta) = four_matrix(FieldSpec::rational());
        let general = counterexample_check(&beta).unwrap();
        let j = inequality_j(&beta).unwrap();
        assert_eq!(j.verdict, general.verdict);
        // dim m/(m ∩ ann M) = dim S/ann M - 1 for nonzero M
        assert_eq!(j.lhs_terms[0].value + 1, general.lhs_terms[0].value);
        assert_eq!(j.lhs_terms[1].value, general.lhs_terms[1].value);
        assert!(j.consistent);
    }

    #[test]
    fn ideal_inequality_examples() {
        let q = FieldSpec::rational();
        let j = IdealGens::parse(q, 3, &["x", "y^2", "z"]).unwrap();
        let k = FdModule::residue_field(q, 3);
        let beta = BetaMap::zero(k, BetaDomain::Ideal(j));
        let r = inequality_j(&beta).unwrap();
        assert_eq!((r.lhs, r.rhs), (0, 1));
        let m2 = IdealGens::maximal_power(q, 3, 2);
        let m = quotient(q, 3, &["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"]);
        let beta = BetaMap::zero(m, BetaDomain::Ideal(m2));
        let r = inequality_j(&beta).unwrap();
        assert_eq!(r.lhs_terms[0].value, 0);
        assert!(!r.is_counterexample() && r.consistent);
    }

    #[test]
    fn inductive_step_examples() {
        let q = FieldSpec::rational();
        let m = quotient(q, 3, &["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"]);
        let sub = m.radical_image();
        let beta = BetaMap::zero(m.clone(), BetaDomain::Maximal);
        let step = inductive_step_check(&m, &sub, &beta).unwrap();
        assert_eq!((step.premise.lhs, step.premise.rhs), (0, 3));
        assert_eq!((step.conclusion.lhs, step.conclusion.rhs), (3, 4));
        assert!(!step.step_fails);

        let n = crate::module::tests::e_matrices(q);
        let e3 = n.unit_vector(2);
        let sub = n.submodule_generated([e3]);
        assert_eq!(sub.dim(), 3);
        let beta = BetaMap::zero(n.clone(), BetaDomain::Maximal);
        let step = inductive_step_check(&n, &sub, &beta).unwrap();
        assert_eq!((step.conclusion.lhs, step.conclusion.rhs), (4, 4));
        assert!(!step.conclusion.is_counterexample());
        assert!(!step.premise.is_counterexample());

        let k = FdModule::residue_field(q, 3);
        let kk = k.direct_sum(&k).unwrap();
        let beta = BetaMap::zero(kk.clone(), BetaDomain::Maximal);
        assert!(matches!(
            inductive_step_check(&kk, &Subspace::zero(q, 2), &beta),
            Err(ExtError::CodimNotOne { .. })
        ));
    }
}
