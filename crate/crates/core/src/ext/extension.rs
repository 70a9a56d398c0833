use super::{BetaDomain, BetaMap, ExtError};
use crate::field::Scalar;
use crate::matrix::{DenseMatrix, Vector};
use crate::module::{
    cyclic_quotient, project_onto_quotient, FdModule, QuotientRing, Subspace,
    DEFAULT_DEGREE_CAP,
};
use crate::poly::Poly;

/// `0 -> M -> N -> S/J -> 0`. The basis of `N` starts with the basis of
/// `M`, so `inclusion` is the identity on top of zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionResult {
    pub total: FdModule,
    pub inclusion: DenseMatrix,
    /// `dim S/J`.
    pub quotient_dim: usize,
}

fn inclusion_matrix(field: crate::field::FieldSpec, total: usize, sub: usize) -> DenseMatrix {
    let mut inc = DenseMatrix::zeros(field, total, sub);
    for i in 0..sub {
        inc[(i, i)] = field.one();
    }
    inc
}

/// The extension of `S/m` (or `S/J`) by `M` defined by `b`.
///
/// On `m` this is the block form: one new basis vector `f` with
/// `x_i f = b(x_i)`. On an ideal the extension is `(R ⊕ M)/Γ` where `Γ` is
/// the graph described at [`IdealGraph`].
pub fn beta_to_extension(beta: &BetaMap) -> Result<ExtensionResult, ExtError> {
    let m = beta.target();
    if !m.is_origin_supported() {
        return Err(ExtError::NotOriginSupported);
    }
    match beta.domain() {
        BetaDomain::Maximal => {
            beta.validate()?;
            let field = m.field();
            let d = m.dim();
            let actions = m
                .actions()
                .iter()
                .zip(beta.images())
                .map(|(a, f)| {
                    let mut b = DenseMatrix::zeros(field, d + 1, d + 1);
                    for r in 0..d {
                        for c in 0..d {
                            b[(r, c)] = a[(r, c)].clone();
                        }
                        b[(r, d)] = f[r].clone();
                    }
                    b
                })
                .collect();
            let total = FdModule::new(field, m.nvars(), d + 1, actions)?;
            Ok(ExtensionResult {
                inclusion: inclusion_matrix(field, d + 1, d),
                total,
                quotient_dim: 1,
            })
        }
        BetaDomain::Ideal(_) => Ok(IdealGraph::new(beta)?.extension()),
    }
}

/// A map `b: J -> M` seen through `R = S/(m^c J)`, where `m^c M = 0`.
///
/// Since `b(m^c J) = m^c b(J) = 0`, `b` factors through
/// `J/m^c J`, a submodule of `R`. Inside `R ⊕ M` the submodule `Γ`
/// generated by `(q_j, -b(q_j))` meets `0 ⊕ M` trivially exactly when the
/// images are compatible with every relation among the `q_j`; then
/// `b(p)` is read off by reducing `(p, 0)` modulo `Γ`, and `(R ⊕ M)/Γ` is
/// the extension. Requires `J` of finite colength.
#[derive(Debug, Clone)]
pub struct IdealGraph {
    ring: QuotientRing,
    target: FdModule,
    jbar: Subspace,
    graph: Subspace,
    sum: FdModule,
}

impl IdealGraph {
    pub fn new(beta: &BetaMap) -> Result<Self, ExtError> {
        Self::with_cap(beta, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(beta: &BetaMap, degree_cap: u32) -> Result<Self, ExtError> {
        let target = beta.target().clone();
        let c = target.nilpotency_degree().ok_or(ExtError::NotOriginSupported)?;
        let j = beta.domain_ideal();
        let ring = cyclic_quotient(&j.times_maximal_power(c as u32), degree_cap)?;
        let sum = ring.module().direct_sum(&target)?;
        let dr = ring.dim();
        let mut gens = Vec::new();
        let mut nfs = Vec::new();
        for (q, img) in j.gens().iter().zip(beta.images()) {
            let nf = ring.normal_form(q)?;
            let mut v = nf.clone();
            v.extend(img.iter().map(|x| -x));
            nfs.push(nf);
            gens.push(v);
        }
        let jbar = ring.module().submodule_generated(nfs);
        let graph = sum.submodule_generated(gens);
        if graph.dim() != jbar.dim() {
            let target_part = Subspace::span(
                target.field(),
                dr + target.dim(),
                (0..target.dim()).map(|k| sum.unit_vector(dr + k)),
            );
            let bad = graph.intersection(&target_part);
            let witness = bad.basis()[0][dr..].to_vec();
            return Err(ExtError::IllDefined { witness });
        }
        Ok(IdealGraph {
            ring,
            target,
            jbar,
            graph,
            sum,
        })
    }

    /// `R = S/(m^c J)`.
    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// `J/(m^c J)` inside `R`.
    pub fn jbar(&self) -> &Subspace {
        &self.jbar
    }

    /// `dim S/J`.
    pub fn quotient_dim(&self) -> usize {
        self.ring.dim() - self.jbar.dim()
    }

    /// `b` on an element of `J/(m^c J)` given in the coordinates of `R`.
    pub fn value_on(&self, r: &[Scalar]) -> Result<Vector, ExtError> {
        if !self.jbar.contains(r) {
            return Err(ExtError::NotInDomain("class outside J".into()));
        }
        let mut v = r.to_vec();
        v.extend(self.target.zero_vector());
        let red = self.graph.reduce(&v);
        Ok(red[self.ring.dim()..].to_vec())
    }

    pub fn apply(&self, p: &Poly) -> Result<Vector, ExtError> {
        let nf = self.ring.normal_form(p)?;
        self.value_on(&nf).map_err(|e| match e {
            ExtError::NotInDomain(_) => ExtError::NotInDomain(p.to_string()),
            other => other,
        })
    }

    /// `(R ⊕ M)/Γ`, with the basis of `M` first and then the classes of
    /// the standard monomials of `R` that are not leading terms of `Γ`.
    pub fn extension(&self) -> ExtensionResult {
        let field = self.target.field();
        let quo = self
            .sum
            .quotient_by_submodule(&self.graph)
            .expect("graph is a submodule");
        let dm = self.target.dim();
        let tail = quo.dim() - dm;
        // quotient coordinates: free R coordinates, then all of M
        let perm: Vec<usize> = (tail..tail + dm).chain(0..tail).collect();
        let actions: Vec<DenseMatrix> = quo
            .actions()
            .iter()
            .map(|a| {
                let mut b = DenseMatrix::zeros(field, quo.dim(), quo.dim());
                for (r, &pr) in perm.iter().enumerate() {
                    for (c, &pc) in perm.iter().enumerate() {
                        b[(r, c)] = a[(pr, pc)].clone();
                    }
                }
                b
            })
            .collect();
        let total = FdModule::new(field, self.target.nvars(), quo.dim(), actions)
            .expect("quotient of a module");
        ExtensionResult {
            inclusion: inclusion_matrix(field, total.dim(), dm),
            total,
            quotient_dim: tail,
        }
    }

    /// Image in the extension of an element of `R ⊕ M`.
    pub fn project(&self, v: &[Scalar]) -> Vector {
        let q = project_onto_quotient(&self.graph, v);
        let dm = self.target.dim();
        let tail = q.len() - dm;
        q[tail..].iter().chain(&q[..tail]).cloned().collect()
    }
}
