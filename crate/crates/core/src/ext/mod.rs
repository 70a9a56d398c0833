//! Module maps out of `m` or an ideal `J`, the extensions they define, and
//! the inequalities relating annihilators and images.

mod extension;
mod gorenstein;
mod inequality;

use thiserror::Error;

use crate::field::Scalar;
use crate::matrix::{DenseMatrix, Vector};
use crate::module::{FdModule, ModuleError};
use crate::poly::{IdealGens, Poly, PolyError};

pub use extension::{beta_to_extension, ExtensionResult, IdealGraph};
pub use gorenstein::gorenstein_divisibility_solve;
pub use inequality::{
    counterexample_check, cyclic_counterexample_check, inductive_step_check, inequality_j,
    InductiveStep, InequalityReport, Term, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("module is not supported at the origin")]
    NotOriginSupported,
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image {index} has length {got}, the module has dimension {dim}")]
    ImageLength { index: usize, got: usize, dim: usize },
    #[error("x{i} * b(x{j}) - x{j} * b(x{i}) is nonzero")]
    Incompatible { i: usize, j: usize, witness: Vector },
    #[error("images are not compatible with the relations among the generators of J")]
    IllDefined { witness: Vector },
    #[error("polynomial is not in the domain ideal: {0}")]
    NotInDomain(String),
    #[error("submodule must have codimension one, got dimensions {dim} and {sub_dim}")]
    CodimNotOne { dim: usize, sub_dim: usize },
    #[error("image {index} lies outside the submodule")]
    ImageOutsideSubmodule { index: usize },
    #[error("module is not Gorenstein: socle dimension {0}")]
    NotGorenstein(usize),
    #[error("expected a map defined on the maximal ideal")]
    NeedsMaximalDomain,
    #[error("map target differs from the quotient by the given ideal")]
    TargetMismatch,
    #[error("expected 3 variables, got {0}")]
    WrongArity(usize),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Source of a module map: the maximal ideal at the origin or an ideal
/// given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BetaDomain {
    Maximal,
    Ideal(IdealGens),
}

/// A module map into `target`, given by the images of the domain's
/// generators (`x_1..x_n` for the maximal ideal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaMap {
    target: FdModule,
    domain: BetaDomain,
    images: Vec<Vector>,
}

impl BetaMap {
    fn checked(target: FdModule, domain: BetaDomain, images: Vec<Vector>) -> Result<Self, ExtError> {
        let expected = match &domain {
            BetaDomain::Maximal => target.nvars(),
            BetaDomain::Ideal(j) => {
                if j.nvars() != target.nvars() {
                    return Err(ModuleError::ArityMismatch(target.nvars(), j.nvars()).into());
                }
                if j.field() != target.field() {
                    return Err(ModuleError::FieldMismatch(target.field(), j.field()).into());
                }
                j.gens().len()
            }
        };
        if images.len() != expected {
            return Err(ExtError::ImageCount {
                expected,
                got: images.len(),
            });
        }
        for (index, v) in images.iter().enumerate() {
            if v.len() != target.dim() {
                return Err(ExtError::ImageLength {
                    index,
                    got: v.len(),
                    dim: target.dim(),
                });
            }
        }
        Ok(BetaMap {
            target,
            domain,
            images,
        })
    }

    /// A map `m -> M` by the images of the variables. Compatibility is
    /// checked by [`BetaMap::validate`].
    pub fn on_maximal(target: FdModule, images: Vec<Vector>) -> Result<Self, ExtError> {
        Self::checked(target, BetaDomain::Maximal, images)
    }

    /// A map `J -> M` by the images of the generators of `J`.
    pub fn on_ideal(target: FdModule, ideal: IdealGens, images: Vec<Vector>) -> Result<Self, ExtError> {
        Self::checked(target, BetaDomain::Ideal(ideal), images)
    }

    pub fn zero(target: FdModule, domain: BetaDomain) -> Self {
        let count = match &domain {
            BetaDomain::Maximal => target.nvars(),
            BetaDomain::Ideal(j) => j.gens().len(),
        };
        let images = vec![target.zero_vector(); count];
        BetaMap {
            target,
            domain,
            images,
        }
    }

    /// `q -> q*u`, restricted to the domain.
    pub fn coboundary(target: FdModule, domain: BetaDomain, u: &[Scalar]) -> Result<Self, ExtError> {
        let gens = domain_generators(&target, &domain);
        let images = gens
            .iter()
            .map(|g| target.apply_poly(g, u))
            .collect::<Result<Vec<_>, _>>()?;
        Self::checked(target, domain, images)
    }

    pub fn target(&self) -> &FdModule {
        &self.target
    }
    pub fn domain(&self) -> &BetaDomain {
        &self.domain
    }
    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    /// Generators of the domain ideal, in the order of `images`.
    pub fn domain_generators(&self) -> Vec<Poly> {
        domain_generators(&self.target, &self.domain)
    }

    /// The domain as explicit generators.
    pub fn domain_ideal(&self) -> IdealGens {
        match &self.domain {
            BetaDomain::Maximal => IdealGens::maximal(self.target.field(), self.target.nvars()),
            BetaDomain::Ideal(j) => j.clone(),
        }
    }

    /// The same map with its domain given by generators, so that the
    /// general machinery for ideals applies.
    pub fn as_ideal_map(&self) -> BetaMap {
        BetaMap {
            target: self.target.clone(),
            domain: BetaDomain::Ideal(self.domain_ideal()),
            images: self.images.clone(),
        }
    }

    pub fn add(&self, other: &BetaMap) -> BetaMap {
        assert_eq!(self.domain, other.domain, "maps with different domains");
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| crate::matrix::add_vectors(a, b))
            .collect();
        BetaMap {
            target: self.target.clone(),
            domain: self.domain.clone(),
            images,
        }
    }

    /// Check that the images define a module map. For `m` these are the
    /// Koszul relations `x_i b(x_j) = x_j b(x_i)`; for an ideal the check
    /// goes through [`IdealGraph`].
    pub fn validate(&self) -> Result<(), ExtError> {
        match &self.domain {
            BetaDomain::Maximal => {
                let n = self.target.nvars();
                for i in 0..n {
                    for j in i + 1..n {
                        let a = self.target.act(i, &self.images[j]);
                        let b = self.target.act(j, &self.images[i]);
                        let w = crate::matrix::sub_vectors(&a, &b);
                        if crate::module::nonzero(&w) {
                            return Err(ExtError::Incompatible { i, j, witness: w });
                        }
                    }
                }
                Ok(())
            }
            BetaDomain::Ideal(_) => IdealGraph::new(self).map(|_| ()),
        }
    }

    /// `b(p)` for `p` in the domain.
    pub fn apply(&self, p: &Poly) -> Result<Vector, ExtError> {
        match &self.domain {
            BetaDomain::Maximal => {
                let (constant, qs) = p.split_by_variables();
                if !constant.is_zero() {
                    return Err(ExtError::NotInDomain(p.to_string()));
                }
                let mut acc = self.target.zero_vector();
                for (q, f) in qs.iter().zip(&self.images) {
                    if q.is_zero() {
                        continue;
                    }
                    acc = crate::matrix::add_vectors(&acc, &self.target.apply_poly(q, f)?);
                }
                Ok(acc)
            }
            BetaDomain::Ideal(_) => IdealGraph::new(self)?.apply(p),
        }
    }
}

fn domain_generators(target: &FdModule, domain: &BetaDomain) -> Vec<Poly> {
    match domain {
        BetaDomain::Maximal => (0..target.nvars())
            .map(|i| Poly::var(target.field(), target.nvars(), i))
            .collect(),
        BetaDomain::Ideal(j) => j.gens().to_vec(),
    }
}

/// A basis of `Hom(m, M)` together with `dim Ext^1(S/m, M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace {
    pub basis: Vec<BetaMap>,
    pub ext1_dim: usize,
}

/// Solve `x_i f_j = x_j f_i` for `(f_1..f_n)` in `M^n`. The dimension of
/// `Ext^1(S/m, M)` follows from the exact sequence
/// `0 -> Hom(S/m, M) -> M -> Hom(m, M) -> Ext^1(S/m, M) -> 0`, with
/// `Hom(S/m, M) = soc(M)`.
#[allow(non_snake_case)]
pub fn hom_m_to_M(m: &FdModule) -> Result<HomSpace, ExtError> {
    if !m.is_origin_supported() {
        return Err(ExtError::NotOriginSupported);
    }
    let field = m.field();
    let n = m.nvars();
    let d = m.dim();
    let mut blocks = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // row block: A_i f_j - A_j f_i
            let mut block = DenseMatrix::zeros(field, d, n * d);
            for r in 0..d {
                for c in 0..d {
                    block[(r, j * d + c)] = m.action(i)[(r, c)].clone();
                    block[(r, i * d + c)] = -&m.action(j)[(r, c)];
                }
            }
            blocks.push(block);
        }
    }
    let kernel = if blocks.is_empty() {
        (0..n * d)
            .map(|k| {
                let mut v = vec![field.zero(); n * d];
                v[k] = field.one();
                v
            })
            .collect()
    } else {
        let refs: Vec<&DenseMatrix> = blocks.iter().collect();
        DenseMatrix::vstack(field, n * d, &refs).kernel_basis()
    };
    let basis: Vec<BetaMap> = kernel
        .into_iter()
        .map(|v| BetaMap {
            target: m.clone(),
            domain: BetaDomain::Maximal,
            images: (0..n).map(|i| v[i * d..(i + 1) * d].to_vec()).collect(),
        })
        .collect();
    let ext1_dim = basis.len() + m.socle().dim() - d;
    Ok(HomSpace { basis, ext1_dim })
}
