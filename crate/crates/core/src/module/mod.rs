//! Finite-dimensional modules over `k[x_1..x_n]`, presented as tuples of
//! commuting matrices.

mod ann;
mod quotient_ring;
mod roots;
mod subspace;
mod support;

use std::collections::HashMap;

use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::matrix::{is_zero_vector, DenseMatrix, MatrixError, Vector};
use crate::poly::{monomials_of_degree, Monomial, Poly, PolyError};

pub use ann::{annihilator, AnnData};
pub use quotient_ring::{cyclic_quotient, QuotientRing, DEFAULT_DEGREE_CAP};
pub use roots::univariate_roots;
pub use subspace::Subspace;
pub use support::{reassemble, SupportComponent, SupportPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("actions {i} and {j} do not commute: entry ({row}, {col}) of the commutator is nonzero")]
    NotCommuting {
        i: usize,
        j: usize,
        row: usize,
        col: usize,
    },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("module is not supported at the origin")]
    NotOriginSupported,
    #[error("support does not split over {field}: {detail}")]
    NonSplitSupport { field: FieldSpec, detail: String },
    #[error("finite colength not certified up to degree {0}")]
    DegreeCapExceeded(u32),
    #[error("not a submodule: action {var} moves basis vector {index} outside the subspace")]
    NotASubmodule { var: usize, index: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `k^d` with `n` pairwise commuting action matrices, one per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdModule {
    field: FieldSpec,
    nvars: usize,
    dim: usize,
    actions: Vec<DenseMatrix>,
}

fn flatten(m: &DenseMatrix) -> Vector {
    m.entries().to_vec()
}

impl FdModule {
    /// Validate sizes, fields and commutativity.
    pub fn new(
        field: FieldSpec,
        nvars: usize,
        dim: usize,
        actions: Vec<DenseMatrix>,
    ) -> Result<Self, ModuleError> {
        if actions.len() != nvars {
            return Err(ModuleError::ArityMismatch(nvars, actions.len()));
        }
        for (i, a) in actions.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(ModuleError::SizeMismatch(format!(
                    "action {i} is {}x{}, expected {dim}x{dim}",
                    a.rows(),
                    a.cols()
                )));
            }
            if a.field() != field {
                return Err(ModuleError::FieldMismatch(field, a.field()));
            }
        }
        for i in 0..nvars {
            for j in i + 1..nvars {
                let ab = actions[i].mul(&actions[j])?;
                let ba = actions[j].mul(&actions[i])?;
                if let Some(k) = (0..dim * dim).find(|&k| ab.entries()[k] != ba.entries()[k]) {
                    return Err(ModuleError::NotCommuting {
                        i,
                        j,
                        row: k / dim,
                        col: k % dim,
                    });
                }
            }
        }
        Ok(FdModule {
            field,
            nvars,
            dim,
            actions,
        })
    }

    /// Module from a nonempty list of square matrices of equal size.
    pub fn from_matrices(field: FieldSpec, mats: Vec<DenseMatrix>) -> Result<Self, ModuleError> {
        let Some(first) = mats.first() else {
            return Err(ModuleError::SizeMismatch("no action matrices".into()));
        };
        let dim = first.rows();
        Self::new(field, mats.len(), dim, mats)
    }

    pub(crate) fn new_unchecked(field: FieldSpec, nvars: usize, dim: usize, actions: Vec<DenseMatrix>) -> Self {
        debug_assert_eq!(actions.len(), nvars);
        FdModule {
            field,
            nvars,
            dim,
            actions,
        }
    }

    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Self::new_unchecked(field, nvars, 0, vec![DenseMatrix::zeros(field, 0, 0); nvars])
    }

    /// `S/m`: one dimension, every variable acting as zero.
    pub fn residue_field(field: FieldSpec, nvars: usize) -> Self {
        Self::new_unchecked(field, nvars, 1, vec![DenseMatrix::zeros(field, 1, 1); nvars])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn actions(&self) -> &[DenseMatrix] {
        &self.actions
    }
    pub fn action(&self, i: usize) -> &DenseMatrix {
        &self.actions[i]
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    pub fn unit_vector(&self, i: usize) -> Vector {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    /// `x_i * v`.
    pub fn act(&self, i: usize, v: &[Scalar]) -> Vector {
        self.actions[i].mul_vec(v)
    }

    fn check_poly(&self, p: &Poly) -> Result<(), ModuleError> {
        if p.nvars() != self.nvars {
            return Err(ModuleError::ArityMismatch(self.nvars, p.nvars()));
        }
        if p.field() != self.field {
            return Err(ModuleError::FieldMismatch(self.field, p.field()));
        }
        Ok(())
    }

    /// The matrix by which `p` acts.
    pub fn poly_matrix(&self, p: &Poly) -> Result<DenseMatrix, ModuleError> {
        self.check_poly(p)?;
        if self.nvars == 0 {
            return Ok(DenseMatrix::identity(self.field, self.dim).scale(&p.constant_term()));
        }
        Ok(p.eval_at_matrices(&self.actions)?)
    }

    /// `p * v`, computed monomial by monomial on the vector.
    pub fn apply_poly(&self, p: &Poly, v: &[Scalar]) -> Result<Vector, ModuleError> {
        self.check_poly(p)?;
        let mut cache: HashMap<Monomial, Vector> = HashMap::new();
        let mut acc = self.zero_vector();
        for (m, c) in p.terms() {
            let w = self.monomial_times(m, v, &mut cache);
            for (a, b) in acc.iter_mut().zip(&w) {
                if !b.is_zero() {
                    *a = &*a + &(c * b);
                }
            }
        }
        Ok(acc)
    }

    fn monomial_times(
        &self,
        m: &Monomial,
        v: &[Scalar],
        cache: &mut HashMap<Monomial, Vector>,
    ) -> Vector {
        if let Some(w) = cache.get(m) {
            return w.clone();
        }
        let out = match m.first_var() {
            None => v.to_vec(),
            Some(i) => {
                let rest = m.div_var(i).expect("divisible");
                let w = self.monomial_times(&rest, v, cache);
                self.act(i, &w)
            }
        };
        cache.insert(m.clone(), out.clone());
        out
    }

    pub fn annihilates(&self, p: &Poly) -> Result<bool, ModuleError> {
        Ok(self.poly_matrix(p)?.is_zero())
    }

    /// A basis of the unital algebra generated by the actions, grown from
    /// the identity by multiplying with the generators until the span is
    /// stable. Empty for the zero module.
    pub fn algebra_basis(&self) -> Vec<DenseMatrix> {
        if self.dim == 0 {
            return Vec::new();
        }
        let id = DenseMatrix::identity(self.field, self.dim);
        let mut span = Subspace::zero(self.field, self.dim * self.dim);
        span.insert(flatten(&id));
        let mut basis = vec![id];
        let mut next = 0;
        while next < basis.len() {
            let b = basis[next].clone();
            next += 1;
            for a in &self.actions {
                let p = a.mul(&b).expect("square");
                if span.insert(flatten(&p)) {
                    basis.push(p);
                }
            }
        }
        basis
    }

    /// Dimension of the unital algebra generated by the actions, which is
    /// `dim S/ann(N)`.
    pub fn algebra_dimension(&self) -> usize {
        self.algebra_basis().len()
    }

    /// The same number computed differently: the rank of the evaluation map
    /// on monomials, taken degree by degree until a whole degree adds
    /// nothing.
    pub fn algebra_dimension_by_monomials(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let mut span = Subspace::zero(self.field, self.dim * self.dim);
        let id = DenseMatrix::identity(self.field, self.dim);
        span.insert(flatten(&id));
        let mut level: HashMap<Monomial, DenseMatrix> = HashMap::new();
        level.insert(Monomial::one(self.nvars), id);
        for degree in 1.. {
            let mut next = HashMap::new();
            let mut grew = false;
            for m in monomials_of_degree(self.nvars, degree) {
                let i = m.first_var().expect("positive degree");
                let rest = m.div_var(i).expect("divisible");
                let p = self.actions[i].mul(&level[&rest]).expect("square");
                grew |= span.insert(flatten(&p));
                next.insert(m, p);
            }
            if !grew {
                break;
            }
            level = next;
        }
        span.dim()
    }

    /// Least `c` with `m^c N = 0`, or `None` if some action is not
    /// nilpotent.
    pub fn nilpotency_degree(&self) -> Option<usize> {
        let mut w = Subspace::full(self.field, self.dim);
        let mut c = 0;
        while !w.is_zero() {
            let next = self.maximal_ideal_times(&w);
            if next.dim() == w.dim() {
                return None;
            }
            w = next;
            c += 1;
        }
        Some(c)
    }

    pub fn is_origin_supported(&self) -> bool {
        self.nilpotency_degree().is_some()
    }

    /// `m W = sum_i x_i W`.
    pub fn maximal_ideal_times(&self, w: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.field, self.dim);
        for a in &self.actions {
            for v in w.basis() {
                out.insert(a.mul_vec(v));
            }
        }
        out
    }

    /// `m N`.
    pub fn radical_image(&self) -> Subspace {
        self.maximal_ideal_times(&Subspace::full(self.field, self.dim))
    }

    /// Common kernel of the shifted actions `A_i - p_i`.
    pub fn socle_at(&self, point: &[Scalar]) -> Subspace {
        assert_eq!(point.len(), self.nvars, "point arity");
        if self.nvars == 0 {
            return Subspace::full(self.field, self.dim);
        }
        let shifted: Vec<DenseMatrix> = self
            .actions
            .iter()
            .zip(point)
            .map(|(a, c)| a.shift(c))
            .collect();
        let refs: Vec<&DenseMatrix> = shifted.iter().collect();
        let stacked = DenseMatrix::vstack(self.field, self.dim, &refs);
        Subspace::span(self.field, self.dim, stacked.kernel_basis())
    }

    /// Socle at the origin.
    pub fn socle(&self) -> Subspace {
        let origin = vec![self.field.zero(); self.nvars];
        self.socle_at(&origin)
    }

    /// Smallest submodule containing `vecs`.
    pub fn submodule_generated<I: IntoIterator<Item = Vector>>(&self, vecs: I) -> Subspace {
        let mut span = Subspace::zero(self.field, self.dim);
        let mut queue: Vec<Vector> = Vec::new();
        for v in vecs {
            if span.insert(v.clone()) {
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for a in &self.actions {
                let w = a.mul_vec(&v);
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        span
    }

    pub fn check_submodule(&self, w: &Subspace) -> Result<(), ModuleError> {
        if w.ambient() != self.dim {
            return Err(ModuleError::SizeMismatch(format!(
                "subspace of k^{} in a module of dimension {}",
                w.ambient(),
                self.dim
            )));
        }
        for (index, v) in w.basis().iter().enumerate() {
            for (var, a) in self.actions.iter().enumerate() {
                if !w.contains(&a.mul_vec(v)) {
                    return Err(ModuleError::NotASubmodule { var, index });
                }
            }
        }
        Ok(())
    }

    /// The submodule `W` as a module in its own right, in the coordinates
    /// of `W`'s echelon basis.
    pub fn restrict(&self, w: &Subspace) -> Result<FdModule, ModuleError> {
        self.check_submodule(w)?;
        let k = w.dim();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let cols: Vec<Vector> = w
                    .basis()
                    .iter()
                    .map(|v| w.coordinates(&a.mul_vec(v)).expect("stable"))
                    .collect();
                DenseMatrix::from_columns(self.field, k, &cols)
            })
            .collect();
        Ok(Self::new_unchecked(self.field, self.nvars, k, actions))
    }

    /// `N/W`. Its basis is the images of the unit vectors at `W`'s free
    /// coordinates, ascending.
    pub fn quotient_by_submodule(&self, w: &Subspace) -> Result<FdModule, ModuleError> {
        self.check_submodule(w)?;
        let free = w.free_coordinates();
        let k = free.len();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let cols: Vec<Vector> = free
                    .iter()
                    .map(|&f| project_onto_quotient(w, &a.column(f)))
                    .collect();
                DenseMatrix::from_columns(self.field, k, &cols)
            })
            .collect();
        Ok(Self::new_unchecked(self.field, self.nvars, k, actions))
    }

    pub fn direct_sum(&self, other: &FdModule) -> Result<FdModule, ModuleError> {
        if self.field != other.field {
            return Err(ModuleError::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(ModuleError::ArityMismatch(self.nvars, other.nvars));
        }
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Self::new_unchecked(
            self.field,
            self.nvars,
            self.dim + other.dim,
            actions,
        ))
    }

    /// The same space with `x_i` acting as `A_i - p_i`.
    pub fn translate(&self, point: &[Scalar]) -> FdModule {
        let actions = self
            .actions
            .iter()
            .zip(point)
            .map(|(a, c)| a.shift(c))
            .collect();
        Self::new_unchecked(self.field, self.nvars, self.dim, actions)
    }

    /// The dual module: transposed actions.
    pub fn dual(&self) -> FdModule {
        let actions = self.actions.iter().map(DenseMatrix::transpose).collect();
        Self::new_unchecked(self.field, self.nvars, self.dim, actions)
    }

    /// The common generalized kernel of the actions, i.e. the summand
    /// supported at the origin, found without splitting the rest of the
    /// support.
    pub fn origin_component(&self) -> Subspace {
        if self.nvars == 0 {
            return Subspace::full(self.field, self.dim);
        }
        let powers: Vec<DenseMatrix> = self
            .actions
            .iter()
            .map(|a| a.pow(self.dim as u32))
            .collect();
        let refs: Vec<&DenseMatrix> = powers.iter().collect();
        let stacked = DenseMatrix::vstack(self.field, self.dim, &refs);
        Subspace::span(self.field, self.dim, stacked.kernel_basis())
    }

    /// The sum of the summands supported away from the origin, spanned by
    /// the images of `A_i^d`. Together with [`FdModule::origin_component`]
    /// it splits the module, so projecting along it localizes at the origin.
    pub fn away_from_origin(&self) -> Subspace {
        let mut w = Subspace::zero(self.field, self.dim);
        for a in &self.actions {
            let p = a.pow(self.dim as u32);
            for c in 0..self.dim {
                w.insert(p.column(c));
            }
        }
        w
    }

    /// Number of generators of the origin component: `dim W0 / m W0`.
    pub fn generators_at_origin(&self) -> usize {
        let w0 = self.origin_component();
        w0.dim() - self.maximal_ideal_times(&w0).dim()
    }
}

/// Coordinates of `v + W` in the basis of `N/W` used by
/// [`FdModule::quotient_by_submodule`].
pub fn project_onto_quotient(w: &Subspace, v: &[Scalar]) -> Vector {
    let r = w.reduce(v);
    w.free_coordinates().into_iter().map(|f| r[f].clone()).collect()
}

/// Linear independence of a list of vectors.
pub fn are_independent(field: FieldSpec, ambient: usize, vecs: &[Vector]) -> bool {
    Subspace::span(field, ambient, vecs.iter().cloned()).dim() == vecs.len()
}

pub(crate) fn nonzero(v: &[Scalar]) -> bool {
    !is_zero_vector(v)
}
