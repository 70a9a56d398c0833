//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! Monomials are ordered graded-lexicographically with the *last* variable
//! most significant, so the degree-one monomials enumerate as `x, y, z`.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Scalar};
use crate::matrix::{DenseMatrix, MatrixError};

pub use parse::{parse_poly, variable_name};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name:?} for a ring in {nvars} variables")]
    UnknownVariable { name: String, nvars: usize },
    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("empty generator list")]
    EmptyIdeal,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// Divide by `x_i`, if it divides.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        (self.0[i] > 0).then(|| {
            let mut e = self.0.clone();
            e[i] -= 1;
            Monomial(e)
        })
    }

    /// Index of the first variable with a positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree at most `max_degree`, increasing.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        out.extend(monomials_of_degree(nvars, d));
    }
    out
}

/// All monomials of total degree exactly `degree`, increasing.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if degree == 0 {
            vec![Monomial(vec![])]
        } else {
            vec![]
        };
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(nvars), degree, nvars, &mut out);
    out.sort();
    out
}

/// A polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, c, Monomial::one(nvars))
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::monomial(field, field.one(), Monomial::var(nvars, i))
    }

    pub fn monomial(field: FieldSpec, c: Scalar, m: Monomial) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            field,
            nvars,
            terms,
        }
    }

    /// Build from `(coefficient, monomial)` pairs, combining like terms.
    pub fn from_terms(
        field: FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (Scalar, Monomial)>,
    ) -> Self {
        let mut p = Poly::zero(field, nvars);
        for (c, m) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(c, m);
        }
        p
    }

    fn add_term(&mut self, c: Scalar, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    fn compatible(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch(self.nvars, other.nvars));
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(-c, m.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.compatible(other)?;
        let mut out = Poly::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-self.field.one())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (a, c) in &self.terms {
            out.terms.insert(a.mul(m), c.clone());
        }
        out
    }

    /// Write `self - constant_term` as `sum_i x_i * q_i`, sending each
    /// monomial to its first variable. Returns the constant term and the `q_i`.
    pub fn split_by_variables(&self) -> (Scalar, Vec<Poly>) {
        let mut qs = vec![Poly::zero(self.field, self.nvars); self.nvars];
        let mut constant = self.field.zero();
        for (m, c) in &self.terms {
            match m.first_var() {
                Some(i) => {
                    let rest = m.div_var(i).expect("divisible");
                    qs[i].add_term(c.clone(), rest);
                }
                None => constant = c.clone(),
            }
        }
        (constant, qs)
    }

    /// Evaluate at a tuple of square matrices (assumed to commute); the
    /// constant term contributes a multiple of the identity.
    pub fn eval_at_matrices(&self, mats: &[DenseMatrix]) -> Result<DenseMatrix, PolyError> {
        if mats.len() != self.nvars {
            return Err(PolyError::ArityMismatch(self.nvars, mats.len()));
        }
        let d = match mats.first() {
            Some(m) => m.rows(),
            None => {
                return Err(MatrixError::SizeMismatch("no matrices to infer size".into()).into())
            }
        };
        for m in mats {
            if m.rows() != d || m.cols() != d {
                return Err(MatrixError::SizeMismatch(format!(
                    "expected {d}x{d}, got {}x{}",
                    m.rows(),
                    m.cols()
                ))
                .into());
            }
            if m.field() != self.field {
                return Err(PolyError::FieldMismatch(self.field, m.field()));
            }
        }
        let mut cache: BTreeMap<Monomial, DenseMatrix> = BTreeMap::new();
        cache.insert(Monomial::one(self.nvars), DenseMatrix::identity(self.field, d));
        let mut acc = DenseMatrix::zeros(self.field, d, d);
        for (m, c) in &self.terms {
            let mm = monomial_matrix(m, mats, &mut cache);
            acc = acc.add(&mm.scale(c))?;
        }
        Ok(acc)
    }
}

fn monomial_matrix(
    m: &Monomial,
    mats: &[DenseMatrix],
    cache: &mut BTreeMap<Monomial, DenseMatrix>,
) -> DenseMatrix {
    if let Some(v) = cache.get(m) {
        return v.clone();
    }
    let i = m.first_var().expect("non-constant monomial");
    let rest = m.div_var(i).expect("divisible");
    let r = monomial_matrix(&rest, mats, cache);
    let out = mats[i].mul(&r).expect("square");
    cache.insert(m.clone(), out.clone());
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::print_poly(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

/// A generating set for an ideal of `k[x_1..x_n]`. Zero generators are
/// dropped at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGens {
    field: FieldSpec,
    nvars: usize,
    gens: Vec<Poly>,
}

impl IdealGens {
    pub fn new(field: FieldSpec, nvars: usize, gens: Vec<Poly>) -> Result<Self, PolyError> {
        if gens.is_empty() {
            return Err(PolyError::EmptyIdeal);
        }
        for g in &gens {
            if g.nvars != nvars {
                return Err(PolyError::ArityMismatch(nvars, g.nvars));
            }
            if g.field != field {
                return Err(PolyError::FieldMismatch(field, g.field));
            }
        }
        Ok(IdealGens {
            field,
            nvars,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// Parse each generator with the polynomial grammar.
    pub fn parse(field: FieldSpec, nvars: usize, gens: &[&str]) -> Result<Self, PolyError> {
        let polys = gens
            .iter()
            .map(|g| parse_poly(g, nvars, field))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, nvars, polys)
    }

    /// The maximal ideal `(x_1, .., x_n)`.
    pub fn maximal(field: FieldSpec, nvars: usize) -> Self {
        IdealGens {
            field,
            nvars,
            gens: (0..nvars).map(|i| Poly::var(field, nvars, i)).collect(),
        }
    }

    /// `(x_1, .., x_n)^k` generated by all monomials of degree `k`.
    pub fn maximal_power(field: FieldSpec, nvars: usize, k: u32) -> Self {
        IdealGens {
            field,
            nvars,
            gens: monomials_of_degree(nvars, k)
                .into_iter()
                .map(|m| Poly::monomial(field, field.one(), m))
                .collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Generators of `self + other`.
    pub fn sum(&self, other: &IdealGens) -> IdealGens {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        IdealGens {
            field: self.field,
            nvars: self.nvars,
            gens,
        }
    }

    /// Generators of `(x_1..x_n)^k * self`.
    pub fn times_maximal_power(&self, k: u32) -> IdealGens {
        let mons = monomials_of_degree(self.nvars, k);
        let gens = self
            .gens
            .iter()
            .flat_map(|g| mons.iter().map(move |m| g.mul_monomial(m)))
            .collect();
        IdealGens {
            field: self.field,
            nvars: self.nvars,
            gens,
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn monomial_enumeration_counts() {
        let m = monomials_up_to(3, 1);
        let names: Vec<String> = m
            .iter()
            .map(|m| Poly::monomial(q(), q().one(), m.clone()).to_string())
            .collect();
        assert_eq!(names, ["1", "x", "y", "z"]);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_up_to(4, 2).len(), 15);
    }

    #[test]
    fn enumeration_is_strictly_increasing() {
        let m = monomials_up_to(3, 4);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(m.len(), 35);
    }

    #[test]
    fn commutator_of_monomial_curve_data() {
        // x * f3 - z * f1 with f1 = y, f3 = x^2
        let x = parse_poly("x", 3, q()).unwrap();
        let z = parse_poly("z", 3, q()).unwrap();
        let f1 = parse_poly("y", 3, q()).unwrap();
        let f3 = parse_poly("x^2", 3, q()).unwrap();
        let f = x.mul(&f3).unwrap().sub(&z.mul(&f1).unwrap()).unwrap();
        assert_eq!(f, parse_poly("x^3 - y*z", 3, q()).unwrap());
    }

    #[test]
    fn product_with_zero_and_char_two() {
        let p = parse_poly("x^2 + 3*y", 2, q()).unwrap();
        assert!(p.mul(&Poly::zero(q(), 2)).unwrap().is_zero());
        let f2 = FieldSpec::prime(2).unwrap();
        let a = parse_poly("x + y", 2, f2).unwrap();
        let b = parse_poly("x + y", 2, f2).unwrap(); // x - y == x + y in char 2
        assert_eq!(a.mul(&b).unwrap(), parse_poly("x^2 + y^2", 2, f2).unwrap());
    }

    #[test]
    fn arity_mismatch() {
        let a = Poly::var(q(), 2, 0);
        let b = Poly::var(q(), 3, 0);
        assert!(matches!(a.add(&b), Err(PolyError::ArityMismatch(2, 3))));
    }

    #[test]
    fn evaluation_at_matrices() {
        let one = Poly::one(q(), 2);
        let x = DenseMatrix::from_i64(q(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let y = DenseMatrix::zeros(q(), 3, 3);
        assert_eq!(
            one.eval_at_matrices(&[x.clone(), y.clone()]).unwrap(),
            DenseMatrix::identity(q(), 3)
        );
        let x2 = parse_poly("x^2", 2, q()).unwrap();
        let e = x2.eval_at_matrices(&[x, y]).unwrap();
        assert_eq!(e, DenseMatrix::unit(q(), 3, 0, 2));
    }

    #[test]
    fn xy_at_e13_e24_vanishes() {
        let f = FieldSpec::prime(5).unwrap();
        let x = DenseMatrix::unit(f, 4, 0, 2);
        let y = DenseMatrix::unit(f, 4, 1, 3);
        let xy = parse_poly("x*y", 2, f).unwrap();
        assert!(xy.eval_at_matrices(&[x, y]).unwrap().is_zero());
    }

    #[test]
    fn split_recovers_polynomial() {
        let p = parse_poly("3 + x*y - 2*y^2*z + z", 3, q()).unwrap();
        let (c, qs) = p.split_by_variables();
        let mut back = Poly::constant(q(), 3, c);
        for (i, qi) in qs.iter().enumerate() {
            back = back.add(&Poly::var(q(), 3, i).mul(qi).unwrap()).unwrap();
        }
        assert_eq!(back, p);
    }

    #[test]
    fn ideal_drops_zero_generators() {
        let i = IdealGens::parse(q(), 3, &["x", "0", "y^2"]).unwrap();
        assert_eq!(i.gens().len(), 2);
        assert!(IdealGens::new(q(), 3, vec![]).is_err());
        assert_eq!(IdealGens::maximal_power(q(), 3, 2).gens().len(), 6);
    }
}
