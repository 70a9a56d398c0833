use crate::field::{FieldSpec, Scalar};
use crate::matrix::{is_zero_vector, DenseMatrix, Vector};

/// A subspace of `k^n` held as a fully reduced echelon basis, so two
/// subspaces are equal exactly when their bases are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            let mut e = vec![field.zero(); ambient];
            e[i] = field.one();
            s.insert(e);
        }
        s
    }

    pub fn span<I: IntoIterator<Item = Vector>>(field: FieldSpec, ambient: usize, vecs: I) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots, ascending. The matching unit
    /// vectors span a complement.
    pub fn free_coordinates(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.ambient).filter(|&i| !used[i]).collect()
    }

    /// `v` minus its projection onto the echelon basis; zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Add `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        // columns: basis of self, then basis of other
        let mut cols = self.rows.clone();
        cols.extend(other.rows.iter().cloned());
        let m = DenseMatrix::from_columns(self.field, self.ambient, &cols);
        let k = self.rows.len();
        let vecs = m.kernel_basis().into_iter().map(|coef| {
            let mut v = vec![self.field.zero(); self.ambient];
            for (c, row) in coef[..k].iter().zip(&self.rows) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(row) {
                    *x = &*x + &(c * y);
                }
            }
            v
        });
        Subspace::span(self.field, self.ambient, vecs)
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, map: &DenseMatrix) -> Subspace {
        Subspace::span(
            self.field,
            map.rows(),
            self.rows.iter().map(|v| map.mul_vec(v)),
        )
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_columns(self.field, self.ambient, &self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: FieldSpec, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let q = FieldSpec::rational();
        let a = Subspace::span(q, 3, [v(q, &[1, 2, 3]), v(q, &[0, 1, 1])]);
        let b = Subspace::span(q, 3, [v(q, &[1, 3, 4]), v(q, &[2, 4, 6]), v(q, &[1, 2, 3])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_of_planes() {
        let q = FieldSpec::rational();
        let a = Subspace::span(q, 3, [v(q, &[1, 0, 0]), v(q, &[0, 1, 0])]);
        let b = Subspace::span(q, 3, [v(q, &[0, 1, 0]), v(q, &[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::span(q, 3, [v(q, &[0, 1, 0])]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
    }

    #[test]
    fn coordinates_round_trip() {
        let f = FieldSpec::prime(7).unwrap();
        let s = Subspace::span(f, 3, [v(f, &[1, 2, 0]), v(f, &[0, 0, 1])]);
        let w = v(f, &[3, 6, 5]);
        let c = s.coordinates(&w).unwrap();
        assert_eq!(c, v(f, &[3, 5]));
        assert!(s.coordinates(&v(f, &[0, 1, 0])).is_none());
        assert_eq!(s.free_coordinates(), vec![1]);
    }
}
