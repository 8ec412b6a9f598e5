//! Finite-dimensional commutative unital coefficient algebras and their ideals.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{add_scaled, is_zero_vector, unit_vector, zero_vector, LinalgError, Subspace, Vector};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid algebra parameter: {0}")]
    InvalidParameter(String),
    #[error("ideals belong to different algebras")]
    AlgebraMismatch,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Commutative associative unital algebra given by structure constants on a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    dim: usize,
    mult: Vec<Vec<Vector>>,
    unit: Vector,
    labels: Vec<String>,
    augmentation: Option<Vector>,
}

#[derive(Serialize)]
struct AlgebraDump<'a> {
    dim: usize,
    labels: &'a [String],
    unit: Vec<String>,
    mult: Vec<Vec<Vec<String>>>,
}

impl Serialize for CommAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs = |v: &Vector| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        AlgebraDump {
            dim: self.dim,
            labels: &self.labels,
            unit: strs(&self.unit),
            mult: self.mult.iter().map(|row| row.iter().map(strs).collect()).collect(),
        }
        .serialize(s)
    }
}

impl CommAlgebra {
    /// Validate a table: commutativity, associativity on basis triples, and the unit.
    pub fn from_table(
        mult: Vec<Vec<Vector>>,
        unit: Vector,
        labels: Vec<String>,
    ) -> Result<Self, CoeffError> {
        let dim = unit.len();
        if dim == 0 {
            return Err(CoeffError::InvalidTable("zero-dimensional algebra has no unit".into()));
        }
        if labels.len() != dim || mult.len() != dim || mult.iter().any(|r| r.len() != dim) {
            return Err(CoeffError::InvalidTable("table shape does not match dimension".into()));
        }
        if mult.iter().flatten().any(|v| v.len() != dim) {
            return Err(CoeffError::InvalidTable("product vector of wrong length".into()));
        }
        let alg = CommAlgebra { dim, mult, unit, labels, augmentation: None };
        for i in 0..dim {
            for j in 0..dim {
                if alg.mult[i][j] != alg.mult[j][i] {
                    return Err(CoeffError::InvalidTable(format!("b{i}*b{j} != b{j}*b{i}")));
                }
                for k in 0..dim {
                    let (bi, bj, bk) = (alg.basis(i), alg.basis(j), alg.basis(k));
                    if alg.mul(&alg.mul(&bi, &bj), &bk) != alg.mul(&bi, &alg.mul(&bj, &bk)) {
                        return Err(CoeffError::InvalidTable(format!("not associative on ({i},{j},{k})")));
                    }
                }
            }
            if alg.mul(&alg.unit, &alg.basis(i)) != alg.basis(i) {
                return Err(CoeffError::InvalidTable(format!("unit does not fix b{i}")));
            }
        }
        Ok(alg)
    }

    /// The ground field.
    pub fn field() -> Self {
        CommAlgebra::truncated_poly(1).expect("N = 1 is valid")
    }

    /// `C[t]/(t^N)` on the basis `1, t, ..., t^{N-1}`.
    pub fn truncated_poly(n: usize) -> Result<Self, CoeffError> {
        if n == 0 {
            return Err(CoeffError::InvalidParameter("truncated_poly needs N >= 1".into()));
        }
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i + j < n { unit_vector(n, i + j) } else { zero_vector(n) })
                    .collect()
            })
            .collect();
        let labels = (0..n).map(|k| if k == 0 { "1".to_string() } else { format!("t^{k}") }).collect();
        Ok(CommAlgebra { dim: n, mult, unit: unit_vector(n, 0), labels, augmentation: Some(unit_vector(n, 0)) })
    }

    /// `A ⊕ B` with componentwise multiplication.
    pub fn direct_sum(a: &CommAlgebra, b: &CommAlgebra) -> Self {
        let dim = a.dim + b.dim;
        let embed = |v: &Vector, offset: usize| {
            let mut out = zero_vector(dim);
            for (k, x) in v.iter().enumerate() {
                out[offset + k] = x.clone();
            }
            out
        };
        let mut mult = vec![vec![zero_vector(dim); dim]; dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                mult[i][j] = embed(&a.mult[i][j], 0);
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                mult[a.dim + i][a.dim + j] = embed(&b.mult[i][j], a.dim);
            }
        }
        let mut unit = embed(&a.unit, 0);
        add_scaled(&mut unit, &Scalar::one(), &embed(&b.unit, a.dim));
        let mut labels: Vec<String> = a.labels.iter().map(|l| format!("({l},0)")).collect();
        labels.extend(b.labels.iter().map(|l| format!("(0,{l})")));
        let augmentation = a.augmentation.as_ref().map(|x| {
            let mut v = x.clone();
            v.resize(dim, Scalar::zero());
            v
        });
        CommAlgebra { dim, mult, unit, labels, augmentation }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    /// A distinguished character `A -> C`, as its values on the basis: `t -> 0`
    /// for truncated polynomials, projection to the first summand for sums.
    pub fn augmentation(&self) -> Option<&Vector> {
        self.augmentation.as_ref()
    }

    /// Whether `chi` (values on the basis) is an algebra homomorphism to the ground field.
    pub fn is_character(&self, chi: &[Scalar]) -> bool {
        let ev = |v: &Vector| v.iter().zip(chi).fold(Scalar::zero(), |acc, (x, c)| &acc + &(x * c));
        chi.len() == self.dim
            && ev(&self.unit).is_one()
            && (0..self.dim).all(|i| (0..self.dim).all(|j| ev(&self.mult[i][j]) == &chi[i] * &chi[j]))
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.dim, i)
    }

    /// Product of basis elements `b_i b_j` as a coordinate vector.
    pub fn basis_mul(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i][j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                add_scaled(&mut out, &(x * y), &self.mult[i][j]);
            }
        }
        out
    }

    pub fn pow(&self, a: &[Scalar], k: u32) -> Vector {
        (0..k).fold(self.unit.clone(), |acc, _| self.mul(&acc, a))
    }

    pub fn whole(self: &Arc<Self>) -> IdealSubspace {
        IdealSubspace { algebra: self.clone(), space: Subspace::full(self.dim) }
    }

    pub fn zero_ideal(self: &Arc<Self>) -> IdealSubspace {
        IdealSubspace { algebra: self.clone(), space: Subspace::zero(self.dim) }
    }

    /// Ideal generated by the given elements.
    pub fn ideal_generated(self: &Arc<Self>, gens: &[Vector]) -> IdealSubspace {
        let mut vs = Vec::new();
        for g in gens {
            for i in 0..self.dim {
                vs.push(self.mul(&self.basis(i), g));
            }
        }
        IdealSubspace { algebra: self.clone(), space: Subspace::span(self.dim, &vs) }
    }

    /// Check that a subspace is an ideal and wrap it.
    pub fn ideal(self: &Arc<Self>, space: Subspace) -> Result<IdealSubspace, CoeffError> {
        if space.ambient_dim() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: space.ambient_dim() }.into());
        }
        let ok = space
            .basis()
            .iter()
            .all(|v| (0..self.dim).all(|i| space.contains(&self.mul(&self.basis(i), v))));
        if !ok {
            return Err(CoeffError::NotAnIdeal);
        }
        Ok(IdealSubspace { algebra: self.clone(), space })
    }

    /// Largest ideal contained in `s`: iterate `I <- {a in I : b_j a in I for all j}`.
    pub fn largest_ideal_inside(self: &Arc<Self>, s: &Subspace) -> IdealSubspace {
        let mut cur = s.clone();
        loop {
            // a = sum c_k v_k lies in the next stage iff b_j a in cur for all j.
            let vs = cur.basis().to_vec();
            if vs.is_empty() {
                break;
            }
            let quotient = cur.quotient_basis();
            let mut rows: Vec<Vector> = Vec::new();
            for j in 0..self.dim {
                let images: Vec<Vector> =
                    vs.iter().map(|v| cur.quotient_coords(&self.mul(&self.basis(j), v))).collect();
                for q in 0..quotient.len() {
                    rows.push(images.iter().map(|im| im[q].clone()).collect());
                }
            }
            let coeffs = if rows.is_empty() {
                (0..vs.len()).map(|k| unit_vector(vs.len(), k)).collect()
            } else {
                crate::linalg::Matrix::from_rows(vs.len(), &rows).kernel()
            };
            let next: Vec<Vector> = coeffs
                .iter()
                .map(|c| {
                    let mut a = zero_vector(self.dim);
                    for (x, v) in c.iter().zip(&vs) {
                        add_scaled(&mut a, x, v);
                    }
                    a
                })
                .collect();
            let next = Subspace::span(self.dim, &next);
            if next == cur {
                break;
            }
            cur = next;
        }
        IdealSubspace { algebra: self.clone(), space: cur }
    }
}

/// An ideal, stored as a subspace of its algebra.
#[derive(Clone, Debug)]
pub struct IdealSubspace {
    algebra: Arc<CommAlgebra>,
    space: Subspace,
}

impl PartialEq for IdealSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.space == other.space
    }
}

impl IdealSubspace {
    pub fn algebra(&self) -> &Arc<CommAlgebra> {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.algebra.dim - self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn is_whole(&self) -> bool {
        self.codim() == 0
    }

    pub fn contains(&self, a: &[Scalar]) -> bool {
        self.space.contains(a)
    }

    fn same_algebra(&self, other: &IdealSubspace) -> Result<(), CoeffError> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(CoeffError::AlgebraMismatch)
        }
    }

    pub fn sum(&self, other: &IdealSubspace) -> Result<IdealSubspace, CoeffError> {
        self.same_algebra(other)?;
        Ok(IdealSubspace { algebra: self.algebra.clone(), space: self.space.sum(&other.space)? })
    }

    pub fn intersect(&self, other: &IdealSubspace) -> Result<IdealSubspace, CoeffError> {
        self.same_algebra(other)?;
        Ok(IdealSubspace { algebra: self.algebra.clone(), space: self.space.intersect(&other.space)? })
    }

    /// Span of pairwise products.
    pub fn product(&self, other: &IdealSubspace) -> Result<IdealSubspace, CoeffError> {
        self.same_algebra(other)?;
        let mut vs = Vec::new();
        for a in self.space.basis() {
            for b in other.space.basis() {
                let p = self.algebra.mul(a, b);
                if !is_zero_vector(&p) {
                    vs.push(p);
                }
            }
        }
        // products of ideal elements already span an ideal; regenerate to be safe
        Ok(self.algebra.ideal_generated(&vs))
    }

    /// `I^k`, with `I^0 = A`.
    pub fn power(&self, k: u32) -> IdealSubspace {
        let mut out = self.algebra.whole();
        for _ in 0..k {
            out = out.product(self).expect("same algebra");
        }
        out
    }

    /// `I + J = A`, the linear-algebra form of disjoint supports.
    pub fn is_comaximal(&self, other: &IdealSubspace) -> Result<bool, CoeffError> {
        Ok(self.sum(other)?.is_whole())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(a: CommAlgebra) -> Arc<CommAlgebra> {
        Arc::new(a)
    }

    #[test]
    fn truncated_poly_products() {
        let a = CommAlgebra::truncated_poly(3).unwrap();
        assert!(is_zero_vector(&a.mul(&a.basis(1), &a.basis(2))));
        assert_eq!(a.mul(&a.basis(1), &a.basis(1)), a.basis(2));
        assert_eq!(CommAlgebra::truncated_poly(1).unwrap(), CommAlgebra::field());
        assert!(CommAlgebra::truncated_poly(0).is_err());
    }

    #[test]
    fn direct_sum_idempotents() {
        let c = CommAlgebra::field();
        let s = CommAlgebra::direct_sum(&c, &c);
        assert!(is_zero_vector(&s.mul(&s.basis(0), &s.basis(1))));
        assert_eq!(s.unit(), &vec![Scalar::one(), Scalar::one()]);
        assert!(s.is_character(s.augmentation().unwrap()));
        assert!(!s.is_character(&[Scalar::one(), Scalar::one()]));
    }

    #[test]
    fn bad_tables_rejected() {
        let one = |k: i64| vec![Scalar::from_int(k)];
        // 1*1 = 2 breaks the unit
        let r = CommAlgebra::from_table(vec![vec![one(2)]], one(1), vec!["1".into()]);
        assert!(matches!(r, Err(CoeffError::InvalidTable(_))));
        // non-commutative 2-dim table
        let e = |i| unit_vector(2, i);
        let z = zero_vector(2);
        let r = CommAlgebra::from_table(
            vec![vec![e(0), e(1)], vec![z.clone(), z]],
            e(0),
            vec!["1".into(), "x".into()],
        );
        assert!(matches!(r, Err(CoeffError::InvalidTable(_))));
    }

    #[test]
    fn ideal_arithmetic_in_truncated_poly() {
        let a = arc(CommAlgebra::truncated_poly(3).unwrap());
        let t = a.ideal_generated(&[a.basis(1)]);
        let t2 = a.ideal_generated(&[a.basis(2)]);
        assert_eq!(t.power(2), t2);
        assert_eq!(t2.codim(), 2);
        assert!(!t.is_comaximal(&t2).unwrap());
        assert!(t.power(3).is_zero());
    }

    #[test]
    fn comaximal_in_direct_sum() {
        let c = CommAlgebra::field();
        let a = arc(CommAlgebra::direct_sum(&c, &c));
        let i = a.ideal_generated(&[a.basis(0)]);
        let j = a.ideal_generated(&[a.basis(1)]);
        assert!(i.is_comaximal(&j).unwrap());
        assert_eq!(i.product(&j).unwrap(), i.intersect(&j).unwrap());
    }

    #[test]
    fn largest_ideal_examples() {
        let a = arc(CommAlgebra::truncated_poly(2).unwrap());
        assert!(a.largest_ideal_inside(&Subspace::full(2)).is_whole());
        let t = Subspace::span(2, &[a.basis(1)]);
        assert_eq!(a.largest_ideal_inside(&t).space(), &t);
        let one_plus_t = Subspace::span(2, &[vec![Scalar::one(), Scalar::one()]]);
        assert!(a.largest_ideal_inside(&one_plus_t).is_zero());
    }

    #[test]
    fn mismatched_algebras() {
        let a = arc(CommAlgebra::truncated_poly(2).unwrap());
        let b = arc(CommAlgebra::truncated_poly(3).unwrap());
        assert_eq!(a.whole().sum(&b.whole()), Err(CoeffError::AlgebraMismatch));
    }
}
