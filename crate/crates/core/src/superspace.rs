//! Supervector spaces: parity bookkeeping, graded maps, the parity shift and
//! Koszul-signed tensor products.

use std::fmt;
use std::ops::Add;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperSpaceError {
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("matrix shape {found:?} does not match spaces {expected:?}")]
    Shape { expected: (usize, usize), found: (usize, usize) },
    #[error("entry ({row},{col}) connects vectors whose parities do not differ by the map degree")]
    NotHomogeneous { row: usize, col: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        Parity::from_bit(self.bit() + 1)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

/// The Koszul sign `(-1)^{|x||m|}` picked up when `x` passes `m`.
pub fn sign(x: Parity, m: Parity) -> i64 {
    if x.is_odd() && m.is_odd() {
        -1
    } else {
        1
    }
}

pub fn sign_scalar(x: Parity, m: Parity) -> Scalar {
    Scalar::from_int(sign(x, m))
}

/// `(even dim | odd dim)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SuperDim {
    pub even: usize,
    pub odd: usize,
}

impl SuperDim {
    pub fn new(even: usize, odd: usize) -> Self {
        SuperDim { even, odd }
    }

    pub fn total(self) -> usize {
        self.even + self.odd
    }

    pub fn swapped(self) -> SuperDim {
        SuperDim { even: self.odd, odd: self.even }
    }

    /// Dimension of a tensor product.
    pub fn tensor(self, o: SuperDim) -> SuperDim {
        SuperDim {
            even: self.even * o.even + self.odd * o.odd,
            odd: self.even * o.odd + self.odd * o.even,
        }
    }
}

impl Add for SuperDim {
    type Output = SuperDim;
    fn add(self, o: SuperDim) -> SuperDim {
        SuperDim { even: self.even + o.even, odd: self.odd + o.odd }
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SuperSpace {
    labels: Vec<String>,
    parities: Vec<Parity>,
}

impl SuperSpace {
    pub fn new(labels: Vec<String>, parities: Vec<Parity>) -> Result<Self, SuperSpaceError> {
        assert_eq!(labels.len(), parities.len(), "one parity per label");
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(SuperSpaceError::DuplicateLabel(l.clone()));
            }
        }
        Ok(SuperSpace { labels, parities })
    }

    /// Space with generated labels `v0, v1, ...`.
    pub fn anonymous(parities: Vec<Parity>) -> Self {
        let labels = (0..parities.len()).map(|k| format!("v{k}")).collect();
        SuperSpace { labels, parities }
    }

    pub fn of_dim(d: SuperDim) -> Self {
        let mut p = vec![Parity::Even; d.even];
        p.extend(std::iter::repeat(Parity::Odd).take(d.odd));
        SuperSpace::anonymous(p)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, k: usize) -> Parity {
        self.parities[k]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dim(&self) -> SuperDim {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        SuperDim { even: self.len() - odd, odd }
    }

    /// The parity-shifted space: same labels, parities flipped.
    pub fn parity_shift(&self) -> SuperSpace {
        SuperSpace {
            labels: self.labels.clone(),
            parities: self.parities.iter().map(|p| p.flip()).collect(),
        }
    }

    /// Basis of ordered pairs, index `i * other.len() + j`, parity the sum.
    pub fn tensor(&self, other: &SuperSpace) -> SuperSpace {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        let mut parities = Vec::with_capacity(labels.capacity());
        for (a, pa) in self.labels.iter().zip(&self.parities) {
            for (b, pb) in other.labels.iter().zip(&other.parities) {
                labels.push(format!("{a}⊗{b}"));
                parities.push(*pa + *pb);
            }
        }
        SuperSpace { labels, parities }
    }

    pub fn direct_sum(&self, other: &SuperSpace) -> SuperSpace {
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("{l}⊕")).collect();
        labels.extend(other.labels.iter().map(|l| format!("⊕{l}")));
        let mut parities = self.parities.clone();
        parities.extend(other.parities.iter().copied());
        SuperSpace { labels, parities }
    }
}

/// A homogeneous linear map between superspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: SuperSpace,
    pub target: SuperSpace,
    pub matrix: Matrix,
    pub degree: Parity,
}

impl GradedMap {
    pub fn new(
        source: SuperSpace,
        target: SuperSpace,
        matrix: Matrix,
        degree: Parity,
    ) -> Result<Self, SuperSpaceError> {
        let expected = (target.len(), source.len());
        let found = (matrix.rows(), matrix.cols());
        if expected != found {
            return Err(SuperSpaceError::Shape { expected, found });
        }
        for (row, col, _) in matrix.entries() {
            if source.parity(col) + degree != target.parity(row) {
                return Err(SuperSpaceError::NotHomogeneous { row, col });
            }
        }
        Ok(GradedMap { source, target, matrix, degree })
    }

    pub fn identity(space: &SuperSpace) -> Self {
        GradedMap {
            source: space.clone(),
            target: space.clone(),
            matrix: Matrix::identity(space.len()),
            degree: Parity::Even,
        }
    }

    pub fn compose(&self, first: &GradedMap) -> GradedMap {
        GradedMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
            degree: self.degree + first.degree,
        }
    }

    /// `A ⊗ B` with `(A⊗B)(m⊗n) = (-1)^{|B||m|} Am ⊗ Bn`.
    pub fn tensor(&self, other: &GradedMap) -> GradedMap {
        let source = self.source.tensor(&other.source);
        let target = self.target.tensor(&other.target);
        let mut m = Matrix::zeros(target.len(), source.len());
        let ns = other.source.len();
        let nt = other.target.len();
        for (i, j, a) in self.matrix.entries() {
            let s = sign_scalar(other.degree, self.source.parity(j));
            let sa = &s * a;
            for (k, l, b) in other.matrix.entries() {
                m.set(i * nt + k, j * ns + l, &sa * b);
            }
        }
        GradedMap { source, target, matrix: m, degree: self.degree + other.degree }
    }
}
