//! Weight modules over q(n)⊗A: PBW straightening, truncated Verma modules,
//! local Weyl modules, irreducible quotients and the checks built on them.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::clifford::CliffordError;
use crate::coeff::CommAlgebra;
use crate::linalg::LinalgError;
use crate::liesuper::{LieError, WeightVector};
use crate::scalars::Scalar;
use crate::superspace::SuperDim;

mod cone;
mod eval;
mod garland;
mod ipsi;
mod irreducible;
mod local;
mod module;
mod pbw;
mod relations;
mod spanbound;
mod verma;

pub use cone::truncate_to_cone;
pub use eval::evaluation_module;
pub use garland::{garland_check, p_coefficients, GarlandNormalization, GarlandReport};
pub use ipsi::{compute_i_psi, IPsi};
pub use irreducible::{irreducible_quotient, maximal_submodule};
pub use local::{bar_l, hull_depth, local_weyl, LocalWeyl, LocalWeylOptions};
pub use module::{AxiomViolation, GradedSubspace, WeightModule};
pub use pbw::{PbwMonomial, Straightener, UElem};
pub use relations::{check_global_relations, GlobalRelationReport, RelationWitness};
pub use spanbound::{lowering_span_check, SpanBoundReport};
pub use verma::{verma_truncated, VermaTruncation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("weight {0} is not in Λ⁺")]
    NonDominant(WeightVector),
    #[error("ψ restricted to h₀̄ is not an integral weight")]
    NonIntegral,
    #[error("map-weight must be a {expected_rows}×{expected_cols} matrix")]
    Shape { expected_rows: usize, expected_cols: usize },
    #[error("local Weyl module did not stabilize below depth cap {cap}")]
    DepthOverflow { cap: i64 },
    #[error("module is not generated by its top weight space")]
    NotHighestWeight,
    #[error("weight support {0} escapes the dominance hull")]
    OutsideHull(WeightVector),
    #[error("no power of I_ψ kills the top space through n⁻")]
    NoNilpotencyDegree,
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A linear functional `ψ` on `h₀̄ ⊗ A`, stored as `ψ(k_i ⊗ b_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapWeight {
    values: Vec<Vec<Scalar>>,
    lambda: WeightVector,
}

impl MapWeight {
    /// `values[i][j] = ψ(k_{i+1} ⊗ b_j)`; `λ_i = ψ(k_i ⊗ 1)` must be integral.
    pub fn new(values: Vec<Vec<Scalar>>, coeff: &CommAlgebra) -> Result<Self, WeylError> {
        let cols = coeff.dim();
        if values.is_empty() || values.iter().any(|r| r.len() != cols) {
            return Err(WeylError::Shape { expected_rows: values.len().max(2), expected_cols: cols });
        }
        let lambda = values
            .iter()
            .map(|row| dot(row, coeff.unit()).as_integer().ok_or(WeylError::NonIntegral))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MapWeight { values, lambda: WeightVector(lambda) })
    }

    /// `ψ(k_i ⊗ a) = λ_i χ(a)` for a character `χ` given by its basis values.
    pub fn from_character(lambda: &WeightVector, chi: &[Scalar], coeff: &CommAlgebra) -> Result<Self, WeylError> {
        let values = lambda
            .0
            .iter()
            .map(|&l| chi.iter().map(|c| &Scalar::from_int(l) * c).collect())
            .collect();
        MapWeight::new(values, coeff)
    }

    /// `ψ = λ` over the ground field.
    pub fn over_field(lambda: &WeightVector) -> Self {
        MapWeight {
            values: lambda.0.iter().map(|&l| vec![Scalar::from_int(l)]).collect(),
            lambda: lambda.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn lambda(&self) -> &WeightVector {
        &self.lambda
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    /// `ψ(k_{i+1} ⊗ b_j)` (0-based `i`).
    pub fn value(&self, i: usize, j: usize) -> Scalar {
        self.values[i][j].clone()
    }

    /// `ψ(k_{i+1} ⊗ a)` for an element `a` of `A`.
    pub fn eval(&self, i: usize, a: &[Scalar]) -> Scalar {
        dot(&self.values[i], a)
    }

    pub fn add(&self, other: &MapWeight) -> MapWeight {
        MapWeight {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
                .collect(),
            lambda: &self.lambda + &other.lambda,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Scalar::is_zero)
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Weight multiplicities, split by parity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character(pub BTreeMap<WeightVector, SuperDim>);

#[derive(Serialize)]
struct CharacterEntry<'a> {
    weight: &'a WeightVector,
    even: usize,
    odd: usize,
}

/// Serialized highest weight first.
impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            self.0.iter().rev().map(|(w, d)| CharacterEntry { weight: w, even: d.even, odd: d.odd }),
        )
    }
}

impl Character {
    pub fn total(&self) -> SuperDim {
        self.0.values().fold(SuperDim::default(), |acc, d| acc + *d)
    }

    pub fn support(&self) -> Vec<WeightVector> {
        self.0.keys().cloned().collect()
    }

    pub fn get(&self, w: &WeightVector) -> SuperDim {
        self.0.get(w).copied().unwrap_or_default()
    }

    pub fn swapped(&self) -> Character {
        Character(self.0.iter().map(|(w, d)| (w.clone(), d.swapped())).collect())
    }

    /// Equal as given or after a global parity swap.
    pub fn eq_up_to_parity(&self, other: &Character) -> bool {
        self == other || *self == other.swapped()
    }

    /// Invariance under every transposition of ε-coordinates.
    pub fn is_symmetric(&self) -> bool {
        let n = self.0.keys().next().map_or(0, WeightVector::n);
        self.0.iter().all(|(w, d)| {
            (0..n).all(|i| (i + 1..n).all(|j| self.get(&w.permute(i, j)) == *d))
        })
    }

    /// Character of a tensor product.
    pub fn tensor(&self, other: &Character) -> Character {
        let mut out: BTreeMap<WeightVector, SuperDim> = BTreeMap::new();
        for (w1, d1) in &self.0 {
            for (w2, d2) in &other.0 {
                let e = out.entry(w1 + w2).or_default();
                *e = *e + d1.tensor(*d2);
            }
        }
        Character(out)
    }

    pub fn direct_sum(&self, other: &Character) -> Character {
        let mut out = self.0.clone();
        for (w, d) in &other.0 {
            let e = out.entry(w.clone()).or_default();
            *e = *e + *d;
        }
        Character(out)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,even,odd\n");
        for (w, d) in self.0.iter().rev() {
            let coords: Vec<String> = w.0.iter().map(i64::to_string).collect();
            s.push_str(&format!("\"{}\",{},{}\n", coords.join(","), d.even, d.odd));
        }
        s
    }
}
