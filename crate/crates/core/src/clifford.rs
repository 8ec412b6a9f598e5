//! Clifford superalgebras of quadratic pairs, their irreducible supermodules,
//! and the top space `H(ψ)` of highest map-weight modules.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{is_zero_vector, unit_vector, zero_vector, Matrix, Vector};
use crate::liesuper::CurrentAlgebra;
use crate::scalars::{FieldSpec, Scalar};
use crate::superspace::{Parity, SuperDim, SuperSpace};
use crate::weylmod::MapWeight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("form is degenerate: rank {rank} on {generators} generators")]
    DegenerateForm { rank: usize, generators: usize },
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("no square root of {0} is available")]
    NoSquareRoot(String),
    #[error("map-weight has {found} rows, algebra has rank {expected}")]
    Shape { expected: usize, found: usize },
}

/// Odd generators `x_1..x_r` with a symmetric bilinear form `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPair {
    form: Matrix,
}

impl QuadraticPair {
    pub fn new(form: Matrix) -> Result<Self, CliffordError> {
        if form.rows() != form.cols() || form != form.transpose() {
            return Err(CliffordError::NotSymmetric);
        }
        Ok(QuadraticPair { form })
    }

    /// `t_i t_j + t_j t_i = 2 δ_ij`.
    pub fn standard(r: usize) -> Self {
        QuadraticPair { form: Matrix::identity(r) }
    }

    /// `B(t_i, t_j) = δ_ij λ_i`.
    pub fn diagonal(values: &[Scalar]) -> Self {
        let mut form = Matrix::zeros(values.len(), values.len());
        for (i, x) in values.iter().enumerate() {
            form.set(i, i, x.clone());
        }
        QuadraticPair { form }
    }

    pub fn generators(&self) -> usize {
        self.form.rows()
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn space(&self) -> SuperSpace {
        let labels = (1..=self.generators()).map(|k| format!("t{k}")).collect();
        SuperSpace::new(labels, vec![Parity::Odd; self.generators()]).expect("distinct labels")
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }
}

/// `Cl(V, f)` on the basis of increasing words `t_{i1} ... t_{ik}`, indexed by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordAlgebra {
    pair: QuadraticPair,
}

impl CliffordAlgebra {
    pub fn new(pair: QuadraticPair) -> Self {
        CliffordAlgebra { pair }
    }

    pub fn pair(&self) -> &QuadraticPair {
        &self.pair
    }

    pub fn generators(&self) -> usize {
        self.pair.generators()
    }

    pub fn dim(&self) -> usize {
        1 << self.generators()
    }

    pub fn parity(&self, mask: usize) -> Parity {
        Parity::from_bit((mask.count_ones() % 2) as u8)
    }

    pub fn generator(&self, i: usize) -> Vector {
        unit_vector(self.dim(), 1 << i)
    }

    pub fn one(&self) -> Vector {
        unit_vector(self.dim(), 0)
    }

    /// Rewrite a word in generators into the increasing-word basis.
    fn straighten(&self, word: Vec<usize>, coeff: Scalar, out: &mut Vector) {
        if coeff.is_zero() {
            return;
        }
        let descent = word.windows(2).position(|w| w[0] >= w[1]);
        let Some(p) = descent else {
            let mask = word.iter().fold(0usize, |m, &i| m | (1 << i));
            out[mask] += &coeff;
            return;
        };
        let (a, b) = (word[p], word[p + 1]);
        let mut shorter = word.clone();
        shorter.drain(p..p + 2);
        let f = self.pair.form.get(a, b);
        if a == b {
            // x x = f(x,x)
            self.straighten(shorter, &coeff * &f, out);
            return;
        }
        // x_a x_b = -x_b x_a + 2 f(x_a, x_b)
        let mut swapped = word;
        swapped.swap(p, p + 1);
        self.straighten(swapped, -&coeff, out);
        self.straighten(shorter, &(&coeff * &f) * &Scalar::from_int(2), out);
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim());
        let word = |m: usize| (0..self.generators()).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>();
        for (m1, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (m2, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let mut w = word(m1);
                w.extend(word(m2));
                self.straighten(w, a * b, &mut out);
            }
        }
        out
    }
}

/// A supermodule over a Clifford algebra: one odd matrix per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordModule {
    pub space: SuperSpace,
    pub action: Vec<Matrix>,
    pub field: FieldSpec,
}

impl CliffordModule {
    pub fn dim(&self) -> SuperDim {
        self.space.dim()
    }

    /// `t_i t_j + t_j t_i = 2 f(t_i, t_j)` and every `t_i` odd.
    pub fn satisfies_relations(&self, pair: &QuadraticPair) -> bool {
        let d = self.space.len();
        let two = Scalar::from_int(2);
        let odd = self.action.iter().all(|m| {
            m.entries().all(|(r, c, _)| self.space.parity(r) != self.space.parity(c))
        });
        odd && (0..self.action.len()).all(|i| {
            (0..self.action.len()).all(|j| {
                let ac = self.action[i].mul(&self.action[j]).add(&self.action[j].mul(&self.action[i]));
                ac == Matrix::scalar_identity(d, &(&two * &pair.form.get(i, j)))
            })
        })
    }
}

/// Congruence diagonalization: `P` invertible with `P G Pᵀ` diagonal.
fn congruence_diagonalize(g: &Matrix) -> (Matrix, Vec<Scalar>) {
    let r = g.rows();
    let mut a = g.to_dense();
    let mut p: Vec<Vector> = (0..r).map(|k| unit_vector(r, k)).collect();
    let add_row_col = |a: &mut Vec<Vector>, p: &mut Vec<Vector>, dst: usize, src: usize, c: &Scalar| {
        // y_dst <- y_dst + c y_src
        for k in 0..r {
            let v = &a[dst][k] + &(c * &a[src][k]);
            a[dst][k] = v;
        }
        for k in 0..r {
            let v = &a[k][dst] + &(c * &a[k][src]);
            a[k][dst] = v;
        }
        for k in 0..r {
            let v = &p[dst][k] + &(c * &p[src][k]);
            p[dst][k] = v;
        }
    };
    for k in 0..r {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..r).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
                p.swap(k, j);
            } else if let Some(j) = (k + 1..r).find(|&j| !a[k][j].is_zero()) {
                add_row_col(&mut a, &mut p, k, j, &Scalar::one());
            } else {
                continue;
            }
        }
        let inv = a[k][k].inv().expect("nonzero pivot");
        for j in k + 1..r {
            if !a[j][k].is_zero() {
                let c = -(&a[j][k] * &inv);
                add_row_col(&mut a, &mut p, j, k, &c);
            }
        }
    }
    let diag = (0..r).map(|k| a[k][k].clone()).collect();
    (Matrix::from_rows(r, &p), diag)
}

/// Gamma matrices on `(C^{1|1})^{⊗m}`, basis reordered even-first.
fn gamma_matrices(count: usize) -> (SuperSpace, Vec<Matrix>) {
    let m = count.div_ceil(2);
    let d = 1usize << m;
    let parity = |b: usize| Parity::from_bit((b.count_ones() % 2) as u8);
    let mut order: Vec<usize> = (0..d).filter(|&b| !parity(b).is_odd()).collect();
    order.extend((0..d).filter(|&b| parity(b).is_odd()));
    let mut pos = vec![0; d];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let i = Scalar::i();
    let mut out = Vec::with_capacity(count);
    for g in 0..count {
        let k = g / 2;
        let second = g % 2 == 1;
        let mut mat = Matrix::zeros(d, d);
        // factor k is bit (m-1-k) of the basis index
        let bit = 1 << (m - 1 - k);
        for b in 0..d {
            let target = b ^ bit;
            // Z on earlier factors
            let earlier = (b >> (m - k)).count_ones();
            let mut c = Scalar::from_int(if earlier % 2 == 0 { 1 } else { -1 });
            if second {
                // σy: |0> -> i|1>, |1> -> -i|0>
                c = if b & bit == 0 { &c * &i } else { -(&c * &i) };
            }
            mat.set(pos[target], pos[b], c);
        }
        out.push(mat);
    }
    let parities = order.iter().map(|&b| parity(b)).collect();
    (SuperSpace::anonymous(parities), out)
}

/// Matrices `ρ(x_j)` with `ρ(x_i)ρ(x_j) + ρ(x_j)ρ(x_i) = 2 f(x_i, x_j)`, irreducible,
/// with the radical of `f` acting as zero. Returns the module and `rank f`.
fn represent(form: &Matrix) -> Result<(CliffordModule, usize), CliffordError> {
    let r = form.rows();
    let (p, diag) = congruence_diagonalize(form);
    let nonzero: Vec<usize> = (0..r).filter(|&k| !diag[k].is_zero()).collect();
    let (space, gammas) = gamma_matrices(nonzero.len());
    let d = space.len();
    let mut field = FieldSpec::gaussian();
    let mut images = vec![Matrix::zeros(d, d); r];
    for (g, &k) in nonzero.iter().enumerate() {
        let root = diag[k].sqrt().ok_or_else(|| CliffordError::NoSquareRoot(diag[k].to_string()))?;
        field = field.join(&FieldSpec::of_scalar(&root));
        images[k] = gammas[g].scale(&root);
    }
    let pinv = p.inverse().expect("congruence transform is invertible");
    let action = (0..r)
        .map(|j| {
            (0..r).fold(Matrix::zeros(d, d), |acc, i| {
                let c = pinv.get(j, i);
                if c.is_zero() {
                    acc
                } else {
                    acc.lin_comb(&c, &images[i])
                }
            })
        })
        .collect();
    Ok((CliffordModule { space, action, field }, nonzero.len()))
}

/// Irreducible supermodule of a nondegenerate Clifford algebra, of dimension `2^{⌈r/2⌉}`.
pub fn irreducible_module(c: &CliffordAlgebra) -> Result<CliffordModule, CliffordError> {
    let (module, rank) = represent(c.pair().form())?;
    if rank < c.generators() {
        return Err(CliffordError::DegenerateForm { rank, generators: c.generators() });
    }
    debug_assert!(module.satisfies_relations(c.pair()));
    Ok(module)
}

/// The irreducible `h ⊗ A`-module attached to a map-weight `ψ`.
///
/// The odd generator `k_i' ⊗ b_j` sits at index `i * dim A + j` of `odd_action`;
/// `h₀̄ ⊗ A` acts by the scalars of `ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightSpace {
    pub psi: MapWeight,
    pub space: SuperSpace,
    pub odd_action: Vec<Matrix>,
    /// `F_ψ(k_i'⊗a, k_j'⊗b) = ψ([k_i', k_j'] ⊗ ab)`.
    pub gram: Matrix,
    pub rank: usize,
    /// Basis of `ker F_ψ` in the generator coordinates.
    pub kernel: Vec<Vector>,
    pub field: FieldSpec,
}

#[derive(Serialize)]
pub struct HighestWeightSummary {
    pub dim: SuperDim,
    pub rank: usize,
    pub kernel_dim: usize,
    pub radicands: Vec<u64>,
}

impl HighestWeightSpace {
    pub fn dim(&self) -> SuperDim {
        self.space.dim()
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    /// Action of a Cartan generator of the current algebra on `H(ψ)`.
    pub fn cartan_action(&self, alg: &CurrentAlgebra, g: usize) -> Matrix {
        let (qi, aj) = alg.split(g);
        let d = self.len();
        if let Some(i) = alg.rd.cartan.iter().position(|c| c.0 == qi) {
            Matrix::scalar_identity(d, &self.psi.value(i, aj))
        } else if let Some(i) = alg.rd.cartan.iter().position(|c| c.1 == qi) {
            self.odd_action[i * alg.dim_a() + aj].clone()
        } else {
            panic!("generator {g} is not in the Cartan subalgebra")
        }
    }

    /// Every vector of `ker F_ψ` acts as zero.
    pub fn kernel_acts_as_zero(&self) -> bool {
        let d = self.len();
        self.kernel.iter().all(|v| {
            v.iter()
                .zip(&self.odd_action)
                .fold(Matrix::zeros(d, d), |acc, (c, m)| if c.is_zero() { acc } else { acc.lin_comb(c, m) })
                .is_zero()
        })
    }

    pub fn summary(&self) -> HighestWeightSummary {
        HighestWeightSummary {
            dim: self.dim(),
            rank: self.rank,
            kernel_dim: self.kernel.len(),
            radicands: self.field.radicands().to_vec(),
        }
    }
}

/// Build `H(ψ)`: the form `F_ψ` on `h₁̄ ⊗ A`, its radical, and an irreducible
/// module of the Clifford algebra of `½F_ψ` (so that `XY + YX = ψ([X,Y])`).
pub fn build_h(psi: &MapWeight, alg: &CurrentAlgebra) -> Result<HighestWeightSpace, CliffordError> {
    let n = alg.n;
    let da = alg.dim_a();
    if psi.n() != n {
        return Err(CliffordError::Shape { expected: n, found: psi.n() });
    }
    let r = n * da;
    let mut gram = Matrix::zeros(r, r);
    let mut half = Matrix::zeros(r, r);
    for i in 0..n {
        for a in 0..da {
            for b in 0..da {
                let v = psi.eval(i, alg.coeff.basis_mul(a, b));
                gram.set(i * da + a, i * da + b, &v * &Scalar::from_int(2));
                half.set(i * da + a, i * da + b, v);
            }
        }
    }
    let (module, rank) = represent(&half)?;
    let kernel = gram.kernel();
    let h = HighestWeightSpace {
        psi: psi.clone(),
        space: module.space,
        odd_action: module.action,
        gram,
        rank,
        kernel,
        field: module.field,
    };
    debug_assert!(h.kernel_acts_as_zero());
    Ok(h)
}

/// Dimension of the left ideal `Cl · x`.
pub fn left_ideal_dim(c: &CliffordAlgebra, x: &[Scalar]) -> usize {
    let rows: Vec<Vector> = (0..c.dim()).map(|m| c.mul(&unit_vector(c.dim(), m), x)).collect();
    let rows: Vec<Vector> = rows.into_iter().filter(|v| !is_zero_vector(v)).collect();
    if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(c.dim(), &rows).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_dimensions_and_relations() {
        assert_eq!(CliffordAlgebra::new(QuadraticPair::standard(0)).dim(), 1);
        let ext = CliffordAlgebra::new(QuadraticPair::diagonal(&[Scalar::zero(), Scalar::zero()]));
        let t1 = ext.generator(0);
        assert!(is_zero_vector(&ext.mul(&t1, &t1)));
        let c = CliffordAlgebra::new(QuadraticPair::standard(2));
        let t12 = c.mul(&c.generator(0), &c.generator(1));
        assert_eq!(c.mul(&t12, &t12), crate::linalg::scale_vector(&Scalar::from_int(-1), &c.one()));
    }

    #[test]
    fn irreducible_dimensions() {
        for (r, d) in [(0, 1), (1, 2), (2, 2), (3, 4), (4, 4), (5, 8)] {
            let c = CliffordAlgebra::new(QuadraticPair::standard(r));
            let m = irreducible_module(&c).unwrap();
            assert_eq!(m.dim().total(), d, "r = {r}");
            assert!(m.satisfies_relations(c.pair()));
        }
        let m = irreducible_module(&CliffordAlgebra::new(QuadraticPair::standard(1))).unwrap();
        assert_eq!(m.dim(), SuperDim::new(1, 1));
        let m = irreducible_module(&CliffordAlgebra::new(QuadraticPair::standard(0))).unwrap();
        assert_eq!(m.dim(), SuperDim::new(1, 0));
    }

    #[test]
    fn non_diagonal_forms() {
        let form = Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 2], &[0, 2, 3]]);
        let pair = QuadraticPair::new(form).unwrap();
        let c = CliffordAlgebra::new(pair.clone());
        let m = irreducible_module(&c).unwrap();
        assert!(m.satisfies_relations(&pair));
        assert_eq!(m.dim().total(), 4);
    }

    #[test]
    fn degenerate_form_rejected() {
        let c = CliffordAlgebra::new(QuadraticPair::diagonal(&[Scalar::one(), Scalar::zero()]));
        assert_eq!(
            irreducible_module(&c).unwrap_err(),
            CliffordError::DegenerateForm { rank: 1, generators: 2 }
        );
        assert!(QuadraticPair::new(Matrix::from_ints(&[&[0, 1], &[2, 0]])).is_err());
    }

    #[test]
    fn radicals_enter_the_field() {
        let pair = QuadraticPair::diagonal(&[Scalar::from_int(2), Scalar::from_int(3)]);
        let m = irreducible_module(&CliffordAlgebra::new(pair.clone())).unwrap();
        assert!(m.satisfies_relations(&pair));
        assert_eq!(m.field.radicands(), &[2, 3]);
    }
}
