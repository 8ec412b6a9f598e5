//! Tensor products of weight modules, odd endomorphisms, the ⊗̂ half of a
//! product of two Q-type modules, and isomorphism testing up to parity.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::CoeffError;
use crate::linalg::{Matrix, Subspace};
use crate::liesuper::{CurrentAlgebra, WeightVector};
use crate::scalars::Scalar;
use crate::superspace::{sign, Parity};
use crate::weylmod::{
    compute_i_psi, local_weyl, Character, GradedSubspace, LocalWeylOptions, MapWeight, WeightModule, WeylError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("modules live over different current algebras")]
    AlgebraMismatch,
    #[error("odd endomorphism does not square to a scalar")]
    NonScalarSquare,
    #[error("no square root of {0} in the scalar field")]
    NoSquareRoot(String),
    #[error("ideals I_ψ₁^n₁ and I_ψ₂^n₂ are not comaximal")]
    HypothesisViolation,
    #[error("eigenspace of φ̃₁⊗φ₂ is not a submodule")]
    NotInvariant,
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

fn same_algebra(a: &Arc<CurrentAlgebra>, b: &Arc<CurrentAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || (a.n == b.n && a.coeff == b.coeff)
}

/// Offsets of the `(μ, ν)` blocks inside each weight space of `M ⊗ N`.
struct TensorLayout {
    offsets: BTreeMap<(WeightVector, WeightVector), usize>,
    spaces: BTreeMap<WeightVector, Vec<Parity>>,
}

impl TensorLayout {
    fn new(m: &WeightModule, n: &WeightModule) -> Self {
        let mut offsets = BTreeMap::new();
        let mut spaces: BTreeMap<WeightVector, Vec<Parity>> = BTreeMap::new();
        for mu in m.weights() {
            for nu in n.weights() {
                let sp = spaces.entry(mu + nu).or_default();
                offsets.insert((mu.clone(), nu.clone()), sp.len());
                for pm in m.parities(mu) {
                    for pn in n.parities(nu) {
                        sp.push(*pm + *pn);
                    }
                }
            }
        }
        TensorLayout { offsets, spaces }
    }

    fn index(&self, n: &WeightModule, mu: &WeightVector, nu: &WeightVector, i: usize, j: usize) -> usize {
        self.offsets[&(mu.clone(), nu.clone())] + i * n.dim_at(nu) + j
    }
}

/// `M ⊗ N` with `x(m⊗n) = xm⊗n + (-1)^{|x||m|} m⊗xn`.
pub fn module_tensor(m: &WeightModule, n: &WeightModule) -> Result<WeightModule, TensorError> {
    if !same_algebra(m.alg(), n.alg()) {
        return Err(TensorError::AlgebraMismatch);
    }
    let alg = m.alg().clone();
    let lay = TensorLayout::new(m, n);
    let mut action = vec![BTreeMap::new(); alg.dim()];
    for (g, blocks) in action.iter_mut().enumerate() {
        let beta = alg.weight(g);
        let pg = alg.parity(g);
        let mut acc: BTreeMap<WeightVector, Matrix> = BTreeMap::new();
        for mu in m.weights() {
            for nu in n.weights() {
                let kappa = mu + nu;
                let target = &kappa + beta;
                let Some(tp) = lay.spaces.get(&target) else { continue };
                let mat = acc
                    .entry(kappa.clone())
                    .or_insert_with(|| Matrix::zeros(tp.len(), lay.spaces[&kappa].len()));
                if let Some(b) = m.block(g, mu) {
                    let mu2 = mu + beta;
                    for (r, c, x) in b.entries() {
                        for j in 0..n.dim_at(nu) {
                            mat.add_to(lay.index(n, &mu2, nu, r, j), lay.index(n, mu, nu, c, j), x);
                        }
                    }
                }
                if let Some(b) = n.block(g, nu) {
                    let nu2 = nu + beta;
                    for (i, pm) in m.parities(mu).iter().enumerate() {
                        let s = Scalar::from_int(sign(pg, *pm));
                        for (r, c, x) in b.entries() {
                            mat.add_to(lay.index(n, mu, &nu2, i, r), lay.index(n, mu, nu, i, c), &(&s * x));
                        }
                    }
                }
            }
        }
        *blocks = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    }
    let window = match (m.window(), n.window()) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX))),
    };
    Ok(WeightModule::new(alg, m.highest() + n.highest(), lay.spaces, action, window)?)
}

/// A weight-preserving linear map, one block per weight.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BlockMap(pub BTreeMap<WeightVector, Matrix>);

impl BlockMap {
    pub fn compose(&self, first: &BlockMap) -> BlockMap {
        BlockMap(
            self.0
                .iter()
                .filter_map(|(w, a)| first.0.get(w).map(|b| (w.clone(), a.mul(b))))
                .collect(),
        )
    }

    pub fn is_invertible(&self) -> bool {
        self.0.values().all(Matrix::is_invertible)
    }

    /// `c` with every block equal to `c·id`, if there is one.
    pub fn scalar_value(&self) -> Option<Scalar> {
        let mut c: Option<Scalar> = None;
        for m in self.0.values() {
            let x = m.get(0, 0);
            if *m != Matrix::scalar_identity(m.rows(), &x) {
                return None;
            }
            match &c {
                Some(y) if *y != x => return None,
                _ => c = Some(x),
            }
        }
        c
    }

    pub fn scale(&self, c: &Scalar) -> BlockMap {
        BlockMap(self.0.iter().map(|(w, m)| (w.clone(), m.scale(c))).collect())
    }

    pub fn lin_comb(maps: &[BlockMap], coeffs: &[Scalar]) -> BlockMap {
        let mut out: BTreeMap<WeightVector, Matrix> = BTreeMap::new();
        for (m, c) in maps.iter().zip(coeffs) {
            for (w, b) in &m.0 {
                let e = out.entry(w.clone()).or_insert_with(|| Matrix::zeros(b.rows(), b.cols()));
                *e = e.lin_comb(c, b);
            }
        }
        BlockMap(out)
    }

    /// Shape as (rows, cols) summed over weights.
    pub fn shape(&self) -> (usize, usize) {
        self.0.values().fold((0, 0), |(r, c), m| (r + m.rows(), c + m.cols()))
    }
}

/// Basis of the maps `φ: M → N` of the given degree with `φx = (-1)^{|x||φ|} xφ`
/// for every generator `x`.
pub fn intertwiners(m: &WeightModule, n: &WeightModule, degree: Parity) -> Result<Vec<BlockMap>, TensorError> {
    if !same_algebra(m.alg(), n.alg()) {
        return Err(TensorError::AlgebraMismatch);
    }
    let alg = m.alg().clone();
    // variables: entries (row in N_μ, col in M_μ) with matching parity
    let mut vars: BTreeMap<(WeightVector, usize, usize), usize> = BTreeMap::new();
    for mu in m.weights() {
        let (pm, pn) = (m.parities(mu), n.parities(mu));
        for (r, a) in pn.iter().enumerate() {
            for (c, b) in pm.iter().enumerate() {
                if *b + degree == *a {
                    let k = vars.len();
                    vars.insert((mu.clone(), r, c), k);
                }
            }
        }
    }
    let nv = vars.len();
    if nv == 0 {
        return Ok(Vec::new());
    }
    let var = |mu: &WeightVector, r: usize, c: usize| vars.get(&(mu.clone(), r, c)).copied();
    let mut rows = Vec::new();
    for g in 0..alg.dim() {
        let beta = alg.weight(g);
        let s = Scalar::from_int(sign(alg.parity(g), degree));
        for mu in m.weights() {
            let nu = mu + beta;
            let (mb, nb) = (m.block(g, mu), n.block(g, mu));
            if (mb.is_none() && nb.is_none()) || n.dim_at(&nu) == 0 {
                continue;
            }
            // (φ_ν M_g)[r,c] - s (N_g φ_μ)[r,c] = 0
            let mut eqs: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
            if let Some(b) = mb {
                for (k, c, x) in b.entries() {
                    for r in 0..n.dim_at(&nu) {
                        if let Some(v) = var(&nu, r, k) {
                            *eqs.entry((r, c)).or_default().entry(v).or_insert_with(Scalar::zero) += x;
                        }
                    }
                }
            }
            if let Some(b) = nb {
                for (r, k, x) in b.entries() {
                    for c in 0..m.dim_at(mu) {
                        if let Some(v) = var(mu, k, c) {
                            *eqs.entry((r, c)).or_default().entry(v).or_insert_with(Scalar::zero) -= &(&s * x);
                        }
                    }
                }
            }
            for (_, eq) in eqs {
                let mut row = vec![Scalar::zero(); nv];
                for (v, x) in eq {
                    row[v] = x;
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..nv).map(|k| crate::linalg::unit_vector(nv, k)).collect()
    } else {
        Matrix::from_rows(nv, &rows).kernel()
    };
    Ok(kernel
        .into_iter()
        .map(|sol| {
            let mut blocks: BTreeMap<WeightVector, Matrix> = m
                .weights()
                .map(|mu| (mu.clone(), Matrix::zeros(n.dim_at(mu), m.dim_at(mu))))
                .collect();
            for ((mu, r, c), k) in &vars {
                if !sol[*k].is_zero() {
                    blocks.get_mut(mu).expect("weight present").set(*r, *c, sol[*k].clone());
                }
            }
            BlockMap(blocks)
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct OddEndomorphism {
    pub map: BlockMap,
    /// `c` with `φ² = c·id`, when the square is scalar.
    pub square_scalar: Option<Scalar>,
}

pub fn odd_endomorphisms(m: &WeightModule) -> Result<Vec<OddEndomorphism>, TensorError> {
    Ok(intertwiners(m, m, Parity::Odd)?
        .into_iter()
        .map(|map| {
            let square_scalar = map.compose(&map).scalar_value();
            OddEndomorphism { map, square_scalar }
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct HatTensor {
    pub module: WeightModule,
    /// Both factors were Q-type and the product was halved.
    pub halved: bool,
}

fn normalized_odd(m: &WeightModule) -> Result<Option<BlockMap>, TensorError> {
    let odd = odd_endomorphisms(m)?;
    let Some(phi) = odd.into_iter().next() else { return Ok(None) };
    let c = phi.square_scalar.ok_or(TensorError::NonScalarSquare)?;
    if c.is_zero() {
        return Err(TensorError::NonScalarSquare);
    }
    let s = (-&c).sqrt().ok_or_else(|| TensorError::NoSquareRoot((-&c).to_string()))?;
    let inv = s.inv().map_err(|_| TensorError::NonScalarSquare)?;
    Ok(Some(phi.map.scale(&inv)))
}

/// `V̂ = {v : (φ̃₁⊗φ₂)v = v}` with `φ̃₁ = iφ₁` and `φ_k² = -1`; the whole
/// product when a factor has no odd endomorphism.
pub fn hat_tensor(m: &WeightModule, n: &WeightModule) -> Result<HatTensor, TensorError> {
    let t = module_tensor(m, n)?;
    let (Some(p1), Some(p2)) = (normalized_odd(m)?, normalized_odd(n)?) else {
        return Ok(HatTensor { module: t, halved: false });
    };
    let p1 = p1.scale(&Scalar::i());
    let lay = TensorLayout::new(m, n);
    let mut big: BTreeMap<WeightVector, Matrix> =
        lay.spaces.iter().map(|(w, p)| (w.clone(), Matrix::zeros(p.len(), p.len()))).collect();
    for mu in m.weights() {
        for nu in n.weights() {
            let mat = big.get_mut(&(mu + nu)).expect("weight present");
            let (a, b) = (&p1.0[mu], &p2.0[nu]);
            for (r, c, x) in a.entries() {
                // (A⊗B)(m⊗n) = (-1)^{|B||m|} Am ⊗ Bn with B odd
                let s = Scalar::from_int(sign(Parity::Odd, m.parities(mu)[c]));
                for (r2, c2, y) in b.entries() {
                    mat.add_to(lay.index(n, mu, nu, r, r2), lay.index(n, mu, nu, c, c2), &(&s * &(x * y)));
                }
            }
        }
    }
    let phi = BlockMap(big);
    let sq = phi.compose(&phi);
    if sq.scalar_value() != Some(Scalar::one()) && !sq.0.is_empty() {
        return Err(TensorError::NonScalarSquare);
    }
    let eigen = GradedSubspace(
        phi.0
            .iter()
            .map(|(w, a)| {
                let d = a.rows();
                (w.clone(), Subspace::span(d, &a.sub(&Matrix::identity(d)).kernel()))
            })
            .filter(|(_, s)| !s.is_zero())
            .collect(),
    );
    if !t.is_invariant(&eigen) {
        return Err(TensorError::NotInvariant);
    }
    Ok(HatTensor { module: t.submodule(&eigen), halved: true })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Iso,
    IsoAfterPi,
    NotIso,
}

#[derive(Clone, Debug)]
pub struct IsoResult {
    pub verdict: IsoVerdict,
    /// Even isomorphism `M → N` (or `M → ΠN`).
    pub witness: Option<BlockMap>,
}

fn find_isomorphism(m: &WeightModule, n: &WeightModule) -> Result<Option<BlockMap>, TensorError> {
    let basis = intertwiners(m, n, Parity::Even)?;
    if basis.is_empty() {
        return Ok(m.is_zero().then(BlockMap::default));
    }
    let k = basis.len();
    let mut trials: Vec<Vec<Scalar>> = Vec::new();
    for t in 1..=8i64 {
        trials.push((0..k).map(|j| Scalar::from_int((j as i64 + 1).pow(t as u32 % 4 + 1) + t)).collect());
    }
    for j in 0..k {
        trials.push((0..k).map(|i| Scalar::from_int((i == j) as i64)).collect());
    }
    for coeffs in trials {
        let phi = BlockMap::lin_comb(&basis, &coeffs);
        if phi.0.len() == m.weights().count() && phi.is_invertible() {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Decide `M ≅ N`, `M ≅ ΠN`, or neither, returning an explicit even isomorphism.
pub fn is_isomorphic_up_to_parity(m: &WeightModule, n: &WeightModule) -> Result<IsoResult, TensorError> {
    let (cm, cn) = (m.character(), n.character());
    if cm == cn {
        if let Some(w) = find_isomorphism(m, n)? {
            return Ok(IsoResult { verdict: IsoVerdict::Iso, witness: Some(w) });
        }
    }
    if cm == cn.swapped() {
        if let Some(w) = find_isomorphism(m, &n.parity_shift())? {
            return Ok(IsoResult { verdict: IsoVerdict::IsoAfterPi, witness: Some(w) });
        }
    }
    Ok(IsoResult { verdict: IsoVerdict::NotIso, witness: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TensorBranch {
    /// `W₁ ⊗ W₂ ≅ W`
    Single,
    /// `W₁ ⊗ W₂ ≅ W ⊕ W`
    Double,
    /// `W₁ ⊗ W₂ ≅ W ⊕ ΠW`
    DoubleTwisted,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorTheoremReport {
    pub branch: TensorBranch,
    pub verdict: IsoVerdict,
    pub n_psi: (u32, u32),
    pub ideal_dims: (usize, usize),
    pub comaximal: bool,
    pub factor_characters: (Character, Character),
    pub tensor_character: Character,
    pub weyl_character: Character,
    /// Total (rows, cols) of the witness isomorphism.
    pub witness_shape: Option<(usize, usize)>,
}

impl TensorTheoremReport {
    pub fn holds(&self) -> bool {
        self.branch != TensorBranch::Neither
    }
}

/// Build both local Weyl modules and the one for `ψ₁+ψ₂`, check that the
/// annihilating ideals are comaximal, and decide which decomposition holds.
pub fn verify_tensor_theorem(
    alg: &Arc<CurrentAlgebra>,
    psi1: &MapWeight,
    psi2: &MapWeight,
    opts: &LocalWeylOptions,
) -> Result<TensorTheoremReport, TensorError> {
    let sum = psi1.add(psi2);
    for l in [psi1.lambda(), psi2.lambda(), sum.lambda()] {
        if !l.in_lambda_plus() {
            return Err(WeylError::NonDominant(l.clone()).into());
        }
    }
    let w1 = local_weyl(alg, psi1, opts)?;
    let w2 = local_weyl(alg, psi2, opts)?;
    let i1 = compute_i_psi(&w1.module)?;
    let i2 = compute_i_psi(&w2.module)?;
    let comaximal = i1.power.is_comaximal(&i2.power)?;
    if !comaximal {
        return Err(TensorError::HypothesisViolation);
    }
    let t = module_tensor(&w1.module, &w2.module)?;
    let w = local_weyl(alg, &sum, opts)?.module;
    let candidates = [
        (TensorBranch::Single, w.clone()),
        (TensorBranch::Double, w.direct_sum(&w)),
        (TensorBranch::DoubleTwisted, w.direct_sum(&w.parity_shift())),
    ];
    let mut branch = TensorBranch::Neither;
    let mut verdict = IsoVerdict::NotIso;
    let mut witness_shape = None;
    for (b, cand) in candidates {
        let r = is_isomorphic_up_to_parity(&t, &cand)?;
        if r.verdict != IsoVerdict::NotIso {
            branch = b;
            verdict = r.verdict;
            witness_shape = r.witness.map(|x| x.shape());
            break;
        }
    }
    Ok(TensorTheoremReport {
        branch,
        verdict,
        n_psi: (i1.n_psi, i2.n_psi),
        ideal_dims: (i1.ideal.dim(), i2.ideal.dim()),
        comaximal,
        factor_characters: (w1.module.character(), w2.module.character()),
        tensor_character: t.character(),
        weyl_character: w.character(),
        witness_shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CommAlgebra;
    use crate::superspace::SuperDim;
    use crate::weylmod::evaluation_module;

    fn defining(n: usize) -> WeightModule {
        let alg = Arc::new(CurrentAlgebra::new(n, Arc::new(CommAlgebra::field())).unwrap());
        evaluation_module(&alg, &[Scalar::one()]).unwrap()
    }

    #[test]
    fn defining_module_is_q_type() {
        let v = defining(2);
        let odd = odd_endomorphisms(&v).unwrap();
        assert_eq!(odd.len(), 1);
        let c = odd[0].square_scalar.clone().unwrap();
        assert!(!c.is_zero());
    }

    #[test]
    fn tensor_character_and_axioms() {
        let v = defining(2);
        let t = module_tensor(&v, &v).unwrap();
        assert_eq!(t.character(), v.character().tensor(&v.character()));
        assert!(t.check_axioms().is_ok());
        assert_eq!(t.dim(), SuperDim::new(8, 8));
    }

    #[test]
    fn hat_tensor_halves() {
        let v = defining(2);
        let h = hat_tensor(&v, &v).unwrap();
        assert!(h.halved);
        assert_eq!(h.module.dim().total(), 8);
        assert!(h.module.check_axioms().is_ok());
        let t = module_tensor(&v, &v).unwrap();
        let r = is_isomorphic_up_to_parity(&t, &h.module.direct_sum(&h.module)).unwrap();
        assert_ne!(r.verdict, IsoVerdict::NotIso);
    }

    #[test]
    fn iso_self_and_shift() {
        let v = defining(2);
        assert_eq!(is_isomorphic_up_to_parity(&v, &v).unwrap().verdict, IsoVerdict::Iso);
        let t = module_tensor(&v, &v).unwrap();
        let r = is_isomorphic_up_to_parity(&v, &t).unwrap();
        assert_eq!(r.verdict, IsoVerdict::NotIso);
    }
}
