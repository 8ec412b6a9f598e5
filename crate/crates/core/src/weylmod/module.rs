use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::linalg::{is_zero_vector, unit_vector, zero_vector, Matrix, Subspace, Vector};
use crate::liesuper::{CurrentAlgebra, WeightVector};
use crate::scalars::Scalar;
use crate::superspace::{sign, Parity, SuperDim};

use super::{Character, WeylError};

/// A subspace of each weight space; absent weights mean zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSubspace(pub BTreeMap<WeightVector, Subspace>);

impl GradedSubspace {
    pub fn dim(&self) -> usize {
        self.0.values().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(Subspace::is_zero)
    }

    pub fn get(&self, w: &WeightVector) -> Option<&Subspace> {
        self.0.get(w)
    }
}

/// A failed instance of `[x,y]v = x(yv) - (-1)^{|x||y|} y(xv)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub x: String,
    pub y: String,
    pub weight: WeightVector,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] fails on weight {}", self.x, self.y, self.weight)
    }
}

/// Finite-dimensional weight module over `q(n) ⊗ A`, stored as one matrix
/// per generator and source weight. A `window` of depth `C` marks a
/// truncation: weights deeper than `C` below the highest weight are unknown.
#[derive(Clone, Debug)]
pub struct WeightModule {
    alg: Arc<CurrentAlgebra>,
    highest: WeightVector,
    spaces: BTreeMap<WeightVector, Vec<Parity>>,
    action: Vec<BTreeMap<WeightVector, Matrix>>,
    window: Option<i64>,
}

impl WeightModule {
    pub fn new(
        alg: Arc<CurrentAlgebra>,
        highest: WeightVector,
        spaces: BTreeMap<WeightVector, Vec<Parity>>,
        action: Vec<BTreeMap<WeightVector, Matrix>>,
        window: Option<i64>,
    ) -> Result<Self, WeylError> {
        if action.len() != alg.dim() {
            return Err(WeylError::Inconsistent(format!("{} action tables for {} generators", action.len(), alg.dim())));
        }
        let spaces: BTreeMap<_, _> = spaces.into_iter().filter(|(_, p)| !p.is_empty()).collect();
        for (g, blocks) in action.iter().enumerate() {
            for (mu, m) in blocks {
                let nu = mu + alg.weight(g);
                let (Some(src), Some(dst)) = (spaces.get(mu), spaces.get(&nu)) else {
                    return Err(WeylError::Inconsistent(format!("action of {} leaves the support at {mu}", alg.lie.label(g))));
                };
                if m.rows() != dst.len() || m.cols() != src.len() {
                    return Err(WeylError::Inconsistent(format!("bad block shape for {} at {mu}", alg.lie.label(g))));
                }
                if m.entries().any(|(r, c, _)| src[c] + alg.parity(g) != dst[r]) {
                    return Err(WeylError::Inconsistent(format!("{} does not respect parity at {mu}", alg.lie.label(g))));
                }
            }
        }
        let action = action
            .into_iter()
            .map(|b| b.into_iter().filter(|(_, m)| !m.is_zero()).collect())
            .collect();
        Ok(WeightModule { alg, highest, spaces, action, window })
    }

    pub fn alg(&self) -> &Arc<CurrentAlgebra> {
        &self.alg
    }

    pub fn highest(&self) -> &WeightVector {
        &self.highest
    }

    pub fn window(&self) -> Option<i64> {
        self.window
    }

    pub fn with_window(mut self, window: Option<i64>) -> Self {
        self.window = window;
        self
    }

    /// Same module with a different declared highest weight.
    pub fn with_highest(mut self, highest: WeightVector) -> Self {
        self.highest = highest;
        self
    }

    pub fn weights(&self) -> impl Iterator<Item = &WeightVector> {
        self.spaces.keys()
    }

    pub fn parities(&self, mu: &WeightVector) -> &[Parity] {
        self.spaces.get(mu).map_or(&[], Vec::as_slice)
    }

    pub fn dim_at(&self, mu: &WeightVector) -> usize {
        self.parities(mu).len()
    }

    pub fn superdim_at(&self, mu: &WeightVector) -> SuperDim {
        let p = self.parities(mu);
        let odd = p.iter().filter(|x| x.is_odd()).count();
        SuperDim::new(p.len() - odd, odd)
    }

    pub fn character(&self) -> Character {
        Character(self.spaces.keys().map(|w| (w.clone(), self.superdim_at(w))).collect())
    }

    pub fn dim(&self) -> SuperDim {
        self.character().total()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn depth(&self, mu: &WeightVector) -> Option<i64> {
        mu.depth_below(&self.highest)
    }

    /// Whether weight `mu` is known exactly (inside the window, or provably zero).
    pub fn is_exact_at(&self, mu: &WeightVector) -> bool {
        match (self.window, self.depth(mu)) {
            (Some(c), Some(d)) => d <= c,
            _ => true,
        }
    }

    /// Block of generator `g` on `M_mu`, if nonzero.
    pub fn block(&self, g: usize, mu: &WeightVector) -> Option<&Matrix> {
        self.action[g].get(mu)
    }

    /// Full block `M_mu → M_{mu+wt g}`; `None` if the target weight space is zero.
    pub fn operator(&self, g: usize, mu: &WeightVector) -> Option<Matrix> {
        let nu = mu + self.alg.weight(g);
        let dt = self.dim_at(&nu);
        if dt == 0 {
            return None;
        }
        Some(self.block(g, mu).cloned().unwrap_or_else(|| Matrix::zeros(dt, self.dim_at(mu))))
    }

    pub fn act(&self, g: usize, mu: &WeightVector, v: &[Scalar]) -> Option<(WeightVector, Vector)> {
        let nu = mu + self.alg.weight(g);
        let dt = self.dim_at(&nu);
        if dt == 0 {
            return None;
        }
        let w = match self.block(g, mu) {
            Some(m) => m.mul_vec(v),
            None => zero_vector(dt),
        };
        Some((nu, w))
    }

    /// Action of a general Lie element; the result is split by weight.
    pub fn act_lie(&self, x: &[Scalar], mu: &WeightVector, v: &[Scalar]) -> BTreeMap<WeightVector, Vector> {
        let mut out: BTreeMap<WeightVector, Vector> = BTreeMap::new();
        for (g, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(m) = self.block(g, mu) {
                let w = m.mul_vec(v);
                let nu = mu + self.alg.weight(g);
                let acc = out.entry(nu).or_insert_with(|| zero_vector(w.len()));
                crate::linalg::add_scaled(acc, c, &w);
            }
        }
        out.retain(|_, v| !is_zero_vector(v));
        out
    }

    /// Basis vectors of the top weight space.
    pub fn top_basis(&self) -> Vec<Vector> {
        let d = self.dim_at(&self.highest);
        (0..d).map(|k| unit_vector(d, k)).collect()
    }

    /// The smallest graded submodule containing the given weight vectors.
    pub fn submodule_generated(&self, seeds: &[(WeightVector, Vector)]) -> GradedSubspace {
        let mut sub: BTreeMap<WeightVector, Subspace> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for (mu, v) in seeds {
            let s = sub.entry(mu.clone()).or_insert_with(|| Subspace::zero(self.dim_at(mu)));
            if s.extend(std::slice::from_ref(v)) {
                queue.push_back((mu.clone(), v.clone()));
            }
        }
        while let Some((mu, v)) = queue.pop_front() {
            for g in 0..self.alg.dim() {
                let Some(m) = self.block(g, &mu) else { continue };
                let w = m.mul_vec(&v);
                if is_zero_vector(&w) {
                    continue;
                }
                let nu = &mu + self.alg.weight(g);
                let s = sub.entry(nu.clone()).or_insert_with(|| Subspace::zero(w.len()));
                if s.extend(std::slice::from_ref(&w)) {
                    queue.push_back((nu, w));
                }
            }
        }
        sub.retain(|_, s| !s.is_zero());
        GradedSubspace(sub)
    }

    pub fn whole(&self) -> GradedSubspace {
        GradedSubspace(self.spaces.iter().map(|(w, p)| (w.clone(), Subspace::full(p.len()))).collect())
    }

    pub fn is_invariant(&self, sub: &GradedSubspace) -> bool {
        sub.0.iter().all(|(mu, s)| {
            (0..self.alg.dim()).all(|g| {
                let Some(m) = self.block(g, mu) else { return true };
                let nu = mu + self.alg.weight(g);
                s.basis().iter().all(|v| {
                    let w = m.mul_vec(v);
                    is_zero_vector(&w) || sub.get(&nu).is_some_and(|t| t.contains(&w))
                })
            })
        })
    }

    /// `M / N` for an invariant graded subspace `N`.
    pub fn quotient(&self, sub: &GradedSubspace) -> WeightModule {
        let zero = |mu: &WeightVector| Subspace::zero(self.dim_at(mu));
        let mut keep: BTreeMap<WeightVector, (Vec<usize>, Subspace)> = BTreeMap::new();
        let mut spaces = BTreeMap::new();
        for (mu, par) in &self.spaces {
            let s = sub.get(mu).cloned().unwrap_or_else(|| zero(mu));
            let qb = s.quotient_basis();
            if qb.is_empty() {
                continue;
            }
            spaces.insert(mu.clone(), qb.iter().map(|&c| par[c]).collect());
            keep.insert(mu.clone(), (qb, s));
        }
        let action = (0..self.alg.dim())
            .map(|g| {
                let mut blocks = BTreeMap::new();
                for (mu, m) in &self.action[g] {
                    let nu = mu + self.alg.weight(g);
                    let (Some((qs, _)), Some((qt, st))) = (keep.get(mu), keep.get(&nu)) else { continue };
                    let cols: Vec<Vector> = qs.iter().map(|&c| st.quotient_coords(&m.column(c))).collect();
                    blocks.insert(mu.clone(), Matrix::from_columns(qt.len(), &cols));
                }
                blocks
            })
            .collect();
        WeightModule {
            alg: self.alg.clone(),
            highest: self.highest.clone(),
            spaces,
            action,
            window: self.window,
        }
        .pruned()
    }

    /// The submodule `N` itself, in the echelon basis of each `N_mu`.
    pub fn submodule(&self, sub: &GradedSubspace) -> WeightModule {
        let mut spaces = BTreeMap::new();
        for (mu, s) in &sub.0 {
            let par = self.parities(mu);
            spaces.insert(mu.clone(), s.pivots().iter().map(|&p| par[p]).collect());
        }
        let action = (0..self.alg.dim())
            .map(|g| {
                let mut blocks = BTreeMap::new();
                for (mu, s) in &sub.0 {
                    let Some(m) = self.block(g, mu) else { continue };
                    let nu = mu + self.alg.weight(g);
                    let Some(t) = sub.get(&nu) else { continue };
                    let cols: Vec<Vector> = s
                        .basis()
                        .iter()
                        .map(|v| t.coords(&m.mul_vec(v)).expect("subspace is not invariant"))
                        .collect();
                    blocks.insert(mu.clone(), Matrix::from_columns(t.dim(), &cols));
                }
                blocks
            })
            .collect();
        WeightModule {
            alg: self.alg.clone(),
            highest: self.highest.clone(),
            spaces,
            action,
            window: self.window,
        }
        .pruned()
    }

    fn pruned(mut self) -> Self {
        for blocks in &mut self.action {
            blocks.retain(|_, m| !m.is_zero());
        }
        self
    }

    /// `ΠM`: same action, parities flipped.
    pub fn parity_shift(&self) -> WeightModule {
        let mut m = self.clone();
        for p in m.spaces.values_mut() {
            for x in p.iter_mut() {
                *x = x.flip();
            }
        }
        m
    }

    pub fn direct_sum(&self, other: &WeightModule) -> WeightModule {
        let mut spaces = self.spaces.clone();
        for (w, p) in &other.spaces {
            spaces.entry(w.clone()).or_default().extend(p.iter().copied());
        }
        let action = (0..self.alg.dim())
            .map(|g| {
                let mut blocks = BTreeMap::new();
                let mut mus: Vec<&WeightVector> = self.action[g].keys().chain(other.action[g].keys()).collect();
                mus.sort();
                mus.dedup();
                for mu in mus {
                    let nu = mu + self.alg.weight(g);
                    let a = self.block(g, mu).cloned().unwrap_or_else(|| Matrix::zeros(self.dim_at(&nu), self.dim_at(mu)));
                    let b = other.block(g, mu).cloned().unwrap_or_else(|| Matrix::zeros(other.dim_at(&nu), other.dim_at(mu)));
                    blocks.insert(mu.clone(), a.direct_sum(&b));
                }
                blocks
            })
            .collect();
        let window = match (self.window, other.window) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX))),
        };
        WeightModule { alg: self.alg.clone(), highest: self.highest.clone(), spaces, action, window }
    }

    /// Check the bracket relation for every pair of generators on every weight
    /// space whose intermediate weights are known exactly.
    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        let d = self.alg.dim();
        for mu in self.spaces.keys() {
            for x in 0..d {
                let mx = mu + self.alg.weight(x);
                if !self.is_exact_at(&mx) {
                    continue;
                }
                for y in 0..d {
                    let my = mu + self.alg.weight(y);
                    let nu = &mx + self.alg.weight(y);
                    if !self.is_exact_at(&my) || !self.is_exact_at(&nu) || self.dim_at(&nu) == 0 {
                        continue;
                    }
                    let zero = || Matrix::zeros(self.dim_at(&nu), self.dim_at(mu));
                    let compose = |a: usize, b: usize, mid: &WeightVector| match (self.block(b, mu), self.block(a, mid)) {
                        (Some(p), Some(q)) => q.mul(p),
                        _ => zero(),
                    };
                    let s = Scalar::from_int(sign(self.alg.parity(x), self.alg.parity(y)));
                    let lhs = compose(x, y, &my).lin_comb(&-&s, &compose(y, x, &mx));
                    let mut rhs = zero();
                    for (k, c) in self.alg.lie.bracket_basis(x, y) {
                        if let Some(m) = self.block(*k, mu) {
                            rhs = rhs.lin_comb(c, m);
                        }
                    }
                    if lhs != rhs {
                        return Err(AxiomViolation {
                            x: self.alg.lie.label(x).into(),
                            y: self.alg.lie.label(y).into(),
                            weight: mu.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `k_i ⊗ 1` acts on `M_mu` by `mu_i`.
    pub fn check_weights(&self) -> bool {
        let unit = self.alg.coeff.unit().clone();
        self.spaces.iter().all(|(mu, p)| {
            self.alg.rd.cartan.iter().enumerate().all(|(i, &(k, _))| {
                let x = self.alg.tensor(k, &unit);
                let expect = Scalar::from_int(mu.0[i]);
                (0..p.len()).all(|c| {
                    let v = unit_vector(p.len(), c);
                    let got = self.act_lie(&x, mu, &v);
                    let want = crate::linalg::scale_vector(&expect, &v);
                    match got.get(mu) {
                        Some(w) => *w == want && got.len() == 1,
                        None => is_zero_vector(&want) && got.is_empty(),
                    }
                })
            })
        })
    }

    /// Every generator block respects parity.
    pub fn check_parity(&self) -> bool {
        self.action.iter().enumerate().all(|(g, blocks)| {
            blocks.iter().all(|(mu, m)| {
                let src = self.parities(mu);
                let dst = self.parities(&(mu + self.alg.weight(g)));
                m.entries().all(|(r, c, _)| src[c] + self.alg.parity(g) == dst[r])
            })
        })
    }
}
