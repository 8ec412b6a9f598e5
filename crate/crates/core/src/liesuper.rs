//! Lie superalgebras by graded structure constants, the queer algebra q(n)
//! from its matrix realization, its root datum, and current algebras q(n)⊗A.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::CommAlgebra;
use crate::linalg::{add_scaled, is_zero_vector, unit_vector, zero_vector, Vector};
use crate::scalars::Scalar;
use crate::superspace::{sign_scalar, Parity, SuperDim, SuperSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("q(n) needs n >= 2, got {0}")]
    InvalidRank(usize),
    #[error("{0} is not a positive even root")]
    NotARoot(WeightVector),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
}

/// Integer vector in the ε-basis of the dual Cartan.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector(vec![0; n])
    }

    /// `ε_i - ε_j` (1-based indices).
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] += 1;
        v[j - 1] -= 1;
        WeightVector(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `λ(h_i) = λ_i - λ_{i+1}` (1-based `i`).
    pub fn h_eval(&self, i: usize) -> i64 {
        self.0[i - 1] - self.0[i]
    }

    /// All `λ(h_i) >= 0`.
    pub fn is_dominant(&self) -> bool {
        (1..self.n()).all(|i| self.h_eval(i) >= 0)
    }

    /// Dominant, and `λ_i = λ_{i+1}` only when both vanish.
    pub fn in_lambda_plus(&self) -> bool {
        self.is_dominant()
            && (1..self.n()).all(|i| self.h_eval(i) != 0 || (self.0[i - 1] == 0 && self.0[i] == 0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Coefficients `c` with `self = Σ c_i α_i`, if the coordinate sum is zero.
    pub fn simple_root_coords(&self) -> Option<Vec<i64>> {
        if self.sum() != 0 {
            return None;
        }
        let mut acc = 0;
        Some(self.0[..self.n() - 1].iter().map(|x| {
            acc += x;
            acc
        }).collect())
    }

    /// Whether `self` lies in the nonnegative integer span of the simple roots.
    pub fn in_q_plus(&self) -> bool {
        self.simple_root_coords().is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// Sum of simple-root coordinates of `top - self`, when `self <= top`.
    pub fn depth_below(&self, top: &WeightVector) -> Option<i64> {
        let c = (top - self).simple_root_coords()?;
        c.iter().all(|&x| x >= 0).then(|| c.iter().sum())
    }

    /// Height of a root `ε_i - ε_j`: `|j - i|`.
    pub fn height(&self) -> i64 {
        (top_index(self) as i64 - bottom_index(self) as i64).abs()
    }

    pub fn sorted_desc(&self) -> WeightVector {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        WeightVector(v)
    }

    /// Dominance order on sorted coordinates with equal totals.
    pub fn dominated_by(&self, top: &WeightVector) -> bool {
        if self.sum() != top.sum() {
            return false;
        }
        let (a, b) = (self.sorted_desc(), top.sorted_desc());
        let mut sa = 0;
        let mut sb = 0;
        a.0.iter().zip(&b.0).all(|(x, y)| {
            sa += x;
            sb += y;
            sa <= sb
        })
    }

    pub fn permute(&self, i: usize, j: usize) -> WeightVector {
        let mut v = self.0.clone();
        v.swap(i, j);
        WeightVector(v)
    }
}

fn top_index(w: &WeightVector) -> usize {
    w.0.iter().position(|&x| x > 0).unwrap_or(0)
}

fn bottom_index(w: &WeightVector) -> usize {
    w.0.iter().position(|&x| x < 0).unwrap_or(0)
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, o: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, o: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Sparse vector in an algebra basis, sorted by index.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_to_dense(v: &SparseVec, dim: usize) -> Vector {
    let mut out = zero_vector(dim);
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect()
}

/// A finite-dimensional Lie superalgebra with a homogeneous, weight-graded basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSuperAlgebra {
    space: SuperSpace,
    weights: Vec<WeightVector>,
    brackets: Vec<Vec<SparseVec>>,
}

#[derive(Serialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    bracket: Vec<(usize, String)>,
}

#[derive(Serialize)]
struct AlgebraDump<'a> {
    labels: &'a [String],
    parities: &'a [Parity],
    dims: SuperDim,
    weights: &'a [WeightVector],
    structure: Vec<BracketEntry>,
}

impl Serialize for LieSuperAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut structure = Vec::new();
        for (i, row) in self.brackets.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if !b.is_empty() {
                    let bracket = b.iter().map(|(k, x)| (*k, x.to_string())).collect();
                    structure.push(BracketEntry { i, j, bracket });
                }
            }
        }
        AlgebraDump {
            labels: self.space.labels(),
            parities: self.space.parities(),
            dims: self.space.dim(),
            weights: &self.weights,
            structure,
        }
        .serialize(s)
    }
}

/// Result of a structural self-check: the first offending basis indices, if any.
pub type CheckResult = Result<(), Vec<usize>>;

impl LieSuperAlgebra {
    pub fn new(space: SuperSpace, weights: Vec<WeightVector>, brackets: Vec<Vec<SparseVec>>) -> Self {
        assert_eq!(space.len(), weights.len());
        assert_eq!(space.len(), brackets.len());
        LieSuperAlgebra { space, weights, brackets }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn superdim(&self) -> SuperDim {
        self.space.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.space.labels()[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LieError> {
        self.space.index_of(label).ok_or_else(|| LieError::UnknownGenerator(label.to_string()))
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parity(i)
    }

    pub fn weight(&self, i: usize) -> &WeightVector {
        &self.weights[i]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    /// Bilinear extension of the basis bracket.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.brackets[i][j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    /// `[a,b] = -(-1)^{|a||b|}[b,a]` on basis pairs.
    pub fn check_skew(&self) -> CheckResult {
        for i in 0..self.dim() {
            for j in 0..=i {
                let s = -sign_scalar(self.parity(i), self.parity(j));
                let rhs: SparseVec =
                    self.brackets[j][i].iter().map(|(k, x)| (*k, &s * x)).collect();
                if self.brackets[i][j] != rhs {
                    return Err(vec![i, j]);
                }
            }
        }
        Ok(())
    }

    /// `[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]` on basis triples.
    pub fn check_jacobi(&self) -> CheckResult {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                let ab = sparse_to_dense(&self.brackets[a][b], d);
                let s = sign_scalar(self.parity(a), self.parity(b));
                for c in 0..d {
                    let bc = sparse_to_dense(&self.brackets[b][c], d);
                    let ac = sparse_to_dense(&self.brackets[a][c], d);
                    let lhs = self.bracket(&self.basis_vector(a), &bc);
                    let mut rhs = self.bracket(&ab, &self.basis_vector(c));
                    add_scaled(&mut rhs, &s, &self.bracket(&self.basis_vector(b), &ac));
                    if lhs != rhs {
                        return Err(vec![a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    /// `[g_μ, g_ν] ⊆ g_{μ+ν}` and parity additivity.
    pub fn check_grading(&self) -> CheckResult {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let w = &self.weights[i] + &self.weights[j];
                let p = self.parity(i) + self.parity(j);
                for (k, _) in &self.brackets[i][j] {
                    if self.weights[*k] != w || self.parity(*k) != p {
                        return Err(vec![i, j, *k]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the span of `idx` is closed under the bracket.
    pub fn is_closed(&self, idx: &[usize]) -> bool {
        idx.iter().all(|&i| {
            idx.iter().all(|&j| self.brackets[i][j].iter().all(|(k, _)| idx.contains(k)))
        })
    }
}

/// The Chevalley generators attached to a simple root `α_i`, as basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chevalley {
    pub e: usize,
    pub e_odd: usize,
    pub f: usize,
    pub f_odd: usize,
    /// `h_i = k_i - k_{i+1}` as indices of `k_i`, `k_{i+1}`.
    pub h: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    pub n: usize,
    pub positive_roots: Vec<WeightVector>,
    pub roots: Vec<WeightVector>,
    pub simple_roots: Vec<WeightVector>,
    /// Root to `(e_{i,j}, e'_{i,j})` basis indices.
    pub root_space: BTreeMap<WeightVector, (usize, usize)>,
    /// `(k_i, k_i')` basis indices.
    pub cartan: Vec<(usize, usize)>,
    pub chevalley: Vec<Chevalley>,
}

impl RootDatum {
    pub fn is_root(&self, w: &WeightVector) -> bool {
        self.root_space.contains_key(w)
    }

    pub fn height(&self, alpha: &WeightVector) -> i64 {
        alpha.height()
    }

    /// For a simple root α, some positive root α' with α+α' a root.
    pub fn partner_root(&self, simple: &WeightVector) -> Option<WeightVector> {
        self.positive_roots.iter().find(|b| self.is_root(&(simple + *b))).cloned()
    }

    /// Whether Φ is stable under every transposition of ε-coordinates.
    pub fn is_weyl_stable(&self) -> bool {
        (0..self.n).all(|i| {
            (i + 1..self.n).all(|j| self.roots.iter().all(|r| self.is_root(&r.permute(i, j))))
        })
    }
}

fn q_index(n: usize, i: usize, j: usize, odd: bool) -> usize {
    (if odd { n * n } else { 0 }) + (i - 1) * n + (j - 1)
}

/// Label of q(n) basis element `e(i,j)` or `e'(i,j)`.
pub fn q_label(i: usize, j: usize, odd: bool) -> String {
    if odd {
        format!("e'({i},{j})")
    } else {
        format!("e({i},{j})")
    }
}

type IntMat = Vec<Vec<i64>>;

/// `2n × 2n` block matrix of a q(n) basis element.
fn q_matrix(n: usize, idx: usize) -> IntMat {
    let odd = idx >= n * n;
    let r = idx % (n * n);
    let (i, j) = (r / n, r % n);
    let mut m = vec![vec![0; 2 * n]; 2 * n];
    if odd {
        m[i][n + j] = 1;
        m[n + i][j] = 1;
    } else {
        m[i][j] = 1;
        m[n + i][n + j] = 1;
    }
    m
}

fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let d = a.len();
    let mut out = vec![vec![0; d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] != 0 {
                for j in 0..d {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

/// The operator `P` with `XP - (-1)^{|X|} PX = 0` cutting q(n) out of gl(n|n).
fn p_matrix(n: usize) -> IntMat {
    let mut p = vec![vec![0; 2 * n]; 2 * n];
    for i in 0..n {
        p[i][n + i] = 1;
        p[n + i][i] = -1;
    }
    p
}

/// Whether a `2n × 2n` matrix of parity `odd` supercommutes with `P`.
fn commutes_with_p(n: usize, x: &IntMat, odd: bool) -> bool {
    let p = p_matrix(n);
    let (xp, px) = (int_mul(x, &p), int_mul(&p, x));
    let s = if odd { -1 } else { 1 };
    xp.iter().zip(&px).all(|(a, b)| a.iter().zip(b).all(|(x, y)| x - s * y == 0))
}

/// Read off coordinates of a q-shaped block matrix `[[A,B],[B,A]]`.
fn decompose(n: usize, m: &IntMat) -> SparseVec {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            assert_eq!(m[i][j], m[n + i][n + j], "bracket left q(n)");
            if m[i][j] != 0 {
                out.push((q_index(n, i + 1, j + 1, false), Scalar::from_int(m[i][j])));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            assert_eq!(m[i][n + j], m[n + i][j], "bracket left q(n)");
            if m[i][n + j] != 0 {
                out.push((q_index(n, i + 1, j + 1, true), Scalar::from_int(m[i][n + j])));
            }
        }
    }
    out.sort_by_key(|(k, _)| *k);
    out
}

/// q(n) with structure constants from its matrix realization, and its root datum.
pub fn build_q(n: usize) -> Result<(LieSuperAlgebra, RootDatum), LieError> {
    if n < 2 {
        return Err(LieError::InvalidRank(n));
    }
    let dim = 2 * n * n;
    let mut labels = Vec::with_capacity(dim);
    let mut parities = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for odd in [false, true] {
        for i in 1..=n {
            for j in 1..=n {
                labels.push(q_label(i, j, odd));
                parities.push(if odd { Parity::Odd } else { Parity::Even });
                weights.push(WeightVector::root(n, i, j));
            }
        }
    }
    let mats: Vec<IntMat> = (0..dim).map(|k| q_matrix(n, k)).collect();
    for (k, m) in mats.iter().enumerate() {
        assert!(commutes_with_p(n, m, k >= n * n), "basis element {k} is not in q(n)");
    }
    let mut brackets = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let s = if parities[a].is_odd() && parities[b].is_odd() { -1 } else { 1 };
            let (ab, ba) = (int_mul(&mats[a], &mats[b]), int_mul(&mats[b], &mats[a]));
            let m: IntMat = ab
                .iter()
                .zip(&ba)
                .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - s * y).collect())
                .collect();
            brackets[a][b] = decompose(n, &m);
        }
    }
    let space = SuperSpace::new(labels, parities).expect("distinct labels");
    let q = LieSuperAlgebra::new(space, weights, brackets);

    let mut positive_roots = Vec::new();
    let mut root_space = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let r = WeightVector::root(n, i, j);
                root_space.insert(r.clone(), (q_index(n, i, j, false), q_index(n, i, j, true)));
                if i < j {
                    positive_roots.push(r);
                }
            }
        }
    }
    positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
    let mut roots = positive_roots.clone();
    roots.extend(positive_roots.iter().map(|r| -r));
    let simple_roots = (1..n).map(|i| WeightVector::root(n, i, i + 1)).collect();
    let cartan = (1..=n).map(|i| (q_index(n, i, i, false), q_index(n, i, i, true))).collect();
    let chevalley = (1..n)
        .map(|i| Chevalley {
            e: q_index(n, i, i + 1, false),
            e_odd: q_index(n, i, i + 1, true),
            f: q_index(n, i + 1, i, false),
            f_odd: q_index(n, i + 1, i, true),
            h: (q_index(n, i, i, false), q_index(n, i + 1, i + 1, false)),
        })
        .collect();
    let rd = RootDatum { n, positive_roots, roots, simple_roots, root_space, cartan, chevalley };
    Ok((q, rd))
}

/// Whether every basis element of q(n) satisfies the `P`-commutation test.
pub fn check_p_commutation(n: usize) -> bool {
    (0..2 * n * n).all(|k| commutes_with_p(n, &q_matrix(n, k), k >= n * n))
}

/// Basis index sets of `n⁻`, `h`, `n⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularDecomposition {
    pub n_minus: Vec<usize>,
    pub h: Vec<usize>,
    pub n_plus: Vec<usize>,
}

/// Split q(n) into lower, Cartan and upper parts and verify closure.
pub fn triangular_decomposition(q: &LieSuperAlgebra, rd: &RootDatum) -> TriangularDecomposition {
    let n = rd.n;
    let mut td = TriangularDecomposition { n_minus: vec![], h: vec![], n_plus: vec![] };
    for k in 0..q.dim() {
        let r = k % (n * n);
        let (i, j) = (r / n, r % n);
        match i.cmp(&j) {
            Ordering::Greater => td.n_minus.push(k),
            Ordering::Equal => td.h.push(k),
            Ordering::Less => td.n_plus.push(k),
        }
    }
    assert!(q.is_closed(&td.n_minus) && q.is_closed(&td.h) && q.is_closed(&td.n_plus));
    let h0: Vec<usize> = rd.cartan.iter().map(|c| c.0).collect();
    let h1: Vec<usize> = rd.cartan.iter().map(|c| c.1).collect();
    for &a in &h0 {
        for &b in &td.h {
            assert!(q.bracket_basis(a, b).is_empty(), "[h0, h] != 0");
        }
    }
    for &a in &h1 {
        for &b in &h1 {
            assert!(q.bracket_basis(a, b).iter().all(|(k, _)| h0.contains(k)));
        }
    }
    td
}

/// One instance of a defining relation evaluated in the realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub family: String,
    pub indices: Vec<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub checks: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }

    pub fn families(&self) -> Vec<String> {
        let mut f: Vec<String> = self.checks.iter().map(|c| c.family.clone()).collect();
        f.dedup();
        f
    }
}

/// Evaluate every defining relation of the Chevalley-type presentation of q(n).
pub fn check_presentation(q: &LieSuperAlgebra, rd: &RootDatum) -> PresentationReport {
    let n = rd.n;
    let d = q.dim();
    let b = |k: usize| q.basis_vector(k);
    let br = |x: &Vector, y: &Vector| q.bracket(x, y);
    let lin = |terms: &[(i64, usize)]| {
        let mut v = zero_vector(d);
        for &(c, k) in terms {
            add_scaled(&mut v, &Scalar::from_int(c), &b(k));
        }
        v
    };
    let zero = zero_vector(d);
    let k = |l: usize| rd.cartan[l - 1].0;
    let kp = |l: usize| rd.cartan[l - 1].1;
    let ch = |i: usize| &rd.chevalley[i - 1];
    // α_i(k_l)
    let alpha = |i: usize, l: usize| -> i64 {
        i64::from(l == i) - i64::from(l == i + 1)
    };
    let mut report = PresentationReport::default();
    let mut push = |family: &str, indices: Vec<usize>, lhs: Vector, rhs: Vector| {
        report.checks.push(RelationCheck { family: family.to_string(), indices, holds: lhs == rhs });
    };
    let simple: Vec<usize> = (1..n).collect();
    let cart: Vec<usize> = (1..=n).collect();

    for &a in &cart {
        for &c in &cart {
            push("[h,h']=0", vec![a, c], br(&b(k(a)), &b(k(c))), zero.clone());
        }
    }
    for &l in &cart {
        for &i in &simple {
            let a = Scalar::from_int(alpha(i, l));
            let s = |x: usize| crate::linalg::scale_vector(&a, &b(x));
            let sn = |x: usize| crate::linalg::scale_vector(&-&a, &b(x));
            push("[h,e_i]=α_i(h)e_i", vec![l, i], br(&b(k(l)), &b(ch(i).e)), s(ch(i).e));
            push("[h,e_i']=α_i(h)e_i'", vec![l, i], br(&b(k(l)), &b(ch(i).e_odd)), s(ch(i).e_odd));
            push("[h,f_i]=-α_i(h)f_i", vec![l, i], br(&b(k(l)), &b(ch(i).f)), sn(ch(i).f));
            push("[h,f_i']=-α_i(h)f_i'", vec![l, i], br(&b(k(l)), &b(ch(i).f_odd)), sn(ch(i).f_odd));
            push("[k_l',e_i]=α_i(k_l)e_i'", vec![l, i], br(&b(kp(l)), &b(ch(i).e)), s(ch(i).e_odd));
            push("[k_l',f_i]=-α_i(k_l)f_i'", vec![l, i], br(&b(kp(l)), &b(ch(i).f)), sn(ch(i).f_odd));
            let on = l == i || l == i + 1;
            let ep = if on { b(ch(i).e) } else { zero.clone() };
            let fp = if on { b(ch(i).f) } else { zero.clone() };
            push("[k_l',e_i']", vec![l, i], br(&b(kp(l)), &b(ch(i).e_odd)), ep);
            push("[k_l',f_i']", vec![l, i], br(&b(kp(l)), &b(ch(i).f_odd)), fp);
        }
        for &j in &cart {
            push("[h,k_l']=0", vec![j, l], br(&b(k(j)), &b(kp(l))), zero.clone());
            let rhs = if l == j { lin(&[(2, k(l))]) } else { zero.clone() };
            push("[k_i',k_j']=2δ_ij k_i", vec![l, j], br(&b(kp(l)), &b(kp(j))), rhs);
        }
    }
    for &i in &simple {
        for &j in &simple {
            let same = i == j;
            let or0 = |v: Vector| if same { v } else { zero.clone() };
            push("[e_i,f_j]=δ_ij h_i", vec![i, j], br(&b(ch(i).e), &b(ch(j).f)), or0(lin(&[(1, k(i)), (-1, k(i + 1))])));
            push("[e_i,f_j']=δ_ij(k_i'-k_{i+1}')", vec![i, j], br(&b(ch(i).e), &b(ch(j).f_odd)), or0(lin(&[(1, kp(i)), (-1, kp(i + 1))])));
            push("[e_i',f_j]=δ_ij(k_i'-k_{i+1}')", vec![i, j], br(&b(ch(i).e_odd), &b(ch(j).f)), or0(lin(&[(1, kp(i)), (-1, kp(i + 1))])));
            push("[e_i',f_j']=δ_ij(k_i+k_{i+1})", vec![i, j], br(&b(ch(i).e_odd), &b(ch(j).f_odd)), or0(lin(&[(1, k(i)), (1, k(i + 1))])));
            let gap = i.abs_diff(j);
            if gap != 1 {
                let fam = if same {
                    "[e_i,e_j']=[e_i',e_j']=[f_i,f_j']=[f_i',f_j']=0 (i=j)"
                } else {
                    "[e_i,e_j']=[e_i',e_j']=[f_i,f_j']=[f_i',f_j']=0 (|i-j|>1)"
                };
                push(fam, vec![i, j, 0], br(&b(ch(i).e), &b(ch(j).e_odd)), zero.clone());
                push(fam, vec![i, j, 1], br(&b(ch(i).e_odd), &b(ch(j).e_odd)), zero.clone());
                push(fam, vec![i, j, 2], br(&b(ch(i).f), &b(ch(j).f_odd)), zero.clone());
                push(fam, vec![i, j, 3], br(&b(ch(i).f_odd), &b(ch(j).f_odd)), zero.clone());
            }
            if gap > 1 {
                push("[e_i,e_j]=[f_i,f_j]=0", vec![i, j, 0], br(&b(ch(i).e), &b(ch(j).e)), zero.clone());
                push("[e_i,e_j]=[f_i,f_j]=0", vec![i, j, 1], br(&b(ch(i).f), &b(ch(j).f)), zero.clone());
            }
            if gap == 1 {
                let eij = br(&b(ch(i).e), &b(ch(j).e));
                let fij = br(&b(ch(i).f), &b(ch(j).f));
                push("[e_i,[e_i,e_j]]=0", vec![i, j], br(&b(ch(i).e), &eij), zero.clone());
                push("[e_i',[e_i,e_j]]=0", vec![i, j], br(&b(ch(i).e_odd), &eij), zero.clone());
                push("[f_i,[f_i,f_j]]=0", vec![i, j], br(&b(ch(i).f), &fij), zero.clone());
                push("[f_i',[f_i,f_j]]=0", vec![i, j], br(&b(ch(i).f_odd), &fij), zero.clone());
            }
        }
        if i + 1 < n {
            let (c, nx) = (ch(i), ch(i + 1));
            push("[e_i,e_{i+1}]=[e_i',e_{i+1}']", vec![i], br(&b(c.e), &b(nx.e)), br(&b(c.e_odd), &b(nx.e_odd)));
            push("[e_i,e_{i+1}']=[e_i',e_{i+1}]", vec![i], br(&b(c.e), &b(nx.e_odd)), br(&b(c.e_odd), &b(nx.e)));
            push("[f_{i+1},f_i]=[f_{i+1}',f_i']", vec![i], br(&b(nx.f), &b(c.f)), br(&b(nx.f_odd), &b(c.f_odd)));
            push("[f_{i+1},f_i']=[f_{i+1}',f_i]", vec![i], br(&b(nx.f), &b(c.f_odd)), br(&b(nx.f_odd), &b(c.f)));
        }
    }
    report
}

/// Root-space decomposition: `[h, v] = α(h) v` for every Cartan `k_l` and root vector `v`.
pub fn check_root_space_decomposition(q: &LieSuperAlgebra, rd: &RootDatum) -> bool {
    rd.root_space.iter().all(|(alpha, &(ev, od))| {
        rd.cartan.iter().enumerate().all(|(l, &(kl, _))| {
            let a = Scalar::from_int(alpha.0[l]);
            [ev, od].iter().all(|&v| {
                q.bracket(&q.basis_vector(kl), &q.basis_vector(v))
                    == crate::linalg::scale_vector(&a, &q.basis_vector(v))
            })
        })
    })
}

/// An sl(2)-triple inside q(n): basis indices of `x_α`, `y_α` and `h_α` as a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub x: usize,
    pub y: usize,
    pub h: Vector,
}

pub fn sl2_triple(q: &LieSuperAlgebra, rd: &RootDatum, alpha: &WeightVector) -> Result<Sl2Triple, LieError> {
    if !rd.positive_roots.contains(alpha) {
        return Err(LieError::NotARoot(alpha.clone()));
    }
    let x = rd.root_space[alpha].0;
    let y = rd.root_space[&-alpha].0;
    let (i, j) = (top_index(alpha) + 1, bottom_index(alpha) + 1);
    let mut h = zero_vector(q.dim());
    h[rd.cartan[i - 1].0] = Scalar::one();
    h[rd.cartan[j - 1].0] = Scalar::from_int(-1);
    let (bx, by) = (q.basis_vector(x), q.basis_vector(y));
    assert_eq!(q.bracket(&bx, &by), h);
    assert_eq!(q.bracket(&h, &bx), crate::linalg::scale_vector(&Scalar::from_int(2), &bx));
    assert_eq!(q.bracket(&h, &by), crate::linalg::scale_vector(&Scalar::from_int(-2), &by));
    Ok(Sl2Triple { x, y, h })
}

/// The current superalgebra `q(n) ⊗ A` with basis index `q_index * dim A + a_index`.
#[derive(Clone, Debug)]
pub struct CurrentAlgebra {
    pub n: usize,
    pub q: LieSuperAlgebra,
    pub rd: RootDatum,
    pub coeff: Arc<CommAlgebra>,
    pub lie: LieSuperAlgebra,
}

impl CurrentAlgebra {
    pub fn new(n: usize, coeff: Arc<CommAlgebra>) -> Result<Self, LieError> {
        let (q, rd) = build_q(n)?;
        let lie = current_algebra(&q, &coeff);
        Ok(CurrentAlgebra { n, q, rd, coeff, lie })
    }

    pub fn dim_a(&self) -> usize {
        self.coeff.dim()
    }

    pub fn index(&self, q_idx: usize, a_idx: usize) -> usize {
        q_idx * self.dim_a() + a_idx
    }

    /// Inverse of [`Self::index`].
    pub fn split(&self, g: usize) -> (usize, usize) {
        (g / self.dim_a(), g % self.dim_a())
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn parity(&self, g: usize) -> Parity {
        self.lie.parity(g)
    }

    pub fn weight(&self, g: usize) -> &WeightVector {
        self.lie.weight(g)
    }

    /// Element `x ⊗ a` for a q basis index and an A-vector.
    pub fn tensor(&self, q_idx: usize, a: &[Scalar]) -> Vector {
        let mut v = zero_vector(self.dim());
        for (k, x) in a.iter().enumerate() {
            v[self.index(q_idx, k)] = x.clone();
        }
        v
    }

    pub fn is_n_plus(&self, g: usize) -> bool {
        let w = self.weight(g);
        !w.is_zero() && w.in_q_plus()
    }

    pub fn is_n_minus(&self, g: usize) -> bool {
        let w = self.weight(g);
        !w.is_zero() && (-w).in_q_plus()
    }

    pub fn is_cartan(&self, g: usize) -> bool {
        self.weight(g).is_zero()
    }
}

/// `q ⊗ A` with `[x⊗a, y⊗b] = [x,y]⊗ab`; parity and weight from the q factor.
pub fn current_algebra(q: &LieSuperAlgebra, a: &CommAlgebra) -> LieSuperAlgebra {
    let da = a.dim();
    let dim = q.dim() * da;
    let mut labels = Vec::with_capacity(dim);
    let mut parities = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for p in 0..q.dim() {
        for l in a.labels() {
            labels.push(format!("{}⊗{}", q.label(p), l));
            parities.push(q.parity(p));
            weights.push(q.weight(p).clone());
        }
    }
    let mut brackets = vec![vec![Vec::new(); dim]; dim];
    for p in 0..q.dim() {
        for r in 0..q.dim() {
            let qb = q.bracket_basis(p, r);
            if qb.is_empty() {
                continue;
            }
            for i in 0..da {
                for j in 0..da {
                    let ab = a.basis_mul(i, j);
                    if is_zero_vector(ab) {
                        continue;
                    }
                    let mut v = zero_vector(dim);
                    for (k, c) in qb {
                        for (l, x) in ab.iter().enumerate() {
                            if !x.is_zero() {
                                v[k * da + l] += &(c * x);
                            }
                        }
                    }
                    brackets[p * da + i][r * da + j] = dense_to_sparse(&v);
                }
            }
        }
    }
    let space = SuperSpace::new(labels, parities).expect("distinct labels");
    LieSuperAlgebra::new(space, weights, brackets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q2_dimensions_and_brackets() {
        let (q, rd) = build_q(2).unwrap();
        assert_eq!(q.superdim(), SuperDim::new(4, 4));
        let c = &rd.chevalley[0];
        let (k1, k2) = (rd.cartan[0], rd.cartan[1]);
        let mut h = zero_vector(q.dim());
        h[k1.0] = Scalar::one();
        h[k2.0] = Scalar::from_int(-1);
        assert_eq!(q.bracket(&q.basis_vector(c.e), &q.basis_vector(c.f)), h);
        let mut two_k1 = zero_vector(q.dim());
        two_k1[k1.0] = Scalar::from_int(2);
        assert_eq!(q.bracket(&q.basis_vector(k1.1), &q.basis_vector(k1.1)), two_k1);
        assert!(check_p_commutation(2));
    }

    #[test]
    fn rank_one_rejected() {
        assert_eq!(build_q(1).unwrap_err(), LieError::InvalidRank(1));
    }

    #[test]
    fn triangular_parts() {
        let (q, rd) = build_q(2).unwrap();
        let td = triangular_decomposition(&q, &rd);
        assert_eq!(td.n_plus.len(), 2);
        assert_eq!(td.h.len(), 4);
        assert_eq!(td.n_minus.len() + td.h.len() + td.n_plus.len(), q.dim());
    }

    #[test]
    fn sl2_triples() {
        let (q, rd) = build_q(3).unwrap();
        let t = sl2_triple(&q, &rd, &WeightVector::root(3, 1, 3)).unwrap();
        assert_eq!(q.label(t.x), "e(1,3)");
        assert_eq!(q.label(t.y), "e(3,1)");
        assert!(sl2_triple(&q, &rd, &WeightVector::root(3, 3, 1)).is_err());
    }

    #[test]
    fn current_algebra_brackets() {
        let a2 = CommAlgebra::truncated_poly(2).unwrap();
        let a3 = CommAlgebra::truncated_poly(3).unwrap();
        let (q, rd) = build_q(2).unwrap();
        let g2 = current_algebra(&q, &a2);
        assert_eq!(g2.superdim(), SuperDim::new(8, 8));
        let c = &rd.chevalley[0];
        assert!(g2.bracket_basis(c.e * 2 + 1, c.f * 2 + 1).is_empty());
        let g3 = current_algebra(&q, &a3);
        let got = g3.bracket_basis(c.e * 3 + 1, c.f * 3 + 1);
        let want = vec![(rd.cartan[0].0 * 3 + 2, Scalar::one()), (rd.cartan[1].0 * 3 + 2, Scalar::from_int(-1))];
        assert_eq!(got, &want);
    }

    #[test]
    fn weight_predicates() {
        assert!(WeightVector(vec![1, 0]).in_lambda_plus());
        assert!(WeightVector(vec![0, 0]).in_lambda_plus());
        assert!(!WeightVector(vec![1, 1]).in_lambda_plus());
        assert!(WeightVector(vec![1, 1]).is_dominant());
        assert!(!WeightVector(vec![0, 1]).is_dominant());
        assert_eq!(WeightVector(vec![0, 1]).depth_below(&WeightVector(vec![1, 0])), Some(1));
        assert!(WeightVector(vec![0, 1]).dominated_by(&WeightVector(vec![1, 0])));
        assert!(!WeightVector(vec![2, -1]).dominated_by(&WeightVector(vec![1, 0])));
    }
}
