//! PBW normal forms in U(q(n) ⊗ A).
//!
//! Basis letters are ranked lowering < Cartan < raising; inside each block by
//! parity, root height, root, then A-index. A monomial is a nondecreasing rank
//! word in which odd letters appear at most once.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::linalg::Vector;
use crate::liesuper::{CurrentAlgebra, WeightVector};
use crate::scalars::Scalar;
use crate::superspace::Parity;

pub type RankWord = Vec<u16>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Region {
    Lowering,
    Cartan,
    Raising,
}

/// Element of the enveloping algebra as a combination of rank words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UElem {
    terms: BTreeMap<RankWord, Scalar>,
}

impl UElem {
    pub fn zero() -> Self {
        UElem::default()
    }

    pub fn one() -> Self {
        UElem::word(Vec::new())
    }

    fn word(w: RankWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::one());
        UElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RankWord, &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, w: RankWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &UElem) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &Scalar) -> UElem {
        let mut out = UElem::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn sub(&self, other: &UElem) -> UElem {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), other);
        out
    }
}

/// A PBW monomial as a list of generator indices of the current algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial(pub Vec<usize>);

pub struct Straightener {
    alg: Arc<CurrentAlgebra>,
    order: Vec<usize>,
    rank: Vec<u16>,
    odd: Vec<bool>,
    region: Vec<Region>,
    height: Vec<i64>,
    brackets: Vec<Vec<Vec<(u16, Scalar)>>>,
    memo: [HashMap<(u16, RankWord), UElem>; 2],
}

impl Straightener {
    pub fn new(alg: Arc<CurrentAlgebra>) -> Self {
        let dim = alg.dim();
        assert!(dim < u16::MAX as usize, "current algebra too large for rank words");
        let region_of = |g: usize| {
            if alg.is_n_minus(g) {
                Region::Lowering
            } else if alg.is_cartan(g) {
                Region::Cartan
            } else {
                Region::Raising
            }
        };
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by_key(|&g| {
            let (qi, ai) = alg.split(g);
            let w = alg.weight(g);
            (region_of(g), alg.parity(g).bit(), w.height(), w.clone(), qi, ai)
        });
        let mut rank = vec![0u16; dim];
        for (r, &g) in order.iter().enumerate() {
            rank[g] = r as u16;
        }
        let odd = order.iter().map(|&g| alg.parity(g).is_odd()).collect();
        let region = order.iter().map(|&g| region_of(g)).collect();
        let height = order.iter().map(|&g| alg.weight(g).height()).collect();
        let brackets = order
            .iter()
            .map(|&g| {
                order
                    .iter()
                    .map(|&h| {
                        let mut v: Vec<(u16, Scalar)> =
                            alg.lie.bracket_basis(g, h).iter().map(|(k, c)| (rank[*k], c.clone())).collect();
                        v.sort_by_key(|(k, _)| *k);
                        v
                    })
                    .collect()
            })
            .collect();
        Straightener {
            alg,
            order,
            rank,
            odd,
            region,
            height,
            brackets,
            memo: [HashMap::new(), HashMap::new()],
        }
    }

    pub fn algebra(&self) -> &Arc<CurrentAlgebra> {
        &self.alg
    }

    pub fn rank_of(&self, g: usize) -> u16 {
        self.rank[g]
    }

    pub fn generator(&self, r: u16) -> usize {
        self.order[r as usize]
    }

    pub fn region(&self, r: u16) -> Region {
        self.region[r as usize]
    }

    pub fn is_odd(&self, r: u16) -> bool {
        self.odd[r as usize]
    }

    pub fn word_parity(&self, w: &[u16]) -> Parity {
        Parity::from_bit(w.iter().filter(|&&r| self.odd[r as usize]).count() as u8)
    }

    pub fn word_weight(&self, w: &[u16]) -> WeightVector {
        w.iter().fold(WeightVector::zero(self.alg.n), |acc, &r| &acc + self.alg.weight(self.generator(r)))
    }

    /// Lowering-root depth of a word of lowering letters.
    pub fn word_depth(&self, w: &[u16]) -> i64 {
        w.iter().map(|&r| self.height[r as usize]).sum()
    }

    pub fn is_normal(&self, w: &[u16]) -> bool {
        w.windows(2).all(|p| p[0] < p[1] || (p[0] == p[1] && !self.odd[p[0] as usize]))
    }

    /// Ranks of the lowering letters.
    pub fn lowering_ranks(&self) -> Vec<u16> {
        (0..self.order.len() as u16).filter(|&r| self.region(r) == Region::Lowering).collect()
    }

    /// All normal words in lowering letters of depth at most `max_depth`.
    pub fn lowering_monomials(&self, max_depth: i64) -> Vec<RankWord> {
        let letters = self.lowering_ranks();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_monomials(&letters, 0, max_depth, &mut cur, &mut out);
        out
    }

    fn extend_monomials(&self, letters: &[u16], from: usize, budget: i64, cur: &mut RankWord, out: &mut Vec<RankWord>) {
        out.push(cur.clone());
        for k in from..letters.len() {
            let r = letters[k];
            let h = self.height[r as usize];
            if h > budget {
                continue;
            }
            cur.push(r);
            let next = if self.odd[r as usize] { k + 1 } else { k };
            self.extend_monomials(letters, next, budget - h, cur, out);
            cur.pop();
        }
    }

    fn kills_mod(&self, g: u16, m: &[u16]) -> bool {
        let last = m.last().copied().unwrap_or(g);
        self.region(last) == Region::Raising
    }

    /// Normal form of `g · m` for a normal word `m`; with `mod_n_plus`, modulo
    /// the left ideal `U · (n⁺ ⊗ A)`.
    pub fn insert(&mut self, g: u16, m: &[u16], mod_n_plus: bool) -> UElem {
        if mod_n_plus && self.kills_mod(g, m) {
            return UElem::zero();
        }
        if m.is_empty() || g < m[0] || (g == m[0] && !self.odd[g as usize]) {
            let mut w = Vec::with_capacity(m.len() + 1);
            w.push(g);
            w.extend_from_slice(m);
            return UElem::word(w);
        }
        let slot = mod_n_plus as usize;
        let key = (g, m.to_vec());
        if let Some(u) = self.memo[slot].get(&key) {
            return u.clone();
        }
        let rest = &m[1..];
        let mut out = UElem::zero();
        if g == m[0] {
            // odd g: g² = ½[g,g]
            let half = Scalar::from_ratio(1, 2);
            for (k, c) in self.brackets[g as usize][g as usize].clone() {
                let t = self.insert(k, rest, mod_n_plus);
                out.add_scaled(&(&half * &c), &t);
            }
        } else {
            let h = m[0];
            let u = self.insert(g, rest, mod_n_plus);
            let s = if self.odd[g as usize] && self.odd[h as usize] { -1 } else { 1 };
            let s = Scalar::from_int(s);
            for (w, c) in u.terms {
                let t = self.insert(h, &w, mod_n_plus);
                out.add_scaled(&(&s * &c), &t);
            }
            for (k, c) in self.brackets[g as usize][h as usize].clone() {
                let t = self.insert(k, rest, mod_n_plus);
                out.add_scaled(&c, &t);
            }
        }
        self.memo[slot].insert(key, out.clone());
        out
    }

    pub fn left_mul(&mut self, g: u16, u: &UElem, mod_n_plus: bool) -> UElem {
        let mut out = UElem::zero();
        for (w, c) in &u.terms {
            let t = self.insert(g, w, mod_n_plus);
            out.add_scaled(c, &t);
        }
        out
    }

    /// Left multiplication by a Lie algebra element given in basis coordinates.
    pub fn left_mul_lie(&mut self, x: &[Scalar], u: &UElem, mod_n_plus: bool) -> UElem {
        let mut out = UElem::zero();
        for (g, c) in x.iter().enumerate() {
            if !c.is_zero() {
                let t = self.left_mul(self.rank[g], u, mod_n_plus);
                out.add_scaled(c, &t);
            }
        }
        out
    }

    /// Normal form of a product of Lie elements, leftmost factor first.
    pub fn product(&mut self, factors: &[Vector], mod_n_plus: bool) -> UElem {
        let mut cur = UElem::one();
        for x in factors.iter().rev() {
            cur = self.left_mul_lie(x, &cur, mod_n_plus);
        }
        cur
    }

    /// Normal form of a word of generator indices.
    pub fn normalize(&mut self, gens: &[usize], mod_n_plus: bool) -> UElem {
        let mut cur = UElem::one();
        for &g in gens.iter().rev() {
            cur = self.left_mul(self.rank[g], &cur, mod_n_plus);
        }
        cur
    }

    pub fn mul(&mut self, a: &UElem, b: &UElem, mod_n_plus: bool) -> UElem {
        let mut out = UElem::zero();
        for (w, c) in &a.terms {
            let mut cur = b.scale(c);
            for &r in w.iter().rev() {
                cur = self.left_mul(r, &cur, mod_n_plus);
            }
            out.add_scaled(&Scalar::one(), &cur);
        }
        out
    }

    /// Normal form by repeatedly rewriting the leftmost adjacent descent.
    /// Independent of [`Self::insert`]; used to cross-check it.
    pub fn normalize_by_descents(&self, gens: &[usize]) -> UElem {
        let w: RankWord = gens.iter().map(|&g| self.rank[g]).collect();
        let mut memo = HashMap::new();
        self.descend(w, &mut memo)
    }

    fn descend(&self, w: RankWord, memo: &mut HashMap<RankWord, UElem>) -> UElem {
        let p = w.windows(2).position(|p| p[0] > p[1] || (p[0] == p[1] && self.odd[p[0] as usize]));
        let Some(p) = p else {
            return UElem::word(w);
        };
        if let Some(u) = memo.get(&w) {
            return u.clone();
        }
        let (x, y) = (w[p], w[p + 1]);
        let splice = |mid: &[u16]| {
            let mut v = w[..p].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[p + 2..]);
            v
        };
        let mut out = UElem::zero();
        if x == y {
            let half = Scalar::from_ratio(1, 2);
            for (k, c) in &self.brackets[x as usize][x as usize] {
                out.add_scaled(&(&half * c), &self.descend(splice(&[*k]), memo));
            }
        } else {
            let s = if self.odd[x as usize] && self.odd[y as usize] { -1 } else { 1 };
            out.add_scaled(&Scalar::from_int(s), &self.descend(splice(&[y, x]), memo));
            for (k, c) in &self.brackets[x as usize][y as usize] {
                out.add_scaled(c, &self.descend(splice(&[*k]), memo));
            }
        }
        memo.insert(w, out.clone());
        out
    }

    pub fn monomials(&self, u: &UElem) -> Vec<(PbwMonomial, Scalar)> {
        u.terms
            .iter()
            .map(|(w, c)| (PbwMonomial(w.iter().map(|&r| self.generator(r)).collect()), c.clone()))
            .collect()
    }

    pub fn monomial_label(&self, m: &PbwMonomial) -> String {
        if m.0.is_empty() {
            return "1".into();
        }
        m.0.iter().map(|&g| self.alg.lie.label(g).to_string()).collect::<Vec<_>>().join(" ")
    }
}
