use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::clifford::HighestWeightSpace;
use crate::linalg::{unit_vector, Matrix};
use crate::liesuper::WeightVector;
use crate::superspace::Parity;

use super::pbw::{RankWord, Region, Straightener};
use super::{WeightModule, WeylError};

/// `U(q⊗A) ⊗_{U(b⊗A)} H(ψ)` cut down to weights at most `depth` below the top.
#[derive(Clone, Debug)]
pub struct VermaTruncation {
    pub module: WeightModule,
    pub depth: i64,
    /// Weights below the window that some generator would have reached.
    pub discarded: BTreeSet<WeightVector>,
    /// Basis of each weight space as (lowering PBW word, index into `H(ψ)`).
    pub basis: BTreeMap<WeightVector, Vec<(RankWord, usize)>>,
}

pub fn verma_truncated(
    pbw: &mut Straightener,
    h: &HighestWeightSpace,
    depth: i64,
) -> Result<VermaTruncation, WeylError> {
    let alg = pbw.algebra().clone();
    let lambda = h.psi.lambda().clone();
    let hpar = h.space.parities();

    let mut keyed: BTreeMap<WeightVector, Vec<(Parity, RankWord, usize)>> = BTreeMap::new();
    for m in pbw.lowering_monomials(depth) {
        let w = &lambda + &pbw.word_weight(&m);
        let p = pbw.word_parity(&m);
        for (k, hp) in hpar.iter().enumerate() {
            keyed.entry(w.clone()).or_default().push((p + *hp, m.clone(), k));
        }
    }
    let mut basis = BTreeMap::new();
    let mut spaces = BTreeMap::new();
    let mut index: HashMap<(RankWord, usize), usize> = HashMap::new();
    for (w, mut list) in keyed {
        list.sort();
        for (pos, (_, m, k)) in list.iter().enumerate() {
            index.insert((m.clone(), *k), pos);
        }
        spaces.insert(w.clone(), list.iter().map(|x| x.0).collect::<Vec<_>>());
        basis.insert(w, list.into_iter().map(|(_, m, k)| (m, k)).collect::<Vec<_>>());
    }

    let mut cartan: HashMap<u16, Matrix> = HashMap::new();
    for g in 0..alg.dim() {
        if alg.is_cartan(g) {
            cartan.insert(pbw.rank_of(g), h.cartan_action(&alg, g));
        }
    }

    let mut discarded = BTreeSet::new();
    let mut action = vec![BTreeMap::new(); alg.dim()];
    for (g, blocks) in action.iter_mut().enumerate() {
        let r = pbw.rank_of(g);
        for (mu, cols) in &basis {
            let nu = mu + alg.weight(g);
            let rows = spaces.get(&nu).map_or(0, Vec::len);
            let mut m = Matrix::zeros(rows, cols.len());
            for (col, (word, k)) in cols.iter().enumerate() {
                let u = pbw.insert(r, word, true);
                for (w, c) in u.terms() {
                    let cut = w.iter().position(|&x| pbw.region(x) != Region::Lowering).unwrap_or(w.len());
                    let (low, cart) = w.split_at(cut);
                    let mut v = unit_vector(h.len(), *k);
                    for x in cart.iter().rev() {
                        v = cartan[x].mul_vec(&v);
                    }
                    for (j, x) in v.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        match index.get(&(low.to_vec(), j)) {
                            Some(&row) => m.add_to(row, col, &(c * x)),
                            None if pbw.word_depth(low) > depth => {
                                discarded.insert(nu.clone());
                            }
                            None => {
                                return Err(WeylError::Inconsistent(format!("PBW word outside basis at {nu}")));
                            }
                        }
                    }
                }
            }
            if rows > 0 && !m.is_zero() {
                blocks.insert(mu.clone(), m);
            }
        }
    }
    let module = WeightModule::new(alg, lambda, spaces, action, Some(depth))?;
    Ok(VermaTruncation { module, depth, discarded, basis })
}
