use serde::Serialize;

use crate::linalg::{is_zero_vector, scale_vector, zero_vector};
use crate::scalars::Scalar;

use super::WeightModule;

/// First relation found to fail, with the offending generator and top basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationWitness {
    pub relation: String,
    pub generator: String,
    pub basis_index: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GlobalRelationReport {
    pub checked: usize,
    pub failures: Vec<RelationWitness>,
}

impl GlobalRelationReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the defining relations of the global Weyl module on the top space:
/// `(n⁺⊗A)w = 0`, `(k_i⊗1)w = λ_i w` and `(f_i⊗1)^{λ(h_i)+1} w = 0`.
pub fn check_global_relations(m: &WeightModule) -> GlobalRelationReport {
    let alg = m.alg().clone();
    let top = m.highest().clone();
    let unit = alg.coeff.unit().clone();
    let mut rep = GlobalRelationReport::default();
    let record = |rep: &mut GlobalRelationReport, ok: bool, relation: &str, g: &str, k: usize| {
        rep.checked += 1;
        if !ok {
            rep.failures.push(RelationWitness { relation: relation.into(), generator: g.into(), basis_index: k });
        }
    };
    let basis = m.top_basis();
    for g in (0..alg.dim()).filter(|&g| alg.is_n_plus(g)) {
        for (k, v) in basis.iter().enumerate() {
            let ok = m.act(g, &top, v).map_or(true, |(_, w)| is_zero_vector(&w));
            record(&mut rep, ok, "(n+ ⊗ A) w = 0", alg.lie.label(g), k);
        }
    }
    for (i, &(kq, _)) in alg.rd.cartan.iter().enumerate() {
        let x = alg.tensor(kq, &unit);
        let label = alg.q.label(kq);
        for (k, v) in basis.iter().enumerate() {
            let got = m.act_lie(&x, &top, v);
            let want = scale_vector(&Scalar::from_int(top.0[i]), v);
            let ok = match got.get(&top) {
                Some(w) => got.len() == 1 && *w == want,
                None => got.is_empty() && is_zero_vector(&want),
            };
            record(&mut rep, ok, "(k_i ⊗ 1) w = λ_i w", label, k);
        }
    }
    for (i, ch) in alg.rd.chevalley.iter().enumerate() {
        let x = alg.tensor(ch.f, &unit);
        let alpha = &alg.rd.simple_roots[i];
        let power = (top.h_eval(i + 1) + 1).max(0);
        for (k, v) in basis.iter().enumerate() {
            let mut mu = top.clone();
            let mut cur = v.clone();
            for _ in 0..power {
                let next = &mu - alpha;
                cur = m.act_lie(&x, &mu, &cur).remove(&next).unwrap_or_else(|| zero_vector(m.dim_at(&next)));
                mu = next;
            }
            record(&mut rep, is_zero_vector(&cur), "(f_i ⊗ 1)^(λ(h_i)+1) w = 0", alg.q.label(ch.f), k);
        }
    }
    rep
}
