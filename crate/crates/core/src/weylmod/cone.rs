use crate::linalg::unit_vector;
use crate::liesuper::WeightVector;

use super::WeightModule;

/// `M^ν`: the quotient of `M` by the submodule generated by every weight
/// space whose weight does not lie in `ν - Q⁺`.
pub fn truncate_to_cone(m: &WeightModule, nu: &WeightVector) -> WeightModule {
    let mut seeds = Vec::new();
    for mu in m.weights() {
        if !(nu - mu).in_q_plus() {
            let d = m.dim_at(mu);
            seeds.extend((0..d).map(|k| (mu.clone(), unit_vector(d, k))));
        }
    }
    let sub = m.submodule_generated(&seeds);
    m.quotient(&sub)
}
