use serde::Serialize;

use crate::linalg::{zero_vector, Subspace, Vector};
use crate::liesuper::{sl2_triple, WeightVector};
use crate::scalars::Scalar;

use super::{WeightModule, WeylError};

/// Whether `(y_α⊗a^s)w` lies in the span of `(y_α⊗a^ℓ)w` for small `ℓ`,
/// under the strict bound `ℓ < λ(h_α)` and the bound `ℓ <= λ(h_α)`.
#[derive(Clone, Debug, Serialize)]
pub struct SpanBoundReport {
    pub root: WeightVector,
    pub lambda_h: i64,
    pub max_s: u32,
    pub strict_holds: bool,
    pub nonstrict_holds: bool,
}

pub fn lowering_span_check(m: &WeightModule, alpha: &WeightVector, a: &[Scalar]) -> Result<SpanBoundReport, WeylError> {
    let alg = m.alg().clone();
    let t = sl2_triple(&alg.q, &alg.rd, alpha)?;
    let top = m.highest().clone();
    let target = &top - alpha;
    let lambda_h: i64 = top.0.iter().zip(&alpha.0).map(|(l, x)| l * x).sum();
    let max_s = (alg.dim_a() as i64 + lambda_h.max(0)) as u32;
    let dt = m.dim_at(&target);
    let mut strict = true;
    let mut nonstrict = true;
    for v in m.top_basis() {
        let images: Vec<Vector> = (0..=max_s)
            .map(|s| {
                let x = alg.tensor(t.y, &alg.coeff.pow(a, s));
                m.act_lie(&x, &top, &v).remove(&target).unwrap_or_else(|| zero_vector(dt))
            })
            .collect();
        let lt = Subspace::span(dt, &images[..(lambda_h.max(0) as usize).min(images.len())]);
        let le = Subspace::span(dt, &images[..((lambda_h + 1).max(0) as usize).min(images.len())]);
        strict &= images.iter().all(|u| lt.contains(u));
        nonstrict &= images.iter().all(|u| le.contains(u));
    }
    Ok(SpanBoundReport { root: alpha.clone(), lambda_h, max_s, strict_holds: strict, nonstrict_holds: nonstrict })
}
