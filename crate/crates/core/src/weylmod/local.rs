use std::sync::Arc;

use crate::clifford::{build_h, HighestWeightSpace};
use crate::coeff::CommAlgebra;
use crate::linalg::{zero_vector, Vector};
use crate::liesuper::{CurrentAlgebra, WeightVector};

use super::pbw::Straightener;
use super::{verma_truncated, MapWeight, WeightModule, WeylError};

#[derive(Clone, Debug)]
pub struct LocalWeylOptions {
    pub depth_cap: i64,
    /// Starting window; defaults to `max((λ₁-λₙ)n, max λ(h_i)+1, 1)`.
    pub initial_depth: Option<i64>,
}

impl Default for LocalWeylOptions {
    fn default() -> Self {
        LocalWeylOptions { depth_cap: 64, initial_depth: None }
    }
}

#[derive(Clone, Debug)]
pub struct LocalWeyl {
    pub module: WeightModule,
    pub h: HighestWeightSpace,
    /// Window depth at which the vanishing certificate held.
    pub depth: i64,
    pub attempts: Vec<i64>,
}

fn seed_depth(lambda: &WeightVector) -> i64 {
    (1..lambda.n()).map(|i| lambda.h_eval(i) + 1).max().unwrap_or(1)
}

/// Depth of the lowest weight `w₀λ` below `λ`.
pub fn hull_depth(lambda: &WeightVector) -> i64 {
    let mut rev = lambda.0.clone();
    rev.reverse();
    WeightVector(rev).depth_below(lambda).expect("w₀λ lies below λ")
}

/// Images `f_i^{λ(h_i)+1} w` for `w` running over the top space.
fn seeds(m: &WeightModule, lambda: &WeightVector) -> Vec<(WeightVector, Vector)> {
    let alg = m.alg();
    let unit = alg.coeff.unit().clone();
    let mut out = Vec::new();
    for (i, ch) in alg.rd.chevalley.iter().enumerate() {
        let x = alg.tensor(ch.f, &unit);
        let alpha = &alg.rd.simple_roots[i];
        let k = lambda.h_eval(i + 1) + 1;
        for w in m.top_basis() {
            let mut mu = lambda.clone();
            let mut v = w;
            for _ in 0..k {
                let next = &mu - alpha;
                let img = m.act_lie(&x, &mu, &v);
                v = img.get(&next).cloned().unwrap_or_else(|| zero_vector(m.dim_at(&next)));
                mu = next;
            }
            if v.iter().any(|c| !c.is_zero()) {
                out.push((mu, v));
            }
        }
    }
    out
}

/// Quotient spaces vanish on the band of depths `(C-(n-1), C]`.
fn certified(q: &WeightModule, depth: i64) -> bool {
    let n = q.alg().n as i64;
    q.weights().all(|w| q.depth(w).map_or(true, |d| d <= depth - (n - 1)))
}

fn weyl_quotient(
    pbw: &mut Straightener,
    h: &HighestWeightSpace,
    depth: i64,
) -> Result<WeightModule, WeylError> {
    let lambda = h.psi.lambda().clone();
    let verma = verma_truncated(pbw, h, depth)?;
    let sub = verma.module.submodule_generated(&seeds(&verma.module, &lambda));
    Ok(verma.module.quotient(&sub))
}

fn check_hull(m: &WeightModule) -> Result<(), WeylError> {
    match m.weights().find(|w| !w.dominated_by(m.highest())) {
        Some(w) => Err(WeylError::OutsideHull(w.clone())),
        None => Ok(()),
    }
}

/// The local Weyl module `W_loc(ψ)`, computed inside a truncated Verma module
/// whose window is doubled until the quotient provably stops.
pub fn local_weyl(alg: &Arc<CurrentAlgebra>, psi: &MapWeight, opts: &LocalWeylOptions) -> Result<LocalWeyl, WeylError> {
    if psi.n() != alg.n {
        return Err(WeylError::Shape { expected_rows: alg.n, expected_cols: alg.dim_a() });
    }
    let lambda = psi.lambda().clone();
    if !lambda.in_lambda_plus() {
        return Err(WeylError::NonDominant(lambda));
    }
    let h = build_h(psi, alg)?;
    let n = alg.n as i64;
    let sd = seed_depth(&lambda);
    let spread = lambda.0[0] - lambda.0[alg.n - 1];
    let mut depth = opts.initial_depth.unwrap_or((spread * n).max(sd).max(1)).max(sd);
    let mut pbw = Straightener::new(alg.clone());
    let mut attempts = Vec::new();
    loop {
        if depth > opts.depth_cap {
            return Err(WeylError::DepthOverflow { cap: opts.depth_cap });
        }
        attempts.push(depth);
        let q = weyl_quotient(&mut pbw, &h, depth)?;
        if certified(&q, depth) {
            check_hull(&q)?;
            return Ok(LocalWeyl { module: q.with_window(None), h, depth, attempts });
        }
        depth *= 2;
    }
}

/// `L̄(λ)`: the same construction over the ground field, at the fixed depth
/// `depth(w₀λ) + n - 1` instead of a doubling search.
pub fn bar_l(n: usize, lambda: &WeightVector) -> Result<LocalWeyl, WeylError> {
    if !lambda.in_lambda_plus() {
        return Err(WeylError::NonDominant(lambda.clone()));
    }
    let alg = Arc::new(CurrentAlgebra::new(n, Arc::new(CommAlgebra::field()))?);
    let psi = MapWeight::over_field(lambda);
    let h = build_h(&psi, &alg)?;
    let depth = (hull_depth(lambda) + n as i64 - 1).max(seed_depth(lambda));
    let mut pbw = Straightener::new(alg);
    let q = weyl_quotient(&mut pbw, &h, depth)?;
    if !certified(&q, depth) {
        return Err(WeylError::Inconsistent(format!("quotient reaches depth {depth} for {lambda}")));
    }
    check_hull(&q)?;
    Ok(LocalWeyl { module: q.with_window(None), h, depth, attempts: vec![depth] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::SuperDim;

    fn field_alg(n: usize) -> Arc<CurrentAlgebra> {
        Arc::new(CurrentAlgebra::new(n, Arc::new(CommAlgebra::field())).unwrap())
    }

    #[test]
    fn trivial_weight_gives_trivial_module() {
        let alg = field_alg(2);
        let w = local_weyl(&alg, &MapWeight::over_field(&WeightVector(vec![0, 0])), &Default::default()).unwrap();
        assert_eq!(w.module.dim(), SuperDim::new(1, 0));
    }

    #[test]
    fn defining_weight_q2() {
        let alg = field_alg(2);
        let w = local_weyl(&alg, &MapWeight::over_field(&WeightVector(vec![1, 0])), &Default::default()).unwrap();
        assert_eq!(w.module.dim().total(), 4);
        assert!(w.module.check_axioms().is_ok());
    }

    #[test]
    fn non_dominant_rejected() {
        let alg = field_alg(2);
        let r = local_weyl(&alg, &MapWeight::over_field(&WeightVector(vec![0, 1])), &Default::default());
        assert!(matches!(r, Err(WeylError::NonDominant(_))));
        let r = local_weyl(&alg, &MapWeight::over_field(&WeightVector(vec![1, 1])), &Default::default());
        assert!(matches!(r, Err(WeylError::NonDominant(_))));
    }

    #[test]
    fn tiny_cap_overflows() {
        let alg = field_alg(2);
        let opts = LocalWeylOptions { depth_cap: 1, initial_depth: None };
        let r = local_weyl(&alg, &MapWeight::over_field(&WeightVector(vec![2, 0])), &opts);
        assert!(matches!(r, Err(WeylError::DepthOverflow { cap: 1 })));
    }

    #[test]
    fn hull_depths() {
        assert_eq!(hull_depth(&WeightVector(vec![1, 0])), 1);
        assert_eq!(hull_depth(&WeightVector(vec![2, 1, 0])), 4);
    }
}
