use crate::coeff::IdealSubspace;
use crate::linalg::{Matrix, Subspace, Vector};

use super::{WeightModule, WeylError};

#[derive(Clone, Debug)]
pub struct IPsi {
    /// `{a : (h₀̄⊗a) acts as zero on the top space}`.
    pub annihilator: Subspace,
    /// Largest ideal inside the annihilator.
    pub ideal: IdealSubspace,
    /// Least `n` with `(n⁻ ⊗ Iⁿ) W_λ = 0`.
    pub n_psi: u32,
    pub power: IdealSubspace,
    /// Whether all of `q ⊗ I^{n_ψ}` kills the top space.
    pub kills_top: bool,
}

/// Annihilating ideal of a local Weyl module's top space and its nilpotency degree.
pub fn compute_i_psi(w: &WeightModule) -> Result<IPsi, WeylError> {
    let alg = w.alg().clone();
    let top = w.highest().clone();
    let d = w.dim_at(&top);
    let da = alg.dim_a();
    let mut rows: Vec<Vector> = Vec::new();
    for &(k, _) in &alg.rd.cartan {
        let blocks: Vec<Matrix> = (0..da)
            .map(|j| w.block(alg.index(k, j), &top).cloned().unwrap_or_else(|| Matrix::zeros(d, d)))
            .collect();
        for r in 0..d {
            for c in 0..d {
                rows.push(blocks.iter().map(|b| b.get(r, c)).collect());
            }
        }
    }
    let annihilator = if rows.is_empty() {
        Subspace::full(da)
    } else {
        Subspace::span(da, &Matrix::from_rows(da, &rows).kernel())
    };
    let ideal = alg.coeff.largest_ideal_inside(&annihilator);

    let top_basis = w.top_basis();
    let kills = |j: &IdealSubspace, qs: &[usize]| {
        qs.iter().all(|&q| {
            j.space().basis().iter().all(|a| {
                let x = alg.tensor(q, a);
                top_basis.iter().all(|v| w.act_lie(&x, &top, v).is_empty())
            })
        })
    };
    let lowering: Vec<usize> =
        (0..alg.q.dim()).filter(|&q| !alg.q.weight(q).is_zero() && (-alg.q.weight(q)).in_q_plus()).collect();
    for n in 1..=(da as u32 + 1) {
        let power = ideal.power(n);
        if kills(&power, &lowering) {
            let kills_top = kills(&power, &(0..alg.q.dim()).collect::<Vec<_>>());
            return Ok(IPsi { annihilator, ideal, n_psi: n, power, kills_top });
        }
    }
    Err(WeylError::NoNilpotencyDegree)
}
