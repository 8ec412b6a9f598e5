use std::collections::BTreeMap;

use crate::linalg::{Matrix, Subspace, Vector};

use super::{GradedSubspace, WeightModule, WeylError};

/// The largest submodule meeting the top weight space trivially, built one
/// depth at a time: `N_μ = {v : (n⁺⊗A)v ⊂ N}`.
pub fn maximal_submodule(m: &WeightModule) -> Result<GradedSubspace, WeylError> {
    let top = m.highest().clone();
    if m.dim_at(&top) == 0 {
        return Err(WeylError::NotHighestWeight);
    }
    let seeds: Vec<_> = m.top_basis().into_iter().map(|v| (top.clone(), v)).collect();
    if m.submodule_generated(&seeds).dim() != m.dim().total() {
        return Err(WeylError::NotHighestWeight);
    }
    let alg = m.alg().clone();
    let raising: Vec<usize> = (0..alg.dim()).filter(|&g| alg.is_n_plus(g)).collect();
    let mut order: Vec<_> = m
        .weights()
        .map(|w| m.depth(w).map(|d| (d, w.clone())).ok_or(WeylError::NotHighestWeight))
        .collect::<Result<_, _>>()?;
    order.sort();

    let mut n: BTreeMap<_, Subspace> = BTreeMap::new();
    for (d, mu) in order {
        let dim = m.dim_at(&mu);
        if d == 0 {
            n.insert(mu, Subspace::zero(dim));
            continue;
        }
        let mut rows: Vec<Vector> = Vec::new();
        for &g in &raising {
            let Some(block) = m.block(g, &mu) else { continue };
            let nu = &mu + alg.weight(g);
            let nn = &n[&nu];
            let cols: Vec<Vector> = (0..dim).map(|c| nn.quotient_coords(&block.column(c))).collect();
            let codim = cols.first().map_or(0, Vec::len);
            rows.extend((0..codim).map(|r| cols.iter().map(|col| col[r].clone()).collect::<Vector>()));
        }
        let sub = if rows.is_empty() {
            Subspace::full(dim)
        } else {
            Subspace::span(dim, &Matrix::from_rows(dim, &rows).kernel())
        };
        n.insert(mu, sub);
    }
    n.retain(|_, s| !s.is_zero());
    Ok(GradedSubspace(n))
}

/// `M / N` with `N` the maximal proper graded submodule; the result is checked
/// to have no further proper quotient.
pub fn irreducible_quotient(m: &WeightModule) -> Result<WeightModule, WeylError> {
    let n = maximal_submodule(m)?;
    let q = m.quotient(&n);
    if !maximal_submodule(&q)?.is_zero() {
        return Err(WeylError::Inconsistent("quotient by the maximal submodule is reducible".into()));
    }
    Ok(q)
}
