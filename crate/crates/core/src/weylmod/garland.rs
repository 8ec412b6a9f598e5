use serde::Serialize;

use crate::linalg::{add_scaled, zero_vector, Vector};
use crate::liesuper::{sl2_triple, WeightVector};
use crate::scalars::Scalar;

use super::pbw::{Straightener, UElem};
use super::WeylError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GarlandNormalization {
    /// `(x⊗a)^{(r)} (y⊗1)^{(r+1)}` with divided powers.
    DividedPowers,
    /// `(x⊗a)^r (y⊗1)^{r+1}` without factorials.
    PlainPowers,
}

#[derive(Clone, Debug, Serialize)]
pub struct GarlandReport {
    pub root: WeightVector,
    pub r: u32,
    pub normalization: GarlandNormalization,
    pub holds: bool,
    /// Number of PBW monomials left in `lhs - rhs` modulo `U·(n⁺⊗A)`.
    pub residual_terms: usize,
}

fn h_tensor(pbw: &Straightener, h: &Vector, a: &[Scalar]) -> Vector {
    let alg = pbw.algebra();
    let mut out = zero_vector(alg.dim());
    for (k, c) in h.iter().enumerate() {
        if !c.is_zero() {
            add_scaled(&mut out, c, &alg.tensor(k, a));
        }
    }
    out
}

/// `p^0, ..., p^r` with `p^0 = 1` and `i p^i = -Σ_{s=1}^{i} (h⊗a^s) p^{i-s}`.
pub fn p_coefficients(pbw: &mut Straightener, h: &Vector, a: &[Scalar], r: u32) -> Vec<UElem> {
    let coeff = pbw.algebra().coeff.clone();
    let hs: Vec<Vector> = (0..=r).map(|s| h_tensor(pbw, h, &coeff.pow(a, s))).collect();
    let mut p = vec![UElem::one()];
    for i in 1..=r as usize {
        let mut acc = UElem::zero();
        for s in 1..=i {
            let t = pbw.left_mul_lie(&hs[s], &p[i - s], false);
            acc.add_scaled(&Scalar::one(), &t);
        }
        p.push(acc.scale(&Scalar::from_ratio(-1, i as i64)));
    }
    p
}

fn factorial(k: u32) -> Scalar {
    (1..=k as i64).fold(Scalar::one(), |acc, j| &acc * &Scalar::from_int(j))
}

/// Test `x^r y^{r+1} ≡ (-1)^r Σ_{s=0}^{r} (y⊗a^s) p^{r-s}` modulo the left
/// ideal generated by `n⁺ ⊗ A`, with `x = x_α ⊗ a` and `y = y_α ⊗ 1`.
pub fn garland_check(
    pbw: &mut Straightener,
    alpha: &WeightVector,
    a: &[Scalar],
    r: u32,
    normalization: GarlandNormalization,
) -> Result<GarlandReport, WeylError> {
    let alg = pbw.algebra().clone();
    let t = sl2_triple(&alg.q, &alg.rd, alpha)?;
    let x = alg.tensor(t.x, a);
    let unit = alg.coeff.unit().clone();
    let y1 = alg.tensor(t.y, &unit);
    let mut factors = vec![x; r as usize];
    factors.extend(std::iter::repeat(y1).take(r as usize + 1));
    let mut lhs = pbw.product(&factors, true);
    if normalization == GarlandNormalization::DividedPowers {
        let d = &factorial(r) * &factorial(r + 1);
        lhs = lhs.scale(&d.inv().expect("nonzero factorial"));
    }
    let p = p_coefficients(pbw, &t.h, a, r);
    let mut rhs = UElem::zero();
    for s in 0..=r {
        let ys = alg.tensor(t.y, &alg.coeff.pow(a, s));
        let term = pbw.left_mul_lie(&ys, &p[(r - s) as usize], true);
        rhs.add_scaled(&Scalar::one(), &term);
    }
    let sign = Scalar::from_int(if r % 2 == 0 { 1 } else { -1 });
    let residual = lhs.sub(&rhs.scale(&sign));
    Ok(GarlandReport {
        root: alpha.clone(),
        r,
        normalization,
        holds: residual.is_zero(),
        residual_terms: residual.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CommAlgebra;
    use crate::liesuper::CurrentAlgebra;
    use std::sync::Arc;

    #[test]
    fn r1_by_hand() {
        let a = Arc::new(CommAlgebra::truncated_poly(3).unwrap());
        let alg = Arc::new(CurrentAlgebra::new(2, a.clone()).unwrap());
        let mut pbw = Straightener::new(alg);
        let t = a.basis(1);
        let alpha = WeightVector(vec![1, -1]);
        let div = garland_check(&mut pbw, &alpha, &t, 1, GarlandNormalization::DividedPowers).unwrap();
        assert!(div.holds);
        let plain = garland_check(&mut pbw, &alpha, &t, 1, GarlandNormalization::PlainPowers).unwrap();
        assert!(!plain.holds);
    }
}
