use std::collections::BTreeMap;
use std::sync::Arc;

use crate::linalg::Matrix;
use crate::liesuper::{CurrentAlgebra, WeightVector};
use crate::scalars::Scalar;
use crate::superspace::Parity;

use super::{WeightModule, WeylError};

/// The defining module `C^{n|n}` pulled back along `x ⊗ a ↦ χ(a) x`.
pub fn evaluation_module(alg: &Arc<CurrentAlgebra>, chi: &[Scalar]) -> Result<WeightModule, WeylError> {
    if !alg.coeff.is_character(chi) {
        return Err(WeylError::Inconsistent("evaluation needs an algebra character".into()));
    }
    let n = alg.n;
    let eps = |c: usize| {
        let mut v = vec![0; n];
        v[c] = 1;
        WeightVector(v)
    };
    let spaces = (0..n).map(|c| (eps(c), vec![Parity::Even, Parity::Odd])).collect();
    let mut action = vec![BTreeMap::new(); alg.dim()];
    for (g, blocks) in action.iter_mut().enumerate() {
        let (qi, aj) = alg.split(g);
        let c = &chi[aj];
        if c.is_zero() {
            continue;
        }
        let odd = qi >= n * n;
        let r = qi % (n * n);
        let j = r % n;
        let mut m = Matrix::zeros(2, 2);
        if odd {
            m.set(0, 1, c.clone());
            m.set(1, 0, c.clone());
        } else {
            m.set(0, 0, c.clone());
            m.set(1, 1, c.clone());
        }
        blocks.insert(eps(j), m);
    }
    WeightModule::new(alg.clone(), eps(0), spaces, action, None)
}
