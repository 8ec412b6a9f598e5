use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qweyl::clifford::{build_h, irreducible_module};
use qweyl::liesuper::{build_q, check_presentation, check_root_space_decomposition};
use qweyl::tensor::{verify_tensor_theorem, TensorError};
use qweyl::weylmod::{
    garland_check, irreducible_quotient, local_weyl, GarlandNormalization, Straightener,
};
use qweyl::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Presentation,
    Garland,
    Clifford,
    Prop4a,
    Tensor,
    All,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Presentation, Suite::Garland, Suite::Clifford, Suite::Prop4a, Suite::Tensor],
            s => vec![s],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Presentation => "presentation",
            Suite::Garland => "garland",
            Suite::Clifford => "clifford",
            Suite::Prop4a => "prop4a",
            Suite::Tensor => "tensor",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GarlandForm {
    /// Ordinary powers, exactly as the identity is usually quoted.
    Plain,
    /// Divided powers `x^(r) = x^r / r!`.
    Divided,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub n: Option<usize>,
    pub seed: u64,
    pub garland_form: GarlandForm,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

fn alg(n: usize, a: CommAlgebra) -> Arc<CurrentAlgebra> {
    Arc::new(CurrentAlgebra::new(n, Arc::new(a)).expect("n >= 2 is validated by the caller"))
}

pub fn run(suite: Suite, opts: &SuiteOptions) -> SuiteReport {
    let checks = match suite {
        Suite::Presentation => presentation(opts),
        Suite::Garland => garland(opts),
        Suite::Clifford => clifford(opts),
        Suite::Prop4a => prop4a(opts),
        Suite::Tensor => tensor(),
        Suite::All => unreachable!("expanded before running"),
    };
    SuiteReport { suite: suite.name(), pass: checks.iter().all(|c| c.pass), checks }
}

fn presentation(opts: &SuiteOptions) -> Vec<Check> {
    let ranks: Vec<usize> = opts.n.map_or_else(|| (2..=4).collect(), |n| vec![n]);
    let mut out = Vec::new();
    for n in ranks {
        let (q, rd) = build_q(n).expect("validated rank");
        out.push(check(format!("n={n} skew-supersymmetry"), q.check_skew().is_ok(), ""));
        out.push(check(format!("n={n} super Jacobi"), q.check_jacobi().is_ok(), ""));
        out.push(check(format!("n={n} root spaces"), check_root_space_decomposition(&q, &rd), ""));
        out.push(check(format!("n={n} Weyl group stability"), rd.is_weyl_stable(), ""));
        let rep = check_presentation(&q, &rd);
        let failed: Vec<String> = rep.failures().iter().map(|f| format!("{} {:?}", f.family, f.indices)).collect();
        out.push(check(
            format!("n={n} presentation ({} relations)", rep.checks.len()),
            rep.all_pass(),
            failed.join("; "),
        ));
    }
    out
}

fn garland(opts: &SuiteOptions) -> Vec<Check> {
    let a = alg(2, CommAlgebra::truncated_poly(4).expect("N = 4"));
    let t = a.coeff.basis(1);
    let alpha = a.rd.simple_roots[0].clone();
    let mut pbw = Straightener::new(a);
    let norm = match opts.garland_form {
        GarlandForm::Plain => GarlandNormalization::PlainPowers,
        GarlandForm::Divided => GarlandNormalization::DividedPowers,
    };
    (1..=3)
        .map(|r| match garland_check(&mut pbw, &alpha, &t, r, norm) {
            Ok(rep) => check(
                format!("r={r} a=t A=C[t]/(t^4)"),
                rep.holds,
                if rep.holds { String::new() } else { format!("{} residual terms", rep.residual_terms) },
            ),
            Err(e) => check(format!("r={r}"), false, e.to_string()),
        })
        .collect()
}

fn clifford(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for r in 0..=4usize {
        let expected = 1usize << r.div_ceil(2);
        let std = irreducible_module(&CliffordAlgebra::new(QuadraticPair::standard(r)));
        let values: Vec<Scalar> = (0..r)
            .map(|_| {
                let k: i64 = rng.gen_range(1..=9);
                Scalar::from_int(if rng.gen_bool(0.5) { k } else { -k })
            })
            .collect();
        let pair = QuadraticPair::diagonal(&values);
        let random = irreducible_module(&CliffordAlgebra::new(pair.clone()));
        let ok = match (&std, &random) {
            (Ok(a), Ok(b)) => {
                a.dim().total() == expected && b.dim().total() == expected && b.satisfies_relations(&pair)
            }
            _ => false,
        };
        out.push(check(format!("r={r} irreducible dimension {expected}"), ok, ""));
    }
    let n = opts.n.unwrap_or(2);
    let a = alg(n, CommAlgebra::field());
    let mut lambda = vec![0; n];
    lambda[0] = 1;
    let h = build_h(&MapWeight::over_field(&WeightVector(lambda)), &a);
    let ok = h.is_ok_and(|h| {
        h.kernel_acts_as_zero() && (1..n).all(|i| h.cartan_action(&a, a.index(a.rd.cartan[i].1, 0)).is_zero())
    });
    out.push(check("radical of the form acts as zero on H(ε₁)", ok, ""));
    out
}

fn prop4a_weights(n: usize) -> Vec<Vec<i64>> {
    match n {
        2 => vec![vec![1, 0], vec![2, 0], vec![2, 1]],
        3 => vec![vec![1, 0, 0], vec![2, 1, 0]],
        _ => {
            let mut l = vec![0; n];
            l[0] = 1;
            vec![l]
        }
    }
}

fn annihilates_top(m: &WeightModule) -> bool {
    let a = m.alg();
    let lambda = m.highest().clone();
    let unit = a.coeff.unit().clone();
    a.rd.chevalley.iter().enumerate().all(|(i, ch)| {
        let x = a.tensor(ch.f, &unit);
        m.top_basis().into_iter().all(|w| {
            let mut cur = vec![(lambda.clone(), w)];
            for _ in 0..lambda.h_eval(i + 1) + 1 {
                cur = cur.into_iter().flat_map(|(mu, v)| m.act_lie(&x, &mu, &v)).collect();
            }
            cur.is_empty()
        })
    })
}

fn prop4a(opts: &SuiteOptions) -> Vec<Check> {
    let n = opts.n.unwrap_or(2);
    let a = alg(n, CommAlgebra::field());
    prop4a_weights(n)
        .into_iter()
        .map(|l| {
            let lambda = WeightVector(l);
            let name = format!("λ={lambda}");
            let res = local_weyl(&a, &MapWeight::over_field(&lambda), &Default::default())
                .map_err(|e| e.to_string())
                .and_then(|w| irreducible_quotient(&w.module).map_err(|e| e.to_string()));
            match res {
                Ok(irr) => check(name, annihilates_top(&irr), format!("irreducible quotient {}", irr.dim())),
                Err(e) => check(name, false, e),
            }
        })
        .collect()
}

fn tensor() -> Vec<Check> {
    let s = CommAlgebra::direct_sum(&CommAlgebra::field(), &CommAlgebra::field());
    let a = alg(2, s.clone());
    let (one, zero) = (Scalar::one(), Scalar::zero());
    let p1 = MapWeight::new(vec![vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]], &s);
    let p2 = MapWeight::new(vec![vec![zero.clone(), one], vec![zero.clone(), zero]], &s);
    let mut out = Vec::new();
    match (p1, p2) {
        (Ok(p1), Ok(p2)) => match verify_tensor_theorem(&a, &p1, &p2, &Default::default()) {
            Ok(r) => out.push(check(
                "C⊕C, ψ₁=(1,0) on the first factor, ψ₂=(1,0) on the second",
                r.holds() && r.comaximal && r.witness_shape.is_some(),
                format!("branch {:?}, witness {:?}", r.branch, r.witness_shape),
            )),
            Err(e) => out.push(check("C⊕C tensor product", false, e.to_string())),
        },
        _ => out.push(check("C⊕C map-weights", false, "construction failed")),
    }
    let ca = CommAlgebra::truncated_poly(2).expect("N = 2");
    let b = alg(2, ca.clone());
    let negative = ca
        .augmentation()
        .and_then(|chi| MapWeight::from_character(&WeightVector(vec![1, 0]), chi, &ca).ok())
        .map(|psi| verify_tensor_theorem(&b, &psi, &psi, &Default::default()));
    out.push(check(
        "same maximal ideal is rejected",
        matches!(negative, Some(Err(TensorError::HypothesisViolation))),
        "",
    ));
    out
}
