//! Acceptance runner: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `EXPECTED_FAILURES` fail for mathematical reasons that are
//! written up in the README. The runner exits nonzero if any other criterion
//! fails, or if an expected failure unexpectedly passes.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qweyl::clifford::{build_h, irreducible_module, left_ideal_dim};
use qweyl::liesuper::build_q;
use qweyl::tensor::{
    is_isomorphic_up_to_parity, module_tensor, verify_tensor_theorem, BlockMap, IsoVerdict, TensorBranch,
    TensorError,
};
use qweyl::weylmod::{
    bar_l, compute_i_psi, evaluation_module, garland_check, hull_depth, irreducible_quotient, local_weyl,
    truncate_to_cone, verma_truncated, GarlandNormalization, Straightener, UElem,
};
use qweyl::*;

const EXPECTED_FAILURES: &[u32] = &[2, 4];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn alg(n: usize, a: CommAlgebra) -> Arc<CurrentAlgebra> {
    Arc::new(CurrentAlgebra::new(n, Arc::new(a)).unwrap())
}

fn wv(c: &[i64]) -> WeightVector {
    WeightVector(c.to_vec())
}

fn int(k: i64) -> Scalar {
    Scalar::from_int(k)
}

// Matrix realization of q(n) inside gl(n|n), independent of the bracket table.
fn q_matrix(n: usize, idx: usize) -> Vec<Vec<i64>> {
    let odd = idx >= n * n;
    let r = idx % (n * n);
    let (i, j) = (r / n, r % n);
    let mut m = vec![vec![0; 2 * n]; 2 * n];
    if odd {
        m[i][n + j] = 1;
        m[n + i][j] = 1;
    } else {
        m[i][j] = 1;
        m[n + i][n + j] = 1;
    }
    m
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = a.len();
    let mut out = vec![vec![0; d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] != 0 {
                for j in 0..d {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

fn matrix_bracket_agrees(n: usize, q: &LieSuperAlgebra) -> bool {
    let d = 2 * n * n;
    for x in 0..d {
        for y in 0..d {
            let (a, b) = (q_matrix(n, x), q_matrix(n, y));
            let s = if x >= n * n && y >= n * n { -1 } else { 1 };
            let (ab, ba) = (matmul(&a, &b), matmul(&b, &a));
            let mut expect = vec![Scalar::zero(); d];
            for i in 0..n {
                for j in 0..n {
                    let c = |r: usize, c: usize| ab[r][c] - s * ba[r][c];
                    let even = c(i, j);
                    let odd = c(i, n + j);
                    // the result must again lie in q(n)
                    if even != c(n + i, n + j) || odd != c(n + i, j) {
                        return false;
                    }
                    expect[i * n + j] = int(even);
                    expect[n * n + i * n + j] = int(odd);
                }
            }
            if q.bracket(&q.basis_vector(x), &q.basis_vector(y)) != expect {
                return false;
            }
        }
    }
    true
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 2..=4 {
        let (q, rd) = build_q(n).unwrap();
        let skew = q.check_skew().is_ok();
        let jacobi = q.check_jacobi().is_ok();
        let matrices = matrix_bracket_agrees(n, &q);
        let pres = check_presentation_summary(&q, &rd);
        ok &= skew && jacobi && matrices && pres.0;
        notes.push(format!("n={n}: skew {skew}, jacobi {jacobi}, realization {matrices}, {} relations", pres.1));
    }
    Outcome::new(ok, notes.join("; "))
}

fn check_presentation_summary(q: &LieSuperAlgebra, rd: &RootDatum) -> (bool, usize) {
    let r = qweyl::liesuper::check_presentation(q, rd);
    (r.all_pass() && !r.checks.is_empty(), r.checks.len())
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 2..=4usize {
        let (q, rd) = build_q(n).unwrap();
        let roots: BTreeSet<WeightVector> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| WeightVector::root(n, i + 1, j + 1)))
            .collect();
        let positive: Vec<&WeightVector> = roots.iter().filter(|r| r.in_q_plus()).collect();
        let count_ok = rd.positive_roots.len() == n * (n - 1) / 2 && positive.len() == rd.positive_roots.len();
        let spaces_ok = roots.iter().all(|r| {
            let even = (0..q.dim()).filter(|&k| q.weight(k) == r && !q.parity(k).is_odd()).count();
            let odd = (0..q.dim()).filter(|&k| q.weight(k) == r && q.parity(k).is_odd()).count();
            even == 1 && odd == 1
        });
        let stable = rd.is_weyl_stable()
            && roots.iter().all(|r| (0..n).all(|i| (0..n).all(|j| roots.contains(&r.permute(i, j)))));
        let mut missing = Vec::new();
        for a in &rd.simple_roots {
            let oracle = positive.iter().any(|b| roots.contains(&(a + *b)));
            if oracle != rd.partner_root(a).is_some() {
                return Outcome::new(false, format!("n={n}: partner search disagrees with oracle at {a}"));
            }
            if !oracle {
                missing.push(a.to_string());
            }
        }
        ok &= count_ok && spaces_ok && stable && missing.is_empty();
        notes.push(format!(
            "n={n}: |Φ⁺| ok {count_ok}, root spaces (1|1) {spaces_ok}, S_n-stable {stable}, simple roots without partner [{}]",
            missing.join(",")
        ));
    }
    Outcome::new(ok, notes.join("; "))
}

fn criterion_3() -> Outcome {
    let a = alg(2, CommAlgebra::field());
    let mut pbw = Straightener::new(a.clone());
    let g = |l: &str| a.lie.index_of(l).unwrap();
    let (e, f, k1, k2) = (g("e(1,2)⊗1"), g("e(2,1)⊗1"), g("e(1,1)⊗1"), g("e(2,2)⊗1"));
    let mut ok = true;
    for k in 1..=5usize {
        let fs = vec![f; k];
        let mut lhs_word = vec![e];
        lhs_word.extend(&fs);
        let lhs = pbw.normalize(&lhs_word, false);
        let mut fe = fs.clone();
        fe.push(e);
        let mut rhs = pbw.normalize(&fe, false);
        let fk1 = vec![f; k - 1];
        let with = |pbw: &mut Straightener, last: usize| {
            let mut w = fk1.clone();
            w.push(last);
            pbw.normalize(&w, false)
        };
        let mut corr = with(&mut pbw, k1).sub(&with(&mut pbw, k2));
        corr.add_scaled(&int(-(k as i64 - 1)), &pbw.normalize(&fk1, false));
        rhs.add_scaled(&int(k as i64), &corr);
        ok &= lhs == rhs;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20240917);
    let d = a.dim();
    let mut agree = 0;
    for _ in 0..100 {
        let len = rng.gen_range(0..=6);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..d)).collect();
        let u: UElem = pbw.normalize(&word, false);
        if u == pbw.normalize_by_descents(&word) && u.terms().all(|(w, _)| pbw.is_normal(w)) {
            agree += 1;
        }
    }
    Outcome::new(ok && agree == 100, format!("identity k=1..5 {ok}; confluent on {agree}/100 random words"))
}

fn criterion_4() -> Outcome {
    let a = alg(2, CommAlgebra::truncated_poly(4).unwrap());
    let t = a.coeff.basis(1);
    let alpha = a.rd.simple_roots[0].clone();
    let mut pbw = Straightener::new(a);
    let mut plain = Vec::new();
    let mut divided = Vec::new();
    for r in 1..=3 {
        let p = garland_check(&mut pbw, &alpha, &t, r, GarlandNormalization::PlainPowers).unwrap();
        let q = garland_check(&mut pbw, &alpha, &t, r, GarlandNormalization::DividedPowers).unwrap();
        plain.push(format!("r={r}:{}", if p.holds { "holds" } else { "fails" }));
        divided.push(format!("r={r}:{}", if q.holds { "holds" } else { "fails" }));
        if !p.holds && !q.holds {
            return Outcome::new(false, format!("r={r}: neither normalization holds"));
        }
    }
    let ok = plain.iter().all(|s| s.ends_with("holds"));
    Outcome::new(
        ok,
        format!(
            "as stated with plain powers [{}]; with divided powers (x⊗a)^(r)(y⊗1)^(r+1) [{}]",
            plain.join(" "),
            divided.join(" ")
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut dims = Vec::new();
    let mut ok = true;
    for r in 0..=4usize {
        let c = CliffordAlgebra::new(QuadraticPair::standard(r));
        // idempotent Π (1 + i t_{2k-1} t_{2k}) / 2 cuts out a minimal graded left ideal
        let mut p = c.one();
        for k in 0..r / 2 {
            let tt = c.mul(&c.generator(2 * k), &c.generator(2 * k + 1));
            let mut f = c.one();
            for (x, y) in f.iter_mut().zip(&tt) {
                *x = &(&*x + &(&Scalar::i() * y)) * &Scalar::from_ratio(1, 2);
            }
            p = c.mul(&p, &f);
        }
        let oracle = left_ideal_dim(&c, &p);
        let m = irreducible_module(&c).unwrap();
        let expected = 1usize << r.div_ceil(2);
        ok &= m.dim().total() == oracle && oracle == expected && m.satisfies_relations(c.pair());
        dims.push(format!("r={r}:{}", m.dim().total()));
    }
    let a = alg(2, CommAlgebra::field());
    let h = build_h(&MapWeight::over_field(&wv(&[1, 0])), &a).unwrap();
    let k2_odd = a.index(a.rd.cartan[1].1, 0);
    let k1_odd = a.index(a.rd.cartan[0].1, 0);
    let zero = h.cartan_action(&a, k2_odd).is_zero();
    let nonzero = !h.cartan_action(&a, k1_odd).is_zero();
    ok &= zero && nonzero && h.kernel_acts_as_zero();
    Outcome::new(ok, format!("dims [{}]; H((1,0)) = {}, k₂' acts as zero {zero}", dims.join(" "), h.dim()))
}

fn annihilates_top(m: &WeightModule, lambda: &WeightVector) -> bool {
    let a = m.alg();
    let unit = a.coeff.unit().clone();
    a.rd.chevalley.iter().enumerate().all(|(i, ch)| {
        let x = a.tensor(ch.f, &unit);
        let k = lambda.h_eval(i + 1) + 1;
        m.top_basis().into_iter().all(|w| {
            let mut cur = vec![(lambda.clone(), w)];
            for _ in 0..k {
                cur = cur.into_iter().flat_map(|(mu, v)| m.act_lie(&x, &mu, &v)).collect();
            }
            cur.is_empty()
        })
    })
}

fn criterion_6() -> Outcome {
    let a = alg(2, CommAlgebra::field());
    let mut pbw = Straightener::new(a.clone());
    let mut ok = true;
    let mut notes = Vec::new();
    for l in [[1, 0], [2, 0], [2, 1]] {
        let lambda = wv(&l);
        let h = build_h(&MapWeight::over_field(&lambda), &a).unwrap();
        let depth = hull_depth(&lambda) + 2;
        let verma = verma_truncated(&mut pbw, &h, depth).unwrap();
        let irr = irreducible_quotient(&verma.module).unwrap();
        let from_weyl = irreducible_quotient(&bar_l(2, &lambda).unwrap().module).unwrap();
        let good = annihilates_top(&irr, &lambda)
            && annihilates_top(&from_weyl, &lambda)
            && irr.character().eq_up_to_parity(&from_weyl.character());
        ok &= good;
        notes.push(format!("{lambda}: L = {} {good}", irr.dim()));
    }
    Outcome::new(ok, notes.join("; "))
}

// φ M_g = N_g φ for every generator, φ even and invertible.
fn is_even_isomorphism(m: &WeightModule, n: &WeightModule, phi: &BlockMap) -> bool {
    if !phi.is_invertible() || m.character().total() != n.character().total() {
        return false;
    }
    let a = m.alg();
    for mu in m.weights() {
        let Some(p) = phi.0.get(mu) else { return false };
        for (r, c, _) in p.entries() {
            if m.parities(mu)[c] != n.parities(mu)[r] {
                return false;
            }
        }
        for g in 0..a.dim() {
            let nu = mu + a.weight(g);
            let lhs = match (m.operator(g, mu), phi.0.get(&nu)) {
                (Some(op), Some(q)) => q.mul(&op),
                _ => Matrix::zeros(n.dim_at(&nu), m.dim_at(mu)),
            };
            let rhs = match n.operator(g, mu) {
                Some(op) => op.mul(p),
                None => Matrix::zeros(n.dim_at(&nu), m.dim_at(mu)),
            };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn criterion_7_modules() -> (WeightModule, WeightModule) {
    let irr = irreducible_quotient(&bar_l(2, &wv(&[1, 0])).unwrap().module).unwrap();
    let v = evaluation_module(irr.alg(), &[Scalar::one()]).unwrap();
    (irr, v)
}

fn criterion_7() -> Outcome {
    let (irr, v) = criterion_7_modules();
    let shape_ok = v.dim().total() == 4
        && v.superdim_at(&wv(&[1, 0])) == SuperDim::new(1, 1)
        && v.superdim_at(&wv(&[0, 1])) == SuperDim::new(1, 1)
        && v.check_axioms().is_ok();
    let r = is_isomorphic_up_to_parity(&irr, &v).unwrap();
    let target = match r.verdict {
        IsoVerdict::Iso => v.clone(),
        IsoVerdict::IsoAfterPi => v.parity_shift(),
        IsoVerdict::NotIso => return Outcome::new(false, "no isomorphism found"),
    };
    let witness = r.witness.expect("witness accompanies a positive verdict");
    let checked = is_even_isomorphism(&irr, &target, &witness);
    Outcome::new(
        shape_ok && checked,
        format!("L̄ quotient {} vs ℂ^(2|2): {:?}, witness {:?} verified {checked}", irr.dim(), r.verdict, witness.shape()),
    )
}

fn criterion_8_module() -> (LocalWeylResult, CommAlgebra) {
    let ca = CommAlgebra::truncated_poly(2).unwrap();
    let a = alg(2, ca.clone());
    let psi = MapWeight::from_character(&wv(&[1, 0]), ca.augmentation().unwrap(), &ca).unwrap();
    (local_weyl(&a, &psi, &Default::default()).unwrap(), ca)
}

type LocalWeylResult = qweyl::weylmod::LocalWeyl;

fn criterion_8() -> Outcome {
    let (w, _) = criterion_8_module();
    let m = &w.module;
    let n = m.alg().n as i64;
    let certified = m.weights().all(|mu| m.depth(mu).is_some_and(|d| d <= w.depth - (n - 1)));
    let support: BTreeSet<_> = m.weights().cloned().collect();
    let allowed: BTreeSet<_> = [wv(&[1, 0]), wv(&[0, 1])].into_iter().collect();
    let ch = m.character();
    let symmetric = ch.is_symmetric();
    let ip = compute_i_psi(m).unwrap();
    let a = m.alg();
    let top = m.highest().clone();
    let mut kills = true;
    for q in 0..a.q.dim() {
        for b in ip.power.space().basis() {
            let x = a.tensor(q, b);
            kills &= m.top_basis().iter().all(|v| m.act_lie(&x, &top, v).is_empty());
        }
    }
    let locked = ch.get(&wv(&[1, 0])) == SuperDim::new(1, 1)
        && ch.get(&wv(&[0, 1])) == SuperDim::new(1, 1)
        && m.dim() == SuperDim::new(2, 2);
    let ok = certified
        && support.is_subset(&allowed)
        && symmetric
        && kills
        && ip.kills_top
        && locked
        && m.check_axioms().is_ok();
    Outcome::new(
        ok,
        format!(
            "certified at depth {} (attempts {:?}); dim {}; symmetric {symmetric}; dim I_ψ {}, n_ψ {}, (q⊗I^n)H = 0 {kills}",
            w.depth,
            w.attempts,
            m.dim(),
            ip.ideal.dim(),
            ip.n_psi
        ),
    )
}

fn criterion_9_modules() -> Vec<(WeightModule, WeightModule)> {
    let a = alg(2, CommAlgebra::field());
    [[1, 0], [2, 0], [2, 1]]
        .iter()
        .map(|l| {
            let lambda = wv(l);
            let w = local_weyl(&a, &MapWeight::over_field(&lambda), &Default::default()).unwrap();
            (w.module, bar_l(2, &lambda).unwrap().module)
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (w, l) in criterion_9_modules() {
        let same = w.character().eq_up_to_parity(&l.character());
        ok &= same;
        notes.push(format!("{}: {} vs {} {same}", w.highest(), w.dim(), l.dim()));
    }
    Outcome::new(ok, notes.join("; "))
}

fn split_weights() -> (Arc<CurrentAlgebra>, MapWeight, MapWeight) {
    let s = CommAlgebra::direct_sum(&CommAlgebra::field(), &CommAlgebra::field());
    let a = alg(2, s.clone());
    let (one, zero) = (Scalar::one(), Scalar::zero());
    let p1 = MapWeight::new(vec![vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]], &s).unwrap();
    let p2 = MapWeight::new(vec![vec![zero.clone(), one], vec![zero.clone(), zero]], &s).unwrap();
    (a, p1, p2)
}

fn criterion_10() -> Outcome {
    let (a, p1, p2) = split_weights();
    let r = verify_tensor_theorem(&a, &p1, &p2, &Default::default()).unwrap();
    let conv = r.factor_characters.0.tensor(&r.factor_characters.1) == r.tensor_character;
    let branch_ok = matches!(r.branch, TensorBranch::Single | TensorBranch::Double | TensorBranch::DoubleTwisted);
    let ca = CommAlgebra::truncated_poly(2).unwrap();
    let b = alg(2, ca.clone());
    let aug = MapWeight::from_character(&wv(&[1, 0]), ca.augmentation().unwrap(), &ca).unwrap();
    let negative = matches!(
        verify_tensor_theorem(&b, &aug, &aug, &Default::default()),
        Err(TensorError::HypothesisViolation)
    );
    let ok = r.comaximal && branch_ok && r.witness_shape.is_some() && conv && negative;
    Outcome::new(
        ok,
        format!(
            "comaximal {}; branch {:?} ({:?}), witness {:?}; n_ψ {:?}; negative control rejected {negative}",
            r.comaximal, r.branch, r.verdict, r.witness_shape, r.n_psi
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut modules = Vec::new();
    let (irr, v) = criterion_7_modules();
    modules.push(irr);
    modules.push(v);
    modules.push(criterion_8_module().0.module);
    for (w, l) in criterion_9_modules() {
        modules.push(w);
        modules.push(l);
    }
    let (a, p1, p2) = split_weights();
    let w1 = local_weyl(&a, &p1, &Default::default()).unwrap().module;
    let w2 = local_weyl(&a, &p2, &Default::default()).unwrap().module;
    let w12 = local_weyl(&a, &p1.add(&p2), &Default::default()).unwrap().module;
    modules.push(module_tensor(&w1, &w2).unwrap());
    modules.extend([w1, w2, w12]);
    let mut checked = 0;
    for m in &modules {
        let mut nus: BTreeSet<WeightVector> = m.weights().cloned().collect();
        nus.insert(m.highest() + &wv(&[1, -1]));
        for nu in nus {
            let once = truncate_to_cone(m, &nu);
            let twice = truncate_to_cone(&once, &nu);
            if once.character() != twice.character() || once.weights().any(|mu| !(&nu - mu).in_q_plus()) {
                return Outcome::new(false, format!("fails for {} at ν = {nu}", m.highest()));
            }
            checked += 1;
        }
    }
    Outcome::new(true, format!("{} modules, {checked} cones", modules.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome, u64); 11] = [
        (1, "algebra construction and presentation", criterion_1, 30),
        (2, "root data", criterion_2, 5),
        (3, "PBW identities", criterion_3, 60),
        (4, "Garland membership", criterion_4, 300),
        (5, "Clifford layer", criterion_5, 30),
        (6, "highest weight annihilation", criterion_6, 120),
        (7, "defining module", criterion_7, 60),
        (8, "local Weyl module over C[t]/(t^2)", criterion_8, 300),
        (9, "consistency over C", criterion_9, 120),
        (10, "tensor product", criterion_10, 600),
        (11, "cone truncation", criterion_11, 60),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run, limit) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed < Duration::from_secs(limit);
        let tag = if pass { "PASS" } else { "FAIL" };
        let expected = EXPECTED_FAILURES.contains(&id);
        let note = if expected && !pass { " [documented]" } else { "" };
        println!("{tag} criterion {id:>2} {name} ({:.2?} / {limit}s){note}: {}", elapsed, out.detail);
        if pass == expected {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
