//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so the lines
//! are printed even when cargo captures test output.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use wmono_core::measures::{
    coa_two_qubit, compress_local_support, roof_minimize, wootters_concurrence, LocalSupport,
    MixedMeasure, OracleOptions, PureMeasure, RoofOptions,
};
use wmono_core::monogamy::{
    cren_equality_check, cut_value, example_comparison, g_function, lemma31_check,
    published_example_values, qubit_power_checks, sweep_f, theorem32_rhs, theorem34_rhs_chain,
    verify_theorem32, verify_theorem34, MonogamyMeasure, PowerParams, SweepInputs, Verdict,
    VerifyOptions,
};
use wmono_core::qudit::{CMatrix, CVector, DensityMatrix, PureState, SystemShape};
use wmono_core::wclass::{build_wclass_state, reduce_to_partition, Partition, WCoefficients};
use wmono_core::Complex64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cgauss(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn random_pure(dims: Vec<usize>, rng: &mut ChaCha8Rng) -> PureState {
    let shape = SystemShape::new(dims).unwrap();
    let amps = CVector::from_fn(shape.total_dim(), |_, _| cgauss(rng));
    PureState::normalized(shape, amps).unwrap()
}

/// ρ = GG†/Tr with G a 4×k Ginibre matrix, k uniform in 1..=4.
fn random_two_qubit_density(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let k = rng.random_range(1..=4);
    let g = CMatrix::from_fn(4, k, |_, _| cgauss(rng));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(SystemShape::new(vec![2, 2]).unwrap(), m.unscale(tr)).unwrap()
}

fn wclass(n: usize, d: usize, seed: u64) -> PureState {
    build_wclass_state(&WCoefficients::random(n, d, seed).unwrap()).unwrap()
}

/// The 50-state sample shared by the squared-sum criteria: n ∈ {3, 4}, d ∈ {1, 2}.
fn lemma_sample() -> Vec<(usize, usize, u64, PureState)> {
    (0..50u64)
        .map(|i| {
            let (n, d) = [(3, 1), (3, 2), (4, 1), (4, 2)][i as usize % 4];
            (n, d, 1000 + i, wclass(n, d, 1000 + i))
        })
        .collect()
}

fn focused_three_block(n: usize) -> Vec<Partition> {
    Partition::all_covering(n, 3)
        .unwrap()
        .iter()
        .flat_map(|p| (0..3).map(move |f| p.with_focus(f).unwrap()))
        .collect()
}

fn power_inequality_grid() -> Outcome {
    let mut worst = f64::INFINITY;
    for i in 0..200 {
        for j in 0..200 {
            let x = i as f64 / 199.0;
            let t = 1.0 + 49.0 * j as f64 / 199.0;
            worst = worst.min(lemma31_check(x, t).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10_000 {
        let x: f64 = rng.random_range(0.0..=1.0);
        let t: f64 = rng.random_range(1.0..=50.0);
        worst = worst.min(lemma31_check(x, t).unwrap());
    }
    outcome(
        worst >= -1e-12,
        format!("min residual {worst:.3e} over 40000 grid + 10000 random points"),
    )
}

fn g_monotone() -> Outcome {
    let delta = 1e-3;
    let mut worst = f64::INFINITY;
    for i in 0..=100 {
        let x = i as f64 / 100.0;
        let mut t = 1.0;
        let mut prev = g_function(x, t).unwrap();
        while t < 50.0 {
            t += delta;
            let next = g_function(x, t).unwrap();
            worst = worst.min(next - prev);
            prev = next;
        }
    }
    outcome(
        worst >= -1e-10,
        format!("min g(t+1e-3) - g(t) = {worst:.3e}"),
    )
}

fn published_sweep() -> Outcome {
    let v = published_example_values();
    let inputs = SweepInputs::new(v.c_a_bc, v.c_ac, v.c_ab).unwrap();
    let betas: Vec<f64> = (0..=200).map(|i| 2.0 * i as f64 / 200.0).collect();
    let res = sweep_f(inputs, &betas, &[2.0]).unwrap();
    let min = res.rows.iter().map(|r| r.f).fold(f64::INFINITY, f64::min);
    let at22 = res.rows.last().unwrap().f;
    outcome(
        min >= -1e-12 && at22.abs() <= 1e-15,
        format!("min f(beta,2) {min:.3e} over 201 betas, f(2,2) = {at22:.3e}"),
    )
}

fn lemma21_squared_sum() -> Outcome {
    let mut worst_qubit = 0.0f64;
    let mut worst_qutrit = 0.0f64;
    let mut instances = 0;
    for (n, d, _, state) in lemma_sample() {
        let oracle = OracleOptions {
            compress_support: d == 1,
            ..OracleOptions::default()
        };
        let mut cache: HashMap<(Vec<usize>, Vec<usize>), f64> = HashMap::new();
        let mut c = |l: &[usize], r: &[usize]| {
            let key = if l < r {
                (l.to_vec(), r.to_vec())
            } else {
                (r.to_vec(), l.to_vec())
            };
            *cache.entry(key).or_insert_with(|| {
                cut_value(&state, l, r, MixedMeasure::Concurrence, &oracle)
                    .unwrap()
                    .value
            })
        };
        for p in focused_three_block(n) {
            let b = p.blocks();
            let mut rest = [b[1].clone(), b[2].clone()].concat();
            rest.sort_unstable();
            let whole = c(&b[0], &rest);
            let pairs = c(&b[0], &b[1]).powi(2) + c(&b[0], &b[2]).powi(2);
            let dev = (whole * whole - pairs).abs();
            if d == 1 {
                worst_qubit = worst_qubit.max(dev);
            } else {
                worst_qutrit = worst_qutrit.max(dev);
            }
            instances += 1;
        }
    }
    outcome(
        worst_qubit <= 5e-3 && worst_qutrit <= 1e-2,
        format!(
            "{instances} instances; max |dev| qubit (exact pairs) {worst_qubit:.3e}, qutrit (optimizer pairs) {worst_qutrit:.3e}"
        ),
    )
}

fn coa_equals_concurrence() -> Outcome {
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for (n, _, _, state) in lemma_sample() {
        for l in 0..n {
            for r in l + 1..n {
                let p = Partition::new(vec![vec![l], vec![r]]).unwrap();
                let rho = reduce_to_partition(&state, &p).unwrap().density();
                if let LocalSupport::Compressed(q) = compress_local_support(&rho).unwrap() {
                    if q.shape().dims() == [2, 2] {
                        let dev =
                            (coa_two_qubit(&q).unwrap() - wootters_concurrence(&q).unwrap()).abs();
                        worst = worst.max(dev);
                        pairs += 1;
                    }
                }
            }
        }
    }
    outcome(
        worst <= 1e-8,
        format!("{pairs} two-qubit pairs, max |CoA - C| {worst:.3e}"),
    )
}

fn cren_equality() -> Outcome {
    let opts = VerifyOptions::default();
    let mut worst = 0.0f64;
    for i in 0..20 {
        let state = wclass(3, 1, 2000 + i);
        let r = cren_equality_check(&state, &Partition::finest(3).unwrap(), 0, &opts).unwrap();
        worst = worst.max(r.residual.abs());
    }
    outcome(
        worst <= 5e-3,
        format!("20 states, max |residual| {worst:.3e}"),
    )
}

fn theorem32_suite() -> Outcome {
    let opts = VerifyOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut worst = f64::INFINITY;
    let mut worst_sat = 0.0f64;
    let mut non_holds = 0;
    for i in 0..100u64 {
        let (n, d) = [(3, 1), (3, 2), (4, 1), (4, 2)][i as usize % 4];
        let state = wclass(n, d, 3000 + i);
        let parts = focused_three_block(n);
        let p = &parts[rng.random_range(0..parts.len())];
        let alpha: f64 = rng.random_range(2.0..=4.0);
        let beta: f64 = rng.random_range(0.0..=alpha);
        let measure = if i % 2 == 0 {
            MonogamyMeasure::Coa
        } else {
            MonogamyMeasure::Cren
        };
        let r = verify_theorem32(
            &state,
            p,
            &PowerParams::new(alpha, beta).unwrap(),
            measure,
            &opts,
        )
        .unwrap();
        worst = worst.min(r.residual);
        non_holds += usize::from(r.verdict != Verdict::Holds || r.residual < -5e-3);
        let sat = verify_theorem32(
            &state,
            p,
            &PowerParams::new(2.0, 2.0).unwrap(),
            measure,
            &opts,
        )
        .unwrap();
        worst_sat = worst_sat.max(sat.residual.abs());
    }
    outcome(
        non_holds == 0 && worst_sat <= 5e-3,
        format!("100 instances, {non_holds} not holding, min residual {worst:.3e}, max |saturation residual| {worst_sat:.3e}"),
    )
}

fn theorem34_suite() -> Outcome {
    let opts = VerifyOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let mut certified = 0;
    let mut worst = f64::INFINITY;
    for i in 0..50u64 {
        let n = if i % 2 == 0 { 4 } else { 5 };
        let state = wclass(n, 1, 4000 + i);
        let mut order: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            order.swap(k, rng.random_range(0..=k));
        }
        let p = Partition::new(order.iter().map(|&s| vec![s]).collect()).unwrap();
        let alpha: f64 = rng.random_range(2.0..=4.0);
        let beta: f64 = rng.random_range(0.0..=alpha);
        let measure = if i % 2 == 0 {
            MonogamyMeasure::Coa
        } else {
            MonogamyMeasure::Cren
        };
        let r = verify_theorem34(
            &state,
            &p,
            &PowerParams::new(alpha, beta).unwrap(),
            measure,
            None,
            &opts,
        )
        .unwrap();
        if r.premises.iter().all(|p| p.satisfied) {
            certified += 1;
            worst = worst.min(r.residual);
        }
    }
    let mut chain_dev = 0.0f64;
    for _ in 0..1000 {
        let alpha: f64 = rng.random_range(2.0..=4.0);
        let pp = PowerParams::new(alpha, rng.random_range(0.0..=alpha)).unwrap();
        let (a, b): (f64, f64) = (rng.random(), rng.random());
        let (hi, lo) = (a.max(b), a.min(b));
        let direct = theorem32_rhs(hi, lo, &pp).unwrap();
        let split = if a <= b { 2 } else { 1 };
        let chain = theorem34_rhs_chain(&[a, b], &[1.0, b], split, &pp).unwrap();
        chain_dev = chain_dev.max((chain.rhs - direct).abs());
    }
    outcome(
        certified > 0 && worst >= -5e-3 && chain_dev <= 1e-15,
        format!(
            "{certified}/50 certified, min certified residual {worst:.3e}, three-block chain deviation {chain_dev:.1e}"
        ),
    )
}

fn qubit_powers() -> Outcome {
    let opts = VerifyOptions::default();
    let mut worst_sat = 0.0f64;
    let s3 = 1.0 / 3f64.sqrt();
    let w = PureState::from_terms(
        SystemShape::uniform(3, 2).unwrap(),
        &[
            (&[1, 0, 0][..], s3.into()),
            (&[0, 1, 0][..], s3.into()),
            (&[0, 0, 1][..], s3.into()),
        ],
    )
    .unwrap();
    let mut states = vec![w];
    states.extend((0..20).map(|i| wclass(3 + (i % 3) as usize, 1, 5000 + i)));
    for s in &states {
        let r = qubit_power_checks(s, 2.0, -1.0, &opts).unwrap();
        worst_sat = worst_sat.max(r[0].residual.abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_polygamy = f64::INFINITY;
    for _ in 0..50 {
        let s = random_pure(vec![2, 2, 2], &mut rng);
        let r = qubit_power_checks(&s, 2.0, -1.0, &opts).unwrap();
        worst_polygamy = worst_polygamy.min(r[2].residual);
    }
    let h = 0.5f64.sqrt();
    let ghz = PureState::from_terms(
        SystemShape::uniform(3, 2).unwrap(),
        &[(&[0, 0, 0][..], h.into()), (&[1, 1, 1][..], h.into())],
    )
    .unwrap();
    let g = qubit_power_checks(&ghz, 2.0, -1.0, &opts).unwrap();
    let ghz_pairs = g[0].rhs_terms.iter().map(|t| t.value).fold(0.0, f64::max);
    let ghz_res = g[0].residual;
    outcome(
        worst_sat <= 5e-3 && worst_polygamy >= -5e-3 && ghz_pairs <= 5e-3 && (ghz_res - 1.0).abs() <= 5e-3,
        format!(
            "W-class saturation max |res| {worst_sat:.3e}; squared assistance min res {worst_polygamy:.3e} on 50 pure states; GHZ max pair^2 {ghz_pairs:.1e}, residual {ghz_res:.6}"
        ),
    )
}

fn roof_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let roof = RoofOptions::default();
    let mut min_margin = f64::INFINITY;
    let mut max_gap = 0.0f64;
    for i in 0..100 {
        let rho = random_two_qubit_density(&mut rng);
        let exact = wootters_concurrence(&rho).unwrap();
        let est = roof_minimize(
            &rho,
            PureMeasure::Concurrence,
            &RoofOptions { seed: i, ..roof },
        )
        .unwrap();
        min_margin = min_margin.min(est.value - exact);
        max_gap = max_gap.max(est.value - exact);
    }
    outcome(
        min_margin >= -1e-9 && max_gap <= 5e-3,
        format!("100 states, min (roof - exact) {min_margin:.3e}, max gap {max_gap:.3e}"),
    )
}

fn example_block() -> Outcome {
    let cmp = example_comparison(&OracleOptions::default()).unwrap();
    let p = cmp.published;
    let c = cmp.computed;
    let d = cmp.difference;
    println!(
        "    published: C_AB {:.6} C_AC {:.6} C_A|BC {:.6}",
        p.c_ab, p.c_ac, p.c_a_bc
    );
    println!(
        "    computed:  C_AB {:.6} C_AC {:.6} C_A|BC {:.6}",
        c.c_ab, c.c_ac, c.c_a_bc
    );
    println!(
        "    diff:      C_AB {:+.6} C_AC {:+.6} C_A|BC {:+.6}",
        d.c_ab, d.c_ac, d.c_a_bc
    );
    let res = cmp.computed_squared_residual;
    outcome(
        res.abs() <= 5e-3,
        format!("computed squared-sum residual {res:.3e}"),
    )
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Duration); 11] = [
        (
            "power inequality grid",
            power_inequality_grid,
            Duration::from_secs(1),
        ),
        ("g monotonicity", g_monotone, Duration::from_secs(1)),
        (
            "f(beta,2) sweep on published values",
            published_sweep,
            Duration::from_secs(1),
        ),
        (
            "squared-sum equality on 3-block partitions",
            lemma21_squared_sum,
            Duration::from_secs(600),
        ),
        (
            "two-qubit CoA equals concurrence",
            coa_equals_concurrence,
            Duration::from_secs(10),
        ),
        (
            "CREN squared-sum equality",
            cren_equality,
            Duration::from_secs(60),
        ),
        (
            "three-block power bound",
            theorem32_suite,
            Duration::from_secs(600),
        ),
        (
            "chained power bound",
            theorem34_suite,
            Duration::from_secs(600),
        ),
        (
            "qubit power relations",
            qubit_powers,
            Duration::from_secs(600),
        ),
        (
            "convex-roof oracle vs Wootters",
            roof_validation,
            Duration::from_secs(300),
        ),
        (
            "three-qubit example comparison",
            example_block,
            Duration::from_secs(600),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= *budget;
        failed += usize::from(!pass);
        println!(
            "{} [{:>2}] {name}: {} ({:.2}s, budget {}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
