//! Acceptance run: each criterion at its stated tolerance, one PASS/FAIL line per criterion.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use numrad::bounds::{lemma_17_bound, positive_diff_norm_14, BoundContext, EvalConfig, MixedSchwarz};
use numrad::harness::{example_matrix, find_noncomparability_witnesses, generate, run_suite, Family, TrialConfig};
use numrad::linalg::{herm_eig, hermitian_norm, ComplexMatrix, FunctionPair, HermitianPsd, C64};
use numrad::radius::{numerical_radius, radius_oracle, OracleConfig, RadiusConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    let ctx = BoundContext::new(&example_matrix(), &EvalConfig::default()).map_err(e)?;
    let k07 = ctx.kittaneh_07().map_err(e)?.value;
    let (min_v, _) = ctx.min_over_v_29().map_err(e)?;
    let elapsed = start.elapsed();
    check(
        (k07 - 1.5).abs() <= 1e-12 && (min_v.value - 1.280776).abs() <= 1e-4 && elapsed < Duration::from_secs(1),
        format!("kittaneh07 = {k07}, min_v_29 = {:.9}, {elapsed:.2?}", min_v.value),
    )
}

fn strict_refinement() -> Outcome {
    let ctx = BoundContext::new(&example_matrix(), &EvalConfig::default()).map_err(e)?;
    let k07 = ctx.kittaneh_07().map_err(e)?.value;
    let (min_v, _) = ctx.min_over_v_29().map_err(e)?;
    check(min_v.value < k07 - 0.2, format!("kittaneh07 - min_v_29 = {:.6}", k07 - min_v.value))
}

fn chain_suite() -> Outcome {
    let cfg = TrialConfig {
        families: vec![Family::Ginibre],
        dims: (2..=8).collect(),
        trials: 500,
        seed: 0,
        ..TrialConfig::default()
    };
    let start = Instant::now();
    let report = run_suite(&cfg).map_err(e)?;
    let elapsed = start.elapsed();
    let s = &report.summary;
    check(
        s.matrices == 3500 && s.failures.is_empty() && s.violations.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{} matrices, {} violations, {} failures, {elapsed:.2?}",
            s.matrices,
            s.violations.len(),
            s.failures.len()
        ),
    )
}

fn equality_cases() -> Outcome {
    let mut worst = [0f64; 4];
    for (family, slot) in [(Family::Nilpotent, 0), (Family::Normal, 2)] {
        let cfg = TrialConfig {
            families: vec![family],
            dims: (2..=8).collect(),
            trials: 100,
            seed: 11,
            ..TrialConfig::default()
        };
        let report = run_suite(&cfg).map_err(e)?;
        if !report.summary.failures.is_empty() {
            return Err(format!("{family}: {:?}", report.summary.failures));
        }
        for r in &report.records {
            let omega = r.omega.ok_or("missing omega")?;
            let norm = r.bound_values["upper.norm"];
            let radius_gap = if family == Family::Nilpotent { omega - 0.5 * norm } else { omega - norm };
            worst[slot] = worst[slot].max(radius_gap.abs());
            worst[slot + 1] = worst[slot + 1].max((r.bound_values["upper.eq25"] - omega * omega).abs());
        }
    }
    check(
        worst.iter().all(|&w| w <= 1e-8),
        format!(
            "nilpotent |w - ||A||/2| <= {:.1e}, |eq25 - w^2| <= {:.1e}; normal |w - ||A||| <= {:.1e}, |eq25 - w^2| <= {:.1e}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let (mut max_gap, mut max_below) = (0f64, f64::NEG_INFINITY);
    for k in 0..100u64 {
        let dim = 1 + (k % 4) as usize;
        let a = generate(Family::Ginibre, dim, 5000 + k).map_err(e)?;
        let rotation = numerical_radius(&a, &RadiusConfig::default()).map_err(e)?.omega;
        let oracle = radius_oracle(&a, &OracleConfig { seed: k, ..OracleConfig::default() }).map_err(e)?.omega;
        max_gap = max_gap.max((rotation - oracle).abs());
        max_below = max_below.max(oracle - rotation);
    }
    check(
        max_gap <= 1e-5 && max_below <= 1e-8,
        format!("max |rotation - oracle| = {max_gap:.2e}, max oracle excess = {max_below:.2e}"),
    )
}

fn noncomparability() -> Outcome {
    let pair = find_noncomparability_witnesses(1000, 0).map_err(e)?;
    check(
        pair.draws <= 1000,
        format!(
            "{} draws: kittaneh02 better on {}, sqrt(sq04) better on {}",
            pair.draws, pair.k02_better.matrix_id, pair.sq04_better.matrix_id
        ),
    )
}

fn column(m: &ComplexMatrix, j: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..m.dim()).map(|i| m.get(i, j % m.dim())).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn random_psd(dim: usize, seed: u64) -> Result<HermitianPsd, String> {
    let g = generate(Family::Ginibre, dim, seed).map_err(e)?;
    HermitianPsd::new(&(&g.adjoint() * &g)).map_err(e)
}

fn lemma_suites() -> Outcome {
    // Mixed Cauchy-Schwarz: 1000 (matrix, pair) draws with 10 vector pairs each.
    let mut schwarz_tuples = 0;
    let mut schwarz_fail = 0;
    for k in 0..1000u64 {
        let dim = 1 + (k % 5) as usize;
        let a = generate(Family::Ginibre, dim, 10_000 + k).map_err(e)?;
        let v = (k % 101) as f64 / 100.0;
        let check = MixedSchwarz::new(&a, &FunctionPair::power(v).map_err(e)?).map_err(e)?;
        let vectors = generate(Family::Ginibre, dim, 20_000 + k).map_err(e)?;
        for t in 0..10 {
            let (lhs, rhs) = check.check(&column(&vectors, t), &column(&vectors, t + 1)).map_err(e)?;
            schwarz_tuples += 1;
            if lhs > rhs + 1e-8 * 1f64.max(rhs) {
                schwarz_fail += 1;
            }
        }
    }

    let mut diff_fail = 0;
    for k in 0..500u64 {
        let dim = 1 + (k % 6) as usize;
        let (s, t) = (random_psd(dim, 30_000 + k)?, random_psd(dim, 40_000 + k)?);
        let (diff, sum) = positive_diff_norm_14(&s, &t).map_err(e)?;
        if diff > sum + 1e-8 * 1f64.max(sum) {
            diff_fail += 1;
        }
    }

    // Tight cases: S = T, and S, T supported on orthogonal eigenspaces of one unitary.
    let mut tight_gap = 0f64;
    for k in 0..50u64 {
        let dim = 2 + (k % 5) as usize;
        let s = random_psd(dim, 50_000 + k)?;
        let sum = hermitian_norm(&(s.matrix() + s.matrix())).map_err(e)?;
        tight_gap = tight_gap.max((lemma_17_bound(&s, &s).map_err(e)?.value - sum).abs() / 1f64.max(sum));

        let u = herm_eig(&generate(Family::Hermitian, dim, 60_000 + k).map_err(e)?).map_err(e)?.eigenvectors;
        let weights = generate(Family::Ginibre, dim, 70_000 + k).map_err(e)?;
        let split = dim / 2;
        let diag_s: Vec<f64> = (0..dim).map(|i| if i < split { weights.get(i, 0).norm() } else { 0.0 }).collect();
        let diag_t: Vec<f64> = (0..dim).map(|i| if i >= split { weights.get(i, 1).norm() } else { 0.0 }).collect();
        let s = HermitianPsd::from_eigen(diag_s, u.clone()).map_err(e)?;
        let t = HermitianPsd::from_eigen(diag_t, u).map_err(e)?;
        let sum = hermitian_norm(&(s.matrix() + t.matrix())).map_err(e)?;
        tight_gap = tight_gap.max((lemma_17_bound(&s, &t).map_err(e)?.value - sum).abs() / 1f64.max(sum));
    }

    check(
        schwarz_tuples == 10_000 && schwarz_fail == 0 && diff_fail == 0 && tight_gap <= 1e-10,
        format!(
            "mixed Schwarz {schwarz_fail}/{schwarz_tuples} failures, difference norm {diff_fail}/500 failures, tight-case gap {tight_gap:.1e}"
        ),
    )
}

fn final_chain() -> Outcome {
    let (mut broken, mut max_gap) = (0, 0f64);
    for k in 0..300u64 {
        let dim = 1 + (k % 6) as usize;
        let a = generate(Family::Ginibre, dim, 80_000 + k).map_err(e)?;
        let ctx = BoundContext::new(&a, &EvalConfig::default()).map_err(e)?;
        if !ctx.lower_refinement_final().map_err(e)?.holds {
            broken += 1;
        }
        let (statement, proof) = ctx.final_middle_terms().map_err(e)?;
        max_gap = max_gap.max((statement - proof).abs());
    }
    check(broken == 0 && max_gap <= 1e-8, format!("{broken}/300 chains broken, middle forms differ by {max_gap:.1e}"))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("numrad-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(e)?;
    let run = |threads: &str, name: &str| -> Result<Vec<u8>, String> {
        let out_path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_numrad"))
            .args(["verify", "--trials", "50", "--seed", "7", "--format", "json", "--out"])
            .arg(&out_path)
            .env("RAYON_NUM_THREADS", threads)
            .stderr(std::process::Stdio::null())
            .env_remove("RADIUS_BOUNDS_SEED")
            .status()
            .map_err(e)?;
        if !status.success() {
            return Err(format!("verify exited with {status}"));
        }
        std::fs::read(Path::new(&out_path)).map_err(e)
    };
    let first = run("1", "a.json")?;
    let second = run("1", "b.json")?;
    let threaded = run("4", "c.json")?;
    let _ = std::fs::remove_dir_all(&dir);
    check(
        !first.is_empty() && first == second && first == threaded,
        format!(
            "{} bytes, repeat identical: {}, 1 vs 4 threads identical: {}",
            first.len(),
            first == second,
            first == threaded
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("example reproduction", example_reproduction),
        ("strict refinement on the example", strict_refinement),
        ("chain suite, 500 Ginibre per n in 2..=8", chain_suite),
        ("equality cases", equality_cases),
        ("rotation vs sampling oracle", oracle_equivalence),
        ("non-comparability witnesses", noncomparability),
        ("lemma property suites", lemma_suites),
        ("refined lower chain", final_chain),
        ("determinism across runs and threads", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {}: {name}: {detail}", k + 1);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
