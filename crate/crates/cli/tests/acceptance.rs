//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::process::Command as Process;
use std::time::Instant;

use dirichlet_accel::accel::{
    catalan, evaluate, l4_accel, ramanujan_zeta, solve_odd_g, AccelParams, EvalConfig, Route,
};
use dirichlet_accel::closedform::{l4_closed_odd, l_closed_complex, l_closed_real, zeta_even};
use dirichlet_accel::direct::l_direct_int;
use dirichlet_accel::identities::{lemma_suite, random_function, theorem_suite, CaseOutcome};
use dirichlet_accel::numerics::{agreeing_bits, Complex, PrecisionContext};
use dirichlet_accel::periodic::{parity_split, PeriodicFunction};
use dirichlet_accel::Error;
use dirichlet_accel_cli::{compute, Command, Format, JobConfig, LerchKind, Method};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::Float;

type Check = Result<String, String>;

fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits).unwrap()
}

fn full_bits(ctx: &PrecisionContext) -> u32 {
    ctx.precision_bits() - ctx.guard_bits()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion1() -> Check {
    let start = Instant::now();
    let ctx = ctx(256);
    let mut worst = 0.0f64;
    for q in 1..=3u32 {
        let report = ramanujan_zeta(q, &AccelParams::ramanujan_default(q, &ctx), &ctx).map_err(|e| e.to_string())?;
        let oracle = l_direct_int(2 * q + 1, &PeriodicFunction::one(), 1_000_000, &ctx).map_err(|e| e.to_string())?;
        ensure(oracle.error_bound <= 1e-12, format!("oracle bound for zeta({}) above 1e-12", 2 * q + 1))?;
        ensure(
            oracle.agrees_with(&report.value, &ctx.tolerance()),
            format!("zeta({}) outside the oracle bound", 2 * q + 1),
        )?;
        let diff = Float::with_val(64, (Complex::with_val(288, &report.value - &oracle.value)).abs().real());
        worst = worst.max(diff.to_f64());
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 5.0, format!("took {elapsed:.2} s"))?;
    Ok(format!("zeta(3,5,7) within oracle bounds, max |diff| {worst:.2e}, {elapsed:.2} s"))
}

fn criterion2() -> Check {
    let ctx = ctx(256);
    let chi = PeriodicFunction::mod4_character();
    let half = AccelParams::from_alpha(ctx.pi() / 2u32, &ctx).unwrap();
    let routes = [
        catalan(&ctx).map_err(|e| e.to_string())?.value,
        l4_accel(1, &half, &ctx).map_err(|e| e.to_string())?.value,
        solve_odd_g(1, &chi, &AccelParams::balanced(4, &ctx), Route::Auto, &ctx)
            .map_err(|e| e.to_string())?
            .value,
    ];
    // 60 decimal digits
    let need = (60.0 * std::f64::consts::LOG2_10).ceil() as u32;
    let mut least = u32::MAX;
    for i in 0..3 {
        for j in i + 1..3 {
            least = least.min(agreeing_bits(&routes[i], &routes[j]));
        }
    }
    ensure(least >= need, format!("routes agree to only {least} bits"))?;
    let oracle = l_direct_int(2, &chi, 1_000_000, &ctx).map_err(|e| e.to_string())?;
    for r in &routes {
        ensure(oracle.agrees_with(r, &ctx.tolerance()), "route outside the alternating-series oracle bound")?;
    }
    Ok(format!(
        "three routes agree to {least} bits; oracle bound {:.1e}",
        oracle.error_bound.to_f64()
    ))
}

fn summarize(cases: &[CaseOutcome], groups: &[&str], per_group: usize) -> Result<(usize, f64), String> {
    for g in groups {
        let n = cases.iter().filter(|c| c.id.starts_with(&format!("{g} "))).count();
        ensure(n == per_group, format!("{g}: {n} cases, expected {per_group}"))?;
    }
    if let Some(bad) = cases.iter().find(|c| !c.passed) {
        return Err(format!("failed: {}", bad.id));
    }
    let worst = cases
        .iter()
        .map(|c| c.relative_residual - c.relative_bound)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((cases.len(), worst))
}

fn criterion3() -> Check {
    let groups = ["theorem-odd-complex", "theorem-odd-real", "theorem-even-complex", "theorem-even-real"];
    let mut total = 0;
    for bits in [128, 256] {
        let cases = theorem_suite(50, 20_241_016, &ctx(bits));
        total += summarize(&cases, &groups, 50).map_err(|e| format!("{bits} bits: {e}"))?.0;
    }
    Ok(format!("{total} theorem residuals within bounds at 128 and 256 bits"))
}

fn criterion4() -> Check {
    let groups = ["lemma1", "lemma2", "lemma3", "lemma4", "lemma5", "lemma6"];
    let mut total = 0;
    for bits in [128, 256] {
        let cases = lemma_suite(50, 20_241_016, &ctx(bits));
        total += summarize(&cases, &groups, 50).map_err(|e| format!("{bits} bits: {e}"))?.0;
    }
    Ok(format!("{total} lemma residuals within bounds at 128 and 256 bits"))
}

fn criterion5() -> Check {
    let ctx = ctx(256);
    let need = full_bits(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..100 {
        let m = rng.gen_range(1..=8usize);
        let q = rng.gen_range(0..=9u32);
        let split = parity_split(&random_function(&mut rng, m));
        let g = if q % 2 == 0 { split.even_part } else { split.odd_part };
        let a = l_closed_complex(q, &g, &ctx).map_err(|e| format!("case {case}: {e}"))?;
        let b = l_closed_real(q, &g, &ctx).map_err(|e| format!("case {case}: {e}"))?;
        ensure(agreeing_bits(&a, &b) >= need, format!("case {case}: routes differ"))?;
    }

    // independent references at twice the precision
    let hi = PrecisionContext::new(512).unwrap();
    let pi = hi.pi();
    let pi_pow = |k: u32| Float::with_val(hi.working_bits(), (&pi).pow(k));
    let zeta_refs: [(u32, u32); 6] = [(1, 6), (1, 90), (1, 945), (1, 9450), (1, 93_555), (691, 638_512_875)];
    for (i, (num, den)) in zeta_refs.into_iter().enumerate() {
        let n = i as u32 + 1;
        let want = hi.complex(pi_pow(2 * n) * num / den);
        let got = ctx.complex(zeta_even(n, &ctx));
        ensure(agreeing_bits(&got, &want) >= need, format!("zeta({})", 2 * n))?;
    }
    let l4_refs: [(u32, u32, u32); 4] = [(1, 1, 4), (3, 1, 32), (5, 5, 1536), (7, 61, 184_320)];
    for (n, (k, num, den)) in l4_refs.into_iter().enumerate() {
        let want = hi.complex(pi_pow(k) * num / den);
        let got = ctx.complex(l4_closed_odd(n as u32, &ctx));
        ensure(agreeing_bits(&got, &want) >= need, format!("L4({k})"))?;
    }
    Ok(format!("100 random (q, g) route pairs, zeta(2..12), L4(1..7) to {need} bits"))
}

fn criterion6() -> Check {
    let out = Process::new(env!("CARGO_BIN_EXE_dirichlet"))
        .args(["bench", "--target", "zeta3", "--emit", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), "bench exited with failure")?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let mut best_accel = f64::INFINITY;
    let mut direct_1e4 = None;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let total: u64 = f[2].parse().map_err(|_| "bad total_terms")?;
        let err: f64 = f[4].parse().map_err(|_| "bad abs_error")?;
        match f[0] {
            "accel" if total <= 30 => best_accel = best_accel.min(err),
            "direct" if f[1] == "10000" => direct_1e4 = Some(err),
            _ => {}
        }
    }
    let direct = direct_1e4.ok_or("no direct row at 10^4 terms")?;
    let detail = format!("accel error {best_accel:.2e} within 30 terms; direct error {direct:.2e} at 10^4 terms");
    ensure(best_accel < 1e-30, format!("{detail}: accelerated error too large"))?;
    ensure(direct > 1e-8, format!("{detail}: direct error not above 1e-8"))?;
    Ok(detail)
}

fn criterion7() -> Check {
    let ctx = ctx(256);
    let at_pi = AccelParams::from_alpha(ctx.pi(), &ctx).unwrap();
    for _ in 0..2 {
        ensure(
            matches!(ramanujan_zeta(2, &at_pi, &ctx), Err(Error::DegenerateParameters(_))),
            "ramanujan_zeta(2) at alpha = beta = pi did not raise DegenerateParameters",
        )?;
    }
    for g in [PeriodicFunction::one(), PeriodicFunction::from_integers(&[1, 2, 0]).unwrap()] {
        ensure(
            matches!(evaluate(1, &g, &EvalConfig::default(), &ctx), Err(Error::DivergentSeries(_))),
            "evaluate(1, g) with M(g) != 0 did not raise DivergentSeries",
        )?;
    }
    Ok("DegenerateParameters and DivergentSeries raised".into())
}

fn write_function(name: &str, json: &str) -> std::path::PathBuf {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn config(bits: u32, alpha: Option<&str>, terms: Option<u64>) -> JobConfig {
    JobConfig {
        precision_bits: bits,
        format: Format::Plain,
        seed: 0,
        n_terms: terms,
        alpha: alpha.map(String::from),
    }
}

fn criterion8() -> Check {
    let g = write_function("g0110.json", r#"{"period": 4, "values": [[0,0],[1,0],[1,0],[0,0]]}"#);
    let chi = write_function("chi4.json", r#"{"period": 4, "values": [[0,0],[1,0],[0,0],[-1,0]]}"#);
    let mixed = write_function(
        "mixed.json",
        r#"{"period": 5, "values": [[1,0],[2,"1/2"],[-1,0],[0,-1],["0.75",0]]}"#,
    );
    let ls = |file: &std::path::PathBuf, s, method| Command::Lseries {
        file: file.clone(),
        s,
        method,
    };
    let lerch = |kind| Command::Lerch {
        q: 1,
        r: "0.3".into(),
        kind,
    };
    let jobs: Vec<(&str, Command, Option<&str>, Option<u64>)> = vec![
        ("zeta 3", Command::Zeta { s: 3 }, None, None),
        ("zeta 5", Command::Zeta { s: 5 }, None, None),
        ("zeta 7", Command::Zeta { s: 7 }, None, None),
        ("zeta 3 --alpha 2.5", Command::Zeta { s: 3 }, Some("2.5"), None),
        ("catalan", Command::Catalan, None, None),
        ("lerch cos", lerch(LerchKind::Cos), None, None),
        ("lerch sin", lerch(LerchKind::Sin), None, None),
        ("lseries accel", ls(&g, 3, Method::Accel), None, None),
        ("lseries accel mixed", ls(&mixed, 2, Method::Accel), None, None),
        ("lseries accel --alpha", ls(&mixed, 3, Method::Accel), Some("1.3"), None),
        ("lseries closed", ls(&chi, 3, Method::Closed), None, None),
        ("lseries direct", ls(&g, 3, Method::Direct), None, Some(2000)),
        ("lseries both", ls(&chi, 2, Method::Both), None, Some(2000)),
    ];
    let mut least = u32::MAX;
    for (name, cmd, alpha, terms) in &jobs {
        let lo = compute(cmd, &config(128, *alpha, *terms)).map_err(|e| format!("{name}: {e}"))?;
        let hi = compute(cmd, &config(256, *alpha, *terms)).map_err(|e| format!("{name}: {e}"))?;
        let mut bits = agreeing_bits(&lo.value, &hi.value);
        if let (Some(a), Some(b)) = (&lo.companion, &hi.companion) {
            bits = bits.min(agreeing_bits(&a.value, &b.value));
        }
        ensure(bits >= 96, format!("{name}: 128 and 256 bits agree to only {bits} bits"))?;
        least = least.min(bits);
    }
    Ok(format!("{} compute paths agree to >= {least} bits", jobs.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check); 8] = [
        (1, "odd zeta via Ramanujan's formula against the direct oracle", criterion1),
        (2, "Catalan's constant by three routes", criterion2),
        (3, "theorem residual suite", criterion3),
        (4, "lemma residual suite", criterion4),
        (5, "closed-form cross-checks", criterion5),
        (6, "acceleration benefit for zeta(3)", criterion6),
        (7, "degeneracy handling", criterion7),
        (8, "precision doubling", criterion8),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {n}: {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n}: {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
