//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line per
//! criterion with the measured numbers, and exits non-zero if any fails.
//!
//! Pass criterion numbers as arguments to run a subset:
//! `cargo test -p attachlab --test acceptance -- 3 7`.
//!
//! A JSON summary is written to `$CARGO_TARGET_TMPDIR/acceptance.json`.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use attachlab::analysis::{
    beta_of_m, check_conditions, degree_sum_trajectory, edge_absence_freq, gamma_of_m,
    ConstantSet,
};
use attachlab::experiments::{component_count_check, degree_powerlaw_check};
use attachlab::hamilton::{end_set, exact_hamiltonian, posa_search, PathState};
use attachlab::lowerbound::{build_h, lonely_stats, no_pm_certificate, sweet_cherries};
use attachlab::matching::{
    check_matching_expansion, max_matching, success_rate, two_round_matching_sim, SimStatus,
};
use attachlab::rng::derive_seed;
use attachlab::{generate, neighbourhood, GenParams, Model, Vertex};
use common::*;
use rand::Rng;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const MASTER: u64 = 0x5eed_acce_97a1;

#[derive(Serialize)]
struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
    seconds: f64,
}

type Check = fn() -> (bool, String);

fn main() -> ExitCode {
    let criteria: [(u32, &str, Check); 11] = [
        (1, "expansion constant sets satisfy every condition", c1_constants),
        (2, "root solvers meet the published bounds", c2_roots),
        (3, "success-fraction inequalities", c3_success),
        (4, "oracle equivalence and expansion lemmas", c4_oracles),
        (5, "generator distributions", c5_distributions),
        (6, "old-vertex degree-sum trajectory", c6_trajectory),
        (7, "lonely-vertex statistics and H structure", c7_lonely),
        (8, "no perfect matching for m = 2", c8_no_pm),
        (9, "component count for m = 1", c9_components),
        (10, "degree power law", c10_powerlaw),
        (11, "two-round matching simulator smoke run", c11_simulator),
    ];
    let wanted: Vec<u32> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut outcomes = Vec::new();
    for (id, title, check) in criteria {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let (pass, detail) = check();
        let seconds = start.elapsed().as_secs_f64();
        println!(
            "criterion {id:>2} [{}] {title} ({seconds:.1}s)\n    {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
        outcomes.push(Outcome {
            id,
            title,
            pass,
            detail,
            seconds,
        });
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!(
        "\nacceptance: {} passed, {} failed{}",
        outcomes.len() - failed.len(),
        failed.len(),
        if failed.is_empty() { String::new() } else { format!(" {failed:?}") }
    );
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance.json");
    if let Ok(json) = serde_json::to_string_pretty(&outcomes) {
        let _ = std::fs::write(path, json);
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed < limit, format!("runtime {:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()))
}

fn c1_constants() -> (bool, String) {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for label in ['a', 'b', 'c', 'd'] {
        let set = ConstantSet::published(label).expect("published set");
        let report = check_conditions(&set).expect("valid set");
        pass &= report.overall;
        let failing: Vec<String> = report
            .failing()
            .map(|c| format!("{}: {:.10} {} {:.10}", c.name, c.lhs, c.relation, c.rhs))
            .collect();
        parts.push(if failing.is_empty() {
            format!("({label}) ok")
        } else {
            format!("({label}) fails {}", failing.join("; "))
        });
    }
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(1));
    (pass && fast, format!("{}; {rt}", parts.join(", ")))
}

fn c2_roots() -> (bool, String) {
    let start = Instant::now();
    let cases = [
        ("gamma", 120, 0.06238),
        ("gamma", 500, 0.019675),
        ("beta", 2900, 0.014414),
        ("beta", 14000, 0.003760),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (which, m, bound) in cases {
        let (value, closed) = if which == "gamma" {
            (gamma_of_m(m).unwrap(), (2.0 * 2f64.ln() / m as f64).sqrt())
        } else {
            (beta_of_m(m).unwrap(), (4.0 * 3f64.ln() / m as f64).sqrt())
        };
        let ok = value <= bound && bound - value <= 5e-4 && value <= closed;
        pass &= ok;
        parts.push(format!("{which}({m})={value:.7} (bound {bound}, closed form {closed:.5})"));
    }
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(1));
    (pass && fast, format!("{}; {rt}", parts.join(", ")))
}

fn c3_success() -> (bool, String) {
    let g120 = gamma_of_m(120).unwrap();
    let g500 = gamma_of_m(500).unwrap();
    let b2900 = beta_of_m(2900).unwrap();
    let b14000 = beta_of_m(14000).unwrap();
    let cases = [
        (0.0538, 39, false, g120 / 2.0, "gamma(120)/2"),
        (0.032003, 314, false, 2.0 * b2900, "2 beta(2900)"),
        (0.016801, 260, true, g500 / 2.0, "gamma(500)/2"),
        (0.008874, 1500, true, 2.0 * b14000, "2 beta(14000)"),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (alpha, m2, halved, target, label) in cases {
        let s = success_rate(alpha, m2, halved).unwrap();
        pass &= s > target;
        parts.push(format!("{s:.6} > {label}={target:.6}"));
    }
    (pass, parts.join(", "))
}

fn c4_oracles() -> (bool, String) {
    let start = Instant::now();
    let mut r = rng(derive_seed(MASTER, &[4]));
    let mut nu_bad = 0;
    for _ in 0..500 {
        let n = r.gen_range(1..=10);
        let g = gnp(n, r.gen_range(0.1..0.7), &mut r);
        nu_bad += (max_matching(&g).size() != brute_nu(&g)) as usize;
    }
    let (mut posa_checked, mut false_cycles, mut found) = (0, 0, 0);
    let mut i = 0u64;
    while posa_checked < 200 {
        i += 1;
        let n = r.gen_range(3..=14);
        let g = gnp(n, r.gen_range(0.2..0.7), &mut r);
        if !g.is_connected() {
            continue;
        }
        posa_checked += 1;
        let truth = exact_hamiltonian(&g).unwrap();
        let out = posa_search(&g, 20_000, i).unwrap();
        if let Some(c) = out.cycle {
            found += 1;
            false_cycles += (!truth || !c.is_valid_for(&g)) as usize;
        }
    }
    let (mut m_checked, mut m_bad, mut c_checked, mut c_bad) = (0, 0, 0, 0);
    for _ in 0..300 {
        let n = r.gen_range(3..=12);
        let g = gnp(n, r.gen_range(0.1..0.5), &mut r);
        let rep = check_matching_expansion(&g);
        m_checked += rep.checked;
        m_bad += rep.counterexample.is_some() as usize;
        for p in longest_paths(&g, 4) {
            for path in [p.clone(), p.iter().rev().copied().collect::<Vec<Vertex>>()] {
                let ends = end_set(&g, &PathState::new(path));
                c_checked += 1;
                c_bad += (neighbourhood(&g, &ends).len() >= 2 * ends.len()) as usize;
            }
        }
    }
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(300));
    let pass = nu_bad == 0 && false_cycles == 0 && m_bad == 0 && c_bad == 0 && fast;
    (
        pass,
        format!(
            "matching mismatches {nu_bad}/500; false cycles {false_cycles}/{posa_checked} \
             ({found} cycles found); matching-expansion counterexamples {m_bad} over {m_checked} \
             sets; END-expansion counterexamples {c_bad} over {c_checked} paths; {rt}"
        ),
    )
}

fn c5_distributions() -> (bool, String) {
    let start = Instant::now();
    let exact = exact_pa1(3);
    let mut counts: HashMap<Vec<Vertex>, u64> = HashMap::new();
    let draws = 1_000_000u64;
    for i in 0..draws {
        let g = generate(&GenParams::new(Model::Preferential, 3, 1, derive_seed(MASTER, &[5, i]))).unwrap();
        *counts.entry(g.targets().to_vec()).or_default() += 1;
    }
    let unexpected = counts.keys().filter(|k| !exact.contains_key(*k)).count();
    let chi2: f64 = exact
        .iter()
        .map(|(k, p)| {
            let e = p * draws as f64;
            let o = counts.get(k).copied().unwrap_or(0) as f64;
            (o - e).powi(2) / e
        })
        .sum();
    let df = exact.len() as f64 - 1.0;
    let p_value = ChiSquared::new(df).unwrap().sf(chi2);
    let chi_ok = unexpected == 0 && p_value > 1e-3;

    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (v, w, m) in [(20u32, 5u32, 3u32), (50, 10, 2), (9, 4, 1), (100, 60, 4)] {
        let set: Vec<Vertex> = (1..=w).collect();
        let p = GenParams::new(Model::Uniform, v + 10, m, derive_seed(MASTER, &[55, v as u64]));
        let trials = 20_000;
        let rep = edge_absence_freq(&p, v, &set, 1, trials).unwrap();
        let sigma = (rep.exact_uniform * (1.0 - rep.exact_uniform) / trials as f64).sqrt();
        let z = (rep.frequency - rep.exact_uniform).abs() / sigma;
        worst = worst.max(z);
        parts.push(format!("v={v} |W|={w} m={m}: {:.4} vs {:.4}", rep.frequency, rep.exact_uniform));
    }
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(120));
    (
        chi_ok && worst <= 4.0 && fast,
        format!(
            "PA n=3 chi2={chi2:.3} df={df} p={p_value:.4}; UA absence {} (max {worst:.2} sigma); {rt}",
            parts.join(", ")
        ),
    )
}

fn c6_trajectory() -> (bool, String) {
    let start = Instant::now();
    let ratios: Vec<f64> = (0..30u64)
        .map(|i| {
            let g = generate(&GenParams::new(Model::Preferential, 100_000, 2, derive_seed(MASTER, &[6, i]))).unwrap();
            degree_sum_trajectory(&g, 0.25).unwrap().final_ratio()
        })
        .collect();
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(180));
    (
        (0.97..=1.03).contains(&mean) && fast,
        format!("mean Y_n/(2mn sqrt c) = {mean:.4} over 30 graphs; {rt}"),
    )
}

fn c7_lonely() -> (bool, String) {
    let start = Instant::now();
    let n = 100_000u32;
    let expected = [0.1875, 0.625 / 3.0, 0.03125, 0.21875];
    let mut sums = [0.0; 4];
    let (mut iso_bad, mut cherry_bad, mut cherries) = (0, 0, 0);
    for i in 0..30u64 {
        let g = generate(&GenParams::new(Model::Preferential, n, 2, derive_seed(MASTER, &[7, i]))).unwrap();
        let s = lonely_stats(&g, 0.25).unwrap();
        for (acc, x) in sums.iter_mut().zip([s.a_n, s.b_n, s.c_n, s.d_n]) {
            *acc += x as f64 / n as f64 / 30.0;
        }
        let h = build_h(&g, 0.25).unwrap();
        iso_bad += (h.isolated() != s.a_n + s.c_n) as usize;
        let (labels, count) = h.components();
        let mut size = vec![0usize; count];
        for &l in &labels[1..] {
            if l != usize::MAX {
                size[l] += 1;
            }
        }
        for w in sweet_cherries(&g).unwrap().witnesses {
            cherries += 1;
            let l = labels[w.v4 as usize];
            let ok = l != usize::MAX
                && size[l] == 3
                && labels[w.v2 as usize] == l
                && labels[w.v3 as usize] == l;
            cherry_bad += !ok as usize;
        }
    }
    let close = sums
        .iter()
        .zip(expected)
        .all(|(got, want)| (got - want).abs() <= 0.1 * want);
    let (fast, rt) = within(start.elapsed(), Duration::from_secs(300));
    (
        close && iso_bad == 0 && cherry_bad == 0 && fast,
        format!(
            "A/n={:.5} B/n={:.5} C/n={:.5} D/n={:.5} (targets {:?}); isolated(H) mismatches {iso_bad}; \
             bad cherries {cherry_bad}/{cherries}; {rt}",
            sums[0], sums[1], sums[2], sums[3], expected
        ),
    )
}

fn c8_no_pm() -> (bool, String) {
    let mut witnesses = 0;
    let mut deficiency = 0;
    for i in 0..30u64 {
        let g = generate(&GenParams::new(Model::Preferential, 200_000, 2, derive_seed(MASTER, &[8, i]))).unwrap();
        if let Some(w) = no_pm_certificate(&g, 0.25).unwrap() {
            witnesses += 1;
            deficiency += w.deficiency;
        }
    }
    let (mut small, mut disagreements) = (0, 0);
    for i in 0..100u64 {
        let g = generate(&GenParams::new(Model::Preferential, 2000, 2, derive_seed(MASTER, &[88, i]))).unwrap();
        if let Some(w) = no_pm_certificate(&g, 0.25).unwrap() {
            small += 1;
            disagreements += (w.matching_agrees != Some(true)) as usize;
        }
    }
    let rate = witnesses as f64 / 30.0;
    (
        rate >= 0.5 && disagreements == 0,
        format!(
            "n=200000: witness in {witnesses}/30 trials (rate {rate:.2}, mean deficiency {:.1}); \
             n=2000: {small}/100 witnesses, {disagreements} disagreements with exact matching",
            deficiency as f64 / witnesses.max(1) as f64
        ),
    )
}

fn c9_components() -> (bool, String) {
    let s = component_count_check(10_000, 100, derive_seed(MASTER, &[9])).unwrap();
    let rel = (s.mean - s.half_log_n).abs() / s.half_log_n;
    let se = s.std_dev / (s.trials as f64).sqrt();
    let z = (s.mean - s.exact_expected).abs() / se;
    // the exact expectation itself sits this far from (1/2) ln n at this n
    let bias = (s.exact_expected - s.half_log_n) / s.half_log_n;
    (
        rel <= 0.15 && z <= 3.0,
        format!(
            "mean {:.3} (sd {:.3}); (1/2) ln n = {:.3}, off by {:.1}% (limit 15%); \
             exact sum {:.4}, off by {z:.2} standard errors (limit 3); note the exact \
             expectation is itself {:.1}% above (1/2) ln n, so the 15% check only holds for low samples",
            s.mean,
            s.std_dev,
            s.half_log_n,
            100.0 * rel,
            s.exact_expected,
            100.0 * bias
        ),
    )
}

fn c10_powerlaw() -> (bool, String) {
    let fit = degree_powerlaw_check(1_000_000, 3, 1, derive_seed(MASTER, &[10])).unwrap();
    (
        !fit.degenerate && (-2.3..=-1.7).contains(&fit.slope),
        format!(
            "ccdf slope {:.3} over k in [5, 100] (r^2 {:.4}, {} points, max degree {})",
            fit.slope, fit.r_squared, fit.points, fit.max_degree
        ),
    )
}

fn c11_simulator() -> (bool, String) {
    let trials = 50u64;
    let mut perfect = 0;
    let mut steps = 0;
    for i in 0..trials {
        let p = GenParams::coloured(Model::Uniform, 2000, 120, 39, derive_seed(MASTER, &[11, i]));
        let t = two_round_matching_sim(&generate(&p).unwrap()).unwrap();
        perfect += (t.status == SimStatus::Perfect) as u32;
        steps += t.steps.len();
    }
    let rate = perfect as f64 / trials as f64;
    (
        rate >= 0.95,
        format!(
            "theorem-scale thresholds are asymptotic and not checked here; covered by criteria 1-4 \
             plus this run: n=2000, m1=120, m2=39 perfect in {perfect}/{trials} (rate {rate:.2}, \
             {steps} augmentation steps in total)"
        ),
    )
}
