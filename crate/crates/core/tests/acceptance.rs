//! Acceptance suite. Runs each criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cliquetop::certificates::{certify_pi1_nontrivial, Certification, Refusal};
use cliquetop::experiments::{run_sweep, summarize, ExperimentConfig, Model, Toggles};
use cliquetop::random::derive_seed;
use cliquetop::spectral::{garland_scan, link_spectral_gap, DEFAULT_TOL, GARLAND_THRESHOLD};
use cliquetop::wedge::{scan_for_counterexamples, wedge_signature, WedgeOutcome, WedgeSignature};
use cliquetop::{
    betti_f2, density_brute, density_flow, edge_bound_check, homology_integral, sample_knp, Complex2, Density, Edge,
    Rational, RootSet, Seed,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn all_pairs(n: u32) -> Vec<Edge> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| [u, v])).collect()
}

fn cycle(labels: &[u32]) -> Complex2 {
    let k = labels.len();
    let edges: Vec<Edge> = (0..k).map(|i| [labels[i], labels[(i + 1) % k]]).collect();
    Complex2::new(k as u32, &edges, &[]).unwrap()
}

fn rp2_six() -> Complex2 {
    let tris = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 5],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 6],
        [3, 4, 6],
        [4, 5, 6],
    ];
    Complex2::new(6, &all_pairs(6), &tris).unwrap()
}

fn density_oracle() -> Outcome {
    let mut mismatches = 0;
    let mut checked = 0;
    for i in 0..200u64 {
        let n = 4 + (i % 11) as u32;
        let p = [0.2, 0.4, 0.6][(i % 3) as usize];
        let x = sample_knp(n, p, derive_seed(Seed(1001), 1, i)).unwrap();
        for w in [0, 3] {
            let roots = RootSet::first(w);
            let a = density_flow(&x, &roots).unwrap().value;
            let b = density_brute(&x, &roots).unwrap().value;
            checked += 1;
            if a != b {
                mismatches += 1;
                eprintln!("density mismatch: n={n} p={p} w={w} flow={a} brute={b}");
            }
        }
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!("{checked} comparisons, {mismatches} mismatches"),
    }
}

fn wedge_shadow() -> Outcome {
    let n = 25u32;
    let p = (n as f64).powf(-0.45);
    let summary = scan_for_counterexamples(n, p, 500, Seed(2002)).unwrap();
    for r in &summary.reports {
        eprintln!("{r}");
    }
    Outcome {
        pass: summary.reports.is_empty() && summary.components_checked > 0,
        detail: format!(
            "{} components checked, {} skipped, {} inconsistent",
            summary.components_checked,
            summary.components_skipped,
            summary.reports.len()
        ),
    }
}

fn known_spaces() -> Outcome {
    let sig = |a, b, s| WedgeOutcome::Consistent(WedgeSignature { a, b, s });
    let tetra = Complex2::clique_two_skeleton(4, &all_pairs(4)).unwrap();
    let rp2 = rp2_six();
    let c6 = cycle(&[1, 2, 3, 4, 5, 6]);
    let got = [
        wedge_signature(&tetra).unwrap(),
        wedge_signature(&rp2).unwrap(),
        wedge_signature(&c6).unwrap(),
    ];
    let torsion = homology_integral(&rp2).torsion_string();
    let pass = got == [sig(0, 0, 1), sig(0, 1, 0), sig(1, 0, 0)] && torsion == "2";
    Outcome {
        pass,
        detail: format!(
            "tetra {}, rp2 {} torsion {{{torsion}}}, c6 {}",
            got[0].signature(),
            got[1].signature(),
            got[2].signature()
        ),
    }
}

fn edge_bound() -> Outcome {
    let mut checked = [0usize; 2];
    let mut violations = 0;
    let mut i = 0u64;
    while checked.iter().any(|&c| c < 300) && i < 20_000 {
        let n = 6 + (i % 20) as u32;
        let p = (n as f64).powf(-[0.4, 0.5, 0.6, 0.8][(i % 4) as usize]);
        let x = sample_knp(n, p, derive_seed(Seed(4004), 4, i)).unwrap();
        i += 1;
        for comp in x.connected_components() {
            for (slot, w) in [0u32, 3].into_iter().enumerate() {
                if comp.vertex_count() < w {
                    continue;
                }
                let roots = RootSet::first(w);
                if !density_flow(&comp, &roots).unwrap().value.exceeds_one_third() {
                    continue;
                }
                let bound = edge_bound_check(&comp, &roots).unwrap();
                checked[slot] += 1;
                if !bound.holds {
                    violations += 1;
                    eprintln!("edge bound violated: w={w} f1={} rhs={}", bound.lhs, bound.rhs);
                }
            }
        }
    }
    Outcome {
        pass: violations == 0 && checked.iter().all(|&c| c >= 300),
        detail: format!(
            "{} complexes with w=0, {} with w=3, {violations} violations",
            checked[0], checked[1]
        ),
    }
}

fn certificate_pipeline() -> Outcome {
    let c6 = cycle(&[1, 4, 2, 5, 3, 6]);
    let issued = match certify_pi1_nontrivial(&c6).unwrap() {
        Certification::Certified(cert) => {
            cert.density.value == Density::finite(1, 2) && cert.verify(&c6).is_ok()
        }
        Certification::Refused(_) => false,
    };
    let k7 = Complex2::clique_two_skeleton(7, &all_pairs(7)).unwrap();
    let tetra = Complex2::clique_two_skeleton(4, &all_pairs(4)).unwrap();
    let reason = |x: &Complex2| match certify_pi1_nontrivial(x).unwrap() {
        Certification::Refused(r) => Some(r.reason()),
        Certification::Certified(_) => None,
    };
    let (r7, rt) = (reason(&k7), reason(&tetra));
    let pass = issued
        && r7 == Some("density-at-most-one-third")
        && rt == Some(Refusal::NoRootedSixCycle.reason())
        && r7 != rt;
    Outcome {
        pass,
        detail: format!("c6 issued {issued}, k7 refused {r7:?}, tetra refused {rt:?}"),
    }
}

fn euler_and_collapse() -> Outcome {
    let mut violations = 0;
    for i in 0..1000u64 {
        let n = 1 + (i % 30) as u32;
        let p = [0.1, 0.2, 0.3, 0.5, 0.7][(i % 5) as usize];
        let x = sample_knp(n, p, derive_seed(Seed(6006), 6, i)).unwrap();
        let b = betti_f2(&x);
        if b[0] as i64 - b[1] as i64 + b[2] as i64 != x.euler_characteristic() {
            violations += 1;
            eprintln!("euler-poincare fails: n={n} p={p} betti {b:?}");
        }
        if betti_f2(&x.collapse_free_faces()) != b {
            violations += 1;
            eprintln!("collapse changed betti numbers: n={n} p={p}");
        }
    }
    Outcome {
        pass: violations == 0,
        detail: format!("1000 complexes, {violations} violations"),
    }
}

fn sweep(n: u32, alphas: &[(i64, i64)], trials: usize, homology: bool) -> Vec<cliquetop::experiments::SummaryRow> {
    let config = ExperimentConfig {
        n,
        alphas: alphas.iter().map(|&(a, b)| Rational::new(a, b)).collect(),
        ps: Vec::new(),
        trials,
        seed: 7007,
        model: Model::Knp,
        toggles: Toggles {
            homology,
            ..Default::default()
        },
        out: None,
    };
    summarize(&run_sweep(&config).unwrap()).unwrap()
}

fn threshold_transition() -> Outcome {
    let alphas: Vec<(i64, i64)> = (6..=12).map(|k| (k, 20)).collect();
    let rows = sweep(40, &alphas, 200, true);
    let b1_zero = |i: usize| rows[i].b1_zero.as_rational().unwrap();
    let drop = b1_zero(0) - b1_zero(rows.len() - 1);

    let conn = sweep(100, &[(1, 2), (6, 5)], 100, false);
    let connected = |i: usize| conn[i].connected.as_rational().unwrap();
    let conn_drop = connected(0) - connected(1);

    let table: Vec<String> = rows.iter().map(|r| format!("{}:{}", r.alpha.as_deref().unwrap(), r.b1_zero)).collect();
    Outcome {
        pass: drop >= Rational::new(3, 10) && conn_drop >= Rational::new(1, 2),
        detail: format!(
            "n=40 b1=0 fractions [{}], drop {drop}; n=100 connected {} vs {}",
            table.join(" "),
            conn[0].connected,
            conn[1].connected
        ),
    }
}

fn spectral() -> Outcome {
    let k10 = Complex2::clique_two_skeleton(10, &all_pairs(10)).unwrap();
    let worst = k10
        .vertices()
        .map(|v| (link_spectral_gap(&k10, v, DEFAULT_TOL).unwrap() - 9.0 / 8.0).abs())
        .fold(0.0f64, f64::max);
    let c6 = garland_scan(&cycle(&[1, 2, 3, 4, 5, 6]), GARLAND_THRESHOLD);
    Outcome {
        pass: worst <= 1e-9 && !c6.pass,
        detail: format!("K10 max |gap - 9/8| = {worst:.3e}, C6 scan pass {}", c6.pass),
    }
}

fn performance() -> Outcome {
    let x = sample_knp(2000, 0.01, Seed(9009)).unwrap();
    let start = Instant::now();
    let report = density_flow(&x, &RootSet::none()).unwrap();
    let took = start.elapsed();
    Outcome {
        pass: took < Duration::from_secs(10),
        detail: format!("f1 = {}, e01 = {}, density_flow took {took:.2?}", x.edges().len(), report.value),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("1 density oracle equivalence", density_oracle, Some(Duration::from_secs(60))),
        ("2 wedge consistency at n=25", wedge_shadow, Some(Duration::from_secs(300))),
        ("3 known spaces", known_spaces, None),
        ("4 edge bound", edge_bound, None),
        ("5 certificate pipeline", certificate_pipeline, None),
        ("6 euler-poincare and collapse", euler_and_collapse, Some(Duration::from_secs(120))),
        ("7 threshold transitions", threshold_transition, Some(Duration::from_secs(600))),
        ("8 spectral gaps", spectral, None),
        ("9 density_flow at n=2000", performance, None),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if let Some(limit) = budget {
            if took > limit {
                outcome.pass = false;
                outcome.detail.push_str(&format!(", over budget {limit:?}"));
            }
        }
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{tag} {name}: {} ({took:.2?})", outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
