//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use minorbit::cli::{self, Command, Format, RunConfig, TABLE_DIM_X};
use minorbit::matmodel::{Positivity, Prepared, MODEL_IDS};
use minorbit::realform::{derive_invariants, Catalog};
use minorbit::report::{all_pass, CheckResult};
use minorbit::sympver::{
    base_point_deviation, moment_cone_check, poisson_identities_check, verify_beta_symplectic, NumModel,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn failures(checks: &[CheckResult]) -> Vec<String> {
    checks.iter().filter(|c| !c.pass).map(|c| format!("{} ({})", c.name, c.detail)).collect()
}

fn config(command: Command, form: Option<&str>, checks: &[&str], samples: u64, seed: u64) -> RunConfig {
    RunConfig {
        command,
        form_id: form.map(str::to_string),
        check_names: checks.iter().map(|s| s.to_string()).collect(),
        samples,
        tol: None,
        seed,
        catalog_path: None,
        format: Format::Json,
    }
}

fn table() -> Outcome {
    let start = Instant::now();
    let doc = cli::run(&config(Command::Table, None, &[], 1, 0), false).expect("table runs");
    let elapsed = start.elapsed();
    let dims: Vec<u64> = doc.data.as_array().unwrap().iter().map(|r| r["dim_X"].as_u64().unwrap()).collect();
    let want: Vec<u64> = TABLE_DIM_X.iter().map(|&x| x as u64).collect();
    outcome(dims == want && doc.pass && elapsed < Duration::from_secs(1), format!("dim X = {dims:?} in {elapsed:?}"))
}

fn dimension_formulas(cat: &Catalog) -> Outcome {
    let mut bad = Vec::new();
    let mut omin = 0;
    for d in &cat.entries {
        let inv = derive_invariants(d).expect("shipped entries validate");
        let h = inv.h_vee;
        if inv.omin_split {
            omin += 1;
            if inv.dim_z != 2 * h - 2 || inv.dim_x + 4 != 2 * h {
                bad.push(d.id.clone());
            }
        }
        if d.is_split() && !inv.omin_split {
            bad.push(format!("{} (split, not O_min-split)", d.id));
        }
    }
    outcome(bad.is_empty(), format!("{omin} O_min-split entries; failures {bad:?}"))
}

fn for_models(models: &[Prepared], f: impl Fn(&Prepared) -> Vec<CheckResult>) -> Outcome {
    let bad: Vec<String> = models
        .iter()
        .flat_map(|p| failures(&f(p)).into_iter().map(move |s| format!("{}: {s}", p.model.id)))
        .collect();
    outcome(bad.is_empty(), format!("{} models; failures {bad:?}", models.len()))
}

fn exactness(models: &[Prepared]) -> Outcome {
    let bad: Vec<String> = models
        .iter()
        .flat_map(|p| {
            let mut checks = p.striple_checks();
            checks.extend(p.cayley_checks());
            let tol = if p.model.id.starts_with("su") { 1e-12 } else { 0.0 };
            checks
                .into_iter()
                .filter(|c| !c.pass || c.max_abs_deviation.is_some_and(|d| d > tol))
                .map(|c| format!("{}: {}", p.model.id, c.name))
                .collect::<Vec<_>>()
        })
        .collect();
    outcome(bad.is_empty(), format!("{} models; failures {bad:?}", models.len()))
}

fn eigen_two(models: &[Prepared]) -> Outcome {
    for_models(models, |p| {
        p.spectral_checks().into_iter().filter(|c| c.name.starts_with("eigenvalue-2")).collect()
    })
}

fn beta(models: &[Prepared]) -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for p in models.iter().filter(|p| ["sl2R", "sl3R", "su21", "sp4R"].contains(&p.model.id.as_str())) {
        let start = Instant::now();
        let m = NumModel::new(p);
        let r = verify_beta_symplectic(&m, 100, 1e-9, 42);
        let (anchor, _, _) = base_point_deviation(&m).expect("base frames are nondegenerate");
        let t = start.elapsed();
        pass &= r.pass && anchor <= 1e-12 && t < Duration::from_secs(10);
        lines.push(format!("{} dev {:.1e} anchor {:.1e} {:?}", p.model.id, r.max_abs_deviation, anchor, t));
    }
    outcome(pass && lines.len() == 4, lines.join(", "))
}

fn poisson(models: &[Prepared]) -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for p in models.iter().filter(|p| ["sl2R", "sl3R"].contains(&p.model.id.as_str())) {
        let r = poisson_identities_check(&NumModel::new(p), 50, 1e-6, 42);
        pass &= r.pass;
        lines.push(format!("{} dev {:.1e}", p.model.id, r.max_abs_deviation));
    }
    outcome(pass && lines.len() == 2, lines.join(", "))
}

fn moment(models: &[Prepared]) -> Outcome {
    let mut bad = Vec::new();
    let mut full = Vec::new();
    for p in models {
        let m = NumModel::new(p);
        let r = moment_cone_check(&m, 200, 1e-9, 42);
        if m.a_basis.len() == 1 {
            full.push(p.model.id.clone());
        }
        if !r.pass {
            bad.push(format!("{} {:?}", p.model.id, r.components));
        }
    }
    outcome(bad.is_empty() && !full.is_empty(), format!("full membership on {full:?}; failures {bad:?}"))
}

fn dichotomy(models: &[Prepared]) -> Outcome {
    for_models(models, |p| {
        let mut checks: Vec<CheckResult> =
            p.centralizer_checks().into_iter().filter(|c| c.name == "dim Cent k").collect();
        let want = !p.desc.hermitian;
        checks.push(CheckResult::boolean(
            "X = -X iff not hermitian",
            p.lambda.x_equals_minus_x == want,
            format!("X = -X: {}", p.lambda.x_equals_minus_x),
        ));
        checks
    })
}

fn determinism() -> Outcome {
    let mut bad = Vec::new();
    for form in ["sl2R", "sl3R", "su21", "sp4R"] {
        let c = config(Command::Verify, Some(form), &[], 25, 42);
        let a = cli::render(&cli::run(&c, false).expect("verify runs"), Format::Json);
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| cli::render(&cli::run(&c, false).expect("verify runs"), Format::Json));
        if a != b {
            bad.push(form);
        }
    }
    outcome(bad.is_empty(), format!("4 forms, all checks, 1 vs default workers; differing {bad:?}"))
}

fn main() {
    let cat = Catalog::shipped();
    let models: Vec<Prepared> =
        MODEL_IDS.iter().map(|id| Prepared::new(&cat, id, Positivity::Lex).expect("model prepares")).collect();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("table reproduction", Box::new(table)),
        ("dimension formulas", Box::new(|| dimension_formulas(&cat))),
        ("oracle equivalence", Box::new(|| for_models(&models, |p| vec![p.oracle_check()]))),
        ("S-triple and Cayley exactness", Box::new(|| exactness(&models))),
        ("eigenvalue-2 multiplicities of ad h", Box::new(|| eigen_two(&models))),
        ("beta is symplectic", Box::new(|| beta(&models))),
        ("Poisson and prequantization identities", Box::new(|| poisson(&models))),
        ("moment cone", Box::new(|| moment(&models))),
        ("Hermitian dichotomy", Box::new(|| dichotomy(&models))),
        ("determinism", Box::new(determinism)),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.pass;
        println!("criterion {:>2} {} {}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    let all_models_clean = models.iter().all(|p| all_pass(&p.lambda_checks()));
    println!("lambda checks on all models: {}", if all_models_clean { "pass" } else { "FAIL" });
    if !all || !all_models_clean {
        std::process::exit(1);
    }
}
