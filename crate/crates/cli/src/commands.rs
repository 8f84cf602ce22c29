//! The six experiments. Each returns `Ok(true)` when its checks hold.

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use smoothdisc::discrepancy::*;
use smoothdisc::frozen;
use smoothdisc::lattice::*;
use smoothdisc::numbers::badness::scan_envelope;
use smoothdisc::numbers::*;
use smoothdisc::weights::WeightSystem;
use smoothdisc::Error;

use crate::config::{usage, RunConfig};
use crate::output::{plot, OutDir, Series};

fn parse_alphas(spec: &str) -> Result<Vec<RealAlgebraic>> {
    spec.split('+').map(|s| s.trim().parse::<RealAlgebraic>().map_err(anyhow::Error::from)).collect()
}

fn lattice_of(cfg: &RunConfig) -> Result<Lattice> {
    match (&cfg.alpha, &cfg.lattice) {
        (Some(_), Some(_)) => Err(usage("give either --alpha or --lattice, not both")),
        (Some(a), None) => Ok(dani_lattice(&parse_alphas(a)?)?),
        (None, Some(l)) => Ok(parse_lattice(l)?),
        (None, None) => Err(usage("one of --alpha or --lattice is required")),
    }
}

fn dani_alphas(lat: &Lattice) -> Option<&[RealAlgebraic]> {
    match lat.provenance() {
        Provenance::Dani(a) => Some(a),
        _ => None,
    }
}

fn weight_of(cfg: &RunConfig, k: usize) -> Result<WeightSystem> {
    Ok(match &cfg.weight {
        Some(spec) => WeightSystem::parse(spec, k)?,
        None => WeightSystem::standard(k),
    })
}

/// `fit:M` scans `Dani(alpha)` up to height `M`; anything else is a literal.
fn phi_of(spec: &str, lat: &Lattice) -> Result<(PhiFunction, Option<PhiFit>)> {
    if let Some(m) = spec.strip_prefix("fit:") {
        let bound: u64 = m.trim().parse().map_err(|_| usage(format!("`{spec}`: expected fit:M")))?;
        let alpha = dani_alphas(lat).ok_or_else(|| usage("fit:M needs a Dani lattice (use --alpha)"))?;
        let scan = mult_badness(alpha, bound, 0.0)?;
        let fit = fit_phi(&scan.running_minima)?;
        return Ok((fit.phi, Some(fit)));
    }
    Ok((spec.parse()?, None))
}

fn phi_at_l(phi: &PhiFunction, n: f64) -> Option<f64> {
    phi.invert_l(n).ok().map(|l| phi.eval(l))
}

fn fmt_vec(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

#[derive(Serialize)]
struct SupRow {
    n: f64,
    depth: u32,
    sup: f64,
    phi_l: Option<f64>,
    ratio: Option<f64>,
    argmax_rho: String,
    argmax_gamma: String,
    method: String,
}

pub fn discrepancy(cfg: &RunConfig) -> Result<bool> {
    let lat = lattice_of(cfg)?;
    let d = lat.k() - 1;
    let w = weight_of(cfg, lat.k())?;
    let default_phi = if dani_alphas(&lat).is_some() { format!("fit:{}", scan_envelope(d).min(100_000)) } else { "const:1".into() };
    let (phi, fit) = phi_of(cfg.phi.as_deref().unwrap_or(&default_phi), &lat)?;
    let mut rows = Vec::new();
    for n in cfg.schedule.values() {
        let mut grid = ScanGrid::new(cfg.depth.unwrap_or_else(|| ScanGrid::depth_for(n, d)));
        grid.gamma_samples = cfg.gamma_samples;
        grid.seed = cfg.seed;
        grid.tol = cfg.tol;
        let est = sup_discrepancy(&lat, &w, n, &grid)?;
        let phi_l = phi_at_l(&phi, n);
        rows.push(SupRow {
            n,
            depth: grid.depth,
            sup: est.estimate,
            phi_l,
            ratio: phi_l.map(|p| est.estimate / p),
            argmax_rho: fmt_vec(&est.argmax.bx.rho),
            argmax_gamma: fmt_vec(&est.argmax.bx.gamma),
            method: est.argmax.result.method.to_string(),
        });
    }
    let out = OutDir::create(&cfg.out)?;
    out.csv("discrepancy.csv", &["n", "depth", "sup", "phi_l", "ratio", "argmax_rho", "argmax_gamma", "method"], &rows)?;
    plot(
        &out.path("discrepancy.svg"),
        &format!("sup discrepancy, {}", lat.label()),
        "N",
        "value",
        &[
            Series { label: "sup |D|".into(), points: rows.iter().map(|r| (r.n, r.sup)).collect() },
            Series { label: "phi(L(N))".into(), points: rows.iter().filter_map(|r| r.phi_l.map(|p| (r.n, p))).collect() },
        ],
        true,
    )?;
    out.metadata(
        cfg,
        &[("GOLDEN_SUP_BOUND", frozen::GOLDEN_SUP_BOUND), ("CUBIC7_SUP_BOUND", frozen::CUBIC7_SUP_BOUND), ("GOLDEN_PHI", frozen::GOLDEN_PHI)],
        json!({ "lattice": lat.label(), "weight": w.spec_string(), "phi": phi.to_string(), "phi_fit": fit }),
    )?;
    let max = rows.iter().map(|r| r.sup).fold(0.0, f64::max);
    println!("{} horizons, max sup {max:.6}, phi = {phi}", rows.len());
    Ok(true)
}

#[derive(Serialize)]
struct PoissonRow {
    index: usize,
    lattice: String,
    rho: String,
    n: f64,
    direct: f64,
    dual: f64,
    tail_bound: f64,
    excess: f64,
    ok: bool,
}

pub fn poisson_check(cfg: &RunConfig) -> Result<bool> {
    let suite: Vec<Lattice> = if cfg.alpha.is_some() || cfg.lattice.is_some() {
        vec![lattice_of(cfg)?]
    } else {
        vec![
            dani_lattice(&[RealAlgebraic::golden()])?,
            dani_lattice(&[RealAlgebraic::sqrt(2)?])?,
            dani_lattice(&[RealAlgebraic::cubic7(), "cubic:7^2".parse()?])?,
        ]
    };
    let weights = suite.iter().map(|l| weight_of(cfg, l.k())).collect::<Result<Vec<_>>>()?;
    let ns = cfg.schedule.values();
    let (lo, hi) = (ns[0].log10(), ns[ns.len() - 1].log10());
    let depth = cfg.depth.unwrap_or(3);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.count);
    for index in 0..cfg.count {
        let which = rng.gen_range(0..suite.len());
        let lat = &suite[which];
        let rho: Vec<f64> = (0..lat.k() - 1).map(|_| 0.499 * 0.5f64.powi(rng.gen_range(0..=depth) as i32)).collect();
        let n = if hi > lo { 10f64.powf(rng.gen_range(lo..=hi)).round() } else { ns[0] };
        let bx = TestBox::centered(rho.clone())?;
        let direct = direct_discrepancy(lat, &weights[which], &bx, n)?;
        let dual = dual_discrepancy(lat, &weights[which], &bx, n, cfg.tol)?;
        let dual_value = if cfg.inject_fault { -dual.value } else { dual.value };
        let excess = (direct.value - dual_value).abs() - dual.tail_bound - 1e-8;
        rows.push(PoissonRow {
            index,
            lattice: lat.label(),
            rho: fmt_vec(&rho),
            n,
            direct: direct.value,
            dual: dual_value,
            tail_bound: dual.tail_bound,
            excess,
            ok: excess <= 0.0,
        });
    }
    let out = OutDir::create(&cfg.out)?;
    out.csv("poisson.csv", &["index", "lattice", "rho", "n", "direct", "dual", "tail_bound", "excess", "ok"], &rows)?;
    let failures = rows.iter().filter(|r| !r.ok).count();
    out.metadata(cfg, &[], json!({ "configurations": rows.len(), "failures": failures }))?;
    if let Some(first) = rows.iter().find(|r| !r.ok) {
        eprintln!("first failing configuration: {}", serde_json::to_string(first)?);
        println!("FAIL: {failures}/{} configurations outside tail + 1e-8", rows.len());
        return Ok(false);
    }
    println!("PASS: {} configurations within tail + 1e-8", rows.len());
    Ok(true)
}

#[derive(Serialize)]
struct WitnessRow {
    j: usize,
    height: f64,
    n: f64,
    rho: String,
    lower_bound: f64,
    measured: f64,
    tail_bound: f64,
    holds: bool,
}

pub fn witness(cfg: &RunConfig) -> Result<bool> {
    let lat = lattice_of(cfg)?;
    let alpha = dani_alphas(&lat).ok_or_else(|| usage("witness needs a Dani lattice (use --alpha)"))?.to_vec();
    let w = weight_of(cfg, lat.k())?;
    let (phi, _) = phi_of(cfg.phi.as_deref().unwrap_or("log"), &lat)?;
    let candidates: Vec<DualVector> = if alpha.len() == 1 {
        convergent_duals(&alpha[0], cfg.max_height.unwrap_or(1_000_000_000) as f64)?
    } else {
        let bound = cfg.max_height.unwrap_or(scan_envelope(alpha.len()));
        mult_badness(&alpha, bound, 0.0)?.running_minima.iter().map(DualVector::from).collect()
    };
    let mut rows = Vec::new();
    let (mut rejected, mut skipped) = (0, 0);
    for v in &candidates {
        match lower_bound_witness(&lat, &w, v, &phi, cfg.tol) {
            Ok(wit) => rows.push(WitnessRow {
                j: rows.len() + 1,
                height: wit.height,
                n: wit.horizon,
                rho: fmt_vec(&wit.bx.rho),
                lower_bound: wit.lower_bound,
                measured: wit.measured,
                tail_bound: wit.tail_bound,
                holds: wit.holds,
            }),
            Err(Error::WitnessRejected(_)) => rejected += 1,
            Err(Error::WitnessTooSmall(msg)) => {
                eprintln!("skipped H = {}: {msg}", v.height());
                skipped += 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
    let out = OutDir::create(&cfg.out)?;
    out.csv("witness.csv", &["j", "height", "n", "rho", "lower_bound", "measured", "tail_bound", "holds"], &rows)?;
    plot(
        &out.path("witness.svg"),
        &format!("lower-bound witnesses, {}", lat.label()),
        "N",
        "value",
        &[
            Series { label: "measured".into(), points: rows.iter().map(|r| (r.n, r.measured)).collect() },
            Series { label: "vol c^k".into(), points: rows.iter().map(|r| (r.n, r.lower_bound)).collect() },
        ],
        true,
    )?;
    let violations = rows.iter().filter(|r| !r.holds).count();
    out.metadata(
        cfg,
        &[],
        json!({ "phi": phi.to_string(), "candidates": candidates.len(), "accepted": rows.len(),
                "rejected": rejected, "too_small": skipped, "violations": violations }),
    )?;
    println!("{} accepted witnesses ({rejected} rejected, {skipped} too small), {violations} violations", rows.len());
    Ok(violations == 0)
}

#[derive(Serialize)]
struct LittlewoodRow {
    n: u64,
    dist_alpha: f64,
    dist_beta: f64,
    product: f64,
    n_product: f64,
    n_log_n_product: f64,
}

pub fn littlewood(cfg: &RunConfig) -> Result<bool> {
    let spec = cfg.alpha.as_deref().ok_or_else(|| usage("littlewood needs --alpha a+b"))?;
    let alpha = parse_alphas(spec)?;
    if alpha.len() != 2 {
        return Err(usage(format!("littlewood needs exactly two numbers, got {}", alpha.len())));
    }
    let t = littlewood_trajectory(&alpha[0], &alpha[1], cfg.horizon)?;
    let rows: Vec<LittlewoodRow> = t
        .records
        .iter()
        .map(|r| {
            let n = r.n as f64;
            LittlewoodRow {
                n: r.n,
                dist_alpha: r.dist_alpha,
                dist_beta: r.dist_beta,
                product: r.product,
                n_product: n * r.product,
                n_log_n_product: n * n.ln().max(1.0) * r.product,
            }
        })
        .collect();
    for warning in &t.warnings {
        eprintln!("warning: {warning}");
    }
    let out = OutDir::create(&cfg.out)?;
    out.csv("littlewood.csv", &["n", "dist_alpha", "dist_beta", "product", "n_product", "n_log_n_product"], &rows)?;
    plot(
        &out.path("littlewood.svg"),
        &format!("running minima, {spec}"),
        "n",
        "value",
        &[
            Series { label: "n |n a| |n b|".into(), points: rows.iter().map(|r| (r.n as f64, r.n_product)).collect() },
            Series { label: "n log n |n a| |n b|".into(), points: rows.iter().map(|r| (r.n as f64, r.n_log_n_product)).collect() },
        ],
        true,
    )?;
    let peak = rows.iter().map(|r| r.n_log_n_product).fold(0.0, f64::max);
    out.metadata(cfg, &[("PECK_BOUND", frozen::PECK_BOUND)], json!({ "records": rows.len(), "max_n_log_n_product": peak, "warnings": t.warnings }))?;
    println!("{} records up to n = {}, max n log n product {peak:.6}", rows.len(), cfg.horizon);
    Ok(true)
}

#[derive(Serialize)]
struct BohrRow {
    n: f64,
    rho: f64,
    count: usize,
    vol: f64,
    ratio: f64,
    phi_l: Option<f64>,
    admissible: bool,
    uncertainty_empty: bool,
}

pub fn bohr(cfg: &RunConfig) -> Result<bool> {
    let lat = lattice_of(cfg)?;
    let d = lat.k() - 1;
    let dual = lat.dual()?;
    let default_phi = if dani_alphas(&lat).is_some() { format!("fit:{}", scan_envelope(d).min(100_000)) } else { "const:1".into() };
    let (phi, _) = phi_of(cfg.phi.as_deref().unwrap_or(&default_phi), &lat)?;
    let depth = cfg.depth.unwrap_or(4);
    let mut rows = Vec::new();
    for n in cfg.schedule.values() {
        for j in 0..=depth {
            let r = 0.499 * 0.5f64.powi(j as i32);
            let rho = vec![r; d];
            let b = bohr_count(&lat, &vec![0.0; lat.k()], n, &rho)?;
            let (empty, _) = uncertainty_set_empty(&dual, n, &rho)?;
            let phi_l = phi_at_l(&phi, n);
            rows.push(BohrRow {
                n,
                rho: r,
                count: b.count,
                vol: b.vol,
                ratio: b.ratio,
                phi_l,
                admissible: phi_l.is_some_and(|p| r.powi(d as i32) * n >= p),
                uncertainty_empty: empty,
            });
        }
    }
    let out = OutDir::create(&cfg.out)?;
    out.csv("bohr.csv", &["n", "rho", "count", "vol", "ratio", "phi_l", "admissible", "uncertainty_empty"], &rows)?;
    let series: Vec<Series> = (0..=depth)
        .map(|j| Series {
            label: format!("rho = 0.499 / 2^{j}"),
            points: rows.iter().filter(|r| r.rho == 0.499 * 0.5f64.powi(j as i32)).map(|r| (r.n, r.ratio)).collect(),
        })
        .collect();
    plot(&out.path("bohr.svg"), &format!("#B / vol(B), {}", lat.label()), "N", "ratio", &series, false)?;
    let bad = rows.iter().filter(|r| r.admissible && !r.uncertainty_empty).count();
    let worst = rows.iter().filter(|r| r.admissible).map(|r| r.ratio).fold(0.0, f64::max);
    out.metadata(
        cfg,
        &[("BOHR_RATIO_BOUND", frozen::BOHR_RATIO_BOUND)],
        json!({ "phi": phi.to_string(), "rows": rows.len(), "max_admissible_ratio": worst, "nonempty_uncertainty": bad }),
    )?;
    println!("{} configurations, max admissible ratio {worst:.6}, {bad} admissible with non-empty uncertainty set", rows.len());
    Ok(bad == 0)
}

#[derive(Serialize)]
struct ClassicalRow {
    n: f64,
    star_discrepancy: f64,
    over_log_n: f64,
}

pub fn scan_classical(cfg: &RunConfig) -> Result<bool> {
    let spec = cfg.alpha.as_deref().ok_or_else(|| usage("scan-classical needs --alpha"))?;
    let alpha: RealAlgebraic = spec.parse()?;
    let ns = cfg.schedule.values();
    let mut rows = Vec::new();
    for &n in &ns {
        let v = classical_star_discrepancy(&alpha, n as u64)?;
        rows.push(ClassicalRow { n, star_discrepancy: v, over_log_n: v / n.ln().max(1.0) });
    }
    let values: Vec<f64> = rows.iter().map(|r| r.star_discrepancy).collect();
    let slope = if ns.len() >= 2 { Some(slope_per_decade(&ns, &values)) } else { None };
    let out = OutDir::create(&cfg.out)?;
    out.csv("classical.csv", &["n", "star_discrepancy", "over_log_n"], &rows)?;
    plot(
        &out.path("classical.svg"),
        &format!("classical star discrepancy, {spec}"),
        "N",
        "D*_N",
        &[Series { label: "D*_N".into(), points: rows.iter().map(|r| (r.n, r.star_discrepancy)).collect() }],
        false,
    )?;
    out.metadata(cfg, &[("CLASSICAL_LOG_CONSTANT", frozen::CLASSICAL_LOG_CONSTANT)], json!({ "slope_per_decade": slope }))?;
    match slope {
        Some(s) => println!("slope {s:.4} per decade of N"),
        None => println!("single horizon, no slope"),
    }
    Ok(true)
}
