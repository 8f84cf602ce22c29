//! Re-derives the frozen constants that the acceptance run does not touch.

use smoothdisc::discrepancy::*;
use smoothdisc::frozen;
use smoothdisc::lattice::*;
use smoothdisc::numbers::*;
use smoothdisc::weights::WeightSystem;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs()
}

fn cubic_pair() -> [RealAlgebraic; 2] {
    [RealAlgebraic::cubic7(), "cubic:7^2".parse().unwrap()]
}

#[test]
fn golden_scan_worst_is_m_one() {
    let scan = mult_badness(&[RealAlgebraic::golden()], 100_000, 0.0).unwrap();
    assert_eq!(scan.worst.m, vec![1]);
    assert!(close(scan.worst.quality, frozen::GOLDEN_WORST_QUALITY));
    assert!(scan.worst.quality >= 1.0 / 3.0);
    assert!(close(frozen::GOLDEN_PHI * frozen::GOLDEN_WORST_QUALITY, 1.0));
}

#[test]
fn cubic_pair_worst_record() {
    let scan = mult_badness(&cubic_pair(), 200, 0.05).unwrap();
    assert_eq!(scan.worst.m, frozen::CUBIC_PAIR_WORST_M.to_vec());
    assert!(close(scan.worst.quality, frozen::CUBIC_PAIR_WORST_QUALITY));
    // qualities fall along the running minima
    assert!(scan.running_minima.windows(2).all(|p| p[1].quality < p[0].quality && p[1].height > p[0].height));
}

#[test]
fn cubic_pair_fit() {
    let scan = mult_badness(&cubic_pair(), 1000, 0.0).unwrap();
    let fit = fit_phi(&scan.running_minima).unwrap();
    let (c, a, b) = frozen::CUBIC_PAIR_FIT;
    match fit.phi {
        PhiFunction::LogPower { c: fc, a: fa, b: fb } => {
            assert!(close(fc, c));
            assert_eq!((fa, fb), (a, b));
        }
        other => panic!("expected a log-power fit, got {other}"),
    }
    // soundness over the whole scan, not just the running minima
    let all = mult_badness(&cubic_pair(), 1000, f64::INFINITY).unwrap();
    for r in &all.below {
        assert!(r.height as f64 * fit.phi.eval(r.height as f64) * r.error >= 1.0 - 1e-12, "{r:?}");
    }
}

#[test]
fn peck_trajectory_bound() {
    let [a, b] = cubic_pair();
    let t = littlewood_trajectory(&a, &b, 1_000_000).unwrap();
    assert!(t.records.windows(2).all(|p| p[1].product < p[0].product));
    let max = t
        .records
        .iter()
        .map(|r| r.n as f64 * (r.n as f64).ln().max(1.0) * r.product)
        .fold(0.0, f64::max);
    assert!(close(max, frozen::PECK_BOUND), "{max}");
}

#[test]
fn cubic7_sup_sweep_is_bounded() {
    let lat = parse_lattice("minkowski:cubic:7").unwrap();
    let w = WeightSystem::standard(3);
    for (e, expected) in (2..=5).zip(frozen::CUBIC7_SUP) {
        let n = 10f64.powi(e);
        let grid = ScanGrid::new(ScanGrid::depth_for(n, 2).min(8));
        let est = sup_discrepancy(&lat, &w, n, &grid).unwrap();
        assert!(close(est.estimate, expected), "N = {n}: {}", est.estimate);
        assert!(est.estimate <= frozen::CUBIC7_SUP_BOUND * (1.0 + 1e-9));
    }
}

#[test]
fn classical_log_constant() {
    let golden = RealAlgebraic::golden();
    let c = (4..=16)
        .map(|i| {
            let n = 10f64.powf(i as f64 / 4.0).round();
            classical_star_discrepancy(&golden, n as u64).unwrap() / n.ln()
        })
        .fold(0.0, f64::max);
    assert!(close(c, frozen::CLASSICAL_LOG_CONSTANT));
}

#[test]
fn golden_sup_values_reproduce() {
    let lat = dani_lattice(&[RealAlgebraic::golden()]).unwrap();
    let w = WeightSystem::standard(2);
    for (e, expected) in (2..=4).zip(frozen::GOLDEN_SUP) {
        let n = 10f64.powi(e);
        let mut grid = ScanGrid::new(ScanGrid::depth_for(n, 1));
        grid.gamma_samples = 4;
        let est = sup_discrepancy(&lat, &w, n, &grid).unwrap();
        assert!(close(est.estimate, expected), "N = {n}: {}", est.estimate);
    }
}

#[test]
fn blichfeldt_bound_on_reduced_boxes() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for k in 2..=3usize {
        let mut worst: f64 = 0.0;
        for _ in 0..40 {
            let m = nalgebra::DMatrix::from_fn(k, k, |_, _| rng.gen_range(-1.0..1.0));
            let det: f64 = m.determinant();
            if det.abs() < 0.05 {
                continue;
            }
            let lat = Lattice::new(m / det.abs().powf(1.0 / k as f64)).unwrap();
            let s: Vec<f64> = (0..k).map(|_| rng.gen_range(0.5..2.0)).collect();
            let minima = successive_minima(&lat, &SymBox::new(s.clone()).unwrap()).unwrap();
            // rescale so that the last minimum is exactly 1
            let bx = SymBox::new(s).unwrap().scaled(minima[k - 1].value * (1.0 + 1e-9)).unwrap();
            let count = enumerate_box(&lat, &bx, &vec![0.0; k]).unwrap().len();
            worst = worst.max(count as f64 / bx.volume());
        }
        assert!(worst <= blichfeldt_constant(k), "k = {k}: {worst}");
    }
}
