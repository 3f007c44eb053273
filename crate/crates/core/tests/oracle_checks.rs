mod common;

use zbconc::bounds::{self, BoundInput, TlogtForm};
use zbconc::oracle::{
    chernoff_oracle, exact_tail, exact_tail_grid, expected_variance_experiment, mc_tail,
    mc_tail_grid, validate_domination, DominationOptions, EntryLaw, EnumCaps, McConfig, TailSource,
};
use zbconc::zerobias::convolve;
use zbconc::{BoundKind, DiscreteDist, PermLaw, SquareMatrix};

fn a5() -> SquareMatrix {
    SquareMatrix::from_fn(5, |i, j| {
        ((3 * i + 2 * j) % 5) as f64 / 4.0 + if i == j { 0.3 } else { 0.0 }
    })
    .unwrap()
}

#[test]
fn monte_carlo_intervals_cover_the_exact_tail() {
    let a = a5();
    let law = PermLaw::UniformSn;
    let t = 0.6;
    let exact = exact_tail(&a, &law, t, &EnumCaps::default()).unwrap().point;
    assert!(exact > 0.05 && exact < 0.95, "exact tail {exact}");
    let mut covered = 0;
    for rep in 0..200 {
        let e = mc_tail(&a, &law, t, &McConfig::new(2_000, 1_000 + rep)).unwrap();
        if e.ci_low <= exact && exact <= e.ci_high {
            covered += 1;
        }
    }
    assert!(covered >= 198, "covered {covered} of 200");
}

#[test]
fn doubling_trials_shrinks_interval_width() {
    let a = a5();
    let (mut narrow, mut wide) = (0.0, 0.0);
    for rep in 0..40 {
        wide += mc_tail(&a, &PermLaw::UniformSn, 0.6, &McConfig::new(4_000, rep))
            .unwrap()
            .half_width();
        narrow += mc_tail(
            &a,
            &PermLaw::UniformSn,
            0.6,
            &McConfig::new(8_000, rep + 500),
        )
        .unwrap()
        .half_width();
    }
    let ratio = narrow / wide;
    assert!((ratio - 1.0 / 2f64.sqrt()).abs() < 0.03, "ratio {ratio}");
}

#[test]
fn monte_carlo_tails_agree_with_enumeration_for_cycle_types() {
    let a = common::random_symmetric(&mut common::rng(301), 6);
    let law = PermLaw::uniform_cycle_type(zbconc::CycleType::new(vec![0, 0, 2, 0, 0, 0]).unwrap());
    let grid = [0.0, 0.2, 0.5];
    let exact = exact_tail_grid(&a, &law, &grid, &EnumCaps::default()).unwrap();
    let mc = mc_tail_grid(&a, &law, &grid, &McConfig::new(40_000, 302)).unwrap();
    for (e, m) in exact.iter().zip(&mc) {
        assert!(
            m.ci_low <= e.point && e.point <= m.ci_high,
            "{e:?} vs {m:?}"
        );
    }
}

#[test]
fn domination_on_small_regression_set() {
    let mut rng = common::rng(303);
    let kinds = BoundKind::ZERO_BIAS.to_vec();
    let grid: Vec<f64> = (0..15).map(|i| 0.4 * i as f64).collect();
    for _ in 0..5 {
        let a = common::random_matrix(&mut rng, 6);
        let opts = DominationOptions::new(kinds.clone(), TailSource::Exact(EnumCaps::default()));
        let r = validate_domination(&a, &PermLaw::UniformSn, &grid, &opts).unwrap();
        assert!(r.pass, "{} violations", r.violations);
    }
    for _ in 0..3 {
        let a = common::random_symmetric(&mut rng, 8);
        let opts = DominationOptions::new(kinds.clone(), TailSource::Exact(EnumCaps::default()));
        let r = validate_domination(&a, &PermLaw::FpfInvolution, &grid, &opts).unwrap();
        assert!(r.pass, "{} violations", r.violations);
    }
}

#[test]
fn enumeration_reports_are_bit_identical() {
    let a = common::random_matrix(&mut common::rng(304), 7);
    let opts = DominationOptions::new(
        vec![BoundKind::ZbOneSided],
        TailSource::Exact(EnumCaps::default()),
    );
    let grid = [0.5, 1.0, 2.0];
    let one = validate_domination(&a, &PermLaw::UniformSn, &grid, &opts).unwrap();
    let two = validate_domination(&a, &PermLaw::UniformSn, &grid, &opts).unwrap();
    assert_eq!(
        serde_json::to_string(&one).unwrap(),
        serde_json::to_string(&two).unwrap()
    );
}

#[test]
fn chernoff_is_below_the_zero_bias_bounds() {
    let mut rng = common::rng(305);
    for case in 0..20 {
        let parts: Vec<DiscreteDist> = (0..1 + case % 3)
            .map(|_| common::random_dist(&mut rng, 3))
            .collect();
        let sum = convolve(&parts).unwrap();
        let c = parts.iter().map(|d| d.max() - d.min()).fold(0.0, f64::max);
        let s2 = sum.moments().variance;
        for frac in [0.1, 0.4, 0.8] {
            let t = frac * sum.max();
            let ch = chernoff_oracle(&sum, t).unwrap();
            let input = BoundInput::new(s2, c, t).unwrap();
            let mut bounds = vec![
                bounds::zb_one_sided(&input).raw.unwrap(),
                bounds::zb_two_sided(&input).raw.unwrap(),
                bounds::bernstein_family(&input, 4.0).unwrap().raw.unwrap(),
            ];
            for form in [TlogtForm::Tight, TlogtForm::Loose] {
                if let Some(r) = bounds::zb_tlogt(&input, form).unwrap().raw {
                    bounds.push(r);
                }
            }
            for b in bounds {
                assert!(
                    ch <= b * (1.0 + 1e-10),
                    "case {case}, t {t}: chernoff {ch} > {b}"
                );
            }
        }
    }
}

#[test]
fn expected_variance_small_run() {
    let r = expected_variance_experiment(8, &EntryLaw::Uniform01, 3_000, 306).unwrap();
    assert!((r.target_sigma2 - 7.0 / 12.0).abs() < 1e-15);
    assert!(r.z_sigma2.abs() < 4.0 && r.z_mu.abs() < 4.0, "{r:?}");
    let bern = EntryLaw::Discrete(DiscreteDist::new([(0.0, 0.3), (1.0, 0.7)]).unwrap());
    let r = expected_variance_experiment(6, &bern, 3_000, 307).unwrap();
    assert!((r.target_sigma2 - 5.0 * 0.21).abs() < 1e-12);
    assert!(r.z_sigma2.abs() < 4.0 && r.z_mu.abs() < 4.0, "{r:?}");
}
