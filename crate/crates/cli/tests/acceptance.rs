//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `cargo test -p zbconc-cli --test acceptance`. Every check is
//! seeded, so the outcome is reproducible.

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::Rng;
use zbconc::bounds::{self, BoundInput, TlogtForm};
use zbconc::oracle::{
    chernoff_oracle, chi_square_gof, dkw_epsilon, exact_moments, expected_variance_experiment,
    for_each_fpf_involution, for_each_of_cycle_type, for_each_permutation, ks_distance,
    validate_domination, DominationOptions, EntryLaw, EnumCaps, TailSource,
};
use zbconc::permstat::{moments_uniform, variance_involution, variance_no_two_cycles};
use zbconc::rng::{stream_rng, StreamRng};
use zbconc::zerobias::{convolve, mgf_zero_bias, zero_bias_transform, SumCoupling};
use zbconc::{BoundKind, CycleType, DiscreteDist, PermLaw, SquareMatrix};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_dist(rng: &mut StreamRng, atoms: usize, spread: f64) -> DiscreteDist {
    let mut values: Vec<f64> = Vec::new();
    while values.len() < atoms {
        let v = rng.random_range(-spread..spread);
        if values.iter().all(|u: &f64| (u - v).abs() > 1e-3) {
            values.push(v);
        }
    }
    let w: Vec<f64> = (0..atoms).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    DiscreteDist::new(values.into_iter().zip(w.iter().map(|x| x / total)))
        .unwrap()
        .centered()
        .unwrap()
}

fn random_matrix(rng: &mut StreamRng, n: usize) -> SquareMatrix {
    SquareMatrix::new(n, (0..n * n).map(|_| rng.random::<f64>()).collect()).unwrap()
}

fn random_symmetric(rng: &mut StreamRng, n: usize) -> SquareMatrix {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let x: f64 = rng.random();
            m[i * n + j] = x;
            m[j * n + i] = x;
        }
    }
    SquareMatrix::new(n, m).unwrap()
}

fn rel_err(got: f64, want: f64, scale: f64) -> f64 {
    (got - want).abs() / scale.max(want.abs()).max(f64::MIN_POSITIVE)
}

/// Closed forms against values computed at 50 digits with mpmath.
fn formula_fidelity() -> Check {
    let cases = [
        (
            "eq2(1,0,2)",
            bounds::zb_one_sided(&BoundInput::new(1.0, 0.0, 2.0).unwrap()).raw,
            0.1353352832366127,
        ),
        (
            "eq3(3,1,1)",
            bounds::zb_two_sided(&BoundInput::new(3.0, 1.0, 1.0).unwrap()).raw,
            0.9131007162822623,
        ),
        (
            "bennett(1,1,1)",
            bounds::bennett(&BoundInput::new(1.0, 1.0, 1.0).unwrap())
                .unwrap()
                .raw,
            0.6795704571147613,
        ),
        (
            "eq4-tight(1,1,10)",
            bounds::zb_tlogt(&BoundInput::new(1.0, 1.0, 10.0).unwrap(), TlogtForm::Tight)
                .unwrap()
                .raw,
            0.009227875064889134,
        ),
    ];
    let mut worst = 0.0f64;
    for (name, got, want) in cases {
        let got = got.ok_or_else(|| format!("{name} not applicable"))?;
        let err = (got - want).abs();
        ensure(err <= 1e-12, || format!("{name}: {got} vs {want}"))?;
        worst = worst.max(err);
    }
    Ok(format!("4 values, max abs error {worst:.1e}"))
}

fn stein_identity() -> Check {
    let mut rng = stream_rng(2, 0);
    let mut worst = 0.0f64;
    for case in 0..25 {
        let d = random_dist(&mut rng, 2 + case % 5, 3.0);
        let star = zero_bias_transform(&d).map_err(|e| e.to_string())?;
        let s2 = d.moments().variance;
        for k in 1..=5u32 {
            let lhs = d.raw_moment(k + 1);
            let rhs = s2 * k as f64 * star.raw_moment(k - 1);
            let scale: f64 = d.atoms().map(|(v, p)| p * v.abs().powi(k as i32 + 1)).sum();
            let err = rel_err(lhs, rhs, scale);
            ensure(err <= 1e-9, || {
                format!("case {case}, k={k}: {lhs} vs {rhs}")
            })?;
            worst = worst.max(err);
        }
    }
    Ok(format!(
        "25 distributions x k=1..5, max rel error {worst:.1e}"
    ))
}

fn mgf_identity() -> Check {
    let mut rng = stream_rng(3, 0);
    let mut worst = 0.0f64;
    for case in 0..25 {
        let d = random_dist(&mut rng, 2 + case % 5, 3.0);
        let star = zero_bias_transform(&d).map_err(|e| e.to_string())?;
        let s2 = d.moments().variance;
        for i in 0..21 {
            let s = -2.0 + 0.2 * i as f64;
            let lhs = d.mgf_deriv(s);
            let rhs = s2 * s * mgf_zero_bias(&star, s);
            let scale: f64 = d.atoms().map(|(v, p)| p * v.abs() * (s * v).exp()).sum();
            let err = rel_err(lhs, rhs, scale);
            ensure(err <= 1e-9, || {
                format!("case {case}, s={s}: {lhs} vs {rhs}")
            })?;
            worst = worst.max(err);
        }
    }
    let coin = DiscreteDist::new([(-1.0, 0.5), (1.0, 0.5)]).unwrap();
    let star = zero_bias_transform(&coin).unwrap();
    for i in 0..21 {
        let s = -2.0 + 0.2 * i as f64;
        let lhs = coin.mgf_deriv(s);
        let ms = mgf_zero_bias(&star, s);
        let closed = if s == 0.0 { 1.0 } else { s.sinh() / s };
        ensure(
            rel_err(lhs, s.sinh(), 0.0) <= 1e-12 || s == 0.0 && lhs == 0.0,
            || format!("m'({s}) = {lhs}"),
        )?;
        ensure(rel_err(ms, closed, 0.0) <= 1e-12, || {
            format!("m*({s}) = {ms} vs {closed}")
        })?;
        ensure((lhs - s * ms).abs() <= 1e-12 * (1.0 + lhs.abs()), || {
            format!("sinh identity at s={s}")
        })?;
    }
    Ok(format!(
        "25 distributions x 21 points, max rel error {worst:.1e}; sinh closed form ok"
    ))
}

fn coupling_correctness() -> Check {
    let coin = DiscreteDist::new([(-1.0, 0.5), (1.0, 0.5)]).unwrap();
    let skew = DiscreteDist::new([(-1.0, 2.0 / 3.0), (2.0, 1.0 / 3.0)]).unwrap();
    let three = DiscreteDist::new([(-2.0, 0.25), (0.0, 0.5), (2.0, 0.25)]).unwrap();
    let sums = [
        vec![coin.clone(), coin.clone()],
        vec![coin.clone(), skew.clone()],
        vec![skew, three, coin],
    ];
    let draws = 1_000_000usize;
    let eps = dkw_epsilon(draws, 0.001);
    let mut worst = 0.0f64;
    for (k, parts) in sums.iter().enumerate() {
        let c = parts
            .iter()
            .map(|d| d.min().abs().max(d.max().abs()))
            .fold(0.0, f64::max);
        let exact = zero_bias_transform(&convolve(parts).unwrap()).unwrap();
        let coupling = SumCoupling::new(parts.clone()).unwrap();
        let mut rng = stream_rng(4, k as u64);
        let mut ys = Vec::with_capacity(draws);
        for _ in 0..draws {
            let s = coupling.sample(&mut rng);
            ensure((s.ystar - s.y).abs() <= 2.0 * c, || {
                format!("sum {k}: |Y*-Y| = {} > 2c", (s.ystar - s.y).abs())
            })?;
            ys.push(s.ystar);
        }
        ys.sort_by(f64::total_cmp);
        let d = ks_distance(&ys, |x| exact.cdf(x));
        ensure(d <= eps, || format!("sum {k}: KS distance {d} > DKW {eps}"))?;
        worst = worst.max(d / eps);
    }
    Ok(format!("3 sums x 10^6 draws, max KS/DKW ratio {worst:.2}"))
}

fn hoeffding_moments() -> Check {
    let mut rng = stream_rng(5, 0);
    let caps = EnumCaps::default();
    let mut worst = 0.0f64;
    for case in 0..50 {
        let a = random_matrix(&mut rng, 6);
        let n = 6.0;
        let g = a.grand_mean();
        let sq: f64 = a.entries().iter().map(|x| x * x).sum();
        let rows: f64 = a.row_means().iter().map(|r| r * r).sum();
        let cols: f64 = a.col_means().iter().map(|c| c * c).sum();
        let moment_form = (sq - n * rows - n * cols + n * n * g * g) / (n - 1.0);
        let m = moments_uniform(&a).map_err(|e| e.to_string())?;
        let (mu, var) = exact_moments(&a, &PermLaw::UniformSn, &caps).unwrap();
        for (name, got, want) in [
            ("mu", m.mu, mu),
            ("centred form", m.sigma2, var),
            ("moment form", moment_form, var),
        ] {
            let err = rel_err(got, want, 0.0);
            ensure(err <= 1e-9, || {
                format!("matrix {case}, {name}: {got} vs {want}")
            })?;
            worst = worst.max(err);
        }
    }
    let long = PermLaw::uniform_cycle_type(CycleType::single_cycle(6).unwrap());
    for case in 0..20 {
        let a = random_symmetric(&mut rng, 6);
        let (_, inv) = exact_moments(&a, &PermLaw::FpfInvolution, &caps).unwrap();
        let (_, cyc) = exact_moments(&a, &long, &caps).unwrap();
        let vi = variance_involution(&a).map_err(|e| e.to_string())?;
        let vc = variance_no_two_cycles(&a).map_err(|e| e.to_string())?;
        for (name, got, want) in [("involutions", vi, inv), ("6-cycles", vc, cyc)] {
            let err = rel_err(got, want, 0.0);
            ensure(err <= 1e-9, || {
                format!("symmetric {case}, {name}: {got} vs {want}")
            })?;
            worst = worst.max(err);
        }
    }
    Ok(format!("50 + 20 matrices, max rel error {worst:.1e}"))
}

fn domination_regression() -> Check {
    let mut rng = stream_rng(6, 0);
    let kinds = vec![
        BoundKind::ZbOneSided,
        BoundKind::ZbTwoSided,
        BoundKind::TlogtTight,
        BoundKind::TlogtLoose,
        BoundKind::Bernstein,
    ];
    let grid: Vec<f64> = (0..25).map(|i| 0.25 * i as f64).collect();
    let opts = DominationOptions::new(kinds, TailSource::Exact(EnumCaps::default()));
    let (mut rows, mut applicable, mut min_margin) = (0, 0, f64::INFINITY);
    let mut cases: Vec<(SquareMatrix, PermLaw)> = (0..20)
        .map(|_| (random_matrix(&mut rng, 7), PermLaw::UniformSn))
        .collect();
    cases.extend((0..10).map(|_| (random_symmetric(&mut rng, 6), PermLaw::FpfInvolution)));
    for (k, (a, law)) in cases.iter().enumerate() {
        let r = validate_domination(a, law, &grid, &opts).map_err(|e| e.to_string())?;
        ensure(r.violations == 0, || {
            format!("matrix {k} ({law}): {} violations", r.violations)
        })?;
        rows += r.rows.len();
        applicable += r.rows.len() - r.not_applicable;
        min_margin = r
            .rows
            .iter()
            .filter_map(|x| x.margin)
            .fold(min_margin, f64::min);
    }
    Ok(format!("30 matrices, {rows} rows ({applicable} applicable), 0 violations, min margin {min_margin:.3e}"))
}

/// Grid cell `[prev, next]` in which `a(t) <= b(t)` turns into `a(t) > b(t)`.
fn switch_bracket(
    grid: &[f64],
    a: impl Fn(f64) -> f64,
    b: impl Fn(f64) -> f64,
) -> Option<(f64, f64)> {
    let k = grid.iter().position(|&t| a(t) > b(t))?;
    (k > 0).then(|| (grid[k - 1], grid[k]))
}

fn in_bracket(x: f64, (lo, hi): (f64, f64)) -> bool {
    let slack = 1e-9 * x.abs().max(1.0);
    lo - slack <= x && x <= hi + slack
}

fn crossovers() -> Check {
    let mut rng = stream_rng(7, 0);
    let steps = 4000;
    for case in 0..20 {
        let mu: f64 = rng.random_range(1.0..20.0);
        let s2: f64 = rng.random_range(0.1..mu);
        let x = bounds::chatterjee_crossover(mu, s2).unwrap();
        let h = 2.0 * x / steps as f64;
        let grid: Vec<f64> = (1..=steps).map(|i| h * i as f64).collect();
        // compare exponents to stay clear of underflow
        let zb = |t: f64| -(t * t) / (2.0 * s2 + 16.0 * t);
        let ch = |t: f64| -(t * t) / (4.0 * mu + 2.0 * t);
        ensure(
            bounds::zb_hoeffding_two_sided(s2, grid[0]).unwrap().raw
                < bounds::chatterjee(mu, grid[0]).unwrap().raw,
            || format!("case {case}: eq14 not smaller at small t"),
        )?;
        let at = switch_bracket(&grid, zb, ch)
            .ok_or_else(|| format!("case {case}: no eq14/eq13 switch"))?;
        ensure(in_bracket(x, at), || {
            format!("case {case}: switch in {at:?}, predicted {x}")
        })?;
        let mid = grid[steps / 4];
        let zb_mid = bounds::zb_hoeffding_two_sided(s2, mid)
            .unwrap()
            .raw
            .unwrap();
        let ch_mid = bounds::chatterjee(mu, mid).unwrap().raw.unwrap();
        ensure(zb_mid < ch_mid, || {
            format!("case {case}: evaluator disagrees below the crossover")
        })?;
    }
    for case in 0..20 {
        let s2: f64 = rng.random_range(0.1..10.0);
        let c: f64 = rng.random_range(0.1..10.0);
        let x = bounds::regime_threshold(s2, c).unwrap();
        let h = 2.0 * x / steps as f64;
        let grid: Vec<f64> = (1..=steps).map(|i| h * i as f64).collect();
        let one = |t: f64| {
            bounds::zb_one_sided(&BoundInput::new(s2, c, t).unwrap())
                .raw
                .unwrap()
        };
        let two = |t: f64| {
            bounds::zb_two_sided(&BoundInput::new(s2, c, t).unwrap())
                .raw
                .unwrap()
        };
        ensure(one(grid[0]) < two(grid[0]), || {
            format!("case {case}: eq2 not smaller at small t")
        })?;
        let at = switch_bracket(&grid, one, two)
            .ok_or_else(|| format!("case {case}: no eq2/eq3 switch"))?;
        ensure(in_bracket(x, at), || {
            format!("case {case}: switch in {at:?}, predicted {x}")
        })?;
    }
    Ok("20 (mu, sigma^2) pairs for eq13/eq14 and 20 (sigma^2, c) pairs for eq2/eq3, each inside its switching grid cell".into())
}

fn expected_variance() -> Check {
    let r = expected_variance_experiment(10, &EntryLaw::Uniform01, 10_000, 8)
        .map_err(|e| e.to_string())?;
    ensure(
        (r.target_sigma2 - 0.75).abs() < 1e-15 && (r.target_mu - 5.0).abs() < 1e-15,
        || format!("{r:?}"),
    )?;
    ensure(r.z_sigma2.abs() <= 3.0, || {
        format!("mean sigma_A^2 {} (z = {})", r.mean_sigma2, r.z_sigma2)
    })?;
    ensure(r.z_mu.abs() <= 3.0, || {
        format!("mean mu_A {} (z = {})", r.mean_mu, r.z_mu)
    })?;
    Ok(format!(
        "mean sigma_A^2 {:.4} (z {:+.2}), mean mu_A {:.4} (z {:+.2})",
        r.mean_sigma2, r.z_sigma2, r.mean_mu, r.z_mu
    ))
}

fn collect(visit: impl FnOnce(&mut dyn FnMut(&[usize]))) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    visit(&mut |p: &[usize]| out.push(p.to_vec()));
    out
}

fn chi_square_p(
    law: &PermLaw,
    n: usize,
    support: Vec<Vec<usize>>,
    seed: u64,
) -> std::result::Result<f64, String> {
    let index: HashMap<Vec<usize>, usize> = support
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut counts = vec![0u64; support.len()];
    let mut rng = stream_rng(9, seed);
    for _ in 0..100_000 {
        let p = law.sample(n, &mut rng).map_err(|e| e.to_string())?;
        let slot = index
            .get(p.images())
            .ok_or_else(|| format!("{law}: draw outside the class"))?;
        counts[*slot] += 1;
    }
    let probs = vec![1.0 / support.len() as f64; support.len()];
    Ok(chi_square_gof(&counts, &probs)
        .map_err(|e| e.to_string())?
        .p_value)
}

fn sampler_uniformity() -> Check {
    let mut cases: Vec<(PermLaw, usize, Vec<Vec<usize>>)> = vec![
        (
            PermLaw::FpfInvolution,
            4,
            collect(|v| for_each_fpf_involution(4, v)),
        ),
        (
            PermLaw::FpfInvolution,
            6,
            collect(|v| for_each_fpf_involution(6, v)),
        ),
    ];
    for counts in [
        vec![0, 0, 1, 1, 0, 0, 0],
        vec![0, 0, 2, 0, 0, 0],
        vec![0, 1, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1],
        vec![0, 1, 1, 0, 0],
        vec![1, 1, 1, 0, 0, 0],
    ] {
        let f = CycleType::new(counts).unwrap();
        let class = collect(|v| for_each_of_cycle_type(&f, v));
        cases.push((PermLaw::uniform_cycle_type(f.clone()), f.n(), class));
    }
    for n in [4, 5, 6] {
        cases.push((
            PermLaw::UniformSn,
            n,
            collect(|v| for_each_permutation(n, v)),
        ));
    }
    let mut min_p = 1.0f64;
    let total = cases.len();
    for (k, (law, n, support)) in cases.into_iter().enumerate() {
        let classes = support.len();
        let p = chi_square_p(&law, n, support, k as u64)?;
        ensure(p > 1e-3, || {
            format!("{law} on {n} points ({classes} classes): p = {p:.2e}")
        })?;
        min_p = min_p.min(p);
    }
    Ok(format!("{total} laws x 10^5 draws, min p-value {min_p:.3}"))
}

fn chernoff_dominance() -> Check {
    let coin = DiscreteDist::new([(-1.0, 0.5), (1.0, 0.5)]).unwrap();
    let v = chernoff_oracle(&coin, 1.0).map_err(|e| e.to_string())?;
    ensure((v - 0.5).abs() <= 1e-9, || format!("coin at t=1: {v}"))?;
    let mut rng = stream_rng(10, 0);
    let mut min_ratio = f64::INFINITY;
    for case in 0..10 {
        let d = random_dist(&mut rng, 2 + case % 5, 4.0);
        let t = rng.random_range(0.05..0.95) * d.max();
        let c = d.max() - d.min();
        let input = BoundInput::new(d.moments().variance, c, t).unwrap();
        let ch = chernoff_oracle(&d, t).map_err(|e| e.to_string())?;
        let mut values = vec![
            bounds::zb_one_sided(&input),
            bounds::zb_two_sided(&input),
            bounds::bernstein_family(&input, 4.0).unwrap(),
        ];
        values.push(bounds::zb_tlogt(&input, TlogtForm::Tight).unwrap());
        values.push(bounds::zb_tlogt(&input, TlogtForm::Loose).unwrap());
        for b in values.iter().filter_map(|b| b.raw.map(|r| (b.kind, r))) {
            ensure(ch <= b.1 * (1.0 + 1e-10), || {
                format!("case {case}, t={t}: chernoff {ch} > {} {}", b.0, b.1)
            })?;
            min_ratio = min_ratio.min(b.1 / ch.max(f64::MIN_POSITIVE));
        }
    }
    Ok(format!(
        "coin(t=1) = {v}; 10 cases, min bound/chernoff ratio {min_ratio:.3}"
    ))
}

fn cli_determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("zbconc-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let big = dir.join("a10.csv");
    let mut rng = stream_rng(11, 0);
    let text: String = (0..10)
        .map(|_| {
            (0..10)
                .map(|_| format!("{:.6}", rng.random::<f64>()))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(&big, text).map_err(|e| e.to_string())?;
    let small = dir.join("a6.csv");
    let a = random_symmetric(&mut rng, 6);
    let text: String = a
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(&small, text).map_err(|e| e.to_string())?;

    let run = |matrix: &std::path::Path, law: &str, threads: &str, format: &str| {
        Command::new(env!("CARGO_BIN_EXE_zbconc"))
            .args(["validate", "--matrix"])
            .arg(matrix)
            .args([
                "--law", law, "--t-grid", "0:5:25", "--seed", "2024", "--trials", "200000",
            ])
            .args(["--threads", threads, "--format", format])
            .output()
    };
    let mut checked = 0;
    for (matrix, law) in [(&big, "uniform"), (&small, "fpf-involution")] {
        for format in ["json", "csv"] {
            let first = run(matrix, law, "1", format).map_err(|e| e.to_string())?;
            let again = run(matrix, law, "1", format).map_err(|e| e.to_string())?;
            let four = run(matrix, law, "4", format).map_err(|e| e.to_string())?;
            ensure(first.status.code() == Some(0), || {
                format!(
                    "validate exited {:?}: {}",
                    first.status.code(),
                    String::from_utf8_lossy(&first.stderr)
                )
            })?;
            ensure(!first.stdout.is_empty(), || "empty report".into())?;
            ensure(first.stdout == again.stdout, || {
                format!("{law}/{format}: repeated run differs")
            })?;
            ensure(first.stdout == four.stdout, || {
                format!("{law}/{format}: 1 vs 4 threads differ")
            })?;
            checked += 1;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{checked} configurations (Monte Carlo and exact), byte-identical across repeats and 1 vs 4 threads"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("formula fidelity", formula_fidelity),
        ("Stein identity", stein_identity),
        ("MGF identity", mgf_identity),
        ("coupling correctness", coupling_correctness),
        ("Hoeffding moments", hoeffding_moments),
        ("domination regression", domination_regression),
        ("crossovers", crossovers),
        ("expected variance", expected_variance),
        ("sampler uniformity", sampler_uniformity),
        ("Chernoff dominance", chernoff_dominance),
        ("CLI determinism", cli_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name} ({secs:.1}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}. {name} ({secs:.1}s): {detail}", k + 1);
            }
        }
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
