//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyvol::admissibility::{admissible_degree, admissible_indices, is_admissible, Permutation};
use polyvol::bounds::{admissible_volume_bound, amgm_minimize, amgm_objective};
use polyvol::integral::{decay_scan, integrability_scan, vdc_sweep, LevelConfig, QuadratureConfig};
use polyvol::lojacheck::{chebyshev_floor_check, chebyshev_product, lojasiewicz_check, LojaConfig, CHEBYSHEV_GRID};
use polyvol::montecarlo::degenerate::degenerate_scenario_scan;
use polyvol::montecarlo::{bound_tightness, fit_scaling_at, log_grid, volume_scan, Axis, ScanConfig, Status};
use polyvol::newton::newton_distance;
use polyvol::report::analyze;
use polyvol::{parse_polynomial, ExponentVector, Polynomial, Rational};

const EXAMPLE: &str = "x1^5 + x1*x2^3 + x2^2";

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn example() -> Polynomial {
    parse_polynomial(EXAMPLE, 2).unwrap()
}

fn exponents(e: &[u32]) -> ExponentVector {
    ExponentVector::new(e.to_vec())
}

// Dense bivariate integer polynomials for an independent differentiation oracle.
type Dense = BTreeMap<(u32, u32), i64>;

fn dense(p: &Polynomial) -> Dense {
    p.terms()
        .map(|(e, c)| ((e.get(0), e.get(1)), c.to_integer().try_into().unwrap()))
        .collect()
}

fn d_dx(p: &Dense, axis: usize) -> Dense {
    let mut out = Dense::new();
    for (&(a, b), &c) in p {
        let k = if axis == 0 { a } else { b };
        if k > 0 {
            let key = if axis == 0 { (a - 1, b) } else { (a, b - 1) };
            *out.entry(key).or_default() += c * k as i64;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mul(p: &Dense, q: &Dense) -> Dense {
    let mut out = Dense::new();
    for (&(a, b), &c) in p {
        for (&(x, y), &d) in q {
            *out.entry((a + x, b + y)).or_default() += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn sub(p: &Dense, q: &Dense) -> Dense {
    let mut out = p.clone();
    for (&k, &c) in q {
        *out.entry(k).or_default() -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Brute force: `α` is admissible iff under some coordinate order it is the
/// strict lexicographic maximum of the support and its first coordinate in
/// that order is positive.
fn brute_force_admissible(p: &Polynomial) -> Vec<ExponentVector> {
    let n = p.dimension();
    let mut out = Vec::new();
    for alpha in p.support() {
        let ok = Permutation::all(n).any(|perm| {
            let key = |e: &ExponentVector| perm.as_slice().iter().map(|&i| e.get(i)).collect::<Vec<u32>>();
            let ka = key(alpha);
            ka[0] >= 1 && p.support().filter(|b| *b != alpha).all(|b| key(b) < ka)
        });
        if ok {
            out.push(alpha.clone());
        }
    }
    out.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    out
}

fn criterion_1() -> Outcome {
    let p = example();
    let mut listed: Vec<ExponentVector> = admissible_indices(&p).unwrap().into_iter().map(|c| c.alpha).collect();
    listed.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    let expected = vec![exponents(&[1, 3]), exponents(&[5, 0])];
    let ad = admissible_degree(&p).unwrap().ad;

    let chain = p.jacobian_chain(2).unwrap();
    let p2_ok = chain[1] == parse_polynomial("5*x1^4 + x2^3", 2).unwrap();
    let (p1, p2) = (dense(&chain[0]), dense(&chain[1]));
    let oracle = sub(&mul(&d_dx(&p1, 0), &d_dx(&p2, 1)), &mul(&d_dx(&p1, 1), &d_dx(&p2, 0)));
    let p3_expected = parse_polynomial("-45*x1^4*x2^2 + 3*x2^5 - 40*x1^3*x2", 2).unwrap();
    let p3_ok = dense(&chain[2]) == oracle && chain[2] == p3_expected;
    let note = analyze(&p)
        .unwrap()
        .notes
        .iter()
        .any(|n| n.label == "paper-note" && n.topic == "jacobian-chain");

    check(
        listed == expected && brute_force_admissible(&p) == expected && ad == 4 && p2_ok && p3_ok && note,
        format!(
            "admissible {listed:?}, ad {ad}, P_2 ok {p2_ok}, P_3 = {} ok {p3_ok}, note {note}",
            chain[2]
        ),
    )
}

/// `(t, t)` lies in the Newton polyhedron of a bivariate support iff some
/// point or segment of the support is dominated by it.
fn diagonal_member(support: &[(f64, f64)], t: f64) -> bool {
    let dominated = |lo: f64, hi: f64, a: f64, b: f64| -> Option<(f64, f64)> {
        // values s in [lo, hi] with s a + (1 - s) b <= t
        let slope = a - b;
        if slope.abs() < 1e-300 {
            return (b <= t).then_some((lo, hi));
        }
        let s = (t - b) / slope;
        let (l, h) = if slope > 0.0 { (lo, hi.min(s)) } else { (lo.max(s), hi) };
        (l <= h).then_some((l, h))
    };
    support.iter().any(|&(a, b)| a <= t && b <= t)
        || support.iter().enumerate().any(|(i, &(a0, b0))| {
            support[i + 1..].iter().any(|&(a1, b1)| {
                dominated(0.0, 1.0, a0, a1)
                    .and_then(|(l, h)| dominated(l, h, b0, b1))
                    .is_some()
            })
        })
}

fn bisect_nd(p: &Polynomial) -> f64 {
    let support: Vec<(f64, f64)> = p.support().map(|e| (e.get(0) as f64, e.get(1) as f64)).collect();
    let (mut lo, mut hi) = (0.0, 64.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if diagonal_member(&support, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn criterion_2() -> Outcome {
    let p = example();
    let nd = newton_distance(&p).unwrap();
    let exact_ok = nd.exact == Rational::new(10.into(), 7.into());
    let oracle = bisect_nd(&p);
    let disk = newton_distance(&parse_polynomial("x1^2 + x2^2", 2).unwrap()).unwrap();
    let note = analyze(&p)
        .unwrap()
        .notes
        .iter()
        .any(|n| n.label == "paper-note" && n.topic == "newton-distance");
    check(
        exact_ok && (oracle - nd.distance).abs() <= 1e-9 && disk.exact == Rational::from_integer(1.into()) && note,
        format!(
            "ND = {} (bisection {oracle:.12}), ND(x1^2 + x2^2) = {}, note {note}",
            nd.exact, disk.exact
        ),
    )
}

/// Damped Newton on `y = ln x`, where the objective is a sum of exponentials
/// of linear forms and therefore convex.
fn numeric_amgm_min(a: &[f64], l: u32) -> f64 {
    let n = a.len();
    // f(y) = Σ_k exp(c_k + w_k · y)
    let mut forms: Vec<(f64, Vec<f64>)> = Vec::new();
    for j in 0..n {
        let mut w = vec![0.0; n];
        for wi in w.iter_mut().take(j) {
            *wi = 1.0;
        }
        w[j] = -1.0;
        forms.push((a[j].ln(), w));
    }
    let mut w = vec![0.0; n];
    w[n - 1] = 1.0 / l as f64;
    forms.push((0.0, w));
    let value = |y: &[f64]| -> f64 {
        forms
            .iter()
            .map(|(c, w)| (c + w.iter().zip(y).map(|(a, b)| a * b).sum::<f64>()).exp())
            .sum()
    };
    let mut y = vec![0.0; n];
    for _ in 0..200 {
        let mut g = vec![0.0; n];
        let mut h = vec![vec![0.0; n]; n];
        for (c, w) in &forms {
            let e = (c + w.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>()).exp();
            for i in 0..n {
                g[i] += e * w[i];
                for k in 0..n {
                    h[i][k] += e * w[i] * w[k];
                }
            }
        }
        // solve h d = -g by Gaussian elimination with partial pivoting
        let mut m: Vec<Vec<f64>> = h
            .iter()
            .zip(&g)
            .map(|(row, gi)| row.iter().copied().chain([-gi]).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&r, &s| m[r][col].abs().total_cmp(&m[s][col].abs()))
                .unwrap();
            m.swap(col, piv);
            let pivot_row = m[col].clone();
            for row in m.iter_mut().skip(col + 1) {
                let f = row[col] / pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= f * p;
                }
            }
        }
        let mut d = vec![0.0; n];
        for r in (0..n).rev() {
            d[r] = (m[r][n] - (r + 1..n).map(|k| m[r][k] * d[k]).sum::<f64>()) / m[r][r];
        }
        let f0 = value(&y);
        let mut step = 1.0;
        loop {
            let trial: Vec<f64> = y.iter().zip(&d).map(|(a, b)| a + step * b).collect();
            if value(&trial) <= f0 || step < 1e-12 {
                y = trial;
                break;
            }
            step *= 0.5;
        }
        if g.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-14 * f0 {
            break;
        }
    }
    value(&y)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_min = 0f64;
    let mut worst_arg = 0f64;
    for _ in 0..200 {
        let n = rng.random_range(2..=4usize);
        let l = rng.random_range(1..=3u32);
        let a: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.random_range(-1.0..1.0))).collect();
        let res = amgm_minimize(&a, l).unwrap();
        let numeric = numeric_amgm_min(&a, l);
        worst_min = worst_min.max((numeric - res.min_value).abs() / res.min_value);
        worst_arg = worst_arg.max((amgm_objective(&a, l, &res.argmin) - res.min_value).abs());
    }
    let unit = amgm_minimize(&[1.0, 1.0], 1).unwrap();
    let unit_ok = (unit.min_value - 3.0).abs() < 1e-12 && unit.argmin.iter().all(|x| (x - 1.0).abs() < 1e-12);
    check(
        worst_min <= 1e-6 && worst_arg <= 1e-9 && unit_ok,
        format!("max relative gap to Newton minimizer {worst_min:.2e}, max |f(argmin) - min| {worst_arg:.2e}, a=(1,1) l=1 -> {:.12} at {:?}", unit.min_value, unit.argmin),
    )
}

fn criterion_4() -> Outcome {
    let p = parse_polynomial("x1^2 + x2^2", 2).unwrap();
    let cfg = ScanConfig {
        delta_grid: log_grid(1e-3, 1e-1, 7),
        r_grid: vec![2.0],
        samples_per_cell: 1_000_000,
        seed: 42,
    };
    let scan = volume_scan(&p, &cfg).unwrap();
    let worst_z = scan
        .cells
        .iter()
        .map(|c| (c.volume_estimate - std::f64::consts::PI * c.delta).abs() / c.standard_error)
        .fold(0.0, f64::max);
    let fit = fit_scaling_at(&scan, Axis::Delta, 2.0).unwrap().fit;
    check(
        worst_z <= 3.0 && (0.97..=1.03).contains(&fit.exponent),
        format!(
            "max |estimate - pi delta| / se = {worst_z:.2}, delta-exponent {:.4}",
            fit.exponent
        ),
    )
}

fn criterion_5() -> Outcome {
    let p = example();
    let cfg = ScanConfig {
        delta_grid: log_grid(1e-4, 1e-1, 7),
        r_grid: vec![1.0, 2.0, 4.0, 8.0, 16.0],
        samples_per_cell: 1_000_000,
        seed: 42,
    };
    let scan = volume_scan(&p, &cfg).unwrap();
    let by_delta = fit_scaling_at(&scan, Axis::Delta, 2.0).unwrap().fit;
    let by_r = fit_scaling_at(&scan, Axis::R, 1e-3).unwrap().fit;
    let statuses: Vec<Status> = admissible_indices(&p)
        .unwrap()
        .iter()
        .map(|c| {
            bound_tightness(&admissible_volume_bound(&p, c).unwrap(), &scan)
                .unwrap()
                .status
        })
        .collect();
    check(
        by_delta.exponent >= 0.25 - 0.03 && by_r.exponent <= 1.1 && statuses.iter().all(|s| *s != Status::Flag),
        format!(
            "delta-exponent at r=2 {:.4}, r-exponent at delta=1e-3 {:.4} ({} radii), statuses {statuses:?}",
            by_delta.exponent, by_r.exponent, by_r.points
        ),
    )
}

fn criterion_6() -> Outcome {
    let cfg = ScanConfig {
        delta_grid: log_grid(1e-4, 1e-2, 5),
        r_grid: vec![3.0, 6.0, 12.0],
        samples_per_cell: 4_000_000,
        seed: 42,
    };
    let rep = degenerate_scenario_scan(&cfg).unwrap();
    let at = rep
        .r_uniformity
        .iter()
        .find(|u| (u.delta - 1e-3).abs() < 1e-12)
        .unwrap();
    let nu = rep.nu.as_ref().map_or(f64::NAN, |f| f.fit.exponent);
    check(
        at.agree_within_3se && nu > 0.0,
        format!(
            "delta=1e-3 estimates {:?} (max pairwise z {:.2}), nu {nu:.4}",
            at.estimates, at.max_pairwise_z
        ),
    )
}

fn criterion_7() -> Outcome {
    let p = example();
    let cfg = LevelConfig {
        seed: 42,
        ..LevelConfig::default()
    };
    let scan = integrability_scan(&p, &[0.2, 0.8], &[0.25, 1.0, 2.0, 4.0, 8.0], &cfg).unwrap();
    let low = scan.verdict(0.2).unwrap();
    let high = scan.verdict(0.8).unwrap();
    let growth = low.r_growth.as_ref().map_or(f64::NAN, |g| g.exponent);

    let x1 = parse_polynomial("x1", 1).unwrap();
    let lin = integrability_scan(&x1, &[0.5, 0.8, 0.9, 0.95, 1.0, 1.05, 1.1, 1.3], &[1.0], &cfg).unwrap();
    let bracket = (lin.largest_finite, lin.smallest_divergent);
    let bracket_ok = matches!(bracket, (Some(f), Some(d)) if f >= 0.9 && d <= 1.1 && f < d);
    check(
        !low.divergent && growth <= 1.3 && high.divergent && bracket_ok,
        format!(
            "mu=0.2 {} with r-growth {growth:.3}; mu=0.8 {}; x1 transition in ({:?}, {:?})",
            if low.divergent { "divergent" } else { "finite" },
            if high.divergent { "divergent" } else { "finite" },
            bracket.0,
            bracket.1
        ),
    )
}

fn criterion_8() -> Outcome {
    let cfg = QuadratureConfig::default();
    let slope = |text: &str, dim: usize, top: f64, points: usize| {
        let p = parse_polynomial(text, dim).unwrap();
        decay_scan(&p, 1.0, &log_grid(10.0, top, points), &cfg).unwrap()
    };
    let sq = slope("x1^2", 1, 1e4, 96);
    let lin = slope("x1", 1, 1e4, 96);
    let ex = slope(EXAMPLE, 2, 1e3, 64);
    let (s_sq, s_lin, s_ex) = (
        sq.envelope_exponent.unwrap_or(f64::NAN),
        lin.envelope_exponent.unwrap_or(f64::NAN),
        ex.envelope_exponent.unwrap_or(f64::NAN),
    );
    let lambdas = log_grid(10.0, 1e4, 48);
    let vdc: Vec<f64> = [
        (vec![0.0, 1.0], 1, 1.0, (-1.0, 1.0)),
        (vec![0.0, 0.0, 1.0], 2, 2.0, (-1.0, 1.0)),
        (vec![0.0, -1.0, 0.0, 1.0], 1, 11.0, (2.0, 3.0)),
    ]
    .into_iter()
    .map(|(g, k, g0, iv)| {
        vdc_sweep(&g, k, g0, iv, &lambdas, &cfg)
            .unwrap()
            .envelope
            .map_or(f64::NAN, |e| e.fit.exponent)
    })
    .collect();
    check(
        (s_sq + 0.5).abs() <= 0.05 && s_lin <= -0.95 && s_ex <= -0.25 + 0.05 && vdc.iter().all(|s| s.abs() <= 0.1),
        format!(
            "slopes x1^2 {s_sq:.4}, x1 {s_lin:.4}, example {s_ex:.4} ({} of {} cells over the work cap); vdc slopes {:?}",
            ex.unconverged,
            ex.lambda_grid.len(),
            vdc.iter().map(|s| format!("{s:.4}")).collect::<Vec<_>>()
        ),
    )
}

fn criterion_9() -> Outcome {
    let p = example();
    let cert = is_admissible(&p, &exponents(&[1, 3])).unwrap().unwrap();
    let main = lojasiewicz_check(&p, &cert, &LojaConfig::new(10_000, 2.0, 42)).unwrap();

    let disk = parse_polynomial("x1^2 + x2^2", 2).unwrap();
    let disk_cert = is_admissible(&disk, &exponents(&[2, 0])).unwrap().unwrap();
    let disk_rep = lojasiewicz_check(&disk, &disk_cert, &LojaConfig::new(2_000, 2.0, 42)).unwrap();
    let x1 = parse_polynomial("x1", 1).unwrap();
    let x1_cert = is_admissible(&x1, &exponents(&[1])).unwrap().unwrap();
    let x1_rep = lojasiewicz_check(&x1, &x1_cert, &LojaConfig::new(2_000, 2.0, 42)).unwrap();
    check(
        main.confirmed_fraction() >= 0.95
            && disk_rep.confirmed == disk_rep.samples
            && x1_rep.confirmed == x1_rep.samples,
        format!(
            "example alpha=(1,3): {:.4} confirmed, {} inconclusive, none falsified; x1^2 + x2^2 {:.4}; x1 {:.4}",
            main.confirmed_fraction(),
            main.inconclusive,
            disk_rep.confirmed_fraction(),
            x1_rep.confirmed_fraction()
        ),
    )
}

fn criterion_10() -> Outcome {
    let rep = chebyshev_floor_check(3, 10_000, 42).unwrap();
    let extremal = chebyshev_product(&[0.125, -1.0, 1.0], CHEBYSHEV_GRID);
    check(
        rep.min_product >= 1.0 - 1e-6 && (extremal - 1.0).abs() <= 1e-9,
        format!(
            "min cubic product {:.9}, t^2 - t + 1/8 gives {extremal:.12}",
            rep.min_product
        ),
    )
}

/// Output with the header object removed.
fn without_header(json: &str) -> String {
    let start = json.find("\"kind\"").expect("kind field");
    json[start..].to_string()
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: [(&str, Vec<&str>); 4] = [
        (
            "volume",
            vec!["scan", "volume", "--poly", EXAMPLE, "--samples", "50000"],
        ),
        (
            "integrability",
            vec![
                "scan",
                "integrability",
                "--poly",
                EXAMPLE,
                "--samples",
                "50000",
                "--mu-grid",
                "0.2,0.8",
            ],
        ),
        ("decay", vec!["scan", "decay", "--poly", "x1^2"]),
        ("loja", vec!["verify", "loja", "--poly", EXAMPLE, "--samples", "2000"]),
    ];
    let mut mismatched = Vec::new();
    for (name, args) in &runs {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let path = dir.path().join(format!("{name}-{threads}.json"));
            let status = Command::new(env!("CARGO_BIN_EXE_polyvol"))
                .args(args)
                .args(["--seed", "7", "--threads", threads, "--json"])
                .arg(&path)
                .output()
                .unwrap()
                .status;
            assert!(status.success(), "{name} failed");
            outputs.push(without_header(&std::fs::read_to_string(&path).unwrap()));
        }
        if outputs[0] != outputs[1] {
            mismatched.push(*name);
        }
    }
    check(
        mismatched.is_empty(),
        format!("scan volume|integrability|decay and verify loja at --threads 1 vs 4: mismatches {mismatched:?}"),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("symbolic fixtures", criterion_1),
        ("Newton distance", criterion_2),
        ("AM-GM minimizer", criterion_3),
        ("volume calibration", criterion_4),
        ("admissible volume bound", criterion_5),
        ("degenerate scenario", criterion_6),
        ("integrability bracket", criterion_7),
        ("oscillatory decay", criterion_8),
        ("Lojasiewicz verifier", criterion_9),
        ("Chebyshev floor", criterion_10),
        ("determinism", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        println!(
            "criterion {:>2} {:<24} {}  [{:.1?}] {}",
            k + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
