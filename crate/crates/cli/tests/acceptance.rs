//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use common::*;
use dipolenet_core::antenna::{field_z, power_gain};
use dipolenet_core::channel::{noise_power, pathloss, FadingDraw};
use dipolenet_core::metrics::compute_metrics;
use dipolenet_core::rng::{substream, StreamLabel};
use dipolenet_core::scenario::{generate_topology, sweep_air_percentage, sweep_air_tx, sweep_height, HEIGHTS};
use dipolenet_core::selection::{select_all, select_max_power, select_max_slnr, slnr};
use dipolenet_core::units::watts_to_dbm;
use dipolenet_core::{
    AntennaConfig, CandidateSet, DipoleCount, DipoleParams, NetworkRealization, Position3D, RadioParams,
    ReceiverFilter, ScenarioConfig, Scheme, SelectionResult, Strategy, SweepResult,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

const TRIALS: u64 = 10_000;
const SEED: u64 = 1;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn base() -> ScenarioConfig {
    ScenarioConfig {
        trials: TRIALS,
        seed: SEED,
        ..ScenarioConfig::default()
    }
}

const ONE: Scheme = Scheme::REFERENCE_SET[0];
const TWO: Scheme = Scheme::REFERENCE_SET[1];
const THREE: Scheme = Scheme::REFERENCE_SET[2];
const THREE_SLNR: Scheme = Scheme::REFERENCE_SET[3];

/// Mean minus the 95% half-width of the paired difference `a - b`.
fn lower_bound(a: &[f64], b: &[f64]) -> (f64, f64) {
    let (m, se) = paired_difference(a, b);
    (m, m - Z95 * se)
}

fn criterion_1() -> Outcome {
    let dipole = DipoleParams::default();
    check(field_z(FRAC_PI_2, &dipole) == 1.0, format!("field_z(pi/2) = {}", field_z(FRAC_PI_2, &dipole)))?;
    let want = (PI / (2.0 * 2f64.sqrt())).cos() / FRAC_PI_4.sin();
    let got = field_z(FRAC_PI_4, &dipole);
    check((got - want).abs() <= 1e-12, format!("field_z(pi/4) = {got}, want {want}"))?;
    let totals: Vec<f64> = AntennaConfig::ALL
        .iter()
        .map(|&c| sphere_integral(64, 128, |az, polar| power_gain(c, az, polar, &dipole)))
        .collect();
    let worst = totals.iter().map(|t| ((t - totals[0]) / totals[0]).abs()).fold(0.0, f64::max);
    check(worst <= 1e-6, format!("sphere integrals differ by {worst:e}"))?;
    Ok(format!("field_z(pi/4) err {:.1e}, sphere spread {worst:.1e}", (got - want).abs()))
}

fn criterion_2() -> Outcome {
    let got = pathloss(100.0, 800e6).map_err(|e| e.to_string())?;
    let want = (C / (800e6 * 400.0 * PI)).powi(2);
    let rel = ((got - want) / want).abs();
    check(rel <= 1e-12, format!("pathloss {got:e} vs {want:e}"))?;
    let dbm = watts_to_dbm(noise_power(200e3));
    check((dbm - -120.99).abs() <= 0.01, format!("noise {dbm} dBm"))?;
    Ok(format!("pathloss rel err {rel:.1e}, noise {dbm:.3} dBm"))
}

fn criterion_3() -> Outcome {
    let radio = RadioParams::default();
    let dipole = DipoleParams::default();
    let six = CandidateSet::for_dipoles(DipoleCount::Three);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut matched = 0;
    let mut total = 0;
    for _ in 0..1000 {
        let net = random_network(&mut rng, 4, 150.0);
        for i in 0..4 {
            let m1 = select_max_power(i, &net, &six, &radio, &dipole).map_err(|e| e.to_string())?;
            let m2 = select_max_slnr(i, &net, &six, &radio, &dipole).map_err(|e| e.to_string())?;
            let o1 = brute_argmax(&AntennaConfig::ALL, |c| net_power(&net, i, i, c, &radio));
            let o2 = brute_argmax(&AntennaConfig::ALL, |c| brute_slnr(&net, i, c, &radio));
            matched += usize::from(m1 == o1) + usize::from(m2 == o2);
            total += 2;
        }
    }
    check(matched == total, format!("{matched}/{total} decisions match"))?;
    Ok(format!("{matched}/{total} decisions match brute force"))
}

fn percentage_sweep() -> &'static SweepResult {
    static SWEEP: OnceLock<SweepResult> = OnceLock::new();
    SWEEP.get_or_init(|| {
        sweep_air_percentage(&base(), &Scheme::REFERENCE_SET, &[0.0, 25.0, 50.0, 75.0, 100.0], None).expect("sweep runs")
    })
}

fn criterion_4() -> Outcome {
    let r = percentage_sweep();
    let mut detail = Vec::new();
    for pct in [25.0, 50.0, 75.0] {
        let v = r.value_index(pct).unwrap();
        let rates = |s| r.sum_rates(v, r.scheme_index(s).unwrap());
        let (r1, r2, r3, r4) = (rates(ONE), rates(TWO), rates(THREE), rates(THREE_SLNR));
        for (name, hi, lo) in [("slnr-m1", &r4, &r3), ("m1-2dip", &r3, &r2), ("2dip-1dip", &r2, &r1)] {
            let (gap, lb) = lower_bound(hi, lo);
            check(lb > 0.0, format!("{pct}%: {name} gap {gap:.4}, 95% lower bound {lb:.4}"))?;
        }
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        detail.push(format!(
            "{pct}%: {:.3}>{:.3}>{:.3}>{:.3}",
            mean(&r4),
            mean(&r3),
            mean(&r2),
            mean(&r1)
        ));
    }
    Ok(detail.join(", "))
}

fn criterion_5() -> Outcome {
    let r = percentage_sweep();
    let s = r.scheme_index(TWO).unwrap();
    let at = |pct| r.sum_rates(r.value_index(pct).unwrap(), s);
    let peak = at(50.0);
    let mut detail = Vec::new();
    for edge in [0.0, 100.0] {
        let (gap, lb) = lower_bound(&peak, &at(edge));
        check(lb > 0.0, format!("50% vs {edge}%: gap {gap:.4}, lower bound {lb:.4}"))?;
        detail.push(format!("50% - {edge}% = {gap:.3}"));
    }
    Ok(detail.join(", "))
}

fn height_sweep() -> &'static SweepResult {
    static SWEEP: OnceLock<SweepResult> = OnceLock::new();
    SWEEP.get_or_init(|| sweep_height(&base(), &[ONE, TWO, THREE], &HEIGHTS, None).expect("sweep runs"))
}

/// Per-trial aerial-receiver averages of one power field.
fn aerial_powers(r: &SweepResult, v: usize, s: usize, interference: bool) -> Vec<f64> {
    r.records(v, s)
        .iter()
        .map(|rec| {
            let a = rec.receiver_averages(ReceiverFilter::Aerial).expect("50% aerial receivers");
            if interference {
                a.interference_power
            } else {
                a.desired_power
            }
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let r = height_sweep();
    for (s, scheme) in r.schemes.iter().enumerate() {
        for interference in [false, true] {
            for v in 0..HEIGHTS.len() - 1 {
                let lo = aerial_powers(r, v, s, interference);
                let hi = aerial_powers(r, v + 1, s, interference);
                let (gap, lb) = lower_bound(&lo, &hi);
                let what = if interference { "interference" } else { "desired" };
                check(
                    lb > 0.0,
                    format!("{scheme} {what} {}->{} m: drop {gap:e}, lower bound {lb:e}", HEIGHTS[v], HEIGHTS[v + 1]),
                )?;
            }
        }
    }
    let drop_db = |scheme| {
        let s = r.scheme_index(scheme).unwrap();
        let mean = |v| {
            let p = aerial_powers(r, v, s, false);
            p.iter().sum::<f64>() / p.len() as f64
        };
        10.0 * (mean(0) / mean(HEIGHTS.len() - 1)).log10()
    };
    let (one, three) = (drop_db(ONE), drop_db(THREE));
    check(one > three, format!("desired drop 50->300 m: 1-dipole {one:.2} dB vs 3-dipole {three:.2} dB"))?;
    Ok(format!("all consecutive drops significant; 50->300 m desired drop {one:.2} dB (1) vs {three:.2} dB (3)"))
}

/// Mean and standard error of per-trial least-squares slopes, per meter.
fn slope(r: &SweepResult, s: usize) -> (f64, f64) {
    let hbar = r.values.iter().sum::<f64>() / r.values.len() as f64;
    let sxx: f64 = r.values.iter().map(|h| (h - hbar).powi(2)).sum();
    let rates: Vec<Vec<f64>> = (0..r.values.len()).map(|v| r.sum_rates(v, s)).collect();
    let slopes: Vec<f64> = (0..rates[0].len())
        .map(|t| {
            let ybar = rates.iter().map(|y| y[t]).sum::<f64>() / rates.len() as f64;
            r.values.iter().zip(&rates).map(|(h, y)| (h - hbar) * (y[t] - ybar)).sum::<f64>() / sxx
        })
        .collect();
    paired_difference(&slopes, &vec![0.0; slopes.len()])
}

fn criterion_7() -> Outcome {
    let r = height_sweep();
    let (one, _) = slope(r, r.scheme_index(ONE).unwrap());
    let mut detail = vec![format!("1-dipole {:.2e}", one)];
    for scheme in [TWO, THREE] {
        let (m, se) = slope(r, r.scheme_index(scheme).unwrap());
        check(m - Z95 * se > 0.0, format!("{scheme} slope {m:e} +- {se:e}"))?;
        check(one.abs() < m, format!("|1-dipole slope| {one:e} not below {scheme} slope {m:e}"))?;
        detail.push(format!("{scheme} {m:.2e}"));
    }
    Ok(format!("slopes per m: {}", detail.join(", ")))
}

fn criterion_8() -> Outcome {
    let cfg = ScenarioConfig {
        air_tx_percentage: 100.0,
        ..base()
    };
    let pcts = [25.0, 50.0, 75.0];
    let r = sweep_air_tx(&cfg, &[ONE, THREE], &pcts, &[100.0], None).map_err(|e| e.to_string())?.remove(0);
    let gap = |v: usize| -> Vec<f64> {
        r.sum_rates(v, 1).iter().zip(r.sum_rates(v, 0)).map(|(a, b)| a - b).collect()
    };
    let (g25, g50, g75) = (gap(0), gap(1), gap(2));
    for (edge, g) in [(25.0, &g25), (75.0, &g75)] {
        let (d, lb) = lower_bound(&g50, g);
        check(lb > 0.0, format!("gap(50%) - gap({edge}%) = {d:.4}, lower bound {lb:.4}"))?;
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    Ok(format!("gaps 25/50/75%: {:.3}/{:.3}/{:.3}", mean(&g25), mean(&g50), mean(&g75)))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dipolenet")).args(args).output().map_err(|e| e.to_string())?;
    check(
        out.status.success(),
        format!("dipolenet {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)),
    )
}

fn compare_outputs(a: &Path, b: &Path) -> Result<usize, String> {
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(a.join("manifest.json")).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let outputs = manifest["outputs"].as_array().ok_or("manifest lists no outputs")?;
    for name in outputs {
        let name = name.as_str().ok_or("bad output entry")?;
        let x = std::fs::read(a.join(name)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.join(name)).map_err(|e| e.to_string())?;
        check(x == y, format!("{name} differs after replay"))?;
    }
    Ok(outputs.len())
}

fn criterion_9() -> Outcome {
    let tmp = std::env::temp_dir().join(format!("dipolenet-acceptance-{}", std::process::id()));
    let n = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).max(4).to_string();
    let mut files = 0;
    let result = (|| {
        for kind in ["air-percentage", "height", "air-tx"] {
            let first = tmp.join(kind).join("workers-1");
            let second = tmp.join(kind).join("workers-n");
            run_cli(&[
                "--workers", "1", "sweep", kind, "--all-schemes", "--trials", "500", "--seed", "9", "--out",
                first.to_str().unwrap(),
            ])?;
            let manifest = first.join("manifest.json");
            run_cli(&["--workers", &n, "replay", manifest.to_str().unwrap(), "--out", second.to_str().unwrap()])?;
            files += compare_outputs(&first, &second)?;
        }
        Ok::<_, String>(())
    })();
    let _ = std::fs::remove_dir_all(&tmp);
    result?;
    Ok(format!("{files} CSVs byte-identical between 1 and {n} workers via manifest replay"))
}

fn criterion_10() -> Outcome {
    let radio = RadioParams::default();
    let dipole = DipoleParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    // Pattern symmetries and the cross-dipole mean identity.
    for n in 0..2000 {
        let az = -PI + 2.0 * PI * (n as f64 + 0.5) / 2000.0;
        let polar = PI * ((n * 7919) % 2000) as f64 / 2000.0;
        let g = |c| power_gain(c, az, polar, &dipole);
        use AntennaConfig::*;
        check(power_gain(Z, az, polar, &dipole) == power_gain(Z, 0.0, polar, &dipole), "z depends on azimuth")?;
        check((g(X) - power_gain(Y, az + FRAC_PI_2, polar, &dipole)).abs() < 1e-12, "x/y rotation")?;
        for (xy, a, b) in [(XY, X, Y), (YZ, Y, Z), (XZ, X, Z)] {
            check((g(xy) - (g(a) + g(b)) / 2.0).abs() < 1e-12, format!("{xy} is not the mean of {a} and {b}"))?;
        }
    }

    // Nested candidate sets dominate in criterion value.
    for _ in 0..300 {
        let net = random_network(&mut rng, 4, 150.0);
        for strategy in [Strategy::MaxPower, Strategy::MaxSlnr] {
            let score = |d| {
                select_all(&net, strategy, &CandidateSet::for_dipoles(d), &radio, &dipole)
                    .expect("selection runs")
                    .per_transmitter_score
            };
            let (one, two, three) = (score(DipoleCount::One), score(DipoleCount::Two), score(DipoleCount::Three));
            for i in 0..4 {
                check(three[i] >= two[i] && two[i] >= one[i], "nested candidate dominance")?;
            }
        }
    }

    // SLNR sums the transmitter's row, SINR the receiver's column.
    let net = NetworkRealization::new(
        vec![Position3D::new(0.0, 0.0, 0.0), Position3D::new(60.0, 0.0, 0.0)],
        vec![Position3D::new(-40.0, 0.0, 0.0), Position3D::new(0.0, 0.0, 150.0)],
        vec![FadingDraw::UNIT; 4],
    )
    .map_err(|e| e.to_string())?;
    let z = AntennaConfig::Z;
    let h00 = net_power(&net, 0, 0, z, &radio);
    let s = slnr(0, &net, z, &radio, &dipole).map_err(|e| e.to_string())?;
    let m = compute_metrics(&net, &SelectionResult::uniform(z, 2), &radio, &dipole).map_err(|e| e.to_string())?;
    let want_slnr = h00 / (net_power(&net, 0, 1, z, &radio) + radio.noise_power);
    let want_sinr = h00 / (net_power(&net, 1, 0, z, &radio) + radio.noise_power);
    check(((s - want_slnr) / want_slnr).abs() < 1e-12, "slnr uses the wrong sum")?;
    check(((m.per_receiver_sinr[0] - want_sinr) / want_sinr).abs() < 1e-12, "sinr uses the wrong sum")?;
    check(s > 1e3 * m.per_receiver_sinr[0], "row and column sums coincide")?;

    // Fading and layout statistics.
    let n = 100_000;
    let mut fades = substream(SEED, StreamLabel::Fading, 0);
    let powers: Vec<f64> = (0..n).map(|_| dipolenet_core::channel::draw_fading(&mut fades).alpha.norm_sqr()).collect();
    let mean_power = powers.iter().sum::<f64>() / n as f64;
    check((0.98..=1.02).contains(&mean_power), format!("E|alpha|^2 = {mean_power}"))?;
    let d_fade = ks_statistic(powers, |x| 1.0 - (-x).exp());
    check(d_fade < ks_critical_1pct(n), format!("fading KS {d_fade}"))?;
    let cfg = base();
    let mut xs = Vec::with_capacity(n);
    for t in 0..(n / 8) as u64 {
        let net = generate_topology(&cfg, t).map_err(|e| e.to_string())?;
        xs.extend(net.tx_positions.iter().chain(&net.rx_positions).map(|p| p.x));
    }
    let d_x = ks_statistic(xs, |x| ((x + 100.0) / 200.0).clamp(0.0, 1.0));
    check(d_x < ks_critical_1pct(n), format!("layout KS {d_x}"))?;

    Ok(format!(
        "patterns, dominance, sum direction ok; KS fading {d_fade:.4}, layout {d_x:.4} < {:.4}",
        ks_critical_1pct(n)
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "analytic pattern values", Some(Duration::from_secs(1)), criterion_1),
        (2, "channel arithmetic", Some(Duration::from_secs(1)), criterion_2),
        (3, "selection oracle equivalence", Some(Duration::from_secs(10)), criterion_3),
        (4, "scheme ordering vs aerial share", Some(Duration::from_secs(300)), criterion_4),
        (5, "two-dipole peak at 50% aerial", None, criterion_5),
        (6, "aerial powers fall with height", None, criterion_6),
        (7, "sum-rate slope vs height", None, criterion_7),
        (8, "aerial-Tx gap peaks at 50%", None, criterion_8),
        (9, "determinism across workers and replay", None, criterion_9),
        (10, "property suites", None, criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {id:>2} [{tag}] {name}: {detail} ({:.2}s)", elapsed.as_secs_f64());
        failed += usize::from(outcome.is_err());
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
