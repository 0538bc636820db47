//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! run with `--nocapture` to see them.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use vdemask_core::compliance::{compliance_margin, SatelliteEmission};
use vdemask_core::criteria::{digital_interference_limit, CriterionLimit};
use vdemask_core::environment::{combine_noise_temperatures, noise_power};
use vdemask_core::mask::{compose_min, station_mask, theta_grid};
use vdemask_core::propagation::{free_space_loss, horizon_distance};
use vdemask_core::units::{from_db, to_db};
use vdemask_core::{
    AntennaPattern, Criterion, DecibelQuantity, MaskSample, PfdMask, Role, Scenario, UnitKind,
};

const KAPPA: f64 = 1.380_649e-23;
const C: f64 = 299_792_458.0;
const RE: f64 = 6_371_000.0;
const TOL: f64 = 0.5;
const EXACT: f64 = 1e-9;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn near(what: &str, got: f64, want: f64, tol: f64) -> Outcome {
    if (got - want).abs() <= tol {
        Ok(format!("{what} {got:.2}"))
    } else {
        Err(format!("{what} = {got:.4}, expected {want} ± {tol}"))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join(", "))
}

fn w(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn db(x: f64) -> f64 {
    10.0 * x.log10()
}

fn eval() -> vdemask_core::Evaluation {
    Scenario::default()
        .evaluate()
        .expect("default scenario is feasible")
}

fn system_noise() -> Outcome {
    let t = combine_noise_temperatures(&[30.0, 24.0, 31.0]).map_err(|e| e.to_string())?;
    let n = noise_power(t, 15e3).map_err(|e| e.to_string())?;
    all(vec![
        near("T", t, 34.0, TOL),
        near("N", n.value(), -153.0, TOL),
    ])
}

fn in_chain() -> Outcome {
    let e = eval();
    let mut parts = Vec::new();
    for role in Role::ALL {
        let lim = &e.role(role).in_limit;
        let get = |k: &str| lim.intermediate(k).map(|q| q.value()).unwrap_or(f64::NAN);
        parts.push(near(&format!("{role} rx"), get("i_receiver"), -159.0, TOL));
        parts.push(near(&format!("{role} ant"), get("i_antenna"), -156.0, TOL));
        parts.push(near(&format!("{role} 4k"), lim.i_max.value(), -162.0, TOL));
    }
    all(parts)
}

fn ecc_threshold() -> Outcome {
    let e = eval();
    all(vec![
        near("E(4 kHz)", e.ecc_field_reference.value(), 4.0, TOL),
        near("PFD", e.ecc_threshold.value(), -142.0, TOL),
    ])
}

fn geometry() -> Outcome {
    let e = eval();
    let fsl_34 = free_space_loss(34e3, 159.025e6).map_err(|e| e.to_string())?;
    all(vec![
        near(
            "base horizon km",
            horizon_distance(65.0).unwrap() / 1e3,
            29.0,
            TOL,
        ),
        near(
            "mobile horizon km",
            horizon_distance(2.0).unwrap() / 1e3,
            5.0,
            TOL,
        ),
        near("l(34 km)", fsl_34, 107.0, TOL),
        near("l(d)", e.path.free_space_loss, 107.0, TOL),
        near("L", e.path.total_loss, 141.0, TOL),
    ])
}

fn ci_limits() -> Outcome {
    let e = eval();
    let get = |role: Role, k: &str| {
        e.role(role)
            .ci_limit
            .intermediate(k)
            .map(|q| q.value())
            .unwrap_or(f64::NAN)
    };
    all(vec![
        near(
            "digital mobile",
            get(Role::Mobile, "i_max_digital"),
            -134.0,
            TOL,
        ),
        near(
            "digital base",
            get(Role::Base, "i_max_digital"),
            -148.0,
            TOL,
        ),
        near(
            "analog mobile",
            get(Role::Mobile, "i_max_analog"),
            -139.0,
            TOL,
        ),
        near("analog base", get(Role::Base, "i_max_analog"), -147.0, TOL),
        near(
            "combined mobile",
            e.mobile.ci_limit.i_max.value(),
            -136.0,
            TOL,
        ),
        near("combined base", e.base.ci_limit.i_max.value(), -145.0, TOL),
    ])
}

fn mask_ordering() -> Outcome {
    let e = eval();
    let ecc = e.envelope(Criterion::EccField).samples();
    let ci = e.envelope(Criterion::ItuCI).samples();
    let inn = e.envelope(Criterion::ItuIN).samples();
    for i in 0..ecc.len() {
        if !(ecc[i].pfd > ci[i].pfd && ci[i].pfd > inn[i].pfd) {
            return Err(format!("ordering broken at θ = {}", ecc[i].theta));
        }
    }
    let gap = ecc[0].pfd - inn[0].pfd;
    if (18.0..=25.0).contains(&gap) {
        Ok(format!(
            "ECC > C/I > I/N at {} angles, gap {gap:.2} dB",
            ecc.len()
        ))
    } else {
        Err(format!("gap {gap:.2} dB outside [18, 25]"))
    }
}

/// Recomputes every limit and mask sample in watts, kelvin and metres.
fn linear_oracle() -> Outcome {
    let e = eval();
    let mut worst: f64 = 0.0;
    let mut check = |what: &str, got: f64, want_linear: f64| -> Result<(), String> {
        let d = (got - db(want_linear)).abs();
        worst = worst.max(d);
        if d <= EXACT {
            Ok(())
        } else {
            Err(format!("{what}: {got} vs {}", db(want_linear)))
        }
    };

    let t = w(30.0) + w(24.0) + w(31.0);
    let n = KAPPA * t * 15e3;
    let lambda = C / 159.025e6;
    let d = (2.0 * RE * 65.0).sqrt() + (2.0 * RE * 2.0).sqrt();
    let loss = (4.0 * PI * d / lambda).powi(2) * w(34.0);

    check("T", e.system_temperature, t)?;
    check("loss", e.path.total_loss, loss)?;

    // ECC: field strength squared scales with bandwidth, PFD = E²/Z0
    let e_field = 10f64.powf(12.0 / 20.0) * 1e-6;
    let ecc_pfd = e_field * e_field * (4.0 / 25.0) / (120.0 * PI);
    check("ECC threshold", e.ecc_threshold.value(), ecc_pfd)?;

    let zeta_d = w(10.0) * 2.0;
    let digital = |c: f64| c * (1.0 / zeta_d - n / c);
    let analog = |c: f64| c * (1.0 / (w(12.0) - 1.0) - (n / c + w(-20.0)));

    struct Station {
        role: Role,
        gain: f64,
        feeder: f64,
    }
    let base = Station {
        role: Role::Base,
        gain: 8.15,
        feeder: 2.0,
    };
    let mobile = Station {
        role: Role::Mobile,
        gain: 2.15,
        feeder: 1.0,
    };
    // minimum powers from the counterpart transmitter, digital then analog
    let links = [(&base, &mobile, 1.0, 1.0), (&mobile, &base, 20.0, 5.0)];

    for (rx, tx, p_dig, p_ana) in links {
        let role = rx.role;
        let r = e.role(role);
        let path = w(tx.gain) / w(tx.feeder) / loss * w(rx.gain) / w(rx.feeder);
        let (c_dig, c_ana) = (p_dig * path, p_ana * path);
        let i_in = n * w(-6.0);
        let i_in_4k = i_in * w(3.0) * 4.0 / 15.0;
        let i_d = digital(c_dig);
        let i_a = analog(c_ana);
        let i_ci = i_d.min(i_a) * w(3.0);
        let get = |l: &CriterionLimit, k: &str| l.intermediate(k).unwrap().value();

        check("N", r.noise.value(), n)?;
        check("I/N rx", get(&r.in_limit, "i_receiver"), i_in)?;
        check("I/N ant", get(&r.in_limit, "i_antenna"), i_in * w(3.0))?;
        check("I/N 4k", r.in_limit.i_max.value(), i_in_4k)?;
        check("C_min digital", get(&r.ci_limit, "c_min_digital"), c_dig)?;
        check("C_min analog", get(&r.ci_limit, "c_min_analog"), c_ana)?;
        check("I digital", get(&r.ci_limit, "i_max_digital"), i_d)?;
        check("I analog", get(&r.ci_limit, "i_max_analog"), i_a)?;
        check("I combined", r.ci_limit.i_max.value(), i_ci)?;

        // Θ(θ) = 4π/λ² · ε · I / G(θ)
        let spread = 4.0 * PI / (lambda * lambda);
        for (k, s) in r.in_mask.samples().iter().enumerate() {
            let g = w(r.pattern.gain(s.theta).unwrap());
            check("I/N mask", s.pfd, spread * w(rx.feeder) * i_in_4k / g)?;
            let ci = r.ci_mask.samples()[k];
            check(
                "C/I mask",
                ci.pfd,
                spread * w(rx.feeder) * i_ci * 4.0 / 15.0 / g,
            )?;
            let ecc = r.ecc_mask.samples()[k];
            check("ECC mask", ecc.pfd, ecc_pfd * w(rx.gain) / g * w(3.0))?;
        }
    }
    Ok(format!(
        "all values within {EXACT:e} dB (worst {worst:.1e})"
    ))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 128,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn mask_on(values: &[f64]) -> PfdMask {
    let step = 90.0 / (values.len() - 1) as f64;
    let samples = values
        .iter()
        .enumerate()
        .map(|(i, &pfd)| MaskSample {
            theta: i as f64 * step,
            pfd,
        })
        .collect();
    PfdMask::new("m", 4e3, samples).unwrap()
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_vdemask")
}

fn vdemask(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(binary());
    cmd.args(args).env_remove("VDEMASK_CONFIG");
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    cmd.output().expect("run vdemask")
}

fn cli_reruns_identical() -> Result<(), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name);
    let config = p("scenario.toml");
    std::fs::write(&config, "[environment]\nmanmade_temp = 38\n").map_err(|e| e.to_string())?;

    for round in 0..2 {
        let svg = p(&format!("m{round}.svg"));
        let csv = p(&format!("m{round}.csv"));
        let gain = p(&format!("g{round}.csv"));
        let margins = p(&format!("c{round}.csv"));
        let mask = vdemask(
            &[
                "mask",
                "--out",
                csv.to_str().unwrap(),
                "--svg",
                svg.to_str().unwrap(),
                "--emit-gain",
                gain.to_str().unwrap(),
            ],
            Some(&config),
        );
        let check = vdemask(
            &[
                "check",
                "--criterion",
                "ci",
                "--sat-eirp",
                "-20",
                "--altitude-km",
                "600",
                "--out",
                margins.to_str().unwrap(),
            ],
            Some(&config),
        );
        let budget = vdemask(&["budget"], Some(&config));
        for out in [&mask, &check, &budget] {
            if !out.status.success() {
                return Err(format!(
                    "cli failed: {}",
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
        }
        std::fs::write(
            p(&format!("stdout{round}")),
            [check.stdout, budget.stdout].concat(),
        )
        .map_err(|e| e.to_string())?;
    }
    for (a, b) in [
        ("m0.svg", "m1.svg"),
        ("m0.csv", "m1.csv"),
        ("g0.csv", "g1.csv"),
        ("c0.csv", "c1.csv"),
        ("stdout0", "stdout1"),
    ] {
        let x = std::fs::read(p(a)).map_err(|e| e.to_string())?;
        let y = std::fs::read(p(b)).map_err(|e| e.to_string())?;
        if x != y || x.is_empty() {
            return Err(format!("{a} and {b} differ"));
        }
    }
    Ok(())
}

fn properties() -> Outcome {
    let pattern_base = AntennaPattern::omnidirectional(8.15, 0.7).unwrap();

    run_property("dB round trip", 1e-30f64..1e30, |x| {
        let back = from_db(to_db(x).unwrap());
        prop_assert!(((back - x) / x).abs() <= 1e-12);
        Ok(())
    })?;
    run_property(
        "rebandwidth composition",
        (-200.0f64..0.0, 1e2f64..1e6, 1e2f64..1e6, 1e2f64..1e6),
        |(v, b1, b2, b3)| {
            let q = DecibelQuantity::per_bandwidth(v, UnitKind::PowerDbw, b1).unwrap();
            let two = q.rebandwidth(b2).unwrap().rebandwidth(b3).unwrap();
            let one = q.rebandwidth(b3).unwrap();
            prop_assert!((two.value() - one.value()).abs() <= 1e-9);
            Ok(())
        },
    )?;
    let three = prop::collection::vec(
        (-200.0f64..-100.0, -200.0f64..-100.0, -200.0f64..-100.0),
        2..40,
    );
    run_property("compose_min", three, |rows| {
        let a = mask_on(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
        let b = mask_on(&rows.iter().map(|r| r.1).collect::<Vec<_>>());
        let c = mask_on(&rows.iter().map(|r| r.2).collect::<Vec<_>>());
        let ab = compose_min(&[a.clone(), b.clone()]).unwrap();
        let ba = compose_min(&[b.clone(), a.clone()]).unwrap();
        let abc = compose_min(&[ab.clone(), c.clone()]).unwrap();
        let a_bc =
            compose_min(&[a.clone(), compose_min(&[b.clone(), c.clone()]).unwrap()]).unwrap();
        let aa = compose_min(&[a.clone(), a.clone()]).unwrap();
        for i in 0..rows.len() {
            let exact = a.samples()[i].pfd.min(b.samples()[i].pfd);
            prop_assert_eq!(ab.samples()[i].pfd, exact);
            prop_assert_eq!(ba.samples()[i].pfd, exact);
            prop_assert_eq!(abc.samples()[i].pfd, a_bc.samples()[i].pfd);
            prop_assert_eq!(aa.samples()[i].pfd, a.samples()[i].pfd);
        }
        Ok(())
    })?;
    run_property(
        "mask + gain constant",
        (-180.0f64..-120.0, 0.0f64..5.0),
        |(i, feeder)| {
            let limit = CriterionLimit {
                criterion: Criterion::ItuIN,
                role: Role::Base,
                i_max: DecibelQuantity::per_bandwidth(i, UnitKind::PowerDbw, 4e3).unwrap(),
                intermediates: Vec::new(),
            };
            let grid = theta_grid(0.0, 90.0, 1.0).unwrap();
            let m = station_mask(&limit, &pattern_base, feeder, 1.885, &grid).unwrap();
            let k0 = m.samples()[0].pfd + pattern_base.gain(0.0).unwrap();
            for s in m.samples() {
                prop_assert!((s.pfd + pattern_base.gain(s.theta).unwrap() - k0).abs() <= 1e-9);
            }
            Ok(())
        },
    )?;
    run_property(
        "antenna monotonicity",
        (-5.0f64..20.0, 0.0f64..10.0, 0.0f64..90.0, 0.0f64..90.0),
        |(g0, k, a, b)| {
            let p = AntennaPattern::omnidirectional(g0, k).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(p.gain(hi).unwrap() <= p.gain(lo).unwrap() + 1e-12);
            Ok(())
        },
    )?;
    run_property(
        "digital C/I at least the C/(N+I) target",
        (-140.0f64..-100.0, -170.0f64..-150.0, 0.0f64..20.0),
        |(c, n, z)| {
            if let Ok(lim) = digital_interference_limit(c, n, z) {
                prop_assert!(lim.c_over_i >= z - 1e-12);
            }
            Ok(())
        },
    )?;
    let ci_mask = eval().ci_envelope;
    run_property(
        "margin affine in EIRP",
        (-40.0f64..10.0, -20.0f64..20.0),
        |(eirp, delta)| {
            let a =
                compliance_margin(&ci_mask, &SatelliteEmission::new(eirp, 600e3).unwrap()).unwrap();
            let b = compliance_margin(
                &ci_mask,
                &SatelliteEmission::new(eirp + delta, 600e3).unwrap(),
            )
            .unwrap();
            prop_assert!((b.min_margin - (a.min_margin - delta)).abs() <= 1e-9);
            Ok(())
        },
    )?;
    cli_reruns_identical()?;
    Ok("7 property suites and byte-identical CLI reruns".into())
}

fn infeasibility() -> Outcome {
    let mut s = Scenario::default();
    s.criteria.ebn0_required = 40.0;
    match s.evaluate() {
        Err(e) if e.is_infeasible() => {}
        Err(e) => return Err(format!("wrong error: {e}")),
        Ok(_) => return Err("evaluation succeeded".into()),
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("hard.toml");
    std::fs::write(&config, "[criteria]\nebn0_required = 40\n").map_err(|e| e.to_string())?;
    for args in [
        &["budget"][..],
        &["mask"],
        &[
            "check",
            "--criterion",
            "ci",
            "--sat-eirp",
            "-20",
            "--altitude-km",
            "600",
        ],
    ] {
        let out = vdemask(args, Some(&config));
        if out.status.code() != Some(2) {
            return Err(format!("{args:?}: exit {:?}", out.status.code()));
        }
        if !out.stdout.is_empty() {
            return Err(format!("{args:?}: printed output on infeasible scenario"));
        }
    }
    Ok("core error is Infeasible, CLI exits 2 with empty stdout".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Check; 9] = [
        ("system noise", system_noise),
        ("I/N chain", in_chain),
        ("ECC threshold", ecc_threshold),
        ("geometry", geometry),
        ("C/I limits", ci_limits),
        ("mask ordering", mask_ordering),
        ("linear-domain oracle", linear_oracle),
        ("property suites", properties),
        ("infeasibility", infeasibility),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
