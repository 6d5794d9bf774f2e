use rayon::prelude::*;
use serde_json::{json, Value};
use toroidal_core::eis::{eisenstein, maass_selberg_check, selberg_transform, FdQuadrature, HPoint, HeatProfile};
use toroidal_core::lfun::find_zeros;
use toroidal_core::nfield::make_field;
use toroidal_core::periods::siegel_identity_check;
use toroidal_core::spectral::{central_epsilon, toroidality_test, trace_formula, trace_formula_kernel_path};
use toroidal_core::{Complex64, Error, Result};

use crate::config::{Command, Format, RunConfig, DEFAULT_TOL};
use crate::report::{cx, exit_code, write_csv, Check, FieldRecord, GridRow, PacketRecord, Report, ZeroListRecord};
use crate::suites::{period_table, run_suite, strip_grid, Suite};

/// What a run produced: exit code, the report bytes, and lines for the error stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub bytes: Vec<u8>,
    pub messages: Vec<String>,
}

enum Produced {
    Json(Value, Vec<Check>),
    Grid(Vec<GridRow>, Vec<Check>),
}

pub fn run(config: &RunConfig) -> Outcome {
    match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(config)),
            Err(e) => Outcome {
                code: 2,
                bytes: Vec::new(),
                messages: vec![format!("cannot start {n} worker threads: {e}")],
            },
        },
        None => execute(config),
    }
}

/// Report bytes of `verify --suite <suite>` on `threads` workers with the default tolerance.
pub fn verify_bytes(suite: Suite, d: Option<i64>, threads: usize) -> Vec<u8> {
    let config = RunConfig {
        command: Command::Verify { suite, d },
        tol: DEFAULT_TOL,
        format: Format::Json,
        out: None,
        threads: Some(threads),
    };
    run(&config).bytes
}

fn execute(config: &RunConfig) -> Outcome {
    let failures = |checks: &[Check]| -> Vec<String> {
        checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("failed: {}", c.describe()))
            .collect()
    };
    match produce(config) {
        Ok(Produced::Json(result, checks)) => {
            let messages = failures(&checks);
            let report = Report::new(config.clone(), result, checks);
            Outcome {
                code: if report.passed { 0 } else { 1 },
                bytes: report.to_bytes(),
                messages,
            }
        }
        Ok(Produced::Grid(rows, checks)) => {
            let messages = failures(&checks);
            let mut bytes = Vec::new();
            write_csv(&rows, &mut bytes).expect("writing to memory");
            Outcome {
                code: if messages.is_empty() { 0 } else { 1 },
                bytes,
                messages,
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            bytes: match config.format {
                Format::Json => Report::failed(config.clone(), &e).to_bytes(),
                Format::Csv => Vec::new(),
            },
            messages: vec![format!("error: {e}")],
        },
    }
}

fn produce(config: &RunConfig) -> Result<Produced> {
    let tol = config.tol;
    match &config.command {
        Command::Zeros { d, chi, t_max } => {
            let field = make_field(*d)?;
            let chi = chi.build(&field)?;
            let list = find_zeros(&field, &chi, *t_max, tol)?;
            let worst = list.zeros.iter().map(|z| z.residual).fold(0.0, f64::max);
            let checks = vec![
                Check::equals(
                    "argument-principle count = ordinates found",
                    list.zeros.len() as f64,
                    list.audit_count as f64,
                ),
                Check::at_most("|L(1/2 + iγ)| at every ordinate", worst, tol),
                Check::holds(
                    "no suspected multiple zero",
                    list.zeros.iter().all(|z| !z.suspect_multiple),
                ),
            ];
            Ok(Produced::Json(json!(ZeroListRecord::from(&list)), checks))
        }
        Command::Eis { s, x, y } => {
            let points: Vec<(f64, f64)> = y
                .points()
                .iter()
                .flat_map(|&yy| x.points().into_iter().map(move |xx| (xx, yy)))
                .collect();
            let rows = points
                .par_iter()
                .map(|&(xx, yy)| {
                    let e = eisenstein(HPoint::new(xx, yy)?, s.0)?;
                    Ok(GridRow {
                        x: xx,
                        y: yy,
                        re_s: s.0.re,
                        im_s: s.0.im,
                        re_e: e.value.re,
                        im_e: e.value.im,
                        err: e.error_estimate,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let worst = rows
                .iter()
                .map(|r| r.err / (1.0 + r.re_e.hypot(r.im_e)))
                .fold(0.0, f64::max);
            let checks = vec![Check::at_most("truncation error estimate, relative", worst, tol)];
            match config.format {
                Format::Csv => Ok(Produced::Grid(rows, checks)),
                Format::Json => Ok(Produced::Json(json!({ "rows": rows }), checks)),
            }
        }
        Command::Period { d, chi, s_grid } => {
            let field = make_field(*d)?;
            let chi = chi.build(&field)?;
            let grid: Vec<Complex64> = if s_grid.is_empty() {
                strip_grid()
            } else {
                s_grid.iter().map(|s| s.0).collect()
            };
            let table = period_table(*d, &chi, &grid)?;
            let worst = table.rel_errors.iter().copied().fold(0.0, f64::max);
            let checks = vec![
                Check::at_most("period = closed form, relative", worst, tol),
                Check::at_most("period / closed form constant", table.constant_fit.spread, tol),
            ];
            Ok(Produced::Json(json!(table), checks))
        }
        Command::Siegel { d, s_grid, class } => {
            let field = make_field(*d)?;
            let grid: Vec<Complex64> = if s_grid.is_empty() {
                vec![
                    Complex64::new(0.75, 0.0),
                    Complex64::new(2.0, 0.0),
                    Complex64::new(0.5, 3.0),
                ]
            } else {
                s_grid.iter().map(|s| s.0).collect()
            };
            let classes: Vec<usize> = match class {
                Some(i) => vec![*i],
                None => (0..field.h).collect(),
            };
            let jobs: Vec<(usize, Complex64)> = classes
                .iter()
                .flat_map(|&i| grid.iter().map(move |&s| (i, s)))
                .collect();
            let results = jobs
                .par_iter()
                .map(|&(i, s)| siegel_identity_check(&field, s, i))
                .collect::<Result<Vec<_>>>()?;
            let worst = results.iter().map(|r| r.rel_error).fold(0.0, f64::max);
            let rows: Vec<Value> = jobs
                .iter()
                .zip(&results)
                .map(|(&(i, s), r)| json!({ "class": i, "s": cx(s), "lhs": cx(r.lhs), "rhs": cx(r.rhs), "rel_error": r.rel_error }))
                .collect();
            Ok(Produced::Json(
                json!({ "d": d, "cases": rows }),
                vec![Check::at_most("Siegel identity, relative", worst, tol)],
            ))
        }
        Command::MaassSelberg { s1, s2, truncation } => {
            let m = maass_selberg_check(s1.0, s2.0, *truncation, &FdQuadrature::default())?;
            Ok(Produced::Json(
                json!({ "lhs": cx(m.lhs), "lhs_error": m.lhs_error, "rhs": cx(m.rhs), "rel_error": m.rel_error }),
                vec![Check::at_most(
                    "⟨Λ^T E(s1), Λ^T E(s2)⟩ = Maass-Selberg form, relative",
                    m.rel_error,
                    tol,
                )],
            ))
        }
        Command::Packet { d, chi, file, t_max } => {
            let text =
                std::fs::read_to_string(file).map_err(|e| Error::InvalidInput(format!("{}: {e}", file.display())))?;
            let record: PacketRecord =
                serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", file.display())))?;
            let packet = record.to_packet()?;
            let field = make_field(*d)?;
            let chi = chi.build(&field)?;
            let zeros = find_zeros(&field, &chi, *t_max, 1e-12)?;
            let r = toroidality_test(&packet, &field, &chi, &zeros, tol)?;
            let checks = vec![
                Check::at_most("|Π(packet)| / scale", r.relative_period(), tol),
                Check::holds("closed form and direct period agree", r.consistent),
                Check::holds("toroidal ⇔ spectrum in zeros", r.biconditional_holds),
            ];
            Ok(Produced::Json(
                json!({
                    "packet": record,
                    "zeros_t_max": t_max,
                    "period_closed_form": cx(r.period_closed_form),
                    "period_direct": cx(r.period_direct),
                    "direct_error": r.direct_error,
                    "scale": r.scale,
                    "is_toroidal": r.is_toroidal,
                    "spectrum_in_zeros": r.spectrum_in_zeros,
                }),
                checks,
            ))
        }
        Command::Trace {
            d,
            chi,
            t_max,
            tau,
            kernel_check,
            z,
        } => {
            let field = make_field(*d)?;
            let chi = chi.build(&field)?;
            let zeros = find_zeros(&field, &chi, *t_max, 1e-12)?;
            let eps = central_epsilon(&field, &chi)?;
            let tau = *tau;
            let u = |s: Complex64| ((s - 0.5) * (s - 0.5) * tau).exp();
            let spectral = trace_formula(&zeros, eps.epsilon, u, tol)?;
            let mut checks = vec![Check::at_most("ũ(1-s) = ũ(s)", spectral.symmetry_residual, 1e-8)];
            let mut result = json!({
                "zeros": ZeroListRecord::from(&zeros),
                "epsilon": eps.epsilon,
                "central_value": eps.value,
                "central_warning": eps.warning,
                "tau": tau,
                "value": cx(spectral.value),
                "terms": spectral.terms.iter().map(|&t| cx(t)).collect::<Vec<_>>(),
                "tail_estimate": spectral.tail_estimate,
            });
            if *kernel_check {
                let kernel = selberg_transform(HeatProfile::new(tau)?, 1.0)?;
                let other = trace_formula_kernel_path(&zeros, eps.epsilon, &kernel, HPoint::from_complex(z.0)?)?;
                result["kernel_path"] = json!(cx(other));
                checks.push(Check::at_most(
                    "eigenvalue path = kernel path",
                    (other - spectral.value).norm(),
                    tol,
                ));
            }
            Ok(Produced::Json(result, checks))
        }
        Command::Field { d } => Ok(Produced::Json(json!(FieldRecord::from(&make_field(*d)?)), Vec::new())),
        Command::Verify { suite, d } => {
            let out = run_suite(*suite, *d)?;
            Ok(Produced::Json(
                json!({ "suite": suite, "criterion": suite.number(), "data": out.data }),
                out.checks,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_args;
    use crate::config::tol_from_env;

    fn toroidal(args: &[&str]) -> Outcome {
        let argv = ["toroidal"].iter().chain(args).chain(&["--tol", "1e-8"]).copied();
        run(&parse_args(argv).expect("valid arguments"))
    }

    fn usage_code(args: &[&str]) -> (i32, String) {
        let e = parse_args(["toroidal"].iter().chain(args).copied()).unwrap_err();
        (e.exit_code(), e.render().to_string())
    }

    fn json(out: &Outcome) -> Value {
        serde_json::from_slice(&out.bytes).expect("report is JSON")
    }

    #[test]
    fn zero_scan_reports_four_ordinates() {
        let out = toroidal(&["zeros", "--d", "-4", "--t-max", "15"]);
        assert_eq!(out.code, 0);
        let r = json(&out);
        assert_eq!(r["schema"], 1);
        assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
        assert_eq!(r["config"]["command"], "zeros");
        assert_eq!(r["result"]["zeros"].as_array().unwrap().len(), 4);
        assert_eq!(r["result"]["audit_count"], 4);
        let g = r["result"]["zeros"][0]["gamma"].as_f64().unwrap();
        assert!((g - 6.0209489).abs() < 1e-6);
    }

    #[test]
    fn usage_errors_exit_with_two() {
        for args in [
            &["zeros", "--d", "-4", "--tol", "1"][..],
            &["field", "--d", "-12"],
            &["field", "--d", "-4", "--bogus"],
            &["maass-selberg", "--s1", "0.5,3", "--s2", "0.5,-3", "-T", "1"],
            &["eis", "--s", "2", "--y", "-1:1:3"],
            &["zeros", "--d", "-4", "--format", "csv"],
            &["zeros", "--d", "-4", "--threads", "0"],
        ] {
            let (code, text) = usage_code(args);
            assert_eq!(code, 2, "{args:?}");
            assert!(text.contains("Usage"), "{args:?}");
        }
        // -7 is a fundamental discriminant
        let out = toroidal(&["field", "--d", "-7"]);
        assert_eq!(out.code, 0);
        let r = json(&out);
        assert_eq!(r["result"]["h"], 1);
        assert_eq!(r["result"]["forms"][0], json!([1, 1, 2]));
    }

    #[test]
    fn tolerance_from_environment() {
        assert_eq!(tol_from_env(None), Ok(DEFAULT_TOL));
        assert_eq!(tol_from_env(Some("1e-10".into())), Ok(1e-10));
        assert!(tol_from_env(Some("tight".into())).is_err());
    }

    #[test]
    fn siegel_suite_passes_for_gaussian_field() {
        let out = toroidal(&["verify", "--suite", "siegel", "--d", "-4"]);
        assert_eq!(out.code, 0);
        let r = json(&out);
        assert_eq!(r["passed"], true);
        for c in r["checks"].as_array().unwrap() {
            assert!(c["measured"].as_f64().unwrap() < 1e-6);
        }
    }

    #[test]
    fn packets_on_and_off_the_zeros() {
        let dir = tempfile::tempdir().unwrap();
        let off = dir.path().join("off.json");
        std::fs::write(
            &off,
            r#"{"atoms":[{"re_s":0.75,"im_s":0.0,"re_a":1.0,"im_a":0.0}],"symmetry":"raw"}"#,
        )
        .unwrap();
        let out = toroidal(&[
            "packet",
            "--file",
            off.to_str().unwrap(),
            "--d",
            "-4",
            "--chi",
            "trivial",
        ]);
        assert_eq!(out.code, 1);
        assert!(out.messages[0].contains("|Π(packet)| / scale"), "{:?}", out.messages);
        assert_eq!(json(&out)["result"]["is_toroidal"], false);

        let zeros = json(&toroidal(&["zeros", "--d", "-4", "--t-max", "12"]));
        let g = zeros["result"]["zeros"][1]["gamma"].as_f64().unwrap();
        let on = dir.path().join("on.json");
        let packet = format!(r#"{{"atoms":[{{"re_s":0.5,"im_s":{g},"re_a":2.0,"im_a":-1.0}}],"symmetry":"raw"}}"#);
        std::fs::write(&on, packet).unwrap();
        let out = toroidal(&["packet", "--file", on.to_str().unwrap(), "--d", "-4"]);
        assert_eq!(out.code, 0, "{:?}", out.messages);
        assert_eq!(json(&out)["result"]["is_toroidal"], true);

        let out = toroidal(&[
            "packet",
            "--file",
            dir.path().join("missing.json").to_str().unwrap(),
            "--d",
            "-4",
        ]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn grid_csv_and_precision_window() {
        let out = toroidal(&["eis", "--s", "2", "--x", "0:0.5:2", "--y", "1:2:3", "--format", "csv"]);
        assert_eq!(out.code, 0);
        let mut rows = csv::Reader::from_reader(&out.bytes[..]);
        assert_eq!(
            rows.headers().unwrap(),
            vec!["x", "y", "re_s", "im_s", "re_e", "im_e", "err"]
        );
        let records: Vec<csv::StringRecord> = rows.records().map(|r| r.unwrap()).collect();
        assert_eq!(records.len(), 6);
        // E(i, 2), confirmed against the coprime lattice sum in the core tests
        let e: f64 = records[0][4].parse().unwrap();
        assert!((e - 2.7842015453).abs() < 1e-9);

        let out = toroidal(&["eis", "--s", "0.5,45"]);
        assert_eq!(out.code, 3);
        assert_eq!(json(&out)["error"]["kind"], "out-of-window");
    }

    #[test]
    fn period_and_maass_selberg_commands() {
        let out = toroidal(&[
            "period",
            "--d",
            "-20",
            "--chi",
            "genus:-4,5",
            "--s",
            "0.3,2",
            "--s",
            "2",
        ]);
        assert_eq!(out.code, 0);
        let r = json(&out);
        for key in ["d", "chi", "s_grid", "lhs", "rhs", "rel_errors", "constant_fit"] {
            assert!(!r["result"][key].is_null(), "{key}");
        }
        let out = toroidal(&["maass-selberg", "--s1", "0.5,3", "--s2", "0.5,-5", "-T", "20"]);
        assert_eq!(out.code, 0);
        // real fields with h > 1 are outside the geodesic code
        let out = toroidal(&["period", "--d", "40", "--s", "2"]);
        assert_eq!(out.code, 2);
        assert_eq!(json(&out)["error"]["kind"], "unsupported");
    }

    #[test]
    fn trace_paths_agree() {
        let out = toroidal(&["trace", "--d", "-4", "--t-max", "12", "--tau", "0.2", "--kernel-check"]);
        assert_eq!(out.code, 0, "{:?}", out.messages);
        let r = json(&out);
        assert_eq!(r["result"]["epsilon"], false);
        assert!(!r["result"]["kernel_path"].is_null());
    }

    #[test]
    fn reports_do_not_depend_on_threads() {
        let a = toroidal(&["verify", "--suite", "siegel", "--threads", "1"]);
        let b = toroidal(&["verify", "--suite", "siegel", "--threads", "4"]);
        assert_eq!(a.code, 0);
        assert_eq!(a.bytes, b.bytes);
    }
}
