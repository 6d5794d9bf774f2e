use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};

use crate::config::{default_tol, Axis, ChiSpec, Command, Format, RunConfig, SParam, TOL_ENV};
use crate::suites::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "toroidal",
    version,
    about = "Eisenstein series, toroidal periods and Hecke L-functions of quadratic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Worker threads for grid and scan parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Tolerance in [1e-12, 1e-3]. Defaults to $TOROIDAL_TOL, else 1e-8.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Zeros of L(1/2 + it, χ) on (0, t_max] with an argument-principle audit.
    Zeros {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value = "trivial")]
        chi: ChiSpec,
        #[arg(long = "t-max", default_value_t = 15.0)]
        t_max: f64,
    },
    /// E(z, s) on a grid; CSV columns x,y,re_s,im_s,re_e,im_e,err.
    Eis {
        /// `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        s: SParam,
        /// `start:end:count`.
        #[arg(long, allow_hyphen_values = true, default_value = "-0.5:0.5:5")]
        x: Axis,
        #[arg(long, default_value = "1:2:5")]
        y: Axis,
    },
    /// Torus periods of E(·, s) against their closed form.
    Period {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value = "trivial")]
        chi: ChiSpec,
        /// Repeatable; a 10-point strip grid when absent.
        #[arg(long = "s", allow_hyphen_values = true)]
        s: Vec<SParam>,
    },
    /// Σ_χ χ(A) H(s, χ) L(s, χ) against the Epstein zeta function of a class.
    Siegel {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long = "s", allow_hyphen_values = true)]
        s: Vec<SParam>,
        #[arg(long)]
        class: Option<usize>,
    },
    /// Inner product of truncated Eisenstein series against the Maass-Selberg form.
    MaassSelberg {
        #[arg(long, allow_hyphen_values = true)]
        s1: SParam,
        #[arg(long, allow_hyphen_values = true)]
        s2: SParam,
        /// Truncation height T > 1.
        #[arg(long, short = 'T', default_value_t = 10.0)]
        truncation: f64,
    },
    /// Toroidality of a wave packet read from JSON.
    Packet {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value = "trivial")]
        chi: ChiSpec,
        #[arg(long = "t-max", default_value_t = 30.0)]
        t_max: f64,
    },
    /// Trace sum over zeros for the heat test function e^{τ(s-1/2)²}.
    Trace {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value = "trivial")]
        chi: ChiSpec,
        #[arg(long = "t-max", default_value_t = 30.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.05)]
        tau: f64,
        /// Recompute every term from the kernel action on E(·, 1/2 + iγ).
        #[arg(long)]
        kernel_check: bool,
        /// Base point of the kernel action.
        #[arg(long, default_value = "0.3,1.4")]
        z: SParam,
    },
    /// Field data: class forms, unit, regulator, c_K, P_K.
    Field {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, allow_negative_numbers = true)]
        d: Option<i64>,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> clap::Error {
    Cli::command().error(ErrorKind::ValueValidation, msg)
}

/// Parses and validates the command line. Errors carry usage text and exit code 2;
/// `--help` and `--version` come back as errors with exit code 0.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let tol = match cli.tol {
        Some(t) => t,
        None => default_tol().map_err(usage_error)?,
    };
    let command = match cli.command {
        Cmd::Zeros { d, chi, t_max } => Command::Zeros { d, chi, t_max },
        Cmd::Eis { s, x, y } => Command::Eis { s, x, y },
        Cmd::Period { d, chi, s } => Command::Period { d, chi, s_grid: s },
        Cmd::Siegel { d, s, class } => Command::Siegel { d, s_grid: s, class },
        Cmd::MaassSelberg { s1, s2, truncation } => Command::MaassSelberg { s1, s2, truncation },
        Cmd::Packet { file, d, chi, t_max } => Command::Packet { d, chi, file, t_max },
        Cmd::Trace {
            d,
            chi,
            t_max,
            tau,
            kernel_check,
            z,
        } => Command::Trace {
            d,
            chi,
            t_max,
            tau,
            kernel_check,
            z,
        },
        Cmd::Field { d } => Command::Field { d },
        Cmd::Verify { suite, d } => Command::Verify { suite, d },
    };
    let config = RunConfig {
        command,
        tol,
        format: cli.format,
        out: cli.out,
        threads: cli.threads,
    };
    config.validate().map_err(|msg| {
        if cli.tol.is_none() && msg.starts_with("tolerance") {
            usage_error(format!("{msg} (from {TOL_ENV})"))
        } else {
            usage_error(msg)
        }
    })?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_scan_config() {
        let c = parse_args(["toroidal", "zeros", "--d", "-4", "--t-max", "15", "--tol", "1e-8"]).unwrap();
        assert_eq!(
            c.command,
            Command::Zeros {
                d: -4,
                chi: ChiSpec::Trivial,
                t_max: 15.0
            }
        );
        assert_eq!(c.tol, 1e-8);
    }

    #[test]
    fn bounds_and_discriminants() {
        let e = parse_args(["toroidal", "zeros", "--d", "-4", "--tol", "1"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(parse_args(["toroidal", "field", "--d", "-7", "--tol", "1e-8"]).is_ok());
        let e = parse_args(["toroidal", "field", "--d", "-6", "--tol", "1e-8"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = parse_args(["toroidal", "field", "--d", "-4", "--bogus"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn suites_and_characters() {
        let c = parse_args(["toroidal", "verify", "--suite", "maass-selberg", "--tol", "1e-8"]).unwrap();
        assert_eq!(
            c.command,
            Command::Verify {
                suite: Suite::MaassSelberg,
                d: None
            }
        );
        let c = parse_args([
            "toroidal",
            "period",
            "--d",
            "-20",
            "--chi",
            "genus:-4,5",
            "--s",
            "0.5,-3",
            "--tol",
            "1e-8",
        ])
        .unwrap();
        match c.command {
            Command::Period { chi, s_grid, .. } => {
                assert_eq!(chi, ChiSpec::Genus(-4, 5));
                assert_eq!(s_grid.len(), 1);
            }
            other => panic!("{other:?}"),
        }
    }
}
