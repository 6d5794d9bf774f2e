use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use toroidal_core::lfun::HeckeCharacter;
use toroidal_core::nfield::{is_fundamental_discriminant, QuadraticField};
use toroidal_core::Complex64;

use crate::suites::Suite;

/// Overrides the default tolerance when no `--tol` is given.
pub const TOL_ENV: &str = "TOROIDAL_TOL";
pub const DEFAULT_TOL: f64 = 1e-8;
pub const TOL_RANGE: (f64, f64) = (1e-12, 1e-3);
pub const MAX_GRID: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiSpec {
    Trivial,
    Genus(i64, i64),
}

impl ChiSpec {
    pub fn build(self, field: &QuadraticField) -> toroidal_core::Result<HeckeCharacter> {
        match self {
            ChiSpec::Trivial => Ok(HeckeCharacter::trivial(field)),
            ChiSpec::Genus(d1, d2) => HeckeCharacter::genus(field, d1.min(d2), d1.max(d2)),
        }
    }
}

impl FromStr for ChiSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "trivial" {
            return Ok(ChiSpec::Trivial);
        }
        let rest = s
            .strip_prefix("genus:")
            .ok_or_else(|| format!("expected `trivial` or `genus:<d1>,<d2>`, got `{s}`"))?;
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| format!("expected `genus:<d1>,<d2>`, got `{s}`"))?;
        let parse = |v: &str| v.trim().parse::<i64>().map_err(|e| format!("`{v}`: {e}"));
        Ok(ChiSpec::Genus(parse(a)?, parse(b)?))
    }
}

impl fmt::Display for ChiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiSpec::Trivial => write!(f, "trivial"),
            ChiSpec::Genus(a, b) => write!(f, "genus:{a},{b}"),
        }
    }
}

impl Serialize for ChiSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// A complex parameter written `re` or `re,im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SParam(pub Complex64);

impl FromStr for SParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
        let (re, im) = match s.split_once(',') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => (parse(s)?, 0.0),
        };
        if !re.is_finite() || !im.is_finite() {
            return Err(format!("`{s}` is not finite"));
        }
        Ok(SParam(Complex64::new(re, im)))
    }
}

impl Serialize for SParam {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(ser)
    }
}

/// `start:end:count`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Axis {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let h = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + h * i as f64).collect()
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("expected `start:end:count`, got `{s}`"));
        };
        let f = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
        let count = n.trim().parse::<usize>().map_err(|e| format!("`{n}`: {e}"))?;
        let (start, end) = (f(a)?, f(b)?);
        if count == 0 || !start.is_finite() || !end.is_finite() {
            return Err(format!("bad axis `{s}`"));
        }
        Ok(Axis { start, end, count })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Zeros {
        d: i64,
        chi: ChiSpec,
        t_max: f64,
    },
    Eis {
        s: SParam,
        x: Axis,
        y: Axis,
    },
    Period {
        d: i64,
        chi: ChiSpec,
        s_grid: Vec<SParam>,
    },
    Siegel {
        d: i64,
        s_grid: Vec<SParam>,
        class: Option<usize>,
    },
    MaassSelberg {
        s1: SParam,
        s2: SParam,
        truncation: f64,
    },
    Packet {
        d: i64,
        chi: ChiSpec,
        #[serde(skip)]
        file: PathBuf,
        t_max: f64,
    },
    Trace {
        d: i64,
        chi: ChiSpec,
        t_max: f64,
        tau: f64,
        kernel_check: bool,
        z: SParam,
    },
    Field {
        d: i64,
    },
    Verify {
        suite: Suite,
        d: Option<i64>,
    },
}

/// A validated run. Output path and thread count are excluded from reports so that
/// the bytes do not depend on them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub tol: f64,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
}

pub fn default_tol() -> Result<f64, String> {
    tol_from_env(std::env::var(TOL_ENV).ok())
}

pub fn tol_from_env(value: Option<String>) -> Result<f64, String> {
    match value {
        Some(v) => v.trim().parse::<f64>().map_err(|e| format!("{TOL_ENV}=`{v}`: {e}")),
        None => Ok(DEFAULT_TOL),
    }
}

pub fn check_discriminant(d: i64) -> Result<(), String> {
    if is_fundamental_discriminant(d) {
        Ok(())
    } else {
        Err(format!("{d} is not a fundamental discriminant"))
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        let (lo, hi) = TOL_RANGE;
        if !(self.tol >= lo && self.tol <= hi) {
            return Err(format!("tolerance {} outside [{lo:e}, {hi:e}]", self.tol));
        }
        if self.threads == Some(0) {
            return Err("--threads must be positive".into());
        }
        if self.format == Format::Csv && !matches!(self.command, Command::Eis { .. }) {
            return Err("csv output is only available for `eis`".into());
        }
        match &self.command {
            Command::Zeros { d, .. } | Command::Packet { d, .. } | Command::Trace { d, .. } | Command::Field { d } => {
                check_discriminant(*d)
            }
            Command::Period { d, s_grid, .. } | Command::Siegel { d, s_grid, .. } => {
                check_discriminant(*d)?;
                check_grid(s_grid.len().max(1))
            }
            Command::Verify { d: Some(d), .. } => check_discriminant(*d),
            Command::Eis { x, y, .. } => {
                check_grid(x.count.saturating_mul(y.count))?;
                if y.start.min(y.end) <= 0.0 {
                    return Err("y must stay positive".into());
                }
                Ok(())
            }
            Command::MaassSelberg { truncation, .. } => {
                if *truncation > 1.0 {
                    Ok(())
                } else {
                    Err("truncation height must exceed 1".into())
                }
            }
            Command::Verify { d: None, .. } => Ok(()),
        }
    }
}

fn check_grid(n: usize) -> Result<(), String> {
    if n == 0 || n > MAX_GRID {
        Err(format!("grid of {n} points not in [1, {MAX_GRID}]"))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_parameters() {
        assert_eq!("trivial".parse::<ChiSpec>().unwrap(), ChiSpec::Trivial);
        assert_eq!("genus:-4,5".parse::<ChiSpec>().unwrap(), ChiSpec::Genus(-4, 5));
        assert!("genus:-4".parse::<ChiSpec>().is_err());
        assert_eq!("0.5,-3".parse::<SParam>().unwrap().0, Complex64::new(0.5, -3.0));
        assert_eq!("2".parse::<SParam>().unwrap().0, Complex64::new(2.0, 0.0));
        let a: Axis = "-0.5:0.5:3".parse().unwrap();
        assert_eq!(a.points(), vec![-0.5, 0.0, 0.5]);
        assert!("1:2".parse::<Axis>().is_err());
    }
}
