use std::io::Write;

use serde::{Deserialize, Serialize};
use toroidal_core::lfun::ZeroList;
use toroidal_core::nfield::QuadraticField;
use toroidal_core::spectral::{Atom, Symmetry, WavePacket};
use toroidal_core::{Complex64, Error};

use crate::config::RunConfig;

pub const SCHEMA: u32 = 1;
pub const TOOL: &str = "toroidal";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn cx(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
    Equals,
}

/// One asserted identity with the residual actually measured.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub identity: String,
    pub measured: f64,
    pub relation: Relation,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(identity: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            identity: identity.into(),
            measured,
            relation: Relation::AtMost,
            tolerance,
            passed: measured <= tolerance,
        }
    }

    pub fn at_least(identity: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            identity: identity.into(),
            measured,
            relation: Relation::AtLeast,
            tolerance,
            passed: measured >= tolerance,
        }
    }

    pub fn equals(identity: impl Into<String>, measured: f64, expected: f64) -> Self {
        Check {
            identity: identity.into(),
            measured,
            relation: Relation::Equals,
            tolerance: expected,
            passed: measured == expected,
        }
    }

    pub fn holds(identity: impl Into<String>, ok: bool) -> Self {
        Check::equals(identity, if ok { 1.0 } else { 0.0 }, 1.0)
    }

    pub fn describe(&self) -> String {
        let rel = match self.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equals => "==",
        };
        format!(
            "{}: measured {:e}, required {rel} {:e}",
            self.identity, self.measured, self.tolerance
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Pole,
    OutOfWindow,
    Unsupported,
    InvalidInput,
    NoConvergence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub kind: ErrorKind,
    pub message: String,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        let kind = match e {
            Error::Pole { .. } => ErrorKind::Pole,
            Error::OutOfWindow { .. } => ErrorKind::OutOfWindow,
            Error::Unsupported(_) => ErrorKind::Unsupported,
            Error::InvalidInput(_) => ErrorKind::InvalidInput,
            Error::NoConvergence { .. } => ErrorKind::NoConvergence,
        };
        ErrorRecord {
            kind,
            message: e.to_string(),
        }
    }
}

/// Exit code for a numerical error: 3 for the precision window, 2 for arguments the
/// library rejects, 1 for everything that is a failed computation.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OutOfWindow { .. } => 3,
        Error::InvalidInput(_) | Error::Unsupported(_) => 2,
        Error::Pole { .. } | Error::NoConvergence { .. } => 1,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    pub result: serde_json::Value,
}

impl Report {
    pub fn new(config: RunConfig, result: serde_json::Value, checks: Vec<Check>) -> Self {
        Report {
            schema: SCHEMA,
            tool: TOOL,
            version: VERSION,
            config,
            passed: checks.iter().all(|c| c.passed),
            checks,
            error: None,
            result,
        }
    }

    pub fn failed(config: RunConfig, error: &Error) -> Self {
        Report {
            schema: SCHEMA,
            tool: TOOL,
            version: VERSION,
            config,
            passed: false,
            checks: Vec::new(),
            error: Some(error.into()),
            result: serde_json::Value::Null,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("report serializes");
        out.push(b'\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitRecord {
    pub a: String,
    pub b: String,
    pub norm: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldRecord {
    pub d: i64,
    pub h: usize,
    pub forms: Vec<[i64; 3]>,
    pub eps: Option<UnitRecord>,
    pub regulator: f64,
    pub e: u32,
    #[serde(rename = "cK")]
    pub ck: f64,
    #[serde(rename = "pK")]
    pub pk: [[i64; 2]; 2],
}

impl From<&QuadraticField> for FieldRecord {
    fn from(k: &QuadraticField) -> Self {
        FieldRecord {
            d: k.d,
            h: k.h,
            forms: k.classes.iter().map(|c| [c.form.a, c.form.b, c.form.c]).collect(),
            eps: k.eps.as_ref().map(|u| UnitRecord {
                a: u.a.to_string(),
                b: u.b.to_string(),
                norm: u.norm,
            }),
            regulator: k.regulator,
            e: k.e,
            ck: k.ck_constant(),
            pk: k.pk_matrix(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub gamma: f64,
    pub residual: f64,
    pub bracket: [f64; 2],
    pub suspect_multiple: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroListRecord {
    pub d: i64,
    pub chi: String,
    pub t_max: f64,
    pub tol: f64,
    pub zeros: Vec<ZeroRecord>,
    pub audit_count: usize,
    pub audit_ok: bool,
    pub central_value: f64,
}

impl From<&ZeroList> for ZeroListRecord {
    fn from(z: &ZeroList) -> Self {
        ZeroListRecord {
            d: z.d,
            chi: z.chi.clone(),
            t_max: z.t_max,
            tol: z.tol,
            zeros: z
                .zeros
                .iter()
                .map(|e| ZeroRecord {
                    gamma: e.gamma,
                    residual: e.residual,
                    bracket: [e.bracket.0, e.bracket.1],
                    suspect_multiple: e.suspect_multiple,
                })
                .collect(),
            audit_count: z.audit_count,
            audit_ok: z.audit_ok,
            central_value: z.central_value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomRecord {
    pub re_s: f64,
    pub im_s: f64,
    pub re_a: f64,
    pub im_a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryRecord {
    #[default]
    Raw,
    PlusNormalized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacketRecord {
    pub atoms: Vec<AtomRecord>,
    #[serde(default)]
    pub symmetry: SymmetryRecord,
}

impl From<&WavePacket> for PacketRecord {
    fn from(p: &WavePacket) -> Self {
        PacketRecord {
            atoms: p
                .atoms
                .iter()
                .map(|a| AtomRecord {
                    re_s: a.s.re,
                    im_s: a.s.im,
                    re_a: a.a.re,
                    im_a: a.a.im,
                })
                .collect(),
            symmetry: match p.symmetry {
                Symmetry::Raw => SymmetryRecord::Raw,
                Symmetry::PlusNormalized => SymmetryRecord::PlusNormalized,
            },
        }
    }
}

impl PacketRecord {
    pub fn to_packet(&self) -> toroidal_core::Result<WavePacket> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                s: Complex64::new(a.re_s, a.im_s),
                a: Complex64::new(a.re_a, a.im_a),
            })
            .collect();
        let mut p = WavePacket::new(atoms)?;
        p.symmetry = match self.symmetry {
            SymmetryRecord::Raw => Symmetry::Raw,
            SymmetryRecord::PlusNormalized => Symmetry::PlusNormalized,
        };
        Ok(p)
    }
}

/// One row of a grid evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridRow {
    pub x: f64,
    pub y: f64,
    pub re_s: f64,
    pub im_s: f64,
    pub re_e: f64,
    pub im_e: f64,
    pub err: f64,
}

pub const CSV_HEADER: [&str; 7] = ["x", "y", "re_s", "im_s", "re_e", "im_e", "err"];

pub fn write_csv(rows: &[GridRow], out: impl Write) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packet_round_trip() {
        let json = r#"{"atoms":[{"re_s":0.5,"im_s":6.0,"re_a":1.0,"im_a":-0.5}],"symmetry":"raw"}"#;
        let rec: PacketRecord = serde_json::from_str(json).unwrap();
        let p = rec.to_packet().unwrap();
        assert_eq!(p.atoms[0].s, Complex64::new(0.5, 6.0));
        assert_eq!(PacketRecord::from(&p), rec);
        let back = serde_json::to_string(&rec).unwrap();
        assert_eq!(back, json);
    }

    #[test]
    fn csv_has_fixed_header() {
        let row = GridRow {
            x: 0.0,
            y: 1.0,
            re_s: 2.0,
            im_s: 0.0,
            re_e: 2.5,
            im_e: 0.0,
            err: 1e-14,
        };
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,y,re_s,im_s,re_e,im_e,err"));
        assert_eq!(lines.next().unwrap().split(',').count(), 7);
    }

    #[test]
    fn check_relations() {
        assert!(Check::at_most("a", 1e-9, 1e-8).passed);
        assert!(!Check::at_least("b", 1e-3, 1e-2).passed);
        assert!(Check::holds("c", true).passed);
        assert!(!Check::at_most("nan", f64::NAN, 1.0).passed);
    }
}
