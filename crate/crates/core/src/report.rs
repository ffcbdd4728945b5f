//! Command pipelines and their reports.
//!
//! Each pipeline returns a serialisable report together with its verdict.
//! Reports contain no timings or addresses, so identical inputs give
//! byte-identical JSON.

use serde::Serialize;
use serde_json::Value;

use crate::derivations::st::StContext;
use crate::derivations::theorem::{
    compute_spaces, verify_main_theorem, DerivationDims, DerivationReport,
};
use crate::einfty::{EChoice, EInftyDims, EInftyReport, IsoReport};
use crate::error::Result;
use crate::instance::Instance;
use crate::jordan::{jordan_suite, JordanReport};
use crate::osp::{check_e_identities, EIdentityReport};
use crate::par::Execution;

/// Seeded random tuples per identity in `verify`.
pub const IDENTITY_SAMPLES: usize = 1000;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub einfty: EInftyReport,
    pub e_identities: EIdentityReport,
    /// Present when `E = eosp(q)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso_to_eosp_qinf: Option<IsoReport>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.einfty.all_pass()
            && self.e_identities.all_pass()
            && self
                .iso_to_eosp_qinf
                .as_ref()
                .map_or(true, IsoReport::is_isomorphism)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsReport {
    pub einfty: EInftyDims,
    pub derivations: DerivationDims,
}

/// The envelope printed by every command.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub command: &'static str,
    pub pass: bool,
    #[serde(flatten)]
    pub body: T,
}

pub fn run_verify(inst: &Instance, seed: u64, exec: Execution) -> Result<(VerifyReport, bool)> {
    let l = &inst.einfty;
    let iso = match l.choice() {
        EChoice::Eosp => Some(l.iso_to_eosp_qinf(exec)?),
        _ => None,
    };
    let report = VerifyReport {
        einfty: l.report(exec),
        e_identities: check_e_identities(&inst.ops, IDENTITY_SAMPLES, seed, exec),
        iso_to_eosp_qinf: iso,
    };
    let pass = report.all_pass();
    Ok((report, pass))
}

pub fn run_derive(inst: &Instance, seed: u64, exec: Execution) -> Result<(DerivationReport, bool)> {
    let report = verify_main_theorem(&inst.einfty, inst.blocks.clone(), seed, exec)?;
    let pass = report.all_pass();
    Ok((report, pass))
}

pub fn run_jordan(inst: &Instance, seed: u64, exec: Execution) -> Result<(JordanReport, bool)> {
    let ctx = StContext::from_einfty(&inst.einfty)?;
    let report = jordan_suite(&ctx, seed, exec)?;
    let pass = report.all_pass();
    Ok((report, pass))
}

pub fn run_dims(inst: &Instance, exec: Execution) -> Result<(DimsReport, bool)> {
    let l = &inst.einfty;
    let ctx = StContext::from_einfty(l)?;
    let spaces = compute_spaces(l, &ctx, exec)?;
    Ok((
        DimsReport {
            einfty: l.dims(),
            derivations: spaces.dims(),
        },
        true,
    ))
}

/// Deterministic pretty JSON.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialise")
}

/// Indented `key: value` rendering of a JSON report.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialise");
    let mut out = String::new();
    render(&v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("n/a".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items
                .iter()
                .map(|i| scalar(i).unwrap_or_default())
                .collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                match scalar(child) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(child, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                match scalar(child) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render(child, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering_nests_and_flags_failures() {
        let v = json!({"pass": false, "dims": {"L": 10, "E": [1, 2]}, "rows": [{"a": true}]});
        let t = to_text(&v);
        assert!(t.contains("pass: false"));
        assert!(t.contains("dims:\n  E: [1, 2]\n  L: 10\n"));
        assert!(t.contains("rows:\n  [0]\n    a: true\n"));
    }
}
