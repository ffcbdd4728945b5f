//! Instance files: a coefficient algebra, a quadratic form on a free module,
//! a choice of `E` and optionally a block partition of the generators.
//!
//! ```json
//! {
//!   "name": "so5",
//!   "form": {
//!     "algebra": "Q",
//!     "degrees": [0, 0, 0],
//!     "gram": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
//!   },
//!   "E": "eosp"
//! }
//! ```
//!
//! `algebra` is a preset name (`Q`, `Geps`, `G<n>`, `QtmodN:<m>`) or a table
//! `{dim, degrees, unit, sc: [[k, l, m, "p/q"], ...]}`. A Gram entry is a
//! scalar (a multiple of `1`) or a coefficient vector of length `dim A`;
//! rationals may be integers or strings such as `"-3/2"`. `E` is `"eosp"`,
//! `"osp"` or `{"span": [matrix, ...]}` with `D×D` matrices over the
//! ℚ-basis of `M`.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::derivations::decomp::Blocks;
use crate::einfty::{EChoice, EInfty};
use crate::error::{Error, Result};
use crate::osp::FormOps;
use crate::par::Execution;
use crate::parity::Parity;
use crate::solver::{parse_rational, Q};
use crate::supermodule::{FreeSuperModule, QuadraticForm};
use crate::superring::{presets, SuperAlgebraTable};

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Scalar(RawNumber),
    Vector(Vec<RawNumber>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAlgebra {
    Preset(String),
    Table(serde_json::Value),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    algebra: RawAlgebra,
    #[serde(default)]
    rank: Option<usize>,
    degrees: Vec<Parity>,
    gram: Vec<Vec<RawEntry>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawE {
    Named(String),
    Span { span: Vec<Vec<Vec<RawNumber>>> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlocks {
    n: Vec<usize>,
    #[serde(default)]
    p: Vec<usize>,
    #[serde(default)]
    r: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    description: Option<String>,
    form: RawForm,
    #[serde(rename = "E", default)]
    e: Option<RawE>,
    #[serde(default)]
    blocks: Option<RawBlocks>,
}

/// A parsed, shape-checked instance. Mathematical validity (table axioms,
/// form axioms, closure of `E`) is checked when the objects are built.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub name: Option<String>,
    pub description: Option<String>,
    pub algebra: SuperAlgebraTable,
    pub degrees: Vec<Parity>,
    pub gram: Vec<Vec<Vec<Q>>>,
    pub e: EChoice,
    pub blocks: Option<(Vec<usize>, Vec<usize>, Vec<usize>)>,
}

fn number(n: &RawNumber, field: &str) -> Result<Q> {
    match n {
        RawNumber::Int(i) => Ok(Q::from_integer(i128::from(*i))),
        RawNumber::Text(s) => {
            parse_rational(s).map_err(|_| Error::Parse(format!("{field}: not a rational: {s:?}")))
        }
    }
}

impl InstanceSpec {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawInstance =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let algebra = match &raw.form.algebra {
            RawAlgebra::Preset(name) => presets::by_name(name)
                .map_err(|_| Error::Parse(format!("form.algebra: unknown preset {name:?}")))?,
            RawAlgebra::Table(v) => SuperAlgebraTable::from_json_value(v)
                .map_err(|e| Error::Parse(format!("form.algebra: {e}")))?,
        };
        let d = algebra.dim();
        let rank = raw.form.degrees.len();
        if let Some(r) = raw.form.rank {
            if r != rank {
                return Err(Error::Parse(format!(
                    "form.rank is {r} but form.degrees has {rank} entries"
                )));
            }
        }
        if raw.form.gram.len() != rank {
            return Err(Error::Parse(format!(
                "form.gram has {} rows, expected {rank}",
                raw.form.gram.len()
            )));
        }
        let unit = algebra.unit_index();
        let mut gram = Vec::with_capacity(rank);
        for (i, row) in raw.form.gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::Parse(format!(
                    "form.gram[{i}] has {} entries, expected {rank}",
                    row.len()
                )));
            }
            let mut out_row = Vec::with_capacity(rank);
            for (j, entry) in row.iter().enumerate() {
                let field = format!("form.gram[{i}][{j}]");
                let coeffs = match entry {
                    RawEntry::Scalar(n) => {
                        let mut v = vec![Q::from_integer(0); d];
                        v[unit] = number(n, &field)?;
                        v
                    }
                    RawEntry::Vector(v) => {
                        if v.len() != d {
                            return Err(Error::Parse(format!(
                                "{field} has length {}, expected {d}",
                                v.len()
                            )));
                        }
                        v.iter().map(|x| number(x, &field)).collect::<Result<_>>()?
                    }
                };
                out_row.push(coeffs);
            }
            gram.push(out_row);
        }
        let dm = rank * d;
        let e = match raw.e {
            None => EChoice::Eosp,
            Some(RawE::Named(s)) => match s.as_str() {
                "eosp" => EChoice::Eosp,
                "osp" => EChoice::Osp,
                other => {
                    return Err(Error::Parse(format!(
                        "E: expected \"eosp\", \"osp\" or a span, got {other:?}"
                    )))
                }
            },
            Some(RawE::Span { span }) => {
                let mut ops = Vec::with_capacity(span.len());
                for (k, mat) in span.iter().enumerate() {
                    if mat.len() != dm || mat.iter().any(|r| r.len() != dm) {
                        return Err(Error::Parse(format!(
                            "E.span[{k}] must be a {dm}×{dm} matrix"
                        )));
                    }
                    let mut flat = Vec::with_capacity(dm * dm);
                    for (r, row) in mat.iter().enumerate() {
                        for (c, x) in row.iter().enumerate() {
                            flat.push(number(x, &format!("E.span[{k}][{r}][{c}]"))?);
                        }
                    }
                    ops.push(flat);
                }
                EChoice::Explicit(ops)
            }
        };
        let blocks = match raw.blocks {
            None => None,
            Some(b) => {
                if let Some(bad) = b.n.iter().chain(&b.p).chain(&b.r).find(|i| **i >= rank) {
                    return Err(Error::Parse(format!(
                        "blocks: generator {bad} out of range"
                    )));
                }
                Some((b.n, b.p, b.r))
            }
        };
        Ok(InstanceSpec {
            name: raw.name,
            description: raw.description,
            algebra,
            degrees: raw.form.degrees,
            gram,
            e,
            blocks,
        })
    }

    /// Validates the algebra table and the form.
    pub fn build_form(&self) -> Result<Arc<QuadraticForm>> {
        let report = self.algebra.validate();
        if let Some(v) = report.first() {
            return Err(Error::InvalidTable(format!(
                "{} at basis tuple {:?}",
                v.axiom, v.witness
            )));
        }
        let module = FreeSuperModule::new(Arc::new(self.algebra.clone()), self.degrees.clone())?;
        Ok(Arc::new(QuadraticForm::new(module, self.gram.clone())?))
    }

    pub fn build(&self, exec: Execution) -> Result<Instance> {
        let form = self.build_form()?;
        let ops = Arc::new(FormOps::new(Arc::clone(&form)));
        let einfty = EInfty::build_with_ops(Arc::clone(&ops), self.e.clone(), exec)?;
        let blocks = match &self.blocks {
            None => None,
            Some((n, p, r)) => Some(Blocks::checked(&form, n.clone(), p.clone(), r.clone())?),
        };
        Ok(Instance {
            form,
            ops,
            einfty,
            blocks,
        })
    }
}

/// The built objects of an instance.
#[derive(Debug)]
pub struct Instance {
    pub form: Arc<QuadraticForm>,
    pub ops: Arc<FormOps>,
    pub einfty: EInfty,
    /// User-supplied blocks; detected from the Gram matrix when absent.
    pub blocks: Option<Blocks>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_presets_scalars_and_vectors() {
        let s = r#"{"form":{"algebra":"Geps","degrees":[0,0],"gram":[[1,[0,"1/2"]],[[0,"1/2"],"-3"]]}}"#;
        let spec = InstanceSpec::parse(s).unwrap();
        assert_eq!(spec.gram[0][1], vec![Q::from_integer(0), Q::new(1, 2)]);
        assert_eq!(
            spec.gram[1][1],
            vec![Q::from_integer(-3), Q::from_integer(0)]
        );
        assert!(matches!(spec.e, EChoice::Eosp));
    }

    #[test]
    fn errors_name_the_field() {
        let s = r#"{"form":{"algebra":"Q","degrees":[0,0],"gram":[[1,0],[0,"x"]]}}"#;
        let msg = InstanceSpec::parse(s).unwrap_err().to_string();
        assert!(msg.contains("form.gram[1][1]"), "{msg}");
        let s = r#"{"form":{"algebra":"Q","degrees":[0],"gram":[[1]]},"E":"weird"}"#;
        assert!(InstanceSpec::parse(s)
            .unwrap_err()
            .to_string()
            .contains("E:"));
        let bad_json = "{\"form\": {";
        let msg = InstanceSpec::parse(bad_json).unwrap_err().to_string();
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn non_supersymmetric_gram_fails_at_build() {
        let s = r#"{"form":{"algebra":"Q","degrees":[0,0],"gram":[[1,1],[0,1]]}}"#;
        let spec = InstanceSpec::parse(s).unwrap();
        assert!(matches!(
            spec.build(Execution::Sequential),
            Err(Error::InvalidForm { .. })
        ));
    }
}
