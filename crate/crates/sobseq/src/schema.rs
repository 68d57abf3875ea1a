//! Stable JSON document types and the CLI weight-spec syntax.
//!
//! Certificates serialize as
//! `{"theorem": "T1a"|"T2", "m_star": n, "subspace_dim": n, "epsilon": x,
//!   "kappa": x, "constant": x|null, "rigorous": true|false}`;
//! operators as
//! `{"window": [lo, hi], "src": {...}, "tgt": {...}, "entries": [[re, im], ...]}`
//! with row-major entries. Table weight files are flat JSON objects mapping
//! decimal integer index strings to positive values, with a required
//! `"lower_bound"` field.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sobseq_core::{
    CompactnessCertificate, CompactnessWitness, Complex64, Domain, EmbeddingRelation,
    EmbeddingReport, FiniteSectionOperator, IndexWindow, SpaceParams, Theorem, WeightFamily,
    WeightKind,
};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainSpec {
    Full,
    Half,
}

impl From<Domain> for DomainSpec {
    fn from(d: Domain) -> Self {
        match d {
            Domain::FullLine => DomainSpec::Full,
            Domain::HalfLine => DomainSpec::Half,
        }
    }
}

impl From<DomainSpec> for Domain {
    fn from(d: DomainSpec) -> Self {
        match d {
            DomainSpec::Full => Domain::FullLine,
            DomainSpec::Half => Domain::HalfLine,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSpec {
    Constant {
        c: f64,
    },
    Polynomial {
        alpha: f64,
    },
    Gibbs {
        beta: f64,
    },
    Table {
        lower_bound: f64,
        values: BTreeMap<String, f64>,
    },
}

impl WeightSpec {
    pub fn to_family(&self, domain: Domain) -> Result<WeightFamily, CliError> {
        Ok(match self {
            WeightSpec::Constant { c } => WeightFamily::constant(*c, domain)?,
            WeightSpec::Polynomial { alpha } => WeightFamily::polynomial(*alpha, domain)?,
            WeightSpec::Gibbs { beta } => WeightFamily::gibbs_on(*beta, domain)?,
            WeightSpec::Table {
                lower_bound,
                values,
            } => {
                let mut table = BTreeMap::new();
                for (key, value) in values {
                    let m: i64 = key.parse().map_err(|_| {
                        CliError::invalid(format!("table index {key:?} is not an integer"))
                    })?;
                    table.insert(m, *value);
                }
                WeightFamily::table(table, *lower_bound, domain)?
            }
        })
    }

    pub fn from_family(w: &WeightFamily) -> Self {
        match w.kind() {
            WeightKind::Constant(c) => WeightSpec::Constant { c: *c },
            WeightKind::Polynomial(alpha) => WeightSpec::Polynomial { alpha: *alpha },
            WeightKind::Gibbs(beta) => WeightSpec::Gibbs { beta: *beta },
            WeightKind::Table {
                values,
                lower_bound,
            } => WeightSpec::Table {
                lower_bound: *lower_bound,
                values: values.iter().map(|(m, v)| (m.to_string(), *v)).collect(),
            },
        }
    }
}

/// The CLI weight-spec syntax: `constant:<c>`, `poly:<alpha>`,
/// `gibbs:<beta>`, or `table:<path>` (a table weight file).
pub fn parse_weight_cli_spec(spec: &str, domain: Domain) -> Result<WeightFamily, CliError> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| CliError::invalid(format!("weight spec {spec:?} must look like kind:arg")))?;
    let parse_num = |what: &str| -> Result<f64, CliError> {
        arg.parse()
            .map_err(|_| CliError::invalid(format!("{what} {arg:?} is not a number")))
    };
    match kind {
        "constant" => Ok(WeightFamily::constant(parse_num("constant weight")?, domain)?),
        "poly" | "polynomial" => Ok(WeightFamily::polynomial(
            parse_num("polynomial exponent")?,
            domain,
        )?),
        "gibbs" => Ok(WeightFamily::gibbs_on(parse_num("Gibbs rate")?, domain)?),
        "table" => {
            let text = std::fs::read_to_string(arg)?;
            let (values, lower_bound) = parse_table_weight_file(&text)?;
            Ok(WeightFamily::table(values, lower_bound, domain)?)
        }
        other => Err(CliError::invalid(format!(
            "unknown weight kind {other:?}; expected constant, poly, gibbs, or table"
        ))),
    }
}

/// Parses the flat table-weight file format: a single JSON object whose keys
/// are decimal integer index strings, plus the required key `"lower_bound"`.
pub fn parse_table_weight_file(text: &str) -> Result<(BTreeMap<i64, f64>, f64), CliError> {
    let raw: BTreeMap<String, f64> = serde_json::from_str(text)?;
    let mut lower_bound = None;
    let mut values = BTreeMap::new();
    for (key, value) in raw {
        if key == "lower_bound" {
            lower_bound = Some(value);
            continue;
        }
        let m: i64 = key
            .parse()
            .map_err(|_| CliError::invalid(format!("table index {key:?} is not an integer")))?;
        values.insert(m, value);
    }
    let lower_bound =
        lower_bound.ok_or_else(|| CliError::invalid("table weight file is missing lower_bound"))?;
    Ok((values, lower_bound))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub k: f64,
    pub s: f64,
    pub domain: DomainSpec,
    pub weight: WeightSpec,
}

impl SpaceSpec {
    pub fn to_params(&self) -> Result<SpaceParams, CliError> {
        let w = self.weight.to_family(self.domain.into())?;
        Ok(SpaceParams::new(self.k, self.s, w)?)
    }

    pub fn from_params(sp: &SpaceParams) -> Self {
        SpaceSpec {
            k: sp.k(),
            s: sp.s(),
            domain: sp.domain().into(),
            weight: WeightSpec::from_family(sp.weight()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub theorem: String,
    pub m_star: u64,
    pub subspace_dim: u64,
    pub epsilon: f64,
    pub kappa: f64,
    pub constant: Option<f64>,
    pub rigorous: bool,
}

impl CertificateDoc {
    pub fn from_certificate(
        cert: &CompactnessCertificate,
        constant: Option<f64>,
        rigorous: bool,
    ) -> Self {
        CertificateDoc {
            theorem: match cert.theorem() {
                Theorem::T1a => "T1a".to_string(),
                Theorem::T2 => "T2".to_string(),
            },
            m_star: cert.m_star(),
            subspace_dim: cert.subspace_dim(),
            epsilon: cert.epsilon(),
            kappa: cert.kappa(),
            constant,
            rigorous,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingReportDoc {
    pub relation: String,
    pub constant: Option<f64>,
    pub hypothesis_notes: Vec<String>,
}

impl EmbeddingReportDoc {
    pub fn from_report(report: &EmbeddingReport) -> Self {
        EmbeddingReportDoc {
            relation: match report.relation {
                EmbeddingRelation::CompactEmbedding => "compact".to_string(),
                EmbeddingRelation::ContinuousEmbedding => "continuous".to_string(),
                EmbeddingRelation::NoGuarantee => "no-guarantee".to_string(),
            },
            constant: report.constant,
            hypothesis_notes: report.hypothesis_notes.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub window: [i64; 2],
    pub src: SpaceSpec,
    pub tgt: SpaceSpec,
    /// Row-major `[re, im]` pairs over window x window.
    pub entries: Vec<[f64; 2]>,
}

impl OperatorDoc {
    pub fn from_operator(op: &FiniteSectionOperator) -> Self {
        OperatorDoc {
            window: [op.window().lo(), op.window().hi()],
            src: SpaceSpec::from_params(op.src()),
            tgt: SpaceSpec::from_params(op.tgt()),
            entries: op.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_operator(&self) -> Result<FiniteSectionOperator, CliError> {
        let window = IndexWindow::new(self.window[0], self.window[1])?;
        let entries: Vec<Complex64> = self
            .entries
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        Ok(FiniteSectionOperator::new(
            window,
            self.src.to_params()?,
            self.tgt.to_params()?,
            entries,
        )?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub n_eps: u64,
    pub certified_error: f64,
    /// Tested `(radius, certified bound)` pairs, ascending in radius.
    pub history: Vec<(u64, f64)>,
}

impl WitnessDoc {
    pub fn from_witness(w: &CompactnessWitness) -> Self {
        WitnessDoc {
            n_eps: w.n_eps,
            certified_error: w.certified_error,
            history: w.history.clone(),
        }
    }
}
