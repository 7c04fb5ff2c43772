//! Report payloads: everything a run produces, serialised as one JSON
//! document. Re-running the identical command with the same seed
//! reproduces the report bit-for-bit apart from the `timings_ms` block.

use mrcode::codes::CodeError;
use mrcode::gf::FieldJson;
use mrcode::mr::MrError;
use mrcode::pmr::PmrError;
use mrcode::report::{Certificate, CodeJson};
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct Report {
    pub tool: ToolInfo,
    pub command: Vec<String>,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<BTreeMap<String, Vec<Vec<u64>>>>,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Value>,
    pub timings_ms: BTreeMap<String, u128>,
}

impl Report {
    pub fn new(params: Value) -> Report {
        Report {
            tool: ToolInfo {
                name: "mrcode",
                version: env!("CARGO_PKG_VERSION"),
            },
            command: std::env::args().collect(),
            params,
            seed: None,
            field: None,
            code: None,
            matrices: None,
            certificates: Vec::new(),
            derived: None,
            trace: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }
}

/// Exit codes: 0 success, 1 certificate failure, 2 usage error,
/// 3 resource guard.
pub enum Outcome {
    Done(Box<Report>),
    Usage(String),
    Guard(String),
}

fn code_error_is_guard(e: &CodeError) -> bool {
    matches!(e, CodeError::ResourceGuard { .. })
}

/// Map a library error to the CLI outcome: a failed self-certification
/// becomes a report with the failing certificate (exit 1), a tripped
/// resource guard exits 3, anything else is a usage/parameter error.
pub fn classify_mr_error(e: MrError, mut report: Report) -> Outcome {
    match e {
        MrError::CertificationFailed(cert) => {
            report.certificates.push(*cert);
            Outcome::Done(Box::new(report))
        }
        MrError::Code(ref c) if code_error_is_guard(c) => Outcome::Guard(e.to_string()),
        MrError::Pmr(PmrError::Code(ref c)) if code_error_is_guard(c) => {
            Outcome::Guard(e.to_string())
        }
        other => Outcome::Usage(other.to_string()),
    }
}

pub fn classify_pmr_error(e: PmrError, mut report: Report) -> Outcome {
    match e {
        PmrError::CertificationFailed(cert) => {
            report.certificates.push(cert);
            Outcome::Done(Box::new(report))
        }
        PmrError::Code(ref c) if code_error_is_guard(c) => Outcome::Guard(e.to_string()),
        other => Outcome::Usage(other.to_string()),
    }
}

pub fn classify_code_error(e: CodeError) -> Outcome {
    if code_error_is_guard(&e) {
        Outcome::Guard(e.to_string())
    } else {
        Outcome::Usage(e.to_string())
    }
}
