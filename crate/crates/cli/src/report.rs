use std::fmt::Write as _;

use serde_json::{json, Value};
use tancat::{AxiomReport, Error};

use crate::script::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    AxiomFailure,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::AxiomFailure => "axiom-failure",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Presentation { vars: Vec<String>, relations: Vec<String> },
    Axioms(Vec<Check>),
    /// Named maps, each as `variable |-> image` pairs.
    Maps(Vec<(String, Vec<(String, String)>)>),
    Error { message: String, exit: i32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub payload: Payload,
    pub ms: u128,
}

impl Report {
    pub fn status(&self) -> Status {
        match &self.payload {
            Payload::Axioms(c) if c.iter().any(|c| !c.pass) => Status::AxiomFailure,
            Payload::Error { .. } => Status::Error,
            _ => Status::Ok,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match &self.payload {
            Payload::Error { exit, .. } => *exit,
            _ if self.status() == Status::AxiomFailure => 1,
            _ => 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("plain values serialize");
                s.push('\n');
                s
            }
        }
    }

    pub fn json(&self) -> Value {
        let result = match &self.payload {
            Payload::Presentation { vars, relations } => json!({ "vars": vars, "relations": relations }),
            Payload::Axioms(checks) => {
                let entries: Vec<Value> = checks
                    .iter()
                    .map(|c| match &c.witness {
                        Some(w) => json!({ "id": c.id, "pass": c.pass, "witness": w }),
                        None => json!({ "id": c.id, "pass": c.pass }),
                    })
                    .collect();
                json!({ "axioms": entries })
            }
            Payload::Maps(maps) => {
                let mut out = serde_json::Map::new();
                for (name, pairs) in maps {
                    let pairs: Vec<Value> = pairs.iter().map(|(v, i)| json!({ "var": v, "image": i })).collect();
                    out.insert(name.clone(), Value::Array(pairs));
                }
                json!({ "maps": out })
            }
            Payload::Error { message, .. } => json!({ "error": message }),
        };
        json!({ "status": self.status().as_str(), "result": result, "ms": self.ms })
    }

    fn text(&self) -> String {
        let mut s = String::new();
        match &self.payload {
            Payload::Presentation { vars, relations } => {
                write!(s, "QQ[{}]", vars.join(",")).unwrap();
                if !relations.is_empty() {
                    write!(s, " / ({})", relations.join(", ")).unwrap();
                }
                s.push('\n');
            }
            Payload::Axioms(checks) => {
                for c in checks {
                    match &c.witness {
                        Some(w) => writeln!(s, "FAIL {}  {}", c.id, w).unwrap(),
                        None => writeln!(s, "pass {}", c.id).unwrap(),
                    }
                }
                let failed = checks.iter().filter(|c| !c.pass).count();
                writeln!(s, "{} passed, {} failed", checks.len() - failed, failed).unwrap();
            }
            Payload::Maps(maps) => {
                for (name, pairs) in maps {
                    let body: Vec<String> = pairs.iter().map(|(v, i)| format!("{} |-> {}", v, i)).collect();
                    writeln!(s, "{} = {{ {} }}", name, body.join(", ")).unwrap();
                }
            }
            Payload::Error { message, .. } => writeln!(s, "error: {}", message).unwrap(),
        }
        s
    }
}

pub fn axioms(report: &AxiomReport) -> Payload {
    Payload::Axioms(
        report.entries.iter().map(|e| Check { id: e.id.clone(), pass: e.pass(), witness: e.witness() }).collect(),
    )
}

pub fn error(e: &Error) -> Payload {
    let exit = if matches!(e, Error::BudgetExceeded(_)) { 3 } else { 2 };
    Payload::Error { message: e.to_string(), exit }
}

pub fn input_error(message: impl Into<String>) -> Payload {
    Payload::Error { message: message.into(), exit: 2 }
}
