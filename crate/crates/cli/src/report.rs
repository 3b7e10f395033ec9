use std::io::Write;
use std::time::Duration;

use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Undetermined,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Undetermined => "undetermined",
            Status::Fail => "fail",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    /// Set when the check was not run because a size guard tripped.
    pub guarded: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, details: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status,
            details: details.into(),
            guarded: false,
        }
    }

    pub fn pass(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check::new(name, Status::Pass, details)
    }

    pub fn fail(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check::new(name, Status::Fail, details)
    }

    pub fn verdict(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Check::new(name, Status::from_bool(ok), details)
    }

    pub fn guarded(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check {
            guarded: true,
            ..Check::new(name, Status::Undetermined, details)
        }
    }

    /// Turns a check body's error into a result row.
    pub fn from_result(name: &str, r: Result<Check, CliError>) -> Self {
        match r {
            Ok(c) => c,
            Err(e) if e.exit_code() == 3 => Check::guarded(name, e.to_string()),
            Err(e) => Check::fail(name, e.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub l: Option<u32>,
    pub results: Vec<Check>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, l: Option<u32>) -> Self {
        Report {
            command: command.to_string(),
            l,
            results: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.results.push(c);
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.data.insert(key.to_string(), v);
    }

    pub fn worst(&self) -> Status {
        self.results.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    /// 0 when everything passed, 1 on a failed or undecided check, 3 when
    /// nothing failed but a size guard stopped some check.
    pub fn exit_code(&self) -> i32 {
        if self.results.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.results.iter().any(|c| c.guarded) {
            3
        } else if self.worst() == Status::Undetermined {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self, elapsed: Duration) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("l".into(), json!(self.l));
        obj.insert("status".into(), json!(self.worst().name()));
        obj.insert(
            "results".into(),
            Value::Array(
                self.results
                    .iter()
                    .map(|c| json!({"check": c.name, "status": c.status.name(), "details": c.details}))
                    .collect(),
            ),
        );
        obj.insert("timing".into(), json!({"elapsed_ms": elapsed.as_millis() as u64}));
        for (k, v) in &self.data {
            obj.insert(k.clone(), v.clone());
        }
        Value::Object(obj)
    }

    pub fn write_csv(&self, out: impl Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["check", "status", "details"])?;
        for c in &self.results {
            w.write_record([c.name.as_str(), c.status.name(), c.details.as_str()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// One row per nonzero matrix entry.
pub fn write_module_csv(module: &Value, out: impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["generator", "row", "col", "value"])?;
    let dim = module["dim"].as_u64().unwrap_or(0) as usize;
    let l = module["l"].as_u64().unwrap_or(0) as u32;
    if let Some(mats) = module["matrices"].as_object() {
        for (g, entries) in mats {
            for (k, e) in entries.as_array().into_iter().flatten().enumerate() {
                let c = qsaa_core::io::cyclo_from_json(l, e)?;
                if !c.is_zero() {
                    w.write_record([g.clone(), (k / dim).to_string(), (k % dim).to_string(), c.to_string()])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}
