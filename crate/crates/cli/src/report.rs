use std::fmt::Write as _;

use mmpkit_core::{IntVector, Rational};
use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

/// Exit code for a request that ran to completion.
pub const EXIT_OK: i32 = 0;
/// Exit code for malformed input or flags.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for well-formed input that violates a mathematical precondition.
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Validation,
    Precondition,
}

impl FailureKind {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Validation => EXIT_VALIDATION,
            Self::Precondition => EXIT_PRECONDITION,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Self::Validation => "validation",
            Self::Precondition => "precondition",
        }
    }
}

/// A rejected request: a stable code, where it went wrong, and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub code: &'static str,
    /// JSON pointer into the input document, or the name of a flag.
    pub pointer: String,
    pub message: String,
}

impl Failure {
    pub fn validation(
        code: &'static str,
        pointer: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Self {
            kind: FailureKind::Validation,
            code,
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    pub fn precondition(
        code: &'static str,
        pointer: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Self {
            kind: FailureKind::Precondition,
            code,
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

/// Result of one invocation, renderable as text or as canonical JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    value: Value,
    text: String,
}

impl Report {
    pub(crate) fn new(command: &str, rule: &str, fields: Map<String, Value>, text: String) -> Self {
        let mut value = fields;
        value.insert("command".into(), Value::String(command.into()));
        value.insert("status".into(), Value::String("ok".into()));
        value.insert("rule".into(), Value::String(rule.into()));
        Self {
            value: Value::Object(value),
            text,
        }
    }

    pub(crate) fn failure(command: &str, f: &Failure) -> Self {
        let mut err = Map::new();
        err.insert("kind".into(), Value::String(f.kind.name().into()));
        err.insert("code".into(), Value::String(f.code.into()));
        err.insert("pointer".into(), Value::String(f.pointer.clone()));
        err.insert("message".into(), Value::String(f.message.clone()));
        let mut value = Map::new();
        value.insert("command".into(), Value::String(command.into()));
        value.insert("status".into(), Value::String("error".into()));
        value.insert("error".into(), Value::Object(err));
        let text = format!(
            "error [{}] {} at {}: {}\n",
            f.code,
            f.kind.name(),
            if f.pointer.is_empty() {
                "/"
            } else {
                &f.pointer
            },
            f.message
        );
        Self {
            value: Value::Object(value),
            text,
        }
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn machine(&self) -> String {
        canonical_json(&self.value)
    }
}

/// Serializes exactly as machine reports are written, so that parsing a
/// report and calling this again reproduces it byte for byte.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are always serializable");
    s.push('\n');
    s
}

pub(crate) fn int(x: &BigInt) -> Value {
    Value::Number(
        x.to_string()
            .parse::<Number>()
            .expect("integers are valid JSON numbers"),
    )
}

pub(crate) fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub(crate) fn int_rows(rows: &[IntVector]) -> Value {
    Value::Array(rows.iter().map(|r| ints(r)).collect())
}

pub(crate) fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub(crate) fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub(crate) fn strings(v: &[String]) -> Value {
    Value::Array(v.iter().cloned().map(Value::String).collect())
}

/// `(1,-2,0)`
pub(crate) fn tuple(v: &[BigInt]) -> String {
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "{x}").unwrap();
    }
    s.push(')');
    s
}

pub(crate) fn rational_list(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}
