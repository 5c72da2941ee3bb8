//! Verdicts and certificates shared by every checker.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    /// CLI exit code: 0 pass, 1 fail or indeterminate.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail | Verdict::Indeterminate => 1,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

/// One recorded witness value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Flag(bool),
    Int(BigInt),
    Ints(Vec<BigInt>),
    Vectors(Vec<Vec<BigInt>>),
    Text(String),
    Texts(Vec<String>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn vec(v: &[BigInt]) -> String {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
        match self {
            Witness::Flag(b) => write!(f, "{b}"),
            Witness::Int(n) => write!(f, "{n}"),
            Witness::Ints(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            Witness::Vectors(vs) => {
                let parts: Vec<String> = vs.iter().map(|v| vec(v)).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            Witness::Text(s) => f.write_str(s),
            Witness::Texts(v) => write!(f, "[{}]", v.join("; ")),
        }
    }
}

/// Verdict plus the data needed to re-verify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    /// One-line human summary, e.g. `pass (depth 8, stabilized at k=2)`.
    pub summary: String,
    pub depth_checked: usize,
    pub witnesses: BTreeMap<String, Witness>,
}

impl CheckReport {
    pub fn new(verdict: Verdict, summary: impl Into<String>) -> Self {
        CheckReport { verdict, summary: summary.into(), depth_checked: 0, witnesses: BTreeMap::new() }
    }

    pub fn pass(summary: impl Into<String>) -> Self {
        Self::new(Verdict::Pass, summary)
    }

    pub fn fail(summary: impl Into<String>) -> Self {
        Self::new(Verdict::Fail, summary)
    }

    pub fn with(mut self, key: &str, w: Witness) -> Self {
        self.witnesses.insert(key.to_string(), w);
        self
    }

    pub fn insert(&mut self, key: &str, w: Witness) {
        self.witnesses.insert(key.to_string(), w);
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth_checked = depth;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn witness(&self, key: &str) -> Option<&Witness> {
        self.witnesses.get(key)
    }

    /// Deterministic multi-line rendering: summary, then `key: value` lines sorted by key.
    pub fn render(&self) -> String {
        let mut out = self.summary.clone();
        out.push('\n');
        for (k, v) in &self.witnesses {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        out
    }
}
