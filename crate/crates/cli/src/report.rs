//! Flat `key = value` reports with indented certificate blocks.
//!
//! Reruns with identical inputs and seeds produce byte-identical
//! reports except for the trailing `time_ms` line.

use std::fmt::Display;
use std::time::Instant;

use sha2::{Digest, Sha256};

pub struct Report {
    lines: Vec<String>,
    started: Instant,
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut report = Report {
            lines: Vec::new(),
            started: Instant::now(),
        };
        report.field("schema", 1);
        report.field("command", command);
        report
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key} = {value}"));
    }

    /// `key:` followed by one indented line per item. Empty blocks are
    /// written as `key: none`.
    pub fn block<I, T>(&mut self, key: &str, items: I)
    where
        I: IntoIterator<Item = T>,
        T: Display,
    {
        let items: Vec<T> = items.into_iter().collect();
        if items.is_empty() {
            self.lines.push(format!("{key}: none"));
            return;
        }
        self.lines.push(format!("{key}:"));
        for item in items {
            self.lines.push(format!("  {item}"));
        }
    }

    pub fn seed(&mut self, seed: Option<u64>) {
        match seed {
            Some(s) => self.field("seed", s),
            None => self.field("seed", "-"),
        }
    }

    /// Appends the timing line and renders the report.
    pub fn finish(self) -> String {
        let mut text = self.lines.join("\n");
        text.push_str(&format!(
            "\ntime_ms = {}\n",
            self.started.elapsed().as_millis()
        ));
        text
    }
}

/// Content hash of an instance's canonical serialization.
pub fn digest(canonical: &str) -> String {
    let hash = Sha256::digest(canonical.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}
