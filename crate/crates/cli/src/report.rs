use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckItem {
    pub check_id: String,
    /// The mathematical statement being checked, in one line.
    pub anchor: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Outcome of a suite. `pass` is the conjunction of the items; `notes`
/// carry findings that are reported but not scored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub items: Vec<CheckItem>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    pub pass: bool,
    /// Omitted unless timings were requested, so reports stay byte-stable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            items: Vec::new(),
            notes: Vec::new(),
            value: None,
            pass: true,
            wall_time_ms: None,
        }
    }

    pub fn check(
        &mut self,
        check_id: &str,
        anchor: &str,
        expected: impl ToString,
        actual: impl ToString,
        pass: bool,
    ) -> &mut Self {
        self.items.push(CheckItem {
            check_id: check_id.to_string(),
            anchor: anchor.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
        self.pass = self.items.iter().all(|i| i.pass);
        self
    }

    /// Equality check rendered with `Debug`.
    pub fn check_eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        check_id: &str,
        anchor: &str,
        expected: T,
        actual: T,
    ) -> &mut Self {
        let pass = expected == actual;
        self.check(check_id, anchor, format!("{expected:?}"), format!("{actual:?}"), pass)
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_markdown(&self) -> String {
        let mut out =
            format!("## {} ({})\n\n", self.suite, if self.pass { "PASS" } else { "FAIL" });
        if let Some(v) = &self.value {
            out.push_str(&format!("value: `{v}`\n\n"));
        }
        out.push_str("| check | statement | expected | actual | pass |\n|---|---|---|---|---|\n");
        for i in &self.items {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                i.check_id,
                cell(&i.anchor),
                cell(&i.expected),
                cell(&i.actual),
                if i.pass { "yes" } else { "no" }
            ));
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                out.push_str(&format!("- {n}\n"));
            }
        }
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("\nwall time: {ms} ms\n"));
        }
        out
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_is_conjunction_and_round_trips() {
        let mut r = VerificationReport::new("demo");
        r.check("a", "1 = 1", 1, 1, true);
        assert!(r.pass);
        r.check_eq("b", "2 = 3", 2, 3);
        assert!(!r.pass);
        r.note("something");
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.to_json().contains("wall_time_ms"));
        assert!(r.to_markdown().contains("| b | 2 = 3 | 2 | 3 | no |"));
    }
}
