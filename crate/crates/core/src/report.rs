//! Machine-readable verification reports.

use serde::Serialize;
use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Detail {
    pub item: String,
    pub residual_zero: bool,
}

impl Detail {
    pub fn new(item: impl Into<String>, residual_zero: bool) -> Self {
        Detail { item: item.into(), residual_zero }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Conventions {
    pub h_k_orientation: String,
    pub s_uk_orientation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: Map<String, Value>,
    pub result: Outcome,
    pub details: Vec<Detail>,
    pub runtime_ms: u64,
    pub conventions: Conventions,
    pub version: String,
    /// Free-form findings, e.g. resolved scalar factors or achieved ranks.
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub notes: Map<String, Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Report {
    /// Build a report; details are sorted and the outcome derived from them.
    pub fn new(check: impl Into<String>, params: Map<String, Value>, mut details: Vec<Detail>) -> Self {
        details.sort();
        details.dedup();
        let ok = !details.is_empty() && details.iter().all(|d| d.residual_zero);
        Report {
            check: check.into(),
            params,
            result: if ok { Outcome::Pass } else { Outcome::Fail },
            details,
            runtime_ms: 0,
            conventions: Conventions::default(),
            version: VERSION.to_string(),
            notes: Map::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Detail> {
        self.details.iter().filter(|d| !d.residual_zero)
    }

    pub fn note(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.notes.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}: {} ({} items, {} failed, {} ms)\n",
            self.check,
            if self.passed() { "pass" } else { "fail" },
            self.details.len(),
            self.failures().count(),
            self.runtime_ms
        );
        for d in self.failures().take(20) {
            s.push_str(&format!("  nonzero: {}\n", d.item));
        }
        for (k, v) in &self.notes {
            s.push_str(&format!("  {k}: {v}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_and_ordering() {
        let r = Report::new("x", Map::new(), vec![Detail::new("b", true), Detail::new("a", true)]);
        assert!(r.passed());
        assert_eq!(r.details[0].item, "a");
        let r = Report::new("x", Map::new(), vec![Detail::new("a", false)]);
        assert!(!r.passed());
        assert!(!Report::new("x", Map::new(), vec![]).passed());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["result"], "fail");
        assert_eq!(v["details"][0]["residual_zero"], false);
    }
}
