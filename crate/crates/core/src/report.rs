use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of a verification run: every checked tuple is counted and every
/// violation is kept in replayable form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub axiom: String,
    pub mode: String,
    pub tuples_checked: u64,
    pub failures: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(axiom: impl Into<String>, mode: impl Into<String>) -> Self {
        Report {
            axiom: axiom.into(),
            mode: mode.into(),
            tuples_checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Counts one tuple, recording `witness` when `ok` is false.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.tuples_checked += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn absorb(&mut self, other: Report) {
        self.tuples_checked += other.tuples_checked;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn counts_and_keeps_witnesses() {
        let mut r = Report::new("pentagon", "full");
        r.check(true, || json!(null));
        r.check(false, || json!([1, 2]));
        assert_eq!(r.tuples_checked, 2);
        assert!(!r.passed());
        let s = serde_json::to_value(&r).unwrap();
        assert_eq!(s["failures"], json!([[1, 2]]));
        assert!(s.get("notes").is_none());
    }
}
