//! Verification results as values.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed instance of a law.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
}

/// Outcome of a checker or a randomized law suite. An empty violation list
/// means every instance held.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub laws: BTreeMap<String, Tally>,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn pass(&mut self, law: &str) {
        self.laws.entry(law.to_string()).or_default().passed += 1;
    }

    pub fn fail(
        &mut self,
        law: &str,
        witness: impl Into<String>,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
    ) {
        self.laws.entry(law.to_string()).or_default().failed += 1;
        self.violations.push(Violation {
            law: law.to_string(),
            witness: witness.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    /// Records `lhs == rhs` for `law`, building the witness lazily.
    pub fn expect_eq<T: PartialEq + fmt::Display>(
        &mut self,
        law: &str,
        lhs: &T,
        rhs: &T,
        witness: impl FnOnce() -> String,
    ) -> bool {
        if lhs == rhs {
            self.pass(law);
            true
        } else {
            self.fail(law, witness(), lhs, rhs);
            false
        }
    }

    /// Records a boolean outcome.
    pub fn expect(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) -> bool {
        if ok {
            self.pass(law);
        } else {
            self.fail(law, witness(), "false", "true");
        }
        ok
    }

    pub fn merge(&mut self, other: CheckReport) {
        for (law, t) in other.laws {
            let e = self.laws.entry(law).or_default();
            e.passed += t.passed;
            e.failed += t.failed;
        }
        self.violations.extend(other.violations);
    }

    /// Merges `other` with every law renamed to `prefix/law`.
    pub fn merge_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for (law, t) in other.laws {
            let e = self.laws.entry(format!("{prefix}/{law}")).or_default();
            e.passed += t.passed;
            e.failed += t.failed;
        }
        self.violations
            .extend(other.violations.into_iter().map(|mut v| {
                v.law = format!("{prefix}/{}", v.law);
                v
            }));
    }

    /// Sorts violations into their canonical order.
    pub fn canonicalize(&mut self) {
        self.violations.sort();
        self.violations.dedup();
    }

    pub fn failures(&self, law: &str) -> u64 {
        self.laws.get(law).map_or(0, |t| t.failed)
    }

    pub fn violated_laws(&self) -> Vec<&str> {
        self.laws
            .iter()
            .filter(|(_, t)| t.failed > 0)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn total_checks(&self) -> u64 {
        self.laws.values().map(|t| t.passed + t.failed).sum()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "suite {}", self.suite)?;
        if let Some(seed) = self.seed {
            write!(f, " (seed {seed})")?;
        }
        writeln!(f)?;
        for (law, t) in &self.laws {
            let status = if t.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "  {status} {law}: {} passed, {} failed",
                t.passed, t.failed
            )?;
        }
        for v in &self.violations {
            writeln!(
                f,
                "  violation {} at {}: {} != {}",
                v.law, v.witness, v.lhs, v.rhs
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_canonical_order() {
        let mut r = CheckReport::new("t");
        r.pass("b");
        r.fail("b", "w2", 1, 2);
        r.fail("a", "w1", 3, 4);
        r.canonicalize();
        assert_eq!(r.violations[0].law, "a");
        assert_eq!(r.failures("b"), 1);
        assert_eq!(r.total_checks(), 3);
        assert!(!r.is_ok());
        assert_eq!(r.violated_laws(), vec!["a", "b"]);
    }

    #[test]
    fn prefixed_merge_renames_laws() {
        let mut inner = CheckReport::new("inner");
        inner.fail("A1", "x", 0, 1);
        let mut outer = CheckReport::new("outer");
        outer.merge_prefixed("act_E", inner);
        assert_eq!(outer.failures("act_E/A1"), 1);
        assert_eq!(outer.violations[0].law, "act_E/A1");
    }
}
