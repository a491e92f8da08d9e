use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One verified relation: both sides, the verdict and, on failure, a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub relation: String,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn eq(relation: impl Into<String>, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Check {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let pass = lhs == rhs;
        Check { relation: relation.into(), lhs, rhs, pass, witness: None }
    }

    pub fn new(
        relation: impl Into<String>,
        lhs: impl Into<Value>,
        rhs: impl Into<Value>,
        pass: bool,
    ) -> Check {
        Check { relation: relation.into(), lhs: lhs.into(), rhs: rhs.into(), pass, witness: None }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Check {
        self.witness = witness;
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        write!(f, "{verdict} {}: {} vs {}", self.relation, self.lhs, self.rhs)?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, relation: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.relation == relation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let c = Check::eq("P3", 8, 8);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"relation":"P3","lhs":8,"rhs":8,"pass":true}"#);
    }
}
