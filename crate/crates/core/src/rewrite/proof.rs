//! Proof scripts: a start circuit, a goal and the rewrites between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::term::{parse_ctrl, print_ctrl, Path, Signature};

use super::normal::normalize_structural;
use super::rules::{apply_rule, Direction, Registry};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofStep {
    pub rule: String,
    pub dir: Direction,
    #[serde(default)]
    pub path: Path,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofScript {
    /// Shipped signature whose relations the proof may use; the standard
    /// rules are always available.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
    pub lhs: String,
    pub rhs: String,
    pub steps: Vec<ProofStep>,
}

const SHIPPED: [(&str, &str); 5] = [
    ("sw", include_str!("../../data/proofs/sw.json")),
    ("sw_cnot", include_str!("../../data/proofs/sw_cnot.json")),
    ("cl_example", include_str!("../../data/proofs/cl_example.json")),
    ("conjugation", include_str!("../../data/proofs/conjugation.json")),
    ("mobit_symm", include_str!("../../data/proofs/mobit_symm.json")),
];

impl ProofScript {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("proof script: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn shipped(name: &str) -> Result<Self> {
        let key = name.strip_suffix(".json").unwrap_or(name);
        let (_, text) = SHIPPED
            .iter()
            .find(|(n, _)| *n == key)
            .ok_or_else(|| Error::Invalid(format!("no shipped proof `{name}`")))?;
        ProofScript::from_json(text)
    }

    pub fn shipped_names() -> Vec<&'static str> {
        SHIPPED.iter().map(|(n, _)| *n).collect()
    }

    /// The registry the script is checked against by default.
    pub fn registry(&self) -> Result<Registry> {
        match &self.signature {
            Some(s) => Registry::for_signature(&Signature::shipped(s)?),
            None => Ok(Registry::standard()),
        }
    }
}

/// Outcome of replaying a proof.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProofReport {
    pub accepted: bool,
    /// Normal forms after each successful step, starting with the normalised lhs.
    pub trace: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Replays `script` with `registry`. Malformed circuits are errors; a step
/// that does not apply, or a final term different from the goal, rejects.
pub fn check_proof(script: &ProofScript, registry: &Registry) -> Result<ProofReport> {
    let mut t = normalize_structural(&parse_ctrl(&script.lhs)?);
    let goal = normalize_structural(&parse_ctrl(&script.rhs)?);
    t.wires()?;
    goal.wires()?;
    let mut trace = vec![print_ctrl(&t)];
    for (k, step) in script.steps.iter().enumerate() {
        let next = registry.get(&step.rule).and_then(|rule| apply_rule(&t, rule, step.dir, &step.path));
        match next {
            Ok(n) => {
                t = n;
                trace.push(print_ctrl(&t));
            }
            Err(e) => {
                return Ok(ProofReport { accepted: false, trace, failed_step: Some(k), error: Some(e.to_string()) })
            }
        }
    }
    if t == goal {
        Ok(ProofReport { accepted: true, trace, failed_step: None, error: None })
    } else {
        let error = format!("derivation ends at `{}`, not `{}`", print_ctrl(&t), print_ctrl(&goal));
        Ok(ProofReport { accepted: false, trace, failed_step: None, error: Some(error) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::BackendKind;

    #[test]
    fn shipped_proofs_replay() {
        for name in ProofScript::shipped_names() {
            let s = ProofScript::shipped(name).unwrap();
            let rep = check_proof(&s, &s.registry().unwrap()).unwrap();
            assert!(rep.accepted, "{name}: {:?}", rep.error);
            assert_eq!(rep.trace.len(), s.steps.len() + 1);
            let lhs = parse_ctrl(&s.lhs).unwrap();
            for t in &rep.trace {
                let t = parse_ctrl(t).unwrap();
                let kind = [BackendKind::Perm, BackendKind::Gf2].into_iter().find(|k| k.accepts(&t)).unwrap();
                assert!(kind.equal(&lhs, &t, 0.0).unwrap(), "{name}: {}", print_ctrl(&t));
            }
        }
    }

    #[test]
    fn wrong_path_rejects_at_that_step() {
        let mut s = ProofScript::shipped("conjugation").unwrap();
        s.steps[1].path = vec![0];
        let rep = check_proof(&s, &Registry::standard()).unwrap();
        assert!(!rep.accepted);
        assert_eq!(rep.failed_step, Some(1));
        assert_eq!(rep.trace.len(), 2);
    }

    #[test]
    fn wrong_goal_rejects() {
        let mut s = ProofScript::shipped("conjugation").unwrap();
        s.rhs = "c1[j] ; c0[x] ; c1[x]".into();
        let rep = check_proof(&s, &Registry::standard()).unwrap();
        assert!(!rep.accepted && rep.failed_step.is_none());
    }

    #[test]
    fn json_roundtrip() {
        let s = ProofScript::shipped("mobit_symm").unwrap();
        assert_eq!(s.signature.as_deref(), Some("mobit"));
        assert_eq!(ProofScript::from_json(&s.to_json()).unwrap(), s);
    }
}
