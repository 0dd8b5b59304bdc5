//! Bounded bidirectional breadth-first search for a derivation.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semantics::BackendKind;
use crate::term::{print_ctrl, CtrlTerm};

use super::normal::normalize_structural;
use super::proof::ProofStep;
use super::rules::{Direction, Registry};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Longest derivation considered.
    pub max_depth: usize,
    pub budget: Duration,
    pub max_nodes: usize,
    /// Backend for the semantic prefilter; the first one accepting both
    /// circuits when `None`.
    pub backend: Option<BackendKind>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_depth: 8, budget: Duration::from_secs(60), max_nodes: 2_000_000, backend: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "camelCase")]
pub enum SearchOutcome {
    Found { steps: Vec<ProofStep>, explored: usize },
    /// The circuits differ on this backend, so no derivation exists.
    #[serde(rename_all = "camelCase")]
    NotEqual { backend: String, lhs_value: serde_json::Value, rhs_value: serde_json::Value },
    NotFound { explored: usize },
}

struct Node {
    term: CtrlTerm,
    /// Forward side: predecessor and the step from it. Backward side:
    /// successor towards the goal and the step to it.
    link: Option<(usize, ProofStep)>,
}

struct Side {
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
    frontier: Vec<usize>,
    depth: usize,
}

impl Side {
    fn new(t: CtrlTerm) -> Self {
        let mut index = HashMap::new();
        index.insert(print_ctrl(&t), 0);
        Side { nodes: vec![Node { term: t, link: None }], index, frontier: vec![0], depth: 0 }
    }

    fn add(&mut self, key: String, term: CtrlTerm, link: (usize, ProofStep)) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(Node { term, link: Some(link) });
        self.index.insert(key, idx);
        idx
    }
}

/// Every single rewrite of `t` (already normal) that changes it, in a fixed order.
pub(crate) fn neighbours(t: &CtrlTerm, registry: &Registry) -> Vec<(ProofStep, CtrlTerm)> {
    let mut out = Vec::new();
    for path in t.paths() {
        let Ok(sub) = t.subterm(&path) else { continue };
        for rule in registry.rules() {
            for dir in [Direction::LR, Direction::RL] {
                let Some(new) = rule.apply_head(sub, dir) else { continue };
                let Ok(replaced) = t.replace(&path, new) else { continue };
                let n = normalize_structural(&replaced);
                if n != *t {
                    out.push((ProofStep { rule: rule.name.clone(), dir, path: path.clone() }, n));
                }
            }
        }
    }
    out
}

/// A single step turning `from` into `to` with the reverse of `step`'s rule use.
fn reverse_step(from: &CtrlTerm, to: &CtrlTerm, step: &ProofStep, registry: &Registry) -> Option<ProofStep> {
    let rule = registry.get(&step.rule).ok()?;
    let dir = step.dir.reverse();
    if !rule.allows(dir) {
        return None;
    }
    for path in from.paths() {
        let sub = from.subterm(&path).ok()?;
        if let Some(new) = rule.apply_head(sub, dir) {
            if normalize_structural(&from.replace(&path, new).ok()?) == *to {
                return Some(ProofStep { rule: rule.name.clone(), dir, path });
            }
        }
    }
    None
}

fn pick_backend(lhs: &CtrlTerm, rhs: &CtrlTerm, opts: &SearchOptions) -> Option<BackendKind> {
    opts.backend.or_else(|| BackendKind::ALL.into_iter().find(|k| k.accepts(lhs) && k.accepts(rhs)))
}

fn join(fwd: &Side, f: usize, bwd: &Side, b: usize, explored: usize) -> SearchOutcome {
    let mut steps = Vec::new();
    let mut cur = f;
    while let Some((prev, step)) = &fwd.nodes[cur].link {
        steps.push(step.clone());
        cur = *prev;
    }
    steps.reverse();
    let mut cur = b;
    while let Some((next, step)) = &bwd.nodes[cur].link {
        steps.push(step.clone());
        cur = *next;
    }
    SearchOutcome::Found { steps, explored }
}

/// Looks for a derivation of `rhs` from `lhs` of at most `max_depth` steps.
/// Circuits that differ semantically are reported without searching.
pub fn search_equiv(lhs: &CtrlTerm, rhs: &CtrlTerm, registry: &Registry, opts: &SearchOptions) -> Result<SearchOutcome> {
    let (lhs, rhs) = (normalize_structural(lhs), normalize_structural(rhs));
    let (wl, wr) = (lhs.wires()?, rhs.wires()?);
    if wl != wr {
        return Err(Error::ArityMismatch { path: vec![], left: wl, right: wr });
    }
    if let Some(kind) = pick_backend(&lhs, &rhs, opts) {
        if !kind.equal(&lhs, &rhs, 1e-9)? {
            return Ok(SearchOutcome::NotEqual {
                backend: kind.name().to_string(),
                lhs_value: kind.eval_json(&lhs)?,
                rhs_value: kind.eval_json(&rhs)?,
            });
        }
    }
    let start = Instant::now();
    let mut fwd = Side::new(lhs);
    let mut bwd = Side::new(rhs);
    if let Some(&b) = bwd.index.get(&print_ctrl(&fwd.nodes[0].term)) {
        return Ok(join(&fwd, 0, &bwd, b, 1));
    }
    let mut explored = 0;
    while fwd.depth + bwd.depth < opts.max_depth {
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward { (&mut fwd, &mut bwd) } else { (&mut bwd, &mut fwd) };
        let frontier = std::mem::take(&mut this.frontier);
        let mut next = Vec::new();
        for idx in frontier {
            explored += 1;
            if start.elapsed() > opts.budget || this.nodes.len() + other.nodes.len() > opts.max_nodes {
                return Err(Error::BudgetExhausted(explored));
            }
            let term = this.nodes[idx].term.clone();
            for (step, n) in neighbours(&term, registry) {
                let key = print_ctrl(&n);
                if this.index.contains_key(&key) {
                    continue;
                }
                let link = if forward {
                    (idx, step)
                } else {
                    match reverse_step(&n, &term, &step, registry) {
                        Some(back) => (idx, back),
                        None => continue,
                    }
                };
                let new = this.add(key.clone(), n, link);
                if let Some(&o) = other.index.get(&key) {
                    return Ok(if forward { join(this, new, other, o, explored) } else { join(other, o, this, new, explored) });
                }
                next.push(new);
            }
        }
        this.depth += 1;
        if next.is_empty() {
            return Ok(SearchOutcome::NotFound { explored });
        }
        this.frontier = next;
    }
    Ok(SearchOutcome::NotFound { explored })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{check_proof, ProofScript};
    use crate::term::parse_ctrl;

    fn found(lhs: &str, rhs: &str, reg: &Registry, depth: usize) -> Vec<ProofStep> {
        let opts = SearchOptions { max_depth: depth, ..Default::default() };
        match search_equiv(&parse_ctrl(lhs).unwrap(), &parse_ctrl(rhs).unwrap(), reg, &opts).unwrap() {
            SearchOutcome::Found { steps, .. } => {
                let script = ProofScript { signature: None, lhs: lhs.into(), rhs: rhs.into(), steps: steps.clone() };
                assert!(check_proof(&script, reg).unwrap().accepted);
                steps
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finds_short_derivations() {
        let reg = Registry::standard();
        assert_eq!(found("c0[x] ; c1[x]", "id1 + x", &reg, 3).len(), 1);
        assert!(found("c1[x] ; c0[x]", "id1 + x", &reg, 4).len() <= 2);
    }

    #[test]
    fn prefilter_rejects_unequal() {
        let reg = Registry::standard();
        let out = search_equiv(&parse_ctrl("c1[x]").unwrap(), &parse_ctrl("id2").unwrap(), &reg, &Default::default());
        match out.unwrap() {
            SearchOutcome::NotEqual { backend, lhs_value, rhs_value } => {
                assert_eq!(backend, "perm");
                assert_eq!(lhs_value, serde_json::json!({"size": 4, "images": [0, 1, 3, 2]}));
                assert_eq!(rhs_value, serde_json::json!({"size": 4, "images": [0, 1, 2, 3]}));
            }
            other => panic!("{other:?}"),
        }
    }
}
