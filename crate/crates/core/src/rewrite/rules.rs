//! Named equations, their loader and the semantic gate every loaded rule passes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::semantics::{equal_on, BackendKind, Override, PermBackend};
use crate::term::{print_ctrl, CtrlTerm, Path, Signature};

use super::euler::euler_params;
use super::normal::normalize_structural;
use super::pattern::{instantiate, parse_pattern, rewrite_head, Env, Pat};
use super::random::random_circuit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    LR,
    RL,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::LR => Direction::RL,
            Direction::RL => Direction::LR,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LR => "LR",
            Direction::RL => "RL",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "LR" | "lr" => Ok(Direction::LR),
            "RL" | "rl" => Ok(Direction::RL),
            _ => Err(Error::Invalid(format!("direction must be LR or RL, got `{s}`"))),
        }
    }
}

/// How the right-hand side's parameters are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    /// Copied from the match.
    #[default]
    Plain,
    /// Sums are reduced into `[0, 2π)`.
    Mod2pi,
    /// `?b0..?b3` are the Euler angles of the matched `h ; z(?a1) ; h ; z(?a2) ; h`.
    Euler,
}

/// The on-disk form of a rule.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleSpec {
    pub name: String,
    pub backend: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamMode>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub oneway: bool,
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub name: String,
    pub backend: BackendKind,
    pub lhs_text: String,
    pub rhs_text: String,
    pub lhs: Pat,
    pub rhs: Pat,
    pub params: ParamMode,
    pub oneway: bool,
}

fn side_can_match(p: &Pat) -> bool {
    !matches!(p, Pat::Id(w) if w.vars.is_empty() && w.wires_of.is_empty() && w.constant == 0)
        && !p.has_param_sums()
        && !p.has_ambiguous_widths()
}

fn covers(from: &Pat, to: &Pat) -> bool {
    let (f, t) = (from.vars(), to.vars());
    t.metas.is_subset(&f.metas) && t.widths.is_subset(&f.widths) && t.params.is_subset(&f.params)
}

impl Rule {
    pub fn from_spec(spec: &RuleSpec) -> Result<Rule> {
        let backend = spec.backend.parse()?;
        let with_name = |e: Error| Error::Invalid(format!("rule `{}`: {e}", spec.name));
        let rule = Rule {
            name: spec.name.clone(),
            backend,
            lhs_text: spec.lhs.clone(),
            rhs_text: spec.rhs.clone(),
            lhs: parse_pattern(&spec.lhs).map_err(with_name)?,
            rhs: parse_pattern(&spec.rhs).map_err(with_name)?,
            params: spec.params.unwrap_or_default(),
            oneway: spec.oneway,
        };
        if !side_can_match(&rule.lhs) {
            return Err(Error::Invalid(format!("rule `{}`: left side cannot be matched", rule.name)));
        }
        if rule.params != ParamMode::Euler && !covers(&rule.lhs, &rule.rhs) {
            return Err(Error::Invalid(format!("rule `{}`: right side has unbound variables", rule.name)));
        }
        Ok(rule)
    }

    pub fn to_spec(&self) -> RuleSpec {
        RuleSpec {
            name: self.name.clone(),
            backend: self.backend.name().to_string(),
            lhs: self.lhs_text.clone(),
            rhs: self.rhs_text.clone(),
            params: (self.params != ParamMode::Plain).then_some(self.params),
            oneway: self.oneway,
        }
    }

    /// Right-to-left use needs the right side to be matchable and to bind
    /// everything the left side mentions.
    pub fn allows(&self, dir: Direction) -> bool {
        match dir {
            Direction::LR => true,
            Direction::RL => {
                !self.oneway
                    && self.params == ParamMode::Plain
                    && side_can_match(&self.rhs)
                    && covers(&self.rhs, &self.lhs)
            }
        }
    }

    fn sides(&self, dir: Direction) -> (&Pat, &Pat) {
        match dir {
            Direction::LR => (&self.lhs, &self.rhs),
            Direction::RL => (&self.rhs, &self.lhs),
        }
    }

    fn complete(&self, env: &Env, dir: Direction) -> Option<Env> {
        let mut env = env.clone();
        if self.params == ParamMode::Euler && dir == Direction::LR {
            let angles = euler_params(*env.params.get("a1")?, *env.params.get("a2")?).ok()?;
            for (k, b) in angles.iter().enumerate() {
                env.params.insert(format!("b{k}"), *b);
            }
        }
        Some(env)
    }

    /// Rewrites the head of `t` (not normalised); `None` when nothing matches.
    pub fn apply_head(&self, t: &CtrlTerm, dir: Direction) -> Option<CtrlTerm> {
        if !self.allows(dir) {
            return None;
        }
        let (from, to) = self.sides(dir);
        let mod_2pi = self.params == ParamMode::Mod2pi;
        rewrite_head(from, t, &mut |env, width| {
            let env = self.complete(env, dir)?;
            let out = instantiate(to, &env, mod_2pi).ok()?;
            (out.wires().ok()? == width).then_some(out)
        })
    }

    /// Both sides under a random well-typed instantiation drawn from `gens`.
    pub fn random_instance(&self, rng: &mut impl Rng, gens: &[&str]) -> Result<(CtrlTerm, CtrlTerm)> {
        let mut vars = self.lhs.vars();
        let r = self.rhs.vars();
        vars.metas.extend(r.metas);
        vars.widths.extend(r.widths);
        vars.params.extend(r.params);
        let mod_2pi = self.params == ParamMode::Mod2pi;
        // widths are drawn independently, so retry until both sides type-check
        for _ in 0..1000 {
            let mut env = Env::default();
            for m in &vars.metas {
                let w = rng.gen_range(0..=2);
                env.terms.insert(m.clone(), random_circuit(rng, w, gens, 2));
            }
            for w in &vars.widths {
                env.widths.insert(w.clone(), rng.gen_range(0..=2));
            }
            for p in &vars.params {
                env.params.insert(p.clone(), rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
            }
            let env = self
                .complete(&env, Direction::LR)
                .ok_or_else(|| Error::Invalid(format!("rule `{}`: cannot compute parameters", self.name)))?;
            let l = instantiate(&self.lhs, &env, mod_2pi)?;
            let r = instantiate(&self.rhs, &env, mod_2pi)?;
            match (l.wires(), r.wires()) {
                (Ok(a), Ok(b)) if a == b => return Ok((l, r)),
                _ => continue,
            }
        }
        Err(Error::Invalid(format!("rule `{}`: no well-typed instance found", self.name)))
    }
}

/// A model rules are checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Backend(BackendKind),
    /// Permutations with `j` sent to the identity.
    Independence,
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Backend(k) => k.name(),
            Model::Independence => "independence",
        }
    }

    pub fn generators(&self) -> &'static [&'static str] {
        match self {
            Model::Backend(k) => k.generators(),
            Model::Independence => &["j"],
        }
    }

    pub fn equal(&self, lhs: &CtrlTerm, rhs: &CtrlTerm) -> Result<bool> {
        match self {
            Model::Backend(k) => k.equal(lhs, rhs, 1e-9),
            Model::Independence => {
                let b = Override::new(PermBackend, "independence").with_value("j", Permutation::identity(2));
                equal_on(&b, lhs, rhs)
            }
        }
    }
}

/// Number of random instantiations a rule must survive when loaded.
pub const VERIFY_TRIALS: usize = 100;

/// Checks `rule` on `trials` random instantiations in `model`.
pub fn verify_rule(rule: &Rule, model: Model, trials: usize, seed: u64) -> Result<()> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let (l, r) = rule.random_instance(&mut rng, model.generators())?;
        if !model.equal(&l, &r)? {
            return Err(Error::SemanticMismatch {
                rule: rule.name.clone(),
                backend: model.name().to_string(),
                lhs: print_ctrl(&l),
                rhs: print_ctrl(&r),
            });
        }
    }
    Ok(())
}

const CONTROL: &str = include_str!("../../data/rules/control.json");
const STRUCTURAL: &str = include_str!("../../data/rules/structural.json");
const BASE: &str = include_str!("../../data/rules/base.json");

/// Parses a rule file holding one rule object or an array of them.
pub fn parse_rule_specs(text: &str) -> Result<Vec<RuleSpec>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("rule file: {e}")))?;
    let specs = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|s| vec![s])
    };
    specs.map_err(|e| Error::Invalid(format!("rule file: {e}")))
}

/// A set of rules by name.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    rules: BTreeMap<String, Rule>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// Control rules (a)–(h).
    pub fn control() -> Self {
        let mut r = Registry::new();
        r.load_json(CONTROL, None).expect("shipped control rules verify");
        r
    }

    /// Control rules plus functoriality of `c0` and the structural rules of
    /// the symmetric monoidal category.
    pub fn standard() -> Self {
        let mut r = Registry::control();
        r.load_json(STRUCTURAL, None).expect("shipped structural rules verify");
        r
    }

    /// Every shipped base relation, keyed by name.
    pub fn base_catalog() -> Result<Vec<RuleSpec>> {
        parse_rule_specs(BASE)
    }

    /// Standard rules and the relations a signature lists.
    pub fn for_signature(sig: &Signature) -> Result<Self> {
        let mut r = Registry::standard();
        let catalog = Registry::base_catalog()?;
        for name in &sig.relations {
            let spec = catalog.iter().find(|s| &s.name == name).ok_or_else(|| Error::UnknownRule(name.clone()))?;
            r.load_spec(spec, None)?;
        }
        Ok(r)
    }

    /// Loads and verifies one rule, on `model` or else its declared backend.
    pub fn load_spec(&mut self, spec: &RuleSpec, model: Option<Model>) -> Result<()> {
        let rule = Rule::from_spec(spec)?;
        let model = model.unwrap_or(Model::Backend(rule.backend));
        let seed = rule.name.bytes().fold(0xcb3u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
        verify_rule(&rule, model, VERIFY_TRIALS, seed)?;
        self.rules.insert(rule.name.clone(), rule);
        Ok(())
    }

    /// Loads every rule of a rule file; returns their names. Nothing is
    /// added if any rule fails.
    pub fn load_json(&mut self, text: &str, model: Option<Model>) -> Result<Vec<String>> {
        let specs = parse_rule_specs(text)?;
        let mut staged = self.clone();
        for spec in &specs {
            staged.load_spec(spec, model)?;
        }
        *self = staged;
        Ok(specs.into_iter().map(|s| s.name).collect())
    }

    pub fn get(&self, name: &str) -> Result<&Rule> {
        self.rules.get(name).ok_or_else(|| Error::UnknownRule(name.to_string()))
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.values()
    }

    pub fn names(&self) -> Vec<&str> {
        self.rules.keys().map(String::as_str).collect()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Keeps only the named rules.
    pub fn restrict(&self, names: &[&str]) -> Result<Self> {
        let mut out = Registry::new();
        for n in names {
            out.rules.insert(n.to_string(), self.get(n)?.clone());
        }
        Ok(out)
    }
}

/// One rewrite: normalises `t`, rewrites the subterm at `path` with `rule`
/// in direction `dir`, and normalises again.
///
/// When the addressed subterm does not match, the subterms sharing its left
/// edge are tried: its first chain item, then each enclosing term reached by
/// dropping trailing zeros from `path`.
pub fn apply_rule(t: &CtrlTerm, rule: &Rule, dir: Direction, path: &Path) -> Result<CtrlTerm> {
    let t = normalize_structural(t);
    if !rule.allows(dir) {
        return Err(Error::NoMatch { rule: rule.name.clone(), reason: format!("rule cannot be used {dir}") });
    }
    let sub = t.subterm(path).ok();
    if sub.is_none() && path.last() != Some(&0) {
        return Err(Error::BadPath(path.clone()));
    }
    let mut candidates = Vec::new();
    if let Some(sub) = sub {
        candidates.push(path.clone());
        if matches!(sub, CtrlTerm::Seq(..)) {
            candidates.push([path.as_slice(), &[0]].concat());
        }
    }
    let mut up = path.as_slice();
    while let Some((0, parent)) = up.split_last() {
        candidates.push(parent.to_vec());
        up = parent;
    }
    for p in &candidates {
        let Ok(here) = t.subterm(p) else { continue };
        if let Some(new) = rule.apply_head(here, dir) {
            return Ok(normalize_structural(&t.replace(p, new)?));
        }
    }
    Err(Error::NoMatch {
        rule: rule.name.clone(),
        reason: match sub {
            Some(sub) => format!("{dir} side does not match `{}` at path {path:?}", print_ctrl(sub)),
            None => format!("{dir} side matches nothing at path {path:?}"),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_ctrl;

    fn rw(reg: &Registry, text: &str, rule: &str, dir: Direction, path: &[usize]) -> Result<String> {
        apply_rule(&parse_ctrl(text).unwrap(), reg.get(rule).unwrap(), dir, &path.to_vec()).map(|t| print_ctrl(&t))
    }

    #[test]
    fn shipped_rules_load() {
        assert_eq!(Registry::control().len(), 8);
        let std = Registry::standard();
        assert_eq!(std.len(), 17);
        for name in Signature::shipped_names() {
            let sig = Signature::shipped(name).unwrap();
            let reg = Registry::for_signature(&sig).unwrap();
            assert_eq!(reg.len(), 16 + sig.relations.len(), "{name}");
        }
    }

    #[test]
    fn directions() {
        let reg = Registry::standard();
        assert_eq!(rw(&reg, "c1[x ; x]", "a", Direction::LR, &[]).unwrap(), "c1[x] ; c1[x]");
        assert_eq!(rw(&reg, "c1[x] ; c1[x]", "a", Direction::RL, &[]).unwrap(), "c1[x ; x]");
        assert_eq!(rw(&reg, "c1[id2]", "b", Direction::LR, &[]).unwrap(), "id3");
        assert_eq!(rw(&reg, "id3", "b", Direction::RL, &[]).unwrap(), "c1[id2]");
        assert_eq!(rw(&reg, "c1[x + id1]", "c", Direction::LR, &[]).unwrap(), "c1[x] + id1");
        assert_eq!(rw(&reg, "c1[x]", "d", Direction::RL, &[]).unwrap(), "x + id1 ; c0[x] ; x + id1");
        assert_eq!(rw(&reg, "c0[x] ; c1[x]", "e", Direction::LR, &[]).unwrap(), "id1 + x");
        assert!(!reg.get("swap_inv").unwrap().allows(Direction::RL));
    }

    #[test]
    fn rewriting_inside_chains() {
        let reg = Registry::standard();
        // path [1] is the chain suffix starting at the second step
        let out = rw(&reg, "x + id1 ; c0[x] ; c1[x] ; swap 1 1", "e", Direction::LR, &[1]).unwrap();
        assert_eq!(out, "x + id1 ; id1 + x ; swap 1 1");
        let err = rw(&reg, "c1[x]", "e", Direction::LR, &[]).unwrap_err();
        assert!(matches!(err, Error::NoMatch { .. }));
        let err = rw(&reg, "c1[x]", "e", Direction::LR, &[3]).unwrap_err();
        assert!(matches!(err, Error::BadPath(_)));
    }

    #[test]
    fn unsound_rule_is_rejected() {
        let bad = r#"{"name": "bogus", "backend": "perm", "lhs": "c1[?f]", "rhs": "c0[?f]"}"#;
        let err = Registry::new().load_json(bad, None).unwrap_err();
        assert!(matches!(err, Error::SemanticMismatch { ref rule, .. } if rule == "bogus"));
    }

    #[test]
    fn mobit_rule_needs_j() {
        let catalog = Registry::base_catalog().unwrap();
        let mobit = catalog.iter().find(|s| s.name == "mobit").unwrap();
        let err = Registry::new().load_spec(mobit, Some(Model::Independence)).unwrap_err();
        assert!(matches!(err, Error::SemanticMismatch { ref rule, .. } if rule == "mobit"));
        let l = parse_ctrl(&mobit.lhs).unwrap();
        let r = parse_ctrl(&mobit.rhs).unwrap();
        let b = Override::new(PermBackend, "independence").with_value("j", Permutation::identity(2));
        assert_eq!(crate::semantics::eval_ctrl(&l, &b).unwrap(), Permutation::tensor_sym(2, 2));
        assert!(crate::semantics::eval_ctrl(&r, &b).unwrap().is_identity());
    }

    #[test]
    fn euler_rewrite() {
        let reg = Registry::for_signature(&Signature::shipped("quantum").unwrap()).unwrap();
        let t = parse_ctrl("h ; z(0.4) ; h ; z(-1.2) ; h").unwrap();
        let out = apply_rule(&t, reg.get("euler").unwrap(), Direction::LR, &vec![]).unwrap();
        assert!(BackendKind::Complex.equal(&t, &out, 1e-9).unwrap());
        assert!(!reg.get("euler").unwrap().allows(Direction::RL));
    }
}
