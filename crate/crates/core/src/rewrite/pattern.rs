//! Rule patterns: circuit terms with metavariables.
//!
//! Syntax extends the circuit language with
//! * `?f` for a metavariable standing for a circuit,
//! * symbolic widths in `id` and `swap`: `id ?n`, `id #f` (the wire count of `?f`),
//!   `id{?n+1}`, `swap #f #g`,
//! * parameter expressions: `z(?a)`, `phase(?a+?b)`, `phase(2pi)`.
//!
//! Inside `;` and `+` lists a metavariable binds a contiguous segment, shortest
//! first, with backtracking. An `id` item inside a `+` list may consume part
//! of an identity factor, or nothing when its width is 0.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::term::{builtin_arity, CtrlTerm, Generator, Lexer, Polarity, Tok};

use super::normal::{chain_items, par_items};

#[derive(Clone, Debug, PartialEq, Default)]
pub struct WidthExpr {
    pub constant: usize,
    pub vars: Vec<String>,
    /// `#f` terms: the wire count of a metavariable's binding.
    pub wires_of: Vec<String>,
}

impl WidthExpr {
    pub fn constant(n: usize) -> Self {
        WidthExpr { constant: n, ..Default::default() }
    }

    fn eval(&self, env: &Env) -> Result<usize> {
        let mut total = self.constant;
        for v in &self.vars {
            total += env.widths.get(v).ok_or_else(|| Error::Invalid(format!("unbound width ?{v}")))?;
        }
        for m in &self.wires_of {
            total += env.terms.get(m).ok_or_else(|| Error::Invalid(format!("unbound metavariable ?{m}")))?.wires()?;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParamAtom {
    Const(f64),
    Var(String),
}

/// A sum of constants and parameter variables.
pub type ParamExpr = Vec<ParamAtom>;

#[derive(Clone, Debug, PartialEq)]
pub enum Pat {
    Meta(String),
    Id(WidthExpr),
    Not,
    Swap(WidthExpr, WidthExpr),
    Gen { name: String, params: Vec<ParamExpr> },
    Seq(Vec<Pat>),
    Par(Vec<Pat>),
    Ctrl(Polarity, Box<Pat>),
}

/// Variables occurring in a pattern, by sort.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Vars {
    pub metas: BTreeSet<String>,
    pub widths: BTreeSet<String>,
    pub params: BTreeSet<String>,
}

impl Pat {
    pub fn vars(&self) -> Vars {
        let mut v = Vars::default();
        self.collect(&mut v);
        v
    }

    fn collect(&self, v: &mut Vars) {
        let width = |w: &WidthExpr, v: &mut Vars| {
            v.widths.extend(w.vars.iter().cloned());
            v.metas.extend(w.wires_of.iter().cloned());
        };
        match self {
            Pat::Meta(m) => {
                v.metas.insert(m.clone());
            }
            Pat::Id(w) => width(w, v),
            Pat::Swap(a, b) => {
                width(a, v);
                width(b, v);
            }
            Pat::Not => {}
            Pat::Gen { params, .. } => {
                for e in params {
                    for a in e {
                        if let ParamAtom::Var(name) = a {
                            v.params.insert(name.clone());
                        }
                    }
                }
            }
            Pat::Seq(ps) | Pat::Par(ps) => ps.iter().for_each(|p| p.collect(v)),
            Pat::Ctrl(_, body) => body.collect(v),
        }
    }

    /// Whether some generator takes a parameter sum, which cannot be matched.
    pub fn has_param_sums(&self) -> bool {
        match self {
            Pat::Gen { params, .. } => params.iter().any(|e| e.len() > 1),
            Pat::Seq(ps) | Pat::Par(ps) => ps.iter().any(Pat::has_param_sums),
            Pat::Ctrl(_, body) => body.has_param_sums(),
            _ => false,
        }
    }

    /// Metavariables whose widths only occur through `#f` would be unsolvable
    /// if they appeared nowhere else; this reports width expressions with two
    /// or more free variables, which the matcher cannot solve.
    pub fn has_ambiguous_widths(&self) -> bool {
        let bad = |w: &WidthExpr| w.vars.len() > 1;
        match self {
            Pat::Id(w) => bad(w),
            Pat::Swap(a, b) => bad(a) || bad(b),
            Pat::Seq(ps) | Pat::Par(ps) => ps.iter().any(Pat::has_ambiguous_widths),
            Pat::Ctrl(_, body) => body.has_ambiguous_widths(),
            _ => false,
        }
    }
}

pub fn parse_pattern(text: &str) -> Result<Pat> {
    let mut lx = Lexer::new(text)?;
    let p = p_term(&mut lx)?;
    lx.expect_end()?;
    Ok(p)
}

fn p_term(lx: &mut Lexer) -> Result<Pat> {
    let mut items = Vec::new();
    loop {
        match p_par(lx)? {
            Pat::Seq(inner) => items.extend(inner),
            p => items.push(p),
        }
        if !lx.eat_punct(';') {
            break;
        }
    }
    Ok(if items.len() == 1 { items.pop().unwrap() } else { Pat::Seq(items) })
}

fn p_par(lx: &mut Lexer) -> Result<Pat> {
    let mut items = Vec::new();
    loop {
        match p_atom(lx)? {
            Pat::Par(inner) => items.extend(inner),
            p => items.push(p),
        }
        if !lx.eat_punct('+') {
            break;
        }
    }
    Ok(if items.len() == 1 { items.pop().unwrap() } else { Pat::Par(items) })
}

fn var_name(lx: &mut Lexer) -> Result<String> {
    match lx.next() {
        Tok::Ident(s) => Ok(s),
        _ => Err(lx.error("expected a variable name")),
    }
}

fn width_atom(lx: &mut Lexer, w: &mut WidthExpr) -> Result<()> {
    if lx.eat_punct('?') {
        w.vars.push(var_name(lx)?);
    } else if lx.eat_punct('#') {
        w.wires_of.push(var_name(lx)?);
    } else {
        w.constant += lx.expect_usize()?;
    }
    Ok(())
}

fn width(lx: &mut Lexer) -> Result<WidthExpr> {
    let mut w = WidthExpr::default();
    if lx.eat_punct('{') {
        loop {
            width_atom(lx, &mut w)?;
            if !lx.eat_punct('+') {
                break;
            }
        }
        lx.expect_punct('}')?;
    } else {
        width_atom(lx, &mut w)?;
    }
    Ok(w)
}

fn param_expr(lx: &mut Lexer) -> Result<ParamExpr> {
    let mut out = Vec::new();
    loop {
        if lx.eat_punct('?') {
            out.push(ParamAtom::Var(var_name(lx)?));
        } else {
            out.push(ParamAtom::Const(lx.expect_real()?));
        }
        if !lx.eat_punct('+') {
            break;
        }
    }
    Ok(out)
}

fn p_atom(lx: &mut Lexer) -> Result<Pat> {
    match lx.next() {
        Tok::Punct('(') => {
            let p = p_term(lx)?;
            lx.expect_punct(')')?;
            Ok(p)
        }
        Tok::Punct('?') => Ok(Pat::Meta(var_name(lx)?)),
        Tok::Ident(name) => {
            if name == "id" {
                return Ok(Pat::Id(width(lx)?));
            }
            if let Some(rest) = name.strip_prefix("id") {
                if let Ok(n) = rest.parse() {
                    return Ok(Pat::Id(WidthExpr::constant(n)));
                }
            }
            match name.as_str() {
                "x" => Ok(Pat::Not),
                "swap" => {
                    let a = width(lx)?;
                    let b = width(lx)?;
                    Ok(Pat::Swap(a, b))
                }
                "c0" | "c1" => {
                    let p = if name == "c1" { Polarity::Positive } else { Polarity::Negative };
                    lx.expect_punct('[')?;
                    let body = p_term(lx)?;
                    lx.expect_punct(']')?;
                    Ok(Pat::Ctrl(p, Box::new(body)))
                }
                _ => {
                    let Some((_, count)) = builtin_arity(&name) else {
                        return Err(lx.error(format!("unknown generator `{name}`")));
                    };
                    let mut params = Vec::new();
                    if lx.eat_punct('(') {
                        params.push(param_expr(lx)?);
                        while lx.eat_punct(',') {
                            params.push(param_expr(lx)?);
                        }
                        lx.expect_punct(')')?;
                    }
                    if params.len() != count {
                        return Err(lx.error(format!("`{name}` takes {count} parameter(s), got {}", params.len())));
                    }
                    Ok(Pat::Gen { name, params })
                }
            }
        }
        t => Err(lx.error(format!("expected a pattern, found {}", crate::term::describe_tok(&t)))),
    }
}

/// Bindings produced by a match.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub terms: BTreeMap<String, CtrlTerm>,
    pub widths: BTreeMap<String, usize>,
    pub params: BTreeMap<String, f64>,
    /// Width constraints waiting for a metavariable to be bound.
    pending: Vec<(WidthExpr, usize)>,
}

/// Solves `w = value`. A free width variable may only become 0 when it
/// matched an explicit identity (`explicit`).
fn match_width(w: &WidthExpr, value: usize, env: &Env, explicit: bool) -> Option<Env> {
    let mut known = w.constant;
    let mut waiting = false;
    for m in &w.wires_of {
        match env.terms.get(m) {
            Some(t) => known += t.wires().ok()?,
            None => waiting = true,
        }
    }
    let mut free: Vec<&String> = Vec::new();
    for v in &w.vars {
        match env.widths.get(v) {
            Some(n) => known += n,
            None => free.push(v),
        }
    }
    if known > value {
        return None;
    }
    if waiting {
        let mut e = env.clone();
        e.pending.push((w.clone(), value));
        return Some(e);
    }
    if free.is_empty() {
        return (known == value).then(|| env.clone());
    }
    if free.iter().any(|v| *v != free[0]) {
        return None;
    }
    let rest = value - known;
    if rest % free.len() != 0 || (rest == 0 && !explicit) {
        return None;
    }
    let mut e = env.clone();
    e.widths.insert(free[0].clone(), rest / free.len());
    Some(e)
}

fn resolve(mut env: Env) -> Option<Env> {
    let pending = std::mem::take(&mut env.pending);
    for (w, v) in pending {
        if w.wires_of.iter().all(|m| env.terms.contains_key(m)) {
            env = match_width(&w, v, &env, true)?;
        } else {
            env.pending.push((w, v));
        }
    }
    Some(env)
}

fn bind(env: &Env, name: &str, t: CtrlTerm) -> Option<Env> {
    let mut e = env.clone();
    e.terms.insert(name.to_string(), t);
    resolve(e)
}

fn match_params(exprs: &[ParamExpr], values: &[f64], env: &Env) -> Option<Env> {
    if exprs.len() != values.len() {
        return None;
    }
    let mut e = env.clone();
    for (ex, &v) in exprs.iter().zip(values) {
        if let [atom] = ex.as_slice() {
            match atom {
                ParamAtom::Const(c) => {
                    if *c != v {
                        return None;
                    }
                }
                ParamAtom::Var(a) => match e.params.get(a) {
                    Some(b) if *b != v => return None,
                    Some(_) => {}
                    None => {
                        e.params.insert(a.clone(), v);
                    }
                },
            }
        } else {
            let mut sum = 0.0;
            for atom in ex {
                sum += match atom {
                    ParamAtom::Const(c) => *c,
                    ParamAtom::Var(a) => *e.params.get(a)?,
                };
            }
            if sum != v {
                return None;
            }
        }
    }
    Some(e)
}

type Cont<'a> = &'a mut dyn FnMut(Env) -> bool;
type ListCont<'a> = &'a mut dyn FnMut(Env, &[CtrlTerm]) -> bool;

fn m_pat(p: &Pat, t: &CtrlTerm, env: Env, k: Cont) -> bool {
    match p {
        Pat::Meta(f) => match env.terms.get(f) {
            Some(b) => b == t && k(env),
            None => bind(&env, f, t.clone()).is_some_and(|e| k(e)),
        },
        Pat::Id(w) => match t {
            CtrlTerm::Identity(n) => match_width(w, *n, &env, true).is_some_and(|e| k(e)),
            _ => false,
        },
        Pat::Not => matches!(t, CtrlTerm::Not) && k(env),
        Pat::Swap(a, b) => match t {
            CtrlTerm::Swap(m, n) => match_width(a, *m, &env, true)
                .and_then(|e| match_width(b, *n, &e, true))
                .is_some_and(|e| k(e)),
            _ => false,
        },
        Pat::Gen { name, params } => match t {
            CtrlTerm::Gen(g) if &g.name == name => match_params(params, &g.params, &env).is_some_and(|e| k(e)),
            _ => false,
        },
        Pat::Ctrl(pol, body) => match t {
            CtrlTerm::Ctrl(q, tb) if q == pol => m_pat(body, tb, env, k),
            _ => false,
        },
        Pat::Seq(ps) => {
            let Ok(width) = t.wires() else { return false };
            m_seq(ps, &chain_items(t), width, env, &mut |e, rest| rest.is_empty() && k(e))
        }
        Pat::Par(ps) => m_par(ps, &par_items(t), env, &mut |e, rest| rest.is_empty() && k(e)),
    }
}

fn m_seq(ps: &[Pat], items: &[CtrlTerm], width: usize, env: Env, k: ListCont) -> bool {
    let Some(p0) = ps.first() else { return k(env, items) };
    match p0 {
        Pat::Meta(f) => match env.terms.get(f) {
            None => {
                for len in 1..=items.len() {
                    let bound = CtrlTerm::seq_all(items[..len].iter().cloned()).expect("non-empty");
                    if let Some(e) = bind(&env, f, bound) {
                        if m_seq(&ps[1..], &items[len..], width, e, k) {
                            return true;
                        }
                    }
                }
                false
            }
            Some(b) => {
                let steps = chain_items(b);
                items.starts_with(&steps) && m_seq(&ps[1..], &items[steps.len()..], width, env, k)
            }
        },
        // an identity step in a chain consumes nothing
        Pat::Id(w) => match_width(w, width, &env, true).is_some_and(|e| m_seq(&ps[1..], items, width, e, k)),
        _ => match items.first() {
            Some(first) => m_pat(p0, first, env, &mut |e| m_seq(&ps[1..], &items[1..], width, e, &mut *k)),
            None => false,
        },
    }
}

/// Removes `factors` from the front of `items`, splitting an identity if needed.
fn strip_factors(factors: &[CtrlTerm], items: &[CtrlTerm]) -> Option<Vec<CtrlTerm>> {
    let mut rest: Vec<CtrlTerm> = items.to_vec();
    for f in factors {
        if rest.is_empty() {
            return None;
        }
        match (f, &rest[0]) {
            (CtrlTerm::Identity(a), CtrlTerm::Identity(n)) if a < n => rest[0] = CtrlTerm::Identity(n - a),
            (a, b) if a == b => {
                rest.remove(0);
            }
            _ => return None,
        }
    }
    Some(rest)
}

fn m_par(ps: &[Pat], items: &[CtrlTerm], env: Env, k: ListCont) -> bool {
    let Some(p0) = ps.first() else { return k(env, items) };
    let lead_id = match items.first() {
        Some(CtrlTerm::Identity(n)) => Some(*n),
        _ => None,
    };
    let split = |j: usize, n: usize| -> Vec<CtrlTerm> {
        let mut rest = Vec::with_capacity(items.len());
        if j < n {
            rest.push(CtrlTerm::Identity(n - j));
        }
        rest.extend_from_slice(&items[1..]);
        rest
    };
    match p0 {
        Pat::Meta(f) => match env.terms.get(f) {
            None => {
                if let Some(n) = lead_id {
                    for j in 1..n {
                        if let Some(e) = bind(&env, f, CtrlTerm::Identity(j)) {
                            if m_par(&ps[1..], &split(j, n), e, k) {
                                return true;
                            }
                        }
                    }
                }
                for len in 1..=items.len() {
                    let bound = CtrlTerm::par_all(items[..len].iter().cloned()).expect("non-empty");
                    if let Some(e) = bind(&env, f, bound) {
                        if m_par(&ps[1..], &items[len..], e, k) {
                            return true;
                        }
                    }
                }
                false
            }
            Some(b) => match strip_factors(&par_items(b), items) {
                Some(rest) => m_par(&ps[1..], &rest, env, k),
                None => false,
            },
        },
        Pat::Id(w) => {
            if let Some(n) = lead_id {
                for j in (1..=n).rev() {
                    if let Some(e) = match_width(w, j, &env, true) {
                        if m_par(&ps[1..], &split(j, n), e, k) {
                            return true;
                        }
                    }
                }
            }
            match_width(w, 0, &env, false).is_some_and(|e| m_par(&ps[1..], items, e, k))
        }
        _ => match items.first() {
            Some(first) => m_pat(p0, first, env, &mut |e| m_par(&ps[1..], &items[1..], e, &mut *k)),
            None => false,
        },
    }
}

/// Matches `p` against all of `t`.
pub fn match_term(p: &Pat, t: &CtrlTerm) -> Option<Env> {
    let mut found = None;
    m_pat(p, t, Env::default(), &mut |e| {
        if e.pending.is_empty() {
            found = Some(e);
            true
        } else {
            false
        }
    });
    found
}

/// Matches `p` at the head of `t` and asks `build` for the replacement of the
/// matched part. A `;` pattern matches a prefix of the chain at `t` and a `+`
/// pattern a prefix of its factor list; the unmatched remainder is kept.
/// Backtracks into later matches while `build` declines.
pub(crate) fn rewrite_head(
    p: &Pat,
    t: &CtrlTerm,
    build: &mut dyn FnMut(&Env, usize) -> Option<CtrlTerm>,
) -> Option<CtrlTerm> {
    let width = t.wires().ok()?;
    let mut out = None;
    match p {
        Pat::Seq(ps) => {
            m_seq(ps, &chain_items(t), width, Env::default(), &mut |e, rest| {
                if !e.pending.is_empty() {
                    return false;
                }
                let Some(new) = build(&e, width) else { return false };
                let mut items = vec![new];
                items.extend_from_slice(rest);
                out = CtrlTerm::seq_all(items);
                true
            });
        }
        Pat::Par(ps) => {
            m_par(ps, &par_items(t), Env::default(), &mut |e, rest| {
                if !e.pending.is_empty() {
                    return false;
                }
                let rest_width: usize = rest.iter().map(|r| r.wires().unwrap_or(0)).sum();
                let Some(new) = build(&e, width - rest_width) else { return false };
                let mut items = vec![new];
                items.extend_from_slice(rest);
                out = CtrlTerm::par_all(items);
                true
            });
        }
        _ => {
            m_pat(p, t, Env::default(), &mut |e| {
                if !e.pending.is_empty() {
                    return false;
                }
                out = build(&e, width);
                out.is_some()
            });
        }
    }
    out
}

/// Builds the circuit described by `p` under `env`. Parameter sums are reduced
/// into `[0, 2π)` when `mod_2pi` is set.
pub fn instantiate(p: &Pat, env: &Env, mod_2pi: bool) -> Result<CtrlTerm> {
    Ok(match p {
        Pat::Meta(f) => env.terms.get(f).cloned().ok_or_else(|| Error::Invalid(format!("unbound metavariable ?{f}")))?,
        Pat::Id(w) => CtrlTerm::Identity(w.eval(env)?),
        Pat::Not => CtrlTerm::Not,
        Pat::Swap(a, b) => CtrlTerm::Swap(a.eval(env)?, b.eval(env)?),
        Pat::Gen { name, params } => {
            let (wires, _) = builtin_arity(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            let mut values = Vec::new();
            for ex in params {
                let mut sum = 0.0;
                for atom in ex {
                    sum += match atom {
                        ParamAtom::Const(c) => *c,
                        ParamAtom::Var(a) => {
                            *env.params.get(a).ok_or_else(|| Error::Invalid(format!("unbound parameter ?{a}")))?
                        }
                    };
                }
                if mod_2pi && ex.len() > 1 {
                    sum = sum.rem_euclid(std::f64::consts::TAU);
                }
                values.push(sum);
            }
            CtrlTerm::Gen(Generator::new(name.clone(), wires, values))
        }
        Pat::Seq(ps) => CtrlTerm::seq_all(ps.iter().map(|q| instantiate(q, env, mod_2pi)).collect::<Result<Vec<_>>>()?)
            .expect("non-empty"),
        Pat::Par(ps) => CtrlTerm::par_all(ps.iter().map(|q| instantiate(q, env, mod_2pi)).collect::<Result<Vec<_>>>()?)
            .expect("non-empty"),
        Pat::Ctrl(pol, body) => CtrlTerm::Ctrl(*pol, Box::new(instantiate(body, env, mod_2pi)?)),
    })
}
