//! Term languages: controlled circuits ([`CtrlTerm`]) and direct-sum circuits
//! ([`SumTerm`]).
//!
//! Conventions used everywhere in the crate:
//! * `Seq(f, g)` is diagram order, `f` happens first;
//! * the top wire is the first and most significant wire;
//! * a positive control selects the second diagonal block.

mod lex;
mod parse;
mod signature;

use std::fmt;

pub use parse::{parse_ctrl, parse_ctrl_with, parse_sum, parse_sum_with, print_ctrl, print_sum};
pub(crate) use lex::{describe as describe_tok, Lexer, Tok};
pub use signature::{builtin_arity, GeneratorDecl, Signature};

use crate::error::{Error, Result};

/// Address of a subterm: child indices from the root (0 = left/top/body, 1 = right/bottom).
pub type Path = Vec<usize>;

/// Control polarity: `Positive` fires on `1`, `Negative` on `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Negative,
    Positive,
}

impl Polarity {
    pub fn from_bit(bit: char) -> Option<Self> {
        match bit {
            '0' => Some(Polarity::Negative),
            '1' => Some(Polarity::Positive),
            _ => None,
        }
    }

    pub fn bit(self) -> char {
        match self {
            Polarity::Negative => '0',
            Polarity::Positive => '1',
        }
    }
}

/// A named generator occurrence with its arity and real parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    pub wires: usize,
    pub params: Vec<f64>,
}

impl Generator {
    pub fn new(name: impl Into<String>, wires: usize, params: Vec<f64>) -> Self {
        Generator {
            name: name.into(),
            wires,
            params,
        }
    }

    /// A generator from the builtin table, panicking on unknown names.
    pub fn builtin(name: &str, params: Vec<f64>) -> Self {
        let (wires, _) = builtin_arity(name).unwrap_or_else(|| panic!("unknown builtin `{name}`"));
        Generator::new(name, wires, params)
    }
}

/// Morphisms of the controlled prop.
#[derive(Clone, Debug, PartialEq)]
pub enum CtrlTerm {
    Identity(usize),
    Gen(Generator),
    Not,
    Swap(usize, usize),
    Seq(Box<CtrlTerm>, Box<CtrlTerm>),
    Par(Box<CtrlTerm>, Box<CtrlTerm>),
    Ctrl(Polarity, Box<CtrlTerm>),
}

impl CtrlTerm {
    pub fn gen(name: &str) -> Self {
        CtrlTerm::Gen(Generator::builtin(name, Vec::new()))
    }

    pub fn gen_with(name: &str, params: Vec<f64>) -> Self {
        CtrlTerm::Gen(Generator::builtin(name, params))
    }

    pub fn seq(first: CtrlTerm, then: CtrlTerm) -> Self {
        CtrlTerm::Seq(Box::new(first), Box::new(then))
    }

    pub fn par(top: CtrlTerm, bottom: CtrlTerm) -> Self {
        CtrlTerm::Par(Box::new(top), Box::new(bottom))
    }

    pub fn ctrl(polarity: Polarity, body: CtrlTerm) -> Self {
        CtrlTerm::Ctrl(polarity, Box::new(body))
    }

    pub fn c1(body: CtrlTerm) -> Self {
        CtrlTerm::ctrl(Polarity::Positive, body)
    }

    pub fn c0(body: CtrlTerm) -> Self {
        CtrlTerm::ctrl(Polarity::Negative, body)
    }

    /// Right-nested sequence of `items`; `None` when empty.
    pub fn seq_all(items: impl IntoIterator<Item = CtrlTerm>) -> Option<Self> {
        let mut items: Vec<_> = items.into_iter().collect();
        let mut acc = items.pop()?;
        while let Some(t) = items.pop() {
            acc = CtrlTerm::seq(t, acc);
        }
        Some(acc)
    }

    /// Right-nested parallel composition of `items`; `None` when empty.
    pub fn par_all(items: impl IntoIterator<Item = CtrlTerm>) -> Option<Self> {
        let mut items: Vec<_> = items.into_iter().collect();
        let mut acc = items.pop()?;
        while let Some(t) = items.pop() {
            acc = CtrlTerm::par(t, acc);
        }
        Some(acc)
    }

    /// Number of wires; fails at the first `Seq` whose sides disagree.
    pub fn wires(&self) -> Result<usize> {
        let mut path = Vec::new();
        self.wires_at(&mut path)
    }

    fn wires_at(&self, path: &mut Path) -> Result<usize> {
        Ok(match self {
            CtrlTerm::Identity(n) => *n,
            CtrlTerm::Gen(g) => g.wires,
            CtrlTerm::Not => 1,
            CtrlTerm::Swap(m, n) => m + n,
            CtrlTerm::Seq(..) => {
                // long chains are walked in a loop rather than by recursion
                let base = path.len();
                let mut widths = Vec::new();
                let mut cur = self;
                while let CtrlTerm::Seq(a, b) = cur {
                    path.push(0);
                    widths.push(a.wires_at(path)?);
                    path.pop();
                    path.push(1);
                    cur = b;
                }
                let mut right = cur.wires_at(path)?;
                path.truncate(base);
                for (k, left) in widths.into_iter().enumerate().rev() {
                    if left != right {
                        path.extend(std::iter::repeat(1).take(k));
                        return Err(Error::ArityMismatch { path: path.clone(), left, right });
                    }
                    right = left;
                }
                right
            }
            CtrlTerm::Par(a, b) => {
                path.push(0);
                let top = a.wires_at(path)?;
                path.pop();
                path.push(1);
                let bottom = b.wires_at(path)?;
                path.pop();
                top + bottom
            }
            CtrlTerm::Ctrl(_, body) => {
                path.push(0);
                let n = body.wires_at(path)?;
                path.pop();
                n + 1
            }
        })
    }

    pub fn children(&self) -> Vec<&CtrlTerm> {
        match self {
            CtrlTerm::Seq(a, b) | CtrlTerm::Par(a, b) => vec![a, b],
            CtrlTerm::Ctrl(_, b) => vec![b],
            _ => Vec::new(),
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Result<&CtrlTerm> {
        let mut cur = self;
        for &k in path {
            cur = *cur
                .children()
                .get(k)
                .ok_or_else(|| Error::BadPath(path.to_vec()))?;
        }
        Ok(cur)
    }

    /// Copy of `self` with the subterm at `path` replaced.
    pub fn replace(&self, path: &[usize], new: CtrlTerm) -> Result<CtrlTerm> {
        let Some((&k, rest)) = path.split_first() else {
            return Ok(new);
        };
        let bad = || Error::BadPath(path.to_vec());
        Ok(match (self, k) {
            (CtrlTerm::Seq(a, b), 0) => CtrlTerm::seq(a.replace(rest, new).map_err(|_| bad())?, (**b).clone()),
            (CtrlTerm::Seq(a, b), 1) => CtrlTerm::seq((**a).clone(), b.replace(rest, new).map_err(|_| bad())?),
            (CtrlTerm::Par(a, b), 0) => CtrlTerm::par(a.replace(rest, new).map_err(|_| bad())?, (**b).clone()),
            (CtrlTerm::Par(a, b), 1) => CtrlTerm::par((**a).clone(), b.replace(rest, new).map_err(|_| bad())?),
            (CtrlTerm::Ctrl(p, body), 0) => CtrlTerm::ctrl(*p, body.replace(rest, new).map_err(|_| bad())?),
            _ => return Err(bad()),
        })
    }

    /// Every path in the term, in pre-order.
    pub fn paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect_paths(&mut cur, &mut out);
        out
    }

    fn collect_paths(&self, cur: &mut Path, out: &mut Vec<Path>) {
        out.push(cur.clone());
        for (k, child) in self.children().into_iter().enumerate() {
            cur.push(k);
            child.collect_paths(cur, out);
            cur.pop();
        }
    }

    /// Number of generator, NOT and swap occurrences.
    pub fn gate_count(&self) -> usize {
        match self {
            CtrlTerm::Identity(_) => 0,
            CtrlTerm::Gen(_) | CtrlTerm::Not | CtrlTerm::Swap(..) => 1,
            CtrlTerm::Seq(a, b) | CtrlTerm::Par(a, b) => a.gate_count() + b.gate_count(),
            CtrlTerm::Ctrl(_, b) => b.gate_count(),
        }
    }

    /// Names of all generators occurring in the term.
    pub fn generator_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        self.visit_generators(&mut |g| {
            if !names.contains(&g.name) {
                names.push(g.name.clone());
            }
        });
        names
    }

    fn visit_generators(&self, f: &mut impl FnMut(&Generator)) {
        match self {
            CtrlTerm::Gen(g) => f(g),
            CtrlTerm::Seq(a, b) | CtrlTerm::Par(a, b) => {
                a.visit_generators(f);
                b.visit_generators(f);
            }
            CtrlTerm::Ctrl(_, b) => b.visit_generators(f),
            _ => {}
        }
    }

    pub fn has_params(&self) -> bool {
        let mut any = false;
        self.visit_generators(&mut |g| any |= !g.params.is_empty());
        any
    }
}

impl fmt::Display for CtrlTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ctrl(self))
    }
}

fn parse_bits(bits: &str) -> Result<Vec<Polarity>> {
    bits.chars()
        .map(|c| Polarity::from_bit(c).ok_or_else(|| Error::Invalid(format!("`{bits}` is not a bitstring"))))
        .collect()
}

/// `C^{top}_{bottom}(f)`: `f` controlled on `|top|` wires above it and
/// `|bottom|` wires below it, positively or negatively per bit.
///
/// Bottom controls are moved above `f` by a swap conjugation placed outside
/// the top controls, e.g. `C^{10}_0(x) = (id₂ + swap₁,₁) ; C¹(C⁰(C⁰(x))) ; (id₂ + swap₁,₁)`.
pub fn multi_ctrl(top: &str, bottom: &str, f: CtrlTerm) -> Result<CtrlTerm> {
    let top = parse_bits(top)?;
    let bottom = parse_bits(bottom)?;
    let n = f.wires()?;
    let mut inner = f;
    for &p in bottom.iter().rev() {
        inner = CtrlTerm::ctrl(p, inner);
    }
    for &p in top.iter().rev() {
        inner = CtrlTerm::ctrl(p, inner);
    }
    if bottom.is_empty() {
        return Ok(inner);
    }
    let k = bottom.len();
    let pad = |swap: CtrlTerm| {
        if top.is_empty() {
            swap
        } else {
            CtrlTerm::par(CtrlTerm::Identity(top.len()), swap)
        }
    };
    Ok(CtrlTerm::seq(
        pad(CtrlTerm::Swap(n, k)),
        CtrlTerm::seq(inner, pad(CtrlTerm::Swap(k, n))),
    ))
}

/// Morphisms of the rigged crop, generated by `⊕`.
#[derive(Clone, Debug, PartialEq)]
pub enum SumTerm {
    IdentityD(usize),
    GenTilde(Generator),
    Gamma(usize, usize),
    SeqS(Box<SumTerm>, Box<SumTerm>),
    DirectSum(Box<SumTerm>, Box<SumTerm>),
}

impl SumTerm {
    pub fn seq(first: SumTerm, then: SumTerm) -> Self {
        SumTerm::SeqS(Box::new(first), Box::new(then))
    }

    pub fn sum(top: SumTerm, bottom: SumTerm) -> Self {
        SumTerm::DirectSum(Box::new(top), Box::new(bottom))
    }

    pub fn seq_all(items: impl IntoIterator<Item = SumTerm>) -> Option<Self> {
        let mut items: Vec<_> = items.into_iter().collect();
        let mut acc = items.pop()?;
        while let Some(t) = items.pop() {
            acc = SumTerm::seq(t, acc);
        }
        Some(acc)
    }

    /// Direct sum of `items`, skipping zero-dimensional identities.
    pub fn sum_all(items: impl IntoIterator<Item = SumTerm>) -> Option<Self> {
        let mut items: Vec<_> = items
            .into_iter()
            .filter(|t| !matches!(t, SumTerm::IdentityD(0)))
            .collect();
        let mut acc = items.pop()?;
        while let Some(t) = items.pop() {
            acc = SumTerm::sum(t, acc);
        }
        Some(acc)
    }

    pub fn dim(&self) -> Result<usize> {
        Ok(match self {
            SumTerm::IdentityD(d) => *d,
            SumTerm::GenTilde(g) => {
                if g.wires >= usize::BITS as usize {
                    return Err(Error::Capacity(format!("generator `{}` on {} wires", g.name, g.wires)));
                }
                1 << g.wires
            }
            SumTerm::Gamma(m, n) => m + n,
            SumTerm::SeqS(a, b) => {
                let (l, r) = (a.dim()?, b.dim()?);
                if l != r {
                    return Err(Error::ArityMismatch { path: Vec::new(), left: l, right: r });
                }
                l
            }
            SumTerm::DirectSum(a, b) => a.dim()? + b.dim()?,
        })
    }

    pub fn has_generators(&self) -> bool {
        match self {
            SumTerm::GenTilde(_) => true,
            SumTerm::SeqS(a, b) | SumTerm::DirectSum(a, b) => a.has_generators() || b.has_generators(),
            _ => false,
        }
    }

    pub fn is_identity_node(&self) -> bool {
        matches!(self, SumTerm::IdentityD(_))
    }
}

impl fmt::Display for SumTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_sum(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_counts() {
        assert_eq!(CtrlTerm::c1(CtrlTerm::Not).wires().unwrap(), 2);
        let t = CtrlTerm::par(CtrlTerm::Identity(2), CtrlTerm::Swap(1, 1));
        assert_eq!(t.wires().unwrap(), 4);
        let bad = CtrlTerm::seq(CtrlTerm::Identity(1), CtrlTerm::Identity(2));
        assert!(matches!(bad.wires(), Err(Error::ArityMismatch { .. })));
        let nested = CtrlTerm::c1(CtrlTerm::par(CtrlTerm::Not, bad));
        match nested.wires() {
            Err(Error::ArityMismatch { path, .. }) => assert_eq!(path, vec![0, 1]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn multi_controls() {
        let t = multi_ctrl("10", "0", CtrlTerm::Not).unwrap();
        let swap = CtrlTerm::par(CtrlTerm::Identity(2), CtrlTerm::Swap(1, 1));
        let expected = CtrlTerm::seq(
            swap.clone(),
            CtrlTerm::seq(CtrlTerm::c1(CtrlTerm::c0(CtrlTerm::c0(CtrlTerm::Not))), swap),
        );
        assert_eq!(t, expected);
        assert_eq!(multi_ctrl("", "", CtrlTerm::Not).unwrap(), CtrlTerm::Not);
        assert_eq!(multi_ctrl("1", "", CtrlTerm::Not).unwrap(), CtrlTerm::c1(CtrlTerm::Not));
        let h = CtrlTerm::gen("h");
        for (w, w2) in [("", "1"), ("01", "10"), ("111", "")] {
            let t = multi_ctrl(w, w2, CtrlTerm::par(h.clone(), h.clone())).unwrap();
            assert_eq!(t.wires().unwrap(), w.len() + 2 + w2.len());
        }
        assert!(multi_ctrl("12", "", CtrlTerm::Not).is_err());
    }

    #[test]
    fn paths_and_replacement() {
        let t = CtrlTerm::seq(CtrlTerm::c1(CtrlTerm::Not), CtrlTerm::c0(CtrlTerm::Not));
        assert_eq!(t.subterm(&[1, 0]).unwrap(), &CtrlTerm::Not);
        assert!(matches!(t.subterm(&[2]), Err(Error::BadPath(_))));
        let r = t.replace(&[0, 0], CtrlTerm::gen("v")).unwrap();
        assert_eq!(r.subterm(&[0, 0]).unwrap(), &CtrlTerm::gen("v"));
        assert_eq!(t.paths().len(), 5);
    }

    #[test]
    fn sum_dims() {
        assert_eq!(SumTerm::Gamma(1, 1).dim().unwrap(), 2);
        let t = SumTerm::sum(SumTerm::IdentityD(2), SumTerm::GenTilde(Generator::builtin("x", vec![])));
        assert_eq!(t.dim().unwrap(), 4);
        let bad = SumTerm::seq(SumTerm::IdentityD(2), SumTerm::IdentityD(3));
        assert!(bad.dim().is_err());
    }
}
