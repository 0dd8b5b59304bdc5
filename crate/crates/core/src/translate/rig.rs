//! Controlled circuits to direct-sum circuits and back.

use super::{beta, log2_exact};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::semantics::{eval_sum, PermBackend};
use crate::term::{CtrlTerm, Generator, Polarity, SumTerm};

/// A direct-sum word over `γ₁,₁` for a permutation, via adjacent transpositions.
pub fn gamma_word(p: &Permutation) -> SumTerm {
    let n = p.size();
    let letters = p.adjacent_factorization().into_iter().rev().map(|i| {
        SumTerm::sum_all([SumTerm::IdentityD(i), SumTerm::Gamma(1, 1), SumTerm::IdentityD(n - i - 2)])
            .expect("non-empty")
    });
    SumTerm::seq_all(letters).unwrap_or(SumTerm::IdentityD(n))
}

fn copies(f: &SumTerm, count: usize) -> SumTerm {
    let parts = std::iter::repeat(f.clone()).take(count);
    SumTerm::sum_all(parts).unwrap_or(SumTerm::IdentityD(0))
}

/// `f ⊗ h` written with direct sums only: `h` on each of the `dim f` blocks,
/// then `f` on each of the `dim h` blocks between the two tensor symmetries.
pub fn expand_tensor(f: &SumTerm, h: &SumTerm) -> Result<SumTerm> {
    let (df, dh) = (f.dim()?, h.dim()?);
    let mut items = Vec::new();
    if !h.is_identity_node() {
        items.push(copies(h, df));
    }
    if !f.is_identity_node() {
        let there = Permutation::tensor_sym(df, dh);
        let back = Permutation::tensor_sym(dh, df);
        if !there.is_identity() {
            items.push(gamma_word(&there));
        }
        items.push(copies(f, dh));
        if !back.is_identity() {
            items.push(gamma_word(&back));
        }
    }
    Ok(SumTerm::seq_all(items).unwrap_or(SumTerm::IdentityD(df * dh)))
}

/// The direct-sum image of a controlled circuit.
pub fn a_translate(t: &CtrlTerm) -> Result<SumTerm> {
    t.wires()?;
    translate_a(t)
}

fn translate_a(t: &CtrlTerm) -> Result<SumTerm> {
    Ok(match t {
        CtrlTerm::Identity(n) => SumTerm::IdentityD(1 << n),
        CtrlTerm::Gen(g) => SumTerm::GenTilde(g.clone()),
        CtrlTerm::Not => SumTerm::Gamma(1, 1),
        CtrlTerm::Swap(m, n) => gamma_word(&Permutation::tensor_sym(1 << m, 1 << n)),
        CtrlTerm::Seq(a, b) => SumTerm::seq(translate_a(a)?, translate_a(b)?),
        CtrlTerm::Par(a, b) => expand_tensor(&translate_a(a)?, &translate_a(b)?)?,
        CtrlTerm::Ctrl(p, f) => {
            let body = translate_a(f)?;
            let id = SumTerm::IdentityD(1 << f.wires()?);
            match p {
                Polarity::Positive => SumTerm::sum(id, body),
                Polarity::Negative => SumTerm::sum(body, id),
            }
        }
    })
}

/// The controlled circuit of a direct-sum circuit on `2^m` dimensions.
///
/// Blocks of the shapes `id ⊕ f`, `f ⊕ id` and `f ⊕ f` become controls
/// directly; everything else is cut into layers and every generator is
/// conjugated by a permutation into the last block, where it is an all-ones
/// multi-controlled gate.
pub fn b_translate(s: &SumTerm) -> Result<CtrlTerm> {
    let d = s.dim()?;
    log2_exact(d)?;
    translate_b(s)
}

fn translate_b(s: &SumTerm) -> Result<CtrlTerm> {
    let d = s.dim()?;
    let m = log2_exact(d)?;
    if !s.has_generators() {
        return beta(&eval_sum(s, &PermBackend)?);
    }
    match s {
        SumTerm::IdentityD(_) => Ok(CtrlTerm::Identity(m)),
        SumTerm::GenTilde(g) => Ok(CtrlTerm::Gen(g.clone())),
        SumTerm::Gamma(..) => unreachable!("no generators"),
        SumTerm::SeqS(a, b) => Ok(CtrlTerm::seq(translate_b(a)?, translate_b(b)?)),
        SumTerm::DirectSum(a, b) if m >= 1 && a.dim()? == b.dim()? => {
            if a.is_identity_node() {
                Ok(CtrlTerm::c1(translate_b(b)?))
            } else if b.is_identity_node() {
                Ok(CtrlTerm::c0(translate_b(a)?))
            } else if a == b {
                Ok(CtrlTerm::par(CtrlTerm::Identity(1), translate_b(a)?))
            } else {
                Ok(CtrlTerm::seq(CtrlTerm::c0(translate_b(a)?), CtrlTerm::c1(translate_b(b)?)))
            }
        }
        SumTerm::DirectSum(..) => layered(s, m),
    }
}

#[derive(Clone, Debug)]
enum Atom {
    Perm(Permutation),
    Gen(Generator),
}

impl Atom {
    fn dim(&self) -> usize {
        match self {
            Atom::Perm(p) => p.size(),
            Atom::Gen(g) => 1 << g.wires,
        }
    }
}

/// Direct sums pushed below sequential composition: a list of layers, each a
/// list of side-by-side atoms.
fn layers(s: &SumTerm) -> Result<Vec<Vec<Atom>>> {
    Ok(match s {
        SumTerm::IdentityD(d) => vec![vec![Atom::Perm(Permutation::identity(*d))]],
        SumTerm::Gamma(m, n) => vec![vec![Atom::Perm(Permutation::gamma(*m, *n))]],
        SumTerm::GenTilde(g) => vec![vec![Atom::Gen(g.clone())]],
        SumTerm::SeqS(a, b) => {
            let mut out = layers(a)?;
            out.extend(layers(b)?);
            out
        }
        SumTerm::DirectSum(a, b) => {
            let (mut la, mut lb) = (layers(a)?, layers(b)?);
            let (da, db) = (a.dim()?, b.dim()?);
            while la.len() < lb.len() {
                la.push(vec![Atom::Perm(Permutation::identity(da))]);
            }
            while lb.len() < la.len() {
                lb.push(vec![Atom::Perm(Permutation::identity(db))]);
            }
            la.into_iter()
                .zip(lb)
                .map(|(mut x, y)| {
                    x.extend(y);
                    x
                })
                .collect()
        }
    })
}

enum Step {
    Perm(Permutation),
    /// generator acting on the last `2^wires` dimensions
    Aligned(Generator),
}

/// Moves positions `offset .. offset+len` to the end of `[n]`, keeping the order of everything else.
fn to_end(n: usize, offset: usize, len: usize) -> Permutation {
    let mut images = vec![0; n];
    let mut next = 0;
    for (i, img) in images.iter_mut().enumerate() {
        if (offset..offset + len).contains(&i) {
            *img = n - len + (i - offset);
        } else {
            *img = next;
            next += 1;
        }
    }
    Permutation::new(images).expect("bijection")
}

fn layered(s: &SumTerm, m: usize) -> Result<CtrlTerm> {
    let n = 1usize << m;
    let mut steps: Vec<Step> = Vec::new();
    let push_perm = |steps: &mut Vec<Step>, p: Permutation| -> Result<()> {
        if let Some(Step::Perm(prev)) = steps.last_mut() {
            *prev = prev.then(&p)?;
        } else {
            steps.push(Step::Perm(p));
        }
        Ok(())
    };
    for layer in layers(s)? {
        let mut perm_part = Permutation::identity(0);
        let mut gens = Vec::new();
        let mut offset = 0;
        for atom in &layer {
            match atom {
                Atom::Perm(p) => perm_part = Permutation::direct_sum(&perm_part, p),
                Atom::Gen(g) => {
                    perm_part = Permutation::direct_sum(&perm_part, &Permutation::identity(atom.dim()));
                    gens.push((offset, g.clone()));
                }
            }
            offset += atom.dim();
        }
        if perm_part.size() != n {
            return Err(Error::UnplaceableGenerator(format!("layer of dimension {} in {n}", perm_part.size())));
        }
        push_perm(&mut steps, perm_part)?;
        for (offset, g) in gens {
            let len = 1usize << g.wires;
            if g.wires > m {
                return Err(Error::UnplaceableGenerator(format!("`{}` is wider than the circuit", g.name)));
            }
            let pi = to_end(n, offset, len);
            let back = pi.inverse();
            push_perm(&mut steps, pi)?;
            steps.push(Step::Aligned(g));
            push_perm(&mut steps, back)?;
        }
    }
    let mut gates = Vec::new();
    for step in steps {
        match step {
            Step::Perm(p) if p.is_identity() => {}
            Step::Perm(p) => gates.push(beta(&p)?),
            Step::Aligned(g) => {
                let controls = m - g.wires;
                let mut t = CtrlTerm::Gen(g);
                for _ in 0..controls {
                    t = CtrlTerm::c1(t);
                }
                gates.push(t);
            }
        }
    }
    Ok(CtrlTerm::seq_all(gates).unwrap_or(CtrlTerm::Identity(m)))
}
