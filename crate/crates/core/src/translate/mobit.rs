//! Gray-code `J` letters, the mobit translations and GF(2) factorisation.

use serde::{Deserialize, Serialize};

use super::{log2_exact, theta_circuit};
use crate::error::{Error, Result};
use crate::gray::{flip_is_rising, gray_context, gray_rank, gray_transposition};
use crate::perm::Permutation;
use crate::semantics::{eval_ctrl, gf2_is_invertible, j_matrix, Gf2Backend, Gf2Matrix, Matrix};
use crate::term::{multi_ctrl, CtrlTerm};

fn embed(n_dim: usize, i: usize, block: &Gf2Matrix) -> Gf2Matrix {
    let before = Matrix::identity(i);
    let after = Matrix::identity(n_dim - i - block.dim());
    before.direct_sum(block).direct_sum(&after)
}

fn perm_matrix(p: &Permutation) -> Gf2Matrix {
    Matrix::from_perm(p)
}

/// `ζ_{n,i}`: `J` acting on the basis vectors of the Gray words `h_n(i)`, `h_n(i+1)`, in that order.
pub fn zeta(n: usize, i: usize) -> Result<Gf2Matrix> {
    gray_context(n, i)?;
    let r = perm_matrix(&gray_rank(n)?);
    let r_inv = r.transpose();
    let inner = embed(1 << n, i, &j_matrix());
    r.mul(&inner)?.mul(&r_inv)
}

/// `ζ_{n,i}` by induction on `n`, mirroring the inductive Gray transpositions.
pub fn zeta_inductive(n: usize, i: usize) -> Result<Gf2Matrix> {
    gray_context(n, i)?;
    if n == 1 {
        return Ok(j_matrix());
    }
    let half = 1usize << (n - 1);
    if i < half - 1 {
        Ok(zeta_inductive(n - 1, i)?.direct_sum(&Matrix::identity(half)))
    } else if i == half - 1 {
        let there = perm_matrix(&Permutation::tensor_sym(2, half));
        let back = perm_matrix(&Permutation::tensor_sym(half, 2));
        back.mul(&embed(2 * half, half, &j_matrix()))?.mul(&there)
    } else {
        let j = 2 * half - 2 - i;
        let theta = perm_matrix(&gray_transposition(n - 1, j)?);
        let inner = theta.mul(&zeta_inductive(n - 1, j)?)?.mul(&theta)?;
        Ok(Matrix::identity(half).direct_sum(&inner))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LetterKind {
    Theta,
    Zeta,
    ZetaInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrayLetter {
    pub kind: LetterKind,
    pub i: usize,
}

/// A product `L₁ · L₂ · … · L_m` of Gray letters on `2^n` dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayWord {
    pub n: usize,
    pub letters: Vec<GrayLetter>,
}

#[derive(Serialize, Deserialize)]
struct LetterFile {
    kind: LetterKind,
    n: usize,
    i: usize,
}

/// Matrix of a single letter.
pub fn gray_letter_matrix(n: usize, letter: GrayLetter) -> Result<Gf2Matrix> {
    match letter.kind {
        LetterKind::Theta => Ok(perm_matrix(&gray_transposition(n, letter.i)?)),
        LetterKind::Zeta => zeta(n, letter.i),
        LetterKind::ZetaInv => Ok(zeta(n, letter.i)?.pow(2)),
    }
}

impl GrayWord {
    pub fn matrix(&self) -> Result<Gf2Matrix> {
        let mut acc = Matrix::identity(1 << self.n);
        for &l in &self.letters {
            acc = acc.mul(&gray_letter_matrix(self.n, l)?)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> String {
        let letters: Vec<LetterFile> =
            self.letters.iter().map(|l| LetterFile { kind: l.kind, n: self.n, i: l.i }).collect();
        serde_json::to_string_pretty(&letters).expect("serializable")
    }

    /// Parses a letter list; an empty list is read as a word on `n_if_empty` bits.
    pub fn from_json(text: &str, n_if_empty: usize) -> Result<Self> {
        let letters: Vec<LetterFile> =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("Gray word: {e}")))?;
        let n = letters.first().map_or(n_if_empty, |l| l.n);
        if letters.iter().any(|l| l.n != n) {
            return Err(Error::Invalid("Gray word letters disagree on n".into()));
        }
        for l in &letters {
            gray_context(n, l.i)?;
        }
        Ok(GrayWord { n, letters: letters.into_iter().map(|l| GrayLetter { kind: l.kind, i: l.i }).collect() })
    }
}

/// The GF(2) matrix of a circuit over `x` and `j`.
pub fn a_j(t: &CtrlTerm) -> Result<Gf2Matrix> {
    if let Some(g) = t.generator_names().into_iter().find(|g| g != "j") {
        return Err(Error::UnknownGenerator(format!("{g} (only `x` and `j` are allowed here)")));
    }
    eval_ctrl(t, &Gf2Backend)
}

fn letter_circuit(n: usize, letter: GrayLetter) -> Result<CtrlTerm> {
    if letter.kind == LetterKind::Theta {
        return theta_circuit(n, letter.i);
    }
    let ctx = gray_context(n, letter.i)?;
    let rising = flip_is_rising(n, letter.i)?;
    let j = CtrlTerm::gen("j");
    let jj = CtrlTerm::seq(j.clone(), j.clone());
    // in the falling case the pair is met in reverse order, where J reads as J²
    let body = match (letter.kind, rising) {
        (LetterKind::Zeta, true) | (LetterKind::ZetaInv, false) => j,
        _ => jj,
    };
    multi_ctrl(&ctx.prefix, &ctx.suffix, body)
}

/// A circuit over `x` and `j` whose matrix is the product of the word.
pub fn b_j(w: &GrayWord) -> Result<CtrlTerm> {
    let gates = w.letters.iter().rev().map(|&l| letter_circuit(w.n, l)).collect::<Result<Vec<_>>>()?;
    Ok(CtrlTerm::seq_all(gates).unwrap_or(CtrlTerm::Identity(w.n)))
}

/// Left multiplications by adjacent elementary matrices, lexicographic positions.
#[derive(Clone, Copy, Debug)]
enum RowOp {
    /// exchange rows k and k+1
    Swap(usize),
    /// row k += row k+1, the matrix `J·X` at k
    AddBelow(usize),
    /// row k+1 += row k, the matrix `X·J` at k
    AddAbove(usize),
}

struct Eliminator {
    rows: Vec<Vec<bool>>,
    ops: Vec<RowOp>,
}

impl Eliminator {
    fn apply(&mut self, op: RowOp) {
        match op {
            RowOp::Swap(k) => self.rows.swap(k, k + 1),
            RowOp::AddBelow(k) => {
                let src = self.rows[k + 1].clone();
                self.rows[k].iter_mut().zip(src).for_each(|(a, b)| *a ^= b);
            }
            RowOp::AddAbove(k) => {
                let src = self.rows[k].clone();
                self.rows[k + 1].iter_mut().zip(src).for_each(|(a, b)| *a ^= b);
            }
        }
        self.ops.push(op);
    }

    /// row a += row b, using adjacent operations only.
    fn transvect(&mut self, a: usize, b: usize) {
        if b > a {
            for k in (a + 1..b).rev() {
                self.apply(RowOp::Swap(k));
            }
            self.apply(RowOp::AddBelow(a));
            for k in a + 1..b {
                self.apply(RowOp::Swap(k));
            }
        } else {
            for k in b..a - 1 {
                self.apply(RowOp::Swap(k));
            }
            self.apply(RowOp::AddAbove(a - 1));
            for k in (b..a - 1).rev() {
                self.apply(RowOp::Swap(k));
            }
        }
    }
}

/// Writes an invertible matrix on `2^n` dimensions as a word of Gray letters.
///
/// Conjugating by the Gray rank turns Gray letters into lexicographically
/// adjacent ones, where Gauss-Jordan elimination with adjacent row operations
/// applies. Every operation used is an involution, so the recorded sequence
/// read left to right is already the factorisation.
pub fn factor_gl2(m: &Gf2Matrix) -> Result<GrayWord> {
    let n = log2_exact(m.dim())?;
    if !gf2_is_invertible(m) {
        return Err(Error::SingularMatrix);
    }
    let r = perm_matrix(&gray_rank(n)?);
    let lex = r.transpose().mul(m)?.mul(&r)?;
    let dim = lex.dim();
    let mut el = Eliminator { rows: lex.rows().map(|row| row.iter().map(|b| b.0).collect()).collect(), ops: Vec::new() };
    for c in 0..dim {
        let p = (c..dim).find(|&r| el.rows[r][c]).ok_or(Error::SingularMatrix)?;
        for k in (c..p).rev() {
            el.apply(RowOp::Swap(k));
        }
        for r in 0..dim {
            if r != c && el.rows[r][c] {
                el.transvect(r, c);
            }
        }
    }
    debug_assert!(el.rows.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &b)| b == (i == j))));
    let theta = |i| GrayLetter { kind: LetterKind::Theta, i };
    let zeta = |i| GrayLetter { kind: LetterKind::Zeta, i };
    let mut letters = Vec::new();
    for op in el.ops {
        match op {
            RowOp::Swap(k) => letters.push(theta(k)),
            RowOp::AddBelow(k) => letters.extend([zeta(k), theta(k)]),
            RowOp::AddAbove(k) => letters.extend([theta(k), zeta(k)]),
        }
    }
    Ok(GrayWord { n, letters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{gf2_all_invertible, gf2_from_bits, gf2_random_invertible};
    use rand::SeedableRng;

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta(1, 0).unwrap(), j_matrix());
        // r₂ = [0,1,3,2]: ζ_{2,1} acts on basis vectors 1 and 3
        let z = zeta(2, 1).unwrap();
        let expected = gf2_from_bits(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        assert_eq!(z, expected);
        for n in 1..=3 {
            for i in 0..(1usize << n) - 1 {
                assert!(zeta(n, i).unwrap().pow(3).is_identity());
            }
        }
        assert!(matches!(zeta(2, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn inductive_zeta() {
        for n in 1..=5 {
            for i in 0..(1usize << n) - 1 {
                assert_eq!(zeta_inductive(n, i).unwrap(), zeta(n, i).unwrap(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn b_j_examples() {
        let w = GrayWord { n: 2, letters: vec![GrayLetter { kind: LetterKind::Theta, i: 2 }] };
        assert_eq!(b_j(&w).unwrap(), multi_ctrl("1", "", CtrlTerm::Not).unwrap());
        let w = GrayWord { n: 1, letters: vec![GrayLetter { kind: LetterKind::Zeta, i: 0 }] };
        assert_eq!(b_j(&w).unwrap(), CtrlTerm::gen("j"));
        let w = GrayWord { n: 2, letters: vec![GrayLetter { kind: LetterKind::Zeta, i: 2 }] };
        let jj = CtrlTerm::seq(CtrlTerm::gen("j"), CtrlTerm::gen("j"));
        assert_eq!(b_j(&w).unwrap(), multi_ctrl("1", "", jj).unwrap());
        for n in 1..=3 {
            for i in 0..(1usize << n) - 1 {
                for kind in [LetterKind::Theta, LetterKind::Zeta, LetterKind::ZetaInv] {
                    let w = GrayWord { n, letters: vec![GrayLetter { kind, i }] };
                    assert_eq!(a_j(&b_j(&w).unwrap()).unwrap(), w.matrix().unwrap(), "{kind:?} n={n} i={i}");
                }
            }
        }
    }

    #[test]
    fn a_j_examples() {
        assert_eq!(a_j(&CtrlTerm::gen("j")).unwrap(), j_matrix());
        let c = a_j(&CtrlTerm::c1(CtrlTerm::gen("j"))).unwrap();
        assert_eq!(c, Matrix::identity(2).direct_sum(&j_matrix()));
        let j3 = CtrlTerm::seq_all(std::iter::repeat(CtrlTerm::gen("j")).take(3)).unwrap();
        assert!(a_j(&j3).unwrap().is_identity());
        assert!(a_j(&CtrlTerm::gen("h")).is_err());
    }

    #[test]
    fn factorisation() {
        assert!(factor_gl2(&Matrix::identity(4)).unwrap().letters.is_empty());
        let x = perm_matrix(&Permutation::gamma(1, 1));
        let w = factor_gl2(&x).unwrap();
        assert_eq!(w.letters, vec![GrayLetter { kind: LetterKind::Theta, i: 0 }]);
        for m in gf2_all_invertible(2) {
            assert_eq!(factor_gl2(&m).unwrap().matrix().unwrap(), m);
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let m = gf2_random_invertible(8, &mut rng);
            let w = factor_gl2(&m).unwrap();
            assert_eq!(w.matrix().unwrap(), m);
            assert_eq!(a_j(&b_j(&w).unwrap()).unwrap(), m);
        }
        let singular = gf2_from_bits(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(factor_gl2(&singular), Err(Error::SingularMatrix)));
        assert!(matches!(factor_gl2(&Matrix::identity(3)), Err(Error::NotPowerOfTwo(3))));
    }

    #[test]
    fn word_json() {
        let w = GrayWord {
            n: 2,
            letters: vec![GrayLetter { kind: LetterKind::Theta, i: 1 }, GrayLetter { kind: LetterKind::ZetaInv, i: 2 }],
        };
        let text = w.to_json();
        assert!(text.contains("\"zetaInv\""));
        assert_eq!(GrayWord::from_json(&text, 0).unwrap(), w);
        assert!(GrayWord::from_json(r#"[{"kind":"theta","n":2,"i":3}]"#, 0).is_err());
    }
}
