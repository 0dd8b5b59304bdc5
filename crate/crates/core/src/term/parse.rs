//! Parsers and printers for `.crop` circuit text and `.srop` sum-term text.

use super::lex::{describe, Lexer, Tok};
use super::{builtin_arity, CtrlTerm, Generator, Polarity, SumTerm};
use crate::error::Result;

/// Looks up `(wires, real parameter count)` for a generator name.
pub type ArityFn<'a> = &'a dyn Fn(&str) -> Option<(usize, usize)>;

pub fn parse_ctrl(text: &str) -> Result<CtrlTerm> {
    parse_ctrl_with(text, &builtin_arity)
}

pub fn parse_ctrl_with(text: &str, arity: ArityFn) -> Result<CtrlTerm> {
    let mut lx = Lexer::new(text)?;
    let t = ctrl_term(&mut lx, arity)?;
    lx.expect_end()?;
    Ok(t)
}

fn ctrl_term(lx: &mut Lexer, arity: ArityFn) -> Result<CtrlTerm> {
    let mut items = vec![ctrl_par(lx, arity)?];
    while lx.eat_punct(';') {
        items.push(ctrl_par(lx, arity)?);
    }
    Ok(CtrlTerm::seq_all(items).expect("non-empty"))
}

fn ctrl_par(lx: &mut Lexer, arity: ArityFn) -> Result<CtrlTerm> {
    let mut items = vec![ctrl_atom(lx, arity)?];
    while lx.eat_punct('+') {
        items.push(ctrl_atom(lx, arity)?);
    }
    Ok(CtrlTerm::par_all(items).expect("non-empty"))
}

/// `id3` is a single identifier; `id 3` is two tokens. Both are accepted.
fn identity_width(lx: &mut Lexer, ident: &str) -> Result<Option<usize>> {
    let Some(rest) = ident.strip_prefix("id") else {
        return Ok(None);
    };
    if rest.is_empty() {
        return lx.expect_usize().map(Some);
    }
    if rest.chars().all(|c| c.is_ascii_digit()) {
        return rest
            .parse()
            .map(Some)
            .map_err(|_| lx.error(format!("bad identity width `{rest}`")));
    }
    Ok(None)
}

fn bits(lx: &mut Lexer) -> String {
    let mut out = String::new();
    while let Tok::Number(s) = lx.peek().clone() {
        out.push_str(&s);
        lx.next();
    }
    out
}

fn params(lx: &mut Lexer) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    // `(+)` after a sum-term generator is the direct-sum operator, not a parameter list
    if lx.is_punct('(') && *lx.peek_at(1) != Tok::Punct('+') {
        lx.next();
        out.push(lx.expect_real()?);
        while lx.eat_punct(',') {
            out.push(lx.expect_real()?);
        }
        lx.expect_punct(')')?;
    }
    Ok(out)
}

fn generator(lx: &mut Lexer, name: &str, arity: ArityFn) -> Result<Generator> {
    let Some((wires, count)) = arity(name) else {
        return Err(lx.error(format!("unknown generator `{name}`")));
    };
    let ps = params(lx)?;
    if ps.len() != count {
        return Err(lx.error(format!("`{name}` takes {count} parameter(s), got {}", ps.len())));
    }
    Ok(Generator::new(name, wires, ps))
}

fn ctrl_atom(lx: &mut Lexer, arity: ArityFn) -> Result<CtrlTerm> {
    match lx.next() {
        Tok::Punct('(') => {
            let t = ctrl_term(lx, arity)?;
            lx.expect_punct(')')?;
            Ok(t)
        }
        Tok::Ident(name) => {
            if let Some(n) = identity_width(lx, &name)? {
                return Ok(CtrlTerm::Identity(n));
            }
            match name.as_str() {
                "x" => Ok(CtrlTerm::Not),
                "swap" => {
                    let m = lx.expect_usize()?;
                    let n = lx.expect_usize()?;
                    Ok(CtrlTerm::Swap(m, n))
                }
                "c0" | "c1" => {
                    let p = if name == "c1" { Polarity::Positive } else { Polarity::Negative };
                    lx.expect_punct('[')?;
                    let body = ctrl_term(lx, arity)?;
                    lx.expect_punct(']')?;
                    Ok(CtrlTerm::ctrl(p, body))
                }
                "ctrl" => {
                    lx.expect_punct('[')?;
                    let top = bits(lx);
                    lx.expect_punct('_')?;
                    let bottom = bits(lx);
                    lx.expect_punct(']')?;
                    lx.expect_punct('(')?;
                    let body = ctrl_term(lx, arity)?;
                    lx.expect_punct(')')?;
                    super::multi_ctrl(&top, &bottom, body).map_err(|e| lx.error(e.to_string()))
                }
                _ => Ok(CtrlTerm::Gen(generator(lx, &name, arity)?)),
            }
        }
        t => Err(lx.error(format!("expected a circuit, found {}", describe(&t)))),
    }
}

fn print_params(ps: &[f64]) -> String {
    if ps.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = ps.iter().map(|p| format!("{p}")).collect();
    format!("({})", parts.join(", "))
}

pub fn print_ctrl(t: &CtrlTerm) -> String {
    match t {
        CtrlTerm::Identity(n) => format!("id{n}"),
        CtrlTerm::Not => "x".into(),
        CtrlTerm::Swap(m, n) => format!("swap {m} {n}"),
        CtrlTerm::Gen(g) => format!("{}{}", g.name, print_params(&g.params)),
        CtrlTerm::Ctrl(p, body) => format!("c{}[{}]", p.bit(), print_ctrl(body)),
        CtrlTerm::Seq(a, b) => {
            let left = match **a {
                CtrlTerm::Seq(..) => format!("({})", print_ctrl(a)),
                _ => print_ctrl(a),
            };
            format!("{left} ; {}", print_ctrl(b))
        }
        CtrlTerm::Par(a, b) => {
            let top = match **a {
                CtrlTerm::Seq(..) | CtrlTerm::Par(..) => format!("({})", print_ctrl(a)),
                _ => print_ctrl(a),
            };
            let bottom = match **b {
                CtrlTerm::Seq(..) => format!("({})", print_ctrl(b)),
                _ => print_ctrl(b),
            };
            format!("{top} + {bottom}")
        }
    }
}

pub fn parse_sum(text: &str) -> Result<SumTerm> {
    parse_sum_with(text, &builtin_arity)
}

pub fn parse_sum_with(text: &str, arity: ArityFn) -> Result<SumTerm> {
    let mut lx = Lexer::new(text)?;
    let t = sum_term(&mut lx, arity)?;
    lx.expect_end()?;
    Ok(t)
}

fn sum_term(lx: &mut Lexer, arity: ArityFn) -> Result<SumTerm> {
    let mut items = vec![sum_sum(lx, arity)?];
    while lx.eat_punct(';') {
        items.push(sum_sum(lx, arity)?);
    }
    Ok(SumTerm::seq_all(items).expect("non-empty"))
}

fn at_oplus(lx: &Lexer) -> bool {
    *lx.peek() == Tok::Punct('(') && *lx.peek_at(1) == Tok::Punct('+') && *lx.peek_at(2) == Tok::Punct(')')
}

fn sum_sum(lx: &mut Lexer, arity: ArityFn) -> Result<SumTerm> {
    let mut acc = vec![sum_atom(lx, arity)?];
    while at_oplus(lx) {
        lx.next();
        lx.next();
        lx.next();
        acc.push(sum_atom(lx, arity)?);
    }
    let mut acc_iter = acc.into_iter().rev();
    let mut t = acc_iter.next().expect("non-empty");
    for s in acc_iter {
        t = SumTerm::sum(s, t);
    }
    Ok(t)
}

fn sum_atom(lx: &mut Lexer, arity: ArityFn) -> Result<SumTerm> {
    match lx.next() {
        Tok::Punct('(') => {
            let t = sum_term(lx, arity)?;
            lx.expect_punct(')')?;
            Ok(t)
        }
        Tok::Ident(name) if name == "id" => {
            lx.expect_punct('@')?;
            Ok(SumTerm::IdentityD(lx.expect_usize()?))
        }
        Tok::Ident(name) if name == "gamma" => {
            let m = lx.expect_usize()?;
            let n = lx.expect_usize()?;
            Ok(SumTerm::Gamma(m, n))
        }
        Tok::Ident(name) => {
            lx.expect_punct('~')?;
            Ok(SumTerm::GenTilde(generator(lx, &name, arity)?))
        }
        t => Err(lx.error(format!("expected a sum term, found {}", describe(&t)))),
    }
}

pub fn print_sum(t: &SumTerm) -> String {
    match t {
        SumTerm::IdentityD(d) => format!("id@{d}"),
        SumTerm::Gamma(m, n) => format!("gamma {m} {n}"),
        SumTerm::GenTilde(g) => format!("{}~{}", g.name, print_params(&g.params)),
        SumTerm::SeqS(a, b) => {
            let left = match **a {
                SumTerm::SeqS(..) => format!("({})", print_sum(a)),
                _ => print_sum(a),
            };
            format!("{left} ; {}", print_sum(b))
        }
        SumTerm::DirectSum(a, b) => {
            let top = match **a {
                SumTerm::SeqS(..) | SumTerm::DirectSum(..) => format!("({})", print_sum(a)),
                _ => print_sum(a),
            };
            let bottom = match **b {
                SumTerm::SeqS(..) => format!("({})", print_sum(b)),
                _ => print_sum(b),
            };
            format!("{top} (+) {bottom}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn circuits() {
        assert_eq!(parse_ctrl("c1[x]").unwrap(), CtrlTerm::c1(CtrlTerm::Not));
        assert_eq!(
            parse_ctrl("c1[x] ; c0[x]").unwrap(),
            CtrlTerm::seq(CtrlTerm::c1(CtrlTerm::Not), CtrlTerm::c0(CtrlTerm::Not))
        );
        assert_eq!(
            parse_ctrl("id1 + z(3.14)").unwrap(),
            CtrlTerm::par(CtrlTerm::Identity(1), CtrlTerm::gen_with("z", vec![3.14]))
        );
        assert_eq!(parse_ctrl("id 2").unwrap(), CtrlTerm::Identity(2));
        assert_eq!(parse_ctrl("swap 2 1").unwrap(), CtrlTerm::Swap(2, 1));
        assert_eq!(
            parse_ctrl("ctrl[10_0](x)").unwrap(),
            super::super::multi_ctrl("10", "0", CtrlTerm::Not).unwrap()
        );
        assert_eq!(parse_ctrl("ctrl[_](x)").unwrap(), CtrlTerm::Not);
        let p = parse_ctrl("z(pi/2) ; z(-pi) + phase(3pi/4)").unwrap();
        assert_eq!(p.wires().unwrap(), 1);
    }

    #[test]
    fn syntax_errors() {
        match parse_ctrl("c1[x ; ") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 8)),
            other => panic!("{other:?}"),
        }
        match parse_ctrl("x ;\n foo") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_ctrl("z").is_err());
        assert!(parse_ctrl("x x").is_err());
    }

    #[test]
    fn circuit_roundtrip() {
        for text in [
            "c1[x] ; c0[x]",
            "(x ; x) ; x",
            "(x + x) + x",
            "x + (x ; x)",
            "c1[id1 + j] ; swap 1 1",
            "z(0.1) ; z(-2.5)",
            "id0 + phase(1e-9)",
        ] {
            let t = parse_ctrl(text).unwrap();
            let printed = print_ctrl(&t);
            assert_eq!(parse_ctrl(&printed).unwrap(), t, "{text} -> {printed}");
        }
    }

    #[test]
    fn sums() {
        assert_eq!(parse_sum("gamma 1 1").unwrap(), SumTerm::Gamma(1, 1));
        let t = parse_sum("id@2 (+) x~").unwrap();
        assert_eq!(
            t,
            SumTerm::sum(SumTerm::IdentityD(2), SumTerm::GenTilde(Generator::builtin("x", vec![])))
        );
        assert_eq!(t.dim().unwrap(), 4);
        let s = parse_sum("x~ ; x~").unwrap();
        assert!(matches!(s, SumTerm::SeqS(..)));
        assert_eq!(s.dim().unwrap(), 2);
        for text in ["(id@1 (+) gamma 1 1) ; (x~ (+) id@1)", "(x~ (+) x~) (+) z~(0.5)", "(x~ ; x~) ; x~"] {
            let t = parse_sum(text).unwrap();
            assert_eq!(parse_sum(&print_sum(&t)).unwrap(), t);
        }
    }
}
