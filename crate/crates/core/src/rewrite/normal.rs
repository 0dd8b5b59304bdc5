//! Structural normal form: associativity and units of `;` and `+` are
//! quotiented away, adjacent identities are fused.

use crate::term::CtrlTerm;

/// Right-nested sequences without identity steps, flattened parallel
/// compositions with fused identities, and trivial swaps replaced by identities.
pub fn normalize_structural(t: &CtrlTerm) -> CtrlTerm {
    match t {
        CtrlTerm::Seq(..) => {
            let mut items = Vec::new();
            collect_chain(t, &mut items);
            if items.is_empty() {
                CtrlTerm::Identity(t.wires().unwrap_or(0))
            } else {
                CtrlTerm::seq_all(items).expect("non-empty")
            }
        }
        CtrlTerm::Par(..) => {
            let mut factors = Vec::new();
            collect_par(t, &mut factors);
            let total: usize = factors.iter().map(|f| f.wires().unwrap_or(0)).sum();
            let mut fused: Vec<CtrlTerm> = Vec::new();
            for f in factors {
                match (fused.last_mut(), &f) {
                    (_, CtrlTerm::Identity(0)) => {}
                    (Some(CtrlTerm::Identity(a)), CtrlTerm::Identity(b)) => *a += b,
                    _ => fused.push(f),
                }
            }
            CtrlTerm::par_all(fused).unwrap_or(CtrlTerm::Identity(total))
        }
        CtrlTerm::Swap(0, n) | CtrlTerm::Swap(n, 0) => CtrlTerm::Identity(*n),
        CtrlTerm::Ctrl(p, body) => CtrlTerm::Ctrl(*p, Box::new(normalize_structural(body))),
        _ => t.clone(),
    }
}

fn collect_chain(t: &CtrlTerm, out: &mut Vec<CtrlTerm>) {
    match t {
        CtrlTerm::Seq(a, b) => {
            collect_chain(a, out);
            collect_chain(b, out);
        }
        _ => match normalize_structural(t) {
            CtrlTerm::Identity(_) => {}
            n @ CtrlTerm::Seq(..) => out.extend(chain_items(&n)),
            n => out.push(n),
        },
    }
}

fn collect_par(t: &CtrlTerm, out: &mut Vec<CtrlTerm>) {
    match t {
        CtrlTerm::Par(a, b) => {
            collect_par(a, out);
            collect_par(b, out);
        }
        _ => match normalize_structural(t) {
            n @ CtrlTerm::Par(..) => out.extend(par_items(&n)),
            n => out.push(n),
        },
    }
}

/// Steps of a right-nested chain; an identity has none.
pub(crate) fn chain_items(t: &CtrlTerm) -> Vec<CtrlTerm> {
    let mut out = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            CtrlTerm::Seq(a, b) => {
                out.push((**a).clone());
                cur = b;
            }
            CtrlTerm::Identity(_) => return out,
            _ => {
                out.push(cur.clone());
                return out;
            }
        }
    }
}

/// Factors of a right-nested parallel composition; `id0` has none.
pub(crate) fn par_items(t: &CtrlTerm) -> Vec<CtrlTerm> {
    let mut out = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            CtrlTerm::Par(a, b) => {
                out.push((**a).clone());
                cur = b;
            }
            CtrlTerm::Identity(0) => return out,
            _ => {
                out.push(cur.clone());
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{parse_ctrl, print_ctrl};

    fn nf(text: &str) -> String {
        print_ctrl(&normalize_structural(&parse_ctrl(text).unwrap()))
    }

    #[test]
    fn examples() {
        assert_eq!(nf("c1[x] ; id2"), "c1[x]");
        assert_eq!(nf("id1 + id2"), "id3");
        assert_eq!(nf("(x ; x) ; x"), "x ; x ; x");
        assert_eq!(nf("(x + id1) + (id1 + x)"), "x + id2 + x");
        assert_eq!(nf("id1 ; id1"), "id1");
        assert_eq!(nf("swap 0 2 ; c1[x + id0]"), "c1[x]");
        assert_eq!(nf("((x ; id1) + id0) ; x"), "x ; x");
        assert_eq!(nf("id0 + id0"), "id0");
    }

    #[test]
    fn idempotent() {
        for text in ["(x ; x) + (id1 ; id1)", "c0[(x ; id1) ; x] ; id2", "id1 + (x + id1) + swap 1 1"] {
            let once = normalize_structural(&parse_ctrl(text).unwrap());
            assert_eq!(normalize_structural(&once), once);
        }
    }
}
