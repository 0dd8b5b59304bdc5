//! Euler decomposition of single-qubit unitaries in the `h`/`z` basis:
//! `U = e^{iβ₀} · Z(β₃) · H · Z(β₂) · H · Z(β₁)`, i.e. the circuit
//! `phase(β₀) + (z(β₁) ; h ; z(β₂) ; h ; z(β₃))`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::semantics::{eval_ctrl, ComplexBackend, Matrix};
use crate::term::CtrlTerm;

const EPS: f64 = 1e-12;

fn wrap(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

/// Angles `[β₀, β₁, β₂, β₃]`, each in `[0, 2π)`, with `β₂ ≤ π`.
/// When `β₂` is 0 or π only a sum or difference of `β₁` and `β₃` is
/// determined, and `β₁` is set to 0.
pub fn euler_angles(u: &Matrix<Complex64>) -> Result<[f64; 4]> {
    if u.dim() != 2 {
        return Err(Error::SizeMismatch(u.dim(), 2));
    }
    if u.unitarity_defect() > 1e-9 {
        return Err(Error::Invalid("matrix is not unitary".into()));
    }
    let (u00, u01, u10, u11) = (u.get(0, 0), u.get(0, 1), u.get(1, 0), u.get(1, 1));
    let b2 = 2.0 * u01.norm().atan2(u00.norm());
    let angles = if u01.norm() < EPS {
        let b0 = u00.arg();
        [b0, 0.0, 0.0, u11.arg() - b0]
    } else if u00.norm() < EPS {
        let b0 = u01.arg();
        [b0, 0.0, PI, u10.arg() - b0]
    } else {
        let g = u00.arg();
        [g - b2 / 2.0, u01.arg() - g + FRAC_PI_2, b2, u10.arg() - g + FRAC_PI_2]
    };
    Ok(angles.map(wrap))
}

/// The circuit realising the angles.
pub fn euler_circuit(angles: [f64; 4]) -> CtrlTerm {
    let [b0, b1, b2, b3] = angles;
    let chain = CtrlTerm::seq_all([
        CtrlTerm::gen_with("z", vec![b1]),
        CtrlTerm::gen("h"),
        CtrlTerm::gen_with("z", vec![b2]),
        CtrlTerm::gen("h"),
        CtrlTerm::gen_with("z", vec![b3]),
    ])
    .expect("non-empty");
    CtrlTerm::par(CtrlTerm::gen_with("phase", vec![b0]), chain)
}

/// Angles for the rewrite `h ; z(a₁) ; h ; z(a₂) ; h`.
pub fn euler_params(a1: f64, a2: f64) -> Result<[f64; 4]> {
    let t = CtrlTerm::seq_all([
        CtrlTerm::gen("h"),
        CtrlTerm::gen_with("z", vec![a1]),
        CtrlTerm::gen("h"),
        CtrlTerm::gen_with("z", vec![a2]),
        CtrlTerm::gen("h"),
    ])
    .expect("non-empty");
    euler_angles(&eval_ctrl(&t, &ComplexBackend::default())?)
}
