//! Basis conventions on the graded window.
//!
//! Two conventions coexist: plain monomials ζ^m (exact scalars) and the
//! normalized ladder basis f_m = (iζ)^m / sqrt(m! Γ(m - 2λ - p)) whose
//! conversion factors involve Gamma and therefore live in floats.

use crate::core::operator::ShiftOperator;
use crate::core::window::{GradedIndex, GradedVector, TruncationWindow};
use crate::error::CoreError;
use crate::scalar::{C64, SpinParameter};
use crate::special::{ln_factorial, ln_gamma_signed};

/// Coefficient convention for graded vectors and matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisConvention {
    /// ζ^m with exact scalars.
    Monomial,
    /// Normalized ladder basis; float scalars, requires
    /// m - 2λ - p > 0 across the window.
    CartanWeyl,
}

/// Gamma argument of the normalization at (p, m).
pub fn gamma_argument(lambda: &SpinParameter, idx: GradedIndex) -> f64 {
    idx.m as f64 - 2.0 * lambda.to_f64() - idx.p as f64
}

/// True when every window index has a strictly positive Gamma argument,
/// so the normalized basis is real on the whole window.
pub fn cartan_weyl_valid(window: &TruncationWindow, lambda: &SpinParameter) -> bool {
    // worst case is m = 0 at the largest block
    gamma_argument(lambda, GradedIndex::new(window.p_max(), 0)) > 0.0
}

/// Per-index conversion factor i^m / sqrt(m! Γ(m - 2λ - p)).
///
/// Γ may be negative away from the validity region; the principal
/// square root then contributes a phase. Errors only at a Gamma pole.
pub fn conversion_factor(
    lambda: &SpinParameter,
    idx: GradedIndex,
) -> Result<C64, CoreError> {
    let arg = gamma_argument(lambda, idx);
    let (ln_g, sign) = ln_gamma_signed(arg)?;
    let magnitude = (-0.5 * (ln_factorial(idx.m) + ln_g)).exp();
    // i^m phase
    let phase_i = C64::i().powu(idx.m as u32);
    // 1/sqrt(sign): 1 for Γ>0, principal branch gives -i for Γ<0
    let phase_g = if sign >= 0.0 {
        C64::new(1.0, 0.0)
    } else {
        C64::new(0.0, -1.0)
    };
    Ok(phase_i * phase_g * magnitude)
}

/// Rescale coefficients between conventions.
///
/// Monomial → CartanWeyl multiplies each coefficient by
/// i^m / sqrt(m! Γ(m - 2λ - p)); the reverse direction divides. The
/// round trip is the identity to machine precision.
pub fn convert_basis(
    v: &GradedVector<C64>,
    from: BasisConvention,
    to: BasisConvention,
    lambda: &SpinParameter,
) -> Result<GradedVector<C64>, CoreError> {
    if from == to {
        return Ok(v.clone());
    }
    let mut out = GradedVector::zero(*v.window());
    for (idx, coeff) in v.iter() {
        let f = conversion_factor(lambda, *idx)?;
        let scaled = match (from, to) {
            (BasisConvention::Monomial, BasisConvention::CartanWeyl) => coeff * f,
            (BasisConvention::CartanWeyl, BasisConvention::Monomial) => coeff / f,
            _ => unreachable!(),
        };
        out.set(*idx, scaled)?;
    }
    Ok(out)
}

/// Matrix of a monomial-convention operator expressed on the normalized
/// basis vectors: N^{-1} M N with N = diag(conversion factors).
///
/// This is the map that turns the structural ladder entries into the
/// sqrt-coefficients of the normalized realization.
pub fn cartan_weyl_matrix(
    op: &ShiftOperator<C64>,
    lambda: &SpinParameter,
) -> Result<ShiftOperator<C64>, CoreError> {
    let window = *op.window();
    let mut scaled = ShiftOperator::zero(window, 0);
    // build via entry-by-entry rescale; degree bookkeeping is preserved below
    let mut entries: Vec<(GradedIndex, GradedIndex, C64)> = Vec::new();
    for (row, col, v) in op.entries() {
        let fr = conversion_factor(lambda, row)?;
        let fc = conversion_factor(lambda, col)?;
        entries.push((row, col, v / fr * fc));
    }
    for (row, col, v) in entries {
        let one_entry = ShiftOperator::from_action(window, row.p - col.p, |c| {
            if c == col {
                vec![(row, v)]
            } else {
                vec![]
            }
        })?;
        scaled = ShiftOperator::add(&scaled, &one_entry)?;
    }
    Ok(scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn monomial_to_cartan_weyl_ground_factor() {
        // ζ^0 at p=0, λ=-1/4: factor 1/sqrt(Γ(1/2)) = π^(-1/4)
        let lam = SpinParameter::general(rat(-1, 4)).unwrap();
        let f = conversion_factor(&lam, GradedIndex::new(0, 0)).unwrap();
        let expected = std::f64::consts::PI.powf(-0.25);
        assert!((f - C64::new(expected, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn degree_one_factor_uses_gamma_three_halves() {
        // (p=0, m=1), λ=-1/4: factor i/sqrt(1! Γ(3/2)), Γ(3/2)=√π/2
        let lam = SpinParameter::general(rat(-1, 4)).unwrap();
        let f = conversion_factor(&lam, GradedIndex::new(0, 1)).unwrap();
        let gamma_3_2 = std::f64::consts::PI.sqrt() / 2.0;
        let expected = C64::new(0.0, 1.0 / gamma_3_2.sqrt());
        assert!((f - expected).norm() < 1e-13);
    }

    #[test]
    fn round_trip_is_identity() {
        let lam = SpinParameter::general(rat(-3, 10)).unwrap();
        let w = TruncationWindow::new(-2, 0, 6).unwrap();
        let mut v = GradedVector::zero(w);
        let mut x = 0.37f64;
        for idx in w.indices() {
            x = (x * 1.7 + 0.3).fract();
            v.set(idx, C64::new(x, 1.0 - x)).unwrap();
        }
        let cw = convert_basis(&v, BasisConvention::Monomial, BasisConvention::CartanWeyl, &lam)
            .unwrap();
        let back =
            convert_basis(&cw, BasisConvention::CartanWeyl, BasisConvention::Monomial, &lam)
                .unwrap();
        let diff = back.sub(&v);
        assert!(diff.max_abs() < 1e-12);
    }

    #[test]
    fn validity_needs_positive_gamma_argument_everywhere() {
        let lam = SpinParameter::general(rat(-3, 10)).unwrap();
        // p_max = 0: worst arg = 0 - 2(-0.3) - 0 = 0.6 > 0
        let w_ok = TruncationWindow::new(-3, 0, 4).unwrap();
        assert!(cartan_weyl_valid(&w_ok, &lam));
        // p_max = 1: worst arg = 0.6 - 1 < 0
        let w_bad = TruncationWindow::new(-3, 1, 4).unwrap();
        assert!(!cartan_weyl_valid(&w_bad, &lam));
    }

    #[test]
    fn pole_is_reported() {
        let lam = SpinParameter::any(rat(0, 1));
        // m - 2λ - p = 0 at (0,0): pole
        assert!(matches!(
            conversion_factor(&lam, GradedIndex::new(0, 0)),
            Err(CoreError::GammaPole { .. })
        ));
    }
}
