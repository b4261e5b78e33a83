//! Residual evaluation on interior sub-windows, and the su(2) Casimir
//! combination used by several suites.

use crate::core::operator::ShiftOperator;
use crate::core::window::TruncationWindow;
use crate::error::CoreError;
use crate::scalar::{rat, Scalar};

/// Max |entry| of (A - target) with rows and columns restricted to the
/// default interior of `window`. Exact zero is reported as 0.0 in
/// rational mode.
pub fn interior_residual<S: Scalar>(
    a: &ShiftOperator<S>,
    target: &ShiftOperator<S>,
    window: &TruncationWindow,
) -> Result<f64, CoreError> {
    let sub = window.interior().ok_or(CoreError::EmptyInterior {
        p_margin: 1,
        m_margin: 2,
    })?;
    Ok(residual_on(a, target, &sub))
}

/// Like `interior_residual` with explicit margins; deeper identities
/// (degree-four bilinears) need wider margins.
pub fn interior_residual_with_margins<S: Scalar>(
    a: &ShiftOperator<S>,
    target: &ShiftOperator<S>,
    window: &TruncationWindow,
    p_margin: i64,
    m_margin: usize,
) -> Result<f64, CoreError> {
    let sub = window
        .shrink(p_margin, m_margin)
        .ok_or(CoreError::EmptyInterior { p_margin, m_margin })?;
    Ok(residual_on(a, target, &sub))
}

/// Max |entry| of (A - target) restricted to `sub`.
pub fn residual_on<S: Scalar>(
    a: &ShiftOperator<S>,
    target: &ShiftOperator<S>,
    sub: &TruncationWindow,
) -> f64 {
    match a.sub(target) {
        Ok(diff) => {
            if S::EXACT && diff.is_zero_on(sub) {
                0.0
            } else {
                diff.max_abs_on(sub)
            }
        }
        Err(_) => f64::INFINITY,
    }
}

/// Exact equality of two operators on a sub-window.
pub fn equal_on<S: Scalar>(
    a: &ShiftOperator<S>,
    b: &ShiftOperator<S>,
    sub: &TruncationWindow,
) -> bool {
    match a.sub(b) {
        Ok(diff) => diff.is_zero_on(sub),
        Err(_) => false,
    }
}

/// L3² + (L+L- + L-L+)/2.
pub fn casimir_su2<S: Scalar>(
    l3: &ShiftOperator<S>,
    lplus: &ShiftOperator<S>,
    lminus: &ShiftOperator<S>,
) -> Result<ShiftOperator<S>, CoreError> {
    let half = S::from_rat(&rat(1, 2));
    let l3_sq = l3.mul(l3)?;
    let anti = lplus.mul(lminus)?.add(&lminus.mul(lplus)?)?;
    l3_sq.add(&anti.scale(&half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::window::GradedIndex;
    use crate::scalar::{CRat, C64};

    #[test]
    fn zero_difference_reports_zero() {
        let w = TruncationWindow::new(-2, 2, 4).unwrap();
        let id = ShiftOperator::<CRat>::identity(w);
        assert_eq!(interior_residual(&id, &id, &w).unwrap(), 0.0);
    }

    #[test]
    fn perturbed_entry_reports_its_magnitude() {
        let w = TruncationWindow::new(-2, 2, 4).unwrap();
        let id = ShiftOperator::<C64>::identity(w);
        let perturbed = ShiftOperator::<C64>::from_action(w, 0, |c| {
            let v = if c == GradedIndex::new(0, 0) {
                C64::new(1.0 + 1e-3, 0.0)
            } else {
                C64::new(1.0, 0.0)
            };
            vec![(c, v)]
        })
        .unwrap();
        let r = interior_residual(&perturbed, &id, &w).unwrap();
        assert!((r - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn empty_interior_is_an_error() {
        let w = TruncationWindow::new(0, 0, 4).unwrap();
        let id = ShiftOperator::<CRat>::identity(w);
        assert!(matches!(
            interior_residual(&id, &id, &w),
            Err(CoreError::EmptyInterior { .. })
        ));
    }

    #[test]
    fn casimir_of_zero_operators_is_zero() {
        let w = TruncationWindow::new(-1, 1, 4).unwrap();
        let z = ShiftOperator::<CRat>::zero(w, 0);
        let c = casimir_su2(&z, &z, &z).unwrap();
        assert_eq!(c.nnz(), 0);
    }
}
