//! Truncation windows and the graded basis they carry.
//!
//! The bi-infinite graded space ⊕_p F_{λ+p/2} is modeled on a finite
//! window of blocks p ∈ [p_min, p_max] with monomial degree m ≤ m_max
//! per block. Ladder identities necessarily break at the cut, so every
//! identity check is restricted to an interior sub-window.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::CoreError;
use crate::scalar::Scalar;

/// Basis label on the graded space: block index `p`, monomial degree `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedIndex {
    pub p: i64,
    pub m: usize,
}

impl GradedIndex {
    pub fn new(p: i64, m: usize) -> Self {
        GradedIndex { p, m }
    }
}

impl fmt::Display for GradedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, m={})", self.p, self.m)
    }
}

/// Finite model of the graded tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationWindow {
    p_min: i64,
    p_max: i64,
    m_max: usize,
}

impl TruncationWindow {
    /// A window needs p_min ≤ p_max and m_max ≥ 1. Residual checks
    /// additionally need room for an interior, which `interior` and
    /// `shrink` enforce.
    pub fn new(p_min: i64, p_max: i64, m_max: usize) -> Result<Self, CoreError> {
        if p_min > p_max || m_max < 1 {
            return Err(CoreError::InvalidWindow { p_min, p_max, m_max });
        }
        Ok(TruncationWindow { p_min, p_max, m_max })
    }

    /// Single-block window, used by the per-block su(2) realizations.
    pub fn single_block(p: i64, m_max: usize) -> Result<Self, CoreError> {
        Self::new(p, p, m_max)
    }

    pub fn p_min(&self) -> i64 {
        self.p_min
    }
    pub fn p_max(&self) -> i64 {
        self.p_max
    }
    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn block_count(&self) -> usize {
        (self.p_max - self.p_min + 1) as usize
    }

    pub fn dim(&self) -> usize {
        self.block_count() * (self.m_max + 1)
    }

    pub fn contains(&self, idx: GradedIndex) -> bool {
        idx.p >= self.p_min && idx.p <= self.p_max && idx.m <= self.m_max
    }

    pub fn blocks(&self) -> impl Iterator<Item = i64> {
        self.p_min..=self.p_max
    }

    /// Deterministic basis order: p ascending, then m ascending.
    pub fn indices(&self) -> Vec<GradedIndex> {
        let mut out = Vec::with_capacity(self.dim());
        for p in self.blocks() {
            for m in 0..=self.m_max {
                out.push(GradedIndex::new(p, m));
            }
        }
        out
    }

    /// Shrink by the given margins; `None` when nothing is left.
    pub fn shrink(&self, p_margin: i64, m_margin: usize) -> Option<TruncationWindow> {
        let p_min = self.p_min + p_margin;
        let p_max = self.p_max - p_margin;
        if p_min > p_max || self.m_max < m_margin {
            return None;
        }
        Some(TruncationWindow {
            p_min,
            p_max,
            m_max: self.m_max - m_margin,
        })
    }

    /// Default interior for degree-two identities: one block off each
    /// end, two degrees off the top.
    pub fn interior(&self) -> Option<TruncationWindow> {
        self.shrink(1, 2)
    }
}

/// Deterministic basis enumeration of a window.
pub fn enumerate_basis(window: &TruncationWindow) -> Vec<GradedIndex> {
    window.indices()
}

/// Finitely supported vector on a window.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedVector<S: Scalar> {
    window: TruncationWindow,
    coeffs: BTreeMap<GradedIndex, S>,
}

impl<S: Scalar> GradedVector<S> {
    pub fn zero(window: TruncationWindow) -> Self {
        GradedVector {
            window,
            coeffs: BTreeMap::new(),
        }
    }

    /// Basis vector at `idx`.
    pub fn basis(window: TruncationWindow, idx: GradedIndex) -> Result<Self, CoreError> {
        let mut v = Self::zero(window);
        v.set(idx, S::one())?;
        Ok(v)
    }

    pub fn window(&self) -> &TruncationWindow {
        &self.window
    }

    pub fn set(&mut self, idx: GradedIndex, value: S) -> Result<(), CoreError> {
        if !self.window.contains(idx) {
            return Err(CoreError::InvalidWindow {
                p_min: self.window.p_min,
                p_max: self.window.p_max,
                m_max: self.window.m_max,
            });
        }
        if value.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, value);
        }
        Ok(())
    }

    pub fn get(&self, idx: GradedIndex) -> S {
        self.coeffs.get(&idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GradedIndex, &S)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GradedVector<T> {
        let mut out = GradedVector::zero(self.window);
        for (k, v) in &self.coeffs {
            let w = f(v);
            if !w.is_zero() {
                out.coeffs.insert(*k, w);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            let cur = out.get(*k);
            let next = cur.sub(v);
            if next.is_zero() {
                out.coeffs.remove(k);
            } else {
                out.coeffs.insert(*k, next);
            }
        }
        out
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CRat;

    #[test]
    fn enumeration_is_p_major_m_minor() {
        let w = TruncationWindow::new(0, 0, 2).unwrap();
        let b = enumerate_basis(&w);
        assert_eq!(
            b,
            vec![
                GradedIndex::new(0, 0),
                GradedIndex::new(0, 1),
                GradedIndex::new(0, 2)
            ]
        );
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn enumeration_counts_blocks_times_degrees() {
        let w = TruncationWindow::new(-1, 1, 1).unwrap();
        assert!(w.m_max() >= 1);
        let b = enumerate_basis(&w);
        assert_eq!(b.len(), 6);
        assert_eq!(b[0], GradedIndex::new(w.p_min(), 0));
    }

    #[test]
    fn first_element_is_pmin_zero() {
        let w = TruncationWindow::new(-4, 7, 5).unwrap();
        assert_eq!(enumerate_basis(&w)[0], GradedIndex::new(-4, 0));
        assert_eq!(enumerate_basis(&w).len(), w.dim());
    }

    #[test]
    fn invalid_windows_rejected() {
        assert!(TruncationWindow::new(3, 1, 4).is_err());
        assert!(TruncationWindow::new(0, 0, 0).is_err());
        assert!(TruncationWindow::new(0, 0, 1).is_ok());
    }

    #[test]
    fn interior_shrinks_both_p_ends_and_top_degree() {
        let w = TruncationWindow::new(-3, 3, 8).unwrap();
        let i = w.interior().unwrap();
        assert_eq!((i.p_min(), i.p_max(), i.m_max()), (-2, 2, 6));
        let single = TruncationWindow::single_block(5, 8).unwrap();
        assert!(single.interior().is_none());
        assert!(single.shrink(0, 2).is_some());
    }

    #[test]
    fn vector_rejects_out_of_window_support() {
        let w = TruncationWindow::new(0, 1, 3).unwrap();
        let mut v: GradedVector<CRat> = GradedVector::zero(w);
        assert!(v.set(GradedIndex::new(2, 0), CRat::one()).is_err());
        assert!(v.set(GradedIndex::new(1, 3), CRat::one()).is_ok());
    }
}
