//! Sparse operators: a generic column-major store plus two typed
//! wrappers, `ShiftOperator` on the graded window and `BoxOp` on capped
//! multi-mode monomial spaces.

use std::collections::BTreeMap;

use crate::core::window::{GradedIndex, GradedVector, TruncationWindow};
use crate::error::CoreError;
use crate::scalar::Scalar;

/// Column-major sparse matrix keyed by an arbitrary ordered index type.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SparseCols<K: Ord + Copy, S: Scalar> {
    cols: BTreeMap<K, BTreeMap<K, S>>,
}

impl<K: Ord + Copy, S: Scalar> SparseCols<K, S> {
    pub fn new() -> Self {
        SparseCols { cols: BTreeMap::new() }
    }

    pub fn insert_add(&mut self, row: K, col: K, value: S) {
        if value.is_zero() {
            return;
        }
        let cell = self.cols.entry(col).or_default().entry(row).or_insert_with(S::zero);
        *cell = cell.add(&value);
        if cell.is_zero() {
            self.cols.get_mut(&col).unwrap().remove(&row);
        }
    }

    pub fn identity(domain: impl IntoIterator<Item = K>) -> Self {
        let mut out = Self::new();
        for k in domain {
            out.insert_add(k, k, S::one());
        }
        out
    }

    pub fn from_action(
        domain: impl IntoIterator<Item = K>,
        keep: impl Fn(&K) -> bool,
        action: impl Fn(K) -> Vec<(K, S)>,
    ) -> Self {
        let mut out = Self::new();
        for col in domain {
            for (row, v) in action(col) {
                if keep(&row) {
                    out.insert_add(row, col, v);
                }
            }
        }
        out
    }

    pub fn entry(&self, row: K, col: K) -> S {
        self.cols
            .get(&col)
            .and_then(|c| c.get(&row))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (K, K, &S)> {
        self.cols
            .iter()
            .flat_map(|(col, rows)| rows.iter().map(move |(row, v)| (*row, *col, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.values().map(|c| c.len()).sum()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::new();
        for (col, rhs_rows) in &rhs.cols {
            let mut acc: BTreeMap<K, S> = BTreeMap::new();
            for (mid, bv) in rhs_rows {
                if let Some(lhs_rows) = self.cols.get(mid) {
                    for (row, av) in lhs_rows {
                        let term = av.mul(bv);
                        if term.is_zero() {
                            continue;
                        }
                        let cell = acc.entry(*row).or_insert_with(S::zero);
                        *cell = cell.add(&term);
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            if !acc.is_empty() {
                out.cols.insert(*col, acc);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (col, rows) in &rhs.cols {
            for (row, v) in rows {
                out.insert_add(*row, *col, v.clone());
            }
        }
        out.prune();
        out
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::new();
        for (row, col, v) in self.entries() {
            out.insert_add(row, col, factor.mul(v));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().neg())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    fn prune(&mut self) {
        self.cols.retain(|_, rows| {
            rows.retain(|_, v| !v.is_zero());
            !rows.is_empty()
        });
    }

    /// Largest magnitude among entries whose row and column both pass
    /// the predicate.
    pub fn max_abs_on(&self, pred: impl Fn(&K) -> bool) -> f64 {
        let mut best = 0.0f64;
        for (row, col, v) in self.entries() {
            if pred(&row) && pred(&col) {
                best = best.max(v.abs());
            }
        }
        best
    }

    /// Exact zero test restricted by the predicate.
    pub fn is_zero_on(&self, pred: impl Fn(&K) -> bool) -> bool {
        self.entries()
            .all(|(row, col, v)| !(pred(&row) && pred(&col)) || v.is_zero())
    }

    pub fn apply(&self, vec: &BTreeMap<K, S>) -> BTreeMap<K, S> {
        let mut out: BTreeMap<K, S> = BTreeMap::new();
        for (col, cv) in vec {
            if let Some(rows) = self.cols.get(col) {
                for (row, av) in rows {
                    let term = av.mul(cv);
                    if term.is_zero() {
                        continue;
                    }
                    let cell = out.entry(*row).or_insert_with(S::zero);
                    *cell = cell.add(&term);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn diagonal(&self) -> Vec<(K, S)> {
        let mut out = Vec::new();
        for (col, rows) in &self.cols {
            if let Some(v) = rows.get(col) {
                out.push((*col, v.clone()));
            }
        }
        out
    }
}

/// Block-shift bookkeeping for graded operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDegree {
    /// Every entry satisfies row.p = col.p + d.
    Homogeneous(i64),
    /// Sum of homogeneous pieces of different degrees (e.g. sp(2,R)
    /// boost bilinears).
    Mixed,
}

impl ShiftDegree {
    fn compose(self, other: ShiftDegree) -> ShiftDegree {
        match (self, other) {
            (ShiftDegree::Homogeneous(a), ShiftDegree::Homogeneous(b)) => {
                ShiftDegree::Homogeneous(a + b)
            }
            _ => ShiftDegree::Mixed,
        }
    }

    fn join(self, other: ShiftDegree) -> ShiftDegree {
        match (self, other) {
            (ShiftDegree::Homogeneous(a), ShiftDegree::Homogeneous(b)) if a == b => {
                ShiftDegree::Homogeneous(a)
            }
            _ => ShiftDegree::Mixed,
        }
    }
}

/// Sparse linear operator on a truncated graded window carrying its
/// declared block-shift degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftOperator<S: Scalar> {
    window: TruncationWindow,
    degree: ShiftDegree,
    pub(crate) mat: SparseCols<GradedIndex, S>,
}

impl<S: Scalar> ShiftOperator<S> {
    /// Build from a per-column action. Every produced entry must respect
    /// the declared shift; rows falling outside the window are dropped
    /// (that is the truncation).
    pub fn from_action(
        window: TruncationWindow,
        shift: i64,
        action: impl Fn(GradedIndex) -> Vec<(GradedIndex, S)>,
    ) -> Result<Self, CoreError> {
        let mut mat = SparseCols::new();
        for col in window.indices() {
            for (row, v) in action(col) {
                if v.is_zero() {
                    continue;
                }
                if row.p != col.p + shift {
                    return Err(CoreError::ShiftViolation {
                        shift,
                        row_p: row.p,
                        row_m: row.m,
                        col_p: col.p,
                        col_m: col.m,
                    });
                }
                if window.contains(row) {
                    mat.insert_add(row, col, v);
                }
            }
        }
        Ok(ShiftOperator {
            window,
            degree: ShiftDegree::Homogeneous(shift),
            mat,
        })
    }

    pub fn identity(window: TruncationWindow) -> Self {
        ShiftOperator {
            window,
            degree: ShiftDegree::Homogeneous(0),
            mat: SparseCols::identity(window.indices()),
        }
    }

    pub fn zero(window: TruncationWindow, shift: i64) -> Self {
        ShiftOperator {
            window,
            degree: ShiftDegree::Homogeneous(shift),
            mat: SparseCols::new(),
        }
    }

    /// Identity scaled by a constant.
    pub fn scalar(window: TruncationWindow, value: S) -> Self {
        Self::identity(window).scale(&value)
    }

    pub fn window(&self) -> &TruncationWindow {
        &self.window
    }

    pub fn degree(&self) -> ShiftDegree {
        self.degree
    }

    pub fn entry(&self, row: GradedIndex, col: GradedIndex) -> S {
        self.mat.entry(row, col)
    }

    pub fn entries(&self) -> impl Iterator<Item = (GradedIndex, GradedIndex, &S)> {
        self.mat.entries()
    }

    pub fn nnz(&self) -> usize {
        self.mat.nnz()
    }

    fn check_window(&self, rhs: &Self) -> Result<(), CoreError> {
        if self.window != rhs.window {
            return Err(CoreError::WindowMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, CoreError> {
        self.check_window(rhs)?;
        Ok(ShiftOperator {
            window: self.window,
            degree: self.degree.compose(rhs.degree),
            mat: self.mat.mul(&rhs.mat),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, CoreError> {
        self.check_window(rhs)?;
        Ok(ShiftOperator {
            window: self.window,
            degree: self.degree.join(rhs.degree),
            mat: self.mat.add(&rhs.mat),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, CoreError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        ShiftOperator {
            window: self.window,
            degree: self.degree,
            mat: self.mat.neg(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        ShiftOperator {
            window: self.window,
            degree: self.degree,
            mat: self.mat.scale(factor),
        }
    }

    pub fn apply(&self, v: &GradedVector<S>) -> Result<GradedVector<S>, CoreError> {
        if v.window() != &self.window {
            return Err(CoreError::WindowMismatch);
        }
        let coeffs: BTreeMap<GradedIndex, S> =
            v.iter().map(|(k, s)| (*k, s.clone())).collect();
        let image = self.mat.apply(&coeffs);
        let mut out = GradedVector::zero(self.window);
        for (k, s) in image {
            out.set(k, s)?;
        }
        Ok(out)
    }

    /// Diagonal entries in basis order; for triangular operators these
    /// are the eigenvalues.
    pub fn diagonal(&self) -> Vec<(GradedIndex, S)> {
        self.mat.diagonal()
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ShiftOperator<T> {
        let mut mat = SparseCols::new();
        for (row, col, v) in self.mat.entries() {
            mat.insert_add(row, col, f(v));
        }
        ShiftOperator {
            window: self.window,
            degree: self.degree,
            mat,
        }
    }

    /// Largest entry magnitude with row and column in `sub`.
    pub fn max_abs_on(&self, sub: &TruncationWindow) -> f64 {
        self.mat.max_abs_on(|k| sub.contains(*k))
    }

    pub fn is_zero_on(&self, sub: &TruncationWindow) -> bool {
        self.mat.is_zero_on(|k| sub.contains(*k))
    }
}

/// [A, B] = AB - BA.
pub fn commutator<S: Scalar>(
    a: &ShiftOperator<S>,
    b: &ShiftOperator<S>,
) -> Result<ShiftOperator<S>, CoreError> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Capped multi-mode monomial space: exponent tuples e with
/// `e[i] <= caps[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialSpace<const N: usize> {
    caps: [usize; N],
}

impl<const N: usize> MonomialSpace<N> {
    pub fn new(caps: [usize; N]) -> Self {
        MonomialSpace { caps }
    }

    pub fn caps(&self) -> [usize; N] {
        self.caps
    }

    pub fn dim(&self) -> usize {
        self.caps.iter().map(|c| c + 1).product()
    }

    pub fn contains(&self, e: [usize; N]) -> bool {
        e.iter().zip(self.caps.iter()).all(|(x, c)| x <= c)
    }

    pub fn indices(&self) -> Vec<[usize; N]> {
        let mut out = vec![[0usize; N]];
        for axis in 0..N {
            let mut next = Vec::with_capacity(out.len() * (self.caps[axis] + 1));
            for base in &out {
                for v in 0..=self.caps[axis] {
                    let mut e = *base;
                    e[axis] = v;
                    next.push(e);
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    /// Space with every cap reduced by `margin`; `None` if impossible.
    pub fn shrunk(&self, margin: usize) -> Option<MonomialSpace<N>> {
        let mut caps = self.caps;
        for c in caps.iter_mut() {
            if *c < margin {
                return None;
            }
            *c -= margin;
        }
        Some(MonomialSpace::new(caps))
    }
}

/// Sparse operator on a capped monomial space.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxOp<S: Scalar, const N: usize> {
    space: MonomialSpace<N>,
    pub(crate) mat: SparseCols<[usize; N], S>,
}

impl<S: Scalar, const N: usize> BoxOp<S, N> {
    pub fn from_action(
        space: MonomialSpace<N>,
        action: impl Fn([usize; N]) -> Vec<([usize; N], S)>,
    ) -> Self {
        let mat = SparseCols::from_action(space.indices(), |k| space.contains(*k), action);
        BoxOp { space, mat }
    }

    pub fn identity(space: MonomialSpace<N>) -> Self {
        BoxOp {
            space,
            mat: SparseCols::identity(space.indices()),
        }
    }

    pub fn zero(space: MonomialSpace<N>) -> Self {
        BoxOp {
            space,
            mat: SparseCols::new(),
        }
    }

    pub fn scalar(space: MonomialSpace<N>, value: S) -> Self {
        Self::identity(space).scale(&value)
    }

    /// Multiplication by the variable on `axis`.
    pub fn mult(space: MonomialSpace<N>, axis: usize) -> Self {
        Self::from_action(space, |e| {
            let mut t = e;
            t[axis] += 1;
            vec![(t, S::one())]
        })
    }

    /// Differentiation along `axis`.
    pub fn diff(space: MonomialSpace<N>, axis: usize) -> Self {
        Self::from_action(space, |e| {
            if e[axis] == 0 {
                return vec![];
            }
            let mut t = e;
            t[axis] -= 1;
            vec![(t, S::from_int(e[axis] as i64))]
        })
    }

    pub fn space(&self) -> &MonomialSpace<N> {
        &self.space
    }

    fn check_space(&self, rhs: &Self) -> Result<(), CoreError> {
        if self.space != rhs.space {
            return Err(CoreError::WindowMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, CoreError> {
        self.check_space(rhs)?;
        Ok(BoxOp {
            space: self.space,
            mat: self.mat.mul(&rhs.mat),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, CoreError> {
        self.check_space(rhs)?;
        Ok(BoxOp {
            space: self.space,
            mat: self.mat.add(&rhs.mat),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, CoreError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        BoxOp {
            space: self.space,
            mat: self.mat.neg(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        BoxOp {
            space: self.space,
            mat: self.mat.scale(factor),
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self, CoreError> {
        self.check_space(rhs)?;
        Ok(BoxOp {
            space: self.space,
            mat: self.mat.commutator(&rhs.mat),
        })
    }

    pub fn entry(&self, row: [usize; N], col: [usize; N]) -> S {
        self.mat.entry(row, col)
    }

    pub fn entries(&self) -> impl Iterator<Item = ([usize; N], [usize; N], &S)> {
        self.mat.entries()
    }

    pub fn diagonal(&self) -> Vec<([usize; N], S)> {
        self.mat.diagonal()
    }

    pub fn apply_basis(&self, e: [usize; N]) -> Vec<([usize; N], S)> {
        let mut v = BTreeMap::new();
        v.insert(e, S::one());
        self.mat.apply(&v).into_iter().collect()
    }

    pub fn max_abs_on(&self, sub: &MonomialSpace<N>) -> f64 {
        self.mat.max_abs_on(|k| sub.contains(*k))
    }

    pub fn is_zero_on(&self, sub: &MonomialSpace<N>) -> bool {
        self.mat.is_zero_on(|k| sub.contains(*k))
    }
}
