//! Symmetry operators generated by oscillator bilinears: per-block
//! su(2) realizations, the two-mode Fock su(2), the sp(2,R) generator
//! set, the Gauss decomposition of SL(2,C), and the Borel-subgroup
//! actions with their Laguerre and coherent-state closed forms.

use crate::core::operator::{BoxOp, MonomialSpace, ShiftOperator};
use crate::core::window::{GradedIndex, TruncationWindow};
use crate::error::{CoreError, SymmetryError};
use crate::oscillators::{fock_ladders, FockLadderSet, NonFockH4};
use crate::scalar::{rat, C64, Rat, Scalar, SpinParameter};
use crate::special::factorial;

// ---------------------------------------------------------------------------
// small Gaussian-integer matrices for the sigma/epsilon contractions
// ---------------------------------------------------------------------------

/// Complex integer (re + im·i), enough for Pauli/epsilon algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Cint {
    pub re: i64,
    pub im: i64,
}

pub(crate) const fn ci(re: i64, im: i64) -> Cint {
    Cint { re, im }
}

impl Cint {
    pub fn mul(self, o: Cint) -> Cint {
        ci(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    pub fn add(self, o: Cint) -> Cint {
        ci(self.re + o.re, self.im + o.im)
    }
    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }
    pub fn to_scalar<S: Scalar>(self) -> S {
        S::from_int(self.re).add(&S::i().mul(&S::from_int(self.im)))
    }
}

pub(crate) type CMat2 = [[Cint; 2]; 2];

/// Pauli matrices σ₁, σ₂, σ₃ (index 1..=3).
pub(crate) fn sigma(i: usize) -> CMat2 {
    match i {
        1 => [[ci(0, 0), ci(1, 0)], [ci(1, 0), ci(0, 0)]],
        2 => [[ci(0, 0), ci(0, -1)], [ci(0, 1), ci(0, 0)]],
        3 => [[ci(1, 0), ci(0, 0)], [ci(0, 0), ci(-1, 0)]],
        _ => panic!("sigma index must be 1..=3"),
    }
}

/// Bracket symbol ε^{aa'} with ε^{12} = +1.
pub(crate) const EPS_UPPER: CMat2 = [[ci(0, 0), ci(1, 0)], [ci(-1, 0), ci(0, 0)]];

pub(crate) fn cmat_mul(x: CMat2, y: CMat2) -> CMat2 {
    let mut out = [[ci(0, 0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = x[r][0].mul(y[0][c]).add(x[r][1].mul(y[1][c]));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// per-block su(2) realization
// ---------------------------------------------------------------------------

/// One graded block carrying spin Λ = λ + p/2:
/// L3 = ζ d/dζ - Λ, L+ = ζ, L- = -ζ d²/dζ² + 2Λ d/dζ.
#[derive(Clone, Debug)]
pub struct Su2Block<S: Scalar> {
    pub spin: Rat,
    pub window: TruncationWindow,
    pub l3: ShiftOperator<S>,
    pub lplus: ShiftOperator<S>,
    pub lminus: ShiftOperator<S>,
}

impl<S: Scalar> Su2Block<S> {
    /// Λ(Λ+1), the value the block Casimir takes on the interior.
    pub fn casimir_value(&self) -> Rat {
        &self.spin * (&self.spin + rat(1, 1))
    }
}

/// Build the spin-(λ + p/2) block on degrees ≤ m_max.
pub fn su2_semispinor<S: Scalar>(
    lambda: &SpinParameter,
    p: i64,
    m_max: usize,
) -> Result<Su2Block<S>, CoreError> {
    let window = TruncationWindow::single_block(p, m_max)?;
    let spin = lambda.block_spin(p);
    let two_spin = &spin * rat(2, 1);
    let l3 = ShiftOperator::from_action(window, 0, |c| {
        let v = rat(c.m as i64, 1) - spin.clone();
        vec![(c, S::from_rat(&v))]
    })?;
    let lplus = ShiftOperator::from_action(window, 0, |c| {
        vec![(GradedIndex::new(c.p, c.m + 1), S::one())]
    })?;
    let lminus = ShiftOperator::from_action(window, 0, |c| {
        if c.m == 0 {
            return vec![];
        }
        let v = rat(c.m as i64, 1) * (&two_spin - rat(c.m as i64 - 1, 1));
        vec![(GradedIndex::new(c.p, c.m - 1), S::from_rat(&v))]
    })?;
    Ok(Su2Block {
        spin,
        window,
        l3,
        lplus,
        lminus,
    })
}

/// Blockwise su(2) operators on a whole graded window (block p carries
/// spin λ + p/2). These are the restrictions of (1/2) a² σ a¹.
pub fn su2_graded<S: Scalar>(
    lambda: &SpinParameter,
    window: TruncationWindow,
) -> Result<[ShiftOperator<S>; 3], CoreError> {
    let lam = lambda.value().clone();
    let l3 = ShiftOperator::from_action(window, 0, |c| {
        let v = rat(c.m as i64, 1) - &lam - rat(c.p, 2);
        vec![(c, S::from_rat(&v))]
    })?;
    let lplus = ShiftOperator::from_action(window, 0, |c| {
        vec![(GradedIndex::new(c.p, c.m + 1), S::one())]
    })?;
    let lminus = ShiftOperator::from_action(window, 0, |c| {
        if c.m == 0 {
            return vec![];
        }
        let two_spin = &lam * rat(2, 1) + rat(c.p, 1);
        let v = rat(c.m as i64, 1) * (two_spin - rat(c.m as i64 - 1, 1));
        vec![(GradedIndex::new(c.p, c.m - 1), S::from_rat(&v))]
    })?;
    Ok([l3, lplus, lminus])
}

// ---------------------------------------------------------------------------
// one-mode parity split and two-mode Fock su(2)
// ---------------------------------------------------------------------------

/// The one-mode bilinear su(2): L3 = z d/dz / 2 + 1/4, L+ = z²/2,
/// L- = -d²/dz² / 2. Parity subspaces carry spins -1/4 and -3/4.
#[derive(Clone, Debug)]
pub struct H2Split<S: Scalar> {
    pub space: MonomialSpace<1>,
    pub l3: BoxOp<S, 1>,
    pub lplus: BoxOp<S, 1>,
    pub lminus: BoxOp<S, 1>,
}

pub fn h2_semispinor_split<S: Scalar>(m_max: usize) -> H2Split<S> {
    assert!(m_max >= 4);
    let space = MonomialSpace::new([m_max]);
    let l3 = BoxOp::from_action(space, |e| {
        let v = rat(e[0] as i64, 2) + rat(1, 4);
        vec![(e, S::from_rat(&v))]
    });
    let lplus = BoxOp::from_action(space, |e| vec![([e[0] + 2], S::from_rat(&rat(1, 2)))]);
    let lminus = BoxOp::from_action(space, |e| {
        if e[0] < 2 {
            return vec![];
        }
        let v = rat(-((e[0] * (e[0] - 1)) as i64), 2);
        vec![([e[0] - 2], S::from_rat(&v))]
    });
    H2Split {
        space,
        l3,
        lplus,
        lminus,
    }
}

impl<S: Scalar> H2Split<S> {
    pub fn casimir(&self) -> BoxOp<S, 1> {
        let half = S::from_rat(&rat(1, 2));
        let l3sq = self.l3.mul(&self.l3).unwrap();
        let anti = self
            .lplus
            .mul(&self.lminus)
            .unwrap()
            .add(&self.lminus.mul(&self.lplus).unwrap())
            .unwrap();
        l3sq.add(&anti.scale(&half)).unwrap()
    }
}

/// Two-mode Fock su(2): L3 = (z₁∂₁ - z₂∂₂)/2, L+ = z₁∂₂, L- = z₂∂₁,
/// plus L0 = (z₁∂₁ + z₂∂₂)/2. Homogeneous degree-p polynomials carry
/// the finite-dimensional spin-p/2 block.
#[derive(Clone, Debug)]
pub struct FockSu2<S: Scalar> {
    pub space: MonomialSpace<2>,
    pub l3: BoxOp<S, 2>,
    pub lplus: BoxOp<S, 2>,
    pub lminus: BoxOp<S, 2>,
    pub l0: BoxOp<S, 2>,
}

pub fn fock_su2<S: Scalar>(m_max: usize) -> FockSu2<S> {
    assert!(m_max >= 3);
    let space = MonomialSpace::new([m_max, m_max]);
    let l3 = BoxOp::from_action(space, |e| {
        let v = rat(e[0] as i64 - e[1] as i64, 2);
        vec![(e, S::from_rat(&v))]
    });
    let lplus = BoxOp::from_action(space, |e| {
        if e[1] == 0 {
            return vec![];
        }
        vec![([e[0] + 1, e[1] - 1], S::from_int(e[1] as i64))]
    });
    let lminus = BoxOp::from_action(space, |e| {
        if e[0] == 0 {
            return vec![];
        }
        vec![([e[0] - 1, e[1] + 1], S::from_int(e[0] as i64))]
    });
    let l0 = BoxOp::from_action(space, |e| {
        let v = rat(e[0] as i64 + e[1] as i64, 2);
        vec![(e, S::from_rat(&v))]
    });
    FockSu2 {
        space,
        l3,
        lplus,
        lminus,
        l0,
    }
}

impl<S: Scalar> FockSu2<S> {
    pub fn casimir(&self) -> BoxOp<S, 2> {
        let half = S::from_rat(&rat(1, 2));
        let l3sq = self.l3.mul(&self.l3).unwrap();
        let anti = self
            .lplus
            .mul(&self.lminus)
            .unwrap()
            .add(&self.lminus.mul(&self.lplus).unwrap())
            .unwrap();
        l3sq.add(&anti.scale(&half)).unwrap()
    }
}

// ---------------------------------------------------------------------------
// sp(2,R) generators from bilinears, generic over the operator kind
// ---------------------------------------------------------------------------

/// Minimal algebra interface shared by graded and box operators, so the
/// bilinear constructions apply to both sources.
pub trait AlgebraOp: Sized + Clone {
    fn mul(&self, rhs: &Self) -> Result<Self, CoreError>;
    fn add(&self, rhs: &Self) -> Result<Self, CoreError>;
    fn sub(&self, rhs: &Self) -> Result<Self, CoreError>;
    /// Multiply by the Gaussian rational re + im·i.
    fn scale_gauss(&self, re: &Rat, im: &Rat) -> Self;
    fn identity_like(&self) -> Self;
}

impl<S: Scalar> AlgebraOp for ShiftOperator<S> {
    fn mul(&self, rhs: &Self) -> Result<Self, CoreError> {
        ShiftOperator::mul(self, rhs)
    }
    fn add(&self, rhs: &Self) -> Result<Self, CoreError> {
        ShiftOperator::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, CoreError> {
        ShiftOperator::sub(self, rhs)
    }
    fn scale_gauss(&self, re: &Rat, im: &Rat) -> Self {
        let factor = S::from_rat(re).add(&S::i().mul(&S::from_rat(im)));
        self.scale(&factor)
    }
    fn identity_like(&self) -> Self {
        ShiftOperator::identity(*self.window())
    }
}

impl<S: Scalar, const N: usize> AlgebraOp for BoxOp<S, N> {
    fn mul(&self, rhs: &Self) -> Result<Self, CoreError> {
        BoxOp::mul(self, rhs)
    }
    fn add(&self, rhs: &Self) -> Result<Self, CoreError> {
        BoxOp::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, CoreError> {
        BoxOp::sub(self, rhs)
    }
    fn scale_gauss(&self, re: &Rat, im: &Rat) -> Self {
        let factor = S::from_rat(re).add(&S::i().mul(&S::from_rat(im)));
        self.scale(&factor)
    }
    fn identity_like(&self) -> Self {
        BoxOp::identity(*self.space())
    }
}

/// The sp(2,R) generator set built from two-mode bilinears:
/// rotations L, boosts N, the Γ vector and Γ0 = L0 + 1/2.
#[derive(Clone, Debug)]
pub struct Sp2RGenerators<O> {
    pub l: [O; 3],
    pub n: [O; 3],
    pub gamma: [O; 3],
    pub l0: O,
    pub gamma0: O,
}

fn contract<O: AlgebraOp>(
    left: &[O; 2],
    matrix: CMat2,
    right: &[O; 2],
    pre_re: Rat,
    pre_im: Rat,
) -> Result<O, CoreError> {
    let mut acc: Option<O> = None;
    for al in 0..2 {
        for be in 0..2 {
            let m = matrix[al][be];
            if m.is_zero() {
                continue;
            }
            let prod = left[al].mul(&right[be])?;
            let re = &pre_re * rat(m.re, 1) - &pre_im * rat(m.im, 1);
            let im = &pre_re * rat(m.im, 1) + &pre_im * rat(m.re, 1);
            let term = prod.scale_gauss(&re, &im);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
    }
    Ok(acc.expect("matrix has at least one nonzero entry"))
}

/// Assemble the generator set from the mode operators a¹_α (lowering)
/// and a²_α (raising).
pub fn sp2r_from_modes<O: AlgebraOp>(
    a1: &[O; 2],
    a2: &[O; 2],
) -> Result<Sp2RGenerators<O>, CoreError> {
    let zero = rat(0, 1);
    let mut l = Vec::with_capacity(3);
    let mut n = Vec::with_capacity(3);
    let mut g = Vec::with_capacity(3);
    for i in 1..=3 {
        let s = sigma(i);
        let eps_s = cmat_mul(EPS_UPPER, s);
        let s_eps = cmat_mul(s, EPS_UPPER);
        l.push(contract(a2, s, a1, rat(1, 2), zero.clone())?);
        let n1 = contract(a1, eps_s, a1, rat(1, 1), zero.clone())?;
        let n2 = contract(a2, s_eps, a2, rat(1, 1), zero.clone())?;
        n.push(n1.add(&n2)?.scale_gauss(&zero, &rat(1, 4)));
        let g1 = contract(a1, eps_s, a1, rat(1, 1), zero.clone())?;
        let g2 = contract(a2, s_eps, a2, rat(1, 1), zero.clone())?;
        g.push(g1.sub(&g2)?.scale_gauss(&rat(1, 4), &zero));
    }
    let mut l0 = a2[0].mul(&a1[0])?.add(&a2[1].mul(&a1[1])?)?;
    l0 = l0.scale_gauss(&rat(1, 2), &zero);
    let gamma0 = l0.add(&l0.identity_like().scale_gauss(&rat(1, 2), &zero))?;
    Ok(Sp2RGenerators {
        l: [l.remove(0), l.remove(0), l.remove(0)],
        n: [n.remove(0), n.remove(0), n.remove(0)],
        gamma: [g.remove(0), g.remove(0), g.remove(0)],
        l0,
        gamma0,
    })
}

/// sp(2,R) generators over the graded non-Fock realization.
pub fn sp2r_generators_graded<S: Scalar>(
    source: &NonFockH4<S>,
) -> Result<Sp2RGenerators<ShiftOperator<S>>, CoreError> {
    let a1 = [source.op(1, 1).clone(), source.op(1, 2).clone()];
    let a2 = [source.op(2, 1).clone(), source.op(2, 2).clone()];
    sp2r_from_modes(&a1, &a2)
}

/// sp(2,R) generators over the two-mode Fock realization.
pub fn sp2r_generators_fock<S: Scalar>(
    m_max: usize,
) -> Result<Sp2RGenerators<BoxOp<S, 2>>, CoreError> {
    match fock_ladders::<S>(2, m_max) {
        FockLadderSet::TwoMode {
            lowering, raising, ..
        } => sp2r_from_modes(&lowering, &raising),
        FockLadderSet::OneMode { .. } => unreachable!(),
    }
}

impl<O: AlgebraOp> Sp2RGenerators<O> {
    fn square_sum(v: &[O; 3]) -> Result<O, CoreError> {
        v[0].mul(&v[0])?.add(&v[1].mul(&v[1])?)?.add(&v[2].mul(&v[2])?)
    }

    /// C = L² - N².
    pub fn casimir_c(&self) -> Result<O, CoreError> {
        Self::square_sum(&self.l)?.sub(&Self::square_sum(&self.n)?)
    }

    /// C' = L·N.
    pub fn casimir_c_prime(&self) -> Result<O, CoreError> {
        self.l[0]
            .mul(&self.n[0])?
            .add(&self.l[1].mul(&self.n[1])?)?
            .add(&self.l[2].mul(&self.n[2])?)
    }

    /// Γ_μ² = Γ² - Γ0².
    pub fn casimir_gamma_sq(&self) -> Result<O, CoreError> {
        Self::square_sum(&self.gamma)?.sub(&self.gamma0.mul(&self.gamma0)?)
    }
}

// ---------------------------------------------------------------------------
// SL(2,C) elements and the Gauss decomposition
// ---------------------------------------------------------------------------

/// Dense complex 2×2 matrix `[[a,b],[c,d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        )
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn max_diff(&self, o: &Mat2) -> f64 {
        (self.a - o.a)
            .norm()
            .max((self.b - o.b).norm())
            .max((self.c - o.c).norm())
            .max((self.d - o.d).norm())
    }
}

/// An SL(2,C) element (determinant 1 within 1e-12).
#[derive(Clone, Copy, Debug)]
pub struct GroupElement(Mat2);

impl GroupElement {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self, SymmetryError> {
        let m = Mat2::new(a, b, c, d);
        let det = m.det();
        if (det - C64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(SymmetryError::NotUnimodular {
                det: format!("{det}"),
            });
        }
        Ok(GroupElement(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn alpha(&self) -> C64 {
        self.0.a
    }
    pub fn beta(&self) -> C64 {
        self.0.b
    }
    pub fn gamma(&self) -> C64 {
        self.0.c
    }
    pub fn delta(&self) -> C64 {
        self.0.d
    }

    /// Regular elements admit the Gauss decomposition.
    pub fn is_regular(&self) -> bool {
        self.0.d.norm() > 1e-14
    }
}

/// Factors of v = n₊ · h · n₋.
#[derive(Clone, Copy, Debug)]
pub struct GaussFactors {
    pub n_plus: Mat2,
    pub h: Mat2,
    pub n_minus: Mat2,
}

impl GaussFactors {
    pub fn product(&self) -> Mat2 {
        self.n_plus.mul(&self.h).mul(&self.n_minus)
    }

    /// β/δ, the upper-unipotent parameter.
    pub fn upper_parameter(&self) -> C64 {
        self.n_plus.b
    }

    /// δ, the diagonal parameter (h = diag(1/δ, δ)).
    pub fn diagonal_parameter(&self) -> C64 {
        self.h.d
    }

    /// γ/δ, the lower-unipotent parameter.
    pub fn lower_parameter(&self) -> C64 {
        self.n_minus.c
    }
}

/// Gauss factorization of a regular element:
/// `n₊ = [[1, β/δ],[0,1]]`, `h = diag(δ⁻¹, δ)`, `n₋ = [[1,0],[γ/δ,1]]`.
pub fn gauss_factorize(v: &GroupElement) -> Result<GaussFactors, SymmetryError> {
    if !v.is_regular() {
        return Err(SymmetryError::SingularElement);
    }
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let delta = v.delta();
    Ok(GaussFactors {
        n_plus: Mat2::new(one, v.beta() / delta, zero, one),
        h: Mat2::new(one / delta, zero, zero, delta),
        n_minus: Mat2::new(one, zero, v.gamma() / delta, one),
    })
}

// ---------------------------------------------------------------------------
// Borel actions on one block: truncated series and exponential data
// ---------------------------------------------------------------------------

/// Coefficients of a truncated series Σ f_n ζ^n.
pub type BlockSeries = Vec<C64>;

/// δ^{2λ} with the principal branch of the logarithm.
pub fn delta_power(lambda: &SpinParameter, delta: C64) -> C64 {
    delta.powc(C64::new(2.0 * lambda.to_f64(), 0.0))
}

/// Action of an upper-Borel element b₊ = n₊(β/δ) h(δ):
/// f(ζ) ↦ δ^{2λ} e^{(β/δ)ζ} f(ζ/δ²), truncated at the input length.
pub fn borel_upper_action(
    lambda: &SpinParameter,
    beta_over_delta: C64,
    delta: C64,
    f: &BlockSeries,
) -> BlockSeries {
    let len = f.len();
    let mut scaled = vec![C64::new(0.0, 0.0); len];
    let inv_d2 = C64::new(1.0, 0.0) / (delta * delta);
    let mut pw = C64::new(1.0, 0.0);
    for n in 0..len {
        scaled[n] = f[n] * pw;
        pw *= inv_d2;
    }
    // convolution with the exponential series
    let mut exp_coeff = vec![C64::new(0.0, 0.0); len];
    let mut term = C64::new(1.0, 0.0);
    for (k, slot) in exp_coeff.iter_mut().enumerate() {
        *slot = term;
        term *= beta_over_delta / C64::new((k + 1) as f64, 0.0);
    }
    let pre = delta_power(lambda, delta);
    let mut out = vec![C64::new(0.0, 0.0); len];
    for n in 0..len {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..=n {
            acc += exp_coeff[k] * scaled[n - k];
        }
        out[n] = pre * acc;
    }
    out
}

/// One application of L- = -ζ d²/dζ² + 2λ d/dζ on the spin-λ block.
pub fn lminus_apply(lambda: &SpinParameter, f: &BlockSeries) -> BlockSeries {
    let two_lambda = 2.0 * lambda.to_f64();
    let mut out = vec![C64::new(0.0, 0.0); f.len()];
    for (m, fm) in f.iter().enumerate().skip(1) {
        let coeff = (m as f64) * (two_lambda - (m as f64 - 1.0));
        out[m - 1] += C64::new(coeff, 0.0) * fm;
    }
    out
}

/// exp(τ L-) by Taylor summation. L- is strictly lowering, so the sum
/// terminates; we also stop once the next term is below 1e-14 of the
/// accumulated norm.
pub fn exp_lminus(lambda: &SpinParameter, tau: C64, f: &BlockSeries) -> BlockSeries {
    let mut acc = f.clone();
    let mut term = f.clone();
    for k in 1..=f.len() {
        term = lminus_apply(lambda, &term);
        let factor = tau / C64::new(k as f64, 0.0);
        for t in term.iter_mut() {
            *t *= factor;
        }
        let tnorm: f64 = term.iter().map(|c| c.norm()).sum();
        if tnorm == 0.0 {
            break;
        }
        for (a, t) in acc.iter_mut().zip(term.iter()) {
            *a += t;
        }
        let anorm: f64 = acc.iter().map(|c| c.norm()).sum();
        if tnorm < 1e-14 * anorm.max(1.0) {
            break;
        }
    }
    acc
}

/// Generalized Laguerre polynomial L_n^{(a)}(x) by the stable
/// three-term recurrence.
pub fn laguerre_eval(n: usize, a: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut lkm1 = 1.0f64;
    let mut lk = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * lk - (kf + a) * lkm1) / (kf + 1.0);
        lkm1 = lk;
        lk = next;
    }
    lk
}

/// Coefficients (in ζ) of n! (-τ)^n L_n^{(-2λ-1)}(ζ/τ), the closed form
/// of exp(τ L-) ζ^n. With `halved_prefactor` the (-τ/2)^n variant is
/// produced instead; that variant does not equal the exponential action
/// (its leading coefficient is 2^{-n}, not 1) and is kept only so the
/// discrepancy can be demonstrated.
pub fn laguerre_closed_form(
    lambda: &SpinParameter,
    tau: C64,
    n: usize,
    len: usize,
    halved_prefactor: bool,
) -> BlockSeries {
    let a = -2.0 * lambda.to_f64() - 1.0;
    let base = if halved_prefactor { -tau / 2.0 } else { -tau };
    let pre = C64::new(factorial(n), 0.0) * base.powu(n as u32);
    // L_n^{(a)}(x) = Σ_k (-1)^k C(n+a, n-k) x^k / k!
    let mut out = vec![C64::new(0.0, 0.0); len];
    for k in 0..=n.min(len.saturating_sub(1)) {
        // C(n+a, n-k) = Π_{j=1}^{n-k} (a+k+j) / (n-k)!
        let mut binom = 1.0f64;
        for j in 1..=(n - k) {
            binom *= a + k as f64 + j as f64;
        }
        binom /= factorial(n - k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let xk = (C64::new(1.0, 0.0) / tau).powu(k as u32);
        out[k] = pre * C64::new(sign * binom / factorial(k), 0.0) * xk;
    }
    out
}

/// c · e^{sζ}, the datum the group actions move around.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpDatum {
    pub prefactor: C64,
    pub slope: C64,
}

impl ExpDatum {
    pub fn new(prefactor: C64, slope: C64) -> Self {
        ExpDatum { prefactor, slope }
    }

    pub fn coefficients(&self, len: usize) -> BlockSeries {
        let mut out = vec![C64::new(0.0, 0.0); len];
        let mut term = self.prefactor;
        for (n, slot) in out.iter_mut().enumerate() {
            *slot = term;
            term *= self.slope / C64::new((n + 1) as f64, 0.0);
        }
        out
    }

    pub fn max_diff(&self, o: &ExpDatum) -> f64 {
        (self.prefactor - o.prefactor)
            .norm()
            .max((self.slope - o.slope).norm())
    }
}

fn pole_guard(denom: C64, scale: f64) -> Result<(), SymmetryError> {
    if denom.norm() <= 1e-9 * scale.max(1.0) {
        return Err(SymmetryError::PoleAtElement {
            magnitude: denom.norm(),
        });
    }
    Ok(())
}

/// Full group action on an exponential datum:
/// c e^{ζτ} ↦ c (γτ+δ)^{2λ} e^{ζ(ατ+β)/(γτ+δ)}. Errors at γτ+δ = 0.
pub fn group_action_on_exp(
    lambda: &SpinParameter,
    v: &GroupElement,
    datum: &ExpDatum,
) -> Result<ExpDatum, SymmetryError> {
    let tau = datum.slope;
    let denom = v.gamma() * tau + v.delta();
    pole_guard(denom, tau.norm() * v.gamma().norm() + v.delta().norm())?;
    let pre = denom.powc(C64::new(2.0 * lambda.to_f64(), 0.0));
    let new_slope = (v.alpha() * tau + v.beta()) / denom;
    Ok(ExpDatum::new(datum.prefactor * pre, new_slope))
}

/// The same action assembled factor by factor from the Gauss
/// decomposition: n₋ first, then h, then n₊.
pub fn factorwise_action_on_exp(
    lambda: &SpinParameter,
    factors: &GaussFactors,
    datum: &ExpDatum,
) -> Result<ExpDatum, SymmetryError> {
    // n₋(g): c e^{ζτ} ↦ c (gτ+1)^{2λ} e^{ζ τ/(gτ+1)}
    let g = factors.lower_parameter();
    let denom = g * datum.slope + C64::new(1.0, 0.0);
    pole_guard(denom, g.norm() * datum.slope.norm() + 1.0)?;
    let after_n_minus = ExpDatum::new(
        datum.prefactor * denom.powc(C64::new(2.0 * lambda.to_f64(), 0.0)),
        datum.slope / denom,
    );
    // h(δ): f(ζ) ↦ δ^{2λ} f(ζ/δ²)
    let delta = factors.diagonal_parameter();
    let after_h = ExpDatum::new(
        after_n_minus.prefactor * delta_power(lambda, delta),
        after_n_minus.slope / (delta * delta),
    );
    // n₊(b): multiply by e^{bζ}
    Ok(ExpDatum::new(
        after_h.prefactor,
        after_h.slope + factors.upper_parameter(),
    ))
}

/// Truncated series of the lowest-weight coherent state
/// ₀F₁(-2λ; -τζ) = Σ (-τζ)^k / ((-2λ)_k k!).
pub fn coherent_state_series(lambda: &SpinParameter, tau: C64, len: usize) -> BlockSeries {
    let b = -2.0 * lambda.to_f64();
    let mut out = vec![C64::new(0.0, 0.0); len];
    let mut term = C64::new(1.0, 0.0);
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = term;
        let kf = k as f64;
        term *= -tau / C64::new((b + kf) * (kf + 1.0), 0.0);
    }
    out
}

/// Max coefficient difference of two series up to `upto`.
pub fn series_residual(a: &BlockSeries, b: &BlockSeries, upto: usize) -> f64 {
    let n = upto.min(a.len()).min(b.len());
    (0..n).map(|k| (a[k] - b[k]).norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::residual::{casimir_su2, residual_on};
    use crate::scalar::CRat;

    fn lam(n: i64, d: i64) -> SpinParameter {
        SpinParameter::general(rat(n, d)).unwrap()
    }

    #[test]
    fn su2_block_brackets_exact() {
        let lambda = lam(-3, 10);
        for p in -2..=2 {
            let b = su2_semispinor::<CRat>(&lambda, p, 10).unwrap();
            let sub = b.window.shrink(0, 2).unwrap();
            let c_plus = crate::core::commutator(&b.l3, &b.lplus).unwrap();
            assert_eq!(residual_on(&c_plus, &b.lplus, &sub), 0.0);
            let c_minus = crate::core::commutator(&b.l3, &b.lminus).unwrap();
            assert_eq!(residual_on(&c_minus, &b.lminus.neg(), &sub), 0.0);
            let c_pm = crate::core::commutator(&b.lplus, &b.lminus).unwrap();
            let two_l3 = b.l3.scale(&CRat::from_int(2));
            assert_eq!(residual_on(&c_pm, &two_l3, &sub), 0.0);
        }
    }

    #[test]
    fn su2_block_casimir_is_block_spin_pairing() {
        let lambda = lam(-1, 4);
        for p in [0i64, 1] {
            let b = su2_semispinor::<CRat>(&lambda, p, 10).unwrap();
            let cas = casimir_su2(&b.l3, &b.lplus, &b.lminus).unwrap();
            let target = ShiftOperator::scalar(b.window, CRat::from_rat(&b.casimir_value()));
            let sub = b.window.shrink(0, 2).unwrap();
            assert_eq!(residual_on(&cas, &target, &sub), 0.0);
        }
        // Λ(Λ+1) at p=0, λ=-1/4 is -3/16; at p=1 it is (1/4)(5/4) = 5/16
        assert_eq!(
            su2_semispinor::<CRat>(&lambda, 0, 4).unwrap().casimir_value(),
            rat(-3, 16)
        );
        assert_eq!(
            su2_semispinor::<CRat>(&lambda, 1, 4).unwrap().casimir_value(),
            rat(5, 16)
        );
    }

    #[test]
    fn block_raising_is_multiplication_and_l3_ground_value() {
        let lambda = lam(-1, 4);
        let b = su2_semispinor::<CRat>(&lambda, 0, 6).unwrap();
        let img = b
            .lplus
            .entry(GradedIndex::new(0, 3), GradedIndex::new(0, 2));
        assert_eq!(img, CRat::one());
        let ground = b.l3.entry(GradedIndex::new(0, 0), GradedIndex::new(0, 0));
        assert_eq!(ground, CRat::from_rat(&rat(1, 4))); // -Λ = +1/4 at λ=-1/4
    }

    #[test]
    fn h2_split_casimir_is_minus_three_sixteenth() {
        let split = h2_semispinor_split::<CRat>(12);
        let cas = split.casimir();
        let target = BoxOp::scalar(split.space, CRat::from_rat(&rat(-3, 16)));
        let sub = split.space.shrunk(2).unwrap();
        let diff = cas.sub(&target).unwrap();
        assert!(diff.is_zero_on(&sub));
        // parity is preserved by L+ (degree +2)
        for (row, col, _) in split.lplus.entries() {
            assert_eq!(row[0] % 2, col[0] % 2);
        }
    }

    #[test]
    fn h2_lowest_weights_quarter_and_three_quarters() {
        let split = h2_semispinor_split::<CRat>(6);
        assert_eq!(split.l3.entry([0], [0]), CRat::from_rat(&rat(1, 4)));
        assert_eq!(split.l3.entry([1], [1]), CRat::from_rat(&rat(3, 4)));
    }

    #[test]
    fn fock_su2_substitution_and_casimir() {
        let f = fock_su2::<CRat>(6);
        // L+ z2 = z1
        assert_eq!(f.lplus.entry([1, 0], [0, 1]), CRat::one());
        let cas = f.casimir();
        // on homogeneous degree 2 the value is (1)(2) = 2; constants give 0
        for e in f.space.indices() {
            if e[0] + e[1] == 2 && e[0] <= 4 && e[1] <= 4 {
                assert_eq!(cas.entry(e, e), CRat::from_int(2), "diag at {e:?}");
            }
        }
        assert_eq!(cas.entry([0, 0], [0, 0]), CRat::zero());
    }

    #[test]
    fn gauss_factorization_examples() {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let id = GroupElement::new(one, zero, zero, one).unwrap();
        let f = gauss_factorize(&id).unwrap();
        assert!(f.product().max_diff(&Mat2::identity()) < 1e-15);

        let v = GroupElement::new(
            C64::new(2.0, 0.0),
            one,
            one,
            one,
        )
        .unwrap();
        let f = gauss_factorize(&v).unwrap();
        assert!((f.upper_parameter() - one).norm() < 1e-15);
        assert!((f.diagonal_parameter() - one).norm() < 1e-15);
        assert!((f.lower_parameter() - one).norm() < 1e-15);
        assert!(f.product().max_diff(v.matrix()) < 1e-12);

        let singular = GroupElement::new(zero, one, -one, zero).unwrap();
        assert!(matches!(
            gauss_factorize(&singular),
            Err(SymmetryError::SingularElement)
        ));
    }

    #[test]
    fn diagonal_action_scales_monomials() {
        // h = diag(δ⁻¹, δ): ζ^n ↦ δ^{2λ-2n} ζ^n
        let lambda = lam(-3, 10);
        let delta = C64::new(1.3, 0.2);
        let mut f = vec![C64::new(0.0, 0.0); 6];
        f[3] = C64::new(1.0, 0.0);
        let out = borel_upper_action(&lambda, C64::new(0.0, 0.0), delta, &f);
        let expected = delta.powc(C64::new(2.0 * lambda.to_f64() - 6.0, 0.0));
        assert!((out[3] - expected).norm() < 1e-12);
        for (n, c) in out.iter().enumerate() {
            if n != 3 {
                assert!(c.norm() < 1e-15);
            }
        }
    }

    #[test]
    fn exp_lminus_matches_corrected_laguerre_closed_form() {
        let lambda = lam(-3, 10);
        for &tau_re in &[0.5f64, 1.0, -0.7] {
            let tau = C64::new(tau_re, 0.0);
            for n in 0..=8usize {
                let mut f = vec![C64::new(0.0, 0.0); 16];
                f[n] = C64::new(1.0, 0.0);
                let direct = exp_lminus(&lambda, tau, &f);
                let closed = laguerre_closed_form(&lambda, tau, n, 16, false);
                assert!(
                    series_residual(&direct, &closed, 16) < 1e-8,
                    "n={n}, tau={tau_re}"
                );
            }
        }
    }

    #[test]
    fn halved_prefactor_variant_disagrees() {
        // documents the 2^-n discrepancy of the halved closed form
        let lambda = lam(-3, 10);
        let tau = C64::new(0.5, 0.0);
        let mut f = vec![C64::new(0.0, 0.0); 8];
        f[1] = C64::new(1.0, 0.0);
        let direct = exp_lminus(&lambda, tau, &f);
        let halved = laguerre_closed_form(&lambda, tau, 1, 8, true);
        assert!(series_residual(&direct, &halved, 8) > 1e-2);
    }

    #[test]
    fn laguerre_low_orders() {
        let a = 0.7;
        let x = 1.9;
        assert_eq!(laguerre_eval(0, a, x), 1.0);
        assert!((laguerre_eval(1, a, x) - (a + 1.0 - x)).abs() < 1e-15);
    }

    #[test]
    fn laguerre_recurrence_matches_series() {
        // independent series oracle Σ (-1)^k C(n+a, n-k) x^k / k!
        let n = 5usize;
        let a = -0.4f64;
        let x = 1.3f64;
        let mut series = 0.0f64;
        for k in 0..=n {
            let mut binom = 1.0f64;
            for j in 1..=(n - k) {
                binom *= a + k as f64 + j as f64;
            }
            binom /= factorial(n - k);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            series += sign * binom * x.powi(k as i32) / factorial(k);
        }
        assert!((laguerre_eval(n, a, x) - series).abs() < 1e-12);
        // frozen reference value
        assert!((laguerre_eval(n, a, x) - 0.16126608333333339).abs() < 1e-12);
    }

    #[test]
    fn factorwise_equals_direct_group_action() {
        let lambda = lam(-3, 10);
        let v = GroupElement::new(
            C64::new(1.1, 0.1),
            C64::new(0.4, -0.2),
            C64::new(0.3, 0.05),
            (C64::new(1.0, 0.0) + C64::new(0.4, -0.2) * C64::new(0.3, 0.05))
                / C64::new(1.1, 0.1),
        )
        .unwrap();
        let f = gauss_factorize(&v).unwrap();
        let datum = ExpDatum::new(C64::new(1.0, 0.0), C64::new(0.6, 0.1));
        let direct = group_action_on_exp(&lambda, &v, &datum).unwrap();
        let factored = factorwise_action_on_exp(&lambda, &f, &datum).unwrap();
        assert!(direct.max_diff(&factored) < 1e-12);
    }

    #[test]
    fn near_pole_raises_error() {
        let lambda = lam(-3, 10);
        // v with gamma*tau + delta = 0 for tau = 2: delta = -2 gamma
        let gamma = C64::new(0.5, 0.0);
        let delta = C64::new(-1.0, 0.0);
        // alpha*delta - beta*gamma = 1
        let alpha = C64::new(1.0, 0.0);
        let beta = (alpha * delta - C64::new(1.0, 0.0)) / gamma;
        let v = GroupElement::new(alpha, beta, gamma, delta).unwrap();
        let datum = ExpDatum::new(C64::new(1.0, 0.0), C64::new(2.0, 0.0));
        assert!(matches!(
            group_action_on_exp(&lambda, &v, &datum),
            Err(SymmetryError::PoleAtElement { .. })
        ));
    }

    #[test]
    fn coherent_state_is_lminus_eigenvector() {
        let lambda = lam(-3, 10);
        let tau = C64::new(0.8, 0.0);
        let series = coherent_state_series(&lambda, tau, 40);
        let image = lminus_apply(&lambda, &series);
        let scaled: BlockSeries = series.iter().map(|c| c * tau).collect();
        assert!(series_residual(&image, &scaled, 38) < 1e-10);
    }
}
