//! The interlacing kernel relating the graded one-variable realization
//! to the two-variable Fock realization, handled as a formal object:
//! block p is z̄₂^{2λ+p} Σ_j (ζ z̄₁/z̄₂)^j / j!. All of its claimed
//! properties are coefficient identities, exact in rational-λ
//! arithmetic; nothing here is integrated numerically.

use std::collections::BTreeMap;

use crate::core::operator::{BoxOp, MonomialSpace, ShiftOperator};
use crate::core::window::TruncationWindow;
use crate::error::{CoreError, InterlaceError};
use crate::oscillators::{phi_phibar, DecycledPair};
use crate::scalar::{rat, Rat, Scalar, SpinParameter};
use crate::symmetry::su2_graded;

// ---------------------------------------------------------------------------
// formal kernel data
// ---------------------------------------------------------------------------

/// Formal linear combination of terms ζ^u z̄₁^v z̄₂^{2λ + w}, keyed by
/// (u, v, w) with exact rational coefficients. The fractional part of
/// the z̄₂ exponent (2λ) is common to every term and kept implicit.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct KernelData {
    terms: BTreeMap<(usize, usize, i64), Rat>,
}

impl KernelData {
    pub fn zero() -> Self {
        KernelData::default()
    }

    pub fn add_term(&mut self, u: usize, v: usize, w: i64, coeff: Rat) {
        if coeff == rat(0, 1) {
            return;
        }
        let cell = self.terms.entry((u, v, w)).or_insert_with(|| rat(0, 1));
        *cell += coeff;
        if *cell == rat(0, 1) {
            self.terms.remove(&(u, v, w));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, u: usize, v: usize, w: i64) -> Rat {
        self.terms.get(&(u, v, w)).cloned().unwrap_or_else(|| rat(0, 1))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = Self::zero();
        for ((u, v, w), c) in &self.terms {
            out.add_term(*u, *v, *w, c * s);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((u, v, w), c) in &o.terms {
            out.add_term(*u, *v, *w, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&rat(-1, 1)))
    }

    /// Restriction to series order ≤ cutoff in both ζ and z̄₁; the
    /// truncation-safe comparison region.
    pub fn truncated(&self, cutoff: usize) -> Self {
        let mut out = Self::zero();
        for ((u, v, w), c) in &self.terms {
            if *u <= cutoff && *v <= cutoff {
                out.add_term(*u, *v, *w, c.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    // ζ-side elementary moves

    pub fn zeta_mult(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v, w), c) in &self.terms {
            out.add_term(u + 1, *v, *w, c.clone());
        }
        out
    }

    pub fn zeta_diff(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v, w), c) in &self.terms {
            if *u > 0 {
                out.add_term(u - 1, *v, *w, c * rat(*u as i64, 1));
            }
        }
        out
    }

    // kernel-side (transposed) elementary moves

    pub fn zbar1_mult(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v, w), c) in &self.terms {
            out.add_term(*u, v + 1, *w, c.clone());
        }
        out
    }

    pub fn zbar1_diff(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v, w), c) in &self.terms {
            if *v > 0 {
                out.add_term(*u, v - 1, *w, c * rat(*v as i64, 1));
            }
        }
        out
    }

    pub fn zbar2_mult(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v, w), c) in &self.terms {
            out.add_term(*u, *v, w + 1, c.clone());
        }
        out
    }

    /// d/dz̄₂ against the exponent 2λ + w.
    pub fn zbar2_diff(&self, lambda: &SpinParameter) -> Self {
        let two_lambda = lambda.two_lambda();
        let mut out = Self::zero();
        for ((u, v, w), c) in &self.terms {
            let factor = &two_lambda + rat(*w, 1);
            out.add_term(*u, *v, w - 1, c * factor);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        use num::traits::ToPrimitive;
        self.terms
            .values()
            .map(|c| c.to_f64().map(f64::abs).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

/// One block of the interlacing kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelBlock {
    pub p: i64,
    pub j_max: usize,
    pub data: KernelData,
}

impl KernelBlock {
    /// z̄₂ exponent of the leading term, as the offset from 2λ (the
    /// full exponent is 2λ + p).
    pub fn exponent_offset(&self) -> i64 {
        self.p
    }

    /// Series coefficient of (ζ z̄₁ / z̄₂)^j: 1/j!.
    pub fn series_coefficient(&self, j: usize) -> Rat {
        self.data.coefficient(j, j, self.p - j as i64)
    }
}

/// The kernel family over a block range, exact in λ.
pub fn kernel_blocks(
    lambda: &SpinParameter,
    p_min: i64,
    p_max: i64,
    j_max: usize,
) -> Result<Vec<KernelBlock>, InterlaceError> {
    if !lambda.is_general_position() {
        return Err(InterlaceError::Core(CoreError::NotGeneralPosition {
            lambda: lambda.value().to_string(),
        }));
    }
    let mut out = Vec::new();
    for p in p_min..=p_max {
        let mut data = KernelData::zero();
        let mut coeff = rat(1, 1);
        for j in 0..=j_max {
            if j > 0 {
                coeff /= rat(j as i64, 1);
            }
            data.add_term(j, j, p - j as i64, coeff.clone());
        }
        out.push(KernelBlock { p, j_max, data });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// shift property and kernel membership
// ---------------------------------------------------------------------------

/// Multiplication by z̄₂ maps block p exactly onto block p+1. Returns
/// the largest coefficient deviation across interior neighbors (0 when
/// exact, which it always is for a well-formed family).
pub fn kernel_shift_check(blocks: &[KernelBlock]) -> Result<f64, InterlaceError> {
    if blocks.len() < 3 {
        return Err(InterlaceError::WindowTooShort {
            needed: 3,
            got: blocks.len(),
        });
    }
    let mut worst = 0.0f64;
    for pair in blocks.windows(2) {
        let shifted = pair[0].data.zbar2_mult();
        let diff = shifted.sub(&pair[1].data);
        worst = worst.max(diff.max_abs());
    }
    Ok(worst)
}

/// Action of a polynomial f(z̄₂) on the kernel family: on interior
/// exponent classes the family reproduces itself scaled by f(1).
/// Returns the largest deviation from f(1)·K on checkable classes.
pub fn kernel_polynomial_action(
    blocks: &[KernelBlock],
    f_coeffs: &[Rat],
) -> Result<f64, InterlaceError> {
    if blocks.len() < 3 {
        return Err(InterlaceError::WindowTooShort {
            needed: 3,
            got: blocks.len(),
        });
    }
    let deg = f_coeffs.len().saturating_sub(1);
    let f_at_one: Rat = f_coeffs.iter().fold(rat(0, 1), |acc, c| acc + c);
    let by_p: BTreeMap<i64, &KernelBlock> = blocks.iter().map(|b| (b.p, b)).collect();
    let p_min = blocks.first().unwrap().p;
    let p_max = blocks.last().unwrap().p;
    let mut worst = 0.0f64;
    let mut checked = false;
    for q in p_min..=p_max {
        // need every source block q-k in the family
        if q - (deg as i64) < p_min {
            continue;
        }
        let mut acc = KernelData::zero();
        for (k, fk) in f_coeffs.iter().enumerate() {
            let source = match by_p.get(&(q - k as i64)) {
                Some(b) => b,
                None => continue,
            };
            let mut shifted = source.data.clone();
            for _ in 0..k {
                shifted = shifted.zbar2_mult();
            }
            acc = acc.add(&shifted.scale(fk));
        }
        let target = by_p[&q].data.scale(&f_at_one);
        worst = worst.max(acc.sub(&target).max_abs());
        checked = true;
    }
    if !checked {
        return Err(InterlaceError::WindowTooShort {
            needed: deg + 3,
            got: blocks.len(),
        });
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// transposes of the two-mode Weyl generators against the Gaussian
// ---------------------------------------------------------------------------

/// Generators of the two-mode Weyl algebra on the Fock side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylGenerator {
    /// Multiplication by z_α (α = 1, 2).
    MultZ(usize),
    /// Differentiation ∂/∂z_α.
    DiffZ(usize),
}

/// Kernel-side action obtained by moving the generator off the Fock
/// argument through the Gaussian pairing: z_α transposes to ∂/∂z̄_α and
/// ∂/∂z_α transposes to multiplication by z̄_α.
pub fn gauss_transpose(
    op: WeylGenerator,
    lambda: &SpinParameter,
    data: &KernelData,
) -> KernelData {
    match op {
        WeylGenerator::MultZ(1) => data.zbar1_diff(),
        WeylGenerator::MultZ(2) => data.zbar2_diff(lambda),
        WeylGenerator::DiffZ(1) => data.zbar1_mult(),
        WeylGenerator::DiffZ(2) => data.zbar2_mult(),
        _ => panic!("mode index must be 1 or 2"),
    }
}

// ---------------------------------------------------------------------------
// interlacing residuals
// ---------------------------------------------------------------------------

/// Generators whose interlacing identity is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterlaceGenerator {
    Phi1,
    Phi2,
    PhiBar1,
    PhiBar2,
    L3,
    LPlus,
    LMinus,
}

impl InterlaceGenerator {
    pub const ALL: [InterlaceGenerator; 7] = [
        InterlaceGenerator::Phi1,
        InterlaceGenerator::Phi2,
        InterlaceGenerator::PhiBar1,
        InterlaceGenerator::PhiBar2,
        InterlaceGenerator::L3,
        InterlaceGenerator::LPlus,
        InterlaceGenerator::LMinus,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            InterlaceGenerator::Phi1 => "phi1",
            InterlaceGenerator::Phi2 => "phi2",
            InterlaceGenerator::PhiBar1 => "phibar1",
            InterlaceGenerator::PhiBar2 => "phibar2",
            InterlaceGenerator::L3 => "l3",
            InterlaceGenerator::LPlus => "lplus",
            InterlaceGenerator::LMinus => "lminus",
        }
    }

    fn block_shift(&self) -> i64 {
        match self {
            InterlaceGenerator::Phi1 | InterlaceGenerator::Phi2 => -1,
            InterlaceGenerator::PhiBar1 | InterlaceGenerator::PhiBar2 => 1,
            _ => 0,
        }
    }

    /// ζ-side action on the kernel data of block p.
    fn zeta_side(&self, lambda: &SpinParameter, p: i64, data: &KernelData) -> KernelData {
        let two_lambda = lambda.two_lambda();
        match self {
            InterlaceGenerator::Phi1 => data.zeta_diff(),
            InterlaceGenerator::Phi2 => data.clone(),
            InterlaceGenerator::PhiBar1 => data.zeta_mult(),
            InterlaceGenerator::PhiBar2 => {
                // -ζ d/dζ + 2λ + p + 1 on block p
                let scalar = &two_lambda + rat(p + 1, 1);
                data.zeta_diff()
                    .zeta_mult()
                    .scale(&rat(-1, 1))
                    .add(&data.scale(&scalar))
            }
            InterlaceGenerator::L3 => {
                // ζ d/dζ - (λ + p/2)
                let spin = lambda.block_spin(p);
                data.zeta_diff().zeta_mult().sub(&data.scale(&spin))
            }
            InterlaceGenerator::LPlus => data.zeta_mult(),
            InterlaceGenerator::LMinus => {
                // -ζ d²/dζ² + 2(λ + p/2) d/dζ
                let two_spin = &two_lambda + rat(p, 1);
                data.zeta_diff()
                    .zeta_diff()
                    .zeta_mult()
                    .scale(&rat(-1, 1))
                    .add(&data.zeta_diff().scale(&two_spin))
            }
        }
    }

    /// z-side transposed action on the kernel data (block q).
    fn z_side(&self, lambda: &SpinParameter, data: &KernelData) -> KernelData {
        match self {
            // a¹₁ is ∂/∂z₁ on the Fock side
            InterlaceGenerator::Phi1 => gauss_transpose(WeylGenerator::DiffZ(1), lambda, data),
            // a¹₂ is ∂/∂z₂
            InterlaceGenerator::Phi2 => gauss_transpose(WeylGenerator::DiffZ(2), lambda, data),
            // a²₁ is z₁
            InterlaceGenerator::PhiBar1 => gauss_transpose(WeylGenerator::MultZ(1), lambda, data),
            // a²₂ is z₂
            InterlaceGenerator::PhiBar2 => gauss_transpose(WeylGenerator::MultZ(2), lambda, data),
            // (z₁∂₁ - z₂∂₂)/2 transposes to (z̄₁∂̄₁ - z̄₂∂̄₂)/2
            InterlaceGenerator::L3 => {
                let t1 = data.zbar1_diff().zbar1_mult();
                let t2 = data.zbar2_diff(lambda).zbar2_mult();
                t1.sub(&t2).scale(&rat(1, 2))
            }
            // z₁∂₂ transposes to z̄₂ ∂̄₁ applied as ∂̄₁ then ·z̄₂
            InterlaceGenerator::LPlus => data.zbar1_diff().zbar2_mult(),
            // z₂∂₁ transposes to z̄₁ ∂̄₂
            InterlaceGenerator::LMinus => data.zbar2_diff(lambda).zbar1_mult(),
        }
    }
}

/// Residual of the interlacing identity for one generator across the
/// interior of the block family: the ζ-side action of the generator on
/// block q-d must equal the transposed z-side action on block q,
/// comparing series orders ≤ j_max - 2.
pub fn interlace_residual(
    lambda: &SpinParameter,
    generator: InterlaceGenerator,
    blocks: &[KernelBlock],
) -> Result<f64, InterlaceError> {
    if blocks.len() < 3 {
        return Err(InterlaceError::WindowTooShort {
            needed: 3,
            got: blocks.len(),
        });
    }
    let j_max = blocks[0].j_max;
    if j_max < 4 {
        return Err(InterlaceError::InsufficientSeries {
            j_max,
            needed: 4,
        });
    }
    let cutoff = j_max - 2;
    let by_p: BTreeMap<i64, &KernelBlock> = blocks.iter().map(|b| (b.p, b)).collect();
    let d = generator.block_shift();
    let mut worst = 0.0f64;
    let mut checked = false;
    for block in blocks {
        let q = block.p;
        let source_p = q - d;
        let source = match by_p.get(&source_p) {
            Some(b) => b,
            None => continue,
        };
        let lhs = generator.zeta_side(lambda, source_p, &source.data).truncated(cutoff);
        let rhs = generator.z_side(lambda, &block.data).truncated(cutoff);
        worst = worst.max(lhs.sub(&rhs).max_abs());
        checked = true;
    }
    if !checked {
        return Err(InterlaceError::WindowTooShort {
            needed: 3,
            got: blocks.len(),
        });
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// the two units
// ---------------------------------------------------------------------------

/// The block identity and the displaced unit a¹₂ on a graded window.
#[derive(Clone, Debug)]
pub struct UnitPair<S: Scalar> {
    pub window: TruncationWindow,
    pub block_identity: ShiftOperator<S>,
    pub shift_unit: ShiftOperator<S>,
}

/// Spinor-mixing constants of [L_i, a¹_α] = Σ_β c_{iαβ} a¹_β, fixed by
/// brute force: c = -(1/2)·σ_i entries (with σ_± carrying the factor 2
/// from σ₁ ± iσ₂).
pub fn spinor_mixing_constant(which: usize, alpha: usize, beta: usize) -> Rat {
    // which: 0 = L3, 1 = L+, 2 = L-
    match (which, alpha, beta) {
        (0, 1, 1) => rat(-1, 2),
        (0, 2, 2) => rat(1, 2),
        (1, 1, 2) => rat(-1, 1),
        (2, 2, 1) => rat(-1, 1),
        _ => rat(0, 1),
    }
}

/// Outcome of the two-units comparison.
#[derive(Clone, Debug)]
pub struct TwoUnitsReport {
    /// Entrywise the displaced unit equals the identity after
    /// reindexing blocks by one step.
    pub structurally_equal: bool,
    /// Largest residual of [L_i, identity] (must be exactly 0).
    pub identity_commutant_residual: f64,
    /// Largest residual of [L_i, a¹_α] against the frozen spinor-mixing
    /// constants (must be exactly 0).
    pub mixing_residual: f64,
    /// The mixing is genuinely nonzero (the two units transform
    /// differently).
    pub mixing_nonzero: bool,
}

pub fn two_units_check<S: Scalar>(
    lambda: &SpinParameter,
    window: TruncationWindow,
) -> Result<TwoUnitsReport, InterlaceError> {
    if window.block_count() < 3 {
        return Err(InterlaceError::WindowTooShort {
            needed: 3,
            got: window.block_count(),
        });
    }
    let pair: DecycledPair<S> = phi_phibar(lambda, window)?;
    let block_identity = ShiftOperator::identity(window);
    let shift_unit = pair.phi[1].clone();

    // (i) structural equality after reindexing: every column with a
    // block below it maps by coefficient one to the shifted row, and
    // there are no other entries.
    let mut structurally_equal = true;
    let mut expected = 0usize;
    for col in window.indices() {
        if col.p - 1 >= window.p_min() {
            expected += 1;
            let row = crate::core::window::GradedIndex::new(col.p - 1, col.m);
            if shift_unit.entry(row, col) != S::one() {
                structurally_equal = false;
            }
            if block_identity.entry(col, col) != S::one() {
                structurally_equal = false;
            }
        }
    }
    if shift_unit.nnz() != expected {
        structurally_equal = false;
    }

    // (ii)/(iii) commutators with the graded su(2) operators
    let l_ops = su2_graded::<S>(lambda, window)?;
    let sub = window.interior().ok_or(CoreError::EmptyInterior {
        p_margin: 1,
        m_margin: 2,
    })?;
    let mut identity_commutant_residual = 0.0f64;
    let mut mixing_residual = 0.0f64;
    let mut mixing_nonzero = false;
    for (which, l) in l_ops.iter().enumerate() {
        let with_id = crate::core::commutator(l, &block_identity)?;
        identity_commutant_residual =
            identity_commutant_residual.max(with_id.max_abs_on(&sub));
        for alpha in 1..=2usize {
            let got = crate::core::commutator(l, &pair.phi[alpha - 1])?;
            let mut want = ShiftOperator::zero(window, -1);
            for beta in 1..=2usize {
                let c = spinor_mixing_constant(which, alpha, beta);
                if c != rat(0, 1) {
                    want = want.add(&pair.phi[beta - 1].scale(&S::from_rat(&c)))?;
                }
            }
            if !want.is_zero_on(&sub) {
                mixing_nonzero = true;
            }
            mixing_residual =
                mixing_residual.max(crate::core::residual_on(&got, &want, &sub));
        }
    }
    Ok(TwoUnitsReport {
        structurally_equal,
        identity_commutant_residual,
        mixing_residual,
        mixing_nonzero,
    })
}

// ---------------------------------------------------------------------------
// extended Fock space with the additional variable
// ---------------------------------------------------------------------------

/// The extended space: two Fock modes (axes 0, 1) tensored with the
/// additional variable z (axis 2) that the symmetry treats as a scalar.
#[derive(Clone, Debug)]
pub struct ExtendedFock<S: Scalar> {
    pub space: MonomialSpace<3>,
    /// a¹_α = ∂/∂z_α on the Fock factor only.
    pub lowering: [BoxOp<S, 3>; 2],
    /// a²_α = z_α on the Fock factor only.
    pub raising: [BoxOp<S, 3>; 2],
    /// su(2) operators (L3, L+, L-), trivial on the z axis.
    pub l: [BoxOp<S, 3>; 3],
    /// L0 counting only the Fock factor (the symmetry-scalar reading).
    pub l0_scalar: BoxOp<S, 3>,
    /// L0 counting z like a second-mode variable (the phase reading).
    pub l0_phase: BoxOp<S, 3>,
    /// Γ0 = l0_phase + 1/2.
    pub gamma0: BoxOp<S, 3>,
    /// Formal partner ∂/∂z of the additional variable.
    pub partner_diff: BoxOp<S, 3>,
}

pub fn extended_fock_space<S: Scalar>(
    m1_max: usize,
    m2_max: usize,
    k_max: usize,
) -> ExtendedFock<S> {
    assert!(m1_max >= 2 && m2_max >= 2 && k_max >= 2);
    let space = MonomialSpace::new([m1_max, m2_max, k_max]);
    let lowering = [BoxOp::diff(space, 0), BoxOp::diff(space, 1)];
    let raising = [BoxOp::mult(space, 0), BoxOp::mult(space, 1)];
    let l3 = BoxOp::from_action(space, |e| {
        let v = rat(e[0] as i64 - e[1] as i64, 2);
        vec![(e, S::from_rat(&v))]
    });
    let lplus = BoxOp::from_action(space, |e| {
        if e[1] == 0 {
            return vec![];
        }
        vec![([e[0] + 1, e[1] - 1, e[2]], S::from_int(e[1] as i64))]
    });
    let lminus = BoxOp::from_action(space, |e| {
        if e[0] == 0 {
            return vec![];
        }
        vec![([e[0] - 1, e[1] + 1, e[2]], S::from_int(e[0] as i64))]
    });
    let l0_scalar = BoxOp::from_action(space, |e| {
        let v = rat(e[0] as i64 + e[1] as i64, 2);
        vec![(e, S::from_rat(&v))]
    });
    let l0_phase = BoxOp::from_action(space, |e| {
        let v = rat(e[0] as i64 + e[1] as i64 + e[2] as i64, 2);
        vec![(e, S::from_rat(&v))]
    });
    let gamma0 = l0_phase
        .add(&BoxOp::scalar(space, S::from_rat(&rat(1, 2))))
        .unwrap();
    let partner_diff = BoxOp::diff(space, 2);
    ExtendedFock {
        space,
        lowering,
        raising,
        l: [l3, lplus, lminus],
        l0_scalar,
        l0_phase,
        gamma0,
        partner_diff,
    }
}

/// Outcome of the phase-splitting checks on the extended space.
#[derive(Clone, Debug)]
pub struct PhaseSplitReport {
    /// L0 (scalar reading) annihilates every pure z^k vector.
    pub scalar_l0_kills_z: bool,
    /// L0 (phase reading) gives z exactly the weight 1/2.
    pub phase_l0_half_on_z: bool,
    /// Γ0 z = 1·z through Γ0 = L0(phase) + 1/2.
    pub gamma0_one_on_z: bool,
    /// L² = L0(scalar)(L0(scalar)+1) on pure z vectors (both sides 0).
    pub casimir_bookkeeping_residual: f64,
}

pub fn phase_split_check<S: Scalar>(ext: &ExtendedFock<S>) -> PhaseSplitReport {
    let k_max = ext.space.caps()[2];
    let mut scalar_ok = true;
    let mut phase_ok = true;
    let mut gamma_ok = true;
    for k in 0..=k_max {
        let e = [0usize, 0, k];
        let img_scalar = ext.l0_scalar.apply_basis(e);
        if !img_scalar.is_empty() {
            scalar_ok = false;
        }
        let img_phase = ext.l0_phase.apply_basis(e);
        let want = S::from_rat(&rat(k as i64, 2));
        if k == 0 {
            if !img_phase.is_empty() {
                phase_ok = false;
            }
        } else if img_phase != vec![(e, want)] {
            phase_ok = false;
        }
        let img_gamma = ext.gamma0.apply_basis(e);
        let want_g = S::from_rat(&(rat(k as i64, 2) + rat(1, 2)));
        if img_gamma != vec![(e, want_g)] {
            gamma_ok = false;
        }
    }
    // Casimir bookkeeping on pure z vectors: L² and L0(L0+1) both 0
    let half = S::from_rat(&rat(1, 2));
    let l3sq = ext.l[0].mul(&ext.l[0]).unwrap();
    let anti = ext.l[1]
        .mul(&ext.l[2])
        .unwrap()
        .add(&ext.l[2].mul(&ext.l[1]).unwrap())
        .unwrap();
    let l_sq = l3sq.add(&anti.scale(&half)).unwrap();
    let rhs = ext
        .l0_scalar
        .mul(
            &ext.l0_scalar
                .add(&BoxOp::identity(ext.space))
                .unwrap(),
        )
        .unwrap();
    let diff = l_sq.sub(&rhs).unwrap();
    let mut residual = 0.0f64;
    for k in 0..=k_max {
        for (_, v) in diff.apply_basis([0, 0, k]) {
            residual = residual.max(v.abs());
        }
    }
    PhaseSplitReport {
        scalar_l0_kills_z: scalar_ok,
        phase_l0_half_on_z: phase_ok,
        gamma0_one_on_z: gamma_ok,
        casimir_bookkeeping_residual: residual,
    }
}
