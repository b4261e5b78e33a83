//! Ladder operators: standard Fock ladders, the decycled raising family
//! b on the z-chain, the block-lowering/raising pair (φ, φ̄) on the
//! graded ζ-space, and the non-Fock two-mode realization they generate.
//!
//! Monomial-convention coefficients here are exact; the normalized
//! sqrt-coefficients arise from `core::basis::cartan_weyl_matrix`.

use std::collections::BTreeMap;

use crate::core::operator::{BoxOp, MonomialSpace, ShiftOperator};
use crate::core::window::{GradedIndex, TruncationWindow};
use crate::error::OscillatorError;
use crate::scalar::{rat, Rat, Scalar, SpinParameter};

/// Standard Fock ladders on one or two modes of monomials.
///
/// `lowering[k]` is differentiation in mode k (kills the constant),
/// `raising[k]` is multiplication by the mode-k variable.
#[derive(Clone, Debug)]
pub enum FockLadderSet<S: Scalar> {
    OneMode {
        space: MonomialSpace<1>,
        lowering: BoxOp<S, 1>,
        raising: BoxOp<S, 1>,
    },
    TwoMode {
        space: MonomialSpace<2>,
        lowering: [BoxOp<S, 2>; 2],
        raising: [BoxOp<S, 2>; 2],
    },
}

/// Build the Fock ladders for 1 or 2 modes with per-mode degree cap.
pub fn fock_ladders<S: Scalar>(n_modes: usize, m_max: usize) -> FockLadderSet<S> {
    assert!(
        (1..=2).contains(&n_modes),
        "only one- and two-mode ladders are modeled"
    );
    assert!(m_max >= 2);
    match n_modes {
        1 => {
            let space = MonomialSpace::new([m_max]);
            FockLadderSet::OneMode {
                space,
                lowering: BoxOp::diff(space, 0),
                raising: BoxOp::mult(space, 0),
            }
        }
        _ => {
            let space = MonomialSpace::new([m_max, m_max]);
            FockLadderSet::TwoMode {
                space,
                lowering: [BoxOp::diff(space, 0), BoxOp::diff(space, 1)],
                raising: [BoxOp::mult(space, 0), BoxOp::mult(space, 1)],
            }
        }
    }
}

impl<S: Scalar> FockLadderSet<S> {
    /// Occupation-number spectrum of the given mode: {0, 1, ..., m_max}.
    pub fn number_spectrum(&self, _mode: usize) -> Vec<Rat> {
        let m_max = match self {
            FockLadderSet::OneMode { space, .. } => space.caps()[0],
            FockLadderSet::TwoMode { space, .. } => space.caps()[0],
        };
        (0..=m_max as i64).map(|m| rat(m, 1)).collect()
    }
}

/// The block-lowering spinor φ and block-raising family φ̄ on a graded
/// window, monomial convention:
///
/// φ¹ = d/dζ, φ² = 1 (both lower the block index);
/// φ̄₁ = ζ, φ̄₂ = -ζ d/dζ + 2λ + p + 1 (both raise it).
#[derive(Clone, Debug)]
pub struct DecycledPair<S: Scalar> {
    pub lambda: SpinParameter,
    pub window: TruncationWindow,
    /// φ components indexed 0,1 for α = 1,2.
    pub phi: [ShiftOperator<S>; 2],
    /// φ̄ components indexed 0,1 for α = 1,2.
    pub phi_bar: [ShiftOperator<S>; 2],
}

/// Build the decycled pair. λ must be in general position.
pub fn phi_phibar<S: Scalar>(
    lambda: &SpinParameter,
    window: TruncationWindow,
) -> Result<DecycledPair<S>, crate::error::CoreError> {
    let two_lambda = lambda.two_lambda();
    let phi1 = ShiftOperator::from_action(window, -1, |c| {
        if c.m == 0 {
            vec![]
        } else {
            vec![(
                GradedIndex::new(c.p - 1, c.m - 1),
                S::from_int(c.m as i64),
            )]
        }
    })?;
    let phi2 = ShiftOperator::from_action(window, -1, |c| {
        vec![(GradedIndex::new(c.p - 1, c.m), S::one())]
    })?;
    let phibar1 = ShiftOperator::from_action(window, 1, |c| {
        vec![(GradedIndex::new(c.p + 1, c.m + 1), S::one())]
    })?;
    let phibar2 = ShiftOperator::from_action(window, 1, |c| {
        let coeff = &two_lambda + rat(c.p + 1 - c.m as i64, 1);
        vec![(GradedIndex::new(c.p + 1, c.m), S::from_rat(&coeff))]
    })?;
    Ok(DecycledPair {
        lambda: lambda.clone(),
        window,
        phi: [phi1, phi2],
        phi_bar: [phibar1, phibar2],
    })
}

/// The two-mode non-Fock realization: a¹_α = φ^α, a²_α = φ̄_α.
#[derive(Clone, Debug)]
pub struct NonFockH4<S: Scalar> {
    pub lambda: SpinParameter,
    pub window: TruncationWindow,
    pair: DecycledPair<S>,
}

/// Build the graded non-Fock two-mode realization.
pub fn nonfock_h4<S: Scalar>(
    lambda: &SpinParameter,
    window: TruncationWindow,
) -> Result<NonFockH4<S>, crate::error::CoreError> {
    Ok(NonFockH4 {
        lambda: lambda.clone(),
        window,
        pair: phi_phibar(lambda, window)?,
    })
}

impl<S: Scalar> NonFockH4<S> {
    /// a^a_α with a ∈ {1,2} (lower/raise block) and α ∈ {1,2}.
    pub fn op(&self, a: usize, alpha: usize) -> &ShiftOperator<S> {
        match a {
            1 => &self.pair.phi[alpha - 1],
            2 => &self.pair.phi_bar[alpha - 1],
            _ => panic!("component index must be 1 or 2"),
        }
    }

    pub fn pair(&self) -> &DecycledPair<S> {
        &self.pair
    }

    /// Weight μ = 2λ + p - m of the basis vector at (p, m).
    pub fn weight(&self, idx: GradedIndex) -> Rat {
        self.lambda.two_lambda() + rat(idx.p - idx.m as i64, 1)
    }

    /// Occupation-number spectrum of the chosen mode across the window.
    ///
    /// Mode 1 is the standard oscillator, spectrum {0..m_max} per block;
    /// mode 2 is the block-number operator with μ = 2λ + p - m, which
    /// keeps reaching further below zero as p_min decreases.
    pub fn number_spectrum(&self, mode: usize) -> Vec<Rat> {
        let mut vals: Vec<Rat> = match mode {
            1 => self
                .window
                .indices()
                .into_iter()
                .map(|idx| rat(idx.m as i64, 1))
                .collect(),
            2 => self
                .window
                .indices()
                .into_iter()
                .map(|idx| self.weight(idx))
                .collect(),
            _ => panic!("mode must be 1 or 2"),
        };
        vals.sort();
        vals
    }

    /// Spectrum of L0 = (1/2) Σ_α a²_α a¹_α: the block spin λ + p/2,
    /// once per basis vector of the block.
    pub fn l0_spectrum(&self) -> Vec<Rat> {
        let mut vals: Vec<Rat> = self
            .window
            .indices()
            .into_iter()
            .map(|idx| self.lambda.block_spin(idx.p))
            .collect();
        vals.sort();
        vals
    }
}

/// Laurent polynomial in the chain variable z, exact coefficients.
pub type LaurentPoly = BTreeMap<i64, Rat>;

/// Monomial z^k.
pub fn laurent_monomial(k: i64) -> LaurentPoly {
    let mut p = LaurentPoly::new();
    p.insert(k, rat(1, 1));
    p
}

fn laurent_scale(p: &LaurentPoly, s: &Rat) -> LaurentPoly {
    p.iter()
        .map(|(k, v)| (*k, v * s))
        .filter(|(_, v)| *v != rat(0, 1))
        .collect()
}

fn laurent_add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = a.clone();
    for (k, v) in b {
        let cell = out.entry(*k).or_insert_with(|| rat(0, 1));
        *cell += v;
    }
    out.retain(|_, v| *v != rat(0, 1));
    out
}

pub fn laurent_sub(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    laurent_add(a, &laurent_scale(b, &rat(-1, 1)))
}

fn laurent_shift(p: &LaurentPoly, by: i64) -> LaurentPoly {
    p.iter().map(|(k, v)| (k + by, v.clone())).collect()
}

fn laurent_diff(p: &LaurentPoly) -> LaurentPoly {
    p.iter()
        .filter(|(k, _)| **k != 0)
        .map(|(k, v)| (k - 1, v * rat(*k, 1)))
        .collect()
}

fn parity_of(k: i64) -> u8 {
    (k.rem_euclid(2)) as u8
}

fn check_parity(p: i64, input: &LaurentPoly) -> Result<(), OscillatorError> {
    let expected = parity_of(p);
    for k in input.keys() {
        if parity_of(*k) != expected {
            return Err(OscillatorError::ParityMismatch {
                p,
                expected,
                found: parity_of(*k),
            });
        }
    }
    Ok(())
}

/// The spin-raising family on the z-chain:
/// b^(p)_1 = z/2, b^(p)_2 = (-d/dz + 2p/z)/2, acting on the parity-p
/// block and landing in the parity of p+1.
///
/// These operators live in the division ring over the algebra (the 1/z
/// term), so inputs and outputs are Laurent polynomials.
pub fn b_apply(
    alpha: usize,
    p: i64,
    input: &LaurentPoly,
) -> Result<LaurentPoly, OscillatorError> {
    check_parity(p, input)?;
    let out = match alpha {
        1 => laurent_scale(&laurent_shift(input, 1), &rat(1, 2)),
        2 => {
            let minus_diff = laurent_scale(&laurent_diff(input), &rat(-1, 1));
            let over_z = laurent_scale(&laurent_shift(input, -1), &rat(2 * p, 1));
            laurent_scale(&laurent_add(&minus_diff, &over_z), &rat(1, 2))
        }
        _ => panic!("alpha must be 1 or 2"),
    };
    Ok(out)
}

/// Same family through the conjugation route
/// b^(p)_α = (1/2) z^{2p} a^β z^{-2p} ε_{βα}
/// with ε_{12} = -1, ε_{21} = +1 (inverse of the bracket symbol).
pub fn b_via_conjugation(
    alpha: usize,
    p: i64,
    input: &LaurentPoly,
) -> Result<LaurentPoly, OscillatorError> {
    check_parity(p, input)?;
    let conj = |beta: usize, f: &LaurentPoly| -> LaurentPoly {
        let shifted = laurent_shift(f, -2 * p);
        let acted = match beta {
            1 => laurent_diff(&shifted),
            _ => laurent_shift(&shifted, 1),
        };
        laurent_shift(&acted, 2 * p)
    };
    // ε_lower columns: α=1 picks β=2 with +1; α=2 picks β=1 with -1
    let out = match alpha {
        1 => conj(2, input),
        2 => laurent_scale(&conj(1, input), &rat(-1, 1)),
        _ => panic!("alpha must be 1 or 2"),
    };
    Ok(laurent_scale(&out, &rat(1, 2)))
}

/// The exact constant on the right of the decycled bracket
/// b^(p+1)_α b^(p)_{α'} - b^(p+1)_{α'} b^(p)_α = c_{αα'} · id,
/// brute-forced once: `c = (1/4)·[[0,-1],[1,0]]`.
pub fn decycled_bracket_constant(alpha: usize, alpha_prime: usize) -> Rat {
    match (alpha, alpha_prime) {
        (1, 2) => rat(-1, 4),
        (2, 1) => rat(1, 4),
        _ => rat(0, 1),
    }
}

/// Left side of the decycled bracket applied to an input in block p.
pub fn decycled_bracket(
    alpha: usize,
    alpha_prime: usize,
    p: i64,
    input: &LaurentPoly,
) -> Result<LaurentPoly, OscillatorError> {
    let first = b_apply(alpha, p + 1, &b_apply(alpha_prime, p, input)?)?;
    let second = b_apply(alpha_prime, p + 1, &b_apply(alpha, p, input)?)?;
    Ok(laurent_sub(&first, &second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::residual::{interior_residual, residual_on};
    use crate::scalar::CRat;

    fn lam(n: i64, d: i64) -> SpinParameter {
        SpinParameter::general(rat(n, d)).unwrap()
    }

    #[test]
    fn lowering_kills_ground_state() {
        let set = fock_ladders::<CRat>(1, 4);
        if let FockLadderSet::OneMode { lowering, .. } = &set {
            assert!(lowering.apply_basis([0]).is_empty());
        } else {
            panic!();
        }
    }

    #[test]
    fn raising_is_plain_multiplication() {
        let set = fock_ladders::<CRat>(1, 4);
        if let FockLadderSet::OneMode { raising, .. } = &set {
            let img = raising.apply_basis([2]);
            assert_eq!(img, vec![([3], CRat::one())]);
        } else {
            panic!();
        }
    }

    #[test]
    fn fock_number_spectrum_is_naturals_up_to_cap() {
        let set = fock_ladders::<CRat>(1, 3);
        let spec = set.number_spectrum(1);
        assert_eq!(spec, vec![rat(0, 1), rat(1, 1), rat(2, 1), rat(3, 1)]);
    }

    #[test]
    fn phi2_is_unit_block_shift() {
        let w = TruncationWindow::new(-2, 2, 4).unwrap();
        let pair = phi_phibar::<CRat>(&lam(-3, 10), w).unwrap();
        let e = pair.phi[1].entry(GradedIndex::new(0, 3), GradedIndex::new(1, 3));
        assert_eq!(e, CRat::one());
    }

    #[test]
    fn phibar2_eigen_coefficient() {
        // φ̄₂ ζ^n in block p: (2λ + p + 1 - n) ζ^n in block p+1
        let w = TruncationWindow::new(-2, 2, 4).unwrap();
        let lambda = lam(-3, 10);
        let pair = phi_phibar::<CRat>(&lambda, w).unwrap();
        let got = pair.phi_bar[1].entry(GradedIndex::new(1, 2), GradedIndex::new(0, 2));
        let want = CRat::from_rat(&(lambda.two_lambda() + rat(0 + 1 - 2, 1)));
        assert_eq!(got, want);
    }

    #[test]
    fn mixed_bracket_is_kronecker_delta_on_interior() {
        // φ^α φ̄_{α'} - φ̄_{α'} φ^α = δ^α_{α'}, exactly, rational mode
        let w = TruncationWindow::new(-3, 3, 8).unwrap();
        let pair = phi_phibar::<CRat>(&lam(-3, 10), w).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let comm = crate::core::commutator(&pair.phi[a], &pair.phi_bar[b]).unwrap();
                let target = if a == b {
                    ShiftOperator::identity(w)
                } else {
                    ShiftOperator::zero(w, 0)
                };
                assert_eq!(
                    interior_residual(&comm, &target, &w).unwrap(),
                    0.0,
                    "bracket ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn phi_components_commute_and_phibar_components_commute() {
        let w = TruncationWindow::new(-3, 3, 8).unwrap();
        let pair = phi_phibar::<CRat>(&lam(-1, 4), w).unwrap();
        let z1 = crate::core::commutator(&pair.phi[0], &pair.phi[1]).unwrap();
        let z2 = crate::core::commutator(&pair.phi_bar[0], &pair.phi_bar[1]).unwrap();
        let zero_m2 = ShiftOperator::zero(w, -2);
        let zero_p2 = ShiftOperator::zero(w, 2);
        assert_eq!(interior_residual(&z1, &zero_m2, &w).unwrap(), 0.0);
        assert_eq!(interior_residual(&z2, &zero_p2, &w).unwrap(), 0.0);
    }

    #[test]
    fn two_mode_bracket_table_on_interior() {
        // [a^a_α, a^{a'}_{α'}] = δ_{αα'} ε^{aa'}, ε^{12} = +1
        let w = TruncationWindow::new(-3, 3, 8).unwrap();
        let rep = nonfock_h4::<CRat>(&lam(-3, 10), w).unwrap();
        for a in 1..=2usize {
            for ap in 1..=2usize {
                for al in 1..=2usize {
                    for alp in 1..=2usize {
                        let comm =
                            crate::core::commutator(rep.op(a, al), rep.op(ap, alp)).unwrap();
                        let eps = match (a, ap) {
                            (1, 2) => 1,
                            (2, 1) => -1,
                            _ => 0,
                        };
                        let target = if al == alp && eps != 0 {
                            ShiftOperator::scalar(w, CRat::from_int(eps))
                        } else {
                            ShiftOperator::zero(w, (a as i64 - 2) + (ap as i64 - 2) + 2)
                        };
                        let sub = w.interior().unwrap();
                        assert_eq!(residual_on(&comm, &target, &sub), 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn mode_two_spectrum_reaches_negative_weights() {
        let w = TruncationWindow::new(-2, 2, 2).unwrap();
        let rep = nonfock_h4::<CRat>(&lam(-1, 4), w).unwrap();
        let spec = rep.number_spectrum(2);
        // 2λ + p - m at λ=-1/4, p=-2, m=2: -9/2
        assert!(spec.contains(&rat(-9, 2)));
        assert_eq!(spec.first().unwrap(), &rat(-9, 2));
    }

    #[test]
    fn spectrum_minimum_strictly_decreases_with_window_growth() {
        let lambda = lam(-1, 4);
        let mut last_min: Option<Rat> = None;
        for growth in 0..4i64 {
            let w = TruncationWindow::new(-2 - growth, 2, 6).unwrap();
            let rep = nonfock_h4::<CRat>(&lambda, w).unwrap();
            let min = rep.number_spectrum(2).first().unwrap().clone();
            if let Some(prev) = &last_min {
                assert!(min < *prev);
            }
            last_min = Some(min);
        }
    }

    #[test]
    fn l0_spectrum_is_block_spins() {
        let w = TruncationWindow::new(-1, 1, 2).unwrap();
        let rep = nonfock_h4::<CRat>(&lam(-1, 4), w).unwrap();
        let spec = rep.l0_spectrum();
        for p in -1..=1i64 {
            assert!(spec.contains(&(rat(-1, 4) + rat(p, 2))));
        }
    }

    #[test]
    fn b_family_matches_direct_differentiation() {
        // b^(p)_2 z^{2m} = (p - m) z^{2m-1}
        for p in -3..=3i64 {
            for m in 0..5i64 {
                let input = laurent_monomial(2 * m);
                let shifted_p = 2 * p; // host on an even block: use block index 2p? no: block p hosts parity p
                let _ = shifted_p;
                let out = b_apply(2, p, &input);
                // parity check: 2m is even, so p must be even here
                if p % 2 != 0 {
                    assert!(out.is_err());
                    continue;
                }
                let out = out.unwrap();
                let want = laurent_scale(&laurent_monomial(2 * m - 1), &rat(p - m, 1));
                assert_eq!(out, want);
            }
        }
    }

    #[test]
    fn b_conjugation_identity_exact() {
        for p in -4..=4i64 {
            for k in 0..=8i64 {
                if parity_of(k) != parity_of(p) {
                    continue;
                }
                let input = laurent_monomial(k);
                for alpha in 1..=2usize {
                    let direct = b_apply(alpha, p, &input).unwrap();
                    let conj = b_via_conjugation(alpha, p, &input).unwrap();
                    assert_eq!(direct, conj, "alpha={alpha}, p={p}, k={k}");
                }
            }
        }
    }

    #[test]
    fn b_degenerates_to_half_eps_contraction_at_p_zero() {
        // b^(0)_α = (1/2) a^β ε_{βα}: α=1 gives z/2, α=2 gives -d/dz / 2
        let input = laurent_monomial(4);
        let b1 = b_apply(1, 0, &input).unwrap();
        assert_eq!(b1, laurent_scale(&laurent_monomial(5), &rat(1, 2)));
        let b2 = b_apply(2, 0, &input).unwrap();
        assert_eq!(b2, laurent_scale(&laurent_monomial(3), &rat(-2, 1)));
    }

    #[test]
    fn statement_two_bracket_equals_frozen_constant() {
        for p in -3..=3i64 {
            for k in 0..=6i64 {
                if parity_of(k) != parity_of(p) {
                    continue;
                }
                let input = laurent_monomial(k);
                for (al, alp) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                    let got = decycled_bracket(al, alp, p, &input).unwrap();
                    let want =
                        laurent_scale(&input, &decycled_bracket_constant(al, alp));
                    assert_eq!(got, want, "alpha=({al},{alp}), p={p}, k={k}");
                }
            }
        }
    }

    #[test]
    fn odd_input_rejected_on_even_block() {
        let input = laurent_monomial(3);
        assert!(matches!(
            b_apply(1, 0, &input),
            Err(OscillatorError::ParityMismatch { .. })
        ));
    }
}
