//! Acceptance gate: every headline property of the workbench, each at
//! its pinned tolerance, printed one line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion report.

use std::collections::BTreeSet;

use heisenrep::core::{
    cartan_weyl_matrix, cartan_weyl_valid, commutator, interior_residual_with_margins,
    residual_on, BoxOp, GradedIndex, MonomialSpace, ShiftOperator, TruncationWindow,
};
use heisenrep::forms::{
    normalized_block_vector, radial_moment, radial_moment_closed_form, semispinor_form,
    QuadratureSpec,
};
use heisenrep::h8::{
    bilinear_algebra, conjugation_contract_residual, dirac_set, f0_structure_checks,
    h8_phi_rep, laurent_oneway_check, momentum_hermiticity_residual, momentum_ops,
    u11_restriction, U11,
};
use heisenrep::interlace::{
    interlace_residual, kernel_blocks, kernel_polynomial_action, kernel_shift_check,
    two_units_check, InterlaceGenerator,
};
use heisenrep::oscillators::nonfock_h4;
use heisenrep::scalar::{rat_to_f64, Scalar};
use heisenrep::suites::{emit_report, run_suites, ReportFormat, SuiteConfig, SuiteId};
use heisenrep::symmetry::{
    borel_upper_action, exp_lminus, factorwise_action_on_exp, fock_su2, gauss_factorize,
    group_action_on_exp, h2_semispinor_split, laguerre_closed_form, series_residual,
    sp2r_generators_fock, sp2r_generators_graded, su2_semispinor, ExpDatum, GroupElement,
};
use heisenrep::{rat, C64, CRat, Rat, SpinParameter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Gate {
    lines: Vec<(String, bool)>,
}

impl Gate {
    fn new() -> Self {
        Gate { lines: Vec::new() }
    }

    fn record(&mut self, id: &str, pass: bool, detail: String) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("criterion {id}: {verdict} — {detail}");
        self.lines.push((format!("criterion {id}"), pass));
    }

    fn finish(self) {
        let failed: Vec<String> = self
            .lines
            .iter()
            .filter(|(_, p)| !p)
            .map(|(n, _)| n.clone())
            .collect();
        assert!(failed.is_empty(), "failed criteria: {failed:?}");
    }
}

fn spin(n: i64, d: i64) -> SpinParameter {
    SpinParameter::general(rat(n, d)).unwrap()
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate::new();

    criterion_01_exact_decycled_relations(&mut gate);
    criterion_02_parity_casimir(&mut gate);
    criterion_03_block_casimir(&mut gate);
    criterion_04_ladder_coefficients_and_spectra(&mut gate);
    criterion_05_sp2r_casimirs(&mut gate);
    criterion_06_laguerre_closed_form(&mut gate);
    criterion_07_group_actions(&mut gate);
    criterion_08_quadrature_forms(&mut gate);
    criterion_09_kernel_identities(&mut gate);
    criterion_10_two_units(&mut gate);
    criterion_11_involutive_algebra(&mut gate);
    criterion_12_sector_grading(&mut gate);
    criterion_13_determinism(&mut gate);

    gate.finish();
}

/// 1. The decycled bracket relations hold with zero residual in exact
/// arithmetic on the interior of p ∈ [-6, 6], m ≤ 24.
fn criterion_01_exact_decycled_relations(gate: &mut Gate) {
    let window = TruncationWindow::new(-6, 6, 24).unwrap();
    let sub = window.interior().unwrap();
    let mut worst = 0.0f64;
    for lam in [spin(-1, 4), spin(-3, 10)] {
        let rep = nonfock_h4::<CRat>(&lam, window).unwrap();
        for a in 1..=2usize {
            for ap in 1..=2usize {
                for al in 1..=2usize {
                    for alp in 1..=2usize {
                        let c = commutator(rep.op(a, al), rep.op(ap, alp)).unwrap();
                        let eps = match (a, ap) {
                            (1, 2) => 1i64,
                            (2, 1) => -1,
                            _ => 0,
                        };
                        let target = if al == alp && eps != 0 {
                            ShiftOperator::scalar(window, CRat::from_int(eps))
                        } else {
                            ShiftOperator::zero(window, 0)
                        };
                        worst = worst.max(residual_on(&c, &target, &sub));
                    }
                }
            }
        }
    }
    gate.record(
        "01 exact decycled relations",
        worst == 0.0,
        format!("bracket residual {worst:.1e} on p in [-6,6], m <= 24 (exact class)"),
    );
}

/// 2. One-mode parity Casimir is -3/16 on both parity subspaces with
/// residual < 1e-12 at m_max = 40, and the lowest weights 1/4, 3/4 are
/// observed (spins -1/4 and -3/4 with pairing value -3/16).
fn criterion_02_parity_casimir(gate: &mut Gate) {
    const TOL: f64 = 1e-12;
    let split = h2_semispinor_split::<C64>(40);
    let cas = split.casimir();
    let mut even = 0.0f64;
    let mut odd = 0.0f64;
    let target = C64::new(-3.0 / 16.0, 0.0);
    for e in split.space.indices() {
        if e[0] > 38 {
            continue;
        }
        let got = cas.entry(e, e);
        let r = (got - target).norm();
        if e[0] % 2 == 0 {
            even = even.max(r);
        } else {
            odd = odd.max(r);
        }
        // off-diagonal entries within the interior must vanish
        for e2 in split.space.indices() {
            if e2 != e && e2[0] <= 38 {
                let off = cas.entry(e, e2).norm();
                if e[0] % 2 == 0 {
                    even = even.max(off);
                } else {
                    odd = odd.max(off);
                }
            }
        }
    }
    let w0 = split.l3.entry([0], [0]);
    let w1 = split.l3.entry([1], [1]);
    let weights_ok = (w0 - C64::new(0.25, 0.0)).norm() < TOL
        && (w1 - C64::new(0.75, 0.0)).norm() < TOL;
    // spins λ with λ(λ+1) = -3/16
    let spins_ok = {
        let check = |l: f64| (l * (l + 1.0) + 3.0 / 16.0).abs() < TOL;
        check(-0.25) && check(-0.75)
    };
    let pass = even < TOL && odd < TOL && weights_ok && spins_ok;
    gate.record(
        "02 parity casimir",
        pass,
        format!("even residual {even:.1e}, odd residual {odd:.1e}, lowest weights 1/4 and 3/4"),
    );
}

/// 3. Per-block rotation brackets exact; block Casimir equals the
/// block-spin pairing exactly in rational mode; block zero at spin
/// -1/4 reproduces -3/16.
fn criterion_03_block_casimir(gate: &mut Gate) {
    let mut worst = 0.0f64;
    let mut casimirs = Vec::new();
    for lam in [spin(-1, 4), spin(-3, 10)] {
        for p in -3..=3i64 {
            let b = su2_semispinor::<CRat>(&lam, p, 12).unwrap();
            let sub = b.window.shrink(0, 2).unwrap();
            let c1 = commutator(&b.l3, &b.lplus).unwrap();
            worst = worst.max(residual_on(&c1, &b.lplus, &sub));
            let c2 = commutator(&b.l3, &b.lminus).unwrap();
            worst = worst.max(residual_on(&c2, &b.lminus.neg(), &sub));
            let c3 = commutator(&b.lplus, &b.lminus).unwrap();
            worst = worst.max(residual_on(&c3, &b.l3.scale(&CRat::from_int(2)), &sub));
            let cas = heisenrep::core::casimir_su2(&b.l3, &b.lplus, &b.lminus).unwrap();
            let target = ShiftOperator::scalar(b.window, CRat::from_rat(&b.casimir_value()));
            worst = worst.max(residual_on(&cas, &target, &sub));
            casimirs.push((lam.value().clone(), p, b.casimir_value()));
        }
    }
    let special = su2_semispinor::<CRat>(&spin(-1, 4), 0, 8)
        .unwrap()
        .casimir_value()
        == rat(-3, 16);
    gate.record(
        "03 block casimir",
        worst == 0.0 && special,
        format!(
            "brackets and Casimir exact over {} blocks; block zero at -1/4 gives -3/16",
            casimirs.len()
        ),
    );
}

/// 4. Normalized ladder magnitudes reproduce sqrt(m), sqrt(m+1),
/// sqrt|mu|, sqrt|mu+1| to 1e-12 (with mu+1 > 0 realized among the
/// asserted indices), and the mode-two spectrum minimum strictly
/// decreases through four window growths.
fn criterion_04_ladder_coefficients_and_spectra(gate: &mut Gate) {
    const TOL: f64 = 1e-12;
    let lam = spin(-3, 10);
    // the window deliberately reaches one block past the region where
    // every normalization Gamma argument stays positive, so that
    // indices with mu + 1 > 0 are exercised (the conversion factors
    // carry the Gamma sign as a phase there)
    let window = TruncationWindow::new(-3, 1, 8).unwrap();
    assert!(cartan_weyl_valid(&TruncationWindow::new(-3, 0, 8).unwrap(), &lam));
    let rep = nonfock_h4::<C64>(&lam, window).unwrap();
    let sub = window.shrink(1, 2).unwrap();
    let mut worst = 0.0f64;
    let mut saw_positive_mu_plus_one = false;
    for idx in sub.indices() {
        let m = idx.m;
        let p = idx.p;
        let mu = 2.0 * lam.to_f64() + p as f64 - m as f64;
        if mu + 1.0 > 0.0 {
            saw_positive_mu_plus_one = true;
        }
        let cases: [(usize, usize, GradedIndex, f64); 4] = [
            (1, 1, GradedIndex::new(p - 1, m.wrapping_sub(1)), (m as f64).sqrt()),
            (2, 1, GradedIndex::new(p + 1, m + 1), ((m + 1) as f64).sqrt()),
            (1, 2, GradedIndex::new(p - 1, m), (-mu).sqrt()),
            (2, 2, GradedIndex::new(p + 1, m), (mu + 1.0).abs().sqrt()),
        ];
        for (a, alpha, row, want) in cases {
            if a == 1 && alpha == 1 && m == 0 {
                continue;
            }
            if !window.contains(row) {
                continue;
            }
            let cw = cartan_weyl_matrix(rep.op(a, alpha), &lam).unwrap();
            worst = worst.max((cw.entry(row, idx).norm() - want).abs());
        }
    }

    let mut mins: Vec<Rat> = Vec::new();
    let lam_exact = spin(-1, 4);
    for growth in 0..=4i64 {
        let w = TruncationWindow::new(-2 - growth, 2, 6).unwrap();
        let r = nonfock_h4::<CRat>(&lam_exact, w).unwrap();
        mins.push(r.number_spectrum(2).first().unwrap().clone());
    }
    let strictly = mins.windows(2).all(|w| w[1] < w[0]);
    gate.record(
        "04 ladder coefficients and spectra",
        worst < TOL && strictly && saw_positive_mu_plus_one,
        format!(
            "magnitude residual {worst:.1e}; minima {:?} strictly decreasing",
            mins.iter().map(rat_to_f64).collect::<Vec<_>>()
        ),
    );
}

/// 5. The quadratic, mixed and boost-square Casimirs take the values
/// -3/4, 0, 1/2 on both realizations with residual < 1e-10, and the
/// half-number spectra match their predicted sets exactly.
fn criterion_05_sp2r_casimirs(gate: &mut Gate) {
    const TOL: f64 = 1e-10;
    let lam = spin(-3, 10);
    let window = TruncationWindow::new(-4, 4, 10).unwrap();
    let rep = nonfock_h4::<CRat>(&lam, window).unwrap();
    let gens = sp2r_generators_graded(&rep).unwrap();
    let minus34 = ShiftOperator::scalar(window, CRat::from_rat(&rat(-3, 4)));
    let zero = ShiftOperator::zero(window, 0);
    let half = ShiftOperator::scalar(window, CRat::from_rat(&rat(1, 2)));
    let graded_res = [
        interior_residual_with_margins(&gens.casimir_c().unwrap(), &minus34, &window, 2, 2)
            .unwrap(),
        interior_residual_with_margins(&gens.casimir_c_prime().unwrap(), &zero, &window, 2, 2)
            .unwrap(),
        interior_residual_with_margins(&gens.casimir_gamma_sq().unwrap(), &half, &window, 2, 2)
            .unwrap(),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);

    let m_max = 8usize;
    let fgens = sp2r_generators_fock::<CRat>(m_max).unwrap();
    let space = MonomialSpace::new([m_max, m_max]);
    let fsub = space.shrunk(2).unwrap();
    let fm34 = BoxOp::scalar(space, CRat::from_rat(&rat(-3, 4)));
    let fhalf = BoxOp::scalar(space, CRat::from_rat(&rat(1, 2)));
    let r = |x: BoxOp<CRat, 2>, t: &BoxOp<CRat, 2>| -> f64 {
        let d = x.sub(t).unwrap();
        if d.is_zero_on(&fsub) {
            0.0
        } else {
            d.max_abs_on(&fsub)
        }
    };
    let fock_res = [
        r(fgens.casimir_c().unwrap(), &fm34),
        r(fgens.casimir_c_prime().unwrap(), &BoxOp::zero(space)),
        r(fgens.casimir_gamma_sq().unwrap(), &fhalf),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);

    // spectra as sets
    let graded_l0: BTreeSet<Rat> = rep.l0_spectrum().into_iter().collect();
    let graded_want: BTreeSet<Rat> = window.blocks().map(|p| lam.block_spin(p)).collect();
    let f = fock_su2::<CRat>(m_max);
    let mut fock_l0 = BTreeSet::new();
    for e in f.space.indices() {
        fock_l0.insert(rat(e[0] as i64 + e[1] as i64, 2));
    }
    let fock_want: BTreeSet<Rat> = (0..=(2 * m_max) as i64).map(|p| rat(p, 2)).collect();
    let sets_ok = graded_l0 == graded_want && fock_l0 == fock_want;

    let pass = graded_res < TOL && fock_res < TOL && sets_ok;
    gate.record(
        "05 sp2r casimirs",
        pass,
        format!("graded residual {graded_res:.1e}, fock residual {fock_res:.1e}, spectra sets match"),
    );
}

/// 6. The truncated lowering exponential against the Laguerre closed
/// form, n ≤ 8, tau in {0.5, 1.0, -0.7}, spin -3/10, m_max = 60,
/// within 1e-8 coefficientwise.
///
/// The prefactor as printed in the source formula, (-tau/2)^n, cannot
/// match any unipotent exponential: its leading coefficient is 2^{-n}
/// instead of 1. The generating-function route through the fractional
/// linear action pins the consistent prefactor (-tau)^n. Both variants
/// are reported: the literal one is expected to fail and the
/// consistent one must pass.
fn criterion_06_laguerre_closed_form(gate: &mut Gate) {
    const TOL: f64 = 1e-8;
    const M: usize = 60;
    let lam = spin(-3, 10);
    let mut consistent = 0.0f64;
    let mut literal = f64::INFINITY;
    for &tau_re in &[0.5f64, 1.0, -0.7] {
        let tau = C64::new(tau_re, 0.0);
        for n in 0..=8usize {
            let mut f = vec![C64::new(0.0, 0.0); M + 1];
            f[n] = C64::new(1.0, 0.0);
            let direct = exp_lminus(&lam, tau, &f);
            let closed = laguerre_closed_form(&lam, tau, n, M + 1, false);
            consistent = consistent.max(series_residual(&direct, &closed, M - 1));
            let halved = laguerre_closed_form(&lam, tau, n, M + 1, true);
            let lit = series_residual(&direct, &halved, M - 1);
            if n > 0 {
                literal = literal.min(lit);
            }
        }
    }
    let literal_fails_as_documented = literal > TOL;
    println!(
        "criterion 06a (literal halved prefactor): FAIL as documented — best-case deviation {literal:.3e} exceeds {TOL:.0e}; the halved form has leading coefficient 2^-n where a unipotent exponential forces 1"
    );
    gate.record(
        "06 lowering exponential vs closed form",
        consistent < TOL && literal_fails_as_documented,
        format!(
            "consistent prefactor residual {consistent:.3e} < {TOL:.0e}; literal halved prefactor provably diverges ({literal:.3e})"
        ),
    );
}

/// 7. Upper-Borel homomorphism on 20 seeded element pairs within 1e-8;
/// the prefactor/slope law within 1e-8 including a near-pole rejection.
fn criterion_07_group_actions(gate: &mut Gate) {
    const TOL: f64 = 1e-8;
    const M: usize = 60;
    let lam = spin(-3, 10);
    let mut rng = ChaCha8Rng::seed_from_u64(20260809);
    let zero = C64::new(0.0, 0.0);

    let mut hom = 0.0f64;
    for _ in 0..20 {
        let d1 = C64::new(1.0 + 0.3 * (rng.gen::<f64>() - 0.5), 0.3 * (rng.gen::<f64>() - 0.5));
        let d2 = C64::new(1.0 + 0.3 * (rng.gen::<f64>() - 0.5), 0.3 * (rng.gen::<f64>() - 0.5));
        let b1 = C64::new(0.6 * (rng.gen::<f64>() - 0.5), 0.6 * (rng.gen::<f64>() - 0.5));
        let b2 = C64::new(0.6 * (rng.gen::<f64>() - 0.5), 0.6 * (rng.gen::<f64>() - 0.5));
        let mut poly = vec![zero; M + 1];
        for slot in poly.iter_mut().take(11) {
            *slot = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        }
        let step = borel_upper_action(&lam, b2, d2, &poly);
        let lhs = borel_upper_action(&lam, b1, d1, &step);
        let d12 = d1 * d2;
        let b12 = b1 + b2 / (d1 * d1);
        let rhs_raw = borel_upper_action(&lam, b12, d12, &poly);
        let corr = (d1.powc(C64::new(2.0 * lam.to_f64(), 0.0))
            * d2.powc(C64::new(2.0 * lam.to_f64(), 0.0)))
            / d12.powc(C64::new(2.0 * lam.to_f64(), 0.0));
        let rhs: Vec<C64> = rhs_raw.iter().map(|c| c * corr).collect();
        hom = hom.max(series_residual(&lhs, &rhs, M / 2));
    }

    let mut law = 0.0f64;
    for _ in 0..20 {
        let b = C64::new(0.6 * (rng.gen::<f64>() - 0.5), 0.6 * (rng.gen::<f64>() - 0.5));
        let g = C64::new(0.6 * (rng.gen::<f64>() - 0.5), 0.6 * (rng.gen::<f64>() - 0.5));
        let d = C64::new(1.0 + 0.3 * (rng.gen::<f64>() - 0.5), 0.3 * (rng.gen::<f64>() - 0.5));
        let one = C64::new(1.0, 0.0);
        let v = GroupElement::new(one / d + b * g * d, b * d, g * d, d).unwrap();
        let datum = ExpDatum::new(one, C64::new(0.5 * (rng.gen::<f64>() - 0.5), 0.0));
        if let Ok(direct) = group_action_on_exp(&lam, &v, &datum) {
            let factors = gauss_factorize(&v).unwrap();
            let fact = factorwise_action_on_exp(&lam, &factors, &datum).unwrap();
            law = law.max(direct.max_diff(&fact));
        }
    }

    // near-pole rejection
    let one = C64::new(1.0, 0.0);
    let gamma = C64::new(0.5, 0.0);
    let delta = C64::new(-1.0, 0.0);
    let beta = (one * delta - one) / gamma;
    let v = GroupElement::new(one, beta, gamma, delta).unwrap();
    let datum = ExpDatum::new(one, C64::new(2.0, 0.0));
    let pole_rejected = group_action_on_exp(&lam, &v, &datum).is_err();

    let pass = hom < TOL && law < TOL && pole_rejected;
    gate.record(
        "07 borel actions",
        pass,
        format!("homomorphism residual {hom:.1e}, action law residual {law:.1e}, pole rejected: {pole_rejected}"),
    );
}

/// 8. Gram matrices of the normalized block vectors are
/// diag((-1)^m) within 1e-6 for both spins and p in {-1, 0, 1} (over
/// the indices where the measure converges, per the positivity
/// precondition), and radial moments match the Gamma-product closed
/// form within 1e-6 relative.
fn criterion_08_quadrature_forms(gate: &mut Gate) {
    const TOL: f64 = 1e-6;
    let q = QuadratureSpec::new(1024, 16.0).unwrap();
    let mut gram = 0.0f64;
    let mut moments = 0.0f64;
    let mut cells = 0usize;
    for lam_rat in [rat(-3, 10), rat(-9, 20)] {
        let lam = SpinParameter::general(lam_rat).unwrap();
        for p in [-1i64, 0, 1] {
            let m_start = (0..=6usize)
                .find(|m| heisenrep::forms::moment_exponent(&lam, *m, p) > rat(0, 1))
                .unwrap();
            for m in m_start..=6 {
                let got = radial_moment(&lam, m, p, &q).unwrap();
                let want = radial_moment_closed_form(&lam, m, p).unwrap();
                moments = moments.max((got.value.re - want).abs() / want.abs());
                let fm = normalized_block_vector(&lam, p, m, 8).unwrap();
                for mp in m_start..=6 {
                    let fmp = normalized_block_vector(&lam, p, mp, 8).unwrap();
                    let v = semispinor_form(&lam, p, &fm, &fmp, &q).unwrap();
                    let want = if m == mp {
                        C64::new(if m % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    };
                    gram = gram.max((v.value - want).norm());
                    cells += 1;
                }
            }
        }
    }
    let pass = gram < TOL && moments < TOL;
    gate.record(
        "08 quadrature forms",
        pass,
        format!("gram residual {gram:.2e} over {cells} cells, moment relative residual {moments:.2e}"),
    );
}

/// 9. Kernel shift property, membership of polynomials vanishing at
/// one, and interlacing residuals of all generators: exactly zero at
/// series order 20 on blocks p in [-5, 5].
fn criterion_09_kernel_identities(gate: &mut Gate) {
    let mut worst = 0.0f64;
    for lam in [spin(-1, 4), spin(-3, 10)] {
        let blocks = kernel_blocks(&lam, -5, 5, 20).unwrap();
        worst = worst.max(kernel_shift_check(&blocks).unwrap());
        worst = worst.max(kernel_polynomial_action(&blocks, &[rat(-1, 1), rat(1, 1)]).unwrap());
        worst = worst.max(kernel_polynomial_action(&blocks, &[rat(2, 1), rat(-3, 1), rat(1, 1)]).unwrap());
        for g in InterlaceGenerator::ALL {
            worst = worst.max(interlace_residual(&lam, g, &blocks).unwrap());
        }
    }
    gate.record(
        "09 kernel identities",
        worst == 0.0,
        format!("shift, membership and interlacing residuals all {worst:.1e} (exact class)"),
    );
}

/// 10. The two units: structural entry equality, exact commutation of
/// the block identity, and the brute-forced spinor mixing of the
/// displaced unit, all exact.
fn criterion_10_two_units(gate: &mut Gate) {
    let mut pass = true;
    let mut detail = String::new();
    for lam in [spin(-1, 4), spin(-3, 10)] {
        let window = TruncationWindow::new(-4, 4, 10).unwrap();
        let rep = two_units_check::<CRat>(&lam, window).unwrap();
        pass &= rep.structurally_equal
            && rep.identity_commutant_residual == 0.0
            && rep.mixing_residual == 0.0
            && rep.mixing_nonzero;
        detail = format!(
            "structural equality {}, identity commutant {:.1e}, mixing residual {:.1e}, mixing nonzero {}",
            rep.structurally_equal,
            rep.identity_commutant_residual,
            rep.mixing_residual,
            rep.mixing_nonzero
        );
    }
    gate.record("10 two units", pass, detail);
}

/// 11. All involutive-algebra brackets, the Dirac-arrangement
/// consistency, and the conjugation/Hermiticity contracts at caps of 3
/// per variable, all with zero residual.
fn criterion_11_involutive_algebra(gate: &mut Gate) {
    let rep = h8_phi_rep::<CRat>(3).unwrap();
    let d = dirac_set::<CRat>();
    let sub = rep.space.shrunk(1).unwrap();
    let mut worst = 0.0f64;
    for a in 0..4usize {
        for b in 0..4usize {
            let c = rep.phi(a).commutator(&rep.phi_bar(b)).unwrap();
            let want = if a == b {
                BoxOp::identity(rep.space)
            } else {
                BoxOp::zero(rep.space)
            };
            let dd = c.sub(&want).unwrap();
            if !dd.is_zero_on(&sub) {
                worst = worst.max(dd.max_abs_on(&sub));
            }
        }
    }
    let momenta = momentum_ops(&rep, &d);
    let consistency = momenta.is_ok();
    let contracts = conjugation_contract_residual::<CRat>(3);
    let hermiticity = momentum_hermiticity_residual::<CRat>(2);
    let alg = bilinear_algebra(&rep, &d).unwrap();
    let sub2 = rep.space.shrunk(2).unwrap();
    let ab = alg.a_op.commutator(&alg.b_op).unwrap();
    let ab_res = if ab.is_zero_on(&sub2) { 0.0 } else { 1.0 };
    let pass =
        worst == 0.0 && consistency && contracts == 0.0 && hermiticity == 0.0 && ab_res == 0.0;
    gate.record(
        "11 involutive algebra",
        pass,
        format!(
            "brackets {worst:.1e}, arrangement consistent {consistency}, contracts {contracts:.1e}, hermiticity {hermiticity:.1e}"
        ),
    );
}

/// 12. Sector grading: structural block-diagonality in the charge,
/// non-negative charge on the implemented basis, sector Casimir
/// values w(w+1) for k ≤ 4, n ≤ 6, and the one-way Laurent leak.
fn criterion_12_sector_grading(gate: &mut Gate) {
    let u = u11_restriction::<CRat>(12, 8).unwrap();
    let rep = f0_structure_checks(&u, 4, 6).unwrap();
    let mut laurent_ok = true;
    for k in 1..=4usize {
        let l = laurent_oneway_check(k, 8);
        laurent_ok &= l.tail_invariant && l.singular_escapes && l.escape_vector_in_tail;
    }
    let brute: Vec<f64> = (0..=4usize)
        .map(|k| rat_to_f64(&U11::<CRat>::sector_casimir_value(k)))
        .collect();
    let pass = rep.sectors_invariant
        && rep.casimir_residual == 0.0
        && rep.charge_values.iter().all(|k| *k >= 0)
        && laurent_ok;
    gate.record(
        "12 sector grading",
        pass,
        format!(
            "block-diagonal {}, casimir residual {:.1e} (values {:?}), charges {:?}, one-way leak {}",
            rep.sectors_invariant, rep.casimir_residual, brute, rep.charge_values, laurent_ok
        ),
    );
}

/// 13. Repeated runs with the same configuration produce
/// byte-identical JSON reports.
fn criterion_13_determinism(gate: &mut Gate) {
    let cfg = SuiteConfig {
        p_min: -4,
        p_max: 4,
        m_max: 12,
        suites: vec![
            SuiteId::FockH2,
            SuiteId::GaussActions,
            SuiteId::InterlaceKernel,
            SuiteId::U11Grading,
        ],
        ..SuiteConfig::default()
    };
    let a = emit_report(&run_suites(&cfg).unwrap(), ReportFormat::Json);
    let b = emit_report(&run_suites(&cfg).unwrap(), ReportFormat::Json);
    gate.record(
        "13 determinism",
        a == b,
        format!("two runs serialized to {} identical bytes", a.len()),
    );
}
