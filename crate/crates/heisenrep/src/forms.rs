//! Inner products and invariant pairings: the Gaussian monomial rule,
//! the Macdonald-weighted radial measure of the graded blocks, the
//! graded sesquilinear form, and the dual monomial pairing used by the
//! eight-generator algebra.
//!
//! Angular integrals are always done analytically (monomial phases);
//! only radial integrals are numerical.

use std::collections::BTreeMap;

use crate::error::FormsError;
use crate::scalar::{C64, Rat, Scalar, SpinParameter};
use crate::special::{factorial, gamma};

/// Value of a form together with a quadrature error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormValue {
    pub value: C64,
    pub error: f64,
}

impl FormValue {
    pub fn exact(value: C64) -> Self {
        FormValue { value, error: 0.0 }
    }
}

// ---------------------------------------------------------------------------
// Gaussian monomial rule on holomorphic modes
// ---------------------------------------------------------------------------

/// Polynomial in N holomorphic mode variables, monomial map e ↦ coeff.
pub type HoloPoly<const N: usize> = BTreeMap<[usize; N], C64>;

pub fn holo_monomial<const N: usize>(e: [usize; N]) -> HoloPoly<N> {
    let mut p = HoloPoly::new();
    p.insert(e, C64::new(1.0, 0.0));
    p
}

/// Hermitian inner product against the normalized Gaussian measure,
/// evaluated exactly by the monomial rule (z^m, z^n) = m! δ_{mn} per
/// mode. No quadrature is involved.
pub fn gauss_monomial_form<const N: usize>(f: &HoloPoly<N>, g: &HoloPoly<N>) -> FormValue {
    let mut acc = C64::new(0.0, 0.0);
    for (e, fc) in f {
        if let Some(gc) = g.get(e) {
            let weight: f64 = e.iter().map(|m| factorial(*m)).product();
            acc += fc.conj() * gc * C64::new(weight, 0.0);
        }
    }
    FormValue::exact(acc)
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes and the Macdonald function
// ---------------------------------------------------------------------------

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre_nodes(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn composite_gl(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let nodes = gauss_legendre_nodes(16);
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for k in 0..panels {
        let lo = a + k as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for (x, w) in &nodes {
            acc += w * half * f(mid + half * x);
        }
    }
    acc
}

/// Macdonald function K_ν(x) for x > 0 via the integral representation
/// ∫₀^∞ e^{-x cosh t} cosh(νt) dt with adaptive panel refinement.
/// Symmetric in ν by construction.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64, FormsError> {
    if x <= 0.0 {
        return Err(FormsError::NonPositiveArgument { x });
    }
    // truncation point: e^{-x cosh T + |ν| T} below 1e-20
    let mut t_max = 1.0f64;
    while x * t_max.cosh() - nu.abs() * t_max < 50.0 {
        t_max += 0.5;
        if t_max > 500.0 {
            break;
        }
    }
    let integrand = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    let mut panels = 8usize;
    let mut prev = composite_gl(integrand, 0.0, t_max, panels);
    loop {
        panels *= 2;
        let next = composite_gl(integrand, 0.0, t_max, panels);
        let delta = (next - prev).abs();
        if delta <= 1e-13 * next.abs().max(1e-300) || panels >= 4096 {
            if delta > 1e-8 * next.abs().max(1.0) {
                return Err(FormsError::NonConvergent { delta });
            }
            return Ok(next);
        }
        prev = next;
    }
}

// ---------------------------------------------------------------------------
// radial moments of the Macdonald measure
// ---------------------------------------------------------------------------

/// Fixed composite Gauss-Legendre scheme for the radial integrals on
/// [0, R] (evaluated in the softened variable u = sqrt(r)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub radial_nodes: usize,
    pub radial_cutoff: f64,
}

impl QuadratureSpec {
    /// The one scheme this spec describes.
    pub const SCHEME: &'static str = "composite-gauss-legendre";

    pub fn new(radial_nodes: usize, radial_cutoff: f64) -> Result<Self, FormsError> {
        if radial_nodes < 64 || radial_cutoff < 12.0 {
            return Err(FormsError::BadQuadratureSpec {
                nodes: radial_nodes,
                cutoff: radial_cutoff,
            });
        }
        Ok(QuadratureSpec {
            radial_nodes,
            radial_cutoff,
        })
    }

    fn panels(&self) -> usize {
        (self.radial_nodes / 16).max(4)
    }

    pub fn halved(&self) -> QuadratureSpec {
        QuadratureSpec {
            radial_nodes: (self.radial_nodes / 2).max(64),
            radial_cutoff: self.radial_cutoff,
        }
    }

    pub fn doubled(&self) -> QuadratureSpec {
        QuadratureSpec {
            radial_nodes: self.radial_nodes * 2,
            radial_cutoff: self.radial_cutoff,
        }
    }
}

/// Exact exponent m - 2λ - p controlling convergence of the radial
/// moment (must be positive).
pub fn moment_exponent(lambda: &SpinParameter, m: usize, p: i64) -> Rat {
    use crate::scalar::rat;
    rat(m as i64, 1) - lambda.two_lambda() - rat(p, 1)
}

fn radial_moment_raw(
    lambda: &SpinParameter,
    m: usize,
    p: i64,
    spec: &QuadratureSpec,
) -> Result<f64, FormsError> {
    use num::traits::ToPrimitive;
    let w_exact = moment_exponent(lambda, m, p);
    let w = w_exact.to_f64().unwrap_or(f64::NAN);
    if w <= 0.0 {
        return Err(FormsError::DivergentMoment { exponent: w });
    }
    let two_spin = 2.0 * lambda.to_f64() + p as f64; // 2Λ
    let nu = two_spin + 1.0;
    let a = 2.0 * m as f64 - two_spin; // r-exponent
    // The configured cutoff bounds the pure e^{-2r} tail; the monomial
    // factor r^a pushes the integrand mass outward, so extend the
    // effective cutoff with the degree to keep the dropped tail far
    // below the quadrature tolerance.
    let cutoff = spec.radial_cutoff + 3.0 * a.max(0.0);
    // I = 4 ∫_0^R r^a K_ν(2r) dr, softened with r = u²:
    // I = 8 ∫_0^{√R} u^{2a+1} K_ν(2u²) du
    let u_max = cutoff.sqrt();
    let base_panels = spec.panels();
    let panels = ((base_panels as f64) * (cutoff / spec.radial_cutoff).sqrt()).ceil() as usize;
    let integrand = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let r = u * u;
        let k = bessel_k_unchecked(nu, 2.0 * r);
        8.0 * u.powf(2.0 * a + 1.0) * k
    };
    Ok(composite_gl(integrand, 0.0, u_max, panels))
}

// internal: same integral representation without the Result plumbing,
// for use inside quadrature loops (arguments are known positive).
fn bessel_k_unchecked(nu: f64, x: f64) -> f64 {
    let mut t_max = 1.0f64;
    while x * t_max.cosh() - nu.abs() * t_max < 50.0 {
        t_max += 0.5;
        if t_max > 500.0 {
            return 0.0;
        }
    }
    let integrand = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    composite_gl(integrand, 0.0, t_max, 48)
}

/// The radial integral behind the block normalization:
/// 4 ∫₀^∞ r^{2m-2Λ} K_{2Λ+1}(2r) dr, which the Gamma-product identity
/// evaluates in closed form as m! Γ(m - 2λ - p).
pub fn radial_moment(
    lambda: &SpinParameter,
    m: usize,
    p: i64,
    spec: &QuadratureSpec,
) -> Result<FormValue, FormsError> {
    let value = radial_moment_raw(lambda, m, p, spec)?;
    let coarse = radial_moment_raw(lambda, m, p, &spec.halved())?;
    Ok(FormValue {
        value: C64::new(value, 0.0),
        error: (value - coarse).abs().max(1e-15 * value.abs()),
    })
}

/// Closed form m! Γ(m - 2λ - p) of the radial moment.
pub fn radial_moment_closed_form(
    lambda: &SpinParameter,
    m: usize,
    p: i64,
) -> Result<f64, FormsError> {
    use num::traits::ToPrimitive;
    let w = moment_exponent(lambda, m, p).to_f64().unwrap_or(f64::NAN);
    if w <= 0.0 {
        return Err(FormsError::DivergentMoment { exponent: w });
    }
    Ok(factorial(m) * gamma(w).map_err(FormsError::Core)?)
}

// ---------------------------------------------------------------------------
// block sesquilinear form <f, g> = ∫ conj(f) g(-ζ) dμ_Λ
// ---------------------------------------------------------------------------

/// Sesquilinear form of two block polynomials (coefficient vectors in
/// ζ^m) on the spin-(λ+p/2) block. Angular orthogonality is exact, so
/// the value reduces to radial moments:
/// ⟨ζ^a, ζ^b⟩ = δ_{ab} (-1)^a · moment(a).
pub fn semispinor_form(
    lambda: &SpinParameter,
    p: i64,
    f: &[C64],
    g: &[C64],
    spec: &QuadratureSpec,
) -> Result<FormValue, FormsError> {
    let mut value = C64::new(0.0, 0.0);
    let mut error = 0.0f64;
    for m in 0..f.len().min(g.len()) {
        let term = f[m].conj() * g[m];
        if term.norm() == 0.0 {
            continue;
        }
        let moment = radial_moment(lambda, m, p, spec)?;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        value += term * moment.value * C64::new(sign, 0.0);
        error += term.norm() * moment.error;
    }
    Ok(FormValue { value, error })
}

/// Graded form: blockwise sum of the block forms.
pub fn graded_form(
    lambda: &SpinParameter,
    blocks_f: &BTreeMap<i64, Vec<C64>>,
    blocks_g: &BTreeMap<i64, Vec<C64>>,
    spec: &QuadratureSpec,
) -> Result<FormValue, FormsError> {
    let mut value = C64::new(0.0, 0.0);
    let mut error = 0.0;
    for (p, f) in blocks_f {
        if let Some(g) = blocks_g.get(p) {
            let fv = semispinor_form(lambda, *p, f, g, spec)?;
            value += fv.value;
            error += fv.error;
        }
    }
    Ok(FormValue { value, error })
}

/// Normalized block basis vector f_m as a monomial coefficient vector:
/// f_m = (iζ)^m / sqrt(m! Γ(m-2λ-p)). Errors when the Gamma argument is
/// not positive (the basis is not normalizable there).
pub fn normalized_block_vector(
    lambda: &SpinParameter,
    p: i64,
    m: usize,
    len: usize,
) -> Result<Vec<C64>, FormsError> {
    use num::traits::ToPrimitive;
    let w = moment_exponent(lambda, m, p).to_f64().unwrap_or(f64::NAN);
    if w <= 0.0 {
        return Err(FormsError::DivergentMoment { exponent: w });
    }
    let norm = (factorial(m) * gamma(w).map_err(FormsError::Core)?).sqrt();
    let mut out = vec![C64::new(0.0, 0.0); len];
    out[m] = C64::i().powu(m as u32) / C64::new(norm, 0.0);
    Ok(out)
}

// ---------------------------------------------------------------------------
// dual monomial pairing on star polynomials (z_α together with z̄_α)
// ---------------------------------------------------------------------------

/// Polynomial in MODES pairs of variables (z_k, z̄_k); the key stores
/// (z exponents, z̄ exponents).
#[derive(Clone, Debug, PartialEq)]
pub struct StarPoly<S: Scalar, const MODES: usize> {
    pub terms: BTreeMap<([usize; MODES], [usize; MODES]), S>,
}

impl<S: Scalar, const MODES: usize> Default for StarPoly<S, MODES> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar, const MODES: usize> StarPoly<S, MODES> {
    pub fn zero() -> Self {
        StarPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(z: [usize; MODES], zbar: [usize; MODES]) -> Self {
        let mut p = Self::zero();
        p.terms.insert((z, zbar), S::one());
        p
    }

    pub fn one() -> Self {
        Self::monomial([0; MODES], [0; MODES])
    }

    pub fn add_term(&mut self, z: [usize; MODES], zbar: [usize; MODES], v: S) {
        if v.is_zero() {
            return;
        }
        let cell = self
            .terms
            .entry((z, zbar))
            .or_insert_with(S::zero);
        *cell = cell.add(&v);
        if cell.is_zero() {
            self.terms.remove(&(z, zbar));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((z, zbar), v) in &o.terms {
            out.add_term(*z, *zbar, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for ((z, zbar), v) in &self.terms {
            out.add_term(*z, *zbar, s.mul(v));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&S::one().neg()))
    }

    pub fn mult_z(&self, mode: usize) -> Self {
        let mut out = Self::zero();
        for ((z, zbar), v) in &self.terms {
            let mut zz = *z;
            zz[mode] += 1;
            out.add_term(zz, *zbar, v.clone());
        }
        out
    }

    pub fn mult_zbar(&self, mode: usize) -> Self {
        let mut out = Self::zero();
        for ((z, zbar), v) in &self.terms {
            let mut bb = *zbar;
            bb[mode] += 1;
            out.add_term(*z, bb, v.clone());
        }
        out
    }

    pub fn diff_z(&self, mode: usize) -> Self {
        let mut out = Self::zero();
        for ((z, zbar), v) in &self.terms {
            if z[mode] == 0 {
                continue;
            }
            let mut zz = *z;
            zz[mode] -= 1;
            out.add_term(zz, *zbar, v.mul(&S::from_int(z[mode] as i64)));
        }
        out
    }

    pub fn diff_zbar(&self, mode: usize) -> Self {
        let mut out = Self::zero();
        for ((z, zbar), v) in &self.terms {
            if zbar[mode] == 0 {
                continue;
            }
            let mut bb = *zbar;
            bb[mode] -= 1;
            out.add_term(*z, bb, v.mul(&S::from_int(zbar[mode] as i64)));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

fn exact_factorial<S: Scalar>(n: usize) -> S {
    let mut acc = S::one();
    for k in 2..=n {
        acc = acc.mul(&S::from_int(k as i64));
    }
    acc
}

/// Dual monomial pairing induced by the Gaussian on each (z, z̄) pair:
/// per mode, a left monomial z^a z̄^b and right monomial z^c z̄^d pair to
/// (b+c)! when a + d = b + c and to 0 otherwise; left coefficients are
/// conjugated. This is the pairing of a polynomial against a dual
/// vector carrying the implicit Gaussian factor, and it is the pairing
/// that makes the Dirac-conjugation contracts exact.
pub fn dual_pairing<S: Scalar, const MODES: usize>(
    left: &StarPoly<S, MODES>,
    right: &StarPoly<S, MODES>,
) -> S {
    let mut acc = S::zero();
    for ((lz, lb), lv) in &left.terms {
        for ((rz, rb), rv) in &right.terms {
            let mut weight = S::one();
            let mut ok = true;
            for k in 0..MODES {
                if lz[k] + rb[k] != lb[k] + rz[k] {
                    ok = false;
                    break;
                }
                weight = weight.mul(&exact_factorial::<S>(lb[k] + rz[k]));
            }
            if ok {
                acc = acc.add(&lv.conj().mul(rv).mul(&weight));
            }
        }
    }
    acc
}

/// Pairing of the two-mode realization space with its dual: the exact
/// monomial rule on (z₁, z₂, z̄₁, z̄₂).
pub fn h8_form_z<S: Scalar>(left: &StarPoly<S, 2>, right: &StarPoly<S, 2>) -> FormValue {
    FormValue::exact(dual_pairing(left, right).to_c64())
}

/// One-mode (ζ, ζ̄) pairing with the parity operator on the right slot.
pub fn h8_form_zeta<S: Scalar>(left: &StarPoly<S, 1>, right: &StarPoly<S, 1>) -> FormValue {
    FormValue::exact(dual_pairing_with_parity(left, right).to_c64())
}

/// Variant of the dual pairing with the parity operator applied to the
/// right slot (used by the one-mode ζ, ζ̄ pairing): g ↦ g(-ζ, -ζ̄).
pub fn dual_pairing_with_parity<S: Scalar, const MODES: usize>(
    left: &StarPoly<S, MODES>,
    right: &StarPoly<S, MODES>,
) -> S {
    let mut flipped = StarPoly::zero();
    for ((z, zbar), v) in &right.terms {
        let deg: usize = z.iter().sum::<usize>() + zbar.iter().sum::<usize>();
        let signed = if deg % 2 == 0 { v.clone() } else { v.neg() };
        flipped.add_term(*z, *zbar, signed);
    }
    dual_pairing(left, &flipped)
}
