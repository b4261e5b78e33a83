//! The involutive eight-generator oscillator algebra in its
//! two-mode-with-conjugates realization: the spinors φ, φ̄, the
//! Dirac-matrix bilinears, momentum operators, Dirac-conjugation
//! contracts against the dual pairing, and the u(1,1) restriction to
//! the additional-variable space with its fermionic-charge grading.

use std::collections::BTreeMap;

use crate::core::operator::{BoxOp, MonomialSpace};
use crate::error::H8Error;
use crate::forms::{dual_pairing, StarPoly};
use crate::scalar::{rat, Rat, Scalar};
use crate::symmetry::{ci, Cint};

// ---------------------------------------------------------------------------
// Dirac matrices
// ---------------------------------------------------------------------------

pub type Mat4<S> = [[S; 4]; 4];

fn mat4_zero<S: Scalar>() -> Mat4<S> {
    core::array::from_fn(|_| core::array::from_fn(|_| S::zero()))
}

pub fn mat4_mul<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    let mut out = mat4_zero();
    for r in 0..4 {
        for c in 0..4 {
            let mut acc = S::zero();
            for k in 0..4 {
                acc = acc.add(&a[r][k].mul(&b[k][c]));
            }
            out[r][c] = acc;
        }
    }
    out
}

pub fn mat4_add<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    let mut out = mat4_zero();
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = a[r][c].add(&b[r][c]);
        }
    }
    out
}

pub fn mat4_scale<S: Scalar>(a: &Mat4<S>, s: &S) -> Mat4<S> {
    let mut out = mat4_zero();
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = a[r][c].mul(s);
        }
    }
    out
}

pub fn mat4_sub<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    mat4_add(a, &mat4_scale(b, &S::one().neg()))
}

pub fn mat4_is_zero<S: Scalar>(a: &Mat4<S>) -> bool {
    a.iter().all(|row| row.iter().all(|v| v.is_zero()))
}

fn embed_blocks<S: Scalar>(tl: [[Cint; 2]; 2], tr: [[Cint; 2]; 2], bl: [[Cint; 2]; 2], br: [[Cint; 2]; 2]) -> Mat4<S> {
    let mut out = mat4_zero();
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = tl[r][c].to_scalar();
            out[r][c + 2] = tr[r][c].to_scalar();
            out[r + 2][c] = bl[r][c].to_scalar();
            out[r + 2][c + 2] = br[r][c].to_scalar();
        }
    }
    out
}

/// Euclidean sigma four-vectors σ±_μ = (σ⃗, ±i).
pub(crate) fn sigma_four(mu: usize, plus: bool) -> [[Cint; 2]; 2] {
    match mu {
        1..=3 => crate::symmetry::sigma(mu),
        4 => {
            let v = if plus { ci(0, 1) } else { ci(0, -1) };
            [[v, ci(0, 0)], [ci(0, 0), v]]
        }
        _ => panic!("mu must be 1..=4"),
    }
}

/// Euclidean Dirac matrices in the chiral arrangement pinned by the
/// momentum consistency requirement:
/// γ_μ = [[0, -i σ⁺_μ], [i σ⁻_μ, 0]], γ₄ = [[0, 1], [1, 0]] blockwise,
/// γ₅ = diag(-1, -1, 1, 1).
#[derive(Clone, Debug)]
pub struct DiracSet<S: Scalar> {
    pub gamma: [Mat4<S>; 4],
    pub gamma5: Mat4<S>,
}

pub fn dirac_set<S: Scalar>() -> DiracSet<S> {
    let zero2 = [[ci(0, 0); 2]; 2];
    let gamma = core::array::from_fn(|idx| {
        let mu = idx + 1;
        let plus = sigma_four(mu, true);
        let minus = sigma_four(mu, false);
        let minus_i = ci(0, -1);
        let plus_i = ci(0, 1);
        let tr = [
            [minus_i.mul(plus[0][0]), minus_i.mul(plus[0][1])],
            [minus_i.mul(plus[1][0]), minus_i.mul(plus[1][1])],
        ];
        let bl = [
            [plus_i.mul(minus[0][0]), plus_i.mul(minus[0][1])],
            [plus_i.mul(minus[1][0]), plus_i.mul(minus[1][1])],
        ];
        embed_blocks::<S>(zero2, tr, bl, zero2)
    });
    let m1 = [[ci(-1, 0), ci(0, 0)], [ci(0, 0), ci(-1, 0)]];
    let p1 = [[ci(1, 0), ci(0, 0)], [ci(0, 0), ci(1, 0)]];
    let gamma5 = embed_blocks::<S>(m1, zero2, zero2, p1);
    DiracSet { gamma, gamma5 }
}

impl<S: Scalar> DiracSet<S> {
    pub fn identity() -> Mat4<S> {
        let mut out = mat4_zero();
        for k in 0..4 {
            out[k][k] = S::one();
        }
        out
    }

    /// P± = (1 ± γ₅)/2.
    pub fn projector(&self, plus: bool) -> Mat4<S> {
        let half = S::from_rat(&rat(1, 2));
        let sign = if plus { S::one() } else { S::one().neg() };
        mat4_scale(
            &mat4_add(&Self::identity(), &mat4_scale(&self.gamma5, &sign)),
            &half,
        )
    }

    /// Σ_{μν} = (1/4i)[γ_μ, γ_ν] (μ, ν ∈ 1..=4).
    pub fn sigma_munu(&self, mu: usize, nu: usize) -> Mat4<S> {
        let g1 = &self.gamma[mu - 1];
        let g2 = &self.gamma[nu - 1];
        let comm = mat4_sub(&mat4_mul(g1, g2), &mat4_mul(g2, g1));
        // 1/(4i) = -i/4
        let factor = S::i().neg().mul(&S::from_rat(&rat(1, 4)));
        mat4_scale(&comm, &factor)
    }
}

// ---------------------------------------------------------------------------
// the capped matrix realization
// ---------------------------------------------------------------------------

/// Axis order of the four-variable box space: (z₁, z₂, z̄₁, z̄₂).
pub type H8Space = MonomialSpace<4>;

/// The eight elementary generators on the capped space, plus the φ/φ̄
/// packaging: φ = (∂̄₁, ∂̄₂, z₁, z₂), φ̄ = (z̄₁, z̄₂, -∂₁, -∂₂).
#[derive(Clone, Debug)]
pub struct H8Rep<S: Scalar> {
    pub space: H8Space,
    /// a¹_α = z_α (multiplication).
    pub a1: [BoxOp<S, 4>; 2],
    /// a²_α = -∂/∂z_α.
    pub a2: [BoxOp<S, 4>; 2],
    /// a^{1*}_α = -z̄_α.
    pub a1s: [BoxOp<S, 4>; 2],
    /// a^{2*}_α = ∂/∂z̄_α.
    pub a2s: [BoxOp<S, 4>; 2],
}

pub fn h8_phi_rep<S: Scalar>(cap: usize) -> Result<H8Rep<S>, H8Error> {
    if cap < 2 {
        return Err(H8Error::CapTooSmall { cap });
    }
    let space = MonomialSpace::new([cap, cap, cap, cap]);
    let minus_one = S::one().neg();
    let a1 = [BoxOp::mult(space, 0), BoxOp::mult(space, 1)];
    let a2 = [
        BoxOp::diff(space, 0).scale(&minus_one),
        BoxOp::diff(space, 1).scale(&minus_one),
    ];
    let a1s = [
        BoxOp::mult(space, 2).scale(&minus_one),
        BoxOp::mult(space, 3).scale(&minus_one),
    ];
    let a2s = [BoxOp::diff(space, 2), BoxOp::diff(space, 3)];
    Ok(H8Rep {
        space,
        a1,
        a2,
        a1s,
        a2s,
    })
}

impl<S: Scalar> H8Rep<S> {
    /// φ component j ∈ 0..4: (a^{2*}_1, a^{2*}_2, a¹_1, a¹_2).
    pub fn phi(&self, j: usize) -> &BoxOp<S, 4> {
        match j {
            0 => &self.a2s[0],
            1 => &self.a2s[1],
            2 => &self.a1[0],
            3 => &self.a1[1],
            _ => panic!("phi component out of range"),
        }
    }

    /// φ̄ component j ∈ 0..4: (-a^{1*}_1, -a^{1*}_2, a²_1, a²_2)
    /// = (z̄₁, z̄₂, -∂₁, -∂₂).
    pub fn phi_bar(&self, j: usize) -> BoxOp<S, 4> {
        match j {
            0 => self.a1s[0].neg(),
            1 => self.a1s[1].neg(),
            2 => self.a2[0].clone(),
            3 => self.a2[1].clone(),
            _ => panic!("phi_bar component out of range"),
        }
    }

    /// φ̄ M φ for a 4×4 matrix of scalars.
    pub fn bilinear(&self, m: &Mat4<S>) -> Result<BoxOp<S, 4>, H8Error> {
        let mut acc = BoxOp::zero(self.space);
        for j in 0..4 {
            for k in 0..4 {
                if m[j][k].is_zero() {
                    continue;
                }
                let prod = self.phi_bar(j).mul(self.phi(k))?;
                acc = acc.add(&prod.scale(&m[j][k]))?;
            }
        }
        Ok(acc)
    }
}

/// The sl(2,C)-extending bilinears I_{μν} (μ<ν), A = φ̄φ, B = φ̄γ₅φ.
#[derive(Clone, Debug)]
pub struct BilinearAlgebra<S: Scalar> {
    pub i_ops: BTreeMap<(usize, usize), BoxOp<S, 4>>,
    pub a_op: BoxOp<S, 4>,
    pub b_op: BoxOp<S, 4>,
}

pub fn bilinear_algebra<S: Scalar>(
    rep: &H8Rep<S>,
    dirac: &DiracSet<S>,
) -> Result<BilinearAlgebra<S>, H8Error> {
    let mut i_ops = BTreeMap::new();
    for mu in 1..=4usize {
        for nu in (mu + 1)..=4usize {
            let sig = dirac.sigma_munu(mu, nu);
            i_ops.insert((mu, nu), rep.bilinear(&sig)?);
        }
    }
    let a_op = rep.bilinear(&DiracSet::identity())?;
    let b_op = rep.bilinear(&dirac.gamma5)?;
    Ok(BilinearAlgebra { i_ops, a_op, b_op })
}

impl<S: Scalar> BilinearAlgebra<S> {
    /// I_{μν} for any index order: I_{νμ} = -I_{μν}, I_{μμ} = 0.
    pub fn i_op(&self, mu: usize, nu: usize) -> BoxOp<S, 4> {
        if mu == nu {
            return BoxOp::zero(*self.a_op.space());
        }
        if mu < nu {
            self.i_ops[&(mu, nu)].clone()
        } else {
            self.i_ops[&(nu, mu)].neg()
        }
    }
}

/// The bracket constant of the rotation bilinears, fixed by brute
/// force: [I_{μν}, I_{ρσ}] = -i (δ_{νρ} I_{μσ} + δ_{μσ} I_{νρ}
/// - δ_{μρ} I_{νσ} - δ_{νσ} I_{μρ}).
pub fn so4_bracket_factor<S: Scalar>() -> S {
    S::i().neg()
}

/// Momentum operators and their direct quadratic forms.
#[derive(Clone, Debug)]
pub struct MomentumSet<S: Scalar> {
    /// p_μ = i φ̄ γ_μ P₊ φ = z̄ σ⁺_μ z.
    pub p: [BoxOp<S, 4>; 4],
    /// ṗ_μ = -i φ̄ γ_μ P₋ φ = -∂ σ⁻_μ ∂̄.
    pub p_dot: [BoxOp<S, 4>; 4],
}

fn quadratic_mult<S: Scalar>(space: H8Space, mu: usize, plus: bool) -> BoxOp<S, 4> {
    // z̄ σ_μ z = Σ_{αβ} z̄_α (σ)_{αβ} z_β; axes: z at 0,1 and z̄ at 2,3
    let s = sigma_four(mu, plus);
    let mut acc = BoxOp::zero(space);
    for al in 0..2 {
        for be in 0..2 {
            if s[al][be].is_zero() {
                continue;
            }
            let term = BoxOp::<S, 4>::mult(space, 2 + al)
                .mul(&BoxOp::mult(space, be))
                .unwrap()
                .scale(&s[al][be].to_scalar());
            acc = acc.add(&term).unwrap();
        }
    }
    acc
}

fn quadratic_diff<S: Scalar>(space: H8Space, mu: usize, plus: bool) -> BoxOp<S, 4> {
    // -∂ σ_μ ∂̄ = -Σ_{αβ} ∂_α (σ)_{αβ} ∂̄_β
    let s = sigma_four(mu, plus);
    let mut acc = BoxOp::zero(space);
    for al in 0..2 {
        for be in 0..2 {
            if s[al][be].is_zero() {
                continue;
            }
            let term = BoxOp::<S, 4>::diff(space, al)
                .mul(&BoxOp::diff(space, 2 + be))
                .unwrap()
                .scale(&s[al][be].to_scalar());
            acc = acc.add(&term).unwrap();
        }
    }
    acc.neg()
}

/// Build p_μ and ṗ_μ, enforcing the consistency
/// i φ̄ γ_μ P₊ φ = z̄ σ⁺_μ z and -i φ̄ γ_μ P₋ φ = -∂ σ⁻_μ ∂̄ exactly;
/// a mismatch means the Dirac arrangement is wrong and is an error.
pub fn momentum_ops<S: Scalar>(
    rep: &H8Rep<S>,
    dirac: &DiracSet<S>,
) -> Result<MomentumSet<S>, H8Error> {
    let p_plus = dirac.projector(true);
    let p_minus = dirac.projector(false);
    let mut p: Vec<BoxOp<S, 4>> = Vec::with_capacity(4);
    let mut p_dot: Vec<BoxOp<S, 4>> = Vec::with_capacity(4);
    for mu in 1..=4usize {
        let gp = mat4_mul(&dirac.gamma[mu - 1], &p_plus);
        let bil = rep.bilinear(&gp)?.scale(&S::i());
        let direct = quadratic_mult(rep.space, mu, true);
        let diff = bil.sub(&direct)?;
        if !diff.is_zero_on(&rep.space) {
            return Err(H8Error::DiracArrangement {
                mu,
                bilinear: format!("{} entries", bil.entries().count()),
                direct: format!("{} entries", direct.entries().count()),
            });
        }
        p.push(direct);

        let gm = mat4_mul(&dirac.gamma[mu - 1], &p_minus);
        let bil_dot = rep.bilinear(&gm)?.scale(&S::i().neg());
        let direct_dot = quadratic_diff(rep.space, mu, false);
        let diff_dot = bil_dot.sub(&direct_dot)?;
        if !diff_dot.is_zero_on(&rep.space) {
            return Err(H8Error::DiracArrangement {
                mu,
                bilinear: format!("{} entries", bil_dot.entries().count()),
                direct: format!("{} entries", direct_dot.entries().count()),
            });
        }
        p_dot.push(direct_dot);
    }
    Ok(MomentumSet {
        p: [
            p.remove(0),
            p.remove(0),
            p.remove(0),
            p.remove(0),
        ],
        p_dot: [
            p_dot.remove(0),
            p_dot.remove(0),
            p_dot.remove(0),
            p_dot.remove(0),
        ],
    })
}

// ---------------------------------------------------------------------------
// dual-side (conjugate) actions for the pairing contracts
// ---------------------------------------------------------------------------

/// Operators on the dual slot of the pairing. Dual vectors carry an
/// implicit Gaussian factor, so derivative actions pick up a
/// multiplication term: a² acts as -∂ + z̄·, a^{2*} as ∂̄ - z·;
/// multiplications are unchanged.
pub mod dual {
    use super::*;

    pub fn a1<S: Scalar>(mode: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        f.mult_z(mode)
    }

    pub fn a2<S: Scalar>(mode: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        f.diff_z(mode).scale(&S::one().neg()).add(&f.mult_zbar(mode))
    }

    pub fn a1s<S: Scalar>(mode: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        f.mult_zbar(mode).scale(&S::one().neg())
    }

    pub fn a2s<S: Scalar>(mode: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        f.diff_zbar(mode).sub(&f.mult_z(mode))
    }

    /// Dual-side partner of p_μ: z̄ σ⁻_μ z (the conjugate sigma
    /// four-vector). Equal to p_μ for μ = 1..3; for μ = 4 it carries
    /// the opposite sign of the i.
    pub fn momentum<S: Scalar>(mu: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        let s = sigma_four(mu, false);
        let mut acc = StarPoly::zero();
        for al in 0..2 {
            for be in 0..2 {
                if s[al][be].is_zero() {
                    continue;
                }
                let term = f.mult_zbar(al).mult_z(be).scale(&s[al][be].to_scalar());
                acc = acc.add(&term);
            }
        }
        acc
    }

    /// Dual-side partner of ṗ_μ: -(∂ - z̄) σ⁺_μ (∂̄ - z).
    pub fn momentum_dot<S: Scalar>(mu: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        let s = sigma_four(mu, true);
        let mut acc = StarPoly::zero();
        for al in 0..2 {
            for be in 0..2 {
                if s[al][be].is_zero() {
                    continue;
                }
                let inner = f.diff_zbar(be).sub(&f.mult_z(be));
                let outer = inner.diff_z(al).sub(&inner.mult_zbar(al));
                acc = acc.add(&outer.scale(&s[al][be].to_scalar()));
            }
        }
        acc.scale(&S::one().neg())
    }
}

/// Right-slot (representation) actions on star polynomials.
pub mod primal {
    use super::*;

    pub fn a1<S: Scalar>(mode: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        f.mult_z(mode)
    }

    pub fn a2<S: Scalar>(mode: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        f.diff_z(mode).scale(&S::one().neg())
    }

    pub fn a1s<S: Scalar>(mode: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        f.mult_zbar(mode).scale(&S::one().neg())
    }

    pub fn a2s<S: Scalar>(mode: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        f.diff_zbar(mode)
    }

    pub fn momentum<S: Scalar>(mu: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        let s = sigma_four(mu, true);
        let mut acc = StarPoly::zero();
        for al in 0..2 {
            for be in 0..2 {
                if s[al][be].is_zero() {
                    continue;
                }
                acc = acc.add(&f.mult_zbar(al).mult_z(be).scale(&s[al][be].to_scalar()));
            }
        }
        acc
    }

    pub fn momentum_dot<S: Scalar>(mu: usize, f: &StarPoly<S, 2>) -> StarPoly<S, 2> {
        let s = sigma_four(mu, false);
        let mut acc = StarPoly::zero();
        for al in 0..2 {
            for be in 0..2 {
                if s[al][be].is_zero() {
                    continue;
                }
                let term = f.diff_zbar(be).diff_z(al).scale(&s[al][be].to_scalar());
                acc = acc.add(&term);
            }
        }
        acc.scale(&S::one().neg())
    }
}

/// Largest residual of the four Dirac-conjugation contracts over all
/// monomial pairs with exponents ≤ cap:
/// ⟨f, a¹g⟩ = -⟨a^{1*}f, g⟩, ⟨f, a²g⟩ = ⟨a^{2*}f, g⟩ and the starred
/// counterparts ⟨f, a^{1*}g⟩ = -⟨a¹f, g⟩, ⟨f, a^{2*}g⟩ = ⟨a²f, g⟩.
pub fn conjugation_contract_residual<S: Scalar>(cap: usize) -> f64 {
    let mut worst = 0.0f64;
    let monos = star_monomials::<S>(cap);
    for (left, _) in &monos {
        for (right, _) in &monos {
            for mode in 0..2usize {
                let c1 = dual_pairing(left, &primal::a1(mode, right))
                    .add(&dual_pairing(&dual::a1s(mode, left), right));
                let c2 = dual_pairing(left, &primal::a2(mode, right))
                    .sub(&dual_pairing(&dual::a2s(mode, left), right));
                let c3 = dual_pairing(left, &primal::a1s(mode, right))
                    .add(&dual_pairing(&dual::a1(mode, left), right));
                let c4 = dual_pairing(left, &primal::a2s(mode, right))
                    .sub(&dual_pairing(&dual::a2(mode, left), right));
                for c in [c1, c2, c3, c4] {
                    worst = worst.max(c.abs());
                }
            }
        }
    }
    worst
}

/// Largest residual of ⟨p̄_μ f, g⟩ = ⟨f, p_μ g⟩ and
/// ⟨ṗ̄_μ f, g⟩ = ⟨f, ṗ_μ g⟩ over monomial pairs ≤ cap, where the barred
/// operators are the dual-side partners built on σ∓.
pub fn momentum_hermiticity_residual<S: Scalar>(cap: usize) -> f64 {
    let mut worst = 0.0f64;
    let monos = star_monomials::<S>(cap);
    for (left, _) in &monos {
        for (right, _) in &monos {
            for mu in 1..=4usize {
                let lhs = dual_pairing(&dual::momentum(mu, left), right);
                let rhs = dual_pairing(left, &primal::momentum(mu, right));
                worst = worst.max(lhs.sub(&rhs).abs());
                let lhs_dot = dual_pairing(&dual::momentum_dot(mu, left), right);
                let rhs_dot = dual_pairing(left, &primal::momentum_dot(mu, right));
                worst = worst.max(lhs_dot.sub(&rhs_dot).abs());
            }
        }
    }
    worst
}

fn star_monomials<S: Scalar>(cap: usize) -> Vec<(StarPoly<S, 2>, ())> {
    let mut out = Vec::new();
    for a in 0..=cap {
        for b in 0..=cap {
            for c in 0..=cap {
                for d in 0..=cap {
                    out.push((StarPoly::monomial([a, b], [c, d]), ()));
                }
            }
        }
    }
    out
}

/// Exact rank of a family of operators viewed as vectors of entries
/// (fraction-free Gaussian elimination over the scalar field).
pub fn operator_rank<S: Scalar, const N: usize>(ops: &[BoxOp<S, N>]) -> usize {
    type Key<const N: usize> = ([usize; N], [usize; N]);
    let mut rows: Vec<BTreeMap<Key<N>, S>> = ops
        .iter()
        .map(|op| {
            op.entries()
                .map(|(r, c, v)| ((r, c), v.clone()))
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    while let Some(pos) = rows.iter().position(|r| !r.is_empty()) {
        let pivot_row = rows.remove(pos);
        let (pivot_key, pivot_val) = pivot_row.iter().next().map(|(k, v)| (*k, v.clone())).unwrap();
        rank += 1;
        for row in rows.iter_mut() {
            if let Some(v) = row.get(&pivot_key).cloned() {
                // row <- pivot_val * row - v * pivot_row
                let mut next: BTreeMap<Key<N>, S> = BTreeMap::new();
                for (k, rv) in row.iter() {
                    let scaled = pivot_val.mul(rv);
                    if !scaled.is_zero() {
                        next.insert(*k, scaled);
                    }
                }
                for (k, pv) in pivot_row.iter() {
                    let term = v.mul(pv);
                    let cell = next.entry(*k).or_insert_with(S::zero);
                    *cell = cell.sub(&term);
                    if cell.is_zero() {
                        next.remove(k);
                    }
                }
                *row = next;
            }
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// u(1,1) restriction on the additional-variable space
// ---------------------------------------------------------------------------

/// Generators on the one-mode (z, z̄) space (axes: z, z̄):
/// L₊ = z̄z, L₋ = -∂∂̄, L₃ = -(z∂ + z̄∂̄ + 1)/2, L₀ = -(z∂ - z̄∂̄ + 1)/2,
/// F = -2L₀ - 1 = z∂ - z̄∂̄ (the fermionic charge).
#[derive(Clone, Debug)]
pub struct U11<S: Scalar> {
    pub space: MonomialSpace<2>,
    pub lplus: BoxOp<S, 2>,
    pub lminus: BoxOp<S, 2>,
    pub l3: BoxOp<S, 2>,
    pub l0: BoxOp<S, 2>,
    pub charge: BoxOp<S, 2>,
}

pub fn u11_restriction<S: Scalar>(z_cap: usize, zbar_cap: usize) -> Result<U11<S>, H8Error> {
    if z_cap < 2 || zbar_cap < 2 {
        return Err(H8Error::CapTooSmall {
            cap: z_cap.min(zbar_cap),
        });
    }
    let space = MonomialSpace::new([z_cap, zbar_cap]);
    let lplus = BoxOp::<S, 2>::mult(space, 0).mul(&BoxOp::mult(space, 1)).unwrap();
    let lminus = BoxOp::<S, 2>::diff(space, 0)
        .mul(&BoxOp::diff(space, 1))
        .unwrap()
        .neg();
    let l3 = BoxOp::from_action(space, |e| {
        let v = rat(-(e[0] as i64 + e[1] as i64 + 1), 2);
        vec![(e, S::from_rat(&v))]
    });
    let l0 = BoxOp::from_action(space, |e| {
        let v = rat(-(e[0] as i64 - e[1] as i64 + 1), 2);
        vec![(e, S::from_rat(&v))]
    });
    let charge = BoxOp::from_action(space, |e| {
        vec![(e, S::from_int(e[0] as i64 - e[1] as i64))]
    });
    Ok(U11 {
        space,
        lplus,
        lminus,
        l3,
        l0,
        charge,
    })
}

impl<S: Scalar> U11<S> {
    /// The per-sector Casimir combination L₃² + (L₊L₋ + L₋L₊)/2.
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

    /// Casimir value of the charge-k sector: w(w+1) with w = -(k+1)/2.
    pub fn sector_casimir_value(k: usize) -> Rat {
        let w = rat(-(k as i64 + 1), 2);
        &w * (&w + rat(1, 1))
    }
}

/// Structural report on the graded sector space.
#[derive(Clone, Debug)]
pub struct F0Report {
    /// Every generator is block-diagonal in the fermionic charge.
    pub sectors_invariant: bool,
    /// Largest deviation of the sector Casimir from w(w+1).
    pub casimir_residual: f64,
    /// Charge values observed on the implemented basis (sorted).
    pub charge_values: Vec<i64>,
}

/// Sector-structure checks: F-block-diagonality of all generators,
/// per-sector Casimir values, and positivity of the charge on the
/// implemented basis z^k (z̄z)^n.
pub fn f0_structure_checks<S: Scalar>(
    u11: &U11<S>,
    k_max: usize,
    n_max: usize,
) -> Result<F0Report, H8Error> {
    let charge_of = |e: [usize; 2]| e[0] as i64 - e[1] as i64;
    let mut sectors_invariant = true;
    for op in [&u11.lplus, &u11.lminus, &u11.l3, &u11.l0] {
        for (row, col, _) in op.entries() {
            if charge_of(row) != charge_of(col) {
                sectors_invariant = false;
            }
        }
    }

    // Casimir on sector vectors z^k (z̄z)^n = exponents (k+n, n); stay
    // one step inside the caps so L-L+ is not clipped.
    let caps = u11.space.caps();
    let casimir = u11.casimir();
    let mut casimir_residual = 0.0f64;
    for k in 0..=k_max {
        let want = S::from_rat(&U11::<S>::sector_casimir_value(k));
        for n in 0..=n_max {
            if k + n + 1 > caps[0] || n + 1 > caps[1] {
                continue;
            }
            let e = [k + n, n];
            let image = casimir.apply_basis(e);
            for (target, v) in image {
                let expect = if target == e { want.clone() } else { S::zero() };
                casimir_residual = casimir_residual.max(v.sub(&expect).abs());
            }
        }
    }

    let mut charge_values: Vec<i64> = (0..=k_max)
        .filter(|k| *k <= caps[0])
        .map(|k| k as i64)
        .collect();
    charge_values.sort_unstable();
    Ok(F0Report {
        sectors_invariant,
        casimir_residual,
        charge_values,
    })
}

// ---------------------------------------------------------------------------
// Laurent sector demo: one-way composition at negative charge
// ---------------------------------------------------------------------------

/// Basis of the charge -k sector extended by the singular span:
/// Sing(i) = z^{i-k} z̄^i for i < k (the finite block), and
/// Tail(i) = z^i z̄^{k+i} (the invariant tail). Note Sing(k) would
/// coincide with Tail(0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LaurentVec {
    Sing(usize),
    Tail(usize),
}

/// Apply a u(1,1) generator in the charge -k sector.
/// `gen`: 0 = L₊, 1 = L₋, 2 = L₃.
pub fn laurent_apply(
    k: usize,
    generator: usize,
    v: LaurentVec,
    tail_cutoff: usize,
) -> Vec<(LaurentVec, Rat)> {
    let (i, singular) = match v {
        LaurentVec::Sing(i) => (i as i64, true),
        LaurentVec::Tail(i) => (i as i64, false),
    };
    let kk = k as i64;
    match generator {
        0 => {
            // L₊ = z̄z: raises i by one; the top of the singular block
            // crosses into the tail (Sing(k) ≡ Tail(0)).
            if singular {
                if (i + 1) < kk {
                    vec![(LaurentVec::Sing((i + 1) as usize), rat(1, 1))]
                } else {
                    vec![(LaurentVec::Tail(0), rat(1, 1))]
                }
            } else if ((i + 1) as usize) <= tail_cutoff {
                vec![(LaurentVec::Tail((i + 1) as usize), rat(1, 1))]
            } else {
                vec![]
            }
        }
        1 => {
            // L₋ = -∂∂̄
            if i == 0 {
                return vec![];
            }
            if singular {
                vec![(
                    LaurentVec::Sing((i - 1) as usize),
                    rat(-(i - kk) * i, 1),
                )]
            } else {
                vec![(
                    LaurentVec::Tail((i - 1) as usize),
                    rat(-i * (kk + i), 1),
                )]
            }
        }
        2 => {
            // L₃ diagonal
            let w = if singular {
                rat(-(2 * i - kk + 1), 2)
            } else {
                rat(-(2 * i + kk + 1), 2)
            };
            vec![(v, w)]
        }
        _ => panic!("generator must be 0..=2"),
    }
}

/// One-way-composition witness for the negative-charge sectors.
#[derive(Clone, Debug)]
pub struct LaurentReport {
    /// The tail span is invariant under L₊, L₋, L₃.
    pub tail_invariant: bool,
    /// The singular span leaks (under L₊) into the tail.
    pub singular_escapes: bool,
    /// The specific witness: L₊ applied to the deepest singular vector
    /// lands in the tail.
    pub escape_vector_in_tail: bool,
}

pub fn laurent_oneway_check(k: usize, tail_cutoff: usize) -> LaurentReport {
    assert!(k >= 1);
    let mut tail_invariant = true;
    for i in 0..tail_cutoff {
        for generator in 0..=2usize {
            for (image, _) in laurent_apply(k, generator, LaurentVec::Tail(i), tail_cutoff) {
                if matches!(image, LaurentVec::Sing(_)) {
                    tail_invariant = false;
                }
            }
        }
    }
    let mut singular_escapes = false;
    for i in 0..k {
        for generator in 0..=2usize {
            for (image, _) in laurent_apply(k, generator, LaurentVec::Sing(i), tail_cutoff) {
                if matches!(image, LaurentVec::Tail(_)) {
                    singular_escapes = true;
                }
            }
        }
    }
    let top = laurent_apply(k, 0, LaurentVec::Sing(k - 1), tail_cutoff);
    let escape_vector_in_tail = top
        .iter()
        .all(|(image, _)| matches!(image, LaurentVec::Tail(_)))
        && !top.is_empty();
    LaurentReport {
        tail_invariant,
        singular_escapes,
        escape_vector_in_tail,
    }
}
