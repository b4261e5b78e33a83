//! Error types for the operator workbench.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("invalid truncation window: p_min={p_min} p_max={p_max} m_max={m_max}")]
    InvalidWindow { p_min: i64, p_max: i64, m_max: usize },

    #[error("windows differ between operands")]
    WindowMismatch,

    #[error("interior sub-window is empty for p margin {p_margin}, m margin {m_margin}")]
    EmptyInterior { p_margin: i64, m_margin: usize },

    #[error("shift-degree bookkeeping violated: entry ({row_p},{row_m}) <- ({col_p},{col_m}) under declared shift {shift}")]
    ShiftViolation {
        shift: i64,
        row_p: i64,
        row_m: usize,
        col_p: i64,
        col_m: usize,
    },

    #[error("lambda = {lambda} is not in general position (half-integers are excluded)")]
    NotGeneralPosition { lambda: String },

    #[error("Gamma argument {arg} hits a pole")]
    GammaPole { arg: f64 },

    #[error("Cartan-Weyl convention needs m - 2*lambda - p > 0 on the window; index (p={p}, m={m}) violates it")]
    CartanWeylDomain { p: i64, m: usize },

    #[error("cannot parse `{input}` as an exact rational (use p/q form)")]
    BadRational { input: String },

    #[error("decimal input `{input}` refused; exact checks require rational text like -3/10")]
    DecimalRefused { input: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OscillatorError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("input has degree parity {found} but block p={p} hosts parity {expected}")]
    ParityMismatch { p: i64, expected: u8, found: u8 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("group element is singular (delta = 0): no Gauss decomposition")]
    SingularElement,

    #[error("determinant {det} is not 1 within 1e-12")]
    NotUnimodular { det: String },

    #[error("pole: gamma*tau + delta vanishes (|value| = {magnitude:.3e})")]
    PoleAtElement { magnitude: f64 },

    #[error("truncated action did not converge: residual {residual:.3e} above {tolerance:.3e}")]
    NonConvergent { residual: f64, tolerance: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormsError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("Macdonald function needs x > 0, got {x}")]
    NonPositiveArgument { x: f64 },

    #[error("radial moment diverges: m - 2*lambda - p = {exponent} is not positive")]
    DivergentMoment { exponent: f64 },

    #[error("quadrature spec invalid: nodes={nodes} (need >= 64), cutoff={cutoff} (need >= 12)")]
    BadQuadratureSpec { nodes: usize, cutoff: f64 },

    #[error("quadrature did not converge: refinement delta {delta:.3e}")]
    NonConvergent { delta: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InterlaceError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("kernel family needs at least {needed} contiguous blocks, got {got}")]
    WindowTooShort { needed: usize, got: usize },

    #[error("series cutoff j_max={j_max} too small for this check (needs >= {needed})")]
    InsufficientSeries { j_max: usize, needed: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum H8Error {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("Dirac arrangement inconsistent: {bilinear} != {direct} for mu={mu}")]
    DiracArrangement {
        mu: usize,
        bilinear: String,
        direct: String,
    },

    #[error("per-variable caps must be >= 2, got {cap}")]
    CapTooSmall { cap: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuiteError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("unknown suite `{name}`")]
    UnknownSuite { name: String },

    #[error("unknown report format `{name}` (expected json, csv or text)")]
    UnknownFormat { name: String },

    #[error("tolerance for class {class} must be positive, got {value}")]
    BadTolerance { class: String, value: f64 },

    #[error("config invalid: {reason}")]
    BadConfig { reason: String },
}
