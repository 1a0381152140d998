//! Walls and chambers of the g-vector fan, path-ordered products along
//! mutation walks, the lowest-degree obstruction for all-green loops, and
//! the consistent completion of rank-2 diagrams.
//!
//! Points of `M_ℝ` are written in the basis `f_i = δ_i⁻¹ e_i*`, so the
//! pairing with `n ∈ N` is `⟨n, m⟩ = Σ n_i m_i / δ_i`. Admissible loops are
//! never drawn; they are replaced by walks through adjacent chambers.

mod cone;
mod consistency;
mod crossing;
mod rank2;
pub mod svg;
mod wall;

pub use cone::{cluster_chamber, Cone};
pub use consistency::{cycle_basis, loop_walk, verify_loop_consistency, ConsistencyReport, LoopReport};
pub use crossing::{
    crossing_sequence, crossing_sequence_along, minimal_degree_obstruction, path_ordered_product, Crossing,
    CrossingSequence, ObstructionWitness,
};
pub use rank2::{complete_rank2, loop_product, verify_rank2};
pub use wall::{
    cluster_fan_diagram, facet_wall, factorize_wall, DiagramJson, DiagramOrigin, DilogFactor, ScatteringDiagram,
    Wall, WallJson,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exchange::ExchangeError;
use crate::group::{AlgebraError, PositiveVector};
use crate::rational::Rational;

#[derive(Debug, thiserror::Error)]
pub enum ScatteringError {
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("c-vector in direction {direction} is not sign-coherent")]
    SignIncoherent { direction: usize },
    #[error("facet of direction {direction} is not orthogonal to its normal")]
    NotOrthogonal { direction: usize },
    #[error("step {step} of the walk is not a mutation of the previous seed")]
    InvalidWalk { step: usize },
    #[error("crossing {index} is red; the obstruction needs an all-green sequence")]
    NotAllGreen { index: usize },
    #[error("empty crossing sequence")]
    EmptySequence,
    #[error("projected product differs from the lowest-degree exponential")]
    ObstructionMismatch,
    #[error("loop {loop_index} has non-identity product {element}")]
    InconsistencyFound { loop_index: usize, directions: Vec<usize>, element: String },
    #[error("rank-2 completion requires rank 2 and nonzero B")]
    NotRankTwo,
    #[error("degree-{degree} defect cannot be placed: {detail}")]
    DefectNotParallel { degree: u32, detail: String },
    #[error("malformed diagram: {0}")]
    Malformed(String),
}

impl ScatteringError {
    pub fn code(&self) -> &'static str {
        match self {
            ScatteringError::Exchange(e) => e.code(),
            ScatteringError::Algebra(e) => e.code(),
            ScatteringError::SignIncoherent { .. } => "SignIncoherent",
            ScatteringError::NotOrthogonal { .. } => "NotOrthogonal",
            ScatteringError::InvalidWalk { .. } => "InvalidWalk",
            ScatteringError::NotAllGreen { .. } => "NotAllGreen",
            ScatteringError::EmptySequence => "EmptySequence",
            ScatteringError::ObstructionMismatch => "ObstructionMismatch",
            ScatteringError::InconsistencyFound { .. } => "InconsistencyFound",
            ScatteringError::NotRankTwo => "NotRankTwo",
            ScatteringError::DefectNotParallel { .. } => "DefectNotParallel",
            ScatteringError::Malformed(_) => "Malformed",
        }
    }
}

/// `⟨n, m⟩` for `n` in the `e`-basis and `m` in the `f`-basis.
pub fn pairing(n: &[BigInt], m: &[BigInt], delta: &[BigInt]) -> Rational {
    let mut acc = Rational::ZERO;
    for ((a, b), d) in n.iter().zip(m).zip(delta) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc += &Rational::from_big(num_rational::BigRational::new(a * b, d.clone()));
    }
    acc
}

/// Converts a sign-coherent integer vector to the positive vector `±v`;
/// the flag is `true` when `v` itself was positive.
pub(crate) fn positive_part(v: &[BigInt]) -> Option<(PositiveVector, bool)> {
    let positive = v.iter().all(|x| !x.is_negative());
    let negative = v.iter().all(|x| !x.is_positive());
    if positive == negative {
        return None;
    }
    let coords: Option<Vec<u32>> = v.iter().map(|x| u32::try_from(x.abs()).ok()).collect();
    Some((PositiveVector::new(&coords?)?, positive))
}

pub(crate) fn to_bigints(n: &PositiveVector) -> Vec<BigInt> {
    n.coords().iter().map(|&c| BigInt::from(c)).collect()
}
