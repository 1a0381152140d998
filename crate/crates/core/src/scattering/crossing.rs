use serde::{Deserialize, Serialize};

use super::{positive_part, ScatteringError};
use crate::exchange::{canonical_key, mutate_seed, FixedData, TropicalSeed};
use crate::group::{delta_of, AlgebraElement, GroupElement, PositiveVector, StructureAlgebra};
use crate::rational::Rational;

/// Crossing a wall with normal `normal`: `sign = +1` when moving from the
/// side `⟨n,·⟩ > 0` to `⟨n,·⟩ < 0` (a green mutation), `-1` otherwise.
/// The wall element is `Ψ[normal]^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub normal: PositiveVector,
    pub sign: i8,
    pub exponent: Rational,
}

/// The walls crossed along a walk, first crossing first. `directions` keeps
/// the mutation direction of each step when the sequence came from a walk.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingSequence {
    pub crossings: Vec<Crossing>,
    #[serde(default)]
    pub directions: Vec<usize>,
}

impl CrossingSequence {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn is_all_green(&self) -> bool {
        self.crossings.iter().all(|c| c.sign > 0)
    }
}

fn crossing_at(fd: &FixedData, s: &TropicalSeed, k: usize) -> Result<Crossing, ScatteringError> {
    let (normal, green) = positive_part(&s.c_vector(k)).ok_or(ScatteringError::SignIncoherent { direction: k })?;
    let exponent = delta_of(&normal, fd);
    Ok(Crossing { normal, sign: if green { 1 } else { -1 }, exponent })
}

/// Mutates `start` along `directions`, recording the wall crossed by each
/// step. Returns the sequence and the final seed.
pub fn crossing_sequence_along(
    fd: &FixedData,
    start: &TropicalSeed,
    directions: &[usize],
) -> Result<(CrossingSequence, TropicalSeed), ScatteringError> {
    let mut s = start.clone();
    let mut seq = CrossingSequence::default();
    for &k in directions {
        seq.crossings.push(crossing_at(fd, &s, k)?);
        seq.directions.push(k);
        s = mutate_seed(fd, &s, k)?;
    }
    Ok((seq, s))
}

/// Crossings along a walk given as consecutive seeds. Each seed must be a
/// single mutation of its predecessor, up to relabeling.
pub fn crossing_sequence(fd: &FixedData, walk: &[TropicalSeed]) -> Result<CrossingSequence, ScatteringError> {
    let mut seq = CrossingSequence::default();
    for (step, pair) in walk.windows(2).enumerate() {
        let (s, t) = (&pair[0], &pair[1]);
        let target = canonical_key(t);
        let mut found = None;
        for k in 0..s.rank() {
            if canonical_key(&mutate_seed(fd, s, k)?) == target {
                found = Some(k);
                break;
            }
        }
        let k = found.ok_or(ScatteringError::InvalidWalk { step: step + 1 })?;
        seq.crossings.push(crossing_at(fd, s, k)?);
        seq.directions.push(k);
    }
    Ok(seq)
}

/// `p_γ = Ψ[n_s]^{ε_s e_s} ⋯ Ψ[n_1]^{ε_1 e_1}` in `G^{≤level}`.
pub fn path_ordered_product(
    alg: &StructureAlgebra,
    seq: &CrossingSequence,
    level: u32,
) -> Result<GroupElement, ScatteringError> {
    let mut acc = GroupElement::identity(level);
    for c in seq.crossings.iter().rev() {
        if c.normal.degree() > level {
            continue;
        }
        let power = if c.sign > 0 { c.exponent.clone() } else { -c.exponent.clone() };
        acc = alg.mul_dilog(&acc, &c.normal, &power)?;
    }
    Ok(acc)
}

/// Result of projecting an all-green product to its lowest degree `level`:
/// there it equals `exp(witness)` with `witness = Σ_{deg n = level} e_n X_n`,
/// which is nonzero, so the product is not the identity.
#[derive(Clone)]
pub struct ObstructionWitness {
    pub level: u32,
    pub witness: AlgebraElement,
    pub projected: GroupElement,
}

pub fn minimal_degree_obstruction(
    alg: &StructureAlgebra,
    seq: &CrossingSequence,
) -> Result<ObstructionWitness, ScatteringError> {
    if seq.is_empty() {
        return Err(ScatteringError::EmptySequence);
    }
    if let Some(index) = seq.crossings.iter().position(|c| c.sign <= 0) {
        return Err(ScatteringError::NotAllGreen { index });
    }
    if seq.crossings.iter().any(|c| !c.exponent.is_positive()) {
        return Err(ScatteringError::Malformed("wall exponents must be positive".into()));
    }
    let level = seq.crossings.iter().map(|c| c.normal.degree()).min().expect("nonempty");
    let projected = path_ordered_product(alg, seq, level)?;
    let witness = alg.lie_element(
        seq.crossings.iter().filter(|c| c.normal.degree() == level).map(|c| (&c.normal, c.exponent.clone())),
        level,
    )?;
    if witness.is_zero() || *projected.as_element() != *alg.exp(&witness)?.as_element() || projected.is_identity() {
        return Err(ScatteringError::ObstructionMismatch);
    }
    Ok(ObstructionWitness { level, witness, projected })
}
