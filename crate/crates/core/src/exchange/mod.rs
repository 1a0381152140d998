//! Exact integer linear algebra for cluster patterns.
//!
//! A [`FixedData`] pins the exchange matrix `B` at the root, a decomposition
//! `B = Δ·Ω` with `Ω` skew-symmetric, and the minimal skew-symmetrizer `D`.
//! [`TropicalSeed`]s carry the `(B_t, C_t, G_t)` triple along a mutation path
//! and [`enumerate_graph`] closes them into the oriented exchange graph.

mod graph;
mod seed;

pub use graph::{
    certify_acyclic, enumerate_graph, AcyclicityCertificate, Edge, GraphStatus,
    OrientedExchangeGraph, Vertex,
};
pub use seed::{canonical_key, is_green, mutate_seed, SeedKey, TropicalSeed};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;
use crate::rational::Rational;

#[derive(Debug, thiserror::Error)]
pub enum ExchangeError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("exchange matrix admits no positive skew-symmetrizer")]
    NotSkewSymmetrizable,
    #[error("Δ⁻¹B is not skew-symmetric")]
    BadDecomposition,
    #[error("direction {direction} out of range for rank {rank}")]
    DirectionOutOfRange { direction: usize, rank: usize },
    #[error("c-vector in direction {direction} is not sign-coherent")]
    SignIncoherent { direction: usize },
    #[error("enumeration budget exceeded ({} vertices found)", .0.vertex_count())]
    BudgetExceeded(Box<OrientedExchangeGraph>),
    #[error("directed cycle through {} unlabeled seeds", .0.len())]
    CycleFound(Vec<SeedKey>),
    #[error("root seed has incoming green edges")]
    RootNotSource,
}

impl ExchangeError {
    pub fn code(&self) -> &'static str {
        match self {
            ExchangeError::InvalidInput(_) => "InvalidInput",
            ExchangeError::NotSkewSymmetrizable => "NotSkewSymmetrizable",
            ExchangeError::BadDecomposition => "BadDecomposition",
            ExchangeError::DirectionOutOfRange { .. } => "DirectionOutOfRange",
            ExchangeError::SignIncoherent { .. } => "SignIncoherent",
            ExchangeError::BudgetExceeded(_) => "BudgetExceeded",
            ExchangeError::CycleFound(_) => "CycleFound",
            ExchangeError::RootNotSource => "RootNotSource",
        }
    }
}

/// Root exchange matrix together with its decomposition data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedData {
    b: IntMatrix,
    delta: Vec<BigInt>,
    omega: Vec<Vec<Rational>>,
    symmetrizer: Vec<BigInt>,
}

impl FixedData {
    pub fn rank(&self) -> usize {
        self.b.size()
    }

    /// Exchange matrix at the root.
    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    /// Diagonal of `Δ`.
    pub fn delta(&self) -> &[BigInt] {
        &self.delta
    }

    /// The skew-symmetric form `Ω = Δ⁻¹B`, so that `{e_i, e_j} = Ω[i][j]`.
    pub fn omega(&self) -> &[Vec<Rational>] {
        &self.omega
    }

    /// Diagonal of the skew-symmetrizer `D` (`D·B` skew-symmetric).
    pub fn symmetrizer(&self) -> &[BigInt] {
        &self.symmetrizer
    }

    pub fn root_seed(&self) -> TropicalSeed {
        TropicalSeed::root(self.b.clone())
    }

    /// Replaces the computed minimal symmetrizer by a caller-supplied one.
    pub fn with_symmetrizer(mut self, d: Vec<BigInt>) -> Result<Self, ExchangeError> {
        if d.len() != self.rank() || d.iter().any(|x| !x.is_positive()) {
            return Err(ExchangeError::InvalidInput(
                "D must have one positive entry per direction".into(),
            ));
        }
        if !self.b.scale_rows(&d).is_skew_symmetric() {
            return Err(ExchangeError::NotSkewSymmetrizable);
        }
        self.symmetrizer = d;
        Ok(self)
    }
}

/// Checks `B = Δ·Ω` with `Ω` skew-symmetric and computes the minimal
/// positive skew-symmetrizer of `B` (primitive on each connected component).
pub fn validate_fixed_data(b: IntMatrix, delta: Vec<BigInt>) -> Result<FixedData, ExchangeError> {
    let r = b.size();
    if r == 0 {
        return Err(ExchangeError::InvalidInput("rank must be positive".into()));
    }
    if delta.len() != r {
        return Err(ExchangeError::InvalidInput(format!(
            "delta has length {}, expected {r}",
            delta.len()
        )));
    }
    if delta.iter().any(|d| !d.is_positive()) {
        return Err(ExchangeError::InvalidInput("delta entries must be positive".into()));
    }
    let symmetrizer = minimal_symmetrizer(&b).ok_or(ExchangeError::NotSkewSymmetrizable)?;

    let omega: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| Rational::from_big(num_rational::BigRational::new(b.get(i, j).clone(), delta[i].clone())))
                .collect()
        })
        .collect();
    let skew = (0..r).all(|i| (0..r).all(|j| omega[i][j] == -&omega[j][i]));
    if !skew {
        return Err(ExchangeError::BadDecomposition);
    }
    Ok(FixedData { b, delta, omega, symmetrizer })
}

/// Solves `d_i b_ij = -d_j b_ji` component by component.
fn minimal_symmetrizer(b: &IntMatrix) -> Option<Vec<BigInt>> {
    let r = b.size();
    for i in 0..r {
        if !b.get(i, i).is_zero() {
            return None;
        }
        for j in 0..r {
            let (x, y) = (b.get(i, j), b.get(j, i));
            if x.is_zero() != y.is_zero() || (!x.is_zero() && x.signum() == y.signum()) {
                return None;
            }
        }
    }
    let mut ratio: Vec<Option<Rational>> = vec![None; r];
    let mut out = vec![BigInt::zero(); r];
    for start in 0..r {
        if ratio[start].is_some() {
            continue;
        }
        ratio[start] = Some(Rational::ONE);
        let mut component = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = ratio[i].clone().unwrap();
            for j in 0..r {
                if b.get(i, j).is_zero() {
                    continue;
                }
                // d_j = -d_i b_ij / b_ji
                let dj = &(&di * &Rational::from(b.get(i, j))) / &(-Rational::from(b.get(j, i)));
                match &ratio[j] {
                    Some(existing) if *existing != dj => return None,
                    Some(_) => {}
                    None => {
                        ratio[j] = Some(dj);
                        component.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        let lcm_den = component
            .iter()
            .fold(BigInt::one(), |acc, &i| acc.lcm(&ratio[i].as_ref().unwrap().denom()));
        let scaled: Vec<BigInt> = component
            .iter()
            .map(|&i| {
                let q = ratio[i].as_ref().unwrap();
                q.numer() * (&lcm_den / q.denom())
            })
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, v) in component.iter().zip(scaled) {
            out[i] = v / &g;
        }
    }
    Some(out)
}
