//! The `N⁺`-graded Lie algebra with bracket `[X_n, X_n'] = {n,n'} X_{n+n'}`,
//! its degree truncations, and the exponential groups `G^{≤l}`.
//!
//! Group elements live inside the truncated universal enveloping algebra,
//! expanded in a PBW basis; products are associative-algebra products and
//! `exp`/`log` are finite series.

mod algebra;
mod json;
mod vector;

pub use algebra::{AlgebraElement, GroupElement, Letter, Monomial, StructureAlgebra};
pub use json::{ElementJson, TermJson};
pub use vector::PositiveVector;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::exchange::FixedData;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("truncation levels differ ({left} vs {right})")]
    LevelMismatch { left: u32, right: u32 },
    #[error("level {level} outside the supported range 1..={max}")]
    LevelTooHigh { level: u32, max: u32 },
    #[error("vector of rank {found} used with a rank-{expected} algebra")]
    RankMismatch { expected: usize, found: usize },
    #[error("exponential needs a Lie element (single generators, no constant term)")]
    NotLieElement,
    #[error("element is not in the image of exp")]
    NotGrouplike,
    #[error("generators do not commute")]
    NotCommuting,
    #[error("invalid skew form: {0}")]
    InvalidForm(String),
    #[error("malformed element: {0}")]
    Malformed(String),
}

impl AlgebraError {
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::LevelMismatch { .. } => "LevelMismatch",
            AlgebraError::LevelTooHigh { .. } => "LevelTooHigh",
            AlgebraError::RankMismatch { .. } => "RankMismatch",
            AlgebraError::NotLieElement => "NotLieElement",
            AlgebraError::NotGrouplike => "NotGrouplike",
            AlgebraError::NotCommuting => "NotCommuting",
            AlgebraError::InvalidForm(_) => "InvalidForm",
            AlgebraError::Malformed(_) => "Malformed",
        }
    }
}

impl StructureAlgebra {
    /// Algebra for the skew form `Ω` of the given data.
    pub fn for_data(fd: &FixedData, max_level: u32) -> Result<Self, AlgebraError> {
        StructureAlgebra::new(fd.omega().to_vec(), max_level)
    }
}

/// The smallest positive rational `δ` with `δ·n ∈ N°`, where `N°` is spanned
/// by `δ_i e_i`: the lcm of the rationals `δ_i / n_i` over the support of
/// `n`.
pub fn delta_exponent(n: &PositiveVector, delta: &[BigInt]) -> Rational {
    assert_eq!(n.rank(), delta.len(), "rank mismatch");
    let mut num_lcm = BigInt::one();
    let mut den_gcd: Option<BigInt> = None;
    for (c, d) in n.coords().iter().zip(delta) {
        if *c == 0 {
            continue;
        }
        let q = BigRational::new(d.clone(), BigInt::from(*c));
        num_lcm = num_lcm.lcm(q.numer());
        den_gcd = Some(match den_gcd {
            None => q.denom().clone(),
            Some(g) => g.gcd(q.denom()),
        });
    }
    Rational::from_big(BigRational::new(num_lcm, den_gcd.expect("n is nonzero")))
}

/// [`delta_exponent`] using the `Δ` of the given data.
pub fn delta_of(n: &PositiveVector, fd: &FixedData) -> Rational {
    delta_exponent(n, fd.delta())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u32]) -> PositiveVector {
        PositiveVector::new(c).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn a2(level: u32) -> StructureAlgebra {
        StructureAlgebra::new(vec![vec![q(0, 1), q(1, 1)], vec![q(-1, 1), q(0, 1)]], level).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Smallest δ = p/q (q ≤ bound) with δ n_i / δ_i integral for all i.
    fn brute_delta(n: &[u32], delta: &[i64]) -> Rational {
        let bound = 24i64;
        let mut best: Option<Rational> = None;
        for den in 1..=bound {
            for num in 1..=bound * den {
                let ok = n.iter().zip(delta).all(|(&c, &d)| (num * c as i64) % (den * d) == 0);
                if ok {
                    let cand = q(num, den);
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                    break;
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_exponent(&v(&[1, 1]), &ints(&[1, 1])), q(1, 1));
        assert_eq!(delta_exponent(&v(&[1, 1]), &ints(&[2, 1])), q(2, 1));
        assert_eq!(delta_exponent(&v(&[2, 1]), &ints(&[2, 1])), q(1, 1));
        assert_eq!(delta_exponent(&v(&[1, 0]), &ints(&[3, 1])), q(3, 1));
        assert_eq!(delta_exponent(&v(&[2, 0]), &ints(&[1, 1])), q(1, 2));
    }

    #[test]
    fn delta_matches_lattice_search() {
        for delta in [[1, 1, 1], [2, 1, 1], [1, 2, 3], [2, 2, 3], [4, 6, 1]] {
            for d in 1..=4 {
                for n in PositiveVector::of_degree(3, d) {
                    assert_eq!(
                        delta_exponent(&n, &ints(&delta)),
                        brute_delta(n.coords(), &delta),
                        "n={n}, delta={delta:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn bracket_values() {
        let alg = a2(4);
        assert_eq!(alg.bracket(&v(&[1, 0]), &v(&[0, 1])).unwrap(), (q(1, 1), v(&[1, 1])));
        assert_eq!(alg.bracket(&v(&[2, 1]), &v(&[2, 1])).unwrap().0, q(0, 1));
        // B2 with Δ = (1,2) has the same Ω.
        assert_eq!(alg.bracket(&v(&[2, 1]), &v(&[0, 1])).unwrap(), (q(2, 1), v(&[2, 2])));
        assert!(alg.bracket(&v(&[1, 0, 0]), &v(&[0, 1])).is_err());
    }

    #[test]
    fn single_straightening() {
        let alg = a2(2);
        let prod = alg.word(&[v(&[0, 1]), v(&[1, 0])], 2).unwrap();
        let expected = alg
            .word(&[v(&[1, 0]), v(&[0, 1])], 2)
            .unwrap()
            .sub(&alg.generator(&v(&[1, 1]), 2).unwrap())
            .unwrap();
        assert_eq!(prod, expected);
        assert_eq!(alg.display(&prod), "1·X_{e1}X_{e2} - 1·X_{e1+e2}");
        // Already ordered: no bracket term.
        let alg3 = a2(3);
        let ordered = alg3.word(&[v(&[1, 0]), v(&[1, 1])], 3).unwrap();
        assert_eq!(ordered.len(), 1);
        let reversed = alg3.word(&[v(&[1, 1]), v(&[1, 0])], 3).unwrap();
        assert_eq!(reversed.coefficient(&[alg3.letter(&v(&[2, 1])).unwrap()]), q(-1, 1));
    }

    #[test]
    fn level_checks() {
        let alg = a2(3);
        let a = alg.generator(&v(&[1, 0]), 2).unwrap();
        let b = alg.generator(&v(&[1, 0]), 3).unwrap();
        assert_eq!(alg.mul(&a, &b), Err(AlgebraError::LevelMismatch { left: 2, right: 3 }));
        assert!(alg.generator(&v(&[1, 0]), 4).is_err());
        let g = alg.dilog(&v(&[1, 0]), &q(1, 1), 3).unwrap();
        assert!(alg.project(&g, 4).is_err());
        assert_eq!(alg.project(&g, 3).unwrap(), g);
    }

    #[test]
    fn exp_and_log() {
        let alg = a2(2);
        assert!(alg.exp(&AlgebraElement::zero(2)).unwrap().is_identity());
        let alg1 = a2(1);
        let x1 = alg1.generator(&v(&[1, 0]), 1).unwrap();
        let e = alg1.exp(&x1).unwrap();
        assert_eq!(*e.as_element(), AlgebraElement::one(1).add(&x1).unwrap());

        let g1 = alg.exp(&alg.generator(&v(&[1, 0]), 2).unwrap()).unwrap();
        let g2 = alg.exp(&alg.generator(&v(&[0, 1]), 2).unwrap()).unwrap();
        let prod = alg.group_mul(&g1, &g2).unwrap();
        let log = alg.log(&prod).unwrap();
        let expected = alg
            .lie_element([(&v(&[1, 0]), q(1, 1)), (&v(&[0, 1]), q(1, 1)), (&v(&[1, 1]), q(1, 2))], 2)
            .unwrap();
        assert_eq!(log, expected);

        let not_lie = alg.word(&[v(&[1, 0]), v(&[0, 1])], 2).unwrap();
        assert_eq!(alg.exp(&not_lie).unwrap_err(), AlgebraError::NotLieElement);
        let not_group = AlgebraElement::one(2).add(&not_lie).unwrap();
        assert_eq!(alg.group_element(not_group).unwrap_err(), AlgebraError::NotGrouplike);
        assert_eq!(alg.log_element(&not_lie).unwrap_err(), AlgebraError::NotGrouplike);
    }

    #[test]
    fn dilog_expansions() {
        let alg1 = a2(1);
        let psi = alg1.dilog(&v(&[1, 0]), &q(1, 1), 1).unwrap();
        let x1 = alg1.generator(&v(&[1, 0]), 1).unwrap();
        assert_eq!(*psi.as_element(), AlgebraElement::one(1).add(&x1).unwrap());

        let alg = a2(2);
        let psi = alg.dilog(&v(&[1, 0]), &q(1, 1), 2).unwrap();
        let x = alg.generator(&v(&[1, 0]), 2).unwrap();
        let expected = AlgebraElement::one(2)
            .add(&x)
            .unwrap()
            .add(&alg.mul(&x, &x).unwrap().scaled(&q(1, 2)))
            .unwrap()
            .add(&alg.generator(&v(&[2, 0]), 2).unwrap().scaled(&q(-1, 4)))
            .unwrap();
        assert_eq!(*psi.as_element(), expected);
        assert!(alg.is_parallel(&psi, &v(&[1, 0])).unwrap());
        assert!(!alg.is_parallel(&psi, &v(&[0, 1])).unwrap());
    }

    #[test]
    fn dilog_inverse_and_projection() {
        let alg = a2(5);
        let n = v(&[1, 1]);
        let g = alg.dilog(&n, &q(3, 2), 5).unwrap();
        let h = alg.mul_dilog(&g, &n, &q(-3, 2)).unwrap();
        assert!(h.is_identity());
        let inv = alg.inverse(&g).unwrap();
        assert!(alg.group_mul(&g, &inv).unwrap().is_identity());
        let psi = alg.dilog(&v(&[1, 0]), &q(1, 1), 5).unwrap();
        let p = alg.project(&psi, 1).unwrap();
        let x1 = alg.generator(&v(&[1, 0]), 1).unwrap();
        assert_eq!(*p.as_element(), AlgebraElement::one(1).add(&x1).unwrap());
    }

    #[test]
    fn commuting_guard() {
        let alg = a2(3);
        let a = alg.lie_element([(&v(&[1, 0]), q(1, 1)), (&v(&[0, 1]), q(1, 1))], 3).unwrap();
        assert_eq!(
            alg.mul_exp_commuting(&GroupElement::identity(3), &a).unwrap_err(),
            AlgebraError::NotCommuting
        );
    }
}
