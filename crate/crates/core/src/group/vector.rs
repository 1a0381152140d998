use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// An element of `N⁺`: nonnegative coordinates in the basis `e_1…e_r`, not
/// all zero.
///
/// Ordered by degree, then by coordinates with earlier basis vectors first,
/// so that `e_1 < e_2 < … < e_r < (degree 2 vectors) < …`. This is the order
/// of letters in PBW monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PositiveVector(SmallVec<[u32; 4]>);

impl PositiveVector {
    /// `None` if all coordinates vanish or the slice is empty.
    pub fn new(coords: &[u32]) -> Option<Self> {
        if coords.iter().all(|&c| c == 0) {
            None
        } else {
            Some(PositiveVector(SmallVec::from_slice(coords)))
        }
    }

    /// The basis vector `e_i` (0-based) of a rank-`rank` lattice.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = SmallVec::from_elem(0, rank);
        v[i] = 1;
        PositiveVector(v)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn content(&self) -> u32 {
        self.0.iter().fold(0u32, |g, &c| g.gcd(&c))
    }

    /// Primitive elements make up `N⁺_pr`.
    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Splits `n = t·n₀` with `n₀` primitive.
    pub fn primitive_part(&self) -> (PositiveVector, u32) {
        let t = self.content();
        (PositiveVector(self.0.iter().map(|&c| c / t).collect()), t)
    }

    pub fn scaled(&self, t: u32) -> PositiveVector {
        assert!(t > 0);
        PositiveVector(self.0.iter().map(|&c| c * t).collect())
    }

    pub fn checked_add(&self, other: &PositiveVector) -> Option<PositiveVector> {
        if self.rank() != other.rank() {
            return None;
        }
        Some(PositiveVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Whether `self = t·base` for some positive integer `t`.
    pub fn multiple_of(&self, base: &PositiveVector) -> Option<u32> {
        let (prim, t) = self.primitive_part();
        let (bprim, bt) = base.primitive_part();
        (prim == bprim && t % bt == 0).then(|| t / bt)
    }

    /// All vectors of the given rank and degree, ascending.
    pub fn of_degree(rank: usize, degree: u32) -> Vec<PositiveVector> {
        fn fill(rest: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<PositiveVector>) {
            if rest == 1 {
                cur.push(left);
                out.push(PositiveVector(SmallVec::from_slice(cur)));
                cur.pop();
                return;
            }
            for c in (0..=left).rev() {
                cur.push(c);
                fill(rest - 1, left - c, cur, out);
                cur.pop();
            }
        }
        if rank == 0 || degree == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        fill(rank, degree, &mut Vec::with_capacity(rank), &mut out);
        out
    }
}

impl Ord for PositiveVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for PositiveVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `e1`, `2e1+e2`, …
impl fmt::Display for PositiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c == 1 {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "{c}e{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PositiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for PositiveVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

impl<'de> Deserialize<'de> for PositiveVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coords = Vec::<u32>::deserialize(d)?;
        PositiveVector::new(&coords).ok_or_else(|| serde::de::Error::custom("zero vector is not in N+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u32]) -> PositiveVector {
        PositiveVector::new(c).unwrap()
    }

    #[test]
    fn order_and_degree() {
        assert!(v(&[1, 0]) < v(&[0, 1]));
        assert!(v(&[0, 1]) < v(&[2, 0]));
        assert!(v(&[2, 0]) < v(&[1, 1]));
        assert_eq!(v(&[2, 1]).degree(), 3);
        assert_eq!(PositiveVector::of_degree(2, 2), vec![v(&[2, 0]), v(&[1, 1]), v(&[0, 2])]);
        assert_eq!(PositiveVector::of_degree(3, 2).len(), 6);
        let mut sorted = PositiveVector::of_degree(3, 3);
        sorted.sort();
        assert_eq!(sorted, PositiveVector::of_degree(3, 3));
    }

    #[test]
    fn primitivity() {
        assert!(v(&[2, 1]).is_primitive());
        assert!(!v(&[2, 2]).is_primitive());
        assert_eq!(v(&[4, 2]).primitive_part(), (v(&[2, 1]), 2));
        assert_eq!(v(&[4, 2]).multiple_of(&v(&[2, 1])), Some(2));
        assert_eq!(v(&[4, 2]).multiple_of(&v(&[4, 2])), Some(1));
        assert_eq!(v(&[2, 1]).multiple_of(&v(&[4, 2])), None);
        assert_eq!(v(&[2, 1]).multiple_of(&v(&[1, 1])), None);
        assert!(PositiveVector::new(&[0, 0]).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(v(&[1, 0]).to_string(), "e1");
        assert_eq!(v(&[2, 1]).to_string(), "2e1+e2");
        assert_eq!(v(&[0, 0, 3]).to_string(), "3e3");
    }
}
