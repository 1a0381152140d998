use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::exchange::TropicalSeed;
use crate::matrix::IntMatrix;
use crate::rational::Rational;

/// A rational polyhedral cone given by generating rays, each reduced to a
/// primitive integer vector in `f`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    rays: Vec<Vec<BigInt>>,
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

impl Cone {
    pub fn new(rays: Vec<Vec<BigInt>>) -> Self {
        Cone { rays: rays.iter().map(|r| primitive(r)).collect() }
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ambient_rank(&self) -> usize {
        self.rays.first().map_or(0, Vec::len)
    }

    /// Sum of the rays; lies in the relative interior of a simplicial cone.
    pub fn interior_point(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient_rank()];
        for r in &self.rays {
            for (o, x) in out.iter_mut().zip(r) {
                *o += x;
            }
        }
        out
    }

    /// Same set of rays, in any order.
    pub fn same_cone(&self, other: &Cone) -> bool {
        let mut a = self.rays.clone();
        let mut b = other.rays.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Coordinates of `p` in the ray basis, for a full-dimensional
    /// simplicial cone.
    fn coordinates(&self, p: &[BigInt]) -> Option<Vec<Rational>> {
        let r = self.ambient_rank();
        if self.rays.len() != r || p.len() != r {
            return None;
        }
        let inv = IntMatrix::from_columns(&self.rays).inverse()?;
        Some(
            inv.iter()
                .map(|row| {
                    row.iter().zip(p).fold(Rational::ZERO, |acc, (a, x)| acc + a * &Rational::from(x))
                })
                .collect(),
        )
    }

    /// Whether `p` lies in the closed cone (full-dimensional simplicial only).
    pub fn contains(&self, p: &[BigInt]) -> bool {
        self.coordinates(p).is_some_and(|x| x.iter().all(|c| !c.is_negative()))
    }

    /// Whether `p` lies in the open cone (full-dimensional simplicial only).
    pub fn contains_in_interior(&self, p: &[BigInt]) -> bool {
        self.coordinates(p).is_some_and(|x| x.iter().all(Rational::is_positive))
    }
}

/// The chamber `C_t` spanned by the g-vectors of a seed.
pub fn cluster_chamber(s: &TropicalSeed) -> Cone {
    Cone::new(s.g.columns())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn membership() {
        let c = Cone::new(vec![ints(&[1, 0]), ints(&[-1, 1])]);
        assert!(c.contains_in_interior(&c.interior_point()));
        assert!(c.contains(&ints(&[1, 0])));
        assert!(!c.contains_in_interior(&ints(&[1, 0])));
        assert!(!c.contains(&ints(&[0, -1])));
        assert!(c.same_cone(&Cone::new(vec![ints(&[-2, 2]), ints(&[3, 0])])));
    }
}
