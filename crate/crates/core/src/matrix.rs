//! Dense square matrices over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::Rational;

/// An `n × n` integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `None` if the rows do not form a square.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Some(IntMatrix { n, data })
    }

    pub fn from_columns(cols: &[Vec<BigInt>]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, v) in col.iter().enumerate() {
                m.data[i * n + j] = v.clone();
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Left multiplication by a diagonal matrix.
    pub fn scale_rows(&self, diag: &[BigInt]) -> IntMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[i * self.n + j] *= &diag[i];
            }
        }
        out
    }

    /// Conjugation by a relabeling: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(perm[i], perm[j]).clone());
            }
        }
        out
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// Exact inverse over the rationals, `None` if singular.
    pub fn inverse(&self) -> Option<Vec<Vec<Rational>>> {
        let n = self.n;
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = self.row(i).iter().map(Rational::from).collect();
                row.extend((0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in 0..2 * n {
                        let delta = &factor * &aug[col][c];
                        aug[r][c] -= &delta;
                    }
                }
            }
        }
        Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `[x]_+`
pub(crate) fn pos(x: &BigInt) -> BigInt {
    if x.is_positive() {
        x.clone()
    } else {
        BigInt::zero()
    }
}

/// JSON-friendly integers: plain numbers when they fit in `i64`, decimal
/// strings otherwise.
pub(crate) mod int_serde {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(crate) enum IntLit {
        Num(i64),
        Str(String),
    }

    pub(crate) fn to_lit(v: &BigInt) -> IntLit {
        match v.to_i64() {
            Some(x) => IntLit::Num(x),
            None => IntLit::Str(v.to_string()),
        }
    }

    pub(crate) fn from_lit<E: serde::de::Error>(lit: IntLit) -> Result<BigInt, E> {
        match lit {
            IntLit::Num(x) => Ok(BigInt::from(x)),
            IntLit::Str(s) => s.parse().map_err(E::custom),
        }
    }

    pub(crate) fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_lit))
    }

    pub(crate) fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<IntLit>::deserialize(d)?.into_iter().map(from_lit).collect()
    }

    pub(crate) fn serialize_nested<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|row| row.iter().map(to_lit).collect::<Vec<_>>()))
    }

    pub(crate) fn deserialize_nested<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<IntLit>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(from_lit).collect())
            .collect()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        int_serde::serialize_nested(&self.rows(), s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = int_serde::deserialize_nested(d)?;
        IntMatrix::from_rows(&rows).ok_or_else(|| serde::de::Error::custom("matrix is not square"))
    }
}
