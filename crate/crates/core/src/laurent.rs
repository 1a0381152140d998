//! Cluster variables with principal coefficients as explicit Laurent
//! polynomials, used to cross-check the tropical recurrences.
//!
//! Variables are `x_1..x_r` followed by `y_1..y_r`; exponents of `y` stay
//! nonnegative.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exchange::FixedData;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("exchange relation division is not exact")]
    NonLaurent,
    #[error("polynomial is not homogeneous for the g-vector grading")]
    Inhomogeneous,
    #[error("direction {direction} out of range for rank {rank}")]
    DirectionOutOfRange { direction: usize, rank: usize },
}

/// Sparse Laurent polynomial with integer coefficients. Displayed with
/// variables `z1, z2, ...` in storage order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<i32>, coeff: BigInt) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn shifted(&self, by: &[i32]) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Exact quotient `self / d`. Both sides are shifted into the
    /// polynomial ring; once `d` has no monomial factor, divisibility in the
    /// Laurent ring is divisibility of polynomials, decided by top reduction.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if d.is_zero() {
            return Err(LaurentError::NonLaurent);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        let a_min = self.min_exponents();
        let d_min = d.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shifted(&neg(&a_min));
        let div = d.shifted(&neg(&d_min));
        let (lead_e, lead_c) = div.terms.iter().next_back().expect("nonzero");
        let mut q = LaurentPoly::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return Err(LaurentError::NonLaurent);
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(LaurentError::NonLaurent);
            }
            let qe: Vec<i32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let t = LaurentPoly::monomial(qe.clone(), qc.clone());
            rem = rem.add(&t.mul(&div).scaled(&-BigInt::one()));
            q.add_term(qe, qc);
        }
        let shift: Vec<i32> = a_min.iter().zip(&d_min).map(|(a, b)| a - b).collect();
        Ok(q.shifted(&shift))
    }

    pub fn scaled(&self, c: &BigInt) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Sets the last `count` variables to 1.
    pub fn specialize_tail(&self, count: usize) -> LaurentPoly {
        let keep = self.nvars - count;
        let mut out = LaurentPoly::zero(keep);
        for (e, c) in &self.terms {
            out.add_term(e[..keep].to_vec(), c.clone());
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (j, a) in e.iter().enumerate() {
                if *a != 0 {
                    write!(f, "*z{}^{a}", j + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// Elements of the tropical semifield `Trop(y_1..y_r)` as exponent vectors.
mod trop {
    pub fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn pow(a: &[i64], k: i64) -> Vec<i64> {
        a.iter().map(|x| x * k).collect()
    }

    pub fn oplus_one(a: &[i64]) -> Vec<i64> {
        a.iter().map(|&x| x.min(0)).collect()
    }
}

/// Cluster, principal coefficients and exchange matrix at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSeed {
    pub b: IntMatrix,
    pub cluster: Vec<LaurentPoly>,
    /// `y`-exponent vector of each coefficient.
    pub coefficients: Vec<Vec<i64>>,
}

impl SymbolicSeed {
    pub fn root(b: &IntMatrix) -> Self {
        let r = b.size();
        SymbolicSeed {
            b: b.clone(),
            cluster: (0..r).map(|i| LaurentPoly::variable(2 * r, i)).collect(),
            coefficients: (0..r).map(|j| (0..r).map(|i| i64::from(i == j)).collect()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.b.size()
    }

    /// The cluster with `y ↦ 1`, as a sorted list.
    pub fn unlabeled_cluster(&self) -> Vec<LaurentPoly> {
        let mut out: Vec<LaurentPoly> = self.cluster.iter().map(|x| x.specialize_tail(self.rank())).collect();
        out.sort();
        out
    }
}

fn small(x: &BigInt) -> i32 {
    i32::try_from(x).expect("exchange matrix entry fits in i32")
}

/// Mutation by the exchange relation
/// `x_k x_k' = y^{[c_k]_+} Π x_i^{[b_ik]_+} + y^{[-c_k]_+} Π x_i^{[-b_ik]_+}`
/// and tropical coefficient mutation.
pub fn symbolic_mutate(s: &SymbolicSeed, k: usize) -> Result<SymbolicSeed, LaurentError> {
    let r = s.rank();
    if k >= r {
        return Err(LaurentError::DirectionOutOfRange { direction: k, rank: r });
    }
    let nv = 2 * r;
    let yk = &s.coefficients[k];
    let y_mono = |exps: Vec<i64>| {
        let mut e = vec![0i32; nv];
        for (j, v) in exps.iter().enumerate() {
            e[r + j] = i32::try_from(*v).expect("coefficient exponent fits in i32");
        }
        LaurentPoly::monomial(e, BigInt::one())
    };
    let mut plus = y_mono(yk.iter().map(|&x| x.max(0)).collect());
    let mut minus = y_mono(yk.iter().map(|&x| (-x).max(0)).collect());
    for i in 0..r {
        let bik = small(s.b.get(i, k));
        for _ in 0..bik.max(0) {
            plus = plus.mul(&s.cluster[i]);
        }
        for _ in 0..(-bik).max(0) {
            minus = minus.mul(&s.cluster[i]);
        }
    }
    let new_var = plus.add(&minus).div_exact(&s.cluster[k])?;
    if new_var.terms.keys().any(|e| e[r..].iter().any(|&a| a < 0)) {
        return Err(LaurentError::NonLaurent);
    }

    let mut coefficients = Vec::with_capacity(r);
    for j in 0..r {
        let c = if j == k {
            trop::pow(yk, -1)
        } else {
            let bkj = i64::from(small(s.b.get(k, j)));
            let c = trop::mul(&s.coefficients[j], &trop::pow(yk, bkj.max(0)));
            trop::mul(&c, &trop::pow(&trop::oplus_one(yk), -bkj))
        };
        coefficients.push(c);
    }

    let mut b = s.b.clone();
    for i in 0..r {
        for j in 0..r {
            let v = if i == k || j == k {
                -s.b.get(i, j)
            } else {
                let (bik, bkj) = (s.b.get(i, k), s.b.get(k, j));
                s.b.get(i, j) + (bik.abs() * bkj + bik * bkj.abs()) / 2
            };
            b.set(i, j, v);
        }
    }

    let mut cluster = s.cluster.clone();
    cluster[k] = new_var;
    Ok(SymbolicSeed { b, cluster, coefficients })
}

/// The degree of `v` for `deg x_i = e_i`, `deg y_j = -b_j` (columns of the
/// root matrix).
pub fn extract_g_vector(v: &LaurentPoly, fd: &FixedData) -> Result<Vec<BigInt>, LaurentError> {
    let r = fd.rank();
    let b0 = fd.b();
    let mut degree: Option<Vec<BigInt>> = None;
    for (e, _) in v.terms() {
        let mut d: Vec<BigInt> = e[..r].iter().map(|&a| BigInt::from(a)).collect();
        for j in 0..r {
            let yj = BigInt::from(e[r + j]);
            for (i, slot) in d.iter_mut().enumerate() {
                *slot -= &yj * b0.get(i, j);
            }
        }
        match &degree {
            None => degree = Some(d),
            Some(prev) if *prev != d => return Err(LaurentError::Inhomogeneous),
            Some(_) => {}
        }
    }
    degree.ok_or(LaurentError::Inhomogeneous)
}

pub fn extract_g_matrix(s: &SymbolicSeed, fd: &FixedData) -> Result<IntMatrix, LaurentError> {
    let cols = s.cluster.iter().map(|x| extract_g_vector(x, fd)).collect::<Result<Vec<_>, _>>()?;
    Ok(IntMatrix::from_columns(&cols))
}

/// Column `j` is the `y`-exponent vector of the `j`-th coefficient.
pub fn extract_c_matrix(s: &SymbolicSeed) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> =
        s.coefficients.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::tests::mat;
    use crate::exchange::validate_fixed_data;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn a2_first_mutation() {
        let b = mat(&[&[0, 1], &[-1, 0]]);
        let fd = validate_fixed_data(b.clone(), ints(&[1, 1])).unwrap();
        let s = symbolic_mutate(&SymbolicSeed::root(&b), 0).unwrap();
        // (y1 + x2) / x1
        let expected = LaurentPoly::monomial(vec![-1, 0, 1, 0], BigInt::one())
            .add(&LaurentPoly::monomial(vec![-1, 1, 0, 0], BigInt::one()));
        assert_eq!(s.cluster[0], expected);
        assert_eq!(extract_g_vector(&s.cluster[0], &fd).unwrap(), ints(&[-1, 1]));
        assert_eq!(extract_c_matrix(&s).column(0), ints(&[-1, 0]));
        assert_eq!(symbolic_mutate(&s, 0).unwrap(), SymbolicSeed::root(&b));
    }

    #[test]
    fn rank_one() {
        let b = mat(&[&[0]]);
        let s = symbolic_mutate(&SymbolicSeed::root(&b), 0).unwrap();
        let expected = LaurentPoly::monomial(vec![-1, 1], BigInt::one())
            .add(&LaurentPoly::monomial(vec![-1, 0], BigInt::one()));
        assert_eq!(s.cluster[0], expected);
    }

    #[test]
    fn division() {
        let x = LaurentPoly::variable(2, 0);
        let y = LaurentPoly::variable(2, 1);
        let one = LaurentPoly::monomial(vec![0, 0], BigInt::one());
        let p = x.add(&y);
        let q = x.add(&one);
        assert_eq!(p.mul(&q).div_exact(&q).unwrap(), p);
        assert_eq!(p.div_exact(&q), Err(LaurentError::NonLaurent));
        let xinv = LaurentPoly::monomial(vec![-1, 0], BigInt::one());
        assert_eq!(p.mul(&xinv).div_exact(&p).unwrap(), xinv);
        assert_eq!(p.scaled(&BigInt::from(3)).div_exact(&p.scaled(&BigInt::from(2))), Err(LaurentError::NonLaurent));
    }
}
