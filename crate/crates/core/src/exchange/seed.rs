use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{ExchangeError, FixedData};
use crate::matrix::{pos, IntMatrix};

/// The tropical data `(B_t, C_t, G_t)` at a vertex of the exchange tree,
/// recorded together with the mutation path that reached it from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalSeed {
    pub b: IntMatrix,
    pub c: IntMatrix,
    pub g: IntMatrix,
    pub path: Vec<usize>,
}

impl TropicalSeed {
    pub fn root(b: IntMatrix) -> Self {
        let r = b.size();
        TropicalSeed { b, c: IntMatrix::identity(r), g: IntMatrix::identity(r), path: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.b.size()
    }

    pub fn c_vector(&self, k: usize) -> Vec<BigInt> {
        self.c.column(k)
    }

    pub fn g_vector(&self, k: usize) -> Vec<BigInt> {
        self.g.column(k)
    }

    /// Applies a simultaneous relabeling: new label `i` is old label `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> TropicalSeed {
        let cols = |m: &IntMatrix| IntMatrix::from_columns(&perm.iter().map(|&j| m.column(j)).collect::<Vec<_>>());
        TropicalSeed { b: self.b.permuted(perm), c: cols(&self.c), g: cols(&self.g), path: self.path.clone() }
    }

    /// Label in `self` of the g-vector `g`, if present.
    pub fn label_of_g_vector(&self, g: &[BigInt]) -> Option<usize> {
        (0..self.rank()).find(|&j| self.g.column(j) == g)
    }

    /// Sign of the `k`-th c-vector: `Some(true)` positive, `Some(false)`
    /// negative, `None` if mixed or zero.
    fn c_sign(&self, k: usize) -> Option<bool> {
        let col = self.c.column(k);
        let nonneg = col.iter().all(|x| !x.is_negative());
        let nonpos = col.iter().all(|x| !x.is_positive());
        match (nonneg, nonpos) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        }
    }
}

/// Mutation in direction `k` (0-based) of the `B`, `C` and `G` matrices.
pub fn mutate_seed(fd: &FixedData, s: &TropicalSeed, k: usize) -> Result<TropicalSeed, ExchangeError> {
    let r = s.rank();
    if k >= r {
        return Err(ExchangeError::DirectionOutOfRange { direction: k, rank: r });
    }
    let b = &s.b;

    let mut b_new = b.clone();
    for i in 0..r {
        for j in 0..r {
            let v = if i == k || j == k {
                -b.get(i, j)
            } else {
                let (bik, bkj) = (b.get(i, k), b.get(k, j));
                b.get(i, j) + pos(bik) * pos(bkj) - pos(&-bik) * pos(&-bkj)
            };
            b_new.set(i, j, v);
        }
    }

    let mut c_new = s.c.clone();
    for i in 0..r {
        let cik = s.c.get(i, k);
        for j in 0..r {
            let v = if j == k {
                -cik
            } else {
                let bkj = b.get(k, j);
                s.c.get(i, j) + cik * pos(bkj) + pos(&-cik) * bkj
            };
            c_new.set(i, j, v);
        }
    }

    // g'_k = -g_k + sum_i [b_ik]_+ g_i - sum_j [c_jk]_+ b0_j
    let b0 = fd.b();
    let mut g_new = s.g.clone();
    for row in 0..r {
        let mut v = -s.g.get(row, k);
        for i in 0..r {
            let bik = pos(b.get(i, k));
            if !bik.is_zero() {
                v += bik * s.g.get(row, i);
            }
        }
        for j in 0..r {
            let cjk = pos(s.c.get(j, k));
            if !cjk.is_zero() {
                v -= cjk * b0.get(row, j);
            }
        }
        g_new.set(row, k, v);
    }

    let mut path = s.path.clone();
    path.push(k);
    Ok(TropicalSeed { b: b_new, c: c_new, g: g_new, path })
}

/// Whether mutation in direction `k` is green (the `k`-th c-vector is
/// positive).
pub fn is_green(s: &TropicalSeed, k: usize) -> Result<bool, ExchangeError> {
    if k >= s.rank() {
        return Err(ExchangeError::DirectionOutOfRange { direction: k, rank: s.rank() });
    }
    s.c_sign(k).ok_or(ExchangeError::SignIncoherent { direction: k })
}

/// Identity of an unlabeled seed: g-vectors sorted lexicographically, and
/// `B_t` conjugated by the sorting permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey {
    pub g_vectors: Vec<Vec<BigInt>>,
    pub b: IntMatrix,
}

impl SeedKey {
    /// Short human label, e.g. `(1,0)|(0,1)`.
    pub fn label(&self) -> String {
        self.g_vectors
            .iter()
            .map(|g| format!("({})", g.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// Sorting permutation of the g-vector columns.
pub(crate) fn sort_permutation(s: &TropicalSeed) -> Vec<usize> {
    let cols = s.g.columns();
    let mut perm: Vec<usize> = (0..s.rank()).collect();
    perm.sort_by(|&a, &b| cols[a].cmp(&cols[b]).then(a.cmp(&b)));
    perm
}

pub fn canonical_key(s: &TropicalSeed) -> SeedKey {
    let perm = sort_permutation(s);
    SeedKey { g_vectors: perm.iter().map(|&j| s.g.column(j)).collect(), b: s.b.permuted(&perm) }
}
