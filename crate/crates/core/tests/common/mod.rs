#![allow(dead_code)]

pub mod naive;
pub mod symbolic;

use cluster_scatter::exchange::{enumerate_graph, validate_fixed_data, FixedData, OrientedExchangeGraph};
use cluster_scatter::group::PositiveVector;
use cluster_scatter::matrix::IntMatrix;
use num_bigint::BigInt;

pub fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn data(rows: &[&[i64]], delta: &[i64]) -> FixedData {
    validate_fixed_data(mat(rows), ints(delta)).unwrap()
}

pub fn v(c: &[u32]) -> PositiveVector {
    PositiveVector::new(c).unwrap()
}

pub fn a2() -> FixedData {
    data(&[&[0, 1], &[-1, 0]], &[1, 1])
}

pub fn b2() -> FixedData {
    data(&[&[0, 1], &[-2, 0]], &[1, 2])
}

pub fn g2() -> FixedData {
    data(&[&[0, 1], &[-3, 0]], &[1, 3])
}

pub fn a3() -> FixedData {
    data(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]], &[1, 1, 1])
}

pub fn kronecker() -> FixedData {
    data(&[&[0, 2], &[-2, 0]], &[1, 1])
}

/// Finite-type fixtures with their expected number of unlabeled seeds.
pub fn finite_types() -> Vec<(&'static str, FixedData, usize)> {
    vec![("A2", a2(), 5), ("B2", b2(), 6), ("G2", g2(), 8), ("A3", a3(), 14)]
}

pub fn complete_graph(fd: &FixedData) -> OrientedExchangeGraph {
    let g = enumerate_graph(fd, 10_000, 64).unwrap();
    assert!(g.is_complete());
    g
}

/// Rank at most 3 fixtures for the symbolic comparison.
pub fn oracle_fixtures() -> Vec<(&'static str, FixedData)> {
    vec![
        ("A1", data(&[&[0]], &[1])),
        ("A2", a2()),
        ("B2", b2()),
        ("G2", g2()),
        ("A3", a3()),
        ("Kronecker", kronecker()),
    ]
}
