use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::cone::Cone;
use super::wall::{DiagramOrigin, ScatteringDiagram, Wall};
use super::{pairing, to_bigints, ScatteringError};
use crate::exchange::FixedData;
use crate::group::{delta_of, AlgebraElement, GroupElement, PositiveVector, StructureAlgebra};
use crate::rational::Rational;

fn half(v: &[BigInt]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_negative()) {
        0
    } else {
        1
    }
}

/// Counterclockwise order of directions starting just after angle 0; the
/// positive first axis comes last.
fn angle_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        BigInt::zero().cmp(&cross)
    })
}

/// Sign of the crossing of the wall `normal^⊥` at ray `v` when moving
/// counterclockwise: `+1` when the motion direction pairs negatively with
/// the normal.
fn ccw_sign(normal: &PositiveVector, v: &[BigInt], delta: &[BigInt]) -> i8 {
    let w = [-v[1].clone(), v[0].clone()];
    if pairing(&to_bigints(normal), &w, delta).is_negative() {
        1
    } else {
        -1
    }
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    v.into_iter().map(|x| x / &g).collect()
}

struct Ray2Wall {
    normal: PositiveVector,
    rays: Vec<Vec<BigInt>>,
    log: AlgebraElement,
    initial: bool,
}

/// Crossings of a small loop around the origin, in order: (ray, wall index,
/// sign).
fn ccw_crossings(walls: &[(PositiveVector, &[Vec<BigInt>])], delta: &[BigInt]) -> Vec<(Vec<BigInt>, usize, i8)> {
    let mut out = Vec::new();
    for (i, (normal, rays)) in walls.iter().enumerate() {
        for r in rays.iter() {
            out.push((r.clone(), i, ccw_sign(normal, r, delta)));
        }
    }
    out.sort_by(|a, b| {
        angle_cmp(&a.0, &b.0)
            .then_with(|| walls[a.1].0.cmp(&walls[b.1].0))
            .then(a.1.cmp(&b.1))
    });
    out
}

/// Consistent completion of the rank-2 diagram whose initial walls are
/// `e_i^⊥` with `Ψ[e_i]^{δ_i}`, degree by degree up to `level`. At each
/// degree the loop defect `Σ c_n X_n` is cancelled by walls on the rays
/// `ℝ_{≥0}(-Bn)`. Walls with equal normal and ray are merged.
pub fn complete_rank2(fd: &FixedData, alg: &StructureAlgebra, level: u32) -> Result<ScatteringDiagram, ScatteringError> {
    if fd.rank() != 2 || fd.b().is_zero() {
        return Err(ScatteringError::NotRankTwo);
    }
    let delta = fd.delta();
    let mut walls = Vec::new();
    for i in 0..2 {
        let e = PositiveVector::basis(2, i);
        let mut f = vec![BigInt::zero(); 2];
        f[1 - i] = BigInt::from(1);
        let neg: Vec<BigInt> = f.iter().map(|x| -x).collect();
        walls.push(Ray2Wall {
            log: alg.dilog_log(&e, &delta_of(&e, fd), level)?,
            normal: e,
            rays: vec![f, neg],
            initial: true,
        });
    }

    for d in 2..=level {
        let product = {
            let view: Vec<(PositiveVector, &[Vec<BigInt>])> =
                walls.iter().map(|w| (w.normal.clone(), w.rays.as_slice())).collect();
            let mut acc = GroupElement::identity(d);
            for (_, i, sign) in ccw_crossings(&view, delta).iter().rev() {
                let log = alg.project_element(&walls[*i].log, d)?;
                let log = if *sign > 0 { log } else { log.scaled(&-Rational::ONE) };
                acc = alg.mul_exp_commuting(&acc, &log)?;
            }
            acc
        };
        let mut defect = Vec::new();
        for (m, c) in product.as_element().terms() {
            if m.is_empty() {
                continue;
            }
            if m.len() != 1 || alg.monomial_degree(m) != d {
                return Err(ScatteringError::DefectNotParallel {
                    degree: d,
                    detail: format!("defect {} is not a sum of degree-{d} generators", alg.display(product.as_element())),
                });
            }
            defect.push((alg.vector(m[0]).clone(), c.clone()));
        }
        for (n, c) in defect {
            let b = fd.b();
            let bn: Vec<BigInt> = (0..2)
                .map(|i| (0..2).map(|j| b.get(i, j) * BigInt::from(n.coords()[j])).sum())
                .collect();
            if bn.iter().all(Zero::is_zero) {
                return Err(ScatteringError::DefectNotParallel {
                    degree: d,
                    detail: format!("Bn = 0 for n = {n}"),
                });
            }
            let ray = primitive(bn.into_iter().map(|x| -x).collect());
            let (n0, _) = n.primitive_part();
            let sign = ccw_sign(&n0, &ray, delta);
            let coeff = if sign > 0 { -c } else { c };
            let term = alg.lie_element([(&n, coeff)], level)?;
            match walls.iter_mut().find(|w| !w.initial && w.normal == n0 && w.rays[0] == ray) {
                Some(w) => w.log = w.log.add(&term)?,
                None => walls.push(Ray2Wall { normal: n0, rays: vec![ray], log: term, initial: false }),
            }
        }
    }

    let mut out = Vec::with_capacity(walls.len());
    for w in walls {
        if w.log.is_zero() {
            continue;
        }
        out.push(Wall {
            element: alg.exp(&w.log)?,
            normal: w.normal,
            support: Cone::new(w.rays),
            initial: w.initial,
        });
    }
    Ok(ScatteringDiagram { level, origin: DiagramOrigin::Rank2Completion, walls: out })
}

/// Path-ordered product of a small counterclockwise loop around the origin
/// of a rank-2 diagram, starting from the gap halfway round the crossing
/// list. Uses full group multiplication and inverses.
pub fn loop_product(
    alg: &StructureAlgebra,
    delta: &[BigInt],
    diagram: &ScatteringDiagram,
) -> Result<GroupElement, ScatteringError> {
    if alg.rank() != 2 {
        return Err(ScatteringError::NotRankTwo);
    }
    let view: Vec<(PositiveVector, &[Vec<BigInt>])> =
        diagram.walls.iter().map(|w| (w.normal.clone(), w.support.rays())).collect();
    let mut crossings = ccw_crossings(&view, delta);
    let shift = crossings.len() / 2;
    crossings.rotate_left(shift);
    let mut acc = GroupElement::identity(diagram.level);
    for (_, i, sign) in crossings {
        let g = &diagram.walls[i].element;
        let factor = if sign > 0 { g.clone() } else { alg.inverse(g)? };
        acc = alg.group_mul(&factor, &acc)?;
    }
    Ok(acc)
}

/// Independent consistency pass over a rank-2 diagram.
pub fn verify_rank2(alg: &StructureAlgebra, delta: &[BigInt], diagram: &ScatteringDiagram) -> Result<(), ScatteringError> {
    let p = loop_product(alg, delta, diagram)?;
    if p.is_identity() {
        Ok(())
    } else {
        Err(ScatteringError::InconsistencyFound { loop_index: 0, directions: Vec::new(), element: alg.display(p.as_element()) })
    }
}
