//! Naive model of the truncated enveloping algebra: words in the
//! generators, rewritten until sorted.

use std::collections::BTreeMap;

use cluster_scatter::group::{AlgebraElement, PositiveVector, StructureAlgebra};
use cluster_scatter::rational::Rational;

pub type Words = BTreeMap<Vec<PositiveVector>, Rational>;

pub struct Naive {
    pub omega: Vec<Vec<Rational>>,
    pub level: u32,
}

impl Naive {
    pub fn bracket(&self, a: &PositiveVector, b: &PositiveVector) -> Rational {
        let mut acc = Rational::ZERO;
        for (i, x) in a.coords().iter().enumerate() {
            for (j, y) in b.coords().iter().enumerate() {
                acc += &(&self.omega[i][j] * &Rational::integer((*x as i64) * (*y as i64)));
            }
        }
        acc
    }

    pub fn degree(w: &[PositiveVector]) -> u32 {
        w.iter().map(PositiveVector::degree).sum()
    }

    pub fn push(out: &mut Words, w: Vec<PositiveVector>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = out.entry(w.clone()).or_insert(Rational::ZERO);
        *e += &c;
        if e.is_zero() {
            out.remove(&w);
        }
    }

    pub fn normal_form(&self, input: Words) -> Words {
        let mut pending: Vec<(Vec<PositiveVector>, Rational)> = input.into_iter().collect();
        let mut done = Words::new();
        while let Some((w, c)) = pending.pop() {
            if Self::degree(&w) > self.level {
                continue;
            }
            match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
                None => Self::push(&mut done, w, c),
                Some(i) => {
                    let (a, b) = (w[i].clone(), w[i + 1].clone());
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    pending.push((swapped, c.clone()));
                    let k = self.bracket(&a, &b);
                    if !k.is_zero() {
                        let mut merged = w[..i].to_vec();
                        merged.push(a.checked_add(&b).unwrap());
                        merged.extend_from_slice(&w[i + 2..]);
                        pending.push((merged, &c * &k));
                    }
                }
            }
        }
        done
    }

    pub fn mul(&self, a: &Words, b: &Words) -> Words {
        let mut out = Words::new();
        for (u, x) in a {
            for (w, y) in b {
                let mut cat = u.clone();
                cat.extend_from_slice(w);
                Self::push(&mut out, cat, x * y);
            }
        }
        self.normal_form(out)
    }

    pub fn exp(&self, lie: &Words) -> Words {
        let mut out = Words::from([(Vec::new(), Rational::ONE)]);
        let mut power = out.clone();
        for k in 1..=self.level {
            power = self.mul(&power, lie);
            for (w, c) in &power {
                Self::push(&mut out, w.clone(), c / &factorial(k));
            }
        }
        out
    }

    pub fn dilog(&self, n: &PositiveVector, c: &Rational) -> Words {
        let mut lie = Words::new();
        let mut j = 1;
        while j * n.degree() <= self.level {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            Self::push(&mut lie, vec![n.scaled(j)], c * &Rational::new(sign, (j * j) as i64));
            j += 1;
        }
        self.exp(&lie)
    }
}

fn factorial(k: u32) -> Rational {
    Rational::integer((1..=k as i64).product())
}

pub fn engine_words(alg: &StructureAlgebra, a: &AlgebraElement) -> Words {
    alg.expanded_terms(a).into_iter().collect()
}
