use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use smallvec::SmallVec;

use super::{AlgebraError, PositiveVector};
use crate::rational::Rational;

/// Index of a generator `X_n` in PBW order.
pub type Letter = u16;

/// A PBW monomial: non-decreasing letters. The empty monomial is `1`.
pub type Monomial = SmallVec<[Letter; 8]>;

type Terms = BTreeMap<Monomial, Rational>;
type Scratch = HashMap<Monomial, Rational>;

/// An element of the degree-`level` truncation of the enveloping algebra of
/// the `N⁺`-graded Lie algebra, expanded in the PBW basis.
///
/// Letters index generators in PBW order, which depends only on the rank, so
/// elements are plain values shareable between [`StructureAlgebra`]s of the
/// same rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    level: u32,
    terms: Terms,
}

impl AlgebraElement {
    pub fn zero(level: u32) -> Self {
        AlgebraElement { level, terms: Terms::new() }
    }

    pub fn one(level: u32) -> Self {
        let mut terms = Terms::new();
        terms.insert(Monomial::new(), Rational::ONE);
        AlgebraElement { level, terms }
    }

    pub fn level(&self) -> u32 {
        self.level
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[Letter]) -> Rational {
        self.terms.get(m).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&[])
    }

    /// Linear combination of single generators with no constant term.
    pub fn is_lie(&self) -> bool {
        self.terms.keys().all(|m| m.len() == 1)
    }

    pub fn scaled(&self, c: &Rational) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.level);
        }
        AlgebraElement { level: self.level, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        check_levels(self.level, other.level)?;
        let mut terms = self.terms.clone();
        for (m, v) in &other.terms {
            add_term(&mut terms, m, v);
        }
        Ok(AlgebraElement { level: self.level, terms })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.add(&other.scaled(&-Rational::ONE))
    }

    fn from_scratch(level: u32, scratch: Scratch) -> Self {
        AlgebraElement { level, terms: scratch.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }
}

fn add_term(terms: &mut Terms, m: &Monomial, v: &Rational) {
    if v.is_zero() {
        return;
    }
    match terms.get_mut(m) {
        Some(cur) => {
            *cur += v;
            if cur.is_zero() {
                terms.remove(m);
            }
        }
        None => {
            terms.insert(m.clone(), v.clone());
        }
    }
}

fn accumulate(scratch: &mut Scratch, m: Monomial, v: Rational) {
    if v.is_zero() {
        return;
    }
    match scratch.get_mut(&m) {
        Some(cur) => *cur += &v,
        None => {
            scratch.insert(m, v);
        }
    }
}

fn check_levels(a: u32, b: u32) -> Result<(), AlgebraError> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::LevelMismatch { left: a, right: b })
    }
}

/// A grouplike element `exp(a)` of `G^{≤l}` with its logarithm computed on
/// demand.
#[derive(Clone)]
pub struct GroupElement {
    element: AlgebraElement,
    log: OnceLock<AlgebraElement>,
}

impl GroupElement {
    pub fn identity(level: u32) -> Self {
        GroupElement::with_log(AlgebraElement::one(level), AlgebraElement::zero(level))
    }

    fn with_log(element: AlgebraElement, log: AlgebraElement) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(log);
        GroupElement { element, log: cell }
    }

    fn unchecked(element: AlgebraElement) -> Self {
        GroupElement { element, log: OnceLock::new() }
    }

    pub fn as_element(&self) -> &AlgebraElement {
        &self.element
    }

    pub fn into_element(self) -> AlgebraElement {
        self.element
    }

    pub fn level(&self) -> u32 {
        self.element.level
    }

    pub fn is_identity(&self) -> bool {
        self.element.terms.len() == 1 && self.element.constant_term().is_one()
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.element == other.element
    }
}

impl Eq for GroupElement {}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement(level {}, {} terms)", self.level(), self.element.len())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement(level {}, {:?})", self.level, self.terms)
    }
}

struct BracketEntry {
    coeff: Rational,
    sum: Letter,
}

/// Arithmetic context for a fixed skew form `{e_i, e_j} = Ω[i][j]`, valid up
/// to truncation level `max_level`.
///
/// Products are computed by PBW straightening: an out-of-order pair
/// `X_y X_x` (with `y > x`) is rewritten as `X_x X_y + {y,x} X_{x+y}`.
/// Straightening a monomial times a generator is memoized; the cache is
/// shared and thread-safe.
pub struct StructureAlgebra {
    rank: usize,
    max_level: u32,
    omega: Vec<Vec<Rational>>,
    generators: Vec<PositiveVector>,
    degrees: Vec<u32>,
    index: HashMap<PositiveVector, Letter>,
    brackets: Vec<Vec<Option<BracketEntry>>>,
    cache: Mutex<HashMap<(Monomial, Letter), Arc<[(Monomial, Rational)]>>>,
}

impl fmt::Debug for StructureAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructureAlgebra")
            .field("rank", &self.rank)
            .field("max_level", &self.max_level)
            .field("omega", &self.omega)
            .finish_non_exhaustive()
    }
}

impl StructureAlgebra {
    pub fn new(omega: Vec<Vec<Rational>>, max_level: u32) -> Result<Self, AlgebraError> {
        let rank = omega.len();
        if rank == 0 || omega.iter().any(|row| row.len() != rank) {
            return Err(AlgebraError::InvalidForm("Ω must be a non-empty square matrix".into()));
        }
        if (0..rank).any(|i| (0..rank).any(|j| omega[i][j] != -&omega[j][i])) {
            return Err(AlgebraError::InvalidForm("Ω must be skew-symmetric".into()));
        }
        let generators: Vec<PositiveVector> =
            (1..=max_level).flat_map(|d| PositiveVector::of_degree(rank, d)).collect();
        if generators.len() > Letter::MAX as usize {
            return Err(AlgebraError::LevelTooHigh { level: max_level, max: max_level - 1 });
        }
        let degrees = generators.iter().map(PositiveVector::degree).collect();
        let index: HashMap<PositiveVector, Letter> =
            generators.iter().enumerate().map(|(i, n)| (n.clone(), i as Letter)).collect();
        let brackets = generators
            .iter()
            .map(|a| {
                generators
                    .iter()
                    .map(|b| {
                        let sum = a.checked_add(b)?;
                        let &sum = index.get(&sum)?;
                        let coeff = pairing(&omega, a, b);
                        (!coeff.is_zero()).then_some(BracketEntry { coeff, sum })
                    })
                    .collect()
            })
            .collect();
        Ok(StructureAlgebra {
            rank,
            max_level,
            omega,
            generators,
            degrees,
            index,
            brackets,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn omega(&self) -> &[Vec<Rational>] {
        &self.omega
    }

    /// `{n, n'} = nᵀΩn'` and `n + n'`, so that `[X_n, X_n'] = {n,n'} X_{n+n'}`.
    pub fn bracket(&self, n: &PositiveVector, m: &PositiveVector) -> Result<(Rational, PositiveVector), AlgebraError> {
        self.check_rank(n)?;
        self.check_rank(m)?;
        Ok((pairing(&self.omega, n, m), n.checked_add(m).expect("ranks checked")))
    }

    fn check_rank(&self, n: &PositiveVector) -> Result<(), AlgebraError> {
        if n.rank() == self.rank {
            Ok(())
        } else {
            Err(AlgebraError::RankMismatch { expected: self.rank, found: n.rank() })
        }
    }

    fn check_level(&self, level: u32) -> Result<(), AlgebraError> {
        if level == 0 {
            return Err(AlgebraError::LevelTooHigh { level, max: self.max_level });
        }
        if level > self.max_level {
            return Err(AlgebraError::LevelTooHigh { level, max: self.max_level });
        }
        Ok(())
    }

    pub fn letter(&self, n: &PositiveVector) -> Result<Letter, AlgebraError> {
        self.check_rank(n)?;
        self.index
            .get(n)
            .copied()
            .ok_or(AlgebraError::LevelTooHigh { level: n.degree(), max: self.max_level })
    }

    pub fn vector(&self, letter: Letter) -> &PositiveVector {
        &self.generators[letter as usize]
    }

    pub fn monomial_degree(&self, m: &[Letter]) -> u32 {
        m.iter().map(|&x| self.degrees[x as usize]).sum()
    }

    /// The generator `X_n` at the given level (zero if `deg n > level`).
    pub fn generator(&self, n: &PositiveVector, level: u32) -> Result<AlgebraElement, AlgebraError> {
        self.check_level(level)?;
        self.check_rank(n)?;
        let mut out = AlgebraElement::zero(level);
        if n.degree() <= level {
            out.terms.insert(SmallVec::from_slice(&[self.letter(n)?]), Rational::ONE);
        }
        Ok(out)
    }

    /// `Σ c_n X_n` from (vector, coefficient) pairs.
    pub fn lie_element<'a>(
        &self,
        parts: impl IntoIterator<Item = (&'a PositiveVector, Rational)>,
        level: u32,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check_level(level)?;
        let mut out = AlgebraElement::zero(level);
        for (n, c) in parts {
            self.check_rank(n)?;
            if n.degree() <= level {
                add_term(&mut out.terms, &SmallVec::from_slice(&[self.letter(n)?]), &c);
            }
        }
        Ok(out)
    }

    /// Product of a sorted monomial with one generator on the right, fully
    /// straightened. Caller guarantees the total degree is within
    /// `max_level`.
    fn mul_letter(&self, u: &[Letter], x: Letter) -> Arc<[(Monomial, Rational)]> {
        match u.last() {
            None => return Arc::from(vec![(SmallVec::from_slice(&[x]), Rational::ONE)]),
            Some(&y) if y <= x => {
                let mut m: Monomial = SmallVec::from_slice(u);
                m.push(x);
                return Arc::from(vec![(m, Rational::ONE)]);
            }
            _ => {}
        }
        let key: (Monomial, Letter) = (SmallVec::from_slice(u), x);
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let (&y, prefix) = u.split_last().expect("non-empty");
        // u' y x = u' x y + {y,x} u' X_{x+y}
        let mut acc = Scratch::new();
        for (m, c) in self.mul_letter(prefix, x).iter() {
            for (m2, c2) in self.mul_letter(m, y).iter() {
                accumulate(&mut acc, m2.clone(), c * c2);
            }
        }
        if let Some(entry) = &self.brackets[y as usize][x as usize] {
            for (m, c) in self.mul_letter(prefix, entry.sum).iter() {
                accumulate(&mut acc, m.clone(), &entry.coeff * c);
            }
        }
        let result: Arc<[(Monomial, Rational)]> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.cache.lock().expect("cache poisoned").insert(key, result.clone());
        result
    }

    fn mul_monomials(&self, u: &[Letter], v: &[Letter], out: &mut Scratch, scale: &Rational) {
        let mut cur: Vec<(Monomial, Rational)> = vec![(SmallVec::from_slice(u), scale.clone())];
        for &x in v {
            let mut next = Scratch::new();
            for (m, c) in &cur {
                for (m2, c2) in self.mul_letter(m, x).iter() {
                    accumulate(&mut next, m2.clone(), c * c2);
                }
            }
            cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        for (m, c) in cur {
            accumulate(out, m, c);
        }
    }

    /// Associative product, truncated at the common level.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        check_levels(a.level, b.level)?;
        self.check_level(a.level)?;
        let level = a.level;
        let mut out = Scratch::new();
        let b_terms: Vec<(&Monomial, &Rational, u32)> =
            b.terms.iter().map(|(m, c)| (m, c, self.monomial_degree(m))).collect();
        for (u, cu) in &a.terms {
            let du = self.monomial_degree(u);
            for &(v, cv, dv) in &b_terms {
                if du + dv <= level {
                    self.mul_monomials(u, v, &mut out, &(cu * cv));
                }
            }
        }
        Ok(AlgebraElement::from_scratch(level, out))
    }

    /// `a · exp(c X_x)` for a single generator.
    fn mul_exp_letter(&self, a: &AlgebraElement, x: Letter, c: &Rational) -> AlgebraElement {
        let level = a.level;
        let dx = self.degrees[x as usize];
        let mut result: Scratch = a.terms.iter().map(|(m, v)| (m.clone(), v.clone())).collect();
        let mut cur: Vec<(Monomial, Rational)> = a.terms.iter().map(|(m, v)| (m.clone(), v.clone())).collect();
        let mut k = 1i64;
        loop {
            let factor = c / &Rational::integer(k);
            let mut next = Scratch::new();
            for (u, cu) in &cur {
                if self.monomial_degree(u) + dx > level {
                    continue;
                }
                let cu = cu * &factor;
                for (m, cm) in self.mul_letter(u, x).iter() {
                    accumulate(&mut next, m.clone(), &cu * cm);
                }
            }
            cur = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if cur.is_empty() {
                break;
            }
            for (m, v) in &cur {
                accumulate(&mut result, m.clone(), v.clone());
            }
            k += 1;
        }
        AlgebraElement::from_scratch(level, result)
    }

    /// `exp(a) = Σ_k a^k / k!` for a Lie element `a`.
    pub fn exp(&self, a: &AlgebraElement) -> Result<GroupElement, AlgebraError> {
        self.check_level(a.level)?;
        if !a.is_lie() {
            return Err(AlgebraError::NotLieElement);
        }
        let mut result = AlgebraElement::one(a.level);
        let mut power = AlgebraElement::one(a.level);
        let mut k = 1i64;
        loop {
            power = self.mul(&power, a)?.scaled(&Rational::new(1, k));
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
            k += 1;
        }
        Ok(GroupElement::with_log(result, a.clone()))
    }

    /// `log(g) = Σ_k (-1)^{k+1} (g-1)^k / k`; fails unless the result is a
    /// Lie element.
    pub fn log_element(&self, g: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_level(g.level)?;
        if !g.constant_term().is_one() {
            return Err(AlgebraError::NotGrouplike);
        }
        let x = g.sub(&AlgebraElement::one(g.level))?;
        let mut result = AlgebraElement::zero(g.level);
        let mut power = AlgebraElement::one(g.level);
        let mut k = 1i64;
        loop {
            power = self.mul(&power, &x)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result = result.add(&power.scaled(&Rational::new(sign, k)))?;
            k += 1;
        }
        if !result.is_lie() {
            return Err(AlgebraError::NotGrouplike);
        }
        Ok(result)
    }

    /// Logarithm of a group element, cached on the element.
    pub fn log(&self, g: &GroupElement) -> Result<AlgebraElement, AlgebraError> {
        if let Some(l) = g.log.get() {
            return Ok(l.clone());
        }
        let l = self.log_element(&g.element)?;
        let _ = g.log.set(l.clone());
        Ok(l)
    }

    /// Validates an algebra element as grouplike.
    pub fn group_element(&self, a: AlgebraElement) -> Result<GroupElement, AlgebraError> {
        let log = self.log_element(&a)?;
        Ok(GroupElement::with_log(a, log))
    }

    pub fn group_mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, AlgebraError> {
        Ok(GroupElement::unchecked(self.mul(&g.element, &h.element)?))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement, AlgebraError> {
        let log = self.log(g)?;
        self.exp(&log.scaled(&-Rational::ONE))
    }

    /// `g · exp(a)` where `a` is a Lie element whose generators pairwise
    /// commute (e.g. lies in one parallel subalgebra), so that `exp(a)` is
    /// the product of the single-generator exponentials.
    pub fn mul_exp_commuting(&self, g: &GroupElement, a: &AlgebraElement) -> Result<GroupElement, AlgebraError> {
        check_levels(g.level(), a.level)?;
        if !a.is_lie() {
            return Err(AlgebraError::NotLieElement);
        }
        let letters: Vec<(Letter, &Rational)> = a.terms.iter().map(|(m, c)| (m[0], c)).collect();
        for (i, &(x, _)) in letters.iter().enumerate() {
            for &(y, _) in &letters[i + 1..] {
                if self.brackets[x as usize][y as usize].is_some() {
                    return Err(AlgebraError::NotCommuting);
                }
            }
        }
        let mut e = g.element.clone();
        for (x, c) in letters {
            e = self.mul_exp_letter(&e, x, c);
        }
        Ok(GroupElement::unchecked(e))
    }

    /// The Lie element `c Σ_{j ≥ 1} (-1)^{j+1}/j² X_{jn}` truncated at `level`.
    pub fn dilog_log(&self, n: &PositiveVector, c: &Rational, level: u32) -> Result<AlgebraElement, AlgebraError> {
        self.check_level(level)?;
        self.check_rank(n)?;
        let mut out = AlgebraElement::zero(level);
        let mut j = 1u32;
        while j * n.degree() <= level {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let coeff = c * &Rational::new(sign, (j * j) as i64);
            add_term(&mut out.terms, &SmallVec::from_slice(&[self.letter(&n.scaled(j))?]), &coeff);
            j += 1;
        }
        Ok(out)
    }

    /// The dilogarithm power `Ψ[n]^c`.
    pub fn dilog(&self, n: &PositiveVector, c: &Rational, level: u32) -> Result<GroupElement, AlgebraError> {
        let log = self.dilog_log(n, c, level)?;
        let g = self.mul_exp_commuting(&GroupElement::identity(level), &log)?;
        Ok(GroupElement::with_log(g.element, log))
    }

    /// `g · Ψ[n]^c`.
    pub fn mul_dilog(&self, g: &GroupElement, n: &PositiveVector, c: &Rational) -> Result<GroupElement, AlgebraError> {
        let log = self.dilog_log(n, c, g.level())?;
        self.mul_exp_commuting(g, &log)
    }

    /// Canonical projection to a lower truncation.
    pub fn project_element(&self, a: &AlgebraElement, level: u32) -> Result<AlgebraElement, AlgebraError> {
        if level > a.level || level == 0 {
            return Err(AlgebraError::LevelMismatch { left: a.level, right: level });
        }
        Ok(AlgebraElement {
            level,
            terms: a
                .terms
                .iter()
                .filter(|(m, _)| self.monomial_degree(m) <= level)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn project(&self, g: &GroupElement, level: u32) -> Result<GroupElement, AlgebraError> {
        let element = self.project_element(&g.element, level)?;
        Ok(match g.log.get() {
            Some(l) => GroupElement::with_log(element, self.project_element(l, level)?),
            None => GroupElement::unchecked(element),
        })
    }

    /// Whether `log g` is supported on multiples of the primitive vector `n`.
    pub fn is_parallel(&self, g: &GroupElement, n: &PositiveVector) -> Result<bool, AlgebraError> {
        let log = self.log(g)?;
        Ok(log.terms.keys().all(|m| self.vector(m[0]).multiple_of(n).is_some()))
    }

    /// Product of generators in the given (arbitrary) order.
    pub fn word(&self, letters: &[PositiveVector], level: u32) -> Result<AlgebraElement, AlgebraError> {
        let mut out = AlgebraElement::one(level);
        for n in letters {
            out = self.mul(&out, &self.generator(n, level)?)?;
        }
        Ok(out)
    }

    /// Terms as (generator vectors, coefficient), ordered by degree and then
    /// by monomial.
    pub fn expanded_terms(&self, a: &AlgebraElement) -> Vec<(Vec<PositiveVector>, Rational)> {
        let mut out: Vec<(u32, &Monomial, &Rational)> =
            a.terms.iter().map(|(m, c)| (self.monomial_degree(m), m, c)).collect();
        out.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(y.1)));
        out.into_iter()
            .map(|(_, m, c)| (m.iter().map(|&x| self.vector(x).clone()).collect(), c.clone()))
            .collect()
    }

    /// Human-readable form, e.g. `1·X_{e1} + 1/2·X_{e1+e2}`.
    pub fn display(&self, a: &AlgebraElement) -> String {
        let terms = self.expanded_terms(a);
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let shown = if i == 0 {
                c.to_string()
            } else if c.is_negative() {
                out.push_str(" - ");
                (-c).to_string()
            } else {
                out.push_str(" + ");
                c.to_string()
            };
            out.push_str(&shown);
            if !m.is_empty() {
                out.push('·');
                for n in m {
                    out.push_str(&format!("X_{{{n}}}"));
                }
            }
        }
        out
    }
}

fn pairing(omega: &[Vec<Rational>], a: &PositiveVector, b: &PositiveVector) -> Rational {
    let mut acc = Rational::ZERO;
    for (i, &ai) in a.coords().iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.coords().iter().enumerate() {
            if bj == 0 || omega[i][j].is_zero() {
                continue;
            }
            acc += &(&omega[i][j] * &Rational::integer(ai as i64 * bj as i64));
        }
    }
    acc
}
