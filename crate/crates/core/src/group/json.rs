use serde::{Deserialize, Serialize};

use super::{AlgebraElement, AlgebraError, PositiveVector, StructureAlgebra};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<PositiveVector>,
    pub coeff: Rational,
}

/// `{"level": l, "terms": [{"monomial": [[..],..], "coeff": "p/q"}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub level: u32,
    pub terms: Vec<TermJson>,
}

impl StructureAlgebra {
    pub fn to_json(&self, a: &AlgebraElement) -> ElementJson {
        ElementJson {
            level: a.level(),
            terms: self
                .expanded_terms(a)
                .into_iter()
                .map(|(monomial, coeff)| TermJson { monomial, coeff })
                .collect(),
        }
    }

    /// Parses an element; monomials given out of PBW order are straightened.
    pub fn from_json(&self, json: &ElementJson) -> Result<AlgebraElement, AlgebraError> {
        let mut out = AlgebraElement::zero(json.level);
        for term in &json.terms {
            if term.monomial.iter().map(PositiveVector::degree).sum::<u32>() > json.level {
                return Err(AlgebraError::Malformed("monomial exceeds the truncation level".into()));
            }
            let word = self.word(&term.monomial, json.level)?;
            out = out.add(&word.scaled(&term.coeff))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_straighten() {
        let q = |n, d| Rational::new(n, d);
        let alg = StructureAlgebra::new(vec![vec![q(0, 1), q(1, 1)], vec![q(-1, 1), q(0, 1)]], 3).unwrap();
        let psi = alg.dilog(&PositiveVector::basis(2, 0), &q(1, 1), 3).unwrap();
        let json = alg.to_json(psi.as_element());
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.starts_with("{\"level\":3,\"terms\":[{\"monomial\":[],\"coeff\":\"1\"}"));
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(alg.from_json(&back).unwrap(), *psi.as_element());

        let unordered: ElementJson = serde_json::from_str(
            r#"{"level": 2, "terms": [{"monomial": [[0,1],[1,0]], "coeff": "1"}]}"#,
        )
        .unwrap();
        let parsed = alg.from_json(&unordered).unwrap();
        assert_eq!(alg.display(&parsed), "1·X_{e1}X_{e2} - 1·X_{e1+e2}");

        let too_deep: ElementJson =
            serde_json::from_str(r#"{"level": 1, "terms": [{"monomial": [[1,1]], "coeff": "1"}]}"#).unwrap();
        assert!(alg.from_json(&too_deep).is_err());
    }
}
