//! JSON form of a polynomial: an array of `{"exp": {"ij": e}, "coeff": "p/q"}`
//! in the same term order as the text form.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::SparsePoly;
use crate::error::{Error, Result};
use crate::veronese::{pairs, ExponentMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exp: BTreeMap<String, u32>,
    pub coeff: String,
}

fn parse_pair(key: &str, n: usize) -> Result<(usize, usize)> {
    let digits: Vec<usize> = key
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Parse(format!("bad variable key {key:?}")))?;
    let [i, j] = digits[..] else {
        return Err(Error::Parse(format!("bad variable key {key:?}")));
    };
    for x in [i, j] {
        if x == 0 || x > n {
            return Err(Error::IndexOutOfRange {
                index: x,
                range: format!("[1, {n}]"),
            });
        }
    }
    Ok((i, j))
}

impl SparsePoly {
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        let ps = pairs(self.n());
        self.terms()
            .iter()
            .rev()
            .map(|(m, c)| JsonTerm {
                exp: ps
                    .iter()
                    .zip(m.exponents())
                    .filter(|(_, &e)| e > 0)
                    .map(|(p, &e)| (p.to_string(), e))
                    .collect(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("serializable")
    }

    pub fn from_json_terms(terms: &[JsonTerm], n: usize) -> Result<SparsePoly> {
        let mut p = SparsePoly::zero(n);
        for t in terms {
            let mut entries = Vec::with_capacity(t.exp.len());
            for (key, &e) in &t.exp {
                let (i, j) = parse_pair(key, n)?;
                entries.push((i, j, e));
            }
            let c: BigRational = t
                .coeff
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            p.add_term(ExponentMatrix::from_pairs(n, &entries), c);
        }
        Ok(p)
    }

    pub fn from_json(s: &str, n: usize) -> Result<SparsePoly> {
        let terms: Vec<JsonTerm> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_terms(&terms, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema() {
        let p = SparsePoly::parse("x11*x23 - 1/2*x12^2", 3).unwrap();
        assert_eq!(
            p.to_json(),
            r#"[{"exp":{"11":1,"23":1},"coeff":"1"},{"exp":{"12":2},"coeff":"-1/2"}]"#
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SparsePoly::from_json("{", 3), Err(Error::Parse(_))));
        assert!(SparsePoly::from_json(r#"[{"exp":{"1":1},"coeff":"1"}]"#, 3).is_err());
        assert!(SparsePoly::from_json(r#"[{"exp":{"11":1},"coeff":"a"}]"#, 3).is_err());
        assert!(SparsePoly::from_json(r#"[{"exp":{"44":1},"coeff":"1"}]"#, 3).is_err());
    }
}
