//! Sign twistings `x_ij ↦ ±x_ij` and the sign characters that index the
//! components of `J_n`.

use std::fmt;

use super::SparsePoly;
use crate::error::{Error, Result};
use crate::veronese::{c, off_diagonal_pairs, pairs, ExponentMatrix, PairIndex};

/// A sign for every variable; `true` means the variable is negated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Twisting {
    n: usize,
    negated: Vec<bool>,
}

impl Twisting {
    pub fn identity(n: usize) -> Self {
        Twisting {
            n,
            negated: vec![false; c(n + 1)],
        }
    }

    /// The twisting negating exactly the listed variables.
    pub fn negating(n: usize, vars: &[(usize, usize)]) -> Self {
        let mut t = Self::identity(n);
        for &(i, j) in vars {
            t.negated[PairIndex::new(i, j).position(n)] = true;
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self, i: usize, j: usize) -> i32 {
        if self.negated[PairIndex::new(i, j).position(self.n)] {
            -1
        } else {
            1
        }
    }

    /// Sign picked up by the monomial `x^u`.
    pub fn sign_of(&self, u: &ExponentMatrix) -> i32 {
        let odd = u
            .exponents()
            .iter()
            .zip(&self.negated)
            .filter(|&(&e, &neg)| neg && e % 2 == 1)
            .count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Whether every diagonal variable carries the same sign, which is what
    /// it takes for the principal minors to be mapped to themselves up to
    /// sign.
    pub fn preserves_jn(&self) -> bool {
        let s = self.sign(self.n, self.n);
        (1..self.n).all(|i| self.sign(i, i) == s)
    }

    /// Parses `ij:±` items separated by commas; unlisted variables keep
    /// their sign.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        let mut t = Self::identity(n);
        for (i, j, neg) in parse_sign_list(spec, n)? {
            t.negated[PairIndex::new(i, j).position(n)] = neg;
        }
        Ok(t)
    }
}

impl fmt::Display for Twisting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = pairs(self.n)
            .into_iter()
            .zip(&self.negated)
            .map(|(p, &neg)| format!("{p}:{}", if neg { '-' } else { '+' }))
            .collect();
        write!(f, "{}", items.join(","))
    }
}

/// A `±1` value on each pair `i < j ≤ n-1`, listed in lex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignCharacter {
    n: usize,
    minus: Vec<bool>,
}

impl SignCharacter {
    pub fn trivial(n: usize) -> Self {
        SignCharacter {
            n,
            minus: vec![false; c(n.saturating_sub(1))],
        }
    }

    /// Number of characters, `2^{c_{n-1}}`.
    pub fn count(n: usize) -> usize {
        1usize << c(n.saturating_sub(1))
    }

    /// The character whose `k`-th pair is `-1` exactly when bit `k` of
    /// `index` is set.
    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        if index >= Self::count(n) {
            return Err(Error::IndexOutOfRange {
                index,
                range: format!("[0, {})", Self::count(n)),
            });
        }
        let k = c(n.saturating_sub(1));
        Ok(SignCharacter {
            n,
            minus: (0..k).map(|b| index >> b & 1 == 1).collect(),
        })
    }

    pub fn index(&self) -> usize {
        self.minus
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(b, _)| 1usize << b)
            .sum()
    }

    /// All characters in index order; the trivial one comes first.
    pub fn all(n: usize) -> Vec<Self> {
        (0..Self::count(n))
            .map(|k| Self::from_index(n, k).expect("index in range"))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_trivial(&self) -> bool {
        self.minus.iter().all(|&m| !m)
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = (i.min(j), i.max(j));
        if i == j || j >= self.n {
            return None;
        }
        off_diagonal_pairs(self.n - 1).iter().position(|&p| p == (i, j))
    }

    /// `eps(i, j)` for `i ≠ j` in `[n-1]`.
    pub fn value(&self, i: usize, j: usize) -> i32 {
        let k = self.slot(i, j).unwrap_or_else(|| panic!("no character coordinate for ({i}, {j})"));
        if self.minus[k] {
            -1
        } else {
            1
        }
    }

    /// Parses `ij:±` items over pairs `i < j ≤ n-1`; unlisted pairs are `+`.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        let mut eps = Self::trivial(n);
        for (i, j, neg) in parse_sign_list(spec, n)? {
            let k = eps.slot(i, j).ok_or_else(|| {
                Error::Parse(format!("{i}{j} is not a pair of distinct indices below {n}"))
            })?;
            eps.minus[k] = neg;
        }
        Ok(eps)
    }
}

impl fmt::Display for SignCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.minus.is_empty() {
            return write!(f, "trivial");
        }
        let items: Vec<String> = off_diagonal_pairs(self.n - 1)
            .into_iter()
            .zip(&self.minus)
            .map(|((i, j), &m)| format!("{i}{j}:{}", if m { '-' } else { '+' }))
            .collect();
        write!(f, "{}", items.join(","))
    }
}

fn parse_sign_list(spec: &str, n: usize) -> Result<Vec<(usize, usize, bool)>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Error::Parse(format!("bad sign item {item:?}, expected e.g. 12:-"));
        let (pair, sign) = item.split_once(':').ok_or_else(bad)?;
        let digits: Vec<usize> = pair
            .trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        let [i, j] = digits[..] else {
            return Err(bad());
        };
        for x in [i, j] {
            if x == 0 || x > n {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    range: format!("[1, {n}]"),
                });
            }
        }
        let neg = match sign.trim() {
            "-" | "-1" => true,
            "+" | "+1" | "1" => false,
            _ => return Err(bad()),
        };
        out.push((i, j, neg));
    }
    Ok(out)
}

pub fn twist(p: &SparsePoly, t: &Twisting) -> SparsePoly {
    assert_eq!(p.n(), t.n, "twisting for a different ring");
    SparsePoly::from_terms(
        p.n(),
        p.terms().iter().map(|(m, coef)| {
            let c = if t.sign_of(m) < 0 { -coef.clone() } else { coef.clone() };
            (m.clone(), c)
        }),
    )
}

/// `eps(i, j) = s_ij s_in s_jn s_nn`, the sign the twisting puts on the
/// move `[in|jn]`. Meaningful when [`Twisting::preserves_jn`] holds.
pub fn character_of_twisting(t: &Twisting) -> SignCharacter {
    let n = t.n;
    let mut eps = SignCharacter::trivial(n);
    for (k, (i, j)) in off_diagonal_pairs(n.saturating_sub(1)).into_iter().enumerate() {
        eps.minus[k] = t.sign(i, j) * t.sign(i, n) * t.sign(j, n) * t.sign(n, n) < 0;
    }
    eps
}

/// The twisting negating `x_ij` for the pairs where `eps(i, j) = -1`.
pub fn twisting_for_character(eps: &SignCharacter) -> Twisting {
    let n = eps.n;
    let vars: Vec<(usize, usize)> = off_diagonal_pairs(n.saturating_sub(1))
        .into_iter()
        .zip(&eps.minus)
        .filter(|(_, &m)| m)
        .map(|(p, _)| p)
        .collect();
    Twisting::negating(n, &vars)
}

/// `∏ eps(i, j)^{(u - u0)_ij}` over `i < j ≤ n-1`.
pub fn character_value(eps: &SignCharacter, u: &ExponentMatrix, u0: &ExponentMatrix) -> Result<i32> {
    if u.degree() != u0.degree() {
        return Err(Error::DegreeMismatch);
    }
    let mut v = 1;
    for ((i, j), &m) in off_diagonal_pairs(eps.n.saturating_sub(1)).into_iter().zip(&eps.minus) {
        if m && (u.get(i, j) + u0.get(i, j)) % 2 == 1 {
            v = -v;
        }
    }
    Ok(v)
}
