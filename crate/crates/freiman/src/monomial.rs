//! Monomials with a fixed ambient variable set, and the sorting operator on
//! pairs of monomials of equal degree.

use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Construction limits. The defaults are far above anything the sweeps need;
/// they exist so that malformed input fails fast instead of allocating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_degree: u32,
    pub max_vars: usize,
}

impl Caps {
    pub const DEFAULT: Caps = Caps {
        max_degree: 512,
        max_vars: 64,
    };
}

impl Default for Caps {
    fn default() -> Self {
        Caps::DEFAULT
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("ambient variable counts differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("degrees differ: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("{count} variables exceeds the cap of {max}")]
    TooManyVariables { count: usize, max: usize },
    #[error("degree {degree} exceeds the cap of {max}")]
    DegreeTooLarge { degree: u64, max: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed token '{token}' at position {position}")]
    MalformedToken { position: usize, token: String },
    #[error("variable index {index} out of range 1..={n} at position {position}")]
    VariableOutOfRange {
        position: usize,
        index: usize,
        n: usize,
    },
    #[error("expected {expected} exponents, found {found}")]
    WrongVectorLength { expected: usize, found: usize },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error(transparent)]
    Invalid(#[from] MonomialError),
}

/// A monomial in `x1..xn`, stored as a dense exponent vector. The ambient
/// variable count is part of the value: `x1*x3` in three variables and
/// `x1*x3` in four are distinct monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn from_exponents(exponents: Vec<u32>) -> Result<Self, MonomialError> {
        Self::from_exponents_with_caps(exponents, Caps::DEFAULT)
    }

    pub fn from_exponents_with_caps(
        exponents: Vec<u32>,
        caps: Caps,
    ) -> Result<Self, MonomialError> {
        if exponents.len() > caps.max_vars {
            return Err(MonomialError::TooManyVariables {
                count: exponents.len(),
                max: caps.max_vars,
            });
        }
        let degree: u64 = exponents.iter().map(|&e| e as u64).sum();
        if degree > caps.max_degree as u64 {
            return Err(MonomialError::DegreeTooLarge {
                degree,
                max: caps.max_degree,
            });
        }
        Ok(Self::from_exponents_unchecked(exponents))
    }

    /// Internal constructor for monomials produced by arithmetic on already
    /// validated inputs (products of generators may exceed the degree cap).
    pub(crate) fn from_exponents_unchecked(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Monomial { exponents, degree }
    }

    /// The identity monomial (all exponents zero) in `n` variables.
    pub fn one(n: usize) -> Self {
        Self::from_exponents_unchecked(vec![0; n])
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Exponent of the variable with 0-based index `var`.
    pub fn exponent(&self, var: usize) -> u32 {
        self.exponents[var]
    }

    pub fn multiply(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        if self.num_vars() != other.num_vars() {
            return Err(MonomialError::AmbientMismatch {
                left: self.num_vars(),
                right: other.num_vars(),
            });
        }
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Monomial::from_exponents_unchecked(exponents))
    }

    /// Parse either an exponent vector ("0 0 2" or "0,0,2") or the symbolic
    /// syntax ("x1^2*x3"). A token containing `x` selects the symbolic form.
    pub fn parse(text: &str, n: usize) -> Result<Self, ParseError> {
        Self::parse_with_caps(text, n, Caps::DEFAULT)
    }

    pub fn parse_with_caps(text: &str, n: usize, caps: Caps) -> Result<Self, ParseError> {
        if text.contains('x') {
            Self::parse_symbolic(text, n, caps)
        } else {
            Self::parse_vector(text, n, caps)
        }
    }

    fn parse_vector(text: &str, n: usize, caps: Caps) -> Result<Self, ParseError> {
        let mut exponents = Vec::with_capacity(n);
        for (position, token) in split_tokens(text, |c: char| c.is_whitespace() || c == ',') {
            if token.starts_with('-') && token[1..].chars().all(|c| c.is_ascii_digit()) {
                return Err(ParseError::NegativeExponent { position });
            }
            let value: u32 = token.parse().map_err(|_| ParseError::MalformedToken {
                position,
                token: token.to_string(),
            })?;
            exponents.push(value);
        }
        if exponents.len() != n {
            return Err(ParseError::WrongVectorLength {
                expected: n,
                found: exponents.len(),
            });
        }
        Ok(Self::from_exponents_with_caps(exponents, caps)?)
    }

    fn parse_symbolic(text: &str, n: usize, caps: Caps) -> Result<Self, ParseError> {
        let mut exponents = vec![0u64; n];
        let mut start = 0;
        for piece in text.split_inclusive('*') {
            let term = piece.strip_suffix('*').unwrap_or(piece);
            let trimmed = term.trim();
            let position = start + (term.len() - term.trim_start().len());
            parse_term(trimmed, position, n, &mut exponents)?;
            start += piece.len();
        }
        let degree: u64 = exponents.iter().sum();
        if degree > caps.max_degree as u64 {
            return Err(MonomialError::DegreeTooLarge {
                degree,
                max: caps.max_degree,
            }
            .into());
        }
        Ok(Self::from_exponents_with_caps(
            exponents.into_iter().map(|e| e as u32).collect(),
            caps,
        )?)
    }
}

/// One symbolic factor: `xi` or `xi^e` with `i >= 1`, `e >= 1`. Repeated
/// variables accumulate, so `x1*x1*x2` equals `x1^2*x2`.
fn parse_term(
    term: &str,
    position: usize,
    n: usize,
    exponents: &mut [u64],
) -> Result<(), ParseError> {
    let malformed = || ParseError::MalformedToken {
        position,
        token: term.to_string(),
    };
    let rest = term.strip_prefix('x').ok_or_else(malformed)?;
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        return Err(malformed());
    }
    let index: usize = digits.parse().map_err(|_| malformed())?;
    let rest = &rest[digits.len()..];
    let exponent: u64 = if rest.is_empty() {
        1
    } else {
        let raw = rest.strip_prefix('^').ok_or_else(malformed)?;
        if raw.starts_with('-') && raw[1..].chars().all(|c| c.is_ascii_digit()) {
            return Err(ParseError::NegativeExponent { position });
        }
        let e: u64 = raw.parse().map_err(|_| malformed())?;
        if e == 0 {
            return Err(malformed());
        }
        e
    };
    if index == 0 || index > n {
        return Err(ParseError::VariableOutOfRange { position, index, n });
    }
    exponents[index - 1] += exponent;
    Ok(())
}

fn split_tokens(
    text: &str,
    is_sep: impl Fn(char) -> bool + Copy,
) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skip_bytes: usize = rest
            .chars()
            .take_while(|&c| is_sep(c))
            .map(char::len_utf8)
            .sum();
        rest = &rest[skip_bytes..];
        offset += skip_bytes;
        if rest.is_empty() {
            return None;
        }
        let len = rest
            .char_indices()
            .find(|&(_, c)| is_sep(c))
            .map_or(rest.len(), |(i, _)| i);
        let token = &rest[..len];
        let position = offset;
        rest = &rest[len..];
        offset += len;
        Some((position, token))
    })
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Canonical order: dictionary order on the non-decreasing factor words, so
/// `x1^2 < x1*x2 < x1*x3 < x2^2`. Equivalently, reverse lexicographic
/// comparison of the exponent vectors.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            match b.cmp(a) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.exponents.len().cmp(&other.exponents.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorting operator. Write `u*v` as `x_{i_1} x_{i_2} ... x_{i_{2d}}` with
/// `i_1 <= i_2 <= ... <= i_{2d}`; the odd positions form the first output,
/// the even positions the second. The result depends only on the product.
///
/// Implemented per variable: the block of positions occupied by `x_j` is
/// determined by the running count of factors placed so far, so the word is
/// never materialized.
pub fn sort_pair(u: &Monomial, v: &Monomial) -> Result<(Monomial, Monomial), MonomialError> {
    if u.num_vars() != v.num_vars() {
        return Err(MonomialError::AmbientMismatch {
            left: u.num_vars(),
            right: v.num_vars(),
        });
    }
    if u.degree() != v.degree() {
        return Err(MonomialError::DegreeMismatch {
            left: u.degree(),
            right: v.degree(),
        });
    }
    let n = u.num_vars();
    let mut first = vec![0u32; n];
    let mut second = vec![0u32; n];
    let mut placed: u32 = 0;
    for j in 0..n {
        let m = u.exponents[j] + v.exponents[j];
        // odd 1-based positions in the half-open block (placed, placed + m]
        let odd = (placed + m).div_ceil(2) - placed.div_ceil(2);
        first[j] = odd;
        second[j] = m - odd;
        placed += m;
    }
    Ok((
        Monomial::from_exponents_unchecked(first),
        Monomial::from_exponents_unchecked(second),
    ))
}

/// Whether `{u, v}` is fixed by the sorting operator, up to swapping the two
/// components.
pub fn is_sorted(u: &Monomial, v: &Monomial) -> Result<bool, MonomialError> {
    let (a, b) = sort_pair(u, v)?;
    Ok((a == *u && b == *v) || (a == *v && b == *u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(text: &str, n: usize) -> Monomial {
        Monomial::parse(text, n).unwrap()
    }

    /// Oracle: materialize the sorted word and split by position parity.
    fn sort_by_word(u: &Monomial, v: &Monomial) -> (Vec<u32>, Vec<u32>) {
        let n = u.num_vars();
        let mut word = Vec::new();
        for j in 0..n {
            for _ in 0..(u.exponent(j) + v.exponent(j)) {
                word.push(j);
            }
        }
        let mut first = vec![0u32; n];
        let mut second = vec![0u32; n];
        for (pos, &j) in word.iter().enumerate() {
            if pos % 2 == 0 {
                first[j] += 1;
            } else {
                second[j] += 1;
            }
        }
        (first, second)
    }

    fn from_word(n: usize, word: &[usize]) -> Monomial {
        let mut exps = vec![0u32; n];
        for &j in word {
            exps[j] += 1;
        }
        Monomial::from_exponents(exps).unwrap()
    }

    #[test]
    fn parse_symbolic_basic() {
        assert_eq!(m("x1^2*x3", 3).exponents(), &[2, 0, 1]);
        assert_eq!(m("x1*x1*x2", 2).exponents(), &[2, 1]);
        assert_eq!(m("x2", 4).exponents(), &[0, 1, 0, 0]);
        assert_eq!(m(" x1 * x2^3 ", 2).exponents(), &[1, 3]);
    }

    #[test]
    fn parse_vector_basic() {
        assert_eq!(m("0 0 2", 3).exponents(), &[0, 0, 2]);
        assert_eq!(m("0,0,2", 3).exponents(), &[0, 0, 2]);
        assert_eq!(m("1, 2, 0", 3).exponents(), &[1, 2, 0]);
    }

    #[test]
    fn parse_errors_are_distinct() {
        match Monomial::parse("x4", 3) {
            Err(ParseError::VariableOutOfRange { index: 4, n: 3, .. }) => {}
            other => panic!("expected out-of-range error, got {other:?}"),
        }
        match Monomial::parse("x0", 3) {
            Err(ParseError::VariableOutOfRange { index: 0, .. }) => {}
            other => panic!("expected out-of-range error, got {other:?}"),
        }
        match Monomial::parse("0 0", 3) {
            Err(ParseError::WrongVectorLength {
                expected: 3,
                found: 2,
            }) => {}
            other => panic!("expected length error, got {other:?}"),
        }
        match Monomial::parse("0 -1 2", 3) {
            Err(ParseError::NegativeExponent { position: 2 }) => {}
            other => panic!("expected negative exponent error, got {other:?}"),
        }
        match Monomial::parse("x1^-2", 3) {
            Err(ParseError::NegativeExponent { .. }) => {}
            other => panic!("expected negative exponent error, got {other:?}"),
        }
        assert!(matches!(
            Monomial::parse("x1^0", 3),
            Err(ParseError::MalformedToken { .. })
        ));
        assert!(matches!(
            Monomial::parse("1 2 q", 3),
            Err(ParseError::MalformedToken { position: 4, .. })
        ));
        assert!(matches!(
            Monomial::parse("y1*x2", 3),
            Err(ParseError::MalformedToken { position: 0, .. })
        ));
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            Monomial::from_exponents(vec![0; 65]),
            Err(MonomialError::TooManyVariables { count: 65, max: 64 })
        ));
        assert!(matches!(
            Monomial::from_exponents(vec![513]),
            Err(MonomialError::DegreeTooLarge { degree: 513, .. })
        ));
        assert!(Monomial::from_exponents(vec![512]).is_ok());
        let tight = Caps {
            max_degree: 4,
            max_vars: 2,
        };
        assert!(Monomial::parse_with_caps("x1^5", 2, tight).is_err());
        assert!(Monomial::parse_with_caps("x1^2*x2^2", 2, tight).is_ok());
    }

    #[test]
    fn display_round_trip() {
        for text in ["x1^2*x3", "x2*x3^2", "x1", "x1^3"] {
            let parsed = m(text, 3);
            assert_eq!(parsed.to_string(), text);
            assert_eq!(m(&parsed.to_string(), 3), parsed);
        }
        assert_eq!(Monomial::one(3).to_string(), "1");
    }

    #[test]
    fn multiply_basic() {
        let u = m("x1*x3^2", 3);
        let v = m("x2^2*x3", 3);
        assert_eq!(u.multiply(&v).unwrap(), m("x1*x2^2*x3^3", 3));
        assert_eq!(u.multiply(&Monomial::one(3)).unwrap(), u);
        assert!(matches!(
            u.multiply(&Monomial::one(4)),
            Err(MonomialError::AmbientMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn sort_pair_examples() {
        // x1*x3^2 and x2^2*x3 sort to x1*x2*x3 and x2*x3^2.
        let (a, b) = sort_pair(&m("x1*x3^2", 3), &m("x2^2*x3", 3)).unwrap();
        assert_eq!(a, m("x1*x2*x3", 3));
        assert_eq!(b, m("x2*x3^2", 3));

        let (a, b) = sort_pair(&m("x1^2", 2), &m("x2^2", 2)).unwrap();
        assert_eq!(a, m("x1*x2", 2));
        assert_eq!(b, m("x1*x2", 2));

        let u = m("x1^2*x2", 3);
        assert_eq!(sort_pair(&u, &u).unwrap(), (u.clone(), u.clone()));

        assert!(matches!(
            sort_pair(&m("x1", 2), &m("x1*x2", 2)),
            Err(MonomialError::DegreeMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn is_sorted_examples() {
        assert!(is_sorted(&m("x1*x2", 3), &m("x2*x3", 3)).unwrap());
        assert!(!is_sorted(&m("x1*x3", 3), &m("x2^2", 3)).unwrap());
        assert!(is_sorted(&m("x2*x3", 3), &m("x1*x2", 3)).unwrap());
    }

    #[test]
    fn canonical_order_is_dictionary_order() {
        let mut gens = [
            m("x3^2", 3),
            m("x1*x2", 3),
            m("x2^2", 3),
            m("x1^2", 3),
            m("x2*x3", 3),
            m("x1*x3", 3),
        ];
        gens.sort();
        let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]);
    }

    fn word_pair() -> impl Strategy<Value = (Monomial, Monomial)> {
        (1usize..=5, 0usize..=8).prop_flat_map(|(n, d)| {
            (
                prop::collection::vec(0..n, d),
                prop::collection::vec(0..n, d),
            )
                .prop_map(move |(wu, wv)| (from_word(n, &wu), from_word(n, &wv)))
        })
    }

    proptest! {
        #[test]
        fn sort_matches_word_oracle((u, v) in word_pair()) {
            let (a, b) = sort_pair(&u, &v).unwrap();
            let (oa, ob) = sort_by_word(&u, &v);
            prop_assert_eq!(a.exponents(), &oa[..]);
            prop_assert_eq!(b.exponents(), &ob[..]);
        }

        #[test]
        fn sort_preserves_product_and_degree((u, v) in word_pair()) {
            let (a, b) = sort_pair(&u, &v).unwrap();
            prop_assert_eq!(a.multiply(&b).unwrap(), u.multiply(&v).unwrap());
            prop_assert_eq!(a.degree(), u.degree());
            prop_assert_eq!(b.degree(), v.degree());
        }

        #[test]
        fn sort_is_idempotent_and_symmetric((u, v) in word_pair()) {
            let (a, b) = sort_pair(&u, &v).unwrap();
            prop_assert_eq!(sort_pair(&a, &b).unwrap(), (a.clone(), b.clone()));
            prop_assert_eq!(sort_pair(&v, &u).unwrap(), (a.clone(), b.clone()));
            prop_assert!(is_sorted(&a, &b).unwrap());
        }

        #[test]
        fn sorted_components_split_each_variable_evenly((u, v) in word_pair()) {
            let (a, b) = sort_pair(&u, &v).unwrap();
            for j in 0..u.num_vars() {
                let diff = a.exponent(j) as i64 - b.exponent(j) as i64;
                prop_assert!(diff.abs() <= 1);
            }
        }
    }
}
