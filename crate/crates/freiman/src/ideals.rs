//! Equigenerated generator sets and the invariants entering the Freiman
//! count: number of generators, analytic spread, and the generator count of
//! the square.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chordal::{is_chordal, ChordalityVerdict};
use crate::graphs::sorted_graph;
use crate::monomial::{sort_pair, Caps, Monomial, MonomialError, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("a generator set must contain at least one monomial")]
    Empty,
    #[error("generators must share one degree: found {left} and {right}")]
    MixedDegrees { left: u32, right: u32 },
    #[error("generators must share the ambient variables: found {left} and {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("generators must have positive degree")]
    ZeroDegree,
    #[error("parameters must be positive")]
    ZeroParameter,
    #[error("empty family: min(k,d)*n = {effective}*{n} does not exceed d = {d}")]
    EmptyVeroneseDomain { effective: u32, n: usize, d: u32 },
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// Errors from the generator-set file format, tagged with a 1-based line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetFileError {
    #[error("line {line}: malformed header '{text}', expected 'n d'")]
    Header { line: usize, text: String },
    #[error("line {line}: {source}")]
    Monomial { line: usize, source: ParseError },
    #[error("line {line}: generator {monomial} has degree {found}, expected {expected}")]
    WrongDegree {
        line: usize,
        monomial: String,
        found: u32,
        expected: u32,
    },
    #[error("line {line}: duplicate generator {monomial}")]
    Duplicate { line: usize, monomial: String },
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// The minimal generators of an equigenerated monomial ideal: distinct
/// monomials of one common degree in one ambient ring, kept in canonical
/// order. Distinct monomials of equal degree never divide one another, so
/// any such set is the minimal generating set of the ideal it generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    degree: u32,
    gens: Vec<Monomial>,
}

impl GeneratorSet {
    pub fn new(n: usize, monomials: Vec<Monomial>) -> Result<Self, IdealError> {
        let first = monomials.first().ok_or(IdealError::Empty)?;
        let degree = first.degree();
        if degree == 0 {
            return Err(IdealError::ZeroDegree);
        }
        for m in &monomials {
            if m.num_vars() != n {
                return Err(IdealError::AmbientMismatch {
                    left: n,
                    right: m.num_vars(),
                });
            }
            if m.degree() != degree {
                return Err(IdealError::MixedDegrees {
                    left: degree,
                    right: m.degree(),
                });
            }
        }
        let mut gens = monomials;
        gens.sort();
        for pair in gens.windows(2) {
            if pair[0] == pair[1] {
                return Err(IdealError::DuplicateGenerator(pair[0].to_string()));
            }
        }
        Ok(GeneratorSet { n, degree, gens })
    }

    /// Smallest strongly stable set containing the seeds: closed under every
    /// exchange `v -> x_i * (v / x_j)` with `i < j` and `x_j` dividing `v`.
    /// Computed by a worklist closure.
    pub fn borel_closure(seeds: &[Monomial]) -> Result<Self, IdealError> {
        let first = seeds.first().ok_or(IdealError::Empty)?;
        let n = first.num_vars();
        let degree = first.degree();
        if degree == 0 {
            return Err(IdealError::ZeroDegree);
        }
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut work: VecDeque<Monomial> = VecDeque::new();
        for seed in seeds {
            if seed.num_vars() != n {
                return Err(IdealError::AmbientMismatch {
                    left: n,
                    right: seed.num_vars(),
                });
            }
            if seed.degree() != degree {
                return Err(IdealError::MixedDegrees {
                    left: degree,
                    right: seed.degree(),
                });
            }
            if seen.insert(seed.clone()) {
                work.push_back(seed.clone());
            }
        }
        while let Some(v) = work.pop_front() {
            for j in 0..n {
                if v.exponent(j) == 0 {
                    continue;
                }
                for i in 0..j {
                    let mut exps = v.exponents().to_vec();
                    exps[j] -= 1;
                    exps[i] += 1;
                    let w = Monomial::from_exponents_unchecked(exps);
                    if seen.insert(w.clone()) {
                        work.push_back(w);
                    }
                }
            }
        }
        // BTreeSet iterates in canonical order already.
        Ok(GeneratorSet {
            n,
            degree,
            gens: seen.into_iter().collect(),
        })
    }

    /// All monomials of degree `d` in `n` variables with every exponent at
    /// most `min(k, d)`. Empty unless `min(k, d) * n > d`; the corner
    /// `min(k, d) * n == d` would have a single generator and is rejected
    /// with the same error.
    pub fn veronese_constant(k: u32, n: usize, d: u32) -> Result<Self, IdealError> {
        if k == 0 || n == 0 || d == 0 {
            return Err(IdealError::ZeroParameter);
        }
        let caps = Caps::DEFAULT;
        if n > caps.max_vars {
            return Err(MonomialError::TooManyVariables {
                count: n,
                max: caps.max_vars,
            }
            .into());
        }
        if d > caps.max_degree {
            return Err(MonomialError::DegreeTooLarge {
                degree: d as u64,
                max: caps.max_degree,
            }
            .into());
        }
        let effective = k.min(d);
        if (effective as u64) * (n as u64) <= d as u64 {
            return Err(IdealError::EmptyVeroneseDomain { effective, n, d });
        }
        let gens = bounded_compositions(n, d, effective)
            .into_iter()
            .map(Monomial::from_exponents_unchecked)
            .collect();
        Ok(GeneratorSet { n, degree: d, gens })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of minimal generators, written `mu(I)`.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Monomial> {
        self.gens.iter()
    }

    /// Position of `m` in the canonical generator order.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.gens.binary_search(m).ok()
    }

    /// Exhaustive check that every pair of generators (equal pairs included,
    /// which are trivially fixed) sorts back into the set.
    pub fn is_sortable(&self) -> bool {
        let members: HashSet<&[u32]> = self.gens.iter().map(|g| g.exponents()).collect();
        for (i, u) in self.gens.iter().enumerate() {
            for v in &self.gens[i..] {
                let (a, b) = sort_pair(u, v).expect("generators share degree and ambient");
                if !members.contains(a.exponents()) || !members.contains(b.exponents()) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of minimal generators of `I^2`, computed as the number of
    /// distinct pairwise products of generators. Every product has degree
    /// `2d`, and no monomial of degree `2d` divides a different one of the
    /// same degree, so the distinct products are exactly the minimal
    /// generators of the square.
    pub fn mu_square(&self) -> u64 {
        let mut products: HashSet<Vec<u32>> = HashSet::new();
        for (i, u) in self.gens.iter().enumerate() {
            for v in &self.gens[i..] {
                let sum: Vec<u32> = u
                    .exponents()
                    .iter()
                    .zip(v.exponents())
                    .map(|(a, b)| a + b)
                    .collect();
                products.insert(sum);
            }
        }
        products.len() as u64
    }

    /// Analytic spread `l(I)`: the rank over the rationals of the matrix
    /// whose rows are the generator exponent vectors. Computed by
    /// fraction-free (Bareiss) elimination on exact integers.
    pub fn analytic_spread(&self) -> usize {
        integer_rank(self.gens.iter().map(|g| g.exponents()), self.n)
    }

    /// Full report: the Freiman count `mu(I^2) = l*mu - C(l,2)` checked
    /// directly, plus the chordality verdict of the sorted graph whenever
    /// the set is sortable.
    pub fn freiman_report(&self) -> AnalysisReport {
        let mu = self.mu();
        let spread = self.analytic_spread();
        let mu_square = self.mu_square();
        let l = spread as u64;
        let bound = l * mu as u64 - l * (l - 1) / 2;
        let gap = mu_square
            .checked_sub(bound)
            .expect("mu(I^2) below the Freiman lower bound");
        let sortable = self.is_sortable();
        let chordal = if sortable {
            Some(is_chordal(&sorted_graph(self)))
        } else {
            None
        };
        AnalysisReport {
            mu,
            spread,
            mu_square,
            bound,
            gap,
            freiman: gap == 0,
            sortable,
            chordal,
        }
    }

    /// Image of the set under `u -> u * x_{n+1}`. The sorted graph of the
    /// image is the sorted graph of the original under the index bijection.
    pub fn extend_by_variable(&self) -> Result<GeneratorSet, IdealError> {
        if self.n + 1 > Caps::DEFAULT.max_vars || self.degree + 1 > Caps::DEFAULT.max_degree {
            return Err(MonomialError::TooManyVariables {
                count: self.n + 1,
                max: Caps::DEFAULT.max_vars,
            }
            .into());
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut exps = g.exponents().to_vec();
                exps.push(1);
                Monomial::from_exponents_unchecked(exps)
            })
            .collect();
        // Appending the same exponent to every vector preserves the
        // canonical order, so the invariants carry over unchanged.
        Ok(GeneratorSet {
            n: self.n + 1,
            degree: self.degree + 1,
            gens,
        })
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a Monomial;
    type IntoIter = std::slice::Iter<'a, Monomial>;
    fn into_iter(self) -> Self::IntoIter {
        self.gens.iter()
    }
}

/// Summary of one ideal. `gap` is `mu_square - bound`; the ideal is Freiman
/// exactly when the gap vanishes. `chordal` is present if and only if the
/// set is sortable, and then its verdict must match `freiman`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub mu: usize,
    pub spread: usize,
    pub mu_square: u64,
    pub bound: u64,
    pub gap: u64,
    pub freiman: bool,
    pub sortable: bool,
    pub chordal: Option<ChordalityVerdict>,
}

/// All exponent vectors of length `n`, entry sum `d`, entries at most `cap`,
/// in canonical (descending lexicographic) order.
pub(crate) fn bounded_compositions(n: usize, d: u32, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut prefix = vec![0u32; n];
    fn rec(n: usize, d: u32, cap: u32, at: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if at == n - 1 {
            if d <= cap {
                prefix[at] = d;
                out.push(prefix.clone());
            }
            return;
        }
        let remaining_cap = cap as u64 * (n - at - 1) as u64;
        for e in (0..=cap.min(d)).rev() {
            if (d - e) as u64 > remaining_cap {
                continue;
            }
            prefix[at] = e;
            rec(n, d - e, cap, at + 1, prefix, out);
        }
    }
    if n > 0 {
        rec(n, d, cap, 0, &mut prefix, &mut out);
    }
    out
}

/// Rank of an integer matrix via one-step Bareiss elimination: every
/// intermediate entry is a minor of the input, and each division is exact.
fn integer_rank<'a>(rows: impl Iterator<Item = &'a [u32]>, ncols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (pivot_row, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &pivot_row[rank];
        // Every later row must be transformed, even with a zero entry in
        // this column, or the exact divisions below go stale.
        for row in rest.iter_mut() {
            for j in (col + 1)..ncols {
                row[j] = (&pivot_row[col] * &row[j] - &row[col] * &pivot_row[j]) / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot_row[col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Parse the generator-set file format: a header line `n d`, then one
/// monomial per line in either accepted syntax. Blank lines are skipped.
pub fn parse_generator_file(input: &str) -> Result<GeneratorSet, SetFileError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or(SetFileError::Header {
        line: 1,
        text: String::new(),
    })?;
    let mut parts = header.split_whitespace();
    let (n, d) = match (
        parts.next().and_then(|t| t.parse::<usize>().ok()),
        parts.next().and_then(|t| t.parse::<u32>().ok()),
        parts.next(),
    ) {
        (Some(n), Some(d), None) if n > 0 => (n, d),
        _ => {
            return Err(SetFileError::Header {
                line: header_line,
                text: header.to_string(),
            })
        }
    };
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut gens = Vec::new();
    for (line, text) in lines {
        let m = Monomial::parse(text, n).map_err(|source| SetFileError::Monomial { line, source })?;
        if m.degree() != d {
            return Err(SetFileError::WrongDegree {
                line,
                monomial: m.to_string(),
                found: m.degree(),
                expected: d,
            });
        }
        if !seen.insert(m.clone()) {
            return Err(SetFileError::Duplicate {
                line,
                monomial: m.to_string(),
            });
        }
        gens.push(m);
    }
    Ok(GeneratorSet::new(n, gens)?)
}
