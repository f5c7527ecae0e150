//! Set-union knapsack instances.
//!
//! An instance has `m` items with profits, `n` elements with weights, and an
//! incidence relation telling which elements each item owns. The weight of a
//! set of items is the summed weight of the *union* of their elements.
//!
//! Instances are read from and written to a small line-oriented text format:
//!
//! ```text
//! # comment lines and blank lines are ignored
//! m n C
//! p_0 p_1 ... p_{m-1}
//! w_0 w_1 ... w_{n-1}
//! r_00 r_01 ... r_0{n-1}      (one 0/1 row per item)
//! ...
//! ```

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Inclusive range of generated item profits.
pub const GENERATED_PROFIT_RANGE: (u64, u64) = (1, 500);
/// Inclusive range of generated element weights.
pub const GENERATED_WEIGHT_RANGE: (u64, u64) = (1, 100);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("instance needs at least one item and one element")]
    EmptyDimensions,
    #[error("expected {expected} {what}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("item {0} has zero profit")]
    NonPositiveProfit(usize),
    #[error("element {0} has zero weight")]
    NonPositiveWeight(usize),
    #[error("empty item {0}")]
    EmptyItem(usize),
    #[error("item {item} references element {element}, but only {n} elements exist")]
    ElementOutOfRange {
        item: usize,
        element: usize,
        n: usize,
    },
    #[error("capacity must be positive")]
    NonPositiveCapacity,
    #[error("item index {index} out of range (m = {m})")]
    ItemOutOfRange { index: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header, expected `m n C`")]
    MalformedHeader,
    #[error("expected {expected} values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("`{0}` is not a valid integer")]
    InvalidNumber(String),
    #[error("profit of item {0} must be positive")]
    NonPositiveProfit(usize),
    #[error("weight of element {0} must be positive")]
    NonPositiveWeight(usize),
    #[error("capacity must be positive")]
    NonPositiveCapacity,
    #[error("incidence entries must be 0 or 1, found `{0}`")]
    NonBinaryIncidence(String),
    #[error("empty item {0}")]
    EmptyItem(usize),
    #[error("unexpected end of input, {0} missing")]
    UnexpectedEof(&'static str),
    #[error("unexpected trailing data")]
    TrailingData,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("need 1 <= m and 1 <= n, got m = {m}, n = {n}")]
    BadDimensions { m: usize, n: usize },
    #[error("alpha must lie in (0, 1), got {0}")]
    BadAlpha(f64),
    #[error("beta must lie in (0, 1), got {0}")]
    BadBeta(f64),
    #[error("density too low: {ones} incidence ones cannot give each of {items} items an element")]
    InfeasibleDensity { ones: usize, items: usize },
}

/// An immutable set-union knapsack instance.
///
/// Element lists are stored per item, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    profits: Vec<u64>,
    weights: Vec<u64>,
    items: Vec<Vec<usize>>,
    capacity: u64,
    item_weights: Vec<u64>,
}

impl Instance {
    /// Builds and validates an instance from per-item element lists.
    pub fn new(
        profits: Vec<u64>,
        weights: Vec<u64>,
        mut items: Vec<Vec<usize>>,
        capacity: u64,
    ) -> Result<Self, InstanceError> {
        if profits.is_empty() || weights.is_empty() {
            return Err(InstanceError::EmptyDimensions);
        }
        if items.len() != profits.len() {
            return Err(InstanceError::DimensionMismatch {
                what: "item rows",
                expected: profits.len(),
                found: items.len(),
            });
        }
        if let Some(i) = profits.iter().position(|&p| p == 0) {
            return Err(InstanceError::NonPositiveProfit(i));
        }
        if let Some(j) = weights.iter().position(|&w| w == 0) {
            return Err(InstanceError::NonPositiveWeight(j));
        }
        if capacity == 0 {
            return Err(InstanceError::NonPositiveCapacity);
        }
        let n = weights.len();
        for (i, elems) in items.iter_mut().enumerate() {
            elems.sort_unstable();
            elems.dedup();
            if elems.is_empty() {
                return Err(InstanceError::EmptyItem(i));
            }
            if let Some(&j) = elems.last().filter(|&&j| j >= n) {
                return Err(InstanceError::ElementOutOfRange {
                    item: i,
                    element: j,
                    n,
                });
            }
        }
        let item_weights = items
            .iter()
            .map(|elems| elems.iter().map(|&j| weights[j]).sum())
            .collect();
        Ok(Self {
            profits,
            weights,
            items,
            capacity,
            item_weights,
        })
    }

    /// Builds an instance from a dense 0/1 incidence matrix (one row per item).
    pub fn from_incidence(
        profits: Vec<u64>,
        weights: Vec<u64>,
        rows: &[Vec<bool>],
        capacity: u64,
    ) -> Result<Self, InstanceError> {
        let n = weights.len();
        let mut items = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n {
                return Err(InstanceError::DimensionMismatch {
                    what: "incidence columns",
                    expected: n,
                    found: row.len(),
                });
            }
            items.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(j, _)| j)
                    .collect(),
            );
        }
        Self::new(profits, weights, items, capacity)
    }

    /// Number of items `m`.
    pub fn num_items(&self) -> usize {
        self.profits.len()
    }

    /// Number of elements `n`.
    pub fn num_elements(&self) -> usize {
        self.weights.len()
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn profits(&self) -> &[u64] {
        &self.profits
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    #[inline]
    pub fn profit(&self, item: usize) -> u64 {
        self.profits[item]
    }

    /// Sorted element indices owned by `item`.
    #[inline]
    pub fn elements(&self, item: usize) -> &[usize] {
        &self.items[item]
    }

    pub fn contains(&self, item: usize, element: usize) -> bool {
        self.items[item].binary_search(&element).is_ok()
    }

    /// Total weight of the elements of `item`, counted on its own.
    pub fn item_weight(&self, item: usize) -> Result<u64, InstanceError> {
        self.item_weights
            .get(item)
            .copied()
            .ok_or(InstanceError::ItemOutOfRange {
                index: item,
                m: self.num_items(),
            })
    }

    pub(crate) fn item_weights(&self) -> &[u64] {
        &self.item_weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Number of ones in the incidence relation.
    pub fn incidence_count(&self) -> usize {
        self.items.iter().map(Vec::len).sum()
    }

    /// Density of the incidence matrix: ones divided by `m * n`.
    pub fn compute_alpha(&self) -> f64 {
        self.incidence_count() as f64 / (self.num_items() * self.num_elements()) as f64
    }

    /// Capacity divided by the total element weight.
    pub fn compute_beta(&self) -> f64 {
        self.capacity as f64 / self.total_weight() as f64
    }

    /// True when every item fits at once, so selecting everything is optimal.
    pub fn is_trivial(&self) -> bool {
        let mut covered = vec![false; self.num_elements()];
        for elems in &self.items {
            for &j in elems {
                covered[j] = true;
            }
        }
        let union: u64 = covered
            .iter()
            .zip(&self.weights)
            .filter(|(&c, _)| c)
            .map(|(_, &w)| w)
            .sum();
        union <= self.capacity
    }

    /// The conventional `m_n_alpha_beta` name, with alpha and beta recomputed.
    pub fn descriptive_name(&self) -> String {
        format!(
            "{}_{}_{:.2}_{:.2}",
            self.num_items(),
            self.num_elements(),
            self.compute_alpha(),
            self.compute_beta()
        )
    }

    /// Parses the canonical text format.
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        parse_instance(text)
    }
}

impl FromStr for Instance {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_instance(s)
    }
}

/// Writes the canonical text format; `parse_instance` reads it back unchanged.
impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {} {}",
            self.num_items(),
            self.num_elements(),
            self.capacity
        )?;
        write_row(f, self.profits.iter())?;
        write_row(f, self.weights.iter())?;
        let mut row = vec![0u8; self.num_elements()];
        for elems in &self.items {
            row.iter_mut().for_each(|b| *b = 0);
            for &j in elems {
                row[j] = 1;
            }
            write_row(f, row.iter())?;
        }
        Ok(())
    }
}

fn write_row<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    values: impl Iterator<Item = T>,
) -> fmt::Result {
    for (k, v) in values.enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("\n")
}

/// Parses an instance, reporting problems with their 1-based line number.
///
/// Tokens may be separated by any whitespace. Blank lines and anything after
/// a `#` are ignored.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut lines = text.lines().enumerate().filter_map(|(k, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then(|| (k + 1, content.split_whitespace().collect::<Vec<_>>()))
    });
    let last_line = text.lines().count().max(1);
    let err = |line, kind| InstanceError::Parse { line, kind };

    let (line, header) = lines
        .next()
        .ok_or_else(|| err(last_line, ParseErrorKind::UnexpectedEof("header")))?;
    if header.len() != 3 {
        return Err(err(line, ParseErrorKind::MalformedHeader));
    }
    let m = parse_count(header[0]).ok_or_else(|| err(line, ParseErrorKind::MalformedHeader))?;
    let n = parse_count(header[1]).ok_or_else(|| err(line, ParseErrorKind::MalformedHeader))?;
    let capacity = parse_int(header[2]).map_err(|k| err(line, k))?;
    if capacity <= 0 {
        return Err(err(line, ParseErrorKind::NonPositiveCapacity));
    }

    let (line, tokens) = lines
        .next()
        .ok_or_else(|| err(last_line, ParseErrorKind::UnexpectedEof("profit line")))?;
    let profits = parse_positive_row(&tokens, m, ParseErrorKind::NonPositiveProfit)
        .map_err(|k| err(line, k))?;

    let (line, tokens) = lines
        .next()
        .ok_or_else(|| err(last_line, ParseErrorKind::UnexpectedEof("weight line")))?;
    let weights = parse_positive_row(&tokens, n, ParseErrorKind::NonPositiveWeight)
        .map_err(|k| err(line, k))?;

    let mut items = Vec::with_capacity(m);
    for i in 0..m {
        let (line, tokens) = lines
            .next()
            .ok_or_else(|| err(last_line, ParseErrorKind::UnexpectedEof("incidence row")))?;
        if tokens.len() != n {
            return Err(err(
                line,
                ParseErrorKind::DimensionMismatch {
                    expected: n,
                    found: tokens.len(),
                },
            ));
        }
        let mut elems = Vec::new();
        for (j, tok) in tokens.iter().enumerate() {
            match *tok {
                "0" => {}
                "1" => elems.push(j),
                other => return Err(err(line, ParseErrorKind::NonBinaryIncidence(other.into()))),
            }
        }
        if elems.is_empty() {
            return Err(err(line, ParseErrorKind::EmptyItem(i)));
        }
        items.push(elems);
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, ParseErrorKind::TrailingData));
    }
    Instance::new(profits, weights, items, capacity as u64)
}

fn parse_int(tok: &str) -> Result<i64, ParseErrorKind> {
    tok.parse::<i64>()
        .map_err(|_| ParseErrorKind::InvalidNumber(tok.to_string()))
}

fn parse_count(tok: &str) -> Option<usize> {
    tok.parse::<usize>().ok().filter(|&v| v > 0)
}

fn parse_positive_row(
    tokens: &[&str],
    expected: usize,
    non_positive: fn(usize) -> ParseErrorKind,
) -> Result<Vec<u64>, ParseErrorKind> {
    if tokens.len() != expected {
        return Err(ParseErrorKind::DimensionMismatch {
            expected,
            found: tokens.len(),
        });
    }
    tokens
        .iter()
        .enumerate()
        .map(|(k, tok)| match parse_int(tok)? {
            v if v > 0 => Ok(v as u64),
            _ => Err(non_positive(k)),
        })
        .collect()
}

/// Generates a random instance with density `alpha` and capacity ratio `beta`.
///
/// The incidence matrix holds exactly `round(alpha * m * n)` ones placed
/// uniformly at random. Any item left without an element takes one over from
/// the currently densest item, so the count is preserved. Profits and weights
/// are uniform integers (see [`GENERATED_PROFIT_RANGE`] and
/// [`GENERATED_WEIGHT_RANGE`]) and `C = round(beta * sum(w))`.
pub fn generate_instance(
    m: usize,
    n: usize,
    alpha: f64,
    beta: f64,
    seed: u64,
) -> Result<Instance, GenerateError> {
    if m == 0 || n == 0 {
        return Err(GenerateError::BadDimensions { m, n });
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(GenerateError::BadAlpha(alpha));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(GenerateError::BadBeta(beta));
    }
    let cells = m * n;
    let ones = ((alpha * cells as f64).round() as usize).min(cells);
    if ones < m {
        return Err(GenerateError::InfeasibleDensity { ones, items: m });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); m];
    for cell in index::sample(&mut rng, cells, ones) {
        rows[cell / n].push(cell % n);
    }
    for i in 0..m {
        if !rows[i].is_empty() {
            continue;
        }
        let donor = (0..m)
            .max_by_key(|&k| (rows[k].len(), std::cmp::Reverse(k)))
            .expect("m >= 1");
        let pick = rng.random_range(0..rows[donor].len());
        rows[donor].swap_remove(pick);
        rows[i].push(rng.random_range(0..n));
    }

    let profits: Vec<u64> = (0..m)
        .map(|_| rng.random_range(GENERATED_PROFIT_RANGE.0..=GENERATED_PROFIT_RANGE.1))
        .collect();
    let weights: Vec<u64> = (0..n)
        .map(|_| rng.random_range(GENERATED_WEIGHT_RANGE.0..=GENERATED_WEIGHT_RANGE.1))
        .collect();
    let total: u64 = weights.iter().sum();
    let capacity = ((beta * total as f64).round() as u64).max(1);

    Ok(Instance::new(profits, weights, rows, capacity).expect("generator output is valid"))
}
