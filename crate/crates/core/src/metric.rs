//! Finite pseudo-metric spaces with exact rational distances.
//!
//! Points are addressed by 0-based indices internally; every user-facing
//! message and file uses 1-based labels.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension mismatch: expected {expected} entries in row {row}, found {found}")]
    Dimension {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("nonzero diagonal entry d({i},{i})")]
    NonzeroDiagonal { i: usize },
    #[error("asymmetric entries d({i},{j}) != d({j},{i})")]
    Asymmetric { i: usize, j: usize },
    #[error("negative entry d({i},{j})")]
    Negative { i: usize, j: usize },
    #[error("triangle inequality violated at ({i},{j},{k}): d({i},{k}) > d({i},{j}) + d({j},{k})")]
    Triangle { i: usize, j: usize, k: usize },
    #[error("expected {expected} labels, found {found}")]
    Labels { expected: usize, found: usize },
    #[error("invalid pair ({i},{j}) for n = {n}: need 1 <= i < j <= n")]
    InvalidPair { i: usize, j: usize, n: usize },
    #[error("metric space must have at least one point")]
    Empty,
    #[error("io error: {0}")]
    Io(String),
}

/// Finite pseudo-metric space `(M, ρ)` on points `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSpace {
    n: usize,
    d: Vec<Rational>,
    labels: Option<Vec<String>>,
}

impl MetricSpace {
    /// Validates a full distance matrix. Triangle inequality is checked only
    /// when `strict` is set.
    pub fn new(rows: Vec<Vec<Rational>>, strict: bool) -> Result<Self, MetricError> {
        let n = rows.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MetricError::Dimension {
                    row: r + 1,
                    expected: n,
                    found: row.len(),
                });
            }
        }
        for i in 0..n {
            if !rows[i][i].is_zero() {
                return Err(MetricError::NonzeroDiagonal { i: i + 1 });
            }
            for j in 0..n {
                if rows[i][j].is_negative() {
                    return Err(MetricError::Negative { i: i + 1, j: j + 1 });
                }
                if rows[i][j] != rows[j][i] {
                    let (a, b) = (i.min(j), i.max(j));
                    return Err(MetricError::Asymmetric { i: a + 1, j: b + 1 });
                }
            }
        }
        let space = Self {
            n,
            d: rows.into_iter().flatten().collect(),
            labels: None,
        };
        if strict {
            space.check_triangle()?;
        }
        Ok(space)
    }

    /// Builds a space from a symmetric distance function on 0-based indices.
    pub fn from_fn(
        n: usize,
        strict: bool,
        mut dist: impl FnMut(usize, usize) -> Rational,
    ) -> Result<Self, MetricError> {
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = dist(i, j);
                rows[i][j] = v.clone();
                rows[j][i] = v;
            }
        }
        Self::new(rows, strict)
    }

    /// Builds a space from its pair vector in lexicographic pair order.
    pub fn from_pair_vector(
        n: usize,
        values: &[Rational],
        strict: bool,
    ) -> Result<Self, MetricError> {
        if values.len() != n * n.saturating_sub(1) / 2 {
            return Err(MetricError::Dimension {
                row: 1,
                expected: n * n.saturating_sub(1) / 2,
                found: values.len(),
            });
        }
        Self::from_fn(n, strict, |i, j| values[pair_col(i, j, n)].clone())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, MetricError> {
        if labels.len() != self.n {
            return Err(MetricError::Labels {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Distance between 0-based points `i` and `j`.
    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.d[i * self.n + j]
    }

    /// The vector `(d_12, d_13, ..., d_(n-1)n)` in lexicographic pair order.
    pub fn pair_vector(&self) -> Vec<Rational> {
        pairs(self.n)
            .map(|(i, j)| self.dist(i, j).clone())
            .collect()
    }

    pub fn max_distance(&self) -> Rational {
        self.d.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// Multiplies every distance by a non-negative rational.
    pub fn scaled(&self, factor: &Rational) -> Self {
        assert!(!factor.is_negative(), "scale factor must be non-negative");
        Self {
            n: self.n,
            d: self.d.iter().map(|v| v * factor).collect(),
            labels: self.labels.clone(),
        }
    }

    /// First triple (1-based `(i, j, k)`) with `d_ik > d_ij + d_jk`, if any.
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for k in i + 1..n {
                for j in (0..n).filter(|&j| j != i && j != k) {
                    if self.dist(i, k) > &(self.dist(i, j) + self.dist(j, k)) {
                        return Some((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        None
    }

    pub fn check_triangle(&self) -> Result<(), MetricError> {
        match self.triangle_violation() {
            Some((i, j, k)) => Err(MetricError::Triangle { i, j, k }),
            None => Ok(()),
        }
    }
}

/// 0-based column of the 0-based pair `(i, j)`, `i < j`, in lexicographic order.
#[inline]
pub fn pair_col(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Column index of the 1-based pair `(i, j)` among `(1,2), (1,3), ..., (n-1,n)`.
pub fn pair_index(i: usize, j: usize, n: usize) -> Result<usize, MetricError> {
    if i == 0 || i >= j || j > n {
        return Err(MetricError::InvalidPair { i, j, n });
    }
    Ok(pair_col(i - 1, j - 1, n))
}

/// All 0-based pairs `i < j` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Number of unordered pairs, `n(n-1)/2`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Inverse of [`pair_col`].
pub fn pair_of_col(col: usize, n: usize) -> (usize, usize) {
    let mut rest = col;
    for i in 0..n {
        let len = n - i - 1;
        if rest < len {
            return (i, i + 1 + rest);
        }
        rest -= len;
    }
    panic!("column {col} out of range for n = {n}");
}

/// Pair label as printed in headers, e.g. `(1,3)`.
pub fn pair_label(col: usize, n: usize) -> String {
    let (i, j) = pair_of_col(col, n);
    format!("({},{})", i + 1, j + 1)
}

fn parse_err(line: usize, message: impl Into<String>) -> MetricError {
    MetricError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the whitespace-separated text format:
///
/// ```text
/// # comment
/// 3
/// 0 1 2
/// 1 0 3/2
/// 2 3/2 0
/// labels: a b c
/// ```
pub fn parse_metric(text: &str, strict: bool) -> Result<MetricSpace, MetricError> {
    let mut n: Option<usize> = None;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut labels: Option<Vec<String>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("labels:") {
            if labels.is_some() {
                return Err(parse_err(lineno, "duplicate labels line"));
            }
            labels = Some(rest.split_whitespace().map(str::to_owned).collect());
            continue;
        }
        match n {
            None => {
                let value: usize = line
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("expected point count, got {line:?}")))?;
                if value == 0 {
                    return Err(MetricError::Empty);
                }
                n = Some(value);
            }
            Some(size) => {
                if rows.len() == size {
                    return Err(parse_err(lineno, "unexpected extra row"));
                }
                let row = line
                    .split_whitespace()
                    .map(|tok| {
                        parse_rational(tok)
                            .ok_or_else(|| parse_err(lineno, format!("bad rational {tok:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if row.len() != size {
                    return Err(MetricError::Dimension {
                        row: rows.len() + 1,
                        expected: size,
                        found: row.len(),
                    });
                }
                rows.push(row);
            }
        }
    }

    let n = n.ok_or_else(|| parse_err(0, "missing point count"))?;
    if rows.len() != n {
        return Err(MetricError::RowCount {
            expected: n,
            found: rows.len(),
        });
    }
    let space = MetricSpace::new(rows, strict)?;
    match labels {
        Some(labels) => space.with_labels(labels),
        None => Ok(space),
    }
}

/// Renders the text format read by [`parse_metric`].
pub fn render_metric(space: &MetricSpace) -> String {
    let n = space.n();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| space.dist(i, j).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    if let Some(labels) = space.labels() {
        let _ = writeln!(out, "labels: {}", labels.join(" "));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct MetricJson {
    n: usize,
    d: Vec<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// Parses the JSON form `{"n": 3, "d": ["0","1",...], "labels": [...]}` with
/// `d` in row-major order.
pub fn parse_metric_json(text: &str, strict: bool) -> Result<MetricSpace, MetricError> {
    let doc: MetricJson = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let n = doc.n;
    if n == 0 {
        return Err(MetricError::Empty);
    }
    if doc.d.len() != n * n {
        return Err(MetricError::Dimension {
            row: 1,
            expected: n * n,
            found: doc.d.len(),
        });
    }
    let entries = doc
        .d
        .iter()
        .map(|v| {
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(num) => num.to_string(),
                other => return Err(parse_err(0, format!("bad entry {other}"))),
            };
            parse_rational(&text).ok_or_else(|| parse_err(0, format!("bad rational {text:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rows = entries.chunks(n).map(<[Rational]>::to_vec).collect();
    let space = MetricSpace::new(rows, strict)?;
    match doc.labels {
        Some(labels) => space.with_labels(labels),
        None => Ok(space),
    }
}

pub fn render_metric_json(space: &MetricSpace) -> String {
    let n = space.n();
    let doc = MetricJson {
        n,
        d: (0..n * n)
            .map(|idx| serde_json::Value::String(space.dist(idx / n, idx % n).to_string()))
            .collect(),
        labels: space.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string_pretty(&doc).expect("metric serializes")
}

/// Reads a metric file, choosing the JSON parser for `.json` files.
pub fn load_metric(path: &Path, strict: bool) -> Result<MetricSpace, MetricError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| MetricError::Io(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|ext| ext == "json") {
        parse_metric_json(&text, strict)
    } else {
        parse_metric(&text, strict)
    }
}

/// `d_ij = |i - j|` on `n` collinear points with unit spacing.
pub fn line_metric(n: usize) -> MetricSpace {
    MetricSpace::from_fn(n, true, |i, j| crate::rational::int(j as i64 - i as i64))
        .expect("line metric is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn line_metric_parses() {
        let text = "# line\n4\n0 1 2 3\n1 0 1 2\n2 1 0 1\n3 2 1 0\n";
        let m = parse_metric(text, true).unwrap();
        assert_eq!(m.n(), 4);
        assert_eq!(m.dist(0, 2), &int(2));
        assert_eq!(m, line_metric(4));
    }

    #[test]
    fn all_zero_is_a_valid_pseudo_metric() {
        let m = parse_metric("3\n0 0 0\n0 0 0\n0 0 0\n", true).unwrap();
        assert!(m.pair_vector().iter().all(Zero::is_zero));
    }

    #[test]
    fn triangle_violation_names_witness() {
        let text = "3\n0 1 5\n1 0 1\n5 1 0\n";
        assert_eq!(
            parse_metric(text, true),
            Err(MetricError::Triangle { i: 1, j: 2, k: 3 })
        );
        assert!(parse_metric(text, false).is_ok());
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            parse_metric("3\n0 1 1\n1 0 1\n", false),
            Err(MetricError::RowCount { .. })
        ));
        assert!(matches!(
            parse_metric("2\n0 1 1\n1 0\n", false),
            Err(MetricError::Dimension { .. })
        ));
        assert_eq!(
            parse_metric("2\n0 1\n2 0\n", false),
            Err(MetricError::Asymmetric { i: 1, j: 2 })
        );
        assert_eq!(
            parse_metric("2\n0 -1\n-1 0\n", false),
            Err(MetricError::Negative { i: 1, j: 2 })
        );
        assert_eq!(
            parse_metric("2\n1 1\n1 0\n", false),
            Err(MetricError::NonzeroDiagonal { i: 1 })
        );
    }

    #[test]
    fn mixed_rational_syntax_and_labels() {
        let text = "2\nlabels: a b\n0 1.5\n3/2 0\n";
        let m = parse_metric(text, false).unwrap();
        assert_eq!(m.dist(0, 1), &frac(3, 2));
        assert_eq!(m.labels().unwrap(), ["a", "b"]);
        let round = parse_metric(&render_metric(&m), false).unwrap();
        assert_eq!(round, m);
    }

    #[test]
    fn json_form() {
        let text = r#"{"n": 2, "d": ["0", "7/2", "7/2", 0], "labels": ["x", "y"]}"#;
        let m = parse_metric_json(text, true).unwrap();
        assert_eq!(m.dist(1, 0), &frac(7, 2));
        assert_eq!(parse_metric_json(&render_metric_json(&m), true).unwrap(), m);
    }

    #[test]
    fn pair_index_examples() {
        assert_eq!(pair_index(1, 2, 4), Ok(0));
        assert_eq!(pair_index(3, 4, 4), Ok(5));
        // (1,2),(1,3),(1,4),(1,5),(2,3) precede (2,4)
        assert_eq!(pair_index(2, 4, 5), Ok(5));
        assert!(pair_index(2, 2, 4).is_err());
        assert!(pair_index(3, 2, 4).is_err());
        assert!(pair_index(1, 5, 4).is_err());
    }

    #[test]
    fn pair_index_is_a_lexicographic_bijection() {
        for n in 2..9 {
            let cols: Vec<usize> = pairs(n).map(|(i, j)| pair_col(i, j, n)).collect();
            assert_eq!(cols, (0..pair_count(n)).collect::<Vec<_>>());
            for c in 0..pair_count(n) {
                let (i, j) = pair_of_col(c, n);
                assert_eq!(pair_col(i, j, n), c);
            }
        }
    }
}
