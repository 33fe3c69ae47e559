//! Index combinatorics for Schubert cells of maximal isotropic Grassmannians.
//!
//! A cell of `B_n` / `C_n` is indexed by a strictly decreasing sequence
//! `n >= l_1 > l_2 > ... > l_n >= -n` whose absolute values are `{1, ..., n}`.
//! The positive entries form a strict partition (the diagram), which is how the
//! sequence is stored; the signed form is derived on demand.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("could not parse {0:?} as an integer")]
    Parse(String),
    #[error("expected {expected} entries, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("entries are not strictly decreasing")]
    NotStrictlyDecreasing,
    #[error("absolute values of the entries are not a permutation of 1..={0}")]
    AbsValuesNotPermutation(usize),
    #[error("part {part} exceeds n = {n}")]
    PartExceedsN { part: usize, n: usize },
    #[error("sequences have different n ({0} and {1})")]
    MismatchedN(usize, usize),
    #[error("{mu} is not below {lambda} in the Bruhat order")]
    NotComparable { mu: String, lambda: String },
    #[error("column identity violated: n+1 = {expected}, phi+delta+cols = {found}")]
    IdentityViolated { expected: usize, found: usize },
    #[error("coverage partition violated at index {0}")]
    CoverageViolated(usize),
}

/// A partition with distinct positive parts, stored in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StrictPartition(Vec<usize>);

impl StrictPartition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, ShapeError> {
        parts.retain(|&p| p != 0);
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(ShapeError::NotStrictlyDecreasing);
        }
        Ok(StrictPartition(parts))
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|p|`, the number of boxes.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn largest(&self) -> usize {
        self.part(0)
    }

    /// Parses `4,2,1` (order-insensitive; the empty string is the empty partition).
    pub fn parse(text: &str) -> Result<Self, ShapeError> {
        let mut parts = parse_ints(text)?
            .into_iter()
            .map(|v| usize::try_from(v).map_err(|_| ShapeError::Parse(v.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        StrictPartition::new(parts)
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn parse_ints(text: &str) -> Result<Vec<i64>, ShapeError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i64>()
                .map_err(|_| ShapeError::Parse(tok.to_string()))
        })
        .collect()
}

/// An element of the index set of Schubert cells for rank `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedSequence {
    n: usize,
    parts: StrictPartition,
}

impl SignedSequence {
    pub fn from_strict_partition(parts: StrictPartition, n: usize) -> Result<Self, ShapeError> {
        if let Some(&p) = parts.parts().iter().find(|&&p| p > n) {
            return Err(ShapeError::PartExceedsN { part: p, n });
        }
        Ok(SignedSequence { n, parts })
    }

    /// Builds a sequence from its full signed entries.
    pub fn from_entries(entries: &[i64], n: usize) -> Result<Self, ShapeError> {
        if entries.len() != n {
            return Err(ShapeError::WrongLength {
                expected: n,
                found: entries.len(),
            });
        }
        if entries.windows(2).any(|w| w[0] <= w[1]) {
            return Err(ShapeError::NotStrictlyDecreasing);
        }
        let mut seen = vec![false; n + 1];
        for &e in entries {
            let a = e.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(ShapeError::AbsValuesNotPermutation(n));
            }
            seen[a] = true;
        }
        let parts = entries
            .iter()
            .filter(|&&e| e > 0)
            .map(|&e| e as usize)
            .collect();
        Ok(SignedSequence {
            n,
            parts: StrictPartition(parts),
        })
    }

    /// Parses comma separated signed entries, e.g. `3,2,-1,-4`.
    pub fn parse(text: &str, n: usize) -> Result<Self, ShapeError> {
        SignedSequence::from_entries(&parse_ints(text)?, n)
    }

    /// The minimal element `-1, -2, ..., -n`.
    pub fn identity(n: usize) -> Self {
        SignedSequence {
            n,
            parts: StrictPartition::empty(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partition(&self) -> &StrictPartition {
        &self.parts
    }

    /// Number of positive entries.
    pub fn positive_len(&self) -> usize {
        self.parts.len()
    }

    pub fn entries(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.parts.parts().iter().map(|&p| p as i64).collect();
        let used: BTreeSet<usize> = self.parts.parts().iter().copied().collect();
        out.extend((1..=self.n).filter(|a| !used.contains(a)).map(|a| -(a as i64)));
        out
    }

    /// Entry `j` with 1-based indexing, as in `l_j`.
    pub fn entry(&self, j: usize) -> i64 {
        self.entries()[j - 1]
    }

    pub fn codim(&self) -> usize {
        self.parts.size()
    }

    pub fn complement(&self) -> SignedSequence {
        let e = self.entries();
        let rev: Vec<i64> = e.iter().rev().map(|&x| -x).collect();
        SignedSequence::from_entries(&rev, self.n).expect("complement of a valid sequence")
    }

    /// `mu <= lambda` in the Bruhat order, entrywise on the signed sequences.
    pub fn bruhat_leq(&self, lambda: &SignedSequence) -> Result<bool, ShapeError> {
        if self.n != lambda.n {
            return Err(ShapeError::MismatchedN(self.n, lambda.n));
        }
        Ok(self
            .entries()
            .iter()
            .zip(lambda.entries())
            .all(|(&m, l)| m <= l))
    }

    /// All `2^n` sequences for rank `n`, ordered by codimension then partition.
    pub fn all(n: usize) -> Vec<SignedSequence> {
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u32..(1u32 << n) {
            let parts: Vec<usize> = (1..=n).rev().filter(|&p| mask & (1 << (p - 1)) != 0).collect();
            out.push(SignedSequence {
                n,
                parts: StrictPartition(parts),
            });
        }
        out.sort_by(|a, b| (a.codim(), &a.parts).cmp(&(b.codim(), &b.parts)));
        out
    }
}

impl fmt::Display for SignedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries().iter().map(|e| e.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// A connected component of a skew diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Boxes as `(row, column)`, both 1-based, in row-major order.
    pub boxes: Vec<(usize, usize)>,
    /// Occupied rows, increasing.
    pub rows: Vec<usize>,
    /// Occupied columns, increasing.
    pub columns: Vec<usize>,
    /// The occupied columns together with the column just to their left
    /// (which is 0 when the component meets the first column).
    pub col: Vec<usize>,
    pub meets_first_column: bool,
}

impl Component {
    pub fn max_column(&self) -> usize {
        *self.columns.last().expect("components are nonempty")
    }
}

/// A skew diagram `lambda / mu` for `mu <= lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewShape {
    lambda: SignedSequence,
    mu: SignedSequence,
    boxes: Vec<(usize, usize)>,
    components: Vec<Component>,
    fixed_points: BTreeSet<usize>,
}

impl SkewShape {
    pub fn new(lambda: &SignedSequence, mu: &SignedSequence) -> Result<Self, ShapeError> {
        if !mu.bruhat_leq(lambda)? {
            return Err(ShapeError::NotComparable {
                mu: mu.to_string(),
                lambda: lambda.to_string(),
            });
        }
        let n = lambda.n();
        let mut boxes = Vec::new();
        for j in 1..=n {
            let lo = mu.partition().part(j - 1);
            let hi = lambda.partition().part(j - 1);
            boxes.extend((lo + 1..=hi).map(|c| (j, c)));
        }

        // flood fill with king-move adjacency
        let mut label = vec![usize::MAX; boxes.len()];
        let mut components = Vec::new();
        for start in 0..boxes.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut queue = VecDeque::from([start]);
            label[start] = id;
            let mut members = Vec::new();
            while let Some(i) = queue.pop_front() {
                members.push(i);
                let (r, c) = boxes[i];
                for (k, &(r2, c2)) in boxes.iter().enumerate() {
                    if label[k] == usize::MAX && r.abs_diff(r2) <= 1 && c.abs_diff(c2) <= 1 {
                        label[k] = id;
                        queue.push_back(k);
                    }
                }
            }
            members.sort_unstable();
            let cbox: Vec<(usize, usize)> = members.iter().map(|&i| boxes[i]).collect();
            let rows: BTreeSet<usize> = cbox.iter().map(|b| b.0).collect();
            let columns: BTreeSet<usize> = cbox.iter().map(|b| b.1).collect();
            let min_col = *columns.iter().next().expect("nonempty");
            let mut col: Vec<usize> = vec![min_col - 1];
            col.extend(columns.iter().copied());
            components.push(Component {
                boxes: cbox,
                rows: rows.into_iter().collect(),
                columns: columns.into_iter().collect(),
                col,
                meets_first_column: min_col == 1,
            });
        }

        let le = lambda.entries();
        let me = mu.entries();
        let mut fixed_points: BTreeSet<usize> = (1..=n).filter(|&j| le[j - 1] == me[j - 1]).collect();
        if !components.iter().any(|c| c.meets_first_column) {
            fixed_points.insert(0);
        }
        Ok(SkewShape {
            lambda: lambda.clone(),
            mu: mu.clone(),
            boxes,
            components,
            fixed_points,
        })
    }

    pub fn lambda(&self) -> &SignedSequence {
        &self.lambda
    }

    pub fn mu(&self) -> &SignedSequence {
        &self.mu
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn boxes(&self) -> &[(usize, usize)] {
        &self.boxes
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Fixed points as 1-based row indices; `0` is present when no component
    /// meets the first column.
    pub fn fixed_points(&self) -> &BTreeSet<usize> {
        &self.fixed_points
    }

    pub fn zero_is_fixed(&self) -> bool {
        self.fixed_points.contains(&0)
    }

    pub fn phi(&self) -> usize {
        self.fixed_points.len()
    }

    pub fn delta(&self) -> usize {
        self.components.len()
    }

    pub fn epsilon(&self) -> usize {
        self.components.iter().filter(|c| !c.meets_first_column).count()
    }

    pub fn occupied_columns(&self) -> usize {
        self.boxes.iter().map(|b| b.1).collect::<BTreeSet<_>>().len()
    }

    /// The component meeting the first column, if any.
    pub fn first_column_component(&self) -> Option<&Component> {
        self.components.iter().find(|c| c.meets_first_column)
    }

    /// `lambda_1 >= mu_1 >= lambda_2 >= ... >= lambda_n >= mu_n` on the signed entries.
    pub fn is_skew_row(&self) -> bool {
        let le = self.lambda.entries();
        let me = self.mu.entries();
        let mut chain = Vec::with_capacity(2 * le.len());
        for (l, m) in le.iter().zip(&me) {
            chain.push(*l);
            chain.push(*m);
        }
        chain.windows(2).all(|w| w[0] >= w[1])
    }

    /// Returns `(phi, delta, #columns)` after checking `n + 1 = phi + delta + #columns`.
    pub fn column_identity(&self) -> Result<(usize, usize, usize), ShapeError> {
        let t = (self.phi(), self.delta(), self.occupied_columns());
        let found = t.0 + t.1 + t.2;
        if found != self.n() + 1 {
            return Err(ShapeError::IdentityViolated {
                expected: self.n() + 1,
                found,
            });
        }
        Ok(t)
    }

    /// The index of `{0, ..., n}` covered by each fixed point (`|lambda_j|`, or 0).
    pub fn fixed_point_index(&self, j: usize) -> usize {
        if j == 0 {
            0
        } else {
            self.lambda.entry(j).unsigned_abs() as usize
        }
    }

    /// Checks that fixed points and the sets `col(d)` partition `{0, ..., n}`.
    pub fn check_coverage(&self) -> Result<(), ShapeError> {
        let n = self.n();
        let mut hits = vec![0usize; n + 1];
        for &j in &self.fixed_points {
            hits[self.fixed_point_index(j)] += 1;
        }
        for c in &self.components {
            for &i in &c.col {
                hits[i] += 1;
            }
        }
        match hits.iter().position(|&h| h != 1) {
            Some(i) => Err(ShapeError::CoverageViolated(i)),
            None => Ok(()),
        }
    }

    /// Left-justified rendering: `.` for boxes of `mu`, `#` for boxes of the skew shape.
    pub fn render(&self) -> String {
        self.render_with(|_| '#')
    }

    /// Like [`SkewShape::render`] but labels skew boxes by component (`A`, `B`, ...).
    pub fn render_components(&self) -> String {
        let comps = &self.components;
        self.render_with(|b| {
            let id = comps.iter().position(|c| c.boxes.contains(&b)).unwrap_or(0);
            (b'A' + (id % 26) as u8) as char
        })
    }

    fn render_with(&self, skew: impl Fn((usize, usize)) -> char) -> String {
        let mut out = String::new();
        for j in 1..=self.lambda.positive_len() {
            let lo = self.mu.partition().part(j - 1);
            let hi = self.lambda.partition().part(j - 1);
            let line: String = (1..=hi)
                .map(|c| if c <= lo { '.' } else { skew((j, c)) })
                .collect();
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str, n: usize) -> SignedSequence {
        SignedSequence::parse(text, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        let s = seq("3,2,-1,-4", 4);
        assert_eq!(s.partition().parts(), &[3, 2]);
        assert!(seq("-1,-2,-3,-4", 4).partition().is_empty());
        assert_eq!(
            SignedSequence::parse("3,3,-1,-4", 4),
            Err(ShapeError::NotStrictlyDecreasing)
        );
        assert_eq!(
            SignedSequence::parse("3,2,-1", 4),
            Err(ShapeError::WrongLength { expected: 4, found: 3 })
        );
        assert_eq!(
            SignedSequence::parse("3,2,-2,-4", 4),
            Err(ShapeError::AbsValuesNotPermutation(4))
        );
        assert!(matches!(SignedSequence::parse("3,x", 2), Err(ShapeError::Parse(_))));
    }

    #[test]
    fn from_partition_examples() {
        let p = |v: Vec<usize>| StrictPartition::new(v).unwrap();
        let s = SignedSequence::from_strict_partition(p(vec![4, 2, 1]), 4).unwrap();
        assert_eq!(s.entries(), vec![4, 2, 1, -3]);
        let s = SignedSequence::from_strict_partition(p(vec![]), 3).unwrap();
        assert_eq!(s.entries(), vec![-1, -2, -3]);
        let s = SignedSequence::from_strict_partition(p(vec![6, 5, 3, 1]), 6).unwrap();
        assert_eq!(s.entries(), vec![6, 5, 3, 1, -2, -4]);
        assert_eq!(
            SignedSequence::from_strict_partition(p(vec![5, 1]), 4),
            Err(ShapeError::PartExceedsN { part: 5, n: 4 })
        );
    }

    #[test]
    fn codim_and_order() {
        assert_eq!(seq("3,2,-1,-4", 4).codim(), 5);
        assert_eq!(seq("-1,-2,-3,-4", 4).codim(), 0);
        assert_eq!(seq("4,2,1,-3", 4).codim(), 7);
        let mu = seq("3,2,-1,-4", 4);
        let la = seq("4,2,1,-3", 4);
        assert!(mu.bruhat_leq(&la).unwrap());
        assert!(la.bruhat_leq(&la).unwrap());
        assert!(!la.bruhat_leq(&mu).unwrap());
        assert_eq!(mu.bruhat_leq(&seq("1,-2,-3", 3)), Err(ShapeError::MismatchedN(4, 3)));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(seq("4,2,1,-3", 4).complement().entries(), vec![3, -1, -2, -4]);
        assert_eq!(SignedSequence::identity(3).complement().entries(), vec![3, 2, 1]);
    }

    #[test]
    fn skew_examples() {
        let sk = SkewShape::new(&seq("4,2,1,-3", 4), &seq("3,2,-1,-4", 4)).unwrap();
        assert_eq!(sk.boxes(), &[(1, 4), (3, 1)]);
        assert_eq!(sk.delta(), 2);
        assert_eq!(sk.epsilon(), 1);
        assert_eq!(sk.fixed_points().iter().copied().collect::<Vec<_>>(), vec![2]);
        assert!(sk.is_skew_row());
        assert_eq!(sk.column_identity().unwrap(), (1, 2, 2));
        let d = sk.components().iter().find(|c| !c.meets_first_column).unwrap();
        assert_eq!(d.col, vec![3, 4]);

        let la = seq("3,2,-1,-4", 4);
        let sk = SkewShape::new(&la, &la).unwrap();
        assert!(sk.boxes().is_empty());
        assert_eq!(sk.delta(), 0);
        assert_eq!(sk.fixed_points().len(), 5);
        assert!(sk.is_skew_row());
        assert_eq!(sk.column_identity().unwrap(), (5, 0, 0));

        let sk = SkewShape::new(&la, &seq("1,-2,-3,-4", 4)).unwrap();
        assert_eq!(sk.boxes(), &[(1, 2), (1, 3), (2, 1), (2, 2)]);
        assert_eq!(sk.delta(), 1);
        assert!(sk.components()[0].meets_first_column);
        assert!(!sk.is_skew_row());

        let sk = SkewShape::new(&seq("6,5,3,1,-2,-4", 6), &seq("5,3,1,-2,-4,-6", 6)).unwrap();
        assert_eq!(sk.column_identity().unwrap(), (0, 1, 6));

        assert!(matches!(
            SkewShape::new(&seq("3,2,-1,-4", 4), &seq("4,2,1,-3", 4)),
            Err(ShapeError::NotComparable { .. })
        ));
    }

    #[test]
    fn render_marks_components() {
        let sk = SkewShape::new(&seq("4,2,1,-3", 4), &seq("3,2,-1,-4", 4)).unwrap();
        assert_eq!(sk.render(), "...#\n..\n#\n");
        assert_eq!(sk.render_components(), "...A\n..\nB\n");
    }
}
