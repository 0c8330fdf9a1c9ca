//! Weak admissible pairs, their degree matrices, duality and kinds.
//!
//! A weak admissible pair of length `t` is two nondecreasing integer
//! sequences `a`, `b` with `a[i] < b[i]`. Its degree is `sum(b[i] - a[i])`.
//! Pairs that differ by a common shift are equivalent; the normal form
//! has `a[0] == 0`.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("sequences have different lengths ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("length {0} is too short, a pair needs t >= 2")]
    TooShort(usize),
    #[error("a is not nondecreasing at index {0}")]
    ANotMonotone(usize),
    #[error("b is not nondecreasing at index {0}")]
    BNotMonotone(usize),
    #[error("a_i < b_i violated at index {0}")]
    NotBelow(usize),
}

/// Clamped difference: `b - a` when positive, otherwise zero.
pub fn delta(a: i64, b: i64) -> i64 {
    if b > a {
        b - a
    } else {
        0
    }
}

/// A validated weak admissible pair. Field order gives the lexicographic
/// ordering used to pick catalog representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeakAdmissiblePair {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl WeakAdmissiblePair {
    /// Validates the two sequences. Indices in diagnostics are 1-based.
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self, PairError> {
        if a.len() != b.len() {
            return Err(PairError::LengthMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        if a.len() < 2 {
            return Err(PairError::TooShort(a.len()));
        }
        if let Some(i) = (1..a.len()).find(|&i| a[i] < a[i - 1]) {
            return Err(PairError::ANotMonotone(i + 1));
        }
        if let Some(i) = (1..b.len()).find(|&i| b[i] < b[i - 1]) {
            return Err(PairError::BNotMonotone(i + 1));
        }
        if let Some(i) = (0..a.len()).find(|&i| a[i] >= b[i]) {
            return Err(PairError::NotBelow(i + 1));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> i64 {
        self.a.iter().zip(&self.b).map(|(a, b)| b - a).sum()
    }

    /// Adds `k` to every entry of both sequences.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            a: self.a.iter().map(|x| x + k).collect(),
            b: self.b.iter().map(|x| x + k).collect(),
        }
    }

    /// The equivalent pair with `a[0] == 0`.
    pub fn normalize(&self) -> Self {
        self.shifted(-self.a[0])
    }

    pub fn is_normalized(&self) -> bool {
        self.a[0] == 0
    }

    pub fn is_equivalent(&self, other: &Self) -> bool {
        self.normalize() == other.normalize()
    }

    pub fn degree_matrix(&self) -> DegreeMatrix {
        let entries = self
            .a
            .iter()
            .map(|&ai| self.b.iter().map(|&bj| delta(ai, bj)).collect())
            .collect();
        DegreeMatrix {
            degree: self.degree(),
            entries,
        }
    }

    /// Negate-and-reverse, then normalize. The degree matrix of the result
    /// is the anti-transpose of this pair's matrix.
    pub fn dual(&self) -> Self {
        let a = self.b.iter().rev().map(|x| -x).collect();
        let b = self.a.iter().rev().map(|x| -x).collect();
        Self { a, b }.normalize()
    }

    pub fn kind_signature(&self) -> KindSignature {
        self.degree_matrix().kind_signature()
    }
}

impl<'de> Deserialize<'de> for WeakAdmissiblePair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a: Vec<i64>,
            b: Vec<i64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        WeakAdmissiblePair::new(raw.a, raw.b).map_err(de::Error::custom)
    }
}

impl fmt::Display for WeakAdmissiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "(({}),({}))", join(&self.a), join(&self.b))
    }
}

/// Square matrix of clamped differences, tagged with the degree it was
/// formed for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeMatrix {
    pub degree: i64,
    pub entries: Vec<Vec<i64>>,
}

impl DegreeMatrix {
    pub fn new(degree: i64, entries: Vec<Vec<i64>>) -> Self {
        Self { degree, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn trace(&self) -> i64 {
        (0..self.len()).map(|i| self.entries[i][i]).sum()
    }

    /// Transpose across the antidiagonal: `m'[i][j] = m[t-1-j][t-1-i]`.
    pub fn anti_transpose(&self) -> Self {
        let t = self.len();
        let entries = (0..t)
            .map(|i| (0..t).map(|j| self.entries[t - 1 - j][t - 1 - i]).collect())
            .collect();
        Self {
            degree: self.degree,
            entries,
        }
    }

    /// `m[i][j] > 0` implies `m[j][i] < degree`.
    pub fn satisfies_lemma(&self) -> bool {
        let t = self.len();
        (0..t).all(|i| {
            (0..t).all(|j| self.entries[i][j] <= 0 || self.entries[j][i] < self.degree)
        })
    }

    /// A zero directly below the diagonal splits the determinant into two
    /// blocks, so every surface of this type is reducible.
    pub fn is_reducible_type(&self) -> bool {
        (0..self.len().saturating_sub(1)).any(|i| self.entries[i + 1][i] == 0)
    }

    pub fn kind_signature(&self) -> KindSignature {
        let d = self.degree;
        let cells = self
            .entries
            .iter()
            .map(|row| row.iter().map(|&v| Cell::classify(v, d)).collect())
            .collect();
        KindSignature {
            degree: d,
            cells,
        }
    }

    /// Recovers the normalized pair with this degree matrix, if one exists.
    ///
    /// Entries on and above the diagonal of a degree matrix are always
    /// positive, so with `a[0] = 0` the first row is `b` and the diagonal
    /// fixes `a`.
    pub fn realize(&self) -> Option<WeakAdmissiblePair> {
        let t = self.len();
        if t < 2 || self.entries.iter().any(|row| row.len() != t) {
            return None;
        }
        let b: Vec<i64> = self.entries[0].clone();
        let a: Vec<i64> = (0..t).map(|i| b[i] - self.entries[i][i]).collect();
        let pair = WeakAdmissiblePair::new(a, b).ok()?;
        let m = pair.degree_matrix();
        (m.entries == self.entries && m.degree == self.degree).then_some(pair)
    }
}

impl fmt::Display for DegreeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

/// One cell of a kind signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Zero,
    Small(i64),
    Big,
}

impl Cell {
    fn classify(v: i64, degree: i64) -> Self {
        if v <= 0 {
            Cell::Zero
        } else if v < degree {
            Cell::Small(v)
        } else {
            Cell::Big
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Zero => write!(f, "0"),
            Cell::Small(v) => write!(f, "{v}"),
            Cell::Big => write!(f, "BIG"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Zero => s.serialize_i64(0),
            Cell::Small(v) => s.serialize_i64(*v),
            Cell::Big => s.serialize_str("BIG"),
        }
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(0) => Ok(Cell::Zero),
            Raw::Int(v) if v > 0 => Ok(Cell::Small(v)),
            Raw::Int(v) => Err(de::Error::custom(format!("negative cell {v}"))),
            Raw::Str(s) if s == "BIG" => Ok(Cell::Big),
            Raw::Str(s) => Err(de::Error::custom(format!("unknown cell {s:?}"))),
        }
    }
}

/// Entry-wise abstraction of a degree matrix: entries `>= degree` collapse
/// to `BIG`. Two pairs are of the same kind iff their signatures agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KindSignature {
    pub degree: i64,
    pub cells: Vec<Vec<Cell>>,
}

impl KindSignature {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn anti_transpose(&self) -> Self {
        let t = self.len();
        let cells = (0..t)
            .map(|i| (0..t).map(|j| self.cells[t - 1 - j][t - 1 - i]).collect())
            .collect();
        Self {
            degree: self.degree,
            cells,
        }
    }

    pub fn zero_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.cells.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if *c == Cell::Zero {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for KindSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .cells
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}
