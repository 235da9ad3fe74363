//! Young diagrams in an `l × r` rectangle and the weight bookkeeping built on them.
//!
//! A diagram is stored as `r` nonincreasing row lengths, each at most `l`.
//! The rectangle travels with the diagram, so mixing diagrams from different
//! rectangles is an explicit error instead of a silent reinterpretation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    parts: Vec<usize>,
    level: usize,
}

impl YoungDiagram {
    /// Validates `parts` against the `level × rows` rectangle, padding with zeros.
    pub fn new(parts: &[i64], rows: usize, level: usize) -> Result<Self> {
        if rows == 0 || level == 0 {
            return Err(Error::InvalidDiagram(format!(
                "rectangle must be nonempty, got rows={rows} level={level}"
            )));
        }
        if parts.len() > rows {
            return Err(Error::InvalidDiagram(format!(
                "{} parts do not fit in {rows} rows",
                parts.len()
            )));
        }
        let mut out = Vec::with_capacity(rows);
        for (i, &p) in parts.iter().enumerate() {
            if p < 0 {
                return Err(Error::InvalidDiagram(format!("part {} is negative ({p})", i + 1)));
            }
            if p as usize > level {
                return Err(Error::InvalidDiagram(format!(
                    "part {} = {p} exceeds level {level}",
                    i + 1
                )));
            }
            if i > 0 && p > parts[i - 1] {
                return Err(Error::InvalidDiagram(format!(
                    "parts must be nonincreasing, found {} then {p}",
                    parts[i - 1]
                )));
            }
            out.push(p as usize);
        }
        out.resize(rows, 0);
        Ok(YoungDiagram { parts: out, level })
    }

    /// Same as [`YoungDiagram::new`] for callers that already hold unsigned parts.
    pub fn from_parts(parts: &[usize], rows: usize, level: usize) -> Result<Self> {
        let signed: Vec<i64> = parts.iter().map(|&p| p as i64).collect();
        Self::new(&signed, rows, level)
    }

    pub fn empty(rows: usize, level: usize) -> Self {
        YoungDiagram { parts: vec![0; rows], level }
    }

    pub fn full(rows: usize, level: usize) -> Self {
        YoungDiagram { parts: vec![level; rows], level }
    }

    /// Text form `"a_1,a_2,...,a_r"`; the empty string is the empty diagram.
    pub fn parse(text: &str, rows: usize, level: usize) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Self::new(&[], rows, level);
        }
        let parts = trimmed
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad diagram part {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&parts, rows, level)
    }

    /// Every diagram in the `level × rows` rectangle, in lexicographic order of parts.
    pub fn all(rows: usize, level: usize) -> Vec<YoungDiagram> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(rows);
        fn rec(rows: usize, cap: usize, level: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            if cur.len() == rows {
                out.push(YoungDiagram { parts: cur.clone(), level });
                return;
            }
            for a in 0..=cap {
                cur.push(a);
                rec(rows, a, level, cur, out);
                cur.pop();
            }
        }
        rec(rows, level, level, &mut cur, &mut out);
        out
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Row length `a_i`, 1-based.
    pub fn part(&self, i: usize) -> usize {
        self.parts[i - 1]
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|&a| a == 0)
    }

    pub fn is_full(&self) -> bool {
        self.parts.iter().all(|&a| a == self.level)
    }

    pub fn same_rectangle(&self, other: &YoungDiagram) -> bool {
        self.rows() == other.rows() && self.level == other.level
    }

    /// Reflection across the diagonal; lands in the `rows × level` rectangle.
    pub fn transpose(&self) -> YoungDiagram {
        let parts = (1..=self.level)
            .map(|j| self.parts.iter().filter(|&&a| a >= j).count())
            .collect();
        YoungDiagram { parts, level: self.rows() }
    }

    /// Complement in the rectangle, rows reversed: `(l - a_r, ..., l - a_1)`.
    pub fn conjugate(&self) -> YoungDiagram {
        let parts = self.parts.iter().rev().map(|&a| self.level - a).collect();
        YoungDiagram { parts, level: self.level }
    }

    /// `I = {l + k - a_k}` and `J = {l + 1 - j + μ_j}` with `μ = λ^T`, both sorted
    /// ascending inside `{1, ..., r + l}`.
    pub fn index_sets(&self) -> (Vec<usize>, Vec<usize>) {
        let l = self.level;
        let i_set: Vec<usize> = self
            .parts
            .iter()
            .enumerate()
            .map(|(k, &a)| l + (k + 1) - a)
            .collect();
        let mu = self.transpose();
        let mut j_set: Vec<usize> = mu
            .parts
            .iter()
            .enumerate()
            .map(|(j, &m)| l - j + m)
            .collect();
        j_set.sort_unstable();
        (i_set, j_set)
    }

    /// The `{R, L}` word of length `r + l`: with parts taken in ascending order
    /// `a'_1 <= ... <= a'_r`, position `a'_k + k` carries `R`.
    pub fn string_of(&self) -> DiagramString {
        let n = self.rows() + self.level;
        let mut symbols = vec![Symbol::L; n];
        for (k, &a) in self.parts.iter().rev().enumerate() {
            symbols[a + k] = Symbol::R;
        }
        DiagramString { symbols }
    }

    /// Elementary rotation `(a_1, ..., a_r) -> (l, a_1, ..., a_{r-1})`, defined when `a_r = 0`.
    pub fn rotate(&self) -> Result<YoungDiagram> {
        if *self.parts.last().expect("rows > 0") != 0 {
            return Err(Error::RotationPrecondition(format!(
                "last part of {self} must vanish"
            )));
        }
        let mut parts = Vec::with_capacity(self.rows());
        parts.push(self.level);
        parts.extend_from_slice(&self.parts[..self.rows() - 1]);
        Ok(YoungDiagram { parts, level: self.level })
    }

    /// Inverse of [`YoungDiagram::rotate`], defined when `a_1 = l`.
    pub fn unrotate(&self) -> Result<YoungDiagram> {
        if self.parts[0] != self.level {
            return Err(Error::RotationPrecondition(format!(
                "first part of {self} must equal the level {}",
                self.level
            )));
        }
        let mut parts = self.parts[1..].to_vec();
        parts.push(0);
        Ok(YoungDiagram { parts, level: self.level })
    }

    /// The `2l × 2r` diagram with blocks `[[λ, 0], [1, λ*]]`, rows listed nonincreasing:
    /// `(2l - a_r, ..., 2l - a_1, a_1, ..., a_r)`.
    pub fn tilde(&self) -> YoungDiagram {
        let l = self.level;
        let mut parts: Vec<usize> = self.parts.iter().rev().map(|&a| 2 * l - a).collect();
        parts.extend_from_slice(&self.parts);
        YoungDiagram { parts, level: 2 * l }
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) in {}x{}", self, self.level, self.rows())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    R,
    L,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramString {
    symbols: Vec<Symbol>,
}

impl DiagramString {
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// 1-based positions holding `R`.
    pub fn r_positions(&self) -> Vec<usize> {
        self.positions(Symbol::R)
    }

    pub fn l_positions(&self) -> Vec<usize> {
        self.positions(Symbol::L)
    }

    fn positions(&self, which: Symbol) -> Vec<usize> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == which)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `k_R`: number of `i > k` with `x_i = R`.
    pub fn k_r(&self, k: usize) -> usize {
        self.symbols.iter().skip(k).filter(|&&s| s == Symbol::R).count()
    }

    /// `k_L`: number of `j <= k` with `x_j = L`.
    pub fn k_l(&self, k: usize) -> usize {
        self.symbols.iter().take(k).filter(|&&s| s == Symbol::L).count()
    }
}

impl fmt::Display for DiagramString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(match s {
                Symbol::R => "R",
                Symbol::L => "L",
            })?;
        }
        Ok(())
    }
}

/// One diagram per marked point, all in the same `level × rows` rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    rows: usize,
    level: usize,
    diagrams: Vec<YoungDiagram>,
}

impl WeightSystem {
    pub fn new(rows: usize, level: usize, diagrams: Vec<YoungDiagram>) -> Result<Self> {
        if rows == 0 || level == 0 {
            return Err(Error::InvalidDiagram(format!(
                "rectangle must be nonempty, got rows={rows} level={level}"
            )));
        }
        for (i, d) in diagrams.iter().enumerate() {
            if d.rows() != rows || d.level() != level {
                return Err(Error::RectangleMismatch(format!(
                    "point {} carries {d:?}, expected the {level}x{rows} rectangle",
                    i + 1
                )));
            }
        }
        Ok(WeightSystem { rows, level, diagrams })
    }

    pub fn empty(rows: usize, level: usize) -> Self {
        WeightSystem { rows, level, diagrams: Vec::new() }
    }

    pub fn parse(texts: &[String], rows: usize, level: usize) -> Result<Self> {
        let diagrams = texts
            .iter()
            .map(|t| YoungDiagram::parse(t, rows, level))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows, level, diagrams)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[YoungDiagram] {
        &self.diagrams
    }

    pub fn total_size(&self) -> usize {
        self.diagrams.iter().map(YoungDiagram::size).sum()
    }

    pub fn push(&mut self, d: YoungDiagram) -> Result<()> {
        if d.rows() != self.rows || d.level() != self.level {
            return Err(Error::RectangleMismatch(format!(
                "{d:?} pushed onto a {}x{} system",
                self.level, self.rows
            )));
        }
        self.diagrams.push(d);
        Ok(())
    }

    pub fn set(&mut self, index: usize, d: YoungDiagram) -> Result<()> {
        if !d.same_rectangle(&self.diagrams[index]) {
            return Err(Error::RectangleMismatch(format!("{d:?} at point {}", index + 1)));
        }
        self.diagrams[index] = d;
        Ok(())
    }

    pub fn transpose(&self) -> WeightSystem {
        WeightSystem {
            rows: self.level,
            level: self.rows,
            diagrams: self.diagrams.iter().map(YoungDiagram::transpose).collect(),
        }
    }

    pub fn conjugate(&self) -> WeightSystem {
        WeightSystem {
            rows: self.rows,
            level: self.level,
            diagrams: self.diagrams.iter().map(YoungDiagram::conjugate).collect(),
        }
    }

    pub fn texts(&self) -> Vec<String> {
        self.diagrams.iter().map(|d| d.to_string()).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct WeightSystemRepr {
    r: usize,
    l: usize,
    n: usize,
    diagrams: Vec<String>,
}

impl Serialize for WeightSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightSystemRepr {
            r: self.rows,
            l: self.level,
            n: self.diagrams.len(),
            diagrams: self.texts(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WeightSystemRepr::deserialize(d)?;
        if repr.n != repr.diagrams.len() {
            return Err(serde::de::Error::custom(format!(
                "n = {} but {} diagrams given",
                repr.n,
                repr.diagrams.len()
            )));
        }
        WeightSystem::parse(&repr.diagrams, repr.r, repr.l).map_err(serde::de::Error::custom)
    }
}
