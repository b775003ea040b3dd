//! Coxeter graphs, words in the generators, and the standard line/complete
//! graph families.
//!
//! Generators are 0-based internally. Everything that crosses an I/O
//! boundary (word syntax, graph files, reports) is 1-based, so `s1` is
//! generator 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bond value m(s,t) for s ≠ t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    /// True when the bond is drawn in the Coxeter graph (m ≥ 3 or ∞).
    pub fn is_edge(self) -> bool {
        match self {
            Bond::Finite(m) => m >= 3,
            Bond::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => f.write_str("inf"),
        }
    }
}

/// A Coxeter graph on generators `0..rank` with a symmetric bond matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    rank: usize,
    bonds: Vec<Bond>,
    neighbors: Vec<Vec<usize>>,
}

impl CoxeterGraph {
    /// The graph with every pair of generators commuting.
    pub fn discrete(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidBond {
                s: 0,
                t: 0,
                value: "rank must be positive".into(),
            });
        }
        let mut bonds = vec![Bond::Finite(2); rank * rank];
        for s in 0..rank {
            bonds[s * rank + s] = Bond::Finite(1);
        }
        Ok(CoxeterGraph {
            rank,
            bonds,
            neighbors: vec![Vec::new(); rank],
        })
    }

    /// Builds a graph from a list of drawn bonds; unlisted pairs commute.
    pub fn from_bonds(rank: usize, bonds: &[(usize, usize, Bond)]) -> Result<Self> {
        let mut g = Self::discrete(rank)?;
        for &(s, t, m) in bonds {
            g.set_bond(s, t, m)?;
        }
        Ok(g)
    }

    fn set_bond(&mut self, s: usize, t: usize, m: Bond) -> Result<()> {
        for x in [s, t] {
            if x >= self.rank {
                return Err(Error::GeneratorOutOfRange {
                    generator: x,
                    rank: self.rank,
                });
            }
        }
        if s == t {
            return Err(Error::InvalidBond {
                s: s + 1,
                t: t + 1,
                value: format!("{m} (diagonal)"),
            });
        }
        if let Bond::Finite(v) = m {
            if v < 2 {
                return Err(Error::InvalidBond {
                    s: s + 1,
                    t: t + 1,
                    value: v.to_string(),
                });
            }
        }
        self.bonds[s * self.rank + t] = m;
        self.bonds[t * self.rank + s] = m;
        self.neighbors[s].retain(|&x| x != t);
        self.neighbors[t].retain(|&x| x != s);
        if m.is_edge() {
            self.neighbors[s].push(t);
            self.neighbors[t].push(s);
            self.neighbors[s].sort_unstable();
            self.neighbors[t].sort_unstable();
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> std::ops::Range<usize> {
        0..self.rank
    }

    /// m(s,t); `Finite(1)` on the diagonal.
    pub fn m(&self, s: usize, t: usize) -> Bond {
        self.bonds[s * self.rank + t]
    }

    /// s ≠ t and m(s,t) ≥ 3.
    pub fn is_adjacent(&self, s: usize, t: usize) -> bool {
        s != t && self.m(s, t).is_edge()
    }

    /// The concurrency relation: equal or adjacent.
    #[inline]
    pub fn is_concurrent(&self, s: usize, t: usize) -> bool {
        s == t || self.m(s, t).is_edge()
    }

    pub fn commutes(&self, s: usize, t: usize) -> bool {
        !self.is_concurrent(s, t)
    }

    pub fn neighbors(&self, s: usize) -> &[usize] {
        &self.neighbors[s]
    }

    /// All drawn edges (s < t) in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.rank {
            for &t in &self.neighbors[s] {
                if s < t {
                    out.push((s, t));
                }
            }
        }
        out
    }

    pub fn is_simply_laced(&self) -> bool {
        self.edges()
            .into_iter()
            .all(|(s, t)| self.m(s, t) == Bond::Finite(3))
    }

    /// A proper 2-colouring of the concurrency graph, if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.rank];
        for root in 0..self.rank {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut stack = vec![root];
            while let Some(s) = stack.pop() {
                for &t in &self.neighbors[s] {
                    if color[t] == u8::MAX {
                        color[t] = 1 - color[s];
                        stack.push(t);
                    } else if color[t] == color[s] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_complete(&self) -> bool {
        (0..self.rank).all(|s| self.neighbors[s].len() + 1 == self.rank)
    }

    /// Checks that a word only uses generators of this graph.
    pub fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&s| s >= self.rank) {
            Some(&generator) => Err(Error::GeneratorOutOfRange {
                generator,
                rank: self.rank,
            }),
            None => Ok(()),
        }
    }

    /// Parses the text graph definition:
    ///
    /// ```text
    /// rank 4
    /// bond 1 2 4
    /// bond 2 3 3
    /// bond 3 4 inf
    /// ```
    ///
    /// Indices are 1-based, unlisted pairs default to m = 2. Blank lines and
    /// `#` comments are ignored.
    pub fn parse_definition(text: &str) -> Result<Self> {
        let err = |line: usize, column: usize, message: String| Error::GraphParse {
            line,
            column,
            message,
        };
        let mut graph: Option<CoxeterGraph> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens = tokenize(content);
            let Some(&(col, head)) = tokens.first() else {
                continue;
            };
            match (head, graph.as_mut()) {
                ("rank", None) => {
                    if tokens.len() != 2 {
                        return Err(err(lineno, col, "expected `rank N`".into()));
                    }
                    let (c, tok) = tokens[1];
                    let rank: usize = tok
                        .parse()
                        .map_err(|_| err(lineno, c, format!("invalid rank `{tok}`")))?;
                    if rank == 0 {
                        return Err(err(lineno, c, "rank must be positive".into()));
                    }
                    graph = Some(CoxeterGraph::discrete(rank)?);
                }
                ("rank", Some(_)) => {
                    return Err(err(lineno, col, "duplicate `rank` line".into()));
                }
                ("bond", None) => {
                    return Err(err(lineno, col, "`bond` before `rank`".into()));
                }
                ("bond", Some(g)) => {
                    if tokens.len() != 4 {
                        return Err(err(lineno, col, "expected `bond i j m`".into()));
                    }
                    let mut idx = [0usize; 2];
                    for k in 0..2 {
                        let (c, tok) = tokens[k + 1];
                        let v: usize = tok
                            .parse()
                            .map_err(|_| err(lineno, c, format!("invalid index `{tok}`")))?;
                        if v == 0 || v > g.rank {
                            return Err(err(
                                lineno,
                                c,
                                format!("index {v} outside 1..={}", g.rank),
                            ));
                        }
                        idx[k] = v - 1;
                    }
                    if idx[0] == idx[1] {
                        return Err(err(lineno, tokens[2].0, "bond on a single vertex".into()));
                    }
                    let (c, tok) = tokens[3];
                    let m = if tok == "inf" || tok == "∞" {
                        Bond::Infinite
                    } else {
                        let v: u32 = tok
                            .parse()
                            .map_err(|_| err(lineno, c, format!("invalid bond value `{tok}`")))?;
                        if v < 3 {
                            return Err(err(lineno, c, format!("bond value {v} must be ≥ 3")));
                        }
                        Bond::Finite(v)
                    };
                    g.set_bond(idx[0], idx[1], m)?;
                }
                (other, _) => {
                    return Err(err(lineno, col, format!("unknown directive `{other}`")));
                }
            }
        }
        graph.ok_or_else(|| err(1, 1, "missing `rank` line".into()))
    }

    /// Inverse of [`CoxeterGraph::parse_definition`].
    pub fn to_definition(&self) -> String {
        let mut out = format!("rank {}\n", self.rank);
        for (s, t) in self.edges() {
            out.push_str(&format!("bond {} {} {}\n", s + 1, t + 1, self.m(s, t)));
        }
        out
    }
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((line[..st].chars().count() + 1, &line[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((line[..st].chars().count() + 1, &line[st..]));
    }
    out
}

/// The graph families used throughout the verification campaigns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Type A_n line, all bonds 3.
    ALine(usize),
    /// Type B_n line, m(s1,s2) = 4.
    BLine(usize),
    /// Type H_n line, m(s1,s2) = 5.
    HLine(usize),
    /// Type F_n line, m(s2,s3) = 4.
    FLine(usize),
    /// Affine C̃_n for odd n: a line on n+1 vertices with 4-bonds at both ends.
    CAffineOdd(usize),
    /// K_n with every bond equal to m.
    Complete { n: usize, m: u32 },
}

impl Family {
    pub fn build(self) -> Result<CoxeterGraph> {
        let invalid = |reason: &str| Error::InvalidFamily {
            family: self.to_string(),
            reason: reason.into(),
        };
        let line = |n: usize, special: &[(usize, u32)]| -> Result<CoxeterGraph> {
            let mut bonds: Vec<(usize, usize, Bond)> =
                (1..n).map(|i| (i - 1, i, Bond::Finite(3))).collect();
            for &(i, m) in special {
                bonds[i].2 = Bond::Finite(m);
            }
            CoxeterGraph::from_bonds(n, &bonds)
        };
        match self {
            Family::ALine(n) => {
                if n == 0 {
                    return Err(invalid("n must be at least 1"));
                }
                line(n, &[])
            }
            Family::BLine(n) => {
                if n < 2 {
                    return Err(invalid("n must be at least 2"));
                }
                line(n, &[(0, 4)])
            }
            Family::HLine(n) => {
                if n < 2 {
                    return Err(invalid("n must be at least 2"));
                }
                line(n, &[(0, 5)])
            }
            Family::FLine(n) => {
                if n < 3 {
                    return Err(invalid("n must be at least 3"));
                }
                line(n, &[(1, 4)])
            }
            Family::CAffineOdd(n) => {
                if n % 2 == 0 {
                    return Err(invalid("n must be odd"));
                }
                if n < 3 {
                    return Err(invalid("n must be at least 3"));
                }
                line(n + 1, &[(0, 4), (n - 1, 4)])
            }
            Family::Complete { n, m } => {
                if n == 0 {
                    return Err(invalid("n must be at least 1"));
                }
                if m < 3 {
                    return Err(invalid("bond value must be at least 3"));
                }
                let mut bonds = Vec::new();
                for s in 0..n {
                    for t in s + 1..n {
                        bonds.push((s, t, Bond::Finite(m)));
                    }
                }
                CoxeterGraph::from_bonds(n, &bonds)
            }
        }
    }

    /// True for the straight line families.
    pub fn is_line(self) -> bool {
        !matches!(self, Family::Complete { .. })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::ALine(n) => write!(f, "A{n}"),
            Family::BLine(n) => write!(f, "B{n}"),
            Family::HLine(n) => write!(f, "H{n}"),
            Family::FLine(n) => write!(f, "F{n}"),
            Family::CAffineOdd(n) => write!(f, "Ct{n}"),
            Family::Complete { n, m } => write!(f, "K{n}m{m}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `A6`, `B5`, `H4`, `F5`, `Ct5` and `K4m4` (K_n with bond m).
    fn from_str(s: &str) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidFamily {
            family: s.to_string(),
            reason: reason.into(),
        };
        let num = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| invalid("expected a positive integer"))
        };
        let fam = if let Some(rest) = s.strip_prefix("Ct") {
            Family::CAffineOdd(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('K') {
            let (n, m) = rest
                .split_once('m')
                .ok_or_else(|| invalid("expected K<n>m<m>"))?;
            Family::Complete {
                n: num(n)?,
                m: num(m)? as u32,
            }
        } else if let Some(rest) = s.strip_prefix('A') {
            Family::ALine(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('B') {
            Family::BLine(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('H') {
            Family::HLine(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('F') {
            Family::FLine(num(rest)?)
        } else {
            return Err(invalid("unknown family letter"));
        };
        fam.build()?;
        Ok(fam)
    }
}

/// A word in the generators, stored 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `s1s3s5`, `s1 s3 s5`, or `1 3 5` / `1,3,5`. The empty string,
    /// `e` and `id` denote the identity. Columns in errors are 1-based.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "e" || trimmed == "id" {
            return Ok(Word::default());
        }
        let chars: Vec<(usize, char)> = text.chars().enumerate().collect();
        let mut letters = Vec::new();
        let explicit = trimmed.contains('s');
        let mut i = 0;
        while i < chars.len() {
            let (col, ch) = chars[i];
            if ch.is_whitespace() || ch == ',' || ch == '.' || ch == '*' {
                i += 1;
                continue;
            }
            if explicit {
                if ch != 's' {
                    return Err(Error::WordParse {
                        column: col + 1,
                        message: format!("expected `s`, found `{ch}`"),
                    });
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if start == i {
                let column = chars.get(i).map_or(chars.len() + 1, |c| c.0 + 1);
                return Err(Error::WordParse {
                    column,
                    message: "expected a generator index".into(),
                });
            }
            let digits: String = chars[start..i].iter().map(|c| c.1).collect();
            let v: usize = digits.parse().map_err(|_| Error::WordParse {
                column: chars[start].0 + 1,
                message: format!("invalid index `{digits}`"),
            })?;
            if v == 0 || v > rank {
                return Err(Error::WordParse {
                    column: chars[start].0 + 1,
                    message: format!("generator s{v} outside s1..s{rank}"),
                });
            }
            letters.push(v - 1);
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.0))
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// Renders a 0-based word as `s1s2s1`; the identity renders as `e`.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|s| format!("s{}", s + 1)).collect()
}

/// Shorthand for tests and examples: 1-based generator indices.
pub fn word1(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|&i| i - 1).collect()
}
