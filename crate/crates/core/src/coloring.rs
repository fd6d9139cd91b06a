//! Colorings, the five coloring kinds and their per-edge predicates.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Color = u32;

/// A vertex coloring `V -> {1..k}` with an explicit palette size `k`.
///
/// The palette may exceed the largest color actually used; parity vectors
/// are always `k` bits long.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<Color>,
    k: Color,
}

impl Coloring {
    pub fn new(colors: Vec<Color>, k: Color) -> Result<Self> {
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(Error::Instance(format!(
                "vertex {v} has color {c}, outside palette [1, {k}]"
            )));
        }
        Ok(Self { colors, k })
    }

    /// Palette size is taken to be the largest entry (1 for an empty coloring).
    pub fn from_colors(colors: Vec<Color>) -> Result<Self> {
        let k = colors.iter().copied().max().unwrap_or(1);
        Self::new(colors, k)
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn palette(&self) -> Color {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    /// Number of distinct colors that actually appear.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn into_colors(self) -> Vec<Color> {
        self.colors
    }
}

pub fn colors_used(c: &Coloring) -> usize {
    c.colors_used()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColoringKind {
    NonMonochromatic,
    Rainbow,
    UniqueMaximum,
    ConflictFree,
    Odd,
}

impl ColoringKind {
    pub const ALL: [ColoringKind; 5] = [
        ColoringKind::NonMonochromatic,
        ColoringKind::Rainbow,
        ColoringKind::UniqueMaximum,
        ColoringKind::ConflictFree,
        ColoringKind::Odd,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            ColoringKind::NonMonochromatic => "nm",
            ColoringKind::Rainbow => "rb",
            ColoringKind::UniqueMaximum => "um",
            ColoringKind::ConflictFree => "cf",
            ColoringKind::Odd => "odd",
        }
    }

    /// Reason code written into a fail certificate.
    pub fn violation_code(self) -> &'static str {
        match self {
            ColoringKind::NonMonochromatic => "monochromatic-edge",
            ColoringKind::Rainbow => "repeated-color",
            ColoringKind::UniqueMaximum => "maximum-not-unique",
            ColoringKind::ConflictFree => "no-unique-color",
            ColoringKind::Odd => "all-parities-even",
        }
    }

    /// Whether the predicate is invariant under permuting color names.
    pub fn is_permutation_invariant(self) -> bool {
        self != ColoringKind::UniqueMaximum
    }
}

impl fmt::Display for ColoringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ColoringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nm" | "non-monochromatic" => Ok(ColoringKind::NonMonochromatic),
            "rb" | "rainbow" => Ok(ColoringKind::Rainbow),
            "um" | "unique-maximum" => Ok(ColoringKind::UniqueMaximum),
            "cf" | "conflict-free" => Ok(ColoringKind::ConflictFree),
            "odd" => Ok(ColoringKind::Odd),
            other => Err(Error::Precondition(format!("unknown coloring kind `{other}`"))),
        }
    }
}

/// Incremental multiset of colors on an edge or path.
///
/// Supports push/pop in stack order so a depth-first walk can evaluate all
/// five predicates in O(1) per step. `counts` is indexed by color.
#[derive(Clone, Debug)]
pub struct ColorTally {
    counts: Vec<u32>,
    len: usize,
    distinct: usize,
    singles: usize,
    odd: usize,
    repeated: usize,
    // (max color, multiplicity of max) after each push
    max_stack: Vec<(Color, u32)>,
}

impl ColorTally {
    pub fn new(palette: Color) -> Self {
        Self {
            counts: vec![0; palette as usize + 1],
            len: 0,
            distinct: 0,
            singles: 0,
            odd: 0,
            repeated: 0,
            max_stack: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Color) {
        let slot = &mut self.counts[c as usize];
        let before = *slot;
        *slot += 1;
        let after = before + 1;
        self.len += 1;
        match before {
            0 => {
                self.distinct += 1;
                self.singles += 1;
            }
            1 => {
                self.singles -= 1;
                self.repeated += 1;
            }
            _ => {}
        }
        if after % 2 == 1 {
            self.odd += 1;
        } else {
            self.odd -= 1;
        }
        let top = match self.max_stack.last() {
            None => (c, 1),
            Some(&(m, _)) if c > m => (c, 1),
            Some(&(m, cnt)) if c == m => (m, cnt + 1),
            Some(&top) => top,
        };
        self.max_stack.push(top);
    }

    /// Removes one occurrence of `c`; must mirror the most recent `push`.
    pub fn pop(&mut self, c: Color) {
        let slot = &mut self.counts[c as usize];
        let before = *slot;
        debug_assert!(before > 0);
        *slot -= 1;
        self.len -= 1;
        match before {
            1 => {
                self.distinct -= 1;
                self.singles -= 1;
            }
            2 => {
                self.singles += 1;
                self.repeated -= 1;
            }
            _ => {}
        }
        if before % 2 == 1 {
            self.odd -= 1;
        } else {
            self.odd += 1;
        }
        self.max_stack.pop();
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn satisfies(&self, kind: ColoringKind) -> bool {
        match kind {
            ColoringKind::NonMonochromatic => self.len <= 1 || self.distinct > 1,
            ColoringKind::Rainbow => self.repeated == 0,
            ColoringKind::UniqueMaximum => {
                self.max_stack.last().map_or(true, |&(_, cnt)| cnt == 1)
            }
            ColoringKind::ConflictFree => self.len == 0 || self.singles > 0,
            ColoringKind::Odd => self.len == 0 || self.odd > 0,
        }
    }
}

/// Evaluates `kind` on the multiset of colors `colors`.
pub fn edge_satisfies(kind: ColoringKind, colors: &[Color]) -> bool {
    let n = colors.len();
    if n <= 1 {
        return true;
    }
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    let runs = || sorted.chunk_by(|a, b| a == b).map(<[Color]>::len);
    match kind {
        ColoringKind::NonMonochromatic => sorted[0] != sorted[n - 1],
        ColoringKind::Rainbow => runs().all(|r| r == 1),
        ColoringKind::UniqueMaximum => n < 2 || sorted[n - 1] != sorted[n - 2],
        ColoringKind::ConflictFree => runs().any(|r| r == 1),
        ColoringKind::Odd => runs().any(|r| r % 2 == 1),
    }
}

/// Per-color occurrence parities on an edge; bit `i - 1` belongs to color `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityVector {
    bits: Vec<u64>,
    len: usize,
}

impl ParityVector {
    pub fn zero(len: usize) -> Self {
        Self {
            bits: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Flips the bit for color `c` (1-based).
    pub fn toggle_color(&mut self, c: Color) {
        let i = c as usize - 1;
        assert!(i < self.len, "color {c} outside parity vector of length {}", self.len);
        self.bits[i / 64] ^= 1 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut p = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                p.bits[i / 64] |= 1 << (i % 64);
            }
        }
        p
    }
}

impl BitXor for &ParityVector {
    type Output = ParityVector;

    fn bitxor(self, rhs: &ParityVector) -> ParityVector {
        assert_eq!(self.len, rhs.len, "parity vectors of different length");
        ParityVector {
            bits: self.bits.iter().zip(&rhs.bits).map(|(a, b)| a ^ b).collect(),
            len: self.len,
        }
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.len {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.get(i) as u8)?;
        }
        f.write_str(")")
    }
}

/// Parity vector of an arbitrary vertex list under `c`.
pub fn parity_of_vertices(c: &Coloring, vertices: &[usize]) -> Result<ParityVector> {
    let mut p = ParityVector::zero(c.palette() as usize);
    for &v in vertices {
        let col = *c
            .colors()
            .get(v)
            .ok_or_else(|| Error::Instance(format!("vertex {v} out of range [0, {})", c.len())))?;
        p.toggle_color(col);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colors_used_counts_distinct_values() {
        assert_eq!(Coloring::from_colors(vec![1, 3, 1]).unwrap().colors_used(), 2);
        assert_eq!(Coloring::from_colors(vec![1]).unwrap().colors_used(), 1);
        assert_eq!(Coloring::from_colors(vec![1, 2, 3, 4]).unwrap().colors_used(), 4);
    }

    #[test]
    fn palette_bounds_are_enforced() {
        assert!(Coloring::new(vec![1, 2], 1).is_err());
        assert!(Coloring::new(vec![0, 1], 3).is_err());
        let c = Coloring::new(vec![1, 1], 4).unwrap();
        assert_eq!(c.palette(), 4);
        assert_eq!(c.colors_used(), 1);
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in ColoringKind::ALL {
            assert_eq!(kind.short_name().parse::<ColoringKind>().unwrap(), kind);
        }
        assert!("xx".parse::<ColoringKind>().is_err());
    }

    #[test]
    fn tally_matches_static_predicate() {
        let seq = [3, 1, 3, 2, 2, 1, 1, 4, 4, 4];
        let mut tally = ColorTally::new(4);
        for i in 0..seq.len() {
            tally.push(seq[i]);
            for kind in ColoringKind::ALL {
                assert_eq!(tally.satisfies(kind), edge_satisfies(kind, &seq[..=i]), "{kind} prefix {i}");
            }
        }
        for i in (0..seq.len()).rev() {
            tally.pop(seq[i]);
            for kind in ColoringKind::ALL {
                assert_eq!(tally.satisfies(kind), edge_satisfies(kind, &seq[..i]), "{kind} pop {i}");
            }
        }
    }

    #[test]
    fn parity_xor_and_display() {
        let a = ParityVector::from_bits(&[1, 0, 1]);
        let b = ParityVector::from_bits(&[1, 1, 0]);
        assert_eq!((&a ^ &b).to_bits(), vec![0, 1, 1]);
        assert_eq!(a.to_string(), "(1,0,1)");
        assert!((&a ^ &a).is_zero());
    }
}
