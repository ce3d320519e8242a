//! Word problems for the parabolic subgroups that the link developments need.
//!
//! [`WordProblemOracle`] is the contract; [`DihedralArtin`] (Garside normal
//! form, exact), [`FreeGroup`] (free reduction, exact) and
//! [`DihedralQuotient`] (image in the finite dihedral Coxeter group, sound only
//! for inequality) implement it.

mod dihedral;
mod free;
mod quotient;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

pub use dihedral::{DihedralArtin, DihedralElement, Simple};
pub use free::FreeGroup;
pub use quotient::{DihedralQuotient, QuotientElement};

/// Default cap on enumerated group elements.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// A generator or its inverse. Generators are numbered from 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(generator: u8) -> Self {
        Letter { generator, inverse: false }
    }

    pub const fn neg(generator: u8) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A word over generators and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `generator^exponent` as a word.
    pub fn power(generator: u8, exponent: i64) -> Word {
        let l = if exponent >= 0 { Letter::pos(generator) } else { Letter::neg(generator) };
        Word(vec![l; exponent.unsigned_abs() as usize])
    }

    /// Free reduction: cancel adjacent `x x⁻¹` pairs.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Parses whitespace-separated letters, e.g. `"a b A b"`; uppercase is
    /// the inverse. Letters map to generators by alphabet position.
    pub fn parse(text: &str) -> Option<Word> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            for c in tok.chars() {
                if !c.is_ascii_alphabetic() {
                    return None;
                }
                let g = (c.to_ascii_lowercase() as u8) - b'a';
                out.push(Letter { generator: g, inverse: c.is_ascii_uppercase() });
            }
        }
        Some(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let c = (b'a' + l.generator) as char;
                if l.inverse { c.to_ascii_uppercase() } else { c }.to_string()
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Number of maximal single-generator blocks of the freely reduced word.
pub fn syllable_length(word: &Word) -> usize {
    let reduced = word.freely_reduced();
    let mut count = 0;
    let mut prev: Option<u8> = None;
    for l in reduced.letters() {
        if prev != Some(l.generator) {
            count += 1;
            prev = Some(l.generator);
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// Decides equality.
    Exact,
    /// Different images prove inequality; equal images prove nothing.
    InequalityOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Equal,
    NotEqual,
    Unknown,
}

/// Word-problem contract used by the link developments.
pub trait WordProblemOracle: Sync {
    type Element: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    fn name(&self) -> String;
    fn rank(&self) -> usize;
    fn exactness(&self) -> Exactness;
    fn identity(&self) -> Self::Element;
    fn mul_letter(&self, g: &mut Self::Element, letter: Letter);

    /// Canonical representative of the coset `g⟨generator⟩`: equal for two
    /// elements exactly when they lie in the same coset.
    fn coset_rep(&self, g: &Self::Element, generator: u8) -> Self::Element;

    /// Human-readable rendering of an element.
    fn describe(&self, g: &Self::Element) -> String;

    fn evaluate(&self, word: &Word) -> Self::Element {
        let mut g = self.identity();
        for &l in word.letters() {
            self.mul_letter(&mut g, l);
        }
        g
    }

    fn equals(&self, w1: &Word, w2: &Word) -> Decision {
        let same = self.evaluate(w1) == self.evaluate(w2);
        match (self.exactness(), same) {
            (_, false) => Decision::NotEqual,
            (Exactness::Exact, true) => Decision::Equal,
            (Exactness::InequalityOnly, true) => Decision::Unknown,
        }
    }

    /// Distinct elements of word length at most `radius`, in BFS order.
    fn ball(&self, radius: usize, cap: usize) -> Result<Vec<Self::Element>> {
        Ok(self.ball_with_words(radius, cap)?.into_iter().map(|(g, _)| g).collect())
    }

    /// Like [`ball`](Self::ball), with a shortlex-least geodesic word for
    /// each element.
    fn ball_with_words(&self, radius: usize, cap: usize) -> Result<Vec<(Self::Element, Word)>> {
        let id = self.identity();
        let mut seen: HashSet<Self::Element> = HashSet::from([id.clone()]);
        let mut out = vec![(id.clone(), Word::default())];
        let mut queue = VecDeque::from([(id, Word::default(), 0usize)]);
        let letters = all_letters(self.rank());
        while let Some((g, w, d)) = queue.pop_front() {
            if d == radius {
                continue;
            }
            for &l in &letters {
                let mut h = g.clone();
                self.mul_letter(&mut h, l);
                if seen.insert(h.clone()) {
                    if out.len() >= cap {
                        return Err(Error::ResourceLimit { cap, partial: out.len() });
                    }
                    let mut hw = w.clone();
                    hw.0.push(l);
                    out.push((h.clone(), hw.clone()));
                    queue.push_back((h, hw, d + 1));
                }
            }
        }
        Ok(out)
    }
}

/// Letters in shortlex order: `a, A, b, B, ...`.
pub fn all_letters(rank: usize) -> Vec<Letter> {
    (0..rank as u8).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syllable_length_examples() {
        assert_eq!(syllable_length(&Word::parse("a a B").unwrap()), 2);
        assert_eq!(syllable_length(&Word::default()), 0);
        assert_eq!(syllable_length(&Word::parse("a b a b").unwrap()), 4);
        assert_eq!(syllable_length(&Word::parse("a b B a").unwrap()), 1);
    }

    #[test]
    fn word_parse_display_round_trip() {
        let w = Word::parse("a b A b").unwrap();
        assert_eq!(w.to_string(), "a b A b");
        assert_eq!(w.inverse().to_string(), "B a B A");
        assert!(Word::parse("a 1").is_none());
    }
}
