use super::{Exactness, Letter, Word, WordProblemOracle};

/// Free group on `rank` generators; elements are freely reduced words.
///
/// Covers parts whose defining graph has no edges (rank 1 is ℤ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroup {
    names: Vec<String>,
}

impl FreeGroup {
    pub fn new(names: Vec<String>) -> Self {
        assert!(!names.is_empty() && names.len() <= u8::MAX as usize);
        FreeGroup { names }
    }

    pub fn with_rank(rank: usize) -> Self {
        Self::new((0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect())
    }
}

impl WordProblemOracle for FreeGroup {
    type Element = Word;

    fn name(&self) -> String {
        format!("free group on ({})", self.names.join(", "))
    }

    fn rank(&self) -> usize {
        self.names.len()
    }

    fn exactness(&self) -> Exactness {
        Exactness::Exact
    }

    fn identity(&self) -> Word {
        Word::default()
    }

    fn mul_letter(&self, g: &mut Word, letter: Letter) {
        if g.0.last() == Some(&letter.inv()) {
            g.0.pop();
        } else {
            g.0.push(letter);
        }
    }

    /// Strip the trailing power of the generator.
    fn coset_rep(&self, g: &Word, generator: u8) -> Word {
        let keep = g.0.iter().rposition(|l| l.generator != generator).map_or(0, |i| i + 1);
        Word(g.0[..keep].to_vec())
    }

    fn describe(&self, g: &Word) -> String {
        if g.is_empty() {
            return "1".into();
        }
        g.0.iter()
            .map(|l| {
                let n = &self.names[l.generator as usize];
                if l.inverse {
                    format!("{n}^-1")
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}
