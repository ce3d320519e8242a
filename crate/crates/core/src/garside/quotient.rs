use serde::Serialize;

use super::{Exactness, Letter, WordProblemOracle};

/// Image of the dihedral Artin group in the dihedral Coxeter group of order
/// `2m`. Different images prove two words differ; equal images prove nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralQuotient {
    m: u32,
}

/// `r^rotation · f^flip` with `a ↦ f` and `b ↦ r f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuotientElement {
    pub rotation: u32,
    pub flip: bool,
}

impl DihedralQuotient {
    pub fn new(m: u32) -> Self {
        assert!(m >= 2);
        DihedralQuotient { m }
    }

    fn mul(&self, x: QuotientElement, y: QuotientElement) -> QuotientElement {
        let r = if x.flip { (self.m - y.rotation) % self.m } else { y.rotation };
        QuotientElement { rotation: (x.rotation + r) % self.m, flip: x.flip ^ y.flip }
    }

    fn generator(&self, g: u8) -> QuotientElement {
        QuotientElement { rotation: g as u32, flip: true }
    }

    pub fn order(&self) -> usize {
        2 * self.m as usize
    }
}

impl WordProblemOracle for DihedralQuotient {
    type Element = QuotientElement;

    fn name(&self) -> String {
        format!("dihedral Coxeter quotient of order {}", self.order())
    }

    fn rank(&self) -> usize {
        2
    }

    fn exactness(&self) -> Exactness {
        Exactness::InequalityOnly
    }

    fn identity(&self) -> QuotientElement {
        QuotientElement { rotation: 0, flip: false }
    }

    fn mul_letter(&self, g: &mut QuotientElement, letter: Letter) {
        // generators are involutions in the quotient
        *g = self.mul(*g, self.generator(letter.generator));
    }

    fn coset_rep(&self, g: &QuotientElement, generator: u8) -> QuotientElement {
        (*g).min(self.mul(*g, self.generator(generator)))
    }

    fn describe(&self, g: &QuotientElement) -> String {
        format!("r^{}{}", g.rotation, if g.flip { " f" } else { "" })
    }
}
