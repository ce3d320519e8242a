use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::{Exactness, Letter, Word, WordProblemOracle};
use crate::error::{Error, Result};

/// The dihedral Artin group `A_{a,b} = ⟨a, b | prod(a,b;m) = prod(b,a;m)⟩`,
/// `2 <= m < ∞`, with generators `a = 0` and `b = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralArtin {
    m: u32,
    names: [String; 2],
}

/// A proper, non-trivial divisor of the Garside element: the alternating word
/// of length `len` (`1 <= len < m`) starting with `first`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Simple {
    pub first: u8,
    pub len: u32,
}

impl Simple {
    pub fn last(self) -> u8 {
        if self.len % 2 == 1 {
            self.first
        } else {
            1 - self.first
        }
    }

    fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.len).map(move |i| Letter::pos(if i % 2 == 0 { self.first } else { 1 - self.first }))
    }
}

/// Left-greedy Garside normal form `Δ^delta_power · x_1 ⋯ x_r`.
///
/// Every `x_i` is a proper simple element and consecutive factors are
/// left-weighted, which in the dihedral case means the last letter of `x_i`
/// equals the first letter of `x_{i+1}`. Two elements are equal iff their
/// normal forms are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DihedralElement {
    pub delta_power: i64,
    pub factors: Vec<Simple>,
}

impl DihedralElement {
    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }
}

/// Δ-power, then number of factors, then lexicographic.
impl Ord for DihedralElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.delta_power
            .cmp(&other.delta_power)
            .then(self.factors.len().cmp(&other.factors.len()))
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for DihedralElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl DihedralArtin {
    pub fn new(m: u32) -> Result<Self> {
        Self::with_names(m, "a", "b")
    }

    pub fn with_names(m: u32, a: &str, b: &str) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("dihedral label must be >= 2, got {m}")));
        }
        Ok(DihedralArtin { m, names: [a.to_string(), b.to_string()] })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Conjugation by Δ: swaps the generators when `m` is odd.
    fn tau(&self, s: Simple) -> Simple {
        if self.m % 2 == 1 {
            Simple { first: 1 - s.first, len: s.len }
        } else {
            s
        }
    }

    fn mul_generator(&self, g: &mut DihedralElement, x: u8) {
        match g.factors.last_mut() {
            None => g.factors.push(Simple { first: x, len: 1 }),
            Some(y) if y.last() == x => g.factors.push(Simple { first: x, len: 1 }),
            Some(y) if y.len + 1 < self.m => y.len += 1,
            Some(_) => {
                // y·x = Δ; move it to the front
                g.factors.pop();
                g.delta_power += 1;
                for f in g.factors.iter_mut() {
                    *f = self.tau(*f);
                }
            }
        }
    }

    fn mul_inverse_generator(&self, g: &mut DihedralElement, x: u8) {
        if let Some(y) = g.factors.last_mut() {
            if y.last() == x {
                y.len -= 1;
                if y.len == 0 {
                    g.factors.pop();
                }
                return;
            }
        }
        // g·x⁻¹ = Δ^(p-1) τ(x_1 ⋯ x_r) (Δ x⁻¹), and Δ x⁻¹ is the alternating
        // word of length m-1 that x completes to Δ
        g.delta_power -= 1;
        for f in g.factors.iter_mut() {
            *f = self.tau(*f);
        }
        let first = if self.m % 2 == 1 { x } else { 1 - x };
        for l in (Simple { first, len: self.m - 1 }).letters() {
            self.mul_generator(g, l.generator);
        }
    }

    pub fn normal_form(&self, word: &Word) -> DihedralElement {
        self.evaluate(word)
    }

    /// Word for the Garside element, `prod(a,b;m)`.
    pub fn delta_word(&self) -> Word {
        Word((Simple { first: 0, len: self.m }).letters().collect())
    }

    /// A word representing `g`: the Δ-power followed by the factors.
    pub fn to_word(&self, g: &DihedralElement) -> Word {
        let delta = self.delta_word();
        let delta = if g.delta_power >= 0 { delta } else { delta.inverse() };
        let mut letters = Vec::new();
        for _ in 0..g.delta_power.unsigned_abs() {
            letters.extend_from_slice(delta.letters());
        }
        for f in &g.factors {
            letters.extend(f.letters());
        }
        Word(letters)
    }

    pub fn multiply(&self, g: &DihedralElement, h: &DihedralElement) -> DihedralElement {
        let mut out = g.clone();
        for &l in self.to_word(h).letters() {
            self.mul_letter(&mut out, l);
        }
        out
    }

    pub fn inverse(&self, g: &DihedralElement) -> DihedralElement {
        self.evaluate(&self.to_word(g).inverse())
    }

    /// Image under the homomorphism to ℤ sending both generators to 1.
    pub fn exponent_sum(&self, g: &DihedralElement) -> i64 {
        g.delta_power * self.m as i64 + g.factors.iter().map(|f| f.len as i64).sum::<i64>()
    }

    /// Membership in `⟨generator⟩`: `g` is a power of the generator iff it
    /// equals that generator raised to its exponent sum.
    pub fn is_power_of(&self, g: &DihedralElement, generator: u8) -> bool {
        let e = self.exponent_sum(g);
        *g == self.evaluate(&Word::power(generator, e))
    }
}

impl WordProblemOracle for DihedralArtin {
    type Element = DihedralElement;

    fn name(&self) -> String {
        format!("dihedral Artin group m={} on ({}, {})", self.m, self.names[0], self.names[1])
    }

    fn rank(&self) -> usize {
        2
    }

    fn exactness(&self) -> Exactness {
        Exactness::Exact
    }

    fn identity(&self) -> DihedralElement {
        DihedralElement { delta_power: 0, factors: Vec::new() }
    }

    fn mul_letter(&self, g: &mut DihedralElement, letter: Letter) {
        debug_assert!(letter.generator < 2);
        if letter.inverse {
            self.mul_inverse_generator(g, letter.generator)
        } else {
            self.mul_generator(g, letter.generator)
        }
    }

    /// The unique element of `g⟨s⟩` with exponent sum zero.
    fn coset_rep(&self, g: &DihedralElement, generator: u8) -> DihedralElement {
        let e = self.exponent_sum(g);
        let mut out = g.clone();
        for &l in Word::power(generator, -e).letters() {
            self.mul_letter(&mut out, l);
        }
        out
    }

    fn describe(&self, g: &DihedralElement) -> String {
        DisplayElement { ctx: self, g }.to_string()
    }
}

struct DisplayElement<'a> {
    ctx: &'a DihedralArtin,
    g: &'a DihedralElement,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g.is_identity() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        if self.g.delta_power != 0 {
            parts.push(format!("D^{}", self.g.delta_power));
        }
        for s in &self.g.factors {
            let names: Vec<&str> = s.letters().map(|l| self.ctx.names[l.generator as usize].as_str()).collect();
            parts.push(names.join(""));
        }
        write!(f, "{}", parts.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::Decision;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn braid_relation_m3() {
        let g = DihedralArtin::new(3).unwrap();
        let nf = g.normal_form(&w("aba"));
        assert_eq!(nf, g.normal_form(&w("bab")));
        assert_eq!(nf, DihedralElement { delta_power: 1, factors: vec![] });
        assert_eq!(g.equals(&w("aba"), &w("bab")), Decision::Equal);
    }

    #[test]
    fn commuting_m2() {
        let g = DihedralArtin::new(2).unwrap();
        assert_eq!(g.normal_form(&w("ab")), g.normal_form(&w("ba")));
    }

    #[test]
    fn m4_relator_is_trivial() {
        let g = DihedralArtin::new(4).unwrap();
        assert!(g.normal_form(&w("ababBABA")).is_identity());
    }

    #[test]
    fn generators_differ() {
        for m in 2..8 {
            let g = DihedralArtin::new(m).unwrap();
            assert_eq!(g.equals(&w("a"), &w("b")), Decision::NotEqual);
            assert_eq!(g.equals(&w("aaa"), &w("aaa")), Decision::Equal);
        }
    }

    #[test]
    fn inverse_and_multiply() {
        let g = DihedralArtin::new(5).unwrap();
        let x = g.normal_form(&w("a B a a b A B"));
        let xi = g.inverse(&x);
        assert!(g.multiply(&x, &xi).is_identity());
        assert!(g.multiply(&xi, &x).is_identity());
        assert_eq!(g.evaluate(&g.to_word(&x)), x);
    }

    #[test]
    fn coset_representatives() {
        let g = DihedralArtin::new(3).unwrap();
        let id = g.identity();
        let a5 = g.normal_form(&w("aaaaa"));
        assert_eq!(g.coset_rep(&id, 0), g.coset_rep(&a5, 0));
        let b = g.normal_form(&w("b"));
        assert_ne!(g.coset_rep(&b, 0), g.coset_rep(&id, 0));
        let aba = g.normal_form(&w("aba"));
        let bab = g.normal_form(&w("bab"));
        assert_eq!(g.coset_rep(&aba, 0), g.coset_rep(&bab, 0));
        assert_eq!(g.exponent_sum(&g.coset_rep(&aba, 1)), 0);
    }

    #[test]
    fn power_membership() {
        let g = DihedralArtin::new(4).unwrap();
        assert!(g.is_power_of(&g.normal_form(&w("AAA")), 0));
        assert!(!g.is_power_of(&g.normal_form(&w("b")), 0));
        assert!(g.is_power_of(&g.identity(), 1));
    }

    #[test]
    fn ball_sizes() {
        let g = DihedralArtin::new(2).unwrap();
        assert_eq!(g.ball(0, 10).unwrap().len(), 1);
        assert_eq!(g.ball(2, 1000).unwrap().len(), 13);
        assert!(matches!(g.ball(10, 20), Err(Error::ResourceLimit { cap: 20, .. })));
    }

    #[test]
    fn describe_uses_names() {
        let g = DihedralArtin::with_names(3, "s", "t").unwrap();
        assert_eq!(g.describe(&g.identity()), "1");
        assert_eq!(g.describe(&g.normal_form(&w("aba a"))), "D^1.s");
    }

    #[test]
    fn rejects_small_label() {
        assert!(DihedralArtin::new(1).is_err());
    }
}
