use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse. Column index in coset tables is `2·gen + inverse`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter {
            gen: gen as u32,
            inverse,
        }
    }

    #[inline]
    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    #[inline]
    pub fn column(self) -> usize {
        2 * self.gen as usize + self.inverse as usize
    }

    pub fn from_column(col: usize) -> Self {
        Letter::new(col / 2, col % 2 == 1)
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn generator(gen: usize) -> Self {
        Word {
            letters: vec![Letter::new(gen, false)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `x⁻¹ y⁻¹ x y`
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    /// Exponent sum of each generator, for `num_generators` generators.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; num_generators];
        for l in &self.letters {
            sums[l.gen as usize] += if l.inverse { -1 } else { 1 };
        }
        sums
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen as usize).max()
    }

    /// Renders with generator names as runs: `a^2*b^-1*a`. Empty word is `1`.
    pub fn format(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l.inverse { -run } else { run };
            let name = &names[l.gen as usize];
            parts.push(if exp == 1 {
                name.clone()
            } else {
                format!("{name}^{exp}")
            });
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|i| format!("g{i}"))
            .collect();
        write!(f, "{}", self.format(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Letter {
        Letter::new(0, false)
    }
    fn b() -> Letter {
        Letter::new(1, false)
    }

    #[test]
    fn free_reduction() {
        let w = Word::new([a(), b(), b().inv(), a().inv(), a()]);
        assert_eq!(w.letters(), &[a()]);
        assert!(Word::new([a(), a().inv()]).is_empty());
    }

    #[test]
    fn reduction_is_idempotent() {
        let w = Word::new([a(), b(), b().inv(), b().inv(), a(), a().inv()]);
        assert_eq!(Word::new(w.letters().iter().copied()), w);
    }

    #[test]
    fn formatting_runs() {
        let names = vec!["a".to_string(), "b".to_string()];
        let w = Word::new([a(), a(), b().inv(), a()]);
        assert_eq!(w.format(&names), "a^2*b^-1*a");
        assert_eq!(Word::identity().format(&names), "1");
    }

    #[test]
    fn commutator_exponents_vanish() {
        let c = Word::commutator(&Word::generator(0), &Word::generator(1));
        assert_eq!(c.len(), 4);
        assert_eq!(c.exponent_sums(2), vec![0, 0]);
    }
}
