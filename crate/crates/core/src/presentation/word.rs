use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Letter::new(gen, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.gen, !self.inverse)
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in a free group. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

/// Freely reduces a raw letter sequence.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(gen: usize) -> Self {
        Word(vec![Letter::pos(gen)])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        free_reduce(letters)
    }

    /// Shorthand for tests and constructors: `+k` is generator `k-1`, `-k`
    /// its inverse.
    pub fn from_signed(codes: &[i32]) -> Self {
        free_reduce(codes.iter().map(|&c| {
            assert!(c != 0, "generator codes are nonzero");
            Letter::new(c.unsigned_abs() as usize - 1, c < 0)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        free_reduce(letters)
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Strips letters that cancel cyclically (first against last).
    pub fn cyclically_reduced(&self) -> Word {
        let w = &self.0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == w[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.0.len() < 2 || self.0[0] != self.0[self.0.len() - 1].inv()
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Is `self` a cyclic rotation of `other` or of `other⁻¹`?
    pub fn is_cyclic_conjugate_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let inv = other.inverse();
        (0..other.len()).any(|k| other.rotate(k) == *self || inv.rotate(k) == *self)
    }

    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut e = vec![0; ngens];
        for l in &self.0 {
            e[l.gen] += l.sign();
        }
        e
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Replaces generator `i` by `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut letters = Vec::new();
        for l in &self.0 {
            let img = &images[l.gen];
            if l.inverse {
                letters.extend(img.0.iter().rev().map(|x| x.inv()));
            } else {
                letters.extend_from_slice(&img.0);
            }
        }
        free_reduce(letters)
    }

    /// Renames generators through `map` (which must be defined on every
    /// generator that occurs).
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> Word {
        free_reduce(self.0.iter().map(|l| Letter::new(map(l.gen), l.inverse)))
    }

    /// If this word is `a b a⁻¹ b⁻¹` for letters `a`, `b` on distinct
    /// generators, returns `(a, b)`.
    pub fn as_commutator(&self) -> Option<(Letter, Letter)> {
        match self.0.as_slice() {
            &[a, b, c, d] if a.gen != b.gen && c == a.inv() && d == b.inv() => Some((a, b)),
            _ => None,
        }
    }

    /// Renders with generator names, collapsing runs into powers.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = run as i64 * l.sign();
            match exp {
                1 => write!(f, "{}", self.names[l.gen])?,
                _ => write!(f, "{}^{}", self.names[l.gen], exp)?,
            }
            i += run;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        // a a⁻¹ b → b
        assert_eq!(Word::from_signed(&[1, -1, 2]), Word::generator(1));
        assert_eq!(free_reduce([]), Word::identity());
        // a b b⁻¹ a⁻¹ → empty
        assert!(Word::from_signed(&[1, 2, -2, -1]).is_empty());
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::from_signed(&[2, 1, 3, -2]);
        assert_eq!(w.cyclically_reduced(), Word::from_signed(&[1, 3]));
        assert!(Word::from_signed(&[1, 2, -1, -2]).is_cyclically_reduced());
    }

    #[test]
    fn commutator_shape() {
        let c = Word::commutator(&Word::generator(0), &Word::generator(1));
        assert_eq!(c, Word::from_signed(&[1, 2, -1, -2]));
        assert_eq!(c.as_commutator(), Some((Letter::pos(0), Letter::pos(1))));
        assert_eq!(c.rotate(1).as_commutator(), Some((Letter::pos(1), Letter::neg(0))));
        assert_eq!(Word::from_signed(&[1, 1, -1, -1]).as_commutator(), None);
        assert!(c.inverse().is_cyclic_conjugate_of(&c));
    }

    #[test]
    fn substitution_and_powers() {
        let w = Word::from_signed(&[1, -2]);
        let images = [Word::from_signed(&[1, 2]), Word::generator(1)];
        assert_eq!(w.substitute(&images), Word::generator(0));
        assert_eq!(Word::generator(0).pow(-2), Word::from_signed(&[-1, -1]));
        assert_eq!(w.exponent_sums(3), vec![1, -1, 0]);
    }

    #[test]
    fn rendering() {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let w = Word::from_signed(&[1, 1, 1, -2]);
        assert_eq!(w.display(&names).to_string(), "a^3 b^-1");
        assert_eq!(Word::identity().display(&names).to_string(), "1");
    }
}
