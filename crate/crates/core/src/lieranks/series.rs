use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::presentation::{Letter, Word};
use crate::scalar::Field;

/// A noncommutative monomial: a sequence of generator indices.
///
/// Ordered by length first, then lexicographically, which is the column
/// order used by every elimination in this module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<usize>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Number of monomials of length `< n` over `g` letters.
pub fn degree_offset(g: usize, n: usize) -> usize {
    (0..n).map(|k| g.pow(k as u32)).sum()
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Position in the length-then-lex enumeration of all monomials.
    pub fn index(&self, g: usize) -> usize {
        let within = self.0.iter().fold(0, |acc, &x| acc * g + x);
        degree_offset(g, self.0.len()) + within
    }

    pub fn from_index(g: usize, mut idx: usize) -> Monomial {
        let mut n = 0;
        while idx >= g.pow(n as u32) {
            idx -= g.pow(n as u32);
            n += 1;
            assert!(g > 0, "no monomials of positive length over zero letters");
        }
        let mut letters = vec![0; n];
        for slot in letters.iter_mut().rev() {
            *slot = idx % g;
            idx /= g;
        }
        Monomial(letters)
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    /// All monomials of length exactly `n` over `g` letters, in order.
    pub fn all_of_degree(g: usize, n: usize) -> impl Iterator<Item = Monomial> {
        let count = g.pow(n as u32);
        let offset = degree_offset(g, n);
        (0..count).map(move |k| Monomial::from_index(g, offset + k))
    }
}

/// An element of the free associative algebra on `ngens` letters, truncated
/// above `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<F> {
    ngens: usize,
    degree: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> TruncatedSeries<F> {
    pub fn zero(ngens: usize, degree: usize) -> Self {
        TruncatedSeries {
            ngens,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ngens: usize, degree: usize) -> Self {
        Self::monomial(ngens, degree, Monomial::default(), F::one())
    }

    pub fn monomial(ngens: usize, degree: usize, m: Monomial, coef: F) -> Self {
        let mut s = Self::zero(ngens, degree);
        if m.degree() <= degree && !coef.is_zero() {
            s.terms.insert(m, coef);
        }
        s
    }

    /// The degree-one element `X_i`.
    pub fn generator(ngens: usize, degree: usize, i: usize) -> Self {
        Self::monomial(ngens, degree, Monomial(vec![i]), F::one())
    }

    pub fn from_terms(ngens: usize, degree: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut s = Self::zero(ngens, degree);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, letters: &[usize]) -> F {
        self.terms
            .get(&Monomial(letters.to_vec()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if m.degree() > self.degree || c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(F::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            // re-borrow by key to remove
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::zero(self.ngens, self.degree);
        }
        TruncatedSeries {
            ngens: self.ngens,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    /// Product, truncated at the smaller of the two degree bounds.
    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree.min(other.degree);
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.degree() + b.degree() > degree {
                    // terms are sorted by degree within `other`
                    break;
                }
                let e = acc.entry(a.concat(b)).or_insert_with(F::zero);
                *e = e.clone() + x.clone() * y.clone();
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TruncatedSeries {
            ngens: self.ngens,
            degree,
            terms: acc,
        }
    }

    /// `m · self · m′`, truncated.
    pub fn sandwich(&self, left: &Monomial, right: &Monomial) -> Self {
        let mut out = Self::zero(self.ngens, self.degree);
        for (m, c) in &self.terms {
            if left.degree() + m.degree() + right.degree() <= self.degree {
                out.terms.insert(left.concat(m).concat(right), c.clone());
            }
        }
        out
    }

    /// `ab − ba`
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn homogeneous_part(&self, n: usize) -> Self {
        TruncatedSeries {
            ngens: self.ngens,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&[])
    }

    /// `log(self) = Σ (−1)^{k+1} (self − 1)^k / k` for a series with
    /// constant term one.
    pub fn log(&self) -> Self {
        assert!(self.constant_term().is_one(), "log needs constant term one");
        let u = self.sub(&Self::one(self.ngens, self.degree));
        let mut out = Self::zero(self.ngens, self.degree);
        let mut power = u.clone();
        let mut k = F::one();
        let mut sign = F::one();
        for _ in 0..self.degree {
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&(sign.clone() / k.clone())));
            power = power.mul(&u);
            k = k + F::one();
            sign = -sign;
        }
        out
    }

    /// Magnus image of a single letter: `1 + X` or `1 − X + X² − …`.
    pub fn letter(ngens: usize, degree: usize, l: Letter) -> Self {
        let mut s = Self::one(ngens, degree);
        let mut coef = F::one();
        for n in 1..=degree {
            if l.inverse {
                coef = -coef;
            }
            s.terms.insert(Monomial(vec![l.gen; n]), coef.clone());
            if !l.inverse {
                break;
            }
        }
        s
    }
}

/// The Magnus expansion `x ↦ 1 + X` of a word, truncated above degree `d`.
pub fn magnus_expansion<F: Field>(w: &Word, ngens: usize, d: usize) -> TruncatedSeries<F> {
    w.letters().iter().fold(TruncatedSeries::one(ngens, d), |acc, &l| {
        acc.mul(&TruncatedSeries::letter(ngens, d, l))
    })
}
