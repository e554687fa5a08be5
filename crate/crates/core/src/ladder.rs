//! Words in the ladder operators `A`, `A†` and linear combinations of them.
//!
//! A word is read left to right as an operator product, so
//! `[Raise, Lower]` is `A†A` and acts on a ket by applying `Lower` first.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ladder {
    /// `A`
    Lower,
    /// `A†`
    Raise,
}

impl Ladder {
    pub fn adjoint(self) -> Self {
        match self {
            Ladder::Lower => Ladder::Raise,
            Ladder::Raise => Ladder::Lower,
        }
    }
}

/// `A†^j A^k` as a word.
pub fn normal_word(j: usize, k: usize) -> Vec<Ladder> {
    let mut w = vec![Ladder::Raise; j];
    w.extend(std::iter::repeat(Ladder::Lower).take(k));
    w
}

/// Every word of exactly `len` letters.
pub fn all_words(len: usize) -> Vec<Vec<Ladder>> {
    (0..1usize << len)
        .map(|bits| {
            (0..len)
                .map(|i| if bits >> i & 1 == 1 { Ladder::Raise } else { Ladder::Lower })
                .collect()
        })
        .collect()
}

/// Rewrites a word as `Σ c_{jk} A†^j A^k` using `A A† = A†A + 1`.
pub fn normal_order(word: &[Ladder]) -> BTreeMap<(usize, usize), Complex64> {
    let mut out = BTreeMap::new();
    let mut pending = vec![word.to_vec()];
    while let Some(w) = pending.pop() {
        match w.windows(2).position(|p| p == [Ladder::Lower, Ladder::Raise]) {
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                let mut contracted = w;
                contracted.drain(i..i + 2);
                pending.push(swapped);
                pending.push(contracted);
            }
            None => {
                let j = w.iter().take_while(|&&l| l == Ladder::Raise).count();
                *out.entry((j, w.len() - j)).or_insert(Complex64::new(0.0, 0.0)) += 1.0;
            }
        }
    }
    out
}

/// `Σ c_w w` over ladder words.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OperatorSum {
    pub terms: Vec<(Complex64, Vec<Ladder>)>,
}

impl OperatorSum {
    pub fn identity() -> Self {
        Self::word(Complex64::new(1.0, 0.0), Vec::new())
    }

    pub fn word(coeff: Complex64, word: Vec<Ladder>) -> Self {
        Self { terms: vec![(coeff, word)] }
    }

    /// `c_lower A + c_raise A†`
    pub fn linear(c_lower: Complex64, c_raise: Complex64) -> Self {
        Self {
            terms: vec![(c_lower, vec![Ladder::Lower]), (c_raise, vec![Ladder::Raise])],
        }
    }

    pub fn scale(mut self, c: Complex64) -> Self {
        for (coeff, _) in &mut self.terms {
            *coeff *= c;
        }
        self
    }

    pub fn adjoint(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.conj(), w.iter().rev().map(|l| l.adjoint()).collect()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Collected normally ordered coefficients `c_{jk}` of `A†^j A^k`.
    pub fn normal_ordered(&self) -> BTreeMap<(usize, usize), Complex64> {
        let mut out = BTreeMap::new();
        for (c, w) in &self.terms {
            for (key, n) in normal_order(w) {
                *out.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c * n;
            }
        }
        out
    }
}

impl Mul for &OperatorSum {
    type Output = OperatorSum;

    fn mul(self, rhs: &OperatorSum) -> OperatorSum {
        let mut terms = Vec::with_capacity(self.len() * rhs.len());
        for (cl, wl) in &self.terms {
            for (cr, wr) in &rhs.terms {
                let mut w = wl.clone();
                w.extend_from_slice(wr);
                terms.push((cl * cr, w));
            }
        }
        OperatorSum { terms }
    }
}

impl Add for OperatorSum {
    type Output = OperatorSum;

    fn add(mut self, rhs: OperatorSum) -> OperatorSum {
        self.terms.extend(rhs.terms);
        self
    }
}

impl Neg for OperatorSum {
    type Output = OperatorSum;

    fn neg(self) -> OperatorSum {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Sub for OperatorSum {
    type Output = OperatorSum;

    fn sub(self, rhs: OperatorSum) -> OperatorSum {
        self + (-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Ladder::*;

    fn ordered(word: &[Ladder]) -> Vec<((usize, usize), f64)> {
        normal_order(word).into_iter().map(|(k, v)| (k, v.re)).collect()
    }

    #[test]
    fn commutator_contraction() {
        assert_eq!(ordered(&[Lower, Raise]), vec![((0, 0), 1.0), ((1, 1), 1.0)]);
        assert_eq!(ordered(&[Raise, Lower]), vec![((1, 1), 1.0)]);
        assert_eq!(ordered(&[]), vec![((0, 0), 1.0)]);
    }

    #[test]
    fn anti_normal_pair_squared() {
        // A²A†² = A†²A² + 4A†A + 2
        assert_eq!(
            ordered(&[Lower, Lower, Raise, Raise]),
            vec![((0, 0), 2.0), ((1, 1), 4.0), ((2, 2), 1.0)]
        );
        // A A†A A† = (A†A + 1)² = A†²A² + 3A†A + 1
        assert_eq!(
            ordered(&[Lower, Raise, Lower, Raise]),
            vec![((0, 0), 1.0), ((1, 1), 3.0), ((2, 2), 1.0)]
        );
    }

    #[test]
    fn all_words_count() {
        assert_eq!(all_words(0), vec![Vec::<Ladder>::new()]);
        assert_eq!(all_words(3).len(), 8);
    }

    #[test]
    fn product_and_adjoint() {
        let a = OperatorSum::linear(Complex64::new(2.0, 1.0), Complex64::new(0.0, -1.0));
        let p = &a.adjoint() * &a;
        assert_eq!(p.len(), 4);
        assert_eq!(a.adjoint().adjoint(), a);
        assert_eq!(p.adjoint().normal_ordered().len(), p.normal_ordered().len());
    }
}
