use serde::{Deserialize, Serialize};

/// A named generator of a free graded-commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// Bigrading index (the `W_i` a generator belongs to), when known.
    pub stage: Option<u32>,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            stage: None,
        }
    }

    pub fn with_stage(mut self, stage: u32) -> Self {
        self.stage = Some(stage);
        self
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A normalized monomial: `(generator index, exponent)` pairs with strictly
/// increasing indices, nonzero exponents, and odd generators to power 1.
///
/// Monomials are totally ordered lexicographically on that pair list, so with
/// generators `x0 < x1 < ...` (declaration order) we get
/// `x0^2 < x0 < x0*x1 < x1`: a monomial containing a higher power of an
/// earlier generator comes first. Basis enumeration uses this order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(index: u32) -> Self {
        Monomial(vec![(index, 1)])
    }

    /// Builds from already-normalized factors. Panics on malformed input in
    /// debug builds.
    pub fn from_factors(factors: Vec<(u32, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, e)| e > 0));
        Monomial(factors)
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.last().map(|&(i, _)| i)
    }

    pub fn degree(&self, degrees: &[u32]) -> u32 {
        self.0.iter().map(|&(i, e)| degrees[i as usize] * e).sum()
    }

    pub fn exponent(&self, index: u32) -> u32 {
        self.0.iter().find(|&&(i, _)| i == index).map_or(0, |&(_, e)| e)
    }

    /// `self * other` as `(monomial, negative)`, or None if an odd generator
    /// repeats. `odd[i]` is the parity of generator `i`.
    pub fn multiply(&self, other: &Monomial, odd: &[bool]) -> Option<(Monomial, bool)> {
        let mut negative = false;
        for &(j, _) in &other.0 {
            if odd[j as usize] {
                let passed = self.0.iter().filter(|&&(i, _)| i > j && odd[i as usize]).count();
                negative ^= passed % 2 == 1;
            }
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() || b < other.0.len() {
            let next = match (self.0.get(a), other.0.get(b)) {
                (Some(&x), Some(&y)) if x.0 == y.0 => {
                    if odd[x.0 as usize] {
                        return None;
                    }
                    a += 1;
                    b += 1;
                    (x.0, x.1 + y.1)
                }
                (Some(&x), Some(&y)) if x.0 < y.0 => {
                    a += 1;
                    x
                }
                (Some(_), Some(&y)) => {
                    b += 1;
                    y
                }
                (Some(&x), None) => {
                    a += 1;
                    x
                }
                (None, Some(&y)) => {
                    b += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        Some((Monomial(out), negative))
    }

    /// Normalizes an ordered product of generators, returning the sign picked
    /// up by sorting, or None when an odd generator occurs twice.
    pub fn from_sequence(seq: &[u32], odd: &[bool]) -> Option<(Monomial, bool)> {
        let mut v = seq.to_vec();
        let mut negative = false;
        // insertion sort, tracking transpositions of odd pairs
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                if odd[v[j - 1] as usize] && odd[v[j] as usize] {
                    negative = !negative;
                }
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut out: Vec<(u32, u32)> = Vec::new();
        for g in v {
            match out.last_mut() {
                Some(last) if last.0 == g => {
                    if odd[g as usize] {
                        return None;
                    }
                    last.1 += 1;
                }
                _ => out.push((g, 1)),
            }
        }
        Some((Monomial(out), negative))
    }

    /// The generators in order, each repeated by its exponent.
    pub fn sequence(&self) -> Vec<u32> {
        self.0
            .iter()
            .flat_map(|&(i, e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    /// Removes one copy of generator `index` from the front position of its
    /// block; returns the remaining monomial.
    pub fn without_one(&self, index: u32) -> Monomial {
        let mut out = self.0.clone();
        if let Some(pos) = out.iter().position(|&(i, _)| i == index) {
            if out[pos].1 == 1 {
                out.remove(pos);
            } else {
                out[pos].1 -= 1;
            }
        }
        Monomial(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ODD: [bool; 3] = [true, true, false];

    #[test]
    fn odd_square_vanishes() {
        let a = Monomial::generator(0);
        assert!(a.multiply(&a, &ODD).is_none());
    }

    #[test]
    fn odd_generators_anticommute() {
        let (a, b) = (Monomial::generator(0), Monomial::generator(1));
        let (ab, s1) = a.multiply(&b, &ODD).unwrap();
        let (ba, s2) = b.multiply(&a, &ODD).unwrap();
        assert_eq!(ab, ba);
        assert!(!s1);
        assert!(s2);
    }

    #[test]
    fn even_generator_squares() {
        let x = Monomial::generator(2);
        let (xx, s) = x.multiply(&x, &ODD).unwrap();
        assert_eq!(xx.factors(), &[(2, 2)]);
        assert!(!s);
    }

    #[test]
    fn sequence_sorting_sign() {
        let (m, neg) = Monomial::from_sequence(&[1, 2, 0], &ODD).unwrap();
        assert_eq!(m.factors(), &[(0, 1), (1, 1), (2, 1)]);
        assert!(neg);
        assert!(Monomial::from_sequence(&[0, 2, 0], &ODD).is_none());
    }
}
