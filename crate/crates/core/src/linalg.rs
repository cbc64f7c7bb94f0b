//! Exact sparse Gaussian elimination over the rationals.
//!
//! [`Echelon`] keeps its rows in fully reduced row-echelon form with the
//! leftmost nonzero entry of every row as pivot (normalized to 1). Rows may
//! carry a *tag* vector recording which combination of inserted inputs they
//! came from; this is what kernel bases and linear solves are read off.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(Vec<(usize, Q)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, Q::one())])
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Q)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, v) in pairs {
            *acc.entry(i).or_insert_with(Q::zero) += v;
        }
        SparseVec(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn from_dense(values: &[Q]) -> Self {
        SparseVec(
            values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (i, v) in &self.0 {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.0.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Q {
        match self.0.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.0[pos].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn scaled(&self, c: &Q) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, v)| (*i, v * c)).collect())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Q, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + y * c;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec(out)
    }

    /// Shifts every index by `offset` (used to build direct sums).
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec(self.0.iter().map(|(i, v)| (i + offset, v.clone())).collect())
    }

    /// Keeps the entries with index in `range`, re-based to start at 0.
    pub fn slice(&self, range: std::ops::Range<usize>) -> SparseVec {
        SparseVec(
            self.0
                .iter()
                .filter(|(i, _)| range.contains(i))
                .map(|(i, v)| (i - range.start, v.clone()))
                .collect(),
        )
    }

    pub fn concat(&self, other: &SparseVec, offset: usize) -> SparseVec {
        let mut out = self.0.clone();
        out.extend(other.0.iter().map(|(i, v)| (i + offset, v.clone())));
        SparseVec(out)
    }
}

/// Incremental fully-reduced row echelon form with optional tag tracking.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rows<I: IntoIterator<Item = SparseVec>>(rows: I) -> Self {
        let mut e = Self::new();
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Rows ordered by pivot column, together with their tags.
    pub fn sorted_rows(&self) -> Vec<(&SparseVec, &SparseVec)> {
        self.pivot_row
            .values()
            .map(|&r| (&self.rows[r], &self.tags[r]))
            .collect()
    }

    fn accumulate(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut coeffs: Vec<(usize, Q)> = Vec::new();
        for (col, val) in v.entries() {
            if let Some(&r) = self.pivot_row.get(col) {
                coeffs.push((r, val.clone()));
            }
        }
        if coeffs.is_empty() {
            return (v.clone(), SparseVec::new());
        }
        let mut acc: BTreeMap<usize, Q> = v.entries().iter().cloned().collect();
        let mut combo: BTreeMap<usize, Q> = BTreeMap::new();
        for (r, c) in &coeffs {
            for (j, x) in self.rows[*r].entries() {
                *acc.entry(*j).or_insert_with(Q::zero) -= c * x;
            }
            for (j, x) in self.tags[*r].entries() {
                *combo.entry(*j).or_insert_with(Q::zero) += c * x;
            }
        }
        (
            SparseVec(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()),
            SparseVec(combo.into_iter().filter(|(_, x)| !x.is_zero()).collect()),
        )
    }

    /// Normal form of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.accumulate(v).0
    }

    /// `(remainder, combo)` with `v = remainder + Σ combo_j · input_j`, where
    /// `input_j` is the vector inserted with tag `e_j`.
    pub fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        self.accumulate(v)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns false when it was already in the row space.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tagged(v, SparseVec::new()).is_none()
    }

    /// Inserts `v` with tag `tag`. If `v` is dependent, returns the tag
    /// combination that maps to zero (a kernel vector when tags are
    /// unit vectors of a source basis).
    pub fn insert_tagged(&mut self, v: SparseVec, tag: SparseVec) -> Option<SparseVec> {
        let (rem, combo) = self.accumulate(&v);
        let tag = tag.add_scaled(&-Q::one(), &combo);
        let Some((lead, lead_val)) = rem.leading() else {
            return Some(tag);
        };
        let inv = lead_val.recip();
        let rem = rem.scaled(&inv);
        let tag = tag.scaled(&inv);
        for r in 0..self.rows.len() {
            let c = self.rows[r].get(lead);
            if !c.is_zero() {
                let neg = -c;
                self.rows[r] = self.rows[r].add_scaled(&neg, &rem);
                self.tags[r] = self.tags[r].add_scaled(&neg, &tag);
            }
        }
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(rem);
        self.tags.push(tag);
        None
    }
}

/// Image rank and kernel basis of the linear map whose columns are `images`
/// (image of the j-th source basis vector). Kernel vectors live in the source.
pub struct MapEchelon {
    pub image: Echelon,
    pub kernel: Vec<SparseVec>,
}

pub fn eliminate_map(images: &[SparseVec]) -> MapEchelon {
    let mut image = Echelon::new();
    let mut kernel = Vec::new();
    for (j, v) in images.iter().enumerate() {
        if let Some(k) = image.insert_tagged(v.clone(), SparseVec::unit(j)) {
            kernel.push(k);
        }
    }
    // canonical kernel basis
    let kernel = Echelon::from_rows(kernel)
        .sorted_rows()
        .into_iter()
        .map(|(r, _)| r.clone())
        .collect();
    MapEchelon { image, kernel }
}

impl MapEchelon {
    /// Some source vector `x` with `A x = y`, or None when `y` is not in the image.
    pub fn solve(&self, y: &SparseVec) -> Option<SparseVec> {
        let (rem, combo) = self.image.reduce_tracked(y);
        rem.is_zero().then_some(combo)
    }
}

/// Sylvester inertia `(positive, negative, zero)` of a symmetric rational
/// matrix, by exact congruence diagonalization.
pub fn inertia(matrix: &[Vec<Q>]) -> (usize, usize, usize) {
    let n = matrix.len();
    let mut a: Vec<Vec<Q>> = matrix.to_vec();
    let mut active: Vec<bool> = vec![true; n];
    let (mut pos, mut neg) = (0usize, 0usize);
    loop {
        let live: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
        if live.is_empty() {
            break;
        }
        let mut pivot = live.iter().copied().find(|&i| !a[i][i].is_zero());
        if pivot.is_none() {
            // all diagonal entries vanish: e_i <- e_i + e_j for some a_ij != 0
            let pair = live
                .iter()
                .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                .find(|&(i, j)| i < j && !a[i][j].is_zero());
            let Some((i, j)) = pair else { break };
            for k in 0..n {
                let t = a[j][k].clone();
                a[i][k] += t;
            }
            for k in 0..n {
                let t = a[k][j].clone();
                a[k][i] += t;
            }
            pivot = Some(i);
        }
        let p = pivot.expect("pivot chosen");
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active[p] = false;
        for k in 0..n {
            if !active[k] || a[k][p].is_zero() {
                continue;
            }
            let f = &a[k][p] / &d;
            for m in 0..n {
                let t = &f * &a[p][m];
                a[k][m] -= t;
            }
            for m in 0..n {
                let t = &f * &a[m][p];
                a[m][k] -= t;
            }
        }
    }
    (pos, neg, n - pos - neg)
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    Echelon::from_rows(rows.iter().map(|r| SparseVec::from_dense(r))).rank()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(d: &[i64]) -> SparseVec {
        SparseVec::from_dense(&d.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn echelon_rank_and_reduce() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[1, 2, 0])));
        assert!(e.insert(sv(&[0, 1, 1])));
        assert!(!e.insert(sv(&[1, 3, 1])));
        assert_eq!(e.rank(), 2);
        assert!(e.reduce(&sv(&[2, 5, 1])).is_zero());
        // fully reduced: remainder of e_3 is e_3 minus its pivot-column entries
        let r = e.reduce(&sv(&[0, 0, 1]));
        assert_eq!(r, sv(&[0, 0, 1]));
    }

    #[test]
    fn kernel_and_solve() {
        // columns: (1,0), (0,1), (1,1)
        let m = eliminate_map(&[sv(&[1, 0]), sv(&[0, 1]), sv(&[1, 1])]);
        assert_eq!(m.image.rank(), 2);
        assert_eq!(m.kernel.len(), 1);
        assert_eq!(m.kernel[0], sv(&[1, 1, -1]));
        let x = m.solve(&sv(&[3, 4])).unwrap();
        assert_eq!(x, sv(&[3, 4]));
        assert!(eliminate_map(&[sv(&[1, 0])]).solve(&sv(&[0, 1])).is_none());
    }

    #[test]
    fn inertia_of_hyperbolic_plane_and_diagonal() {
        let h = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(inertia(&h), (1, 1, 0));
        let d = vec![vec![q(2), q(0), q(0)], vec![q(0), q(-3), q(0)], vec![q(0), q(0), q(0)]];
        assert_eq!(inertia(&d), (1, 1, 1));
        let m = vec![vec![q(1), q(2)], vec![q(2), q(1)]];
        assert_eq!(inertia(&m), (1, 1, 0));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(16, 8), 12870);
        assert_eq!(binomial(3, 5), 0);
    }
}
