//! Intersection-complete families and the forms they assign.

use serde::{Deserialize, Serialize};

use super::exterior::{verify_witness, EmbeddingWitness, ExteriorAlgebra, WitnessCheck};
use super::spaces::{connected_sum_ring, Atom};
use crate::error::{Error, Result};
use crate::linalg::q;
use crate::ring::RingPresentation;

/// Subsets of the ground set `{0, …, size−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    size: usize,
    members: Vec<Vec<usize>>,
}

impl SetFamily {
    /// Members are sorted; they must be distinct, nonempty and proper.
    pub fn new(size: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(members.len());
        for mut m in members {
            m.sort_unstable();
            m.dedup();
            if m.is_empty() || m.len() >= size {
                return Err(Error::Invalid(format!(
                    "{m:?} is empty or not proper in a ground set of size {size}"
                )));
            }
            if let Some(&x) = m.iter().find(|&&x| x >= size) {
                return Err(Error::Invalid(format!("{x} is outside the ground set of size {size}")));
            }
            if out.contains(&m) {
                return Err(Error::Invalid(format!("{m:?} listed twice")));
            }
            out.push(m);
        }
        Ok(SetFamily { size, members: out })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn complement(&self, m: &[usize]) -> Vec<usize> {
        (0..self.size).filter(|i| !m.contains(i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCheck {
    pub complete: bool,
    /// First pair `(I, J)` with an empty intersection among `I∩J`,
    /// `I∩J^c`, `I^c∩J`, `I^c∩J^c`.
    pub violation: Option<(Vec<usize>, Vec<usize>)>,
}

pub fn intersection_complete(f: &SetFamily) -> IntersectionCheck {
    let meets = |a: &[usize], b: &[usize]| a.iter().any(|x| b.contains(x));
    for (i, a) in f.members.iter().enumerate() {
        let ac = f.complement(a);
        for b in &f.members[i + 1..] {
            let bc = f.complement(b);
            if !(meets(a, b) && meets(a, &bc) && meets(&ac, b) && meets(&ac, &bc)) {
                return IntersectionCheck {
                    complete: false,
                    violation: Some((a.clone(), b.clone())),
                };
            }
        }
    }
    IntersectionCheck {
        complete: true,
        violation: None,
    }
}

#[derive(Clone, Debug)]
pub struct FamilyForms {
    /// Ring of `#_{I} (S^{|I|} × S^{size−|I|})`.
    pub ring: RingPresentation,
    pub witness: EmbeddingWitness,
    pub check: WitnessCheck,
    pub caveat: Option<String>,
}

/// `a_I ↦ dx_I`, `b_I ↦ ε(I) dx_{I^c}` for each member `I`.
pub fn family_local_forms(f: &SetFamily) -> Result<FamilyForms> {
    let ic = intersection_complete(f);
    if let Some((a, b)) = ic.violation {
        return Err(Error::Invalid(format!(
            "family is not intersection-complete: {a:?} and {b:?} have an empty intersection"
        )));
    }
    let n = f.size as u32;
    let atoms: Vec<(Atom, bool)> = f
        .members
        .iter()
        .map(|m| (Atom::SxS(m.len() as u32, n - m.len() as u32), false))
        .collect();
    let ring = connected_sum_ring(&atoms)?;
    let e = ExteriorAlgebra::new(f.size);
    let mut images = Vec::new();
    for m in &f.members {
        images.push(e.form(m));
        images.push(e.form(&f.complement(m)).scaled(&q(e.shuffle_sign(m))));
    }
    let caveat = f
        .members
        .iter()
        .any(|m| m.len() == 1 || m.len() + 1 == f.size)
        .then(|| "some summand has a circle factor, so the space is not simply connected".to_string());
    let witness = EmbeddingWitness { target: e, images };
    let check = verify_witness(&ring, &witness);
    Ok(FamilyForms {
        ring,
        witness,
        check,
        caveat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let f = SetFamily::new(4, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        assert!(intersection_complete(&f).complete);
        let f = SetFamily::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let c = intersection_complete(&f);
        assert_eq!(c.violation, Some((vec![0, 1], vec![2, 3])));
        assert!(family_local_forms(&f).is_err());
    }

    #[test]
    fn circle_caveat() {
        let f = SetFamily::new(2, vec![vec![0]]).unwrap();
        let forms = family_local_forms(&f).unwrap();
        assert!(forms.check.passed);
        assert!(forms.caveat.is_some());
    }

    #[test]
    fn invalid_members() {
        assert!(SetFamily::new(3, vec![vec![]]).is_err());
        assert!(SetFamily::new(3, vec![vec![0, 1, 2]]).is_err());
        assert!(SetFamily::new(3, vec![vec![0], vec![0]]).is_err());
    }
}
