use super::element::GroupElement;
use super::target::TargetGroup;
use crate::error::{Error, Result};
use crate::words::{Presentation, Word};

/// A homomorphism from a finitely presented group to a concrete target,
/// given by one image per generator. Construction checks every relator.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: Presentation,
    target: TargetGroup,
    images: Vec<GroupElement>,
}

/// Product of generator images along `w`.
pub fn evaluate_images(images: &[GroupElement], identity: &GroupElement, w: &Word) -> GroupElement {
    let inverses: Vec<GroupElement> = images.iter().map(GroupElement::inverse).collect();
    let mut acc = identity.clone();
    for l in w.letters() {
        let g = if l.is_inverse() {
            &inverses[l.generator()]
        } else {
            &images[l.generator()]
        };
        acc = acc.mul(g);
    }
    acc
}

/// True iff every relator of `p` evaluates to the identity. Free
/// presentations accept every assignment.
pub fn is_homomorphism(p: &Presentation, images: &[GroupElement]) -> bool {
    if images.len() != p.rank() {
        return false;
    }
    let Some(first) = images.first() else {
        return true;
    };
    let id = first.identity_like();
    p.relators()
        .iter()
        .all(|r| evaluate_images(images, &id, r).is_identity())
}

impl Homomorphism {
    pub fn new(source: Presentation, target: TargetGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::input(format!(
                "{} images given for {} generators",
                images.len(),
                source.rank()
            )));
        }
        if let Some(bad) = images.iter().find(|g| !target.contains(g)) {
            return Err(Error::input(format!(
                "{} is not an element of {}",
                bad.to_text(),
                target.descriptor
            )));
        }
        if !is_homomorphism(&source, &images) {
            return Err(Error::input(format!(
                "images do not satisfy the relators of the source (target {})",
                target.descriptor
            )));
        }
        Ok(Homomorphism {
            source,
            target,
            images,
        })
    }

    pub(crate) fn new_unchecked(
        source: Presentation,
        target: TargetGroup,
        images: Vec<GroupElement>,
    ) -> Self {
        Homomorphism {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &TargetGroup {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn evaluate(&self, w: &Word) -> GroupElement {
        evaluate_images(&self.images, &self.target.identity(), w)
    }

    /// True iff the image of `w` is not the identity.
    pub fn detects(&self, w: &Word) -> bool {
        !self.evaluate(w).is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::perm::Permutation;

    fn cyc(m: u64, v: u64) -> GroupElement {
        GroupElement::Cyclic {
            modulus: m,
            value: v,
        }
    }

    #[test]
    fn relator_checks() {
        let free = Presentation::free(2);
        assert!(is_homomorphism(&free, &[cyc(4, 1), cyc(4, 3)]));
        let p = Presentation::parse("gens: a\nrels: a^2").unwrap();
        assert!(!is_homomorphism(&p, &[cyc(4, 1)]));
        assert!(is_homomorphism(&p, &[cyc(4, 2)]));
        assert!(!is_homomorphism(&p, &[]));
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let p = Presentation::free(2);
        let s5 = TargetGroup::parse("Sym(5)").unwrap();
        let a = GroupElement::Perm(Permutation::parse(5, "(1,2,3)").unwrap());
        let b = GroupElement::Perm(Permutation::parse(5, "(3,4,5)").unwrap());
        let h = Homomorphism::new(p.clone(), s5, vec![a, b]).unwrap();
        assert!(h.evaluate(&Word::empty()).is_identity());
        let al = p.alphabet();
        let u = al.parse_word("abAb").unwrap();
        let v = al.parse_word("BBa").unwrap();
        assert_eq!(h.evaluate(&u.mul(&v)), h.evaluate(&u).mul(&h.evaluate(&v)));
    }

    #[test]
    fn construction_rejects_foreign_images() {
        let p = Presentation::free(1);
        let a5 = TargetGroup::parse("Alt(5)").unwrap();
        let odd = GroupElement::Perm(Permutation::parse(5, "(1,2)").unwrap());
        assert!(Homomorphism::new(p, a5, vec![odd]).is_err());
    }
}
