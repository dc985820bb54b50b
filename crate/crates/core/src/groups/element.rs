use std::fmt;

use super::matrix::Matrix;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// An element of one of the concrete finite targets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// `value` in `Z/modulus`.
    Cyclic { modulus: u64, value: u64 },
    /// `r^rotation s^reflection` in the dihedral group of order `2n`.
    Dihedral {
        n: u64,
        rotation: u64,
        reflection: bool,
    },
    Perm(Permutation),
    Matrix(Matrix),
    /// A matrix modulo scalars, held in projective normal form.
    Projective(Matrix),
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl GroupElement {
    pub fn projective(m: &Matrix) -> Self {
        GroupElement::Projective(m.projective_normalize())
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        use GroupElement::*;
        match (self, other) {
            (Cyclic { modulus, value }, Cyclic { modulus: m2, value: v2 }) => {
                assert_eq!(modulus, m2, "cyclic modulus mismatch");
                Cyclic {
                    modulus: *modulus,
                    value: (value + v2) % modulus,
                }
            }
            (
                Dihedral {
                    n,
                    rotation: a,
                    reflection: e,
                },
                Dihedral {
                    n: n2,
                    rotation: b,
                    reflection: f,
                },
            ) => {
                assert_eq!(n, n2, "dihedral degree mismatch");
                // r^a s^e · r^b s^f = r^(a ± b) s^(e+f), with s r s = r⁻¹
                let b = if *e { (n - b % n) % n } else { *b };
                Dihedral {
                    n: *n,
                    rotation: (a + b) % n,
                    reflection: e ^ f,
                }
            }
            (Perm(a), Perm(b)) => Perm(a.mul(b)),
            (Matrix(a), Matrix(b)) => Matrix(a.mul(b)),
            (Projective(a), Projective(b)) => Projective(a.mul(b).projective_normalize()),
            _ => panic!("multiplying elements of different target types"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        use GroupElement::*;
        match self {
            Cyclic { modulus, value } => Cyclic {
                modulus: *modulus,
                value: (modulus - value % modulus) % modulus,
            },
            Dihedral {
                n,
                rotation,
                reflection,
            } => {
                if *reflection {
                    self.clone()
                } else {
                    Dihedral {
                        n: *n,
                        rotation: (n - rotation % n) % n,
                        reflection: false,
                    }
                }
            }
            Perm(p) => Perm(p.inverse()),
            Matrix(m) => Matrix(m.inverse().expect("group elements are invertible")),
            Projective(m) => Projective(
                m.inverse()
                    .expect("group elements are invertible")
                    .projective_normalize(),
            ),
        }
    }

    pub fn is_identity(&self) -> bool {
        use GroupElement::*;
        match self {
            Cyclic { value, .. } => *value == 0,
            Dihedral {
                rotation,
                reflection,
                ..
            } => *rotation == 0 && !reflection,
            Perm(p) => p.is_identity(),
            Matrix(m) => m.is_identity(),
            Projective(m) => m.is_scalar(),
        }
    }

    /// The identity of the same target as `self`.
    pub fn identity_like(&self) -> GroupElement {
        use GroupElement::*;
        match self {
            Cyclic { modulus, .. } => Cyclic {
                modulus: *modulus,
                value: 0,
            },
            Dihedral { n, .. } => Dihedral {
                n: *n,
                rotation: 0,
                reflection: false,
            },
            Perm(p) => Perm(Permutation::identity(p.degree())),
            Matrix(m) => Matrix(super::matrix::Matrix::identity(m.field(), m.dim())),
            Projective(m) => Projective(super::matrix::Matrix::identity(m.field(), m.dim())),
        }
    }

    pub fn pow(&self, e: u64) -> GroupElement {
        let mut acc = self.identity_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn to_text(&self) -> String {
        use GroupElement::*;
        match self {
            Cyclic { value, .. } => value.to_string(),
            Dihedral {
                rotation,
                reflection,
                ..
            } => {
                if *reflection {
                    format!("r^{rotation} s")
                } else {
                    format!("r^{rotation}")
                }
            }
            Perm(p) => p.to_cycle_text(),
            Matrix(m) => m.to_text(),
            Projective(m) => format!("P{}", m.to_text()),
        }
    }
}

/// Least `k ≥ 1` with `g^k = 1`, by repeated multiplication.
pub fn element_order(g: &GroupElement, cap: u64) -> Result<u64> {
    let mut x = g.clone();
    let mut k = 1u64;
    while !x.is_identity() {
        if k >= cap {
            return Err(Error::budget("element order search", cap));
        }
        x = x.mul(g);
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::field::FiniteField;

    #[test]
    fn orders() {
        let id = GroupElement::Perm(Permutation::identity(5));
        assert_eq!(element_order(&id, 100).unwrap(), 1);
        let c5 = GroupElement::Perm(Permutation::parse(5, "(1,2,3,4,5)").unwrap());
        assert_eq!(element_order(&c5, 100).unwrap(), 5);
        let f2 = FiniteField::new(2).unwrap();
        let m = GroupElement::Matrix(Matrix::parse(&f2, "[[0,1],[1,1]]").unwrap());
        assert_eq!(element_order(&m, 100).unwrap(), 3);
    }

    #[test]
    fn order_cap() {
        let g = GroupElement::Cyclic {
            modulus: 1000,
            value: 1,
        };
        assert!(matches!(
            element_order(&g, 10),
            Err(Error::Budget { budget: 10, .. })
        ));
    }

    #[test]
    fn dihedral_relations() {
        let n = 5;
        let r = GroupElement::Dihedral {
            n,
            rotation: 1,
            reflection: false,
        };
        let s = GroupElement::Dihedral {
            n,
            rotation: 0,
            reflection: true,
        };
        // s r s = r⁻¹
        assert_eq!(s.mul(&r).mul(&s), r.inverse());
        assert_eq!(element_order(&r, 100).unwrap(), 5);
        assert_eq!(element_order(&s.mul(&r), 100).unwrap(), 2);
    }

    #[test]
    fn projective_scalars_are_trivial() {
        let f = FiniteField::new(5).unwrap();
        let g = GroupElement::projective(&Matrix::scalar(&f, 2, 3));
        assert!(g.is_identity());
        assert_eq!(element_order(&g, 10).unwrap(), 1);
    }
}
