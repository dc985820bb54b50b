use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::arith::{factorial, for_each_partition, gcd, is_prime, lcm, prime_power};
use super::element::{element_order, GroupElement};
use super::field::FiniteField;
use super::matrix::{all_matrices, Matrix};
use super::perm::Permutation;
use crate::config::Budgets;
use crate::error::{Error, Result};

/// The concrete finite groups the toolkit can build.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupDescriptor {
    Cyclic(u64),
    /// Dihedral group of order `2m`.
    Dihedral(u64),
    Sym(u32),
    Alt(u32),
    GL(u32, u64),
    SL(u32, u64),
    PSL(u32, u64),
    PGL(u32, u64),
}

impl GroupDescriptor {
    /// Tie-break key among groups of equal order: family, then `q`, then `n`.
    pub fn sort_key(&self) -> (u8, u64, u64) {
        use GroupDescriptor::*;
        match *self {
            Cyclic(m) => (0, 0, m),
            Dihedral(m) => (1, 0, m),
            Alt(n) => (2, 0, n as u64),
            Sym(n) => (3, 0, n as u64),
            GL(n, q) => (4, q, n as u64),
            SL(n, q) => (5, q, n as u64),
            PSL(n, q) => (6, q, n as u64),
            PGL(n, q) => (7, q, n as u64),
        }
    }

    fn matrix_params(&self) -> Option<(u32, u64)> {
        use GroupDescriptor::*;
        match *self {
            GL(n, q) | SL(n, q) | PSL(n, q) | PGL(n, q) => Some((n, q)),
            _ => None,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupDescriptor::*;
        match self {
            Cyclic(m) => write!(f, "Cyclic({m})"),
            Dihedral(m) => write!(f, "Dihedral({m})"),
            Sym(n) => write!(f, "Sym({n})"),
            Alt(n) => write!(f, "Alt({n})"),
            GL(n, q) => write!(f, "GL({n},{q})"),
            SL(n, q) => write!(f, "SL({n},{q})"),
            PSL(n, q) => write!(f, "PSL({n},{q})"),
            PGL(n, q) => write!(f, "PGL({n},{q})"),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, rest) = compact
            .split_once('(')
            .ok_or_else(|| Error::input(format!("bad group descriptor {s:?}")))?;
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::input(format!("bad group descriptor {s:?}")))?;
        let nums = args
            .split(',')
            .map(|a| {
                a.parse::<u64>()
                    .map_err(|_| Error::input(format!("bad parameter {a:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        use GroupDescriptor::*;
        let d = match (name.to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("cyclic" | "c" | "z", [m]) => Cyclic(*m),
            ("dihedral" | "d", [m]) => Dihedral(*m),
            ("sym" | "s", [n]) => Sym(*n as u32),
            ("alt" | "a", [n]) => Alt(*n as u32),
            ("gl", [n, q]) => GL(*n as u32, *q),
            ("sl", [n, q]) => SL(*n as u32, *q),
            ("psl", [n, q]) => PSL(*n as u32, *q),
            ("pgl", [n, q]) => PGL(*n as u32, *q),
            _ => return Err(Error::input(format!("unknown group descriptor {s:?}"))),
        };
        Ok(d)
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Target classes a group can belong to, besides ALL.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct ClassTags {
    pub gl: bool,
    pub simple: bool,
}

/// A concrete finite group: descriptor, exact order and class tags.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct TargetGroup {
    pub descriptor: GroupDescriptor,
    #[serde(serialize_with = "ser_big")]
    pub order: BigUint,
    pub tags: ClassTags,
    #[serde(skip)]
    field: Option<FiniteField>,
}

fn ser_big<S: serde::Serializer>(b: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(b)
}

/// `|GL(n,q)| = ∏_{i<n} (qⁿ − qⁱ)`.
pub fn gl_order(n: u32, q: u64) -> BigUint {
    let qn = BigUint::from(q).pow(n);
    (0..n).fold(BigUint::one(), |acc, i| {
        acc * (&qn - BigUint::from(q).pow(i))
    })
}

pub fn sl_order(n: u32, q: u64) -> BigUint {
    gl_order(n, q) / BigUint::from(q - 1)
}

pub fn psl_order(n: u32, q: u64) -> BigUint {
    sl_order(n, q) / BigUint::from(gcd(n as u64, q - 1))
}

/// Exact order from the classical formulas.
pub fn group_order(d: &GroupDescriptor) -> Result<BigUint> {
    validate(d)?;
    use GroupDescriptor::*;
    Ok(match *d {
        Cyclic(m) => BigUint::from(m),
        Dihedral(m) => BigUint::from(2 * m),
        Sym(n) => factorial(n as u64),
        Alt(n) => {
            if n < 2 {
                BigUint::one()
            } else {
                factorial(n as u64) / 2u32
            }
        }
        GL(n, q) => gl_order(n, q),
        SL(n, q) => sl_order(n, q),
        PSL(n, q) => psl_order(n, q),
        PGL(n, q) => sl_order(n, q),
    })
}

fn validate(d: &GroupDescriptor) -> Result<()> {
    use GroupDescriptor::*;
    match *d {
        Cyclic(m) | Dihedral(m) if m == 0 => Err(Error::domain(format!("{d}: parameter must be positive"))),
        Sym(0) | Alt(0) => Err(Error::domain(format!("{d}: degree must be positive"))),
        GL(n, q) | SL(n, q) | PSL(n, q) | PGL(n, q) => {
            if n == 0 {
                Err(Error::domain(format!("{d}: dimension must be positive")))
            } else if prime_power(q).is_none() {
                Err(Error::domain(format!("{d}: {q} is not a prime power")))
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}

/// Simple by descriptor: cyclic of prime order, `Alt(n)` for `n ≥ 5`,
/// `PSL(n,q)` for `n ≥ 2` other than `PSL(2,2)` and `PSL(2,3)`.
pub fn is_simple_descriptor(d: &GroupDescriptor) -> bool {
    use GroupDescriptor::*;
    match *d {
        Cyclic(m) => is_prime(m),
        Alt(n) => n >= 5,
        PSL(n, q) => n >= 2 && !(n == 2 && (q == 2 || q == 3)),
        _ => false,
    }
}

impl TargetGroup {
    pub fn new(descriptor: GroupDescriptor) -> Result<Self> {
        let order = group_order(&descriptor)?;
        let field = match descriptor.matrix_params() {
            Some((_, q)) => Some(FiniteField::new(q)?),
            None => None,
        };
        let tags = ClassTags {
            gl: matches!(descriptor, GroupDescriptor::GL(..)),
            simple: is_simple_descriptor(&descriptor),
        };
        Ok(TargetGroup {
            descriptor,
            order,
            tags,
            field,
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        TargetGroup::new(s.parse()?)
    }

    pub fn field(&self) -> Option<&FiniteField> {
        self.field.as_ref()
    }

    /// Order as `u64`, or `None` when it does not fit.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn identity(&self) -> GroupElement {
        use GroupDescriptor::*;
        match self.descriptor {
            Cyclic(m) => GroupElement::Cyclic {
                modulus: m,
                value: 0,
            },
            Dihedral(n) => GroupElement::Dihedral {
                n,
                rotation: 0,
                reflection: false,
            },
            Sym(n) | Alt(n) => GroupElement::Perm(Permutation::identity(n as usize)),
            GL(n, _) | SL(n, _) => {
                GroupElement::Matrix(Matrix::identity(self.field.as_ref().unwrap(), n as usize))
            }
            PSL(n, _) | PGL(n, _) => GroupElement::Projective(Matrix::identity(
                self.field.as_ref().unwrap(),
                n as usize,
            )),
        }
    }

    /// Parses an element in the notation of [`GroupElement::to_text`]:
    /// `k` for cyclic groups, `r^k` or `r^k s` for dihedral groups, cycle
    /// notation for permutations and `[[..],[..]]` (optionally prefixed by
    /// `P`) for matrices. The result is checked for membership.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        use GroupDescriptor::*;
        let t = text.trim();
        let bad = || Error::input(format!("cannot read {t:?} as an element of {}", self.descriptor));
        let g = match self.descriptor {
            Cyclic(m) => GroupElement::Cyclic {
                modulus: m,
                value: t.parse().map_err(|_| bad())?,
            },
            Dihedral(n) => {
                let (rot, reflection) = match t.strip_suffix('s') {
                    Some(r) => (r.trim(), true),
                    None => (t, false),
                };
                let rotation = match rot {
                    "" | "1" => 0,
                    "r" => 1,
                    r => r.strip_prefix("r^").and_then(|k| k.parse().ok()).ok_or_else(bad)?,
                };
                GroupElement::Dihedral {
                    n,
                    rotation,
                    reflection,
                }
            }
            Sym(n) | Alt(n) => GroupElement::Perm(Permutation::parse(n as usize, t)?),
            GL(..) | SL(..) => GroupElement::Matrix(Matrix::parse(self.field.as_ref().unwrap(), t)?),
            PSL(..) | PGL(..) => {
                let m = Matrix::parse(self.field.as_ref().unwrap(), t.strip_prefix('P').unwrap_or(t))?;
                GroupElement::projective(&m)
            }
        };
        if !self.contains(&g) {
            return Err(bad());
        }
        Ok(g)
    }

    /// Membership of an element in this target.
    pub fn contains(&self, g: &GroupElement) -> bool {
        use GroupDescriptor::*;
        match (self.descriptor, g) {
            (Cyclic(m), GroupElement::Cyclic { modulus, value }) => *modulus == m && *value < m,
            (Dihedral(m), GroupElement::Dihedral { n, rotation, .. }) => *n == m && *rotation < m,
            (Sym(n), GroupElement::Perm(p)) => p.degree() == n as usize,
            (Alt(n), GroupElement::Perm(p)) => p.degree() == n as usize && p.is_even(),
            (GL(n, _), GroupElement::Matrix(m)) => self.matrix_fits(n, m) && m.is_invertible(),
            (SL(n, _), GroupElement::Matrix(m)) => self.matrix_fits(n, m) && m.det() == 1,
            (PGL(n, _), GroupElement::Projective(m)) => {
                self.matrix_fits(n, m) && m.is_invertible() && *m == m.projective_normalize()
            }
            (PSL(n, _), GroupElement::Projective(m)) => {
                self.matrix_fits(n, m)
                    && m.is_invertible()
                    && *m == m.projective_normalize()
                    && self.projective_det_ok(m)
            }
            _ => false,
        }
    }

    fn matrix_fits(&self, n: u32, m: &Matrix) -> bool {
        m.dim() == n as usize && Some(m.field()) == self.field.as_ref()
    }

    /// A projective class lies in PSL iff some scalar multiple has det 1.
    fn projective_det_ok(&self, m: &Matrix) -> bool {
        let f = self.field.as_ref().unwrap();
        let n = m.dim() as u64;
        let d = m.det();
        f.elements()
            .skip(1)
            .any(|c| f.mul(f.pow(c, n), d) == 1)
    }

    /// All elements in a fixed deterministic order (identity not
    /// necessarily first).
    pub fn elements(&self, budgets: &Budgets) -> Result<Vec<GroupElement>> {
        let order = self.order_u64().filter(|&o| o <= budgets.scan).ok_or_else(|| {
            Error::budget(format!("element scan of {}", self.descriptor), budgets.scan)
        })?;
        use GroupDescriptor::*;
        let out: Vec<GroupElement> = match self.descriptor {
            Cyclic(m) => (0..m)
                .map(|value| GroupElement::Cyclic { modulus: m, value })
                .collect(),
            Dihedral(n) => [false, true]
                .iter()
                .flat_map(|&reflection| {
                    (0..n).map(move |rotation| GroupElement::Dihedral {
                        n,
                        rotation,
                        reflection,
                    })
                })
                .collect(),
            Sym(n) | Alt(n) => {
                let even_only = matches!(self.descriptor, Alt(_));
                (0..n)
                    .permutations(n as usize)
                    .map(|v| Permutation::from_images(v).expect("permutation"))
                    .filter(|p| !even_only || p.is_even())
                    .map(GroupElement::Perm)
                    .collect()
            }
            GL(n, _) | SL(n, _) | PGL(n, _) | PSL(n, _) => self.matrix_elements(n, budgets)?,
        };
        debug_assert_eq!(out.len() as u64, order);
        Ok(out)
    }

    fn matrix_elements(&self, n: u32, budgets: &Budgets) -> Result<Vec<GroupElement>> {
        use GroupDescriptor::*;
        let f = self.field.as_ref().unwrap();
        let candidates = (f.q() as u128).pow(n * n);
        if candidates > 64 * budgets.scan as u128 {
            return Err(Error::budget(
                format!("matrix enumeration for {}", self.descriptor),
                budgets.scan,
            ));
        }
        let n = n as usize;
        let out = match self.descriptor {
            GL(..) => all_matrices(f, n)
                .filter(Matrix::is_invertible)
                .map(GroupElement::Matrix)
                .collect(),
            SL(..) => all_matrices(f, n)
                .filter(|m| m.det() == 1)
                .map(GroupElement::Matrix)
                .collect(),
            PGL(..) | PSL(..) => {
                let nth_powers: HashSet<u32> =
                    f.elements().skip(1).map(|c| f.pow(c, n as u64)).collect();
                let special = matches!(self.descriptor, PSL(..));
                all_matrices(f, n)
                    .filter(|m| {
                        let lead = m.entries().iter().find(|&&e| e != 0);
                        if lead != Some(&1) {
                            return false;
                        }
                        let d = m.det();
                        d != 0 && (!special || nth_powers.contains(&f.inv(d).unwrap()))
                    })
                    .map(GroupElement::Projective)
                    .collect()
            }
            _ => unreachable!(),
        };
        Ok(out)
    }

    /// Exact maximal element order. Uses closed forms where available
    /// (cyclic, dihedral, symmetric/alternating via cycle types,
    /// `m₁(GL(n,q)) = qⁿ − 1`) and an exhaustive scan otherwise.
    pub fn m1_exact(&self, budgets: &Budgets) -> Result<u64> {
        use GroupDescriptor::*;
        match self.descriptor {
            Cyclic(m) => Ok(m),
            Dihedral(m) => Ok(m.max(2)),
            Sym(n) => Ok(max_cycle_type_order(n, false)),
            Alt(n) => Ok(max_cycle_type_order(n, true)),
            GL(n, q) => q
                .checked_pow(n)
                .map(|x| x - 1)
                .ok_or_else(|| Error::domain(format!("q^n overflows for {}", self.descriptor))),
            _ => self.m1_scan(budgets),
        }
    }

    /// Maximal element order by scanning every element.
    pub fn m1_scan(&self, budgets: &Budgets) -> Result<u64> {
        let elems = self.elements(budgets)?;
        let mut best = 1;
        for g in &elems {
            best = best.max(element_order(g, budgets.order_cap)?);
        }
        Ok(best)
    }
}

/// Largest lcm of cycle lengths over permutations of degree `n`
/// (even permutations only when `even` is set).
pub fn max_cycle_type_order(n: u32, even: bool) -> u64 {
    let mut best = 1u64;
    for_each_partition(n, |parts| {
        // a permutation with cycle type λ has parity n − (number of cycles)
        if even && (n as usize - parts.len()) % 2 == 1 {
            return;
        }
        let l = parts.iter().fold(1u64, |acc, &k| lcm(acc, k as u64));
        best = best.max(l);
    });
    best
}
