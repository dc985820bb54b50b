use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::arith::{factorial, gcd, is_prime, prime_power};
use crate::groups::target::{gl_order, psl_order};

/// Families of finite simple groups (plus `GL(n,q)`) covered by the atlas.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FamilyTag {
    Alt,
    GL,
    A,
    A2,
    B,
    C,
    D,
    D2,
    E6,
    E7,
    E8,
    F4,
    G2,
    E6Twisted,
    D4Triality,
    Suzuki,
    Ree,
    ReeF4,
    CyclicPrime,
    Sporadic,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 20] = [
        FamilyTag::Alt,
        FamilyTag::GL,
        FamilyTag::A,
        FamilyTag::A2,
        FamilyTag::B,
        FamilyTag::C,
        FamilyTag::D,
        FamilyTag::D2,
        FamilyTag::E6,
        FamilyTag::E7,
        FamilyTag::E8,
        FamilyTag::F4,
        FamilyTag::G2,
        FamilyTag::E6Twisted,
        FamilyTag::D4Triality,
        FamilyTag::Suzuki,
        FamilyTag::Ree,
        FamilyTag::ReeF4,
        FamilyTag::CyclicPrime,
        FamilyTag::Sporadic,
    ];

    pub fn name(self) -> &'static str {
        use FamilyTag::*;
        match self {
            Alt => "Alt",
            GL => "GL",
            A => "A",
            A2 => "2A",
            B => "B",
            C => "C",
            D => "D",
            D2 => "2D",
            E6 => "E6",
            E7 => "E7",
            E8 => "E8",
            F4 => "F4",
            G2 => "G2",
            E6Twisted => "2E6",
            D4Triality => "3D4",
            Suzuki => "2B2",
            Ree => "2G2",
            ReeF4 => "2F4",
            CyclicPrime => "Cyclic",
            Sporadic => "Sporadic",
        }
    }

    /// Families indexed by a rank parameter `n`, with the least admissible `n`.
    pub fn min_rank(self) -> Option<u32> {
        use FamilyTag::*;
        match self {
            Alt => Some(5),
            GL | A => Some(1),
            A2 | B => Some(2),
            C => Some(3),
            D | D2 => Some(4),
            _ => None,
        }
    }

    pub fn uses_field(self) -> bool {
        !matches!(self, FamilyTag::Alt | FamilyTag::CyclicPrime | FamilyTag::Sporadic)
    }

    /// Classical simple families of unbounded rank.
    pub fn is_classical(self) -> bool {
        use FamilyTag::*;
        matches!(self, A | A2 | B | C | D | D2)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let alias = match lower.as_str() {
            "gln" | "gl" => Some(FamilyTag::GL),
            "alt" | "alternating" => Some(FamilyTag::Alt),
            "cyclic" | "cyclicprime" | "zp" => Some(FamilyTag::CyclicPrime),
            "sporadic" => Some(FamilyTag::Sporadic),
            _ => None,
        };
        alias
            .or_else(|| {
                FamilyTag::ALL
                    .iter()
                    .copied()
                    .find(|t| t.name().eq_ignore_ascii_case(&lower))
            })
            .ok_or_else(|| Error::input(format!("unknown family {s:?}")))
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for FamilyTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A family member, or a whole family when `q` is left open.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct FamilyId {
    pub tag: FamilyTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// Field size, or the prime for `Cyclic`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut args = Vec::new();
        if let Some(n) = self.n {
            args.push(n.to_string());
        }
        match self.q {
            Some(q) => args.push(q.to_string()),
            None if self.tag.uses_field() => args.push("q".into()),
            None => {}
        }
        if args.is_empty() {
            write!(f, "{}", self.tag)
        } else {
            write!(f, "{}({})", self.tag, args.join(","))
        }
    }
}

impl FamilyId {
    pub fn new(tag: FamilyTag, n: Option<u32>, q: Option<u64>) -> Result<Self> {
        use FamilyTag::*;
        let id = FamilyId { tag, n, q };
        match (tag.min_rank(), n) {
            (Some(min), Some(n)) if n < min => {
                return Err(Error::domain(format!("{tag} requires n >= {min}, got {n}")))
            }
            (Some(_), None) => return Err(Error::domain(format!("{tag} requires a rank n"))),
            (None, Some(_)) => return Err(Error::domain(format!("{tag} takes no rank parameter"))),
            _ => {}
        }
        match (tag, q) {
            (Alt | Sporadic, Some(_)) => {
                return Err(Error::domain(format!("{tag} takes no field parameter")))
            }
            (CyclicPrime, Some(p)) if !is_prime(p) => {
                return Err(Error::domain(format!("Cyclic requires a prime order, got {p}")))
            }
            (CyclicPrime, _) | (Alt | Sporadic, None) | (_, None) => {}
            (_, Some(q)) => {
                let (p, t) = prime_power(q)
                    .ok_or_else(|| Error::domain(format!("{tag}: {q} is not a prime power")))?;
                let need = match tag {
                    Suzuki | ReeF4 => Some(2),
                    Ree => Some(3),
                    _ => None,
                };
                if let Some(need) = need {
                    if p != need || t % 2 == 0 {
                        return Err(Error::domain(format!(
                            "{tag} requires q = {need}^(2j+1), got {q}"
                        )));
                    }
                }
            }
        }
        Ok(id)
    }

    /// Parses `C(4,3)`, `E8(2)`, `Alt(7)`, `Cyclic(5)`, `GL(3,q)`, `Sporadic`.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, args) = match compact.split_once('(') {
            Some((name, rest)) => (
                name,
                rest.strip_suffix(')')
                    .ok_or_else(|| Error::input(format!("bad family {s:?}")))?,
            ),
            None => (compact.as_str(), ""),
        };
        let tag: FamilyTag = name.parse()?;
        let nums: Vec<Option<u64>> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| {
                    if a == "q" {
                        Ok(None)
                    } else {
                        a.parse::<u64>()
                            .map(Some)
                            .map_err(|_| Error::input(format!("bad parameter {a:?} in {s:?}")))
                    }
                })
                .collect::<Result<_>>()?
        };
        let ranked = tag.min_rank().is_some();
        let (n, q) = match (ranked, nums.as_slice()) {
            (true, [n]) => (*n, None),
            (true, [n, q]) => (*n, *q),
            (false, []) => (None, None),
            (false, [q]) => (None, *q),
            _ => return Err(Error::input(format!("wrong number of parameters in {s:?}"))),
        };
        let n = n
            .map(|n| u32::try_from(n).map_err(|_| Error::domain(format!("rank {n} too large"))))
            .transpose()?;
        FamilyId::new(tag, n, q)
    }

    /// The rank, for ranked families.
    pub fn rank(&self) -> u32 {
        self.n.unwrap_or(0)
    }
}

fn pw(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

fn prod(q: u64, terms: &[(u32, bool)]) -> BigUint {
    // (q^e − 1) for false, (q^e + 1) for true
    terms.iter().fold(BigUint::one(), |acc, &(e, plus)| {
        let x = pw(q, e);
        acc * if plus { x + 1u32 } else { x - 1u32 }
    })
}

/// `q^e ± 1` reduced mod a small modulus, for the gcd in centre orders.
fn pm_mod(q: u64, e: u32, plus: bool, m: u64) -> u64 {
    let mut r = 1u64;
    for _ in 0..e {
        r = r * (q % m) % m;
    }
    if plus {
        (r + 1) % m
    } else {
        (r + m - 1) % m
    }
}

/// Exact order of a family member, when all parameters are fixed.
pub fn exact_order(f: &FamilyId) -> Option<BigUint> {
    use FamilyTag::*;
    let n = f.n.unwrap_or(0);
    if f.tag == Alt {
        return Some(factorial(n as u64) / 2u32);
    }
    let q = f.q?;
    let v = match f.tag {
        CyclicPrime => BigUint::from(q),
        GL => gl_order(n, q),
        A => psl_order(n + 1, q),
        A2 => {
            let terms: Vec<(u32, bool)> = (2..=n + 1).map(|i| (i, i % 2 == 1)).collect();
            pw(q, n * (n + 1) / 2) * prod(q, &terms) / gcd(n as u64 + 1, q + 1)
        }
        B | C => {
            let terms: Vec<(u32, bool)> = (1..=n).map(|i| (2 * i, false)).collect();
            pw(q, n * n) * prod(q, &terms) / gcd(2, q - 1)
        }
        D | D2 => {
            let plus = f.tag == D2;
            let mut terms: Vec<(u32, bool)> = (1..n).map(|i| (2 * i, false)).collect();
            terms.push((n, plus));
            let centre = gcd(4, pm_mod(q, n, plus, 4));
            let centre = if centre == 0 { 4 } else { centre };
            pw(q, n * (n - 1)) * prod(q, &terms) / centre
        }
        G2 => pw(q, 6) * prod(q, &[(6, false), (2, false)]),
        F4 => pw(q, 24) * prod(q, &[(12, false), (8, false), (6, false), (2, false)]),
        E6 => {
            let t = [(12, false), (9, false), (8, false), (6, false), (5, false), (2, false)];
            pw(q, 36) * prod(q, &t) / gcd(3, q - 1)
        }
        E6Twisted => {
            let t = [(12, false), (9, true), (8, false), (6, false), (5, true), (2, false)];
            pw(q, 36) * prod(q, &t) / gcd(3, q + 1)
        }
        E7 => {
            let t: Vec<(u32, bool)> = [2, 6, 8, 10, 12, 14, 18].iter().map(|&e| (e, false)).collect();
            pw(q, 63) * prod(q, &t) / gcd(2, q - 1)
        }
        E8 => {
            let t: Vec<(u32, bool)> =
                [2, 8, 12, 14, 18, 20, 24, 30].iter().map(|&e| (e, false)).collect();
            pw(q, 120) * prod(q, &t)
        }
        D4Triality => (pw(q, 8) + pw(q, 4) + 1u32) * pw(q, 12) * prod(q, &[(6, false), (2, false)]),
        Suzuki => pw(q, 2) * prod(q, &[(2, true), (1, false)]),
        Ree => pw(q, 3) * prod(q, &[(3, true), (1, false)]),
        ReeF4 => pw(q, 12) * prod(q, &[(6, true), (4, false), (3, true), (1, false)]),
        Alt | Sporadic => return None,
    };
    Some(v)
}
