use num_bigint::BigUint;
use serde::Serialize;

use super::{alt_ratio_lower_bound, ser_ratio, FamilyTag, Rational};
use crate::error::{Error, Result};
use crate::groups::arith::{ln_big, prime_power};
use crate::groups::target::psl_order;
use crate::groups::{GroupDescriptor, TargetGroup};

/// Which families enter a bounded-rank threshold.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdScope {
    /// `GL(n,q)` only; the bound is on `r^FL`.
    Gl,
    /// Finite simple groups; the bound is on `r`.
    Simple,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ThresholdContribution {
    pub family: FamilyTag,
    /// Largest rank whose ratio lower bound is at most `C`; `None` when no
    /// rank qualifies or the family has no rank parameter.
    pub max_rank: Option<u32>,
    pub r: u64,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ThresholdReport {
    #[serde(serialize_with = "ser_ratio")]
    pub c: Rational,
    pub scope: ThresholdScope,
    pub include_sporadic: bool,
    pub contributions: Vec<ThresholdContribution>,
    pub threshold: u64,
}

/// Ratio lower bound at rank `n` for a ranked family, as an `f64` together
/// with an exact comparison against `c` where the bound is rational.
fn lower_bound_at_most(tag: FamilyTag, n: u32, c: &Rational) -> bool {
    use FamilyTag::*;
    let n = n as i64;
    let (num, den) = match tag {
        GL => (n - 1, 1),
        A => (n * n - 3, n + 2),
        A2 => (n * n + 2 * n - 1, n + 1),
        B | C => (2 * n * n + n - 2, n + 2),
        D | D2 => (2 * n * n - n - 2, n + 2),
        Alt => {
            let cf = *c.numer() as f64 / *c.denom() as f64;
            return alt_ratio_lower_bound(n as u32) <= cf;
        }
        _ => unreachable!("family without rank"),
    };
    Rational::new(num, den) <= *c
}

/// `r` (or `r^FL` for `GL`) at rank `n`, taking the largest value over the
/// conditional cases.
fn r_at_rank(tag: FamilyTag, n: u32) -> u64 {
    use FamilyTag::*;
    let n = n as u64;
    match tag {
        GL => n,
        A | A2 => n + 1,
        B => {
            if n == 2 {
                2 * n
            } else {
                2 * n + 1
            }
        }
        C | D | D2 => 2 * n,
        Alt => n - 2,
        _ => unreachable!("family without rank"),
    }
}

/// Largest admissible rank: the ratio lower bounds increase with `n`, so
/// the scan stops at the first rank that exceeds `c`.
fn max_admissible_rank(tag: FamilyTag, c: &Rational) -> Option<u32> {
    let min = tag.min_rank()?;
    let mut best = None;
    let mut n = min;
    while lower_bound_at_most(tag, n, c) {
        best = Some(n);
        n += 1;
    }
    best
}

/// Per-family breakdown of [`bounded_rank_threshold`].
pub fn threshold_report(c: Rational, scope: ThresholdScope, include_sporadic: bool) -> ThresholdReport {
    use FamilyTag::*;
    let ranked: &[FamilyTag] = match scope {
        ThresholdScope::Gl => &[GL],
        ThresholdScope::Simple => &[Alt, A, A2, B, C, D, D2],
    };
    let mut contributions: Vec<ThresholdContribution> = ranked
        .iter()
        .map(|&tag| {
            let max_rank = max_admissible_rank(tag, &c);
            ThresholdContribution {
                family: tag,
                max_rank,
                r: max_rank.map_or(0, |n| r_at_rank(tag, n)),
            }
        })
        .collect();
    if scope == ThresholdScope::Simple {
        contributions.push(ThresholdContribution {
            family: E8,
            max_rank: None,
            r: 248,
        });
        if include_sporadic {
            contributions.push(ThresholdContribution {
                family: Sporadic,
                max_rank: None,
                r: 196883,
            });
        }
    }
    let threshold = contributions.iter().map(|c| c.r).max().unwrap_or(0);
    ThresholdReport {
        c,
        scope,
        include_sporadic,
        contributions,
        threshold,
    }
}

/// The bound `R(C)` on `r^FL` (GL scope) or `r` (simple scope) for groups
/// whose ratio `log|G| / log m₁(G)` is at most `C`.
pub fn bounded_rank_threshold(c: Rational, scope: ThresholdScope, include_sporadic: bool) -> Result<u64> {
    if c <= Rational::from_integer(0) {
        return Err(Error::domain("threshold constant C must be positive"));
    }
    Ok(threshold_report(c, scope, include_sporadic).threshold)
}

/// Embedding of a simple group into `PSL(R, q)` with the exponent `D` such
/// that `|PSL(R,q)| ≤ |G|^D`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct PslEmbedding {
    pub source: GroupDescriptor,
    /// Dimension and field of the smallest natural projective embedding.
    pub natural_dim: u32,
    pub psl_n: u32,
    pub psl_q: u64,
    /// Exponent needed for the finitely many alternating cases.
    pub d1: Option<u32>,
    pub d2: u32,
    pub d: u32,
    #[serde(serialize_with = "ser_big")]
    pub psl_order: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub group_order: BigUint,
    /// `|PSL(R,q)| ≤ |G|^D`, checked exactly.
    pub holds: bool,
}

fn ser_big<S: serde::Serializer>(b: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(b)
}

/// Smallest dimension and field of a faithful projective representation
/// used for each simple catalog group.
fn natural_embedding(d: &GroupDescriptor) -> (u32, u64) {
    match *d {
        GroupDescriptor::Cyclic(p) => (2, p),
        GroupDescriptor::Alt(n) => match n {
            5 => (2, 4),
            6 => (2, 9),
            7 | 8 => (4, 2),
            // the fully deleted permutation module over F_p with p | n
            _ => {
                let p = (2..=n as u64).find(|p| (n as u64).is_multiple_of(*p)).unwrap();
                let p = prime_power(p).map(|(p, _)| p).unwrap();
                (n - 2, p)
            }
        },
        GroupDescriptor::PSL(2, 5) => (2, 4),
        GroupDescriptor::PSL(3, 2) => (2, 7),
        GroupDescriptor::PSL(n, q) => (n, q),
        _ => unreachable!("non-simple descriptor"),
    }
}

/// Parameters of `PSL(R, q)` receiving a simple group `g` with `r(g) ≤ R`,
/// and the exponent `D = max(D₁, R², 4)`.
pub fn psl_embedding_bookkeeping(g: &TargetGroup, r: u32) -> Result<PslEmbedding> {
    if !g.tags.simple {
        return Err(Error::Precondition(format!("{} is not simple", g.descriptor)));
    }
    let (dim, q) = natural_embedding(&g.descriptor);
    let is_cyclic = matches!(g.descriptor, GroupDescriptor::Cyclic(_));
    if !is_cyclic && dim > r {
        return Err(Error::Precondition(format!(
            "{} needs dimension {dim} > R = {r}",
            g.descriptor
        )));
    }
    // prime cyclic groups go to PSL(2,p) whatever R is
    let psl_n = if is_cyclic { 2 } else { r };
    let psl_ord = psl_order(psl_n, q);
    let d2 = r * r;
    let d1 = matches!(g.descriptor, GroupDescriptor::Alt(_)).then(|| {
        // least D₁ with |PSL| ≤ |G|^D₁
        let est = (ln_big(&psl_ord) / ln_big(&g.order)).floor().max(0.0) as u32;
        (est.saturating_sub(1)..)
            .find(|&k| g.order.pow(k) >= psl_ord)
            .unwrap()
    });
    let d = d1.unwrap_or(0).max(d2).max(4);
    let holds = psl_ord <= g.order.pow(d);
    Ok(PslEmbedding {
        source: g.descriptor,
        natural_dim: dim,
        psl_n,
        psl_q: q,
        d1,
        d2,
        d,
        psl_order: psl_ord,
        group_order: g.order.clone(),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn gl_threshold_at_ten() {
        assert_eq!(bounded_rank_threshold(c(10), ThresholdScope::Gl, false).unwrap(), 11);
    }

    #[test]
    fn simple_threshold_at_one() {
        let rep = threshold_report(c(1), ThresholdScope::Simple, false);
        assert_eq!(rep.threshold, 248);
        let b = rep.contributions.iter().find(|x| x.family == FamilyTag::B).unwrap();
        assert_eq!(b.max_rank, None);
        assert_eq!(
            bounded_rank_threshold(c(1), ThresholdScope::Simple, true).unwrap(),
            196883
        );
    }

    #[test]
    fn monotone_in_c() {
        for scope in [ThresholdScope::Gl, ThresholdScope::Simple] {
            let vals: Vec<u64> = [1, 2, 5, 10, 50, 500]
                .iter()
                .map(|&x| bounded_rank_threshold(c(x), scope, false).unwrap())
                .collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{vals:?}");
        }
        assert!(bounded_rank_threshold(c(0), ThresholdScope::Gl, false).is_err());
    }

    #[test]
    fn ranked_lower_bounds_increase() {
        use FamilyTag::*;
        for tag in [A, A2, B, C, D, D2] {
            let min = tag.min_rank().unwrap();
            let vals: Vec<f64> = (min..min + 40)
                .map(|n| {
                    let n = n as f64;
                    match tag {
                        A => (n * n - 3.0) / (n + 2.0),
                        A2 => (n * n + 2.0 * n - 1.0) / (n + 1.0),
                        B | C => (2.0 * n * n + n - 2.0) / (n + 2.0),
                        _ => (2.0 * n * n - n - 2.0) / (n + 2.0),
                    }
                })
                .collect();
            assert!(vals.windows(2).all(|w| w[0] < w[1]));
        }
        let alt: Vec<f64> = (5..200).map(alt_ratio_lower_bound).collect();
        assert!(alt.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn psl_bookkeeping_examples() {
        let c5 = psl_embedding_bookkeeping(&TargetGroup::parse("Cyclic(5)").unwrap(), 2).unwrap();
        assert_eq!((c5.psl_n, c5.psl_q), (2, 5));
        assert_eq!(c5.psl_order, BigUint::from(60u32));
        assert!(c5.psl_order < BigUint::from(625u32) && c5.holds);

        let p = psl_embedding_bookkeeping(&TargetGroup::parse("PSL(2,7)").unwrap(), 2).unwrap();
        assert_eq!((p.psl_n, p.psl_q, p.d2, p.d), (2, 7, 4, 4));
        assert!(p.holds);

        let a5 = psl_embedding_bookkeeping(&TargetGroup::parse("Alt(5)").unwrap(), 2).unwrap();
        assert_eq!((a5.psl_n, a5.psl_q), (2, 4));
        assert_eq!(a5.d1, Some(1));
        assert_eq!(a5.psl_order, a5.group_order);

        let a9 = psl_embedding_bookkeeping(&TargetGroup::parse("Alt(9)").unwrap(), 7).unwrap();
        assert_eq!((a9.natural_dim, a9.psl_q), (7, 3));
        assert!(a9.holds);

        assert!(psl_embedding_bookkeeping(&TargetGroup::parse("PSL(4,3)").unwrap(), 3).is_err());
        assert!(psl_embedding_bookkeeping(&TargetGroup::parse("Sym(5)").unwrap(), 3).is_err());
    }
}
