use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::groups::arith::{is_prime, prime_power};
use crate::groups::target::{gl_order, group_order, is_simple_descriptor};
use crate::groups::{GroupDescriptor, GroupTable, TargetGroup};

/// The class of finite targets a detection search ranges over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CatalogClass {
    All,
    Gl,
    Simple,
}

impl fmt::Display for CatalogClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CatalogClass::All => "ALL",
            CatalogClass::Gl => "GL",
            CatalogClass::Simple => "SIMPLE",
        })
    }
}

impl FromStr for CatalogClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "ALL" => Ok(CatalogClass::All),
            "GL" => Ok(CatalogClass::Gl),
            "SIMPLE" => Ok(CatalogClass::Simple),
            _ => Err(Error::input(format!("unknown catalog class {s:?}"))),
        }
    }
}

/// Every simple group of order below this is one of `Cyclic(p)`, `Alt(n)`
/// or `PSL(n,q)`; the first one missing is `PSU(3,3)`.
pub const SIMPLE_COMPLETE_BELOW: u64 = 6048;

/// Every group of order below this is isomorphic to a catalog member of
/// the ALL class (cyclic, dihedral including the Klein four-group, `Sym(3)`).
pub const ALL_COMPLETE_BELOW: u64 = 8;

/// Finite targets of one class, sorted by order and then by descriptor.
pub struct TargetCatalog {
    pub class: CatalogClass,
    pub order_limit: u64,
    pub groups: Vec<TargetGroup>,
    orders: Vec<u64>,
    tables: Vec<OnceLock<Result<Arc<GroupTable>>>>,
}

impl fmt::Debug for TargetCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetCatalog")
            .field("class", &self.class)
            .field("order_limit", &self.order_limit)
            .field("groups", &self.groups.iter().map(|g| g.descriptor).collect::<Vec<_>>())
            .finish()
    }
}

fn push_if(out: &mut Vec<GroupDescriptor>, d: GroupDescriptor, limit: u64) -> bool {
    match group_order(&d).ok().and_then(|o| o.to_u64()) {
        Some(o) if o <= limit => {
            if o >= 2 {
                out.push(d);
            }
            true
        }
        _ => false,
    }
}

fn gl_members(limit: u64, out: &mut Vec<GroupDescriptor>) {
    for q in 2..=limit.saturating_add(1) {
        if prime_power(q).is_none() {
            continue;
        }
        for n in 1.. {
            if gl_order(n, q).to_u64().is_none_or(|o| o > limit) {
                break;
            }
            push_if(out, GroupDescriptor::GL(n, q), limit);
        }
    }
}

fn projective_members(limit: u64, out: &mut Vec<GroupDescriptor>, simple_only: bool) {
    // |PSL(2,q)| ≥ q(q²−1)/2, so q³ ≤ 2·limit + q bounds the field size
    let qmax = (1..).find(|&q: &u64| q * (q * q - 1) / 2 > limit).unwrap_or(2);
    for q in 2..=qmax {
        if prime_power(q).is_none() {
            continue;
        }
        for n in 2.. {
            let kinds: &[fn(u32, u64) -> GroupDescriptor] = if simple_only {
                &[GroupDescriptor::PSL]
            } else {
                &[GroupDescriptor::SL, GroupDescriptor::PSL, GroupDescriptor::PGL]
            };
            let mut any = false;
            for kind in kinds {
                let d = kind(n, q);
                if simple_only && !is_simple_descriptor(&d) {
                    // PSL(2,2), PSL(2,3) still bound the loop
                    any |= group_order(&d).ok().and_then(|o| o.to_u64()).is_some_and(|o| o <= limit);
                    continue;
                }
                any |= push_if(out, d, limit);
            }
            if !any {
                break;
            }
        }
    }
}

fn perm_members(limit: u64, out: &mut Vec<GroupDescriptor>, alt_from: u32, sym_from: Option<u32>) {
    for n in 2.. {
        let alt = n >= alt_from && push_if(out, GroupDescriptor::Alt(n), limit);
        let sym = sym_from.is_some_and(|s| n >= s) && push_if(out, GroupDescriptor::Sym(n), limit);
        if n >= alt_from && !alt && !sym {
            break;
        }
    }
}

/// Builds the catalog of `class` groups with `2 ≤ |G| ≤ order_limit`.
pub fn build_catalog(class: CatalogClass, order_limit: u64) -> Result<TargetCatalog> {
    if order_limit < 2 {
        return Err(Error::input(format!("order limit must be at least 2, got {order_limit}")));
    }
    let mut ds = Vec::new();
    match class {
        CatalogClass::Gl => gl_members(order_limit, &mut ds),
        CatalogClass::Simple => {
            ds.extend((2..=order_limit).filter(|&p| is_prime(p)).map(GroupDescriptor::Cyclic));
            perm_members(order_limit, &mut ds, 5, None);
            projective_members(order_limit, &mut ds, true);
        }
        CatalogClass::All => {
            ds.extend((2..=order_limit).map(GroupDescriptor::Cyclic));
            ds.extend((2..=order_limit / 2).map(GroupDescriptor::Dihedral));
            perm_members(order_limit, &mut ds, 4, Some(3));
            gl_members(order_limit, &mut ds);
            projective_members(order_limit, &mut ds, false);
        }
    }
    let mut groups: Vec<(u64, TargetGroup)> = ds
        .into_iter()
        .map(|d| {
            let g = TargetGroup::new(d)?;
            Ok((g.order_u64().unwrap(), g))
        })
        .collect::<Result<_>>()?;
    groups.sort_by_key(|(o, g)| (*o, g.descriptor.sort_key()));
    groups.dedup_by_key(|(_, g)| g.descriptor);
    let orders = groups.iter().map(|(o, _)| *o).collect();
    let groups: Vec<TargetGroup> = groups.into_iter().map(|(_, g)| g).collect();
    let tables = groups.iter().map(|_| OnceLock::new()).collect();
    Ok(TargetCatalog {
        class,
        order_limit,
        groups,
        orders,
        tables,
    })
}

impl TargetCatalog {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    /// Indexed form of group `i`, built on first use and shared afterwards.
    pub fn table(&self, i: usize, budgets: &Budgets) -> Result<Arc<GroupTable>> {
        self.tables[i]
            .get_or_init(|| GroupTable::build(&self.groups[i], budgets).map(Arc::new))
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(c: &TargetCatalog) -> Vec<String> {
        c.groups.iter().map(|g| g.descriptor.to_string()).collect()
    }

    #[test]
    fn gl_catalog_to_ten() {
        let c = build_catalog(CatalogClass::Gl, 10).unwrap();
        assert_eq!(
            names(&c),
            ["GL(1,3)", "GL(1,4)", "GL(1,5)", "GL(2,2)", "GL(1,7)", "GL(1,8)", "GL(1,9)", "GL(1,11)"]
        );
    }

    #[test]
    fn simple_catalog_to_sixty() {
        let c = build_catalog(CatalogClass::Simple, 60).unwrap();
        let n = names(&c);
        let primes = (2..60u64).filter(|&p| is_prime(p)).count();
        assert!(n[..primes].iter().all(|s| s.starts_with("Cyclic")));
        assert_eq!(&n[primes..], ["Alt(5)", "PSL(2,4)", "PSL(2,5)"]);
    }

    #[test]
    fn sorted_and_prefix_monotone() {
        for class in [CatalogClass::All, CatalogClass::Gl, CatalogClass::Simple] {
            let small = build_catalog(class, 200).unwrap();
            let big = build_catalog(class, 2000).unwrap();
            assert!(small.orders.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(names(&small)[..], names(&big)[..small.len()]);
        }
    }

    #[test]
    fn all_catalog_contents() {
        let c = build_catalog(CatalogClass::All, 60).unwrap();
        let n = names(&c);
        for want in ["Cyclic(7)", "Dihedral(2)", "Sym(3)", "Alt(4)", "GL(2,2)", "SL(2,3)", "PSL(2,5)", "PGL(2,3)", "Alt(5)"] {
            assert!(n.contains(&want.to_string()), "{want}");
        }
        assert!(build_catalog(CatalogClass::All, 1).is_err());
    }

    #[test]
    fn simple_catalog_is_complete_below_6048() {
        // simple orders below 6048, each with its multiplicity among catalog members up to isomorphism
        let c = build_catalog(CatalogClass::Simple, SIMPLE_COMPLETE_BELOW - 1).unwrap();
        let nonabelian: std::collections::BTreeSet<u64> = (0..c.len())
            .filter(|&i| !matches!(c.groups[i].descriptor, GroupDescriptor::Cyclic(_)))
            .map(|i| c.order(i))
            .collect();
        assert_eq!(
            nonabelian.into_iter().collect::<Vec<_>>(),
            [60, 168, 360, 504, 660, 1092, 2448, 2520, 3420, 4080, 5616]
        );
    }
}
