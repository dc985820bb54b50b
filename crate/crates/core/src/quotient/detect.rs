use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{CatalogClass, TargetCatalog, ALL_COMPLETE_BELOW, SIMPLE_COMPLETE_BELOW};
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::groups::{GroupTable, Homomorphism, TargetGroup};
use crate::words::{Presentation, Word};

/// How a reported number relates to the true value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueTag {
    Exact,
    UpperBound,
    LowerBound,
    Interval,
}

impl ValueTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ValueTag::Exact => "exact",
            ValueTag::UpperBound => "upper-bound",
            ValueTag::LowerBound => "lower-bound",
            ValueTag::Interval => "interval",
        }
    }
}

/// The least catalog group detecting a word.
#[derive(Clone, Debug)]
pub struct DetectionResult {
    pub word: Word,
    /// `|G|` of the detecting group, or `order_limit + 1` when exhausted.
    pub value: u64,
    pub catalog_index: Option<usize>,
    pub witness: Option<Homomorphism>,
    pub exhausted: bool,
    /// Whether `value` is the true minimum over the whole class (not just the
    /// catalog).
    pub exact: bool,
}

impl DetectionResult {
    pub fn group(&self) -> Option<&TargetGroup> {
        self.witness.as_ref().map(Homomorphism::target)
    }

    pub fn tag(&self) -> ValueTag {
        if self.exhausted {
            ValueTag::LowerBound
        } else if self.exact {
            ValueTag::Exact
        } else {
            ValueTag::UpperBound
        }
    }
}

/// Whether a catalog minimum is the minimum over the whole class.
pub(crate) fn class_exact(class: CatalogClass, p: &Presentation, value: u64) -> bool {
    match class {
        CatalogClass::Gl => true,
        CatalogClass::Simple => value <= SIMPLE_COMPLETE_BELOW,
        // for Z, a detecting image of a^k has an element of order d ∤ k, so
        // |Q| ≥ d ≥ the least non-divisor, which Cyclic(d) attains
        CatalogClass::All => value <= ALL_COMPLETE_BELOW || (p.rank() == 1 && p.is_free()),
    }
}

/// First generator-image tuple (lexicographic in element indices, with the
/// first generator running over `firsts`) that satisfies the relators and
/// maps `w` off the identity.
fn search_group(
    table: &GroupTable,
    p: &Presentation,
    w: &Word,
    firsts: &[u32],
    sums: &[i64],
) -> Option<Vec<u32>> {
    let k = p.rank();
    let n = table.order() as u32;
    let id = table.identity();
    let abelian = table.is_abelian();
    let value = |t: &[u32]| {
        if abelian {
            table.eval_abelian(t, sums)
        } else {
            table.eval(t, w)
        }
    };
    firsts.par_iter().find_map_first(|&f| {
        let mut t = vec![0u32; k];
        t[0] = f;
        loop {
            if table.satisfies(p, &t) && value(&t) != id {
                return Some(t);
            }
            // odometer over coordinates 1..k
            let mut i = k;
            loop {
                i -= 1;
                if i == 0 {
                    return None;
                }
                if t[i] + 1 < n {
                    t[i] += 1;
                    break;
                }
                t[i] = 0;
            }
        }
    })
}

fn check_word(w: &Word, p: &Presentation) -> Result<()> {
    p.alphabet().check(w)?;
    if w.is_empty() {
        return Err(Error::input("the trivial word cannot be detected"));
    }
    if p.supports_word_problem() && p.is_trivial(w)? {
        return Err(Error::input("word is trivial in the presentation"));
    }
    Ok(())
}

/// Scans the catalog in order and returns the first group admitting a
/// homomorphism that does not kill `w`.
pub fn detect(w: &Word, p: &Presentation, cat: &TargetCatalog, budgets: &Budgets) -> Result<DetectionResult> {
    check_word(w, p)?;
    let sums = w.exponent_sums(p.rank());
    let killed_by_abelian = sums.iter().all(|&s| s == 0);
    for i in 0..cat.len() {
        let table = cat.table(i, budgets)?;
        if killed_by_abelian && table.is_abelian() {
            continue;
        }
        let reps = table.class_reps();
        let n = table.order() as u128;
        let tuples = reps.len() as u128 * n.saturating_pow(p.rank() as u32 - 1);
        if tuples > budgets.homs as u128 {
            return Err(Error::budget(
                format!("homomorphism search into {}", cat.groups[i].descriptor),
                budgets.homs,
            ));
        }
        if let Some(t) = search_group(&table, p, w, reps, &sums) {
            let value = cat.order(i);
            return Ok(DetectionResult {
                word: w.clone(),
                value,
                catalog_index: Some(i),
                witness: Some(table.to_homomorphism(p, &t)),
                exhausted: false,
                exact: class_exact(cat.class, p, value),
            });
        }
    }
    Ok(DetectionResult {
        word: w.clone(),
        value: cat.order_limit + 1,
        catalog_index: None,
        witness: None,
        exhausted: true,
        exact: false,
    })
}

/// Re-checks minimality by exhaustive enumeration of every homomorphism
/// into every catalog group of strictly smaller order, with no pruning.
pub fn verify_minimal(res: &DetectionResult, p: &Presentation, cat: &TargetCatalog, budgets: &Budgets) -> Result<bool> {
    for i in 0..cat.len() {
        if cat.order(i) >= res.value {
            break;
        }
        let table = cat.table(i, budgets)?;
        let mut homs = table.hom_tuples(p, budgets)?;
        let id = table.identity();
        if homs.any(|t| table.eval(&t, &res.word) != id) {
            return Ok(false);
        }
    }
    if let Some(h) = &res.witness {
        return Ok(h.detects(&res.word) && crate::groups::is_homomorphism(p, h.images()));
    }
    Ok(true)
}

/// All homomorphisms into `g`, in deterministic order.
pub fn enumerate_homs<'a>(
    p: &'a Presentation,
    table: &'a GroupTable,
    budgets: &Budgets,
) -> Result<impl Iterator<Item = Homomorphism> + 'a> {
    Ok(table.hom_tuples(p, budgets)?.map(move |t| table.to_homomorphism(p, &t)))
}

#[cfg(test)]
mod tests {
    use super::super::catalog::build_catalog;
    use super::*;
    use crate::groups::GroupDescriptor;

    fn z() -> Presentation {
        Presentation::free(1)
    }

    fn pow(k: i64) -> Word {
        Word::generator(0).pow(k)
    }

    #[test]
    fn z_detection_in_gl_and_simple() {
        let b = Budgets::default();
        let gl = build_catalog(CatalogClass::Gl, 200).unwrap();
        let r = detect(&pow(6), &z(), &gl, &b).unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.group().unwrap().descriptor, GroupDescriptor::GL(1, 5));
        assert!(verify_minimal(&r, &z(), &gl, &b).unwrap());
        let simple = build_catalog(CatalogClass::Simple, 200).unwrap();
        let r = detect(&pow(6), &z(), &simple, &b).unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.group().unwrap().descriptor, GroupDescriptor::Cyclic(5));
        assert_eq!(r.tag(), ValueTag::Exact);
    }

    #[test]
    fn commutator_needs_alt5() {
        let b = Budgets::default();
        let p = Presentation::free(2);
        let c = p.alphabet().parse_word("[a,b]").unwrap();
        let simple = build_catalog(CatalogClass::Simple, 100).unwrap();
        let r = detect(&c, &p, &simple, &b).unwrap();
        assert_eq!(r.value, 60);
        assert_eq!(r.group().unwrap().descriptor, GroupDescriptor::Alt(5));
        assert!(verify_minimal(&r, &p, &simple, &b).unwrap());
    }

    #[test]
    fn exhaustion_is_marked() {
        let b = Budgets::default();
        let simple = build_catalog(CatalogClass::Simple, 50).unwrap();
        let p = Presentation::free(2);
        let c = p.alphabet().parse_word("[a,b]").unwrap();
        let r = detect(&c, &p, &simple, &b).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.value, 51);
        assert_eq!(r.tag(), ValueTag::LowerBound);
    }

    #[test]
    fn trivial_words_are_rejected() {
        let b = Budgets::default();
        let gl = build_catalog(CatalogClass::Gl, 20).unwrap();
        assert!(detect(&Word::empty(), &z(), &gl, &b).is_err());
        let s = Presentation::surface(2).unwrap();
        let r = s.relators()[0].clone();
        assert!(detect(&r, &s, &gl, &b).is_err());
    }

    #[test]
    fn hom_enumeration_counts() {
        let b = Budgets::default();
        let s3 = GroupTable::build(&TargetGroup::parse("Sym(3)").unwrap(), &b).unwrap();
        assert_eq!(enumerate_homs(&z(), &s3, &b).unwrap().count(), 6);
        let p = Presentation::parse("gens: a\nrels: a^2").unwrap();
        let c4 = GroupTable::build(&TargetGroup::parse("Cyclic(4)").unwrap(), &b).unwrap();
        let homs: Vec<String> = enumerate_homs(&p, &c4, &b)
            .unwrap()
            .map(|h| h.images()[0].to_text())
            .collect();
        assert_eq!(homs, ["0", "2"]);
    }
}
