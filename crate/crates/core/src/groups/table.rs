use std::collections::HashMap;

use super::element::GroupElement;
use super::hom::Homomorphism;
use super::target::{GroupDescriptor, TargetGroup};
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::words::{Presentation, Word};

/// A finite group with its elements indexed `0..|G|`, for fast word
/// evaluation. Groups up to `Budgets::table` in order get a full
/// multiplication table; larger ones multiply elements on demand.
pub struct GroupTable {
    target: TargetGroup,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    identity: u32,
    abelian: bool,
    class_reps: Vec<u32>,
}

fn abelian_descriptor(d: &GroupDescriptor) -> bool {
    use GroupDescriptor::*;
    match *d {
        Cyclic(_) => true,
        Dihedral(m) => m <= 2,
        Sym(n) => n <= 2,
        Alt(n) => n <= 3,
        GL(n, _) | SL(n, _) | PSL(n, _) | PGL(n, _) => n == 1,
    }
}

impl GroupTable {
    pub fn build(target: &TargetGroup, budgets: &Budgets) -> Result<Self> {
        let elements = target.elements(budgets)?;
        let n = elements.len();
        let index: HashMap<GroupElement, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        let lookup = |g: &GroupElement| -> u32 { index[g] };
        let identity = lookup(&target.identity());
        let inverse: Vec<u32> = elements.iter().map(|g| lookup(&g.inverse())).collect();
        let table = if (n as u64) <= budgets.table {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup(&a.mul(b)));
                }
            }
            Some(t)
        } else {
            None
        };
        let mut g = GroupTable {
            target: target.clone(),
            elements,
            index,
            table,
            inverse,
            identity,
            abelian: abelian_descriptor(&target.descriptor),
            class_reps: Vec::new(),
        };
        g.class_reps = g.compute_class_reps();
        Ok(g)
    }

    /// Least-index representative of each conjugacy class, when a table is
    /// available; otherwise every element.
    fn compute_class_reps(&self) -> Vec<u32> {
        let n = self.order();
        if self.abelian || self.table.is_none() {
            return (0..n as u32).collect();
        }
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if seen[x as usize] {
                continue;
            }
            reps.push(x);
            for g in 0..n as u32 {
                let c = self.mul(self.mul(self.inverse[g as usize], x), g);
                seen[c as usize] = true;
            }
        }
        reps
    }

    pub fn target(&self) -> &TargetGroup {
        &self.target
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn element(&self, i: u32) -> &GroupElement {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn class_reps(&self) -> &[u32] {
        &self.class_reps
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].mul(&self.elements[b as usize])],
        }
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Image of `w` under the assignment `images` (indices per generator).
    pub fn eval(&self, images: &[u32], w: &Word) -> u32 {
        let mut acc = self.identity;
        for l in w.letters() {
            let g = images[l.generator()];
            let g = if l.is_inverse() { self.inv(g) } else { g };
            acc = self.mul(acc, g);
        }
        acc
    }

    /// Like [`eval`](Self::eval) with precomputed exponent sums, valid only
    /// for abelian groups.
    pub fn eval_abelian(&self, images: &[u32], sums: &[i64]) -> u32 {
        images
            .iter()
            .zip(sums)
            .fold(self.identity, |acc, (&g, &e)| self.mul(acc, self.pow(g, e)))
    }

    pub fn satisfies(&self, p: &Presentation, images: &[u32]) -> bool {
        p.relators()
            .iter()
            .all(|r| self.eval(images, r) == self.identity)
    }

    pub fn to_homomorphism(&self, p: &Presentation, images: &[u32]) -> Homomorphism {
        Homomorphism::new_unchecked(
            p.clone(),
            self.target.clone(),
            images.iter().map(|&i| self.element(i).clone()).collect(),
        )
    }

    fn check_hom_budget(&self, rank: usize, first_choices: usize, budgets: &Budgets) -> Result<()> {
        let n = self.order() as u128;
        let total = (first_choices as u128).saturating_mul(n.saturating_pow(rank.saturating_sub(1) as u32));
        if rank > 0 && total > budgets.homs as u128 {
            return Err(Error::budget(
                format!("homomorphism enumeration into {}", self.target.descriptor),
                budgets.homs,
            ));
        }
        Ok(())
    }

    /// All generator-image tuples satisfying the relators, in lexicographic
    /// order of element indices.
    pub fn hom_tuples<'a>(
        &'a self,
        p: &'a Presentation,
        budgets: &Budgets,
    ) -> Result<impl Iterator<Item = Vec<u32>> + 'a> {
        self.check_hom_budget(p.rank(), self.order(), budgets)?;
        Ok(TupleIter::new(p.rank(), self.order(), None).filter(move |t| self.satisfies(p, t)))
    }

    /// Hom tuples with the first generator restricted to conjugacy class
    /// representatives. Every homomorphism is conjugate to one of these.
    pub fn hom_tuples_up_to_conjugacy<'a>(
        &'a self,
        p: &'a Presentation,
        budgets: &Budgets,
    ) -> Result<impl Iterator<Item = Vec<u32>> + 'a> {
        self.check_hom_budget(p.rank(), self.class_reps.len(), budgets)?;
        Ok(TupleIter::new(p.rank(), self.order(), Some(&self.class_reps))
            .filter(move |t| self.satisfies(p, t)))
    }
}

/// Odometer over `[0, n)^k`, optionally with the first coordinate drawn
/// from a fixed list.
struct TupleIter<'a> {
    k: usize,
    n: u32,
    first: Option<&'a [u32]>,
    state: Vec<u32>,
    first_pos: usize,
    done: bool,
}

impl<'a> TupleIter<'a> {
    fn new(k: usize, n: usize, first: Option<&'a [u32]>) -> Self {
        let mut state = vec![0u32; k];
        let done = n == 0 || first.is_some_and(|f| f.is_empty());
        if let (Some(f), false) = (first, done) {
            if k > 0 {
                state[0] = f[0];
            }
        }
        TupleIter {
            k,
            n: n as u32,
            first,
            state,
            first_pos: 0,
            done,
        }
    }
}

impl Iterator for TupleIter<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.state.clone();
        // advance from the last coordinate
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if i == 0 {
                if let Some(f) = self.first {
                    self.first_pos += 1;
                    if self.first_pos < f.len() {
                        self.state[0] = f[self.first_pos];
                        break;
                    }
                    self.done = true;
                    break;
                }
            }
            if self.state[i] + 1 < self.n {
                self.state[i] += 1;
                break;
            }
            self.state[i] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(s: &str) -> GroupTable {
        GroupTable::build(&TargetGroup::parse(s).unwrap(), &Budgets::default()).unwrap()
    }

    #[test]
    fn hom_counts() {
        let b = Budgets::default();
        let f1 = Presentation::free(1);
        assert_eq!(table("Sym(3)").hom_tuples(&f1, &b).unwrap().count(), 6);
        let f2 = Presentation::free(2);
        assert_eq!(table("Cyclic(2)").hom_tuples(&f2, &b).unwrap().count(), 4);
        let p = Presentation::parse("gens: a\nrels: a^2").unwrap();
        let t = table("Cyclic(4)");
        let homs: Vec<Vec<u32>> = t.hom_tuples(&p, &b).unwrap().collect();
        assert_eq!(homs, vec![vec![0], vec![2]]);
    }

    #[test]
    fn conjugacy_reps_of_sym3() {
        let t = table("Sym(3)");
        assert_eq!(t.class_reps().len(), 3);
        let a5 = table("Alt(5)");
        assert_eq!(a5.class_reps().len(), 5);
    }

    #[test]
    fn table_and_direct_multiplication_agree() {
        let g = TargetGroup::parse("Sym(4)").unwrap();
        let with = GroupTable::build(&g, &Budgets::default()).unwrap();
        let without = GroupTable::build(
            &g,
            &Budgets {
                table: 1,
                ..Budgets::default()
            },
        )
        .unwrap();
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(with.mul(a, b), without.mul(a, b));
            }
        }
    }

    #[test]
    fn tuple_iter_with_first_list() {
        let first = [1u32, 3];
        let v: Vec<Vec<u32>> = TupleIter::new(2, 2, Some(&first)).collect();
        assert_eq!(v, vec![vec![1, 0], vec![1, 1], vec![3, 0], vec![3, 1]]);
        let v: Vec<Vec<u32>> = TupleIter::new(0, 5, None).collect();
        assert_eq!(v, vec![Vec::<u32>::new()]);
    }

    #[test]
    fn hom_budget() {
        let f2 = Presentation::free(2);
        let b = Budgets {
            homs: 10,
            ..Budgets::default()
        };
        assert!(table("Sym(3)").hom_tuples(&f2, &b).is_err());
    }
}
