use rayon::prelude::*;
use serde::Serialize;

use super::{Letter, Presentation, Word};
use crate::config::Budgets;
use crate::error::{Error, Result};

/// Distinct nontrivial elements of word length at most `radius`, each given
/// by its shortlex-least spelling, listed in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ball {
    pub radius: usize,
    pub elements: Vec<Word>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements of length at most `m` (a prefix, by the shortlex order).
    pub fn within(&self, m: usize) -> &[Word] {
        let end = self.elements.partition_point(|w| w.len() <= m);
        &self.elements[..end]
    }
}

/// `Σ_{ℓ=1..m} 2k(2k−1)^{ℓ−1}`: nontrivial reduced words of length ≤ m.
pub fn free_ball_size(rank: usize, m: usize) -> u128 {
    if rank == 0 {
        return 0;
    }
    let k = rank as u128;
    let mut total: u128 = 0;
    let mut layer = 2 * k;
    for _ in 0..m {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(2 * k - 1);
    }
    total
}

pub fn ball(p: &Presentation, m: usize) -> Result<Ball> {
    ball_with_budget(p, m, &Budgets::default())
}

/// Enumerates reduced words in shortlex order and keeps the first spelling
/// of each element. For non-free presentations, duplicates are detected
/// with pairwise word-problem checks `u·v⁻¹ = 1`.
pub fn ball_with_budget(p: &Presentation, m: usize, budgets: &Budgets) -> Result<Ball> {
    if !p.supports_word_problem() {
        return Err(Error::UnsupportedPresentation(
            "ball enumeration needs a solvable word problem".to_string(),
        ));
    }
    let candidates = free_ball_size(p.rank(), m);
    if candidates > budgets.ball as u128 {
        return Err(Error::budget(
            format!("ball of radius {m} ({candidates} candidate words)"),
            budgets.ball,
        ));
    }
    let letters: Vec<Letter> = (0..2 * p.rank()).map(Letter::from_code).collect();
    let mut elements: Vec<Word> = Vec::new();
    let mut layer: Vec<Word> = vec![Word::empty()];
    for _ in 1..=m {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &l in &letters {
                if w.letters().last() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = w.letters().to_vec();
                v.push(l);
                next.push(Word::from_letters(v));
            }
        }
        for w in &next {
            if p.is_free() {
                elements.push(w.clone());
                continue;
            }
            if p.is_trivial(w)? {
                continue;
            }
            let inv = w.inverse();
            let duplicate = elements
                .par_iter()
                .any(|u| p.is_trivial(&u.mul(&inv)).unwrap_or(false));
            if !duplicate {
                elements.push(w.clone());
            }
        }
        layer = next;
    }
    Ok(Ball { radius: m, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_rank_two_counts() {
        let p = Presentation::free(2);
        assert_eq!(ball(&p, 1).unwrap().len(), 4);
        assert_eq!(ball(&p, 2).unwrap().len(), 16);
        assert_eq!(ball(&p, 3).unwrap().len(), 52);
        assert_eq!(free_ball_size(2, 3), 52);
    }

    #[test]
    fn genus_two_radius_two() {
        let p = Presentation::surface(2).unwrap();
        let b = ball(&p, 2).unwrap();
        // 8 + 8·7 reduced words, none identified by a relator of length 8
        assert_eq!(b.len(), 64);
    }

    #[test]
    fn ordering_is_shortlex() {
        let p = Presentation::free(2);
        let b = ball(&p, 2).unwrap();
        assert!(b.elements.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b.within(1).len(), 4);
    }

    #[test]
    fn budget_is_enforced() {
        let p = Presentation::free(2);
        let budgets = Budgets {
            ball: 10,
            ..Budgets::default()
        };
        let err = ball_with_budget(&p, 3, &budgets).unwrap_err();
        assert!(matches!(err, Error::Budget { budget: 10, .. }));
    }

    #[test]
    fn torsion_presentations_are_rejected() {
        let p = Presentation::parse("gens: a\nrels: a^2").unwrap();
        assert!(matches!(
            ball(&p, 2),
            Err(Error::UnsupportedPresentation(_))
        ));
    }
}
