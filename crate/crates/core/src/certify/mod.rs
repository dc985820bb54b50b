//! Common multiples with checkable witnesses.
//!
//! A common multiple of a finite set `T` is a nontrivial element lying in
//! the normal closure of every `γ ∈ T`. Any homomorphism that does not kill
//! it does not kill any element of `T`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::Homomorphism;
use crate::words::{Alphabet, Presentation, Word};

/// A product `∏ cᵢ⁻¹ · base^{sᵢ} · cᵢ` of conjugates of `base^{±1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugateProduct {
    pub base: Word,
    pub factors: Vec<(Word, i8)>,
}

impl ConjugateProduct {
    pub fn single(base: Word) -> Self {
        ConjugateProduct {
            base,
            factors: vec![(Word::empty(), 1)],
        }
    }

    /// The freely reduced product the factors spell out.
    pub fn evaluate(&self) -> Word {
        let pos = &self.base;
        let neg = self.base.inverse();
        let letters: Vec<_> = self
            .factors
            .iter()
            .flat_map(|(c, s)| {
                let b = if *s > 0 { pos } else { &neg };
                c.inverse()
                    .letters()
                    .iter()
                    .chain(b.letters())
                    .chain(c.letters())
                    .copied()
                    .collect::<Vec<_>>()
            })
            .collect();
        Word::from_letters(letters)
    }

    /// The inverse product: factors reversed with signs flipped.
    fn inverse(&self) -> ConjugateProduct {
        ConjugateProduct {
            base: self.base.clone(),
            factors: self.factors.iter().rev().map(|(c, s)| (c.clone(), -s)).collect(),
        }
    }

    /// Conjugate of the whole product by `g`: every conjugator `c` becomes `c·g`.
    fn conjugated(&self, g: &Word) -> ConjugateProduct {
        ConjugateProduct {
            base: self.base.clone(),
            factors: self.factors.iter().map(|(c, s)| (c.mul(g), *s)).collect(),
        }
    }

    fn then(mut self, other: ConjugateProduct) -> ConjugateProduct {
        self.factors.extend(other.factors);
        self
    }

    /// Factors as `(w)^(c)`, where `w` is the base or its inverse.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let (b, b_inv) = (alphabet.render(&self.base), alphabet.render(&self.base.inverse()));
        self.factors
            .iter()
            .map(|(c, s)| {
                let w = if *s > 0 { &b } else { &b_inv };
                if c.is_empty() {
                    format!("({w})")
                } else {
                    format!("({w})^({})", alphabet.render(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A nontrivial word with one witness per element of `T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommonMultiple {
    pub word: Word,
    pub t_set: Vec<Word>,
    pub witnesses: Vec<ConjugateProduct>,
    /// Conjugators chosen at each recursion level, in pairing order.
    pub conjugators: Vec<Vec<Word>>,
}

impl CommonMultiple {
    /// Longest conjugator used anywhere in the construction.
    pub fn radius(&self) -> usize {
        self.conjugators.iter().flatten().map(Word::len).max().unwrap_or(0)
    }
}

/// Outcome of [`verify_witness`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WitnessCheck {
    Valid,
    Invalid { index: usize, reason: String },
}

impl WitnessCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, WitnessCheck::Valid)
    }
}

fn ensure_nontrivial(p: &Presentation, w: &Word, what: &str) -> Result<()> {
    if p.is_trivial(w)? {
        return Err(Error::input(format!("{what} is trivial")));
    }
    Ok(())
}

/// All freely reduced words of length exactly `len`, in shortlex order.
fn words_of_length(rank: usize, len: usize) -> Vec<Word> {
    let mut layer = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * 2 * rank);
        for w in &layer {
            for code in 0..2 * rank {
                let l = crate::words::Letter::from_code(code);
                if w.letters().last() == Some(&l.inverse()) {
                    continue;
                }
                let mut letters = w.letters().to_vec();
                letters.push(l);
                next.push(Word::from_letters(letters));
            }
        }
        layer = next;
    }
    layer
}

/// Shortlex-least `μ` with `‖μ‖ ≤ k_max` and `[μ⁻¹γμ, η] ≠ 1`.
pub fn find_conjugator(gamma: &Word, eta: &Word, k_max: usize, p: &Presentation) -> Result<Word> {
    p.alphabet().check(gamma)?;
    p.alphabet().check(eta)?;
    ensure_nontrivial(p, gamma, "gamma")?;
    ensure_nontrivial(p, eta, "eta")?;
    for len in 0..=k_max {
        for mu in words_of_length(p.rank(), len) {
            let c = Word::commutator(&gamma.conjugate_by(&mu), eta);
            if !p.is_trivial(&c)? {
                return Ok(mu);
            }
        }
    }
    Err(Error::SearchExhausted { radius: k_max })
}

/// Builds a common multiple of `t` by pairing elements and taking
/// commutators `[μ⁻¹xμ, y]` level by level. `t` is padded to a power of two
/// by repeating its last element.
pub fn common_multiple(t: &[Word], k_max: usize, p: &Presentation) -> Result<CommonMultiple> {
    if t.is_empty() {
        return Err(Error::input("common multiple of an empty set"));
    }
    for (i, g) in t.iter().enumerate() {
        p.alphabet().check(g)?;
        ensure_nontrivial(p, g, &format!("element {i} of T"))?;
    }
    let size = t.len().next_power_of_two();
    let mut level: Vec<Word> = (0..size).map(|i| t[i.min(t.len() - 1)].clone()).collect();
    // witness of each original element inside the current node containing it
    let mut wit: Vec<ConjugateProduct> = t.iter().cloned().map(ConjugateProduct::single).collect();
    let node_of = |orig: usize, depth: u32| orig >> depth;
    let mut conjugators = Vec::new();
    let mut depth = 0u32;
    while level.len() > 1 {
        let pairs: Vec<(Word, Word, Word)> = level
            .par_chunks(2)
            .map(|pair| {
                let (x, y) = (&pair[0], &pair[1]);
                let mu = find_conjugator(x, y, k_max, p)?;
                let g = x.conjugate_by(&mu);
                Ok((Word::commutator(&g, y), mu, g))
            })
            .collect::<Result<_>>()?;
        let (next, mus): (Vec<Word>, Vec<(Word, Word)>) =
            pairs.into_iter().map(|(c, mu, g)| (c, (mu, g))).unzip();
        for (orig, w) in wit.iter_mut().enumerate() {
            let node = node_of(orig, depth);
            let (mu, g) = &mus[node / 2];
            let y = &level[node | 1];
            *w = if node % 2 == 0 {
                // [μ⁻¹xμ, y] = (μ⁻¹x⁻¹μ) · ((μy)⁻¹ x (μy))
                w.inverse().conjugated(mu).then(w.conjugated(&mu.mul(y)))
            } else {
                // [g, y] = (g⁻¹y⁻¹g) · y
                w.inverse().conjugated(g).then(w.clone())
            };
        }
        conjugators.push(mus.into_iter().map(|(mu, _)| mu).collect());
        level = next;
        depth += 1;
    }
    let word = level.pop().unwrap();
    Ok(CommonMultiple {
        word,
        t_set: t.to_vec(),
        witnesses: wit,
        conjugators,
    })
}

/// Checks every witness by free reduction.
pub fn verify_witness(cm: &CommonMultiple) -> WitnessCheck {
    if cm.witnesses.len() != cm.t_set.len() {
        return WitnessCheck::Invalid {
            index: cm.witnesses.len().min(cm.t_set.len()),
            reason: "witness count differs from |T|".into(),
        };
    }
    for (i, (w, g)) in cm.witnesses.iter().zip(&cm.t_set).enumerate() {
        if &w.base != g {
            return WitnessCheck::Invalid {
                index: i,
                reason: "witness base differs from the element".into(),
            };
        }
        if w.evaluate() != cm.word {
            return WitnessCheck::Invalid {
                index: i,
                reason: "witness does not reduce to the common multiple".into(),
            };
        }
    }
    WitnessCheck::Valid
}

/// Result of evaluating a certificate under a homomorphism.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum TransferOutcome {
    /// The common multiple survives and so does every element of `T`.
    Pass,
    /// The common multiple is killed; nothing is implied.
    Vacuous,
    /// The common multiple survives but element `index` of `T` is killed.
    Counterexample { index: usize },
}

pub fn certificate_transfer_check(cm: &CommonMultiple, h: &Homomorphism) -> TransferOutcome {
    if !h.detects(&cm.word) {
        return TransferOutcome::Vacuous;
    }
    match cm.t_set.iter().position(|g| !h.detects(g)) {
        Some(index) => TransferOutcome::Counterexample { index },
        None => TransferOutcome::Pass,
    }
}

/// The set `{[μ₀⁻¹γμ₀, γ₀], γ₀², …, γ₀^j}` whose common multiples force
/// large element orders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TjSet {
    pub gamma: Word,
    pub gamma0: Word,
    pub mu0: Word,
    pub j: usize,
    pub elements: Vec<Word>,
}

pub fn build_tj(gamma: &Word, gamma0: &Word, j: usize, k_max: usize, p: &Presentation) -> Result<TjSet> {
    if j < 2 {
        return Err(Error::input(format!("j must be at least 2, got {j}")));
    }
    let mu0 = find_conjugator(gamma, gamma0, k_max, p)?;
    let mut elements = vec![Word::commutator(&gamma.conjugate_by(&mu0), gamma0)];
    for i in 2..=j {
        let w = gamma0.pow(i as i64);
        if p.is_trivial(&w)? {
            return Err(Error::input(format!("gamma0^{i} is trivial; gamma0 must have infinite order")));
        }
        elements.push(w);
    }
    Ok(TjSet {
        gamma: gamma.clone(),
        gamma0: gamma0.clone(),
        mu0,
        j,
        elements,
    })
}

/// Length audit of a constructed common multiple against `C₀·d·t²` with
/// `C₀ = 8(K+1)`, where `K` is the longest conjugator the construction used.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct LcmAudit {
    /// Longest element of `T`.
    pub d: usize,
    pub t: usize,
    pub length: usize,
    /// `length / (d·t²)`.
    pub fitted_constant: f64,
    pub k: usize,
    pub bound: u64,
}

pub fn lcm_length_audit(t: &[Word], cm: &CommonMultiple) -> Result<LcmAudit> {
    let k_max = cm.radius();
    let d = t.iter().map(Word::len).max().unwrap_or(0);
    let n = t.len();
    let scale = (d * n * n) as u64;
    let bound = 8 * (k_max as u64 + 1) * scale;
    let length = cm.word.len();
    if length as u64 > bound {
        return Err(Error::ConstantViolation { length, bound });
    }
    Ok(LcmAudit {
        d,
        t: n,
        length,
        fitted_constant: if scale == 0 { 0.0 } else { length as f64 / scale as f64 },
        k: k_max,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupElement, Permutation, TargetGroup};

    fn f2() -> Presentation {
        Presentation::free(2)
    }

    fn w(s: &str) -> Word {
        f2().alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn conjugator_examples() {
        let p = f2();
        assert_eq!(find_conjugator(&w("a"), &w("b"), 2, &p).unwrap(), Word::empty());
        assert_eq!(find_conjugator(&w("a"), &w("a"), 2, &p).unwrap(), w("b"));
        assert_eq!(find_conjugator(&w("ab"), &w("ab"), 2, &p).unwrap(), w("a"));
        let z = Presentation::free(1);
        let a = z.alphabet().parse_word("a").unwrap();
        assert!(matches!(
            find_conjugator(&a, &a, 3, &z),
            Err(Error::SearchExhausted { radius: 3 })
        ));
        assert!(find_conjugator(&Word::empty(), &a, 3, &z).is_err());
    }

    #[test]
    fn singleton() {
        let cm = common_multiple(&[w("a")], 2, &f2()).unwrap();
        assert_eq!(cm.word, w("a"));
        assert_eq!(cm.witnesses[0].factors, vec![(Word::empty(), 1)]);
        assert!(verify_witness(&cm).is_valid());
    }

    #[test]
    fn pair_is_the_commutator() {
        let cm = common_multiple(&[w("a"), w("b")], 2, &f2()).unwrap();
        assert_eq!(cm.word, w("ABab"));
        assert!(verify_witness(&cm).is_valid());
        assert_eq!(cm.witnesses[0].factors, vec![(Word::empty(), -1), (w("b"), 1)]);
        assert_eq!(cm.witnesses[1].factors, vec![(w("a"), -1), (Word::empty(), 1)]);
    }

    #[test]
    fn four_elements() {
        let t = [w("a"), w("b"), w("ab"), w("ba")];
        let cm = common_multiple(&t, 2, &f2()).unwrap();
        assert!(!cm.word.is_empty());
        assert!(verify_witness(&cm).is_valid());
        let audit = lcm_length_audit(&t, &cm).unwrap();
        assert!(audit.bound <= 8 * 3 * 2 * 16);
    }

    #[test]
    fn padding_odd_sizes() {
        let t = [w("a"), w("b"), w("aB")];
        let cm = common_multiple(&t, 2, &f2()).unwrap();
        assert_eq!(cm.witnesses.len(), 3);
        assert!(verify_witness(&cm).is_valid());
    }

    #[test]
    fn tampering_is_detected() {
        let mut cm = common_multiple(&[w("a"), w("b")], 2, &f2()).unwrap();
        cm.witnesses[1].factors[0].0 = w("b");
        assert!(matches!(verify_witness(&cm), WitnessCheck::Invalid { index: 1, .. }));
        let empty = CommonMultiple {
            word: w("a"),
            t_set: vec![w("a")],
            witnesses: vec![ConjugateProduct {
                base: w("a"),
                factors: vec![],
            }],
            conjugators: vec![],
        };
        assert!(!verify_witness(&empty).is_valid());
    }

    #[test]
    fn transfer_examples() {
        let cm = common_multiple(&[w("a"), w("b")], 2, &f2()).unwrap();
        let a5 = TargetGroup::parse("Alt(5)").unwrap();
        let perm = |s: &str| GroupElement::Perm(Permutation::parse(5, s).unwrap());
        let h = Homomorphism::new(f2(), a5.clone(), vec![perm("(1,2,3)"), perm("(3,4,5)")]).unwrap();
        assert_eq!(certificate_transfer_check(&cm, &h), TransferOutcome::Pass);
        let h = Homomorphism::new(f2(), a5, vec![perm("()"), perm("(3,4,5)")]).unwrap();
        assert_eq!(certificate_transfer_check(&cm, &h), TransferOutcome::Vacuous);
    }

    #[test]
    fn tj_examples() {
        let p = f2();
        let t2 = build_tj(&w("a"), &w("b"), 2, 2, &p).unwrap();
        assert_eq!(t2.mu0, Word::empty());
        assert_eq!(t2.elements, vec![w("ABab"), w("bb")]);
        let t3 = build_tj(&w("a"), &w("ab"), 3, 2, &p).unwrap();
        assert_eq!(t3.elements, vec![w("ABab"), w("abab"), w("ababab")]);
        assert!(build_tj(&w("a"), &w("b"), 1, 2, &p).is_err());
    }

    #[test]
    fn audit_small_sets() {
        let p = f2();
        let cm = common_multiple(&[w("a"), w("b")], 1, &p).unwrap();
        let a = lcm_length_audit(&[w("a"), w("b")], &cm).unwrap();
        assert_eq!((a.d, a.t, a.length, a.k, a.bound), (1, 2, 4, 0, 32));
        let cm = common_multiple(&[w("a")], 1, &p).unwrap();
        assert_eq!(lcm_length_audit(&[w("a")], &cm).unwrap().length, 1);
    }
}
