//! Finite-index subgroups of free groups given as kernels of maps to finite
//! groups: Schreier transversals, Reidemeister–Schreier rewriting, induced
//! matrix representations and projection to `PSL`.

use std::collections::HashMap;
use std::collections::VecDeque;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::groups::target::{gl_order, psl_order};
use crate::groups::{FiniteField, GroupElement, Homomorphism, Matrix};
use crate::words::{Alphabet, Letter, Presentation, Word};

/// Right cosets of `Γ₀ = ker h` in a free group `Γ`.
#[derive(Clone, Debug)]
pub struct CosetStructure {
    hom: Homomorphism,
    /// `transversal[i]` represents coset `i`; `transversal[0]` is empty.
    transversal: Vec<Word>,
    /// `h(transversal[i])`.
    images: Vec<GroupElement>,
    /// `action[x][i]`: the coset of `t_i · x`.
    action: Vec<Vec<usize>>,
    /// `inverse_action[x][i]`: the coset `j` with `action[x][j] = i`.
    inverse_action: Vec<Vec<usize>>,
    /// `schreier[i][x]`: index of `t_i x t_{σx(i)}⁻¹` among the nontrivial
    /// Schreier generators.
    schreier: Vec<Vec<Option<usize>>>,
    generators: Vec<Word>,
}

/// Builds the breadth-first Schreier transversal of `ker h`, exploring
/// letters in the order `a, A, b, B, …`.
pub fn coset_structure(h: &Homomorphism, budgets: &Budgets) -> Result<CosetStructure> {
    let p = h.source();
    if !p.is_free() {
        return Err(Error::UnsupportedPresentation(
            "coset structures need a free ambient group".to_string(),
        ));
    }
    let k = p.rank();
    let gens = h.images();
    let inv_gens: Vec<GroupElement> = gens.iter().map(GroupElement::inverse).collect();
    let identity = h.target().identity();
    let mut index: HashMap<GroupElement, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut transversal = vec![Word::empty()];
    let mut images = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for code in 0..2 * k {
            let l = Letter::from_code(code);
            let g = if l.is_inverse() {
                &inv_gens[l.generator()]
            } else {
                &gens[l.generator()]
            };
            let e = images[i].mul(g);
            if index.contains_key(&e) {
                continue;
            }
            if images.len() as u64 >= budgets.scan {
                return Err(Error::budget("coset enumeration", budgets.scan));
            }
            index.insert(e.clone(), images.len());
            queue.push_back(images.len());
            transversal.push(transversal[i].mul(&Word::letter(l)));
            images.push(e);
        }
    }
    let l = images.len();
    let action: Vec<Vec<usize>> = (0..k)
        .map(|x| (0..l).map(|i| index[&images[i].mul(&gens[x])]).collect())
        .collect();
    let inverse_action: Vec<Vec<usize>> = action
        .iter()
        .map(|sigma| {
            let mut inv = vec![0; l];
            for (i, &j) in sigma.iter().enumerate() {
                inv[j] = i;
            }
            inv
        })
        .collect();
    let mut generators = Vec::new();
    let mut schreier = vec![vec![None; k]; l];
    for (i, row) in schreier.iter_mut().enumerate() {
        for (x, slot) in row.iter_mut().enumerate() {
            let s = transversal[i]
                .mul(&Word::generator(x))
                .mul(&transversal[action[x][i]].inverse());
            if !s.is_empty() {
                *slot = Some(generators.len());
                generators.push(s);
            }
        }
    }
    Ok(CosetStructure {
        hom: h.clone(),
        transversal,
        images,
        action,
        inverse_action,
        schreier,
        generators,
    })
}

impl CosetStructure {
    pub fn ambient(&self) -> &Presentation {
        self.hom.source()
    }

    pub fn hom(&self) -> &Homomorphism {
        &self.hom
    }

    /// `ℓ = [Γ : Γ₀]`.
    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    /// Images of the transversal, i.e. the elements of `h(Γ)`.
    pub fn image_elements(&self) -> &[GroupElement] {
        &self.images
    }

    /// Coset permutation of generator `x`.
    pub fn action(&self, x: usize) -> &[usize] {
        &self.action[x]
    }

    /// Coset reached from coset 0 by reading `w`.
    pub fn coset_of(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |c, l| {
            if l.is_inverse() {
                self.inverse_action[l.generator()][c]
            } else {
                self.action[l.generator()][c]
            }
        })
    }

    /// Names `s1, s2, …` for the Schreier generators.
    pub fn schreier_alphabet(&self) -> Alphabet {
        Alphabet::new((1..=self.generators.len()).map(|i| format!("s{i}")))
            .expect("distinct generated names")
    }
}

/// Nontrivial Schreier generators `t_i·x·t_{σx(i)}⁻¹`, ordered by coset and
/// then generator. There are `1 + ℓ(k−1)` of them for `k ≥ 1`.
pub fn schreier_generators(cs: &CosetStructure) -> &[Word] {
    &cs.generators
}

/// Reidemeister–Schreier rewriting of `w ∈ Γ₀` as a word in the Schreier
/// generators.
pub fn rewrite(cs: &CosetStructure, w: &Word) -> Result<Word> {
    cs.ambient().alphabet().check(w)?;
    let mut coset = 0;
    let mut out = Vec::new();
    for l in w.letters() {
        let x = l.generator();
        if l.is_inverse() {
            let j = cs.inverse_action[x][coset];
            if let Some(s) = cs.schreier[j][x] {
                out.push(Letter::new(s, true));
            }
            coset = j;
        } else {
            if let Some(s) = cs.schreier[coset][x] {
                out.push(Letter::new(s, false));
            }
            coset = cs.action[x][coset];
        }
    }
    if coset != 0 {
        return Err(Error::Membership(format!(
            "{} maps to a nontrivial element of {}",
            cs.ambient().alphabet().render(w),
            cs.hom.target().descriptor
        )));
    }
    Ok(Word::from_letters(out))
}

/// `Ind_{Γ₀}^{Γ}` of a representation of `Γ₀` given on its Schreier
/// generators.
#[derive(Clone, Debug)]
pub struct InducedRep {
    cs: CosetStructure,
    field: FiniteField,
    n: usize,
    base: Vec<Matrix>,
    images: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

pub fn induce(cs: &CosetStructure, base: Vec<Matrix>) -> Result<InducedRep> {
    if base.len() != cs.generators.len() {
        return Err(Error::input(format!(
            "{} base images given for {} Schreier generators",
            base.len(),
            cs.generators.len()
        )));
    }
    let Some(first) = base.first() else {
        return Err(Error::input("a base representation needs at least one generator"));
    };
    let field = first.field().clone();
    let n = first.dim();
    for m in &base {
        if m.field() != &field {
            return Err(Error::FieldMismatch(format!(
                "base images over F_{} and F_{}",
                field.q(),
                m.field().q()
            )));
        }
        if m.dim() != n {
            return Err(Error::input("base images have different dimensions"));
        }
        if !m.is_invertible() {
            return Err(Error::input(format!("base image {} is singular", m.to_text())));
        }
    }
    let l = cs.index();
    let identity = Matrix::identity(&field, n);
    let images: Vec<Matrix> = (0..cs.ambient().rank())
        .map(|x| {
            let rows: Vec<Vec<Option<Matrix>>> = (0..l)
                .into_par_iter()
                .map(|i| {
                    let mut row = vec![None; l];
                    let block = cs.schreier[i][x].map_or_else(|| identity.clone(), |s| base[s].clone());
                    row[cs.action[x][i]] = Some(block);
                    row
                })
                .collect();
            Matrix::from_blocks(&field, n, &rows)
        })
        .collect();
    let inverses = images
        .iter()
        .map(|m| m.inverse().expect("block monomial matrix with invertible blocks"))
        .collect();
    Ok(InducedRep {
        cs: cs.clone(),
        field,
        n,
        base,
        images,
        inverses,
    })
}

impl InducedRep {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Dimension `n` of the base representation.
    pub fn base_dim(&self) -> usize {
        self.n
    }

    /// Dimension `nℓ` of the induced representation.
    pub fn dim(&self) -> usize {
        self.n * self.cs.index()
    }

    pub fn generator_images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn evaluate(&self, w: &Word) -> Matrix {
        w.letters()
            .iter()
            .fold(Matrix::identity(&self.field, self.dim()), |acc, l| {
                let m = if l.is_inverse() {
                    &self.inverses[l.generator()]
                } else {
                    &self.images[l.generator()]
                };
                acc.mul(m)
            })
    }

    /// The base representation evaluated on a word in the Schreier generators.
    pub fn evaluate_base(&self, s: &Word) -> Matrix {
        s.letters()
            .iter()
            .fold(Matrix::identity(&self.field, self.n), |acc, l| {
                let m = &self.base[l.generator()];
                acc.mul(&if l.is_inverse() {
                    m.inverse().expect("checked invertible")
                } else {
                    m.clone()
                })
            })
    }

    /// The `(i, j)` block of `φ′(w)`.
    pub fn block(&self, w: &Word, i: usize, j: usize) -> Matrix {
        self.evaluate(w).block(self.n, i, j)
    }
}

/// Image of a determinant-one matrix in `PSL(n,q)` with the order bookkeeping
/// `|PSL(n,q)| ≤ q^{n²}`.
#[derive(Clone, Debug, Serialize)]
pub struct PslProjection {
    #[serde(skip)]
    pub class: GroupElement,
    pub n: usize,
    pub q: u64,
    /// Whether the matrix is scalar, i.e. the class is the identity.
    pub is_identity: bool,
    #[serde(serialize_with = "ser_big")]
    pub psl_order: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub bound: BigUint,
    pub bound_holds: bool,
}

fn ser_big<S: serde::Serializer>(b: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(b)
}

pub fn psl_project(m: &Matrix) -> Result<PslProjection> {
    let field = m.field();
    if m.det() != field.one() {
        return Err(Error::input(format!("{} does not have determinant 1", m.to_text())));
    }
    let n = m.dim();
    let q = field.q() as u64;
    let psl = psl_order(n as u32, q);
    let bound = BigUint::from(q).pow((n * n) as u32);
    Ok(PslProjection {
        class: GroupElement::projective(m),
        n,
        q,
        is_identity: m.is_scalar(),
        bound_holds: psl <= bound,
        psl_order: psl,
        bound,
    })
}

/// `|GL(nℓ,q)|` against `|GL(n,q)|^{2ℓ²}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeBound {
    pub n: u32,
    pub l: u32,
    pub q: u64,
    #[serde(serialize_with = "ser_big")]
    pub induced_order: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub bound: BigUint,
    pub holds: bool,
}

pub fn induced_size_bound(n: u32, l: u32, q: u64) -> SizeBound {
    let induced_order = gl_order(n * l, q);
    let bound = gl_order(n, q).pow(2 * l * l);
    SizeBound {
        n,
        l,
        q,
        holds: induced_order <= bound,
        induced_order,
        bound,
    }
}

/// The size bound for `1 ≤ n ≤ 4`, `2 ≤ ℓ ≤ 3`, `q ∈ {2,3,5}`. Rows with
/// `n = 1` are included for reporting; the bound is only claimed for `n ≥ 2`.
pub fn size_bound_grid() -> Vec<SizeBound> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for l in 2..=3 {
            for q in [2, 3, 5] {
                out.push(induced_size_bound(n, l, q));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::TargetGroup;

    fn index_two() -> CosetStructure {
        let p = Presentation::free(2);
        let c2 = TargetGroup::parse("Cyclic(2)").unwrap();
        let imgs = vec![
            GroupElement::Cyclic { modulus: 2, value: 1 },
            GroupElement::Cyclic { modulus: 2, value: 0 },
        ];
        let h = Homomorphism::new(p, c2, imgs).unwrap();
        coset_structure(&h, &Budgets::default()).unwrap()
    }

    fn w(s: &str) -> Word {
        Alphabet::standard(2).parse_word(s).unwrap()
    }

    #[test]
    fn index_two_structure() {
        let cs = index_two();
        assert_eq!(cs.index(), 2);
        assert_eq!(cs.transversal(), [Word::empty(), w("a")]);
        assert_eq!(schreier_generators(&cs), [w("b"), w("a^2"), w("aba^-1")]);
    }

    #[test]
    fn sym3_structure_rank() {
        let p = Presentation::free(2);
        let s3 = TargetGroup::parse("Sym(3)").unwrap();
        let imgs = ["(1,2)", "(1,2,3)"]
            .iter()
            .map(|s| GroupElement::Perm(crate::groups::Permutation::parse(3, s).unwrap()))
            .collect();
        let h = Homomorphism::new(p, s3, imgs).unwrap();
        let cs = coset_structure(&h, &Budgets::default()).unwrap();
        assert_eq!(cs.index(), 6);
        assert_eq!(schreier_generators(&cs).len(), 7);
    }

    #[test]
    fn trivial_hom_gives_original_generators() {
        let p = Presentation::free(2);
        let c2 = TargetGroup::parse("Cyclic(2)").unwrap();
        let zero = GroupElement::Cyclic { modulus: 2, value: 0 };
        let h = Homomorphism::new(p, c2, vec![zero.clone(), zero]).unwrap();
        let cs = coset_structure(&h, &Budgets::default()).unwrap();
        assert_eq!(cs.index(), 1);
        assert_eq!(schreier_generators(&cs), [w("a"), w("b")]);
    }

    #[test]
    fn rewriting() {
        let cs = index_two();
        let s = Word::generator;
        assert_eq!(rewrite(&cs, &w("a^2")).unwrap(), s(1));
        assert_eq!(rewrite(&cs, &w("aba^-1b")).unwrap(), s(2).mul(&s(0)));
        assert!(matches!(rewrite(&cs, &w("a")), Err(Error::Membership(_))));
        let gens = schreier_generators(&cs).to_vec();
        for g in ["a^2b", "AbAbaa", "bbAAB"] {
            let r = rewrite(&cs, &w(g)).unwrap();
            assert_eq!(r.substitute(&gens).unwrap(), w(g));
        }
    }

    #[test]
    fn induced_index_two() {
        let cs = index_two();
        let f3 = FiniteField::new(3).unwrap();
        let base = [1, 2, 1].map(|c| Matrix::scalar(&f3, 1, c)).to_vec();
        let rep = induce(&cs, base).unwrap();
        assert_eq!(rep.dim(), 2);
        assert_eq!(rep.evaluate(&w("a")).to_text(), "[[0,1],[2,0]]");
        assert_eq!(rep.evaluate(&w("a^2")), Matrix::scalar(&f3, 2, 2));
        assert_eq!(rep.evaluate(&w("b")), Matrix::identity(&f3, 2));
    }

    #[test]
    fn induce_rejects_bad_bases() {
        let cs = index_two();
        let f3 = FiniteField::new(3).unwrap();
        let f5 = FiniteField::new(5).unwrap();
        let one = |f: &FiniteField| Matrix::identity(f, 1);
        assert!(induce(&cs, vec![one(&f3), one(&f3)]).is_err());
        assert!(matches!(
            induce(&cs, vec![one(&f3), one(&f5), one(&f3)]),
            Err(Error::FieldMismatch(_))
        ));
        assert!(induce(&cs, vec![one(&f3), Matrix::scalar(&f3, 1, 0), one(&f3)]).is_err());
    }

    #[test]
    fn psl_projection() {
        let f3 = FiniteField::new(3).unwrap();
        let two = psl_project(&Matrix::scalar(&f3, 2, 2)).unwrap();
        assert!(two.is_identity && two.class.is_identity());
        let u = psl_project(&Matrix::new(&f3, 2, vec![1, 1, 0, 1]).unwrap()).unwrap();
        assert!(!u.is_identity && !u.class.is_identity());
        assert_eq!(u.psl_order, BigUint::from(12u32));
        assert_eq!(u.bound, BigUint::from(81u32));
        assert!(u.bound_holds);
        assert!(psl_project(&Matrix::scalar(&f3, 1, 2)).is_err());
    }

    #[test]
    fn size_bounds() {
        let b = induced_size_bound(2, 2, 3);
        assert_eq!(b.induced_order, BigUint::from(24261120u32));
        assert_eq!(b.bound, BigUint::from(48u32).pow(8));
        assert!(b.holds);
        let grid = size_bound_grid();
        assert!(grid.iter().filter(|b| b.n >= 2).all(|b| b.holds));
        let failing: Vec<(u32, u64)> = grid.iter().filter(|b| !b.holds).map(|b| (b.l, b.q)).collect();
        assert_eq!(failing, [(2, 2), (3, 2)]);
    }
}
