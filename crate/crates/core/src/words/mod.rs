//! Free words over a finite symmetric alphabet, group presentations and a
//! desk-scale word problem.
//!
//! Words are always stored freely reduced. Letters are ordered
//! `a < a⁻¹ < b < b⁻¹ < …`, and words are compared shortlex (length first,
//! then lexicographically), which is the order used for canonical
//! representatives throughout the crate.

mod ball;
mod parse;
mod presentation;
mod small_cancellation;

pub use ball::{ball, ball_with_budget, free_ball_size, Ball};
pub use presentation::Presentation;
pub use small_cancellation::{check_small_cancellation, Piece, ScCertificate, ScViolation};

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator or its formal inverse, encoded as `2 * generator + inverse`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Position in the letter order `a, a⁻¹, b, b⁻¹, …`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "x{}^-1", self.generator())
        } else {
            write!(f, "x{}", self.generator())
        }
    }
}

/// A freely reduced word. Its length is the word norm of the element it
/// spells in the free group.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn generator(g: usize) -> Self {
        Word::letter(Letter::new(g, false))
    }

    /// Free reduction with a stack; the result is the unique reduced form.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used plus one (0 for the empty word).
    pub fn rank_used(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.generator() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::empty();
        for _ in 0..exponent.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// In-place `self · other`, freely reduced at the seam.
    pub fn append(&mut self, other: &Word) {
        for &l in &other.letters {
            if self.letters.last() == Some(&l.inverse()) {
                self.letters.pop();
            } else {
                self.letters.push(l);
            }
        }
    }

    /// `μ⁻¹ · self · μ`.
    pub fn conjugate_by(&self, mu: &Word) -> Word {
        mu.inverse().mul(self).mul(mu)
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`, freely reduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// Strips matching first/last letter pairs; the result is conjugate to
    /// `self` in the free group.
    pub fn cyclically_reduce(&self) -> Word {
        let l = &self.letters;
        let mut start = 0;
        let mut end = l.len();
        while end - start >= 2 && l[start] == l[end - 1].inverse() {
            start += 1;
            end -= 1;
        }
        Word {
            letters: l[start..end].to_vec(),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) if self.letters.len() > 1 => *a != b.inverse(),
            _ => true,
        }
    }

    /// Exponent sum of each of the first `rank` generators.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank.max(self.rank_used())];
        for l in &self.letters {
            sums[l.generator()] += if l.is_inverse() { -1 } else { 1 };
        }
        sums
    }

    /// Replaces each generator `g` by `images[g]` and reduces.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let mut letters = Vec::new();
        for l in &self.letters {
            let img = images.get(l.generator()).ok_or_else(|| {
                Error::input(format!("no image for generator {}", l.generator()))
            })?;
            if l.is_inverse() {
                letters.extend(img.inverse().letters);
            } else {
                letters.extend(img.letters.iter().copied());
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// True iff `self` and `other` commute in the free group.
    pub fn commutes_freely(&self, other: &Word) -> bool {
        self.mul(other) == other.mul(self)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "Word(1)");
        }
        write!(f, "Word(")?;
        for l in &self.letters {
            let name = (b'a' + (l.generator() % 26) as u8) as char;
            let name = if l.is_inverse() {
                name.to_ascii_uppercase()
            } else {
                name
            };
            write!(f, "{name}")?;
        }
        write!(f, ")")
    }
}

/// An ordered list of generator names. Each name is a lowercase ASCII
/// letter optionally followed by digits; its formal inverse is written with
/// the letter uppercased, or with a `^-1` suffix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::input("alphabet must be nonempty"));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::input(format!(
                    "invalid generator name {n:?}: expected a lowercase letter followed by digits"
                )));
            }
            if names[..i].contains(n) {
                return Err(Error::input(format!("duplicate generator {n:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    /// `a, b, c, …` for up to 26 generators, then `x1, x2, …`.
    pub fn standard(rank: usize) -> Self {
        let names = if rank <= 26 {
            (0..rank)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect()
        } else {
            (1..=rank).map(|i| format!("x{i}")).collect()
        };
        Alphabet { names }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Resolves one symbol (`a`, `A`, `a^-1`) to a letter.
    pub fn symbol(&self, symbol: &str) -> Result<Letter> {
        let (base, inverse) = match symbol.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (symbol, false),
        };
        if let Some(g) = self.index_of(base) {
            return Ok(Letter::new(g, inverse));
        }
        let mut chars = base.chars();
        if let Some(c) = chars.next() {
            if c.is_ascii_uppercase() {
                let lowered: String = std::iter::once(c.to_ascii_lowercase())
                    .chain(chars)
                    .collect();
                if let Some(g) = self.index_of(&lowered) {
                    return Ok(Letter::new(g, !inverse));
                }
            }
        }
        Err(Error::input(format!("unknown symbol {symbol:?}")))
    }

    /// Freely reduces a sequence of symbols.
    pub fn reduce_symbols<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Word> {
        let letters = symbols
            .iter()
            .map(|s| self.symbol(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::from_letters(letters))
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        if w.rank_used() > self.rank() {
            return Err(Error::input(format!(
                "word uses generator {} outside alphabet of rank {}",
                w.rank_used() - 1,
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn render_letter(&self, l: Letter) -> String {
        let name = &self.names[l.generator()];
        if l.is_inverse() {
            let mut s = name.clone();
            s[..1].make_ascii_uppercase();
            s
        } else {
            name.clone()
        }
    }

    /// Renders a word with uppercase inverses; `1` for the empty word.
    /// Multi-character names are separated by `*` so the text parses back.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let sep = if self.names.iter().all(|n| n.len() == 1) {
            ""
        } else {
            "*"
        };
        w.letters()
            .iter()
            .map(|&l| self.render_letter(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse::parse_word(self, text)
    }
}

fn valid_name(n: &str) -> bool {
    let mut chars = n.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::standard(2)
    }

    #[test]
    fn cancellation() {
        let w = ab().reduce_symbols(&["a", "a^-1"]).unwrap();
        assert!(w.is_empty());
        let w = ab().reduce_symbols(&["a", "b", "B", "a"]).unwrap();
        assert_eq!(ab().render(&w), "aa");
    }

    #[test]
    fn unknown_symbol_is_input_error() {
        let err = ab().reduce_symbols(&["a", "z"]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn commutator_examples() {
        let a = Word::generator(0);
        let b = Word::generator(1);
        assert!(Word::commutator(&a, &a).is_empty());
        let c = Word::commutator(&a, &b);
        assert_eq!(ab().render(&c), "ABab");
        // [b⁻¹ab, a] worked by hand: (b⁻¹a⁻¹b)(a⁻¹)(b⁻¹ab)(a)
        let bab = a.conjugate_by(&b);
        let c = Word::commutator(&bab, &a);
        assert_eq!(ab().render(&c), "BAbABaba");
        assert_eq!(c.len(), 8);
    }

    #[test]
    fn shortlex_order() {
        let p = ab();
        let mut ws: Vec<Word> = ["b", "a", "ab", "A", "B", "1"]
            .iter()
            .map(|s| p.parse_word(s).unwrap())
            .collect();
        ws.sort();
        let rendered: Vec<String> = ws.iter().map(|w| p.render(w)).collect();
        assert_eq!(rendered, ["1", "a", "A", "b", "B", "ab"]);
    }

    #[test]
    fn cyclic_reduction() {
        let p = ab();
        let w = p.parse_word("b a b a B").unwrap();
        assert_eq!(p.render(&w.cyclically_reduce()), "aba");
        assert!(!w.is_cyclically_reduced());
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["A"]).is_err());
        assert!(Alphabet::new(["x1", "x2"]).is_ok());
    }

    #[test]
    fn multi_char_names_render_round_trip() {
        let p = Alphabet::new(["s1", "s2", "s10"]).unwrap();
        let w = p.parse_word("s1 s10^-1 S2").unwrap();
        let text = p.render(&w);
        assert_eq!(text, "s1*S10*S2");
        assert_eq!(p.parse_word(&text).unwrap(), w);
    }
}
