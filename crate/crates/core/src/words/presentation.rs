use std::fmt;

use num_rational::Ratio;

use super::small_cancellation::{check_small_cancellation, symmetrize, ScCertificate, ScViolation};
use super::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// Generators and cyclically reduced relators, optionally carrying a
/// verified small-cancellation certificate.
///
/// Text format (one key per line, `#` starts a comment, `rels:` may repeat):
///
/// ```text
/// gens: a,b,c,d
/// rels: [a,b][c,d]
/// ```
#[derive(Clone)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    certificate: Option<ScCertificate>,
    symmetrized: Vec<Vec<Letter>>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.relators == other.relators
    }
}

impl Eq for Presentation {}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("text", &self.to_text())
            .field("certified", &self.certificate.as_ref().map(|c| c.lambda))
            .finish()
    }
}

impl Presentation {
    /// Relators are cyclically reduced on entry; a relator that reduces to
    /// the empty word is rejected.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            alphabet.check(&r)?;
            let r = r.cyclically_reduce();
            if r.is_empty() {
                return Err(Error::input("relator is trivial after reduction"));
            }
            rels.push(r);
        }
        let symmetrized = symmetrize(&rels);
        Ok(Presentation {
            alphabet,
            relators: rels,
            certificate: None,
            symmetrized,
        })
    }

    pub fn free(rank: usize) -> Self {
        Presentation::new(Alphabet::standard(rank), Vec::new()).expect("free presentation")
    }

    /// `⟨a_1, b_1, …, a_g, b_g | [a_1,b_1]⋯[a_g,b_g]⟩`, certified C'(1/6) for g ≥ 2.
    pub fn surface(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::input("genus must be positive"));
        }
        let alphabet = Alphabet::standard(2 * genus);
        let mut r = Word::empty();
        for i in 0..genus {
            r = r.mul(&Word::commutator(
                &Word::generator(2 * i),
                &Word::generator(2 * i + 1),
            ));
        }
        let p = Presentation::new(alphabet, vec![r])?;
        if genus >= 2 {
            p.with_small_cancellation(Ratio::new(1, 6))
                .map_err(|v| Error::input(v.to_string()))
        } else {
            Ok(p)
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    pub fn certificate(&self) -> Option<&ScCertificate> {
        self.certificate.as_ref()
    }

    pub(crate) fn symmetrized(&self) -> &[Vec<Letter>] {
        &self.symmetrized
    }

    /// Runs the piece census and, on success, attaches the certificate.
    pub fn with_small_cancellation(
        mut self,
        lambda: Ratio<u64>,
    ) -> std::result::Result<Self, ScViolation> {
        let cert = check_small_cancellation(&self, lambda)?;
        self.certificate = Some(cert);
        Ok(self)
    }

    /// True when `is_trivial` is decidable here: free, or C'(1/6) certified.
    pub fn supports_word_problem(&self) -> bool {
        self.is_free()
            || self
                .certificate
                .as_ref()
                .is_some_and(|c| c.lambda <= Ratio::new(1, 6))
    }

    /// Word problem: free reduction for free groups, Dehn's algorithm for
    /// C'(1/6) presentations.
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        self.alphabet.check(w)?;
        if self.is_free() {
            return Ok(w.is_empty());
        }
        if !self.supports_word_problem() {
            return Err(Error::UnsupportedPresentation(
                "relators present without a C'(1/6) certificate".to_string(),
            ));
        }
        Ok(self.dehn_reduce(w).is_empty())
    }

    /// Applies Dehn reductions until none applies. Each step replaces a
    /// subword `u` with `r = u·v` in the symmetrized set and `2|u| > |r|` by
    /// `v⁻¹`, so the length strictly decreases.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let mut cur: Vec<Letter> = w.letters().to_vec();
        'outer: loop {
            for i in 0..cur.len() {
                for r in &self.symmetrized {
                    let n = r.len();
                    let matched = cur[i..]
                        .iter()
                        .zip(r.iter())
                        .take_while(|(a, b)| a == b)
                        .count();
                    if 2 * matched > n {
                        let replacement = r[matched..].iter().rev().map(|l| l.inverse());
                        let next: Vec<Letter> = cur[..i]
                            .iter()
                            .copied()
                            .chain(replacement)
                            .chain(cur[i + matched..].iter().copied())
                            .collect();
                        cur = Word::from_letters(next).letters().to_vec();
                        continue 'outer;
                    }
                }
            }
            return Word::from_letters(cur);
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Alphabet> = None;
        let mut rel_texts: Vec<(usize, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected `key: value`".to_string(),
            })?;
            match key.trim() {
                "gens" => {
                    if gens.is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "duplicate gens line".to_string(),
                        });
                    }
                    let names: Vec<&str> = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .collect();
                    gens = Some(Alphabet::new(names).map_err(|e| Error::Parse {
                        line: line_no,
                        message: e.to_string(),
                    })?);
                }
                "rels" => {
                    for piece in split_top_level(value) {
                        if !piece.trim().is_empty() {
                            rel_texts.push((line_no, piece.trim().to_string()));
                        }
                    }
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("unknown key {other:?}"),
                    })
                }
            }
        }
        let alphabet = gens.ok_or_else(|| Error::Parse {
            line: 0,
            message: "missing gens line".to_string(),
        })?;
        let mut rels = Vec::new();
        for (line, t) in rel_texts {
            let w = alphabet.parse_word(&t).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            rels.push(w);
        }
        Presentation::new(alphabet, rels).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.alphabet.names().join(","));
        if !self.relators.is_empty() {
            let rels: Vec<String> = self
                .relators
                .iter()
                .map(|r| self.alphabet.render(r))
                .collect();
            s.push_str(&format!("rels: {}\n", rels.join(", ")));
        }
        s
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
