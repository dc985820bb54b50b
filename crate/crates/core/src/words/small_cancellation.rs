use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use super::{Letter, Presentation, Word};

/// All cyclic rotations of every relator and of its inverse, one entry per
/// placement (rotations of proper powers repeat).
pub(crate) fn symmetrize(relators: &[Word]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for r in relators {
        for w in [r.clone(), r.inverse()] {
            let l = w.letters();
            for k in 0..l.len() {
                out.push(l[k..].iter().chain(l[..k].iter()).copied().collect());
            }
        }
    }
    out
}

/// A common prefix of two distinct placements in the symmetrized relator set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub word: Word,
    /// Shortest relator length among the placements sharing this piece.
    pub relator_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScCertificate {
    #[serde(serialize_with = "ser_ratio")]
    pub lambda: Ratio<u64>,
    pub max_piece_len: usize,
    /// Maximal pieces, shortlex sorted and deduplicated.
    pub pieces: Vec<Piece>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScViolation {
    #[serde(serialize_with = "ser_ratio")]
    pub lambda: Ratio<u64>,
    pub piece: Word,
    pub relator_len: usize,
}

impl fmt::Display for ScViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C'({}) fails: piece {:?} of length {} >= {} * {}",
            self.lambda,
            self.piece,
            self.piece.len(),
            self.lambda,
            self.relator_len
        )
    }
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Piece census for C'(λ).
///
/// A piece is a word occurring as a prefix of two distinct placements in the
/// symmetrized set. A piece can never be the whole relator: common prefixes
/// are capped at one less than the shorter placement, which matters only for
/// relators that are proper powers. Certification holds iff every piece is
/// shorter than λ times the length of each relator it sits in. With no
/// relators the census is empty and the presentation is certified. A failure
/// names the longest violating piece (shortlex least among equals).
pub fn check_small_cancellation(
    p: &Presentation,
    lambda: Ratio<u64>,
) -> Result<ScCertificate, ScViolation> {
    let sym = p.symmetrized();
    let mut pieces: BTreeMap<Word, usize> = BTreeMap::new();
    let mut worst: Option<ScViolation> = None;
    for i in 0..sym.len() {
        for j in (i + 1)..sym.len() {
            let (x, y) = (&sym[i], &sym[j]);
            let cap = x.len().min(y.len()).saturating_sub(1);
            let lcp = x
                .iter()
                .zip(y.iter())
                .take(cap)
                .take_while(|(a, b)| a == b)
                .count();
            if lcp == 0 {
                continue;
            }
            let word = Word::from_letters(x[..lcp].iter().copied());
            let rel_len = x.len().min(y.len());
            let slot = pieces.entry(word.clone()).or_insert(rel_len);
            *slot = (*slot).min(rel_len);
            // |u| < λ|r|  ⇔  |u|·den < num·|r|
            let ok = (lcp as u64) * lambda.denom() < lambda.numer() * rel_len as u64;
            let longer = match &worst {
                None => true,
                Some(v) => (lcp, std::cmp::Reverse(&word)) > (v.piece.len(), std::cmp::Reverse(&v.piece)),
            };
            if !ok && longer {
                worst = Some(ScViolation {
                    lambda,
                    piece: word,
                    relator_len: rel_len,
                });
            }
        }
    }
    if let Some(v) = worst {
        return Err(v);
    }
    let pieces: Vec<Piece> = pieces
        .into_iter()
        .map(|(word, relator_len)| Piece { word, relator_len })
        .collect();
    let max_piece_len = pieces.iter().map(|p| p.word.len()).max().unwrap_or(0);
    Ok(ScCertificate {
        lambda,
        max_piece_len,
        pieces,
    })
}
