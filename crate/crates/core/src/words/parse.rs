//! Word grammar:
//!
//! ```text
//! word  := term*                       (terms separated by nothing, spaces, '*' or '.')
//! term  := atom ('^' '-'? digits)?
//! atom  := name | NAME | '1' | '(' word ')' | '[' word ',' word ']'
//! name  := [a-z][0-9]*                 (NAME: same with the letter uppercased = inverse)
//! ```
//!
//! `[u,v]` is the commutator `u⁻¹v⁻¹uv`.

use super::{Alphabet, Word};
use crate::error::{Error, Result};

pub(super) fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word> {
    let mut p = Parser {
        alphabet,
        chars: text.chars().collect(),
        pos: 0,
    };
    let w = p.word()?;
    p.skip_separators();
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(w)
}

struct Parser<'a> {
    alphabet: &'a Alphabet,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let found = self
            .chars
            .get(self.pos)
            .map(|c| format!("{c:?}"))
            .unwrap_or_else(|| "end of input".to_string());
        Error::input(format!("{what} at offset {} (found {found})", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '*' || c == '.') {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut out = Word::empty();
        loop {
            self.skip_separators();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '[' || c == '1' => {
                    let t = self.term()?;
                    out.append(&t);
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let negative = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected exponent digits"));
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: i64 = digits
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(atom.pow(if negative { -e } else { e }));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.skip_separators();
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.skip_separators();
                self.expect(',')?;
                let v = self.word()?;
                self.skip_separators();
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let sym: String = self.chars[start..self.pos].iter().collect();
                let letter = self.alphabet.symbol(&sym).map_err(|_| {
                    Error::input(format!("unknown symbol {sym:?} at offset {start}"))
                })?;
                Ok(Word::letter(letter))
            }
            _ => Err(self.error("expected generator, '1', '(' or '['")),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_forms() {
        let p = Alphabet::standard(4);
        let r = |s: &str| p.render(&p.parse_word(s).unwrap());
        assert_eq!(r("[a,b][c,d]"), "ABabCDcd");
        assert_eq!(r("a^-1 b^2"), "Abb");
        assert_eq!(r("(ab)^-2"), "BABA");
        assert_eq!(r("a*b.c d"), "abcd");
        assert_eq!(r("1"), "1");
        assert_eq!(r("aA"), "1");
        assert_eq!(r("a^0"), "1");
    }

    #[test]
    fn malformed_input() {
        let p = Alphabet::standard(2);
        assert!(p.parse_word("[a,b").is_err());
        assert!(p.parse_word("a^").is_err());
        assert!(p.parse_word("c").is_err());
        assert!(p.parse_word("a)").is_err());
    }
}
