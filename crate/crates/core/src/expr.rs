//! Text grammar for words and twist expressions.
//!
//! Words:
//!
//! ```text
//! word  := term*                       juxtaposition, optionally with '*'
//! term  := atom ('^' int)?
//! atom  := 'A'k | 'B'k | '1' | '[' word ',' word ']' | '(' word ')'
//! ```
//!
//! Twist expressions (products, composed left to right as maps, so the
//! rightmost factor acts first):
//!
//! ```text
//! texpr := item+
//! item  := 'T' '[' word ']' ('^' int)?
//!        | 'M' '[' mitem (',' mitem)* ']' ('^' int)?
//! mitem := word ('^' n)?               n > 0 is the multiplicity
//! ```
//!
//! Inside `M[...]` a trailing top-level `^n` is always the multiplicity of
//! that factor; a power of the word itself must be wrapped in parentheses.
//! So `M[[A1,B1]^2]` is the twist about `[A1,B1]` with multiplicity 2,
//! while `M[(([A1,B1])^2)^3]` is the twist about `[A1,B1]^2` with
//! multiplicity 3.

use crate::error::{Error, Result};
use crate::freegroup::{FreeWord, Letter};
use crate::magnusrep::{multitwist_power_matrix, twist_matrix, MultiTwist, RepMatrix};
use crate::pairing::PairingTable;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    genus: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, genus: usize) -> Self {
        Parser { src, pos: 0, genus }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    /// Skips whitespace and `*` separators.
    fn skip_separators(&mut self) {
        loop {
            self.skip_ws();
            if self.rest().starts_with('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let mut len = 0;
        if rest.starts_with('-') || rest.starts_with('+') {
            len = 1;
        }
        let digits = rest[len..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected an integer");
        }
        len += digits;
        let text = &rest[..len];
        self.pos += len;
        text.parse::<i64>().map_err(|_| Error::Parse { position: start, message: format!("integer {text} out of range") })
    }

    fn unsigned(&mut self) -> Result<usize> {
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected a generator index");
        }
        let text = &self.rest()[..digits];
        self.pos += digits;
        text.parse::<usize>().map_err(|_| Error::Parse { position: start, message: "index too large".into() })
    }

    fn starts_term(&mut self) -> bool {
        self.skip_separators();
        matches!(self.peek(), Some('A' | 'B' | '1' | '[' | '('))
    }

    /// Parses a word; returns it together with whether its last term
    /// carried an explicit top-level power (and the word without it).
    fn word_with_tail(&mut self) -> Result<(FreeWord, Option<(FreeWord, i64)>)> {
        let mut acc = FreeWord::identity(self.genus);
        let mut tail = None;
        while self.starts_term() {
            let (base, power) = self.term()?;
            let with_power = base.pow(power.unwrap_or(1));
            tail = power.map(|p| (acc.clone().concat(&base).expect("same genus"), p));
            acc = acc.concat(&with_power).expect("same genus");
        }
        Ok((acc, tail))
    }

    fn word(&mut self) -> Result<FreeWord> {
        Ok(self.word_with_tail()?.0)
    }

    fn term(&mut self) -> Result<(FreeWord, Option<i64>)> {
        let atom = self.atom()?;
        let power = if self.eat('^') { Some(self.integer()?) } else { None };
        Ok((atom, power))
    }

    fn atom(&mut self) -> Result<FreeWord> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c @ ('A' | 'B')) => {
                self.pos += 1;
                let k = self.unsigned()?;
                if k == 0 || k > self.genus {
                    return Err(Error::Parse {
                        position: start,
                        message: format!("generator {c}{k} does not exist in genus {}", self.genus),
                    });
                }
                let idx = if c == 'A' { k - 1 } else { self.genus + k - 1 };
                FreeWord::reduce(self.genus, [Letter::new(idx, false)])
            }
            Some('1') => {
                self.pos += 1;
                Ok(FreeWord::identity(self.genus))
            }
            Some('[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(',')?;
                let y = self.word()?;
                self.expect(']')?;
                x.commutator(&y)
            }
            Some('(') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(')')?;
                Ok(x)
            }
            Some(c) => self.err(format!("unexpected character '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err(format!("unexpected input '{}'", self.rest()))
        }
    }
}

/// Parses and freely reduces a word.
pub fn parse_word_expr(src: &str, genus: usize) -> Result<FreeWord> {
    crate::error::check_valid_genus(genus)?;
    let mut p = Parser::new(src, genus);
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// One factor of a twist expression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TwistFactor {
    /// `T[w]^n`.
    Twist { word: FreeWord, power: i64 },
    /// `M[...]^n` with a certified multitwist.
    Multi { twist: MultiTwist, power: i64 },
}

/// A product of twist powers and multitwist powers, in written order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistExpr {
    genus: usize,
    factors: Vec<TwistFactor>,
}

impl TwistExpr {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn factors(&self) -> &[TwistFactor] {
        &self.factors
    }

    /// The expression as a sequence of single twist powers. A multitwist
    /// power `M[w₁^n₁, …]^p` contributes `(w₁, p·n₁), …`; its factors
    /// commute in the image, so their order is immaterial.
    pub fn flatten(&self) -> Vec<(FreeWord, i64)> {
        let mut out = Vec::new();
        for f in &self.factors {
            match f {
                TwistFactor::Twist { word, power } => out.push((word.clone(), *power)),
                TwistFactor::Multi { twist, power } => {
                    for (w, n) in twist.factors() {
                        out.push((w.clone(), *n as i64 * power));
                    }
                }
            }
        }
        out
    }

    /// The representation matrix of the whole product.
    pub fn matrix(&self, table: &PairingTable) -> Result<RepMatrix> {
        let mut m = RepMatrix::identity(self.genus);
        for f in &self.factors {
            let fm = match f {
                TwistFactor::Twist { word, power } => twist_matrix(table, word, *power)?,
                TwistFactor::Multi { twist, power } => multitwist_power_matrix(table, twist, *power)?,
            };
            m = m.compose(&fm)?;
        }
        Ok(m)
    }
}

/// Parses a twist expression; multitwists are certified against `table`.
pub fn parse_twist_expr(src: &str, table: &PairingTable) -> Result<TwistExpr> {
    let genus = table.genus();
    let mut p = Parser::new(src, genus);
    let mut factors = Vec::new();
    loop {
        p.skip_separators();
        let start = p.pos;
        match p.peek() {
            None => break,
            Some('T') => {
                p.pos += 1;
                p.expect('[')?;
                let word = p.word()?;
                p.expect(']')?;
                let power = if p.eat('^') { p.integer()? } else { 1 };
                factors.push(TwistFactor::Twist { word, power });
            }
            Some('M') => {
                p.pos += 1;
                p.expect('[')?;
                let mut items = Vec::new();
                loop {
                    let item_start = p.pos;
                    let (word, tail) = p.word_with_tail()?;
                    let item = match tail {
                        Some((base, n)) => {
                            if n <= 0 {
                                return Err(Error::Parse {
                                    position: item_start,
                                    message: format!("multiplicity must be positive, got {n}"),
                                });
                            }
                            (base, n as u64)
                        }
                        None => (word, 1),
                    };
                    items.push(item);
                    if !p.eat(',') {
                        break;
                    }
                }
                p.expect(']')?;
                let power = if p.eat('^') { p.integer()? } else { 1 };
                let twist = MultiTwist::new(table, items).map_err(|e| match e {
                    Error::Precondition(m) => Error::Precondition(format!("multitwist at byte {start}: {m}")),
                    other => other,
                })?;
                factors.push(TwistFactor::Multi { twist, power });
            }
            Some(c) => return p.err(format!("expected 'T[' or 'M[', found '{c}'")),
        }
    }
    if factors.is_empty() {
        return p.err("empty twist expression");
    }
    Ok(TwistExpr { genus, factors })
}

/// Parses a single multitwist `M[...]` (the `M` and brackets are optional).
pub fn parse_multitwist(src: &str, table: &PairingTable) -> Result<MultiTwist> {
    let trimmed = src.trim();
    let wrapped = if trimmed.starts_with('M') { trimmed.to_string() } else { format!("M[{trimmed}]") };
    let e = parse_twist_expr(&wrapped, table)?;
    match e.factors.as_slice() {
        [TwistFactor::Multi { twist, power: 1 }] => Ok(twist.clone()),
        _ => Err(Error::Parse { position: 0, message: "expected a single multitwist M[...]".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, g: usize) -> FreeWord {
        parse_word_expr(s, g).unwrap()
    }

    #[test]
    fn word_grammar() {
        assert_eq!(w("[A1,B1]", 1).to_string(), "A1 B1 A1^-1 B1^-1");
        assert_eq!(w("A1^-1", 1).to_string(), "A1^-1");
        assert_eq!(w("[A1,B1][A2,B2]", 2), FreeWord::delta(2, 2).unwrap());
        assert_eq!(w("A1*B1 * A1^-1", 1).to_string(), "A1 B1 A1^-1");
        assert_eq!(w("(A1 B1)^2", 1).to_string(), "A1 B1 A1 B1");
        assert_eq!(w("(A1 B1)^-1", 1).to_string(), "B1^-1 A1^-1");
        assert_eq!(w("A1^0", 1).to_string(), "1");
        assert_eq!(w("1", 2).to_string(), "1");
        assert_eq!(w("", 2).to_string(), "1");
        assert_eq!(w("[A1 A2, B2]^2", 2), w("[A1 A2,B2] [A1 A2,B2]", 2));
    }

    #[test]
    fn word_errors() {
        assert!(matches!(parse_word_expr("A3", 2), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_word_expr("A1 C1", 2), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_word_expr("[A1,B1", 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_word_expr("A1^", 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_word_expr("A0", 1), Err(Error::Parse { .. })));
        assert!(parse_word_expr("A1", 0).is_err());
    }

    #[test]
    fn twist_grammar() {
        let t = PairingTable::derive(2).unwrap();
        let e = parse_twist_expr("T[[A1,B1]] T[[A2,B2]]^-2", &t).unwrap();
        assert_eq!(e.flatten(), vec![(w("[A1,B1]", 2), 1), (w("[A2,B2]", 2), -2)]);
        let e = parse_twist_expr("M[[A1,B1]^2, [A2,B2]]^3", &t).unwrap();
        assert_eq!(e.flatten(), vec![(w("[A1,B1]", 2), 6), (w("[A2,B2]", 2), 3)]);
        let e = parse_twist_expr("M[(([A1,B1])^2)^1]", &t).unwrap();
        assert_eq!(e.flatten(), vec![(w("[A1,B1]^2", 2), 1)]);
        assert!(parse_twist_expr("", &t).is_err());
        assert!(parse_twist_expr("X[A1]", &t).is_err());
        assert!(matches!(parse_twist_expr("M[[A1,B1]^0]", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse_twist_expr("M[A1]", &t), Err(Error::Precondition(_))));
    }

    #[test]
    fn multitwist_matrix_matches_product() {
        let t = PairingTable::derive(2).unwrap();
        let a = parse_twist_expr("M[[A1,B1]^2, [A2,B2]]", &t).unwrap().matrix(&t).unwrap();
        let b = parse_twist_expr("T[[A1,B1]]^2 T[[A2,B2]]", &t).unwrap().matrix(&t).unwrap();
        assert_eq!(a, b);
        let mt = parse_multitwist("[A1,B1]^2, [A2,B2]", &t).unwrap();
        assert_eq!(mt.len(), 2);
    }
}
