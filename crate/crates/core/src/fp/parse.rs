//! Presentation grammar:
//!
//! ```text
//! presentation := '<' name (',' name)* ['|' [relation (',' relation)*]] '>'
//! relation     := word ['=' word]          -- w1 = w2 means w1*(w2)^-1
//! word         := term ('*' term)*
//! term         := atom ('^' integer)*
//! atom         := name | '1' | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! `[x, y]` is `x⁻¹y⁻¹xy`. Whitespace is insignificant and `#` starts a
//! comment running to the end of the line.

use super::presentation::Presentation;
use super::word::Word;
use super::FpError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Int(i64),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, FpError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let at = |tok| Token {
                tok,
                line: li + 1,
                column,
            };
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(at(Tok::Name(chars[start..i].iter().collect())));
            } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| FpError::Syntax {
                    line: li + 1,
                    column,
                    message: format!("integer {s} out of range"),
                })?;
                out.push(at(Tok::Int(v)));
            } else if "<>|,*^()[]=".contains(c) {
                out.push(at(Tok::Sym(c)));
                i += 1;
            } else {
                return Err(FpError::Syntax {
                    line: li + 1,
                    column,
                    message: format!("unexpected character {c:?}"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: Vec<String>,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn error(&self, message: impl Into<String>) -> FpError {
        let (line, column) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.column),
            None => {
                let line = self.text.lines().count().max(1);
                let column = self.text.lines().last().map_or(0, |l| l.chars().count()) + 1;
                (line, column)
            }
        };
        FpError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FpError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn presentation(&mut self) -> Result<Presentation, FpError> {
        self.expect('<')?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Name(n)) => {
                    if self.names.contains(&n) {
                        return Err(self.error(format!("duplicate generator {n}")));
                    }
                    self.names.push(n);
                    self.pos += 1;
                }
                _ => return Err(self.error("expected generator name")),
            }
            if !self.eat(',') {
                break;
            }
        }
        let mut relators = Vec::new();
        if self.eat('|') && self.peek() != Some(&Tok::Sym('>')) {
            loop {
                relators.push(self.relation()?);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect('>')?;
        if self.pos != self.toks.len() {
            return Err(self.error("trailing input after '>'"));
        }
        Presentation::new(self.names.clone(), relators)
    }

    fn relation(&mut self) -> Result<Word, FpError> {
        let lhs = self.word()?;
        if self.eat('=') {
            let rhs = self.word()?;
            Ok(lhs.concat(&rhs.inverse()))
        } else {
            Ok(lhs)
        }
    }

    fn word(&mut self) -> Result<Word, FpError> {
        let mut w = self.term()?;
        while self.eat('*') {
            w = w.concat(&self.term()?);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, FpError> {
        let mut w = self.atom()?;
        while self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(0)) => return Err(FpError::ZeroExponent),
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    w = w.pow(e);
                }
                _ => return Err(self.error("expected integer exponent")),
            }
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, FpError> {
        match self.peek().cloned() {
            Some(Tok::Name(n)) => {
                let idx = self
                    .names
                    .iter()
                    .position(|x| *x == n)
                    .ok_or_else(|| FpError::UnknownGenerator(n.clone()))?;
                self.pos += 1;
                Ok(Word::generator(idx))
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(',')?;
                let y = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&x, &y))
            }
            _ => Err(self.error("expected generator, '1', '(' or '['")),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, FpError> {
    let toks = tokenize(text)?;
    Parser {
        toks,
        pos: 0,
        names: Vec::new(),
        text,
    }
    .presentation()
}

/// Parses a comma-separated list of words over `p`'s generators
/// (used for subgroup generators on the command line).
pub fn parse_words(p: &Presentation, text: &str) -> Result<Vec<Word>, FpError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        names: p.generator_names.clone(),
        text,
    };
    let mut out = Vec::new();
    if parser.toks.is_empty() {
        return Ok(out);
    }
    loop {
        out.push(parser.word()?);
        if !parser.eat(',') {
            break;
        }
    }
    if parser.pos != parser.toks.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic() {
        let p = parse_presentation("< a | a^4 >").unwrap();
        assert_eq!(p.num_generators(), 1);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].len(), 4);
    }

    #[test]
    fn von_dyck() {
        let p = parse_presentation("< a, b | a^2, b^3, (a*b)^5 >").unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators.len(), 3);
        assert_eq!(p.relators[2].len(), 10);
    }

    #[test]
    fn commutators_relations_and_comments() {
        let text = "# order 16\n< u, v, c |\n  u^2, v^2, c^4, [u,v],\n  c*u*c^-1 = v, c*v*c^-1*u^-1 >";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relators.len(), 6);
        assert_eq!(p.relators[3].len(), 4);
        assert_eq!(p.relators[4].exponent_sums(3), vec![1, -1, 0]);
    }

    #[test]
    fn free_group_forms() {
        assert!(parse_presentation("< a, b | >").unwrap().relators.is_empty());
        assert!(parse_presentation("< a, b >").unwrap().relators.is_empty());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_presentation("< a | b^2 >"), Err(FpError::UnknownGenerator(_))));
        assert!(matches!(parse_presentation("< a | a^0 >"), Err(FpError::ZeroExponent)));
        match parse_presentation("< a |\n a^2 ) >") {
            Err(FpError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 6)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_presentation("< a | a^2").is_err());
        assert!(parse_presentation("< a, a | a >").is_err());
    }

    #[test]
    fn round_trip() {
        let p = parse_presentation("< x, y | x^3 = y^2, [x, y^2]^2, (x*y^-1)^3, 1 >").unwrap();
        let q = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn subgroup_words() {
        let p = parse_presentation("< a, b | a^2 >").unwrap();
        let ws = parse_words(&p, "a, b^2*a").unwrap();
        assert_eq!(ws.len(), 2);
        assert!(parse_words(&p, "").unwrap().is_empty());
        assert!(parse_words(&p, "c").is_err());
    }
}
