//! Text grammar for formulae and sequents.
//!
//! * Formula: atoms are identifiers (`[A-Za-z_][A-Za-z0-9_']*`); `I` is the
//!   reserved unit; `*` is the tensor, left-associative, with `(x)` accepted
//!   as an alias in operator position; parentheses override.
//! * Sequent: `S | Γ |- C` with `-` for the empty stoup and `,` separating
//!   context formulae. `A |- C` is sugar for stoup `A` with empty context.

use std::fmt;

use crate::formula::{Formula, Sequent, Stoup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Star,
    LParen,
    RParen,
    Comma,
    Bar,
    Turnstile,
    Dash,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Star => write!(f, "`*`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Bar => write!(f, "`|`"),
            Tok::Turnstile => write!(f, "`|-`"),
            Tok::Dash => write!(f, "`-`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            '|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    toks.push((Tok::Turnstile, i));
                    i += 2;
                } else {
                    toks.push((Tok::Bar, i));
                    i += 1;
                }
            }
            '-' => {
                toks.push((Tok::Dash, i));
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() {
                    let c = bytes[i] as char;
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            other => return err(i, format!("unexpected character `{other}`")),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => err(self.toks[self.pos - 1].1, format!("expected {want}, found {t}")),
            None => err(self.end, format!("expected {want}, found end of input")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.operand()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.operand()?;
                    acc = Formula::tensor(acc, rhs);
                }
                // `(x)` in operator position is the tensor.
                Some(Tok::LParen)
                    if self.peek_at(1) == Some(&Tok::Ident("x".to_string()))
                        && self.peek_at(2) == Some(&Tok::RParen) =>
                {
                    self.pos += 3;
                    let rhs = self.operand()?;
                    acc = Formula::tensor(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn operand(&mut self) -> Result<Formula, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Ident(name)) => {
                if name == "I" {
                    Ok(Formula::Unit)
                } else {
                    Ok(Formula::atom(&name))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(t) => err(at, format!("expected a formula, found {t}")),
            None => err(at, "expected a formula, found end of input"),
        }
    }

    fn context(&mut self) -> Result<Vec<Formula>, ParseError> {
        // Empty context: nothing between `|` and `|-`.
        if self.peek() == Some(&Tok::Turnstile) {
            return Ok(Vec::new());
        }
        let mut ctx = vec![self.formula()?];
        while self.peek() == Some(&Tok::Comma) {
            self.bump();
            ctx.push(self.formula()?);
        }
        Ok(ctx)
    }
}

fn parser_for(text: &str) -> Result<Parser, ParseError> {
    Ok(Parser { toks: lex(text)?, pos: 0, end: text.len() })
}

/// Parse a formula; `print` (the `Display` impl) inverts this.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = parser_for(text)?;
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "trailing input after formula");
    }
    Ok(f)
}

/// Parse a sequent, either `S | Γ |- C` or the sugar `A |- C`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = parser_for(text)?;
    let stoup = if p.peek() == Some(&Tok::Dash) {
        p.bump();
        Stoup::Empty
    } else {
        Stoup::Just(p.formula()?)
    };
    let context = match p.bump() {
        Some(Tok::Bar) => {
            let ctx = p.context()?;
            p.expect(Tok::Turnstile)?;
            ctx
        }
        // Sugar: `A |- C` means stoup `A`, empty context.
        Some(Tok::Turnstile) => Vec::new(),
        Some(t) => return err(p.toks[p.pos - 1].1, format!("expected `|` or `|-`, found {t}")),
        None => return err(p.end, "expected `|` or `|-`, found end of input"),
    };
    let succedent = p.formula()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "trailing input after sequent");
    }
    Ok(Sequent { stoup, context, succedent })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_literal() {
        assert_eq!(parse_formula("I").unwrap(), Formula::Unit);
    }

    #[test]
    fn parens_override() {
        let f = parse_formula("(X * I) * Y").unwrap();
        assert_eq!(
            f,
            Formula::tensor(Formula::tensor(Formula::atom("X"), Formula::Unit), Formula::atom("Y"))
        );
    }

    #[test]
    fn tensor_is_left_associative() {
        assert_eq!(parse_formula("X * I * Y").unwrap(), parse_formula("(X * I) * Y").unwrap());
    }

    #[test]
    fn ascii_tensor_alias() {
        assert_eq!(parse_formula("X (x) Y").unwrap(), parse_formula("X * Y").unwrap());
        // In operand position `(x)` is just a parenthesised atom.
        assert_eq!(parse_formula("(x)").unwrap(), Formula::atom("x"));
        assert_eq!(parse_formula("(x) * y").unwrap(), parse_formula("x * y").unwrap());
    }

    #[test]
    fn print_examples() {
        assert_eq!(Formula::Unit.to_string(), "I");
        let f = Formula::tensor(
            Formula::atom("X"),
            Formula::tensor(Formula::Unit, Formula::atom("Y")),
        );
        assert_eq!(f.to_string(), "X * (I * Y)");
        assert_eq!(Formula::atom("X").to_string(), "X");
    }

    #[test]
    fn sequent_forms() {
        let s = parse_sequent("X | I * Y , Z |- C").unwrap();
        assert_eq!(s.stoup, Stoup::Just(Formula::atom("X")));
        assert_eq!(s.context.len(), 2);
        assert_eq!(s.succedent, Formula::atom("C"));

        let sugar = parse_sequent("X * Y |- C").unwrap();
        assert_eq!(sugar.stoup, Stoup::Just(parse_formula("X * Y").unwrap()));
        assert!(sugar.context.is_empty());

        let empty = parse_sequent("- | |- I").unwrap();
        assert_eq!(empty.stoup, Stoup::Empty);
        assert!(empty.context.is_empty());
        assert_eq!(empty.succedent, Formula::Unit);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("X * ?").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_formula("X *").unwrap_err();
        assert_eq!(e.position, 3);
        assert!(parse_sequent("X |- Y |- Z").is_err());
    }

    #[test]
    fn sequent_display_roundtrip() {
        for text in ["X | I * Y , Z |- C", "- | |- I", "X * Y |- X * Y"] {
            let s = parse_sequent(text).unwrap();
            assert_eq!(parse_sequent(&s.to_string()).unwrap(), s);
        }
    }
}
