//! S-expression serialization of derivation terms.
//!
//! The tags are stable and the format round-trips:
//!
//! * categorical: `(id "A")`, `(comp G F)` (`G` after `F`), `(tensor F G)`,
//!   `(lam "A")`, `(rho "A")`, `(alpha "A" "B" "C")`, `(laminv "A")`,
//!   `(rhoinv "A")`, `(alphainv "A" "B" "C")`;
//! * sequent: `(ax "A")`, `(ir)`, `(pass F)`, `(il F)`, `(otl F)`,
//!   `(otr K F G)` with `K` the context split, `(otrem F G)`,
//!   `(ic K F)`, `(jjc K F)`, `(otlctx K F)` with `K` the context
//!   position;
//! * focused: `(axf "X")`, `(irf)`, `(otrf K D E)`, `(otremf D E)`,
//!   `(passf D)`, `(ilf D)`, `(otlf D)`, `(swrl D)`, `(icf D)`,
//!   `(otlctxf D)`, `(act D)`, `(swlc D)`.
//!
//! Formulae appear as quoted strings in the surface grammar.

use std::fmt::Write as _;

use crate::catcalc::CatDeriv;
use crate::focused::FocDeriv;
use crate::formula::Formula;
use crate::parse::{parse_formula, ParseError};
use crate::seqcalc::SeqDeriv;

fn quote(f: &Formula, out: &mut String) {
    out.push('"');
    out.push_str(&f.to_string());
    out.push('"');
}

pub fn print_cat(d: &CatDeriv) -> String {
    let mut s = String::new();
    print_cat_into(d, &mut s);
    s
}

fn print_cat_into(d: &CatDeriv, out: &mut String) {
    match d {
        CatDeriv::Id(a) => {
            out.push_str("(id ");
            quote(a, out);
            out.push(')');
        }
        CatDeriv::Comp(g, f) => {
            out.push_str("(comp ");
            print_cat_into(g, out);
            out.push(' ');
            print_cat_into(f, out);
            out.push(')');
        }
        CatDeriv::TensorMap(f, g) => {
            out.push_str("(tensor ");
            print_cat_into(f, out);
            out.push(' ');
            print_cat_into(g, out);
            out.push(')');
        }
        CatDeriv::Lam(a) => {
            out.push_str("(lam ");
            quote(a, out);
            out.push(')');
        }
        CatDeriv::Rho(a) => {
            out.push_str("(rho ");
            quote(a, out);
            out.push(')');
        }
        CatDeriv::Alpha(a, b, c) => {
            out.push_str("(alpha ");
            quote(a, out);
            out.push(' ');
            quote(b, out);
            out.push(' ');
            quote(c, out);
            out.push(')');
        }
        CatDeriv::LamInv(a) => {
            out.push_str("(laminv ");
            quote(a, out);
            out.push(')');
        }
        CatDeriv::RhoInv(a) => {
            out.push_str("(rhoinv ");
            quote(a, out);
            out.push(')');
        }
        CatDeriv::AlphaInv(a, b, c) => {
            out.push_str("(alphainv ");
            quote(a, out);
            out.push(' ');
            quote(b, out);
            out.push(' ');
            quote(c, out);
            out.push(')');
        }
    }
}

pub fn print_seq(d: &SeqDeriv) -> String {
    let mut s = String::new();
    print_seq_into(d, &mut s);
    s
}

fn print_seq_into(d: &SeqDeriv, out: &mut String) {
    match d {
        SeqDeriv::Ax(a) => {
            out.push_str("(ax ");
            quote(a, out);
            out.push(')');
        }
        SeqDeriv::Ir => out.push_str("(ir)"),
        SeqDeriv::Pass(f) => {
            out.push_str("(pass ");
            print_seq_into(f, out);
            out.push(')');
        }
        SeqDeriv::Il(f) => {
            out.push_str("(il ");
            print_seq_into(f, out);
            out.push(')');
        }
        SeqDeriv::Otl(f) => {
            out.push_str("(otl ");
            print_seq_into(f, out);
            out.push(')');
        }
        SeqDeriv::Otr { split, left, right } => {
            let _ = write!(out, "(otr {split} ");
            print_seq_into(left, out);
            out.push(' ');
            print_seq_into(right, out);
            out.push(')');
        }
        SeqDeriv::Otrem { left, right } => {
            out.push_str("(otrem ");
            print_seq_into(left, out);
            out.push(' ');
            print_seq_into(right, out);
            out.push(')');
        }
        SeqDeriv::Ic { pos, body } => {
            let _ = write!(out, "(ic {pos} ");
            print_seq_into(body, out);
            out.push(')');
        }
        SeqDeriv::Jjc { pos, body } => {
            let _ = write!(out, "(jjc {pos} ");
            print_seq_into(body, out);
            out.push(')');
        }
        SeqDeriv::Otlctx { pos, body } => {
            let _ = write!(out, "(otlctx {pos} ");
            print_seq_into(body, out);
            out.push(')');
        }
    }
}

pub fn print_foc(d: &FocDeriv) -> String {
    let mut s = String::new();
    print_foc_into(d, &mut s);
    s
}

fn print_foc_into(d: &FocDeriv, out: &mut String) {
    let unary = |tag: &str, x: &FocDeriv, out: &mut String| {
        out.push('(');
        out.push_str(tag);
        out.push(' ');
        print_foc_into(x, out);
        out.push(')');
    };
    match d {
        FocDeriv::Axf(x) => {
            let _ = write!(out, "(axf \"{x}\")");
        }
        FocDeriv::Irf => out.push_str("(irf)"),
        FocDeriv::Otrf { split, left, right } => {
            let _ = write!(out, "(otrf {split} ");
            print_foc_into(left, out);
            out.push(' ');
            print_foc_into(right, out);
            out.push(')');
        }
        FocDeriv::Otremf { left, right } => {
            out.push_str("(otremf ");
            print_foc_into(left, out);
            out.push(' ');
            print_foc_into(right, out);
            out.push(')');
        }
        FocDeriv::Passf(x) => unary("passf", x, out),
        FocDeriv::Ilf(x) => unary("ilf", x, out),
        FocDeriv::Otlf(x) => unary("otlf", x, out),
        FocDeriv::Swrl(x) => unary("swrl", x, out),
        FocDeriv::Icf(x) => unary("icf", x, out),
        FocDeriv::Otlctxf(x) => unary("otlctxf", x, out),
        FocDeriv::Act(x) => unary("act", x, out),
        FocDeriv::Swlc(x) => unary("swlc", x, out),
    }
}

// -- parsing ---------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Tag(String),
    Num(usize),
    Str(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'"' => {
                let start = i;
                i += 1;
                let from = i;
                while i < bytes.len() && bytes[i] != b'"' {
                    i += 1;
                }
                if i == bytes.len() {
                    return Err(ParseError {
                        position: start,
                        message: "unterminated string".to_string(),
                    });
                }
                toks.push((Tok::Str(text[from..i].to_string()), start));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: usize = text[start..i].parse().map_err(|_| ParseError {
                    position: start,
                    message: "integer out of range".to_string(),
                })?;
                toks.push((Tok::Num(n), start));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push((Tok::Tag(text[start..i].to_string()), start));
            }
            other => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character `{}`", other as char),
                })
            }
        }
    }
    Ok(toks)
}

struct P {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl P {
    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.here(), message: message.into() })
    }

    fn open_tag(&mut self) -> Result<String, ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::LParen, _)) => {
                self.pos += 1;
                match self.toks.get(self.pos) {
                    Some((Tok::Tag(t), _)) => {
                        let t = t.clone();
                        self.pos += 1;
                        Ok(t)
                    }
                    _ => self.err("expected a tag after `(`"),
                }
            }
            _ => self.err("expected `(`"),
        }
    }

    fn close(&mut self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::RParen, _)) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err("expected `)`"),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Str(s), at)) => {
                let f = parse_formula(s).map_err(|e| ParseError {
                    position: *at,
                    message: format!("in formula string: {}", e.message),
                })?;
                self.pos += 1;
                Ok(f)
            }
            _ => self.err("expected a quoted formula"),
        }
    }

    fn num(&mut self) -> Result<usize, ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Num(n), _)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected a position index"),
        }
    }

    fn atom_name(&mut self) -> Result<String, ParseError> {
        match self.formula()? {
            Formula::Atom(x) => Ok(x.to_string()),
            other => self.err(format!("expected an atom, got `{other}`")),
        }
    }

    fn cat(&mut self) -> Result<CatDeriv, ParseError> {
        let tag = self.open_tag()?;
        let d = match tag.as_str() {
            "id" => CatDeriv::Id(self.formula()?),
            "comp" => {
                let g = self.cat()?;
                let f = self.cat()?;
                CatDeriv::comp(g, f)
            }
            "tensor" => {
                let f = self.cat()?;
                let g = self.cat()?;
                CatDeriv::tensor_map(f, g)
            }
            "lam" => CatDeriv::Lam(self.formula()?),
            "rho" => CatDeriv::Rho(self.formula()?),
            "alpha" => {
                let a = self.formula()?;
                let b = self.formula()?;
                let c = self.formula()?;
                CatDeriv::Alpha(a, b, c)
            }
            "laminv" => CatDeriv::LamInv(self.formula()?),
            "rhoinv" => CatDeriv::RhoInv(self.formula()?),
            "alphainv" => {
                let a = self.formula()?;
                let b = self.formula()?;
                let c = self.formula()?;
                CatDeriv::AlphaInv(a, b, c)
            }
            other => return self.err(format!("unknown map tag `{other}`")),
        };
        self.close()?;
        Ok(d)
    }

    fn seq(&mut self) -> Result<SeqDeriv, ParseError> {
        let tag = self.open_tag()?;
        let d = match tag.as_str() {
            "ax" => SeqDeriv::Ax(self.formula()?),
            "ir" => SeqDeriv::Ir,
            "pass" => SeqDeriv::pass(self.seq()?),
            "il" => SeqDeriv::il(self.seq()?),
            "otl" => SeqDeriv::otl(self.seq()?),
            "otr" => {
                let split = self.num()?;
                let l = self.seq()?;
                let r = self.seq()?;
                SeqDeriv::otr(split, l, r)
            }
            "otrem" => {
                let l = self.seq()?;
                let r = self.seq()?;
                SeqDeriv::otrem(l, r)
            }
            "ic" => {
                let pos = self.num()?;
                SeqDeriv::ic(pos, self.seq()?)
            }
            "jjc" => {
                let pos = self.num()?;
                SeqDeriv::jjc(pos, self.seq()?)
            }
            "otlctx" => {
                let pos = self.num()?;
                SeqDeriv::otlctx(pos, self.seq()?)
            }
            other => return self.err(format!("unknown rule tag `{other}`")),
        };
        self.close()?;
        Ok(d)
    }

    fn foc(&mut self) -> Result<FocDeriv, ParseError> {
        let tag = self.open_tag()?;
        let d = match tag.as_str() {
            "axf" => {
                let x = self.atom_name()?;
                FocDeriv::Axf(x.into())
            }
            "irf" => FocDeriv::Irf,
            "otrf" => {
                let split = self.num()?;
                let l = self.foc()?;
                let r = self.foc()?;
                FocDeriv::otrf(split, l, r)
            }
            "otremf" => {
                let l = self.foc()?;
                let r = self.foc()?;
                FocDeriv::otremf(l, r)
            }
            "passf" => FocDeriv::passf(self.foc()?),
            "ilf" => FocDeriv::ilf(self.foc()?),
            "otlf" => FocDeriv::otlf(self.foc()?),
            "swrl" => FocDeriv::swrl(self.foc()?),
            "icf" => FocDeriv::icf(self.foc()?),
            "otlctxf" => FocDeriv::otlctxf(self.foc()?),
            "act" => FocDeriv::act(self.foc()?),
            "swlc" => FocDeriv::swlc(self.foc()?),
            other => return self.err(format!("unknown focused rule tag `{other}`")),
        };
        self.close()?;
        Ok(d)
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos != self.toks.len() {
            return Err(ParseError {
                position: self.here(),
                message: "trailing input".to_string(),
            });
        }
        Ok(())
    }
}

fn parser_for(text: &str) -> Result<P, ParseError> {
    Ok(P { toks: lex(text)?, pos: 0, end: text.len() })
}

pub fn parse_cat(text: &str) -> Result<CatDeriv, ParseError> {
    let mut p = parser_for(text)?;
    let d = p.cat()?;
    p.finish()?;
    Ok(d)
}

pub fn parse_seq(text: &str) -> Result<SeqDeriv, ParseError> {
    let mut p = parser_for(text)?;
    let d = p.seq()?;
    p.finish()?;
    Ok(d)
}

pub fn parse_foc(text: &str) -> Result<FocDeriv, ParseError> {
    let mut p = parser_for(text)?;
    let d = p.foc()?;
    p.finish()?;
    Ok(d)
}
