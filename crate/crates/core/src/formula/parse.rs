use thiserror::Error;

use super::{Formula, Symbol, RESERVED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown operator {token:?} at byte {pos}")]
    UnknownOperator { pos: usize, token: String },
    #[error("reserved word {word:?} used as a letter at byte {pos}")]
    ReservedLetter { pos: usize, word: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Bang,
    LParen,
    RParen,
    Amp,
    Pipe,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'!' => {
                out.push((i, Tok::Bang));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'&' => {
                out.push((i, Tok::Amp));
                i += 1;
            }
            b'|' => {
                out.push((i, Tok::Pipe));
                i += 1;
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                let start = i;
                let mut end = i + text[i..].chars().next().map_or(1, char::len_utf8);
                // group runs of punctuation so "->" is reported as one token
                while end < bytes.len()
                    && !bytes[end].is_ascii_alphanumeric()
                    && !b" \t\r\n()!&|_".contains(&bytes[end])
                {
                    end += text[end..].chars().next().map_or(1, char::len_utf8);
                }
                return Err(ParseError::UnknownOperator { pos: start, token: text[start..end].to_string() });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.0)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let Some((pos, tok)) = self.peek().cloned() else {
            return self.syntax("unexpected end of input, expected a formula");
        };
        self.at += 1;
        match tok {
            Tok::Ident(word) => match word.as_str() {
                "true" => Ok(Formula::True),
                "false" => Ok(Formula::False),
                "X" => Ok(Formula::next(self.formula()?)),
                "F" => Ok(Formula::eventually(self.formula()?)),
                "G" => Ok(Formula::globally(self.formula()?)),
                "U" => Err(ParseError::Syntax {
                    pos,
                    message: "until must appear as (left U right)".into(),
                }),
                _ => Ok(Formula::Letter(symbol(pos, &word)?)),
            },
            Tok::Bang => {
                let Some((pos, tok)) = self.peek().cloned() else {
                    return self.syntax("expected a letter after '!'");
                };
                self.at += 1;
                match tok {
                    Tok::Ident(word) => Ok(Formula::NegLetter(symbol(pos, &word)?)),
                    _ => Err(ParseError::Syntax {
                        pos,
                        message: "negation applies to letters only".into(),
                    }),
                }
            }
            Tok::LParen => {
                let left = self.formula()?;
                let Some((pos, op)) = self.peek().cloned() else {
                    return self.syntax("expected '&', '|' or 'U'");
                };
                self.at += 1;
                let right = self.formula()?;
                match self.peek() {
                    Some((_, Tok::RParen)) => self.at += 1,
                    _ => return self.syntax("expected ')'"),
                }
                match op {
                    Tok::Amp => Ok(Formula::and(left, right)),
                    Tok::Pipe => Ok(Formula::or(left, right)),
                    Tok::Ident(w) if w == "U" => Ok(Formula::until(left, right)),
                    Tok::Ident(w) => Err(ParseError::UnknownOperator { pos, token: w }),
                    _ => Err(ParseError::Syntax { pos, message: "expected '&', '|' or 'U'".into() }),
                }
            }
            Tok::RParen | Tok::Amp | Tok::Pipe => Err(ParseError::Syntax {
                pos,
                message: "expected a formula".into(),
            }),
        }
    }
}

fn symbol(pos: usize, word: &str) -> Result<Symbol, ParseError> {
    if RESERVED.contains(&word) {
        return Err(ParseError::ReservedLetter { pos, word: word.to_string() });
    }
    Symbol::new(word).map_err(|e| ParseError::Syntax { pos, message: e.to_string() })
}

/// Parses the textual formula language.
///
/// ```text
/// formula := "true" | "false" | IDENT | "!" IDENT
///          | ("X" | "F" | "G") formula
///          | "(" formula ("&" | "|" | "U") formula ")"
/// ```
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let f = p.formula()?;
    if p.at != p.toks.len() {
        return p.syntax("trailing input after formula");
    }
    Ok(f)
}
