use super::{BikeiWord, Presentation};
use crate::algebra::Op;
use crate::error::{Error, Result};
use crate::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Gens,
    Gen(Element),
    Int(u64),
    Op(Op),
    LParen,
    RParen,
    Eq,
    Sep,
}

#[derive(Debug, Clone, Copy)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        if line.trim_start().starts_with('#') {
            continue;
        }
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let push = |out: &mut Vec<Spanned>, tok| {
                out.push(Spanned {
                    tok,
                    line: line_no,
                    column,
                })
            };
            match c {
                ' ' | '\t' | '\r' => {}
                '(' => push(&mut out, Tok::LParen),
                ')' => push(&mut out, Tok::RParen),
                '=' => push(&mut out, Tok::Eq),
                ';' => push(&mut out, Tok::Sep),
                '_' => push(&mut out, Tok::Op(Op::Under)),
                '^' => push(&mut out, Tok::Op(Op::Over)),
                'x' => {
                    let start = i + 1;
                    let mut end = start;
                    while end < chars.len() && chars[end].is_ascii_digit() {
                        end += 1;
                    }
                    let digits: String = chars[start..end].iter().collect();
                    let index: Element = digits
                        .parse()
                        .map_err(|_| err(line_no, column, "expected generator index after `x`"))?;
                    if index == 0 {
                        return Err(err(line_no, column, "generator indices start at 1"));
                    }
                    push(&mut out, Tok::Gen(index));
                    i = end;
                    continue;
                }
                c if c.is_ascii_digit() => {
                    let mut end = i;
                    while end < chars.len() && chars[end].is_ascii_digit() {
                        end += 1;
                    }
                    let digits: String = chars[i..end].iter().collect();
                    let value = digits
                        .parse()
                        .map_err(|_| err(line_no, column, "integer out of range"))?;
                    push(&mut out, Tok::Int(value));
                    i = end;
                    continue;
                }
                'g' if chars[i..].starts_with(&['g', 'e', 'n', 's']) => {
                    push(&mut out, Tok::Gens);
                    i += 4;
                    continue;
                }
                other => {
                    return Err(err(
                        line_no,
                        column,
                        format!("unexpected character `{other}`"),
                    ))
                }
            }
            i += 1;
        }
        // newlines separate relations
        out.push(Spanned {
            tok: Tok::Sep,
            line: line_no,
            column: chars.len() + 1,
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    generators: usize,
}

impl Parser {
    fn peek(&self) -> Option<Spanned> {
        self.toks.get(self.pos).copied()
    }

    fn end_position(&self) -> (usize, usize) {
        self.toks.last().map_or((1, 1), |t| (t.line, t.column))
    }

    fn next(&mut self, what: &str) -> Result<Spanned> {
        let t = self.peek().ok_or_else(|| {
            let (l, c) = self.end_position();
            err(l, c, format!("unexpected end of input, expected {what}"))
        })?;
        self.pos += 1;
        Ok(t)
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(Spanned { tok: Tok::Sep, .. })) {
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<BikeiWord> {
        let t = self.next("a generator or `(`")?;
        match t.tok {
            Tok::Gen(i) => {
                if i as usize > self.generators {
                    return Err(err(
                        t.line,
                        t.column,
                        format!(
                            "generator x{i} exceeds the {} declared generators",
                            self.generators
                        ),
                    ));
                }
                Ok(BikeiWord::Gen(i))
            }
            Tok::LParen => {
                let inner = self.word()?;
                let close = self.next("`)`")?;
                if close.tok != Tok::RParen {
                    return Err(err(close.line, close.column, "expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(err(t.line, t.column, "expected a generator or `(`")),
        }
    }

    /// `atom` or `atom OP atom`; operators do not chain without parentheses.
    fn word(&mut self) -> Result<BikeiWord> {
        let left = self.atom()?;
        let Some(Spanned {
            tok: Tok::Op(op), ..
        }) = self.peek()
        else {
            return Ok(left);
        };
        self.pos += 1;
        let right = self.atom()?;
        if let Some(
            t @ Spanned {
                tok: Tok::Op(_), ..
            },
        ) = self.peek()
        {
            return Err(err(
                t.line,
                t.column,
                "operations are not associative; add parentheses",
            ));
        }
        Ok(BikeiWord::Apply(op, Box::new(left), Box::new(right)))
    }
}

/// Parses `gens <n>;` followed by relations `WORD = WORD` separated by `;`
/// or newlines. `#` starts a comment line.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        generators: 0,
    };
    p.skip_separators();
    let head = p.next("`gens`")?;
    if head.tok != Tok::Gens {
        return Err(err(head.line, head.column, "expected `gens <n>;`"));
    }
    let count = p.next("generator count")?;
    let Tok::Int(n) = count.tok else {
        return Err(err(count.line, count.column, "expected generator count"));
    };
    if n == 0 {
        return Err(err(count.line, count.column, "need at least one generator"));
    }
    p.generators = n as usize;
    let sep = p.next("`;`")?;
    if sep.tok != Tok::Sep {
        return Err(err(
            sep.line,
            sep.column,
            "expected `;` or newline after generator count",
        ));
    }

    let mut relations = Vec::new();
    loop {
        p.skip_separators();
        if p.peek().is_none() {
            break;
        }
        let lhs = p.word()?;
        let eq = p.next("`=`")?;
        if eq.tok != Tok::Eq {
            return Err(err(eq.line, eq.column, "expected `=`"));
        }
        let rhs = p.word()?;
        if let Some(t) = p.peek() {
            if t.tok != Tok::Sep {
                return Err(err(
                    t.line,
                    t.column,
                    "expected `;` or newline after relation",
                ));
            }
        }
        relations.push((lhs, rhs));
    }
    Ok(Presentation {
        generators: p.generators,
        relations,
    })
}
