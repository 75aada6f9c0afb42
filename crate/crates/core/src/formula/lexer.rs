use super::{FormulaError, FormulaErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Tok {
    Ident(String),
    /// `K'` or `U'`.
    Primed(String),
    Tilde,
    Amp,
    Pipe,
    Backslash,
    Eq,
    Le,
    Lt,
    LBrace,
    RBrace,
    Comma,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    pub(super) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Primed(s) => format!("`{s}'`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    pub(super) fn text(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Primed(s) => format!("{s}'"),
            Tok::Tilde => "~".into(),
            Tok::Amp => "&".into(),
            Tok::Pipe => "|".into(),
            Tok::Backslash => "\\".into(),
            Tok::Eq => "=".into(),
            Tok::Le => "<=".into(),
            Tok::Lt => "<".into(),
            Tok::LBrace => "{".into(),
            Tok::RBrace => "}".into(),
            Tok::Comma => ",".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Eof => String::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub(super) struct Spanned {
    pub tok: Tok,
    pub offset: usize,
}

/// 1-based line and character column of a byte offset.
pub(super) fn position(input: &str, offset: usize) -> (usize, usize) {
    let before = &input[..offset.min(input.len())];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}

pub(super) fn error_at(
    input: &str,
    kind: FormulaErrorKind,
    offset: usize,
    token: String,
    message: String,
) -> FormulaError {
    let (line, column) = position(input, offset);
    FormulaError {
        kind,
        line,
        column,
        offset,
        token,
        message,
    }
}

pub(super) fn tokenize(input: &str) -> Result<Vec<Spanned>, FormulaError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'~' => Some(Tok::Tilde),
            b'&' => Some(Tok::Amp),
            b'|' => Some(Tok::Pipe),
            b'\\' => Some(Tok::Backslash),
            b'=' => Some(Tok::Eq),
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b',' => Some(Tok::Comma),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, offset: start });
            i += 1;
            continue;
        }
        if c == b'<' {
            let tok = if bytes.get(i + 1) == Some(&b'=') {
                i += 2;
                Tok::Le
            } else {
                i += 1;
                Tok::Lt
            };
            out.push(Spanned { tok, offset: start });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = input[start..i].to_string();
            if bytes.get(i) == Some(&b'\'') {
                if word == "K" || word == "U" {
                    i += 1;
                    out.push(Spanned {
                        tok: Tok::Primed(word),
                        offset: start,
                    });
                    continue;
                }
                return Err(error_at(
                    input,
                    FormulaErrorKind::Lexical,
                    i,
                    "'".into(),
                    format!("only K and U take a prime, found `{word}'`"),
                ));
            }
            out.push(Spanned {
                tok: Tok::Ident(word),
                offset: start,
            });
            continue;
        }
        let ch = input[start..].chars().next().expect("non-empty remainder");
        return Err(error_at(
            input,
            FormulaErrorKind::Lexical,
            start,
            ch.to_string(),
            format!("unexpected character `{ch}`"),
        ));
    }
    out.push(Spanned {
        tok: Tok::Eof,
        offset: input.len(),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn primes_and_relations() {
        assert_eq!(
            toks("K'(x) <= U'(y) < z"),
            vec![
                Tok::Primed("K".into()),
                Tok::LParen,
                Tok::Ident("x".into()),
                Tok::RParen,
                Tok::Le,
                Tok::Primed("U".into()),
                Tok::LParen,
                Tok::Ident("y".into()),
                Tok::RParen,
                Tok::Lt,
                Tok::Ident("z".into()),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn lexical_errors_carry_positions() {
        let e = tokenize("K({a}) # b").unwrap_err();
        assert_eq!((e.line, e.column, e.offset), (1, 8, 7));
        let e = tokenize("A'(omega)").unwrap_err();
        assert_eq!(e.kind, FormulaErrorKind::Lexical);
        assert_eq!(e.column, 2);
        let e = tokenize("omega\n  é").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }
}
