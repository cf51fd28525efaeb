use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    /// Unsigned decimal literal with its source text.
    Number(f64, String),
    /// Unsigned imaginary literal such as `0.8i`.
    Imag(f64),
    Turnstile,
    Caret,
    Amp,
    Hash,
    At,
    AtTilde,
    Comma,
    Colon,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Slash,
    Minus,
    Plus,
    Prime,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(_, s) => format!("`{s}`"),
            Tok::Imag(x) => format!("`{x}i`"),
            Tok::Eof => "end of input".to_string(),
            other => {
                let s = match other {
                    Tok::Turnstile => "|-",
                    Tok::Caret => "^",
                    Tok::Amp => "&",
                    Tok::Hash => "#",
                    Tok::At => "@",
                    Tok::AtTilde => "@~",
                    Tok::Comma => ",",
                    Tok::Colon => ":",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::Slash => "/",
                    Tok::Minus => "-",
                    Tok::Plus => "+",
                    Tok::Prime => "'",
                    _ => unreachable!(),
                };
                format!("`{s}`")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let span = |len: usize| SourceSpan {
            line,
            column: col,
            length: len,
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            (Tok::Ident(chars[start..j].iter().collect()), j - start)
        } else if c.is_ascii_digit() {
            let start = i;
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if chars.get(j) == Some(&'.') && chars.get(j + 1).is_some_and(|d| d.is_ascii_digit()) {
                j += 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            }
            let text: String = chars[start..j].iter().collect();
            let value: f64 = text.parse().map_err(|_| ParseError::SyntaxError {
                message: format!("bad number `{text}`"),
                span: span(j - start),
            })?;
            let imaginary = chars.get(j) == Some(&'i')
                && !chars
                    .get(j + 1)
                    .is_some_and(|d| d.is_ascii_alphanumeric() || *d == '_');
            if imaginary {
                (Tok::Imag(value), j + 1 - start)
            } else {
                (Tok::Number(value, text), j - start)
            }
        } else {
            let next = chars.get(i + 1).copied();
            match (c, next) {
                ('|', Some('-')) => (Tok::Turnstile, 2),
                ('@', Some('~')) => (Tok::AtTilde, 2),
                ('^', _) => (Tok::Caret, 1),
                ('&', _) => (Tok::Amp, 1),
                ('#', _) => (Tok::Hash, 1),
                ('@', _) => (Tok::At, 1),
                (',', _) => (Tok::Comma, 1),
                (':', _) => (Tok::Colon, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('[', _) => (Tok::LBracket, 1),
                (']', _) => (Tok::RBracket, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                ('/', _) => (Tok::Slash, 1),
                ('-', _) => (Tok::Minus, 1),
                ('+', _) => (Tok::Plus, 1),
                ('\'', _) => (Tok::Prime, 1),
                _ => {
                    return Err(ParseError::SyntaxError {
                        message: format!("unexpected character `{c}`"),
                        span: span(1),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            span: span(len),
        });
        i += len;
        col += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan {
            line,
            column: col,
            length: 0,
        },
    });
    Ok(out)
}
