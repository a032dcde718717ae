use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TokenKind {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Byte offset into the source.
    pub position: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'/' => Some(TokenKind::Slash),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b',' => Some(TokenKind::Comma),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token {
                kind,
                text: (c as char).to_string(),
                position: i,
            });
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            let end = scan_number(bytes, i);
            if end == i || !bytes[i..end].iter().any(u8::is_ascii_digit) {
                return Err(Error::Lex {
                    offset: i,
                    ch: c as char,
                });
            }
            tokens.push(Token {
                kind: TokenKind::Number,
                text: source[i..end].to_string(),
                position: i,
            });
            i = end;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let end = i + bytes[i..]
                .iter()
                .take_while(|b| b.is_ascii_alphanumeric() || **b == b'_')
                .count();
            tokens.push(Token {
                kind: TokenKind::Ident,
                text: source[i..end].to_string(),
                position: i,
            });
            i = end;
        } else {
            let ch = source[i..].chars().next().unwrap_or('\u{fffd}');
            return Err(Error::Lex { offset: i, ch });
        }
    }
    Ok(tokens)
}

fn scan_number(bytes: &[u8], start: usize) -> usize {
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    let mut j = digits(start);
    if j < bytes.len() && bytes[j] == b'.' {
        j = digits(j + 1);
    }
    if j < bytes.len() && (bytes[j] == b'e' || bytes[j] == b'E') {
        let mut k = j + 1;
        if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
            k += 1;
        }
        let end = digits(k);
        // "2e" followed by no digits is a number then an identifier
        if end > k {
            j = end;
        }
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn power() {
        let toks = tokenize("x^2").unwrap();
        assert_eq!(kinds("x^2"), vec![Ident, Caret, Number]);
        assert_eq!(toks[0].text, "x");
        assert_eq!(toks[2].text, "2");
        assert_eq!(toks[2].position, 2);
    }

    #[test]
    fn call() {
        assert_eq!(kinds("exp(x)"), vec![Ident, LParen, Ident, RParen]);
    }

    #[test]
    fn illegal_character() {
        assert_eq!(tokenize("2$x"), Err(Error::Lex { offset: 1, ch: '$' }));
        assert_eq!(
            tokenize("x ≥ 1"),
            Err(Error::Lex {
                offset: 2, ch: '≥'
            })
        );
    }

    #[test]
    fn numbers() {
        let toks = tokenize("1.5e-3 + .25 + 2E4 + 7.").unwrap();
        let texts: Vec<&str> = toks
            .iter()
            .filter(|t| t.kind == Number)
            .map(|t| t.text.as_str())
            .collect();
        assert_eq!(texts, vec!["1.5e-3", ".25", "2E4", "7."]);
        assert!(tokenize(".").is_err());
    }

    #[test]
    fn whitespace_skipped() {
        assert_eq!(
            kinds("  pow ( x , 2 )  "),
            vec![Ident, LParen, Ident, Comma, Number, RParen]
        );
    }
}
