//! Word/symbol scanner over masked source text.

/// Lexical token kind. Numbers are scanned as single units so that the dot in
/// `1.5f` or `0x1p3` never looks like a member access.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokKind {
    Ident,
    Number,
    Punct(u8),
}

#[derive(Debug, Clone, Copy)]
pub struct Tok {
    pub kind: TokKind,
    pub start: usize,
    pub end: usize,
}

impl Tok {
    pub fn text<'s>(&self, src: &'s str) -> &'s str {
        &src[self.start..self.end]
    }

    pub fn is_punct(&self, c: u8) -> bool {
        self.kind == TokKind::Punct(c)
    }
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_' || c == b'$' || c >= 0x80
}

fn is_ident_continue(c: u8) -> bool {
    is_ident_start(c) || c.is_ascii_digit()
}

/// Tokenizes masked text. Operators are emitted as single-byte puncts; the
/// structural parser recombines the few multi-byte ones it cares about.
pub fn scan(src: &str) -> Vec<Tok> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if is_ident_start(b) {
            let start = i;
            while i < bytes.len() && is_ident_continue(bytes[i]) {
                i += 1;
            }
            // Guard against splitting multibyte characters: extend over any
            // UTF-8 continuation bytes.
            while i < bytes.len() && (bytes[i] & 0xC0) == 0x80 {
                i += 1;
            }
            toks.push(Tok {
                kind: TokKind::Ident,
                start,
                end: i,
            });
            continue;
        }
        if b.is_ascii_digit() {
            let start = i;
            i += 1;
            while i < bytes.len() {
                let c = bytes[i];
                if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' {
                    i += 1;
                } else if (c == b'+' || c == b'-')
                    && matches!(bytes[i - 1], b'e' | b'E' | b'p' | b'P')
                {
                    // Exponent sign as in 1.5e-3 or 0x1.8p+1.
                    i += 1;
                } else {
                    break;
                }
            }
            toks.push(Tok {
                kind: TokKind::Number,
                start,
                end: i,
            });
            continue;
        }
        toks.push(Tok {
            kind: TokKind::Punct(b),
            start: i,
            end: i + 1,
        });
        i += 1;
    }
    toks
}

/// Byte offsets of line starts; maps an offset to a 1-based line number.
pub struct LineIndex {
    starts: Vec<usize>,
}

impl LineIndex {
    pub fn new(src: &str) -> Self {
        let mut starts = vec![0usize];
        for (i, b) in src.bytes().enumerate() {
            if b == b'\n' {
                starts.push(i + 1);
            }
        }
        LineIndex { starts }
    }

    pub fn line_of(&self, offset: usize) -> usize {
        match self.starts.binary_search(&offset) {
            Ok(idx) => idx + 1,
            Err(idx) => idx,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(src: &str) -> Vec<String> {
        scan(src).iter().map(|t| t.text(src).to_string()).collect()
    }

    #[test]
    fn scans_identifiers_and_puncts() {
        assert_eq!(
            texts("foo.bar(x);"),
            vec!["foo", ".", "bar", "(", "x", ")", ";"]
        );
    }

    #[test]
    fn numbers_swallow_their_dots_and_suffixes() {
        assert_eq!(
            texts("x = 1.5f + 0x1F;"),
            vec!["x", "=", "1.5f", "+", "0x1F", ";"]
        );
        assert_eq!(texts("y = 1_000.5e-3;"), vec!["y", "=", "1_000.5e-3", ";"]);
    }

    #[test]
    fn dollar_is_an_identifier_character() {
        assert_eq!(texts("a$b _c"), vec!["a$b", "_c"]);
    }

    #[test]
    fn line_index_is_one_based() {
        let idx = LineIndex::new("ab\ncd\nef");
        assert_eq!(idx.line_of(0), 1);
        assert_eq!(idx.line_of(2), 1);
        assert_eq!(idx.line_of(3), 2);
        assert_eq!(idx.line_of(6), 3);
    }
}
