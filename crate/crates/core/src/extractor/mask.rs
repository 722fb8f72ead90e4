//! Lexical masking: blanks comments and literal interiors before any
//! tokenization so that no statement token can originate from them.

/// Masking result. The text keeps its exact length and every newline offset;
/// comments and the interiors of string/char literals become spaces.
#[derive(Debug, Clone)]
pub struct MaskedSource {
    pub text: String,
    /// 0-based indices of lines that contain comment content.
    pub comment_lines: Vec<usize>,
    /// Warnings for constructs left open at end of file.
    pub warnings: Vec<MaskWarning>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskWarning {
    /// 1-based line where the unterminated construct starts.
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, PartialEq)]
enum State {
    Code,
    LineComment,
    BlockComment,
    StringLit,
    CharLit,
}

/// Replaces comments and string/char literal interiors with spaces. Output
/// length equals input length; newlines stay at their original offsets. An
/// unterminated block comment or literal masks to end of file and records a
/// warning, never an error.
pub fn strip_noise(text: &str) -> MaskedSource {
    let bytes = text.as_bytes();
    let mut out = bytes.to_vec();
    let mut comment_lines = Vec::new();
    let mut warnings = Vec::new();

    let mut state = State::Code;
    let mut line = 0usize;
    let mut open_line = 0usize;
    let mut escaped = false;
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        if b == b'\n' {
            line += 1;
        }
        match state {
            State::Code => match b {
                b'/' if i + 1 < bytes.len() && bytes[i + 1] == b'/' => {
                    state = State::LineComment;
                    mark_comment(&mut comment_lines, line);
                    out[i] = b' ';
                }
                b'/' if i + 1 < bytes.len() && bytes[i + 1] == b'*' => {
                    state = State::BlockComment;
                    open_line = line;
                    mark_comment(&mut comment_lines, line);
                    out[i] = b' ';
                    out[i + 1] = b' ';
                    i += 1; // skip the '*' so "/*/" does not close itself
                }
                b'"' => {
                    state = State::StringLit;
                    open_line = line;
                    escaped = false;
                }
                b'\'' => {
                    state = State::CharLit;
                    open_line = line;
                    escaped = false;
                }
                _ => {}
            },
            State::LineComment => {
                if b == b'\n' {
                    state = State::Code;
                } else {
                    mark_comment(&mut comment_lines, line);
                    out[i] = b' ';
                }
            }
            State::BlockComment => {
                if b == b'*' && i + 1 < bytes.len() && bytes[i + 1] == b'/' {
                    mark_comment(&mut comment_lines, line);
                    out[i] = b' ';
                    out[i + 1] = b' ';
                    i += 1;
                    state = State::Code;
                } else if b != b'\n' {
                    mark_comment(&mut comment_lines, line);
                    out[i] = b' ';
                }
            }
            State::StringLit | State::CharLit => {
                let quote = if state == State::StringLit {
                    b'"'
                } else {
                    b'\''
                };
                if escaped {
                    escaped = false;
                    if b != b'\n' {
                        out[i] = b' ';
                    }
                } else if b == b'\\' {
                    escaped = true;
                    out[i] = b' ';
                } else if b == quote {
                    state = State::Code;
                } else if b != b'\n' {
                    out[i] = b' ';
                }
            }
        }
        i += 1;
    }

    match state {
        State::Code | State::LineComment => {}
        State::BlockComment => warnings.push(MaskWarning {
            line: open_line + 1,
            message: "unterminated block comment".to_string(),
        }),
        State::StringLit => warnings.push(MaskWarning {
            line: open_line + 1,
            message: "unterminated string literal".to_string(),
        }),
        State::CharLit => warnings.push(MaskWarning {
            line: open_line + 1,
            message: "unterminated character literal".to_string(),
        }),
    }

    // Masking only ever writes ASCII spaces over non-newline bytes. Multibyte
    // UTF-8 sequences inside comments/literals are overwritten byte by byte,
    // which keeps the buffer valid UTF-8 because every replacement is ASCII.
    let text = String::from_utf8(out).expect("masking preserves UTF-8 validity");
    MaskedSource {
        text,
        comment_lines,
        warnings,
    }
}

fn mark_comment(lines: &mut Vec<usize>, line: usize) {
    if lines.last() != Some(&line) {
        lines.push(line);
    }
}
