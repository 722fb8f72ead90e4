//! Statement tokens: the vocabulary shared by the extractor, the similarity
//! models, and the query language.
//!
//! A method is reduced to an ordered sequence of four token kinds: a control
//! statement that opens a block (`if{`, `catch{`), a simple control statement
//! (`break`, `return`), a block close (`}`), and a possibly type-qualified
//! method call (`Logger.debug`, `List<String>.add`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Control statements that open a braced block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ControlKind {
    If,
    Else,
    ElseIf,
    Switch,
    While,
    Do,
    For,
    Try,
    Catch,
    Finally,
    Synchronized,
}

impl ControlKind {
    /// The source keyword, as it appears in a canonical token (`else if` for
    /// the combined form).
    pub fn keyword(self) -> &'static str {
        match self {
            ControlKind::If => "if",
            ControlKind::Else => "else",
            ControlKind::ElseIf => "else if",
            ControlKind::Switch => "switch",
            ControlKind::While => "while",
            ControlKind::Do => "do",
            ControlKind::For => "for",
            ControlKind::Try => "try",
            ControlKind::Catch => "catch",
            ControlKind::Finally => "finally",
            ControlKind::Synchronized => "synchronized",
        }
    }

    fn from_keyword(kw: &str) -> Option<Self> {
        Some(match kw {
            "if" => ControlKind::If,
            "else" => ControlKind::Else,
            "else if" => ControlKind::ElseIf,
            "switch" => ControlKind::Switch,
            "while" => ControlKind::While,
            "do" => ControlKind::Do,
            "for" => ControlKind::For,
            "try" => ControlKind::Try,
            "catch" => ControlKind::Catch,
            "finally" => ControlKind::Finally,
            "synchronized" => ControlKind::Synchronized,
            _ => return None,
        })
    }
}

/// Control statements without a block of their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleKind {
    Break,
    Continue,
    Return,
    Throw,
}

impl SimpleKind {
    pub fn keyword(self) -> &'static str {
        match self {
            SimpleKind::Break => "break",
            SimpleKind::Continue => "continue",
            SimpleKind::Return => "return",
            SimpleKind::Throw => "throw",
        }
    }

    fn from_keyword(kw: &str) -> Option<Self> {
        Some(match kw {
            "break" => SimpleKind::Break,
            "continue" => SimpleKind::Continue,
            "return" => SimpleKind::Return,
            "throw" => SimpleKind::Throw,
            _ => return None,
        })
    }
}

/// One extracted structural element of a method.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StatementToken {
    /// A control keyword opening a block; rendered as the keyword followed by
    /// `{`, e.g. `if{` or `else if{`.
    ControlOpen(ControlKind),
    /// `break`, `continue`, `return`, or `throw`.
    SimpleControl(SimpleKind),
    /// The closing brace of a control block or of the method body.
    BlockClose,
    /// A method identifier, optionally qualified by the receiver's resolved
    /// type or verbatim identifier, e.g. `findValue` or `Logger.debug`.
    MethodCall(String),
}

impl StatementToken {
    pub fn control(kind: ControlKind) -> Self {
        StatementToken::ControlOpen(kind)
    }

    pub fn call(name: impl Into<String>) -> Self {
        StatementToken::MethodCall(name.into())
    }

    /// Canonical text rendering; parsing it back with [`parse_term`] yields an
    /// equal token.
    pub fn canonical_text(&self) -> String {
        match self {
            StatementToken::ControlOpen(kind) => format!("{}{{", kind.keyword()),
            StatementToken::SimpleControl(kind) => kind.keyword().to_string(),
            StatementToken::BlockClose => "}".to_string(),
            StatementToken::MethodCall(name) => name.clone(),
        }
    }
}

impl fmt::Display for StatementToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatementToken::ControlOpen(kind) => write!(f, "{}{{", kind.keyword()),
            StatementToken::SimpleControl(kind) => f.write_str(kind.keyword()),
            StatementToken::BlockClose => f.write_str("}"),
            StatementToken::MethodCall(name) => f.write_str(name),
        }
    }
}

/// Parses one query term into a token.
///
/// Grammar: `}` is a block close; a term ending in `{` must carry a known
/// control keyword prefix; `break`/`continue`/`return`/`throw` are simple
/// controls; anything else is a method-call term.
pub fn parse_term(raw: &str) -> Result<StatementToken, Error> {
    let term = raw.trim();
    if term.is_empty() {
        return Err(Error::QuerySyntax("empty query term".to_string()));
    }
    if term == "}" {
        return Ok(StatementToken::BlockClose);
    }
    if let Some(prefix) = term.strip_suffix('{') {
        // Collapse interior whitespace so "else  if{" still names "else if".
        let kw = prefix.split_whitespace().collect::<Vec<_>>().join(" ");
        return match ControlKind::from_keyword(&kw) {
            Some(kind) => Ok(StatementToken::ControlOpen(kind)),
            None => Err(Error::QuerySyntax(format!("unknown control keyword: {kw}"))),
        };
    }
    if let Some(kind) = SimpleKind::from_keyword(term) {
        return Ok(StatementToken::SimpleControl(kind));
    }
    if term.contains(|c: char| c.is_whitespace()) || term.contains('(') || term.contains(')') {
        return Err(Error::QuerySyntax(format!("invalid method term: {term}")));
    }
    Ok(StatementToken::MethodCall(term.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn control_tokens_render_keyword_and_brace() {
        assert_eq!(
            StatementToken::control(ControlKind::If).canonical_text(),
            "if{"
        );
        assert_eq!(
            StatementToken::control(ControlKind::ElseIf).canonical_text(),
            "else if{"
        );
        assert_eq!(
            StatementToken::control(ControlKind::Catch).canonical_text(),
            "catch{"
        );
    }

    #[test]
    fn parse_term_classifies_each_kind() {
        assert_eq!(parse_term("}").unwrap(), StatementToken::BlockClose);
        assert_eq!(
            parse_term("if{").unwrap(),
            StatementToken::control(ControlKind::If)
        );
        assert_eq!(
            parse_term(" else if{ ").unwrap(),
            StatementToken::control(ControlKind::ElseIf)
        );
        assert_eq!(
            parse_term("break").unwrap(),
            StatementToken::SimpleControl(SimpleKind::Break)
        );
        assert_eq!(
            parse_term("Iterator.next").unwrap(),
            StatementToken::call("Iterator.next")
        );
        assert_eq!(
            parse_term("List<String>.add").unwrap(),
            StatementToken::call("List<String>.add")
        );
    }

    #[test]
    fn parse_term_rejects_unknown_control_prefix() {
        let err = parse_term("foo{").unwrap_err();
        assert!(
            err.to_string().contains("unknown control keyword: foo"),
            "{err}"
        );
    }

    #[test]
    fn parse_term_rejects_empty_and_malformed() {
        assert!(parse_term("  ").is_err());
        assert!(parse_term("foo(bar)").is_err());
        assert!(parse_term("two words").is_err());
    }

    #[test]
    fn canonical_text_round_trips() {
        let tokens = [
            StatementToken::BlockClose,
            StatementToken::control(ControlKind::Synchronized),
            StatementToken::control(ControlKind::ElseIf),
            StatementToken::SimpleControl(SimpleKind::Throw),
            StatementToken::call("configuration.getRuntimeConfiguration"),
            StatementToken::call("List<String>.add"),
        ];
        for tok in tokens {
            assert_eq!(parse_term(&tok.canonical_text()).unwrap(), tok);
        }
    }
}
