//! Structural parser: walks the masked token stream, tracks declared types,
//! and emits per-method statement-token sequences.
//!
//! The parser is lexical, not grammatical. It understands just enough Java
//! (class bodies, member heads, statements, expressions) to anchor the four
//! token kinds and to keep the ControlOpen/BlockClose balance exact:
//! braceless control bodies get a synthetic close, bare blocks and array
//! initializers emit nothing, and every method contributes one final close
//! for its body brace.

use crate::extractor::env::{resolve_receiver, TypeEnvironment};
use crate::extractor::lexer::{LineIndex, Tok, TokKind};
use crate::extractor::{Diagnostic, MethodStructure};
use crate::token::{ControlKind, SimpleKind, StatementToken};

const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "sealed",
];

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "short", "int", "long", "char", "float", "double", "void",
];

/// Words that can never start a type or act as a call identifier.
const RESERVED: &[&str] = &[
    "if",
    "else",
    "for",
    "while",
    "do",
    "switch",
    "case",
    "default",
    "try",
    "catch",
    "finally",
    "return",
    "break",
    "continue",
    "throw",
    "throws",
    "new",
    "this",
    "super",
    "class",
    "interface",
    "enum",
    "extends",
    "implements",
    "import",
    "package",
    "instanceof",
    "assert",
    "true",
    "false",
    "null",
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
];

fn is_reserved(word: &str) -> bool {
    RESERVED.contains(&word)
}

fn is_primitive(word: &str) -> bool {
    PRIMITIVES.contains(&word)
}

#[derive(Debug)]
enum Member {
    Method {
        line_start: usize,
        line_end: usize,
        signature: String,
        params: Vec<(String, String)>,
        body_start: usize,
    },
    /// Field initializer or enum-constant argument expressions: scanned only
    /// for anonymous class bodies.
    Expr { span: (usize, usize) },
    /// Static or instance initializer block: statements are parsed for scope
    /// and anonymous bodies, but emit no tokens of their own.
    Block { body_start: usize },
    NestedType {
        name: String,
        is_enum: bool,
        body_start: usize,
    },
    /// Enum constant class body, treated like an anonymous class body.
    ConstantBody { body_start: usize },
}

pub(crate) struct ParseOutput {
    pub methods: Vec<MethodStructure>,
    pub diagnostics: Vec<Diagnostic>,
    pub class_count: usize,
}

pub(crate) fn parse_file(path: &str, masked: &str, nonblank: &[bool]) -> ParseOutput {
    let toks = crate::extractor::lexer::scan(masked);
    let lines = LineIndex::new(masked);
    let mut parser = FileParser {
        src: masked,
        toks,
        pos: 0,
        path,
        lines,
        nonblank,
        ctx_class: String::new(),
        ctx_anon: None,
        diagnostics: Vec::new(),
        methods: Vec::new(),
        anon_count: 0,
        class_count: 0,
    };
    if parser.check_brace_balance() {
        parser.parse_compilation_unit();
    }
    parser.methods.sort_by_key(|m| m.line_start);
    ParseOutput {
        methods: parser.methods,
        diagnostics: parser.diagnostics,
        class_count: parser.class_count,
    }
}

struct FileParser<'s> {
    src: &'s str,
    toks: Vec<Tok>,
    pos: usize,
    path: &'s str,
    lines: LineIndex,
    /// Per 0-based line: does the original source line contain non-whitespace?
    nonblank: &'s [bool],
    ctx_class: String,
    ctx_anon: Option<usize>,
    diagnostics: Vec<Diagnostic>,
    methods: Vec<MethodStructure>,
    anon_count: usize,
    class_count: usize,
}

impl<'s> FileParser<'s> {
    // ----- token stream helpers -------------------------------------------

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset)
    }

    fn at_punct(&self, c: u8) -> bool {
        self.peek().is_some_and(|t| t.is_punct(c))
    }

    fn at_ident(&self, word: &str) -> bool {
        self.peek()
            .is_some_and(|t| t.kind == TokKind::Ident && t.text(self.src) == word)
    }

    fn ident_text(&self) -> Option<&'s str> {
        self.peek()
            .and_then(|t| (t.kind == TokKind::Ident).then(|| t.text(self.src)))
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn eat_punct(&mut self, c: u8) -> bool {
        if self.at_punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn line_of_tok(&self, idx: usize) -> usize {
        self.toks
            .get(idx)
            .map_or(1, |t| self.lines.line_of(t.start))
    }

    fn warn(&mut self, tok_idx: usize, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            path: self.path.to_string(),
            line: self.line_of_tok(tok_idx.min(self.toks.len().saturating_sub(1))),
            message: message.into(),
        });
    }

    /// True when the tokens at `i` and `i + 1` are the given adjacent puncts.
    fn adjacent_puncts(&self, i: usize, a: u8, b: u8) -> bool {
        match (self.toks.get(i), self.toks.get(i + 1)) {
            (Some(x), Some(y)) => x.is_punct(a) && y.is_punct(b) && x.end == y.start,
            _ => false,
        }
    }

    // ----- brace balance ---------------------------------------------------

    fn check_brace_balance(&mut self) -> bool {
        let mut stack: Vec<usize> = Vec::new();
        for (i, t) in self.toks.iter().enumerate() {
            if t.is_punct(b'{') {
                stack.push(i);
            } else if t.is_punct(b'}') && stack.pop().is_none() {
                let line = self.lines.line_of(t.start);
                self.diagnostics.push(Diagnostic {
                    path: self.path.to_string(),
                    line,
                    message: "unbalanced braces: unmatched '}'".to_string(),
                });
                return false;
            }
        }
        if let Some(&open) = stack.last() {
            let line = self.line_of_tok(open);
            self.diagnostics.push(Diagnostic {
                path: self.path.to_string(),
                line,
                message: "unbalanced braces: unclosed '{'".to_string(),
            });
            return false;
        }
        true
    }

    // ----- compilation unit -------------------------------------------------

    fn parse_compilation_unit(&mut self) {
        while let Some(tok) = self.peek() {
            match tok.kind {
                TokKind::Ident => {
                    let word = tok.text(self.src);
                    if word == "class" || word == "interface" || word == "enum" {
                        let mut env = TypeEnvironment::new();
                        self.parse_type_declaration(&mut env);
                        continue;
                    }
                    self.bump();
                }
                TokKind::Punct(b'@') => {
                    if self.peek_at(1).is_some_and(|t| {
                        t.kind == TokKind::Ident && t.text(self.src) == "interface"
                    }) {
                        self.bump(); // '@'
                        let mut env = TypeEnvironment::new();
                        self.parse_type_declaration(&mut env);
                    } else {
                        self.skip_annotation();
                    }
                }
                _ => self.bump(),
            }
        }
    }

    /// At the `class`/`interface`/`enum` keyword: consumes the whole
    /// declaration including its body.
    fn parse_type_declaration(&mut self, env: &mut TypeEnvironment) {
        let is_enum = self.at_ident("enum");
        self.bump(); // keyword
        let name = match self.ident_text() {
            Some(n) => {
                let n = n.to_string();
                self.bump();
                n
            }
            None => return,
        };
        self.class_count += 1;
        // Skip type parameters, extends/implements lists up to the body.
        while let Some(tok) = self.peek() {
            if tok.is_punct(b'{') {
                break;
            }
            if tok.is_punct(b';') || tok.is_punct(b'}') {
                // A body-less declaration; nothing to extract.
                return;
            }
            self.bump();
        }
        if self.eat_punct(b'{') {
            let saved_class = std::mem::replace(&mut self.ctx_class, name);
            let saved_anon = self.ctx_anon.take();
            self.parse_type_body(env, is_enum);
            self.ctx_class = saved_class;
            self.ctx_anon = saved_anon;
        }
    }

    /// At the first token after the opening `{` of a type body. Consumes
    /// through the matching `}`. Two phases: collect members and field
    /// bindings, then process bodies with the complete field scope.
    fn parse_type_body(&mut self, env: &mut TypeEnvironment, is_enum: bool) {
        env.push_scope();
        let mut members: Vec<Member> = Vec::new();

        if is_enum {
            self.scan_enum_constants(&mut members);
        }
        self.scan_members(env, &mut members);
        let end_pos = self.pos;

        for member in members {
            match member {
                Member::Method {
                    line_start,
                    line_end,
                    signature,
                    params,
                    body_start,
                } => {
                    self.pos = body_start;
                    env.push_scope();
                    for (ty, name) in &params {
                        env.bind(name.clone(), ty.clone());
                    }
                    let mut out = Vec::new();
                    self.parse_block_stmts(&mut out, env);
                    out.push(StatementToken::BlockClose);
                    env.pop_scope();
                    let method_id = match self.ctx_anon {
                        Some(k) => format!("{}:Anon${}:{}", self.ctx_class, k, signature),
                        None => format!("{}::{}", self.ctx_class, signature),
                    };
                    let code_lines = (line_start..=line_end)
                        .filter(|l| self.nonblank.get(l - 1).copied().unwrap_or(false))
                        .count();
                    self.methods.push(MethodStructure {
                        method_id,
                        file: self.path.to_string(),
                        line_start: line_start as u32,
                        line_end: line_end as u32,
                        statements: out,
                        code_lines: code_lines as u32,
                    });
                }
                Member::Expr { span } => {
                    self.pos = span.0;
                    let mut sink = Vec::new();
                    self.scan_expr_until(&mut sink, env, span.1);
                }
                Member::Block { body_start } => {
                    self.pos = body_start;
                    env.push_scope();
                    let mut sink = Vec::new();
                    self.parse_block_stmts(&mut sink, env);
                    env.pop_scope();
                }
                Member::NestedType {
                    name,
                    is_enum,
                    body_start,
                } => {
                    self.pos = body_start;
                    let saved_class = std::mem::replace(&mut self.ctx_class, name);
                    let saved_anon = self.ctx_anon.take();
                    self.parse_type_body(env, is_enum);
                    self.ctx_class = saved_class;
                    self.ctx_anon = saved_anon;
                }
                Member::ConstantBody { body_start } => {
                    self.pos = body_start;
                    self.anon_count += 1;
                    let k = self.anon_count;
                    let saved_anon = self.ctx_anon.replace(k);
                    self.parse_type_body(env, false);
                    self.ctx_anon = saved_anon;
                }
            }
        }

        env.pop_scope();
        self.pos = end_pos;
    }

    /// Enum constant list up to the `;` separating constants from members
    /// (or the body `}`).
    fn scan_enum_constants(&mut self, members: &mut Vec<Member>) {
        loop {
            match self.peek() {
                None => return,
                Some(t) if t.is_punct(b'}') => return, // body close handled by scan_members
                Some(t) if t.is_punct(b';') => {
                    self.bump();
                    return;
                }
                Some(t) if t.is_punct(b',') => {
                    self.bump();
                }
                Some(t) if t.is_punct(b'@') => self.skip_annotation(),
                Some(t) if t.kind == TokKind::Ident => {
                    self.bump(); // constant name
                    if self.at_punct(b'(') {
                        self.bump();
                        let arg_start = self.pos;
                        let arg_end = self.skip_balanced_parens();
                        members.push(Member::Expr {
                            span: (arg_start, arg_end),
                        });
                    }
                    if self.at_punct(b'{') {
                        self.bump();
                        let body_start = self.pos;
                        self.skip_balanced_braces();
                        members.push(Member::ConstantBody { body_start });
                    }
                }
                Some(_) => self.bump(),
            }
        }
    }

    /// Member scan for one type body; consumes through the matching `}`.
    fn scan_members(&mut self, env: &mut TypeEnvironment, members: &mut Vec<Member>) {
        loop {
            let Some(tok) = self.peek() else { return };
            if tok.is_punct(b'}') {
                self.bump();
                return;
            }
            if tok.is_punct(b';') {
                self.bump();
                continue;
            }
            if tok.is_punct(b'@') {
                if self
                    .peek_at(1)
                    .is_some_and(|t| t.kind == TokKind::Ident && t.text(self.src) == "interface")
                {
                    self.bump();
                    self.scan_type_member_decl(members);
                } else {
                    self.skip_annotation();
                }
                continue;
            }

            let start = self.pos;
            let mut is_static = false;
            while let Some(word) = self.ident_text() {
                if MODIFIERS.contains(&word) {
                    is_static = is_static || word == "static";
                    self.bump();
                } else {
                    break;
                }
            }

            match self.peek() {
                None => return,
                Some(t) if t.is_punct(b'{') => {
                    // Static or instance initializer block.
                    let _ = is_static;
                    self.bump();
                    let body_start = self.pos;
                    self.skip_balanced_braces();
                    members.push(Member::Block { body_start });
                }
                Some(t)
                    if t.kind == TokKind::Ident
                        && matches!(t.text(self.src), "class" | "interface" | "enum") =>
                {
                    self.scan_type_member_decl(members);
                }
                _ => self.scan_field_or_method(start, env, members),
            }
        }
    }

    /// Nested type declaration inside a member list; records the body span.
    fn scan_type_member_decl(&mut self, members: &mut Vec<Member>) {
        let is_enum = self.at_ident("enum");
        self.bump();
        let Some(name) = self.ident_text().map(str::to_string) else {
            return;
        };
        self.bump();
        self.class_count += 1;
        while let Some(tok) = self.peek() {
            if tok.is_punct(b'{') {
                self.bump();
                let body_start = self.pos;
                self.skip_balanced_braces();
                members.push(Member::NestedType {
                    name,
                    is_enum,
                    body_start,
                });
                return;
            }
            if tok.is_punct(b';') || tok.is_punct(b'}') {
                return;
            }
            self.bump();
        }
    }

    /// Member head after modifiers: decide field vs method by the first of
    /// `=`, `;`, `(` at bracket depth zero.
    fn scan_field_or_method(
        &mut self,
        member_start: usize,
        env: &mut TypeEnvironment,
        members: &mut Vec<Member>,
    ) {
        // Generic method/ctor type parameters.
        let mut type_params = String::new();
        if self.at_punct(b'<') {
            let tp_start = self.pos;
            self.skip_balanced_angles();
            type_params = self.join_tokens(tp_start, self.pos);
        }
        let head_start = self.pos;

        let mut probe = self.pos;
        let mut paren = 0i32;
        let mut bracket = 0i32;
        let decision = loop {
            let Some(t) = self.toks.get(probe) else {
                return;
            };
            match t.kind {
                TokKind::Punct(b'(') => {
                    if paren == 0 && bracket == 0 {
                        break Some((b'(', probe));
                    }
                    paren += 1;
                }
                TokKind::Punct(b')') => paren -= 1,
                TokKind::Punct(b'[') => bracket += 1,
                TokKind::Punct(b']') => bracket -= 1,
                TokKind::Punct(b'=') if paren == 0 && bracket == 0 => break Some((b'=', probe)),
                TokKind::Punct(b';') if paren == 0 && bracket == 0 => break Some((b';', probe)),
                TokKind::Punct(b'{') | TokKind::Punct(b'}') => break None,
                _ => {}
            }
            probe += 1;
        };

        match decision {
            Some((b'(', paren_idx)) => {
                self.scan_method_member(member_start, head_start, paren_idx, type_params, members)
            }
            Some((b'=', _)) | Some((b';', _)) => self.scan_field_member(env, members),
            _ => {
                self.warn(self.pos, "unrecognized class member skipped");
                // Recover at the next ';' or '}' at this level.
                while let Some(t) = self.peek() {
                    if t.is_punct(b';') {
                        self.bump();
                        break;
                    }
                    if t.is_punct(b'}') {
                        break;
                    }
                    if t.is_punct(b'{') {
                        self.bump();
                        self.skip_balanced_braces();
                        break;
                    }
                    self.bump();
                }
            }
        }
    }

    fn scan_method_member(
        &mut self,
        member_start: usize,
        head_start: usize,
        paren_idx: usize,
        type_params: String,
        members: &mut Vec<Member>,
    ) {
        // Name is the last identifier before '('; everything before it in the
        // head is the return type (empty for constructors).
        if paren_idx == head_start {
            return; // stray '(' — nothing we can do
        }
        let name_idx = paren_idx - 1;
        let name = match self.toks[name_idx].kind {
            TokKind::Ident => self.toks[name_idx].text(self.src).to_string(),
            _ => {
                self.pos = paren_idx;
                self.recover_past_member_tail();
                return;
            }
        };
        let ret = self.join_tokens(head_start, name_idx);
        self.pos = paren_idx + 1;
        let params = self.parse_param_list();

        // Tail: throws list or annotation-member default, then body or ';'.
        let mut body_start = None;
        while let Some(t) = self.peek() {
            if t.kind == TokKind::Ident && t.text(self.src) == "default" {
                // Annotation-member default value; a `{...}` here is an
                // array value, not a body.
                self.bump();
                if self.eat_punct(b'{') {
                    self.skip_balanced_braces();
                }
                continue;
            }
            if t.is_punct(b'@') {
                self.skip_annotation();
                continue;
            }
            if t.is_punct(b'{') {
                self.bump();
                body_start = Some(self.pos);
                break;
            }
            if t.is_punct(b';') {
                self.bump();
                break; // abstract/native: no body, no structure
            }
            if t.is_punct(b'}') {
                break;
            }
            self.bump();
        }
        let Some(body_start) = body_start else { return };
        let body_end = self.skip_balanced_braces();
        let line_start = self.line_of_tok(member_start);
        let line_end = self.line_of_tok(body_end);

        let rendered_params: Vec<String> =
            params.iter().map(|(ty, n)| format!("{ty} {n}")).collect();
        let mut signature = String::new();
        if !type_params.is_empty() {
            signature.push_str(&type_params);
            signature.push(' ');
        }
        if !ret.is_empty() {
            signature.push_str(&ret);
            signature.push(' ');
        }
        signature.push_str(&name);
        signature.push('(');
        signature.push_str(&rendered_params.join(", "));
        signature.push(')');

        members.push(Member::Method {
            line_start,
            line_end,
            signature,
            params,
            body_start,
        });
    }

    /// Parses `( [final] Type name, ... )`, consuming the closing paren.
    fn parse_param_list(&mut self) -> Vec<(String, String)> {
        let mut params = Vec::new();
        loop {
            match self.peek() {
                None => return params,
                Some(t) if t.is_punct(b')') => {
                    self.bump();
                    return params;
                }
                Some(t) if t.is_punct(b',') => {
                    self.bump();
                }
                Some(t) if t.is_punct(b'@') => self.skip_annotation(),
                Some(t) if t.kind == TokKind::Ident && t.text(self.src) == "final" => self.bump(),
                _ => {
                    let Some(mut ty) = self.parse_type_text() else {
                        // Give up on this list; recover at ')'.
                        let mut depth = 0i32;
                        while let Some(t) = self.peek() {
                            if t.is_punct(b'(') {
                                depth += 1;
                            } else if t.is_punct(b')') {
                                if depth == 0 {
                                    self.bump();
                                    return params;
                                }
                                depth -= 1;
                            }
                            self.bump();
                        }
                        return params;
                    };
                    // Varargs: three '.' puncts.
                    if self.at_punct(b'.')
                        && self.peek_at(1).is_some_and(|t| t.is_punct(b'.'))
                        && self.peek_at(2).is_some_and(|t| t.is_punct(b'.'))
                    {
                        self.pos += 3;
                        ty.push_str("...");
                    }
                    let Some(name) = self.ident_text().map(str::to_string) else {
                        continue;
                    };
                    self.bump();
                    // C-style array suffix binds to this parameter.
                    while self.at_punct(b'[') && self.peek_at(1).is_some_and(|t| t.is_punct(b']')) {
                        self.pos += 2;
                        ty.push_str("[]");
                    }
                    params.push((ty, name));
                }
            }
        }
    }

    /// Field declaration: binds every declarator into the innermost scope and
    /// records initializer spans for the anonymous-body scan.
    fn scan_field_member(&mut self, env: &mut TypeEnvironment, members: &mut Vec<Member>) {
        let Some(base) = self.parse_type_text() else {
            self.warn(self.pos, "unrecognized class member skipped");
            while let Some(t) = self.peek() {
                if t.is_punct(b';') {
                    self.bump();
                    return;
                }
                if t.is_punct(b'}') {
                    return;
                }
                self.bump();
            }
            return;
        };
        while let Some(name) = self.ident_text().map(str::to_string) {
            self.bump();
            let mut ty = base.clone();
            while self.at_punct(b'[') && self.peek_at(1).is_some_and(|t| t.is_punct(b']')) {
                self.pos += 2;
                ty.push_str("[]");
            }
            env.bind(name, ty);
            if self.eat_punct(b'=') {
                let init_start = self.pos;
                let init_end = self.skip_initializer();
                members.push(Member::Expr {
                    span: (init_start, init_end),
                });
            }
            if self.eat_punct(b',') {
                continue;
            }
            break;
        }
        self.eat_punct(b';');
    }

    /// Skips an initializer expression up to `,` or `;` at depth zero;
    /// returns the end position (exclusive) without consuming the terminator.
    fn skip_initializer(&mut self) -> usize {
        let mut paren = 0i32;
        let mut bracket = 0i32;
        let mut brace = 0i32;
        while let Some(t) = self.peek() {
            match t.kind {
                TokKind::Punct(b'(') => paren += 1,
                TokKind::Punct(b')') => paren -= 1,
                TokKind::Punct(b'[') => bracket += 1,
                TokKind::Punct(b']') => bracket -= 1,
                TokKind::Punct(b'{') => brace += 1,
                TokKind::Punct(b'}') => {
                    if brace == 0 {
                        return self.pos;
                    }
                    brace -= 1;
                }
                TokKind::Punct(b',') | TokKind::Punct(b';')
                    if paren == 0 && bracket == 0 && brace == 0 =>
                {
                    return self.pos;
                }
                _ => {}
            }
            self.bump();
        }
        self.pos
    }

    fn recover_past_member_tail(&mut self) {
        while let Some(t) = self.peek() {
            if t.is_punct(b';') {
                self.bump();
                return;
            }
            if t.is_punct(b'{') {
                self.bump();
                self.skip_balanced_braces();
                return;
            }
            if t.is_punct(b'}') {
                return;
            }
            self.bump();
        }
    }

    // ----- raw skipping helpers ---------------------------------------------

    /// At the token after an opening `{`: skips to and consumes the matching
    /// `}`; returns its token index.
    fn skip_balanced_braces(&mut self) -> usize {
        let mut depth = 0i32;
        while let Some(t) = self.peek() {
            if t.is_punct(b'{') {
                depth += 1;
            } else if t.is_punct(b'}') {
                if depth == 0 {
                    let idx = self.pos;
                    self.bump();
                    return idx;
                }
                depth -= 1;
            }
            self.bump();
        }
        self.pos
    }

    /// At the token after an opening `(`: skips to and consumes the matching
    /// `)`; returns its token index.
    fn skip_balanced_parens(&mut self) -> usize {
        let mut depth = 0i32;
        while let Some(t) = self.peek() {
            if t.is_punct(b'(') {
                depth += 1;
            } else if t.is_punct(b')') {
                if depth == 0 {
                    let idx = self.pos;
                    self.bump();
                    return idx;
                }
                depth -= 1;
            }
            self.bump();
        }
        self.pos
    }

    /// At an opening `<`: consumes the balanced angle run.
    fn skip_balanced_angles(&mut self) {
        let mut depth = 0i32;
        while let Some(t) = self.peek() {
            if t.is_punct(b'<') {
                depth += 1;
            } else if t.is_punct(b'>') {
                depth -= 1;
                if depth == 0 {
                    self.bump();
                    return;
                }
            } else if t.is_punct(b'(')
                || t.is_punct(b')')
                || t.is_punct(b'{')
                || t.is_punct(b'}')
                || t.is_punct(b';')
            {
                return; // not generics after all
            }
            self.bump();
        }
    }

    /// `@` at current position: consumes the annotation and its arguments.
    fn skip_annotation(&mut self) {
        self.bump(); // '@'
        if self.peek().is_some_and(|t| t.kind == TokKind::Ident) {
            self.bump();
            while self.at_punct(b'.') && self.peek_at(1).is_some_and(|t| t.kind == TokKind::Ident) {
                self.pos += 2;
            }
        }
        if self.eat_punct(b'(') {
            self.skip_balanced_parens();
        }
    }

    // ----- type parsing ------------------------------------------------------

    /// Renders a token range for signature text: adjacent identifiers keep a
    /// single separating space, punctuation attaches directly.
    fn join_tokens(&self, start: usize, end: usize) -> String {
        let mut text = String::new();
        let mut prev_ident = false;
        for t in &self.toks[start..end] {
            let is_ident = matches!(t.kind, TokKind::Ident | TokKind::Number);
            if is_ident && prev_ident {
                text.push(' ');
            }
            text.push_str(t.text(self.src));
            prev_ident = is_ident;
        }
        text
    }

    /// Renders a token range as declared-type text with every internal space
    /// deleted, so type-qualified call tokens never contain whitespace.
    fn join_type_text(&self, start: usize, end: usize) -> String {
        let mut text = String::new();
        for t in &self.toks[start..end] {
            text.push_str(t.text(self.src));
        }
        text
    }

    /// Attempts to parse a type at the current position; restores the
    /// position on failure. Returns normalized type text.
    fn parse_type_text(&mut self) -> Option<String> {
        let saved = self.pos;
        while self.at_punct(b'@') {
            self.skip_annotation();
        }
        if self.at_ident("final") {
            self.bump();
        }
        let start = self.pos;
        let base = self.ident_text()?;
        if is_reserved(base) && !is_primitive(base) {
            self.pos = saved;
            return None;
        }
        let primitive = is_primitive(base);
        self.bump();
        if !primitive {
            loop {
                // Qualified segments.
                if self.at_punct(b'.') && self.peek_at(1).is_some_and(|t| t.kind == TokKind::Ident)
                {
                    // Do not swallow ".someMethod(" chains: a type segment is
                    // never directly followed by '('.
                    if self.peek_at(2).is_some_and(|t| t.is_punct(b'(')) {
                        break;
                    }
                    self.pos += 2;
                    continue;
                }
                // Generic arguments.
                if self.at_punct(b'<') {
                    if !self.try_consume_type_arguments() {
                        self.pos = saved;
                        return None;
                    }
                    continue;
                }
                break;
            }
        }
        // Array dimensions.
        while self.at_punct(b'[') && self.peek_at(1).is_some_and(|t| t.is_punct(b']')) {
            self.pos += 2;
        }
        Some(self.join_type_text(start, self.pos))
    }

    /// Balanced `<...>` containing only type-ish tokens. Fails (restoring
    /// nothing; caller restores) when expression tokens appear, so `a < b`
    /// never reads as generics.
    fn try_consume_type_arguments(&mut self) -> bool {
        let mut depth = 0i32;
        while let Some(t) = self.peek() {
            match t.kind {
                TokKind::Punct(b'<') => depth += 1,
                TokKind::Punct(b'>') => {
                    depth -= 1;
                    if depth == 0 {
                        self.bump();
                        return true;
                    }
                }
                TokKind::Punct(b'.')
                | TokKind::Punct(b',')
                | TokKind::Punct(b'?')
                | TokKind::Punct(b'[')
                | TokKind::Punct(b']')
                | TokKind::Punct(b'&')
                | TokKind::Punct(b'@') => {}
                TokKind::Ident => {}
                _ => return false,
            }
            self.bump();
        }
        false
    }

    // ----- statements ----------------------------------------------------------

    /// Inside a block after its `{`: parses statements and consumes the
    /// matching `}` without emitting anything for it.
    fn parse_block_stmts(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        loop {
            match self.peek() {
                None => return,
                Some(t) if t.is_punct(b'}') => {
                    self.bump();
                    return;
                }
                _ => {
                    let before = self.pos;
                    self.parse_statement(out, env);
                    if self.pos == before {
                        self.bump(); // never stall
                    }
                }
            }
        }
    }

    fn parse_statement(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        loop {
            let Some(tok) = self.peek() else { return };
            match tok.kind {
                TokKind::Punct(b';') => {
                    self.bump();
                    return;
                }
                TokKind::Punct(b'{') => {
                    // Bare block: braces emit nothing.
                    self.bump();
                    env.push_scope();
                    self.parse_block_stmts(out, env);
                    env.pop_scope();
                    return;
                }
                TokKind::Punct(b'@') => {
                    self.skip_annotation();
                    continue;
                }
                TokKind::Ident => {
                    let word = tok.text(self.src);
                    match word {
                        "if" => return self.parse_if(out, env),
                        "else" => {
                            // Orphaned else (recovery): treat as an arm.
                            self.bump();
                            if self.at_ident("if") {
                                self.bump();
                                self.parse_paren_header(out, env);
                                out.push(StatementToken::ControlOpen(ControlKind::ElseIf));
                            } else {
                                out.push(StatementToken::ControlOpen(ControlKind::Else));
                            }
                            return self.parse_control_body(out, env);
                        }
                        "switch" => return self.parse_switch(out, env),
                        "while" => {
                            self.bump();
                            self.parse_paren_header(out, env);
                            out.push(StatementToken::ControlOpen(ControlKind::While));
                            return self.parse_control_body(out, env);
                        }
                        "do" => return self.parse_do(out, env),
                        "for" => return self.parse_for(out, env),
                        "try" => return self.parse_try(out, env),
                        "synchronized" => {
                            self.bump();
                            if self.at_punct(b'(') {
                                self.parse_paren_header(out, env);
                                out.push(StatementToken::ControlOpen(ControlKind::Synchronized));
                                return self.parse_control_body(out, env);
                            }
                            continue;
                        }
                        "return" => {
                            self.bump();
                            out.push(StatementToken::SimpleControl(SimpleKind::Return));
                            self.scan_expr_stmt_tail(out, env);
                            return;
                        }
                        "throw" => {
                            self.bump();
                            out.push(StatementToken::SimpleControl(SimpleKind::Throw));
                            self.scan_expr_stmt_tail(out, env);
                            return;
                        }
                        "break" => {
                            self.bump();
                            out.push(StatementToken::SimpleControl(SimpleKind::Break));
                            self.scan_expr_stmt_tail(out, env);
                            return;
                        }
                        "continue" => {
                            self.bump();
                            out.push(StatementToken::SimpleControl(SimpleKind::Continue));
                            self.scan_expr_stmt_tail(out, env);
                            return;
                        }
                        "assert" => {
                            self.bump();
                            self.scan_expr_stmt_tail(out, env);
                            return;
                        }
                        "class" | "enum" => {
                            // Local class declaration.
                            self.parse_type_declaration(env);
                            return;
                        }
                        _ => return self.parse_decl_or_expr_stmt(out, env),
                    }
                }
                _ => {
                    // Expression statement starting with a punct (cast,
                    // prefix operator, ...).
                    self.scan_expr_stmt_tail(out, env);
                    return;
                }
            }
        }
    }

    /// Scans an expression to `;` at depth zero and consumes the terminator.
    fn scan_expr_stmt_tail(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        let stop = self.scan_expr(out, env, Stop::SEMI);
        if stop == Some(b';') {
            self.bump();
        }
    }

    fn parse_decl_or_expr_stmt(
        &mut self,
        out: &mut Vec<StatementToken>,
        env: &mut TypeEnvironment,
    ) {
        if let Some((base, first_name, first_ty)) = self.try_declaration_head(b"=;,") {
            env.bind(first_name, first_ty);
            loop {
                if self.eat_punct(b'=') {
                    let stop = self.scan_expr(out, env, Stop::COMMA_SEMI);
                    if stop.is_none() {
                        return;
                    }
                }
                if self.eat_punct(b',') {
                    let Some(name) = self.ident_text().map(str::to_string) else {
                        break;
                    };
                    self.bump();
                    let mut ty = base.clone();
                    while self.at_punct(b'[') && self.peek_at(1).is_some_and(|t| t.is_punct(b']')) {
                        self.pos += 2;
                        ty.push_str("[]");
                    }
                    env.bind(name, ty);
                    continue;
                }
                break;
            }
            self.eat_punct(b';');
            return;
        }
        // Label?
        if self.peek().is_some_and(|t| t.kind == TokKind::Ident)
            && self.peek_at(1).is_some_and(|t| t.is_punct(b':'))
            && !self.adjacent_puncts(self.pos + 1, b':', b':')
        {
            self.pos += 2;
            self.parse_statement(out, env);
            return;
        }
        self.scan_expr_stmt_tail(out, env);
    }

    /// Declaration head `Type name` followed by one of `allowed`; returns
    /// (base type text, name, per-declarator type text).
    fn try_declaration_head(&mut self, allowed: &[u8]) -> Option<(String, String, String)> {
        let saved = self.pos;
        let base = match self.parse_type_text() {
            Some(b) => b,
            None => {
                self.pos = saved;
                return None;
            }
        };
        let Some(name) = self.ident_text() else {
            self.pos = saved;
            return None;
        };
        if is_reserved(name) {
            self.pos = saved;
            return None;
        }
        let name = name.to_string();
        self.bump();
        let mut ty = base.clone();
        while self.at_punct(b'[') && self.peek_at(1).is_some_and(|t| t.is_punct(b']')) {
            self.pos += 2;
            ty.push_str("[]");
        }
        match self.peek() {
            Some(t) if matches!(t.kind, TokKind::Punct(c) if allowed.contains(&c)) => {
                Some((base, name, ty))
            }
            _ => {
                self.pos = saved;
                None
            }
        }
    }

    // ----- control statements ---------------------------------------------------

    /// `( ... )` condition/header: calls inside are emitted before the
    /// caller's ControlOpen token. Consumes both parens.
    fn parse_paren_header(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        if !self.eat_punct(b'(') {
            return;
        }
        let stop = self.scan_expr(out, env, Stop::PAREN);
        if stop == Some(b')') {
            self.bump();
        }
    }

    /// Braced or braceless control body; always emits exactly one BlockClose.
    fn parse_control_body(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        if self.eat_punct(b'{') {
            env.push_scope();
            self.parse_block_stmts(out, env);
            env.pop_scope();
        } else {
            env.push_scope();
            let before = self.pos;
            self.parse_statement(out, env);
            if self.pos == before {
                self.bump();
            }
            env.pop_scope();
        }
        out.push(StatementToken::BlockClose);
    }

    fn parse_if(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        self.bump(); // 'if'
        self.parse_paren_header(out, env);
        out.push(StatementToken::ControlOpen(ControlKind::If));
        self.parse_control_body(out, env);
        while self.at_ident("else") {
            self.bump();
            if self.at_ident("if") {
                self.bump();
                self.parse_paren_header(out, env);
                out.push(StatementToken::ControlOpen(ControlKind::ElseIf));
                self.parse_control_body(out, env);
            } else {
                out.push(StatementToken::ControlOpen(ControlKind::Else));
                self.parse_control_body(out, env);
                break;
            }
        }
    }

    fn parse_do(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        self.bump(); // 'do'
        out.push(StatementToken::ControlOpen(ControlKind::Do));
        self.parse_control_body(out, env);
        // Trailing while: condition calls are still extracted, but the
        // construct itself already produced its token.
        if self.at_ident("while") {
            self.bump();
            self.parse_paren_header(out, env);
        }
        self.eat_punct(b';');
    }

    fn parse_for(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        self.bump(); // 'for'
        env.push_scope();
        if self.eat_punct(b'(') {
            if self.at_punct(b';') {
                self.bump();
                self.scan_classic_for_tail(out, env);
            } else if let Some((base, name, ty)) = self.try_declaration_head(b"=;,:") {
                env.bind(name, ty);
                if self.eat_punct(b':') {
                    // Enhanced for.
                    let stop = self.scan_expr(out, env, Stop::PAREN);
                    if stop == Some(b')') {
                        self.bump();
                    }
                } else {
                    // Classic for with a declared induction variable.
                    loop {
                        if self.eat_punct(b'=') {
                            let stop = self.scan_expr(out, env, Stop::COMMA_SEMI);
                            if stop.is_none() {
                                break;
                            }
                        }
                        if self.eat_punct(b',') {
                            if let Some(name) = self.ident_text().map(str::to_string) {
                                self.bump();
                                env.bind(name, base.clone());
                            }
                            continue;
                        }
                        break;
                    }
                    self.eat_punct(b';');
                    self.scan_classic_for_tail(out, env);
                }
            } else {
                // Expression initializer.
                let stop = self.scan_expr(out, env, Stop::SEMI_PAREN);
                if stop == Some(b';') {
                    self.bump();
                    self.scan_classic_for_tail(out, env);
                } else if stop == Some(b')') {
                    self.bump();
                }
            }
        }
        out.push(StatementToken::ControlOpen(ControlKind::For));
        self.parse_control_body(out, env);
        env.pop_scope();
    }

    fn scan_classic_for_tail(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        let stop = self.scan_expr(out, env, Stop::SEMI_PAREN);
        if stop == Some(b';') {
            self.bump();
            let stop = self.scan_expr(out, env, Stop::PAREN);
            if stop == Some(b')') {
                self.bump();
            }
        } else if stop == Some(b')') {
            self.bump();
        }
    }

    fn parse_try(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        self.bump(); // 'try'
        env.push_scope();
        if self.eat_punct(b'(') {
            // Resource declarations: `Type name = expr; ...`
            loop {
                match self.peek() {
                    None => break,
                    Some(t) if t.is_punct(b')') => {
                        self.bump();
                        break;
                    }
                    Some(t) if t.is_punct(b';') => {
                        self.bump();
                    }
                    _ => {
                        if let Some((_, name, ty)) = self.try_declaration_head(b"=") {
                            env.bind(name, ty);
                            self.bump(); // '='
                        }
                        let stop = self.scan_expr(out, env, Stop::SEMI_PAREN);
                        if stop.is_none() {
                            break;
                        }
                    }
                }
            }
        }
        out.push(StatementToken::ControlOpen(ControlKind::Try));
        if self.eat_punct(b'{') {
            env.push_scope();
            self.parse_block_stmts(out, env);
            env.pop_scope();
        }
        out.push(StatementToken::BlockClose);
        env.pop_scope();

        while self.at_ident("catch") {
            self.bump();
            env.push_scope();
            if self.eat_punct(b'(') {
                self.parse_catch_param(env);
            }
            out.push(StatementToken::ControlOpen(ControlKind::Catch));
            if self.eat_punct(b'{') {
                self.parse_block_stmts(out, env);
            }
            out.push(StatementToken::BlockClose);
            env.pop_scope();
        }
        if self.at_ident("finally") {
            self.bump();
            out.push(StatementToken::ControlOpen(ControlKind::Finally));
            if self.eat_punct(b'{') {
                env.push_scope();
                self.parse_block_stmts(out, env);
                env.pop_scope();
            }
            out.push(StatementToken::BlockClose);
        }
    }

    /// `( [final] Type (| Type)* name )`; multi-catch binds the joined type.
    fn parse_catch_param(&mut self, env: &mut TypeEnvironment) {
        if self.at_ident("final") {
            self.bump();
        }
        while self.at_punct(b'@') {
            self.skip_annotation();
        }
        let mut ty = match self.parse_type_text() {
            Some(t) => t,
            None => {
                // Recover at ')'.
                while let Some(t) = self.peek() {
                    if t.is_punct(b')') {
                        self.bump();
                        return;
                    }
                    self.bump();
                }
                return;
            }
        };
        while self.eat_punct(b'|') {
            if let Some(more) = self.parse_type_text() {
                ty.push('|');
                ty.push_str(&more);
            }
        }
        if let Some(name) = self.ident_text().map(str::to_string) {
            self.bump();
            env.bind(name, ty);
        }
        // Consume to ')'.
        while let Some(t) = self.peek() {
            if t.is_punct(b')') {
                self.bump();
                return;
            }
            self.bump();
        }
    }

    fn parse_switch(&mut self, out: &mut Vec<StatementToken>, env: &mut TypeEnvironment) {
        self.bump(); // 'switch'
        self.parse_paren_header(out, env);
        out.push(StatementToken::ControlOpen(ControlKind::Switch));
        if !self.eat_punct(b'{') {
            out.push(StatementToken::BlockClose);
            return;
        }
        env.push_scope();
        loop {
            match self.peek() {
                None => break,
                Some(t) if t.is_punct(b'}') => {
                    self.bump();
                    break;
                }
                Some(t) if t.kind == TokKind::Ident && t.text(self.src) == "case" => {
                    self.bump();
                    self.skip_case_label();
                }
                Some(t) if t.kind == TokKind::Ident && t.text(self.src) == "default" => {
                    self.bump();
                    self.eat_punct(b':');
                }
                _ => {
                    let before = self.pos;
                    self.parse_statement(out, env);
                    if self.pos == before {
                        self.bump();
                    }
                }
            }
        }
        env.pop_scope();
        out.push(StatementToken::BlockClose);
    }

    /// Constant expression up to the label `:`; each `?` pairs with one `:`.
    fn skip_case_label(&mut self) {
        let mut paren = 0i32;
        let mut ternary = 0i32;
        while let Some(t) = self.peek() {
            match t.kind {
                TokKind::Punct(b'(') => paren += 1,
                TokKind::Punct(b')') => paren -= 1,
                TokKind::Punct(b'?') => ternary += 1,
                TokKind::Punct(b':') if paren == 0 => {
                    if ternary > 0 {
                        ternary -= 1;
                    } else {
                        self.bump();
                        return;
                    }
                }
                TokKind::Punct(b'{') | TokKind::Punct(b'}') | TokKind::Punct(b';') => return,
                _ => {}
            }
            self.bump();
        }
    }

    // ----- expressions -----------------------------------------------------------

    /// Scans an expression span that was recorded earlier (field
    /// initializers, enum constant arguments).
    fn scan_expr_until(
        &mut self,
        out: &mut Vec<StatementToken>,
        env: &mut TypeEnvironment,
        end: usize,
    ) {
        while self.pos < end {
            let before = self.pos;
            let _ = self.scan_expr_bounded(out, env, Stop::NONE, end);
            if self.pos == before {
                self.bump();
            }
        }
    }

    fn scan_expr(
        &mut self,
        out: &mut Vec<StatementToken>,
        env: &mut TypeEnvironment,
        stop: Stop,
    ) -> Option<u8> {
        self.scan_expr_bounded(out, env, stop, usize::MAX)
    }

    /// The expression scanner. Emits method-call tokens, tracks `new` for
    /// constructor and anonymous-body handling, skips lambda bodies and
    /// method references (unsupported constructs) with a diagnostic.
    ///
    /// Stops at the requested terminator at relative depth zero and returns
    /// it without consuming; `}` at depth zero always stops.
    fn scan_expr_bounded(
        &mut self,
        out: &mut Vec<StatementToken>,
        env: &mut TypeEnvironment,
        stop: Stop,
        end: usize,
    ) -> Option<u8> {
        let mut paren_kinds: Vec<ParenKind> = Vec::new();
        let mut bracket = 0i32;
        let mut brace = 0i32;
        let mut pending_new = false;
        while self.pos < end {
            let tok = self.peek()?;
            match tok.kind {
                TokKind::Punct(b';') if paren_kinds.is_empty() && bracket == 0 && brace == 0 => {
                    if stop.semi {
                        return Some(b';');
                    }
                    self.bump();
                }
                TokKind::Punct(b',')
                    if paren_kinds.is_empty() && bracket == 0 && brace == 0 && stop.comma =>
                {
                    return Some(b',');
                }
                TokKind::Punct(b'(') => {
                    paren_kinds.push(if pending_new {
                        ParenKind::Ctor
                    } else {
                        ParenKind::Plain
                    });
                    pending_new = false;
                    self.bump();
                }
                TokKind::Punct(b')') => match paren_kinds.pop() {
                    None => return Some(b')'),
                    Some(ParenKind::Ctor) => {
                        self.bump();
                        if self.at_punct(b'{') {
                            self.enter_anonymous_body(env);
                        }
                    }
                    Some(ParenKind::Plain) => {
                        self.bump();
                    }
                },
                TokKind::Punct(b'[') => {
                    bracket += 1;
                    pending_new = false;
                    self.bump();
                }
                TokKind::Punct(b']') => {
                    if bracket > 0 {
                        bracket -= 1;
                    }
                    self.bump();
                }
                TokKind::Punct(b'{') => {
                    brace += 1;
                    self.bump();
                }
                TokKind::Punct(b'}') => {
                    if brace == 0 {
                        return Some(b'}');
                    }
                    brace -= 1;
                    self.bump();
                }
                TokKind::Punct(b'-') if self.adjacent_puncts(self.pos, b'-', b'>') => {
                    self.warn(self.pos, "lambda body skipped");
                    self.pos += 2;
                    self.skip_lambda_body(end);
                }
                TokKind::Punct(b':') if self.adjacent_puncts(self.pos, b':', b':') => {
                    self.warn(self.pos, "method reference skipped");
                    self.pos += 2;
                    // The referenced name (or `new`) carries no call token.
                    if self.peek().is_some_and(|t| t.kind == TokKind::Ident) {
                        self.bump();
                    }
                }
                TokKind::Punct(b'@') => self.skip_annotation(),
                TokKind::Ident => {
                    let word = tok.text(self.src);
                    if word == "new" {
                        self.bump();
                        pending_new = self.consume_new_type();
                    } else if !is_reserved(word)
                        && self.peek_at(1).is_some_and(|t| t.is_punct(b'('))
                    {
                        let name = self.qualified_call_name(self.pos, env);
                        out.push(StatementToken::MethodCall(name));
                        self.bump();
                    } else {
                        self.bump();
                    }
                }
                _ => self.bump(),
            }
        }
        None
    }

    /// After `new`: consumes the type tokens; true when a constructor
    /// argument list follows.
    fn consume_new_type(&mut self) -> bool {
        loop {
            if self.peek().is_some_and(|t| t.kind == TokKind::Ident) {
                self.bump();
            } else {
                break;
            }
            loop {
                if self.at_punct(b'.') && self.peek_at(1).is_some_and(|t| t.kind == TokKind::Ident)
                {
                    self.pos += 2;
                    continue;
                }
                if self.at_punct(b'<') {
                    self.skip_balanced_angles();
                    continue;
                }
                break;
            }
            if !self.at_punct(b'.') {
                break;
            }
        }
        self.at_punct(b'(')
    }

    /// At the `{` of an anonymous class body: assigns the occurrence index
    /// and extracts the body's methods.
    fn enter_anonymous_body(&mut self, env: &mut TypeEnvironment) {
        self.bump(); // '{'
        self.anon_count += 1;
        let k = self.anon_count;
        let saved_anon = self.ctx_anon.replace(k);
        self.parse_type_body(env, false);
        self.ctx_anon = saved_anon;
    }

    /// Single-expression lambda tail: skip to `,`, `;` or `)` at relative
    /// depth zero, or past a braced body.
    fn skip_lambda_body(&mut self, end: usize) {
        if self.at_punct(b'{') {
            self.bump();
            self.skip_balanced_braces();
            return;
        }
        let mut paren = 0i32;
        let mut bracket = 0i32;
        let mut brace = 0i32;
        while self.pos < end {
            let Some(t) = self.peek() else { return };
            match t.kind {
                TokKind::Punct(b'(') => paren += 1,
                TokKind::Punct(b')') => {
                    if paren == 0 {
                        return;
                    }
                    paren -= 1;
                }
                TokKind::Punct(b'[') => bracket += 1,
                TokKind::Punct(b']') => bracket -= 1,
                TokKind::Punct(b'{') => brace += 1,
                TokKind::Punct(b'}') => {
                    if brace == 0 {
                        return;
                    }
                    brace -= 1;
                }
                TokKind::Punct(b',') | TokKind::Punct(b';')
                    if paren == 0 && bracket == 0 && brace == 0 =>
                {
                    return;
                }
                _ => {}
            }
            self.bump();
        }
    }

    /// Call-token name for the identifier at `idx` (known to be followed by
    /// `(`): qualified by the resolved receiver when the receiver is one
    /// simple identifier, unqualified otherwise.
    fn qualified_call_name(&self, idx: usize, env: &TypeEnvironment) -> String {
        let method = self.toks[idx].text(self.src);
        if idx < 1 || !self.toks[idx - 1].is_punct(b'.') {
            return method.to_string();
        }
        if idx < 2 {
            return method.to_string();
        }
        let recv_tok = &self.toks[idx - 2];
        if recv_tok.kind != TokKind::Ident {
            return method.to_string(); // call result, paren, index, ...
        }
        let recv = recv_tok.text(self.src);
        if recv == "this" || recv == "super" {
            return method.to_string();
        }
        if is_reserved(recv) {
            return method.to_string();
        }
        if idx >= 3 && self.toks[idx - 3].is_punct(b'.') {
            return method.to_string(); // longer chain
        }
        format!("{}.{}", resolve_receiver(recv, env), method)
    }
}

#[derive(Clone, Copy)]
enum ParenKind {
    Plain,
    Ctor,
}

#[derive(Clone, Copy)]
struct Stop {
    semi: bool,
    comma: bool,
}

impl Stop {
    const NONE: Stop = Stop {
        semi: false,
        comma: false,
    };
    const SEMI: Stop = Stop {
        semi: true,
        comma: false,
    };
    const COMMA_SEMI: Stop = Stop {
        semi: true,
        comma: true,
    };
    // `)` always stops at depth zero, so these only add the other puncts.
    const PAREN: Stop = Stop {
        semi: false,
        comma: false,
    };
    const SEMI_PAREN: Stop = Stop {
        semi: true,
        comma: false,
    };
}
