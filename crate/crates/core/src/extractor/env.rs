//! Scoped identifier-to-declared-type bindings used to qualify method calls.

use std::collections::HashMap;

/// Stack of lexical scopes mapping variable identifiers to declared-type
/// text. Bindings come from fields, parameters, locals, loop variables,
/// catch parameters, and try-with-resources declarations; lookup resolves
/// innermost-out.
#[derive(Debug, Clone, Default)]
pub struct TypeEnvironment {
    scopes: Vec<HashMap<String, String>>,
}

impl TypeEnvironment {
    pub fn new() -> Self {
        TypeEnvironment::default()
    }

    pub fn push_scope(&mut self) {
        self.scopes.push(HashMap::new());
    }

    pub fn pop_scope(&mut self) {
        self.scopes.pop();
    }

    pub fn bind(&mut self, name: impl Into<String>, declared_type: impl Into<String>) {
        if self.scopes.is_empty() {
            self.push_scope();
        }
        self.scopes
            .last_mut()
            .expect("scope pushed above")
            .insert(name.into(), declared_type.into());
    }

    pub fn lookup(&self, name: &str) -> Option<&str> {
        self.scopes
            .iter()
            .rev()
            .find_map(|scope| scope.get(name).map(String::as_str))
    }

    pub fn depth(&self) -> usize {
        self.scopes.len()
    }
}

/// Declared type of the receiver when bound, the receiver text verbatim
/// otherwise (class names used statically, unresolvable names).
pub fn resolve_receiver(receiver: &str, env: &TypeEnvironment) -> String {
    match env.lookup(receiver) {
        Some(ty) => ty.to_string(),
        None => receiver.to_string(),
    }
}
