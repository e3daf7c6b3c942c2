//! Interned formal symbols.
//!
//! Coefficients of a series are Laurent polynomials in a small set of
//! declared symbols (`x`, `y`, `z`, …). Symbols are interned process-wide so
//! they are cheap to copy and compare; the intern order is the order of first
//! use, which also fixes the display order inside coefficient monomials.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Symbol(u32);

struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        RwLock::new(Interner {
            names: Vec::new(),
            ids: HashMap::new(),
        })
    })
}

impl Symbol {
    /// Intern `name` and return its handle. Calling twice with the same name
    /// returns the same handle.
    pub fn new(name: &str) -> Symbol {
        {
            let guard = interner().read().unwrap();
            if let Some(&id) = guard.ids.get(name) {
                return Symbol(id);
            }
        }
        let mut guard = interner().write().unwrap();
        if let Some(&id) = guard.ids.get(name) {
            return Symbol(id);
        }
        let id = guard.names.len() as u32;
        guard.names.push(name.to_string());
        guard.ids.insert(name.to_string(), id);
        Symbol(id)
    }

    pub fn name(self) -> String {
        interner().read().unwrap().names[self.0 as usize].clone()
    }
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

/// Intern the standard formal symbols in a fixed order. Called once before
/// any parallel work so concurrent first-use cannot permute display order.
pub fn seed_standard_symbols() {
    for name in ["x", "y", "z"] {
        Symbol::new(name);
    }
}
