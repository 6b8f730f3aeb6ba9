//! The fixed variable registry shared by every value in the crate.
//!
//! Variable order drives the graded-lex monomial order, so it is part of the
//! printed canonical form and must not change.

/// Slots in every exponent vector. Only the first `NAMES.len()` are named.
pub const MAX_VARS: usize = 32;

static NAMES: [&str; 28] = [
    "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12", "v", "X", "chi",
    "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "z", "h1", "h2", "h3", "h4",
];

pub const SATAKE_SLOTS: usize = 12;
pub const V: usize = 12;
pub const X: usize = 13;
pub const CHI: usize = 14;
pub const XS_BASE: usize = 15;
pub const XS_SLOTS: usize = 8;
pub const Z: usize = 23;
pub const H_BASE: usize = 24;
pub const H_SLOTS: usize = 4;

/// Index of the Satake variable `a{i}` (1-based `i`).
pub fn satake(i: usize) -> usize {
    assert!((1..=SATAKE_SLOTS).contains(&i), "a{i} is not registered");
    i - 1
}

/// Index of the identity slot `x{i}` (1-based `i`).
pub fn slot(i: usize) -> usize {
    assert!((1..=XS_SLOTS).contains(&i), "x{i} is not registered");
    XS_BASE + i - 1
}

/// Index of the Steinberg-pair variable `h{i}` (1-based `i`).
pub fn eta(i: usize) -> usize {
    assert!((1..=H_SLOTS).contains(&i), "h{i} is not registered");
    H_BASE + i - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarRegistry {
    names: &'static [&'static str],
}

static STANDARD: VarRegistry = VarRegistry { names: &NAMES };

impl VarRegistry {
    pub fn standard() -> &'static VarRegistry {
        &STANDARD
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, idx: usize) -> &'static str {
        self.names[idx]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| *n == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.names.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_unique_and_lookup_total() {
        let r = VarRegistry::standard();
        for (i, n) in r.names().enumerate() {
            assert_eq!(r.index(n), Some(i));
        }
        assert!(r.len() <= MAX_VARS);
        assert_eq!(r.index("q"), None);
    }

    #[test]
    fn fixed_slots() {
        let r = VarRegistry::standard();
        assert_eq!(r.name(V), "v");
        assert_eq!(r.name(X), "X");
        assert_eq!(r.name(CHI), "chi");
        assert_eq!(r.name(slot(3)), "x3");
        assert_eq!(r.name(Z), "z");
        assert_eq!(r.name(eta(2)), "h2");
        assert_eq!(r.name(satake(12)), "a12");
    }
}
