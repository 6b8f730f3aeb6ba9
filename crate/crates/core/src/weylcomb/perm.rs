use crate::error::{parse_err, Error, Result};
use std::fmt;

/// Largest supported permutation size.
pub const MAX_SIZE: usize = 24;

/// Permutation of `{1..size}`, stored as 0-based images.
///
/// `compose(a, b)` is `a ∘ b` (apply `b` first).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    w: Vec<u8>,
}

impl Perm {
    pub fn identity(size: usize) -> Self {
        assert!(size <= MAX_SIZE);
        Perm { w: (0..size as u8).collect() }
    }

    /// The longest element `i ↦ size + 1 - i`.
    pub fn longest(size: usize) -> Self {
        Perm { w: (0..size as u8).rev().collect() }
    }

    pub(crate) fn from_images0(w: Vec<u8>) -> Self {
        Perm { w }
    }

    pub(crate) fn images0(&self) -> &[u8] {
        &self.w
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let size = images.len();
        if size > MAX_SIZE {
            return Err(Error::Precondition(format!("permutation size {size} exceeds {MAX_SIZE}")));
        }
        let mut seen = vec![false; size];
        let mut w = Vec::with_capacity(size);
        for &x in images {
            if x == 0 || x > size || seen[x - 1] {
                return Err(Error::Precondition(format!("{images:?} is not a permutation of 1..{size}")));
            }
            seen[x - 1] = true;
            w.push((x - 1) as u8);
        }
        Ok(Perm { w })
    }

    /// Cycle `l0 → l1 → … → l0` (1-based labels).
    pub fn cycle(size: usize, labels: &[usize]) -> Result<Self> {
        let mut w: Vec<u8> = (0..size as u8).collect();
        let mut seen = vec![false; size];
        for &l in labels {
            if l == 0 || l > size || seen[l - 1] {
                return Err(Error::Precondition(format!("bad cycle {labels:?} in S_{size}")));
            }
            seen[l - 1] = true;
        }
        for k in 0..labels.len() {
            w[labels[k] - 1] = (labels[(k + 1) % labels.len()] - 1) as u8;
        }
        Ok(Perm { w })
    }

    pub fn transposition(size: usize, i: usize, j: usize) -> Self {
        Self::cycle(size, &[i, j]).expect("valid transposition")
    }

    /// Simple reflection `s_i = (i, i+1)`.
    pub fn simple(size: usize, i: usize) -> Self {
        Self::transposition(size, i, i + 1)
    }

    /// Product `c_1 ∘ c_2 ∘ …` of cycles.
    pub fn from_cycles(size: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::identity(size);
        for c in cycles {
            p = p.compose(&Self::cycle(size, c)?);
        }
        Ok(p)
    }

    pub fn size(&self) -> usize {
        self.w.len()
    }

    /// Block size `n` of `S_{2n}`.
    pub fn n(&self) -> usize {
        self.w.len() / 2
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.w[i - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.w.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn compose(&self, o: &Self) -> Self {
        assert_eq!(self.size(), o.size(), "composing permutations of different sizes");
        Perm { w: o.w.iter().map(|&i| self.w[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut r = vec![0u8; self.w.len()];
        for (i, &x) in self.w.iter().enumerate() {
            r[x as usize] = i as u8;
        }
        Perm { w: r }
    }

    pub fn is_identity(&self) -> bool {
        self.w.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let mut l = 0;
        for i in 0..self.w.len() {
            for j in i + 1..self.w.len() {
                if self.w[i] > self.w[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// Right descents `i` (1-based) with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (0..self.w.len().saturating_sub(1)).filter(|&i| self.w[i] > self.w[i + 1]).map(|i| i + 1).collect()
    }

    fn swap_positions(&self, i: usize) -> Self {
        let mut w = self.w.clone();
        w.swap(i - 1, i);
        Perm { w }
    }

    /// Reduced word `[i_1, …, i_k]` with `s_{i_1} ∘ … ∘ s_{i_k} = self`.
    /// Deterministic: peels off the smallest right descent repeatedly.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(&i) = w.descents().first() {
            word.push(i);
            w = w.swap_positions(i);
        }
        word.reverse();
        word
    }

    /// All reduced words, in lexicographic order.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut suffix = Vec::new();
        fn rec(w: &Perm, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let d = w.descents();
            if d.is_empty() {
                out.push(suffix.iter().rev().copied().collect());
                return;
            }
            for i in d {
                suffix.push(i);
                rec(&w.swap_positions(i), suffix, out);
                suffix.pop();
            }
        }
        rec(self, &mut suffix, &mut out);
        out.sort();
        out
    }

    /// `s_{word[0]} ∘ s_{word[1]} ∘ …`.
    pub fn from_word(size: usize, word: &[usize]) -> Self {
        let mut p = Self::identity(size);
        for &i in word {
            p = p.compose(&Self::simple(size, i));
        }
        p
    }

    /// Nontrivial cycles, each starting at its smallest label.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.w.len()];
        let mut out = Vec::new();
        for start in 0..self.w.len() {
            if seen[start] || self.w[start] as usize == start {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.w[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn to_one_line_string(&self) -> String {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses one-line (`[2,1,4,3]`) or cycle (`(1 2)(3 4)`, `()`) notation.
    pub fn parse(text: &str, size: usize) -> Result<Self> {
        if size > MAX_SIZE {
            return Err(parse_err(0, format!("permutation size {size} exceeds {MAX_SIZE}")));
        }
        let t = text.trim();
        if t.starts_with('[') {
            let inner = t
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| parse_err(t.len(), "expected `]`"))?;
            let mut images = Vec::new();
            if !inner.trim().is_empty() {
                for (k, part) in inner.split(',').enumerate() {
                    let x: usize =
                        part.trim().parse().map_err(|_| parse_err(k, format!("bad entry `{}`", part.trim())))?;
                    images.push(x);
                }
            }
            if images.len() != size {
                return Err(parse_err(0, format!("expected {size} entries, found {}", images.len())));
            }
            return Self::from_one_line(&images).map_err(|e| parse_err(0, e.to_string()));
        }
        if t == "e" || t == "id" {
            return Ok(Self::identity(size));
        }
        let bytes = t.as_bytes();
        let mut cycles = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos].is_ascii_whitespace() {
                pos += 1;
                continue;
            }
            if bytes[pos] != b'(' {
                return Err(parse_err(pos, "expected `(`"));
            }
            let close = t[pos..].find(')').ok_or_else(|| parse_err(pos, "unclosed cycle"))? + pos;
            let mut labels = Vec::new();
            for part in t[pos + 1..close].split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
                let x: usize = part.parse().map_err(|_| parse_err(pos, format!("bad label `{part}`")))?;
                labels.push(x);
            }
            if !labels.is_empty() {
                cycles.push(labels);
            }
            pos = close + 1;
        }
        Self::from_cycles(size, &cycles).map_err(|e| parse_err(0, e.to_string()))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_one_line_string())
    }
}

/// All permutations of `{1..size}` in lexicographic one-line order.
pub fn all_perms(size: usize) -> Vec<Perm> {
    let mut cur: Vec<u8> = (0..size as u8).collect();
    let mut out = vec![Perm { w: cur.clone() }];
    loop {
        let Some(i) = (0..size.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..size).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(Perm { w: cur.clone() });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_examples() {
        assert_eq!(Perm::identity(4).length(), 0);
        assert_eq!(Perm::longest(4).length(), 6);
        assert_eq!(Perm::transposition(4, 1, 2).length(), 1);
    }

    #[test]
    fn reduced_word_examples() {
        assert!(Perm::identity(4).reduced_word().is_empty());
        assert_eq!(Perm::transposition(4, 1, 3).reduced_word().len(), 3);
        for w in all_perms(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Perm::from_word(4, &word), w);
        }
    }

    #[test]
    fn all_reduced_words_of_longest_s3() {
        let words = Perm::longest(3).all_reduced_words();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn composition_convention() {
        let a = Perm::transposition(3, 1, 2);
        let b = Perm::transposition(3, 2, 3);
        // (1 2)∘(2 3) sends 3 ↦ 2 ↦ 1
        assert_eq!(a.compose(&b).apply(3), 1);
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
    }

    #[test]
    fn notation_roundtrip() {
        let p = Perm::parse("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p, Perm::parse("[2,1,4,3]", 4).unwrap());
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(Perm::parse(&p.to_one_line_string(), 4).unwrap(), p);
        assert_eq!(Perm::parse("()", 4).unwrap(), Perm::identity(4));
        assert!(Perm::parse("(1 5)", 4).is_err());
        assert!(Perm::parse("[1,1,2,3]", 4).is_err());
        assert!(Perm::parse("(1 2", 4).is_err());
    }

    #[test]
    fn enumerates_factorial() {
        assert_eq!(all_perms(4).len(), 24);
        assert_eq!(all_perms(0).len(), 1);
    }
}
