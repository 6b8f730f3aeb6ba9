use super::perm::Perm;
use std::collections::BTreeSet;
use std::fmt;

/// Root `e_i − e_j` (1-based, `i ≠ j`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert_ne!(i, j, "e_i - e_i is not a root");
        Root { i, j }
    }

    /// Simple root `e_k − e_{k+1}`.
    pub fn simple(k: usize) -> Self {
        Root { i: k, j: k + 1 }
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn neg(&self) -> Self {
        Root { i: self.j, j: self.i }
    }

    /// `w·(e_i − e_j) = e_{w(i)} − e_{w(j)}`.
    pub fn act(&self, w: &Perm) -> Self {
        Root { i: w.apply(self.i), j: w.apply(self.j) }
    }

    /// Index `k` if this is the simple root `e_k − e_{k+1}`.
    pub fn simple_index(&self) -> Option<usize> {
        (self.j == self.i + 1).then_some(self.i)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i, self.j)
    }
}

/// Subset of the simple-root indices `{1..size−1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct SimpleSet {
    bits: u32,
}

impl SimpleSet {
    pub fn empty() -> Self {
        SimpleSet { bits: 0 }
    }

    /// All simple roots of `S_size`.
    pub fn full(size: usize) -> Self {
        Self::from_indices(1..size)
    }

    /// Simple roots of the Siegel Levi of `GL(2n)`: everything except `n`.
    pub fn siegel(n: usize) -> Self {
        Self::from_indices((1..2 * n).filter(|&k| k != n))
    }

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = 0;
        for k in idx {
            assert!((1..32).contains(&k), "simple index {k} out of range");
            bits |= 1 << k;
        }
        SimpleSet { bits }
    }

    pub fn contains(&self, k: usize) -> bool {
        k < 32 && self.bits & (1 << k) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..32).filter(move |&k| self.contains(k))
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.bits & !o.bits == 0
    }

    pub fn fits(&self, size: usize) -> bool {
        self.iter().all(|k| k < size)
    }

    pub fn roots(&self) -> Vec<Root> {
        self.iter().map(Root::simple).collect()
    }

    /// Every subset of `{1..size−1}`.
    pub fn all(size: usize) -> Vec<Self> {
        let r = size.saturating_sub(1);
        (0u32..1 << r).map(|b| SimpleSet { bits: b << 1 }).collect()
    }

    /// Sizes of the blocks `{k, k+1, …}` of `{1..size}` glued by the simple
    /// roots in the set.
    pub fn block_sizes(&self, size: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = 1;
        for k in 1..size {
            if self.contains(k) {
                cur += 1;
            } else {
                out.push(cur);
                cur = 1;
            }
        }
        if size > 0 {
            out.push(cur);
        }
        out
    }
}

impl SimpleSet {
    /// `{1,3}`, `1,3`, `{}`, `empty`, `full` or `siegel` for `S_size`.
    pub fn parse(text: &str, size: usize) -> crate::Result<Self> {
        let t = text.trim();
        match t {
            "empty" | "{}" | "" => return Ok(Self::empty()),
            "full" => return Ok(Self::full(size)),
            "siegel" if size % 2 == 0 && size > 0 => return Ok(Self::siegel(size / 2)),
            _ => {}
        }
        let body = t.strip_prefix('{').and_then(|b| b.strip_suffix('}')).unwrap_or(t);
        let mut idx = Vec::new();
        for part in body.split(',') {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| crate::error::parse_err(0, format!("bad simple index `{}`", part.trim())))?;
            if k == 0 || k >= size {
                return Err(crate::error::parse_err(0, format!("simple index {k} outside 1..{}", size.saturating_sub(1))));
            }
            idx.push(k);
        }
        Ok(Self::from_indices(idx))
    }
}

impl fmt::Display for SimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Roots in `ℤ₊·plus − ℤ₊·minus` (zero coefficients allowed), for `S_size`.
///
/// `e_i − e_j` is such a combination exactly when `j` is reachable from `i`
/// along edges `a → b` for `e_a − e_b ∈ plus` and `b → a` for
/// `e_a − e_b ∈ minus` (flow decomposition).
pub fn root_cone(plus: &[Root], minus: &[Root], size: usize) -> BTreeSet<Root> {
    let mut adj = vec![Vec::new(); size + 1];
    for r in plus {
        adj[r.i].push(r.j);
    }
    for r in minus {
        adj[r.j].push(r.i);
    }
    let mut out = BTreeSet::new();
    for start in 1..=size {
        let mut seen = vec![false; size + 1];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                    out.insert(Root::new(start, y));
                }
            }
        }
    }
    out
}

/// Root set of `𝔭_{S,T} = 𝔱 ⊕ ⊕_{α ∈ ℤ₊S − ℤ₊T} 𝔤_α`, for `T ⊂ S` in `S_{2n}`.
pub fn parabolic_root_set(s: &SimpleSet, t: &SimpleSet, n: usize) -> BTreeSet<Root> {
    root_cone(&s.roots(), &t.roots(), 2 * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent membership oracle: search coefficient vectors with
    /// entries in `0..=bound`.
    fn cone_by_search(plus: &[Root], minus: &[Root], size: usize, bound: i32) -> BTreeSet<Root> {
        let gens: Vec<(Root, i32)> = plus.iter().map(|r| (*r, 1)).chain(minus.iter().map(|r| (*r, -1))).collect();
        let mut out = BTreeSet::new();
        let mut coeffs = vec![0i32; gens.len()];
        loop {
            let mut v = vec![0i32; size + 1];
            for ((r, sgn), c) in gens.iter().zip(&coeffs) {
                v[r.i] += sgn * c;
                v[r.j] -= sgn * c;
            }
            let pos: Vec<usize> = (1..=size).filter(|&k| v[k] == 1).collect();
            let neg: Vec<usize> = (1..=size).filter(|&k| v[k] == -1).collect();
            let zeros = (1..=size).filter(|&k| v[k] == 0).count();
            if pos.len() == 1 && neg.len() == 1 && zeros == size - 2 {
                out.insert(Root::new(pos[0], neg[0]));
            }
            let mut k = 0;
            loop {
                if k == coeffs.len() {
                    return out;
                }
                coeffs[k] += 1;
                if coeffs[k] <= bound {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
        }
    }

    fn positive_roots(size: usize) -> BTreeSet<Root> {
        (1..=size).flat_map(|i| (i + 1..=size).map(move |j| Root::new(i, j))).collect()
    }

    #[test]
    fn borel_and_whole_group() {
        for n in 1..=3 {
            let size = 2 * n;
            let full = SimpleSet::full(size);
            assert_eq!(parabolic_root_set(&full, &SimpleSet::empty(), n), positive_roots(size));
            assert_eq!(parabolic_root_set(&full, &full, n).len(), size * (size - 1));
        }
    }

    #[test]
    fn levi_of_first_simple_root() {
        let one = SimpleSet::from_indices([1]);
        let levi = parabolic_root_set(&one, &one, 2);
        assert_eq!(levi, [Root::new(1, 2), Root::new(2, 1)].into_iter().collect());
        let mut expected = positive_roots(4);
        expected.insert(Root::new(2, 1));
        assert_eq!(parabolic_root_set(&SimpleSet::full(4), &one, 2), expected);
    }

    #[test]
    fn reachability_matches_bounded_search() {
        for size in [2, 4] {
            for s in SimpleSet::all(size) {
                for t in SimpleSet::all(size) {
                    if !t.is_subset(&s) {
                        continue;
                    }
                    let fast = root_cone(&s.roots(), &t.roots(), size);
                    let slow = cone_by_search(&s.roots(), &t.roots(), size, size as i32);
                    assert_eq!(fast, slow, "S={s} T={t}");
                }
            }
        }
    }

    #[test]
    fn block_sizes() {
        assert_eq!(SimpleSet::from_indices([1, 2]).block_sizes(6), vec![3, 1, 1, 1]);
        assert_eq!(SimpleSet::siegel(3).block_sizes(6), vec![3, 3]);
        assert_eq!(SimpleSet::empty().block_sizes(4), vec![1, 1, 1, 1]);
    }
}
