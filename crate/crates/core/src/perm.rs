//! Permutations of `1..=n` and the column indexing of multilinear words.

/// `n!`, panicking on overflow.
pub fn factorial(n: usize) -> usize {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)).expect("factorial overflow")
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(factorial(n));
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

/// Advances `p` to its lexicographic successor; false when `p` was the last one.
pub fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `+1` for even, `-1` for odd permutations of `0..n`.
pub fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Lexicographic rank of a permutation word over the letters `1..=n`.
///
/// Returns `None` if `letters` is not a permutation of `1..=n`.
pub fn rank(letters: &[u32]) -> Option<usize> {
    let n = letters.len();
    let mut used = vec![false; n + 1];
    let mut r = 0usize;
    for (pos, &l) in letters.iter().enumerate() {
        let l = l as usize;
        if l == 0 || l > n || used[l] {
            return None;
        }
        let smaller_unused = (1..l).filter(|&k| !used[k]).count();
        r += smaller_unused * factorial(n - pos - 1);
        used[l] = true;
    }
    Some(r)
}

/// Inverse of [`rank`].
pub fn unrank(n: usize, mut r: usize) -> Vec<u32> {
    let mut pool: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::with_capacity(n);
    for pos in 0..n {
        let f = factorial(n - pos - 1);
        let k = r / f;
        r %= f;
        out.push(pool.remove(k));
    }
    out
}

/// A permutation of `1..=n`, stored as the image list `images[i-1] = σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).collect(),
        }
    }

    /// Builds from images; `None` if they are not a permutation of `1..=n`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        rank(&images).map(|_| Permutation { images })
    }

    /// The product of disjoint cycles of the given lengths on consecutive
    /// points: `(1 2 .. l1)(l1+1 .. l1+l2)...`.
    pub fn from_cycle_type(parts: &[usize]) -> Self {
        let n: usize = parts.iter().sum();
        let mut images = vec![0u32; n];
        let mut start = 0;
        for &len in parts {
            for k in 0..len {
                let from = start + k;
                let to = start + (k + 1) % len;
                images[from] = to as u32 + 1;
            }
            start += len;
        }
        Permutation { images }
    }

    /// The transposition `(a b)` in `S_n`.
    pub fn transposition(n: usize, a: u32, b: u32) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a as usize - 1, b as usize - 1);
        p
    }

    /// The long cycle `1 -> 2 -> ... -> n -> 1`.
    pub fn long_cycle(n: usize) -> Self {
        Self::from_cycle_type(&[n])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize - 1] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    /// Cycle lengths in nonincreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize - 1;
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// Generators of `S_n`: a transposition and the long cycle.
    pub fn group_generators(n: usize) -> Vec<Self> {
        match n {
            0 | 1 => Vec::new(),
            2 => vec![Self::transposition(2, 1, 2)],
            _ => vec![Self::transposition(n, 1, 2), Self::long_cycle(n)],
        }
    }
}

/// Binomial coefficient, exact for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-element subsets of `items`, each in the order of `items`.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Compositions of `total` into `parts` positive summands.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let cuts: Vec<usize> = (1..total).collect();
    combinations(&cuts, parts - 1)
        .into_iter()
        .map(|c| {
            let mut prev = 0;
            let mut out = Vec::with_capacity(parts);
            for x in c.into_iter().chain(std::iter::once(total)) {
                out.push(x - prev);
                prev = x;
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_unrank_roundtrip() {
        for n in 0..=5 {
            for r in 0..factorial(n) {
                assert_eq!(rank(&unrank(n, r)), Some(r));
            }
        }
        assert_eq!(rank(&[1, 1]), None);
        assert_eq!(rank(&[0, 1]), None);
    }

    #[test]
    fn permutations_are_lexicographic_and_complete() {
        let ps = permutations(4);
        assert_eq!(ps.len(), 24);
        for (r, p) in ps.iter().enumerate() {
            let letters: Vec<u32> = p.iter().map(|&i| i as u32 + 1).collect();
            assert_eq!(rank(&letters), Some(r));
        }
    }

    #[test]
    fn signs_and_cycle_types() {
        assert_eq!(sign(&[0, 1, 2]), 1);
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
        let p = Permutation::from_cycle_type(&[3, 2, 1]);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(6));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(6, 4).len(), binomial(5, 3));
        assert_eq!(compositions(3, 4).len(), 0);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
    }
}
