//! Suffix-array machinery for the greedy LZ77 parse.
//!
//! For every text position `i` this computes the longest previous factor
//! `lpf[i] = max_{j < i} lcp(x[j..], x[i..])`. Sources may overlap `i`,
//! which is exactly the self-referential LZ77 copy semantics. The leftmost
//! source of a given length is recovered on demand with two min segment
//! trees, one over the LCP array and one over the suffix array.

/// Suffix array by prefix doubling with counting-sort passes, `O(n log n)`.
pub(crate) fn suffix_array(text: &[u8]) -> Vec<usize> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    let mut rank: Vec<usize> = text.iter().map(|&c| c as usize).collect();
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_by_key(|&i| rank[i]);
    let mut tmp = vec![0usize; n];
    let mut second = Vec::with_capacity(n);
    let mut classes = 256.max(n);
    let mut k = 1;
    loop {
        // Order by the second key: suffixes without a partner first.
        second.clear();
        second.extend(n.saturating_sub(k)..n);
        second.extend(sa.iter().filter(|&&p| p >= k).map(|&p| p - k));

        // Stable counting sort by the first key.
        let mut count = vec![0usize; classes + 1];
        for &r in &rank {
            count[r + 1] += 1;
        }
        for c in 1..=classes {
            count[c] += count[c - 1];
        }
        for &p in &second {
            let r = rank[p];
            sa[count[r]] = p;
            count[r] += 1;
        }

        let key = |p: usize| (rank[p], if p + k < n { rank[p + k] as isize } else { -1 });
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut tmp);
        classes = rank[sa[n - 1]] + 1;
        if classes == n {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai's algorithm. `lcp[r] = lcp(sa[r-1], sa[r])`, `lcp[0] = 0`.
pub(crate) fn lcp_array(text: &[u8], sa: &[usize], rank: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i];
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1];
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Longest previous factor. For each position, the nearest suffixes in
/// lexicographic order with a smaller text position are the best earlier
/// candidates; the lcp with them drops by at most one per step, so the
/// direct comparisons are amortised linear.
pub(crate) fn longest_previous_factor(text: &[u8], sa: &[usize], rank: &[usize]) -> Vec<usize> {
    let n = text.len();
    let none = usize::MAX;
    let mut prev = vec![none; n];
    let mut next = vec![none; n];
    let mut stack: Vec<usize> = Vec::new();
    for &p in sa {
        while let Some(&top) = stack.last() {
            if top > p {
                next[top] = p;
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = stack.last() {
            prev[p] = top;
        }
        stack.push(p);
    }

    let extend = |i: usize, j: usize, mut h: usize| {
        while i + h < n && text[j + h] == text[i + h] {
            h += 1;
        }
        h
    };
    let mut lpf = vec![0usize; n];
    let (mut hp, mut hn) = (0usize, 0usize);
    for i in 0..n {
        hp = if prev[i] == none {
            0
        } else {
            extend(i, prev[i], hp)
        };
        hn = if next[i] == none {
            0
        } else {
            extend(i, next[i], hn)
        };
        lpf[i] = hp.max(hn);
        hp = hp.saturating_sub(1);
        hn = hn.saturating_sub(1);
    }
    debug_assert!(rank.len() == n);
    lpf
}

/// Min segment tree with "nearest index whose value is below t" queries.
struct MinTree {
    size: usize,
    tree: Vec<usize>,
}

impl MinTree {
    fn new(values: &[usize]) -> Self {
        let size = values.len().next_power_of_two().max(1);
        let mut tree = vec![usize::MAX; 2 * size];
        tree[size..size + values.len()].copy_from_slice(values);
        for v in (1..size).rev() {
            tree[v] = tree[2 * v].min(tree[2 * v + 1]);
        }
        Self { size, tree }
    }

    /// Minimum over the inclusive range `[lo, hi]`.
    fn range_min(&self, lo: usize, hi: usize) -> usize {
        let (mut l, mut r) = (lo + self.size, hi + self.size + 1);
        let mut best = usize::MAX;
        while l < r {
            if l & 1 == 1 {
                best = best.min(self.tree[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.min(self.tree[r]);
            }
            l /= 2;
            r /= 2;
        }
        best
    }

    /// Largest index `<= q` with value `< t`.
    fn last_below(&self, q: usize, t: usize) -> Option<usize> {
        self.last_below_in(1, 0, self.size - 1, q, t)
    }

    fn last_below_in(&self, v: usize, lo: usize, hi: usize, q: usize, t: usize) -> Option<usize> {
        if lo > q || self.tree[v] >= t {
            return None;
        }
        if lo == hi {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.last_below_in(2 * v + 1, mid + 1, hi, q, t)
            .or_else(|| self.last_below_in(2 * v, lo, mid, q, t))
    }

    /// Smallest index `>= q` with value `< t`.
    fn first_below(&self, q: usize, t: usize) -> Option<usize> {
        self.first_below_in(1, 0, self.size - 1, q, t)
    }

    fn first_below_in(&self, v: usize, lo: usize, hi: usize, q: usize, t: usize) -> Option<usize> {
        if hi < q || self.tree[v] >= t {
            return None;
        }
        if lo == hi {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.first_below_in(2 * v, lo, mid, q, t)
            .or_else(|| self.first_below_in(2 * v + 1, mid + 1, hi, q, t))
    }
}

/// Precomputed match structure over one text.
pub(crate) struct MatchIndex {
    rank: Vec<usize>,
    lpf: Vec<usize>,
    lcp_tree: MinTree,
    sa_tree: MinTree,
    n: usize,
}

impl MatchIndex {
    pub(crate) fn new(text: &[u8]) -> Self {
        let n = text.len();
        let sa = suffix_array(text);
        let mut rank = vec![0usize; n];
        for (r, &p) in sa.iter().enumerate() {
            rank[p] = r;
        }
        let lcp = lcp_array(text, &sa, &rank);
        let lpf = longest_previous_factor(text, &sa, &rank);
        Self {
            lcp_tree: MinTree::new(&lcp),
            sa_tree: MinTree::new(&sa),
            rank,
            lpf,
            n,
        }
    }

    /// Longest match length at `i` against any earlier start.
    pub(crate) fn longest_previous(&self, i: usize) -> usize {
        self.lpf[i]
    }

    /// Smallest `j < i` with `lcp(j, i) >= len`. Requires
    /// `1 <= len <= longest_previous(i)`.
    pub(crate) fn leftmost_source(&self, i: usize, len: usize) -> usize {
        debug_assert!(len >= 1 && len <= self.lpf[i]);
        let r = self.rank[i];
        // lcp[q] < len marks the boundary between ranks q-1 and q.
        let lo = self.lcp_tree.last_below(r, len).unwrap_or(0);
        let hi = self
            .lcp_tree
            .first_below(r + 1, len)
            .map_or(self.n - 1, |q| q - 1);
        let j = self.sa_tree.range_min(lo, hi);
        debug_assert!(j < i);
        j
    }
}
