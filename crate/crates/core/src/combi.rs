//! Small combinatorial helpers shared by the enumeration oracles.

/// Binomial coefficient as u128, saturating instead of overflowing.
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of subsets of sizes `1..=w` of an `n`-set.
pub(crate) fn subsets_up_to(n: u64, w: u64) -> u128 {
    (1..=w.min(n)).map(|s| binomial(n, s)).sum()
}

/// Lexicographic k-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    k: usize,
    state: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            k,
            state: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.state.clone();
        if self.k == 0 {
            self.done = true;
            return Some(out);
        }
        // advance to the next subset in lexicographic order
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.state[i] < self.n - (self.k - i) {
                self.state[i] += 1;
                for j in i + 1..self.k {
                    self.state[j] = self.state[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Cartesian product over per-slot option counts, in lexicographic order.
/// Yields index vectors `v` with `v[i] < sizes[i]`.
pub(crate) struct MixedRadix {
    sizes: Vec<usize>,
    state: Vec<usize>,
    done: bool,
}

impl MixedRadix {
    pub(crate) fn new(sizes: Vec<usize>) -> Self {
        let done = sizes.contains(&0);
        let state = vec![0; sizes.len()];
        MixedRadix { sizes, state, done }
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.state.clone();
        let mut i = self.sizes.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.state[i] += 1;
            if self.state[i] < self.sizes[i] {
                break;
            }
            self.state[i] = 0;
        }
        Some(out)
    }
}
