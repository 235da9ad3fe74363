//! Lexicographic enumeration of `k`-subsets of `{0, .., n-1}`.

/// Iterator over sorted `k`-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Subsets { n, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still move right
        let mut i = k;
        while i > 0 && next[i - 1] == self.n - k + i - 1 {
            i -= 1;
        }
        if i > 0 {
            next[i - 1] += 1;
            for j in i..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Complement of a sorted subset inside `0..n`.
pub fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n - subset.len());
    let mut it = subset.iter().peekable();
    for x in 0..n {
        if it.peek() == Some(&&x) {
            it.next();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        for n in 0..=9 {
            for k in 0..=n + 1 {
                let all: Vec<_> = Subsets::new(n, k).collect();
                assert_eq!(all.len(), binomial(n, k), "n={n} k={k}");
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|s| s.windows(2).all(|w| w[0] < w[1])));
            }
        }
        let small: Vec<_> = Subsets::new(4, 2).collect();
        assert_eq!(small, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Subsets::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn complements() {
        assert_eq!(complement(&[0, 2], 5), vec![1, 3, 4]);
        assert_eq!(complement(&[], 2), vec![0, 1]);
    }
}
