//! Small counting helpers shared by the other modules.

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Catalan number `C_k = binom(2k, k) / (k + 1)`.
pub fn catalan(k: usize) -> usize {
    binomial(2 * k, k) / (k + 1)
}

/// All `k`-subsets of `1..=m` in lexicographic order.
pub fn subsets(m: u16, k: usize) -> Vec<Vec<u16>> {
    fn go(start: u16, m: u16, k: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            if (m - v + 1) as usize + cur.len() < k {
                break;
            }
            cur.push(v);
            go(v + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(7, 5), 21);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(catalan(3), 5);
        assert_eq!(catalan(7), 429);
        assert_eq!(subsets(5, 4).len(), 5);
        assert_eq!(subsets(4, 4), vec![vec![1, 2, 3, 4]]);
    }
}
