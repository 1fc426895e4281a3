//! Permutations as index arrays.
//!
//! A permutation `p` of length `n` sends position `i` to `p[i]`. Composition
//! `compose(p, q)` is "first `q`, then `p`".

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// `p ∘ q`, i.e. `i ↦ p[q[i]]`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// All permutations of `0..n` in lexicographic order.
pub fn all(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(factorial(n));
    let mut cur = identity(n);
    loop {
        out.push(cur.clone());
        if !next_lex(&mut cur) {
            break;
        }
    }
    out
}

fn next_lex(p: &mut [usize]) -> bool {
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

/// Position of `p` in the lexicographic enumeration returned by [`all`].
pub fn rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r += smaller * factorial(n - 1 - i);
    }
    r
}

pub fn cycle_count(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
        }
    }
    cycles
}

/// Block sum: `p` acts on the first `p.len()` positions, `q` on the rest.
pub fn block_sum(p: &[usize], q: &[usize]) -> Vec<usize> {
    let shift = p.len();
    p.iter().copied().chain(q.iter().map(|&x| x + shift)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_lexicographic_and_ranked() {
        let ps = all(4);
        assert_eq!(ps.len(), 24);
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(rank(p), i);
            assert!(is_permutation(p));
        }
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn composition_and_inverse() {
        let p = vec![2, 0, 1];
        let q = vec![1, 0, 2];
        assert_eq!(compose(&p, &q), vec![0, 2, 1]);
        assert_eq!(compose(&p, &inverse(&p)), identity(3));
        assert_eq!(cycle_count(&p), 1);
        assert_eq!(cycle_count(&q), 2);
        assert_eq!(cycle_count(&identity(3)), 3);
        assert_eq!(block_sum(&[1, 0], &[0]), vec![1, 0, 2]);
    }
}
