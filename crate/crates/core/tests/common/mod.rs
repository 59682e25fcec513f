//! Brute-force reference implementations written straight from the
//! definitions. They share no code with the library beyond the word type.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Raw = Vec<u8>;

pub fn all_words(q: u8, n: usize) -> Vec<Raw> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Raw| {
                (0..q).map(move |s| {
                    let mut x = w.clone();
                    x.push(s);
                    x
                })
            })
            .collect();
    }
    out
}

pub fn pre(u: &[u8]) -> BTreeSet<Raw> {
    (1..u.len()).map(|i| u[..i].to_vec()).collect()
}

pub fn suf(u: &[u8]) -> BTreeSet<Raw> {
    (1..u.len()).map(|i| u[i..].to_vec()).collect()
}

pub fn naive_bifix_free(u: &[u8]) -> bool {
    pre(u).is_disjoint(&suf(u))
}

pub fn naive_cbf<'a>(code: impl IntoIterator<Item = &'a Raw> + Clone) -> bool {
    code.clone().into_iter().all(|u| {
        code.clone()
            .into_iter()
            .all(|v| pre(u).is_disjoint(&suf(v)))
    })
}

pub fn in_set(s: u8, set: &[u8]) -> bool {
    set.contains(&s)
}

/// No `k` consecutive symbols all in `set`.
pub fn naive_block_free(w: &[u8], set: &[u8], k: usize) -> bool {
    w.len() < k || !w.windows(k).any(|win| win.iter().all(|&s| in_set(s, set)))
}

/// Filters all of `Z_q^n` by the three conditions defining `S`.
pub fn naive_s(q: u8, i_set: &[u8], n: usize, k: usize) -> BTreeSet<Raw> {
    all_words(q, n)
        .into_iter()
        .filter(|w| {
            w[..k].iter().all(|&s| in_set(s, i_set))
                && !in_set(w[k], i_set)
                && !in_set(w[n - 1], i_set)
                && (k + 2 > n - 1 || naive_block_free(&w[k + 1..n - 1], i_set, k))
        })
        .collect()
}

pub fn t_of(n: usize, k: usize) -> usize {
    2.max(n - k - 1)
}

/// Filters all of `Z_q^m` by the three-branch definition of `V(m)`.
pub fn naive_v(q: u8, i_set: &[u8], n: usize, k: usize, m: usize) -> BTreeSet<Raw> {
    let t = t_of(n, k);
    let f = n - k + t;
    all_words(q, m)
        .into_iter()
        .filter(|w| {
            let head = w[..t].iter().all(|&s| in_set(s, i_set)) && !in_set(w[t], i_set);
            if m == t + 1 {
                head
            } else if m < f {
                head && !in_set(w[m - 1], i_set)
            } else {
                head && !in_set(w[m - 1], i_set) && in_set(w[f - 1], i_set)
            }
        })
        .collect()
}

pub fn suffix_lengths(n: usize, k: usize, m: usize) -> Vec<usize> {
    let t = t_of(n, k);
    let f = n - k + t;
    (t + 1..m.saturating_sub(t)).filter(|&l| l != f).collect()
}

/// `U(m)` by the recursive suffix-exclusion rule, without memoization.
pub fn naive_u(q: u8, i_set: &[u8], n: usize, k: usize, m: usize) -> BTreeSet<Raw> {
    let shorter: Vec<(usize, BTreeSet<Raw>)> = suffix_lengths(n, k, m)
        .into_iter()
        .map(|l| (l, naive_u(q, i_set, n, k, l)))
        .collect();
    naive_v(q, i_set, n, k, m)
        .into_iter()
        .filter(|w| shorter.iter().all(|(l, u)| !u.contains(&w[m - l..])))
        .collect()
}

/// Words outside `code` whose addition keeps it cross-bifix-free.
pub fn naive_candidates(q: u8, code: &BTreeSet<Raw>) -> BTreeSet<Raw> {
    let n = code.iter().next().unwrap().len();
    all_words(q, n)
        .into_iter()
        .filter(|x| !code.contains(x))
        .filter(|x| {
            let mut c = code.clone();
            c.insert(x.clone());
            naive_cbf(&c)
        })
        .collect()
}

pub fn complement(q: u8, i_set: &[u8]) -> Vec<u8> {
    (0..q).filter(|s| !i_set.contains(s)).collect()
}

pub fn texts(words: &BTreeSet<Raw>) -> Vec<String> {
    words
        .iter()
        .map(|w| w.iter().map(|s| char::from(b'0' + s)).collect())
        .collect()
}

pub fn raw_set(code: &cbf_core::Code) -> BTreeSet<Raw> {
    code.iter().map(|w| w.symbols().to_vec()).collect()
}
