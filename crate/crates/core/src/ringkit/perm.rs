//! Permutations in 0-based one-line notation and reduced words.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation `w` of `{0, …, n−1}` stored as `[w(0), …, w(n−1)]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    pub fn from_vec(v: Vec<usize>) -> Option<Perm> {
        let mut seen = vec![false; v.len()];
        for &x in &v {
            if x >= v.len() || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(v))
    }

    /// The simple transposition `s_r` swapping `r` and `r+1`.
    pub fn simple(n: usize, r: usize) -> Perm {
        assert!(r + 1 < n);
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(r, r + 1);
        Perm(v)
    }

    /// Product `s_{w[0]} s_{w[1]} ⋯` of simple transpositions.
    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        word.iter().fold(Perm::identity(n), |acc, &r| acc.compose(&Perm::simple(n, r)))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ o)(i) = self(o(i))`.
    pub fn compose(&self, o: &Perm) -> Perm {
        Perm(o.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.n()];
        for (i, &wi) in self.0.iter().enumerate() {
            v[wi] = i;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Coxeter length (number of inversions).
    pub fn length(&self) -> usize {
        let mut c = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.0[i] > self.0[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Lexicographically smallest reduced word `[r_1, …, r_k]` with `self = s_{r_1} ⋯ s_{r_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while !w.is_identity() {
            let inv = w.inverse();
            // left descent: r with w⁻¹(r) > w⁻¹(r+1)
            let r = (0..w.n() - 1).find(|&r| inv.0[r] > inv.0[r + 1]).unwrap();
            word.push(r);
            w = Perm::simple(w.n(), r).compose(&w);
        }
        word
    }

    /// Place `seq[i]` at position `w(i)`.
    pub fn act_on_seq<T: Clone>(&self, seq: &[T]) -> Vec<T> {
        let mut out = seq.to_vec();
        for (i, x) in seq.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    /// All permutations of `n` letters in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Elements of the Young subgroup `S_{k_1} × ⋯ × S_{k_m}` for a composition `k`.
    pub fn young_subgroup(k: &[usize]) -> Vec<Perm> {
        let n: usize = k.iter().sum();
        let mut out = vec![Perm::identity(n)];
        let mut start = 0;
        for &size in k {
            let block = Perm::all(size);
            let mut next = Vec::with_capacity(out.len() * block.len());
            for base in &out {
                for b in &block {
                    let mut v = base.0.clone();
                    for (i, &bi) in b.0.iter().enumerate() {
                        v[start + i] = start + bi;
                    }
                    next.push(Perm(v));
                }
            }
            out = next;
            start += size;
        }
        out.sort();
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_multiply_back() {
        for w in Perm::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Perm::from_word(4, &word), w);
        }
    }

    #[test]
    fn counts() {
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(Perm::young_subgroup(&[2, 1]).len(), 2);
        assert_eq!(Perm::young_subgroup(&[2, 2]).len(), 4);
        let w0 = Perm::from_vec(vec![2, 1, 0]).unwrap();
        assert_eq!(w0.reduced_word(), vec![0, 1, 0]);
    }

    #[test]
    fn sequence_action() {
        let s = Perm::simple(3, 0);
        assert_eq!(s.act_on_seq(&[1, 2, 4]), vec![2, 1, 4]);
        assert_eq!(s.act_on_seq(&s.act_on_seq(&[1, 2, 4])), vec![1, 2, 4]);
    }
}
