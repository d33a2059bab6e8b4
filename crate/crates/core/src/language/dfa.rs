//! Small deterministic finite automata with exact counting and unranking.
//!
//! Suffix counts `acc[i][q]` (number of length-`i` strings accepted from state
//! `q`) drive both the member count per length and uniform unranking, so a
//! seeded generator can pick uniformly among all members of a given length.

use std::sync::OnceLock;

#[derive(Debug)]
pub struct Dfa {
    alphabet: Vec<char>,
    /// `trans[state][symbol_index]`
    trans: Vec<Vec<usize>>,
    accept: Vec<bool>,
    start: usize,
    /// Lazily computed suffix counts up to the generation length cap.
    counts: OnceLock<Vec<Vec<u128>>>,
}

impl Dfa {
    pub fn new(alphabet: &[char], trans: Vec<Vec<usize>>, accept: Vec<bool>, start: usize) -> Self {
        let n = trans.len();
        assert_eq!(accept.len(), n);
        assert!(start < n);
        for row in &trans {
            assert_eq!(row.len(), alphabet.len());
            assert!(row.iter().all(|&t| t < n));
        }
        Dfa {
            alphabet: alphabet.to_vec(),
            trans,
            accept,
            start,
            counts: OnceLock::new(),
        }
    }

    fn counts_to(&self, max_len: usize) -> &Vec<Vec<u128>> {
        self.counts.get_or_init(|| {
            let n = self.trans.len();
            let mut acc = vec![vec![0u128; n]; max_len + 1];
            for (q, row) in acc[0].iter_mut().enumerate() {
                *row = u128::from(self.accept[q]);
            }
            for i in 1..=max_len {
                for q in 0..n {
                    let mut total = 0u128;
                    for s in 0..self.alphabet.len() {
                        total = total
                            .checked_add(acc[i - 1][self.trans[q][s]])
                            .expect("dfa count overflow");
                    }
                    acc[i][q] = total;
                }
            }
            acc
        })
    }

    /// Number of accepted strings of exactly length `n` (n must not exceed the
    /// cap used on first call; all callers use the 64-character cap).
    pub fn count(&self, n: usize) -> u128 {
        self.counts_to(crate::language::MAX_GENERATED_LEN)[n][self.start]
    }

    /// The `idx`-th accepted string of length `n` in symbol order.
    pub fn unrank(&self, n: usize, mut idx: u128) -> String {
        let acc = self.counts_to(crate::language::MAX_GENERATED_LEN);
        let mut out = String::with_capacity(n);
        let mut state = self.start;
        for i in (1..=n).rev() {
            let mut chosen = None;
            for (s, &sym) in self.alphabet.iter().enumerate() {
                let next = self.trans[state][s];
                let ways = acc[i - 1][next];
                if idx < ways {
                    chosen = Some((sym, next));
                    break;
                }
                idx -= ways;
            }
            let (sym, next) = chosen.expect("unrank index out of range");
            out.push(sym);
            state = next;
        }
        out
    }

    pub fn accepts(&self, s: &str) -> bool {
        let mut state = self.start;
        for c in s.chars() {
            match self.alphabet.iter().position(|&a| a == c) {
                Some(i) => state = self.trans[state][i],
                None => return false,
            }
        }
        self.accept[state]
    }
}
