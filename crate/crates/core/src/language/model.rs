//! Generative models behind each language: member counts per length, uniform
//! unranking within a length, and exact membership.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::dfa::Dfa;
use super::MAX_GENERATED_LEN;

/// Exponent of one block as a function of the (at most two) size parameters.
pub type ExpFn = fn(u64, u64) -> u64;

/// A language written as a fixed sequence of symbol blocks whose lengths are
/// functions of one or two nonnegative parameters, e.g. `A^n B^m A^n B^m`.
pub struct BlockLang {
    pub blocks: Vec<(char, ExpFn)>,
    pub nparams: u8,
    pub constraint: Option<fn(u64, u64) -> bool>,
    /// Distinct members per length, up to the generation cap.
    table: OnceLock<Vec<Vec<String>>>,
}

impl BlockLang {
    pub fn new(
        blocks: Vec<(char, ExpFn)>,
        nparams: u8,
        constraint: Option<fn(u64, u64) -> bool>,
    ) -> Self {
        assert!(nparams == 1 || nparams == 2);
        BlockLang {
            blocks,
            nparams,
            constraint,
            table: OnceLock::new(),
        }
    }

    fn rendered_len(&self, p0: u64, p1: u64) -> Option<u64> {
        let mut total = 0u64;
        for (_, exp) in &self.blocks {
            total = total.checked_add(exp(p0, p1))?;
        }
        Some(total)
    }

    fn render(&self, p0: u64, p1: u64) -> String {
        let mut out = String::new();
        for (sym, exp) in &self.blocks {
            for _ in 0..exp(p0, p1) {
                out.push(*sym);
            }
        }
        out
    }

    fn param_ok(&self, p0: u64, p1: u64) -> bool {
        self.constraint.map_or(true, |c| c(p0, p1))
    }

    fn table(&self) -> &Vec<Vec<String>> {
        self.table.get_or_init(|| {
            let cap = MAX_GENERATED_LEN as u64;
            let mut sets: Vec<BTreeSet<String>> = vec![BTreeSet::new(); MAX_GENERATED_LEN + 1];
            let p1_range = if self.nparams == 2 { 0..=cap } else { 0..=0 };
            for p1 in p1_range {
                for p0 in 0..=cap {
                    if !self.param_ok(p0, p1) {
                        continue;
                    }
                    match self.rendered_len(p0, p1) {
                        Some(len) if len <= cap => {
                            sets[len as usize].insert(self.render(p0, p1));
                        }
                        _ => {}
                    }
                }
            }
            sets.into_iter()
                .map(|s| s.into_iter().collect())
                .collect()
        })
    }

    fn count(&self, n: usize) -> u128 {
        self.table()[n].len() as u128
    }

    fn unrank(&self, n: usize, idx: u128) -> String {
        self.table()[n][idx as usize].clone()
    }

    fn accepts(&self, s: &str) -> bool {
        if s.len() <= MAX_GENERATED_LEN {
            return self.table()[s.len()].binary_search_by(|m| m.as_str().cmp(s)).is_ok();
        }
        // Beyond the generation cap, search parameters directly; block
        // exponents grow with their parameters, so each is bounded by |s|.
        let cap = s.len() as u64;
        let p1_range = if self.nparams == 2 { 0..=cap } else { 0..=0 };
        for p1 in p1_range {
            for p0 in 0..=cap {
                if !self.param_ok(p0, p1) {
                    continue;
                }
                match self.rendered_len(p0, p1) {
                    Some(len) if len == s.len() as u64 => {
                        if self.render(p0, p1) == s {
                            return true;
                        }
                    }
                    _ => {}
                }
            }
        }
        false
    }
}

/// Length rules for single-symbol languages like `A^(2^k)`.
#[derive(Debug, Clone, Copy)]
pub enum LengthRule {
    PowerOfTwo,
    Square,
    Fibonacci,
    Prime,
}

impl LengthRule {
    fn admits(self, n: usize) -> bool {
        match self {
            LengthRule::PowerOfTwo => n > 0 && n.is_power_of_two(),
            LengthRule::Square => {
                let r = (n as f64).sqrt().round() as usize;
                r * r == n
            }
            LengthRule::Fibonacci => {
                let (mut a, mut b) = (1usize, 2usize);
                if n == 0 {
                    return false;
                }
                while a < n {
                    let next = a + b;
                    a = b;
                    b = next;
                }
                a == n || n == 1
            }
            LengthRule::Prime => {
                if n < 2 {
                    return false;
                }
                (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
            }
        }
    }
}

/// The generative model for one language.
pub enum LanguageModel {
    /// Regular language via a DFA.
    Dfa(Dfa),
    /// Concatenated symbol blocks with parameterised exponents.
    Blocks(BlockLang),
    /// `w` repeated `copies` times, `w` over `{A,B}`.
    Copy { copies: usize },
    /// All palindromes over `{A,B}`.
    Palindrome,
    /// Even-length mirrored strings `w·reverse(w)` over `{A,B}`.
    EvenPalindrome,
    /// Balanced bracket strings where `A` opens and `B` closes.
    Dyck1,
    /// `sym` repeated a number of times admitted by the rule.
    UnaryLengths { sym: char, rule: LengthRule },
    /// Equal numbers of `A`s and `B`s in any order.
    EqualCount,
    /// Strictly more `A`s than `B`s.
    MajorityA,
}

fn pow2(e: usize) -> u128 {
    1u128 << e
}

/// Binomial coefficients up to n = 64, computed once.
fn binomial(n: usize, k: usize) -> u128 {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = vec![vec![0u128; 65]; 65];
        for (n, row) in t.iter_mut().enumerate().take(65) {
            row[0] = 1;
            for k in 1..=n {
                row[k] = row[k - 1] * ((n - k + 1) as u128) / (k as u128);
            }
        }
        t
    });
    if k > n {
        0
    } else {
        table[n][k]
    }
}

/// `dyck_ways(i, d)`: completions of length `i` from nesting depth `d` that
/// end balanced and never dip below zero.
fn dyck_ways(i: usize, d: usize) -> u128 {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let n = MAX_GENERATED_LEN + 1;
        let mut t = vec![vec![0u128; n + 1]; n];
        for d in 0..=n {
            t[0][d] = u128::from(d == 0);
        }
        for i in 1..n {
            for d in 0..n {
                let open = if d + 1 <= n { t[i - 1][d + 1] } else { 0 };
                let close = if d > 0 { t[i - 1][d - 1] } else { 0 };
                t[i][d] = open + close;
            }
        }
        t
    });
    if d >= table[0].len() {
        0
    } else {
        table[i][d]
    }
}

fn bits_to_string(idx: u128, len: usize) -> String {
    (0..len)
        .map(|j| if (idx >> j) & 1 == 0 { 'A' } else { 'B' })
        .collect()
}

fn over_ab(s: &str) -> bool {
    s.chars().all(|c| c == 'A' || c == 'B')
}

/// Unranks the `idx`-th string of length `n` containing exactly `a` copies of
/// `A` (positions chosen in lexical order, `A < B`).
fn unrank_with_a_count(n: usize, mut a: usize, mut idx: u128) -> String {
    let mut out = String::with_capacity(n);
    for pos in 0..n {
        let rem = n - pos - 1;
        if a == 0 {
            out.push('B');
            continue;
        }
        let with_a = binomial(rem, a - 1);
        if idx < with_a {
            out.push('A');
            a -= 1;
        } else {
            idx -= with_a;
            out.push('B');
        }
    }
    out
}

impl LanguageModel {
    /// Number of members with exactly `n` characters (`n` up to the cap).
    pub fn count(&self, n: usize) -> u128 {
        match self {
            LanguageModel::Dfa(d) => d.count(n),
            LanguageModel::Blocks(b) => b.count(n),
            LanguageModel::Copy { copies } => {
                if n % copies == 0 {
                    pow2(n / copies)
                } else {
                    0
                }
            }
            LanguageModel::Palindrome => pow2(n.div_ceil(2)),
            LanguageModel::EvenPalindrome => {
                if n % 2 == 0 {
                    pow2(n / 2)
                } else {
                    0
                }
            }
            LanguageModel::Dyck1 => {
                if n % 2 == 0 {
                    dyck_ways(n, 0)
                } else {
                    0
                }
            }
            LanguageModel::UnaryLengths { rule, .. } => u128::from(rule.admits(n)),
            LanguageModel::EqualCount => {
                if n % 2 == 0 {
                    binomial(n, n / 2)
                } else {
                    0
                }
            }
            LanguageModel::MajorityA => (n / 2 + 1..=n).map(|a| binomial(n, a)).sum(),
        }
    }

    /// The `idx`-th member of length `n`, `0 <= idx < count(n)`.
    pub fn unrank(&self, n: usize, mut idx: u128) -> String {
        match self {
            LanguageModel::Dfa(d) => d.unrank(n, idx),
            LanguageModel::Blocks(b) => b.unrank(n, idx),
            LanguageModel::Copy { copies } => bits_to_string(idx, n / copies).repeat(*copies),
            LanguageModel::Palindrome => {
                let half = bits_to_string(idx, n.div_ceil(2));
                let mirror: String = half.chars().rev().skip(n % 2).collect();
                format!("{half}{mirror}")
            }
            LanguageModel::EvenPalindrome => {
                let half = bits_to_string(idx, n / 2);
                let mirror: String = half.chars().rev().collect();
                format!("{half}{mirror}")
            }
            LanguageModel::Dyck1 => {
                let mut out = String::with_capacity(n);
                let mut depth = 0usize;
                for i in (1..=n).rev() {
                    let open_ways = dyck_ways(i - 1, depth + 1);
                    if idx < open_ways {
                        out.push('A');
                        depth += 1;
                    } else {
                        idx -= open_ways;
                        out.push('B');
                        depth -= 1;
                    }
                }
                out
            }
            LanguageModel::UnaryLengths { sym, .. } => sym.to_string().repeat(n),
            LanguageModel::EqualCount => unrank_with_a_count(n, n / 2, idx),
            LanguageModel::MajorityA => {
                for a in n / 2 + 1..=n {
                    let block = binomial(n, a);
                    if idx < block {
                        return unrank_with_a_count(n, a, idx);
                    }
                    idx -= block;
                }
                unreachable!("majority unrank index out of range")
            }
        }
    }

    /// Rule membership for a string of any length.
    pub fn accepts(&self, s: &str) -> bool {
        match self {
            LanguageModel::Dfa(d) => d.accepts(s),
            LanguageModel::Blocks(b) => b.accepts(s),
            LanguageModel::Copy { copies } => {
                if !over_ab(s) || s.len() % copies != 0 {
                    return false;
                }
                let part = s.len() / copies;
                let first = &s[..part];
                (1..*copies).all(|i| &s[i * part..(i + 1) * part] == first)
            }
            LanguageModel::Palindrome => {
                over_ab(s) && s.chars().eq(s.chars().rev())
            }
            LanguageModel::EvenPalindrome => {
                over_ab(s) && s.len() % 2 == 0 && s.chars().eq(s.chars().rev())
            }
            LanguageModel::Dyck1 => {
                let mut depth = 0i64;
                for c in s.chars() {
                    match c {
                        'A' => depth += 1,
                        'B' => depth -= 1,
                        _ => return false,
                    }
                    if depth < 0 {
                        return false;
                    }
                }
                depth == 0
            }
            LanguageModel::UnaryLengths { sym, rule } => {
                s.chars().all(|c| c == *sym) && rule.admits(s.len())
            }
            LanguageModel::EqualCount => {
                over_ab(s) && s.chars().filter(|&c| c == 'A').count() * 2 == s.len()
            }
            LanguageModel::MajorityA => {
                over_ab(s) && s.chars().filter(|&c| c == 'A').count() * 2 > s.len()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn copy_model() {
        let m = LanguageModel::Copy { copies: 3 };
        assert_eq!(m.count(6), 4);
        assert!(m.accepts("ABABAB"));
        assert!(m.accepts("AAA"));
        assert!(m.accepts(""));
        assert!(!m.accepts("ABAB"));
        for i in 0..4 {
            let s = m.unrank(6, i);
            assert!(m.accepts(&s), "{s}");
        }
    }

    #[test]
    fn dyck_model() {
        let m = LanguageModel::Dyck1;
        // Catalan numbers 1, 1, 2, 5, 14
        assert_eq!(m.count(0), 1);
        assert_eq!(m.count(2), 1);
        assert_eq!(m.count(4), 2);
        assert_eq!(m.count(6), 5);
        assert_eq!(m.count(8), 14);
        assert_eq!(m.count(3), 0);
        for i in 0..5 {
            let s = m.unrank(6, i);
            assert!(m.accepts(&s), "{s}");
        }
        assert!(!m.accepts("BA"));
        assert!(!m.accepts("AAB"));
    }

    #[test]
    fn equal_count_model() {
        let m = LanguageModel::EqualCount;
        assert_eq!(m.count(4), 6);
        let members: Vec<String> = (0..6).map(|i| m.unrank(4, i)).collect();
        for s in &members {
            assert!(m.accepts(s));
        }
        let mut dedup = members.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 6);
    }

    #[test]
    fn block_lang_anbn() {
        let m = LanguageModel::Blocks(BlockLang::new(
            vec![('A', |n, _| n), ('B', |n, _| n)],
            1,
            None,
        ));
        assert_eq!(m.count(0), 1);
        assert_eq!(m.count(1), 0);
        assert_eq!(m.count(4), 1);
        assert_eq!(m.unrank(4, 0), "AABB");
        assert!(m.accepts("AABB"));
        assert!(!m.accepts("AAB"));
        // membership beyond the generation cap still follows the rule
        let long = format!("{}{}", "A".repeat(40), "B".repeat(40));
        assert!(m.accepts(&long));
    }

    #[test]
    fn fibonacci_rule() {
        let r = LengthRule::Fibonacci;
        let expected = [1, 2, 3, 5, 8, 13, 21, 34, 55];
        for n in 0..=64 {
            assert_eq!(r.admits(n), expected.contains(&n), "n={n}");
        }
    }

    #[test]
    fn prime_rule() {
        let r = LengthRule::Prime;
        let primes = [
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
        ];
        for n in 0..=64 {
            assert_eq!(r.admits(n), primes.contains(&n), "n={n}");
        }
    }
}
