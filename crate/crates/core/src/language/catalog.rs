//! The built-in catalog of 46 languages: 22 regular, 12 context-free, and 12
//! context-sensitive instances over alphabets drawn from `{A,B,C,D}`.

use std::sync::OnceLock;

use super::dfa::Dfa;
use super::model::{BlockLang, LanguageModel, LengthRule};
use super::{ChomskyClass, LanguageSpec};

const AB: [char; 2] = ['A', 'B'];
const ABC: [char; 3] = ['A', 'B', 'C'];
const ABCD: [char; 4] = ['A', 'B', 'C', 'D'];

fn regular(id: &str, description: &str, trans: Vec<Vec<usize>>, accept: Vec<bool>) -> LanguageSpec {
    LanguageSpec::new(
        id,
        ChomskyClass::Regular,
        &AB,
        description,
        LanguageModel::Dfa(Dfa::new(&AB, trans, accept, 0)),
    )
}

fn blocks(
    id: &str,
    class: ChomskyClass,
    alphabet: &[char],
    description: &str,
    nparams: u8,
    blocks: Vec<(char, super::model::ExpFn)>,
) -> LanguageSpec {
    LanguageSpec::new(
        id,
        class,
        alphabet,
        description,
        LanguageModel::Blocks(BlockLang::new(blocks, nparams, None)),
    )
}

/// The full catalog in its canonical (posterior tie-break) order.
pub fn language_catalog() -> &'static [LanguageSpec] {
    static CATALOG: OnceLock<Vec<LanguageSpec>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

fn build_catalog() -> Vec<LanguageSpec> {
    let mut v: Vec<LanguageSpec> = Vec::with_capacity(46);

    // ----- Regular (complexity 1) -----
    v.push(regular(
        "a-star",
        "Strings consisting only of A's, including the empty string: A*.",
        vec![vec![0, 1], vec![1, 1]],
        vec![true, false],
    ));
    v.push(regular(
        "b-star",
        "Strings consisting only of B's, including the empty string: B*.",
        vec![vec![1, 0], vec![1, 1]],
        vec![true, false],
    ));
    v.push(regular(
        "ab-star",
        "Zero or more repetitions of the block AB: (AB)*.",
        vec![vec![1, 2], vec![2, 0], vec![2, 2]],
        vec![true, false, false],
    ));
    v.push(regular(
        "aab-star",
        "Zero or more repetitions of the block AAB: (AAB)*.",
        vec![vec![1, 3], vec![2, 3], vec![3, 0], vec![3, 3]],
        vec![true, false, false, false],
    ));
    v.push(regular(
        "abb-star",
        "Zero or more repetitions of the block ABB: (ABB)*.",
        vec![vec![1, 3], vec![3, 2], vec![3, 0], vec![3, 3]],
        vec![true, false, false, false],
    ));
    v.push(regular(
        "any-ab",
        "Any string over the symbols A and B, with no further restriction.",
        vec![vec![0, 0]],
        vec![true],
    ));
    v.push(regular(
        "even-a",
        "Strings over A and B containing an even number of A's.",
        vec![vec![1, 0], vec![0, 1]],
        vec![true, false],
    ));
    v.push(regular(
        "odd-a",
        "Strings over A and B containing an odd number of A's.",
        vec![vec![1, 0], vec![0, 1]],
        vec![false, true],
    ));
    v.push(regular(
        "even-length",
        "Strings over A and B whose length is even.",
        vec![vec![1, 1], vec![0, 0]],
        vec![true, false],
    ));
    v.push(regular(
        "ends-ab",
        "Strings over A and B that end with the block AB.",
        vec![vec![1, 0], vec![1, 2], vec![1, 0]],
        vec![false, false, true],
    ));
    v.push(regular(
        "starts-a",
        "Nonempty strings over A and B that start with A.",
        vec![vec![1, 2], vec![1, 1], vec![2, 2]],
        vec![false, true, false],
    ));
    v.push(regular(
        "contains-abba",
        "Strings over A and B that contain ABBA as a substring.",
        vec![
            vec![1, 0],
            vec![1, 2],
            vec![1, 3],
            vec![4, 0],
            vec![4, 4],
        ],
        vec![false, false, false, false, true],
    ));
    v.push(regular(
        "contains-aaa",
        "Strings over A and B that contain three consecutive A's.",
        vec![vec![1, 0], vec![2, 0], vec![3, 0], vec![3, 3]],
        vec![false, false, false, true],
    ));
    v.push(regular(
        "no-aa",
        "Strings over A and B with no two consecutive A's.",
        vec![vec![1, 0], vec![2, 0], vec![2, 2]],
        vec![true, true, false],
    ));
    v.push(regular(
        "a-then-b",
        "A block of A's followed by a block of B's, either possibly empty: AnBm.",
        vec![vec![0, 1], vec![2, 1], vec![2, 2]],
        vec![true, true, false],
    ));
    v.push(regular(
        "a-plus-b-plus",
        "One or more A's followed by one or more B's.",
        vec![vec![1, 3], vec![1, 2], vec![3, 2], vec![3, 3]],
        vec![false, false, true, false],
    ));
    v.push(regular(
        "alternating",
        "Strings over A and B in which adjacent symbols always differ.",
        vec![vec![1, 2], vec![3, 2], vec![1, 3], vec![3, 3]],
        vec![true, true, true, false],
    ));
    v.push(regular(
        "length-mult-3",
        "Strings over A and B whose length is a multiple of three.",
        vec![vec![1, 1], vec![2, 2], vec![0, 0]],
        vec![true, false, false],
    ));
    v.push(regular(
        "one-b",
        "Strings over A and B containing exactly one B.",
        vec![vec![0, 1], vec![1, 2], vec![2, 2]],
        vec![false, true, false],
    ));
    v.push(regular(
        "at-most-two-a",
        "Strings over A and B containing at most two A's.",
        vec![vec![1, 0], vec![2, 1], vec![3, 2], vec![3, 3]],
        vec![true, true, true, false],
    ));
    v.push(regular(
        "a-implies-b",
        "Strings over A and B in which every A is immediately followed by a B.",
        vec![vec![1, 0], vec![2, 0], vec![2, 2]],
        vec![true, false, false],
    ));
    v.push(regular(
        "third-is-a",
        "Strings over A and B of length at least three whose third symbol is A.",
        vec![
            vec![1, 1],
            vec![2, 2],
            vec![3, 4],
            vec![3, 3],
            vec![4, 4],
        ],
        vec![false, false, false, true, false],
    ));

    // ----- Context-free (complexity 3) -----
    v.push(blocks(
        "anbn",
        ChomskyClass::ContextFree,
        &AB,
        "A block of n A's followed by exactly n B's: AnBn (n may be zero).",
        1,
        vec![('A', |n, _| n), ('B', |n, _| n)],
    ));
    v.push(blocks(
        "anb2n",
        ChomskyClass::ContextFree,
        &AB,
        "n A's followed by twice as many B's: AnB2n.",
        1,
        vec![('A', |n, _| n), ('B', |n, _| 2 * n)],
    ));
    v.push(blocks(
        "a2nbn",
        ChomskyClass::ContextFree,
        &AB,
        "Twice as many A's as B's, A's first: A2nBn.",
        1,
        vec![('A', |n, _| 2 * n), ('B', |n, _| n)],
    ));
    v.push(blocks(
        "anbman",
        ChomskyClass::ContextFree,
        &AB,
        "n A's, then any number of B's, then n A's again: AnBmAn.",
        2,
        vec![('A', |n, _| n), ('B', |_, m| m), ('A', |n, _| n)],
    ));
    v.push(LanguageSpec::new(
        "palindrome",
        ChomskyClass::ContextFree,
        &AB,
        "Strings over A and B that read the same forwards and backwards.",
        LanguageModel::Palindrome,
    ));
    v.push(LanguageSpec::new(
        "even-palindrome",
        ChomskyClass::ContextFree,
        &AB,
        "Even-length mirrored strings: a first half followed by its reverse.",
        LanguageModel::EvenPalindrome,
    ));
    v.push(LanguageSpec::new(
        "dyck",
        ChomskyClass::ContextFree,
        &AB,
        "Balanced bracket strings where A opens and B closes: every prefix has at least as many A's as B's and totals are equal.",
        LanguageModel::Dyck1,
    ));
    v.push(blocks(
        "anbncm",
        ChomskyClass::ContextFree,
        &ABC,
        "n A's, n B's, then any number of C's: AnBnCm.",
        2,
        vec![('A', |n, _| n), ('B', |n, _| n), ('C', |_, m| m)],
    ));
    v.push(blocks(
        "ambncn",
        ChomskyClass::ContextFree,
        &ABC,
        "Any number of A's, then n B's and exactly n C's: AmBnCn.",
        2,
        vec![('A', |_, m| m), ('B', |n, _| n), ('C', |n, _| n)],
    ));
    v.push(LanguageSpec::new(
        "equal-ab",
        ChomskyClass::ContextFree,
        &AB,
        "Strings containing equally many A's and B's, in any order.",
        LanguageModel::EqualCount,
    ));
    v.push(LanguageSpec::new(
        "more-a",
        ChomskyClass::ContextFree,
        &AB,
        "Strings containing strictly more A's than B's.",
        LanguageModel::MajorityA,
    ));
    v.push(LanguageSpec::new(
        "anbm-n-ge-m",
        ChomskyClass::ContextFree,
        &AB,
        "A block of A's followed by a block of no more B's than A's: AnBm with n >= m.",
        LanguageModel::Blocks(BlockLang::new(
            vec![('A', |n, _| n), ('B', |_, m| m)],
            2,
            Some(|n, m| n >= m),
        )),
    ));

    // ----- Context-sensitive (complexity 5) -----
    v.push(LanguageSpec::new(
        "xx",
        ChomskyClass::ContextSensitive,
        &AB,
        "A string over A and B repeated twice: ww.",
        LanguageModel::Copy { copies: 2 },
    ));
    v.push(LanguageSpec::new(
        "xxx",
        ChomskyClass::ContextSensitive,
        &AB,
        "A string over A and B repeated three times: www.",
        LanguageModel::Copy { copies: 3 },
    ));
    v.push(blocks(
        "anbmanbm",
        ChomskyClass::ContextSensitive,
        &AB,
        "A's then B's, with both blocks repeated once more with the same lengths: AnBmAnBm (n or m may be zero).",
        2,
        vec![
            ('A', |n, _| n),
            ('B', |_, m| m),
            ('A', |n, _| n),
            ('B', |_, m| m),
        ],
    ));
    v.push(blocks(
        "anbncn",
        ChomskyClass::ContextSensitive,
        &ABC,
        "Equal blocks of A's, B's and C's: AnBnCn.",
        1,
        vec![('A', |n, _| n), ('B', |n, _| n), ('C', |n, _| n)],
    ));
    v.push(blocks(
        "anbncndn",
        ChomskyClass::ContextSensitive,
        &ABCD,
        "Equal blocks of A's, B's, C's and D's: AnBnCnDn.",
        1,
        vec![
            ('A', |n, _| n),
            ('B', |n, _| n),
            ('C', |n, _| n),
            ('D', |n, _| n),
        ],
    ));
    v.push(LanguageSpec::new(
        "power2-a",
        ChomskyClass::ContextSensitive,
        &AB,
        "A run of A's whose length is a power of two.",
        LanguageModel::UnaryLengths {
            sym: 'A',
            rule: LengthRule::PowerOfTwo,
        },
    ));
    v.push(LanguageSpec::new(
        "square-a",
        ChomskyClass::ContextSensitive,
        &AB,
        "A run of A's whose length is a perfect square (possibly empty).",
        LanguageModel::UnaryLengths {
            sym: 'A',
            rule: LengthRule::Square,
        },
    ));
    v.push(blocks(
        "anbnan",
        ChomskyClass::ContextSensitive,
        &AB,
        "Equal blocks of A's, B's, then A's again: AnBnAn.",
        1,
        vec![('A', |n, _| n), ('B', |n, _| n), ('A', |n, _| n)],
    ));
    v.push(LanguageSpec::new(
        "fib-a",
        ChomskyClass::ContextSensitive,
        &AB,
        "A run of A's whose length is a Fibonacci number (1, 2, 3, 5, 8, ...).",
        LanguageModel::UnaryLengths {
            sym: 'A',
            rule: LengthRule::Fibonacci,
        },
    ));
    v.push(blocks(
        "anbmcnm",
        ChomskyClass::ContextSensitive,
        &ABC,
        "n A's and m B's followed by n times m C's: AnBmC(n*m).",
        2,
        vec![('A', |n, _| n), ('B', |_, m| m), ('C', |n, m| n * m)],
    ));
    v.push(blocks(
        "anbnanbn",
        ChomskyClass::ContextSensitive,
        &AB,
        "Equal blocks of A's and B's repeated twice: AnBnAnBn.",
        1,
        vec![
            ('A', |n, _| n),
            ('B', |n, _| n),
            ('A', |n, _| n),
            ('B', |n, _| n),
        ],
    ));
    v.push(LanguageSpec::new(
        "prime-a",
        ChomskyClass::ContextSensitive,
        &AB,
        "A run of A's whose length is a prime number.",
        LanguageModel::UnaryLengths {
            sym: 'A',
            rule: LengthRule::Prime,
        },
    ));

    assert_eq!(v.len(), 46);
    v
}
