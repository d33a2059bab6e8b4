//! The formal-language black box.
//!
//! A catalog of 46 languages over alphabets drawn from `{A,B,C,D}`, each with
//! a seeded string generator, an exact membership decider, and an exact
//! generation probability for the Bayesian reference model.
//!
//! Generation law: the string length is drawn from a geometric distribution
//! (p = 0.5) truncated to the language's feasible lengths within the
//! 64-character cap, then the string is chosen uniformly among all members of
//! that length. `generation_probability` scores exactly this law, so the
//! probabilities of all members within the cap sum to one.

mod catalog;
mod dfa;
mod model;

pub use catalog::language_catalog;
pub use dfa::Dfa;
pub use model::{BlockLang, LanguageModel, LengthRule};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// No generated string exceeds this many characters.
pub const MAX_GENERATED_LEN: usize = 64;

/// Geometric size parameter: P(size = k) before truncation is 0.5^(k+1).
const GEOMETRIC_P: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChomskyClass {
    Regular,
    ContextFree,
    ContextSensitive,
}

impl ChomskyClass {
    /// Rank used by the simplicity prior: 1 / 2 / 3.
    pub fn rank(self) -> u8 {
        match self {
            ChomskyClass::Regular => 1,
            ChomskyClass::ContextFree => 2,
            ChomskyClass::ContextSensitive => 3,
        }
    }
}

/// Result of a membership check, with the exact rendered message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub member: bool,
    pub message: String,
}

/// One language instance: identifier, class, alphabet, canonical rule
/// description (the judging ground truth), and its generative model.
pub struct LanguageSpec {
    pub language_id: String,
    pub chomsky_class: ChomskyClass,
    pub alphabet: Vec<char>,
    pub description: String,
    model: LanguageModel,
    lengths: OnceLock<LengthTable>,
}

struct LengthTable {
    /// (length, member count) for feasible lengths within the cap.
    entries: Vec<(usize, u128)>,
    /// Normalizer of the truncated geometric law over feasible lengths.
    z: f64,
}

fn geometric_weight(n: usize) -> f64 {
    (1.0 - GEOMETRIC_P).powi(n as i32) * GEOMETRIC_P
}

impl LanguageSpec {
    pub fn new(
        language_id: impl Into<String>,
        chomsky_class: ChomskyClass,
        alphabet: &[char],
        description: impl Into<String>,
        model: LanguageModel,
    ) -> Self {
        LanguageSpec {
            language_id: language_id.into(),
            chomsky_class,
            alphabet: alphabet.to_vec(),
            description: description.into(),
            model,
            lengths: OnceLock::new(),
        }
    }

    fn length_table(&self) -> &LengthTable {
        self.lengths.get_or_init(|| {
            let entries: Vec<(usize, u128)> = (0..=MAX_GENERATED_LEN)
                .filter_map(|n| {
                    let c = self.model.count(n);
                    (c > 0).then_some((n, c))
                })
                .collect();
            assert!(
                !entries.is_empty(),
                "language {} has no members within the cap",
                self.language_id
            );
            let z = entries.iter().map(|&(n, _)| geometric_weight(n)).sum();
            LengthTable { entries, z }
        })
    }

    /// Deterministically generates one valid string for the given seed.
    pub fn generate_string(&self, seed: u64) -> String {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.generate_with_rng(&mut rng)
    }

    pub fn generate_with_rng(&self, rng: &mut ChaCha8Rng) -> String {
        let table = self.length_table();
        let u: f64 = rng.gen::<f64>() * table.z;
        let mut acc = 0.0;
        let mut chosen = table.entries[table.entries.len() - 1];
        for &(n, count) in &table.entries {
            acc += geometric_weight(n);
            if u < acc {
                chosen = (n, count);
                break;
            }
        }
        let (n, count) = chosen;
        let idx = rng.gen_range(0..count);
        self.model.unrank(n, idx)
    }

    /// Exact membership under the language's rule (any length; symbols outside
    /// the alphabet simply make the string a non-member).
    pub fn is_member(&self, s: &str) -> MembershipVerdict {
        let member = self.model.accepts(s);
        let message = if member {
            format!("{s} is generated by the black-box")
        } else {
            format!("{s} cannot be generated by the black-box")
        };
        MembershipVerdict { member, message }
    }

    /// Exact probability that `generate_string` emits `s`. Zero for
    /// non-members and for members longer than the cap.
    pub fn generation_probability(&self, s: &str) -> f64 {
        if s.len() > MAX_GENERATED_LEN || !self.model.accepts(s) {
            return 0.0;
        }
        let table = self.length_table();
        let count = self.model.count(s.len());
        if count == 0 {
            return 0.0;
        }
        geometric_weight(s.len()) / table.z / (count as f64)
    }

    /// Complexity level: Regular 1, ContextFree 3, ContextSensitive 5.
    pub fn complexity(&self) -> u8 {
        match self.chomsky_class {
            ChomskyClass::Regular => 1,
            ChomskyClass::ContextFree => 3,
            ChomskyClass::ContextSensitive => 5,
        }
    }

    /// Sampling a query for scripted agents: a random string over the
    /// alphabet with geometric length (probes, not necessarily members).
    pub fn random_probe(&self, rng: &mut ChaCha8Rng) -> String {
        let mut len = 0usize;
        while len < MAX_GENERATED_LEN && rng.gen::<f64>() >= GEOMETRIC_P {
            len += 1;
        }
        (0..len)
            .map(|_| self.alphabet[rng.gen_range(0..self.alphabet.len())])
            .collect()
    }

    /// Enumerates every member with length at most `max_len` (feasible only
    /// for thin languages; used by tests and the Bayesian consistency checks).
    pub fn enumerate_members(&self, max_len: usize) -> Vec<String> {
        let mut out = Vec::new();
        for n in 0..=max_len.min(MAX_GENERATED_LEN) {
            let count = self.model.count(n);
            for idx in 0..count {
                out.push(self.model.unrank(n, idx));
            }
        }
        out
    }

    pub fn model(&self) -> &LanguageModel {
        &self.model
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(id: &str) -> &'static LanguageSpec {
        language_catalog()
            .iter()
            .find(|l| l.language_id == id)
            .unwrap_or_else(|| panic!("no language {id}"))
    }

    #[test]
    fn catalog_has_46_languages_with_unique_ids() {
        let cat = language_catalog();
        assert_eq!(cat.len(), 46);
        let mut ids: Vec<&str> = cat.iter().map(|l| l.language_id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 46);
        assert!(cat.iter().any(|l| l.language_id == "anbn"));
        assert!(cat.iter().any(|l| l.language_id == "anbmanbm"));
        assert!(cat.iter().any(|l| l.language_id == "xxx"));
    }

    #[test]
    fn verdict_messages_are_exact() {
        let l = lang("anbn");
        assert_eq!(
            l.is_member("AABB").message,
            "AABB is generated by the black-box"
        );
        assert_eq!(
            l.is_member("AAB").message,
            "AAB cannot be generated by the black-box"
        );
    }

    #[test]
    fn reference_membership_rows() {
        // triple copy accepts three equal thirds
        assert!(lang("xxx").is_member("ABABAB").member);
        // counting language with zero exponents: fourteen A's is n=7, m=0
        assert!(lang("anbmanbm").is_member("AAAAAAAAAAAAAA").member);
        assert!(lang("anbmanbm").is_member("AABBBBBBAABBBBBB").member);
        assert!(!lang("anbn").is_member("AAB").member);
        assert!(lang("anbn").is_member("AABB").member);
    }

    #[test]
    fn generation_satisfies_decider_and_cap() {
        use rand::SeedableRng;
        for l in language_catalog() {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            for _ in 0..200 {
                let s = l.generate_with_rng(&mut rng);
                assert!(s.len() <= MAX_GENERATED_LEN, "{}: {s}", l.language_id);
                assert!(l.is_member(&s).member, "{}: {s}", l.language_id);
            }
        }
    }

    #[test]
    fn generation_probability_sums_to_one_on_thin_languages() {
        for id in ["anbn", "ab-star", "power2-a", "anbncn", "anbmanbm"] {
            let l = lang(id);
            let members = l.enumerate_members(MAX_GENERATED_LEN);
            let total: f64 = members.iter().map(|s| l.generation_probability(s)).sum();
            assert!(
                (total - 1.0).abs() < 1e-9,
                "{id}: sum {total} over {} members",
                members.len()
            );
        }
    }

    #[test]
    fn generation_probability_zero_for_non_members() {
        assert_eq!(lang("anbn").generation_probability("AAB"), 0.0);
        assert_eq!(lang("anbn").generation_probability("CC"), 0.0);
        let long = "A".repeat(65);
        assert_eq!(lang("a-star").generation_probability(&long), 0.0);
        assert!(lang("a-star").is_member(&long).member);
    }

    #[test]
    fn empirical_frequency_matches_probability() {
        use rand::SeedableRng;
        let l = lang("anbn");
        let p = l.generation_probability("AABB");
        let trials = 100_000u32;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut hits = 0u32;
        for _ in 0..trials {
            if l.generate_with_rng(&mut rng) == "AABB" {
                hits += 1;
            }
        }
        let freq = f64::from(hits) / f64::from(trials);
        let se = (p * (1.0 - p) / f64::from(trials)).sqrt();
        assert!(
            (freq - p).abs() <= 3.0 * se,
            "freq {freq} vs p {p} (se {se})"
        );
    }

    #[test]
    fn complexity_levels() {
        assert_eq!(lang("ab-star").complexity(), 1);
        assert_eq!(lang("anbn").complexity(), 3);
        assert_eq!(lang("xxx").complexity(), 5);
    }
}
