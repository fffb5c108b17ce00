//! Randomized search for words acting trivially on `Z^{2n}`.
//!
//! Each candidate word goes through two filters: first the base vector
//! `(0,1,…,0,1)`, then a battery of random vectors. A word that survives both
//! would be a candidate nontrivial element of the kernel of the action.
//!
//! Words that survive both filters are then handed to a relator-rewriting
//! search; a word it rewrites to the empty word is trivial in the group and
//! is listed under `certified_trivial` instead of as a potential
//! counterexample.
//!
//! Word `k` of a run draws everything it needs (its length, its letters, its
//! battery) from ChaCha8 stream `k` of the configured seed, so the report
//! does not depend on how indices are scheduled across workers.

use std::collections::HashSet;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::moves_vector;
use crate::battery::{random_vector, random_vectors};
use crate::error::Error;
use crate::par;
use crate::relators::certify_trivial;
use crate::word::BraidWord;

const CHUNK: usize = 1 << 16;
/// Cyclic words the triviality search may visit per surviving word.
pub const TRIVIALITY_BUDGET: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntConfig {
    pub strands: usize,
    pub min_length: usize,
    pub max_length: usize,
    pub word_count: usize,
    pub seed: u64,
    pub battery_size: usize,
    pub coefficient_bound: i64,
    /// Start vector of the first filter; `(0,1,…,0,1)` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_vector: Option<Vec<i64>>,
}

impl HuntConfig {
    pub fn new(strands: usize, max_length: usize, word_count: usize, seed: u64) -> Self {
        HuntConfig {
            strands,
            min_length: 1,
            max_length,
            word_count,
            seed,
            battery_size: 100,
            coefficient_bound: 100,
            base_vector: None,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.strands < 2 {
            return Err(Error::TooFewStrands(self.strands));
        }
        if self.min_length > self.max_length {
            return Err(Error::Config(format!(
                "min length {} exceeds max length {}",
                self.min_length, self.max_length
            )));
        }
        if self.battery_size == 0 {
            return Err(Error::Config("battery size must be positive".into()));
        }
        if self.coefficient_bound < 1 {
            return Err(Error::Config("coefficient bound must be at least 1".into()));
        }
        if let Some(base) = &self.base_vector {
            if base.len() != 2 * self.strands {
                return Err(Error::CoordinateLength { expected: 2 * self.strands, got: base.len() });
            }
        }
        Ok(())
    }

    fn stream(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }

    fn base(&self) -> Vec<i64> {
        match &self.base_vector {
            Some(base) => base.clone(),
            None => (0..self.strands).flat_map(|_| [0, 1]).collect(),
        }
    }
}

/// A word fixing the base vector, with the fraction of battery vectors it moves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseFixer {
    pub word: String,
    pub moved_fraction: f64,
    pub samples: usize,
}

impl BaseFixer {
    /// Fixes the base vector and the whole battery.
    pub fn passes_battery(&self) -> bool {
        self.moved_fraction == 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuntReport {
    pub config: HuntConfig,
    pub words_tested: usize,
    pub base_fixers: Vec<BaseFixer>,
    /// Words that fixed every vector tried and were rewritten to the empty
    /// word by the defining relators.
    pub certified_trivial: Vec<String>,
    /// Words that fixed every vector tried and could not be shown trivial.
    pub potential_counterexamples: Vec<String>,
    pub seed_partition: String,
    pub runtime_seconds: f64,
}

impl HuntReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One base fixer per line.
    pub fn base_fixers_jsonl(&self) -> String {
        self.base_fixers.iter().map(|f| serde_json::to_string(f).expect("fixer serializes") + "\n").collect()
    }

    /// The report with `runtime_seconds` zeroed, for comparing runs.
    pub fn without_runtime(&self) -> HuntReport {
        HuntReport { runtime_seconds: 0.0, ..self.clone() }
    }
}

/// Base-vector filter then battery, for a single word. `rng` supplies the battery.
fn examine<R: Rng>(config: &HuntConfig, base: &[i64], word: BraidWord, rng: &mut R) -> Option<(BraidWord, usize)> {
    let word = word.free_reduce();
    if word.is_empty() || moves_vector(base, &word) {
        return None;
    }
    let moved = (0..config.battery_size)
        .filter(|_| moves_vector(&random_vector(config.strands, config.coefficient_bound, rng), &word))
        .count();
    Some((word, moved))
}

fn assemble(config: &HuntConfig, words_tested: usize, hits: Vec<(BraidWord, usize)>, started: Instant) -> HuntReport {
    let mut seen = HashSet::new();
    let mut base_fixers = Vec::new();
    for (word, moved) in hits {
        let text = word.to_string();
        if seen.insert(text.clone()) {
            base_fixers.push(BaseFixer {
                word: text,
                moved_fraction: moved as f64 / config.battery_size as f64,
                samples: config.battery_size,
            });
        }
    }
    let survivors: Vec<&BaseFixer> = base_fixers.iter().filter(|f| f.passes_battery()).collect();
    let (certified_trivial, potential_counterexamples): (Vec<String>, Vec<String>) =
        survivors.into_iter().map(|f| f.word.clone()).partition(|text| {
            let word = BraidWord::parse(text, Some(config.strands)).expect("round trip");
            certify_trivial(&word, TRIVIALITY_BUDGET).is_some()
        });
    HuntReport {
        config: config.clone(),
        words_tested,
        base_fixers,
        certified_trivial,
        potential_counterexamples,
        seed_partition: "chacha8 stream per word index".into(),
        runtime_seconds: started.elapsed().as_secs_f64(),
    }
}

fn run_indexed<F>(count: usize, f: F) -> Vec<(BraidWord, usize)>
where
    F: Fn(usize) -> Option<(BraidWord, usize)> + Sync + Send,
{
    let mut hits = Vec::new();
    for chunk_start in (0..count).step_by(CHUNK) {
        let len = CHUNK.min(count - chunk_start);
        hits.extend(par::map_indexed(len, |k| f(chunk_start + k)).into_iter().flatten());
    }
    hits
}

/// Generates `word_count` random reduced words and filters them.
pub fn hunt(config: &HuntConfig) -> Result<HuntReport, Error> {
    hunt_with_workers(config, None)
}

/// [`hunt`] on a dedicated pool of `workers` threads.
pub fn hunt_with_workers(config: &HuntConfig, workers: Option<usize>) -> Result<HuntReport, Error> {
    config.validate()?;
    let started = Instant::now();
    let base = config.base();
    let hits = par::with_workers(workers, || {
        run_indexed(config.word_count, |k| {
            let mut rng = config.stream(k);
            let length = rng.random_range(config.min_length..=config.max_length);
            let word = BraidWord::random_reduced(config.strands, length, &mut rng);
            examine(config, &base, word, &mut rng)
        })
    });
    Ok(assemble(config, config.word_count, hits, started))
}

/// Runs the filters over a given corpus instead of random words. Word `k`
/// takes its battery from stream `k`.
pub fn hunt_corpus(config: &HuntConfig, corpus: &[BraidWord]) -> Result<HuntReport, Error> {
    config.validate()?;
    if let Some(w) = corpus.iter().find(|w| w.strands() != config.strands) {
        return Err(Error::StrandMismatch { left: config.strands, right: w.strands() });
    }
    let started = Instant::now();
    let base = config.base();
    let hits = run_indexed(corpus.len(), |k| {
        let mut rng = config.stream(k);
        examine(config, &base, corpus[k].clone(), &mut rng)
    });
    Ok(assemble(config, corpus.len(), hits, started))
}

/// `moved / samples`, kept as a ratio of counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovedFraction {
    pub moved: usize,
    pub samples: usize,
}

impl MovedFraction {
    pub fn value(&self) -> f64 {
        self.moved as f64 / self.samples as f64
    }

    /// Binomial standard error of [`MovedFraction::value`].
    pub fn standard_error(&self) -> f64 {
        let p = self.value();
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }
}

/// Fraction of `samples` random vectors (entries uniform in `[-bound, bound]`)
/// that `word` moves.
pub fn moved_fraction<R: Rng + ?Sized>(word: &BraidWord, samples: usize, bound: i64, rng: &mut R) -> MovedFraction {
    assert!(samples >= 1, "need at least one sample");
    let vectors = random_vectors(word.strands(), samples, bound, rng);
    let moved = par::count_indexed(vectors.len(), |k| moves_vector(&vectors[k], word));
    MovedFraction { moved, samples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Coordinates;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, Some(n)).unwrap()
    }

    #[test]
    fn empty_run() {
        let report = hunt(&HuntConfig::new(3, 10, 0, 1)).unwrap();
        assert_eq!(report.words_tested, 0);
        assert!(report.base_fixers.is_empty());
    }

    #[test]
    fn config_validation() {
        let mut c = HuntConfig::new(3, 10, 5, 1);
        c.min_length = 11;
        assert!(hunt(&c).is_err());
        let mut c = HuntConfig::new(3, 10, 5, 1);
        c.battery_size = 0;
        assert!(c.validate().is_err());
        let mut c = HuntConfig::new(3, 10, 5, 1);
        c.coefficient_bound = 0;
        assert!(c.validate().is_err());
        assert!(HuntConfig::new(1, 10, 5, 1).validate().is_err());
    }

    #[test]
    fn vb2_has_no_base_fixers_from_0201() {
        let mut config = HuntConfig::new(2, 40, 20_000, 4);
        config.base_vector = Some(vec![0, 2, 0, 1]);
        let report = hunt(&config).unwrap();
        assert!(report.base_fixers.is_empty(), "{:?}", report.base_fixers);
        // (0,1,0,1) is fixed by ρ₁, so the default base does see fixers
        config.base_vector = None;
        let report = hunt(&config).unwrap();
        assert!(report.base_fixers.iter().any(|f| f.word == "r1"));
        assert!(report.potential_counterexamples.is_empty());
    }

    #[test]
    fn injected_beta_is_a_base_fixer_but_fails_the_battery() {
        let beta = w("s1 r2 s1 S2 s1 s2 S1 r1 s2 r1 s1 r2 S1 r2 S2 S1 s2 S1 r2 S1", 3);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut corpus: Vec<BraidWord> = (0..50).map(|_| BraidWord::random_reduced(3, 12, &mut rng)).collect();
        corpus.insert(17, beta.clone());
        let mut config = HuntConfig::new(3, 30, 0, 8);
        config.battery_size = 4000;
        let report = hunt_corpus(&config, &corpus).unwrap();
        let hit = report.base_fixers.iter().find(|f| f.word == beta.to_string()).expect("beta listed");
        assert!(hit.moved_fraction > 0.0);
        assert!(!report.potential_counterexamples.contains(&beta.to_string()));
    }

    #[test]
    fn corpus_deduplicates_and_skips_trivial() {
        let config = HuntConfig::new(3, 30, 0, 1);
        let corpus = vec![w("r1 r2", 3), w("r1 r2", 3), w("r1 s1 S1 r2", 3), w("s1 S1", 3)];
        let report = hunt_corpus(&config, &corpus).unwrap();
        assert_eq!(report.words_tested, 4);
        assert_eq!(report.base_fixers.len(), 1);
        assert_eq!(report.base_fixers[0].word, "r1 r2");
        assert!(report.base_fixers[0].moved_fraction > 0.5);
    }

    #[test]
    fn deterministic_across_workers() {
        let config = HuntConfig::new(3, 12, 3000, 21);
        let one = hunt_with_workers(&config, Some(1)).unwrap().without_runtime();
        let many = hunt_with_workers(&config, Some(4)).unwrap().without_runtime();
        assert_eq!(one, many);
        assert!(!one.base_fixers.is_empty());
    }

    #[test]
    fn base_fixers_fix_the_base() {
        let report = hunt(&HuntConfig::new(4, 10, 2000, 3)).unwrap();
        let base = Coordinates::base(4).unwrap();
        for f in &report.base_fixers {
            let word = BraidWord::parse(&f.word, Some(4)).unwrap();
            assert_eq!(base.act_word(&word).unwrap(), base);
        }
    }

    #[test]
    fn moved_fraction_trivial_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mf = moved_fraction(&w("", 3), 500, 100, &mut rng);
        assert_eq!(mf.moved, 0);
        let mf = moved_fraction(&w("s1", 2), 500, 100, &mut rng);
        assert!(mf.value() > 0.9);
    }

    #[test]
    fn jsonl_has_one_line_per_fixer() {
        let config = HuntConfig::new(3, 30, 0, 1);
        let report = hunt_corpus(&config, &[w("r1 r2", 3), w("r2 r1", 3)]).unwrap();
        let text = report.base_fixers_jsonl();
        assert_eq!(text.lines().count(), 2);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["word"], "r1 r2");
        assert_eq!(first["samples"], 100);
    }
}
