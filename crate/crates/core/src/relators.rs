//! Certifying that a word is trivial by rewriting with defining relators.
//!
//! The search works on cyclic words (triviality is invariant under
//! conjugation). A move replaces a cyclic subword `u` by `v⁻¹` whenever `uv`
//! is a cyclic rotation of a defining relator or its inverse and `|u| ≥ |v|`,
//! so no move lengthens the word. Reaching the empty word proves triviality;
//! running out of budget proves nothing. This is deliberately not a solution
//! of the word problem: it only certifies the easy trivial words that random
//! search turns up, such as conjugates and products of short relators.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::word::{BraidWord, Letter};

/// The defining relators of `VB_n` as words equal to the identity.
/// `ρ_i²` is omitted since free reduction already handles it.
pub fn defining_relators(strands: usize) -> Vec<Vec<Letter>> {
    use crate::word::Letter as L;
    let (s, si, r) = (L::sigma, L::sigma_inv, L::rho);
    let mut out = Vec::new();
    for i in 1..strands {
        if i + 1 < strands {
            let j = i + 1;
            out.push(vec![s(i), s(j), s(i), si(j), si(i), si(j)]);
            out.push(vec![r(i), r(j), r(i), r(j), r(i), r(j)]);
            // ρ_i ρ_{i+1} σ_i = σ_{i+1} ρ_i ρ_{i+1}
            out.push(vec![r(i), r(j), s(i), r(j), r(i), si(j)]);
        }
        for j in i + 2..strands {
            out.push(vec![s(i), s(j), si(i), si(j)]);
            out.push(vec![r(i), r(j), r(i), r(j)]);
            out.push(vec![s(i), r(j), si(i), r(j)]);
            out.push(vec![s(j), r(i), si(j), r(i)]);
        }
    }
    out
}

fn inverse(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// Free and cyclic reduction.
fn cyclic_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
    for letter in word {
        match stack.last() {
            Some(&top) if top.cancels(letter) => {
                stack.pop();
            }
            _ => stack.push(letter),
        }
    }
    let (mut lo, mut hi) = (0, stack.len());
    while hi - lo >= 2 && stack[hi - 1].cancels(stack[lo]) {
        lo += 1;
        hi -= 1;
    }
    stack[lo..hi].to_vec()
}

/// Lexicographically least rotation, used to identify conjugate words.
fn canonical(word: &[Letter]) -> Vec<Letter> {
    (0..word.len().max(1))
        .map(|k| word[k..].iter().chain(&word[..k]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

struct Rule {
    lhs: Vec<Letter>,
    rhs: Vec<Letter>,
}

fn rules(strands: usize) -> Vec<Rule> {
    let mut rotations = HashSet::new();
    for relator in defining_relators(strands) {
        for word in [relator.clone(), inverse(&relator)] {
            for k in 0..word.len() {
                rotations.insert(word[k..].iter().chain(&word[..k]).copied().collect::<Vec<_>>());
            }
        }
    }
    let mut rotations: Vec<Vec<Letter>> = rotations.into_iter().collect();
    rotations.sort();
    let mut out = Vec::new();
    for rot in rotations {
        let len = rot.len();
        for k in len.div_ceil(2)..=len {
            out.push(Rule { lhs: rot[..k].to_vec(), rhs: inverse(&rot[k..]) });
        }
    }
    out
}

/// Outcome of a successful search: the chain of cyclic words, ending empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityProof {
    pub chain: Vec<String>,
}

/// Searches for a rewriting of `word` to the empty word, visiting at most
/// `budget` distinct cyclic words. Sound: `Some` means `word` is trivial.
pub fn certify_trivial(word: &BraidWord, budget: usize) -> Option<TrivialityProof> {
    let strands = word.strands();
    let render = |w: &[Letter]| BraidWord::new(strands, w.to_vec()).expect("valid letters").to_string();
    let start = canonical(&cyclic_reduce(word.letters().to_vec()));
    if start.is_empty() {
        return Some(TrivialityProof { chain: vec![String::new()] });
    }
    let rules = rules(strands);
    let mut parents: Vec<(Vec<Letter>, Option<usize>)> = vec![(start.clone(), None)];
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([start.clone()]);
    let mut queue = BinaryHeap::from([Reverse((start.len(), 0usize))]);
    while let Some(Reverse((_, id))) = queue.pop() {
        let current = parents[id].0.clone();
        let n = current.len();
        for rule in &rules {
            if rule.lhs.len() > n {
                continue;
            }
            for p in 0..n {
                if !(0..rule.lhs.len()).all(|t| current[(p + t) % n] == rule.lhs[t]) {
                    continue;
                }
                // the rotation starting just after the match, with rhs in front
                let rest = (rule.lhs.len()..n).map(|t| current[(p + t) % n]);
                let next = canonical(&cyclic_reduce(rule.rhs.iter().copied().chain(rest).collect()));
                if !seen.insert(next.clone()) {
                    continue;
                }
                parents.push((next.clone(), Some(id)));
                let next_id = parents.len() - 1;
                if next.is_empty() {
                    let mut chain = Vec::new();
                    let mut at = Some(next_id);
                    while let Some(k) = at {
                        chain.push(render(&parents[k].0));
                        at = parents[k].1;
                    }
                    chain.reverse();
                    return Some(TrivialityProof { chain });
                }
                if seen.len() >= budget {
                    return None;
                }
                queue.push(Reverse((next.len(), next_id)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Coordinates;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, Some(n)).unwrap()
    }

    #[test]
    fn relators_act_trivially() {
        for n in 2..=5 {
            let base = Coordinates::from_i64(&(0..2 * n as i64).map(|k| k * 7 - 11).collect::<Vec<_>>()).unwrap();
            for rel in defining_relators(n) {
                let word = BraidWord::new(n, rel).unwrap();
                assert_eq!(base.act_word(&word).unwrap(), base, "{word}");
            }
        }
        assert!(defining_relators(2).is_empty());
    }

    #[test]
    fn certifies_words_found_by_the_hunt() {
        for text in [
            "r1 r2 r1 r2 r1 r2",
            "S2 S1 s2 s1 s2 S1",
            "r1 s2 r2 r1 S1 r2 r1 s2 S1 r2",
            "r1 S1 S2 S1 S1 s2 s2 s1 s2 S1 s2 r1",
            "s2 s1 S2 s1 r2 r1 S2 S2 r1 r2 S2 s1",
            "s1 s3 S1 S3",
            "s1 r1 r1 S1",
        ] {
            let proof = certify_trivial(&w(text, 4), 20_000);
            let proof = proof.unwrap_or_else(|| panic!("no proof for {text}"));
            assert_eq!(proof.chain.last().map(String::as_str), Some(""));
        }
    }

    #[test]
    fn never_certifies_a_word_that_moves_a_vector() {
        let beta = "s1 r2 s1 S2 s1 s2 S1 r1 s2 r1 s1 r2 S1 r2 S2 S1 s2 S1 r2 S1";
        for text in [beta, "s1", "r1 r2", "s1 s2 s1 S1 S2", "s1 r1 S1 r1"] {
            assert!(certify_trivial(&w(text, 3), 5_000).is_none(), "{text}");
        }
    }
}
