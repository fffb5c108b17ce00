//! Words in the generators of the classical and virtual braid groups.
//!
//! A word over `n` strands is a sequence of letters `σ_i`, `σ_i⁻¹` and `ρ_i`
//! with `1 ≤ i ≤ n − 1`. The text format is one token per letter:
//!
//! ```text
//! token := ('s' | 'S' | 'r') index [ '^' signed-integer ]
//! ```
//!
//! where `s` is `σ`, `S` is `σ⁻¹` and `r` is `ρ`. Tokens are separated by
//! whitespace. Exponents are expanded on parsing; since `ρ_i² = 1`, a `ρ`
//! token keeps one copy for an odd exponent and vanishes for an even one.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, ParseErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LetterKind {
    SigmaPositive,
    SigmaNegative,
    Rho,
}

impl LetterKind {
    pub fn inverse(self) -> Self {
        match self {
            LetterKind::SigmaPositive => LetterKind::SigmaNegative,
            LetterKind::SigmaNegative => LetterKind::SigmaPositive,
            LetterKind::Rho => LetterKind::Rho,
        }
    }

    fn symbol(self) -> char {
        match self {
            LetterKind::SigmaPositive => 's',
            LetterKind::SigmaNegative => 'S',
            LetterKind::Rho => 'r',
        }
    }
}

/// One generator letter. `index` is 1-based, so `σ_1` acts on strands 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub kind: LetterKind,
    pub index: usize,
}

impl Letter {
    pub const fn sigma(index: usize) -> Self {
        Letter { kind: LetterKind::SigmaPositive, index }
    }

    pub const fn sigma_inv(index: usize) -> Self {
        Letter { kind: LetterKind::SigmaNegative, index }
    }

    pub const fn rho(index: usize) -> Self {
        Letter { kind: LetterKind::Rho, index }
    }

    pub fn inverse(self) -> Self {
        Letter { kind: self.kind.inverse(), index: self.index }
    }

    /// True when `self` followed by `next` freely cancels.
    pub fn cancels(self, next: Letter) -> bool {
        self.index == next.index && self.kind.inverse() == next.kind
    }

    pub fn is_rho(self) -> bool {
        self.kind == LetterKind::Rho
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.symbol(), self.index)
    }
}

/// A word over a fixed number of strands. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, Error> {
        if strands < 2 {
            return Err(Error::TooFewStrands(strands));
        }
        if let Some(bad) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(Error::IndexOutOfRange { index: bad.index, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, Error> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_rho(&self) -> bool {
        self.letters.iter().any(|l| l.is_rho())
    }

    /// Parses `text`. When `strands` is `None` it is inferred as the largest
    /// index plus one, and at least 2.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self, ParseError> {
        if let Some(n) = strands {
            if n < 2 {
                return Err(ParseError { position: 0, token: String::new(), kind: ParseErrorKind::TooFewStrands(n) });
            }
        }
        let mut letters = Vec::new();
        let mut max_index = 1;
        for (position, token) in text.split_whitespace().enumerate() {
            let err = |kind| ParseError { position: position + 1, token: token.to_string(), kind };
            let mut chars = token.chars();
            let kind = match chars.next() {
                Some('s') => LetterKind::SigmaPositive,
                Some('S') => LetterKind::SigmaNegative,
                Some('r') => LetterKind::Rho,
                _ => return Err(err(ParseErrorKind::UnknownGenerator)),
            };
            let rest = chars.as_str();
            let (index_text, exponent_text) = match rest.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (rest, None),
            };
            if index_text.is_empty() || !index_text.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(ParseErrorKind::BadIndex));
            }
            let index: usize = index_text.parse().map_err(|_| err(ParseErrorKind::BadIndex))?;
            if index == 0 {
                return Err(err(ParseErrorKind::ZeroIndex));
            }
            if let Some(n) = strands {
                if index >= n {
                    return Err(err(ParseErrorKind::IndexTooLarge { index, strands: n }));
                }
            }
            let exponent: i64 = match exponent_text {
                None => 1,
                Some(e) => e.parse().map_err(|_| err(ParseErrorKind::BadExponent))?,
            };
            max_index = max_index.max(index);
            let letter = Letter { kind, index };
            if kind == LetterKind::Rho {
                if exponent % 2 != 0 {
                    letters.push(letter);
                }
            } else {
                let letter = if exponent < 0 { letter.inverse() } else { letter };
                let count = usize::try_from(exponent.unsigned_abs()).map_err(|_| err(ParseErrorKind::BadExponent))?;
                letters.extend(std::iter::repeat_n(letter, count));
            }
        }
        let strands = strands.unwrap_or(max_index + 1);
        Ok(BraidWord { strands, letters })
    }

    /// Repeatedly removes adjacent `σ_i σ_i⁻¹`, `σ_i⁻¹ σ_i` and `ρ_i ρ_i`.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        BraidWord { strands: self.strands, letters: stack }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    pub fn inverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        BraidWord { strands: self.strands, letters }
    }

    /// Concatenation `self · other`. Both words must live on the same strands.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, Error> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Image under `VB_n → S_n`, sending both `σ_i` and `ρ_i` to `(i i+1)`.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.strands).collect();
        for letter in &self.letters {
            images.swap(letter.index - 1, letter.index);
        }
        Permutation { images }
    }

    /// Every letter this word's group is generated by, in a fixed order.
    pub fn alphabet(strands: usize) -> Vec<Letter> {
        (1..strands).flat_map(|i| [Letter::sigma(i), Letter::sigma_inv(i), Letter::rho(i)]).collect()
    }

    /// The `σ`-only alphabet of the classical braid group.
    pub fn classical_alphabet(strands: usize) -> Vec<Letter> {
        (1..strands).flat_map(|i| [Letter::sigma(i), Letter::sigma_inv(i)]).collect()
    }

    /// A freely reduced word of exactly `length` letters: each letter is
    /// drawn uniformly among those that do not cancel the previous one.
    pub fn random_reduced<R: Rng + ?Sized>(strands: usize, length: usize, rng: &mut R) -> BraidWord {
        Self::random_reduced_over(&Self::alphabet(strands), strands, length, rng)
    }

    /// Same as [`BraidWord::random_reduced`] but over an explicit alphabet.
    pub fn random_reduced_over<R: Rng + ?Sized>(
        alphabet: &[Letter],
        strands: usize,
        length: usize,
        rng: &mut R,
    ) -> BraidWord {
        assert!(strands >= 2, "a braid word needs at least two strands");
        let mut letters: Vec<Letter> = Vec::with_capacity(length);
        for _ in 0..length {
            let letter = match letters.last() {
                None => alphabet[rng.random_range(0..alphabet.len())],
                Some(&prev) => {
                    // at most one letter of the alphabet cancels `prev`
                    let forbidden = prev.inverse();
                    let allowed = alphabet.len() - usize::from(alphabet.contains(&forbidden));
                    let mut k = rng.random_range(0..allowed);
                    let mut chosen = alphabet[0];
                    for &candidate in alphabet {
                        if candidate == forbidden {
                            continue;
                        }
                        if k == 0 {
                            chosen = candidate;
                            break;
                        }
                        k -= 1;
                    }
                    chosen
                }
            };
            letters.push(letter);
        }
        BraidWord { strands, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, letter) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BraidWord::parse(s, None)
    }
}

/// A permutation in one-line notation: `images[k]` is the strand sitting in
/// position `k + 1` after the word has been applied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::NotAPermutation(images));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| i == k + 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, image) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{image}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, Some(n)).unwrap()
    }

    #[test]
    fn parse_basic_tokens() {
        assert_eq!(w("s1 S2", 3).letters(), &[Letter::sigma(1), Letter::sigma_inv(2)]);
        assert_eq!(w("s1^3", 2).letters(), &[Letter::sigma(1); 3]);
        assert_eq!(w("s1^-2", 2).letters(), &[Letter::sigma_inv(1); 2]);
        assert_eq!(w("S1^-1", 2).letters(), &[Letter::sigma(1)]);
        assert_eq!(w("s1^0", 2).letters(), &[]);
        assert_eq!(w("r1^3 r1^-2 r1^-1", 2).letters(), &[Letter::rho(1), Letter::rho(1)]);
    }

    #[test]
    fn parse_example_beta() {
        let beta = w("s1 r2 s1 S2 s1 s2 S1 r1 s2 r1 s1 r2 S1 r2 S2 S1 s2 S1 r2 S1", 3);
        assert_eq!(beta.len(), 20);
        assert_eq!(beta.letters()[1], Letter::rho(2));
        assert_eq!(beta.letters()[19], Letter::sigma_inv(1));
    }

    #[test]
    fn parse_infers_strands() {
        assert_eq!(BraidWord::parse("s1 r4", None).unwrap().strands(), 5);
        assert_eq!(BraidWord::parse("", None).unwrap().strands(), 2);
        assert_eq!(BraidWord::parse("  ", Some(3)).unwrap().len(), 0);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = BraidWord::parse("s1 s0", None).unwrap_err();
        assert_eq!((e.position, e.kind.clone()), (2, ParseErrorKind::ZeroIndex));
        let e = BraidWord::parse("s1 s3", Some(3)).unwrap_err();
        assert_eq!(e.position, 2);
        assert!(matches!(e.kind, ParseErrorKind::IndexTooLarge { index: 3, strands: 3 }));
        let e = BraidWord::parse("x1", None).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownGenerator);
        let e = BraidWord::parse("s1 s2 s1^x", None).unwrap_err();
        assert_eq!((e.position, e.kind), (3, ParseErrorKind::BadExponent));
        let e = BraidWord::parse("s1^1.5", None).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadExponent);
        let e = BraidWord::parse("s", None).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadIndex);
        let e = BraidWord::parse("s+1", None).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadIndex);
    }

    #[test]
    fn format_canonical() {
        assert_eq!(w("s1 S2", 3).to_string(), "s1 S2");
        assert_eq!(BraidWord::identity(2).unwrap().to_string(), "");
        assert_eq!(w("r1 S1", 2).to_string(), "r1 S1");
        assert_eq!(w("s2^2", 3).to_string(), "s2 s2");
    }

    #[test]
    fn free_reduction() {
        assert!(w("s1 S1", 2).free_reduce().is_empty());
        assert_eq!(w("r1 r1 s2", 3).free_reduce(), w("s2", 3));
        assert!(w("s1 r2 r2 S1", 3).free_reduce().is_empty());
        // rho does not cancel sigma, and different indices never cancel
        assert_eq!(w("r1 s1 S2 s1", 3).free_reduce(), w("r1 s1 S2 s1", 3));
    }

    #[test]
    fn inverse_word() {
        assert_eq!(w("s1 r1", 2).inverse(), w("r1 S1", 2));
        assert!(BraidWord::identity(3).unwrap().inverse().is_empty());
        assert_eq!(w("s1 S2", 3).inverse(), w("s2 S1", 3));
    }

    #[test]
    fn permutation_images() {
        assert_eq!(w("s1", 2).permutation().images(), &[2, 1]);
        assert!(w("r1 r1", 2).permutation().is_identity());
        // (1 2)(2 3)(1 2) = (1 3)
        assert_eq!(w("s1 s2 s1", 3).permutation().images(), &[3, 2, 1]);
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn random_words_are_reduced_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(BraidWord::random_reduced(2, 0, &mut rng).is_empty());
        for seed in 0..200 {
            let a = BraidWord::random_reduced(2, 3, &mut ChaCha8Rng::seed_from_u64(seed));
            let b = BraidWord::random_reduced(2, 3, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(a, b);
            assert_eq!(a.len(), 3);
            // exhaustive fragment scan
            for pair in a.letters().windows(2) {
                let bad = matches!(
                    (pair[0].kind, pair[1].kind),
                    (LetterKind::SigmaPositive, LetterKind::SigmaNegative)
                        | (LetterKind::SigmaNegative, LetterKind::SigmaPositive)
                        | (LetterKind::Rho, LetterKind::Rho)
                ) && pair[0].index == pair[1].index;
                assert!(!bad, "{a}");
            }
        }
    }

    #[test]
    fn random_words_cover_alphabet() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let word = BraidWord::random_reduced(3, 600, &mut rng);
        for letter in BraidWord::alphabet(3) {
            assert!(word.letters().contains(&letter), "{letter} never drawn");
        }
    }
}
