//! The piecewise-linear action of `B_n` and `VB_n` on `Z^{2n}`.
//!
//! Vectors are acted on from the right: `v · (w₁ w₂) = (v · w₁) · w₂`. The
//! generator `σ_i^{±1}` or `ρ_i` rewrites the quadruple
//! `(a_i, b_i, a_{i+1}, b_{i+1})` and leaves every other entry alone.
//!
//! The formulas are written once over [`Scalar`], which is implemented for
//! [`BigInt`] (exact, never fails) and for `i64` (checked, returns `None` on
//! overflow). The `i64` path is only ever used with a fallback to the exact
//! one, so both produce identical results.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::word::{BraidWord, Letter, LetterKind};

/// Integer types the action can be evaluated in.
pub trait Scalar: Clone + Ord {
    fn zero() -> Self;
    fn add_checked(&self, rhs: &Self) -> Option<Self>;
    fn sub_checked(&self, rhs: &Self) -> Option<Self>;
}

impl Scalar for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }

    fn add_checked(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }

    fn sub_checked(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }

    #[inline]
    fn add_checked(&self, rhs: &Self) -> Option<Self> {
        self.checked_add(*rhs)
    }

    #[inline]
    fn sub_checked(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(*rhs)
    }
}

/// `x⁺ = max(0, x)`
pub fn pos_part<T: Scalar>(x: &T) -> T {
    if *x > T::zero() {
        x.clone()
    } else {
        T::zero()
    }
}

/// `x⁻ = min(x, 0)`
pub fn neg_part<T: Scalar>(x: &T) -> T {
    if *x < T::zero() {
        x.clone()
    } else {
        T::zero()
    }
}

#[inline]
fn add<T: Scalar>(x: &T, y: &T) -> Option<T> {
    x.add_checked(y)
}

#[inline]
fn sub<T: Scalar>(x: &T, y: &T) -> Option<T> {
    x.sub_checked(y)
}

#[inline]
pub(crate) fn sigma<T: Scalar>([a, b, c, d]: &[T; 4]) -> Option<[T; 4]> {
    let (bp, bn, dp, dn) = (pos_part(b), neg_part(b), pos_part(d), neg_part(d));
    // e = a − b⁻ − c + d⁺
    let e = add(&sub(&sub(a, &bn)?, c)?, &dp)?;
    let ep = pos_part(&e);
    let a2 = add(&add(a, &bp)?, &pos_part(&sub(&dp, &e)?))?;
    let b2 = sub(d, &ep)?;
    let c2 = add(&add(c, &dn)?, &neg_part(&add(&bn, &e)?))?;
    let d2 = add(b, &ep)?;
    Some([a2, b2, c2, d2])
}

#[inline]
pub(crate) fn sigma_inv<T: Scalar>([a, b, c, d]: &[T; 4]) -> Option<[T; 4]> {
    let (bp, bn, dp, dn) = (pos_part(b), neg_part(b), pos_part(d), neg_part(d));
    // f = a + b⁻ − c − d⁺
    let f = sub(&sub(&add(a, &bn)?, c)?, &dp)?;
    let fnn = neg_part(&f);
    let a2 = sub(&sub(a, &bp)?, &pos_part(&add(&dp, &f)?))?;
    let b2 = add(d, &fnn)?;
    let c2 = sub(&sub(c, &dn)?, &neg_part(&sub(&bn, &f)?))?;
    let d2 = sub(b, &fnn)?;
    Some([a2, b2, c2, d2])
}

#[inline]
fn apply_letter<T: Scalar>(entries: &mut [T], letter: Letter) -> Option<()> {
    let start = 2 * (letter.index - 1);
    let window = &mut entries[start..start + 4];
    match letter.kind {
        LetterKind::Rho => {
            window.swap(0, 2);
            window.swap(1, 3);
        }
        LetterKind::SigmaPositive | LetterKind::SigmaNegative => {
            let q = [window[0].clone(), window[1].clone(), window[2].clone(), window[3].clone()];
            let image = if letter.kind == LetterKind::SigmaPositive { sigma(&q)? } else { sigma_inv(&q)? };
            for (slot, value) in window.iter_mut().zip(image) {
                *slot = value;
            }
        }
    }
    Some(())
}

/// Applies `letters` to `entries` in place in machine arithmetic. Returns
/// `false` on overflow, in which case `entries` holds a partial result.
///
/// Panics if a letter index does not fit `entries.len() / 2` strands.
pub fn act_in_place_i64(entries: &mut [i64], letters: &[Letter]) -> bool {
    letters.iter().all(|&l| apply_letter(entries, l).is_some())
}

/// Whether `word` moves `start`, using `i64` arithmetic with an exact
/// fallback on overflow.
pub fn moves_vector(start: &[i64], word: &BraidWord) -> bool {
    debug_assert_eq!(start.len(), 2 * word.strands());
    let mut scratch = start.to_vec();
    if act_in_place_i64(&mut scratch, word.letters()) {
        return scratch != start;
    }
    let mut exact: Vec<BigInt> = start.iter().map(|&x| BigInt::from(x)).collect();
    for &letter in word.letters() {
        apply_letter(&mut exact, letter).expect("exact arithmetic cannot overflow");
    }
    exact.iter().zip(start).any(|(x, &y)| *x != BigInt::from(y))
}

/// A quadruple `(a, b, c, d) ∈ Z⁴`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quad {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Quad {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Quad { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    fn to_array(&self) -> [BigInt; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    fn from_array([a, b, c, d]: [BigInt; 4]) -> Self {
        Quad { a, b, c, d }
    }

    pub fn act_sigma(&self) -> Quad {
        Quad::from_array(sigma(&self.to_array()).expect("exact"))
    }

    pub fn act_sigma_inv(&self) -> Quad {
        Quad::from_array(sigma_inv(&self.to_array()).expect("exact"))
    }

    pub fn act_rho(&self) -> Quad {
        Quad { a: self.c.clone(), b: self.d.clone(), c: self.a.clone(), d: self.b.clone() }
    }

    pub fn act(&self, kind: LetterKind) -> Quad {
        match kind {
            LetterKind::SigmaPositive => self.act_sigma(),
            LetterKind::SigmaNegative => self.act_sigma_inv(),
            LetterKind::Rho => self.act_rho(),
        }
    }

    /// `|a| + |b| + |c| + |d|`
    pub fn l1_norm(&self) -> BigInt {
        self.a.abs() + self.b.abs() + self.c.abs() + self.d.abs()
    }

    /// `b + d`, preserved by every generator.
    pub fn even_sum(&self) -> BigInt {
        &self.b + &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl From<[i64; 4]> for Quad {
    fn from([a, b, c, d]: [i64; 4]) -> Self {
        Quad::new(a, b, c, d)
    }
}

/// A vector `(a_1, b_1, …, a_n, b_n) ∈ Z^{2n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coordinates {
    strands: usize,
    entries: Vec<BigInt>,
}

impl Coordinates {
    pub fn new(entries: Vec<BigInt>) -> Result<Self, Error> {
        if !entries.len().is_multiple_of(2) || entries.len() < 4 {
            return Err(Error::CoordinateLength { expected: 2 * (entries.len() / 2).max(2), got: entries.len() });
        }
        Ok(Coordinates { strands: entries.len() / 2, entries })
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self, Error> {
        Self::new(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `(0, 1, …, 0, 1)`
    pub fn base(strands: usize) -> Result<Self, Error> {
        if strands < 2 {
            return Err(Error::TooFewStrands(strands));
        }
        let entries = (0..strands).flat_map(|_| [BigInt::from(0), BigInt::from(1)]).collect();
        Ok(Coordinates { strands, entries })
    }

    /// Parses comma-separated integers, or `base` for [`Coordinates::base`].
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self, Error> {
        let text = text.trim();
        if text == "base" {
            return Self::base(strands.unwrap_or(2));
        }
        let entries = text
            .split(',')
            .map(|t| BigInt::from_str(t.trim()).map_err(|_| Error::BadCoordinate(t.trim().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(n) = strands {
            if entries.len() != 2 * n {
                return Err(Error::CoordinateLength { expected: 2 * n, got: entries.len() });
            }
        }
        Self::new(entries)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// `b_1 + … + b_n`
    pub fn even_sum(&self) -> BigInt {
        self.entries.iter().skip(1).step_by(2).sum()
    }

    /// Entries as `i64` when every one fits.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(|x| x.to_i64()).collect()
    }

    /// The quadruple `(a_i, b_i, a_{i+1}, b_{i+1})`, with `i` 1-based.
    pub fn quad_at(&self, index: usize) -> Quad {
        let s = 2 * (index - 1);
        Quad::new(
            self.entries[s].clone(),
            self.entries[s + 1].clone(),
            self.entries[s + 2].clone(),
            self.entries[s + 3].clone(),
        )
    }

    pub fn act_generator(&self, letter: Letter) -> Result<Coordinates, Error> {
        if letter.index == 0 || letter.index >= self.strands {
            return Err(Error::IndexOutOfRange { index: letter.index, strands: self.strands });
        }
        let mut out = self.clone();
        apply_letter(&mut out.entries, letter).expect("exact");
        Ok(out)
    }

    /// `self · word`, in exact arithmetic.
    pub fn act_word(&self, word: &BraidWord) -> Result<Coordinates, Error> {
        self.check_word(word)?;
        let mut out = self.clone();
        for &letter in word.letters() {
            apply_letter(&mut out.entries, letter).expect("exact");
        }
        Ok(out)
    }

    /// Same result as [`Coordinates::act_word`], computed in `i64` when no
    /// intermediate value overflows.
    pub fn act_word_fast(&self, word: &BraidWord) -> Result<Coordinates, Error> {
        self.check_word(word)?;
        if let Some(mut small) = self.to_i64() {
            if act_in_place_i64(&mut small, word.letters()) {
                return Coordinates::from_i64(&small);
            }
        }
        self.act_word(word)
    }

    fn check_word(&self, word: &BraidWord) -> Result<(), Error> {
        if word.strands() != self.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: word.strands() });
        }
        Ok(())
    }
}

impl fmt::Display for Coordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl From<Quad> for Coordinates {
    fn from(q: Quad) -> Self {
        Coordinates { strands: 2, entries: vec![q.a, q.b, q.c, q.d] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quad {
        Quad::new(a, b, c, d)
    }

    fn v(entries: &[i64]) -> Coordinates {
        Coordinates::from_i64(entries).unwrap()
    }

    fn word(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, Some(n)).unwrap()
    }

    #[test]
    fn positive_and_negative_parts() {
        for (x, p, n) in [(-3i64, 0i64, -3i64), (0, 0, 0), (5, 5, 0)] {
            assert_eq!(pos_part(&x), p);
            assert_eq!(neg_part(&x), n);
            assert_eq!(pos_part(&BigInt::from(x)) + neg_part(&BigInt::from(x)), BigInt::from(x));
        }
    }

    #[test]
    fn quad_sigma() {
        assert_eq!(q(0, 1, 0, 1).act_sigma(), q(1, 0, 0, 2));
        assert_eq!(q(0, 2, 0, 1).act_sigma(), q(2, 0, 0, 3));
        // an image of (3,1,6,1) would break b + d conservation (5 vs 2);
        // the formula gives (11,-6,1,11)
        assert_eq!(q(7, 4, 1, 1).act_sigma(), q(11, -6, 1, 11));
        assert_eq!(q(0, 0, 0, 0).act_sigma(), q(0, 0, 0, 0));
        assert_eq!(q(0, 0, 0, 1).act_sigma(), q(0, 0, 0, 1));
    }

    #[test]
    fn quad_sigma_inv() {
        assert_eq!(q(0, 1, 0, 1).act_sigma_inv(), q(-1, 0, 0, 2));
        assert_eq!(q(0, 0, 0, 0).act_sigma_inv(), q(0, 0, 0, 0));
        assert_eq!(q(7, 4, 1, 1).act_sigma_inv(), q(-3, 1, 6, 4));
        assert_eq!(q(1, 0, 0, 2).act_sigma_inv(), q(0, 1, 0, 1));
    }

    #[test]
    fn quad_rho() {
        assert_eq!(q(1, 0, 0, 2).act_rho(), q(0, 2, 1, 0));
        assert_eq!(q(4, -3, 4, -3).act_rho(), q(4, -3, 4, -3));
        assert_eq!(q(0, 2, 0, 1).act_rho(), q(0, 1, 0, 2));
    }

    #[test]
    fn generator_on_six_vector() {
        let base = Coordinates::base(3).unwrap();
        assert_eq!(base.act_generator(Letter::sigma(2)).unwrap(), v(&[0, 1, 1, 0, 0, 2]));
        assert_eq!(base.act_generator(Letter::rho(1)).unwrap(), base);
        assert_eq!(base.act_generator(Letter::sigma(1)).unwrap(), v(&[1, 0, 0, 2, 0, 1]));
        assert!(base.act_generator(Letter::sigma(3)).is_err());
    }

    #[test]
    fn word_actions() {
        let b3 = Coordinates::base(3).unwrap();
        let b2 = Coordinates::base(2).unwrap();
        assert_eq!(b3.act_word(&word("s1 s2 s1", 3)).unwrap(), v(&[2, 0, 1, 0, 0, 3]));
        assert_eq!(b3.act_word(&word("s1 S2", 3)).unwrap(), v(&[1, 0, -2, 0, 0, 3]));
        assert_eq!(b2.act_word(&word("s1^3", 2)).unwrap(), v(&[1, -2, 0, 4]));
        assert_eq!(b2.act_word(&word("s1 r1 S1", 2)).unwrap(), v(&[-2, -1, 1, 3]));
        let manturov = word("s1^2 r1 S1 r1 S1 r1 s1^2 r1 S1 r1 S1 r1", 2);
        assert_eq!(b2.act_word(&manturov).unwrap(), v(&[85, 49, -90, -47]));
        assert_eq!(b2.act_word(&BraidWord::identity(2).unwrap()).unwrap(), b2);
        assert!(b2.act_word(&word("s1", 3)).is_err());
    }

    #[test]
    fn base_vectors() {
        assert_eq!(Coordinates::base(2).unwrap(), v(&[0, 1, 0, 1]));
        assert_eq!(Coordinates::base(3).unwrap(), v(&[0, 1, 0, 1, 0, 1]));
        assert_eq!(Coordinates::base(4).unwrap(), v(&[0, 1, 0, 1, 0, 1, 0, 1]));
        assert!(Coordinates::base(1).is_err());
    }

    #[test]
    fn even_sums() {
        assert_eq!(v(&[0, 2, 0, 1]).even_sum(), BigInt::from(3));
        assert_eq!(v(&[0, 1, 0, 1, 0, 1]).even_sum(), BigInt::from(3));
        assert_eq!(v(&[85, 49, -90, -47]).even_sum(), BigInt::from(2));
    }

    #[test]
    fn csv_roundtrip() {
        let c = Coordinates::parse("85, 49,-90,-47", Some(2)).unwrap();
        assert_eq!(c.to_string(), "85,49,-90,-47");
        assert_eq!(Coordinates::parse("base", Some(3)).unwrap(), Coordinates::base(3).unwrap());
        assert!(Coordinates::parse("1,2,3", None).is_err());
        assert!(Coordinates::parse("1,2,3,x", None).is_err());
        assert!(Coordinates::parse("0,1,0,1", Some(3)).is_err());
        let big = "123456789012345678901234567890,-1,0,1";
        assert_eq!(Coordinates::parse(big, None).unwrap().to_string(), big);
    }

    #[test]
    fn fast_path_falls_back_on_overflow() {
        let start = v(&[i64::MAX - 1, 5, -7, i64::MAX / 2]);
        let w = word("s1 s1 S1 r1 s1", 2);
        assert_eq!(start.act_word_fast(&w).unwrap(), start.act_word(&w).unwrap());
        let mut raw = [i64::MAX - 1, 5, -7, i64::MAX / 2];
        assert!(!act_in_place_i64(&mut raw, word("s1 s1", 2).letters()));
    }

    #[test]
    fn moves_vector_matches_exact() {
        let base = [0, 1, 0, 1, 0, 1];
        assert!(!moves_vector(&base, &word("r1 r2", 3)));
        assert!(moves_vector(&base, &word("s1", 3)));
        let huge = [i64::MAX, i64::MAX, i64::MIN, i64::MIN];
        assert!(!moves_vector(&huge, &word("s1 S1", 2)));
    }
}
