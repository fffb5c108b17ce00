//! Deciding equality of braid words through their action on `Z^{2n}`.
//!
//! For `B_n` the action on the base vector `(0,1,…,0,1)` is faithful, and for
//! `VB_2` so is the action on `(0,2,0,1)`; both deciders are complete. For
//! `VB_n` with `n ≥ 3` faithfulness is an open problem, so
//! [`distinguish_vbn`] can prove two words distinct but otherwise answers
//! [`Status::Unknown`] unless the words reduce to the same letters.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::action::{act_in_place_i64, Coordinates};
use crate::battery::{random_vectors, DEFAULT_BOUND};
use crate::error::Error;
use crate::par;
use crate::word::{BraidWord, Permutation};

pub const DEFAULT_BATTERY: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Equal,
    Distinct,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Equal => "Equal",
            Status::Distinct => "Distinct",
            Status::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `vector · w1 = left` differs from `vector · w2 = right`.
    Vectors { vector: Coordinates, left: Coordinates, right: Coordinates },
    /// The words have different images in the symmetric group.
    Permutations { left: Permutation, right: Permutation },
    /// Both words send `vector` to `image`, and the action on `vector` is faithful.
    Faithful { vector: Coordinates, image: Coordinates },
    /// Both words freely reduce to `reduced`.
    IdenticalReduction { reduced: String },
    /// Not distinguished by any of `vectors_checked` vectors.
    Agreement { vectors_checked: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vectors { vector, left, right } => {
                write!(f, "({vector})·w1 = ({left}) but ({vector})·w2 = ({right})")
            }
            Witness::Permutations { left, right } => write!(f, "π(w1) = [{left}] but π(w2) = [{right}]"),
            Witness::Faithful { vector, image } => {
                write!(f, "both send ({vector}) to ({image}); the action on this vector is faithful")
            }
            Witness::IdenticalReduction { reduced } => write!(f, "both freely reduce to \"{reduced}\""),
            Witness::Agreement { vectors_checked } => {
                write!(f, "no difference found on {vectors_checked} vectors")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn new(status: Status, witness: Witness) -> Self {
        Verdict { status, witness: Some(witness) }
    }

    /// Re-checks a `Vectors` or `Permutations` witness against the two words.
    pub fn witness_holds(&self, w1: &BraidWord, w2: &BraidWord) -> bool {
        match &self.witness {
            Some(Witness::Vectors { vector, left, right }) => {
                left != right
                    && vector.act_word(w1).ok().as_ref() == Some(left)
                    && vector.act_word(w2).ok().as_ref() == Some(right)
            }
            Some(Witness::Permutations { left, right }) => {
                left != right && &w1.permutation() == left && &w2.permutation() == right
            }
            _ => false,
        }
    }
}

fn same_strands(w1: &BraidWord, w2: &BraidWord) -> Result<usize, Error> {
    if w1.strands() != w2.strands() {
        return Err(Error::StrandMismatch { left: w1.strands(), right: w2.strands() });
    }
    Ok(w1.strands())
}

fn decide_on(vector: Coordinates, w1: &BraidWord, w2: &BraidWord) -> Result<Verdict, Error> {
    let left = vector.act_word_fast(w1)?;
    let right = vector.act_word_fast(w2)?;
    Ok(if left == right {
        Verdict::new(Status::Equal, Witness::Faithful { vector, image: left })
    } else {
        Verdict::new(Status::Distinct, Witness::Vectors { vector, left, right })
    })
}

/// Complete decider for the classical braid group.
pub fn are_equal_bn(w1: &BraidWord, w2: &BraidWord) -> Result<Verdict, Error> {
    let n = same_strands(w1, w2)?;
    for w in [w1, w2] {
        if let Some(l) = w.letters().iter().find(|l| l.is_rho()) {
            return Err(Error::VirtualLetter(l.to_string()));
        }
    }
    decide_on(Coordinates::base(n)?, w1, w2)
}

/// The start vector of the `VB_2` decider.
pub fn vb2_start() -> Coordinates {
    Coordinates::from_i64(&[0, 2, 0, 1]).expect("four entries")
}

/// Complete decider for `VB_2`.
pub fn are_equal_vb2(w1: &BraidWord, w2: &BraidWord) -> Result<Verdict, Error> {
    let n = same_strands(w1, w2)?;
    if n != 2 {
        return Err(Error::Config(format!("VB_2 decider needs 2 strands, got {n}")));
    }
    decide_on(vb2_start(), w1, w2)
}

fn images_differ(vector: &[i64], w1: &BraidWord, w2: &BraidWord) -> Option<bool> {
    let mut left = vector.to_vec();
    let mut right = vector.to_vec();
    if act_in_place_i64(&mut left, w1.letters()) && act_in_place_i64(&mut right, w2.letters()) {
        Some(left != right)
    } else {
        None
    }
}

/// Sound but incomplete test for `VB_n`. `battery` random vectors with
/// entries in `[-100, 100]` are drawn from `rng`.
pub fn distinguish_vbn<R: Rng + ?Sized>(
    w1: &BraidWord,
    w2: &BraidWord,
    battery: usize,
    rng: &mut R,
) -> Result<Verdict, Error> {
    let n = same_strands(w1, w2)?;
    let (r1, r2) = (w1.free_reduce(), w2.free_reduce());
    if r1 == r2 {
        return Ok(Verdict::new(Status::Equal, Witness::IdenticalReduction { reduced: r1.to_string() }));
    }
    let (p1, p2) = (w1.permutation(), w2.permutation());
    if p1 != p2 {
        return Ok(Verdict::new(Status::Distinct, Witness::Permutations { left: p1, right: p2 }));
    }
    if n == 2 {
        return are_equal_vb2(w1, w2);
    }
    let base = Coordinates::base(n)?;
    let (left, right) = (base.act_word_fast(w1)?, base.act_word_fast(w2)?);
    if left != right {
        return Ok(Verdict::new(Status::Distinct, Witness::Vectors { vector: base, left, right }));
    }
    let vectors = random_vectors(n, battery, DEFAULT_BOUND, rng);
    let hit = par::find_first(vectors.len(), |k| {
        let differs = images_differ(&vectors[k], w1, w2).unwrap_or_else(|| {
            let v = Coordinates::from_i64(&vectors[k]).expect("shape");
            v.act_word(w1).ok() != v.act_word(w2).ok()
        });
        differs.then_some(())
    });
    if let Some((k, ())) = hit {
        let vector = Coordinates::new(vectors[k].iter().map(|&x| BigInt::from(x)).collect())?;
        let left = vector.act_word(w1)?;
        let right = vector.act_word(w2)?;
        return Ok(Verdict::new(Status::Distinct, Witness::Vectors { vector, left, right }));
    }
    Ok(Verdict::new(Status::Unknown, Witness::Agreement { vectors_checked: battery + 1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, Some(n)).unwrap()
    }

    const MANTUROV: &str = "s1^2 r1 S1 r1 S1 r1 s1^2 r1 S1 r1 S1 r1";
    const BETA: &str = "s1 r2 s1 S2 s1 s2 S1 r1 s2 r1 s1 r2 S1 r2 S2 S1 s2 S1 r2 S1";

    #[test]
    fn bn_examples() {
        assert_eq!(are_equal_bn(&w("s1 s2 s1", 3), &w("s2 s1 s2", 3)).unwrap().status, Status::Equal);
        let v = are_equal_bn(&w("s1", 2), &w("S1", 2)).unwrap();
        assert_eq!(v.status, Status::Distinct);
        assert_eq!(
            v.witness,
            Some(Witness::Vectors {
                vector: Coordinates::base(2).unwrap(),
                left: Coordinates::from_i64(&[1, 0, 0, 2]).unwrap(),
                right: Coordinates::from_i64(&[-1, 0, 0, 2]).unwrap(),
            })
        );
        assert_eq!(are_equal_bn(&w("", 2), &w("s1 S1", 2)).unwrap().status, Status::Equal);
    }

    #[test]
    fn bn_rejects_bad_input() {
        assert!(matches!(are_equal_bn(&w("r1", 2), &w("", 2)), Err(Error::VirtualLetter(_))));
        assert!(matches!(are_equal_bn(&w("s1", 2), &w("s1", 3)), Err(Error::StrandMismatch { .. })));
    }

    #[test]
    fn vb2_examples() {
        let v = are_equal_vb2(&w(MANTUROV, 2), &w("", 2)).unwrap();
        assert_eq!(v.status, Status::Distinct);
        assert_eq!(are_equal_vb2(&w("r1 r1", 2), &w("", 2)).unwrap().status, Status::Equal);
        // (0,2,0,1)·σρ = (0,3,2,0) and (0,2,0,1)·ρσ = (1,0,0,3)
        let v = are_equal_vb2(&w("s1 r1", 2), &w("r1 s1", 2)).unwrap();
        assert_eq!(v.status, Status::Distinct);
        match v.witness {
            Some(Witness::Vectors { left, right, .. }) => {
                assert_eq!(left, Coordinates::from_i64(&[0, 3, 2, 0]).unwrap());
                assert_eq!(right, Coordinates::from_i64(&[1, 0, 0, 3]).unwrap());
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(are_equal_vb2(&w("s1", 3), &w("s1", 3)).is_err());
    }

    #[test]
    fn vbn_forbidden_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (a, b) = (w("r1 s2 s1", 3), w("s2 s1 r2", 3));
        let v = distinguish_vbn(&a, &b, 100, &mut rng).unwrap();
        assert_eq!(v.status, Status::Distinct);
        assert_eq!(
            v.witness,
            Some(Witness::Vectors {
                vector: Coordinates::base(3).unwrap(),
                left: Coordinates::from_i64(&[2, 0, 0, 1, 0, 2]).unwrap(),
                right: Coordinates::from_i64(&[2, 0, 0, 2, 0, 1]).unwrap(),
            })
        );
        assert!(v.witness_holds(&a, &b));
    }

    #[test]
    fn vbn_beta() {
        let beta = w(BETA, 3);
        let id = w("", 3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // β fixes the base vector but π(β) is a 3-cycle
        let v = distinguish_vbn(&beta, &id, 100, &mut rng).unwrap();
        assert_eq!(v.status, Status::Distinct);
        assert!(matches!(v.witness, Some(Witness::Permutations { .. })));
        assert!(v.witness_holds(&beta, &id));
    }

    #[test]
    fn vbn_battery_witness() {
        // β·ρ₂ρ₁ has trivial permutation and fixes the base vector, so only
        // the battery can separate it from the identity
        let gamma = w(&format!("{BETA} r2 r1"), 3);
        let id = w("", 3);
        assert!(gamma.permutation().is_identity());
        let base = Coordinates::base(3).unwrap();
        assert_eq!(base.act_word(&gamma).unwrap(), base);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v = distinguish_vbn(&gamma, &id, 1000, &mut rng).unwrap();
        assert_eq!(v.status, Status::Distinct);
        match &v.witness {
            Some(Witness::Vectors { vector, .. }) => assert_ne!(vector, &base),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(v.witness_holds(&gamma, &id));
    }

    #[test]
    fn vbn_self_and_unknown() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = w("s1 r2 S1 s2", 3);
        assert_eq!(distinguish_vbn(&a, &a, 10, &mut rng).unwrap().status, Status::Equal);
        // braid relation: same element, different letters
        let v = distinguish_vbn(&w("s1 s2 s1", 3), &w("s2 s1 s2", 3), 50, &mut rng).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(v.witness, Some(Witness::Agreement { vectors_checked: 51 }));
        // n = 2 delegates to the complete decider
        let v = distinguish_vbn(&w("r1 r1 s1", 2), &w("s1", 2), 0, &mut rng).unwrap();
        assert_eq!(v.status, Status::Equal);
    }

    #[test]
    fn vbn_permutation_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (a, b) = (w("s1", 3), w("s2", 3));
        let v = distinguish_vbn(&a, &b, 10, &mut rng).unwrap();
        assert!(matches!(v.witness, Some(Witness::Permutations { .. })));
        assert!(v.witness_holds(&a, &b));
    }
}
