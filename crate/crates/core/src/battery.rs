//! Random test vectors with entries drawn uniformly from `[-bound, bound]`.

use rand::Rng;

pub const DEFAULT_BOUND: i64 = 100;

pub fn random_vector<R: Rng + ?Sized>(strands: usize, bound: i64, rng: &mut R) -> Vec<i64> {
    (0..2 * strands).map(|_| rng.random_range(-bound..=bound)).collect()
}

/// `count` vectors, drawn in sequence from `rng`.
pub fn random_vectors<R: Rng + ?Sized>(strands: usize, count: usize, bound: i64, rng: &mut R) -> Vec<Vec<i64>> {
    (0..count).map(|_| random_vector(strands, bound, rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn entries_stay_in_bounds_and_hit_both_ends() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let vs = random_vectors(2, 5000, 3, &mut rng);
        let flat: Vec<i64> = vs.into_iter().flatten().collect();
        assert!(flat.iter().all(|x| (-3..=3).contains(x)));
        assert!(flat.contains(&-3) && flat.contains(&3));
    }
}
