use crate::rng::stable_hash64;

/// Per-run seed from `(master seed, algorithm id, problem id, run index)`.
pub fn derive_seed(master_seed: u64, algorithm: &str, problem: &str, run: u32) -> u64 {
    stable_hash64(&[
        b"run",
        &master_seed.to_le_bytes(),
        algorithm.as_bytes(),
        problem.as_bytes(),
        &run.to_le_bytes(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn stable_and_distinct() {
        assert_eq!(derive_seed(1, "RIcDE", "sphere_D10", 0), derive_seed(1, "RIcDE", "sphere_D10", 0));
        assert_ne!(derive_seed(1, "RIcDE", "sphere_D10", 0), derive_seed(1, "RIcDE", "sphere_D10", 1));
        assert_ne!(derive_seed(1, "RIcDE", "sphere_D10", 0), derive_seed(2, "RIcDE", "sphere_D10", 0));
    }

    #[test]
    fn no_collisions_in_1e5_tuples() {
        let mut seen = HashSet::new();
        for a in ["cDE", "RIcDE", "RecDE", "RW"] {
            for p in 0..250 {
                let pid = format!("p{p}");
                for r in 0..100 {
                    assert!(seen.insert(derive_seed(7, a, &pid, r)));
                }
            }
        }
        assert_eq!(seen.len(), 100_000);
    }
}
