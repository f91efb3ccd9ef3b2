//! Shared helpers for the engine benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cobord::{Classifier, GradedElement, OddPrime};

/// Deterministic batch of p-integral classes of the given degree.
pub fn sample_classes(classifier: &Classifier, degree: u32, count: usize) -> Vec<GradedElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0B0);
    (0..count)
        .map(|_| {
            classifier
                .alpha_basis()
                .random_integral_class(degree, &mut rng)
                .expect("degree within basis range")
        })
        .collect()
}

pub fn classifier(p: u32, n_max: u32, trunc: usize) -> Classifier {
    Classifier::new(OddPrime::new(p).unwrap(), n_max, trunc).expect("valid classifier")
}
