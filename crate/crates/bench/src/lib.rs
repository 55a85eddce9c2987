//! Shared inputs for the benchmarks.

use ppm_core::families::{flower_snark, goldberg_snark, petersen, FamilyInstance};

/// Petersen, J5, J7 and Goldberg(5) with their designated PPMs.
pub fn instances() -> Vec<(&'static str, FamilyInstance)> {
    vec![
        ("petersen", petersen()),
        ("flower5", flower_snark(5).expect("k = 5 is valid")),
        ("flower7", flower_snark(7).expect("k = 7 is valid")),
        ("goldberg5", goldberg_snark(5).expect("k = 5 is valid")),
    ]
}
