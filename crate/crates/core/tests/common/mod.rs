#![allow(dead_code)]

use amply::{generate, Family, Graph};

/// Every named amply regular graph used across the integration tests.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut families: Vec<Family> = (3..=6).map(Family::Hypercube).collect();
    families.extend([
        Family::Hamming(2, 3),
        Family::Shrikhande,
        Family::Rook(4),
        Family::Icosahedron,
        Family::Petersen,
        Family::Cycle(5),
        Family::Cycle(6),
        Family::CompleteBipartite(3, 3),
        Family::Johnson(8, 4),
    ]);
    families.into_iter().map(|f| (format!("{f:?}"), generate(&f).unwrap())).collect()
}
