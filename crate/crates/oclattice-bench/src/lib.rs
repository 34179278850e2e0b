//! Shared fixtures for the benchmark suite.

use oclattice::{Content, Letter, Partition, Presentation};

/// The two-identity presentation used throughout the benchmarks: one
/// identity that permutes a repeated letter past its neighbour and one
/// that swaps the tail of a linear word.
pub fn swap_presentation() -> Presentation {
    Presentation::parse_text("xxy = yxx\nxyz = xzy", None).unwrap()
}

/// Content with three letters of multiplicity two; its class has 90 words.
pub fn three_squares() -> Content {
    Content::from_entries([
        (Letter::new(1), 2),
        (Letter::new(2), 2),
        (Letter::new(3), 2),
    ])
    .unwrap()
}

/// Linear content on `n` letters: every class member is a permutation.
pub fn linear_content(n: usize) -> Content {
    Content::canonical(&Partition::new(vec![1; n]).unwrap())
}
