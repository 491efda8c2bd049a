//! Inputs shared by the benchmarks.

use gorcheck_core::gen::{random_string_algebra, GenLimits};
use gorcheck_core::StringAlgebra;

/// Generated string algebras for seeds `0..n`, validated once up front so
/// the timed loops never see the validation cost.
pub fn generated(n: u64, max_vertices: u32, max_arrows: usize) -> Vec<StringAlgebra> {
    (0..n)
        .map(|seed| {
            let bq = random_string_algebra(&GenLimits::new(max_vertices, max_arrows, 4, seed))
                .expect("generator limits are valid");
            StringAlgebra::new(bq).expect("generator output validates")
        })
        .collect()
}
