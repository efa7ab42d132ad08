//! Fixtures shared by the benchmarks in `benches/`.

use homotope_core::families::{family_alpha, family_row, row_pair, sample_params};
use homotope_core::sampling::rng;
use homotope_core::{Field, JordanPair, QMatrix};

/// A seeded member of table row `label` on the `p × q` pair over `field`.
pub fn table_member(label: &str, field: Field, p: usize, q: usize, seed: u64) -> (JordanPair, QMatrix) {
    let row = family_row(label).expect("known row");
    let pair = row_pair(row, field, p, q).expect("row is defined over the field");
    let params = sample_params(label, &pair, &mut rng(seed)).expect("parameters fit the pair");
    let inst = family_alpha(label, &pair, &params).expect("table rows are members");
    (pair, inst.alpha.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let (p, a) = table_member("1.b", Field::Complex, 2, 2, 1);
        assert_eq!(a.shape(), (p.dim(homotope_core::Side::Minus), p.dim(homotope_core::Side::Plus)));
    }
}
