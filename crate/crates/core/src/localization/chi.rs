use super::classes::lrr_sum;
use super::LocalizationError;
use crate::kalgebra::Weight;
use crate::Poly;

/// Tangent weights at a fixed point and the weight of a line bundle there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointData {
    pub tangent_weights: Vec<Weight>,
    pub bundle_weight: Weight,
}

/// `Σ_p t^{bundle_p} / eu(T_p)` as a Laurent polynomial.
pub fn chi_via_localization(
    rank: usize,
    data: &[FixedPointData],
) -> Result<Poly, LocalizationError> {
    let terms: Vec<(Poly, Vec<Weight>)> = data
        .iter()
        .map(|d| (Poly::t(d.bundle_weight.clone()), d.tangent_weights.clone()))
        .collect();
    lrr_sum(rank, &[], &terms).map_err(|w| LocalizationError::NonPolynomial {
        point: "(sum)".into(),
        numerator: w.numerator,
        denominator: w.denominator,
    })
}

/// Fixed-point data of `O(m)` on `ℙ^{r-1}` with torus weights `ε_1..ε_r`:
/// at `e_k` the tangent weights are `ε_l - ε_k` and the fiber weight is `-m·ε_k`.
pub fn projective_space(r: usize, m: i64) -> Vec<FixedPointData> {
    (0..r)
        .map(|k| {
            let ek = Weight::unit(r, k);
            FixedPointData {
                tangent_weights: (0..r)
                    .filter(|&l| l != k)
                    .map(|l| &Weight::unit(r, l) - &ek)
                    .collect(),
                bundle_weight: ek.scale(&crate::kalgebra::rational::int(-m)),
            }
        })
        .collect()
}
