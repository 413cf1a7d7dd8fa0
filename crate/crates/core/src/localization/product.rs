use crate::kalgebra::Weight;

use super::model::ResolutionModel;

/// Product with a smooth factor whose single fixed point has tangent weights
/// `factor`; the new directions are never boundary.
pub fn product_model(model: &ResolutionModel, factor: &[Weight]) -> ResolutionModel {
    let mut out = model.clone();
    for p in &mut out.ambient_points {
        p.tangent_weights.extend(factor.iter().cloned());
    }
    for c in &mut out.charts {
        c.tangent_weights.extend(factor.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalgebra::rational::rat;
    use crate::library;
    use crate::localization::{divisor_weight_at_point, lambda_y_dual, localized_class, Divisor};

    #[test]
    fn product_gains_lambda_factor() {
        let m = library::p1();
        let d = Divisor::single("D0", rat(1, 2));
        let u = vec![Weight::new(vec![rat(3, 1)])];
        let pm = product_model(&m, &u);
        for p in &m.ambient_points {
            let base = localized_class(&m, &d, &p.id).unwrap();
            let prod = localized_class(&pm, &d, &p.id).unwrap();
            assert_eq!(prod, &lambda_y_dual(1, &u) * &base);
            assert_eq!(
                divisor_weight_at_point(&pm, &d, &p.id).unwrap(),
                divisor_weight_at_point(&m, &d, &p.id).unwrap()
            );
        }
        assert_eq!(product_model(&m, &[]), m);
    }
}
