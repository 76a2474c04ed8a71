//! The six transformations of the simplex and their inverses where defined.
//!
//! - `clr`: centred log-ratio, log of parts over their geometric mean.
//! - `ilr`: isometric log-ratio, `z = H · clr(x)`.
//! - `alr`: additive log-ratio against a divisor component.
//! - `boxcox_ratio`: Box-Cox transform of component ratios; λ → 0 recovers alr.
//! - `alpha_power`: `u = 𝒞(x^α)`, a bijection of the open simplex for α ≠ 0.
//! - `alpha_isometric`: `z = (1/α) H (D·u − 1)`; α → 0 recovers ilr.
//!
//! At α = 0 the power transform degenerates (every composition maps to the
//! uniform one), so `alpha_power` rejects α = 0; the α = 0 member of the
//! family is reached only through the isometric route, where
//! `alpha_isometric` dispatches to `ilr`.

use crate::composition::{Composition, CompositionDataset};
use crate::error::{Error, Result};
use crate::helmert::HelmertBasis;

const ALPHA_DOMAIN: &str = "[-1, 1]";
const ALPHA_NONZERO_DOMAIN: &str = "[-1, 1] \\ {0} (use ilr for the α = 0 member)";

fn check_alpha_range(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha { alpha, domain: ALPHA_DOMAIN });
    }
    Ok(())
}

fn check_alpha_nonzero(alpha: f64) -> Result<()> {
    check_alpha_range(alpha)?;
    if alpha == 0.0 {
        return Err(Error::InvalidAlpha { alpha, domain: ALPHA_NONZERO_DOMAIN });
    }
    Ok(())
}

fn check_divisor(index: usize, dim: usize) -> Result<()> {
    if index >= dim {
        return Err(Error::DivisorOutOfRange { index, dim });
    }
    Ok(())
}

/// Centred log-ratio: `yᵢ = log(xᵢ / g(x))`. Output sums to zero.
pub fn clr(x: &Composition) -> Result<Vec<f64>> {
    x.require_strictly_positive()?;
    let logs: Vec<f64> = x.parts().iter().map(|v| v.ln()).collect();
    let mean = logs.iter().sum::<f64>() / logs.len() as f64;
    Ok(logs.into_iter().map(|l| l - mean).collect())
}

/// Isometric log-ratio: `z = H · clr(x)`, length `d = D − 1`.
pub fn ilr(x: &Composition, h: &HelmertBasis) -> Result<Vec<f64>> {
    h.apply(&clr(x)?)
}

/// Additive log-ratio: `vᵢ = log(xᵢ / x_divisor)` for the non-divisor
/// components, in original order. `divisor_index` is 0-based.
pub fn alr(x: &Composition, divisor_index: usize) -> Result<Vec<f64>> {
    check_divisor(divisor_index, x.dim())?;
    x.require_strictly_positive()?;
    let div = x.parts()[divisor_index];
    Ok(x.parts()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != divisor_index)
        .map(|(_, v)| (v / div).ln())
        .collect())
}

/// Box-Cox transform of ratios: `vᵢ = ((xᵢ/x_div)^λ − 1) / λ`.
/// λ = 0 dispatches to [`alr`].
pub fn boxcox_ratio(x: &Composition, lambda: f64, divisor_index: usize) -> Result<Vec<f64>> {
    if lambda == 0.0 {
        return alr(x, divisor_index);
    }
    check_divisor(divisor_index, x.dim())?;
    x.require_strictly_positive()?;
    let div = x.parts()[divisor_index];
    Ok(x.parts()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != divisor_index)
        .map(|(_, v)| ((v / div).powf(lambda) - 1.0) / lambda)
        .collect())
}

/// Power transform `uᵢ = xᵢ^α / Σⱼ xⱼ^α`; the result stays in the simplex.
///
/// Zeros are allowed for α > 0; α < 0 requires strict positivity; α = 0 is
/// rejected (see module docs).
pub fn alpha_power(x: &Composition, alpha: f64) -> Result<Composition> {
    check_alpha_nonzero(alpha)?;
    if alpha < 0.0 {
        x.require_strictly_positive()?;
    }
    let raw: Vec<f64> = x.parts().iter().map(|v| v.powf(alpha)).collect();
    Composition::closure(&raw)
}

/// Isometric power transform `z = (1/α) H (D·u − 1)`, length `d`.
/// α = 0 dispatches to [`ilr`].
pub fn alpha_isometric(x: &Composition, alpha: f64, h: &HelmertBasis) -> Result<Vec<f64>> {
    check_alpha_range(alpha)?;
    if alpha == 0.0 {
        return ilr(x, h);
    }
    let u = alpha_power(x, alpha)?;
    let dim = x.dim() as f64;
    let centered: Vec<f64> = u.parts().iter().map(|ui| dim * ui - 1.0).collect();
    let mut z = h.apply(&centered)?;
    for v in &mut z {
        *v /= alpha;
    }
    Ok(z)
}

/// Inverse of [`alpha_power`]: `𝒞(u^(1/α))`.
pub fn inverse_alpha_power(u: &Composition, alpha: f64) -> Result<Composition> {
    check_alpha_nonzero(alpha)?;
    u.require_strictly_positive()?;
    // log domain: u^(1/α) under- or overflows for small |α|
    let t: Vec<f64> = u.parts().iter().map(|v| v.ln() / alpha).collect();
    let max = t.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = t.iter().map(|v| (v - max).exp()).collect();
    Composition::closure(&raw)
}

/// Inverse of [`alpha_isometric`]: recovers `u = (α Hᵀ z + 1) / D`, then the
/// composition. Fails with `InvalidAlpha` when `z` lies outside the image of
/// the simplex (some recovered `uᵢ ≤ 0`).
pub fn inverse_alpha_isometric(
    z: &[f64],
    alpha: f64,
    h: &HelmertBasis,
) -> Result<Composition> {
    check_alpha_nonzero(alpha)?;
    let back = h.apply_transpose(z)?;
    let dim = h.dim() as f64;
    let mut u = Vec::with_capacity(h.dim());
    for b in back {
        let ui = (alpha * b + 1.0) / dim;
        if ui <= 0.0 {
            return Err(Error::DegenerateInput);
        }
        u.push(ui);
    }
    inverse_alpha_power(&Composition::closure(&u)?, alpha)
}

/// Which transformation to apply, with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Clr,
    Ilr,
    Alr,
    BoxcoxRatio,
    AlphaPower,
    AlphaIsometric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformSpec {
    pub kind: TransformKind,
    /// λ for `BoxcoxRatio`, α for the two alpha kinds; ignored otherwise.
    pub alpha: f64,
    /// 0-based divisor component for `Alr` / `BoxcoxRatio`; defaults to the
    /// last component when `None`.
    pub divisor_index: Option<usize>,
}

impl TransformSpec {
    pub fn new(kind: TransformKind) -> Self {
        Self { kind, alpha: 0.0, divisor_index: None }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_divisor(mut self, index: usize) -> Self {
        self.divisor_index = Some(index);
        self
    }

    /// Output width for data of `dim` components: `D` for clr and
    /// alpha-power, `d = D − 1` otherwise.
    pub fn output_dim(&self, dim: usize) -> usize {
        match self.kind {
            TransformKind::Clr | TransformKind::AlphaPower => dim,
            _ => dim - 1,
        }
    }

    /// Apply to a single composition. `h` must match the composition's `D`.
    pub fn apply(&self, x: &Composition, h: &HelmertBasis) -> Result<Vec<f64>> {
        let divisor = self.divisor_index.unwrap_or(x.dim() - 1);
        match self.kind {
            TransformKind::Clr => clr(x),
            TransformKind::Ilr => ilr(x, h),
            TransformKind::Alr => alr(x, divisor),
            TransformKind::BoxcoxRatio => boxcox_ratio(x, self.alpha, divisor),
            TransformKind::AlphaPower => Ok(alpha_power(x, self.alpha)?.parts().to_vec()),
            TransformKind::AlphaIsometric => alpha_isometric(x, self.alpha, h),
        }
    }
}

/// Row-major transformed matrix with the spec that produced it.
#[derive(Debug, Clone)]
pub struct TransformedData {
    pub values: Vec<Vec<f64>>,
    pub spec: TransformSpec,
}

/// Apply a transformation to every row of a dataset.
pub fn transform_dataset(ds: &CompositionDataset, spec: &TransformSpec) -> Result<TransformedData> {
    let h = HelmertBasis::new(ds.dim())?;
    let mut values = Vec::with_capacity(ds.len());
    for row in ds.rows() {
        values.push(spec.apply(row, &h)?);
    }
    Ok(TransformedData { values, spec: *spec })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::uniform;
    use crate::composition::perturb;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn comp(v: &[f64]) -> Composition {
        Composition::closure(v).unwrap()
    }

    #[test]
    fn clr_of_uniform_is_zero() {
        let y = clr(&uniform(4).unwrap()).unwrap();
        for v in y {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn clr_scalar_oracle() {
        let x = comp(&[0.5, 0.3, 0.2]);
        let g = (0.5_f64 * 0.3 * 0.2).powf(1.0 / 3.0);
        let y = clr(&x).unwrap();
        assert_abs_diff_eq!(y[0], (0.5_f64 / g).ln(), epsilon = 1e-13);
        assert_abs_diff_eq!(y[1], (0.3_f64 / g).ln(), epsilon = 1e-13);
        assert_abs_diff_eq!(y[2], (0.2_f64 / g).ln(), epsilon = 1e-13);
    }

    #[test]
    fn clr_is_additive_under_perturbation() {
        let x = comp(&[0.45, 0.17, 0.23, 0.15]);
        let w = comp(&[0.05, 0.55, 0.2, 0.2]);
        let p = perturb(&x, &w).unwrap();
        let cx = clr(&x).unwrap();
        let cw = clr(&w).unwrap();
        let cp = clr(&p).unwrap();
        for i in 0..4 {
            assert_abs_diff_eq!(cp[i], cx[i] + cw[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn clr_rejects_zero() {
        let x = comp(&[0.5, 0.5, 0.0]);
        assert_eq!(clr(&x), Err(Error::ZeroPartNotAllowed { index: 2 }));
    }

    #[test]
    fn ilr_of_uniform_is_zero_and_preserves_norm() {
        let h = HelmertBasis::new(5).unwrap();
        let z = ilr(&uniform(5).unwrap(), &h).unwrap();
        assert_eq!(z.len(), 4);
        for v in z {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
        }
        let x = comp(&[0.3, 0.1, 0.25, 0.15, 0.2]);
        let y = clr(&x).unwrap();
        let z = ilr(&x, &h).unwrap();
        let ny: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let nz: f64 = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert_abs_diff_eq!(ny, nz, epsilon = 1e-12);
    }

    #[test]
    fn ilr_matches_hand_multiplied_matrix() {
        let h = HelmertBasis::new(3).unwrap();
        let x = comp(&[0.5, 0.3, 0.2]);
        let y = clr(&x).unwrap();
        let s2 = 1.0 / 2.0_f64.sqrt();
        let s6 = 1.0 / 6.0_f64.sqrt();
        let z = ilr(&x, &h).unwrap();
        assert_abs_diff_eq!(z[0], s2 * y[0] - s2 * y[1], epsilon = 1e-14);
        assert_abs_diff_eq!(z[1], s6 * y[0] + s6 * y[1] - 2.0 * s6 * y[2], epsilon = 1e-14);
    }

    #[test]
    fn alr_direct_values() {
        let u = uniform(4).unwrap();
        for v in alr(&u, 3).unwrap() {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
        }
        let x = comp(&[0.2, 0.3, 0.5]);
        let v = alr(&x, 2).unwrap();
        assert_abs_diff_eq!(v[0], 0.4_f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(v[1], 0.6_f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn boxcox_lambda_one_direct() {
        let x = comp(&[0.2, 0.3, 0.5]);
        let v = boxcox_ratio(&x, 1.0, 2).unwrap();
        assert_abs_diff_eq!(v[0], -0.6, epsilon = 1e-14);
        assert_abs_diff_eq!(v[1], -0.4, epsilon = 1e-14);
    }

    #[test]
    fn boxcox_converges_to_alr() {
        let x = comp(&[0.11, 0.42, 0.3, 0.17]);
        let a = alr(&x, 3).unwrap();
        let mut prev = f64::INFINITY;
        for lambda in [1e-4, 1e-6, 1e-8] {
            let v = boxcox_ratio(&x, lambda, 3).unwrap();
            let err = v
                .iter()
                .zip(&a)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max);
            assert!(err <= prev + 1e-12, "lambda {lambda}: err {err} > prev {prev}");
            prev = err;
        }
        assert!(prev < 1e-6);
    }

    #[test]
    fn boxcox_unit_ratio_gives_zero() {
        let x = comp(&[0.25, 0.5, 0.25]);
        for lambda in [-0.7, 0.3, 1.0] {
            let v = boxcox_ratio(&x, lambda, 2).unwrap();
            assert_abs_diff_eq!(v[0], 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn alpha_power_identity_and_symmetry() {
        let x = comp(&[0.5, 0.3, 0.2]);
        let u = alpha_power(&x, 1.0).unwrap();
        for (a, b) in u.parts().iter().zip(x.parts()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
        for alpha in [-1.0, -0.3, 0.4, 1.0] {
            let u = alpha_power(&uniform(5).unwrap(), alpha).unwrap();
            for &p in u.parts() {
                assert_abs_diff_eq!(p, 0.2, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn alpha_power_scalar_oracle() {
        let x = comp(&[0.5, 0.3, 0.2]);
        let u = alpha_power(&x, 0.5).unwrap();
        let r = [0.5_f64.sqrt(), 0.3_f64.sqrt(), 0.2_f64.sqrt()];
        let s: f64 = r.iter().sum();
        for i in 0..3 {
            assert_abs_diff_eq!(u.parts()[i], r[i] / s, epsilon = 1e-14);
        }
    }

    #[test]
    fn alpha_power_domain_errors() {
        let x = comp(&[0.5, 0.5, 0.0]);
        // zeros fine for positive alpha
        assert!(alpha_power(&x, 0.5).is_ok());
        assert!(matches!(
            alpha_power(&x, -0.5),
            Err(Error::ZeroPartNotAllowed { index: 2 })
        ));
        let y = comp(&[0.5, 0.3, 0.2]);
        assert!(matches!(alpha_power(&y, 0.0), Err(Error::InvalidAlpha { .. })));
        assert!(matches!(alpha_power(&y, 1.5), Err(Error::InvalidAlpha { .. })));
    }

    #[test]
    fn alpha_isometric_uniform_is_zero() {
        let h = HelmertBasis::new(4).unwrap();
        for alpha in [-1.0, -0.25, 0.0, 0.5, 1.0] {
            let z = alpha_isometric(&uniform(4).unwrap(), alpha, &h).unwrap();
            for v in z {
                assert_abs_diff_eq!(v, 0.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn alpha_isometric_small_alpha_approaches_ilr() {
        let h = HelmertBasis::new(4).unwrap();
        let x = comp(&[0.35, 0.15, 0.28, 0.22]);
        let zi = ilr(&x, &h).unwrap();
        let za = alpha_isometric(&x, 1e-6, &h).unwrap();
        for (a, b) in za.iter().zip(&zi) {
            assert!((a - b).abs() < 1e-4);
        }
    }

    #[test]
    fn alpha_isometric_alpha_one_matrix_oracle() {
        // z = H (3x - 1) at alpha = 1, D = 3
        let h = HelmertBasis::new(3).unwrap();
        let x = comp(&[0.5, 0.3, 0.2]);
        let z = alpha_isometric(&x, 1.0, &h).unwrap();
        let centered = [3.0 * 0.5 - 1.0, 3.0 * 0.3 - 1.0, 3.0 * 0.2 - 1.0];
        let want = h.apply(&centered).unwrap();
        for (a, b) in z.iter().zip(&want) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        }
    }

    #[test]
    fn inverse_alpha_power_basics() {
        let x = comp(&[0.5, 0.3, 0.2]);
        let r = inverse_alpha_power(&x, 1.0).unwrap();
        for (a, b) in r.parts().iter().zip(x.parts()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-14);
        }
        let u = uniform(6).unwrap();
        let r = inverse_alpha_power(&u, -0.4).unwrap();
        for &p in r.parts() {
            assert_abs_diff_eq!(p, 1.0 / 6.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn inverse_isometric_roundtrip() {
        let h = HelmertBasis::new(4).unwrap();
        let x = comp(&[0.4, 0.1, 0.3, 0.2]);
        for alpha in [-0.5, 0.25, 0.75, 1.0] {
            let z = alpha_isometric(&x, alpha, &h).unwrap();
            let back = inverse_alpha_isometric(&z, alpha, &h).unwrap();
            for (a, b) in back.parts().iter().zip(x.parts()) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn transform_dataset_shapes() {
        let ds = crate::fixtures::load_fixture_table1();
        let t = transform_dataset(&ds, &TransformSpec::new(TransformKind::Clr)).unwrap();
        assert_eq!(t.values.len(), 30);
        assert_eq!(t.values[0].len(), 3);
        for row in &t.values {
            let sum: f64 = row.iter().sum();
            assert_abs_diff_eq!(sum, 0.0, epsilon = 1e-10);
        }
        let t = transform_dataset(&ds, &TransformSpec::new(TransformKind::Ilr)).unwrap();
        assert_eq!(t.values[0].len(), 2);
    }

    proptest! {
        // alpha_power is a bijection of the open simplex, witnessed by
        // round-trip with inverse_alpha_power
        #[test]
        fn alpha_power_roundtrip(
            raw in proptest::collection::vec(0.05f64..1.0, 3..7),
            alpha in prop_oneof![Just(-0.5), Just(0.25), Just(0.75), -1.0f64..-0.01, 0.01f64..1.0],
        ) {
            let x = Composition::closure(&raw).unwrap();
            let u = alpha_power(&x, alpha).unwrap();
            let back = inverse_alpha_power(&u, alpha).unwrap();
            for (a, b) in back.parts().iter().zip(x.parts()) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }

        // scale invariance: transforming closure(c v) equals transforming closure(v)
        #[test]
        fn log_ratio_scale_invariance(
            raw in proptest::collection::vec(0.05f64..1.0, 3..7),
            scale in 0.01f64..100.0,
        ) {
            let x = Composition::closure(&raw).unwrap();
            let scaled: Vec<f64> = raw.iter().map(|v| v * scale).collect();
            let xs = Composition::closure(&scaled).unwrap();
            let h = HelmertBasis::new(raw.len()).unwrap();
            for (a, b) in clr(&x).unwrap().iter().zip(clr(&xs).unwrap()) {
                prop_assert!((a - b).abs() < 1e-10);
            }
            for (a, b) in alr(&x, 0).unwrap().iter().zip(alr(&xs, 0).unwrap()) {
                prop_assert!((a - b).abs() < 1e-10);
            }
            for (a, b) in ilr(&x, &h).unwrap().iter().zip(ilr(&xs, &h).unwrap()) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }

        // clr output is orthogonal to the all-ones vector
        #[test]
        fn clr_sums_to_zero(raw in proptest::collection::vec(0.01f64..1.0, 2..9)) {
            let x = Composition::closure(&raw).unwrap();
            let sum: f64 = clr(&x).unwrap().iter().sum();
            prop_assert!(sum.abs() < 1e-10);
        }
    }
}
