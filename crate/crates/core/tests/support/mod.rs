//! Randomized properties shared by the `properties` and `acceptance` targets.
//!
//! Each check runs `cases` proptest cases and reports the first failure.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use splitci::applications::{
    argmin_region, quantile_loss, radius_bound, sample_quantile, ssu_member_closed, LabeledPoint, ManskiModel,
    MeanModel, QuantileModel,
};
use splitci::inference::{region, LossModel, ParameterSpace, RegionSpec};
use splitci::numeric::linalg::{dot, norm, sub_vec};
use splitci::numeric::{sample_moments, substream, sym_eigen, Matrix, RngStream, SymMatrix};
use splitci::wald::WaldRegion;

pub const CASES: u32 = 256;

/// Cases closer than this to the membership boundary are skipped where the
/// transformation under test is not exact in floating point.
const MARGIN: f64 = 1e-9;

pub fn gaussian_rows(rng: &mut RngStream, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let mut x = vec![0.0; d];
            rng.fill_standard_normal(&mut x);
            x
        })
        .collect()
}

pub fn gaussian_vec(rng: &mut RngStream, d: usize) -> Vec<f64> {
    let mut x = vec![0.0; d];
    rng.fill_standard_normal(&mut x);
    x
}

fn unit(v: Vec<f64>) -> Vec<f64> {
    let s = norm(&v);
    v.into_iter().map(|x| x / s).collect()
}

/// Mean-model instance: inference fold, anchor and a candidate near the data.
pub struct MeanCase {
    pub d2: Vec<Vec<f64>>,
    pub anchor: Vec<f64>,
    pub theta: Vec<f64>,
}

pub fn mean_case(seed: u64, d: usize, n: usize, spread: f64) -> MeanCase {
    let mut rng = substream(seed, &[d as u64, n as u64]);
    let d2 = gaussian_rows(&mut rng, n, d);
    let anchor: Vec<f64> = gaussian_vec(&mut rng, d).into_iter().map(|x| 0.3 * x).collect();
    let theta: Vec<f64> = gaussian_vec(&mut rng, d).into_iter().map(|x| spread * x).collect();
    MeanCase { d2, anchor, theta }
}

pub fn manski_case(seed: u64, n: usize) -> (Vec<LabeledPoint<f64>>, Vec<f64>, Vec<f64>) {
    let mut rng = substream(seed, &[n as u64, 17]);
    let data = (0..n)
        .map(|_| {
            let x = gaussian_vec(&mut rng, 2);
            let y = if x[0] + rng.logistic() >= 0.0 { 1.0 } else { -1.0 };
            LabeledPoint::new(y, x)
        })
        .collect();
    let anchor = unit(gaussian_vec(&mut rng, 2));
    let theta = unit(gaussian_vec(&mut rng, 2));
    (data, anchor, theta)
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn ok<T>(r: splitci::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

fn mean_strategy() -> impl Strategy<Value = (u64, usize, usize, f64)> {
    (any::<u64>(), 1usize..=5, 4usize..=40, 0.05f64..1.0)
}

/// `anchor` is a member of every region built around it.
pub fn anchor_membership(cases: u32) -> Result<(), String> {
    run(cases, (mean_strategy(), 0.01f64..0.99), |((seed, d, n, _), alpha)| {
        let c = mean_case(seed, d, n, 1.0);
        let model = MeanModel::new(d);
        for spec in [RegionSpec::clt(alpha), RegionSpec::clt(alpha).with_upper(true), RegionSpec::naive()] {
            prop_assert!(ok(ok(region(&model, &c.anchor, &c.d2, spec))?.contains(&c.anchor))?);
        }
        let (xbar, cov) = ok(sample_moments(&c.d2))?;
        prop_assert!(ok(ssu_member_closed(&c.anchor, &c.anchor, &xbar, &cov, n, alpha))?);

        let (data, anchor, _) = manski_case(seed, n);
        let manski = ManskiModel::new(2);
        for spec in [RegionSpec::eb(alpha), RegionSpec::clt(alpha), RegionSpec::naive()] {
            prop_assert!(ok(ok(region(&manski, &anchor, &data, spec))?.contains(&anchor))?);
        }

        let xs: Vec<f64> = c.d2.iter().map(|x| x[0]).collect();
        let q = ok(QuantileModel::new(alpha))?;
        let a = ok(sample_quantile(&xs, alpha))?;
        prop_assert!(ok(ok(region(&q, &a, &xs, RegionSpec::clt(alpha)))?.contains(&a))?);

        let half = n / 2;
        let r = ok(argmin_region(&c.d2[..half], &c.d2[half..], alpha))?;
        prop_assert!(r.members.contains(&r.anchor));
        Ok(())
    })
}

/// A smaller `alpha` never removes members.
pub fn alpha_nesting(cases: u32) -> Result<(), String> {
    run(cases, (mean_strategy(), 0.01f64..0.98, 0.0f64..1.0), |((seed, d, n, spread), a1, t)| {
        let a2 = a1 + (0.99 - a1) * t;
        let c = mean_case(seed, d, n, spread);
        let model = MeanModel::new(d);
        for upper in [false, true] {
            let strict = ok(region(&model, &c.anchor, &c.d2, RegionSpec::clt(a1).with_upper(upper)))?;
            let loose = ok(region(&model, &c.anchor, &c.d2, RegionSpec::clt(a2).with_upper(upper)))?;
            if ok(loose.contains(&c.theta))? {
                prop_assert!(ok(strict.contains(&c.theta))?);
            }
        }
        let (data, anchor, theta) = manski_case(seed, n);
        let manski = ManskiModel::new(2);
        let strict = ok(region(&manski, &anchor, &data, RegionSpec::eb(a1)))?;
        let loose = ok(region(&manski, &anchor, &data, RegionSpec::eb(a2)))?;
        if ok(loose.contains(&theta))? {
            prop_assert!(ok(strict.contains(&theta))?);
        }
        Ok(())
    })
}

/// Squared loss plus a term that depends on the observation only.
struct ShiftedMean {
    inner: MeanModel,
    scale: f64,
}

impl LossModel<f64> for ShiftedMean {
    type Param = Vec<f64>;
    type Obs = Vec<f64>;

    fn loss(&self, theta: &Vec<f64>, z: &Vec<f64>) -> f64 {
        self.inner.loss(theta, z) + self.scale * z.iter().map(|v| v.sin()).sum::<f64>()
    }

    fn curvature_upper(&self, theta: &Vec<f64>, anchor: &Vec<f64>) -> f64 {
        LossModel::<f64>::curvature_upper(&self.inner, theta, anchor)
    }

    fn parameter_space(&self) -> ParameterSpace {
        LossModel::<f64>::parameter_space(&self.inner)
    }
}

/// Adding `g(z)` to the loss leaves every region unchanged.
pub fn loss_shift_invariance(cases: u32) -> Result<(), String> {
    run(cases, (mean_strategy(), 0.01f64..0.99, -10.0f64..10.0), |((seed, d, n, spread), alpha, scale)| {
        let c = mean_case(seed, d, n, spread);
        let base = MeanModel::new(d);
        let shifted = ShiftedMean { inner: base, scale };
        for spec in [RegionSpec::clt(alpha), RegionSpec::clt(alpha).with_upper(true), RegionSpec::naive()] {
            let r0 = ok(region(&base, &c.anchor, &c.d2, spec))?;
            let r1 = ok(region(&shifted, &c.anchor, &c.d2, spec))?;
            let (m0, m1) = (ok(r0.margin(&c.theta))?, ok(r1.margin(&c.theta))?);
            prop_assert!((m0 - m1).abs() <= 1e-9 * (1.0 + scale.abs() * n as f64), "margins {m0} vs {m1}");
            if m0.abs() > MARGIN * (1.0 + scale.abs()) {
                prop_assert_eq!(ok(r0.contains(&c.theta))?, ok(r1.contains(&c.theta))?);
            }
        }
        Ok(())
    })
}

/// Naive members belong to the EB and CLT regions. The CLT threshold is
/// non-negative only for `alpha <= 1/2`.
pub fn naive_subset(cases: u32) -> Result<(), String> {
    run(cases, (mean_strategy(), 0.01f64..=0.5), |((seed, d, n, spread), alpha)| {
        let c = mean_case(seed, d, n, spread);
        let model = MeanModel::new(d);
        let naive = ok(region(&model, &c.anchor, &c.d2, RegionSpec::naive()))?;
        let clt = ok(region(&model, &c.anchor, &c.d2, RegionSpec::clt(alpha)))?;
        if ok(naive.contains(&c.theta))? {
            prop_assert!(ok(clt.contains(&c.theta))?);
        }
        let (data, anchor, theta) = manski_case(seed, n);
        let manski = ManskiModel::new(2);
        let naive = ok(region(&manski, &anchor, &data, RegionSpec::naive()))?;
        if ok(naive.contains(&theta))? {
            prop_assert!(ok(ok(region(&manski, &anchor, &data, RegionSpec::eb(alpha)))?.contains(&theta))?);
            prop_assert!(ok(ok(region(&manski, &anchor, &data, RegionSpec::clt(alpha)))?.contains(&theta))?);
        }
        Ok(())
    })
}

fn shifted(v: &[f64], b: &[f64]) -> Vec<f64> {
    v.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scaled(v: &[f64], s: f64) -> Vec<f64> {
    v.iter().map(|x| x * s).collect()
}

/// Translating data, anchor and candidate together preserves membership.
pub fn mean_translation_equivariance(cases: u32) -> Result<(), String> {
    run(cases, (mean_strategy(), 0.01f64..0.99, any::<u64>()), |((seed, d, n, spread), alpha, bseed)| {
        let c = mean_case(seed, d, n, spread);
        let mut rng = substream(bseed, &[1]);
        let b = scaled(&gaussian_vec(&mut rng, d), 3.0);
        let model = MeanModel::new(d);
        let d2b: Vec<Vec<f64>> = c.d2.iter().map(|x| shifted(x, &b)).collect();
        let (ab, tb) = (shifted(&c.anchor, &b), shifted(&c.theta, &b));
        for upper in [false, true] {
            let r0 = ok(region(&model, &c.anchor, &c.d2, RegionSpec::clt(alpha).with_upper(upper)))?;
            let r1 = ok(region(&model, &ab, &d2b, RegionSpec::clt(alpha).with_upper(upper)))?;
            let m0 = ok(r0.margin(&c.theta))?;
            if m0.abs() > 1e-8 {
                prop_assert_eq!(ok(r0.contains(&c.theta))?, ok(r1.contains(&tb))?);
            }
        }
        Ok(())
    })
}

/// Scaling by a power of two is exact, so membership must agree exactly.
pub fn mean_scale_equivariance(cases: u32) -> Result<(), String> {
    run(cases, (mean_strategy(), 0.01f64..0.99, -6i32..=6), |((seed, d, n, spread), alpha, k)| {
        let c = mean_case(seed, d, n, spread);
        let s = 2f64.powi(k);
        let model = MeanModel::new(d);
        let d2s: Vec<Vec<f64>> = c.d2.iter().map(|x| scaled(x, s)).collect();
        let (as_, ts) = (scaled(&c.anchor, s), scaled(&c.theta, s));
        for upper in [false, true] {
            let spec = RegionSpec::clt(alpha).with_upper(upper);
            let r0 = ok(region(&model, &c.anchor, &c.d2, spec))?;
            let r1 = ok(region(&model, &as_, &d2s, spec))?;
            prop_assert_eq!(ok(r0.contains(&c.theta))?, ok(r1.contains(&ts))?);
        }
        let (x0, s0) = ok(sample_moments(&c.d2))?;
        let (x1, s1) = ok(sample_moments(&d2s))?;
        prop_assert_eq!(
            ok(ssu_member_closed(&c.theta, &c.anchor, &x0, &s0, n, alpha))?,
            ok(ssu_member_closed(&ts, &as_, &x1, &s1, n, alpha))?
        );
        Ok(())
    })
}

fn random_matrix(rng: &mut RngStream, d: usize) -> Matrix<f64> {
    Matrix::from_fn(d, d, |i, j| if i == j { 1.5 } else { 0.0 } + 0.4 * rng.standard_normal())
}

fn transform(a: &Matrix<f64>, v: &[f64], b: &[f64]) -> Vec<f64> {
    shifted(&a.mul_vec(v).expect("square"), b)
}

/// `theta` is in the Wald region of `X` iff `A theta + b` is in that of `A X + b`.
pub fn wald_affine_equivariance(cases: u32) -> Result<(), String> {
    run(cases, (any::<u64>(), 1usize..=5, 0.01f64..0.99, 0.0f64..0.5), |(seed, d, alpha, spread)| {
        let mut rng = substream(seed, &[2]);
        let n = d + 3 + rng.index(30);
        let data = gaussian_rows(&mut rng, n, d);
        let a = random_matrix(&mut rng, d);
        let b = gaussian_vec(&mut rng, d);
        let theta = scaled(&gaussian_vec(&mut rng, d), spread);
        let w0 = ok(WaldRegion::from_sample(&data, alpha))?;
        let moved: Vec<Vec<f64>> = data.iter().map(|x| transform(&a, x, &b)).collect();
        let w1 = match WaldRegion::from_sample(&moved, alpha) {
            Ok(w) => w,
            Err(_) => return Err(TestCaseError::reject("transformed covariance is numerically singular")),
        };
        let q0 = ok(w0.quad_form(&theta))?;
        let q1 = ok(w1.quad_form(&transform(&a, &theta, &b)))?;
        prop_assert!((q0 - q1).abs() <= 1e-7 * (1.0 + q0), "quadratic forms {q0} vs {q1}");
        if (q0 - w0.threshold()).abs() > 1e-7 * (1.0 + q0) {
            prop_assert_eq!(ok(w0.contains(&theta))?, ok(w1.contains(&transform(&a, &theta, &b)))?);
        }
        // Volume scales by |det A|.
        let sym = SymMatrix::from_upper(d, |i, j| {
            let ata = a.transpose().matmul(&a).expect("square");
            ata[(i, j)]
        });
        let log_det_a = 0.5 * ok(sym_eigen(&sym))?.values.iter().map(|l| l.ln()).sum::<f64>();
        let (v0, v1) = (ok(w0.log_volume())?, ok(w1.log_volume())?);
        prop_assert!((v1 - v0 - log_det_a).abs() < 1e-7 * (1.0 + v0.abs()), "log volumes {v0} {v1} {log_det_a}");
        Ok(())
    })
}

/// Semi-axes are invariant under rotations of the data.
pub fn wald_rotation_invariance(cases: u32) -> Result<(), String> {
    run(cases, (any::<u64>(), 1usize..=5, 0.01f64..0.99), |(seed, d, alpha)| {
        let mut rng = substream(seed, &[3]);
        let n = d + 3 + rng.index(30);
        let data = gaussian_rows(&mut rng, n, d);
        let g = gaussian_rows(&mut rng, d, d);
        let q = ok(sym_eigen(&SymMatrix::from_upper(d, |i, j| g[i][j] + g[j][i])))?.vectors;
        let zero = vec![0.0; d];
        let rotated: Vec<Vec<f64>> = data.iter().map(|x| transform(&q, x, &zero)).collect();
        let r0 = ok(ok(WaldRegion::from_sample(&data, alpha))?.semi_axes())?;
        let r1 = ok(ok(WaldRegion::from_sample(&rotated, alpha))?.semi_axes())?;
        for (x, y) in r0.iter().zip(&r1) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x), "axes {r0:?} vs {r1:?}");
        }
        Ok(())
    })
}

/// Candidates with the same sign pattern on the data are indistinguishable.
pub fn manski_sign_pattern_invariance(cases: u32) -> Result<(), String> {
    run(cases, (any::<u64>(), 4usize..=60, 0.01f64..0.99, 0.0f64..1.0), |(seed, n, alpha, frac)| {
        let (data, anchor, theta) = manski_case(seed, n);
        let phi = theta[1].atan2(theta[0]);
        // Largest rotation of theta that leaves every sign of x'theta unchanged.
        let gap = data.iter().map(|z| (dot(&z.x, &theta) / norm(&z.x)).abs().asin()).fold(f64::INFINITY, f64::min);
        let turned = vec![(phi + frac * 0.5 * gap).cos(), (phi + frac * 0.5 * gap).sin()];
        let signs = |t: &[f64]| data.iter().map(|z| dot(&z.x, t) >= 0.0).collect::<Vec<_>>();
        prop_assume!(signs(&theta) == signs(&turned));
        let model = ManskiModel::new(2);
        for spec in [RegionSpec::eb(alpha), RegionSpec::clt(alpha), RegionSpec::naive()] {
            let r = ok(region(&model, &anchor, &data, spec))?;
            prop_assert_eq!(ok(r.diff_stats(&theta))?, ok(r.diff_stats(&turned))?);
            prop_assert_eq!(ok(r.contains(&theta))?, ok(r.contains(&turned))?);
        }
        Ok(())
    })
}

/// The empirical pinball risk is convex: the midpoint is never above the chord.
pub fn quantile_midpoint_convexity(cases: u32) -> Result<(), String> {
    run(cases, (any::<u64>(), 1usize..=50, 0.01f64..0.99, -4.0f64..4.0, -4.0f64..4.0), |(seed, n, gamma, a, b)| {
        let mut rng = substream(seed, &[4]);
        let xs = gaussian_vec(&mut rng, n);
        let risk = |t: f64| xs.iter().map(|&x| quantile_loss(t, x, gamma)).sum::<f64>() / n as f64;
        let mid = risk(0.5 * (a + b));
        prop_assert!(mid <= 0.5 * (risk(a) + risk(b)) + 1e-12, "midpoint {mid}");
        for &x in &xs {
            let m = quantile_loss(0.5 * (a + b), x, gamma);
            prop_assert!(m <= 0.5 * (quantile_loss(a, x, gamma) + quantile_loss(b, x, gamma)) + 1e-12);
        }
        Ok(())
    })
}

/// SS+U members lie within the containment radius and inside the SS region.
pub fn ssu_containment(cases: u32) -> Result<(), String> {
    run(cases, (mean_strategy(), 0.01f64..0.5), |((seed, d, n, spread), alpha)| {
        prop_assume!(n > d + 1);
        let c = mean_case(seed, d, n, spread);
        let (xbar, cov) = ok(sample_moments(&c.d2))?;
        let model = MeanModel::new(d);
        // Candidates around the anchor, including points on the ray through xbar.
        let dir = sub_vec(&xbar, &c.anchor);
        let on_ray = shifted(&c.anchor, &scaled(&dir, 1.0 + spread));
        for theta in [c.theta.clone(), on_ray] {
            if ok(ssu_member_closed(&theta, &c.anchor, &xbar, &cov, n, alpha))? {
                let h = ok(radius_bound(&c.anchor, &xbar, &cov, n, alpha))?;
                prop_assert!(norm(&sub_vec(&theta, &c.anchor)) <= h * (1.0 + 1e-12));
                let ss = ok(region(&model, &c.anchor, &c.d2, RegionSpec::clt(alpha)))?;
                if ok(ss.margin(&theta))?.abs() > MARGIN {
                    prop_assert!(ok(ss.contains(&theta))?);
                }
            }
        }
        Ok(())
    })
}

pub type Suite = fn(u32) -> Result<(), String>;

/// Every suite, by name.
pub fn all_suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("anchor membership", anchor_membership),
        ("alpha nesting", alpha_nesting),
        ("loss-shift invariance", loss_shift_invariance),
        ("naive inside EB/CLT", naive_subset),
        ("mean translation equivariance", mean_translation_equivariance),
        ("mean scale equivariance", mean_scale_equivariance),
        ("Wald affine equivariance", wald_affine_equivariance),
        ("Wald rotation invariance", wald_rotation_invariance),
        ("Manski sign-pattern invariance", manski_sign_pattern_invariance),
        ("quantile midpoint convexity", quantile_midpoint_convexity),
        ("SS+U containment", ssu_containment),
    ]
}
