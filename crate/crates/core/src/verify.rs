//! Avoidance checks of a curve against the sets of a scene.
//!
//! Each set is first tried exactly: a hyperplane form applied to the curve
//! that collapses to a single exponential class is nowhere zero, and a real
//! form whose value is a constant with nonzero real part keeps the curve off
//! the subspace. Everything else falls back to sampling a disk: a grid,
//! points on the boundary circle, a seeded random cloud, bisection points on
//! sign changes of every real constraint along grid and circle edges, and
//! Gauss-Newton refinement from the worst samples.
//!
//! The margin of a sample for a set with real constraints `Re(g_k)`, where
//! `g_k = β_k · f`, is `max_k |Re g_k(z)| / (|β_k| |f(z)|)`. It does not
//! change when `f` or a form is rescaled, and it is at most one.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{
    apply_form, constant_real_part_is_zero, is_nowhere_zero, is_projectively_constant,
    normalize_projective, projection_at, Decision, ExpAffineCurve, ExpSum, NumericExpSum,
};
use crate::scalar::GaussianRational;
use crate::scene::Scene;

const BISECTION_STEPS: usize = 60;
const REFINE_STARTS: usize = 8;
const REFINE_STEPS: usize = 40;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplingPlan {
    pub disk_radius: f64,
    /// Points per side of the square grid circumscribing the disk.
    pub grid_points: usize,
    pub random_points: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        Self {
            disk_radius: 10.0,
            grid_points: 101,
            random_points: 10_000,
            seed: 0,
            tolerance: 1e-9,
        }
    }
}

impl SamplingPlan {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.disk_radius > 0.0 && self.disk_radius.is_finite()) {
            return Err("disk radius must be positive".into());
        }
        if self.grid_points < 2 {
            return Err("grid needs at least two points per side".into());
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err("tolerance must be positive".into());
        }
        Ok(())
    }

    fn grid(&self) -> (Vec<Complex64>, Vec<Option<usize>>) {
        let n = self.grid_points;
        let r = self.disk_radius;
        let step = 2.0 * r / (n - 1) as f64;
        let mut points = Vec::new();
        let mut index = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                let z = Complex64::new(-r + step * i as f64, -r + step * j as f64);
                if z.norm() <= r {
                    index[i * n + j] = Some(points.len());
                    points.push(z);
                }
            }
        }
        (points, index)
    }

    /// Points on the boundary circle, as many as the grid has on its border.
    fn circle(&self) -> Vec<Complex64> {
        let m = 4 * (self.grid_points - 1);
        (0..m)
            .map(|k| Complex64::from_polar(self.disk_radius, 2.0 * PI * k as f64 / m as f64))
            .collect()
    }

    fn random(&self) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.random_points)
            .map(|_| {
                let u: f64 = rng.gen();
                let t: f64 = rng.gen();
                Complex64::from_polar(self.disk_radius * u.sqrt(), 2.0 * PI * t)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetVerdict {
    Avoided,
    Violated,
    ExactZeroSetHit,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Sampled => "sampled",
        })
    }
}

impl fmt::Display for SetVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Avoided => "avoided",
            Self::Violated => "violated",
            Self::ExactZeroSetHit => "exact-zero-set-hit",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Hyperplane,
    Real,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetResult {
    pub set: String,
    pub kind: SetKind,
    pub method: Method,
    pub verdict: SetVerdict,
    pub min_margin: Option<f64>,
    /// Where the smallest margin was attained.
    pub min_margin_at: Option<[f64; 2]>,
    pub violation_sample: Option<[f64; 2]>,
    pub samples: Option<usize>,
    /// Samples placed on sign changes of single constraints or refined
    /// from the worst points; included in `samples`.
    pub targeted_samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub curve: String,
    pub plan: SamplingPlan,
    pub sets: Vec<SetResult>,
    pub projection_constant: bool,
    /// Values of `π∘f` as `[re, im]` pairs per coordinate, keyed by the point.
    pub projection_values: Vec<ProjectionValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionValue {
    pub at: [f64; 2],
    pub value: Vec<[f64; 2]>,
}

impl VerificationReport {
    pub fn all_avoided(&self) -> bool {
        self.sets.iter().all(|s| s.verdict == SetVerdict::Avoided)
    }

    pub fn set(&self, name: &str) -> Option<&SetResult> {
        self.sets.iter().find(|s| s.set == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn fmt_complex(c: [f64; 2]) -> String {
    format!("{:.6}{:+.6}i", c[0], c[1])
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "curve {}", self.curve)?;
        for s in &self.sets {
            write!(
                f,
                "  {:<12} {:<8} {}",
                s.set,
                s.method.to_string(),
                s.verdict
            )?;
            if let (Some(m), Some(n)) = (s.min_margin, s.samples) {
                write!(f, " (min margin {m:.3e} over {n} samples)")?;
            }
            if let Some(z) = s.violation_sample {
                write!(f, " at z = {}", fmt_complex(z))?;
            }
            writeln!(f)?;
        }
        let kind = if self.projection_constant {
            "constant"
        } else {
            "non-constant"
        };
        writeln!(f, "  projection {kind}")?;
        for p in &self.projection_values {
            let coords: Vec<String> = p.value.iter().map(|c| fmt_complex(*c)).collect();
            writeln!(f, "    z = {}: [{}]", fmt_complex(p.at), coords.join(" : "))?;
        }
        Ok(())
    }
}

/// One real constraint `Re(g(z)) / norm`.
struct Constraint {
    g: NumericExpSum,
    norm: f64,
}

impl Constraint {
    fn new(g: &ExpSum, beta: &[GaussianRational]) -> Self {
        let norm = beta
            .iter()
            .map(|c| c.to_complex64().norm_sqr())
            .sum::<f64>()
            .sqrt();
        Self {
            g: g.to_numeric(),
            norm,
        }
    }
}

/// A set being sampled: the curve and the constraints of the set.
pub(crate) struct SampledSet {
    curve: Vec<NumericExpSum>,
    constraints: Vec<Constraint>,
}

impl SampledSet {
    fn curve_norm(&self, z: Complex64) -> f64 {
        self.curve
            .iter()
            .map(|c| c.eval(z).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Relative margin at `z`; `None` where the curve overflows.
    pub(crate) fn margin(&self, z: Complex64) -> Option<f64> {
        let fz = self.curve_norm(z);
        if !fz.is_finite() {
            return None;
        }
        if fz == 0.0 {
            return Some(0.0);
        }
        let mut worst = 0.0f64;
        for c in &self.constraints {
            let v = c.g.eval(z).re.abs() / (c.norm * fz);
            if !v.is_finite() {
                return None;
            }
            worst = worst.max(v);
        }
        Some(worst)
    }

    fn residual(&self, z: Complex64) -> Vec<(f64, [f64; 2])> {
        self.constraints
            .iter()
            .map(|c| {
                let (v, d) = c.g.eval_with_derivative(z);
                (v.re / c.norm, [d.re / c.norm, -d.im / c.norm])
            })
            .collect()
    }

    /// Gauss-Newton on the unnormalized constraints; returns the final
    /// iterate if it stays finite and inside the disk.
    fn refine(&self, start: Complex64, radius: f64) -> Option<Complex64> {
        let mut z = start;
        for _ in 0..REFINE_STEPS {
            let rows = self.residual(z);
            let (mut a, mut b, mut c, mut rx, mut ry) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for (f, [jx, jy]) in &rows {
                a += jx * jx;
                b += jx * jy;
                c += jy * jy;
                rx += jx * f;
                ry += jy * f;
            }
            let det = a * c - b * b;
            if !det.is_finite() || det.abs() <= 1e-300 {
                break;
            }
            let dx = -(c * rx - b * ry) / det;
            let dy = -(a * ry - b * rx) / det;
            if !dx.is_finite() || !dy.is_finite() {
                break;
            }
            z += Complex64::new(dx, dy);
            if z.norm() > radius {
                return None;
            }
            if dx.hypot(dy) < 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        (z.norm() <= radius && z.re.is_finite() && z.im.is_finite()).then_some(z)
    }
}

/// Smallest margin over `samples`, split into `chunks` parallel pieces.
/// Ties go to the lower index, so the result does not depend on `chunks`.
pub(crate) fn min_margin_partitioned(
    set: &SampledSet,
    samples: &[Complex64],
    chunks: usize,
) -> Option<(f64, usize)> {
    if samples.is_empty() {
        return None;
    }
    let size = samples.len().div_ceil(chunks.max(1));
    samples
        .par_chunks(size)
        .enumerate()
        .filter_map(|(k, chunk)| {
            chunk
                .iter()
                .enumerate()
                .filter_map(|(i, z)| set.margin(*z).map(|m| (m, k * size + i)))
                .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)))
        })
        .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)))
}

fn sign_change_points(
    set: &SampledSet,
    nodes: &[Complex64],
    edges: &[(usize, usize)],
) -> Vec<Complex64> {
    set.constraints
        .iter()
        .flat_map(|c| {
            let values: Vec<f64> = nodes.par_iter().map(|z| c.g.eval(*z).re).collect();
            edges
                .par_iter()
                .filter_map(|&(a, b)| {
                    let (va, vb) = (values[a], values[b]);
                    if !(va.is_finite() && vb.is_finite()) || va.signum() == vb.signum() {
                        return None;
                    }
                    let (mut lo, mut hi, mut flo) = (nodes[a], nodes[b], va);
                    for _ in 0..BISECTION_STEPS {
                        let mid = (lo + hi) * 0.5;
                        let fm = c.g.eval(mid).re;
                        if fm == 0.0 {
                            return Some(mid);
                        }
                        if fm.signum() == flo.signum() {
                            lo = mid;
                            flo = fm;
                        } else {
                            hi = mid;
                        }
                    }
                    Some((lo + hi) * 0.5)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Grid, boundary circle and random cloud, shared by every sampled set.
/// `edges` join neighbouring grid points and consecutive circle points.
struct BaseSamples {
    all: Vec<Complex64>,
    nodes: Vec<Complex64>,
    edges: Vec<(usize, usize)>,
}

impl BaseSamples {
    fn new(plan: &SamplingPlan) -> Self {
        let n = plan.grid_points;
        let (mut nodes, index) = plan.grid();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let Some(a) = index[i * n + j] else { continue };
                if i + 1 < n {
                    if let Some(b) = index[(i + 1) * n + j] {
                        edges.push((a, b));
                    }
                }
                if j + 1 < n {
                    if let Some(b) = index[i * n + j + 1] {
                        edges.push((a, b));
                    }
                }
            }
        }
        let start = nodes.len();
        let circle = plan.circle();
        let m = circle.len();
        nodes.extend(circle);
        edges.extend((0..m).map(|k| (start + k, start + (k + 1) % m)));
        let mut all = nodes.clone();
        all.extend(plan.random());
        Self { all, nodes, edges }
    }
}

fn sample_set(
    name: &str,
    kind: SetKind,
    set: &SampledSet,
    plan: &SamplingPlan,
    base: &BaseSamples,
    workers: usize,
) -> SetResult {
    let mut samples = base.all.clone();
    samples.extend(sign_change_points(set, &base.nodes, &base.edges));
    let plain = base.all.len();
    let mut margins: Vec<(f64, usize)> = samples
        .par_iter()
        .enumerate()
        .filter_map(|(i, z)| set.margin(*z).map(|m| (m, i)))
        .collect();
    margins.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let starts: Vec<Complex64> = margins
        .iter()
        .take(REFINE_STARTS)
        .map(|&(_, i)| samples[i])
        .collect();
    let refined: Vec<Complex64> = starts
        .par_iter()
        .filter_map(|z| set.refine(*z, plan.disk_radius))
        .collect();
    samples.extend(refined);
    let best = min_margin_partitioned(set, &samples, workers);
    let (min_margin, at) = match best {
        Some((m, i)) => (Some(m), Some([samples[i].re, samples[i].im])),
        None => (None, None),
    };
    let violated = min_margin.is_some_and(|m| m <= plan.tolerance);
    SetResult {
        set: name.to_string(),
        kind,
        method: Method::Sampled,
        verdict: if violated {
            SetVerdict::Violated
        } else {
            SetVerdict::Avoided
        },
        min_margin,
        min_margin_at: at,
        violation_sample: if violated { at } else { None },
        samples: Some(samples.len()),
        targeted_samples: Some(samples.len() - plain),
    }
}

fn exact(name: &str, kind: SetKind, verdict: SetVerdict) -> SetResult {
    SetResult {
        set: name.to_string(),
        kind,
        method: Method::Exact,
        verdict,
        min_margin: None,
        min_margin_at: None,
        violation_sample: None,
        samples: None,
        targeted_samples: None,
    }
}

const PROBES: [(f64, f64); 9] = [
    (1.0, 0.0),
    (0.0, 1.0),
    (-1.0, 0.0),
    (0.0, -1.0),
    (2.0, 0.0),
    (0.0, 2.0),
    (0.5, 0.5),
    (-2.0, 0.0),
    (3.0, 1.0),
];

fn to_pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

fn projection_values(f: &ExpAffineCurve, constant: bool) -> Vec<ProjectionValue> {
    let points = std::iter::once((0.0, 0.0)).chain(PROBES);
    let mut out: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for (x, y) in points {
        let z = Complex64::new(x, y);
        let Some(v) = projection_at(f, z) else {
            continue;
        };
        match out.first() {
            None => {
                out.push((z, v));
                if constant {
                    break;
                }
            }
            Some((_, first)) => {
                let differs = first
                    .iter()
                    .zip(&v)
                    .any(|(a, b)| (a - b).norm() > 1e-6 * (1.0 + a.norm()));
                if differs {
                    out.push((z, v));
                    break;
                }
            }
        }
    }
    out.into_iter()
        .map(|(z, v)| ProjectionValue {
            at: [z.re, z.im],
            value: to_pairs(&normalize_projective(&v).unwrap_or(v)),
        })
        .collect()
}

/// Checks `curve` against every hyperplane and real subspace of `scene`.
pub fn verify(curve: &ExpAffineCurve, scene: &Scene, plan: &SamplingPlan) -> VerificationReport {
    verify_with_workers(curve, scene, plan, rayon::current_num_threads())
}

/// [`verify`] with the samples of each set split into `workers` pieces.
/// The report does not depend on `workers`.
pub fn verify_with_workers(
    curve: &ExpAffineCurve,
    scene: &Scene,
    plan: &SamplingPlan,
    workers: usize,
) -> VerificationReport {
    let numeric = curve.to_numeric();
    let base = std::cell::OnceCell::new();
    let shared = || base.get_or_init(|| BaseSamples::new(plan));
    let mut sets = Vec::new();
    for h in &scene.hyperplanes {
        let g = apply_form(&h.value, curve);
        let result = match is_nowhere_zero(&g) {
            Decision::Yes => exact(&h.name, SetKind::Hyperplane, SetVerdict::Avoided),
            Decision::No => exact(&h.name, SetKind::Hyperplane, SetVerdict::ExactZeroSetHit),
            Decision::Unknown => {
                let beta = h.value.coeffs();
                let rotated = g.scale(&-GaussianRational::i());
                let set = SampledSet {
                    curve: numeric.clone(),
                    constraints: vec![Constraint::new(&g, beta), Constraint::new(&rotated, beta)],
                };
                sample_set(&h.name, SetKind::Hyperplane, &set, plan, shared(), workers)
            }
        };
        sets.push(result);
    }
    for r in &scene.reals {
        let forms: Vec<(ExpSum, [GaussianRational; 3])> = r
            .value
            .forms()
            .iter()
            .map(|l| {
                let beta = l.complex_form();
                (apply_form(&beta, curve), beta)
            })
            .collect();
        let decided: Vec<Option<bool>> = forms
            .iter()
            .map(|(g, _)| constant_real_part_is_zero(g))
            .collect();
        let result = if decided.contains(&Some(false)) {
            exact(&r.name, SetKind::Real, SetVerdict::Avoided)
        } else if decided.iter().all(|d| *d == Some(true)) {
            exact(&r.name, SetKind::Real, SetVerdict::ExactZeroSetHit)
        } else {
            let set = SampledSet {
                curve: numeric.clone(),
                constraints: forms.iter().map(|(g, b)| Constraint::new(g, b)).collect(),
            };
            sample_set(&r.name, SetKind::Real, &set, plan, shared(), workers)
        };
        sets.push(result);
    }
    let projection_constant = is_projectively_constant(curve);
    VerificationReport {
        curve: curve.to_string(),
        plan: plan.clone(),
        sets,
        projection_constant,
        projection_values: projection_values(curve, projection_constant),
    }
}
