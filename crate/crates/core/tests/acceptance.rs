//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Tolerances: criterion 3 requires a minimum relative margin above 1e-6
//! with at least 10^4 samples in the radius-10 disk; criterion 4 uses
//! 1e-12 * (1 + |w|^2); all other checks are exact.

mod common;

use std::time::{Duration, Instant};

use common::*;
use holoavoid::arrangement::{
    classify, collapse_real_form, extract_complex_hyperplane, realify, RealLinearForm,
    RealSubspace, VerdictTag,
};
use holoavoid::cli;
use holoavoid::curve::{apply_form, is_nowhere_zero, is_projectively_constant, Decision, ExpSum};
use holoavoid::diagonals::enumerate_diagonals;
use holoavoid::error::Error;
use holoavoid::linalg::{orthogonal_complement, same_span, ComplexMatrix, Matrix, RealMatrix};
use holoavoid::projective::{project_hyperplane, ComplexHyperplane, ProjHyperplane};
use holoavoid::scalar::{fmt_rational, GaussianRational as GR, Rational};
use holoavoid::scene::Scene;
use holoavoid::verify::{verify, verify_with_workers, Method, SamplingPlan, SetVerdict};
use holoavoid::witness::{witness_optimality, witness_thm2i, witness_thm2ii};
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn std_four() -> Vec<ComplexHyperplane> {
    ComplexHyperplane::standard_four().to_vec()
}

fn real_h(c: [i64; 6]) -> RealSubspace {
    RealSubspace::new(vec![RealLinearForm::from_ints(c)]).unwrap()
}

fn criterion_1() -> Check {
    let lines: Vec<_> = std_four().iter().map(project_hyperplane).collect();
    let diags = enumerate_diagonals(&lines).map_err(|e| e.to_string())?;
    let mut got: Vec<ProjHyperplane> = diags.iter().map(|d| d.form().unwrap().clone()).collect();
    let mut expected: Vec<ProjHyperplane> = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
        .iter()
        .map(|c| ProjHyperplane::from_ints(c).unwrap())
        .collect();
    got.sort_by_key(ToString::to_string);
    expected.sort_by_key(ToString::to_string);
    ensure(got == expected, format!("standard diagonals {got:?}"))?;

    let mut r = rng(1);
    let mut checked = 0;
    for _ in 0..5 {
        let hs = loop {
            let hs: Vec<ProjHyperplane> = (0..6)
                .map(|_| ProjHyperplane::new((0..4).map(|_| small_gaussian_int(&mut r)).collect()))
                .filter_map(Result::ok)
                .collect();
            if hs.len() == 6 && holoavoid::projective::hyperplanes_in_general_position(&hs).unwrap()
            {
                break hs;
            }
        };
        let diags = enumerate_diagonals(&hs).map_err(|e| e.to_string())?;
        ensure(
            diags.len() == 10,
            format!("{} diagonals for n = 3", diags.len()),
        )?;
        for d in &diags {
            ensure(
                d.contains(&d.p) && d.contains(&d.q),
                "diagonal misses a defining point",
            )?;
            // Independent incidence: p lies on every hyperplane of I, q on every one of J.
            let on = |idx: &[usize], pt: &[GR]| {
                idx.iter().all(|&k| {
                    hs[k]
                        .coeffs()
                        .iter()
                        .zip(pt)
                        .fold(GR::zero(), |acc, (a, x)| &acc + &(a * x))
                        .is_zero()
                })
            };
            ensure(on(d.partition.i(), d.p.coords()), "p off its hyperplanes")?;
            ensure(on(d.partition.j(), d.q.coords()), "q off its hyperplanes")?;
            ensure(d.equations.len() == 2, "line in CP^3 needs two equations")?;
            checked += 1;
        }
    }
    Ok(format!(
        "3 standard lines match; {checked} CP^3 diagonals incident"
    ))
}

fn criterion_2() -> Check {
    let mut hs = std_four();
    hs.push(ComplexHyperplane::from_ints([1, 2, 3]));
    let f = witness_thm2i(&hs);
    for (k, h) in hs.iter().enumerate() {
        ensure(
            is_nowhere_zero(&apply_form(h, &f)) == Decision::Yes,
            format!("H{} form not exactly nowhere zero", k + 1),
        )?;
    }
    ensure(is_projectively_constant(&f), "projection not constant")?;
    Ok(format!(
        "f = {f}, five exact avoidances, projection constant"
    ))
}

fn criterion_3() -> Check {
    let w = witness_thm2ii(&std_four()).map_err(|e| e.to_string())?;
    let expected_curve = Scene::parse("curve f: (exp(z), -exp(z), exp(2z))").unwrap();
    let expected_h = Scene::parse("real H: x1 - x2 = 0; x1 - x3 = 0").unwrap();
    ensure(
        w.curve == expected_curve.curves[0].value,
        format!("curve {}", w.curve),
    )?;
    ensure(
        w.subspace == expected_h.reals[0].value,
        format!("subspace {}", w.subspace),
    )?;
    let scene = Scene::from_arrangement(&std_four(), std::slice::from_ref(&w.subspace));
    let plan = SamplingPlan::default();
    let report = verify(&w.curve, &scene, &plan);
    for name in ["H1", "H2", "H3", "H4"] {
        let s = report.set(name).unwrap();
        ensure(
            s.method == Method::Exact && s.verdict == SetVerdict::Avoided,
            format!("{name} not exactly avoided"),
        )?;
    }
    let h = report.set("H").unwrap();
    let margin = h.min_margin.unwrap_or(0.0);
    let samples = h.samples.unwrap_or(0);
    let targeted = h.targeted_samples.unwrap_or(0);
    ensure(
        h.method == Method::Sampled && h.verdict == SetVerdict::Avoided,
        "H not sampled-avoided",
    )?;
    ensure(margin > 1e-6, format!("min margin {margin:e} <= 1e-6"))?;
    ensure(samples >= 10_000, format!("only {samples} samples"))?;
    ensure(targeted > 0, "no targeted samples")?;

    // Oracle: on the lines Re(e^z) = 0 only Re(e^z - e^{2z}) = |e^z|^2 keeps
    // f off H, and elsewhere the first form dominates. The margin shrinks
    // with Re z, so the disk minimum sits where such a line meets the circle.
    let oracle = |z: Complex64| {
        let e = z.exp();
        let f = [e, -e, e * e];
        let norm = f.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let l1 = (f[0] - f[1]).re.abs() / 2f64.sqrt();
        let l2 = (f[0] - f[2]).re.abs() / 2f64.sqrt();
        l1.max(l2) / norm
    };
    let radius = plan.disk_radius;
    let mut oracle_min = f64::INFINITY;
    for k in -4..4 {
        let y = std::f64::consts::FRAC_PI_2 + k as f64 * std::f64::consts::PI;
        if y.abs() < radius {
            oracle_min =
                oracle_min.min(oracle(Complex64::new(-(radius * radius - y * y).sqrt(), y)));
        }
    }
    ensure(
        oracle_min <= margin * (1.0 + 1e-9) && margin <= oracle_min * 1.05,
        format!("verifier margin {margin:e} not within 5% of the boundary minimum {oracle_min:e}"),
    )?;
    ensure(!report.projection_constant, "projection constant")?;
    let vals = &report.projection_values;
    ensure(
        vals.len() == 2 && vals[0].value != vals[1].value,
        "no two distinct projective values",
    )?;
    Ok(format!(
        "4 exact; H min margin {margin:.3e} (oracle {oracle_min:.3e}) over {samples} samples ({targeted} targeted)"
    ))
}

fn criterion_4() -> Check {
    let mut r = rng(4);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let w = Complex64::new(r.gen_range(-50.0..50.0), r.gen_range(-50.0..50.0));
        let lhs = (w * w).re;
        let rhs = w.re * w.re - w.im * w.im;
        let err = (lhs - rhs).abs() / (1.0 + w.norm_sqr());
        worst = worst.max(err);
    }
    ensure(worst <= 1e-12, format!("scaled error {worst:e}"))?;
    Ok(format!("10000 samples, worst scaled error {worst:.2e}"))
}

/// The six-term real form `Σ a_j Re(c_j w) + b_j Im(c_j w)`, evaluated with
/// exact complex products.
fn direct_eval(a: &[Rational; 3], b: &[Rational; 3], c: &[GR; 3], w: &GR) -> Rational {
    (0..3).fold(Rational::zero(), |acc, j| {
        let cw = &c[j] * w;
        acc + &a[j] * &cw.re + &b[j] * &cw.im
    })
}

fn show(v: &[Rational; 3]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}

/// Alternate b with `-a_1 Im(c_2)` in place of `-a_2 Im(c_2)`.
fn alternate_b(a: &[Rational; 3], b: &[Rational; 3], c2: &GR, c3: &GR) -> Rational {
    &b[0] + &b[1] * &c2.re + &b[2] * &c3.re - &a[0] * &c2.im - &a[2] * &c3.im
}

fn criterion_5() -> Check {
    let mut r = rng(5);
    let mut disagreement = None;
    let mut n = 0;
    while n < 10_000 {
        let a = [rational(&mut r), rational(&mut r), rational(&mut r)];
        let b = [rational(&mut r), rational(&mut r), rational(&mut r)];
        let coeffs = [&a[0], &b[0], &a[1], &b[1], &a[2], &b[2]].map(Clone::clone);
        let Ok(form) = RealLinearForm::new(coeffs) else {
            continue;
        };
        let h = RealSubspace::new(vec![form]).unwrap();
        let c2 = gaussian(&mut r);
        let c3 = gaussian(&mut r);
        let w = gaussian(&mut r);
        let collapsed = collapse_real_form(&h, &c2, &c3).map_err(|e| e.to_string())?;
        let c = [GR::from(1), c2.clone(), c3.clone()];
        let direct = direct_eval(&a, &b, &c, &w);
        if collapsed.eval(&w) != direct {
            return Err(format!(
                "mismatch at a=({}) b=({}) c2={c2} c3={c3} w={w}",
                show(&a),
                show(&b)
            ));
        }
        if disagreement.is_none() {
            let alt = &collapsed.a * &w.re + alternate_b(&a, &b, &c2, &c3) * &w.im;
            if alt != direct {
                disagreement = Some(format!(
                    "a=({}) b=({}) c2={c2} c3={c3} w={w}",
                    show(&a),
                    show(&b)
                ));
            }
        }
        n += 1;
    }
    // A fixed tuple where the two b's differ: a = (1, 0, 0), c2 = i, w = i.
    let a = [
        Rational::from_integer(1.into()),
        Rational::zero(),
        Rational::zero(),
    ];
    let b = [Rational::zero(), Rational::zero(), Rational::zero()];
    let h = RealSubspace::new(vec![RealLinearForm::from_ints([1, 0, 0, 0, 0, 0])]).unwrap();
    let collapsed = collapse_real_form(&h, &GR::i(), &GR::from(0)).unwrap();
    let direct = direct_eval(&a, &b, &[GR::from(1), GR::i(), GR::from(0)], &GR::i());
    let alt = &collapsed.a * Rational::zero() + alternate_b(&a, &b, &GR::i(), &GR::from(0));
    ensure(
        collapsed.eval(&GR::i()) == direct && alt != direct,
        "fixed disagreement tuple",
    )?;
    let found = disagreement.ok_or("alternate b never disagreed")?;
    Ok(format!(
        "10000 exact matches; alternate b disagrees, first at {found}"
    ))
}

fn criterion_6() -> Check {
    let mut r = rng(6);
    for _ in 0..100 {
        let c: [Rational; 6] = std::array::from_fn(|_| rational(&mut r));
        let Ok(form) = RealLinearForm::new(c) else {
            continue;
        };
        let h = RealSubspace::new(vec![form]).unwrap();
        let reduced = extract_complex_hyperplane(&h).map_err(|e| e.to_string())?;
        let inner = realify(&reduced);
        let stacked = h.complement().stack(&inner.complement());
        ensure(
            stacked.rank() == 2 && inner.dim() == 4,
            format!("realify(H~) not inside {h}"),
        )?;
    }
    let h = real_h([1, 0, 1, 0, 1, 0]);
    let reduced = extract_complex_hyperplane(&h).unwrap();
    ensure(
        reduced == ComplexHyperplane::from_ints([1, 1, 1]),
        format!("H~ = {reduced}"),
    )?;
    Ok("100 random H contain realify(H~); x1+x2+x3 gives z1+z2+z3".into())
}

fn criterion_7() -> Check {
    let mut r = rng(7);
    let plan = SamplingPlan {
        random_points: 10_000,
        ..SamplingPlan::default()
    };
    let (mut constant, mut witnessed, mut on_diagonal) = (0, 0, 0);
    for case in 0..200 {
        let hs = random_gp_four(&mut r);
        let beta: [GR; 3] = if case % 2 == 0 {
            std::array::from_fn(|_| gaussian(&mut r))
        } else if case % 20 == 1 {
            diagonal_lines(&hs).swap_remove(r.gen_range(0..3))
        } else {
            let j = r.gen_range(0..4);
            let k = (j + r.gen_range(1..4)) % 4;
            let (gj, gk) = (nonzero_gaussian(&mut r), nonzero_gaussian(&mut r));
            std::array::from_fn(|t| &(&gj * &hs[j].coeffs()[t]) + &(&gk * &hs[k].coeffs()[t]))
        };
        let Ok(form) = RealLinearForm::from_complex_form(&beta) else {
            continue;
        };
        let h = RealSubspace::new(vec![form]).unwrap();
        let reduced = extract_complex_hyperplane(&h).unwrap();
        let b = reduced.coeffs();
        let degenerate = (0..4)
            .flat_map(|j| (j + 1..4).map(move |k| (j, k)))
            .any(|(j, k)| det3([b, hs[j].coeffs(), hs[k].coeffs()]).is_zero());
        match classify(&hs, &h) {
            Ok(v) => {
                let expected = if degenerate {
                    VerdictTag::WitnessExists
                } else {
                    VerdictTag::AllCurvesConstant
                };
                ensure(
                    v.tag == expected,
                    format!("case {case}: tag {} vs oracle", v.tag),
                )?;
                let ranks_low = v.evidence.iter().any(|t| t.rank < 6);
                ensure(
                    ranks_low == degenerate,
                    format!("case {case}: evidence disagrees with oracle"),
                )?;
                if let Some(f) = v.witness {
                    let scene = Scene::from_arrangement(&hs, std::slice::from_ref(&h));
                    let report = verify(&f, &scene, &plan);
                    ensure(
                        report.all_avoided() && !report.projection_constant,
                        format!("case {case}: witness {f} fails verification"),
                    )?;
                    for hk in &hs {
                        ensure(
                            is_nowhere_zero(&apply_form(hk, &f)) == Decision::Yes,
                            format!("case {case}: hyperplane not exactly avoided"),
                        )?;
                    }
                    witnessed += 1;
                } else {
                    constant += 1;
                }
            }
            Err(Error::ConstructionFailed(msg)) => {
                let on_diag = diagonal_lines(&hs).iter().any(|d| proportional(d, b));
                ensure(
                    degenerate && on_diag,
                    format!("case {case}: unexpected failure {msg}"),
                )?;
                on_diagonal += 1;
            }
            Err(e) => return Err(format!("case {case}: {e}")),
        }
    }
    ensure(
        constant + witnessed + on_diagonal == 200,
        "some configurations skipped",
    )?;
    Ok(format!(
        "{constant} AllCurvesConstant, {witnessed} verified witnesses, {on_diagonal} with H~ on a diagonal (no witness exists)"
    ))
}

fn criterion_8() -> Check {
    let std = std_four();
    let h = real_h([1, 0, 1, 0, 1, 0]);
    let f = witness_optimality(&std[..3], &h).map_err(|e| e.to_string())?;
    let expected = Scene::parse("curve f: (1, exp(z), -exp(z))").unwrap();
    ensure(f == expected.curves[0].value, format!("curve {f}"))?;
    let value = apply_form(&h.forms()[0].complex_form(), &f);
    ensure(
        value == ExpSum::constant(GR::from(1)),
        format!("H-form is {value}"),
    )?;
    let scene = Scene::from_arrangement(&std[..3], std::slice::from_ref(&h));
    let report = verify(&f, &scene, &SamplingPlan::default());
    ensure(
        report
            .sets
            .iter()
            .all(|s| s.method == Method::Exact && s.verdict == SetVerdict::Avoided),
        "not all exact avoided",
    )?;
    ensure(
        !report.projection_constant && !is_projectively_constant(&f),
        "projection constant",
    )?;
    Ok("f = (1, exp(z), -exp(z)), H-form = 1 exactly, 4 exact verdicts".into())
}

fn run_cli(args: &[&str], seed: Option<&str>) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        args.iter().copied(),
        seed.map(String::from),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn random_real_matrix(r: &mut rand_chacha::ChaCha8Rng) -> RealMatrix {
    let rows = r.gen_range(1..=6);
    Matrix::from_rows(
        (0..rows)
            .map(|_| (0..6).map(|_| rational(r)).collect())
            .collect(),
    )
}

fn criterion_9() -> Check {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/corpus");
    let scene = format!("{dir}/thm2ii_standard.scene");
    let args = [
        "holoavoid",
        "verify",
        scene.as_str(),
        "--curve",
        "f",
        "--seed",
        "11",
    ];
    let (c1, o1) = run_cli(&args, None);
    let (c2, o2) = run_cli(&args, Some("99"));
    ensure(c1 == 0 && c2 == 0, format!("exit codes {c1}, {c2}"))?;
    ensure(o1 == o2, "reports differ between runs")?;
    let parsed = Scene::parse(&std::fs::read_to_string(&scene).unwrap()).unwrap();
    let f = parsed.curve("f").unwrap();
    let sets = Scene {
        curves: vec![],
        ..parsed.clone()
    };
    let plan = SamplingPlan {
        seed: 11,
        ..SamplingPlan::default()
    };
    let reference = verify_with_workers(f, &sets, &plan, 1).to_json();
    for workers in [2, 5, 16] {
        ensure(
            verify_with_workers(f, &sets, &plan, workers).to_json() == reference,
            "worker count changes report",
        )?;
    }

    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "scene"))
        .collect();
    files.sort();
    ensure(
        files.len() >= 20,
        format!("corpus has {} scenes", files.len()),
    )?;
    for path in &files {
        let text = std::fs::read_to_string(path).unwrap();
        let s = Scene::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let printed = s.to_string();
        let again =
            Scene::parse(&printed).map_err(|e| format!("{}: reparse {e}", path.display()))?;
        ensure(
            again == s && again.to_string() == printed,
            format!("{} not a fixpoint", path.display()),
        )?;
    }

    let mut r = rng(9);
    for _ in 0..1000 {
        let m = random_real_matrix(&mut r);
        let back = orthogonal_complement(&orthogonal_complement(&m));
        ensure(same_span(&back, &m), "complement is not an involution")?;
        ensure(
            m.rank() + orthogonal_complement(&m).n_rows() == 6,
            "dimension count",
        )?;
    }
    for _ in 0..1000 {
        let rows = r.gen_range(1..=4);
        let cols = r.gen_range(1..=5);
        let m: ComplexMatrix = Matrix::from_rows(
            (0..rows)
                .map(|_| (0..cols).map(|_| small_gaussian_int(&mut r)).collect())
                .collect(),
        );
        let kernel = m.kernel();
        ensure(m.rank() + kernel.len() == cols, "rank-nullity")?;
        for v in &kernel {
            ensure(
                m.mul_vec(v).iter().all(Zero::is_zero),
                "kernel vector not in kernel",
            )?;
        }
    }
    Ok(format!(
        "byte-identical reports; {} corpus scenes round-trip; 1000 involution + 1000 rank-nullity instances",
        files.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("diagonal count", criterion_1, Duration::from_secs(1)),
        (
            "five-hyperplane witness",
            criterion_2,
            Duration::from_secs(1),
        ),
        ("codimension-2 witness", criterion_3, Duration::from_secs(5)),
        ("Re(w^2) identity", criterion_4, Duration::from_secs(1)),
        ("a/b collapse oracle", criterion_5, Duration::from_secs(5)),
        ("H~ extraction", criterion_6, Duration::from_secs(1)),
        (
            "classifier complementarity and closure",
            criterion_7,
            Duration::from_secs(30),
        ),
        ("optimality example", criterion_8, Duration::from_secs(1)),
        (
            "determinism and round-trips",
            criterion_9,
            Duration::from_secs(10),
        ),
    ];
    let mut failed = 0;
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time budget: {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {}: {status} [{name}] {detail} ({:.3}s, budget {}s)",
            k + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
