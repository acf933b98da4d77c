//! Explicit non-constant entire curves avoiding hyperplane arrangements.

use num_traits::{One, Zero};

use crate::arrangement::{
    extract_complex_hyperplane, triple_ranks, validate_four, RealLinearForm, RealSubspace,
};
use crate::curve::{ExpAffineCurve, ExpSum, Poly};
use crate::diagonals::{enumerate_diagonals, DiagonalLine};
use crate::error::{Error, Result};
use crate::linalg::{dot, ComplexMatrix, Matrix};
use crate::projective::{project_hyperplane, ComplexHyperplane};
use crate::scalar::{gaussian_integers_by_height, GaussianRational};

type GR = GaussianRational;

/// Coordinates `w = M z` in which four hyperplanes in general position read
/// `w1 = 0`, `w2 = 0`, `w3 = 0`, `w1 + w2 + w3 = 0`.
///
/// With `A` the matrix of the first three forms and `λ A = α_4`,
/// `M = diag(λ) A`, so `α_i · z = w_i / λ_i` and `α_4 · z = Σ w_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFrame {
    pub m: ComplexMatrix,
    pub m_inv: ComplexMatrix,
    pub lambda: [GR; 3],
}

impl NormalFrame {
    /// The forms in `w` coordinates: `α_k M^{-1}`.
    pub fn standard_forms(&self, hs: &[ComplexHyperplane]) -> Vec<ComplexHyperplane> {
        hs.iter()
            .map(|h| {
                ComplexHyperplane::from_slice(&self.m_inv.vec_mul(h.coeffs()))
                    .expect("invertible change of coordinates")
            })
            .collect()
    }

    /// `f = M^{-1} g` for a curve `g` written in `w` coordinates.
    pub fn pull_back_curve(&self, g: &ExpAffineCurve) -> ExpAffineCurve {
        g.transform(&self.m_inv)
            .expect("invertible change of coordinates")
    }

    /// `Re(β · w)` becomes `Re(β M · z)`.
    pub fn pull_back_real_form(&self, form: &RealLinearForm) -> RealLinearForm {
        let beta = self.m.vec_mul(&form.complex_form());
        RealLinearForm::from_complex_form(&beta).expect("invertible change of coordinates")
    }

    pub fn pull_back_subspace(&self, h: &RealSubspace) -> RealSubspace {
        let forms = h
            .forms()
            .iter()
            .map(|f| self.pull_back_real_form(f))
            .collect();
        RealSubspace::new(forms).expect("invertible change of coordinates")
    }
}

pub fn normalize_four(hs: &[ComplexHyperplane]) -> Result<NormalFrame> {
    validate_four(hs)?;
    let a = ComplexMatrix::from_rows(hs[..3].iter().map(|h| h.coeffs().to_vec()).collect());
    let lambda = a
        .transpose()
        .solve(hs[3].coeffs())
        .ok_or(Error::NotInGeneralPosition {
            subset: vec![0, 1, 2],
        })?;
    let rows = a
        .rows()
        .iter()
        .zip(&lambda)
        .map(|(row, l)| row.iter().map(|x| x * l).collect())
        .collect();
    let m = Matrix::from_rows(rows);
    let m_inv = m.inverse().ok_or(Error::NotIndependent)?;
    let lambda: [GR; 3] = lambda.try_into().expect("three multipliers");
    Ok(NormalFrame { m, m_inv, lambda })
}

fn dedup_hyperplanes(hs: &[ComplexHyperplane]) -> Vec<ComplexHyperplane> {
    let mut out: Vec<ComplexHyperplane> = Vec::new();
    for h in hs {
        if !out.iter().any(|o| o.same_as(h)) {
            out.push(h.clone());
        }
    }
    out
}

/// Gaussian-integer pairs ordered by the larger height index, then
/// lexicographically by index.
fn gaussian_pairs() -> impl Iterator<Item = (GR, GR)> {
    let mut seen: Vec<GR> = Vec::new();
    let mut source = gaussian_integers_by_height();
    (0usize..).flat_map(move |k| {
        seen.push(source.next().expect("infinite enumeration"));
        let seen = seen.clone();
        let mut out = Vec::with_capacity(2 * k + 1);
        for a in 0..=k {
            for b in 0..=k {
                if a.max(b) == k {
                    out.push((seen[a].clone(), seen[b].clone()));
                }
            }
        }
        out
    })
}

/// `(exp(h), c2 exp(h), c3 exp(h))` with `(c2, c3)` the first Gaussian-integer
/// pair off every line `α_1 + α_2 c2 + α_3 c3 = 0`, using `h(z) = z`.
pub fn witness_thm2i(hs: &[ComplexHyperplane]) -> ExpAffineCurve {
    witness_thm2i_with_exponent(hs, &Poly::z())
}

pub fn witness_thm2i_with_exponent(hs: &[ComplexHyperplane], h: &Poly) -> ExpAffineCurve {
    let hs = dedup_hyperplanes(hs);
    let (c2, c3) = gaussian_pairs()
        .find(|(c2, c3)| {
            hs.iter().all(|h| {
                let a = h.coeffs();
                !(&(&a[0] + &(&a[1] * c2)) + &(&a[2] * c3)).is_zero()
            })
        })
        .expect("finitely many lines cannot cover all pairs");
    let comps = [GR::one(), c2, c3]
        .into_iter()
        .map(|c| ExpSum::term(c, h.clone()))
        .collect();
    ExpAffineCurve::new(comps).expect("first component is nonzero")
}

/// Output of [`witness_thm2ii`].
#[derive(Clone, Debug)]
pub struct Thm2iiWitness {
    pub frame: NormalFrame,
    /// `{x1 - x2 = 0, x1 - x3 = 0}` and `(e^z, -e^z, e^{2z})` in `w` coordinates.
    pub normalized_subspace: RealSubspace,
    pub normalized_curve: ExpAffineCurve,
    pub subspace: RealSubspace,
    pub curve: ExpAffineCurve,
}

pub fn witness_thm2ii(hs: &[ComplexHyperplane]) -> Result<Thm2iiWitness> {
    let frame = normalize_four(hs)?;
    let normalized_subspace = RealSubspace::new(vec![
        RealLinearForm::from_ints([1, 0, -1, 0, 0, 0]),
        RealLinearForm::from_ints([1, 0, 0, 0, -1, 0]),
    ])
    .expect("independent forms");
    let z = Poly::z();
    let normalized_curve = ExpAffineCurve::new(vec![
        ExpSum::exp(z.clone()),
        ExpSum::term(GR::from(-1), z.clone()),
        ExpSum::exp(z.scale(&GR::from(2))),
    ])
    .expect("nonzero curve");
    let subspace = frame.pull_back_subspace(&normalized_subspace);
    let curve = frame.pull_back_curve(&normalized_curve);
    Ok(Thm2iiWitness {
        frame,
        normalized_subspace,
        normalized_curve,
        subspace,
        curve,
    })
}

/// `Re(K e^c) ≠ 0` for a nonzero Gaussian rational `K` and a Gaussian
/// integer `c = a + bi`.
///
/// `Re(K e^c) = e^a (Re K cos b - Im K sin b)`. For `b = 0` this is the sign
/// of `Re K`. For an integer `b ≠ 0`, `cos b`, `sin b` and `tan b` are
/// transcendental, so the bracket cannot vanish for rational `Re K, Im K`
/// not both zero.
fn re_scaled_exp_nonzero(k: &GR, c: &GR) -> bool {
    if k.is_zero() {
        return false;
    }
    if c.im.is_zero() {
        !k.re.is_zero()
    } else {
        true
    }
}

/// `e^z p + e^c q` for a diagonal through `p` and `q`, where the form `β` of
/// `H̃` kills `p` and `Re(β·q e^c) ≠ 0`.
///
/// Each hyperplane through `p` sees `e^c (α·q)` and each one through `q` sees
/// `e^z (α·p)`, both nowhere zero; the real form of `H` is the constant
/// `Re(β·q e^c)`.
fn diagonal_witness(beta: &[GR; 3], d: &DiagonalLine) -> Option<ExpAffineCurve> {
    let orientations = [(&d.p, &d.q), (&d.q, &d.p)];
    for (p, q) in orientations {
        if !dot(beta, p.coords()).is_zero() {
            continue;
        }
        let k = dot(beta, q.coords());
        if k.is_zero() {
            continue;
        }
        let c = gaussian_integers_by_height().find(|c| re_scaled_exp_nonzero(&k, c))?;
        let moving = Poly::z();
        let fixed = Poly::constant(c);
        let comps = (0..3)
            .map(|i| {
                &ExpSum::term(p.coords()[i].clone(), moving.clone())
                    + &ExpSum::term(q.coords()[i].clone(), fixed.clone())
            })
            .collect();
        return ExpAffineCurve::new(comps).ok();
    }
    None
}

/// A non-constant curve avoiding `H_1..H_4` and the real hyperplane `H`,
/// given a pair `(j, k)` (0-based) for which `(H̃, H_j, H_k)` is degenerate.
///
/// The diagonal separating `{j, k}` from the other two is tried first, then
/// the remaining diagonals in order. Fails when `H̃` is itself a diagonal
/// line: then no curve with non-constant projection avoids all five sets.
pub fn witness_thm3_2(
    hs: &[ComplexHyperplane],
    h: &RealSubspace,
    pair: (usize, usize),
) -> Result<ExpAffineCurve> {
    validate_four(hs)?;
    let reduced = extract_complex_hyperplane(h)?;
    let (j, k) = if pair.0 < pair.1 {
        pair
    } else {
        (pair.1, pair.0)
    };
    if j == k || k >= 4 {
        return Err(Error::NotApplicable(format!("invalid pair ({j}, {k})")));
    }
    let degenerate = triple_ranks(hs, &reduced)
        .iter()
        .any(|t| t.pair == (j, k) && t.rank < 6);
    if !degenerate {
        return Err(Error::NotApplicable(format!(
            "triple with hyperplanes {} and {} is in general position",
            j + 1,
            k + 1
        )));
    }
    let lines: Vec<_> = hs.iter().map(project_hyperplane).collect();
    let mut diags = enumerate_diagonals(&lines)?;
    if let Some(pos) = diags
        .iter()
        .position(|d| d.partition.i() == [j, k] || d.partition.j() == [j, k])
    {
        let natural = diags.remove(pos);
        diags.insert(0, natural);
    }
    let beta = reduced.coeffs().clone();
    diags
        .iter()
        .find_map(|d| diagonal_witness(&beta, d))
        .ok_or_else(|| {
            Error::ConstructionFailed(format!(
                "every diagonal is obstructed: {reduced} = 0 is a diagonal line"
            ))
        })
}

/// The three-hyperplane example: standard `H_1, H_2, H_3` with
/// `H = {x1 + x2 + x3 = 0}` are avoided by `(1, e^z, -e^z)`.
pub fn witness_optimality(hs: &[ComplexHyperplane], h: &RealSubspace) -> Result<ExpAffineCurve> {
    let std = ComplexHyperplane::standard_four();
    let matches_hs = hs.len() == 3 && hs.iter().zip(&std).all(|(a, b)| a.same_as(b));
    let target = RealSubspace::new(vec![RealLinearForm::from_ints([1, 0, 1, 0, 1, 0])])
        .expect("single form");
    if !matches_hs || *h != target {
        return Err(Error::NotApplicable(
            "needs z1, z2, z3 and x1 + x2 + x3 = 0".into(),
        ));
    }
    Ok(ExpAffineCurve::new(vec![
        ExpSum::constant(GR::one()),
        ExpSum::exp(Poly::z()),
        ExpSum::term(GR::from(-1), Poly::z()),
    ])
    .expect("nonzero curve"))
}
