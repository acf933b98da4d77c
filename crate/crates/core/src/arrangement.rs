//! Real subspaces of `R^6 = C^3` and the general-position classification of
//! four complex hyperplanes plus one real hyperplane.
//!
//! Coordinates on `R^6` are ordered `(x1, y1, x2, y2, x3, y3)` with
//! `z_j = x_j + i y_j`. A real form `Σ a_j x_j + b_j y_j` is the real part of
//! the complex form `Σ (a_j - i b_j) z_j`; that correspondence drives both
//! realification and the extraction of the complex hyperplane inside a real
//! hyperplane.

use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::curve::ExpAffineCurve;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, RealMatrix};
use crate::projective::{general_position_violation, project_hyperplane, ComplexHyperplane};
use crate::scalar::{fmt_rational, GaussianRational, Rational};
use crate::scene::Scene;
use crate::verify::{verify, SamplingPlan, VerificationReport};
use crate::witness::witness_thm3_2;

type GR = GaussianRational;

pub const REAL_VARS: [&str; 6] = ["x1", "y1", "x2", "y2", "x3", "y3"];

/// `Σ a_j x_j + b_j y_j` on `R^6`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RealLinearForm {
    coeffs: [Rational; 6],
}

impl RealLinearForm {
    pub fn new(coeffs: [Rational; 6]) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(c: [i64; 6]) -> Self {
        Self::new(c.map(crate::scalar::int)).expect("nonzero form")
    }

    pub fn coeffs(&self) -> &[Rational; 6] {
        &self.coeffs
    }

    /// Coefficient of `x_j` (0-based `j`).
    pub fn a(&self, j: usize) -> &Rational {
        &self.coeffs[2 * j]
    }

    /// Coefficient of `y_j` (0-based `j`).
    pub fn b(&self, j: usize) -> &Rational {
        &self.coeffs[2 * j + 1]
    }

    /// The complex form `β` with `self(z) = Re(β · z)`: `β_j = a_j - i b_j`.
    pub fn complex_form(&self) -> [GR; 3] {
        [0, 1, 2].map(|j| GR::new(self.a(j).clone(), -self.b(j).clone()))
    }

    /// The real form `Re(β · z)`.
    pub fn from_complex_form(beta: &[GR]) -> Result<Self> {
        assert_eq!(beta.len(), 3);
        let c = [
            beta[0].re.clone(),
            -beta[0].im.clone(),
            beta[1].re.clone(),
            -beta[1].im.clone(),
            beta[2].re.clone(),
            -beta[2].im.clone(),
        ];
        Self::new(c)
    }

    pub fn eval(&self, x: &[Rational; 6]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, v)| acc + a * v)
    }
}

impl fmt::Display for RealLinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, v) in self.coeffs.iter().zip(REAL_VARS) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = if mag == Rational::from_integer(1.into()) {
                v.to_string()
            } else {
                format!("{}*{v}", fmt_rational(&mag))
            };
            match (out.is_empty(), c.is_negative()) {
                (true, false) => out.push_str(&body),
                (true, true) => out.push_str(&format!("-{body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
                (false, true) => out.push_str(&format!(" - {body}")),
            }
        }
        f.write_str(&out)
    }
}

/// The common kernel of linearly independent real forms.
///
/// The defining forms are kept as given (for printing); equality compares the
/// reduced row echelon form of their span, i.e. the subspaces themselves.
#[derive(Clone, Debug)]
pub struct RealSubspace {
    forms: Vec<RealLinearForm>,
    canonical: Vec<Vec<Rational>>,
}

impl PartialEq for RealSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for RealSubspace {}

impl RealSubspace {
    pub fn new(forms: Vec<RealLinearForm>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::TooFew { needed: 1, got: 0 });
        }
        let m = Self::matrix_of(&forms);
        let canonical = m.row_space();
        if canonical.len() != forms.len() {
            return Err(Error::DependentForms);
        }
        Ok(Self { forms, canonical })
    }

    fn matrix_of(forms: &[RealLinearForm]) -> RealMatrix {
        Matrix::from_rows(forms.iter().map(|f| f.coeffs.to_vec()).collect())
    }

    pub fn forms(&self) -> &[RealLinearForm] {
        &self.forms
    }

    pub fn dim(&self) -> usize {
        6 - self.forms.len()
    }

    /// Rows spanning the orthogonal complement: the defining forms.
    pub fn complement(&self) -> RealMatrix {
        Self::matrix_of(&self.forms)
    }

    /// A basis of the subspace itself.
    pub fn basis(&self) -> RealMatrix {
        crate::linalg::orthogonal_complement(&self.complement())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &RealSubspace) -> bool {
        let own = other.complement();
        own.stack(&self.complement()).rank() == own.rank()
    }

    pub fn contains_point(&self, x: &[Rational; 6]) -> bool {
        self.forms.iter().all(|f| f.eval(x).is_zero())
    }
}

impl fmt::Display for RealSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.forms.iter().map(|l| format!("{l} = 0")).collect();
        f.write_str(&parts.join("; "))
    }
}

/// `H` as the real codimension-2 subspace `{Re(Σ a_i z_i) = 0, Im(Σ a_i z_i) = 0}`.
pub fn realify(h: &ComplexHyperplane) -> RealSubspace {
    let a = h.coeffs();
    let re = RealLinearForm::from_complex_form(a).expect("nonzero form");
    // Im(a·z) = Re(-i a · z).
    let rotated: Vec<GR> = a.iter().map(|c| &(-GR::i()) * c).collect();
    let im = RealLinearForm::from_complex_form(&rotated).expect("nonzero form");
    RealSubspace::new(vec![re, im]).expect("real and imaginary parts are independent")
}

/// Dimension of the span of the orthogonal complements.
pub fn complement_span_dim(spaces: &[&RealSubspace]) -> usize {
    let rows = spaces
        .iter()
        .flat_map(|s| s.forms.iter().map(|f| f.coeffs.to_vec()))
        .collect();
    RealMatrix::new(6, rows).expect("six columns").rank()
}

fn require_codim2(s: &RealSubspace) -> Result<()> {
    if s.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: s.dim(),
        });
    }
    Ok(())
}

/// `Span(A^⊥, B^⊥, C^⊥) = R^6`.
pub fn triple_in_general_position(
    a: &RealSubspace,
    b: &RealSubspace,
    c: &RealSubspace,
) -> Result<bool> {
    for s in [a, b, c] {
        require_codim2(s)?;
    }
    Ok(complement_span_dim(&[a, b, c]) == 6)
}

/// Every triple of the family is in general position.
pub fn family_in_general_position(hs: &[RealSubspace]) -> Result<bool> {
    Ok(family_violation(hs)?.is_none())
}

/// First triple `(i, j, k)` whose complements fail to span `R^6`.
pub fn family_violation(hs: &[RealSubspace]) -> Result<Option<(usize, usize, usize)>> {
    if hs.len() < 3 {
        return Err(Error::TooFew {
            needed: 3,
            got: hs.len(),
        });
    }
    for s in hs {
        require_codim2(s)?;
    }
    for t in (0..hs.len()).combinations(3) {
        if !triple_in_general_position(&hs[t[0]], &hs[t[1]], &hs[t[2]])? {
            return Ok(Some((t[0], t[1], t[2])));
        }
    }
    Ok(None)
}

fn require_hyperplane(h: &RealSubspace) -> Result<&RealLinearForm> {
    if h.dim() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            found: h.dim(),
        });
    }
    Ok(&h.forms[0])
}

/// The unique complex hyperplane inside a real hyperplane of `R^6`:
/// for `H = {Σ a_j x_j + b_j y_j = 0}` it is `{Σ (a_j - i b_j) z_j = 0}`.
pub fn extract_complex_hyperplane(h: &RealSubspace) -> Result<ComplexHyperplane> {
    let form = require_hyperplane(h)?;
    let reduced = ComplexHyperplane::new(form.complex_form())?;
    debug_assert!(h.contains(&realify(&reduced)));
    Ok(reduced)
}

/// Where `a·x + b·y = 0` holds in `R^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroSet {
    WholePlane,
    Line,
}

/// The real form of `H` restricted to the complex line `w -> (w, c2 w, c3 w)`,
/// written as `a Re(w) + b Im(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsedRealForm {
    pub a: Rational,
    pub b: Rational,
}

impl CollapsedRealForm {
    pub fn eval(&self, w: &GR) -> Rational {
        &self.a * &w.re + &self.b * &w.im
    }

    pub fn zero_set(&self) -> ZeroSet {
        if self.a.is_zero() && self.b.is_zero() {
            ZeroSet::WholePlane
        } else {
            ZeroSet::Line
        }
    }
}

/// Expands `Σ_j a_j Re(c_j w) + b_j Im(c_j w)` with `c_1 = 1` using
/// `Re(cw) = Re c Re w - Im c Im w` and `Im(cw) = Re c Im w + Im c Re w`:
///
/// * `a = a_1 + a_2 Re c_2 + a_3 Re c_3 + b_2 Im c_2 + b_3 Im c_3`
/// * `b = b_1 + b_2 Re c_2 + b_3 Re c_3 - a_2 Im c_2 - a_3 Im c_3`
pub fn collapse_real_form(h: &RealSubspace, c2: &GR, c3: &GR) -> Result<CollapsedRealForm> {
    let form = require_hyperplane(h)?;
    let cs = [GR::from(1), c2.clone(), c3.clone()];
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for (j, c) in cs.iter().enumerate() {
        a += form.a(j) * &c.re + form.b(j) * &c.im;
        b += form.b(j) * &c.re - form.a(j) * &c.im;
    }
    Ok(CollapsedRealForm { a, b })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictTag {
    /// Every triple `(H̃, H_j, H_k)` spans `R^6`: any holomorphic curve
    /// avoiding the five sets is constant.
    AllCurvesConstant,
    /// Some triple is degenerate and an explicit witness was built.
    WitnessExists,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AllCurvesConstant => "AllCurvesConstant",
            Self::WitnessExists => "WitnessExists",
        })
    }
}

/// Span dimension of `(H̃^⊥, H_j^⊥, H_k^⊥)` for one pair (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleRank {
    pub pair: (usize, usize),
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub reduced: ComplexHyperplane,
    pub evidence: Vec<TripleRank>,
    pub witness: Option<ExpAffineCurve>,
    pub report: Option<VerificationReport>,
}

/// Rank evidence for all six pairs `(j, k)`.
pub fn triple_ranks(hs: &[ComplexHyperplane], reduced: &ComplexHyperplane) -> Vec<TripleRank> {
    let reduced = realify(reduced);
    let real: Vec<RealSubspace> = hs.iter().map(realify).collect();
    (0..hs.len())
        .tuple_combinations()
        .map(|(j, k)| TripleRank {
            pair: (j, k),
            rank: complement_span_dim(&[&reduced, &real[j], &real[k]]),
        })
        .collect()
}

/// Checks the four hyperplanes: exactly four, pairwise distinct, any three
/// independent.
pub fn validate_four(hs: &[ComplexHyperplane]) -> Result<()> {
    if hs.len() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: hs.len(),
        });
    }
    for (i, j) in (0..4).tuple_combinations() {
        if hs[i].same_as(&hs[j]) {
            return Err(Error::RepeatedHyperplane {
                first: i,
                second: j,
            });
        }
    }
    let lines: Vec<_> = hs.iter().map(project_hyperplane).collect();
    if let Some(subset) = general_position_violation(&lines)? {
        return Err(Error::NotInGeneralPosition { subset });
    }
    Ok(())
}

/// Classifies four complex hyperplanes together with a real hyperplane `H`.
///
/// When every triple `(H̃, H_j, H_k)` is in general position the verdict is
/// `AllCurvesConstant` and carries only rank evidence. Otherwise a witness
/// curve is constructed for the first degenerate pair and verified against
/// the five sets before it is returned.
pub fn classify(hs: &[ComplexHyperplane], h: &RealSubspace) -> Result<Verdict> {
    classify_with_plan(hs, h, &SamplingPlan::default())
}

pub fn classify_with_plan(
    hs: &[ComplexHyperplane],
    h: &RealSubspace,
    plan: &SamplingPlan,
) -> Result<Verdict> {
    validate_four(hs)?;
    let reduced = extract_complex_hyperplane(h)?;
    let evidence = triple_ranks(hs, &reduced);
    let Some(bad) = evidence.iter().find(|t| t.rank < 6) else {
        return Ok(Verdict {
            tag: VerdictTag::AllCurvesConstant,
            reduced,
            evidence,
            witness: None,
            report: None,
        });
    };
    let witness = witness_thm3_2(hs, h, bad.pair)?;
    let scene = Scene::from_arrangement(hs, std::slice::from_ref(h));
    let report = verify(&witness, &scene, plan);
    if !report.all_avoided() || report.projection_constant {
        return Err(Error::ConstructionFailed(
            "witness did not pass verification".into(),
        ));
    }
    Ok(Verdict {
        tag: VerdictTag::WitnessExists,
        reduced,
        evidence,
        witness: Some(witness),
        report: Some(report),
    })
}
