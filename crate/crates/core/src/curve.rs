//! Entire curves whose components are finite sums of `c * exp(p(z))`.
//!
//! Coefficients `c` and the coefficients of the polynomials `p` are Gaussian
//! rationals. That class is closed under linear changes of coordinates and
//! under applying linear forms, and it admits exact identity testing:
//!
//! * functions `exp(p)` whose exponents differ by a non-constant polynomial
//!   are linearly independent over `C`;
//! * for distinct algebraic `k_1, ..., k_m` the numbers `exp(k_i)` are
//!   linearly independent over the algebraic numbers (Lindemann-Weierstrass).
//!
//! So a sum grouped by exact exponent is the zero function iff every group
//! coefficient is zero, and a sum whose exponents share one non-constant part
//! never vanishes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::projective::{split_sign, ComplexHyperplane, ProjHyperplane};
use crate::scalar::{rat, GaussianRational};

type GR = GaussianRational;

/// Polynomial in `z`; `coeffs[k]` multiplies `z^k`, trailing zeros stripped.
///
/// Ordered by degree first, then by coefficients from the top down, so sums
/// print lower-degree exponents first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<GR>,
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<GR>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GR) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(GR::one(), 1)
    }

    pub fn monomial(c: GR, degree: usize) -> Self {
        let mut coeffs = vec![GR::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[GR] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> GR {
        self.coeffs.first().cloned().unwrap_or_else(GR::zero)
    }

    /// The polynomial with its constant term removed.
    pub fn non_constant_part(&self) -> Poly {
        let mut c = self.coeffs.clone();
        if let Some(first) = c.first_mut() {
            *first = GR::zero();
        }
        Poly::new(c)
    }

    pub fn scale(&self, s: &GR) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(GR::conj).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GR::from(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, z: &GR) -> GR {
        self.coeffs
            .iter()
            .rev()
            .fold(GR::zero(), |acc, c| &(&acc * z) + c)
    }

    pub fn to_numeric(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GR::to_complex64).collect()
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(GR::one()), |acc, _| &acc * self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = GR::zero();
        Poly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GR::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = split_sign(c);
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => var,
                (_, false) => format!("{mag}*{var}"),
            };
            match (out.is_empty(), neg) {
                (true, false) => out.push_str(&body),
                (true, true) => out.push_str(&format!("-{body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
                (false, true) => out.push_str(&format!(" - {body}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// `coeff * exp(exponent(z))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpPoly {
    pub coeff: GR,
    pub exponent: Poly,
}

impl ExpPoly {
    pub fn new(coeff: GR, exponent: Poly) -> Self {
        Self { coeff, exponent }
    }

    pub fn constant(coeff: GR) -> Self {
        Self::new(coeff, Poly::zero())
    }
}

/// A finite sum of [`ExpPoly`] terms grouped by exact exponent.
///
/// Zero coefficients are dropped, so the empty sum is exactly the zero
/// function.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExpSum {
    terms: BTreeMap<Poly, GR>,
}

impl ExpSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GR) -> Self {
        Self::term(c, Poly::zero())
    }

    pub fn term(coeff: GR, exponent: Poly) -> Self {
        let mut s = Self::zero();
        s.push(coeff, exponent);
        s
    }

    /// `exp(p)`.
    pub fn exp(exponent: Poly) -> Self {
        Self::term(GR::one(), exponent)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ExpPoly>) -> Self {
        let mut s = Self::zero();
        for t in terms {
            s.push(t.coeff, t.exponent);
        }
        s
    }

    fn push(&mut self, coeff: GR, exponent: Poly) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.get(&exponent) {
            Some(c) => c + &coeff,
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&exponent);
        } else {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ExpPoly> + '_ {
        self.terms
            .iter()
            .map(|(p, c)| ExpPoly::new(c.clone(), p.clone()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All exponents are constant polynomials, so the sum is a constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Poly::is_constant)
    }

    pub fn scale(&self, s: &GR) -> ExpSum {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            out.push(c * s, p.clone());
        }
        out
    }

    /// Derivative in `z`, as `(p'(z) * c, p)` pairs.
    pub fn derivative_terms(&self) -> Vec<(Poly, Poly)> {
        self.terms
            .iter()
            .map(|(p, c)| (p.derivative().scale(c), p.clone()))
            .collect()
    }

    pub fn pow(&self, e: u32) -> ExpSum {
        (0..e).fold(ExpSum::constant(GR::one()), |acc, _| &acc * self)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.to_numeric().eval(z)
    }

    pub fn to_numeric(&self) -> NumericExpSum {
        NumericExpSum {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| NumericTerm {
                    coeff: c.to_complex64(),
                    exponent: p.to_numeric(),
                })
                .collect(),
        }
    }

    /// Terms regrouped by the non-constant part of their exponent. Each
    /// group's value is a constant sum `Σ c exp(k)` kept as an `ExpSum`.
    fn classes(&self) -> BTreeMap<Poly, ExpSum> {
        let mut out: BTreeMap<Poly, ExpSum> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry(p.non_constant_part())
                .or_default()
                .push(c.clone(), Poly::constant(p.constant_term()));
        }
        out
    }
}

impl Add for &ExpSum {
    type Output = ExpSum;
    fn add(self, rhs: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.push(c.clone(), p.clone());
        }
        out
    }
}

impl Neg for &ExpSum {
    type Output = ExpSum;
    fn neg(self) -> ExpSum {
        self.scale(&-GR::one())
    }
}

impl Sub for &ExpSum {
    type Output = ExpSum;
    fn sub(self, rhs: &ExpSum) -> ExpSum {
        self + &(-rhs)
    }
}

impl Mul for &ExpSum {
    type Output = ExpSum;
    fn mul(self, rhs: &ExpSum) -> ExpSum {
        let mut out = ExpSum::zero();
        for (p, c) in &self.terms {
            for (q, d) in &rhs.terms {
                out.push(c * d, p + q);
            }
        }
        out
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (p, c) in &self.terms {
            let (neg, mag) = split_sign(c);
            let body = match (p.is_zero(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => format!("exp({p})"),
                (false, false) => format!("{mag}*exp({p})"),
            };
            match (out.is_empty(), neg) {
                (true, false) => out.push_str(&body),
                (true, true) => out.push_str(&format!("-{body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
                (false, true) => out.push_str(&format!(" - {body}")),
            }
        }
        f.write_str(&out)
    }
}

#[derive(Clone, Debug)]
struct NumericTerm {
    coeff: Complex64,
    exponent: Vec<Complex64>,
}

/// Floating-point image of an [`ExpSum`] for fast evaluation.
#[derive(Clone, Debug)]
pub struct NumericExpSum {
    terms: Vec<NumericTerm>,
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn horner_derivative(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| {
            acc * z + c * k as f64
        })
}

impl NumericExpSum {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coeff * horner(&t.exponent, z).exp())
            .sum()
    }

    /// Value and complex derivative at `z`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let e = t.coeff * horner(&t.exponent, z).exp();
            value += e;
            deriv += e * horner_derivative(&t.exponent, z);
        }
        (value, deriv)
    }
}

/// Outcome of an exact "never vanishes" test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

pub fn is_identically_zero(s: &ExpSum) -> bool {
    s.is_empty()
}

/// `Yes` when `s` is `exp(p)` times a nonzero constant, `No` when `s` is the
/// zero function, `Unknown` for genuine multi-class sums such as `1 + exp(z)`.
pub fn is_nowhere_zero(s: &ExpSum) -> Decision {
    if s.is_empty() {
        return Decision::No;
    }
    // One class means s = exp(q) * Σ c_k exp(k_k) with distinct constants k_k.
    if s.classes().len() == 1 {
        Decision::Yes
    } else {
        Decision::Unknown
    }
}

/// For a constant sum `K`, whether `Re(K) = 0`. `None` if `s` is not constant.
///
/// `Re(K) = (K + conj(K)) / 2`, itself a constant sum over the exponents and
/// their conjugates; it is zero iff its grouped coefficients all vanish.
pub fn constant_real_part_is_zero(s: &ExpSum) -> Option<bool> {
    if !s.is_constant() {
        return None;
    }
    let half = GR::from_rational(rat(1, 2));
    let mut doubled = ExpSum::zero();
    for (p, c) in &s.terms {
        doubled.push(c * &half, p.clone());
        doubled.push(&c.conj() * &half, p.conj());
    }
    Some(doubled.is_empty())
}

/// Linear forms that can be applied to a curve.
pub trait FormCoeffs {
    fn form_coeffs(&self) -> &[GR];
}

impl FormCoeffs for ComplexHyperplane {
    fn form_coeffs(&self) -> &[GR] {
        self.coeffs()
    }
}

impl FormCoeffs for ProjHyperplane {
    fn form_coeffs(&self) -> &[GR] {
        self.coeffs()
    }
}

impl FormCoeffs for [GR] {
    fn form_coeffs(&self) -> &[GR] {
        self
    }
}

impl<const N: usize> FormCoeffs for [GR; N] {
    fn form_coeffs(&self) -> &[GR] {
        self
    }
}

impl FormCoeffs for Vec<GR> {
    fn form_coeffs(&self) -> &[GR] {
        self
    }
}

/// An entire curve `z -> (f_1(z), ..., f_m(z))` with [`ExpSum`] components.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpAffineCurve {
    components: Vec<ExpSum>,
}

impl ExpAffineCurve {
    pub fn new(components: Vec<ExpSum>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::TooFew {
                needed: 2,
                got: components.len(),
            });
        }
        if components.iter().all(ExpSum::is_empty) {
            return Err(Error::ZeroCurve);
        }
        Ok(Self { components })
    }

    pub fn from_exp_polys(components: Vec<ExpPoly>) -> Result<Self> {
        Self::new(
            components
                .into_iter()
                .map(|t| ExpSum::term(t.coeff, t.exponent))
                .collect(),
        )
    }

    pub fn components(&self) -> &[ExpSum] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `z -> M f(z)`.
    pub fn transform(&self, m: &ComplexMatrix) -> Result<Self> {
        assert_eq!(m.n_cols(), self.components.len());
        let comps = m.rows().iter().map(|row| apply_form(row, self)).collect();
        Self::new(comps)
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    pub fn to_numeric(&self) -> Vec<NumericExpSum> {
        self.components.iter().map(ExpSum::to_numeric).collect()
    }
}

impl fmt::Display for ExpAffineCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `Σ a_i f_i`, grouped.
pub fn apply_form<F: FormCoeffs + ?Sized>(form: &F, f: &ExpAffineCurve) -> ExpSum {
    let coeffs = form.form_coeffs();
    assert_eq!(
        coeffs.len(),
        f.components.len(),
        "form and curve dimensions differ"
    );
    coeffs
        .iter()
        .zip(&f.components)
        .fold(ExpSum::zero(), |acc, (a, c)| &acc + &c.scale(a))
}

/// Whether `π∘f` is constant.
///
/// Write `f = Σ_q exp(q) w_q` with `q` running over distinct non-constant
/// exponent parts and `w_q` vectors of constant sums. The `exp(q)` are
/// linearly independent, so the projection is constant iff all `w_q` are
/// parallel; parallelism is tested through exact 2x2 minors.
pub fn is_projectively_constant(f: &ExpAffineCurve) -> bool {
    let mut vectors: BTreeMap<Poly, Vec<ExpSum>> = BTreeMap::new();
    let m = f.components.len();
    for (i, comp) in f.components.iter().enumerate() {
        for (q, value) in comp.classes() {
            vectors.entry(q).or_insert_with(|| vec![ExpSum::zero(); m])[i] = value;
        }
    }
    let mut iter = vectors.into_values();
    let Some(base) = iter.next() else {
        return true;
    };
    iter.all(|w| {
        (0..m).all(|i| {
            (i + 1..m).all(|j| {
                let minor = &(&base[i] * &w[j]) - &(&base[j] * &w[i]);
                minor.is_empty()
            })
        })
    })
}

/// `π(f)(z)` in floating point, scaled so the first non-negligible
/// coordinate is one. `None` when `f(z)` is numerically zero.
pub fn projection_at(f: &ExpAffineCurve, z: Complex64) -> Option<Vec<Complex64>> {
    normalize_projective(&f.eval(z))
}

pub fn normalize_projective(v: &[Complex64]) -> Option<Vec<Complex64>> {
    let scale = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale.is_nan() || scale <= 0.0 || !scale.is_finite() {
        return None;
    }
    let lead = v.iter().find(|c| c.norm() > 1e-12 * scale)?;
    let lead = *lead;
    Some(v.iter().map(|c| c / lead).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(a: i64) -> GR {
        GR::from(a)
    }

    fn ez(c: i64, k: i64) -> ExpSum {
        ExpSum::term(gi(c), Poly::z().scale(&gi(k)))
    }

    fn curve(c: Vec<ExpSum>) -> ExpAffineCurve {
        ExpAffineCurve::new(c).unwrap()
    }

    #[test]
    fn apply_form_examples() {
        let f = curve(vec![ez(1, 1), ez(-1, 1), ez(1, 2)]);
        let s = apply_form(&ComplexHyperplane::from_ints([1, 1, 0]), &f);
        assert!(is_identically_zero(&s));

        let f = curve(vec![ez(1, 1), ez(2, 1), ez(3, 1)]);
        let s = apply_form(&ComplexHyperplane::from_ints([1, 1, 1]), &f);
        assert_eq!(s, ez(6, 1));

        let f = curve(vec![
            ez(1, 1),
            ExpSum::constant(gi(1)),
            ExpSum::constant(gi(1)),
        ]);
        let s = apply_form(&ComplexHyperplane::from_ints([1, 0, 0]), &f);
        assert_eq!(s, ez(1, 1));
    }

    #[test]
    fn identically_zero_examples() {
        assert!(is_identically_zero(&(&ez(1, 1) - &ez(1, 1))));
        assert!(!is_identically_zero(&(&ez(1, 1) + &ez(1, 2))));
        let s = &(&(&ez(2, 1) + &ExpSum::constant(gi(3))) - &ez(2, 1)) - &ExpSum::constant(gi(3));
        assert!(is_identically_zero(&s));
    }

    #[test]
    fn nowhere_zero_examples() {
        // (1 + c2 + c3) e^h with c2 = 2, c3 = -1/2.
        let c2 = gi(2);
        let c3 = GR::from_rational(rat(-1, 2));
        let f = curve(vec![
            ez(1, 1),
            ExpSum::exp(Poly::z()).scale(&c2),
            ExpSum::exp(Poly::z()).scale(&c3),
        ]);
        let s = apply_form(&ComplexHyperplane::from_ints([1, 1, 1]), &f);
        assert_eq!(is_nowhere_zero(&s), Decision::Yes);
        assert_eq!(is_nowhere_zero(&(&ez(1, 1) - &ez(1, 1))), Decision::No);
        assert_eq!(
            is_nowhere_zero(&(&ExpSum::constant(gi(1)) + &ez(1, 1))),
            Decision::Unknown
        );
        // e^z + e^(z+1) = (1 + e) e^z: one class.
        let shifted = ExpSum::exp(&Poly::z() + &Poly::constant(gi(1)));
        assert_eq!(is_nowhere_zero(&(&ez(1, 1) + &shifted)), Decision::Yes);
    }

    #[test]
    fn projective_constancy_examples() {
        let h = Poly::z();
        let c2 = GR::from_ints(2, 1);
        let c3 = GR::from_ints(-1, 0);
        let f = curve(vec![
            ExpSum::exp(h.clone()),
            ExpSum::exp(h.clone()).scale(&c2),
            ExpSum::exp(h).scale(&c3),
        ]);
        assert!(is_projectively_constant(&f));
        assert!(!is_projectively_constant(&curve(vec![
            ez(1, 1),
            ez(-1, 1),
            ez(1, 2)
        ])));
        let ones = ExpSum::constant(gi(1));
        assert!(is_projectively_constant(&curve(vec![
            ones.clone(),
            ones.clone(),
            ones
        ])));
        // (e^z + e^2z) (1, 2, 3) has two exponent classes but a constant image.
        let s = &ez(1, 1) + &ez(1, 2);
        assert!(is_projectively_constant(&curve(vec![
            s.scale(&gi(1)),
            s.scale(&gi(2)),
            s.scale(&gi(3))
        ])));
        // (e^z, e^(z+1), 0) is constant projectively: [1 : e : 0].
        let shifted = ExpSum::exp(&Poly::z() + &Poly::constant(gi(1)));
        assert!(is_projectively_constant(&curve(vec![
            ez(1, 1),
            shifted,
            ExpSum::zero()
        ])));
    }

    #[test]
    fn zero_curve_rejected() {
        assert_eq!(
            ExpAffineCurve::new(vec![ExpSum::zero(); 3]),
            Err(Error::ZeroCurve)
        );
    }

    #[test]
    fn constant_real_part() {
        let k = ExpSum::constant(GR::from_ints(0, 3));
        assert_eq!(constant_real_part_is_zero(&k), Some(true));
        assert_eq!(
            constant_real_part_is_zero(&ExpSum::constant(gi(2))),
            Some(false)
        );
        // i * e^i has real part -sin(1) != 0.
        let k = ExpSum::term(GR::i(), Poly::constant(GR::i()));
        assert_eq!(constant_real_part_is_zero(&k), Some(false));
        assert_eq!(constant_real_part_is_zero(&ez(1, 1)), None);
    }

    #[test]
    fn numeric_derivative_matches_finite_difference() {
        let s = &(&ez(2, 1) + &ExpSum::term(GR::from_ints(0, 1), Poly::z().pow(2)))
            - &ExpSum::constant(gi(1));
        let n = s.to_numeric();
        let z = Complex64::new(0.3, -0.7);
        let h = 1e-6;
        let (_, d) = n.eval_with_derivative(z);
        let fd = (n.eval(z + h) - n.eval(z - h)) / (2.0 * h);
        assert!((d - fd).norm() < 1e-6 * (1.0 + d.norm()));
    }

    #[test]
    fn display() {
        let s = &(&ez(2, 1) - &ExpSum::constant(gi(3))) + &ExpSum::exp(Poly::z().pow(2));
        assert_eq!(s.to_string(), "-3 + 2*exp(z) + exp(z^2)");
        let p = &Poly::z().pow(2) + &Poly::z().scale(&GR::from_ints(1, 1));
        assert_eq!(p.to_string(), "z^2 + (1 + i)*z");
    }
}
