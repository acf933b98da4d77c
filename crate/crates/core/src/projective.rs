//! Points, hyperplanes and general position in complex projective space.
//!
//! Both points and hyperplanes are stored by homogeneous coordinate vectors
//! scaled so the first nonzero coordinate is one, which makes derived
//! equality coincide with equality of projective classes.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, normalize_leading, ComplexMatrix, Matrix};
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    coords: Vec<GaussianRational>,
}

impl ProjPoint {
    pub fn new(coords: Vec<GaussianRational>) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            coords: normalize_leading(coords),
        })
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    /// Dimension `n` of the ambient `CP^n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coords.iter().join(":"))
    }
}

/// A hyperplane of `CP^n`, given by its linear form up to scale.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjHyperplane {
    coeffs: Vec<GaussianRational>,
}

/// Hyperplanes of `CP^2` are lines.
pub type ProjLine = ProjHyperplane;

impl ProjHyperplane {
    pub fn new(coeffs: Vec<GaussianRational>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(Self {
            coeffs: normalize_leading(coeffs),
        })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        assert_eq!(p.coords.len(), self.coeffs.len());
        dot(&self.coeffs, &p.coords).is_zero()
    }
}

impl fmt::Display for ProjHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.coeffs.len()).map(|i| format!("z{i}")).collect();
        let vars: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", fmt_linear_form(&self.coeffs, &vars))
    }
}

/// A complex hyperplane through the origin of `C^3`: `a1 z1 + a2 z2 + a3 z3 = 0`.
///
/// Coefficients are kept exactly as given; use [`ComplexHyperplane::same_as`]
/// for equality of the underlying sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ComplexHyperplane {
    coeffs: [GaussianRational; 3],
}

impl ComplexHyperplane {
    pub fn new(coeffs: [GaussianRational; 3]) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(a: [i64; 3]) -> Self {
        Self::new(a.map(GaussianRational::from)).expect("nonzero form")
    }

    pub fn from_slice(c: &[GaussianRational]) -> Result<Self> {
        let arr: [GaussianRational; 3] =
            c.to_vec()
                .try_into()
                .map_err(|v: Vec<_>| Error::DimensionMismatch {
                    expected: 3,
                    found: v.len(),
                })?;
        Self::new(arr)
    }

    /// `z1 = 0`, `z2 = 0`, `z3 = 0`, `z1 + z2 + z3 = 0`.
    pub fn standard_four() -> [Self; 4] {
        [
            Self::from_ints([1, 0, 0]),
            Self::from_ints([0, 1, 0]),
            Self::from_ints([0, 0, 1]),
            Self::from_ints([1, 1, 1]),
        ]
    }

    pub fn coeffs(&self) -> &[GaussianRational; 3] {
        &self.coeffs
    }

    pub fn eval(&self, z: &[GaussianRational]) -> GaussianRational {
        dot(&self.coeffs, z)
    }

    pub fn contains(&self, z: &[GaussianRational]) -> bool {
        self.eval(z).is_zero()
    }

    /// Equality of the hyperplanes as sets (coefficients up to scale).
    pub fn same_as(&self, other: &Self) -> bool {
        project_hyperplane(self) == project_hyperplane(other)
    }
}

impl fmt::Display for ComplexHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_linear_form(&self.coeffs, &["z1", "z2", "z3"]))
    }
}

/// Prints `Σ c_i v_i` with signs pulled out where that reads back unambiguously.
pub fn fmt_linear_form(coeffs: &[GaussianRational], vars: &[&str]) -> String {
    let mut out = String::new();
    for (c, v) in coeffs.iter().zip(vars) {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = split_sign(c);
        let body = if mag.is_one() {
            v.to_string()
        } else {
            format!("{mag}*{v}")
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
    out
}

/// Splits off a leading minus sign for real or purely imaginary values.
pub(crate) fn split_sign(c: &GaussianRational) -> (bool, GaussianRational) {
    use num_traits::Signed;
    let neg = if c.im.is_zero() {
        c.re.is_negative()
    } else if c.re.is_zero() {
        c.im.is_negative()
    } else {
        false
    };
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

/// Canonical projective class of a nonzero vector of `C^{n+1}`.
pub fn project_point(v: &[GaussianRational]) -> Result<ProjPoint> {
    ProjPoint::new(v.to_vec())
}

/// The image of `H \ {0}` in `CP^2`: the line with the same coefficients.
pub fn project_hyperplane(h: &ComplexHyperplane) -> ProjLine {
    ProjHyperplane::new(h.coeffs.to_vec()).expect("hyperplane form is nonzero")
}

/// Common point of two distinct lines of `CP^2`.
pub fn intersect_lines(a: &ProjLine, b: &ProjLine) -> Result<ProjPoint> {
    let m = ComplexMatrix::from_rows(vec![a.coeffs.clone(), b.coeffs.clone()]);
    let mut kernel = m.kernel();
    if kernel.len() != 1 {
        return Err(Error::IdenticalLines);
    }
    ProjPoint::new(kernel.pop().expect("one kernel vector"))
}

/// The unique line through two distinct points of `CP^2`.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    let m = ComplexMatrix::from_rows(vec![p.coords.clone(), q.coords.clone()]);
    let mut kernel = m.kernel();
    if kernel.len() != 1 {
        return Err(Error::NotApplicable("points coincide".into()));
    }
    ProjHyperplane::new(kernel.pop().expect("one kernel vector"))
}

/// First `(n+1)`-subset of hyperplanes of `CP^n` whose forms are dependent.
pub fn general_position_violation(hs: &[ProjHyperplane]) -> Result<Option<Vec<usize>>> {
    let Some(first) = hs.first() else {
        return Err(Error::TooFew { needed: 1, got: 0 });
    };
    let width = first.coeffs.len();
    if let Some(bad) = hs.iter().find(|h| h.coeffs.len() != width) {
        return Err(Error::DimensionMismatch {
            expected: width,
            found: bad.coeffs.len(),
        });
    }
    if hs.len() < width {
        return Err(Error::TooFew {
            needed: width,
            got: hs.len(),
        });
    }
    for subset in (0..hs.len()).combinations(width) {
        let m = Matrix::from_rows(subset.iter().map(|&i| hs[i].coeffs.clone()).collect());
        if m.rank() < width {
            return Ok(Some(subset));
        }
    }
    Ok(None)
}

/// Any `n+1` of the hyperplanes are linearly independent.
pub fn hyperplanes_in_general_position(hs: &[ProjHyperplane]) -> Result<bool> {
    Ok(general_position_violation(hs)?.is_none())
}

/// No point of `CP^2` lies on three of the lines.
pub fn lines_in_general_position(ls: &[ProjLine]) -> Result<bool> {
    if ls.len() < 3 {
        return Err(Error::TooFew {
            needed: 3,
            got: ls.len(),
        });
    }
    if let Some(bad) = ls.iter().find(|l| l.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: bad.coeffs.len(),
        });
    }
    hyperplanes_in_general_position(ls)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[i64]) -> Vec<GaussianRational> {
        v.iter().map(|&x| GaussianRational::from(x)).collect()
    }

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::new(g(v)).unwrap()
    }

    fn line(v: &[i64]) -> ProjLine {
        ProjHyperplane::from_ints(v).unwrap()
    }

    #[test]
    fn project_point_examples() {
        assert_eq!(project_point(&g(&[2, 4, 6])).unwrap(), pt(&[1, 2, 3]));
        assert_eq!(
            project_point(&g(&[0, 5, -5])).unwrap().coords(),
            &g(&[0, 1, -1])[..]
        );
        assert_eq!(project_point(&g(&[0, 0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn project_hyperplane_examples() {
        let l = project_hyperplane(&ComplexHyperplane::from_ints([1, 0, 0]));
        assert_eq!(l, line(&[1, 0, 0]));
        assert!(l.contains(&pt(&[0, 1, 7])));
        assert!(l.contains(&pt(&[0, 0, 1])));

        let l = project_hyperplane(&ComplexHyperplane::from_ints([1, 1, 1]));
        assert_eq!(l.coeffs(), &g(&[1, 1, 1])[..]);

        // a3 != 0: the extra point [0 : 1 : -a2/a3] lies on the line.
        let a = [
            GaussianRational::from_ints(2, -1),
            GaussianRational::from_ints(3, 0),
            GaussianRational::from_ints(0, 5),
        ];
        let h = ComplexHyperplane::new(a.clone()).unwrap();
        let extra = ProjPoint::new(vec![
            GaussianRational::from(0),
            GaussianRational::from(1),
            -(&a[1] / &a[2]),
        ])
        .unwrap();
        assert!(project_hyperplane(&h).contains(&extra));
    }

    #[test]
    fn intersect_lines_examples() {
        assert_eq!(
            intersect_lines(&line(&[1, 0, 0]), &line(&[0, 1, 0])).unwrap(),
            pt(&[0, 0, 1])
        );
        assert_eq!(
            intersect_lines(&line(&[1, 0, 0]), &line(&[0, 0, 1])).unwrap(),
            pt(&[0, 1, 0])
        );
        assert_eq!(
            intersect_lines(&line(&[1, 1, 0]), &line(&[0, 0, 1])).unwrap(),
            pt(&[1, -1, 0])
        );
        assert_eq!(
            intersect_lines(&line(&[1, 2, 3]), &line(&[2, 4, 6])),
            Err(Error::IdenticalLines)
        );
    }

    #[test]
    fn general_position_examples() {
        let std: Vec<_> = ComplexHyperplane::standard_four()
            .iter()
            .map(project_hyperplane)
            .collect();
        assert!(lines_in_general_position(&std).unwrap());
        assert!(!lines_in_general_position(&[
            line(&[1, 0, 0]),
            line(&[0, 1, 0]),
            line(&[1, 1, 0])
        ])
        .unwrap());
        assert!(
            lines_in_general_position(&[line(&[1, 0, 0]), line(&[0, 1, 0]), line(&[0, 0, 1])])
                .unwrap()
        );
        assert!(matches!(
            lines_in_general_position(&[line(&[1, 0, 0]), line(&[0, 1, 0])]),
            Err(Error::TooFew { .. })
        ));
    }

    #[test]
    fn duality_round_trip() {
        let p = pt(&[1, 2, 0]);
        let q = pt(&[0, 1, 1]);
        let l = line_through(&p, &q).unwrap();
        assert!(l.contains(&p) && l.contains(&q));
        let m = line(&[1, 0, 0]);
        let x = intersect_lines(&l, &m).unwrap();
        assert!(l.contains(&x) && m.contains(&x));
    }

    #[test]
    fn display_reads_like_a_form() {
        let h = ComplexHyperplane::new([
            GaussianRational::from(0),
            GaussianRational::new(crate::scalar::rat(1, 2), crate::scalar::int(-3)),
            GaussianRational::from(-1),
        ])
        .unwrap();
        assert_eq!(h.to_string(), "(1/2 - 3i)*z2 - z3");
    }
}
