//! Diagonal lines of `2n` hyperplanes in general position in `CP^n`.
//!
//! A balanced partition `I | J` of the hyperplanes gives two points,
//! `p = ∩_{i∈I} H_i` and `q = ∩_{j∈J} H_j`; the diagonal is the line through
//! them. There are `C(2n, n) / 2` of them.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::curve::{apply_form, is_identically_zero, ExpAffineCurve};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::projective::{general_position_violation, ProjHyperplane, ProjPoint};

/// Balanced split of `{0, .., 2n-1}` with `0 ∈ I`. Indices are 0-based;
/// the printed label is 1-based, e.g. `12|34`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Partition {
    i: Vec<usize>,
    j: Vec<usize>,
}

impl Partition {
    pub fn new(mut i: Vec<usize>, n: usize) -> Result<Self> {
        i.sort_unstable();
        i.dedup();
        if i.len() != n || i.iter().any(|&x| x >= 2 * n) {
            return Err(Error::NotApplicable(format!(
                "{i:?} is not an {n}-subset of 0..{}",
                2 * n
            )));
        }
        let j: Vec<usize> = (0..2 * n).filter(|x| !i.contains(x)).collect();
        Ok(if i[0] == 0 {
            Self { i, j }
        } else {
            Self { i: j, j: i }
        })
    }

    pub fn i(&self) -> &[usize] {
        &self.i
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn n(&self) -> usize {
        self.i.len()
    }

    pub fn label(&self) -> String {
        let sep = if self.n() * 2 > 9 { "," } else { "" };
        let side = |s: &[usize]| s.iter().map(|x| (x + 1).to_string()).join(sep);
        format!("{}|{}", side(&self.i), side(&self.j))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The `C(2n, n) / 2` canonical partitions, in lexicographic order of `I`.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    assert!(n >= 1, "n must be at least 1");
    (1..2 * n)
        .combinations(n - 1)
        .map(|rest| {
            let mut i = vec![0];
            i.extend(rest);
            Partition::new(i, n).expect("valid subset")
        })
        .collect()
}

/// The unique point on `n` independent hyperplanes of `CP^n`.
pub fn intersection_point(hs: &[&ProjHyperplane]) -> Result<ProjPoint> {
    let m = ComplexMatrix::from_rows(hs.iter().map(|h| h.coeffs().to_vec()).collect());
    let mut kernel = m.kernel();
    if kernel.len() != 1 {
        return Err(Error::NotIndependent);
    }
    ProjPoint::new(kernel.pop().expect("one kernel vector"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalLine {
    pub partition: Partition,
    pub p: ProjPoint,
    pub q: ProjPoint,
    /// Forms cutting out the line: `n - 1` of them, none when `n = 1`.
    pub equations: Vec<ProjHyperplane>,
}

impl DiagonalLine {
    fn through(partition: Partition, p: ProjPoint, q: ProjPoint) -> Result<Self> {
        let m = ComplexMatrix::from_rows(vec![p.coords().to_vec(), q.coords().to_vec()]);
        if m.rank() != 2 {
            return Err(Error::NotApplicable(format!(
                "points of diagonal {partition} coincide"
            )));
        }
        let equations = m
            .kernel()
            .into_iter()
            .map(ProjHyperplane::new)
            .collect::<Result<_>>()?;
        Ok(Self {
            partition,
            p,
            q,
            equations,
        })
    }

    /// The single defining form when the ambient space is `CP^2`.
    pub fn form(&self) -> Option<&ProjHyperplane> {
        match self.equations.as_slice() {
            [only] if self.p.dim() == 2 => Some(only),
            _ => None,
        }
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.equations.iter().all(|e| e.contains(x))
    }

    /// Exact test that the image of `π∘f` lies on this line.
    pub fn contains_curve(&self, f: &ExpAffineCurve) -> bool {
        self.equations
            .iter()
            .all(|e| is_identically_zero(&apply_form(e, f)))
    }
}

impl fmt::Display for DiagonalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs = self.equations.iter().map(|e| format!("{e} = 0")).join("; ");
        write!(
            f,
            "{}: {} through {} and {}",
            self.partition, eqs, self.p, self.q
        )
    }
}

/// Serializable summary of a diagonal.
#[derive(Clone, Debug, Serialize)]
pub struct DiagonalSummary {
    pub partition: String,
    pub p: String,
    pub q: String,
    pub equations: Vec<String>,
}

impl From<&DiagonalLine> for DiagonalSummary {
    fn from(d: &DiagonalLine) -> Self {
        Self {
            partition: d.partition.label(),
            p: d.p.to_string(),
            q: d.q.to_string(),
            equations: d.equations.iter().map(|e| format!("{e} = 0")).collect(),
        }
    }
}

/// One diagonal per canonical partition of `2n` hyperplanes of `CP^n` in
/// general position.
pub fn enumerate_diagonals(hs: &[ProjHyperplane]) -> Result<Vec<DiagonalLine>> {
    let Some(first) = hs.first() else {
        return Err(Error::TooFew { needed: 2, got: 0 });
    };
    let n = first.dim();
    if n == 0 || hs.len() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n.max(1),
            found: hs.len(),
        });
    }
    if let Some(subset) = general_position_violation(hs)? {
        return Err(Error::NotInGeneralPosition { subset });
    }
    enumerate_partitions(n)
        .into_iter()
        .map(|part| {
            let pick = |idx: &[usize]| idx.iter().map(|&k| &hs[k]).collect::<Vec<_>>();
            let p = intersection_point(&pick(part.i()))?;
            let q = intersection_point(&pick(part.j()))?;
            DiagonalLine::through(part, p, q)
        })
        .collect()
}

/// Indices of the diagonals containing `π∘f`.
pub fn diagonals_containing(diags: &[DiagonalLine], f: &ExpAffineCurve) -> Vec<usize> {
    (0..diags.len())
        .filter(|&k| diags[k].contains_curve(f))
        .collect()
}
