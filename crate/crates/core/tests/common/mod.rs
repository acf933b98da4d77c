//! Random exact inputs and independent oracles shared by the integration tests.
#![allow(dead_code)]

use holoavoid::projective::ComplexHyperplane;
use holoavoid::scalar::{rat, GaussianRational as GR, Rational};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 9`, `1 <= q <= 5`.
pub fn rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-9..=9), r.gen_range(1..=5))
}

pub fn nonzero_rational(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let x = rational(r);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn gaussian(r: &mut ChaCha8Rng) -> GR {
    GR::new(rational(r), rational(r))
}

pub fn small_gaussian_int(r: &mut ChaCha8Rng) -> GR {
    GR::from_ints(r.gen_range(-3..=3), r.gen_range(-3..=3))
}

pub fn nonzero_gaussian(r: &mut ChaCha8Rng) -> GR {
    loop {
        let x = gaussian(r);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Complex 3x3 determinant by cofactor expansion.
pub fn det3(m: [&[GR]; 3]) -> GR {
    let minor = |a: &GR, b: &GR, c: &GR, d: &GR| &(a * d) - &(b * c);
    let t0 = &m[0][0] * &minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]);
    let t1 = &m[0][1] * &minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2]);
    let t2 = &m[0][2] * &minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1]);
    &(&t0 - &t1) + &t2
}

/// Cross product: the form vanishing on two points, or the point on two lines.
pub fn cross(a: &[GR], b: &[GR]) -> [GR; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Whether two coefficient vectors are proportional.
pub fn proportional(a: &[GR], b: &[GR]) -> bool {
    cross(a, b).iter().all(Zero::is_zero)
}

/// Four hyperplanes with small Gaussian-integer coefficients, any three
/// independent (checked with `det3`).
pub fn random_gp_four(r: &mut ChaCha8Rng) -> Vec<ComplexHyperplane> {
    loop {
        let rows: Vec<[GR; 3]> = (0..4)
            .map(|_| {
                [
                    small_gaussian_int(r),
                    small_gaussian_int(r),
                    small_gaussian_int(r),
                ]
            })
            .collect();
        let ok = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .iter()
            .all(|t| !det3([&rows[t[0]], &rows[t[1]], &rows[t[2]]]).is_zero());
        if ok {
            return rows
                .into_iter()
                .map(|c| ComplexHyperplane::new(c).unwrap())
                .collect();
        }
    }
}

/// The three diagonal lines of four hyperplanes of `CP^2`, by cross products.
pub fn diagonal_lines(hs: &[ComplexHyperplane]) -> Vec<[GR; 3]> {
    let c = |i: usize| hs[i].coeffs().as_slice();
    [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]]
        .iter()
        .map(|&[a, b, x, y]| cross(&cross(c(a), c(b)), &cross(c(x), c(y))))
        .collect()
}
