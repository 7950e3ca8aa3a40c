//! Exact unimodular phase grids.
//!
//! Roots of unity are not Gaussian rationals, so a grid of resolution `N`
//! consists of `2N` Pythagorean points `(1 − q² + 2qi)/(1 + q²)` placed near
//! the angles `πk/N`. Every adjacent pair is separated by roughly `π/N`, which
//! leaves room to certify the `sec(π/N)` sandwich with a rational factor.
//! Grids of resolution `N` and `2N` are nested.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rational_sqrt_enclosure, rat_int, Rational, Scalar};

const Q_BITS: u32 = 20;
const SQRT_BITS: u32 = 40;

/// Phase set over which absolutely convex hulls are discretized.
#[derive(Clone, Debug)]
pub enum PhaseSet {
    /// `{+1, −1}`.
    Real,
    Grid(PhaseGrid),
}

impl PhaseSet {
    pub fn phases(&self) -> Vec<Scalar> {
        match self {
            PhaseSet::Real => vec![Scalar::one(), Scalar::from_int(-1)],
            PhaseSet::Grid(g) => g.points().to_vec(),
        }
    }

    /// Certified factor `c` with `min over phases ≤ true / c`; 1 for real phases.
    pub fn factor(&self) -> Rational {
        match self {
            PhaseSet::Real => Rational::one(),
            PhaseSet::Grid(g) => g.factor().clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PhaseGrid {
    resolution: usize,
    points: Vec<Scalar>,
    factor: Rational,
}

fn pythagorean(q: &Rational) -> Scalar {
    let one = Rational::one();
    let d = &one + q * q;
    Scalar::new((&one - q * q) / &d, (q + q) / d)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Grid point near angle `π·k/n` for `0 ≤ k < n/2`, depending only on the reduced fraction.
fn first_quadrant_point(k: usize, n: usize) -> Scalar {
    if k == 0 {
        return Scalar::one();
    }
    let g = gcd(k, n);
    let (a, b) = (k / g, n / g);
    let t = (std::f64::consts::PI * a as f64 / b as f64 / 2.0).tan();
    let scaled = (t * f64::from(1u32 << Q_BITS)).round() as i64;
    let q = Rational::new(BigInt::from(scaled), BigInt::from(1i64 << Q_BITS));
    pythagorean(&q)
}

impl PhaseGrid {
    /// Grid of resolution `n` (a power of two, at least 2) with `2n` points.
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution < 2 || !resolution.is_power_of_two() {
            return Err(Error::BadParam(format!("phase grid resolution {resolution} must be a power of two ≥ 2")));
        }
        let quarter: Vec<Scalar> = (0..resolution / 2).map(|k| first_quadrant_point(k, resolution)).collect();
        let mut points = Vec::with_capacity(2 * resolution);
        let mut rot = Scalar::one();
        for _ in 0..4 {
            points.extend(quarter.iter().map(|z| z * &rot));
            rot = &rot * &Scalar::i();
        }
        let factor = certified_factor(&points);
        Ok(PhaseGrid { resolution, points, factor })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    /// Rational lower bound on `cos(half the largest adjacent gap)`.
    pub fn factor(&self) -> &Rational {
        &self.factor
    }
}

/// `min over adjacent pairs of sqrt((1 + Re(u·v̄))/2)`, rounded down.
fn certified_factor(points: &[Scalar]) -> Rational {
    let two = rat_int(2);
    let mut best: Option<Rational> = None;
    for (i, u) in points.iter().enumerate() {
        let v = &points[(i + 1) % points.len()];
        let c = (Rational::one() + (u * &v.conj()).re()) / &two;
        let lo = rational_sqrt_enclosure(&c, SQRT_BITS).lo().clone();
        if best.as_ref().map_or(true, |b| lo < *b) {
            best = Some(lo);
        }
    }
    best.unwrap_or_else(Rational::zero)
}

/// Rational upper bound on `cos(π/n)` for `n` a power of two.
pub fn cos_pi_over_upper(n: usize) -> Rational {
    assert!(n >= 2 && n.is_power_of_two());
    let mut c = Rational::zero();
    let mut k = 2;
    while k < n {
        let arg = (Rational::one() + &c) / rat_int(2);
        c = rational_sqrt_enclosure(&arg, 60).hi().clone();
        k *= 2;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points_are_unimodular_and_nested() {
        let g8 = PhaseGrid::new(8).unwrap();
        let g16 = PhaseGrid::new(16).unwrap();
        assert_eq!(g8.points().len(), 16);
        assert!(g8.points().iter().all(Scalar::is_unimodular));
        for z in g8.points() {
            assert!(g16.points().contains(z));
        }
        for z in [Scalar::one(), Scalar::i(), Scalar::from_int(-1), -Scalar::i()] {
            assert!(g8.points().contains(&z));
        }
    }

    #[test]
    fn factor_beats_secant_bound() {
        for n in [2usize, 4, 8, 64, 256] {
            let g = PhaseGrid::new(n).unwrap();
            assert!(g.factor() >= &cos_pi_over_upper(n), "n = {n}");
        }
    }

    #[test]
    fn rejects_non_powers() {
        assert!(PhaseGrid::new(12).is_err());
        assert!(PhaseGrid::new(1).is_err());
    }
}
