//! Parametrized measure families with published membership criteria:
//! compound-Poisson measures in exponentiated-rational coordinates, the
//! flat-spectrum criterion (`theorem1_check`), the three-generator
//! criterion (`theorem2_check`), the full `Z_2^2` classification
//! (`theorem3_check`) with its own brute-force oracle, and the worked
//! example families 1-9.
//!
//! Poisson parameters are taken as `u_i = e^{-2 rho({x_i})}`, so every
//! mass stays an exact rational; the rate parameters themselves are
//! never represented.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::group::{pairing_by_index, walsh_inverse};
use crate::measure::Measure;
use crate::oracle;
use crate::rational::{rat, Rational};

/// Exponentiated spectral masses `u_i = e^{-2 rho({x_i})}` for the seven
/// nonzero elements of `Z_2^3`; each lies in `(0, 1]` (`u_i = 1` means
/// no spectral mass at `x_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpParams {
    u: Vec<Rational>,
}

impl ExpParams {
    pub fn new(u: Vec<Rational>) -> Result<Self, Error> {
        if u.len() != 7 {
            return Err(Error::Precondition(format!(
                "expected 7 spectral parameters, got {}",
                u.len()
            )));
        }
        for v in &u {
            if *v <= Rational::zero() || *v > Rational::one() {
                return Err(Error::ParameterRange {
                    name: "u",
                    value: v.clone(),
                    range: "0 < u <= 1",
                });
            }
        }
        Ok(Self { u })
    }

    /// Spectral parameter at the nonzero element `x_i`, `i = 1..=7`.
    pub fn u(&self, i: usize) -> &Rational {
        &self.u[i - 1]
    }
}

/// Compound-Poisson measure with the given exponentiated spectral
/// masses: its characteristic value at a character `y` is the product
/// of `u_i` over the nonzero elements pairing to `-1` with `y`.
pub fn poisson_measure(params: &ExpParams) -> Result<Measure, Error> {
    let values: Vec<Rational> = (0..8)
        .map(|y| {
            let mut acc = Rational::one();
            for i in 1..8 {
                if pairing_by_index(3, i, y) < 0 {
                    acc *= params.u(i);
                }
            }
            acc
        })
        .collect();
    let masses = walsh_inverse(&values);
    if masses.iter().any(|m| *m < Rational::zero()) {
        return Err(Error::Internal(
            "compound-Poisson reconstruction produced a negative mass".into(),
        ));
    }
    Measure::new(3, masses)
}

/// The measure with flat spectrum `q` at every nontrivial character:
/// masses `(1+7q)/8` at the identity and `(1-q)/8` elsewhere. This is
/// the compound-Poisson measure whose spectral measure is a multiple of
/// the uniform one, with `q = e^{-lambda}`.
pub fn poisson_haar(q: &Rational) -> Result<Measure, Error> {
    if *q <= Rational::zero() || *q > Rational::one() {
        return Err(Error::ParameterRange { name: "q", value: q.clone(), range: "0 < q <= 1" });
    }
    let eighth = rat(1, 8);
    let mut masses = vec![(Rational::one() - q) * &eighth; 8];
    masses[0] = (Rational::one() + rat(7, 1) * q) * &eighth;
    Measure::new(3, masses)
}

/// TEC criterion for the flat-spectrum family: holds exactly when
/// `q > 1/3` (strictly; `q = e^{-lambda}`, so this is `lambda < ln 3`).
pub fn theorem1_check(q: &Rational) -> bool {
    assert!(
        *q > Rational::zero() && *q < Rational::one(),
        "theorem1_check expects q strictly inside (0, 1)"
    );
    *q > rat(1, 3)
}

fn theorem2_system(p: &Rational, q: &Rational, r: &Rational) -> bool {
    let one = Rational::one();
    p + q + p * q > one
        && q + r + q * r > one
        && p - q + r + p * q + q * r - r * p + p * q * r > one
}

/// TEC criterion for compound-Poisson measures whose spectral measure
/// sits on the three generators `x_1, x_2, x_3` with exponentiated
/// masses `p, q, r`: one of the three cyclic rotations of the
/// polynomial system must hold.
pub fn theorem2_check(p: &Rational, q: &Rational, r: &Rational) -> bool {
    for v in [p, q, r] {
        assert!(
            *v > Rational::zero() && *v < Rational::one(),
            "theorem2_check expects parameters strictly inside (0, 1)"
        );
    }
    theorem2_system(p, q, r) || theorem2_system(q, r, p) || theorem2_system(r, p, q)
}

/// A probability measure on `Z_2^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2SquareMeasure(Measure);

impl Z2SquareMeasure {
    pub fn new(masses: Vec<Rational>) -> Result<Self, Error> {
        Ok(Self(Measure::new(2, masses)?))
    }

    pub fn from_numerators(numerators: &[u64], denominator: u64) -> Result<Self, Error> {
        Ok(Self(Measure::from_numerators(2, numerators, denominator)?))
    }

    pub fn as_measure(&self) -> &Measure {
        &self.0
    }
}

/// Full TEC classification on `Z_2^2`: support of size at most 2;
/// support of size 3 with `a_max >= 1/2`; or full support with either
/// `a_max > 1/2` or `a_max < 1/2` and two masses summing to the other
/// two. Full support with `a_max = 1/2` exactly is excluded.
pub fn theorem3_check(mu: &Z2SquareMeasure) -> bool {
    let m = mu.0.masses();
    let support = mu.0.support().len();
    let a_max = mu.0.a_max();
    let half = rat(1, 2);
    match support {
        0..=2 => true,
        3 => *a_max >= half,
        4 => {
            *a_max > half
                || (*a_max < half
                    && (&m[0] + &m[1] == &m[2] + &m[3]
                        || &m[0] + &m[2] == &m[1] + &m[3]
                        || &m[0] + &m[3] == &m[1] + &m[2]))
        }
        _ => unreachable!("Z_2^2 has four elements"),
    }
}

/// Brute-force TEC verdict on `Z_2^2` (8 sign patterns).
pub fn is_tec_bruteforce_z22(mu: &Z2SquareMeasure) -> bool {
    oracle::is_tec_bruteforce(&mu.0).tec
}

/// Valid parameter range of one example family, endpoints exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsRange {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
    /// A single excluded interior point, if any.
    pub excluded: Option<Rational>,
    pub description: &'static str,
}

impl EpsRange {
    pub fn contains(&self, eps: &Rational) -> bool {
        let above = if self.lo_closed { *eps >= self.lo } else { *eps > self.lo };
        let below = if self.hi_closed { *eps <= self.hi } else { *eps < self.hi };
        above && below && self.excluded.as_ref() != Some(eps)
    }
}

/// Parameter range of example family `n`, `n = 1..=9`.
pub fn example_range(n: usize) -> EpsRange {
    let closed = |lo: Rational, hi: Rational, description| EpsRange {
        lo,
        lo_closed: true,
        hi,
        hi_closed: true,
        excluded: None,
        description,
    };
    let open = |lo: Rational, hi: Rational, description| EpsRange {
        lo,
        lo_closed: false,
        hi,
        hi_closed: false,
        excluded: None,
        description,
    };
    match n {
        1 => closed(rat(0, 1), rat(1, 32), "0 <= eps <= 1/32"),
        2 => open(rat(0, 1), rat(1, 8), "0 < eps < 1/8"),
        3 => open(rat(0, 1), rat(1, 28), "0 < eps < 1/28"),
        4 => EpsRange {
            lo: rat(0, 1),
            lo_closed: false,
            hi: rat(1, 6),
            hi_closed: true,
            excluded: None,
            description: "0 < eps <= 1/6",
        },
        5 => closed(rat(0, 1), rat(1, 24), "0 <= eps <= 1/24"),
        6 => open(rat(1, 16), rat(1, 8), "1/16 < eps < 1/8"),
        7 => open(rat(0, 1), rat(3, 16), "0 < eps < 3/16"),
        8 => EpsRange {
            lo: rat(0, 1),
            lo_closed: false,
            hi: rat(1, 20),
            hi_closed: true,
            excluded: None,
            description: "0 < eps <= 1/20",
        },
        9 => EpsRange {
            lo: rat(0, 1),
            lo_closed: true,
            hi: rat(1, 4),
            hi_closed: true,
            excluded: Some(rat(1, 8)),
            description: "0 <= eps <= 1/4 with eps != 1/8",
        },
        _ => panic!("example index {n} out of range 1..=9"),
    }
}

/// The worked example families. Families 1-7 are TEC throughout their
/// parameter ranges (one per condition branch); families 8 and 9 are
/// not TEC anywhere in theirs. Family 4 is the `a_max > 5/6` regime,
/// realized as `a_0 = 5/6 + eps` with the remainder spread evenly.
pub fn example_measure(n: usize, eps: &Rational) -> Result<Measure, Error> {
    let range = example_range(n);
    if !range.contains(eps) {
        return Err(Error::ParameterRange {
            name: "eps",
            value: eps.clone(),
            range: range.description,
        });
    }
    let masses: Vec<Rational> = match n {
        1 => {
            let b = rat(1, 8);
            [4i64, -4, -3, -2, 3, 2, 1, -1]
                .iter()
                .map(|&c| &b + rat(c, 1) * eps)
                .collect()
        }
        2 => {
            let q = rat(1, 4);
            vec![
                &q - eps,
                eps.clone(),
                rat(2, 1) * eps,
                &q - eps,
                &q - rat(2, 1) * eps,
                eps.clone(),
                rat(2, 1) * eps,
                &q - rat(2, 1) * eps,
            ]
        }
        3 => {
            let q = rat(1, 4);
            vec![
                &q - eps,
                eps.clone(),
                rat(2, 1) * eps,
                rat(2, 1) * eps,
                &q - rat(2, 1) * eps,
                &q - rat(2, 1) * eps,
                rat(2, 1) * eps,
                &q - rat(2, 1) * eps,
            ]
        }
        4 => {
            let tail = (rat(1, 6) - eps) / rat(7, 1);
            let mut m = vec![tail; 8];
            m[0] = rat(5, 6) + eps;
            m
        }
        5 => vec![
            rat(8, 24) + rat(3, 1) * eps,
            rat(7, 24) + rat(3, 1) * eps,
            rat(2, 24) - eps,
            rat(2, 24) - eps,
            rat(1, 24) - eps,
            rat(1, 24) - eps,
            rat(2, 24) - eps,
            rat(1, 24) - eps,
        ],
        6 => vec![
            rat(1, 4) + eps,
            rat(1, 8) - eps,
            rat(1, 8) + eps,
            rat(1, 8) + eps,
            rat(1, 8) - eps,
            rat(1, 8) - eps,
            eps.clone(),
            rat(1, 8) - eps,
        ],
        7 => {
            let third = eps / rat(3, 1);
            vec![
                rat(1, 2) - eps,
                rat(1, 8),
                third.clone(),
                third.clone(),
                rat(1, 8),
                rat(1, 8),
                third,
                rat(1, 8),
            ]
        }
        8 => {
            let tail = (rat(3, 4) - eps) / rat(7, 1);
            let mut m = vec![tail; 8];
            m[0] = rat(1, 4) + eps;
            m
        }
        9 => {
            let tail = (rat(3, 4) + eps) / rat(7, 1);
            let mut m = vec![tail; 8];
            m[0] = rat(1, 4) - eps;
            m
        }
        _ => unreachable!("range lookup already validated n"),
    };
    Measure::new(3, masses)
}
