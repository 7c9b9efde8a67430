//! Per-direction invariants of the automorphism family: naive height and
//! entropy, the stable/unstable signature at the three places, the cone
//! classification, periodic-point counts by the adelic product formula,
//! and exact zeta-function series.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Place, Rational};

/// Stability of one tangent direction under a fixed automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Unstable,
    Stable,
    Neutral,
}

/// The six open cones of the direction plane, plus the two lattice lines
/// and the origin. The third non-expansive line, `2^x 3^y = 1`, carries
/// no lattice points and so never appears as a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cone {
    #[serde(rename = "a>0,b>0")]
    PosPos,
    #[serde(rename = "a<0,b>0,2^a3^b>1")]
    NegPosExpanding,
    #[serde(rename = "a>0,b<0,2^a3^b>1")]
    PosNegExpanding,
    #[serde(rename = "a<0,b<0")]
    NegNeg,
    #[serde(rename = "a>0,b<0,2^a3^b<1")]
    PosNegContracting,
    #[serde(rename = "a<0,b>0,2^a3^b<1")]
    NegPosContracting,
    #[serde(rename = "line_a0")]
    LineA0,
    #[serde(rename = "line_b0")]
    LineB0,
    #[serde(rename = "origin")]
    Origin,
}

impl Cone {
    /// The inequality string identifying the region.
    pub fn label(self) -> &'static str {
        match self {
            Cone::PosPos => "a>0,b>0",
            Cone::NegPosExpanding => "a<0,b>0,2^a3^b>1",
            Cone::PosNegExpanding => "a>0,b<0,2^a3^b>1",
            Cone::NegNeg => "a<0,b<0",
            Cone::PosNegContracting => "a>0,b<0,2^a3^b<1",
            Cone::NegPosContracting => "a<0,b>0,2^a3^b<1",
            Cone::LineA0 => "line_a0",
            Cone::LineB0 => "line_b0",
            Cone::Origin => "origin",
        }
    }

    pub fn is_expansive(self) -> bool {
        matches!(
            self,
            Cone::PosPos
                | Cone::NegPosExpanding
                | Cone::PosNegExpanding
                | Cone::NegNeg
                | Cone::PosNegContracting
                | Cone::NegPosContracting
        )
    }
}

/// Exact Lyapunov data: at each place the exponent is
/// `c2 * log 2 + c3 * log 3`, stored as the integer pair `(c2, c3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LyapunovTriple {
    pub real: (i64, i64),
    pub two_adic: (i64, i64),
    pub three_adic: (i64, i64),
}

/// Stability signature at the three places.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub real: Stability,
    pub two_adic: Stability,
    pub three_adic: Stability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionClass {
    pub a: i64,
    pub b: i64,
    pub signature: Signature,
    pub cone: Cone,
    pub expansive: bool,
    pub lyapunov: LyapunovTriple,
}

/// 2^a 3^b in lowest terms as (numerator, denominator).
fn lowest_terms(a: i64, b: i64) -> (BigUint, BigUint) {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let two = BigUint::from(2u32).pow(a.unsigned_abs() as u32);
    let three = BigUint::from(3u32).pow(b.unsigned_abs() as u32);
    if a >= 0 {
        num *= &two;
    } else {
        den *= &two;
    }
    if b >= 0 {
        num *= &three;
    } else {
        den *= &three;
    }
    (num, den)
}

/// The naive height of 2^a 3^b: the larger of numerator and denominator
/// in lowest terms. Equals the number of atoms of the interval partition.
pub fn height(a: i64, b: i64) -> Result<BigUint> {
    if (a, b) == (0, 0) {
        return Err(Error::ZeroDirection);
    }
    let (num, den) = lowest_terms(a, b);
    Ok(num.max(den))
}

/// Topological entropy in the exact form `log H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entropy {
    /// The height; the entropy is its logarithm.
    pub base: u64,
}

impl std::fmt::Display for Entropy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "log {}", self.base)
    }
}

pub fn entropy(a: i64, b: i64) -> Result<Entropy> {
    let h = height(a, b)?;
    let base = u64::try_from(&h).map_err(|_| Error::JsonNumberOverflow)?;
    Ok(Entropy { base })
}

fn sign_stability(exponent_sign: std::cmp::Ordering) -> Stability {
    match exponent_sign {
        std::cmp::Ordering::Greater => Stability::Unstable,
        std::cmp::Ordering::Less => Stability::Stable,
        std::cmp::Ordering::Equal => Stability::Neutral,
    }
}

/// Classify a lattice direction: stability signature from the exact signs
/// of the Lyapunov exponents (the real sign is the integer comparison of
/// numerator against denominator of 2^a 3^b, never a logarithm), cone
/// membership, and expansiveness (both exponents nonzero).
pub fn classify(a: i64, b: i64) -> DirectionClass {
    let (num, den) = lowest_terms(a, b);
    let real = sign_stability(num.cmp(&den));
    let two_adic = sign_stability(0.cmp(&a)); // exponent is -a log 2
    let three_adic = sign_stability(0.cmp(&b)); // exponent is -b log 3
    let expanding = num > den;
    let cone = match ((a, b), expanding) {
        ((0, 0), _) => Cone::Origin,
        ((0, _), _) => Cone::LineA0,
        ((_, 0), _) => Cone::LineB0,
        _ if a > 0 && b > 0 => Cone::PosPos,
        _ if a < 0 && b < 0 => Cone::NegNeg,
        _ if a < 0 && b > 0 && expanding => Cone::NegPosExpanding,
        _ if a > 0 && b < 0 && expanding => Cone::PosNegExpanding,
        _ if a > 0 && b < 0 => Cone::PosNegContracting,
        _ => Cone::NegPosContracting,
    };
    DirectionClass {
        a,
        b,
        signature: Signature { real, two_adic, three_adic },
        cone,
        expansive: a != 0 && b != 0,
        lyapunov: LyapunovTriple {
            real: (a, b),
            two_adic: (-a, 0),
            three_adic: (0, -b),
        },
    }
}

/// Number of points fixed by the n-th iterate: the adelic product
/// `prod_v |q^n - 1|_v` over the places {real, 2, 3}, with q = 2^a 3^b.
/// Always a positive integer.
pub fn periodic_point_count(a: i64, b: i64, n: u32) -> Result<Rational> {
    if (a, b) == (0, 0) {
        return Err(Error::ZeroDirection);
    }
    if n == 0 {
        return Err(Error::BadDepth { min: 1, got: 0 });
    }
    let qn = Rational::two_three_power(a * n as i64, b * n as i64);
    let x = qn - Rational::one();
    let count = Place::ALL
        .iter()
        .fold(Rational::one(), |acc, &v| acc * x.norm_at(v));
    debug_assert!(count.denom().is_one() && !count.is_negative());
    Ok(count)
}

/// Exact zeta data for one direction: the periodic-point counts, the
/// exponentiated series, the symbolic-cover series, and (when the
/// direction is expansive) the rational closed form for comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaSeries {
    pub a: i64,
    pub b: i64,
    /// F_1 .. F_N.
    pub counts: Vec<Rational>,
    /// Coefficients of exp(sum F_n z^n / n) for z^0 .. z^N.
    pub series: Vec<Rational>,
    /// Coefficients of the symbolic-cover zeta 1/(1 - H z): powers of the
    /// height, z^0 .. z^N.
    pub cover_series: Vec<Rational>,
    /// Expansion of the rational closed form, when one exists.
    pub closed_form: Option<ClosedFormZeta>,
    /// Present when the literature's printed closed form for this cone
    /// disagrees with the adelic-product computation.
    pub discrepancy_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormZeta {
    /// Human-readable form "(1 - L z)/(1 - H z)".
    pub description: String,
    pub series: Vec<Rational>,
}

/// Exponentiate a counts sequence: coefficients of exp(sum c_n z^n / n).
fn exp_series(counts: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for n in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc = acc + &counts[k - 1] * &out[n - k];
        }
        out.push(acc / Rational::from_integer(n as i64));
    }
    out
}

pub fn zeta_series(a: i64, b: i64, order: u32) -> Result<ZetaSeries> {
    if order == 0 {
        return Err(Error::BadDepth { min: 1, got: 0 });
    }
    let order = order as usize;
    let h = height(a, b)?;
    let counts: Vec<Rational> = (1..=order as u32)
        .map(|n| periodic_point_count(a, b, n))
        .collect::<Result<_>>()?;
    let series = exp_series(&counts, order);

    let h_rat = Rational::from_bigint(BigInt::from(h.clone()));
    let mut cover_series = Vec::with_capacity(order + 1);
    let mut pw = Rational::one();
    for _ in 0..=order {
        cover_series.push(pw.clone());
        pw = pw * &h_rat;
    }

    let class = classify(a, b);
    let closed_form = if class.expansive {
        let (num, den) = lowest_terms(a, b);
        let low = num.min(den);
        let low_rat = Rational::from_bigint(BigInt::from(low.clone()));
        // (1 - L z)/(1 - H z): coefficient n >= 1 is H^n - L H^(n-1)
        let mut series = vec![Rational::one()];
        let mut h_pow = Rational::one();
        for _ in 1..=order {
            let next = &h_pow * &h_rat;
            series.push(&next - &low_rat * &h_pow);
            h_pow = next;
        }
        Some(ClosedFormZeta {
            description: format!("(1 - {low} z)/(1 - {h} z)"),
            series,
        })
    } else {
        None
    };

    let discrepancy_note = if class.cone == Cone::NegPosExpanding {
        let (_, den) = lowest_terms(a, b);
        Some(format!(
            "computed closed form uses (1 - {den} z) in the numerator, i.e. 2^|a| \
             with a = {a}; the printed formula for this cone reads 2^a"
        ))
    } else {
        None
    };

    Ok(ZetaSeries {
        a,
        b,
        counts,
        series,
        cover_series,
        closed_form,
        discrepancy_note,
    })
}
