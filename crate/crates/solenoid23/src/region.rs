//! Exact set algebra for finite unions of boxes inside the fundamental
//! domain. A box is a product of a half-open rational interval with one
//! 2-adic and one 3-adic coset; the family is closed under intersection,
//! union, complement and under every automorphism of the solenoid, which
//! is what makes exhaustive finite-depth partition computations possible.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Prime, Rational};
use crate::solenoid::SolenoidPoint;

/// A coset `residue + p^exp Z_p` of the p-adic integers; `exp = 0` is the
/// whole ring. Exponents are capped at [`PadicClass::MAX_EXP`] so that
/// residues and moduli stay in machine words; the cap sits far beyond any
/// refinement depth the atom caps admit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicClass {
    p: Prime,
    residue: u64,
    exp: u32,
}

impl PadicClass {
    /// Largest supported coset exponent (3^40 still fits in a u64).
    pub const MAX_EXP: u32 = 40;

    pub fn full(p: Prime) -> PadicClass {
        PadicClass { p, residue: 0, exp: 0 }
    }

    fn modulus_for(p: Prime, exp: u32) -> Result<u64> {
        if exp > Self::MAX_EXP {
            return Err(Error::ExponentTooLarge { exp, max: Self::MAX_EXP });
        }
        Ok((p.value() as u64).pow(exp))
    }

    pub fn new(p: Prime, residue: u64, exp: u32) -> Result<PadicClass> {
        if residue >= Self::modulus_for(p, exp)? {
            return Err(Error::BadResidue {
                residue: residue.to_string(),
                p: p.value(),
                exp,
            });
        }
        Ok(PadicClass { p, residue, exp })
    }

    /// Canonicalize an arbitrary integer representative.
    pub fn from_int(p: Prime, representative: &BigInt, exp: u32) -> Result<PadicClass> {
        let modulus = BigInt::from(Self::modulus_for(p, exp)?);
        let residue = representative.mod_floor(&modulus);
        let residue = u64::try_from(&residue).expect("residue below a u64 modulus");
        Ok(PadicClass { p, residue, exp })
    }

    /// Canonicalize a p-integral rational representative through the
    /// modular inverse of its denominator.
    pub fn from_rational(p: Prime, representative: &Rational, exp: u32) -> Result<PadicClass> {
        Self::modulus_for(p, exp)?;
        let residue = representative.residue_mod(p, exp)?;
        let residue = u64::try_from(&residue).expect("residue below a u64 modulus");
        Ok(PadicClass { p, residue, exp })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_full(&self) -> bool {
        self.exp == 0
    }

    fn modulus(&self) -> u64 {
        (self.p.value() as u64).pow(self.exp)
    }

    /// Haar measure within Z_p: p^(-exp).
    pub fn measure(&self) -> Rational {
        Rational::from_big(BigInt::one(), BigInt::from(self.modulus()))
            .expect("prime power is nonzero")
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match x.residue_mod(self.p, self.exp) {
            Ok(r) => r == BigUint::from(self.residue),
            Err(_) => false,
        }
    }

    /// Two cosets of the same prime either nest or are disjoint; the
    /// intersection is the finer one when the coarser one contains it.
    pub fn intersect(&self, other: &PadicClass) -> Option<PadicClass> {
        debug_assert_eq!(self.p, other.p);
        let (coarse, fine) = if self.exp <= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        if fine.residue % coarse.modulus() == coarse.residue {
            Some(*fine)
        } else {
            None
        }
    }

    fn meets(&self, other: &PadicClass) -> bool {
        let (coarse, fine) = if self.exp <= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        fine.residue % coarse.modulus() == coarse.residue
    }

    /// The p^(new_exp - exp) subcosets partitioning this coset.
    pub fn refine(&self, new_exp: u32) -> Result<Vec<PadicClass>> {
        if new_exp < self.exp {
            return Err(Error::BadRefinement {
                current: self.exp,
                requested: new_exp,
            });
        }
        Self::modulus_for(self.p, new_exp)?;
        let step = self.modulus();
        let count = (self.p.value() as u64).pow(new_exp - self.exp);
        Ok((0..count)
            .map(|k| PadicClass {
                p: self.p,
                residue: self.residue + k * step,
                exp: new_exp,
            })
            .collect())
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    res: u64,
    exp: u32,
}

impl PadicClass {
    fn to_repr(&self) -> ClassRepr {
        ClassRepr { res: self.residue, exp: self.exp }
    }

    fn from_repr(p: Prime, repr: ClassRepr) -> Result<PadicClass> {
        PadicClass::new(p, repr.res, repr.exp)
    }
}

/// One box: `[lo, hi) x (2-adic coset) x (3-adic coset)` with endpoints
/// in `[0, 1]` whose denominators only involve 2 and 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Brick {
    lo: Rational,
    hi: Rational,
    two: PadicClass,
    three: PadicClass,
}

impl Brick {
    pub fn new(lo: Rational, hi: Rational, two: PadicClass, three: PadicClass) -> Result<Brick> {
        if lo.is_negative() || lo >= hi || hi > 1 {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        for e in [&lo, &hi] {
            if !e.has_six_smooth_denom() {
                return Err(Error::NotSixSmooth { value: e.to_string() });
            }
        }
        debug_assert_eq!(two.prime(), Prime::Two);
        debug_assert_eq!(three.prime(), Prime::Three);
        Ok(Brick { lo, hi, two, three })
    }

    /// The whole space as a single box.
    pub fn space() -> Brick {
        Brick {
            lo: Rational::zero(),
            hi: Rational::one(),
            two: PadicClass::full(Prime::Two),
            three: PadicClass::full(Prime::Three),
        }
    }

    /// An interval with full p-adic fibers.
    pub fn interval(lo: Rational, hi: Rational) -> Result<Brick> {
        Brick::new(lo, hi, PadicClass::full(Prime::Two), PadicClass::full(Prime::Three))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn two(&self) -> &PadicClass {
        &self.two
    }

    pub fn three(&self) -> &PadicClass {
        &self.three
    }

    pub fn measure(&self) -> Rational {
        (&self.hi - &self.lo) * self.two.measure() * self.three.measure()
    }

    pub fn contains(&self, x: &SolenoidPoint) -> bool {
        *x.real() >= self.lo
            && *x.real() < self.hi
            && self.two.contains(x.two())
            && self.three.contains(x.three())
    }

    pub fn intersect(&self, other: &Brick) -> Option<Brick> {
        let two = self.two.intersect(&other.two)?;
        let three = self.three.intersect(&other.three)?;
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        if lo >= hi {
            return None;
        }
        Some(Brick { lo: lo.clone(), hi: hi.clone(), two, three })
    }

    fn meets(&self, other: &Brick) -> bool {
        self.two.meets(&other.two)
            && self.three.meets(&other.three)
            && self.lo < other.hi
            && other.lo < self.hi
    }

    /// Set difference as a disjoint list of boxes.
    fn subtract(&self, other: &Brick) -> Vec<Brick> {
        let overlap = match self.intersect(other) {
            Some(o) => o,
            None => return vec![self.clone()],
        };
        let mut parts = Vec::new();
        if self.lo < overlap.lo {
            parts.push(Brick {
                lo: self.lo.clone(),
                hi: overlap.lo.clone(),
                two: self.two,
                three: self.three,
            });
        }
        if overlap.hi < self.hi {
            parts.push(Brick {
                lo: overlap.hi.clone(),
                hi: self.hi.clone(),
                two: self.two,
                three: self.three,
            });
        }
        // Within the overlapping interval, peel off the coset complement:
        // first in the 2-adic coordinate, then (inside the matching 2-adic
        // coset) in the 3-adic coordinate.
        for sub in self
            .two
            .refine(overlap.two.exp())
            .expect("overlap is finer")
        {
            if sub == overlap.two {
                continue;
            }
            parts.push(Brick {
                lo: overlap.lo.clone(),
                hi: overlap.hi.clone(),
                two: sub,
                three: self.three,
            });
        }
        for sub in self
            .three
            .refine(overlap.three.exp())
            .expect("overlap is finer")
        {
            if sub == overlap.three {
                continue;
            }
            parts.push(Brick {
                lo: overlap.lo.clone(),
                hi: overlap.hi.clone(),
                two: overlap.two,
                three: sub,
            });
        }
        parts
    }

    fn sort_key(&self) -> (u32, u64, u32, u64, &Rational) {
        (
            self.two.exp(),
            self.two.residue(),
            self.three.exp(),
            self.three.residue(),
            &self.lo,
        )
    }
}

#[derive(Serialize, Deserialize)]
struct BrickRepr {
    real: [Rational; 2],
    two: ClassRepr,
    three: ClassRepr,
}

impl Serialize for Brick {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = BrickRepr {
            real: [self.lo.clone(), self.hi.clone()],
            two: self.two.to_repr(),
            three: self.three.to_repr(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Brick {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = BrickRepr::deserialize(d)?;
        let [lo, hi] = repr.real;
        let two =
            PadicClass::from_repr(Prime::Two, repr.two).map_err(serde::de::Error::custom)?;
        let three =
            PadicClass::from_repr(Prime::Three, repr.three).map_err(serde::de::Error::custom)?;
        Brick::new(lo, hi, two, three).map_err(serde::de::Error::custom)
    }
}

/// A finite disjoint union of boxes, kept in a normalized form: boxes are
/// sorted by coset pair then interval, and touching intervals over the
/// same coset pair are merged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RegionRepr", into = "RegionRepr")]
pub struct Region {
    bricks: Vec<Brick>,
}

#[derive(Serialize, Deserialize)]
struct RegionRepr {
    boxes: Vec<Brick>,
}

impl From<Region> for RegionRepr {
    fn from(r: Region) -> RegionRepr {
        RegionRepr { boxes: r.bricks }
    }
}

impl TryFrom<RegionRepr> for Region {
    type Error = Error;
    fn try_from(r: RegionRepr) -> Result<Region> {
        Region::new(r.boxes)
    }
}

impl Region {
    pub fn empty() -> Region {
        Region { bricks: Vec::new() }
    }

    /// The whole space.
    pub fn space() -> Region {
        Region { bricks: vec![Brick::space()] }
    }

    /// Normalize and verify pairwise disjointness.
    pub fn new(bricks: Vec<Brick>) -> Result<Region> {
        verify_disjoint(&bricks)?;
        Ok(Self::from_disjoint(bricks))
    }

    /// Normalize a list already known to be disjoint. Exposed within the
    /// crate for the partition engine, whose intersection pieces are
    /// disjoint by construction.
    pub(crate) fn from_disjoint_bricks(bricks: Vec<Brick>) -> Region {
        Self::from_disjoint(bricks)
    }

    /// Normalize a list already known to be disjoint (set operations and
    /// automorphism images preserve disjointness by construction).
    fn from_disjoint(mut bricks: Vec<Brick>) -> Region {
        bricks.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let mut merged: Vec<Brick> = Vec::with_capacity(bricks.len());
        for b in bricks {
            if let Some(last) = merged.last_mut() {
                if last.two == b.two && last.three == b.three && last.hi == b.lo {
                    last.hi = b.hi;
                    continue;
                }
            }
            merged.push(b);
        }
        Region { bricks: merged }
    }

    pub fn from_brick(b: Brick) -> Region {
        Region { bricks: vec![b] }
    }

    pub fn bricks(&self) -> &[Brick] {
        &self.bricks
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    pub fn intersect(&self, other: &Region) -> Region {
        let mut out = Vec::new();
        for a in &self.bricks {
            for b in &other.bricks {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        Region::from_disjoint(out)
    }

    /// Whether the two sets intersect, without materializing anything.
    pub fn meets(&self, other: &Region) -> bool {
        self.bricks
            .iter()
            .any(|a| other.bricks.iter().any(|b| a.meets(b)))
    }

    pub fn subtract(&self, other: &Region) -> Region {
        let mut pieces: Vec<Brick> = self.bricks.clone();
        for b in &other.bricks {
            pieces = pieces.iter().flat_map(|p| p.subtract(b)).collect();
        }
        Region::from_disjoint(pieces)
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut out = self.bricks.clone();
        out.extend(other.subtract(self).bricks);
        Region::from_disjoint(out)
    }

    /// Semantic set equality, independent of representation.
    pub fn set_eq(&self, other: &Region) -> bool {
        if self.bricks == other.bricks {
            return true;
        }
        if self.haar_measure() != other.haar_measure() {
            return false;
        }
        self.subtract(other).is_empty() && other.subtract(self).is_empty()
    }

    /// Normalized Haar measure; the whole space has measure 1.
    pub fn haar_measure(&self) -> Rational {
        self.bricks
            .iter()
            .fold(Rational::zero(), |acc, b| acc + b.measure())
    }

    pub fn contains_point(&self, x: &SolenoidPoint) -> bool {
        self.bricks.iter().any(|b| b.contains(x))
    }

    /// Smallest and largest real endpoints over all boxes; `None` when
    /// empty.
    pub fn real_span(&self) -> Option<(Rational, Rational)> {
        let mut it = self.bricks.iter();
        let first = it.next()?;
        let mut lo = first.lo.clone();
        let mut hi = first.hi.clone();
        for b in it {
            if b.lo < lo {
                lo = b.lo.clone();
            }
            if b.hi > hi {
                hi = b.hi.clone();
            }
        }
        Some((lo, hi))
    }

    /// Width of the widest box (the largest real extent of any local
    /// sheet of the set); `None` when empty.
    pub fn max_brick_width(&self) -> Option<Rational> {
        self.bricks.iter().map(|b| &b.hi - &b.lo).max()
    }

    /// Minimum coset exponents over all boxes (coarsest fibers touched).
    pub fn min_exps(&self) -> Option<(u32, u32)> {
        self.bricks
            .iter()
            .map(|b| (b.two.exp(), b.three.exp()))
            .reduce(|(a2, a3), (b2, b3)| (a2.min(b2), a3.min(b3)))
    }

    /// The exact image under the automorphism indexed by (a, b).
    ///
    /// Per box with cosets at exponents (m, n): refine the cosets so that
    /// multiplication by q = 2^a 3^b sends each subcoset to a translate
    /// of a subgroup of Z_p; pull the p-adic fractional parts of the
    /// translated representatives into a diagonal correction; then split
    /// the translated real interval at integers, each integer piece
    /// landing back in the fundamental domain with its cosets
    /// recanonicalized.
    ///
    /// Panics if the image cosets would exceed [`PadicClass::MAX_EXP`];
    /// callers bound |a|, |b| long before that.
    pub fn image(&self, a: i64, b: i64) -> Region {
        let q = Rational::two_three_power(a, b);
        let mut out = Vec::new();
        for brick in &self.bricks {
            let e2 = brick.two.exp().max(saturating_neg(a));
            let e3 = brick.three.exp().max(saturating_neg(b));
            let new_e2 = (a + e2 as i64) as u32;
            let new_e3 = (b + e3 as i64) as u32;
            for c2 in brick.two.refine(e2).expect("e2 >= exp") {
                let t2 = &q * &Rational::from_integer(c2.residue() as i64);
                let f2 = t2.frac_p(Prime::Two);
                for c3 in brick.three.refine(e3).expect("e3 >= exp") {
                    let t3 = &q * &Rational::from_integer(c3.residue() as i64);
                    let rho = &f2 + &t3.frac_p(Prime::Three);
                    let lo = &q * &brick.lo - &rho;
                    let hi = &q * &brick.hi - &rho;
                    let two_rep = &t2 - &rho;
                    let three_rep = &t3 - &rho;
                    let mut k = lo.floor();
                    while Rational::from_bigint(k.clone()) < hi {
                        let kq = Rational::from_bigint(k.clone());
                        let piece_lo = (&lo - &kq).max(Rational::zero());
                        let piece_hi = (&hi - &kq).min(Rational::one());
                        if piece_lo < piece_hi {
                            let two = PadicClass::from_rational(
                                Prime::Two,
                                &(&two_rep - &kq),
                                new_e2,
                            )
                            .expect("image coset exponent within the supported range");
                            let three = PadicClass::from_rational(
                                Prime::Three,
                                &(&three_rep - &kq),
                                new_e3,
                            )
                            .expect("image coset exponent within the supported range");
                            out.push(Brick {
                                lo: piece_lo,
                                hi: piece_hi,
                                two,
                                three,
                            });
                        }
                        k += 1;
                    }
                }
            }
        }
        Region::from_disjoint(out)
    }
}

fn saturating_neg(a: i64) -> u32 {
    if a < 0 {
        a.unsigned_abs() as u32
    } else {
        0
    }
}

/// Check that a family of boxes is pairwise disjoint. Boxes are grouped
/// by exact coset pair; within a group the intervals are sorted and
/// scanned, and groups whose coset pairs intersect are merge-scanned
/// against each other.
pub fn verify_disjoint(bricks: &[Brick]) -> Result<()> {
    let mut groups: HashMap<(u32, u64, u32, u64), Vec<(&Rational, &Rational)>> = HashMap::new();
    let mut keys: Vec<(PadicClass, PadicClass)> = Vec::new();
    for b in bricks {
        let key = (
            b.two.exp(),
            b.two.residue(),
            b.three.exp(),
            b.three.residue(),
        );
        groups
            .entry(key)
            .or_insert_with(|| {
                keys.push((b.two, b.three));
                Vec::new()
            })
            .push((&b.lo, &b.hi));
    }
    for intervals in groups.values_mut() {
        intervals.sort();
        for w in intervals.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(Error::OverlappingBoxes {
                    detail: format!(
                        "intervals [{}, {}) and [{}, {})",
                        w[0].0, w[0].1, w[1].0, w[1].1
                    ),
                });
            }
        }
    }
    let key_of = |two: &PadicClass, three: &PadicClass| {
        (two.exp(), two.residue(), three.exp(), three.residue())
    };
    for i in 0..keys.len() {
        for j in (i + 1)..keys.len() {
            let (two_a, three_a) = &keys[i];
            let (two_b, three_b) = &keys[j];
            if !two_a.meets(two_b) || !three_a.meets(three_b) {
                continue;
            }
            let (xs, ys) = (
                &groups[&key_of(two_a, three_a)],
                &groups[&key_of(two_b, three_b)],
            );
            // sorted interval lists; two-pointer overlap scan
            let (mut p, mut q) = (0usize, 0usize);
            while p < xs.len() && q < ys.len() {
                let (alo, ahi) = xs[p];
                let (blo, bhi) = ys[q];
                if alo < bhi && blo < ahi {
                    return Err(Error::OverlappingBoxes {
                        detail: format!(
                            "[{alo}, {ahi}) x {:?} meets [{blo}, {bhi}) x {:?}",
                            keys[i], keys[j]
                        ),
                    });
                }
                if ahi <= bhi {
                    p += 1;
                } else {
                    q += 1;
                }
            }
        }
    }
    Ok(())
}

impl Ord for Brick {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Brick {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
