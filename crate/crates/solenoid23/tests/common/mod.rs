//! Shared generators and independent oracles for the integration suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use solenoid23::rational::{Prime, Rational};
use solenoid23::region::{Brick, PadicClass, Region};
use solenoid23::solenoid::SolenoidPoint;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random point of the fundamental domain with awkward denominators:
/// the p-adic coordinates get denominators coprime to p, the real
/// coordinate anything in [0, 1).
pub fn random_point(rng: &mut ChaCha8Rng) -> SolenoidPoint {
    let real_den = rng.gen_range(1..=72i64);
    let real_num = rng.gen_range(0..real_den);
    let two_den = loop {
        let d = rng.gen_range(1..=73i64);
        if d % 2 != 0 {
            break d;
        }
    };
    let three_den = loop {
        let d = rng.gen_range(1..=73i64);
        if d % 3 != 0 {
            break d;
        }
    };
    SolenoidPoint::new(
        Rational::new(real_num, real_den),
        Rational::new(rng.gen_range(-100..=100), two_den),
        Rational::new(rng.gen_range(-100..=100), three_den),
    )
    .expect("constructed within the fundamental domain")
}

fn random_class(rng: &mut ChaCha8Rng, p: Prime) -> PadicClass {
    let exp = rng.gen_range(0..=2u32);
    let modulus = p.value().pow(exp) as u64;
    PadicClass::new(p, rng.gen_range(0..modulus), exp)
        .expect("residue drawn below the modulus")
}

fn random_brick(rng: &mut ChaCha8Rng) -> Brick {
    let den = 2i64.pow(rng.gen_range(0..=3)) * 3i64.pow(rng.gen_range(0..=2));
    let lo = rng.gen_range(0..den);
    let hi = rng.gen_range(lo + 1..=den);
    Brick::new(
        Rational::new(lo, den),
        Rational::new(hi, den),
        random_class(rng, Prime::Two),
        random_class(rng, Prime::Three),
    )
    .expect("interval drawn inside [0, 1]")
}

/// A random box set: the union of a few random bricks (union handles any
/// overlaps exactly).
pub fn random_region(rng: &mut ChaCha8Rng) -> Region {
    let mut region = Region::from_brick(random_brick(rng));
    for _ in 0..rng.gen_range(0..3) {
        region = region.union(&Region::from_brick(random_brick(rng)));
    }
    region
}

/// The displayed closed form of the tripling map.
pub fn closed_form_triple(x: &SolenoidPoint) -> SolenoidPoint {
    let t = x.real() * Rational::from_integer(3);
    let (fl, frac) = t.floor_frac();
    let fl = Rational::from_bigint(fl);
    SolenoidPoint::new(
        frac,
        x.two() * Rational::from_integer(3) - &fl,
        x.three() * Rational::from_integer(3) - &fl,
    )
    .expect("closed form lands in the fundamental domain")
}

/// The halving map's closed form, with the real term that the doubling
/// identity forces in the first coordinate.
pub fn closed_form_half(x: &SolenoidPoint) -> SolenoidPoint {
    let d0 = Rational::from_integer(x.two().digit_p(0, Prime::Two).unwrap() as i64);
    let half = Rational::new(1, 2);
    SolenoidPoint::new(
        &half * x.real() + &half * &d0,
        &half * x.two() + &half * &d0,
        &half * x.three() + &half * &d0,
    )
    .expect("closed form lands in the fundamental domain")
}

/// The displayed closed form of multiplication by 3/2.
pub fn closed_form_three_halves(x: &SolenoidPoint) -> SolenoidPoint {
    let d0 = Rational::from_integer(x.two().digit_p(0, Prime::Two).unwrap() as i64);
    let th = Rational::new(3, 2);
    let lead = &th * x.real() + &th * &d0;
    let (fl, frac) = lead.floor_frac();
    let fl = Rational::from_bigint(fl);
    SolenoidPoint::new(
        frac,
        &th * x.two() + &th * &d0 - &fl,
        &th * x.three() + &th * &d0 - &fl,
    )
    .expect("closed form lands in the fundamental domain")
}
