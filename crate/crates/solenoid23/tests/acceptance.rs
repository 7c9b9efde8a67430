//! End-to-end acceptance suite. Each test is one numbered criterion and
//! prints its own pass/fail line through the harness:
//!
//! ```text
//! cargo test -p solenoid23 --test acceptance
//! ```
//!
//! Everything asserted here is exact (tolerance zero); the expected
//! values are frozen from independent derivations (closed-form formulas,
//! enumeration oracles, polynomial expansion) rather than from the code
//! under test.

mod common;

use solenoid23::direction::{classify, zeta_series, Cone, Stability};
use solenoid23::partition::{
    closed_form_backward_atom, closed_form_forward_atom, generator_profile, markov_check,
    orbit_join, transition_matrix, xi, GeneratorTrend,
};
use solenoid23::rational::{Prime, Rational};
use solenoid23::region::{Brick, PadicClass, Region};
use solenoid23::render::{render_boxset, render_cone_gallery, RenderSpec};
use solenoid23::solenoid::{wilson_backward, SolenoidPoint, WilsonTrace};
use solenoid23::Place;

use common::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn cls2(res: u64, exp: u32) -> PadicClass {
    PadicClass::new(Prime::Two, res, exp).unwrap()
}

fn cls3(res: u64, exp: u32) -> PadicClass {
    PadicClass::new(Prime::Three, res, exp).unwrap()
}

fn brick(lo: (i64, i64), hi: (i64, i64), two: PadicClass, three: PadicClass) -> Brick {
    Brick::new(r(lo.0, lo.1), r(hi.0, hi.1), two, three).unwrap()
}

fn full_interval(lo: (i64, i64), hi: (i64, i64)) -> Brick {
    Brick::interval(r(lo.0, lo.1), r(hi.0, hi.1)).unwrap()
}

#[test]
fn criterion_01_group_law_suite() {
    let mut rng = rng(1);
    let points: Vec<SolenoidPoint> = (0..1000).map(|_| random_point(&mut rng)).collect();
    for x in &points {
        assert_eq!(x.add(&SolenoidPoint::zero()), *x, "identity");
        assert!(x.add(&x.neg()).is_zero(), "inverse");
        assert_eq!(x.act(-1, 0).act(1, 0), *x, "doubling");
        assert_eq!(x.act(0, 1), closed_form_triple(x), "tripling closed form");
        assert_eq!(x.act(-1, 0), closed_form_half(x), "halving closed form");
        assert_eq!(
            x.act(-1, 1),
            closed_form_three_halves(x),
            "3/2 closed form"
        );
    }
    for w in points.chunks_exact(3) {
        assert_eq!(
            w[0].add(&w[1]).add(&w[2]),
            w[0].add(&w[1].add(&w[2])),
            "associativity"
        );
    }
}

#[test]
fn criterion_02_doubling_direction_images() {
    let base = xi(1, 0).unwrap();

    let expected_fwd1 = [
        Region::from_brick(brick((0, 1), (1, 1), cls2(0, 1), cls3(0, 0))),
        Region::from_brick(brick((0, 1), (1, 1), cls2(1, 1), cls3(0, 0))),
    ];
    // second iterate: atom 0 reaches the residues -2k-l mod 4 for k=0,
    // l in {0,1}, i.e. {0, 3}; atom 1 reaches {2, 1}
    let expected_fwd2 = [
        Region::new(vec![
            brick((0, 1), (1, 1), cls2(0, 2), cls3(0, 0)),
            brick((0, 1), (1, 1), cls2(3, 2), cls3(0, 0)),
        ])
        .unwrap(),
        Region::new(vec![
            brick((0, 1), (1, 1), cls2(1, 2), cls3(0, 0)),
            brick((0, 1), (1, 1), cls2(2, 2), cls3(0, 0)),
        ])
        .unwrap(),
    ];
    let expected_bwd1 = [
        Region::new(vec![full_interval((0, 1), (1, 4)), full_interval((1, 2), (3, 4))]).unwrap(),
        Region::new(vec![full_interval((1, 4), (1, 2)), full_interval((3, 4), (1, 1))]).unwrap(),
    ];
    let expected_bwd2 = [
        Region::new(vec![
            full_interval((0, 1), (1, 8)),
            full_interval((1, 4), (3, 8)),
            full_interval((1, 2), (5, 8)),
            full_interval((3, 4), (7, 8)),
        ])
        .unwrap(),
        Region::new(vec![
            full_interval((1, 8), (1, 4)),
            full_interval((3, 8), (1, 2)),
            full_interval((5, 8), (3, 4)),
            full_interval((7, 8), (1, 1)),
        ])
        .unwrap(),
    ];

    for (label, (aa, bb), expected) in [
        ("first forward", (1i64, 0i64), &expected_fwd1),
        ("second forward", (2, 0), &expected_fwd2),
        ("first backward", (-1, 0), &expected_bwd1),
        ("second backward", (-2, 0), &expected_bwd2),
    ] {
        let image = base.image(aa, bb);
        assert_eq!(image.len(), 2, "{label}");
        for (atom, want) in image.atoms().iter().zip(expected) {
            assert!(atom.set_eq(want), "{label}: atom mismatch");
        }
        image.validate().unwrap();
    }
}

#[test]
fn criterion_03_three_halves_direction_images() {
    let base = xi(-1, 1).unwrap();

    // images under multiplication by 3/2
    let expected = [
        Region::new(vec![
            brick((0, 1), (1, 2), cls2(0, 0), cls3(0, 1)),
            brick((1, 2), (1, 1), cls2(0, 0), cls3(2, 1)),
        ])
        .unwrap(),
        Region::new(vec![
            brick((1, 2), (1, 1), cls2(0, 0), cls3(0, 1)),
            brick((0, 1), (1, 2), cls2(0, 0), cls3(1, 1)),
        ])
        .unwrap(),
        Region::new(vec![
            brick((0, 1), (1, 2), cls2(0, 0), cls3(2, 1)),
            brick((1, 2), (1, 1), cls2(0, 0), cls3(1, 1)),
        ])
        .unwrap(),
    ];
    let fwd = base.image(-1, 1);
    for (atom, want) in fwd.atoms().iter().zip(&expected) {
        assert!(atom.set_eq(want), "forward image of the 3/2 partition");
    }
    fwd.validate().unwrap();

    // images under the inverse map, multiplication by 2/3
    let t0 = Region::new(vec![
        brick((0, 1), (2, 9), cls2(0, 1), cls3(0, 0)),
        brick((1, 3), (5, 9), cls2(1, 1), cls3(0, 0)),
        brick((2, 3), (8, 9), cls2(0, 1), cls3(0, 0)),
    ])
    .unwrap();
    let t1 = Region::new(vec![
        brick((2, 9), (4, 9), cls2(0, 1), cls3(0, 0)),
        brick((5, 9), (7, 9), cls2(1, 1), cls3(0, 0)),
        brick((8, 9), (1, 1), cls2(0, 1), cls3(0, 0)),
        brick((0, 1), (1, 9), cls2(1, 1), cls3(0, 0)),
    ])
    .unwrap();
    let t2 = Region::space().subtract(&t0.union(&t1));
    let bwd = base.image(1, -1);
    assert!(bwd.atoms()[0].set_eq(&t0), "backward image of atom 0");
    assert!(bwd.atoms()[1].set_eq(&t1), "backward image of atom 1");
    assert!(bwd.atoms()[2].set_eq(&t2), "backward image of atom 2");
    bwd.validate().unwrap();

    // the two-sided word (0, 1, 0) is not a rectangle
    let atom = base.atoms()[0]
        .image(1, -1)
        .intersect(&base.atoms()[1])
        .intersect(&base.atoms()[0].image(-1, 1));
    assert!(!atom.is_empty());
    assert!(atom.bricks().len() > 1, "expected more than one box");
}

#[test]
fn criterion_04_positive_quadrant_rectangle_law() {
    for n in 1..=3i64 {
        let (p, report) = orbit_join(1, 1, -n, n, 1_000_000).unwrap();
        let count = 6u64.pow(2 * n as u32 + 1);
        assert_eq!(report.atom_count, count, "depth {n} count");
        assert_eq!(p.len() as u64, count);
        assert!(report.all_rectangles, "depth {n} rectangles");
        let width = Rational::from_big(1.into(), 6i64.pow(n as u32 + 1).into()).unwrap();
        assert_eq!(report.real_diam_max, width, "depth {n} width");
        assert_eq!(report.two_exp_min, n as u32);
        assert_eq!(report.three_exp_min, n as u32);
        for atom in p.atoms() {
            let bricks = atom.bricks();
            assert_eq!(bricks.len(), 1);
            assert_eq!(&(bricks[0].hi() - bricks[0].lo()), &width);
            assert_eq!(bricks[0].two().exp(), n as u32);
            assert_eq!(bricks[0].three().exp(), n as u32);
        }
        p.validate().unwrap();
    }
}

#[test]
fn criterion_05_closed_form_oracle_equivalence() {
    let base = xi(1, 1).unwrap();
    // forward words (i_1, ..., i_n) for n <= 3
    for n in 1..=3usize {
        let mut word = vec![0usize; n];
        loop {
            let mut engine = base.atoms()[word[0]].image(1, 1);
            for (j, &i) in word.iter().enumerate().skip(1) {
                engine = engine.intersect(&base.atoms()[i].image(j as i64 + 1, j as i64 + 1));
            }
            let k = word[n - 1] as u64;
            let ells: Vec<u64> = word[..n - 1].iter().rev().map(|&i| i as u64).collect();
            let oracle = closed_form_forward_atom(1, 1, k, &ells).unwrap();
            assert!(
                engine.set_eq(&Region::from_brick(oracle)),
                "forward word {word:?}"
            );
            if !bump(&mut word, 6) {
                break;
            }
        }
    }
    // backward words (i_0, ..., i_n) for n <= 2
    for n in 1..=2usize {
        let mut word = vec![0usize; n + 1];
        loop {
            let mut engine = base.atoms()[word[0]].clone();
            for (j, &i) in word.iter().enumerate().skip(1) {
                engine = engine.intersect(&base.atoms()[i].image(-(j as i64), -(j as i64)));
            }
            let k = word[n] as u64;
            let ells: Vec<u64> = word[..n].iter().rev().map(|&i| i as u64).collect();
            let oracle = closed_form_backward_atom(1, 1, k, &ells).unwrap();
            assert!(
                engine.set_eq(&Region::from_brick(oracle)),
                "backward word {word:?}"
            );
            if !bump(&mut word, 6) {
                break;
            }
        }
    }
}

/// Odometer increment over a fixed-radix word; false on wraparound.
fn bump(word: &mut [usize], radix: usize) -> bool {
    for digit in word.iter_mut().rev() {
        *digit += 1;
        if *digit < radix {
            return true;
        }
        *digit = 0;
    }
    false
}

#[test]
fn criterion_06_markov_condition_depth_two() {
    for &(a, b) in &[(1i64, 1i64), (2, 1), (1, 2), (-1, 1), (1, -1), (1, 0)] {
        let report = markov_check(a, b, 2, 10_000_000).unwrap();
        assert!(report.holds, "({a},{b}) markov");
        let m = transition_matrix(a, b).unwrap();
        let h = usize::try_from(&solenoid23::height(a, b).unwrap()).unwrap();
        assert_eq!(m.size, h, "({a},{b}) matrix size");
        assert!(m.is_all_true(), "({a},{b}) matrix");
    }
}

#[test]
fn criterion_07_generator_obstruction_and_trend() {
    // the two lattice non-expansive directions keep one fiber untouched
    let profile = generator_profile(1, 0, 3, 10_000_000).unwrap();
    assert_eq!(
        profile.trend,
        GeneratorTrend::Obstructed { places: vec![Place::ThreeAdic] }
    );
    for report in &profile.reports {
        assert_eq!(report.three_exp_min, 0);
    }
    let profile = generator_profile(0, 1, 3, 10_000_000).unwrap();
    assert_eq!(
        profile.trend,
        GeneratorTrend::Obstructed { places: vec![Place::TwoAdic] }
    );
    for report in &profile.reports {
        assert_eq!(report.two_exp_min, 0);
    }

    // across the six expansive cone representatives every coordinate
    // width strictly decreases through depth 3
    for &(a, b) in &[(1i64, 1i64), (-1, 2), (2, -1), (-1, -1), (1, -2), (-2, 1)] {
        let profile = generator_profile(a, b, 3, 10_000_000).unwrap();
        assert_eq!(
            profile.trend,
            GeneratorTrend::Generating,
            "({a},{b}) trend"
        );
    }
}

#[test]
fn criterion_08_measure_preservation_and_invertibility() {
    let mut rng = rng(8);
    let regions: Vec<Region> = (0..200).map(|_| random_region(&mut rng)).collect();
    for s in &regions {
        let measure = s.haar_measure();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let img = s.image(a, b);
                assert_eq!(img.haar_measure(), measure, "measure at ({a},{b})");
                assert!(img.image(-a, -b).set_eq(s), "inverse at ({a},{b})");
            }
        }
    }
}

#[test]
fn criterion_09_zeta_counts_and_series() {
    let z = zeta_series(1, 1, 6).unwrap();
    for n in 1..=6u32 {
        assert_eq!(
            z.counts[n as usize - 1],
            Rational::from_integer(6i64.pow(n) - 1),
            "count {n}"
        );
    }
    // (1 - z)/(1 - 6z) expanded by long division: 1 + 5 sum 6^(n-1) z^n
    for n in 1..=6usize {
        let expect = Rational::from_integer(5 * 6i64.pow(n as u32 - 1));
        assert_eq!(z.series[n], expect, "series coefficient {n}");
        assert_eq!(
            z.cover_series[n],
            Rational::from_integer(6i64.pow(n as u32)),
            "cover coefficient {n}"
        );
    }
    assert_eq!(z.closed_form.as_ref().unwrap().series, z.series);

    let z = zeta_series(-1, 1, 6).unwrap();
    // (1 - 2z)/(1 - 3z): coefficient n >= 1 is 3^(n-1)
    for n in 1..=6usize {
        assert_eq!(
            z.series[n],
            Rational::from_integer(3i64.pow(n as u32 - 1)),
            "mixed-cone coefficient {n}"
        );
        assert_eq!(
            z.counts[n - 1],
            Rational::from_integer(3i64.pow(n as u32) - 2i64.pow(n as u32)),
        );
    }
    assert_eq!(z.series, z.closed_form.as_ref().unwrap().series);
    assert!(
        z.discrepancy_note.is_some(),
        "the printed-formula discrepancy must be flagged"
    );
}

#[test]
fn criterion_10_cone_table_classification() {
    use Stability::{Neutral, Stable, Unstable};
    let cases = [
        ((1i64, 1i64), (Unstable, Stable, Stable), Cone::PosPos),
        ((-1, 2), (Unstable, Unstable, Stable), Cone::NegPosExpanding),
        ((2, -1), (Unstable, Stable, Unstable), Cone::PosNegExpanding),
        ((-1, -1), (Stable, Unstable, Unstable), Cone::NegNeg),
        ((1, -2), (Stable, Stable, Unstable), Cone::PosNegContracting),
        ((-2, 1), (Stable, Unstable, Stable), Cone::NegPosContracting),
    ];
    for ((a, b), (s1, s2, s3), cone) in cases {
        let c = classify(a, b);
        assert_eq!(c.signature.real, s1, "({a},{b}) real");
        assert_eq!(c.signature.two_adic, s2, "({a},{b}) 2-adic");
        assert_eq!(c.signature.three_adic, s3, "({a},{b}) 3-adic");
        assert_eq!(c.cone, cone, "({a},{b}) cone");
        assert!(c.expansive, "({a},{b}) expansive");
    }
    let c = classify(1, 0);
    assert_eq!(c.signature.three_adic, Neutral);
    assert_eq!(c.cone, Cone::LineB0);
    assert!(!c.expansive);
    let c = classify(0, 1);
    assert_eq!(c.signature.two_adic, Neutral);
    assert_eq!(c.cone, Cone::LineA0);
    assert!(!c.expansive);
}

#[test]
fn criterion_11_wilson_round_trip() {
    let mut rng = rng(11);
    for _ in 0..200 {
        let x = random_point(&mut rng);
        let trace = x.wilson_forward(6);
        // the trace satisfies its own invariant
        WilsonTrace::new(trace.levels().to_vec()).unwrap();
        let pre = wilson_backward(&trace).unwrap();
        assert_eq!(pre.real, *x.real());
        assert_eq!(pre.depth, 6);
        assert_eq!(pre.two_residue, x.two().residue_mod(Prime::Two, 6).unwrap());
        assert_eq!(
            pre.three_residue,
            x.three().residue_mod(Prime::Three, 6).unwrap()
        );
    }
}

/// The `<g>` payload of a standalone figure.
fn figure_body(svg: &str) -> &str {
    let start = svg.find("<g>\n").expect("group start") + 4;
    let end = svg.rfind("</g>").expect("group end");
    &svg[start..end]
}

#[test]
fn criterion_12_deterministic_rendering() {
    let spec = RenderSpec::default();
    let dirs = [(1i64, 1i64), (-1, 1), (1, -1)];

    let gallery_a = render_cone_gallery(&dirs, &spec).unwrap();
    let gallery_b = render_cone_gallery(&dirs, &spec).unwrap();
    assert_eq!(gallery_a, gallery_b, "gallery determinism");

    for &(a, b) in &dirs {
        let base = xi(a, b).unwrap();
        let shape = base.atoms()[0].image(a, b);
        let one = render_boxset(&shape, &spec).unwrap();
        let two = render_boxset(&shape, &spec).unwrap();
        assert_eq!(one, two, "figure determinism ({a},{b})");
        assert!(
            gallery_a.contains(figure_body(&one)),
            "gallery panel ({a},{b}) equals the standalone figure"
        );
    }
}
