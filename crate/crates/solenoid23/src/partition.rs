//! Partitions of the solenoid and their orbit refinements: the uniform
//! interval partition for each direction, joins and orbit joins, the
//! finite-depth Markov condition, symbolic transition matrices,
//! generating-trend profiles, and the closed-form positive-quadrant atoms
//! that serve as an independent oracle for the engine.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::direction::height;
use crate::error::{Error, Result};
use crate::rational::{Place, Prime, Rational};
use crate::region::{verify_disjoint, Brick, PadicClass, Region};
use crate::solenoid::SolenoidPoint;

/// An ordered partition of the whole space into disjoint regions. Atom
/// indices are the symbols of the associated coding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    atoms: Vec<Region>,
}

impl Partition {
    /// The one-atom partition.
    pub fn trivial() -> Partition {
        Partition { atoms: vec![Region::space()] }
    }

    /// Build from atoms, verifying exact disjointness and full cover.
    pub fn new(atoms: Vec<Region>) -> Result<Partition> {
        let p = Partition { atoms };
        p.validate()?;
        Ok(p)
    }

    fn from_atoms_unchecked(atoms: Vec<Region>) -> Partition {
        Partition { atoms }
    }

    pub fn atoms(&self) -> &[Region] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Exact partition check: all boxes across all atoms are pairwise
    /// disjoint and the measures add to one. Within this box algebra
    /// every nonempty set has positive measure, so disjoint + total
    /// measure one is equivalent to a disjoint cover of the space.
    pub fn validate(&self) -> Result<()> {
        let bricks: Vec<Brick> = self
            .atoms
            .iter()
            .flat_map(|a| a.bricks().iter().cloned())
            .collect();
        verify_disjoint(&bricks)?;
        let total = self
            .atoms
            .iter()
            .fold(Rational::zero(), |acc, a| acc + a.haar_measure());
        if total != Rational::one() {
            return Err(Error::IncompleteCover { measure: total.to_string() });
        }
        Ok(())
    }

    /// Apply the automorphism to every atom. Images of partitions are
    /// partitions.
    pub fn image(&self, a: i64, b: i64) -> Partition {
        let atoms = self
            .atoms
            .par_iter()
            .map(|s| s.image(a, b))
            .collect::<Vec<_>>();
        Partition::from_atoms_unchecked(atoms)
    }

    /// Common refinement. Atoms are the nonempty pairwise intersections,
    /// ordered lexicographically by parent indices so symbolic words are
    /// reproducible.
    pub fn join(&self, other: &Partition) -> Partition {
        let atoms: Vec<Region> = self
            .atoms
            .par_iter()
            .flat_map_iter(|p| {
                other
                    .atoms
                    .iter()
                    .map(|q| p.intersect(q))
                    .filter(|r| !r.is_empty())
                    .collect::<Vec<_>>()
            })
            .collect();
        Partition::from_atoms_unchecked(atoms)
    }

    /// Index of the atom containing a point, if any (always for a valid
    /// partition).
    pub fn locate(&self, x: &SolenoidPoint) -> Option<usize> {
        self.atoms.iter().position(|a| a.contains_point(x))
    }
}

/// The uniform interval partition for direction (a, b): H(2^a 3^b) atoms
/// `[j/H, (j+1)/H) x Z_2 x Z_3`.
pub fn xi(a: i64, b: i64) -> Result<Partition> {
    let h = height(a, b)?;
    let h = usize::try_from(&h).map_err(|_| Error::ResourceCap {
        cap: usize::MAX as u64,
        during: "building the interval partition",
    })?;
    let hq = BigInt::from(h);
    let atoms = (0..h)
        .map(|j| {
            let lo = Rational::from_big(BigInt::from(j), hq.clone())?;
            let hi = Rational::from_big(BigInt::from(j + 1), hq.clone())?;
            Ok(Region::from_brick(Brick::interval(lo, hi)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_atoms_unchecked(atoms))
}

/// Summary statistics of a refinement: how fine the join has become in
/// each coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementReport {
    pub depth: u32,
    pub atom_count: u64,
    /// Largest real width of any single box over all atoms: the real
    /// extent of the widest local sheet. (Total spread across an atom's
    /// boxes is no measure of fineness here, because the fundamental
    /// domain cuts one local sheet into pieces translated by diagonal
    /// carries.)
    pub real_diam_max: Rational,
    /// Coarsest 2-adic coset exponent over all atoms' boxes.
    pub two_exp_min: u32,
    /// Coarsest 3-adic coset exponent over all atoms' boxes.
    pub three_exp_min: u32,
    /// True when every atom is a single box.
    pub all_rectangles: bool,
}

#[derive(Debug, Clone)]
struct ScanStats {
    atom_count: u64,
    real_diam_max: Rational,
    two_exp_min: u32,
    three_exp_min: u32,
    all_rectangles: bool,
}

impl ScanStats {
    fn empty() -> ScanStats {
        ScanStats {
            atom_count: 0,
            real_diam_max: Rational::zero(),
            two_exp_min: u32::MAX,
            three_exp_min: u32::MAX,
            all_rectangles: true,
        }
    }

    fn absorb_atom(&mut self, atom: &Region) {
        self.atom_count += 1;
        for b in atom.bricks() {
            if Rational::diff_cmp(b.hi(), b.lo(), &self.real_diam_max)
                == std::cmp::Ordering::Greater
            {
                self.real_diam_max = b.hi() - b.lo();
            }
            self.two_exp_min = self.two_exp_min.min(b.two().exp());
            self.three_exp_min = self.three_exp_min.min(b.three().exp());
        }
        self.all_rectangles &= atom.bricks().len() == 1;
    }

    fn merge(mut self, other: ScanStats) -> ScanStats {
        self.atom_count += other.atom_count;
        if other.real_diam_max > self.real_diam_max {
            self.real_diam_max = other.real_diam_max;
        }
        self.two_exp_min = self.two_exp_min.min(other.two_exp_min);
        self.three_exp_min = self.three_exp_min.min(other.three_exp_min);
        self.all_rectangles &= other.all_rectangles;
        self
    }

    fn into_report(self, depth: u32) -> RefinementReport {
        RefinementReport {
            depth,
            atom_count: self.atom_count,
            real_diam_max: self.real_diam_max,
            two_exp_min: self.two_exp_min,
            three_exp_min: self.three_exp_min,
            all_rectangles: self.all_rectangles,
        }
    }
}

/// One factor of an orbit join, indexed for fast box lookup against a
/// narrow prefix. Wide boxes (real width at least 1/2) are scanned
/// exhaustively with the machine-word coset test doing the pruning; the
/// rest are sorted by left endpoint and window-searched.
struct FactorIndex {
    /// Position of this factor's symbol in the output word.
    position: usize,
    long: Vec<(usize, Brick)>,
    short: Vec<(usize, Brick)>,
    short_max_width: Rational,
}

impl FactorIndex {
    fn build(p: &Partition, position: usize) -> FactorIndex {
        let half = Rational::new(1, 2);
        let mut long = Vec::new();
        let mut short = Vec::new();
        let mut short_max_width = Rational::zero();
        for (idx, atom) in p.atoms().iter().enumerate() {
            for b in atom.bricks() {
                if &(b.hi() - b.lo()) >= &half {
                    long.push((idx, b.clone()));
                } else {
                    let w = b.hi() - b.lo();
                    if w > short_max_width {
                        short_max_width = w;
                    }
                    short.push((idx, b.clone()));
                }
            }
        }
        short.sort_by(|(_, x), (_, y)| x.lo().cmp(y.lo()).then_with(|| x.cmp(y)));
        FactorIndex { position, long, short, short_max_width }
    }

    /// All pieces of `pb` meeting this factor, tagged with the owning
    /// atom index.
    fn hits(&self, pb: &Brick, out: &mut Vec<(usize, Brick)>) {
        for (idx, b) in &self.long {
            if let Some(piece) = pb.intersect(b) {
                out.push((*idx, piece));
            }
        }
        if self.short.is_empty() {
            return;
        }
        // boxes starting at or before lo - max_width cannot reach into
        // [lo, hi); boxes starting at or after hi cannot either
        let window_lo = pb.lo() - &self.short_max_width;
        let start = self.short.partition_point(|(_, b)| *b.lo() <= window_lo);
        for (idx, b) in &self.short[start..] {
            if b.lo() >= pb.hi() {
                break;
            }
            if let Some(piece) = pb.intersect(b) {
                out.push((*idx, piece));
            }
        }
    }
}

/// Depth-first walk over the nonempty atoms of the join of `factors`,
/// accumulating statistics and optionally materializing the atom of each
/// word. Factors are visited in an order that keeps intermediate
/// intersections small; `word` records symbols at their original
/// positions. Pruned branches (empty prefixes) spawn no extensions.
fn scan_product(
    factors: &[(usize, Partition)],
    word_len: usize,
    cap: u64,
    materialize: bool,
) -> Result<(Vec<(Vec<usize>, Region)>, ScanStats)> {
    let (first_pos, first) = match factors.first() {
        Some((pos, f)) => (*pos, f),
        None => return Ok((Vec::new(), ScanStats::empty())),
    };
    let indexes: Vec<FactorIndex> = factors[1..]
        .iter()
        .map(|(pos, p)| FactorIndex::build(p, *pos))
        .collect();
    let branches: Vec<Result<(Vec<(Vec<usize>, Region)>, ScanStats)>> = first
        .atoms()
        .par_iter()
        .enumerate()
        .map(|(idx, atom)| {
            let mut leaves = Vec::new();
            let mut stats = ScanStats::empty();
            let mut word = vec![0usize; word_len];
            word[first_pos] = idx;
            walk(&indexes, atom, &mut word, cap, materialize, &mut leaves, &mut stats)?;
            Ok((leaves, stats))
        })
        .collect();
    let mut leaves = Vec::new();
    let mut stats = ScanStats::empty();
    for branch in branches {
        let (l, s) = branch?;
        stats = stats.merge(s);
        if stats.atom_count > cap {
            return Err(Error::ResourceCap { cap, during: "refining the partition" });
        }
        leaves.extend(l);
    }
    Ok((leaves, stats))
}

fn walk(
    rest: &[FactorIndex],
    prefix: &Region,
    word: &mut [usize],
    cap: u64,
    materialize: bool,
    leaves: &mut Vec<(Vec<usize>, Region)>,
    stats: &mut ScanStats,
) -> Result<()> {
    let factor = match rest.first() {
        None => {
            stats.absorb_atom(prefix);
            if stats.atom_count > cap {
                return Err(Error::ResourceCap { cap, during: "refining the partition" });
            }
            if materialize {
                leaves.push((word.to_vec(), prefix.clone()));
            }
            return Ok(());
        }
        Some(f) => f,
    };
    let mut hits = Vec::new();
    for pb in prefix.bricks() {
        factor.hits(pb, &mut hits);
    }
    hits.sort_by(|(i, x), (j, y)| i.cmp(j).then_with(|| x.cmp(y)));
    let mut runs: Vec<(usize, Vec<Brick>)> = Vec::new();
    for (idx, piece) in hits {
        match runs.last_mut() {
            Some((i, v)) if *i == idx => v.push(piece),
            _ => runs.push((idx, vec![piece])),
        }
    }
    for (atom_idx, bricks) in runs {
        let child = Region::from_disjoint_bricks(bricks);
        word[factor.position] = atom_idx;
        walk(&rest[1..], &child, word, cap, materialize, leaves, stats)?;
    }
    Ok(())
}

/// The factor partitions of an orbit join, paired with their word
/// positions and arranged for scanning: the identity iterate first (its
/// atoms are single narrow intervals), then outward by |j|.
fn orbit_factors(a: i64, b: i64, j_min: i64, j_max: i64) -> Result<Vec<(usize, Partition)>> {
    if (a, b) == (0, 0) {
        return Err(Error::ZeroDirection);
    }
    if j_min > 0 || j_max < 0 {
        return Err(Error::BadDepth { min: 0, got: if j_min > 0 { j_min } else { j_max } });
    }
    let base = xi(a, b)?;
    let mut js: Vec<i64> = (j_min..=j_max).collect();
    js.sort_by_key(|j| (j.abs(), *j < 0));
    Ok(js
        .into_iter()
        .map(|j| {
            let p = if j == 0 { base.clone() } else { base.image(j * a, j * b) };
            ((j - j_min) as usize, p)
        })
        .collect())
}

fn range_depth(j_min: i64, j_max: i64) -> u32 {
    j_max.unsigned_abs().max(j_min.unsigned_abs()) as u32
}

/// The orbit refinement: join of the images of the interval partition
/// under the j-th iterates for j in [j_min, j_max], with its report.
/// Atoms are ordered lexicographically by symbol word (the indices at
/// j_min, ..., j_max), so the coding is reproducible.
pub fn orbit_join(
    a: i64,
    b: i64,
    j_min: i64,
    j_max: i64,
    cap: u64,
) -> Result<(Partition, RefinementReport)> {
    let word_len = (j_max - j_min + 1) as usize;
    let factors = orbit_factors(a, b, j_min, j_max)?;
    let (mut leaves, stats) = scan_product(&factors, word_len, cap, true)?;
    leaves.sort_by(|(u, _), (v, _)| u.cmp(v));
    Ok((
        Partition::from_atoms_unchecked(leaves.into_iter().map(|(_, r)| r).collect()),
        stats.into_report(range_depth(j_min, j_max)),
    ))
}

/// Report-only variant of [`orbit_join`]: identical traversal, nothing
/// materialized, so deep refinements fit in memory.
pub fn orbit_report(a: i64, b: i64, j_min: i64, j_max: i64, cap: u64) -> Result<RefinementReport> {
    let word_len = (j_max - j_min + 1) as usize;
    let factors = orbit_factors(a, b, j_min, j_max)?;
    let (_, stats) = scan_product(&factors, word_len, cap, false)?;
    Ok(stats.into_report(range_depth(j_min, j_max)))
}

/// Closed form for a forward orbit atom in the quadrant a, b > 0: with
/// q = 2^a 3^b and n = ells.len() + 1, the intersection of the j-th
/// images of atoms along the word equals the single box
/// `[0,1) x (2^{an} Z_2 - off) x (3^{bn} Z_3 - off)` with
/// `off = k q^{n-1} + ell_1 q^{n-2} + ... + ell_{n-1}`.
///
/// Orientation: the engine atom `a^1(A_{i_1}) ∩ ... ∩ a^n(A_{i_n})`
/// corresponds to `k = i_n`, `ells = [i_{n-1}, ..., i_1]`.
pub fn closed_form_forward_atom(a: i64, b: i64, k: u64, ells: &[u64]) -> Result<Brick> {
    let (q, _) = positive_quadrant_base(a, b, k, ells)?;
    let n = ells.len() as u32 + 1;
    let mut off = BigUint::from(k) * q.pow(n - 1);
    for (i, ell) in ells.iter().enumerate() {
        off += BigUint::from(*ell) * q.pow(n - 2 - i as u32);
    }
    let neg_off = -BigInt::from(off);
    let two = PadicClass::from_int(Prime::Two, &neg_off, a as u32 * n)?;
    let three = PadicClass::from_int(Prime::Three, &neg_off, b as u32 * n)?;
    Brick::new(Rational::zero(), Rational::one(), two, three)
}

/// Closed form for a backward orbit atom in the quadrant a, b > 0: with
/// q = 2^a 3^b and n = ells.len(), the atom is the full-fiber interval
/// `[k/q^{n+1} + D, (k+1)/q^{n+1} + D)` with
/// `D = ell_1/q^n + ... + ell_n/q`.
///
/// Orientation: the engine atom `A_{i_0} ∩ a^{-1}(A_{i_1}) ∩ ... ∩
/// a^{-n}(A_{i_n})` corresponds to `k = i_n`, `ells = [i_{n-1}, ..., i_0]`.
pub fn closed_form_backward_atom(a: i64, b: i64, k: u64, ells: &[u64]) -> Result<Brick> {
    let (q, _) = positive_quadrant_base(a, b, k, ells)?;
    let n = ells.len() as u32;
    let qn1 = BigInt::from(q.pow(n + 1));
    let mut d = Rational::zero();
    for (i, ell) in ells.iter().enumerate() {
        d = d + Rational::from_big(BigInt::from(*ell), BigInt::from(q.pow(n - i as u32)))?;
    }
    let lo = Rational::from_big(BigInt::from(k), qn1.clone())? + &d;
    let hi = Rational::from_big(BigInt::from(k + 1), qn1)? + &d;
    Brick::interval(lo, hi)
}

fn positive_quadrant_base(a: i64, b: i64, k: u64, ells: &[u64]) -> Result<(BigUint, u64)> {
    if a <= 0 || b <= 0 {
        return Err(Error::NotExpansive { a, b });
    }
    let q = BigUint::from(2u32).pow(a as u32) * BigUint::from(3u32).pow(b as u32);
    let q64 = u64::try_from(&q).map_err(|_| Error::JsonNumberOverflow)?;
    for &idx in ells.iter().chain(std::iter::once(&k)) {
        if idx >= q64 {
            return Err(Error::IndexOutOfRange { index: idx as i64, size: q64 });
        }
    }
    Ok((q, q64))
}

/// Outcome of the finite-depth Markov check at depth n: over every word
/// in the atom alphabet, a nonempty forward cylinder and a nonempty
/// backward cylinder must force a nonempty two-sided cylinder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkovReport {
    pub a: i64,
    pub b: i64,
    pub depth: u32,
    pub alphabet: usize,
    pub holds: bool,
    /// A violating word `(i_{-n}, ..., i_0, ..., i_n)` when the check
    /// fails.
    pub counterexample: Option<Vec<usize>>,
    pub forward_cylinders: u64,
    pub backward_cylinders: u64,
    pub two_sided_cylinders: u64,
    /// True when every cylinder at this depth is nonempty, the
    /// combinatorics of a full shift.
    pub full_shift: bool,
}

/// Enumerate the nonempty one-sided cylinders of length n+1 in the given
/// orbit direction (step = (a, b) forward, (-a, -b) backward), keyed by
/// the symbol at time zero. Words are extended only while nonempty.
fn one_sided_cylinders(
    base: &Partition,
    a: i64,
    b: i64,
    n: u32,
    cap: u64,
    budget: &mut u64,
) -> Result<Vec<Vec<(Vec<usize>, Region)>>> {
    let mut by_head: Vec<Vec<(Vec<usize>, Region)>> = vec![Vec::new(); base.len()];
    // level 0: the atoms themselves
    let mut frontier: Vec<(Vec<usize>, Region)> = base
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, s)| (vec![i], s.clone()))
        .collect();
    *budget += frontier.len() as u64;
    for j in 1..=i64::from(n) {
        let stage = base.image(j * a, j * b);
        let next: Vec<(Vec<usize>, Region)> = frontier
            .par_iter()
            .flat_map_iter(|(word, set)| {
                stage
                    .atoms()
                    .iter()
                    .enumerate()
                    .filter_map(|(i, s)| {
                        let meet = set.intersect(s);
                        if meet.is_empty() {
                            None
                        } else {
                            let mut w = word.clone();
                            w.push(i);
                            Some((w, meet))
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = next;
        *budget += frontier.len() as u64;
        if *budget > cap {
            return Err(Error::ResourceCap { cap, during: "enumerating cylinders" });
        }
    }
    for (word, set) in frontier {
        by_head[word[0]].push((word, set));
    }
    Ok(by_head)
}

pub fn markov_check(a: i64, b: i64, n: u32, cap: u64) -> Result<MarkovReport> {
    if (a, b) == (0, 0) {
        return Err(Error::ZeroDirection);
    }
    if n == 0 {
        return Err(Error::BadDepth { min: 1, got: 0 });
    }
    let base = xi(a, b)?;
    let h = base.len();
    let mut budget = 0u64;
    let forward = one_sided_cylinders(&base, a, b, n, cap, &mut budget)?;
    let backward = one_sided_cylinders(&base, -a, -b, n, cap, &mut budget)?;

    let forward_count: u64 = forward.iter().map(|v| v.len() as u64).sum();
    let backward_count: u64 = backward.iter().map(|v| v.len() as u64).sum();
    let pair_count: u64 = (0..h)
        .map(|i| forward[i].len() as u64 * backward[i].len() as u64)
        .sum();
    if budget + pair_count > cap {
        return Err(Error::ResourceCap { cap, during: "pairing cylinders" });
    }

    // two-sided words: backward word reversed gives (i_{-n}, ..., i_0),
    // then the forward word continues (i_1, ..., i_n)
    let outcomes: Vec<(u64, Option<Vec<usize>>)> = (0..h)
        .into_par_iter()
        .map(|head| {
            let mut nonempty = 0u64;
            let mut counterexample = None;
            'outer: for (bw, bset) in &backward[head] {
                for (fw, fset) in &forward[head] {
                    if !fset.meets(bset) {
                        let mut word: Vec<usize> = bw.iter().rev().copied().collect();
                        word.extend_from_slice(&fw[1..]);
                        counterexample = Some(word);
                        break 'outer;
                    }
                    nonempty += 1;
                }
            }
            (nonempty, counterexample)
        })
        .collect();

    let two_sided: u64 = outcomes.iter().map(|(c, _)| c).sum();
    let counterexample = outcomes.into_iter().find_map(|(_, ce)| ce);
    let total_words = (h as u64).pow(2 * n + 1);
    Ok(MarkovReport {
        a,
        b,
        depth: n,
        alphabet: h,
        holds: counterexample.is_none(),
        counterexample,
        forward_cylinders: forward_count,
        backward_cylinders: backward_count,
        two_sided_cylinders: two_sided,
        full_shift: two_sided == total_words,
    })
}

/// Allowed-transition matrix of the symbolic cover: entry (i, j) records
/// whether the image of atom i meets atom j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    pub size: usize,
    pub allowed: Vec<Vec<bool>>,
}

impl TransitionMatrix {
    pub fn is_all_true(&self) -> bool {
        self.allowed.iter().all(|row| row.iter().all(|&x| x))
    }

    /// Number of admissible words of length n.
    pub fn word_count(&self, n: u32) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        // vector of ones propagated n-1 steps through the matrix
        let mut v = vec![BigUint::one(); self.size];
        for _ in 1..n {
            let mut next = vec![BigUint::zero(); self.size];
            for (i, row) in self.allowed.iter().enumerate() {
                for (j, &ok) in row.iter().enumerate() {
                    if ok {
                        next[i] += &v[j];
                    }
                }
            }
            v = next;
        }
        v.into_iter().sum()
    }

    /// 0/1 CSV, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.allowed {
            let line: Vec<&str> = row.iter().map(|&x| if x { "1" } else { "0" }).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn transition_matrix(a: i64, b: i64) -> Result<TransitionMatrix> {
    let base = xi(a, b)?;
    let images: Vec<Region> = base.atoms().par_iter().map(|s| s.image(a, b)).collect();
    let allowed: Vec<Vec<bool>> = images
        .par_iter()
        .map(|img| base.atoms().iter().map(|t| img.meets(t)).collect())
        .collect();
    let m = TransitionMatrix { size: base.len(), allowed };
    debug_assert!(
        m.allowed.iter().all(|r| r.iter().any(|&x| x))
            && (0..m.size).all(|j| m.allowed.iter().any(|r| r[j])),
        "automorphism images must hit every atom somewhere"
    );
    Ok(m)
}

/// Finite-depth generating trend: either every coordinate width strictly
/// decreases with depth, or some coordinates stay untouched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "trend", rename_all = "snake_case")]
pub enum GeneratorTrend {
    /// All three coordinate widths strictly decrease through the profiled
    /// depths: consistent with a generating partition (no claim about the
    /// limit).
    Generating,
    /// The named coordinates keep a constant width at every depth.
    Obstructed { places: Vec<Place> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorProfile {
    pub a: i64,
    pub b: i64,
    pub reports: Vec<RefinementReport>,
    pub trend: GeneratorTrend,
}

/// Profile the orbit joins at depths 1..=n_max and classify the trend.
/// The depth-0 baseline (the interval partition itself) anchors the
/// comparisons.
pub fn generator_profile(a: i64, b: i64, n_max: u32, cap: u64) -> Result<GeneratorProfile> {
    if n_max == 0 {
        return Err(Error::BadDepth { min: 1, got: 0 });
    }
    let h = height(a, b)?;
    let base_diam = Rational::from_big(BigInt::one(), BigInt::from(h))?;
    let mut reports = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        reports.push(orbit_report(a, b, -i64::from(n), i64::from(n), cap)?);
    }

    let real_widths: Vec<Rational> = std::iter::once(base_diam)
        .chain(reports.iter().map(|r| r.real_diam_max.clone()))
        .collect();
    let two_exps: Vec<u32> = std::iter::once(0)
        .chain(reports.iter().map(|r| r.two_exp_min))
        .collect();
    let three_exps: Vec<u32> = std::iter::once(0)
        .chain(reports.iter().map(|r| r.three_exp_min))
        .collect();

    let strictly_dec = real_widths.windows(2).all(|w| w[1] < w[0]);
    let two_dec = two_exps.windows(2).all(|w| w[1] > w[0]);
    let three_dec = three_exps.windows(2).all(|w| w[1] > w[0]);

    let trend = if strictly_dec && two_dec && three_dec {
        GeneratorTrend::Generating
    } else {
        let mut places = Vec::new();
        if real_widths.windows(2).all(|w| w[1] == w[0]) {
            places.push(Place::Real);
        }
        if two_exps.windows(2).all(|w| w[1] == w[0]) {
            places.push(Place::TwoAdic);
        }
        if three_exps.windows(2).all(|w| w[1] == w[0]) {
            places.push(Place::ThreeAdic);
        }
        GeneratorTrend::Obstructed { places }
    };

    Ok(GeneratorProfile { a, b, reports, trend })
}
