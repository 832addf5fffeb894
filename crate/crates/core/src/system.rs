//! Finite permutation systems with a commuting involution.
//!
//! [`build_system`] realizes a [`BehaviorDecomposition`] literally: one
//! `n`-cycle per surviving orbit, two `n`-cycles swapped pointwise per glued
//! pair, and one `2n`-cycle with a half-turn per halving orbit, plus a
//! distinguished fixed point `∞`. Everything else in this module
//! ([`count_orbits`], [`classify_orbits`], [`quotient`]) inspects systems
//! through their permutations alone, so it serves as an independent oracle for
//! the counting formulas.
//!
//! Systems are stored as a list of components, each a small T- and
//! ι-invariant point set together with a multiplicity. A component with
//! multiplicity `m` stands for `m` disjoint copies, so systems with billions
//! of points stay cheap to analyze.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::CountSequence;
use crate::combinatorics::{quotient_counts, BehaviorDecomposition, RawBehavior};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKind {
    Infinity,
    Surviving,
    Glued,
    Halving,
}

impl PointKind {
    fn as_str(self) -> &'static str {
        match self {
            PointKind::Infinity => "infinity",
            PointKind::Surviving => "surviving",
            PointKind::Glued => "glued",
            PointKind::Halving => "halving",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "infinity" => PointKind::Infinity,
            "surviving" => PointKind::Surviving,
            "glued" => PointKind::Glued,
            "halving" => PointKind::Halving,
            _ => return None,
        })
    }
}

/// Element of `C_2` labelling the two sheets of a glued pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheet {
    Identity,
    Flip,
}

/// A point, identified structurally.
///
/// `length` is the length of the big-system orbit the point was built on,
/// `copy` numbers the orbit among those of its kind and length, and `phase`
/// is the position along the orbit. Points of doubled systems append one
/// sheet bit per doubling to `layers`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub kind: PointKind,
    pub length: usize,
    pub copy: u64,
    pub sheet: Option<Sheet>,
    pub phase: usize,
    pub layers: Vec<u8>,
}

impl Point {
    pub fn infinity() -> Self {
        Self {
            kind: PointKind::Infinity,
            length: 1,
            copy: 1,
            sheet: None,
            phase: 0,
            layers: Vec::new(),
        }
    }

    fn plain(kind: PointKind, length: usize, copy: u64, phase: usize) -> Self {
        Self {
            kind,
            length,
            copy,
            sheet: None,
            phase,
            layers: Vec::new(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.kind == PointKind::Infinity
    }

    fn same_base(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.length == other.length
            && self.copy == other.copy
            && self.sheet == other.sheet
            && self.phase == other.phase
    }

    fn with_copy_offset(&self, offset: u64) -> Self {
        Self {
            copy: self.copy + offset,
            ..self.clone()
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sheet = match self.sheet {
            None => "-",
            Some(Sheet::Identity) => "e",
            Some(Sheet::Flip) => "i",
        };
        let layers: String = if self.layers.is_empty() {
            "-".into()
        } else {
            self.layers.iter().map(|b| char::from(b'0' + b)).collect()
        };
        write!(
            f,
            "{} {} {} {} {} {}",
            self.kind.as_str(),
            self.length,
            self.copy,
            sheet,
            self.phase,
            layers
        )
    }
}

/// Metric on points: `1/m` to `∞` from a point on an orbit of length `m`,
/// `1/min(m, n)` between distinct points on orbits of lengths `m` and `n`.
/// Each doubling layer on which the points differ adds 1.
///
/// The forward map and the involution of every system built here preserve
/// orbit lengths and fix `∞`, so both are isometries.
pub fn distance(x: &Point, y: &Point) -> BigRational {
    let base = if x.same_base(y) {
        BigRational::zero()
    } else if y.is_infinity() {
        BigRational::new(1.into(), x.length.into())
    } else if x.is_infinity() {
        BigRational::new(1.into(), y.length.into())
    } else {
        BigRational::new(1.into(), x.length.min(y.length).into())
    };
    let common = x.layers.len().min(y.layers.len());
    let differing = x.layers[..common]
        .iter()
        .zip(&y.layers[..common])
        .filter(|(a, b)| a != b)
        .count()
        + x.layers.len().abs_diff(y.layers.len());
    base + BigRational::from_integer(differing.into())
}

/// Read-only view of one invariant block of a system.
#[derive(Clone, Copy, Debug)]
pub struct Block<'a> {
    pub labels: &'a [Point],
    pub forward: &'a [usize],
    pub multiplicity: &'a BigUint,
}

/// Anything that can be presented as a disjoint union of permutation blocks.
pub trait Dynamics {
    fn blocks(&self) -> Vec<Block<'_>>;
}

/// A block of points closed under both the forward map and the involution,
/// repeated `multiplicity` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    labels: Vec<Point>,
    forward: Vec<usize>,
    involution: Vec<usize>,
    multiplicity: BigUint,
}

impl Component {
    pub fn new(
        labels: Vec<Point>,
        forward: Vec<usize>,
        involution: Vec<usize>,
        multiplicity: BigUint,
    ) -> Result<Self> {
        let len = labels.len();
        if forward.len() != len || involution.len() != len {
            return Err(Error::InvariantBreach(
                "component maps do not match its point count".into(),
            ));
        }
        if !is_permutation(&forward) {
            return Err(Error::InvariantBreach("forward map is not a bijection".into()));
        }
        for i in 0..len {
            let j = *involution.get(i).filter(|&&j| j < len).ok_or_else(|| {
                Error::InvariantBreach("involution leaves the component".into())
            })?;
            if involution[j] != i {
                return Err(Error::InvariantBreach(format!(
                    "involution is not an involution at {}",
                    labels[i]
                )));
            }
            if forward[involution[i]] != involution[forward[i]] {
                return Err(Error::InvariantBreach(format!(
                    "involution does not commute with the forward map at {}",
                    labels[i]
                )));
            }
        }
        Ok(Self {
            labels,
            forward,
            involution,
            multiplicity,
        })
    }

    pub fn labels(&self) -> &[Point] {
        &self.labels
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn multiplicity(&self) -> &BigUint {
        &self.multiplicity
    }
}

fn is_permutation(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&j| j < map.len() && !std::mem::replace(&mut seen[j], true))
}

/// Cycles of a permutation, each listed from its smallest element onwards.
pub fn cycles(forward: &[usize]) -> Vec<Vec<usize>> {
    let mut visited = vec![false; forward.len()];
    let mut out = Vec::new();
    for start in 0..forward.len() {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !visited[x] {
            visited[x] = true;
            cycle.push(x);
            x = forward[x];
        }
        out.push(cycle);
    }
    out
}

/// A system together with its commuting involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSystem {
    components: Vec<Component>,
}

/// Fully expanded system: every point listed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitSystem {
    pub points: Vec<Point>,
    pub forward: Vec<usize>,
    pub involution: Vec<usize>,
}

impl FiniteSystem {
    pub fn from_components(components: Vec<Component>) -> Result<Self> {
        let components: Vec<_> = components
            .into_iter()
            .filter(|c| !c.multiplicity.is_zero() && !c.labels.is_empty())
            .collect();
        if components.is_empty() {
            return Err(Error::InvariantBreach("system has no points".into()));
        }
        Ok(Self { components })
    }

    /// Builds a system from explicit maps, splitting it into the connected
    /// components of the group generated by the forward map and the
    /// involution.
    pub fn from_explicit(explicit: ExplicitSystem) -> Result<Self> {
        let ExplicitSystem {
            points,
            forward,
            involution,
        } = explicit;
        let len = points.len();
        if forward.len() != len || involution.len() != len {
            return Err(Error::InvariantBreach("map lengths differ from point count".into()));
        }
        if !is_permutation(&forward) || !is_permutation(&involution) {
            return Err(Error::InvariantBreach("maps must be bijections".into()));
        }
        let mut component_of = vec![usize::MAX; len];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for start in 0..len {
            if component_of[start] != usize::MAX {
                continue;
            }
            let id = members.len();
            let mut stack = vec![start];
            let mut list = Vec::new();
            component_of[start] = id;
            while let Some(x) = stack.pop() {
                list.push(x);
                for y in [forward[x], involution[x]] {
                    if component_of[y] == usize::MAX {
                        component_of[y] = id;
                        stack.push(y);
                    }
                }
            }
            list.sort_unstable();
            members.push(list);
        }
        let mut components = Vec::with_capacity(members.len());
        for list in members {
            let local: HashMap<usize, usize> =
                list.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            components.push(Component::new(
                list.iter().map(|&x| points[x].clone()).collect(),
                list.iter().map(|&x| local[&forward[x]]).collect(),
                list.iter().map(|&x| local[&involution[x]]).collect(),
                BigUint::one(),
            )?);
        }
        Self::from_components(components)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn point_count(&self) -> BigUint {
        self.components
            .iter()
            .map(|c| &c.multiplicity * c.labels.len())
            .sum()
    }

    /// Number of points fixed by the forward map.
    pub fn fixed_point_count(&self) -> BigUint {
        self.components
            .iter()
            .map(|c| {
                let fixed = (0..c.labels.len()).filter(|&i| c.forward[i] == i).count();
                &c.multiplicity * fixed
            })
            .sum()
    }

    pub fn infinity(&self) -> Option<&Point> {
        self.components
            .iter()
            .flat_map(|c| c.labels.iter())
            .find(|p| p.is_infinity())
    }

    /// Lists every point, refusing systems with more than `limit` points.
    pub fn expand(&self, limit: usize) -> Result<ExplicitSystem> {
        let total = self.point_count();
        if total > BigUint::from(limit) {
            return Err(Error::TooLarge {
                points: total.to_string(),
                limit,
            });
        }
        let mut out = ExplicitSystem {
            points: Vec::new(),
            forward: Vec::new(),
            involution: Vec::new(),
        };
        for c in &self.components {
            let copies = c.multiplicity.to_u64().expect("bounded by limit");
            for j in 0..copies {
                let base = out.points.len();
                out.points
                    .extend(c.labels.iter().map(|p| p.with_copy_offset(j)));
                out.forward.extend(c.forward.iter().map(|&k| base + k));
                out.involution.extend(c.involution.iter().map(|&k| base + k));
            }
        }
        Ok(out)
    }

    /// Line-oriented dump: a header, one point per line, then the forward map
    /// and the involution as explicit `from to` pairs.
    pub fn to_text(&self, limit: usize) -> Result<String> {
        let ex = self.expand(limit)?;
        let mut s = String::new();
        writeln!(s, "finite-system v1").unwrap();
        writeln!(s, "points {}", ex.points.len()).unwrap();
        for (i, p) in ex.points.iter().enumerate() {
            writeln!(s, "{i} {p}").unwrap();
        }
        writeln!(s, "T").unwrap();
        for (i, j) in ex.forward.iter().enumerate() {
            writeln!(s, "{i} {j}").unwrap();
        }
        writeln!(s, "iota").unwrap();
        for (i, j) in ex.involution.iter().enumerate() {
            writeln!(s, "{i} {j}").unwrap();
        }
        writeln!(s, "end").unwrap();
        Ok(s)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut expect = |want: &str| -> Result<(usize, &str)> {
            let (no, line) = lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("expected '{want}', found end of input")))?;
            Ok((no, line))
        };
        let (no, header) = expect("finite-system v1")?;
        if header != "finite-system v1" {
            return Err(Error::parse(no, "missing 'finite-system v1' header"));
        }
        let (no, count_line) = expect("points N")?;
        let count: usize = count_line
            .strip_prefix("points ")
            .and_then(|c| c.trim().parse().ok())
            .ok_or_else(|| Error::parse(no, "expected 'points N'"))?;
        let mut points = Vec::with_capacity(count);
        for i in 0..count {
            let (no, line) = expect("point")?;
            points.push(parse_point_line(no, i, line)?);
        }
        let mut read_map = |name: &str| -> Result<Vec<usize>> {
            let (no, line) = expect(name)?;
            if line != name {
                return Err(Error::parse(no, format!("expected '{name}'")));
            }
            let mut map = vec![usize::MAX; count];
            for _ in 0..count {
                let (no, line) = expect("pair")?;
                let mut it = line.split_whitespace().map(str::parse::<usize>);
                match (it.next(), it.next(), it.next()) {
                    (Some(Ok(i)), Some(Ok(j)), None) if i < count && j < count => {
                        if map[i] != usize::MAX {
                            return Err(Error::parse(no, format!("{i} mapped twice")));
                        }
                        map[i] = j;
                    }
                    _ => return Err(Error::parse(no, "expected 'from to' with valid indices")),
                }
            }
            Ok(map)
        };
        let forward = read_map("T")?;
        let involution = read_map("iota")?;
        let (no, end) = expect("end")?;
        if end != "end" {
            return Err(Error::parse(no, "expected 'end'"));
        }
        Self::from_explicit(ExplicitSystem {
            points,
            forward,
            involution,
        })
    }
}

fn parse_point_line(no: usize, index: usize, line: &str) -> Result<Point> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 7 {
        return Err(Error::parse(no, "point lines have 7 fields"));
    }
    if fields[0].parse::<usize>().ok() != Some(index) {
        return Err(Error::parse(no, format!("expected point index {index}")));
    }
    let bad = |what: &str| Error::parse(no, format!("invalid {what}"));
    let kind = PointKind::parse(fields[1]).ok_or_else(|| bad("kind"))?;
    let length = fields[2].parse().map_err(|_| bad("length"))?;
    let copy = fields[3].parse().map_err(|_| bad("copy"))?;
    let sheet = match fields[4] {
        "-" => None,
        "e" => Some(Sheet::Identity),
        "i" => Some(Sheet::Flip),
        _ => return Err(bad("group element")),
    };
    let phase = fields[5].parse().map_err(|_| bad("phase"))?;
    let layers = match fields[6] {
        "-" => Vec::new(),
        l => l
            .bytes()
            .map(|b| match b {
                b'0' | b'1' => Ok(b - b'0'),
                _ => Err(bad("layers")),
            })
            .collect::<Result<_>>()?,
    };
    Ok(Point {
        kind,
        length,
        copy,
        sheet,
        phase,
        layers,
    })
}

impl Dynamics for FiniteSystem {
    fn blocks(&self) -> Vec<Block<'_>> {
        self.components
            .iter()
            .map(|c| Block {
                labels: &c.labels,
                forward: &c.forward,
                multiplicity: &c.multiplicity,
            })
            .collect()
    }
}

fn rotation(len: usize, step: usize) -> Vec<usize> {
    (0..len).map(|k| (k + step) % len).collect()
}

/// Realizes a behavior decomposition as a concrete system.
///
/// `∞` is one of the `s_1` surviving fixed points; the remaining `s_1 - 1`
/// are ordinary surviving points of length 1.
pub fn build_system(dec: &BehaviorDecomposition) -> Result<FiniteSystem> {
    if dec.surviving()[1].is_zero() {
        return Err(Error::EmptyFixedPoint);
    }
    let mut components = vec![Component::new(
        vec![Point::infinity()],
        vec![0],
        vec![0],
        BigUint::one(),
    )?];
    for n in 1..=dec.horizon() {
        let mut s = dec.surviving()[n].clone();
        if n == 1 {
            s -= 1u32;
        }
        if !s.is_zero() {
            components.push(Component::new(
                (0..n)
                    .map(|k| Point::plain(PointKind::Surviving, n, 1, k))
                    .collect(),
                rotation(n, 1),
                (0..n).collect(),
                s,
            )?);
        }
        let g = &dec.glued_pairs()[n];
        if !g.is_zero() {
            let labels = [Sheet::Identity, Sheet::Flip]
                .into_iter()
                .flat_map(|sheet| {
                    (0..n).map(move |k| Point {
                        sheet: Some(sheet),
                        ..Point::plain(PointKind::Glued, n, 1, k)
                    })
                })
                .collect();
            let forward = (0..2 * n).map(|i| (i / n) * n + (i % n + 1) % n).collect();
            let involution = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
            components.push(Component::new(labels, forward, involution, g.clone())?);
        }
        let h = &dec.halving()[n];
        if !h.is_zero() {
            let len = 2 * n;
            components.push(Component::new(
                (0..len)
                    .map(|k| Point::plain(PointKind::Halving, len, 1, k))
                    .collect(),
                rotation(len, 1),
                rotation(len, n),
                h.clone(),
            )?);
        }
    }
    FiniteSystem::from_components(components)
}

/// Number of forward-map cycles of each length, by cycle decomposition.
pub fn count_orbits<S: Dynamics + ?Sized>(sys: &S) -> CountSequence {
    let mut counts: Vec<BigUint> = Vec::new();
    for block in sys.blocks() {
        for cycle in cycles(block.forward) {
            let n = cycle.len();
            if counts.len() < n {
                counts.resize(n, BigUint::zero());
            }
            counts[n - 1] += block.multiplicity;
        }
    }
    CountSequence::new(counts).unwrap_or_else(|_| CountSequence::zeros(1))
}

/// Compares brute-force counts of `sys`, of its quotient and of its orbit
/// classification with the analytic counts of `dec`.
pub fn cross_check(dec: &BehaviorDecomposition, sys: &FiniteSystem) -> Result<()> {
    let a = count_orbits(sys);
    let want_a = dec.realized_big_counts();
    if !a.same_counts(&want_a) {
        return Err(Error::CrossCheck(format!(
            "simulated orbit counts {a} differ from analytic {want_a}"
        )));
    }
    let b = count_orbits(&quotient(sys)?);
    let want_b = quotient_counts(dec);
    if !b.same_counts(&want_b) {
        return Err(Error::CrossCheck(format!(
            "simulated quotient counts {b} differ from analytic {want_b}"
        )));
    }
    let raw = classify_orbits(sys)?;
    if !raw.same_counts(&dec.to_raw()) {
        return Err(Error::CrossCheck(
            "orbit classification differs from the decomposition".into(),
        ));
    }
    Ok(())
}

/// Sorts every cycle into surviving, glued or halving by looking only at how
/// the involution acts on it. Glued orbits are counted individually.
pub fn classify_orbits(sys: &FiniteSystem) -> Result<RawBehavior> {
    let mut s: Vec<BigUint> = Vec::new();
    let mut g: Vec<BigUint> = Vec::new();
    let mut h: Vec<BigUint> = Vec::new();
    let bump = |v: &mut Vec<BigUint>, n: usize, m: &BigUint| {
        if v.len() < n {
            v.resize(n, BigUint::zero());
        }
        v[n - 1] += m;
    };
    for c in &sys.components {
        let cyc = cycles(&c.forward);
        let mut cycle_of = vec![0; c.labels.len()];
        for (id, cycle) in cyc.iter().enumerate() {
            for &x in cycle {
                cycle_of[x] = id;
            }
        }
        for (id, cycle) in cyc.iter().enumerate() {
            let n = cycle.len();
            if cycle.iter().all(|&x| c.involution[x] == x) {
                bump(&mut s, n, &c.multiplicity);
                continue;
            }
            let image = cycle_of[c.involution[cycle[0]]];
            if cycle.iter().any(|&x| cycle_of[c.involution[x]] != image) {
                return Err(Error::InvariantBreach(format!(
                    "involution splits the cycle through {}",
                    c.labels[cycle[0]]
                )));
            }
            if image == id {
                let half_turn = n % 2 == 0
                    && cycle.iter().all(|&x| {
                        let shifted = (0..n / 2).fold(x, |y, _| c.forward[y]);
                        c.involution[x] == shifted
                    });
                if !half_turn {
                    return Err(Error::InvariantBreach(format!(
                        "cycle through {} is preserved but not by a half-turn",
                        c.labels[cycle[0]]
                    )));
                }
                bump(&mut h, n, &c.multiplicity);
            } else if cyc[image].len() == n {
                bump(&mut g, n, &c.multiplicity);
            } else {
                return Err(Error::InvariantBreach(format!(
                    "cycle through {} is glued to a cycle of another length",
                    c.labels[cycle[0]]
                )));
            }
        }
    }
    let horizon = s.len().max(g.len()).max(h.len());
    let finish = |mut v: Vec<BigUint>| {
        v.resize(horizon, BigUint::zero());
        CountSequence::new(v).expect("systems have points")
    };
    Ok(RawBehavior {
        surviving: finish(s),
        glued: finish(g),
        halving: finish(h),
    })
}

/// One component of a quotient: classes `{x, ι(x)}` of a source component,
/// each labelled by its smaller member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientComponent {
    labels: Vec<Point>,
    members: Vec<(usize, usize)>,
    forward: Vec<usize>,
    class_of: Vec<usize>,
    multiplicity: BigUint,
}

impl QuotientComponent {
    pub fn labels(&self) -> &[Point] {
        &self.labels
    }

    /// The source points `(x, ι(x))` of each class.
    pub fn members(&self) -> &[(usize, usize)] {
        &self.members
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    /// The class containing source point `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }
}

/// The system induced on ι-classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSystem {
    components: Vec<QuotientComponent>,
}

impl QuotientSystem {
    /// Components, in the same order as the source system's.
    pub fn components(&self) -> &[QuotientComponent] {
        &self.components
    }

    pub fn class_count(&self) -> BigUint {
        self.components
            .iter()
            .map(|c| &c.multiplicity * c.labels.len())
            .sum()
    }
}

impl Dynamics for QuotientSystem {
    fn blocks(&self) -> Vec<Block<'_>> {
        self.components
            .iter()
            .map(|c| Block {
                labels: &c.labels,
                forward: &c.forward,
                multiplicity: &c.multiplicity,
            })
            .collect()
    }
}

/// Forms the quotient by the involution, checking that the induced map is
/// well defined: points in one class must be sent into one class.
pub fn quotient(sys: &FiniteSystem) -> Result<QuotientSystem> {
    let mut components = Vec::with_capacity(sys.components.len());
    for c in &sys.components {
        let len = c.labels.len();
        let mut class_of = vec![usize::MAX; len];
        let mut members = Vec::new();
        for x in 0..len {
            if class_of[x] == usize::MAX {
                let y = c.involution[x];
                class_of[x] = members.len();
                class_of[y] = members.len();
                members.push((x, y));
            }
        }
        let mut forward = Vec::with_capacity(members.len());
        for &(x, y) in &members {
            let (tx, ty) = (class_of[c.forward[x]], class_of[c.forward[y]]);
            if tx != ty {
                return Err(Error::IllDefined(format!(
                    "{} and {} share a class but their images do not",
                    c.labels[x], c.labels[y]
                )));
            }
            forward.push(tx);
        }
        components.push(QuotientComponent {
            labels: members.iter().map(|&(x, _)| c.labels[x].clone()).collect(),
            members,
            forward,
            class_of,
            multiplicity: c.multiplicity.clone(),
        });
    }
    Ok(QuotientSystem { components })
}

/// Doubles `(Y, S)` to `Y × {0, 1}` with `T(y, e) = (S(y), e + 1)` and the
/// involution `(y, e) ↦ (y, e + 1)`, whose quotient is a copy of `(Y, S)`.
///
/// The doubled system has no fixed points: `F_T(n)` is `0` for odd `n` and
/// `2 F_S(n)` for even `n`.
pub fn double_system<S: Dynamics + ?Sized>(sys: &S) -> Result<FiniteSystem> {
    let mut components = Vec::new();
    for block in sys.blocks() {
        let len = block.labels.len();
        let labels = block
            .labels
            .iter()
            .flat_map(|p| {
                (0..2u8).map(move |e| {
                    let mut q = p.clone();
                    q.layers.push(e);
                    q
                })
            })
            .collect();
        let forward = (0..2 * len)
            .map(|i| 2 * block.forward[i / 2] + (1 - i % 2))
            .collect();
        let involution = (0..2 * len).map(|i| i ^ 1).collect();
        components.push(Component::new(
            labels,
            forward,
            involution,
            block.multiplicity.clone(),
        )?);
    }
    FiniteSystem::from_components(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fixed_points_from_orbits;

    fn seq(v: &[u64]) -> CountSequence {
        CountSequence::from_u64s(v).unwrap()
    }

    fn dec(s: &[u64], g: &[u64], h: &[u64]) -> BehaviorDecomposition {
        BehaviorDecomposition::from_u64s(s, g, h).unwrap()
    }

    #[test]
    fn minimal_system_is_a_single_point() {
        let sys = build_system(&dec(&[1], &[0], &[0])).unwrap();
        let ex = sys.expand(10).unwrap();
        assert_eq!(ex.points, vec![Point::infinity()]);
        assert_eq!(ex.forward, vec![0]);
        assert_eq!(ex.involution, vec![0]);
        assert_eq!(count_orbits(&sys), seq(&[1]));
        assert_eq!(sys.infinity(), Some(&Point::infinity()));
    }

    #[test]
    fn glued_pair_of_fixed_points() {
        let sys = build_system(&dec(&[1], &[1], &[0])).unwrap();
        assert_eq!(sys.point_count(), BigUint::from(3u32));
        let ex = sys.expand(10).unwrap();
        let glued: Vec<usize> = (0..3).filter(|&i| ex.points[i].kind == PointKind::Glued).collect();
        assert_eq!(glued.len(), 2);
        for &i in &glued {
            assert_eq!(ex.forward[i], i);
            assert_ne!(ex.involution[i], i);
        }
        let raw = classify_orbits(&sys).unwrap();
        assert_eq!(raw.surviving, seq(&[1]));
        assert_eq!(raw.glued, seq(&[2]));
        assert_eq!(raw.halving, seq(&[0]));
        let q = quotient(&sys).unwrap();
        assert_eq!(count_orbits(&q), seq(&[2]));
    }

    #[test]
    fn halving_two_cycle() {
        let sys = build_system(&dec(&[1], &[0], &[1])).unwrap();
        let ex = sys.expand(10).unwrap();
        assert_eq!(ex.points.len(), 3);
        let p = 1;
        let q = ex.forward[p];
        assert_ne!(p, q);
        assert_eq!(ex.forward[q], p);
        assert_eq!(ex.involution[p], q);
        let raw = classify_orbits(&sys).unwrap();
        assert_eq!(raw.halving, seq(&[0, 1]));
        let quot = quotient(&sys).unwrap();
        assert_eq!(count_orbits(&quot), seq(&[2]));
    }

    #[test]
    fn surviving_cycles_pass_through_quotient() {
        let sys = build_system(&dec(&[1, 0, 2], &[0], &[0])).unwrap();
        assert_eq!(count_orbits(&sys), seq(&[1, 0, 2]));
        let q = quotient(&sys).unwrap();
        assert_eq!(q.class_count(), sys.point_count());
        assert_eq!(count_orbits(&q), seq(&[1, 0, 2]));
    }

    #[test]
    fn identity_involution_means_everything_survives() {
        let points: Vec<Point> = (0..3).map(|k| Point::plain(PointKind::Surviving, 3, 1, k)).collect();
        let sys = FiniteSystem::from_explicit(ExplicitSystem {
            points,
            forward: vec![1, 2, 0],
            involution: vec![0, 1, 2],
        })
        .unwrap();
        let raw = classify_orbits(&sys).unwrap();
        assert_eq!(raw.surviving, seq(&[0, 0, 1]));
        assert!(raw.glued.same_counts(&seq(&[0])));
        assert!(raw.halving.same_counts(&seq(&[0])));
    }

    #[test]
    fn rejects_non_commuting_involution() {
        let points: Vec<Point> = (0..3).map(|k| Point::plain(PointKind::Surviving, 3, 1, k)).collect();
        let err = FiniteSystem::from_explicit(ExplicitSystem {
            points,
            forward: vec![1, 2, 0],
            involution: vec![1, 0, 2],
        })
        .unwrap_err();
        assert!(matches!(err, Error::InvariantBreach(_)));
    }

    #[test]
    fn distance_examples() {
        let inf = Point::infinity();
        let x3 = Point::plain(PointKind::Surviving, 3, 1, 0);
        let x2 = Point::plain(PointKind::Halving, 2, 1, 1);
        let y5 = Point::plain(PointKind::Surviving, 5, 2, 4);
        assert_eq!(distance(&x3, &inf), BigRational::new(1.into(), 3.into()));
        assert_eq!(distance(&inf, &x3), BigRational::new(1.into(), 3.into()));
        assert_eq!(distance(&x3, &x3), BigRational::zero());
        assert_eq!(distance(&x2, &y5), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn doubling_a_fixed_point_gives_a_halving_two_cycle() {
        let sys = build_system(&dec(&[1], &[0], &[0])).unwrap();
        let doubled = double_system(&sys).unwrap();
        assert_eq!(doubled.fixed_point_count(), BigUint::zero());
        assert_eq!(count_orbits(&doubled), seq(&[0, 1]));
        let raw = classify_orbits(&doubled).unwrap();
        assert_eq!(raw.halving, seq(&[0, 1]));
        let f = fixed_points_from_orbits(&count_orbits(&doubled));
        assert_eq!(f, seq(&[0, 2]));
    }

    #[test]
    fn doubled_fixed_points_follow_parity_rule() {
        // F_S = (1, 3): one fixed point and one 2-cycle
        let sys = build_system(&dec(&[1, 1], &[0, 0], &[0, 0])).unwrap();
        assert_eq!(fixed_points_from_orbits(&count_orbits(&sys)), seq(&[1, 3]));
        let doubled = double_system(&sys).unwrap();
        let f = fixed_points_from_orbits(&count_orbits(&doubled).with_horizon(4));
        assert_eq!(f, seq(&[0, 6, 0, 6]));
    }

    #[test]
    fn text_round_trip() {
        let sys = build_system(&dec(&[2, 1], &[1, 0], &[1, 1])).unwrap();
        let text = sys.to_text(1000).unwrap();
        assert!(text.starts_with("finite-system v1\npoints 12\n0 infinity 1 1 - 0 -\n"));
        let back = FiniteSystem::from_text(&text).unwrap();
        assert_eq!(back.point_count(), sys.point_count());
        assert_eq!(count_orbits(&back), count_orbits(&sys));
        assert_eq!(classify_orbits(&back).unwrap(), classify_orbits(&sys).unwrap());
        assert_eq!(back.to_text(1000).unwrap(), text);
    }

    #[test]
    fn text_parse_errors() {
        assert!(matches!(FiniteSystem::from_text(""), Err(Error::Parse { .. })));
        let bad = "finite-system v1\npoints 1\n0 surviving 1 1 - 0 -\nT\n0 0\niota\n0 3\nend\n";
        assert!(matches!(FiniteSystem::from_text(bad), Err(Error::Parse { line: 7, .. })));
    }

    #[test]
    fn expansion_is_capped() {
        let big = BehaviorDecomposition::new(
            seq(&[1, 0, 0]),
            seq(&[0, 0, 0]),
            CountSequence::new(vec![0u32.into(), 0u32.into(), BigUint::from(10u32).pow(30)]).unwrap(),
        )
        .unwrap();
        let sys = build_system(&big).unwrap();
        assert_eq!(count_orbits(&sys)[6], BigUint::from(10u32).pow(30));
        assert!(matches!(sys.expand(1000), Err(Error::TooLarge { .. })));
    }
}
