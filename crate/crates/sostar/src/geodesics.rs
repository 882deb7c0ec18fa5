//! Exact straight-line trajectories on origamis.
//!
//! Coordinates are rationals inside unit squares. A trajectory is traced
//! square by square until it returns to its starting side point, logging
//! every side crossing in traversal order with a global orientation sign:
//! a crossing of curve `b` by curve `a` counts `sign(det[dir_a, dir_b])`,
//! so crossings of rightward horizontal sides by an upward trajectory all
//! carry the same sign.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::cover::{LabeledRowModel, SideLabel};
use crate::origami::{act, horizontal_cylinders, Gl2Word, Origami};
use crate::rat::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("trajectory ran into a vertex")]
    VertexHit,
    #[error("trajectories share a point or overlap")]
    TangencyDetected,
    #[error("trace exceeded the step budget")]
    Overrun,
    #[error("family does not cover every side with the expected multiplicity")]
    IncompleteFamily,
    #[error("cores have different holonomy multiples")]
    UnequalLengths,
    #[error("two cores pass through a common point")]
    DuplicateCore,
    #[error("cylinder count disagrees with the sheared decomposition: {0} vs {1}")]
    CylinderCountMismatch(usize, usize),
}

/// A primitive rational direction; orientation is significant.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub struct Direction {
    pub p: i64,
    pub q: i64,
}

impl Direction {
    pub fn new(p: i64, q: i64) -> Direction {
        assert!(p != 0 || q != 0, "zero direction");
        let g = {
            let (mut a, mut b) = (p.abs(), q.abs());
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a
        };
        assert_eq!(g, 1, "direction must be primitive");
        Direction { p, q }
    }

    pub fn det_with(self, o: Direction) -> i64 {
        self.p * o.q - self.q * o.p
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

/// Canonical side names: every horizontal side is the bottom of exactly one
/// square, every vertical side the left of one.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Side {
    Bottom(u32),
    Left(u32),
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub side: Side,
    pub sign: i8,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    pub square: u32,
    pub entry: Point,
    pub exit: Point,
}

/// Starting point on a square side, with the direction entering the square.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Start {
    pub square: u32,
    pub point: Point,
}

impl Start {
    pub fn on_bottom(square: u32, x0: Rat) -> Start {
        Start {
            square,
            point: Point {
                x: x0,
                y: Rat::ZERO,
            },
        }
    }

    pub fn on_left(square: u32, y0: Rat) -> Start {
        Start {
            square,
            point: Point {
                x: Rat::ZERO,
                y: y0,
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub dir: Direction,
    pub start: Start,
    pub segments: Vec<Segment>,
    /// All side crossings in traversal order, starting side included once.
    pub crossings: Vec<Crossing>,
    /// Total displacement is `holonomy_multiple · dir`.
    pub holonomy_multiple: i64,
}

impl Trajectory {
    pub fn horizontal_crossings(&self) -> usize {
        self.crossings
            .iter()
            .filter(|c| matches!(c.side, Side::Bottom(_)))
            .count()
    }

    pub fn vertical_crossings(&self) -> usize {
        self.crossings
            .iter()
            .filter(|c| matches!(c.side, Side::Left(_)))
            .count()
    }
}

/// Deterministic dyadic basepoint offsets: 1/2, 1/4, 3/4, 1/8, 3/8, …
pub fn basepoint_schedule() -> impl Iterator<Item = Rat> {
    (1..=6u32).flat_map(|level| {
        let den = 1i64 << level;
        (1..den).step_by(2).map(move |num| Rat::new(num, den))
    })
}

/// Trace from the bottom side of `square`, advancing through the offset
/// schedule on a vertex hit; gives up after 64 attempts.
///
/// For directions `(P, 2)` with odd `P` the offsets with denominator four
/// never meet a vertex, so the schedule terminates on its second entry in
/// the main pipeline.
pub fn trace_with_schedule(
    o: &Origami,
    dir: Direction,
    square: u32,
) -> Result<Trajectory, TraceError> {
    for x0 in basepoint_schedule().take(64) {
        match trace(o, dir, Start::on_bottom(square, x0)) {
            Err(TraceError::VertexHit) => continue,
            other => return other,
        }
    }
    Err(TraceError::VertexHit)
}

fn sign_of(x: i64) -> i8 {
    match x.cmp(&0) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

/// Trace the closed straight-line trajectory through `start`.
pub fn trace(o: &Origami, dir: Direction, start: Start) -> Result<Trajectory, TraceError> {
    let (p, q) = (dir.p, dir.q);
    let h_sign = sign_of(-q); // crossing a rightward side
    let v_sign = sign_of(p); // crossing an upward side
    let start_side = if start.point.y == Rat::ZERO && q > 0 {
        Side::Bottom(start.square)
    } else if start.point.x == Rat::ZERO && p > 0 {
        Side::Left(start.square)
    } else {
        panic!("start point must lie on a side with the direction entering");
    };

    let mut crossings = vec![Crossing {
        side: start_side,
        sign: match start_side {
            Side::Bottom(_) => h_sign,
            Side::Left(_) => v_sign,
        },
    }];
    let mut segments = Vec::new();

    let mut square = start.square;
    let mut point = start.point;
    let budget = o.n() as u64 * ((p.unsigned_abs() + q.unsigned_abs()) * 64 + 64);
    for _ in 0..budget {
        // earliest positive wall time; wall: 0 top, 1 bottom, 2 right, 3 left
        fn push(t: Rat, wall: u8, best: &mut Option<(Rat, u8)>) {
            match best {
                Some((bt, _)) if *bt < t => {}
                Some((bt, _)) if *bt == t => *best = Some((t, 255)),
                _ => *best = Some((t, wall)),
            }
        }
        let mut best: Option<(Rat, u8)> = None;
        if q > 0 {
            push(Rat::ONE.sub(point.y).div(Rat::from_int(q)), 0, &mut best);
        } else if q < 0 {
            push(point.y.div(Rat::from_int(-q)), 1, &mut best);
        }
        if p > 0 {
            push(Rat::ONE.sub(point.x).div(Rat::from_int(p)), 2, &mut best);
        } else if p < 0 {
            push(point.x.div(Rat::from_int(-p)), 3, &mut best);
        }
        let (t, wall) = best.expect("primitive direction has an exit wall");
        if wall == 255 {
            return Err(TraceError::VertexHit);
        }
        let exit = Point {
            x: point.x.add(t.mul(Rat::from_int(p))),
            y: point.y.add(t.mul(Rat::from_int(q))),
        };
        if exit.x < Rat::ZERO || exit.x > Rat::ONE || exit.y < Rat::ZERO || exit.y > Rat::ONE {
            return Err(TraceError::Overrun);
        }
        segments.push(Segment {
            square,
            entry: point,
            exit,
        });
        let (next_square, next_point, crossing) = match wall {
            0 => {
                let ns = o.v().apply(square);
                (
                    ns,
                    Point {
                        x: exit.x,
                        y: Rat::ZERO,
                    },
                    Crossing {
                        side: Side::Bottom(ns),
                        sign: h_sign,
                    },
                )
            }
            1 => {
                let ns = o.v().inverse().apply(square);
                (
                    ns,
                    Point {
                        x: exit.x,
                        y: Rat::ONE,
                    },
                    Crossing {
                        side: Side::Bottom(square),
                        sign: h_sign,
                    },
                )
            }
            2 => {
                let ns = o.h().apply(square);
                (
                    ns,
                    Point {
                        x: Rat::ZERO,
                        y: exit.y,
                    },
                    Crossing {
                        side: Side::Left(ns),
                        sign: v_sign,
                    },
                )
            }
            _ => {
                let ns = o.h().inverse().apply(square);
                (
                    ns,
                    Point {
                        x: Rat::ONE,
                        y: exit.y,
                    },
                    Crossing {
                        side: Side::Left(square),
                        sign: v_sign,
                    },
                )
            }
        };
        if next_square == start.square && next_point == start.point {
            let horizontal = crossings
                .iter()
                .filter(|c| matches!(c.side, Side::Bottom(_)))
                .count() as i64;
            let vertical = crossings.len() as i64 - horizontal;
            let m = if q != 0 {
                horizontal / q.abs()
            } else {
                vertical / p.abs()
            };
            if horizontal != m * q.abs() || vertical != m * p.abs() || m == 0 {
                return Err(TraceError::Overrun);
            }
            return Ok(Trajectory {
                dir,
                start,
                segments,
                crossings,
                holonomy_multiple: m,
            });
        }
        crossings.push(crossing);
        square = next_square;
        point = next_point;
    }
    Err(TraceError::Overrun)
}

/// Signed crossing counts of a trajectory with the labeled sides of a model.
///
/// Internal vertical sides carry no label and are skipped; row-end sides map
/// to their ζ labels.
pub fn crossings_with_labels(
    t: &Trajectory,
    model: &LabeledRowModel,
) -> std::collections::BTreeMap<SideLabel, i64> {
    let mut out = std::collections::BTreeMap::new();
    for c in labeled_crossing_sequence(t, model) {
        *out.entry(c.0).or_insert(0) += c.1 as i64;
    }
    out
}

/// Ordered `(label, sign)` sequence of labeled-side crossings.
pub fn labeled_crossing_sequence(t: &Trajectory, model: &LabeledRowModel) -> Vec<(SideLabel, i8)> {
    t.crossings
        .iter()
        .filter_map(|c| match c.side {
            Side::Bottom(sq) => Some((
                model.bottom_label(model.row_of(sq), model.column_of(sq)),
                c.sign,
            )),
            Side::Left(sq) if model.column_of(sq) == 0 => {
                Some((model.zeta_left(model.row_of(sq)), c.sign))
            }
            Side::Left(_) => None,
        })
        .collect()
}

/// Signed geometric intersection number of two closed trajectories on the
/// same origami.
///
/// Crossing points on square boundaries are seen by several segment pairs;
/// each candidate point is moved to a canonical square representative and
/// deduplicated, so the count is exact regardless of where crossings land.
pub fn trajectory_intersection(
    o: &Origami,
    t1: &Trajectory,
    t2: &Trajectory,
) -> Result<i64, TraceError> {
    let det = t1.dir.det_with(t2.dir);
    if det == 0 {
        return Ok(0);
    }
    let sign = sign_of(det) as i64;
    let mut buckets: HashMap<u32, Vec<&Segment>> = HashMap::new();
    for seg in &t2.segments {
        buckets.entry(seg.square).or_default().push(seg);
    }
    let d1 = (Rat::from_int(t1.dir.p), Rat::from_int(t1.dir.q));
    let d2 = (Rat::from_int(t2.dir.p), Rat::from_int(t2.dir.q));
    let cross = |ax: Rat, ay: Rat, bx: Rat, by: Rat| ax.mul(by).sub(ay.mul(bx));
    let denom = cross(d1.0, d1.1, d2.0, d2.1);
    let mut points: HashSet<(u32, Point)> = HashSet::new();
    for sa in &t1.segments {
        let Some(cands) = buckets.get(&sa.square) else {
            continue;
        };
        let la = sa.exit.x.sub(sa.entry.x);
        let ka = sa.exit.y.sub(sa.entry.y);
        for sb in cands {
            // solve entry_a + t·d1 = entry_b + u·d2 in square coordinates
            let rx = sb.entry.x.sub(sa.entry.x);
            let ry = sb.entry.y.sub(sa.entry.y);
            let t = cross(rx, ry, d2.0, d2.1).div(denom);
            let u = cross(rx, ry, d1.0, d1.1).div(denom);
            // rescale to the actual segment lengths
            let ta = if !la.is_zero() {
                t.mul(d1.0).div(la)
            } else {
                t.mul(d1.1).div(ka)
            };
            let lb = sb.exit.x.sub(sb.entry.x);
            let kb = sb.exit.y.sub(sb.entry.y);
            let ub = if !lb.is_zero() {
                u.mul(d2.0).div(lb)
            } else {
                u.mul(d2.1).div(kb)
            };
            let inside = |v: Rat| v >= Rat::ZERO && v <= Rat::ONE;
            if !(inside(ta) && inside(ub)) {
                continue;
            }
            let mut square = sa.square;
            let mut x = sa.entry.x.add(ta.mul(la));
            let mut y = sa.entry.y.add(ta.mul(ka));
            if y == Rat::ONE {
                square = o.v().apply(square);
                y = Rat::ZERO;
            }
            if x == Rat::ONE {
                square = o.h().apply(square);
                x = Rat::ZERO;
            }
            if (x == Rat::ZERO && y == Rat::ZERO)
                || x < Rat::ZERO
                || y < Rat::ZERO
                || x > Rat::ONE
                || y > Rat::ONE
            {
                // a crossing at a vertex means a trajectory passed through
                // one, which the basepoint schedule excludes
                return Err(TraceError::TangencyDetected);
            }
            points.insert((square, Point { x, y }));
        }
    }
    Ok(sign * points.len() as i64)
}

#[derive(Clone)]
pub struct CylinderFamily {
    pub dir: Direction,
    pub cores: Vec<Trajectory>,
    pub holonomy_multiple: i64,
}

/// Trace all cores from the given starts and certify that they form the
/// complete cylinder decomposition in `dir`.
///
/// Completeness is exact: the union of cores must cross every horizontal
/// side `|q|` times and every vertical side `|p|` times. The cylinder count
/// is cross-checked against the horizontal decomposition of the sheared
/// origami.
pub fn cylinder_family(
    o: &Origami,
    dir: Direction,
    starts: &[Start],
) -> Result<CylinderFamily, TraceError> {
    let mut cores = Vec::with_capacity(starts.len());
    for &s in starts {
        cores.push(trace(o, dir, s)?);
    }
    let m = cores[0].holonomy_multiple;
    if cores.iter().any(|c| c.holonomy_multiple != m) {
        return Err(TraceError::UnequalLengths);
    }
    let mut states: HashSet<(u32, Point)> = HashSet::new();
    for core in &cores {
        for seg in &core.segments {
            if !states.insert((seg.square, seg.entry)) {
                return Err(TraceError::DuplicateCore);
            }
        }
    }
    let mut tallies: HashMap<Side, i64> = HashMap::new();
    for core in &cores {
        for c in &core.crossings {
            *tallies.entry(c.side).or_insert(0) += 1;
        }
    }
    for sq in 0..o.n() as u32 {
        if tallies.get(&Side::Bottom(sq)).copied().unwrap_or(0) != dir.q.abs()
            || tallies.get(&Side::Left(sq)).copied().unwrap_or(0) != dir.p.abs()
        {
            return Err(TraceError::IncompleteFamily);
        }
    }
    let word = direction_reduction_word(dir);
    let sheared = act(o, &word);
    let expected = horizontal_cylinders(&sheared).len();
    if expected != cores.len() {
        return Err(TraceError::CylinderCountMismatch(cores.len(), expected));
    }
    Ok(CylinderFamily {
        dir,
        cores,
        holonomy_multiple: m,
    })
}

/// A word whose matrix maps `dir` to `(±1, 0)`, by the Euclidean algorithm.
pub fn direction_reduction_word(dir: Direction) -> Gl2Word {
    let (mut p, mut q) = (dir.p, dir.q);
    let mut word = Gl2Word::empty();
    if p == 0 {
        word = word.pre_t(1);
        p += q;
    }
    while q != 0 {
        let b = -q.div_euclid(p);
        if b != 0 {
            word = word.pre_s(b);
            q += b * p;
        }
        if q == 0 {
            break;
        }
        let a = -p.div_euclid(q);
        if a != 0 {
            word = word.pre_t(a);
            p += a * q;
        }
        if p == 0 {
            // gcd reached on the q side; rotate once
            word = word.pre_t(1);
            p += q;
        }
    }
    debug_assert_eq!(p.abs(), 1);
    let m = word.eval();
    debug_assert_eq!(m[0][0] * dir.p + m[0][1] * dir.q, p);
    debug_assert_eq!(m[1][0] * dir.p + m[1][1] * dir.q, 0);
    word
}

/// TSV dump: one line per segment with square-local coordinates.
pub fn trajectory_tsv(t: &Trajectory) -> String {
    use std::fmt::Write;
    let mut out = String::from("square\tentry_x\tentry_y\texit_x\texit_y\n");
    for s in &t.segments {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            s.square, s.entry.x, s.entry.y, s.exit.x, s.exit.y
        )
        .unwrap();
    }
    out
}

/// SVG dump of a trajectory over a row-model layout (rows stacked, columns
/// left to right), for visual comparison of the sheared models.
pub fn trajectory_svg(t: &Trajectory, model: &LabeledRowModel) -> String {
    use std::fmt::Write;
    let d = model.d as f64;
    let scale = 40.0;
    let width = d * scale + 20.0;
    let height = 8.0 * scale + 20.0;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">",
        width, height
    )
    .unwrap();
    for row in 0..8u64 {
        for col in 0..model.d {
            writeln!(
                out,
                "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#ccc\"/>",
                10.0 + col as f64 * scale,
                10.0 + row as f64 * scale,
                scale,
                scale
            )
            .unwrap();
        }
    }
    let as_f = |r: Rat| r.num() as f64 / r.den() as f64;
    for seg in &t.segments {
        let row = (seg.square as u64 / model.d) as f64;
        let col = (seg.square as u64 % model.d) as f64;
        writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#c33\" stroke-width=\"1.5\"/>",
            10.0 + (col + as_f(seg.entry.x)) * scale,
            10.0 + (row + 1.0 - as_f(seg.entry.y)) * scale,
            10.0 + (col + as_f(seg.exit.x)) * scale,
            10.0 + (row + 1.0 - as_f(seg.exit.y)) * scale,
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
