//! Square-tiled surfaces as permutation pairs.
//!
//! An origami is a pair `(h, v)` of permutations of a finite square set:
//! `h(s)` is the square to the right of `s` and `v(s)` the square above it.
//! This module provides the staircase family, vertex/stratum data, the
//! `SL(2,Z)` action through the generators `T` and `S`, orbit enumeration on
//! canonical forms, automorphism groups and horizontal cylinder
//! decompositions.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrigamiError {
    #[error("staircase parameter must be odd, got {0}")]
    EvenD(u64),
    #[error("staircase parameter must be at least 3, got {0}")]
    DTooSmall(u64),
    #[error("permutation lengths differ")]
    LengthMismatch,
    #[error("the squares are not connected by h and v")]
    Disconnected,
}

/// A permutation of `{0, …, n-1}` stored by images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Permutation {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            assert!((im as usize) < n && !seen[im as usize], "not a bijection");
            seen[im as usize] = true;
        }
        Permutation { images }
    }

    /// Build from disjoint 1-based cycles, e.g. `&[vec![1, 2], vec![3]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Permutation {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                let a = cyc[w] - 1;
                let b = cyc[(w + 1) % cyc.len()] - 1;
                images[a as usize] = b;
            }
        }
        Permutation::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, s: u32) -> u32 {
        self.images[s as usize]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (s, &im) in self.images.iter().enumerate() {
            inv[im as usize] = s as u32;
        }
        Permutation { images: inv }
    }

    /// `self.then(other)`: apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: self.images.iter().map(|&s| other.apply(s)).collect(),
        }
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n as u32 {
            if seen[s as usize] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut t = s;
            while !seen[t as usize] {
                seen[t as usize] = true;
                cyc.push(t);
                t = self.apply(t);
            }
            out.push(cyc);
        }
        out
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based labels: `(1,2)(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cyc in self.cycles() {
            write!(f, "(")?;
            for (ix, s) in cyc.iter().enumerate() {
                if ix > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", s + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A connected square-tiled surface.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

impl Origami {
    pub fn new(h: Permutation, v: Permutation) -> Result<Origami, OrigamiError> {
        if h.len() != v.len() {
            return Err(OrigamiError::LengthMismatch);
        }
        let o = Origami { h, v };
        if !o.is_connected() {
            return Err(OrigamiError::Disconnected);
        }
        Ok(o)
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1;
        while let Some(s) = queue.pop_front() {
            for t in [self.h.apply(s), self.v.apply(s)] {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    count += 1;
                    queue.push_back(t);
                }
            }
        }
        count == n
    }

    /// Serialize as the two cycle-notation lines used by `--dump` output.
    pub fn dump(&self) -> String {
        format!("h={} v={}", self.h, self.v)
    }
}

impl fmt::Debug for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

/// The `d`-square staircase: `h = (1 2)(3 4)…(d-2 d-1)(d)`,
/// `v = (1)(2 3)(4 5)…(d-1 d)`.
pub fn make_staircase(d: u64) -> Result<Origami, OrigamiError> {
    if d % 2 == 0 {
        return Err(OrigamiError::EvenD(d));
    }
    if d < 3 {
        return Err(OrigamiError::DTooSmall(d));
    }
    let n = d as usize;
    let mut h: Vec<u32> = (0..n as u32).collect();
    let mut v: Vec<u32> = (0..n as u32).collect();
    let mut s = 0;
    while s + 1 < n - 1 {
        h.swap(s, s + 1);
        s += 2;
    }
    let mut s = 1;
    while s + 1 < n {
        v.swap(s, s + 1);
        s += 2;
    }
    Origami::new(Permutation::from_images(h), Permutation::from_images(v))
}

/// Multiset of zero orders plus genus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stratum {
    /// Orders `k ≥ 1` of the conical points (cone angle `2π(k+1)`), sorted.
    pub zeros: Vec<u32>,
    pub genus: u32,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{}(", self.genus)?;
        if self.zeros.is_empty() {
            write!(f, "-")?;
        }
        for (ix, z) in self.zeros.iter().enumerate() {
            if ix > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", z)?;
        }
        write!(f, ")")
    }
}

/// Cycles of the vertex permutation `u = h∘v∘h⁻¹∘v⁻¹` (rightmost first).
///
/// Each cycle is one cone point read at lower-left corners; length-1 cycles
/// are regular points.
pub fn vertex_cycles(o: &Origami) -> Vec<Vec<u32>> {
    let u = o
        .v()
        .inverse()
        .then(&o.h().inverse())
        .then(o.v())
        .then(o.h());
    u.cycles()
}

pub fn vertex_structure(o: &Origami) -> Stratum {
    let cycles = vertex_cycles(o);
    let mut zeros: Vec<u32> = cycles
        .iter()
        .filter(|c| c.len() > 1)
        .map(|c| c.len() as u32 - 1)
        .collect();
    zeros.sort_unstable();
    // χ = V - E + F with n faces and 2n edges
    let chi = cycles.len() as i64 - o.n() as i64;
    let genus = (2 - chi) / 2;
    assert_eq!((2 - chi) % 2, 0);
    let stratum = Stratum {
        zeros,
        genus: genus as u32,
    };
    debug_assert_eq!(
        stratum.zeros.iter().map(|&z| z as i64).sum::<i64>(),
        2 * genus - 2
    );
    stratum
}

/// One letter of an `SL(2,Z)` word over the standard generators.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Letter {
    T,
    TInv,
    S,
    SInv,
}

impl Letter {
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Letter::T => [[1, 1], [0, 1]],
            Letter::TInv => [[1, -1], [0, 1]],
            Letter::S => [[1, 0], [1, 1]],
            Letter::SInv => [[1, 0], [-1, 1]],
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Letter::T => "T",
            Letter::TInv => "T'",
            Letter::S => "S",
            Letter::SInv => "S'",
        };
        f.write_str(s)
    }
}

/// A word in product order: the rightmost letter acts first.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Gl2Word(pub Vec<Letter>);

impl Gl2Word {
    pub fn empty() -> Gl2Word {
        Gl2Word(Vec::new())
    }

    /// `S^a` on the left of `self`.
    pub fn pre_s(mut self, a: i64) -> Gl2Word {
        let letter = if a >= 0 { Letter::S } else { Letter::SInv };
        let mut letters = vec![letter; a.unsigned_abs() as usize];
        letters.append(&mut self.0);
        Gl2Word(letters)
    }

    pub fn pre_t(mut self, a: i64) -> Gl2Word {
        let letter = if a >= 0 { Letter::T } else { Letter::TInv };
        let mut letters = vec![letter; a.unsigned_abs() as usize];
        letters.append(&mut self.0);
        Gl2Word(letters)
    }

    pub fn eval(&self) -> [[i64; 2]; 2] {
        let mut m = [[1, 0], [0, 1]];
        for letter in &self.0 {
            let l = letter.matrix();
            m = [
                [
                    m[0][0] * l[0][0] + m[0][1] * l[1][0],
                    m[0][0] * l[0][1] + m[0][1] * l[1][1],
                ],
                [
                    m[1][0] * l[0][0] + m[1][1] * l[1][0],
                    m[1][0] * l[0][1] + m[1][1] * l[1][1],
                ],
            ];
        }
        debug_assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
        m
    }
}

impl fmt::Display for Gl2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// One letter of the action on `(h, v)`.
///
/// The letter conventions are validated by the contract tests (orbit of the
/// staircase has three vertices; `S` applied to a staircase is a single
/// horizontal cylinder; twice-`T` on the row model matches its label shear).
pub fn act_letter(o: &Origami, letter: Letter) -> Origami {
    let (h, v) = (o.h(), o.v());
    let (nh, nv) = match letter {
        // v' = v∘h⁻¹  (monodromy along (-1, 1))
        Letter::T => (h.clone(), h.inverse().then(v)),
        Letter::TInv => (h.clone(), h.then(v)),
        // h' = h∘v⁻¹  (monodromy along (1, -1))
        Letter::S => (v.inverse().then(h), v.clone()),
        Letter::SInv => (v.then(h), v.clone()),
    };
    Origami { h: nh, v: nv }
}

/// Apply a word; the rightmost letter acts first, so that
/// `act(act(o, w1), w2) == act(o, w2·w1)`.
pub fn act(o: &Origami, word: &Gl2Word) -> Origami {
    let mut cur = o.clone();
    for &letter in word.0.iter().rev() {
        cur = act_letter(&cur, letter);
    }
    cur
}

/// Lexicographically minimal relabeling over all anchor squares.
///
/// The relabeling anchored at `s0` numbers squares in BFS order over the
/// directed edges `h, v`; minimizing the `(h, v)` image arrays over anchors
/// gives a total canonical form: equal canonical forms ⟺ isomorphic.
pub fn canonical_form(o: &Origami) -> Origami {
    let n = o.n();
    let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
    for anchor in 0..n as u32 {
        let mut old_to_new = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        old_to_new[anchor as usize] = 0;
        order.push(anchor);
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for t in [o.h().apply(s), o.v().apply(s)] {
                if old_to_new[t as usize] == u32::MAX {
                    old_to_new[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
        }
        let mut nh = vec![0u32; n];
        let mut nv = vec![0u32; n];
        for (old, &new) in old_to_new.iter().enumerate() {
            nh[new as usize] = old_to_new[o.h().apply(old as u32) as usize];
            nv[new as usize] = old_to_new[o.v().apply(old as u32) as usize];
        }
        let cand = (nh, nv);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    let (h, v) = best.unwrap();
    Origami {
        h: Permutation::from_images(h),
        v: Permutation::from_images(v),
    }
}

pub fn is_isomorphic(a: &Origami, b: &Origami) -> bool {
    a.n() == b.n() && canonical_form(a) == canonical_form(b)
}

/// Orbit of `o` under `T` and `S`, as a graph on canonical forms.
pub struct OrbitGraph {
    pub vertices: Vec<Origami>,
    /// `(from, letter, to)` with `letter ∈ {T, S}`.
    pub edges: Vec<(usize, Letter, usize)>,
}

pub fn orbit(o: &Origami) -> OrbitGraph {
    let start = canonical_form(o);
    let mut vertices = vec![start.clone()];
    let mut index: HashMap<Origami, usize> = HashMap::from([(start, 0)]);
    let mut edges = Vec::new();
    let mut head = 0;
    while head < vertices.len() {
        let cur = vertices[head].clone();
        for letter in [Letter::T, Letter::S] {
            let img = canonical_form(&act_letter(&cur, letter));
            let to = *index.entry(img.clone()).or_insert_with(|| {
                vertices.push(img);
                vertices.len() - 1
            });
            edges.push((head, letter, to));
        }
        head += 1;
    }
    OrbitGraph { vertices, edges }
}

/// The centralizer of `{h, v}` in the symmetric group.
///
/// By transitivity an automorphism is determined by the image of square 0;
/// each candidate image either extends uniquely or fails.
pub fn automorphisms(o: &Origami) -> Vec<Permutation> {
    let n = o.n();
    let mut out = Vec::new();
    'cand: for target in 0..n as u32 {
        let mut sigma = vec![u32::MAX; n];
        sigma[0] = target;
        let mut stack = vec![0u32];
        while let Some(s) = stack.pop() {
            let im = sigma[s as usize];
            for (next, im_next) in [
                (o.h().apply(s), o.h().apply(im)),
                (o.v().apply(s), o.v().apply(im)),
            ] {
                let slot = &mut sigma[next as usize];
                if *slot == u32::MAX {
                    *slot = im_next;
                    stack.push(next);
                } else if *slot != im_next {
                    continue 'cand;
                }
            }
        }
        let sigma = Permutation::from_images(sigma);
        if sigma.commutes_with(o.h()) && sigma.commutes_with(o.v()) {
            out.push(sigma);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct HorizontalCylinder {
    /// Rows bottom to top; each row is one `h`-cycle in traversal order.
    pub rows: Vec<Vec<u32>>,
    pub circumference: usize,
    pub height: usize,
}

/// Horizontal cylinders: `h`-cycles merged across singularity-free
/// interfaces.
///
/// The interface above a row is smooth iff every corner on it is regular,
/// i.e. the vertex cycle through `v(s)` has length 1 for every `s` in the
/// row; smoothness forces the row above to be a single `h`-cycle of equal
/// length.
pub fn horizontal_cylinders(o: &Origami) -> Vec<HorizontalCylinder> {
    let n = o.n();
    let cycles = vertex_cycles(o);
    let mut vlen = vec![0usize; n];
    for c in &cycles {
        for &s in c {
            vlen[s as usize] = c.len();
        }
    }
    let rows = o.h().cycles();
    let mut row_of = vec![0usize; n];
    for (ix, row) in rows.iter().enumerate() {
        for &s in row {
            row_of[s as usize] = ix;
        }
    }
    // smooth[r] = Some(row above) when the interface above row r carries no
    // singular corner
    let smooth: Vec<Option<usize>> = rows
        .iter()
        .map(|row| {
            if row.iter().all(|&s| vlen[o.v().apply(s) as usize] == 1) {
                Some(row_of[o.v().apply(row[0]) as usize])
            } else {
                None
            }
        })
        .collect();
    let mut assigned = vec![false; rows.len()];
    let mut out = Vec::new();
    for r in 0..rows.len() {
        if assigned[r] {
            continue;
        }
        // walk down to the bottom row of this cylinder (or all the way
        // around, for a vertically periodic one)
        let mut bottom = r;
        loop {
            let below = (0..rows.len()).find(|&b| smooth[b] == Some(bottom));
            match below {
                Some(b) if b != r && !assigned[b] => bottom = b,
                _ => break,
            }
            if bottom == r {
                break;
            }
        }
        let mut stack = Vec::new();
        let mut cur = bottom;
        loop {
            assigned[cur] = true;
            stack.push(rows[cur].clone());
            match smooth[cur] {
                Some(above) if !assigned[above] => cur = above,
                _ => break,
            }
        }
        let circumference = stack[0].len();
        assert!(stack.iter().all(|row| row.len() == circumference));
        out.push(HorizontalCylinder {
            height: stack.len(),
            circumference,
            rows: stack,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> Origami {
        Origami::new(Permutation::identity(1), Permutation::identity(1)).unwrap()
    }

    #[test]
    fn staircase_small() {
        let o = make_staircase(3).unwrap();
        assert_eq!(o.dump(), "h=(1,2)(3) v=(1)(2,3)");
        let o = make_staircase(5).unwrap();
        assert_eq!(o.dump(), "h=(1,2)(3,4)(5) v=(1)(2,3)(4,5)");
        assert_eq!(make_staircase(4), Err(OrigamiError::EvenD(4)));
        assert_eq!(make_staircase(1), Err(OrigamiError::DTooSmall(1)));
    }

    #[test]
    fn staircase_stratum() {
        assert_eq!(
            vertex_structure(&torus()),
            Stratum {
                zeros: vec![],
                genus: 1
            }
        );
        assert_eq!(
            vertex_structure(&make_staircase(3).unwrap()),
            Stratum {
                zeros: vec![2],
                genus: 2
            }
        );
        for d in [5u64, 7, 11, 19] {
            let st = vertex_structure(&make_staircase(d).unwrap());
            assert_eq!(st.zeros, vec![d as u32 - 1]);
            assert_eq!(st.genus as u64, (d + 1) / 2);
        }
    }

    #[test]
    fn act_identities() {
        let o = make_staircase(5).unwrap();
        assert!(is_isomorphic(&act(&o, &Gl2Word::empty()), &o));
        let tt = Gl2Word(vec![Letter::T, Letter::TInv]);
        assert!(is_isomorphic(&act(&o, &tt), &o));
        let ss = Gl2Word(vec![Letter::SInv, Letter::S]);
        assert!(is_isomorphic(&act(&o, &ss), &o));
        // composition contract
        let w1 = Gl2Word(vec![Letter::S]);
        let w2 = Gl2Word(vec![Letter::T, Letter::T]);
        let combined = Gl2Word(vec![Letter::T, Letter::T, Letter::S]);
        assert!(is_isomorphic(&act(&act(&o, &w1), &w2), &act(&o, &combined)));
    }

    #[test]
    fn s_of_staircase_is_one_cylinder() {
        for d in [3u64, 5, 7, 11] {
            let o = make_staircase(d).unwrap();
            let y = act(&o, &Gl2Word(vec![Letter::S]));
            let cyls = horizontal_cylinders(&y);
            assert_eq!(cyls.len(), 1, "d={}", d);
            assert_eq!(cyls[0].circumference as u64, d);
            assert_eq!(cyls[0].height, 1);
        }
    }

    #[test]
    fn word_matrices() {
        let w = Gl2Word(vec![Letter::S, Letter::S, Letter::T, Letter::T, Letter::S]);
        // S² T² S = [[3, 2], [7, 5]]
        assert_eq!(w.eval(), [[3, 2], [7, 5]]);
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let o = make_staircase(7).unwrap();
        assert!(is_isomorphic(&o, &o));
        // conjugate by a fixed scramble
        let sigma = Permutation::from_images(vec![3, 0, 6, 2, 5, 1, 4]);
        let si = sigma.inverse();
        let relabeled =
            Origami::new(si.then(o.h()).then(&sigma), si.then(o.v()).then(&sigma)).unwrap();
        assert!(is_isomorphic(&o, &relabeled));
        // one-cylinder 3-square origami is not the staircase
        let one_cyl = Origami::new(
            Permutation::from_cycles(3, &[vec![1, 2, 3]]),
            Permutation::identity(3),
        )
        .unwrap();
        assert!(!is_isomorphic(&make_staircase(3).unwrap(), &one_cyl));
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&torus()).vertices.len(), 1);
        for d in [3u64, 5, 7, 11] {
            let g = orbit(&make_staircase(d).unwrap());
            assert_eq!(g.vertices.len(), 3, "d={}", d);
            // closed under T and S by construction; check strong connectivity
            let mut reach = vec![false; 3];
            reach[0] = true;
            for _ in 0..3 {
                for &(a, _, b) in &g.edges {
                    if reach[a] {
                        reach[b] = true;
                    }
                }
            }
            assert!(reach.iter().all(|&r| r));
        }
    }

    #[test]
    fn staircase_automorphisms_trivial() {
        for d in [3u64, 7, 11] {
            let auts = automorphisms(&make_staircase(d).unwrap());
            assert_eq!(auts.len(), 1);
        }
        assert_eq!(automorphisms(&torus()).len(), 1);
    }

    #[test]
    fn automorphisms_form_group() {
        let o = make_staircase(5).unwrap();
        let y = act(&o, &Gl2Word(vec![Letter::S]));
        let auts = automorphisms(&y);
        for a in &auts {
            assert!(a.commutes_with(y.h()) && a.commutes_with(y.v()));
            for b in &auts {
                assert!(auts.contains(&a.then(b)));
            }
            assert!(auts.contains(&a.inverse()));
        }
    }

    #[test]
    fn horizontal_cylinders_examples() {
        let cyls = horizontal_cylinders(&torus());
        assert_eq!(cyls.len(), 1);
        assert_eq!((cyls[0].circumference, cyls[0].height), (1, 1));

        // rows {1,2} and {3} of the 3-staircase are separated by the
        // order-2 singularity
        let cyls = horizontal_cylinders(&make_staircase(3).unwrap());
        assert_eq!(cyls.len(), 2);
        let mut sizes: Vec<(usize, usize)> =
            cyls.iter().map(|c| (c.circumference, c.height)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(1, 1), (2, 1)]);

        // partition check on a larger case
        let o = make_staircase(11).unwrap();
        let cyls = horizontal_cylinders(&o);
        let total: usize = cyls.iter().map(|c| c.circumference * c.height).sum();
        assert_eq!(total, 11);
    }

    #[test]
    fn identity_words_act_trivially() {
        use Letter::*;
        let o = make_staircase(7).unwrap();
        let identity_words = [
            vec![T, TInv],
            vec![SInv, S],
            vec![T, S, SInv, TInv],
            vec![T, T, S, SInv, TInv, TInv],
        ];
        for letters in identity_words {
            let w = Gl2Word(letters);
            assert_eq!(w.eval(), [[1, 0], [0, 1]]);
            assert!(is_isomorphic(&act(&o, &w), &o));
        }
    }

    proptest::proptest! {
        #[test]
        fn random_words_have_unit_determinant(seq in proptest::collection::vec(0..4u8, 0..12)) {
            let letters: Vec<Letter> = seq
                .iter()
                .map(|&b| [Letter::T, Letter::TInv, Letter::S, Letter::SInv][b as usize])
                .collect();
            let w = Gl2Word(letters.clone());
            let m = w.eval();
            proptest::prop_assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
            // acting and then acting by the reversed inverse word returns
            // an isomorphic origami
            let o = make_staircase(5).unwrap();
            let inverse: Vec<Letter> = letters
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::T => Letter::TInv,
                    Letter::TInv => Letter::T,
                    Letter::S => Letter::SInv,
                    Letter::SInv => Letter::S,
                })
                .collect();
            let mut round_trip = Gl2Word(inverse);
            round_trip.0.extend(w.0.iter().copied());
            proptest::prop_assert!(is_isomorphic(&act(&o, &round_trip), &o));
        }
    }

    #[test]
    fn canonical_form_idempotent() {
        let o = make_staircase(9).unwrap();
        let c = canonical_form(&o);
        assert_eq!(canonical_form(&c), c);
    }
}
