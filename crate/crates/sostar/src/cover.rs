//! Quaternionic covers of staircases and their one-cylinder row models.
//!
//! The degree-eight cover `X̃` of the `d`-square staircase carries a deck
//! action of the quaternion group by left multiplication on copy indices.
//! Applying `S` turns it into a surface with four horizontal cylinders that
//! admits an explicit description as eight labeled rows of `d` squares
//! (`Ỹ`): bottom sides `η_g^1 … η_g^d`, row ends `ζ_g`, and top sides given
//! by two 4-periodic label families. Shearing by `T^{2r}` shifts the top
//! labels `r` to the right and the bottom labels `r` to the left, flipping
//! the group sign of every label with superscript at most `r`.
//!
//! The row model is the single source of truth for the label layout; the
//! cover is built so that acting by `S` reproduces the `r = 0` model square
//! for square, and the constructor fails with [`CoverError::ModelMismatch`]
//! if that ever breaks.

use std::fmt;

use thiserror::Error;

use crate::origami::{
    act, automorphisms, is_isomorphic, make_staircase, vertex_structure, Gl2Word, Letter, Origami,
    Permutation, Stratum,
};
use crate::quaternion::QElem;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("deck parameters {0} and {1} do not generate the quaternion group")]
    DisconnectedCover(QElem, QElem),
    #[error("cover parameter must satisfy d ≡ 3 (mod 8) and d ≥ 3, got {0}")]
    BadCongruenceClass(u64),
    #[error("base origami is not the {0}-square staircase")]
    NotAStaircase(u64),
    #[error("row model does not match the sheared cover")]
    ModelMismatch,
    #[error(transparent)]
    Origami(#[from] crate::origami::OrigamiError),
}

/// `(i, j, -i, -j)` by superscript mod 4 — the label family on the columns
/// up to and including the middle square.
fn ij_family(s: u64) -> QElem {
    match s % 4 {
        1 => QElem::I,
        2 => QElem::J,
        3 => QElem::I.neg(),
        _ => QElem::J.neg(),
    }
}

/// `(k, 1, -k, -1)` by superscript mod 4 — the family right of the middle.
fn k_family(s: u64) -> QElem {
    match s % 4 {
        1 => QElem::K,
        2 => QElem::ONE,
        3 => QElem::K.neg(),
        _ => QElem::MINUS_ONE,
    }
}

/// Group factor of the top gluing above column `c` (0-based) of the
/// unsheared row model: the `ij` family up to and including the middle
/// column, the `k` family to its right. The middle factor `j` squares to
/// `-1`, which together with the central `ζ` gluing closes every slope `-2`
/// trajectory after exactly `2d` side crossings.
fn top_factor(d: u64, c: u64) -> QElem {
    let m = (d + 1) / 2;
    let p = c + 1;
    let s = d - c;
    if p <= m {
        ij_family(s)
    } else {
        k_family(s)
    }
}

fn row_square(d: u64, g: QElem, c: u64) -> u32 {
    (g.index() as u64 * d + c) as u32
}

/// A side of the row model, named canonically across all shears.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SideLabel {
    /// Horizontal side oriented rightwards; `r` is 1-based.
    Eta { g: QElem, r: u16 },
    /// Vertical side at a row end, oriented upwards.
    Zeta { g: QElem },
}

impl fmt::Display for SideLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideLabel::Eta { g, r } => write!(f, "η_{}^{}", g, r),
            SideLabel::Zeta { g } => write!(f, "ζ_{}", g),
        }
    }
}

/// The quaternionic cover of a staircase.
#[derive(Debug)]
pub struct CoverOrigami {
    pub d: u64,
    pub base: Origami,
    pub origami: Origami,
    a: QElem,
    b: QElem,
}

/// The automorphism of `Q` sending `(i, j)` to a generating pair `(a, b)`.
fn pair_automorphism(a: QElem, b: QElem) -> Option<impl Fn(QElem) -> QElem> {
    if a.is_central() || b.is_central() || b.abs() == a.abs() {
        return None;
    }
    let c = a.mul(b);
    Some(move |g: QElem| {
        let image = match g.abs() {
            x if x == QElem::ONE => QElem::ONE,
            x if x == QElem::I => a,
            x if x == QElem::J => b,
            _ => c,
        };
        if g.is_negative() {
            image.neg()
        } else {
            image
        }
    })
}

impl CoverOrigami {
    /// Square index of the copy-`g` square over column `c`.
    pub fn square(&self, g: QElem, c: u64) -> u32 {
        row_square(self.d, g, c)
    }

    pub fn copy_of(&self, square: u32) -> QElem {
        QElem::from_index(square as usize / self.d as usize)
    }

    pub fn column_of(&self, square: u32) -> u64 {
        square as u64 % self.d
    }

    /// Covering projection to the base staircase (0-based square labels).
    pub fn to_base(&self, square: u32) -> u32 {
        let d = self.d;
        let c = self.column_of(square);
        let m = (d + 1) / 2;
        if c + 1 <= m {
            (d - 1 - 2 * c) as u32
        } else {
            (2 * c - d) as u32
        }
    }

    /// Deck transformation `(g, c) ↦ (γ·g, c)`.
    pub fn deck(&self, gamma: QElem) -> Permutation {
        let d = self.d;
        let images = (0..8 * d)
            .map(|sq| {
                let g = QElem::from_index((sq / d) as usize);
                row_square(d, gamma.mul(g), sq % d)
            })
            .collect();
        Permutation::from_images(images)
    }

    pub fn deck_params(&self) -> (QElem, QElem) {
        (self.a, self.b)
    }
}

/// Build the quaternionic cover of a staircase.
///
/// `a` and `b` are the images of the default horizontal/vertical deck
/// parameters `(i, j)` under an automorphism of `Q`; they must generate the
/// whole group or the total space falls apart into proper subcovers.
pub fn quaternionic_cover(base: &Origami, a: QElem, b: QElem) -> Result<CoverOrigami, CoverError> {
    let d = base.n() as u64;
    if d % 8 != 3 {
        return Err(CoverError::BadCongruenceClass(d));
    }
    let staircase = make_staircase(d)?;
    if *base != staircase {
        return Err(CoverError::NotAStaircase(d));
    }
    let tau = pair_automorphism(a, b).ok_or(CoverError::DisconnectedCover(a, b))?;

    let n = (8 * d) as usize;
    let mut h = vec![0u32; n];
    let mut v = vec![0u32; n];
    for g in QElem::ALL {
        for c in 0..d {
            let sq = row_square(d, g, c) as usize;
            if c == 0 {
                h[sq] = row_square(d, g.mul(tau(QElem::I)), 0);
            } else {
                h[sq] = row_square(d, g.mul(tau(top_factor(d, c))), d - c);
            }
            v[sq] = row_square(d, g.mul(tau(top_factor(d, c))), d - 1 - c);
        }
    }
    let origami = Origami::new(Permutation::from_images(h), Permutation::from_images(v))?;
    let cover = CoverOrigami {
        d,
        base: staircase,
        origami,
        a,
        b,
    };
    // the deck action must commute with both gluing permutations
    debug_assert!(QElem::ALL.iter().all(|&g| {
        let p = cover.deck(g);
        p.commutes_with(cover.origami.h()) && p.commutes_with(cover.origami.v())
    }));
    Ok(cover)
}

/// Quotient by the central deck involution; squares indexed by
/// `{1, i, j, k}`-cosets.
pub fn central_quotient(cover: &CoverOrigami) -> Origami {
    let d = cover.d;
    let n = (4 * d) as usize;
    let fold = |sq: u32| -> u32 {
        let g = cover.copy_of(sq);
        (g.plus_index() as u64 * d + cover.column_of(sq)) as u32
    };
    let mut h = vec![0u32; n];
    let mut v = vec![0u32; n];
    for g in [QElem::ONE, QElem::I, QElem::J, QElem::K] {
        for c in 0..d {
            let sq = cover.square(g, c);
            let folded = (g.plus_index() as u64 * d + c) as usize;
            h[folded] = fold(cover.origami.h().apply(sq));
            v[folded] = fold(cover.origami.v().apply(sq));
        }
    }
    Origami::new(Permutation::from_images(h), Permutation::from_images(v))
        .expect("central quotient of a connected cover is connected")
}

/// `(dim H₁, dim H₁⁺, dim H₁⁻)` for the cover of the `d`-staircase, from
/// genus arithmetic alone.
pub fn homology_dimensions(d: u64) -> Result<(u64, u64, u64), CoverError> {
    if d < 3 || d % 2 == 0 {
        return Err(CoverError::BadCongruenceClass(d));
    }
    Ok((8 * d - 2, 4 * d - 2, 4 * d))
}

/// The labeled one-cylinder row model at shear index `r`.
#[derive(Debug)]
pub struct LabeledRowModel {
    pub d: u64,
    /// Shear index: the model of `T^{2r}·Ỹ`.
    pub r: u64,
    pub origami: Origami,
}

impl LabeledRowModel {
    pub fn square(&self, g: QElem, c: u64) -> u32 {
        row_square(self.d, g, c)
    }

    pub fn row_of(&self, square: u32) -> QElem {
        QElem::from_index(square as usize / self.d as usize)
    }

    pub fn column_of(&self, square: u32) -> u64 {
        square as u64 % self.d
    }

    /// Label of the bottom side of `(g, c)`.
    pub fn bottom_label(&self, g: QElem, c: u64) -> SideLabel {
        let s = (c + self.r) % self.d + 1;
        let wrapped = c + self.r >= self.d;
        SideLabel::Eta {
            g: if wrapped { g.neg() } else { g },
            r: s as u16,
        }
    }

    /// Label of the top side of `(g, c)`.
    pub fn top_label(&self, g: QElem, c: u64) -> SideLabel {
        let d = self.d;
        let c0 = (c + d - self.r % d) % d;
        let s = d - c0;
        let mut y = g.mul(top_factor(d, c0));
        if s <= self.r {
            y = y.neg();
        }
        SideLabel::Eta { g: y, r: s as u16 }
    }

    /// Square whose bottom side carries the given η label.
    pub fn eta_location(&self, label: SideLabel) -> (QElem, u64) {
        let SideLabel::Eta { g, r: s } = label else {
            panic!("eta_location called with a ζ label");
        };
        let s = s as u64;
        let c = (s + self.d - 1 - self.r % self.d) % self.d;
        let wrapped = c + self.r >= self.d;
        (if wrapped { g.neg() } else { g }, c)
    }

    /// ζ label on the left end of row `g` (the right end carries `ζ_{-g}`).
    pub fn zeta_left(&self, g: QElem) -> SideLabel {
        SideLabel::Zeta { g }
    }

    /// One line per row: bottoms, tops and end labels, for golden tests.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for g in QElem::ALL {
            write!(out, "row {}: bottom=[", g).unwrap();
            for c in 0..self.d {
                if c > 0 {
                    out.push(' ');
                }
                write!(out, "{}", self.bottom_label(g, c)).unwrap();
            }
            out.push_str("] top=[");
            for c in 0..self.d {
                if c > 0 {
                    out.push(' ');
                }
                write!(out, "{}", self.top_label(g, c)).unwrap();
            }
            writeln!(
                out,
                "] left={} right={}",
                self.zeta_left(g),
                SideLabel::Zeta { g: g.neg() }
            )
            .unwrap();
        }
        out
    }
}

fn model_origami(d: u64, r: u64) -> Origami {
    let n = (8 * d) as usize;
    let mut h = vec![0u32; n];
    let mut v = vec![0u32; n];
    for g in QElem::ALL {
        for c in 0..d {
            let sq = row_square(d, g, c) as usize;
            h[sq] = if c + 1 < d {
                row_square(d, g, c + 1)
            } else {
                row_square(d, g.neg(), 0)
            };
            // glue the top of (g, c) to the square whose bottom carries the
            // same η label
            let c0 = (c + d - r % d) % d;
            let s = d - c0;
            let mut y = g.mul(top_factor(d, c0));
            if s <= r {
                y = y.neg();
            }
            let target_c = (s + d - 1 - r % d) % d;
            let target_g = if target_c + r >= d { y.neg() } else { y };
            v[sq] = row_square(d, target_g, target_c);
        }
    }
    Origami::new(Permutation::from_images(h), Permutation::from_images(v))
        .expect("row model is connected")
}

/// Build the labeled `r = 0` model and validate it against the sheared
/// cover.
pub fn build_y_model(d: u64) -> Result<LabeledRowModel, CoverError> {
    if d % 8 != 3 {
        return Err(CoverError::BadCongruenceClass(d));
    }
    let cover = quaternionic_cover(&make_staircase(d)?, QElem::I, QElem::J)?;
    let model = LabeledRowModel {
        d,
        r: 0,
        origami: model_origami(d, 0),
    };
    let sheared = act(&cover.origami, &Gl2Word(vec![Letter::S]));
    if sheared != model.origami && !is_isomorphic(&sheared, &model.origami) {
        return Err(CoverError::ModelMismatch);
    }
    Ok(model)
}

/// The labeled model of `T^{2r}·Ỹ`, obtained by the cyclic label shifts.
pub fn shear_y_model(model: &LabeledRowModel, r: u64) -> LabeledRowModel {
    assert_eq!(model.r, 0, "shear starts from the unsheared model");
    LabeledRowModel {
        d: model.d,
        r,
        origami: model_origami(model.d, r),
    }
}

/// Stratum of the cover (also of every model, since shearing preserves it).
pub fn cover_stratum(cover: &CoverOrigami) -> Stratum {
    vertex_structure(&cover.origami)
}

/// Convenience wrapper asserting the deck automorphisms are the whole group.
pub fn cover_automorphisms(cover: &CoverOrigami) -> Vec<Permutation> {
    automorphisms(&cover.origami)
}
