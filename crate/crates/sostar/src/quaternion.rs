//! The quaternion group `Q = {±1, ±i, ±j, ±k}` as exact data.
//!
//! Elements are a sign bit plus a two-bit basis index, and multiplication is
//! a precomputed 8×8 table so the hot path inside trajectory tracing stays
//! branch-free. Hatted quantities indexed by `Q⁺ = (1, i, j, k)` follow the
//! global convention `x_{-g} = -x_g`, which makes the deck action on waist
//! curves literally left quaternion multiplication.

use std::fmt;

/// An element of the quaternion group, encoded as `basis << 1 | sign_bit`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QElem(u8);

const E: u8 = 0;
const I: u8 = 1;
const J: u8 = 2;
const K: u8 = 3;

// (sign, basis) of basis_a * basis_b.
const fn basis_mul(a: u8, b: u8) -> (bool, u8) {
    match (a, b) {
        (E, x) => (false, x),
        (x, E) => (false, x),
        (I, I) | (J, J) | (K, K) => (true, E),
        (I, J) => (false, K),
        (J, I) => (true, K),
        (J, K) => (false, I),
        (K, J) => (true, I),
        (K, I) => (false, J),
        (I, K) => (true, J),
        _ => (false, 255),
    }
}

const fn build_table() -> [[u8; 8]; 8] {
    let mut t = [[0u8; 8]; 8];
    let mut x = 0;
    while x < 8 {
        let mut y = 0;
        while y < 8 {
            let (flip, basis) = basis_mul((x >> 1) as u8, (y >> 1) as u8);
            let sign = ((x & 1) ^ (y & 1)) as u8 ^ (flip as u8);
            t[x][y] = (basis << 1) | sign;
            y += 1;
        }
        x += 1;
    }
    t
}

static MUL: [[u8; 8]; 8] = build_table();

#[allow(clippy::should_implement_trait)]
impl QElem {
    pub const ONE: QElem = QElem(0);
    pub const MINUS_ONE: QElem = QElem(1);
    pub const I: QElem = QElem(2);
    pub const J: QElem = QElem(4);
    pub const K: QElem = QElem(6);

    /// All eight elements in index order `1, -1, i, -i, j, -j, k, -k`.
    pub const ALL: [QElem; 8] = [
        QElem(0),
        QElem(1),
        QElem(2),
        QElem(3),
        QElem(4),
        QElem(5),
        QElem(6),
        QElem(7),
    ];

    /// The ordered index set `Q⁺ = (1, i, j, k)` for 4-dimensional blocks.
    pub const PLUS: [QElem; 4] = [QElem(0), QElem(2), QElem(4), QElem(6)];

    pub fn from_index(ix: usize) -> QElem {
        assert!(ix < 8);
        QElem(ix as u8)
    }

    /// Index in `ALL` (stable; used for square numbering in covers).
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Index of `|g|` in `PLUS`.
    pub fn plus_index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn is_central(self) -> bool {
        self.0 >> 1 == E
    }

    /// `|g|`: the representative of `{g, -g}` lying in `Q⁺`.
    pub fn abs(self) -> QElem {
        QElem(self.0 & !1)
    }

    pub fn mul(self, o: QElem) -> QElem {
        QElem(MUL[self.0 as usize][o.0 as usize])
    }

    pub fn neg(self) -> QElem {
        QElem(self.0 ^ 1)
    }

    pub fn inv(self) -> QElem {
        if self.is_central() {
            self
        } else {
            self.neg()
        }
    }
}

impl fmt::Debug for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "1",
            1 => "-1",
            2 => "i",
            3 => "-i",
            4 => "j",
            5 => "-j",
            6 => "k",
            7 => "-k",
            _ => unreachable!(),
        };
        f.write_str(s)
    }
}

/// Matrix of `v ↦ g·v` on the span of `Q⁺` under `x_{-g} = -x_g`.
///
/// Row/column order follows [`QElem::PLUS`]. These are signed permutation
/// matrices of determinant one, and `L(g)·L(h) = L(gh)`.
pub fn left_mult_matrix(g: QElem) -> [[i64; 4]; 4] {
    let mut m = [[0i64; 4]; 4];
    for (b, &e) in QElem::PLUS.iter().enumerate() {
        let img = g.mul(e);
        let sign = if img.is_negative() { -1 } else { 1 };
        m[img.plus_index()][b] = sign;
    }
    m
}

/// `Σ_{g ∈ Q⁺} v_g²` — the quartic's square root in the determinant identity.
pub fn quaternion_norm_form(v: &[crate::rat::Rat; 4]) -> crate::rat::Rat {
    v.iter()
        .fold(crate::rat::Rat::ZERO, |acc, x| acc.add(x.mul(*x)))
}

/// The five irreducible complex characters of `Q` over the classes
/// `{1}, {-1}, {±i}, {±j}, {±k}` (the last row is `tr χ₂`).
pub struct CharTable;

impl CharTable {
    pub const CLASS_SIZES: [i64; 5] = [1, 1, 2, 2, 2];
    pub const ROWS: [[i64; 5]; 5] = [
        [1, 1, 1, 1, 1],
        [1, 1, 1, -1, -1],
        [1, 1, -1, 1, -1],
        [1, 1, -1, -1, 1],
        [2, -2, 0, 0, 0],
    ];

    /// Row orthogonality under the class weights; |Q| = 8 on the diagonal.
    pub fn orthogonality_holds() -> bool {
        for a in 0..5 {
            for b in 0..5 {
                let dot: i64 = (0..5)
                    .map(|c| Self::CLASS_SIZES[c] * Self::ROWS[a][c] * Self::ROWS[b][c])
                    .sum();
                if (a == b && dot != 8) || (a != b && dot != 0) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    #[test]
    fn multiplication_relations() {
        let (i, j, k) = (QElem::I, QElem::J, QElem::K);
        assert_eq!(i.mul(i), QElem::MINUS_ONE);
        assert_eq!(j.mul(j), QElem::MINUS_ONE);
        assert_eq!(k.mul(k), QElem::MINUS_ONE);
        assert_eq!(i.mul(j), k);
        assert_eq!(j.mul(k), i);
        assert_eq!(k.mul(i), j);
        assert_eq!(j.mul(i), k.neg());
    }

    #[test]
    fn group_laws_exhaustive() {
        for a in QElem::ALL {
            assert_eq!(a.mul(QElem::ONE), a);
            assert_eq!(QElem::ONE.mul(a), a);
            assert_eq!(a.mul(a.inv()), QElem::ONE);
            for b in QElem::ALL {
                for c in QElem::ALL {
                    assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
                }
            }
        }
        // centre is {1, -1}
        for a in QElem::ALL {
            let central = QElem::ALL.iter().all(|&b| a.mul(b) == b.mul(a));
            assert_eq!(central, a.is_central());
        }
    }

    #[test]
    fn commutator_defect() {
        // j⁻¹ i⁻¹ j i = -1, the group-level source of the cover's
        // period-doubled vertex cycles.
        let c = QElem::J
            .inv()
            .mul(QElem::I.inv())
            .mul(QElem::J)
            .mul(QElem::I);
        assert_eq!(c, QElem::MINUS_ONE);
    }

    #[test]
    fn left_mult_is_homomorphism() {
        for a in QElem::ALL {
            for b in QElem::ALL {
                let ma = left_mult_matrix(a);
                let mb = left_mult_matrix(b);
                let mut prod = [[0i64; 4]; 4];
                for r in 0..4 {
                    for c in 0..4 {
                        prod[r][c] = (0..4).map(|t| ma[r][t] * mb[t][c]).sum();
                    }
                }
                assert_eq!(prod, left_mult_matrix(a.mul(b)));
            }
        }
        assert_eq!(
            left_mult_matrix(QElem::ONE),
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        );
    }

    #[test]
    fn left_mult_determinants_are_one() {
        for g in QElem::ALL {
            let m = left_mult_matrix(g);
            assert_eq!(crate::matrixint::det_i128_small(&m), 1);
        }
    }

    #[test]
    fn norm_form_values() {
        let one = [Rat::ONE, Rat::ZERO, Rat::ZERO, Rat::ZERO];
        assert_eq!(quaternion_norm_form(&one), Rat::ONE);
        let all = [Rat::ONE; 4];
        assert_eq!(quaternion_norm_form(&all), Rat::from_int(4));
    }

    #[test]
    fn character_table() {
        assert!(CharTable::orthogonality_holds());
        assert_eq!(CharTable::ROWS[4], [2, -2, 0, 0, 0]);
    }
}
