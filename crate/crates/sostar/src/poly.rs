//! Dense quartic-capable polynomials in four variables over big integers.
//!
//! Just enough symbolic algebra for the two determinant identities: the
//! stacked left-multiplication matrix and the twist-composite span check,
//! both of which reduce to comparing 35 quartic coefficients against
//! `(Σ v_g²)²`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

/// Polynomial in `x0..x3`, keyed by exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly4 {
    pub terms: BTreeMap<[u8; 4], BigInt>,
}

#[allow(clippy::should_implement_trait)]
impl Poly4 {
    pub fn zero() -> Poly4 {
        Poly4::default()
    }

    pub fn constant(c: i64) -> Poly4 {
        let mut p = Poly4::default();
        if c != 0 {
            p.terms.insert([0; 4], BigInt::from(c));
        }
        p
    }

    pub fn var(ix: usize) -> Poly4 {
        let mut e = [0u8; 4];
        e[ix] = 1;
        let mut p = Poly4::default();
        p.terms.insert(e, BigInt::from(1));
        p
    }

    /// Linear form `Σ coeffs[i]·x_i`.
    pub fn linear(coeffs: &[i64; 4]) -> Poly4 {
        let mut p = Poly4::default();
        for (ix, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut e = [0u8; 4];
                e[ix] = 1;
                p.terms.insert(e, BigInt::from(c));
            }
        }
        p
    }

    pub fn add(&self, other: &Poly4) -> Poly4 {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(*e).or_default();
            *slot += c;
            if *slot == BigInt::from(0) {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> Poly4 {
        Poly4 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly4) -> Poly4 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly4) -> Poly4 {
        let mut out = Poly4::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for k in 0..4 {
                    e[k] += eb[k];
                }
                let slot = out.terms.entry(e).or_default();
                *slot += ca * cb;
                if *slot == BigInt::from(0) {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn scale_big(&self, k: &BigInt) -> Poly4 {
        if *k == BigInt::from(0) {
            return Poly4::default();
        }
        Poly4 {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval_i64(&self, xs: &[i64; 4]) -> BigInt {
        let mut acc = BigInt::from(0);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (ix, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term *= xs[ix];
                }
            }
            acc += term;
        }
        acc
    }
}

/// Determinant of a 4×4 matrix of polynomials by permutation expansion.
pub fn det4_poly(m: &[[Poly4; 4]; 4]) -> Poly4 {
    let mut det = Poly4::zero();
    let mut perm = [0usize, 1, 2, 3];
    loop {
        let mut sign = 1i64;
        // parity by counting inversions
        for a in 0..4 {
            for b in a + 1..4 {
                if perm[a] > perm[b] {
                    sign = -sign;
                }
            }
        }
        let mut term = Poly4::constant(sign);
        for (r, &c) in perm.iter().enumerate() {
            term = term.mul(&m[r][c]);
        }
        det = det.add(&term);
        // next permutation in lexicographic order
        let mut i = 3;
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = 3;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    det
}

/// `(x0² + x1² + x2² + x3²)²` — the comparison target of both identities.
pub fn norm_form_squared() -> Poly4 {
    let mut norm = Poly4::zero();
    for ix in 0..4 {
        let v = Poly4::var(ix);
        norm = norm.add(&v.mul(&v));
    }
    norm.mul(&norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = Poly4::var(0);
        let y = Poly4::var(1);
        let p = x.add(&y).mul(&x.sub(&y));
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, expected);
        assert_eq!(p.eval_i64(&[3, 2, 0, 0]), BigInt::from(5));
    }

    #[test]
    fn det_of_diagonal() {
        let mut m: [[Poly4; 4]; 4] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = if i == j { Poly4::var(i) } else { Poly4::zero() };
            }
        }
        let det = det4_poly(&m);
        let expected = Poly4::var(0)
            .mul(&Poly4::var(1))
            .mul(&Poly4::var(2))
            .mul(&Poly4::var(3));
        assert_eq!(det, expected);
    }

    #[test]
    fn norm_form_squared_has_35_coefficients_bound() {
        // all quartic monomials in 4 variables number C(7,3) = 35; the norm
        // square touches the squares and mixed squares only
        let n = norm_form_squared();
        assert!(n.terms.len() <= 35);
        assert_eq!(n.eval_i64(&[1, 1, 1, 1]), BigInt::from(16));
    }
}
