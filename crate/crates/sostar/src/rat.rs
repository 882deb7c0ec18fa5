//! Small exact rationals for trajectory tracing.
//!
//! Every coordinate in the tracing pipeline has a denominator dividing a
//! small power of two times a direction component, so 64-bit numerators with
//! 128-bit intermediates are exact. Overflow aborts rather than rounding.

use std::cmp::Ordering;
use std::fmt;

#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i64,
    den: i64, // > 0, gcd(num, den) = 1
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[allow(clippy::should_implement_trait)] // plain method names read better for a tiny exact type
impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        let s = if den < 0 { -1 } else { 1 };
        Rat {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn from_int(n: i64) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    fn from_i128(num: i128, den: i128) -> Rat {
        assert!(den != 0);
        let g = {
            let (mut a, mut b) = (num.abs(), den.abs());
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            if a == 0 {
                1
            } else {
                a
            }
        };
        let s = if den < 0 { -1 } else { 1 };
        let (n, d) = (s * num / g, s * den / g);
        assert!(
            n >= i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128,
            "rational overflow"
        );
        Rat {
            num: n as i64,
            den: d as i64,
        }
    }

    pub fn add(self, o: Rat) -> Rat {
        Rat::from_i128(
            self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128,
            self.den as i128 * o.den as i128,
        )
    }

    pub fn sub(self, o: Rat) -> Rat {
        self.add(o.neg())
    }

    pub fn mul(self, o: Rat) -> Rat {
        Rat::from_i128(
            self.num as i128 * o.num as i128,
            self.den as i128 * o.den as i128,
        )
    }

    pub fn div(self, o: Rat) -> Rat {
        assert!(o.num != 0, "division by zero rational");
        Rat::from_i128(
            self.num as i128 * o.den as i128,
            self.den as i128 * o.num as i128,
        )
    }

    pub fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }

    pub fn scale(self, k: i64) -> Rat {
        Rat::from_i128(self.num as i128 * k as i128, self.den as i128)
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Rat) -> Ordering {
        (self.num as i128 * o.den as i128).cmp(&(o.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalization() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(1, -2), Rat::new(-1, 2));
        assert_eq!(Rat::new(0, -7), Rat::ZERO);
    }

    #[test]
    fn arithmetic() {
        let a = Rat::new(1, 4);
        let b = Rat::new(3, 4);
        assert_eq!(a.add(b), Rat::ONE);
        assert_eq!(b.sub(a), Rat::new(1, 2));
        assert_eq!(a.mul(b), Rat::new(3, 16));
        assert_eq!(a.div(b), Rat::new(1, 3));
        assert!(a < b);
    }

    proptest! {
        #[test]
        fn field_laws(an in -500i64..500, ad in 1i64..40, bn in -500i64..500, bd in 1i64..40, cn in -500i64..500, cd in 1i64..40) {
            let a = Rat::new(an, ad);
            let b = Rat::new(bn, bd);
            let c = Rat::new(cn, cd);
            prop_assert_eq!(a.add(b), b.add(a));
            prop_assert_eq!(a.add(b).add(c), a.add(b.add(c)));
            prop_assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)));
            prop_assert_eq!(a.sub(a), Rat::ZERO);
        }
    }
}
