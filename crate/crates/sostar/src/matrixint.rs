//! Integer matrices and determinant certificates.
//!
//! Nonvanishing of a determinant is certified by a nonzero value modulo a
//! random 62-bit prime; a zero residue proves nothing and escalates to more
//! primes and finally to exact fraction-free (Bareiss) elimination over big
//! integers.

use num_bigint::BigInt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub n: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> IntMatrix {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.n + c] = x;
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        IntMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, valid for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic splittable generator for prime sampling.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// A random prime in `[2^61, 2^62)`.
pub fn random_prime_62(rng: &mut SplitMix64) -> u64 {
    loop {
        let candidate = (rng.next() >> 3) | (1 << 61) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

/// Determinant modulo `p` by Gaussian elimination.
pub fn det_mod_p(m: &IntMatrix, p: u64) -> u64 {
    let n = m.n;
    let mut a: Vec<u64> = m
        .data
        .iter()
        .map(|&x| x.rem_euclid(p as i64) as u64)
        .collect();
    let mut det = 1u64;
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r * n + col] != 0);
        let Some(pivot) = pivot else {
            return 0;
        };
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
            }
            det = p - det;
            if det == p {
                det = 0;
            }
        }
        let pv = a[col * n + col];
        det = mul_mod(det, pv, p);
        let inv = pow_mod(pv, p - 2, p);
        for r in col + 1..n {
            let factor = mul_mod(a[r * n + col], inv, p);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let sub = mul_mod(factor, a[col * n + c], p);
                let cell = &mut a[r * n + c];
                *cell = (*cell + p - sub) % p;
            }
        }
    }
    det
}

/// Exact determinant by fraction-free elimination.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    let n = m.n;
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<BigInt> = m.data.iter().map(|&x| BigInt::from(x)).collect();
    let mut sign = 1i64;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k * n + k] == BigInt::from(0) {
            let swap = (k + 1..n).find(|&r| a[r * n + k] != BigInt::from(0));
            let Some(swap) = swap else {
                return BigInt::from(0);
            };
            for c in 0..n {
                a.swap(swap * n + c, k * n + c);
            }
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &a[r * n + c] * &a[k * n + k] - &a[r * n + k] * &a[k * n + c];
                a[r * n + c] = num / &prev;
            }
            a[r * n + k] = BigInt::from(0);
        }
        prev = a[k * n + k].clone();
    }
    let det = a[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Exact 4×4 determinant, for the small pairing blocks.
pub fn det_i128_small(m: &[[i64; 4]; 4]) -> i128 {
    fn det3(m: &[[i64; 4]; 4], cols: [usize; 3], rows: [usize; 3]) -> i128 {
        let a = |r: usize, c: usize| m[rows[r]][cols[c]] as i128;
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    }
    let rows = [1, 2, 3];
    let mut det = 0i128;
    let all = [0usize, 1, 2, 3];
    for (ix, &c) in all.iter().enumerate() {
        let rest: Vec<usize> = all.iter().copied().filter(|&x| x != c).collect();
        let minor = det3(m, [rest[0], rest[1], rest[2]], rows);
        let term = m[0][c] as i128 * minor;
        if ix % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Outcome of the layered determinant certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetCertificate {
    /// Nonzero residue modulo the recorded prime.
    NonzeroModPrime(u64),
    /// All sampled primes gave zero; exact elimination found a nonzero value.
    NonzeroExact,
    /// Exactly zero.
    Zero,
}

/// Certify whether `det(m) ≠ 0`; sound in both directions.
pub fn certify_det_nonzero(m: &IntMatrix, seed: u64) -> DetCertificate {
    let mut rng = SplitMix64(seed);
    for _ in 0..8 {
        let p = random_prime_62(&mut rng);
        if det_mod_p(m, p) != 0 {
            return DetCertificate::NonzeroModPrime(p);
        }
    }
    if bareiss_det(m) != BigInt::from(0) {
        DetCertificate::NonzeroExact
    } else {
        DetCertificate::Zero
    }
}

/// FNV-1a over little-endian words; used for evidence digests.
pub fn fnv64(words: impl IntoIterator<Item = i64>) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for w in words {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(61));
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(is_prime((1u64 << 61) - 1));
        let mut rng = SplitMix64(7);
        let p = random_prime_62(&mut rng);
        assert!(p >= (1 << 61) && is_prime(p));
    }

    #[test]
    fn modular_matches_exact_on_random_small_matrices() {
        let mut rng = SplitMix64(42);
        for _ in 0..20 {
            let rows: Vec<Vec<i64>> = (0..4)
                .map(|_| (0..4).map(|_| (rng.next() % 41) as i64 - 20).collect())
                .collect();
            let m = IntMatrix::from_rows(&rows);
            let exact = bareiss_det(&m);
            let p = random_prime_62(&mut rng);
            let modular = det_mod_p(&m, p);
            let exact_mod = ((exact.clone() % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
            assert_eq!(exact_mod, BigInt::from(modular));
            // the 4×4 path agrees too
            let mut small = [[0i64; 4]; 4];
            for r in 0..4 {
                for c in 0..4 {
                    small[r][c] = rows[r][c];
                }
            }
            assert_eq!(BigInt::from(det_i128_small(&small)), exact);
        }
    }

    #[test]
    fn certificate_detects_zero() {
        let singular = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(certify_det_nonzero(&singular, 5), DetCertificate::Zero);
        let regular = IntMatrix::from_rows(&[vec![1, 0], vec![3, 2]]);
        assert!(matches!(
            certify_det_nonzero(&regular, 5),
            DetCertificate::NonzeroModPrime(_)
        ));
    }

    #[test]
    fn bareiss_known_values() {
        let m = IntMatrix::from_rows(&[vec![3]]);
        assert_eq!(bareiss_det(&m), BigInt::from(3));
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(bareiss_det(&m), BigInt::from(-1));
    }
}
