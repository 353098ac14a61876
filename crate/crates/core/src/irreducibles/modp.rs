//! Small prime-field linear algebra.

/// Arithmetic modulo a prime below `2^32`.
#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 32);
        Self { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn from_usize(self, n: usize) -> u64 {
        n as u64 % self.p
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(self) -> u64 {
        let factors = prime_factors(self.p - 1);
        (1..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, (self.p - 1) / f) != 1))
            .expect("prime fields have primitive roots")
    }

    /// Characteristic polynomial of a square matrix (coefficients lowest
    /// first, monic), via reduction to upper Hessenberg form.
    pub fn char_poly(self, m: &[Vec<u64>]) -> Vec<u64> {
        let n = m.len();
        let mut h: Vec<Vec<u64>> = m.to_vec();
        for col in 0..n.saturating_sub(2) {
            let Some(piv) = (col + 1..n).find(|&r| h[r][col] != 0) else {
                continue;
            };
            if piv != col + 1 {
                h.swap(piv, col + 1);
                for row in h.iter_mut() {
                    row.swap(piv, col + 1);
                }
            }
            let inv = self.inv(h[col + 1][col]);
            for r in col + 2..n {
                if h[r][col] == 0 {
                    continue;
                }
                let f = self.mul(h[r][col], inv);
                // Row op R_r -= f R_{col+1}, then column op C_{col+1} += f C_r.
                #[allow(clippy::needless_range_loop)]
                for c in 0..n {
                    let v = self.mul(f, h[col + 1][c]);
                    h[r][c] = self.sub(h[r][c], v);
                }
                for row in h.iter_mut() {
                    let v = self.mul(f, row[r]);
                    row[col + 1] = self.add(row[col + 1], v);
                }
            }
        }
        // polys[k] is the characteristic polynomial of the leading k×k block.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            // (x - h[k][k]) * polys[k]
            let prev = &polys[k];
            let mut next = vec![0u64; k + 2];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(h[k][k], c));
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let coef = self.mul(prod, h[i][k]);
                if coef == 0 {
                    continue;
                }
                for (t, &c) in polys[i].iter().enumerate() {
                    next[t] = self.sub(next[t], self.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Distinct roots of a polynomial, found by exhaustive evaluation.
    pub fn roots(self, poly: &[u64]) -> Vec<u64> {
        let deg = poly.len() - 1;
        let mut out = Vec::new();
        for x in 0..self.p {
            if self.eval(poly, x) == 0 {
                out.push(x);
                if out.len() == deg {
                    break;
                }
            }
        }
        out
    }

    /// Basis of the null space of `m` (rows × cols), as vectors of length cols.
    pub fn null_space(self, m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut a: Vec<Vec<u64>> = m.to_vec();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(piv) = (row..a.len()).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(row, piv);
            let inv = self.inv(a[row][col]);
            a[row].iter_mut().for_each(|x| *x = self.mul(*x, inv));
            for r in 0..a.len() {
                if r != row && a[r][col] != 0 {
                    let f = a[r][col];
                    #[allow(clippy::needless_range_loop)]
                    for c in 0..cols {
                        let v = self.mul(f, a[row][c]);
                        a[r][c] = self.sub(a[r][c], v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.len() {
                break;
            }
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u64; cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, a[r][free]);
                }
                v
            })
            .collect()
    }

    /// Reduced row echelon form of the given rows; returns the nonzero rows
    /// and their pivot columns.
    pub fn rref(self, rows: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<usize>) {
        let mut a = rows;
        let cols = a.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == a.len() {
                break;
            }
            let Some(piv) = (row..a.len()).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(row, piv);
            let inv = self.inv(a[row][col]);
            a[row].iter_mut().for_each(|x| *x = self.mul(*x, inv));
            for r in 0..a.len() {
                if r != row && a[r][col] != 0 {
                    let f = a[r][col];
                    #[allow(clippy::needless_range_loop)]
                    for c in 0..cols {
                        let v = self.mul(f, a[row][c]);
                        a[r][c] = self.sub(a[r][c], v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        a.truncate(row);
        (a, pivots)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least prime `p ≡ 1 (mod modulus)` with `p > lower`.
pub fn prime_above(modulus: u64, lower: u64) -> u64 {
    let mut p = (lower / modulus + 1) * modulus + 1;
    while !is_prime(p) {
        p += modulus;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(prime_above(840, 402), 2521);
        assert_eq!(prime_above(6, 10), 13);
        assert!(is_prime(2521));
        assert!(!is_prime(841));
    }

    #[test]
    fn char_poly_matches_determinant_expansion() {
        let f = Fp::new(13);
        // [[2,1],[1,3]] → x² - 5x + 5
        assert_eq!(f.char_poly(&[vec![2, 1], vec![1, 3]]), vec![5, 8, 1]);
        // Companion-like 3×3 with a zero subdiagonal entry to hit the pivot swap.
        let m = vec![vec![1, 2, 3], vec![0, 4, 5], vec![6, 0, 7]];
        let cp = f.char_poly(&m);
        for x in 0..13 {
            let shifted: Vec<Vec<u64>> = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| if i == j { f.sub(m[i][j], x) } else { m[i][j] })
                        .collect()
                })
                .collect();
            let det = det3(f, &shifted);
            // det(M - xI) = -charpoly(x) for odd dimension.
            assert_eq!(f.sub(0, det), f.eval(&cp, x));
        }
    }

    fn det3(f: Fp, m: &[Vec<u64>]) -> u64 {
        let t = |a: u64, b: u64, c: u64| f.mul(f.mul(a, b), c);
        let pos = f.add(
            f.add(t(m[0][0], m[1][1], m[2][2]), t(m[0][1], m[1][2], m[2][0])),
            t(m[0][2], m[1][0], m[2][1]),
        );
        let neg = f.add(
            f.add(t(m[0][2], m[1][1], m[2][0]), t(m[0][0], m[1][2], m[2][1])),
            t(m[0][1], m[1][0], m[2][2]),
        );
        f.sub(pos, neg)
    }

    #[test]
    fn null_space_and_roots() {
        let f = Fp::new(7);
        let ns = f.null_space(&[vec![1, 2, 3]], 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(f.add(f.add(v[0], f.mul(2, v[1])), f.mul(3, v[2])), 0);
        }
        // (x-2)(x-5) = x² - 7x + 10 ≡ x² + 3 mod 7
        assert_eq!(f.roots(&[3, 0, 1]), vec![2, 5]);
        let g = f.primitive_root();
        assert_eq!(g, 3);
    }
}
