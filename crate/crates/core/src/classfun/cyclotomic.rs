//! Exact arithmetic in cyclotomic fields `ℚ(ζ_m)`.
//!
//! Values are stored over the power basis `1, ζ, …, ζ^{φ(m)-1}` and kept
//! reduced modulo the `m`-th cyclotomic polynomial, so a value is zero exactly
//! when every stored coefficient is zero.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduction data for one conductor.
struct Field {
    m: usize,
    phi: usize,
    /// `ζ^k` for `k` in `0..m`, as sparse power-basis coefficients.
    powers: Vec<Vec<(usize, BigInt)>>,
}

fn field(m: usize) -> Arc<Field> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&m) {
        return f.clone();
    }
    let f = Arc::new(build_field(m));
    cache.lock().unwrap().entry(m).or_insert(f).clone()
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(m: usize) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    assert!(m >= 1, "conductor must be positive");
    // x^m - 1 divided by every Φ_d with d a proper divisor of m.
    let mut p = vec![BigInt::zero(); m + 1];
    p[0] = -BigInt::one();
    p[m] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = div_monic(&p, &cyclotomic_polynomial(d));
    }
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// Exact quotient of `num` by the monic `den`.
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division not exact");
    q
}

fn build_field(m: usize) -> Field {
    let poly = cyclotomic_polynomial(m);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(m);
    let mut cur = vec![BigInt::zero(); phi];
    if phi > 0 {
        cur[0] = BigInt::one();
    }
    for _ in 0..m {
        powers.push(
            cur.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        );
        // Multiply by ζ and fold the overflow back with the monic relation.
        let top = cur.pop().unwrap_or_default();
        cur.insert(0, BigInt::zero());
        for (j, c) in poly.iter().take(phi).enumerate() {
            cur[j] -= &top * c;
        }
    }
    Field { m, phi, powers }
}

type DescentMap = Vec<Vec<(usize, BigRational)>>;

/// A left inverse of the embedding `ℚ(ζ_small) → ℚ(ζ_big)` on power-basis
/// coordinates: row `j` gives coefficient `j` of the preimage as a sparse
/// combination of the big-field coefficients.
fn descent_map(big: usize, small: usize) -> Arc<DescentMap> {
    type Cache = Mutex<HashMap<(usize, usize), Arc<DescentMap>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap().get(&(big, small)) {
        return m.clone();
    }
    let phi_small = field(small).phi;
    let phi_big = field(big).phi;
    // Column j of the embedding matrix is ζ_small^j written in the big field.
    let columns: Vec<Cyclotomic> = (0..phi_small)
        .map(|j| Cyclotomic::root_of_unity(big, j * (big / small)))
        .collect();
    let row_of =
        |i: usize| -> Vec<BigRational> { columns.iter().map(|c| c.coeffs[i].clone()).collect() };
    // Pick phi_small independent rows greedily.
    let mut picked = Vec::new();
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for i in 0..phi_big {
        let mut r = row_of(i);
        for (p, b) in &echelon {
            if !r[*p].is_zero() {
                let f = r[*p].clone() / &b[*p];
                r.iter_mut().zip(b).for_each(|(x, y)| *x -= &f * y);
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            echelon.push((p, r));
            picked.push(i);
            if picked.len() == phi_small {
                break;
            }
        }
    }
    assert_eq!(picked.len(), phi_small, "embedding has full column rank");
    // Invert the square submatrix by Gauss-Jordan.
    let n = phi_small;
    let mut a: Vec<Vec<BigRational>> = picked.iter().map(|&i| row_of(i)).collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].clone();
        a[col].iter_mut().for_each(|x| *x /= &f);
        inv[col].iter_mut().for_each(|x| *x /= &f);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let g = a[r][col].clone();
                let (arow, irow) = (a[col].clone(), inv[col].clone());
                a[r].iter_mut().zip(&arow).for_each(|(x, y)| *x -= &g * y);
                inv[r].iter_mut().zip(&irow).for_each(|(x, y)| *x -= &g * y);
            }
        }
    }
    // Submatrix rows were indexed by picked[i], so column i of the inverse
    // reads big-field coefficient picked[i].
    let map: DescentMap = inv
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(i, w)| (picked[i], w))
                .collect()
        })
        .collect();
    let map = Arc::new(map);
    cache.lock().unwrap().insert((big, small), map.clone());
    map
}

/// An element of `ℚ(ζ_m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(conductor: usize) -> Self {
        let field = field(conductor);
        let coeffs = vec![BigRational::zero(); field.phi];
        Self { field, coeffs }
    }

    pub fn from_rational(conductor: usize, r: BigRational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(conductor: usize, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(n.into()))
    }

    pub fn one(conductor: usize) -> Self {
        Self::from_integer(conductor, 1)
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(conductor: usize, k: usize) -> Self {
        Self::from_power_terms(conductor, [(k, BigRational::one())])
    }

    /// `Σ c · ζ_m^k` over the given `(k, c)` terms; exponents are taken mod `m`.
    pub fn from_power_terms<I>(conductor: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        let field = field(conductor);
        let mut buf = vec![BigRational::zero(); conductor];
        for (k, c) in terms {
            buf[k % conductor] += c;
        }
        Self::reduce(field, buf)
    }

    /// Builds from power-basis coefficients (length φ(m)).
    pub fn from_coeffs(conductor: usize, coeffs: Vec<BigRational>) -> Option<Self> {
        let field = field(conductor);
        (coeffs.len() == field.phi).then_some(Self { field, coeffs })
    }

    fn reduce(field: Arc<Field>, buf: Vec<BigRational>) -> Self {
        let mut coeffs = vec![BigRational::zero(); field.phi];
        for (k, c) in buf.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < field.phi {
                coeffs[k] += c;
            } else {
                for (j, w) in &field.powers[k] {
                    coeffs[*j] += &c * BigRational::from_integer(w.clone());
                }
            }
        }
        Self { field, coeffs }
    }

    pub fn conductor(&self) -> usize {
        self.field.m
    }

    /// Power-basis coefficients, length φ(m).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(BigRational::is_integer)
            .map(|r| r.to_integer())
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// The same value viewed in `ℚ(ζ_M)` for a multiple `M` of the conductor.
    pub fn lift(&self, conductor: usize) -> Self {
        assert_eq!(
            conductor % self.conductor(),
            0,
            "target conductor must be a multiple"
        );
        if conductor == self.conductor() {
            return self.clone();
        }
        if let Some(r) = self.to_rational() {
            return Self::from_rational(conductor, r);
        }
        let step = conductor / self.conductor();
        Self::from_power_terms(
            conductor,
            self.nonzero().map(|(k, c)| (k * step, c.clone())),
        )
    }

    /// The same value in `ℚ(ζ_m)` for a divisor `m` of the conductor, if it
    /// lies in that subfield.
    pub fn descend(&self, conductor: usize) -> Option<Self> {
        let big = self.conductor();
        if !big.is_multiple_of(conductor) {
            return None;
        }
        if big == conductor {
            return Some(self.clone());
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::from_rational(conductor, r));
        }
        let map = descent_map(big, conductor);
        let coeffs: Vec<BigRational> = map
            .iter()
            .map(|row| {
                row.iter().fold(BigRational::zero(), |acc, (k, w)| {
                    acc + &self.coeffs[*k] * w
                })
            })
            .collect();
        let candidate = Self::from_coeffs(conductor, coeffs)?;
        (candidate.lift(big) == *self).then_some(candidate)
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.conductor().lcm(&b.conductor());
        (a.lift(m), b.lift(m))
    }

    /// Complex conjugate: `ζ^k ↦ ζ^{m-k}`.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let m = self.conductor();
        Self::from_power_terms(m, self.nonzero().map(|(k, c)| ((m - k) % m, c.clone())))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        BigRational::zero()
                    } else {
                        c * r
                    }
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Lexicographic comparison of coefficient vectors (same conductor).
    pub fn cmp_coeffs(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.conductor(), other.conductor());
        self.coeffs.cmp(&other.coeffs)
    }

    /// Coefficients rendered as `"p"` or `"p/q"`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.coeffs == other.coeffs;
        }
        // Rationals have a unique representation in every field.
        match (self.to_rational(), other.to_rational()) {
            (Some(a), Some(b)) => return a == b,
            (Some(_), None) | (None, Some(_)) => return false,
            (None, None) => {}
        }
        let (a, b) = Self::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor() != rhs.conductor() {
            let (a, b) = Cyclotomic::unify(self, rhs);
            return &a + &b;
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| match (a.is_zero(), b.is_zero()) {
                    (true, _) => b.clone(),
                    (_, true) => a.clone(),
                    _ => a + b,
                })
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| if c.is_zero() { c.clone() } else { -c })
                .collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor() != rhs.conductor() {
            let (a, b) = Cyclotomic::unify(self, rhs);
            return &a * &b;
        }
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        let m = self.conductor();
        let mut buf = vec![BigRational::zero(); m];
        for (i, a) in self.nonzero() {
            for (j, b) in rhs.nonzero() {
                buf[(i + j) % m] += a * b;
            }
        }
        Cyclotomic::reduce(self.field.clone(), buf)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for Cyclotomic {
    /// Rationals print plainly; other values as sums of `c*E(m)^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let m = self.conductor();
        let mut first = true;
        for (k, c) in self.nonzero() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            if !unit || k == 0 {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "E({m})")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.conductor(), self)
    }
}
