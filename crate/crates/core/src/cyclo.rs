//! Exact arithmetic in the cyclotomic field Q(z), z a primitive l-th root of unity.
//!
//! Elements are stored as rational coefficient vectors of length phi(l),
//! reduced modulo the l-th cyclotomic polynomial. The reduced vector is
//! canonical, so equality of elements is equality of coefficient vectors.
//!
//! The generator `z` plays the role of the deformation parameter `q`
//! throughout the crate: `q_power(l, k)` is `q^k`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Coefficients (constant term first) of the l-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(l: i64) -> Result<Vec<i64>> {
    if l < 1 {
        return Err(Error::InvalidOrder(l));
    }
    let l = l as usize;
    // x^l - 1 divided by every Phi_d with d | l, d < l.
    let mut num = vec![0i64; l + 1];
    num[0] = -1;
    num[l] = 1;
    for d in 1..l {
        if l.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d as i64)?;
            num = exact_div(&num, &divisor);
        }
    }
    Ok(num)
}

// Division by a monic integer polynomial; the remainder is known to vanish.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Euler totient.
pub fn totient(l: u32) -> usize {
    (1..=l).filter(|k| k.gcd(&l) == 1).count()
}

/// ord(q^2) for q a primitive l-th root of unity.
pub fn ord_q2(l: u32) -> u32 {
    if l.is_multiple_of(2) {
        l / 2
    } else {
        l
    }
}

/// Precomputed data for Q(z_l).
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    degree: usize,
    modulus: Vec<i64>,
    // reductions[k] = x^k mod Phi_l, for k < reductions.len()
    reductions: Vec<Vec<i64>>,
}

impl CycloField {
    fn new(order: u32) -> Result<Self> {
        if order < 3 {
            return Err(Error::InvalidOrder(order as i64));
        }
        let modulus = cyclotomic_polynomial(order as i64)?;
        let degree = modulus.len() - 1;
        let table_len = (2 * degree).max(order as usize + 1);
        let mut reductions = Vec::with_capacity(table_len);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..table_len {
            reductions.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * modulus[i];
                }
            }
        }
        Ok(CycloField {
            order,
            degree,
            modulus,
            reductions,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }
}

/// Shared field table for order `l`; built once per order.
pub fn field(l: u32) -> Result<&'static CycloField> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycloField>>> = OnceLock::new();
    let fields = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = fields.lock().expect("field registry poisoned");
    if let Some(f) = guard.get(&l) {
        return Ok(f);
    }
    let f: &'static CycloField = Box::leak(Box::new(CycloField::new(l)?));
    guard.insert(l, f);
    Ok(f)
}

fn field_or_panic(l: u32) -> &'static CycloField {
    field(l).unwrap_or_else(|e| panic!("{e}"))
}

/// An element of Q(z_l) in canonical reduced form.
#[derive(Clone)]
pub struct CycloNum {
    field: &'static CycloField,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycloNum {
    pub fn zero_in(field: &'static CycloField) -> Self {
        CycloNum {
            field,
            coeffs: vec![Rational::zero(); field.degree],
        }
    }

    /// Panics if `l < 3`; use [`field`] first when `l` is untrusted.
    pub fn zero(l: u32) -> Self {
        Self::zero_in(field_or_panic(l))
    }

    pub fn one(l: u32) -> Self {
        Self::from_int(l, 1)
    }

    pub fn from_int(l: u32, n: i64) -> Self {
        Self::from_rational(l, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(l: u32, r: Rational) -> Self {
        let mut x = Self::zero(l);
        x.coeffs[0] = r;
        x
    }

    pub fn from_ratio(l: u32, num: i64, den: i64) -> Self {
        Self::from_rational(l, Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds an element from polynomial coefficients (constant term first) of any length.
    pub fn from_poly(l: u32, poly: &[Rational]) -> Result<Self> {
        let f = field(l)?;
        let mut out = Self::zero_in(f);
        for (k, c) in poly.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(k, c);
            }
        }
        Ok(out)
    }

    /// Builds an element from a coefficient vector that is already reduced.
    pub fn from_coeffs(l: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let f = field(l)?;
        if coeffs.len() != f.degree {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients for l = {l}, got {}",
                f.degree,
                coeffs.len()
            )));
        }
        Ok(CycloNum { field: f, coeffs })
    }

    /// q^k where q = z_l; negative exponents allowed.
    pub fn q_power(l: u32, k: i64) -> Self {
        let f = field_or_panic(l);
        let e = k.rem_euclid(l as i64) as usize;
        let coeffs = f.reductions[e]
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        CycloNum { field: f, coeffs }
    }

    pub fn zeta(l: u32) -> Self {
        Self::q_power(l, 1)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn add_scaled_power(&mut self, k: usize, c: &Rational) {
        let table = &self.field.reductions;
        if k < table.len() {
            for (dst, &r) in self.coeffs.iter_mut().zip(&table[k]) {
                if r != 0 {
                    *dst += c * Rational::from_integer(BigInt::from(r));
                }
            }
        } else {
            // z^k = z^(k mod l)
            let k = k % self.field.order as usize;
            self.add_scaled_power(k, c);
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            Err(Error::OrderMismatch(self.field.order, other.field.order))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloNum {
            field: self.field,
            coeffs,
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.field.degree;
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out = CycloNum {
            field: self.field,
            coeffs: prod[..d].to_vec(),
        };
        for (k, c) in prod.iter().enumerate().skip(d) {
            if !c.is_zero() {
                out.add_scaled_power(k, c);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero_in(self.field);
        }
        CycloNum {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse, by solving a linear system against the
    /// multiplication-by-self matrix.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.field.order, r.recip()));
        }
        let d = self.field.degree;
        // column j = self * z^j
        let mut cols = Vec::with_capacity(d);
        let mut basis = Self::zero_in(self.field);
        for j in 0..d {
            basis.coeffs.iter_mut().for_each(|c| c.set_zero());
            basis.coeffs[j] = Rational::one();
            cols.push(self.mul_unchecked(&basis).coeffs);
        }
        // augmented rows: [M | e_0]
        let mut rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !rows[r][col].is_zero())
                .expect("multiplication matrix of a nonzero field element is invertible");
            rows.swap(col, piv);
            let p = rows[col][col].clone();
            for v in rows[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..d {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let pivot_row = rows[col].clone();
                    for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        let coeffs = rows.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Ok(CycloNum {
            field: self.field,
            coeffs,
        })
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = CycloNum::one(self.field.order);
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// Nonnegative power; never fails.
    pub fn powu(&self, k: u32) -> Self {
        self.pow(k as i64).expect("nonnegative power")
    }

    /// n-th roots of `self` that can be found inside the field from the
    /// rational part and from the supplied candidates, each multiplied by
    /// every root of unity of the field (+-z^k).
    pub fn nth_roots(&self, n: u32, hints: &[CycloNum]) -> Vec<CycloNum> {
        let l = self.field.order;
        let mut seeds: Vec<CycloNum> = hints.iter().filter(|h| h.order() == l).cloned().collect();
        if let Some(r) = self.as_rational() {
            if let Some(root) = rational_nth_root(r, n) {
                seeds.push(CycloNum::from_rational(l, root));
            }
        }
        let mut out: Vec<CycloNum> = Vec::new();
        for s in seeds {
            if s.is_zero() {
                continue;
            }
            for k in 0..l as i64 {
                for sign in [1i64, -1] {
                    let cand = s.mul_unchecked(&CycloNum::q_power(l, k)).scale(&Rational::from_integer(
                        BigInt::from(sign),
                    ));
                    if !out.contains(&cand) && cand.powu(n) == *self {
                        out.push(cand);
                    }
                }
            }
        }
        out
    }
}

/// Exact n-th root of a rational, if it exists.
pub fn rational_nth_root(r: &Rational, n: u32) -> Option<Rational> {
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let neg = r.is_negative();
    if neg && n.is_multiple_of(2) {
        return None;
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let a = num.nth_root(n);
    let b = den.nth_root(n);
    if num::pow(&a, n) == num && num::pow(&b, n) == den {
        let root = Rational::new(if neg { -a } else { a }, b);
        Some(root)
    } else {
        None
    }
}

mod num {
    use num_bigint::BigInt;
    use num_traits::One;

    pub fn pow(b: &BigInt, n: u32) -> BigInt {
        let mut acc = BigInt::one();
        for _ in 0..n {
            acc *= b;
        }
        acc
    }
}

/// q^k as a field element.
pub fn q_power(l: u32, k: i64) -> CycloNum {
    CycloNum::q_power(l, k)
}

/// The q-integer (q^{-2i} - 1)/(q^{-2} - 1) = 1 + q^{-2} + ... + q^{-2(i-1)}.
pub fn q_int(l: u32, i: u32) -> CycloNum {
    let mut acc = CycloNum::zero(l);
    for j in 0..i as i64 {
        acc += CycloNum::q_power(l, -2 * j);
    }
    acc
}

/// Symmetric quantum integer [s] = (q^s - q^{-s})/(q - q^{-1}).
pub fn sym_q_int(l: u32, s: i64) -> CycloNum {
    let num = q_power(l, s) - q_power(l, -s);
    let den = q_power(l, 1) - q_power(l, -1);
    num / den
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            match k {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{coef}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[l={}]({})", self.field.order, self)
    }
}

// Operator impls panic on order mismatch; the checked_* methods return errors.
macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
                $body(self, rhs)
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &CycloNum, b: &CycloNum| a.add_unchecked(b));
binop!(Sub, sub, |a: &CycloNum, b: &CycloNum| a.add_unchecked(&-b));
binop!(Mul, mul, |a: &CycloNum, b: &CycloNum| a.mul_unchecked(b));
binop!(Div, div, |a: &CycloNum, b: &CycloNum| a
    .mul_unchecked(&b.inv().expect("division by zero")));

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl AddAssign<CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: CycloNum) {
        *self += &rhs;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = &*self * rhs;
    }
}

/// Smallest k >= 1 with x^k = 1, if below `bound`.
pub fn multiplicative_order(x: &CycloNum, bound: u32) -> Option<u32> {
    let mut acc = x.clone();
    for k in 1..=bound {
        if acc.is_one() {
            return Some(k);
        }
        acc = &acc * x;
    }
    None
}

/// Parses a rational written as `a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("bad rational `{s}`"),
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Small integer view of a rational, for reporting.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(l: u32, poly: &[i64]) -> CycloNum {
        let p: Vec<Rational> = poly.iter().map(|&x| Rational::from_integer(x.into())).collect();
        CycloNum::from_poly(l, &p).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(3).unwrap(), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6).unwrap(), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(8).unwrap(), vec![1, 0, 0, 0, 1]);
        assert!(matches!(cyclotomic_polynomial(0), Err(Error::InvalidOrder(0))));
    }

    #[test]
    fn degree_is_totient() {
        for l in 3..=12u32 {
            assert_eq!(field(l).unwrap().degree(), totient(l));
        }
    }

    #[test]
    fn basic_identities() {
        assert!(c(3, &[1, 1, 1]).is_zero());
        assert_eq!(CycloNum::zeta(4) * CycloNum::zeta(4), CycloNum::from_int(4, -1));
        // (1+z)(1+z^2) = 1 + z + z^2 + z^3 = 1 for l = 3
        assert_eq!(c(3, &[1, 1]) * c(3, &[1, 0, 1]), CycloNum::one(3));
    }

    #[test]
    fn inverses() {
        assert_eq!(CycloNum::zeta(4).inv().unwrap(), -CycloNum::zeta(4));
        assert_eq!(CycloNum::one(3).inv().unwrap(), CycloNum::one(3));
        assert_eq!(CycloNum::zeta(3).inv().unwrap(), q_power(3, 2));
        assert_eq!(CycloNum::zero(3).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn q_powers() {
        assert!(q_power(3, 3).is_one());
        assert_eq!(q_power(4, -1), -CycloNum::zeta(4));
        assert_eq!(q_power(3, 5), q_power(3, 2));
        for l in 3..=8 {
            assert!(q_power(l, l as i64).is_one());
            for k in 1..l as i64 {
                assert!(!q_power(l, k).is_one(), "z^{k} = 1 for l = {l}");
            }
        }
    }

    #[test]
    fn q_integers() {
        assert!(q_int(5, 0).is_zero());
        assert!(q_int(5, 1).is_one());
        assert_eq!(q_int(3, 2), c(3, &[1, 1]));
        for l in 3..=6 {
            let qm2 = q_power(l, -2);
            for i in 0..2 * l {
                assert_eq!(q_int(l, i + 1), CycloNum::one(l) + &qm2 * q_int(l, i));
                // closed form
                if i > 0 {
                    let closed = (q_power(l, -2 * i as i64) - CycloNum::one(l))
                        / (q_power(l, -2) - CycloNum::one(l));
                    assert_eq!(q_int(l, i), closed);
                }
            }
        }
        // q-integer vanishes exactly at multiples of ord(q^2)
        assert!(q_int(3, 3).is_zero());
        assert!(q_int(4, 2).is_zero());
    }

    #[test]
    fn orders_of_q_squared() {
        assert_eq!(ord_q2(3), 3);
        assert_eq!(ord_q2(4), 2);
        assert_eq!(ord_q2(6), 3);
        for l in 3..=10 {
            let q2 = q_power(l, 2);
            assert_eq!(multiplicative_order(&q2, 2 * l), Some(ord_q2(l)));
        }
    }

    #[test]
    fn mismatched_orders() {
        let a = CycloNum::one(3);
        let b = CycloNum::one(4);
        assert_eq!(a.checked_add(&b), Err(Error::OrderMismatch(3, 4)));
        assert_eq!(a.checked_mul(&b), Err(Error::OrderMismatch(3, 4)));
    }

    #[test]
    fn display() {
        let x = CycloNum::from_poly(
            5,
            &[
                Rational::from_integer((-3).into()),
                Rational::zero(),
                Rational::new(1.into(), 2.into()),
            ],
        )
        .unwrap();
        assert_eq!(x.to_string(), "1/2*z^2 - 3");
        assert_eq!(CycloNum::zero(5).to_string(), "0");
        assert_eq!((-CycloNum::zeta(5)).to_string(), "-z");
    }

    #[test]
    fn roots() {
        let eight = CycloNum::from_int(3, 8);
        let roots = eight.nth_roots(3, &[]);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&CycloNum::from_int(3, 2)));
        assert!(CycloNum::from_int(3, 7).nth_roots(3, &[]).is_empty());
        let hint = CycloNum::zeta(5) + CycloNum::one(5);
        let target = hint.powu(5);
        assert!(target.nth_roots(5, std::slice::from_ref(&hint)).contains(&hint));
        assert_eq!(
            rational_nth_root(&Rational::new((-8).into(), 27.into()), 3),
            Some(Rational::new((-2).into(), 3.into()))
        );
    }
}
