//! Reduction of cyclotomic matrices modulo a prime `p = 1 mod l`, with the
//! root of unity sent to an element of order `l` in `F_p`. The reduction is
//! a ring map, so ranks can only drop; a full rank modulo `p` certifies full
//! rank over the cyclotomic field.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::CycloNum;
use crate::linalg::SparseMatrix;

const START: u64 = (1 << 31) - 1;
const ATTEMPTS: usize = 2;

fn is_prime(n: u64) -> bool {
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

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
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

/// A prime field together with the image of the root of unity.
#[derive(Clone, Copy, Debug)]
struct Field {
    p: u64,
    root: u64,
}

impl Field {
    /// Primes `p = 1 mod l` below `2^31`, largest first.
    fn candidates(l: u32) -> impl Iterator<Item = Field> {
        let l = l as u64;
        let factors = prime_factors(l);
        let top = START - (START - 1) % l;
        (0..)
            .map(move |k| top - k * l)
            .take_while(move |&p| p > l)
            .filter(|&p| is_prime(p))
            .filter_map(move |p| {
                (2..p).find_map(|g| {
                    let r = pow_mod(g, (p - 1) / l, p);
                    factors.iter().all(|&f| pow_mod(r, l / f, p) != 1).then_some(Field { p, root: r })
                })
            })
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    fn reduce_int(&self, x: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((x % &p) + &p) % &p;
        r.to_u64().expect("residue fits")
    }

    fn reduce(&self, c: &CycloNum) -> Option<u64> {
        let mut acc = 0;
        let mut pw = 1;
        for r in c.coeffs() {
            if !r.is_zero() {
                let den = self.reduce_int(r.denom());
                if den == 0 {
                    return None;
                }
                let v = self.reduce_int(r.numer()) * self.inv(den) % self.p;
                acc = (acc + v * pw) % self.p;
            }
            pw = pw * self.root % self.p;
        }
        Some(acc)
    }
}

type Row = Vec<(usize, u64)>;

fn reduce_matrix(f: &Field, m: &SparseMatrix) -> Option<Vec<Row>> {
    m.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|(j, c)| f.reduce(c).map(|v| (*j, v)))
                .filter(|x| !matches!(x, Some((_, 0))))
                .collect::<Option<Row>>()
        })
        .collect()
}

/// Rows kept with distinct pivots, each normalized to 1 at its pivot.
struct Basis {
    p: u64,
    pivots: Vec<Option<usize>>,
    rows: Vec<Vec<u64>>,
}

impl Basis {
    fn insert(&mut self, mut v: Vec<u64>, f: &Field) -> Option<Vec<u64>> {
        let p = self.p;
        for i in 0..v.len() {
            if v[i] == 0 {
                continue;
            }
            match self.pivots[i] {
                Some(k) => {
                    let c = v[i];
                    let row = &self.rows[k];
                    for (x, y) in v.iter_mut().zip(row).skip(i) {
                        if *y != 0 {
                            *x = (*x + (p - c) * y) % p;
                        }
                    }
                }
                None => {
                    let s = f.inv(v[i]);
                    for x in v.iter_mut().skip(i) {
                        *x = *x * s % p;
                    }
                    self.pivots[i] = Some(self.rows.len());
                    self.rows.push(v.clone());
                    return Some(v);
                }
            }
        }
        None
    }
}

fn closure_full_over(f: &Field, n: usize, gens: &[Vec<Row>]) -> bool {
    let full = n * n;
    let mut basis = Basis {
        p: f.p,
        pivots: vec![None; full],
        rows: Vec::new(),
    };
    let mut id = vec![0; full];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let mut queue = VecDeque::new();
    queue.extend(basis.insert(id, f));
    while let Some(a) = queue.pop_front() {
        for g in gens {
            if basis.rows.len() == full {
                return true;
            }
            let mut prod = vec![0; full];
            for i in 0..n {
                for k in 0..n {
                    let x = a[i * n + k];
                    if x == 0 {
                        continue;
                    }
                    for &(j, c) in &g[k] {
                        let e = &mut prod[i * n + j];
                        *e = (*e + x * c) % f.p;
                    }
                }
            }
            queue.extend(basis.insert(prod, f));
        }
    }
    basis.rows.len() == full
}

/// True when the reductions of `gens` modulo some prime already span all
/// `n x n` matrices. False means undecided, not that the span is smaller.
pub(crate) fn closure_is_full(l: u32, n: usize, gens: &[SparseMatrix]) -> bool {
    Field::candidates(l).take(ATTEMPTS).any(|f| {
        let reduced: Option<Vec<Vec<Row>>> = gens.iter().map(|g| reduce_matrix(&f, g)).collect();
        reduced.is_some_and(|r| closure_full_over(&f, n, &r))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::q_power;

    #[test]
    fn root_has_exact_order() {
        for l in 3..=12u32 {
            let f = Field::candidates(l).next().unwrap();
            assert_eq!(f.p % l as u64, 1);
            assert_eq!(pow_mod(f.root, l as u64, f.p), 1);
            assert!((1..l as u64).all(|k| pow_mod(f.root, k, f.p) != 1));
        }
    }

    #[test]
    fn reduction_is_multiplicative() {
        for l in [3u32, 4, 5, 8] {
            let f = Field::candidates(l).next().unwrap();
            let a = &q_power(l, 1) + &CycloNum::from_ratio(l, 3, 7);
            let b = &q_power(l, 3) - &CycloNum::from_int(l, 2);
            let ab = f.reduce(&(&a * &b)).unwrap();
            assert_eq!(ab, f.reduce(&a).unwrap() * f.reduce(&b).unwrap() % f.p);
        }
    }
}
