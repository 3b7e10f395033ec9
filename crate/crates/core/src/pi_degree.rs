//! PI degrees of quantum affine spaces from skew-symmetric exponent matrices.
//!
//! A quantum affine space with relations `x_i x_j = q^{h_ij} x_j x_i` and `q`
//! of order `m` has PI degree `prod m / gcd(h_i, m)` over the invariant
//! factors `h_i` of `H` (one per 2x2 block), which equals the square root of
//! the size of the subgroup of `(Z/m)^n` generated by the rows of `H`.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Default bound on `m^n` for [`image_cardinality_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewIntMatrix {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl SkewIntMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if entries[i][j] != -entries[j][i] {
                    return Err(Error::InvalidInput(format!("not skew-symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(SkewIntMatrix { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        SkewIntMatrix {
            n,
            entries: vec![vec![0; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewNormalForm {
    /// One entry per 2x2 block, each dividing the next.
    pub factors: Vec<i64>,
    pub kernel_dim: usize,
    /// Unimodular `U` with `U H U^T` equal to [`SkewNormalForm::block_form`].
    pub transform: Vec<Vec<i64>>,
}

impl SkewNormalForm {
    pub fn block_form(&self) -> Vec<Vec<i64>> {
        let n = self.transform.len();
        let mut out = vec![vec![0; n]; n];
        for (k, &h) in self.factors.iter().enumerate() {
            out[2 * k][2 * k + 1] = h;
            out[2 * k + 1][2 * k] = -h;
        }
        out
    }
}

// Working state: A = U H U^T, every operation applied to both.
struct Reducer {
    a: Vec<Vec<i64>>,
    u: Vec<Vec<i64>>,
}

impl Reducer {
    /// row_i += c * row_j and col_i += c * col_j
    fn add(&mut self, i: usize, j: usize, c: i64) {
        if c == 0 {
            return;
        }
        let n = self.a.len();
        for k in 0..n {
            self.a[i][k] += c * self.a[j][k];
            self.u[i][k] += c * self.u[j][k];
        }
        for k in 0..n {
            self.a[k][i] += c * self.a[k][j];
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
    }

    // Smallest nonzero |a_ij| with k <= i < j.
    fn min_entry(&self, k: usize) -> Option<(usize, usize)> {
        let n = self.a.len();
        let mut best: Option<(usize, usize)> = None;
        for i in k..n {
            for j in i + 1..n {
                let v = self.a[i][j].abs();
                if v != 0 && best.is_none_or(|(bi, bj)| v < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

pub fn skew_normal_form(h: &SkewIntMatrix) -> SkewNormalForm {
    let n = h.n;
    let mut r = Reducer {
        a: h.entries.clone(),
        u: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
    };
    let mut factors = Vec::new();
    let mut k = 0;
    while k + 1 < n {
        let Some((i, j)) = r.min_entry(k) else { break };
        r.swap(k, i);
        // j may have been moved by the first swap
        let j = if j == k { i } else { j };
        r.swap(k + 1, j);
        if r.a[k][k + 1] < 0 {
            r.swap(k, k + 1);
        }
        let piv = r.a[k][k + 1];
        let mut clean = true;
        for j in k + 2..n {
            let c = Integer::div_floor(&r.a[k][j], &piv);
            r.add(j, k + 1, -c);
            let c = Integer::div_floor(&r.a[k + 1][j], &piv);
            r.add(j, k, c);
            if r.a[k][j] != 0 || r.a[k + 1][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let offender = (k + 2..n).find(|&i| (k + 2..n).any(|j| r.a[i][j] % piv != 0));
        if let Some(i) = offender {
            r.add(k, i, 1);
            continue;
        }
        factors.push(piv);
        k += 2;
    }
    SkewNormalForm {
        kernel_dim: n - 2 * factors.len(),
        factors,
        transform: r.u,
    }
}

/// `prod m / gcd(h_i, m)` over the block factors.
pub fn pi_degree_from_factors(factors: &[i64], m: i64) -> i64 {
    factors.iter().map(|h| m / h.gcd(&m)).product()
}

/// Size of the subgroup of `(Z/m)^n` generated by the rows of `h`.
pub fn image_cardinality_bruteforce(h: &SkewIntMatrix, m: i64, limit: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("modulus {m} must be >= 2")));
    }
    let n = h.n;
    let size = (m as u64).checked_pow(n as u32).filter(|&s| s <= limit).ok_or_else(|| {
        Error::Resource(format!("{m}^{n} group elements exceed the limit {limit}"))
    })?;
    let encode = |v: &[i64]| v.iter().fold(0u64, |acc, &x| acc * m as u64 + x.rem_euclid(m) as u64);
    let decode = |mut code: u64| {
        let mut v = vec![0i64; n];
        for x in v.iter_mut().rev() {
            *x = (code % m as u64) as i64;
            code /= m as u64;
        }
        v
    };
    let gens: Vec<Vec<i64>> = h.entries.clone();
    let mut seen = vec![false; size as usize];
    seen[0] = true;
    let mut stack = vec![0u64];
    let mut count = 1u64;
    while let Some(code) = stack.pop() {
        let v = decode(code);
        for g in &gens {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| a + b).collect();
            let c = encode(&w);
            if !seen[c as usize] {
                seen[c as usize] = true;
                count += 1;
                stack.push(c);
            }
        }
    }
    Ok(count)
}

/// Exponent matrix of the quantum affine space attached to the ageing algebra.
pub fn qsaa_exponents() -> SkewIntMatrix {
    SkewIntMatrix::new(vec![
        vec![0, 1, -1, -1],
        vec![-1, 0, 1, 1],
        vec![1, -1, 0, -2],
        vec![1, -1, 2, 0],
    ])
    .expect("skew")
}

/// The reduced form of [`qsaa_exponents`] after three congruence steps.
pub fn qsaa_exponents_reduced() -> SkewIntMatrix {
    let mut r = Reducer {
        a: qsaa_exponents().entries,
        u: vec![vec![0; 4]; 4],
    };
    r.add(0, 1, 1);
    r.add(2, 0, 1);
    r.add(3, 0, 1);
    SkewIntMatrix::new(r.a).expect("congruence preserves skew symmetry")
}

/// Exponent matrix of the quantum affine space attached to the extension
/// by `F` and to the subalgebra on `K, X, Y, phi, psi`.
pub fn smash_exponents() -> SkewIntMatrix {
    SkewIntMatrix::new(vec![
        vec![0, 1, -1, 0, 0],
        vec![-1, 0, 1, 1, -1],
        vec![1, -1, 0, 1, -1],
        vec![0, -1, -1, 0, 0],
        vec![0, 1, 1, 0, 0],
    ])
    .expect("skew")
}

fn check_order(l: u32) -> Result<()> {
    if l < 3 {
        return Err(Error::InvalidOrder(l as i64));
    }
    Ok(())
}

pub fn pideg_qsaa(l: u32) -> Result<i64> {
    check_order(l)?;
    Ok(pi_degree_from_factors(&skew_normal_form(&qsaa_exponents()).factors, l as i64))
}

pub fn pideg_smash(l: u32) -> Result<i64> {
    check_order(l)?;
    Ok(pi_degree_from_factors(&skew_normal_form(&smash_exponents()).factors, l as i64))
}

/// `U H U^T` in integers.
pub fn congruence(u: &[Vec<i64>], h: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = u.len();
    let uh: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| u[i][k] * h[k][j]).sum()).collect())
        .collect();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| uh[i][k] * u[j][k]).sum()).collect())
        .collect()
}

/// Exact integer determinant (fraction-free elimination).
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let h = SkewIntMatrix::new(vec![vec![0, 6], vec![-6, 0]]).unwrap();
        let f = skew_normal_form(&h);
        assert_eq!(f.factors, vec![6]);
        assert_eq!(f.kernel_dim, 0);
        let z = skew_normal_form(&SkewIntMatrix::zero(3));
        assert!(z.factors.is_empty());
        assert_eq!(z.kernel_dim, 3);
        assert!(SkewIntMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn factor_products() {
        assert_eq!(pi_degree_from_factors(&[1, 2], 3), 9);
        assert_eq!(pi_degree_from_factors(&[1, 2], 4), 8);
        assert_eq!(pi_degree_from_factors(&[], 7), 1);
    }

    #[test]
    fn known_matrices() {
        let f = skew_normal_form(&qsaa_exponents());
        assert_eq!(f.factors, vec![1, 2]);
        assert_eq!(congruence(&f.transform, qsaa_exponents().entries()), f.block_form());
        assert_eq!(determinant(&f.transform).abs(), 1);
        assert_eq!(
            qsaa_exponents_reduced().entries(),
            &[vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, -2], vec![0, 0, 2, 0]]
        );
        let g = skew_normal_form(&smash_exponents());
        assert_eq!(g.factors, vec![1, 2]);
        assert_eq!(g.kernel_dim, 1);
        assert_eq!(congruence(&g.transform, smash_exponents().entries()), g.block_form());
    }

    #[test]
    fn bruteforce_matches() {
        assert_eq!(image_cardinality_bruteforce(&qsaa_exponents(), 3, BRUTEFORCE_LIMIT).unwrap(), 81);
        assert_eq!(image_cardinality_bruteforce(&qsaa_exponents(), 4, BRUTEFORCE_LIMIT).unwrap(), 64);
        assert_eq!(image_cardinality_bruteforce(&SkewIntMatrix::zero(3), 5, BRUTEFORCE_LIMIT).unwrap(), 1);
        assert!(matches!(
            image_cardinality_bruteforce(&qsaa_exponents(), 100, 1000),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn table() {
        let expected = [9, 8, 25, 18, 49, 32];
        for (l, e) in (3..=8).zip(expected) {
            assert_eq!(pideg_qsaa(l).unwrap(), e);
            assert_eq!(pideg_smash(l).unwrap(), e);
        }
    }
}
