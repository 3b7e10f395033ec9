//! Modules over the subalgebra generated by `K^{±1}, X, Y, phi, psi` and
//! their lift to the extension by `F`.
//!
//! The `l^2`-dimensional module built here has basis `e(a, b) = v phi^a X^b`,
//! `0 <= a, b < l`, at index `a * l + b`, for odd `l`.

use std::collections::BTreeMap;

use crate::cyclo::{q_power, CycloNum};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pbw::{phi_element, psi_element, AlgebraElement, Generator, Presentation};
use crate::rep::MatrixModule;

/// Scalars of a joint eigenvector `v`: `vK = lambda1 v`, `vYX = lambda2 v`,
/// `v psi phi = lambda3 v`, with `phi^l = alpha` and `X^l = xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BModuleParams {
    pub lambda1: CycloNum,
    pub lambda2: CycloNum,
    pub lambda3: CycloNum,
    pub xi: CycloNum,
    pub alpha: CycloNum,
}

impl BModuleParams {
    pub fn new(
        lambda1: CycloNum,
        lambda2: CycloNum,
        lambda3: CycloNum,
        xi: CycloNum,
        alpha: CycloNum,
    ) -> Result<Self> {
        let p = BModuleParams {
            lambda1,
            lambda2,
            lambda3,
            xi,
            alpha,
        };
        let l = p.lambda1.order();
        for (name, v) in p.named() {
            if v.order() != l {
                return Err(Error::OrderMismatch(v.order(), l));
            }
            if name != "lambda3" && v.is_zero() {
                return Err(Error::InvalidParameter(format!("{name} must be nonzero")));
            }
        }
        Ok(p)
    }

    pub fn named(&self) -> [(&'static str, &CycloNum); 5] {
        [
            ("lambda1", &self.lambda1),
            ("lambda2", &self.lambda2),
            ("lambda3", &self.lambda3),
            ("xi", &self.xi),
            ("alpha", &self.alpha),
        ]
    }

    pub fn order(&self) -> u32 {
        self.lambda1.order()
    }
}

/// Everything read off a module by [`eigendata_of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BEigenData {
    pub alpha: CycloNum,
    pub beta: CycloNum,
    pub xi: CycloNum,
    pub lambda1: CycloNum,
    pub lambda2: CycloNum,
    pub lambda3: CycloNum,
    /// The joint eigenvector the lambdas belong to.
    pub vector: Vec<CycloNum>,
}

impl BEigenData {
    pub fn params(&self) -> Result<BModuleParams> {
        BModuleParams::new(
            self.lambda1.clone(),
            self.lambda2.clone(),
            self.lambda3.clone(),
            self.xi.clone(),
            self.alpha.clone(),
        )
    }
}

pub fn build_n1(l: u32, params: &BModuleParams) -> Result<MatrixModule> {
    if l.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("this construction needs odd l, got {l}")));
    }
    if params.order() != l {
        return Err(Error::OrderMismatch(params.order(), l));
    }
    let n = (l * l) as usize;
    let idx = |a: u32, b: u32| (a * l + b) as usize;
    let q = |k: i64| q_power(l, k);
    let BModuleParams {
        lambda1,
        lambda2,
        lambda3,
        xi,
        alpha,
    } = params;
    let alpha_inv = alpha.inv()?;
    let xi_inv = xi.inv()?;
    let lam12 = lambda1 * lambda2;
    let mut k = Matrix::zeros(l, n, n);
    let mut phi = Matrix::zeros(l, n, n);
    let mut psi = Matrix::zeros(l, n, n);
    let mut x = Matrix::zeros(l, n, n);
    let mut y = Matrix::zeros(l, n, n);
    let mut labels = Vec::with_capacity(n);
    for a in 0..l {
        for b in 0..l {
            let (ai, bi) = (a as i64, b as i64);
            let src = idx(a, b);
            labels.push(format!("e({a},{b})"));
            k.set(src, src, lambda1 * &q(-ai - bi));
            if a + 1 < l {
                phi.set(src, idx(a + 1, b), CycloNum::one(l));
            } else {
                phi.set(src, idx(0, b), alpha.clone());
            }
            if a != 0 {
                let c = lambda3 - &(&(&q(3) * &(&q(-2 * ai) - &CycloNum::one(l))) * &lam12);
                psi.set(src, idx(a - 1, b), c);
            } else {
                psi.set(src, idx(l - 1, b), &alpha_inv * lambda3);
            }
            if b + 1 < l {
                x.set(src, idx(a, b + 1), CycloNum::one(l));
            } else {
                x.set(src, idx(a, 0), xi.clone());
            }
            if b != 0 {
                y.set(src, idx(a, b - 1), &q(bi - ai) * lambda2);
            } else {
                y.set(src, idx(a, l - 1), &(&xi_inv * &q(-ai)) * lambda2);
            }
        }
    }
    let mut mats = BTreeMap::new();
    mats.insert(Generator::K, k);
    mats.insert(Generator::Phi, phi);
    mats.insert(Generator::Psi, psi);
    mats.insert(Generator::X, x);
    mats.insert(Generator::Y, y);
    MatrixModule::new(l, Presentation::Sub, labels, mats)
}

fn expect(m: &MatrixModule, pres: Presentation) -> Result<()> {
    if m.presentation() != pres {
        return Err(Error::PresentationMismatch(format!(
            "expected a {pres} module, got {}",
            m.presentation()
        )));
    }
    Ok(())
}

/// Extends a module over the subalgebra, with `X` and `Y` invertible, to
/// the extension by solving the expansions of `phi` and `psi` for `E` and `F`.
pub fn lift_to_a(m: &MatrixModule) -> Result<MatrixModule> {
    expect(m, Presentation::Sub)?;
    let l = m.order();
    let x = m.matrix(Generator::X)?;
    let y = m.matrix(Generator::Y)?;
    let k = m.matrix(Generator::K)?;
    let kinv = m.matrix(Generator::Kinv)?;
    let phi = m.matrix(Generator::Phi)?;
    let psi = m.matrix(Generator::Psi)?;
    let x_inv = x
        .inverse()
        .map_err(|_| Error::Torsion("X acts with a nontrivial kernel".into()))?;
    let y_inv = y
        .inverse()
        .map_err(|_| Error::Torsion("Y acts with a nontrivial kernel".into()))?;
    let q = |k: i64| q_power(l, k);
    let c_e = (&q(1) - &q(-1)).inv()?;
    let c_f = (&CycloNum::one(l) - &q(2)).inv()?;
    let e = (&y_inv * &(x - phi)).scale(&c_e);
    let f = (&x_inv * &(psi + &(y * kinv).scale(&q(2)))).scale(&c_f);
    let mut mats = BTreeMap::new();
    mats.insert(Generator::X, x.clone());
    mats.insert(Generator::Y, y.clone());
    mats.insert(Generator::E, e);
    mats.insert(Generator::K, k.clone());
    mats.insert(Generator::Kinv, kinv.clone());
    mats.insert(Generator::F, f);
    MatrixModule::new(l, Presentation::Smash, m.labels().to_vec(), mats)
}

/// Restriction of a module over the extension to the subalgebra, with
/// `phi` and `psi` acting through their expansions.
pub fn restrict_to_b(m: &MatrixModule) -> Result<MatrixModule> {
    expect(m, Presentation::Smash)?;
    let l = m.order();
    let mut mats = BTreeMap::new();
    for g in [Generator::X, Generator::Y, Generator::K, Generator::Kinv] {
        mats.insert(g, m.matrix(g)?.clone());
    }
    mats.insert(Generator::Phi, m.act(&phi_element(l, Presentation::Smash)?)?);
    mats.insert(Generator::Psi, m.act(&psi_element(l)?)?);
    MatrixModule::new(l, Presentation::Sub, m.labels().to_vec(), mats)
}

fn word(l: u32, w: &[(Generator, u32)]) -> Result<AlgebraElement> {
    let flat: Vec<Generator> = w
        .iter()
        .flat_map(|&(g, n)| std::iter::repeat_n(g, n as usize))
        .collect();
    AlgebraElement::from_word(l, Presentation::Sub, &flat)
}

fn central_scalar(m: &MatrixModule, g: Generator) -> Result<CycloNum> {
    let l = m.order();
    m.act(&word(l, &[(g, l)])?)?
        .as_scalar()
        .ok_or_else(|| Error::NotSimple(format!("{g}^{l} does not act as a scalar")))
}

/// Eigenvalue candidates of `a` on the subspace spanned by `basis`.
fn candidates(a: &Matrix, basis: &[Vec<CycloNum>], extra: &[CycloNum]) -> Vec<CycloNum> {
    let mut out: Vec<CycloNum> = Vec::new();
    let mut push = |c: &CycloNum| {
        if !out.contains(c) {
            out.push(c.clone());
        }
    };
    for d in a.diagonal() {
        push(&d);
    }
    for v in basis {
        let w = a.apply(v);
        if let Some(i) = v.iter().position(|x| !x.is_zero()) {
            if let Ok(c) = w[i].checked_div(&v[i]) {
                push(&c);
            }
        }
    }
    for e in extra {
        push(e);
    }
    out
}

/// Vectors of `span(basis)` on which `a` acts by `c`.
fn eigen_subspace(l: u32, a: &Matrix, c: &CycloNum, basis: &[Vec<CycloNum>]) -> Vec<Vec<CycloNum>> {
    let n = a.rows();
    let b = Matrix::from_rows(l, basis.to_vec()).expect("rectangular basis");
    let shifted = &(&b * a) - &b.scale(c);
    shifted
        .left_kernel()
        .into_iter()
        .map(|coef| {
            let mut v = vec![CycloNum::zero(l); n];
            for (ci, bi) in coef.iter().zip(basis) {
                if !ci.is_zero() {
                    for (vj, bj) in v.iter_mut().zip(bi) {
                        *vj += &(ci * bj);
                    }
                }
            }
            v
        })
        .collect()
}

/// Reads the central scalars and a joint eigenvector of `K`, `YX` and
/// `psi phi` from a module over the subalgebra.
pub fn eigendata_of(m: &MatrixModule, hints: &[CycloNum]) -> Result<BEigenData> {
    expect(m, Presentation::Sub)?;
    let l = m.order();
    let alpha = central_scalar(m, Generator::Phi)?;
    let beta = central_scalar(m, Generator::Psi)?;
    let xi = central_scalar(m, Generator::X)?;
    let k = m.matrix(Generator::K)?.clone();
    let yx = m.act(&word(l, &[(Generator::Y, 1), (Generator::X, 1)])?)?;
    let psiphi = m.act(&word(l, &[(Generator::Psi, 1), (Generator::Phi, 1)])?)?;
    let root_hints = |op: &Matrix| -> Vec<CycloNum> {
        match op.pow(l).as_scalar() {
            Some(s) => s.nth_roots(l, hints),
            None => Vec::new(),
        }
    };
    let mut basis: Vec<Vec<CycloNum>> = (0..m.dim()).map(|i| m.basis_vector(i)).collect();
    let mut values = Vec::new();
    for op in [&k, &yx, &psiphi] {
        let mut extra = hints.to_vec();
        extra.extend(root_hints(op));
        let found = candidates(op, &basis, &extra).into_iter().find_map(|c| {
            let sub = eigen_subspace(l, op, &c, &basis);
            (!sub.is_empty()).then_some((c, sub))
        });
        let (c, sub) = found.ok_or_else(|| Error::NeedsHints("no joint eigenvector found".into()))?;
        values.push(c);
        basis = sub;
    }
    let lambda3 = values.pop().expect("three operators");
    let lambda2 = values.pop().expect("three operators");
    let lambda1 = values.pop().expect("three operators");
    Ok(BEigenData {
        alpha,
        beta,
        xi,
        lambda1,
        lambda2,
        lambda3,
        vector: basis.swap_remove(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(l: u32, v: [i64; 5]) -> BModuleParams {
        let c = |i| CycloNum::from_int(l, i);
        BModuleParams::new(c(v[0]), c(v[1]), c(v[2]), c(v[3]), c(v[4])).unwrap()
    }

    #[test]
    fn builds_and_lifts() {
        let n1 = build_n1(3, &ints(3, [1, 1, 0, 1, 1])).unwrap();
        assert_eq!(n1.dim(), 9);
        let a = lift_to_a(&n1).unwrap();
        let back = restrict_to_b(&a).unwrap();
        assert_eq!(back.matrices(), n1.matrices());
    }

    #[test]
    fn psi_wrap_coefficient() {
        let l = 3;
        let p = ints(l, [1, 1, 2, 1, 5]);
        let n1 = build_n1(l, &p).unwrap();
        let psi = n1.matrix(Generator::Psi).unwrap();
        assert_eq!(*psi.get(1, 7), CycloNum::from_ratio(l, 2, 5));
    }

    #[test]
    fn eigendata_reads_alpha_and_xi() {
        let l = 3;
        let p = ints(l, [1, 1, 1, 2, 3]);
        let n1 = build_n1(l, &p).unwrap();
        let d = eigendata_of(&n1, &[]).unwrap();
        assert_eq!(d.alpha, CycloNum::from_int(l, 3));
        assert_eq!(d.xi, CycloNum::from_int(l, 2));
    }

    #[test]
    fn zero_alpha_rejected() {
        let c = |i| CycloNum::from_int(3, i);
        assert!(BModuleParams::new(c(1), c(1), c(0), c(1), c(0)).is_err());
    }
}
