//! Finite quotients `Q(p, l)` of the Verma module induced from the
//! character `vE = 0, vX = lambda1 v, vK^l = lambda2 v`, their chain of
//! submodules and structural verdicts. Only odd `l` is supported.
//!
//! Basis vector `f(m, n)`, `0 <= m < p*l`, `0 <= n < l`, sits at index `m * l + n`.

use std::collections::BTreeMap;

use crate::cyclo::{q_int, q_power, CycloNum};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pbw::{Generator, Presentation};
use crate::rep::{MatrixModule, Subspace};

/// Characters of `X` and `K^l` on the inducing vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaParams {
    lambda1: CycloNum,
    lambda2: CycloNum,
}

impl VermaParams {
    pub fn new(lambda1: CycloNum, lambda2: CycloNum) -> Result<Self> {
        if lambda1.is_zero() || lambda2.is_zero() {
            return Err(Error::InvalidParameter("lambda1 and lambda2 must be nonzero".into()));
        }
        if lambda1.order() != lambda2.order() {
            return Err(Error::OrderMismatch(lambda1.order(), lambda2.order()));
        }
        Ok(VermaParams { lambda1, lambda2 })
    }

    pub fn lambda1(&self) -> &CycloNum {
        &self.lambda1
    }

    pub fn lambda2(&self) -> &CycloNum {
        &self.lambda2
    }
}

fn check(l: u32, p: u32) -> Result<()> {
    if l < 3 {
        return Err(Error::InvalidOrder(l as i64));
    }
    if l.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("quotients are built for odd l only, got {l}")));
    }
    if p < 1 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    Ok(())
}

pub fn index(l: u32, m: u32, n: u32) -> usize {
    (m * l + n) as usize
}

pub fn build_q(l: u32, p: u32, params: &VermaParams) -> Result<MatrixModule> {
    check(l, p)?;
    if params.lambda1.order() != l {
        return Err(Error::OrderMismatch(params.lambda1.order(), l));
    }
    let rows = p * l;
    let dim = (rows * l) as usize;
    let mut x = Matrix::zeros(l, dim, dim);
    let mut y = Matrix::zeros(l, dim, dim);
    let mut e = Matrix::zeros(l, dim, dim);
    let mut k = Matrix::zeros(l, dim, dim);
    let mut labels = Vec::with_capacity(dim);
    for m in 0..rows {
        for n in 0..l {
            let (mi, ni) = (m as i64, n as i64);
            let src = index(l, m, n);
            labels.push(format!("f({m},{n})"));
            x.set(src, src, &params.lambda1 * &q_power(l, ni - mi));
            if m + 1 < rows {
                y.set(src, index(l, m + 1, n), q_power(l, -ni));
            }
            if m > 0 {
                let c = -&(&(&params.lambda1 * &q_power(l, mi + 2 * ni)) * &q_int(l, m));
                e.set(src, index(l, m - 1, n), c);
            }
            if n + 1 < l {
                k.set(src, index(l, m, n + 1), CycloNum::one(l));
            } else {
                k.set(src, index(l, m, 0), params.lambda2.clone());
            }
        }
    }
    let mut mats = BTreeMap::new();
    mats.insert(Generator::X, x);
    mats.insert(Generator::Y, y);
    mats.insert(Generator::E, e);
    mats.insert(Generator::K, k);
    MatrixModule::new(l, Presentation::Qsaa, labels, mats)
}

/// Spans of `{f(m, n) : m >= r*l}` for `r = 1..p-1`, largest first.
pub fn chain_submodules(l: u32, p: u32) -> Result<Vec<Subspace>> {
    check(l, p)?;
    let dim = (p * l * l) as usize;
    Ok((1..p)
        .map(|r| Subspace::coordinate(l, dim, (r * l * l) as usize..dim))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaVerdicts {
    pub simple: bool,
    pub semisimple: bool,
    pub indecomposable: bool,
    /// Proper submodule found when not simple.
    pub witness: Option<Subspace>,
    /// For each chain member, whether it has an invariant complement.
    pub complements: Vec<bool>,
    /// Dimension of the endomorphism algebra modulo its radical.
    pub end_quotient_dim: usize,
}

pub fn verdicts(l: u32, p: u32, params: &VermaParams) -> Result<VermaVerdicts> {
    let q = build_q(l, p, params)?;
    let chain = chain_submodules(l, p)?;
    for (r, w) in chain.iter().enumerate() {
        if !w.is_invariant(&q) {
            return Err(Error::InvariantViolation(format!("chain member r = {} is not invariant", r + 1)));
        }
    }
    let (simple, witness) = match q.is_simple() {
        crate::rep::Simplicity::Simple => (true, None),
        crate::rep::Simplicity::NotSimple(w) => (false, Some(w)),
        crate::rep::Simplicity::Undetermined => {
            return Err(Error::InvariantViolation("simplicity could not be decided".into()))
        }
    };
    let complements = chain
        .iter()
        .map(|w| q.has_invariant_complement(w))
        .collect::<Result<Vec<_>>>()?;
    let end = q.endo_algebra()?;
    Ok(VermaVerdicts {
        simple,
        semisimple: simple || complements.iter().all(|&c| c),
        indecomposable: end.quotient_dim == 1,
        witness,
        complements,
        end_quotient_dim: end.quotient_dim,
    })
}

/// Which member of the chain a spun-up subspace equals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainMember {
    Full,
    /// The span of `f(m, n)` with `m >= r*l`.
    Tail(u32),
}

/// Spin-up of every basis vector, matched against the chain.
pub fn spin_up_census(l: u32, p: u32, params: &VermaParams) -> Result<Vec<(String, ChainMember)>> {
    let q = build_q(l, p, params)?;
    let chain = chain_submodules(l, p)?;
    let dim = q.dim();
    (0..dim)
        .map(|i| {
            let s = q.spin_up(&q.basis_vector(i))?;
            let member = if s.dim() == dim {
                ChainMember::Full
            } else {
                let r = chain
                    .iter()
                    .position(|w| *w == s)
                    .ok_or_else(|| {
                        Error::InvariantViolation(format!(
                            "spin-up of {} is not a chain member",
                            q.labels()[i]
                        ))
                    })?;
                ChainMember::Tail(r as u32 + 1)
            };
            Ok((q.labels()[i].clone(), member))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(l: u32) -> VermaParams {
        VermaParams::new(CycloNum::one(l), CycloNum::one(l)).unwrap()
    }

    #[test]
    fn dimensions_and_relations() {
        for p in 1..=3 {
            assert_eq!(build_q(3, p, &unit(3)).unwrap().dim(), 9 * p as usize);
        }
        let lam = VermaParams::new(CycloNum::from_int(5, 2), q_power(5, 1)).unwrap();
        build_q(5, 2, &lam).unwrap();
    }

    #[test]
    fn row_boundary_is_killed_by_e() {
        let q = build_q(3, 2, &unit(3)).unwrap();
        let e = q.matrix(Generator::E).unwrap();
        for n in 0..3 {
            assert!(e.row(index(3, 3, n)).iter().all(CycloNum::is_zero));
        }
    }

    #[test]
    fn k_wrap_uses_lambda2() {
        let lam = VermaParams::new(CycloNum::one(3), CycloNum::from_int(3, 5)).unwrap();
        let q = build_q(3, 1, &lam).unwrap();
        let k = q.matrix(Generator::K).unwrap();
        assert_eq!(*k.get(index(3, 1, 2), index(3, 1, 0)), CycloNum::from_int(3, 5));
    }

    #[test]
    fn e_coefficient_carries_lambda1() {
        let l = 3;
        let lam = VermaParams::new(CycloNum::from_int(l, 2), CycloNum::one(l)).unwrap();
        let q = build_q(l, 1, &lam).unwrap();
        let e = q.matrix(Generator::E).unwrap();
        assert_eq!(*e.get(index(l, 1, 0), index(l, 0, 0)), -&(&CycloNum::from_int(l, 2) * &q_power(l, 1)));
    }

    #[test]
    fn rejects_even_order() {
        assert!(build_q(4, 1, &unit(4)).is_err());
        assert!(chain_submodules(3, 0).is_err());
    }

    #[test]
    fn chain_shapes() {
        assert!(chain_submodules(3, 1).unwrap().is_empty());
        let c = chain_submodules(3, 3).unwrap();
        assert_eq!(c.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![18, 9]);
        assert!(c[1].is_subspace_of(&c[0]));
    }
}
