//! The three families of simple modules of dimension `l1 * l` for the
//! ageing algebra, their isomorphism criteria and explicit intertwiners,
//! and recognition of a given X- and phi-torsion-free simple module as a
//! member of one of the families.
//!
//! Basis vectors `e(a1, a2)` with `0 <= a1 < l1`, `0 <= a2 < l` sit at
//! index `a1 * l + a2`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::{ord_q2, q_int, q_power, CycloNum};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pbw::{phi_element, Generator, Presentation};
use crate::rep::MatrixModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    M1,
    M2,
    M3,
}

impl SimpleType {
    pub fn name(self) -> &'static str {
        match self {
            SimpleType::M1 => "m1",
            SimpleType::M2 => "m2",
            SimpleType::M3 => "m3",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            SimpleType::M1 => 4,
            SimpleType::M2 => 3,
            SimpleType::M3 => 2,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m1" => Ok(SimpleType::M1),
            "m2" => Ok(SimpleType::M2),
            "m3" => Ok(SimpleType::M3),
            _ => Err(Error::InvalidInput(format!("unknown module type '{s}'"))),
        }
    }
}

/// Nonzero parameters of one of the three families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleParams {
    kind: SimpleType,
    mu: Vec<CycloNum>,
}

impl SimpleParams {
    pub fn new(kind: SimpleType, mu: Vec<CycloNum>) -> Result<Self> {
        if mu.len() != kind.arity() {
            return Err(Error::InvalidParameter(format!(
                "{kind} takes {} parameters, got {}",
                kind.arity(),
                mu.len()
            )));
        }
        if let Some(i) = mu.iter().position(CycloNum::is_zero) {
            return Err(Error::InvalidParameter(format!("mu{} must be nonzero", i + 1)));
        }
        let l = mu[0].order();
        if let Some(m) = mu.iter().find(|m| m.order() != l) {
            return Err(Error::OrderMismatch(m.order(), l));
        }
        Ok(SimpleParams { kind, mu })
    }

    pub fn m1(mu: [CycloNum; 4]) -> Result<Self> {
        Self::new(SimpleType::M1, mu.to_vec())
    }

    pub fn m2(mu: [CycloNum; 3]) -> Result<Self> {
        Self::new(SimpleType::M2, mu.to_vec())
    }

    pub fn m3(mu: [CycloNum; 2]) -> Result<Self> {
        Self::new(SimpleType::M3, mu.to_vec())
    }

    pub fn kind(&self) -> SimpleType {
        self.kind
    }

    pub fn mu(&self) -> &[CycloNum] {
        &self.mu
    }

    pub fn order(&self) -> u32 {
        self.mu[0].order()
    }

    fn check_order(&self, l: u32) -> Result<()> {
        if self.order() != l {
            return Err(Error::OrderMismatch(self.order(), l));
        }
        Ok(())
    }
}

/// Shift exponents of an isomorphism; for `m3` only `r2` is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub r1: u32,
    pub r2: u32,
}

struct Layout {
    l: u32,
    l1: u32,
}

impl Layout {
    fn new(l: u32) -> Result<Self> {
        crate::cyclo::field(l)?;
        Ok(Layout { l, l1: ord_q2(l) })
    }

    fn dim(&self) -> usize {
        (self.l1 * self.l) as usize
    }

    fn idx(&self, a1: u32, a2: u32) -> usize {
        (a1 * self.l + a2) as usize
    }

    fn labels(&self) -> Vec<String> {
        (0..self.l1)
            .flat_map(|a1| (0..self.l).map(move |a2| format!("e({a1},{a2})")))
            .collect()
    }

    fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.l1).flat_map(move |a1| (0..self.l).map(move |a2| (a1, a2)))
    }

    fn zeros(&self) -> Matrix {
        Matrix::zeros(self.l, self.dim(), self.dim())
    }

    /// `e(a1,a2) K = c e(a1, a2 + 1)`
    fn k_matrix(&self, c: &CycloNum) -> Matrix {
        let mut k = self.zeros();
        for (a1, a2) in self.cells() {
            k.set(self.idx(a1, a2), self.idx(a1, (a2 + 1) % self.l), c.clone());
        }
        k
    }
}

fn q(l: u32, k: i64) -> CycloNum {
    q_power(l, k)
}

fn one(l: u32) -> CycloNum {
    CycloNum::one(l)
}

fn assemble(layout: &Layout, x: Matrix, y: Matrix, e: Matrix, k: Matrix) -> Result<MatrixModule> {
    let mut mats = BTreeMap::new();
    mats.insert(Generator::X, x);
    mats.insert(Generator::Y, y);
    mats.insert(Generator::E, e);
    mats.insert(Generator::K, k);
    MatrixModule::new(layout.l, Presentation::Qsaa, layout.labels(), mats)
}

pub fn build(l: u32, params: &SimpleParams) -> Result<MatrixModule> {
    match params.kind {
        SimpleType::M1 => build_m1(l, params),
        SimpleType::M2 => build_m2(l, params),
        SimpleType::M3 => build_m3(l, params),
    }
}

pub fn build_m1(l: u32, params: &SimpleParams) -> Result<MatrixModule> {
    expect_kind(params, SimpleType::M1)?;
    params.check_order(l)?;
    let lay = Layout::new(l)?;
    let [m1, m2, m3, m4] = [&params.mu[0], &params.mu[1], &params.mu[2], &params.mu[3]];
    let half = l / 2;
    let denom = (&one(l) - &q(l, 2)).inv()?;
    let m3inv = m3.inv()?;
    let mut x = lay.zeros();
    let mut e = lay.zeros();
    let mut y = lay.zeros();
    for (a1, a2) in lay.cells() {
        let (i1, i2) = (a1 as i64, a2 as i64);
        let src = lay.idx(a1, a2);
        x.set(src, src, m1 * &q(l, i1 + i2));
        let e_coef = m3 * &q(l, 2 * i2);
        let y_num = &(m2 * &q(l, 1)) - &(m1 * &q(l, 2 * i1 + 1));
        let y_coef = &(&m3inv * &q(l, -(i1 + i2))) * &(&y_num * &denom);
        if l % 2 == 1 {
            e.set(src, lay.idx((a1 + 1) % l, a2), e_coef);
            y.set(src, lay.idx((a1 + l - 1) % l, a2), y_coef);
        } else {
            let e_dst = if a1 + 1 == half {
                lay.idx(0, (half + a2) % l)
            } else {
                lay.idx(a1 + 1, a2)
            };
            e.set(src, e_dst, e_coef);
            if a1 == 0 {
                let c = &(&m3inv * &q(l, -i2)) * &(&(m2 - m1) * &(&q(l, 1) * &denom));
                y.set(src, lay.idx(half - 1, (half + a2) % l), c);
            } else {
                y.set(src, lay.idx(a1 - 1, a2), y_coef);
            }
        }
    }
    assemble(&lay, x, y, e, lay.k_matrix(m4))
}

pub fn build_m2(l: u32, params: &SimpleParams) -> Result<MatrixModule> {
    expect_kind(params, SimpleType::M2)?;
    params.check_order(l)?;
    let lay = Layout::new(l)?;
    let [m1, m2, m3] = [&params.mu[0], &params.mu[1], &params.mu[2]];
    let m2inv = m2.inv()?;
    let l1 = lay.l1;
    let mut x = lay.zeros();
    let mut e = lay.zeros();
    let mut y = lay.zeros();
    for (a1, a2) in lay.cells() {
        let (i1, i2) = (a1 as i64, a2 as i64);
        let src = lay.idx(a1, a2);
        x.set(src, src, m1 * &q(l, -i1 + i2));
        if a1 != 0 {
            let c = -&(&(&m2inv * m1) * &(&q(l, i1 + 2 * i2) * &q_int(l, a1)));
            e.set(src, lay.idx(a1 - 1, a2), c);
        }
        let y_coef = m2 * &q(l, -i2);
        let y_dst = if l.is_multiple_of(2) && a1 + 1 == l1 {
            lay.idx(0, (l / 2 + a2) % l)
        } else {
            lay.idx((a1 + 1) % l1, a2)
        };
        y.set(src, y_dst, y_coef);
    }
    assemble(&lay, x, y, e, lay.k_matrix(m3))
}

pub fn build_m3(l: u32, params: &SimpleParams) -> Result<MatrixModule> {
    expect_kind(params, SimpleType::M3)?;
    params.check_order(l)?;
    let lay = Layout::new(l)?;
    let [m1, m2] = [&params.mu[0], &params.mu[1]];
    let l1 = lay.l1;
    let mut x = lay.zeros();
    let mut e = lay.zeros();
    let mut y = lay.zeros();
    for (a1, a2) in lay.cells() {
        let (i1, i2) = (a1 as i64, a2 as i64);
        let src = lay.idx(a1, a2);
        x.set(src, src, m1 * &q(l, -i1 + i2));
        if a1 != 0 {
            let c = -&(m1 * &(&q(l, i1 + 2 * i2) * &q_int(l, a1)));
            e.set(src, lay.idx(a1 - 1, a2), c);
        }
        if a1 + 1 != l1 {
            y.set(src, lay.idx(a1 + 1, a2), q(l, -i2));
        }
    }
    assemble(&lay, x, y, e, lay.k_matrix(m2))
}

fn expect_kind(p: &SimpleParams, kind: SimpleType) -> Result<()> {
    if p.kind != kind {
        return Err(Error::InvalidParameter(format!("expected {kind} parameters, got {}", p.kind)));
    }
    Ok(())
}

fn same_power(a: &CycloNum, b: &CycloNum, l: u32) -> bool {
    a.powu(l) == b.powu(l)
}

/// Shift search over the parameter criteria of each family alone. At even
/// `l` this is necessary but not sufficient for `m1` and `m2`; see [`iso`].
pub fn iso_coarse(l: u32, mu: &SimpleParams, gamma: &SimpleParams) -> Result<Option<IsoWitness>> {
    if mu.kind != gamma.kind {
        return Ok(None);
    }
    mu.check_order(l)?;
    gamma.check_order(l)?;
    let (m, g) = (&mu.mu, &gamma.mu);
    let l1 = ord_q2(l);
    let li = l as i64;
    let found = match mu.kind {
        SimpleType::M1 => {
            if !same_power(&m[2], &g[2], l) || !same_power(&m[3], &g[3], l) {
                return Ok(None);
            }
            grid(l1, l).find(|&(r1, r2)| {
                m[0] == &g[0] * &q(l, (r1 + r2) as i64) && m[1] == &g[1] * &q(l, r2 as i64 - r1 as i64)
            })
        }
        SimpleType::M2 => {
            if !same_power(&m[1], &g[1], l) || !same_power(&m[2], &g[2], l) {
                return Ok(None);
            }
            grid(l1, l).find(|&(r1, r2)| m[0] == &g[0] * &q(l, r2 as i64 - r1 as i64))
        }
        SimpleType::M3 => {
            if !same_power(&m[1], &g[1], l) {
                return Ok(None);
            }
            (0..l).find(|&r| m[0] == &g[0] * &q(l, r as i64 % li)).map(|r| (0, r))
        }
    };
    Ok(found.map(|(r1, r2)| IsoWitness { r1, r2 }))
}

/// For even `l`, the scalar by which `E^{l/2} K^{l/2}` acts on `m1(mu)`.
pub fn m1_half_invariant(l: u32, mu: &SimpleParams) -> Result<Option<CycloNum>> {
    expect_kind(mu, SimpleType::M1)?;
    Ok(l.is_multiple_of(2).then(|| (&mu.mu[2] * &mu.mu[3]).powu(l / 2)))
}

/// For even `l`, the scalar by which `Y^{l/2} K^{l/2}` acts on the
/// `X`-eigenvector `e(0, 0)` of `m2(mu)`.
pub fn m2_half_invariant(l: u32, mu: &SimpleParams) -> Result<Option<CycloNum>> {
    expect_kind(mu, SimpleType::M2)?;
    Ok(l.is_multiple_of(2).then(|| (&mu.mu[1] * &mu.mu[2]).powu(l / 2)))
}

/// The coarse criterion, strengthened at even `l` by matching the action
/// of `E^{l/2} K^{l/2}` (for `m1`) or `Y^{l/2} K^{l/2}` (for `m2`) on
/// corresponding `X`-eigenvectors.
pub fn iso(l: u32, mu: &SimpleParams, gamma: &SimpleParams) -> Result<Option<IsoWitness>> {
    let Some(w) = iso_coarse(l, mu, gamma)? else {
        return Ok(None);
    };
    let agrees = match mu.kind {
        SimpleType::M1 => m1_half_invariant(l, mu)? == m1_half_invariant(l, gamma)?,
        SimpleType::M2 => match (m2_half_invariant(l, mu)?, m2_half_invariant(l, gamma)?) {
            (Some(a), Some(b)) => {
                a == if (w.r1 + w.r2) % 2 == 0 { b } else { -&b }
            }
            _ => true,
        },
        SimpleType::M3 => true,
    };
    Ok(agrees.then_some(w))
}

fn grid(l1: u32, l: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..l1).flat_map(move |r1| (0..l).map(move |r2| (r1, r2)))
}

/// The intertwiner `m(mu) -> m(gamma)` written down from the shift data.
/// Row `i` is the image of basis vector `i`.
pub fn explicit_iso(l: u32, mu: &SimpleParams, gamma: &SimpleParams, w: IsoWitness) -> Result<Matrix> {
    if mu.kind != gamma.kind {
        return Err(Error::InvalidParameter("parameter types differ".into()));
    }
    mu.check_order(l)?;
    gamma.check_order(l)?;
    let lay = Layout::new(l)?;
    let (l1, half) = (lay.l1, l / 2);
    if w.r1 >= l1 || w.r2 >= l {
        return Err(Error::InvalidParameter(format!("shift ({}, {}) out of range", w.r1, w.r2)));
    }
    let (m, g) = (&mu.mu, &gamma.mu);
    let (r1, r2) = (w.r1, w.r2);
    let mut p = lay.zeros();
    for (a1, a2) in lay.cells() {
        let src = lay.idx(a1, a2);
        let (i1, i2) = (a1 as i64, a2 as i64);
        let (dst, c) = match mu.kind {
            SimpleType::M1 => {
                let base = &(&m[2].inv()? * &g[2]) * &q(l, 2 * r2 as i64);
                let c = &base.pow(i1)? * &(&m[3].inv()? * &g[3]).pow(i2)?;
                let dst = if l % 2 == 1 || a1 + r1 < half {
                    lay.idx((a1 + r1) % l1, (a2 + r2) % l)
                } else {
                    lay.idx((a1 + r1) % l1, (half + a2 + r2) % l)
                };
                (dst, c)
            }
            SimpleType::M2 => {
                let base = &(&m[1].inv()? * &g[1]) * &q(l, -(r2 as i64));
                let mut c = &base.pow(i1)? * &(&m[2].inv()? * &g[2]).pow(i2)?;
                let dst = if l % 2 == 1 || a1 + r1 < half {
                    lay.idx((a1 + r1) % l1, (a2 + r2) % l)
                } else {
                    let h = half as i64;
                    c = &c * &q(l, -h * (i1 + r1 as i64 - h));
                    lay.idx((a1 + r1) % l1, (half + a2 + r2) % l)
                };
                (dst, c)
            }
            SimpleType::M3 => {
                let c = &q(l, -(r2 as i64) * i1) * &(&m[1].inv()? * &g[1]).pow(i2)?;
                (lay.idx(a1, (a2 + r2) % l), c)
            }
        };
        p.set(src, dst, c);
    }
    Ok(p)
}

/// Scalars read off a module: the central elements `E^l, Y^l, K^l`, the
/// `X`- and `phi`-eigenvalues of a joint eigenvector and, for even `l`,
/// the eigenvalues of `E^{l/2}K^{l/2}` and `Y^{l/2}K^{l/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    pub alpha: CycloNum,
    pub beta: CycloNum,
    pub xi: CycloNum,
    pub lambda1: CycloNum,
    pub lambda2: CycloNum,
    pub alpha_prime: Option<CycloNum>,
    pub beta_prime: Option<CycloNum>,
}

/// Result of recognising a module as a member of one of the families.
#[derive(Clone, Debug)]
pub struct Classification {
    pub kind: SimpleType,
    pub params: SimpleParams,
    pub eigen: EigenData,
    /// Power of `E` taken to reach a vector killed by `E` (zero for `m1`).
    pub e_shift: u32,
    /// Isomorphism from the model module onto the input; row `i` is the image of `e_i`.
    pub intertwiner: Matrix,
    /// True when the intertwiner came from the formula, false when it was
    /// solved for from the Hom space.
    pub explicit: bool,
}

fn scalar_of(m: &MatrixModule, word: &[(Generator, u32)], what: &str) -> Result<CycloNum> {
    let flat: Vec<Generator> = word
        .iter()
        .flat_map(|&(g, n)| std::iter::repeat_n(g, n as usize))
        .collect();
    m.act_word(&flat)?
        .as_scalar()
        .ok_or_else(|| Error::NotSimple(format!("{what} does not act as a scalar")))
}

fn eigenvalue(v: &[CycloNum], a: &Matrix) -> Option<CycloNum> {
    let w = a.apply(v);
    let i = v.iter().position(|x| !x.is_zero())?;
    let c = w[i].checked_div(&v[i]).ok()?;
    w.iter().zip(v).all(|(wi, vi)| *wi == &c * vi).then_some(c)
}

/// Basis of `{v : v A_i = 0 for all i}`.
fn joint_left_kernel(l: u32, mats: &[Matrix]) -> Vec<Vec<CycloNum>> {
    let n = mats[0].rows();
    let total: usize = mats.iter().map(Matrix::cols).sum();
    let stacked = Matrix::from_fn(l, n, total, |i, j| {
        let mut j = j;
        for m in mats {
            if j < m.cols() {
                return m.get(i, j).clone();
            }
            j -= m.cols();
        }
        unreachable!()
    });
    stacked.left_kernel()
}

fn candidates(a: &Matrix, power_scalar: &CycloNum, l: u32, hints: &[CycloNum]) -> Vec<CycloNum> {
    let mut out: Vec<CycloNum> = Vec::new();
    let mut push = |c: CycloNum| {
        if !c.is_zero() && !out.contains(&c) {
            out.push(c);
        }
    };
    for d in a.diagonal() {
        push(d);
    }
    for h in hints {
        push(h.clone());
    }
    for r in power_scalar.nth_roots(l, hints) {
        push(r);
    }
    out
}

/// Identifies an X- and phi-torsion-free simple module with a member of
/// one of the three families, returning parameters and an isomorphism.
pub fn classify(n: &MatrixModule, hints: &[CycloNum]) -> Result<Classification> {
    if n.presentation() != Presentation::Qsaa {
        return Err(Error::PresentationMismatch(format!(
            "classification expects a qsaa module, got {}",
            n.presentation()
        )));
    }
    let l = n.order();
    let dim = n.dim();
    let x = n.matrix(Generator::X)?.clone();
    let phi = n.act(&phi_element(l, Presentation::Qsaa)?)?;
    if !x.is_invertible() {
        return Err(Error::Torsion("X acts with a nontrivial kernel".into()));
    }
    if !phi.is_invertible() {
        return Err(Error::Torsion("phi acts with a nontrivial kernel".into()));
    }
    let alpha = scalar_of(n, &[(Generator::E, l)], "E^l")?;
    let beta = scalar_of(n, &[(Generator::Y, l)], "Y^l")?;
    let xi = scalar_of(n, &[(Generator::K, l)], "K^l")?;
    let x_l = x.pow(l).as_scalar().ok_or_else(|| Error::NotSimple("X^l is not scalar".into()))?;
    let phi_l = phi.pow(l).as_scalar().ok_or_else(|| Error::NotSimple("phi^l is not scalar".into()))?;

    let mut v = None;
    'search: for t in candidates(&x, &x_l, l, hints) {
        let xt = &x - &Matrix::scalar(l, dim, &t);
        if xt.left_kernel().is_empty() {
            continue;
        }
        for s in candidates(&phi, &phi_l, l, hints) {
            let ps = &phi - &Matrix::scalar(l, dim, &s);
            if let Some(w) = joint_left_kernel(l, &[xt.clone(), ps]).into_iter().next() {
                v = Some(w);
                break 'search;
            }
        }
    }
    let v = v.ok_or_else(|| Error::NeedsHints("no joint eigenvector of X and phi".into()))?;
    let lambda1 = eigenvalue(&v, &x).expect("eigenvector");
    let lambda2 = eigenvalue(&v, &phi).expect("eigenvector");
    let (alpha_prime, beta_prime) = if l.is_multiple_of(2) {
        let h = l / 2;
        let ek = n.act_word(&half_word(Generator::E, h))?;
        let yk = n.act_word(&half_word(Generator::Y, h))?;
        (eigenvalue(&v, &ek), eigenvalue(&v, &yk))
    } else {
        (None, None)
    };
    let eigen = EigenData {
        alpha: alpha.clone(),
        beta: beta.clone(),
        xi: xi.clone(),
        lambda1: lambda1.clone(),
        lambda2: lambda2.clone(),
        alpha_prime,
        beta_prime,
    };

    let e = n.matrix(Generator::E)?.clone();
    let (kind, base, shift) = if !alpha.is_zero() {
        (SimpleType::M1, v, 0)
    } else {
        let mut w = v;
        let mut r = 0;
        loop {
            let next = e.apply(&w);
            if next.iter().all(CycloNum::is_zero) {
                break;
            }
            w = next;
            r += 1;
            if r > l {
                return Err(Error::InvariantViolation("E is not nilpotent on the eigenvector".into()));
            }
        }
        let kind = if beta.is_zero() { SimpleType::M3 } else { SimpleType::M2 };
        (kind, w, r)
    };
    let lam1_shift = &lambda1 * &q(l, shift as i64);

    let mu3_roots = || root_candidates(&alpha, l, hints);
    // On m2 with even l, Y^l acts by (-1)^{l/2} mu2^l.
    let beta_signed = if l % 4 == 2 { -&beta } else { beta.clone() };
    let beta_roots = || root_candidates(&beta_signed, l, hints);
    let xi_roots = root_candidates(&xi, l, hints);
    if xi_roots.is_empty() {
        return Err(Error::NeedsHints("no l-th root of the K^l scalar in the field".into()));
    }
    let mut param_sets: Vec<SimpleParams> = Vec::new();
    match kind {
        SimpleType::M1 => {
            let roots = mu3_roots();
            if roots.is_empty() {
                return Err(Error::NeedsHints("no l-th root of the E^l scalar in the field".into()));
            }
            for r3 in &roots {
                for r4 in &xi_roots {
                    param_sets.push(SimpleParams::m1([
                        lambda1.clone(),
                        lambda2.clone(),
                        r3.clone(),
                        r4.clone(),
                    ])?);
                }
            }
        }
        SimpleType::M2 => {
            let roots = beta_roots();
            if roots.is_empty() {
                return Err(Error::NeedsHints("no l-th root of the Y^l scalar in the field".into()));
            }
            for r2 in &roots {
                for r3 in &xi_roots {
                    param_sets.push(SimpleParams::m2([lam1_shift.clone(), r2.clone(), r3.clone()])?);
                }
            }
        }
        SimpleType::M3 => {
            for r2 in &xi_roots {
                param_sets.push(SimpleParams::m3([lam1_shift.clone(), r2.clone()])?);
            }
        }
    }

    for params in &param_sets {
        let model = build(l, params)?;
        let p = recognition_map(l, kind, params, &base, n)?;
        if p.is_invertible() && model.is_homomorphism(n, &p) {
            return Ok(Classification {
                kind,
                params: params.clone(),
                eigen,
                e_shift: shift,
                intertwiner: p,
                explicit: true,
            });
        }
    }
    for params in &param_sets {
        let model = build(l, params)?;
        let homs = model.hom_space(n)?;
        if let [p] = homs.as_slice() {
            if p.is_invertible() {
                return Ok(Classification {
                    kind,
                    params: params.clone(),
                    eigen,
                    e_shift: shift,
                    intertwiner: p.clone(),
                    explicit: false,
                });
            }
        }
    }
    Err(Error::NeedsHints(format!(
        "none of the {} candidate parameter choices for {kind} is isomorphic to the module",
        param_sets.len()
    )))
}

fn half_word(g: Generator, h: u32) -> Vec<Generator> {
    let mut w = vec![g; h as usize];
    w.extend(std::iter::repeat_n(Generator::K, h as usize));
    w
}

fn root_candidates(c: &CycloNum, l: u32, hints: &[CycloNum]) -> Vec<CycloNum> {
    let mut seeds: Vec<CycloNum> = hints.to_vec();
    seeds.push(c.clone());
    c.nth_roots(l, &seeds)
}

/// `e(a1, a2) -> coefficient * base * Z^{a1} K^{a2}` with `Z = E` for `m1`
/// and `Z = Y` otherwise.
fn recognition_map(
    l: u32,
    kind: SimpleType,
    params: &SimpleParams,
    base: &[CycloNum],
    n: &MatrixModule,
) -> Result<Matrix> {
    let lay = Layout::new(l)?;
    let z = n.matrix(if kind == SimpleType::M1 { Generator::E } else { Generator::Y })?;
    let k = n.matrix(Generator::K)?;
    let mu = params.mu();
    let (z_scale, k_scale) = match kind {
        SimpleType::M1 => (mu[2].inv()?, mu[3].inv()?),
        SimpleType::M2 => (mu[1].inv()?, mu[2].inv()?),
        SimpleType::M3 => (one(l), mu[1].inv()?),
    };
    let mut rows = Vec::with_capacity(lay.dim());
    let mut zpow = base.to_vec();
    for a1 in 0..lay.l1 {
        let mut w = zpow.clone();
        for a2 in 0..l {
            let c = &z_scale.pow(a1 as i64)? * &k_scale.pow(a2 as i64)?;
            rows.push(w.iter().map(|x| x * &c).collect::<Vec<_>>());
            w = k.apply(&w);
        }
        zpow = z.apply(&zpow);
    }
    Matrix::from_rows(l, rows)
}

/// Standard parameters: `mu_i` given as literals in the field.
pub fn params_from_ints(kind: SimpleType, l: u32, mu: &[i64]) -> Result<SimpleParams> {
    SimpleParams::new(kind, mu.iter().map(|&m| CycloNum::from_int(l, m)).collect())
}

/// Eigenvalue of `phi` on `e(a1, a2)` predicted for each family.
pub fn predicted_phi_eigenvalue(l: u32, params: &SimpleParams, a1: u32, a2: u32) -> CycloNum {
    let (i1, i2) = (a1 as i64, a2 as i64);
    let mu = params.mu();
    match params.kind {
        SimpleType::M1 => &mu[1] * &q(l, -i1 + i2),
        SimpleType::M2 | SimpleType::M3 => &mu[0] * &q(l, i1 + i2 + 2),
    }
}

/// Eigenvalue of `X` on `e(a1, a2)` for each family.
pub fn predicted_x_eigenvalue(l: u32, params: &SimpleParams, a1: u32, a2: u32) -> CycloNum {
    let (i1, i2) = (a1 as i64, a2 as i64);
    let mu = params.mu();
    match params.kind {
        SimpleType::M1 => &mu[0] * &q(l, i1 + i2),
        SimpleType::M2 | SimpleType::M3 => &mu[0] * &q(l, -i1 + i2),
    }
}

/// Index of `e(a1, a2)` in the standard basis.
pub fn basis_index(l: u32, a1: u32, a2: u32) -> usize {
    (a1 * l + a2) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(kind: SimpleType, l: u32, mu: &[i64]) -> SimpleParams {
        params_from_ints(kind, l, mu).unwrap()
    }

    #[test]
    fn constructions_satisfy_relations() {
        for l in [3, 4, 5, 6] {
            build(l, &p(SimpleType::M1, l, &[1, 2, 1, 1])).unwrap();
            build(l, &p(SimpleType::M1, l, &[1, 1, 3, 2])).unwrap();
            build(l, &p(SimpleType::M2, l, &[1, 2, 3])).unwrap();
            build(l, &p(SimpleType::M3, l, &[2, 1])).unwrap();
        }
    }

    #[test]
    fn zero_parameter_rejected() {
        assert!(matches!(
            params_from_ints(SimpleType::M1, 3, &[1, 0, 1, 1]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn y_wrap_coefficient() {
        let l = 3;
        let m = build(l, &p(SimpleType::M1, l, &[1, 2, 1, 1])).unwrap();
        let y = m.matrix(Generator::Y).unwrap();
        let expected = (&(&q(l, 1) * &CycloNum::from_int(l, 2)) - &q(l, 1)) / (&one(l) - &q(l, 2));
        assert_eq!(*y.get(basis_index(l, 0, 0), basis_index(l, 2, 0)), expected);
    }

    #[test]
    fn shift_witness() {
        let l = 3;
        let mu = SimpleParams::m1([q(l, 2), one(l), one(l), one(l)]).unwrap();
        let gamma = p(SimpleType::M1, l, &[1, 1, 1, 1]);
        let w = iso(l, &mu, &gamma).unwrap().unwrap();
        assert_eq!((w.r1, w.r2), (1, 1));
        let pm = explicit_iso(l, &mu, &gamma, w).unwrap();
        let a = build(l, &mu).unwrap();
        let b = build(l, &gamma).unwrap();
        assert!(a.is_homomorphism(&b, &pm));
        assert!(pm.is_invertible());
        assert!(iso(l, &p(SimpleType::M1, l, &[1, 1, 1, 1]), &p(SimpleType::M1, l, &[1, 1, 2, 1]))
            .unwrap()
            .is_none());
    }
}
