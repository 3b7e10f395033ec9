//! Finite-dimensional right modules given by generator matrices.
//!
//! Vectors are rows and a word `g1 g2 ... gk` acts as the matrix product
//! `G1 * G2 * ... * Gk`, so `v.(uw) = (v.u).w`. This is the only place the
//! convention is fixed; everything else goes through [`MatrixModule::act`].

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::linalg::{solve_sparse, to_dense, to_sparse, Echelon, Matrix, SparseMatrix, SparseVec};
use crate::pbw::{rule, AlgebraElement, Generator, Monomial, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixModule {
    l: u32,
    pres: Presentation,
    dim: usize,
    labels: Vec<String>,
    matrices: BTreeMap<Generator, Matrix>,
}

/// One failed relation, located at its first nonzero residual entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub relation: String,
    pub row: usize,
    pub col: usize,
    pub residual: CycloNum,
}

impl MatrixModule {
    /// Builds a module and checks every defining relation.
    pub fn new(
        l: u32,
        pres: Presentation,
        labels: Vec<String>,
        matrices: BTreeMap<Generator, Matrix>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(l, pres, labels, matrices)?;
        if let Some(v) = m.verify_relations().into_iter().next() {
            return Err(Error::RelationFailure(format!(
                "{} fails at ({}, {}) with residual {}",
                v.relation, v.row, v.col, v.residual
            )));
        }
        Ok(m)
    }

    /// Builds a module checking only shapes; `Kinv` is filled in from `K` when absent.
    pub fn new_unchecked(
        l: u32,
        pres: Presentation,
        labels: Vec<String>,
        mut matrices: BTreeMap<Generator, Matrix>,
    ) -> Result<Self> {
        crate::cyclo::field(l)?;
        let dim = labels.len();
        if !matrices.contains_key(&Generator::Kinv) {
            if let Some(k) = matrices.get(&Generator::K) {
                let inv = k
                    .inverse()
                    .map_err(|_| Error::InvalidInput("K matrix is singular".into()))?;
                matrices.insert(Generator::Kinv, inv);
            }
        }
        for &g in pres.generators() {
            let m = matrices
                .get(&g)
                .ok_or_else(|| Error::InvalidInput(format!("missing matrix for {g}")))?;
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidInput(format!(
                    "matrix for {g} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.order() != l {
                return Err(Error::OrderMismatch(m.order(), l));
            }
        }
        if let Some(g) = matrices.keys().find(|g| !pres.allows(**g)) {
            return Err(Error::PresentationMismatch(format!("generator {g} is not in {pres}")));
        }
        Ok(MatrixModule {
            l,
            pres,
            dim,
            labels,
            matrices,
        })
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn presentation(&self) -> Presentation {
        self.pres
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrices(&self) -> &BTreeMap<Generator, Matrix> {
        &self.matrices
    }

    pub fn matrix(&self, g: Generator) -> Result<&Matrix> {
        self.matrices
            .get(&g)
            .ok_or_else(|| Error::PresentationMismatch(format!("generator {g} is not in {}", self.pres)))
    }

    /// Every defining relation that fails, in a fixed order.
    pub fn verify_relations(&self) -> Vec<RelationViolation> {
        let gens = self.pres.generators();
        let mut out = Vec::new();
        for &t in gens {
            for &g in gens {
                let Some(rhs) = rule(self.l, self.pres, t, g) else { continue };
                let lhs = &self.matrices[&t] * &self.matrices[&g];
                let mut r = Matrix::zeros(self.l, self.dim, self.dim);
                for (c, word) in &rhs {
                    let mut w = Matrix::identity(self.l, self.dim);
                    for h in word {
                        w = &w * &self.matrices[h];
                    }
                    r = &r + &w.scale(c);
                }
                if let Some((row, col, residual)) = lhs.first_difference(&r) {
                    out.push(RelationViolation {
                        relation: describe_rule(t, g, &rhs),
                        row,
                        col,
                        residual,
                    });
                }
            }
        }
        out
    }

    /// Matrix by which an algebra element acts.
    pub fn act(&self, x: &AlgebraElement) -> Result<Matrix> {
        if x.order() != self.l {
            return Err(Error::OrderMismatch(x.order(), self.l));
        }
        let compatible = x.presentation() == self.pres
            || (x.presentation() == Presentation::Qsaa && self.pres == Presentation::Smash);
        if !compatible {
            return Err(Error::PresentationMismatch(format!(
                "element of {} acting on a {} module",
                x.presentation(),
                self.pres
            )));
        }
        let mut powers: HashMap<(Generator, u32), Matrix> = HashMap::new();
        let mut out = Matrix::zeros(self.l, self.dim, self.dim);
        for (m, c) in x.terms() {
            let mut acc = Matrix::identity(self.l, self.dim);
            for (g, n) in monomial_factors(m, self.pres) {
                if let std::collections::hash_map::Entry::Vacant(e) = powers.entry((g, n)) {
                    e.insert(self.matrix(g)?.pow(n));
                }
                acc = &acc * &powers[&(g, n)];
            }
            out = &out + &acc.scale(c);
        }
        Ok(out)
    }

    /// Matrix of a generator word.
    pub fn act_word(&self, word: &[Generator]) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.l, self.dim);
        for &g in word {
            acc = &acc * self.matrix(g)?;
        }
        Ok(acc)
    }

    fn sparse_generators(&self) -> Vec<SparseMatrix> {
        self.pres
            .generators()
            .iter()
            .map(|g| SparseMatrix::from_dense(&self.matrices[g]))
            .collect()
    }

    /// Dimension of the unital algebra generated by the action matrices.
    pub fn algebra_closure_dim(&self) -> usize {
        let n = self.dim;
        let full = n * n;
        let gens = self.sparse_generators();
        if crate::modp::closure_is_full(self.l, n, &gens) {
            return full;
        }
        let mut ech = Echelon::new(self.l, full);
        let mut queue = VecDeque::new();
        if let Some(row) = ech.insert(Matrix::identity(self.l, n).to_sparse_flat()) {
            queue.push_back(row.clone());
        }
        while let Some(a) = queue.pop_front() {
            for g in &gens {
                if ech.dim() == full {
                    return full;
                }
                if let Some(row) = ech.insert(g.right_mul_flat(&a, n)) {
                    queue.push_back(row.clone());
                }
            }
        }
        ech.dim()
    }

    // Actions of phi and psi where the presentation can express them.
    fn normal_element_actions(&self) -> Vec<Matrix> {
        let mut out = Vec::new();
        if matches!(self.pres, Presentation::Qsaa | Presentation::Smash) {
            if let Ok(phi) = crate::pbw::phi_element(self.l, self.pres).and_then(|p| self.act(&p)) {
                out.push(phi);
            }
        }
        if self.pres == Presentation::Smash {
            if let Ok(psi) = crate::pbw::psi_element(self.l).and_then(|p| self.act(&p)) {
                out.push(psi);
            }
        }
        out
    }

    /// Smallest invariant subspace containing `v`.
    pub fn spin_up(&self, v: &[CycloNum]) -> Result<Subspace> {
        if v.len() != self.dim {
            return Err(Error::InvalidInput(format!(
                "vector of length {} in a module of dimension {}",
                v.len(),
                self.dim
            )));
        }
        if v.iter().all(CycloNum::is_zero) {
            return Err(Error::InvalidInput("cannot spin up the zero vector".into()));
        }
        Ok(self.spin_up_many(&[to_sparse(v)]))
    }

    fn spin_up_many(&self, seeds: &[SparseVec]) -> Subspace {
        let gens = self.sparse_generators();
        let mut ech = Echelon::new(self.l, self.dim);
        let mut queue = VecDeque::new();
        for s in seeds {
            if let Some(row) = ech.insert(s.clone()) {
                queue.push_back(row.clone());
            }
        }
        while let Some(v) = queue.pop_front() {
            if ech.dim() == self.dim {
                break;
            }
            for g in &gens {
                if let Some(row) = ech.insert(g.apply(&v)) {
                    queue.push_back(row.clone());
                }
            }
        }
        Subspace::from_echelon(&ech)
    }

    /// Simple when the action matrices generate the full matrix algebra;
    /// not simple when a proper submodule turns up from spinning up basis
    /// vectors or kernel vectors of a fixed panel of elements.
    pub fn is_simple(&self) -> Simplicity {
        if self.dim == 0 {
            return Simplicity::NotSimple(Subspace::zero(self.l, 0));
        }
        if let Some(w) = self.basis_spin_witness() {
            return Simplicity::NotSimple(w);
        }
        if self.algebra_closure_dim() == self.dim * self.dim {
            return Simplicity::Simple;
        }
        match self.find_proper_submodule() {
            Some(w) => Simplicity::NotSimple(w),
            None => Simplicity::Undetermined,
        }
    }

    fn basis_spin_witness(&self) -> Option<Subspace> {
        let n = self.dim;
        (0..n).find_map(|i| {
            let mut e = SparseVec::new();
            e.insert(i, CycloNum::one(self.l));
            let s = self.spin_up_many(&[e]);
            (s.dim() > 0 && s.dim() < n).then_some(s)
        })
    }

    /// Deterministic search for a proper nonzero submodule.
    pub fn find_proper_submodule(&self) -> Option<Subspace> {
        let n = self.dim;
        let proper = |s: &Subspace| s.dim() > 0 && s.dim() < n;
        if let Some(s) = self.basis_spin_witness() {
            return Some(s);
        }
        for a in self.probe_panel() {
            let mut shifts: Vec<CycloNum> = vec![CycloNum::zero(self.l)];
            for d in a.diagonal() {
                if !shifts.contains(&d) {
                    shifts.push(d);
                }
            }
            for c in shifts {
                let shifted = &a - &Matrix::scalar(self.l, n, &c);
                let ker = shifted.left_kernel();
                if ker.is_empty() || ker.len() == n {
                    continue;
                }
                for v in &ker {
                    let s = self.spin_up_many(&[to_sparse(v)]);
                    if proper(&s) {
                        return Some(s);
                    }
                }
            }
        }
        None
    }

    // Generators, phi and psi when expressible, and products of two generators.
    fn probe_panel(&self) -> Vec<Matrix> {
        let gens = self.pres.generators();
        let mut out: Vec<Matrix> = gens.iter().map(|g| self.matrices[g].clone()).collect();
        out.extend(self.normal_element_actions());
        for &a in gens {
            for &b in gens {
                out.push(&self.matrices[&a] * &self.matrices[&b]);
            }
        }
        out
    }

    /// Basis of `{P : G^self P = P G^other for every generator}`.
    pub fn hom_space(&self, other: &MatrixModule) -> Result<Vec<Matrix>> {
        if self.l != other.l {
            return Err(Error::OrderMismatch(self.l, other.l));
        }
        if self.pres != other.pres {
            return Err(Error::PresentationMismatch(format!("{} vs {}", self.pres, other.pres)));
        }
        let (m, n) = (self.dim, other.dim);
        let var = |i: usize, j: usize| i * n + j;
        let mut eqs = Vec::new();
        for g in self.pres.generators() {
            let a = &self.matrices[g];
            let b = &other.matrices[g];
            for i in 0..m {
                for j in 0..n {
                    let mut eq = SparseVec::new();
                    for k in 0..m {
                        let x = a.get(i, k);
                        if !x.is_zero() {
                            add_entry(&mut eq, var(k, j), x);
                        }
                    }
                    for k in 0..n {
                        let x = b.get(k, j);
                        if !x.is_zero() {
                            add_entry(&mut eq, var(i, k), &-x);
                        }
                    }
                    eq.retain(|_, x| !x.is_zero());
                    if !eq.is_empty() {
                        eqs.push(eq);
                    }
                }
            }
        }
        let sol = solve_sparse(self.l, m * n, eqs);
        Ok(sol
            .kernel
            .iter()
            .map(|v| Matrix::from_sparse_flat(self.l, m, n, v))
            .collect())
    }

    /// True iff `p` intertwines the actions: `G^self p = p G^other` for all generators.
    pub fn is_homomorphism(&self, other: &MatrixModule, p: &Matrix) -> bool {
        if p.rows() != self.dim || p.cols() != other.dim || self.pres != other.pres {
            return false;
        }
        self.pres
            .generators()
            .iter()
            .all(|g| &self.matrices[g] * p == p * &other.matrices[g])
    }

    pub fn endo_algebra(&self) -> Result<EndoAlgebra> {
        let basis = self.hom_space(self)?;
        let k = basis.len();
        let gram = Matrix::from_fn(self.l, k, k, |i, j| (&basis[i] * &basis[j]).trace());
        let radical = gram
            .left_kernel()
            .iter()
            .map(|c| {
                let mut acc = Matrix::zeros(self.l, self.dim, self.dim);
                for (b, x) in basis.iter().zip(c) {
                    if !x.is_zero() {
                        acc = &acc + &b.scale(x);
                    }
                }
                acc
            })
            .collect();
        Ok(EndoAlgebra {
            quotient_dim: gram.rank(),
            basis,
            radical,
        })
    }

    /// Local endomorphism algebra with one-dimensional semisimple quotient.
    pub fn is_indecomposable(&self) -> Result<bool> {
        Ok(self.endo_algebra()?.quotient_dim == 1)
    }

    /// True iff some module endomorphism projects onto `w`.
    pub fn has_invariant_complement(&self, w: &Subspace) -> Result<bool> {
        if w.ambient() != self.dim {
            return Err(Error::InvalidInput("subspace lives in a different space".into()));
        }
        if !w.is_invariant(self) {
            return Err(Error::InvalidInput("subspace is not invariant".into()));
        }
        let ends = self.hom_space(self)?;
        let k = ends.len();
        let n = self.dim;
        let wmat = w.as_matrix(self.l);
        // Columns y with w.y = 0 for all w; image in W iff P y = 0.
        let annihilator = wmat.transpose().left_kernel();
        let mut eqs = Vec::new();
        for y in &annihilator {
            let images: Vec<Vec<CycloNum>> = ends.iter().map(|b| mat_vec(b, y)).collect();
            for r in 0..n {
                let eq: SparseVec = (0..k)
                    .filter(|&i| !images[i][r].is_zero())
                    .map(|i| (i, images[i][r].clone()))
                    .collect();
                if !eq.is_empty() {
                    eqs.push(eq);
                }
            }
        }
        for wv in w.basis() {
            let images: Vec<Vec<CycloNum>> = ends.iter().map(|b| b.apply(wv)).collect();
            for j in 0..n {
                let mut eq: SparseVec = (0..k)
                    .filter(|&i| !images[i][j].is_zero())
                    .map(|i| (i, images[i][j].clone()))
                    .collect();
                if !wv[j].is_zero() {
                    eq.insert(k, wv[j].clone());
                }
                if !eq.is_empty() {
                    eqs.push(eq);
                }
            }
        }
        Ok(solve_sparse(self.l, k, eqs).particular.is_some())
    }

    pub fn direct_sum(&self, other: &MatrixModule) -> Result<MatrixModule> {
        if self.l != other.l {
            return Err(Error::OrderMismatch(self.l, other.l));
        }
        if self.pres != other.pres {
            return Err(Error::PresentationMismatch(format!("{} vs {}", self.pres, other.pres)));
        }
        let labels = self
            .labels
            .iter()
            .map(|s| format!("1:{s}"))
            .chain(other.labels.iter().map(|s| format!("2:{s}")))
            .collect();
        let matrices = self
            .matrices
            .iter()
            .map(|(g, m)| (*g, m.direct_sum(&other.matrices[g])))
            .collect();
        MatrixModule::new_unchecked(self.l, self.pres, labels, matrices)
    }

    /// The module transported along the basis change `p`: matrices `p G p^-1`.
    pub fn conjugate(&self, p: &Matrix) -> Result<MatrixModule> {
        let inv = p.inverse()?;
        let matrices = self
            .matrices
            .iter()
            .map(|(g, m)| (*g, &(p * m) * &inv))
            .collect();
        MatrixModule::new_unchecked(self.l, self.pres, self.labels.clone(), matrices)
    }

    /// Same matrices with one generator replaced; relations are not checked.
    pub fn with_matrix(&self, g: Generator, m: Matrix) -> Result<MatrixModule> {
        let mut matrices = self.matrices.clone();
        matrices.insert(g, m);
        if g == Generator::K {
            matrices.remove(&Generator::Kinv);
        }
        MatrixModule::new_unchecked(self.l, self.pres, self.labels.clone(), matrices)
    }

    /// The scalar by which `x` acts, if it acts as a scalar.
    pub fn scalar_of(&self, x: &AlgebraElement) -> Result<Option<CycloNum>> {
        Ok(self.act(x)?.as_scalar())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<CycloNum> {
        let mut v = vec![CycloNum::zero(self.l); self.dim];
        v[i] = CycloNum::one(self.l);
        v
    }
}

fn add_entry(eq: &mut SparseVec, k: usize, x: &CycloNum) {
    match eq.get_mut(&k) {
        Some(e) => *e += x,
        None => {
            eq.insert(k, x.clone());
        }
    }
}

fn mat_vec(m: &Matrix, y: &[CycloNum]) -> Vec<CycloNum> {
    (0..m.rows())
        .map(|i| {
            let mut acc = CycloNum::zero(m.order());
            for (j, yj) in y.iter().enumerate() {
                let x = m.get(i, j);
                if !x.is_zero() && !yj.is_zero() {
                    acc += &(x * yj);
                }
            }
            acc
        })
        .collect()
}

fn monomial_factors(m: &Monomial, pres: Presentation) -> Vec<(Generator, u32)> {
    let [a, b, c, d, e] = m.exponents();
    let (z, w) = match pres {
        Presentation::Sub => (Generator::Phi, Generator::Psi),
        _ => (Generator::E, Generator::F),
    };
    let k = if d < 0 { Generator::Kinv } else { Generator::K };
    [(Generator::X, a), (Generator::Y, b), (z, c), (k, d.abs()), (w, e)]
        .into_iter()
        .filter(|&(_, n)| n != 0)
        .map(|(g, n)| (g, n as u32))
        .collect()
}

fn describe_rule(t: Generator, g: Generator, rhs: &[(CycloNum, Vec<Generator>)]) -> String {
    let terms: Vec<String> = rhs
        .iter()
        .map(|(c, w)| {
            let word = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|g| g.name()).collect::<Vec<_>>().join("*")
            };
            if c.is_one() {
                word
            } else {
                format!("({c})*{word}")
            }
        })
        .collect();
    format!("{t}*{g} = {}", terms.join(" + "))
}

/// Outcome of a simplicity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// A proper nonzero submodule.
    NotSimple(Subspace),
    /// The action does not generate the full matrix algebra, yet no
    /// submodule was found; the module may be simple but not split.
    Undetermined,
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Simplicity::Simple => "simple",
            Simplicity::NotSimple(_) => "not-simple",
            Simplicity::Undetermined => "undetermined-nonsplit",
        }
    }
}

/// Endomorphism algebra with its radical.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    pub basis: Vec<Matrix>,
    pub radical: Vec<Matrix>,
    /// Dimension of the algebra modulo its radical.
    pub quotient_dim: usize,
}

impl EndoAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Subspace of row vectors, stored in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<CycloNum>>,
}

impl Subspace {
    pub fn zero(_l: u32, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn span(l: u32, ambient: usize, vectors: &[Vec<CycloNum>]) -> Result<Self> {
        let mut ech = Echelon::new(l, ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::InvalidInput("vector length mismatch".into()));
            }
            ech.insert(to_sparse(v));
        }
        Ok(Self::from_echelon(&ech))
    }

    /// Span of the given basis vectors `e_i`.
    pub fn coordinate(l: u32, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors: Vec<Vec<CycloNum>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![CycloNum::zero(l); ambient];
                v[i] = CycloNum::one(l);
                v
            })
            .collect();
        Self::span(l, ambient, &vectors).expect("indices in range")
    }

    fn from_echelon(ech: &Echelon) -> Self {
        Subspace {
            ambient: ech.ambient(),
            basis: ech.rref(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<CycloNum>] {
        &self.basis
    }

    fn echelon(&self, l: u32) -> Echelon {
        let mut ech = Echelon::new(l, self.ambient);
        for v in &self.basis {
            ech.insert(to_sparse(v));
        }
        ech
    }

    pub fn contains(&self, v: &[CycloNum]) -> bool {
        if self.basis.is_empty() {
            return v.iter().all(CycloNum::is_zero);
        }
        let l = self.basis[0][0].order();
        self.echelon(l).contains(&to_sparse(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn is_invariant(&self, m: &MatrixModule) -> bool {
        m.pres.generators().iter().all(|g| {
            let a = &m.matrices[g];
            self.basis.iter().all(|v| self.contains(&a.apply(v)))
        })
    }

    /// Basis vectors as the rows of a matrix.
    pub fn as_matrix(&self, l: u32) -> Matrix {
        Matrix::from_rows(l, self.basis.clone()).unwrap_or_else(|_| Matrix::zeros(l, 0, self.ambient))
    }

    /// Dense vector in the ambient space, for sparse callers.
    pub fn dense(l: u32, v: &SparseVec, n: usize) -> Vec<CycloNum> {
        to_dense(l, v, n)
    }
}
