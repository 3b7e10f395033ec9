//! PBW normal forms for the quantum spatial ageing algebra, its extension by
//! `F`, and the subalgebra generated by `K^{±1}, X, Y, phi, psi`.
//!
//! Elements are finite sums of ordered monomials `X^a Y^b Z^c K^d W^e`,
//! where `Z` is `E` (or `phi` in the subalgebra), `W` is `F` (or `psi`), and
//! the `K` exponent may be negative. Products are reduced by oriented
//! rewrite rules `t*g -> ...` for every pair of generators that is out of
//! order.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;
use std::str::FromStr;

use crate::cyclo::{q_power, CycloNum};
use crate::error::{Error, Result};

/// Which algebra an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Presentation {
    /// The quantum spatial ageing algebra on `E, K^{±1}, X, Y`.
    Qsaa,
    /// The extension by `F`.
    Smash,
    /// The subalgebra on `K^{±1}, X, Y, phi, psi`.
    Sub,
}

impl Presentation {
    pub fn name(self) -> &'static str {
        match self {
            Presentation::Qsaa => "qsaa",
            Presentation::Smash => "A",
            Presentation::Sub => "B",
        }
    }

    pub fn generators(self) -> &'static [Generator] {
        use Generator::*;
        match self {
            Presentation::Qsaa => &[X, Y, E, K, Kinv],
            Presentation::Smash => &[X, Y, E, K, Kinv, F],
            Presentation::Sub => &[X, Y, Phi, K, Kinv, Psi],
        }
    }

    pub fn allows(self, g: Generator) -> bool {
        self.generators().contains(&g)
    }

    /// Generator sitting in each monomial slot, for printing.
    fn slot_names(self) -> [&'static str; 5] {
        match self {
            Presentation::Sub => ["X", "Y", "phi", "K", "psi"],
            _ => ["X", "Y", "E", "K", "F"],
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Presentation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qsaa" | "Qsaa" | "QSAA" => Ok(Presentation::Qsaa),
            "A" | "smash" => Ok(Presentation::Smash),
            "B" | "sub" => Ok(Presentation::Sub),
            _ => Err(Error::InvalidInput(format!("unknown presentation '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
    E,
    K,
    Kinv,
    F,
    Phi,
    Psi,
}

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::X,
        Generator::Y,
        Generator::E,
        Generator::K,
        Generator::Kinv,
        Generator::F,
        Generator::Phi,
        Generator::Psi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::X => "X",
            Generator::Y => "Y",
            Generator::E => "E",
            Generator::K => "K",
            Generator::Kinv => "Kinv",
            Generator::F => "F",
            Generator::Phi => "phi",
            Generator::Psi => "psi",
        }
    }

    fn slot(self) -> usize {
        match self {
            Generator::X => 0,
            Generator::Y => 1,
            Generator::E | Generator::Phi => 2,
            Generator::K | Generator::Kinv => 3,
            Generator::F | Generator::Psi => 4,
        }
    }

    fn step(self) -> i32 {
        if self == Generator::Kinv {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" => Ok(Generator::X),
            "Y" => Ok(Generator::Y),
            "E" => Ok(Generator::E),
            "K" => Ok(Generator::K),
            "Kinv" | "K^-1" => Ok(Generator::Kinv),
            "F" => Ok(Generator::F),
            "phi" => Ok(Generator::Phi),
            "psi" => Ok(Generator::Psi),
            _ => Err(Error::InvalidInput(format!("unknown generator '{s}'"))),
        }
    }
}

/// Ordered monomial: exponents of the five slots, the `K` slot signed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [i32; 5]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 5]);

    pub fn new(a: u32, b: u32, c: u32, d: i32, e: u32) -> Self {
        Monomial([a as i32, b as i32, c as i32, d, e as i32])
    }

    pub fn exponents(&self) -> [i32; 5] {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    /// The monomial spelled as a generator word in the given presentation.
    pub fn to_word(&self, p: Presentation) -> Vec<Generator> {
        let (z, w) = match p {
            Presentation::Sub => (Generator::Phi, Generator::Psi),
            _ => (Generator::E, Generator::F),
        };
        let [a, b, c, d, e] = self.0;
        let k = if d < 0 { Generator::Kinv } else { Generator::K };
        let mut word = Vec::with_capacity(self.degree() as usize);
        for (g, n) in [(Generator::X, a), (Generator::Y, b), (z, c), (k, d.abs()), (w, e)] {
            word.extend(std::iter::repeat_n(g, n as usize));
        }
        word
    }

    fn top_slot(&self) -> Option<usize> {
        (0..5).rev().find(|&i| self.0[i] != 0)
    }

    fn fmt_in(&self, p: Presentation) -> String {
        let names = p.slot_names();
        let parts: Vec<String> = (0..5)
            .filter(|&i| self.0[i] != 0)
            .map(|i| match self.0[i] {
                1 => names[i].to_string(),
                n => format!("{}^{}", names[i], n),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

type Terms = BTreeMap<Monomial, CycloNum>;

/// A linear combination of PBW monomials in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    l: u32,
    pres: Presentation,
    terms: Terms,
}

impl AlgebraElement {
    pub fn zero(l: u32, pres: Presentation) -> Self {
        AlgebraElement {
            l,
            pres,
            terms: Terms::new(),
        }
    }

    pub fn one(l: u32, pres: Presentation) -> Self {
        Self::scalar(pres, CycloNum::one(l))
    }

    pub fn scalar(pres: Presentation, c: CycloNum) -> Self {
        Self::monomial(pres, Monomial::ONE, c)
    }

    pub fn monomial(pres: Presentation, m: Monomial, c: CycloNum) -> Self {
        let l = c.order();
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgebraElement { l, pres, terms }
    }

    pub fn generator(l: u32, pres: Presentation, g: Generator) -> Result<Self> {
        Self::from_word(l, pres, &[g])
    }

    /// Normal form of a product of generators.
    pub fn from_word(l: u32, pres: Presentation, word: &[Generator]) -> Result<Self> {
        normal_form(l, pres, word, Strategy::Cached)
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn presentation(&self) -> Presentation {
        self.pres
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloNum)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> CycloNum {
        self.terms.get(m).cloned().unwrap_or_else(|| CycloNum::zero(self.l))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.l != other.l {
            return Err(Error::OrderMismatch(self.l, other.l));
        }
        if self.pres != other.pres {
            return Err(Error::PresentationMismatch(format!(
                "{} vs {}",
                self.pres, other.pres
            )));
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let mut out = AlgebraElement::zero(self.l, self.pres);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        out
    }

    /// Right multiplication by a single generator.
    pub fn mul_generator(&self, g: Generator) -> Result<Self> {
        if !self.pres.allows(g) {
            return Err(Error::PresentationMismatch(format!(
                "generator {g} is not in {}",
                self.pres
            )));
        }
        let mut out = AlgebraElement::zero(self.l, self.pres);
        for (m, c) in &self.terms {
            let prod = mono_times_gen(self.l, self.pres, *m, g);
            for (pm, pc) in prod.iter() {
                out.add_term(*pm, &(c * pc));
            }
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = AlgebraElement::zero(self.l, self.pres);
        for (m, c) in &other.terms {
            let mut part = self.scale(c);
            for g in m.to_word(self.pres) {
                part = part.mul_generator(g)?;
            }
            for (pm, pc) in part.terms {
                out.add_term(pm, &pc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = AlgebraElement::one(self.l, self.pres);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// Reinterprets an element of the ageing algebra inside its extension by `F`.
    pub fn into_smash(self) -> Result<Self> {
        match self.pres {
            Presentation::Qsaa | Presentation::Smash => Ok(AlgebraElement {
                pres: Presentation::Smash,
                ..self
            }),
            Presentation::Sub => embed_sub_in_smash(&self),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono = m.fmt_in(self.pres);
                if c.is_one() {
                    mono
                } else if *m == Monomial::ONE {
                    format!("({c})")
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} l={}] {}", self.pres, self.l, self)
    }
}

impl Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            l: self.l,
            pres: self.pres,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// `t * g` for an out-of-order pair, as a combination of generator words.
/// `None` means the pair is already ordered.
pub(crate) fn rule(l: u32, pres: Presentation, t: Generator, g: Generator) -> Option<Vec<(CycloNum, Vec<Generator>)>> {
    use Generator::*;
    let q = |k: i64| q_power(l, k);
    let one = || CycloNum::one(l);
    let r = match (pres, t, g) {
        (_, K, Kinv) | (_, Kinv, K) => vec![(one(), vec![])],
        (_, K, X) => vec![(q(1), vec![X, K])],
        (_, K, Y) => vec![(q(-1), vec![Y, K])],
        (_, Kinv, X) => vec![(q(-1), vec![X, Kinv])],
        (_, Kinv, Y) => vec![(q(1), vec![Y, Kinv])],
        (_, Y, X) => vec![(q(-1), vec![X, Y])],
        (Presentation::Sub, Phi, X) => vec![(one(), vec![X, Phi])],
        (Presentation::Sub, Phi, Y) => vec![(q(-1), vec![Y, Phi])],
        (Presentation::Sub, K, Phi) => vec![(q(1), vec![Phi, K])],
        (Presentation::Sub, Kinv, Phi) => vec![(q(-1), vec![Phi, Kinv])],
        (Presentation::Sub, Psi, X) => vec![(one(), vec![X, Psi])],
        (Presentation::Sub, Psi, Y) => vec![(q(1), vec![Y, Psi])],
        (Presentation::Sub, Psi, K) => vec![(q(1), vec![K, Psi])],
        (Presentation::Sub, Psi, Kinv) => vec![(q(-1), vec![Kinv, Psi])],
        (Presentation::Sub, Psi, Phi) => vec![
            (one(), vec![Phi, Psi]),
            (&q(1) * &(&one() - &q(2)), vec![K, Y, X]),
        ],
        (Presentation::Sub, _, _) => return None,
        (_, E, X) => vec![(q(1), vec![X, E])],
        (_, E, Y) => vec![(one(), vec![X]), (q(-1), vec![Y, E])],
        (_, K, E) => vec![(q(2), vec![E, K])],
        (_, Kinv, E) => vec![(q(-2), vec![E, Kinv])],
        (_, F, X) => vec![(one(), vec![Y, Kinv]), (one(), vec![X, F])],
        (_, F, Y) => vec![(one(), vec![Y, F])],
        (_, F, E) => {
            let c = (&q(1) - &q(-1)).inv().expect("q^2 != 1");
            vec![(one(), vec![E, F]), (-&c, vec![K]), (c, vec![Kinv])]
        }
        (_, F, K) => vec![(q(2), vec![K, F])],
        (_, F, Kinv) => vec![(q(-2), vec![Kinv, F])],
        _ => return None,
    };
    Some(r)
}

type Product = Rc<Vec<(Monomial, CycloNum)>>;
type Cache = HashMap<(Monomial, Generator), Product>;

thread_local! {
    static CACHES: RefCell<HashMap<(u32, Presentation), Cache>> = RefCell::new(HashMap::new());
}

/// Drops the per-thread product caches.
pub fn clear_caches() {
    CACHES.with(|c| c.borrow_mut().clear());
}

fn mono_times_gen(l: u32, pres: Presentation, m: Monomial, g: Generator) -> Product {
    let key = (m, g);
    if let Some(hit) = CACHES.with(|c| c.borrow().get(&(l, pres)).and_then(|t| t.get(&key).cloned())) {
        return hit;
    }
    let s = g.slot();
    let result: Product = match m.top_slot() {
        Some(top) if top > s => {
            let mut rest = m;
            let t = if top == 3 {
                if m.0[3] > 0 {
                    Generator::K
                } else {
                    Generator::Kinv
                }
            } else {
                match (pres, top) {
                    (_, 0) => Generator::X,
                    (_, 1) => Generator::Y,
                    (Presentation::Sub, 2) => Generator::Phi,
                    (_, 2) => Generator::E,
                    (Presentation::Sub, _) => Generator::Psi,
                    _ => Generator::F,
                }
            };
            rest.0[top] -= t.step();
            let rewrite = rule(l, pres, t, g).expect("out-of-order pair has a rule");
            let mut acc = AlgebraElement::zero(l, pres);
            for (c, word) in rewrite {
                let mut part = AlgebraElement::monomial(pres, rest, c);
                for h in word {
                    part = part.mul_generator(h).expect("rule output is in the presentation");
                }
                for (pm, pc) in part.terms {
                    acc.add_term(pm, &pc);
                }
            }
            Rc::new(acc.terms.into_iter().collect())
        }
        _ => {
            let mut out = m;
            out.0[s] += g.step();
            Rc::new(vec![(out, CycloNum::one(l))])
        }
    };
    CACHES.with(|c| {
        c.borrow_mut()
            .entry((l, pres))
            .or_default()
            .insert(key, result.clone())
    });
    result
}

/// How a word is reduced to normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Left-to-right multiplication with memoized monomial-by-generator products.
    Cached,
    /// Word rewriting, always at the leftmost out-of-order pair.
    Leftmost,
    /// Word rewriting, always at the rightmost out-of-order pair.
    Rightmost,
}

pub fn normal_form(l: u32, pres: Presentation, word: &[Generator], strategy: Strategy) -> Result<AlgebraElement> {
    crate::cyclo::field(l)?;
    if let Some(g) = word.iter().find(|g| !pres.allows(**g)) {
        return Err(Error::PresentationMismatch(format!("generator {g} is not in {pres}")));
    }
    match strategy {
        Strategy::Cached => {
            let mut acc = AlgebraElement::one(l, pres);
            for &g in word {
                acc = acc.mul_generator(g)?;
            }
            Ok(acc)
        }
        Strategy::Leftmost => Ok(rewrite_words(l, pres, word, false)),
        Strategy::Rightmost => Ok(rewrite_words(l, pres, word, true)),
    }
}

fn rewrite_words(l: u32, pres: Presentation, word: &[Generator], rightmost: bool) -> AlgebraElement {
    let mut pending: BTreeMap<Vec<Generator>, CycloNum> = BTreeMap::new();
    pending.insert(word.to_vec(), CycloNum::one(l));
    let mut out = AlgebraElement::zero(l, pres);
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        let redex = |i: &usize| rule(l, pres, w[*i], w[i + 1]).is_some();
        let pos = if w.len() < 2 {
            None
        } else if rightmost {
            (0..w.len() - 1).rev().find(redex)
        } else {
            (0..w.len() - 1).find(redex)
        };
        match pos {
            None => {
                let mut m = Monomial::ONE;
                for g in &w {
                    m.0[g.slot()] += g.step();
                }
                out.add_term(m, &c);
            }
            Some(i) => {
                for (rc, rhs) in rule(l, pres, w[i], w[i + 1]).expect("redex") {
                    let mut nw = w[..i].to_vec();
                    nw.extend(rhs);
                    nw.extend_from_slice(&w[i + 2..]);
                    let coeff = &c * &rc;
                    match pending.get_mut(&nw) {
                        Some(e) => *e += &coeff,
                        None => {
                            pending.insert(nw, coeff);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `phi = EY - qYE`, in the ageing algebra or its extension.
pub fn phi_element(l: u32, pres: Presentation) -> Result<AlgebraElement> {
    if pres == Presentation::Sub {
        return AlgebraElement::generator(l, pres, Generator::Phi);
    }
    let ey = AlgebraElement::from_word(l, pres, &[Generator::E, Generator::Y])?;
    let ye = AlgebraElement::from_word(l, pres, &[Generator::Y, Generator::E])?;
    ey.checked_sub(&ye.scale(&q_power(l, 1)))
}

/// `psi = XF - q^2 FX`, in the extension by `F`.
pub fn psi_element(l: u32) -> Result<AlgebraElement> {
    let p = Presentation::Smash;
    let xf = AlgebraElement::from_word(l, p, &[Generator::X, Generator::F])?;
    let fx = AlgebraElement::from_word(l, p, &[Generator::F, Generator::X])?;
    xf.checked_sub(&fx.scale(&q_power(l, 2)))
}

/// Expands `phi` and `psi` to express a subalgebra element inside the extension.
pub fn embed_sub_in_smash(x: &AlgebraElement) -> Result<AlgebraElement> {
    if x.pres != Presentation::Sub {
        return Err(Error::PresentationMismatch(format!("expected B, got {}", x.pres)));
    }
    let l = x.l;
    let p = Presentation::Smash;
    let phi = phi_element(l, p)?;
    let psi = psi_element(l)?;
    let mut out = AlgebraElement::zero(l, p);
    for (m, c) in &x.terms {
        let mut part = AlgebraElement::scalar(p, c.clone());
        for g in m.to_word(Presentation::Sub) {
            part = match g {
                Generator::Phi => part.checked_mul(&phi)?,
                Generator::Psi => part.checked_mul(&psi)?,
                other => part.mul_generator(other)?,
            };
        }
        out = out.checked_add(&part)?;
    }
    Ok(out)
}

/// True iff `x` commutes with every generator of its presentation.
pub fn is_central(x: &AlgebraElement) -> Result<bool> {
    for &g in x.pres.generators() {
        let gen = AlgebraElement::generator(x.l, x.pres, g)?;
        if !x.commutator(&gen)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff both sides have the same normal form.
pub fn verify_identity(lhs: &AlgebraElement, rhs: &AlgebraElement) -> Result<bool> {
    lhs.check_compatible(rhs)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;
    use Presentation::*;

    fn nf(l: u32, p: Presentation, w: &[Generator]) -> AlgebraElement {
        AlgebraElement::from_word(l, p, w).unwrap()
    }

    #[test]
    fn defining_relation_ey() {
        let l = 3;
        let lhs = nf(l, Qsaa, &[E, Y]);
        let rhs = &nf(l, Qsaa, &[X]) + &nf(l, Qsaa, &[Y, E]).scale(&q_power(l, -1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_inverse_cancels() {
        for p in [Qsaa, Smash, Sub] {
            assert_eq!(nf(4, p, &[K, Kinv]), AlgebraElement::one(4, p));
            assert_eq!(nf(4, p, &[Kinv, K]), AlgebraElement::one(4, p));
        }
    }

    #[test]
    fn eyy_expansion() {
        let l = 5;
        let q = |k| q_power(l, k);
        let expected = &nf(l, Qsaa, &[Y, Y, E]).scale(&q(-2))
            + &nf(l, Qsaa, &[X, Y]).scale(&(&CycloNum::one(l) + &q(-2)));
        assert_eq!(nf(l, Qsaa, &[E, Y, Y]), expected);
    }

    #[test]
    fn strategies_agree_on_a_long_word() {
        let w = [F, K, E, Y, F, X, Kinv, E];
        let a = normal_form(3, Smash, &w, Strategy::Cached).unwrap();
        let b = normal_form(3, Smash, &w, Strategy::Leftmost).unwrap();
        let c = normal_form(3, Smash, &w, Strategy::Rightmost).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let w = [Psi, Phi, K, Y, Psi, X, Phi];
        let a = normal_form(4, Sub, &w, Strategy::Cached).unwrap();
        let b = normal_form(4, Sub, &w, Strategy::Leftmost).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn foreign_generator_rejected() {
        assert!(matches!(
            AlgebraElement::from_word(3, Qsaa, &[F]),
            Err(Error::PresentationMismatch(_))
        ));
        assert!(AlgebraElement::from_word(3, Sub, &[E]).is_err());
    }

    #[test]
    fn centrality_small_cases() {
        let l = 3;
        assert!(is_central(&nf(l, Qsaa, &[X, X, X])).unwrap());
        assert!(!is_central(&nf(l, Qsaa, &[X])).unwrap());
        let phi = nf(l, Sub, &[Phi]);
        assert!(is_central(&phi.pow(3).unwrap()).unwrap());
    }

    #[test]
    fn phi_and_psi_closed_forms() {
        let l = 3;
        let q = |k| q_power(l, k);
        let phi = phi_element(l, Qsaa).unwrap();
        let alt = &nf(l, Qsaa, &[X]) + &nf(l, Qsaa, &[Y, E]).scale(&(&q(-1) - &q(1)));
        assert_eq!(phi, alt);
        let psi = psi_element(l).unwrap();
        let alt = &nf(l, Smash, &[X, F]).scale(&(&CycloNum::one(l) - &q(2)))
            - &nf(l, Smash, &[Y, Kinv]).scale(&q(2));
        assert_eq!(psi, alt);
    }

    #[test]
    fn subalgebra_relations_match_embedding() {
        let l = 4;
        for w in [[Psi, Phi], [Phi, Y], [Psi, K], [Psi, Y], [Phi, Kinv]] {
            let in_b = nf(l, Sub, &w);
            let lhs = embed_sub_in_smash(&in_b).unwrap();
            let mut rhs = AlgebraElement::one(l, Smash);
            for g in w {
                let factor = match g {
                    Phi => phi_element(l, Smash).unwrap(),
                    Psi => psi_element(l).unwrap(),
                    other => nf(l, Smash, &[other]),
                };
                rhs = &rhs * &factor;
            }
            assert_eq!(lhs, rhs, "word {w:?}");
        }
    }
}
