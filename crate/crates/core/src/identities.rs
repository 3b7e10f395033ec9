//! Catalogue of commutation identities, normality relations and central
//! elements, each stated as a pair of elements that must share a normal form.

use crate::cyclo::{q_power, CycloNum};
use crate::error::Result;
use crate::pbw::{phi_element, psi_element, AlgebraElement, Generator, Presentation};

#[derive(Clone, Debug)]
pub struct NamedIdentity {
    pub name: String,
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
}

impl NamedIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn word(l: u32, p: Presentation, w: &[(Generator, u32)]) -> Result<AlgebraElement> {
    let flat: Vec<Generator> = w
        .iter()
        .flat_map(|&(g, n)| std::iter::repeat_n(g, n as usize))
        .collect();
    AlgebraElement::from_word(l, p, &flat)
}

fn one(l: u32) -> CycloNum {
    CycloNum::one(l)
}

/// `(1 - q^{2n}) / (1 - q^2)`
fn geometric(l: u32, n: i64) -> Result<CycloNum> {
    (&one(l) - &q_power(l, 2 * n)).checked_div(&(&one(l) - &q_power(l, 2)))
}

/// `(q^n - q^{-n}) / (q - q^{-1})`
fn symmetric(l: u32, n: i64) -> Result<CycloNum> {
    (&q_power(l, n) - &q_power(l, -n)).checked_div(&(&q_power(l, 1) - &q_power(l, -1)))
}

/// `(K q^a - K^{-1} q^{-a}) / (q - q^{-1})` in the extension.
fn k_difference(l: u32, a: i64) -> Result<AlgebraElement> {
    let p = Presentation::Smash;
    let den = (&q_power(l, 1) - &q_power(l, -1)).inv()?;
    let k = word(l, p, &[(Generator::K, 1)])?.scale(&(&q_power(l, a) * &den));
    let kinv = word(l, p, &[(Generator::Kinv, 1)])?.scale(&(&q_power(l, -a) * &den));
    k.checked_sub(&kinv)
}

/// Commutation of `E` with powers of `Y` and of `Y` with powers of `E`, exponent `i >= 1`.
pub fn ageing_commutation(l: u32, i: u32) -> Result<Vec<NamedIdentity>> {
    use Generator::*;
    let p = Presentation::Qsaa;
    let ii = i as i64;
    let ey_lhs = word(l, p, &[(E, 1), (Y, i)])?;
    let coeff = (&q_power(l, -2 * ii) - &one(l)).checked_div(&(&q_power(l, -2) - &one(l)))?;
    let ey_rhs = word(l, p, &[(Y, i), (E, 1)])?
        .scale(&q_power(l, -ii))
        .checked_add(&word(l, p, &[(X, 1), (Y, i - 1)])?.scale(&coeff))?;
    let ye_lhs = word(l, p, &[(Y, 1), (E, i)])?;
    let coeff = &q_power(l, 1) * &geometric(l, ii)?;
    let ye_rhs = word(l, p, &[(E, i), (Y, 1)])?
        .scale(&q_power(l, ii))
        .checked_sub(&word(l, p, &[(X, 1), (E, i - 1)])?.scale(&coeff))?;
    Ok(vec![
        NamedIdentity {
            name: format!("E*Y^{i}"),
            lhs: ey_lhs,
            rhs: ey_rhs,
        },
        NamedIdentity {
            name: format!("Y*E^{i}"),
            lhs: ye_lhs,
            rhs: ye_rhs,
        },
    ])
}

/// Commutation identities in the extension by `F` (and, for `phi`/`psi`,
/// in the subalgebra) with exponent `s >= 1`.
///
/// The `F*E^s` entry compares against `E^s F`; [`f_power_e_swapped`]
/// gives the variant with `E F^s` on the right.
pub fn smash_commutation(l: u32, s: u32) -> Result<Vec<NamedIdentity>> {
    use Generator::*;
    let p = Presentation::Smash;
    let b = Presentation::Sub;
    let si = s as i64;
    let mut out = Vec::new();

    let lhs = word(l, p, &[(F, 1), (X, s)])?;
    let rhs = word(l, p, &[(X, s), (F, 1)])?
        .checked_add(&word(l, p, &[(Y, 1), (Kinv, 1), (X, s - 1)])?.scale(&geometric(l, si)?))?;
    out.push(NamedIdentity {
        name: format!("F*X^{s}"),
        lhs,
        rhs,
    });

    let lhs = word(l, p, &[(X, 1), (F, s)])?;
    let rhs = word(l, p, &[(F, s), (X, 1)])?
        .checked_sub(&word(l, p, &[(Y, 1), (F, s - 1), (Kinv, 1)])?.scale(&geometric(l, si)?))?;
    out.push(NamedIdentity {
        name: format!("X*F^{s}"),
        lhs,
        rhs,
    });

    let lhs = word(l, p, &[(E, 1), (F, s)])?;
    let tail = word(l, p, &[(F, s - 1)])?.checked_mul(&k_difference(l, 1 - si)?)?;
    let rhs = word(l, p, &[(F, s), (E, 1)])?.checked_add(&tail.scale(&symmetric(l, si)?))?;
    out.push(NamedIdentity {
        name: format!("E*F^{s}"),
        lhs,
        rhs,
    });

    let lhs = word(l, p, &[(F, 1), (E, s)])?;
    let tail = word(l, p, &[(E, s - 1)])?.checked_mul(&k_difference(l, si - 1)?)?;
    let rhs = word(l, p, &[(E, s), (F, 1)])?.checked_sub(&tail.scale(&symmetric(l, si)?))?;
    out.push(NamedIdentity {
        name: format!("F*E^{s}"),
        lhs,
        rhs,
    });

    let kyx = |pow: Generator, n: u32| word(l, b, &[(K, 1), (Y, 1), (X, 1), (pow, n)]);
    let lhs = word(l, b, &[(Psi, s), (Phi, 1)])?;
    let coeff = &q_power(l, 1) * &(&one(l) - &q_power(l, 2 * si));
    let rhs = word(l, b, &[(Phi, 1), (Psi, s)])?.checked_add(&kyx(Psi, s - 1)?.scale(&coeff))?;
    out.push(NamedIdentity {
        name: format!("psi^{s}*phi"),
        lhs,
        rhs,
    });

    let lhs = word(l, b, &[(Psi, 1), (Phi, s)])?;
    let coeff = &q_power(l, 3) * &(&q_power(l, -2 * si) - &one(l));
    let rhs = word(l, b, &[(Phi, s), (Psi, 1)])?.checked_add(&kyx(Phi, s - 1)?.scale(&coeff))?;
    out.push(NamedIdentity {
        name: format!("psi*phi^{s}"),
        lhs,
        rhs,
    });
    Ok(out)
}

/// `F E^r` against `E F^r - [r] E^{r-1} (K q^{r-1} - K^{-1} q^{1-r})/(q - q^{-1})`.
pub fn f_power_e_swapped(l: u32, r: u32) -> Result<NamedIdentity> {
    use Generator::*;
    let p = Presentation::Smash;
    let ri = r as i64;
    let lhs = word(l, p, &[(F, 1), (E, r)])?;
    let tail = word(l, p, &[(E, r - 1)])?.checked_mul(&k_difference(l, ri - 1)?)?;
    let rhs = word(l, p, &[(E, 1), (F, r)])?.checked_sub(&tail.scale(&symmetric(l, ri)?))?;
    Ok(NamedIdentity {
        name: format!("F*E^{r} (E*F^{r} on the right)"),
        lhs,
        rhs,
    })
}

/// The two closed forms of `phi`, the normality relations of `phi`, and the
/// closed forms of `phi`, `psi` in the extension.
pub fn phi_identities(l: u32) -> Result<Vec<NamedIdentity>> {
    use Generator::*;
    let p = Presentation::Qsaa;
    let q = |k| q_power(l, k);
    let phi = phi_element(l, p)?;
    let x = word(l, p, &[(X, 1)])?;
    let mut out = vec![
        NamedIdentity {
            name: "phi = X + (q^-1 - q) YE".into(),
            lhs: phi.clone(),
            rhs: x.checked_add(&word(l, p, &[(Y, 1), (E, 1)])?.scale(&(&q(-1) - &q(1))))?,
        },
        NamedIdentity {
            name: "phi = q^2 X + (1 - q^2) EY".into(),
            lhs: phi.clone(),
            rhs: x
                .scale(&q(2))
                .checked_add(&word(l, p, &[(E, 1), (Y, 1)])?.scale(&(&one(l) - &q(2))))?,
        },
    ];
    for (g, c) in [(X, q(0)), (Y, q(1)), (E, q(-1)), (K, q(1))] {
        let gen = word(l, p, &[(g, 1)])?;
        out.push(NamedIdentity {
            name: format!("{g}*phi = c*phi*{g}"),
            lhs: gen.checked_mul(&phi)?,
            rhs: phi.checked_mul(&gen)?.scale(&c),
        });
    }
    let s = Presentation::Smash;
    out.push(NamedIdentity {
        name: "phi = X - (q - q^-1) YE in A".into(),
        lhs: phi_element(l, s)?,
        rhs: word(l, s, &[(X, 1)])?
            .checked_sub(&word(l, s, &[(Y, 1), (E, 1)])?.scale(&(&q(1) - &q(-1))))?,
    });
    out.push(NamedIdentity {
        name: "psi = (1 - q^2) XF - q^2 YK^-1".into(),
        lhs: psi_element(l)?,
        rhs: word(l, s, &[(X, 1), (F, 1)])?
            .scale(&(&one(l) - &q(2)))
            .checked_sub(&word(l, s, &[(Y, 1), (Kinv, 1)])?.scale(&q(2)))?,
    });
    Ok(out)
}

/// Elements expected to be central in the given presentation.
pub fn central_candidates(l: u32, pres: Presentation) -> Result<Vec<(String, AlgebraElement)>> {
    use Generator::*;
    let gens: &[Generator] = match pres {
        Presentation::Qsaa => &[K, Kinv, E, X, Y],
        Presentation::Smash => &[K, Kinv, E, F, X, Y],
        Presentation::Sub => &[K, Kinv, X, Y, Phi, Psi],
    };
    gens.iter()
        .map(|&g| Ok((format!("{g}^{l}"), word(l, pres, &[(g, l)])?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_cases_hold() {
        for id in ageing_commutation(3, 1).unwrap() {
            assert!(id.holds(), "{}", id.name);
        }
        for id in smash_commutation(3, 1).unwrap() {
            assert!(id.holds(), "{}", id.name);
        }
        assert!(f_power_e_swapped(3, 1).unwrap().holds());
    }

    #[test]
    fn phi_relations() {
        for id in phi_identities(4).unwrap() {
            assert!(id.holds(), "{}", id.name);
        }
    }
}
