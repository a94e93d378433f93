//! The nilpotency degree `C(3, d, K)`: the least `C` such that every product
//! of `C` elements vanishes in the relatively free algebra on `d` generators.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{CoeffError, FieldSpec};
use crate::elements::Element;
use crate::linalg::{EchelonSystem, LinalgError};
use crate::tables::{paper_table, TableError};
use crate::words::{Multidegree, Word};

/// Components with more words than this are taken from the closed-form tables.
pub const DEFAULT_WORD_CAP: u128 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotencyError {
    #[error("the closed form needs at least two generators, got d = {0}")]
    TooFewGenerators(usize),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NilpotencyMethod {
    Formula,
    Gauss,
    /// At least one component was read off the closed-form tables.
    Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub p: u32,
    pub d: usize,
    #[serde(rename = "C")]
    pub c: usize,
    /// A word of degree `C - 1` that is nonzero in the algebra.
    pub witness: Option<Word>,
    pub witness_mdeg: Option<Multidegree>,
    pub method: NilpotencyMethod,
    pub components_checked: usize,
}

/// Closed form of the nilpotency degree for `d >= 2`.
#[allow(non_snake_case)]
pub fn C_formula(p: u32, d: usize) -> Result<usize, NilpotencyError> {
    FieldSpec::new(p)?;
    if d < 2 {
        return Err(NilpotencyError::TooFewGenerators(d));
    }
    Ok(match p {
        3 => 3 * d + 1,
        2 if d >= 3 => d + 3,
        _ => 6,
    })
}

#[allow(non_snake_case)]
pub fn formula_report(p: u32, d: usize) -> Result<NilpotencyReport, NilpotencyError> {
    Ok(NilpotencyReport {
        p,
        d,
        c: C_formula(p, d)?,
        witness: None,
        witness_mdeg: None,
        method: NilpotencyMethod::Formula,
        components_checked: 0,
    })
}

/// Non-increasing profiles of norm `n` with at most `d` parts, each at most 3.
/// Components with an exponent above 3 vanish, and permuting letters does not
/// change the dimension, so these represent every component of norm `n`.
pub fn profiles(n: usize, d: usize) -> Vec<Multidegree> {
    fn go(rest: usize, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Multidegree>) {
        if rest == 0 {
            out.push(Multidegree::new(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max.min(rest as u32)).rev() {
            cur.push(part);
            go(rest - part as usize, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 3, d, &mut Vec::new(), &mut out);
    out
}

struct Component {
    dim: usize,
    witness: Option<Word>,
    from_table: bool,
}

fn inspect(field: FieldSpec, delta: &Multidegree, cap: u128) -> Result<Component, NilpotencyError> {
    if delta.word_count() > cap {
        let t = paper_table(field, delta)?;
        return Ok(Component {
            dim: t.words.len(),
            witness: t.words.first().cloned(),
            from_table: true,
        });
    }
    let es = EchelonSystem::for_component(delta, field)?;
    let dim = es.quotient_dim();
    let mut witness = None;
    if dim > 0 {
        // Prefer a word from the closed-form table when it survives.
        if let Ok(t) = paper_table(field, delta) {
            for w in &t.words {
                if !es.membership(&Element::from_word(w.clone(), field))? {
                    witness = Some(w.clone());
                    break;
                }
            }
        }
        if witness.is_none() {
            witness = es.minimal_basis().into_iter().next();
        }
    }
    Ok(Component {
        dim,
        witness,
        from_table: false,
    })
}

/// Scans norms upward until every component vanishes. Components with more
/// than `cap` words are read off the closed-form tables instead of reduced.
#[allow(non_snake_case)]
pub fn C_compute(p: u32, d: usize, cap: u128) -> Result<NilpotencyReport, NilpotencyError> {
    let field = FieldSpec::new(p)?;
    if d == 0 {
        return Err(NilpotencyError::NoGenerators);
    }
    let mut last_witness = None;
    let mut used_table = false;
    let mut checked = 0;
    for n in 1.. {
        let comps: Vec<(Multidegree, Component)> = profiles(n, d)
            .into_par_iter()
            .map(|delta| inspect(field, &delta, cap).map(|c| (delta, c)))
            .collect::<Result<_, _>>()?;
        checked += comps.len();
        used_table |= comps.iter().any(|(_, c)| c.from_table);
        let nonzero = comps.into_iter().find(|(_, c)| c.dim > 0);
        match nonzero {
            Some((delta, c)) => last_witness = Some((delta, c.witness)),
            None => {
                let (witness_mdeg, witness) = match last_witness {
                    Some((m, w)) => (Some(m), w),
                    None => (None, None),
                };
                return Ok(NilpotencyReport {
                    p,
                    d,
                    c: n,
                    witness,
                    witness_mdeg,
                    method: if used_table {
                        NilpotencyMethod::Certificate
                    } else {
                        NilpotencyMethod::Gauss
                    },
                    components_checked: checked,
                });
            }
        }
    }
    unreachable!("norms above 3d have no profiles")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(C_formula(3, 4).unwrap(), 13);
        assert_eq!(C_formula(2, 5).unwrap(), 8);
        assert_eq!(C_formula(2, 2).unwrap(), 6);
        assert_eq!(C_formula(7, 9).unwrap(), 6);
        assert_eq!(C_formula(0, 3).unwrap(), 6);
        assert!(C_formula(2, 1).is_err());
        assert!(C_formula(4, 3).is_err());
    }

    #[test]
    fn profile_enumeration() {
        let got: Vec<Vec<u32>> = profiles(4, 2).iter().map(|m| m.counts().to_vec()).collect();
        assert_eq!(got, vec![vec![3, 1], vec![2, 2]]);
        assert!(profiles(7, 2).is_empty());
        assert_eq!(profiles(3, 3).len(), 3);
    }

    #[test]
    fn one_generator() {
        for p in [0, 2, 3, 5] {
            let r = C_compute(p, 1, DEFAULT_WORD_CAP).unwrap();
            assert_eq!(r.c, 3);
            assert_eq!(r.witness, Some(Word::from([1u8, 1].as_slice())));
        }
    }

    #[test]
    fn two_generators() {
        let r = C_compute(5, 2, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(r.c, 6);
        assert_eq!(r.witness, Some(Word::from([1u8, 1, 2, 2, 1].as_slice())));
        assert_eq!(r.method, NilpotencyMethod::Gauss);
        let r = C_compute(3, 2, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(r.c, 7);
        assert_eq!(r.witness, Some(Word::from([1u8, 1, 2, 2, 1, 2].as_slice())));
    }
}
