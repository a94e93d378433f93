//! Functionals and degree-lowering maps that vanish on the identities of the
//! multilinear components, and independence certificates built from them.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{Field, FieldSpec, PrimeField, Scalar};
use crate::elements::{Element, ElementError};
use crate::linalg::{Echelon, EchelonSystem, LinalgError, SparseRow};
use crate::tables::{BasisTable, TableError, B1d};
use crate::words::{is_even_permutation_word, Multidegree, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{what} is not available in characteristic {p}")]
    WrongCharacteristic { what: &'static str, p: u32 },
    #[error("{what} does not apply to multidegree {mdeg}")]
    WrongMultidegree { what: &'static str, mdeg: Multidegree },
    #[error("letter indices {0:?} are invalid for this functional")]
    BadLetters(Vec<u8>),
    #[error("candidate words do not share the multidegree {0}")]
    MixedCandidate(Multidegree),
    #[error("a reduced image {0} falls outside the smaller basis")]
    OutsideBasis(Word),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalKind {
    /// Every word maps to 1.
    PhiSum,
    /// Indicator of an adjacent factor `x_i x_j`.
    PhiAdj(u8, u8),
    /// Indicator of an even permutation.
    PhiEven,
    /// Counts of adjacent `x_1 x_2` and `x_2 x_1`.
    PsiCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Functional {
    kind: FunctionalKind,
    p: FieldSpec,
}

impl Functional {
    pub fn new(kind: FunctionalKind, p: FieldSpec) -> Result<Self, CertificateError> {
        let c = p.characteristic();
        let allowed = match kind {
            FunctionalKind::PhiSum => c == 2 || c == 3,
            FunctionalKind::PhiAdj(i, j) => {
                if i == 0 || j == 0 || i == j {
                    return Err(CertificateError::BadLetters(vec![i, j]));
                }
                c == 2
            }
            FunctionalKind::PhiEven => c == 3,
            FunctionalKind::PsiCount => c == 2,
        };
        if !allowed {
            return Err(CertificateError::WrongCharacteristic {
                what: kind_name(kind),
                p: c,
            });
        }
        Ok(Functional { kind, p })
    }

    pub fn kind(&self) -> FunctionalKind {
        self.kind
    }

    pub fn field(&self) -> FieldSpec {
        self.p
    }
}

fn kind_name(kind: FunctionalKind) -> &'static str {
    match kind {
        FunctionalKind::PhiSum => "phi_sum",
        FunctionalKind::PhiAdj(..) => "phi_adj",
        FunctionalKind::PhiEven => "phi_even",
        FunctionalKind::PsiCount => "psi_count",
    }
}

/// Value of a functional; `psi_count` yields the coefficients of `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionalValue {
    Single(Scalar),
    Pair(Scalar, Scalar),
}

fn adjacent(w: &[u8], a: u8, b: u8) -> bool {
    w.windows(2).any(|p| p[0] == a && p[1] == b)
}

fn adjacent_count(w: &[u8], a: u8, b: u8) -> i64 {
    w.windows(2).filter(|p| p[0] == a && p[1] == b).count() as i64
}

/// Per-word integer value(s) of a functional.
fn word_value(kind: FunctionalKind, w: &Word) -> (i64, i64) {
    let l = w.letters();
    match kind {
        FunctionalKind::PhiSum => (1, 0),
        FunctionalKind::PhiAdj(i, j) => (adjacent(l, i, j) as i64, 0),
        // Callers have already checked the word is multilinear.
        FunctionalKind::PhiEven => (is_even_permutation_word(w).unwrap_or(false) as i64, 0),
        FunctionalKind::PsiCount => (adjacent_count(l, 1, 2), adjacent_count(l, 2, 1)),
    }
}

fn is_psi_degree(m: &Multidegree) -> bool {
    let c = m.counts();
    c.len() >= 2 && c[0] == 2 && c[1] == 2 && c[2..].iter().all(|&x| x == 1)
}

pub fn apply_functional(f: &Functional, g: &Element) -> Result<FunctionalValue, CertificateError> {
    let field = f.p;
    if g.field() != field {
        return Err(CertificateError::WrongCharacteristic {
            what: kind_name(f.kind),
            p: g.field().characteristic(),
        });
    }
    let mdeg = g.mdeg();
    let fits = g.is_zero()
        || match f.kind {
            FunctionalKind::PsiCount => is_psi_degree(mdeg),
            FunctionalKind::PhiAdj(i, j) => {
                mdeg.is_multilinear() && i.max(j) as usize <= mdeg.len()
            }
            _ => mdeg.is_multilinear(),
        };
    if !fits {
        return Err(CertificateError::WrongMultidegree {
            what: kind_name(f.kind),
            mdeg: mdeg.clone(),
        });
    }
    let mut alpha = field.zero();
    let mut beta = field.zero();
    for (w, c) in g.terms() {
        let (a, b) = word_value(f.kind, w);
        if a != 0 {
            alpha = alpha.add(&c.mul(&field.from_i64(a)).expect("same field")).expect("same field");
        }
        if b != 0 {
            beta = beta.add(&c.mul(&field.from_i64(b)).expect("same field")).expect("same field");
        }
    }
    Ok(match f.kind {
        FunctionalKind::PsiCount => FunctionalValue::Pair(alpha, beta),
        _ => FunctionalValue::Single(alpha),
    })
}

/// Degree-lowering maps in characteristic 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reducer {
    /// Deletes every occurrence of `x_k` (`δ_k` is 1 or 2).
    PhiDelete(u8),
    /// `u1 x u2 x u3 x u4 -> u1 (x u2 u3 + u2 x u3 + u2 u3 x) u4` for `x = x_k`, `δ_k = 3`.
    PiSymmetrize(u8),
}

/// The multidegree after the reducer, keeping the alphabet (no relabelling).
fn reduced_mdeg(r: Reducer, mdeg: &Multidegree) -> Result<Multidegree, CertificateError> {
    let (k, ok, target, what) = match r {
        Reducer::PhiDelete(k) => (k, matches!(mdeg.get(k), 1 | 2), 0, "phi_delete"),
        Reducer::PiSymmetrize(k) => (k, mdeg.get(k) == 3, 1, "pi_symmetrize"),
    };
    if k == 0 || !ok {
        return Err(CertificateError::WrongMultidegree {
            what,
            mdeg: mdeg.clone(),
        });
    }
    Ok(mdeg.with_entry(k, target))
}

fn reduce_word(r: Reducer, w: &[u8], out: &mut Vec<(Word, i64)>) {
    match r {
        Reducer::PhiDelete(k) => {
            out.push((Word::from_vec_unchecked(w.iter().copied().filter(|&l| l != k).collect()), 1));
        }
        Reducer::PiSymmetrize(k) => {
            let pos: Vec<usize> = (0..w.len()).filter(|&i| w[i] == k).collect();
            let (a, b, c) = (pos[0], pos[1], pos[2]);
            let (u1, u2, u3, u4) = (&w[..a], &w[a + 1..b], &w[b + 1..c], &w[c + 1..]);
            for middle in [[&[k][..], u2, u3], [u2, &[k][..], u3], [u2, u3, &[k][..]]] {
                let mut v = u1.to_vec();
                for part in middle {
                    v.extend_from_slice(part);
                }
                v.extend_from_slice(u4);
                out.push((Word::from_vec_unchecked(v), 1));
            }
        }
    }
}

/// Applies a reducer; the alphabet is kept, so `x_k` simply disappears under deletion.
pub fn apply_reducer(r: Reducer, g: &Element) -> Result<Element, CertificateError> {
    let c = g.field().characteristic();
    if c != 3 {
        return Err(CertificateError::WrongCharacteristic {
            what: "reducer",
            p: c,
        });
    }
    let target = reduced_mdeg(r, g.mdeg())?;
    let mut terms = Vec::new();
    for (w, coef) in g.terms() {
        let mut images = Vec::new();
        reduce_word(r, w.letters(), &mut images);
        for (v, n) in images {
            terms.push((v, coef.mul(&g.field().from_i64(n)).expect("same field")));
        }
    }
    let out = Element::from_terms(g.field(), terms)?;
    Ok(if out.is_zero() {
        Element::zero(g.field(), target)
    } else {
        out
    })
}

/// Renames `x_i -> x_{i-1}` for `i > k` on an element free of `x_k`.
pub fn close_gap(g: &Element, k: u8) -> Result<Element, CertificateError> {
    if g.mdeg().get(k) != 0 {
        return Err(CertificateError::WrongMultidegree {
            what: "close_gap",
            mdeg: g.mdeg().clone(),
        });
    }
    let shift = |l: u8| if l > k { l - 1 } else { l };
    if g.is_zero() {
        return Ok(Element::zero(g.field(), g.mdeg().without(k)));
    }
    Ok(Element::from_terms(
        g.field(),
        g.terms().iter().map(|(w, c)| (w.relabel(shift), c.clone())),
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    /// Rank of `phi_sum` and all `phi_adj(i, j)`.
    PhiAdj,
    /// Images under every deletion expanded in the smaller basis, plus `phi_even`.
    #[serde(rename = "phi_k-recursive")]
    PhiKRecursive,
    /// Full row reduction of the identity system.
    Gauss,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub p: u32,
    pub d: usize,
    pub candidates: usize,
    pub rank: usize,
    pub independent: bool,
    pub method: CertificateMethod,
}

/// Normal forms of multilinear words one degree down, in terms of `basis`.
struct SmallerBasis<'a> {
    basis: &'a [Word],
    position: HashMap<&'a Word, u32>,
    system: Option<EchelonSystem>,
}

impl<'a> SmallerBasis<'a> {
    fn new(basis: &'a [Word]) -> Self {
        let position = basis.iter().enumerate().map(|(i, w)| (w, i as u32)).collect();
        SmallerBasis {
            basis,
            position,
            system: None,
        }
    }

    /// Coordinates of `v` with respect to the basis, with integer coefficients mod 3.
    fn coordinates(&mut self, v: &Word) -> Result<Vec<(u32, i64)>, CertificateError> {
        if let Some(&i) = self.position.get(v) {
            return Ok(vec![(i, 1)]);
        }
        let field = FieldSpec::prime(3);
        if self.system.is_none() {
            let d = self.basis.first().map_or(v.len(), Word::len);
            self.system = Some(EchelonSystem::for_component(&Multidegree::multilinear(d), field)?);
        }
        let es = self.system.as_ref().expect("just built");
        let nf = es.reduce(&Element::from_word(v.clone(), field))?;
        let mut out = Vec::with_capacity(nf.len());
        for (w, c) in nf.terms() {
            let &i = self
                .position
                .get(w)
                .ok_or_else(|| CertificateError::OutsideBasis(w.clone()))?;
            let value = match c {
                Scalar::Residue { value, .. } => *value as i64,
                Scalar::Rational(_) => unreachable!("system is over GF(3)"),
            };
            out.push((i, value));
        }
        Ok(out)
    }
}

fn column_rank(p: u32, ncols: usize, rows: Vec<Vec<(u32, i64)>>) -> usize {
    let f = PrimeField::new(p);
    let rows: Vec<SparseRow<u32>> = rows
        .into_iter()
        .map(|r| {
            let mut r: Vec<(u32, u32)> = r
                .into_iter()
                .map(|(c, v)| (c, f.from_i64(v)))
                .filter(|(_, v)| *v != 0)
                .collect();
            r.sort_unstable_by_key(|&(c, _)| c);
            r
        })
        .collect();
    Echelon::rank_of(f, ncols, rows)
}

fn candidate_degree(candidate: &BasisTable) -> Result<usize, CertificateError> {
    let d = candidate.mdeg.len();
    if !candidate.mdeg.is_multilinear() || d == 0 {
        return Err(CertificateError::WrongMultidegree {
            what: "certificate",
            mdeg: candidate.mdeg.clone(),
        });
    }
    if candidate.words.iter().any(|w| w.mdeg() != candidate.mdeg) {
        return Err(CertificateError::MixedCandidate(candidate.mdeg.clone()));
    }
    Ok(d)
}

/// Characteristic 2: the only solution of `φ(f) = φ_ij(f) = 0` for all `i != j` is zero.
fn certify_p2(candidate: &BasisTable, d: usize) -> CertificateReport {
    let n = candidate.words.len();
    let mut kinds = vec![FunctionalKind::PhiSum];
    for i in 1..=d as u8 {
        for j in 1..=d as u8 {
            if i != j {
                kinds.push(FunctionalKind::PhiAdj(i, j));
            }
        }
    }
    let rows = kinds
        .iter()
        .map(|&k| {
            candidate
                .words
                .iter()
                .enumerate()
                .filter_map(|(c, w)| match word_value(k, w).0 {
                    0 => None,
                    v => Some((c as u32, v)),
                })
                .collect()
        })
        .collect();
    let rank = column_rank(2, n, rows);
    CertificateReport {
        p: 2,
        d,
        candidates: n,
        rank,
        independent: rank == n,
        method: CertificateMethod::PhiAdj,
    }
}

/// Characteristic 3: expands every deletion image in `smaller`, which must be
/// independent one degree down, and adds `φ` and `φ_+`.
fn certify_p3(
    candidate: &BasisTable,
    d: usize,
    smaller: &[Word],
) -> Result<CertificateReport, CertificateError> {
    let n = candidate.words.len();
    let m = smaller.len();
    let mut lookup = SmallerBasis::new(smaller);
    let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); d * m + 2];
    for (col, w) in candidate.words.iter().enumerate() {
        let col = col as u32;
        for k in 1..=d as u8 {
            let image: Vec<u8> = w
                .letters()
                .iter()
                .filter(|&&l| l != k)
                .map(|&l| if l > k { l - 1 } else { l })
                .collect();
            for (i, v) in lookup.coordinates(&Word::from_vec_unchecked(image))? {
                rows[(k as usize - 1) * m + i as usize].push((col, v));
            }
        }
        rows[d * m].push((col, 1));
        if word_value(FunctionalKind::PhiEven, w).0 == 1 {
            rows[d * m + 1].push((col, 1));
        }
    }
    let rank = column_rank(3, n, rows);
    Ok(CertificateReport {
        p: 3,
        d,
        candidates: n,
        rank,
        independent: rank == n,
        method: CertificateMethod::PhiKRecursive,
    })
}

fn certify_gauss(candidate: &BasisTable, d: usize) -> Result<CertificateReport, CertificateError> {
    let p = candidate.p.characteristic();
    let es = EchelonSystem::for_component(&candidate.mdeg, candidate.p)?;
    let rank = es.quotient_rank(&candidate.words)?;
    let n = candidate.words.len();
    Ok(CertificateReport {
        p,
        d,
        candidates: n,
        rank,
        independent: rank == n,
        method: CertificateMethod::Gauss,
    })
}

/// Decides whether the candidate words are linearly independent modulo the
/// identities. For `p = 3`, `smaller` is an already certified basis of the
/// multilinear component one degree down.
///
/// A `false` result is only conclusive for the Gauss method; the functional
/// certificates can miss independence but never claim it wrongly.
pub fn certify_independence(
    candidate: &BasisTable,
    smaller: Option<&[Word]>,
) -> Result<CertificateReport, CertificateError> {
    let d = candidate_degree(candidate)?;
    match candidate.p.characteristic() {
        2 => Ok(certify_p2(candidate, d)),
        3 => match smaller {
            Some(s) if d >= 2 => certify_p3(candidate, d, s),
            _ => certify_gauss(candidate, d),
        },
        p => Err(CertificateError::WrongCharacteristic {
            what: "certify_independence",
            p,
        }),
    }
}

/// Certifies the recursive multilinear tables for `d = 5..=d_max` in order.
/// The base case `d = 5` is settled by row reduction; for `p = 3` each later
/// step relies on the previous one, and a step whose functional certificate is
/// rank deficient falls back to row reduction.
pub fn certify_chain(p: u32, d_max: usize) -> Result<Vec<CertificateReport>, CertificateError> {
    let mut reports = Vec::new();
    let mut previous: Option<BasisTable> = None;
    for d in 5..=d_max {
        let table = B1d(p, d)?;
        let mut report = match (&previous, p) {
            (None, _) => certify_gauss(&table, d)?,
            (Some(prev), _) => certify_independence(&table, Some(&prev.words))?,
        };
        if !report.independent && report.method != CertificateMethod::Gauss {
            report = certify_gauss(&table, d)?;
        }
        let ok = report.independent;
        reports.push(report);
        if !ok {
            break;
        }
        previous = Some(table);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::generate_S;

    fn w(s: &str) -> Word {
        Word::from_vec_unchecked(s.bytes().map(|b| b - b'0').collect())
    }

    fn single(v: FunctionalValue) -> Scalar {
        match v {
            FunctionalValue::Single(s) => s,
            FunctionalValue::Pair(..) => panic!("pair"),
        }
    }

    #[test]
    fn word_values() {
        let f2 = FieldSpec::prime(2);
        let f3 = FieldSpec::prime(3);
        let adj = Functional::new(FunctionalKind::PhiAdj(1, 2), f2).unwrap();
        let v = apply_functional(&adj, &Element::from_word(w("3124"), f2)).unwrap();
        assert!(single(v).is_one());
        let even = Functional::new(FunctionalKind::PhiEven, f3).unwrap();
        assert!(single(apply_functional(&even, &Element::from_word(w("231"), f3)).unwrap()).is_one());
        assert!(single(apply_functional(&even, &Element::from_word(w("213"), f3)).unwrap()).is_zero());
    }

    #[test]
    fn restricted_kinds() {
        assert!(Functional::new(FunctionalKind::PhiAdj(1, 2), FieldSpec::prime(3)).is_err());
        assert!(Functional::new(FunctionalKind::PhiEven, FieldSpec::prime(2)).is_err());
        assert!(Functional::new(FunctionalKind::PhiSum, FieldSpec::rationals()).is_err());
        assert!(Functional::new(FunctionalKind::PhiAdj(2, 2), FieldSpec::prime(2)).is_err());
    }

    #[test]
    fn pi_pi_example() {
        let f = FieldSpec::prime(3);
        let g = Element::from_word(w("112212"), f);
        let once = apply_reducer(Reducer::PiSymmetrize(1), &g).unwrap();
        let twice = apply_reducer(Reducer::PiSymmetrize(2), &once).unwrap();
        let want = Element::from_int_terms(f, [(w("12"), 1), (w("21"), -1)]).unwrap();
        assert_eq!(twice, want);
    }

    #[test]
    fn pi_single_block() {
        let f = FieldSpec::prime(3);
        let g = Element::from_word(w("12131"), f);
        let got = apply_reducer(Reducer::PiSymmetrize(1), &g).unwrap();
        let want = Element::from_int_terms(f, [(w("123"), 1), (w("213"), 1), (w("231"), 1)]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn delete_without_letter_is_identity() {
        let f = FieldSpec::prime(3);
        let g = Element::from_word(w("2113"), f);
        let mdeg = Multidegree::new(vec![2, 1, 1, 0]);
        let g = Element::from_terms(f, g.terms().clone()).unwrap();
        assert_eq!(g.mdeg(), &mdeg);
        assert!(apply_reducer(Reducer::PhiDelete(4), &g).is_err());
        let deleted = apply_reducer(Reducer::PhiDelete(2), &g).unwrap();
        assert_eq!(deleted, Element::from_word(w("113"), f));
    }

    #[test]
    fn functionals_kill_identities() {
        for d in 2..=5 {
            let delta = Multidegree::multilinear(d);
            for p in [2u32, 3] {
                let field = FieldSpec::prime(p);
                let mut kinds = vec![FunctionalKind::PhiSum];
                if p == 2 {
                    for i in 1..=d as u8 {
                        for j in 1..=d as u8 {
                            if i != j {
                                kinds.push(FunctionalKind::PhiAdj(i, j));
                            }
                        }
                    }
                } else {
                    kinds.push(FunctionalKind::PhiEven);
                }
                let s = generate_S(&delta, field).unwrap();
                for k in kinds {
                    let f = Functional::new(k, field).unwrap();
                    for t in &s {
                        assert!(single(apply_functional(&f, t).unwrap()).is_zero(), "{k:?} {t:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn psi_kills_identities() {
        let field = FieldSpec::prime(2);
        let f = Functional::new(FunctionalKind::PsiCount, field).unwrap();
        for d in 2..=4 {
            let mut c = vec![2, 2];
            c.extend(std::iter::repeat_n(1, d - 2));
            for t in generate_S(&Multidegree::new(c), field).unwrap() {
                match apply_functional(&f, &t).unwrap() {
                    FunctionalValue::Pair(a, b) => assert!(a.is_zero() && b.is_zero()),
                    FunctionalValue::Single(_) => panic!("single"),
                }
            }
        }
    }

    #[test]
    fn reducers_preserve_identities() {
        let field = FieldSpec::prime(3);
        for counts in [vec![3, 1, 1], vec![2, 1, 1, 1], vec![3, 2, 1]] {
            let delta = Multidegree::new(counts);
            for k in 1..=delta.len() as u8 {
                let r = if delta.get(k) == 3 {
                    Reducer::PiSymmetrize(k)
                } else {
                    Reducer::PhiDelete(k)
                };
                let target = reduced_mdeg(r, &delta).unwrap();
                let es = EchelonSystem::for_component(&target, field).unwrap();
                for t in generate_S(&delta, field).unwrap() {
                    let img = apply_reducer(r, &t).unwrap();
                    let img = Element::from_terms(field, img.terms().clone()).unwrap();
                    if !img.is_zero() {
                        assert!(es.membership(&img).unwrap(), "{r:?} {t:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn certificates_small() {
        let r = certify_independence(&B1d(2, 6).unwrap(), None).unwrap();
        assert!(r.independent);
        assert_eq!(r.candidates, 30);
        let b5 = B1d(3, 5).unwrap();
        let r = certify_independence(&B1d(3, 6).unwrap(), Some(&b5.words)).unwrap();
        assert!(r.independent, "{r:?}");
    }

    #[test]
    fn all_words_fail() {
        let all = BasisTable {
            p: FieldSpec::prime(2),
            mdeg: Multidegree::multilinear(6),
            words: crate::words::enumerate_words(&Multidegree::multilinear(6)).unwrap(),
            source: crate::tables::TableSource::MultilinearRecursion,
        };
        let r = certify_independence(&all, None).unwrap();
        assert!(!r.independent);
        assert!(r.rank < 720);
    }
}
