//! Exact row reduction of identity systems, quotient dimensions, minimal bases
//! and membership in the span of an identity system.

use std::collections::BinaryHeap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::coeffs::{CoeffError, Field, FieldSpec, PrimeField, RationalField, Scalar};
use crate::elements::{raw_system, raw_to_field, Element, ElementError, Generation, RawRow};
use crate::words::{Multidegree, Word, WordError, WordIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("multidegree mismatch: expected {expected}, found {found}")]
    MultidegreeMismatch {
        expected: Multidegree,
        found: Multidegree,
    },
    #[error("field mismatch: system over {system}, element over {element}")]
    FieldMismatch { system: FieldSpec, element: FieldSpec },
}

const NO_ROW: u32 = u32::MAX;

/// Sparse row, ascending columns.
pub(crate) type SparseRow<E> = Vec<(u32, E)>;

/// Dense accumulator reused across reductions; left clean after every call.
pub(crate) struct Scratch<E> {
    vals: Vec<E>,
    marked: Vec<bool>,
    heap: BinaryHeap<u32>,
}

impl<E: Clone> Scratch<E> {
    pub(crate) fn new(ncols: usize, zero: E) -> Self {
        Scratch {
            vals: vec![zero; ncols],
            marked: vec![false; ncols],
            heap: BinaryHeap::new(),
        }
    }
}

/// Row echelon form where every row is monic at its largest column and no
/// row contains the pivot column of another row once [`Echelon::finalize`] ran.
#[derive(Debug, Clone)]
pub(crate) struct Echelon<F: Field> {
    field: F,
    pivot_row: Vec<u32>,
    /// Pivot is the last entry and equals one.
    rows: Vec<SparseRow<F::Elem>>,
    units_only: bool,
}

impl<F: Field> Echelon<F> {
    pub(crate) fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            pivot_row: vec![NO_ROW; ncols],
            rows: Vec::new(),
            units_only: true,
        }
    }

    pub(crate) fn field(&self) -> &F {
        &self.field
    }

    pub(crate) fn ncols(&self) -> usize {
        self.pivot_row.len()
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn scratch(&self) -> Scratch<F::Elem> {
        Scratch::new(self.ncols(), self.field.zero())
    }

    pub(crate) fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NO_ROW
    }

    pub(crate) fn row_for_pivot(&self, col: u32) -> Option<&SparseRow<F::Elem>> {
        match self.pivot_row[col as usize] {
            NO_ROW => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    /// Pivot columns ascending.
    pub(crate) fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.ncols() as u32).filter(|&c| self.is_pivot(c))
    }

    /// Non-pivot columns ascending.
    pub(crate) fn free_columns(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.ncols() as u32).filter(|&c| !self.is_pivot(c))
    }

    pub(crate) fn units_only(&self) -> bool {
        self.units_only
    }

    /// Fully reduces `row` against the current pivots. The result has no pivot
    /// columns and is returned with ascending columns.
    pub(crate) fn reduce_with(
        &self,
        s: &mut Scratch<F::Elem>,
        row: impl IntoIterator<Item = (u32, F::Elem)>,
    ) -> SparseRow<F::Elem> {
        let f = &self.field;
        for (c, v) in row {
            let slot = &mut s.vals[c as usize];
            *slot = f.add(slot, &v);
            if !s.marked[c as usize] {
                s.marked[c as usize] = true;
                s.heap.push(c);
            }
        }
        let mut residual = Vec::new();
        // Pivot rows only reach below their pivot, so popping the largest
        // column first eliminates each pivot exactly once.
        while let Some(c) = s.heap.pop() {
            s.marked[c as usize] = false;
            let v = std::mem::replace(&mut s.vals[c as usize], f.zero());
            if f.is_zero(&v) {
                continue;
            }
            match self.pivot_row[c as usize] {
                NO_ROW => residual.push((c, v)),
                r => {
                    let prow = &self.rows[r as usize];
                    for (c2, v2) in &prow[..prow.len() - 1] {
                        f.sub_mul_assign(&mut s.vals[*c2 as usize], &v, v2);
                        if !s.marked[*c2 as usize] {
                            s.marked[*c2 as usize] = true;
                            s.heap.push(*c2);
                        }
                    }
                }
            }
        }
        residual.reverse();
        residual
    }

    pub(crate) fn reduces_to_zero(
        &self,
        s: &mut Scratch<F::Elem>,
        row: impl IntoIterator<Item = (u32, F::Elem)>,
    ) -> bool {
        self.reduce_with(s, row).is_empty()
    }

    /// Adds a row unless its reduced pivot would leave `Z[1/2,1/3]`, in which
    /// case the reduced row is handed back untouched.
    fn insert_if_unit(
        &mut self,
        s: &mut Scratch<F::Elem>,
        row: impl IntoIterator<Item = (u32, F::Elem)>,
    ) -> Result<Option<u32>, SparseRow<F::Elem>> {
        let residual = self.reduce_with(s, row);
        match residual.last() {
            None => Ok(None),
            Some((_, pv)) if !self.field.pivot_is_23_unit(pv) => Err(residual),
            Some(_) => Ok(self.push_reduced(residual)),
        }
    }

    /// Adds a row; returns its pivot column if it was independent.
    pub(crate) fn insert(
        &mut self,
        s: &mut Scratch<F::Elem>,
        row: impl IntoIterator<Item = (u32, F::Elem)>,
    ) -> Option<u32> {
        let residual = self.reduce_with(s, row);
        self.push_reduced(residual)
    }

    fn push_reduced(&mut self, mut residual: SparseRow<F::Elem>) -> Option<u32> {
        let (pc, pv) = residual.last()?.clone();
        if !self.field.pivot_is_23_unit(&pv) {
            self.units_only = false;
        }
        let inv = self.field.inv(&pv);
        let n = residual.len();
        for (_, v) in &mut residual[..n - 1] {
            *v = self.field.mul(v, &inv);
        }
        residual[n - 1].1 = self.field.one();
        self.pivot_row[pc as usize] = self.rows.len() as u32;
        self.rows.push(residual);
        Some(pc)
    }

    /// Back-substitutes so that no row mentions another row's pivot.
    pub(crate) fn finalize(&mut self, s: &mut Scratch<F::Elem>) {
        let order: Vec<u32> = self.pivots().collect();
        for pc in order {
            let r = self.pivot_row[pc as usize] as usize;
            let row = &self.rows[r];
            let tail = &row[..row.len() - 1];
            if !tail.iter().any(|&(c, _)| self.is_pivot(c)) {
                continue;
            }
            // Rows with smaller pivots are already final, so one pass suffices.
            let mut new_row = self.reduce_with(s, tail.iter().cloned());
            new_row.push((pc, self.field.one()));
            self.rows[r] = new_row;
        }
    }

    /// Rank of a list of rows, using a throwaway echelon on the same columns.
    pub(crate) fn rank_of(field: F, ncols: usize, rows: Vec<SparseRow<F::Elem>>) -> usize {
        let mut e = Echelon::new(field, ncols);
        let mut s = e.scratch();
        for r in rows {
            e.insert(&mut s, r);
        }
        e.rank()
    }
}

#[derive(Debug, Clone)]
enum Inner {
    Rational(Echelon<RationalField>),
    Prime(Echelon<PrimeField>),
}

/// Dispatches a generic body over the concrete echelon.
macro_rules! with_echelon {
    ($inner:expr, $e:ident => $body:expr) => {
        match $inner {
            Inner::Rational($e) => $body,
            Inner::Prime($e) => $body,
        }
    };
}

/// A fully reduced identity system of one multidegree. Immutable once built.
#[derive(Debug, Clone)]
pub struct EchelonSystem {
    index: Arc<WordIndex>,
    field: FieldSpec,
    inner: Inner,
}

impl EchelonSystem {
    /// Row-reduces an arbitrary list of homogeneous elements of multidegree `delta`.
    pub fn echelonize(
        system: &[Element],
        delta: &Multidegree,
        field: FieldSpec,
    ) -> Result<EchelonSystem, LinalgError> {
        let index = Arc::new(WordIndex::new(delta)?);
        let mut keyed = Vec::with_capacity(system.len());
        for e in system {
            check_element(e, delta, field)?;
            if e.is_zero() {
                continue;
            }
            let row: Vec<(u32, Scalar)> = e
                .terms()
                .iter()
                .map(|(w, c)| (index.index_of(w).expect("multidegree checked"), c.clone()))
                .collect();
            keyed.push(row);
        }
        // Descending leading word, then the full row, so the pivot sequence
        // (and the denominator flag) does not depend on the input order.
        keyed.sort_by(|a, b| {
            let la = a.last().map(|x| x.0);
            let lb = b.last().map(|x| x.0);
            lb.cmp(&la).then_with(|| {
                a.iter()
                    .rev()
                    .map(|(c, v)| (*c, v.to_string()))
                    .cmp(b.iter().rev().map(|(c, v)| (*c, v.to_string())))
            })
        });
        let n = index.len();
        let inner = if field.is_rational() {
            let f = RationalField;
            Inner::Rational(build_rational(n, keyed.iter().map(|r| scalar_row(&f, r)).collect()))
        } else {
            let f = PrimeField::new(field.characteristic());
            Inner::Prime(build(f, n, keyed.iter().map(|r| scalar_row(&f, r))))
        };
        Ok(EchelonSystem { index, field, inner })
    }

    /// Row-reduces `S_Δ` without materializing it as [`Element`]s.
    pub fn for_component(delta: &Multidegree, field: FieldSpec) -> Result<EchelonSystem, LinalgError> {
        Self::from_generation(delta, field, Generation::Full)
    }

    /// Row-reduces the pruned multilinear system (characteristic 3 only).
    pub fn for_component_pruned_p3(
        delta: &Multidegree,
        field: FieldSpec,
    ) -> Result<EchelonSystem, LinalgError> {
        crate::elements::check_pruned_args(delta, field)?;
        Self::from_generation(delta, field, Generation::PrunedMultilinear)
    }

    fn from_generation(
        delta: &Multidegree,
        field: FieldSpec,
        mode: Generation,
    ) -> Result<EchelonSystem, LinalgError> {
        let index = Arc::new(WordIndex::new(delta)?);
        let mut raw = raw_system(&index, mode);
        sort_raw(&mut raw);
        let n = index.len();
        let inner = if field.is_rational() {
            let f = RationalField;
            Inner::Rational(build_rational(n, raw.iter().map(|r| raw_to_field(&f, r)).collect()))
        } else {
            let f = PrimeField::new(field.characteristic());
            Inner::Prime(build(f, n, raw.iter().map(|r| raw_to_field(&f, r))))
        };
        Ok(EchelonSystem { index, field, inner })
    }

    pub fn mdeg(&self) -> &Multidegree {
        self.index.mdeg()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn index(&self) -> &WordIndex {
        &self.index
    }

    pub fn rank(&self) -> usize {
        with_echelon!(&self.inner, e => e.rank())
    }

    pub fn word_count(&self) -> usize {
        self.index.len()
    }

    /// Dimension of the quotient of the component by the span of the rows.
    pub fn quotient_dim(&self) -> usize {
        self.word_count() - self.rank()
    }

    /// In characteristic 0: every pivot inverted during elimination had a
    /// numerator supported on {2, 3}. Always true in positive characteristic.
    pub fn denominator_flag(&self) -> bool {
        with_echelon!(&self.inner, e => e.units_only())
    }

    /// Words that are not leading words of any row, ascending.
    pub fn minimal_basis(&self) -> Vec<Word> {
        with_echelon!(&self.inner, e => e.free_columns().map(|c| self.index.word(c).clone()).collect())
    }

    /// Leading words of the rows, ascending.
    pub fn leading_words(&self) -> Vec<Word> {
        with_echelon!(&self.inner, e => e.pivots().map(|c| self.index.word(c).clone()).collect())
    }

    /// The row led by `w`, if `w` is a leading word.
    pub fn row_led_by(&self, w: &Word) -> Option<Element> {
        let c = self.index.index_of(w)?;
        with_echelon!(&self.inner, e => e.row_for_pivot(c).map(|r| self.row_element(e.field(), r)))
    }

    /// Rows ordered by leading word ascending.
    pub fn rows(&self) -> Vec<Element> {
        with_echelon!(&self.inner, e => e
            .pivots()
            .map(|c| self.row_element(e.field(), e.row_for_pivot(c).expect("pivot")))
            .collect())
    }

    fn row_element<F: Field>(&self, f: &F, row: &SparseRow<F::Elem>) -> Element {
        Element::from_terms(
            self.field,
            row.iter().map(|(c, v)| (self.index.word(*c).clone(), f.to_scalar(v))),
        )
        .expect("rows are homogeneous")
    }

    /// Normal form of `g` modulo the rows: a combination of minimal-basis words.
    pub fn reduce(&self, g: &Element) -> Result<Element, LinalgError> {
        check_element(g, self.mdeg(), self.field)?;
        let out = with_echelon!(&self.inner, e => {
            let mut s = e.scratch();
            let row: Vec<(u32, Scalar)> = g
                .terms()
                .iter()
                .map(|(w, c)| (self.index.index_of(w).expect("checked"), c.clone()))
                .collect();
            let red = e.reduce_with(&mut s, scalar_row(e.field(), &row));
            let mut out = Element::zero(self.field, self.mdeg().clone());
            for (c, v) in red {
                out.add_term(self.index.word(c).clone(), e.field().to_scalar(&v))?;
            }
            out
        });
        Ok(out)
    }

    pub fn membership(&self, g: &Element) -> Result<bool, LinalgError> {
        Ok(self.reduce(g)?.is_zero())
    }

    /// Whether the images of `words` form a basis of the quotient.
    pub fn is_quotient_basis(&self, words: &[Word]) -> Result<bool, LinalgError> {
        if words.len() != self.quotient_dim() {
            return Ok(false);
        }
        Ok(self.quotient_rank(words)? == words.len())
    }

    /// Dimension of the span of the images of `words` in the quotient.
    pub fn quotient_rank(&self, words: &[Word]) -> Result<usize, LinalgError> {
        let mut cols = Vec::with_capacity(words.len());
        for w in words {
            let c = self.index.index_of(w).ok_or_else(|| LinalgError::MultidegreeMismatch {
                expected: self.mdeg().clone(),
                found: w.mdeg(),
            })?;
            cols.push(c);
        }
        Ok(with_echelon!(&self.inner, e => {
            let f = *e.field();
            let mut s = e.scratch();
            let rows: Vec<_> = cols
                .iter()
                .map(|&c| e.reduce_with(&mut s, std::iter::once((c, f.one()))))
                .collect();
            Echelon::rank_of(f, e.ncols(), rows)
        }))
    }
}

fn build<F: Field>(
    field: F,
    ncols: usize,
    rows: impl Iterator<Item = SparseRow<F::Elem>>,
) -> Echelon<F> {
    let mut e = Echelon::new(field, ncols);
    let mut s = e.scratch();
    // Rows whose pivot is not a {2,3}-unit wait until other rows may have
    // claimed that pivot; only in characteristic 0 does this ever trigger.
    let mut deferred = Vec::new();
    for r in rows {
        if e.rank() == ncols {
            break;
        }
        if let Err(residual) = e.insert_if_unit(&mut s, r) {
            deferred.push(residual);
        }
    }
    loop {
        let before = e.rank();
        let mut still = Vec::new();
        for r in deferred {
            if let Err(residual) = e.insert_if_unit(&mut s, r) {
                still.push(residual);
            }
        }
        deferred = still;
        if deferred.is_empty() || e.rank() == before {
            break;
        }
    }
    for r in deferred {
        e.insert(&mut s, r);
    }
    e.finalize(&mut s);
    e
}

/// Large prime used to choose which rational rows to eliminate exactly.
const FILTER_PRIME: u32 = 2_147_483_647;

/// Exact elimination over `Q`. Rows independent modulo a large prime are
/// eliminated first (they are independent over `Q` as well); the remaining
/// rows are then reduced against the result and added if they survive, so the
/// outcome is exact whatever the prime.
fn build_rational(ncols: usize, rows: Vec<SparseRow<BigRational>>) -> Echelon<RationalField> {
    let fp = PrimeField::new(FILTER_PRIME);
    let mut modular = Echelon::new(fp, ncols);
    let mut ms = modular.scratch();
    let mut chosen = vec![false; rows.len()];
    for (i, r) in rows.iter().enumerate() {
        if modular.rank() == ncols {
            break;
        }
        match reduce_mod(r, FILTER_PRIME) {
            Some(m) => chosen[i] = modular.insert(&mut ms, m).is_some(),
            // A denominator vanishes modulo the prime; keep the row.
            None => chosen[i] = true,
        }
    }
    let first = rows
        .iter()
        .zip(&chosen)
        .filter(|(_, &c)| c)
        .map(|(r, _)| r.clone());
    let mut e = build(RationalField, ncols, first);
    let mut s = e.scratch();
    let mut grew = false;
    for (r, _) in rows.iter().zip(&chosen).filter(|(_, &c)| !c) {
        if e.rank() == ncols {
            break;
        }
        grew |= e.insert(&mut s, r.iter().cloned()).is_some();
    }
    if grew {
        e.finalize(&mut s);
    }
    e
}

fn reduce_mod(row: &SparseRow<BigRational>, p: u32) -> Option<SparseRow<u32>> {
    let f = PrimeField::new(p);
    let modulus = BigInt::from(p);
    let mut out = Vec::with_capacity(row.len());
    for (c, v) in row {
        let n = (v.numer() % &modulus + &modulus) % &modulus;
        let d = (v.denom() % &modulus + &modulus) % &modulus;
        let n = n.to_u32().expect("reduced residue");
        let d = d.to_u32().expect("reduced residue");
        if d == 0 {
            return None;
        }
        let x = f.mul(&n, &f.inv(&d));
        if x != 0 {
            out.push((*c, x));
        }
    }
    Some(out)
}

fn sort_raw(raw: &mut [RawRow]) {
    raw.sort_by(|a, b| {
        let la = a.last().map(|x| x.0);
        let lb = b.last().map(|x| x.0);
        lb.cmp(&la).then_with(|| a.iter().rev().cmp(b.iter().rev()))
    });
}

fn scalar_row<F: Field>(f: &F, row: &[(u32, Scalar)]) -> SparseRow<F::Elem> {
    let mut out: SparseRow<F::Elem> = row
        .iter()
        .map(|(c, s)| (*c, f.from_scalar(s).expect("field checked")))
        .collect();
    out.sort_by_key(|x| x.0);
    out
}

fn check_element(e: &Element, delta: &Multidegree, field: FieldSpec) -> Result<(), LinalgError> {
    if e.field() != field {
        return Err(LinalgError::FieldMismatch {
            system: field,
            element: e.field(),
        });
    }
    if !e.is_zero() && e.mdeg() != delta {
        return Err(LinalgError::MultidegreeMismatch {
            expected: delta.clone(),
            found: e.mdeg().clone(),
        });
    }
    Ok(())
}

/// Row-reduces `system` (all of multidegree `delta`).
pub fn echelonize(
    system: &[Element],
    delta: &Multidegree,
    field: FieldSpec,
) -> Result<EchelonSystem, LinalgError> {
    EchelonSystem::echelonize(system, delta, field)
}

pub fn minimal_basis(es: &EchelonSystem) -> Vec<Word> {
    es.minimal_basis()
}

pub fn membership(es: &EchelonSystem, g: &Element) -> Result<bool, LinalgError> {
    es.membership(g)
}

/// Dimension of the component of multidegree `delta` of the relatively free
/// algebra over `field`.
pub fn dim_component(field: FieldSpec, delta: &Multidegree) -> Result<usize, LinalgError> {
    if delta.max_entry() >= 4 {
        return Ok(0);
    }
    Ok(EchelonSystem::for_component(delta, field)?.quotient_dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::{generate_S, t2};

    fn words(list: &[&[u8]]) -> Vec<Word> {
        list.iter().map(|l| Word::from(*l)).collect()
    }

    #[test]
    fn echelon_of_t2() {
        let f = FieldSpec::prime(2);
        let x1 = Element::from_word(Word::from([1]), f);
        let x2 = Element::from_word(Word::from([2]), f);
        let delta = Multidegree::from([2, 1]);
        let es = echelonize(&[t2(&x1, &x2).unwrap()], &delta, f).unwrap();
        assert_eq!(es.rank(), 1);
        assert_eq!(es.leading_words(), words(&[&[2, 1, 1]]));
        assert_eq!(es.minimal_basis(), words(&[&[1, 1, 2], &[1, 2, 1]]));

        let empty = echelonize(&[], &delta, f).unwrap();
        assert_eq!(empty.quotient_dim(), 3);
    }

    #[test]
    fn small_dimensions() {
        let q = FieldSpec::rationals();
        let es = EchelonSystem::for_component(&Multidegree::multilinear(3), q).unwrap();
        assert_eq!(es.rank(), 1);
        assert_eq!(es.quotient_dim(), 5);
        assert!(es.denominator_flag());
        assert_eq!(dim_component(FieldSpec::prime(3), &Multidegree::from([3, 3])).unwrap(), 1);
        assert_eq!(dim_component(FieldSpec::prime(2), &Multidegree::from([2, 2, 1])).unwrap(), 3);
        assert_eq!(dim_component(FieldSpec::prime(7), &Multidegree::from([4])).unwrap(), 0);
    }

    #[test]
    fn minimal_bases_of_multilinear_four() {
        let p2 = EchelonSystem::for_component(&Multidegree::multilinear(4), FieldSpec::prime(2)).unwrap();
        let b2 = p2.minimal_basis();
        assert_eq!(b2.len(), 12);
        assert!(b2.contains(&Word::from([4, 1, 2, 3])));
        let p0 = EchelonSystem::for_component(&Multidegree::multilinear(4), FieldSpec::rationals()).unwrap();
        let b0 = p0.minimal_basis();
        assert_eq!(b0.len(), 12);
        assert!(b0.contains(&Word::from([3, 4, 1, 2])));
    }

    #[test]
    fn membership_and_rows() {
        let f = FieldSpec::prime(2);
        let delta = Multidegree::from([2, 1, 2]);
        let es = EchelonSystem::for_component(&delta, f).unwrap();
        let g = Element::from_word(Word::from([1, 1, 2, 3, 3]), f);
        assert!(es.membership(&g).unwrap());
        for row in es.rows() {
            assert!(es.membership(&row).unwrap());
            assert!(row.is_reduced());
            // Fully reduced: the only leading word in a row is its own.
            let lead = row.highest_term().unwrap().0.clone();
            for w in row.terms().keys().filter(|w| **w != lead) {
                assert!(es.row_led_by(w).is_none());
            }
        }
        for w in es.minimal_basis() {
            assert!(!es.membership(&Element::from_word(w, f)).unwrap());
        }
        let wrong = Element::from_word(Word::from([1, 2]), f);
        assert!(matches!(
            es.membership(&wrong),
            Err(LinalgError::MultidegreeMismatch { .. })
        ));
    }

    #[test]
    fn element_input_matches_direct_generation() {
        for p in [0u32, 2, 3, 5] {
            let f = FieldSpec::new(p).unwrap();
            for delta in [vec![2, 1, 1], vec![2, 2], vec![3, 1, 1], vec![1, 1, 1, 1]] {
                let delta = Multidegree::from(delta);
                let s = generate_S(&delta, f).unwrap();
                let a = echelonize(&s, &delta, f).unwrap();
                let mut rev = s.clone();
                rev.reverse();
                let b = echelonize(&rev, &delta, f).unwrap();
                let c = EchelonSystem::for_component(&delta, f).unwrap();
                assert_eq!(a.rows(), b.rows());
                assert_eq!(a.rows(), c.rows());
            }
        }
    }

    #[test]
    fn quotient_basis_check() {
        let f = FieldSpec::prime(5);
        let es = EchelonSystem::for_component(&Multidegree::from([2, 1]), f).unwrap();
        assert!(es.is_quotient_basis(&words(&[&[1, 1, 2], &[2, 1, 1]])).unwrap());
        assert!(es.is_quotient_basis(&words(&[&[1, 1, 2], &[1, 2, 1]])).unwrap());
        assert!(!es.is_quotient_basis(&words(&[&[1, 1, 2]])).unwrap());
    }
}
