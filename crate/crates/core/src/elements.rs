//! Homogeneous elements of the free algebra, the linearizations of `x^3`,
//! the spanning identity systems `S_Δ`, and rewriting by `xux = -(x^2u + ux^2)`.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::{CoeffError, Field, FieldSpec, Scalar};
use crate::words::{blocks_of, is_canonical, Multidegree, Word, WordError, WordIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("element is not homogeneous: {0} and {1} have different multidegrees")]
    NotHomogeneous(Word, Word),
    #[error("multidegree mismatch: expected {expected}, found {found}")]
    MultidegreeMismatch {
        expected: Multidegree,
        found: Multidegree,
    },
    #[error("linearization arguments must be non-empty")]
    EmptyArgument,
    #[error("expected a multilinear multidegree, got {0}")]
    NotMultilinear(Multidegree),
    #[error("operation requires characteristic {expected}, got {found}")]
    WrongCharacteristic { expected: u32, found: u32 },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
}

/// A homogeneous linear combination of words with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    field: FieldSpec,
    mdeg: Multidegree,
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero(field: FieldSpec, mdeg: Multidegree) -> Self {
        Element {
            field,
            mdeg,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(word: Word, field: FieldSpec) -> Self {
        let mdeg = word.mdeg();
        let mut terms = BTreeMap::new();
        terms.insert(word, field.one());
        Element { field, mdeg, terms }
    }

    /// Collects terms, summing repeated words and dropping zero coefficients.
    pub fn from_terms(
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Self, ElementError> {
        let mut out = Element {
            field,
            mdeg: Multidegree::default(),
            terms: BTreeMap::new(),
        };
        for (w, c) in terms {
            out.add_term(w, c)?;
        }
        Ok(out)
    }

    /// Same as [`Element::from_terms`] with small integer coefficients.
    pub fn from_int_terms(
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Word, i64)>,
    ) -> Result<Self, ElementError> {
        Element::from_terms(field, terms.into_iter().map(|(w, c)| (w, field.from_i64(c))))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Multidegree shared by all terms (as recorded at construction for the zero element).
    pub fn mdeg(&self) -> &Multidegree {
        &self.mdeg
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The largest word with a nonzero coefficient and that coefficient.
    pub fn highest_term(&self) -> Option<(&Word, &Scalar)> {
        // All keys share one length, so BTreeMap order is the algebra order.
        self.terms.iter().next_back()
    }

    /// Leading coefficient equals 1.
    pub fn is_reduced(&self) -> bool {
        self.highest_term().is_some_and(|(_, c)| c.is_one())
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) -> Result<(), ElementError> {
        if c.characteristic() != self.field.characteristic() {
            return Err(CoeffError::MixedCharacteristic(
                c.characteristic(),
                self.field.characteristic(),
            )
            .into());
        }
        if c.is_zero() {
            return Ok(());
        }
        if let Some((first, _)) = self.terms.iter().next() {
            if first.mdeg() != w.mdeg() {
                return Err(ElementError::NotHomogeneous(first.clone(), w));
            }
        } else if self.mdeg.norm() == 0 {
            self.mdeg = w.mdeg();
        } else if self.mdeg != w.mdeg() {
            return Err(ElementError::MultidegreeMismatch {
                expected: self.mdeg.clone(),
                found: w.mdeg(),
            });
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                let sum = existing.add(&c)?;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
        Ok(())
    }

    fn check_field(&self, other: &Element) -> Result<(), ElementError> {
        if self.field != other.field {
            return Err(ElementError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element, ElementError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element, ElementError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            field: self.field,
            mdeg: self.mdeg.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<Element, ElementError> {
        let mut out = Element::zero(self.field, self.mdeg.clone());
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul(s)?)?;
        }
        Ok(out)
    }

    /// Product in the free algebra (concatenation of words).
    pub fn mul(&self, other: &Element) -> Result<Element, ElementError> {
        self.check_field(other)?;
        let mut out = Element::zero(self.field, Multidegree::default());
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn left_mul_word(&self, w: &Word) -> Element {
        self.map_words(|u| w.concat(u))
    }

    pub fn right_mul_word(&self, w: &Word) -> Element {
        self.map_words(|u| u.concat(w))
    }

    fn map_words(&self, f: impl Fn(&Word) -> Word) -> Element {
        let terms: BTreeMap<Word, Scalar> =
            self.terms.iter().map(|(w, c)| (f(w), c.clone())).collect();
        let mdeg = terms.keys().next().map(|w| w.mdeg()).unwrap_or_default();
        Element {
            field: self.field,
            mdeg,
            terms,
        }
    }

    /// Scales so the highest term has coefficient 1. The zero element is returned as is.
    pub fn normalized(&self) -> Element {
        match self.highest_term() {
            Some((_, lead)) => {
                let inv = lead.inv().expect("leading coefficient is nonzero");
                self.scale(&inv).expect("same field")
            }
            None => self.clone(),
        }
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            mdeg: self.mdeg.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(w, c)| TermJson {
                    word: w.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ElementJson, field: FieldSpec) -> Result<Element, ElementError> {
        let mut out = Element::zero(field, json.mdeg.clone());
        for t in &json.terms {
            out.add_term(t.word.clone(), field.parse_scalar(&t.coef)?)?;
        }
        if !out.is_zero() && out.mdeg != json.mdeg {
            return Err(ElementError::MultidegreeMismatch {
                expected: json.mdeg.clone(),
                found: out.mdeg,
            });
        }
        Ok(out)
    }
}

/// Wire form `{"mdeg":[...], "terms":[{"word":[...],"coef":"..."}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub mdeg: Multidegree,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Word,
    pub coef: String,
}

/// `T_1(a) = a^3`.
pub fn t1(a: &Word, field: FieldSpec) -> Result<Element, ElementError> {
    if a.is_empty() {
        return Err(ElementError::EmptyArgument);
    }
    Ok(Element::from_word(a.concat(a).concat(a), field))
}

/// `T_2(a,b) = a^2 b + a b a + b a^2`.
pub fn t2(a: &Element, b: &Element) -> Result<Element, ElementError> {
    if a.is_zero() || b.is_zero() || has_empty_word(a) || has_empty_word(b) {
        return Err(ElementError::EmptyArgument);
    }
    let aa = a.mul(a)?;
    aa.mul(b)?.add(&a.mul(b)?.mul(a)?)?.add(&b.mul(&aa)?)
}

/// `T_3(a,b,c) = abc + acb + bac + bca + cab + cba`.
pub fn t3(a: &Element, b: &Element, c: &Element) -> Result<Element, ElementError> {
    for x in [a, b, c] {
        if x.is_zero() || has_empty_word(x) {
            return Err(ElementError::EmptyArgument);
        }
    }
    let mut out = Element::zero(a.field, Multidegree::default());
    for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
        out = out.add(&x.mul(y)?.mul(z)?)?;
    }
    Ok(out)
}

fn has_empty_word(e: &Element) -> bool {
    e.terms.keys().any(|w| w.is_empty())
}

/// Which linearization bodies `f_1 T(...) f_2` to include.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Generation {
    Full,
    /// Only `f_1 T_3(a, x_i, x_j) f_2` with `deg(a) <= 3`.
    PrunedMultilinear,
}

/// An identity of `S_Δ` as integer coefficients on the columns of a [`WordIndex`],
/// sorted by column.
pub(crate) type RawRow = Vec<(u32, i64)>;

/// Every identity of `S_Δ` (or of the pruned multilinear system) over the integers,
/// deduplicated. Output order is deterministic.
pub(crate) fn raw_system(index: &WordIndex, mode: Generation) -> Vec<RawRow> {
    let per_word: Vec<Vec<RawRow>> = index
        .words()
        .par_iter()
        .map(|w| identities_through(index, w.letters(), mode))
        .collect();
    let mut seen: HashSet<RawRow> = HashSet::new();
    let mut out = Vec::new();
    for rows in per_word {
        for r in rows {
            if seen.insert(r.clone()) {
                out.push(r);
            }
        }
    }
    out
}

/// Identities `f_1 T(...) f_2` having `w` as their "first" term: `f_1 a^3 f_2`,
/// `f_1 a a b f_2`, or `f_1 a b c f_2` with `a <= b <= c`.
fn identities_through(index: &WordIndex, w: &[u8], mode: Generation) -> Vec<RawRow> {
    let n = w.len();
    let mut out = Vec::new();
    let col = |letters: &[u8]| {
        index
            .index_of_letters(letters)
            .expect("rearranged factors keep the multidegree")
    };
    if mode == Generation::Full {
        // T1: a single word containing a cube.
        let has_cube = (0..n).any(|i| {
            (1..=(n - i) / 3).any(|la| {
                w[i..i + la] == w[i + la..i + 2 * la] && w[i..i + la] == w[i + 2 * la..i + 3 * la]
            })
        });
        if has_cube {
            out.push(vec![(col(w), 1)]);
        }
        // T2: w = f1 a a b f2.
        for i in 0..n {
            for la in 1..=(n - i) / 2 {
                if w[i..i + la] != w[i + la..i + 2 * la] {
                    continue;
                }
                for lb in 1..=(n - i - 2 * la) {
                    let (f1, a) = (&w[..i], &w[i..i + la]);
                    let b = &w[i + 2 * la..i + 2 * la + lb];
                    let f2 = &w[i + 2 * la + lb..];
                    let mut buf = Vec::with_capacity(n);
                    let mut row = Vec::with_capacity(3);
                    for parts in [[a, a, b], [a, b, a], [b, a, a]] {
                        buf.clear();
                        buf.extend_from_slice(f1);
                        for p in parts {
                            buf.extend_from_slice(p);
                        }
                        buf.extend_from_slice(f2);
                        row.push((col(&buf), 1));
                    }
                    out.push(merge(row));
                }
            }
        }
    }
    // T3: w = f1 a b c f2.
    let mut buf = Vec::with_capacity(n);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..=n {
                    let (a, b, c) = (&w[i..j], &w[j..k], &w[k..l]);
                    if a > b || b > c {
                        continue;
                    }
                    if mode == Generation::PrunedMultilinear {
                        let mut lens = [a.len(), b.len(), c.len()];
                        lens.sort_unstable();
                        if lens[0] != 1 || lens[1] != 1 || lens[2] > 3 {
                            continue;
                        }
                    }
                    let (f1, f2) = (&w[..i], &w[l..]);
                    let mut row = Vec::with_capacity(6);
                    for parts in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                        buf.clear();
                        buf.extend_from_slice(f1);
                        for p in parts {
                            buf.extend_from_slice(p);
                        }
                        buf.extend_from_slice(f2);
                        row.push((col(&buf), 1));
                    }
                    out.push(merge(row));
                }
            }
        }
    }
    out
}

fn merge(mut row: Vec<(u32, i64)>) -> RawRow {
    row.sort_unstable_by_key(|&(c, _)| c);
    let mut out: RawRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

/// Reduces an integer row into `field`, dropping entries that vanish there.
pub(crate) fn raw_to_field<F: Field>(field: &F, row: &RawRow) -> Vec<(u32, F::Elem)> {
    row.iter()
        .filter_map(|&(c, v)| {
            let e = field.from_i64(v);
            (!field.is_zero(&e)).then_some((c, e))
        })
        .collect()
}

fn rows_to_elements(index: &WordIndex, field: FieldSpec, raw: Vec<RawRow>) -> Vec<Element> {
    let mut seen = HashSet::new();
    let mut out: Vec<Element> = Vec::new();
    for row in raw {
        let e = Element::from_int_terms(
            field,
            row.iter().map(|&(c, v)| (index.word(c).clone(), v)),
        )
        .expect("rows are homogeneous");
        if e.is_zero() {
            continue;
        }
        let e = e.normalized();
        let key: Vec<(Word, String)> = e
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.to_string()))
            .collect();
        if seen.insert(key) {
            out.push(e);
        }
    }
    out.sort_by(|x, y| {
        let hx = x.highest_term().map(|(w, _)| w);
        let hy = y.highest_term().map(|(w, _)| w);
        hy.cmp(&hx).then_with(|| {
            let kx: Vec<_> = x.terms.iter().rev().collect();
            let ky: Vec<_> = y.terms.iter().rev().collect();
            kx.iter()
                .map(|(w, c)| (*w, c.to_string()))
                .cmp(ky.iter().map(|(w, c)| (*w, c.to_string())))
        })
    });
    out
}

/// The identities `f_1 T_1(a) f_2`, `f_1 T_2(a,b) f_2`, `f_1 T_3(a,b,c) f_2` of
/// multidegree `delta`, made monic and deduplicated, ordered by highest term
/// descending.
#[allow(non_snake_case)]
pub fn generate_S(delta: &Multidegree, field: FieldSpec) -> Result<Vec<Element>, ElementError> {
    let index = WordIndex::new(delta)?;
    let raw = raw_system(&index, Generation::Full);
    Ok(rows_to_elements(&index, field, raw))
}

/// The reduced multilinear system over `GF(3)`: only `f_1 T_3(a_1,a_2,a_3) f_2`
/// with `deg(a_1) <= 3` and `deg(a_2) = deg(a_3) = 1`.
#[allow(non_snake_case)]
pub fn generate_S_pruned_p3(delta: &Multidegree, field: FieldSpec) -> Result<Vec<Element>, ElementError> {
    check_pruned_args(delta, field)?;
    let index = WordIndex::new(delta)?;
    let raw = raw_system(&index, Generation::PrunedMultilinear);
    Ok(rows_to_elements(&index, field, raw))
}

pub(crate) fn check_pruned_args(delta: &Multidegree, field: FieldSpec) -> Result<(), ElementError> {
    if field.characteristic() != 3 {
        return Err(ElementError::WrongCharacteristic {
            expected: 3,
            found: field.characteristic(),
        });
    }
    if !delta.is_multilinear() || delta.norm() == 0 {
        return Err(ElementError::NotMultilinear(delta.clone()));
    }
    Ok(())
}

/// Rewrites one word so that its occurrences of `x` become canonical, as a
/// signed combination of words. Words of degree above 3 in `x`, or containing
/// `x^3`, vanish.
fn rewrite_word(w: &[u8], x: u8) -> Vec<(Vec<u8>, i64)> {
    let blocks = blocks_of(w, x);
    let total: usize = blocks.iter().map(|&(_, len)| len).sum();
    if total > 3 || blocks.iter().any(|&(_, len)| len >= 3) {
        return Vec::new();
    }
    let shape: Vec<usize> = blocks.iter().map(|&(_, len)| len).collect();
    let cat = |parts: &[&[u8]]| parts.concat();
    let xx: &[u8] = &[x, x];
    let x1: &[u8] = &[x];
    match shape.as_slice() {
        // A x U x B  ->  -(A x^2 U B) - (A U x^2 B)
        [1, 1] | [1, 1, 1] => {
            let (s0, s1) = (blocks[0].0, blocks[1].0);
            let (a, u, rest) = (&w[..s0], &w[s0 + 1..s1], &w[s1 + 1..]);
            vec![(cat(&[a, xx, u, rest]), -1), (cat(&[a, u, xx, rest]), -1)]
        }
        // A x U x^2 B  ->  -(A x^2 U x B)
        [1, 2] => {
            let (s0, s1) = (blocks[0].0, blocks[1].0);
            let (a, u, rest) = (&w[..s0], &w[s0 + 1..s1], &w[s1 + 2..]);
            vec![(cat(&[a, xx, u, x1, rest]), -1)]
        }
        _ => vec![(w.to_vec(), 1)],
    }
}

/// Applies `x_i u x_i = -(x_i^2 u + u x_i^2)`, `x_i u x_i^2 = -x_i^2 u x_i`
/// and the vanishing of degree-4 and cube patterns until every surviving word is
/// canonical with respect to `x_i`.
pub fn rewrite_step_eq1(g: &Element, i: u8) -> Element {
    let field = g.field;
    let mut current: BTreeMap<Word, Scalar> = g.terms.clone();
    loop {
        if current.keys().all(|w| is_canonical(w, i)) {
            break;
        }
        let mut next = Element::zero(field, g.mdeg.clone());
        for (w, c) in &current {
            if is_canonical(w, i) {
                next.add_term(w.clone(), c.clone()).expect("homogeneous");
                continue;
            }
            for (v, sign) in rewrite_word(w.letters(), i) {
                let coef = if sign < 0 { c.neg() } else { c.clone() };
                next.add_term(Word::from_vec_unchecked(v), coef)
                    .expect("rewriting keeps the multidegree");
            }
        }
        current = next.terms;
    }
    Element {
        field,
        mdeg: g.mdeg.clone(),
        terms: current,
    }
}

/// Rewrites with respect to `x_1, x_2, ...` in turn until a fixpoint; every
/// surviving word is canonical.
pub fn canonicalize(g: &Element) -> Element {
    let d = g.terms.keys().map(|w| w.max_letter()).max().unwrap_or(0);
    let mut current = g.clone();
    loop {
        let mut changed = false;
        for i in 1..=d {
            if current.terms.keys().any(|w| !is_canonical(w, i)) {
                current = rewrite_step_eq1(&current, i);
                changed = true;
            }
        }
        if !changed {
            return current;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[u8]) -> Word {
        Word::from(l)
    }

    fn el(field: FieldSpec, terms: &[(&[u8], i64)]) -> Element {
        Element::from_int_terms(field, terms.iter().map(|&(l, c)| (w(l), c))).unwrap()
    }

    #[test]
    fn linearizations() {
        let f = FieldSpec::rationals();
        let x1 = Element::from_word(w(&[1]), f);
        let x2 = Element::from_word(w(&[2]), f);
        let x3 = Element::from_word(w(&[3]), f);
        assert_eq!(
            t2(&x1, &x2).unwrap(),
            el(f, &[(&[1, 1, 2], 1), (&[1, 2, 1], 1), (&[2, 1, 1], 1)])
        );
        let t = t3(&x1, &x2, &x3).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.terms().values().all(|c| c.is_one()));
        assert_eq!(t1(&w(&[1]), f).unwrap(), el(f, &[(&[1, 1, 1], 1)]));
        assert_eq!(t1(&Word::empty(), f), Err(ElementError::EmptyArgument));
        // T3(x1, x1, x2) = 2 T2(x1, x2), which vanishes in characteristic 2.
        assert_eq!(
            t3(&x1, &x1, &x2).unwrap(),
            t2(&x1, &x2).unwrap().scale(&f.from_i64(2)).unwrap()
        );
        let f2 = FieldSpec::prime(2);
        let y1 = Element::from_word(w(&[1]), f2);
        let y2 = Element::from_word(w(&[2]), f2);
        assert!(t3(&y1, &y1, &y2).unwrap().is_zero());
    }

    #[test]
    fn s_for_small_multidegrees() {
        let f = FieldSpec::prime(5);
        let s3 = generate_S(&Multidegree::from([3]), f).unwrap();
        assert_eq!(s3, vec![el(f, &[(&[1, 1, 1], 1)])]);

        let s21 = generate_S(&Multidegree::from([2, 1]), f).unwrap();
        assert_eq!(
            s21,
            vec![el(f, &[(&[1, 1, 2], 1), (&[1, 2, 1], 1), (&[2, 1, 1], 1)])]
        );
        // In characteristic 2 the T3(x1,x1,x2) row is zero; T2 survives.
        let s21_2 = generate_S(&Multidegree::from([2, 1]), FieldSpec::prime(2)).unwrap();
        assert_eq!(s21_2.len(), 1);

        for e in generate_S(&Multidegree::from([2, 2, 1]), FieldSpec::prime(3)).unwrap() {
            assert!(e.is_reduced());
            assert_eq!(e.mdeg(), &Multidegree::from([2, 2, 1]));
        }
    }

    #[test]
    fn pruned_generation_checks_arguments() {
        let d3 = Multidegree::multilinear(3);
        assert!(generate_S_pruned_p3(&d3, FieldSpec::prime(2)).is_err());
        assert!(generate_S_pruned_p3(&Multidegree::from([2, 1]), FieldSpec::prime(3)).is_err());
        let rows = generate_S_pruned_p3(&d3, FieldSpec::prime(3)).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].len(), 6);
    }

    #[test]
    fn rewriting_examples() {
        let f = FieldSpec::rationals();
        let g = Element::from_word(w(&[1, 2, 1]), f);
        assert_eq!(
            rewrite_step_eq1(&g, 1),
            el(f, &[(&[1, 1, 2], -1), (&[2, 1, 1], -1)])
        );
        let g = Element::from_word(w(&[1, 2, 1, 1]), f);
        assert_eq!(rewrite_step_eq1(&g, 1), el(f, &[(&[1, 1, 2, 1], -1)]));
        let g = Element::from_word(w(&[1, 2, 1, 1, 1]), f);
        assert!(rewrite_step_eq1(&g, 1).is_zero());
        let g = Element::from_word(w(&[1, 1, 1, 2]), f);
        assert!(canonicalize(&g).is_zero());
        let c = Element::from_word(w(&[1, 1, 2, 1]), f);
        assert_eq!(canonicalize(&c), c);
    }

    #[test]
    fn canonicalize_reaches_canonical_words() {
        let f = FieldSpec::prime(5);
        let g = Element::from_word(w(&[1, 2, 1, 2]), f);
        let c = canonicalize(&g);
        assert!(c.terms().keys().all(crate::words::is_canonical_word));
    }

    #[test]
    fn element_errors_and_json() {
        let f = FieldSpec::prime(3);
        let mut e = Element::from_word(w(&[1, 2]), f);
        assert!(matches!(
            e.add_term(w(&[1, 1]), f.one()),
            Err(ElementError::NotHomogeneous(..))
        ));
        assert!(e.add_term(w(&[2, 1]), FieldSpec::prime(5).one()).is_err());
        e.add_term(w(&[2, 1]), f.from_i64(2)).unwrap();
        let json = serde_json::to_string(&e.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"mdeg":[1,1],"terms":[{"word":[2,1],"coef":"2"},{"word":[1,2],"coef":"1"}]}"#
        );
        let back: ElementJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Element::from_json(&back, f).unwrap(), e);
    }
}
