//! The composition method for multilinear components: the reduced identity
//! basis `M_5`, its lifts `M_d = {a φ(t)}` along monotonous substitutions,
//! completeness under composition, and the highest-term patterns.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{Field, FieldSpec, PrimeField, RationalField};
use crate::elements::Element;
use crate::linalg::{Echelon, EchelonSystem, LinalgError, SparseRow};
use crate::words::{Multidegree, Word, WordError, WordIndex};

/// Largest alphabet for which [`build_Md`] is offered.
pub const MAX_LIFT_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("the composition method is implemented for characteristic 2 or 3, not {0}")]
    Characteristic(u32),
    #[error("d = {0} is outside 5..={MAX_LIFT_DEGREE}")]
    DegreeOutOfRange(usize),
    #[error("identity with highest term {0} is not reduced")]
    NotReduced(Word),
    #[error("the zero element is not a reduced identity")]
    ZeroIdentity,
    #[error("identities of different multidegrees: {0} and {1}")]
    MixedMultidegree(Multidegree, Multidegree),
    #[error("identities over different fields")]
    MixedField,
    #[error("{0} is not multilinear")]
    NotMultilinear(Word),
    #[error("substitution images must be non-empty")]
    EmptyImage,
    #[error("substitution is not monotonous at images {0} and {1}")]
    NotMonotonous(Word, Word),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_p(p: u32) -> Result<(), CompositionError> {
    if p == 2 || p == 3 {
        Ok(())
    } else {
        Err(CompositionError::Characteristic(p))
    }
}

/// A homomorphism `x_i -> images[i-1]` with `φ(x_i) > φ(x_j)` whenever `i > j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionMap {
    images: Vec<Word>,
}

impl SubstitutionMap {
    pub fn new(images: Vec<Word>) -> Result<Self, CompositionError> {
        if images.iter().any(Word::is_empty) {
            return Err(CompositionError::EmptyImage);
        }
        for pair in images.windows(2) {
            if !pair[1].prefix_gt(&pair[0]) {
                return Err(CompositionError::NotMonotonous(pair[0].clone(), pair[1].clone()));
            }
        }
        Ok(SubstitutionMap { images })
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        let letters = w
            .letters()
            .iter()
            .flat_map(|&c| self.images[c as usize - 1].letters().iter().copied())
            .collect();
        Word::from_vec_unchecked(letters)
    }

    /// `prefix · φ(g)`.
    pub fn apply(&self, prefix: &Word, g: &Element) -> Element {
        Element::from_terms(
            g.field(),
            g.terms()
                .iter()
                .map(|(w, c)| (prefix.concat(&self.apply_word(w)), c.clone())),
        )
        .expect("substitution keeps homogeneity")
    }
}

/// Lexicographic rank of a permutation word of `1..=n`, equal to its column
/// in the [`WordIndex`] of `1^n`.
fn perm_rank(letters: &[u8]) -> u32 {
    let n = letters.len();
    let mut used = 0u32;
    let mut rank = 0u64;
    let mut fact = vec![1u64; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as u64;
    }
    for (pos, &c) in letters.iter().enumerate() {
        let smaller_unused = (1..c).filter(|&x| used & (1 << x) == 0).count() as u64;
        rank += smaller_unused * fact[n - pos - 1];
        used |= 1 << c;
    }
    rank as u32
}

/// Reduced identities of one multilinear component over `GF(p)`, stored as
/// sparse rows on the columns of the component's [`WordIndex`].
#[derive(Debug, Clone)]
pub struct IdentitySet {
    p: u32,
    index: Arc<WordIndex>,
    rows: Vec<SparseRow<u32>>,
}

impl IdentitySet {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn mdeg(&self) -> &Multidegree {
        self.index.mdeg()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn element(&self, i: usize) -> Element {
        let f = PrimeField::new(self.p);
        Element::from_terms(
            f.spec(),
            self.rows[i]
                .iter()
                .map(|(c, v)| (self.index.word(*c).clone(), f.to_scalar(v))),
        )
        .expect("rows are homogeneous")
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.rows.len()).map(|i| self.element(i))
    }

    /// `ov{M}`: the highest terms, ascending.
    pub fn highest_terms(&self) -> BTreeSet<Word> {
        self.lead_columns()
            .into_iter()
            .map(|c| self.index.word(c).clone())
            .collect()
    }

    fn lead_columns(&self) -> BTreeSet<u32> {
        self.rows.iter().map(|r| r.last().expect("nonzero").0).collect()
    }

    /// `B(M)`: words of the multidegree that are not highest terms, ascending.
    pub fn basis_words(&self) -> Vec<Word> {
        let leads = self.lead_columns();
        (0..self.index.len() as u32)
            .filter(|c| !leads.contains(c))
            .map(|c| self.index.word(c).clone())
            .collect()
    }

    pub fn is_complete_under_composition(&self) -> bool {
        complete_rows(PrimeField::new(self.p), self.index.len(), self.rows.clone())
    }
}

/// The rows (ascending highest terms) of the reduced echelon form of
/// `S_{1^5}` over `GF(p)`.
#[allow(non_snake_case)]
pub fn build_M5(p: u32) -> Result<Vec<Element>, CompositionError> {
    check_p(p)?;
    Ok(EchelonSystem::for_component(&Multidegree::multilinear(5), FieldSpec::prime(p))?.rows())
}

/// All `a φ(t')` of multidegree `1^d` with `t' ∈ M_5` and `φ` monotonous,
/// deduplicated.
#[allow(non_snake_case)]
pub fn build_Md(p: u32, d: usize) -> Result<IdentitySet, CompositionError> {
    check_p(p)?;
    if !(5..=MAX_LIFT_DEGREE).contains(&d) {
        return Err(CompositionError::DegreeOutOfRange(d));
    }
    let m5: Vec<Vec<(Vec<u8>, u32)>> = build_M5(p)?
        .iter()
        .map(|e| {
            e.terms()
                .iter()
                .map(|(w, c)| (w.letters().to_vec(), residue(c)))
                .collect()
        })
        .collect();
    let index = Arc::new(WordIndex::new(&Multidegree::multilinear(d))?);
    let lifts = substitution_shapes(d);
    let mut rows: Vec<SparseRow<u32>> = lifts
        .par_iter()
        .flat_map_iter(|(prefix, blocks)| {
            m5.iter().map(move |t| {
                let mut buf = Vec::with_capacity(d);
                let mut row: SparseRow<u32> = t
                    .iter()
                    .map(|(w, c)| {
                        buf.clear();
                        buf.extend_from_slice(prefix);
                        for &x in w {
                            buf.extend_from_slice(&blocks[x as usize - 1]);
                        }
                        (perm_rank(&buf), *c)
                    })
                    .collect();
                row.sort_unstable_by_key(|x| x.0);
                row
            })
        })
        .collect();
    rows.par_sort_unstable_by(|a, b| {
        let la = a.last().map(|x| x.0);
        let lb = b.last().map(|x| x.0);
        la.cmp(&lb).then_with(|| a.cmp(b))
    });
    rows.dedup();
    Ok(IdentitySet { p, index, rows })
}

fn residue(c: &crate::coeffs::Scalar) -> u32 {
    match c {
        crate::coeffs::Scalar::Residue { value, .. } => *value,
        crate::coeffs::Scalar::Rational(_) => unreachable!("M_5 is built over GF(p)"),
    }
}

/// Every `(a, [φ(x_1), .., φ(x_5)])` with `a φ(x_1) .. φ(x_5)` a permutation
/// of `1..=d` and the images ordered by first letter. Each permutation split
/// into a prefix and five consecutive non-empty blocks gives one candidate.
fn substitution_shapes(d: usize) -> Vec<(Vec<u8>, Vec<Vec<u8>>)> {
    let perms = crate::words::enumerate_words(&Multidegree::multilinear(d))
        .expect("small alphabet");
    let mut out = Vec::new();
    for w in &perms {
        let l = w.letters();
        for prefix in 0..=d - 5 {
            for cuts in compositions(d - prefix, 5) {
                let mut pos = prefix;
                let mut blocks = Vec::with_capacity(5);
                for len in cuts {
                    blocks.push(l[pos..pos + len].to_vec());
                    pos += len;
                }
                if blocks.windows(2).all(|b| b[0][0] < b[1][0]) {
                    out.push((l[..prefix].to_vec(), blocks));
                }
            }
        }
    }
    out
}

/// Compositions of `n` into `k` positive parts, lexicographic.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return if n >= 1 { vec![vec![n]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Whether differences of rows with a common highest term reduce to zero
/// using rows with smaller highest terms.
fn complete_rows<F: Field>(field: F, ncols: usize, mut rows: Vec<SparseRow<F::Elem>>) -> bool {
    rows.sort_by_key(|r| r.last().expect("nonzero").0);
    let mut e = Echelon::new(field.clone(), ncols);
    let mut s = e.scratch();
    let mut start = 0;
    while start < rows.len() {
        let lead = rows[start].last().expect("nonzero").0;
        let end = start + rows[start..].partition_point(|r| r.last().expect("nonzero").0 == lead);
        let first = &rows[start];
        for other in &rows[start + 1..end] {
            let diff = first
                .iter()
                .cloned()
                .chain(other.iter().map(|(c, v)| (*c, field.neg(v))));
            if !e.reduces_to_zero(&mut s, diff) {
                return false;
            }
        }
        // Pivots so far are all below `lead`, so the new row keeps it.
        e.insert(&mut s, first.iter().cloned());
        start = end;
    }
    true
}

/// Checks completeness under composition for an arbitrary list of reduced
/// identities of one multidegree.
pub fn check_complete_under_composition(m: &[Element]) -> Result<bool, CompositionError> {
    let Some(first) = m.first() else {
        return Ok(true);
    };
    let field = first.field();
    let mdeg = first.mdeg().clone();
    for t in m {
        if t.field() != field {
            return Err(CompositionError::MixedField);
        }
        let Some((w, _)) = t.highest_term() else {
            return Err(CompositionError::ZeroIdentity);
        };
        if !t.is_reduced() {
            return Err(CompositionError::NotReduced(w.clone()));
        }
        if t.mdeg() != &mdeg {
            return Err(CompositionError::MixedMultidegree(mdeg, t.mdeg().clone()));
        }
    }
    let index = WordIndex::new(&mdeg)?;
    Ok(if field.is_rational() {
        let f = RationalField;
        let rows = m
            .iter()
            .map(|t| {
                t.terms()
                    .iter()
                    .map(|(w, c)| {
                        (index.index_of(w).expect("checked"), f.from_scalar(c).expect("field checked"))
                    })
                    .collect()
            })
            .collect();
        complete_rows(f, index.len(), rows)
    } else {
        let f = PrimeField::new(field.characteristic());
        let rows = m
            .iter()
            .map(|t| {
                t.terms()
                    .iter()
                    .map(|(w, c)| {
                        (index.index_of(w).expect("checked"), f.from_scalar(c).expect("field checked"))
                    })
                    .collect()
            })
            .collect();
        complete_rows(f, index.len(), rows)
    })
}

/// The highest-term patterns `w = u a_1 .. a_k` for `p` in {2, 3}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternFamily {
    p: u32,
}

impl PatternFamily {
    pub fn new(p: u32) -> Result<Self, CompositionError> {
        check_p(p)?;
        Ok(PatternFamily { p })
    }

    /// Conditions on the blocks, given their first letters (the prefix order
    /// on blocks with disjoint letters is decided by the first letter).
    fn holds(&self, f: &[u8]) -> bool {
        let gt = |i: usize, j: usize| f[i - 1] > f[j - 1];
        match (self.p, f.len()) {
            (_, 3) => gt(1, 2) && gt(2, 3),
            (2, 4) => (gt(1, 2) && gt(1, 4) && gt(3, 4)) || (gt(1, 4) && gt(2, 3)),
            (2, 5) => {
                (gt(1, 2) && (gt(3, 4) || gt(3, 5) || gt(4, 5)))
                    || (gt(1, 3) && (gt(2, 4) || gt(2, 5) || gt(4, 5)))
                    || (gt(1, 4) && gt(2, 5))
            }
            (3, 4) => gt(1, 2) && gt(1, 4),
            (3, 5) => {
                (gt(1, 2) && gt(1, 3) && gt(4, 5))
                    || (gt(1, 3) && gt(1, 4) && gt(2, 5))
                    || (gt(1, 4) && gt(1, 5) && gt(2, 3))
            }
            _ => false,
        }
    }

    /// Whether some factorization `w = u a_1 .. a_k` satisfies a pattern.
    pub fn matches(&self, w: &Word) -> Result<bool, CompositionError> {
        let l = w.letters();
        let mut seen = HashSet::new();
        if !l.iter().all(|c| seen.insert(*c)) {
            return Err(CompositionError::NotMultilinear(w.clone()));
        }
        let n = l.len();
        for k in 3..=5 {
            for start in 0..n {
                if n - start < k {
                    break;
                }
                for cuts in compositions(n - start, k) {
                    let mut pos = start;
                    let firsts: Vec<u8> = cuts
                        .iter()
                        .map(|len| {
                            let c = l[pos];
                            pos += len;
                            c
                        })
                        .collect();
                    if self.holds(&firsts) {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }
}

/// Whether a multilinear word matches one of the highest-term patterns.
pub fn classify_highest_term(p: u32, w: &Word) -> Result<bool, CompositionError> {
    PatternFamily::new(p)?.matches(w)
}

/// Outcome of comparing the pattern classifier with `ov{M_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternCheck {
    pub p: u32,
    pub d: usize,
    pub words_checked: usize,
    /// Words where the classifier and the highest terms of `M_d` disagree.
    pub mismatches: Vec<Word>,
}

pub fn cross_check_patterns(m: &IdentitySet) -> Result<PatternCheck, CompositionError> {
    let family = PatternFamily::new(m.p)?;
    let leads = m.lead_columns();
    let mut mismatches = Vec::new();
    for (c, w) in m.index.words().iter().enumerate() {
        if family.matches(w)? != leads.contains(&(c as u32)) {
            mismatches.push(w.clone());
        }
    }
    Ok(PatternCheck {
        p: m.p,
        d: m.index.mdeg().len(),
        words_checked: m.index.len(),
        mismatches,
    })
}
