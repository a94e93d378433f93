//! Words of the free semigroup on `x_1, ..., x_d` and their multidegrees.
//!
//! Letters are 1-based, so the word `x_1^2 x_2` is stored as `[1, 1, 2]`.
//! Two words are only ever ordered against each other when they have the same
//! multidegree; in that case the order is plain lexicographic comparison of
//! the letter indices.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by word-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {letter} is outside the alphabet 1..={d}")]
    LetterOutOfRange { letter: u8, d: usize },
    #[error("letter index 0 is not allowed (letters are 1-based)")]
    ZeroLetter,
    #[error("words {0} and {1} have different multidegrees and cannot be compared")]
    Incomparable(Word, Word),
    #[error("the empty multidegree has no words")]
    EmptyMultidegree,
    #[error("word {0} is not multilinear")]
    NotMultilinear(Word),
    #[error("alphabet of size {0} is too large (at most 255 letters)")]
    AlphabetTooLarge(usize),
}

/// A word `x_{i_1} x_{i_2} ... x_{i_k}` stored as its 1-based letter indices.
///
/// The derived `Ord` is lexicographic on the letter array. It is only used
/// for map storage; algebraic comparisons go through [`compare`], which
/// rejects words of different multidegree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    /// Builds a word, rejecting the letter index 0.
    pub fn new(letters: Vec<u8>) -> Result<Self, WordError> {
        if letters.contains(&0) {
            return Err(WordError::ZeroLetter);
        }
        Ok(Word(letters))
    }

    /// The unit of the free monoid. Only valid where a prefix or suffix may be empty.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(!letters.contains(&0));
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest letter index occurring in the word (0 for the empty word).
    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of occurrences of `letter`.
    pub fn degree_in(&self, letter: u8) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Multidegree over the smallest alphabet containing every letter of the word.
    pub fn mdeg(&self) -> Multidegree {
        let mut counts = vec![0u32; self.max_letter() as usize];
        for &l in &self.0 {
            counts[l as usize - 1] += 1;
        }
        Multidegree::new(counts)
    }

    /// Applies a letter substitution `x_i -> image(i)`.
    pub fn relabel(&self, image: impl Fn(u8) -> u8) -> Word {
        Word(self.0.iter().map(|&l| image(l)).collect())
    }

    /// The partial prefix order on arbitrary words: `u < v` when they first
    /// differ at some position and `u` has the smaller letter there.
    /// A proper prefix is incomparable with its extensions.
    pub fn prefix_cmp(&self, other: &Word) -> Option<Ordering> {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return Some(ord),
            }
        }
        if self.len() == other.len() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Strict `self > other` in the prefix order; incomparable pairs give `false`.
    pub fn prefix_gt(&self, other: &Word) -> bool {
        self.prefix_cmp(other) == Some(Ordering::Greater)
    }
}

impl From<&[u8]> for Word {
    fn from(letters: &[u8]) -> Self {
        Word::new(letters.to_vec()).expect("letters are 1-based")
    }
}

impl<const N: usize> From<[u8; N]> for Word {
    fn from(letters: [u8; N]) -> Self {
        Word::new(letters.to_vec()).expect("letters are 1-based")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    /// Compact digit notation for single-digit alphabets (`1123`), dotted otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        if self.0.iter().all(|&l| l < 10) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

/// Per-letter exponent counts `(δ_1, ..., δ_d)`.
///
/// Trailing zeros are permitted and ignored by equality and hashing, so
/// `(2,1)` and `(2,1,0)` denote the same grading component.
#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(counts: Vec<u32>) -> Self {
        Multidegree(counts)
    }

    /// The multilinear multidegree `1^d`.
    pub fn multilinear(d: usize) -> Self {
        Multidegree(vec![1; d])
    }

    /// `3^r 2^s 1^l`.
    pub fn block(r: usize, s: usize, l: usize) -> Self {
        let mut v = vec![3; r];
        v.extend(std::iter::repeat_n(2, s));
        v.extend(std::iter::repeat_n(1, l));
        Multidegree(v)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Counts with trailing zeros removed.
    pub fn trimmed(&self) -> &[u32] {
        let end = self.0.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        &self.0[..end]
    }

    /// Alphabet size `d` as written (including trailing zeros).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|Δ| = Σ δ_i`.
    pub fn norm(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn get(&self, letter: u8) -> u32 {
        self.0.get(letter as usize - 1).copied().unwrap_or(0)
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&c| c == 1)
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of words with this multidegree: `|Δ|! / Π δ_i!`.
    pub fn word_count(&self) -> u128 {
        multinomial(&self.0)
    }

    /// Entries sorted in non-increasing order together with the permutation
    /// used: `sorted[j] = self[perm[j]]`, 0-based, stable on ties.
    pub fn sorted_desc(&self) -> (Multidegree, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.0.len()).collect();
        perm.sort_by(|&a, &b| self.0[b].cmp(&self.0[a]));
        let sorted = perm.iter().map(|&i| self.0[i]).collect();
        (Multidegree(sorted), perm)
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Drops coordinate `letter` (1-based), shifting later letters down.
    pub fn without(&self, letter: u8) -> Multidegree {
        let mut v = self.0.clone();
        if (letter as usize) <= v.len() {
            v.remove(letter as usize - 1);
        }
        Multidegree(v)
    }

    pub fn with_entry(&self, letter: u8, value: u32) -> Multidegree {
        let mut v = self.0.clone();
        let idx = letter as usize - 1;
        if idx >= v.len() {
            v.resize(idx + 1, 0);
        }
        v[idx] = value;
        Multidegree(v)
    }
}

impl PartialEq for Multidegree {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for Multidegree {}

impl Hash for Multidegree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<u32>> for Multidegree {
    fn from(v: Vec<u32>) -> Self {
        Multidegree(v)
    }
}

impl<const N: usize> From<[u32; N]> for Multidegree {
    fn from(v: [u32; N]) -> Self {
        Multidegree(v.to_vec())
    }
}

pub(crate) fn multinomial(counts: &[u32]) -> u128 {
    let mut result: u128 = 1;
    let mut n: u128 = 0;
    for &c in counts {
        for k in 1..=c as u128 {
            n += 1;
            result = result * n / k;
        }
    }
    result
}

/// Multidegree of `w` over the alphabet `x_1..x_d`.
pub fn mdeg(w: &Word, d: usize) -> Result<Multidegree, WordError> {
    let mut counts = vec![0u32; d];
    for &l in w.letters() {
        if l == 0 {
            return Err(WordError::ZeroLetter);
        }
        if l as usize > d {
            return Err(WordError::LetterOutOfRange { letter: l, d });
        }
        counts[l as usize - 1] += 1;
    }
    Ok(Multidegree(counts))
}

/// Total order on words of one multidegree.
pub fn compare(u: &Word, v: &Word) -> Result<Ordering, WordError> {
    if u.mdeg() != v.mdeg() {
        return Err(WordError::Incomparable(u.clone(), v.clone()));
    }
    Ok(u.letters().cmp(v.letters()))
}

/// All words of multidegree `delta` in ascending order.
pub fn enumerate_words(delta: &Multidegree) -> Result<Vec<Word>, WordError> {
    if delta.norm() == 0 {
        return Err(WordError::EmptyMultidegree);
    }
    if delta.len() > u8::MAX as usize {
        return Err(WordError::AlphabetTooLarge(delta.len()));
    }
    let mut current: Vec<u8> = Vec::with_capacity(delta.norm());
    for (i, &c) in delta.counts().iter().enumerate() {
        current.extend(std::iter::repeat_n(i as u8 + 1, c as usize));
    }
    let mut out = Vec::with_capacity(delta.word_count() as usize);
    loop {
        out.push(Word(current.clone()));
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the lexicographically next arrangement; false once exhausted.
fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Run-length profile of `letter` inside `w`: the exponents of the maximal
/// blocks `x^e` in order of appearance.
pub(crate) fn blocks_of(w: &[u8], letter: u8) -> Vec<(usize, usize)> {
    // (start, length)
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        if w[i] == letter {
            let start = i;
            while i < w.len() && w[i] == letter {
                i += 1;
            }
            out.push((start, i - start));
        } else {
            i += 1;
        }
    }
    out
}

/// Whether the occurrences of `x_i` in `w` have one of the shapes
/// `w_1`, `w_1 x_i w_2`, `w_1 x_i^2 w_2` or `w_1 x_i^2 u x_i w_2`.
pub fn is_canonical(w: &Word, i: u8) -> bool {
    let blocks = blocks_of(w.letters(), i);
    let shape: Vec<usize> = blocks.iter().map(|&(_, len)| len).collect();
    matches!(shape.as_slice(), [] | [1] | [2] | [2, 1])
}

/// Canonical with respect to every letter.
pub fn is_canonical_word(w: &Word) -> bool {
    (1..=w.max_letter()).all(|i| is_canonical(w, i))
}

/// Parity of the permutation `σ` with `w = x_{σ(1)} ... x_{σ(d)}`.
pub fn is_even_permutation_word(w: &Word) -> Result<bool, WordError> {
    let d = w.len();
    let mut seen = vec![false; d];
    for &l in w.letters() {
        if l == 0 || l as usize > d || seen[l as usize - 1] {
            return Err(WordError::NotMultilinear(w.clone()));
        }
        seen[l as usize - 1] = true;
    }
    let letters = w.letters();
    let mut inversions = 0usize;
    for a in 0..d {
        for b in a + 1..d {
            if letters[a] > letters[b] {
                inversions += 1;
            }
        }
    }
    Ok(inversions.is_multiple_of(2))
}

/// The ascending word list of one multidegree with a reverse lookup.
///
/// Column index order coincides with [`compare`], so the highest term of a
/// homogeneous element is its largest column index.
#[derive(Debug, Clone)]
pub struct WordIndex {
    mdeg: Multidegree,
    words: Vec<Word>,
    lookup: HashMap<Vec<u8>, u32>,
}

impl WordIndex {
    pub fn new(delta: &Multidegree) -> Result<Self, WordError> {
        let words = enumerate_words(delta)?;
        let lookup = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.letters().to_vec(), i as u32))
            .collect();
        Ok(WordIndex {
            mdeg: delta.clone(),
            words,
            lookup,
        })
    }

    pub fn mdeg(&self) -> &Multidegree {
        &self.mdeg
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, idx: u32) -> &Word {
        &self.words[idx as usize]
    }

    pub fn index_of(&self, w: &Word) -> Option<u32> {
        self.lookup.get(w.letters()).copied()
    }

    pub fn index_of_letters(&self, letters: &[u8]) -> Option<u32> {
        self.lookup.get(letters).copied()
    }
}
