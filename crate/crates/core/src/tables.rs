//! Closed-form bases `B_Δ` of the homogeneous components and their sizes.
//!
//! Words are built on letter arrays for multidegrees sorted in non-increasing
//! order; any other multidegree is handled by relabeling letters.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::FieldSpec;
use crate::linalg::{EchelonSystem, LinalgError};
use crate::words::{Multidegree, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("no closed-form table for characteristic {p} and multidegree {mdeg}")]
    Uncovered { p: u32, mdeg: Multidegree },
    #[error("the multilinear recursion is defined for characteristic 2 or 3, not {0}")]
    RecursionCharacteristic(u32),
    #[error("the multilinear recursion needs d >= 1")]
    EmptyAlphabet,
    #[error("r, s and l are all zero")]
    EmptyBlock,
    #[error("too many letters: {0}")]
    AlphabetTooLarge(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which family of closed forms a table comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableSource {
    /// At most three letters, characteristic other than 3.
    #[serde(rename = "small-degree")]
    SmallDegree,
    /// Characteristic 0 or above 3, four or more letters.
    #[serde(rename = "char-0-or-large")]
    CharZeroOrLarge,
    /// Characteristic 2, four or more letters.
    #[serde(rename = "char-2")]
    CharTwo,
    /// Characteristic 3, blocks `3^r 2^s 1^l`.
    #[serde(rename = "char-3")]
    CharThree,
    #[serde(rename = "recursive-B1d")]
    MultilinearRecursion,
}

/// A set of words claimed to be a basis of one homogeneous component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisTable {
    pub p: FieldSpec,
    pub mdeg: Multidegree,
    pub words: Vec<Word>,
    pub source: TableSource,
}

fn table(p: FieldSpec, mdeg: Multidegree, words: Vec<Vec<u8>>, source: TableSource) -> BasisTable {
    let set: BTreeSet<Vec<u8>> = words.into_iter().collect();
    BasisTable {
        p,
        mdeg,
        words: set.into_iter().map(Word::from_vec_unchecked).collect(),
        source,
    }
}

/// Parses words written with digit letters, e.g. `"1123"`.
fn digits(list: &[&str]) -> Vec<Vec<u8>> {
    list.iter()
        .map(|s| s.bytes().map(|b| b - b'0').collect())
        .collect()
}

/// Tables for at most three letters in characteristic other than 3, keyed by
/// the sorted multidegree. Anything not listed is zero.
fn small_degree_words(sorted: &[u32]) -> Vec<Vec<u8>> {
    let list: &[&str] = match sorted {
        [1] => &["1"],
        [1, 1] => &["12", "21"],
        [2] => &["11"],
        [1, 1, 1] => &["123", "132", "213", "231", "312"],
        [2, 1] => &["112", "211"],
        [2, 1, 1] => &["1123", "1132", "2113", "2311", "3211"],
        [2, 2] => &["1122", "2211"],
        [3, 1] => &["1121"],
        [2, 2, 1] => &["11223", "22113", "31122"],
        [3, 1, 1] => &["11231", "11321"],
        [3, 2] => &["11221"],
        _ => &[],
    };
    digits(list)
}

/// Characteristic 0 or `p > 3` with four or more letters.
fn char_zero_words(sorted: &[u32]) -> Vec<Vec<u8>> {
    let list: &[&str] = match sorted {
        [1, 1, 1, 1] => &[
            "1234", "1243", "1324", "1342", "1423", "2134", "2143", "2314", "2341", "2413", "3124",
            "3412",
        ],
        [1, 1, 1, 1, 1] => &[
            "12345", "12354", "12435", "12453", "12534", "13245", "13254", "13425", "13452",
            "13524", "14235", "14523", "23145", "23415", "23514",
        ],
        [2, 1, 1, 1] => &["11234", "11324", "11423", "21134", "21143", "23114", "24113"],
        _ => &[],
    };
    digits(list)
}

/// Sorts and strips zeros; returns the sorted entries and, for each sorted
/// position, the original 1-based letter.
fn normalize(delta: &Multidegree) -> (Vec<u32>, Vec<u8>) {
    let (sorted, perm) = delta.sorted_desc();
    let trimmed = sorted.trimmed().to_vec();
    let letters = perm[..trimmed.len()].iter().map(|&i| i as u8 + 1).collect();
    (trimmed, letters)
}

fn relabel(words: Vec<Vec<u8>>, letters: &[u8]) -> Vec<Vec<u8>> {
    words
        .into_iter()
        .map(|w| w.into_iter().map(|c| letters[c as usize - 1]).collect())
        .collect()
}

fn check_alphabet(delta: &Multidegree) -> Result<(), TableError> {
    if delta.len() > u8::MAX as usize {
        return Err(TableError::AlphabetTooLarge(delta.len()));
    }
    Ok(())
}

/// The literal tables for characteristic `p != 3` with at most three letters,
/// and for characteristic 0 or `p > 3` with any number of letters.
pub fn table_small(p: FieldSpec, delta: &Multidegree) -> Result<BasisTable, TableError> {
    check_alphabet(delta)?;
    let (sorted, letters) = normalize(delta);
    let c = p.characteristic();
    let words = if c != 3 && sorted.len() <= 3 {
        (small_degree_words(&sorted), TableSource::SmallDegree)
    } else if c == 0 || c > 3 {
        (char_zero_words(&sorted), TableSource::CharZeroOrLarge)
    } else {
        return Err(TableError::Uncovered {
            p: c,
            mdeg: delta.clone(),
        });
    };
    Ok(table(p, delta.clone(), relabel(words.0, &letters), words.1))
}

/// Words of the multilinear recursion for `p` in {2, 3}; `d = 0` gives the
/// empty word.
fn b1d_words(p: u32, d: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<Vec<u8>> = vec![Vec::new()];
    for n in 1..=d {
        current = if n == 1 {
            vec![vec![1]]
        } else if p == 2 {
            b1d_step_char2(&current, n as u8)
        } else {
            b1d_step_char3(&current, n as u8)
        };
    }
    current
}

fn b1d_step_char2(prev: &[Vec<u8>], d: u8) -> Vec<Vec<u8>> {
    let mut out: BTreeSet<Vec<u8>> = BTreeSet::new();
    for w in prev {
        let mut v = vec![1];
        v.extend(w.iter().map(|&c| c + 1));
        out.insert(v);
    }
    // e_{d,k} = x_2..x_k x_1 x_{k+1}..x_d
    for k in 2..=d {
        let mut v: Vec<u8> = (2..=k).collect();
        v.push(1);
        v.extend(k + 1..=d);
        out.insert(v);
    }
    if d >= 3 {
        // f_d = x_2..x_{d-2} x_d x_1 x_{d-1}
        let mut v: Vec<u8> = (2..=d - 2).collect();
        v.extend([d, 1, d - 1]);
        out.insert(v);
        // h_{d,k} = x_k x_1..(no x_k)..x_d
        for k in 3..=d {
            let mut v = vec![k];
            v.extend((1..=d).filter(|&c| c != k));
            out.insert(v);
        }
    }
    if d == 4 {
        out.insert(vec![2, 1, 4, 3]);
    }
    out.into_iter().collect()
}

fn b1d_step_char3(prev: &[Vec<u8>], d: u8) -> Vec<Vec<u8>> {
    let mut out: BTreeSet<Vec<u8>> = BTreeSet::new();
    for w in prev {
        let mut v = vec![1];
        v.extend(w.iter().map(|&c| c + 1));
        out.insert(v);
        let mut v = vec![2];
        v.extend(w.iter().map(|&c| if c == 1 { 1 } else { c + 1 }));
        out.insert(v);
    }
    // e_{d,k} = x_3..x_k x_1 x_2 x_{k+1}..x_d
    for k in 3..=d {
        let mut v: Vec<u8> = (3..=k).collect();
        v.extend([1, 2]);
        v.extend(k + 1..=d);
        out.insert(v);
    }
    out.into_iter().collect()
}

/// The recursively defined basis of the multilinear component for `p` in {2, 3}.
#[allow(non_snake_case)]
pub fn B1d(p: u32, d: usize) -> Result<BasisTable, TableError> {
    if p != 2 && p != 3 {
        return Err(TableError::RecursionCharacteristic(p));
    }
    if d == 0 {
        return Err(TableError::EmptyAlphabet);
    }
    if d > u8::MAX as usize {
        return Err(TableError::AlphabetTooLarge(d));
    }
    Ok(table(
        FieldSpec::prime(p),
        Multidegree::multilinear(d),
        b1d_words(p, d),
        TableSource::MultilinearRecursion,
    ))
}

/// Ascending run of letters `from..=to`, empty when `from > to`.
fn run(from: usize, to: usize) -> impl Iterator<Item = u8> {
    (from..=to).map(|c| c as u8)
}

/// Tables in characteristic 2 for `21^{d-1}`, `2^2 1^{d-2}` and `31^{d-1}` with
/// `d >= 4` letters. The multidegree must be one of these, in any letter order.
pub fn table_p2(delta: &Multidegree) -> Result<BasisTable, TableError> {
    check_alphabet(delta)?;
    let (sorted, letters) = normalize(delta);
    let d = sorted.len();
    let uncovered = || TableError::Uncovered {
        p: 2,
        mdeg: delta.clone(),
    };
    if d < 4 || sorted[2..].iter().any(|&c| c != 1) {
        return Err(uncovered());
    }
    let rest = |skip: &[u8]| -> Vec<u8> { run(2, d).filter(|c| !skip.contains(c)).collect() };
    let mut words: Vec<Vec<u8>> = Vec::new();
    match (sorted[0], sorted[1]) {
        (2, 1) => {
            for i in 2..=d as u8 {
                // a_i = x_1^2 x_i x_2..(no x_i)..x_d
                let mut a = vec![1, 1, i];
                a.extend(rest(&[i]));
                words.push(a);
                // b_i = x_2..(no x_i)..x_d x_i x_1^2
                let mut b = rest(&[i]);
                b.extend([i, 1, 1]);
                words.push(b);
            }
            let c = |i: u8, j: u8| {
                let mut v = vec![i, 1, 1, j];
                v.extend(rest(&[i, j]));
                v
            };
            words.push(c(2, 3));
            if d == 4 {
                words.push(c(3, 2));
            }
        }
        (2, 2) => {
            let tail: Vec<u8> = run(3, d).collect();
            words.push([&[1, 1, 2, 2][..], &tail].concat());
            words.push([&[2, 2, 1, 1][..], &tail].concat());
        }
        (3, 1) => {
            let mut v = vec![1, 1];
            v.extend(run(2, d));
            v.push(1);
            words.push(v);
        }
        _ => return Err(uncovered()),
    }
    Ok(table(
        FieldSpec::prime(2),
        delta.clone(),
        relabel(words, &letters),
        TableSource::CharTwo,
    ))
}

/// `u_{2k} = w_{12} w_{34} .. w_{2k-1,2k}` with `w_{ij} = x_i^2 x_j^2 x_i x_j`.
fn u_word(two_k: usize) -> Vec<u8> {
    (1..=two_k / 2)
        .flat_map(|j| {
            let (i, j) = ((2 * j - 1) as u8, (2 * j) as u8);
            [i, i, j, j, i, j]
        })
        .collect()
}

/// Words of multidegree `3^r 1^m` in characteristic 3.
fn block_words_char3(r: usize, m: usize) -> Vec<Vec<u8>> {
    let base = b1d_words(3, m);
    let mut out = Vec::new();
    if r.is_multiple_of(2) {
        let u = u_word(r);
        for w in &base {
            let mut v = u.clone();
            v.extend(w.iter().map(|&c| c + r as u8));
            out.push(v);
        }
        if r >= 2 {
            // q_{2ρ,m,k}
            let (a, b) = ((r - 1) as u8, r as u8);
            for k in 1..=m {
                let mut v = u_word(r - 2);
                v.extend([a, a, b, b]);
                v.extend(run(r + 1, r + k));
                v.extend([a, b]);
                v.extend(run(r + k + 1, r + m));
                out.push(v);
            }
        }
    } else {
        let two_rho = r - 1;
        let x = r as u8;
        if m >= 1 {
            let mut prefix = u_word(two_rho);
            prefix.extend([x, x, x + 1]);
            for w in &base {
                let mut v = prefix.clone();
                v.extend(w.iter().map(|&c| if c == 1 { x } else { c + x }));
                out.push(v);
            }
        }
        // q_{2ρ+1,m,k}, k = 3..m+1
        for k in 3..=m + 1 {
            let mut v = u_word(two_rho);
            v.extend([x, x]);
            v.extend(run(r + 2, two_rho + k));
            v.extend([x, x + 1]);
            v.extend(run(two_rho + k + 1, r + m));
            out.push(v);
        }
        if two_rho >= 2 {
            // q_{2ρ+1,m}
            let (a, b) = ((r - 2) as u8, (r - 1) as u8);
            let mut v = u_word(two_rho - 2);
            v.extend([a, a, b, b, x, x, a, b, x]);
            v.extend(run(r + 1, r + m));
            out.push(v);
        }
    }
    out
}

/// Characteristic 3 table for `3^r 2^s 1^l`: the `3^r 1^{s+l}` table with
/// letters `r+1..r+s` squared.
pub fn table_p3(r: usize, s: usize, l: usize) -> Result<BasisTable, TableError> {
    if r + s + l == 0 {
        return Err(TableError::EmptyBlock);
    }
    if r + s + l > u8::MAX as usize {
        return Err(TableError::AlphabetTooLarge(r + s + l));
    }
    let words = block_words_char3(r, s + l)
        .into_iter()
        .map(|w| {
            w.into_iter()
                .flat_map(|c| {
                    let squared = (c as usize) > r && (c as usize) <= r + s;
                    std::iter::repeat_n(c, if squared { 2 } else { 1 })
                })
                .collect()
        })
        .collect();
    Ok(table(
        FieldSpec::prime(3),
        Multidegree::block(r, s, l),
        words,
        TableSource::CharThree,
    ))
}

/// `(r, s, l)` if the sorted, zero-free entries have the shape `3^r 2^s 1^l`.
fn block_shape(sorted: &[u32]) -> Option<(usize, usize, usize)> {
    if sorted.iter().any(|&c| c > 3) {
        return None;
    }
    let count = |v| sorted.iter().filter(|&&c| c == v).count();
    Some((count(3), count(2), count(1)))
}

/// The closed-form table for any characteristic and multidegree.
pub fn paper_table(p: FieldSpec, delta: &Multidegree) -> Result<BasisTable, TableError> {
    check_alphabet(delta)?;
    let (sorted, letters) = normalize(delta);
    let c = p.characteristic();
    if sorted.is_empty() {
        return Err(TableError::Uncovered {
            p: c,
            mdeg: delta.clone(),
        });
    }
    match c {
        3 => match block_shape(&sorted) {
            Some((r, s, l)) => {
                let t = table_p3(r, s, l)?;
                let words = t.words.into_iter().map(Word::into_letters).collect();
                Ok(table(p, delta.clone(), relabel(words, &letters), t.source))
            }
            None => Ok(table(p, delta.clone(), Vec::new(), TableSource::CharThree)),
        },
        2 if sorted.len() >= 4 => {
            let d = sorted.len();
            if sorted.iter().all(|&x| x == 1) {
                let words = b1d_words(2, d);
                Ok(table(p, delta.clone(), relabel(words, &letters), TableSource::CharTwo))
            } else {
                match table_p2(delta) {
                    Ok(t) => Ok(t),
                    Err(TableError::Uncovered { .. }) => {
                        Ok(table(p, delta.clone(), Vec::new(), TableSource::CharTwo))
                    }
                    Err(e) => Err(e),
                }
            }
        }
        _ => table_small(p, delta),
    }
}

/// Closed-form size of the table, without constructing words.
pub fn cardinality(p: FieldSpec, delta: &Multidegree) -> Result<u128, TableError> {
    let (sorted, _) = normalize(delta);
    let c = p.characteristic();
    let d = sorted.len();
    if d == 0 {
        return Err(TableError::Uncovered {
            p: c,
            mdeg: delta.clone(),
        });
    }
    let pow2 = |m: usize| -> u128 { 1u128.checked_shl(m as u32).unwrap_or(0) };
    if c == 3 {
        let Some((r, s, l)) = block_shape(&sorted) else {
            return Ok(0);
        };
        let m = s + l;
        return Ok(match r {
            0 => pow2(m) - m as u128,
            1 => match m {
                0 => 0,
                1 => 1,
                _ => pow2(m) - 1,
            },
            _ => pow2(m),
        });
    }
    if d <= 3 {
        return Ok(small_degree_words(&sorted).len() as u128);
    }
    if c == 2 {
        let ones = sorted[2..].iter().all(|&x| x == 1);
        return Ok(match (sorted[0], sorted[1]) {
            (1, 1) => (d * (d - 1)) as u128,
            (2, 1) if ones => {
                if d == 4 {
                    8
                } else {
                    (2 * d - 1) as u128
                }
            }
            (2, 2) if ones => 2,
            (3, 1) if ones => 1,
            _ => 0,
        });
    }
    Ok(char_zero_words(&sorted).len() as u128)
}

/// Result of comparing a closed-form table with Gaussian elimination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub p: FieldSpec,
    pub mdeg: Multidegree,
    pub dim: usize,
    pub table: Vec<Word>,
    pub minimal_basis: Vec<Word>,
    /// The table is a basis of the quotient: right size and independent there.
    pub is_basis: bool,
    /// The table is literally the lexicographically least basis.
    pub equals_minimal_basis: bool,
}

/// Eliminates `S_Δ` and compares the result with [`paper_table`].
pub fn check_table(p: FieldSpec, delta: &Multidegree) -> Result<TableCheck, TableError> {
    let table = paper_table(p, delta)?;
    let es = EchelonSystem::for_component(delta, p)?;
    Ok(check_against(&es, table.words))
}

pub(crate) fn check_against(es: &EchelonSystem, table: Vec<Word>) -> TableCheck {
    let minimal_basis = es.minimal_basis();
    let is_basis = es.is_quotient_basis(&table).unwrap_or(false);
    TableCheck {
        p: es.field(),
        mdeg: es.mdeg().clone(),
        dim: es.quotient_dim(),
        equals_minimal_basis: minimal_basis == table,
        minimal_basis,
        table,
        is_basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_digits(t: &BasisTable) -> Vec<String> {
        t.words
            .iter()
            .map(|w| w.letters().iter().map(|c| c.to_string()).collect())
            .collect()
    }

    fn sorted(list: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = list.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn small_tables() {
        let p5 = FieldSpec::prime(5);
        let t = table_small(p5, &Multidegree::from([3, 2])).unwrap();
        assert_eq!(as_digits(&t), ["11221"]);
        let t = table_small(FieldSpec::rationals(), &Multidegree::multilinear(5)).unwrap();
        assert_eq!(t.words.len(), 15);
        assert!(t.words.contains(&Word::from([2, 3, 5, 1, 4])));
        assert!(table_small(FieldSpec::rationals(), &Multidegree::from([3, 3]))
            .unwrap()
            .words
            .is_empty());
        assert!(table_small(FieldSpec::prime(3), &Multidegree::multilinear(4)).is_err());
    }

    #[test]
    fn relabeled_small_table() {
        let t = table_small(FieldSpec::prime(2), &Multidegree::from([1, 0, 2])).unwrap();
        assert_eq!(as_digits(&t), ["133", "331"]);
    }

    #[test]
    fn multilinear_recursions() {
        let b = B1d(2, 4).unwrap();
        assert_eq!(
            as_digits(&b),
            sorted(&[
                "1234", "1243", "1324", "1342", "1423", "2134", "2143", "2314", "2341", "2413",
                "3124", "4123"
            ])
        );
        let b = B1d(2, 5).unwrap();
        assert_eq!(
            as_digits(&b),
            sorted(&[
                "12345", "12354", "12435", "12453", "12534", "13245", "13254", "13425", "13452",
                "13524", "14235", "15234", "21345", "23145", "23415", "23451", "23514", "31245",
                "41235", "51234"
            ])
        );
        let b = B1d(3, 4).unwrap();
        assert_eq!(
            as_digits(&b),
            sorted(&[
                "1234", "1243", "1324", "1342", "1423", "2134", "2143", "2314", "2341", "2413",
                "3124", "3412"
            ])
        );
        let b = B1d(3, 5).unwrap();
        assert_eq!(
            as_digits(&b),
            sorted(&[
                "12345", "12354", "12435", "12453", "12534", "13245", "13254", "13425", "13452",
                "13524", "14235", "14523", "21345", "21354", "21435", "21453", "21534", "23145",
                "23154", "23415", "23451", "23514", "24135", "24513", "31245", "34125", "34512"
            ])
        );
        assert_eq!(B1d(2, 6).unwrap().words.len(), 30);
        assert!(B1d(5, 3).is_err());
        assert!(B1d(2, 0).is_err());
    }

    #[test]
    fn recursion_sizes_match_cardinality() {
        for d in 1..=12 {
            for p in [2u32, 3] {
                let f = FieldSpec::prime(p);
                let n = B1d(p, d).unwrap().words.len() as u128;
                assert_eq!(n, cardinality(f, &Multidegree::multilinear(d)).unwrap(), "p={p} d={d}");
            }
        }
        assert_eq!(cardinality(FieldSpec::prime(3), &Multidegree::multilinear(7)).unwrap(), 121);
        assert_eq!(cardinality(FieldSpec::prime(2), &Multidegree::multilinear(7)).unwrap(), 42);
        assert_eq!(cardinality(FieldSpec::prime(3), &Multidegree::block(3, 2, 0)).unwrap(), 4);
    }

    #[test]
    fn char2_tables() {
        let t = table_p2(&Multidegree::from([2, 1, 1, 1])).unwrap();
        assert_eq!(t.words.len(), 8);
        let t = table_p2(&Multidegree::from([2, 1, 1, 1, 1])).unwrap();
        assert_eq!(t.words.len(), 9);
        let t = table_p2(&Multidegree::from([2, 2, 1, 1, 1])).unwrap();
        assert_eq!(as_digits(&t), ["1122345", "2211345"]);
        let t = table_p2(&Multidegree::from([3, 1, 1, 1])).unwrap();
        assert_eq!(as_digits(&t), ["112341"]);
        assert!(table_p2(&Multidegree::from([2, 1, 1])).is_err());
    }

    #[test]
    fn char3_tables() {
        let t = table_p3(2, 0, 0).unwrap();
        assert_eq!(as_digits(&t), ["112212"]);
        let t = table_p3(1, 0, 1).unwrap();
        assert_eq!(as_digits(&t), ["1121"]);
        let t = table_p3(3, 0, 0).unwrap();
        assert_eq!(as_digits(&t), ["112233123"]);
        let t = table_p3(2, 1, 1).unwrap();
        assert_eq!(t.words.len(), 4);
        for r in 0..4 {
            for s in 0..3 {
                for l in 0..3 {
                    if r + s + l == 0 {
                        continue;
                    }
                    let t = table_p3(r, s, l).unwrap();
                    let want = Multidegree::block(r, s, l);
                    assert!(t.words.iter().all(|w| w.mdeg() == want));
                    assert_eq!(
                        t.words.len() as u128,
                        cardinality(FieldSpec::prime(3), &want).unwrap(),
                        "r={r} s={s} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn dispatch() {
        let t = paper_table(FieldSpec::prime(3), &Multidegree::from([1, 2])).unwrap();
        assert_eq!(as_digits(&t), ["122", "221"]);
        let t = paper_table(FieldSpec::prime(2), &Multidegree::from([1, 1, 2, 1])).unwrap();
        assert_eq!(t.words.len(), 8);
        assert!(t.words.iter().all(|w| w.mdeg() == Multidegree::from([1, 1, 2, 1])));
        let t = paper_table(FieldSpec::prime(2), &Multidegree::from([2, 2, 2, 1])).unwrap();
        assert!(t.words.is_empty());
        let t = paper_table(FieldSpec::prime(3), &Multidegree::from([4])).unwrap();
        assert!(t.words.is_empty());
    }
}
