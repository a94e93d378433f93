//! Minimal homogeneous generating systems for the invariants of several 3x3
//! matrices, assembled from the basis tables, and a numeric evaluator for
//! trace words.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::{CoeffError, FieldSpec, Scalar};
use crate::tables::{paper_table, TableError};
use crate::words::{Multidegree, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("multidegree {0} is not sorted in non-increasing order")]
    Unsorted(Multidegree),
    #[error("at least one matrix is required")]
    NoGenerators,
    #[error("generator uses letter {letter} but only {given} matrices were given")]
    DimensionMismatch { letter: u8, given: usize },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceGenerator {
    /// Coefficient `σ_k` of the characteristic polynomial of `X_letter`.
    Sigma { k: u8, letter: u8 },
    /// `tr` of the word with `x_i -> X_i`.
    Trace { word: Word },
}

impl TraceGenerator {
    pub fn degree(&self) -> usize {
        match self {
            TraceGenerator::Sigma { k, .. } => *k as usize,
            TraceGenerator::Trace { word } => word.len(),
        }
    }

    pub fn mdeg(&self) -> Multidegree {
        match self {
            TraceGenerator::Sigma { k, letter } => {
                Multidegree::default().with_entry(*letter, *k as u32)
            }
            TraceGenerator::Trace { word } => word.mdeg(),
        }
    }

    fn relabel(&self, image: &[u8]) -> TraceGenerator {
        let map = |l: u8| image[l as usize - 1];
        match self {
            TraceGenerator::Sigma { k, letter } => TraceGenerator::Sigma {
                k: *k,
                letter: map(*letter),
            },
            TraceGenerator::Trace { word } => TraceGenerator::Trace {
                word: word.relabel(map),
            },
        }
    }
}

fn word(letters: &[u8]) -> Word {
    Word::from(letters)
}

/// `G_Δ` for a non-increasing profile. Zero entries are ignored, so the rules
/// are applied on the support of `delta`.
#[allow(non_snake_case)]
pub fn G_delta(p: u32, delta: &Multidegree) -> Result<Vec<TraceGenerator>, InvariantError> {
    let field = FieldSpec::new(p)?;
    if !delta.is_sorted_desc() {
        return Err(InvariantError::Unsorted(delta.clone()));
    }
    let support: Vec<u32> = delta.trimmed().to_vec();
    let d = support.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        let k = support[0];
        return Ok(if k <= 3 {
            vec![TraceGenerator::Sigma { k: k as u8, letter: 1 }]
        } else {
            Vec::new()
        });
    }
    let last = support[d - 1];
    let x_d = d as u8;
    let tails = |e: u32| -> Result<Vec<TraceGenerator>, InvariantError> {
        let front = Multidegree::new(support[..d - 1].to_vec());
        let table = paper_table(field, &front)?;
        Ok(table
            .words
            .into_iter()
            .map(|u| {
                let mut l = u.into_letters();
                l.extend(std::iter::repeat_n(x_d, e as usize));
                TraceGenerator::Trace { word: word(&l) }
            })
            .collect())
    };
    if p == 3 {
        if last == 1 || last == 2 {
            return tails(last);
        }
        let all_three = support.iter().all(|&c| c == 3);
        if all_three && (d.is_multiple_of(2) || (d % 6 == 1 && d > 1)) {
            let table = paper_table(field, &Multidegree::new(support))?;
            return Ok(table
                .words
                .into_iter()
                .map(|w| TraceGenerator::Trace { word: w })
                .collect());
        }
        return Ok(Vec::new());
    }
    if last == 1 {
        return tails(1);
    }
    Ok(match support.as_slice() {
        [2, 2, 2] => vec![TraceGenerator::Trace { word: word(&[1, 1, 2, 2, 3, 3]) }],
        [2, 2] => vec![TraceGenerator::Trace { word: word(&[1, 1, 2, 2]) }],
        [3, 3] => vec![TraceGenerator::Trace { word: word(&[1, 1, 2, 2, 1, 2]) }],
        _ => Vec::new(),
    })
}

/// Generators of one characteristic and alphabet, grouped by multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratingSystem {
    pub p: u32,
    pub d: usize,
    pub groups: Vec<(Multidegree, Vec<TraceGenerator>)>,
}

impl GeneratingSystem {
    pub fn total(&self) -> usize {
        self.groups.iter().map(|(_, g)| g.len()).sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = &TraceGenerator> {
        self.groups.iter().flat_map(|(_, g)| g.iter())
    }

    /// Number of generators of each total degree.
    pub fn by_degree(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (m, g) in &self.groups {
            if !g.is_empty() {
                *out.entry(m.norm()).or_insert(0) += g.len();
            }
        }
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.by_degree().keys().next_back().copied()
    }

    pub fn group(&self, m: &Multidegree) -> Option<&[TraceGenerator]> {
        self.groups.iter().find(|(g, _)| g == m).map(|(_, v)| v.as_slice())
    }
}

/// All vectors over `0..=3` of length `d`, in lexicographic order, skipping zero.
fn all_multidegrees(d: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=3u32).map(move |c| {
                    let mut v = v.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&c| c > 0));
    out
}

/// The generating system for `d` matrices: `G_Δ` for every multidegree with
/// entries at most 3, obtained from the sorted profile by renaming letters.
pub fn full_system(p: u32, d: usize) -> Result<GeneratingSystem, InvariantError> {
    FieldSpec::new(p)?;
    if d == 0 {
        return Err(InvariantError::NoGenerators);
    }
    let mut cache: BTreeMap<Vec<u32>, Vec<TraceGenerator>> = BTreeMap::new();
    let mut groups = Vec::new();
    for counts in all_multidegrees(d) {
        let m = Multidegree::new(counts);
        let (sorted, perm) = m.sorted_desc();
        let key = sorted.counts().to_vec();
        if !cache.contains_key(&key) {
            cache.insert(key.clone(), G_delta(p, &sorted)?);
        }
        let base = &cache[&key];
        if base.is_empty() {
            continue;
        }
        // Letter j of the sorted profile is letter perm[j] + 1 of `m`.
        let image: Vec<u8> = perm.iter().map(|&i| i as u8 + 1).collect();
        let gens = base.iter().map(|g| g.relabel(&image)).collect();
        groups.push((m, gens));
    }
    Ok(GeneratingSystem { p, d, groups })
}

/// The known upper bound on generator degrees for `d >= 2`, where one exists.
pub fn degree_bound(p: u32, d: usize) -> Option<usize> {
    if d < 2 {
        return None;
    }
    match p {
        2 => Some(if d >= 4 { d + 2 } else { 6 }),
        3 => matches!(d % 6, 3 | 5).then_some(3 * d - 1),
        _ => Some(6),
    }
}

/// A 3x3 matrix over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3 {
    field: FieldSpec,
    entries: [[Scalar; 3]; 3],
}

impl Mat3 {
    pub fn from_ints(field: FieldSpec, rows: [[i64; 3]; 3]) -> Self {
        Mat3 {
            field,
            entries: rows.map(|r| r.map(|v| field.from_i64(v))),
        }
    }

    pub fn identity(field: FieldSpec) -> Self {
        Mat3::from_ints(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    /// Entries drawn uniformly from `0..q` for `GF(q)` or from `-9..=9` over `Q`.
    pub fn random(field: FieldSpec, rng: &mut impl Rng) -> Self {
        let q = field.characteristic() as i64;
        let mut draw = || if q == 0 { rng.gen_range(-9..=9) } else { rng.gen_range(0..q) };
        let rows = [[draw(), draw(), draw()], [draw(), draw(), draw()], [draw(), draw(), draw()]];
        Mat3::from_ints(field, rows)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &Mat3) -> Result<Mat3, CoeffError> {
        let mut out = Mat3::from_ints(self.field, [[0; 3]; 3]);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = self.field.zero();
                for k in 0..3 {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j])?)?;
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Scalar, CoeffError> {
        self.entries[0][0].add(&self.entries[1][1])?.add(&self.entries[2][2])
    }

    fn minor(&self, i: usize, j: usize) -> Result<Scalar, CoeffError> {
        let e = &self.entries;
        e[i][i].mul(&e[j][j])?.sub(&e[i][j].mul(&e[j][i])?)
    }

    /// Coefficient `σ_k` of `det(t + X) = t^3 + σ_1 t^2 + σ_2 t + σ_3`.
    pub fn sigma(&self, k: u8) -> Result<Scalar, CoeffError> {
        let e = &self.entries;
        match k {
            1 => self.trace(),
            2 => self.minor(0, 1)?.add(&self.minor(0, 2)?)?.add(&self.minor(1, 2)?),
            _ => {
                let a = e[0][0].mul(&e[1][1].mul(&e[2][2])?.sub(&e[1][2].mul(&e[2][1])?)?)?;
                let b = e[0][1].mul(&e[1][0].mul(&e[2][2])?.sub(&e[1][2].mul(&e[2][0])?)?)?;
                let c = e[0][2].mul(&e[1][0].mul(&e[2][1])?.sub(&e[1][1].mul(&e[2][0])?)?)?;
                a.sub(&b)?.add(&c)
            }
        }
    }
}

/// Substitutes `X_i = matrices[i - 1]` into a generator.
pub fn eval_trace(gen: &TraceGenerator, matrices: &[Mat3]) -> Result<Scalar, InvariantError> {
    let get = |l: u8| {
        matrices
            .get(l as usize - 1)
            .ok_or(InvariantError::DimensionMismatch {
                letter: l,
                given: matrices.len(),
            })
    };
    match gen {
        TraceGenerator::Sigma { k, letter } => Ok(get(*letter)?.sigma(*k)?),
        TraceGenerator::Trace { word } => {
            let mut acc: Option<Mat3> = None;
            for &l in word.letters() {
                let m = get(l)?;
                acc = Some(match acc {
                    None => m.clone(),
                    Some(a) => a.mul(m)?,
                });
            }
            match acc {
                Some(a) => Ok(a.trace()?),
                None => Err(InvariantError::NoGenerators),
            }
        }
    }
}

/// Whether the generator takes a nonzero value on one of `draws` random
/// tuples. A `false` answer is suspicious rather than a proof of vanishing.
pub fn nonvanishing(
    gen: &TraceGenerator,
    field: FieldSpec,
    d: usize,
    draws: usize,
    seed: u64,
) -> Result<bool, InvariantError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..draws {
        let ms: Vec<Mat3> = (0..d).map(|_| Mat3::random(field, &mut rng)).collect();
        if !eval_trace(gen, &ms)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(l: &[u8]) -> TraceGenerator {
        TraceGenerator::Trace { word: word(l) }
    }

    #[test]
    fn generator_cases() {
        assert_eq!(G_delta(0, &Multidegree::from([2, 2])).unwrap(), vec![tr(&[1, 1, 2, 2])]);
        assert_eq!(G_delta(0, &Multidegree::from([3, 3])).unwrap(), vec![tr(&[1, 1, 2, 2, 1, 2])]);
        assert!(G_delta(3, &Multidegree::from([3, 3, 3])).unwrap().is_empty());
        assert_eq!(G_delta(3, &Multidegree::from([3, 3])).unwrap().len(), 1);
        assert!(G_delta(0, &Multidegree::from([1, 2])).is_err());
        assert_eq!(G_delta(3, &Multidegree::from([3, 3, 3, 3])).unwrap().len(), 1);
        assert!(G_delta(3, &Multidegree::from([3, 3, 3, 3, 3])).unwrap().is_empty());
    }

    #[test]
    fn two_matrices_char_zero() {
        let g = full_system(0, 2).unwrap();
        assert_eq!(g.total(), 11);
        assert_eq!(g.max_degree(), Some(6));
        let sigmas = g
            .generators()
            .filter(|x| matches!(x, TraceGenerator::Sigma { .. }))
            .count();
        assert_eq!(sigmas, 6);
        assert_eq!(g.group(&Multidegree::from([1, 2])).unwrap(), &[tr(&[2, 2, 1])]);
        assert_eq!(full_system(0, 1).unwrap().total(), 3);
    }

    #[test]
    fn degree_bounds() {
        for (p, ds) in [(0u32, 2..=5), (2, 2..=6), (5, 2..=4)] {
            for d in ds {
                let g = full_system(p, d).unwrap();
                assert_eq!(g.max_degree(), degree_bound(p, d), "p={p} d={d}");
            }
        }
        for d in [3, 5] {
            assert_eq!(full_system(3, d).unwrap().max_degree(), Some(3 * d - 1));
        }
    }

    #[test]
    fn groups_follow_letter_permutations() {
        let g = full_system(2, 3).unwrap();
        for (m, gens) in &g.groups {
            let (sorted, _) = m.sorted_desc();
            assert_eq!(gens.len(), g.group(&sorted).unwrap().len());
            for x in gens {
                assert_eq!(&x.mdeg(), m);
            }
        }
    }

    #[test]
    fn evaluation() {
        let q = FieldSpec::rationals();
        let id = Mat3::identity(q);
        let x1 = tr(&[1]);
        assert_eq!(eval_trace(&x1, &[id]).unwrap(), q.from_i64(3));
        let diag = Mat3::from_ints(q, [[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        let det = TraceGenerator::Sigma { k: 3, letter: 1 };
        assert_eq!(eval_trace(&det, std::slice::from_ref(&diag)).unwrap(), q.from_i64(6));
        let s2 = TraceGenerator::Sigma { k: 2, letter: 1 };
        assert_eq!(eval_trace(&s2, &[diag]).unwrap(), q.from_i64(11));
        assert!(eval_trace(&tr(&[1, 2]), &[Mat3::identity(q)]).is_err());
    }

    #[test]
    fn random_nonvanishing() {
        let f5 = FieldSpec::prime(5);
        assert!(nonvanishing(&tr(&[1, 1, 2, 2, 1, 2]), f5, 2, 100, 7).unwrap());
    }
}
