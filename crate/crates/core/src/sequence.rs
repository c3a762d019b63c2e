//! Weighted stable classes, bounded partitions, fit and critical sequences.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::template::Template;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("k and q must be positive")]
    ZeroParameter,
    #[error("element {value} exceeds k = {k}")]
    ElementTooLarge { value: usize, k: usize },
    #[error("sum {sum} is outside [{q}k, {q}k + k) for k = {k}")]
    SumOutOfRange { sum: usize, q: usize, k: usize },
    #[error("vertex {vertex} has weight {weight}, not below k = {k}")]
    WeightTooLarge { vertex: usize, weight: usize, k: usize },
    #[error("class is empty")]
    EmptyClass,
    #[error("members and weights differ in length")]
    LengthMismatch,
}

/// A stable class with frozen weights `w(v) = |F(v)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedClass {
    members: Vec<usize>,
    weights: Vec<usize>,
}

impl WeightedClass {
    pub fn new(members: Vec<usize>, weights: Vec<usize>) -> Result<Self, SequenceError> {
        if members.len() != weights.len() {
            return Err(SequenceError::LengthMismatch);
        }
        Ok(WeightedClass { members, weights })
    }

    /// Weights read from `t`; ids at or past `t.n()` are placeholders of
    /// weight zero.
    pub fn from_template(t: &Template, members: &[usize]) -> Self {
        let weights = members
            .iter()
            .map(|&v| if v < t.n() { t.forbidden(v).len() } else { 0 })
            .collect();
        WeightedClass { members: members.to_vec(), weights }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn weight_of(&self, v: usize) -> usize {
        let i = self.members.iter().position(|&u| u == v).expect("vertex in class");
        self.weights[i]
    }

    pub fn total(&self) -> usize {
        self.weights.iter().sum()
    }

    fn check_good(&self, k: usize) -> Result<(), SequenceError> {
        if k == 0 {
            return Err(SequenceError::ZeroParameter);
        }
        if self.is_empty() {
            return Err(SequenceError::EmptyClass);
        }
        for (&vertex, &weight) in self.members.iter().zip(&self.weights) {
            if weight >= k {
                return Err(SequenceError::WeightTooLarge { vertex, weight, k });
            }
        }
        Ok(())
    }
}

/// Ordered terms partitioning a class, each of weight below `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitSequence {
    pub terms: Vec<Vec<usize>>,
    pub term_weights: Vec<usize>,
}

impl FitSequence {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `w_1, …, w_n`.
    pub fn cumulative(&self) -> Vec<usize> {
        self.term_weights
            .iter()
            .scan(0, |acc, &w| {
                *acc += w;
                Some(*acc)
            })
            .collect()
    }

    pub fn total(&self) -> usize {
        self.term_weights.iter().sum()
    }

    /// Nonempty terms of weight `< k` that partition `class`.
    pub fn is_fit_for(&self, class: &WeightedClass, k: usize) -> bool {
        if self.terms.len() != self.term_weights.len() {
            return false;
        }
        let mut seen: Vec<usize> = Vec::new();
        for (term, &w) in self.terms.iter().zip(&self.term_weights) {
            if term.is_empty() || w >= k {
                return false;
            }
            if term.iter().map(|&v| class.weight_of(v)).sum::<usize>() != w {
                return false;
            }
            seen.extend(term);
        }
        seen.sort_unstable();
        let mut members = class.members.clone();
        members.sort_unstable();
        seen == members
    }

    pub fn is_increasing(&self) -> bool {
        self.term_weights.windows(2).all(|p| p[0] <= p[1])
    }

    /// No two consecutive non-jumps.
    pub fn is_critical(&self, k: usize) -> bool {
        let tags = jump_tags(&self.cumulative(), k);
        !tags.windows(2).any(|p| !p[0] && !p[1])
    }

    /// Swaps two terms.
    pub fn swap(&mut self, a: usize, b: usize) {
        self.terms.swap(a, b);
        self.term_weights.swap(a, b);
    }

    fn stable_sort(&mut self) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&j| self.term_weights[j]);
        self.terms = order.iter().map(|&j| self.terms[j].clone()).collect();
        self.term_weights = order.iter().map(|&j| self.term_weights[j]).collect();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermKind {
    Jump,
    NonJump,
}

/// Jump tags, landmarks `q_1 < … < q_ℓ` and positions `n_r = q_r + r`
/// (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpProfile {
    pub tags: Vec<TermKind>,
    pub landmarks: Vec<usize>,
    pub positions: Vec<usize>,
}

impl JumpProfile {
    pub fn jump_count(&self) -> usize {
        self.tags.iter().filter(|&&t| t == TermKind::Jump).count()
    }
}

fn jump_tags(cumulative: &[usize], k: usize) -> Vec<bool> {
    let mut prev = 0;
    cumulative
        .iter()
        .map(|&w| {
            let jump = w / k > prev / k;
            prev = w;
            jump
        })
        .collect()
}

/// Bounded partition: `q` parts, each summing below `2k`, of a multiset
/// with elements in `[0, k]` and `qk ≤ Σ < (q+1)k`. Returns the values.
pub fn partition_bounded(
    values: &[usize],
    k: usize,
    q: usize,
) -> Result<Vec<Vec<usize>>, SequenceError> {
    Ok(partition_bounded_indices(values, k, q)?
        .into_iter()
        .map(|part| part.into_iter().map(|i| values[i]).collect())
        .collect())
}

/// As [`partition_bounded`], returning indices into `values`.
///
/// Recursion: with the values sorted in decreasing order, `R` is the shortest
/// prefix with `Σ_R ≥ (q-1)k` (so `Σ_R < qk`), the last part is the rest, and
/// `R` is split into `q - 1` parts.
pub fn partition_bounded_indices(
    values: &[usize],
    k: usize,
    q: usize,
) -> Result<Vec<Vec<usize>>, SequenceError> {
    if k == 0 || q == 0 {
        return Err(SequenceError::ZeroParameter);
    }
    if let Some(&value) = values.iter().find(|&&a| a > k) {
        return Err(SequenceError::ElementTooLarge { value, k });
    }
    let sum: usize = values.iter().sum();
    if sum < q * k || sum >= (q + 1) * k {
        return Err(SequenceError::SumOutOfRange { sum, q, k });
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].cmp(&values[a]).then(a.cmp(&b)));

    let mut parts = Vec::with_capacity(q);
    let mut rest: &[usize] = &order;
    for level in (2..=q).rev() {
        let need = (level - 1) * k;
        let mut acc = 0;
        let mut cut = 0;
        while acc < need {
            acc += values[rest[cut]];
            cut += 1;
        }
        debug_assert!(acc < level * k);
        let mut last = rest[cut..].to_vec();
        last.sort_unstable();
        parts.push(last);
        rest = &rest[..cut];
    }
    let mut first = rest.to_vec();
    first.sort_unstable();
    parts.push(first);
    parts.reverse();
    for part in &parts {
        assert!(part.iter().map(|&i| values[i]).sum::<usize>() < 2 * k, "part sum below 2k");
    }
    Ok(parts)
}

/// Singleton terms in ascending vertex order.
pub fn fit_singletons(class: &WeightedClass, k: usize) -> Result<FitSequence, SequenceError> {
    class.check_good(k)?;
    let mut idx: Vec<usize> = (0..class.len()).collect();
    idx.sort_by_key(|&i| class.members[i]);
    Ok(FitSequence {
        terms: idx.iter().map(|&i| vec![class.members[i]]).collect(),
        term_weights: idx.iter().map(|&i| class.weights[i]).collect(),
    })
}

/// Increasing critical sequence: sort singletons by weight, then repeatedly
/// merge the leftmost pair of consecutive non-jumps and re-sort.
pub fn critical_sequence(class: &WeightedClass, k: usize) -> Result<FitSequence, SequenceError> {
    let mut seq = fit_singletons(class, k)?;
    seq.stable_sort();
    loop {
        let tags = jump_tags(&seq.cumulative(), k);
        let Some(j) = (0..tags.len().saturating_sub(1)).find(|&j| !tags[j] && !tags[j + 1]) else {
            break;
        };
        let mut merged = seq.terms[j].clone();
        merged.extend(seq.terms.remove(j + 1));
        merged.sort_unstable();
        seq.terms[j] = merged;
        let w = seq.term_weights.remove(j + 1);
        seq.term_weights[j] += w;
        assert!(seq.term_weights[j] < k, "merged non-jumps stay below k");
        seq.stable_sort();
    }
    Ok(seq)
}

/// Tags, landmarks and landmark positions of a fit sequence. Panics if the
/// structural facts about jumps fail, which cannot happen for a fit sequence.
pub fn jump_profile(seq: &FitSequence, k: usize) -> JumpProfile {
    let cumulative = seq.cumulative();
    let tags = jump_tags(&cumulative, k);
    let mut landmarks: Vec<usize> = Vec::new();
    for (j, &jump) in tags.iter().enumerate() {
        let floor = cumulative[j] / k;
        if !jump && landmarks.last() != Some(&floor) {
            landmarks.push(floor);
        }
    }
    let total = seq.total();
    if !tags.is_empty() {
        assert!(!tags[0], "first term is a non-jump");
        assert_eq!(tags.iter().filter(|&&t| t).count(), total / k, "jump count");
        assert!(landmarks.iter().all(|&q| q <= total / k), "landmark range");
    }
    let positions = landmarks.iter().enumerate().map(|(r, &q)| q + r + 1).collect();
    JumpProfile {
        tags: tags
            .into_iter()
            .map(|t| if t { TermKind::Jump } else { TermKind::NonJump })
            .collect(),
        landmarks,
        positions,
    }
}
