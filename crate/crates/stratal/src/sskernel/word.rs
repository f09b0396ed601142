//! Degeneracy words and simplex references.
//!
//! Every simplex of a simplicial set factors uniquely as `s_{j_1} s_{j_2} … s_{j_k} x`
//! with `x` nondegenerate and `j_1 > j_2 > … > j_k` (the Eilenberg–Zilber lemma).  A
//! [`DegeneracyWord`] stores the indices `[j_1, …, j_k]` in that order; [`SimplexRef`]
//! pairs a word with the identifier of the nondegenerate cell it acts on.
//!
//! The only algebra needed to keep words normalized is the simplicial identity
//! `s_i s_j = s_{j+1} s_i` for `i ≤ j`, used when pushing a new degeneracy into a word,
//! and the identities `d_i s_j = s_{j-1} d_i` (`i < j`), `d_i s_j = id` (`i ∈ {j, j+1}`),
//! `d_i s_j = s_j d_{i-1}` (`i > j + 1`), used when pushing a face through a word.

use serde::{Deserialize, Serialize};

use super::{CellId, KernelError};

/// A degeneracy word in Eilenberg–Zilber normal form: strictly decreasing indices,
/// applied right-to-left (`ops = [j_1, …, j_k]` denotes `s_{j_1} ∘ … ∘ s_{j_k}`).
/// The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegeneracyWord {
    ops: Vec<usize>,
}

impl DegeneracyWord {
    /// The identity word.
    pub fn identity() -> Self {
        DegeneracyWord { ops: Vec::new() }
    }

    /// Builds a word from explicit indices, validating normal form: strictly decreasing,
    /// and each index admissible for the dimension it acts in when the innermost operator
    /// acts on a simplex of dimension `base_dim`.
    pub fn new(ops: Vec<usize>, base_dim: usize) -> Result<Self, KernelError> {
        let k = ops.len();
        for (t, &j) in ops.iter().enumerate() {
            // The operator at position t (0 = outermost) acts on dimension base_dim + (k - 1 - t).
            let acting_dim = base_dim + (k - 1 - t);
            if j > acting_dim {
                return Err(KernelError::InvalidWord(ops));
            }
            if t + 1 < k && ops[t + 1] >= j {
                return Err(KernelError::InvalidWord(ops));
            }
        }
        Ok(DegeneracyWord { ops })
    }

    pub fn is_identity(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Indices of the word, outermost first.
    pub fn ops(&self) -> &[usize] {
        &self.ops
    }

    /// True when the word contains `i`, i.e. the simplex is a degeneracy in direction `i`.
    pub fn contains(&self, i: usize) -> bool {
        self.ops.contains(&i)
    }

    /// Normal form of `s_i ∘ self`, via `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
    pub fn pushed(&self, i: usize) -> Self {
        let mut ops = Vec::with_capacity(self.ops.len() + 1);
        let mut rest = self.ops.as_slice();
        // s_i commutes past every s_j with i ≤ j as s_{j+1} s_i; i itself is unchanged.
        while let Some(&j) = rest.first() {
            if i > j {
                break;
            }
            ops.push(j + 1);
            rest = &rest[1..];
        }
        ops.push(i);
        ops.extend_from_slice(rest);
        DegeneracyWord { ops }
    }
}

/// A simplex of a finite simplicial set: a degeneracy word applied to a nondegenerate
/// cell.  Two refs denote the same simplex exactly when they are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimplexRef {
    pub word: DegeneracyWord,
    pub target: CellId,
}

impl SimplexRef {
    /// Reference to a nondegenerate cell itself.
    pub fn cell(id: impl Into<CellId>) -> Self {
        SimplexRef { word: DegeneracyWord::identity(), target: id.into() }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_identity()
    }

    /// Normal form of `s_i ∘ self`.
    pub fn degenerate(&self, i: usize) -> Self {
        SimplexRef { word: self.word.pushed(i), target: self.target.clone() }
    }

    /// A compact human-readable label, used to derive stable cell ids in compound
    /// constructions.
    pub fn label(&self) -> String {
        if self.word.is_identity() {
            self.target.to_string()
        } else {
            let ops: Vec<String> = self.word.ops().iter().map(|j| format!("s{j}")).collect();
            format!("{}:{}", ops.join(""), self.target)
        }
    }
}
