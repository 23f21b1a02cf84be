//! Place counts across a family of models indexed by F_2 parameters.

use serde::{Deserialize, Serialize};

use super::model::ArtinSchreierModel;
use super::places::avector;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub params: Vec<u8>,
    pub equation: String,
    /// `None` when the parameters give an invalid model.
    pub a: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Every assignment of `n` bits, in lexicographic order.
pub fn full_space(n: usize) -> Vec<Vec<u8>> {
    (0..1u32 << n)
        .map(|m| (0..n).map(|i| ((m >> (n - 1 - i)) & 1) as u8).collect())
        .collect()
}

/// Substitute each assignment for the parameter letters of `template`
/// (an equation in `x`, `y`) and count places to depth `dmax`.
pub fn survey_family(
    template: &str,
    letters: &[char],
    space: &[Vec<u8>],
    genus: usize,
    k: u32,
    dmax: u32,
) -> Result<Vec<FamilyRow>> {
    if let Some(c) = letters.iter().find(|c| matches!(c, 'x' | 'y')) {
        return Err(Error::Parse(format!("parameter letter {c:?} clashes with a variable")));
    }
    let mut rows = Vec::with_capacity(space.len());
    for params in space {
        if params.len() != letters.len() {
            return Err(Error::Precondition(format!(
                "assignment {params:?} does not match the parameters {letters:?}"
            )));
        }
        let eq: String = template
            .chars()
            .map(|c| match letters.iter().position(|&l| l == c) {
                Some(i) => format!("({})", params[i]),
                None => c.to_string(),
            })
            .collect();
        let row = match ArtinSchreierModel::from_equation(&eq, genus, k)
            .and_then(|m| avector(&m, dmax).map(|a| (m, a)))
        {
            Ok((m, a)) => FamilyRow {
                params: params.clone(),
                equation: m.equation(),
                a: Some(a.a),
                error: None,
            },
            Err(e) => FamilyRow {
                params: params.clone(),
                equation: eq,
                a: None,
                error: Some(e.to_string()),
            },
        };
        rows.push(row);
    }
    Ok(rows)
}
