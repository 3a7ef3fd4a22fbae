//! Minority-rule induction of a 3-tournament from a 2-tournament, and the
//! classification of 4-vertex sub-tournaments that it turns into directed
//! tetrahedra.

use crate::error::{arg, Result};
use crate::exec::Exec;
use crate::orientation::{permutation_parity, KSubset, Sign};
use crate::tournament::Tournament;

use super::beats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum FourSetType {
    /// One vertex beats the other three, which form a cyclic triangle.
    TypeI,
    /// One vertex loses to the other three, which form a cyclic triangle.
    TypeII,
    Other,
}

fn is_cyclic(t2: &Tournament, a: u32, b: u32, c: u32) -> bool {
    let ab = beats(t2, a, b);
    ab == beats(t2, b, c) && ab == beats(t2, c, a)
}

pub fn classify_4set(t2: &Tournament, four: &KSubset) -> Result<FourSetType> {
    if t2.d() != 2 {
        return arg("classification needs a 2-tournament");
    }
    if four.len() != 4 {
        return arg(format!("expected 4 vertices, got {}", four.len()));
    }
    let v = four.vertices();
    if v[3] as usize >= t2.n() {
        return arg("vertex out of range");
    }
    for i in 0..4 {
        let t = v[i];
        let rest: Vec<u32> = (0..4).filter(|&j| j != i).map(|j| v[j]).collect();
        if !is_cyclic(t2, rest[0], rest[1], rest[2]) {
            continue;
        }
        if rest.iter().all(|&x| beats(t2, t, x)) {
            return Ok(FourSetType::TypeI);
        }
        if rest.iter().all(|&x| beats(t2, x, t)) {
            return Ok(FourSetType::TypeII);
        }
    }
    Ok(FourSetType::Other)
}

/// Orientation of the triple `{a < b < c}` under the minority rule.
///
/// A cyclic triple keeps its cycle. A transitive triple with source `s`,
/// middle `m` and sink `k` gets the cycle `s -> k -> m -> s`, the one running
/// along its single reversed edge.
pub fn minority_sign(t2: &Tournament, tri: [u32; 3]) -> Sign {
    let [a, b, c] = tri;
    if is_cyclic(t2, a, b, c) {
        return Sign::from_bit(beats(t2, a, b));
    }
    let wins = |x: u32| tri.iter().filter(|&&y| y != x && beats(t2, x, y)).count();
    let mut by_wins = tri;
    by_wins.sort_by_key(|&x| std::cmp::Reverse(wins(x)));
    let [s, m, k] = by_wins;
    permutation_parity(&[s, k, m])
}

pub fn minority_induce_3(t2: &Tournament) -> Result<Tournament> {
    minority_induce_3_with(t2, Exec::Parallel)
}

pub fn minority_induce_3_with(t2: &Tournament, exec: Exec) -> Result<Tournament> {
    if t2.d() != 2 {
        return arg(format!("minority induction needs a 2-tournament, got order {}", t2.d()));
    }
    Tournament::from_fn(3, t2.n(), exec, |s| minority_sign(t2, [s[0], s[1], s[2]]).bit())
}
