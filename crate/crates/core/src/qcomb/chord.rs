use serde::{Deserialize, Serialize};

use super::QPolynomial;
use crate::{Error, Result};

/// Largest `n` accepted by [`enumerate_chord_diagrams`]; `(2·8 − 1)!! = 2 027 025`.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 8;

/// A perfect matching of the points `1..=2n` together with its crossing number.
///
/// Pairs are stored as `(a, b)` with `a < b`, sorted by `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordDiagram {
    pub pairs: Vec<(u8, u8)>,
    pub crossings: usize,
}

impl ChordDiagram {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    /// Counts pairs of chords `(a, b)`, `(c, d)` with `a < c < b < d` directly.
    pub fn count_crossings(pairs: &[(u8, u8)]) -> usize {
        let mut total = 0;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[i + 1..] {
                let (lo, hi) = if a < c { ((a, b), (c, d)) } else { ((c, d), (a, b)) };
                if lo.0 < hi.0 && hi.0 < lo.1 && lo.1 < hi.1 {
                    total += 1;
                }
            }
        }
        total
    }
}

/// All `(2n − 1)!!` chord diagrams on `2n` points in lexicographic order of their pair lists.
pub fn enumerate_chord_diagrams(n: usize) -> Result<Vec<ChordDiagram>> {
    enumerate_chord_diagrams_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_chord_diagrams_with_limit(n: usize, limit: usize) -> Result<Vec<ChordDiagram>> {
    if n > limit {
        return Err(Error::SizeLimit {
            what: "chord diagram size",
            value: n,
            limit,
        });
    }
    // Points are u8; 2n must fit.
    if 2 * n > u8::MAX as usize {
        return Err(Error::SizeLimit {
            what: "chord diagram size",
            value: n,
            limit: u8::MAX as usize / 2,
        });
    }
    let mut out = Vec::new();
    let mut used = vec![false; 2 * n + 1];
    let mut pairs = Vec::with_capacity(n);
    extend_matching(n, &mut used, &mut pairs, 0, &mut out);
    Ok(out)
}

fn extend_matching(
    n: usize,
    used: &mut [bool],
    pairs: &mut Vec<(u8, u8)>,
    crossings: usize,
    out: &mut Vec<ChordDiagram>,
) {
    let Some(a) = (1..=2 * n).find(|&i| !used[i]) else {
        out.push(ChordDiagram {
            pairs: pairs.clone(),
            crossings,
        });
        return;
    };
    used[a] = true;
    for b in a + 1..=2 * n {
        if used[b] {
            continue;
        }
        // Every earlier chord starts before `a`; it crosses (a, b) iff it ends inside (a, b).
        let added = pairs
            .iter()
            .filter(|&&(_, d)| (a as u8) < d && d < b as u8)
            .count();
        used[b] = true;
        pairs.push((a as u8, b as u8));
        extend_matching(n, used, pairs, crossings + added, out);
        pairs.pop();
        used[b] = false;
    }
    used[a] = false;
}

/// Tallies a list of diagrams into the polynomial `Σ q^{crossings}`.
pub fn crossing_polynomial(diagrams: &[ChordDiagram]) -> QPolynomial {
    let max = diagrams.iter().map(|d| d.crossings).max().unwrap_or(0);
    let mut counts = vec![0u64; max + 1];
    for d in diagrams {
        counts[d.crossings] += 1;
    }
    if diagrams.is_empty() {
        return QPolynomial::zero();
    }
    QPolynomial::from_u64s(&counts)
}

/// Riordan–Touchard polynomial `RT(n, q)`: chord diagrams with `n` chords counted by crossings.
///
/// Sweeps the `2n` points left to right keeping, for every number `k` of open
/// chords, the crossing polynomial of all partial matchings. Closing one of the
/// `k` open chords crosses exactly the open chords opened after it, which
/// contributes the factor `[k]_q = 1 + q + … + q^{k−1}`.
pub fn rt_polynomial(n: usize) -> QPolynomial {
    let points = 2 * n;
    let mut states = vec![QPolynomial::one()];
    for point in 0..points {
        let remaining = points - point - 1;
        let max_open = (states.len()).min(remaining);
        let mut next = vec![QPolynomial::zero(); max_open + 1];
        for (open, poly) in states.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            if open < max_open {
                next[open + 1].add_assign_ref(poly);
            }
            if open > 0 && open - 1 <= max_open {
                next[open - 1].add_assign_ref(&poly.times_q_integer(open));
            }
        }
        states = next;
    }
    states.swap_remove(0)
}
