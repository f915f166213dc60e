//! Short vectors of E8 and two of its orthogonal complements, and the
//! Jacobi theta series Θ_{E8,u}(τ, z) = Σ_{v ∈ E8} q^{(v,v)/2} ζ^{(v,u)}.
//!
//! E8 vectors are stored in doubled coordinates: `x = 2v ∈ Z⁸`, all entries
//! of one parity and `Σ x ≡ 0 (mod 4)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numtheory::isqrt;
use crate::rat::int;
use crate::series::{FJExp, Meta};

/// A vector of E8 in doubled coordinates.
pub type Doubled = [i64; 8];

pub const U2: Doubled = [2, -2, 0, 0, 0, 0, 0, 0];
pub const U8: Doubled = [4, 2, 2, 2, 2, 0, 0, 0];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeTag {
    E8,
    E7,
    A7,
}

impl FromStr for LatticeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E8" | "e8" => Ok(LatticeTag::E8),
            "E7" | "e7" => Ok(LatticeTag::E7),
            "A7" | "a7" => Ok(LatticeTag::A7),
            _ => Err(Error::Parse(format!("unknown lattice {s:?}"))),
        }
    }
}

impl fmt::Display for LatticeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn in_e8(x: &Doubled) -> bool {
    let p = x[0].rem_euclid(2);
    x.iter().all(|c| c.rem_euclid(2) == p) && x.iter().sum::<i64>().rem_euclid(4) == 0
}

/// `4·(v, w)` for doubled coordinates.
pub fn dot4(x: &Doubled, y: &Doubled) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Depth-first search over `Z⁸` vectors with entries in `start + step·Z`
/// and `Σ x² ≤ budget`.
fn search(prefix: &mut Vec<i64>, start: i64, step: i64, budget: i64, out: &mut dyn FnMut(&[i64])) {
    if prefix.len() == 8 {
        out(prefix);
        return;
    }
    let r = isqrt(budget);
    let mut c = -r;
    // first admissible value ≥ -r
    c += (start - c).rem_euclid(step);
    while c <= r {
        prefix.push(c);
        search(prefix, start, step, budget - c * c, out);
        prefix.pop();
        c += step;
    }
}

/// All E8 vectors of norm ≤ `max_norm`, doubled.
pub fn e8_vectors(max_norm: i64) -> Vec<Doubled> {
    let budget = 4 * max_norm;
    let r = isqrt(budget);
    let firsts: Vec<(i64, i64)> = [0i64, 1]
        .into_iter()
        .flat_map(|p| (-r..=r).filter(move |c| c.rem_euclid(2) == p).map(move |c| (p, c)))
        .collect();
    firsts
        .into_par_iter()
        .flat_map_iter(|(p, c0)| {
            let mut found = Vec::new();
            let mut prefix = vec![c0];
            search(&mut prefix, p, 2, budget - c0 * c0, &mut |x| {
                if x.iter().sum::<i64>().rem_euclid(4) == 0 {
                    found.push(<Doubled>::try_from(x).unwrap());
                }
            });
            found
        })
        .collect()
}

fn count_by_norm(vs: impl Iterator<Item = i64>) -> BTreeMap<i64, u64> {
    let mut m = BTreeMap::new();
    for n in vs {
        *m.entry(n).or_insert(0) += 1;
    }
    m
}

/// Number of lattice vectors of each norm up to `max_norm`.
///
/// E7 and A7 are realized as u₂^⊥ inside E8 and as the sum-zero vectors of
/// Z⁸ respectively.
pub fn enumerate(tag: LatticeTag, max_norm: i64) -> Result<BTreeMap<i64, u64>> {
    if max_norm < 0 || max_norm % 2 != 0 {
        return Err(Error::Precondition(format!(
            "max norm must be a non-negative even integer, got {max_norm}"
        )));
    }
    let mut counts = match tag {
        LatticeTag::E8 => count_by_norm(e8_vectors(max_norm).iter().map(|x| dot4(x, x) / 4)),
        LatticeTag::E7 => count_by_norm(
            e8_vectors(max_norm)
                .iter()
                .filter(|x| dot4(x, &U2) == 0)
                .map(|x| dot4(x, x) / 4),
        ),
        LatticeTag::A7 => {
            let mut norms = Vec::new();
            search(&mut Vec::new(), 0, 1, max_norm, &mut |x| {
                if x.iter().sum::<i64>() == 0 {
                    norms.push(x.iter().map(|c| c * c).sum());
                }
            });
            count_by_norm(norms.into_iter())
        }
    };
    for n in (0..=max_norm).step_by(2) {
        counts.entry(n).or_insert(0);
    }
    Ok(counts)
}

/// Θ_{E8,u} to q-precision `prec`; weight 4, index (u,u)/2.
pub fn jacobi_theta_e8(u: &Doubled, prec: i64) -> Result<FJExp> {
    if !in_e8(u) {
        return Err(Error::Precondition(format!("{u:?} (doubled) is not in E8")));
    }
    if prec < 1 {
        return Err(Error::EmptyWindow(prec));
    }
    let mut acc: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for x in e8_vectors(2 * (prec - 1)) {
        *acc.entry((dot4(&x, &x) / 8, dot4(&x, u) / 4)).or_insert(0) += 1;
    }
    let index = int(dot4(u, u) / 8);
    Ok(FJExp::from_terms(
        1,
        1,
        prec,
        acc.into_iter().map(|(k, c)| (k, int(c))),
        Some(Meta::new(int(4), index, Some(int(0)))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chosen_vectors() {
        assert!(in_e8(&U2) && in_e8(&U8));
        assert_eq!(dot4(&U2, &U2), 8);
        assert_eq!(dot4(&U8, &U8), 32);
        // u₈/2 has odd doubled entries mixed with even ones
        let half = U8.map(|c| c / 2);
        assert!(!in_e8(&half));
        assert!(!in_e8(&[1, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn root_counts() {
        assert_eq!(enumerate(LatticeTag::E8, 2).unwrap()[&2], 240);
        assert_eq!(enumerate(LatticeTag::E7, 2).unwrap()[&2], 126);
        assert_eq!(enumerate(LatticeTag::A7, 2).unwrap()[&2], 56);
        let a7_perp = e8_vectors(2).iter().filter(|x| dot4(x, x) == 8 && dot4(x, &U8) == 0).count();
        assert_eq!(a7_perp, 56);
        assert_eq!(enumerate(LatticeTag::E7, 0).unwrap()[&0], 1);
        assert!(enumerate(LatticeTag::E8, 3).is_err());
    }
}
