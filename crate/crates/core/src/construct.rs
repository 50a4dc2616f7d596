//! Seeded tournament generators: random, transitive, blow-ups, random edge
//! reversals of a transitive order, Paley tournaments, and small blocks
//! with no transitive subtournament of a given size.

use crate::error::{Error, Result};
use crate::oracle::{self, OracleBudget};
use crate::tournament::Tournament;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// RNG for a sub-task, decorrelated from the master seed by stream id.
pub fn derived_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Each unordered pair oriented by an independent fair coin.
pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament> {
    let mut rng = seeded_rng(seed);
    let mut fwd = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let f = rng.gen_bool(0.5);
            fwd[i][j] = f;
            fwd[j][i] = !f;
        }
    }
    Tournament::from_fn(n, |i, j| fwd[i][j])
}

/// Every edge oriented from its smaller endpoint.
pub fn transitive_tournament(n: usize) -> Result<Tournament> {
    Tournament::from_fn(n, |i, j| i < j)
}

/// Inner tournament placed on each block of a blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerGenerator {
    Transitive,
    Random,
    /// Paley tournament; requires the block size to be a prime = 3 mod 4.
    Paley,
}

/// Blow-up: one inner tournament per block, all cross-block edges oriented
/// forward by block index. Returns the tournament and the vertex -> block map.
pub fn blowup(
    block_sizes: &[usize],
    inner: InnerGenerator,
    seed: u64,
) -> Result<(Tournament, Vec<usize>)> {
    if block_sizes.is_empty() || block_sizes.iter().any(|&s| s == 0) {
        return Err(Error::invalid("block sizes must all be at least 1"));
    }
    let n: usize = block_sizes.iter().sum();
    let mut part = vec![0usize; n];
    let mut offset = 0;
    let mut blocks = Vec::new();
    for (b, &size) in block_sizes.iter().enumerate() {
        let t = match inner {
            InnerGenerator::Transitive => transitive_tournament(size)?,
            InnerGenerator::Random => random_tournament(size, seed.wrapping_add(b as u64))?,
            InnerGenerator::Paley => paley(size)?,
        };
        blocks.push((offset, t));
        for v in offset..offset + size {
            part[v] = b;
        }
        offset += size;
    }
    let t = Tournament::from_fn(n, |i, j| {
        if part[i] != part[j] {
            part[i] < part[j]
        } else {
            let (off, ref inner_t) = blocks[part[i]];
            inner_t.has_edge(i - off, j - off)
        }
    })?;
    Ok((t, part))
}

/// Start from the transitive tournament and reverse each edge
/// independently with probability `p`.
pub fn random_reversal(n: usize, p: f64, seed: u64) -> Result<Tournament> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("reversal probability must lie in [0, 1]"));
    }
    let mut rng = seeded_rng(seed);
    let mut fwd = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let f = !rng.gen_bool(p);
            fwd[i][j] = f;
            fwd[j][i] = !f;
        }
    }
    Tournament::from_fn(n, |i, j| fwd[i][j])
}

/// Paley tournament on a prime q = 3 mod 4: i -> j iff j - i is a nonzero
/// quadratic residue mod q.
pub fn paley(q: usize) -> Result<Tournament> {
    if q > 10_000 || !is_prime(q) || q % 4 != 3 {
        return Err(Error::invalid(format!(
            "Paley tournament needs a prime q = 3 (mod 4) with q <= 10^4, got {q}"
        )));
    }
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    Tournament::from_fn(q, |i, j| residue[(j + q - i) % q])
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A tournament on at least 2^{k/2} vertices with no transitive
/// subtournament on k vertices. Known extremal instances are tried before
/// the seeded random search.
pub fn no_tt_block(k: usize, seed: u64) -> Result<Tournament> {
    if k < 3 {
        return Err(Error::invalid("no_tt_block needs k >= 3"));
    }
    let budget = OracleBudget::default();
    let known: &[usize] = match k {
        3 => &[3],
        4 => &[7],
        5 => &[13],
        _ => &[],
    };
    for &q in known {
        let t = paley(q)?;
        if oracle::max_transitive(&t, &budget)?.len() < k {
            return Ok(t);
        }
    }
    // ceil(2^{k/2}) without floats: 2^{k/2} for even k, 2^{(k-1)/2} * sqrt(2) for odd
    let target = if k % 2 == 0 {
        1usize << (k / 2)
    } else {
        let base = 1usize << (k / 2);
        // ceil(base * sqrt(2)): sqrt(2) = 1.41421356..., use 181/128 > sqrt(2)
        (base * 181).div_ceil(128)
    };
    no_tt_block_sized(k, target, seed, 2000)
}

/// Seeded random search for an n-vertex tournament with no transitive
/// k-subtournament, validated by the exact oracle.
pub fn no_tt_block_sized(k: usize, n: usize, seed: u64, attempts: usize) -> Result<Tournament> {
    let budget = OracleBudget::default();
    if n > budget.max_subset_bits {
        return Err(Error::not_found(format!(
            "no_tt_block: n={n} exceeds the oracle validation budget"
        )));
    }
    for attempt in 0..attempts as u64 {
        let t = random_tournament(n, seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9)))?;
        if oracle::max_transitive(&t, &budget)?.len() < k {
            return Ok(t);
        }
    }
    Err(Error::not_found(format!(
        "no TT_{k}-free tournament on {n} vertices found within the search budget"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::strongly_connected_components;

    #[test]
    fn determinism() {
        let a = random_tournament(5, 1).unwrap();
        let b = random_tournament(5, 1).unwrap();
        assert_eq!(a, b);
        let c = random_tournament(5, 2).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn trivial_sizes() {
        assert_eq!(random_tournament(1, 0).unwrap().n(), 1);
        assert_eq!(transitive_tournament(1).unwrap().n(), 1);
    }

    #[test]
    fn reversal_extremes() {
        let n = 6;
        let tt = transitive_tournament(n).unwrap();
        assert_eq!(random_reversal(n, 0.0, 3).unwrap(), tt);
        assert_eq!(random_reversal(n, 1.0, 3).unwrap(), tt.reversed());
        assert!(random_reversal(n, 1.5, 3).is_err());
    }

    #[test]
    fn paley_small() {
        let p3 = paley(3).unwrap();
        // q = 3: residues {1}, so i -> i+1 mod 3: the directed triangle
        assert!(p3.has_edge(0, 1) && p3.has_edge(1, 2) && p3.has_edge(2, 0));
        assert!(paley(4).is_err());
        assert!(paley(5).is_err()); // 5 = 1 mod 4
    }

    #[test]
    fn blowup_structure() {
        let (t, part) = blowup(&[1, 1, 1], InnerGenerator::Transitive, 0).unwrap();
        assert_eq!(t, transitive_tournament(3).unwrap());
        assert_eq!(part, vec![0, 1, 2]);

        let (t, _) = blowup(&[3, 3, 3], InnerGenerator::Paley, 0).unwrap();
        let comps = strongly_connected_components(&t);
        assert_eq!(comps.len(), 3);
    }

    #[test]
    fn no_tt_block_known_instances() {
        let budget = OracleBudget::default();
        let b3 = no_tt_block(3, 0).unwrap();
        assert_eq!(b3.n(), 3);
        assert_eq!(oracle::max_transitive(&b3, &budget).unwrap().len(), 2);

        let b4 = no_tt_block(4, 0).unwrap();
        assert_eq!(b4.n(), 7);
        assert_eq!(oracle::max_transitive(&b4, &budget).unwrap().len(), 3);
    }

    #[test]
    fn no_tt_block_budget_exhaustion() {
        assert!(matches!(no_tt_block(20, 0), Err(Error::NotFound(_))));
    }
}
