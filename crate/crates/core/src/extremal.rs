//! Unordered extremal machinery: greedy transitive subtournaments,
//! degree filtering, the bipartite common-neighbourhood bound, dependent
//! random choice, and transitive chains across block sequences.

use crate::construct::derived_rng;
use crate::error::{Error, Result};
use crate::num::{self, binomial, floor_log_inv, Rational};
use crate::tournament::{density, dominates, is_transitive_order, Tournament, VertexSet};
use crate::RunMode;
use itertools::Itertools;
use rand::Rng;

pub const DEFAULT_RETRIES: usize = 50;
const ENUM_SUBSET_CAP: u64 = 1_000_000;
const SAMPLE_SUBSETS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

/// Greedy transitive subtournament inside `w`: repeatedly take a maximum
/// out-degree vertex (lowest index on ties) and recurse into its
/// out-neighbourhood. The result, in selection order, is transitive and
/// has size at least floor(log2 |w|) + 1.
pub fn greedy_transitive(t: &Tournament, w: &VertexSet) -> Vec<usize> {
    let mut chain = Vec::new();
    let mut pool = w.clone();
    while !pool.is_empty() {
        let v = pool
            .iter()
            .max_by_key(|&v| (t.out_degree_in(v, &pool), std::cmp::Reverse(v)))
            .expect("pool nonempty");
        chain.push(v);
        pool = t.out_neighbours_in(v, &pool);
    }
    debug_assert!(is_transitive_order(t, &chain));
    chain
}

/// All vertices of `a` with at least `eps * |b|` neighbours in `b` in the
/// given direction (exact rational comparison).
pub fn high_degree_subset(
    t: &Tournament,
    a: &VertexSet,
    b: &VertexSet,
    direction: Direction,
    eps: Rational,
) -> Result<VertexSet> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    if !a.is_disjoint(b) {
        return Err(Error::Overlap);
    }
    if eps < Rational::new(0, 1) || eps > Rational::new(1, 1) {
        return Err(Error::invalid("eps must lie in [0, 1]"));
    }
    let mut out = VertexSet::new(t.n());
    for v in a.iter() {
        let deg = match direction {
            Direction::Out => t.out_degree_in(v, b),
            Direction::In => t.in_degree_in(v, b),
        };
        if num::ge_ratio_scaled(deg as u64, eps, b.len() as u64) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// Best k-subset of `a` by common-neighbourhood size in `b`: exhaustive
/// when C(|a|, k) is small, greedy-by-intersection otherwise. No
/// preconditions; callers check whatever bound they need on the result.
pub fn best_common_subset(
    t: &Tournament,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    direction: Direction,
) -> Result<(Vec<usize>, VertexSet)> {
    let verts = a.to_vec();
    if verts.len() < k || k == 0 {
        return Err(Error::invalid(format!(
            "need a k-subset with k = {k} from a set of {} vertices",
            verts.len()
        )));
    }
    let common_of = |subset: &[usize]| -> VertexSet {
        match direction {
            Direction::Out => t.common_out_neighbours(subset, b),
            Direction::In => t.common_in_neighbours(subset, b),
        }
    };
    if binomial(verts.len() as u64, k as u64) <= ENUM_SUBSET_CAP {
        let mut best: Option<(Vec<usize>, VertexSet, usize)> = None;
        for subset in verts.iter().copied().combinations(k) {
            let common = common_of(&subset);
            let size = common.len();
            if best.as_ref().is_none_or(|(_, _, s)| size > *s) {
                best = Some((subset, common, size));
            }
        }
        let (subset, common, _) = best.expect("at least one subset");
        Ok((subset, common))
    } else {
        // greedy: grow the subset keeping the intersection largest
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        let mut pool = b.clone();
        for _ in 0..k {
            let v = verts
                .iter()
                .copied()
                .filter(|v| !chosen.contains(v))
                .max_by_key(|&v| {
                    let d = match direction {
                        Direction::Out => t.out_degree_in(v, &pool),
                        Direction::In => t.in_degree_in(v, &pool),
                    };
                    (d, std::cmp::Reverse(v))
                })
                .expect("k <= |verts|");
            chosen.push(v);
            pool = match direction {
                Direction::Out => t.out_neighbours_in(v, &pool),
                Direction::In => t.in_neighbours_in(v, &pool),
            };
        }
        for &v in &chosen {
            pool.remove(v);
        }
        Ok((chosen, pool))
    }
}

/// The bipartite common-neighbourhood bound: if every vertex of `a` has
/// at least beta * |b| neighbours in `b` and |a| >= k / beta, some
/// k-subset of `a` has at least beta^{4k} * |b| common neighbours in `b`.
/// The returned subset is post-checked against that bound exactly; the
/// greedy fallback errors rather than return a weaker answer.
pub fn kst_subset(
    t: &Tournament,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    beta: Rational,
    direction: Direction,
) -> Result<(Vec<usize>, VertexSet)> {
    check_beta(beta)?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    for v in a.iter() {
        let deg = match direction {
            Direction::Out => t.out_degree_in(v, b),
            Direction::In => t.in_degree_in(v, b),
        };
        if !num::ge_ratio_scaled(deg as u64, beta, b.len() as u64) {
            return Err(Error::invalid(format!(
                "vertex {v} has fewer than beta*|B| neighbours in B"
            )));
        }
    }
    // |a| >= k / beta  <=>  |a| * beta >= k
    if (a.len() as u128) * (*beta.numer() as u128) < (k as u128) * (*beta.denom() as u128) {
        return Err(Error::invalid(format!(
            "|A| = {} is below k/beta = {k}/{beta}",
            a.len()
        )));
    }
    // restrict to ceil(k/beta) vertices as in the counting argument
    let cap = ((k as u128 * *beta.denom() as u128).div_ceil(*beta.numer() as u128)) as usize;
    let restricted = VertexSet::from_iter(t.n(), a.iter().take(cap));
    let (subset, common) = best_common_subset(t, &restricted, b, k, direction)?;
    if !num::ge_ratio_pow_scaled(common.len() as u64, beta, 4 * k as u32, b.len() as u64) {
        return Err(Error::not_found(format!(
            "common neighbourhood of size {} misses the beta^4k bound",
            common.len()
        )));
    }
    Ok((subset, common))
}

fn check_beta(beta: Rational) -> Result<()> {
    if beta <= Rational::new(0, 1) || beta > Rational::new(1, 2) {
        return Err(Error::invalid("beta must lie in (0, 1/2]"));
    }
    Ok(())
}

/// Output of the dependent-random-choice step: `y` is a transitive k-set
/// in B and `x` is its full common in-neighbourhood in A, so x => y holds
/// by construction.
#[derive(Debug, Clone)]
pub struct DrcPair {
    pub x: VertexSet,
    pub y: Vec<usize>,
}

/// Dependent random choice: samples s vertices of `a` with replacement,
/// takes their common out-neighbourhood T' in `b`, prunes k-subsets of T'
/// with small common in-neighbourhood, and extracts a transitive k-set.
/// Retries with fresh derived randomness; all postconditions are verified
/// regardless of mode.
pub fn drc_transitive_pair(
    t: &Tournament,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    beta: Rational,
    seed: u64,
    retries: usize,
    mode: RunMode,
) -> Result<DrcPair> {
    check_beta(beta)?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    if !a.is_disjoint(b) {
        return Err(Error::Overlap);
    }
    let d = density(t, a, b)?;
    if d < beta {
        return Err(Error::invalid(format!("d(A,B) = {d} is below beta = {beta}")));
    }
    if mode.is_strict() {
        // |A|, |B| >= beta^{-5k}
        for (name, size) in [("A", a.len()), ("B", b.len())] {
            if !num::ge_inverse_ratio_pow(size as u64, beta, 5 * k as u32) {
                return Err(Error::infeasible(format!(
                    "strict mode needs |{name}| >= beta^-5k, got {size}"
                )));
            }
        }
    }
    let a_verts = a.to_vec();
    let s = 1.max((floor_log_inv(beta, b.len() as u64) / 2) as usize);
    let mut best_attempt: Option<(usize, usize)> = None;
    for retry in 0..retries.max(1) {
        let mut rng = derived_rng(seed, retry as u64);
        let sample: Vec<usize> =
            (0..s).map(|_| a_verts[rng.gen_range(0..a_verts.len())]).collect();
        let t_prime = t.common_out_neighbours(&sample, b);
        if t_prime.len() < k {
            continue;
        }
        let w = prune_small_subsets(t, a, &t_prime, k, beta, &mut rng);
        if w.len() < k {
            continue;
        }
        let y_full = greedy_transitive(t, &w);
        if y_full.len() < k {
            best_attempt = best_attempt.max(Some((y_full.len(), 0)));
            continue;
        }
        let y: Vec<usize> = y_full[..k].to_vec();
        let x = t.common_in_neighbours(&y, a);
        if x.is_empty() {
            best_attempt = best_attempt.max(Some((k, 0)));
            continue;
        }
        if mode.is_strict()
            && !num::ge_ratio_pow_scaled(x.len() as u64, beta, 4 * k as u32, a.len() as u64)
        {
            best_attempt = best_attempt.max(Some((k, x.len())));
            continue;
        }
        debug_assert!(dominates(t, &x, &VertexSet::from_iter(t.n(), y.iter().copied())));
        debug_assert!(is_transitive_order(t, &y));
        return Ok(DrcPair { x, y });
    }
    Err(Error::not_found(format!(
        "dependent random choice exhausted {} retries (best attempt: {:?})",
        retries.max(1),
        best_attempt
    )))
}

/// Deletes one vertex of each k-subset of `t_prime` whose common
/// in-neighbourhood in `a` is below beta^{4k} |a|: exhaustive enumeration
/// when feasible, otherwise a sampled sweep (the caller re-verifies).
fn prune_small_subsets(
    t: &Tournament,
    a: &VertexSet,
    t_prime: &VertexSet,
    k: usize,
    beta: Rational,
    rng: &mut impl Rng,
) -> VertexSet {
    let mut alive = t_prime.clone();
    let bound_ok = |subset: &[usize]| {
        let common = t.common_in_neighbours(subset, a);
        num::ge_ratio_pow_scaled(common.len() as u64, beta, 4 * k as u32, a.len() as u64)
    };
    if binomial(t_prime.len() as u64, k as u64) <= ENUM_SUBSET_CAP {
        let verts = t_prime.to_vec();
        for subset in verts.iter().copied().combinations(k) {
            if subset.iter().any(|&v| !alive.contains(v)) {
                continue;
            }
            if !bound_ok(&subset) {
                alive.remove(*subset.last().expect("k >= 1"));
            }
        }
    } else {
        for _ in 0..SAMPLE_SUBSETS {
            let verts = alive.to_vec();
            if verts.len() < k {
                break;
            }
            let mut subset: Vec<usize> = Vec::with_capacity(k);
            while subset.len() < k {
                let v = verts[rng.gen_range(0..verts.len())];
                if !subset.contains(&v) {
                    subset.push(v);
                }
            }
            subset.sort_unstable();
            if !bound_ok(&subset) {
                alive.remove(*subset.last().expect("k >= 1"));
            }
        }
    }
    alive
}

/// A pair of transitive k-sets with X => Y.
#[derive(Debug, Clone)]
pub struct TransPair {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// Both-sides-transitive pair: dependent random choice followed by a
/// greedy transitive extraction inside the common in-neighbourhood.
pub fn transitive_pair(
    t: &Tournament,
    a: &VertexSet,
    b: &VertexSet,
    k: usize,
    beta: Rational,
    seed: u64,
    retries: usize,
    mode: RunMode,
) -> Result<TransPair> {
    let pair = drc_transitive_pair(t, a, b, k, beta, seed, retries, mode)?;
    let x_full = greedy_transitive(t, &pair.x);
    if x_full.len() < k {
        return Err(Error::not_found(format!(
            "common in-neighbourhood of size {} hosts only a transitive {}-set, need {k}",
            pair.x.len(),
            x_full.len()
        )));
    }
    let result = TransPair { x: x_full[..k].to_vec(), y: pair.y };
    debug_assert!(dominates(
        t,
        &VertexSet::from_iter(t.n(), result.x.iter().copied()),
        &VertexSet::from_iter(t.n(), result.y.iter().copied())
    ));
    Ok(result)
}

/// Result of a chain attempt: either the full forward chain, or the
/// backward-pair witness that falsifies the no-backward-pair hypothesis
/// between consecutive blocks (valuable downstream for absorbers).
#[derive(Debug, Clone)]
pub enum ChainOutcome {
    Chain(Vec<Vec<usize>>),
    Witness {
        /// Index i: the witness pair lives in blocks (i, i+1).
        index: usize,
        /// Transitive k-set in blocks[index].
        b: Vec<usize>,
        /// Transitive k-set in blocks[index + 1], with b_prime => b.
        b_prime: Vec<usize>,
    },
}

/// Backward induction over the block sequence: either finds transitive
/// k-sets X_i in each block with X_1 => ... => X_t, or exhibits a
/// backward pair witness between consecutive blocks.
pub fn transitive_chain(
    t: &Tournament,
    blocks: &[VertexSet],
    k: usize,
    seed: u64,
    retries: usize,
    mode: RunMode,
) -> Result<ChainOutcome> {
    if blocks.is_empty() {
        return Err(Error::invalid("chain needs at least one block"));
    }
    for (i, bi) in blocks.iter().enumerate() {
        if bi.is_empty() {
            return Err(Error::invalid(format!("block {i} is empty")));
        }
        for bj in blocks.iter().skip(i + 1) {
            if !bi.is_disjoint(bj) {
                return Err(Error::Overlap);
            }
        }
    }
    if mode.is_strict() {
        for (i, b) in blocks.iter().enumerate() {
            let exp = if i + 1 == blocks.len() { 6 * k } else { 10 * k };
            if !num::ge_pow2(b.len() as u64, exp as u64) {
                return Err(Error::infeasible(format!(
                    "strict mode needs |block {i}| >= 2^{exp}, got {}",
                    b.len()
                )));
            }
        }
    }
    let half = Rational::new(1, 2);
    let mut avail: Vec<VertexSet> = blocks.to_vec();
    let mut chain_rev: Vec<Vec<usize>> = Vec::new();
    for i in (1..blocks.len()).rev() {
        let prev = avail[i - 1].clone();
        let cur = avail[i].clone();
        let back_density = density(t, &cur, &prev)?;
        if back_density >= half {
            // the hypothesis fails here: extract the witness pair
            match transitive_pair(t, &cur, &prev, k, half, seed ^ (i as u64), retries, mode) {
                Ok(pair) => {
                    return Ok(ChainOutcome::Witness { index: i - 1, b: pair.y, b_prime: pair.x });
                }
                Err(Error::Infeasible(e)) => return Err(Error::Infeasible(e)),
                Err(_) => {
                    // backward extraction failed at desk scale; fall
                    // through to the forward branch if it has any density
                }
            }
        }
        let fwd_density = Rational::new(1, 1) - back_density;
        if fwd_density == Rational::new(0, 1) {
            return Err(Error::not_found(format!(
                "blocks {} -> {} have no forward edges and the backward witness was not extractable",
                i - 1,
                i
            )));
        }
        let beta = fwd_density.min(half);
        let pair =
            drc_transitive_pair(t, &prev, &cur, k, beta, seed ^ (i as u64) << 8, retries, mode)
                .map_err(|e| match e {
                    Error::NotFound(msg) => Error::not_found(format!(
                        "chain step into block {i} failed: {msg}"
                    )),
                    other => other,
                })?;
        chain_rev.push(pair.y);
        avail[i - 1] = pair.x;
    }
    let first_full = greedy_transitive(t, &avail[0]);
    if first_full.len() < k {
        return Err(Error::not_found(format!(
            "block 0 pool of size {} hosts only a transitive {}-set, need {k}",
            avail[0].len(),
            first_full.len()
        )));
    }
    let mut chain = vec![first_full[..k].to_vec()];
    chain.extend(chain_rev.into_iter().rev());
    Ok(ChainOutcome::Chain(chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{self, InnerGenerator};
    use crate::num::rat;
    use crate::tournament::is_transitive;

    #[test]
    fn greedy_on_transitive() {
        let tt8 = construct::transitive_tournament(8).unwrap();
        let chain = greedy_transitive(&tt8, &tt8.vertices());
        assert_eq!(chain, vec![0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn greedy_on_c3() {
        let c3 = construct::paley(3).unwrap();
        assert_eq!(greedy_transitive(&c3, &c3.vertices()).len(), 2);
    }

    #[test]
    fn greedy_log_bound() {
        for seed in 0..20 {
            let t = construct::random_tournament(64, seed).unwrap();
            let chain = greedy_transitive(&t, &t.vertices());
            assert!(chain.len() >= 7, "got {}", chain.len());
            assert!(is_transitive_order(&t, &chain));
        }
    }

    #[test]
    fn high_degree_examples() {
        let (t, _) = construct::blowup(&[4, 4], InnerGenerator::Transitive, 0).unwrap();
        let a = VertexSet::from_iter(8, 0..4);
        let b = VertexSet::from_iter(8, 4..8);
        // full domination: everything qualifies at eps = 1
        let s = high_degree_subset(&t, &a, &b, Direction::Out, rat(1, 1)).unwrap();
        assert_eq!(s.len(), 4);
        // no edges from b to a: nothing qualifies at eps > 0
        let s = high_degree_subset(&t, &b, &a, Direction::Out, rat(1, 4)).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn high_degree_count_bound() {
        // size >= (beta - eps)|A| whenever d(A,B) = beta
        for seed in 0..10 {
            let t = construct::random_tournament(40, seed).unwrap();
            let a = VertexSet::from_iter(40, 0..20);
            let b = VertexSet::from_iter(40, 20..40);
            let beta = density(&t, &a, &b).unwrap();
            let eps = rat(1, 4);
            let s = high_degree_subset(&t, &a, &b, Direction::Out, eps).unwrap();
            let lower = (beta - eps) * rat(a.len() as i64, 1);
            assert!(rat(s.len() as i64, 1) >= lower);
        }
    }

    #[test]
    fn kst_trivial_domination() {
        let (t, _) = construct::blowup(&[4, 8], InnerGenerator::Transitive, 0).unwrap();
        let a = VertexSet::from_iter(12, 0..4);
        let b = VertexSet::from_iter(12, 4..12);
        let (x, common) = kst_subset(&t, &a, &b, 2, rat(1, 2), Direction::Out).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(common.len(), 8); // full B
    }

    #[test]
    fn kst_size_precondition() {
        let (t, _) = construct::blowup(&[2, 8], InnerGenerator::Transitive, 0).unwrap();
        let a = VertexSet::from_iter(10, 0..2);
        let b = VertexSet::from_iter(10, 2..10);
        // |A| = 2 < k/beta = 3/(1/2) = 6
        assert!(matches!(
            kst_subset(&t, &a, &b, 3, rat(1, 2), Direction::Out),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn drc_on_domination() {
        let (t, _) = construct::blowup(&[6, 6], InnerGenerator::Transitive, 0).unwrap();
        let a = VertexSet::from_iter(12, 0..6);
        let b = VertexSet::from_iter(12, 6..12);
        let pair = drc_transitive_pair(&t, &a, &b, 3, rat(1, 2), 0, 5, RunMode::Opportunistic)
            .unwrap();
        assert_eq!(pair.x.len(), 6); // all of A dominates
        assert_eq!(pair.y.len(), 3);
    }

    #[test]
    fn drc_k1_direct_scan() {
        // k = 1: y must have in-degree >= beta^4 |A| in A
        for seed in 0..5 {
            let t = construct::random_tournament(40, seed).unwrap();
            let a = VertexSet::from_iter(40, 0..20);
            let b = VertexSet::from_iter(40, 20..40);
            let d = density(&t, &a, &b).unwrap();
            if d < rat(1, 4) {
                continue;
            }
            let pair =
                drc_transitive_pair(&t, &a, &b, 1, rat(1, 4), seed, 20, RunMode::Opportunistic)
                    .unwrap();
            let y = pair.y[0];
            let indeg = t.in_degree_in(y, &a);
            assert_eq!(indeg, pair.x.len());
            assert!(indeg >= 1);
        }
    }

    #[test]
    fn transitive_pair_on_domination() {
        let (t, _) = construct::blowup(&[8, 8], InnerGenerator::Transitive, 0).unwrap();
        let a = VertexSet::from_iter(16, 0..8);
        let b = VertexSet::from_iter(16, 8..16);
        let pair = transitive_pair(&t, &a, &b, 2, rat(1, 2), 0, 5, RunMode::Opportunistic)
            .unwrap();
        assert_eq!(pair.x, vec![0, 1]);
        assert_eq!(pair.y, vec![8, 9]);
    }

    #[test]
    fn chain_on_forward_blowup() {
        let (t, _) = construct::blowup(&[6, 6, 6], InnerGenerator::Transitive, 0).unwrap();
        let blocks: Vec<VertexSet> = (0..3)
            .map(|b| VertexSet::from_iter(18, 6 * b..6 * (b + 1)))
            .collect();
        match transitive_chain(&t, &blocks, 2, 0, 5, RunMode::Opportunistic).unwrap() {
            ChainOutcome::Chain(sets) => {
                assert_eq!(sets.len(), 3);
                for (i, s) in sets.iter().enumerate() {
                    assert_eq!(s, &vec![6 * i, 6 * i + 1]);
                }
            }
            ChainOutcome::Witness { .. } => panic!("forward blow-up has no backward pair"),
        }
    }

    #[test]
    fn chain_witness_on_reversed_blowup() {
        let (fwd, _) = construct::blowup(&[6, 6], InnerGenerator::Transitive, 0).unwrap();
        let t = fwd.reversed();
        // now block 1 dominates block 0
        let blocks = vec![
            VertexSet::from_iter(12, 0..6),
            VertexSet::from_iter(12, 6..12),
        ];
        match transitive_chain(&t, &blocks, 2, 0, 5, RunMode::Opportunistic).unwrap() {
            ChainOutcome::Witness { index, b, b_prime } => {
                assert_eq!(index, 0);
                assert!(b.iter().all(|&v| v < 6));
                assert!(b_prime.iter().all(|&v| v >= 6));
                let bs = VertexSet::from_iter(12, b.iter().copied());
                let bps = VertexSet::from_iter(12, b_prime.iter().copied());
                assert!(dominates(&t, &bps, &bs));
            }
            ChainOutcome::Chain(_) => panic!("reversed blow-up must yield a witness"),
        }
    }

    #[test]
    fn chain_single_block() {
        let tt = construct::transitive_tournament(8).unwrap();
        let blocks = vec![tt.vertices()];
        match transitive_chain(&tt, &blocks, 3, 0, 5, RunMode::Opportunistic).unwrap() {
            ChainOutcome::Chain(sets) => assert_eq!(sets, vec![vec![0, 1, 2]]),
            _ => panic!(),
        }
    }

    #[test]
    fn strict_mode_infeasible() {
        let (t, _) = construct::blowup(&[6, 6], InnerGenerator::Transitive, 0).unwrap();
        let blocks = vec![
            VertexSet::from_iter(12, 0..6),
            VertexSet::from_iter(12, 6..12),
        ];
        assert!(matches!(
            transitive_chain(&t, &blocks, 2, 0, 5, RunMode::Strict),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn transitive_check_on_outputs() {
        for seed in 0..5 {
            let t = construct::random_tournament(60, seed).unwrap();
            let a = VertexSet::from_iter(60, 0..30);
            let b = VertexSet::from_iter(60, 30..60);
            let d = density(&t, &a, &b).unwrap();
            if d < rat(1, 3) {
                continue;
            }
            if let Ok(pair) =
                transitive_pair(&t, &a, &b, 2, rat(1, 3), seed, 30, RunMode::Opportunistic)
            {
                let xs = VertexSet::from_iter(60, pair.x.iter().copied());
                let ys = VertexSet::from_iter(60, pair.y.iter().copied());
                assert!(is_transitive(&t, &xs).unwrap().is_some());
                assert!(is_transitive(&t, &ys).unwrap().is_some());
                assert!(dominates(&t, &xs, &ys));
            }
        }
    }
}
