//! Median-ordered machinery: common-neighbourhood steps inside a block
//! split, the 1-or-2-step walk across an interval, short connections
//! between distant blocks (with the ordering-repair branch), and the
//! assembly of transitive chains into path and cycle powers.

use crate::error::{Error, Result};
use crate::extremal::{
    self, best_common_subset, greedy_transitive, transitive_pair, Direction,
};
use crate::median::{self, IntervalSplit, MedianMode, Ordering, RemainderAlign};
use crate::num::{self, rat, Rational};
use crate::oracle::{self, OracleBudget};
use crate::tournament::{dominates, is_transitive_order, Tournament, VertexSet};
use crate::verify::{verify_cycle_power, verify_path_power};
use crate::RunMode;

/// A sequence of disjoint ordered transitive blocks with full forward
/// domination between consecutive blocks (wrapping when cyclic); the
/// universal intermediate for path/cycle-power assembly.
#[derive(Debug, Clone, Default)]
pub struct TransChain {
    pub blocks: Vec<Vec<usize>>,
    pub block_indices: Option<Vec<usize>>,
    pub cyclic: bool,
}

impl TransChain {
    pub fn path(blocks: Vec<Vec<usize>>) -> Self {
        TransChain { blocks, block_indices: None, cyclic: false }
    }

    pub fn cycle(blocks: Vec<Vec<usize>>) -> Self {
        TransChain { blocks, block_indices: None, cyclic: true }
    }

    pub fn total_len(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// Checks every invariant: disjointness, per-block transitivity of the
    /// stored orders, and consecutive (plus wrap, when cyclic) domination.
    pub fn validate(&self, t: &Tournament) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(Error::invalid("chain must have at least one block"));
        }
        let mut seen = VertexSet::new(t.n());
        for (i, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::invalid(format!("chain block {i} is empty")));
            }
            for &v in block {
                t.check_vertex(v)?;
                if seen.contains(v) {
                    return Err(Error::invalid(format!(
                        "vertex {v} appears in two chain blocks"
                    )));
                }
                seen.insert(v);
            }
            if !is_transitive_order(t, block) {
                return Err(Error::invalid(format!(
                    "chain block {i} is not in transitive order"
                )));
            }
        }
        let pairs = if self.cyclic { self.blocks.len() } else { self.blocks.len() - 1 };
        for i in 0..pairs {
            let j = (i + 1) % self.blocks.len();
            let a = VertexSet::from_iter(t.n(), self.blocks[i].iter().copied());
            let b = VertexSet::from_iter(t.n(), self.blocks[j].iter().copied());
            if !dominates(t, &a, &b) {
                return Err(Error::invalid(format!(
                    "chain block {i} does not dominate block {j}"
                )));
            }
        }
        Ok(())
    }
}

/// One common-neighbourhood step inside three consecutive equal blocks
/// A_0, A_1, A_2 starting at `b0`: a k-subset X of `a0_prime` together
/// with its common out-neighbours inside A_i \ F for the better i in
/// {1, 2}.
pub struct TuranStep {
    pub x: Vec<usize>,
    /// offset of the landing block relative to b0 (1 or 2)
    pub landing: usize,
    pub common: VertexSet,
}

pub fn median_turan(
    t: &Tournament,
    split: &IntervalSplit,
    b0: usize,
    a0_prime: &VertexSet,
    f: &VertexSet,
    k: usize,
    mode: RunMode,
) -> Result<TuranStep> {
    if b0 + 2 >= split.block_count() {
        return Err(Error::invalid("need three consecutive blocks"));
    }
    let m = split.block_len(b0);
    if split.block_len(b0 + 1) != m || split.block_len(b0 + 2) != m {
        return Err(Error::invalid("the three blocks must have equal size"));
    }
    let block0 = split.block_set(t.n(), b0);
    if !a0_prime.is_subset(&block0) {
        return Err(Error::invalid("A0' must lie inside the first block"));
    }
    if mode.is_strict() {
        if a0_prime.len() != 8 * k {
            return Err(Error::invalid(format!(
                "A0' must have exactly 8k = {} vertices, got {}",
                8 * k,
                a0_prime.len()
            )));
        }
        let interval = block0
            .union(&split.block_set(t.n(), b0 + 1))
            .union(&split.block_set(t.n(), b0 + 2));
        if 4 * f.intersection(&interval).len() > m {
            return Err(Error::invalid("strict mode needs |F in interval| <= m/4"));
        }
    } else if a0_prime.len() < k {
        return Err(Error::invalid(format!(
            "A0' has {} vertices, need at least k = {k}",
            a0_prime.len()
        )));
    }
    let b1 = split.block_set(t.n(), b0 + 1).difference(f);
    let b2 = split.block_set(t.n(), b0 + 2).difference(f);
    let pool = b1.union(&b2);
    if pool.is_empty() {
        return Err(Error::not_found("both candidate blocks are fully forbidden"));
    }
    let (x, common) = if mode.is_strict() {
        extremal::kst_subset(t, a0_prime, &pool, k, rat(1, 8), Direction::Out)?
    } else {
        best_common_subset(t, a0_prime, &pool, k, Direction::Out)?
    };
    let in_b1 = common.intersection(&b1);
    let in_b2 = common.intersection(&b2);
    let (landing, landed) = if in_b1.len() >= in_b2.len() { (1, in_b1) } else { (2, in_b2) };
    if mode.is_strict() {
        // landing common set >= m / 2^{12k}
        if !num::shifted_ge(landed.len() as u64, 12 * k as u64, m as u64) {
            return Err(Error::not_found(format!(
                "landing common set of size {} misses m/2^(12k); the ordering may not be median",
                landed.len()
            )));
        }
    } else if landed.len() < k {
        // the walk extracts successor pools of up to 8k from this set,
        // but its hard floor is the k-set the next step must host
        return Err(Error::not_found(format!(
            "landing common set has {} vertices, downstream needs at least k = {k}",
            landed.len()
        )));
    }
    Ok(TuranStep { x, landing, common: landed })
}

/// Error payload for a failed walk: the chain built so far plus where it
/// stopped.
#[derive(Debug, Clone)]
pub struct PartialWalk {
    pub chain: TransChain,
    pub failed_block: usize,
}

/// Walks from `start_block` to the end of the split in steps of 1 or 2
/// blocks, producing a chain of transitive k-sets X_1 => X_2 => ...; at
/// each step the 8k-sized successor pool is extracted greedily from the
/// common neighbourhood of the chosen k-set.
pub fn median_sequence(
    t: &Tournament,
    split: &IntervalSplit,
    start_block: usize,
    x: &VertexSet,
    f: &VertexSet,
    k: usize,
    mode: RunMode,
) -> std::result::Result<TransChain, (Error, Option<PartialWalk>)> {
    if split.block_count() == 0 {
        return Err((Error::invalid("empty split"), None));
    }
    let last = split.block_count() - 1;
    if start_block > last {
        return Err((Error::invalid("start block out of range"), None));
    }
    let start_set = split.block_set(t.n(), start_block);
    if !x.is_subset(&start_set.difference(f)) {
        return Err((Error::invalid("X must lie in the start block minus F"), None));
    }
    let x_order = greedy_transitive(t, x);
    if x_order.len() != x.len() {
        return Err((Error::invalid("X must induce a transitive tournament"), None));
    }
    if mode.is_strict() {
        if x.len() != 8 * k {
            return Err((Error::invalid("strict mode needs |X| = 8k"), None));
        }
        let m = split.block_len(start_block);
        if !num::ge_pow2(m as u64, 20 * k as u64) {
            return Err((Error::infeasible("strict mode needs m >= 2^(20k)"), None));
        }
        for i in 0..split.block_count() {
            let bi = split.block_set(t.n(), i);
            if 8 * f.intersection(&bi).len() > split.block_len(i) {
                return Err((
                    Error::infeasible("strict mode needs |F in A_i| <= m/8 for every block"),
                    None,
                ));
            }
        }
    }
    let mut indices = vec![start_block];
    let mut chain_blocks: Vec<Vec<usize>> = Vec::new();
    let mut pool = x.clone();
    let mut pool_order = x_order;
    let mut j = start_block;
    let fail = |chain_blocks: Vec<Vec<usize>>, indices: Vec<usize>, j: usize, e: Error| {
        let partial = PartialWalk {
            chain: TransChain { blocks: chain_blocks, block_indices: Some(indices), cyclic: false },
            failed_block: j,
        };
        (e, Some(partial))
    };
    while j + 1 < last {
        let step = match median_turan(t, split, j, &pool, f, k, mode) {
            Ok(s) => s,
            Err(e) => return Err(fail(chain_blocks, indices, j, e)),
        };
        let mut x_i = step.x.clone();
        sort_into_transitive_order(t, &mut x_i);
        chain_blocks.push(x_i);
        j += step.landing;
        indices.push(j);
        let next_pool_order = greedy_transitive(t, &step.common);
        let take = (8 * k).min(next_pool_order.len());
        if mode.is_strict() && take < 8 * k {
            return Err(fail(
                chain_blocks,
                indices,
                j,
                Error::not_found("successor pool below 8k in strict mode"),
            ));
        }
        if take < k {
            return Err(fail(
                chain_blocks,
                indices,
                j,
                Error::not_found(format!(
                    "successor pool hosts only a transitive {take}-set, need {k}"
                )),
            ));
        }
        pool_order = next_pool_order[..take].to_vec();
        pool = VertexSet::from_iter(t.n(), pool_order.iter().copied());
    }
    // terminal k-set from the final pool
    if pool_order.len() < k {
        return Err(fail(
            chain_blocks,
            indices,
            j,
            Error::not_found("terminal pool smaller than k"),
        ));
    }
    chain_blocks.push(pool_order[..k].to_vec());
    let chain = TransChain { blocks: chain_blocks, block_indices: Some(indices), cyclic: false };
    chain.validate(t).map_err(|e| (e, None))?;
    Ok(chain)
}

/// Reorders `set` in place into its transitive order (the set must be
/// transitive; subsets of transitive sets always are).
fn sort_into_transitive_order(t: &Tournament, set: &mut [usize]) {
    let vs = VertexSet::from_iter(t.n(), set.iter().copied());
    set.sort_by_key(|&v| std::cmp::Reverse(t.out_degree_in(v, &vs)));
    debug_assert!(is_transitive_order(t, set));
}

/// Result of a connection: the chain, the (possibly repaired) ordering
/// split, and how many times the repair branch fired.
pub struct ConnectOutcome {
    pub chain: TransChain,
    pub split: IntervalSplit,
    pub improvements: usize,
}

/// Connects `a0_prime` (inside the first block) to `at_prime` (inside the
/// last block) through at most 3 intermediate transitive k-sets, avoiding
/// `f`. The three branches mirror the underlying argument: a large
/// two-sided middle set, a dense pair across disjoint middle sets, and
/// otherwise an improving block relocation that repairs the ordering and
/// retries.
#[allow(clippy::too_many_arguments)]
pub fn med_connect_short(
    t: &Tournament,
    split: &IntervalSplit,
    a0_prime: &VertexSet,
    at_prime: &VertexSet,
    f: &VertexSet,
    k: usize,
    seed: u64,
    retry_budget: usize,
    mode: RunMode,
) -> Result<ConnectOutcome> {
    let blocks = split.block_count();
    if blocks < 3 {
        return Err(Error::invalid("short connection needs at least three blocks"));
    }
    let tt = blocks - 1;
    let m = split.block_len(0);
    if mode.is_strict() {
        if tt < 50 {
            return Err(Error::infeasible("strict mode needs t >= 50"));
        }
        if (m as u64) < 100 || !num::ge_pow2(m as u64 / 100, 40400 * k as u64) {
            return Err(Error::infeasible("strict mode needs m >= 100 * 2^(40400k)"));
        }
        for s in [a0_prime.len(), at_prime.len()] {
            if !num::ge_pow2(s as u64, 4001 * k as u64) {
                return Err(Error::infeasible("strict mode needs |A'| >= 2^(4001k)"));
            }
        }
        if 2 * f.len() > m {
            return Err(Error::infeasible("strict mode needs |F| <= m/2"));
        }
    }
    if !a0_prime.is_subset(&split.block_set(t.n(), 0)) {
        return Err(Error::invalid("A0' must lie inside the first block"));
    }
    if !at_prime.is_subset(&split.block_set(t.n(), tt)) {
        return Err(Error::invalid("At' must lie inside the last block"));
    }
    if a0_prime.is_empty() || at_prime.is_empty() {
        return Err(Error::EmptySet);
    }
    let eps = rat(1, 100);
    let mut work = split.clone();
    let mut improvements = 0usize;
    for _attempt in 0..=retry_budget {
        match connect_once(t, &work, a0_prime, at_prime, f, k, seed, eps, mode)? {
            ConnectStep::Done(chain) => {
                return Ok(ConnectOutcome { chain, split: work, improvements });
            }
            ConnectStep::Improved(new_split) => {
                improvements += 1;
                work = new_split;
            }
            ConnectStep::Stuck(reason) => {
                return Err(Error::not_found(format!(
                    "short connection failed after {improvements} ordering improvements: {reason}"
                )));
            }
        }
    }
    Err(Error::not_found(format!(
        "short connection retries exhausted after {improvements} ordering improvements \
         (the input ordering was far from median)"
    )))
}

enum ConnectStep {
    Done(TransChain),
    Improved(IntervalSplit),
    Stuck(String),
}

#[allow(clippy::too_many_arguments)]
fn connect_once(
    t: &Tournament,
    split: &IntervalSplit,
    a0_prime: &VertexSet,
    at_prime: &VertexSet,
    f: &VertexSet,
    k: usize,
    seed: u64,
    eps: Rational,
    mode: RunMode,
) -> Result<ConnectStep> {
    let tt = split.block_count() - 1;
    let mut middle = VertexSet::new(t.n());
    for i in 1..tt {
        for &v in split.block_vertices(i) {
            middle.insert(v);
        }
    }
    let middle_free = middle.difference(f);
    if middle_free.is_empty() {
        return Ok(ConnectStep::Stuck("middle interval fully forbidden".into()));
    }
    // A^I: >= eps |A0'| in-neighbours in A0'; A^O: >= eps |At'| out-neighbours in At'
    let a_in = extremal::high_degree_subset(t, &middle_free, a0_prime, Direction::In, eps)?;
    let a_out = extremal::high_degree_subset(t, &middle_free, at_prime, Direction::Out, eps)?;

    // Branch s = 2: a two-sided middle set large enough to host k.
    let both = a_in.intersection(&a_out);
    let branch2_viable = if mode.is_strict() {
        // |A^I ∩ A^O| >= 2^{k/eps^2}
        num::ge_pow2(both.len() as u64, k as u64 * 10_000)
    } else {
        both.len() >= k
    };
    if branch2_viable {
        if let Some(chain) = try_branch_two(t, &both, a0_prime, at_prime, k) {
            return Ok(ConnectStep::Done(chain));
        }
    }
    // Branch s = 3: dense pair across the disjoint middle sets.
    let a_in_only = a_in.difference(&a_out);
    if !a_in_only.is_empty() && !a_out.is_empty() {
        let d = crate::tournament::density(t, &a_in_only, &a_out)?;
        if d > eps {
            let beta = d.min(rat(1, 2));
            if let Ok(pair) = transitive_pair(
                t,
                &a_in_only,
                &a_out,
                k,
                beta,
                seed ^ 0x5eed,
                extremal::DEFAULT_RETRIES,
                RunMode::Opportunistic,
            ) {
                if let Some(chain) = try_branch_three(t, &pair.x, &pair.y, a0_prime, at_prime, k) {
                    return Ok(ConnectStep::Done(chain));
                }
            }
        }
    }
    // Contradiction branch: move A^I \ A^O to the end of the middle
    // interval; if this improves the forward count the ordering was not
    // median, so adopt the improvement and retry.
    match relocate_block(t, split, &a_in_only) {
        Some(improved) => Ok(ConnectStep::Improved(improved)),
        None => Ok(ConnectStep::Stuck(
            "neither branch applies and the block relocation does not improve the ordering".into(),
        )),
    }
}

/// s = 2: Y inside A^I n A^O, with endpoints extracted from its common
/// neighbourhoods on both sides.
fn try_branch_two(
    t: &Tournament,
    both: &VertexSet,
    a0_prime: &VertexSet,
    at_prime: &VertexSet,
    k: usize,
) -> Option<TransChain> {
    let y_full = greedy_transitive(t, both);
    if y_full.len() < k {
        return None;
    }
    // scan k-windows of the transitive chain for one with viable
    // endpoints on both sides
    for start in 0..=(y_full.len() - k) {
        let y = &y_full[start..start + k];
        let tail = t.common_out_neighbours(y, at_prime);
        let head = t.common_in_neighbours(y, a0_prime);
        if tail.is_empty() || head.is_empty() {
            continue;
        }
        let x2 = greedy_transitive(t, &tail);
        let x0 = greedy_transitive(t, &head);
        if x2.len() >= k && x0.len() >= k {
            let chain =
                TransChain::path(vec![x0[..k].to_vec(), y.to_vec(), x2[..k].to_vec()]);
            if chain.validate(t).is_ok() {
                return Some(chain);
            }
        }
    }
    None
}

/// s = 3: Y => Z across the middle, with endpoints from the common
/// neighbourhoods of Y (in A0') and Z (in At').
fn try_branch_three(
    t: &Tournament,
    y: &[usize],
    z: &[usize],
    a0_prime: &VertexSet,
    at_prime: &VertexSet,
    k: usize,
) -> Option<TransChain> {
    let head = t.common_in_neighbours(y, a0_prime);
    let tail = t.common_out_neighbours(z, at_prime);
    if head.is_empty() || tail.is_empty() {
        return None;
    }
    let x0 = greedy_transitive(t, &head);
    let x3 = greedy_transitive(t, &tail);
    if x0.len() < k || x3.len() < k {
        return None;
    }
    let chain = TransChain::path(vec![
        x0[..k].to_vec(),
        y.to_vec(),
        z.to_vec(),
        x3[..k].to_vec(),
    ]);
    if chain.validate(t).is_ok() {
        Some(chain)
    } else {
        None
    }
}

/// The repair move: all vertices of `group` (inside the middle interval)
/// move to the end of the middle interval, preserving relative order
/// otherwise. Returns the re-derived split iff the move strictly
/// increases the forward count.
fn relocate_block(
    t: &Tournament,
    split: &IntervalSplit,
    group: &VertexSet,
) -> Option<IntervalSplit> {
    if group.is_empty() {
        return None;
    }
    let tt = split.block_count() - 1;
    let (mid_start, _) = split.ranges[1];
    let (_, mid_end) = split.ranges[tt - 1];
    let perm = &split.ord.perm;
    let mut new_perm: Vec<usize> = Vec::with_capacity(perm.len());
    new_perm.extend_from_slice(&perm[..mid_start]);
    let mut moved = Vec::new();
    for &v in &perm[mid_start..mid_end] {
        if group.contains(v) {
            moved.push(v);
        } else {
            new_perm.push(v);
        }
    }
    new_perm.extend(moved);
    new_perm.extend_from_slice(&perm[mid_end..]);
    let new_fwd = median::count_forward(t, &new_perm);
    if new_fwd <= split.ord.forward_count {
        return None;
    }
    let ord = Ordering { perm: new_perm, forward_count: new_fwd, mode: split.ord.mode };
    Some(IntervalSplit { ord, ranges: split.ranges.clone(), m: split.m })
}

/// Connects a transitive 4k-set X (inside the first block) to a
/// transitive 4k-set X' (inside the last block) through at most 5
/// transitive k-sets: one hop into the first four blocks, one hop back
/// from the last four, and a short connection between the landing blocks.
#[allow(clippy::too_many_arguments)]
pub fn med_connect(
    t: &Tournament,
    split: &IntervalSplit,
    x: &VertexSet,
    x_prime: &VertexSet,
    f: &VertexSet,
    k: usize,
    seed: u64,
    retry_budget: usize,
    mode: RunMode,
) -> Result<ConnectOutcome> {
    let blocks = split.block_count();
    if blocks < 7 {
        return Err(Error::invalid("the endpoint connection needs at least seven blocks"));
    }
    let tt = blocks - 1;
    if x.len() != 4 * k || x_prime.len() != 4 * k {
        return Err(Error::invalid(format!(
            "endpoint sets must have exactly 4k = {} vertices",
            4 * k
        )));
    }
    if !x.is_subset(&split.block_set(t.n(), 0)) || !x_prime.is_subset(&split.block_set(t.n(), tt))
    {
        return Err(Error::invalid("endpoint sets must lie in the first/last blocks"));
    }
    if mode.is_strict() {
        if tt < 60 {
            return Err(Error::infeasible("strict mode needs t >= 60"));
        }
        let m = split.block_len(0);
        if (m as u64) < 100 || !num::ge_pow2(m as u64 / 100, 40400 * k as u64) {
            return Err(Error::infeasible("strict mode needs m >= 100 * 2^(40400k)"));
        }
        if 2 * f.len() > m {
            return Err(Error::infeasible("strict mode needs |F| <= m/2"));
        }
    }
    // forward hop: k-subset of X with common out-neighbours in the first
    // four middle blocks minus F
    let mut near = VertexSet::new(t.n());
    for i in 1..=4.min(tt - 1) {
        for &v in split.block_vertices(i) {
            near.insert(v);
        }
    }
    let near_free = near.difference(f);
    let (x0, common_out) =
        hop(t, x, &near_free, k, Direction::Out, mode).map_err(|e| stage(e, "forward hop from X"))?;
    let (i_land, a_i) = best_block_part(t, split, &common_out, 1, 4.min(tt - 1));

    // backward hop: k-subset of X' with common in-neighbours in the last
    // four middle blocks minus F
    let mut far = VertexSet::new(t.n());
    for i in tt.saturating_sub(4).max(1)..tt {
        for &v in split.block_vertices(i) {
            far.insert(v);
        }
    }
    let far_free = far.difference(f);
    let (xt, common_in) = hop(t, x_prime, &far_free, k, Direction::In, mode)
        .map_err(|e| stage(e, "backward hop from X'"))?;
    let (i_land_far, a_ip) =
        best_block_part(t, split, &common_in, tt.saturating_sub(4).max(1), tt - 1);

    if i_land + 2 > i_land_far {
        return Err(Error::not_found(format!(
            "landing blocks {i_land} and {i_land_far} leave no room for the short connection"
        )));
    }
    if a_i.is_empty() || a_ip.is_empty() {
        return Err(Error::not_found("a hop landed on an empty block part"));
    }
    let sub = split.slice(i_land, i_land_far);
    let inner = med_connect_short(t, &sub, &a_i, &a_ip, f, k, seed, retry_budget, mode)
        .map_err(|e| stage(e, "short connection between landing blocks"))?;

    let mut blocks_out = vec![sorted_transitive(t, x0)];
    blocks_out.extend(inner.chain.blocks.iter().cloned());
    blocks_out.push(sorted_transitive(t, xt));
    let chain = TransChain::path(blocks_out);
    chain.validate(t)?;
    Ok(ConnectOutcome { chain, split: split.clone(), improvements: inner.improvements })
}

fn stage(e: Error, tag: &str) -> Error {
    match e {
        Error::NotFound(msg) => Error::not_found(format!("{tag}: {msg}")),
        Error::Infeasible(msg) => Error::infeasible(format!("{tag}: {msg}")),
        other => other,
    }
}

fn sorted_transitive(t: &Tournament, mut v: Vec<usize>) -> Vec<usize> {
    sort_into_transitive_order(t, &mut v);
    v
}

fn hop(
    t: &Tournament,
    from: &VertexSet,
    pool: &VertexSet,
    k: usize,
    direction: Direction,
    mode: RunMode,
) -> Result<(Vec<usize>, VertexSet)> {
    if pool.is_empty() {
        return Err(Error::not_found("hop pool is empty"));
    }
    if mode.is_strict() {
        extremal::kst_subset(t, from, pool, k, rat(1, 4), direction)
    } else {
        best_common_subset(t, from, pool, k, direction)
    }
}

/// Splits `common` by block and returns the block index (within
/// `[lo, hi]`) holding the most of it, smaller index on ties.
fn best_block_part(
    t: &Tournament,
    split: &IntervalSplit,
    common: &VertexSet,
    lo: usize,
    hi: usize,
) -> (usize, VertexSet) {
    let mut best = (lo, VertexSet::new(t.n()));
    for i in lo..=hi {
        let part = common.intersection(&split.block_set(t.n(), i));
        if part.len() > best.1.len() {
            best = (i, part);
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

/// Concatenates the chain's transitive orders into a k-th power of a
/// path. Valid because a window of k+1 consecutive positions meets at
/// most two consecutive blocks once every middle block has size >= k.
pub fn assemble_path_power(t: &Tournament, chain: &TransChain, k: usize) -> Result<Vec<usize>> {
    if chain.cyclic {
        return Err(Error::invalid("assemble_path_power needs a non-cyclic chain"));
    }
    chain.validate(t)?;
    if chain.blocks.len() > 1 {
        for (i, block) in chain.blocks.iter().enumerate() {
            let is_edge_block = i == 0 || i + 1 == chain.blocks.len();
            if !is_edge_block && block.len() < k {
                return Err(Error::invalid(format!(
                    "middle chain block {i} has {} vertices, need at least k = {k}",
                    block.len()
                )));
            }
        }
    }
    let seq: Vec<usize> = chain.blocks.iter().flatten().copied().collect();
    match verify_path_power(t, &seq, k)? {
        crate::verify::Verdict::Pass => Ok(seq),
        crate::verify::Verdict::Fail(v) => {
            Err(Error::internal(format!("assembled path power failed verification: {v}")))
        }
    }
}

/// Concatenates a cyclic chain into a k-th power of a cycle; every block
/// must have size >= k and domination must hold around the wrap.
pub fn assemble_cycle_power(t: &Tournament, chain: &TransChain, k: usize) -> Result<Vec<usize>> {
    if !chain.cyclic {
        return Err(Error::invalid("assemble_cycle_power needs a cyclic chain"));
    }
    if chain.blocks.len() < 2 {
        return Err(Error::invalid("cyclic chain needs at least two blocks"));
    }
    chain.validate(t)?;
    for (i, block) in chain.blocks.iter().enumerate() {
        if block.len() < k {
            return Err(Error::invalid(format!(
                "cyclic chain block {i} has {} vertices, need at least k = {k}",
                block.len()
            )));
        }
    }
    let seq: Vec<usize> = chain.blocks.iter().flatten().copied().collect();
    match verify_cycle_power(t, &seq, k)? {
        crate::verify::Verdict::Pass => Ok(seq),
        crate::verify::Verdict::Fail(v) => {
            Err(Error::internal(format!("assembled cycle power failed verification: {v}")))
        }
    }
}

// ---------------------------------------------------------------------------
// Path-power search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PathPowerSearch {
    pub seq: Vec<usize>,
    pub target_met: bool,
}

#[derive(Debug, Clone)]
pub struct PathPowerParams {
    /// Block size for the interval walk; a heuristic by default.
    pub block_size: Option<usize>,
    pub restarts: usize,
    pub mode: RunMode,
}

impl Default for PathPowerParams {
    fn default() -> Self {
        PathPowerParams {
            block_size: None,
            restarts: median::DEFAULT_RESTARTS,
            mode: RunMode::Opportunistic,
        }
    }
}

/// Finds a verified k-th power of a path inside `w`: the exact oracle for
/// tiny sets, the median Hamilton path for k = 1, and otherwise a median
/// split + greedy seed + interval walk, with a greedy transitive set as a
/// fallback candidate. Always returns the best verified sequence found,
/// flagging whether the target length was met.
pub fn find_path_power(
    t: &Tournament,
    w: &VertexSet,
    k: usize,
    target_len: usize,
    seed: u64,
    params: &PathPowerParams,
) -> Result<PathPowerSearch> {
    if w.is_empty() {
        return Err(Error::EmptySet);
    }
    if k == 0 {
        return Err(Error::invalid("power parameter k must be at least 1"));
    }
    let (sub, map) = t.induced(w)?;
    let n = sub.n();

    let mut best: Vec<usize> = Vec::new();
    if n <= 12 {
        let (_, witness) = oracle::max_path_power_len(&sub, k, &OracleBudget::default())?;
        best = witness;
    } else if k == 1 {
        // a relocation-optimal ordering is a Hamilton directed path
        let ord = median::median_order_with(
            &sub,
            MedianMode::Local,
            seed,
            params.restarts,
            &OracleBudget::default(),
        )?;
        best = ord.perm;
    } else {
        // greedy transitive baseline: a transitive set is a path power for every k
        let greedy = greedy_transitive(&sub, &sub.vertices());
        if greedy.len() > best.len() {
            best = greedy;
        }
        let m = params.block_size.unwrap_or_else(|| default_walk_block(n, k));
        if let Ok(walk) = walk_path_power(&sub, k, m, seed, params.mode) {
            if walk.len() > best.len() {
                best = walk;
            }
        }
    }
    if !verify_path_power(&sub, &best, k)?.is_pass() {
        return Err(Error::internal("path power candidate failed verification"));
    }
    let seq: Vec<usize> = best.iter().map(|&v| map[v]).collect();
    let target_met = seq.len() >= target_len;
    Ok(PathPowerSearch { seq, target_met })
}

fn default_walk_block(n: usize, k: usize) -> usize {
    (n / 12).max(16 * k).min(n)
}

fn walk_path_power(
    t: &Tournament,
    k: usize,
    m: usize,
    seed: u64,
    mode: RunMode,
) -> Result<Vec<usize>> {
    let ord = median::median_order(t, MedianMode::Local, seed)?;
    let split = median::split_intervals(&ord, m, RemainderAlign::Last)?;
    if split.block_count() < 3 {
        return Err(Error::not_found("walk needs at least three blocks"));
    }
    let block0 = split.block_set(t.n(), 0);
    let seed_order = greedy_transitive(t, &block0);
    let take = (8 * k).min(seed_order.len());
    if take < k {
        return Err(Error::not_found("seed block hosts no transitive k-set"));
    }
    let x = VertexSet::from_iter(t.n(), seed_order[..take].iter().copied());
    let empty = VertexSet::new(t.n());
    let chain = match median_sequence(t, &split, 0, &x, &empty, k, mode) {
        Ok(chain) => chain,
        Err((_, Some(partial))) if !partial.chain.blocks.is_empty() => partial.chain,
        Err((e, _)) => return Err(e),
    };
    assemble_path_power(t, &chain, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{self, InnerGenerator};

    fn forward_blowup(blocks: usize, size: usize) -> Tournament {
        construct::blowup(&vec![size; blocks], InnerGenerator::Transitive, 0).unwrap().0
    }

    fn equal_split(t: &Tournament, m: usize) -> IntervalSplit {
        let ord = median::median_order(t, MedianMode::Local, 0).unwrap();
        median::split_intervals(&ord, m, RemainderAlign::First).unwrap()
    }

    #[test]
    fn chain_validation() {
        let t = forward_blowup(3, 4);
        let chain = TransChain::path(vec![vec![0, 1], vec![4, 5], vec![8, 9]]);
        chain.validate(&t).unwrap();

        let bad = TransChain::path(vec![vec![4, 5], vec![0, 1]]);
        assert!(bad.validate(&t).is_err());

        let dup = TransChain::path(vec![vec![0, 1], vec![1, 4]]);
        assert!(dup.validate(&t).is_err());
    }

    #[test]
    fn turan_on_transitive() {
        let t = construct::transitive_tournament(24).unwrap();
        let split = equal_split(&t, 8);
        let a0p = VertexSet::from_iter(24, 0..8);
        let f = VertexSet::new(24);
        let step = median_turan(&t, &split, 0, &a0p, &f, 1, RunMode::Opportunistic).unwrap();
        assert_eq!(step.x.len(), 1);
        assert_eq!(step.landing, 1);
        assert_eq!(step.common.len(), 8); // all of A_1
    }

    #[test]
    fn turan_rejects_wrong_pool_size_strict() {
        let t = construct::transitive_tournament(24).unwrap();
        let split = equal_split(&t, 8);
        let a0p = VertexSet::from_iter(24, 0..5);
        let f = VertexSet::new(24);
        assert!(median_turan(&t, &split, 0, &a0p, &f, 1, RunMode::Strict).is_err());
    }

    #[test]
    fn sequence_walks_transitive() {
        // five blocks, k = 1: the walk visits every block in steps of 1
        let t = construct::transitive_tournament(40).unwrap();
        let split = equal_split(&t, 8);
        assert_eq!(split.block_count(), 5);
        let x = VertexSet::from_iter(40, 0..8);
        let f = VertexSet::new(40);
        let chain = median_sequence(&t, &split, 0, &x, &f, 1, RunMode::Opportunistic)
            .map_err(|(e, _)| e)
            .unwrap();
        let idx = chain.block_indices.clone().unwrap();
        // the walk stops as soon as it reaches t-1
        assert_eq!(idx, vec![0, 1, 2, 3]);
        for w in idx.windows(2) {
            assert!(w[1] - w[0] >= 1 && w[1] - w[0] <= 2);
        }
        assert!(*idx.last().unwrap() >= 3); // terminal in {t-1, t}
    }

    #[test]
    fn sequence_on_c3_blowup() {
        // forward blow-up of directed triangles: one vertex per block, k = 1
        let (t, _) = construct::blowup(&[3, 3, 3, 3], InnerGenerator::Paley, 0).unwrap();
        let split = equal_split(&t, 3);
        let block0 = split.block_set(12, 0);
        let sd = greedy_transitive(&t, &block0);
        let x = VertexSet::from_iter(12, sd.iter().copied());
        let f = VertexSet::new(12);
        let chain = median_sequence(&t, &split, 0, &x, &f, 1, RunMode::Opportunistic)
            .map_err(|(e, _)| e)
            .unwrap();
        chain.validate(&t).unwrap();
        assert!(chain.blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn sequence_rejects_forbidden_everything() {
        let t = construct::transitive_tournament(40).unwrap();
        let split = equal_split(&t, 8);
        let x = VertexSet::from_iter(40, 0..8);
        // forbid all of A_1 and A_2
        let f = VertexSet::from_iter(40, 8..24);
        let r = median_sequence(&t, &split, 0, &x, &f, 1, RunMode::Strict);
        assert!(r.is_err());
    }

    #[test]
    fn assemble_path_examples() {
        let t = construct::transitive_tournament(9).unwrap();
        // single transitive block of size n passes for every k
        let chain = TransChain::path(vec![(0..9).collect()]);
        for k in 1..=4 {
            let seq = assemble_path_power(&t, &chain, k).unwrap();
            assert_eq!(seq.len(), 9);
        }

        let bt = forward_blowup(3, 2);
        let chain = TransChain::path(vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        let seq = assemble_path_power(&bt, &chain, 2).unwrap();
        assert_eq!(seq.len(), 6);

        // middle block below k
        let bad = TransChain::path(vec![vec![0, 1], vec![2], vec![4, 5]]);
        assert!(assemble_path_power(&bt, &bad, 2).is_err());
    }

    #[test]
    fn assemble_cycle_examples() {
        let c3 = construct::paley(3).unwrap();
        let chain = TransChain::cycle(vec![vec![0], vec![1], vec![2]]);
        let seq = assemble_cycle_power(&c3, &chain, 1).unwrap();
        assert_eq!(seq, vec![0, 1, 2]);

        // a 2-block cyclic chain needs both orientations between the
        // blocks, which no tournament provides; the wrap check rejects it
        let t = forward_blowup(2, 2);
        let chain = TransChain::cycle(vec![vec![0, 1], vec![2, 3]]);
        assert!(assemble_cycle_power(&t, &chain, 2).is_err());
    }

    #[test]
    fn find_path_power_k1_is_hamiltonian() {
        for seed in 0..5 {
            let t = construct::random_tournament(30, seed).unwrap();
            let res =
                find_path_power(&t, &t.vertices(), 1, 30, seed, &PathPowerParams::default())
                    .unwrap();
            assert_eq!(res.seq.len(), 30);
            assert!(res.target_met);
        }
    }

    #[test]
    fn find_path_power_tt() {
        let t = construct::transitive_tournament(20).unwrap();
        for k in 1..=3 {
            let res = find_path_power(&t, &t.vertices(), k, 20, 0, &PathPowerParams::default())
                .unwrap();
            assert_eq!(res.seq.len(), 20);
        }
    }

    #[test]
    fn find_path_power_c3_k2() {
        let c3 = construct::paley(3).unwrap();
        let res =
            find_path_power(&c3, &c3.vertices(), 2, 3, 0, &PathPowerParams::default()).unwrap();
        assert_eq!(res.seq.len(), 2);
        assert!(!res.target_met);
    }

    #[test]
    fn med_connect_short_on_tt() {
        let t = construct::transitive_tournament(50).unwrap();
        let split = equal_split(&t, 10);
        let a0p = VertexSet::from_iter(50, 0..10);
        let atp = VertexSet::from_iter(50, 40..50);
        let f = VertexSet::new(50);
        let out =
            med_connect_short(&t, &split, &a0p, &atp, &f, 2, 0, 5, RunMode::Opportunistic)
                .unwrap();
        assert!(out.chain.blocks.len() <= 4); // s <= 3
        out.chain.validate(&t).unwrap();
        assert_eq!(out.improvements, 0);
    }

    #[test]
    fn med_connect_on_tt() {
        let t = construct::transitive_tournament(90).unwrap();
        let split = equal_split(&t, 10);
        let x = VertexSet::from_iter(90, 0..8);
        let xp = VertexSet::from_iter(90, 82..90);
        let f = VertexSet::new(90);
        let out = med_connect(&t, &split, &x, &xp, &f, 2, 0, 5, RunMode::Opportunistic).unwrap();
        assert!(out.chain.blocks.len() <= 6); // s <= 5
        out.chain.validate(&t).unwrap();
        assert!(out.chain.blocks[0].iter().all(|&v| v < 10));
        assert!(out.chain.blocks.last().unwrap().iter().all(|&v| v >= 80));
    }

    #[test]
    fn med_connect_rejects_wrong_endpoint_size() {
        let t = construct::transitive_tournament(90).unwrap();
        let split = equal_split(&t, 10);
        let x = VertexSet::from_iter(90, 0..7);
        let xp = VertexSet::from_iter(90, 82..90);
        let f = VertexSet::new(90);
        assert!(med_connect(&t, &split, &x, &xp, &f, 2, 0, 5, RunMode::Opportunistic).is_err());
    }
}
