//! Searching for an indistinguishable pair within bounds `(t, s)`.
//!
//! Three strategies answer the same question.
//!
//! * [`Strategy::Literal`] lists every consistent pair with explicit edge
//!   sets and compares all of them with the forced-outcome oracle. It is the
//!   reference and only feasible on tiny graphs.
//! * [`Strategy::Full`] enumerates pairs of vertex sets `F_1 ≠ F_2` only.
//!   Once the vertex sets are fixed the smallest edge sets that keep the
//!   pair indistinguishable are forced: `S_2` must hold every edge from
//!   `F_1 ∖ F_2` to a vertex outside `F_1 ∪ F_2` and symmetrically for
//!   `S_1`. Pairs with `F_1 = F_2` are always distinguishable.
//! * [`Strategy::Local`] additionally uses that a witness survives
//!   restriction to the connected component of `F_1 ∪ F_2` that contains a
//!   vertex of `F_1 Δ F_2`. It grows connected unions from a seed vertex and
//!   decides each boundary vertex in turn. On hypercubes the seed is fixed
//!   to `0^n` by vertex-transitivity.
//!
//! Work is split into ordered units. Units run in batches, possibly in
//! parallel, and the witness of the lowest-numbered successful unit wins,
//! so results and statistics do not depend on the thread count.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::distinguish::forced_conflict;
use crate::error::{Error, Result};
use crate::fault::FaultPair;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[default]
    Local,
    Full,
    Literal,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub strategy: Strategy,
    /// Worker threads; 0 and 1 both mean sequential.
    pub jobs: usize,
    /// Seed only `0^n` on hypercubes.
    pub use_symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            strategy: Strategy::Local,
            jobs: 1,
            use_symmetry: true,
        }
    }
}

impl SearchOptions {
    pub fn with_strategy(strategy: Strategy) -> Self {
        SearchOptions {
            strategy,
            ..Self::default()
        }
    }

    /// Full enumeration without symmetry shortcuts.
    pub fn audit() -> Self {
        SearchOptions {
            strategy: Strategy::Full,
            jobs: 1,
            use_symmetry: false,
        }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Candidate pairs (literal, full) or search nodes (local) visited.
    pub candidates_examined: u64,
    /// Branches cut by a bound.
    pub pruned: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, rhs: Self) {
        self.candidates_examined += rhs.candidates_examined;
        self.pruned += rhs.pruned;
    }
}

/// Outcome of one `(t, s)` query.
#[derive(Debug, Clone)]
pub struct TsCheck {
    pub diagnosable: bool,
    pub witness: Option<(FaultPair, FaultPair)>,
    pub stats: SearchStats,
}

/// Largest graph the mask-based strategies handle.
pub const MASK_VERTEX_LIMIT: usize = 128;
/// Largest number of consistent pairs the literal strategy will list.
pub const LITERAL_PAIR_LIMIT: usize = 20_000;
/// Largest number of vertex sets the full strategy will list.
pub const FULL_SET_LIMIT: usize = 150_000;

/// Whether every two distinct consistent pairs with `|F_i| ≤ t` and
/// `|S_i| ≤ s` are distinguishable, using the default local search.
pub fn is_ts_diagnosable(g: &Graph, t: usize, s: usize) -> Result<TsCheck> {
    is_ts_diagnosable_with(g, t, s, &SearchOptions::default())
}

pub fn is_ts_diagnosable_with(g: &Graph, t: usize, s: usize, opts: &SearchOptions) -> Result<TsCheck> {
    let (witness, stats) = match opts.strategy {
        Strategy::Literal => literal(g, t, s, opts.jobs)?,
        Strategy::Full => full(g, t, s, opts.jobs)?,
        Strategy::Local => local(g, t, s, opts)?,
    };
    Ok(TsCheck {
        diagnosable: witness.is_none(),
        witness,
        stats,
    })
}

struct UnitResult<W> {
    stats: SearchStats,
    witness: Option<W>,
}

fn run_units<W, F>(count: usize, jobs: usize, unit: F) -> Result<(Option<W>, SearchStats)>
where
    W: Send,
    F: Fn(usize) -> UnitResult<W> + Sync,
{
    let mut total = SearchStats::default();
    if jobs <= 1 {
        for i in 0..count {
            let r = unit(i);
            total += r.stats;
            if r.witness.is_some() {
                return Ok((r.witness, total));
            }
        }
        return Ok((None, total));
    }

    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {jobs} workers: {e}")))?;
    let batch = jobs * 8;
    let mut start = 0;
    while start < count {
        let end = (start + batch).min(count);
        let results: Vec<UnitResult<W>> =
            pool.install(|| (start..end).into_par_iter().map(&unit).collect());
        for r in results {
            total += r.stats;
            if r.witness.is_some() {
                return Ok((r.witness, total));
            }
        }
        start = end;
    }
    Ok((None, total))
}

/// k-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let next = {
            let c = current.as_mut().expect("checked above");
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - k + i {
                    c[i] += 1;
                    for j in i + 1..k {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(());
                }
            }
        };
        if next.is_none() {
            current = None;
        }
        Some(out)
    })
}

fn literal(g: &Graph, t: usize, s: usize, jobs: usize) -> Result<(Option<(FaultPair, FaultPair)>, SearchStats)> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut pairs = Vec::new();
    for f in 0..=t.min(n) {
        for fset in combinations(n, f) {
            let mut vm = FixedBitSet::with_capacity(n);
            fset.iter().for_each(|&v| vm.insert(v));
            let free: Vec<usize> = (0..m)
                .filter(|&k| {
                    let (a, b) = g.edges()[k].endpoints();
                    !vm.contains(a.0) && !vm.contains(b.0)
                })
                .collect();
            for size in 0..=s.min(free.len()) {
                for pick in combinations(free.len(), size) {
                    let mut em = FixedBitSet::with_capacity(m);
                    pick.iter().for_each(|&i| em.insert(free[i]));
                    pairs.push(FaultPair::from_masks(g, vm.clone(), em));
                    if pairs.len() > LITERAL_PAIR_LIMIT {
                        return Err(Error::TooLarge {
                            what: "consistent pair count for literal search",
                            limit: LITERAL_PAIR_LIMIT,
                        });
                    }
                }
            }
        }
    }
    debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    run_units(pairs.len(), jobs, |j| {
        let mut stats = SearchStats::default();
        for i in 0..j {
            stats.candidates_examined += 1;
            if !forced_conflict(g, &pairs[i], &pairs[j]) {
                return UnitResult {
                    stats,
                    witness: Some((pairs[i].clone(), pairs[j].clone())),
                };
            }
        }
        UnitResult { stats, witness: None }
    })
}

fn neighbour_masks(g: &Graph) -> Result<Vec<u128>> {
    if g.vertex_count() > MASK_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "vertex count for the full and local strategies",
            limit: MASK_VERTEX_LIMIT,
        });
    }
    Ok((0..g.vertex_count())
        .map(|u| g.adj(u).iter().fold(0u128, |m, v| m | 1 << v.0))
        .collect())
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn ones(mask: u128) -> u32 {
    mask.count_ones()
}

/// Edges from `side` to `out`, or `None` once more than `s`.
fn boundary_cost(nbr: &[u128], side: u128, out: u128, s: usize) -> Option<usize> {
    let mut cost = 0;
    for x in bits(side) {
        cost += ones(nbr[x] & out) as usize;
        if cost > s {
            return None;
        }
    }
    Some(cost)
}

/// Turns `F_1 = a ∪ c`, `F_2 = b ∪ c` into the pair with minimal forced
/// edge sets.
fn pair_from_masks(g: &Graph, a: u128, b: u128, c: u128) -> (FaultPair, FaultPair) {
    let n = g.vertex_count();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let out = all & !(a | b | c);
    let vset = |mask: u128| {
        let mut vm = FixedBitSet::with_capacity(n);
        bits(mask).for_each(|v| vm.insert(v));
        vm
    };
    let eset = |side: u128| {
        let mut em = FixedBitSet::with_capacity(g.edge_count());
        for x in bits(side) {
            for (k, &y) in g.inc(x).iter().zip(g.adj(x)) {
                if out >> y.0 & 1 == 1 {
                    em.insert(*k);
                }
            }
        }
        em
    };
    (
        FaultPair::from_masks(g, vset(a | c), eset(b)),
        FaultPair::from_masks(g, vset(b | c), eset(a)),
    )
}

fn full(g: &Graph, t: usize, s: usize, jobs: usize) -> Result<(Option<(FaultPair, FaultPair)>, SearchStats)> {
    let nbr = neighbour_masks(g)?;
    let n = g.vertex_count();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut sets: Vec<u128> = Vec::new();
    for f in 0..=t.min(n) {
        for c in combinations(n, f) {
            sets.push(c.iter().fold(0u128, |m, &v| m | 1 << v));
            if sets.len() > FULL_SET_LIMIT {
                return Err(Error::TooLarge {
                    what: "vertex set count for full search",
                    limit: FULL_SET_LIMIT,
                });
            }
        }
    }
    let found = run_units(sets.len(), jobs, |j| {
        let mut stats = SearchStats::default();
        let f2 = sets[j];
        for &f1 in &sets[..j] {
            stats.candidates_examined += 1;
            let out = all & !(f1 | f2);
            let (a, b) = (f1 & !f2, f2 & !f1);
            if boundary_cost(&nbr, a, out, s).is_some() && boundary_cost(&nbr, b, out, s).is_some() {
                return UnitResult {
                    stats,
                    witness: Some((a, b, f1 & f2)),
                };
            }
        }
        UnitResult { stats, witness: None }
    })?;
    Ok((found.0.map(|(a, b, c)| pair_from_masks(g, a, b, c)), found.1))
}

#[derive(Clone, Copy)]
struct Frontier {
    a: u128,
    b: u128,
    c: u128,
    out: u128,
    // neighbourhoods of a, b and a ∪ b ∪ c
    na: u128,
    nb: u128,
    nu: u128,
    cost_a: usize,
    cost_b: usize,
}

struct LocalSearch<'a> {
    nbr: &'a [u128],
    t: usize,
    s: usize,
    seed: usize,
    restrict_below: bool,
}

impl LocalSearch<'_> {
    fn dfs(&self, st: Frontier, stats: &mut SearchStats) -> Option<Frontier> {
        stats.candidates_examined += 1;
        let union = st.a | st.b | st.c;
        let frontier = st.nu & !union & !st.out;
        if frontier == 0 {
            return Some(st);
        }

        let (na_, nb_, nc_) = (ones(st.a) as usize, ones(st.b) as usize, ones(st.c) as usize);
        let room1 = self.t - na_ - nc_;
        let room2 = self.t - nb_ - nc_;
        // Each undecided neighbour of A takes a slot in F_1 or F_2, or adds
        // at least one edge to S_2.
        if ones(st.na & frontier) as usize > room1 + room2 + (self.s - st.cost_a)
            || ones(st.nb & frontier) as usize > room1 + room2 + (self.s - st.cost_b)
        {
            stats.pruned += 1;
            return None;
        }

        let w = frontier.trailing_zeros() as usize;
        let bit = 1u128 << w;
        let nw = self.nbr[w];
        let may_differ = !self.restrict_below || w > self.seed;

        if may_differ && room1 > 0 {
            let extra = ones(nw & st.out) as usize;
            if st.cost_a + extra <= self.s {
                let next = Frontier {
                    a: st.a | bit,
                    na: st.na | nw,
                    nu: st.nu | nw,
                    cost_a: st.cost_a + extra,
                    ..st
                };
                if let Some(found) = self.dfs(next, stats) {
                    return Some(found);
                }
            } else {
                stats.pruned += 1;
            }
        }
        if may_differ && room2 > 0 {
            let extra = ones(nw & st.out) as usize;
            if st.cost_b + extra <= self.s {
                let next = Frontier {
                    b: st.b | bit,
                    nb: st.nb | nw,
                    nu: st.nu | nw,
                    cost_b: st.cost_b + extra,
                    ..st
                };
                if let Some(found) = self.dfs(next, stats) {
                    return Some(found);
                }
            } else {
                stats.pruned += 1;
            }
        }
        if room1 > 0 && room2 > 0 {
            let next = Frontier {
                c: st.c | bit,
                nu: st.nu | nw,
                ..st
            };
            if let Some(found) = self.dfs(next, stats) {
                return Some(found);
            }
        }
        let cost_a = st.cost_a + ones(nw & st.a) as usize;
        let cost_b = st.cost_b + ones(nw & st.b) as usize;
        if cost_a <= self.s && cost_b <= self.s {
            let next = Frontier {
                out: st.out | bit,
                cost_a,
                cost_b,
                ..st
            };
            if let Some(found) = self.dfs(next, stats) {
                return Some(found);
            }
        } else {
            stats.pruned += 1;
        }
        None
    }
}

fn local(g: &Graph, t: usize, s: usize, opts: &SearchOptions) -> Result<(Option<(FaultPair, FaultPair)>, SearchStats)> {
    let nbr = neighbour_masks(g)?;
    let n = g.vertex_count();
    if t == 0 || n == 0 {
        return Ok((None, SearchStats::default()));
    }
    let symmetric = opts.use_symmetry && g.topology().is_hypercube();
    let seeds: Vec<usize> = if symmetric { vec![0] } else { (0..n).collect() };
    let found = run_units(seeds.len(), opts.jobs, |i| {
        let seed = seeds[i];
        let search = LocalSearch {
            nbr: &nbr,
            t,
            s,
            seed,
            restrict_below: !symmetric,
        };
        let bit = 1u128 << seed;
        let start = Frontier {
            a: bit,
            b: 0,
            c: 0,
            out: 0,
            na: nbr[seed],
            nb: 0,
            nu: nbr[seed],
            cost_a: 0,
            cost_b: 0,
        };
        let mut stats = SearchStats::default();
        let witness = search.dfs(start, &mut stats).map(|st| (st.a, st.b, st.c));
        UnitResult { stats, witness }
    })?;
    Ok((found.0.map(|(a, b, c)| pair_from_masks(g, a, b, c)), found.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distinguish::distinguishable_lemma1;
    use crate::hypercube::build_hypercube;
    use crate::topology::{complete, cycle, path, random_connected};

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(combinations(8, 3).count(), 56);
    }

    fn agree(g: &Graph, t: usize, s: usize) {
        let lit = is_ts_diagnosable_with(g, t, s, &SearchOptions::with_strategy(Strategy::Literal)).unwrap();
        let full = is_ts_diagnosable_with(g, t, s, &SearchOptions::with_strategy(Strategy::Full)).unwrap();
        let loc = is_ts_diagnosable_with(g, t, s, &SearchOptions::default()).unwrap();
        let loc_nosym = is_ts_diagnosable_with(
            g,
            t,
            s,
            &SearchOptions {
                use_symmetry: false,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(lit.diagnosable, full.diagnosable, "{} t={t} s={s}", g.topology());
        assert_eq!(lit.diagnosable, loc.diagnosable, "{} t={t} s={s}", g.topology());
        assert_eq!(lit.diagnosable, loc_nosym.diagnosable, "{} t={t} s={s}", g.topology());
        for check in [&lit, &full, &loc, &loc_nosym] {
            if let Some((p1, p2)) = &check.witness {
                assert_ne!(p1, p2);
                assert!(p1.within_bounds(t, s) && p2.within_bounds(t, s));
                assert!(!distinguishable_lemma1(g, p1, p2).unwrap().distinguishable);
            }
        }
    }

    #[test]
    fn strategies_agree_on_small_graphs() {
        let graphs = [
            build_hypercube(2).unwrap(),
            build_hypercube(3).unwrap(),
            cycle(5).unwrap(),
            complete(4).unwrap(),
            path(4).unwrap(),
            random_connected(6, 0.5, 7, 2).unwrap(),
        ];
        for g in &graphs {
            for t in 0..=3 {
                for s in 0..=2 {
                    agree(g, t, s);
                }
            }
        }
    }

    #[test]
    fn parallel_runs_match_sequential() {
        let g = random_connected(8, 0.5, 3, 2).unwrap();
        for strategy in [Strategy::Literal, Strategy::Full, Strategy::Local] {
            for (t, s) in [(1, 1), (2, 0), (2, 1), (3, 1)] {
                let one = is_ts_diagnosable_with(&g, t, s, &SearchOptions::with_strategy(strategy)).unwrap();
                let four =
                    is_ts_diagnosable_with(&g, t, s, &SearchOptions::with_strategy(strategy).jobs(4)).unwrap();
                assert_eq!(one.diagnosable, four.diagnosable);
                assert_eq!(one.witness, four.witness);
                assert_eq!(one.stats, four.stats);
            }
        }
    }

    #[test]
    fn literal_refuses_huge_inputs() {
        let g = build_hypercube(5).unwrap();
        let err = is_ts_diagnosable_with(&g, 4, 2, &SearchOptions::with_strategy(Strategy::Literal)).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
    }
}
