//! Integer partitions, the refinement order, and set decompositions.
//!
//! A partition `ν = (ν_1 ≥ ν_2 ≥ … ≥ ν_l)` of `n` indexes one stratum of the
//! symmetric product and one summand of the punctual decomposition.  The
//! refinement order `ν ⪰ μ` holds when the parts of `ν` can be grouped into
//! blocks whose sums are the parts of `μ`; `(1,…,1)` is the finest element and
//! `(n)` the coarsest.  Set decompositions of `{1,…,l(ν)}` make that grouping
//! explicit, and the symmetric group permuting equal parts of `ν` acts on the
//! decompositions lying over a fixed `μ`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num::BigUint;

use crate::error::{Error, Result};

/// A partition of a non-negative integer: weakly decreasing positive parts.
///
/// The empty partition is the unique partition of 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Total orders on the partitions of `n`, both refining the refinement order
/// (finer partitions always enumerate first).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionOrder {
    /// Decreasing length, ties by lexicographically increasing parts.
    /// This is the canonical order used everywhere in the engine.
    FinerFirst,
    /// Decreasing length, ties by lexicographically decreasing parts.
    /// Alternate order; downstream results must not depend on the choice.
    FinerFirstRevLex,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    ///
    /// Panics if `parts` is not weakly decreasing or contains a zero.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive: {parts:?}"
        );
        Partition { parts }
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The weight `n = Σ ν_j`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The number of parts `l(ν)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// All partitions of `n` in the canonical order.
    pub fn enumerate(n: usize) -> Vec<Partition> {
        Self::enumerate_in(n, PartitionOrder::FinerFirst)
    }

    /// All partitions of `n` in the requested order.
    pub fn enumerate_in(n: usize, order: PartitionOrder) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        gen_partitions(n, n, &mut prefix, &mut out);
        match order {
            PartitionOrder::FinerFirst => out.sort_unstable(),
            PartitionOrder::FinerFirstRevLex => out.sort_unstable_by(|a, b| {
                b.len()
                    .cmp(&a.len())
                    .then_with(|| b.parts.cmp(&a.parts))
            }),
        }
        out
    }

    /// The signed coefficient `m_ν = (−1)^{n−l(ν)} ν_1 ν_2 ⋯ ν_l`.
    pub fn m_coeff(&self) -> i64 {
        let prod: i64 = self
            .parts
            .iter()
            .fold(1i64, |acc, &p| acc.checked_mul(p as i64).expect("m_nu overflow"));
        if (self.weight() - self.len()).is_multiple_of(2) {
            prod
        } else {
            -prod
        }
    }

    /// Whether `self ⪰ coarser`: the parts of `self` admit a grouping whose
    /// block sums are the parts of `coarser`.  Both must have the same weight.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        if self.weight() != coarser.weight() {
            return Err(Error::WeightMismatch {
                left: self.weight(),
                right: coarser.weight(),
            });
        }
        let mut remaining = self.parts.clone();
        let mut capacities = coarser.parts.clone();
        Ok(fill_blocks(&mut remaining, &mut capacities))
    }

    /// Dimensions attached to the stratum of `ν`: the locus in the symmetric
    /// product has dimension `2 l(ν)`, its preimage in the Hilbert scheme has
    /// dimension `n + l(ν)`.
    pub fn stratum_dims(&self) -> (usize, usize) {
        (2 * self.len(), self.weight() + self.len())
    }

    /// The multiplicity vector `1^{a_1} 2^{a_2} ⋯` of this partition.
    pub fn multiplicities(&self) -> MultiplicityVector {
        MultiplicityVector::from_partition(self)
    }
}

/// Canonical order: finer partitions first (decreasing length), ties broken by
/// lexicographically increasing parts.  `BTreeMap` keys iterate in this order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

fn gen_partitions(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: prefix.clone() });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        prefix.push(part);
        gen_partitions(remaining - part, part, prefix, out);
        prefix.pop();
    }
}

// Greedy backtracking: place the largest remaining part into each block with
// enough capacity, skipping blocks of equal remaining capacity.
fn fill_blocks(remaining: &mut Vec<usize>, capacities: &mut Vec<usize>) -> bool {
    let Some(part) = remaining.pop() else {
        return capacities.iter().all(|&c| c == 0);
    };
    let mut tried = HashSet::new();
    for i in 0..capacities.len() {
        if capacities[i] >= part && tried.insert(capacities[i]) {
            capacities[i] -= part;
            if fill_blocks(remaining, capacities) {
                capacities[i] += part;
                remaining.push(part);
                return true;
            }
            capacities[i] += part;
        }
    }
    remaining.push(part);
    false
}

/// Number of partitions of `n`, by the dense two-variable recurrence.
pub fn partition_count(n: usize) -> u64 {
    // table[k] = number of partitions of the current weight with parts ≤ k
    let mut table = vec![vec![0u64; n + 1]; n + 1];
    for row in table.iter_mut() {
        row[0] = 1;
    }
    for w in 1..=n {
        for k in 1..=n {
            table[k][w] = table[k - 1][w] + if w >= k { table[k][w - k] } else { 0 };
        }
    }
    table[n][n]
}

/// The multiplicity form of a partition: `a_m` counts the parts equal to `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    mult: BTreeMap<usize, u32>,
}

impl MultiplicityVector {
    pub fn from_partition(nu: &Partition) -> Self {
        let mut mult = BTreeMap::new();
        for &p in nu.parts() {
            *mult.entry(p).or_insert(0) += 1;
        }
        MultiplicityVector { mult }
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (&m, &a) in self.mult.iter().rev() {
            for _ in 0..a {
                parts.push(m);
            }
        }
        Partition::new(parts)
    }

    /// Multiplicity of the part `m`.
    pub fn get(&self, m: usize) -> u32 {
        self.mult.get(&m).copied().unwrap_or(0)
    }

    /// Pairs `(m, a_m)` with `a_m > 0`, in increasing `m`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.mult.iter().map(|(&m, &a)| (m, a))
    }

    /// Order of the group permuting equal parts: `∏_m a_m!`.  Exact — the
    /// factorials outgrow machine integers around 21!.
    pub fn sigma_order(&self) -> BigUint {
        self.mult.values().map(|&a| factorial(a)).product()
    }
}

fn factorial(k: u32) -> BigUint {
    (1..=u64::from(k)).map(BigUint::from).product()
}

/// A set decomposition of `{1,…,l}`: disjoint non-empty blocks covering the
/// whole index set.  Blocks are stored sorted, ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetDecomposition {
    blocks: Vec<Vec<usize>>,
}

impl SetDecomposition {
    /// Builds a decomposition from blocks in any order.
    ///
    /// Panics unless the blocks are non-empty, disjoint, and cover `{1,…,l}`
    /// where `l` is the total number of elements.
    pub fn new(blocks: Vec<Vec<usize>>) -> Self {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        assert!(blocks.iter().all(|b| !b.is_empty()), "empty block");
        blocks.sort_unstable();
        let mut seen: Vec<usize> = blocks.iter().flatten().copied().collect();
        let l = seen.len();
        seen.sort_unstable();
        assert!(
            seen.iter().enumerate().all(|(i, &e)| e == i + 1),
            "blocks must exactly cover {{1,..,{l}}}: {blocks:?}"
        );
        SetDecomposition { blocks }
    }

    /// All decompositions of `{1,…,l}`, enumerated by restricted growth
    /// strings: `a_1 = 0` and `a_{i} ≤ 1 + max(a_1,…,a_{i−1})`.
    pub fn enumerate(l: usize) -> Vec<SetDecomposition> {
        if l == 0 {
            return vec![SetDecomposition { blocks: Vec::new() }];
        }
        let mut out = Vec::new();
        let mut rgs = vec![0usize; l];
        loop {
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for (i, &b) in rgs.iter().enumerate() {
                if b == blocks.len() {
                    blocks.push(Vec::new());
                }
                blocks[b].push(i + 1);
            }
            out.push(SetDecomposition { blocks });

            // advance the growth string
            let mut i = l;
            loop {
                if i == 1 {
                    return out;
                }
                i -= 1;
                let cap = 1 + rgs[..i].iter().copied().max().unwrap();
                if rgs[i] < cap {
                    rgs[i] += 1;
                    for v in rgs[i + 1..].iter_mut() {
                        *v = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of elements covered.
    pub fn ground(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// Relabels every element through `perm` (1-based) and re-canonicalizes.
    fn relabel(&self, perm: &[usize]) -> SetDecomposition {
        SetDecomposition::new(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&e| perm[e - 1]).collect())
                .collect(),
        )
    }
}

impl fmt::Display for SetDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, e) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Blocks of `rho` in the canonical presentation order for the ambient `nu`:
/// decreasing block sum, ties by lexicographically smallest block content.
pub fn ordered_blocks(nu: &Partition, rho: &SetDecomposition) -> Result<Vec<Vec<usize>>> {
    if rho.ground() != nu.len() {
        return Err(Error::GroundMismatch {
            expected: nu.len(),
            found: rho.ground(),
        });
    }
    let mut blocks: Vec<(usize, Vec<usize>)> = rho
        .blocks()
        .iter()
        .map(|b| (b.iter().map(|&e| nu.parts()[e - 1]).sum(), b.clone()))
        .collect();
    blocks.sort_by(|(sa, ba), (sb, bb)| sb.cmp(sa).then_with(|| ba.cmp(bb)));
    Ok(blocks.into_iter().map(|(_, b)| b).collect())
}

/// The partition of block sums `Q_ν(ρ)`: sums of `ν`-parts over each block of
/// `ρ`, sorted decreasingly.
pub fn q_map(nu: &Partition, rho: &SetDecomposition) -> Result<Partition> {
    let blocks = ordered_blocks(nu, rho)?;
    let sums = blocks
        .iter()
        .map(|b| b.iter().map(|&e| nu.parts()[e - 1]).sum())
        .collect();
    Ok(Partition::new(sums))
}

/// The fiber `Q_ν^{-1}(μ)`: exactly those decompositions of `{1,…,l(ν)}`
/// whose block sums give `μ`.  Empty when `ν` does not refine `μ`.
pub fn q_fiber(nu: &Partition, mu: &Partition) -> Vec<SetDecomposition> {
    SetDecomposition::enumerate(nu.len())
        .into_iter()
        .filter(|rho| q_map(nu, rho).as_ref() == Ok(mu))
        .collect()
}

/// Orbits of the fiber `Q_ν^{-1}(μ)` under the group permuting equal parts of
/// `ν`.  Each orbit is sorted, with its least element first; orbits are sorted
/// by their representatives.
pub fn sigma_orbits(nu: &Partition, mu: &Partition) -> Vec<Vec<SetDecomposition>> {
    let fiber: HashSet<SetDecomposition> = q_fiber(nu, mu).into_iter().collect();
    // adjacent transpositions inside each run of equal parts generate the group
    let mut generators: Vec<Vec<usize>> = Vec::new();
    for i in 1..nu.len() {
        if nu.parts()[i - 1] == nu.parts()[i] {
            let mut perm: Vec<usize> = (1..=nu.len()).collect();
            perm.swap(i - 1, i);
            generators.push(perm);
        }
    }

    let mut seen: HashSet<SetDecomposition> = HashSet::new();
    let mut orbits = Vec::new();
    let mut fiber_sorted: Vec<SetDecomposition> = fiber.iter().cloned().collect();
    fiber_sorted.sort_unstable();
    for start in fiber_sorted {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start.clone()];
        seen.insert(start.clone());
        let mut queue: VecDeque<SetDecomposition> = VecDeque::from([start]);
        while let Some(rho) = queue.pop_front() {
            for perm in &generators {
                let image = rho.relabel(perm);
                debug_assert!(fiber.contains(&image), "orbit left the fiber");
                if seen.insert(image.clone()) {
                    orbit.push(image.clone());
                    queue.push_back(image);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits.sort_unstable();
    orbits
}

/// A multipartition of `μ`: one partition `η^i` of each part `μ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multipartition {
    components: Vec<Partition>,
}

impl Multipartition {
    /// Panics unless component weights are weakly decreasing, so that they
    /// form the parts of a partition.
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(
            components.windows(2).all(|w| w[0].weight() >= w[1].weight()),
            "component weights must be weakly decreasing"
        );
        Multipartition { components }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    /// The partition whose parts are the component weights.
    pub fn target(&self) -> Partition {
        Partition::new(self.components.iter().map(|c| c.weight()).collect())
    }

    /// All multipartitions of `μ`, components in canonical partition order,
    /// earlier components varying slowest.  There are `∏_i p(μ_i)` of them.
    pub fn enumerate(mu: &Partition) -> Vec<Multipartition> {
        let choices: Vec<Vec<Partition>> =
            mu.parts().iter().map(|&m| Partition::enumerate(m)).collect();
        let mut out = vec![Multipartition { components: Vec::new() }];
        for options in choices {
            let mut next = Vec::with_capacity(out.len() * options.len());
            for stem in out {
                for opt in &options {
                    let mut components = stem.components.clone();
                    components.push(opt.clone());
                    next.push(Multipartition { components });
                }
            }
            out = next;
        }
        out
    }

    /// Canonical representative under the permutations of components with
    /// equal weight: each run of equal-weight components is sorted.
    pub fn orbit_canonical(&self) -> Multipartition {
        let mut components = self.components.clone();
        let mut i = 0;
        while i < components.len() {
            let mut j = i;
            while j < components.len() && components[j].weight() == components[i].weight() {
                j += 1;
            }
            components[i..j].sort_unstable();
            i = j;
        }
        Multipartition { components }
    }

    /// Whether two multipartitions of the same `μ` differ only by permuting
    /// components of equal weight.
    pub fn same_orbit(&self, other: &Multipartition) -> bool {
        self.orbit_canonical() == other.orbit_canonical()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The multipartition read off from `(ν, ρ)`: for each block of `ρ` in the
/// canonical order, the parts of `ν` indexed by that block.
pub fn multipartition_of(nu: &Partition, rho: &SetDecomposition) -> Result<Multipartition> {
    let blocks = ordered_blocks(nu, rho)?;
    Ok(Multipartition::new(
        blocks
            .iter()
            .map(|b| Partition::from_unsorted(b.iter().map(|&e| nu.parts()[e - 1]).collect()))
            .collect(),
    ))
}

/// One round trip of the orbit correspondence for a single multipartition.
#[derive(Clone, Debug)]
pub struct OrbitWitness {
    pub eta: Multipartition,
    pub nu: Partition,
    pub rho: SetDecomposition,
    pub eta_hat: Multipartition,
    pub same_orbit: bool,
}

/// Outcome of [`orbit_bijection_check`].
#[derive(Clone, Debug)]
pub struct OrbitBijectionReport {
    pub mu: Partition,
    pub witnesses: Vec<OrbitWitness>,
    pub holds: bool,
}

/// For every multipartition `η` of `μ`: concatenate its parts, sort them into
/// a partition `ν`, record where each component's parts land as a block of a
/// set decomposition `ρ` over `μ`, read the multipartition back off `(ν, ρ)`,
/// and confirm the round trip lands in the orbit of `η` under permutations of
/// equal-weight components.
pub fn orbit_bijection_check(mu: &Partition) -> OrbitBijectionReport {
    let mut witnesses = Vec::new();
    for eta in Multipartition::enumerate(mu) {
        let concat: Vec<usize> = eta
            .components()
            .iter()
            .flat_map(|c| c.parts().iter().copied())
            .collect();
        let l = concat.len();
        // stable argsort by decreasing part value: tau[j] = source position
        let mut tau: Vec<usize> = (0..l).collect();
        tau.sort_by(|&a, &b| concat[b].cmp(&concat[a]).then(a.cmp(&b)));
        let nu = Partition::new(tau.iter().map(|&p| concat[p]).collect());
        // sigma = tau^{-1}: sends a source position to its slot in nu
        let mut sigma = vec![0usize; l];
        for (j, &p) in tau.iter().enumerate() {
            sigma[p] = j;
        }
        let mut blocks = Vec::new();
        let mut pos = 0;
        for c in eta.components() {
            blocks.push(
                (pos..pos + c.len()).map(|p| sigma[p] + 1).collect::<Vec<usize>>(),
            );
            pos += c.len();
        }
        let rho = SetDecomposition::new(blocks);
        debug_assert_eq!(q_map(&nu, &rho).as_ref(), Ok(mu));
        let eta_hat = multipartition_of(&nu, &rho).expect("round trip over the same ground set");
        let same_orbit = eta.same_orbit(&eta_hat);
        witnesses.push(OrbitWitness { eta, nu, rho, eta_hat, same_orbit });
    }
    let holds = witnesses.iter().all(|w| w.same_orbit);
    OrbitBijectionReport { mu: mu.clone(), witnesses, holds }
}
