//! Single-exponential exact solver over job masks: one allocation round per
//! agent, each round a *disjoint* subset convolution of the running
//! reachability polynomial with the agent's feasible-bundle polynomial.
//!
//! Coefficients live on job masks. Grading every polynomial by popcount
//! ("strata") makes disjointness checkable after the fact: when a product
//! term lands on a mask whose popcount equals the sum of the factor sizes,
//! the union was disjoint; overlapping unions fall into lower strata and are
//! discarded by the projection. The fast engine computes each round through
//! zeta transforms, pointwise stratum products, and Möbius inversion —
//! `O(2^m · poly(m))` per round instead of the schoolbook pairing.
//!
//! After every round the coefficients are clamped to 0/1
//! ([`MaskPolynomial::representative`]): only reachability matters, and the
//! clamp keeps every zeta value within `u32` for any `m <= 20`. Clamping is
//! safe because it preserves supports exactly; the schoolbook
//! [`reference_round`] exists so tests can check that claim against the
//! unclamped recursion.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exec;
use crate::model::{ms_since, Instance, SolveReport};

/// Most jobs the fast engine accepts; keeps zeta values within `u32` and the
/// working set within a couple hundred MB.
const MAX_ENGINE_JOBS: usize = 20;

/// Most jobs the family builder and schoolbook helpers accept.
const MAX_FAMILY_JOBS: usize = 22;

/// All feasible bundles of one agent, as bit masks grouped by bundle size.
///
/// `masks_by_size[s]` holds the masks of exactly `s` jobs, ascending. A
/// bundle is feasible when it is conflict-free, within the size cap, and
/// worth at least `eta` to the agent; the empty bundle never qualifies
/// (`eta >= 1`), so index 0 is always empty.
#[derive(Debug, Clone)]
pub struct BundleFamily {
    pub agent: usize,
    pub masks_by_size: Vec<Vec<u64>>,
}

impl BundleFamily {
    pub fn is_empty(&self) -> bool {
        self.masks_by_size.iter().all(|v| v.is_empty())
    }

    pub fn bundle_count(&self) -> u64 {
        self.masks_by_size.iter().map(|v| v.len() as u64).sum()
    }
}

/// Enumerates every agent's feasible bundles by scanning all job masks.
pub fn build_bundle_families(inst: &Instance) -> Result<Vec<BundleFamily>> {
    let m = inst.job_count();
    if m > MAX_FAMILY_JOBS {
        return Err(Error::Capacity(format!(
            "bundle enumeration scans 2^{m} masks; refusing beyond {MAX_FAMILY_JOBS} jobs"
        )));
    }
    let nbr: Vec<u64> = (0..m).map(|v| inst.conflicts().neighbor_mask(v)).collect();
    let size: u64 = 1 << m;
    Ok((0..inst.agent_count())
        .map(|agent| {
            let mut masks_by_size: Vec<Vec<u64>> = vec![Vec::new(); m + 1];
            for mask in 0..size {
                if let Some(cap) = inst.bundle_cap() {
                    if mask.count_ones() as usize > cap {
                        continue;
                    }
                }
                let mut rest = mask;
                let mut independent = true;
                let mut total = 0u64;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if nbr[v] & rest != 0 {
                        independent = false;
                        break;
                    }
                    total = total.saturating_add(inst.utility(agent, v));
                }
                if independent && total >= inst.eta() {
                    masks_by_size[mask.count_ones() as usize].push(mask);
                }
            }
            BundleFamily { agent, masks_by_size }
        })
        .collect())
}

/// Dense nonnegative function on job masks with saturating coefficients.
/// The schoolbook vocabulary backing [`reference_round`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskPolynomial {
    m: usize,
    coeffs: Vec<u64>,
}

impl MaskPolynomial {
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_FAMILY_JOBS, "mask polynomials stop at {MAX_FAMILY_JOBS} jobs");
        MaskPolynomial {
            m,
            coeffs: vec![0; 1 << m],
        }
    }

    /// The multiplicative unit: coefficient 1 on the empty mask.
    pub fn delta_empty(m: usize) -> Self {
        let mut p = MaskPolynomial::zero(m);
        p.coeffs[0] = 1;
        p
    }

    pub fn job_count(&self) -> usize {
        self.m
    }

    pub fn coeff(&self, mask: u64) -> u64 {
        self.coeffs[mask as usize]
    }

    /// Masks with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<u64> {
        (0..self.coeffs.len() as u64)
            .filter(|&x| self.coeffs[x as usize] != 0)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Clamps every nonzero coefficient to 1. Preserves the support — the
    /// only thing later rounds can observe.
    pub fn representative(&self) -> Self {
        MaskPolynomial {
            m: self.m,
            coeffs: self.coeffs.iter().map(|&c| (c != 0) as u64).collect(),
        }
    }

    /// Keeps only coefficients whose mask has exactly `s` bits.
    pub fn hamming_projection(&self, s: usize) -> Self {
        MaskPolynomial {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(x, &c)| if x.count_ones() as usize == s { c } else { 0 })
                .collect(),
        }
    }
}

/// One allocation round, from the definition: every (reachable set, feasible
/// bundle) pair contributes at its *integer sum* of masks, and a term
/// survives only if the popcounts add up — bit carries mark overlapping
/// bundles, which the Hamming check discards. With `clamp` the result is
/// reduced to its 0/1 representative, as the fast engine does each round.
///
/// Quadratic in the supports; this is a reference for tests, not a solver.
pub fn reference_round(prev: &MaskPolynomial, family: &BundleFamily, clamp: bool) -> MaskPolynomial {
    let m = prev.job_count();
    let size = 1u64 << m;
    let mut out = MaskPolynomial::zero(m);
    for x in 0..size {
        let c = prev.coeff(x);
        if c == 0 {
            continue;
        }
        for bundle_masks in &family.masks_by_size {
            for &b in bundle_masks {
                let sum = x + b;
                if sum < size && sum.count_ones() == x.count_ones() + b.count_ones() {
                    out.coeffs[sum as usize] = out.coeffs[sum as usize].saturating_add(c);
                }
            }
        }
    }
    if clamp {
        out.representative()
    } else {
        out
    }
}

/// Verdict-only schoolbook run of the full recursion (all agents), used to
/// cross-check the fast engine and the clamping claim on small instances.
pub fn reference_fpt_verdict(inst: &Instance, clamp: bool) -> Result<bool> {
    let m = inst.job_count();
    let families = build_bundle_families(inst)?;
    let mut p = MaskPolynomial::delta_empty(m);
    for family in &families {
        p = reference_round(&p, family, clamp);
    }
    Ok(!p.is_zero())
}

/// Fast exact solver: `n` rounds of disjoint subset convolution via ranked
/// zeta/Möbius transforms, `O(2^m · poly(m))` per round.
///
/// Verdict: some job set is the disjoint union of feasible bundles, one per
/// agent. The certificate is extracted from the retained per-round strata —
/// smallest reachable stratum first, smallest mask within it, and for each
/// agent the smallest feasible bundle (by size, then mask) that keeps the
/// remainder reachable. Refuses more than 20 jobs.
pub fn solve_fpt_items(inst: &Instance) -> Result<SolveReport> {
    let start = Instant::now();
    let n = inst.agent_count();
    let m = inst.job_count();
    if m > MAX_ENGINE_JOBS {
        return Err(Error::Capacity(format!(
            "subset convolution tabulates 2^{m} masks; refusing beyond {MAX_ENGINE_JOBS} jobs"
        )));
    }
    if n == 0 {
        return SolveReport::verified_yes(inst, "subsetconv", &[], BTreeMap::new(), ms_since(start));
    }
    let families = build_bundle_families(inst)?;
    let total_bundles: u64 = families.iter().map(|f| f.bundle_count()).sum();
    let mut counters = BTreeMap::from([
        ("feasible_bundles".to_string(), total_bundles),
        ("strata_transformed".to_string(), 0),
        ("accumulate_passes".to_string(), 0),
    ]);
    if let Some(fam) = families.iter().find(|f| f.is_empty()) {
        // An agent with no feasible bundle can never be served.
        counters.insert("starved_agent".to_string(), fam.agent as u64);
        return Ok(SolveReport::no("subsetconv", counters, ms_since(start)));
    }

    let size = 1usize << m;
    let words = size.div_ceil(64);

    // rounds[i][s]: bitset over masks X with popcount s reachable as a
    // disjoint union of feasible bundles for agents 0..i.
    let mut rounds: Vec<Vec<Option<Vec<u64>>>> = Vec::with_capacity(n + 1);
    let mut base: Vec<Option<Vec<u64>>> = vec![None; m + 1];
    let mut zero = vec![0u64; words];
    zero[0] = 1;
    base[0] = Some(zero);
    rounds.push(base);

    let mut strata_transformed = 0u64;
    let mut accumulate_passes = 0u64;

    for family in &families {
        let prev = rounds.last().expect("round list is never empty");

        // Zeta transforms of every nonempty stratum of the running
        // polynomial and of this agent's bundle polynomial.
        let p_hat: Vec<Option<Vec<u32>>> = exec::map_indexed(m + 1, |s| {
            prev[s].as_ref().map(|bits| zeta_of_bitset(bits, size))
        });
        let f_hat: Vec<Option<Vec<u32>>> = exec::map_indexed(m + 1, |s| {
            if family.masks_by_size[s].is_empty() {
                None
            } else {
                let mut bits = vec![0u64; words];
                for &b in &family.masks_by_size[s] {
                    bits[(b >> 6) as usize] |= 1 << (b & 63);
                }
                Some(zeta_of_bitset(&bits, size))
            }
        });
        strata_transformed += p_hat.iter().flatten().count() as u64
            + f_hat.iter().flatten().count() as u64;
        for s in 0..=m {
            for sp in 0..=s {
                if p_hat[sp].is_some() && f_hat[s - sp].is_some() {
                    accumulate_passes += 1;
                }
            }
        }

        // Each target stratum s: accumulate stratum products in the zeta
        // domain, invert, keep masks of popcount s with a positive count.
        let next: Vec<Option<Vec<u64>>> = exec::map_indexed(m + 1, |s| {
            let mut acc: Option<Vec<u64>> = None;
            for sp in 0..=s {
                let (Some(ph), Some(fh)) = (&p_hat[sp], &f_hat[s - sp]) else {
                    continue;
                };
                let acc = acc.get_or_insert_with(|| vec![0u64; size]);
                for x in 0..size {
                    acc[x] += ph[x] as u64 * fh[x] as u64;
                }
            }
            let mut acc = acc?;
            mobius_in_place(&mut acc);
            let mut bits = vec![0u64; words];
            let mut any = false;
            for (x, &count) in acc.iter().enumerate() {
                if count > 0 && x.count_ones() as usize == s {
                    bits[x >> 6] |= 1 << (x & 63);
                    any = true;
                }
            }
            any.then_some(bits)
        });
        rounds.push(next);
    }
    counters.insert("strata_transformed".to_string(), strata_transformed);
    counters.insert("accumulate_passes".to_string(), accumulate_passes);

    // Smallest reachable stratum, smallest mask within it.
    let last = rounds.last().expect("round list is never empty");
    let mut chosen: Option<u64> = None;
    'outer: for stratum in last.iter().flatten() {
        for (w, &word) in stratum.iter().enumerate() {
            if word != 0 {
                chosen = Some((w as u64) * 64 + word.trailing_zeros() as u64);
                break 'outer;
            }
        }
    }
    let Some(mut remaining) = chosen else {
        return Ok(SolveReport::no("subsetconv", counters, ms_since(start)));
    };

    // Peel one bundle per agent off the chosen mask, last agent first.
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in (1..=n).rev() {
        let family = &families[i - 1];
        let mut picked: Option<u64> = None;
        'bundle: for masks in &family.masks_by_size {
            for &b in masks {
                if b & remaining != b {
                    continue;
                }
                let rest = remaining ^ b;
                let s_rest = rest.count_ones() as usize;
                if let Some(bits) = &rounds[i - 1][s_rest] {
                    if bits[(rest >> 6) as usize] >> (rest & 63) & 1 == 1 {
                        picked = Some(b);
                        break 'bundle;
                    }
                }
            }
        }
        let Some(b) = picked else {
            return Err(Error::Internal(
                "convolution strata claim a split the backtrack cannot reproduce".into(),
            ));
        };
        bundles[i - 1] = (0..m).filter(|&v| b >> v & 1 == 1).collect();
        remaining ^= b;
    }
    debug_assert_eq!(remaining, 0);
    SolveReport::verified_yes(inst, "subsetconv", &bundles, counters, ms_since(start))
}

/// Zeta transform (sum over submasks) of a 0/1 bitset, dense `u32` output.
/// Safe for `m <= 20`: values are bounded by `2^m`.
fn zeta_of_bitset(bits: &[u64], size: usize) -> Vec<u32> {
    let mut a = vec![0u32; size];
    for (x, slot) in a.iter_mut().enumerate() {
        *slot = (bits[x >> 6] >> (x & 63) & 1) as u32;
    }
    let mut step = 1;
    while step < size {
        for x in 0..size {
            if x & step != 0 {
                a[x] += a[x ^ step];
            }
        }
        step <<= 1;
    }
    a
}

/// In-place Möbius inversion over `u64`. Every intermediate is a mixed
/// zeta/identity transform of a nonnegative function, so the subtractions
/// never underflow on well-formed input.
fn mobius_in_place(a: &mut [u64]) {
    let size = a.len();
    let mut step = 1;
    while step < size {
        for x in 0..size {
            if x & step != 0 {
                a[x] -= a[x ^ step];
            }
        }
        step <<= 1;
    }
}
