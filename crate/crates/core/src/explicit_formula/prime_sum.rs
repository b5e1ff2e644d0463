use rayon::prelude::*;

use crate::error::Result;
use crate::numerics::{tree_reduce, NeumaierSum};
use crate::sieve::{PrimePowerBlock, SegmentedSieve};
use crate::weights::{ExactWeight, Phase, TildeWeight, WeightParams};

/// Which test function the prime sum uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    /// Hermite-recurrence weight, `k ≤ K_EXACT_MAX`.
    Exact,
    /// Gaussian-cosine approximation.
    Asymptotic(Phase),
}

impl Default for WeightKind {
    fn default() -> Self {
        WeightKind::Asymptotic(Phase::Derived)
    }
}

/// A weight ready for evaluation at `ln n`.
#[derive(Clone, Copy, Debug)]
pub enum Kernel {
    Exact(ExactWeight),
    Tilde(TildeWeight),
}

impl Kernel {
    pub fn new(p: &WeightParams, kind: WeightKind) -> Result<Self> {
        Ok(match kind {
            WeightKind::Exact => Kernel::Exact(ExactWeight::new(p)?),
            WeightKind::Asymptotic(ph) => Kernel::Tilde(TildeWeight::new(p, ph)),
        })
    }

    #[inline]
    pub fn eval(&self, ln_x: f64) -> f64 {
        match self {
            Kernel::Exact(w) => w.eval(ln_x),
            Kernel::Tilde(w) => w.eval(ln_x),
        }
    }
}

/// `Σ_{lo < n ≤ hi} Λ(n) w(n)`.
#[derive(Clone, Copy, Debug)]
pub struct SumJob {
    pub kernel: Kernel,
    pub lo: u64,
    pub hi: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimeSum {
    pub value: f64,
    /// Number of prime powers in the range.
    pub terms: u64,
}

/// Prime powers per compensated partial sum.
const CHUNK: usize = 1 << 13;

/// Sieve blocks held in memory at once.
const BATCH_BLOCKS: usize = 8;

/// Evaluates every job with a single sieve pass up to the largest `hi`.
///
/// Partial sums are taken over fixed chunks of each block and combined by
/// `tree_reduce` in block order, so results do not depend on the thread count.
pub fn prime_sums(jobs: &[SumJob]) -> Result<Vec<PrimeSum>> {
    let limit = jobs.iter().map(|j| j.hi).max().unwrap_or(0);
    let sieve = SegmentedSieve::new(limit)?;
    let nb = sieve.block_count();
    let mut partials: Vec<Vec<NeumaierSum>> = vec![Vec::new(); jobs.len()];
    let mut terms = vec![0u64; jobs.len()];
    for start in (0..nb).step_by(BATCH_BLOCKS) {
        let end = (start + BATCH_BLOCKS).min(nb);
        let blocks: Vec<PrimePowerBlock> = (start..end).into_par_iter().map(|b| sieve.block(b)).collect();
        let results: Vec<(Vec<NeumaierSum>, u64)> = jobs.par_iter().map(|job| job_partials(&blocks, job)).collect();
        for (i, (parts, t)) in results.into_iter().enumerate() {
            partials[i].extend(parts);
            terms[i] += t;
        }
    }
    Ok(partials
        .iter()
        .zip(terms)
        .map(|(parts, t)| PrimeSum { value: tree_reduce(parts).value(), terms: t })
        .collect())
}

fn job_partials(blocks: &[PrimePowerBlock], job: &SumJob) -> (Vec<NeumaierSum>, u64) {
    let mut out = Vec::new();
    let mut terms = 0;
    for blk in blocks {
        let a = blk.ns.partition_point(|&n| n <= job.lo);
        let b = blk.ns.partition_point(|&n| n <= job.hi);
        if a >= b {
            continue;
        }
        terms += (b - a) as u64;
        let first = a / CHUNK;
        let last = (b - 1) / CHUNK;
        let parts: Vec<NeumaierSum> = (first..=last)
            .into_par_iter()
            .map(|c| {
                let lo = (c * CHUNK).max(a);
                let hi = ((c + 1) * CHUNK).min(b);
                let mut s = NeumaierSum::new();
                for i in lo..hi {
                    s.add(blk.lambdas[i] * job.kernel.eval((blk.ns[i] as f64).ln()));
                }
                s
            })
            .collect();
        out.extend(parts);
    }
    (out, terms)
}

/// `Σ_{lo < n ≤ hi} Λ(n) w(n)` for one weight.
pub fn prime_sum_range(p: &WeightParams, kind: WeightKind, lo: u64, hi: u64) -> Result<PrimeSum> {
    let kernel = Kernel::new(p, kind)?;
    Ok(prime_sums(&[SumJob { kernel, lo, hi }])?[0])
}
