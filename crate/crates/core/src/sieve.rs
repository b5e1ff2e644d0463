//! Segmented sieve for the von Mangoldt function `Λ(n)`.
//!
//! `Λ(n) = ln p` when `n = p^m` for a prime `p` and `m ≥ 1`, otherwise `0`.
//! Ranges are processed in blocks of [`SEGMENT_LEN`] integers so memory stays
//! bounded by one block (plus the base primes up to `√limit`) however long the
//! range is.

use crate::error::{Error, Result};

/// Integers per sieve block.
pub const SEGMENT_LEN: u64 = 1 << 20;

const MAX_N: u64 = i64::MAX as u64;

/// `Λ(start + i)` for `i` in `0..values.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSegment {
    pub start: u64,
    pub values: Vec<f64>,
}

/// The nonzero entries of `Λ` in one sieve block.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PrimePowerBlock {
    pub ns: Vec<u64>,
    pub lambdas: Vec<f64>,
}

impl PrimePowerBlock {
    pub fn len(&self) -> usize {
        self.ns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ns.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.ns.iter().copied().zip(self.lambdas.iter().copied())
    }
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Primes up to a bound together with their logarithms.
#[derive(Clone, Debug)]
pub struct BasePrimes {
    primes: Vec<u64>,
    logs: Vec<f64>,
}

impl BasePrimes {
    pub fn up_to(limit: u64) -> Self {
        let primes = if limit <= SEGMENT_LEN {
            simple_sieve(limit)
        } else {
            let base = BasePrimes::up_to(isqrt(limit));
            let mut primes = Vec::new();
            let mut composite = Vec::new();
            let mut lo = 2;
            while lo <= limit {
                let hi = (lo + SEGMENT_LEN).min(limit + 1);
                mark_composites(&base.primes, lo, hi, &mut composite);
                primes.extend((lo..hi).filter(|&n| !composite[(n - lo) as usize]));
                lo = hi;
            }
            primes
        };
        let logs = primes.iter().map(|&p| (p as f64).ln()).collect();
        Self { primes, logs }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| !composite[i]).map(|i| i as u64).collect()
}

/// Marks composites in `[lo, hi)` using `primes` (which must cover `√(hi−1)`).
fn mark_composites(primes: &[u64], lo: u64, hi: u64, composite: &mut Vec<bool>) {
    composite.clear();
    composite.resize((hi - lo) as usize, false);
    for &p in primes {
        let sq = match p.checked_mul(p) {
            Some(sq) if sq < hi => sq,
            _ => break,
        };
        let mut m = sq.max(lo.div_ceil(p) * p);
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
}

/// Streams sieve blocks covering `[1, limit]`.
///
/// Blocks are independent, so callers may evaluate them in parallel and
/// reassemble by block index.
#[derive(Clone, Debug)]
pub struct SegmentedSieve {
    base: BasePrimes,
    limit: u64,
}

impl SegmentedSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > MAX_N {
            return Err(Error::argument("limit", format!("{limit} exceeds 2^63 - 1")));
        }
        Ok(Self { base: BasePrimes::up_to(isqrt(limit)), limit })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn block_count(&self) -> usize {
        self.limit.div_ceil(SEGMENT_LEN) as usize
    }

    /// Half-open integer range `[lo, hi)` of block `index`.
    pub fn block_range(&self, index: usize) -> (u64, u64) {
        let lo = 1 + index as u64 * SEGMENT_LEN;
        (lo, (lo + SEGMENT_LEN).min(self.limit + 1))
    }

    /// Nonzero `Λ(n)` for the `n` in block `index`, in increasing order.
    pub fn block(&self, index: usize) -> PrimePowerBlock {
        let (lo, hi) = self.block_range(index);
        let mut values = Vec::new();
        let mut scratch = Vec::new();
        lambda_range(&self.base, lo, hi, &mut values, &mut scratch);
        let mut out = PrimePowerBlock::default();
        for (i, &v) in values.iter().enumerate() {
            if v > 0.0 {
                out.ns.push(lo + i as u64);
                out.lambdas.push(v);
            }
        }
        out
    }
}

/// Writes `Λ(n)` for `n ∈ [lo, hi)` into `out`; `hi − lo ≤ SEGMENT_LEN`.
fn lambda_range(base: &BasePrimes, lo: u64, hi: u64, out: &mut Vec<f64>, composite: &mut Vec<bool>) {
    mark_composites(&base.primes, lo, hi, composite);
    out.clear();
    out.extend((lo..hi).zip(composite.iter()).map(|(n, &c)| {
        if n < 2 || c {
            0.0
        } else {
            (n as f64).ln()
        }
    }));
    // higher powers of the base primes; powers of larger primes exceed hi
    for (&p, &lp) in base.primes.iter().zip(&base.logs) {
        let Some(mut q) = p.checked_mul(p) else { break };
        if q >= hi {
            break;
        }
        while q < hi {
            if q >= lo {
                out[(q - lo) as usize] = lp;
            }
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
}

/// `Λ(n)` for `n ∈ [start, start + length)`.
pub fn sieve_lambda(start: u64, length: u64) -> Result<LambdaSegment> {
    if start == 0 {
        return Err(Error::argument("start", "must be at least 1"));
    }
    if length == 0 {
        return Ok(LambdaSegment { start, values: Vec::new() });
    }
    let end = start
        .checked_add(length - 1)
        .filter(|&e| e <= MAX_N)
        .ok_or_else(|| Error::argument("length", format!("start + length - 1 exceeds 2^63 - 1 (start = {start}, length = {length})")))?;
    let base = BasePrimes::up_to(isqrt(end));
    let mut values = Vec::with_capacity(length as usize);
    let mut block = Vec::new();
    let mut scratch = Vec::new();
    let mut lo = start;
    while lo <= end {
        let hi = lo.saturating_add(SEGMENT_LEN).min(end + 1);
        lambda_range(&base, lo, hi, &mut block, &mut scratch);
        values.extend_from_slice(&block);
        lo = hi;
    }
    Ok(LambdaSegment { start, values })
}

/// Iterator over `(n, Λ(n))` for the prime powers `n ≤ limit`.
pub struct PrimePowerIter {
    sieve: SegmentedSieve,
    next_block: usize,
    current: PrimePowerBlock,
    pos: usize,
}

impl Iterator for PrimePowerIter {
    type Item = (u64, f64);

    fn next(&mut self) -> Option<(u64, f64)> {
        while self.pos >= self.current.len() {
            if self.next_block >= self.sieve.block_count() {
                return None;
            }
            self.current = self.sieve.block(self.next_block);
            self.next_block += 1;
            self.pos = 0;
        }
        let item = (self.current.ns[self.pos], self.current.lambdas[self.pos]);
        self.pos += 1;
        Some(item)
    }
}

/// Prime powers up to `limit` with their `Λ` values, in increasing order.
pub fn prime_power_iter(limit: u64) -> Result<PrimePowerIter> {
    if limit < 2 {
        return Err(Error::argument("limit", format!("{limit} is below 2")));
    }
    Ok(PrimePowerIter {
        sieve: SegmentedSieve::new(limit)?,
        next_block: 0,
        current: PrimePowerBlock::default(),
        pos: 0,
    })
}
