//! Compensated (Neumaier) summation and a fixed-order pairwise reduction.

/// Running Neumaier sum: a value plus the accumulated rounding error.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if t.is_finite() {
            if self.sum.abs() >= x.abs() {
                self.comp += (self.sum - t) + x;
            } else {
                self.comp += (x - t) + self.sum;
            }
        }
        self.sum = t;
    }

    /// Folds another partial sum into this one.
    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        if self.sum.is_finite() {
            self.sum + self.comp
        } else {
            self.sum
        }
    }
}

impl Extend<f64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Sum with error bounded independently of the number of terms.
/// Deterministic for a fixed input order; infinities propagate.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = NeumaierSum::new();
    acc.extend(values);
    acc.value()
}

/// Pairwise reduction in a fixed binary-tree order over the slice index.
/// The result depends only on the slice contents, never on how the parts
/// were produced, which keeps parallel sums bit-reproducible.
pub fn tree_reduce(parts: &[NeumaierSum]) -> NeumaierSum {
    match parts.len() {
        0 => NeumaierSum::new(),
        1 => parts[0],
        n => {
            let (l, r) = parts.split_at(n / 2);
            let mut left = tree_reduce(l);
            left.merge(&tree_reduce(r));
            left
        }
    }
}
