use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::domain::IndexDomain;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountKind {
    Unconstrained,
    Boxed { a: usize, b: usize },
    Skew(IndexDomain),
}

/// Exact coefficients `c_0..=c_N` of a plane-partition generating function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub kind: CountKind,
    pub coefficients: Vec<BigUint>,
}

impl CountTable {
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.coefficients.get(n)
    }

    /// Coefficient `n` as `u64`, if it fits.
    pub fn get_u64(&self, n: usize) -> Option<u64> {
        self.get(n).and_then(|c| u64::try_from(c).ok())
    }

    pub fn max_n(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// `sigma_2(k) = sum_{d | k} d^2` for `k = 0..=n` (index 0 unused).
fn sigma2_table(n: usize) -> Vec<u64> {
    let mut s = vec![0u64; n + 1];
    for d in 1..=n {
        let sq = (d as u64) * (d as u64);
        for m in (d..=n).step_by(d) {
            s[m] += sq;
        }
    }
    s
}

/// Plane partition numbers `P_0..=P_N` via `n P_n = sum_{k=1}^n sigma_2(k) P_{n-k}`.
pub fn exact_counts(max_n: usize) -> CountTable {
    let sigma = sigma2_table(max_n);
    let mut p: Vec<BigUint> = Vec::with_capacity(max_n + 1);
    p.push(BigUint::one());
    for n in 1..=max_n {
        let mut acc = BigUint::zero();
        for k in 1..=n {
            acc += &p[n - k] * sigma[k];
        }
        let q = acc / n as u64;
        p.push(q);
    }
    CountTable {
        kind: CountKind::Unconstrained,
        coefficients: p,
    }
}

fn product_of_geometric(hooks: impl Iterator<Item = u64>, max_n: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::zero(); max_n + 1];
    c[0] = BigUint::one();
    for h in hooks {
        let h = h as usize;
        // multiply by 1 / (1 - x^h)
        for k in h..=max_n {
            let prev = c[k - h].clone();
            c[k] += prev;
        }
    }
    c
}

/// Coefficients of `prod_{i<a, j<b} 1 / (1 - x^{i+j+1})`: `(a x b)`-boxed plane partitions.
pub fn boxed_counts(a: usize, b: usize, max_n: usize) -> CountTable {
    let hooks = (0..a).flat_map(move |i| (0..b).map(move |j| (i + j + 1) as u64));
    CountTable {
        kind: CountKind::Boxed { a, b },
        coefficients: product_of_geometric(hooks, max_n),
    }
}

/// Coefficients of `prod_{(i,j) in D} 1 / (1 - x^{h(i,j)})`: skew plane partitions on `D`.
pub fn skew_counts(dom: &IndexDomain, max_n: usize) -> CountTable {
    CountTable {
        kind: CountKind::Skew(dom.clone()),
        coefficients: product_of_geometric(dom.hooks(), max_n),
    }
}
