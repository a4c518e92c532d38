//! Graded dimensions of `g(k, G)` computed without building any basis.
//!
//! The trace monoid whose commuting pairs are the edges of the complement
//! `G'` has Hilbert series `1 / C(-t)`, where `C` is the clique polynomial of
//! `G'`. Writing `log(1 / C(-t)) = sum q_n t^n`, the graded dimensions `l_d`
//! of the partially commutative Lie algebra satisfy
//! `n q_n = sum_{d | n} d l_d`, which Möbius inversion solves for `l_d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Coefficients `c_s` = number of cliques of size `s` in `g` (the empty
/// clique included, so `c_0 = 1`).
pub fn clique_polynomial(g: &SimpleGraph) -> Vec<u64> {
    let m = g.order();
    let mut counts = vec![0u64; m + 1];
    let mut stack: Vec<usize> = Vec::new();
    fn extend(g: &SimpleGraph, next: usize, stack: &mut Vec<usize>, counts: &mut [u64]) {
        counts[stack.len()] += 1;
        for v in next..g.order() {
            if stack.iter().all(|&u| g.has_edge(u, v)) {
                stack.push(v);
                extend(g, v + 1, stack, counts);
                stack.pop();
            }
        }
    }
    extend(g, 0, &mut stack, &mut counts);
    counts
}

/// `s_n = n q_n` for `n = 1..=k`: the power sums of the trace monoid of the
/// complement, from the recurrence `s_n = -n p_n - sum_{i<n} p_i s_{n-i}`
/// with `p_i = (-1)^i c_i`.
pub fn trace_power_sums(g: &SimpleGraph, k: usize) -> Vec<BigInt> {
    let c = clique_polynomial(&g.complement());
    let p = |i: usize| -> BigInt {
        let ci = BigInt::from(*c.get(i).unwrap_or(&0));
        if i % 2 == 0 {
            ci
        } else {
            -ci
        }
    };
    let mut s = vec![BigInt::zero(); k + 1];
    for n in 1..=k {
        let mut acc = -(BigInt::from(n) * p(n));
        for i in 1..n {
            acc -= p(i) * &s[n - i];
        }
        s[n] = acc;
    }
    s.remove(0);
    s
}

pub fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Graded dimensions `(l_1, ..., l_k)` of `g(k, G)`.
pub fn dimension_oracle(g: &SimpleGraph, k: usize) -> Result<Vec<usize>> {
    let s = trace_power_sums(g, k);
    (1..=k)
        .map(|d| {
            let mut acc = BigInt::zero();
            for e in (1..=d).filter(|e| d % e == 0) {
                acc += BigInt::from(mobius(d / e)) * &s[e - 1];
            }
            let (q, r) = acc.div_rem(&BigInt::from(d));
            if !r.is_zero() {
                return Err(Error::Invariant(format!("Möbius sum not divisible by {d}")));
            }
            q.to_usize().ok_or_else(|| Error::Invariant(format!("negative or huge dimension {q}")))
        })
        .collect()
}
