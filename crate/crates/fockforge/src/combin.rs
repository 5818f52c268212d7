//! Factorials and binomials in double precision.
//!
//! Degrees stay far below the f64 overflow point (170!), so plain products
//! are enough; no arbitrary precision anywhere in the crate.

/// n! as f64. Panics past the f64 range (n > 170), which no capped
/// computation can reach.
pub fn factorial(n: usize) -> f64 {
    assert!(n <= 170, "factorial({n}) overflows f64");
    let mut acc = 1.0;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

/// Binomial coefficient C(n, k) as f64, multiplicative form.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

/// sqrt of Π_i C(a_i + b_i, a_i), the normalization picked up when two
/// normalized occupation monomials are multiplied.
pub fn product_sqrt_binomials(a: &[u32], b: &[u32]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 1.0;
    for (&ai, &bi) in a.iter().zip(b.iter()) {
        acc *= binomial((ai + bi) as usize, ai as usize);
    }
    acc.sqrt()
}
