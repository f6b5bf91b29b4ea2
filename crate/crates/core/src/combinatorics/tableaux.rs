use super::Partition;
use crate::error::{Error, Result};
use rug::{Complete, Integer, Rational};

/// Number of standard Young tableaux, by the hook length formula.
pub fn count_standard(lambda: &Partition) -> Integer {
    let n = lambda.weight() as u32;
    let hooks = product(lambda.hooks().into_iter().map(Integer::from));
    let f = Integer::factorial(n).complete() / hooks;
    debug_assert_eq!(f, count_standard_vandermonde(lambda));
    f
}

/// Same count through the Vandermonde of the shifted parts.
pub fn count_standard_vandermonde(lambda: &Partition) -> Integer {
    let q = lambda.len();
    let l: Vec<i64> = (0..q).map(|i| q as i64 + lambda.part(i) as i64 - i as i64 - 1).collect();
    let num = Integer::factorial(lambda.weight() as u32).complete() * vandermonde(&l);
    let den = product(l.iter().map(|&x| Integer::factorial(x as u32).complete()));
    num / den
}

fn vandermonde(l: &[i64]) -> Integer {
    let mut v = Integer::from(1);
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            v *= l[i] - l[j];
        }
    }
    v
}

fn product(it: impl Iterator<Item = Integer>) -> Integer {
    it.fold(Integer::from(1), |acc, x| acc * x)
}

/// Number of semistandard tableaux of shape `lambda` with entries in `1..=q`.
pub fn schur_at_ones(lambda: &Partition, q: u32) -> Integer {
    if lambda.len() > q as usize {
        return Integer::new();
    }
    let num = product(lambda.contents().map(|c| Integer::from(c + q as i64)));
    let den = product(lambda.hooks().into_iter().map(Integer::from));
    let s = num / den;
    debug_assert_eq!(s, schur_at_ones_forms(lambda, q)[2]);
    s
}

/// Three independent evaluations: Pochhammer over hooks, content product,
/// and the Vandermonde form.
pub fn schur_at_ones_forms(lambda: &Partition, q: u32) -> [Integer; 3] {
    if lambda.len() > q as usize {
        return [Integer::new(), Integer::new(), Integer::new()];
    }
    let hooks = product(lambda.hooks().into_iter().map(Integer::from));
    let poch = Rational::from((pochhammer_symbol(q as i64, lambda), hooks.clone()));
    let contents = Rational::from((
        product(lambda.contents().map(|c| Integer::from(c + q as i64))),
        hooks,
    ));
    let l: Vec<i64> =
        (0..q as usize).map(|i| q as i64 + lambda.part(i) as i64 - i as i64 - 1).collect();
    let den = product((1..q).map(|i| Integer::factorial(i).complete()));
    let vdm = Rational::from((vandermonde(&l), den));
    let take = |r: Rational| {
        debug_assert_eq!(*r.denom(), 1);
        r.into_numer_denom().0
    };
    [take(poch), take(contents), take(vdm)]
}

/// Generalised Pochhammer symbol prod_i (n + 1 - i)_{lambda_i}.
pub fn pochhammer_symbol(n: i64, lambda: &Partition) -> Integer {
    let mut out = Integer::from(1);
    for (i, &r) in lambda.parts().iter().enumerate() {
        let base = n - i as i64;
        for j in 0..r as i64 {
            out *= base + j;
        }
    }
    out
}

/// Product of the hook lengths of the cells of `lambda` lying in columns
/// `n - q + 1 ..= n - p` (a strip of width `q - p`).
pub fn strip_hook_product(lambda: &Partition, n: u32, p: u32, q: u32) -> Result<Integer> {
    if q < p || n < q {
        return Err(Error::ParameterOrder(format!("need p <= q <= n, got p={p} q={q} n={n}")));
    }
    let mut out = Integer::from(1);
    for i in 1..=lambda.len() {
        for j in (n - q + 1)..=(n - p) {
            match lambda.hook_length(i, j as usize) {
                Some(h) => out *= h,
                None => break,
            }
        }
    }
    Ok(out)
}
