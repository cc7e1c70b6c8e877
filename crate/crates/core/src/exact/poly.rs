//! Dense univariate polynomials used behind the cyclotomic field: integer
//! cyclotomic polynomials and a handful of operations over `Q[x]`.
//!
//! Coefficient vectors are stored lowest degree first.

use super::{ExactError, Rational};

/// Prime factorisation of `n` as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Multiplies `p` by `x^d - 1` in place.
fn mul_binomial(p: &mut Vec<i128>, d: usize) {
    let old = std::mem::take(p);
    let mut out = vec![0i128; old.len() + d];
    for (i, &c) in old.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    *p = out;
}

/// Exact division of `p` by `x^d - 1`; panics if the division leaves a remainder.
fn div_binomial(p: &mut Vec<i128>, d: usize) {
    let deg = p.len() - 1;
    assert!(deg >= d);
    let mut q = vec![0i128; deg - d + 1];
    for k in 0..q.len() {
        let prev = if k >= d { q[k - d] } else { 0 };
        q[k] = prev - p[k];
    }
    // Check: q * (x^d - 1) == p.
    let mut check = q.clone();
    mul_binomial(&mut check, d);
    assert_eq!(&check, p, "x^{d} - 1 does not divide the polynomial");
    *p = q;
}

/// The `n`-th cyclotomic polynomial Φ_n with integer coefficients, lowest
/// degree first. Uses Φ_n = Π_{d | n} (x^d − 1)^{μ(n/d)}.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let ds = divisors(n);
    let mut p: Vec<i128> = vec![1];
    for &d in &ds {
        if mobius(n / d) == 1 {
            mul_binomial(&mut p, d as usize);
        }
    }
    for &d in &ds {
        if mobius(n / d) == -1 {
            div_binomial(&mut p, d as usize);
        }
    }
    p.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

/// Reduces `p` modulo the monic integer polynomial `m` (lowest degree first),
/// returning exactly `deg m` coefficients.
pub(crate) fn reduce_monic(mut p: Vec<Rational>, m: &[i64]) -> Vec<Rational> {
    let d = m.len() - 1;
    debug_assert_eq!(m[d], 1);
    if p.len() > d {
        for i in (d..p.len()).rev() {
            if p[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut p[i]);
            let shift = i - d;
            for (j, &mj) in m.iter().enumerate().take(d) {
                if mj != 0 {
                    p[shift + j] -= &(&c * &Rational::from_integer(mj));
                }
            }
        }
    }
    p.resize(d, Rational::zero());
    p
}

/// Polynomial division with remainder over Q.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>), ExactError> {
    let mut b = b.to_vec();
    trim(&mut b);
    if b.is_empty() {
        return Err(ExactError::DivisionByZero);
    }
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].recip()?;
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &(&c * bj);
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    Ok((q, r))
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x - y);
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
/// Fails if `gcd(a, m) != 1`.
pub(crate) fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Result<Vec<Rational>, ExactError> {
    let mut r0 = m.to_vec();
    trim(&mut r0);
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return Err(ExactError::DivisionByZero);
    }
    // Invariant: s_i * a ≡ r_i (mod m).
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1)?;
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return Err(ExactError::DivisionByZero);
    }
    let c = r0[0].recip()?;
    let mut out: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
    let (_, rem) = poly_divrem(&out, m)?;
    out = rem;
    Ok(out)
}

/// Solves `A x = b` over Q for a tall system given column-wise, returning
/// `None` when inconsistent. Free variables are set to zero.
pub(crate) fn solve_rational_columns(cols: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = b.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().ok()?;
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Φ_n by the defining recursion: (x^n − 1) divided by Φ_d for every proper divisor d.
    fn phi_by_division(n: u64) -> Vec<Rational> {
        let mut num = vec![Rational::zero(); n as usize + 1];
        num[0] = Rational::from_integer(-1);
        num[n as usize] = Rational::one();
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let den = phi_by_division(d);
            let (q, r) = poly_divrem(&num, &den).unwrap();
            assert!(r.is_empty());
            num = q;
        }
        num
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn mobius_product_matches_division_recursion() {
        for n in 1..=60u64 {
            let fast: Vec<Rational> = cyclotomic_polynomial(n)
                .into_iter()
                .map(Rational::from_integer)
                .collect();
            assert_eq!(fast, phi_by_division(n), "n = {n}");
            assert_eq!(fast.len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        // Smallest n with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(24), 8);
    }
}
