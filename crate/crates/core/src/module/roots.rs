//! Roots in the base field of univariate polynomials (coefficients constant
//! term first).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{FieldSpec, Scalar};
use crate::matrix::eval_univariate;

/// Prime fields up to this size are searched exhaustively.
const EXHAUSTIVE_LIMIT: u32 = 65536;

/// Distinct roots of `f` in its field, ascending in canonical order, or
/// `None` when they cannot all be determined (very large rational
/// coefficients that resist trial division).
pub fn univariate_roots(field: FieldSpec, f: &[Scalar]) -> Option<Vec<Scalar>> {
    let f = trim(f.to_vec());
    if f.len() <= 1 {
        return Some(Vec::new());
    }
    let mut roots = match field.modulus() {
        Some(p) if p <= EXHAUSTIVE_LIMIT => field
            .elements()
            .expect("prime field")
            .filter(|a| eval_univariate(&f, a).is_zero())
            .collect(),
        Some(p) => large_prime_roots(field, p, &f),
        None => rational_roots(field, &f)?,
    };
    roots.sort_by(|a: &Scalar, b| a.canonical_cmp(b));
    roots.dedup();
    Some(roots)
}

fn trim(mut f: Vec<Scalar>) -> Vec<Scalar> {
    while f.last().is_some_and(Scalar::is_zero) {
        f.pop();
    }
    f
}

fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = trim(a.to_vec());
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("nonzero");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") * &lead_inv;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &(&c * bk);
        }
        r = trim(r);
    }
    r
}

fn mul_mod(a: &[Scalar], b: &[Scalar], m: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    rem(&out, m)
}

fn pow_mod(base: &[Scalar], mut e: u64, m: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    let mut acc = vec![field.one()];
    let mut b = rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, field);
        }
        b = mul_mod(&b, &b, m, field);
        e >>= 1;
    }
    rem(&acc, m)
}

fn gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    let inv = a.last().expect("nonzero gcd").inv().expect("nonzero");
    a.iter().map(|c| c * &inv).collect()
}

fn sub_x(f: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    let mut g = f.to_vec();
    while g.len() < 2 {
        g.push(field.zero());
    }
    g[1] = &g[1] - &field.one();
    trim(g)
}

/// Product of the distinct linear factors via `gcd(f, x^p - x)`, then
/// equal-degree splitting with `(x + a)^((p-1)/2) - 1` for `a = 0, 1, ..`.
fn large_prime_roots(field: FieldSpec, p: u32, f: &[Scalar]) -> Vec<Scalar> {
    let x = vec![field.zero(), field.one()];
    let xp = pow_mod(&x, p as u64, f, field);
    let g = gcd(f, &sub_x(&xp, field));
    let mut out = Vec::new();
    let mut stack = vec![g];
    let mut shift = 0i64;
    while let Some(h) = stack.pop() {
        match h.len() {
            0 | 1 => {}
            2 => out.push(-&(&h[0] * &h[1].inv().expect("monic"))),
            _ => loop {
                let lin = vec![field.from_i64(shift), field.one()];
                shift += 1;
                let mut t = pow_mod(&lin, (p as u64 - 1) / 2, &h, field);
                if t.is_empty() {
                    t.push(field.zero());
                }
                t[0] = &t[0] - &field.one();
                let d = gcd(&h, &trim(t));
                if d.len() > 1 && d.len() < h.len() {
                    let other = quotient(&h, &d);
                    stack.push(d);
                    stack.push(other);
                    break;
                }
            },
        }
    }
    out
}

fn quotient(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let field = a[0].field();
    let mut r = a.to_vec();
    let lead_inv = b.last().expect("nonzero").inv().expect("nonzero");
    let mut q = vec![field.zero(); a.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") * &lead_inv;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &(&c * bk);
        }
        q[shift] = c;
        r = trim(r);
    }
    q
}

/// Candidates `±u/v` with `u | a_0` and `v | a_n` after clearing
/// denominators and removing the root at zero.
fn rational_roots(field: FieldSpec, f: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut out = Vec::new();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(field.zero());
    }
    let f = &f[zeros..];
    if f.len() <= 1 {
        return Some(out);
    }
    let den_lcm = f.iter().fold(BigInt::one(), |acc, c| {
        acc.lcm(c.as_rational().expect("rational").denom())
    });
    let ints: Vec<BigInt> = f
        .iter()
        .map(|c| {
            let r = c.as_rational().expect("rational");
            r.numer() * (&den_lcm / r.denom())
        })
        .collect();
    let nums = divisors(&ints[0].abs())?;
    let dens = divisors(&ints[ints.len() - 1].abs())?;
    for u in &nums {
        for v in &dens {
            if !u.gcd(v).is_one() {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = field
                    .from_ratio(&(u * BigInt::from(sign)), v)
                    .expect("nonzero denominator");
                if eval_univariate(f, &cand).is_zero() {
                    out.push(cand);
                }
            }
        }
    }
    Some(out)
}

/// Positive divisors by trial division; gives up when a cofactor above the
/// trial range is left that might be composite.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    const TRIAL: u64 = 1 << 20;
    let mut n = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p < TRIAL && BigInt::from(p * p) <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        if n.to_u64().is_none_or(|v| v >= TRIAL * TRIAL) {
            return None;
        }
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &q;
            }
        }
        divs = next;
    }
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: FieldSpec, cs: &[i64]) -> Vec<Scalar> {
        cs.iter().map(|&c| f.from_i64(c)).collect()
    }

    #[test]
    fn small_prime_field() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(univariate_roots(f3, &poly(f3, &[1, 0, 1])), Some(vec![]));
        let f5 = FieldSpec::prime(5).unwrap();
        let r = univariate_roots(f5, &poly(f5, &[1, 0, 1])).unwrap();
        assert_eq!(r, poly(f5, &[2, 3]));
    }

    #[test]
    fn large_prime_field() {
        let p = 2147483647u64;
        let f = FieldSpec::prime(p).unwrap();
        // (t - 3)(t - 10)(t + 7)(t^2 + 1) ; -1 is a non-residue mod p
        let a = poly(f, &[-3, 1]);
        let b = poly(f, &[-10, 1]);
        let c = poly(f, &[7, 1]);
        let d = poly(f, &[1, 0, 1]);
        let mut prod = vec![f.one()];
        for g in [&a, &b, &c, &d, &a] {
            let mut out = vec![f.zero(); prod.len() + g.len() - 1];
            for (i, x) in prod.iter().enumerate() {
                for (j, y) in g.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
            prod = out;
        }
        let r = univariate_roots(f, &prod).unwrap();
        assert_eq!(r, poly(f, &[3, 10, -7]));
    }

    #[test]
    fn rational_candidates() {
        let q = FieldSpec::rational();
        // 6t^3 - 5t^2 + t = t(2t - 1)(3t - 1)
        let r = univariate_roots(q, &poly(q, &[0, 1, -5, 6])).unwrap();
        let half = q.parse_scalar("1/2").unwrap();
        let third = q.parse_scalar("1/3").unwrap();
        assert_eq!(r, vec![q.zero(), third, half]);
        assert_eq!(univariate_roots(q, &poly(q, &[-2, 0, 1])), Some(vec![]));
    }
}
