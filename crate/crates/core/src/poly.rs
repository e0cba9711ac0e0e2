//! Dense integer polynomials (ascending coefficients).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn trim(mut f: Vec<BigInt>) -> Vec<BigInt> {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

pub fn from_i64(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

pub fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

pub fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// f(x + a)
pub fn shift(f: &[BigInt], a: &BigInt) -> Vec<BigInt> {
    let mut c = f.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = a * &c[j + 1];
            c[j] += t;
        }
    }
    c
}

/// c^(n-1) f(x / c) for leading coefficient c: monic with roots c * r.
pub fn scale_to_monic(f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    let c = &f[n];
    let mut out = Vec::with_capacity(n + 1);
    let mut pw = BigInt::one();
    let mut pows = vec![BigInt::one()];
    for _ in 0..n {
        pw *= c;
        pows.push(pw.clone());
    }
    for (k, a) in f.iter().enumerate() {
        out.push(if k == n {
            BigInt::one()
        } else {
            a * &pows[n - 1 - k]
        });
    }
    out
}

/// Determinant by fraction-free elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    determinant(s)
}

/// Discriminant of a polynomial of degree n >= 1.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n == 1 {
        return BigInt::one();
    }
    let r = resultant(&f, &derivative(&f));
    let d = r / f.last().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

/// Parse ascending comma-separated integer coefficients.
pub fn parse_coeffs(s: &str) -> Result<Vec<BigInt>, String> {
    let v: Result<Vec<BigInt>, String> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| format!("bad coefficient {t:?}: {e}"))
        })
        .collect();
    Ok(trim(v?))
}

pub fn format_coeffs(f: &[BigInt]) -> String {
    f.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Human-readable form, highest degree first.
pub fn pretty(f: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in f.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() || k == 0 {
            out.push_str(&a.to_string());
        }
        match k {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&from_i64(&[-5, 0, 1])), BigInt::from(20));
        // x^3 + a x + b: -4a^3 - 27b^2
        assert_eq!(discriminant(&from_i64(&[1, 1, 0, 1])), BigInt::from(-31));
        let f = from_i64(&[-8, 12, 8, -8, -8, 0, 1]);
        let d = discriminant(&f);
        assert_eq!(d, BigInt::from(4096) * BigInt::from(371293));
    }

    #[test]
    fn monic_scaling() {
        let f = from_i64(&[1, 2, 3]);
        assert_eq!(scale_to_monic(&f), from_i64(&[3, 2, 1]));
    }

    #[test]
    fn shifting() {
        let f = from_i64(&[0, 0, 1]);
        assert_eq!(shift(&f, &BigInt::from(2)), from_i64(&[4, 4, 1]));
    }

    #[test]
    fn pretty_print() {
        assert_eq!(
            pretty(&from_i64(&[-8, 12, 8, -8, -8, 0, 1])),
            "x^6 - 8x^4 - 8x^3 + 8x^2 + 12x - 8"
        );
    }
}
