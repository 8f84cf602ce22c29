//! Independent oracles shared by unit tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss-Legendre over [a, b] split into `pieces` equal panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, pieces: usize, nodes: &[(f64, f64)]) -> f64 {
    let h = (b - a) / pieces as f64;
    let mut total = 0.0;
    for p in 0..pieces {
        let lo = a + p as f64 * h;
        let mid = lo + h / 2.0;
        for &(x, w) in nodes {
            total += w * f(mid + x * h / 2.0) * h / 2.0;
        }
    }
    total
}

/// Centered cardinal B-spline of order m at an exact rational point, by the
/// truncated-power formula `1/(m-1)! sum_j (-1)^j C(m,j) (x + m/2 - j)_+^(m-1)`.
pub fn bspline_truncated_power(m: u32, x: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::from(m), BigInt::from(2));
    let mut total = BigRational::zero();
    let mut binom = BigInt::one();
    for j in 0..=m {
        let shifted = x + &half - BigRational::from_integer(BigInt::from(j));
        if shifted > BigRational::zero() {
            let mut pow = BigRational::one();
            for _ in 0..(m - 1) {
                pow *= &shifted;
            }
            let term = pow * BigRational::from_integer(binom.clone());
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
    }
    let mut fact = BigInt::one();
    for i in 1..m {
        fact *= BigInt::from(i);
    }
    total / BigRational::from_integer(fact)
}

/// Grid convolution of `m` indicators of [-1/2, 1/2] sampled with step `1/res`.
pub fn bspline_numeric_convolution(m: u32, res: usize, x: f64) -> f64 {
    let h = 1.0 / res as f64;
    // box sampled at midpoints, one unit wide
    let mut cur: Vec<f64> = vec![1.0; res];
    let single = cur.clone();
    for _ in 1..m {
        let mut next = vec![0.0; cur.len() + single.len() - 1];
        for (i, a) in cur.iter().enumerate() {
            for (j, b) in single.iter().enumerate() {
                next[i + j] += a * b * h;
            }
        }
        cur = next;
    }
    // sample i sits at -m/2 + (i + m/2) h for midpoint sampling
    let pos = (x + m as f64 / 2.0) / h - m as f64 / 2.0;
    let i = pos.floor() as isize;
    let t = pos - i as f64;
    let at = |k: isize| -> f64 {
        if k < 0 || k as usize >= cur.len() {
            0.0
        } else {
            cur[k as usize]
        }
    };
    at(i) * (1.0 - t) + at(i + 1) * t
}

/// Continued fraction of the unique root in `(a0, a0 + 1)` of an integer
/// polynomial (coefficients ascending), by Lagrange's method: substitute
/// `x = a + 1/y` exactly and locate the next quotient by sign changes.
pub fn lagrange_cf(coeffs_ascending: &[i64], a0: i64, count: usize) -> Vec<i64> {
    let eval = |p: &[BigInt], x: &BigInt| p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
    // p(x + a): Taylor shift by repeated synthetic division
    let shift = |p: &[BigInt], a: &BigInt| {
        let mut c = p.to_vec();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        c
    };
    let mut p: Vec<BigInt> = coeffs_ascending.iter().map(|&c| BigInt::from(c)).collect();
    let mut a = BigInt::from(a0);
    let mut out = Vec::new();
    for _ in 0..count {
        out.push(a.to_string().parse().unwrap());
        // q(y) = y^n p(a + 1/y): reverse the shifted coefficients
        let mut q = shift(&p, &a);
        q.reverse();
        p = q;
        // next quotient: largest integer t >= 1 with a sign change in (t, t+1)
        let mut lo = BigInt::one();
        let s_lo = eval(&p, &lo).sign();
        let mut hi = BigInt::from(2);
        while eval(&p, &hi).sign() == s_lo {
            hi = &hi * 2;
        }
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) / 2;
            if eval(&p, &mid).sign() == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        a = lo;
    }
    out
}
