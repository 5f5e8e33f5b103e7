//! Stirling numbers, generalized Bernoulli polynomials, harmonic-type numbers
//! and the other exact combinatorial quantities behind the closed forms.
//!
//! Stirling numbers use the signed convention fixed by
//! `[ln(1+t)]^k = k! sum_n s(n,k) t^n / n!`, so `s(3,2) = -3`.
//! Stirling rows and Bernoulli coefficient series are memoized process-wide
//! and grow on demand; lookups never see a partially built row.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{EpsSeries, Rational};
use crate::error::{Error, Result};

/// Triangular table of signed Stirling numbers of the first kind `s(n,k)`,
/// `0 <= k <= n <= N`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn with_rows(max_n: usize) -> Self {
        let mut t = StirlingTable {
            rows: vec![vec![BigInt::one()]],
        };
        t.grow_to(max_n);
        t
    }

    /// Extends the table so that row `max_n` exists.
    pub fn grow_to(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let n = self.rows.len() - 1;
            let prev = &self.rows[n];
            let nb = BigInt::from(n);
            let mut next = vec![BigInt::zero(); n + 2];
            for (k, slot) in next.iter_mut().enumerate() {
                let left = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
                let stay = prev.get(k).map(|v| &nb * v).unwrap_or_else(BigInt::zero);
                *slot = left - stay;
            }
            self.rows.push(next);
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(n,k)`, or `None` if row `n` is not cached. Zero for `k > n`.
    pub fn get(&self, n: usize, k: usize) -> Option<BigInt> {
        let row = self.rows.get(n)?;
        Some(row.get(k).cloned().unwrap_or_else(BigInt::zero))
    }
}

static STIRLING: LazyLock<RwLock<StirlingTable>> = LazyLock::new(|| RwLock::new(StirlingTable::with_rows(16)));

fn stirling_big(n: usize, k: usize) -> BigInt {
    if let Some(v) = STIRLING.read().expect("stirling table poisoned").get(n, k) {
        return v;
    }
    let mut table = STIRLING.write().expect("stirling table poisoned");
    let target = n.max(2 * table.max_n());
    table.grow_to(target);
    table.get(n, k).expect("row just grown")
}

/// Signed Stirling number of the first kind `s(n,k)`; zero when `k > n`.
pub fn stirling_s1(n: usize, k: usize) -> Rational {
    Rational::from(stirling_big(n, k))
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from(acc)
}

/// Generalized binomial `top (top-1) ... (top-k+1) / k!` for any rational top.
pub fn binomial(top: &Rational, k: usize) -> Rational {
    let mut num = Rational::one();
    for i in 0..k {
        num *= top - Rational::from(i);
    }
    num / factorial(k)
}

/// Integer binomial with `C(n,k) = 0` for `k < 0`; negative `n` follows the
/// generalized product form.
pub fn binom_int(n: i64, k: i64) -> Rational {
    if k < 0 {
        Rational::zero()
    } else {
        binomial(&Rational::from(n), k as usize)
    }
}

/// `n!!` with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<Rational> {
    if n < -1 {
        return Err(Error::domain(format!("double factorial undefined for {n}")));
    }
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(Rational::from(acc))
}

/// `H_m^(k) = sum_{j=1}^m 1/j^k`.
pub fn harmonic(m: usize, k: u32) -> Rational {
    (1..=m).map(|j| Rational::from(j).pow(k as i32).recip()).sum()
}

/// Modified harmonic number `sum_{j=1}^m (-1)^{j-1} C(m,j) / j^k`, with the
/// `m = 0` value `delta_{k,0}`.
pub fn mod_harmonic(m: usize, k: u32) -> Rational {
    if m == 0 {
        return if k == 0 { Rational::one() } else { Rational::zero() };
    }
    (1..=m)
        .map(|j| Rational::sign_power(j as i64 - 1) * binom_int(m as i64, j as i64) / Rational::from(j).pow(k as i32))
        .sum()
}

/// Strictly nested all-ones sum `sum_{m >= i1 > ... > ik >= 1} 1/(i1...ik)`.
pub fn nested_ones_z(m: usize, k: usize) -> Rational {
    // row[i] = Z_{1^d}(i) for the current depth d
    let mut row = vec![Rational::one(); m + 1];
    for _ in 0..k {
        let mut next = vec![Rational::zero(); m + 1];
        for i in 1..=m {
            next[i] = &next[i - 1] + &row[i - 1] / Rational::from(i);
        }
        row = next;
    }
    row[m].clone()
}

/// Non-strictly nested all-ones harmonic sum `S_{1,...,1}(m)` with `k` indices.
pub fn nested_ones_s(m: usize, k: usize) -> Rational {
    let mut row = vec![Rational::one(); m + 1];
    for _ in 0..k {
        let mut next = vec![Rational::zero(); m + 1];
        for i in 1..=m {
            next[i] = &next[i - 1] + &row[i] / Rational::from(i);
        }
        row = next;
    }
    row[m].clone()
}

// a -> [B_0^(a)(0), B_1^(a)(0), ...]
static BERNOULLI: LazyLock<RwLock<HashMap<u32, Vec<Rational>>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

fn bernoulli_row(a: u32, len: usize) -> Vec<Rational> {
    let order = len as i32 - 1;
    // (e^z - 1)/z = sum z^n/(n+1)!
    let g: Vec<Rational> = (0..len).map(|n| factorial(n + 1).recip()).collect();
    let base = EpsSeries::polynomial(&g, order)
        .invert()
        .expect("(e^z-1)/z has unit constant term");
    let powered = base.pow(a);
    (0..len).map(|n| powered.coeff(n as i32) * factorial(n)).collect()
}

/// Generalized Bernoulli numbers `B_n^(a)(0)` for `n <= max_n`.
pub fn gen_bernoulli_numbers(max_n: usize, a: u32) -> Vec<Rational> {
    if let Some(row) = BERNOULLI.read().expect("bernoulli memo poisoned").get(&a) {
        if row.len() > max_n {
            return row[..=max_n].to_vec();
        }
    }
    let mut memo = BERNOULLI.write().expect("bernoulli memo poisoned");
    let have = memo.get(&a).map_or(0, Vec::len);
    if have <= max_n {
        let len = (max_n + 1).max(2 * have).max(8);
        memo.insert(a, bernoulli_row(a, len));
    }
    memo[&a][..=max_n].to_vec()
}

/// Generalized Bernoulli polynomial `B_n^(a)(x)`, generated by
/// `(z/(e^z - 1))^a e^{xz} = sum B_n^(a)(x) z^n/n!`.
pub fn gen_bernoulli_poly(n: usize, a: u32, x: &Rational) -> Rational {
    let numbers = gen_bernoulli_numbers(n, a);
    // n! [z^n] of (sum b_j z^j/j!) e^{xz}
    numbers
        .iter()
        .enumerate()
        .map(|(j, b)| binom_int(n as i64, j as i64) * b * x.pow((n - j) as i32))
        .sum()
}
