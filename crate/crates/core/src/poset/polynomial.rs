use std::fmt;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

/// A polynomial in `q` with exact integer coefficients; coefficient `i` is
/// the size of rank `i` when it comes from a poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankPolynomial {
    coeffs: Vec<BigInt>,
}

impl RankPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// `1 + e q`.
    pub fn linear(e: u64) -> Self {
        Self::new(vec![BigInt::one(), BigInt::from(e)])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Coefficients as `u64`, if they all fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(ToPrimitive::to_u64).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Index of the largest coefficient (the first one, on ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c > self.coeffs[best] {
                best = i;
            }
        }
        best
    }

    /// Exact division by `1 + e q`, if it divides.
    fn divide_linear(&self, e: &BigInt) -> Option<Self> {
        // (1 + e q) · Σ b_i q^i = Σ c_i q^i  ⇒  b_i = c_i − e b_{i−1}
        let c = &self.coeffs;
        let d = c.len() - 1;
        if d == 0 {
            return None;
        }
        let mut b = Vec::with_capacity(d);
        let mut prev = BigInt::zero();
        for ci in c.iter().take(d) {
            let bi = ci - e * &prev;
            b.push(bi.clone());
            prev = bi;
        }
        if e * &prev != c[d] {
            return None;
        }
        Some(Self::new(b))
    }

    /// Writes the polynomial as `∏ (1 + e_i q)` with positive integers `e_i`,
    /// ascending, or returns `None` if no such factorization exists.
    ///
    /// Each `e` divides the leading coefficient and is at most the linear
    /// coefficient (the sum of all `e_i`), so candidates are tried in that
    /// range by exact synthetic division.
    pub fn factor_exponents(&self) -> Option<Vec<u64>> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        let mut rest = self.clone();
        let mut exps = Vec::new();
        while rest.degree() > 0 {
            let lead = rest.coeffs[rest.degree()].clone();
            let linear = rest.coeffs[1].to_u64()?;
            if !lead.is_positive() {
                return None;
            }
            let mut found = None;
            for e in 1..=linear {
                let eb = BigInt::from(e);
                if !lead.is_multiple_of(&eb) {
                    continue;
                }
                if let Some(q) = rest.divide_linear(&eb) {
                    found = Some((e, q));
                    break;
                }
            }
            let (e, q) = found?;
            exps.push(e);
            rest = q;
        }
        if !rest.coeffs[0].is_one() {
            return None;
        }
        exps.sort_unstable();
        Some(exps)
    }
}

impl fmt::Display for RankPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "q")?,
                1 => write!(f, "{a}q")?,
                _ if a.is_one() => write!(f, "q^{i}")?,
                _ => write!(f, "{a}q^{i}")?,
            }
        }
        Ok(())
    }
}
