//! Exact arithmetic in `ℚ(√5)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigRational, One, Signed, Zero};

/// `x + y·√5` with rational `x`, `y`.
///
/// Rationals embed with `y = 0`, which is how the crystallographic types use
/// this type. Equality is exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    pub x: BigRational,
    pub y: BigRational,
}

impl QuadraticNumber {
    pub const RADICAND: i64 = 5;

    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    /// `(xn/xd) + (yn/yd)·√5`.
    pub fn from_fractions(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Self::new(
            BigRational::new(xn.into(), xd.into()),
            BigRational::new(yn.into(), yd.into()),
        )
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn golden_ratio() -> Self {
        Self::from_fractions(1, 2, 1, 2)
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.x.clone(), -self.y.clone())
    }

    /// `x² − 5y²`, rational and nonzero unless `self` is zero.
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - BigRational::from_integer(Self::RADICAND.into()) * &self.y * &self.y
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.norm();
        let c = self.conjugate();
        Some(Self::new(c.x / &norm, c.y / norm))
    }

    /// Sign of the real number `x + y√5`, decided exactly.
    pub fn signum(&self) -> i32 {
        let sx = sign_of(&self.x);
        let sy = sign_of(&self.y);
        if sx == sy || sy == 0 {
            return sx;
        }
        if sx == 0 {
            return sy;
        }
        // opposite signs: compare x² with 5y²
        let five = BigRational::from_integer(Self::RADICAND.into());
        let x2 = &self.x * &self.x;
        let y2 = five * &self.y * &self.y;
        match x2.cmp(&y2) {
            std::cmp::Ordering::Greater => sx,
            std::cmp::Ordering::Less => sy,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Real value, for display only.
    pub fn to_f64(&self) -> f64 {
        use num::ToPrimitive;
        self.x.to_f64().unwrap_or(f64::NAN)
            + self.y.to_f64().unwrap_or(f64::NAN) * (Self::RADICAND as f64).sqrt()
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Zero for QuadraticNumber {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl One for QuadraticNumber {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: Self) -> QuadraticNumber {
        QuadraticNumber::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: Self) -> QuadraticNumber {
        QuadraticNumber::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: Self) -> QuadraticNumber {
        let five = BigRational::from_integer(QuadraticNumber::RADICAND.into());
        QuadraticNumber::new(
            &self.x * &rhs.x + five * &self.y * &rhs.y,
            &self.x * &rhs.y + &self.y * &rhs.x,
        )
    }
}

impl Div for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn div(self, rhs: Self) -> QuadraticNumber {
        self * &rhs.inverse().expect("division by zero in Q(sqrt 5)")
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new(-self.x.clone(), -self.y.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, rhs: Self) -> QuadraticNumber {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let sign = if self.y.is_negative() { "-" } else { "+" };
        write!(f, "{} {sign} {}*sqrt5", self.x, self.y.abs())
    }
}

/// Rank of a matrix by Gaussian elimination, exactly.
pub fn rank(mut rows: Vec<Vec<QuadraticNumber>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inverse().unwrap();
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..ncols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_identities() {
        let phi = QuadraticNumber::golden_ratio();
        let one = QuadraticNumber::one();
        // φ² = φ + 1
        assert_eq!(&phi * &phi, &phi + &one);
        // 1/φ = φ − 1
        assert_eq!(phi.inverse().unwrap(), &phi - &one);
        assert!((phi.to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        assert!(QuadraticNumber::zero().inverse().is_none());
        assert_eq!((&phi - &QuadraticNumber::from_ints(2, 0)).signum(), -1);
        assert_eq!(QuadraticNumber::from_fractions(-1, 2, 1, 2).signum(), 1);
        assert_eq!(QuadraticNumber::from_ints(-3, 1).signum(), -1);
        assert_eq!(QuadraticNumber::zero().signum(), 0);
    }

    #[test]
    fn exact_rank() {
        let q = |x: i64, y: i64| QuadraticNumber::from_ints(x, y);
        let phi = QuadraticNumber::golden_ratio();
        // second row is φ times the first
        let m = vec![
            vec![q(1, 0), q(2, 1)],
            vec![phi.clone(), &phi * &q(2, 1)],
        ];
        assert_eq!(rank(m), 1);
        assert_eq!(rank(vec![vec![q(1, 0), q(0, 1)], vec![q(0, 1), q(1, 0)]]), 2);
        assert_eq!(rank(vec![vec![q(0, 0); 3]; 3]), 0);
    }
}
