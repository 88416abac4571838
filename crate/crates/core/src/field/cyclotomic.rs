//! Exact elements of the cyclotomic ring Z[ζ_p].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element `Σ_j coeffs[j] · ζ^j` of Z[ζ_p] for an odd prime `p`.
///
/// Kept in canonical form with `coeffs[p - 1] == 0`, using the relation
/// `1 + ζ + ... + ζ^{p-1} = 0`. Two values are equal iff their canonical
/// coefficient vectors are equal, so `PartialEq` is exact equality in the ring.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cyclotomic {
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(p: u32) -> Self {
        Self { coeffs: vec![0; p as usize] }
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = n;
        out
    }

    /// ζ^e, with the exponent read modulo `p`.
    pub fn zeta_pow(p: u32, e: u32) -> Self {
        let mut counts = vec![0; p as usize];
        counts[(e % p) as usize] = 1;
        Self::from_coeffs(counts)
    }

    /// Builds `Σ_j counts[j] ζ^j` from a raw (non-canonical) coefficient vector
    /// whose length is the prime `p`.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        let last = *coeffs.last().expect("p >= 3");
        if last != 0 {
            for c in coeffs.iter_mut() {
                *c -= last;
            }
        }
        Self { coeffs }
    }

    pub fn prime(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer this value equals, if it lies in Z.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    /// Complex conjugation, ζ^j ↦ ζ^{p-j}.
    pub fn conj(&self) -> Self {
        let p = self.coeffs.len();
        let mut out = vec![0; p];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[(p - j) % p] += c;
        }
        Self::from_coeffs(out)
    }

    /// `self · conj(self)`, the squared absolute value.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// `self · ζ^e`, a rotation of the coefficient vector.
    pub fn mul_zeta_pow(&self, e: u32) -> Self {
        let p = self.coeffs.len();
        let e = e as usize % p;
        let mut out = vec![0; p];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[(j + e) % p] = c;
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(
            self.coeffs.len(),
            other.coeffs.len(),
            "cyclotomic values from different rings"
        );
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same_ring(rhs);
        Cyclotomic {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same_ring(rhs);
        Cyclotomic {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same_ring(rhs);
        let p = self.coeffs.len();
        let mut out = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        Cyclotomic::from_coeffs(out)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of an empty cyclotomic iterator has no ring");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (j, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "ζ^{j}")?,
                _ => write!(f, "{a}ζ^{j}")?,
            }
        }
        Ok(())
    }
}
