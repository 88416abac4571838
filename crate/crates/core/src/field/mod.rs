//! Arithmetic in F_q for odd q = p^k.
//!
//! A [`FieldCtx`] fixes the prime `p`, the degree `k`, an irreducible modulus
//! and a non-square `gamma`. Elements are small [`FieldElem`] handles whose
//! integer value is the element's position in the canonical order: coefficient
//! vectors `(c0, ..., c_{k-1})` in the power basis, compared lexicographically
//! with the constant term most significant. Comparing handles is therefore
//! comparing elements in canonical order.
//!
//! Addition and multiplication are tabulated at construction, which is cheap
//! at the field sizes this crate targets and makes the geometry loops fast.
//!
//! ```
//! use fqdist::field::{FieldCtx, QuadClass};
//!
//! let f5 = FieldCtx::prime(5).unwrap();
//! assert_eq!(f5.gamma(), f5.from_int(2));
//! assert_eq!(f5.quad_class(f5.from_int(4)), QuadClass::Square);
//! assert_eq!(f5.sqrt(f5.from_int(2)), None);
//! ```

mod cyclotomic;
pub(crate) mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use cyclotomic::Cyclotomic;

use crate::error::{Error, Result};

/// Largest field order supported; tables are `q²` entries.
pub const MAX_ORDER: u64 = 1024;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElem(u32);

impl FieldElem {
    /// Position of the element in the canonical order.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuadClass {
    Zero,
    Square,
    NonSquare,
}

/// JSON descriptor of a field: `{p, k, modulus}` with the modulus listed
/// lowest coefficient first, omitted for prime fields.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    gamma: FieldElem,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FieldCtx {
    /// Builds F_{p^k}. Without an explicit modulus the smallest monic
    /// irreducible polynomial of degree `k` (canonical order) is used.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::CompositeP(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = u64::from(p)
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge {
                q: u64::from(p).saturating_pow(k),
                max: MAX_ORDER,
            })? as u32;

        let modulus = if k == 1 {
            if let Some(m) = &modulus {
                if m.len() != 2 || m[1] != 1 || m[0] >= p {
                    return Err(Error::InvalidModulus(format!("{m:?} is not monic of degree 1")));
                }
            }
            None
        } else {
            let m = match modulus {
                Some(m) => {
                    if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                        return Err(Error::InvalidModulus(format!(
                            "{m:?} is not a monic degree-{k} polynomial over F_{p}"
                        )));
                    }
                    if !poly::is_irreducible(&m, p) {
                        return Err(Error::ReducibleModulus(m));
                    }
                    m
                }
                None => poly::smallest_irreducible(k, p),
            };
            Some(m)
        };

        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            gamma: FieldElem(0),
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            trace: Vec::new(),
        };
        ctx.build_tables();
        let gamma = ctx
            .elements()
            .find(|&a| ctx.quad_class(a) == QuadClass::NonSquare)
            .expect("odd fields have non-squares");
        ctx.gamma = gamma;
        Ok(ctx)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        Self::new(desc.p, desc.k, desc.modulus.clone())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
        }
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let k = self.k as usize;
        let p = self.p;
        let coeffs: Vec<Vec<u32>> = (0..q).map(|i| self.coeffs(FieldElem(i as u32))).collect();
        self.add = vec![0; q * q];
        self.mul = vec![0; q * q];
        for a in 0..q {
            for b in a..q {
                let sum: Vec<u32> = coeffs[a].iter().zip(&coeffs[b]).map(|(x, y)| (x + y) % p).collect();
                let prod = match &self.modulus {
                    None => vec![(u64::from(coeffs[a][0]) * u64::from(coeffs[b][0]) % u64::from(p)) as u32],
                    Some(m) => {
                        let full = poly::mul(&poly::trim(coeffs[a].clone()), &poly::trim(coeffs[b].clone()), p);
                        let mut r = poly::rem_monic(&full, m, p);
                        r.resize(k, 0);
                        r
                    }
                };
                let s = self.index_of(&sum);
                let t = self.index_of(&prod);
                self.add[a * q + b] = s;
                self.add[b * q + a] = s;
                self.mul[a * q + b] = t;
                self.mul[b * q + a] = t;
            }
        }
        self.neg = (0..q)
            .map(|a| (0..q as u32).find(|&b| self.add[a * q + b as usize] == 0).unwrap())
            .collect();
        self.inv = vec![0; q];
        for a in 1..q {
            let b = self.pow(FieldElem(a as u32), u64::from(self.q) - 2);
            self.inv[a] = b.0;
        }
        self.trace = (0..q)
            .map(|a| {
                let mut acc = FieldElem(0);
                let mut frob = FieldElem(a as u32);
                for _ in 0..k {
                    acc = self.add(acc, frob);
                    frob = self.pow(frob, u64::from(p));
                }
                debug_assert!(self.in_prime_subfield(acc));
                self.coeffs(acc)[0]
            })
            .collect();
    }

    fn index_of(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    /// The fixed non-square: the smallest one in canonical order.
    pub fn gamma(&self) -> FieldElem {
        self.gamma
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.q).map(FieldElem)
    }

    /// Element at position `index` of the canonical order.
    pub fn elem(&self, index: usize) -> Result<FieldElem> {
        if index < self.q as usize {
            Ok(FieldElem(index as u32))
        } else {
            Err(Error::InvalidElement(format!("index {index} out of range for F_{}", self.q)))
        }
    }

    /// Image of an integer under Z → F_p ⊂ F_q (a constant polynomial).
    pub fn from_int(&self, n: i64) -> FieldElem {
        let r = n.rem_euclid(i64::from(self.p)) as u32;
        FieldElem(r * self.p.pow(self.k - 1))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidElement(format!(
                "{coeffs:?} is not {} residues mod {}",
                self.k, self.p
            )));
        }
        Ok(FieldElem(self.index_of(coeffs)))
    }

    /// Power-basis coefficients `[c0, ..., c_{k-1}]`.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut out = vec![0; self.k as usize];
        let mut idx = a.0;
        for c in out.iter_mut().rev() {
            *c = idx % self.p;
            idx /= self.p;
        }
        out
    }

    pub fn in_prime_subfield(&self, a: FieldElem) -> bool {
        self.coeffs(a)[1..].iter().all(|&c| c == 0)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[a.index() * self.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.index()])
    }

    #[inline]
    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem(self.inv[a.index()]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion: `a^((q-1)/2)` is `1` for squares and `-1` otherwise.
    pub fn quad_class(&self, a: FieldElem) -> QuadClass {
        if a.0 == 0 {
            QuadClass::Zero
        } else if self.pow(a, u64::from(self.q - 1) / 2) == self.one() {
            QuadClass::Square
        } else {
            QuadClass::NonSquare
        }
    }

    /// Square root by Tonelli-Shanks, using `gamma` as the non-residue.
    /// Returns the smaller of the two roots in canonical order.
    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        match self.quad_class(a) {
            QuadClass::Zero => return Some(a),
            QuadClass::NonSquare => return None,
            QuadClass::Square => {}
        }
        let one = self.one();
        let mut s = 0u32;
        let mut m = u64::from(self.q - 1);
        while m % 2 == 0 {
            m /= 2;
            s += 1;
        }
        let mut c = self.pow(self.gamma, m);
        let mut x = self.pow(a, (m + 1) / 2);
        let mut b = self.pow(a, m);
        while b != one {
            let mut i = 0;
            let mut t = b;
            while t != one {
                t = self.square(t);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(s - i - 1) {
                g = self.square(g);
            }
            x = self.mul(x, g);
            c = self.square(g);
            b = self.mul(b, c);
            s = i;
        }
        Some(x.min(self.neg(x)))
    }

    /// Absolute trace to the prime field, `Σ_i a^{p^i}`, as a residue mod p.
    pub fn trace(&self, a: FieldElem) -> u32 {
        self.trace[a.index()]
    }

    /// The additive character χ(a) = ζ_p^{Tr(a)}.
    pub fn char_eval(&self, a: FieldElem) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.p, self.trace(a))
    }

    pub fn display(&self, a: FieldElem) -> ElemDisplay<'_> {
        ElemDisplay { ctx: self, elem: a }
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("gamma", &self.coeffs(self.gamma))
            .finish()
    }
}

pub struct ElemDisplay<'a> {
    ctx: &'a FieldCtx,
    elem: FieldElem,
}

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.ctx.coeffs(self.elem);
        if c.len() == 1 {
            write!(f, "{}", c[0])
        } else {
            write!(f, "{c:?}")
        }
    }
}
