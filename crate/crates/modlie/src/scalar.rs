//! Exact scalars: elements of GF(p) and of the rational function field GF(p)(t).
//!
//! Structure constants of the algebras we build live in GF(p) for p in {2, 3, 5},
//! except for the one-parameter families (weak Kac–Moody style matrices with a
//! generic entry), where the parameter is kept symbolic as the indeterminate `t`
//! of GF(p)(t).  A single concrete scalar type avoids threading a field trait
//! through every consumer; rational functions are kept normalized (reduced,
//! monic denominator) and collapse back to the `Fp` variant whenever they are
//! constant, so equality is structural.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense polynomial over GF(p), ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    pub p: u32,
    pub coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(p: u32, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p as u64;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn constant(p: u32, c: u64) -> Self {
        Poly::new(p, vec![c])
    }

    /// The indeterminate t.
    pub fn t(p: u32) -> Self {
        Poly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let p = self.p as u64;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + b) % p;
        }
        Poly::new(self.p, out)
    }

    pub fn neg(&self) -> Poly {
        let p = self.p as u64;
        Poly::new(self.p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Poly::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> Poly {
        let p = self.p as u64;
        let c = c % p;
        Poly::new(self.p, self.coeffs.iter().map(|&a| a * c % p).collect())
    }

    /// Euclidean division; panics if `div` is zero.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let p = self.p as u64;
        let dlead_inv = inv_mod(div.leading(), self.p);
        let mut rem = self.coeffs.clone();
        let dd = div.coeffs.len() - 1;
        if rem.len() <= dd {
            return (Poly::zero(self.p), self.clone());
        }
        let mut quo = vec![0u64; rem.len() - dd];
        while rem.len() > dd {
            let lead = *rem.last().unwrap();
            if lead == 0 {
                rem.pop();
                continue;
            }
            let q = lead * dlead_inv % p;
            let shift = rem.len() - 1 - dd;
            quo[shift] = q;
            for (i, &dc) in div.coeffs.iter().enumerate() {
                let idx = shift + i;
                rem[idx] = (rem[idx] + p * p - q * dc % p) % p;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (Poly::new(self.p, quo), Poly::new(self.p, rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.scale(inv_mod(a.leading(), a.p))
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u64;
        let x = x % p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c) % p;
        }
        acc
    }

    /// All roots in GF(p), found by exhaustion (p is tiny).
    pub fn roots(&self) -> Vec<u64> {
        if self.is_zero() {
            return (0..self.p as u64).collect();
        }
        (0..self.p as u64).filter(|&x| self.eval(x) == 0).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

fn inv_mod(a: u64, p: u32) -> u64 {
    let p = p as u64;
    let a = a % p;
    assert!(a != 0, "inverse of zero mod {p}");
    // p is prime and tiny; Fermat is fine.
    let mut acc = 1u64;
    let mut base = a;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// A scalar: either an element of GF(p) or a reduced rational function in GF(p)(t).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum K {
    Fp { v: u64, p: u32 },
    /// Invariants: den monic, gcd(num, den) = 1, den degree >= 1 or num degree >= 1.
    Rat { num: Poly, den: Poly },
}

impl K {
    pub fn fp(v: i64, p: u32) -> K {
        let m = p as i64;
        K::Fp {
            v: v.rem_euclid(m) as u64,
            p,
        }
    }

    pub fn zero(p: u32) -> K {
        K::Fp { v: 0, p }
    }

    pub fn one(p: u32) -> K {
        K::Fp { v: 1 % p as u64, p }
    }

    /// The indeterminate t of GF(p)(t).
    pub fn t(p: u32) -> K {
        K::Rat {
            num: Poly::t(p),
            den: Poly::constant(p, 1),
        }
    }

    pub fn rat(num: Poly, den: Poly) -> K {
        assert_eq!(num.p, den.p);
        assert!(!den.is_zero(), "rational function with zero denominator");
        let p = num.p;
        if num.is_zero() {
            return K::zero(p);
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead_inv = inv_mod(den.leading(), p);
        let num = num.scale(lead_inv);
        let den = den.scale(lead_inv);
        if den.is_constant() && num.is_constant() {
            K::Fp {
                v: num.coeffs.first().copied().unwrap_or(0),
                p,
            }
        } else {
            K::Rat { num, den }
        }
    }

    pub fn prime(&self) -> u32 {
        match self {
            K::Fp { p, .. } => *p,
            K::Rat { num, .. } => num.p,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, K::Fp { v: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self, K::Fp { v: 1, .. })
    }

    fn as_rat(&self) -> (Poly, Poly) {
        match self {
            K::Fp { v, p } => (Poly::constant(*p, *v), Poly::constant(*p, 1)),
            K::Rat { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn add(&self, other: &K) -> K {
        match (self, other) {
            (K::Fp { v: a, p }, K::Fp { v: b, .. }) => K::Fp {
                v: (a + b) % *p as u64,
                p: *p,
            },
            _ => {
                let (n1, d1) = self.as_rat();
                let (n2, d2) = other.as_rat();
                K::rat(n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2))
            }
        }
    }

    pub fn neg(&self) -> K {
        match self {
            K::Fp { v, p } => K::Fp {
                v: (*p as u64 - v) % *p as u64,
                p: *p,
            },
            K::Rat { num, den } => K::Rat {
                num: num.neg(),
                den: den.clone(),
            },
        }
    }

    pub fn sub(&self, other: &K) -> K {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &K) -> K {
        match (self, other) {
            (K::Fp { v: a, p }, K::Fp { v: b, .. }) => K::Fp {
                v: a * b % *p as u64,
                p: *p,
            },
            _ => {
                let (n1, d1) = self.as_rat();
                let (n2, d2) = other.as_rat();
                K::rat(n1.mul(&n2), d1.mul(&d2))
            }
        }
    }

    pub fn inv(&self) -> K {
        match self {
            K::Fp { v, p } => K::Fp {
                v: inv_mod(*v, *p),
                p: *p,
            },
            K::Rat { num, den } => K::rat(den.clone(), num.clone()),
        }
    }

    pub fn div(&self, other: &K) -> K {
        self.mul(&other.inv())
    }

    /// Evaluate at t = x (identity on GF(p) elements).  None if the denominator vanishes.
    pub fn eval(&self, x: u64) -> Option<u64> {
        match self {
            K::Fp { v, .. } => Some(*v),
            K::Rat { num, den } => {
                let d = den.eval(x);
                if d == 0 {
                    None
                } else {
                    Some(num.eval(x) * inv_mod(d, num.p) % num.p as u64)
                }
            }
        }
    }

    /// Specializations t = x in GF(p) at which this scalar vanishes or blows up.
    /// Used to report which concrete parameter values a symbolic rank excludes.
    pub fn bad_specializations(&self) -> Vec<u64> {
        match self {
            K::Fp { .. } => vec![],
            K::Rat { num, den } => {
                let mut out = num.roots();
                out.extend(den.roots());
                out.sort_unstable();
                out.dedup();
                out
            }
        }
    }
}

impl fmt::Display for K {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            K::Fp { v, .. } => write!(f, "{v}"),
            K::Rat { num, den } => {
                if den.is_constant() {
                    if num.coeffs.iter().filter(|c| **c != 0).count() > 1 {
                        write!(f, "({num})")
                    } else {
                        write!(f, "{num}")
                    }
                } else {
                    write!(f, "({num})/({den})")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let p = 5;
        let a = K::fp(3, p);
        let b = K::fp(4, p);
        assert_eq!(a.add(&b), K::fp(2, p));
        assert_eq!(a.mul(&b), K::fp(2, p));
        assert_eq!(a.sub(&b), K::fp(-1, p));
        assert_eq!(a.mul(&a.inv()), K::one(p));
        assert_eq!(K::fp(-7, p), K::fp(3, p));
    }

    #[test]
    fn rational_normalization() {
        let p = 3;
        let t = K::t(p);
        // (t^2 - 1)/(t - 1) = t + 1
        let num = t.mul(&t).sub(&K::one(p));
        let den = t.sub(&K::one(p));
        let q = num.div(&den);
        assert_eq!(q, t.add(&K::one(p)));
        // constants collapse to Fp
        let c = t.div(&t);
        assert_eq!(c, K::one(p));
        assert!(t.mul(&t.inv()).is_one());
    }

    #[test]
    fn poly_division_and_gcd() {
        let p = 5;
        let a = Poly::new(p, vec![4, 0, 1]); // t^2 + 4 = (t+1)(t+4)
        let b = Poly::new(p, vec![1, 1]); // t + 1
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q, Poly::new(p, vec![4, 1]));
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.roots(), vec![1, 4]);
    }

    #[test]
    fn eval_and_bad_specializations() {
        let p = 2;
        let t = K::t(p);
        let x = t.div(&t.add(&K::one(p))); // t/(t+1)
        assert_eq!(x.eval(0), Some(0));
        assert_eq!(x.eval(1), None);
        assert_eq!(x.bad_specializations(), vec![0, 1]);
    }
}
