//! Prime fields and their quadratic extensions, small orders only.

use crate::error::{Error, Result};

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Arithmetic modulo an odd prime `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if q.is_multiple_of(2) || !is_prime(q) {
            return Err(Error::InvalidOrder(q));
        }
        Ok(PrimeField { q })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u32) -> u32 {
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (!a.is_multiple_of(self.q)).then(|| self.pow(a, self.q - 2))
    }
}

/// `F_q[x] / (x² + b·x + c)` with the lexicographically smallest
/// irreducible monic modulus. Element `c0 + c1·x` has index `c0 + q·c1`.
#[derive(Clone, Debug)]
pub struct QuadExtField {
    base: PrimeField,
    modulus: (u32, u32),
    mul_table: Vec<u32>,
    inv_table: Vec<u32>,
}

impl QuadExtField {
    pub fn new(base: PrimeField) -> Self {
        let q = base.order();
        let has_root = |b: u32, c: u32| (0..q).any(|x| base.add(base.add(base.mul(x, x), base.mul(b, x)), c) == 0);
        let modulus = (0..q)
            .flat_map(|b| (0..q).map(move |c| (b, c)))
            .find(|&(b, c)| !has_root(b, c))
            .expect("an irreducible monic quadratic exists over every prime field");
        let size = (q * q) as usize;
        let mut field = QuadExtField { base, modulus, mul_table: vec![0; size * size], inv_table: vec![0; size] };
        for u in 0..size as u32 {
            for v in 0..size as u32 {
                field.mul_table[u as usize * size + v as usize] = field.mul_slow(u, v);
            }
        }
        for u in 1..size as u32 {
            let inv = (1..size as u32)
                .find(|&v| field.mul(u, v) == 1)
                .expect("nonzero elements of a field are invertible");
            field.inv_table[u as usize] = inv;
        }
        field
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// `(b, c)` for the modulus `x² + b·x + c`.
    pub fn modulus(&self) -> (u32, u32) {
        self.modulus
    }

    pub fn size(&self) -> u32 {
        let q = self.base.order();
        q * q
    }

    pub fn coeffs(&self, u: u32) -> (u32, u32) {
        let q = self.base.order();
        (u % q, u / q)
    }

    pub fn from_coeffs(&self, c0: u32, c1: u32) -> u32 {
        c0 + self.base.order() * c1
    }

    /// Embeds the base-field element `a`.
    pub fn embed(&self, a: u32) -> u32 {
        a % self.base.order()
    }

    pub fn add(&self, u: u32, v: u32) -> u32 {
        let (f, (a0, a1), (b0, b1)) = (self.base, self.coeffs(u), self.coeffs(v));
        self.from_coeffs(f.add(a0, b0), f.add(a1, b1))
    }

    pub fn sub(&self, u: u32, v: u32) -> u32 {
        let (f, (a0, a1), (b0, b1)) = (self.base, self.coeffs(u), self.coeffs(v));
        self.from_coeffs(f.sub(a0, b0), f.sub(a1, b1))
    }

    pub fn neg(&self, u: u32) -> u32 {
        self.sub(0, u)
    }

    fn mul_slow(&self, u: u32, v: u32) -> u32 {
        let (f, (a0, a1), (b0, b1)) = (self.base, self.coeffs(u), self.coeffs(v));
        let (mb, mc) = self.modulus;
        // (a0 + a1 x)(b0 + b1 x) with x² = −b x − c.
        let sq = f.mul(a1, b1);
        let c0 = f.sub(f.mul(a0, b0), f.mul(sq, mc));
        let c1 = f.sub(f.add(f.mul(a0, b1), f.mul(a1, b0)), f.mul(sq, mb));
        self.from_coeffs(c0, c1)
    }

    pub fn mul(&self, u: u32, v: u32) -> u32 {
        self.mul_table[(u * self.size() + v) as usize]
    }

    pub fn inv(&self, u: u32) -> Option<u32> {
        (u != 0).then(|| self.inv_table[u as usize])
    }
}
