use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::arith::prime_power;
use crate::error::{Error, Result};

/// Largest field order supported for extension fields (log/exp tables).
const MAX_EXTENSION_ORDER: u64 = 1 << 20;

/// The finite field `F_q`, `q = p^t`.
///
/// Elements are `u32` values `c_0 + c_1 p + … + c_{t−1} p^{t−1}` encoding the
/// residue `c_0 + c_1 x + … + c_{t−1} x^{t−1}` modulo the defining
/// polynomial. For `t > 1` the defining polynomial is the least monic
/// irreducible of degree `t` when its lower coefficients are read as the
/// base-`p` integer `c_0 + c_1 p + …`.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

struct FieldData {
    p: u32,
    degree: u32,
    q: u32,
    /// Coefficients `c_0..c_t` of the monic defining polynomial.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive element `g` (extension fields only).
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.q.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, t) =
            prime_power(q).ok_or_else(|| Error::input(format!("{q} is not a prime power")))?;
        if t == 1 {
            if q > u32::MAX as u64 {
                return Err(Error::input(format!("field order {q} too large")));
            }
            return Ok(FiniteField(Arc::new(FieldData {
                p: p as u32,
                degree: 1,
                q: q as u32,
                modulus: vec![0, 1],
                exp: Vec::new(),
                log: Vec::new(),
            })));
        }
        if q > MAX_EXTENSION_ORDER {
            return Err(Error::input(format!(
                "extension field order {q} above supported {MAX_EXTENSION_ORDER}"
            )));
        }
        let (p, t, q) = (p as u32, t, q as u32);
        let modulus = least_irreducible(p, t);
        let (exp, log) = build_log_tables(p, t, q, &modulus);
        Ok(FiniteField(Arc::new(FieldData {
            p,
            degree: t,
            q,
            modulus,
            exp,
            log,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.0.q
    }

    /// Image of an integer under `Z → F_p ⊆ F_q`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.degree == 1 {
            return ((a as u64 + b as u64) % p as u64) as u32;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.0.degree {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.degree == 1 {
            return (p - a % p) % p;
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        for _ in 0..self.0.degree {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.degree == 1 {
            return ((a as u64 * b as u64) % self.0.p as u64) as u32;
        }
        let n = self.0.q - 1;
        let e = (self.0.log[a as usize] + self.0.log[b as usize]) % n;
        self.0.exp[e as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.0.degree == 1 {
            return Some(self.pow(a, self.0.p as u64 - 2));
        }
        let n = self.0.q - 1;
        Some(self.0.exp[((n - self.0.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }
}

// Polynomials over F_p as little-endian coefficient vectors.

fn poly_trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let m = poly_trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for i in 0..=dm {
            let sub = (c as u64 * m[i] as u64 % p as u64) as u32;
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    poly_rem(&out.into_iter().map(|c| c as u32).collect::<Vec<_>>(), m, p)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn digits(mut k: u64, p: u32, len: u32) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (k % p as u64) as u32;
            k /= p as u64;
            d
        })
        .collect()
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let t = (f.len() - 1) as u32;
    for d in 1..=t / 2 {
        for k in 0..(p as u64).pow(d) {
            let mut g = digits(k, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible polynomial of degree `t` over `F_p`.
pub(crate) fn least_irreducible(p: u32, t: u32) -> Vec<u32> {
    for k in 0..(p as u64).pow(t) {
        let mut f = digits(k, p, t);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn encode(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build_log_tables(p: u32, t: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = (q - 1) as usize;
    for cand in 2..q {
        let g = poly_trim(digits(cand as u64, p, t));
        let mut exp = Vec::with_capacity(n);
        let mut x = vec![1u32];
        loop {
            let code = encode(&x, p);
            if !exp.is_empty() && code == 1 {
                break;
            }
            exp.push(code);
            x = poly_mul_mod(&x, &g, modulus, p);
        }
        if exp.len() == n {
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return (exp, log);
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}
