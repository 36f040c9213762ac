//! Exact arithmetic in GF(p) and GF(p^2), the square-zero deformation ring,
//! and the p-th power check for the plane vector field x*d/dx + d/dy.
//!
//! GF(p^2) is realised as GF(p)[t]/(t^2 - c) for the smallest quadratic
//! non-residue c, so that every value is reproducible from p alone. The
//! Frobenius x -> x^p sends t to -t.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// An element a + b*t of GF(p^2), with 0 <= a, b < p. Plain data; all
/// arithmetic goes through [`Gf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElt {
    pub a: u64,
    pub b: u64,
}

impl FqElt {
    pub const ZERO: FqElt = FqElt { a: 0, b: 0 };

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// The field GF(p^2) = GF(p)[t]/(t^2 - c) for an odd prime p and the
/// smallest non-residue c.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf {
    p: u64,
    c: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Gf {
    /// Builds the field context for an odd prime p, selecting the smallest
    /// quadratic non-residue as c.
    pub fn new(p: u64) -> Result<Gf> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        // p must stay small enough that p*p fits a u64 product.
        if p >= 1 << 31 {
            return Err(Error::NotOddPrime(p));
        }
        let c = (2..p)
            .find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1)
            .expect("odd prime has a non-residue");
        Ok(Gf { p, c })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// Number of elements of GF(p^2).
    pub fn order(&self) -> u64 {
        self.p * self.p
    }

    pub fn elt(&self, a: i64, b: i64) -> FqElt {
        let p = self.p as i64;
        FqElt {
            a: (a.rem_euclid(p)) as u64,
            b: (b.rem_euclid(p)) as u64,
        }
    }

    pub fn zero(&self) -> FqElt {
        FqElt::ZERO
    }

    pub fn one(&self) -> FqElt {
        FqElt { a: 1, b: 0 }
    }

    pub fn t(&self) -> FqElt {
        FqElt { a: 0, b: 1 }
    }

    pub fn from_u64(&self, x: u64) -> FqElt {
        FqElt { a: x % self.p, b: 0 }
    }

    pub fn add(&self, x: FqElt, y: FqElt) -> FqElt {
        FqElt {
            a: (x.a + y.a) % self.p,
            b: (x.b + y.b) % self.p,
        }
    }

    pub fn neg(&self, x: FqElt) -> FqElt {
        FqElt {
            a: (self.p - x.a) % self.p,
            b: (self.p - x.b) % self.p,
        }
    }

    pub fn sub(&self, x: FqElt, y: FqElt) -> FqElt {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FqElt, y: FqElt) -> FqElt {
        // (a + bt)(a' + b't) = aa' + bb'c + (ab' + a'b) t
        let p = self.p;
        FqElt {
            a: (x.a * y.a % p + x.b * y.b % p * self.c) % p,
            b: (x.a * y.b % p + x.b * y.a % p) % p,
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, x: FqElt) -> Result<FqElt> {
        if x.is_zero() {
            return Err(Error::DivisionByZero(self.p));
        }
        // (a + bt)^-1 = (a - bt) / (a^2 - c b^2); the norm is nonzero since
        // c is a non-residue.
        let p = self.p;
        let norm = (x.a * x.a % p + (p - self.c) * (x.b * x.b % p)) % p;
        let ninv = pow_mod(norm, p - 2, p);
        Ok(FqElt {
            a: x.a * ninv % p,
            b: (p - x.b) % p * ninv % p,
        })
    }

    pub fn div(&self, x: FqElt, y: FqElt) -> Result<FqElt> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Frobenius x -> x^p: fixes GF(p) and sends t to -t.
    pub fn frob(&self, x: FqElt) -> FqElt {
        FqElt {
            a: x.a,
            b: (self.p - x.b) % self.p,
        }
    }

    /// trace(x) = x + x^p, always in the prime field.
    pub fn conj_trace(&self, x: FqElt) -> u64 {
        2 * x.a % self.p
    }

    /// norm(x) = x * x^p, always in the prime field.
    pub fn conj_norm(&self, x: FqElt) -> u64 {
        let p = self.p;
        (x.a * x.a % p + (p - self.c) * (x.b * x.b % p)) % p
    }

    pub fn pow(&self, x: FqElt, e: u64) -> FqElt {
        let mut acc = self.one();
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All p^2 elements, in the fixed order (a, b) with a fastest.
    pub fn elements(&self) -> impl Iterator<Item = FqElt> + '_ {
        let p = self.p;
        (0..p * p).map(move |i| FqElt { a: i % p, b: i / p })
    }

    /// Element at index `i` in the order used by [`Gf::elements`].
    pub fn elt_at(&self, i: u64) -> FqElt {
        FqElt {
            a: i % self.p,
            b: i / self.p,
        }
    }

    /// Canonical string form "a+b*t".
    pub fn render(&self, x: FqElt) -> String {
        format!("{}+{}*t", x.a, x.b)
    }
}

/// An element of the truncated deformation ring R = k (+) m with m^2 = 0:
/// a constant term plus a finite linear combination of named square-zero
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefRingElt {
    pub constant: FqElt,
    pub linear: BTreeMap<String, FqElt>,
}

impl DefRingElt {
    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_empty()
    }

    /// True when the constant term vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.constant.is_zero()
    }
}

/// The ring suite over a fixed field and generator list.
#[derive(Debug, Clone)]
pub struct DefRing {
    gf: Gf,
    gens: Vec<String>,
}

impl DefRing {
    pub fn new(gf: Gf, gens: Vec<String>) -> DefRing {
        DefRing { gf, gens }
    }

    pub fn gf(&self) -> &Gf {
        &self.gf
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn zero(&self) -> DefRingElt {
        DefRingElt {
            constant: FqElt::ZERO,
            linear: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> DefRingElt {
        self.constant(self.gf.one())
    }

    pub fn constant(&self, x: FqElt) -> DefRingElt {
        DefRingElt {
            constant: x,
            linear: BTreeMap::new(),
        }
    }

    pub fn generator(&self, name: &str) -> Result<DefRingElt> {
        if !self.gens.iter().any(|g| g == name) {
            return Err(Error::UnknownGenerator(name.to_string()));
        }
        let mut linear = BTreeMap::new();
        linear.insert(name.to_string(), self.gf.one());
        Ok(DefRingElt {
            constant: FqElt::ZERO,
            linear,
        })
    }

    pub fn add(&self, x: &DefRingElt, y: &DefRingElt) -> DefRingElt {
        let mut linear = x.linear.clone();
        for (g, &c) in &y.linear {
            let cur = linear.entry(g.clone()).or_insert(FqElt::ZERO);
            *cur = self.gf.add(*cur, c);
        }
        linear.retain(|_, c| !c.is_zero());
        DefRingElt {
            constant: self.gf.add(x.constant, y.constant),
            linear,
        }
    }

    pub fn neg(&self, x: &DefRingElt) -> DefRingElt {
        DefRingElt {
            constant: self.gf.neg(x.constant),
            linear: x
                .linear
                .iter()
                .map(|(g, &c)| (g.clone(), self.gf.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, x: &DefRingElt, y: &DefRingElt) -> DefRingElt {
        self.add(x, &self.neg(y))
    }

    /// Product; the linear-times-linear part dies since m^2 = 0.
    pub fn mul(&self, x: &DefRingElt, y: &DefRingElt) -> DefRingElt {
        let mut linear: BTreeMap<String, FqElt> = BTreeMap::new();
        for (g, &c) in &x.linear {
            let v = self.gf.mul(y.constant, c);
            if !v.is_zero() {
                linear.insert(g.clone(), v);
            }
        }
        for (g, &c) in &y.linear {
            let v = self.gf.mul(x.constant, c);
            if !v.is_zero() {
                let cur = linear.entry(g.clone()).or_insert(FqElt::ZERO);
                *cur = self.gf.add(*cur, v);
                if cur.is_zero() {
                    linear.remove(g);
                }
            }
        }
        DefRingElt {
            constant: self.gf.mul(x.constant, y.constant),
            linear,
        }
    }

    pub fn scale(&self, c: FqElt, x: &DefRingElt) -> DefRingElt {
        self.mul(&self.constant(c), x)
    }

    /// Ring Frobenius: (c + nilpotent)^p = c^p because p >= 3 kills every
    /// mixed term through the square-zero ideal.
    pub fn frob(&self, x: &DefRingElt) -> DefRingElt {
        self.constant(self.gf.frob(x.constant))
    }

    /// Inverse of a unit (nonzero constant term):
    /// (c + l)^-1 = c^-1 - c^-2 l.
    pub fn inv(&self, x: &DefRingElt) -> Result<DefRingElt> {
        let cinv = self.gf.inv(x.constant)?;
        let neg_cinv2 = self.gf.neg(self.gf.mul(cinv, cinv));
        let mut out = self.constant(cinv);
        for (g, &c) in &x.linear {
            out.linear.insert(g.clone(), self.gf.mul(neg_cinv2, c));
        }
        out.linear.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Canonical string form "a+b*t + (a'+b'*t)*gen + ...".
    pub fn render(&self, x: &DefRingElt) -> String {
        let mut s = self.gf.render(x.constant);
        for (g, &c) in &x.linear {
            s.push_str(&format!(" + ({})*{}", self.gf.render(c), g));
        }
        s
    }
}

/// A polynomial in x, y over GF(p), sparsely stored by (deg_x, deg_y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly2 {
    p: u64,
    coeffs: BTreeMap<(u32, u32), u64>,
}

impl Poly2 {
    pub fn zero(p: u64) -> Poly2 {
        Poly2 {
            p,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(p: u64, dx: u32, dy: u32, coef: u64) -> Poly2 {
        let mut out = Poly2::zero(p);
        out.add_term(dx, dy, coef);
        out
    }

    fn add_term(&mut self, dx: u32, dy: u32, coef: u64) {
        let c = coef % self.p;
        if c == 0 {
            return;
        }
        let cur = self.coeffs.entry((dx, dy)).or_insert(0);
        *cur = (*cur + c) % self.p;
        if *cur == 0 {
            self.coeffs.remove(&(dx, dy));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The vector field x*d/dx + d/dy applied once.
    pub fn xi(&self) -> Poly2 {
        let mut out = Poly2::zero(self.p);
        for (&(dx, dy), &c) in &self.coeffs {
            // x * d/dx keeps the monomial, scaled by dx.
            out.add_term(dx, dy, c * (dx as u64 % self.p));
            if dy > 0 {
                out.add_term(dx, dy - 1, c * (dy as u64 % self.p));
            }
        }
        out
    }

    /// The vector field x*d/dx applied once.
    pub fn x_ddx(&self) -> Poly2 {
        let mut out = Poly2::zero(self.p);
        for (&(dx, dy), &c) in &self.coeffs {
            out.add_term(dx, dy, c * (dx as u64 % self.p));
        }
        out
    }
}

/// Comparison of xi^(p) with x*d/dx on a single monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationCase {
    pub deg_x: u32,
    pub deg_y: u32,
    pub ok: bool,
}

/// Result of checking xi^(p) = x*d/dx on all monomials up to a total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationCheck {
    pub p: u64,
    pub degree_bound: u32,
    pub cases: Vec<DerivationCase>,
}

impl DerivationCheck {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.ok)
    }
}

/// Applies xi = x*d/dx + d/dy p times to every monomial x^a y^b with
/// a + b <= degree_bound and compares with a single application of x*d/dx.
pub fn p_power_of_derivation(p: u64, degree_bound: u32) -> Result<DerivationCheck> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut cases = Vec::new();
    for dx in 0..=degree_bound {
        for dy in 0..=(degree_bound - dx) {
            let mono = Poly2::monomial(p, dx, dy, 1);
            let mut iterated = mono.clone();
            for _ in 0..p {
                iterated = iterated.xi();
            }
            let once = mono.x_ddx();
            cases.push(DerivationCase {
                deg_x: dx,
                deg_y: dy,
                ok: iterated == once,
            });
        }
    }
    Ok(DerivationCheck {
        p,
        degree_bound,
        cases,
    })
}
