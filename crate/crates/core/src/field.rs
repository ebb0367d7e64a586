//! Prime fields, additive and multiplicative characters, Gauss sums.
//!
//! Everything here is table driven: a [`PrimeField`] carries its discrete
//! logarithm table and the additive character `χ(t) = e^{2πit/q}`, and a
//! [`CharacterTable`] stores `ψ(s)` for every residue with `ψ(0) = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported modulus. Products of two residues must fit in `u64`
/// and the dense tables must fit in memory.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug)]
struct FieldTables {
    q: u32,
    generator: u32,
    /// `exp[k] = g^k`, `0 <= k < q - 1`.
    exp: Vec<u32>,
    /// `dlog[x] = k` with `g^k = x`; `dlog[0]` is unused.
    dlog: Vec<u32>,
    /// `chi[t] = e^{2πit/q}`.
    chi: Vec<Complex64>,
}

/// The field `F_q` for a prime `q`, with a fixed primitive root.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct PrimeField {
    tables: Arc<FieldTables>,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimeField").field("q", &self.q()).field("generator", &self.generator()).finish()
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q()
    }
}

impl Eq for PrimeField {}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut k = 3;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Builds `F_q`, its smallest primitive root and the discrete-log table.
pub fn make_field(q: u64) -> Result<PrimeField> {
    PrimeField::new(q)
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::CompositeModulus(q));
        }
        if q >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(q));
        }
        let group = q - 1;
        let factors = prime_factors(group);
        // g is primitive iff g^{(q-1)/p} != 1 for every prime p | q-1.
        let generator =
            (1..q).find(|&g| factors.iter().all(|&p| pow_mod(g, group / p, q) != 1)).expect("F_q^* is cyclic");

        let mut exp = Vec::with_capacity(group as usize);
        let mut dlog = vec![0u32; q as usize];
        let mut x = 1u64;
        for k in 0..group {
            exp.push(x as u32);
            dlog[x as usize] = k as u32;
            x = x * generator % q;
        }

        let chi = (0..q).map(|t| Complex64::from_polar(1.0, std::f64::consts::TAU * t as f64 / q as f64)).collect();

        Ok(PrimeField { tables: Arc::new(FieldTables { q: q as u32, generator: generator as u32, exp, dlog, chi }) })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.tables.q
    }

    #[inline]
    pub fn generator(&self) -> u32 {
        self.tables.generator
    }

    /// Order of the multiplicative group, `q - 1`.
    #[inline]
    pub fn group_order(&self) -> u32 {
        self.tables.q - 1
    }

    pub fn elem(&self, value: i64) -> FieldElement {
        FieldElement { value: self.reduce(value), q: self.q() }
    }

    #[inline]
    pub fn reduce(&self, value: i64) -> u32 {
        value.rem_euclid(self.q() as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q() as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let q = self.q() as u64;
        ((a as u64 + q - b as u64) % q) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.q() as u64) as u32
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        pow_mod(a as u64, e, self.q() as u64) as u32
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        let a = a % self.q();
        if a == 0 {
            return None;
        }
        let n = self.group_order();
        let k = self.tables.dlog[a as usize];
        Some(self.tables.exp[((n - k) % n) as usize])
    }

    /// `g^k`, with `k` taken modulo `q - 1`.
    #[inline]
    pub fn exp(&self, k: i64) -> u32 {
        self.tables.exp[k.rem_euclid(self.group_order() as i64) as usize]
    }

    /// Discrete logarithm base the fixed primitive root; `None` for zero.
    #[inline]
    pub fn dlog(&self, a: u32) -> Option<u32> {
        let a = a % self.q();
        (a != 0).then(|| self.tables.dlog[a as usize])
    }

    /// The additive character `χ(t) = e^{2πit/q}`.
    #[inline]
    pub fn chi(&self, t: u32) -> Complex64 {
        self.tables.chi[(t % self.q()) as usize]
    }

    /// The full table of `χ`, indexed by residue.
    pub fn chi_table(&self) -> &[Complex64] {
        &self.tables.chi
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q()
    }

    pub fn nonzero(&self) -> std::ops::Range<u32> {
        1..self.q()
    }

    /// Table of `s^n` for every residue `s`.
    pub fn power_table(&self, n: u32) -> Vec<u32> {
        self.elements().map(|s| self.pow(s, n as u64)).collect()
    }
}

/// A residue tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement {
    value: u32,
    q: u32,
}

impl FieldElement {
    /// The zero of the field with modulus `q`.
    pub fn zero(q: u32) -> Self {
        FieldElement { value: 0, q }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, e: u64) -> Self {
        FieldElement { value: pow_mod(self.value as u64, e, self.q as u64) as u32, q: self.q }
    }

    /// Inverse by Fermat; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.q as u64 - 2))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.q, rhs.q, "mixed moduli");
        FieldElement { value: ((self.value as u64 + rhs.value as u64) % self.q as u64) as u32, q: self.q }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement { value: (self.q - self.value) % self.q, q: self.q }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.q, rhs.q, "mixed moduli");
        FieldElement { value: (self.value as u64 * rhs.value as u64 % self.q as u64) as u32, q: self.q }
    }
}

/// A multiplicative character `ψ = ψ_1^e` where `ψ_1(g^k) = e^{2πik/h}`.
///
/// `h` (the family order) divides `q - 1`; the exact order of `ψ` is
/// `h / gcd(e, h)`. `ψ(0) = 0`.
#[derive(Clone)]
pub struct CharacterTable {
    field: PrimeField,
    order: u32,
    exponent: u32,
    values: Arc<[Complex64]>,
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharacterTable")
            .field("q", &self.field.q())
            .field("order", &self.order)
            .field("exponent", &self.exponent)
            .finish()
    }
}

/// The character `ψ(g^k) = e^{2πik/order}` of exact order `order`.
pub fn mult_character(field: &PrimeField, order: u32) -> Result<CharacterTable> {
    CharacterTable::new(field, order, 1)
}

/// All characters of exact order `order` (`ψ_1^e` for `e` coprime to `order`).
pub fn characters_of_order(field: &PrimeField, order: u32) -> Result<Vec<CharacterTable>> {
    let base = mult_character(field, order)?;
    Ok((1..order.max(2)).filter(|&e| gcd(e as u64, order as u64) == 1).map(|e| base.pow(e as i64)).collect())
}

impl CharacterTable {
    pub fn new(field: &PrimeField, order: u32, exponent: u32) -> Result<Self> {
        let group = field.group_order();
        if order == 0 || group % order != 0 {
            return Err(Error::OrderDoesNotDivide { order, group_order: group });
        }
        let exponent = exponent % order;
        let roots: Vec<Complex64> =
            (0..order).map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / order as f64)).collect();
        let values = field
            .elements()
            .map(|s| match field.dlog(s) {
                None => Complex64::new(0.0, 0.0),
                Some(k) => roots[((k as u64 * exponent as u64) % order as u64) as usize],
            })
            .collect();
        Ok(CharacterTable { field: field.clone(), order, exponent, values })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// The family order `h`; `ψ^h` is trivial.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn exact_order(&self) -> u32 {
        if self.exponent == 0 {
            1
        } else {
            self.order / gcd(self.exponent as u64, self.order as u64) as u32
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    /// `ψ(s)`, zero at `s = 0`.
    #[inline]
    pub fn eval(&self, s: u32) -> Complex64 {
        self.values[(s % self.field.q()) as usize]
    }

    #[inline]
    pub fn add_char(&self, t: u32) -> Complex64 {
        self.field.chi(t)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `ψ^k` for any integer `k`; negative powers are conjugates.
    pub fn pow(&self, k: i64) -> CharacterTable {
        let e = (self.exponent as i64 * k).rem_euclid(self.order as i64) as u32;
        CharacterTable::new(&self.field, self.order, e).expect("order already validated")
    }

    pub fn conj(&self) -> CharacterTable {
        self.pow(-1)
    }
}

/// `ψ̂(v) = q^{-1} Σ_{s≠0} χ(-vs) ψ(s)`.
pub fn char_fourier(psi: &CharacterTable, v: u32) -> Complex64 {
    let field = psi.field();
    let nv = field.neg(v % field.q());
    let sum: Complex64 = field.nonzero().map(|s| field.chi(field.mul(nv, s)) * psi.eval(s)).sum();
    sum / field.q() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussSum {
    pub value: Complex64,
    /// Set when the character was trivial; the value is then `q - 1`.
    pub trivial_character: bool,
}

/// `G(ψ, χ) = Σ_{s≠0} ψ(s) χ(s)`.
pub fn gauss_sum(psi: &CharacterTable) -> GaussSum {
    let field = psi.field();
    let value = field.nonzero().map(|s| psi.eval(s) * field.chi(s)).sum();
    if psi.is_trivial() {
        log::warn!("Gauss sum of the trivial character over F_{}", field.q());
    }
    GaussSum { value, trivial_character: psi.is_trivial() }
}

/// All `s` with `s^n = c`, ascending.
pub fn nth_power_roots(field: &PrimeField, n: u32, c: u32) -> Vec<u32> {
    assert!(n >= 1, "exponent must be positive");
    let c = c % field.q();
    let Some(log_c) = field.dlog(c) else {
        return vec![0];
    };
    // Solve n k = log_c (mod q - 1).
    let group = field.group_order() as u64;
    let g = gcd(n as u64, group);
    if log_c as u64 % g != 0 {
        return Vec::new();
    }
    let modulus = group / g;
    let k0 = if modulus == 1 {
        0
    } else {
        let inv = inv_mod((n as u64 / g) % modulus, modulus).expect("coprime after dividing by gcd");
        (log_c as u64 / g) * inv % modulus
    };
    let mut roots: Vec<u32> = (0..g).map(|i| field.exp((k0 + i * modulus) as i64)).collect();
    roots.sort_unstable();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(g: u64, q: u64) -> u64 {
        let mut x = g % q;
        let mut k = 1;
        while x != 1 {
            x = x * g % q;
            k += 1;
        }
        k
    }

    #[test]
    fn smallest_primitive_root_of_seven_is_three() {
        let f = make_field(7).unwrap();
        assert_eq!(f.generator(), 3);
        // 2 has order 3 mod 7, so 3 is the first generator.
        assert_eq!(brute_order(2, 7), 3);
        assert_eq!(brute_order(3, 7), 6);
    }

    #[test]
    fn field_of_two_is_degenerate() {
        let f = make_field(2).unwrap();
        assert_eq!(f.generator(), 1);
        assert_eq!(f.dlog(1), Some(0));
        assert_eq!(f.exp(5), 1);
    }

    #[test]
    fn composite_moduli_are_rejected() {
        assert!(matches!(make_field(9), Err(Error::CompositeModulus(9))));
        assert!(matches!(make_field(1), Err(Error::CompositeModulus(1))));
        assert!(matches!(make_field(0), Err(Error::CompositeModulus(0))));
    }

    #[test]
    fn generators_match_brute_force_orders() {
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 61, 101] {
            let f = make_field(q).unwrap();
            let smallest = (1..q).find(|&g| brute_order(g, q) == q - 1).unwrap();
            assert_eq!(f.generator() as u64, smallest, "q = {q}");
            for k in 0..f.group_order() {
                assert_eq!(f.dlog(f.exp(k as i64)), Some(k));
            }
        }
    }

    #[test]
    fn inverse_and_element_ops() {
        let f = make_field(13).unwrap();
        for x in f.nonzero() {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
            let e = f.elem(x as i64);
            assert_eq!((e * e.inv().unwrap()).value(), 1);
        }
        assert_eq!(f.inv(0), None);
        let a = f.elem(-3);
        assert_eq!(a.value(), 10);
        assert_eq!((a + f.elem(5)).value(), 2);
        assert_eq!((f.elem(2) - f.elem(5)).value(), 10);
        assert_eq!(f.elem(2).pow(12).value(), 1);
    }

    #[test]
    fn order_three_character_on_f7() {
        let f = make_field(7).unwrap();
        let psi = mult_character(&f, 3).unwrap();
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!((psi.eval(3) - w).norm() < 1e-15);
        assert!((psi.eval(1) - 1.0).norm() < 1e-15);
        assert_eq!(f.dlog(6), Some(3));
        assert!((psi.eval(6) - 1.0).norm() < 1e-15);
        assert_eq!(psi.eval(0), Complex64::new(0.0, 0.0));
        assert_eq!(psi.exact_order(), 3);
    }

    #[test]
    fn trivial_and_invalid_orders() {
        let f = make_field(7).unwrap();
        let triv = mult_character(&f, 1).unwrap();
        assert!(triv.is_trivial());
        for s in f.nonzero() {
            assert!((triv.eval(s) - 1.0).norm() < 1e-15);
        }
        assert!(matches!(mult_character(&f, 4), Err(Error::OrderDoesNotDivide { order: 4, group_order: 6 })));
        assert!(mult_character(&f, 0).is_err());
    }

    #[test]
    fn characters_are_multiplicative_and_cyclic() {
        let f = make_field(13).unwrap();
        for h in [1, 2, 3, 4, 6, 12] {
            let psi = mult_character(&f, h).unwrap();
            for a in f.nonzero() {
                for b in f.nonzero() {
                    let lhs = psi.eval(f.mul(a, b));
                    assert!((lhs - psi.eval(a) * psi.eval(b)).norm() < 1e-12);
                }
            }
            assert!(psi.pow(h as i64).is_trivial());
        }
        assert_eq!(characters_of_order(&f, 3).unwrap().len(), 2);
        assert_eq!(characters_of_order(&f, 4).unwrap().len(), 2);
        assert_eq!(characters_of_order(&f, 12).unwrap().len(), 4);
    }

    #[test]
    fn orthogonality() {
        for q in [7u64, 13, 31] {
            let f = make_field(q).unwrap();
            for psi in characters_of_order(&f, 3).unwrap() {
                let s: Complex64 = f.nonzero().map(|s| psi.eval(s)).sum();
                assert!(s.norm() < 1e-10);
            }
            for a in f.elements() {
                let s: Complex64 = f.elements().map(|t| f.chi(f.mul(a, t))).sum();
                let expected = if a == 0 { q as f64 } else { 0.0 };
                assert!((s - expected).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn char_fourier_examples() {
        let f = make_field(7).unwrap();
        let psi = mult_character(&f, 3).unwrap();
        assert!(char_fourier(&psi, 0).norm() < 1e-15);
        assert!((char_fourier(&psi, 1).norm() - 7f64.powf(-0.5)).abs() < 1e-12);
        let triv = mult_character(&f, 1).unwrap();
        for v in f.nonzero() {
            assert!((char_fourier(&triv, v) - Complex64::new(-1.0 / 7.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn gauss_sum_magnitudes() {
        let f7 = make_field(7).unwrap();
        let psi = mult_character(&f7, 3).unwrap();
        let g = gauss_sum(&psi);
        assert!(!g.trivial_character);
        assert!((g.value.norm() - 7f64.sqrt()).abs() < 1e-12);
        assert!((g.value.norm() - 2.6457513).abs() < 1e-7);
        assert!((g.value - char_fourier(&psi, f7.neg(1)) * 7.0).norm() < 1e-12);

        // Quadratic Gauss sum for q = 1 mod 4 is +sqrt(q).
        let f13 = make_field(13).unwrap();
        let quad = mult_character(&f13, 2).unwrap();
        let g = gauss_sum(&quad).value;
        assert!((g - Complex64::new(13f64.sqrt(), 0.0)).norm() < 1e-12);

        let triv = gauss_sum(&mult_character(&f13, 1).unwrap());
        assert!(triv.trivial_character);
        // Σ_{s≠0} χ(s) = -1 for the trivial character.
        assert!((triv.value - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn nth_roots_examples() {
        let f7 = make_field(7).unwrap();
        assert_eq!(nth_power_roots(&f7, 3, 6), vec![3, 5, 6]);
        assert_eq!(nth_power_roots(&f7, 3, 0), vec![0]);
        let f5 = make_field(5).unwrap();
        assert_eq!(nth_power_roots(&f5, 3, 4).len(), 1);
        assert_eq!(nth_power_roots(&f5, 3, 4), vec![4]);
    }

    #[test]
    fn nth_roots_match_brute_force() {
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let f = make_field(q).unwrap();
            for n in 1..=8u32 {
                let h = gcd(n as u64, q - 1) as usize;
                for c in f.elements() {
                    let brute: Vec<u32> = f.elements().filter(|&s| f.pow(s, n as u64) == c).collect();
                    let fast = nth_power_roots(&f, n, c);
                    assert_eq!(fast, brute, "q={q} n={n} c={c}");
                    if c != 0 {
                        assert!(fast.is_empty() || fast.len() == h);
                    }
                }
            }
        }
    }
}
