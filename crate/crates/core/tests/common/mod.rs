//! Brute-force oracles that share no code with the library: plain modular
//! arithmetic, definitions evaluated term by term.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use ffdist_core::Complex64;

#[derive(Clone, Copy, Debug)]
pub struct Zq {
    pub q: u64,
}

impl Zq {
    pub fn new(q: u64) -> Self {
        assert!((2..q).take_while(|p| p * p <= q).all(|p| q % p != 0), "{q} is not prime");
        Zq { q }
    }

    pub fn r(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.q;
        b %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.q;
            }
            b = b * b % self.q;
            e >>= 1;
        }
        acc
    }

    /// Inverse by exhaustive search.
    pub fn inv(&self, a: u64) -> u64 {
        (1..self.q).find(|&b| a % self.q * b % self.q == 1).expect("a is nonzero")
    }

    pub fn chi(&self, t: u64) -> Complex64 {
        Complex64::from_polar(1.0, TAU * (t % self.q) as f64 / self.q as f64)
    }

    /// Smallest element whose powers hit every nonzero residue.
    pub fn primitive_root(&self) -> u64 {
        (2..self.q)
            .find(|&g| {
                let mut seen = BTreeSet::new();
                let mut x = 1;
                for _ in 0..self.q - 1 {
                    x = x * g % self.q;
                    seen.insert(x);
                }
                seen.len() as u64 == self.q - 1
            })
            .unwrap_or(1)
    }

    /// `k` with `g^k = a`, by walking the powers of `g`.
    pub fn dlog(&self, g: u64, a: u64) -> u64 {
        let mut x = 1;
        for k in 0..self.q - 1 {
            if x == a % self.q {
                return k;
            }
            x = x * g % self.q;
        }
        panic!("{a} is not a power of {g}")
    }

    /// `ψ(g^k) = e^{2πi e k / h}` for the smallest primitive root `g`, `ψ(0) = 0`.
    pub fn mult_char(&self, h: u64, e: u64, a: u64) -> Complex64 {
        if a % self.q == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let k = self.dlog(self.primitive_root(), a);
        Complex64::from_polar(1.0, TAU * ((e * k) % h) as f64 / h as f64)
    }

    pub fn norm(&self, x: &[u64], n: u64) -> u64 {
        x.iter().map(|&xi| self.pow(xi, n)).sum::<u64>() % self.q
    }
}

/// Row-major coordinates of grid index `idx` in `F_q^d`.
pub fn coords(q: u64, d: usize, mut idx: usize) -> Vec<u64> {
    let mut out = vec![0; d];
    for slot in out.iter_mut().rev() {
        *slot = (idx % q as usize) as u64;
        idx /= q as usize;
    }
    out
}

pub fn all_points(q: u64, d: usize) -> Vec<Vec<u64>> {
    (0..(q as usize).pow(d as u32)).map(|i| coords(q, d, i)).collect()
}

/// `f̂(m) = q^{-d} Σ_x χ(-x·m) f(x)` by the double loop, `O(q^{2d})`.
pub fn direct_transform(q: u64, d: usize, f: &[Complex64]) -> Vec<Complex64> {
    let z = Zq::new(q);
    let pts = all_points(q, d);
    let scale = (q as f64).powi(-(d as i32));
    pts.iter()
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, &fx) in pts.iter().zip(f) {
                let dot: u64 = x.iter().zip(m).map(|(a, b)| a * b).sum();
                acc += z.chi(z.q - dot % z.q) * fx;
            }
            acc * scale
        })
        .collect()
}

pub fn sphere(q: u64, d: usize, n: u64, j: u64) -> Vec<Vec<u64>> {
    let z = Zq::new(q);
    all_points(q, d).into_iter().filter(|x| z.norm(x, n) == j % q).collect()
}

/// `counts[j] = #{(x, y) : ||x - y||_n = j}` over explicit point lists.
pub fn pair_distribution(q: u64, n: u64, e: &[Vec<u64>], f: &[Vec<u64>]) -> Vec<u64> {
    let z = Zq::new(q);
    let mut counts = vec![0u64; q as usize];
    for x in e {
        for y in f {
            let diff: Vec<u64> = x.iter().zip(y).map(|(&a, &b)| (a + q - b) % q).collect();
            counts[z.norm(&diff, n) as usize] += 1;
        }
    }
    counts
}

pub fn distance_set(q: u64, n: u64, e: &[Vec<u64>], f: &[Vec<u64>]) -> BTreeSet<u32> {
    pair_distribution(q, n, e, f).iter().enumerate().filter(|(_, &c)| c > 0).map(|(j, _)| j as u32).collect()
}

pub fn points_of(set: &ffdist_core::PointSet) -> Vec<Vec<u64>> {
    set.points().map(|p| p.into_iter().map(u64::from).collect()).collect()
}

pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&p| (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)).collect()
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}
