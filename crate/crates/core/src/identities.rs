//! Character-sum identities, checked by evaluating both sides directly, and
//! magnitudes of the multi-variable sums whose growth rates are imported
//! from the literature (`A_r`, `R_k`, the three-variable sum `Σ χ(g)`).
//!
//! Each identity check returns an [`IdentityCheck`] holding both sides; each
//! bound returns a [`BoundCheck`] holding `|sum| / envelope`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{char_fourier, characters_of_order, gauss_sum, gcd, mult_character, CharacterTable, PrimeField};
use crate::spheres::SphereSpec;

/// Relative tolerance for identity residuals.
pub const RELATIVE_TOLERANCE: f64 = 1e-10;

/// Largest number of variables in the multi-fold sums.
pub const MAX_FOLD: usize = 3;

pub type Params = BTreeMap<&'static str, String>;

fn params<const N: usize>(entries: [(&'static str, String); N]) -> Params {
    entries.into_iter().collect()
}

fn list(xs: &[u32]) -> String {
    let parts: Vec<String> = xs.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

/// `1e-10 · max(1, |lhs|, |rhs|)`.
pub fn identity_tolerance(lhs: Complex64, rhs: Complex64) -> f64 {
    RELATIVE_TOLERANCE * 1f64.max(lhs.norm()).max(rhs.norm())
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub parameters: Params,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn new(name: &'static str, parameters: Params, lhs: Complex64, rhs: Complex64) -> Self {
        let residual = (lhs - rhs).norm();
        let tolerance = identity_tolerance(lhs, rhs);
        IdentityCheck { name, parameters, lhs, rhs, residual, tolerance, pass: residual < tolerance }
    }

    pub fn csv_row(&self) -> IdentityCsvRow {
        IdentityCsvRow {
            name: self.name,
            parameters: flatten(&self.parameters),
            lhs_re: self.lhs.re,
            lhs_im: self.lhs.im,
            rhs_re: self.rhs.re,
            rhs_im: self.rhs.im,
            residual: self.residual,
            tolerance: self.tolerance,
            pass: self.pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCsvRow {
    pub name: &'static str,
    pub parameters: String,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub parameters: Params,
    pub value: Complex64,
    pub magnitude: f64,
    /// The power of `q` the estimate asserts.
    pub envelope: f64,
    /// `magnitude / envelope`.
    pub ratio: f64,
}

impl BoundCheck {
    pub fn new(name: &'static str, parameters: Params, value: Complex64, envelope: f64) -> Self {
        let magnitude = value.norm();
        BoundCheck { name, parameters, value, magnitude, envelope, ratio: magnitude / envelope }
    }

    pub fn within(&self, limit: f64) -> bool {
        self.ratio <= limit
    }

    pub fn csv_row(&self) -> BoundCsvRow {
        BoundCsvRow {
            name: self.name,
            parameters: flatten(&self.parameters),
            magnitude: self.magnitude,
            envelope: self.envelope,
            ratio: self.ratio,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCsvRow {
    pub name: &'static str,
    pub parameters: String,
    pub magnitude: f64,
    pub envelope: f64,
    pub ratio: f64,
}

fn flatten(p: &Params) -> String {
    let parts: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(";")
}

fn require_cubic_field(field: &PrimeField) -> Result<()> {
    if field.q() % 3 != 1 {
        return Err(Error::hypothesis(format!("q = {} is not 1 mod 3", field.q())));
    }
    Ok(())
}

fn require_cubic_character(psi: &CharacterTable) -> Result<()> {
    if psi.exact_order() != 3 {
        return Err(Error::hypothesis(format!("character has order {}, expected 3", psi.exact_order())));
    }
    Ok(())
}

fn require_fold(l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::hypothesis("at least one frequency is required"));
    }
    if l > MAX_FOLD {
        return Err(Error::DimensionTooLarge { what: "l", got: l, max: MAX_FOLD });
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `3^{-3}` in `F_q`.
fn inv_27(field: &PrimeField) -> u32 {
    field.inv(27 % field.q()).expect("q is not 3")
}

/// `Σ_s χ(a s³ + s) = Σ_{s≠0} ψ(s a^{-1}) χ(s - (27 a s)^{-1})` for a cubic `ψ`.
pub fn check_duke_iwaniec(field: &PrimeField, a: u32, psi: &CharacterTable) -> Result<IdentityCheck> {
    require_cubic_field(field)?;
    require_cubic_character(psi)?;
    let a = a % field.q();
    let a_inv = field.inv(a).ok_or_else(|| Error::hypothesis("a must be nonzero"))?;

    let lhs: Complex64 = field.elements().map(|s| field.chi(field.add(field.mul(a, field.pow(s, 3)), s))).sum();
    let rhs: Complex64 = field
        .nonzero()
        .map(|s| {
            let denom = field.mul(field.mul(27 % field.q(), a), s);
            let arg = field.sub(s, field.inv(denom).expect("27as != 0"));
            psi.eval(field.mul(s, a_inv)) * field.chi(arg)
        })
        .sum();

    Ok(IdentityCheck::new(
        "cubic_twist",
        params([("q", field.q().to_string()), ("a", a.to_string()), ("psi", psi.exponent().to_string())]),
        lhs,
        rhs,
    ))
}

/// How the Gauss-sum expansion of `Σ_s χ(t s^n + b)` treats the trivial
/// character (`k = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaussConvention {
    /// `χ(b) Σ_{k=1}^{h-1} ψ^{-k}(t) G(ψ^k, χ)`.
    OmitTrivialTerm,
    /// The same plus the `k = 0` term `χ(b) G(1, χ) = -χ(b)`.
    IncludeTrivialTerm,
}

/// The convention that matches direct evaluation over `F_7`; see
/// [`resolve_gauss_convention`]. The `k = 0` term vanishes because the
/// `s = 0` term of the left side supplies exactly the `+1` that cancels
/// `G(1, χ) = -1`.
pub const GAUSS_CONVENTION: GaussConvention = GaussConvention::OmitTrivialTerm;

/// Right side of the Gauss-sum expansion, with `h = gcd(n, q - 1)`.
pub fn gauss_expansion_rhs(field: &PrimeField, t: u32, b: u32, n: u32, convention: GaussConvention) -> Complex64 {
    let h = gcd(n as u64, field.group_order() as u64) as u32;
    let psi = mult_character(field, h).expect("h divides q - 1");
    let mut sum: Complex64 = (1..h as i64).map(|k| psi.pow(-k).eval(t) * gauss_sum(&psi.pow(k)).value).sum();
    if convention == GaussConvention::IncludeTrivialTerm {
        sum += Complex64::new(-1.0, 0.0);
    }
    field.chi(b) * sum
}

fn power_sum(field: &PrimeField, t: u32, b: u32, n: u32) -> Complex64 {
    field.elements().map(|s| field.chi(field.add(field.mul(t, field.pow(s, n as u64)), b))).sum()
}

/// Decides the `k = 0` convention by direct evaluation over `F_7` for every
/// `t ≠ 0`, `b ∈ F_7` and `n ∈ 1..=6`. Returns `None` if neither candidate
/// matches everywhere.
pub fn resolve_gauss_convention() -> Option<GaussConvention> {
    let field = PrimeField::new(7).expect("7 is prime");
    [GaussConvention::OmitTrivialTerm, GaussConvention::IncludeTrivialTerm].into_iter().find(|&conv| {
        field.nonzero().all(|t| {
            field.elements().all(|b| {
                (1..=6).all(|n| {
                    let lhs = power_sum(&field, t, b, n);
                    let rhs = gauss_expansion_rhs(&field, t, b, n, conv);
                    (lhs - rhs).norm() < identity_tolerance(lhs, rhs)
                })
            })
        })
    })
}

/// `Σ_s χ(t s^n + b) = χ(b) Σ_{k=1}^{h-1} ψ^{-k}(t) G(ψ^k, χ)`, `h = gcd(n, q-1)`.
pub fn check_gauss_expansion(field: &PrimeField, t: u32, b: u32, n: u32) -> Result<IdentityCheck> {
    let t = t % field.q();
    if t == 0 {
        return Err(Error::ZeroCoefficient);
    }
    if n == 0 {
        return Err(Error::hypothesis("n must be positive"));
    }
    let b = b % field.q();
    let lhs = power_sum(field, t, b, n);
    let rhs = gauss_expansion_rhs(field, t, b, n, GAUSS_CONVENTION);
    let h = gcd(n as u64, field.group_order() as u64);
    Ok(IdentityCheck::new(
        "gauss_expansion",
        params([
            ("q", field.q().to_string()),
            ("t", t.to_string()),
            ("b", b.to_string()),
            ("n", n.to_string()),
            ("h", h.to_string()),
            ("convention", format!("{GAUSS_CONVENTION:?}")),
        ]),
        lhs,
        rhs,
    ))
}

/// `(Σ_s χ(t s³))^l = Σ_r C(l,r) q^l ψ^{-(l+r)}(t) ψ̂(-1)^{l-r} ψ̂²(-1)^r`.
pub fn check_cubic_power_expansion(field: &PrimeField, t: u32, l: u32, psi: &CharacterTable) -> Result<IdentityCheck> {
    require_cubic_field(field)?;
    require_cubic_character(psi)?;
    let t = t % field.q();
    if t == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let q = field.q() as f64;
    let base = power_sum(field, t, 0, 3);
    let lhs = base.powu(l);

    let minus_one = field.neg(1);
    let hat1 = char_fourier(psi, minus_one);
    let hat2 = char_fourier(&psi.pow(2), minus_one);
    let rhs: Complex64 = (0..=l)
        .map(|r| {
            let twist = psi.pow(-((l + r) as i64)).eval(t);
            twist * hat1.powu(l - r) * hat2.powu(r) * binomial(l as usize, r as usize) * q.powi(l as i32)
        })
        .sum();

    Ok(IdentityCheck::new(
        "cubic_power_expansion",
        params([
            ("q", field.q().to_string()),
            ("t", t.to_string()),
            ("l", l.to_string()),
            ("psi", psi.exponent().to_string()),
        ]),
        lhs,
        rhs,
    ))
}

/// `c_i = 3^{-3} m_i³ t^{-1}` for each frequency.
fn kloosterman_coefficients(field: &PrimeField, t: u32, m: &[u32]) -> Vec<u32> {
    let t_inv = field.inv(t).expect("t != 0");
    let scale = field.mul(inv_27(field), t_inv);
    m.iter().map(|&mi| field.mul(scale, field.pow(mi, 3))).collect()
}

/// `Π_j Σ_s χ(-s m_j + s³ t) = ψ^{-l}(t) Σ_{s ∈ (F_q^*)^l} χ(Σ s_i + Σ c_i s_i^{-1}) Π ψ(s_i)`
/// with `c_i = 3^{-3} m_i³ t^{-1}`. The right side is the literal `l`-fold sum.
pub fn check_completed_kloosterman_form(
    field: &PrimeField,
    t: u32,
    m: &[u32],
    psi: &CharacterTable,
) -> Result<IdentityCheck> {
    require_cubic_field(field)?;
    require_cubic_character(psi)?;
    require_fold(m.len())?;
    let t = t % field.q();
    if t == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let m: Vec<u32> = m.iter().map(|&x| x % field.q()).collect();
    if m.contains(&0) {
        return Err(Error::hypothesis("every frequency m_j must be nonzero"));
    }
    let l = m.len();

    let lhs: Complex64 = m
        .iter()
        .map(|&mj| {
            field
                .elements()
                .map(|s| field.chi(field.sub(field.mul(field.pow(s, 3), t), field.mul(s, mj))))
                .sum::<Complex64>()
        })
        .product();

    let coeffs = kloosterman_coefficients(field, t, &m);
    let inverses: Vec<u32> = field.elements().map(|s| field.inv(s).unwrap_or(0)).collect();
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut s = vec![1u32; l];
    loop {
        let mut arg = 0;
        let mut weight = Complex64::new(1.0, 0.0);
        for (i, &si) in s.iter().enumerate() {
            arg = field.add(arg, field.add(si, field.mul(coeffs[i], inverses[si as usize])));
            weight *= psi.eval(si);
        }
        rhs += weight * field.chi(arg);
        // Advance the odometer over (F_q^*)^l.
        let mut pos = 0;
        while pos < l {
            s[pos] += 1;
            if s[pos] < field.q() {
                break;
            }
            s[pos] = 1;
            pos += 1;
        }
        if pos == l {
            break;
        }
    }
    rhs *= psi.pow(-(l as i64)).eval(t);

    Ok(IdentityCheck::new(
        "completed_kloosterman_form",
        params([
            ("q", field.q().to_string()),
            ("t", t.to_string()),
            ("m", list(&m)),
            ("rescaled_coefficients", list(&coeffs)),
            ("psi", psi.exponent().to_string()),
        ]),
        lhs,
        rhs,
    ))
}

/// `K(c) = Σ_{s≠0} χ(s + c s^{-1}) ψ(s)`.
fn twisted_kloosterman(field: &PrimeField, c: u32, psi: &CharacterTable) -> Complex64 {
    field.nonzero().map(|s| field.chi(field.add(s, field.mul(c, field.inv(s).expect("s != 0")))) * psi.eval(s)).sum()
}

fn a_r_value(field: &PrimeField, j: u32, d: usize, r: usize, m: &[u32], psi: &CharacterTable) -> Complex64 {
    let twist = psi.pow(-((d + r) as i64));
    field
        .nonzero()
        .map(|t| {
            let inner: Complex64 =
                kloosterman_coefficients(field, t, m).iter().map(|&c| twisted_kloosterman(field, c, psi)).product();
            field.chi(field.neg(field.mul(t, j))) * twist.eval(t) * inner
        })
        .sum()
}

/// `A_r = Σ_{t≠0} χ(-tj) ψ^{-(d+r)}(t) Σ_{s ∈ (F_q^*)^l} χ(Σ s_i + Σ c_i(t) s_i^{-1}) Π ψ(s_i)`
/// with `c_i(t) = 3^{-3} m_i³ t^{-1}` and envelope `q^{(l+1)/2}`, `l = m.len()`.
///
/// The inner `l`-fold sum factors into `l` one-variable twisted Kloosterman
/// sums, which is how it is evaluated.
pub fn compute_a_r(
    field: &PrimeField,
    j: u32,
    d: usize,
    r: usize,
    m: &[u32],
    psi: &CharacterTable,
) -> Result<BoundCheck> {
    require_cubic_field(field)?;
    require_cubic_character(psi)?;
    require_fold(m.len())?;
    let j = j % field.q();
    if j == 0 {
        return Err(Error::ZeroRadius);
    }
    let l = m.len();
    if l > d || r > d - l {
        return Err(Error::hypothesis(format!("need l <= d and r <= d - l, got l = {l}, d = {d}, r = {r}")));
    }
    let m: Vec<u32> = m.iter().map(|&x| x % field.q()).collect();
    if m.contains(&0) {
        return Err(Error::hypothesis("every frequency m_i must be nonzero"));
    }
    let value = a_r_value(field, j, d, r, &m, psi);
    let envelope = (field.q() as f64).powf((l as f64 + 1.0) / 2.0);
    Ok(BoundCheck::new(
        "a_r",
        params([
            ("q", field.q().to_string()),
            ("j", j.to_string()),
            ("l", l.to_string()),
            ("d", d.to_string()),
            ("r", r.to_string()),
            ("m", list(&m)),
            ("psi", psi.exponent().to_string()),
        ]),
        value,
        envelope,
    ))
}

/// Direct `Ŝ_j(m) = q^{-d} Σ_{||x||_n = j} χ(-x·m)`.
fn sphere_mode_direct(spec: &SphereSpec, m: &[u32]) -> Complex64 {
    let space = spec.space();
    let field = spec.field();
    let norms = space.norm_table(spec.n());
    let sum: Complex64 = norms
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == spec.j())
        .map(|(i, _)| field.chi(field.neg(space.dot(&space.coords_of(i), m))))
        .sum();
    sum / space.size() as f64
}

/// For the cubic sphere and `m ≠ 0` with `l` nonzero coordinates,
/// `Ŝ_j(m) = q^{-1-l} Σ_{r=0}^{d-l} C(d-l, r) ψ̂(-1)^{d-l-r} ψ̂²(-1)^r A_r`.
/// The left side is the direct sum over the sphere.
pub fn check_sphere_mode_expansion(spec: &SphereSpec, m: &[u32], psi: &CharacterTable) -> Result<IdentityCheck> {
    let field = spec.field();
    require_cubic_field(field)?;
    require_cubic_character(psi)?;
    if spec.n() != 3 {
        return Err(Error::hypothesis("the expansion is for the cubic norm"));
    }
    if spec.j() == 0 {
        return Err(Error::ZeroRadius);
    }
    let d = spec.d();
    if m.len() != d {
        return Err(Error::DimensionMismatch { q: field.q(), d, expected: d, got: m.len() });
    }
    let nonzero: Vec<u32> = m.iter().map(|&x| x % field.q()).filter(|&x| x != 0).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroFrequency);
    }
    require_fold(nonzero.len())?;
    let l = nonzero.len();
    let q = field.q() as f64;

    let lhs = sphere_mode_direct(spec, m);
    let minus_one = field.neg(1);
    let hat1 = char_fourier(psi, minus_one);
    let hat2 = char_fourier(&psi.pow(2), minus_one);
    let rhs: Complex64 = (0..=d - l)
        .map(|r| {
            let coeff = hat1.powu((d - l - r) as u32) * hat2.powu(r as u32) * binomial(d - l, r);
            coeff * a_r_value(field, spec.j(), d, r, &nonzero, psi)
        })
        .sum::<Complex64>()
        * q.powi(-1 - l as i32);

    Ok(IdentityCheck::new(
        "sphere_mode_via_a_r",
        params([
            ("q", field.q().to_string()),
            ("d", d.to_string()),
            ("j", spec.j().to_string()),
            ("m", list(m)),
            ("psi", psi.exponent().to_string()),
        ]),
        lhs,
        rhs,
    ))
}

/// The planar sphere sum `Σ_{(t,x_1,x_2) ∈ F_q^3} χ(t x_1^n + t x_2^n - m_1 x_1 - m_2 x_2 - j t)`
/// with envelope `q^{3/2}`, plus the `R_k` sums (envelope `q`) when one
/// frequency vanishes, and the reconstruction of `Ŝ_j(m)` from them.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyCheck {
    pub full: BoundCheck,
    pub r_sums: Vec<BoundCheck>,
    pub r_expansion: Option<IdentityCheck>,
}

/// `R_k = Σ_{(t,x) ∈ F_q^2} ψ^{-k}(t) χ(t x^n - m x - j t)` with `ψ(0) = 0`.
fn r_k_value(field: &PrimeField, n: u32, m: u32, j: u32, twist: &CharacterTable) -> Complex64 {
    let powers = field.power_table(n);
    field
        .nonzero()
        .map(|t| {
            let inner: Complex64 = field
                .elements()
                .map(|x| {
                    let arg = field.sub(field.mul(t, field.sub(powers[x as usize], j)), field.mul(m, x));
                    field.chi(arg)
                })
                .sum();
            twist.eval(t) * inner
        })
        .sum()
}

pub fn check_cohomology_bound(field: &PrimeField, n: u32, m1: u32, m2: u32, j: u32) -> Result<CohomologyCheck> {
    if n < 2 {
        return Err(Error::hypothesis("n must be at least 2"));
    }
    let (m1, m2, j) = (m1 % field.q(), m2 % field.q(), j % field.q());
    if j == 0 {
        return Err(Error::ZeroRadius);
    }
    if m1 == 0 && m2 == 0 {
        return Err(Error::ZeroFrequency);
    }
    let q = field.q() as f64;
    let powers = field.power_table(n);

    // Summing over t first leaves q on the sphere and 0 elsewhere.
    let mut on_sphere = Complex64::new(0.0, 0.0);
    for x1 in field.elements() {
        for x2 in field.elements() {
            if field.add(powers[x1 as usize], powers[x2 as usize]) == j {
                on_sphere += field.chi(field.neg(field.add(field.mul(m1, x1), field.mul(m2, x2))));
            }
        }
    }
    let full_value = on_sphere * q;
    let base = [
        ("q", field.q().to_string()),
        ("n", n.to_string()),
        ("m1", m1.to_string()),
        ("m2", m2.to_string()),
        ("j", j.to_string()),
    ];
    let full = BoundCheck::new("cohomology_sum", params(base.clone()), full_value, q.powf(1.5));

    let mut r_sums = Vec::new();
    let mut r_expansion = None;
    if m1 == 0 || m2 == 0 {
        let m = m1.max(m2);
        let h = gcd(n as u64, field.group_order() as u64) as u32;
        let psi = mult_character(field, h).expect("h divides q - 1");
        let mut rhs = Complex64::new(0.0, 0.0);
        for k in 1..h as i64 {
            let value = r_k_value(field, n, m, j, &psi.pow(-k));
            let mut p = params(base.clone());
            p.insert("k", k.to_string());
            p.insert("h", h.to_string());
            r_sums.push(BoundCheck::new("r_k", p, value, q));
            rhs += char_fourier(&psi.pow(k), field.neg(1)) * value;
        }
        let lhs = full_value / q.powi(3);
        r_expansion = Some(IdentityCheck::new("sphere_mode_via_r_k", params(base), lhs, rhs / (q * q)));
    }
    Ok(CohomologyCheck { full, r_sums, r_expansion })
}

/// Every `A_r` bound over one field: `d ∈ {2, 3}`, `l ∈ 1..=d`, `r ∈ 0..=d-l`,
/// both cubic characters and every `j ≠ 0`. Frequencies are exhaustive for
/// `l = 1` and `samples` random nonzero vectors per cell for `l ≥ 2`.
pub fn a_r_grid(field: &PrimeField, samples: usize, seed: u64) -> Result<Vec<BoundCheck>> {
    require_cubic_field(field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let chars = characters_of_order(field, 3)?;
    for d in 2..=3usize {
        for l in 1..=d {
            let freqs: Vec<Vec<u32>> = if l == 1 {
                field.nonzero().map(|m| vec![m]).collect()
            } else {
                (0..samples).map(|_| (0..l).map(|_| rng.random_range(1..field.q())).collect()).collect()
            };
            for r in 0..=d - l {
                for psi in &chars {
                    for m in &freqs {
                        for j in field.nonzero() {
                            out.push(compute_a_r(field, j, d, r, m, psi)?);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Cohomology checks over one field for each `n`: every `j ≠ 0`, every
/// frequency with one zero coordinate, and `samples` random frequencies with
/// both coordinates nonzero.
pub fn cohomology_grid(field: &PrimeField, n_list: &[u32], samples: usize, seed: u64) -> Result<Vec<CohomologyCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &n in n_list {
        let mut freqs: Vec<(u32, u32)> = field.nonzero().flat_map(|m| [(m, 0), (0, m)]).collect();
        freqs.extend((0..samples).map(|_| (rng.random_range(1..field.q()), rng.random_range(1..field.q()))));
        for &(m1, m2) in &freqs {
            for j in field.nonzero() {
                out.push(check_cohomology_bound(field, n, m1, m2, j)?);
            }
        }
    }
    Ok(out)
}
