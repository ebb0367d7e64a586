//! Distance sets `Δ_n(E, F) = {||x - y||_n : x ∈ E, y ∈ F}`, pair counts by
//! direct enumeration and by the spectral identity
//! `#{(x, y) ∈ E × F : ||x - y||_n = j} = q^{2d} Σ_m conj(Ê(m)) F̂(m) Ŝ_j(m)`,
//! and the coverage experiments built on them.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::rng;
use crate::spheres::{all_sphere_spectra, sphere_spectrum, SphereSpec};
use crate::vectorspace::{
    inverse_transform, sample_point_set_with, transform_point_set, PointSet, Space, SpectralFunction,
};

/// Envelope constant for the incidence bound.
pub const DEFAULT_ENVELOPE: f64 = 10.0;

fn same_ambient(e: &PointSet, f: &PointSet) -> Result<()> {
    if e.space() != f.space() {
        return Err(Error::AmbientMismatch {
            q1: e.space().q(),
            d1: e.space().dim(),
            q2: f.space().q(),
            d2: f.space().dim(),
        });
    }
    Ok(())
}

fn nonempty(sets: &[&PointSet]) -> Result<()> {
    if sets.iter().any(|s| s.is_empty()) {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// Above this many pairs, exact counting goes through the difference histogram.
pub const PAIR_LOOP_LIMIT: f64 = 1e8;

/// `counts[j] = #{(x, y) ∈ E × F : ||x - y||_n = j}`, exact.
pub fn norm_distribution(e: &PointSet, f: &PointSet, n: u32) -> Result<Vec<u64>> {
    same_ambient(e, f)?;
    if e.size() as f64 * f.size() as f64 > PAIR_LOOP_LIMIT {
        Ok(distribution_from_histogram(e, f, n))
    } else {
        Ok(distribution_by_pairs(e, f, n))
    }
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

fn distribution_by_pairs(e: &PointSet, f: &PointSet, n: u32) -> Vec<u64> {
    let space = e.space();
    let field = space.field();
    let q = space.q() as usize;
    let powers = field.power_table(n);
    let left: Vec<Vec<u32>> = e.points().collect();
    let right: Vec<Vec<u32>> = f.points().collect();

    left.par_chunks(64)
        .map(|chunk| {
            let mut counts = vec![0u64; q];
            for x in chunk {
                for y in &right {
                    let mut norm = 0usize;
                    for (&a, &b) in x.iter().zip(y) {
                        norm += powers[field.sub(a, b) as usize] as usize;
                    }
                    counts[norm % q] += 1;
                }
            }
            counts
        })
        .reduce(|| vec![0u64; q], merge)
}

/// `D(v) = #{x ∈ E : x - v ∈ F}` for every `v` on the grid, then `D` summed
/// over each sphere. Costs `O(q^d · #E)`.
fn distribution_from_histogram(e: &PointSet, f: &PointSet, n: u32) -> Vec<u64> {
    let space = e.space();
    let q = space.q() as usize;
    let norms = space.norm_table(n);
    let left: Vec<Vec<u32>> = e.points().collect();
    let field = space.field();
    let histogram = left
        .par_chunks(16)
        .map(|chunk| {
            let mut hist = vec![0u64; space.size()];
            let mut y = vec![0u32; space.dim()];
            for x in chunk {
                for (v, slot) in hist.iter_mut().enumerate() {
                    let coords = space.coords_of(v);
                    for ((yi, &xi), &vi) in y.iter_mut().zip(x).zip(&coords) {
                        *yi = field.sub(xi, vi);
                    }
                    if f.contains_index(space.index_of(&y)) {
                        *slot += 1;
                    }
                }
            }
            hist
        })
        .reduce(|| vec![0u64; space.size()], merge);
    let mut counts = vec![0u64; q];
    for (c, &norm) in histogram.iter().zip(&norms) {
        counts[norm as usize] += c;
    }
    counts
}

/// `D(v) = #{(x, y) ∈ E × F : x - y = v}` via `D̂ = q^d Ê conj(F̂)`.
fn difference_counts_spectral(e: &PointSet, f: &PointSet) -> Vec<u64> {
    let space = e.space();
    let e_hat = transform_point_set(e);
    let f_hat = transform_point_set(f);
    let scale = space.size() as f64;
    let product: Vec<Complex64> =
        e_hat.values().iter().zip(f_hat.values()).map(|(a, b)| a * b.conj() * scale).collect();
    inverse_transform(space, product)
        .into_iter()
        .map(|v| {
            let rounded = v.re.round();
            debug_assert!((v.re - rounded).abs() < 0.25 && v.im.abs() < 0.25, "non-integral difference count {v}");
            rounded.max(0.0) as u64
        })
        .collect()
}

fn use_convolution(e: &PointSet, f: &PointSet) -> bool {
    let space = e.space();
    let pairs = e.size() as f64 * f.size() as f64;
    pairs > (space.q() as f64).powi(space.dim() as i32 + 1) * space.dim() as f64
}

/// `Δ_n(E, F)`, by pair enumeration for small sets and by convolving the
/// indicators on the grid otherwise.
pub fn distance_set_between(e: &PointSet, f: &PointSet, n: u32) -> Result<BTreeSet<u32>> {
    same_ambient(e, f)?;
    nonempty(&[e, f])?;
    if use_convolution(e, f) {
        let space = e.space();
        let norms = space.norm_table(n);
        Ok(difference_counts_spectral(e, f).iter().zip(&norms).filter(|(&c, _)| c > 0).map(|(_, &v)| v).collect())
    } else {
        Ok(norm_distribution(e, f, n)?.iter().enumerate().filter(|(_, &c)| c > 0).map(|(j, _)| j as u32).collect())
    }
}

/// `Δ_n(E)`.
pub fn distance_set(e: &PointSet, n: u32) -> Result<BTreeSet<u32>> {
    distance_set_between(e, e, n)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCountResult {
    pub j: u32,
    pub brute: u64,
    pub spectral: f64,
    /// `#E · #F · Ŝ_j(0)`.
    pub i_term: f64,
    /// `q^{2d} Σ_{m≠0} conj(Ê(m)) F̂(m) Ŝ_j(m)`.
    pub ii_term: f64,
    /// `#E·#F/q + C_env · q^{(d-1)/2} · √(#E·#F)`.
    pub bound_rhs: f64,
    /// `brute / bound_rhs`.
    pub ratio: f64,
}

impl PairCountResult {
    pub fn exact(&self) -> bool {
        (self.spectral - self.brute as f64).abs() < 0.5
    }

    pub fn within_bound(&self) -> bool {
        self.brute as f64 <= self.bound_rhs
    }
}

pub fn incidence_bound(space: &Space, e_size: usize, f_size: usize, envelope: f64) -> f64 {
    let q = space.q() as f64;
    let prod = e_size as f64 * f_size as f64;
    prod / q + envelope * q.powf((space.dim() as f64 - 1.0) / 2.0) * prod.sqrt()
}

/// Pair counts for one `(E, F, n)` against any radius, with the transforms
/// and the enumerated distribution computed once.
pub struct PairCounter {
    space: Space,
    n: u32,
    e_size: usize,
    f_size: usize,
    e_hat: SpectralFunction,
    f_hat: SpectralFunction,
    distribution: Vec<u64>,
    envelope: f64,
}

impl PairCounter {
    pub fn new(e: &PointSet, f: &PointSet, n: u32, envelope: f64) -> Result<Self> {
        same_ambient(e, f)?;
        nonempty(&[e, f])?;
        Ok(PairCounter {
            space: e.space().clone(),
            n,
            e_size: e.size(),
            f_size: f.size(),
            e_hat: transform_point_set(e),
            f_hat: transform_point_set(f),
            distribution: norm_distribution(e, f, n)?,
            envelope,
        })
    }

    pub fn distribution(&self) -> &[u64] {
        &self.distribution
    }

    /// Counts at radius `j` given that radius's sphere spectrum.
    pub fn count_with(&self, j: u32, sphere: &SpectralFunction) -> PairCountResult {
        let scale = (self.space.size() as f64).powi(2);
        let terms = self
            .e_hat
            .values()
            .iter()
            .zip(self.f_hat.values())
            .zip(sphere.values())
            .map(|((e, f), s)| e.conj() * f * s * scale);
        let mut i_term = Complex64::new(0.0, 0.0);
        let mut ii_term = Complex64::new(0.0, 0.0);
        for (idx, term) in terms.enumerate() {
            if idx == 0 {
                i_term = term;
            } else {
                ii_term += term;
            }
        }
        let brute = self.distribution[j as usize];
        let bound_rhs = incidence_bound(&self.space, self.e_size, self.f_size, self.envelope);
        PairCountResult {
            j,
            brute,
            spectral: (i_term + ii_term).re,
            i_term: i_term.re,
            ii_term: ii_term.re,
            bound_rhs,
            ratio: brute as f64 / bound_rhs,
        }
    }

    pub fn count(&self, j: u32) -> Result<PairCountResult> {
        let spec = SphereSpec::new(self.space.field(), self.space.dim(), self.n, j)?;
        Ok(self.count_with(spec.j(), &sphere_spectrum(&spec)))
    }
}

/// `#{(x, y) ∈ E × F : ||x - y||_n = j}` by both routes.
pub fn pair_count(e: &PointSet, f: &PointSet, n: u32, j: u32) -> Result<PairCountResult> {
    PairCounter::new(e, f, n, DEFAULT_ENVELOPE)?.count(j)
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceAudit {
    pub q: u32,
    pub d: usize,
    pub n: u32,
    pub e_size: usize,
    pub f_size: usize,
    pub hypothesis_ok: bool,
    pub results: Vec<PairCountResult>,
    pub max_ratio: f64,
    /// Every count is within the bound and matches its spectral value.
    pub pass: bool,
}

/// Pair counts at every radius in `radii` (all nonzero), checked against
/// the incidence bound with envelope constant `envelope`.
pub fn incidence_audit(e: &PointSet, f: &PointSet, n: u32, radii: &[u32], envelope: f64) -> Result<IncidenceAudit> {
    let counter = PairCounter::new(e, f, n, envelope)?;
    let space = e.space();
    let spectra = all_sphere_spectra(space, n);
    audit_with(&counter, &spectra, radii)
}

/// As [`incidence_audit`] with precomputed sphere spectra indexed by radius.
pub fn audit_with(counter: &PairCounter, spectra: &[SpectralFunction], radii: &[u32]) -> Result<IncidenceAudit> {
    let q = counter.space.q();
    let mut results = Vec::with_capacity(radii.len());
    for &j in radii {
        let j = j % q;
        if j == 0 {
            return Err(Error::ZeroRadius);
        }
        results.push(counter.count_with(j, &spectra[j as usize]));
    }
    let max_ratio = results.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let pass = results.iter().all(|r| r.within_bound() && r.exact());
    let hypothesis_ok = SphereSpec::new(counter.space.field(), counter.space.dim(), counter.n, 1)
        .map(|s| s.hypothesis_ok())
        .unwrap_or(false);
    Ok(IncidenceAudit {
        q,
        d: counter.space.dim(),
        n: counter.n,
        e_size: counter.e_size,
        f_size: counter.f_size,
        hypothesis_ok,
        results,
        max_ratio,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageResult {
    pub q: u32,
    pub d: usize,
    pub n: u32,
    /// `[#E]` for a single set, `[#E, #F]` for a pair.
    pub sizes: Vec<usize>,
    pub c: f64,
    pub covered: Vec<u32>,
    pub missing: Vec<u32>,
    pub full_coverage: bool,
    /// `F_q^* ⊆ Δ`.
    pub full_coverage_star: bool,
    /// `#Δ · (#E)^{-2/(d+1)}`.
    pub score: f64,
    pub hypothesis_ok: bool,
}

fn coverage_result(space: &Space, n: u32, sizes: Vec<usize>, c: f64, covered: BTreeSet<u32>) -> CoverageResult {
    let q = space.q();
    let missing: Vec<u32> = (0..q).filter(|j| !covered.contains(j)).collect();
    let d = space.dim();
    let score = covered.len() as f64 * (sizes[0] as f64).powf(-2.0 / (d as f64 + 1.0));
    let hypothesis_ok = SphereSpec::new(space.field(), d, n, 1).map(|s| s.hypothesis_ok()).unwrap_or(false);
    CoverageResult {
        q,
        d,
        n,
        sizes,
        c,
        full_coverage: missing.is_empty(),
        full_coverage_star: missing.iter().all(|&j| j == 0),
        covered: covered.into_iter().collect(),
        missing,
        score,
        hypothesis_ok,
    }
}

/// `⌈C · q^{(d+1)/2}⌉`, rejected if it exceeds `q^d`.
pub fn threshold_size(space: &Space, c: f64) -> Result<usize> {
    let raw = (c * (space.q() as f64).powf((space.dim() as f64 + 1.0) / 2.0)).ceil();
    if raw > space.size() as f64 {
        return Err(Error::SizeTooLarge {
            q: space.q(),
            d: space.dim(),
            requested: raw as u128,
            available: space.size() as u128,
        });
    }
    Ok(raw.max(0.0) as usize)
}

/// `trials` random sets of size `⌈C q^{(d+1)/2}⌉` and the coverage of their
/// distance sets. Trial `i` draws from stream `(seed, "coverage", i)`.
pub fn coverage_experiment(q: u64, d: usize, n: u32, c: f64, trials: usize, seed: u64) -> Result<Vec<CoverageResult>> {
    let field = PrimeField::new(q)?;
    let space = Space::new(&field, d)?;
    let size = threshold_size(&space, c)?;
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng::stream(seed, "coverage", trial as u64);
            let e = sample_point_set_with(&space, size, &mut rng)?;
            let covered = if size == 0 { BTreeSet::new() } else { distance_set(&e, n)? };
            Ok(coverage_result(&space, n, vec![size], c, covered))
        })
        .collect()
}

/// Coverage of `Δ_n(E, F)`.
pub fn two_set_coverage(e: &PointSet, f: &PointSet, n: u32) -> Result<CoverageResult> {
    let covered = distance_set_between(e, f, n)?;
    let space = e.space();
    let c = e.size() as f64 * f.size() as f64 / (space.q() as f64).powi(space.dim() as i32 + 1);
    Ok(coverage_result(space, n, vec![e.size(), f.size()], c, covered))
}

/// `⌈√(C q^{d+1})⌉`, the common size of two sets with `#E · #F ≥ C q^{d+1}`.
pub fn two_set_size(space: &Space, c: f64) -> Result<usize> {
    let raw = (c * (space.q() as f64).powi(space.dim() as i32 + 1)).sqrt().ceil();
    if raw > space.size() as f64 {
        return Err(Error::SizeTooLarge {
            q: space.q(),
            d: space.dim(),
            requested: raw as u128,
            available: space.size() as u128,
        });
    }
    Ok(raw as usize)
}

/// `trials` independent random pairs with `#E · #F ≥ C q^{d+1}`.
pub fn two_set_experiment(q: u64, d: usize, n: u32, c: f64, trials: usize, seed: u64) -> Result<Vec<CoverageResult>> {
    let field = PrimeField::new(q)?;
    let space = Space::new(&field, d)?;
    let size = two_set_size(&space, c)?;
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng::stream(seed, "two-set", trial as u64);
            let e = sample_point_set_with(&space, size, &mut rng)?;
            let f = sample_point_set_with(&space, size, &mut rng)?;
            two_set_coverage(&e, &f, n)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageSummary {
    pub q: u32,
    pub d: usize,
    pub n: u32,
    #[serde(rename = "C")]
    pub c: f64,
    pub size: usize,
    pub trials: usize,
    pub full_coverage_fraction: f64,
    /// Smallest `#Δ / q` over the trials.
    pub min_coverage: f64,
    /// `single` for `Δ(E)` with `F_q` coverage, `two-set` for `Δ(E, F)` with `F_q^*` coverage.
    pub kind: &'static str,
}

impl CoverageSummary {
    /// Aggregates trials; `star` counts `F_q^*` coverage instead of `F_q`.
    pub fn from_results(q: u32, d: usize, n: u32, c: f64, size: usize, results: &[CoverageResult], star: bool) -> Self {
        let hits = results.iter().filter(|r| if star { r.full_coverage_star } else { r.full_coverage }).count();
        let full_coverage_fraction = if results.is_empty() { 1.0 } else { hits as f64 / results.len() as f64 };
        let min_coverage = results
            .iter()
            .map(|r| r.covered.len() as f64 / q as f64)
            .fold(if results.is_empty() { 1.0 } else { f64::INFINITY }, f64::min);
        let kind = if star { "two-set" } else { "single" };
        CoverageSummary { q, d, n, c, size, trials: results.len(), full_coverage_fraction, min_coverage, kind }
    }
}
