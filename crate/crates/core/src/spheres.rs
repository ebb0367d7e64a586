//! Power-norm spheres `S_j = {x : ||x||_n = j}` and their spectra.
//!
//! A [`DecayReport`] measures how far `Ŝ_j` is from the ideal profile
//! `Ŝ_j(0) ≈ q^{-1}`, `|Ŝ_j(m)| ≲ q^{-(d+1)/2}` for `m ≠ 0`; the measured
//! constants are what the verification suites pin against an envelope.

use num_complex::Complex64;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{gcd, PrimeField};
use crate::vectorspace::{fourier_transform, PointSet, Space, SpectralFunction};

#[derive(Clone, Debug)]
pub struct SphereSpec {
    space: Space,
    n: u32,
    j: u32,
}

/// Which estimate, if any, covers a sphere's parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `n = 2`, any prime.
    Quadratic,
    /// `n = 3`, `q ≡ 1 mod 3`.
    Cubic,
    /// `gcd(n, q - 1) = 1`: `s ↦ s^n` is a bijection, so the sphere is a
    /// hyperplane in disguised coordinates.
    PowerBijective,
    /// Two dimensions, any `n ≥ 2`.
    Planar,
    /// No estimate applies; runs are exploratory.
    Exploratory,
}

impl SphereSpec {
    pub fn new(field: &PrimeField, d: usize, n: u32, j: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidConfig { field: "d", msg: format!("sphere dimension must be >= 2, got {d}") });
        }
        if n < 2 {
            return Err(Error::InvalidConfig { field: "n", msg: format!("norm exponent must be >= 2, got {n}") });
        }
        let space = Space::new(field, d)?;
        Ok(SphereSpec { j: j % field.q(), space, n })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn field(&self) -> &PrimeField {
        self.space.field()
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    pub fn d(&self) -> usize {
        self.space.dim()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn with_radius(&self, j: u32) -> SphereSpec {
        SphereSpec { space: self.space.clone(), n: self.n, j: j % self.q() }
    }

    pub fn regime(&self) -> Regime {
        regime(self.q(), self.d(), self.n)
    }

    /// Whether the decay estimate's hypotheses hold (radius aside).
    pub fn hypothesis_ok(&self) -> bool {
        match self.regime() {
            Regime::Quadratic | Regime::Cubic | Regime::Planar => true,
            Regime::PowerBijective => self.d() == 2,
            Regime::Exploratory => false,
        }
    }
}

pub fn regime(q: u32, d: usize, n: u32) -> Regime {
    if n == 2 {
        Regime::Quadratic
    } else if n == 3 && q % 3 == 1 {
        Regime::Cubic
    } else if gcd(n as u64, q as u64 - 1) == 1 {
        Regime::PowerBijective
    } else if d == 2 {
        Regime::Planar
    } else {
        Regime::Exploratory
    }
}

/// All `x` with `||x||_n = j`.
pub fn sphere_points(spec: &SphereSpec) -> PointSet {
    let norms = spec.space.norm_table(spec.n);
    sphere_from_norms(spec.space(), &norms, spec.j)
}

fn sphere_from_norms(space: &Space, norms: &[u32], j: u32) -> PointSet {
    PointSet::from_grid(space, norms.iter().map(|&v| v == j).collect())
}

/// `Ŝ_j`, the transform of the sphere's indicator.
pub fn sphere_spectrum(spec: &SphereSpec) -> SpectralFunction {
    spectrum_of(&sphere_points(spec))
}

fn spectrum_of(sphere: &PointSet) -> SpectralFunction {
    fourier_transform(sphere.space(), &sphere.indicator()).expect("indicator has the right length")
}

/// Spectra of every sphere `S_0, …, S_{q-1}` for one `(q, d, n)`.
pub fn all_sphere_spectra(space: &Space, n: u32) -> Vec<SpectralFunction> {
    let norms = space.norm_table(n);
    (0..space.q()).into_par_iter().map(|j| spectrum_of(&sphere_from_norms(space, &norms, j))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub q: u32,
    pub d: usize,
    pub n: u32,
    pub j: u32,
    pub sphere_size: u64,
    pub zero_mode: Complex64,
    /// `|Ŝ_j(0) - q^{-1}| · q^{(d+1)/2}`.
    pub zero_mode_deviation: f64,
    /// `max_{m≠0} |Ŝ_j(m)|`.
    pub max_nonzero_mode: f64,
    /// `max_nonzero_mode · q^{(d+1)/2}`.
    pub decay_constant: f64,
    pub hypothesis_ok: bool,
    pub regime: Regime,
}

/// One CSV row; column order is part of the output format.
#[derive(Clone, Debug, Serialize)]
pub struct DecayCsvRow {
    pub q: u32,
    pub d: usize,
    pub n: u32,
    pub j: u32,
    pub sphere_size: u64,
    pub zero_mode_re: f64,
    pub zero_mode_dev: f64,
    pub max_nonzero_mode: f64,
    pub decay_constant: f64,
    pub hypothesis_ok: bool,
}

impl DecayReport {
    pub fn csv_row(&self) -> DecayCsvRow {
        DecayCsvRow {
            q: self.q,
            d: self.d,
            n: self.n,
            j: self.j,
            sphere_size: self.sphere_size,
            zero_mode_re: self.zero_mode.re,
            zero_mode_dev: self.zero_mode_deviation,
            max_nonzero_mode: self.max_nonzero_mode,
            decay_constant: self.decay_constant,
            hypothesis_ok: self.hypothesis_ok,
        }
    }
}

/// Measured decay of `Ŝ_j`. Rejects `j = 0`.
pub fn decay_report(spec: &SphereSpec) -> Result<DecayReport> {
    if spec.j == 0 {
        return Err(Error::ZeroRadius);
    }
    Ok(spectrum_profile(spec, &sphere_spectrum(spec)))
}

/// The same measurements as [`decay_report`] from a precomputed spectrum,
/// without the radius check (for exploratory `j = 0` logging).
pub fn spectrum_profile(spec: &SphereSpec, spectrum: &SpectralFunction) -> DecayReport {
    let q = spec.q() as f64;
    let d = spec.d();
    let scale = q.powf((d as f64 + 1.0) / 2.0);
    let zero_mode = spectrum.zero_mode();
    let max_nonzero_mode = spectrum.values()[1..].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let sphere_size = (zero_mode.re * spec.space().size() as f64).round() as u64;
    DecayReport {
        q: spec.q(),
        d,
        n: spec.n,
        j: spec.j,
        sphere_size,
        zero_mode,
        zero_mode_deviation: (zero_mode - 1.0 / q).norm() * scale,
        max_nonzero_mode,
        decay_constant: max_nonzero_mode * scale,
        hypothesis_ok: spec.hypothesis_ok() && spec.j != 0,
        regime: spec.regime(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadiusPolicy {
    /// Every `j ≠ 0`.
    All,
    /// `count` distinct nonzero radii per field, drawn from `seed`.
    Sample { count: usize, seed: u64 },
}

impl RadiusPolicy {
    fn radii(&self, q: u32) -> Vec<u32> {
        match *self {
            RadiusPolicy::All => (1..q).collect(),
            RadiusPolicy::Sample { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (q as u64).rotate_left(32));
                let mut js: Vec<u32> = index::sample(&mut rng, q as usize - 1, count.min(q as usize - 1))
                    .into_iter()
                    .map(|i| i as u32 + 1)
                    .collect();
                js.sort_unstable();
                js
            }
        }
    }
}

/// Decay reports for every `(q, j)` under the policy, sorted by `(q, j)`.
pub fn constant_sweep(n: u32, d: usize, policy: RadiusPolicy, q_list: &[u64]) -> Result<Vec<DecayReport>> {
    let fields: Vec<PrimeField> = q_list.iter().map(|&q| PrimeField::new(q)).collect::<Result<_>>()?;
    let mut reports = Vec::new();
    for field in &fields {
        let base = SphereSpec::new(field, d, n, 1)?;
        let norms = base.space().norm_table(n);
        let batch: Vec<DecayReport> = policy
            .radii(field.q())
            .into_par_iter()
            .map(|j| {
                let spec = base.with_radius(j);
                let spectrum = spectrum_of(&sphere_from_norms(spec.space(), &norms, j));
                spectrum_profile(&spec, &spectrum)
            })
            .collect();
        reports.extend(batch);
    }
    reports.sort_by_key(|r| (r.q, r.j));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::vectorspace::norm_n;

    fn spec(q: u64, d: usize, n: u32, j: u32) -> SphereSpec {
        SphereSpec::new(&make_field(q).unwrap(), d, n, j).unwrap()
    }

    fn brute_count(q: u64, d: usize, n: u32, j: u32) -> usize {
        let s = spec(q, d, n, j);
        (0..s.space().size()).filter(|&i| norm_n(s.field(), &s.space().coords_of(i), n) == j).count()
    }

    #[test]
    fn unit_circle_mod_five() {
        let s = spec(5, 2, 2, 1);
        let pts: Vec<Vec<u32>> = sphere_points(&s).points().collect();
        assert_eq!(pts, vec![vec![0, 1], vec![0, 4], vec![1, 0], vec![4, 0]]);
        let spectrum = sphere_spectrum(&s);
        assert!((spectrum.zero_mode() - Complex64::new(0.16, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_spheres_for_cubes() {
        // 3(q-1)+1 points when q = 1 mod 3, q points when the cube map is bijective.
        assert_eq!(brute_count(7, 2, 3, 0), 19);
        assert_eq!(sphere_points(&spec(7, 2, 3, 0)).size(), 19);
        assert_eq!(brute_count(5, 2, 3, 0), 5);
        assert_eq!(sphere_points(&spec(5, 2, 3, 0)).size(), 5);
    }

    #[test]
    fn zero_mode_counts_points_and_spheres_partition() {
        for (q, d, n) in [(5u64, 2usize, 2u32), (7, 2, 3), (7, 3, 3), (11, 2, 4), (5, 3, 2)] {
            let space = Space::new(&make_field(q).unwrap(), d).unwrap();
            let spectra = all_sphere_spectra(&space, n);
            let mut total = 0;
            for (j, sp) in spectra.iter().enumerate() {
                let pts = sphere_points(&spec(q, d, n, j as u32));
                let from_spectrum = (sp.zero_mode().re * space.size() as f64).round() as usize;
                assert_eq!(from_spectrum, pts.size());
                assert_eq!(pts.size(), brute_count(q, d, n, j as u32));
                total += pts.size();
            }
            assert_eq!(total, space.size());
        }
    }

    #[test]
    fn spectrum_is_conjugate_symmetric() {
        let s = spec(7, 3, 3, 2);
        let spectrum = sphere_spectrum(&s);
        for i in 0..s.space().size() {
            let neg = s.space().neg_index(i);
            assert!((spectrum.at_index(neg) - spectrum.at_index(i).conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn empty_sphere_has_zero_spectrum() {
        // x^6 in F_7 is 0 or 1, so ||x||_6 in F_7^2 never reaches 3.
        let s = spec(7, 2, 6, 3);
        assert_eq!(sphere_points(&s).size(), 0);
        assert!(sphere_spectrum(&s).values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn decay_report_examples() {
        let r = decay_report(&spec(7, 2, 3, 1)).unwrap();
        assert!(r.decay_constant > 0.0 && r.decay_constant.is_finite());
        assert!(r.decay_constant <= 10.0);

        let r = decay_report(&spec(13, 3, 3, 1)).unwrap();
        assert!(r.hypothesis_ok);
        assert_eq!(r.regime, Regime::Cubic);
        let tol = 10.0 * 13f64.powf(-2.0);
        assert!((r.zero_mode.re - 1.0 / 13.0).abs() <= tol);

        assert!(matches!(decay_report(&spec(7, 2, 3, 0)), Err(Error::ZeroRadius)));
    }

    #[test]
    fn regimes() {
        assert_eq!(regime(7, 3, 3), Regime::Cubic);
        assert_eq!(regime(5, 3, 3), Regime::PowerBijective);
        assert_eq!(regime(13, 3, 2), Regime::Quadratic);
        assert_eq!(regime(13, 2, 4), Regime::Planar);
        assert_eq!(regime(13, 3, 4), Regime::Exploratory);
        assert!(!spec(13, 3, 4, 1).hypothesis_ok());
        assert!(!spec(5, 3, 3, 1).hypothesis_ok());
        assert!(spec(5, 2, 3, 1).hypothesis_ok());
    }

    #[test]
    fn sweep_shapes_and_errors() {
        let reports = constant_sweep(3, 2, RadiusPolicy::All, &[13, 7]).unwrap();
        assert_eq!(reports.len(), 12 + 6);
        assert!(reports.windows(2).all(|w| (w[0].q, w[0].j) < (w[1].q, w[1].j)));
        assert!(constant_sweep(3, 2, RadiusPolicy::All, &[]).unwrap().is_empty());
        assert!(matches!(constant_sweep(3, 2, RadiusPolicy::All, &[8]), Err(Error::CompositeModulus(8))));
        let sampled = constant_sweep(2, 2, RadiusPolicy::Sample { count: 3, seed: 4 }, &[31]).unwrap();
        assert_eq!(sampled.len(), 3);
        assert!(sampled.iter().all(|r| r.j != 0));
    }

    #[test]
    fn sphere_spec_validation() {
        let f = make_field(7).unwrap();
        assert!(SphereSpec::new(&f, 1, 3, 1).is_err());
        assert!(SphereSpec::new(&f, 2, 1, 1).is_err());
    }
}
