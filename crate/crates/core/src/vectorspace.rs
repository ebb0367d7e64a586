//! `F_q^d`: vectors, power norms, point sets and the normalized Fourier
//! transform.
//!
//! Functions on `F_q^d` are dense row-major arrays: the point
//! `x = (x_0, …, x_{d-1})` lives at index `Σ x_i q^{d-1-i}`.
//!
//! The transform convention is `f̂(m) = q^{-d} Σ_x χ(-x·m) f(x)`, with
//! inverse `f(x) = Σ_m χ(x·m) f̂(m)`.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Largest supported dimension.
pub const MAX_DIM: usize = 4;

/// The ambient space `F_q^d`.
#[derive(Clone, Debug)]
pub struct Space {
    field: PrimeField,
    d: usize,
    size: usize,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.d == other.d
    }
}

impl Eq for Space {}

impl Space {
    pub fn new(field: &PrimeField, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidConfig { field: "d", msg: "dimension must be at least 1".into() });
        }
        if d > MAX_DIM {
            return Err(Error::DimensionTooLarge { what: "d", got: d, max: MAX_DIM });
        }
        let size = (field.q() as usize)
            .checked_pow(d as u32)
            .filter(|&s| s <= 1 << 32)
            .ok_or(Error::DimensionTooLarge { what: "q^d", got: usize::MAX, max: 1 << 32 })?;
        Ok(Space { field: field.clone(), d, size })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// `q^d`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index_of(&self, coords: &[u32]) -> usize {
        debug_assert_eq!(coords.len(), self.d);
        let q = self.q() as usize;
        coords.iter().fold(0, |acc, &c| acc * q + c as usize)
    }

    pub fn coords_of(&self, mut idx: usize) -> Vec<u32> {
        let q = self.q() as usize;
        let mut out = vec![0u32; self.d];
        for slot in out.iter_mut().rev() {
            *slot = (idx % q) as u32;
            idx /= q;
        }
        out
    }

    /// Index of `-x`.
    pub fn neg_index(&self, idx: usize) -> usize {
        let c: Vec<u32> = self.coords_of(idx).into_iter().map(|x| self.field.neg(x)).collect();
        self.index_of(&c)
    }

    /// `x · m` in `F_q`.
    pub fn dot(&self, x: &[u32], m: &[u32]) -> u32 {
        x.iter().zip(m).fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
    }

    /// `||x||_n` for every point, indexed row-major.
    pub fn norm_table(&self, n: u32) -> Vec<u32> {
        let q = self.q() as usize;
        let powers = self.field.power_table(n);
        let mut table = vec![0u32];
        for _ in 0..self.d {
            let mut next = Vec::with_capacity(table.len() * q);
            for &prefix in &table {
                next.extend(powers.iter().map(|&p| self.field.add(prefix, p)));
            }
            table = next;
        }
        table
    }
}

/// A point of `F_q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Vector {
    coords: Vec<FieldElement>,
}

impl Vector {
    pub fn new(field: &PrimeField, coords: &[i64]) -> Self {
        Vector { coords: coords.iter().map(|&c| field.elem(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn residues(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.value()).collect()
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Vector { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a - b).collect() }
    }

    /// `x_1^n + … + x_d^n`.
    pub fn norm(&self, n: u32) -> FieldElement {
        let first = self.coords.first().expect("nonempty vector");
        self.coords.iter().map(|c| c.pow(n as u64)).fold(FieldElement::zero(first.modulus()), |acc, p| acc + p)
    }
}

/// `||x||_n = x_1^n + … + x_d^n` on residue coordinates.
pub fn norm_n(field: &PrimeField, x: &[u32], n: u32) -> u32 {
    x.iter().fold(0, |acc, &c| field.add(acc, field.pow(c, n as u64)))
}

/// A finite subset of `F_q^d`, kept both as a dense membership grid and as
/// a sorted list of row-major indices.
#[derive(Clone, Debug)]
pub struct PointSet {
    space: Space,
    grid: Vec<bool>,
    members: Vec<usize>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.members == other.members
    }
}

impl PointSet {
    pub fn empty(space: &Space) -> Self {
        PointSet { space: space.clone(), grid: vec![false; space.size()], members: Vec::new() }
    }

    pub fn full(space: &Space) -> Self {
        PointSet { space: space.clone(), grid: vec![true; space.size()], members: (0..space.size()).collect() }
    }

    /// Builds a set from row-major indices; duplicates are merged.
    pub fn from_indices(space: &Space, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut grid = vec![false; space.size()];
        for i in indices {
            grid[i] = true;
        }
        Self::from_grid(space, grid)
    }

    pub fn from_grid(space: &Space, grid: Vec<bool>) -> Self {
        assert_eq!(grid.len(), space.size());
        let members = grid.iter().enumerate().filter_map(|(i, &b)| b.then_some(i)).collect();
        PointSet { space: space.clone(), grid, members }
    }

    /// Builds a set from coordinate tuples, rejecting out-of-range residues.
    pub fn from_points<'a>(space: &Space, points: impl IntoIterator<Item = &'a [u32]>) -> Result<Self> {
        let mut idx = Vec::new();
        for p in points {
            if p.len() != space.dim() {
                return Err(Error::DimensionMismatch {
                    q: space.q(),
                    d: space.dim(),
                    expected: space.dim(),
                    got: p.len(),
                });
            }
            if let Some(&bad) = p.iter().find(|&&c| c >= space.q()) {
                return Err(Error::Parse { line: 0, msg: format!("residue {bad} out of range for q = {}", space.q()) });
            }
            idx.push(space.index_of(p));
        }
        Ok(Self::from_indices(space, idx))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.grid[idx]
    }

    pub fn contains(&self, coords: &[u32]) -> bool {
        coords.len() == self.space.dim()
            && coords.iter().all(|&c| c < self.space.q())
            && self.grid[self.space.index_of(coords)]
    }

    pub fn grid(&self) -> &[bool] {
        &self.grid
    }

    /// Sorted row-major indices of the members.
    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.members.iter().map(|&i| self.space.coords_of(i))
    }

    /// The indicator function as a complex array.
    pub fn indicator(&self) -> Vec<Complex64> {
        self.grid.iter().map(|&b| Complex64::new(if b { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    /// Grid and list views agree.
    pub fn is_consistent(&self) -> bool {
        self.grid.iter().filter(|&&b| b).count() == self.members.len()
            && self.members.windows(2).all(|w| w[0] < w[1])
            && self.members.iter().all(|&i| self.grid[i])
    }

    /// `{x + v : x ∈ self}`.
    pub fn translate(&self, v: &[u32]) -> PointSet {
        let f = self.space.field();
        let shifted: Vec<usize> = self
            .points()
            .map(|p| {
                let c: Vec<u32> = p.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect();
                self.space.index_of(&c)
            })
            .collect();
        PointSet::from_indices(&self.space, shifted)
    }

    /// Serializes to the text format: a `q=<q> d=<d>` header followed by
    /// one comma-separated point per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("q={} d={}\n", self.space.q(), self.space.dim());
        for p in self.points() {
            let line: Vec<String> = p.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let (q, d) = parse_header(header)?;
        let field = PrimeField::new(q).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
        let space = Space::new(&field, d).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
        let mut grid = vec![false; space.size()];
        for (lineno, line) in lines {
            let mut coords = Vec::with_capacity(d);
            for tok in line.split(',') {
                let tok = tok.trim();
                let v: u64 = tok
                    .parse()
                    .map_err(|_| Error::Parse { line: lineno + 1, msg: format!("not a residue: {tok:?}") })?;
                if v >= q {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("residue {v} out of range for q = {q}"),
                    });
                }
                coords.push(v as u32);
            }
            if coords.len() != d {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected {d} coordinates, found {}", coords.len()),
                });
            }
            grid[space.index_of(&coords)] = true;
        }
        Ok(PointSet::from_grid(&space, grid))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn parse_header(line: &str) -> Result<(u64, usize)> {
    let bad = || Error::Parse { line: 1, msg: format!("expected `q=<q> d=<d>`, found {line:?}") };
    let mut q = None;
    let mut d = None;
    for tok in line.split_whitespace() {
        match tok.split_once('=') {
            Some(("q", v)) => q = Some(v.parse::<u64>().map_err(|_| bad())?),
            Some(("d", v)) => d = Some(v.parse::<usize>().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    Ok((q.ok_or_else(bad)?, d.ok_or_else(bad)?))
}

/// Uniformly random subset of exactly `size` points, deterministic in `seed`.
pub fn sample_point_set(space: &Space, size: usize, seed: u64) -> Result<PointSet> {
    sample_point_set_with(space, size, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn sample_point_set_with<R: Rng + ?Sized>(space: &Space, size: usize, rng: &mut R) -> Result<PointSet> {
    if size > space.size() {
        return Err(Error::SizeTooLarge {
            q: space.q(),
            d: space.dim(),
            requested: size as u128,
            available: space.size() as u128,
        });
    }
    let picked = index::sample(rng, space.size(), size);
    Ok(PointSet::from_indices(space, picked))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Normalization {
    /// `f̂(m) = q^{-d} Σ_x χ(-x·m) f(x)`.
    ForwardInverseQPowD,
}

/// A complex function on `F_q^d`, usually a transform.
#[derive(Clone, Debug)]
pub struct SpectralFunction {
    space: Space,
    values: Vec<Complex64>,
    normalization: Normalization,
}

impl SpectralFunction {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn at(&self, m: &[u32]) -> Complex64 {
        self.values[self.space.index_of(m)]
    }

    pub fn at_index(&self, idx: usize) -> Complex64 {
        self.values[idx]
    }

    /// Value at the zero frequency.
    pub fn zero_mode(&self) -> Complex64 {
        self.values[0]
    }

    /// Recovers `f(x) = Σ_m χ(x·m) f̂(m)`.
    pub fn inverse(&self) -> Vec<Complex64> {
        let mut out = self.values.clone();
        transform_axes(&self.space, &mut out, 1);
        out
    }
}

/// Forward transform under the `q^{-d}` convention, one axis at a time.
pub fn fourier_transform(space: &Space, f: &[Complex64]) -> Result<SpectralFunction> {
    if f.len() != space.size() {
        return Err(Error::DimensionMismatch { q: space.q(), d: space.dim(), expected: space.size(), got: f.len() });
    }
    let mut values = f.to_vec();
    transform_axes(space, &mut values, -1);
    let scale = (space.q() as f64).powi(-(space.dim() as i32));
    values.iter_mut().for_each(|v| *v *= scale);
    Ok(SpectralFunction { space: space.clone(), values, normalization: Normalization::ForwardInverseQPowD })
}

/// `f(x) = Σ_m χ(x·m) g(m)` for raw frequency values `g`.
pub fn inverse_transform(space: &Space, mut values: Vec<Complex64>) -> Vec<Complex64> {
    assert_eq!(values.len(), space.size(), "frequency array has the wrong length");
    transform_axes(space, &mut values, 1);
    values
}

/// Transform of a point set's indicator.
pub fn transform_point_set(set: &PointSet) -> SpectralFunction {
    fourier_transform(set.space(), &set.indicator()).expect("indicator has the right length")
}

/// Unnormalized `g(k) = Σ_x χ(sign·x·k) f(x)` applied along every axis.
fn transform_axes(space: &Space, values: &mut [Complex64], sign: i64) {
    let q = space.q() as usize;
    let field = space.field();
    let twiddle: Vec<Complex64> = (0..q).map(|t| field.chi(field.reduce(sign * t as i64))).collect();
    let d = space.dim();
    for axis in 0..d {
        let stride = q.pow((d - 1 - axis) as u32);
        let block = q * stride;
        let run = |chunk: &mut [Complex64]| {
            let mut line = vec![Complex64::new(0.0, 0.0); q];
            for inner in 0..stride {
                for (x, slot) in line.iter_mut().enumerate() {
                    *slot = chunk[inner + x * stride];
                }
                for k in 0..q {
                    let mut acc = Complex64::new(0.0, 0.0);
                    let mut phase = 0usize;
                    for &v in &line {
                        acc += v * twiddle[phase];
                        phase += k;
                        if phase >= q {
                            phase -= q;
                        }
                    }
                    chunk[inner + k * stride] = acc;
                }
            }
        };
        if values.len() >= 1 << 14 {
            values.par_chunks_mut(block).for_each(run);
        } else {
            values.chunks_mut(block).for_each(run);
        }
    }
}

/// `|Σ_m |f̂(m)|² - q^{-d} Σ_x |f(x)|²|`.
pub fn plancherel_residual(space: &Space, f: &[Complex64]) -> Result<f64> {
    let spec = fourier_transform(space, f)?;
    let lhs: f64 = spec.values().iter().map(|v| v.norm_sqr()).sum();
    let rhs: f64 = f.iter().map(|v| v.norm_sqr()).sum::<f64>() / space.size() as f64;
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn space(q: u64, d: usize) -> Space {
        Space::new(&make_field(q).unwrap(), d).unwrap()
    }

    #[test]
    fn norm_examples() {
        let f7 = make_field(7).unwrap();
        assert_eq!(norm_n(&f7, &[0, 0], 3), 0);
        assert_eq!(norm_n(&f7, &[3, 5], 3), 5);
        assert_eq!(Vector::new(&f7, &[3, 5]).norm(3).value(), 5);
        let f5 = make_field(5).unwrap();
        assert_eq!(norm_n(&f5, &[1, 2], 2), 0);
        assert_eq!(Vector::new(&f5, &[0, 0, 0]).norm(4).value(), 0);
    }

    #[test]
    fn norm_table_matches_pointwise_norm() {
        let s = space(7, 3);
        let table = s.norm_table(3);
        for (i, &v) in table.iter().enumerate() {
            assert_eq!(v, norm_n(s.field(), &s.coords_of(i), 3));
        }
    }

    #[test]
    fn norm_of_difference_depends_only_on_difference() {
        let s = space(7, 2);
        let f = s.field();
        for x in 0..s.size() {
            for y in 0..s.size() {
                let vx = Vector::new(f, &s.coords_of(x).iter().map(|&c| c as i64).collect::<Vec<_>>());
                let vy = Vector::new(f, &s.coords_of(y).iter().map(|&c| c as i64).collect::<Vec<_>>());
                let diff = vx.sub(&vy);
                // Shifting both points by the same vector leaves the norm unchanged.
                let shift = Vector::new(f, &[2, 5]);
                let moved = vx.sub(&shift).sub(&vy.sub(&shift));
                assert_eq!(diff, moved);
                assert_eq!(diff.norm(3), moved.norm(3));
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let s = space(5, 3);
        for i in 0..s.size() {
            assert_eq!(s.index_of(&s.coords_of(i)), i);
        }
        assert_eq!(s.index_of(&[1, 2, 3]), 25 + 10 + 3);
    }

    #[test]
    fn delta_and_constant_transforms() {
        let s = space(5, 2);
        let mut delta = vec![Complex64::new(0.0, 0.0); s.size()];
        delta[0] = Complex64::new(1.0, 0.0);
        let spec = fourier_transform(&s, &delta).unwrap();
        for v in spec.values() {
            assert!((v - Complex64::new(1.0 / 25.0, 0.0)).norm() < 1e-15);
        }
        let ones = vec![Complex64::new(1.0, 0.0); s.size()];
        let spec = fourier_transform(&s, &ones).unwrap();
        assert!((spec.zero_mode() - 1.0).norm() < 1e-12);
        for v in &spec.values()[1..] {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn two_point_transform() {
        let s = space(5, 2);
        let e = PointSet::from_points(&s, [&[0u32, 0][..], &[1, 0][..]]).unwrap();
        let spec = transform_point_set(&e);
        let f = s.field();
        assert!((spec.at(&[0, 0]) - Complex64::new(2.0 / 25.0, 0.0)).norm() < 1e-15);
        for m in [[1u32, 0], [2, 3], [4, 4], [0, 1]] {
            let expected = (Complex64::new(1.0, 0.0) + f.chi(f.neg(m[0]))) / 25.0;
            assert!((spec.at(&m) - expected).norm() < 1e-14, "m = {m:?}");
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let s = space(5, 2);
        assert!(matches!(
            fourier_transform(&s, &[Complex64::new(0.0, 0.0); 24]),
            Err(Error::DimensionMismatch { expected: 25, got: 24, .. })
        ));
    }

    #[test]
    fn plancherel_on_zero_and_indicator() {
        let s = space(7, 2);
        assert_eq!(plancherel_residual(&s, &vec![Complex64::new(0.0, 0.0); 49]).unwrap(), 0.0);
        let e = sample_point_set(&s, 11, 3).unwrap();
        assert!(plancherel_residual(&s, &e.indicator()).unwrap() < 1e-12);
        let spec = transform_point_set(&e);
        let lhs: f64 = spec.values().iter().map(|v| v.norm_sqr()).sum();
        assert!((lhs - 11.0 / 49.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic_and_exact() {
        let s = space(13, 2);
        let a = sample_point_set(&s, 100, 1).unwrap();
        let b = sample_point_set(&s, 100, 1).unwrap();
        assert_eq!(a.size(), 100);
        assert_eq!(a, b);
        assert!(a.is_consistent());
        assert_eq!(sample_point_set(&s, 0, 9).unwrap().size(), 0);
        let full = sample_point_set(&s, 169, 9).unwrap();
        assert_eq!(full, PointSet::full(&s));
        assert!(matches!(sample_point_set(&s, 170, 0), Err(Error::SizeTooLarge { .. })));
    }

    #[test]
    fn point_file_round_trip_and_rejections() {
        let s = space(7, 3);
        let e = sample_point_set(&s, 20, 5).unwrap();
        let parsed = PointSet::parse(&e.to_text()).unwrap();
        assert_eq!(parsed, e);

        let ok = PointSet::parse("q=5 d=2\n1,2\n 3, 4\n\n1,2\n").unwrap();
        assert_eq!(ok.size(), 2);
        assert!(ok.contains(&[3, 4]));

        for bad in ["q=5 d=2\n1,5\n", "q=5 d=2\n1\n", "q=6 d=2\n", "d=2\n", "q=5 d=2\n1,x\n", ""] {
            assert!(PointSet::parse(bad).is_err(), "{bad:?}");
        }
        match PointSet::parse("q=5 d=2\n0,0\n1,7\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn from_points_validates() {
        let s = space(5, 2);
        assert!(PointSet::from_points(&s, [&[5u32, 0][..]]).is_err());
        assert!(PointSet::from_points(&s, [&[1u32][..]]).is_err());
    }
}
