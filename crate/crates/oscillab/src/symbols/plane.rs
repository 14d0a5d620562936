//! Plane-wave sums `a(z) = sum_j c_j e^{i w_j . z}` — the discrete-measure
//! model of the analytic symbol classes.
//!
//! The frequency measure of such a sum is a finite combination of point
//! masses, so the weighted analytic norm is a finite sum and the Moyal
//! product is an exact phase law: frequencies add, and the coefficient
//! picks up `e^{i hbar sigma(w, w')/2}` with `sigma` the symplectic form.
//! Oscillator pullbacks rotate each `(x_j, xi_j)` frequency block, which
//! leaves the Euclidean length of `w` (and hence every analytic norm)
//! invariant.

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::Zero;

use crate::frequencies::{FrequencyVector, ResonanceModule};
use crate::symbols::{cos_sin_snapped, PhasePoint, SymbolError};

/// Finite sum of plane waves with merged frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveSymbol {
    dim: usize,
    // keyed by the exact bit pattern of w (with -0.0 normalized) so that
    // structurally equal frequencies always merge
    terms: BTreeMap<Vec<u64>, (Vec<f64>, Complex64)>,
}

fn w_key(w: &[f64]) -> Vec<u64> {
    w.iter().map(|&x| (if x == 0.0 { 0.0f64 } else { x }).to_bits()).collect()
}

impl PlaneWaveSymbol {
    pub fn zero(dim: usize) -> Self {
        PlaneWaveSymbol { dim, terms: BTreeMap::new() }
    }

    /// Single wave `c e^{i w . z}`; `w` is laid out `[w_x, w_xi]`.
    pub fn wave(dim: usize, w: &[f64], c: Complex64) -> Self {
        assert_eq!(w.len(), 2 * dim, "frequency vector has wrong dimension");
        let mut s = Self::zero(dim);
        s.insert(w.to_vec(), c);
        s
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        Self::wave(dim, &vec![0.0; 2 * dim], c)
    }

    /// Real wave `2 |c| cos(w . z + arg c)` given as `c e^{iw.z} + conj` pair.
    pub fn real_wave(dim: usize, w: &[f64], c: Complex64) -> Self {
        let mut s = Self::wave(dim, w, c);
        let neg: Vec<f64> = w.iter().map(|&x| -x).collect();
        s.insert(neg, c.conj());
        s
    }

    fn insert(&mut self, w: Vec<f64>, c: Complex64) {
        if c.is_zero() {
            return;
        }
        let key = w_key(&w);
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert((w, c));
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().1 + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.get_mut().1 = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[f64], Complex64)> {
        self.terms.values().map(|(w, c)| (w.as_slice(), *c))
    }

    pub fn coeff(&self, w: &[f64]) -> Complex64 {
        self.terms.get(&w_key(w)).map(|(_, c)| *c).unwrap_or_else(Complex64::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (w, c) in other.terms.values() {
            out.insert(w.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(Complex64::new(-1.0, 0.0)))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.dim);
        for (w, coeff) in self.terms.values() {
            out.insert(w.clone(), coeff * c);
        }
        out
    }

    pub fn eval(&self, z: &PhasePoint) -> Result<Complex64, SymbolError> {
        if z.dim() != self.dim {
            return Err(SymbolError::DimensionMismatch { symbol: self.dim, arg: z.dim() });
        }
        let mut acc = Complex64::zero();
        for (w, c) in self.terms.values() {
            let phase: f64 = w.iter().zip(z.coords()).map(|(a, b)| a * b).sum();
            acc += c * Complex64::from_polar(1.0, phase);
        }
        Ok(acc)
    }

    /// Pointwise product: frequencies add, coefficients multiply.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (w1, c1) in self.terms.values() {
            for (w2, c2) in other.terms.values() {
                let w: Vec<f64> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                out.insert(w, c1 * c2);
            }
        }
        out
    }

    /// Moyal product as the exact phase law
    /// `e_w # e_{w'} = e^{i hbar sigma(w, w')/2} e_{w + w'}`.
    pub fn moyal(&self, other: &Self, hbar: f64) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (w1, c1) in self.terms.values() {
            for (w2, c2) in other.terms.values() {
                let w: Vec<f64> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                let phase = 0.5 * hbar * symplectic(self.dim, w1, w2);
                out.insert(w, c1 * c2 * Complex64::from_polar(1.0, phase));
            }
        }
        out
    }

    /// `[a, b]_hbar = a # b - b # a`; each wave pair contributes
    /// `2i sin(hbar sigma/2) e_{w+w'}`.
    pub fn commutator_h(&self, other: &Self, hbar: f64) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (w1, c1) in self.terms.values() {
            for (w2, c2) in other.terms.values() {
                let w: Vec<f64> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                let s = (0.5 * hbar * symplectic(self.dim, w1, w2)).sin();
                out.insert(w, c1 * c2 * Complex64::new(0.0, 2.0 * s));
            }
        }
        out
    }

    /// Pullback along the multiflow: rotates each frequency block by the
    /// transposed phase-plane rotation, leaving `|w|` unchanged.
    pub fn flow_pullback(&self, tau: &[f64]) -> Self {
        assert_eq!(tau.len(), self.dim, "tau has wrong dimension");
        let d = self.dim;
        let trig: Vec<(f64, f64)> = tau.iter().map(|&t| cos_sin_snapped(t)).collect();
        let mut out = Self::zero(d);
        for (w, c) in self.terms.values() {
            let mut w2 = vec![0.0; 2 * d];
            for j in 0..d {
                let (cos, sin) = trig[j];
                let (wx, wxi) = (w[j], w[d + j]);
                // transpose of the block rotation [[cos, sin], [-sin, cos]]
                w2[j] = cos * wx - sin * wxi;
                w2[d + j] = sin * wx + cos * wxi;
            }
            out.insert(w2, *c);
        }
        out
    }

    pub fn hamiltonian_pullback(&self, omega: &FrequencyVector, t: f64) -> Self {
        let tau: Vec<f64> = omega.entries_f64().iter().map(|w| w * t).collect();
        self.flow_pullback(&tau)
    }

    /// Weighted analytic norm `sum_j |c_j| e^{s ||w_j||}` (Euclidean norm).
    pub fn norm_as(&self, s: f64) -> Result<f64, SymbolError> {
        if s < 0.0 {
            return Err(SymbolError::InvalidParameter("analytic weight s must be >= 0".into()));
        }
        Ok(self
            .terms
            .values()
            .map(|(w, c)| c.norm() * (s * norm2(w)).exp())
            .sum())
    }

    pub fn is_real(&self) -> bool {
        for (w, c) in self.terms.values() {
            let neg: Vec<f64> = w.iter().map(|&x| -x).collect();
            if self.coeff(&neg) != c.conj() {
                return false;
            }
        }
        true
    }

    /// Largest Euclidean frequency present.
    pub fn max_freq_norm(&self) -> f64 {
        self.terms.values().map(|(w, _)| norm2(w)).fold(0.0, f64::max)
    }
}

fn norm2(w: &[f64]) -> f64 {
    w.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Standard symplectic product of frequency vectors laid out `[w_x, w_xi]`:
/// `sigma(w, w') = w_xi . w'_x - w_x . w'_xi`.
pub(crate) fn symplectic(dim: usize, w1: &[f64], w2: &[f64]) -> f64 {
    let mut acc = 0.0;
    for j in 0..dim {
        acc += w1[dim + j] * w2[j] - w1[j] * w2[dim + j];
    }
    acc
}

/// Quadrature average of a plane-wave symbol over the minimal torus.
#[derive(Debug, Clone)]
pub struct AveragedPlaneWave {
    /// Equal-weight quadrature approximant of the average (itself a
    /// plane-wave sum, so norms can be evaluated on it).
    pub symbol: PlaneWaveSymbol,
    /// Difference between the `n` and `2n` point rules at probe points.
    pub quad_error: f64,
    /// False when the resonance structure was only detected numerically.
    pub certified: bool,
}

/// Averages `a` along the oscillator flow by equal-weight quadrature on the
/// closure of the orbit.
///
/// For exact rational frequencies the flow is periodic and the rule samples
/// one full period; otherwise the orbit equidistributes on the minimal torus
/// and the rule samples a long Kronecker segment, flagged as uncertified.
pub fn average_planewave_quadrature(
    a: &PlaneWaveSymbol,
    omega: &FrequencyVector,
    module: &ResonanceModule,
    n: usize,
) -> Result<AveragedPlaneWave, SymbolError> {
    if n < 8 {
        return Err(SymbolError::InvalidParameter("quadrature order must be >= 8".into()));
    }
    if omega.dim() != a.dim() {
        return Err(SymbolError::DimensionMismatch { symbol: a.dim(), arg: omega.dim() });
    }
    let coarse = orbit_average(a, omega, module, n)?;
    let fine = orbit_average(a, omega, module, 2 * n)?;
    let err = probe_distance(&coarse, &fine, a.max_freq_norm());
    Ok(AveragedPlaneWave {
        symbol: fine,
        quad_error: err,
        certified: omega.is_exact() && !module.is_approximate(),
    })
}

fn orbit_average(
    a: &PlaneWaveSymbol,
    omega: &FrequencyVector,
    module: &ResonanceModule,
    n: usize,
) -> Result<PlaneWaveSymbol, SymbolError> {
    let weight = Complex64::new(1.0 / n as f64, 0.0);
    let mut acc = PlaneWaveSymbol::zero(a.dim());
    if omega.is_exact() {
        // periodic flow: period T = 2 pi Q / gcd(m) after clearing denominators
        let (m, q) = omega.cleared()?;
        let g = m.iter().fold(num::BigInt::ZERO, |acc, x| num::integer::gcd(acc, x.clone()));
        let ratio = num::rational::BigRational::new(q, g);
        let period = 2.0 * std::f64::consts::PI * crate::exact::rat_to_f64(&ratio);
        for i in 0..n {
            let t = period * i as f64 / n as f64;
            acc = acc.add(&a.hamiltonian_pullback(omega, t).scaled(weight));
        }
    } else if module.rank() == 0 {
        // dense orbit in the full torus: product lattice quadrature
        let d = a.dim();
        let per_axis = (n as f64).powf(1.0 / d as f64).ceil().max(4.0) as usize;
        let w = Complex64::new(1.0 / (per_axis.pow(d as u32)) as f64, 0.0);
        let mut idx = vec![0usize; d];
        loop {
            let tau: Vec<f64> = idx
                .iter()
                .map(|&i| 2.0 * std::f64::consts::PI * i as f64 / per_axis as f64)
                .collect();
            acc = acc.add(&a.flow_pullback(&tau).scaled(w));
            let mut pos = 0;
            loop {
                if pos == d {
                    return Ok(acc);
                }
                if idx[pos] + 1 < per_axis {
                    idx[pos] += 1;
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    } else {
        // partially resonant approximate frequencies: sample a long
        // Kronecker segment of the orbit closure
        let golden = 0.5 * (1.0 + 5f64.sqrt());
        for i in 0..n {
            let t = 2.0 * std::f64::consts::PI * golden * i as f64;
            acc = acc.add(&a.hamiltonian_pullback(omega, t).scaled(weight));
        }
    }
    Ok(acc)
}

fn probe_distance(a: &PlaneWaveSymbol, b: &PlaneWaveSymbol, wscale: f64) -> f64 {
    let d = a.dim();
    let scale = if wscale > 0.0 { 1.0 / wscale.max(1.0) } else { 1.0 };
    let mut worst: f64 = 0.0;
    for i in 0..8 {
        let coords: Vec<f64> = (0..2 * d)
            .map(|j| scale * ((i * 7 + j * 3 + 1) as f64 * 0.37).sin())
            .collect();
        let z = PhasePoint::new(coords);
        let da = a.eval(&z).unwrap();
        let db = b.eval(&z).unwrap();
        worst = worst.max((da - db).norm());
    }
    worst
}

/// Weighted mode-sum norm over torus-Fourier modes `|k|_1 <= kmax`.
#[derive(Debug, Clone)]
pub struct ArhoSNorm {
    /// Partial sum `(2 pi)^{-d} sum_k ||a_k||_s e^{rho |k|_1}`.
    pub value: f64,
    /// Outermost-shell contribution, extrapolated geometrically when the
    /// shells decay; equals the last shell when they do not.
    pub tail_indicator: f64,
    /// True when the shells showed no decay inside the search box, i.e. the
    /// symbol sits outside the weighted class and the value is a truncation.
    pub truncated: bool,
}

/// Computes the weighted mode norm of a plane-wave symbol.
///
/// Modes are produced by an equal-weight product rule on the angle torus;
/// each mode is itself a plane-wave sum whose analytic norm is a finite
/// sum. A point mass with a nonzero frequency block excites every angular
/// mode without decay (only measures smooth along the rotation orbits have
/// summable modes), so generic single waves report `truncated = true`; with
/// `tail_tol` set, that condition becomes an error.
pub fn norm_arho_s(
    a: &PlaneWaveSymbol,
    omega: &FrequencyVector,
    rho: f64,
    s: f64,
    kmax: i64,
    tail_tol: Option<f64>,
) -> Result<ArhoSNorm, SymbolError> {
    if rho <= 0.0 || s <= 0.0 {
        return Err(SymbolError::InvalidParameter("rho and s must be > 0".into()));
    }
    if kmax < 1 {
        return Err(SymbolError::InvalidParameter("kmax must be >= 1".into()));
    }
    if omega.dim() != a.dim() {
        return Err(SymbolError::DimensionMismatch { symbol: a.dim(), arg: omega.dim() });
    }
    let d = a.dim();
    let n_axis = (2 * kmax as usize + 2).max(16);
    // pullbacks on the product grid, reused across all modes
    let mut grid: Vec<(Vec<f64>, PlaneWaveSymbol)> = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let tau: Vec<f64> = idx
            .iter()
            .map(|&i| 2.0 * std::f64::consts::PI * i as f64 / n_axis as f64)
            .collect();
        grid.push((tau.clone(), a.flow_pullback(&tau)));
        let mut pos = 0;
        loop {
            if pos == d {
                break;
            }
            if idx[pos] + 1 < n_axis {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == d {
            break;
        }
    }
    let cell = (2.0 * std::f64::consts::PI / n_axis as f64).powi(d as i32);
    let norm_factor = (2.0 * std::f64::consts::PI).powi(d as i32);

    let mut shells: Vec<f64> = vec![0.0; kmax as usize + 1];
    let mut value = 0.0;
    let mut k = vec![-kmax; d];
    loop {
        let k1: i64 = k.iter().map(|kj| kj.abs()).sum();
        if k1 <= kmax {
            let mut mode = PlaneWaveSymbol::zero(d);
            for (tau, pb) in &grid {
                let phase: f64 = k.iter().zip(tau).map(|(&kj, &tj)| -(kj as f64) * tj).sum();
                let w = Complex64::from_polar(cell, phase);
                mode = mode.add(&pb.scaled(w));
            }
            let mode_norm = mode.norm_as(s)? / norm_factor;
            let contrib = mode_norm * (rho * k1 as f64).exp();
            value += contrib;
            shells[k1 as usize] += contrib;
        }
        let mut pos = 0;
        loop {
            if pos == d {
                let last = shells[kmax as usize];
                let prev = shells[kmax as usize - 1];
                // quadrature noise floor: modes this small are numerically zero
                let floor = 1e-13 * value.max(f64::MIN_POSITIVE);
                let (tail, truncated) = if last <= floor {
                    (0.0, false)
                } else if prev > floor && last / prev < 0.95 {
                    let r = last / prev;
                    (last * r / (1.0 - r), false)
                } else {
                    (last, true)
                };
                if let Some(tol) = tail_tol {
                    if tail > tol * value.max(f64::MIN_POSITIVE) {
                        return Err(SymbolError::ModeTruncation { tail, tol: tol * value });
                    }
                }
                return Ok(ArhoSNorm { value, tail_indicator: tail, truncated });
            }
            if k[pos] < kmax {
                k[pos] += 1;
                break;
            }
            k[pos] = -kmax;
            pos += 1;
        }
    }
}
