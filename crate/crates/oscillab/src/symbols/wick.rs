//! Wick polynomials: exact complex-rational polynomials in `(zeta, zetabar)`.
//!
//! The coordinates diagonalize the oscillator flow: a monomial
//! `zeta^alpha zetabar^beta` is multiplied by `e^{i (beta - alpha) . tau}`
//! under the multiflow pullback, so torus-Fourier filtering, averaging and
//! the cohomological division are all coefficient-exact. The sign
//! conventions of the bracket and of the Moyal expansion are pinned by the
//! Fock-matrix oracle in the quantization layer; nothing here depends on a
//! transcribed sign surviving review.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{One, Zero};

use crate::exact::{
    crat_abs_f64, crat_from_c64, crat_i, crat_int, crat_one, crat_to_c64, rat_factorial,
    rat_from_f64, rat_int, CRat, Rat,
};
use crate::frequencies::{FrequencyVector, ResonanceModule};
use crate::symbols::{cos_sin_snapped, PhasePoint, SymbolError};

type MonKey = (Vec<u32>, Vec<u32>);

/// Polynomial `a(z) = sum c_{alpha beta} zeta^alpha zetabar^beta` with exact
/// complex-rational coefficients. Zero coefficients are pruned, so equality
/// of the term maps is equality of symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct WickSymbol {
    dim: usize,
    terms: BTreeMap<MonKey, CRat>,
}

impl WickSymbol {
    pub fn zero(dim: usize) -> Self {
        WickSymbol { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: CRat) -> Self {
        let mut s = Self::zero(dim);
        s.insert(vec![0; dim], vec![0; dim], c);
        s
    }

    pub fn constant_f64(dim: usize, c: f64) -> Self {
        Self::constant(dim, crat_from_c64(Complex64::new(c, 0.0)))
    }

    pub fn monomial(dim: usize, alpha: &[u32], beta: &[u32], c: CRat) -> Self {
        assert_eq!(alpha.len(), dim, "alpha has wrong dimension");
        assert_eq!(beta.len(), dim, "beta has wrong dimension");
        let mut s = Self::zero(dim);
        s.insert(alpha.to_vec(), beta.to_vec(), c);
        s
    }

    /// `zeta_j`.
    pub fn zeta(dim: usize, j: usize) -> Self {
        let mut alpha = vec![0; dim];
        alpha[j] = 1;
        Self::monomial(dim, &alpha, &vec![0; dim], crat_one())
    }

    /// `zetabar_j`.
    pub fn zeta_bar(dim: usize, j: usize) -> Self {
        let mut beta = vec![0; dim];
        beta[j] = 1;
        Self::monomial(dim, &vec![0; dim], &beta, crat_one())
    }

    /// Mode action `H_j = zeta_j zetabar_j`.
    pub fn mode_action(dim: usize, j: usize) -> Self {
        let mut idx = vec![0; dim];
        idx[j] = 1;
        Self::monomial(dim, &idx.clone(), &idx, crat_one())
    }

    /// The classical oscillator `H = sum_j omega_j zeta_j zetabar_j`.
    pub fn harmonic(omega: &FrequencyVector) -> Self {
        let d = omega.dim();
        let mut h = Self::zero(d);
        match omega {
            FrequencyVector::Exact(rats) => {
                for (j, w) in rats.iter().enumerate() {
                    h = &h + &Self::mode_action(d, j).scaled(&CRat::new(w.clone(), Rat::zero()));
                }
            }
            FrequencyVector::Approx(vals) => {
                for (j, &w) in vals.iter().enumerate() {
                    h = &h
                        + &Self::mode_action(d, j)
                            .scaled(&CRat::new(rat_from_f64(w), Rat::zero()));
                }
            }
        }
        h
    }

    fn insert(&mut self, alpha: Vec<u32>, beta: Vec<u32>, c: CRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((alpha, beta)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
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

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], &CRat)> {
        self.terms.iter().map(|((a, b), c)| (a.as_slice(), b.as_slice(), c))
    }

    pub fn coeff(&self, alpha: &[u32], beta: &[u32]) -> CRat {
        self.terms
            .get(&(alpha.to_vec(), beta.to_vec()))
            .cloned()
            .unwrap_or_else(num::Complex::zero)
    }

    /// Maximal total degree `|alpha| + |beta|`.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, b)| a.iter().sum::<u32>() + b.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Complex conjugate: swaps `alpha <-> beta` and conjugates coefficients.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            out.insert(b.clone(), a.clone(), c.conj());
        }
        out
    }

    /// Real-valuedness: `c_{beta alpha} = conj(c_{alpha beta})` for all terms.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Real part `(a + conj(a)) / 2`.
    pub fn real_part(&self) -> Self {
        (&(self + &self.conj())).scaled(&CRat::new(Rat::new(1.into(), 2.into()), Rat::zero()))
    }

    pub fn scaled(&self, c: &CRat) -> Self {
        let mut out = Self::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for ((a, b), coeff) in &self.terms {
            out.insert(a.clone(), b.clone(), coeff * c);
        }
        out
    }

    pub fn scaled_f64(&self, c: f64) -> Self {
        self.scaled(&crat_from_c64(Complex64::new(c, 0.0)))
    }

    /// Partial derivative in `zeta_j`.
    pub fn d_zeta(&self, j: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            if a[j] > 0 {
                let mut a2 = a.clone();
                a2[j] -= 1;
                out.insert(a2, b.clone(), c * crat_int(a[j] as i64, 0));
            }
        }
        out
    }

    /// Partial derivative in `zetabar_j`.
    pub fn d_zeta_bar(&self, j: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            if b[j] > 0 {
                let mut b2 = b.clone();
                b2[j] -= 1;
                out.insert(a.clone(), b2, c * crat_int(b[j] as i64, 0));
            }
        }
        out
    }

    /// Applies `prod_j d_zeta_j^{p_j} d_zetabar_j^{q_j}` in one pass.
    fn multi_derive(&self, p: &[u32], q: &[u32]) -> Self {
        let mut out = Self::zero(self.dim);
        'terms: for ((a, b), c) in &self.terms {
            let mut factor = Rat::one();
            let mut a2 = a.clone();
            let mut b2 = b.clone();
            for j in 0..self.dim {
                if a[j] < p[j] || b[j] < q[j] {
                    continue 'terms;
                }
                factor *= falling(a[j], p[j]);
                factor *= falling(b[j], q[j]);
                a2[j] -= p[j];
                b2[j] -= q[j];
            }
            out.insert(a2, b2, c * CRat::new(factor, Rat::zero()));
        }
        out
    }

    /// Pointwise evaluation. Paired powers `zeta_j^m zetabar_j^m` go through
    /// the real action `|zeta_j|^2 = (x_j^2 + xi_j^2)/2`, which keeps values
    /// of real symbols clean.
    pub fn eval(&self, z: &PhasePoint) -> Result<Complex64, SymbolError> {
        if z.dim() != self.dim {
            return Err(SymbolError::DimensionMismatch { symbol: self.dim, arg: z.dim() });
        }
        let zeta: Vec<Complex64> = (0..self.dim).map(|j| z.zeta(j)).collect();
        let action: Vec<f64> = (0..self.dim).map(|j| z.action(j)).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((a, b), c) in &self.terms {
            let mut m = crat_to_c64(c);
            for j in 0..self.dim {
                let paired = a[j].min(b[j]);
                m *= action[j].powi(paired as i32);
                m *= zeta[j].powu(a[j] - paired);
                m *= zeta[j].conj().powu(b[j] - paired);
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Gradient `(d/dx, d/dxi)` of a real symbol at a point. The polynomial
    /// differentiation is exact; only the evaluation is floating point.
    pub fn grad(&self, z: &PhasePoint) -> Result<(Vec<f64>, Vec<f64>), SymbolError> {
        if z.dim() != self.dim {
            return Err(SymbolError::DimensionMismatch { symbol: self.dim, arg: z.dim() });
        }
        if !self.is_real() {
            return Err(SymbolError::NotReal);
        }
        let inv_sqrt2 = 1.0 / 2f64.sqrt();
        let mut gx = vec![0.0; self.dim];
        let mut gxi = vec![0.0; self.dim];
        for j in 0..self.dim {
            let dz = self.d_zeta(j).eval(z)?;
            let dzb = self.d_zeta_bar(j).eval(z)?;
            // d/dx = (d_zeta + d_zetabar)/sqrt(2), d/dxi = i(d_zeta - d_zetabar)/sqrt(2)
            gx[j] = ((dz + dzb) * inv_sqrt2).re;
            gxi[j] = (Complex64::i() * (dz - dzb) * inv_sqrt2).re;
        }
        Ok((gx, gxi))
    }

    /// Poisson bracket with the convention `{H, f} = d/dt (f o phi_t^H)|_0`,
    /// i.e. `{a, b} = i sum_j (d_zeta_j a d_zetabar_j b - d_zetabar_j a d_zeta_j b)`.
    pub fn poisson(&self, other: &WickSymbol) -> WickSymbol {
        assert_eq!(self.dim, other.dim, "poisson bracket needs equal dimensions");
        let mut acc = WickSymbol::zero(self.dim);
        for j in 0..self.dim {
            let t1 = &self.d_zeta(j) * &other.d_zeta_bar(j);
            let t2 = &self.d_zeta_bar(j) * &other.d_zeta(j);
            acc = &acc + &(&t1 - &t2);
        }
        acc.scaled(&crat_i())
    }

    /// Moyal product via the terminating bidifferential expansion
    ///
    /// `a # b = sum_{p,q} (hbar/2)^{|p|+|q|} (-1)^{|q|} / (p! q!)
    ///          (d_zeta^p d_zetabar^q a)(d_zetabar^p d_zeta^q b)`,
    ///
    /// exact for polynomials and any dyadic `hbar`. At `hbar = 0` it reduces
    /// to the pointwise product.
    pub fn moyal_rat(&self, other: &WickSymbol, hbar: &Rat) -> WickSymbol {
        assert_eq!(self.dim, other.dim, "moyal product needs equal dimensions");
        let d = self.dim;
        let half_hbar = hbar / rat_int(2);
        // per-mode derivative bounds
        let mut pmax = vec![0u32; d];
        let mut qmax = vec![0u32; d];
        for j in 0..d {
            let a_zeta = self.max_order(j, true);
            let a_zbar = self.max_order(j, false);
            let b_zeta = other.max_order(j, true);
            let b_zbar = other.max_order(j, false);
            pmax[j] = a_zeta.min(b_zbar);
            qmax[j] = a_zbar.min(b_zeta);
        }
        let mut acc = WickSymbol::zero(d);
        let mut p = vec![0u32; d];
        loop {
            let mut q = vec![0u32; d];
            loop {
                let order: u32 = p.iter().sum::<u32>() + q.iter().sum::<u32>();
                let da = self.multi_derive(&p, &q);
                if !da.is_zero() {
                    let db = other.multi_derive_swapped(&p, &q);
                    if !db.is_zero() {
                        let mut scalar = pow_rat(&half_hbar, order);
                        if q.iter().sum::<u32>() % 2 == 1 {
                            scalar = -scalar;
                        }
                        for j in 0..d {
                            scalar /= rat_factorial(p[j]);
                            scalar /= rat_factorial(q[j]);
                        }
                        if !scalar.is_zero() {
                            acc = &acc + &(&da * &db).scaled(&CRat::new(scalar, Rat::zero()));
                        }
                    }
                }
                if !advance(&mut q, &qmax) {
                    break;
                }
            }
            if !advance(&mut p, &pmax) {
                break;
            }
        }
        acc
    }

    pub fn moyal(&self, other: &WickSymbol, hbar: f64) -> WickSymbol {
        self.moyal_rat(other, &rat_from_f64(hbar))
    }

    /// `[a, b]_hbar = a # b - b # a`.
    pub fn commutator_h(&self, other: &WickSymbol, hbar: f64) -> WickSymbol {
        let h = rat_from_f64(hbar);
        &self.moyal_rat(other, &h) - &other.moyal_rat(self, &h)
    }

    fn multi_derive_swapped(&self, p: &[u32], q: &[u32]) -> Self {
        // counterpart factor of the Moyal pairing: zetabar^p zeta^q derivatives
        self.multi_derive(q, p)
    }

    fn max_order(&self, j: usize, zeta_side: bool) -> u32 {
        self.terms
            .keys()
            .map(|(a, b)| if zeta_side { a[j] } else { b[j] })
            .max()
            .unwrap_or(0)
    }

    /// Pullback along the multiflow at torus time `tau`: multiplies each
    /// monomial by `e^{i (beta - alpha) . tau}`. Quarter-turn angles are
    /// applied exactly; generic angles round once to floating point. The
    /// phase for a mode and its negative are exact conjugates, so realness
    /// is preserved exactly.
    pub fn flow_pullback(&self, tau: &[f64]) -> Self {
        assert_eq!(tau.len(), self.dim, "tau has wrong dimension");
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            let mode: Vec<i64> = (0..self.dim).map(|j| b[j] as i64 - a[j] as i64).collect();
            let flip = mode.iter().find(|&&m| m != 0).map(|&m| m < 0).unwrap_or(false);
            let theta: f64 = mode
                .iter()
                .zip(tau)
                .map(|(&m, &t)| if flip { -m as f64 * t } else { m as f64 * t })
                .sum();
            let (cos, sin) = cos_sin_snapped(theta);
            let phase = crat_from_c64(Complex64::new(cos, if flip { -sin } else { sin }));
            out.insert(a.clone(), b.clone(), c * phase);
        }
        out
    }

    /// Pullback along the oscillator flow for time `t`: `tau = t * omega`.
    pub fn hamiltonian_pullback(&self, omega: &FrequencyVector, t: f64) -> Self {
        let tau: Vec<f64> = omega.entries_f64().iter().map(|w| w * t).collect();
        self.flow_pullback(&tau)
    }

    /// Torus-Fourier mode `a_k`: the sub-polynomial with `beta - alpha = k`,
    /// scaled by the torus volume (see [`torus_mode_scale`]). The modes
    /// reconstruct the symbol exactly: `sum_k a_k / scale = a`.
    pub fn fourier_mode(&self, k: &[i64]) -> Self {
        assert_eq!(k.len(), self.dim, "k has wrong dimension");
        let scale = CRat::new(torus_mode_scale(self.dim), Rat::zero());
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            let matches = (0..self.dim).all(|j| b[j] as i64 - a[j] as i64 == k[j]);
            if matches {
                out.insert(a.clone(), b.clone(), c * &scale);
            }
        }
        out
    }

    /// The set of modes `k = beta - alpha` present in the symbol.
    pub fn mode_support(&self) -> Vec<Vec<i64>> {
        let mut modes: Vec<Vec<i64>> = self
            .terms
            .keys()
            .map(|(a, b)| (0..self.dim).map(|j| b[j] as i64 - a[j] as i64).collect())
            .collect();
        modes.sort();
        modes.dedup();
        modes
    }

    /// Flow average: keeps the monomials whose mode lies in the resonance
    /// module. Exact, idempotent, and real-preserving.
    pub fn average(&self, module: &ResonanceModule) -> Result<Self, SymbolError> {
        if module.dim() != self.dim {
            return Err(SymbolError::DimensionMismatch { symbol: self.dim, arg: module.dim() });
        }
        let mut out = Self::zero(self.dim);
        for ((a, b), c) in &self.terms {
            let k: Vec<i64> = (0..self.dim).map(|j| b[j] as i64 - a[j] as i64).collect();
            if module.is_resonant(&k)? {
                out.insert(a.clone(), b.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Complement of [`WickSymbol::average`]: the nonresonant part.
    pub fn nonresonant_part(&self, module: &ResonanceModule) -> Result<Self, SymbolError> {
        Ok(self - &self.average(module)?)
    }

    /// Sum of coefficient moduli (the polynomial stand-in for an L1 norm).
    pub fn coeff_l1(&self) -> f64 {
        self.terms.values().map(crat_abs_f64).sum()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(crat_abs_f64).fold(0.0, f64::max)
    }
}

fn falling(n: u32, k: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= rat_int((n - i) as i64);
    }
    acc
}

fn pow_rat(r: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

fn advance(idx: &mut [u32], max: &[u32]) -> bool {
    for j in 0..idx.len() {
        if idx[j] < max[j] {
            idx[j] += 1;
            return true;
        }
        idx[j] = 0;
    }
    false
}

/// Exact dyadic stand-in for the torus volume `(2 pi)^d` used in the mode
/// normalization; multiplying and dividing by it round-trips exactly.
pub fn torus_mode_scale(dim: usize) -> Rat {
    rat_from_f64((2.0 * std::f64::consts::PI).powi(dim as i32))
}

impl Add for &WickSymbol {
    type Output = WickSymbol;
    fn add(self, rhs: &WickSymbol) -> WickSymbol {
        assert_eq!(self.dim, rhs.dim, "symbol dimensions differ");
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.insert(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WickSymbol {
    type Output = WickSymbol;
    fn sub(self, rhs: &WickSymbol) -> WickSymbol {
        assert_eq!(self.dim, rhs.dim, "symbol dimensions differ");
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.insert(a.clone(), b.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &WickSymbol {
    type Output = WickSymbol;
    fn neg(self) -> WickSymbol {
        let mut out = WickSymbol::zero(self.dim);
        for ((a, b), c) in &self.terms {
            out.insert(a.clone(), b.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &WickSymbol {
    type Output = WickSymbol;
    fn mul(self, rhs: &WickSymbol) -> WickSymbol {
        assert_eq!(self.dim, rhs.dim, "symbol dimensions differ");
        let mut out = WickSymbol::zero(self.dim);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                let a: Vec<u32> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
                let b: Vec<u32> = b1.iter().zip(b2).map(|(x, y)| x + y).collect();
                out.insert(a, b, c1 * c2);
            }
        }
        out
    }
}
