//! Exact arithmetic on the frequency vector of a harmonic oscillator:
//! resonance modules, minimal-torus dimension and partial-Diophantine
//! constants.
//!
//! Frequencies are either *exact* (positive rationals, stored in lowest
//! terms with arbitrary-precision integers) or *approximate* (floats with
//! an explicit resonance tolerance supplied at detection time). Every
//! resonance statement derived from floats is flagged approximate and the
//! flag propagates to downstream results.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};

use crate::exact::{rat_to_f64, Rat};

#[derive(Debug, thiserror::Error)]
pub enum FrequencyError {
    #[error("frequency vector must have at least one entry")]
    Empty,
    #[error("frequency entries must be strictly positive (entry {0})")]
    NonPositive(usize),
    #[error("zero denominator in entry {0}")]
    ZeroDenominator(usize),
    #[error("cannot parse frequency entry {0:?}")]
    Parse(String),
    #[error("operation requires an exact-mode frequency vector")]
    ApproximateMode,
    #[error("operation requires an approximate-mode frequency vector")]
    ExactMode,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tolerance too coarse: detected module of rank {0} contradicts positivity of the frequencies")]
    ToleranceTooCoarse(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Frequency vector of the oscillator, exact or approximate.
#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyVector {
    /// Positive rationals in lowest terms.
    Exact(Vec<Rat>),
    /// Positive floats; resonance statements require an explicit tolerance.
    Approx(Vec<f64>),
}

impl FrequencyVector {
    pub fn exact_from_pairs(entries: &[(i64, i64)]) -> Result<Self, FrequencyError> {
        let rats = entries
            .iter()
            .enumerate()
            .map(|(j, &(p, q))| {
                if q == 0 {
                    return Err(FrequencyError::ZeroDenominator(j));
                }
                Ok(Rat::new(BigInt::from(p), BigInt::from(q)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::exact_from_rats(rats)
    }

    pub fn exact_from_rats(entries: Vec<Rat>) -> Result<Self, FrequencyError> {
        if entries.is_empty() {
            return Err(FrequencyError::Empty);
        }
        for (j, r) in entries.iter().enumerate() {
            if !r.is_positive() {
                return Err(FrequencyError::NonPositive(j));
            }
        }
        Ok(FrequencyVector::Exact(entries))
    }

    /// Parses entries like `"3"`, `"1/2"`.
    pub fn exact_from_strs(entries: &[&str]) -> Result<Self, FrequencyError> {
        let rats = entries
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::exact_from_rats(rats)
    }

    pub fn approx(entries: Vec<f64>) -> Result<Self, FrequencyError> {
        if entries.is_empty() {
            return Err(FrequencyError::Empty);
        }
        for (j, &x) in entries.iter().enumerate() {
            if !(x > 0.0) || !x.is_finite() {
                return Err(FrequencyError::NonPositive(j));
            }
        }
        Ok(FrequencyVector::Approx(entries))
    }

    pub fn dim(&self) -> usize {
        match self {
            FrequencyVector::Exact(v) => v.len(),
            FrequencyVector::Approx(v) => v.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, FrequencyVector::Exact(_))
    }

    pub fn entries_f64(&self) -> Vec<f64> {
        match self {
            FrequencyVector::Exact(v) => v.iter().map(rat_to_f64).collect(),
            FrequencyVector::Approx(v) => v.clone(),
        }
    }

    pub fn rat_entries(&self) -> Result<&[Rat], FrequencyError> {
        match self {
            FrequencyVector::Exact(v) => Ok(v),
            FrequencyVector::Approx(_) => Err(FrequencyError::ApproximateMode),
        }
    }

    /// Exact dot product with an integer vector.
    pub fn dot_int(&self, k: &[i64]) -> Result<Rat, FrequencyError> {
        let entries = self.rat_entries()?;
        if entries.len() != k.len() {
            return Err(FrequencyError::DimensionMismatch {
                expected: entries.len(),
                got: k.len(),
            });
        }
        let mut acc = Rat::zero();
        for (w, &kj) in entries.iter().zip(k) {
            acc += w * Rat::from_integer(BigInt::from(kj));
        }
        Ok(acc)
    }

    pub fn dot_int_f64(&self, k: &[i64]) -> Result<f64, FrequencyError> {
        if self.dim() != k.len() {
            return Err(FrequencyError::DimensionMismatch {
                expected: self.dim(),
                got: k.len(),
            });
        }
        Ok(self
            .entries_f64()
            .iter()
            .zip(k)
            .map(|(w, &kj)| w * kj as f64)
            .sum())
    }

    /// Clears denominators: returns the primitive integer vector `m` with
    /// `omega = m * g / Q` and the common denominator `Q` (lcm of the
    /// reduced denominators). Resonances of `omega` equal resonances of `m`.
    pub fn cleared(&self) -> Result<(Vec<BigInt>, BigInt), FrequencyError> {
        let entries = self.rat_entries()?;
        let mut q = BigInt::one();
        for r in entries {
            q = q.lcm(r.denom());
        }
        let m: Vec<BigInt> = entries
            .iter()
            .map(|r| r.numer() * (&q / r.denom()))
            .collect();
        Ok((m, q))
    }
}

fn parse_rational(s: &str) -> Result<Rat, FrequencyError> {
    let s = s.trim();
    let parse_int =
        |t: &str| t.trim().parse::<BigInt>().map_err(|_| FrequencyError::Parse(s.to_string()));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (parse_int(p)?, parse_int(q)?);
            if q.is_zero() {
                return Err(FrequencyError::Parse(s.to_string()));
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Integer lattice `{ k : omega . k = 0 }`, described by a row basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceModule {
    basis: Vec<Vec<i64>>,
    dim: usize,
    /// Exact integer form of omega (cleared denominators); present only in
    /// exact mode and used for fast membership tests.
    omega_int: Option<Vec<BigInt>>,
    approximate: bool,
}

impl ResonanceModule {
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the minimal invariant torus, `d - rank`.
    pub fn d_omega(&self) -> usize {
        self.dim - self.rank()
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    /// Membership test: `k` lies in the integer span of the basis.
    ///
    /// For exact modules the basis is saturated, so membership is the exact
    /// vanishing of `omega . k`; for approximate modules the system is
    /// solved over the rationals and checked for integrality.
    pub fn is_resonant(&self, k: &[i64]) -> Result<bool, FrequencyError> {
        if k.len() != self.dim {
            return Err(FrequencyError::DimensionMismatch {
                expected: self.dim,
                got: k.len(),
            });
        }
        if let Some(m) = &self.omega_int {
            let dot: BigInt = m.iter().zip(k).map(|(mj, &kj)| mj * BigInt::from(kj)).sum();
            return Ok(dot.is_zero());
        }
        Ok(in_integer_span(&self.basis, k))
    }

    /// Module of rank zero (only the trivial resonance).
    pub fn trivial(dim: usize, approximate: bool) -> Self {
        ResonanceModule {
            basis: Vec::new(),
            dim,
            omega_int: None,
            approximate,
        }
    }
}

/// Computes the resonance module of an exact frequency vector.
///
/// Denominators are cleared and the integer kernel of the resulting row
/// vector is built by a staircase of extended gcds; the returned basis is
/// saturated (it generates every integer solution) and size-reduced.
pub fn resonance_module(omega: &FrequencyVector) -> Result<ResonanceModule, FrequencyError> {
    let (m, _q) = omega.cleared()?;
    let d = m.len();
    let mut basis = integer_row_kernel(&m);
    size_reduce(&mut basis);
    normalize_signs(&mut basis);
    Ok(ResonanceModule {
        basis,
        dim: d,
        omega_int: Some(m),
        approximate: false,
    })
}

/// Detects near-resonances of an approximate frequency vector: the module
/// generated by `{ k : |k|_inf <= radius, |omega . k| <= tol }`.
pub fn detect_resonances_approx(
    omega: &FrequencyVector,
    radius: i64,
    tol: f64,
) -> Result<ResonanceModule, FrequencyError> {
    let entries = match omega {
        FrequencyVector::Approx(v) => v.clone(),
        FrequencyVector::Exact(_) => return Err(FrequencyError::ExactMode),
    };
    if radius < 1 {
        return Err(FrequencyError::InvalidParameter("radius must be >= 1".into()));
    }
    if !(tol > 0.0) {
        return Err(FrequencyError::InvalidParameter("tol must be > 0".into()));
    }
    let d = entries.len();
    let mut hits: Vec<Vec<i64>> = Vec::new();
    let mut k = vec![-radius; d];
    loop {
        if k.iter().any(|&kj| kj != 0) {
            let dot: f64 = entries.iter().zip(&k).map(|(w, &kj)| w * kj as f64).sum();
            if dot.abs() <= tol {
                // keep one representative per +/- pair
                if k.iter().find(|&&kj| kj != 0).map(|&kj| kj > 0).unwrap_or(false) {
                    hits.push(k.clone());
                }
            }
        }
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == d {
                let mut basis = hermite_row_basis(&hits);
                if basis.len() == d {
                    return Err(FrequencyError::ToleranceTooCoarse(basis.len()));
                }
                size_reduce(&mut basis);
                normalize_signs(&mut basis);
                return Ok(ResonanceModule {
                    basis,
                    dim: d,
                    omega_int: None,
                    approximate: true,
                });
            }
            if k[pos] < radius {
                k[pos] += 1;
                break;
            }
            k[pos] = -radius;
            pos += 1;
        }
    }
}

/// Partial-Diophantine estimate `|omega . k|^{-1} <= C |k|^nu` off the
/// resonance module.
#[derive(Debug, Clone, PartialEq)]
pub struct DiophantineEstimate {
    pub c: f64,
    pub nu: f64,
    pub exact: bool,
    pub search_radius: i64,
}

/// Diophantine constants for the frequency vector.
///
/// In exact mode the bound is an exact consequence of clearing denominators:
/// with `Q` the lcm of the denominators, any nonresonant `k` satisfies
/// `|omega . k| >= 1/Q`, hence `(C, nu) = (Q, 0)`. In approximate mode an
/// empirical fit over the search box is returned and never labelled exact.
pub fn diophantine_constants(
    omega: &FrequencyVector,
    search_radius: i64,
) -> Result<DiophantineEstimate, FrequencyError> {
    match omega {
        FrequencyVector::Exact(_) => {
            let (_m, q) = omega.cleared()?;
            Ok(DiophantineEstimate {
                c: q.to_f64().expect("lcm fits in f64"),
                nu: 0.0,
                exact: true,
                search_radius,
            })
        }
        FrequencyVector::Approx(v) => {
            let mut min_abs = f64::INFINITY;
            let d = v.len();
            let mut k = vec![-search_radius; d];
            loop {
                if k.iter().any(|&kj| kj != 0) {
                    let dot: f64 = v.iter().zip(&k).map(|(w, &kj)| w * kj as f64).sum();
                    if dot.abs() > 1e-14 {
                        min_abs = min_abs.min(dot.abs());
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == d {
                        return Ok(DiophantineEstimate {
                            c: 1.0 / min_abs,
                            nu: 0.0,
                            exact: false,
                            search_radius,
                        });
                    }
                    if k[pos] < search_radius {
                        k[pos] += 1;
                        break;
                    }
                    k[pos] = -search_radius;
                    pos += 1;
                }
            }
        }
    }
}

/// Saturated basis of `{ k in Z^d : m . k = 0 }` for a nonzero integer row.
///
/// Staircase construction: with `g_i = gcd(m_1..m_i)` and Bezout weights
/// `u` solving `u . (m_1..m_{i-1}) = g_{i-1}`, the vector
/// `v_i = (m_i/g_i) * (u, 0, ..) - (g_{i-1}/g_i) * e_i` lies in the kernel,
/// and the collection `v_2..v_d` generates every integer solution.
fn integer_row_kernel(m: &[BigInt]) -> Vec<Vec<i64>> {
    let d = m.len();
    if d <= 1 {
        return Vec::new();
    }
    // running gcd g_{i} and Bezout weights for g_{i} over m_1..m_i
    let mut g = m[0].clone();
    let mut bezout: Vec<BigInt> = vec![BigInt::one()];
    let mut rows = Vec::with_capacity(d - 1);
    for i in 1..d {
        let ext = g.extended_gcd(&m[i]);
        let g_next = ext.gcd.clone();
        // v_i = (m_i / g_next) * (bezout, 0...) - (g / g_next) * e_i
        let scale = &m[i] / &g_next;
        let mut row: Vec<BigInt> = vec![BigInt::zero(); d];
        for (j, b) in bezout.iter().enumerate() {
            row[j] = b * &scale;
        }
        row[i] = -(&g / &g_next);
        rows.push(row);
        // update Bezout weights: g_next = x * g + y * m_i
        for b in bezout.iter_mut() {
            *b *= &ext.x;
        }
        bezout.push(ext.y.clone());
        g = g_next;
    }
    rows.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| x.to_i64().expect("kernel basis entry fits in i64"))
                .collect()
        })
        .collect()
}

/// Row-style Hermite reduction of a spanning set; returns a basis of the
/// generated lattice (nonzero echelon rows).
fn hermite_row_basis(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let d = rows[0].len();
    let mut work: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut basis: Vec<Vec<i128>> = Vec::new();
    let mut col = 0;
    while col < d && !work.is_empty() {
        // reduce all rows against each other in this column via gcd steps
        loop {
            work.retain(|r| r.iter().any(|&x| x != 0));
            let mut idx: Vec<usize> =
                (0..work.len()).filter(|&i| work[i][col] != 0).collect();
            if idx.len() <= 1 {
                break;
            }
            idx.sort_by_key(|&i| work[i][col].unsigned_abs());
            let (small, other) = (idx[0], idx[1]);
            let q = work[other][col] / work[small][col];
            for j in 0..d {
                let sub = q * work[small][j];
                work[other][j] -= sub;
            }
        }
        if let Some(pos) = (0..work.len()).find(|&i| work[i][col] != 0) {
            basis.push(work.remove(pos));
        }
        col += 1;
    }
    basis
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("basis entry fits in i64"))
                .collect()
        })
        .collect()
}

/// Greedy pairwise size reduction (keeps the lattice, shrinks the entries).
fn size_reduce(basis: &mut [Vec<i64>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    for _ in 0..4 {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let dot: i64 = basis[i].iter().zip(&basis[j]).map(|(&a, &b)| a * b).sum();
                let nj: i64 = basis[j].iter().map(|&b| b * b).sum();
                if nj == 0 {
                    continue;
                }
                let mu = (dot as f64 / nj as f64).round() as i64;
                if mu != 0 {
                    for c in 0..basis[i].len() {
                        basis[i][c] -= mu * basis[j][c];
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn normalize_signs(basis: &mut [Vec<i64>]) {
    for row in basis.iter_mut() {
        if let Some(&lead) = row.iter().find(|&&x| x != 0) {
            if lead < 0 {
                for x in row.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
}

/// Solves `x . basis = k` over the rationals and checks integrality.
fn in_integer_span(basis: &[Vec<i64>], k: &[i64]) -> bool {
    if basis.is_empty() {
        return k.iter().all(|&x| x == 0);
    }
    let d = k.len();
    let r = basis.len();
    // Gaussian elimination on the transposed system (d equations, r unknowns).
    let mut aug: Vec<Vec<Rat>> = (0..d)
        .map(|col| {
            let mut row: Vec<Rat> = basis
                .iter()
                .map(|b| Rat::from_integer(BigInt::from(b[col])))
                .collect();
            row.push(Rat::from_integer(BigInt::from(k[col])));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..r {
        if let Some(p) = (pivot_row..d).find(|&i| !aug[i][col].is_zero()) {
            aug.swap(pivot_row, p);
            let inv = aug[pivot_row][col].clone();
            for x in aug[pivot_row].iter_mut() {
                *x /= inv.clone();
            }
            for i in 0..d {
                if i != pivot_row && !aug[i][col].is_zero() {
                    let f = aug[i][col].clone();
                    for c in 0..=r {
                        let delta = &f * &aug[pivot_row][c];
                        aug[i][c] -= delta;
                    }
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
    }
    // consistency: rows without pivots must have zero rhs
    for i in pivot_row..d {
        if !aug[i][r].is_zero() {
            return false;
        }
    }
    // integrality of the solved coefficients
    for &(row, _col) in &pivots {
        if !aug[row][r].is_integer() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_resonances(omega: &FrequencyVector, radius: i64) -> Vec<Vec<i64>> {
        let d = omega.dim();
        let mut out = Vec::new();
        let mut k = vec![-radius; d];
        loop {
            if k.iter().any(|&kj| kj != 0) && omega.dot_int(&k).unwrap().is_zero() {
                out.push(k.clone());
            }
            let mut pos = 0;
            loop {
                if pos == d {
                    return out;
                }
                if k[pos] < radius {
                    k[pos] += 1;
                    break;
                }
                k[pos] = -radius;
                pos += 1;
            }
        }
    }

    #[test]
    fn module_of_equal_frequencies() {
        let omega = FrequencyVector::exact_from_pairs(&[(1, 1), (1, 1)]).unwrap();
        let module = resonance_module(&omega).unwrap();
        assert_eq!(module.rank(), 1);
        assert_eq!(module.d_omega(), 1);
        assert_eq!(module.basis(), &[vec![1, -1]]);
    }

    #[test]
    fn module_of_single_frequency_is_trivial() {
        let omega = FrequencyVector::exact_from_strs(&["1"]).unwrap();
        let module = resonance_module(&omega).unwrap();
        assert_eq!(module.rank(), 0);
        assert_eq!(module.d_omega(), 1);
        assert!(module.basis().is_empty());
    }

    #[test]
    fn module_of_2_3_6() {
        let omega = FrequencyVector::exact_from_pairs(&[(2, 1), (3, 1), (6, 1)]).unwrap();
        let module = resonance_module(&omega).unwrap();
        assert_eq!(module.rank(), 2);
        assert_eq!(module.d_omega(), 1);
        for row in module.basis() {
            assert!(omega.dot_int(row).unwrap().is_zero());
        }
        // brute-force cross-check: every enumerated resonance is in the span
        for k in brute_force_resonances(&omega, 6) {
            assert!(module.is_resonant(&k).unwrap(), "missing {k:?}");
        }
    }

    #[test]
    fn brute_force_agreement_on_random_small_rationals() {
        let cases = [
            vec![(1, 1), (2, 1)],
            vec![(1, 2), (1, 3)],
            vec![(3, 2), (3, 2)],
            vec![(5, 3), (10, 3)],
            vec![(1, 1), (1, 1), (2, 1)],
            vec![(2, 1), (3, 1), (5, 1)],
        ];
        for pairs in cases {
            let omega = FrequencyVector::exact_from_pairs(&pairs).unwrap();
            let module = resonance_module(&omega).unwrap();
            for row in module.basis() {
                assert!(omega.dot_int(row).unwrap().is_zero());
            }
            for k in brute_force_resonances(&omega, 5) {
                assert!(module.is_resonant(&k).unwrap(), "omega {pairs:?} missing {k:?}");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let omega11 = FrequencyVector::exact_from_pairs(&[(1, 1), (1, 1)]).unwrap();
        let m11 = resonance_module(&omega11).unwrap();
        assert!(m11.is_resonant(&[3, -3]).unwrap());
        assert!(!m11.is_resonant(&[1, 0]).unwrap());

        let omega12 = FrequencyVector::exact_from_pairs(&[(1, 1), (2, 1)]).unwrap();
        let m12 = resonance_module(&omega12).unwrap();
        assert!(m12.is_resonant(&[2, -1]).unwrap());
        assert!(!m12.is_resonant(&[1, -1]).unwrap());

        assert!(m12.is_resonant(&[1, 0, 0]).is_err());
    }

    #[test]
    fn approx_detection_matches_exact_mode() {
        let omega = FrequencyVector::approx(vec![1.0, 2.0]).unwrap();
        let module = detect_resonances_approx(&omega, 4, 1e-12).unwrap();
        assert!(module.is_approximate());
        assert_eq!(module.rank(), 1);
        assert!(module.is_resonant(&[2, -1]).unwrap());
        assert!(!module.is_resonant(&[1, 0]).unwrap());
    }

    #[test]
    fn approx_detection_one_pi() {
        let omega = FrequencyVector::approx(vec![1.0, std::f64::consts::PI]).unwrap();
        let module = detect_resonances_approx(&omega, 8, 1e-9).unwrap();
        assert_eq!(module.rank(), 0);
        assert_eq!(module.d_omega(), 2);
    }

    #[test]
    fn approx_detection_single_frequency() {
        let omega = FrequencyVector::approx(vec![1.0]).unwrap();
        let module = detect_resonances_approx(&omega, 5, 1e-9).unwrap();
        assert_eq!(module.rank(), 0);
    }

    #[test]
    fn coarse_tolerance_is_rejected() {
        let omega = FrequencyVector::approx(vec![1.0, 1.618033988749895]).unwrap();
        let err = detect_resonances_approx(&omega, 3, 10.0).unwrap_err();
        assert!(matches!(err, FrequencyError::ToleranceTooCoarse(_)));
    }

    #[test]
    fn diophantine_constants_examples() {
        let omega = FrequencyVector::exact_from_pairs(&[(1, 1), (1, 1)]).unwrap();
        let est = diophantine_constants(&omega, 20).unwrap();
        assert_eq!(est.c, 1.0);
        assert_eq!(est.nu, 0.0);
        assert!(est.exact);

        let omega = FrequencyVector::exact_from_strs(&["1/2", "1/3"]).unwrap();
        let est = diophantine_constants(&omega, 20).unwrap();
        assert_eq!(est.c, 6.0);

        let omega = FrequencyVector::exact_from_pairs(&[(1, 1), (2, 1), (3, 1)]).unwrap();
        let est = diophantine_constants(&omega, 20).unwrap();
        assert_eq!(est.c, 1.0);
    }

    #[test]
    fn exact_bound_verified_by_scan() {
        // min |omega . k| over nonresonant k in the box must be >= 1/C
        for pairs in [vec![(1i64, 2i64), (1, 3)], vec![(2, 1), (3, 1)], vec![(5, 6), (1, 1)]] {
            let omega = FrequencyVector::exact_from_pairs(&pairs).unwrap();
            let est = diophantine_constants(&omega, 8).unwrap();
            let module = resonance_module(&omega).unwrap();
            let d = omega.dim();
            let mut k = vec![-8i64; d];
            loop {
                if k.iter().any(|&kj| kj != 0) && !module.is_resonant(&k).unwrap() {
                    let dot = omega.dot_int(&k).unwrap();
                    let abs = rat_to_f64(&dot).abs();
                    assert!(abs >= 1.0 / est.c - 1e-12, "omega {pairs:?} k {k:?}");
                }
                let mut pos = 0;
                loop {
                    if pos == d {
                        return;
                    }
                    if k[pos] < 8 {
                        k[pos] += 1;
                        break;
                    }
                    k[pos] = -8;
                    pos += 1;
                }
            }
        }
    }

    #[test]
    fn parse_rejects_garbage_and_zero_denominator() {
        assert!(FrequencyVector::exact_from_strs(&["1/0"]).is_err());
        assert!(FrequencyVector::exact_from_strs(&["zz"]).is_err());
        assert!(FrequencyVector::exact_from_strs(&["-1"]).is_err());
        assert!(FrequencyVector::exact_from_pairs(&[]).is_err());
    }
}
