//! Exact solvers for the cohomological equation `{H, f} = g - <g>` on Wick
//! polynomials, and the generating functions of the averaging normal form.
//!
//! On a monomial with mode `k = beta - alpha` the bracket with `H` acts as
//! multiplication by `i omega . k`, so the equation is solved mode-by-mode
//! by exact rational division. The gauge freedom `f + lambda <f>` is fixed
//! by dropping the resonant part entirely.

use num::Zero;

use crate::exact::{rat_factorial, rat_from_f64, rat_int, rat_to_f64, CRat, Rat};
use crate::frequencies::{FrequencyVector, ResonanceModule};
use crate::symbols::{SymbolError, WickSymbol};

#[derive(Debug, thiserror::Error)]
pub enum CohomologyError {
    #[error("cohomological division needs exact-mode frequencies: small denominators cannot be certified from floats")]
    ApproximateFrequencies,
    #[error("periodic solution formula needs omega proportional to (1,..,1)")]
    NotPeriodic,
    #[error("inputs must be real-valued")]
    NotReal,
    #[error("bracket series order must be at least 2")]
    OrderTooSmall,
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Frequency(#[from] crate::frequencies::FrequencyError),
}

/// Solution of `{H, f} = g - <g>` with diagnostics.
#[derive(Debug, Clone)]
pub struct CohomologySolution {
    /// The gauge-fixed solution, `<f> = 0`.
    pub f: WickSymbol,
    /// `{H, f} + <g> - g`; identically zero in exact arithmetic.
    pub residual: WickSymbol,
    /// `min |omega . k|` over the nonresonant modes actually divided by.
    pub smallest_denominator: f64,
}

/// Solves `{H, f} = g - <g>` exactly: each nonresonant monomial is divided
/// by `i omega . (beta - alpha)`.
pub fn solve_cohomological(
    g: &WickSymbol,
    omega: &FrequencyVector,
    module: &ResonanceModule,
) -> Result<CohomologySolution, CohomologyError> {
    if !omega.is_exact() || module.is_approximate() {
        return Err(CohomologyError::ApproximateFrequencies);
    }
    let d = g.dim();
    let mut f = WickSymbol::zero(d);
    let mut smallest: Option<Rat> = None;
    for (alpha, beta, c) in g.terms() {
        let k: Vec<i64> = (0..d).map(|j| beta[j] as i64 - alpha[j] as i64).collect();
        if module.is_resonant(&k)? {
            continue;
        }
        let dot = omega.dot_int(&k)?;
        let abs = if dot < Rat::zero() { -dot.clone() } else { dot.clone() };
        smallest = Some(match smallest {
            Some(s) if s <= abs => s,
            _ => abs,
        });
        // divide by i * dot
        let divisor = CRat::new(Rat::zero(), dot);
        f = &f + &WickSymbol::monomial(d, alpha, beta, c / &divisor);
    }
    let h = WickSymbol::harmonic(omega);
    let avg = g.average(module)?;
    let residual = &(&h.poisson(&f) + &avg) - g;
    Ok(CohomologySolution {
        f,
        residual,
        smallest_denominator: smallest.map(|s| rat_to_f64(&s)).unwrap_or(f64::INFINITY),
    })
}

/// Explicit double-integral solution for periodic flows
/// (`omega = c (1,..,1)`): `f = -(1/T) \int_0^T \int_0^t g o phi_s ds dt`
/// with `T = 2 pi / c`, evaluated in closed form on monomials.
///
/// Nonresonant monomials reproduce the exact divided coefficients; the
/// formula also carries a resonant remainder `-(T/2) <g>` in the kernel of
/// `{H, .}`, which the gauge projection removes.
pub fn periodic_solution(
    g: &WickSymbol,
    omega: &FrequencyVector,
) -> Result<WickSymbol, CohomologyError> {
    let entries = omega
        .rat_entries()
        .map_err(|_| CohomologyError::ApproximateFrequencies)?;
    let c0 = entries[0].clone();
    if !entries.iter().all(|w| *w == c0) {
        return Err(CohomologyError::NotPeriodic);
    }
    let d = g.dim();
    // T = 2 pi / c, as an exact dyadic stand-in for the period
    let period = rat_from_f64(2.0 * std::f64::consts::PI) / &c0;
    let mut f = WickSymbol::zero(d);
    for (alpha, beta, coeff) in g.terms() {
        let k: Vec<i64> = (0..d).map(|j| beta[j] as i64 - alpha[j] as i64).collect();
        let mu = omega.dot_int(&k)?;
        if mu.is_zero() {
            // inner integral is t, double integral T^2/2, prefactor -1/T
            let scale = CRat::new(-&period / rat_int(2), Rat::zero());
            f = &f + &WickSymbol::monomial(d, alpha, beta, coeff * &scale);
        } else {
            // e^{i mu T} = 1 on the period, closed form collapses to 1/(i mu)
            let divisor = CRat::new(Rat::zero(), mu);
            f = &f + &WickSymbol::monomial(d, alpha, beta, coeff / &divisor);
        }
    }
    Ok(f)
}

/// Builds the generating functions of the first conjugation:
/// `{F1, H} + V = <V>` and `{F2, H} + A = <A>`, both real.
pub fn build_f12(
    a: &WickSymbol,
    v: &WickSymbol,
    omega: &FrequencyVector,
    module: &ResonanceModule,
) -> Result<(WickSymbol, WickSymbol), CohomologyError> {
    if !a.is_real() || !v.is_real() {
        return Err(CohomologyError::NotReal);
    }
    let f1 = solve_cohomological(v, omega, module)?.f;
    let f2 = solve_cohomological(a, omega, module)?.f;
    debug_assert!(f1.is_real() && f2.is_real());
    Ok((f1, f2))
}

/// Result of the truncated bracket series for the second generating
/// function.
#[derive(Debug, Clone)]
pub struct BracketSeries {
    pub symbol: WickSymbol,
    /// Coefficient-l1 size of the last retained term.
    pub tail_indicator: f64,
    /// True when every bracket iterate stayed in the resonant class, so the
    /// result equals its own average.
    pub fully_resonant: bool,
}

/// Double time integral of `<A>` along the `<V>`-flow, as a truncated
/// bracket series:
///
/// `F3 = sum_{j=0}^{J} t0^{j+2} / ((j+2)(j+1) j!)  ad_{<V>}^j(<A>)`,
///
/// with `ad_G(X) = {G, X}`. The iterates stay inside the Wick class, so the
/// later pairing `{<V>, F3}` carries no quadrature error.
pub fn build_f3(
    avg_a: &WickSymbol,
    avg_v: &WickSymbol,
    module: &ResonanceModule,
    t0: f64,
    order: u32,
) -> Result<BracketSeries, CohomologyError> {
    if order < 2 {
        return Err(CohomologyError::OrderTooSmall);
    }
    if !avg_a.is_real() || !avg_v.is_real() {
        return Err(CohomologyError::NotReal);
    }
    let t0_rat = rat_from_f64(t0);
    let mut iterate = avg_a.clone();
    let mut acc = WickSymbol::zero(avg_a.dim());
    let mut last_term = 0.0;
    for j in 0..=order {
        // t0^{j+2} / ((j+2)(j+1) j!)
        let mut scale = Rat::from_integer(1.into());
        for _ in 0..(j + 2) {
            scale *= &t0_rat;
        }
        scale /= rat_int((j + 2) as i64) * rat_int((j + 1) as i64) * rat_factorial(j);
        let term = iterate.scaled(&CRat::new(scale, Rat::zero()));
        last_term = term.coeff_l1();
        acc = &acc + &term;
        if j < order {
            iterate = avg_v.poisson(&iterate);
            if iterate.is_zero() {
                last_term = 0.0;
                break;
            }
        }
    }
    let fully_resonant = acc.average(module)? == acc;
    Ok(BracketSeries {
        symbol: acc,
        tail_indicator: last_term,
        fully_resonant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::crat_int;
    use crate::frequencies::resonance_module;

    fn omega(pairs: &[(i64, i64)]) -> FrequencyVector {
        FrequencyVector::exact_from_pairs(pairs).unwrap()
    }

    fn swap_pair(d: usize) -> WickSymbol {
        // V = zeta1 zetabar2 + zetabar1 zeta2 = 2 Re(zeta1 zetabar2)
        &(&WickSymbol::zeta(d, 0) * &WickSymbol::zeta_bar(d, 1))
            + &(&WickSymbol::zeta_bar(d, 0) * &WickSymbol::zeta(d, 1))
    }

    #[test]
    fn resonant_input_gives_zero_solution() {
        let w = omega(&[(1, 1), (1, 1)]);
        let m = resonance_module(&w).unwrap();
        let g = swap_pair(2); // resonant for omega = (1,1)
        let sol = solve_cohomological(&g, &w, &m).unwrap();
        assert!(sol.f.is_zero());
        assert!(sol.residual.is_zero());
        assert!(sol.smallest_denominator.is_infinite());
    }

    #[test]
    fn explicit_solution_for_nonresonant_swap() {
        // omega = (1,2): f = -i zeta1 zetabar2 + i zetabar1 zeta2
        let w = omega(&[(1, 1), (2, 1)]);
        let m = resonance_module(&w).unwrap();
        let g = swap_pair(2);
        let sol = solve_cohomological(&g, &w, &m).unwrap();
        let expect = &(&WickSymbol::zeta(2, 0) * &WickSymbol::zeta_bar(2, 1))
            .scaled(&crat_int(0, -1))
            + &(&WickSymbol::zeta_bar(2, 0) * &WickSymbol::zeta(2, 1)).scaled(&crat_int(0, 1));
        assert_eq!(sol.f, expect);
        assert!(sol.f.is_real());
        assert!(sol.residual.is_zero());
        assert_eq!(sol.smallest_denominator, 1.0);
        // direct identity: {H, f} = g (here <g> = 0)
        let h = WickSymbol::harmonic(&w);
        assert_eq!(h.poisson(&sol.f), g);
    }

    #[test]
    fn random_symbols_solve_exactly() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for pairs in [[(1i64, 1i64), (1, 1)], [(1, 1), (2, 1)], [(2, 1), (3, 1)]] {
            let w = omega(&pairs);
            let m = resonance_module(&w).unwrap();
            let h = WickSymbol::harmonic(&w);
            for _ in 0..30 {
                let mut g = WickSymbol::zero(2);
                for _ in 0..6 {
                    let a = [rng.gen_range(0..3u32), rng.gen_range(0..2u32)];
                    let b = [rng.gen_range(0..3u32), rng.gen_range(0..2u32)];
                    let c = crat_int(rng.gen_range(-4..5), rng.gen_range(-4..5));
                    g = &g + &WickSymbol::monomial(2, &a, &b, c);
                }
                let sol = solve_cohomological(&g, &w, &m).unwrap();
                assert!(sol.residual.is_zero(), "residual nonzero for {pairs:?}");
                // residual recomputed independently
                let avg = g.average(&m).unwrap();
                let lhs = &h.poisson(&sol.f) + &avg;
                assert_eq!(lhs, g);
                // gauge fixing: <f> = 0
                assert!(sol.f.average(&m).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn gauge_freedom_preserves_identity() {
        let w = omega(&[(1, 1), (2, 1)]);
        let m = resonance_module(&w).unwrap();
        let h = WickSymbol::harmonic(&w);
        let g = &swap_pair(2) + &WickSymbol::mode_action(2, 0);
        let sol = solve_cohomological(&g, &w, &m).unwrap();
        let avg_f = sol.f.average(&m).unwrap();
        for lambda in [-1i64, 1, 2] {
            let shifted = &sol.f + &avg_f.scaled(&crat_int(lambda, 0));
            let lhs = &h.poisson(&shifted) + &g.average(&m).unwrap();
            assert_eq!(lhs, g);
        }
    }

    #[test]
    fn smallest_denominator_respects_diophantine_bound() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let w = omega(&[(1, 2), (1, 3)]);
        let m = resonance_module(&w).unwrap();
        let est = crate::frequencies::diophantine_constants(&w, 10).unwrap();
        for _ in 0..20 {
            let mut g = WickSymbol::zero(2);
            for _ in 0..5 {
                let a = [rng.gen_range(0..3u32), rng.gen_range(0..3u32)];
                let b = [rng.gen_range(0..3u32), rng.gen_range(0..3u32)];
                g = &g + &WickSymbol::monomial(2, &a, &b, crat_int(rng.gen_range(-3..4), 0));
            }
            let sol = solve_cohomological(&g, &w, &m).unwrap();
            if sol.smallest_denominator.is_finite() {
                assert!(sol.smallest_denominator >= 1.0 / est.c - 1e-12);
            }
        }
    }

    #[test]
    fn approximate_mode_is_rejected() {
        let w = FrequencyVector::approx(vec![1.0, 2.0]).unwrap();
        let m = crate::frequencies::detect_resonances_approx(&w, 4, 1e-12).unwrap();
        let g = swap_pair(2);
        assert!(matches!(
            solve_cohomological(&g, &w, &m),
            Err(CohomologyError::ApproximateFrequencies)
        ));
    }

    #[test]
    fn periodic_matches_divided_solution_after_gauge_projection() {
        let w = omega(&[(1, 1), (1, 1)]);
        let m = resonance_module(&w).unwrap();
        // g = (zeta1 zetabar2)(zetabar1 zeta1) plus conjugate
        let raw = &(&WickSymbol::zeta(2, 0) * &WickSymbol::zeta_bar(2, 1))
            * &WickSymbol::mode_action(2, 0);
        let g = &raw + &raw.conj();
        let direct = solve_cohomological(&g, &w, &m).unwrap().f;
        let periodic = periodic_solution(&g, &w).unwrap();
        let projected = periodic.nonresonant_part(&m).unwrap();
        assert_eq!(projected, direct);
        // and the periodic formula solves the equation before projection too
        let h = WickSymbol::harmonic(&w);
        let lhs = &h.poisson(&periodic) + &g.average(&m).unwrap();
        assert_eq!(lhs, g);
    }

    #[test]
    fn periodic_one_mode_squares() {
        // d=1, omega=(1), g = zeta^2 + zetabar^2
        let w = omega(&[(1, 1)]);
        let m = resonance_module(&w).unwrap();
        let g = &(&WickSymbol::zeta(1, 0) * &WickSymbol::zeta(1, 0))
            + &(&WickSymbol::zeta_bar(1, 0) * &WickSymbol::zeta_bar(1, 0));
        let direct = solve_cohomological(&g, &w, &m).unwrap().f;
        let periodic = periodic_solution(&g, &w).unwrap();
        assert_eq!(periodic.nonresonant_part(&m).unwrap(), direct);
    }

    #[test]
    fn periodic_invariant_input_projects_to_zero() {
        let w = omega(&[(1, 1), (1, 1)]);
        let m = resonance_module(&w).unwrap();
        let g = WickSymbol::mode_action(2, 0);
        let f = periodic_solution(&g, &w).unwrap();
        assert!(f.nonresonant_part(&m).unwrap().is_zero());
    }

    #[test]
    fn periodic_rejects_nonperiodic_frequencies() {
        let w = omega(&[(1, 1), (2, 1)]);
        let g = swap_pair(2);
        assert!(matches!(
            periodic_solution(&g, &w),
            Err(CohomologyError::NotPeriodic)
        ));
    }

    #[test]
    fn f12_satisfy_their_equations() {
        let w = omega(&[(1, 1), (2, 1)]);
        let m = resonance_module(&w).unwrap();
        let v = swap_pair(2);
        let a = WickSymbol::mode_action(2, 0);
        let (f1, f2) = build_f12(&a, &v, &w, &m).unwrap();
        // A = H1 is resonant, so F2 = 0
        assert!(f2.is_zero());
        assert!(f1.is_real());
        let h = WickSymbol::harmonic(&w);
        // {F1, H} + V = <V> (= 0 here)
        let lhs = &f1.poisson(&h) + &v;
        assert_eq!(lhs, v.average(&m).unwrap());
    }

    #[test]
    fn f12_rejects_complex_inputs() {
        let w = omega(&[(1, 1), (2, 1)]);
        let m = resonance_module(&w).unwrap();
        let bad = WickSymbol::zeta(2, 0);
        assert!(matches!(
            build_f12(&bad, &swap_pair(2), &w, &m),
            Err(CohomologyError::NotReal)
        ));
    }

    #[test]
    fn f3_with_commuting_inputs_is_quadratic_in_t0() {
        // {<V>, <A>} = 0 leaves only j = 0: F3 = (t0^2/2) <A>
        let w = omega(&[(1, 1), (1, 1)]);
        let m = resonance_module(&w).unwrap();
        let a = WickSymbol::mode_action(2, 0);
        let v = WickSymbol::harmonic(&w); // the flow of H fixes every action
        let t0 = 0.3;
        let series = build_f3(&a, &v, &m, t0, 6).unwrap();
        let expect = a.scaled(&CRat::new(
            rat_from_f64(t0) * rat_from_f64(t0) / rat_int(2),
            Rat::zero(),
        ));
        assert_eq!(series.symbol, expect);
        assert_eq!(series.tail_indicator, 0.0);
        assert!(series.fully_resonant);
    }

    #[test]
    fn f3_truncation_orders_agree() {
        // AL2 data: successive truncation orders agree to high relative accuracy
        let w = omega(&[(1, 1), (1, 1)]);
        let m = resonance_module(&w).unwrap();
        let a = WickSymbol::mode_action(2, 0);
        let v = swap_pair(2);
        let f6 = build_f3(&a, &v, &m, 0.3, 6).unwrap();
        let f8 = build_f3(&a, &v, &m, 0.3, 8).unwrap();
        let diff = (&f6.symbol - &f8.symbol).coeff_l1();
        assert!(diff <= 1e-6 * f8.symbol.coeff_l1());
        assert!(f8.symbol.is_real());
        assert!(f8.fully_resonant);
        // positivity of {<V>, F3} on the zero torus of <A>
        let bracket = v.poisson(&f8.symbol);
        for i in 0..16 {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / 16.0;
            let z = crate::symbols::PhasePoint::from_actions_angles(&[0.0, 1.0], &[0.0, theta]);
            let val = bracket.eval(&z).unwrap();
            assert!(val.im.abs() < 1e-14);
            assert!(val.re > 0.0, "bracket not positive at angle {theta}: {val}");
        }
    }

    #[test]
    fn f3_real_for_real_inputs_and_order_gate() {
        let w = omega(&[(1, 1), (1, 1)]);
        let m = resonance_module(&w).unwrap();
        let a = WickSymbol::mode_action(2, 0);
        let v = swap_pair(2);
        assert!(matches!(
            build_f3(&a, &v, &m, 0.3, 1),
            Err(CohomologyError::OrderTooSmall)
        ));
        let s = build_f3(&a, &v, &m, 0.25, 5).unwrap();
        assert!(s.symbol.is_real());
        let _ = w;
    }

    #[test]
    fn zeta_squared_check_value() {
        // independent numeric check of the divided solution: for g = zeta^2
        // (d=1, omega=(1)), {H, f} = g pointwise
        let w = omega(&[(1, 1)]);
        let m = resonance_module(&w).unwrap();
        let g = &WickSymbol::zeta(1, 0) * &WickSymbol::zeta(1, 0);
        let sol = solve_cohomological(&g, &w, &m).unwrap();
        let h = WickSymbol::harmonic(&w);
        let z = crate::symbols::PhasePoint::new(vec![0.7, -0.4]);
        let lhs = h.poisson(&sol.f).eval(&z).unwrap();
        let rhs = g.eval(&z).unwrap();
        assert!((lhs - rhs).norm() < 1e-14);
        assert_eq!(sol.smallest_denominator, 2.0);
    }
}
