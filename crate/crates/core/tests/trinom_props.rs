//! Trinomial-coefficient sweeps: evaluation identities of the expansion,
//! the palindrome for c = 1, the forced zero at the middle index for
//! non-residue c, and a reduced-range run of the convention calibration.

use dpsym_core::arith::{legendre, odd_primes_in, LegendreSymbol, Prime};
use dpsym_core::detcore::dp_symbol;
use dpsym_core::trinom::{calibrate, lemma11_predict, trinomial_expand, u_cap, Convention};

#[test]
fn coefficient_sums_evaluate_the_trinomial() {
    // sum of coefficients = (1 + b + c)^n, alternating sum = (1 - b + c)^n
    for &pv in &[5u64, 13, 101, 997] {
        let p = Prime::new(pv).unwrap();
        for b in -6..=6i64 {
            for c in -6..=6i64 {
                for n in [0u64, 1, 2, 7, 23] {
                    let v = trinomial_expand(b, c, n, p);
                    let mut at_one = p.residue(0);
                    let mut at_minus_one = p.residue(0);
                    for (k, &f) in v.coeffs().iter().enumerate() {
                        let term = p.residue(f as i64);
                        at_one = at_one + term;
                        at_minus_one = if k % 2 == 0 {
                            at_minus_one + term
                        } else {
                            at_minus_one - term
                        };
                    }
                    assert_eq!(
                        at_one,
                        p.residue(1 + b + c).pow(n),
                        "b={b} c={c} n={n} p={pv}"
                    );
                    assert_eq!(
                        at_minus_one,
                        p.residue(1 - b + c).pow(n),
                        "b={b} c={c} n={n} p={pv}"
                    );
                }
            }
        }
    }
}

#[test]
fn c_one_expansion_is_palindromic() {
    for &pv in &[7u64, 101] {
        let p = Prime::new(pv).unwrap();
        for b in -6..=6i64 {
            for n in [1u64, 2, 9, 30] {
                let v = trinomial_expand(b, 1, n, p);
                for k in 0..=2 * n {
                    assert_eq!(v.coeff(k), v.coeff(2 * n - k), "b={b} n={n} k={k}");
                }
            }
        }
    }
}

#[test]
fn nonresidue_c_forces_middle_zero_and_zero_symbol() {
    // (c | p) = -1 makes the two U terms cancel at k = (p-1)/2, so the
    // prediction is 0 there; the determinant agrees.
    for p in odd_primes_in(7, 31) {
        let pv = p.value();
        for b in 0..pv as i64 {
            for c in 1..pv as i64 {
                if legendre(c, p) != LegendreSymbol::MinusOne {
                    continue;
                }
                if legendre(b * b - 4 * c, p) == LegendreSymbol::Zero {
                    continue;
                }
                assert_eq!(u_cap(b, c, p, p.half()), 0, "p={pv} b={b} c={c}");
                let predicted = lemma11_predict(b, c, p).symbol().unwrap();
                assert_eq!(predicted, LegendreSymbol::Zero, "p={pv} b={b} c={c}");
                assert_eq!(
                    dp_symbol(b, c, p),
                    LegendreSymbol::Zero,
                    "p={pv} b={b} c={c}"
                );
            }
        }
    }
}

#[test]
fn reduced_calibration_singles_out_the_adopted_convention() {
    let report = calibrate(23);
    assert_eq!(report.clean_conventions(), vec![Convention::adopted()]);
    // the rejected readings fail already on this reduced grid, with the
    // (5, 1, 1) cell among the ascending failures
    let ascending = report.outcome(Convention::Ascending);
    assert!(ascending
        .mismatches
        .iter()
        .any(|m| (m.p, m.b, m.c) == (5, 1, 1)));
    for convention in [Convention::Descending, Convention::AscendingMinus] {
        assert!(!report.outcome(convention).mismatches.is_empty());
    }
}
