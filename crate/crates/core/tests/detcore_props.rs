//! Determinant-oracle sweeps: elimination against a cofactor-expansion
//! oracle, residue dependence, and reduced-range runs of the mirror and
//! scaling identities (the full ranges run in the acceptance suite).

mod common;

use common::SplitMix64;
use dpsym_core::arith::{legendre, mul_mod, odd_primes_in, sub_mod, LegendreSymbol};
use dpsym_core::detcore::{build_matrix, dp_det, dp_symbol, FpMatrix};

/// Cofactor expansion along the first row; exponential, test-only.
fn det_by_cofactors(p: u64, dim: usize, entries: &[u64]) -> u64 {
    if dim == 0 {
        return 1;
    }
    if dim == 1 {
        return entries[0];
    }
    let mut acc = 0u64;
    for j in 0..dim {
        let a = entries[j];
        if a == 0 {
            continue;
        }
        let mut minor = Vec::with_capacity((dim - 1) * (dim - 1));
        for r in 1..dim {
            for c in 0..dim {
                if c != j {
                    minor.push(entries[r * dim + c]);
                }
            }
        }
        let term = mul_mod(a, det_by_cofactors(p, dim - 1, &minor), p);
        acc = if j % 2 == 0 {
            (acc + term) % p
        } else {
            sub_mod(acc, term, p)
        };
    }
    acc
}

#[test]
fn elimination_matches_cofactor_expansion() {
    let mut rng = SplitMix64::new(0xD_E7);
    let primes = odd_primes_in(3, 100);
    for _ in 0..200 {
        let p = *rng.pick(&primes);
        let pv = p.value();
        let dim = 4 + (rng.below(2) as usize); // 4x4 or 5x5
        let entries: Vec<u64> = (0..dim * dim).map(|_| rng.below(pv)).collect();
        let m = FpMatrix::new(p, dim, entries.clone());
        assert_eq!(
            m.det(),
            det_by_cofactors(pv, dim, &entries),
            "p={pv} dim={dim} entries={entries:?}"
        );
    }
}

#[test]
fn symbol_depends_only_on_residues() {
    let mut rng = SplitMix64::new(0xCAFE);
    for p in odd_primes_in(3, 30) {
        let pv = p.value() as i64;
        for _ in 0..10 {
            let b = rng.int_in(0, pv - 1);
            let c = rng.int_in(0, pv - 1);
            let shift_b = rng.int_in(-3, 3) * pv;
            let shift_c = rng.int_in(-3, 3) * pv;
            assert_eq!(
                dp_symbol(b, c, p),
                dp_symbol(b + shift_b, c + shift_c, p),
                "p={p} b={b} c={c}"
            );
        }
    }
}

#[test]
fn mirror_identity_small_grid() {
    // det(-b, c) = (-1 | p) * det(b, c), checked at the residue level
    for p in odd_primes_in(3, 23) {
        let pv = p.value();
        let sign = legendre(-1, p);
        for b in 0..pv as i64 {
            for c in 0..pv as i64 {
                let lhs = dp_det(-b, c, p);
                let rhs = dp_det(b, c, p);
                let mirrored = match sign {
                    LegendreSymbol::One => rhs,
                    _ => -rhs,
                };
                assert_eq!(lhs, mirrored, "p={pv} b={b} c={c}");
            }
        }
    }
}

#[test]
fn scaling_identity_small_grid() {
    // symbol(b, c^2) = (c | p)^((p-1)/2) * symbol(b * c^-1, 1)
    for p in odd_primes_in(3, 23) {
        let pv = p.value();
        for b in 0..pv as i64 {
            for c in 1..pv as i64 {
                let c_res = p.residue(c);
                let c_sq = (c_res * c_res).value() as i64;
                let b_scaled = (p.residue(b) * c_res.inv().unwrap()).value() as i64;
                let expected = legendre(c, p).pow(p.half() % 2) * dp_symbol(b_scaled, 1, p);
                assert_eq!(dp_symbol(b, c_sq, p), expected, "p={pv} b={b} c={c}");
            }
        }
    }
}

#[test]
fn quadratic_residue_anchor_small() {
    // p = 2 (mod 3): the (1, 1) symbol equals (-2 | p)
    for p in odd_primes_in(3, 60) {
        if p.value() % 3 != 2 {
            continue;
        }
        assert_eq!(dp_symbol(1, 1, p), legendre(-2, p), "p={p}");
    }
}

#[test]
fn build_matrix_shape() {
    for p in odd_primes_in(3, 30) {
        let m = build_matrix(2, 3, p);
        assert_eq!(m.dim() as u64, p.value() - 1);
        assert_eq!(m.prime(), p);
    }
}
