//! The ground-truth oracle: the (p-1) x (p-1) matrix with entries
//! (i^2 + b*i*j + c*j^2)^(p-2) mod p, and its determinant by exact Gaussian
//! elimination over F_p. Every predictor in the workspace is judged against
//! the Legendre symbol of this determinant.

use crate::arith::{
    legendre_of, mul_mod, pow_mod, reduce_int, sub_mod, LegendreSymbol, Prime, Residue,
};

/// A dense square matrix of canonical residues, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    dim: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    /// Builds from row-major entries, reducing each into [0, p).
    pub fn new(p: Prime, dim: usize, entries: Vec<u64>) -> FpMatrix {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        let pv = p.value();
        FpMatrix {
            p,
            dim,
            entries: entries.into_iter().map(|e| e % pv).collect(),
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    /// Determinant mod p by Gaussian elimination with partial pivoting.
    /// The pivot is always the first nonzero entry in the column (lowest row
    /// index) and row swaps are tracked for the sign, so the elimination
    /// path is deterministic. Returns 0 exactly when the matrix is singular
    /// over F_p.
    pub fn det(&self) -> u64 {
        let p = self.p.value();
        let n = self.dim;
        let mut w = self.entries.clone();
        let mut swaps = 0u64;
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| w[r * n + col] != 0) {
                Some(r) => r,
                None => return 0,
            };
            if pivot_row != col {
                for j in col..n {
                    w.swap(pivot_row * n + j, col * n + j);
                }
                swaps += 1;
            }
            let pivot = w[col * n + col];
            let pivot_inv = pow_mod(pivot, p - 2, p);
            for r in (col + 1)..n {
                let factor = mul_mod(w[r * n + col], pivot_inv, p);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let t = mul_mod(factor, w[col * n + j], p);
                    w[r * n + j] = sub_mod(w[r * n + j], t, p);
                }
            }
        }
        let mut det = 1u64;
        for i in 0..n {
            det = mul_mod(det, w[i * n + i], p);
        }
        if swaps % 2 == 1 {
            det = sub_mod(0, det, p);
        }
        det
    }
}

/// The (p-1) x (p-1) matrix with entry (i, j), for i, j in {1, ..., p-1},
/// equal to (i^2 + b*i*j + c*j^2)^(p-2) mod p. The power form makes the
/// entry 0 exactly when p divides the base, and the inverse of the base
/// otherwise.
pub fn build_matrix(b: i64, c: i64, p: Prime) -> FpMatrix {
    let pv = p.value();
    let br = reduce_int(b, pv);
    let cr = reduce_int(c, pv);
    let dim = (pv - 1) as usize;
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 1..pv {
        let i_sq = mul_mod(i, i, pv);
        for j in 1..pv {
            let base =
                (i_sq + mul_mod(br, mul_mod(i, j, pv), pv) + mul_mod(cr, mul_mod(j, j, pv), pv))
                    % pv;
            entries.push(pow_mod(base, pv - 2, pv));
        }
    }
    FpMatrix { p, dim, entries }
}

/// Residue of the determinant itself.
pub fn dp_det(b: i64, c: i64, p: Prime) -> Residue {
    Residue::new(build_matrix(b, c, p).det(), p)
}

/// The Legendre symbol of the determinant: the quantity all predictors aim
/// to reproduce.
pub fn dp_symbol(b: i64, c: i64, p: Prime) -> LegendreSymbol {
    legendre_of(dp_det(b, c, p))
}
