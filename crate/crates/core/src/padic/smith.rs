//! Smith normal form over `Z/p^a` by valuation-pivoting elimination.
//!
//! The pivot at each step is an entry of minimal valuation in the remaining
//! submatrix, ties broken by smallest `(row, col)` lexicographically, so the
//! transform is deterministic. Because the pivot valuation is minimal, every
//! clearing step divides exactly and the diagonal valuations come out
//! nondecreasing.

use super::{PadicCtx, PadicMatrix};

/// `u * a * v` is diagonal with entries `p^{v_k}` for the recorded
/// valuations (`v_k = a` standing for "zero at precision").
#[derive(Clone, Debug)]
pub struct SmithForm {
    ctx: PadicCtx,
    rows: usize,
    cols: usize,
    valuations: Vec<u32>,
    u: PadicMatrix,
    v: PadicMatrix,
}

impl SmithForm {
    pub fn ctx(&self) -> PadicCtx {
        self.ctx
    }

    /// Nondecreasing valuations of the diagonal, length `min(rows, cols)`.
    pub fn diagonal_valuations(&self) -> &[u32] {
        &self.valuations
    }

    pub fn left_transform(&self) -> &PadicMatrix {
        &self.u
    }

    pub fn right_transform(&self) -> &PadicMatrix {
        &self.v
    }

    /// Number of diagonal valuations strictly below the precision. A lower
    /// bound for the true `Z_p`-rank of any exact lift of the input.
    pub fn rank_at_precision(&self) -> usize {
        let a = self.ctx.precision();
        self.valuations.iter().filter(|&&v| v < a).count()
    }

    /// The diagonal matrix `diag(p^{v_k})` in the shape of the input.
    pub fn diagonal_matrix(&self) -> PadicMatrix {
        let mut d = PadicMatrix::zero(self.ctx, self.rows, self.cols);
        for (k, &v) in self.valuations.iter().enumerate() {
            if v < self.ctx.precision() {
                d.set(k, k, self.ctx.p().pow(v));
            }
        }
        d
    }

    /// Whether `original * x = rhs` is solvable mod `p^a`.
    pub fn solves(&self, rhs: &[u64]) -> bool {
        assert_eq!(rhs.len(), self.rows, "rhs length differs from row count");
        let a = self.ctx.precision();
        // c' = U * rhs; diagonal row k needs val(c'_k) >= v_k, rows past the
        // diagonal need c'_k = 0 at precision.
        for r in 0..self.rows {
            let mut acc = 0u128;
            let m = self.ctx.modulus() as u128;
            for c in 0..self.rows {
                acc = (acc + self.u.get(r, c) as u128 * rhs[c] as u128) % m;
            }
            let val = self.ctx.valuation_of(acc as u64);
            let need = if r < self.valuations.len() {
                self.valuations[r]
            } else {
                a
            };
            if val < need {
                return false;
            }
        }
        true
    }

    /// A basis of the kernel at precision: only the structural kernel, i.e.
    /// directions whose diagonal entry vanishes at precision (or which lie
    /// past the diagonal). This is the reduction of the exact kernel of any
    /// exact lift whose non-vanishing valuations agree with the computed
    /// ones; the spurious mod-`p^a` solutions `p^{a-v} e_k` are excluded.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let a = self.ctx.precision();
        let mut basis = Vec::new();
        for k in 0..self.cols {
            let free = if k < self.valuations.len() {
                self.valuations[k] >= a
            } else {
                true
            };
            if free {
                basis.push(self.v.column(k));
            }
        }
        basis
    }
}

/// Smith normal form of `a` with recorded transforms.
pub fn smith_normal_form(m: &PadicMatrix) -> SmithForm {
    let ctx = m.ctx();
    let a = ctx.precision();
    let (rows, cols) = (m.rows(), m.cols());
    let steps = rows.min(cols);

    let mut b = m.clone();
    let mut u = PadicMatrix::identity(ctx, rows);
    let mut v = PadicMatrix::identity(ctx, cols);
    let mut valuations = vec![a; steps];

    for k in 0..steps {
        // minimal-valuation pivot in b[k.., k..], first in row-major order
        let mut best: Option<(u32, usize, usize)> = None;
        for r in k..rows {
            for c in k..cols {
                let val = ctx.valuation_of(b.get(r, c));
                if val < best.map_or(a, |(bv, _, _)| bv) {
                    best = Some((val, r, c));
                    if val == 0 {
                        break;
                    }
                }
            }
            if best.map_or(false, |(bv, _, _)| bv == 0) {
                break;
            }
        }
        let Some((pv, pr, pc)) = best else { break };

        b.swap_rows(k, pr);
        u.swap_rows(k, pr);
        b.swap_cols(k, pc);
        v.swap_cols(k, pc);

        // normalize the pivot to exactly p^pv
        let unit = ctx.scalar(b.get(k, k)).shift_down(pv);
        let unit_inv = unit.inverse().expect("pivot unit part is a unit").residue();
        b.scale_row(k, unit_inv);
        u.scale_row(k, unit_inv);

        // clear below: entry = c * p^{v_e} with v_e >= pv, so the multiplier
        // entry / p^pv makes the difference vanish exactly mod p^a
        for r in k + 1..rows {
            let e = b.get(r, k);
            if e != 0 {
                let f = ctx.scalar(e).shift_down(pv).residue();
                b.row_sub_multiple(r, k, f);
                u.row_sub_multiple(r, k, f);
            }
        }
        // clear to the right; column k is (p^pv, 0, ..) so rows stay cleared
        for c in k + 1..cols {
            let e = b.get(k, c);
            if e != 0 {
                let f = ctx.scalar(e).shift_down(pv).residue();
                b.col_sub_multiple(c, k, f);
                v.col_sub_multiple(c, k, f);
            }
        }
        valuations[k] = pv;
    }

    SmithForm {
        ctx,
        rows,
        cols,
        valuations,
        u,
        v,
    }
}

/// Count of Smith valuations strictly below the precision.
pub fn rank_at_precision(m: &PadicMatrix) -> usize {
    smith_normal_form(m).rank_at_precision()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicCtx;

    fn ctx(p: u64, a: u32) -> PadicCtx {
        PadicCtx::new(p, a).unwrap()
    }

    #[test]
    fn identity_has_zero_valuations() {
        let c = ctx(3, 4);
        let s = smith_normal_form(&PadicMatrix::identity(c, 3));
        assert_eq!(s.diagonal_valuations(), &[0, 0, 0]);
    }

    #[test]
    fn diag_p_one_sorts_valuations() {
        let c = ctx(3, 4);
        let m = PadicMatrix::from_rows(c, 2, 2, &[3, 0, 0, 1]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal_valuations(), &[0, 1]);
    }

    #[test]
    fn unit_determinant_two_by_two() {
        // det [[1,2],[3,4]] = -2, a unit mod 5
        let c = ctx(5, 4);
        let m = PadicMatrix::from_rows(c, 2, 2, &[1, 2, 3, 4]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal_valuations(), &[0, 0]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let c = ctx(2, 3);
        let m = PadicMatrix::zero(c, 2, 3);
        assert_eq!(rank_at_precision(&m), 0);
    }

    #[test]
    fn scalar_p_at_precision_one_vanishes() {
        let c = ctx(2, 1);
        let m = PadicMatrix::from_rows(c, 2, 2, &[2, 0, 0, 2]).unwrap();
        assert_eq!(rank_at_precision(&m), 0);
    }

    #[test]
    fn rank_one_for_all_ones() {
        let c = ctx(5, 3);
        let m = PadicMatrix::from_rows(c, 2, 2, &[1, 1, 1, 1]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.rank_at_precision(), 1);
        assert_eq!(s.diagonal_valuations(), &[0, 3]);
    }

    #[test]
    fn transforms_reproduce_the_diagonal() {
        let c = ctx(3, 5);
        let m = PadicMatrix::from_rows(c, 3, 2, &[3, 6, 2, 9, 27, 1]).unwrap();
        let s = smith_normal_form(&m);
        let prod = s.left_transform().mul(&m).mul(s.right_transform());
        assert_eq!(prod, s.diagonal_matrix());
        assert!(s.left_transform().is_unit_mod_p());
        assert!(s.right_transform().is_unit_mod_p());
    }

    #[test]
    fn solvability_of_diagonal_system() {
        let c = ctx(3, 4);
        // x * 3 = 6 solvable; x * 3 = 1 not
        let m = PadicMatrix::from_rows(c, 1, 1, &[3]).unwrap();
        let s = smith_normal_form(&m);
        assert!(s.solves(&[6]));
        assert!(!s.solves(&[1]));
    }

    #[test]
    fn kernel_is_structural_only() {
        let c = ctx(3, 4);
        // [[1, -1], [3, 0]] has trivial exact kernel despite the mod-3^4
        // solution 27 * (1, 1)-ish directions
        let m = PadicMatrix::from_rows_i64(c, 2, 2, &[1, -1, 3, 0]).unwrap();
        let s = smith_normal_form(&m);
        assert!(s.kernel_basis().is_empty());

        // a genuinely dependent column shows up
        let m2 = PadicMatrix::from_rows_i64(c, 2, 3, &[1, 2, 3, 0, 1, 1]).unwrap();
        let s2 = smith_normal_form(&m2);
        assert_eq!(s2.kernel_basis().len(), 1);
    }
}
