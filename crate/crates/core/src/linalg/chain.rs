use super::abelian::{cokernel, FgAbelianGroup};
use super::snf::rank;
use super::IntMatrix;
use crate::{Error, Result};

/// Homology `ker(boundary_out) / im(boundary_in)` at the middle term of
/// `C_{k+1} --in--> C_k --out--> C_{k-1}`, with matrices in the row-vector
/// convention (`in` is `|C_{k+1}| x |C_k|`).
///
/// Because `C_k / ker(out)` embeds in the free group `C_{k-1}`, the torsion
/// of the homology is the torsion of `coker(in)`; the free rank is
/// `rank ker(out) - rank im(in)`.
pub fn chain_homology(boundary_in: &IntMatrix, boundary_out: &IntMatrix) -> Result<FgAbelianGroup> {
    if boundary_in.cols() != boundary_out.rows() {
        return Err(Error::ShapeMismatch(format!(
            "boundary_in has {} columns, boundary_out has {} rows",
            boundary_in.cols(),
            boundary_out.rows()
        )));
    }
    if !(boundary_in * boundary_out).is_zero() {
        return Err(Error::NonComposable);
    }
    let coker = cokernel(boundary_in);
    let ker_rank = boundary_out.rows() - rank(boundary_out);
    let im_rank = rank(boundary_in);
    let mut orders = coker.generator_orders();
    orders.retain(|d| *d != 0.into());
    orders.extend(std::iter::repeat_n(0.into(), ker_rank - im_rank));
    Ok(FgAbelianGroup::from_cyclic_factors(&orders))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_boundaries() {
        let z = IntMatrix::zeros(0, 1);
        let out = IntMatrix::zeros(1, 0);
        assert_eq!(chain_homology(&z, &out).unwrap(), FgAbelianGroup::free(1));
    }

    #[test]
    fn multiplication_by_n() {
        for n in 2..7u64 {
            let inn = IntMatrix::from_rows(1, &[[n as i64]]);
            let out = IntMatrix::zeros(1, 1);
            assert_eq!(chain_homology(&inn, &out).unwrap(), FgAbelianGroup::cyclic(n));
        }
    }

    #[test]
    fn non_composable_rejected() {
        let inn = IntMatrix::from_rows(1, &[[1]]);
        let out = IntMatrix::from_rows(1, &[[1]]);
        assert_eq!(chain_homology(&inn, &out), Err(Error::NonComposable));
    }

    #[test]
    fn torsion_matches_dual_complex() {
        // Z --(2, 4)--> Z^2 --(2, -1)^T--> Z; composite 2*2 - 4 = 0, H_1 = Z/2.
        let inn = IntMatrix::from_rows(2, &[[2, 4]]);
        let out = IntMatrix::from_rows(1, &[[2], [-1]]);
        let h = chain_homology(&inn, &out).unwrap();
        assert_eq!(h, FgAbelianGroup::cyclic(2));
        // dual cochain complex one degree up: H^2 = coker(in^T)
        let hd = chain_homology(&inn.transpose(), &IntMatrix::zeros(1, 0)).unwrap();
        assert_eq!(h.torsion(), hd.torsion());
    }

    proptest::proptest! {
        #[test]
        fn dual_complex_torsion(b in proptest::collection::vec(-3i64..4, 8), mix in proptest::collection::vec(-3i64..4, 16)) {
            // C_2 = Z^4 --a--> C_1 = Z^4 --b--> C_0 = Z^2 with rows of a in ker(b)
            let bm = IntMatrix::from_rows(2, &[&b[0..2], &b[2..4], &b[4..6], &b[6..8]]);
            let k = crate::linalg::kernel_lattice(&bm);
            let coeff = IntMatrix::from_rows(k.rows(), &(0..4).map(|i| (0..k.rows()).map(|j| mix[i * 4 + j]).collect::<Vec<_>>()).collect::<Vec<_>>());
            let a = &coeff * &k;
            let h = chain_homology(&a, &bm).unwrap();
            let hd = chain_homology(&a.transpose(), &IntMatrix::zeros(4, 0)).unwrap();
            proptest::prop_assert_eq!(h.torsion(), hd.torsion());
        }
    }
}
