use super::{Coefficient, ExpansionError};
use crate::scalar::Real;

/// Cooccurrence coefficient from document counts.
///
/// `c_i`, `c_j` are the documents containing each term and `c_ij` those
/// containing both; requires `c_i, c_j >= 1` and `c_ij <= min(c_i, c_j)`.
pub fn cc_coefficient<T: Real>(kind: Coefficient, c_i: u64, c_j: u64, c_ij: u64) -> Result<T, ExpansionError> {
    if c_i == 0 || c_j == 0 || c_ij > c_i.min(c_j) {
        return Err(ExpansionError::InvalidCounts { c_i, c_j, c_ij });
    }
    let (ci, cj, cij) = (T::of_count(c_i), T::of_count(c_j), T::of_count(c_ij));
    Ok(match kind {
        Coefficient::Tanimoto => cij / (ci + cj - cij),
        Coefficient::Dice => (cij + cij) / (ci + cj),
        Coefficient::Cosine => cij / (ci * cj).sqrt(),
    })
}

/// KLD contribution `p_r · log2(p_r / p_c)` of a term whose probability is
/// `p_r` in the feedback documents and `p_c` in the collection.
pub fn kld_score<T: Real>(p_r: T, p_c: T) -> T {
    debug_assert!(p_r > T::zero() && p_c > T::zero());
    p_r * (p_r / p_c).log2()
}

/// Bo1 (Bose-Einstein) informativeness of a term occurring `tf_x` times in the
/// feedback documents and `f` times in a collection of `n_docs` documents:
/// `tf_x · log2((1 + P_n) / P_n) + log2(1 + P_n)` with `P_n = f / n_docs`.
pub fn bo1_score<T: Real>(tf_x: u64, f: u64, n_docs: u64) -> T {
    debug_assert!(f >= 1 && n_docs >= 1);
    let p_n = T::of_count(f) / T::of_count(n_docs);
    let one = T::one();
    T::of_count(tf_x) * ((one + p_n) / p_n).log2() + (one + p_n).log2()
}
