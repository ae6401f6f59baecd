use crate::exactlin::Field;
use crate::repmod::{omega, Representation};

use super::bound::BoundAlgebra;

/// `dim Ext^2(S_x, S_y)`: the multiplicity of `P_y` in the second term of a
/// minimal projective resolution of `S_x`.
pub fn ext2_simples_dim<F: Field>(a: &BoundAlgebra<F>, x: usize, y: usize) -> usize {
    let s = Representation::simple(a, x);
    let o2 = omega(a, &omega(a, &s));
    o2.top_dims(a.quiver())[y]
}

/// Projective dimensions of the simples, with a verdict for `gldim <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalDimensionReport {
    pub bound: usize,
    pub holds: bool,
    /// `Some(pd S_x)` when it is at most `bound`, `None` when it exceeds it.
    pub projective_dims: Vec<Option<usize>>,
}

/// Decides `gldim <= n` by computing syzygies of every simple up to `n + 1`.
pub fn global_dimension_le<F: Field>(a: &BoundAlgebra<F>, n: usize) -> GlobalDimensionReport {
    let mut pds = Vec::new();
    for x in 0..a.quiver().num_vertices() {
        let mut m = Representation::simple(a, x);
        let mut pd = None;
        for k in 0..=n {
            let next = omega(a, &m);
            if next.is_zero() {
                pd = Some(k);
                break;
            }
            m = next;
        }
        pds.push(pd);
    }
    GlobalDimensionReport { bound: n, holds: pds.iter().all(Option::is_some), projective_dims: pds }
}
