use crate::algebra::{AlgebraError, BoundAlgebra, Coords};
use crate::exactlin::{Field, Matrix};

use super::rep::Representation;

/// A projective cover `P = sum P_{x_i} -> M` given by generators
/// `g_i in M_{x_i}` spanning a complement of the radical.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<F: Field> {
    pub tops: Vec<usize>,
    pub generators: Vec<Vec<F>>,
    pub cover: Representation<F>,
    /// `maps[w]` sends `P_w` to `M_w`.
    pub maps: Vec<Matrix<F>>,
}

/// Basis indices of `P_x` at `w`, in the order used by `Representation::projective`.
fn paths_from_to<F: Field>(a: &BoundAlgebra<F>, x: usize, w: usize) -> Vec<usize> {
    a.basis_between(x, w)
}

pub fn projective_cover<F: Field>(a: &BoundAlgebra<F>, m: &Representation<F>) -> ProjectiveCover<F> {
    let q = a.quiver();
    let n = q.num_vertices();
    let mut tops = Vec::new();
    let mut generators = Vec::new();
    for v in 0..n {
        // unit vectors off the echelon pivots complement the radical
        let rad = m.radical_at(q, v);
        for i in 0..m.dims()[v] {
            if !rad.pivots().contains(&i) {
                let mut e = vec![F::zero(); m.dims()[v]];
                e[i] = F::one();
                tops.push(v);
                generators.push(e);
            }
        }
    }
    let projectives: Vec<Representation<F>> = (0..n).map(|x| Representation::projective(a, x)).collect();
    let parts: Vec<&Representation<F>> = tops.iter().map(|&x| &projectives[x]).collect();
    let cover = Representation::direct_sum_all(q, &parts);
    // images of g_i along every basis path, each extending its prefix by one arrow
    let basis = a.basis();
    let prefix: Vec<Option<usize>> = basis
        .iter()
        .map(|p| (!p.is_trivial()).then(|| a.basis_index(&p.slice(q, 0, p.len() - 1)).expect("prefix of a basis path")))
        .collect();
    let mut cols: Vec<Vec<Vec<F>>> = vec![Vec::new(); n];
    for (i, &x) in tops.iter().enumerate() {
        let mut image: Vec<Option<Vec<F>>> = vec![None; basis.len()];
        for k in a.basis_from(x) {
            let g = match prefix[k] {
                None => generators[i].clone(),
                Some(j) => {
                    let b = *basis[k].arrows().last().unwrap();
                    m.map(b).mul_vec(image[j].as_ref().expect("prefix comes first"))
                }
            };
            image[k] = Some(g);
        }
        for w in 0..n {
            for k in paths_from_to(a, x, w) {
                cols[w].push(image[k].take().unwrap());
            }
        }
    }
    let maps = cols.iter().enumerate().map(|(w, c)| Matrix::from_columns(m.dims()[w], c)).collect();
    ProjectiveCover { tops, generators, cover, maps }
}

/// The first syzygy, with its embedding into the projective cover.
#[derive(Clone, Debug)]
pub struct Syzygy<F: Field> {
    pub cover: ProjectiveCover<F>,
    pub kernel: Representation<F>,
    /// `inclusion[w]`: columns are the kernel basis inside `cover_w`.
    pub inclusion: Vec<Matrix<F>>,
}

pub fn syzygy<F: Field>(a: &BoundAlgebra<F>, m: &Representation<F>) -> Syzygy<F> {
    let q = a.quiver();
    let cover = projective_cover(a, m);
    let (inclusion, free): (Vec<Matrix<F>>, Vec<Vec<usize>>) = cover
        .maps
        .iter()
        .enumerate()
        .map(|(w, f)| {
            let cols = cover.cover.dims()[w];
            let f = if f.rows() == 0 { Matrix::zeros(0, cols) } else { f.clone() };
            let (ker, free) = f.nullspace();
            (Matrix::from_columns(cols, &ker), free)
        })
        .unzip();
    let kernel = cover.cover.kernel_submodule(q, &inclusion, &free);
    Syzygy { cover, kernel, inclusion }
}

pub fn omega<F: Field>(a: &BoundAlgebra<F>, m: &Representation<F>) -> Representation<F> {
    syzygy(a, m).kernel
}

/// Minimal projective presentation `sum_j P_{y_j} -> sum_i P_{x_i} -> M`,
/// where the map sends `e_{y_j}` to `sum_i u[i][j]` with `u[i][j]` in `e_{x_i} A e_{y_j}`.
#[derive(Clone, Debug)]
pub struct Presentation<F> {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub u: Vec<Vec<Coords<F>>>,
}

pub fn presentation<F: Field>(a: &BoundAlgebra<F>, m: &Representation<F>) -> Presentation<F> {
    let s = syzygy(a, m);
    let p0 = s.cover.tops.clone();
    let c1 = projective_cover(a, &s.kernel);
    let mut u = vec![Vec::with_capacity(c1.tops.len()); p0.len()];
    for (j, &y) in c1.tops.iter().enumerate() {
        let g = s.inclusion[y].mul_vec(&c1.generators[j]);
        let mut pos = 0;
        for (i, &x) in p0.iter().enumerate() {
            let paths = paths_from_to(a, x, y);
            let mut coords = Vec::new();
            for (k, &p) in paths.iter().enumerate() {
                if !g[pos + k].is_zero() {
                    coords.push((p, g[pos + k].clone()));
                }
            }
            pos += paths.len();
            u[i].push(coords);
        }
    }
    Presentation { p0, p1: c1.tops, u }
}

/// `tau M = ker(nu f)` for a minimal presentation `f: P1 -> P0`, where
/// `nu P_x = I_x`. Zero exactly when `M` is projective.
pub fn tau<F: Field>(a: &BoundAlgebra<F>, m: &Representation<F>) -> Representation<F> {
    let q = a.quiver();
    let pres = presentation(a, m);
    if pres.p1.is_empty() {
        return Representation::zero(q);
    }
    let n = q.num_vertices();
    let injectives: Vec<Representation<F>> = (0..n).map(|x| Representation::injective(a, x)).collect();
    let parts: Vec<&Representation<F>> = pres.p1.iter().map(|&y| &injectives[y]).collect();
    let source = Representation::direct_sum_all(q, &parts);
    let (inclusion, free): (Vec<Matrix<F>>, Vec<Vec<usize>>) = (0..n)
        .map(|t| {
            let mut blocks_rows: Vec<Vec<F>> = Vec::new();
            let col_paths: Vec<Vec<usize>> = pres.p1.iter().map(|&y| a.basis_between(t, y)).collect();
            let total_cols: usize = col_paths.iter().map(Vec::len).sum();
            for (i, &x) in pres.p0.iter().enumerate() {
                for qp in a.basis_between(t, x) {
                    let mut row = vec![F::zero(); total_cols];
                    let mut off = 0;
                    for (j, cols) in col_paths.iter().enumerate() {
                        let prod = a.mul_coords(&vec![(qp, F::one())], &pres.u[i][j]);
                        for (k, c) in prod {
                            let idx = cols.iter().position(|&z| z == k).expect("path t -> y");
                            row[off + idx] = c;
                        }
                        off += cols.len();
                    }
                    blocks_rows.push(row);
                }
            }
            let f = Matrix::from_rows(total_cols, blocks_rows);
            let (ker, free) = f.nullspace();
            (Matrix::from_columns(total_cols, &ker), free)
        })
        .unzip();
    source.kernel_submodule(q, &inclusion, &free)
}

/// `tau^{-1} M = D tau_{A^op} D M`; `op` must be the opposite algebra.
pub fn tau_inverse<F: Field>(op: &BoundAlgebra<F>, m: &Representation<F>) -> Representation<F> {
    tau(op, &m.dual()).dual()
}

pub fn is_projective<F: Field>(a: &BoundAlgebra<F>, m: &Representation<F>) -> bool {
    omega(a, m).is_zero()
}

/// `dim Ext^2(I_x, P_y)` for all `x, y`, indexed `[x][y]`, from a minimal
/// projective resolution of each injective. Needs `pd I_x <= 2`.
pub fn ext2_dc_c<F: Field>(a: &BoundAlgebra<F>) -> Result<Vec<Vec<usize>>, AlgebraError> {
    let n = a.quiver().num_vertices();
    let mut table = vec![vec![0; n]; n];
    for x in 0..n {
        let i = Representation::injective(a, x);
        let o1 = omega(a, &i);
        let pres = presentation(a, &o1);
        let o3 = omega(a, &omega(a, &o1));
        if !o3.is_zero() {
            return Err(AlgebraError::GlobalDimensionExceeded(2));
        }
        // d: sum_k P_{z_k} -> sum_j P_{y_j}, e_{z_k} -> sum_j v[j][k]
        let (p1, p2, v) = (&pres.p0, &pres.p1, &pres.u);
        for y in 0..n {
            let target_paths: Vec<Vec<usize>> = p2.iter().map(|&z| a.basis_between(y, z)).collect();
            let cols: usize = target_paths.iter().map(Vec::len).sum();
            let mut images = Vec::new();
            for (j, &yj) in p1.iter().enumerate() {
                for phi in a.basis_between(y, yj) {
                    let mut img = vec![F::zero(); cols];
                    let mut off = 0;
                    for (k, tp) in target_paths.iter().enumerate() {
                        for (idx, c) in a.mul_coords(&vec![(phi, F::one())], &v[j][k]) {
                            let pos = tp.iter().position(|&z| z == idx).expect("path y -> z");
                            img[off + pos] = c;
                        }
                        off += tp.len();
                    }
                    images.push(img);
                }
            }
            let rank = Matrix::from_rows(cols, images).rank();
            table[x][y] = cols - rank;
        }
    }
    Ok(table)
}
