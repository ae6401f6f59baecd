use crate::exactlin::{Field, Matrix};
use crate::quiver::Quiver;

use super::hom::{hom_space, is_isomorphic_indecomposable, Morphism};
use super::rep::{RepError, Representation};

/// An indecomposable summand with its multiplicity.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: Representation<F>,
    pub multiplicity: usize,
}

fn trace_gram<F: Field>(q: &Quiver, m: &Representation<F>) -> Result<(Vec<Morphism<F>>, Matrix<F>), RepError> {
    let p = F::characteristic();
    if p != 0 && p as usize <= m.total_dim() {
        return Err(RepError::DecompositionInconclusive);
    }
    let end = hom_space(q, m, m);
    let r = end.dim();
    let tr = |f: &Morphism<F>, g: &Morphism<F>| {
        f.iter().zip(g).fold(F::zero(), |acc, (a, b)| acc + a.mul(b).trace())
    };
    let gram = Matrix::from_fn(r, r, |i, j| tr(&end.basis[i], &end.basis[j]));
    Ok((end.basis, gram))
}

/// Codimension of the trace-form radical of `End M`, which is the radical
/// itself in characteristic zero or above `dim M`.
pub fn endomorphism_radical_codim<F: Field>(q: &Quiver, m: &Representation<F>) -> Result<usize, RepError> {
    Ok(trace_gram(q, m)?.1.rank())
}

/// A basis of the trace-form radical of `End M`: the nilpotent
/// endomorphisms when `M` is indecomposable.
pub fn endomorphism_radical<F: Field>(q: &Quiver, m: &Representation<F>) -> Result<Vec<Morphism<F>>, RepError> {
    let (basis, gram) = trace_gram(q, m)?;
    let (ker, _) = gram.nullspace();
    Ok(ker
        .iter()
        .map(|c| {
            let mut f: Morphism<F> = basis[0].iter().map(|x| Matrix::zeros(x.rows(), x.cols())).collect();
            for (c, g) in c.iter().zip(&basis) {
                for (fv, gv) in f.iter_mut().zip(g) {
                    *fv = fv.add(&gv.scale(c));
                }
            }
            f
        })
        .collect())
}

fn is_local_shortcut<F: Field>(q: &Quiver, m: &Representation<F>) -> bool {
    m.top_dims(q).iter().sum::<usize>() == 1 || m.socle_dims(q).iter().sum::<usize>() == 1
}

/// Splits `M = im g + ker g` for `g = (f - lambda)^n` when that is nontrivial.
fn fitting_split<F: Field>(q: &Quiver, m: &Representation<F>, f: &Morphism<F>) -> Option<(Representation<F>, Representation<F>)> {
    let n = m.num_vertices();
    let mut lambdas = vec![F::zero()];
    for v in 0..n {
        if m.dims()[v] == 0 {
            continue;
        }
        for r in F::roots(&f[v].charpoly()) {
            if !lambdas.contains(&r) {
                lambdas.push(r);
            }
        }
    }
    for lambda in lambdas {
        let g: Vec<Matrix<F>> = (0..n)
            .map(|v| {
                let d = m.dims()[v];
                f[v].sub(&Matrix::identity(d).scale(&lambda)).pow(d as u64)
            })
            .collect();
        let zero = g.iter().all(Matrix::is_zero);
        let inv = g.iter().all(|x| x.rows() == 0 || x.is_invertible());
        if zero || inv {
            continue;
        }
        let im: Vec<Matrix<F>> = g
            .iter()
            .map(|x| {
                let (r, piv) = x.transpose().rref();
                let rows: Vec<Vec<F>> = (0..piv.len()).map(|i| r.row(i).to_vec()).collect();
                Matrix::from_columns(x.rows(), &rows)
            })
            .collect();
        let ker: Vec<Matrix<F>> = g
            .iter()
            .map(|x| {
                let (k, _) = x.nullspace();
                Matrix::from_columns(x.cols(), &k)
            })
            .collect();
        return Some((m.submodule(q, &im), m.submodule(q, &ker)));
    }
    None
}

fn split_once<F: Field>(q: &Quiver, m: &Representation<F>) -> Result<Option<(Representation<F>, Representation<F>)>, RepError> {
    if m.total_dim() <= 1 || is_local_shortcut(q, m) {
        return Ok(None);
    }
    if endomorphism_radical_codim(q, m)? == 1 {
        return Ok(None);
    }
    let end = hom_space(q, m, m);
    let r = end.dim();
    for i in 0..r {
        if let Some(s) = fitting_split(q, m, &end.basis[i]) {
            return Ok(Some(s));
        }
    }
    let one = F::one();
    for i in 0..r {
        for j in i + 1..r {
            let mut c = vec![F::zero(); r];
            c[i] = one.clone();
            c[j] = one.clone();
            if let Some(s) = fitting_split(q, m, &end.combination(&c)) {
                return Ok(Some(s));
            }
        }
    }
    Err(RepError::DecompositionInconclusive)
}

/// Decomposes a module into indecomposables, grouped up to isomorphism.
pub fn decompose<F: Field>(q: &Quiver, m: &Representation<F>) -> Result<Vec<Summand<F>>, RepError> {
    let mut stack = vec![m.clone()];
    let mut out: Vec<Summand<F>> = Vec::new();
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match split_once(q, &x)? {
            Some((a, b)) => {
                stack.push(b);
                stack.push(a);
            }
            None => {
                match out.iter_mut().find(|s| is_isomorphic_indecomposable(q, &s.module, &x)) {
                    Some(s) => s.multiplicity += 1,
                    None => out.push(Summand { module: x, multiplicity: 1 }),
                }
            }
        }
    }
    Ok(out)
}
