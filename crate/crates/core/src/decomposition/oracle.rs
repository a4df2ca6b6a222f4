use crate::bigraded::GridModule;
use crate::error::{Error, Result};
use crate::exactlinalg::Matrix;

use super::hom::{HomSystem, Presented};
use super::morphism::{image_submodule, kernel_submodule};

pub const DEFAULT_ENDOMORPHISM_THRESHOLD: usize = 16;

/// Splits `m` into indecomposable summands by exhaustive idempotent search.
///
/// At each step every element of `End(m)` (all `p^dim` of them) is tested for
/// `e² = e`; the first nontrivial idempotent splits `m = im(e) ⊕ ker(e)` and
/// both halves are split recursively. Summands are unique up to isomorphism
/// and order (Krull–Schmidt for finite-dimensional grid representations).
pub fn decompose_oracle(m: &GridModule, threshold: usize) -> Result<Vec<GridModule>> {
    let mut out = Vec::new();
    split(m, threshold, &mut out)?;
    Ok(out)
}

fn split(m: &GridModule, threshold: usize, out: &mut Vec<GridModule>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let f = m.field();
    let presented = Presented::new(m);
    let system = HomSystem::new(&presented, m);
    let basis = system.solution_basis();
    if basis.len() > threshold {
        return Err(Error::ThresholdExceeded {
            dim: basis.len(),
            threshold,
        });
    }

    // Idempotence only needs checking on generators: e(e(g)) = e(g).
    let gens = &presented.gens;
    let at_gens: Vec<Vec<(Vec<u32>, Matrix)>> = basis
        .iter()
        .map(|sol| {
            gens.iter()
                .enumerate()
                .map(|(g, (d, _))| (system.generator_image(sol, g).to_vec(), system.component(sol, *d)))
                .collect()
        })
        .collect();

    let p = f.order();
    let total = p.checked_pow(basis.len() as u32).unwrap_or(u64::MAX);
    let mut coeffs = vec![0u32; basis.len()];
    for code in 1..total {
        let mut c = code;
        for k in (0..coeffs.len()).rev() {
            coeffs[k] = (c % p) as u32;
            c /= p;
        }
        let mut trivial_zero = true;
        let mut trivial_identity = true;
        let mut idempotent = true;
        for (g, (_, u)) in gens.iter().enumerate() {
            let (mut image, mut comp) = (vec![0u32; u.len()], Matrix::zeros(f, u.len(), u.len()));
            for (k, &ck) in coeffs.iter().enumerate() {
                if ck == 0 {
                    continue;
                }
                let (img, mat) = &at_gens[k][g];
                for (a, &b) in image.iter_mut().zip(img) {
                    *a = f.add(*a, f.mul(ck, b));
                }
                comp.add_scaled_assign(ck, mat);
            }
            trivial_zero &= image.iter().all(|&x| x == 0);
            trivial_identity &= &image == u;
            if comp.mul_vec(&image) != image {
                idempotent = false;
                break;
            }
        }
        if !idempotent || trivial_zero || trivial_identity {
            continue;
        }
        let e = system.materialize(&combine(f, &basis, &coeffs));
        if !e.is_idempotent() || !e.is_natural(m, m) {
            return Err(Error::Invariant("generator-level idempotent is not idempotent".into()));
        }
        let (image, _) = image_submodule(m, &e)?;
        let (kernel, _) = kernel_submodule(m, &e)?;
        split(&image, threshold, out)?;
        split(&kernel, threshold, out)?;
        return Ok(());
    }
    out.push(m.clone());
    Ok(())
}

fn combine(f: crate::PrimeField, basis: &[Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
    let n = basis.first().map_or(0, Vec::len);
    let mut v = vec![0; n];
    for (sol, &c) in basis.iter().zip(coeffs) {
        for (a, &b) in v.iter_mut().zip(sol) {
            *a = f.add(*a, f.mul(c, b));
        }
    }
    v
}

/// Dimension of `End(m)`.
pub fn endomorphism_dimension(m: &GridModule) -> usize {
    let presented = Presented::new(m);
    HomSystem::new(&presented, m).solution_basis().len()
}
