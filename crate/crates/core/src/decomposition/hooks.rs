use std::collections::BTreeSet;

use serde::Serialize;

use crate::bigraded::{right, up, Bigrade, GridBox, GridModule, Hook, Presentation};
use crate::error::{Error, Result};
use crate::exactlinalg::Matrix;
use crate::generators::hook_sum;
use crate::resolution::syzygies;

use super::hom::{HomSystem, Presented};
use super::morphism::{cyclic_submodule, kernel_submodule, GridMorphism};

/// A hook decomposition: the summands and an isomorphism from their direct
/// sum onto the module, on the classification box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HookCertificate {
    pub hooks: Vec<Hook>,
    #[serde(skip)]
    pub grid: GridBox,
    /// Natural map from `to_grid(⊕ hooks)` into the module; at each degree
    /// the columns are the hooks alive there, in `hooks` order.
    #[serde(skip)]
    pub embedding: GridMorphism,
}

impl HookCertificate {
    /// The diagonal presentation: one generator per hook, one monomial
    /// relation `x^(q−p)` per bounded hook.
    pub fn diagonal_presentation(&self, field: crate::PrimeField) -> Presentation {
        hook_sum(field, &self.hooks)
    }

    /// Checks the embedding is natural and bijective against `target`.
    pub fn verify_against(&self, target: &GridModule) -> bool {
        if target.grid() != self.grid || self.embedding.grid() != self.grid {
            return false;
        }
        let Ok(src) = GridModule::from_presentation(&hook_sum(target.field(), &self.hooks), self.grid) else {
            return false;
        };
        self.embedding.is_natural(&src, target) && self.embedding.is_isomorphism()
    }
}

/// The hook `(p, q)` if `m` is isomorphic on its grid to that hook module:
/// pointwise dimension ≤ 1, support `{p ≤ α, α ≱ q}` (a support reaching the
/// grid's far corner region unbroken reads as `q = (∞,∞)`), and nonzero maps
/// between adjacent support points.
pub fn hook_profile(m: &GridModule) -> Option<Hook> {
    let g = m.grid();
    if g.points().any(|d| m.dim(d) > 1) {
        return None;
    }
    let p = g.points().find(|&d| m.dim(d) == 1)?;
    if g.points().any(|d| m.dim(d) == 1 && !d.geq(p)) {
        return None;
    }
    let holes: Vec<Bigrade> = g.points().filter(|&d| d.geq(p) && m.dim(d) == 0).collect();
    let q = match holes.iter().copied().reduce(Bigrade::meet) {
        None => Bigrade::INFINITY,
        Some(q) => {
            let shape_ok = g
                .points()
                .filter(|d| d.geq(p))
                .all(|d| (m.dim(d) == 0) == d.geq(q));
            if !shape_ok {
                return None;
            }
            q
        }
    };
    let maps_ok = g.points().filter(|&d| m.dim(d) == 1).all(|d| {
        let h_ok = d.x == g.nx || m.dim(right(d)) == 0 || m.hmap(d).get(0, 0) != 0;
        let v_ok = d.y == g.ny || m.dim(up(d)) == 0 || m.vmap(d).get(0, 0) != 0;
        h_ok && v_ok
    });
    if !maps_ok {
        return None;
    }
    Hook::new(p, q).ok()
}

/// Decides hook-decomposability of `pres`, returning a verified certificate.
///
/// Candidate hook multisets come from matching each minimal relation degree
/// to a distinct generator degree strictly below it (leftover generators
/// become free hooks), filtered by the Hilbert function. Each candidate is
/// realized by peeling: at the least birth `p`, a vector `v ∈ M_p` outside
/// the incoming image whose cyclic submodule is a candidate hook and admits a
/// retraction `M → ⟨v⟩` is split off, and the search continues on the kernel
/// of the retraction.
pub fn hook_decompose(pres: &Presentation) -> Result<Option<HookCertificate>> {
    let minimal = pres.minimize();
    if !syzygies(&minimal)?.degrees.is_empty() {
        return Ok(None);
    }
    let module = GridModule::for_classification(pres)?;
    let f = module.field();
    let grid = module.grid();

    for candidate in hook_pairings(minimal.gens(), minimal.rels()) {
        if !hilbert_matches(&candidate, &module) {
            continue;
        }
        let embed: Vec<Matrix> = grid.points().map(|d| Matrix::identity(f, module.dim(d))).collect();
        if let Some(mut split) = peel(&module, embed, candidate)? {
            split.sort_by_key(|a| a.0);
            let hooks: Vec<Hook> = split.iter().map(|(h, _)| *h).collect();
            let embedding = GridMorphism::from_fn(grid, |d| {
                let cols: Vec<Vec<u32>> = split
                    .iter()
                    .filter_map(|(_, images)| {
                        let v = &images[grid.index(d)];
                        (!v.is_empty()).then(|| v.clone())
                    })
                    .collect();
                Matrix::from_columns(f, module.dim(d), &cols)
            });
            let cert = HookCertificate { hooks, grid, embedding };
            if !cert.verify_against(&module) {
                return Err(Error::Invariant("assembled hook certificate does not verify".into()));
            }
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Distinct hook multisets pairing every relation degree with a distinct
/// generator degree strictly below it, in lexicographic order.
pub fn hook_pairings(gens: &[Bigrade], rels: &[Bigrade]) -> Vec<Vec<Hook>> {
    fn go(
        j: usize,
        gens: &[Bigrade],
        rels: &[Bigrade],
        used: &mut [bool],
        bounded: &mut Vec<Hook>,
        out: &mut BTreeSet<Vec<Hook>>,
    ) {
        if j == rels.len() {
            let mut hooks = bounded.clone();
            hooks.extend((0..gens.len()).filter(|&i| !used[i]).map(|i| Hook::free(gens[i])));
            hooks.sort();
            out.insert(hooks);
            return;
        }
        for i in 0..gens.len() {
            if used[i] || !gens[i].precedes(rels[j]) {
                continue;
            }
            // Equal unused generators give the same multisets.
            if (0..i).any(|k| !used[k] && gens[k] == gens[i]) {
                continue;
            }
            used[i] = true;
            bounded.push(Hook::new(gens[i], rels[j]).expect("p < q gives a valid hook"));
            go(j + 1, gens, rels, used, bounded, out);
            bounded.pop();
            used[i] = false;
        }
    }

    let mut out = BTreeSet::new();
    if gens.len() >= rels.len() {
        let mut used = vec![false; gens.len()];
        go(0, gens, rels, &mut used, &mut Vec::new(), &mut out);
    }
    out.into_iter().collect()
}

fn hilbert_matches(hooks: &[Hook], m: &GridModule) -> bool {
    m.grid()
        .points()
        .all(|d| hooks.iter().filter(|h| h.contains(d)).count() == m.dim(d))
}

/// Nonzero vectors of `F_p^n` whose first nonzero coordinate is 1, grouped
/// by the position of that coordinate.
fn projective_vectors(field: crate::PrimeField, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = field.modulus() as u64;
    (0..n).flat_map(move |lead| {
        let count = p.pow((n - lead - 1) as u32);
        (0..count).map(move |mut code| {
            let mut v = vec![0; n];
            v[lead] = 1;
            for k in (lead + 1..n).rev() {
                v[k] = (code % p) as u32;
                code /= p;
            }
            v
        })
    })
}

type Split = Vec<(Hook, Vec<Vec<u32>>)>;

/// Splits hooks from `remaining` off `module`, whose points embed into the
/// original module through `embed`. Returns each hook with its image vector
/// in the original module at every grid point (empty outside the support).
fn peel(module: &GridModule, embed: Vec<Matrix>, mut remaining: Vec<Hook>) -> Result<Option<Split>> {
    if remaining.is_empty() {
        return Ok(module.is_zero().then(Vec::new));
    }
    let f = module.field();
    let grid = module.grid();
    let p = remaining.iter().map(Hook::birth).min().unwrap();
    let deaths: BTreeSet<Bigrade> = remaining
        .iter()
        .filter(|h| h.birth() == p)
        .map(Hook::death)
        .collect();

    let n = module.dim(p);
    let incoming = module.incoming_image(p);
    let incoming_rank = incoming.rank();
    let transports = module.transports_from(p);
    let presented = Presented::new(module);

    for v in projective_vectors(f, n) {
        let with_v = incoming.hstack(&Matrix::from_columns(f, n, std::slice::from_ref(&v)));
        if with_v.rank() == incoming_rank {
            continue;
        }
        // Support test on the transported vector before building anything.
        let images: Vec<Option<Vec<u32>>> = grid
            .points()
            .map(|d| {
                transports[grid.index(d)]
                    .as_ref()
                    .map(|t| t.mul_vec(&v))
                    .filter(|w| w.iter().any(|&c| c != 0))
            })
            .collect();
        let hook_here = |d: Bigrade| images[grid.index(d)].is_some();
        let holes: Vec<Bigrade> = grid.points().filter(|&d| d.geq(p) && !hook_here(d)).collect();
        let q = holes.iter().copied().reduce(Bigrade::meet).unwrap_or(Bigrade::INFINITY);
        if !deaths.contains(&q) {
            continue;
        }
        let (cyclic, _) = cyclic_submodule(module, p, &v)?;
        let Some(hook) = hook_profile(&cyclic) else {
            continue;
        };
        if hook.death() != q {
            continue;
        }

        let Some(retraction) = find_retraction(&presented, &cyclic, p, &v) else {
            continue;
        };
        let (complement, inclusion) = kernel_submodule(module, &retraction)?;
        if complement.total_dim() + cyclic.total_dim() != module.total_dim() {
            return Err(Error::Invariant("retraction does not split the module".into()));
        }

        let columns: Vec<Vec<u32>> = grid
            .points()
            .map(|d| match &images[grid.index(d)] {
                Some(w) => embed[grid.index(d)].mul_vec(w),
                None => Vec::new(),
            })
            .collect();
        let next_embed: Vec<Matrix> = grid
            .points()
            .map(|d| embed[grid.index(d)].mul(inclusion.component(d)))
            .collect();
        let pos = remaining.iter().position(|h| *h == hook).unwrap();
        remaining.remove(pos);

        // Krull–Schmidt: once a hook summand splits off, the complement is
        // determined up to isomorphism, so the outcome below is final for
        // this candidate multiset.
        return Ok(peel(&complement, next_embed, remaining)?.map(|mut rest| {
            rest.push((hook, columns));
            rest
        }));
    }
    Ok(None)
}

/// A natural `r: M → ⟨v⟩` with `r_p(v) = v`, if one exists.
fn find_retraction(
    presented: &Presented<'_>,
    cyclic: &GridModule,
    p: Bigrade,
    v: &[u32],
) -> Option<GridMorphism> {
    let system = HomSystem::new(presented, cyclic);
    let constraints = system.constraints();
    let normalization = system.evaluation_rows(p, v);
    let a = constraints.vstack(&normalization);
    let mut rhs = vec![0; a.rows()];
    // ⟨v⟩_p is spanned by v itself, so the target vector is the unit 1.
    rhs[constraints.rows()] = 1;
    let sol = a.solve(&rhs)?;
    Some(system.materialize(&sol))
}
