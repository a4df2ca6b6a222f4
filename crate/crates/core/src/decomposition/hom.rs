//! Hom spaces between grid modules.
//!
//! A natural map out of `M` is determined by the images of a generating set
//! of `M`, and those images are free subject only to the relations among the
//! generators. So instead of solving the naturality system with one unknown
//! per matrix entry at every grid point, the unknowns are the images of the
//! minimal generators and the equations are the minimal relations.

use std::collections::HashMap;

use crate::bigraded::{down, left, Bigrade, GridModule};
use crate::exactlinalg::{Matrix, PrimeField};

use super::morphism::GridMorphism;

/// Generators and relations of a grid module, plus a right inverse of the
/// generator-evaluation map at every point.
pub(crate) struct Presented<'a> {
    pub module: &'a GridModule,
    pub gens: Vec<(Bigrade, Vec<u32>)>,
    /// Minimal relations: degree and coefficients on `gens` (zero for
    /// generators not below the degree).
    pub relations: Vec<(Bigrade, Vec<u32>)>,
    /// Per grid point, `|gens| × dim M_d` with `S_d · X_d = id`.
    right_inverses: Vec<Matrix>,
}

impl<'a> Presented<'a> {
    pub fn new(module: &'a GridModule) -> Self {
        let f = module.field();
        let grid = module.grid();
        let gens = module.generators();
        let ng = gens.len();
        let degrees: Vec<Bigrade> = gens.iter().map(|(d, _)| *d).collect();
        let transports: HashMap<Bigrade, Vec<Option<Matrix>>> = distinct(&degrees)
            .into_iter()
            .map(|a| (a, module.transports_from(a)))
            .collect();

        let mut right_inverses = Vec::with_capacity(grid.len());
        let mut kernels: Vec<Matrix> = Vec::with_capacity(grid.len());
        let mut relations = Vec::new();
        for d in grid.points() {
            let n = module.dim(d);
            let below: Vec<usize> = (0..ng).filter(|&g| degrees[g].leq(d)).collect();
            let images: Vec<Vec<u32>> = below
                .iter()
                .map(|&g| transports[&degrees[g]][grid.index(d)].as_ref().unwrap().mul_vec(&gens[g].1))
                .collect();
            let eval = Matrix::from_columns(f, n, &images);

            let rr = eval.rref();
            debug_assert_eq!(rr.rank, n, "generators must span M_{d}");
            let square = eval.select_columns(&rr.pivot_columns);
            let inv = square.inverse().expect("pivot columns form a basis");
            let mut x = Matrix::zeros(f, ng, n);
            for (r, &pc) in rr.pivot_columns.iter().enumerate() {
                for c in 0..n {
                    x.set(below[pc], c, inv.get(r, c));
                }
            }
            right_inverses.push(x);

            let kernel: Vec<Vec<u32>> = eval
                .kernel_basis()
                .into_iter()
                .map(|lam| {
                    let mut full = vec![0; ng];
                    for (k, &g) in below.iter().enumerate() {
                        full[g] = lam[k];
                    }
                    full
                })
                .collect();
            let mut span = Matrix::zeros(f, ng, 0);
            if d.x > 0 {
                span = span.hstack(&kernels[grid.index(left(d))]);
            }
            if d.y > 0 {
                span = span.hstack(&kernels[grid.index(down(d))]);
            }
            let mut rank = span.rank();
            for lam in &kernel {
                if rank == kernel.len() {
                    break;
                }
                let candidate = span.hstack(&Matrix::from_columns(f, ng, std::slice::from_ref(lam)));
                let r = candidate.rank();
                if r > rank {
                    span = candidate;
                    rank = r;
                    relations.push((d, lam.clone()));
                }
            }
            kernels.push(Matrix::from_columns(f, ng, &kernel));
        }
        Self {
            module,
            gens,
            relations,
            right_inverses,
        }
    }
}

fn distinct(degrees: &[Bigrade]) -> Vec<Bigrade> {
    let mut v = degrees.to_vec();
    v.sort();
    v.dedup();
    v
}

/// The linear system whose solutions are the natural maps `M → N`.
pub(crate) struct HomSystem<'a, 'b> {
    src: &'b Presented<'a>,
    tgt: &'b GridModule,
    offsets: Vec<usize>,
    unknowns: usize,
    transports: HashMap<Bigrade, Vec<Option<Matrix>>>,
    constraints: Matrix,
}

impl<'a, 'b> HomSystem<'a, 'b> {
    pub fn new(src: &'b Presented<'a>, tgt: &'b GridModule) -> Self {
        assert_eq!(src.module.grid(), tgt.grid(), "hom between different grids");
        let f = tgt.field();
        let grid = tgt.grid();
        let degrees: Vec<Bigrade> = src.gens.iter().map(|(d, _)| *d).collect();
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut unknowns = 0;
        for &a in &degrees {
            offsets.push(unknowns);
            unknowns += tgt.dim(a);
        }
        let transports: HashMap<Bigrade, Vec<Option<Matrix>>> = distinct(&degrees)
            .into_iter()
            .map(|a| (a, tgt.transports_from(a)))
            .collect();

        let mut constraints = Matrix::zeros(f, 0, unknowns);
        for (d, lam) in &src.relations {
            let rows = tgt.dim(*d);
            if rows == 0 {
                continue;
            }
            let mut block = Matrix::zeros(f, rows, unknowns);
            for (g, &c) in lam.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let t = transports[&degrees[g]][grid.index(*d)].as_ref().unwrap();
                for r in 0..rows {
                    for k in 0..t.cols() {
                        let cur = block.get(r, offsets[g] + k);
                        block.set(r, offsets[g] + k, f.add(cur, f.mul(c, t.get(r, k))));
                    }
                }
            }
            constraints = constraints.vstack(&block);
        }
        Self {
            src,
            tgt,
            offsets,
            unknowns,
            transports,
            constraints,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.tgt.field()
    }

    /// Basis of the solution space, as unknown vectors.
    pub fn solution_basis(&self) -> Vec<Vec<u32>> {
        self.constraints.kernel_basis()
    }

    /// The image of generator `g` under the map with unknown vector `sol`.
    pub fn generator_image<'s>(&self, sol: &'s [u32], g: usize) -> &'s [u32] {
        let a = self.src.gens[g].0;
        &sol[self.offsets[g]..self.offsets[g] + self.tgt.dim(a)]
    }

    /// `|gens| → N_d` evaluation matrix `F_d` of a solution: column `g` is the
    /// image of generator `g` carried to `d` (zero if `g` is not below `d`).
    fn evaluation(&self, sol: &[u32], d: Bigrade) -> Matrix {
        let f = self.field();
        let grid = self.tgt.grid();
        let n = self.tgt.dim(d);
        let cols: Vec<Vec<u32>> = (0..self.src.gens.len())
            .map(|g| {
                let a = self.src.gens[g].0;
                if a.leq(d) {
                    let t = self.transports[&a][grid.index(d)].as_ref().unwrap();
                    t.mul_vec(self.generator_image(sol, g))
                } else {
                    vec![0; n]
                }
            })
            .collect();
        Matrix::from_columns(f, n, &cols)
    }

    /// Component `M_d → N_d` of a solution.
    pub fn component(&self, sol: &[u32], d: Bigrade) -> Matrix {
        let x = &self.src.right_inverses[self.src.module.grid().index(d)];
        self.evaluation(sol, d).mul(x)
    }

    /// Linear functional coefficients: row `r` gives the `r`-th coordinate of
    /// `φ_d(v)` as a function of the unknowns.
    pub fn evaluation_rows(&self, d: Bigrade, v: &[u32]) -> Matrix {
        let f = self.field();
        let n = self.tgt.dim(d);
        let mut rows = Matrix::zeros(f, n, self.unknowns);
        for k in 0..self.unknowns {
            let mut e = vec![0; self.unknowns];
            e[k] = 1;
            let w = self.component(&e, d).mul_vec(v);
            for (r, &x) in w.iter().enumerate() {
                rows.set(r, k, x);
            }
        }
        rows
    }

    pub fn constraints(&self) -> &Matrix {
        &self.constraints
    }

    pub fn materialize(&self, sol: &[u32]) -> GridMorphism {
        GridMorphism::from_fn(self.tgt.grid(), |d| self.component(sol, d))
    }
}

/// A basis of the natural transformations `M → N`.
pub fn hom_basis(m: &GridModule, n: &GridModule) -> Vec<GridMorphism> {
    let presented = Presented::new(m);
    let system = HomSystem::new(&presented, n);
    system
        .solution_basis()
        .iter()
        .map(|sol| system.materialize(sol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraded::{GridBox, Presentation};

    const F2: PrimeField = PrimeField::F2;

    fn b(x: u32, y: u32) -> Bigrade {
        Bigrade::new(x, y)
    }

    fn grid(p: &Presentation) -> GridModule {
        GridModule::from_presentation(p, GridBox::new(2, 2)).unwrap()
    }

    #[test]
    fn free_endomorphisms_are_scalars() {
        let m = grid(&Presentation::free(F2, vec![b(0, 0)]).unwrap());
        let basis = hom_basis(&m, &m);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_identity());
    }

    #[test]
    fn hook_to_free_is_zero() {
        let hook = grid(&Presentation::from_relations(F2, vec![b(0, 0)], vec![(b(1, 1), vec![(0, 1)])]).unwrap());
        let free = grid(&Presentation::free(F2, vec![b(0, 0)]).unwrap());
        assert!(hom_basis(&hook, &free).is_empty());
        // The other direction is the projection.
        assert_eq!(hom_basis(&free, &hook).len(), 1);
    }

    #[test]
    fn staircase_endomorphisms() {
        let p = Presentation::from_relations(
            F2,
            vec![b(0, 1), b(1, 0)],
            vec![(b(1, 1), vec![(0, 1), (1, 1)])],
        )
        .unwrap();
        let m = grid(&p);
        let basis = hom_basis(&m, &m);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_natural(&m, &m));
        assert!(basis[0].is_identity());
    }

    #[test]
    fn basis_elements_are_natural() {
        let p = Presentation::from_relations(
            F2,
            vec![b(0, 0), b(0, 1), b(1, 0)],
            vec![(b(1, 1), vec![(1, 1), (2, 1)]), (b(2, 0), vec![(0, 1), (2, 1)])],
        )
        .unwrap();
        let m = GridModule::for_classification(&p).unwrap();
        let basis = hom_basis(&m, &m);
        assert!(!basis.is_empty());
        for phi in &basis {
            assert!(phi.is_natural(&m, &m));
        }
    }
}
