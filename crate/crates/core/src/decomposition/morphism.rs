use crate::bigraded::{right, up, Bigrade, GridBox, GridModule};
use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, PrimeField};

/// A family of linear maps `M_d → N_d`, one per point of a shared grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridMorphism {
    grid: GridBox,
    components: Vec<Matrix>,
}

impl GridMorphism {
    pub fn from_fn(grid: GridBox, mut component: impl FnMut(Bigrade) -> Matrix) -> Self {
        Self {
            grid,
            components: grid.points().map(&mut component).collect(),
        }
    }

    pub fn identity(m: &GridModule) -> Self {
        Self::from_fn(m.grid(), |d| Matrix::identity(m.field(), m.dim(d)))
    }

    pub fn zero(src: &GridModule, tgt: &GridModule) -> Self {
        Self::from_fn(src.grid(), |d| Matrix::zeros(src.field(), tgt.dim(d), src.dim(d)))
    }

    #[inline]
    pub fn grid(&self) -> GridBox {
        self.grid
    }

    #[inline]
    pub fn component(&self, d: Bigrade) -> &Matrix {
        &self.components[self.grid.index(d)]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// Shapes match and every naturality square commutes.
    pub fn is_natural(&self, src: &GridModule, tgt: &GridModule) -> bool {
        let g = self.grid;
        if src.grid() != g || tgt.grid() != g {
            return false;
        }
        g.points().all(|d| {
            let c = self.component(d);
            if c.rows() != tgt.dim(d) || c.cols() != src.dim(d) {
                return false;
            }
            let h_ok = d.x == g.nx || tgt.hmap(d).mul(c) == self.component(right(d)).mul(src.hmap(d));
            let v_ok = d.y == g.ny || tgt.vmap(d).mul(c) == self.component(up(d)).mul(src.vmap(d));
            h_ok && v_ok
        })
    }

    /// Every component is square and invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.rows() == c.cols() && c.rank() == c.rows())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GridMorphism) -> GridMorphism {
        assert_eq!(self.grid, other.grid, "composition across grids");
        GridMorphism {
            grid: self.grid,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &GridMorphism) -> GridMorphism {
        GridMorphism {
            grid: self.grid,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> GridMorphism {
        GridMorphism {
            grid: self.grid,
            components: self.components.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(Matrix::is_identity)
    }

    pub fn is_idempotent(&self) -> bool {
        self.components.iter().all(|c| c.rows() == c.cols() && &c.mul(c) == c)
    }

    /// `Σ coeffs[k] · basis[k]`.
    pub fn linear_combination(field: PrimeField, basis: &[GridMorphism], coeffs: &[u32]) -> GridMorphism {
        assert!(!basis.is_empty() && basis.len() == coeffs.len());
        let mut acc = basis[0].scale(coeffs[0]);
        for (m, &c) in basis.iter().zip(coeffs).skip(1) {
            if c != 0 {
                for (a, b) in acc.components.iter_mut().zip(&m.components) {
                    a.add_scaled_assign(c, b);
                }
            }
        }
        debug_assert!(acc.components.iter().all(|c| c.field() == field));
        acc
    }
}

/// The sub-representation spanned at each point by the (independent) columns
/// of `bases[d]`, with its inclusion into `m`. Fails if the spaces are not
/// closed under the structure maps.
pub fn submodule(m: &GridModule, bases: Vec<Matrix>) -> Result<(GridModule, GridMorphism)> {
    let g = m.grid();
    let f = m.field();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut hmaps = Vec::with_capacity(g.len());
    let mut vmaps = Vec::with_capacity(g.len());
    for d in g.points() {
        let here = &bases[g.index(d)];
        let induced = |map: &Matrix, to: Bigrade| -> Result<Matrix> {
            let there = &bases[g.index(to)];
            there
                .solve_matrix(&map.mul(here))
                .ok_or_else(|| Error::Invariant(format!("subspace at {d} not closed under structure maps")))
        };
        hmaps.push(if d.x < g.nx {
            induced(m.hmap(d), right(d))?
        } else {
            Matrix::zeros(f, 0, here.cols())
        });
        vmaps.push(if d.y < g.ny {
            induced(m.vmap(d), up(d))?
        } else {
            Matrix::zeros(f, 0, here.cols())
        });
    }
    let sub = GridModule::from_maps(f, g, dims, hmaps, vmaps)?;
    let inclusion = GridMorphism {
        grid: g,
        components: bases,
    };
    Ok((sub, inclusion))
}

/// `ker(φ)` as a submodule of the source of `φ`.
pub fn kernel_submodule(src: &GridModule, phi: &GridMorphism) -> Result<(GridModule, GridMorphism)> {
    let f = src.field();
    let bases = src
        .grid()
        .points()
        .map(|d| Matrix::from_columns(f, src.dim(d), &phi.component(d).kernel_basis()))
        .collect();
    submodule(src, bases)
}

/// `im(φ)` as a submodule of the target of `φ`.
pub fn image_submodule(tgt: &GridModule, phi: &GridMorphism) -> Result<(GridModule, GridMorphism)> {
    let bases = tgt
        .grid()
        .points()
        .map(|d| phi.component(d).column_space_basis())
        .collect();
    submodule(tgt, bases)
}

/// The submodule generated by `v ∈ M_p`.
pub fn cyclic_submodule(m: &GridModule, p: Bigrade, v: &[u32]) -> Result<(GridModule, GridMorphism)> {
    let f = m.field();
    let transports = m.transports_from(p);
    let bases = m
        .grid()
        .points()
        .map(|d| {
            let n = m.dim(d);
            match &transports[m.grid().index(d)] {
                Some(t) => {
                    let w = t.mul_vec(v);
                    if w.iter().all(|&c| c == 0) {
                        Matrix::zeros(f, n, 0)
                    } else {
                        Matrix::from_columns(f, n, &[w])
                    }
                }
                None => Matrix::zeros(f, n, 0),
            }
        })
        .collect();
    submodule(m, bases)
}
