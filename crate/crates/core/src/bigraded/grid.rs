use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, PrimeField};

use super::bigrade::Bigrade;
use super::presentation::Presentation;

/// The finite grid `[0, nx] × [0, ny]` (inclusive bounds).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridBox {
    pub nx: u32,
    pub ny: u32,
}

impl GridBox {
    pub fn new(nx: u32, ny: u32) -> Self {
        Self { nx, ny }
    }

    #[inline]
    pub fn len(&self) -> usize {
        (self.nx as usize + 1) * (self.ny as usize + 1)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, d: Bigrade) -> bool {
        d.x <= self.nx && d.y <= self.ny
    }

    #[inline]
    pub fn index(&self, d: Bigrade) -> usize {
        debug_assert!(self.contains(d), "{d} outside {self:?}");
        d.x as usize * (self.ny as usize + 1) + d.y as usize
    }

    /// All grid points in lexicographic order (x, then y).
    pub fn points(&self) -> impl Iterator<Item = Bigrade> {
        let (nx, ny) = (self.nx, self.ny);
        (0..=nx).flat_map(move |x| (0..=ny).map(move |y| Bigrade::new(x, y)))
    }

    pub fn corner(&self) -> Bigrade {
        Bigrade::new(self.nx, self.ny)
    }

    pub fn join(&self, other: &GridBox) -> GridBox {
        GridBox::new(self.nx.max(other.nx), self.ny.max(other.ny))
    }
}

/// A bigraded module restricted to a finite grid: a vector space per point
/// with commuting x- and y-multiplication maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridModule {
    field: PrimeField,
    grid: GridBox,
    dims: Vec<usize>,
    // hmaps[d]: M_d -> M_{d+(1,0)}; a 0×dim placeholder on the last column.
    hmaps: Vec<Matrix>,
    // vmaps[d]: M_d -> M_{d+(0,1)}; a 0×dim placeholder on the last row.
    vmaps: Vec<Matrix>,
}

impl GridModule {
    /// Assembles a grid module from raw maps, checking shapes and commutativity.
    pub fn from_maps(
        field: PrimeField,
        grid: GridBox,
        dims: Vec<usize>,
        hmaps: Vec<Matrix>,
        vmaps: Vec<Matrix>,
    ) -> Result<Self> {
        let m = Self {
            field,
            grid,
            dims,
            hmaps,
            vmaps,
        };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<()> {
        let n = self.grid.len();
        if self.dims.len() != n || self.hmaps.len() != n || self.vmaps.len() != n {
            return Err(Error::Invariant("grid module arrays do not match the box".into()));
        }
        for d in self.grid.points() {
            let i = self.grid.index(d);
            let (h, v) = (&self.hmaps[i], &self.vmaps[i]);
            let h_rows = if d.x < self.grid.nx { self.dim(right(d)) } else { 0 };
            let v_rows = if d.y < self.grid.ny { self.dim(up(d)) } else { 0 };
            if h.cols() != self.dims[i] || v.cols() != self.dims[i] || h.rows() != h_rows || v.rows() != v_rows {
                return Err(Error::Invariant(format!("map shapes at {d} do not match dimensions")));
            }
            if d.x < self.grid.nx && d.y < self.grid.ny {
                let hv = self.vmap(right(d)).mul(h);
                let vh = self.hmap(up(d)).mul(v);
                if hv != vh {
                    return Err(Error::Invariant(format!("square at {d} does not commute")));
                }
            }
        }
        Ok(())
    }

    /// Evaluates a presentation on `grid`.
    ///
    /// At each degree the module is `F0_d / im(F1_d)`. The basis of the
    /// quotient is the set of non-pivot generators of the row-reduced relation
    /// space, so maps are induced by generator inclusion followed by projection.
    pub fn from_presentation(pres: &Presentation, grid: GridBox) -> Result<Self> {
        let need = pres.bounding_degree();
        if !grid.contains(need) {
            return Err(Error::BoxTooSmall {
                requested: grid.corner(),
                needed: need,
            });
        }
        let f = pres.field();
        let quotients: Vec<Quotient> = grid.points().map(|d| Quotient::at(pres, d)).collect();
        let dims = quotients.iter().map(|q| q.basis.len()).collect();
        let mut hmaps = Vec::with_capacity(grid.len());
        let mut vmaps = Vec::with_capacity(grid.len());
        for d in grid.points() {
            let src = &quotients[grid.index(d)];
            let induced = |to: Bigrade| -> Matrix {
                let dst = &quotients[grid.index(to)];
                let mut m = Matrix::zeros(f, dst.basis.len(), src.basis.len());
                for (k, &pos) in src.basis.iter().enumerate() {
                    let gen = src.gen_idx[pos];
                    let tpos = dst.gen_idx.binary_search(&gen).expect("generator persists upward");
                    for r in 0..dst.basis.len() {
                        m.set(r, k, dst.projection.get(r, tpos));
                    }
                }
                m
            };
            hmaps.push(if d.x < grid.nx {
                induced(right(d))
            } else {
                Matrix::zeros(f, 0, src.basis.len())
            });
            vmaps.push(if d.y < grid.ny {
                induced(up(d))
            } else {
                Matrix::zeros(f, 0, src.basis.len())
            });
        }
        let m = Self {
            field: f,
            grid,
            dims,
            hmaps,
            vmaps,
        };
        debug_assert!(m.check().is_ok());
        Ok(m)
    }

    /// Grid evaluation on the classification box, with the frontier-stability
    /// check. If it ever failed the box is enlarged and the module recomputed.
    pub fn for_classification(pres: &Presentation) -> Result<Self> {
        let mut grid = pres.classification_box();
        for _ in 0..4 {
            let m = Self::from_presentation(pres, grid)?;
            if m.frontier_is_stable() {
                return Ok(m);
            }
            grid = GridBox::new(grid.nx + 1, grid.ny + 1);
        }
        Err(Error::Invariant(format!(
            "multiplication maps not stable past {}",
            pres.bounding_degree()
        )))
    }

    /// The zero module on a box.
    pub fn zero(field: PrimeField, grid: GridBox) -> Self {
        let n = grid.len();
        Self {
            field,
            grid,
            dims: vec![0; n],
            hmaps: vec![Matrix::zeros(field, 0, 0); n],
            vmaps: vec![Matrix::zeros(field, 0, 0); n],
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn grid(&self) -> GridBox {
        self.grid
    }

    #[inline]
    pub fn dim(&self, d: Bigrade) -> usize {
        self.dims[self.grid.index(d)]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// x-multiplication `M_d → M_{d+(1,0)}`. Panics on the last column.
    pub fn hmap(&self, d: Bigrade) -> &Matrix {
        assert!(d.x < self.grid.nx, "no x-map out of {d}");
        &self.hmaps[self.grid.index(d)]
    }

    /// y-multiplication `M_d → M_{d+(0,1)}`. Panics on the last row.
    pub fn vmap(&self, d: Bigrade) -> &Matrix {
        assert!(d.y < self.grid.ny, "no y-map out of {d}");
        &self.vmaps[self.grid.index(d)]
    }

    /// The structure map `M_from → M_to` for `from ≤ to` (x-steps, then y-steps).
    pub fn transport(&self, from: Bigrade, to: Bigrade) -> Matrix {
        assert!(from.leq(to), "transport needs {from} ≤ {to}");
        let mut acc = Matrix::identity(self.field, self.dim(from));
        let mut cur = from;
        while cur.x < to.x {
            acc = self.hmap(cur).mul(&acc);
            cur = right(cur);
        }
        while cur.y < to.y {
            acc = self.vmap(cur).mul(&acc);
            cur = up(cur);
        }
        acc
    }

    /// Structure maps out of `from` to every grid point above it, indexed by
    /// grid index (`None` where the point is not above `from`).
    pub fn transports_from(&self, from: Bigrade) -> Vec<Option<Matrix>> {
        let mut out: Vec<Option<Matrix>> = vec![None; self.grid.len()];
        for x in from.x..=self.grid.nx {
            for y in from.y..=self.grid.ny {
                let d = Bigrade::new(x, y);
                let m = if d == from {
                    Matrix::identity(self.field, self.dim(d))
                } else if y > from.y {
                    let below = Bigrade::new(x, y - 1);
                    self.vmap(below).mul(out[self.grid.index(below)].as_ref().unwrap())
                } else {
                    let left = Bigrade::new(x - 1, y);
                    self.hmap(left).mul(out[self.grid.index(left)].as_ref().unwrap())
                };
                out[self.grid.index(d)] = Some(m);
            }
        }
        out
    }

    /// Columns spanning `x·M_{d−(1,0)} + y·M_{d−(0,1)}` inside `M_d`.
    pub fn incoming_image(&self, d: Bigrade) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(d), 0);
        if d.x > 0 {
            m = m.hstack(self.hmap(left(d)));
        }
        if d.y > 0 {
            m = m.hstack(self.vmap(down(d)));
        }
        m
    }

    /// A minimal generating set: at every degree, standard basis vectors are
    /// added greedily until they span together with the incoming image.
    pub fn generators(&self) -> Vec<(Bigrade, Vec<u32>)> {
        let mut out = Vec::new();
        for d in self.grid.points() {
            let n = self.dim(d);
            if n == 0 {
                continue;
            }
            let mut span = self.incoming_image(d);
            let mut rank = span.rank();
            for k in 0..n {
                if rank == n {
                    break;
                }
                let mut e = vec![0; n];
                e[k] = 1;
                let candidate = span.hstack(&Matrix::from_columns(self.field, n, std::slice::from_ref(&e)));
                let r = candidate.rank();
                if r > rank {
                    span = candidate;
                    rank = r;
                    out.push((d, e));
                }
            }
        }
        out
    }

    /// Whether every x-map into the last column and every y-map into the last
    /// row is an isomorphism.
    pub fn frontier_is_stable(&self) -> bool {
        let g = self.grid;
        let iso = |m: &Matrix| m.rows() == m.cols() && m.rank() == m.rows();
        let cols_ok = g.nx == 0 || (0..=g.ny).all(|y| iso(self.hmap(Bigrade::new(g.nx - 1, y))));
        let rows_ok = g.ny == 0 || (0..=g.nx).all(|x| iso(self.vmap(Bigrade::new(x, g.ny - 1))));
        cols_ok && rows_ok
    }
}

#[inline]
pub(crate) fn right(d: Bigrade) -> Bigrade {
    Bigrade::new(d.x + 1, d.y)
}

#[inline]
pub(crate) fn up(d: Bigrade) -> Bigrade {
    Bigrade::new(d.x, d.y + 1)
}

#[inline]
pub(crate) fn left(d: Bigrade) -> Bigrade {
    Bigrade::new(d.x - 1, d.y)
}

#[inline]
pub(crate) fn down(d: Bigrade) -> Bigrade {
    Bigrade::new(d.x, d.y - 1)
}

/// Quotient data of `F0_d / im(F1_d)` at one degree.
struct Quotient {
    /// Generators `i` with `p_i ≤ d`, increasing.
    gen_idx: Vec<usize>,
    /// Positions (into `gen_idx`) of the quotient basis: non-pivot generators.
    basis: Vec<usize>,
    /// `dim M_d × |gen_idx|` projection onto the quotient basis.
    projection: Matrix,
}

impl Quotient {
    fn at(pres: &Presentation, d: Bigrade) -> Self {
        let f = pres.field();
        let (gen_idx, _, rels) = pres.relations_at(d);
        let rr = rels.transpose().rref();
        let n = gen_idx.len();
        let mut is_pivot = vec![false; n];
        for &c in &rr.pivot_columns {
            is_pivot[c] = true;
        }
        let basis: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut projection = Matrix::zeros(f, basis.len(), n);
        for (k, &pos) in basis.iter().enumerate() {
            projection.set(k, pos, 1);
        }
        // A pivot generator equals minus the rest of its reduced row.
        for (r, &pc) in rr.pivot_columns.iter().enumerate() {
            for (k, &pos) in basis.iter().enumerate() {
                projection.set(k, pc, f.neg(rr.reduced.get(r, pos)));
            }
        }
        Self {
            gen_idx,
            basis,
            projection,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: PrimeField = PrimeField::F2;

    fn b(x: u32, y: u32) -> Bigrade {
        Bigrade::new(x, y)
    }

    #[test]
    fn free_module_grid() {
        let p = Presentation::free(F2, vec![b(0, 0)]).unwrap();
        let g = GridModule::from_presentation(&p, GridBox::new(2, 2)).unwrap();
        for d in g.grid().points() {
            assert_eq!(g.dim(d), 1);
            if d.x < 2 {
                assert!(g.hmap(d).is_identity());
            }
            if d.y < 2 {
                assert!(g.vmap(d).is_identity());
            }
        }
    }

    #[test]
    fn hook_grid() {
        let p = Presentation::from_relations(F2, vec![b(0, 0)], vec![(b(1, 1), vec![(0, 1)])]).unwrap();
        let g = GridModule::from_presentation(&p, GridBox::new(2, 2)).unwrap();
        for d in g.grid().points() {
            assert_eq!(g.dim(d), usize::from(!d.geq(b(1, 1))), "at {d}");
        }
    }

    #[test]
    fn staircase_grid() {
        let p = Presentation::from_relations(
            F2,
            vec![b(0, 1), b(1, 0)],
            vec![(b(1, 1), vec![(0, 1), (1, 1)])],
        )
        .unwrap();
        let g = GridModule::from_presentation(&p, GridBox::new(2, 2)).unwrap();
        for d in g.grid().points() {
            let expected = usize::from(d.geq(b(0, 1)) || d.geq(b(1, 0)));
            assert_eq!(g.dim(d), expected, "at {d}");
        }
        assert!(g.frontier_is_stable());
        assert_eq!(g.generators().len(), 2);
    }

    #[test]
    fn box_too_small() {
        let p = Presentation::free(F2, vec![b(3, 0)]).unwrap();
        assert!(matches!(
            GridModule::from_presentation(&p, GridBox::new(2, 2)),
            Err(Error::BoxTooSmall { .. })
        ));
    }

    #[test]
    fn transports_agree() {
        let p = Presentation::from_relations(
            F2,
            vec![b(0, 0), b(1, 0)],
            vec![(b(2, 1), vec![(0, 1), (1, 1)])],
        )
        .unwrap();
        let g = GridModule::for_classification(&p).unwrap();
        let all = g.transports_from(b(0, 0));
        for d in g.grid().points() {
            assert_eq!(all[g.grid().index(d)].as_ref().unwrap(), &g.transport(b(0, 0), d));
        }
    }
}
