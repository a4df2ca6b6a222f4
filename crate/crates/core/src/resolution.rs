//! Graded Betti numbers and minimal free resolutions.
//!
//! Two independent routes are provided. [`betti_table`] computes
//! `Tor_i(M, k)` degreewise from the Koszul complex
//! `M_(a−1,b−1) → M_(a−1,b) ⊕ M_(a,b−1) → M_(a,b)` on the grid evaluation,
//! with `m ↦ (y·m, −x·m)` and `(u, v) ↦ x·u + y·v`. [`syzygies`] instead
//! works on the presentation: it minimizes, then extracts minimal generators
//! of the kernel of `F1 → F0` degree by degree.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::bigraded::{down, left, Bigrade, GridBox, GridModule, Presentation};
use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, PrimeField};

/// Graded Betti numbers `β_{i,(a,b)}` for `i ∈ {0, 1, 2}`, each level sorted
/// lexicographically by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    pub beta: [Vec<(Bigrade, usize)>; 3],
}

impl BettiTable {
    /// Collects degree multisets into a table.
    pub fn from_degrees(levels: [&[Bigrade]; 3]) -> Self {
        let mut beta: [Vec<(Bigrade, usize)>; 3] = Default::default();
        for (i, degrees) in levels.iter().enumerate() {
            let mut sorted = degrees.to_vec();
            sorted.sort();
            for d in sorted {
                match beta[i].last_mut() {
                    Some((last, m)) if *last == d => *m += 1,
                    _ => beta[i].push((d, 1)),
                }
            }
        }
        Self { beta }
    }

    pub fn total(&self, i: usize) -> usize {
        self.beta[i].iter().map(|&(_, m)| m).sum()
    }

    /// The level-`i` multiset as a sorted list with repetitions.
    pub fn degrees(&self, i: usize) -> Vec<Bigrade> {
        self.beta[i]
            .iter()
            .flat_map(|&(d, m)| std::iter::repeat_n(d, m))
            .collect()
    }

    pub fn multiplicity(&self, i: usize, d: Bigrade) -> usize {
        self.beta[i]
            .iter()
            .find(|&&(e, _)| e == d)
            .map_or(0, |&(_, m)| m)
    }

    /// `[a, b, multiplicity]` triples per homological index.
    pub fn triples(&self) -> [Vec<[u32; 3]>; 3] {
        self.beta
            .clone()
            .map(|level| level.into_iter().map(|(d, m)| [d.x, d.y, m as u32]).collect())
    }

    /// Alternating sum `Σ_{u ≤ d} (β0 − β1 + β2)(u)`, which equals `dim M_d`.
    pub fn hilbert_from_betti(&self, d: Bigrade) -> i64 {
        let sign = [1i64, -1, 1];
        (0..3)
            .map(|i| {
                sign[i]
                    * self.beta[i]
                        .iter()
                        .filter(|(u, _)| u.leq(d))
                        .map(|&(_, m)| m as i64)
                        .sum::<i64>()
            })
            .sum()
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        for level in self.triples() {
            seq.serialize_element(&level)?;
        }
        seq.end()
    }
}

/// `Tor_i(M, k)` on the classification grid of `pres`.
pub fn betti_table(pres: &Presentation) -> Result<BettiTable> {
    let grid = GridModule::for_classification(pres)?;
    let table = koszul_betti(&grid);
    let g = grid.grid();
    let on_frontier = table
        .beta
        .iter()
        .flatten()
        .find(|(d, _)| d.x == g.nx || d.y == g.ny);
    if let Some((d, _)) = on_frontier {
        return Err(Error::Invariant(format!("Betti number at frontier degree {d}")));
    }
    Ok(table)
}

/// Koszul homology at every point of the grid.
pub fn koszul_betti(m: &GridModule) -> BettiTable {
    let f = m.field();
    let mut levels: [Vec<Bigrade>; 3] = Default::default();
    for d in m.grid().points() {
        let n0 = m.dim(d);
        let a = (d.x > 0).then(|| left(d));
        let b = (d.y > 0).then(|| down(d));
        let na = a.map_or(0, |a| m.dim(a));
        let nb = b.map_or(0, |b| m.dim(b));

        // ∂1: M_a ⊕ M_b → M_d, (u, v) ↦ x·u + y·v
        let mut d1 = Matrix::zeros(f, n0, 0);
        if let Some(a) = a {
            d1 = d1.hstack(m.hmap(a));
        }
        if let Some(b) = b {
            d1 = d1.hstack(m.vmap(b));
        }
        let rank1 = d1.rank();

        // ∂2: M_c → M_a ⊕ M_b, w ↦ (y·w, −x·w)
        let (nc, rank2) = match (a, b) {
            (Some(a), Some(_)) => {
                let c = down(a);
                let d2 = m.vmap(c).vstack(&m.hmap(c).scale(f.neg(1)));
                (m.dim(c), d2.rank())
            }
            _ => (0, 0),
        };

        let counts = [n0 - rank1, na + nb - rank1 - rank2, nc - rank2];
        for (i, &k) in counts.iter().enumerate() {
            levels[i].extend(std::iter::repeat_n(d, k));
        }
    }
    BettiTable::from_degrees([&levels[0], &levels[1], &levels[2]])
}

/// Minimal generators of `ker(F1 → F0)`: their degrees and, column by
/// column, their coefficients on the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syzygies {
    pub degrees: Vec<Bigrade>,
    /// `|rels| × |degrees|`, monomials implicit as in [`Presentation`].
    pub matrix: Matrix,
}

/// Kernel of the presentation map, computed degreewise on the classification
/// box. The presentation should be minimal for the result to be minimal.
pub fn syzygies(pres: &Presentation) -> Result<Syzygies> {
    let f = pres.field();
    let grid = pres.classification_box();
    let nrels = pres.rels().len();
    let mut kernels: Vec<Matrix> = Vec::with_capacity(grid.len());
    let mut degrees = Vec::new();
    let mut columns: Vec<Vec<u32>> = Vec::new();

    for d in grid.points() {
        let rel_idx: Vec<usize> = (0..nrels).filter(|&j| pres.rels()[j].leq(d)).collect();
        let local = pres.coeffs().select_columns(&rel_idx);
        let kernel: Vec<Vec<u32>> = local
            .kernel_basis()
            .into_iter()
            .map(|v| {
                let mut full = vec![0; nrels];
                for (k, &j) in rel_idx.iter().enumerate() {
                    full[j] = v[k];
                }
                full
            })
            .collect();

        // x·K_(d−e1) + y·K_(d−e2) is the coordinate inclusion of both kernels.
        let mut span = Matrix::zeros(f, nrels, 0);
        if d.x > 0 {
            span = span.hstack(&kernels[grid.index(left(d))]);
        }
        if d.y > 0 {
            span = span.hstack(&kernels[grid.index(down(d))]);
        }
        let mut rank = span.rank();
        for v in &kernel {
            if rank == kernel.len() {
                break;
            }
            let candidate = span.hstack(&Matrix::from_columns(f, nrels, std::slice::from_ref(v)));
            let r = candidate.rank();
            if r > rank {
                if d.x == grid.nx || d.y == grid.ny {
                    return Err(Error::Invariant(format!("syzygy generator at frontier degree {d}")));
                }
                span = candidate;
                rank = r;
                degrees.push(d);
                columns.push(v.clone());
            }
        }
        if rank != kernel.len() {
            return Err(Error::Invariant(format!("kernel at {d} not spanned")));
        }
        kernels.push(Matrix::from_columns(f, nrels, &kernel));
    }

    // The second syzygy module in two variables is free: the extracted
    // generators must have no relations among themselves.
    for d in grid.points() {
        let below = degrees.iter().filter(|s| s.leq(d)).count();
        if below != kernels[grid.index(d)].cols() {
            return Err(Error::Invariant(format!("syzygy module is not free at {d}")));
        }
    }
    // Minimality: no syzygy has a unit coefficient on a relation of its own degree.
    for (k, s) in degrees.iter().enumerate() {
        if (0..nrels).any(|j| pres.rels()[j] == *s && columns[k][j] != 0) {
            return Err(Error::Invariant(format!("non-minimal syzygy at {s}")));
        }
    }

    Ok(Syzygies {
        matrix: Matrix::from_columns(f, nrels, &columns),
        degrees,
    })
}

/// The kernel of `F1 → F0` as a (free) presented module.
pub fn syzygy_presentation(pres: &Presentation) -> Result<Presentation> {
    let s = syzygies(pres)?;
    Presentation::free(pres.field(), s.degrees)
}

/// Betti table read off the presentation route: `β0`, `β1` from the minimal
/// presentation, `β2` from [`syzygies`]. Independent of [`koszul_betti`].
pub fn betti_from_syzygies(pres: &Presentation) -> Result<BettiTable> {
    let m = pres.minimize();
    let s = syzygies(&m)?;
    Ok(BettiTable::from_degrees([m.gens(), m.rels(), &s.degrees]))
}

/// `0 → F2 → F1 → F0 (→ M → 0)` with scalar coefficient matrices whose
/// monomials are implied by the degrees at each level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub field: PrimeField,
    pub degrees: [Vec<Bigrade>; 3],
    /// `F1 → F0`, `|degrees[0]| × |degrees[1]|`.
    pub d1: Matrix,
    /// `F2 → F1`, `|degrees[1]| × |degrees[2]|`.
    pub d2: Matrix,
}

impl Resolution {
    pub fn betti(&self) -> BettiTable {
        BettiTable::from_degrees([&self.degrees[0], &self.degrees[1], &self.degrees[2]])
    }

    /// Whether some map has a nonzero entry between equal degrees.
    pub fn has_unit_entries(&self) -> bool {
        let unit = |m: &Matrix, rows: &[Bigrade], cols: &[Bigrade]| {
            (0..m.rows()).any(|i| (0..m.cols()).any(|j| rows[i] == cols[j] && m.get(i, j) != 0))
        };
        unit(&self.d1, &self.degrees[0], &self.degrees[1])
            || unit(&self.d2, &self.degrees[1], &self.degrees[2])
    }

    /// The presentation `F1 → F0` of the resolved module.
    pub fn presentation(&self) -> Result<Presentation> {
        Presentation::new(
            self.field,
            self.degrees[0].clone(),
            self.degrees[1].clone(),
            self.d1.clone(),
        )
    }

    pub fn bounding_degree(&self) -> Bigrade {
        self.degrees
            .iter()
            .flatten()
            .fold(Bigrade::ZERO, |acc, &d| acc.join(d))
    }
}

pub fn minimal_free_resolution(pres: &Presentation) -> Result<Resolution> {
    let m = pres.minimize();
    let s = syzygies(&m)?;
    Ok(Resolution {
        field: m.field(),
        degrees: [m.gens().to_vec(), m.rels().to_vec(), s.degrees],
        d1: m.coeffs().clone(),
        d2: s.matrix,
    })
}

/// Exactness of `0 → F2_d → F1_d → F0_d` at every degree of `grid`; `M` is
/// the cokernel of the last map so exactness there holds by definition.
pub fn verify_exactness(res: &Resolution, grid: GridBox) -> bool {
    if !grid.contains(res.bounding_degree()) {
        return false;
    }
    if res.d1.rows() != res.degrees[0].len()
        || res.d1.cols() != res.degrees[1].len()
        || res.d2.rows() != res.degrees[1].len()
        || res.d2.cols() != res.degrees[2].len()
    {
        return false;
    }
    let legal = |m: &Matrix, rows: &[Bigrade], cols: &[Bigrade]| {
        (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j) == 0 || rows[i].leq(cols[j])))
    };
    if !legal(&res.d1, &res.degrees[0], &res.degrees[1]) || !legal(&res.d2, &res.degrees[1], &res.degrees[2]) {
        return false;
    }
    if !res.d1.mul(&res.d2).is_zero() {
        return false;
    }
    grid.points().all(|d| {
        let idx = |level: usize| -> Vec<usize> {
            (0..res.degrees[level].len())
                .filter(|&k| res.degrees[level][k].leq(d))
                .collect()
        };
        let (i0, i1, i2) = (idx(0), idx(1), idx(2));
        let local1 = res.d1.select_rows(&i0).select_columns(&i1);
        let local2 = res.d2.select_rows(&i1).select_columns(&i2);
        let r1 = local1.rank();
        let r2 = local2.rank();
        r2 == i2.len() && r2 + r1 == i1.len()
    })
}

/// 0 for free modules (including zero), 1 when `β2 = 0`, otherwise 2.
pub fn projective_dimension(pres: &Presentation) -> Result<u8> {
    let m = pres.minimize();
    if m.rels().is_empty() {
        return Ok(0);
    }
    Ok(if syzygies(&m)?.degrees.is_empty() { 1 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: PrimeField = PrimeField::F2;

    fn b(x: u32, y: u32) -> Bigrade {
        Bigrade::new(x, y)
    }

    fn koszul_point() -> Presentation {
        Presentation::from_relations(
            F2,
            vec![b(0, 0)],
            vec![(b(1, 0), vec![(0, 1)]), (b(0, 1), vec![(0, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn free_betti() {
        let p = Presentation::free(F2, vec![b(0, 0), b(2, 3)]).unwrap();
        let t = betti_table(&p).unwrap();
        assert_eq!(t.degrees(0), vec![b(0, 0), b(2, 3)]);
        assert_eq!(t.total(1) + t.total(2), 0);
        assert_eq!(projective_dimension(&p).unwrap(), 0);
        assert!(syzygy_presentation(&p).unwrap().gens().is_empty());
    }

    #[test]
    fn hook_betti_and_resolution() {
        let p = Presentation::from_relations(F2, vec![b(0, 0)], vec![(b(1, 1), vec![(0, 1)])]).unwrap();
        let t = betti_table(&p).unwrap();
        assert_eq!(t, BettiTable::from_degrees([&[b(0, 0)], &[b(1, 1)], &[]]));
        let r = minimal_free_resolution(&p).unwrap();
        assert!(r.degrees[2].is_empty());
        assert_eq!(r.d1.get(0, 0), 1);
        assert!(verify_exactness(&r, GridBox::new(2, 2)));
    }

    #[test]
    fn koszul_point_resolution() {
        let p = koszul_point();
        let t = betti_table(&p).unwrap();
        assert_eq!(t.degrees(0), vec![b(0, 0)]);
        assert_eq!(t.degrees(1), vec![b(0, 1), b(1, 0)]);
        assert_eq!(t.degrees(2), vec![b(1, 1)]);
        assert_eq!(t, betti_from_syzygies(&p).unwrap());
        assert_eq!(projective_dimension(&p).unwrap(), 2);

        let mut r = minimal_free_resolution(&p).unwrap();
        assert_eq!(r.degrees[2], vec![b(1, 1)]);
        // Over F_2 the syzygy (y, −x) is (1, 1) on the two relations.
        assert_eq!(r.d2.column(0), vec![1, 1]);
        assert!(!r.has_unit_entries());
        assert!(verify_exactness(&r, GridBox::new(2, 2)));
        r.d2 = Matrix::zeros(F2, 2, 1);
        assert!(!verify_exactness(&r, GridBox::new(2, 2)));
    }

    #[test]
    fn staircase_resolution_exact() {
        let p = Presentation::from_relations(
            F2,
            vec![b(0, 1), b(1, 0)],
            vec![(b(1, 1), vec![(0, 1), (1, 1)])],
        )
        .unwrap();
        let r = minimal_free_resolution(&p).unwrap();
        assert!(r.degrees[2].is_empty());
        assert!(verify_exactness(&r, GridBox::new(2, 2)));
        assert_eq!(projective_dimension(&p).unwrap(), 1);
    }

    #[test]
    fn koszul_over_f3_sign() {
        let f3 = PrimeField::F3;
        let p = Presentation::from_relations(
            f3,
            vec![b(0, 0)],
            vec![(b(1, 0), vec![(0, 1)]), (b(0, 1), vec![(0, 1)])],
        )
        .unwrap();
        let r = minimal_free_resolution(&p).unwrap();
        let col = r.d2.column(0);
        // (y, −x) up to a unit.
        assert_eq!(f3.add(col[0], col[1]), 0);
        assert!(verify_exactness(&r, GridBox::new(2, 2)));
    }

    #[test]
    fn zero_module() {
        let p = Presentation::zero(F2);
        assert_eq!(betti_table(&p).unwrap(), BettiTable::default());
        assert_eq!(projective_dimension(&p).unwrap(), 0);
    }

    #[test]
    fn json_triples() {
        let t = BettiTable::from_degrees([&[b(0, 0)], &[b(1, 0), b(0, 1)], &[b(1, 1)]]);
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            "[[[0,0,1]],[[0,1,1],[1,0,1]],[[1,1,1]]]"
        );
    }
}
