use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, PrimeField};

use super::bigrade::Bigrade;
use super::grid::GridBox;

/// A finitely presented bigraded module `F1 → F0 → M → 0`.
///
/// Entry `(i, j)` of `coeffs` is the scalar of the homogeneous entry
/// `c_ij · x^(q_j.x − p_i.x) y^(q_j.y − p_i.y)`; the monomial is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    field: PrimeField,
    gens: Vec<Bigrade>,
    rels: Vec<Bigrade>,
    coeffs: Matrix,
}

impl Presentation {
    /// Validated constructor.
    pub fn new(
        field: PrimeField,
        gens: Vec<Bigrade>,
        rels: Vec<Bigrade>,
        coeffs: Matrix,
    ) -> Result<Self> {
        let pres = Self {
            field,
            gens,
            rels,
            coeffs,
        };
        pres.validate()?;
        Ok(pres)
    }

    /// Builds from sparse relation columns `(degree, [(generator, coefficient)])`.
    /// Coefficients are reduced modulo `p`; repeated generators accumulate.
    pub fn from_relations(
        field: PrimeField,
        gens: Vec<Bigrade>,
        relations: Vec<(Bigrade, Vec<(usize, i64)>)>,
    ) -> Result<Self> {
        let mut coeffs = Matrix::zeros(field, gens.len(), relations.len());
        let mut rels = Vec::with_capacity(relations.len());
        for (j, (q, terms)) in relations.into_iter().enumerate() {
            rels.push(q);
            for (i, c) in terms {
                if i >= gens.len() {
                    return Err(Error::ShapeMismatch {
                        rows: i + 1,
                        cols: j + 1,
                        gens: gens.len(),
                        rels: j + 1,
                    });
                }
                let v = field.add(coeffs.get(i, j), field.reduce(c));
                coeffs.set(i, j, v);
            }
        }
        Self::new(field, gens, rels, coeffs)
    }

    pub fn free(field: PrimeField, gens: Vec<Bigrade>) -> Result<Self> {
        let n = gens.len();
        Self::new(field, gens, Vec::new(), Matrix::zeros(field, n, 0))
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            gens: Vec::new(),
            rels: Vec::new(),
            coeffs: Matrix::zeros(field, 0, 0),
        }
    }

    /// Checks shape, finiteness and that every nonzero entry has a legal monomial.
    pub fn validate(&self) -> Result<()> {
        // Re-check the modulus in case the field was deserialized unchecked.
        PrimeField::new(self.field.modulus())?;
        if self.coeffs.rows() != self.gens.len()
            || self.coeffs.cols() != self.rels.len()
            || self.coeffs.field() != self.field
        {
            return Err(Error::ShapeMismatch {
                rows: self.coeffs.rows(),
                cols: self.coeffs.cols(),
                gens: self.gens.len(),
                rels: self.rels.len(),
            });
        }
        for &d in self.gens.iter().chain(&self.rels) {
            if !d.is_finite() {
                return Err(Error::InfiniteDegree(d));
            }
        }
        for (j, &q) in self.rels.iter().enumerate() {
            for (i, &p) in self.gens.iter().enumerate() {
                if self.coeffs.get(i, j) != 0 && !q.geq(p) {
                    return Err(Error::IllegalEntry {
                        gen: i,
                        rel: j,
                        gen_degree: p,
                        rel_degree: q,
                    });
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn gens(&self) -> &[Bigrade] {
        &self.gens
    }

    #[inline]
    pub fn rels(&self) -> &[Bigrade] {
        &self.rels
    }

    #[inline]
    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn is_zero_presentation(&self) -> bool {
        self.gens.is_empty()
    }

    /// Componentwise maximum of all generator and relation degrees.
    pub fn bounding_degree(&self) -> Bigrade {
        self.gens
            .iter()
            .chain(&self.rels)
            .fold(Bigrade::ZERO, |acc, &d| acc.join(d))
    }

    /// The box `[0, Nx+1] × [0, Ny+1]` on which every classification
    /// computation runs. Past the bounding degree no generator or relation
    /// appears, so every multiplication map out of the last column/row is an
    /// isomorphism and this box determines the module up to isomorphism.
    pub fn classification_box(&self) -> GridBox {
        let b = self.bounding_degree();
        GridBox::new(b.x + 1, b.y + 1)
    }

    /// Relation columns whose degree is `≤ d`, restricted to generators `≤ d`.
    pub(crate) fn relations_at(&self, d: Bigrade) -> (Vec<usize>, Vec<usize>, Matrix) {
        let gen_idx: Vec<usize> = (0..self.gens.len()).filter(|&i| self.gens[i].leq(d)).collect();
        let rel_idx: Vec<usize> = (0..self.rels.len()).filter(|&j| self.rels[j].leq(d)).collect();
        let m = self.coeffs.select_rows(&gen_idx).select_columns(&rel_idx);
        (gen_idx, rel_idx, m)
    }

    /// `dim M_d`: generators below `d` minus the rank of the relations below `d`.
    pub fn hilbert_function(&self, d: Bigrade) -> usize {
        let (gen_idx, _, m) = self.relations_at(d);
        gen_idx.len() - m.rank()
    }

    /// Minimal presentation of the same module.
    ///
    /// Unit entries (`q_j = p_i`, `c_ij ≠ 0`) are cancelled by Gaussian
    /// elimination, then relations lying in the span of the remaining
    /// relations of lower or equal degree are dropped one at a time.
    pub fn minimize(&self) -> Presentation {
        let f = self.field;
        let mut gens = self.gens.clone();
        let mut rels = self.rels.clone();
        let mut c = self.coeffs.clone();

        while let Some((i, j)) = find_unit(&gens, &rels, &c) {
            let inv = f.inv(c.get(i, j));
            let pivot_col = c.column(j);
            let mut next = c.clone();
            for l in 0..rels.len() {
                if l == j {
                    continue;
                }
                let factor = f.mul(c.get(i, l), inv);
                if factor == 0 {
                    continue;
                }
                for (k, &v) in pivot_col.iter().enumerate() {
                    let cur = next.get(k, l);
                    next.set(k, l, f.sub(cur, f.mul(factor, v)));
                }
            }
            let keep_rows: Vec<usize> = (0..gens.len()).filter(|&k| k != i).collect();
            let keep_cols: Vec<usize> = (0..rels.len()).filter(|&l| l != j).collect();
            c = next.select_rows(&keep_rows).select_columns(&keep_cols);
            gens.remove(i);
            rels.remove(j);
        }

        // Drop redundant relations. Process in decreasing degree so each test
        // sees every candidate generator of lower or equal degree.
        let mut alive: Vec<bool> = vec![true; rels.len()];
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by(|&a, &b| rels[b].cmp(&rels[a]).then(b.cmp(&a)));
        for &j in &order {
            let others: Vec<usize> = (0..rels.len())
                .filter(|&l| l != j && alive[l] && rels[l].leq(rels[j]))
                .collect();
            let span = c.select_columns(&others);
            if span.column_span_contains(&c.column(j)) {
                alive[j] = false;
            }
        }
        let keep: Vec<usize> = (0..rels.len()).filter(|&l| alive[l]).collect();
        let coeffs = c.select_columns(&keep);
        let rels = keep.iter().map(|&l| rels[l]).collect();

        Presentation {
            field: f,
            gens,
            rels,
            coeffs,
        }
    }

    /// Block-diagonal direct sum. Panics on a field mismatch.
    pub fn direct_sum(&self, other: &Presentation) -> Presentation {
        assert_eq!(self.field, other.field, "direct sum across fields");
        let f = self.field;
        let (g1, r1) = (self.gens.len(), self.rels.len());
        let mut coeffs = Matrix::zeros(f, g1 + other.gens.len(), r1 + other.rels.len());
        for i in 0..g1 {
            for j in 0..r1 {
                coeffs.set(i, j, self.coeffs.get(i, j));
            }
        }
        for i in 0..other.gens.len() {
            for j in 0..other.rels.len() {
                coeffs.set(g1 + i, r1 + j, other.coeffs.get(i, j));
            }
        }
        Presentation {
            field: f,
            gens: self.gens.iter().chain(&other.gens).copied().collect(),
            rels: self.rels.iter().chain(&other.rels).copied().collect(),
            coeffs,
        }
    }

    /// Same module with generators and relations permuted.
    pub fn permuted(&self, gen_order: &[usize], rel_order: &[usize]) -> Presentation {
        Presentation {
            field: self.field,
            gens: gen_order.iter().map(|&i| self.gens[i]).collect(),
            rels: rel_order.iter().map(|&j| self.rels[j]).collect(),
            coeffs: self.coeffs.select_rows(gen_order).select_columns(rel_order),
        }
    }
}

fn find_unit(gens: &[Bigrade], rels: &[Bigrade], c: &Matrix) -> Option<(usize, usize)> {
    (0..rels.len()).find_map(|j| {
        (0..gens.len()).find_map(|i| (rels[j] == gens[i] && c.get(i, j) != 0).then_some((i, j)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: PrimeField = PrimeField::F2;

    fn b(x: u32, y: u32) -> Bigrade {
        Bigrade::new(x, y)
    }

    #[test]
    fn validate_examples() {
        assert!(Presentation::from_relations(F2, vec![b(0, 0)], vec![(b(1, 1), vec![(0, 1)])]).is_ok());
        let err = Presentation::from_relations(F2, vec![b(2, 0)], vec![(b(1, 1), vec![(0, 1)])]);
        assert!(matches!(err, Err(Error::IllegalEntry { .. })));
        assert!(Presentation::free(F2, vec![]).is_ok());
        // A zero coefficient never makes an entry illegal.
        assert!(Presentation::from_relations(F2, vec![b(2, 0)], vec![(b(1, 1), vec![(0, 2)])]).is_ok());
    }

    #[test]
    fn minimize_unit_cancels_generator() {
        let p = Presentation::from_relations(F2, vec![b(0, 0)], vec![(b(0, 0), vec![(0, 1)])]).unwrap();
        let m = p.minimize();
        assert!(m.gens().is_empty());
        assert!(m.rels().is_empty());
    }

    #[test]
    fn minimize_two_gens_one_unit_relation() {
        let p = Presentation::from_relations(
            F2,
            vec![b(0, 0), b(0, 0)],
            vec![(b(0, 0), vec![(0, 1), (1, 1)])],
        )
        .unwrap();
        let m = p.minimize();
        assert_eq!(m.gens(), &[b(0, 0)]);
        assert!(m.rels().is_empty());
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(p.hilbert_function(b(x, y)), m.hilbert_function(b(x, y)));
            }
        }
    }

    #[test]
    fn minimize_drops_redundant_relation() {
        // x·g and xy·g: the second is y times the first.
        let p = Presentation::from_relations(
            F2,
            vec![b(0, 0)],
            vec![(b(1, 0), vec![(0, 1)]), (b(1, 1), vec![(0, 1)])],
        )
        .unwrap();
        let m = p.minimize();
        assert_eq!(m.rels(), &[b(1, 0)]);
    }

    #[test]
    fn minimal_is_unchanged() {
        let p = Presentation::from_relations(F2, vec![b(0, 0)], vec![(b(1, 1), vec![(0, 1)])]).unwrap();
        assert_eq!(p.minimize(), p);
    }

    #[test]
    fn hilbert_examples() {
        let free = Presentation::free(F2, vec![b(0, 0)]).unwrap();
        assert_eq!(free.hilbert_function(b(5, 7)), 1);
        let hook = Presentation::from_relations(F2, vec![b(0, 0)], vec![(b(2, 1), vec![(0, 1)])]).unwrap();
        assert_eq!(hook.hilbert_function(b(3, 0)), 1);
        assert_eq!(hook.hilbert_function(b(2, 1)), 0);
        assert_eq!(hook.hilbert_function(b(1, 5)), 1);
        let staircase = Presentation::from_relations(
            F2,
            vec![b(0, 1), b(1, 0)],
            vec![(b(1, 1), vec![(0, 1), (1, 1)])],
        )
        .unwrap();
        assert_eq!(staircase.hilbert_function(b(1, 1)), 1);
        assert_eq!(staircase.hilbert_function(b(0, 0)), 0);
    }
}
