//! Class representatives, the counterexample gallery, and seeded random
//! modules.

use serde::{Deserialize, Serialize};

use crate::bigraded::{Bar, Bigrade, Hook, Presentation};
use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, PrimeField};

pub fn free_module(field: PrimeField, births: &[Bigrade]) -> Result<Presentation> {
    Presentation::free(field, births.to_vec())
}

/// One generator at `p`; one relation `x^(q−p)·g` at `q` when `q` is finite.
pub fn hook_module(field: PrimeField, hook: Hook) -> Presentation {
    hook_sum(field, std::slice::from_ref(&hook))
}

/// Block-diagonal presentation of `⊕ hooks`, generators in hook order.
pub fn hook_sum(field: PrimeField, hooks: &[Hook]) -> Presentation {
    let gens: Vec<Bigrade> = hooks.iter().map(Hook::birth).collect();
    let relations: Vec<(Bigrade, Vec<(usize, i64)>)> = hooks
        .iter()
        .enumerate()
        .filter_map(|(i, h)| h.bounded_death().map(|q| (q, vec![(i, 1)])))
        .collect();
    Presentation::from_relations(field, gens, relations).expect("hooks give legal presentations")
}

/// Direct sum over pairs of the hook with birth `(b1, b2)` and death
/// `(d1, d2)`; an infinite death coordinate yields a free hook.
pub fn gamma_product(field: PrimeField, pairs: &[(Bar, Bar)]) -> Result<Presentation> {
    let hooks = pairs
        .iter()
        .map(|(a, b)| Hook::new(Bigrade::new(a.birth, b.birth), Bigrade::new(a.death, b.death)))
        .collect::<Result<Vec<_>>>()?;
    Ok(hook_sum(field, &hooks))
}

pub const GALLERY: &[&str] = &[
    "hook-not-free",
    "pd1-not-hook",
    "pd1-not-hook-f3",
    "koszul-point",
    "staircase-free-pair",
    "two-hooks",
    "vertical-strip",
    "free-rank-two",
    "zero",
];

/// A named fixed module.
pub fn gallery(name: &str) -> Result<Presentation> {
    let f2 = PrimeField::F2;
    let b = Bigrade::new;
    let hook = |p, q| Hook::new(p, q).expect("gallery hooks are valid");
    let pres = match name {
        // xy·g at (1,1)
        "hook-not-free" => hook_module(f2, hook(b(0, 0), b(1, 1))),
        // x·g − y·h at (1,1); over F_2 the sign disappears
        "pd1-not-hook" => staircase(f2),
        "pd1-not-hook-f3" => staircase(PrimeField::F3),
        "koszul-point" => Presentation::from_relations(
            f2,
            vec![b(0, 0)],
            vec![(b(1, 0), vec![(0, 1)]), (b(0, 1), vec![(0, 1)])],
        )?,
        "staircase-free-pair" => free_module(f2, &[b(0, 1), b(1, 0)])?,
        "two-hooks" => hook_sum(f2, &[hook(b(0, 0), b(2, 1)), hook(b(1, 1), b(3, 3))]),
        "vertical-strip" => hook_module(f2, hook(b(1, 0), b(3, 0))),
        "free-rank-two" => free_module(f2, &[b(1, 2), b(1, 2)])?,
        "zero" => Presentation::zero(f2),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    Ok(pres)
}

fn staircase(field: PrimeField) -> Presentation {
    Presentation::from_relations(
        field,
        vec![Bigrade::new(0, 1), Bigrade::new(1, 0)],
        vec![(Bigrade::new(1, 1), vec![(0, 1), (1, -1)])],
    )
    .expect("staircase is legal")
}

/// The splitmix64 generator; fixed so random modules are reproducible
/// across platforms.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (`n > 0`).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: u32, hi: u32) -> u32 {
        lo + self.below((hi - lo) as u64 + 1) as u32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomMode {
    Arbitrary,
    Free,
    HookSumScrambled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub mode: RandomMode,
    pub max_gens: usize,
    pub max_rels: usize,
    pub max_degree: u32,
    pub max_hooks: usize,
    pub seed: u64,
    pub field: PrimeField,
}

impl RandomSpec {
    pub fn new(mode: RandomMode, seed: u64) -> Self {
        Self {
            mode,
            max_gens: 4,
            max_rels: 4,
            max_degree: 6,
            max_hooks: 5,
            seed,
            field: PrimeField::F2,
        }
    }
}

/// A random presentation according to `spec`; see [`random_hook_sum`] for
/// the construction log of the scrambled mode.
pub fn random_module(spec: &RandomSpec) -> Presentation {
    let mut rng = SplitMix64::new(spec.seed);
    let f = spec.field;
    let degree = |rng: &mut SplitMix64| Bigrade::new(rng.range(0, spec.max_degree), rng.range(0, spec.max_degree));
    match spec.mode {
        RandomMode::Free => {
            let n = rng.range(1, spec.max_gens.max(1) as u32) as usize;
            let gens: Vec<Bigrade> = (0..n).map(|_| degree(&mut rng)).collect();
            Presentation::free(f, gens).expect("finite degrees")
        }
        RandomMode::Arbitrary => {
            let n = rng.range(1, spec.max_gens.max(1) as u32) as usize;
            let r = rng.range(0, spec.max_rels as u32) as usize;
            let gens: Vec<Bigrade> = (0..n).map(|_| degree(&mut rng)).collect();
            let rels: Vec<Bigrade> = (0..r).map(|_| degree(&mut rng)).collect();
            let mut coeffs = Matrix::zeros(f, n, r);
            for (j, q) in rels.iter().enumerate() {
                for (i, p) in gens.iter().enumerate() {
                    if q.geq(*p) {
                        coeffs.set(i, j, rng.below(f.order()) as u32);
                    }
                }
            }
            Presentation::new(f, gens, rels, coeffs).expect("legal entries only")
        }
        RandomMode::HookSumScrambled => random_hook_sum(spec).0,
    }
}

/// A scrambled direct sum of random hooks, with the hooks used (sorted).
///
/// The scramble applies degree-respecting automorphisms of the free covers:
/// `row_i += c·row_j` when `p_i ≤ p_j`, `col_l += c·col_k` when `q_k ≤ q_l`,
/// nonzero scalings, then a permutation of generators and relations.
pub fn random_hook_sum(spec: &RandomSpec) -> (Presentation, Vec<Hook>) {
    let mut rng = SplitMix64::new(spec.seed ^ 0x686f_6f6b);
    let f = spec.field;
    let max = spec.max_degree;
    let n = rng.range(1, spec.max_hooks.max(1) as u32) as usize;
    let mut hooks = Vec::with_capacity(n);
    for _ in 0..n {
        let p = Bigrade::new(rng.range(0, max), rng.range(0, max));
        let hook = if rng.below(3) == 0 || p == Bigrade::new(max, max) {
            Hook::free(p)
        } else {
            loop {
                let q = Bigrade::new(rng.range(p.x, max), rng.range(p.y, max));
                if q != p {
                    break Hook::new(p, q).expect("p < q");
                }
            }
        };
        hooks.push(hook);
    }
    let pres = scramble(&hook_sum(f, &hooks), &mut rng);
    hooks.sort();
    (pres, hooks)
}

/// Applies random degree-respecting changes of basis.
pub fn scramble(pres: &Presentation, rng: &mut SplitMix64) -> Presentation {
    let f = pres.field();
    let gens = pres.gens().to_vec();
    let rels = pres.rels().to_vec();
    let mut c = pres.coeffs().clone();
    let (ng, nr) = (gens.len(), rels.len());
    let nonzero = |rng: &mut SplitMix64| 1 + rng.below(f.order() - 1) as u32;

    for _ in 0..4 * (ng + nr) {
        match rng.below(4) {
            0 if ng > 1 => {
                let (i, j) = (rng.below(ng as u64) as usize, rng.below(ng as u64) as usize);
                if i != j && gens[i].leq(gens[j]) {
                    let s = nonzero(rng);
                    for l in 0..nr {
                        let v = f.add(c.get(i, l), f.mul(s, c.get(j, l)));
                        c.set(i, l, v);
                    }
                }
            }
            1 if nr > 1 => {
                let (k, l) = (rng.below(nr as u64) as usize, rng.below(nr as u64) as usize);
                if k != l && rels[k].leq(rels[l]) {
                    let s = nonzero(rng);
                    for i in 0..ng {
                        let v = f.add(c.get(i, l), f.mul(s, c.get(i, k)));
                        c.set(i, l, v);
                    }
                }
            }
            2 if ng > 0 => {
                let i = rng.below(ng as u64) as usize;
                let s = nonzero(rng);
                for l in 0..nr {
                    c.set(i, l, f.mul(s, c.get(i, l)));
                }
            }
            3 if nr > 0 => {
                let l = rng.below(nr as u64) as usize;
                let s = nonzero(rng);
                for i in 0..ng {
                    c.set(i, l, f.mul(s, c.get(i, l)));
                }
            }
            _ => {}
        }
    }
    let scrambled = Presentation::new(f, gens, rels, c).expect("automorphisms keep entries legal");
    let gen_order = shuffled(ng, rng);
    let rel_order = shuffled(nr, rng);
    scrambled.permuted(&gen_order, &rel_order)
}

fn shuffled(n: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        v.swap(i, j);
    }
    v
}
