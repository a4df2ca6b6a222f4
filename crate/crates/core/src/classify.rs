//! The classification verdict for a presented module.

use serde::Serialize;

use crate::bigraded::{to_bpm, Bigrade, GridModule, Hook, Presentation};
use crate::decomposition::{hook_decompose, HookCertificate};
use crate::error::Result;
use crate::resolution::{betti_table, projective_dimension, BettiTable};

/// Free and torsion parts of a hook decomposition, plus its diagonal
/// presentation in `.bpm` form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureForm {
    pub free: Vec<Bigrade>,
    pub torsion: Vec<Hook>,
    pub diagonal: String,
}

impl StructureForm {
    fn from_certificate(cert: &HookCertificate, field: crate::PrimeField) -> Self {
        Self {
            free: cert.hooks.iter().filter(|h| h.is_free()).map(Hook::birth).collect(),
            torsion: cert.hooks.iter().filter(|h| !h.is_free()).copied().collect(),
            diagonal: to_bpm(&cert.diagonal_presentation(field)),
        }
    }
}

/// Wall-clock milliseconds per stage.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub minimize_ms: f64,
    pub betti_ms: f64,
    pub projective_dimension_ms: f64,
    pub hook_decompose_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub free: bool,
    pub hook_decomposable: bool,
    pub structure_theorem: bool,
    pub gamma_product: bool,
    pub projective_dimension: u8,
    pub betti: BettiTable,
    pub certificate: Option<HookCertificate>,
    pub structure: Option<StructureForm>,
    #[serde(skip)]
    pub timings: Timings,
}

impl ClassificationReport {
    /// The report as JSON; timings go under a separate `timings` key when
    /// requested.
    pub fn to_json(&self, with_timings: bool) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if with_timings {
            v["timings"] = serde_json::to_value(&self.timings).expect("timings serialize");
        }
        v
    }
}

#[cfg(not(target_arch = "wasm32"))]
fn timed<T>(slot: &mut f64, f: impl FnOnce() -> T) -> T {
    let start = std::time::Instant::now();
    let out = f();
    *slot = start.elapsed().as_secs_f64() * 1e3;
    out
}

// No clock on bare wasm; timings stay zero there.
#[cfg(target_arch = "wasm32")]
fn timed<T>(_slot: &mut f64, f: impl FnOnce() -> T) -> T {
    f()
}

pub fn classify(pres: &Presentation) -> Result<ClassificationReport> {
    let mut timings = Timings::default();
    let minimal = timed(&mut timings.minimize_ms, || pres.minimize());
    let betti = timed(&mut timings.betti_ms, || betti_table(pres))?;
    let pd = timed(&mut timings.projective_dimension_ms, || projective_dimension(&minimal))?;
    let certificate = timed(&mut timings.hook_decompose_ms, || hook_decompose(pres))?;
    let hook = certificate.is_some();
    Ok(ClassificationReport {
        free: minimal.rels().is_empty(),
        hook_decomposable: hook,
        structure_theorem: hook,
        gamma_product: hook,
        projective_dimension: pd,
        betti,
        structure: certificate
            .as_ref()
            .map(|c| StructureForm::from_certificate(c, pres.field())),
        certificate,
        timings,
    })
}

/// Whether `cert` is an isomorphism from its hook sum onto `pres` on the
/// classification box of `pres`.
pub fn verify_certificate(pres: &Presentation, cert: &HookCertificate) -> bool {
    match GridModule::for_classification(pres) {
        Ok(m) => cert.verify_against(&m),
        Err(_) => false,
    }
}

/// The equalities and implications every report must satisfy.
pub fn check_implications(r: &ClassificationReport) -> bool {
    r.structure_theorem == r.hook_decomposable
        && r.gamma_product == r.hook_decomposable
        && (!r.free || r.hook_decomposable)
        && (!r.hook_decomposable || r.projective_dimension <= 1)
        && (r.free == (r.projective_dimension == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{free_module, gallery};
    use crate::{GridBox, GridMorphism, PrimeField};

    fn b(x: u32, y: u32) -> Bigrade {
        Bigrade::new(x, y)
    }

    fn verdict(name: &str) -> (bool, bool, u8) {
        let r = classify(&gallery(name).unwrap()).unwrap();
        assert!(check_implications(&r));
        (r.free, r.hook_decomposable, r.projective_dimension)
    }

    #[test]
    fn gallery_verdicts() {
        assert_eq!(verdict("hook-not-free"), (false, true, 1));
        assert_eq!(verdict("pd1-not-hook"), (false, false, 1));
        assert_eq!(verdict("pd1-not-hook-f3"), (false, false, 1));
        assert_eq!(verdict("koszul-point"), (false, false, 2));
        assert_eq!(verdict("staircase-free-pair"), (true, true, 0));
        assert_eq!(verdict("two-hooks"), (false, true, 1));
        assert_eq!(verdict("zero"), (true, true, 0));
    }

    #[test]
    fn certificate_checks() {
        let hook = gallery("hook-not-free").unwrap();
        let cert = classify(&hook).unwrap().certificate.unwrap();
        assert_eq!(cert.hooks, vec![Hook::new(b(0, 0), b(1, 1)).unwrap()]);
        assert!(verify_certificate(&hook, &cert));
        assert!(!verify_certificate(&gallery("koszul-point").unwrap(), &cert));

        let free = free_module(PrimeField::F2, &[b(0, 0)]).unwrap();
        let m = GridModule::for_classification(&free).unwrap();
        let hand = HookCertificate {
            hooks: vec![Hook::free(b(0, 0))],
            grid: m.grid(),
            embedding: GridMorphism::identity(&m),
        };
        assert!(verify_certificate(&free, &hand));
        let wrong_grid = HookCertificate {
            grid: GridBox::new(5, 5),
            ..hand
        };
        assert!(!verify_certificate(&free, &wrong_grid));
    }

    fn report(free: bool, hook: bool, pd: u8) -> ClassificationReport {
        ClassificationReport {
            free,
            hook_decomposable: hook,
            structure_theorem: hook,
            gamma_product: hook,
            projective_dimension: pd,
            betti: BettiTable::default(),
            certificate: None,
            structure: None,
            timings: Timings::default(),
        }
    }

    #[test]
    fn implication_checker() {
        assert!(check_implications(&report(true, true, 0)));
        assert!(!check_implications(&report(true, false, 0)));
        assert!(!check_implications(&report(false, true, 2)));
        assert!(!check_implications(&report(false, false, 0)));
        let mut split = report(false, true, 1);
        split.gamma_product = false;
        assert!(!check_implications(&split));
    }

    #[test]
    fn json_is_deterministic_without_timings() {
        let p = gallery("two-hooks").unwrap();
        let a = classify(&p).unwrap().to_json(false).to_string();
        let b = classify(&p).unwrap().to_json(false).to_string();
        assert_eq!(a, b);
        assert!(!a.contains("timings"));
        assert!(classify(&p).unwrap().to_json(true).get("timings").is_some());
    }

    #[test]
    fn structure_form_is_diagonal() {
        let r = classify(&gallery("two-hooks").unwrap()).unwrap();
        let s = r.structure.unwrap();
        assert!(s.free.is_empty());
        assert_eq!(s.torsion.len(), 2);
        let diag = crate::bigraded::parse_bpm(&s.diagonal).unwrap();
        assert_eq!(diag.rels().len(), 2);
    }
}
