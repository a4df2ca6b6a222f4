use std::process::ExitCode;
use std::time::{Duration, Instant};

use bipers::decomposition::{decompose_oracle, hook_profile, DEFAULT_ENDOMORPHISM_THRESHOLD};
use bipers::generators::{gallery, random_hook_sum, random_module, RandomMode, RandomSpec, GALLERY};
use bipers::resolution::{betti_from_syzygies, verify_exactness};
use bipers::{
    betti_table, check_implications, classify, hook_decompose, minimal_free_resolution, Bigrade, Error,
    GridModule, Hook, Presentation,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn b(x: u32, y: u32) -> Bigrade {
    Bigrade::new(x, y)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail(e: Error) -> String {
    e.to_string()
}

fn hilbert_identity(pres: &Presentation) -> Outcome {
    let table = betti_table(pres).map_err(fail)?;
    for d in pres.classification_box().points() {
        let expected = pres.hilbert_function(d) as i64;
        let got = table.hilbert_from_betti(d);
        ensure(got == expected, || format!("alternating Betti sum {got} ≠ {expected} at {d}"))?;
    }
    Ok(())
}

fn hook_not_free() -> Outcome {
    let r = classify(&gallery("hook-not-free").map_err(fail)?).map_err(fail)?;
    ensure(r.hook_decomposable && !r.free && r.projective_dimension == 1, || {
        format!("verdict {} {} {}", r.hook_decomposable, r.free, r.projective_dimension)
    })?;
    let hooks = r.certificate.map(|c| c.hooks).unwrap_or_default();
    ensure(hooks == vec![Hook::new(b(0, 0), b(1, 1)).unwrap()], || format!("certificate {hooks:?}"))
}

fn pd1_not_hook() -> Outcome {
    let pres = gallery("pd1-not-hook").map_err(fail)?;
    let r = classify(&pres).map_err(fail)?;
    ensure(r.projective_dimension == 1 && !r.hook_decomposable && !r.free, || {
        format!("verdict {} {} {}", r.hook_decomposable, r.free, r.projective_dimension)
    })?;
    let m = GridModule::for_classification(&pres).map_err(fail)?;
    let parts = decompose_oracle(&m, DEFAULT_ENDOMORPHISM_THRESHOLD).map_err(fail)?;
    ensure(parts.len() == 1, || format!("oracle found {} summands", parts.len()))
}

fn hook_resolutions() -> Outcome {
    for seed in 0..100 {
        let spec = RandomSpec {
            max_hooks: 1,
            max_degree: 8,
            ..RandomSpec::new(RandomMode::HookSumScrambled, seed)
        };
        let (pres, hooks) = random_hook_sum(&spec);
        let h = hooks[0];
        let res = minimal_free_resolution(&pres).map_err(fail)?;
        let expected = [vec![h.birth()], h.bounded_death().into_iter().collect(), vec![]];
        ensure(res.degrees == expected, || format!("seed {seed}: {:?} for {h:?}", res.degrees))?;
        ensure(verify_exactness(&res, pres.classification_box()), || format!("seed {seed}: not exact"))?;
    }
    Ok(())
}

fn structure_theorem_equivalence() -> Outcome {
    for seed in 0..500 {
        let spec = RandomSpec {
            max_degree: 8,
            ..RandomSpec::new(RandomMode::HookSumScrambled, seed)
        };
        let (pres, hooks) = random_hook_sum(&spec);
        let r = classify(&pres).map_err(fail)?;
        ensure(r.hook_decomposable && r.structure_theorem && r.gamma_product, || {
            format!("seed {seed}: not recognized, hooks {hooks:?}")
        })?;
        let found = r.certificate.map(|c| c.hooks).unwrap_or_default();
        ensure(found == hooks, || format!("seed {seed}: recovered {found:?}, built {hooks:?}"))?;
    }
    Ok(())
}

fn implication_diagram() -> Outcome {
    for seed in 0..1000 {
        let pres = random_module(&RandomSpec::new(RandomMode::Arbitrary, seed));
        let r = classify(&pres).map_err(fail)?;
        ensure(check_implications(&r), || format!("seed {seed}: violation"))?;
    }
    Ok(())
}

fn betti_agreement() -> Outcome {
    let mut cases: Vec<(String, Presentation)> = GALLERY
        .iter()
        .map(|n| (n.to_string(), gallery(n).unwrap()))
        .collect();
    cases.extend((0..200).map(|s| (format!("seed {s}"), random_module(&RandomSpec::new(RandomMode::Arbitrary, 10_000 + s)))));
    for (name, pres) in cases {
        let koszul = betti_table(&pres).map_err(fail)?;
        let syzygy = betti_from_syzygies(&pres).map_err(fail)?;
        ensure(koszul == syzygy, || format!("{name}: {koszul:?} vs {syzygy:?}"))?;
    }
    Ok(())
}

fn oracle_agreement() -> Outcome {
    let mut checked = 0;
    let mut seed = 0;
    while checked < 100 {
        let mode = if seed % 2 == 0 { RandomMode::Arbitrary } else { RandomMode::HookSumScrambled };
        let spec = RandomSpec {
            max_gens: 3,
            max_rels: 3,
            max_degree: 3,
            max_hooks: 3,
            ..RandomSpec::new(mode, 20_000 + seed)
        };
        seed += 1;
        let pres = random_module(&spec);
        let m = GridModule::for_classification(&pres).map_err(fail)?;
        let parts = match decompose_oracle(&m, DEFAULT_ENDOMORPHISM_THRESHOLD) {
            Ok(parts) => parts,
            Err(Error::ThresholdExceeded { .. }) => continue,
            Err(e) => return Err(fail(e)),
        };
        checked += 1;
        let oracle: Option<Vec<Hook>> = parts.iter().map(hook_profile).collect();
        let oracle = oracle.map(|mut v| {
            v.sort();
            v
        });
        let found = hook_decompose(&pres).map_err(fail)?.map(|c| c.hooks);
        ensure(found == oracle, || format!("seed {}: {found:?} vs oracle {oracle:?}", 20_000 + seed - 1))?;
    }
    Ok(())
}

/// Every module classified by criteria 1, 2, 4, 5 and 9.
fn hilbert_series() -> Outcome {
    for name in GALLERY {
        hilbert_identity(&gallery(name).map_err(fail)?).map_err(|e| format!("{name}: {e}"))?;
    }
    for seed in 0..500 {
        let spec = RandomSpec {
            max_degree: 8,
            ..RandomSpec::new(RandomMode::HookSumScrambled, seed)
        };
        hilbert_identity(&random_hook_sum(&spec).0).map_err(|e| format!("hook-sum seed {seed}: {e}"))?;
    }
    for seed in 0..1000 {
        let pres = random_module(&RandomSpec::new(RandomMode::Arbitrary, seed));
        hilbert_identity(&pres).map_err(|e| format!("arbitrary seed {seed}: {e}"))?;
    }
    Ok(())
}

fn koszul_point() -> Outcome {
    let r = classify(&gallery("koszul-point").map_err(fail)?).map_err(fail)?;
    let want = [vec![b(0, 0)], vec![b(0, 1), b(1, 0)], vec![b(1, 1)]];
    for (i, w) in want.iter().enumerate() {
        let got = r.betti.degrees(i);
        ensure(&got == w, || format!("β{i} = {got:?}"))?;
    }
    ensure(r.projective_dimension == 2 && !r.hook_decomposable, || {
        format!("pd {} hook {}", r.projective_dimension, r.hook_decomposable)
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 hook-not-free classification", Duration::from_secs(1), hook_not_free),
        ("2 pd1-not-hook classification", Duration::from_secs(1), pd1_not_hook),
        ("3 hook resolutions", Duration::from_secs(5), hook_resolutions),
        ("4 structure theorem equivalence", Duration::from_secs(120), structure_theorem_equivalence),
        ("5 implication diagram", Duration::from_secs(120), implication_diagram),
        ("6 Betti oracle agreement", Duration::from_secs(60), betti_agreement),
        ("7 decomposition oracle agreement", Duration::from_secs(300), oracle_agreement),
        ("8 Hilbert series identity", Duration::from_secs(60), hilbert_series),
        ("9 Koszul point", Duration::from_secs(1), koszul_point),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
