//! Acceptance criteria 1-10. Each writes one PASS/FAIL line to stderr (not
//! captured by the test harness); the test fails if any criterion fails.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use combs_cli::{run_sources, Options};
use combs_core::comb::{
    braid_eval, comb_compose, comb_tensor, enumerate_combs, equiv_comb, equiv_sigma, equiv_tau, extended_eval,
    find_sigma_congruence_failure, lift_functor, same_representative, CombRep, ProbeSpec, StrictFunctor,
};
use combs_core::cpm::{cpm_compose, cpm_equal, cpm_tensor, dagger_comb, to_cpm};
use combs_core::decision::Witness;
use combs_core::instances::finfun::{FinFunBackend, Linearization};
use combs_core::instances::idempotent::IdempotentBackend;
use combs_core::instances::matrix::{BoolMatrices, ComplexMatrices};
use combs_core::instances::pointed::PointedBackend;
use combs_core::instances::unitary::UnitaryBackend;
use combs_core::object::ObjectWord;
use combs_core::optic::{
    equiv_optic, replay_factorization, slide, unitary_comb_factor, OpticRep, OpticSpec, SlideDirection, SlideMove,
};
use combs_core::polycomb::{
    dual_pair, name_alignment, poly_compose_at, poly_equiv, poly_identity, poly_name, star_counit, star_unit,
    PolyCombRep,
};
use combs_core::sample;
use combs_core::term::MorTerm;
use combs_core::{Backend, Budget};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const COUNTEREXAMPLE_TIME: Duration = Duration::from_secs(1);
const ISOMORPHISM_TIME: Duration = Duration::from_secs(60);
const FUNCTORIALITY_TOL: f64 = 1e-9;
const FACTOR_RESIDUAL: f64 = 1e-8;
const SNAKE_TOL: f64 = 1e-9;
const NAME_TOL: f64 = 1e-9;
const PROBE_BOUND: usize = 2;

const SUITE: [&str; 7] = ["counterexample", "congruence", "pointed", "cpm_qubit", "lens", "unitary", "poly"];

type Outcome = Result<String, String>;
type SlidPair<M> = (OpticRep<M>, OpticRep<M>);
type Criterion = (&'static str, fn() -> Outcome);

fn w(s: &str) -> ObjectWord {
    ObjectWord::new(s.split_whitespace())
}

fn check(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn suite_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../suite")
}

fn suite_sources(name: &str) -> (String, String) {
    let read = |ext: &str| std::fs::read_to_string(suite_dir().join(format!("{name}.{ext}"))).unwrap();
    (read("theory"), read("program"))
}

fn criterion_1() -> Outcome {
    let b = IdempotentBackend::single();
    let f = b.generator("f").map_err(err)?;
    let id = b.identity(&IdempotentBackend::object(1));
    let i = ObjectWord::unit();
    let c1 = CombRep::new(&b, i.clone(), id.clone(), f.clone()).map_err(err)?;
    let c2 = CombRep::new(&b, i, f, id).map_err(err)?;
    let started = Instant::now();
    let comb = equiv_comb(&b, &c1, &c2, ProbeSpec::Auto).map_err(err)?;
    let optic = equiv_optic(&b, &OpticRep(c1), &OpticRep(c2), OpticSpec::Auto).map_err(err)?;
    let elapsed = started.elapsed();
    check(comb.is_equivalent() && comb.certified, || {
        format!("comb verdict {} certified={}", comb.verdict, comb.certified)
    })?;
    check(optic.is_distinct() && optic.certified, || {
        format!("optic verdict {} certified={}", optic.verdict, optic.certified)
    })?;
    check(elapsed < COUNTEREXAMPLE_TIME, || format!("took {elapsed:?}"))?;

    let (t, p) = suite_sources("counterexample");
    let out = run_sources(&t, &p, &Options::default()).map_err(err)?;
    let verdict = |q: &str| out.reports.iter().find(|r| r["query"] == q).map(|r| r["verdict"].clone());
    check(verdict("equiv comb c1 c2") == Some("Equivalent".into()), || "CLI comb verdict".into())?;
    check(verdict("equiv optic c1 c2") == Some("Distinct".into()), || "CLI optic verdict".into())?;
    Ok(format!(
        "comb Equivalent ({}), optic Distinct ({}), certified, {:.1} ms",
        comb.method,
        optic.method,
        elapsed.as_secs_f64() * 1e3
    ))
}

/// A comb and a copy with some `v` slid from the bottom half to the top half.
fn slid_pair<B: Backend>(b: &B, f0: B::Mor, v: B::Mor, g: B::Mor) -> Result<SlidPair<B::Mor>, String> {
    let hole_out = b.cod(&f0).strip_prefix(&b.dom(&v)).ok_or("bad split")?;
    let bottom = b.compose(&f0, &b.tensor(&v, &b.identity(&hole_out))).map_err(err)?;
    let src = OpticRep(CombRep::new(b, b.cod(&v), bottom, g).map_err(err)?);
    let tgt = slide(b, &src, &SlideMove { v, direction: SlideDirection::TowardTop, factor: f0 }).map_err(err)?;
    Ok((src, tgt))
}

fn criterion_2() -> Outcome {
    let b = BoolMatrices::new([("X", 2), ("U", 1)]).map_err(err)?;
    let objs = [w("X"), w("U"), ObjectWord::unit()];
    let envs = [ObjectWord::unit(), w("U"), w("X")];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let started = Instant::now();
    let (mut pairs, mut equivalent) = (0, 0);
    while pairs < 1000 {
        let pick = |rng: &mut ChaCha8Rng| objs[rng.gen_range(0..objs.len())].clone();
        let (a, ap, hb, hbp) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let e = envs[rng.gen_range(0..envs.len())].clone();
        let density = rng.gen_range(0.2..0.8);
        let (c1, c2) = match pairs % 3 {
            0 => {
                let e0 = envs[rng.gen_range(0..envs.len())].clone();
                let f0 = sample::bool_morphism(&mut rng, &b, &a, &e0.tensor(&hb), density).map_err(err)?;
                let v = sample::bool_morphism(&mut rng, &b, &e0, &e, density).map_err(err)?;
                let g = sample::bool_morphism(&mut rng, &b, &e.tensor(&hbp), &ap, density).map_err(err)?;
                let (s, t) = slid_pair(&b, f0, v, g)?;
                (s.0, t.0)
            }
            _ => {
                let c1 = sample::bool_comb(&mut rng, &b, (&a, &ap), (&hb, &hbp), &e, density).map_err(err)?;
                let e2 = envs[rng.gen_range(0..envs.len())].clone();
                let c2 = sample::bool_comb(&mut rng, &b, (&a, &ap), (&hb, &hbp), &e2, density).map_err(err)?;
                (c1, c2)
            }
        };
        let by_name =
            equiv_optic(&b, &OpticRep(c1.clone()), &OpticRep(c2.clone()), OpticSpec::NameForm).map_err(err)?;
        let by_braid = equiv_comb(&b, &c1, &c2, ProbeSpec::BraidOnly).map_err(err)?;
        check(by_name.certified && by_braid.certified, || "uncertified verdict".into())?;
        check(by_name.verdict == by_braid.verdict, || {
            format!("disagreement on pair {pairs}: {} vs {}", by_name.verdict, by_braid.verdict)
        })?;
        equivalent += usize::from(by_name.is_equivalent());
        pairs += 1;
    }
    let elapsed = started.elapsed();
    check(elapsed < ISOMORPHISM_TIME, || format!("took {elapsed:?}"))?;
    check(equivalent > 0 && equivalent < pairs, || format!("degenerate sample: {equivalent} equivalent"))?;
    Ok(format!("{pairs} pairs ({equivalent} equivalent), 0 disagreements, {:.2} s", elapsed.as_secs_f64()))
}

/// Compares source and target on every enumerated filler for every side pair.
fn probes_agree<B: Backend>(
    b: &B,
    src: &CombRep<B::Mor>,
    tgt: &CombRep<B::Mor>,
    sides: &[ObjectWord],
) -> Result<usize, String> {
    let budget = Budget::new(PROBE_BOUND);
    let mut probes = 0;
    for c in sides {
        for d in sides {
            let hom = b.enumerate_hom(&c.tensor(&src.b), &d.tensor(&src.b_prime), &budget).map_err(err)?;
            for filler in &hom.items {
                let l = extended_eval(b, src, c, d, filler).map_err(err)?;
                let r = extended_eval(b, tgt, c, d, filler).map_err(err)?;
                check(b.equal(&l, &r), || format!("probe ({c}, {d}) separates a slide"))?;
                probes += 1;
            }
        }
    }
    Ok(probes)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut moves, mut probes) = (0, 0);

    let bb = BoolMatrices::new([("X", 2), ("U", 1)]).map_err(err)?;
    let (x, u, i) = (w("X"), w("U"), ObjectWord::unit());
    let envs = [i.clone(), u.clone(), x.clone()];
    let bool_sides = [i.clone(), x.clone()];
    for k in 0..250 {
        let (e0, e) = (envs[rng.gen_range(0..3)].clone(), envs[rng.gen_range(0..3)].clone());
        let density = rng.gen_range(0.2..0.8);
        let (src, tgt) = if k % 2 == 0 {
            let f0 = sample::bool_morphism(&mut rng, &bb, &x, &e0.tensor(&x), density).map_err(err)?;
            let v = sample::bool_morphism(&mut rng, &bb, &e0, &e, density).map_err(err)?;
            let g = sample::bool_morphism(&mut rng, &bb, &e.tensor(&u), &x, density).map_err(err)?;
            slid_pair(&bb, f0, v, g)?
        } else {
            let f = sample::bool_morphism(&mut rng, &bb, &x, &e0.tensor(&x), density).map_err(err)?;
            let v = sample::bool_morphism(&mut rng, &bb, &e0, &e, density).map_err(err)?;
            let g0 = sample::bool_morphism(&mut rng, &bb, &e.tensor(&u), &x, density).map_err(err)?;
            let top = bb.compose(&bb.tensor(&v, &bb.identity(&u)), &g0).map_err(err)?;
            let src = OpticRep(CombRep::new(&bb, e0, f, top).map_err(err)?);
            let tgt =
                slide(&bb, &src, &SlideMove { v, direction: SlideDirection::TowardBottom, factor: g0 }).map_err(err)?;
            (src, tgt)
        };
        probes += probes_agree(&bb, &src.0, &tgt.0, &bool_sides)?;
        moves += 1;
    }

    let cb = ComplexMatrices::new([("X", 2), ("Y", 3)]).map_err(err)?;
    let y = w("Y");
    let cenvs = [i.clone(), x.clone(), y.clone()];
    let complex_sides = [i.clone(), x.clone()];
    for k in 0..250 {
        let (e0, e) = (cenvs[rng.gen_range(0..3)].clone(), cenvs[rng.gen_range(0..3)].clone());
        let (src, tgt) = if k % 2 == 0 {
            let f0 = sample::complex_morphism(&mut rng, &cb, &x, &e0.tensor(&x)).map_err(err)?;
            let v = sample::complex_morphism(&mut rng, &cb, &e0, &e).map_err(err)?;
            let g = sample::complex_morphism(&mut rng, &cb, &e.tensor(&y), &x).map_err(err)?;
            slid_pair(&cb, f0, v, g)?
        } else {
            let f = sample::complex_morphism(&mut rng, &cb, &x, &e0.tensor(&x)).map_err(err)?;
            let v = sample::complex_morphism(&mut rng, &cb, &e0, &e).map_err(err)?;
            let g0 = sample::complex_morphism(&mut rng, &cb, &e.tensor(&y), &x).map_err(err)?;
            let top = cb.compose(&cb.tensor(&v, &cb.identity(&y)), &g0).map_err(err)?;
            let src = OpticRep(CombRep::new(&cb, e0, f, top).map_err(err)?);
            let tgt =
                slide(&cb, &src, &SlideMove { v, direction: SlideDirection::TowardBottom, factor: g0 }).map_err(err)?;
            (src, tgt)
        };
        probes += probes_agree(&cb, &src.0, &tgt.0, &complex_sides)?;
        moves += 1;
    }
    Ok(format!("{moves} slide moves, {probes} probes, 0 failures"))
}

fn criterion_4() -> Outcome {
    let b = PointedBackend::standard();
    let (a, i) = (PointedBackend::object(1), ObjectWord::unit());
    let del = b.generator("del").map_err(err)?;
    let comb = |s: &str| -> Result<CombRep<_>, String> {
        CombRep::with_boundary(&b, (&i, &i), (&a, &a), i.clone(), b.generator(s).map_err(err)?, del.clone())
            .map_err(err)
    };
    let (c_psi, c_phi) = (comb("psi")?, comb("phi")?);
    let sigma = equiv_sigma(&b, &c_psi, &c_phi).map_err(err)?;
    check(sigma.is_distinct() && sigma.certified, || format!("sigma verdict {}", sigma.verdict))?;
    let tau = equiv_tau(&b, &c_psi, &c_phi, PROBE_BOUND).map_err(err)?;
    check(tau.is_equivalent(), || format!("tau verdict {}", tau.verdict))?;
    let Some(Witness::Probe(p)) = &sigma.witness else { return Err("no probe witness".into()) };
    let after_del = |s: &str| -> Result<_, String> { b.compose(&del, &b.generator(s).map_err(err)?).map_err(err) };
    check(b.equal(&p.lhs, &after_del("psi")?) && b.equal(&p.rhs, &after_del("phi")?), || {
        "normal forms differ from psi.! and phi.!".into()
    })?;
    check(!b.equal(&p.lhs, &p.rhs), || "normal forms coincide".into())?;
    let probes = tau.coverage.as_ref().map_or(0, |c| c.probes);
    Ok(format!(
        "sigma Distinct with normal forms {} vs {}; tau Equivalent on {probes} un-extended probes (certified={})",
        MorTerm::literal_of(&b, &p.lhs),
        MorTerm::literal_of(&b, &p.rhs),
        tau.certified
    ))
}

fn criterion_5() -> Outcome {
    let b = BoolMatrices::new([("X", 2), ("U", 1)]).map_err(err)?;
    let (x, u, i) = (w("X"), w("U"), ObjectWord::unit());
    let envs = [i.clone(), u.clone(), x.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let same = |c1: &CombRep<_>, c2: &CombRep<_>| -> Result<bool, String> {
        let d = equiv_comb(&b, c1, c2, ProbeSpec::BraidOnly).map_err(err)?;
        Ok(d.is_equivalent() && d.certified)
    };
    let random_pair = |rng: &mut ChaCha8Rng, outer: (&ObjectWord, &ObjectWord), hole: (&ObjectWord, &ObjectWord)| {
        let (e0, e) = (envs[rng.gen_range(0..3)].clone(), envs[rng.gen_range(0..3)].clone());
        let density = rng.gen_range(0.2..0.8);
        let f0 = sample::bool_morphism(rng, &b, outer.0, &e0.tensor(hole.0), density).map_err(err)?;
        let v = sample::bool_morphism(rng, &b, &e0, &e, density).map_err(err)?;
        let g = sample::bool_morphism(rng, &b, &e.tensor(hole.1), outer.1, density).map_err(err)?;
        slid_pair(&b, f0, v, g).map(|(s, t)| (s.0, t.0))
    };
    let mut pairs = 0;
    while pairs < 200 {
        let (c1, c2) = random_pair(&mut rng, (&x, &x), (&x, &u))?;
        if !same(&c1, &c2)? {
            return Err("a slid pair is not certified equivalent".into());
        }
        let (d1, d2) = random_pair(&mut rng, (&x, &u), (&u, &x))?;
        let (t1, t2) = random_pair(&mut rng, (&u, &x), (&x, &x))?;
        check(same(&comb_compose(&b, &c1, &d1).map_err(err)?, &comb_compose(&b, &c2, &d2).map_err(err)?)?, || {
            format!("compose breaks pair {pairs}")
        })?;
        check(same(&comb_tensor(&b, &c1, &t1).map_err(err)?, &comb_tensor(&b, &c2, &t2).map_err(err)?)?, || {
            format!("tensor breaks pair {pairs}")
        })?;
        pairs += 1;
    }

    // the sigma congruence failure, searched for and compared with the stored fixture
    let ib = IdempotentBackend::new(["f", "h"]).map_err(err)?;
    let a = IdempotentBackend::object(1);
    let budget = Budget::new(PROBE_BOUND);
    let firsts = enumerate_combs(&ib, (&a, &a), (&a, &a), std::slice::from_ref(&i), &budget).map_err(err)?;
    let seconds = enumerate_combs(&ib, (&a, &a), (&i, &i), std::slice::from_ref(&a), &budget).map_err(err)?;
    let found = find_sigma_congruence_failure(&ib, &firsts, &seconds)
        .map_err(err)?
        .ok_or("no congruence failure within the bound")?;
    let (t, p) = suite_sources("congruence");
    let out = run_sources(&t, &p, &Options::default()).map_err(err)?;
    let report = |q: &str| out.reports.iter().find(|r| r["query"] == q).cloned().unwrap_or_default();
    check(report("equiv sigma c c_alt")["verdict"] == "Equivalent", || {
        "fixture: c and c_alt not sigma-equivalent".into()
    })?;
    check(report("equiv sigma cd cd_alt")["verdict"] == "Distinct", || "fixture: composites not separated".into())?;
    let term = |m| MorTerm::literal_of(&ib, m).to_string();
    let composed = comb_compose(&ib, &found.first, &found.second).map_err(err)?;
    let stored = &report("compose c d as cd")["comb"];
    check(stored["bottom"] == term(&composed.bottom) && stored["top"] == term(&composed.top), || {
        "fixture differs from the searched witness".into()
    })?;
    check(!ib.equal(&found.composite, &found.composite_alt), || "witness composites coincide".into())?;
    Ok(format!(
        "{pairs} certified-equivalent pairs preserved by compose and tensor; sigma witness names {} vs {} matches the fixture",
        term(&found.composite),
        term(&found.composite_alt)
    ))
}

fn criterion_6() -> Outcome {
    let b = ComplexMatrices::new([("Q", 2), ("R", 3), ("E", 2), ("F", 4)]).map_err(err)?;
    let (q, r, e, f4, i) = (w("Q"), w("R"), w("E"), w("F"), ObjectWord::unit());
    let systems = [q.clone(), r.clone()];
    // environment changes along isometries, dims 1 -> 2 -> 4
    let env_steps = [(i.clone(), e.clone()), (e.clone(), f4.clone()), (i.clone(), f4.clone()), (e.clone(), e.clone())];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut pairs, mut iso_pairs, mut equivalent) = (0, 0, 0);
    while pairs < 500 {
        let a = systems[rng.gen_range(0..2)].clone();
        let hb = systems[rng.gen_range(0..2)].clone();
        let (e0, e1) = env_steps[rng.gen_range(0..env_steps.len())].clone();
        let k = sample::complex_morphism(&mut rng, &b, &a, &e0.tensor(&hb)).map_err(err)?;
        let kind = pairs % 4;
        let (env2, k2) = match kind {
            0 => {
                let v = sample::isometry_morphism(&mut rng, &b, &e0, &e1).map_err(err)?;
                (e1.clone(), b.compose(&k, &b.tensor(&v, &b.identity(&hb))).map_err(err)?)
            }
            1 => {
                let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
                (e0.clone(), b.morphism(&a, &e0.tensor(&hb), k.matrix().scale(phase)).map_err(err)?)
            }
            2 => {
                let mut m = k.matrix().clone();
                let rows = b.dim(&hb);
                for col in 0..m.cols() {
                    for row in 0..rows {
                        let z = *m.get(row, col) * 2.0;
                        m.set(row, col, z);
                    }
                }
                (e0.clone(), b.morphism(&a, &e0.tensor(&hb), m).map_err(err)?)
            }
            _ => (e1.clone(), sample::complex_morphism(&mut rng, &b, &a, &e1.tensor(&hb)).map_err(err)?),
        };
        let d1 = dagger_comb(&b, e0, k).map_err(err)?;
        let d2 = dagger_comb(&b, env2, k2).map_err(err)?;
        let v1 = cpm_equal(&b, &d1, &d2).map_err(err)?;
        let v2 = equiv_comb(&b, &d1, &d2, ProbeSpec::BraidOnly).map_err(err)?;
        let v3 = equiv_optic(&b, &OpticRep(d1), &OpticRep(d2), OpticSpec::NameForm).map_err(err)?;
        check(v1.verdict == v2.verdict && v2.verdict == v3.verdict, || {
            format!("pair {pairs} (kind {kind}): cpm {} braid {} name {}", v1.verdict, v2.verdict, v3.verdict)
        })?;
        if kind == 0 {
            check(v1.is_equivalent(), || format!("isometry-related pair {pairs} is {}", v1.verdict))?;
            iso_pairs += 1;
        }
        equivalent += usize::from(v1.is_equivalent());
        pairs += 1;
    }

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let d1 = dagger_comb(&b, e.clone(), sample::complex_morphism(&mut rng, &b, &q, &e.tensor(&r)).map_err(err)?)
            .map_err(err)?;
        let d2 = dagger_comb(&b, f4.clone(), sample::complex_morphism(&mut rng, &b, &r, &f4.tensor(&q)).map_err(err)?)
            .map_err(err)?;
        let (t1, t2) = (to_cpm(&b, &d1).map_err(err)?, to_cpm(&b, &d2).map_err(err)?);
        let composite = to_cpm(&b, &comb_compose(&b, &d1, &d2).map_err(err)?).map_err(err)?;
        let separate = cpm_compose(&t1, &t2).map_err(err)?;
        let tensored = to_cpm(&b, &comb_tensor(&b, &d1, &d2).map_err(err)?).map_err(err)?;
        let split = cpm_tensor(&t1, &t2);
        worst = worst
            .max(composite.transfer.frobenius_distance(&separate.transfer))
            .max(tensored.transfer.frobenius_distance(&split.transfer));
    }
    check(worst <= FUNCTORIALITY_TOL, || format!("functoriality defect {worst:e}"))?;
    Ok(format!(
        "{pairs} pairs ({equivalent} equivalent, {iso_pairs} isometry-related all Equivalent), 3 deciders agree; functoriality defect {worst:.1e}"
    ))
}

fn criterion_7() -> Outcome {
    let b = UnitaryBackend::new([("P", 2), ("T", 3), ("F", 4)]).map_err(err)?;
    let objs = [w("P"), w("T"), w("F")];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let e = objs[rng.gen_range(0..3)].clone();
        let hb = objs[rng.gen_range(0..3)].clone();
        let a = e.tensor(&hb);
        let n = b.dim(&a);
        let f = b.unitary(&a, &a, sample::unitary(&mut rng, n)).map_err(err)?;
        let g = b.unitary(&a, &a, sample::unitary(&mut rng, n)).map_err(err)?;
        let up = b.unitary(&e, &e, sample::unitary(&mut rng, b.dim(&e))).map_err(err)?;
        let upd = b.dagger(&up).ok_or("no dagger")?;
        let id_b = b.identity(&hb);
        let c1 = CombRep::new(&b, e.clone(), f.clone(), g.clone()).map_err(err)?;
        let c2 = CombRep::new(
            &b,
            e.clone(),
            b.compose(&f, &b.tensor(&up, &id_b)).map_err(err)?,
            b.compose(&b.tensor(&upd, &id_b), &g).map_err(err)?,
        )
        .map_err(err)?;
        let d = unitary_comb_factor(&b, &c1, &c2).map_err(err)?;
        check(d.is_equivalent() && d.certified, || format!("inserted unitary on {e} not recovered: {}", d.verdict))?;
        let Some(Witness::Factorization { u, .. }) = &d.witness else { return Err("no factorization witness".into()) };
        worst = worst.max(u.matrix().frobenius_distance(up.matrix()));
        check(replay_factorization(&b, &c1, &c2, u).map_err(err)?, || "factorization does not replay".into())?;
    }
    check(worst <= FACTOR_RESIDUAL, || format!("residual {worst:e}"))?;

    let mut negatives = 0;
    for _ in 0..100 {
        let e = objs[rng.gen_range(0..3)].clone();
        let a = e.tensor(&e);
        let n = b.dim(&a);
        let f = b.unitary(&a, &a, sample::unitary(&mut rng, n)).map_err(err)?;
        let g = b.unitary(&a, &a, sample::unitary(&mut rng, n)).map_err(err)?;
        let swap = b.symmetry(&e, &e);
        let c1 = CombRep::new(&b, e.clone(), f.clone(), g.clone()).map_err(err)?;
        let c2 = CombRep::new(&b, e.clone(), b.compose(&f, &swap).map_err(err)?, b.compose(&swap, &g).map_err(err)?)
            .map_err(err)?;
        let d = unitary_comb_factor(&b, &c1, &c2).map_err(err)?;
        check(d.is_distinct(), || format!("swap-twisted comb on {e} reported {}", d.verdict))?;
        negatives += 1;
    }
    Ok(format!("100 inserted unitaries recovered (residual {worst:.1e}); {negatives} swap-twisted combs Distinct"))
}

fn criterion_8() -> Outcome {
    let qb = ComplexMatrices::new([("Q", 2), ("P", 2)]).map_err(err)?;
    let pair = (w("Q"), w("P"));
    let unit = star_unit(&qb, &pair).map_err(err)?;
    let counit = star_counit(&qb, &pair).map_err(err)?;
    let mut snake: f64 = 0.0;
    for (hole, inner, expect) in [(0, 0, poly_identity(&qb, &dual_pair(&pair))), (1, 1, poly_identity(&qb, &pair))] {
        let s = poly_compose_at(&qb, &counit, &unit, hole, inner).map_err(err)?;
        let l = poly_name(&qb, &s).map_err(err)?;
        let r = poly_name(&qb, &expect).map_err(err)?;
        snake = snake.max(l.matrix().frobenius_distance(r.matrix()));
    }
    check(snake <= SNAKE_TOL, || format!("snake defect {snake:e}"))?;

    let b = ComplexMatrices::new([("X", 2), ("Y", 3)]).map_err(err)?;
    let (x, y, i) = (w("X"), w("Y"), ObjectWord::unit());
    let objs = [x.clone(), y.clone(), i.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut name_defect: f64 = 0.0;
    for _ in 0..200 {
        let pick = |rng: &mut ChaCha8Rng| objs[rng.gen_range(0..3)].clone();
        let (a, ap, hb, hbp, e) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let c = sample::complex_comb(&mut rng, &b, (&a, &ap), (&hb, &hbp), &e).map_err(err)?;
        let p = PolyCombRep::from_comb(&c);
        let via = b.compose(&braid_eval(&b, &c).map_err(err)?, &name_alignment(&b, &p)).map_err(err)?;
        name_defect = name_defect.max(poly_name(&b, &p).map_err(err)?.matrix().frobenius_distance(via.matrix()));
    }
    check(name_defect <= NAME_TOL, || format!("one-hole name defect {name_defect:e}"))?;

    let mut plugs = 0;
    for _ in 0..100 {
        let s0 = sample::complex_morphism(&mut rng, &b, &x, &y.tensor(&x)).map_err(err)?;
        let s1 = sample::complex_morphism(&mut rng, &b, &y.tensor(&y), &x.tensor(&y)).map_err(err)?;
        let s2 = sample::complex_morphism(&mut rng, &b, &x.tensor(&x), &x).map_err(err)?;
        let holes = vec![(x.clone(), y.clone()), (y.clone(), x.clone())];
        let p = PolyCombRep::new(&b, holes, vec![(x.clone(), x.clone())], vec![y.clone(), x.clone()], vec![s0, s1, s2])
            .map_err(err)?;
        let hole = plugs % 2;
        let plugged = poly_compose_at(&b, &p, &poly_identity(&b, &p.holes[hole]), hole, 0).map_err(err)?;
        let d = poly_equiv(&b, &p, &plugged, ProbeSpec::BraidOnly).map_err(err)?;
        check(d.is_equivalent() && d.certified, || format!("identity plug {plugs} is {}", d.verdict))?;
        plugs += 1;
    }
    Ok(format!("snake defect {snake:.1e}; one-hole name defect {name_defect:.1e} on 200 samples; {plugs} identity plugs equivalent"))
}

fn criterion_9() -> Outcome {
    let src = FinFunBackend::new([("X", 2), ("Y", 3)]).map_err(err)?;
    let lin = Linearization::new(&src);
    let tgt = lin.target().map_err(err)?;
    let (x, y, i) = (w("X"), w("Y"), ObjectWord::unit());
    let budget = Budget::new(PROBE_BOUND);
    let families = [
        enumerate_combs(&src, (&x, &x), (&x, &x), &[i.clone(), x.clone()], &budget).map_err(err)?,
        enumerate_combs(&src, (&x, &y), (&y, &x), std::slice::from_ref(&i), &budget).map_err(err)?,
        enumerate_combs(&src, (&y, &x), (&x, &y), std::slice::from_ref(&i), &budget).map_err(err)?,
    ];
    let lift = |c: &CombRep<_>| lift_functor(&src, &tgt, &lin, c).map_err(err);
    let (mut composites, mut tensors, mut verdicts) = (0, 0, 0);
    for fam in &families {
        let lifted = fam.iter().map(lift).collect::<Result<Vec<_>, _>>()?;
        for (c1, l1) in fam.iter().zip(&lifted) {
            for (c2, l2) in fam.iter().zip(&lifted) {
                let here = equiv_optic(&src, &OpticRep(c1.clone()), &OpticRep(c2.clone()), OpticSpec::LensPair)
                    .map_err(err)?;
                let there = equiv_optic(&tgt, &OpticRep(l1.clone()), &OpticRep(l2.clone()), OpticSpec::NameForm)
                    .map_err(err)?;
                check(here.certified && there.certified && here.verdict == there.verdict, || {
                    format!("verdict {} in FinFun but {} after lifting", here.verdict, there.verdict)
                })?;
                verdicts += 1;
            }
        }
    }
    // every composable pair of families: (X,X) into (X,X), (Y,X) into (X,Y) and back
    for (outer, inner) in [(0, 0), (1, 2), (2, 1)] {
        for c in &families[outer] {
            for d in &families[inner] {
                let l = lift(&comb_compose(&src, c, d).map_err(err)?)?;
                let r = comb_compose(&tgt, &lift(c)?, &lift(d)?).map_err(err)?;
                check(same_representative(&tgt, &l, &r), || "lifting does not preserve composition".into())?;
                composites += 1;
            }
        }
    }
    // tensor across families
    for c in &families[0] {
        for d in &families[1] {
            let l = lift(&comb_tensor(&src, c, d).map_err(err)?)?;
            let r = comb_tensor(&tgt, &lift(c)?, &lift(d)?).map_err(err)?;
            check(same_representative(&tgt, &l, &r), || "lifting does not preserve tensor".into())?;
            tensors += 1;
        }
    }
    check(lin.map_object(&x) == x, || "objects are not preserved".into())?;
    Ok(format!("{verdicts} certified verdicts, {composites} composites and {tensors} tensors preserved"))
}

fn run_suite_json() -> Result<Vec<Vec<u8>>, String> {
    let dir = suite_dir();
    SUITE
        .iter()
        .map(|name| {
            let out = Command::new(env!("CARGO_BIN_EXE_combs"))
                .arg(dir.join(format!("{name}.theory")))
                .arg(dir.join(format!("{name}.program")))
                .args(["--format", "json"])
                .output()
                .map_err(err)?;
            check(out.status.success(), || format!("{name} exited with {}", out.status))?;
            Ok(out.stdout)
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let first = run_suite_json()?;
    let second = run_suite_json()?;
    for (name, (a, b)) in SUITE.iter().zip(first.iter().zip(&second)) {
        check(a == b, || format!("{name} differs between runs"))?;
    }
    let bytes: usize = first.iter().map(Vec::len).sum();
    Ok(format!("{} suite programs, {bytes} bytes of JSON identical across two runs", SUITE.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("idempotent counterexample", criterion_1),
        ("compact closed isomorphism", criterion_2),
        ("soundness of sliding", criterion_3),
        ("tau coarseness and sigma refutation", criterion_4),
        ("congruence", criterion_5),
        ("CPM triangle", criterion_6),
        ("unitary factorization", criterion_7),
        ("polycategory", criterion_8),
        ("functor lifting", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (n, (label, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => writeln!(std::io::stderr(), "PASS {}. {label}: {detail}", n + 1).unwrap(),
            Err(reason) => {
                writeln!(std::io::stderr(), "FAIL {}. {label}: {reason}", n + 1).unwrap();
                failed.push(n + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
