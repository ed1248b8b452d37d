//! Extensional combs: representatives `(f, g)_E`, their composition and tensor,
//! and deciders for the braid relation `∼σ`, the un-extended relation `∼τ` and
//! extensional equivalence `∼comb`.

use crate::backend::{compose_all, trace_right, whisker_left, whisker_right, Backend, Budget};
use crate::decision::{Coverage, Decision, Probe, Witness};
use crate::error::{Error, Result};
use crate::object::ObjectWord;
use crate::optic;

/// A comb `(A, A′) → (B, B′)` with environment `E`, bottom `f : A → E ⊗ B` and
/// top `g : E ⊗ B′ → A′`.
#[derive(Debug, Clone)]
pub struct CombRep<M> {
    pub a: ObjectWord,
    pub a_prime: ObjectWord,
    pub b: ObjectWord,
    pub b_prime: ObjectWord,
    pub env: ObjectWord,
    pub bottom: M,
    pub top: M,
}

pub(crate) fn split<B: Backend + ?Sized>(b: &B, word: &ObjectWord, prefix: &ObjectWord) -> Result<ObjectWord> {
    b.split_prefix(word, prefix).ok_or_else(|| Error::BadSplit {
        cod: word.to_string(),
        env: prefix.to_string(),
        rest: "?".into(),
    })
}

impl<M: Clone> CombRep<M> {
    /// Builds a comb, reading the boundary off the two halves.
    pub fn new<B: Backend<Mor = M> + ?Sized>(b: &B, env: ObjectWord, bottom: M, top: M) -> Result<Self> {
        let a = b.dom(&bottom);
        let a_prime = b.cod(&top);
        let out = split(b, &b.cod(&bottom), &env)?;
        let inn = split(b, &b.dom(&top), &env)?;
        Ok(CombRep { a, a_prime, b: out, b_prime: inn, env, bottom, top })
    }

    /// Builds a comb with a declared boundary, checking every component type.
    pub fn with_boundary<B: Backend<Mor = M> + ?Sized>(
        b: &B,
        outer: (&ObjectWord, &ObjectWord),
        hole: (&ObjectWord, &ObjectWord),
        env: ObjectWord,
        bottom: M,
        top: M,
    ) -> Result<Self> {
        let c = Self::new(b, env, bottom, top)?;
        let checks = [
            ("bottom domain", outer.0, &c.a),
            ("top codomain", outer.1, &c.a_prime),
            ("bottom codomain", hole.0, &c.b),
            ("top domain", hole.1, &c.b_prime),
        ];
        for (ctx, want, got) in checks {
            if !b.same_object(want, got) {
                return Err(Error::mismatch(ctx, want, got));
            }
        }
        Ok(c)
    }

    /// `(1_A, 1_{A′})_I : (A, A′) → (A, A′)`
    pub fn identity<B: Backend<Mor = M> + ?Sized>(b: &B, a: &ObjectWord, a_prime: &ObjectWord) -> Self {
        CombRep {
            a: a.clone(),
            a_prime: a_prime.clone(),
            b: a.clone(),
            b_prime: a_prime.clone(),
            env: ObjectWord::unit(),
            bottom: b.identity(a),
            top: b.identity(a_prime),
        }
    }

    pub fn source(&self) -> (&ObjectWord, &ObjectWord) {
        (&self.a, &self.a_prime)
    }

    pub fn target(&self) -> (&ObjectWord, &ObjectWord) {
        (&self.b, &self.b_prime)
    }
}

fn describe<M>(c: &CombRep<M>) -> String {
    format!("({}, {}) -> ({}, {})", c.a, c.a_prime, c.b, c.b_prime)
}

/// Fails with `BoundaryMismatch` unless both combs have the same boundary.
pub fn same_boundary<B: Backend + ?Sized>(b: &B, c1: &CombRep<B::Mor>, c2: &CombRep<B::Mor>) -> Result<()> {
    let same = b.same_object(&c1.a, &c2.a)
        && b.same_object(&c1.a_prime, &c2.a_prime)
        && b.same_object(&c1.b, &c2.b)
        && b.same_object(&c1.b_prime, &c2.b_prime);
    if same {
        Ok(())
    } else {
        Err(Error::BoundaryMismatch(format!("{} vs {}", describe(c1), describe(c2))))
    }
}

/// Equality of representatives, not of comb classes.
pub fn same_representative<B: Backend + ?Sized>(b: &B, c1: &CombRep<B::Mor>, c2: &CombRep<B::Mor>) -> bool {
    same_boundary(b, c1, c2).is_ok()
        && b.same_object(&c1.env, &c2.env)
        && b.equal(&c1.bottom, &c2.bottom)
        && b.equal(&c1.top, &c2.top)
}

/// `c2 ∘ c1 = ((1_{E₁} ⊗ f₂) f₁, g₁ (1_{E₁} ⊗ g₂))_{E₁ ⊗ E₂}`
pub fn comb_compose<B: Backend + ?Sized>(b: &B, c1: &CombRep<B::Mor>, c2: &CombRep<B::Mor>) -> Result<CombRep<B::Mor>> {
    if !b.same_object(&c1.b, &c2.a) || !b.same_object(&c1.b_prime, &c2.a_prime) {
        return Err(Error::BoundaryMismatch(format!("cannot plug {} into the hole of {}", describe(c2), describe(c1))));
    }
    let bottom = b.compose(&c1.bottom, &whisker_left(b, &c1.env, &c2.bottom))?;
    let top = b.compose(&whisker_left(b, &c1.env, &c2.top), &c1.top)?;
    Ok(CombRep {
        a: c1.a.clone(),
        a_prime: c1.a_prime.clone(),
        b: c2.b.clone(),
        b_prime: c2.b_prime.clone(),
        env: c1.env.tensor(&c2.env),
        bottom,
        top,
    })
}

/// Tensor of combs; the second environment is moved past the first comb's
/// hole wires so the result has environment `E₁ ⊗ E₂`.
pub fn comb_tensor<B: Backend + ?Sized>(b: &B, c1: &CombRep<B::Mor>, c2: &CombRep<B::Mor>) -> Result<CombRep<B::Mor>> {
    let route_out = b.tensor(&whisker_left(b, &c1.env, &b.symmetry(&c1.b, &c2.env)), &b.identity(&c2.b));
    let bottom = b.compose(&b.tensor(&c1.bottom, &c2.bottom), &route_out)?;
    let route_in = b.tensor(&whisker_left(b, &c1.env, &b.symmetry(&c2.env, &c1.b_prime)), &b.identity(&c2.b_prime));
    let top = b.compose(&route_in, &b.tensor(&c1.top, &c2.top))?;
    Ok(CombRep {
        a: c1.a.tensor(&c2.a),
        a_prime: c1.a_prime.tensor(&c2.a_prime),
        b: c1.b.tensor(&c2.b),
        b_prime: c1.b_prime.tensor(&c2.b_prime),
        env: c1.env.tensor(&c2.env),
        bottom,
        top,
    })
}

/// Evaluates the comb on a filler `λ : C ⊗ B → D ⊗ B′`, giving `C ⊗ A → D ⊗ A′`:
/// `(1_D ⊗ g)(σ_{E,D} ⊗ 1_{B′})(1_E ⊗ λ)(σ_{C,E} ⊗ 1_B)(1_C ⊗ f)`.
pub fn extended_eval<B: Backend + ?Sized>(
    b: &B,
    c: &CombRep<B::Mor>,
    side_in: &ObjectWord,
    side_out: &ObjectWord,
    filler: &B::Mor,
) -> Result<B::Mor> {
    let want_dom = side_in.tensor(&c.b);
    let want_cod = side_out.tensor(&c.b_prime);
    if !b.same_object(&b.dom(filler), &want_dom) {
        return Err(Error::mismatch("filler domain", &want_dom, &b.dom(filler)));
    }
    if !b.same_object(&b.cod(filler), &want_cod) {
        return Err(Error::mismatch("filler codomain", &want_cod, &b.cod(filler)));
    }
    let s1 = whisker_left(b, side_in, &c.bottom);
    let s2 = whisker_right(b, &b.symmetry(side_in, &c.env), &c.b);
    let s3 = whisker_left(b, &c.env, filler);
    let s4 = whisker_right(b, &b.symmetry(&c.env, side_out), &c.b_prime);
    let s5 = whisker_left(b, side_out, &c.top);
    compose_all(b, &[&s1, &s2, &s3, &s4, &s5])
}

/// The name of the comb, `(g ⊗ 1_B)(1_E ⊗ σ_{B,B′})(f ⊗ 1_{B′}) : A ⊗ B′ → A′ ⊗ B`.
pub fn braid_eval<B: Backend + ?Sized>(b: &B, c: &CombRep<B::Mor>) -> Result<B::Mor> {
    let s1 = whisker_right(b, &c.bottom, &c.b_prime);
    let s2 = whisker_left(b, &c.env, &b.symmetry(&c.b, &c.b_prime));
    let s3 = whisker_right(b, &c.top, &c.b);
    compose_all(b, &[&s1, &s2, &s3])
}

/// The probe realising [`braid_eval`]: `C = B′`, `D = B`, `λ = σ_{B′,B}`.
pub fn braid_probe<B: Backend + ?Sized>(b: &B, c1: &CombRep<B::Mor>, c2: &CombRep<B::Mor>) -> Result<Probe<B::Mor>> {
    let filler = b.symmetry(&c1.b_prime, &c1.b);
    Ok(Probe {
        extensions: vec![(c1.b_prime.clone(), c1.b.clone())],
        lhs: extended_eval(b, c1, &c1.b_prime, &c1.b, &filler)?,
        rhs: extended_eval(b, c2, &c1.b_prime, &c1.b, &filler)?,
        fillers: vec![filler],
    })
}

/// Name of `d ∘ c` computed from the names of `c` and `d` alone, by feeding
/// the `B` output of one name into the other and tracing out the `B′` loop.
/// Agrees with `braid_eval(comb_compose(c, d))` on compact closed backends.
pub fn name_of_composite<B: Backend + ?Sized>(b: &B, c: &CombRep<B::Mor>, d: &CombRep<B::Mor>) -> Result<B::Mor> {
    let nc = braid_eval(b, c)?;
    let nd = braid_eval(b, d)?;
    let (a, ap, bp, cc, cp) = (&c.a, &c.a_prime, &c.b_prime, &d.b, &d.b_prime);
    // A C′ B′ → A B′ C′ → A′ B C′ → A′ B′ C → A′ C B′
    let s1 = whisker_left(b, a, &b.symmetry(cp, bp));
    let s2 = whisker_right(b, &nc, cp);
    let s3 = whisker_left(b, ap, &nd);
    let s4 = whisker_left(b, ap, &b.symmetry(bp, cc));
    let h = compose_all(b, &[&s1, &s2, &s3, &s4])?;
    trace_right(b, &h, &a.tensor(cp), &ap.tensor(cc), bp)
}

/// Probe strategy for [`equiv_comb`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeSpec {
    /// Pick by capability: names when compact closed, lens pairs when
    /// cartesian, otherwise enumeration with the default bound.
    Auto,
    BraidOnly,
    CartesianPair,
    Enumerate(usize),
    /// Fillers restricted to `λ = h† ∘ h`; refutation only.
    PositiveOnly(usize),
}

impl ProbeSpec {
    pub const DEFAULT_BOUND: usize = 2;

    pub fn resolve(self, caps: crate::backend::Capabilities) -> ProbeSpec {
        match self {
            ProbeSpec::Auto if caps.compact_closed => ProbeSpec::BraidOnly,
            ProbeSpec::Auto if caps.cartesian => ProbeSpec::CartesianPair,
            ProbeSpec::Auto => ProbeSpec::Enumerate(Self::DEFAULT_BOUND),
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProbeSpec::Auto => "auto",
            ProbeSpec::BraidOnly => "braid",
            ProbeSpec::CartesianPair => "cartesian-pair",
            ProbeSpec::Enumerate(_) => "enumerate",
            ProbeSpec::PositiveOnly(_) => "positive",
        }
    }
}

/// `∼σ`: equality of names. Always certified.
pub fn equiv_sigma<B: Backend + ?Sized>(b: &B, c1: &CombRep<B::Mor>, c2: &CombRep<B::Mor>) -> Result<Decision<B::Mor>> {
    same_boundary(b, c1, c2)?;
    let probe = braid_probe(b, c1, c2)?;
    let d = if b.equal(&probe.lhs, &probe.rhs) {
        Decision::equivalent("braid", true)
            .with_witness(Witness::SameInvariant { label: "name", value: vec![probe.lhs] })
    } else {
        Decision::distinct("braid", Witness::Probe(probe))
    };
    Ok(d.with_coverage(Coverage { probes: 1, objects: 1, complete: true, states: 0 }).with_tolerance(b.tolerance()))
}

/// `∼τ`: agreement on every un-extended filler `λ : B → B′`.
pub fn equiv_tau<B: Backend + ?Sized>(
    b: &B,
    c1: &CombRep<B::Mor>,
    c2: &CombRep<B::Mor>,
    bound: usize,
) -> Result<Decision<B::Mor>> {
    same_boundary(b, c1, c2)?;
    if !b.capabilities().enumerable {
        return Err(Error::NotEnumerable(b.kind()));
    }
    let unit = ObjectWord::unit();
    let hom = b.enumerate_hom(&c1.b, &c1.b_prime, &Budget::new(bound))?;
    for (i, filler) in hom.items.iter().enumerate() {
        let lhs = extended_eval(b, c1, &unit, &unit, filler)?;
        let rhs = extended_eval(b, c2, &unit, &unit, filler)?;
        if !b.equal(&lhs, &rhs) {
            let probe =
                Probe { extensions: vec![(unit.clone(), unit.clone())], fillers: vec![filler.clone()], lhs, rhs };
            return Ok(Decision::distinct("unextended", Witness::Probe(probe))
                .with_coverage(Coverage { probes: i + 1, objects: 1, complete: hom.complete, states: 0 })
                .with_tolerance(b.tolerance()));
        }
    }
    Ok(Decision::equivalent("unextended", hom.complete)
        .with_coverage(Coverage { probes: hom.len(), objects: 1, complete: hom.complete, states: 0 })
        .with_tolerance(b.tolerance()))
}

/// `∼comb`: agreement on every side-extended filler.
pub fn equiv_comb<B: Backend + ?Sized>(
    b: &B,
    c1: &CombRep<B::Mor>,
    c2: &CombRep<B::Mor>,
    spec: ProbeSpec,
) -> Result<Decision<B::Mor>> {
    same_boundary(b, c1, c2)?;
    let caps = b.capabilities();
    let incompatible = |s: ProbeSpec| Error::IncompatibleStrategy { strategy: s.name().into(), backend: b.kind() };
    let d = match spec.resolve(caps) {
        ProbeSpec::BraidOnly => {
            if !caps.compact_closed {
                return Err(incompatible(ProbeSpec::BraidOnly));
            }
            equiv_sigma(b, c1, c2)?
        }
        ProbeSpec::CartesianPair => {
            if !caps.cartesian {
                return Err(incompatible(ProbeSpec::CartesianPair));
            }
            optic::lens_decision(b, c1, c2)?
        }
        ProbeSpec::Enumerate(bound) => enumerate_probes(b, c1, c2, bound)?,
        ProbeSpec::PositiveOnly(bound) => {
            if !caps.dagger {
                return Err(incompatible(ProbeSpec::PositiveOnly(bound)));
            }
            positive_probes(b, c1, c2, bound)?
        }
        ProbeSpec::Auto => unreachable!("resolved above"),
    };
    Ok(d.with_tolerance(b.tolerance()))
}

/// Probes every `(C, D, λ)` with `C`, `D` of length at most `bound`, in word
/// order, stopping at the first disagreement.
fn enumerate_probes<B: Backend + ?Sized>(
    b: &B,
    c1: &CombRep<B::Mor>,
    c2: &CombRep<B::Mor>,
    bound: usize,
) -> Result<Decision<B::Mor>> {
    if !b.capabilities().enumerable {
        return Err(Error::NotEnumerable(b.kind()));
    }
    let budget = Budget::new(bound);
    let objects = b.enumerate_objects(&budget);
    let mut complete = objects.complete || b.probe_saturation().is_some_and(|s| s <= bound);
    let mut probes = 0;
    for side_in in &objects.items {
        for side_out in &objects.items {
            let hom = b.enumerate_hom(&side_in.tensor(&c1.b), &side_out.tensor(&c1.b_prime), &budget)?;
            complete &= hom.complete;
            for filler in &hom.items {
                probes += 1;
                let lhs = extended_eval(b, c1, side_in, side_out, filler)?;
                let rhs = extended_eval(b, c2, side_in, side_out, filler)?;
                if !b.equal(&lhs, &rhs) {
                    let probe = Probe {
                        extensions: vec![(side_in.clone(), side_out.clone())],
                        fillers: vec![filler.clone()],
                        lhs,
                        rhs,
                    };
                    return Ok(Decision::distinct("enumerate", Witness::Probe(probe)).with_coverage(Coverage {
                        probes,
                        objects: objects.len(),
                        complete,
                        states: 0,
                    }));
                }
            }
        }
    }
    Ok(Decision::equivalent("enumerate", complete).with_coverage(Coverage {
        probes,
        objects: objects.len(),
        complete,
        states: 0,
    }))
}

/// Fillers `λ = h† ∘ h` for `h` ranging over enumerated `C ⊗ B → X`, with
/// `D = C`. Never certifies equivalence.
fn positive_probes<B: Backend + ?Sized>(
    b: &B,
    c1: &CombRep<B::Mor>,
    c2: &CombRep<B::Mor>,
    bound: usize,
) -> Result<Decision<B::Mor>> {
    if !b.same_object(&c1.b, &c1.b_prime) {
        return Err(Error::UnsupportedShape("positive fillers need B = B′".into()));
    }
    let budget = Budget::new(bound);
    let objects = b.enumerate_objects(&budget);
    let mut probes = 0;
    for side in &objects.items {
        let dom = side.tensor(&c1.b);
        for target in &objects.items {
            for h in b.enumerate_hom(&dom, target, &budget)?.items {
                let hd = b.dagger(&h).ok_or(Error::NotDaggerBackend(b.kind()))?;
                let filler = b.compose(&h, &hd)?;
                probes += 1;
                let lhs = extended_eval(b, c1, side, side, &filler)?;
                let rhs = extended_eval(b, c2, side, side, &filler)?;
                if !b.equal(&lhs, &rhs) {
                    let probe =
                        Probe { extensions: vec![(side.clone(), side.clone())], fillers: vec![filler], lhs, rhs };
                    return Ok(Decision::distinct("positive", Witness::Probe(probe)).with_coverage(Coverage {
                        probes,
                        objects: objects.len(),
                        complete: false,
                        states: 0,
                    }));
                }
            }
        }
    }
    Ok(Decision::equivalent("positive", false).with_coverage(Coverage {
        probes,
        objects: objects.len(),
        complete: false,
        states: 0,
    }))
}

/// Every representative `(A, A′) → (B, B′)` whose environment is one of `envs`
/// and whose halves come from the backend's hom enumeration.
pub fn enumerate_combs<B: Backend + ?Sized>(
    b: &B,
    outer: (&ObjectWord, &ObjectWord),
    hole: (&ObjectWord, &ObjectWord),
    envs: &[ObjectWord],
    budget: &Budget,
) -> Result<Vec<CombRep<B::Mor>>> {
    let mut out = Vec::new();
    for env in envs {
        let fs = b.enumerate_hom(outer.0, &env.tensor(hole.0), budget)?;
        let gs = b.enumerate_hom(&env.tensor(hole.1), outer.1, budget)?;
        for f in &fs.items {
            for g in &gs.items {
                out.push(CombRep::with_boundary(b, outer, hole, env.clone(), f.clone(), g.clone())?);
            }
        }
    }
    Ok(out)
}

/// Combs `c ∼σ c′` and a comb `d` with `d ∘ c ≁σ d ∘ c′`.
#[derive(Debug, Clone)]
pub struct CongruenceFailure<M> {
    pub first: CombRep<M>,
    pub first_alt: CombRep<M>,
    pub second: CombRep<M>,
    pub composite: M,
    pub composite_alt: M,
}

/// Bounded search for a failure of `∼σ` to be a congruence for composition:
/// scans `∼σ`-related pairs from `firsts` against every composable `d` in
/// `seconds` (taking `d′ = d`) and returns the first failure found.
pub fn find_sigma_congruence_failure<B: Backend + ?Sized>(
    b: &B,
    firsts: &[CombRep<B::Mor>],
    seconds: &[CombRep<B::Mor>],
) -> Result<Option<CongruenceFailure<B::Mor>>> {
    let names = firsts.iter().map(|c| braid_eval(b, c)).collect::<Result<Vec<_>>>()?;
    for (i, c) in firsts.iter().enumerate() {
        for (j, c_alt) in firsts.iter().enumerate().skip(i + 1) {
            if same_boundary(b, c, c_alt).is_err() || !b.equal(&names[i], &names[j]) {
                continue;
            }
            for d in seconds {
                if !b.same_object(&c.b, &d.a) || !b.same_object(&c.b_prime, &d.a_prime) {
                    continue;
                }
                let n1 = braid_eval(b, &comb_compose(b, c, d)?)?;
                let n2 = braid_eval(b, &comb_compose(b, c_alt, d)?)?;
                if !b.equal(&n1, &n2) {
                    return Ok(Some(CongruenceFailure {
                        first: c.clone(),
                        first_alt: c_alt.clone(),
                        second: d.clone(),
                        composite: n1,
                        composite_alt: n2,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// A strict symmetric monoidal functor between backends.
pub trait StrictFunctor<S: Backend + ?Sized, T: Backend + ?Sized> {
    fn map_object(&self, w: &ObjectWord) -> ObjectWord;
    fn map_morphism(&self, m: &S::Mor) -> Result<T::Mor>;
}

/// The identity functor on any backend.
pub struct IdentityFunctor;

impl<B: Backend + ?Sized> StrictFunctor<B, B> for IdentityFunctor {
    fn map_object(&self, w: &ObjectWord) -> ObjectWord {
        w.clone()
    }

    fn map_morphism(&self, m: &B::Mor) -> Result<B::Mor> {
        Ok(m.clone())
    }
}

/// `(f, g)_E ↦ (Ff, Fg)_{FE}`
pub fn lift_functor<S, T, F>(src: &S, tgt: &T, functor: &F, c: &CombRep<S::Mor>) -> Result<CombRep<T::Mor>>
where
    S: Backend + ?Sized,
    T: Backend + ?Sized,
    F: StrictFunctor<S, T> + ?Sized,
{
    let bottom = functor.map_morphism(&c.bottom)?;
    let top = functor.map_morphism(&c.top)?;
    let check = |m: &T::Mor, d: &ObjectWord, k: &ObjectWord| -> Result<()> {
        let (want_d, want_k) = (functor.map_object(d), functor.map_object(k));
        if tgt.same_object(&tgt.dom(m), &want_d) && tgt.same_object(&tgt.cod(m), &want_k) {
            Ok(())
        } else {
            Err(Error::IllTypedFunctor(format!(
                "image has type {} -> {}, expected {want_d} -> {want_k}",
                tgt.dom(m),
                tgt.cod(m)
            )))
        }
    };
    check(&bottom, &src.dom(&c.bottom), &src.cod(&c.bottom))?;
    check(&top, &src.dom(&c.top), &src.cod(&c.top))?;
    Ok(CombRep {
        a: functor.map_object(&c.a),
        a_prime: functor.map_object(&c.a_prime),
        b: functor.map_object(&c.b),
        b_prime: functor.map_object(&c.b_prime),
        env: functor.map_object(&c.env),
        bottom,
        top,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::idempotent::IdempotentBackend;
    use crate::instances::matrix::BoolMatrices;

    fn counterexample(
    ) -> (IdempotentBackend, CombRep<<IdempotentBackend as Backend>::Mor>, CombRep<<IdempotentBackend as Backend>::Mor>)
    {
        let b = IdempotentBackend::single();
        let a = IdempotentBackend::object(1);
        let f = b.generator("f").unwrap();
        let id = b.identity(&a);
        let c1 = CombRep::new(&b, ObjectWord::unit(), id.clone(), f.clone()).unwrap();
        let c2 = CombRep::new(&b, ObjectWord::unit(), f, id).unwrap();
        (b, c1, c2)
    }

    #[test]
    fn extended_eval_without_sides_is_plain_composite() {
        let (b, c1, _) = counterexample();
        let a = IdempotentBackend::object(1);
        let v = extended_eval(&b, &c1, &ObjectWord::unit(), &ObjectWord::unit(), &b.identity(&a)).unwrap();
        assert!(b.equal(&v, &b.compose(&c1.bottom, &c1.top).unwrap()));
    }

    #[test]
    fn identity_comb_evaluates_to_filler() {
        let b = BoolMatrices::new([("X", 2)]).unwrap();
        let x = ObjectWord::single("X");
        let id = CombRep::identity(&b, &x, &x);
        for filler in b.enumerate_hom(&x.tensor(&x), &x.tensor(&x), &Budget::new(1)).unwrap().items.iter().step_by(977)
        {
            let out = extended_eval(&b, &id, &x, &x, filler).unwrap();
            assert!(b.equal(&out, filler));
        }
    }

    #[test]
    fn identity_comb_names_the_swap() {
        let b = BoolMatrices::new([("X", 2)]).unwrap();
        let x = ObjectWord::single("X");
        let n = braid_eval(&b, &CombRep::identity(&b, &x, &x)).unwrap();
        assert!(b.equal(&n, &b.symmetry(&x, &x)));
    }

    #[test]
    fn counterexample_composites_are_both_f() {
        let (b, c1, c2) = counterexample();
        let k = comb_compose(&b, &c2, &c1).unwrap();
        let f = b.generator("f").unwrap();
        assert!(b.equal(&k.bottom, &f) && b.equal(&k.top, &f));
    }

    #[test]
    fn counterexample_is_comb_equivalent() {
        let (b, c1, c2) = counterexample();
        let d = equiv_comb(&b, &c1, &c2, ProbeSpec::Enumerate(3)).unwrap();
        assert!(d.is_equivalent() && d.certified, "{d:?}");
        let s = equiv_sigma(&b, &c1, &c2).unwrap();
        assert!(s.is_equivalent());
    }

    #[test]
    fn braid_only_needs_compact_structure() {
        let (b, c1, c2) = counterexample();
        assert!(matches!(equiv_comb(&b, &c1, &c2, ProbeSpec::BraidOnly), Err(Error::IncompatibleStrategy { .. })));
    }

    #[test]
    fn boundary_mismatch_is_reported() {
        let (b, c1, _) = counterexample();
        let a = IdempotentBackend::object(2);
        let other = CombRep::identity(&b, &a, &a);
        assert!(matches!(equiv_sigma(&b, &c1, &other), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn two_idempotents_break_sigma_congruence() {
        let b = IdempotentBackend::new(["f", "h"]).unwrap();
        let a = IdempotentBackend::object(1);
        let i = ObjectWord::unit();
        let budget = Budget::new(2);
        let firsts = enumerate_combs(&b, (&a, &a), (&a, &a), std::slice::from_ref(&i), &budget).unwrap();
        let seconds = enumerate_combs(&b, (&a, &a), (&i, &i), std::slice::from_ref(&a), &budget).unwrap();
        let w = find_sigma_congruence_failure(&b, &firsts, &seconds).unwrap().expect("a failure exists");
        assert!(b.equal(&braid_eval(&b, &w.first).unwrap(), &braid_eval(&b, &w.first_alt).unwrap()));
        assert!(!b.equal(&w.composite, &w.composite_alt));
    }

    #[test]
    fn one_idempotent_has_no_sigma_congruence_failure() {
        let b = IdempotentBackend::single();
        let a = IdempotentBackend::object(1);
        let i = ObjectWord::unit();
        let budget = Budget::new(2);
        let firsts = enumerate_combs(&b, (&a, &a), (&a, &a), std::slice::from_ref(&i), &budget).unwrap();
        let seconds = enumerate_combs(&b, (&a, &a), (&i, &i), std::slice::from_ref(&a), &budget).unwrap();
        assert!(find_sigma_congruence_failure(&b, &firsts, &seconds).unwrap().is_none());
    }
}
