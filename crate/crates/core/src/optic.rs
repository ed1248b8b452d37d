//! Optics: the same representatives as combs, quotiented by sliding maps
//! along the environment wire.

use std::collections::VecDeque;

use num_complex::Complex64;

use crate::backend::{whisker_right, Backend, Budget};
use crate::comb::{braid_probe, equiv_comb, extended_eval, same_boundary, same_representative, CombRep, ProbeSpec};
use crate::decision::{Coverage, Decision, Probe, Witness};
use crate::error::{Error, Result};
use crate::instances::linalg::tensor_separate;
use crate::instances::matrix::{MatMorphism, Matrix};
use crate::instances::unitary::UnitaryBackend;
use crate::object::ObjectWord;

/// An optic representative. The carrier is shared with combs; only the
/// equivalence differs.
#[derive(Debug, Clone)]
pub struct OpticRep<M>(pub CombRep<M>);

impl<M> OpticRep<M> {
    pub fn comb(&self) -> &CombRep<M> {
        &self.0
    }
}

/// The quotient functor to combs is the identity on carriers.
pub fn optic_to_comb<M: Clone>(rep: &OpticRep<M>) -> CombRep<M> {
    rep.0.clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlideDirection {
    /// `((v ⊗ 1) f₀, g)_E ↦ (f₀, g (v ⊗ 1))_{E₀}` with `v : E₀ → E`.
    TowardTop,
    /// `(f, g₀ (v ⊗ 1))_E ↦ ((v ⊗ 1) f, g₀)_{E′}` with `v : E → E′`.
    TowardBottom,
}

/// One slide of `v` across the environment wire. `factor` is the half the
/// move leaves behind: `f₀` when sliding toward the top, `g₀` toward the
/// bottom.
#[derive(Debug, Clone)]
pub struct SlideMove<M> {
    pub v: M,
    pub direction: SlideDirection,
    pub factor: M,
}

pub fn slide<B: Backend + ?Sized>(b: &B, rep: &OpticRep<B::Mor>, mv: &SlideMove<B::Mor>) -> Result<OpticRep<B::Mor>> {
    let c = &rep.0;
    let (vd, vc) = (b.dom(&mv.v), b.cod(&mv.v));
    let next = match mv.direction {
        SlideDirection::TowardTop => {
            if !b.same_object(&vc, &c.env) {
                return Err(Error::NonComposableMove(format!("v ends at {vc}, environment is {}", c.env)));
            }
            let expect = b
                .compose(&mv.factor, &whisker_right(b, &mv.v, &c.b))
                .map_err(|e| Error::NonComposableMove(e.to_string()))?;
            if !b.equal(&expect, &c.bottom) {
                return Err(Error::NonComposableMove("bottom does not factor through v".into()));
            }
            let top = b.compose(&whisker_right(b, &mv.v, &c.b_prime), &c.top)?;
            CombRep { env: vd, bottom: mv.factor.clone(), top, ..c.clone() }
        }
        SlideDirection::TowardBottom => {
            if !b.same_object(&vd, &c.env) {
                return Err(Error::NonComposableMove(format!("v starts at {vd}, environment is {}", c.env)));
            }
            let expect = b
                .compose(&whisker_right(b, &mv.v, &c.b_prime), &mv.factor)
                .map_err(|e| Error::NonComposableMove(e.to_string()))?;
            if !b.equal(&expect, &c.top) {
                return Err(Error::NonComposableMove("top does not factor through v".into()));
            }
            let bottom = b.compose(&c.bottom, &whisker_right(b, &mv.v, &c.b))?;
            CombRep { env: vc, bottom, top: mv.factor.clone(), ..c.clone() }
        }
    };
    Ok(OpticRep(next))
}

/// The canonical pair of an optic over a cartesian base.
#[derive(Debug, Clone)]
pub struct LensPair<M> {
    /// `A → B`
    pub get: M,
    /// `A × B′ → A′`
    pub put: M,
}

/// `get = π_B ∘ f`, `put = g ∘ ⟨π_E ∘ f ∘ π₁, π₂⟩`.
pub fn lens_pair<B: Backend + ?Sized>(b: &B, c: &CombRep<B::Mor>) -> Result<LensPair<B::Mor>> {
    let cart = b.cartesian().ok_or(Error::NotCartesian(b.kind()))?;
    let get = b.compose(&c.bottom, &cart.project_right(&c.env, &c.b))?;
    let residual = b.compose(&cart.project_left(&c.a, &c.b_prime), &c.bottom)?;
    let residual = b.compose(&residual, &cart.project_left(&c.env, &c.b))?;
    let paired = cart.pair(&residual, &cart.project_right(&c.a, &c.b_prime))?;
    let put = b.compose(&paired, &c.top)?;
    Ok(LensPair { get, put })
}

/// Objects generating the backend all have chosen states.
fn inhabited<B: Backend + ?Sized>(b: &B) -> bool {
    b.cartesian().is_some_and(|cart| {
        b.object_generators().iter().all(|g| cart.inhabitant(&ObjectWord::single(g.clone())).is_some())
    })
}

/// Compares lens pairs. A disagreement is turned into an extended probe: the
/// filler `⟨1_B, φ_{B′} ∘ !⟩` exposes `get`, the filler `π₁ : B′ × B → B′`
/// exposes `put`.
pub(crate) fn lens_decision<B: Backend + ?Sized>(
    b: &B,
    c1: &CombRep<B::Mor>,
    c2: &CombRep<B::Mor>,
) -> Result<Decision<B::Mor>> {
    if !inhabited(b) {
        return Err(Error::NotCartesian(b.kind()));
    }
    let cart = b.cartesian().ok_or(Error::NotCartesian(b.kind()))?;
    let l1 = lens_pair(b, c1)?;
    let l2 = lens_pair(b, c2)?;
    if b.equal(&l1.get, &l2.get) && b.equal(&l1.put, &l2.put) {
        return Ok(Decision::equivalent("lens", true)
            .with_witness(Witness::SameInvariant { label: "lens", value: vec![l1.get, l1.put] }));
    }
    let unit = ObjectWord::unit();
    let state = cart.inhabitant(&c1.b_prime).ok_or(Error::NotCartesian(b.kind()))?;
    let expose_get = cart.pair(&b.identity(&c1.b), &b.compose(&cart.delete(&c1.b), &state)?)?;
    let expose_put = cart.project_left(&c1.b_prime, &c1.b);
    let candidates = [(unit.clone(), c1.b.clone(), expose_get), (c1.b_prime.clone(), unit, expose_put)];
    for (side_in, side_out, filler) in candidates {
        let lhs = extended_eval(b, c1, &side_in, &side_out, &filler)?;
        let rhs = extended_eval(b, c2, &side_in, &side_out, &filler)?;
        if !b.equal(&lhs, &rhs) {
            let probe = Probe { extensions: vec![(side_in, side_out)], fillers: vec![filler], lhs, rhs };
            return Ok(Decision::distinct("lens", Witness::Probe(probe)));
        }
    }
    Ok(Decision::distinct(
        "lens",
        Witness::Invariants { label: "lens", lhs: vec![l1.get, l1.put], rhs: vec![l2.get, l2.put] },
    ))
}

/// Strategy for [`equiv_optic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpticSpec {
    Auto,
    /// Compare names; complete on compact closed backends.
    NameForm,
    /// Compare lens pairs; complete on cartesian backends with inhabitants.
    LensPair,
    /// Compare environment factorizations; complete for unitary backends.
    Factorization,
    /// Breadth-first search over slides with hom-sets enumerated up to the bound.
    Zigzag(usize),
}

impl OpticSpec {
    pub const DEFAULT_BOUND: usize = 2;
    /// Cap on explored representatives in [`OpticSpec::Zigzag`].
    pub const MAX_STATES: usize = 2000;

    pub fn resolve(self, caps: crate::backend::Capabilities) -> OpticSpec {
        match self {
            OpticSpec::Auto if caps.compact_closed => OpticSpec::NameForm,
            OpticSpec::Auto if caps.cartesian => OpticSpec::LensPair,
            OpticSpec::Auto if caps.unitary => OpticSpec::Factorization,
            OpticSpec::Auto => OpticSpec::Zigzag(Self::DEFAULT_BOUND),
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OpticSpec::Auto => "auto",
            OpticSpec::NameForm => "name",
            OpticSpec::LensPair => "lens",
            OpticSpec::Factorization => "factorization",
            OpticSpec::Zigzag(_) => "zigzag",
        }
    }
}

pub fn equiv_optic<B: Backend + ?Sized>(
    b: &B,
    r1: &OpticRep<B::Mor>,
    r2: &OpticRep<B::Mor>,
    spec: OpticSpec,
) -> Result<Decision<B::Mor>> {
    same_boundary(b, &r1.0, &r2.0)?;
    let caps = b.capabilities();
    let incompatible = |s: OpticSpec| Error::IncompatibleStrategy { strategy: s.name().into(), backend: b.kind() };
    let d = match spec.resolve(caps) {
        OpticSpec::NameForm => {
            if !caps.compact_closed {
                return Err(incompatible(OpticSpec::NameForm));
            }
            let probe = braid_probe(b, &r1.0, &r2.0)?;
            let n1 = name_form(b, &r1.0)?;
            let n2 = name_form(b, &r2.0)?;
            if b.equal(&n1, &n2) {
                Decision::equivalent("name", true)
                    .with_witness(Witness::SameInvariant { label: "name", value: vec![n1] })
            } else {
                Decision::distinct("name", Witness::Probe(probe))
            }
        }
        OpticSpec::LensPair => {
            if !caps.cartesian {
                return Err(incompatible(OpticSpec::LensPair));
            }
            let mut d = lens_decision(b, &r1.0, &r2.0)?;
            d.method = "lens";
            d
        }
        OpticSpec::Factorization => return Err(incompatible(OpticSpec::Factorization)),
        OpticSpec::Zigzag(bound) => zigzag(b, r1, r2, bound)?,
        OpticSpec::Auto => unreachable!("resolved above"),
    };
    Ok(d.with_tolerance(b.tolerance()))
}

/// The name of an optic, read through the compact structure: the top half is
/// bent into `E → A′ ⊗ B′*` and composed with the bottom half, then the dual
/// wire is straightened back. Equal to the braid name of any representative.
pub fn name_form<B: Backend + ?Sized>(b: &B, c: &CombRep<B::Mor>) -> Result<B::Mor> {
    let cc = b.compact().ok_or(Error::NotCompactClosed(b.kind()))?;
    let bpd = cc.dual(&c.b_prime);
    // g♯ : E → A′ ⊗ B′*  =  (g ⊗ 1)(1_E ⊗ σ_{B′*,B′})(1_E ⊗ η_{B′})
    let open = b.tensor(&b.identity(&c.env), &cc.unit(&c.b_prime));
    let twist = b.tensor(&b.identity(&c.env), &b.symmetry(&bpd, &c.b_prime));
    let bend = b.compose(&b.compose(&open, &twist)?, &whisker_right(b, &c.top, &bpd))?;
    // A → E ⊗ B → A′ ⊗ B′* ⊗ B
    let curried = b.compose(&c.bottom, &whisker_right(b, &bend, &c.b))?;
    // uncurry: A ⊗ B′ → A′ ⊗ B′* ⊗ B ⊗ B′ → A′ ⊗ B ⊗ B′* ⊗ B′ → ... → A′ ⊗ B
    let lift = whisker_right(b, &curried, &c.b_prime);
    let reorder = b.tensor(&b.tensor(&b.identity(&c.a_prime), &b.symmetry(&bpd, &c.b)), &b.identity(&c.b_prime));
    let close = b.tensor(
        &b.identity(&c.a_prime.tensor(&c.b)),
        &b.compose(&b.symmetry(&bpd, &c.b_prime), &cc.counit(&c.b_prime))?,
    );
    b.compose(&b.compose(&lift, &reorder)?, &close)
}

struct Node<M> {
    rep: CombRep<M>,
    parent: Option<(usize, SlideMove<M>)>,
}

/// Breadth-first search through slide moves from `r1`. Finding `r2` yields
/// the shortest slide path; exhausting a component whose every hom-set and
/// environment list was complete certifies `Distinct`.
fn zigzag<B: Backend + ?Sized>(
    b: &B,
    r1: &OpticRep<B::Mor>,
    r2: &OpticRep<B::Mor>,
    bound: usize,
) -> Result<Decision<B::Mor>> {
    if !b.capabilities().enumerable {
        return Err(Error::NotEnumerable(b.kind()));
    }
    let budget = Budget::new(bound);
    let start = r1.0.clone();
    let envs = b.environments(&start.a, &start.b, &budget);
    let mut complete = envs.complete;
    let mut nodes = vec![Node { rep: start, parent: None }];
    let mut queue = VecDeque::from([0usize]);
    let mut found = same_representative(b, &nodes[0].rep, &r2.0).then_some(0);
    while found.is_none() {
        let Some(idx) = queue.pop_front() else { break };
        if nodes.len() >= OpticSpec::MAX_STATES {
            complete = false;
            break;
        }
        let cur = OpticRep(nodes[idx].rep.clone());
        let (moves, exhaustive) = slide_moves(b, &cur.0, &envs.items, &budget)?;
        complete &= exhaustive;
        for mv in moves {
            let next = slide(b, &cur, &mv)?.0;
            if nodes.iter().any(|n| same_representative(b, &n.rep, &next)) {
                continue;
            }
            let hit = same_representative(b, &next, &r2.0);
            nodes.push(Node { rep: next, parent: Some((idx, mv)) });
            queue.push_back(nodes.len() - 1);
            if hit {
                found = Some(nodes.len() - 1);
                break;
            }
        }
    }
    let states = nodes.len();
    let coverage = Coverage { probes: 0, objects: envs.len(), complete, states };
    if let Some(mut at) = found {
        let mut path = Vec::new();
        while let Some((parent, mv)) = nodes[at].parent.take() {
            path.push(mv);
            at = parent;
        }
        path.reverse();
        return Ok(Decision::equivalent("zigzag", true).with_witness(Witness::SlidePath(path)).with_coverage(coverage));
    }
    if complete && queue.is_empty() {
        return Ok(Decision::distinct("zigzag", Witness::ExhaustedComponent { states }).with_coverage(coverage));
    }
    // slides preserve extensional behaviour, so a distinguishing probe refutes
    let refute = equiv_comb(b, &r1.0, &r2.0, ProbeSpec::Enumerate(bound))?;
    if refute.is_distinct() {
        let mut d = refute;
        d.method = "zigzag";
        return Ok(d.with_coverage(coverage));
    }
    Ok(Decision::unknown("zigzag").with_coverage(coverage))
}

/// All slides applicable to `c` with residual environments from `envs`,
/// together with whether every enumeration involved was complete.
pub fn slide_moves<B: Backend + ?Sized>(
    b: &B,
    c: &CombRep<B::Mor>,
    envs: &[ObjectWord],
    budget: &Budget,
) -> Result<(Vec<SlideMove<B::Mor>>, bool)> {
    let mut moves = Vec::new();
    let mut complete = true;
    for e0 in envs {
        let vs = b.enumerate_hom(e0, &c.env, budget)?;
        let f0s = b.enumerate_hom(&c.a, &e0.tensor(&c.b), budget)?;
        complete &= vs.complete && f0s.complete;
        for v in &vs.items {
            let vb = whisker_right(b, v, &c.b);
            for f0 in &f0s.items {
                if b.equal(&b.compose(f0, &vb)?, &c.bottom) {
                    moves.push(SlideMove { v: v.clone(), direction: SlideDirection::TowardTop, factor: f0.clone() });
                }
            }
        }
    }
    for e1 in envs {
        let vs = b.enumerate_hom(&c.env, e1, budget)?;
        let g0s = b.enumerate_hom(&e1.tensor(&c.b_prime), &c.a_prime, budget)?;
        complete &= vs.complete && g0s.complete;
        for v in &vs.items {
            let vb = whisker_right(b, v, &c.b_prime);
            for g0 in &g0s.items {
                if b.equal(&b.compose(&vb, g0)?, &c.top) {
                    moves.push(SlideMove { v: v.clone(), direction: SlideDirection::TowardBottom, factor: g0.clone() });
                }
            }
        }
    }
    Ok((moves, complete))
}

/// Decides optic equivalence of two combs of unitaries `(f_i, g_i)_{E_i}`:
/// `U = f₂ f₁†` and `V = g₁† g₂` must separate as `U′ ⊗ 1_B`, `V′ ⊗ 1_{B′}`
/// with `V′ U′ = 1`. The witness is the pair `(U′, V′)`, which slides the
/// first representative onto the second.
pub fn unitary_comb_factor(
    b: &UnitaryBackend,
    c1: &CombRep<MatMorphism<Complex64>>,
    c2: &CombRep<MatMorphism<Complex64>>,
) -> Result<Decision<MatMorphism<Complex64>>> {
    same_boundary(b, c1, c2)?;
    let tol = b.matrices().tolerance_value();
    let dims = |w: &ObjectWord| b.dim(w);
    if dims(&c1.a) != dims(&c1.env) * dims(&c1.b) || dims(&c2.a) != dims(&c2.env) * dims(&c2.b) {
        return Err(Error::DimensionMismatch("bottom halves must be square".into()));
    }
    let u = b.compose(&b.dagger(&c1.bottom).expect("dagger backend"), &c2.bottom)?;
    let v = b.compose(&c2.top, &b.dagger(&c1.top).expect("dagger backend"))?;
    let u_sep = tensor_separate(u.matrix(), dims(&c1.b), tol);
    let v_sep = tensor_separate(v.matrix(), dims(&c1.b_prime), tol);
    if let (Some((up, _)), Some((vp, _))) = (&u_sep, &v_sep) {
        let e1 = dims(&c1.env);
        if vp.rows() == e1 && up.cols() == e1 && vp.mul(up).approx_eq(&Matrix::identity(e1), tol) {
            let um = MatMorphism::new(c1.env.clone(), c2.env.clone(), up.clone());
            let vm = MatMorphism::new(c2.env.clone(), c1.env.clone(), vp.clone());
            return Ok(Decision::equivalent("factorization", true)
                .with_witness(Witness::Factorization { u: um, v: vm })
                .with_tolerance(Some(tol)));
        }
    }
    let probe = braid_probe(b, c1, c2)?;
    let witness = if b.equal(&probe.lhs, &probe.rhs) {
        Witness::Note(format!(
            "environment maps do not factor (U separates: {}, V separates: {})",
            u_sep.is_some(),
            v_sep.is_some()
        ))
    } else {
        Witness::Probe(probe)
    };
    Ok(Decision::distinct("factorization", witness).with_tolerance(Some(tol)))
}

/// Replays a factorization witness as a single slide of `U′` toward the
/// bottom and checks that it lands on the second representative.
pub fn replay_factorization(
    b: &UnitaryBackend,
    c1: &CombRep<MatMorphism<Complex64>>,
    c2: &CombRep<MatMorphism<Complex64>>,
    u: &MatMorphism<Complex64>,
) -> Result<bool> {
    let ud = b.dagger(u).expect("dagger backend");
    let factor = b.compose(&whisker_right(b, &ud, &c1.b_prime), &c1.top)?;
    let mv = SlideMove { v: u.clone(), direction: SlideDirection::TowardBottom, factor };
    let out = slide(b, &OpticRep(c1.clone()), &mv)?;
    Ok(same_representative(b, &out.0, c2))
}
