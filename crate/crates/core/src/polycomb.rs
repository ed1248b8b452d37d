//! n-combs: circuits with `n` ordered holes, as chains of segments threaded
//! by environments.
//!
//! A polymorphism with holes `(A₀, A₀′), …, (Aₙ₋₁, Aₙ₋₁′)` and outer pairs
//! `(B_q, B_q′)` consists of environments `M₀, …, Mₙ₋₁` and segments
//! `s₀, …, sₙ` with `s_h : M_{h−1} ⊗ A′_{h−1} → M_h ⊗ A_h`, reading
//! `M_{−1} = Mₙ = I`, `A′_{−1} = ⊗B` and `Aₙ = ⊗B′`.

use crate::backend::{block_permutation, compose_all, whisker_left, Backend, Budget};
use crate::comb::{CombRep, ProbeSpec};
use crate::decision::{Coverage, Decision, Probe, Witness};
use crate::error::{Error, Result};
use crate::object::ObjectWord;

pub type Pair = (ObjectWord, ObjectWord);

/// `(A, A′)* = (A′, A)`
pub fn dual_pair(p: &Pair) -> Pair {
    (p.1.clone(), p.0.clone())
}

#[derive(Debug, Clone)]
pub struct PolyCombRep<M> {
    pub holes: Vec<Pair>,
    pub outer: Vec<Pair>,
    pub envs: Vec<ObjectWord>,
    pub segments: Vec<M>,
}

fn inputs(pairs: &[Pair]) -> ObjectWord {
    ObjectWord::tensor_all(pairs.iter().map(|p| &p.0))
}

fn outputs(pairs: &[Pair]) -> ObjectWord {
    ObjectWord::tensor_all(pairs.iter().map(|p| &p.1))
}

impl<M: Clone> PolyCombRep<M> {
    pub fn new<B: Backend<Mor = M> + ?Sized>(
        b: &B,
        holes: Vec<Pair>,
        outer: Vec<Pair>,
        envs: Vec<ObjectWord>,
        segments: Vec<M>,
    ) -> Result<Self> {
        let p = PolyCombRep { holes, outer, envs, segments };
        p.check(b)?;
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.holes.len()
    }

    /// Domain and codomain segment `h` must have.
    fn segment_type(&self, h: usize) -> (ObjectWord, ObjectWord) {
        let n = self.holes.len();
        let dom = if h == 0 { inputs(&self.outer) } else { self.envs[h - 1].tensor(&self.holes[h - 1].1) };
        let cod = if h == n { outputs(&self.outer) } else { self.envs[h].tensor(&self.holes[h].0) };
        (dom, cod)
    }

    fn check<B: Backend<Mor = M> + ?Sized>(&self, b: &B) -> Result<()> {
        let n = self.holes.len();
        if self.envs.len() != n || self.segments.len() != n + 1 {
            return Err(Error::HoleMismatch(format!(
                "{} holes need {} environments and {} segments, got {} and {}",
                n,
                n,
                n + 1,
                self.envs.len(),
                self.segments.len()
            )));
        }
        for (h, s) in self.segments.iter().enumerate() {
            let (dom, cod) = self.segment_type(h);
            if !b.same_object(&b.dom(s), &dom) {
                return Err(Error::mismatch(format!("segment {h} domain"), &dom, &b.dom(s)));
            }
            if !b.same_object(&b.cod(s), &cod) {
                return Err(Error::mismatch(format!("segment {h} codomain"), &cod, &b.cod(s)));
            }
        }
        Ok(())
    }

    /// The 1-comb `(A, A′) → (B, B′)` as a polymorphism with hole `(B, B′)`
    /// and outer pair `(A, A′)`.
    pub fn from_comb(c: &CombRep<M>) -> Self {
        PolyCombRep {
            holes: vec![(c.b.clone(), c.b_prime.clone())],
            outer: vec![(c.a.clone(), c.a_prime.clone())],
            envs: vec![c.env.clone()],
            segments: vec![c.bottom.clone(), c.top.clone()],
        }
    }

    pub fn to_comb(&self) -> Option<CombRep<M>> {
        if self.holes.len() != 1 || self.outer.len() != 1 {
            return None;
        }
        Some(CombRep {
            a: self.outer[0].0.clone(),
            a_prime: self.outer[0].1.clone(),
            b: self.holes[0].0.clone(),
            b_prime: self.holes[0].1.clone(),
            env: self.envs[0].clone(),
            bottom: self.segments[0].clone(),
            top: self.segments[1].clone(),
        })
    }
}

/// A hole filler `λ : C ⊗ A → D ⊗ A′` with its side extensions.
#[derive(Debug, Clone)]
pub struct Filler<M> {
    pub side_in: ObjectWord,
    pub side_out: ObjectWord,
    pub map: M,
}

/// Evaluates the chain on fillers, giving `(⊗C) ⊗ (⊗B) → (⊗D) ⊗ (⊗B′)`.
/// Each environment passes over its filler exactly as in a 1-comb.
pub fn poly_extended_eval<B: Backend + ?Sized>(
    b: &B,
    p: &PolyCombRep<B::Mor>,
    fillers: &[Filler<B::Mor>],
) -> Result<B::Mor> {
    let n = p.holes.len();
    if fillers.len() != n {
        return Err(Error::HoleMismatch(format!("{n} holes but {} fillers", fillers.len())));
    }
    for (i, fl) in fillers.iter().enumerate() {
        let (want_d, want_c) = (fl.side_in.tensor(&p.holes[i].0), fl.side_out.tensor(&p.holes[i].1));
        if !b.same_object(&b.dom(&fl.map), &want_d) {
            return Err(Error::mismatch(format!("filler {i} domain"), &want_d, &b.dom(&fl.map)));
        }
        if !b.same_object(&b.cod(&fl.map), &want_c) {
            return Err(Error::mismatch(format!("filler {i} codomain"), &want_c, &b.cod(&fl.map)));
        }
    }
    let cs: Vec<&ObjectWord> = fillers.iter().map(|f| &f.side_in).collect();
    let ds: Vec<&ObjectWord> = fillers.iter().map(|f| &f.side_out).collect();
    let all_c = ObjectWord::tensor_all(cs.iter().copied());
    // layout [D_<i][C_i][C_>i][M_i][A_i]
    let mut acc = whisker_left(b, &all_c, &p.segments[0]);
    for i in 0..n {
        let d_lt = ObjectWord::tensor_all(ds[..i].iter().copied());
        let c_gt = ObjectWord::tensor_all(cs[i + 1..].iter().copied());
        let (m, a, a2) = (&p.envs[i], &p.holes[i].0, &p.holes[i].1);
        let bring =
            block_permutation(b, &[d_lt.clone(), cs[i].clone(), c_gt.clone(), m.clone(), a.clone()], &[0, 3, 1, 2, 4])?;
        let apply = whisker_left(b, &d_lt.tensor(&c_gt).tensor(m), &fillers[i].map);
        let back = block_permutation(
            b,
            &[d_lt.clone(), c_gt.clone(), m.clone(), ds[i].clone(), a2.clone()],
            &[0, 2, 3, 1, 4],
        )?;
        let d_le = d_lt.tensor(ds[i]);
        let seg = whisker_left(b, &d_le.tensor(&c_gt), &p.segments[i + 1]);
        acc = compose_all(b, &[&acc, &bring, &apply, &back, &seg])?;
    }
    Ok(acc)
}

/// Symmetry recorded alongside [`poly_name`] at `n = 1`: the 1-comb name
/// `B ⊗ A′ → B′ ⊗ A` followed by `σ_{B′,A}` is the poly name.
pub fn name_alignment<B: Backend + ?Sized>(b: &B, p: &PolyCombRep<B::Mor>) -> B::Mor {
    b.symmetry(&outputs(&p.outer), &inputs(&p.holes))
}

/// The full-bend normal form `(⊗B) ⊗ (⊗A′) → (⊗A) ⊗ (⊗B′)`: every hole is
/// filled with the symmetry `σ_{A′ᵢ,Aᵢ}`, so each `A′ᵢ` enters from outside
/// and each `Aᵢ` leaves, in ascending hole order.
pub fn poly_name<B: Backend + ?Sized>(b: &B, p: &PolyCombRep<B::Mor>) -> Result<B::Mor> {
    let fillers = name_fillers(b, p);
    let body = poly_extended_eval(b, p, &fillers)?;
    let pre = b.symmetry(&inputs(&p.outer), &outputs(&p.holes));
    b.compose(&pre, &body)
}

fn name_fillers<B: Backend + ?Sized>(b: &B, p: &PolyCombRep<B::Mor>) -> Vec<Filler<B::Mor>> {
    p.holes.iter().map(|(a, a2)| Filler { side_in: a2.clone(), side_out: a.clone(), map: b.symmetry(a2, a) }).collect()
}

pub fn same_poly_boundary<B: Backend + ?Sized>(
    b: &B,
    p1: &PolyCombRep<B::Mor>,
    p2: &PolyCombRep<B::Mor>,
) -> Result<()> {
    let same = |x: &[Pair], y: &[Pair]| {
        x.len() == y.len() && x.iter().zip(y).all(|(u, v)| b.same_object(&u.0, &v.0) && b.same_object(&u.1, &v.1))
    };
    if same(&p1.holes, &p2.holes) && same(&p1.outer, &p2.outer) {
        Ok(())
    } else {
        Err(Error::BoundaryMismatch("polymorphisms have different holes or outer pairs".into()))
    }
}

/// Cap on filler tuples probed by enumeration.
pub const MAX_TUPLES: usize = 200_000;

pub fn poly_equiv<B: Backend + ?Sized>(
    b: &B,
    p1: &PolyCombRep<B::Mor>,
    p2: &PolyCombRep<B::Mor>,
    spec: ProbeSpec,
) -> Result<Decision<B::Mor>> {
    same_poly_boundary(b, p1, p2)?;
    let caps = b.capabilities();
    let d = match spec.resolve(caps) {
        ProbeSpec::BraidOnly => {
            if !caps.compact_closed {
                return Err(Error::IncompatibleStrategy { strategy: "braid".into(), backend: b.kind() });
            }
            let fillers = name_fillers(b, p1);
            let lhs = poly_name(b, p1)?;
            let rhs = poly_name(b, p2)?;
            if b.equal(&lhs, &rhs) {
                Decision::equivalent("name", true)
                    .with_witness(Witness::SameInvariant { label: "name", value: vec![lhs] })
            } else {
                let probe = Probe {
                    extensions: fillers.iter().map(|f| (f.side_in.clone(), f.side_out.clone())).collect(),
                    fillers: fillers.into_iter().map(|f| f.map).collect(),
                    lhs,
                    rhs,
                };
                Decision::distinct("name", Witness::Probe(probe))
            }
        }
        ProbeSpec::Enumerate(bound) => enumerate_tuples(b, p1, p2, bound)?,
        other => {
            return Err(Error::IncompatibleStrategy { strategy: other.name().into(), backend: b.kind() });
        }
    };
    Ok(d.with_tolerance(b.tolerance()))
}

fn enumerate_tuples<B: Backend + ?Sized>(
    b: &B,
    p1: &PolyCombRep<B::Mor>,
    p2: &PolyCombRep<B::Mor>,
    bound: usize,
) -> Result<Decision<B::Mor>> {
    if !b.capabilities().enumerable {
        return Err(Error::NotEnumerable(b.kind()));
    }
    let budget = Budget::new(bound);
    let objects = b.enumerate_objects(&budget);
    let mut complete = objects.complete || b.probe_saturation().is_some_and(|s| s <= bound);
    let mut options: Vec<Vec<Filler<B::Mor>>> = Vec::new();
    for (a, a2) in &p1.holes {
        let mut opts = Vec::new();
        for c in &objects.items {
            for d in &objects.items {
                let hom = b.enumerate_hom(&c.tensor(a), &d.tensor(a2), &budget)?;
                complete &= hom.complete;
                opts.extend(hom.items.into_iter().map(|m| Filler { side_in: c.clone(), side_out: d.clone(), map: m }));
            }
        }
        options.push(opts);
    }
    let total = options.iter().try_fold(1usize, |acc, o| acc.checked_mul(o.len()));
    let total = match total {
        Some(t) if t <= MAX_TUPLES => t,
        _ => {
            complete = false;
            MAX_TUPLES
        }
    };
    let mut idx = vec![0usize; options.len()];
    let coverage = |probes| Coverage { probes, objects: objects.len(), complete, states: 0 };
    if options.iter().any(|o| o.is_empty()) {
        return Ok(Decision::equivalent("enumerate", complete).with_coverage(coverage(0)));
    }
    for t in 0..total {
        let tuple: Vec<Filler<B::Mor>> = idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
        let lhs = poly_extended_eval(b, p1, &tuple)?;
        let rhs = poly_extended_eval(b, p2, &tuple)?;
        if !b.equal(&lhs, &rhs) {
            let probe = Probe {
                extensions: tuple.iter().map(|f| (f.side_in.clone(), f.side_out.clone())).collect(),
                fillers: tuple.into_iter().map(|f| f.map).collect(),
                lhs,
                rhs,
            };
            return Ok(Decision::distinct("enumerate", Witness::Probe(probe)).with_coverage(coverage(t + 1)));
        }
        // odometer, last hole fastest
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(Decision::equivalent("enumerate", complete).with_coverage(coverage(total)))
}

/// Lifts segment `s : M_in ⊗ A_in → M_out ⊗ A_out` to carry `z` along the
/// environment: `[M_in][z][A_in] → [M_out][z][A_out]`. The first segment
/// instead takes `[A_in][z]` and the last returns `[A_out][z]`.
fn carry<B: Backend + ?Sized>(
    b: &B,
    s: &B::Mor,
    (m_in, a_in): (&ObjectWord, &ObjectWord),
    (m_out, a_out): (&ObjectWord, &ObjectWord),
    z: &ObjectWord,
    first: bool,
    last: bool,
) -> Result<B::Mor> {
    let pre = if first {
        b.identity(&a_in.tensor(z))
    } else {
        block_permutation(b, &[m_in.clone(), z.clone(), a_in.clone()], &[0, 2, 1])?
    };
    let body = b.tensor(s, &b.identity(z));
    let post = if last {
        b.identity(&a_out.tensor(z))
    } else {
        block_permutation(b, &[m_out.clone(), a_out.clone(), z.clone()], &[0, 2, 1])?
    };
    compose_all(b, &[&pre, &body, &post])
}

/// Plugs outer pair `pair` of `inner` into hole `hole` of `outer`. The other
/// outer pairs of `inner` become outer pairs of the result, appended after
/// those of `outer`; their wires ride along the environment.
pub fn poly_compose_at<B: Backend + ?Sized>(
    b: &B,
    outer: &PolyCombRep<B::Mor>,
    inner: &PolyCombRep<B::Mor>,
    hole: usize,
    pair: usize,
) -> Result<PolyCombRep<B::Mor>> {
    let n = outer.holes.len();
    if hole >= n || pair >= inner.outer.len() {
        return Err(Error::HoleMismatch(format!("no hole {hole} or outer pair {pair}")));
    }
    let (aj, aj2) = &outer.holes[hole];
    let (yp, yp2) = &inner.outer[pair];
    if !b.same_object(aj, yp) || !b.same_object(aj2, yp2) {
        return Err(Error::HoleMismatch(format!("hole ({aj}, {aj2}) cannot take ({yp}, {yp2})")));
    }
    let rest: Vec<Pair> = inner.outer.iter().enumerate().filter(|(r, _)| *r != pair).map(|(_, p)| p.clone()).collect();
    let x = inputs(&rest);
    let x2 = outputs(&rest);
    let k = inner.holes.len();
    let unit = ObjectWord::unit();

    // typing of outer segment h as (M_in, A_in) -> (M_out, A_out)
    let ends = |h: usize| -> ((ObjectWord, ObjectWord), (ObjectWord, ObjectWord)) {
        let src = if h == 0 {
            (unit.clone(), inputs(&outer.outer))
        } else {
            (outer.envs[h - 1].clone(), outer.holes[h - 1].1.clone())
        };
        let tgt = if h == n {
            (unit.clone(), outputs(&outer.outer))
        } else {
            (outer.envs[h].clone(), outer.holes[h].0.clone())
        };
        (src, tgt)
    };
    let lift = |h: usize, z: &ObjectWord| -> Result<B::Mor> {
        let ((mi, ai), (mo, ao)) = ends(h);
        carry(b, &outer.segments[h], (&mi, &ai), (&mo, &ao), z, h == 0, h == n)
    };

    let mj = &outer.envs[hole];
    // [M_j][X][A_j] → [M_j][inner inputs]
    let mut in_blocks: Vec<ObjectWord> = rest.iter().map(|p| p.0.clone()).collect();
    in_blocks.push(aj.clone());
    let mut in_perm: Vec<usize> = (0..rest.len()).map(|r| if r < pair { r } else { r + 1 }).collect();
    in_perm.push(pair);
    let to_inner = whisker_left(b, mj, &block_permutation(b, &in_blocks, &in_perm)?);
    // [M_j][inner outputs] → [M_j][X′][A′_j]
    let out_blocks: Vec<ObjectWord> = inner.outer.iter().map(|p| p.1.clone()).collect();
    let out_perm: Vec<usize> = (0..out_blocks.len())
        .map(|r| {
            if r == pair {
                rest.len()
            } else if r < pair {
                r
            } else {
                r - 1
            }
        })
        .collect();
    let from_inner = whisker_left(b, mj, &block_permutation(b, &out_blocks, &out_perm)?);

    let mut segments = Vec::new();
    for h in 0..hole {
        segments.push(lift(h, &x)?);
    }
    let left = lift(hole, &x)?;
    let right = lift(hole + 1, &x2)?;
    let inner_seg = |l: usize| whisker_left(b, mj, &inner.segments[l]);
    if k == 0 {
        segments.push(compose_all(b, &[&left, &to_inner, &inner_seg(0), &from_inner, &right])?);
    } else {
        segments.push(compose_all(b, &[&left, &to_inner, &inner_seg(0)])?);
        for l in 1..k {
            segments.push(inner_seg(l));
        }
        segments.push(compose_all(b, &[&inner_seg(k), &from_inner, &right])?);
    }
    for h in hole + 2..=n {
        segments.push(lift(h, &x2)?);
    }

    let mut holes = outer.holes[..hole].to_vec();
    holes.extend(inner.holes.iter().cloned());
    holes.extend(outer.holes[hole + 1..].iter().cloned());
    let mut envs: Vec<ObjectWord> = outer.envs[..hole].iter().map(|m| m.tensor(&x)).collect();
    envs.extend(inner.envs.iter().map(|nl| mj.tensor(nl)));
    envs.extend(outer.envs[hole + 1..].iter().map(|m| m.tensor(&x2)));
    let mut outer_pairs = outer.outer.clone();
    outer_pairs.extend(rest);
    PolyCombRep::new(b, holes, outer_pairs, envs, segments)
}

/// `[] → [(A, A′), (A′, A)]`, the symmetry `σ_{A,A′}`.
pub fn star_unit<B: Backend + ?Sized>(b: &B, pair: &Pair) -> Result<PolyCombRep<B::Mor>> {
    b.compact().ok_or(Error::NotCompactClosed(b.kind()))?;
    let (a, a2) = pair;
    PolyCombRep::new(b, vec![], vec![pair.clone(), dual_pair(pair)], vec![], vec![b.symmetry(a, a2)])
}

/// `[(A, A′), (A′, A)] → []`: a cup feeds the first hole, the first hole's
/// output feeds the second, and a cap closes the loop.
pub fn star_counit<B: Backend + ?Sized>(b: &B, pair: &Pair) -> Result<PolyCombRep<B::Mor>> {
    let cc = b.compact().ok_or(Error::NotCompactClosed(b.kind()))?;
    let (a, a2) = pair;
    let ad = cc.dual(a);
    let s0 = cc.unit(a);
    let s1 = b.identity(&ad.tensor(a2));
    let s2 = b.compose(&b.symmetry(&ad, a), &cc.counit(a))?;
    PolyCombRep::new(b, vec![pair.clone(), dual_pair(pair)], vec![], vec![ad.clone(), ad], vec![s0, s1, s2])
}

/// The identity 1-comb on `pair` as a polymorphism.
pub fn poly_identity<B: Backend + ?Sized>(b: &B, pair: &Pair) -> PolyCombRep<B::Mor> {
    PolyCombRep::from_comb(&CombRep::identity(b, &pair.0, &pair.1))
}
