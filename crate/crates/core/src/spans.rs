//! Graphs, equivalence spans, and the exact-completion quotient.
//!
//! An equivalence span is a parallel pair `d1, d2 : A1 → A0` equipped
//! with reflexivity, symmetry, and a compatible operation on consecutive
//! arcs; no unit or associativity laws are imposed on the operation.
//! Homomorphisms of spans are identified when a connecting arrow
//! `h : A0 → B1` equalizes their object parts through the target legs —
//! nothing is asked of the arrow components. Objects and identified homs
//! form the relevant fragment of the exact completion of the ambient.
//!
//! Over finite spaces, the subspatial spans (those whose tupled legs form
//! a subspace inclusion into the product) correspond exactly to
//! equilogical spaces; `functor_f` and `functor_g` implement the two
//! directions, with `F(G(E)) = E` on the nose.

use std::sync::Arc;

use thiserror::Error;

use crate::cat::{pullback_of_cospan, Ambient, CatError, MorphismPair, Pullback};
use crate::equ::{EqRel, Equilogical, EquMap, EquMapRep};
use crate::fintop::{self, ContMap, FinSpace, FinTopCat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpanError {
    #[error("graph legs are not a parallel pair")]
    NotParallel,
    #[error("structure map `{0}` has wrong endpoints")]
    BadEndpoints(&'static str),
    #[error("diagram `{0}` does not commute")]
    Diagram(&'static str),
    #[error("span is not subspatial")]
    NotSubspatial,
    #[error("homomorphism square does not commute at component {0}")]
    HomSquare(&'static str),
    #[error("homomorphisms have different endpoints")]
    HomMismatch,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// A directed graph in the ambient: a parallel pair of arrows.
#[derive(Debug)]
pub struct GraphInC<A: Ambient> {
    pub a1: A::Obj,
    pub a0: A::Obj,
    pub d1: A::Mor,
    pub d2: A::Mor,
}

impl<A: Ambient> Clone for GraphInC<A> {
    fn clone(&self) -> Self {
        GraphInC {
            a1: self.a1.clone(),
            a0: self.a0.clone(),
            d1: self.d1.clone(),
            d2: self.d2.clone(),
        }
    }
}

impl<A: Ambient> GraphInC<A> {
    pub fn new(ambient: &A, d1: A::Mor, d2: A::Mor) -> Result<Self, SpanError> {
        if ambient.src(&d1) != ambient.src(&d2) || ambient.tgt(&d1) != ambient.tgt(&d2) {
            return Err(SpanError::NotParallel);
        }
        Ok(GraphInC {
            a1: ambient.src(&d1),
            a0: ambient.tgt(&d1),
            d1,
            d2,
        })
    }
}

/// An equivalence span: a graph with reflexivity `r`, symmetry `s`, and
/// a compatible operation `t` on the composable-pairs pullback.
#[derive(Debug)]
pub struct EquivalenceSpan<A: Ambient> {
    pub graph: GraphInC<A>,
    pub r: A::Mor,
    pub s: A::Mor,
    pub t: A::Mor,
    pub pullback: Pullback<A>,
}

impl<A: Ambient> Clone for EquivalenceSpan<A> {
    fn clone(&self) -> Self {
        EquivalenceSpan {
            graph: self.graph.clone(),
            r: self.r.clone(),
            s: self.s.clone(),
            t: self.t.clone(),
            pullback: self.pullback.clone(),
        }
    }
}

impl<A: Ambient> EquivalenceSpan<A> {
    /// Validate the five commuting diagrams and assemble the span.
    pub fn new(
        ambient: &A,
        graph: GraphInC<A>,
        r: A::Mor,
        s: A::Mor,
        t: A::Mor,
    ) -> Result<Self, SpanError> {
        let pullback = pullback_of_cospan(ambient, &graph.d2, &graph.d1)?;
        let span = EquivalenceSpan {
            graph,
            r,
            s,
            t,
            pullback,
        };
        span.check(ambient)?;
        Ok(span)
    }

    /// Build the compatible operation from its table over the canonical
    /// composable-pairs enumeration, then validate.
    pub fn from_tables(
        ambient: &A,
        d1: A::Mor,
        d2: A::Mor,
        r_table: Vec<usize>,
        s_table: Vec<usize>,
        t_table: Vec<usize>,
    ) -> Result<Self, SpanError> {
        let graph = GraphInC::new(ambient, d1, d2)?;
        let r = ambient.make_mor(&graph.a0, &graph.a1, r_table)?;
        let s = ambient.make_mor(&graph.a1, &graph.a1, s_table)?;
        let pullback = pullback_of_cospan(ambient, &graph.d2, &graph.d1)?;
        let t = ambient.make_mor(&pullback.apex, &graph.a1, t_table)?;
        let span = EquivalenceSpan {
            graph,
            r,
            s,
            t,
            pullback,
        };
        span.check(ambient)?;
        Ok(span)
    }

    fn check(&self, ambient: &A) -> Result<(), SpanError> {
        let g = &self.graph;
        if ambient.src(&self.r) != g.a0 || ambient.tgt(&self.r) != g.a1 {
            return Err(SpanError::BadEndpoints("r"));
        }
        if ambient.src(&self.s) != g.a1 || ambient.tgt(&self.s) != g.a1 {
            return Err(SpanError::BadEndpoints("s"));
        }
        if ambient.src(&self.t) != self.pullback.apex || ambient.tgt(&self.t) != g.a1 {
            return Err(SpanError::BadEndpoints("t"));
        }
        let id0 = ambient.identity(&g.a0);
        if !ambient.mor_eq(&ambient.compose(&g.d1, &self.r)?, &id0) {
            return Err(SpanError::Diagram("d1 ∘ r = id"));
        }
        if !ambient.mor_eq(&ambient.compose(&g.d2, &self.r)?, &id0) {
            return Err(SpanError::Diagram("d2 ∘ r = id"));
        }
        if !ambient.mor_eq(&ambient.compose(&g.d1, &self.s)?, &g.d2) {
            return Err(SpanError::Diagram("d1 ∘ s = d2"));
        }
        if !ambient.mor_eq(&ambient.compose(&g.d2, &self.s)?, &g.d1) {
            return Err(SpanError::Diagram("d2 ∘ s = d1"));
        }
        let left = ambient.compose(&g.d1, &self.t)?;
        let right = ambient.compose(&g.d1, &self.pullback.leg1)?;
        if !ambient.mor_eq(&left, &right) {
            return Err(SpanError::Diagram("d1 ∘ t = d1 ∘ p1"));
        }
        let left = ambient.compose(&g.d2, &self.t)?;
        let right = ambient.compose(&g.d2, &self.pullback.leg2)?;
        if !ambient.mor_eq(&left, &right) {
            return Err(SpanError::Diagram("d2 ∘ t = d2 ∘ p2"));
        }
        Ok(())
    }

    /// The underlying parallel pair.
    pub fn legs(&self) -> Result<MorphismPair<A>, CatError> {
        Ok(MorphismPair {
            d1: self.graph.d1.clone(),
            d2: self.graph.d2.clone(),
        })
    }

    /// Composable pairs `(u, v)` with `d2(u) = d1(v)`, in apex order.
    pub fn composable_pairs(&self) -> &[(usize, usize)] {
        &self.pullback.pairs
    }
}

/// Is the candidate data an equivalence span?
pub fn is_equivalence_span<A: Ambient>(
    ambient: &A,
    graph: GraphInC<A>,
    r: A::Mor,
    s: A::Mor,
    t: A::Mor,
) -> bool {
    EquivalenceSpan::new(ambient, graph, r, s, t).is_ok()
}

/// A homomorphism of graphs: both squares against the legs commute.
#[derive(Debug)]
pub struct GraphHom<A: Ambient> {
    pub f1: A::Mor,
    pub f0: A::Mor,
}

impl<A: Ambient> Clone for GraphHom<A> {
    fn clone(&self) -> Self {
        GraphHom {
            f1: self.f1.clone(),
            f0: self.f0.clone(),
        }
    }
}

impl<A: Ambient> GraphHom<A> {
    pub fn new(
        ambient: &A,
        source: &EquivalenceSpan<A>,
        target: &EquivalenceSpan<A>,
        f1: A::Mor,
        f0: A::Mor,
    ) -> Result<Self, SpanError> {
        if ambient.src(&f1) != source.graph.a1
            || ambient.tgt(&f1) != target.graph.a1
            || ambient.src(&f0) != source.graph.a0
            || ambient.tgt(&f0) != target.graph.a0
        {
            return Err(SpanError::HomMismatch);
        }
        let lhs = ambient.compose(&f0, &source.graph.d1)?;
        let rhs = ambient.compose(&target.graph.d1, &f1)?;
        if !ambient.mor_eq(&lhs, &rhs) {
            return Err(SpanError::HomSquare("d1"));
        }
        let lhs = ambient.compose(&f0, &source.graph.d2)?;
        let rhs = ambient.compose(&target.graph.d2, &f1)?;
        if !ambient.mor_eq(&lhs, &rhs) {
            return Err(SpanError::HomSquare("d2"));
        }
        Ok(GraphHom { f1, f0 })
    }

    pub fn identity(ambient: &A, span: &EquivalenceSpan<A>) -> Self {
        GraphHom {
            f1: ambient.identity(&span.graph.a1),
            f0: ambient.identity(&span.graph.a0),
        }
    }

    pub fn compose(ambient: &A, g: &GraphHom<A>, f: &GraphHom<A>) -> Result<Self, CatError> {
        Ok(GraphHom {
            f1: ambient.compose(&g.f1, &f.f1)?,
            f0: ambient.compose(&g.f0, &f.f0)?,
        })
    }
}

/// Search for a connecting arrow `h : A0 → B1` with `e1∘h = f0` and
/// `e2∘h = g0`, given the endpoint tables of the target legs. The
/// search assigns each point of `A0` a point of `B1` from the endpoint
/// fiber and validates morphism-hood at the leaves.
pub fn connecting_map<A: Ambient>(
    ambient: &A,
    a0: &A::Obj,
    b1: &A::Obj,
    e1: &[usize],
    e2: &[usize],
    f0: &[usize],
    g0: &[usize],
    cap: usize,
) -> Result<Option<A::Mor>, SpanError> {
    let b1_len = ambient.carrier_len(b1);
    let fibers: Vec<Vec<usize>> = f0
        .iter()
        .zip(g0.iter())
        .map(|(&fx, &gx)| {
            (0..b1_len)
                .filter(|&b| e1[b] == fx && e2[b] == gx)
                .collect()
        })
        .collect();
    if fibers.iter().any(|f| f.is_empty()) {
        return Ok(None);
    }
    // The cap bounds the number of explored complete assignments, not
    // the a-priori search space: easy witnesses (first choices per
    // fiber) are found immediately even when the space is huge.
    let mut choice = vec![0usize; fibers.len()];
    let mut explored = 0usize;
    fn walk<A: Ambient>(
        ambient: &A,
        a0: &A::Obj,
        b1: &A::Obj,
        fibers: &[Vec<usize>],
        choice: &mut Vec<usize>,
        depth: usize,
        explored: &mut usize,
        cap: usize,
    ) -> Result<Option<A::Mor>, SpanError> {
        if depth == fibers.len() {
            *explored += 1;
            if *explored > cap {
                return Err(CatError::CapExceeded {
                    candidates: *explored,
                    cap,
                }
                .into());
            }
            return Ok(ambient.make_mor(a0, b1, choice.clone()).ok());
        }
        for &cand in &fibers[depth] {
            choice[depth] = cand;
            if let Some(m) = walk(ambient, a0, b1, fibers, choice, depth + 1, explored, cap)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
    walk(ambient, a0, b1, &fibers, &mut choice, 0, &mut explored, cap)
}

/// Search for a connecting arrow identifying two homomorphisms into a
/// span: `h : A0 → B1` with `e1∘h = f0` and `e2∘h = g0`.
pub fn homs_identified<A: Ambient>(
    ambient: &A,
    _source: &EquivalenceSpan<A>,
    target: &EquivalenceSpan<A>,
    h1: &GraphHom<A>,
    h2: &GraphHom<A>,
    cap: usize,
) -> Result<Option<A::Mor>, SpanError> {
    let f0 = ambient.point_map(&h1.f0);
    let g0 = ambient.point_map(&h2.f0);
    let e1 = ambient.point_map(&target.graph.d1);
    let e2 = ambient.point_map(&target.graph.d2);
    connecting_map(
        ambient,
        &ambient.src(&h1.f0),
        &target.graph.a1,
        &e1,
        &e2,
        &f0,
        &g0,
        cap,
    )
}

/// A morphism of the exact completion: an identification class of graph
/// homomorphisms, stored as one representative.
#[derive(Debug)]
pub struct ExMorphism<A: Ambient> {
    pub rep: GraphHom<A>,
}

impl<A: Ambient> Clone for ExMorphism<A> {
    fn clone(&self) -> Self {
        ExMorphism {
            rep: self.rep.clone(),
        }
    }
}

impl<A: Ambient> ExMorphism<A> {
    pub fn new(rep: GraphHom<A>) -> Self {
        ExMorphism { rep }
    }

    /// Class membership, decided by the connecting-arrow search.
    pub fn contains(
        &self,
        ambient: &A,
        source: &EquivalenceSpan<A>,
        target: &EquivalenceSpan<A>,
        other: &GraphHom<A>,
        cap: usize,
    ) -> Result<bool, SpanError> {
        Ok(homs_identified(ambient, source, target, &self.rep, other, cap)?.is_some())
    }
}

/// Enumerate graph homomorphisms between spans, capped. `f1` candidates
/// are searched fiberwise over the endpoint constraints.
pub fn enumerate_span_homs<A: Ambient>(
    ambient: &A,
    source: &EquivalenceSpan<A>,
    target: &EquivalenceSpan<A>,
    cap: usize,
) -> Result<Vec<GraphHom<A>>, SpanError> {
    let mut out = Vec::new();
    for f0 in ambient.hom(&source.graph.a0, &target.graph.a0, cap)? {
        out.extend(span_homs_over(ambient, source, target, &f0, cap, false)?);
    }
    Ok(out)
}

/// Enumerate at most one homomorphism per object part: the first valid
/// arrow component in fiber order.
pub fn enumerate_span_homs_by_object_part<A: Ambient>(
    ambient: &A,
    source: &EquivalenceSpan<A>,
    target: &EquivalenceSpan<A>,
    cap: usize,
) -> Result<Vec<GraphHom<A>>, SpanError> {
    let mut out = Vec::new();
    for f0 in ambient.hom(&source.graph.a0, &target.graph.a0, cap)? {
        out.extend(span_homs_over(ambient, source, target, &f0, cap, true)?);
    }
    Ok(out)
}

fn span_homs_over<A: Ambient>(
    ambient: &A,
    source: &EquivalenceSpan<A>,
    target: &EquivalenceSpan<A>,
    f0: &A::Mor,
    cap: usize,
    first_only: bool,
) -> Result<Vec<GraphHom<A>>, SpanError> {
    let f0m = ambient.point_map(f0);
    let d1 = ambient.point_map(&source.graph.d1);
    let d2 = ambient.point_map(&source.graph.d2);
    let e1 = ambient.point_map(&target.graph.d1);
    let e2 = ambient.point_map(&target.graph.d2);
    let b1_len = ambient.carrier_len(&target.graph.a1);
    let a1_len = ambient.carrier_len(&source.graph.a1);
    let fibers: Vec<Vec<usize>> = (0..a1_len)
        .map(|e| {
            let want = (f0m[d1[e]], f0m[d2[e]]);
            (0..b1_len)
                .filter(|&b| (e1[b], e2[b]) == want)
                .collect()
        })
        .collect();
    if fibers.iter().any(|f| f.is_empty()) {
        return Ok(Vec::new());
    }
    let mut space: usize = 1;
    for f in &fibers {
        space = space.saturating_mul(f.len());
    }
    if space > cap {
        return Err(CatError::CapExceeded {
            candidates: space,
            cap,
        }
        .into());
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; a1_len];
    fn walk<A: Ambient>(
        ambient: &A,
        source: &EquivalenceSpan<A>,
        target: &EquivalenceSpan<A>,
        f0: &A::Mor,
        fibers: &[Vec<usize>],
        choice: &mut Vec<usize>,
        depth: usize,
        first_only: bool,
        out: &mut Vec<GraphHom<A>>,
    ) {
        if first_only && !out.is_empty() {
            return;
        }
        if depth == fibers.len() {
            if let Ok(f1) = ambient.make_mor(&source.graph.a1, &target.graph.a1, choice.clone()) {
                if let Ok(hom) = GraphHom::new(ambient, source, target, f1, f0.clone()) {
                    out.push(hom);
                }
            }
            return;
        }
        for &cand in &fibers[depth] {
            choice[depth] = cand;
            walk(
                ambient, source, target, f0, fibers, choice, depth + 1, first_only, out,
            );
            if first_only && !out.is_empty() {
                return;
            }
        }
    }
    walk(
        ambient, source, target, f0, &fibers, &mut choice, 0, first_only, &mut out,
    );
    Ok(out)
}

/// Partition homomorphisms into identification classes. Identification
/// depends only on object parts, so classes are keyed by them.
pub fn identification_classes<A: Ambient>(
    ambient: &A,
    source: &EquivalenceSpan<A>,
    target: &EquivalenceSpan<A>,
    homs: &[GraphHom<A>],
    cap: usize,
) -> Result<Vec<ExMorphism<A>>, SpanError> {
    let mut classes: Vec<ExMorphism<A>> = Vec::new();
    'next: for hom in homs {
        for class in &classes {
            if class.contains(ambient, source, target, hom, cap)? {
                continue 'next;
            }
        }
        classes.push(ExMorphism::new(hom.clone()));
    }
    Ok(classes)
}

/// Solve for all structure triples `(r, s, t)` satisfying the span
/// diagrams, by independent pointwise fiber enumeration. For subspatial
/// spans the solution is unique.
pub fn structure_map_solutions<A: Ambient>(
    ambient: &A,
    d1: &A::Mor,
    d2: &A::Mor,
    cap: usize,
) -> Result<(Vec<A::Mor>, Vec<A::Mor>, Vec<A::Mor>), SpanError> {
    let graph = GraphInC::new(ambient, d1.clone(), d2.clone())?;
    let d1m = ambient.point_map(d1);
    let d2m = ambient.point_map(d2);
    let a1_len = ambient.carrier_len(&graph.a1);
    let a0_len = ambient.carrier_len(&graph.a0);
    // r(x) must lie over (x, x).
    let r_fibers: Vec<Vec<usize>> = (0..a0_len)
        .map(|x| {
            (0..a1_len)
                .filter(|&e| d1m[e] == x && d2m[e] == x)
                .collect()
        })
        .collect();
    // s(e) must lie over (d2 e, d1 e).
    let s_fibers: Vec<Vec<usize>> = (0..a1_len)
        .map(|e| {
            (0..a1_len)
                .filter(|&e2| d1m[e2] == d2m[e] && d2m[e2] == d1m[e])
                .collect()
        })
        .collect();
    let pullback = pullback_of_cospan(ambient, &graph.d2, &graph.d1)?;
    // t(u, v) must lie over (d1 u, d2 v).
    let t_fibers: Vec<Vec<usize>> = pullback
        .pairs
        .iter()
        .map(|&(u, v)| {
            (0..a1_len)
                .filter(|&e| d1m[e] == d1m[u] && d2m[e] == d2m[v])
                .collect()
        })
        .collect();
    let rs = enumerate_tables(ambient, &graph.a0, &graph.a1, &r_fibers, cap)?;
    let ss = enumerate_tables(ambient, &graph.a1, &graph.a1, &s_fibers, cap)?;
    let ts = enumerate_tables(ambient, &pullback.apex, &graph.a1, &t_fibers, cap)?;
    Ok((rs, ss, ts))
}

fn enumerate_tables<A: Ambient>(
    ambient: &A,
    src: &A::Obj,
    tgt: &A::Obj,
    fibers: &[Vec<usize>],
    cap: usize,
) -> Result<Vec<A::Mor>, SpanError> {
    if fibers.iter().any(|f| f.is_empty()) {
        return Ok(Vec::new());
    }
    let mut space: usize = 1;
    for f in fibers {
        space = space.saturating_mul(f.len());
    }
    if space > cap {
        return Err(CatError::CapExceeded {
            candidates: space,
            cap,
        }
        .into());
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; fibers.len()];
    fn walk<A: Ambient>(
        ambient: &A,
        src: &A::Obj,
        tgt: &A::Obj,
        fibers: &[Vec<usize>],
        choice: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<A::Mor>,
    ) {
        if depth == fibers.len() {
            if let Ok(m) = ambient.make_mor(src, tgt, choice.clone()) {
                out.push(m);
            }
            return;
        }
        for &cand in &fibers[depth] {
            choice[depth] = cand;
            walk(ambient, src, tgt, fibers, choice, depth + 1, out);
        }
    }
    walk(ambient, src, tgt, fibers, &mut choice, 0, &mut out);
    Ok(out)
}

// ---------------------------------------------------------------------
// The finite-space side: subspatial spans and the two functors.
// ---------------------------------------------------------------------

/// Is the tupled pair `⟨d1, d2⟩ : A1 → A0 × A0` a subspace inclusion?
pub fn is_subspatial(ambient: &FinTopCat, span: &EquivalenceSpan<FinTopCat>) -> bool {
    match tupled_legs(ambient, span) {
        Ok(m) => fintop::is_subspace_inclusion(&m),
        Err(_) => false,
    }
}

/// The tupled legs into the explicit product space.
pub fn tupled_legs(
    ambient: &FinTopCat,
    span: &EquivalenceSpan<FinTopCat>,
) -> Result<ContMap, SpanError> {
    let prod = ambient.product(&span.graph.a0, &span.graph.a0)?;
    Ok(prod.tuple(ambient, &span.graph.d1, &span.graph.d2)?)
}

/// Object part of the equivalence `A → Equ`: read off the point-pair
/// relation of a subspatial span.
pub fn functor_f(
    ambient: &FinTopCat,
    span: &EquivalenceSpan<FinTopCat>,
) -> Result<Equilogical, SpanError> {
    if !is_subspatial(ambient, span) {
        return Err(SpanError::NotSubspatial);
    }
    let d1 = ambient.point_map(&span.graph.d1);
    let d2 = ambient.point_map(&span.graph.d2);
    let pairs: Vec<(usize, usize)> = d1.into_iter().zip(d2).collect();
    let rel = EqRel::from_pairs(span.graph.a0.points(), &pairs)
        .map_err(|_| SpanError::Diagram("span relation is not an equivalence relation"))?;
    Equilogical::new(span.graph.a0.clone(), rel)
        .map_err(|_| SpanError::Diagram("span base is not T0"))
}

/// Morphism part of the equivalence: the class of the object component.
pub fn functor_f_mor(
    ambient: &FinTopCat,
    source: &EquivalenceSpan<FinTopCat>,
    target: &EquivalenceSpan<FinTopCat>,
    hom: &GraphHom<FinTopCat>,
) -> Result<EquMap, SpanError> {
    let fe = functor_f(ambient, source)?;
    let ff = functor_f(ambient, target)?;
    let rep = EquMapRep::new(fe, ff, hom.f0.clone())
        .map_err(|e| SpanError::Invalid(e.to_string()))?;
    Ok(EquMap::from_rep(rep))
}

/// Inverse construction: the relation with its subspace topology from
/// the product, with projections as legs and the unique structure maps.
pub fn functor_g(
    ambient: &FinTopCat,
    e: &Equilogical,
) -> Result<EquivalenceSpan<FinTopCat>, SpanError> {
    let (prod, p1, p2) = fintop::product_space(&e.space, &e.space)
        .map_err(|err| CatError::Unsupported(err.to_string()))?;
    let n = e.points();
    let mut subset = crate::mask::Mask::EMPTY;
    for (i, j) in e.rel.pairs() {
        subset.insert(i * n + j);
    }
    let (_a1, incl) = fintop::subspace(&prod, &subset)
        .map_err(|err| CatError::Unsupported(err.to_string()))?;
    let d1 = ambient.compose(&p1, &incl)?;
    let d2 = ambient.compose(&p2, &incl)?;
    let pairs: Vec<(usize, usize)> = d1
        .map()
        .iter()
        .copied()
        .zip(d2.map().iter().copied())
        .collect();
    let index_of = |i: usize, j: usize| -> usize {
        pairs
            .iter()
            .position(|&p| p == (i, j))
            .expect("relation pair present")
    };
    let r_table: Vec<usize> = (0..n).map(|x| index_of(x, x)).collect();
    let s_table: Vec<usize> = pairs.iter().map(|&(i, j)| index_of(j, i)).collect();
    let graph = GraphInC::new(ambient, d1, d2)?;
    let r = ambient.make_mor(&graph.a0, &graph.a1, r_table)?;
    let s = ambient.make_mor(&graph.a1, &graph.a1, s_table)?;
    let pullback = pullback_of_cospan(ambient, &graph.d2, &graph.d1)?;
    let t_table: Vec<usize> = pullback
        .pairs
        .iter()
        .map(|&(u, v)| index_of(pairs[u].0, pairs[v].1))
        .collect();
    let t = ambient.make_mor(&pullback.apex, &graph.a1, t_table)?;
    let span = EquivalenceSpan {
        graph,
        r,
        s,
        t,
        pullback,
    };
    span.check(ambient)?;
    Ok(span)
}

/// The diagonal span on a space: relation is equality.
pub fn diagonal_span(
    ambient: &FinTopCat,
    space: Arc<FinSpace>,
) -> Result<EquivalenceSpan<FinTopCat>, SpanError> {
    let e = crate::equ::embed_t0(space)
        .map_err(|err| CatError::Unsupported(err.to_string()))?;
    functor_g(ambient, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{is_jointly_monic, CategoryContext};
    use crate::equ::{embed_t0, hom_set};

    fn cat() -> FinTopCat {
        FinTopCat
    }

    fn sierp() -> Arc<FinSpace> {
        Arc::new(FinSpace::sierpinski())
    }

    fn discrete(n: usize) -> Arc<FinSpace> {
        Arc::new(FinSpace::discrete(n))
    }

    fn total_span_on_discrete_2() -> EquivalenceSpan<FinTopCat> {
        let e = Equilogical::new(discrete(2), EqRel::total(2)).unwrap();
        functor_g(&cat(), &e).unwrap()
    }

    #[test]
    fn diagonal_span_is_equivalence_span() {
        let span = diagonal_span(&cat(), sierp()).unwrap();
        assert!(is_equivalence_span(
            &cat(),
            span.graph.clone(),
            span.r.clone(),
            span.s.clone(),
            span.t.clone()
        ));
    }

    #[test]
    fn total_relation_span_is_equivalence_span_with_discrete_a1() {
        let span = total_span_on_discrete_2();
        assert_eq!(span.graph.a1.points(), 4);
        assert_eq!(*span.graph.a1, FinSpace::discrete(4));
    }

    #[test]
    fn wrong_transitivity_target_fails_validation() {
        let span = total_span_on_discrete_2();
        let amb = cat();
        // Corrupt t: send some composable pair to an arrow with the
        // wrong endpoints.
        let mut t_table = amb.point_map(&span.t);
        let pairs = span.composable_pairs().to_vec();
        let d1 = amb.point_map(&span.graph.d1);
        let (u, v) = pairs[1];
        let want = (d1[u], amb.point_map(&span.graph.d2)[v]);
        let bad = (0..4)
            .find(|&e| (d1[e], amb.point_map(&span.graph.d2)[e]) != want)
            .unwrap();
        t_table[1] = bad;
        let t = amb
            .make_mor(&span.pullback.apex, &span.graph.a1, t_table)
            .unwrap();
        assert!(!is_equivalence_span(
            &amb,
            span.graph.clone(),
            span.r.clone(),
            span.s.clone(),
            t
        ));
    }

    #[test]
    fn functor_g_then_f_is_identity_on_diagonal_sierpinski() {
        let amb = cat();
        let e = embed_t0(sierp()).unwrap();
        let span = functor_g(&amb, &e).unwrap();
        assert!(is_subspatial(&amb, &span));
        assert_eq!(functor_f(&amb, &span).unwrap(), e);
    }

    #[test]
    fn functor_f_reads_off_total_relation() {
        let amb = cat();
        let span = total_span_on_discrete_2();
        let e = functor_f(&amb, &span).unwrap();
        assert_eq!(e.rel, EqRel::total(2));
    }

    #[test]
    fn terminal_gives_diagonal_span_on_point() {
        let amb = cat();
        let span = functor_g(&amb, &Equilogical::terminal()).unwrap();
        assert_eq!(span.graph.a0.points(), 1);
        assert_eq!(span.graph.a1.points(), 1);
    }

    #[test]
    fn diagonal_span_is_subspatial() {
        let amb = cat();
        assert!(is_subspatial(&amb, &diagonal_span(&amb, sierp()).unwrap()));
    }

    #[test]
    fn indiscrete_a1_on_total_relation_is_not_subspatial() {
        let amb = cat();
        let good = total_span_on_discrete_2();
        // Same point data but A1 carries the indiscrete topology: the
        // trace of the product topology would be discrete.
        let bad_a1 = Arc::new(FinSpace::indiscrete(4));
        let d1 = ContMap::new(bad_a1.clone(), good.graph.a0.clone(), amb.point_map(&good.graph.d1))
            .unwrap();
        let d2 = ContMap::new(bad_a1.clone(), good.graph.a0.clone(), amb.point_map(&good.graph.d2))
            .unwrap();
        let graph = GraphInC::new(&amb, d1, d2).unwrap();
        let r = ContMap::new(good.graph.a0.clone(), bad_a1.clone(), amb.point_map(&good.r))
            .unwrap();
        let s = ContMap::new(bad_a1.clone(), bad_a1.clone(), amb.point_map(&good.s)).unwrap();
        let pullback = pullback_of_cospan(&amb, &graph.d2, &graph.d1).unwrap();
        let t = amb
            .make_mor(&pullback.apex, &graph.a1, amb.point_map(&good.t))
            .unwrap();
        let span = EquivalenceSpan {
            graph,
            r,
            s,
            t,
            pullback,
        };
        assert!(!is_subspatial(&amb, &span));
    }

    #[test]
    fn identified_with_itself_via_reflexivity() {
        let amb = cat();
        let span = total_span_on_discrete_2();
        let id = GraphHom::identity(&amb, &span);
        let witness = homs_identified(&amb, &span, &span, &id, &id, 10_000)
            .unwrap()
            .expect("reflexivity witness");
        // r ∘ f0 is such a witness; any found witness must satisfy the
        // two triangle equations.
        let e1h = amb.compose(&span.graph.d1, &witness).unwrap();
        assert!(amb.mor_eq(&e1h, &id.f0));
    }

    #[test]
    fn distinct_homs_into_total_span_are_identified() {
        let amb = cat();
        let diag = diagonal_span(&amb, discrete(2)).unwrap();
        let total = total_span_on_discrete_2();
        let homs = enumerate_span_homs(&amb, &diag, &total, 10_000).unwrap();
        // Find two with pointwise different object parts.
        let a = homs
            .iter()
            .find(|h| amb.point_map(&h.f0) == vec![0, 0])
            .unwrap();
        let b = homs
            .iter()
            .find(|h| amb.point_map(&h.f0) == vec![1, 1])
            .unwrap();
        assert!(homs_identified(&amb, &diag, &total, a, b, 10_000)
            .unwrap()
            .is_some());
    }

    #[test]
    fn distinct_homs_into_diagonal_span_are_not_identified() {
        let amb = cat();
        let diag = diagonal_span(&amb, discrete(2)).unwrap();
        let homs = enumerate_span_homs(&amb, &diag, &diag, 10_000).unwrap();
        let a = homs
            .iter()
            .find(|h| amb.point_map(&h.f0) == vec![0, 0])
            .unwrap();
        let b = homs
            .iter()
            .find(|h| amb.point_map(&h.f0) == vec![1, 1])
            .unwrap();
        assert!(homs_identified(&amb, &diag, &diag, a, b, 10_000)
            .unwrap()
            .is_none());
    }

    #[test]
    fn identification_is_equivalence_relation_on_homsets() {
        let amb = cat();
        let fixtures = vec![
            diagonal_span(&amb, sierp()).unwrap(),
            total_span_on_discrete_2(),
            functor_g(
                &amb,
                &Equilogical::new(
                    discrete(3),
                    EqRel::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)]).unwrap(),
                )
                .unwrap(),
            )
            .unwrap(),
        ];
        for src in &fixtures {
            for tgt in &fixtures {
                let homs = enumerate_span_homs(&amb, src, tgt, 100_000).unwrap();
                for a in &homs {
                    assert!(homs_identified(&amb, src, tgt, a, a, 100_000)
                        .unwrap()
                        .is_some());
                    for b in &homs {
                        let ab = homs_identified(&amb, src, tgt, a, b, 100_000)
                            .unwrap()
                            .is_some();
                        let ba = homs_identified(&amb, src, tgt, b, a, 100_000)
                            .unwrap()
                            .is_some();
                        assert_eq!(ab, ba);
                        for c in &homs {
                            if ab
                                && homs_identified(&amb, src, tgt, b, c, 100_000)
                                    .unwrap()
                                    .is_some()
                            {
                                assert!(homs_identified(&amb, src, tgt, a, c, 100_000)
                                    .unwrap()
                                    .is_some());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn structure_maps_unique_for_subspatial_fixtures() {
        let amb = cat();
        for span in [
            diagonal_span(&amb, sierp()).unwrap(),
            total_span_on_discrete_2(),
        ] {
            let (rs, ss, ts) =
                structure_map_solutions(&amb, &span.graph.d1, &span.graph.d2, 100_000).unwrap();
            assert_eq!((rs.len(), ss.len(), ts.len()), (1, 1, 1));
            assert!(amb.mor_eq(&rs[0], &span.r));
            assert!(amb.mor_eq(&ss[0], &span.s));
            assert!(amb.mor_eq(&ts[0], &span.t));
        }
    }

    #[test]
    fn arrow_component_is_forced_by_object_part() {
        let amb = cat();
        let src = total_span_on_discrete_2();
        let tgt = diagonal_span(&amb, discrete(2)).unwrap();
        let homs = enumerate_span_homs(&amb, &src, &tgt, 10_000).unwrap();
        for h in &homs {
            let f0 = amb.point_map(&h.f0);
            let d1 = amb.point_map(&src.graph.d1);
            let d2 = amb.point_map(&src.graph.d2);
            let e1 = amb.point_map(&tgt.graph.d1);
            let e2 = amb.point_map(&tgt.graph.d2);
            let f1 = amb.point_map(&h.f1);
            for e in 0..src.graph.a1.points() {
                assert_eq!((e1[f1[e]], e2[f1[e]]), (f0[d1[e]], f0[d2[e]]));
            }
        }
    }

    #[test]
    fn round_trip_f_after_g_is_identity_on_objects() {
        use rand::SeedableRng;
        let amb = cat();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let e = crate::fixtures::random_equilogical(&mut rng, 4);
            let span = functor_g(&amb, &e).unwrap();
            assert!(is_subspatial(&amb, &span));
            assert_eq!(functor_f(&amb, &span).unwrap(), e);
        }
    }

    #[test]
    fn hom_classes_biject_with_equ_homs_small() {
        let amb = cat();
        let fixtures = vec![
            diagonal_span(&amb, sierp()).unwrap(),
            total_span_on_discrete_2(),
        ];
        for src in &fixtures {
            for tgt in &fixtures {
                let homs = enumerate_span_homs(&amb, src, tgt, 100_000).unwrap();
                let classes =
                    identification_classes(&amb, src, tgt, &homs, 100_000).unwrap();
                let fe = functor_f(&amb, src).unwrap();
                let ff = functor_f(&amb, tgt).unwrap();
                let equ_classes = hom_set(&fe, &ff, 100_000).unwrap();
                assert_eq!(classes.len(), equ_classes.len());
            }
        }
    }

    #[test]
    fn jointly_monic_matches_enumeration_oracle() {
        let amb = cat();
        let span = total_span_on_discrete_2();
        let pair = span.legs().unwrap();
        assert!(is_jointly_monic(&amb, &pair));
        let ctx = CategoryContext {
            ambient: &amb,
            objects: vec![span.graph.a0.clone(), span.graph.a1.clone()],
            cap: 100_000,
        };
        assert!(crate::cat::is_jointly_monic_by_enumeration(&ctx, &pair).unwrap());
    }
}
