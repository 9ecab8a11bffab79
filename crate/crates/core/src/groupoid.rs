//! Groupoids in an ambient category, functors, natural transformations,
//! homotopy of functors through the interval groupoid, and the generic
//! interval-object contract.
//!
//! A groupoid is a graph with identities, a composition on consecutive
//! arcs, and an involution providing two-sided inverses. When the legs
//! are jointly monic every hom-set is a subsingleton, so a graph with
//! reflexivity/symmetry/transitivity structure is automatically a
//! groupoid, graph homomorphisms are automatically functors, and an
//! arrow `a : H0 → G1` whose endpoints match two functors is
//! automatically a natural transformation. This is what makes the
//! quotient of topological groupoids by homotopy tractable at desk
//! scale: functors are determined by their object parts.

use std::sync::Arc;

use thiserror::Error;

use crate::cat::{is_jointly_monic, pullback_of_cospan, Ambient, CatError, Pullback};
use crate::equ;
use crate::fintop::{FinSpace, FinTopCat};
use crate::spans::{self, EquivalenceSpan, GraphHom, GraphInC, SpanError};

#[derive(Debug, Error)]
pub enum GroupoidError {
    #[error("structure map `{0}` has wrong endpoints")]
    BadEndpoints(&'static str),
    #[error("groupoid law `{0}` fails")]
    Law(String),
    #[error("legs are not jointly monic")]
    NotJointlyMonic,
    #[error("functor law `{0}` fails")]
    Functor(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
    #[error(transparent)]
    Span(#[from] SpanError),
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// A groupoid in the ambient: a graph with identities `i`, composition
/// `c` on the composable-pairs pullback, and involution `s`.
#[derive(Debug)]
pub struct GroupoidInC<A: Ambient> {
    pub graph: GraphInC<A>,
    pub i: A::Mor,
    pub c: A::Mor,
    pub s: A::Mor,
    pub pullback: Pullback<A>,
}

impl<A: Ambient> Clone for GroupoidInC<A> {
    fn clone(&self) -> Self {
        GroupoidInC {
            graph: self.graph.clone(),
            i: self.i.clone(),
            c: self.c.clone(),
            s: self.s.clone(),
            pullback: self.pullback.clone(),
        }
    }
}

impl<A: Ambient> GroupoidInC<A> {
    /// Validate all groupoid laws pointwise and assemble.
    pub fn new(
        ambient: &A,
        graph: GraphInC<A>,
        i: A::Mor,
        c: A::Mor,
        s: A::Mor,
    ) -> Result<Self, GroupoidError> {
        let pullback = pullback_of_cospan(ambient, &graph.d2, &graph.d1)?;
        let g = GroupoidInC {
            graph,
            i,
            c,
            s,
            pullback,
        };
        g.check(ambient)?;
        Ok(g)
    }

    fn check(&self, ambient: &A) -> Result<(), GroupoidError> {
        let g = &self.graph;
        if ambient.src(&self.i) != g.a0 || ambient.tgt(&self.i) != g.a1 {
            return Err(GroupoidError::BadEndpoints("i"));
        }
        if ambient.src(&self.s) != g.a1 || ambient.tgt(&self.s) != g.a1 {
            return Err(GroupoidError::BadEndpoints("s"));
        }
        if ambient.src(&self.c) != self.pullback.apex || ambient.tgt(&self.c) != g.a1 {
            return Err(GroupoidError::BadEndpoints("c"));
        }
        let d1 = ambient.point_map(&g.d1);
        let d2 = ambient.point_map(&g.d2);
        let i = ambient.point_map(&self.i);
        let c = ambient.point_map(&self.c);
        let s = ambient.point_map(&self.s);
        let pairs = &self.pullback.pairs;
        let compose = |u: usize, v: usize| -> Option<usize> {
            pairs.iter().position(|&p| p == (u, v)).map(|k| c[k])
        };
        let n0 = ambient.carrier_len(&g.a0);
        let n1 = ambient.carrier_len(&g.a1);
        for x in 0..n0 {
            if d1[i[x]] != x || d2[i[x]] != x {
                return Err(GroupoidError::Law(format!("identity at {x} has wrong endpoints")));
            }
        }
        for e in 0..n1 {
            if d1[s[e]] != d2[e] || d2[s[e]] != d1[e] {
                return Err(GroupoidError::Law(format!("involution of {e} has wrong endpoints")));
            }
            if s[s[e]] != e {
                return Err(GroupoidError::Law(format!("involution is not involutive at {e}")));
            }
            let left = compose(i[d1[e]], e)
                .ok_or_else(|| GroupoidError::Law("missing composable pair".into()))?;
            if left != e {
                return Err(GroupoidError::Law(format!("left unit fails at {e}")));
            }
            let right = compose(e, i[d2[e]])
                .ok_or_else(|| GroupoidError::Law("missing composable pair".into()))?;
            if right != e {
                return Err(GroupoidError::Law(format!("right unit fails at {e}")));
            }
            let inv_r = compose(e, s[e])
                .ok_or_else(|| GroupoidError::Law("missing composable pair".into()))?;
            if inv_r != i[d1[e]] {
                return Err(GroupoidError::Law(format!("right inverse fails at {e}")));
            }
            let inv_l = compose(s[e], e)
                .ok_or_else(|| GroupoidError::Law("missing composable pair".into()))?;
            if inv_l != i[d2[e]] {
                return Err(GroupoidError::Law(format!("left inverse fails at {e}")));
            }
        }
        for &(u, v) in pairs {
            let uv = compose(u, v).expect("pair is composable");
            if d1[uv] != d1[u] || d2[uv] != d2[v] {
                return Err(GroupoidError::Law(format!(
                    "composite of ({u}, {v}) has wrong endpoints"
                )));
            }
            for w in 0..n1 {
                if d1[w] == d2[uv] {
                    let l = compose(uv, w).expect("composable");
                    let vw = compose(v, w).expect("composable");
                    let r = compose(u, vw).expect("composable");
                    if l != r {
                        return Err(GroupoidError::Law(format!(
                            "associativity fails at ({u}, {v}, {w})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Pointwise composition of two arrows, if consecutive.
    pub fn compose_arrows(&self, ambient: &A, u: usize, v: usize) -> Option<usize> {
        let c = ambient.point_map(&self.c);
        self.pullback
            .pairs
            .iter()
            .position(|&p| p == (u, v))
            .map(|k| c[k])
    }

    /// The arrow from `x` to `y`, when hom-sets are subsingletons.
    pub fn arrow_between(&self, ambient: &A, x: usize, y: usize) -> Option<usize> {
        let d1 = ambient.point_map(&self.graph.d1);
        let d2 = ambient.point_map(&self.graph.d2);
        (0..ambient.carrier_len(&self.graph.a1)).find(|&e| d1[e] == x && d2[e] == y)
    }

    pub fn is_jointly_monic(&self, ambient: &A) -> bool {
        is_jointly_monic(
            ambient,
            &crate::cat::MorphismPair {
                d1: self.graph.d1.clone(),
                d2: self.graph.d2.clone(),
            },
        )
    }
}

/// Is the candidate data a groupoid?
pub fn is_groupoid<A: Ambient>(
    ambient: &A,
    graph: GraphInC<A>,
    i: A::Mor,
    c: A::Mor,
    s: A::Mor,
) -> bool {
    GroupoidInC::new(ambient, graph, i, c, s).is_ok()
}

/// Upgrade an equivalence span with jointly monic legs to a groupoid
/// (identities = reflexivity, composition = the compatible operation,
/// involution = symmetry). Refuses when the legs are not jointly monic.
pub fn groupoid_from_jointly_monic<A: Ambient>(
    ambient: &A,
    span: &EquivalenceSpan<A>,
) -> Result<GroupoidInC<A>, GroupoidError> {
    let pair = span.legs()?;
    if !is_jointly_monic(ambient, &pair) {
        return Err(GroupoidError::NotJointlyMonic);
    }
    GroupoidInC::new(
        ambient,
        span.graph.clone(),
        span.r.clone(),
        span.t.clone(),
        span.s.clone(),
    )
}

/// A functor of groupoids: a graph homomorphism commuting with the
/// structure maps.
#[derive(Debug)]
pub struct GroupoidFunctor<A: Ambient> {
    pub source: Arc<GroupoidInC<A>>,
    pub target: Arc<GroupoidInC<A>>,
    pub f1: A::Mor,
    pub f0: A::Mor,
}

impl<A: Ambient> Clone for GroupoidFunctor<A> {
    fn clone(&self) -> Self {
        GroupoidFunctor {
            source: self.source.clone(),
            target: self.target.clone(),
            f1: self.f1.clone(),
            f0: self.f0.clone(),
        }
    }
}

impl<A: Ambient> GroupoidFunctor<A> {
    pub fn new(
        ambient: &A,
        source: Arc<GroupoidInC<A>>,
        target: Arc<GroupoidInC<A>>,
        f1: A::Mor,
        f0: A::Mor,
    ) -> Result<Self, GroupoidError> {
        let f = GroupoidFunctor {
            source,
            target,
            f1,
            f0,
        };
        f.check(ambient)?;
        Ok(f)
    }

    fn check(&self, ambient: &A) -> Result<(), GroupoidError> {
        let h = &self.source;
        let g = &self.target;
        if ambient.src(&self.f0) != h.graph.a0
            || ambient.tgt(&self.f0) != g.graph.a0
            || ambient.src(&self.f1) != h.graph.a1
            || ambient.tgt(&self.f1) != g.graph.a1
        {
            return Err(GroupoidError::Functor("wrong endpoints".into()));
        }
        let f0 = ambient.point_map(&self.f0);
        let f1 = ambient.point_map(&self.f1);
        let hd1 = ambient.point_map(&h.graph.d1);
        let hd2 = ambient.point_map(&h.graph.d2);
        let gd1 = ambient.point_map(&g.graph.d1);
        let gd2 = ambient.point_map(&g.graph.d2);
        let hi = ambient.point_map(&h.i);
        let gi = ambient.point_map(&g.i);
        let hs = ambient.point_map(&h.s);
        let gs = ambient.point_map(&g.s);
        for e in 0..f1.len() {
            if gd1[f1[e]] != f0[hd1[e]] || gd2[f1[e]] != f0[hd2[e]] {
                return Err(GroupoidError::Functor(format!("face square fails at {e}")));
            }
            if f1[hs[e]] != gs[f1[e]] {
                return Err(GroupoidError::Functor(format!(
                    "involution square fails at {e}"
                )));
            }
        }
        for (x, &ix) in hi.iter().enumerate() {
            if f1[ix] != gi[f0[x]] {
                return Err(GroupoidError::Functor(format!("identity square fails at {x}")));
            }
        }
        let hc = ambient.point_map(&h.c);
        for (k, &(u, v)) in h.pullback.pairs.iter().enumerate() {
            let lhs = f1[hc[k]];
            let rhs = g
                .compose_arrows(ambient, f1[u], f1[v])
                .ok_or_else(|| GroupoidError::Functor("image pair not composable".into()))?;
            if lhs != rhs {
                return Err(GroupoidError::Functor(format!(
                    "composition square fails at ({u}, {v})"
                )));
            }
        }
        Ok(())
    }

    pub fn identity(ambient: &A, g: &Arc<GroupoidInC<A>>) -> Self {
        GroupoidFunctor {
            source: g.clone(),
            target: g.clone(),
            f1: ambient.identity(&g.graph.a1),
            f0: ambient.identity(&g.graph.a0),
        }
    }

    pub fn compose(ambient: &A, g: &Self, f: &Self) -> Result<Self, GroupoidError> {
        GroupoidFunctor::new(
            ambient,
            f.source.clone(),
            g.target.clone(),
            ambient.compose(&g.f1, &f.f1)?,
            ambient.compose(&g.f0, &f.f0)?,
        )
    }

    pub fn eq(&self, ambient: &A, other: &Self) -> bool {
        ambient.mor_eq(&self.f0, &other.f0) && ambient.mor_eq(&self.f1, &other.f1)
    }
}

/// Upgrade a graph homomorphism into a jointly monic groupoid to a
/// functor. The upgrade is guaranteed; a failure is an internal breach.
pub fn graph_hom_is_functor<A: Ambient>(
    ambient: &A,
    source: Arc<GroupoidInC<A>>,
    target: Arc<GroupoidInC<A>>,
    hom: &GraphHom<A>,
) -> Result<GroupoidFunctor<A>, GroupoidError> {
    if !target.is_jointly_monic(ambient) {
        return Err(GroupoidError::NotJointlyMonic);
    }
    GroupoidFunctor::new(
        ambient,
        source,
        target,
        hom.f1.clone(),
        hom.f0.clone(),
    )
    .map_err(|e| GroupoidError::Internal(format!("guaranteed upgrade failed: {e}")))
}

/// The triangle making `a : H0 → G1` a natural transformation from `f`
/// to `g`: `d1 ∘ a = f0` and `d2 ∘ a = g0`. With a jointly monic target
/// no further naturality condition is needed.
pub fn nat_trans_check<A: Ambient>(
    ambient: &A,
    f: &GroupoidFunctor<A>,
    g: &GroupoidFunctor<A>,
    a: &A::Mor,
) -> bool {
    let tgt = &f.target;
    let left = match ambient.compose(&tgt.graph.d1, a) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let right = match ambient.compose(&tgt.graph.d2, a) {
        Ok(m) => m,
        Err(_) => return false,
    };
    ambient.mor_eq(&left, &f.f0) && ambient.mor_eq(&right, &g.f0)
}

// ---------------------------------------------------------------------
// Topological groupoids: the interval groupoid and homotopies.
// ---------------------------------------------------------------------

/// The interval groupoid: two discrete points with exactly one arrow in
/// each hom-set (the indiscrete groupoid on two discrete points).
pub fn interval_groupoid() -> GroupoidInC<FinTopCat> {
    let cat = FinTopCat;
    let e = equ::Equilogical::new(
        Arc::new(FinSpace::discrete(2)),
        equ::EqRel::total(2),
    )
    .expect("discrete two-point space is T0");
    let span = spans::functor_g(&cat, &e).expect("total relation span");
    groupoid_from_jointly_monic(&cat, &span).expect("interval groupoid laws")
}

/// The terminal groupoid: one object, one arrow.
pub fn terminal_groupoid() -> GroupoidInC<FinTopCat> {
    let cat = FinTopCat;
    let span = spans::diagonal_span(&cat, Arc::new(FinSpace::point())).expect("point span");
    groupoid_from_jointly_monic(&cat, &span).expect("terminal groupoid laws")
}

/// Search for a natural transformation witnessing a homotopy between
/// parallel functors: an arrow `a` with the endpoint triangles. The
/// fibers are subsingletons for jointly monic targets.
pub fn homotopic_functors(
    ambient: &FinTopCat,
    f: &GroupoidFunctor<FinTopCat>,
    g: &GroupoidFunctor<FinTopCat>,
) -> Result<Option<crate::fintop::ContMap>, GroupoidError> {
    let h0 = &f.source.graph.a0;
    let tgt = &f.target;
    let f0 = ambient.point_map(&f.f0);
    let g0 = ambient.point_map(&g.f0);
    let d1 = ambient.point_map(&tgt.graph.d1);
    let d2 = ambient.point_map(&tgt.graph.d2);
    let n1 = ambient.carrier_len(&tgt.graph.a1);
    let fibers: Vec<Vec<usize>> = (0..h0.points())
        .map(|x| {
            (0..n1)
                .filter(|&e| d1[e] == f0[x] && d2[e] == g0[x])
                .collect()
        })
        .collect();
    if fibers.iter().any(|f| f.is_empty()) {
        return Ok(None);
    }
    let mut choice = vec![0usize; fibers.len()];
    fn walk(
        ambient: &FinTopCat,
        h0: &Arc<FinSpace>,
        a1: &Arc<FinSpace>,
        fibers: &[Vec<usize>],
        choice: &mut Vec<usize>,
        depth: usize,
    ) -> Option<crate::fintop::ContMap> {
        if depth == fibers.len() {
            return Ambient::make_mor(ambient, h0, a1, choice.clone()).ok();
        }
        for &cand in &fibers[depth] {
            choice[depth] = cand;
            if let Some(m) = walk(ambient, h0, a1, fibers, choice, depth + 1) {
                return Some(m);
            }
        }
        None
    }
    Ok(walk(
        ambient,
        h0,
        &tgt.graph.a1,
        &fibers,
        &mut choice,
        0,
    ))
}

/// The product groupoid, componentwise on carriers with implicit
/// product topologies.
pub fn product_groupoid(
    ambient: &FinTopCat,
    h: &GroupoidInC<FinTopCat>,
    k: &GroupoidInC<FinTopCat>,
) -> Result<GroupoidInC<FinTopCat>, GroupoidError> {
    let (g0, _, _) = crate::fintop::product_space_virtual(&h.graph.a0, &k.graph.a0)
        .map_err(|e| CatError::Unsupported(e.to_string()))?;
    let (g1, _, _) = crate::fintop::product_space_virtual(&h.graph.a1, &k.graph.a1)
        .map_err(|e| CatError::Unsupported(e.to_string()))?;
    let n0k = k.graph.a0.points();
    let n1k = k.graph.a1.points();
    let hd1 = ambient.point_map(&h.graph.d1);
    let hd2 = ambient.point_map(&h.graph.d2);
    let kd1 = ambient.point_map(&k.graph.d1);
    let kd2 = ambient.point_map(&k.graph.d2);
    let pair1 = |e: usize, w: usize| e * n1k + w;
    let pair0 = |x: usize, y: usize| x * n0k + y;
    let n1 = g1.points();
    let d1_table: Vec<usize> = (0..n1)
        .map(|p| pair0(hd1[p / n1k], kd1[p % n1k]))
        .collect();
    let d2_table: Vec<usize> = (0..n1)
        .map(|p| pair0(hd2[p / n1k], kd2[p % n1k]))
        .collect();
    let d1 = Ambient::make_mor(ambient, &g1, &g0, d1_table)?;
    let d2 = Ambient::make_mor(ambient, &g1, &g0, d2_table)?;
    let graph = GraphInC::new(ambient, d1, d2)?;
    let hi = ambient.point_map(&h.i);
    let ki = ambient.point_map(&k.i);
    let i_table: Vec<usize> = (0..g0.points())
        .map(|p| pair1(hi[p / n0k], ki[p % n0k]))
        .collect();
    let i = Ambient::make_mor(ambient, &g0, &g1, i_table)?;
    let hs = ambient.point_map(&h.s);
    let ks = ambient.point_map(&k.s);
    let s_table: Vec<usize> = (0..n1).map(|p| pair1(hs[p / n1k], ks[p % n1k])).collect();
    let s = Ambient::make_mor(ambient, &g1, &g1, s_table)?;
    let pullback = pullback_of_cospan(ambient, &graph.d2, &graph.d1)?;
    let mut c_table = Vec::with_capacity(pullback.pairs.len());
    for &(u, v) in &pullback.pairs {
        let (uh, uk) = (u / n1k, u % n1k);
        let (vh, vk) = (v / n1k, v % n1k);
        let ch = h
            .compose_arrows(ambient, uh, vh)
            .ok_or_else(|| GroupoidError::Internal("left component not composable".into()))?;
        let ck = k
            .compose_arrows(ambient, uk, vk)
            .ok_or_else(|| GroupoidError::Internal("right component not composable".into()))?;
        c_table.push(pair1(ch, ck));
    }
    let c = Ambient::make_mor(ambient, &pullback.apex, &g1, c_table)?;
    let g = GroupoidInC {
        graph,
        i,
        c,
        s,
        pullback,
    };
    g.check(ambient)?;
    Ok(g)
}

/// The two endpoint inclusions `H → H × I` of the cylinder.
pub fn cylinder_inclusions(
    ambient: &FinTopCat,
    h: &Arc<GroupoidInC<FinTopCat>>,
    interval: &Arc<GroupoidInC<FinTopCat>>,
    cylinder: &Arc<GroupoidInC<FinTopCat>>,
) -> Result<(GroupoidFunctor<FinTopCat>, GroupoidFunctor<FinTopCat>), GroupoidError> {
    let n0k = interval.graph.a0.points();
    let n1k = interval.graph.a1.points();
    let ki = ambient.point_map(&interval.i);
    let mut out = Vec::new();
    for endpoint in [0usize, 1] {
        let f0_table: Vec<usize> = (0..h.graph.a0.points())
            .map(|x| x * n0k + endpoint)
            .collect();
        let f1_table: Vec<usize> = (0..h.graph.a1.points())
            .map(|e| e * n1k + ki[endpoint])
            .collect();
        let f0 = Ambient::make_mor(ambient, &h.graph.a0, &cylinder.graph.a0, f0_table)?;
        let f1 = Ambient::make_mor(ambient, &h.graph.a1, &cylinder.graph.a1, f1_table)?;
        out.push(GroupoidFunctor::new(
            ambient,
            h.clone(),
            cylinder.clone(),
            f1,
            f0,
        )?);
    }
    let i1 = out.pop().expect("two inclusions");
    let i0 = out.pop().expect("two inclusions");
    Ok((i0, i1))
}

/// Build the cylinder functor `K : H × I → G` induced by a homotopy
/// witness, for a jointly monic target: `K(x, j)` is `F0 x` or `G0 x`
/// and arrows are the unique ones with matching endpoints.
pub fn cylinder_functor_from_witness(
    ambient: &FinTopCat,
    f: &GroupoidFunctor<FinTopCat>,
    g: &GroupoidFunctor<FinTopCat>,
    cylinder: &Arc<GroupoidInC<FinTopCat>>,
    interval: &Arc<GroupoidInC<FinTopCat>>,
) -> Result<GroupoidFunctor<FinTopCat>, GroupoidError> {
    let tgt = f.target.clone();
    if !tgt.is_jointly_monic(ambient) {
        return Err(GroupoidError::NotJointlyMonic);
    }
    let h = &f.source;
    let n0k = interval.graph.a0.points();
    let n1k = interval.graph.a1.points();
    let f0 = ambient.point_map(&f.f0);
    let g0 = ambient.point_map(&g.f0);
    let ends = |x: usize, j: usize| if j == 0 { f0[x] } else { g0[x] };
    let k0_table: Vec<usize> = (0..h.graph.a0.points() * n0k)
        .map(|p| ends(p / n0k, p % n0k))
        .collect();
    let hd1 = ambient.point_map(&h.graph.d1);
    let hd2 = ambient.point_map(&h.graph.d2);
    let kd1 = ambient.point_map(&interval.graph.d1);
    let kd2 = ambient.point_map(&interval.graph.d2);
    let mut k1_table = Vec::with_capacity(h.graph.a1.points() * n1k);
    for p in 0..h.graph.a1.points() * n1k {
        let (e, w) = (p / n1k, p % n1k);
        let src = ends(hd1[e], kd1[w]);
        let dst = ends(hd2[e], kd2[w]);
        let arrow = tgt.arrow_between(ambient, src, dst).ok_or_else(|| {
            GroupoidError::Internal("homotopy witness exists but an arrow is missing".into())
        })?;
        k1_table.push(arrow);
    }
    let k0 = Ambient::make_mor(ambient, &cylinder.graph.a0, &tgt.graph.a0, k0_table)?;
    let k1 = Ambient::make_mor(ambient, &cylinder.graph.a1, &tgt.graph.a1, k1_table)?;
    GroupoidFunctor::new(ambient, cylinder.clone(), tgt, k1, k0)
}

/// Enumerate functors between groupoids. Object parts are enumerated as
/// continuous maps; arrow parts are searched over the endpoint fibers
/// (forced for jointly monic targets).
pub fn enumerate_functors(
    ambient: &FinTopCat,
    h: &Arc<GroupoidInC<FinTopCat>>,
    g: &Arc<GroupoidInC<FinTopCat>>,
    cap: usize,
) -> Result<Vec<GroupoidFunctor<FinTopCat>>, GroupoidError> {
    let mut out = Vec::new();
    let gd1 = ambient.point_map(&g.graph.d1);
    let gd2 = ambient.point_map(&g.graph.d2);
    let hd1 = ambient.point_map(&h.graph.d1);
    let hd2 = ambient.point_map(&h.graph.d2);
    let n1g = ambient.carrier_len(&g.graph.a1);
    for f0 in ambient.hom(&h.graph.a0, &g.graph.a0, cap)? {
        let f0m = ambient.point_map(&f0);
        let fibers: Vec<Vec<usize>> = (0..ambient.carrier_len(&h.graph.a1))
            .map(|e| {
                (0..n1g)
                    .filter(|&w| gd1[w] == f0m[hd1[e]] && gd2[w] == f0m[hd2[e]])
                    .collect()
            })
            .collect();
        if fibers.iter().any(|f| f.is_empty()) {
            continue;
        }
        let mut space: usize = 1;
        for f in &fibers {
            space = space.saturating_mul(f.len());
        }
        if space > cap {
            return Err(GroupoidError::Cat(CatError::CapExceeded {
                candidates: space,
                cap,
            }));
        }
        let mut choice = vec![0usize; fibers.len()];
        enumerate_arrow_parts(
            ambient, h, g, &f0, &fibers, &mut choice, 0, &mut out,
        );
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_arrow_parts(
    ambient: &FinTopCat,
    h: &Arc<GroupoidInC<FinTopCat>>,
    g: &Arc<GroupoidInC<FinTopCat>>,
    f0: &crate::fintop::ContMap,
    fibers: &[Vec<usize>],
    choice: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<GroupoidFunctor<FinTopCat>>,
) {
    if depth == fibers.len() {
        if let Ok(f1) = Ambient::make_mor(ambient, &h.graph.a1, &g.graph.a1, choice.clone()) {
            if let Ok(func) =
                GroupoidFunctor::new(ambient, h.clone(), g.clone(), f1, f0.clone())
            {
                out.push(func);
            }
        }
        return;
    }
    for &cand in &fibers[depth] {
        choice[depth] = cand;
        enumerate_arrow_parts(ambient, h, g, f0, fibers, choice, depth + 1, out);
    }
}

// ---------------------------------------------------------------------
// The category of topological groupoids as a homotopy ambient.
// ---------------------------------------------------------------------

use crate::interval::{HomotopyAmbient, HProduct, IntervalObjectData};

/// The category of groupoids of finite spaces and functors, with the
/// enumeration surface needed by the interval-object verifier.
#[derive(Debug, Clone, Copy, Default)]
pub struct GrpdTop {
    pub cap: usize,
}

impl GrpdTop {
    pub fn new(cap: usize) -> Self {
        GrpdTop { cap }
    }
}

fn groupoid_eq(a: &GroupoidInC<FinTopCat>, b: &GroupoidInC<FinTopCat>) -> bool {
    let amb = FinTopCat;
    *a.graph.a0 == *b.graph.a0
        && *a.graph.a1 == *b.graph.a1
        && amb.point_map(&a.graph.d1) == amb.point_map(&b.graph.d1)
        && amb.point_map(&a.graph.d2) == amb.point_map(&b.graph.d2)
        && amb.point_map(&a.i) == amb.point_map(&b.i)
        && amb.point_map(&a.c) == amb.point_map(&b.c)
        && amb.point_map(&a.s) == amb.point_map(&b.s)
}

impl HomotopyAmbient for GrpdTop {
    type Obj = Arc<GroupoidInC<FinTopCat>>;
    type Mor = GroupoidFunctor<FinTopCat>;

    fn obj_eq(&self, a: &Self::Obj, b: &Self::Obj) -> bool {
        groupoid_eq(a, b)
    }

    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        f.eq(&FinTopCat, g)
    }

    fn src(&self, m: &Self::Mor) -> Self::Obj {
        m.source.clone()
    }

    fn tgt(&self, m: &Self::Mor) -> Self::Obj {
        m.target.clone()
    }

    fn identity(&self, a: &Self::Obj) -> Self::Mor {
        GroupoidFunctor::identity(&FinTopCat, a)
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, String> {
        GroupoidFunctor::compose(&FinTopCat, g, f).map_err(|e| e.to_string())
    }

    fn terminal(&self) -> Self::Obj {
        Arc::new(terminal_groupoid())
    }

    fn bang(&self, a: &Self::Obj) -> Self::Mor {
        let amb = FinTopCat;
        let t = self.terminal();
        let f0 = Ambient::make_mor(&amb, &a.graph.a0, &t.graph.a0, vec![0; a.graph.a0.points()])
            .expect("constant map to a point");
        let f1 = Ambient::make_mor(&amb, &a.graph.a1, &t.graph.a1, vec![0; a.graph.a1.points()])
            .expect("constant map to a point");
        GroupoidFunctor::new(&amb, a.clone(), t, f1, f0).expect("terminal functor")
    }

    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Result<HProduct<Self>, String> {
        let amb = FinTopCat;
        let obj = Arc::new(product_groupoid(&amb, a, b).map_err(|e| e.to_string())?);
        let n0b = b.graph.a0.points();
        let n1b = b.graph.a1.points();
        let build = |tgt: &Self::Obj, pick0: &dyn Fn(usize) -> usize, pick1: &dyn Fn(usize) -> usize| {
            let f0 = Ambient::make_mor(
                &amb,
                &obj.graph.a0,
                &tgt.graph.a0,
                (0..obj.graph.a0.points()).map(pick0).collect(),
            )
            .map_err(|e| e.to_string())?;
            let f1 = Ambient::make_mor(
                &amb,
                &obj.graph.a1,
                &tgt.graph.a1,
                (0..obj.graph.a1.points()).map(pick1).collect(),
            )
            .map_err(|e| e.to_string())?;
            GroupoidFunctor::new(&amb, obj.clone(), tgt.clone(), f1, f0).map_err(|e| e.to_string())
        };
        let p1 = build(a, &|p| p / n0b, &|p| p / n1b)?;
        let p2 = build(b, &|p| p % n0b, &|p| p % n1b)?;
        Ok(HProduct { obj, p1, p2 })
    }

    fn pair(
        &self,
        prod: &HProduct<Self>,
        f: &Self::Mor,
        g: &Self::Mor,
    ) -> Result<Self::Mor, String> {
        let amb = FinTopCat;
        let tgt = &prod.obj;
        let b0 = amb.point_map(&prod.p2.f0).iter().copied().max().map_or(1, |m| m + 1);
        let _ = b0;
        let n0b = amb.point_map(&prod.p2.f0)
            .iter()
            .copied()
            .max()
            .map_or(1, |m| m + 1);
        let _ = n0b;
        // Recover the pair index arithmetic from the right factor sizes.
        let right0 = prod.p2.target.graph.a0.points();
        let right1 = prod.p2.target.graph.a1.points();
        let f0m = amb.point_map(&f.f0);
        let g0m = amb.point_map(&g.f0);
        let f1m = amb.point_map(&f.f1);
        let g1m = amb.point_map(&g.f1);
        let t0: Vec<usize> = f0m
            .iter()
            .zip(g0m.iter())
            .map(|(&x, &y)| x * right0 + y)
            .collect();
        let t1: Vec<usize> = f1m
            .iter()
            .zip(g1m.iter())
            .map(|(&x, &y)| x * right1 + y)
            .collect();
        let f0 = Ambient::make_mor(&amb, &f.source.graph.a0, &tgt.graph.a0, t0)
            .map_err(|e| e.to_string())?;
        let f1 = Ambient::make_mor(&amb, &f.source.graph.a1, &tgt.graph.a1, t1)
            .map_err(|e| e.to_string())?;
        GroupoidFunctor::new(&amb, f.source.clone(), tgt.clone(), f1, f0).map_err(|e| e.to_string())
    }

    fn enumerate(&self, a: &Self::Obj, b: &Self::Obj, cap: usize) -> Result<Vec<Self::Mor>, String> {
        enumerate_functors(&FinTopCat, a, b, cap).map_err(|e| e.to_string())
    }
}

/// Interval data over topological groupoids: the interval groupoid, its
/// swap, and the chordless three-object groupoid as the pushout.
pub fn groupoid_interval_data() -> IntervalObjectData<GrpdTop> {
    let amb = FinTopCat;
    let t = Arc::new(terminal_groupoid());
    let interval = Arc::new(interval_groupoid());
    let e = equ::Equilogical::new(Arc::new(FinSpace::discrete(3)), equ::EqRel::total(3))
        .expect("discrete three-point space");
    let pushout = Arc::new(
        groupoid_from_jointly_monic(&amb, &spans::functor_g(&amb, &e).unwrap()).unwrap(),
    );
    let point_functor = |target: &Arc<GroupoidInC<FinTopCat>>, x: usize| {
        let i = amb.point_map(&target.i);
        let f0 = Ambient::make_mor(&amb, &t.graph.a0, &target.graph.a0, vec![x]).unwrap();
        let f1 = Ambient::make_mor(&amb, &t.graph.a1, &target.graph.a1, vec![i[x]]).unwrap();
        GroupoidFunctor::new(&amb, t.clone(), target.clone(), f1, f0).unwrap()
    };
    // An object-part-determined functor into a jointly monic target.
    let by_objects = |src: &Arc<GroupoidInC<FinTopCat>>,
                      tgt: &Arc<GroupoidInC<FinTopCat>>,
                      objs: Vec<usize>| {
        let d1 = amb.point_map(&src.graph.d1);
        let d2 = amb.point_map(&src.graph.d2);
        let f1_table: Vec<usize> = (0..src.graph.a1.points())
            .map(|e| {
                tgt.arrow_between(&amb, objs[d1[e]], objs[d2[e]])
                    .expect("target hom-set inhabited")
            })
            .collect();
        let f0 = Ambient::make_mor(&amb, &src.graph.a0, &tgt.graph.a0, objs).unwrap();
        let f1 = Ambient::make_mor(&amb, &src.graph.a1, &tgt.graph.a1, f1_table).unwrap();
        GroupoidFunctor::new(&amb, src.clone(), tgt.clone(), f1, f0).unwrap()
    };
    IntervalObjectData {
        e0: point_functor(&interval, 0),
        e1: point_functor(&interval, 1),
        iota: by_objects(&interval, &interval, vec![1, 0]),
        inj0: by_objects(&interval, &pushout, vec![0, 1]),
        inj1: by_objects(&interval, &pushout, vec![1, 2]),
        gamma: by_objects(&interval, &pushout, vec![0, 2]),
        interval,
        pushout,
    }
}

// ---------------------------------------------------------------------
// The quotient theorem: homotopy = identification = map equivalence.
// ---------------------------------------------------------------------

/// Outcome of the three-way equivalence check over a fixture suite.
#[derive(Debug, Clone, Default)]
pub struct QuotientReport {
    pub fixture_pairs: usize,
    pub functor_pairs: usize,
    pub counterexamples: Vec<String>,
}

impl QuotientReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// For every pair of parallel functors arising from span homomorphisms
/// between suite fixtures, check that homotopy, identification in the
/// exact completion, and equivalence of the induced equilogical maps
/// all agree.
pub fn homotopy_quotient_equals_equ(
    ambient: &FinTopCat,
    suite: &[EquivalenceSpan<FinTopCat>],
    cap: usize,
) -> Result<QuotientReport, GroupoidError> {
    let mut report = QuotientReport::default();
    let groupoids: Vec<Arc<GroupoidInC<FinTopCat>>> = suite
        .iter()
        .map(|s| groupoid_from_jointly_monic(ambient, s).map(Arc::new))
        .collect::<Result<_, _>>()?;
    let images: Vec<equ::Equilogical> = suite
        .iter()
        .map(|s| spans::functor_f(ambient, s).map_err(GroupoidError::from))
        .collect::<Result<_, _>>()?;
    for (si, src_span) in suite.iter().enumerate() {
        for (ti, tgt_span) in suite.iter().enumerate() {
            report.fixture_pairs += 1;
            let homs = spans::enumerate_span_homs(ambient, src_span, tgt_span, cap)?;
            let functors: Vec<GroupoidFunctor<FinTopCat>> = homs
                .iter()
                .map(|h| graph_hom_is_functor(ambient, groupoids[si].clone(), groupoids[ti].clone(), h))
                .collect::<Result<_, _>>()?;
            for (ai, (ha, fa)) in homs.iter().zip(functors.iter()).enumerate() {
                for (bi, (hb, fb)) in homs.iter().zip(functors.iter()).enumerate() {
                    report.functor_pairs += 1;
                    let homotopic = homotopic_functors(ambient, fa, fb)?.is_some();
                    let identified =
                        spans::homs_identified(ambient, src_span, tgt_span, ha, hb, cap)?
                            .is_some();
                    let rep_a = equ::EquMapRep::new(
                        images[si].clone(),
                        images[ti].clone(),
                        ha.f0.clone(),
                    )
                    .map_err(|e| GroupoidError::Internal(e.to_string()))?;
                    let rep_b = equ::EquMapRep::new(
                        images[si].clone(),
                        images[ti].clone(),
                        hb.f0.clone(),
                    )
                    .map_err(|e| GroupoidError::Internal(e.to_string()))?;
                    let equivalent = equ::maps_equivalent(&rep_a, &rep_b)
                        .map_err(|e| GroupoidError::Internal(e.to_string()))?;
                    if homotopic != identified || identified != equivalent {
                        report.counterexamples.push(format!(
                            "fixtures ({si}, {ti}), homs ({ai}, {bi}): homotopic={homotopic}, \
                             identified={identified}, equivalent={equivalent}"
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Check that homotopy is an equivalence relation on each parallel
/// functor set and respects composition on both sides, over a suite.
/// Composition is sampled over the fixture triples `(i, j, k)` with
/// indices below `triple_bound`.
pub fn homotopy_congruence_report(
    ambient: &FinTopCat,
    suite: &[EquivalenceSpan<FinTopCat>],
    cap: usize,
    triple_bound: usize,
) -> Result<QuotientReport, GroupoidError> {
    let mut report = QuotientReport::default();
    let groupoids: Vec<Arc<GroupoidInC<FinTopCat>>> = suite
        .iter()
        .map(|s| groupoid_from_jointly_monic(ambient, s).map(Arc::new))
        .collect::<Result<_, _>>()?;
    let mut functor_sets: Vec<Vec<Vec<GroupoidFunctor<FinTopCat>>>> = Vec::new();
    for (si, src_span) in suite.iter().enumerate() {
        let mut row = Vec::new();
        for (ti, tgt_span) in suite.iter().enumerate() {
            let homs = spans::enumerate_span_homs(ambient, src_span, tgt_span, cap)?;
            let functors: Vec<GroupoidFunctor<FinTopCat>> = homs
                .iter()
                .map(|h| {
                    graph_hom_is_functor(ambient, groupoids[si].clone(), groupoids[ti].clone(), h)
                })
                .collect::<Result<_, _>>()?;
            row.push(functors);
        }
        functor_sets.push(row);
    }
    // Equivalence relation on every parallel set.
    for (si, row) in functor_sets.iter().enumerate() {
        for (ti, functors) in row.iter().enumerate() {
            report.fixture_pairs += 1;
            let n = functors.len();
            let mut rel = vec![vec![false; n]; n];
            for a in 0..n {
                for b in 0..n {
                    rel[a][b] = homotopic_functors(ambient, &functors[a], &functors[b])?.is_some();
                    report.functor_pairs += 1;
                }
            }
            for a in 0..n {
                if !rel[a][a] {
                    report
                        .counterexamples
                        .push(format!("({si},{ti}): homotopy not reflexive at {a}"));
                }
                for b in 0..n {
                    if rel[a][b] != rel[b][a] {
                        report
                            .counterexamples
                            .push(format!("({si},{ti}): homotopy not symmetric at ({a},{b})"));
                    }
                    for c in 0..n {
                        if rel[a][b] && rel[b][c] && !rel[a][c] {
                            report.counterexamples.push(format!(
                                "({si},{ti}): homotopy not transitive at ({a},{b},{c})"
                            ));
                        }
                    }
                }
            }
        }
    }
    // Congruence: composition respects homotopy on both sides.
    let bound = triple_bound.min(suite.len());
    for i in 0..bound {
        for j in 0..bound {
            for k in 0..bound {
                let fs = &functor_sets[i][j];
                let gs = &functor_sets[j][k];
                for a in 0..fs.len() {
                    for b in 0..fs.len() {
                        if homotopic_functors(ambient, &fs[a], &fs[b])?.is_none() {
                            continue;
                        }
                        for g in gs {
                            let ga = GroupoidFunctor::compose(ambient, g, &fs[a])?;
                            let gb = GroupoidFunctor::compose(ambient, g, &fs[b])?;
                            if homotopic_functors(ambient, &ga, &gb)?.is_none() {
                                report.counterexamples.push(format!(
                                    "postcomposition breaks homotopy at ({i},{j},{k}) homs ({a},{b})"
                                ));
                            }
                        }
                    }
                }
                for a in 0..gs.len() {
                    for b in 0..gs.len() {
                        if homotopic_functors(ambient, &gs[a], &gs[b])?.is_none() {
                            continue;
                        }
                        for f in fs {
                            let af = GroupoidFunctor::compose(ambient, &gs[a], f)?;
                            let bf = GroupoidFunctor::compose(ambient, &gs[b], f)?;
                            if homotopic_functors(ambient, &af, &bf)?.is_none() {
                                report.counterexamples.push(format!(
                                    "precomposition breaks homotopy at ({i},{j},{k}) homs ({a},{b})"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equ::EqRel;
    use crate::spans::{diagonal_span, functor_g};

    fn cat() -> FinTopCat {
        FinTopCat
    }

    fn total_groupoid(n: usize) -> GroupoidInC<FinTopCat> {
        let e = equ::Equilogical::new(Arc::new(FinSpace::discrete(n)), EqRel::total(n)).unwrap();
        groupoid_from_jointly_monic(&cat(), &functor_g(&cat(), &e).unwrap()).unwrap()
    }

    #[test]
    fn one_object_one_arrow_is_groupoid() {
        let g = terminal_groupoid();
        assert_eq!(g.graph.a0.points(), 1);
        assert_eq!(g.graph.a1.points(), 1);
    }

    #[test]
    fn interval_groupoid_has_two_objects_four_arrows() {
        let g = interval_groupoid();
        assert_eq!(g.graph.a0.points(), 2);
        assert_eq!(g.graph.a1.points(), 4);
        assert_eq!(*g.graph.a0, FinSpace::discrete(2));
        assert_eq!(*g.graph.a1, FinSpace::discrete(4));
    }

    #[test]
    fn interval_composite_of_opposite_arrows_is_identity() {
        let amb = cat();
        let g = interval_groupoid();
        let d1 = amb.point_map(&g.graph.d1);
        let d2 = amb.point_map(&g.graph.d2);
        let i = amb.point_map(&g.i);
        let up = (0..4).find(|&e| d1[e] == 0 && d2[e] == 1).unwrap();
        let down = (0..4).find(|&e| d1[e] == 1 && d2[e] == 0).unwrap();
        assert_eq!(g.compose_arrows(&amb, up, down), Some(i[0]));
        assert_eq!(g.compose_arrows(&amb, down, up), Some(i[1]));
    }

    #[test]
    fn corrupted_involution_fails_laws() {
        let amb = cat();
        let g = total_groupoid(2);
        // Swap the involution values of the two non-identity arrows so
        // the inverse law fails.
        let mut s_table = amb.point_map(&g.s);
        let d1 = amb.point_map(&g.graph.d1);
        let d2 = amb.point_map(&g.graph.d2);
        let up = (0..4).find(|&e| d1[e] == 0 && d2[e] == 1).unwrap();
        let id0 = (0..4).find(|&e| d1[e] == 0 && d2[e] == 0).unwrap();
        // Make s(up) a loop: endpoints no longer swap.
        s_table[up] = id0;
        let s = Ambient::make_mor(&amb, &g.graph.a1, &g.graph.a1, s_table).unwrap();
        assert!(!is_groupoid(
            &amb,
            g.graph.clone(),
            g.i.clone(),
            g.c.clone(),
            s
        ));
    }

    #[test]
    fn subspatial_fixtures_upgrade_to_groupoids() {
        let amb = cat();
        for span in crate::fixtures::subspatial_pack(7) {
            let g = groupoid_from_jointly_monic(&amb, &span).unwrap();
            assert!(g.is_jointly_monic(&amb));
        }
    }

    #[test]
    fn non_jointly_monic_span_is_refused() {
        // A span with a duplicated pair element.
        let amb = crate::pasm::PAsmCat;
        let span = crate::fixtures::pasm_span_from_parts(
            2,
            &[1, 1],
            &[(0, 0, 7), (0, 1, 7), (0, 1, 7), (1, 0, 7), (1, 1, 7)],
        );
        match groupoid_from_jointly_monic(&amb, &span) {
            Err(GroupoidError::NotJointlyMonic) => {}
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn composable_pairs_of_total_groupoid_on_two_points() {
        // 4 arrows, each with 2 continuations agreeing in the middle.
        let g = total_groupoid(2);
        assert_eq!(g.pullback.pairs.len(), 8);
    }

    #[test]
    fn pullback_of_identities_is_isomorphic_to_object() {
        let amb = cat();
        let s = Arc::new(FinSpace::sierpinski());
        let id = Ambient::identity(&amb, &s);
        let pb = pullback_of_cospan(&amb, &id, &id).unwrap();
        assert_eq!(pb.pairs.len(), 2);
        assert_eq!(*pb.apex, *s);
    }

    #[test]
    fn pullback_over_terminal_is_product() {
        let amb = cat();
        let d2 = Arc::new(FinSpace::discrete(2));
        let t = Ambient::terminal(&amb);
        let bang = Ambient::make_mor(&amb, &d2, &t, vec![0, 0]).unwrap();
        let pb = pullback_of_cospan(&amb, &bang, &bang).unwrap();
        assert_eq!(pb.pairs.len(), 4);
    }

    #[test]
    fn graph_homs_upgrade_to_functors() {
        let amb = cat();
        let span_a = functor_g(
            &amb,
            &equ::Equilogical::new(Arc::new(FinSpace::discrete(2)), EqRel::total(2)).unwrap(),
        )
        .unwrap();
        let span_b = diagonal_span(&amb, Arc::new(FinSpace::sierpinski())).unwrap();
        let ga = Arc::new(groupoid_from_jointly_monic(&amb, &span_a).unwrap());
        let gb = Arc::new(groupoid_from_jointly_monic(&amb, &span_b).unwrap());
        let homs = spans::enumerate_span_homs(&amb, &span_a, &span_b, 10_000).unwrap();
        assert!(!homs.is_empty());
        for h in &homs {
            graph_hom_is_functor(&amb, ga.clone(), gb.clone(), h).unwrap();
        }
    }

    #[test]
    fn identity_transformation_passes_triangle() {
        let amb = cat();
        let g = Arc::new(total_groupoid(2));
        let f = GroupoidFunctor::identity(&amb, &g);
        let a = amb.compose(&g.i, &f.f0).unwrap();
        assert!(nat_trans_check(&amb, &f, &f, &a));
    }

    #[test]
    fn distinct_constants_into_total_groupoid_are_homotopic() {
        let amb = cat();
        let src = Arc::new(total_groupoid(2));
        let tgt = Arc::new(total_groupoid(2));
        let functors = enumerate_functors(&amb, &src, &tgt, 100_000).unwrap();
        let c0 = functors
            .iter()
            .find(|f| amb.point_map(&f.f0) == vec![0, 0])
            .unwrap();
        let c1 = functors
            .iter()
            .find(|f| amb.point_map(&f.f0) == vec![1, 1])
            .unwrap();
        let witness = homotopic_functors(&amb, c0, c1).unwrap().unwrap();
        assert!(nat_trans_check(&amb, c0, c1, &witness));
    }

    #[test]
    fn distinct_functors_into_discrete_groupoid_are_not_homotopic() {
        let amb = cat();
        let src = Arc::new(terminal_groupoid());
        let disc = Arc::new(
            groupoid_from_jointly_monic(
                &amb,
                &diagonal_span(&amb, Arc::new(FinSpace::discrete(2))).unwrap(),
            )
            .unwrap(),
        );
        let functors = enumerate_functors(&amb, &src, &disc, 10_000).unwrap();
        assert_eq!(functors.len(), 2);
        assert!(homotopic_functors(&amb, &functors[0], &functors[1])
            .unwrap()
            .is_none());
    }

    #[test]
    fn endpoint_inclusions_into_interval_are_homotopic() {
        let amb = cat();
        let t = Arc::new(terminal_groupoid());
        let i = Arc::new(interval_groupoid());
        let functors = enumerate_functors(&amb, &t, &i, 10_000).unwrap();
        let e0 = functors
            .iter()
            .find(|f| amb.point_map(&f.f0) == vec![0])
            .unwrap();
        let e1 = functors
            .iter()
            .find(|f| amb.point_map(&f.f0) == vec![1])
            .unwrap();
        let witness = homotopic_functors(&amb, e0, e1).unwrap().unwrap();
        // The witness is the arrow from object 0 to object 1.
        let d1 = amb.point_map(&i.graph.d1);
        let d2 = amb.point_map(&i.graph.d2);
        let w = amb.point_map(&witness)[0];
        assert_eq!((d1[w], d2[w]), (0, 1));
    }

    #[test]
    fn interval_data_verifies() {
        let grpd = GrpdTop::new(200_000);
        let data = groupoid_interval_data();
        let samples: Vec<Arc<GroupoidInC<FinTopCat>>> = vec![
            Arc::new(terminal_groupoid()),
            Arc::new(interval_groupoid()),
            Arc::new(total_groupoid(2)),
            Arc::new(
                groupoid_from_jointly_monic(
                    &cat(),
                    &diagonal_span(&cat(), Arc::new(FinSpace::sierpinski())).unwrap(),
                )
                .unwrap(),
            ),
        ];
        let report =
            crate::interval::verify_interval_structure(&grpd, &data, &samples, 200_000).unwrap();
        assert!(report.is_clean(), "failures: {:?}", report.failures);
        assert!(report.pushout_cocones_checked > 0);
        assert!(report.stability_cocones_checked > 0);
    }

    #[test]
    fn identity_swap_breaks_interval_equations() {
        let grpd = GrpdTop::new(100_000);
        let mut data = groupoid_interval_data();
        data.iota = GroupoidFunctor::identity(&cat(), &data.interval);
        let report =
            crate::interval::verify_interval_structure(&grpd, &data, &[], 10_000).unwrap();
        assert!(report
            .failures
            .iter()
            .any(|f| f.contains("iota ∘ e0 = e1")));
    }

    #[test]
    fn degenerate_interval_on_terminal_passes() {
        let grpd = GrpdTop::new(100_000);
        let amb = cat();
        let t = Arc::new(terminal_groupoid());
        let id = GroupoidFunctor::identity(&amb, &t);
        let data = IntervalObjectData {
            interval: t.clone(),
            e0: id.clone(),
            e1: id.clone(),
            iota: id.clone(),
            pushout: t.clone(),
            inj0: id.clone(),
            inj1: id.clone(),
            gamma: id,
        };
        let samples = vec![t, Arc::new(total_groupoid(2))];
        let report =
            crate::interval::verify_interval_structure(&grpd, &data, &samples, 100_000).unwrap();
        assert!(report.is_clean(), "failures: {:?}", report.failures);
    }

    #[test]
    fn three_way_equivalence_on_small_suite() {
        let amb = cat();
        let suite = vec![
            diagonal_span(&amb, Arc::new(FinSpace::sierpinski())).unwrap(),
            functor_g(
                &amb,
                &equ::Equilogical::new(Arc::new(FinSpace::discrete(2)), EqRel::total(2)).unwrap(),
            )
            .unwrap(),
            functor_g(
                &amb,
                &equ::Equilogical::new(
                    Arc::new(FinSpace::discrete(3)),
                    EqRel::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)]).unwrap(),
                )
                .unwrap(),
            )
            .unwrap(),
        ];
        let report = homotopy_quotient_equals_equ(&amb, &suite, 100_000).unwrap();
        assert!(report.is_clean(), "{:?}", report.counterexamples);
        assert!(report.functor_pairs > 0);
        let congruence = homotopy_congruence_report(&amb, &suite, 100_000, 3).unwrap();
        assert!(congruence.is_clean(), "{:?}", congruence.counterexamples);
    }

    #[test]
    fn cylinder_functor_realizes_homotopy_and_conversely() {
        let amb = cat();
        let src = Arc::new(total_groupoid(2));
        let tgt = Arc::new(total_groupoid(2));
        let interval = Arc::new(interval_groupoid());
        let cyl = Arc::new(product_groupoid(&amb, &src, &interval).unwrap());
        let (inc0, inc1) = cylinder_inclusions(&amb, &src, &interval, &cyl).unwrap();
        let functors = enumerate_functors(&amb, &src, &tgt, 100_000).unwrap();
        for f in &functors {
            for g in &functors {
                let witness = homotopic_functors(&amb, f, g).unwrap();
                match witness {
                    Some(_) => {
                        let k =
                            cylinder_functor_from_witness(&amb, f, g, &cyl, &interval).unwrap();
                        let at0 = GroupoidFunctor::compose(&amb, &k, &inc0).unwrap();
                        let at1 = GroupoidFunctor::compose(&amb, &k, &inc1).unwrap();
                        assert!(at0.eq(&amb, f));
                        assert!(at1.eq(&amb, g));
                        // Extract a witness back from the cylinder
                        // functor: a(x) = K1(id_x, up-arrow).
                        let hi = amb.point_map(&src.i);
                        let id1 = amb.point_map(&interval.graph.d1);
                        let id2 = amb.point_map(&interval.graph.d2);
                        let up = (0..4).find(|&e| id1[e] == 0 && id2[e] == 1).unwrap();
                        let k1 = amb.point_map(&k.f1);
                        let n1k = interval.graph.a1.points();
                        let a_table: Vec<usize> = (0..src.graph.a0.points())
                            .map(|x| k1[hi[x] * n1k + up])
                            .collect();
                        let a = Ambient::make_mor(&amb, &src.graph.a0, &tgt.graph.a1, a_table)
                            .unwrap();
                        assert!(nat_trans_check(&amb, f, g, &a));
                    }
                    None => {
                        // No cylinder functor may restrict to f and g:
                        // exhaust all functors from the cylinder.
                        let all = enumerate_functors(&amb, &cyl, &tgt, 100_000).unwrap();
                        for k in &all {
                            let at0 = GroupoidFunctor::compose(&amb, k, &inc0).unwrap();
                            let at1 = GroupoidFunctor::compose(&amb, k, &inc1).unwrap();
                            assert!(!(at0.eq(&amb, f) && at1.eq(&amb, g)));
                        }
                    }
                }
            }
        }
    }
}
