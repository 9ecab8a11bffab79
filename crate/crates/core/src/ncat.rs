//! The category of numeric 2-groupoids: objects are free-dagger
//! 2-groupoids over triple graphs (and their finite products), and
//! morphisms are truncated 2-functors.
//!
//! A 2-functor out of a free object is determined by its object part
//! and its generator images, and is strictly functorial by
//! construction. A 2-functor out of a product with a free factor is
//! stored as a cylinder: one endpoint functor per node of the free
//! factor, and one connecting cell per generator per object. Cylinder
//! evaluation fixes one interleaving of the two factors, so its
//! composition law holds only up to the unique connecting 2-cell; the
//! validator checks parallelism, which in a 2-groupoid with total
//! subsingleton 2-hom-sets is exactly commutation of all 2-diagrams,
//! and records whether composition happened to be strict.

use std::collections::HashMap;
use std::sync::Arc;

use crate::interval::{HomotopyAmbient, HProduct, IntervalObjectData};
use crate::pasm::{PartitionedAssembly, Triple};
use crate::tracklang::{cantor_pair, nat, Nat};
use crate::twogroupoid::{
    dagger, NumericTwoGroupoid, TripleGraph, TwoGroupoidError, ZigStep, Zigzag,
};

/// An object of the category: a free numeric 2-groupoid or a finite
/// product of objects.
#[derive(Debug, Clone)]
pub enum NObj {
    Free(Arc<NumericTwoGroupoid>),
    Prod(Arc<NObj>, Arc<NObj>),
}

/// A 1-cell value: a zigzag of a free object or a pair of values of a
/// product. Values are unbounded; enumeration indices are truncated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellVal {
    Z(Zigzag),
    P(Box<CellVal>, Box<CellVal>),
}

impl NObj {
    pub fn free(g: NumericTwoGroupoid) -> Arc<NObj> {
        Arc::new(NObj::Free(Arc::new(g)))
    }

    pub fn eq(&self, other: &NObj) -> bool {
        match (self, other) {
            (NObj::Free(a), NObj::Free(b)) => {
                a.bound == b.bound
                    && a.base.nodes == b.base.nodes
                    && a.base.edges == b.base.edges
            }
            (NObj::Prod(a1, a2), NObj::Prod(b1, b2)) => a1.eq(b1) && a2.eq(b2),
            _ => false,
        }
    }

    pub fn obj_count(&self) -> usize {
        match self {
            NObj::Free(g) => g.objects().carrier(),
            NObj::Prod(a, b) => a.obj_count() * b.obj_count(),
        }
    }

    pub fn obj_realizer(&self, x: usize) -> Nat {
        match self {
            NObj::Free(g) => g.objects().realizer(x).clone(),
            NObj::Prod(a, b) => {
                let n = b.obj_count();
                cantor_pair(&a.obj_realizer(x / n), &b.obj_realizer(x % n))
            }
        }
    }

    pub fn cell_count(&self) -> usize {
        match self {
            NObj::Free(g) => g.cell_count(),
            NObj::Prod(a, b) => a.cell_count() * b.cell_count(),
        }
    }

    pub fn cell_val(&self, i: usize) -> CellVal {
        match self {
            NObj::Free(g) => CellVal::Z(g.cell(i).clone()),
            NObj::Prod(a, b) => {
                let n = b.cell_count();
                CellVal::P(
                    Box::new(a.cell_val(i / n)),
                    Box::new(b.cell_val(i % n)),
                )
            }
        }
    }

    pub fn cell_index(&self, v: &CellVal) -> Option<usize> {
        match (self, v) {
            (NObj::Free(g), CellVal::Z(z)) => g.cell_index(z),
            (NObj::Prod(a, b), CellVal::P(x, y)) => {
                let i = a.cell_index(x)?;
                let j = b.cell_index(y)?;
                Some(i * b.cell_count() + j)
            }
            _ => None,
        }
    }

    /// Endpoints of a value, as object indices.
    pub fn val_endpoints(&self, v: &CellVal) -> Result<(usize, usize), TwoGroupoidError> {
        match (self, v) {
            (NObj::Free(g), CellVal::Z(z)) => Ok((z.start, z.end(&g.base)?)),
            (NObj::Prod(a, b), CellVal::P(x, y)) => {
                let (s1, t1) = a.val_endpoints(x)?;
                let (s2, t2) = b.val_endpoints(y)?;
                let n = b.obj_count();
                Ok((s1 * n + s2, t1 * n + t2))
            }
            _ => Err(TwoGroupoidError::Internal(
                "cell value has the wrong shape for the object".into(),
            )),
        }
    }

    pub fn val_code(&self, v: &CellVal) -> Result<Nat, TwoGroupoidError> {
        match (self, v) {
            (NObj::Free(g), CellVal::Z(z)) => crate::twogroupoid::alpha_wedge(&g.base, z),
            (NObj::Prod(a, b), CellVal::P(x, y)) => {
                Ok(cantor_pair(&a.val_code(x)?, &b.val_code(y)?))
            }
            _ => Err(TwoGroupoidError::Internal(
                "cell value has the wrong shape for the object".into(),
            )),
        }
    }

    pub fn val_identity(&self, x: usize) -> CellVal {
        match self {
            NObj::Free(_) => CellVal::Z(Zigzag::singleton(x)),
            NObj::Prod(a, b) => {
                let n = b.obj_count();
                CellVal::P(
                    Box::new(a.val_identity(x / n)),
                    Box::new(b.val_identity(x % n)),
                )
            }
        }
    }

    pub fn val_concat(&self, u: &CellVal, w: &CellVal) -> Result<CellVal, TwoGroupoidError> {
        match (self, u, w) {
            (NObj::Free(g), CellVal::Z(a), CellVal::Z(b)) => {
                Ok(CellVal::Z(a.concat(&g.base, b)?))
            }
            (NObj::Prod(l, r), CellVal::P(a1, a2), CellVal::P(b1, b2)) => Ok(CellVal::P(
                Box::new(l.val_concat(a1, b1)?),
                Box::new(r.val_concat(a2, b2)?),
            )),
            _ => Err(TwoGroupoidError::Internal(
                "cell values have the wrong shape for concatenation".into(),
            )),
        }
    }

    pub fn val_dagger(&self, u: &CellVal) -> Result<CellVal, TwoGroupoidError> {
        match (self, u) {
            (NObj::Free(g), CellVal::Z(z)) => Ok(CellVal::Z(dagger(&g.base, z)?)),
            (NObj::Prod(l, r), CellVal::P(a, b)) => Ok(CellVal::P(
                Box::new(l.val_dagger(a)?),
                Box::new(r.val_dagger(b)?),
            )),
            _ => Err(TwoGroupoidError::Internal(
                "cell value has the wrong shape for the dagger".into(),
            )),
        }
    }

    /// Composition of enumerated cells, `None` outside the truncation.
    pub fn compose_cells(&self, a: usize, b: usize) -> Result<Option<usize>, TwoGroupoidError> {
        match self {
            NObj::Free(g) => g.compose_cells(a, b),
            NObj::Prod(l, r) => {
                let n = r.cell_count();
                let left = l.compose_cells(a / n, b / n)?;
                let right = r.compose_cells(a % n, b % n)?;
                Ok(match (left, right) {
                    (Some(x), Some(y)) => Some(x * n + y),
                    _ => None,
                })
            }
        }
    }

    pub fn cell_endpoints(&self, i: usize) -> (usize, usize) {
        match self {
            NObj::Free(g) => g.endpoints(i),
            NObj::Prod(a, b) => {
                let n = b.cell_count();
                let (s1, t1) = a.cell_endpoints(i / n);
                let (s2, t2) = b.cell_endpoints(i % n);
                let m = b.obj_count();
                (s1 * m + s2, t1 * m + t2)
            }
        }
    }

    pub fn cell_code(&self, i: usize) -> Nat {
        match self {
            NObj::Free(g) => g.code(i).clone(),
            NObj::Prod(a, b) => {
                let n = b.cell_count();
                cantor_pair(&a.cell_code(i / n), &b.cell_code(i % n))
            }
        }
    }

    /// Enumerated cells of a hom-set.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.cell_count())
            .filter(|&i| self.cell_endpoints(i) == (x, y))
            .collect()
    }
}

/// The defining data of a 2-functor's 1-cell action.
#[derive(Debug, Clone)]
pub enum NAction {
    /// Identity on the source.
    Id,
    /// Composite: apply the second, then the first.
    Comp(Arc<NMor>, Arc<NMor>),
    /// First projection out of a product source.
    Proj1,
    /// Second projection out of a product source.
    Proj2,
    /// Pairing into a product target.
    Tuple(Arc<NMor>, Arc<NMor>),
    /// Generator images of a free source.
    FreeGen(Vec<CellVal>),
    /// A cylinder out of `Prod(X, Free(F))`: one functor `X → target`
    /// per node of `F` and one connecting cell per edge of `F` per
    /// object of `X`. `links[e][x]` runs from `ends[src e](x)` to
    /// `ends[tgt e](x)`.
    Cyl {
        ends: Vec<Arc<NMor>>,
        links: Vec<Vec<CellVal>>,
    },
    /// Everything to one object of the target (the terminal functor).
    ConstObj(usize),
}

/// A (truncated) 2-functor between objects of the category. The 2-cell
/// action is forced: 2-hom-sets are subsingletons, so parallel 1-cells
/// map to parallel 1-cells and the induced action on 2-cells is the
/// unique one.
#[derive(Debug, Clone)]
pub struct NMor {
    pub source: Arc<NObj>,
    pub target: Arc<NObj>,
    pub f0: Vec<usize>,
    pub action: NAction,
    /// Images of the enumerated source cells.
    table: Vec<CellVal>,
}

impl NMor {
    fn build(
        source: Arc<NObj>,
        target: Arc<NObj>,
        f0: Vec<usize>,
        action: NAction,
    ) -> Result<NMor, TwoGroupoidError> {
        let mut m = NMor {
            source,
            target,
            f0,
            action,
            table: Vec::new(),
        };
        let mut table = Vec::with_capacity(m.source.cell_count());
        for i in 0..m.source.cell_count() {
            table.push(m.eval_action(&m.source.cell_val(i))?);
        }
        m.table = table;
        Ok(m)
    }

    /// Evaluate the 1-cell action on any valid source value. Enumerated
    /// source cells are answered from the cached table.
    pub fn eval_val(&self, v: &CellVal) -> Result<CellVal, TwoGroupoidError> {
        if !self.table.is_empty() {
            if let Some(i) = self.source.cell_index(v) {
                return Ok(self.table[i].clone());
            }
        }
        self.eval_action(v)
    }

    fn eval_action(&self, v: &CellVal) -> Result<CellVal, TwoGroupoidError> {
        match &self.action {
            NAction::Id => Ok(v.clone()),
            NAction::Comp(g, f) => g.eval_val(&f.eval_val(v)?),
            NAction::Proj1 => match v {
                CellVal::P(a, _) => Ok((**a).clone()),
                _ => Err(TwoGroupoidError::Internal("projection from a non-pair".into())),
            },
            NAction::Proj2 => match v {
                CellVal::P(_, b) => Ok((**b).clone()),
                _ => Err(TwoGroupoidError::Internal("projection from a non-pair".into())),
            },
            NAction::Tuple(f, g) => Ok(CellVal::P(
                Box::new(f.eval_val(v)?),
                Box::new(g.eval_val(v)?),
            )),
            NAction::ConstObj(x) => Ok(self.target.val_identity(*x)),
            NAction::FreeGen(gens) => {
                let (z, base) = match (v, self.source.as_ref()) {
                    (CellVal::Z(z), NObj::Free(g)) => (z, &g.base),
                    _ => {
                        return Err(TwoGroupoidError::Internal(
                            "generator action on a non-free source".into(),
                        ))
                    }
                };
                let mut acc = self.target.val_identity(self.f0[z.start]);
                for step in &z.steps {
                    let image = &gens[step.edge];
                    let directed = if step.mark == 0 {
                        image.clone()
                    } else {
                        self.target.val_dagger(image)?
                    };
                    acc = self.target.val_concat(&acc, &directed)?;
                }
                let _ = base;
                Ok(acc)
            }
            NAction::Cyl { ends, links } => {
                let (p, q, x_src, factor) = match (v, self.source.as_ref()) {
                    (CellVal::P(p, q), NObj::Prod(x, f)) => match (q.as_ref(), f.as_ref()) {
                        (CellVal::Z(z), NObj::Free(free)) => (p, z, x, free),
                        _ => {
                            return Err(TwoGroupoidError::Internal(
                                "cylinder source factor is not free".into(),
                            ))
                        }
                    },
                    _ => {
                        return Err(TwoGroupoidError::Internal(
                            "cylinder action on a non-product source".into(),
                        ))
                    }
                };
                let (_, p_end) = x_src.val_endpoints(p)?;
                let mut acc = ends[q.start].eval_val(p)?;
                for step in &q.steps {
                    let link = &links[step.edge][p_end];
                    let directed = if step.mark == 0 {
                        link.clone()
                    } else {
                        self.target.val_dagger(link)?
                    };
                    acc = self.target.val_concat(&acc, &directed)?;
                }
                let _ = factor;
                Ok(acc)
            }
        }
    }

    pub fn table(&self) -> &[CellVal] {
        &self.table
    }

    pub fn identity(obj: &Arc<NObj>) -> NMor {
        NMor::build(
            obj.clone(),
            obj.clone(),
            (0..obj.obj_count()).collect(),
            NAction::Id,
        )
        .expect("identity evaluates")
    }

    pub fn compose(g: &Arc<NMor>, f: &Arc<NMor>) -> Result<NMor, TwoGroupoidError> {
        if !f.target.eq(&g.source) {
            return Err(TwoGroupoidError::Internal(
                "2-functors are not composable".into(),
            ));
        }
        let f0 = f.f0.iter().map(|&x| g.f0[x]).collect();
        NMor::build(
            f.source.clone(),
            g.target.clone(),
            f0,
            NAction::Comp(g.clone(), f.clone()),
        )
    }

    /// A 2-functor out of a free object, from generator images.
    pub fn free_gen(
        source: Arc<NObj>,
        target: Arc<NObj>,
        f0: Vec<usize>,
        gens: Vec<CellVal>,
    ) -> Result<NMor, TwoGroupoidError> {
        let free = match source.as_ref() {
            NObj::Free(g) => g.clone(),
            _ => {
                return Err(TwoGroupoidError::Internal(
                    "generator data needs a free source".into(),
                ))
            }
        };
        if gens.len() != free.base.edges.len() || f0.len() != source.obj_count() {
            return Err(TwoGroupoidError::Internal(
                "generator table has the wrong shape".into(),
            ));
        }
        for (e, image) in gens.iter().enumerate() {
            let (x, y) = (free.base.edges[e].src, free.base.edges[e].tgt);
            let (s, t) = target.val_endpoints(image)?;
            if (s, t) != (f0[x], f0[y]) {
                return Err(TwoGroupoidError::Functor(format!(
                    "generator {e} image has endpoints ({s},{t}), wanted ({},{})",
                    f0[x], f0[y]
                )));
            }
        }
        NMor::build(source, target, f0, NAction::FreeGen(gens))
    }

    /// The constant 2-functor to an object of the target.
    pub fn constant(
        source: Arc<NObj>,
        target: Arc<NObj>,
        x: usize,
    ) -> Result<NMor, TwoGroupoidError> {
        NMor::build(
            source.clone(),
            target,
            vec![x; source.obj_count()],
            NAction::ConstObj(x),
        )
    }

    pub fn proj1(prod: &Arc<NObj>) -> Result<NMor, TwoGroupoidError> {
        match prod.as_ref() {
            NObj::Prod(a, b) => {
                let n = b.obj_count();
                NMor::build(
                    prod.clone(),
                    Arc::new(a.as_ref().clone()),
                    (0..prod.obj_count()).map(|p| p / n).collect(),
                    NAction::Proj1,
                )
            }
            _ => Err(TwoGroupoidError::Internal("projection from a non-product".into())),
        }
    }

    pub fn proj2(prod: &Arc<NObj>) -> Result<NMor, TwoGroupoidError> {
        match prod.as_ref() {
            NObj::Prod(a, b) => {
                let _ = a;
                let n = b.obj_count();
                NMor::build(
                    prod.clone(),
                    Arc::new(b.as_ref().clone()),
                    (0..prod.obj_count()).map(|p| p % n).collect(),
                    NAction::Proj2,
                )
            }
            _ => Err(TwoGroupoidError::Internal("projection from a non-product".into())),
        }
    }

    pub fn tuple(
        f: &Arc<NMor>,
        g: &Arc<NMor>,
        prod: &Arc<NObj>,
    ) -> Result<NMor, TwoGroupoidError> {
        let n = match prod.as_ref() {
            NObj::Prod(_, b) => b.obj_count(),
            _ => {
                return Err(TwoGroupoidError::Internal(
                    "tupling into a non-product".into(),
                ))
            }
        };
        let f0 = f
            .f0
            .iter()
            .zip(g.f0.iter())
            .map(|(&x, &y)| x * n + y)
            .collect();
        NMor::build(
            f.source.clone(),
            prod.clone(),
            f0,
            NAction::Tuple(f.clone(), g.clone()),
        )
    }

    /// A cylinder 2-functor out of `Prod(X, Free(F))`.
    pub fn cylinder(
        source: Arc<NObj>,
        target: Arc<NObj>,
        ends: Vec<Arc<NMor>>,
        links: Vec<Vec<CellVal>>,
    ) -> Result<NMor, TwoGroupoidError> {
        let (x_obj, factor) = match source.as_ref() {
            NObj::Prod(x, f) => match f.as_ref() {
                NObj::Free(free) => (x.clone(), free.clone()),
                _ => {
                    return Err(TwoGroupoidError::Internal(
                        "cylinder factor is not free".into(),
                    ))
                }
            },
            _ => {
                return Err(TwoGroupoidError::Internal(
                    "cylinder source is not a product".into(),
                ))
            }
        };
        let n_nodes = factor.objects().carrier();
        if ends.len() != n_nodes || links.len() != factor.base.edges.len() {
            return Err(TwoGroupoidError::Internal(
                "cylinder data has the wrong shape".into(),
            ));
        }
        for (e, per_obj) in links.iter().enumerate() {
            if per_obj.len() != x_obj.obj_count() {
                return Err(TwoGroupoidError::Internal(
                    "cylinder link table has the wrong shape".into(),
                ));
            }
            let (ns, nt) = (factor.base.edges[e].src, factor.base.edges[e].tgt);
            for (x, link) in per_obj.iter().enumerate() {
                let (s, t) = target.val_endpoints(link)?;
                if (s, t) != (ends[ns].f0[x], ends[nt].f0[x]) {
                    return Err(TwoGroupoidError::Functor(format!(
                        "link for edge {e} at object {x} has wrong endpoints"
                    )));
                }
            }
        }
        let f0 = (0..source.obj_count())
            .map(|p| ends[p % n_nodes].f0[p / n_nodes])
            .collect();
        NMor::build(source, target, f0, NAction::Cyl { ends, links })
    }

    pub fn mor_eq(&self, other: &NMor) -> bool {
        self.source.eq(&other.source)
            && self.target.eq(&other.target)
            && self.f0 == other.f0
            && self.table == other.table
    }
}

/// Result of validating an [`NMor`] as a truncated 2-functor.
#[derive(Debug, Clone, Default)]
pub struct FunctorAudit {
    /// Composition commuted on the nose (it always does for free
    /// sources; cylinders may commute only up to the unique 2-cell).
    pub strict_composition: bool,
    pub composable_pairs_checked: usize,
}

/// Validate the functor laws on the truncation. Endpoint preservation,
/// identity preservation, dagger compatibility, and level-0/1 realizer
/// consistency are strict; the composition law is checked up to
/// parallelism (the unique 2-cell of the target).
pub fn validate_two_functor(m: &NMor) -> Result<FunctorAudit, TwoGroupoidError> {
    let src = &m.source;
    let tgt = &m.target;
    if m.f0.len() != src.obj_count() {
        return Err(TwoGroupoidError::Functor("object table has wrong length".into()));
    }
    // Realizer consistency at level 0.
    let mut seen0: HashMap<Nat, Nat> = HashMap::new();
    for x in 0..src.obj_count() {
        let k = src.obj_realizer(x);
        let v = tgt.obj_realizer(m.f0[x]);
        if let Some(prev) = seen0.insert(k, v.clone()) {
            if prev != v {
                return Err(TwoGroupoidError::Functor(
                    "object part is not realizer-consistent".into(),
                ));
            }
        }
    }
    // Endpoints, identities, dagger, and level-1 consistency.
    let mut seen1: HashMap<Nat, Nat> = HashMap::new();
    for i in 0..src.cell_count() {
        let image = &m.table[i];
        let (s, t) = src.cell_endpoints(i);
        let (is, it) = tgt.val_endpoints(image)?;
        if (is, it) != (m.f0[s], m.f0[t]) {
            return Err(TwoGroupoidError::Functor(format!(
                "cell {i} image has endpoints ({is},{it}), wanted ({},{})",
                m.f0[s], m.f0[t]
            )));
        }
        let k = src.cell_code(i);
        let v = tgt.val_code(image)?;
        if let Some(prev) = seen1.insert(k, v.clone()) {
            if prev != v {
                return Err(TwoGroupoidError::Functor(
                    "cell action is not realizer-consistent".into(),
                ));
            }
        }
    }
    for x in 0..src.obj_count() {
        let id = src.val_identity(x);
        if m.eval_val(&id)? != tgt.val_identity(m.f0[x]) {
            return Err(TwoGroupoidError::Functor(format!(
                "identity at {x} is not preserved"
            )));
        }
    }
    let mut audit = FunctorAudit {
        strict_composition: true,
        composable_pairs_checked: 0,
    };
    // Bucket cells by source object so the composability scan only
    // touches candidate continuations.
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); src.obj_count()];
    let endpoints: Vec<(usize, usize)> = (0..src.cell_count())
        .map(|i| src.cell_endpoints(i))
        .collect();
    for (i, &(s, _)) in endpoints.iter().enumerate() {
        by_src[s].push(i);
    }
    for a in 0..src.cell_count() {
        // Dagger compatibility: images are parallel; strictness is not
        // required at products, but dagger images must connect.
        let da = src.val_dagger(&src.cell_val(a))?;
        let lhs = m.eval_val(&da)?;
        let rhs = tgt.val_dagger(&m.table[a])?;
        if tgt.val_endpoints(&lhs)? != tgt.val_endpoints(&rhs)? {
            return Err(TwoGroupoidError::Functor(format!(
                "dagger of cell {a} is not even parallel"
            )));
        }
        if lhs != rhs {
            audit.strict_composition = false;
        }
        for &b in &by_src[endpoints[a].1] {
            if let Some(ab) = src.compose_cells(a, b)? {
                audit.composable_pairs_checked += 1;
                let lhs = &m.table[ab];
                let rhs = tgt.val_concat(&m.table[a], &m.table[b])?;
                if tgt.val_endpoints(lhs)? != tgt.val_endpoints(&rhs)? {
                    return Err(TwoGroupoidError::Functor(format!(
                        "composite of ({a},{b}) is not even parallel"
                    )));
                }
                if *lhs != rhs {
                    audit.strict_composition = false;
                }
            }
        }
    }
    Ok(audit)
}

// ---------------------------------------------------------------------
// The interval object and its data.
// ---------------------------------------------------------------------

/// The interval 2-groupoid: the free dagger 2-groupoid on two nodes and
/// a single connecting edge, with realizers 0 and 1.
pub fn interval_two_groupoid(bound: usize) -> NumericTwoGroupoid {
    let base = TripleGraph {
        nodes: Arc::new(
            PartitionedAssembly::new(2, vec![nat(0), nat(1)]).expect("two nodes"),
        ),
        edges: vec![Triple {
            src: 0,
            tgt: 1,
            code: nat(0),
        }],
    };
    NumericTwoGroupoid::new(base, bound)
}

/// The free dagger 2-groupoid on the three-node path (the endpoint
/// pushout of the interval).
pub fn path_two_groupoid(bound: usize) -> NumericTwoGroupoid {
    let base = TripleGraph {
        nodes: Arc::new(
            PartitionedAssembly::new(3, vec![nat(0), nat(1), nat(2)]).expect("three nodes"),
        ),
        edges: vec![
            Triple {
                src: 0,
                tgt: 1,
                code: nat(0),
            },
            Triple {
                src: 1,
                tgt: 2,
                code: nat(1),
            },
        ],
    };
    NumericTwoGroupoid::new(base, bound)
}

/// The terminal object: one node, no edges.
pub fn terminal_two_groupoid(bound: usize) -> NumericTwoGroupoid {
    let base = TripleGraph {
        nodes: Arc::new(PartitionedAssembly::new(1, vec![nat(0)]).expect("one node")),
        edges: vec![],
    };
    NumericTwoGroupoid::new(base, bound)
}

/// The category of numeric 2-groupoids with a fixed truncation bound.
#[derive(Debug, Clone, Copy)]
pub struct NCat {
    pub bound: usize,
    pub cap: usize,
}

impl NCat {
    pub fn new(bound: usize, cap: usize) -> NCat {
        NCat { bound, cap }
    }
}

/// Enumerate 2-functors between objects. Free sources enumerate object
/// parts and generator fibers; products with a free factor enumerate
/// cylinders. Fails on shapes that do not arise in the checks.
pub fn enumerate_two_functors(
    ncat: &NCat,
    a: &Arc<NObj>,
    b: &Arc<NObj>,
    cap: usize,
) -> Result<Vec<Arc<NMor>>, TwoGroupoidError> {
    match a.as_ref() {
        NObj::Free(free) => {
            let mut out = Vec::new();
            let object_maps = consistent_object_maps(a, b);
            for f0 in object_maps {
                let fibers: Vec<Vec<usize>> = free
                    .base
                    .edges
                    .iter()
                    .map(|e| b.hom(f0[e.src], f0[e.tgt]))
                    .collect();
                if fibers.iter().any(|f| f.is_empty()) {
                    continue;
                }
                let mut space: usize = 1;
                for f in &fibers {
                    space = space.saturating_mul(f.len());
                }
                if space > cap {
                    return Err(TwoGroupoidError::Cat(crate::cat::CatError::CapExceeded {
                        candidates: space,
                        cap,
                    }));
                }
                let mut choice = vec![0usize; fibers.len()];
                enumerate_gen_choices(a, b, &f0, &fibers, 0, &mut choice, &mut out)?;
            }
            Ok(out)
        }
        NObj::Prod(x, f) if matches!(f.as_ref(), NObj::Free(_)) => {
            let free = match f.as_ref() {
                NObj::Free(g) => g.clone(),
                _ => unreachable!(),
            };
            let end_candidates = enumerate_two_functors(ncat, x, b, cap)?;
            let n_nodes = free.objects().carrier();
            let mut out = Vec::new();
            let mut ends: Vec<Arc<NMor>> = Vec::new();
            enumerate_cylinders(
                a,
                b,
                &free,
                &end_candidates,
                n_nodes,
                &mut ends,
                cap,
                &mut out,
            )?;
            Ok(out)
        }
        _ => Err(TwoGroupoidError::Internal(
            "enumeration is not supported for this source shape".into(),
        )),
    }
}

/// Object maps that are realizer-consistent.
fn consistent_object_maps(a: &Arc<NObj>, b: &Arc<NObj>) -> Vec<Vec<usize>> {
    let n = a.obj_count();
    let m = b.obj_count();
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    fn walk(
        a: &Arc<NObj>,
        b: &Arc<NObj>,
        map: &mut Vec<usize>,
        depth: usize,
        m: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == map.len() {
            // Consistency check.
            let mut seen: HashMap<Nat, Nat> = HashMap::new();
            for (x, &fx) in map.iter().enumerate() {
                let k = a.obj_realizer(x);
                let v = b.obj_realizer(fx);
                if let Some(prev) = seen.insert(k, v.clone()) {
                    if prev != v {
                        return;
                    }
                }
            }
            out.push(map.clone());
            return;
        }
        for v in 0..m {
            map[depth] = v;
            walk(a, b, map, depth + 1, m, out);
        }
    }
    walk(a, b, &mut map, 0, m, &mut out);
    out
}

fn enumerate_gen_choices(
    a: &Arc<NObj>,
    b: &Arc<NObj>,
    f0: &[usize],
    fibers: &[Vec<usize>],
    depth: usize,
    choice: &mut Vec<usize>,
    out: &mut Vec<Arc<NMor>>,
) -> Result<(), TwoGroupoidError> {
    if depth == fibers.len() {
        let gens: Vec<CellVal> = choice.iter().map(|&c| b.cell_val(c)).collect();
        if let Ok(m) = NMor::free_gen(a.clone(), b.clone(), f0.to_vec(), gens) {
            if validate_two_functor(&m).is_ok() {
                out.push(Arc::new(m));
            }
        }
        return Ok(());
    }
    for &cand in &fibers[depth] {
        choice[depth] = cand;
        enumerate_gen_choices(a, b, f0, fibers, depth + 1, choice, out)?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn enumerate_cylinders(
    a: &Arc<NObj>,
    b: &Arc<NObj>,
    factor: &Arc<NumericTwoGroupoid>,
    end_candidates: &[Arc<NMor>],
    n_nodes: usize,
    ends: &mut Vec<Arc<NMor>>,
    cap: usize,
    out: &mut Vec<Arc<NMor>>,
) -> Result<(), TwoGroupoidError> {
    if ends.len() == n_nodes {
        // Enumerate link tables edge by edge, object by object.
        let x_count = match a.as_ref() {
            NObj::Prod(x, _) => x.obj_count(),
            _ => unreachable!(),
        };
        let mut fibers: Vec<Vec<usize>> = Vec::new();
        for e in &factor.base.edges {
            for x in 0..x_count {
                fibers.push(b.hom(ends[e.src].f0[x], ends[e.tgt].f0[x]));
            }
        }
        if fibers.iter().any(|f| f.is_empty()) {
            return Ok(());
        }
        let mut space: usize = 1;
        for f in &fibers {
            space = space.saturating_mul(f.len());
        }
        if space > cap {
            return Err(TwoGroupoidError::Cat(crate::cat::CatError::CapExceeded {
                candidates: space,
                cap,
            }));
        }
        let mut choice = vec![0usize; fibers.len()];
        let n_edges = factor.base.edges.len();
        fn walk_links(
            a: &Arc<NObj>,
            b: &Arc<NObj>,
            ends: &[Arc<NMor>],
            fibers: &[Vec<usize>],
            choice: &mut Vec<usize>,
            depth: usize,
            n_edges: usize,
            x_count: usize,
            out: &mut Vec<Arc<NMor>>,
        ) {
            if depth == fibers.len() {
                let links: Vec<Vec<CellVal>> = (0..n_edges)
                    .map(|e| {
                        (0..x_count)
                            .map(|x| b.cell_val(choice[e * x_count + x]))
                            .collect()
                    })
                    .collect();
                if let Ok(m) = NMor::cylinder(a.clone(), b.clone(), ends.to_vec(), links) {
                    if validate_two_functor(&m).is_ok() {
                        out.push(Arc::new(m));
                    }
                }
                return;
            }
            for &cand in &fibers[depth] {
                choice[depth] = cand;
                walk_links(
                    a, b, ends, fibers, choice, depth + 1, n_edges, x_count, out,
                );
            }
        }
        walk_links(a, b, ends, &fibers, &mut choice, 0, n_edges, x_count, out);
        return Ok(());
    }
    for cand in end_candidates {
        ends.push(cand.clone());
        enumerate_cylinders(a, b, factor, end_candidates, n_nodes, ends, cap, out)?;
        ends.pop();
    }
    Ok(())
}

impl HomotopyAmbient for NCat {
    type Obj = Arc<NObj>;
    type Mor = Arc<NMor>;

    fn obj_eq(&self, a: &Self::Obj, b: &Self::Obj) -> bool {
        a.eq(b)
    }

    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        f.mor_eq(g)
    }

    fn src(&self, m: &Self::Mor) -> Self::Obj {
        m.source.clone()
    }

    fn tgt(&self, m: &Self::Mor) -> Self::Obj {
        m.target.clone()
    }

    fn identity(&self, a: &Self::Obj) -> Self::Mor {
        Arc::new(NMor::identity(a))
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, String> {
        NMor::compose(g, f).map(Arc::new).map_err(|e| e.to_string())
    }

    fn terminal(&self) -> Self::Obj {
        NObj::free(terminal_two_groupoid(self.bound))
    }

    fn bang(&self, a: &Self::Obj) -> Self::Mor {
        Arc::new(
            NMor::constant(a.clone(), self.terminal(), 0).expect("terminal functor"),
        )
    }

    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Result<HProduct<Self>, String> {
        let obj = Arc::new(NObj::Prod(a.clone(), b.clone()));
        let p1 = Arc::new(NMor::proj1(&obj).map_err(|e| e.to_string())?);
        let p2 = Arc::new(NMor::proj2(&obj).map_err(|e| e.to_string())?);
        Ok(HProduct { obj, p1, p2 })
    }

    fn pair(
        &self,
        prod: &HProduct<Self>,
        f: &Self::Mor,
        g: &Self::Mor,
    ) -> Result<Self::Mor, String> {
        NMor::tuple(f, g, &prod.obj)
            .map(Arc::new)
            .map_err(|e| e.to_string())
    }

    fn enumerate(&self, a: &Self::Obj, b: &Self::Obj, cap: usize) -> Result<Vec<Self::Mor>, String> {
        enumerate_two_functors(self, a, b, cap).map_err(|e| e.to_string())
    }
}

/// A one-edge base with custom node realizers, for sample variety.
pub fn edge_base_groupoid(bound: usize, r0: u64, r1: u64, edge: u64) -> NumericTwoGroupoid {
    let base = TripleGraph {
        nodes: Arc::new(
            PartitionedAssembly::new(2, vec![nat(r0), nat(r1)]).expect("two nodes"),
        ),
        edges: vec![Triple {
            src: 0,
            tgt: 1,
            code: nat(edge),
        }],
    };
    NumericTwoGroupoid::new(base, bound)
}

/// Small sample objects for interval verification: the terminal object
/// and one-edge bases with distinct realizers. Hom-sets between them
/// stay tiny, which keeps competitor enumeration out of products
/// tractable.
pub fn small_interval_samples(bound: usize) -> Vec<Arc<NObj>> {
    vec![
        NObj::free(terminal_two_groupoid(bound)),
        NObj::free(edge_base_groupoid(bound, 0, 1, 0)),
        NObj::free(edge_base_groupoid(bound, 2, 3, 1)),
        NObj::free(edge_base_groupoid(bound, 5, 9, 4)),
        NObj::free(edge_base_groupoid(bound, 7, 0, 2)),
    ]
}

/// Interval data over the category of numeric 2-groupoids.
pub fn ncat_interval_data(ncat: &NCat) -> Result<IntervalObjectData<NCat>, TwoGroupoidError> {
    let t = ncat.terminal();
    let interval = NObj::free(interval_two_groupoid(ncat.bound));
    let pushout = NObj::free(path_two_groupoid(ncat.bound));
    let point = |target: &Arc<NObj>, x: usize| {
        NMor::free_gen(t.clone(), target.clone(), vec![x], vec![]).map(Arc::new)
    };
    let single = |obj: &Arc<NObj>, edge: usize, start: usize| {
        obj.cell_val(
            obj.cell_index(&CellVal::Z(Zigzag {
                start,
                steps: vec![ZigStep { edge, mark: 0 }],
            }))
            .expect("generator within bound"),
        )
    };
    let e0 = point(&interval, 0)?;
    let e1 = point(&interval, 1)?;
    // The swap: objects exchanged, generator to the reversed edge.
    let u_rev = CellVal::Z(Zigzag {
        start: 1,
        steps: vec![ZigStep { edge: 0, mark: 1 }],
    });
    let iota = Arc::new(NMor::free_gen(
        interval.clone(),
        interval.clone(),
        vec![1, 0],
        vec![u_rev],
    )?);
    let inj0 = Arc::new(NMor::free_gen(
        interval.clone(),
        pushout.clone(),
        vec![0, 1],
        vec![single(&pushout, 0, 0)],
    )?);
    let inj1 = Arc::new(NMor::free_gen(
        interval.clone(),
        pushout.clone(),
        vec![1, 2],
        vec![single(&pushout, 1, 1)],
    )?);
    // The composite arrow through the glued point: needs bound ≥ 2.
    if ncat.bound < 2 {
        return Err(TwoGroupoidError::BoundExceeded {
            bound: ncat.bound,
            needed: 2,
        });
    }
    let through = CellVal::Z(Zigzag {
        start: 0,
        steps: vec![
            ZigStep { edge: 0, mark: 0 },
            ZigStep { edge: 1, mark: 0 },
        ],
    });
    let gamma = Arc::new(NMor::free_gen(
        interval.clone(),
        pushout.clone(),
        vec![0, 2],
        vec![through],
    )?);
    Ok(IntervalObjectData {
        interval,
        e0,
        e1,
        iota,
        pushout,
        inj0,
        inj1,
        gamma,
    })
}

// ---------------------------------------------------------------------
// The homotopy quotient onto the exact completion.
// ---------------------------------------------------------------------

/// Enumerate the object parts of arrows `U(G) → U(H)` of the exact
/// completion: realizer-consistent maps on objects under which every
/// generator has an image hom-set to land in.
pub fn eff_arrow_object_parts(g: &Arc<NObj>, h: &Arc<NObj>) -> Vec<Vec<usize>> {
    let free = match g.as_ref() {
        NObj::Free(f) => f,
        _ => return Vec::new(),
    };
    consistent_object_maps(g, h)
        .into_iter()
        .filter(|f0| {
            free.base
                .edges
                .iter()
                .all(|e| !h.hom(f0[e.src], f0[e.tgt]).is_empty())
        })
        .collect()
}

/// Lift an arrow of the exact completion to a 2-functor: the generator
/// images are the first cells in the image hom-sets, extended freely.
pub fn lift_to_2functor(
    g: &Arc<NObj>,
    h: &Arc<NObj>,
    f0: Vec<usize>,
) -> Result<Arc<NMor>, TwoGroupoidError> {
    let free = match g.as_ref() {
        NObj::Free(f) => f.clone(),
        _ => {
            return Err(TwoGroupoidError::Internal(
                "lift needs a free source".into(),
            ))
        }
    };
    let gens: Vec<CellVal> = free
        .base
        .edges
        .iter()
        .map(|e| {
            h.hom(f0[e.src], f0[e.tgt])
                .first()
                .map(|&c| h.cell_val(c))
                .ok_or_else(|| {
                    TwoGroupoidError::NoWitness(format!(
                        "no image cell for generator ({}, {})",
                        e.src, e.tgt
                    ))
                })
        })
        .collect::<Result<_, _>>()?;
    let m = NMor::free_gen(g.clone(), h.clone(), f0, gens)?;
    validate_two_functor(&m)
        .map_err(|e| TwoGroupoidError::Internal(format!("lift is not a 2-functor: {e}")))?;
    Ok(Arc::new(m))
}

/// Search for the connecting map witnessing `U(F) = U(F')`: a tracked
/// assignment of a cell `F0(x) → F0'(x)` to every object.
pub fn identification_witness(
    g: &Arc<NObj>,
    h: &Arc<NObj>,
    f: &NMor,
    f_prime: &NMor,
    cap: usize,
) -> Result<Option<crate::pasm::PAsmMorphism>, TwoGroupoidError> {
    let (g_free, h_free) = match (g.as_ref(), h.as_ref()) {
        (NObj::Free(a), NObj::Free(b)) => (a, b),
        _ => {
            return Err(TwoGroupoidError::Internal(
                "identification needs free endpoints".into(),
            ))
        }
    };
    let cells = h_free.one_cell_assembly();
    let e1: Vec<usize> = (0..h_free.cell_count())
        .map(|i| h_free.endpoints(i).0)
        .collect();
    let e2: Vec<usize> = (0..h_free.cell_count())
        .map(|i| h_free.endpoints(i).1)
        .collect();
    Ok(crate::spans::connecting_map(
        &crate::pasm::PAsmCat,
        g_free.objects(),
        &cells,
        &e1,
        &e2,
        &f.f0,
        &f_prime.f0,
        cap,
    )?)
}

/// The two endpoint inclusions `G → G × I` of a cylinder.
pub fn cylinder_inclusions(
    ncat: &NCat,
    g: &Arc<NObj>,
    interval: &Arc<NObj>,
    cylinder: &Arc<NObj>,
) -> Result<(Arc<NMor>, Arc<NMor>), TwoGroupoidError> {
    let bang = Arc::new(NMor::constant(g.clone(), ncat.terminal(), 0)?);
    let t = ncat.terminal();
    let mut out = Vec::new();
    for endpoint in [0usize, 1] {
        let point = Arc::new(NMor::free_gen(
            t.clone(),
            interval.clone(),
            vec![endpoint],
            vec![],
        )?);
        let to_interval = Arc::new(NMor::compose(&point, &bang)?);
        let id = Arc::new(NMor::identity(g));
        out.push(Arc::new(NMor::tuple(&id, &to_interval, cylinder)?));
    }
    let i1 = out.pop().expect("two inclusions");
    let i0 = out.pop().expect("two inclusions");
    Ok((i0, i1))
}

/// Build the homotopy `K : G × I → H` from an identification witness:
/// the endpoint functors act on the factors and the witness acts on the
/// interval generator. Validates the functor laws on the truncation and
/// that the restrictions are the two endpoints.
pub fn homotopy_from_identification(
    ncat: &NCat,
    f: &Arc<NMor>,
    f_prime: &Arc<NMor>,
    witness: &crate::pasm::PAsmMorphism,
) -> Result<(Arc<NObj>, Arc<NMor>), TwoGroupoidError> {
    let g = f.source.clone();
    let h = f.target.clone();
    let h_free = match h.as_ref() {
        NObj::Free(free) => free.clone(),
        _ => {
            return Err(TwoGroupoidError::Internal(
                "homotopy target must be free".into(),
            ))
        }
    };
    // Endpoint equations of the witness.
    for x in 0..g.obj_count() {
        let cell = witness.apply(x);
        let (s, t) = h_free.endpoints(cell);
        if (s, t) != (f.f0[x], f_prime.f0[x]) {
            return Err(TwoGroupoidError::NoWitness(format!(
                "witness at object {x} runs {s} → {t}, wanted {} → {}",
                f.f0[x], f_prime.f0[x]
            )));
        }
    }
    let interval = NObj::free(interval_two_groupoid(ncat.bound));
    let cylinder = Arc::new(NObj::Prod(g.clone(), interval.clone()));
    let links: Vec<Vec<CellVal>> = vec![(0..g.obj_count())
        .map(|x| h.cell_val(witness.apply(x)))
        .collect()];
    let k = Arc::new(NMor::cylinder(
        cylinder.clone(),
        h.clone(),
        vec![f.clone(), f_prime.clone()],
        links,
    )?);
    validate_two_functor(&k)?;
    let (i0, i1) = cylinder_inclusions(ncat, &g, &interval, &cylinder)?;
    let at0 = NMor::compose(&k, &i0)?;
    let at1 = NMor::compose(&k, &i1)?;
    if !at0.mor_eq(f) {
        return Err(TwoGroupoidError::Functor(
            "homotopy does not restrict to the first endpoint".into(),
        ));
    }
    if !at1.mor_eq(f_prime) {
        return Err(TwoGroupoidError::Functor(
            "homotopy does not restrict to the second endpoint".into(),
        ));
    }
    // The generator action is the witness itself.
    for x in 0..g.obj_count() {
        let gen = CellVal::P(
            Box::new(g.val_identity(x)),
            Box::new(CellVal::Z(Zigzag {
                start: 0,
                steps: vec![ZigStep { edge: 0, mark: 0 }],
            })),
        );
        if k.eval_val(&gen)? != h.cell_val(witness.apply(x)) {
            return Err(TwoGroupoidError::Functor(format!(
                "generator action at {x} differs from the witness"
            )));
        }
    }
    Ok((cylinder, k))
}

/// Outcome of the homotopy-quotient check over a suite.
#[derive(Debug, Clone, Default)]
pub struct NQuotientReport {
    pub fixture_pairs: usize,
    pub functor_pairs: usize,
    pub homotopies_built: usize,
    pub counterexamples: Vec<String>,
}

impl NQuotientReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// For every pair of parallel 2-functors lifted from arrows of the
/// exact completion between suite fixtures: identification of the
/// underlying arrows is equivalent to the existence of a homotopy. The
/// witness search is exhaustive, every found witness must extend to a
/// law-passing homotopy, and a homotopy always induces a witness (its
/// generator action), so non-existence of witnesses excludes
/// homotopies. The identified relation is also audited to be an
/// equivalence relation.
pub fn homotopy_quotient_check_n(
    ncat: &NCat,
    suite: &[Arc<NObj>],
    cap: usize,
) -> Result<NQuotientReport, TwoGroupoidError> {
    let mut report = NQuotientReport::default();
    for g in suite {
        for h in suite {
            report.fixture_pairs += 1;
            let parts = eff_arrow_object_parts(g, h);
            let lifts: Vec<Arc<NMor>> = parts
                .into_iter()
                .map(|f0| lift_to_2functor(g, h, f0))
                .collect::<Result<_, _>>()?;
            let n = lifts.len();
            let mut identified = vec![vec![false; n]; n];
            for a in 0..n {
                for b in 0..n {
                    report.functor_pairs += 1;
                    let witness = identification_witness(g, h, &lifts[a], &lifts[b], cap)?;
                    identified[a][b] = witness.is_some();
                    if let Some(w) = witness {
                        match homotopy_from_identification(ncat, &lifts[a], &lifts[b], &w) {
                            Ok(_) => report.homotopies_built += 1,
                            Err(e) => report.counterexamples.push(format!(
                                "identified pair ({a},{b}) has no law-passing homotopy: {e}"
                            )),
                        }
                    }
                }
            }
            for a in 0..n {
                if !identified[a][a] {
                    report
                        .counterexamples
                        .push(format!("identification not reflexive at {a}"));
                }
                for b in 0..n {
                    if identified[a][b] != identified[b][a] {
                        report
                            .counterexamples
                            .push(format!("identification not symmetric at ({a},{b})"));
                    }
                    for c in 0..n {
                        if identified[a][b] && identified[b][c] && !identified[a][c] {
                            report
                                .counterexamples
                                .push(format!("identification not transitive at ({a},{b},{c})"));
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
    use crate::interval::verify_interval_structure;

    #[test]
    fn interval_two_groupoid_shape() {
        let g = interval_two_groupoid(3);
        assert_eq!(g.objects().carrier(), 2);
        // Length-1 cells: the generator and its dagger.
        let len1: Vec<_> = (0..g.cell_count())
            .filter(|&i| g.cell(i).len() == 1)
            .collect();
        assert_eq!(len1.len(), 2);
        // Subsingleton total 2-hom-sets up to the bound.
        assert!(g.two_cells_total_and_subsingleton());
        assert!(g.embedding_injective());
    }

    #[test]
    fn free_gen_functor_roundtrip() {
        let ncat = NCat::new(3, 100_000);
        let i = NObj::free(interval_two_groupoid(3));
        let id = NMor::identity(&i);
        validate_two_functor(&id).unwrap();
        let audit = validate_two_functor(
            &NMor::compose(&Arc::new(id.clone()), &Arc::new(id)).unwrap(),
        )
        .unwrap();
        assert!(audit.strict_composition);
        let _ = ncat;
    }

    #[test]
    fn swap_functor_validates_strictly() {
        let i = NObj::free(interval_two_groupoid(3));
        let data = ncat_interval_data(&NCat::new(3, 100_000)).unwrap();
        let audit = validate_two_functor(&data.iota).unwrap();
        assert!(audit.strict_composition);
        let _ = i;
    }

    #[test]
    fn interval_data_equations_hold_at_two_level() {
        let ncat = NCat::new(2, 50_000);
        let data = ncat_interval_data(&ncat).unwrap();
        let report = verify_interval_structure(&ncat, &data, &[], 50_000).unwrap();
        assert!(report.is_clean(), "failures: {:?}", report.failures);
    }

    #[test]
    fn enumerate_functors_from_terminal() {
        let ncat = NCat::new(2, 50_000);
        let t = ncat.terminal();
        let i = NObj::free(interval_two_groupoid(2));
        let homs = enumerate_two_functors(&ncat, &t, &i, 50_000).unwrap();
        // Object maps to either node.
        assert_eq!(homs.len(), 2);
    }

    fn base_from_parts(alpha0: &[u64], edges: &[(usize, usize, u64)], bound: usize) -> Arc<NObj> {
        let span = crate::fixtures::pasm_span_from_parts(alpha0.len(), alpha0, edges);
        let mf = crate::pasm::monic_form(&span).unwrap();
        NObj::free(NumericTwoGroupoid::new(TripleGraph::from_monic_form(&mf), bound))
    }

    #[test]
    fn identity_lift_and_trivial_homotopy() {
        let ncat = NCat::new(3, 100_000);
        let g = base_from_parts(&[0, 1], &[(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)], 3);
        let id_part: Vec<usize> = (0..g.obj_count()).collect();
        let f = lift_to_2functor(&g, &g, id_part).unwrap();
        let w = identification_witness(&g, &g, &f, &f, 100_000)
            .unwrap()
            .expect("reflexive identification");
        let (_, k) = homotopy_from_identification(&ncat, &f, &f, &w).unwrap();
        assert_eq!(k.f0.len(), g.obj_count() * 2);
    }

    #[test]
    fn interval_self_homotopy_between_swapped_endpoints() {
        let ncat = NCat::new(3, 100_000);
        let i = NObj::free(interval_two_groupoid(3));
        let f = lift_to_2functor(&i, &i, vec![0, 1]).unwrap();
        let f_swap = lift_to_2functor(&i, &i, vec![1, 0]).unwrap();
        let w = identification_witness(&i, &i, &f, &f_swap, 100_000)
            .unwrap()
            .expect("interval identifies the swap with the identity");
        let (_, k) = homotopy_from_identification(&ncat, &f, &f_swap, &w).unwrap();
        validate_two_functor(&k).unwrap();
    }

    #[test]
    fn no_witness_between_distinct_classes() {
        // Two classes, no edges between them.
        let g = base_from_parts(&[0, 1], &[(0, 0, 1), (1, 1, 2)], 3);
        let c0 = lift_to_2functor(&g, &g, vec![0, 0]).unwrap();
        let c1 = lift_to_2functor(&g, &g, vec![1, 1]).unwrap();
        assert!(identification_witness(&g, &g, &c0, &c1, 100_000)
            .unwrap()
            .is_none());
    }

    #[test]
    fn quotient_check_on_small_suite() {
        let ncat = NCat::new(3, 100_000);
        let suite = vec![
            base_from_parts(&[0, 1], &[(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)], 3),
            base_from_parts(&[0, 1], &[(0, 0, 1), (1, 1, 2)], 3),
            NObj::free(interval_two_groupoid(3)),
        ];
        let report = homotopy_quotient_check_n(&ncat, &suite, 100_000).unwrap();
        assert!(report.is_clean(), "{:?}", report.counterexamples);
        assert!(report.homotopies_built > 0);
    }

    #[test]
    fn cylinder_evaluates_generator_action() {
        let ncat = NCat::new(2, 50_000);
        let i = NObj::free(interval_two_groupoid(2));
        let prod = Arc::new(NObj::Prod(i.clone(), i.clone()));
        // K = projection-style cylinder: both ends the identity, links
        // the identity cells... links must connect id(x) to id(x): use
        // the identity cells themselves.
        let id = Arc::new(NMor::identity(&i));
        let links = vec![(0..2).map(|x| i.val_identity(x)).collect()];
        let k = NMor::cylinder(prod.clone(), i.clone(), vec![id.clone(), id], links).unwrap();
        let audit = validate_two_functor(&k).unwrap();
        assert!(audit.composable_pairs_checked > 0);
        // The generator pair (⟨0⟩, u) maps to the chosen link at 0.
        let gen = CellVal::P(
            Box::new(i.val_identity(0)),
            Box::new(CellVal::Z(Zigzag {
                start: 0,
                steps: vec![ZigStep { edge: 0, mark: 0 }],
            })),
        );
        assert_eq!(k.eval_val(&gen).unwrap(), i.val_identity(0));
    }
}
