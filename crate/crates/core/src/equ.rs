//! Equilogical spaces: a T0 space with an equivalence relation on its
//! points. A map is an equivalence class of continuous, relation-
//! preserving functions, two representatives being equivalent when they
//! are pointwise related in the target.

use std::sync::Arc;

use thiserror::Error;

use crate::cat::{raw_function_count, CatError};
use crate::fintop::{self, ContMap, FinSpace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquError {
    #[error("underlying space is not T0")]
    NotT0,
    #[error("relation pair ({0}, {1}) is outside the carrier")]
    PairOutOfCarrier(usize, usize),
    #[error("relation is not reflexive at point {0}")]
    NotReflexive(usize),
    #[error("relation is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("relation is not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("map does not preserve the relation at ({0}, {1})")]
    NotRelationPreserving(usize, usize),
    #[error("map representative is not continuous")]
    NotContinuous,
    #[error("source or target mismatch")]
    Mismatch,
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// An equivalence relation on `0..n`, stored as per-point bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqRel {
    rows: Vec<u64>,
}

impl EqRel {
    /// Validate a pair list as an equivalence relation on `n` points.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, EquError> {
        let mut rows = vec![0u64; n];
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(EquError::PairOutOfCarrier(i, j));
            }
            rows[i] |= 1 << j;
        }
        let rel = EqRel { rows };
        rel.validate()?;
        Ok(rel)
    }

    pub fn diagonal(n: usize) -> Self {
        EqRel {
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        EqRel { rows: vec![full; n] }
    }

    fn validate(&self) -> Result<(), EquError> {
        let n = self.rows.len();
        for i in 0..n {
            if self.rows[i] & (1 << i) == 0 {
                return Err(EquError::NotReflexive(i));
            }
            for j in 0..n {
                if self.related(i, j) {
                    if !self.related(j, i) {
                        return Err(EquError::NotSymmetric(i, j));
                    }
                    for k in 0..n {
                        if self.related(j, k) && !self.related(i, k) {
                            return Err(EquError::NotTransitive(i, j, k));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.rows[i] & (1 << j) != 0
    }

    /// Points related to `i`, as a mask.
    pub fn class_mask(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// All ordered related pairs, lexicographically.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rows.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.related(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A T0 space together with an equivalence relation on its points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equilogical {
    pub space: Arc<FinSpace>,
    pub rel: EqRel,
}

impl Equilogical {
    pub fn new(space: Arc<FinSpace>, rel: EqRel) -> Result<Self, EquError> {
        if !fintop::is_t0(&space) {
            return Err(EquError::NotT0);
        }
        if rel.len() != space.points() {
            return Err(EquError::PairOutOfCarrier(rel.len(), space.points()));
        }
        Ok(Equilogical { space, rel })
    }

    /// The terminal equilogical space.
    pub fn terminal() -> Self {
        Equilogical {
            space: Arc::new(FinSpace::point()),
            rel: EqRel::diagonal(1),
        }
    }

    pub fn points(&self) -> usize {
        self.space.points()
    }
}

/// Embed a T0 space with the diagonal relation.
pub fn embed_t0(space: Arc<FinSpace>) -> Result<Equilogical, EquError> {
    let n = space.points();
    Equilogical::new(space, EqRel::diagonal(n))
}

/// A representative of a map of equilogical spaces: a continuous
/// function preserving the relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquMapRep {
    pub source: Equilogical,
    pub target: Equilogical,
    pub f: ContMap,
}

impl EquMapRep {
    pub fn new(source: Equilogical, target: Equilogical, f: ContMap) -> Result<Self, EquError> {
        if *f.source != *source.space || *f.target != *target.space {
            return Err(EquError::Mismatch);
        }
        if !fintop::is_continuous(&f) {
            return Err(EquError::NotContinuous);
        }
        for (i, j) in source.rel.pairs() {
            if !target.rel.related(f.apply(i), f.apply(j)) {
                return Err(EquError::NotRelationPreserving(i, j));
            }
        }
        Ok(EquMapRep { source, target, f })
    }
}

/// Are two representatives pointwise related in the target?
pub fn maps_equivalent(f: &EquMapRep, g: &EquMapRep) -> Result<bool, EquError> {
    if f.source != g.source || f.target != g.target {
        return Err(EquError::Mismatch);
    }
    Ok((0..f.source.points()).all(|x| f.target.rel.related(f.f.apply(x), g.f.apply(x))))
}

/// A map of equilogical spaces: an equivalence class of representatives,
/// stored as the least representative in the lexicographic order on
/// value vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquMap {
    rep: EquMapRep,
}

impl EquMap {
    /// Canonicalize a representative: the least continuous function that
    /// is pointwise related to it in the target.
    pub fn from_rep(rep: EquMapRep) -> Self {
        let mut best: Option<Vec<usize>> = None;
        let src = rep.source.clone();
        let tgt = rep.target.clone();
        let mut partial = vec![0usize; src.points()];
        // Enumerate pointwise-related candidates in lexicographic order;
        // the first continuous one is the canonical representative.
        fn walk(
            rep: &EquMapRep,
            partial: &mut Vec<usize>,
            depth: usize,
            best: &mut Option<Vec<usize>>,
        ) {
            if best.is_some() {
                return;
            }
            if depth == partial.len() {
                let m = ContMap::new(
                    rep.source.space.clone(),
                    rep.target.space.clone(),
                    partial.clone(),
                )
                .expect("lengths match");
                if fintop::is_continuous(&m) {
                    *best = Some(partial.clone());
                }
                return;
            }
            let class = rep.target.rel.class_mask(rep.f.apply(depth));
            for v in 0..rep.target.points() {
                if class & (1 << v) != 0 {
                    partial[depth] = v;
                    walk(rep, partial, depth + 1, best);
                    if best.is_some() {
                        return;
                    }
                }
            }
        }
        walk(&rep, &mut partial, 0, &mut best);
        let map = best.expect("the representative itself is a candidate");
        let f = ContMap::new(src.space.clone(), tgt.space.clone(), map).expect("lengths match");
        let rep = EquMapRep::new(src, tgt, f).expect("canonical representative is valid");
        EquMap { rep }
    }

    pub fn rep(&self) -> &EquMapRep {
        &self.rep
    }

    pub fn source(&self) -> &Equilogical {
        &self.rep.source
    }

    pub fn target(&self) -> &Equilogical {
        &self.rep.target
    }

    pub fn identity(e: &Equilogical) -> Self {
        let f = ContMap::identity(e.space.clone());
        EquMap::from_rep(EquMapRep::new(e.clone(), e.clone(), f).expect("identity is valid"))
    }

    /// Does this class contain the representative?
    pub fn contains(&self, rep: &EquMapRep) -> Result<bool, EquError> {
        maps_equivalent(&self.rep, rep)
    }
}

/// Composition on classes, via any representatives.
pub fn compose(g: &EquMap, f: &EquMap) -> Result<EquMap, EquError> {
    if f.target() != g.source() {
        return Err(EquError::Mismatch);
    }
    let map = f
        .rep()
        .f
        .map()
        .iter()
        .map(|&x| g.rep().f.apply(x))
        .collect();
    let m = ContMap::new(
        f.source().space.clone(),
        g.target().space.clone(),
        map,
    )
    .expect("lengths match");
    let rep = EquMapRep::new(f.source().clone(), g.target().clone(), m)?;
    Ok(EquMap::from_rep(rep))
}

/// Enumerate the hom-set: all continuous relation-preserving functions,
/// partitioned into classes.
pub fn hom_set(e: &Equilogical, f: &Equilogical, cap: usize) -> Result<Vec<EquMap>, EquError> {
    let candidates = raw_function_count(f.points(), e.points());
    if candidates > cap {
        return Err(CatError::CapExceeded { candidates, cap }.into());
    }
    let cat = fintop::FinTopCat;
    let continuous = crate::cat::Ambient::hom(&cat, &e.space, &f.space, cap)?;
    let mut classes: Vec<EquMap> = Vec::new();
    'next: for m in continuous {
        let rep = match EquMapRep::new(e.clone(), f.clone(), m) {
            Ok(rep) => rep,
            Err(_) => continue,
        };
        for class in &classes {
            if class.contains(&rep)? {
                continue 'next;
            }
        }
        classes.push(EquMap::from_rep(rep));
    }
    Ok(classes)
}

/// The binary product: product space, componentwise relation, and the
/// two projection classes.
pub fn product_equ(
    e: &Equilogical,
    f: &Equilogical,
) -> Result<(Equilogical, EquMap, EquMap), EquError> {
    let (space, p1, p2) = fintop::product_space(&e.space, &f.space)
        .map_err(|err| CatError::Unsupported(err.to_string()))?;
    let m = f.points();
    let n = space.points();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (a1, a2) = (a / m, a % m);
            let (b1, b2) = (b / m, b % m);
            if e.rel.related(a1, b1) && f.rel.related(a2, b2) {
                pairs.push((a, b));
            }
        }
    }
    let rel = EqRel::from_pairs(n, &pairs)?;
    let prod = Equilogical::new(space, rel)?;
    let p1 = EquMap::from_rep(EquMapRep::new(prod.clone(), e.clone(), p1)?);
    let p2 = EquMap::from_rep(EquMapRep::new(prod.clone(), f.clone(), p2)?);
    Ok((prod, p1, p2))
}
