//! A uniform contract for the two ambient categories.
//!
//! Everything downstream (spans, groupoids, 2-groupoids) is written once
//! against [`Ambient`]: a category of finite carriers whose morphisms are
//! index functions with extra structure (continuity, or a recursive
//! tracker). Hom-sets are enumerable up to a cap, and finite limits are
//! constructed canonically so that apex identity is deterministic:
//! product carriers are lexicographic pairs, equalizers are filtered
//! subsets, and pullbacks are equalizers of the two product composites.
//!
//! Universal properties are not proved; they are audited by exhausting
//! competitor cones over a declared object list, within a configurable
//! candidate cap.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatError {
    #[error("hom-set enumeration of {candidates} candidates exceeds the cap of {cap}")]
    CapExceeded { candidates: usize, cap: usize },
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("endpoint mismatch: {0}")]
    Mismatch(String),
    #[error("the instance does not support this construction: {0}")]
    Unsupported(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("internal invariant breached: {0}")]
    InternalInvariant(String),
}

/// A finitely enumerable category of structured finite carriers.
///
/// Objects carry an indexed point set `0..carrier_len`; every morphism
/// has an underlying index function, and `make_mor` validates whether a
/// raw function is a morphism of the instance.
pub trait Ambient {
    type Obj: Clone + PartialEq + std::fmt::Debug + Send + Sync;
    type Mor: Clone + std::fmt::Debug + Send + Sync;

    fn src(&self, m: &Self::Mor) -> Self::Obj;
    fn tgt(&self, m: &Self::Mor) -> Self::Obj;
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, CatError>;

    fn carrier_len(&self, a: &Self::Obj) -> usize;
    fn point_map(&self, m: &Self::Mor) -> Vec<usize>;
    /// Validate a raw index function as a morphism.
    fn make_mor(
        &self,
        a: &Self::Obj,
        b: &Self::Obj,
        map: Vec<usize>,
    ) -> Result<Self::Mor, CatError>;
    /// Enumerate the full hom-set, failing if more than `cap` raw
    /// candidates would have to be inspected.
    fn hom(&self, a: &Self::Obj, b: &Self::Obj, cap: usize) -> Result<Vec<Self::Mor>, CatError>;

    fn terminal(&self) -> Self::Obj;
    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Product<Self>, CatError>;
    fn equalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Equalizer<Self>, CatError>;

    /// The chosen pullback of a cospan. The default takes the equalizer
    /// of the two product composites; instances may construct the same
    /// apex directly when the intermediate product is not representable.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Pullback<Self>, CatError>
    where
        Self: Sized,
    {
        pullback_via_limits(self, f, g)
    }
}

/// The canonical pullback through product and equalizer; kept public as
/// the oracle for instance-specific constructions.
pub fn pullback_via_limits<A: Ambient>(
    ambient: &A,
    f: &A::Mor,
    g: &A::Mor,
) -> Result<Pullback<A>, CatError> {
    if ambient.tgt(f) != ambient.tgt(g) {
        return Err(CatError::Mismatch(
            "pullback legs must share a codomain".into(),
        ));
    }
    let prod = ambient.product(&ambient.src(f), &ambient.src(g))?;
    let fp1 = ambient.compose(f, &prod.p1)?;
    let gp2 = ambient.compose(g, &prod.p2)?;
    let eq = ambient.equalizer(&fp1, &gp2)?;
    let leg1 = ambient.compose(&prod.p1, &eq.include)?;
    let leg2 = ambient.compose(&prod.p2, &eq.include)?;
    let pairs = eq
        .kept
        .iter()
        .map(|&k| (k / prod.right_len, k % prod.right_len))
        .collect();
    Ok(Pullback {
        apex: eq.apex,
        leg1,
        leg2,
        pairs,
    })
}

/// A chosen binary product: apex carrier is the lexicographic pair set,
/// `(i, j)` at index `i * |b| + j`.
#[derive(Debug)]
pub struct Product<A: Ambient + ?Sized> {
    pub apex: A::Obj,
    pub p1: A::Mor,
    pub p2: A::Mor,
    pub right_len: usize,
}

impl<A: Ambient> Clone for Product<A> {
    fn clone(&self) -> Self {
        Product {
            apex: self.apex.clone(),
            p1: self.p1.clone(),
            p2: self.p2.clone(),
            right_len: self.right_len,
        }
    }
}

impl<A: Ambient> Product<A> {
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.right_len + j
    }

    /// The canonical mediating morphism `⟨f, g⟩` into the apex.
    pub fn tuple(&self, ambient: &A, f: &A::Mor, g: &A::Mor) -> Result<A::Mor, CatError> {
        if ambient.src(f) != ambient.src(g) {
            return Err(CatError::Mismatch(
                "tupled morphisms must share a source".into(),
            ));
        }
        let fm = ambient.point_map(f);
        let gm = ambient.point_map(g);
        let map = fm
            .iter()
            .zip(gm.iter())
            .map(|(&i, &j)| self.pair_index(i, j))
            .collect();
        ambient.make_mor(&ambient.src(f), &self.apex, map)
    }
}

/// A chosen equalizer: apex carrier is the filtered subset, in
/// increasing order of the original index.
#[derive(Debug)]
pub struct Equalizer<A: Ambient + ?Sized> {
    pub apex: A::Obj,
    pub include: A::Mor,
    /// Original indices kept, in order.
    pub kept: Vec<usize>,
}

impl<A: Ambient> Clone for Equalizer<A> {
    fn clone(&self) -> Self {
        Equalizer {
            apex: self.apex.clone(),
            include: self.include.clone(),
            kept: self.kept.clone(),
        }
    }
}

impl<A: Ambient> Equalizer<A> {
    /// The canonical corestriction of `u` through the equalizer.
    pub fn factor(&self, ambient: &A, u: &A::Mor) -> Result<A::Mor, CatError> {
        let um = ambient.point_map(u);
        let mut map = Vec::with_capacity(um.len());
        for &v in &um {
            match self.kept.binary_search(&v) {
                Ok(pos) => map.push(pos),
                Err(_) => {
                    return Err(CatError::Mismatch(
                        "morphism does not land in the equalizer".into(),
                    ))
                }
            }
        }
        ambient.make_mor(&ambient.src(u), &self.apex, map)
    }
}

/// A chosen pullback, built as the equalizer of the two product
/// composites. `pairs[k]` lists the `(i, j)` carrier pair of apex point
/// `k`, with `f ∘ leg1 = g ∘ leg2`.
#[derive(Debug)]
pub struct Pullback<A: Ambient + ?Sized> {
    pub apex: A::Obj,
    pub leg1: A::Mor,
    pub leg2: A::Mor,
    pub pairs: Vec<(usize, usize)>,
}

impl<A: Ambient> Clone for Pullback<A> {
    fn clone(&self) -> Self {
        Pullback {
            apex: self.apex.clone(),
            leg1: self.leg1.clone(),
            leg2: self.leg2.clone(),
            pairs: self.pairs.clone(),
        }
    }
}

impl<A: Ambient> Pullback<A> {
    /// Apex index of the carrier pair `(i, j)`, if present.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, j))
    }

    /// The canonical mediating morphism for a commuting competitor cone.
    pub fn tuple(&self, ambient: &A, u: &A::Mor, v: &A::Mor) -> Result<A::Mor, CatError> {
        let um = ambient.point_map(u);
        let vm = ambient.point_map(v);
        let mut map = Vec::with_capacity(um.len());
        for (&i, &j) in um.iter().zip(vm.iter()) {
            match self.index_of(i, j) {
                Some(k) => map.push(k),
                None => {
                    return Err(CatError::Mismatch(
                        "cone does not commute with the pullback span".into(),
                    ))
                }
            }
        }
        ambient.make_mor(&ambient.src(u), &self.apex, map)
    }
}

/// A parallel pair of morphisms `A1 → A0`.
#[derive(Debug, Clone)]
pub struct MorphismPair<A: Ambient> {
    pub d1: A::Mor,
    pub d2: A::Mor,
}

impl<A: Ambient> MorphismPair<A> {
    pub fn new(ambient: &A, d1: A::Mor, d2: A::Mor) -> Result<Self, CatError> {
        if ambient.src(&d1) != ambient.src(&d2) || ambient.tgt(&d1) != ambient.tgt(&d2) {
            return Err(CatError::Mismatch(
                "a parallel pair must share source and target".into(),
            ));
        }
        Ok(MorphismPair { d1, d2 })
    }
}

/// A category context: an ambient instance restricted to a finite object
/// list, with an enumeration cap. All audits quantify over these objects.
pub struct CategoryContext<'a, A: Ambient> {
    pub ambient: &'a A,
    pub objects: Vec<A::Obj>,
    pub cap: usize,
}

/// Default candidate cap for exhaustive audits.
pub const DEFAULT_CAP: usize = 100_000;

/// One violation found by [`audit_category_laws`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawViolation {
    LeftIdentity { object: usize, morphism: usize },
    RightIdentity { object: usize, morphism: usize },
    Associativity { f: usize, g: usize, h: usize },
}

/// Report of a law audit over a context fragment.
#[derive(Debug, Clone, Default)]
pub struct LawReport {
    pub violations: Vec<LawViolation>,
    pub homs_checked: usize,
    pub triples_checked: usize,
}

impl LawReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively audit identity and associativity over every hom-set
/// among context objects whose carriers are at most `size_bound`.
pub fn audit_category_laws<A: Ambient>(
    ctx: &CategoryContext<'_, A>,
    size_bound: usize,
) -> Result<LawReport, CatError> {
    let amb = ctx.ambient;
    let objs: Vec<&A::Obj> = ctx
        .objects
        .iter()
        .filter(|o| amb.carrier_len(o) <= size_bound)
        .collect();
    let mut report = LawReport::default();
    // hom[i][j] lists the enumerated morphisms objs[i] → objs[j].
    let mut homs: Vec<Vec<Vec<A::Mor>>> = Vec::with_capacity(objs.len());
    for a in &objs {
        let mut row = Vec::with_capacity(objs.len());
        for b in &objs {
            row.push(amb.hom(a, b, ctx.cap)?);
            report.homs_checked += 1;
        }
        homs.push(row);
    }
    for (i, a) in objs.iter().enumerate() {
        let id_a = amb.identity(a);
        for (j, _) in objs.iter().enumerate() {
            for (mi, m) in homs[i][j].iter().enumerate() {
                let left = amb.compose(m, &id_a)?;
                if !amb.mor_eq(&left, m) {
                    report.violations.push(LawViolation::RightIdentity {
                        object: i,
                        morphism: mi,
                    });
                }
                let id_b = amb.identity(&amb.tgt(m));
                let right = amb.compose(&id_b, m)?;
                if !amb.mor_eq(&right, m) {
                    report.violations.push(LawViolation::LeftIdentity {
                        object: j,
                        morphism: mi,
                    });
                }
            }
        }
    }
    for i in 0..objs.len() {
        for j in 0..objs.len() {
            for k in 0..objs.len() {
                for l in 0..objs.len() {
                    for (fi, f) in homs[i][j].iter().enumerate() {
                        for (gi, g) in homs[j][k].iter().enumerate() {
                            let gf = amb.compose(g, f)?;
                            for (hi, h) in homs[k][l].iter().enumerate() {
                                report.triples_checked += 1;
                                let hg = amb.compose(h, g)?;
                                let l1 = amb.compose(h, &gf)?;
                                let l2 = amb.compose(&hg, f)?;
                                if !amb.mor_eq(&l1, &l2) {
                                    report.violations.push(LawViolation::Associativity {
                                        f: fi,
                                        g: gi,
                                        h: hi,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Joint monicity of a parallel pair, decided by the concrete shortcut:
/// the tupled point function into the product is injective.
pub fn is_jointly_monic<A: Ambient>(ambient: &A, p: &MorphismPair<A>) -> bool {
    let d1 = ambient.point_map(&p.d1);
    let d2 = ambient.point_map(&p.d2);
    let mut seen = std::collections::HashSet::new();
    d1.iter().zip(d2.iter()).all(|pair| seen.insert(pair))
}

/// Joint monicity by the definition: for all enumerated `u, v` with
/// `d1∘u = d1∘v` and `d2∘u = d2∘v`, already `u = v`. Oracle for
/// [`is_jointly_monic`]; quantifies over the context objects.
pub fn is_jointly_monic_by_enumeration<A: Ambient>(
    ctx: &CategoryContext<'_, A>,
    p: &MorphismPair<A>,
) -> Result<bool, CatError> {
    let amb = ctx.ambient;
    let a1 = amb.src(&p.d1);
    for x in &ctx.objects {
        let hom = amb.hom(x, &a1, ctx.cap)?;
        for u in &hom {
            for v in &hom {
                let eq1 = amb.mor_eq(&amb.compose(&p.d1, u)?, &amb.compose(&p.d1, v)?);
                let eq2 = amb.mor_eq(&amb.compose(&p.d2, u)?, &amb.compose(&p.d2, v)?);
                if eq1 && eq2 && !amb.mor_eq(u, v) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Pullback of a cospan `f: A → C ← B :g`, delegating to the ambient's
/// chosen construction.
pub fn pullback_of_cospan<A: Ambient>(
    ambient: &A,
    f: &A::Mor,
    g: &A::Mor,
) -> Result<Pullback<A>, CatError> {
    if ambient.tgt(f) != ambient.tgt(g) {
        return Err(CatError::Mismatch(
            "pullback legs must share a codomain".into(),
        ));
    }
    ambient.pullback(f, g)
}

/// Outcome of a universal-property audit.
#[derive(Debug, Clone, Default)]
pub struct UniversalityReport {
    pub cones_checked: usize,
    pub failures: Vec<String>,
}

impl UniversalityReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Audit the product universal property against every competitor cone
/// from the context objects: the canonical tuple is a mediating
/// morphism, and it is the only one among the enumerated candidates.
pub fn audit_product_universality<A: Ambient>(
    ctx: &CategoryContext<'_, A>,
    a: &A::Obj,
    b: &A::Obj,
    prod: &Product<A>,
) -> Result<UniversalityReport, CatError> {
    let amb = ctx.ambient;
    let mut report = UniversalityReport::default();
    for x in &ctx.objects {
        let into_a = amb.hom(x, a, ctx.cap)?;
        let into_b = amb.hom(x, b, ctx.cap)?;
        let into_apex = amb.hom(x, &prod.apex, ctx.cap)?;
        for u in &into_a {
            for v in &into_b {
                report.cones_checked += 1;
                let med = prod.tuple(amb, u, v)?;
                let pu = amb.compose(&prod.p1, &med)?;
                let pv = amb.compose(&prod.p2, &med)?;
                if !amb.mor_eq(&pu, u) || !amb.mor_eq(&pv, v) {
                    report
                        .failures
                        .push("canonical tuple does not mediate".into());
                    continue;
                }
                let mediators = into_apex
                    .iter()
                    .filter(|m| {
                        amb.compose(&prod.p1, m)
                            .map(|c| amb.mor_eq(&c, u))
                            .unwrap_or(false)
                            && amb
                                .compose(&prod.p2, m)
                                .map(|c| amb.mor_eq(&c, v))
                                .unwrap_or(false)
                    })
                    .count();
                if mediators != 1 {
                    report
                        .failures
                        .push(format!("{mediators} mediating morphisms for a product cone"));
                }
            }
        }
    }
    Ok(report)
}

/// Audit the equalizer universal property against every competitor fork.
pub fn audit_equalizer_universality<A: Ambient>(
    ctx: &CategoryContext<'_, A>,
    f: &A::Mor,
    g: &A::Mor,
    eq: &Equalizer<A>,
) -> Result<UniversalityReport, CatError> {
    let amb = ctx.ambient;
    let mut report = UniversalityReport::default();
    let a = amb.src(f);
    for x in &ctx.objects {
        let into_a = amb.hom(x, &a, ctx.cap)?;
        let into_apex = amb.hom(x, &eq.apex, ctx.cap)?;
        for u in &into_a {
            let fu = amb.compose(f, u)?;
            let gu = amb.compose(g, u)?;
            if !amb.mor_eq(&fu, &gu) {
                continue;
            }
            report.cones_checked += 1;
            let med = eq.factor(amb, u)?;
            let back = amb.compose(&eq.include, &med)?;
            if !amb.mor_eq(&back, u) {
                report
                    .failures
                    .push("canonical factorization does not mediate".into());
                continue;
            }
            let mediators = into_apex
                .iter()
                .filter(|m| {
                    amb.compose(&eq.include, m)
                        .map(|c| amb.mor_eq(&c, u))
                        .unwrap_or(false)
                })
                .count();
            if mediators != 1 {
                report
                    .failures
                    .push(format!("{mediators} mediating morphisms for an equalizer fork"));
            }
        }
    }
    Ok(report)
}

/// Audit the pullback universal property against every commuting
/// competitor cone from the context objects.
pub fn audit_pullback_universality<A: Ambient>(
    ctx: &CategoryContext<'_, A>,
    f: &A::Mor,
    g: &A::Mor,
    pb: &Pullback<A>,
) -> Result<UniversalityReport, CatError> {
    let amb = ctx.ambient;
    let mut report = UniversalityReport::default();
    let a = amb.src(f);
    let b = amb.src(g);
    for x in &ctx.objects {
        let into_a = amb.hom(x, &a, ctx.cap)?;
        let into_b = amb.hom(x, &b, ctx.cap)?;
        let into_apex = amb.hom(x, &pb.apex, ctx.cap)?;
        for u in &into_a {
            let fu = amb.compose(f, u)?;
            for v in &into_b {
                let gv = amb.compose(g, v)?;
                if !amb.mor_eq(&fu, &gv) {
                    continue;
                }
                report.cones_checked += 1;
                let med = pb.tuple(amb, u, v)?;
                let l1 = amb.compose(&pb.leg1, &med)?;
                let l2 = amb.compose(&pb.leg2, &med)?;
                if !amb.mor_eq(&l1, u) || !amb.mor_eq(&l2, v) {
                    report
                        .failures
                        .push("canonical pullback tuple does not mediate".into());
                    continue;
                }
                let mediators = into_apex
                    .iter()
                    .filter(|m| {
                        amb.compose(&pb.leg1, m)
                            .map(|c| amb.mor_eq(&c, u))
                            .unwrap_or(false)
                            && amb
                                .compose(&pb.leg2, m)
                                .map(|c| amb.mor_eq(&c, v))
                                .unwrap_or(false)
                    })
                    .count();
                if mediators != 1 {
                    report
                        .failures
                        .push(format!("{mediators} mediating morphisms for a pullback cone"));
                }
            }
        }
    }
    Ok(report)
}

/// Count raw candidate functions for a hom enumeration, saturating.
pub fn raw_function_count(target_len: usize, source_len: usize) -> usize {
    let mut total: usize = 1;
    for _ in 0..source_len {
        total = total.saturating_mul(target_len);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fintop::{FinSpace, FinTopCat};
    use std::sync::Arc;

    /// A wrapper that corrupts the composite of one specific pair of
    /// point maps, for audit-detection tests.
    struct Tampered {
        inner: FinTopCat,
        outer: Vec<usize>,
        inner_map: Vec<usize>,
        replacement: Vec<usize>,
    }

    impl Ambient for Tampered {
        type Obj = Arc<FinSpace>;
        type Mor = crate::fintop::ContMap;

        fn src(&self, m: &Self::Mor) -> Self::Obj {
            self.inner.src(m)
        }
        fn tgt(&self, m: &Self::Mor) -> Self::Obj {
            self.inner.tgt(m)
        }
        fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
            self.inner.mor_eq(f, g)
        }
        fn identity(&self, a: &Self::Obj) -> Self::Mor {
            self.inner.identity(a)
        }
        fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, CatError> {
            if g.map() == self.outer && f.map() == self.inner_map {
                return self
                    .inner
                    .make_mor(&self.inner.src(f), &self.inner.tgt(g), self.replacement.clone());
            }
            self.inner.compose(g, f)
        }
        fn carrier_len(&self, a: &Self::Obj) -> usize {
            self.inner.carrier_len(a)
        }
        fn point_map(&self, m: &Self::Mor) -> Vec<usize> {
            self.inner.point_map(m)
        }
        fn make_mor(
            &self,
            a: &Self::Obj,
            b: &Self::Obj,
            map: Vec<usize>,
        ) -> Result<Self::Mor, CatError> {
            self.inner.make_mor(a, b, map)
        }
        fn hom(&self, a: &Self::Obj, b: &Self::Obj, cap: usize) -> Result<Vec<Self::Mor>, CatError> {
            self.inner.hom(a, b, cap)
        }
        fn terminal(&self) -> Self::Obj {
            self.inner.terminal()
        }
        fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Product<Self>, CatError> {
            let p = self.inner.product(a, b)?;
            Ok(Product {
                apex: p.apex,
                p1: p.p1,
                p2: p.p2,
                right_len: p.right_len,
            })
        }
        fn equalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Equalizer<Self>, CatError> {
            let e = self.inner.equalizer(f, g)?;
            Ok(Equalizer {
                apex: e.apex,
                include: e.include,
                kept: e.kept,
            })
        }
    }

    #[test]
    fn identity_only_context_audits_clean() {
        let amb = FinTopCat;
        let ctx = CategoryContext {
            ambient: &amb,
            objects: vec![Arc::new(FinSpace::point())],
            cap: 1000,
        };
        let report = audit_category_laws(&ctx, 16).unwrap();
        assert!(report.is_clean());
        assert!(report.triples_checked > 0);
    }

    #[test]
    fn three_space_context_audits_clean() {
        let amb = FinTopCat;
        let ctx = CategoryContext {
            ambient: &amb,
            objects: vec![
                Arc::new(FinSpace::point()),
                Arc::new(FinSpace::sierpinski()),
                Arc::new(FinSpace::discrete(2)),
            ],
            cap: 10_000,
        };
        let report = audit_category_laws(&ctx, 16).unwrap();
        assert!(report.is_clean(), "{:?}", report.violations);
    }

    #[test]
    fn corrupted_composite_is_detected() {
        // On the discrete three-point space, corrupt the composite of
        // the transpositions (0 1) then (1 2) to the identity.
        let tampered = Tampered {
            inner: FinTopCat,
            outer: vec![0, 2, 1],
            inner_map: vec![1, 0, 2],
            replacement: vec![0, 1, 2],
        };
        let ctx = CategoryContext {
            ambient: &tampered,
            objects: vec![Arc::new(FinSpace::discrete(3))],
            cap: 100_000,
        };
        let report = audit_category_laws(&ctx, 16).unwrap();
        assert!(!report.is_clean());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, LawViolation::Associativity { .. })));
    }

    #[test]
    fn identities_are_jointly_monic() {
        let amb = FinTopCat;
        let s = Arc::new(FinSpace::sierpinski());
        let id = amb.identity(&s);
        let pair = MorphismPair::new(&amb, id.clone(), id).unwrap();
        assert!(is_jointly_monic(&amb, &pair));
    }

    #[test]
    fn product_universality_audits_clean_on_small_spaces() {
        let amb = FinTopCat;
        let ctx = CategoryContext {
            ambient: &amb,
            objects: vec![
                Arc::new(FinSpace::point()),
                Arc::new(FinSpace::sierpinski()),
                Arc::new(FinSpace::discrete(2)),
            ],
            cap: 100_000,
        };
        for a in &ctx.objects {
            for b in &ctx.objects {
                let prod = amb.product(a, b).unwrap();
                let report = audit_product_universality(&ctx, a, b, &prod).unwrap();
                assert!(report.is_clean(), "{:?}", report.failures);
                assert!(report.cones_checked > 0);
            }
        }
    }

    #[test]
    fn equalizer_and_pullback_universality_audit_clean() {
        let amb = FinTopCat;
        let s = Arc::new(FinSpace::sierpinski());
        let d = Arc::new(FinSpace::discrete(2));
        let ctx = CategoryContext {
            ambient: &amb,
            objects: vec![Arc::new(FinSpace::point()), s.clone(), d.clone()],
            cap: 100_000,
        };
        let homs = amb.hom(&s, &d, 1000).unwrap();
        for f in &homs {
            for g in &homs {
                let eq = amb.equalizer(f, g).unwrap();
                let report = audit_equalizer_universality(&ctx, f, g, &eq).unwrap();
                assert!(report.is_clean(), "{:?}", report.failures);
                let pb = pullback_of_cospan(&amb, f, g).unwrap();
                let report = audit_pullback_universality(&ctx, f, g, &pb).unwrap();
                assert!(report.is_clean(), "{:?}", report.failures);
            }
        }
    }
}
