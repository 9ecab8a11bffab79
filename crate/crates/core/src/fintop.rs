//! Finite topological spaces and continuous maps.
//!
//! A space is a carrier `0..n` with a topology stored as an explicitly
//! enumerated family of open subsets. Constructors validate that the
//! family contains the empty and full sets and is closed under pairwise
//! union and intersection; they reject non-topologies rather than
//! completing them, so malformed fixtures fail loudly.
//!
//! Every finite space is an Alexandrov space, so most checks go through
//! the minimal open neighbourhoods `N(x) = ∩{U open | x ∈ U}`: a subset
//! is open iff it contains the minimal neighbourhood of each of its
//! points, a map is continuous iff `f(N(x)) ⊆ N(f(x))`, and the space is
//! T0 iff `N` is injective. The explicit-opens definitions are kept as
//! test oracles for these shortcuts. Derived spaces whose open families
//! are too large to enumerate (pullback apexes, large products) carry
//! only their minimal neighbourhoods.

use std::sync::Arc;

use thiserror::Error;

use crate::cat::{raw_function_count, Ambient, CatError, Equalizer, Product, Pullback};
use crate::mask::{Mask, MASK_BITS};

/// Largest supported carrier.
pub const MAX_POINTS: usize = MASK_BITS;

/// Carrier size above which explicit open families are refused (they
/// are enumerated over all `2^points` subsets).
pub const PRODUCT_ENUM_MAX_POINTS: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("carrier of {0} points exceeds the supported maximum of {max}", max = MAX_POINTS)]
    TooManyPoints(usize),
    #[error("open set family must contain the empty set")]
    MissingEmpty,
    #[error("open set family must contain the full set")]
    MissingFull,
    #[error("open set {0:?} contains a point outside the carrier")]
    OutOfCarrier(Mask),
    #[error("point {0} lies outside the carrier")]
    PointOutOfCarrier(usize),
    #[error("family is not closed under {op} of {a:?} and {b:?}")]
    NotClosed { op: &'static str, a: Mask, b: Mask },
    #[error("family of {family} opens on {points} points is too large to validate")]
    FamilyTooLarge { points: usize, family: usize },
    #[error("product of {0} and {1} points exceeds the explicit-topology bound")]
    ProductTooLarge(usize, usize),
    #[error("map value {value} out of range for a target with {points} points")]
    MapOutOfRange { value: usize, points: usize },
    #[error("map has {got} entries for a source with {want} points")]
    MapWrongLength { got: usize, want: usize },
    #[error("subset is not contained in the carrier")]
    SubsetOutOfCarrier,
}

/// Full-carrier mask for an `n`-point space.
pub fn full_mask(n: usize) -> Mask {
    Mask::full(n)
}

/// A finite topological space.
///
/// The topology is determined by the minimal open neighbourhoods; the
/// open family is stored explicitly when the space was built from one
/// (or traced from one), and left implicit for derived spaces. Two
/// spaces are equal iff they have the same carrier and the same minimal
/// neighbourhoods.
#[derive(Debug, Clone)]
pub struct FinSpace {
    points: usize,
    /// Sorted, deduplicated open-set masks, when enumerated.
    opens: Option<Vec<Mask>>,
    /// Minimal open neighbourhood of each point.
    min_nbhd: Vec<Mask>,
}

impl PartialEq for FinSpace {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.min_nbhd == other.min_nbhd
    }
}

impl Eq for FinSpace {}

impl FinSpace {
    /// Validate and build a space from its carrier size and open sets.
    pub fn new(points: usize, opens: impl IntoIterator<Item = Mask>) -> Result<Self, SpaceError> {
        if points > MAX_POINTS {
            return Err(SpaceError::TooManyPoints(points));
        }
        let full = full_mask(points);
        let mut family: Vec<Mask> = opens.into_iter().collect();
        family.sort_unstable();
        family.dedup();
        for &u in &family {
            if !u.subset_of(&full) {
                return Err(SpaceError::OutOfCarrier(u));
            }
        }
        if !family.contains(&Mask::EMPTY) {
            return Err(SpaceError::MissingEmpty);
        }
        if !family.contains(&full) {
            return Err(SpaceError::MissingFull);
        }
        let min_nbhd: Vec<Mask> = (0..points)
            .map(|x| {
                family
                    .iter()
                    .filter(|u| u.get(x))
                    .fold(full, |acc, &u| acc & u)
            })
            .collect();
        // A finite family containing ∅ and the carrier is a topology iff
        // it consists of exactly the up-sets of its own minimal
        // neighbourhoods. Checking that is linear per member plus one
        // enumeration, where the naive pairwise closure test is
        // quadratic in the family.
        let n_open = |mask: &Mask| mask.ones().all(|x| min_nbhd[x].subset_of(mask));
        let mut consistent = family.iter().all(n_open);
        if consistent {
            if points <= PRODUCT_ENUM_MAX_POINTS {
                let top = (1u64 << points) - 1;
                let total = (0..=top).filter(|&m| n_open(&Mask::low(m))).count();
                consistent = total == family.len();
            } else if family.len() > 4096 {
                return Err(SpaceError::FamilyTooLarge {
                    points,
                    family: family.len(),
                });
            } else {
                for i in 0..family.len() {
                    for j in (i + 1)..family.len() {
                        let (a, b) = (family[i], family[j]);
                        if family.binary_search(&(a | b)).is_err()
                            || family.binary_search(&(a & b)).is_err()
                        {
                            consistent = false;
                        }
                    }
                }
            }
        }
        if !consistent {
            // Locate a witness pair for error reporting.
            for i in 0..family.len() {
                for j in (i + 1)..family.len() {
                    let (a, b) = (family[i], family[j]);
                    if family.binary_search(&(a | b)).is_err() {
                        return Err(SpaceError::NotClosed { op: "union", a, b });
                    }
                    if family.binary_search(&(a & b)).is_err() {
                        return Err(SpaceError::NotClosed {
                            op: "intersection",
                            a,
                            b,
                        });
                    }
                }
            }
            return Err(SpaceError::NotClosed {
                op: "union",
                a: Mask::EMPTY,
                b: Mask::EMPTY,
            });
        }
        Ok(FinSpace {
            points,
            opens: Some(family),
            min_nbhd,
        })
    }

    /// Build a small space from open masks given as low-word literals.
    pub fn new_small(
        points: usize,
        opens: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SpaceError> {
        FinSpace::new(points, opens.into_iter().map(Mask::low))
    }

    /// Build a space directly from its minimal neighbourhoods, leaving
    /// the open family implicit.
    pub fn from_min_nbhds(points: usize, min_nbhd: Vec<Mask>) -> Result<Self, SpaceError> {
        if points > MAX_POINTS {
            return Err(SpaceError::TooManyPoints(points));
        }
        let full = full_mask(points);
        if min_nbhd.len() != points {
            return Err(SpaceError::MapWrongLength {
                got: min_nbhd.len(),
                want: points,
            });
        }
        for (x, nb) in min_nbhd.iter().enumerate() {
            if !nb.subset_of(&full) {
                return Err(SpaceError::OutOfCarrier(*nb));
            }
            if !nb.get(x) {
                return Err(SpaceError::PointOutOfCarrier(x));
            }
            // Nesting: the neighbourhood of a member is contained.
            for y in nb.ones() {
                if !min_nbhd[y].subset_of(nb) {
                    return Err(SpaceError::NotClosed {
                        op: "intersection",
                        a: *nb,
                        b: min_nbhd[y],
                    });
                }
            }
        }
        Ok(FinSpace {
            points,
            opens: None,
            min_nbhd,
        })
    }

    /// Build a space from subsets given as point-index lists.
    pub fn from_subsets(points: usize, opens: &[Vec<usize>]) -> Result<Self, SpaceError> {
        let mut masks = Vec::with_capacity(opens.len());
        for subset in opens {
            let mut m = Mask::EMPTY;
            for &p in subset {
                if p >= points {
                    return Err(SpaceError::PointOutOfCarrier(p));
                }
                m.insert(p);
            }
            masks.push(m);
        }
        FinSpace::new(points, masks)
    }

    /// The discrete space on `n` points (n ≤ 20, its topology is stored
    /// explicitly).
    pub fn discrete(n: usize) -> FinSpace {
        assert!(
            n <= PRODUCT_ENUM_MAX_POINTS,
            "discrete space beyond {PRODUCT_ENUM_MAX_POINTS} points is not enumerable"
        );
        FinSpace::new_small(n, 0..=((1u64 << n) - 1)).expect("discrete space is a topology")
    }

    /// The indiscrete space on `n` points.
    pub fn indiscrete(n: usize) -> FinSpace {
        FinSpace::new(n, [Mask::EMPTY, full_mask(n)]).expect("indiscrete space is a topology")
    }

    /// The Sierpiński space: carrier {0, 1}, opens ∅, {1}, {0, 1}.
    pub fn sierpinski() -> FinSpace {
        FinSpace::new_small(2, [0b00, 0b10, 0b11]).expect("sierpinski is a topology")
    }

    /// The one-point space.
    pub fn point() -> FinSpace {
        FinSpace::new_small(1, [0, 1]).expect("point is a topology")
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// The explicit open family. Panics for spaces built with an
    /// implicit topology; use [`FinSpace::enumerate_opens`] there.
    pub fn opens(&self) -> &[Mask] {
        self.opens
            .as_deref()
            .expect("space has no explicit open family")
    }

    pub fn explicit_opens(&self) -> Option<&[Mask]> {
        self.opens.as_deref()
    }

    /// Enumerate the open family from the minimal neighbourhoods.
    pub fn enumerate_opens(&self) -> Result<Vec<Mask>, SpaceError> {
        if let Some(o) = &self.opens {
            return Ok(o.clone());
        }
        if self.points > PRODUCT_ENUM_MAX_POINTS {
            return Err(SpaceError::FamilyTooLarge {
                points: self.points,
                family: usize::MAX,
            });
        }
        let top = (1u64 << self.points) - 1;
        Ok((0..=top)
            .map(Mask::low)
            .filter(|m| self.is_open(m))
            .collect())
    }

    pub fn open_count(&self) -> usize {
        match &self.opens {
            Some(o) => o.len(),
            None => self
                .enumerate_opens()
                .expect("family too large to enumerate")
                .len(),
        }
    }

    /// Minimal open neighbourhood of a point.
    pub fn min_nbhd(&self, x: usize) -> Mask {
        self.min_nbhd[x]
    }

    /// Is the subset open? Equivalent to membership in the open family.
    pub fn is_open(&self, mask: &Mask) -> bool {
        mask.ones().all(|x| self.min_nbhd[x].subset_of(mask))
    }

    /// Openness decided against the explicit family; oracle for
    /// [`FinSpace::is_open`].
    pub fn is_open_by_family(&self, mask: &Mask) -> bool {
        self.opens().binary_search(mask).is_ok()
    }
}

/// True iff any two distinct points are separated by an open set
/// containing exactly one of them.
pub fn is_t0(s: &FinSpace) -> bool {
    for x in 0..s.points() {
        for y in (x + 1)..s.points() {
            if s.min_nbhd(x) == s.min_nbhd(y) {
                return false;
            }
        }
    }
    true
}

/// T0 decided directly from the open family; oracle for [`is_t0`].
pub fn is_t0_by_family(s: &FinSpace) -> bool {
    for x in 0..s.points() {
        for y in (x + 1)..s.points() {
            let separated = s.opens().iter().any(|u| u.get(x) != u.get(y));
            if !separated {
                return false;
            }
        }
    }
    true
}

/// A total function between carriers of finite spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContMap {
    pub source: Arc<FinSpace>,
    pub target: Arc<FinSpace>,
    map: Vec<usize>,
}

impl ContMap {
    /// Build a map without checking continuity. [`is_continuous`]
    /// decides whether it is a morphism.
    pub fn new(
        source: Arc<FinSpace>,
        target: Arc<FinSpace>,
        map: Vec<usize>,
    ) -> Result<Self, SpaceError> {
        if map.len() != source.points() {
            return Err(SpaceError::MapWrongLength {
                got: map.len(),
                want: source.points(),
            });
        }
        for &v in &map {
            if v >= target.points() {
                return Err(SpaceError::MapOutOfRange {
                    value: v,
                    points: target.points(),
                });
            }
        }
        Ok(ContMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(space: Arc<FinSpace>) -> ContMap {
        let map = (0..space.points()).collect();
        ContMap {
            source: space.clone(),
            target: space,
            map,
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Image of a subset mask.
    pub fn image_mask(&self, mask: &Mask) -> Mask {
        let mut out = Mask::EMPTY;
        for x in mask.ones() {
            out.insert(self.map[x]);
        }
        out
    }

    /// Preimage of a subset mask.
    pub fn preimage_mask(&self, mask: &Mask) -> Mask {
        let mut out = Mask::EMPTY;
        for (x, &fx) in self.map.iter().enumerate() {
            if mask.get(fx) {
                out.insert(x);
            }
        }
        out
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = Mask::EMPTY;
        for &v in &self.map {
            if seen.get(v) {
                return false;
            }
            seen.insert(v);
        }
        true
    }
}

/// True iff the preimage of every open of the target is open in the
/// source; decided through minimal neighbourhoods.
pub fn is_continuous(m: &ContMap) -> bool {
    (0..m.source.points()).all(|x| {
        let fx = m.apply(x);
        m.image_mask(&m.source.min_nbhd(x))
            .subset_of(&m.target.min_nbhd(fx))
    })
}

/// Continuity decided by iterating the target's open family; oracle for
/// [`is_continuous`].
pub fn is_continuous_by_family(m: &ContMap) -> bool {
    m.target
        .opens()
        .iter()
        .all(|u| m.source.is_open_by_family(&m.preimage_mask(u)))
}

/// The topological product with carrier in lexicographic pair order
/// (`(i, j)` at index `i * b.points() + j`), together with the two
/// projections. The open family is enumerated explicitly, so the
/// product carrier is capped at [`PRODUCT_ENUM_MAX_POINTS`] points.
pub fn product_space(
    a: &Arc<FinSpace>,
    b: &Arc<FinSpace>,
) -> Result<(Arc<FinSpace>, ContMap, ContMap), SpaceError> {
    let n = a.points().checked_mul(b.points()).unwrap_or(usize::MAX);
    if n > PRODUCT_ENUM_MAX_POINTS {
        return Err(SpaceError::ProductTooLarge(a.points(), b.points()));
    }
    // Minimal neighbourhoods of the product are rectangles of minimal
    // neighbourhoods; the opens are exactly the subsets containing the
    // minimal neighbourhood of each of their points.
    let nb: Vec<Mask> = (0..n)
        .map(|p| {
            let (i, j) = (p / b.points(), p % b.points());
            rectangle_mask(&a.min_nbhd(i), &b.min_nbhd(j), b.points())
        })
        .collect();
    let top = (1u64 << n) - 1;
    let mut opens = Vec::new();
    'mask: for bits in 0..=top {
        let mask = Mask::low(bits);
        for p in mask.ones() {
            if !nb[p].subset_of(&mask) {
                continue 'mask;
            }
        }
        opens.push(mask);
    }
    let prod = Arc::new(FinSpace::new(n, opens)?);
    let p1 = ContMap::new(prod.clone(), a.clone(), (0..n).map(|p| p / b.points()).collect())?;
    let p2 = ContMap::new(prod.clone(), b.clone(), (0..n).map(|p| p % b.points()).collect())?;
    Ok((prod, p1, p2))
}

/// The product with an implicit topology: minimal neighbourhoods are
/// rectangles of minimal neighbourhoods. Supports carriers up to the
/// point limit.
pub fn product_space_virtual(
    a: &Arc<FinSpace>,
    b: &Arc<FinSpace>,
) -> Result<(Arc<FinSpace>, ContMap, ContMap), SpaceError> {
    let n = a.points().checked_mul(b.points()).unwrap_or(usize::MAX);
    if n > MAX_POINTS {
        return Err(SpaceError::TooManyPoints(n));
    }
    let nbhds: Vec<Mask> = (0..n)
        .map(|p| {
            let (i, j) = (p / b.points(), p % b.points());
            rectangle_mask(&a.min_nbhd(i), &b.min_nbhd(j), b.points())
        })
        .collect();
    let prod = Arc::new(FinSpace::from_min_nbhds(n, nbhds)?);
    let p1 = ContMap::new(prod.clone(), a.clone(), (0..n).map(|p| p / b.points()).collect())?;
    let p2 = ContMap::new(prod.clone(), b.clone(), (0..n).map(|p| p % b.points()).collect())?;
    Ok((prod, p1, p2))
}

/// The mask of `ma × mb` in lexicographic pair indexing.
pub fn rectangle_mask(ma: &Mask, mb: &Mask, b_points: usize) -> Mask {
    let mut mask = Mask::EMPTY;
    for x in ma.ones() {
        for y in mb.ones() {
            mask.insert(x * b_points + y);
        }
    }
    mask
}

/// The subspace on the given subset, with points kept in increasing
/// order of their original index, plus the inclusion map. The traces of
/// an explicit open family are kept explicit; implicit parents yield an
/// implicit subspace.
pub fn subspace(s: &Arc<FinSpace>, subset: &Mask) -> Result<(Arc<FinSpace>, ContMap), SpaceError> {
    if !subset.subset_of(&full_mask(s.points())) {
        return Err(SpaceError::SubsetOutOfCarrier);
    }
    let kept: Vec<usize> = subset.ones().collect();
    let remap = |mask: &Mask| -> Mask {
        let mut out = Mask::EMPTY;
        for (new, &old) in kept.iter().enumerate() {
            if mask.get(old) {
                out.insert(new);
            }
        }
        out
    };
    let sub = match s.explicit_opens() {
        Some(family) => {
            let traces: Vec<Mask> = family.iter().map(remap).collect();
            FinSpace::new(kept.len(), traces)?
        }
        None => {
            let nbhds = kept
                .iter()
                .map(|&old| remap(&(s.min_nbhd(old) & *subset)))
                .collect();
            FinSpace::from_min_nbhds(kept.len(), nbhds)?
        }
    };
    let sub = Arc::new(sub);
    let incl = ContMap::new(sub.clone(), s.clone(), kept)?;
    Ok((sub, incl))
}

/// True iff `m` is injective and the source topology coincides with the
/// topology traced from the target along `m`.
pub fn is_subspace_inclusion(m: &ContMap) -> bool {
    if !m.is_injective() || !is_continuous(m) {
        return false;
    }
    let image = m.image_mask(&full_mask(m.source.points()));
    (0..m.source.points()).all(|x| {
        let traced = m.preimage_mask(&(m.target.min_nbhd(m.apply(x)) & image));
        m.source.min_nbhd(x) == traced
    })
}

/// The ambient category of finite spaces and continuous maps.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinTopCat;

impl Ambient for FinTopCat {
    type Obj = Arc<FinSpace>;
    type Mor = ContMap;

    fn src(&self, m: &ContMap) -> Arc<FinSpace> {
        m.source.clone()
    }

    fn tgt(&self, m: &ContMap) -> Arc<FinSpace> {
        m.target.clone()
    }

    fn mor_eq(&self, f: &ContMap, g: &ContMap) -> bool {
        f.source == g.source && f.target == g.target && f.map() == g.map()
    }

    fn identity(&self, a: &Arc<FinSpace>) -> ContMap {
        ContMap::identity(a.clone())
    }

    fn compose(&self, g: &ContMap, f: &ContMap) -> Result<ContMap, CatError> {
        if f.target != g.source {
            return Err(CatError::NotComposable(
                "target of the first map differs from source of the second".into(),
            ));
        }
        let map = f.map().iter().map(|&x| g.apply(x)).collect();
        ContMap::new(f.source.clone(), g.target.clone(), map)
            .map_err(|e| CatError::InvalidMorphism(e.to_string()))
    }

    fn carrier_len(&self, a: &Arc<FinSpace>) -> usize {
        a.points()
    }

    fn point_map(&self, m: &ContMap) -> Vec<usize> {
        m.map().to_vec()
    }

    fn make_mor(
        &self,
        a: &Arc<FinSpace>,
        b: &Arc<FinSpace>,
        map: Vec<usize>,
    ) -> Result<ContMap, CatError> {
        let m = ContMap::new(a.clone(), b.clone(), map)
            .map_err(|e| CatError::InvalidMorphism(e.to_string()))?;
        if !is_continuous(&m) {
            return Err(CatError::InvalidMorphism(
                "index function is not continuous".into(),
            ));
        }
        Ok(m)
    }

    fn hom(
        &self,
        a: &Arc<FinSpace>,
        b: &Arc<FinSpace>,
        cap: usize,
    ) -> Result<Vec<ContMap>, CatError> {
        let candidates = raw_function_count(b.points(), a.points());
        if candidates > cap {
            return Err(CatError::CapExceeded { candidates, cap });
        }
        let mut out = Vec::new();
        let mut partial = vec![0usize; a.points()];
        enumerate_continuous(a, b, &mut partial, 0, &mut out);
        Ok(out)
    }

    fn terminal(&self) -> Arc<FinSpace> {
        Arc::new(FinSpace::point())
    }

    fn product(&self, a: &Arc<FinSpace>, b: &Arc<FinSpace>) -> Result<Product<Self>, CatError> {
        // Implicit topology: equal to the explicit product wherever the
        // latter is representable, and defined on all carriers that fit.
        let (apex, p1, p2) =
            product_space_virtual(a, b).map_err(|e| CatError::Unsupported(e.to_string()))?;
        Ok(Product {
            apex,
            p1,
            p2,
            right_len: b.points(),
        })
    }

    fn equalizer(&self, f: &ContMap, g: &ContMap) -> Result<Equalizer<Self>, CatError> {
        if f.source != g.source || f.target != g.target {
            return Err(CatError::Mismatch("equalizer needs a parallel pair".into()));
        }
        let mut subset = Mask::EMPTY;
        for x in 0..f.source.points() {
            if f.apply(x) == g.apply(x) {
                subset.insert(x);
            }
        }
        let (apex, include) = subspace(&f.source, &subset)
            .map_err(|e| CatError::InvalidMorphism(e.to_string()))?;
        let kept = include.map().to_vec();
        Ok(Equalizer {
            apex,
            include,
            kept,
        })
    }

    fn pullback(&self, f: &ContMap, g: &ContMap) -> Result<Pullback<Self>, CatError> {
        // Same apex as the product-equalizer route — lexicographically
        // ordered agreeing pairs with the trace topology — constructed
        // directly so that the intermediate product never has to fit in
        // a subset mask.
        let a = &f.source;
        let b = &g.source;
        let pairs: Vec<(usize, usize)> = (0..a.points())
            .flat_map(|i| (0..b.points()).map(move |j| (i, j)))
            .filter(|&(i, j)| f.apply(i) == g.apply(j))
            .collect();
        if pairs.len() > MAX_POINTS {
            return Err(CatError::Unsupported(format!(
                "pullback carrier of {} points exceeds the limit",
                pairs.len()
            )));
        }
        let nbhds: Vec<Mask> = pairs
            .iter()
            .map(|&(i, j)| {
                let mut mask = Mask::EMPTY;
                for (pos, &(x, y)) in pairs.iter().enumerate() {
                    if a.min_nbhd(i).get(x) && b.min_nbhd(j).get(y) {
                        mask.insert(pos);
                    }
                }
                mask
            })
            .collect();
        let apex = Arc::new(
            FinSpace::from_min_nbhds(pairs.len(), nbhds)
                .map_err(|e| CatError::Unsupported(e.to_string()))?,
        );
        let leg1 = ContMap::new(apex.clone(), a.clone(), pairs.iter().map(|&(i, _)| i).collect())
            .map_err(|e| CatError::InvalidMorphism(e.to_string()))?;
        let leg2 = ContMap::new(apex.clone(), b.clone(), pairs.iter().map(|&(_, j)| j).collect())
            .map_err(|e| CatError::InvalidMorphism(e.to_string()))?;
        Ok(Pullback {
            apex,
            leg1,
            leg2,
            pairs,
        })
    }
}

/// Depth-first enumeration of continuous maps; prunes on the
/// specialization preorder.
fn enumerate_continuous(
    a: &Arc<FinSpace>,
    b: &Arc<FinSpace>,
    partial: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<ContMap>,
) {
    if depth == a.points() {
        let m = ContMap::new(a.clone(), b.clone(), partial.clone()).expect("validated lengths");
        if is_continuous(&m) {
            out.push(m);
        }
        return;
    }
    'next: for v in 0..b.points() {
        for x in 0..depth {
            let fx = partial[x];
            if a.min_nbhd(x).get(depth) && !b.min_nbhd(fx).get(v) {
                continue 'next;
            }
            if a.min_nbhd(depth).get(x) && !b.min_nbhd(v).get(fx) {
                continue 'next;
            }
        }
        partial[depth] = v;
        enumerate_continuous(a, b, partial, depth + 1, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: FinSpace) -> Arc<FinSpace> {
        Arc::new(s)
    }

    #[test]
    fn constructor_rejects_non_topology() {
        // {∅, {0}, {1}, full} on 3 points: missing {0,1} union.
        let err = FinSpace::new_small(3, [0b000, 0b001, 0b010, 0b111]).unwrap_err();
        assert!(matches!(err, SpaceError::NotClosed { op: "union", .. }));
        assert!(matches!(
            FinSpace::new_small(2, [0b10, 0b11]),
            Err(SpaceError::MissingEmpty)
        ));
    }

    #[test]
    fn sierpinski_is_t0() {
        assert!(is_t0(&FinSpace::sierpinski()));
        assert!(is_t0_by_family(&FinSpace::sierpinski()));
    }

    #[test]
    fn indiscrete_two_points_is_not_t0() {
        assert!(!is_t0(&FinSpace::indiscrete(2)));
        assert!(!is_t0_by_family(&FinSpace::indiscrete(2)));
    }

    #[test]
    fn discrete_three_is_t0() {
        assert!(is_t0(&FinSpace::discrete(3)));
    }

    #[test]
    fn identity_on_sierpinski_is_continuous() {
        let s = arc(FinSpace::sierpinski());
        assert!(is_continuous(&ContMap::identity(s)));
    }

    #[test]
    fn constant_maps_are_continuous() {
        let s = arc(FinSpace::sierpinski());
        let t = arc(FinSpace::discrete(3));
        for v in 0..3 {
            let c = ContMap::new(s.clone(), t.clone(), vec![v, v]).unwrap();
            assert!(is_continuous(&c));
        }
    }

    #[test]
    fn sierpinski_swap_is_not_continuous() {
        let s = arc(FinSpace::sierpinski());
        let swap = ContMap::new(s.clone(), s, vec![1, 0]).unwrap();
        assert!(!is_continuous(&swap));
        assert!(!is_continuous_by_family(&swap));
    }

    #[test]
    fn continuity_shortcut_agrees_with_family_oracle() {
        use rand::Rng;
        let mut rng = crate::fixtures::rng_from(17);
        for _ in 0..200 {
            let a = crate::fixtures::random_t0_space(&mut rng, 4);
            let b = crate::fixtures::random_t0_space(&mut rng, 4);
            let map: Vec<usize> = (0..a.points()).map(|_| rng.gen_range(0..b.points())).collect();
            let m = ContMap::new(a.clone(), b.clone(), map).unwrap();
            assert_eq!(is_continuous(&m), is_continuous_by_family(&m));
        }
    }

    #[test]
    fn product_with_point_is_identity_like() {
        let s = arc(FinSpace::sierpinski());
        let p = arc(FinSpace::point());
        let (prod, _, _) = product_space(&s, &p).unwrap();
        assert_eq!(*prod, FinSpace::sierpinski());
    }

    #[test]
    fn sierpinski_square_has_six_opens() {
        // Unions of open rectangles over the 3-open factor family
        // deduplicate to six: ∅, {11}, {01,11}, {10,11}, {01,10,11},
        // all (points as (i,j) pairs).
        let s = arc(FinSpace::sierpinski());
        let (prod, p1, p2) = product_space(&s, &s).unwrap();
        assert_eq!(prod.points(), 4);
        assert_eq!(prod.open_count(), 6);
        assert!(is_continuous(&p1));
        assert!(is_continuous(&p2));
        // Cross-check against brute-force rectangle unions.
        let mut rects = Vec::new();
        for &u in s.opens() {
            for &v in s.opens() {
                rects.push(rectangle_mask(&u, &v, 2));
            }
        }
        let mut family: Vec<Mask> = vec![Mask::EMPTY];
        loop {
            let mut grew = false;
            let snapshot = family.clone();
            for &r in &rects {
                for &f in &snapshot {
                    let u = r | f;
                    if !family.contains(&u) {
                        family.push(u);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        family.sort_unstable();
        assert_eq!(family, prod.opens());
    }

    #[test]
    fn virtual_product_agrees_with_explicit() {
        let mut rng = crate::fixtures::rng_from(23);
        for _ in 0..40 {
            let a = crate::fixtures::random_t0_space(&mut rng, 4);
            let b = crate::fixtures::random_t0_space(&mut rng, 4);
            let (explicit, _, _) = product_space(&a, &b).unwrap();
            let (virt, _, _) = product_space_virtual(&a, &b).unwrap();
            assert_eq!(*explicit, *virt);
            let opens = virt.enumerate_opens().unwrap();
            assert_eq!(opens, explicit.opens());
        }
    }

    #[test]
    fn discrete_times_discrete_is_discrete() {
        let d = arc(FinSpace::discrete(2));
        let (prod, _, _) = product_space(&d, &d).unwrap();
        assert_eq!(*prod, FinSpace::discrete(4));
    }

    #[test]
    fn full_subspace_is_same_space() {
        let s = arc(FinSpace::sierpinski());
        let (sub, incl) = subspace(&s, &Mask::low(0b11)).unwrap();
        assert_eq!(*sub, *s);
        assert!(is_subspace_inclusion(&incl));
    }

    #[test]
    fn singleton_subspace_of_sierpinski_is_point() {
        let s = arc(FinSpace::sierpinski());
        let (sub, _) = subspace(&s, &Mask::low(0b10)).unwrap();
        assert_eq!(*sub, FinSpace::point());
    }

    #[test]
    fn diagonal_subspace_of_sierpinski_square() {
        let s = arc(FinSpace::sierpinski());
        let (prod, _, _) = product_space(&s, &s).unwrap();
        // Diagonal points (0,0) and (1,1) sit at indices 0 and 3.
        let (diag, incl) = subspace(&prod, &Mask::low(0b1001)).unwrap();
        assert_eq!(diag.points(), 2);
        assert_eq!(diag.opens(), &[Mask::EMPTY, Mask::low(0b10), Mask::low(0b11)]);
        assert!(is_subspace_inclusion(&incl));
    }

    #[test]
    fn injective_map_into_coarser_space_is_not_inclusion() {
        let d = arc(FinSpace::discrete(2));
        let i = arc(FinSpace::indiscrete(2));
        let m = ContMap::new(d, i, vec![0, 1]).unwrap();
        assert!(is_continuous(&m));
        assert!(!is_subspace_inclusion(&m));
    }

    #[test]
    fn non_injective_map_is_not_inclusion() {
        let s = arc(FinSpace::sierpinski());
        let m = ContMap::new(s.clone(), s, vec![1, 1]).unwrap();
        assert!(!is_subspace_inclusion(&m));
    }

    #[test]
    fn subspace_inclusion_constructed_is_inclusion() {
        let s = arc(FinSpace::new_small(4, [0b0000, 0b0001, 0b0011, 0b1011, 0b1111]).unwrap());
        for bits in 1..(1u64 << s.points()) {
            let (_, incl) = subspace(&s, &Mask::low(bits)).unwrap();
            assert!(is_subspace_inclusion(&incl));
        }
    }

    #[test]
    fn direct_pullback_agrees_with_limit_route() {
        use crate::cat::pullback_via_limits;
        let amb = FinTopCat;
        let mut rng = crate::fixtures::rng_from(31);
        for _ in 0..30 {
            let a = crate::fixtures::random_t0_space(&mut rng, 3);
            let b = crate::fixtures::random_t0_space(&mut rng, 3);
            let c = crate::fixtures::random_t0_space(&mut rng, 3);
            let fs = Ambient::hom(&amb, &a, &c, 10_000).unwrap();
            let gs = Ambient::hom(&amb, &b, &c, 10_000).unwrap();
            for f in fs.iter().take(3) {
                for g in gs.iter().take(3) {
                    let direct = amb.pullback(f, g).unwrap();
                    let via = pullback_via_limits(&amb, f, g).unwrap();
                    assert_eq!(direct.pairs, via.pairs);
                    assert_eq!(*direct.apex, *via.apex);
                    assert!(amb.mor_eq(&direct.leg1, &via.leg1));
                    assert!(amb.mor_eq(&direct.leg2, &via.leg2));
                }
            }
        }
    }
}
