//! The interval-object contract behind the homotopical quotients.
//!
//! An interval-like object has two global points whose pushout exists
//! and is stable under products, a swap endomorphism, and a composition
//! arrow into the pushout, subject to the endpoint equations below.
//! These make "connected by a map out of `X × I`" an equivalence
//! relation on parallel arrows, so the quotient category is well
//! defined.
//!
//! The contract is verified per instance, not proved: the pushout
//! universal property is audited against competitor cocones enumerated
//! from a list of sample objects, and product stability is audited by
//! checking that `X × (I +_T I)` with the composed injections satisfies
//! the universal property of the pushout of `X × I ← X × T → X × I`.

/// The minimal categorical surface needed to verify interval structure.
/// Implemented by the category of topological groupoids and by the
/// category of numeric 2-groupoids.
pub trait HomotopyAmbient {
    type Obj: Clone;
    type Mor: Clone;

    fn obj_eq(&self, a: &Self::Obj, b: &Self::Obj) -> bool;
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;
    fn src(&self, m: &Self::Mor) -> Self::Obj;
    fn tgt(&self, m: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, String>;
    fn terminal(&self) -> Self::Obj;
    /// The unique morphism to the terminal object.
    fn bang(&self, a: &Self::Obj) -> Self::Mor;
    /// A chosen product with projections.
    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Result<HProduct<Self>, String>;
    /// The pairing of two morphisms into a chosen product.
    fn pair(
        &self,
        prod: &HProduct<Self>,
        f: &Self::Mor,
        g: &Self::Mor,
    ) -> Result<Self::Mor, String>;
    /// Enumerate the hom-set, within a cap.
    fn enumerate(&self, a: &Self::Obj, b: &Self::Obj, cap: usize) -> Result<Vec<Self::Mor>, String>;
}

/// A chosen product in a homotopy ambient.
pub struct HProduct<H: HomotopyAmbient + ?Sized> {
    pub obj: H::Obj,
    pub p1: H::Mor,
    pub p2: H::Mor,
}

impl<H: HomotopyAmbient> Clone for HProduct<H> {
    fn clone(&self) -> Self {
        HProduct {
            obj: self.obj.clone(),
            p1: self.p1.clone(),
            p2: self.p2.clone(),
        }
    }
}

/// Interval data: the object `I` with endpoints `e0, e1 : T → I`, the
/// declared pushout `I +_T I` with injections, the composition arrow
/// `gamma`, and the swap `iota`.
pub struct IntervalObjectData<H: HomotopyAmbient> {
    pub interval: H::Obj,
    pub e0: H::Mor,
    pub e1: H::Mor,
    pub iota: H::Mor,
    pub pushout: H::Obj,
    pub inj0: H::Mor,
    pub inj1: H::Mor,
    pub gamma: H::Mor,
}

/// Outcome of the interval-structure verification.
#[derive(Debug, Clone, Default)]
pub struct IntervalReport {
    pub failures: Vec<String>,
    pub equations_checked: usize,
    pub pushout_cocones_checked: usize,
    pub stability_cocones_checked: usize,
}

impl IntervalReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    fn eq_check(&mut self, name: &str, ok: bool) {
        self.equations_checked += 1;
        if !ok {
            self.failures.push(format!("equation `{name}` fails"));
        }
    }
}

/// Verify the interval equations, the pushout universal property against
/// cocones into the sample objects, and product stability over the
/// samples, with the samples doubling as competitor-cocone targets.
pub fn verify_interval_structure<H>(
    amb: &H,
    data: &IntervalObjectData<H>,
    samples: &[H::Obj],
    cap: usize,
) -> Result<IntervalReport, String>
where
    H: HomotopyAmbient + Sync,
    H::Obj: Send + Sync,
    H::Mor: Send + Sync,
{
    verify_interval_structure_against(amb, data, samples, samples, cap)
}

/// As [`verify_interval_structure`], with an explicit list of competitor
/// targets. Cocone enumeration out of cylinders grows with the cube of
/// the target hom-set sizes, so callers may keep the target list leaner
/// than the stability samples.
pub fn verify_interval_structure_against<H>(
    amb: &H,
    data: &IntervalObjectData<H>,
    samples: &[H::Obj],
    targets: &[H::Obj],
    cap: usize,
) -> Result<IntervalReport, String>
where
    H: HomotopyAmbient + Sync,
    H::Obj: Send + Sync,
    H::Mor: Send + Sync,
{
    let mut report = IntervalReport::default();
    // Endpoint equations for the swap.
    let lhs = amb.compose(&data.iota, &data.e0)?;
    report.eq_check("iota ∘ e0 = e1", amb.mor_eq(&lhs, &data.e1));
    let lhs = amb.compose(&data.iota, &data.e1)?;
    report.eq_check("iota ∘ e1 = e0", amb.mor_eq(&lhs, &data.e0));
    // The pushout square.
    let lhs = amb.compose(&data.inj0, &data.e1)?;
    let rhs = amb.compose(&data.inj1, &data.e0)?;
    report.eq_check("inj0 ∘ e1 = inj1 ∘ e0", amb.mor_eq(&lhs, &rhs));
    // The composition arrow restricts to the injections on endpoints.
    let lhs = amb.compose(&data.gamma, &data.e0)?;
    let rhs = amb.compose(&data.inj0, &data.e0)?;
    report.eq_check("gamma ∘ e0 = inj0 ∘ e0", amb.mor_eq(&lhs, &rhs));
    let lhs = amb.compose(&data.gamma, &data.e1)?;
    let rhs = amb.compose(&data.inj1, &data.e1)?;
    report.eq_check("gamma ∘ e1 = inj1 ∘ e1", amb.mor_eq(&lhs, &rhs));

    // Pushout universal property against enumerated competitor cocones.
    // Restrictions of the mediator candidates are precomputed once.
    for k in targets {
        let into_i = amb.enumerate(&data.interval, k, cap)?;
        let into_q = amb.enumerate(&data.pushout, k, cap)?;
        let restrictions: Vec<(H::Mor, H::Mor)> = into_q
            .iter()
            .map(|m| {
                Ok((
                    amb.compose(m, &data.inj0)?,
                    amb.compose(m, &data.inj1)?,
                ))
            })
            .collect::<Result<_, String>>()?;
        for u in &into_i {
            let ue1 = amb.compose(u, &data.e1)?;
            for v in &into_i {
                let ve0 = amb.compose(v, &data.e0)?;
                if !amb.mor_eq(&ue1, &ve0) {
                    continue;
                }
                report.pushout_cocones_checked += 1;
                let mediators = restrictions
                    .iter()
                    .filter(|(r0, r1)| amb.mor_eq(r0, u) && amb.mor_eq(r1, v))
                    .count();
                if mediators != 1 {
                    report
                        .failures
                        .push(format!("pushout cocone has {mediators} mediating morphisms"));
                }
            }
        }
    }

    // Product stability: X × (I +_T I), with injections X × inj, is the
    // pushout of X × I ← X × T → X × I. Sample-target combinations are
    // independent, so they run in parallel.
    let combos: Vec<(&H::Obj, &H::Obj)> = samples
        .iter()
        .flat_map(|x| targets.iter().map(move |k| (x, k)))
        .collect();
    let outcomes: Vec<Result<(bool, usize, Vec<String>), String>> = {
        use rayon::prelude::*;
        combos
            .par_iter()
            .map(|(x, k)| stability_check(amb, data, x, k, cap))
            .collect()
    };
    for outcome in outcomes {
        let (square_ok, cocones, failures) = outcome?;
        report.eq_check("stability square", square_ok);
        report.stability_cocones_checked += cocones;
        report.failures.extend(failures);
    }
    Ok(report)
}

fn stability_check<H: HomotopyAmbient>(
    amb: &H,
    data: &IntervalObjectData<H>,
    x: &H::Obj,
    k: &H::Obj,
    cap: usize,
) -> Result<(bool, usize, Vec<String>), String> {
    let xi = amb.product(x, &data.interval)?;
    let xt = amb.product(x, &amb.terminal())?;
    let xq = amb.product(x, &data.pushout)?;
    // X × T → X × I along an endpoint.
    let leg = |e: &H::Mor| -> Result<H::Mor, String> {
        amb.pair(&xi, &xt.p1, &amb.compose(e, &xt.p2)?)
    };
    let leg0 = leg(&data.e0)?;
    let leg1 = leg(&data.e1)?;
    // X × I → X × Q along an injection.
    let up = |inj: &H::Mor| -> Result<H::Mor, String> {
        amb.pair(&xq, &xi.p1, &amb.compose(inj, &xi.p2)?)
    };
    let up0 = up(&data.inj0)?;
    let up1 = up(&data.inj1)?;
    let lhs = amb.compose(&up0, &leg1)?;
    let rhs = amb.compose(&up1, &leg0)?;
    let square_ok = amb.mor_eq(&lhs, &rhs);
    let mut failures = Vec::new();
    let mut cocones = 0usize;
    let into_xi = amb.enumerate(&xi.obj, k, cap)?;
    let into_xq = amb.enumerate(&xq.obj, k, cap)?;
    let restrictions: Vec<(H::Mor, H::Mor)> = into_xq
        .iter()
        .map(|m| Ok((amb.compose(m, &up0)?, amb.compose(m, &up1)?)))
        .collect::<Result<_, String>>()?;
    let leg1_composites: Vec<H::Mor> = into_xi
        .iter()
        .map(|u| amb.compose(u, &leg1))
        .collect::<Result<_, String>>()?;
    let leg0_composites: Vec<H::Mor> = into_xi
        .iter()
        .map(|v| amb.compose(v, &leg0))
        .collect::<Result<_, String>>()?;
    for (ui, u) in into_xi.iter().enumerate() {
        for (vi, v) in into_xi.iter().enumerate() {
            if !amb.mor_eq(&leg1_composites[ui], &leg0_composites[vi]) {
                continue;
            }
            cocones += 1;
            let mediators = restrictions
                .iter()
                .filter(|(r0, r1)| amb.mor_eq(r0, u) && amb.mor_eq(r1, v))
                .count();
            if mediators != 1 {
                failures.push(format!(
                    "stability cocone has {mediators} mediating morphisms"
                ));
            }
        }
    }
    Ok((square_ok, cocones, failures))
}
