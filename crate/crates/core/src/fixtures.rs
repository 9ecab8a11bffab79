//! Seeded fixture generators and the standard desk-scale packs.
//!
//! Everything here is deterministic for a fixed seed; the packs mix
//! handcrafted corner cases with generated instances.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::cat::Ambient;
use crate::equ::{EqRel, Equilogical};
use crate::fintop::{FinSpace, FinTopCat};
use crate::pasm::{PartitionedAssembly, PAsmCat};
use crate::spans::{diagonal_span, functor_g, EquivalenceSpan};
use crate::tracklang::{cantor_pair, nat, Nat};

/// Default seed for fixture generation.
pub const DEFAULT_SEED: u64 = 0xE9;

pub fn rng_from(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random T0 space on 1..=max_points points: the up-sets of a random
/// partial order.
pub fn random_t0_space<R: Rng>(rng: &mut R, max_points: usize) -> Arc<FinSpace> {
    let n = rng.gen_range(1..=max_points);
    // Random strict order on 0..n compatible with the index order, then
    // transitively closed.
    let mut lt = vec![[false; 8]; n];
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(0.4) {
                lt[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if lt[i][k] && lt[k][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    let top = (1u64 << n) - 1;
    let opens = (0..=top).filter(|&mask| {
        (0..n).all(|i| {
            if mask & (1 << i) == 0 {
                return true;
            }
            (0..n).all(|j| !lt[i][j] || mask & (1 << j) != 0)
        })
    });
    Arc::new(FinSpace::new_small(n, opens).expect("up-sets form a topology"))
}

/// A random partition of `0..n`, as an equivalence relation.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> EqRel {
    random_partition_bounded(rng, n, n)
}

/// A random partition with classes of at most `max_class` points.
pub fn random_partition_bounded<R: Rng>(rng: &mut R, n: usize, max_class: usize) -> EqRel {
    let blocks = rng.gen_range(n.div_ceil(max_class.max(1))..=n.max(1));
    let mut sizes = vec![0usize; blocks];
    let assign: Vec<usize> = (0..n)
        .map(|_| loop {
            let b = rng.gen_range(0..blocks);
            if sizes[b] < max_class {
                sizes[b] += 1;
                break b;
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if assign[i] == assign[j] {
                pairs.push((i, j));
            }
        }
    }
    EqRel::from_pairs(n, &pairs).expect("partition relation is an equivalence")
}

/// A random equilogical space on at most `max_points` points.
pub fn random_equilogical<R: Rng>(rng: &mut R, max_points: usize) -> Equilogical {
    let space = random_t0_space(rng, max_points);
    let rel = random_partition(rng, space.points());
    Equilogical::new(space, rel).expect("generated space is T0")
}

/// The standard pack of subspatial equivalence spans on spaces with at
/// most four points. At least twenty fixtures; handcrafted corner cases
/// first, then seeded instances.
pub fn subspatial_pack(seed: u64) -> Vec<EquivalenceSpan<FinTopCat>> {
    let cat = FinTopCat;
    let mut rng = rng_from(seed);
    let mut pack = Vec::new();
    let sierp = || Arc::new(FinSpace::sierpinski());
    let disc = |n: usize| Arc::new(FinSpace::discrete(n));
    pack.push(diagonal_span(&cat, Arc::new(FinSpace::point())).unwrap());
    pack.push(diagonal_span(&cat, sierp()).unwrap());
    pack.push(diagonal_span(&cat, disc(2)).unwrap());
    pack.push(diagonal_span(&cat, disc(3)).unwrap());
    for (space, rel) in [
        (disc(2), EqRel::total(2)),
        (sierp(), EqRel::total(2)),
        (disc(3), EqRel::total(3)),
        (
            disc(3),
            EqRel::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)]).unwrap(),
        ),
        (
            Arc::new(FinSpace::new_small(3, [0b000, 0b100, 0b110, 0b111]).unwrap()),
            EqRel::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (1, 2), (2, 1)]).unwrap(),
        ),
    ] {
        let e = Equilogical::new(space, rel).unwrap();
        pack.push(functor_g(&cat, &e).unwrap());
    }
    while pack.len() < 22 {
        let e = random_equilogical(&mut rng, 4);
        pack.push(functor_g(&cat, &e).unwrap());
    }
    pack
}

/// Options for generated assembly spans.
#[derive(Debug, Clone, Copy)]
pub struct PasmSpanStyle {
    /// Realizers of the base points are pairwise distinct.
    pub injective_base: bool,
    /// Edge realizers are Cantor codes of the endpoint realizers (and
    /// parallel duplicate edges may appear); otherwise edges carry
    /// fresh distinct realizers.
    pub paired_edge_codes: bool,
}

/// A random equivalence span of partitioned assemblies on a carrier of
/// at most `max_carrier` points.
pub fn random_pasm_span<R: Rng>(
    rng: &mut R,
    max_carrier: usize,
    style: PasmSpanStyle,
) -> EquivalenceSpan<PAsmCat> {
    let cat = PAsmCat;
    let n = rng.gen_range(1..=max_carrier);
    let alpha0: Vec<Nat> = if style.injective_base {
        let offset = rng.gen_range(0..3u64);
        (0..n as u64).map(|i| nat(i + offset)).collect()
    } else {
        (0..n).map(|_| nat(rng.gen_range(0..3u64))).collect()
    };
    let a0 = Arc::new(PartitionedAssembly::new(n, alpha0.clone()).unwrap());
    // Classes of at most three points keep the free-dagger cell counts
    // over these spans at desk scale.
    let rel = random_partition_bounded(rng, n, 3);
    // Edges: one per related ordered pair, with occasional parallel
    // duplicates when edge codes repeat anyway.
    let mut edges: Vec<(usize, usize)> = rel.pairs();
    if style.paired_edge_codes {
        let snapshot = edges.clone();
        for &(i, j) in &snapshot {
            if rng.gen_bool(0.25) {
                edges.push((i, j));
            }
        }
        edges.sort();
    }
    let alpha1: Vec<Nat> = edges
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| {
            if style.paired_edge_codes {
                cantor_pair(&alpha0[i], &alpha0[j])
            } else {
                nat(100 + k as u64)
            }
        })
        .collect();
    let a1 = Arc::new(PartitionedAssembly::new(edges.len(), alpha1).unwrap());
    let d1 = cat
        .make_mor(&a1, &a0, edges.iter().map(|&(i, _)| i).collect())
        .expect("projection is tracked");
    let d2 = cat
        .make_mor(&a1, &a0, edges.iter().map(|&(_, j)| j).collect())
        .expect("projection is tracked");
    let least_edge = |i: usize, j: usize| -> usize {
        edges
            .iter()
            .position(|&p| p == (i, j))
            .expect("relation pair has an edge")
    };
    let r_table: Vec<usize> = (0..n).map(|x| least_edge(x, x)).collect();
    let s_table: Vec<usize> = edges.iter().map(|&(i, j)| least_edge(j, i)).collect();
    let pullback = crate::cat::pullback_of_cospan(&cat, &d2, &d1).unwrap();
    let t_table: Vec<usize> = pullback
        .pairs
        .iter()
        .map(|&(u, v)| least_edge(edges[u].0, edges[v].1))
        .collect();
    EquivalenceSpan::from_tables(&cat, d1, d2, r_table, s_table, t_table)
        .expect("generated span validates")
}

/// The standard pack of equivalence spans of assemblies on carriers of
/// at most five points: handcrafted corner cases plus seeded instances,
/// mixing collision-rich and injective realizers.
pub fn pasm_pack(seed: u64) -> Vec<EquivalenceSpan<PAsmCat>> {
    let mut rng = rng_from(seed);
    let mut pack = Vec::new();
    pack.push(pasm_span_from_parts(
        1,
        &[0],
        &[(0, 0, 0)],
    ));
    // Total relation on two points with constant realizers: everything
    // collides.
    pack.push(pasm_span_from_parts(
        2,
        &[5, 5],
        &[(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)],
    ));
    // Two parallel edges with equal realizers: the monic form collapses
    // them.
    pack.push(pasm_span_from_parts(
        2,
        &[1, 1],
        &[(0, 0, 7), (0, 1, 7), (0, 1, 7), (1, 0, 7), (1, 1, 7)],
    ));
    // Injective base, two classes on three points.
    pack.push(pasm_span_from_parts(
        3,
        &[0, 1, 2],
        &[(0, 0, 3), (0, 1, 4), (1, 0, 5), (1, 1, 6), (2, 2, 8)],
    ));
    let styles = [
        PasmSpanStyle {
            injective_base: false,
            paired_edge_codes: true,
        },
        PasmSpanStyle {
            injective_base: true,
            paired_edge_codes: true,
        },
        PasmSpanStyle {
            injective_base: true,
            paired_edge_codes: false,
        },
    ];
    let mut i = 0;
    while pack.len() < 22 {
        let style = styles[i % styles.len()];
        pack.push(random_pasm_span(&mut rng, 5, style));
        i += 1;
    }
    pack
}

/// The pack of bases for the numeric 2-groupoid checks: spans on at
/// most three points with injective base realizers, in monic form, plus
/// the interval base.
pub fn numeric_base_pack(bound: usize) -> Vec<std::sync::Arc<crate::ncat::NObj>> {
    use crate::ncat::NObj;
    use crate::pasm::monic_form;
    use crate::twogroupoid::{NumericTwoGroupoid, TripleGraph};
    let parts: Vec<(usize, Vec<u64>, Vec<(usize, usize, u64)>)> = vec![
        // Diagonal on two points.
        (2, vec![0, 1], vec![(0, 0, 1), (1, 1, 2)]),
        // Total relation on two points.
        (
            2,
            vec![0, 1],
            vec![(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)],
        ),
        // Two classes on three points.
        (
            3,
            vec![0, 1, 2],
            vec![(0, 0, 3), (0, 1, 4), (1, 0, 5), (1, 1, 6), (2, 2, 8)],
        ),
        // Diagonal on three points.
        (3, vec![2, 5, 9], vec![(0, 0, 1), (1, 1, 2), (2, 2, 3)]),
        // A pair class next to a loop, shifted realizers.
        (
            3,
            vec![4, 7, 11],
            vec![(0, 0, 0), (1, 1, 1), (1, 2, 2), (2, 1, 3), (2, 2, 5)],
        ),
    ];
    let mut pack: Vec<std::sync::Arc<NObj>> = parts
        .into_iter()
        .map(|(n, alpha0, edges)| {
            let span = pasm_span_from_parts(n, &alpha0, &edges);
            let mf = monic_form(&span).expect("pack spans collapse");
            NObj::free(NumericTwoGroupoid::new(
                TripleGraph::from_monic_form(&mf),
                bound,
            ))
        })
        .collect();
    pack.push(NObj::free(crate::ncat::interval_two_groupoid(bound)));
    pack
}

/// A random expression-language program of bounded depth, for
/// budget-monotonicity sampling.
pub fn random_program<R: Rng>(rng: &mut R, depth: usize) -> crate::tracklang::Program {
    use crate::tracklang::Program;
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => Program::Input,
            1 => Program::Const(nat(rng.gen_range(0..10u64))),
            _ => Program::Input,
        };
    }
    let sub = |rng: &mut R| Box::new(random_program(rng, depth - 1));
    match rng.gen_range(0..9) {
        0 => Program::Succ(sub(rng)),
        1 => Program::Pred(sub(rng)),
        2 => Program::Pair(sub(rng), sub(rng)),
        3 => Program::First(sub(rng)),
        4 => Program::Second(sub(rng)),
        5 => Program::IfZero(sub(rng), sub(rng), sub(rng)),
        6 => Program::Compose(sub(rng), sub(rng)),
        7 => Program::Loop(
            sub(rng),
            // Bounded fuel so generated loops terminate quickly.
            Box::new(Program::Const(nat(rng.gen_range(0..4u64)))),
        ),
        _ => Program::Input,
    }
}

/// Build a span of assemblies from explicit base realizers and edge
/// triples `(src, tgt, code)`, with least-index structure maps.
pub fn pasm_span_from_parts(
    carrier: usize,
    alpha0: &[u64],
    edges: &[(usize, usize, u64)],
) -> EquivalenceSpan<PAsmCat> {
    let cat = PAsmCat;
    let a0 = Arc::new(
        PartitionedAssembly::new(carrier, alpha0.iter().map(|&x| nat(x)).collect()).unwrap(),
    );
    let a1 = Arc::new(
        PartitionedAssembly::new(edges.len(), edges.iter().map(|&(_, _, c)| nat(c)).collect())
            .unwrap(),
    );
    let d1 = cat
        .make_mor(&a1, &a0, edges.iter().map(|&(i, _, _)| i).collect())
        .expect("d1 tracked");
    let d2 = cat
        .make_mor(&a1, &a0, edges.iter().map(|&(_, j, _)| j).collect())
        .expect("d2 tracked");
    let least_edge = |i: usize, j: usize| -> usize {
        edges
            .iter()
            .position(|&(a, b, _)| (a, b) == (i, j))
            .expect("relation pair has an edge")
    };
    let r_table: Vec<usize> = (0..carrier).map(|x| least_edge(x, x)).collect();
    let s_table: Vec<usize> = edges.iter().map(|&(i, j, _)| least_edge(j, i)).collect();
    let pullback = crate::cat::pullback_of_cospan(&cat, &d2, &d1).unwrap();
    let t_table: Vec<usize> = pullback
        .pairs
        .iter()
        .map(|&(u, v)| least_edge(edges[u].0, edges[v].1))
        .collect();
    EquivalenceSpan::from_tables(&cat, d1, d2, r_table, s_table, t_table)
        .expect("span from parts validates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fintop::is_t0;
    use crate::spans::is_subspatial;

    #[test]
    fn random_spaces_are_t0() {
        let mut rng = rng_from(3);
        for _ in 0..50 {
            assert!(is_t0(&random_t0_space(&mut rng, 6)));
        }
    }

    #[test]
    fn subspace_of_t0_is_t0() {
        let mut rng = rng_from(4);
        for _ in 0..30 {
            let s = random_t0_space(&mut rng, 6);
            let subset = crate::mask::Mask::low(rng.gen_range(0..(1u64 << s.points())));
            let (sub, _) = crate::fintop::subspace(&s, &subset).unwrap();
            assert!(is_t0(&sub));
        }
    }

    #[test]
    fn subspatial_pack_is_subspatial_and_small() {
        let cat = FinTopCat;
        let pack = subspatial_pack(DEFAULT_SEED);
        assert!(pack.len() >= 20);
        for span in &pack {
            assert!(span.graph.a0.points() <= 4);
            assert!(is_subspatial(&cat, span));
        }
    }

    #[test]
    fn pasm_pack_is_valid_and_small() {
        let pack = pasm_pack(DEFAULT_SEED);
        assert!(pack.len() >= 20);
        for span in &pack {
            assert!(span.graph.a0.carrier() <= 5);
        }
    }

    #[test]
    fn packs_are_deterministic() {
        let cat = PAsmCat;
        let a = pasm_pack(9);
        let b = pasm_pack(9);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.graph.a0, y.graph.a0);
            assert!(cat.mor_eq(&x.graph.d1, &y.graph.d1));
        }
    }
}
