//! A toy model of partial recursive functions on the naturals.
//!
//! Programs are small expression trees over arbitrary-precision naturals:
//! constants, the input, successor/predecessor, Cantor pairing and
//! unpairing, a zero test, composition, and a bounded loop. Evaluation is
//! budgeted: every node visit costs one unit, and running out of budget is
//! an ordinary outcome rather than an error. Partiality is modelled by
//! budget exhaustion; no claim of Turing completeness is made or needed.
//!
//! The pairing orientation is fixed once and for all as
//! `pair(n, m) = (n+m)(n+m+1)/2 + m`; every numeric encoding in the rest
//! of the crate depends on it bit-exactly.
//!
//! Surface syntax (s-expressions, used in instance files):
//!
//! ```text
//! expr ::= NAT                    natural-number constant
//!        | in                     the input
//!        | (succ expr)
//!        | (pred expr)            predecessor, 0 at 0
//!        | (pair expr expr)
//!        | (fst expr) | (snd expr)
//!        | (ifz expr expr expr)   if first is zero then second else third
//!        | (comp expr expr)       outer after inner
//!        | (loop expr expr)       iterate body, fuel from second expr
//! ```

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

/// Convenience constructor for small naturals.
pub fn nat(n: u64) -> Nat {
    BigUint::from(n)
}

/// Cantor pairing: `pair(n, m) = (n+m)(n+m+1)/2 + m`.
pub fn cantor_pair(n: &Nat, m: &Nat) -> Nat {
    let s = n + m;
    let t = (&s * (&s + 1u32)) >> 1;
    t + m
}

/// Two-sided inverse of [`cantor_pair`].
pub fn cantor_unpair(k: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8k+1) - 1) / 2) is the index of the diagonal.
    let disc = (k << 3u32) + 1u32;
    let w = (disc.sqrt() - 1u32) >> 1;
    let t = (&w * (&w + 1u32)) >> 1;
    let m = k - t;
    let n = &w - &m;
    (n, m)
}

/// Expression tree denoting a partial function `Nat ⇀ Nat` under budgeted
/// evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Program {
    Const(Nat),
    Input,
    Succ(Box<Program>),
    Pred(Box<Program>),
    Pair(Box<Program>, Box<Program>),
    First(Box<Program>),
    Second(Box<Program>),
    IfZero(Box<Program>, Box<Program>, Box<Program>),
    /// Outer after inner: the inner value becomes the outer input.
    Compose(Box<Program>, Box<Program>),
    /// Iterate the body; the fuel expression is evaluated once on the
    /// initial input to obtain the iteration count.
    Loop(Box<Program>, Box<Program>),
}

impl Program {
    pub fn konst(n: u64) -> Program {
        Program::Const(nat(n))
    }

    pub fn succ(self) -> Program {
        Program::Succ(Box::new(self))
    }

    pub fn pred(self) -> Program {
        Program::Pred(Box::new(self))
    }

    pub fn then(self, outer: Program) -> Program {
        Program::Compose(Box::new(outer), Box::new(self))
    }

    /// Number of nodes, used to guard synthesized program sizes.
    pub fn size(&self) -> usize {
        match self {
            Program::Const(_) | Program::Input => 1,
            Program::Succ(a) | Program::Pred(a) | Program::First(a) | Program::Second(a) => {
                1 + a.size()
            }
            Program::Pair(a, b) | Program::Compose(a, b) | Program::Loop(a, b) => {
                1 + a.size() + b.size()
            }
            Program::IfZero(a, b, c) => 1 + a.size() + b.size() + c.size(),
        }
    }
}

/// Result of a budgeted evaluation.
///
/// `Stuck` is reserved: pairing is total on naturals, so no operation in
/// the current language can get stuck, but the variant keeps the outcome
/// type stable if partial primitives are ever added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalOutcome {
    Value(Nat),
    Exhausted,
    Stuck,
}

impl EvalOutcome {
    pub fn value(&self) -> Option<&Nat> {
        match self {
            EvalOutcome::Value(n) => Some(n),
            _ => None,
        }
    }
}

struct Budget {
    left: u64,
}

impl Budget {
    fn tick(&mut self) -> bool {
        if self.left == 0 {
            false
        } else {
            self.left -= 1;
            true
        }
    }
}

/// Evaluate `p` on `input` with the given budget. Each node visit costs
/// one budget unit; running out yields `Exhausted`. Deterministic, and
/// monotone in the budget: a `Value` outcome never changes when the
/// budget increases.
pub fn eval(p: &Program, input: &Nat, budget: u64) -> EvalOutcome {
    let mut b = Budget { left: budget };
    match eval_in(p, input, &mut b) {
        Some(n) => EvalOutcome::Value(n),
        None => EvalOutcome::Exhausted,
    }
}

fn eval_in(p: &Program, input: &Nat, b: &mut Budget) -> Option<Nat> {
    if !b.tick() {
        return None;
    }
    match p {
        Program::Const(n) => Some(n.clone()),
        Program::Input => Some(input.clone()),
        Program::Succ(a) => Some(eval_in(a, input, b)? + 1u32),
        Program::Pred(a) => {
            let v = eval_in(a, input, b)?;
            Some(if v.is_zero() { v } else { v - 1u32 })
        }
        Program::Pair(a, c) => {
            let x = eval_in(a, input, b)?;
            let y = eval_in(c, input, b)?;
            Some(cantor_pair(&x, &y))
        }
        Program::First(a) => Some(cantor_unpair(&eval_in(a, input, b)?).0),
        Program::Second(a) => Some(cantor_unpair(&eval_in(a, input, b)?).1),
        Program::IfZero(c, t, e) => {
            let v = eval_in(c, input, b)?;
            if v.is_zero() {
                eval_in(t, input, b)
            } else {
                eval_in(e, input, b)
            }
        }
        Program::Compose(outer, inner) => {
            let mid = eval_in(inner, input, b)?;
            eval_in(outer, &mid, b)
        }
        Program::Loop(body, fuel) => {
            let mut n = eval_in(fuel, input, b)?;
            let mut acc = input.clone();
            while !n.is_zero() {
                acc = eval_in(body, &acc, b)?;
                n -= 1u32;
            }
            Some(acc)
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("conflicting table entries: input {input} maps to both {a} and {b}")]
    Conflict { input: Nat, a: Nat, b: Nat },
}

/// Leaf threshold below which key dispatch uses plain predecessor
/// chains. Kept small so that synthesized programs stay shallow: the
/// evaluator recurses on program structure, and a pred chain of length k
/// costs k stack frames.
const LEAF_CHAIN_MAX: u64 = 256;

/// Synthesize a program that agrees with the given finite input/output
/// table; behaviour on inputs outside the table is unspecified.
///
/// Small keys are dispatched by an ascending chain of `pred^k`/zero
/// tests. Larger keys (which in this crate are always iterated Cantor
/// pairs of small numbers) are split with `fst`/`snd` and dispatched
/// recursively on their components.
pub fn synthesize_table_tracker(io: &[(Nat, Nat)]) -> Result<Program, TableError> {
    let mut table: Vec<(Nat, Nat)> = Vec::new();
    for (k, v) in io {
        match table.iter().find(|(k2, _)| k2 == k) {
            Some((_, v2)) if v2 != v => {
                return Err(TableError::Conflict {
                    input: k.clone(),
                    a: v2.clone(),
                    b: v.clone(),
                })
            }
            Some(_) => {}
            None => table.push((k.clone(), v.clone())),
        }
    }
    if table.is_empty() {
        return Ok(Program::konst(0));
    }
    table.sort();
    Ok(dispatch(&table))
}

/// Build the dispatcher for a sorted, duplicate-free table.
fn dispatch(table: &[(Nat, Nat)]) -> Program {
    if table.len() == 1 {
        return Program::Const(table[0].1.clone());
    }
    let leaf_max = nat(LEAF_CHAIN_MAX);
    if table.iter().all(|(k, _)| *k <= leaf_max) {
        // Ascending pred-chain: testing x <= k hits the right branch first.
        let mut prog = Program::Const(table.last().unwrap().1.clone());
        for (k, v) in table[..table.len() - 1].iter().rev() {
            let mut probe = Program::Input;
            let mut steps = k.clone();
            while !steps.is_zero() {
                probe = probe.pred();
                steps -= 1u32;
            }
            prog = Program::IfZero(
                Box::new(probe),
                Box::new(Program::Const(v.clone())),
                Box::new(prog),
            );
        }
        return prog;
    }
    // Split every key as a Cantor pair and dispatch on the first
    // component, then on the second within each group.
    let mut groups: Vec<(Nat, Vec<(Nat, Nat)>)> = Vec::new();
    for (k, v) in table {
        let (a, b) = cantor_unpair(k);
        match groups.iter_mut().find(|(g, _)| *g == a) {
            Some((_, entries)) => entries.push((b.clone(), v.clone())),
            None => groups.push((a, vec![(b, v.clone())])),
        }
    }
    groups.sort_by(|x, y| x.0.cmp(&y.0));
    let subs: Vec<(Nat, Program)> = groups
        .into_iter()
        .map(|(a, mut entries)| {
            entries.sort();
            (a, dispatch(&entries))
        })
        .collect();
    // Dispatch on fst(x), running the chosen subprogram on snd(x).
    let mut prog = {
        let (_, last) = subs.last().unwrap();
        Program::Compose(
            Box::new(last.clone()),
            Box::new(Program::Second(Box::new(Program::Input))),
        )
    };
    for (a, sub) in subs[..subs.len() - 1].iter().rev() {
        let probe = component_probe(a, Program::First(Box::new(Program::Input)));
        prog = Program::IfZero(
            Box::new(probe),
            Box::new(Program::Compose(
                Box::new(sub.clone()),
                Box::new(Program::Second(Box::new(Program::Input))),
            )),
            Box::new(prog),
        );
    }
    prog
}

/// A probe that is zero on `access = key` and, thanks to the strict
/// monotonicity of the pairing in each argument, nonzero on every table
/// key larger than `key` (the dispatch chain is ascending, so smaller
/// keys were already consumed).
fn component_probe(key: &Nat, access: Program) -> Program {
    let leaf_max = nat(LEAF_CHAIN_MAX);
    if *key <= leaf_max {
        let mut probe = access;
        let mut steps = key.clone();
        while !steps.is_zero() {
            probe = probe.pred();
            steps -= 1u32;
        }
        probe
    } else {
        // Zero iff both components probe zero: pair(0, 0) = 0 and any
        // nonzero component makes the pair nonzero.
        let (ka, kb) = cantor_unpair(key);
        let pa = component_probe(&ka, Program::First(Box::new(access.clone())));
        let pb = component_probe(&kb, Program::Second(Box::new(access)));
        Program::Pair(Box::new(pa), Box::new(pb))
    }
}

/// Budget that suffices to run a synthesized table tracker on any of its
/// own table inputs.
pub fn table_budget(io_len: usize) -> u64 {
    // Each failed probe along the dispatch chain costs at most a few
    // leaf chains across the pair-decomposition levels.
    (io_len as u64 + 2) * (LEAF_CHAIN_MAX + 64) * 16
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected token `{0}` at offset {1}")]
    Unexpected(String, usize),
    #[error("unbalanced parenthesis at offset {0}")]
    Unbalanced(usize),
}

/// Parse the s-expression surface syntax.
pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let tokens = lex(src);
    let mut pos = 0usize;
    let prog = parse_expr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        let (t, off) = &tokens[pos];
        return Err(ParseError::Unexpected(t.clone(), *off));
    }
    Ok(prog)
}

fn lex(src: &str) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0usize;
    for (i, ch) in src.char_indices() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push((std::mem::take(&mut cur), start));
                }
                out.push((ch.to_string(), i));
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push((std::mem::take(&mut cur), start));
                }
            }
            c => {
                if cur.is_empty() {
                    start = i;
                }
                cur.push(c);
            }
        }
    }
    if !cur.is_empty() {
        out.push((cur, start));
    }
    out
}

fn parse_expr(tokens: &[(String, usize)], pos: &mut usize) -> Result<Program, ParseError> {
    let (tok, off) = tokens.get(*pos).ok_or(ParseError::Eof)?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let (head, hoff) = tokens.get(*pos).ok_or(ParseError::Eof)?;
            *pos += 1;
            let prog = match head.as_str() {
                "succ" => Program::Succ(Box::new(parse_expr(tokens, pos)?)),
                "pred" => Program::Pred(Box::new(parse_expr(tokens, pos)?)),
                "fst" => Program::First(Box::new(parse_expr(tokens, pos)?)),
                "snd" => Program::Second(Box::new(parse_expr(tokens, pos)?)),
                "pair" => Program::Pair(
                    Box::new(parse_expr(tokens, pos)?),
                    Box::new(parse_expr(tokens, pos)?),
                ),
                "ifz" => Program::IfZero(
                    Box::new(parse_expr(tokens, pos)?),
                    Box::new(parse_expr(tokens, pos)?),
                    Box::new(parse_expr(tokens, pos)?),
                ),
                "comp" => Program::Compose(
                    Box::new(parse_expr(tokens, pos)?),
                    Box::new(parse_expr(tokens, pos)?),
                ),
                "loop" => Program::Loop(
                    Box::new(parse_expr(tokens, pos)?),
                    Box::new(parse_expr(tokens, pos)?),
                ),
                other => return Err(ParseError::Unexpected(other.to_string(), *hoff)),
            };
            match tokens.get(*pos) {
                Some((t, _)) if t == ")" => {
                    *pos += 1;
                    Ok(prog)
                }
                Some((_, o)) => Err(ParseError::Unbalanced(*o)),
                None => Err(ParseError::Eof),
            }
        }
        ")" => Err(ParseError::Unbalanced(*off)),
        "in" => Ok(Program::Input),
        digits => digits
            .parse::<BigUint>()
            .map(Program::Const)
            .map_err(|_| ParseError::Unexpected(digits.to_string(), *off)),
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Program::Const(n) => write!(f, "{n}"),
            Program::Input => write!(f, "in"),
            Program::Succ(a) => write!(f, "(succ {a})"),
            Program::Pred(a) => write!(f, "(pred {a})"),
            Program::Pair(a, b) => write!(f, "(pair {a} {b})"),
            Program::First(a) => write!(f, "(fst {a})"),
            Program::Second(a) => write!(f, "(snd {a})"),
            Program::IfZero(c, t, e) => write!(f, "(ifz {c} {t} {e})"),
            Program::Compose(o, i) => write!(f, "(comp {o} {i})"),
            Program::Loop(b, n) => write!(f, "(loop {b} {n})"),
        }
    }
}

/// Shared, immutable program handle used by morphism trackers.
pub type ProgramRef = Arc<Program>;

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> Nat {
        nat(x)
    }

    #[test]
    fn pair_at_origin() {
        assert_eq!(cantor_pair(&n(0), &n(0)), n(0));
    }

    #[test]
    fn pair_one_two() {
        // (1+2)(1+2+1)/2 + 2 = 6 + 2
        assert_eq!(cantor_pair(&n(1), &n(2)), n(8));
    }

    #[test]
    fn unpair_inverts_pair_up_to_ten_thousand() {
        for k in 0u64..=10_000 {
            let k = n(k);
            let (a, b) = cantor_unpair(&k);
            assert_eq!(cantor_pair(&a, &b), k);
        }
    }

    #[test]
    fn pair_strictly_monotone_in_each_argument() {
        for a in 0u64..20 {
            for b in 0u64..20 {
                assert!(cantor_pair(&n(a + 1), &n(b)) > cantor_pair(&n(a), &n(b)));
                assert!(cantor_pair(&n(a), &n(b + 1)) > cantor_pair(&n(a), &n(b)));
            }
        }
    }

    #[test]
    fn identity_program() {
        assert_eq!(eval(&Program::Input, &n(7), 8), EvalOutcome::Value(n(7)));
    }

    #[test]
    fn double_successor() {
        let p = Program::Input.succ().succ();
        assert_eq!(eval(&p, &n(0), 100), EvalOutcome::Value(n(2)));
    }

    #[test]
    fn countdown_loop_exhausts_then_succeeds() {
        // Decrement the input once per iteration, with fuel equal to the
        // input itself: input 10 reaches 0.
        let p = Program::Loop(
            Box::new(Program::Input.pred()),
            Box::new(Program::Input),
        );
        assert_eq!(eval(&p, &n(10), 5), EvalOutcome::Exhausted);
        assert_eq!(eval(&p, &n(10), 100), EvalOutcome::Value(n(0)));
    }

    #[test]
    fn empty_table_is_constant_zero() {
        let p = synthesize_table_tracker(&[]).unwrap();
        assert_eq!(eval(&p, &n(42), 10), EvalOutcome::Value(n(0)));
    }

    #[test]
    fn singleton_table() {
        let p = synthesize_table_tracker(&[(n(5), n(9))]).unwrap();
        assert_eq!(eval(&p, &n(5), table_budget(1)), EvalOutcome::Value(n(9)));
    }

    #[test]
    fn two_entry_table() {
        let p = synthesize_table_tracker(&[(n(0), n(1)), (n(3), n(0))]).unwrap();
        let b = table_budget(2);
        assert_eq!(eval(&p, &n(0), b), EvalOutcome::Value(n(1)));
        assert_eq!(eval(&p, &n(3), b), EvalOutcome::Value(n(0)));
    }

    #[test]
    fn table_rejects_conflicts() {
        let err = synthesize_table_tracker(&[(n(1), n(2)), (n(1), n(3))]).unwrap_err();
        assert!(matches!(err, TableError::Conflict { .. }));
    }

    #[test]
    fn table_with_huge_structured_keys() {
        // Keys shaped like the nested pair codes used by zigzag
        // realizers: far beyond any pred chain, but pair-decomposable.
        let mut big1 = n(7);
        let mut big2 = n(8);
        for _ in 0..8 {
            big1 = cantor_pair(&big1, &n(3));
            big2 = cantor_pair(&big2, &n(3));
        }
        assert!(big1 > n(u64::MAX));
        let io = vec![(big1.clone(), n(11)), (big2.clone(), n(22)), (n(4), n(33))];
        let p = synthesize_table_tracker(&io).unwrap();
        let b = table_budget(io.len());
        assert_eq!(eval(&p, &big1, b), EvalOutcome::Value(n(11)));
        assert_eq!(eval(&p, &big2, b), EvalOutcome::Value(n(22)));
        assert_eq!(eval(&p, &n(4), b), EvalOutcome::Value(n(33)));
    }

    #[test]
    fn budget_monotonicity_on_random_programs() {
        use rand::Rng;
        let mut rng = crate::fixtures::rng_from(29);
        for _ in 0..300 {
            let p = crate::fixtures::random_program(&mut rng, 4);
            let input = nat(rng.gen_range(0..50u64));
            let low = rng.gen_range(1..200u64);
            let high = low + rng.gen_range(1..500u64);
            if let EvalOutcome::Value(v) = eval(&p, &input, low) {
                assert_eq!(eval(&p, &input, high), EvalOutcome::Value(v));
            }
        }
    }

    #[test]
    fn parse_roundtrip_examples() {
        for src in [
            "in",
            "42",
            "(succ (succ in))",
            "(ifz (pred in) 1 (pair in 3))",
            "(comp (fst in) (loop (pred in) 2))",
            "(snd (pair 1 2))",
        ] {
            let p = parse_program(src).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_program(&printed).unwrap(), p);
        }
    }

    #[test]
    fn parse_errors_carry_location() {
        assert!(matches!(parse_program("(succ"), Err(ParseError::Eof)));
        assert!(matches!(
            parse_program("(bogus 1)"),
            Err(ParseError::Unexpected(_, _))
        ));
        assert!(matches!(parse_program(")"), Err(ParseError::Unbalanced(0))));
    }
}
