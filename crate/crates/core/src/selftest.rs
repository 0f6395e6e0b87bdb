//! The acceptance suite as library code, shared by the test harness and the
//! command line.

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{local_action, Machines};
use crate::element::{free_generator, reduced_free_words, sigma_generator, FreeWord, GroupElement, IdentityCheck, TypeTag};
use crate::error::Result;
use crate::forest::{Colour, ColourWord, Side, Tree};
use crate::gamma::{abelian_invariants, GammaMinus, Syllable};
use crate::generators::Generator;
use crate::random;
use crate::render::{render, verify_piece, PiecewiseGraph};
use crate::skein::{grow_budget, SkeinContext};
use crate::transducer::Transducer;

pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

#[derive(Clone, Debug)]
pub struct Report {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {}: {} ({:.2?}) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed,
            self.detail
        )
    }
}

/// Accumulates failures; the first few are kept for the report.
#[derive(Default)]
struct Checks {
    total: usize,
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                let msg = what();
                self.check(false, || format!("{msg}: {e}"));
            }
        }
    }

    fn finish(self, id: u8, name: &'static str, start: Instant, limit: Option<Duration>, note: String) -> Report {
        let elapsed = start.elapsed();
        let slow = limit.is_some_and(|l| elapsed > l);
        let mut detail = format!("{} checks, {} failed", self.total, self.failures.len());
        if !note.is_empty() {
            detail.push_str("; ");
            detail.push_str(&note);
        }
        if slow {
            detail.push_str(&format!("; over the {:?} budget", limit.unwrap_or_default()));
        }
        for f in self.failures.iter().take(3) {
            detail.push_str("; ");
            detail.push_str(f);
        }
        Report { id, name, passed: self.failures.is_empty() && !slow, detail, elapsed }
    }
}

fn ctx(n: usize) -> SkeinContext {
    SkeinContext::new(n).expect("n ≥ 2")
}

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Consecutive pieces that exactly cover `[x0,x1] → [y0,y1]` with slope
/// `2^slope`.
fn covered(g: &PiecewiseGraph, x0: &BigRational, x1: &BigRational, y0: &BigRational, y1: &BigRational, slope: i64) -> bool {
    let Some(start) = g.pieces.iter().position(|p| &p.x0 == x0 && &p.y0 == y0) else {
        return false;
    };
    let mut at = (x0.clone(), y0.clone());
    for p in &g.pieces[start..] {
        if p.x0 != at.0 || p.y0 != at.1 || p.slope_log2 != slope {
            return false;
        }
        at = (p.x1.clone(), p.y1.clone());
        if &at.0 == x1 {
            return &at.1 == y1;
        }
    }
    false
}

pub fn criterion_1() -> Report {
    let start = Instant::now();
    let mut c = Checks::default();
    let g = crate::syntax::parse_element(ctx(3), "[b(I,I)|id|a(I,I)]").expect("literal");
    let expected = [
        (r(0, 1), r(1, 2), r(0, 1), r(1, 4), -1),
        (r(1, 2), r(5, 8), r(1, 4), r(1, 2), 1),
        (r(5, 8), r(3, 4), r(1, 2), r(3, 4), 1),
        (r(3, 4), r(7, 8), r(3, 4), r(13, 16), -1),
    ];
    for depth in [6, 8, 10] {
        let graph = match render(&g, depth) {
            Ok(graph) => graph,
            Err(e) => {
                c.check(false, || format!("render depth {depth}: {e}"));
                continue;
            }
        };
        for (x0, x1, y0, y1, s) in &expected {
            let hit = graph.pieces.iter().any(|p| (&p.x0, &p.x1, &p.y0, &p.y1, p.slope_log2) == (x0, x1, y0, y1, *s));
            c.check(hit, || format!("depth {depth}: missing piece [{x0},{x1}]→[{y0},{y1}]"));
        }
        // every piece left of 7/8 is one of the four
        let head: Vec<_> = graph.pieces.iter().filter(|p| p.x1 <= r(7, 8)).collect();
        c.check(head.len() == 4, || format!("depth {depth}: {} pieces in [0,7/8]", head.len()));
        for (a, b) in &graph.singular {
            c.check(*a >= r(7, 8) && *b <= r(1, 1), || format!("depth {depth}: singular [{a},{b}] outside [7/8,1]"));
        }
        if depth >= 8 {
            c.check(covered(&graph, &r(7, 8), &r(15, 16), &r(13, 16), &r(15, 16), 1), || {
                format!("depth {depth}: repetition [7/8,15/16]→[13/16,15/16] not found")
            });
        }
        for p in &graph.pieces {
            c.absorb(verify_piece(&g, p), || format!("depth {depth}: piece at {} fails evaluation", p.x0));
        }
    }
    c.finish(1, "graph reproduction", start, Some(Duration::from_secs(1)), String::new())
}

pub fn criterion_2(seed: u64) -> Report {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Checks::default();
    let mut samples = 0;
    for n in 3..=6 {
        let m = Machines::new(n).expect("n ≥ 2");
        let (a0, a1, b0, b1) = (m.get(Generator::A0), m.get(Generator::A1), m.get(Generator::B0), m.get(Generator::B1));
        let b1n = Transducer::compose_all(std::iter::repeat_n(b1, n));
        let a1a1 = Transducer::compose(a1, a1);
        let a0n = Transducer::compose_all(std::iter::repeat_n(a0, n - 1));
        let mut pairs: Vec<(String, Transducer, Transducer)> =
            vec![(format!("n={n} A1²=B1^n"), a1a1, b1n), (format!("n={n} B0=A0^(n-1)"), b0.clone(), a0n)];
        let (tau, rho) = (ctx(n).tau(), ctx(n).rho());
        for i in 1..=n + 1 {
            let lt = local_action(n, &tau, i).expect("leaf in range");
            let lr = local_action(n, &rho, i).expect("leaf in range");
            pairs.push((format!("n={n} β(τ,{i})=β(ρ,{i})"), lt, lr));
        }
        for (name, x, y) in &pairs {
            c.check(x.equal(y), || format!("{name} decided unequal"));
            for _ in 0..200 {
                let p = random::point(&mut rng, 8, 5);
                samples += 1;
                c.check(x.eval(&p) == y.eval(&p), || format!("{name} differs at {p}"));
            }
        }
        // direct evaluation of the generators against their machines
        for g in [Generator::A0, Generator::A1, Generator::B0, Generator::B1] {
            for _ in 0..50 {
                let p = random::point(&mut rng, 8, 5);
                c.check(m.get(g).eval(&p) == g.apply(n, &p), || format!("n={n} {g:?} machine disagrees at {p}"));
            }
        }
        // a known inequality is reported as such
        c.check(!a0.equal(a1), || format!("n={n} A0 decided equal to A1"));
    }
    c.finish(2, "transducer identities", start, Some(Duration::from_secs(5)), format!("{samples} sample points"))
}

pub fn criterion_3(seed: u64) -> Report {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Checks::default();
    for n in 3..=5 {
        let g = GroupElement::fraction(ctx(n), Tree::caret(Colour::B), Tree::caret(Colour::A)).expect("one caret");
        for k in 0..=2 * n as i64 {
            let v = g.pow(k).and_then(|x| x.abelianise());
            c.absorb(v.map(|v| v == k as usize % n), || format!("n={n} χ̄(g^{k})"));
        }
    }
    for i in 0..50 {
        let n = 3 + i % 3;
        let tag = if rng.gen_bool(0.5) { TypeTag::F } else { TypeTag::T };
        let x = random::element(&mut rng, ctx(n), tag, 5);
        let y = random::element(&mut rng, ctx(n), tag, 5);
        let v = x.commutator(&y).and_then(|k| k.abelianise());
        c.absorb(v.map(|v| v == 0), || format!("commutator of {x} and {y}"));
    }
    for i in 0..100 {
        let n = 3 + i % 3;
        let tag = if rng.gen_bool(0.5) { TypeTag::F } else { TypeTag::T };
        let x = random::element(&mut rng, ctx(n), tag, 5);
        let y = random::mutate(&mut rng, &x);
        let same = x.abelianise().and_then(|a| Ok(a == y.abelianise()?));
        c.absorb(same, || format!("mutation changed χ̄: {x} vs {y}"));
        c.absorb(x.equals(&y), || format!("mutation changed the element: {x} vs {y}"));
    }
    c.finish(3, "abelianisation", start, None, String::new())
}

fn coloured_left_vine(colours: &[Colour]) -> Tree {
    colours.iter().rev().fold(Tree::Leaf, |acc, &c| Tree::node(c, acc, Tree::Leaf))
}

/// A pair of trees sharing the spine built by `spine`, with different
/// random trees hung from the other leaves.
fn shared_spine<R: Rng>(rng: &mut R, minus: bool) -> (Tree, Tree) {
    let k = rng.gen_range(1..=4);
    let colours: Vec<Colour> = (0..k).map(|_| random::colour(rng)).collect();
    let spine = if minus { coloured_left_vine(&colours) } else { Tree::coloured_right_vine(&colours) };
    let total = rng.gen_range(0..=4);
    let hang = |rng: &mut R| {
        let sizes = random::composition(rng, total, k);
        let mut trees: Vec<Tree> = sizes.into_iter().map(|m| random::tree(rng, m, 0.5)).collect();
        if minus {
            trees.insert(0, Tree::Leaf);
        } else {
            trees.push(Tree::Leaf);
        }
        spine.graft(&trees).expect("k+1 leaves")
    };
    let t = hang(rng);
    let s = hang(rng);
    (t, s)
}

pub fn criterion_4(seed: u64) -> Report {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Checks::default();
    for n in 3..=5 {
        for s in [Colour::A, Colour::B] {
            let x = GroupElement::fraction(ctx(n), Tree::left_vine(2, s), Tree::right_vine(2, s)).expect("three leaves");
            let want = GammaMinus::from_colour_word(n, &ColourWord(vec![s]));
            c.absorb(x.c_bar_minus().map(|v| v == want), || format!("n={n} c̄⁻([λ₂({s})/ρ₂({s})])"));
            let y = sigma_generator(ctx(n), s);
            let want = crate::gamma::GammaPlus::from_colour_word(n, &ColourWord(vec![s]));
            c.absorb(y.c_bar_plus().map(|v| v == want), || format!("n={n} c̄⁺(σ({s}))"));
        }
    }
    // (trivial, non-trivial) counts per side
    let mut seen = [[0usize; 2]; 2];
    for i in 0..100 {
        let n = 3 + i % 3;
        let cx = ctx(n);
        let x = match i % 4 {
            0 => random::l_element(&mut rng, cx, 5),
            1 => random::l_element(&mut rng, cx, 4).iota_embed().expect("trivial permutation"),
            2 | 3 => {
                let (t, s) = shared_spine(&mut rng, i % 4 == 3);
                GroupElement::fraction(cx, t, s).expect("same leaf count")
            }
            _ => unreachable!(),
        };
        // a mutation keeps the element and changes the spines' words
        let x = if rng.gen_bool(0.3) { random::mutate(&mut rng, &x) } else { x };
        for (k, side) in [Side::Plus, Side::Minus].into_iter().enumerate() {
            let algebraic = match side {
                Side::Plus => x.c_bar_plus().map(|g| g.is_identity()),
                Side::Minus => x.c_bar_minus().map(|g| g.is_identity()),
            };
            let dynamic = x.acts_trivially_near_end(side);
            match (algebraic, dynamic) {
                (Ok(a), Ok(d)) => {
                    seen[k][usize::from(!a)] += 1;
                    c.check(a == d, || format!("{x}: c̄ trivial {a}, local action trivial {d} ({side:?})"));
                }
                (Err(e), _) | (_, Err(e)) => c.check(false, || format!("{x}: {e}")),
            }
        }
    }
    let both = seen.iter().all(|s| s[0] > 0 && s[1] > 0);
    c.check(both, || format!("a direction was never exercised: {seen:?}"));
    let note = format!("trivial/non-trivial seen: plus {:?}, minus {:?}", seen[0], seen[1]);
    c.finish(4, "germ quotients", start, None, note)
}

pub fn criterion_5() -> Report {
    let start = Instant::now();
    let mut c = Checks::default();
    let mut words = 0;
    for n in [3, 4] {
        let cx = ctx(n);
        for i in 1..n {
            let g = free_generator(cx, i).and_then(|g| g.c_bar_plus());
            let want = vec![Syllable::A, Syllable::B(i), Syllable::A, Syllable::B(n - i)];
            c.absorb(g.map(|g| g.free_product_image().syllables() == want.as_slice()), || {
                format!("n={n} c̄⁺ of generator {i}")
            });
        }
        let gens: Vec<(GroupElement, GroupElement)> = (1..n)
            .map(|i| {
                let g = free_generator(cx, i).expect("0 < i < n");
                let inv = g.inverse();
                (g, inv)
            })
            .collect();
        // words come in length-lexicographic order, so each prefix is
        // already computed
        let mut images: std::collections::HashMap<FreeWord, GroupElement> = Default::default();
        images.insert(vec![], GroupElement::identity(cx));
        for w in reduced_free_words(n, 4) {
            words += 1;
            let (&(i, inv), head) = w.split_last().expect("non-empty");
            let letter = if inv { &gens[i - 1].1 } else { &gens[i - 1].0 };
            let x = images[head].multiply(letter).map(|x| x.reduce());
            match x {
                Ok(x) => {
                    c.absorb(x.is_identity().map(|b| !b), || format!("n={n} word {w:?} is trivial"));
                    images.insert(w, x);
                }
                Err(e) => c.check(false, || format!("n={n} word {w:?}: {e}")),
            }
        }
    }
    c.finish(5, "free subgroup", start, Some(Duration::from_secs(300)), format!("{words} words"))
}

pub fn criterion_6(seed: u64) -> Report {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Checks::default();
    for i in 0..200 {
        let n = 3 + i % 3;
        let tag = random::tag(&mut rng);
        let g = random::element(&mut rng, ctx(n), tag, 5);
        let h = g.inverse();
        let left = g.multiply(&h).and_then(|x| x.is_identity());
        let right = h.multiply(&g).and_then(|x| x.is_identity());
        c.absorb(left.as_ref().map(|b| *b).map_err(Clone::clone), || format!("g·g⁻¹ for {g}"));
        c.absorb(right.map(|b| Ok(b) == left), || format!("g⁻¹·g disagrees with g·g⁻¹ for {g}"));
    }
    let (mut equal_pairs, mut witnessed) = (0, 0);
    for i in 0..200 {
        let n = 3 + i % 3;
        let tag = random::tag(&mut rng);
        let x = random::element(&mut rng, ctx(n), tag, 5);
        let y = if i % 2 == 0 { random::mutate(&mut rng, &x) } else { random::element(&mut rng, ctx(n), tag, 5) };
        let decided = match x.equals(&y) {
            Ok(d) => d,
            Err(e) => {
                c.check(false, || format!("equals({x}, {y}): {e}"));
                continue;
            }
        };
        let points: Vec<_> = (0..200).map(|_| random::point(&mut rng, 8, 5)).collect();
        let sampled_differ = points.iter().any(|p| x.act(p).ok() != y.act(p).ok());
        if decided {
            equal_pairs += 1;
            c.check(!sampled_differ, || format!("{x} = {y} decided but samples differ"));
        } else if !sampled_differ {
            // samples missed the difference, so insist on a concrete witness
            let w = x.multiply(&y.inverse()).and_then(|d| d.identity_check());
            let ok = match w {
                Ok(IdentityCheck::Moves(Some(p))) => {
                    witnessed += 1;
                    y.act(&p).and_then(|yp| Ok(x.act(&yp)? != y.act(&yp)?)).unwrap_or(false)
                        || x.multiply(&y.inverse()).and_then(|d| Ok(d.act(&p)? != p)).unwrap_or(false)
                }
                _ => false,
            };
            c.check(ok, || format!("{x} ≠ {y} decided without an observed difference"));
        }
    }
    let mut found = 0;
    let mut tries = 0;
    while found < 100 && tries < 5000 {
        tries += 1;
        let n = 3 + tries % 3;
        let tag = random::tag(&mut rng);
        let x = random::element(&mut rng, ctx(n), tag, 5);
        let sn = match x.seminormal_form() {
            Ok(sn) => sn.element,
            Err(e) => {
                c.check(false, || format!("seminormal_form({x}): {e}"));
                continue;
            }
        };
        if sn.numerator().count_colour(Colour::B) == 0 {
            continue;
        }
        found += 1;
        let ok = match sn.identity_check() {
            Ok(IdentityCheck::Moves(Some(p))) => sn.act(&p).map(|q| q != p).unwrap_or(false),
            _ => false,
        };
        c.check(ok, || format!("seminormal {sn} has no verified moved point"));
    }
    c.check(found == 100, || format!("only {found} seminormal forms with a b-vertex"));
    let note = format!("{equal_pairs} equal pairs, {witnessed} differences shown by witness only");
    c.finish(6, "word-problem soundness", start, None, note)
}

pub fn criterion_7(seed: u64) -> Report {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Checks::default();
    let mut longest = 0usize;
    for n in 3..=5 {
        let cx = ctx(n);
        for _ in 0..500 {
            let k = rng.gen_range(0..=10);
            let t = random::tree(&mut rng, k, 0.5);
            match cx.grow_to_a_tree(&t) {
                Ok(rw) => {
                    longest = longest.max(rw.trace.len());
                    c.check(rw.tree.is_a_tree(), || format!("n={n} grow_to_a_tree({t}) left a b"));
                    c.check(rw.trace.len() <= grow_budget(n, &t), || format!("n={n} {t}: over budget"));
                    c.check(rw.trace.replay(cx, &t).ok() == Some(rw.tree.clone()), || {
                        format!("n={n} trace of {t} does not replay")
                    });
                    c.check(rw.trace.growth(cx, &t).ok() == Some(rw.growth.clone()), || {
                        format!("n={n} growth of {t} disagrees with the trace")
                    });
                }
                Err(e) => c.check(false, || format!("n={n} grow_to_a_tree({t}): {e}")),
            }
            let s = random::tree(&mut rng, k, 0.5);
            let tag = random::tag(&mut rng);
            let pi = random::permutation(&mut rng, k + 1, tag);
            let x = GroupElement::new(cx, t.clone(), pi, s.clone(), tag).expect("same leaf count");
            match x.seminormal_form() {
                Ok(sn) => {
                    let e = &sn.element;
                    c.check(sn.numerator_trace.replay(cx, &t).ok().as_ref() == Some(e.numerator()), || {
                        format!("numerator trace of {x} does not replay")
                    });
                    c.check(sn.denominator_trace.replay(cx, &s).ok().as_ref() == Some(e.denominator()), || {
                        format!("denominator trace of {x} does not replay")
                    });
                    c.check(e.denominator().is_a_tree(), || format!("seminormal denominator of {x} has a b"));
                    let good = e.numerator().vine_words().iter().all(|w| cx.good_word_check(w));
                    c.check(good, || format!("seminormal numerator of {x} is not good"));
                    c.absorb(x.equals(e), || format!("seminormal form of {x} is a different element"));
                }
                Err(e) => c.check(false, || format!("seminormal_form({x}): {e}")),
            }
        }
    }
    c.finish(7, "rewriting certificates", start, None, format!("longest grow trace {longest}"))
}

pub fn criterion_8() -> Report {
    let start = Instant::now();
    let mut c = Checks::default();
    let mut invariants = Vec::new();
    for n in 3..=5 {
        let cx = ctx(n);
        // orders of the germs of σ(a), σ(b) at 0 modulo the centre
        let mut rows = Vec::new();
        for (k, s) in [Colour::A, Colour::B].into_iter().enumerate() {
            let germ = match sigma_generator(cx, s).germ_at_zero() {
                Ok((plus, _)) => plus,
                Err(e) => {
                    c.check(false, || format!("n={n} germ of σ({s}): {e}"));
                    continue;
                }
            };
            let unit = if k == 0 { (1, 0) } else { (0, 1) };
            c.check(germ.free_product_image().abelianise() == unit, || format!("n={n} σ({s}) is not a generator"));
            let order = (1..=2 * n).find(|&e| germ.pow(e as i64).free_product_image().is_identity());
            let mut row = vec![0; 2];
            row[k] = order.unwrap_or(0) as i64;
            rows.push(row);
        }
        let (factors, rank) = abelian_invariants(&rows, 2);
        let size: i64 = factors.iter().product();
        c.check(rank == 0 && size == 2 * n as i64, || format!("n={n}: invariants {factors:?}, rank {rank}"));
        c.check(factors == crate::gamma::quotient_invariants(n), || format!("n={n}: disagrees with the relation matrix"));
        invariants.push((n, factors));
    }
    for (i, (n, a)) in invariants.iter().enumerate() {
        for (m, b) in &invariants[i + 1..] {
            c.check(a != b, || format!("n={n} and n={m} share invariants {a:?}"));
        }
    }
    let note = invariants.iter().map(|(n, f)| format!("n={n}: {f:?}")).collect::<Vec<_>>().join(", ");
    c.finish(8, "distinguishing invariant", start, None, note)
}

pub fn run_all(seed: u64) -> Vec<Report> {
    vec![
        criterion_1(),
        criterion_2(seed),
        criterion_3(seed),
        criterion_4(seed),
        criterion_5(),
        criterion_6(seed),
        criterion_7(seed),
        criterion_8(),
    ]
}
