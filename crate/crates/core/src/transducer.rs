//! Deterministic sequential transducers on `{0,1}^ω`.
//!
//! Equivalence is decided on the onward normal form: every state is rescaled
//! so that its outputs share no common prefix, after which two machines are
//! equal iff their initial outputs agree and the reachable pairs of states
//! carry identical transitions.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::point::RationalPoint;

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub output: Vec<u8>,
    pub next: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    start: StateId,
    init: Vec<u8>,
    edges: Vec<[Edge; 2]>,
}

impl Transducer {
    /// Build a machine, rejecting dangling targets and stalling cycles.
    pub fn new(start: StateId, init: Vec<u8>, edges: Vec<[Edge; 2]>) -> Result<Transducer> {
        let n = edges.len();
        if start >= n || edges.iter().flatten().any(|e| e.next >= n) {
            return Err(Error::NoVertex("transducer state".into()));
        }
        if edges.iter().flatten().flat_map(|e| &e.output).chain(&init).any(|&b| b > 1) {
            return Err(Error::Parse { pos: 0, msg: "output bits must be 0 or 1".into() });
        }
        let t = Transducer { start, init, edges };
        if t.has_silent_cycle() {
            return Err(Error::Stalling);
        }
        Ok(t.trimmed())
    }

    /// The identity map.
    pub fn identity() -> Transducer {
        Transducer::prefix(&[])
    }

    /// `x ↦ w·x`.
    pub fn prefix(w: &[u8]) -> Transducer {
        Transducer {
            start: 0,
            init: w.to_vec(),
            edges: vec![[
                Edge { output: vec![0], next: 0 },
                Edge { output: vec![1], next: 0 },
            ]],
        }
    }

    pub fn states(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn initial_output(&self) -> &[u8] {
        &self.init
    }

    pub fn edge(&self, q: StateId, bit: u8) -> &Edge {
        &self.edges[q][bit as usize]
    }

    fn has_silent_cycle(&self) -> bool {
        // Kahn's algorithm on the subgraph of output-free transitions.
        let n = self.edges.len();
        let mut indeg = vec![0usize; n];
        for e in self.edges.iter().flatten() {
            if e.output.is_empty() {
                indeg[e.next] += 1;
            }
        }
        let mut queue: Vec<_> = (0..n).filter(|&q| indeg[q] == 0).collect();
        let mut seen = 0;
        while let Some(q) = queue.pop() {
            seen += 1;
            for e in &self.edges[q] {
                if e.output.is_empty() {
                    indeg[e.next] -= 1;
                    if indeg[e.next] == 0 {
                        queue.push(e.next);
                    }
                }
            }
        }
        seen < n
    }

    /// Drop unreachable states and renumber in BFS order.
    fn trimmed(self) -> Transducer {
        let mut index = HashMap::new();
        let mut order = vec![self.start];
        index.insert(self.start, 0);
        let mut i = 0;
        while i < order.len() {
            for e in &self.edges[order[i]] {
                if let std::collections::hash_map::Entry::Vacant(v) = index.entry(e.next) {
                    v.insert(order.len());
                    order.push(e.next);
                }
            }
            i += 1;
        }
        let edges = order
            .iter()
            .map(|&q| {
                self.edges[q].clone().map(|e| Edge { output: e.output, next: index[&e.next] })
            })
            .collect();
        Transducer { start: 0, init: self.init, edges }
    }

    /// Read a finite word from `q`.
    pub fn run(&self, q: StateId, input: &[u8]) -> (Vec<u8>, StateId) {
        let mut out = Vec::new();
        let mut q = q;
        for &b in input {
            let e = self.edge(q, b);
            out.extend_from_slice(&e.output);
            q = e.next;
        }
        (out, q)
    }

    /// Image of a finite prefix: the initial output followed by the outputs
    /// along the word.
    pub fn apply_word(&self, input: &[u8]) -> (Vec<u8>, StateId) {
        let (o, q) = self.run(self.start, input);
        let mut out = self.init.clone();
        out.extend(o);
        (out, q)
    }

    /// Exact image of an eventually periodic point.
    pub fn eval(&self, x: &RationalPoint) -> RationalPoint {
        let (pre, tail) = self.eval_from(self.start, x);
        let mut out = self.init.clone();
        out.extend(pre);
        RationalPoint::new(out, tail).expect("non-stalling machine has periodic output")
    }

    /// Output of state `q` on `x`, split into the preperiod and period of the
    /// resulting word (not normalised).
    fn eval_from(&self, q: StateId, x: &RationalPoint) -> (Vec<u8>, Vec<u8>) {
        let (mut out, mut q) = self.run(q, x.pre());
        let mut seen: HashMap<StateId, usize> = HashMap::new();
        let mut passes: Vec<Vec<u8>> = Vec::new();
        loop {
            if let Some(&i) = seen.get(&q) {
                for p in &passes[..i] {
                    out.extend_from_slice(p);
                }
                let period: Vec<u8> = passes[i..].concat();
                return (out, period);
            }
            seen.insert(q, passes.len());
            let (o, next) = self.run(q, x.period());
            passes.push(o);
            q = next;
        }
    }

    /// Output of state `q` on `x` as a point.
    pub fn eval_state(&self, q: StateId, x: &RationalPoint) -> RationalPoint {
        let (pre, per) = self.eval_from(q, x);
        RationalPoint::new(pre, per).expect("non-stalling machine has periodic output")
    }

    /// The machine for `then ∘ first`: `first` reads the input and its output
    /// feeds `then`.
    pub fn compose(first: &Transducer, then: &Transducer) -> Transducer {
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = Vec::new();
        let (init_tail, q0) = then.run(then.start, &first.init);
        let mut init = then.init.clone();
        init.extend(init_tail);
        let s0 = (first.start, q0);
        index.insert(s0, 0);
        pairs.push(s0);
        let mut edges: Vec<[Edge; 2]> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mk = |bit: u8, index: &mut HashMap<_, _>, pairs: &mut Vec<_>| {
                let e1 = first.edge(p, bit);
                let (o, q2) = then.run(q, &e1.output);
                let key = (e1.next, q2);
                let next = *index.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    pairs.len() - 1
                });
                Edge { output: o, next }
            };
            let e0 = mk(0, &mut index, &mut pairs);
            let e1 = mk(1, &mut index, &mut pairs);
            edges.push([e0, e1]);
            i += 1;
        }
        Transducer { start: 0, init, edges }
    }

    /// Compose a sequence; the first machine is applied first.
    pub fn compose_all<'a>(machines: impl IntoIterator<Item = &'a Transducer>) -> Transducer {
        machines
            .into_iter()
            .fold(Transducer::identity(), |acc, m| Transducer::compose(&acc, m))
    }

    pub fn onward(&self) -> Onward {
        Onward::of(self)
    }

    /// Decide equality as maps on `{0,1}^ω`, with a witness on inequality.
    pub fn equivalent(&self, other: &Transducer) -> Equivalence {
        let (a, b) = (self.onward(), other.onward());
        match Onward::first_difference(&a, &b) {
            None => Equivalence::Equal,
            Some(path) => Equivalence::Different { witness: find_witness(self, other, &path) },
        }
    }

    pub fn equal(&self, other: &Transducer) -> bool {
        Onward::first_difference(&self.onward(), &other.onward()).is_none()
    }

    /// `Some(v)` if the machine is `x ↦ v·x`.
    pub fn as_prefix_map(&self) -> Option<Vec<u8>> {
        let on = self.onward();
        match &on.init {
            Out::Const(_) => None,
            Out::Word(v, _) => Onward::first_difference(&on, &Transducer::prefix(v).onward())
                .is_none()
                .then(|| v.clone()),
        }
    }

    /// Whether `self` and `other` agree on some cone `e^m·𝔠` around `ē`.
    pub fn same_germ_at(&self, other: &Transducer, e: u8) -> bool {
        let (a, b) = (self.onward(), other.onward());
        let (mut sa, mut sb) = match (&a.init, &b.init) {
            (Out::Word(u, p), Out::Word(v, q)) => ((u.clone(), *p), (v.clone(), *q)),
            (Out::Const(x), Out::Const(y)) => return x == y,
            _ => return false,
        };
        let steps = a.edges.len() * b.edges.len() + 1;
        let mut memo = HashMap::new();
        for _ in 0..=steps {
            if sa.0 == sb.0 && Onward::states_equal(&a, &b, sa.1, sb.1, &mut memo) {
                return true;
            }
            let (ea, eb) = (&a.edges[sa.1][e as usize], &b.edges[sb.1][e as usize]);
            match (ea, eb) {
                (OEdge::Step(o1, n1), OEdge::Step(o2, n2)) => {
                    sa.0.extend_from_slice(o1);
                    sa.1 = *n1;
                    sb.0.extend_from_slice(o2);
                    sb.1 = *n2;
                }
                (OEdge::Const(x), OEdge::Const(y)) => {
                    return x.prepend(&sa.0) == y.prepend(&sb.0);
                }
                _ => return false,
            }
        }
        false
    }
}

/// Result of an equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// `witness` is a point on which the two machines differ, when one was
    /// found by the bounded search.
    Different { witness: Option<RationalPoint> },
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

/// Longest common prefix of all outputs of a state: finite, or the single
/// point a constant state produces.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Lcp {
    Word(Vec<u8>),
    Point(RationalPoint),
}

impl Lcp {
    fn len(&self) -> Option<usize> {
        match self {
            Lcp::Word(w) => Some(w.len()),
            Lcp::Point(_) => None,
        }
    }

    fn after(o: &[u8], l: &Lcp) -> Lcp {
        match l {
            Lcp::Word(w) => Lcp::Word([o, w].concat()),
            Lcp::Point(x) => Lcp::Point(x.prepend(o)),
        }
    }

    fn bit(&self, k: usize) -> Option<u8> {
        match self {
            Lcp::Word(w) => w.get(k).copied(),
            Lcp::Point(x) => Some(x.bit(k)),
        }
    }

    fn meet(x: &Lcp, y: &Lcp) -> Lcp {
        if let (Lcp::Point(p), Lcp::Point(q)) = (x, y) {
            if p == q {
                return x.clone();
            }
        }
        let mut w = Vec::new();
        for k in 0.. {
            match (x.bit(k), y.bit(k)) {
                (Some(a), Some(b)) if a == b => w.push(a),
                _ => break,
            }
        }
        Lcp::Word(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Out {
    Word(Vec<u8>, StateId),
    Const(RationalPoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum OEdge {
    Step(Vec<u8>, StateId),
    Const(RationalPoint),
}

/// Onward normal form of a transducer.
#[derive(Clone, Debug)]
pub struct Onward {
    init: Out,
    edges: Vec<[OEdge; 2]>,
}

impl Onward {
    fn of(t: &Transducer) -> Onward {
        let n = t.states();
        let zero = RationalPoint::zeros();
        let mut l: Vec<Lcp> = (0..n).map(|q| Lcp::Point(t.eval_state(q, &zero))).collect();
        loop {
            let mut changed = false;
            for q in 0..n {
                let e0 = t.edge(q, 0);
                let e1 = t.edge(q, 1);
                let m = Lcp::meet(&Lcp::after(&e0.output, &l[e0.next]), &Lcp::after(&e1.output, &l[e1.next]));
                if m != l[q] {
                    debug_assert!(match (m.len(), l[q].len()) {
                        (Some(a), Some(b)) => a < b,
                        (Some(_), None) => true,
                        _ => false,
                    });
                    l[q] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let edges = (0..n)
            .map(|q| {
                [0u8, 1].map(|b| {
                    let e = t.edge(q, b);
                    let full = Lcp::after(&e.output, &l[e.next]);
                    match (&l[q], full) {
                        (Lcp::Word(lq), Lcp::Word(w)) => OEdge::Step(w[lq.len()..].to_vec(), e.next),
                        (Lcp::Word(lq), Lcp::Point(x)) => OEdge::Const(x.shift(lq.len())),
                        // Edges out of constant states are never followed.
                        (Lcp::Point(_), _) => OEdge::Const(RationalPoint::zeros()),
                    }
                })
            })
            .collect();
        let init = match Lcp::after(&t.init, &l[t.start]) {
            Lcp::Word(w) => Out::Word(w, t.start),
            Lcp::Point(x) => Out::Const(x),
        };
        Onward { init, edges }
    }

    /// Shortest input path at which the two normal forms disagree.
    fn first_difference(a: &Onward, b: &Onward) -> Option<Vec<u8>> {
        let (p0, q0) = match (&a.init, &b.init) {
            (Out::Word(u, p), Out::Word(v, q)) if u == v => (*p, *q),
            (Out::Const(x), Out::Const(y)) if x == y => return None,
            _ => return Some(Vec::new()),
        };
        type Pair = (StateId, StateId);
        let mut parent: HashMap<Pair, Option<(Pair, u8)>> = HashMap::new();
        parent.insert((p0, q0), None);
        let mut queue = VecDeque::from([(p0, q0)]);
        let path_to = |mut s: (StateId, StateId), parent: &HashMap<_, Option<(_, u8)>>| {
            let mut path = Vec::new();
            while let Some(Some((prev, bit))) = parent.get(&s) {
                path.push(*bit);
                s = *prev;
            }
            path.reverse();
            path
        };
        while let Some((p, q)) = queue.pop_front() {
            for bit in [0u8, 1] {
                match (&a.edges[p][bit as usize], &b.edges[q][bit as usize]) {
                    (OEdge::Step(o1, n1), OEdge::Step(o2, n2)) if o1 == o2 => {
                        let key = (*n1, *n2);
                        if let std::collections::hash_map::Entry::Vacant(v) = parent.entry(key) {
                            v.insert(Some(((p, q), bit)));
                            queue.push_back(key);
                        }
                    }
                    (OEdge::Const(x), OEdge::Const(y)) if x == y => {}
                    _ => {
                        let mut path = path_to((p, q), &parent);
                        path.push(bit);
                        return Some(path);
                    }
                }
            }
        }
        None
    }

    fn states_equal(
        a: &Onward,
        b: &Onward,
        p: StateId,
        q: StateId,
        memo: &mut HashMap<(StateId, StateId), bool>,
    ) -> bool {
        if let Some(&r) = memo.get(&(p, q)) {
            return r;
        }
        let a2 = Onward { init: Out::Word(vec![], p), edges: a.edges.clone() };
        let b2 = Onward { init: Out::Word(vec![], q), edges: b.edges.clone() };
        let r = Onward::first_difference(&a2, &b2).is_none();
        memo.insert((p, q), r);
        r
    }
}

/// Search points `path·v·0̄`, `path·v·1̄` in order of `|v|` for one on which
/// the machines differ.
fn find_witness(s: &Transducer, t: &Transducer, path: &[u8]) -> Option<RationalPoint> {
    const MAX_EXTRA: usize = 14;
    for len in 0..=MAX_EXTRA {
        for code in 0..(1u32 << len) {
            let mut w = path.to_vec();
            w.extend((0..len).rev().map(|k| ((code >> k) & 1) as u8));
            for tail in [0u8, 1] {
                let x = RationalPoint::new(w.clone(), vec![tail]).expect("valid");
                if s.eval(&x) != t.eval(&x) {
                    return Some(x);
                }
            }
        }
    }
    None
}

/// Longest common prefix of two points, `None` if they are equal.
pub fn point_lcp(x: &RationalPoint, y: &RationalPoint) -> Option<Vec<u8>> {
    match Lcp::meet(&Lcp::Point(x.clone()), &Lcp::Point(y.clone())) {
        Lcp::Word(w) => Some(w),
        Lcp::Point(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> RationalPoint {
        RationalPoint::parse(s).unwrap()
    }

    /// Swap the first bit, copy the rest.
    fn flip_first() -> Transducer {
        Transducer::new(
            0,
            vec![],
            vec![
                [Edge { output: vec![1], next: 1 }, Edge { output: vec![0], next: 1 }],
                [Edge { output: vec![0], next: 1 }, Edge { output: vec![1], next: 1 }],
            ],
        )
        .unwrap()
    }

    #[test]
    fn stalling_rejected() {
        let r = Transducer::new(
            0,
            vec![],
            vec![[Edge { output: vec![], next: 0 }, Edge { output: vec![1], next: 0 }]],
        );
        assert_eq!(r, Err(Error::Stalling));
    }

    #[test]
    fn eval_prefix_and_flip() {
        assert_eq!(Transducer::prefix(&[0]).eval(&RationalPoint::ones()), pt("0(1)"));
        assert_eq!(flip_first().eval(&pt("0(10)")), pt("1(10)"));
    }

    #[test]
    fn identity_compose_is_neutral() {
        let f = flip_first();
        assert!(Transducer::compose(&Transducer::identity(), &f).equal(&f));
        assert!(Transducer::compose(&f, &f).equal(&Transducer::identity()));
    }

    #[test]
    fn prefix_detection() {
        let t = Transducer::compose(&Transducer::prefix(&[1, 0]), &Transducer::prefix(&[0]));
        assert_eq!(t.as_prefix_map(), Some(vec![0, 1, 0]));
        assert_eq!(flip_first().as_prefix_map(), None);
    }

    #[test]
    fn different_with_witness() {
        match Transducer::prefix(&[0]).equivalent(&Transducer::prefix(&[1])) {
            Equivalence::Different { witness: Some(x) } => {
                assert_ne!(Transducer::prefix(&[0]).eval(&x), Transducer::prefix(&[1]).eval(&x))
            }
            other => panic!("{other:?}"),
        }
        // differs only below 11
        let f = Transducer::compose(&Transducer::prefix(&[1, 1]), &flip_first());
        let g = Transducer::compose(&Transducer::prefix(&[1, 1]), &Transducer::identity());
        match f.equivalent(&g) {
            Equivalence::Different { witness: Some(x) } => assert_ne!(f.eval(&x), g.eval(&x)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn germ_at_end() {
        // the flip changes only the first bit, so it never agrees with the
        // identity near either endpoint
        assert!(!flip_first().same_germ_at(&Transducer::identity(), 0));
        assert!(Transducer::identity().same_germ_at(&Transducer::identity(), 1));
    }

    #[test]
    fn lcp_of_points() {
        assert_eq!(point_lcp(&pt("01(0)"), &pt("0(1)")), Some(vec![0, 1]));
        assert_eq!(point_lcp(&pt("(10)"), &pt("1(01)")), None);
    }
}
