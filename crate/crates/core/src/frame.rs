//! Finite frames (complete Heyting algebras).
//!
//! Elements are dense small integers indexing precomputed tables, so every
//! lattice operation is a table lookup.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::{LawCheck, Report};

/// An element of a frame, valid only together with its owning frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u8);

impl Elem {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

/// A finite bounded lattice given by its order. Used for frames before the
/// distributivity check and for crisp orders that need not be distributive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    /// Builds the lattice of a partial order given as a row-major `leq`
    /// table. Fails if the table is not a partial order or some pair lacks a
    /// meet or join.
    pub fn from_order(names: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidParameter("a lattice needs at least one element".into()));
        }
        if n > 256 {
            return Err(Error::resource("lattice", format!("{n} elements exceed the 256-element table limit")));
        }
        if leq.len() != n * n {
            return Err(Error::InvalidParameter("order table is not square".into()));
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::InvalidParameter(format!("order is not reflexive at {}", names[a])));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::InvalidParameter(format!(
                        "order is not antisymmetric: {} and {}",
                        names[a], names[b]
                    )));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::InvalidParameter(format!(
                            "order is not transitive: {} <= {} <= {}",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut meet = vec![Elem(0); n * n];
        let mut join = vec![Elem(0); n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let glb = lower.iter().copied().find(|&c| lower.iter().all(|&d| le(d, c)));
                let upper: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                let lub = upper.iter().copied().find(|&c| upper.iter().all(|&d| le(c, d)));
                match (glb, lub) {
                    (Some(g), Some(l)) => {
                        meet[a * n + b] = Elem(g as u8);
                        join[a * n + b] = Elem(l as u8);
                    }
                    (None, _) => {
                        return Err(Error::NotALattice {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            missing: "meet",
                        })
                    }
                    (_, None) => {
                        return Err(Error::NotALattice {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            missing: "join",
                        })
                    }
                }
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| le(b, x)));
        let top = (0..n).find(|&t| (0..n).all(|x| le(x, t)));
        let (Some(bottom), Some(top)) = (bottom, top) else {
            return Err(Error::NotALattice { a: names[0].clone(), b: names[0].clone(), missing: "bound" });
        };
        Ok(FiniteLattice { names, leq, meet, join, bottom: Elem(bottom as u8), top: Elem(top as u8) })
    }

    /// Builds a lattice from cover pairs `a < b`. Identifiers are numbered by
    /// first appearance.
    pub fn from_covers(covers: &[(String, String)]) -> Result<Self> {
        let mut ids: Vec<String> = Vec::new();
        let mut pos: HashMap<String, usize> = HashMap::new();
        let mut intern = |s: &String, ids: &mut Vec<String>| -> usize {
            *pos.entry(s.clone()).or_insert_with(|| {
                ids.push(s.clone());
                ids.len() - 1
            })
        };
        let mut edges = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let ia = intern(a, &mut ids);
            let ib = intern(b, &mut ids);
            edges.push((ia, ib));
        }
        let n = ids.len();
        if n == 0 {
            return Err(Error::InvalidParameter("cover relation is empty".into()));
        }
        let mut reach = vec![false; n * n];
        for i in 0..n {
            reach[i * n + i] = true;
        }
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::InvalidParameter(format!("cover relation has a loop at {}", ids[a])));
            }
            reach[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i * n + k] {
                    for j in 0..n {
                        if reach[k * n + j] {
                            reach[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && reach[i * n + j] && reach[j * n + i] {
                    return Err(Error::InvalidParameter(format!(
                        "cover relation has a cycle through {} and {}",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        FiniteLattice::from_order(ids, reach)
    }

    /// Parses a line-oriented covers document: one `a < b` pair per line,
    /// blank lines and `#` comments ignored.
    pub fn parse_covers(text: &str) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                [a, "<", b] => out.push((a.to_string(), b.to_string())),
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        col: 1,
                        msg: format!("expected `a < b`, found `{line}`"),
                    })
                }
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.idx() * self.len() + b.idx()]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.idx() * self.len() + b.idx()]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.idx() * self.len() + b.idx()]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.len()).map(|i| Elem(i as u8))
    }

    /// First triple (in index order) violating `a∧(b∨c) = (a∧b)∨(a∧c)`.
    pub fn distributivity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// A finite complete Heyting algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    imp: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl Frame {
    /// The n-element chain `0 < c1 < ... < 1`.
    pub fn chain(n: usize) -> Result<Frame> {
        Frame::chain_capped(n, &Caps::default())
    }

    pub fn chain_capped(n: usize, caps: &Caps) -> Result<Frame> {
        if n == 0 {
            return Err(Error::InvalidParameter("a chain needs at least one element".into()));
        }
        if n > caps.frame_size {
            return Err(Error::resource("chain", format!("{n} elements exceed the frame cap {}", caps.frame_size)));
        }
        let names = (0..n)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == n - 1 => "1".to_string(),
                i => format!("c{i}"),
            })
            .collect();
        let e = |i: usize| Elem(i as u8);
        let mut leq = vec![false; n * n];
        let mut meet = vec![Elem(0); n * n];
        let mut join = vec![Elem(0); n * n];
        let mut imp = vec![Elem(0); n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = a <= b;
                meet[a * n + b] = e(a.min(b));
                join[a * n + b] = e(a.max(b));
                imp[a * n + b] = if a <= b { e(n - 1) } else { e(b) };
            }
        }
        Ok(Frame { names, leq, meet, join, imp, bottom: e(0), top: e(n - 1) })
    }

    /// All subsets of an n-element set ordered by inclusion. Element `i` is
    /// the subset with bitmask `i`.
    pub fn powerset(n: usize) -> Result<Frame> {
        Frame::powerset_capped(n, &Caps::default())
    }

    pub fn powerset_capped(n: usize, caps: &Caps) -> Result<Frame> {
        if n > caps.powerset_exponent {
            return Err(Error::resource("powerset", format!("exponent {n} exceeds the cap {}", caps.powerset_exponent)));
        }
        let size = 1usize << n;
        let full = size - 1;
        let names = (0..size)
            .map(|m| {
                let items: Vec<String> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        let e = |i: usize| Elem(i as u8);
        let mut leq = vec![false; size * size];
        let mut meet = vec![Elem(0); size * size];
        let mut join = vec![Elem(0); size * size];
        let mut imp = vec![Elem(0); size * size];
        for a in 0..size {
            for b in 0..size {
                leq[a * size + b] = a & !b == 0;
                meet[a * size + b] = e(a & b);
                join[a * size + b] = e(a | b);
                imp[a * size + b] = e((!a | b) & full);
            }
        }
        Ok(Frame { names, leq, meet, join, imp, bottom: e(0), top: e(full) })
    }

    /// Componentwise product; element `(i, j)` has index `i * |g| + j`.
    pub fn product(f: &Frame, g: &Frame) -> Result<Frame> {
        Frame::product_capped(f, g, &Caps::default())
    }

    pub fn product_capped(f: &Frame, g: &Frame, caps: &Caps) -> Result<Frame> {
        let (nf, ng) = (f.len(), g.len());
        let n = nf * ng;
        if n > caps.frame_size {
            return Err(Error::resource("product", format!("{nf}·{ng} elements exceed the frame cap {}", caps.frame_size)));
        }
        let pair = |i: usize| (Elem((i / ng) as u8), Elem((i % ng) as u8));
        let pack = |a: Elem, b: Elem| Elem((a.idx() * ng + b.idx()) as u8);
        let names = (0..n)
            .map(|i| {
                let (a, b) = pair(i);
                format!("({},{})", f.name(a), g.name(b))
            })
            .collect();
        let mut leq = vec![false; n * n];
        let mut meet = vec![Elem(0); n * n];
        let mut join = vec![Elem(0); n * n];
        let mut imp = vec![Elem(0); n * n];
        for i in 0..n {
            let (a1, b1) = pair(i);
            for j in 0..n {
                let (a2, b2) = pair(j);
                leq[i * n + j] = f.leq(a1, a2) && g.leq(b1, b2);
                meet[i * n + j] = pack(f.meet(a1, a2), g.meet(b1, b2));
                join[i * n + j] = pack(f.join(a1, a2), g.join(b1, b2));
                imp[i * n + j] = pack(f.imp(a1, a2), g.imp(b1, b2));
            }
        }
        let frame = Frame {
            names,
            leq,
            meet,
            join,
            imp,
            bottom: pack(f.bottom, g.bottom),
            top: pack(f.top, g.top),
        };
        frame.validate()?;
        Ok(frame)
    }

    /// Builds a frame from `a < b` cover pairs. The residuum is computed by
    /// exhaustive search `a->b = ⋁{c : a∧c <= b}`.
    pub fn from_cover_relation(covers: &[(String, String)]) -> Result<Frame> {
        Frame::from_lattice(FiniteLattice::from_covers(covers)?)
    }

    pub fn from_lattice(lat: FiniteLattice) -> Result<Frame> {
        if let Some((a, b, c)) = lat.distributivity_witness() {
            return Err(Error::NotDistributive {
                a: lat.names[a.idx()].clone(),
                b: lat.names[b.idx()].clone(),
                c: lat.names[c.idx()].clone(),
            });
        }
        let n = lat.len();
        let mut imp = vec![Elem(0); n * n];
        for a in lat.elements() {
            for b in lat.elements() {
                let r = lat
                    .elements()
                    .filter(|&c| lat.leq(lat.meet(a, c), b))
                    .fold(lat.bottom, |acc, c| lat.join(acc, c));
                imp[a.idx() * n + b.idx()] = r;
            }
        }
        let frame = Frame {
            names: lat.names,
            leq: lat.leq,
            meet: lat.meet,
            join: lat.join,
            imp,
            bottom: lat.bottom,
            top: lat.top,
        };
        frame.validate()?;
        Ok(frame)
    }

    /// Checks the structural invariants: lattice tables agree with the
    /// order, binary distributivity, and the meet/residuum adjunction.
    pub fn validate(&self) -> Result<()> {
        let report = check_frame_laws_with(self, &Caps::default(), 0);
        let first = report.failures().next().map(|e| {
            Error::Violation(format!("{} fails: {}", e.law, e.witness.clone().unwrap_or_default()))
        });
        first.map_or(Ok(()), Err)
    }

    /// A copy with one residuum cell replaced. The result is generally not a
    /// frame; it exists to test that the law checks notice.
    pub fn with_imp_override(&self, a: Elem, b: Elem, value: Elem) -> Frame {
        let mut out = self.clone();
        let n = out.len();
        out.imp[a.idx() * n + b.idx()] = value;
        out
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.idx()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(|i| Elem(i as u8))
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.idx() < self.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.len()).map(|i| Elem(i as u8))
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.idx() * self.names.len() + b.idx()]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.idx() * self.names.len() + b.idx()]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.idx() * self.names.len() + b.idx()]
    }

    /// The residuum `a -> b`.
    #[inline]
    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a.idx() * self.names.len() + b.idx()]
    }

    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `⋀s` or `⋁s`; the empty meet is top and the empty join is bottom.
    pub fn bound(&self, s: &[Elem], kind: BoundKind) -> Result<Elem> {
        if let Some(bad) = s.iter().find(|a| !self.contains(**a)) {
            return Err(Error::InvalidParameter(format!("{bad} is not an element of this frame")));
        }
        Ok(match kind {
            BoundKind::Meet => self.meet_all(s.iter().copied()),
            BoundKind::Join => self.join_all(s.iter().copied()),
        })
    }

    pub fn as_lattice(&self) -> FiniteLattice {
        FiniteLattice {
            names: self.names.clone(),
            leq: self.leq.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    /// True when this frame is (isomorphic to) the two-element chain.
    pub fn is_two_valued(&self) -> bool {
        self.len() == 2
    }
}

/// Order isomorphism by backtracking over bijections; for the small frames
/// used in tests. Order isomorphism determines the lattice operations and
/// the residuum.
pub fn is_isomorphic(f: &Frame, g: &Frame) -> bool {
    find_isomorphism(f, g).is_some()
}

pub fn find_isomorphism(f: &Frame, g: &Frame) -> Option<Vec<Elem>> {
    let n = f.len();
    if n != g.len() {
        return None;
    }
    let degree = |fr: &Frame, a: Elem| fr.elements().filter(|&b| fr.leq(b, a)).count();
    let mut map: Vec<Option<Elem>> = vec![None; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        f: &Frame,
        g: &Frame,
        map: &mut Vec<Option<Elem>>,
        used: &mut Vec<bool>,
        degree: &dyn Fn(&Frame, Elem) -> usize,
    ) -> bool {
        let n = f.len();
        if i == n {
            return true;
        }
        let a = Elem(i as u8);
        for j in 0..n {
            let b = Elem(j as u8);
            if used[j] || degree(f, a) != degree(g, b) {
                continue;
            }
            let consistent = (0..i).all(|k| {
                let ak = Elem(k as u8);
                let bk = map[k].expect("assigned");
                f.leq(a, ak) == g.leq(b, bk) && f.leq(ak, a) == g.leq(bk, b)
            });
            if consistent {
                map[i] = Some(b);
                used[j] = true;
                if go(i + 1, f, g, map, used, degree) {
                    return true;
                }
                used[j] = false;
                map[i] = None;
            }
        }
        false
    }
    if go(0, f, g, &mut map, &mut used, &degree) {
        Some(map.into_iter().map(|m| m.expect("complete")).collect())
    } else {
        None
    }
}

/// Seed of the random subsets used when exhaustive subset scans are capped.
pub const DEFAULT_LAW_SEED: u64 = 0x5eed_f00d;

/// Runs the full Heyting-law suite: lattice structure, the adjunction, the
/// infinite distributive law and the thirteen residuum laws.
pub fn check_frame_laws(f: &Frame) -> Report {
    check_frame_laws_with(f, &Caps::default(), DEFAULT_LAW_SEED)
}

pub fn check_frame_laws_with(f: &Frame, caps: &Caps, seed: u64) -> Report {
    let subject = format!("frame[{}]", f.len());
    let mut report = Report::new();
    let els: Vec<Elem> = f.elements().collect();
    let nm = |a: Elem| f.name(a).to_string();
    let one = f.top();

    let mut c = LawCheck::new("frame.partial_order", &subject);
    for &a in &els {
        c.check(f.leq(a, a), || format!("a={}", nm(a)));
        for &b in &els {
            c.check(a == b || !(f.leq(a, b) && f.leq(b, a)), || format!("a={}, b={}", nm(a), nm(b)));
            for &d in &els {
                c.check(!(f.leq(a, b) && f.leq(b, d)) || f.leq(a, d), || {
                    format!("a={}, b={}, c={}", nm(a), nm(b), nm(d))
                });
            }
        }
    }
    report.push(c.finish());

    let mut glb = LawCheck::new("frame.meet_is_glb", &subject);
    let mut lub = LawCheck::new("frame.join_is_lub", &subject);
    for &a in &els {
        for &b in &els {
            let m = f.meet(a, b);
            let ok = f.leq(m, a)
                && f.leq(m, b)
                && els.iter().all(|&d| !(f.leq(d, a) && f.leq(d, b)) || f.leq(d, m));
            glb.check(ok, || format!("a={}, b={}, meet={}", nm(a), nm(b), nm(m)));
            let j = f.join(a, b);
            let ok = f.leq(a, j)
                && f.leq(b, j)
                && els.iter().all(|&d| !(f.leq(a, d) && f.leq(b, d)) || f.leq(j, d));
            lub.check(ok, || format!("a={}, b={}, join={}", nm(a), nm(b), nm(j)));
        }
    }
    report.push(glb.finish());
    report.push(lub.finish());

    let mut c = LawCheck::new("frame.bounds", &subject);
    for &a in &els {
        c.check(f.leq(f.bottom(), a) && f.leq(a, one), || format!("a={}", nm(a)));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("heyting.adjunction", &subject);
    for &a in &els {
        for &b in &els {
            for &d in &els {
                c.check(f.leq(d, f.imp(a, b)) == f.leq(f.meet(a, d), b), || {
                    format!("a={}, b={}, c={}, a->b={}", nm(a), nm(b), nm(d), nm(f.imp(a, b)))
                });
            }
        }
    }
    report.push(c.finish());

    report.push(check_infinite_distributive(f, caps, seed, &subject));

    let mut c = LawCheck::new("heyting.imp_top_iff_leq", &subject);
    for &a in &els {
        for &b in &els {
            c.check((f.imp(a, b) == one) == f.leq(a, b), || format!("a={}, b={}", nm(a), nm(b)));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("heyting.top_imp", &subject);
    for &a in &els {
        c.check(f.imp(one, a) == a, || format!("a={}", nm(a)));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("heyting.modus_ponens", &subject);
    for &a in &els {
        for &b in &els {
            c.check(f.meet(a, f.imp(a, b)) == f.meet(a, b), || format!("a={}, b={}", nm(a), nm(b)));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("heyting.unit_counit", &subject);
    for &a in &els {
        for &b in &els {
            let ok = f.leq(b, f.imp(a, f.meet(a, b))) && f.leq(a, f.imp(f.imp(a, b), b));
            c.check(ok, || format!("a={}, b={}", nm(a), nm(b)));
        }
    }
    report.push(c.finish());

    let mut t5 = LawCheck::new("heyting.imp_transitive", &subject);
    let mut t10 = LawCheck::new("heyting.imp_covariant", &subject);
    let mut t11 = LawCheck::new("heyting.imp_contravariant", &subject);
    let mut t12 = LawCheck::new("heyting.currying", &subject);
    let mut t13 = LawCheck::new("heyting.meet_weakening", &subject);
    for &a in &els {
        for &b in &els {
            for &d in &els {
                let w = || format!("a={}, b={}, c={}", nm(a), nm(b), nm(d));
                t5.check(f.leq(f.meet(f.imp(a, b), f.imp(b, d)), f.imp(a, d)), w);
                t10.check(f.leq(f.imp(a, b), f.imp(f.imp(d, a), f.imp(d, b))), w);
                t11.check(f.leq(f.imp(b, a), f.imp(f.imp(a, d), f.imp(b, d))), w);
                let lhs = f.imp(a, f.imp(b, d));
                t12.check(lhs == f.imp(f.meet(a, b), d) && lhs == f.imp(b, f.imp(a, d)), w);
                t13.check(f.leq(f.imp(b, d), f.imp(f.meet(a, b), f.imp(a, d))), w);
            }
        }
    }
    for c in [t5, t10, t11, t12, t13] {
        report.push(c.finish());
    }

    report.push(check_join_antecedent(f, caps, seed, &subject));
    report.push(check_meet_consequent(f, caps, seed, &subject));
    report.push(check_pair_family_law(f, &subject, FamilyLaw::Meet));
    report.push(check_pair_family_law(f, &subject, FamilyLaw::Join));

    report.in_suite("frame")
}

/// Subsets of the carrier used by the subset-quantified laws: every subset
/// up to the configured size, otherwise all subsets of size <= 2 plus seeded
/// random ones.
fn law_subsets(f: &Frame, caps: &Caps, seed: u64) -> (Vec<Vec<Elem>>, bool) {
    let n = f.len();
    if n <= caps.exhaustive_subsets {
        let all = (0u32..(1 << n))
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| Elem(i as u8)).collect())
            .collect();
        return (all, true);
    }
    let mut out: Vec<Vec<Elem>> = vec![vec![]];
    for a in f.elements() {
        out.push(vec![a]);
        for b in f.elements().filter(|b| b.0 > a.0) {
            out.push(vec![a, b]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 {
        out.push(f.elements().filter(|_| rng.gen_bool(0.5)).collect());
    }
    (out, false)
}

fn render_set(f: &Frame, s: &[Elem]) -> String {
    let names: Vec<&str> = s.iter().map(|&a| f.name(a)).collect();
    format!("{{{}}}", names.join(","))
}

fn check_infinite_distributive(f: &Frame, caps: &Caps, seed: u64, subject: &str) -> crate::report::CheckEntry {
    let (subsets, exhaustive) = law_subsets(f, caps, seed);
    let mut c = LawCheck::new("heyting.infinite_distributive", subject);
    if !exhaustive {
        c.set_mode(crate::report::Mode::Sampled { samples: subsets.len() });
    }
    for s in &subsets {
        let sup = f.join_all(s.iter().copied());
        for a in f.elements() {
            let lhs = f.meet(a, sup);
            let rhs = f.join_all(s.iter().map(|&x| f.meet(a, x)));
            c.check(lhs == rhs, || format!("a={}, S={}", f.name(a), render_set(f, s)));
        }
    }
    c.finish()
}

fn check_join_antecedent(f: &Frame, caps: &Caps, seed: u64, subject: &str) -> crate::report::CheckEntry {
    let (subsets, exhaustive) = law_subsets(f, caps, seed);
    let mut c = LawCheck::new("heyting.join_antecedent", subject);
    if !exhaustive {
        c.set_mode(crate::report::Mode::Sampled { samples: subsets.len() });
    }
    for s in &subsets {
        let sup = f.join_all(s.iter().copied());
        for b in f.elements() {
            let rhs = f.meet_all(s.iter().map(|&a| f.imp(a, b)));
            c.check(f.imp(sup, b) == rhs, || format!("S={}, b={}", render_set(f, s), f.name(b)));
        }
    }
    c.finish()
}

fn check_meet_consequent(f: &Frame, caps: &Caps, seed: u64, subject: &str) -> crate::report::CheckEntry {
    let (subsets, exhaustive) = law_subsets(f, caps, seed);
    let mut c = LawCheck::new("heyting.meet_consequent", subject);
    if !exhaustive {
        c.set_mode(crate::report::Mode::Sampled { samples: subsets.len() });
    }
    for s in &subsets {
        let inf = f.meet_all(s.iter().copied());
        for a in f.elements() {
            let rhs = f.meet_all(s.iter().map(|&b| f.imp(a, b)));
            c.check(f.imp(a, inf) == rhs, || format!("a={}, S={}", f.name(a), render_set(f, s)));
        }
    }
    c.finish()
}

#[derive(Clone, Copy)]
enum FamilyLaw {
    Meet,
    Join,
}

/// Laws quantified over indexed families of pairs `(a_i, c_i)`. Both sides
/// only depend on the set of pairs, and only through the triple
/// `(agg a_i, agg c_i, ⋀ a_i->c_i)`. Sweeping the reachable triples while
/// adding pairs one at a time covers every subset of `L×L` exactly, in
/// polynomial time.
fn check_pair_family_law(f: &Frame, subject: &str, law: FamilyLaw) -> crate::report::CheckEntry {
    let n = f.len();
    let (id, agg_unit): (&str, Elem) = match law {
        FamilyLaw::Meet => ("heyting.meet_family", f.top()),
        FamilyLaw::Join => ("heyting.join_family", f.bottom()),
    };
    let agg = |x: Elem, y: Elem| match law {
        FamilyLaw::Meet => f.meet(x, y),
        FamilyLaw::Join => f.join(x, y),
    };
    let key = |a: Elem, c: Elem, r: Elem| (a.idx() * n + c.idx()) * n + r.idx();
    // witness family for each reachable state
    let mut reached: Vec<Option<Vec<(Elem, Elem)>>> = vec![None; n * n * n];
    reached[key(agg_unit, agg_unit, f.top())] = Some(vec![]);
    for a in f.elements() {
        for c in f.elements() {
            let snapshot: Vec<(usize, Vec<(Elem, Elem)>)> = reached
                .iter()
                .enumerate()
                .filter_map(|(k, w)| w.as_ref().map(|w| (k, w.clone())))
                .collect();
            for (k, fam) in snapshot {
                let (sa, sc, sr) = (Elem((k / (n * n)) as u8), Elem((k / n % n) as u8), Elem((k % n) as u8));
                let next = key(agg(sa, a), agg(sc, c), f.meet(sr, f.imp(a, c)));
                if reached[next].is_none() {
                    let mut fam = fam;
                    fam.push((a, c));
                    reached[next] = Some(fam);
                }
            }
        }
    }
    let mut check = LawCheck::new(id, subject);
    for (k, fam) in reached.iter().enumerate() {
        let Some(fam) = fam else { continue };
        let (sa, sc, sr) = (Elem((k / (n * n)) as u8), Elem((k / n % n) as u8), Elem((k % n) as u8));
        check.check(f.leq(sr, f.imp(sa, sc)), || {
            let pairs: Vec<String> = fam.iter().map(|&(a, c)| format!("({},{})", f.name(a), f.name(c))).collect();
            format!("family={{{}}}", pairs.join(","))
        });
    }
    check.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u8) -> Elem {
        Elem(i)
    }

    #[test]
    fn chain_two_is_boolean_pair() {
        let f = Frame::chain(2).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.bottom(), e(0));
        assert_eq!(f.top(), e(1));
        assert!(is_isomorphic(&f, &Frame::powerset(1).unwrap()));
    }

    #[test]
    fn chain_three_residuum() {
        let f = Frame::chain(3).unwrap();
        let (zero, mid, one) = (e(0), e(1), e(2));
        assert_eq!(f.imp(mid, zero), zero);
        assert_eq!(f.imp(zero, mid), one);
        assert_eq!(f.imp(one, mid), mid);
    }

    #[test]
    fn chain_zero_rejected() {
        assert!(matches!(Frame::chain(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn powerset_zero_is_degenerate() {
        let f = Frame::powerset(0).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.top(), f.bottom());
        assert!(check_frame_laws(&f).all_passed());
    }

    #[test]
    fn powerset_residuum_by_brute_force() {
        let f = Frame::powerset(2).unwrap();
        let (a, b) = (f.elem("{1}").unwrap(), f.elem("{2}").unwrap());
        // ⋁{c : a∧c <= b} over all four elements
        let brute = f.elements().filter(|&c| f.leq(f.meet(a, c), b)).fold(f.bottom(), |x, c| f.join(x, c));
        assert_eq!(brute, b);
        assert_eq!(f.imp(a, b), b);
    }

    #[test]
    fn powerset_above_cap_rejected() {
        assert!(Frame::powerset(5).unwrap_err().is_resource_limit());
    }

    #[test]
    fn powerset_residuum_is_boolean_implication() {
        for n in 0..=3 {
            let f = Frame::powerset(n).unwrap();
            let full = (1usize << n) - 1;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.imp(a, b).idx(), (!a.idx() | b.idx()) & full);
                }
            }
        }
    }

    #[test]
    fn product_identities() {
        let c2 = Frame::chain(2).unwrap();
        let c3 = Frame::chain(3).unwrap();
        let p = Frame::product(&c2, &c2).unwrap();
        assert!(is_isomorphic(&p, &Frame::powerset(2).unwrap()));
        let one = Frame::powerset(0).unwrap();
        assert!(is_isomorphic(&Frame::product(&c3, &one).unwrap(), &c3));
    }

    #[test]
    fn product_residuum_is_componentwise() {
        let c2 = Frame::chain(2).unwrap();
        let c3 = Frame::chain(3).unwrap();
        let p = Frame::product(&c2, &c3).unwrap();
        // brute-force adjunction in each component
        for (fr, k) in [(&c2, 2usize), (&c3, 3usize)] {
            let mut triples = 0;
            for a in fr.elements() {
                for b in fr.elements() {
                    for c in fr.elements() {
                        assert_eq!(fr.leq(c, fr.imp(a, b)), fr.leq(fr.meet(a, c), b));
                        triples += 1;
                    }
                }
            }
            assert_eq!(triples, k * k * k);
        }
        for i in p.elements() {
            for j in p.elements() {
                let (a1, b1) = (Elem(i.0 / 3), Elem(i.0 % 3));
                let (a2, b2) = (Elem(j.0 / 3), Elem(j.0 % 3));
                let want = Elem(c2.imp(a1, a2).0 * 3 + c3.imp(b1, b2).0);
                assert_eq!(p.imp(i, j), want);
            }
        }
    }

    #[test]
    fn product_cap() {
        let c4 = Frame::chain(4).unwrap();
        let c5 = Frame::chain(5).unwrap();
        assert!(Frame::product(&c4, &c5).unwrap_err().is_resource_limit());
    }

    fn covers(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn covers_reconstruct_chain_and_powerset() {
        let c3 = Frame::from_cover_relation(&covers(&[("0", "c1"), ("c1", "1")])).unwrap();
        assert_eq!(c3, Frame::chain(3).unwrap());
        let p2 = Frame::from_cover_relation(&covers(&[
            ("{}", "{1}"),
            ("{}", "{2}"),
            ("{1}", "{1,2}"),
            ("{2}", "{1,2}"),
        ]))
        .unwrap();
        assert_eq!(p2, Frame::powerset(2).unwrap());
    }

    #[test]
    fn diamond_m3_is_not_distributive() {
        let m3 = covers(&[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]);
        let lat = FiniteLattice::from_covers(&m3).unwrap();
        // exhaustive scan over all 125 triples
        let mut bad = 0;
        for a in lat.elements() {
            for b in lat.elements() {
                for c in lat.elements() {
                    if lat.meet(a, lat.join(b, c)) != lat.join(lat.meet(a, b), lat.meet(a, c)) {
                        bad += 1;
                    }
                }
            }
        }
        assert!(bad > 0);
        match Frame::from_cover_relation(&m3) {
            Err(Error::NotDistributive { a, b, c }) => {
                let idx = |s: &str| lat.names().iter().position(|n| n == s).unwrap() as u8;
                let (a, b, c) = (Elem(idx(&a)), Elem(idx(&b)), Elem(idx(&c)));
                assert_ne!(lat.meet(a, lat.join(b, c)), lat.join(lat.meet(a, b), lat.meet(a, c)));
            }
            other => panic!("expected a distributivity witness, got {other:?}"),
        }
    }

    #[test]
    fn covers_errors() {
        let two_tops = covers(&[("0", "a"), ("0", "b")]);
        assert!(matches!(Frame::from_cover_relation(&two_tops), Err(Error::NotALattice { .. })));
        let cyclic = covers(&[("a", "b"), ("b", "a")]);
        assert!(matches!(Frame::from_cover_relation(&cyclic), Err(Error::InvalidParameter(_))));
        assert!(FiniteLattice::parse_covers("a < b\nnonsense\n").is_err());
        assert_eq!(FiniteLattice::parse_covers("# hasse\na < b\n\n").unwrap().len(), 1);
    }

    #[test]
    fn bounds() {
        let c3 = Frame::chain(3).unwrap();
        assert_eq!(c3.bound(&[], BoundKind::Join).unwrap(), c3.bottom());
        assert_eq!(c3.bound(&[], BoundKind::Meet).unwrap(), c3.top());
        assert_eq!(c3.bound(&[e(0), e(1), e(2)], BoundKind::Meet).unwrap(), e(0));
        assert!(c3.bound(&[e(7)], BoundKind::Join).is_err());
        let p2 = Frame::powerset(2).unwrap();
        let s = [p2.elem("{1}").unwrap(), p2.elem("{2}").unwrap()];
        // set union oracle
        assert_eq!(p2.bound(&s, BoundKind::Join).unwrap().idx(), 0b01 | 0b10);
    }

    #[test]
    fn laws_hold_on_constructed_frames() {
        for f in [Frame::chain(3).unwrap(), Frame::powerset(3).unwrap()] {
            let r = check_frame_laws(&f);
            assert!(r.all_passed(), "{}", r.to_text(false));
            assert_eq!(r.entries.len(), 19);
        }
    }

    #[test]
    fn corrupted_residuum_fails_adjunction() {
        let f = Frame::chain(3).unwrap();
        let bad = f.with_imp_override(e(1), e(0), e(1));
        let r = check_frame_laws(&bad);
        let adj = r.entry("heyting.adjunction").unwrap();
        assert!(!adj.passed());
        assert!(adj.witness.as_deref().unwrap().contains("a=c1"));
    }

    #[test]
    fn family_sweep_finds_planted_violation() {
        // {1}∧{2} = {} while both {1}->{1} and {2}->{2} are top
        let f = Frame::powerset(2).unwrap().with_imp_override(e(0), e(0), e(0));
        let r = check_frame_laws(&f);
        let fam = r.entry("heyting.meet_family").unwrap();
        assert!(!fam.passed());
        assert!(fam.witness.is_some());
    }

    #[test]
    fn large_frame_uses_sampled_subsets() {
        let f = Frame::product(&Frame::chain(4).unwrap(), &Frame::chain(4).unwrap()).unwrap();
        let r = check_frame_laws(&f);
        assert!(r.all_passed());
        let e = r.entry("heyting.infinite_distributive").unwrap();
        assert!(matches!(e.mode, crate::report::Mode::Sampled { .. }));
    }
}
