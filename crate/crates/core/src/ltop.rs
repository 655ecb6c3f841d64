//! Stratified L-valued topologies on finite carriers.

use std::collections::HashMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::frame::{Elem, Frame};
use crate::lorder::LOrder;
use crate::lset::{preimage, sub, CarrierMap, LSubset};
use crate::report::{LawCheck, Report};

#[derive(Clone, Debug)]
pub struct LTopSpace {
    frame: Arc<Frame>,
    points: Vec<String>,
    opens: Vec<LSubset>,
    index: HashMap<LSubset, usize>,
    base: Option<Vec<usize>>,
}

impl PartialEq for LTopSpace {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame && self.points == other.points && self.index.len() == other.index.len() && {
            self.opens.iter().all(|o| other.index.contains_key(o))
        }
    }
}

/// Adds `x` to the family unless present; returns its position.
fn intern(opens: &mut Vec<LSubset>, index: &mut HashMap<LSubset, usize>, x: LSubset) -> usize {
    if let Some(&i) = index.get(&x) {
        return i;
    }
    opens.push(x.clone());
    index.insert(x, opens.len() - 1);
    opens.len() - 1
}

fn family_cap(len: usize, caps: &Caps, stage: &str) -> Result<()> {
    if len > caps.family_size {
        return Err(Error::resource(
            stage.to_string(),
            format!("open family grew past {} members", caps.family_size),
        ));
    }
    Ok(())
}

/// Worklist closure of the family under a binary operation.
fn close_under(
    opens: &mut Vec<LSubset>,
    index: &mut HashMap<LSubset, usize>,
    caps: &Caps,
    stage: &str,
    op: impl Fn(&LSubset, &LSubset) -> LSubset,
) -> Result<bool> {
    let start = opens.len();
    let mut i = 0;
    let mut grew = false;
    while i < opens.len() {
        for j in 0..i {
            let c = op(&opens[i], &opens[j]);
            if !index.contains_key(&c) {
                intern(opens, index, c);
                grew = true;
                family_cap(opens.len(), caps, stage)?;
            }
        }
        i += 1;
    }
    let _ = start;
    Ok(grew)
}

impl LTopSpace {
    /// The smallest stratified L-topology containing the generators. The
    /// meet-closure of constants and generators is recorded as the base.
    pub fn generate(frame: Arc<Frame>, points: Vec<String>, generators: &[LSubset], caps: &Caps) -> Result<LTopSpace> {
        let n = points.len();
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::InvalidParameter(format!(
                "generator over {} points on a carrier of {n}",
                g.len()
            )));
        }
        if let Some(v) = generators.iter().flat_map(|g| g.values()).find(|v| !frame.contains(**v)) {
            return Err(Error::InvalidParameter(format!("generator value {v} is not a frame element")));
        }
        let mut opens = Vec::new();
        let mut index = HashMap::new();
        for a in frame.elements() {
            intern(&mut opens, &mut index, LSubset::constant(n, a));
        }
        for g in generators {
            intern(&mut opens, &mut index, g.clone());
        }
        let f = frame.clone();
        close_under(&mut opens, &mut index, caps, "topology meet-closure", |a, b| a.meet(&f, b))?;
        let base: Vec<usize> = (0..opens.len()).collect();
        loop {
            let j = close_under(&mut opens, &mut index, caps, "topology join-closure", |a, b| a.join(&f, b))?;
            let m = close_under(&mut opens, &mut index, caps, "topology meet-closure", |a, b| a.meet(&f, b))?;
            if !j && !m {
                break;
            }
        }
        Ok(LTopSpace { frame, points, opens, index, base: Some(base) })
    }

    /// Wraps an explicit family without checking the axioms; use
    /// [`check_topology`] to validate.
    pub fn from_opens_unchecked(frame: Arc<Frame>, points: Vec<String>, opens: Vec<LSubset>) -> LTopSpace {
        let mut out = Vec::new();
        let mut index = HashMap::new();
        for o in opens {
            intern(&mut out, &mut index, o);
        }
        LTopSpace { frame, points, opens: out, index, base: None }
    }

    /// Wraps an explicit family, rejecting it if it is not a stratified
    /// L-topology.
    pub fn from_opens(frame: Arc<Frame>, points: Vec<String>, opens: Vec<LSubset>) -> Result<LTopSpace> {
        let n = points.len();
        if opens.iter().any(|o| o.len() != n) {
            return Err(Error::InvalidParameter("open over the wrong carrier".into()));
        }
        let space = LTopSpace::from_opens_unchecked(frame, points, opens);
        let report = check_topology(&space);
        let first = report
            .failures()
            .next()
            .map(|e| Error::Violation(format!("{}: {}", e.law, e.witness.clone().unwrap_or_default())));
        match first {
            Some(e) => Err(e),
            None => Ok(space),
        }
    }

    /// Replaces the recorded base by the given open indices. The base
    /// property is not checked here.
    pub fn with_base(mut self, base: Vec<usize>) -> Result<LTopSpace> {
        if let Some(&b) = base.iter().find(|&&b| b >= self.opens.len()) {
            return Err(Error::InvalidParameter(format!("base index {b} out of range")));
        }
        self.base = Some(base);
        Ok(self)
    }

    pub fn without_base(mut self) -> LTopSpace {
        self.base = None;
        self
    }

    /// A copy with one open removed. The result is usually not a topology.
    pub fn without_open(&self, i: usize) -> LTopSpace {
        let opens = self.opens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| o.clone()).collect();
        LTopSpace::from_opens_unchecked(self.frame.clone(), self.points.clone(), opens)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn frame_arc(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn opens(&self) -> &[LSubset] {
        &self.opens
    }

    pub fn open_index(&self, a: &LSubset) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn is_open(&self, a: &LSubset) -> bool {
        self.index.contains_key(a)
    }

    pub fn base(&self) -> Option<&[usize]> {
        self.base.as_deref()
    }

    pub fn constant_index(&self, a: Elem) -> Option<usize> {
        self.open_index(&LSubset::constant(self.len(), a))
    }

    pub fn render(&self, a: &LSubset) -> String {
        a.render(&self.frame, &self.points)
    }

    pub fn is_t0(&self) -> bool {
        self.t0_witness().is_none()
    }

    /// First pair of distinct points no open separates.
    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                if self.opens.iter().all(|o| o.get(x) == o.get(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// `e(x,y) = ⋀_A A(x) -> A(y)`.
    pub fn specialization_value(&self, x: usize, y: usize) -> Elem {
        let f = &*self.frame;
        self.opens.iter().fold(f.top(), |acc, o| f.meet(acc, f.imp(o.get(x), o.get(y))))
    }

    pub fn specialization_order(&self) -> Result<LOrder> {
        if let Some((x, y)) = self.t0_witness() {
            return Err(Error::Precondition(format!(
                "space is not T0: points {} and {} are not separated",
                self.points[x], self.points[y]
            )));
        }
        let n = self.len();
        let e = (0..n * n).map(|k| self.specialization_value(k / n, k % n)).collect();
        LOrder::new(self.frame.clone(), self.points.clone(), e)
    }

    fn check_map(&self, map: &CarrierMap, target: &LTopSpace) -> Result<()> {
        if map.source_len() != self.len() || map.target_len != target.len() {
            return Err(Error::InvalidParameter("map carriers do not match the spaces".into()));
        }
        if self.frame != target.frame {
            return Err(Error::InvalidParameter("spaces are over different frames".into()));
        }
        Ok(())
    }

    /// Continuity of `map: self -> target`, testing preimages of base
    /// members when the target records a base.
    pub fn is_continuous(&self, map: &CarrierMap, target: &LTopSpace) -> Result<bool> {
        self.check_map(map, target)?;
        let tested: Box<dyn Iterator<Item = &LSubset>> = match target.base() {
            Some(b) => Box::new(b.iter().map(|&i| &target.opens[i])),
            None => Box::new(target.opens.iter()),
        };
        for b in tested {
            if !self.is_open(&preimage(map, b)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_continuous_via_opens(&self, map: &CarrierMap, target: &LTopSpace) -> Result<bool> {
        self.check_map(map, target)?;
        for b in &target.opens {
            if !self.is_open(&preimage(map, b)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every continuous map from this space to `target`.
    pub fn continuous_maps(&self, target: &LTopSpace) -> Result<Vec<CarrierMap>> {
        let mut out = Vec::new();
        for m in CarrierMap::all(self.len(), target.len()) {
            if self.is_continuous_via_opens(&m, target)? {
                out.push(m);
            }
        }
        Ok(out)
    }
}

/// The two-point space `{x, y}` whose only non-constant generator is the
/// characteristic map of `{y}`.
pub fn sierpinski(frame: Arc<Frame>, caps: &Caps) -> Result<LTopSpace> {
    let g = LSubset::characteristic(&frame, 2, &[1]);
    LTopSpace::generate(frame, vec!["x".into(), "y".into()], &[g], caps)
}

pub fn point_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// All of L^X, generated by the crisp singletons.
pub fn discrete(frame: Arc<Frame>, n: usize, caps: &Caps) -> Result<LTopSpace> {
    crate::lset::space_size(&frame, n, caps)?;
    let gens: Vec<LSubset> = (0..n).map(|i| LSubset::characteristic(&frame, n, &[i])).collect();
    LTopSpace::generate(frame, point_names(n), &gens, caps)
}

/// Constants only.
pub fn indiscrete(frame: Arc<Frame>, n: usize, caps: &Caps) -> Result<LTopSpace> {
    LTopSpace::generate(frame, point_names(n), &[], caps)
}

/// Axioms of a stratified L-topology, plus the base property when a base is
/// recorded.
pub fn check_topology(space: &LTopSpace) -> Report {
    let f = space.frame();
    let subject = format!("space[{} pts, {} opens]", space.len(), space.opens.len());
    let opens = &space.opens;
    let mut report = Report::new();

    let mut c = LawCheck::new("top.meet_closed", &subject);
    for (i, a) in opens.iter().enumerate() {
        for b in &opens[..=i] {
            c.check(space.is_open(&a.meet(f, b)), || format!("A={}, B={}", space.render(a), space.render(b)));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("top.join_closed", &subject);
    c.check(space.is_open(&LSubset::constant(space.len(), f.bottom())), || "empty join".into());
    for (i, a) in opens.iter().enumerate() {
        for b in &opens[..=i] {
            c.check(space.is_open(&a.join(f, b)), || format!("A={}, B={}", space.render(a), space.render(b)));
        }
    }
    if opens.len() <= 64 {
        for i in 0..opens.len() {
            for j in i + 1..opens.len() {
                let ab = opens[i].join(f, &opens[j]);
                for k in j + 1..opens.len() {
                    c.check(space.is_open(&ab.join(f, &opens[k])), || {
                        format!(
                            "A={}, B={}, C={}",
                            space.render(&opens[i]),
                            space.render(&opens[j]),
                            space.render(&opens[k])
                        )
                    });
                }
            }
        }
    }
    let all = opens.iter().fold(LSubset::constant(space.len(), f.bottom()), |acc, o| acc.join(f, o));
    c.check(space.is_open(&all), || "join of the whole family".into());
    report.push(c.finish());

    let mut c = LawCheck::new("top.constants", &subject);
    for a in f.elements() {
        c.check(space.constant_index(a).is_some(), || format!("a={}", f.name(a)));
    }
    report.push(c.finish());

    if space.base().is_some() {
        report.push(check_base_generates(space));
        report.extend(check_base_identity(space));
    }
    report.in_suite("topology")
}

/// Each open is the join of all `B ∧ a_X` below it, over base members `B`
/// and constants `a`.
pub fn check_base_generates(space: &LTopSpace) -> crate::report::CheckEntry {
    let f = space.frame();
    let subject = format!("space[{} pts, {} opens]", space.len(), space.opens.len());
    let mut c = LawCheck::new("top.base_generates", &subject);
    let Some(base) = space.base() else {
        return LawCheck::skipped("top.base_generates", &subject, "no base recorded");
    };
    for a in &space.opens {
        let mut acc = LSubset::constant(space.len(), f.bottom());
        for &b in base {
            for k in f.elements() {
                let piece = space.opens[b].scale(f, k);
                if piece.leq(f, a) {
                    acc = acc.join(f, &piece);
                }
            }
        }
        c.check(&acc == a, || format!("open {} is not generated", space.render(a)));
    }
    c.finish()
}

/// `A(x) = ⋁_{B in base} B(x) ∧ sub(B,A)` for every open `A` and point `x`.
pub fn check_base_identity(space: &LTopSpace) -> Report {
    let f = space.frame();
    let subject = format!("space[{} pts, {} opens]", space.len(), space.opens.len());
    let mut report = Report::new();
    let Some(base) = space.base() else {
        report.push(LawCheck::skipped("top.base_identity", &subject, "no base recorded"));
        return report.in_suite("topology");
    };
    let mut c = LawCheck::new("top.base_identity", &subject);
    for a in &space.opens {
        let subs: Vec<Elem> = base.iter().map(|&b| sub(f, &space.opens[b], a)).collect();
        for x in 0..space.len() {
            let rhs = f.join_all(base.iter().zip(&subs).map(|(&b, &s)| f.meet(space.opens[b].get(x), s)));
            c.check(rhs == a.get(x), || {
                format!("A={}, x={}, rhs={}", space.render(a), space.points[x], f.name(rhs))
            });
        }
    }
    report.push(c.finish());
    report.in_suite("topology")
}

/// T0, the specialization order axioms and closure idempotence.
pub fn check_specialization(space: &LTopSpace, caps: &Caps) -> Report {
    let subject = format!("space[{} pts, {} opens]", space.len(), space.opens.len());
    let mut report = Report::new();

    let mut c = LawCheck::new("top.idempotent", &subject);
    match LTopSpace::generate(space.frame.clone(), space.points.clone(), &space.opens, caps) {
        Ok(again) => {
            let same = again.opens.len() == space.opens.len() && again.opens.iter().all(|o| space.is_open(o));
            c.check(same, || format!("closure has {} opens, family has {}", again.opens.len(), space.opens.len()));
        }
        Err(e) => c.fail(format!("closure failed: {e}")),
    }
    report.push(c.finish());

    match space.t0_witness() {
        Some((x, y)) => {
            let why = format!("points {} and {} are not separated", space.points[x], space.points[y]);
            report.push(LawCheck::skipped("top.t0", &subject, why.clone()));
            report.push(LawCheck::skipped("top.specialization_order", &subject, why));
        }
        None => {
            let mut c = LawCheck::new("top.t0", &subject);
            c.check(true, String::new);
            report.push(c.finish());
            let mut c = LawCheck::new("top.specialization_order", &subject);
            match space.specialization_order() {
                Ok(o) => {
                    for e in o.check_axioms().entries {
                        c.check(e.passed(), || format!("{}: {}", e.law, e.witness.clone().unwrap_or_default()));
                    }
                }
                Err(e) => c.fail(e.to_string()),
            }
            report.push(c.finish());
        }
    }
    report.in_suite("topology")
}

/// Base-preimage continuity agrees with all-opens continuity for every map
/// between the two spaces.
pub fn check_continuity_criterion(x: &LTopSpace, y: &LTopSpace) -> Result<crate::report::CheckEntry> {
    let subject = format!("maps {}→{} pts", x.len(), y.len());
    let mut c = LawCheck::new("top.continuity_base_criterion", &subject);
    for m in CarrierMap::all(x.len(), y.len()) {
        let a = x.is_continuous(&m, y)?;
        let b = x.is_continuous_via_opens(&m, y)?;
        c.check(a == b, || format!("map {:?}", m.graph));
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Arc<Frame> {
        Arc::new(Frame::chain(n).unwrap())
    }

    #[test]
    fn constants_only_without_generators() {
        let f = chain(3);
        let s = indiscrete(f.clone(), 2, &Caps::default()).unwrap();
        assert_eq!(s.opens().len(), 3);
        assert!(s.opens().iter().all(LSubset::is_constant));
        assert!(!s.is_t0());
        assert!(indiscrete(f, 1, &Caps::default()).unwrap().is_t0());
    }

    #[test]
    fn sierpinski_over_two_chain_has_three_opens() {
        let s = sierpinski(chain(2), &Caps::default()).unwrap();
        // classical Sierpinski space: {}, {y}, {x,y}
        let mut got: Vec<Vec<u8>> = s.opens().iter().map(|o| o.values().iter().map(|e| e.0).collect()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert!(s.is_t0());
        let o = s.specialization_order().unwrap();
        assert_eq!(o.e(0, 1), Elem(1));
        assert_eq!(o.e(1, 0), Elem(0));
    }

    #[test]
    fn sierpinski_over_three_chain() {
        let s = sierpinski(chain(3), &Caps::default()).unwrap();
        // pairs (A(x), A(y)) with A(x) <= A(y)
        assert_eq!(s.opens().len(), 6);
        assert!(check_topology(&s).all_passed());
        assert!(check_specialization(&s, &Caps::default()).all_passed());
    }

    #[test]
    fn discrete_is_everything_and_a_fixpoint() {
        let f = chain(3);
        let s = discrete(f.clone(), 2, &Caps::default()).unwrap();
        assert_eq!(s.opens().len(), 9);
        let again = LTopSpace::generate(f, s.points().to_vec(), s.opens(), &Caps::default()).unwrap();
        assert_eq!(again, s);
        let o = s.specialization_order().unwrap();
        assert_eq!(o.e(0, 1), Elem(0));
        assert_eq!(o.e(1, 1), Elem(2));
    }

    #[test]
    fn axioms_hold_on_generated_spaces() {
        let caps = Caps::default();
        for f in [chain(2), chain(3), Arc::new(Frame::powerset(2).unwrap())] {
            for s in [
                sierpinski(f.clone(), &caps).unwrap(),
                discrete(f.clone(), 2, &caps).unwrap(),
                indiscrete(f.clone(), 3, &caps).unwrap(),
            ] {
                let r = check_topology(&s);
                assert!(r.all_passed(), "{}", r.to_text(false));
            }
        }
    }

    #[test]
    fn full_family_as_base() {
        let s = sierpinski(chain(3), &Caps::default()).unwrap();
        let all = (0..s.opens().len()).collect();
        let s = s.with_base(all).unwrap();
        assert!(check_base_identity(&s).all_passed());
    }

    #[test]
    fn shrunk_base_fails_identity() {
        let s = sierpinski(chain(2), &Caps::default()).unwrap();
        let y = s.open_index(&LSubset::characteristic(s.frame(), 2, &[1])).unwrap();
        let base: Vec<usize> = s.base().unwrap().iter().copied().filter(|&b| b != y).collect();
        let s = s.with_base(base).unwrap();
        let r = check_base_identity(&s);
        let e = r.entry("top.base_identity").unwrap();
        assert!(!e.passed());
        assert!(e.witness.as_deref().unwrap().contains("y: 1"));
    }

    #[test]
    fn continuity() {
        let caps = Caps::default();
        let f = chain(2);
        let s = sierpinski(f.clone(), &caps).unwrap();
        assert!(s.is_continuous(&CarrierMap::identity(2), &s).unwrap());
        for y in 0..2 {
            assert!(s.is_continuous(&CarrierMap::constant(2, 2, y), &s).unwrap());
        }
        let ind = indiscrete(f, 2, &caps).unwrap();
        assert!(!ind.is_continuous(&CarrierMap::identity(2), &s).unwrap());
        assert!(check_continuity_criterion(&s, &s).unwrap().passed());
        assert!(check_continuity_criterion(&ind, &s).unwrap().passed());
    }

    #[test]
    fn empty_carrier() {
        let s = indiscrete(chain(3), 0, &Caps::default()).unwrap();
        assert_eq!(s.opens().len(), 1);
        assert!(s.is_t0());
    }

    #[test]
    fn closure_cap() {
        let caps = Caps { family_size: 4, ..Caps::default() };
        let err = sierpinski(chain(3), &caps).unwrap_err();
        assert!(err.is_resource_limit());
    }
}
