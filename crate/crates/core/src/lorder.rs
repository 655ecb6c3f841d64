//! L-valued orders: axioms, cones, suprema and infima found by candidate
//! scan, completeness, directed L-subsets, ideals and dcpos.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::frame::{Elem, FiniteLattice, Frame};
use crate::lset::{self, all_lsubsets, sub, CarrierMap, LSubset};
use crate::report::{CheckEntry, LawCheck, Mode, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LOrder {
    frame: Arc<Frame>,
    names: Vec<String>,
    e: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSide {
    Sup,
    Inf,
}

/// A certified supremum or infimum. For a supremum `x` of `A` the
/// certificate holds `A(y) -> e(y,x)` for every `y` and
/// `A^u(z) -> e(x,z)` for every `z`; dually for infima. All entries are top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupWitness {
    pub element: usize,
    pub kind: BoundSide,
    pub bounds: Vec<Elem>,
    pub least: Vec<Elem>,
}

impl LOrder {
    pub fn new(frame: Arc<Frame>, names: Vec<String>, e: Vec<Elem>) -> Result<LOrder> {
        let o = LOrder::new_unchecked(frame, names, e)?;
        let report = o.check_axioms();
        let first = report
            .failures()
            .next()
            .map(|f| Error::InvalidParameter(format!("not an L-order: {} fails at {}", f.law, f.witness.clone().unwrap_or_default())));
        match first {
            Some(err) => Err(err),
            None => Ok(o),
        }
    }

    /// Shape-checked only; the order axioms are left to [`LOrder::check_axioms`].
    pub fn new_unchecked(frame: Arc<Frame>, names: Vec<String>, e: Vec<Elem>) -> Result<LOrder> {
        let n = names.len();
        if e.len() != n * n {
            return Err(Error::InvalidParameter(format!("order matrix has {} entries, expected {}", e.len(), n * n)));
        }
        if let Some(v) = e.iter().find(|v| !frame.contains(**v)) {
            return Err(Error::InvalidParameter(format!("order value {v} is not a frame element")));
        }
        Ok(LOrder { frame, names, e })
    }

    /// `(L, e_L)` with `e_L(a,b) = a -> b`.
    pub fn self_order(frame: Arc<Frame>) -> LOrder {
        let names = frame.names().to_vec();
        let e = frame.elements().flat_map(|a| frame.elements().map(move |b| (a, b))).map(|(a, b)| frame.imp(a, b)).collect();
        LOrder { frame, names, e }
    }

    /// `(L^X, sub)` for an `n`-point carrier.
    pub fn powerset_order(frame: Arc<Frame>, n: usize, caps: &Caps) -> Result<LOrder> {
        let all = all_lsubsets(&frame, n, caps)?;
        let pts = crate::ltop::point_names(n);
        let names = all.iter().map(|a| a.render(&frame, &pts)).collect();
        let e = all.iter().flat_map(|a| all.iter().map(move |b| (a, b))).map(|(a, b)| sub(&frame, a, b)).collect();
        Ok(LOrder { frame, names, e })
    }

    /// A crisp order over the two-element chain: `e(x,y) = 1` iff `x <= y`.
    pub fn crisp(frame: Arc<Frame>, names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<LOrder> {
        if frame.len() != 2 {
            return Err(Error::InvalidParameter("crisp orders live over the two-element chain".into()));
        }
        let n = names.len();
        let e = (0..n * n).map(|k| if leq(k / n, k % n) { frame.top() } else { frame.bottom() }).collect();
        LOrder::new(frame, names, e)
    }

    pub fn crisp_lattice(frame: Arc<Frame>, lat: &FiniteLattice) -> Result<LOrder> {
        let els: Vec<Elem> = lat.elements().collect();
        LOrder::crisp(frame, lat.names().to_vec(), |x, y| lat.leq(els[x], els[y]))
    }

    /// The crisp chain `0 < 1 < ... < n-1`.
    pub fn crisp_chain(frame: Arc<Frame>, n: usize) -> Result<LOrder> {
        LOrder::crisp(frame, (0..n).map(|i| i.to_string()).collect(), |x, y| x <= y)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn frame_arc(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn e(&self, x: usize, y: usize) -> Elem {
        self.e[x * self.names.len() + y]
    }

    pub fn matrix(&self) -> &[Elem] {
        &self.e
    }

    pub fn render(&self, a: &LSubset) -> String {
        a.render(&self.frame, &self.names)
    }

    pub fn check_axioms(&self) -> Report {
        let f = &*self.frame;
        let n = self.len();
        let subject = format!("order[{n}]");
        let mut report = Report::new();
        let mut c = LawCheck::new("order.reflexive", &subject);
        for x in 0..n {
            c.check(self.e(x, x) == f.top(), || format!("x={}", self.names[x]));
        }
        report.push(c.finish());
        let mut c = LawCheck::new("order.transitive", &subject);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    c.check(f.leq(f.meet(self.e(x, y), self.e(y, z)), self.e(x, z)), || {
                        format!("x={}, y={}, z={}", self.names[x], self.names[y], self.names[z])
                    });
                }
            }
        }
        report.push(c.finish());
        let mut c = LawCheck::new("order.antisymmetric", &subject);
        for x in 0..n {
            for y in 0..n {
                let both = self.e(x, y) == f.top() && self.e(y, x) == f.top();
                c.check(x == y || !both, || format!("x={}, y={}", self.names[x], self.names[y]));
            }
        }
        report.push(c.finish());
        report.in_suite("order")
    }

    fn check_len(&self, a: &LSubset) -> Result<()> {
        if a.len() != self.len() {
            return Err(Error::InvalidParameter(format!(
                "L-subset over {} points, order has {}",
                a.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// `↑x(y) = e(x,y)`.
    pub fn up(&self, x: usize) -> LSubset {
        LSubset((0..self.len()).map(|y| self.e(x, y)).collect())
    }

    /// `↓x(y) = e(y,x)`.
    pub fn down(&self, x: usize) -> LSubset {
        LSubset((0..self.len()).map(|y| self.e(y, x)).collect())
    }

    /// `A^l(x) = ⋀_y A(y) -> e(x,y)`.
    pub fn lower_cone(&self, a: &LSubset) -> LSubset {
        let f = &*self.frame;
        LSubset((0..self.len()).map(|x| f.meet_all((0..self.len()).map(|y| f.imp(a.get(y), self.e(x, y))))).collect())
    }

    /// `A^u(x) = ⋀_y A(y) -> e(y,x)`.
    pub fn upper_cone(&self, a: &LSubset) -> LSubset {
        let f = &*self.frame;
        LSubset((0..self.len()).map(|x| f.meet_all((0..self.len()).map(|y| f.imp(a.get(y), self.e(y, x))))).collect())
    }

    pub fn cones(&self, a: &LSubset) -> Result<(LSubset, LSubset)> {
        self.check_len(a)?;
        Ok((self.lower_cone(a), self.upper_cone(a)))
    }

    /// The supremum of `A`: the unique `x` with `e(x,·) = A^u`.
    pub fn sup_of(&self, a: &LSubset) -> Option<SupWitness> {
        self.bound_of(a, BoundSide::Sup)
    }

    /// The infimum of `A`: the unique `x` with `e(·,x) = A^l`.
    pub fn inf_of(&self, a: &LSubset) -> Option<SupWitness> {
        self.bound_of(a, BoundSide::Inf)
    }

    pub fn sup_index(&self, a: &LSubset) -> Option<usize> {
        let cone = self.upper_cone(a);
        (0..self.len()).find(|&x| (0..self.len()).all(|z| self.e(x, z) == cone.get(z)))
    }

    pub fn inf_index(&self, a: &LSubset) -> Option<usize> {
        let cone = self.lower_cone(a);
        (0..self.len()).find(|&x| (0..self.len()).all(|z| self.e(z, x) == cone.get(z)))
    }

    fn bound_of(&self, a: &LSubset, kind: BoundSide) -> Option<SupWitness> {
        let f = &*self.frame;
        let n = self.len();
        if a.len() != n {
            return None;
        }
        // below(y, x): y is below x on the side being bounded
        let below = |y: usize, x: usize| match kind {
            BoundSide::Sup => self.e(y, x),
            BoundSide::Inf => self.e(x, y),
        };
        let cone = match kind {
            BoundSide::Sup => self.upper_cone(a),
            BoundSide::Inf => self.lower_cone(a),
        };
        let mut found: Option<usize> = None;
        for x in 0..n {
            let bounds_ok = (0..n).all(|y| f.leq(a.get(y), below(y, x)));
            let least_ok = (0..n).all(|z| f.leq(cone.get(z), below(x, z)));
            if bounds_ok && least_ok {
                debug_assert!(found.is_none(), "two bounds would contradict antisymmetry");
                found.get_or_insert(x);
            }
        }
        let x = found?;
        let bounds = (0..n).map(|y| f.imp(a.get(y), below(y, x))).collect();
        let least = (0..n).map(|z| f.imp(cone.get(z), below(x, z))).collect();
        Some(SupWitness { element: x, kind, bounds, least })
    }

    pub fn is_lower_set(&self, s: &LSubset) -> bool {
        let f = &*self.frame;
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| f.leq(f.meet(s.get(x), self.e(y, x)), s.get(y))))
    }

    pub fn is_upper_set(&self, s: &LSubset) -> bool {
        let f = &*self.frame;
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| f.leq(f.meet(s.get(x), self.e(x, y)), s.get(y))))
    }

    fn directed_d1(&self, d: &LSubset) -> bool {
        self.frame.join_all(d.values().iter().copied()) == self.frame.top()
    }

    fn directed_d2(&self, d: &LSubset) -> bool {
        let f = &*self.frame;
        let n = self.len();
        for x in 0..n {
            for y in x..n {
                let lhs = f.meet(d.get(x), d.get(y));
                if lhs == f.bottom() {
                    continue;
                }
                let rhs = f.join_all((0..n).map(|z| f.meet(d.get(z), f.meet(self.e(x, z), self.e(y, z)))));
                if !f.leq(lhs, rhs) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_directed(&self, d: &LSubset) -> Result<bool> {
        self.check_len(d)?;
        Ok(self.directed_d1(d) && self.directed_d2(d))
    }

    pub fn is_ideal(&self, i: &LSubset) -> Result<bool> {
        self.check_len(i)?;
        Ok(self.is_lower_set(i) && self.directed_d1(i) && self.directed_d2(i))
    }

    pub fn all_lsubsets(&self, caps: &Caps) -> Result<Vec<LSubset>> {
        all_lsubsets(&self.frame, self.len(), caps)
    }

    pub fn directed_sets(&self, caps: &Caps) -> Result<Vec<LSubset>> {
        Ok(self.all_lsubsets(caps)?.into_iter().filter(|d| self.directed_d1(d) && self.directed_d2(d)).collect())
    }

    pub fn ideals(&self, caps: &Caps) -> Result<Vec<LSubset>> {
        Ok(self
            .all_lsubsets(caps)?
            .into_iter()
            .filter(|d| self.is_lower_set(d) && self.directed_d1(d) && self.directed_d2(d))
            .collect())
    }

    pub fn is_complete(&self, caps: &Caps) -> Result<bool> {
        Ok(self.all_lsubsets(caps)?.iter().all(|a| self.sup_index(a).is_some()))
    }

    pub fn is_complete_by_infima(&self, caps: &Caps) -> Result<bool> {
        Ok(self.all_lsubsets(caps)?.iter().all(|a| self.inf_index(a).is_some()))
    }

    pub fn is_dcpo(&self, caps: &Caps) -> Result<bool> {
        Ok(self.directed_sets(caps)?.iter().all(|d| self.sup_index(d).is_some()))
    }

    pub fn top(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&t| (0..n).all(|x| self.e(x, t) == self.frame.top()))
    }

    pub fn bottom(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&b| (0..n).all(|x| self.e(b, x) == self.frame.top()))
    }
}

/// Order-theoretic laws on one L-order: axioms, completeness both ways,
/// top/bottom, the sandwich property, the Yoneda identities, cone bounds and
/// the dcpo property.
pub fn check_order_laws(o: &LOrder, caps: &Caps) -> Report {
    let f = o.frame();
    let n = o.len();
    let subject = format!("order[{n}]");
    let mut report = o.check_axioms();
    let axioms_ok = report.all_passed();

    let mut c = LawCheck::new("order.yoneda_left", &subject);
    let mut d = LawCheck::new("order.yoneda_right", &subject);
    for x in 0..n {
        for y in 0..n {
            let l = f.meet_all((0..n).map(|z| f.imp(o.e(x, z), o.e(y, z))));
            c.check(l == o.e(y, x), || format!("x={}, y={}", o.names[x], o.names[y]));
            let r = f.meet_all((0..n).map(|z| f.imp(o.e(z, x), o.e(z, y))));
            d.check(r == o.e(x, y), || format!("x={}, y={}", o.names[x], o.names[y]));
        }
    }
    report.push(c.finish());
    report.push(d.finish());

    let mut c = LawCheck::new("order.sup_of_down", &subject);
    for x in 0..n {
        c.check(o.sup_index(&o.down(x)) == Some(x) && o.inf_index(&o.up(x)) == Some(x), || {
            format!("x={}", o.names[x])
        });
    }
    report.push(c.finish());

    let all = match o.all_lsubsets(caps) {
        Ok(all) => all,
        Err(e) => {
            for law in [
                "order.complete",
                "order.complete_by_infima",
                "order.top_bottom",
                "order.sandwich",
                "order.bounds_of_cones",
                "order.sup_via_upper_cone",
                "order.dcpo",
                "order.dcpo_by_ideals",
            ] {
                report.push(LawCheck::skipped(law, &subject, e.to_string()));
            }
            return report.in_suite("order");
        }
    };
    let sups: Vec<Option<usize>> = all.iter().map(|a| o.sup_index(a)).collect();
    let infs: Vec<Option<usize>> = all.iter().map(|a| o.inf_index(a)).collect();
    let complete = sups.iter().all(Option::is_some);
    let complete_inf = infs.iter().all(Option::is_some);

    let mut c = LawCheck::new("order.complete", &subject);
    let mut ci = LawCheck::new("order.complete_by_infima", &subject);
    for (a, s) in all.iter().zip(&sups) {
        c.check(s.is_some(), || format!("A={} has no supremum", o.render(a)));
    }
    for (a, s) in all.iter().zip(&infs) {
        ci.check(s.is_some(), || format!("A={} has no infimum", o.render(a)));
    }
    // completeness is a property of the instance, not a law every order obeys
    let (mut ce, mut cie) = (c.finish(), ci.finish());
    if !complete || !complete_inf {
        let agree = complete == complete_inf;
        let note = format!("instance is {}complete; sup- and inf-completeness {}", if complete { "" } else { "not " }, if agree { "agree" } else { "DISAGREE" });
        if agree {
            ce = LawCheck::skipped("order.complete", &subject, note.clone());
            cie = LawCheck::skipped("order.complete_by_infima", &subject, note);
        }
    }
    report.push(ce);
    report.push(cie);

    if complete && axioms_ok {
        let mut c = LawCheck::new("order.top_bottom", &subject);
        c.check(o.top().is_some() && o.bottom().is_some(), || "missing top or bottom".into());
        report.push(c.finish());

        let mut c = LawCheck::new("order.bounds_of_cones", &subject);
        let mut s = LawCheck::new("order.sup_via_upper_cone", &subject);
        for (i, a) in all.iter().enumerate() {
            let (sx, ix) = (sups[i].unwrap(), infs[i].unwrap_or(usize::MAX));
            if ix == usize::MAX {
                continue;
            }
            let bound = o.up(ix).meet(f, &o.down(sx));
            c.check(a.leq(f, &bound), || format!("A={}", o.render(a)));
            let via = o.inf_index(&o.upper_cone(a)) == Some(sx) && o.sup_index(&o.lower_cone(a)) == Some(ix);
            s.check(via, || format!("A={}", o.render(a)));
        }
        report.push(c.finish());
        report.push(s.finish());
    } else {
        for law in ["order.top_bottom", "order.bounds_of_cones", "order.sup_via_upper_cone"] {
            report.push(LawCheck::skipped(law, &subject, "order is not complete"));
        }
    }

    report.push(check_sandwich(o, &all, &sups, &subject));

    let directed: Vec<&LSubset> = all.iter().filter(|d| o.directed_d1(d) && o.directed_d2(d)).collect();
    let dcpo = directed.iter().all(|d| o.sup_index(d).is_some());
    let ideals_ok = directed.iter().filter(|d| o.is_lower_set(d)).all(|d| o.sup_index(d).is_some());
    let mut c = LawCheck::new("order.dcpo", &subject);
    for d in &directed {
        c.check(o.sup_index(d).is_some() || !complete, || format!("D={} has no supremum", o.render(d)));
    }
    let mut de = c.finish();
    let mut c = LawCheck::new("order.dcpo_by_ideals", &subject);
    c.check(dcpo == ideals_ok, || format!("directed-sup {dcpo} but ideal-sup {ideals_ok}"));
    let mut ie = c.finish();
    if !complete {
        de.note = Some(format!("instance is {}a dcpo", if dcpo { "" } else { "not " }));
        ie.note = de.note.clone();
    }
    report.push(de);
    report.push(ie);
    report.in_suite("order")
}

/// `A <= B <= C` with `⊔A = ⊔C = x` gives `⊔B = x`. All triples for small
/// L^X; otherwise every `A` with `C = ↓(⊔A)` and every `B` between them.
fn check_sandwich(o: &LOrder, all: &[LSubset], sups: &[Option<usize>], subject: &str) -> CheckEntry {
    let f = o.frame();
    let mut c = LawCheck::new("order.sandwich", subject);
    let witness = |a: &LSubset, b: &LSubset, cc: &LSubset| format!("A={}, B={}, C={}", o.render(a), o.render(b), o.render(cc));
    if all.len() <= 27 {
        for (i, a) in all.iter().enumerate() {
            let Some(x) = sups[i] else { continue };
            for (k, cc) in all.iter().enumerate() {
                if sups[k] != Some(x) || !a.leq(f, cc) {
                    continue;
                }
                for b in all {
                    if a.leq(f, b) && b.leq(f, cc) {
                        c.check(o.sup_index(b) == Some(x), || witness(a, b, cc));
                    }
                }
            }
        }
    } else {
        c.set_note("triples with C = down(sup A)");
        for (i, a) in all.iter().enumerate() {
            let Some(x) = sups[i] else { continue };
            let cc = o.down(x);
            for b in all {
                if a.leq(f, b) && b.leq(f, &cc) {
                    c.check(o.sup_index(b) == Some(x), || witness(a, b, &cc));
                }
            }
        }
    }
    c.finish()
}

/// On `(L, e_L)` the supremum of `A` is `⋁ a ∧ A(a)` and the infimum is
/// `⋀ A(a) -> a`.
pub fn check_self_sup_formula(frame: &Arc<Frame>, caps: &Caps) -> Result<CheckEntry> {
    let o = LOrder::self_order(frame.clone());
    let mut c = LawCheck::new("order.self_sup_formula", &format!("selfL[{}]", frame.len()));
    for a in o.all_lsubsets(caps)? {
        let s = lset::sup_in_frame(frame, &a)?;
        let i = lset::inf_in_frame(frame, &a)?;
        c.check(o.sup_index(&a) == Some(s.idx()) && o.inf_index(&a) == Some(i.idx()), || format!("A={}", o.render(&a)));
    }
    Ok(c.finish())
}

/// `sub` is an L-order on L^X, images and preimages are adjoint, and
/// suprema in `(L^X, sub)` follow the pointwise formula.
pub fn check_powerset_laws(frame: &Arc<Frame>, n: usize, caps: &Caps, seed: u64) -> Result<Report> {
    let subject = format!("L^X[{}^{}]", frame.len(), n);
    let mut report = Report::new();
    let o = LOrder::powerset_order(frame.clone(), n, caps)?;
    let mut c = LawCheck::new("lset.sub_is_order", &subject);
    for e in o.check_axioms().entries {
        c.check(e.passed(), || format!("{}: {}", e.law, e.witness.clone().unwrap_or_default()));
    }
    report.push(c.finish());

    let all = o.all_lsubsets_of_carrier(frame, n, caps)?;
    let mut c = LawCheck::new("lset.image_preimage_adjoint", &subject);
    for m in 0..=n {
        let Ok(targets) = lset::all_lsubsets(frame, m, caps) else { continue };
        for map in CarrierMap::all(n, m) {
            for a in &all {
                let img = lset::image(frame, &map, a)?;
                for b in &targets {
                    let ok = sub(frame, &img, b) == sub(frame, a, &lset::preimage(&map, b)?);
                    c.check(ok, || format!("f={:?}, A={:?}, B={:?}", map.graph, a, b));
                }
            }
        }
    }
    report.push(c.finish());

    // families are L-subsets of L^X, i.e. points of L^(L^X)
    let fam_len = all.len();
    let mut c = LawCheck::new("lset.powerset_sup_formula", &subject);
    let families: Vec<LSubset> = match Caps::checked_power(frame.len(), fam_len, caps.lsubset_space) {
        Some(total) => (0..total).map(|i| LSubset::from_index(i, fam_len, frame.len())).collect(),
        None => {
            let mut fams = Vec::new();
            for i in 0..fam_len {
                for a in frame.elements() {
                    let mut v = LSubset::constant(fam_len, frame.bottom());
                    v.0[i] = a;
                    fams.push(v);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..200 {
                fams.push(LSubset((0..fam_len).map(|_| Elem(rng.gen_range(0..frame.len()) as u8)).collect()));
            }
            c.set_mode(Mode::Sampled { samples: fams.len() });
            fams
        }
    };
    for fam in &families {
        let (sup, inf) = lset::powerset_sup_inf(frame, n, fam, caps)?;
        let ok = o.sup_index(fam).map(|i| &all[i]) == Some(&sup) && o.inf_index(fam).map(|i| &all[i]) == Some(&inf);
        c.check(ok, || format!("family={}", o.render(fam)));
    }
    report.push(c.finish());
    Ok(report.in_suite("order"))
}

impl LOrder {
    fn all_lsubsets_of_carrier(&self, frame: &Frame, n: usize, caps: &Caps) -> Result<Vec<LSubset>> {
        // the carrier of a powerset order is L^X itself, far below the order's own cap
        let relaxed = Caps { lsubset_space: caps.lsubset_space.max(self.len() as u64), ..caps.clone() };
        all_lsubsets(frame, n, &relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Arc<Frame> {
        Arc::new(Frame::chain(n).unwrap())
    }

    fn antichain2() -> LOrder {
        LOrder::crisp(chain(2), vec!["a".into(), "b".into()], |x, y| x == y).unwrap()
    }

    #[test]
    fn self_order_is_complete() {
        let caps = Caps { lsubset_space: 256, ..Caps::default() };
        for n in 2..=4 {
            let o = LOrder::self_order(chain(n));
            assert!(o.check_axioms().all_passed());
            assert!(o.is_complete(&caps).unwrap());
            assert!(o.is_complete_by_infima(&caps).unwrap());
        }
        let p = LOrder::self_order(Arc::new(Frame::powerset(2).unwrap()));
        assert!(p.is_complete(&caps).unwrap());
    }

    #[test]
    fn constant_top_order_breaks_antisymmetry() {
        let f = chain(2);
        let o = LOrder::new_unchecked(f.clone(), vec!["a".into(), "b".into()], vec![f.top(); 4]).unwrap();
        let r = o.check_axioms();
        assert!(!r.entry("order.antisymmetric").unwrap().passed());
        assert!(LOrder::new(f, vec!["a".into(), "b".into()], vec![Elem(1); 4]).is_err());
    }

    #[test]
    fn powerset_order_is_complete() {
        let caps = Caps::default();
        let o = LOrder::powerset_order(chain(2), 2, &caps).unwrap();
        assert_eq!(o.len(), 4);
        assert!(o.check_axioms().all_passed());
        assert!(o.is_complete(&caps).unwrap());
        let o3 = LOrder::powerset_order(chain(3), 2, &caps).unwrap();
        assert!(o3.check_axioms().all_passed());
        assert!(o3.is_complete(&caps).unwrap_err().is_resource_limit());
    }

    #[test]
    fn cones() {
        let f = chain(2);
        let o = LOrder::crisp_chain(f.clone(), 3).unwrap();
        for x in 0..3 {
            // classical: the upper bounds of the down-set of x form the up-set of x
            assert_eq!(o.upper_cone(&o.down(x)), o.up(x));
            assert_eq!(o.up(x).get(x), f.top());
        }
        let empty = LSubset::constant(3, f.bottom());
        assert_eq!(o.lower_cone(&empty), LSubset::constant(3, f.top()));
        assert!(o.cones(&LSubset::constant(2, f.top())).is_err());
    }

    #[test]
    fn sup_examples() {
        let f = chain(3);
        let o = LOrder::self_order(f.clone());
        for x in 0..3 {
            assert_eq!(o.sup_of(&o.down(x)).unwrap().element, x);
        }
        let a = LSubset(vec![Elem(2), Elem(2), Elem(0)]);
        let w = o.sup_of(&a).unwrap();
        assert_eq!(w.element, lset::sup_in_frame(&f, &a).unwrap().idx());
        assert!(w.bounds.iter().chain(&w.least).all(|&v| v == f.top()));
        let ac = antichain2();
        assert!(ac.sup_of(&LSubset::constant(2, Elem(1))).is_none());
    }

    #[test]
    fn self_sup_formula_on_small_frames() {
        assert!(check_self_sup_formula(&chain(4), &Caps::default()).unwrap_err().is_resource_limit());
        // every frame with at most five elements, up to isomorphism
        let big = Caps { lsubset_space: 3125, ..Caps::default() };
        let p2 = Arc::new(Frame::powerset(2).unwrap());
        let top_added: Vec<(String, String)> = [("0", "a"), ("0", "b"), ("a", "m"), ("b", "m"), ("m", "1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let diamond_top = Arc::new(Frame::from_cover_relation(&top_added).unwrap());
        let flipped: Vec<(String, String)> = [("0", "m"), ("m", "a"), ("m", "b"), ("a", "1"), ("b", "1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let diamond_bottom = Arc::new(Frame::from_cover_relation(&flipped).unwrap());
        for f in [chain(1), chain(2), chain(3), chain(4), chain(5), p2, diamond_top, diamond_bottom] {
            assert!(check_self_sup_formula(&f, &big).unwrap().passed());
        }
    }

    #[test]
    fn directed_and_ideals() {
        let caps = Caps::default();
        let o = LOrder::self_order(chain(3));
        for x in 0..3 {
            assert!(o.is_ideal(&o.down(x)).unwrap());
        }
        assert!(!o.is_directed(&LSubset::constant(3, Elem(0))).unwrap());
        let ac = antichain2();
        assert!(!ac.is_directed(&LSubset::constant(2, Elem(1))).unwrap());
        assert!(o.is_dcpo(&caps).unwrap());
        assert!(!o.ideals(&caps).unwrap().is_empty());
    }

    #[test]
    fn antichain_dcpo_cases() {
        let caps = Caps::default();
        let f = chain(2);
        // crisp directed sets of an antichain are singletons, each with a sup
        assert!(antichain2().is_dcpo(&caps).unwrap());
        assert!(!antichain2().is_complete(&caps).unwrap());
        let v = LOrder::crisp(f, vec!["bot".into(), "a".into(), "b".into()], |x, y| x == y || x == 0).unwrap();
        assert!(v.is_dcpo(&caps).unwrap());
        assert!(!v.is_complete(&caps).unwrap());
    }

    #[test]
    fn order_laws_on_instances() {
        let caps = Caps::default();
        let f2 = chain(2);
        let m3 = FiniteLattice::from_covers(
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        for o in [
            LOrder::self_order(chain(3)),
            LOrder::self_order(Arc::new(Frame::powerset(2).unwrap())),
            LOrder::crisp_chain(f2.clone(), 3).unwrap(),
            LOrder::crisp_lattice(f2.clone(), &m3).unwrap(),
            LOrder::powerset_order(f2.clone(), 2, &caps).unwrap(),
            antichain2(),
        ] {
            let r = check_order_laws(&o, &caps);
            assert!(r.all_passed(), "{}", r.to_text(false));
        }
    }

    #[test]
    fn powerset_laws() {
        let caps = Caps::default();
        let r = check_powerset_laws(&chain(2), 2, &caps, 1).unwrap();
        assert!(r.all_passed(), "{}", r.to_text(false));
        assert_eq!(r.entry("lset.powerset_sup_formula").unwrap().mode, Mode::Exhaustive);
        let r = check_powerset_laws(&chain(3), 2, &caps, 1).unwrap();
        assert!(r.all_passed(), "{}", r.to_text(false));
    }
}
