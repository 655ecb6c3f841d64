//! The L-valued Scott topology, way-below and L-continuous lattices.

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::frame::Elem;
use crate::lorder::LOrder;
use crate::lset::{sub, LSubset};
use crate::ltop::{check_topology, LTopSpace};
use crate::report::{LawCheck, Report};

/// An L-order together with its directed L-subsets and ideals and their
/// suprema, enumerated once and shared by every Scott-side computation.
#[derive(Clone, Debug)]
pub struct ScottContext {
    order: LOrder,
    all: Vec<LSubset>,
    directed: Vec<(LSubset, usize)>,
    ideals: Vec<(LSubset, usize)>,
    complete: bool,
}

impl ScottContext {
    /// Fails with a precondition error unless every directed L-subset has a
    /// supremum.
    pub fn new(order: LOrder, caps: &Caps) -> Result<ScottContext> {
        let all = order.all_lsubsets(caps)?;
        let mut directed = Vec::new();
        let mut ideals = Vec::new();
        for d in &all {
            if !order.is_directed(d)? {
                continue;
            }
            let Some(s) = order.sup_index(d) else {
                return Err(Error::Precondition(format!(
                    "not an L-valued dcpo: directed {} has no supremum",
                    order.render(d)
                )));
            };
            if order.is_lower_set(d) {
                ideals.push((d.clone(), s));
            }
            directed.push((d.clone(), s));
        }
        let complete = all.iter().all(|a| order.sup_index(a).is_some());
        Ok(ScottContext { order, all, directed, ideals, complete })
    }

    pub fn order(&self) -> &LOrder {
        &self.order
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn all_lsubsets(&self) -> &[LSubset] {
        &self.all
    }

    pub fn ideals(&self) -> &[(LSubset, usize)] {
        &self.ideals
    }

    pub fn directed(&self) -> &[(LSubset, usize)] {
        &self.directed
    }

    /// `⊔ A^→(D) = ⋁_x D(x) ∧ A(x)` in `(L, e_L)`.
    fn image_sup(&self, a: &LSubset, d: &LSubset) -> Elem {
        let f = self.order.frame();
        f.join_all((0..a.len()).map(|x| f.meet(d.get(x), a.get(x))))
    }

    /// The four Scott-openness conditions: equality along directed sets,
    /// equality along ideals, and the two upper-set variants with `<=`.
    pub fn scott_conditions(&self, a: &LSubset) -> [bool; 4] {
        let f = self.order.frame();
        let eq = |fam: &[(LSubset, usize)]| fam.iter().all(|(d, s)| a.get(*s) == self.image_sup(a, d));
        let le = |fam: &[(LSubset, usize)]| fam.iter().all(|(d, s)| f.leq(a.get(*s), self.image_sup(a, d)));
        let upper = self.order.is_upper_set(a);
        [eq(&self.directed), eq(&self.ideals), upper && le(&self.directed), upper && le(&self.ideals)]
    }

    pub fn is_scott_open(&self, a: &LSubset) -> bool {
        self.scott_conditions(a)[0]
    }

    /// Scott opens in canonical L^X order, with the `⇑x` base attached when
    /// the order is an L-continuous lattice and every `⇑x` is Scott open.
    pub fn scott_topology(&self) -> LTopSpace {
        let opens: Vec<LSubset> = self.all.iter().filter(|a| self.is_scott_open(a)).cloned().collect();
        let space = LTopSpace::from_opens_unchecked(self.order.frame_arc().clone(), self.order.names().to_vec(), opens);
        if self.complete && self.continuity_holds() {
            let wb = self.way_below();
            let base: Option<Vec<usize>> = (0..self.order.len()).map(|x| space.open_index(&wb.upper(x))).collect();
            if let Some(base) = base {
                let mut dedup = base;
                dedup.sort_unstable();
                dedup.dedup();
                return space.with_base(dedup).expect("indices come from the space");
            }
        }
        space
    }

    /// `⇓x(y) = ⋀_I e(x, ⊔I) -> I(y)` over all ideals.
    pub fn way_below(&self) -> WayBelowTable {
        let f = self.order.frame();
        let n = self.order.len();
        let mut table = vec![f.top(); n * n];
        for x in 0..n {
            for (i, s) in &self.ideals {
                let ex = self.order.e(x, *s);
                for y in 0..n {
                    table[x * n + y] = f.meet(table[x * n + y], f.imp(ex, i.get(y)));
                }
            }
        }
        WayBelowTable { n, table }
    }

    fn continuity_holds(&self) -> bool {
        let wb = self.way_below();
        (0..self.order.len()).all(|x| self.order.sup_index(&wb.down(x)) == Some(x))
    }

    /// `⊔⇓x = x` for every `x`. Requires completeness.
    pub fn is_continuous_lattice(&self) -> Result<bool> {
        if !self.complete {
            return Err(Error::Precondition("the order is not complete".into()));
        }
        Ok(self.continuity_holds())
    }
}

/// Entry `(x, y)` holds `⇓x(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WayBelowTable {
    n: usize,
    table: Vec<Elem>,
}

impl WayBelowTable {
    pub fn from_table(n: usize, table: Vec<Elem>) -> WayBelowTable {
        assert_eq!(table.len(), n * n);
        WayBelowTable { n, table }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `⇓x(y)`.
    #[inline]
    pub fn wb(&self, x: usize, y: usize) -> Elem {
        self.table[x * self.n + y]
    }

    /// `⇓x` as an L-subset.
    pub fn down(&self, x: usize) -> LSubset {
        LSubset((0..self.n).map(|y| self.wb(x, y)).collect())
    }

    /// `⇑x(y) = ⇓y(x)`.
    pub fn upper(&self, x: usize) -> LSubset {
        LSubset((0..self.n).map(|y| self.wb(y, x)).collect())
    }

    pub fn with_entry(&self, x: usize, y: usize, v: Elem) -> WayBelowTable {
        let mut t = self.clone();
        t.table[x * self.n + y] = v;
        t
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }
}

/// Scott topology and way-below laws. Laws that presuppose an L-continuous
/// lattice are skipped, with a note, on other instances.
pub fn check_scott_props(ctx: &ScottContext) -> Report {
    let wb = ctx.way_below();
    check_scott_props_with(ctx, &wb, None)
}

/// As [`check_scott_props`] with an explicit way-below table and, when
/// given, an explicit base for the Scott topology.
pub fn check_scott_props_with(ctx: &ScottContext, wb: &WayBelowTable, base: Option<&[LSubset]>) -> Report {
    let o = ctx.order();
    let f = o.frame();
    let n = o.len();
    let subject = format!("scott[{n}]");
    let name = |x: usize| o.names()[x].as_str();
    let mut report = Report::new();

    let mut c = LawCheck::new("scott.conditions_agree", &subject);
    for a in ctx.all_lsubsets() {
        let k = ctx.scott_conditions(a);
        c.check(k.iter().all(|&b| b == k[0]), || format!("A={}, conditions={k:?}", o.render(a)));
    }
    report.push(c.finish());

    let sigma = ctx.scott_topology();
    let mut c = LawCheck::new("scott.topology", &subject);
    for e in check_topology(&sigma.clone().without_base()).entries {
        c.check(e.passed(), || format!("{}: {}", e.law, e.witness.clone().unwrap_or_default()));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("scott.waybelow_below", &subject);
    for x in 0..n {
        for y in 0..n {
            c.check(f.leq(wb.wb(x, y), o.e(y, x)), || format!("x={}, y={}", name(x), name(y)));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("scott.waybelow_stable", &subject);
    for x in 0..n {
        for y in 0..n {
            let w = wb.wb(x, y);
            if w == f.bottom() {
                continue;
            }
            for x1 in 0..n {
                let exx = f.meet(w, o.e(x, x1));
                for y1 in 0..n {
                    let lhs = f.meet(o.e(y1, y), exx);
                    c.check(f.leq(lhs, wb.wb(x1, y1)), || {
                        format!("x={}, y={}, x1={}, y1={}", name(x), name(y), name(x1), name(y1))
                    });
                }
            }
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("scott.waybelow_in_ideal", &subject);
    let mut d = LawCheck::new("scott.waybelow_sup_in_ideal", &subject);
    for (i, s) in ctx.ideals() {
        for x in 0..n {
            // x = ⊔I
            if o.e(x, *s) == f.top() && o.e(*s, x) == f.top() {
                c.check(wb.down(x).leq(f, i), || format!("x={}, I={}", name(x), o.render(i)));
            }
            d.check(f.leq(wb.wb(*s, x), i.get(x)), || format!("I={}, x={}", o.render(i), name(x)));
        }
    }
    report.push(c.finish());
    report.push(d.finish());

    if !ctx.is_complete() {
        for law in ["scott.continuous_lattice", "scott.interpolation", "scott.upper_waybelow_base", "scott.t0"] {
            report.push(LawCheck::skipped(law, &subject, "order is not complete"));
        }
        return report.in_suite("scott");
    }
    let continuous = (0..n).all(|x| o.sup_index(&wb.down(x)) == Some(x));
    if !continuous {
        let x = (0..n).find(|&x| o.sup_index(&wb.down(x)) != Some(x)).unwrap_or(0);
        let why = format!("not an L-continuous lattice: sup of waybelow({}) is not {}", name(x), name(x));
        for law in ["scott.continuous_lattice", "scott.interpolation", "scott.upper_waybelow_base", "scott.t0"] {
            report.push(LawCheck::skipped(law, &subject, why.clone()));
        }
        return report.in_suite("scott");
    }
    let mut c = LawCheck::new("scott.continuous_lattice", &subject);
    for x in 0..n {
        c.check(o.sup_index(&wb.down(x)) == Some(x), || format!("x={}", name(x)));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("scott.interpolation", &subject);
    for x in 0..n {
        for y in 0..n {
            let rhs = f.join_all((0..n).map(|z| f.meet(wb.wb(z, y), wb.wb(x, z))));
            c.check(rhs == wb.wb(x, y), || format!("x={}, y={}", name(x), name(y)));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("scott.upper_waybelow_base", &subject);
    let base: Vec<LSubset> = match base {
        Some(b) => b.to_vec(),
        None => (0..n).map(|x| wb.upper(x)).collect(),
    };
    for b in &base {
        c.check(sigma.is_open(b), || format!("{} is not Scott open", o.render(b)));
    }
    for a in sigma.opens() {
        let subs: Vec<Elem> = base.iter().map(|b| sub(f, b, a)).collect();
        for x in 0..n {
            let rhs = f.join_all(base.iter().zip(&subs).map(|(b, &s)| f.meet(b.get(x), s)));
            c.check(rhs == a.get(x), || format!("open {} at {} not reconstructed", o.render(a), name(x)));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("scott.t0", &subject);
    c.check(sigma.is_t0(), || {
        let (x, y) = sigma.t0_witness().unwrap_or_default();
        format!("points {} and {}", name(x), name(y))
    });
    report.push(c.finish());
    report.in_suite("scott")
}

/// Scott topology of an order as a shared space.
pub fn scott_space(ctx: &ScottContext) -> Arc<LTopSpace> {
    Arc::new(ctx.scott_topology())
}
