//! Open filters, the filter space Φ_L(X) with its topology generated by the
//! sets φ(A), the functor action, unit, multiplication, convergence and the
//! directed-sup structure of `(Φ_L(X), sub)`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::frame::{Elem, Frame};
use crate::lorder::LOrder;
use crate::lset::{self, sub, CarrierMap, LSubset};
use crate::ltop::{check_base_generates, check_base_identity, LTopSpace};

/// A map from the opens of a space (by index) to frame elements. Also used
/// for level-2 filters, whose opens are those of a filter space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OpenFilter {
    pub values: Vec<Elem>,
}

impl OpenFilter {
    #[inline]
    pub fn at(&self, open: usize) -> Elem {
        self.values[open]
    }

    pub fn render(&self, f: &Frame) -> String {
        let v: Vec<&str> = self.values.iter().map(|&e| f.name(e)).collect();
        format!("[{}]", v.join(" "))
    }
}

/// Lookup tables over the opens of one space.
#[derive(Clone, Debug)]
pub struct OpenTables {
    m: usize,
    meet: Vec<u32>,
    sub: Vec<Elem>,
    below: Vec<usize>,
    constants: Vec<usize>,
}

impl OpenTables {
    pub fn new(space: &LTopSpace) -> Result<OpenTables> {
        let f = space.frame();
        let opens = space.opens();
        let m = opens.len();
        let mut meet = vec![0u32; m * m];
        let mut subt = vec![f.top(); m * m];
        for i in 0..m {
            for j in 0..m {
                let c = opens[i].meet(f, &opens[j]);
                let Some(k) = space.open_index(&c) else {
                    return Err(Error::Precondition(format!(
                        "family is not meet-closed: {} ∧ {} is missing",
                        space.render(&opens[i]),
                        space.render(&opens[j])
                    )));
                };
                meet[i * m + j] = k as u32;
                subt[i * m + j] = sub(f, &opens[i], &opens[j]);
            }
        }
        let below = (0..m).map(|i| (0..m).filter(|&j| subt[j * m + i] == f.top()).count()).collect();
        let constants = f
            .elements()
            .map(|a| {
                space
                    .constant_index(a)
                    .ok_or_else(|| Error::Precondition(format!("constant {} is not open", f.name(a))))
            })
            .collect::<Result<_>>()?;
        Ok(OpenTables { m, meet, sub: subt, below, constants })
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.m + j] as usize
    }

    #[inline]
    pub fn sub(&self, i: usize, j: usize) -> Elem {
        self.sub[i * self.m + j]
    }

    pub fn constant(&self, a: Elem) -> usize {
        self.constants[a.idx()]
    }
}

/// (F1) on every pair of opens and (F2) on every constant.
pub fn is_open_filter(space: &LTopSpace, values: &[Elem]) -> bool {
    filter_violation(space, values).is_none()
}

/// The first failing (F1) pair or (F2) constant, rendered.
pub fn filter_violation(space: &LTopSpace, values: &[Elem]) -> Option<String> {
    let f = space.frame();
    let opens = space.opens();
    if values.len() != opens.len() {
        return Some(format!("{} values for {} opens", values.len(), opens.len()));
    }
    for a in f.elements() {
        match space.constant_index(a) {
            Some(i) if f.leq(a, values[i]) => {}
            Some(i) => return Some(format!("stratified fails at a={}: u(a_X)={}", f.name(a), f.name(values[i]))),
            None => return Some(format!("constant {} is not open", f.name(a))),
        }
    }
    for i in 0..opens.len() {
        for j in 0..=i {
            let c = opens[i].meet(f, &opens[j]);
            let Some(k) = space.open_index(&c) else {
                return Some("opens are not meet-closed".into());
            };
            if values[k] != f.meet(values[i], values[j]) {
                return Some(format!(
                    "meet fails at A={}, B={}",
                    space.render(&opens[i]),
                    space.render(&opens[j])
                ));
            }
        }
    }
    None
}

/// Depth-first search over value assignments, opens taken in increasing
/// number of opens below them. Bounds from monotonicity and (F2) restrict
/// each value and (F1) is checked against every earlier open.
pub fn enumerate_filters(space: &LTopSpace, tables: &OpenTables, caps: &Caps) -> Result<Vec<OpenFilter>> {
    let f = space.frame();
    let m = tables.m;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (tables.below[i], i));
    let lb0: Vec<Elem> = space.opens().iter().map(|o| f.meet_all(o.values().iter().copied())).collect();

    struct Search<'a> {
        f: &'a Frame,
        t: &'a OpenTables,
        order: Vec<usize>,
        lb0: Vec<Elem>,
        values: Vec<Elem>,
        nodes: u64,
        out: Vec<OpenFilter>,
        caps: &'a Caps,
    }

    impl Search<'_> {
        fn go(&mut self, k: usize) -> Result<()> {
            let m = self.order.len();
            if k == m {
                if self.out.len() >= self.caps.filter_count {
                    return Err(Error::resource(
                        "filter enumeration",
                        format!("more than {} open filters", self.caps.filter_count),
                    ));
                }
                self.out.push(OpenFilter { values: self.values.clone() });
                return Ok(());
            }
            let f = self.f;
            let i = self.order[k];
            let mut lb = self.lb0[i];
            let mut ub = f.top();
            for &j in &self.order[..k] {
                let uj = self.values[j];
                lb = f.join(lb, f.meet(uj, self.t.sub(j, i)));
                ub = f.meet(ub, f.imp(self.t.sub(i, j), uj));
            }
            if !f.leq(lb, ub) {
                return Ok(());
            }
            for v in f.elements() {
                if !(f.leq(lb, v) && f.leq(v, ub)) {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.caps.filter_search_nodes {
                    return Err(Error::resource(
                        "filter enumeration",
                        format!("search exceeded {} nodes", self.caps.filter_search_nodes),
                    ));
                }
                self.values[i] = v;
                let consistent = self.order[..k].iter().all(|&j| {
                    let c = self.t.meet(i, j);
                    let uc = if c == i { v } else { self.values[c] };
                    uc == f.meet(v, self.values[j])
                });
                if consistent {
                    self.go(k + 1)?;
                }
            }
            self.values[i] = f.bottom();
            Ok(())
        }
    }

    let mut s = Search { f, t: tables, order, lb0, values: vec![f.bottom(); m], nodes: 0, out: Vec::new(), caps };
    s.go(0)?;
    Ok(s.out)
}

/// Φ_L(X) for a space `X` (itself possibly a filter space), with the
/// topology generated by `φ(A)(u) = u(A)` and `{φ(A)}` recorded as base.
#[derive(Clone, Debug)]
pub struct FilterSpace {
    level: usize,
    base_space: Arc<LTopSpace>,
    tables: OpenTables,
    filters: Vec<OpenFilter>,
    index: HashMap<OpenFilter, usize>,
    space: Arc<LTopSpace>,
    phi: Vec<usize>,
}

impl FilterSpace {
    pub fn new(base_space: Arc<LTopSpace>, caps: &Caps) -> Result<FilterSpace> {
        FilterSpace::at_level(base_space, 1, caps)
    }

    /// Φ over an already built filter space, i.e. Φ².
    pub fn over(fs: &FilterSpace, caps: &Caps) -> Result<FilterSpace> {
        FilterSpace::at_level(fs.space.clone(), fs.level + 1, caps)
    }

    fn at_level(base_space: Arc<LTopSpace>, level: usize, caps: &Caps) -> Result<FilterSpace> {
        let f = base_space.frame();
        if f.len() > caps.filter_frame_size {
            return Err(Error::resource(
                "filter enumeration",
                format!("|L| = {} exceeds the filter frame cap {}", f.len(), caps.filter_frame_size),
            ));
        }
        if base_space.opens().len() > caps.filter_opens {
            return Err(Error::resource(
                "filter enumeration",
                format!("{} opens exceed the cap {}", base_space.opens().len(), caps.filter_opens),
            ));
        }
        let tables = OpenTables::new(&base_space)?;
        let filters = enumerate_filters(&base_space, &tables, caps)?;
        FilterSpace::from_filters(base_space, level, tables, filters, caps)
    }

    fn from_filters(
        base_space: Arc<LTopSpace>,
        level: usize,
        tables: OpenTables,
        filters: Vec<OpenFilter>,
        caps: &Caps,
    ) -> Result<FilterSpace> {
        let frame = base_space.frame_arc().clone();
        let index: HashMap<OpenFilter, usize> = filters.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
        let m = base_space.opens().len();
        let gens: Vec<LSubset> = (0..m).map(|a| LSubset(filters.iter().map(|u| u.at(a)).collect())).collect();
        let prefix = "u".repeat(level);
        let names = (0..filters.len()).map(|i| format!("{prefix}{i}")).collect();
        let generated = LTopSpace::generate(frame, names, &gens, caps)?;
        let phi: Vec<usize> = gens.iter().map(|g| generated.open_index(g).expect("generator is open")).collect();
        let mut base = phi.clone();
        base.sort_unstable();
        base.dedup();
        let space = Arc::new(generated.with_base(base)?);
        Ok(FilterSpace { level, base_space, tables, filters, index, space, phi })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn base_space(&self) -> &Arc<LTopSpace> {
        &self.base_space
    }

    pub fn frame(&self) -> &Frame {
        self.base_space.frame()
    }

    pub fn tables(&self) -> &OpenTables {
        &self.tables
    }

    pub fn filters(&self) -> &[OpenFilter] {
        &self.filters
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn index_of(&self, u: &OpenFilter) -> Option<usize> {
        self.index.get(u).copied()
    }

    /// The topology on Φ_L(X).
    pub fn space(&self) -> &Arc<LTopSpace> {
        &self.space
    }

    /// Index of `φ(A)` among the opens of Φ_L(X).
    pub fn phi(&self, a: usize) -> usize {
        self.phi[a]
    }

    pub fn phi_set(&self, a: usize) -> &LSubset {
        &self.space.opens()[self.phi[a]]
    }

    /// `sub(u,v) = ⋀_A u(A) -> v(A)`.
    pub fn sub(&self, u: &OpenFilter, v: &OpenFilter) -> Elem {
        let f = self.frame();
        u.values.iter().zip(&v.values).fold(f.top(), |acc, (&a, &b)| f.meet(acc, f.imp(a, b)))
    }

    pub fn sub_order(&self) -> LOrder {
        let n = self.len();
        let e = (0..n * n).map(|k| self.sub(&self.filters[k / n], &self.filters[k % n])).collect();
        LOrder::new_unchecked(self.base_space.frame_arc().clone(), self.space.points().to_vec(), e)
            .expect("square matrix of frame elements")
    }

    pub fn pointed(&self, x: usize) -> OpenFilter {
        pointed(&self.base_space, x)
    }

    /// The unit `X -> Φ_L(X)`, `x ↦ [x]`.
    pub fn unit_map(&self) -> Result<CarrierMap> {
        let graph = (0..self.base_space.len())
            .map(|x| {
                self.index_of(&self.pointed(x)).ok_or_else(|| {
                    Error::Violation(format!("pointed filter at {} is missing", self.base_space.points()[x]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CarrierMap::new(graph, self.len())
    }

    /// `μ(α)(A) = α(φ(A))` for a filter `α` on this filter space.
    pub fn mult(&self, alpha: &OpenFilter) -> Result<OpenFilter> {
        if let Some(why) = filter_violation(&self.space, &alpha.values) {
            return Err(Error::Precondition(format!("not an open filter of the filter space: {why}")));
        }
        let out = self.mult_unchecked(alpha);
        if let Some(why) = filter_violation(&self.base_space, &out.values) {
            return Err(Error::Violation(format!("multiplication left the filters: {why}")));
        }
        Ok(out)
    }

    pub fn mult_unchecked(&self, alpha: &OpenFilter) -> OpenFilter {
        OpenFilter { values: self.phi.iter().map(|&w| alpha.at(w)).collect() }
    }

    pub fn render_family(&self, fam: &LSubset) -> String {
        fam.render(self.frame(), self.space.points())
    }

    /// `⊔𝒜 = ⋁_u 𝒜(u) ∧ u` for a directed family, certified as the
    /// supremum in `(Φ_L(X), sub)`. Returns the filter's index.
    pub fn dsup(&self, fam: &LSubset) -> Result<usize> {
        let order = self.sub_order();
        if !order.is_directed(fam)? {
            return Err(Error::Precondition(format!("family {} is not directed", self.render_family(fam))));
        }
        let w = self.dsup_formula(fam);
        let Some(i) = self.index_of(&w) else {
            return Err(Error::Violation(format!("⋁ 𝒜(u) ∧ u = {} is not an open filter", w.render(self.frame()))));
        };
        match order.sup_of(fam) {
            Some(s) if s.element == i => Ok(i),
            _ => Err(Error::Violation(format!(
                "{} is not the supremum of {}",
                self.space.points()[i],
                self.render_family(fam)
            ))),
        }
    }

    pub fn dsup_formula(&self, fam: &LSubset) -> OpenFilter {
        let f = self.frame();
        let m = self.base_space.opens().len();
        let values = (0..m)
            .map(|a| f.join_all(self.filters.iter().enumerate().map(|(i, u)| f.meet(fam.get(i), u.at(a)))))
            .collect();
        OpenFilter { values }
    }

    /// `Ã(W) = ⋁_u 𝒜(u) ∧ W(u)` over the opens `W` of Φ_L(X).
    pub fn lift(&self, fam: &LSubset) -> Result<OpenFilter> {
        if !self.sub_order().is_directed(fam)? {
            return Err(Error::Precondition(format!("family {} is not directed", self.render_family(fam))));
        }
        Ok(self.lift_unchecked(fam))
    }

    pub fn lift_unchecked(&self, fam: &LSubset) -> OpenFilter {
        let f = self.frame();
        let values = self
            .space
            .opens()
            .iter()
            .map(|w| f.join_all((0..self.len()).map(|i| f.meet(fam.get(i), w.get(i)))))
            .collect();
        OpenFilter { values }
    }

    /// `𝒜_u(v) = ⋁_A u(A) ∧ sub(v, [A])`.
    pub fn canonical_family(&self, u: &OpenFilter) -> LSubset {
        let f = self.frame();
        let opens = self.base_space.opens();
        let principals: Vec<OpenFilter> = opens.iter().map(|a| principal(&self.base_space, a)).collect();
        LSubset(
            self.filters
                .iter()
                .map(|v| f.join_all((0..opens.len()).map(|a| f.meet(u.at(a), self.sub(v, &principals[a])))))
                .collect(),
        )
    }

    /// Rows are filters in discovery order, columns are opens.
    pub fn table(&self) -> String {
        let f = self.frame();
        let mut out = String::new();
        for (j, o) in self.base_space.opens().iter().enumerate() {
            let _ = writeln!(out, "# A{j} = {}", self.base_space.render(o));
        }
        let header: Vec<String> = (0..self.base_space.opens().len()).map(|j| format!("A{j}")).collect();
        let _ = writeln!(out, "filter {}", header.join(" "));
        for (i, u) in self.filters.iter().enumerate() {
            let row: Vec<&str> = u.values.iter().map(|&e| f.name(e)).collect();
            let _ = writeln!(out, "{} {}", self.space.points()[i], row.join(" "));
        }
        out
    }
}

/// `[x](B) = B(x)`.
pub fn pointed(space: &LTopSpace, x: usize) -> OpenFilter {
    OpenFilter { values: space.opens().iter().map(|o| o.get(x)).collect() }
}

/// `[A](B) = sub(A,B)`.
pub fn principal(space: &LTopSpace, a: &LSubset) -> OpenFilter {
    let f = space.frame();
    OpenFilter { values: space.opens().iter().map(|o| sub(f, a, o)).collect() }
}

/// `(Φf)(u)(B) = u(f^←(B))`.
pub fn pushforward(map: &CarrierMap, x: &LTopSpace, y: &LTopSpace, u: &OpenFilter) -> Result<OpenFilter> {
    if !x.is_continuous(map, y)? {
        return Err(Error::Precondition(format!("map {:?} is not continuous", map.graph)));
    }
    pushforward_unchecked(map, x, y, u)
}

pub fn pushforward_unchecked(map: &CarrierMap, x: &LTopSpace, y: &LTopSpace, u: &OpenFilter) -> Result<OpenFilter> {
    let values = y
        .opens()
        .iter()
        .map(|b| {
            let pre = lset::preimage(map, b)?;
            x.open_index(&pre)
                .map(|i| u.at(i))
                .ok_or_else(|| Error::Precondition("preimage of an open is not open".into()))
        })
        .collect::<Result<_>>()?;
    Ok(OpenFilter { values })
}

/// Φf as a map between enumerated filter spaces.
pub fn functor_map(map: &CarrierMap, fx: &FilterSpace, fy: &FilterSpace) -> Result<CarrierMap> {
    if !fx.base_space.is_continuous(map, &fy.base_space)? {
        return Err(Error::Precondition(format!("map {:?} is not continuous", map.graph)));
    }
    let graph = fx
        .filters
        .iter()
        .map(|u| {
            let v = pushforward_unchecked(map, &fx.base_space, &fy.base_space, u)?;
            fy.index_of(&v).ok_or_else(|| Error::Violation(format!("pushforward {} is not a filter", v.render(fx.frame()))))
        })
        .collect::<Result<Vec<_>>>()?;
    CarrierMap::new(graph, fy.len())
}

/// `lim u(x) = ⋀_A A(x) -> u(A)`.
pub fn lim_conv(space: &LTopSpace, u: &OpenFilter) -> LSubset {
    let f = space.frame();
    LSubset(
        (0..space.len())
            .map(|x| f.meet_all(space.opens().iter().enumerate().map(|(i, a)| f.imp(a.get(x), u.at(i)))))
            .collect(),
    )
}

/// Laws of the open filters of one space and of its filter space.
pub fn check_filter_laws(fs: &FilterSpace, caps: &Caps) -> crate::report::Report {
    use crate::report::{LawCheck, Mode, Report};
    let x = &*fs.base_space;
    let f = x.frame();
    let opens = x.opens();
    let m = opens.len();
    let subject = format!("Φ[{} pts, {} opens, {} filters]", x.len(), m, fs.len());
    let mut report = Report::new();
    let name = |i: usize| fs.space.points()[i].clone();

    let mut f1 = LawCheck::new("filter.meet_preserving", &subject);
    let mut f2 = LawCheck::new("filter.stratified", &subject);
    for (i, u) in fs.filters.iter().enumerate() {
        for a in 0..m {
            for b in 0..=a {
                let c = fs.tables.meet(a, b);
                f1.check(u.at(c) == f.meet(u.at(a), u.at(b)), || format!("u={}, A{a}, A{b}", name(i)));
            }
        }
        for a in f.elements() {
            f2.check(f.leq(a, u.at(fs.tables.constant(a))), || format!("u={}, a={}", name(i), f.name(a)));
        }
    }
    report.push(f1.finish());
    report.push(f2.finish());

    let principals: Vec<OpenFilter> = opens.iter().map(|a| principal(x, a)).collect();
    let mut f3 = LawCheck::new("filter.join_representation", &subject);
    let mut f3p = LawCheck::new("filter.principal_representation", &subject);
    let mut f4 = LawCheck::new("filter.meet_representation", &subject);
    let mut f4p = LawCheck::new("filter.principal_sub", &subject);
    for (i, u) in fs.filters.iter().enumerate() {
        let mut joined = vec![f.bottom(); m];
        for a in 0..m {
            for (b, slot) in joined.iter_mut().enumerate() {
                *slot = f.join(*slot, f.meet(u.at(a), principals[a].at(b)));
            }
        }
        f3p.check(joined == u.values, || format!("u={}", name(i)));
        for b in 0..m {
            let j = f.join_all((0..m).map(|a| f.meet(u.at(a), fs.tables.sub(a, b))));
            f3.check(j == u.at(b), || format!("u={}, B=A{b}", name(i)));
            let k = f.meet_all((0..m).map(|a| f.imp(fs.tables.sub(b, a), u.at(a))));
            f4.check(k == u.at(b), || format!("u={}, B=A{b}", name(i)));
            f4p.check(fs.sub(&principals[b], u) == u.at(b), || format!("u={}, B=A{b}", name(i)));
        }
    }
    for c in [f3, f3p, f4, f4p] {
        report.push(c.finish());
    }

    let mut c = LawCheck::new("filter.pointed_present", &subject);
    for p in 0..x.len() {
        c.check(fs.index_of(&pointed(x, p)).is_some(), || format!("x={}", x.points()[p]));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("filter.principal_antitone", &subject);
    for a in 0..m {
        for b in 0..m {
            if opens[b].leq(f, &opens[a]) {
                c.check(principals[a].values.iter().zip(&principals[b].values).all(|(&p, &q)| f.leq(p, q)), || {
                    format!("A=A{a}, B=A{b}")
                });
            }
        }
    }
    report.push(c.finish());

    let phi_space = &*fs.space;
    let mut c = LawCheck::new("filter.space_t0", &subject);
    c.check(phi_space.is_t0(), || {
        let (u, v) = phi_space.t0_witness().unwrap_or_default();
        format!("{} and {}", name(u), name(v))
    });
    report.push(c.finish());

    let mut c = LawCheck::new("filter.phi_base", &subject);
    let generates = check_base_generates(phi_space);
    let identity = check_base_identity(phi_space);
    for e in std::iter::once(&generates).chain(&identity.entries) {
        c.check(e.passed(), || format!("{}: {}", e.law, e.witness.clone().unwrap_or_default()));
    }
    for a in 0..m {
        let ok = (0..fs.len()).all(|i| fs.phi_set(a).get(i) == fs.filters[i].at(a));
        c.check(ok, || format!("φ(A{a}) does not evaluate filters at A{a}"));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("filter.phi_constants", &subject);
    for a in f.elements() {
        let phi = fs.phi_set(fs.tables.constant(a));
        c.check(phi.values().iter().all(|&v| f.leq(a, v)), || format!("a={}", f.name(a)));
    }
    report.push(c.finish());

    let order = fs.sub_order();
    let mut c = LawCheck::new("filter.sub_order", &subject);
    for e in order.check_axioms().entries {
        c.check(e.passed(), || format!("{}: {}", e.law, e.witness.clone().unwrap_or_default()));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("filter.specialization_is_sub", &subject);
    for i in 0..fs.len() {
        for j in 0..fs.len() {
            c.check(phi_space.specialization_value(i, j) == order.e(i, j), || format!("u={}, v={}", name(i), name(j)));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("filter.lim_pointed", &subject);
    for p in 0..x.len() {
        c.check(lim_conv(x, &pointed(x, p)).get(p) == f.top(), || format!("x={}", x.points()[p]));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("filter.lim_monotone", &subject);
    let lims: Vec<LSubset> = fs.filters.iter().map(|u| lim_conv(x, u)).collect();
    for i in 0..fs.len() {
        for j in 0..fs.len() {
            let s = order.e(j, i);
            for p in 0..x.len() {
                c.check(f.leq(f.meet(lims[j].get(p), s), lims[i].get(p)), || {
                    format!("u={}, v={}, x={}", name(i), name(j), x.points()[p])
                });
            }
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("filter.unit_preimage", &subject);
    match fs.unit_map() {
        Ok(eta) => {
            for a in 0..m {
                let pre = lset::preimage(&eta, fs.phi_set(a)).expect("unit map targets the filter space");
                c.check(pre == opens[a], || format!("U=A{a}"));
            }
        }
        Err(e) => c.fail(e.to_string()),
    }
    report.push(c.finish());

    // directed families: exhaustive when L^Φ is small, otherwise structured samples
    let n = fs.len();
    let families: Vec<LSubset> = match Caps::checked_power(f.len(), n, caps.lsubset_space) {
        Some(total) => (0..total)
            .map(|i| LSubset::from_index(i, n, f.len()))
            .filter(|d| order.is_directed(d).unwrap_or(false))
            .collect(),
        None => sample_directed(fs, &order),
    };
    let exhaustive = Caps::checked_power(f.len(), n, caps.lsubset_space).is_some();
    let mode = if exhaustive { Mode::Exhaustive } else { Mode::Sampled { samples: families.len() } };

    let mut ds = LawCheck::new("filter.directed_sup", &subject);
    let mut lf = LawCheck::new("filter.lift_is_filter", &subject);
    let mut lm = LawCheck::new("filter.lift_mult", &subject);
    let mut lc = LawCheck::new("filter.lift_constants", &subject);
    for c in [&mut ds, &mut lf, &mut lm, &mut lc] {
        c.set_mode(mode);
    }
    for fam in &families {
        let w = fs.dsup_formula(fam);
        let sup = order.sup_index(fam);
        ds.check(sup.is_some() && fs.index_of(&w) == sup, || format!("family={}", fs.render_family(fam)));
        let lift = fs.lift_unchecked(fam);
        lf.check(is_open_filter(phi_space, &lift.values), || format!("family={}", fs.render_family(fam)));
        lm.check(fs.mult_unchecked(&lift) == w, || format!("family={}", fs.render_family(fam)));
        for a in f.elements() {
            let k = phi_space.constant_index(a).expect("constants are open");
            lc.check(lift.at(k) == a, || format!("family={}, a={}", fs.render_family(fam), f.name(a)));
        }
    }
    for c in [ds, lf, lm, lc] {
        report.push(c.finish());
    }

    let mut c = LawCheck::new("filter.canonical_directed", &subject);
    for (i, u) in fs.filters.iter().enumerate() {
        let fam = fs.canonical_family(u);
        let directed = order.is_directed(&fam).unwrap_or(false);
        let ok = directed && order.sup_index(&fam) == Some(i) && fs.dsup_formula(&fam) == *u;
        c.check(ok, || format!("u={}, family={}", name(i), fs.render_family(&fam)));
        for (a, p) in principals.iter().enumerate() {
            if let Some(k) = fs.index_of(p) {
                c.check(f.leq(u.at(a), fam.get(k)), || format!("u={}, A=A{a}", name(i)));
            }
        }
    }
    report.push(c.finish());

    report.extend(check_pushforward_laws(fs, caps));
    report.in_suite("filter")
}

/// Canonical families, singletons and two-point families `{u: a, v: 1}`
/// with `sub(u,v) = 1`.
pub fn sample_directed(fs: &FilterSpace, order: &LOrder) -> Vec<LSubset> {
    let f = fs.frame();
    let n = fs.len();
    let mut out: Vec<LSubset> = fs.filters.iter().map(|u| fs.canonical_family(u)).collect();
    for i in 0..n {
        let mut s = LSubset::constant(n, f.bottom());
        s.0[i] = f.top();
        out.push(s);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && order.e(i, j) == f.top() {
                for a in f.elements() {
                    let mut s = LSubset::constant(n, f.bottom());
                    s.0[i] = a;
                    s.0[j] = f.top();
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out.retain(|d| order.is_directed(d).unwrap_or(false));
    out
}

/// Functor laws along every continuous self-map of the base space.
fn check_pushforward_laws(fs: &FilterSpace, caps: &Caps) -> crate::report::Report {
    use crate::report::{LawCheck, Report};
    let x = &*fs.base_space;
    let f = x.frame();
    let subject = format!("Φ[{} pts, {} filters]", x.len(), fs.len());
    let mut report = Report::new();
    let maps = match x.continuous_maps(x) {
        Ok(m) => m,
        Err(e) => {
            for law in ["filter.pushforward_pointed", "filter.pushforward_identity", "filter.pushforward_compose", "filter.pushforward_phi"] {
                report.push(LawCheck::skipped(law, &subject, e.to_string()));
            }
            return report;
        }
    };
    let _ = caps;
    let fmap: Vec<Option<CarrierMap>> = maps.iter().map(|g| functor_map(g, fs, fs).ok()).collect();

    let mut c = LawCheck::new("filter.pushforward_pointed", &subject);
    for (g, phi_g) in maps.iter().zip(&fmap) {
        for p in 0..x.len() {
            let got = phi_g.as_ref().map(|m| m.graph[fs.index_of(&pointed(x, p)).unwrap_or(0)]);
            let want = fs.index_of(&pointed(x, g.graph[p]));
            c.check(got.is_some() && got == want, || format!("f={:?}, x={}", g.graph, x.points()[p]));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("filter.pushforward_identity", &subject);
    let id = CarrierMap::identity(x.len());
    for (i, u) in fs.filters.iter().enumerate() {
        let ok = pushforward(&id, x, x, u).map(|v| &v == u).unwrap_or(false);
        c.check(ok, || format!("u={}", fs.space.points()[i]));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("filter.pushforward_compose", &subject);
    for (a, fa) in maps.iter().zip(&fmap) {
        for (b, fb) in maps.iter().zip(&fmap) {
            let (Some(fa), Some(fb)) = (fa, fb) else {
                c.fail(format!("pushforward along {:?} or {:?} failed", a.graph, b.graph));
                continue;
            };
            let ab = a.then(b).expect("self-maps compose");
            match functor_map(&ab, fs, fs) {
                Ok(fab) => {
                    let composed = fa.then(fb).expect("self-maps compose");
                    c.check(fab == composed, || format!("f={:?}, g={:?}", a.graph, b.graph));
                }
                Err(e) => c.fail(e.to_string()),
            }
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("filter.pushforward_phi", &subject);
    for (g, fg) in maps.iter().zip(&fmap) {
        let Some(fg) = fg else { continue };
        for (b, open) in x.opens().iter().enumerate() {
            let pre = lset::preimage(g, open).expect("self-map");
            let Some(k) = x.open_index(&pre) else {
                c.fail(format!("preimage of A{b} along {:?} is not open", g.graph));
                continue;
            };
            let lhs = lset::preimage(fg, fs.phi_set(b)).expect("functor map targets Φ");
            c.check(&lhs == fs.phi_set(k), || format!("f={:?}, B=A{b}", g.graph));
        }
    }
    report.push(c.finish());
    let _ = f;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltop::{discrete, indiscrete, sierpinski};

    fn chain(n: usize) -> Arc<Frame> {
        Arc::new(Frame::chain(n).unwrap())
    }

    /// Every map opens -> L, filtered by the literal (F1)(F2) check.
    fn brute_force(space: &LTopSpace) -> Vec<Vec<Elem>> {
        let f = space.frame();
        let m = space.opens().len();
        let total = (f.len() as u64).pow(m as u32);
        (0..total)
            .map(|i| LSubset::from_index(i, m, f.len()).0)
            .filter(|v| is_open_filter(space, v))
            .collect()
    }

    #[test]
    fn sierpinski_two_chain_has_three_filters() {
        let s = Arc::new(sierpinski(chain(2), &Caps::default()).unwrap());
        assert_eq!(brute_force(&s).len(), 3);
        let fs = FilterSpace::new(s, &Caps::default()).unwrap();
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let caps = Caps::default();
        for sp in [
            sierpinski(chain(3), &caps).unwrap(),
            indiscrete(chain(2), 1, &caps).unwrap(),
            indiscrete(chain(3), 2, &caps).unwrap(),
            discrete(chain(2), 2, &caps).unwrap(),
            discrete(chain(3), 1, &caps).unwrap(),
            indiscrete(chain(3), 0, &caps).unwrap(),
        ] {
            let sp = Arc::new(sp);
            let mut want = brute_force(&sp);
            let fs = FilterSpace::new(sp, &caps).unwrap();
            let mut got: Vec<Vec<Elem>> = fs.filters().iter().map(|u| u.values.clone()).collect();
            want.sort();
            got.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn constants_only_one_point() {
        // u(1_X) = 1 is forced, u(0_X) is free
        let sp = Arc::new(indiscrete(chain(2), 1, &Caps::default()).unwrap());
        let fs = FilterSpace::new(sp.clone(), &Caps::default()).unwrap();
        assert_eq!(brute_force(&sp).len(), 2);
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn filter_examples() {
        let f = chain(3);
        let s = sierpinski(f.clone(), &Caps::default()).unwrap();
        assert!(is_open_filter(&s, &pointed(&s, 0).values));
        let a0 = LSubset(vec![Elem(1), Elem(2)]);
        assert!(is_open_filter(&s, &principal(&s, &a0).values));
        assert!(!is_open_filter(&s, &vec![f.bottom(); s.opens().len()]));
        for a in f.elements() {
            let k = s.constant_index(a).unwrap();
            assert_eq!(pointed(&s, 1).at(k), a);
        }
        let one = principal(&s, &LSubset::constant(2, f.top()));
        for (i, o) in s.opens().iter().enumerate() {
            assert_eq!(one.at(i), f.meet_all(o.values().iter().copied()));
        }
    }

    #[test]
    fn sierpinski_limits() {
        let f = chain(2);
        let s = Arc::new(sierpinski(f.clone(), &Caps::default()).unwrap());
        let o = s.specialization_order().unwrap();
        assert_eq!(lim_conv(&s, &pointed(&s, 1)).get(0), f.top());
        assert_eq!(lim_conv(&s, &pointed(&s, 0)).get(1), o.e(1, 0));
    }

    #[test]
    fn multiplication_and_lift() {
        let caps = Caps::default();
        let s = Arc::new(sierpinski(chain(2), &caps).unwrap());
        let fs = FilterSpace::new(s, &caps).unwrap();
        let order = fs.sub_order();
        for (i, u) in fs.filters().iter().enumerate() {
            let alpha = pointed(fs.space(), i);
            assert_eq!(&fs.mult(&alpha).unwrap(), u);
            let mut single = LSubset::constant(fs.len(), Elem(0));
            single.0[i] = Elem(1);
            assert_eq!(fs.dsup(&single).unwrap(), i);
            assert_eq!(fs.lift(&single).unwrap(), alpha);
            let fam = fs.canonical_family(u);
            assert!(order.is_directed(&fam).unwrap());
            assert_eq!(fs.dsup(&fam).unwrap(), i);
        }
        let bad = OpenFilter { values: vec![Elem(0); fs.space().opens().len()] };
        assert!(matches!(fs.mult(&bad), Err(Error::Precondition(_))));
        assert!(fs.dsup(&LSubset::constant(fs.len(), Elem(0))).is_err());
    }

    #[test]
    fn filter_laws_on_micro_spaces() {
        let caps = Caps::default();
        for sp in [
            sierpinski(chain(2), &caps).unwrap(),
            sierpinski(chain(3), &caps).unwrap(),
            discrete(chain(2), 2, &caps).unwrap(),
            indiscrete(chain(3), 2, &caps).unwrap(),
            indiscrete(chain(2), 0, &caps).unwrap(),
        ] {
            let fs = FilterSpace::new(Arc::new(sp), &caps).unwrap();
            let r = check_filter_laws(&fs, &caps);
            assert!(r.all_passed(), "{}", r.to_text(false));
        }
    }

    #[test]
    fn pushforward_requires_continuity() {
        let caps = Caps::default();
        let f = chain(2);
        let s = sierpinski(f.clone(), &caps).unwrap();
        let ind = indiscrete(f, 2, &caps).unwrap();
        let u = pointed(&ind, 0);
        assert!(matches!(pushforward(&CarrierMap::identity(2), &ind, &s, &u), Err(Error::Precondition(_))));
        let swap = CarrierMap::new(vec![1, 0], 2).unwrap();
        assert!(pushforward(&swap, &s, &s, &pointed(&s, 0)).is_err());
    }

    #[test]
    fn caps_are_enforced() {
        let s = Arc::new(sierpinski(chain(3), &Caps::default()).unwrap());
        let tight = Caps { filter_search_nodes: 3, ..Caps::default() };
        assert!(FilterSpace::new(s.clone(), &tight).unwrap_err().is_resource_limit());
        let small = Caps { filter_frame_size: 2, ..Caps::default() };
        assert!(FilterSpace::new(s, &small).unwrap_err().is_resource_limit());
    }
}
