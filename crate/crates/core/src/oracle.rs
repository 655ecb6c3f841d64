//! Two-valued reference implementation on bitmasks: classical finite
//! topologies, their open filters, way-below on finite lattices and the
//! classical structure map. Nothing here calls the L-valued code; the
//! degeneration check compares the two at L = 2.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::filter::FilterSpace;
use crate::frame::{Elem, Frame};
use crate::lorder::LOrder;
use crate::lset::LSubset;
use crate::ltop::LTopSpace;
use crate::report::{LawCheck, Report};
use crate::scott::ScottContext;

/// Opens as bitmasks over at most 32 points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrispSpace {
    pub n: usize,
    pub opens: BTreeSet<u32>,
}

fn full(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Closure of the generators under finite intersections and unions.
pub fn classical_topology(n: usize, generators: &[u32]) -> Result<CrispSpace> {
    if n > 32 {
        return Err(Error::InvalidParameter(format!("{n} points exceed the 32-point bitmask oracle")));
    }
    let mut opens: BTreeSet<u32> = [0, full(n)].into_iter().collect();
    opens.extend(generators.iter().map(|g| g & full(n)));
    loop {
        let cur: Vec<u32> = opens.iter().copied().collect();
        let mut grew = false;
        for &a in &cur {
            for &b in &cur {
                grew |= opens.insert(a & b);
                grew |= opens.insert(a | b);
            }
        }
        if !grew {
            return Ok(CrispSpace { n, opens });
        }
    }
}

impl CrispSpace {
    pub fn is_topology(&self) -> bool {
        self.opens.contains(&0)
            && self.opens.contains(&full(self.n))
            && self.opens.iter().all(|&a| self.opens.iter().all(|&b| self.opens.contains(&(a & b)) && self.opens.contains(&(a | b))))
    }

    /// `x ⊑ y` iff every open containing `x` contains `y`.
    pub fn specialization(&self, x: usize, y: usize) -> bool {
        self.opens.iter().all(|&o| o >> x & 1 == 0 || o >> y & 1 == 1)
    }

    pub fn is_t0(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| x == y || !(self.specialization(x, y) && self.specialization(y, x))))
    }
}

/// Families of opens that are upward closed, closed under binary
/// intersection and contain the carrier, as sorted lists of opens.
pub fn classical_filters(space: &CrispSpace, caps: &Caps) -> Result<Vec<BTreeSet<u32>>> {
    let opens: Vec<u32> = space.opens.iter().copied().collect();
    let m = opens.len();
    if m > 24 || (1u64 << m) > caps.filter_search_nodes {
        return Err(Error::resource("classical filters", format!("2^{m} subfamilies")));
    }
    let top = full(space.n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let fam: Vec<u32> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| opens[i]).collect();
        if !fam.contains(&top) {
            continue;
        }
        let upper = fam.iter().all(|&a| opens.iter().all(|&b| a & !b != 0 || fam.contains(&b)));
        let meets = fam.iter().all(|&a| fam.iter().all(|&b| fam.contains(&(a & b))));
        if upper && meets {
            out.push(fam.into_iter().collect());
        }
    }
    Ok(out)
}

/// A finite poset given by its order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrispPoset {
    pub leq: Vec<Vec<bool>>,
}

impl CrispPoset {
    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    fn upper_bounds(&self, set: u32) -> u32 {
        (0..self.len()).filter(|&z| (0..self.len()).all(|x| set >> x & 1 == 0 || self.leq[x][z])).fold(0, |m, z| m | 1 << z)
    }

    pub fn sup(&self, set: u32) -> Option<usize> {
        let ub = self.upper_bounds(set);
        (0..self.len()).find(|&z| ub >> z & 1 == 1 && (0..self.len()).all(|w| ub >> w & 1 == 0 || self.leq[z][w]))
    }

    pub fn inf(&self, set: u32) -> Option<usize> {
        let lb = (0..self.len())
            .filter(|&z| (0..self.len()).all(|x| set >> x & 1 == 0 || self.leq[z][x]))
            .fold(0u32, |m, z| m | 1 << z);
        (0..self.len()).find(|&z| lb >> z & 1 == 1 && (0..self.len()).all(|w| lb >> w & 1 == 0 || self.leq[w][z]))
    }

    pub fn is_complete_lattice(&self) -> bool {
        (0..1u32 << self.len()).all(|s| self.sup(s).is_some())
    }

    fn is_directed(&self, set: u32) -> bool {
        set != 0
            && (0..self.len()).all(|x| {
                set >> x & 1 == 0
                    || (0..self.len()).all(|y| {
                        set >> y & 1 == 0 || (0..self.len()).any(|z| set >> z & 1 == 1 && self.leq[x][z] && self.leq[y][z])
                    })
            })
    }

    /// Upper sets, the Scott opens of a finite poset.
    pub fn upper_sets(&self) -> Vec<u32> {
        (0..1u32 << self.len())
            .filter(|&s| {
                (0..self.len()).all(|x| s >> x & 1 == 0 || (0..self.len()).all(|y| !self.leq[x][y] || s >> y & 1 == 1))
            })
            .collect()
    }
}

/// `wb[x][y]` holds `y ≪ x`: every directed set with supremum above `x`
/// meets `↑y`.
pub fn classical_waybelow(p: &CrispPoset) -> Result<Vec<Vec<bool>>> {
    let n = p.len();
    if n > 16 {
        return Err(Error::InvalidParameter(format!("{n} elements exceed the 16-element oracle")));
    }
    if !p.is_complete_lattice() {
        return Err(Error::InvalidParameter("not a complete lattice".into()));
    }
    let directed: Vec<(u32, usize)> =
        (1..1u32 << n).filter(|&d| p.is_directed(d)).map(|d| (d, p.sup(d).expect("complete"))).collect();
    Ok((0..n)
        .map(|x| {
            (0..n)
                .map(|y| directed.iter().all(|&(d, s)| !p.leq[x][s] || (0..n).any(|z| d >> z & 1 == 1 && p.leq[y][z])))
                .collect()
        })
        .collect())
}

/// `r(F) = ⋁ { ⋀A : A ∈ F }` over the upper-set topology.
pub fn classical_structure_map(p: &CrispPoset, filter: &BTreeSet<u32>) -> Result<usize> {
    if !p.is_complete_lattice() {
        return Err(Error::InvalidParameter("not a complete lattice".into()));
    }
    let lowers = filter.iter().map(|&a| p.inf(a).expect("complete")).fold(0u32, |m, x| m | 1 << x);
    Ok(p.sup(lowers).expect("complete"))
}

fn bits(a: &LSubset) -> u32 {
    a.values().iter().enumerate().fold(0, |m, (i, v)| if v.0 != 0 { m | 1 << i } else { m })
}

fn two() -> Arc<Frame> {
    Arc::new(Frame::chain(2).expect("two-element chain"))
}

/// A two-valued instance: points with generating opens, or a lattice.
#[derive(Clone, Debug)]
pub enum CrispInstance {
    Space { points: Vec<String>, generators: Vec<u32> },
    Lattice { names: Vec<String>, poset: CrispPoset },
}

/// Builds the L = 2 side from the same descriptor and compares opens,
/// open filters, way-below and structure maps.
pub fn degeneration_check(inst: &CrispInstance, caps: &Caps) -> Result<Report> {
    let f = two();
    let mut report = Report::new();
    let (points, crisp, poset) = match inst {
        CrispInstance::Space { points, generators } => {
            let crisp = classical_topology(points.len(), generators)?;
            let poset = crisp.is_t0().then(|| CrispPoset {
                leq: (0..points.len()).map(|x| (0..points.len()).map(|y| crisp.specialization(x, y)).collect()).collect(),
            });
            (points.clone(), crisp, poset)
        }
        CrispInstance::Lattice { names, poset } => {
            let crisp = CrispSpace { n: poset.len(), opens: poset.upper_sets().into_iter().collect() };
            (names.clone(), crisp, Some(poset.clone()))
        }
    };
    let n = points.len();
    let subject = format!("crisp[{} pts, {} opens]", n, crisp.opens.len());
    let gens: Vec<LSubset> = crisp
        .opens
        .iter()
        .map(|&o| LSubset((0..n).map(|i| Elem((o >> i & 1) as u8)).collect()))
        .collect();
    let generators: Vec<LSubset> = match inst {
        CrispInstance::Space { generators, .. } => {
            generators.iter().map(|&o| LSubset((0..n).map(|i| Elem((o >> i & 1) as u8)).collect())).collect()
        }
        CrispInstance::Lattice { .. } => gens,
    };
    let fuzzy = Arc::new(LTopSpace::generate(f.clone(), points.clone(), &generators, caps)?);

    let mut c = LawCheck::new("oracle.opens", &subject);
    let fuzzy_opens: BTreeSet<u32> = fuzzy.opens().iter().map(bits).collect();
    c.check(fuzzy.opens().iter().all(|o| o.is_crisp(&f)), || "a fuzzy open takes a value outside {0,1}".into());
    c.check(fuzzy_opens == crisp.opens, || format!("fuzzy {fuzzy_opens:?} vs classical {:?}", crisp.opens));
    report.push(c.finish());

    let fs = FilterSpace::new(fuzzy.clone(), caps)?;
    let classical = classical_filters(&crisp, caps)?;
    let as_family = |u: &crate::filter::OpenFilter| -> BTreeSet<u32> {
        fuzzy.opens().iter().enumerate().filter(|(a, _)| u.at(*a) == f.top()).map(|(_, o)| bits(o)).collect()
    };
    let mut c = LawCheck::new("oracle.filters", &subject);
    let fuzzy_filters: BTreeSet<BTreeSet<u32>> = fs.filters().iter().map(as_family).collect();
    let classical_set: BTreeSet<BTreeSet<u32>> = classical.iter().cloned().collect();
    c.check(fuzzy_filters.len() == fs.len(), || "two fuzzy filters collapse to one family".into());
    c.check(fuzzy_filters == classical_set, || {
        format!("{} fuzzy filters vs {} classical", fuzzy_filters.len(), classical_set.len())
    });
    c.set_note(format!("{} filters", classical.len()));
    report.push(c.finish());

    let Some(poset) = poset.filter(|p| p.is_complete_lattice()) else {
        let why = "the instance is not a complete lattice under its specialization order";
        report.push(LawCheck::skipped("oracle.waybelow", &subject, why));
        report.push(LawCheck::skipped("oracle.structure_map", &subject, why));
        return Ok(report.in_suite("degeneration"));
    };
    let order = LOrder::crisp(f.clone(), points.clone(), |x, y| poset.leq[x][y])?;
    let ctx = ScottContext::new(order.clone(), caps)?;
    let wb = ctx.way_below();
    let cwb = classical_waybelow(&poset)?;
    let mut c = LawCheck::new("oracle.waybelow", &subject);
    for x in 0..n {
        for y in 0..n {
            c.check((wb.wb(x, y) == f.top()) == cwb[x][y], || format!("x={}, y={}", points[x], points[y]));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("oracle.structure_map", &subject);
    match crate::algebra::structure_map_r(&order, caps) {
        Ok(alg) => {
            let w = &alg.witness;
            let sigma = &*w.space;
            for (i, u) in w.filter_space.filters().iter().enumerate() {
                let fam: BTreeSet<u32> =
                    sigma.opens().iter().enumerate().filter(|(a, _)| u.at(*a) == f.top()).map(|(_, o)| bits(o)).collect();
                let want = classical_structure_map(&poset, &fam)?;
                c.check(w.r[i] == want, || format!("filter {fam:?}: r={} vs {}", points[w.r[i]], points[want]));
            }
        }
        Err(e) => c.fail(e.to_string()),
    }
    report.push(c.finish());
    Ok(report.in_suite("degeneration"))
}

/// The classical algebra on the upper-set topology of a finite lattice,
/// as an L = 2 witness with `r` computed by the oracle.
pub fn oracle_algebra(names: Vec<String>, poset: &CrispPoset, caps: &Caps) -> Result<crate::algebra::AlgebraWitness> {
    let f = two();
    let n = poset.len();
    let gens: Vec<LSubset> =
        poset.upper_sets().into_iter().map(|o| LSubset((0..n).map(|i| Elem((o >> i & 1) as u8)).collect())).collect();
    let space = Arc::new(LTopSpace::generate(f.clone(), names, &gens, caps)?);
    let fs = FilterSpace::new(space.clone(), caps)?;
    let r = fs
        .filters()
        .iter()
        .map(|u| {
            let fam: BTreeSet<u32> =
                space.opens().iter().enumerate().filter(|(a, _)| u.at(*a) == f.top()).map(|(_, o)| bits(o)).collect();
            classical_structure_map(poset, &fam)
        })
        .collect::<Result<Vec<_>>>()?;
    crate::algebra::AlgebraWitness::with_filters(space, fs, r, crate::algebra::Provenance::UserSupplied)
}

pub fn chain_poset(n: usize) -> CrispPoset {
    CrispPoset { leq: (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect() }
}
