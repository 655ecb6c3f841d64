//! Deliberately broken structures. Each mutation runs the suite that should
//! notice it and hands back the report; a mutation is caught when that
//! report has a failing entry with a witness.

use std::sync::Arc;

use crate::algebra::{check_algebra_is_lattice, structure_map_r, AlgebraWitness, Provenance};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::frame::{check_frame_laws_with, Elem, Frame, DEFAULT_LAW_SEED};
use crate::lorder::LOrder;
use crate::lset::LSubset;
use crate::ltop::{check_base_identity, check_topology, discrete, sierpinski};
use crate::monadlaws::{bumped_mu, check_monad, principal_eta, MonadConfig, MonadInstance, MonadOps};
use crate::report::{CheckEntry, Report};
use crate::scott::{check_scott_props_with, ScottContext};

pub struct Mutation {
    pub name: &'static str,
    pub description: &'static str,
    pub run: fn(&Caps) -> Result<Report>,
}

impl Mutation {
    /// The first failing entry that carries a witness, if any.
    pub fn detect(&self, caps: &Caps) -> Result<Option<CheckEntry>> {
        let report = (self.run)(caps)?.in_suite(&format!("mutation:{}", self.name));
        let hit = report.failures().find(|e| e.witness.is_some()).cloned();
        Ok(hit)
    }
}

pub const MUTATIONS: &[Mutation] = &[
    Mutation {
        name: "broken_imp_cell",
        description: "one residuum cell of chain:3 raised to the top (1 -> 0 := 1)",
        run: broken_imp_cell,
    },
    Mutation {
        name: "non_pointed_eta",
        description: "unit sends the first point of the Sierpinski space to the principal filter of the empty L-subset",
        run: non_pointed_eta,
    },
    Mutation {
        name: "bumped_mu",
        description: "multiplication raises one value of mu([u0]) to the top",
        run: bumped_mu_mutation,
    },
    Mutation {
        name: "swapped_r",
        description: "structure map of the crisp 2-chain composed with a swap of two filters with different images",
        run: swapped_r,
    },
    Mutation {
        name: "constant_r",
        description: "structure map of the crisp 2-chain replaced by the constant map to the top",
        run: constant_r,
    },
    Mutation {
        name: "shrunk_base",
        description: "base of the discrete 2-point space reduced to a single singleton",
        run: shrunk_base,
    },
    Mutation {
        name: "dropped_scott_base",
        description: "upper way-below set of the bottom point removed from the Scott base of (chain:3, e_L)",
        run: dropped_scott_base,
    },
    Mutation {
        name: "wrong_waybelow_entry",
        description: "way-below value of (bottom, top) in (chain:3, e_L) set to 1",
        run: wrong_waybelow_entry,
    },
    Mutation {
        name: "broken_order_matrix",
        description: "crisp 3-chain with e(0,2) lowered to 0, breaking transitivity",
        run: broken_order_matrix,
    },
    Mutation {
        name: "dropped_constant_open",
        description: "constant open c1 removed from the Sierpinski space over chain:3",
        run: dropped_constant_open,
    },
];

pub fn find(name: &str) -> Option<&'static Mutation> {
    MUTATIONS.iter().find(|m| m.name == name)
}

fn chain(n: usize, caps: &Caps) -> Result<Arc<Frame>> {
    Ok(Arc::new(Frame::chain_capped(n, caps)?))
}

fn broken_imp_cell(caps: &Caps) -> Result<Report> {
    let f = chain(3, caps)?;
    let g = f.with_imp_override(f.top(), f.bottom(), f.top());
    Ok(check_frame_laws_with(&g, caps, DEFAULT_LAW_SEED))
}

fn sierpinski_monad(caps: &Caps) -> Result<MonadInstance> {
    let x = Arc::new(sierpinski(chain(2, caps)?, caps)?);
    MonadInstance::new(x, &MonadConfig::from_caps(caps), caps)
}

fn non_pointed_eta(caps: &Caps) -> Result<Report> {
    let inst = sierpinski_monad(caps)?;
    let ops = MonadOps { eta: principal_eta(), ..MonadOps::default() };
    Ok(check_monad(&inst, &ops, caps))
}

fn bumped_mu_mutation(caps: &Caps) -> Result<Report> {
    let inst = sierpinski_monad(caps)?;
    let ops = MonadOps { mu: bumped_mu(), ..MonadOps::default() };
    Ok(check_monad(&inst, &ops, caps))
}

fn chain_algebra(caps: &Caps) -> Result<AlgebraWitness> {
    let order = LOrder::crisp_chain(chain(2, caps)?, 2)?;
    Ok(structure_map_r(&order, caps)?.witness)
}

fn swapped_r(caps: &Caps) -> Result<Report> {
    let w = chain_algebra(caps)?;
    let n = w.r.len();
    let (a, b) = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| w.r[a] != w.r[b])
        .ok_or_else(|| Error::Precondition("structure map is constant".into()))?;
    check_algebra_is_lattice(&w.with_swapped(a, b), caps)
}

fn constant_r(caps: &Caps) -> Result<Report> {
    let w = chain_algebra(caps)?;
    let top = w.space.len() - 1;
    let r = vec![top; w.r.len()];
    let w = AlgebraWitness::with_filters(w.space.clone(), w.filter_space.clone(), r, Provenance::UserSupplied)?;
    check_algebra_is_lattice(&w, caps)
}

fn shrunk_base(caps: &Caps) -> Result<Report> {
    let f = chain(2, caps)?;
    let x = discrete(f.clone(), 2, caps)?;
    let first = x
        .open_index(&LSubset::characteristic(&f, 2, &[0]))
        .ok_or_else(|| Error::Violation("singleton is not open in a discrete space".into()))?;
    Ok(check_base_identity(&x.with_base(vec![first])?))
}

fn self_order_chain3(caps: &Caps) -> Result<ScottContext> {
    ScottContext::new(LOrder::self_order(chain(3, caps)?), caps)
}

fn dropped_scott_base(caps: &Caps) -> Result<Report> {
    let ctx = self_order_chain3(caps)?;
    let wb = ctx.way_below();
    let bot = ctx.order().frame().bottom().idx();
    let base: Vec<LSubset> = (0..ctx.order().len()).filter(|&x| x != bot).map(|x| wb.upper(x)).collect();
    Ok(check_scott_props_with(&ctx, &wb, Some(&base)))
}

fn wrong_waybelow_entry(caps: &Caps) -> Result<Report> {
    let ctx = self_order_chain3(caps)?;
    let f = ctx.order().frame();
    let (bot, top) = (f.bottom().idx(), f.top().idx());
    let wb = ctx.way_below().with_entry(bot, top, f.top());
    Ok(check_scott_props_with(&ctx, &wb, None))
}

fn broken_order_matrix(caps: &Caps) -> Result<Report> {
    let good = LOrder::crisp_chain(chain(2, caps)?, 3)?;
    let mut e: Vec<Elem> = good.matrix().to_vec();
    e[2] = good.frame().bottom();
    Ok(LOrder::new_unchecked(good.frame_arc().clone(), good.names().to_vec(), e)?.check_axioms())
}

fn dropped_constant_open(caps: &Caps) -> Result<Report> {
    let f = chain(3, caps)?;
    let x = sierpinski(f.clone(), caps)?;
    let c1 = f.elem("c1").ok_or_else(|| Error::Violation("chain:3 has no c1".into()))?;
    let i = x.constant_index(c1).ok_or_else(|| Error::Violation("constant c1 is not open".into()))?;
    Ok(check_topology(&x.without_open(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_registered_with_unique_names() {
        assert_eq!(MUTATIONS.len(), 10);
        for (i, m) in MUTATIONS.iter().enumerate() {
            assert!(MUTATIONS[i + 1..].iter().all(|o| o.name != m.name));
            assert_eq!(find(m.name).unwrap().name, m.name);
        }
    }

    #[test]
    fn every_mutation_is_caught() {
        let caps = Caps::default();
        for m in MUTATIONS {
            let hit = m.detect(&caps).unwrap();
            let e = hit.unwrap_or_else(|| panic!("{} not caught", m.name));
            assert!(!e.witness.unwrap().is_empty(), "{}", m.name);
        }
    }

    #[test]
    fn expected_laws_fire() {
        let caps = Caps::default();
        let fails = |name: &str| -> Vec<String> {
            let r = (find(name).unwrap().run)(&caps).unwrap();
            r.failures().map(|e| e.law.clone()).collect()
        };
        assert!(fails("broken_imp_cell").iter().any(|l| l == "heyting.adjunction"));
        assert!(fails("bumped_mu").iter().any(|l| l == "monad.left_unit"));
        assert!(fails("non_pointed_eta").iter().any(|l| l == "monad.eta_natural"));
        assert!(fails("shrunk_base").iter().any(|l| l == "top.base_identity"));
        assert!(fails("wrong_waybelow_entry").iter().any(|l| l == "scott.waybelow_below"));
        assert!(fails("dropped_scott_base").iter().any(|l| l == "scott.upper_waybelow_base"));
        assert!(fails("broken_order_matrix").iter().any(|l| l == "order.transitive"));
    }
}
