//! Candidate classes of small maps and the axiom suite that checks them on
//! finite fragments.
//!
//! Verdicts are four-valued. Full models of the axiom system are necessarily
//! infinite, so finite truncations honestly fail some axioms; the suite must
//! distinguish "fails mathematically" (REFUTED, with a replayable
//! counterexample) from "search exhausted" (INCONCLUSIVE). WITNESSED is
//! reserved for checks backed by a verified analytic witness or a complete
//! finite verification.

mod axioms;
pub mod fullness;
pub mod power;
pub mod separation;
pub mod subcat;

pub use axioms::{
    catalog_arrows, check_axiom, check_descent_counterexample_suite, pi_along, run_suite,
};
pub use power::{power_class, PowerClassData};

use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::finset::{subset_mono, SkeletalFinSet};
use crate::fincat::slice::{SliceArr, SliceCat};
use crate::fincat::Category;

/// Axiom identifiers for the small-map suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    C,
    R,
    RStrong,
    PiE,
    WE,
    HB,
    US,
    BE,
    NE,
    NS,
    PE,
    PS,
    M,
    F,
    PiS,
}

impl AxiomId {
    pub const ALL: [AxiomId; 21] = [
        AxiomId::A1,
        AxiomId::A2,
        AxiomId::A3,
        AxiomId::A4,
        AxiomId::A5,
        AxiomId::A6,
        AxiomId::C,
        AxiomId::R,
        AxiomId::RStrong,
        AxiomId::PiE,
        AxiomId::WE,
        AxiomId::HB,
        AxiomId::US,
        AxiomId::BE,
        AxiomId::NE,
        AxiomId::NS,
        AxiomId::PE,
        AxiomId::PS,
        AxiomId::M,
        AxiomId::F,
        AxiomId::PiS,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AxiomId::A1 => "A1",
            AxiomId::A2 => "A2",
            AxiomId::A3 => "A3",
            AxiomId::A4 => "A4",
            AxiomId::A5 => "A5",
            AxiomId::A6 => "A6",
            AxiomId::C => "C",
            AxiomId::R => "R",
            AxiomId::RStrong => "R-strong",
            AxiomId::PiE => "PiE",
            AxiomId::WE => "WE",
            AxiomId::HB => "HB",
            AxiomId::US => "US",
            AxiomId::BE => "BE",
            AxiomId::NE => "NE",
            AxiomId::NS => "NS",
            AxiomId::PE => "PE",
            AxiomId::PS => "PS",
            AxiomId::M => "M",
            AxiomId::F => "F",
            AxiomId::PiS => "PiS",
        }
    }

    pub fn parse(s: &str) -> Option<AxiomId> {
        AxiomId::ALL.iter().copied().find(|a| a.name().eq_ignore_ascii_case(s))
    }
}

impl std::fmt::Display for AxiomId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "WITNESSED")]
    Witnessed,
    #[serde(rename = "PASSED-SAMPLED")]
    PassedSampled,
    #[serde(rename = "REFUTED")]
    Refuted,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Witnessed | Outcome::PassedSampled)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Witnessed => "WITNESSED",
            Outcome::PassedSampled => "PASSED-SAMPLED",
            Outcome::Refuted => "REFUTED",
            Outcome::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A concrete counterexample diagram, replayable through the kernel.
#[derive(Clone, Debug)]
pub enum Counterexample<C: Category> {
    /// (A1): `f` is in the class but its pullback along `p` is not.
    PullbackStability { f: C::Arr, p: C::Arr },
    /// (A2): `p` is a cover, the pullback of `f` along `p` is in the class,
    /// but `f` is not.
    Descent { f: C::Arr, p: C::Arr },
    /// (A3): `f` and `g` are in the class but `f + g` is not.
    Sums { f: C::Arr, g: C::Arr },
    /// (A4): a canonical finite map is missing from the class.
    Finiteness { which: C::Arr },
    /// (A5): `f` and `g` are in the class but `g ∘ f` is not.
    Composition { f: C::Arr, g: C::Arr },
    /// (A6): `p` is a cover, `f ∘ p` is in the class, but `f` is not.
    Quotient { p: C::Arr, f: C::Arr },
    /// (US): the diagonal of `x` is not in the class.
    NotSeparated { x: C::Obj },
    /// (HB): `s` is a bounded subobject of `dom f` but `∀_f s` is not bounded.
    HeytingBounded { f: C::Arr, s: C::Arr },
    /// (M): a mono outside the class.
    MonoNotSmall { m: C::Arr },
    /// (BE): the quotient of `rel` on `x` is not (stably) exact; `along` is
    /// the pullback direction that breaks, when stability fails.
    ExactnessFailure { x: C::Obj, rel: C::Arr, along: Option<C::Arr> },
    /// (PiE)/(PiS): adjunction or smallness failure at a dependent product.
    DependentProduct { f: C::Arr, p: C::Arr, detail: String },
    /// (PE): the power-class classification property failed.
    PowerClass { detail: String },
}

#[derive(Clone, Debug)]
pub enum Evidence<C: Category> {
    None,
    /// Instance census for sampled sweeps.
    Census { instances: usize, detail: String },
    /// Existential search ran out: candidates examined up to the bound.
    NoWitness { bound: usize, candidates: usize, detail: String },
    /// A verified analytic witness backs the verdict.
    Witness { detail: String },
    Counterexample(Counterexample<C>),
}

#[derive(Clone, Debug)]
pub struct AxiomVerdict<C: Category> {
    pub axiom: AxiomId,
    pub outcome: Outcome,
    pub evidence: Evidence<C>,
    pub instances: usize,
}

/// Flat, serializable form of a verdict for reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerdictRecord {
    pub axiom: String,
    pub outcome: Outcome,
    pub evidence: String,
    pub instances: usize,
}

impl<C: Category> AxiomVerdict<C> {
    pub fn record(&self) -> VerdictRecord {
        let evidence = match &self.evidence {
            Evidence::None => String::new(),
            Evidence::Census { instances, detail } => format!(
                "census: {} instances{}{}",
                instances,
                if detail.is_empty() { "" } else { "; " },
                detail
            ),
            Evidence::NoWitness { bound, candidates, detail } => format!(
                "no witness up to size {}: {} candidates rejected{}{}",
                bound,
                candidates,
                if detail.is_empty() { "" } else { "; " },
                detail
            ),
            Evidence::Witness { detail } => format!("witness: {}", detail),
            Evidence::Counterexample(ce) => format!("counterexample: {:?}", ce),
        };
        VerdictRecord {
            axiom: self.axiom.name().to_string(),
            outcome: self.outcome,
            evidence,
            instances: self.instances,
        }
    }
}

/// A universal small map candidate backing (R) analytically.
#[derive(Clone, Debug)]
pub struct UniversalMapWitness<C: Category> {
    pub pi: C::Arr,
}

type Pred<C> = Rc<dyn Fn(&C, &<C as Category>::Arr) -> bool>;
type PowerWitnessFn<C> = Rc<dyn Fn(&C, &<C as Category>::Obj) -> Result<PowerClassData<C>>>;

/// A decidable predicate on the arrows of a host category: the candidate
/// class of small maps. Optional analytic witnesses back the existential
/// axioms for the built-in examples.
#[derive(Clone)]
pub struct MapClass<C: Category> {
    pub name: String,
    pred: Pred<C>,
    pub power_witness: Option<PowerWitnessFn<C>>,
    pub universal_witness: Option<UniversalMapWitness<C>>,
}

impl<C: Category> std::fmt::Debug for MapClass<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MapClass({})", self.name)
    }
}

impl<C: Category> MapClass<C> {
    pub fn from_fn(name: impl Into<String>, pred: impl Fn(&C, &C::Arr) -> bool + 'static) -> Self {
        MapClass {
            name: name.into(),
            pred: Rc::new(pred),
            power_witness: None,
            universal_witness: None,
        }
    }

    pub fn contains(&self, cat: &C, f: &C::Arr) -> bool {
        (self.pred)(cat, f)
    }

    pub fn all_maps() -> Self {
        MapClass::from_fn("all", |_, _| true)
    }

    pub fn monos() -> Self {
        MapClass::from_fn("mono", |cat: &C, f: &C::Arr| cat.is_mono(f))
    }

    pub fn isos() -> Self {
        MapClass::from_fn("iso", |cat: &C, f: &C::Arr| cat.is_iso(f))
    }

    /// Fibre cardinality below `k`, computed via the host's fibre census
    /// (componentwise in presheaf-like categories).
    pub fn fibre_lt(k: usize) -> Self {
        MapClass::from_fn(format!("fibre<{}", k), move |cat: &C, f: &C::Arr| {
            cat.fibre_census(f).map(|c| c.iter().all(|&n| n < k)).unwrap_or(false)
        })
    }

    /// Regression class for descent counterexamples: domain of even size.
    pub fn even_domain() -> Self {
        MapClass::from_fn("even-domain", |cat: &C, f: &C::Arr| cat.obj_size(&cat.dom(f)) % 2 == 0)
    }

    /// Table-driven user class: membership by literal arrow equality.
    pub fn from_table(name: impl Into<String>, table: std::collections::BTreeSet<C::Arr>) -> Self {
        MapClass::from_fn(name, move |_, f: &C::Arr| table.contains(f))
    }
}

impl MapClass<SkeletalFinSet> {
    /// Built-in classes by name: `all`, `fibre<k`, `mono`, `even-domain`,
    /// `iso`; analytic witnesses attached where they exist.
    pub fn builtin(name: &str) -> Option<Self> {
        if let Some(rest) = name.strip_prefix("fibre<") {
            let k: usize = rest.parse().ok()?;
            let mut class = MapClass::fibre_lt(k);
            class.power_witness = Some(finset_power_witness(move |size| size < k));
            return Some(class);
        }
        match name {
            "all" => {
                let mut class = MapClass::all_maps();
                class.power_witness = Some(finset_power_witness(|_| true));
                Some(class)
            }
            "mono" => {
                let mut class = MapClass::monos();
                class.power_witness = Some(finset_power_witness(|size| size <= 1));
                Some(class)
            }
            "even-domain" => Some(MapClass::even_domain()),
            "iso" => {
                let mut class = MapClass::isos();
                class.universal_witness =
                    Some(UniversalMapWitness { pi: SkeletalFinSet.identity(&1) });
                Some(class)
            }
            _ => None,
        }
    }
}

/// Power-class witness for skeletal finite sets: `P_s(C)` consists of the
/// subsets admitted by the class (all subsets for the all-maps class), with
/// the membership relation in the canonical product encoding.
fn finset_power_witness(admit: impl Fn(usize) -> bool + 'static) -> PowerWitnessFn<SkeletalFinSet> {
    Rc::new(move |_cat: &SkeletalFinSet, c: &usize| {
        if *c > 16 {
            return Err(Error::resource("building a power class", format!("2^{} subsets", c)));
        }
        let masks: Vec<u32> =
            (0u32..(1u32 << *c)).filter(|m| admit(m.count_ones() as usize)).collect();
        let p = masks.len();
        // membership ∈_C ⊆ C × P_s(C), pairs encoded c * p + s
        let mut elems = Vec::new();
        for (s, mask) in masks.iter().enumerate() {
            for i in 0..*c {
                if mask & (1 << i) != 0 {
                    elems.push(i * p + s);
                }
            }
        }
        elems.sort_unstable();
        let membership = subset_mono(c * p, &elems);
        Ok(PowerClassData { base: *c, carrier: p, membership })
    })
}

/// The induced class on a slice category: an arrow over the anchor belongs
/// iff its underlying arrow belongs to the base class.
pub fn slice_class<C: Category + Clone + 'static>(
    class: &MapClass<C>,
    _anchor: &C::Obj,
) -> MapClass<SliceCat<C>> {
    let inner = class.clone();
    MapClass::from_fn(format!("{}/slice", class.name), move |cat: &SliceCat<C>, f: &SliceArr<C>| {
        inner.contains(&cat.base, &f.tri)
    })
}
