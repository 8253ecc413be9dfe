//! Kernel for computable categories with Heyting structure and sums.
//!
//! A [`Category`] is a computable presentation: objects and arrows have
//! decidable equality, hom-sets between catalogued objects are finitely
//! enumerable, and the structural operations (finite limits, images,
//! coproducts, subobject lattices) are total constructors wherever the
//! corresponding capability is declared.
//!
//! Canonical forms matter throughout: `image` and `subobjects` must agree on
//! one canonical mono per subobject, so lattice elements have value identity.

pub mod finset;
pub mod lattice;
pub mod present;
pub mod presheaf;
pub mod slice;

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Structure a category presentation claims to support. Every declared
/// capability must be witnessed by a total constructor; the built-in
/// categories declare all four.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Capabilities {
    pub finite_limits: bool,
    pub regular: bool,
    pub sums: bool,
    pub heyting: bool,
}

impl Capabilities {
    pub fn all() -> Self {
        Capabilities { finite_limits: true, regular: true, sums: true, heyting: true }
    }
}

/// Binary product cone: `obj` with projections `left` and `right`.
#[derive(Clone, Debug)]
pub struct Span<C: Category + ?Sized> {
    pub obj: C::Obj,
    pub left: C::Arr,
    pub right: C::Arr,
}

/// Binary coproduct cocone: `obj` with injections `left` and `right`.
#[derive(Clone, Debug)]
pub struct Cospan<C: Category + ?Sized> {
    pub obj: C::Obj,
    pub left: C::Arr,
    pub right: C::Arr,
}

/// Pullback cone of a cospan `f: A -> T <- B :g`.
#[derive(Clone, Debug)]
pub struct Pullback<C: Category + ?Sized> {
    pub obj: C::Obj,
    pub to_left: C::Arr,
    pub to_right: C::Arr,
}

/// A computable category presentation.
///
/// Values implementing this trait are immutable after construction and all
/// operations are pure, so they are safe to share across concurrent check
/// workers.
pub trait Category: Clone + Debug {
    type Obj: Clone + Eq + Ord + Hash + Debug + 'static;
    type Arr: Clone + Eq + Ord + Hash + Debug + 'static;

    fn name(&self) -> String;

    fn capabilities(&self) -> Capabilities {
        Capabilities::all()
    }

    fn dom(&self, f: &Self::Arr) -> Self::Obj;
    fn cod(&self, f: &Self::Arr) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Arr;

    /// `g` after `f`. Errors when `cod f != dom g`.
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Result<Self::Arr>;

    /// Size measure used by instance generators and budgets.
    fn obj_size(&self, x: &Self::Obj) -> usize;

    /// Deterministic catalog of objects up to the size bound.
    fn objects_up_to(&self, size: usize) -> Vec<Self::Obj>;

    /// Finite enumeration of the hom-set, in a deterministic order.
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Arr>>;

    fn is_mono(&self, f: &Self::Arr) -> bool;

    /// Covers are regular epimorphisms.
    fn is_cover(&self, f: &Self::Arr) -> bool;

    fn is_iso(&self, f: &Self::Arr) -> bool {
        self.is_mono(f) && self.is_cover(f)
    }

    fn terminal(&self) -> Result<Self::Obj>;
    fn initial(&self) -> Result<Self::Obj>;

    fn product(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Span<Self>>;

    /// Mediating arrow `<f, g>` into the canonical product of the codomains.
    fn pair(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr>;

    fn coproduct(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Cospan<Self>>;

    /// Mediating arrow `[f, g]` out of the canonical coproduct of the domains.
    fn copair(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr>;

    /// Canonical mono presenting the equalizer of a parallel pair.
    fn equalizer(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr>;

    /// Canonical cover presenting the coequalizer of a parallel pair.
    fn coequalizer(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr>;

    /// Cover-mono factorization `f = mono ∘ cover`, with the mono canonical.
    fn image(&self, f: &Self::Arr) -> Result<(Self::Arr, Self::Arr)>;

    /// For a mono `m: S -> X` and `h: Z -> X` that factors through it,
    /// the unique `Z -> S`; `None` when `h` does not factor.
    fn factor_through_mono(&self, m: &Self::Arr, h: &Self::Arr) -> Option<Self::Arr>;

    /// For a cover `c: X -> Q` and `h: X -> Z` constant on the fibres of `c`,
    /// the unique `Q -> Z` with `u ∘ c = h`; `None` otherwise.
    fn factor_through_cover(&self, c: &Self::Arr, h: &Self::Arr) -> Option<Self::Arr>
    where
        Self: Sized,
    {
        let candidates = self.hom(&self.cod(c), &self.cod(h)).ok()?;
        candidates.into_iter().find(|u| self.compose(u, c).ok().as_ref() == Some(h))
    }

    /// Canonical monos into `x`, one per subobject, in a deterministic order.
    fn subobjects(&self, x: &Self::Obj) -> Result<Vec<Self::Arr>>;

    /// Canonical representative of the subobject presented by the mono `m`.
    fn canon_sub(&self, m: &Self::Arr) -> Result<Self::Arr> {
        Ok(self.image(m)?.1)
    }

    /// Right adjoint to pullback of subobjects: for `f: X -> Y` and a
    /// canonical sub `s` of `X`, the canonical sub `∀_f s` of `Y`.
    fn forall_sub(&self, f: &Self::Arr, s: &Self::Arr) -> Result<Self::Arr>
    where
        Self: Sized,
    {
        // Galois-connection fallback: join of all T with f*T <= s.
        let cod = self.cod(f);
        let mut acc = bottom_sub(self, &cod)?;
        for t in self.subobjects(&cod)? {
            let pulled = pullback_sub(self, f, &t)?;
            if leq_sub(self, &pulled, s) {
                acc = join_sub(self, &acc, &t)?;
            }
        }
        Ok(acc)
    }

    /// Canonical monos into the canonical product `x × x` that present
    /// equivalence relations on `x`.
    fn equivalence_relations(&self, x: &Self::Obj) -> Result<Vec<Self::Arr>>
    where
        Self: Sized,
    {
        let prod = self.product(x, x)?;
        let mut rels = Vec::new();
        for m in self.subobjects(&prod.obj)? {
            if is_equivalence_relation(self, x, &prod, &m)? {
                rels.push(m);
            }
        }
        Ok(rels)
    }

    /// Dependent product: for `f: X -> Y` and `p: Z -> X`, the object
    /// `Π_f p` over `Y` (returned as its structure arrow to `Y`), when the
    /// category supports it.
    fn dependent_product(&self, _f: &Self::Arr, _p: &Self::Arr) -> Result<Option<Self::Arr>> {
        Ok(None)
    }

    /// Fibre cardinality census of an arrow, ordered deterministically.
    /// In presheaf-like categories this counts componentwise.
    fn fibre_census(&self, f: &Self::Arr) -> Result<Vec<usize>>;

    /// Optional isomorphism-invariant key used to deduplicate search
    /// candidates. `None` disables deduplication.
    fn arrow_iso_key(&self, _f: &Self::Arr) -> Option<u64> {
        None
    }

    /// Decides whether the representability diagram for candidate `pi: E -> U`
    /// and map `f: X -> Y` can be completed within the search bound: a cover
    /// `p: B -> Y`, a map `u: B -> U` with `A = B ×_U E`, and a fill
    /// `t: A -> X` making the left square a quasi-pullback (a pullback in
    /// strong mode). `Some(found)` when the bounded search is exhaustive,
    /// `None` when it ran out of budget undecided.
    fn representability_fill(
        &self,
        pi: &Self::Arr,
        f: &Self::Arr,
        search_size: usize,
        hom_cap: usize,
        strong: bool,
    ) -> Option<bool>
    where
        Self: Sized,
    {
        let y = self.cod(f);
        let u_obj = self.cod(pi);
        let mut undecided = false;
        for b in self.objects_up_to(search_size) {
            let covers = match self.hom(&b, &y) {
                Ok(hs) => hs,
                Err(_) => {
                    undecided = true;
                    continue;
                }
            };
            for p in covers.into_iter().filter(|p| self.is_cover(p)) {
                let us = match self.hom(&b, &u_obj) {
                    Ok(hs) => hs,
                    Err(_) => {
                        undecided = true;
                        continue;
                    }
                };
                for u in us {
                    let pb = match pullback(self, pi, &u) {
                        Ok(pb) => pb,
                        Err(_) => {
                            undecided = true;
                            continue;
                        }
                    };
                    let a_to_b = pb.to_right;
                    let fills = match self.hom(&pb.obj, &self.dom(f)) {
                        Ok(hs) if hs.len() <= hom_cap => hs,
                        _ => {
                            undecided = true;
                            continue;
                        }
                    };
                    let target = match self.compose(&p, &a_to_b) {
                        Ok(t) => t,
                        Err(_) => continue,
                    };
                    for t in fills {
                        if self.compose(f, &t).ok().as_ref() != Some(&target) {
                            continue;
                        }
                        let ok = match pullback_mediator(self, f, &p, &t, &a_to_b) {
                            Ok(Some(m)) => {
                                if strong {
                                    self.is_iso(&m)
                                } else {
                                    self.is_cover(&m)
                                }
                            }
                            _ => false,
                        };
                        if ok {
                            return Some(true);
                        }
                    }
                }
            }
        }
        if undecided {
            None
        } else {
            Some(false)
        }
    }

    /// Cumulative W-type census by iterating the polynomial functor of `f`
    /// on cardinalities, when fibre censuses determine the functor exactly
    /// (true for skeletal finite sets). Returns per-depth cumulative counts
    /// and a convergence flag.
    fn wtype_census(&self, _f: &Self::Arr, _depth: usize) -> Option<(Vec<usize>, bool)> {
        None
    }

    /// Builds an arrow into `cod` with the prescribed fibre census, when the
    /// category has canonical such arrows (skeletal finite sets).
    fn arrow_with_fibres(&self, _fibres: &[usize], _cod: &Self::Obj) -> Option<Self::Arr> {
        None
    }

    /// The unique arrow to the terminal object.
    fn bang(&self, x: &Self::Obj) -> Result<Self::Arr>
    where
        Self: Sized,
    {
        let t = self.terminal()?;
        self.hom(x, &t)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Malformed(format!("no arrow {:?} -> terminal", x)))
    }

    fn global_points(&self, x: &Self::Obj) -> Result<Vec<Self::Arr>>
    where
        Self: Sized,
    {
        let t = self.terminal()?;
        self.hom(&t, x)
    }
}

/// Pullback of `f: A -> T <- B :g`, computed through the canonical product
/// and equalizer. The cone is deterministic but the choice among isomorphic
/// cones is an artifact convention.
pub fn pullback<C: Category>(cat: &C, f: &C::Arr, g: &C::Arr) -> Result<Pullback<C>> {
    if cat.cod(f) != cat.cod(g) {
        return Err(Error::Precondition(format!(
            "pullback requires a shared codomain, got {:?} and {:?}",
            cat.cod(f),
            cat.cod(g)
        )));
    }
    if !cat.capabilities().finite_limits {
        return Err(Error::unsupported(cat.name(), "finite limits"));
    }
    let prod = cat.product(&cat.dom(f), &cat.dom(g))?;
    let fp = cat.compose(f, &prod.left)?;
    let gp = cat.compose(g, &prod.right)?;
    let e = cat.equalizer(&fp, &gp)?;
    Ok(Pullback {
        obj: cat.dom(&e),
        to_left: cat.compose(&prod.left, &e)?,
        to_right: cat.compose(&prod.right, &e)?,
    })
}

/// Mediating arrow into the canonical pullback of `(f, g)` for a competing
/// cone `(u, v)`; `None` when the cone does not commute.
pub fn pullback_mediator<C: Category>(
    cat: &C,
    f: &C::Arr,
    g: &C::Arr,
    u: &C::Arr,
    v: &C::Arr,
) -> Result<Option<C::Arr>> {
    if cat.compose(f, u)? != cat.compose(g, v)? {
        return Ok(None);
    }
    let prod = cat.product(&cat.dom(f), &cat.dom(g))?;
    let fp = cat.compose(f, &prod.left)?;
    let gp = cat.compose(g, &prod.right)?;
    let e = cat.equalizer(&fp, &gp)?;
    Ok(cat.factor_through_mono(&e, &cat.pair(u, v)?))
}

/// All arrows `z -> pullback(f, g)` making both triangles commute with the
/// cone `(u, v)`: used by exhaustive universal-property checks.
pub fn pullback_mediator_count<C: Category>(
    cat: &C,
    f: &C::Arr,
    g: &C::Arr,
    u: &C::Arr,
    v: &C::Arr,
) -> Result<usize> {
    let pb = pullback(cat, f, g)?;
    let mut n = 0;
    for m in cat.hom(&cat.dom(u), &pb.obj)? {
        if cat.compose(&pb.to_left, &m)? == *u && cat.compose(&pb.to_right, &m)? == *v {
            n += 1;
        }
    }
    Ok(n)
}

/// Is the commuting square `(p, q, f, g)` with `f ∘ p = g ∘ q` a
/// quasi-pullback, i.e. is the comparison to the inscribed pullback a cover?
pub fn quasi_pullback_check<C: Category>(
    cat: &C,
    p: &C::Arr,
    q: &C::Arr,
    f: &C::Arr,
    g: &C::Arr,
) -> Result<bool> {
    if cat.compose(f, p)? != cat.compose(g, q)? {
        return Err(Error::Precondition("quasi-pullback check needs a commuting square".into()));
    }
    match pullback_mediator(cat, f, g, p, q)? {
        Some(m) => Ok(cat.is_cover(&m)),
        None => Ok(false),
    }
}

pub fn leq_sub<C: Category>(cat: &C, s: &C::Arr, t: &C::Arr) -> bool {
    cat.factor_through_mono(t, s).is_some()
}

pub fn top_sub<C: Category>(cat: &C, x: &C::Obj) -> Result<C::Arr> {
    cat.canon_sub(&cat.identity(x))
}

pub fn bottom_sub<C: Category>(cat: &C, x: &C::Obj) -> Result<C::Arr> {
    let init = cat.initial()?;
    let arrows = cat.hom(&init, x)?;
    let a = arrows
        .into_iter()
        .next()
        .ok_or_else(|| Error::Malformed(format!("no arrow from initial to {:?}", x)))?;
    cat.canon_sub(&a)
}

/// Intersection of canonical subobjects of a shared base.
pub fn meet_sub<C: Category>(cat: &C, s: &C::Arr, t: &C::Arr) -> Result<C::Arr> {
    let pb = pullback(cat, s, t)?;
    cat.canon_sub(&cat.compose(s, &pb.to_left)?)
}

/// Union of canonical subobjects of a shared base (image of the copair).
pub fn join_sub<C: Category>(cat: &C, s: &C::Arr, t: &C::Arr) -> Result<C::Arr> {
    cat.canon_sub(&cat.copair(s, t)?)
}

/// Pullback `f^* t` of a canonical subobject of `cod f` to one of `dom f`.
pub fn pullback_sub<C: Category>(cat: &C, f: &C::Arr, t: &C::Arr) -> Result<C::Arr> {
    let pb = pullback(cat, t, f)?;
    cat.canon_sub(&pb.to_right)
}

/// Direct image `∃_f s` of a canonical subobject of `dom f`.
pub fn exists_sub<C: Category>(cat: &C, f: &C::Arr, s: &C::Arr) -> Result<C::Arr> {
    cat.canon_sub(&cat.compose(f, s)?)
}

/// Heyting implication `s ⇒ t` in `Sub(x)`, computed as `∀_{m_s}(m_s^* t)`.
pub fn imp_sub<C: Category>(cat: &C, s: &C::Arr, t: &C::Arr) -> Result<C::Arr> {
    let pulled = pullback_sub(cat, s, t)?;
    cat.forall_sub(s, &pulled)
}

pub fn neg_sub<C: Category>(cat: &C, s: &C::Arr) -> Result<C::Arr> {
    let bot = bottom_sub(cat, &cat.cod(s))?;
    imp_sub(cat, s, &bot)
}

fn is_equivalence_relation<C: Category>(
    cat: &C,
    x: &C::Obj,
    prod: &Span<C>,
    m: &C::Arr,
) -> Result<bool> {
    // reflexive: the diagonal factors through m
    let id = cat.identity(x);
    let diag = cat.pair(&id, &id)?;
    if cat.factor_through_mono(m, &diag).is_none() {
        return Ok(false);
    }
    // symmetric: swap ∘ m factors through m
    let swap = cat.pair(&prod.right, &prod.left)?;
    let swapped = cat.compose(&swap, m)?;
    if cat.factor_through_mono(m, &swapped).is_none() {
        return Ok(false);
    }
    // transitive: the relational composite factors through m
    let r0 = cat.compose(&prod.left, m)?;
    let r1 = cat.compose(&prod.right, m)?;
    let pb = pullback(cat, &r1, &r0)?;
    let left = cat.compose(&r0, &pb.to_left)?;
    let right = cat.compose(&r1, &pb.to_right)?;
    let composite = cat.pair(&left, &right)?;
    Ok(cat.factor_through_mono(m, &composite).is_some())
}

/// Kernel pair of an arrow as a parallel pair `(r0, r1)` out of the
/// canonical pullback of `f` with itself.
pub fn kernel_pair<C: Category>(cat: &C, f: &C::Arr) -> Result<(C::Arr, C::Arr)> {
    let pb = pullback(cat, f, f)?;
    Ok((pb.to_left, pb.to_right))
}

/// Checks that `r0, r1 : R -> X` with quotient `q : X -> Q` form an exact
/// diagram: `q` coequalizes the pair and the pair is its kernel pair.
pub fn exact_diagram_check<C: Category>(
    cat: &C,
    r0: &C::Arr,
    r1: &C::Arr,
    q: &C::Arr,
) -> Result<bool> {
    if cat.compose(q, r0)? != cat.compose(q, r1)? {
        return Ok(false);
    }
    // Coequalizer universal property against the canonical coequalizer.
    let c = cat.coequalizer(r0, r1)?;
    let via = match cat.factor_through_cover(&c, q) {
        Some(u) => u,
        None => return Ok(false),
    };
    if !cat.is_iso(&via) {
        return Ok(false);
    }
    // Kernel-pair condition: <r0, r1> presents the same subobject of X × X
    // as the kernel pair of q.
    let (k0, k1) = kernel_pair(cat, q)?;
    let rel = cat.canon_sub(&cat.pair(r0, r1)?)?;
    let ker = cat.canon_sub(&cat.pair(&k0, &k1)?)?;
    Ok(rel == ker)
}
