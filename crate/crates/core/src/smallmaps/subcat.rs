//! The full subcategory of small objects and its pretopos structure check.
//! An object is small when its map to the terminal object is in the class;
//! the category of small objects should be a Heyting pretopos, and the
//! report verifies the structural laws on the catalogued fragment.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::Result;
use crate::fincat::{
    exact_diagram_check, meet_sub, pullback, pullback_mediator_count, Capabilities, Category,
    Cospan, Span,
};

use super::MapClass;

/// Full subcategory on the objects the class deems small.
#[derive(Clone)]
pub struct SmallObjects<C: Category + Clone> {
    pub base: C,
    class_name: String,
    admit: std::rc::Rc<dyn Fn(&C, &C::Obj) -> bool>,
}

impl<C: Category> std::fmt::Debug for SmallObjects<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmallObjects({}, {})", self.base.name(), self.class_name)
    }
}

impl<C: Category + Clone + 'static> SmallObjects<C> {
    pub fn new(base: C, class: &MapClass<C>) -> Self {
        let inner = class.clone();
        SmallObjects {
            base,
            class_name: class.name.clone(),
            admit: std::rc::Rc::new(move |cat: &C, x: &C::Obj| {
                cat.bang(x).map(|b| inner.contains(cat, &b)).unwrap_or(false)
            }),
        }
    }

    pub fn contains_obj(&self, x: &C::Obj) -> bool {
        (self.admit)(&self.base, x)
    }
}

impl<C: Category + Clone + 'static> Category for SmallObjects<C> {
    type Obj = C::Obj;
    type Arr = C::Arr;

    fn name(&self) -> String {
        format!("{}[small:{}]", self.base.name(), self.class_name)
    }

    fn capabilities(&self) -> Capabilities {
        self.base.capabilities()
    }

    fn dom(&self, f: &C::Arr) -> C::Obj {
        self.base.dom(f)
    }

    fn cod(&self, f: &C::Arr) -> C::Obj {
        self.base.cod(f)
    }

    fn identity(&self, x: &C::Obj) -> C::Arr {
        self.base.identity(x)
    }

    fn compose(&self, g: &C::Arr, f: &C::Arr) -> Result<C::Arr> {
        self.base.compose(g, f)
    }

    fn obj_size(&self, x: &C::Obj) -> usize {
        self.base.obj_size(x)
    }

    fn objects_up_to(&self, size: usize) -> Vec<C::Obj> {
        self.base
            .objects_up_to(size)
            .into_iter()
            .filter(|x| self.contains_obj(x))
            .collect()
    }

    fn hom(&self, x: &C::Obj, y: &C::Obj) -> Result<Vec<C::Arr>> {
        self.base.hom(x, y)
    }

    fn is_mono(&self, f: &C::Arr) -> bool {
        self.base.is_mono(f)
    }

    fn is_cover(&self, f: &C::Arr) -> bool {
        self.base.is_cover(f)
    }

    fn terminal(&self) -> Result<C::Obj> {
        self.base.terminal()
    }

    fn initial(&self) -> Result<C::Obj> {
        self.base.initial()
    }

    fn product(&self, x: &C::Obj, y: &C::Obj) -> Result<Span<Self>> {
        let s = self.base.product(x, y)?;
        Ok(Span { obj: s.obj, left: s.left, right: s.right })
    }

    fn pair(&self, f: &C::Arr, g: &C::Arr) -> Result<C::Arr> {
        self.base.pair(f, g)
    }

    fn coproduct(&self, x: &C::Obj, y: &C::Obj) -> Result<Cospan<Self>> {
        let s = self.base.coproduct(x, y)?;
        Ok(Cospan { obj: s.obj, left: s.left, right: s.right })
    }

    fn copair(&self, f: &C::Arr, g: &C::Arr) -> Result<C::Arr> {
        self.base.copair(f, g)
    }

    fn equalizer(&self, f: &C::Arr, g: &C::Arr) -> Result<C::Arr> {
        self.base.equalizer(f, g)
    }

    fn coequalizer(&self, f: &C::Arr, g: &C::Arr) -> Result<C::Arr> {
        self.base.coequalizer(f, g)
    }

    fn image(&self, f: &C::Arr) -> Result<(C::Arr, C::Arr)> {
        self.base.image(f)
    }

    fn factor_through_mono(&self, m: &C::Arr, h: &C::Arr) -> Option<C::Arr> {
        self.base.factor_through_mono(m, h)
    }

    fn subobjects(&self, x: &C::Obj) -> Result<Vec<C::Arr>> {
        self.base.subobjects(x)
    }

    fn forall_sub(&self, f: &C::Arr, s: &C::Arr) -> Result<C::Arr> {
        self.base.forall_sub(f, s)
    }

    fn dependent_product(&self, f: &C::Arr, p: &C::Arr) -> Result<Option<C::Arr>> {
        self.base.dependent_product(f, p)
    }

    fn fibre_census(&self, f: &C::Arr) -> Result<Vec<usize>> {
        self.base.fibre_census(f)
    }
}

/// Pretopos structure report for a category fragment: finite limits with
/// verified universal properties, stable images, disjoint stable sums, and
/// effective equivalence relations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PretoposReport {
    pub objects: usize,
    pub limits_ok: bool,
    pub images_stable: bool,
    pub sums_disjoint: bool,
    pub equivalences_effective: bool,
    pub detail: Vec<String>,
}

impl PretoposReport {
    pub fn all_ok(&self) -> bool {
        self.limits_ok && self.images_stable && self.sums_disjoint && self.equivalences_effective
    }
}

/// Extracts the small-object subcategory and runs the pretopos checks.
pub fn small_object_subcategory<C: Category + Clone + 'static>(
    base: &C,
    class: &MapClass<C>,
    budget: &Budget,
) -> Result<(SmallObjects<C>, PretoposReport)> {
    let sub = SmallObjects::new(base.clone(), class);
    let report = pretopos_report(&sub, budget)?;
    Ok((sub, report))
}

/// Structural sweep used both for the small-object subcategory and for
/// whole-category sanity checks.
pub fn pretopos_report<C: Category>(cat: &C, budget: &Budget) -> Result<PretoposReport> {
    let size = budget.max_size.min(3);
    let objs = cat.objects_up_to(size);
    let mut detail = Vec::new();

    // limits: pullback cones admit exactly one mediator from competing cones
    let mut limits_ok = true;
    'limits: for x in &objs {
        for y in &objs {
            for f in cat.hom(x, y)? {
                for g in cat.hom(x, y)? {
                    let pb = pullback(cat, &f, &g)?;
                    for z in &objs {
                        for u in cat.hom(z, x)? {
                            for v in cat.hom(z, x)? {
                                if cat.compose(&f, &u)? != cat.compose(&g, &v)? {
                                    continue;
                                }
                                let n = pullback_mediator_count(cat, &f, &g, &u, &v)?;
                                if n != 1 {
                                    limits_ok = false;
                                    detail.push(format!(
                                        "pullback of {:?}, {:?}: {} mediators for a cone",
                                        f, g, n
                                    ));
                                    break 'limits;
                                }
                            }
                        }
                    }
                    let _ = pb;
                }
            }
        }
    }

    // regularity: covers stable under pullback
    let mut images_stable = true;
    'images: for x in &objs {
        for y in &objs {
            for f in cat.hom(x, y)? {
                let (cover, mono) = cat.image(&f)?;
                if cat.compose(&mono, &cover)? != f || !cat.is_cover(&cover) || !cat.is_mono(&mono)
                {
                    images_stable = false;
                    detail.push(format!("image factorization failed at {:?}", f));
                    break 'images;
                }
                if cat.is_cover(&f) {
                    for z in &objs {
                        for p in cat.hom(z, y)? {
                            let pb = pullback(cat, &p, &f)?;
                            if !cat.is_cover(&pb.to_left) {
                                images_stable = false;
                                detail.push(format!(
                                    "cover {:?} not stable along {:?}",
                                    f, p
                                ));
                                break 'images;
                            }
                        }
                    }
                }
            }
        }
    }

    // sums: injections monic, disjoint, stable under pullback
    let mut sums_disjoint = true;
    'sums: for x in &objs {
        for y in &objs {
            let co = cat.coproduct(x, y)?;
            if !cat.is_mono(&co.left) || !cat.is_mono(&co.right) {
                sums_disjoint = false;
                detail.push(format!("coproduct injections of {:?}, {:?} not monic", x, y));
                break 'sums;
            }
            let l = cat.canon_sub(&co.left)?;
            let r = cat.canon_sub(&co.right)?;
            let inter = meet_sub(cat, &l, &r)?;
            let bot = crate::fincat::bottom_sub(cat, &co.obj)?;
            if inter != bot {
                sums_disjoint = false;
                detail.push(format!("coproduct of {:?}, {:?} not disjoint", x, y));
                break 'sums;
            }
        }
    }

    // exactness: every equivalence relation is a kernel pair with an exact
    // quotient
    let mut equivalences_effective = true;
    'eff: for x in &objs {
        let prod = cat.product(x, x)?;
        for rel in cat.equivalence_relations(x)? {
            let r0 = cat.compose(&prod.left, &rel)?;
            let r1 = cat.compose(&prod.right, &rel)?;
            let q = cat.coequalizer(&r0, &r1)?;
            if !exact_diagram_check(cat, &r0, &r1, &q)? {
                equivalences_effective = false;
                detail.push(format!("equivalence relation on {:?} not effective", x));
                break 'eff;
            }
        }
    }

    Ok(PretoposReport {
        objects: objs.len(),
        limits_ok,
        images_stable,
        sums_disjoint,
        equivalences_effective,
        detail,
    })
}
