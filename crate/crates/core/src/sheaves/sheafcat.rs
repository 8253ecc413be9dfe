//! The category of sheaves over a finite site as a full ambient category:
//! limits are presheaf limits, colimits and images go through
//! sheafification and closure, subobjects are the closed subpresheaves.
//! The pointwise-small class is induced from a base class on the value
//! category through the forgetful functor.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::finset::{FinArrow, SkeletalFinSet};
use crate::fincat::presheaf::{PresheafCat, PsArr, PsObj};
use crate::fincat::{Capabilities, Category, Cospan, Span};
use crate::smallmaps::{check_axiom, AxiomId, MapClass};

use super::plus::{closure, extend_along_unit, is_sheaf, sheafify};
use super::site::Site;

#[derive(Clone, Debug)]
pub struct SheafCat {
    pub site: Site,
    psh: PresheafCat,
}

impl SheafCat {
    pub fn new(site: Site) -> Self {
        let psh = PresheafCat::new("psh", site.cat.clone());
        SheafCat { site, psh }
    }

    pub fn presheaves(&self) -> &PresheafCat {
        &self.psh
    }

    fn closed_sections(&self, x: &PsObj, sections: &[Vec<usize>]) -> bool {
        closure(&self.site, x, sections) == sections
    }
}

impl Category for SheafCat {
    type Obj = PsObj;
    type Arr = PsArr;

    fn name(&self) -> String {
        "Sh(site)".into()
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities::all()
    }

    fn dom(&self, f: &PsArr) -> PsObj {
        f.dom.clone()
    }

    fn cod(&self, f: &PsArr) -> PsObj {
        f.cod.clone()
    }

    fn identity(&self, x: &PsObj) -> PsArr {
        self.psh.identity(x)
    }

    fn compose(&self, g: &PsArr, f: &PsArr) -> Result<PsArr> {
        self.psh.compose(g, f)
    }

    fn obj_size(&self, x: &PsObj) -> usize {
        self.psh.obj_size(x)
    }

    fn objects_up_to(&self, size: usize) -> Vec<PsObj> {
        self.psh
            .objects_up_to(size)
            .into_iter()
            .filter(|p| is_sheaf(&self.site, p).unwrap_or(false))
            .collect()
    }

    fn hom(&self, x: &PsObj, y: &PsObj) -> Result<Vec<PsArr>> {
        self.psh.hom(x, y)
    }

    fn is_mono(&self, f: &PsArr) -> bool {
        self.psh.is_mono(f)
    }

    /// Covers in sheaves are the locally surjective maps: the closure of the
    /// pointwise image is everything.
    fn is_cover(&self, f: &PsArr) -> bool {
        let image_sections: Vec<Vec<usize>> = f
            .comps
            .iter()
            .map(|t| {
                let mut v = t.clone();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let closed = closure(&self.site, &f.cod, &image_sections);
        (0..f.cod.sizes.len()).all(|c| closed[c].len() == f.cod.sizes[c])
    }

    fn terminal(&self) -> Result<PsObj> {
        self.psh.terminal()
    }

    fn initial(&self) -> Result<PsObj> {
        Ok(sheafify(&self.site, &self.psh.initial()?)?.sheaf)
    }

    fn product(&self, x: &PsObj, y: &PsObj) -> Result<Span<Self>> {
        let s = self.psh.product(x, y)?;
        Ok(Span { obj: s.obj, left: s.left, right: s.right })
    }

    fn pair(&self, f: &PsArr, g: &PsArr) -> Result<PsArr> {
        self.psh.pair(f, g)
    }

    fn coproduct(&self, x: &PsObj, y: &PsObj) -> Result<Cospan<Self>> {
        let co = self.psh.coproduct(x, y)?;
        let sh = sheafify(&self.site, &co.obj)?;
        Ok(Cospan {
            obj: sh.sheaf.clone(),
            left: self.psh.compose(&sh.unit, &co.left)?,
            right: self.psh.compose(&sh.unit, &co.right)?,
        })
    }

    fn copair(&self, f: &PsArr, g: &PsArr) -> Result<PsArr> {
        if f.cod != g.cod {
            return Err(Error::Precondition("copair needs a shared codomain".into()));
        }
        let co = self.psh.coproduct(&f.dom, &g.dom)?;
        let sh = sheafify(&self.site, &co.obj)?;
        let through = self.psh.copair(f, g)?;
        extend_along_unit(&self.site, &sh, &through)
    }

    fn equalizer(&self, f: &PsArr, g: &PsArr) -> Result<PsArr> {
        self.psh.equalizer(f, g)
    }

    fn coequalizer(&self, f: &PsArr, g: &PsArr) -> Result<PsArr> {
        let q = self.psh.coequalizer(f, g)?;
        let sh = sheafify(&self.site, &q.cod)?;
        self.psh.compose(&sh.unit, &q)
    }

    /// Image factorization: the sheaf image is the closure of the pointwise
    /// image.
    fn image(&self, f: &PsArr) -> Result<(PsArr, PsArr)> {
        let image_sections: Vec<Vec<usize>> = f
            .comps
            .iter()
            .map(|t| {
                let mut v = t.clone();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let closed = closure(&self.site, &f.cod, &image_sections);
        let mono = self.psh.sub_from_sections(&f.cod, &closed)?;
        let comps: Vec<Vec<usize>> = (0..f.comps.len())
            .map(|c| {
                f.comps[c]
                    .iter()
                    .map(|&v| closed[c].binary_search(&v).expect("image inside closure"))
                    .collect()
            })
            .collect();
        let cover = PsArr { dom: f.dom.clone(), cod: mono.dom.clone(), comps };
        Ok((cover, mono))
    }

    fn factor_through_mono(&self, m: &PsArr, h: &PsArr) -> Option<PsArr> {
        self.psh.factor_through_mono(m, h)
    }

    fn subobjects(&self, x: &PsObj) -> Result<Vec<PsArr>> {
        Ok(self
            .psh
            .subobjects(x)?
            .into_iter()
            .filter(|m| self.closed_sections(x, &m.comps))
            .collect())
    }

    fn forall_sub(&self, f: &PsArr, s: &PsArr) -> Result<PsArr> {
        let r = self.psh.forall_sub(f, s)?;
        debug_assert!(self.closed_sections(&f.cod, &r.comps));
        Ok(r)
    }

    fn equivalence_relations(&self, x: &PsObj) -> Result<Vec<PsArr>> {
        let prod_obj = self.psh.product(x, x)?.obj;
        Ok(self
            .psh
            .equivalence_relations(x)?
            .into_iter()
            .filter(|m| self.closed_sections(&prod_obj, &m.comps))
            .collect())
    }

    fn fibre_census(&self, f: &PsArr) -> Result<Vec<usize>> {
        self.psh.fibre_census(f)
    }

    fn bang(&self, x: &PsObj) -> Result<PsArr> {
        self.psh.bang(x)
    }
}

/// The pointwise-small class induced through the forgetful functor: a sheaf
/// morphism belongs iff every component belongs to the base class on the
/// value category.
pub fn pointwise_class(base: &MapClass<SkeletalFinSet>) -> MapClass<SheafCat> {
    let inner = base.clone();
    MapClass::from_fn(format!("{}-pointwise", base.name), move |_cat: &SheafCat, f: &PsArr| {
        let fin = SkeletalFinSet;
        f.comps.iter().enumerate().all(|(c, table)| {
            let arr = FinArrow {
                dom: f.dom.sizes[c],
                cod: f.cod.sizes[c],
                table: table.clone(),
            };
            inner.contains(&fin, &arr)
        })
    })
}

/// Builds the sheaf category with its pointwise-small class. The base class
/// must satisfy the exponentiation axiom (ΠS); this is checked on the value
/// category, not assumed.
pub fn sheaf_category(
    site: &Site,
    base: &MapClass<SkeletalFinSet>,
    budget: &Budget,
) -> Result<(SheafCat, MapClass<SheafCat>)> {
    let fin = SkeletalFinSet;
    let v = check_axiom(&fin, base, AxiomId::PiS, budget);
    if !v.outcome.passed() {
        return Err(Error::Precondition(format!(
            "base class {} fails (PiS) on the value category: {:?}",
            base.name, v.outcome
        )));
    }
    Ok((SheafCat::new(site.clone()), pointwise_class(base)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::present::FinCatPresentation;

    #[test]
    fn sheaves_over_two_object_site_up_to_two() {
        let cat = SheafCat::new(Site::two_object_cover());
        let objs = cat.objects_up_to(2);
        // sheaves are the presheaves with a bijective restriction
        assert_eq!(objs.len(), 4);
        for x in &objs {
            assert_eq!(x.sizes[0], x.sizes[1]);
        }
    }

    #[test]
    fn trivial_site_sheaf_category_is_presheaves() {
        let cat = SheafCat::new(Site::trivial(FinCatPresentation::arrow_category()));
        let sheaves = cat.objects_up_to(2).len();
        let presheaves = cat.presheaves().objects_up_to(2).len();
        assert_eq!(sheaves, presheaves);
    }

    #[test]
    fn subobjects_of_terminal_sheaf_are_closed_sieves() {
        // over the two-object cover site, the subterminal (src-only) is not
        // closed: its membership sieve on tgt is the generated cover
        let cat = SheafCat::new(Site::two_object_cover());
        let t = cat.terminal().unwrap();
        let subs = cat.subobjects(&t).unwrap();
        assert_eq!(subs.len(), 2);
    }
}
