//! Slice categories `C/X`, built generically on top of any kernel category.
//! Objects are arrows into the anchor; limits become pullbacks in the base.

use super::{pullback, Capabilities, Category, Cospan, Span};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SliceCat<C: Category + 'static> {
    pub base: C,
    pub anchor: C::Obj,
}

/// An object of `C/X`: an arrow of the base landing in the anchor.
pub type SliceObj<C> = <C as Category>::Arr;

pub struct SliceArr<C: Category> {
    pub tri: C::Arr,
    pub dom: C::Arr,
    pub cod: C::Arr,
}

impl<C: Category> std::fmt::Debug for SliceArr<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SliceArr")
            .field("tri", &self.tri)
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .finish()
    }
}

impl<C: Category> Clone for SliceArr<C> {
    fn clone(&self) -> Self {
        SliceArr { tri: self.tri.clone(), dom: self.dom.clone(), cod: self.cod.clone() }
    }
}

impl<C: Category> PartialEq for SliceArr<C> {
    fn eq(&self, other: &Self) -> bool {
        (&self.tri, &self.dom, &self.cod) == (&other.tri, &other.dom, &other.cod)
    }
}

impl<C: Category> Eq for SliceArr<C> {}

impl<C: Category> PartialOrd for SliceArr<C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Category> Ord for SliceArr<C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.tri, &self.dom, &self.cod).cmp(&(&other.tri, &other.dom, &other.cod))
    }
}

impl<C: Category> std::hash::Hash for SliceArr<C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tri.hash(state);
        self.dom.hash(state);
        self.cod.hash(state);
    }
}

impl<C: Category + 'static> SliceCat<C> {
    pub fn new(base: C, anchor: C::Obj) -> Self {
        SliceCat { base, anchor }
    }

    fn lift(&self, tri: C::Arr, dom: SliceObj<C>, cod: SliceObj<C>) -> SliceArr<C> {
        SliceArr { tri, dom, cod }
    }
}

impl<C: Category + 'static> Category for SliceCat<C> {
    type Obj = SliceObj<C>;
    type Arr = SliceArr<C>;

    fn name(&self) -> String {
        format!("{}/{:?}", self.base.name(), self.anchor)
    }

    fn capabilities(&self) -> Capabilities {
        self.base.capabilities()
    }

    fn dom(&self, f: &Self::Arr) -> Self::Obj {
        f.dom.clone()
    }

    fn cod(&self, f: &Self::Arr) -> Self::Obj {
        f.cod.clone()
    }

    fn identity(&self, x: &Self::Obj) -> Self::Arr {
        self.lift(self.base.identity(&self.base.dom(x)), x.clone(), x.clone())
    }

    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Result<Self::Arr> {
        if f.cod != g.dom {
            return Err(Error::CompositionMismatch {
                inner: format!("{:?}", f.tri),
                outer: format!("{:?}", g.tri),
            });
        }
        Ok(self.lift(self.base.compose(&g.tri, &f.tri)?, f.dom.clone(), g.cod.clone()))
    }

    fn obj_size(&self, x: &Self::Obj) -> usize {
        self.base.obj_size(&self.base.dom(x))
    }

    fn objects_up_to(&self, size: usize) -> Vec<Self::Obj> {
        let mut out = Vec::new();
        for a in self.base.objects_up_to(size) {
            if let Ok(hs) = self.base.hom(&a, &self.anchor) {
                out.extend(hs);
            }
        }
        out
    }

    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Arr>> {
        let mut out = Vec::new();
        for t in self.base.hom(&self.base.dom(x), &self.base.dom(y))? {
            if self.base.compose(y, &t)? == *x {
                out.push(self.lift(t, x.clone(), y.clone()));
            }
        }
        Ok(out)
    }

    fn is_mono(&self, f: &Self::Arr) -> bool {
        self.base.is_mono(&f.tri)
    }

    fn is_cover(&self, f: &Self::Arr) -> bool {
        self.base.is_cover(&f.tri)
    }

    fn terminal(&self) -> Result<Self::Obj> {
        Ok(self.base.identity(&self.anchor))
    }

    fn initial(&self) -> Result<Self::Obj> {
        let i = self.base.initial()?;
        self.base
            .hom(&i, &self.anchor)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Malformed("no arrow from initial to anchor".into()))
    }

    fn product(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Span<Self>> {
        let pb = pullback(&self.base, x, y)?;
        let obj = self.base.compose(x, &pb.to_left)?;
        Ok(Span {
            left: self.lift(pb.to_left, obj.clone(), x.clone()),
            right: self.lift(pb.to_right, obj.clone(), y.clone()),
            obj,
        })
    }

    fn pair(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr> {
        let span = self.product(&f.cod, &g.cod)?;
        let m = super::pullback_mediator(&self.base, &f.cod, &g.cod, &f.tri, &g.tri)?
            .ok_or_else(|| Error::Malformed("slice pair: cone does not commute".into()))?;
        Ok(self.lift(m, f.dom.clone(), span.obj))
    }

    fn coproduct(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Cospan<Self>> {
        let co = self.base.coproduct(&self.base.dom(x), &self.base.dom(y))?;
        let obj = self.base.copair(x, y)?;
        Ok(Cospan {
            left: self.lift(co.left, x.clone(), obj.clone()),
            right: self.lift(co.right, y.clone(), obj.clone()),
            obj,
        })
    }

    fn copair(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr> {
        if f.cod != g.cod {
            return Err(Error::Precondition("slice copair needs a shared codomain".into()));
        }
        let co = self.coproduct(&f.dom, &g.dom)?;
        Ok(self.lift(self.base.copair(&f.tri, &g.tri)?, co.obj, f.cod.clone()))
    }

    fn equalizer(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr> {
        let e = self.base.equalizer(&f.tri, &g.tri)?;
        let obj = self.base.compose(&f.dom, &e)?;
        Ok(self.lift(e, obj, f.dom.clone()))
    }

    fn coequalizer(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr> {
        let c = self.base.coequalizer(&f.tri, &g.tri)?;
        let anchor_map = self
            .base
            .factor_through_cover(&c, &f.cod)
            .ok_or_else(|| Error::Malformed("slice coequalizer anchor map missing".into()))?;
        Ok(self.lift(c, f.cod.clone(), anchor_map))
    }

    fn image(&self, f: &Self::Arr) -> Result<(Self::Arr, Self::Arr)> {
        let (cover, mono) = self.base.image(&f.tri)?;
        let mid = self.base.compose(&f.cod, &mono)?;
        Ok((
            self.lift(cover, f.dom.clone(), mid.clone()),
            self.lift(mono, mid, f.cod.clone()),
        ))
    }

    fn factor_through_mono(&self, m: &Self::Arr, h: &Self::Arr) -> Option<Self::Arr> {
        if m.cod != h.cod {
            return None;
        }
        let u = self.base.factor_through_mono(&m.tri, &h.tri)?;
        Some(self.lift(u, h.dom.clone(), m.dom.clone()))
    }

    fn factor_through_cover(&self, c: &Self::Arr, h: &Self::Arr) -> Option<Self::Arr> {
        if c.dom != h.dom {
            return None;
        }
        let u = self.base.factor_through_cover(&c.tri, &h.tri)?;
        Some(self.lift(u, c.cod.clone(), h.cod.clone()))
    }

    fn subobjects(&self, x: &Self::Obj) -> Result<Vec<Self::Arr>> {
        let subs = self.base.subobjects(&self.base.dom(x))?;
        subs.into_iter()
            .map(|m| {
                let obj = self.base.compose(x, &m)?;
                Ok(self.lift(m, obj, x.clone()))
            })
            .collect()
    }

    fn canon_sub(&self, m: &Self::Arr) -> Result<Self::Arr> {
        let c = self.base.canon_sub(&m.tri)?;
        let obj = self.base.compose(&m.cod, &c)?;
        Ok(self.lift(c, obj, m.cod.clone()))
    }

    fn forall_sub(&self, f: &Self::Arr, s: &Self::Arr) -> Result<Self::Arr> {
        let r = self.base.forall_sub(&f.tri, &s.tri)?;
        let obj = self.base.compose(&f.cod, &r)?;
        Ok(self.lift(r, obj, f.cod.clone()))
    }

    fn fibre_census(&self, f: &Self::Arr) -> Result<Vec<usize>> {
        self.base.fibre_census(&f.tri)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::finset::{FinArrow, SkeletalFinSet};

    #[test]
    fn slice_products_are_pullbacks() {
        let base = SkeletalFinSet;
        let sl = SliceCat::new(base, 2);
        // objects over 2: p = id_2 and q = twist
        let p = FinArrow::new(2, 2, vec![0, 1]).unwrap();
        let q = FinArrow::new(2, 2, vec![1, 0]).unwrap();
        let prod = sl.product(&p, &q).unwrap();
        // pullback of two bijections over 2 has 2 elements
        assert_eq!(sl.obj_size(&prod.obj), 2);
        let t = sl.terminal().unwrap();
        assert_eq!(sl.hom(&p, &t).unwrap().len(), 1);
    }

    #[test]
    fn slice_subobjects_match_base() {
        let sl = SliceCat::new(SkeletalFinSet, 3);
        let x = FinArrow::new(2, 3, vec![0, 2]).unwrap();
        assert_eq!(sl.subobjects(&x).unwrap().len(), 4);
    }
}
