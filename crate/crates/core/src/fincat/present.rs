//! Finitely presented categories: an explicit object list, arrow list and
//! composition table. These serve as index categories for presheaves, as
//! the underlying categories of sites, and as user-loadable ambient
//! categories (`TableCat`) whose structure is found by bounded search.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{Capabilities, Category, Cospan, Span};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowInfo {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category: objects `0..n`, arrows listed explicitly (identities
/// included) with a total composition table on composable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCatPresentation {
    pub obj_names: Vec<String>,
    pub arrows: Vec<ArrowInfo>,
    /// identity arrow id per object
    pub ids: Vec<usize>,
    /// comp[g][f] = g ∘ f for cod f = dom g
    pub comp: Vec<Vec<Option<usize>>>,
}

impl FinCatPresentation {
    pub fn new(
        obj_names: Vec<String>,
        arrows: Vec<ArrowInfo>,
        ids: Vec<usize>,
        comp: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let cat = FinCatPresentation { obj_names, arrows, ids, comp };
        cat.validate()?;
        Ok(cat)
    }

    pub fn n_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn compose_ids(&self, g: usize, f: usize) -> Result<usize> {
        if self.arrows[f].cod != self.arrows[g].dom {
            return Err(Error::CompositionMismatch {
                inner: self.arrows[f].name.clone(),
                outer: self.arrows[g].name.clone(),
            });
        }
        self.comp[g][f].ok_or_else(|| {
            Error::Malformed(format!(
                "composition table is missing {} ∘ {}",
                self.arrows[g].name, self.arrows[f].name
            ))
        })
    }

    pub fn arrows_into(&self, obj: usize) -> Vec<usize> {
        (0..self.n_arrows()).filter(|&a| self.arrows[a].cod == obj).collect()
    }

    pub fn arrows_out_of(&self, obj: usize) -> Vec<usize> {
        (0..self.n_arrows()).filter(|&a| self.arrows[a].dom == obj).collect()
    }

    fn validate(&self) -> Result<()> {
        let n = self.n_objects();
        let m = self.n_arrows();
        if self.ids.len() != n {
            return Err(Error::Malformed("one identity per object required".into()));
        }
        for (x, &i) in self.ids.iter().enumerate() {
            if i >= m || self.arrows[i].dom != x || self.arrows[i].cod != x {
                return Err(Error::Malformed(format!(
                    "identity of object {} has wrong endpoints",
                    x
                )));
            }
        }
        if self.comp.len() != m || self.comp.iter().any(|row| row.len() != m) {
            return Err(Error::Malformed("composition table has wrong shape".into()));
        }
        for g in 0..m {
            for f in 0..m {
                let composable = self.arrows[f].cod == self.arrows[g].dom;
                match self.comp[g][f] {
                    Some(h) => {
                        if !composable {
                            return Err(Error::Malformed(format!(
                                "table composes non-composable {} ∘ {}",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                        if self.arrows[h].dom != self.arrows[f].dom
                            || self.arrows[h].cod != self.arrows[g].cod
                        {
                            return Err(Error::Malformed(format!(
                                "endpoints of {} ∘ {} are wrong",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                    }
                    None => {
                        if composable {
                            return Err(Error::Malformed(format!(
                                "composition table is missing {} ∘ {}",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                    }
                }
            }
        }
        // unit laws
        for f in 0..m {
            let a = &self.arrows[f];
            if self.comp[f][self.ids[a.dom]] != Some(f) || self.comp[self.ids[a.cod]][f] != Some(f)
            {
                return Err(Error::Malformed(format!("unit law fails at {}", a.name)));
            }
        }
        // associativity on all composable triples
        for h in 0..m {
            for g in 0..m {
                if self.arrows[g].cod != self.arrows[h].dom {
                    continue;
                }
                for f in 0..m {
                    if self.arrows[f].cod != self.arrows[g].dom {
                        continue;
                    }
                    let gf = self.comp[g][f].unwrap();
                    let hg = self.comp[h][g].unwrap();
                    if self.comp[h][gf] != self.comp[hg][f] {
                        return Err(Error::Malformed(format!(
                            "associativity fails at {} ∘ {} ∘ {}",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The index category `• → •`: objects `src`, `tgt` and one arrow.
    pub fn arrow_category() -> Self {
        FinCatPresentation::new(
            vec!["src".into(), "tgt".into()],
            vec![
                ArrowInfo { name: "id_src".into(), dom: 0, cod: 0 },
                ArrowInfo { name: "id_tgt".into(), dom: 1, cod: 1 },
                ArrowInfo { name: "a".into(), dom: 0, cod: 1 },
            ],
            vec![0, 1],
            vec![
                vec![Some(0), None, None],
                vec![None, Some(1), Some(2)],
                vec![Some(2), None, None],
            ],
        )
        .expect("arrow category is well formed")
    }

    /// The poset `0 <= 1 <= ... <= n-1` as a category, with one arrow
    /// `i -> j` for each `i <= j`.
    pub fn chain_poset(n: usize) -> Self {
        let obj_names: Vec<String> = (0..n).map(|i| format!("p{}", i)).collect();
        let mut arrows = Vec::new();
        let mut arrow_id = vec![vec![usize::MAX; n]; n];
        for i in 0..n {
            for j in i..n {
                arrow_id[i][j] = arrows.len();
                arrows.push(ArrowInfo { name: format!("le_{}_{}", i, j), dom: i, cod: j });
            }
        }
        let ids: Vec<usize> = (0..n).map(|i| arrow_id[i][i]).collect();
        let m = arrows.len();
        let mut comp = vec![vec![None; m]; m];
        for (g, gi) in arrows.iter().enumerate() {
            for (f, fi) in arrows.iter().enumerate() {
                if fi.cod == gi.dom {
                    comp[g][f] = Some(arrow_id[fi.dom][gi.cod]);
                }
            }
        }
        FinCatPresentation::new(obj_names, arrows, ids, comp).expect("chain poset is well formed")
    }
}

/// A user-presented finite category as an ambient category. Structure is
/// recovered by exhaustive search over the (finite) catalog; each declared
/// capability is verified at construction so that later calls either succeed
/// or report an unsupported-structure error, never silently guess.
#[derive(Clone, Debug)]
pub struct TableCat {
    pub pres: FinCatPresentation,
    caps: Capabilities,
    name: String,
}

/// Arrow of a [`TableCat`]: an index into the presentation's arrow list.
pub type TableArr = usize;

impl TableCat {
    pub fn new(name: impl Into<String>, pres: FinCatPresentation, caps: Capabilities) -> Result<Self> {
        let cat = TableCat { pres, caps, name: name.into() };
        cat.witness_capabilities()?;
        Ok(cat)
    }

    fn witness_capabilities(&self) -> Result<()> {
        if self.caps.finite_limits {
            self.terminal()?;
            for x in 0..self.pres.n_objects() {
                for y in 0..self.pres.n_objects() {
                    self.product(&x, &y)?;
                }
            }
            for f in 0..self.pres.n_arrows() {
                for g in 0..self.pres.n_arrows() {
                    let (af, ag) = (&self.pres.arrows[f], &self.pres.arrows[g]);
                    if af.dom == ag.dom && af.cod == ag.cod {
                        self.equalizer(&f, &g)?;
                    }
                }
            }
        }
        if self.caps.regular {
            for f in 0..self.pres.n_arrows() {
                self.image(&f)?;
            }
        }
        if self.caps.sums {
            self.initial()?;
            for x in 0..self.pres.n_objects() {
                for y in 0..self.pres.n_objects() {
                    self.coproduct(&x, &y)?;
                }
            }
        }
        if self.caps.heyting {
            for x in 0..self.pres.n_objects() {
                self.subobjects(&x)?;
            }
        }
        Ok(())
    }

    fn err_unsupported(&self, what: &str) -> Error {
        Error::unsupported(self.name.clone(), what.to_string())
    }

    /// Monos into `x`, grouped into subobjects by mutual factorization;
    /// the representative is the least arrow id in its class.
    fn mono_classes(&self, x: usize) -> Vec<usize> {
        let monos: Vec<usize> = self
            .pres
            .arrows_into(x)
            .into_iter()
            .filter(|&m| self.is_mono(&m))
            .collect();
        let mut reps: Vec<usize> = Vec::new();
        'outer: for &m in &monos {
            for r in reps.iter_mut() {
                if self.mutually_factor(*r, m) {
                    if m < *r {
                        *r = m;
                    }
                    continue 'outer;
                }
            }
            reps.push(m);
        }
        reps.sort_unstable();
        reps
    }

    fn mutually_factor(&self, m: usize, n: usize) -> bool {
        self.factor_through_mono(&m, &n).is_some() && self.factor_through_mono(&n, &m).is_some()
    }
}

impl Category for TableCat {
    type Obj = usize;
    type Arr = TableArr;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn capabilities(&self) -> Capabilities {
        self.caps
    }

    fn dom(&self, f: &TableArr) -> usize {
        self.pres.arrows[*f].dom
    }

    fn cod(&self, f: &TableArr) -> usize {
        self.pres.arrows[*f].cod
    }

    fn identity(&self, x: &usize) -> TableArr {
        self.pres.ids[*x]
    }

    fn compose(&self, g: &TableArr, f: &TableArr) -> Result<TableArr> {
        self.pres.compose_ids(*g, *f)
    }

    fn obj_size(&self, _x: &usize) -> usize {
        1
    }

    fn objects_up_to(&self, _size: usize) -> Vec<usize> {
        (0..self.pres.n_objects()).collect()
    }

    fn hom(&self, x: &usize, y: &usize) -> Result<Vec<TableArr>> {
        Ok((0..self.pres.n_arrows())
            .filter(|&a| self.pres.arrows[a].dom == *x && self.pres.arrows[a].cod == *y)
            .collect())
    }

    fn is_mono(&self, f: &TableArr) -> bool {
        // left-cancellable on the catalog
        let dom = self.dom(f);
        for u in 0..self.pres.n_arrows() {
            if self.pres.arrows[u].cod != dom {
                continue;
            }
            for v in 0..self.pres.n_arrows() {
                if self.pres.arrows[v].cod != dom
                    || self.pres.arrows[v].dom != self.pres.arrows[u].dom
                {
                    continue;
                }
                if u != v
                    && self.pres.comp[*f][u] == self.pres.comp[*f][v]
                {
                    return false;
                }
            }
        }
        true
    }

    fn is_cover(&self, f: &TableArr) -> bool {
        // regular epi: coequalizes its kernel pair (when limits exist),
        // otherwise falls back to right-cancellability plus split check.
        if self.caps.finite_limits {
            if let Ok((r0, r1)) = super::kernel_pair(self, f) {
                if let Ok(c) = self.coequalizer_search(&r0, &r1) {
                    return self
                        .factor_through_cover_search(&c, f)
                        .map(|u| self.is_iso_raw(&u))
                        .unwrap_or(false);
                }
            }
            false
        } else {
            false
        }
    }

    fn terminal(&self) -> Result<usize> {
        (0..self.pres.n_objects())
            .find(|&t| (0..self.pres.n_objects()).all(|x| self.hom(&x, &t).unwrap().len() == 1))
            .ok_or_else(|| self.err_unsupported("a terminal object"))
    }

    fn initial(&self) -> Result<usize> {
        (0..self.pres.n_objects())
            .find(|&t| (0..self.pres.n_objects()).all(|x| self.hom(&t, &x).unwrap().len() == 1))
            .ok_or_else(|| self.err_unsupported("an initial object"))
    }

    fn product(&self, x: &usize, y: &usize) -> Result<Span<Self>> {
        for p in 0..self.pres.n_objects() {
            for &l in &self.hom(&p, x)? {
                for &r in &self.hom(&p, y)? {
                    let universal = (0..self.pres.n_objects()).all(|z| {
                        self.hom(&z, x).unwrap().iter().all(|&u| {
                            self.hom(&z, y).unwrap().iter().all(|&v| {
                                let mediators = self
                                    .hom(&z, &p)
                                    .unwrap()
                                    .iter()
                                    .filter(|&&m| {
                                        self.pres.comp[l][m] == Some(u)
                                            && self.pres.comp[r][m] == Some(v)
                                    })
                                    .count();
                                mediators == 1
                            })
                        })
                    });
                    if universal {
                        return Ok(Span { obj: p, left: l, right: r });
                    }
                }
            }
        }
        Err(self.err_unsupported(&format!("a product of {} and {}", x, y)))
    }

    fn pair(&self, f: &TableArr, g: &TableArr) -> Result<TableArr> {
        let span = self.product(&self.cod(f), &self.cod(g))?;
        self.hom(&self.dom(f), &span.obj)?
            .into_iter()
            .find(|&m| {
                self.pres.comp[span.left][m] == Some(*f) && self.pres.comp[span.right][m] == Some(*g)
            })
            .ok_or_else(|| self.err_unsupported("a pairing mediator"))
    }

    fn coproduct(&self, x: &usize, y: &usize) -> Result<Cospan<Self>> {
        for p in 0..self.pres.n_objects() {
            for &l in &self.hom(x, &p)? {
                for &r in &self.hom(y, &p)? {
                    let universal = (0..self.pres.n_objects()).all(|z| {
                        self.hom(x, &z).unwrap().iter().all(|&u| {
                            self.hom(y, &z).unwrap().iter().all(|&v| {
                                let mediators = self
                                    .hom(&p, &z)
                                    .unwrap()
                                    .iter()
                                    .filter(|&&m| {
                                        self.pres.comp[m][l] == Some(u)
                                            && self.pres.comp[m][r] == Some(v)
                                    })
                                    .count();
                                mediators == 1
                            })
                        })
                    });
                    if universal {
                        return Ok(Cospan { obj: p, left: l, right: r });
                    }
                }
            }
        }
        Err(self.err_unsupported(&format!("a coproduct of {} and {}", x, y)))
    }

    fn copair(&self, f: &TableArr, g: &TableArr) -> Result<TableArr> {
        let co = self.coproduct(&self.dom(f), &self.dom(g))?;
        self.hom(&co.obj, &self.cod(f))?
            .into_iter()
            .find(|&m| {
                self.pres.comp[m][co.left] == Some(*f) && self.pres.comp[m][co.right] == Some(*g)
            })
            .ok_or_else(|| self.err_unsupported("a copairing mediator"))
    }

    fn equalizer(&self, f: &TableArr, g: &TableArr) -> Result<TableArr> {
        let x = self.dom(f);
        for e_obj in 0..self.pres.n_objects() {
            for &e in &self.hom(&e_obj, &x)? {
                if self.pres.comp[*f][e] != self.pres.comp[*g][e] {
                    continue;
                }
                let universal = (0..self.pres.n_objects()).all(|z| {
                    self.hom(&z, &x).unwrap().iter().all(|&h| {
                        if self.pres.comp[*f][h] != self.pres.comp[*g][h] {
                            return true;
                        }
                        let mediators = self
                            .hom(&z, &e_obj)
                            .unwrap()
                            .iter()
                            .filter(|&&m| self.pres.comp[e][m] == Some(h))
                            .count();
                        mediators == 1
                    })
                });
                if universal {
                    return Ok(e);
                }
            }
        }
        Err(self.err_unsupported("an equalizer"))
    }

    fn coequalizer(&self, f: &TableArr, g: &TableArr) -> Result<TableArr> {
        self.coequalizer_search(f, g)
    }

    fn image(&self, f: &TableArr) -> Result<(TableArr, TableArr)> {
        // least subobject of cod f through which f factors
        let reps = self.mono_classes(self.cod(f));
        let mut best: Option<(usize, usize)> = None; // (mono, cover)
        for &m in &reps {
            if let Some(c) = self.factor_through_mono(&m, f) {
                let better = match best {
                    None => true,
                    Some((bm, _)) => {
                        self.factor_through_mono(&bm, &m).is_some()
                            && self.factor_through_mono(&m, &bm).is_none()
                    }
                };
                if better && self.is_cover(&c) {
                    best = Some((m, c));
                }
            }
        }
        best.map(|(m, c)| (c, m)).ok_or_else(|| self.err_unsupported("an image factorization"))
    }

    fn factor_through_mono(&self, m: &TableArr, h: &TableArr) -> Option<TableArr> {
        if self.cod(m) != self.cod(h) {
            return None;
        }
        self.hom(&self.dom(h), &self.dom(m))
            .ok()?
            .into_iter()
            .find(|&u| self.pres.comp[*m][u] == Some(*h))
    }

    fn subobjects(&self, x: &usize) -> Result<Vec<TableArr>> {
        Ok(self.mono_classes(*x))
    }

    fn canon_sub(&self, m: &TableArr) -> Result<TableArr> {
        let reps = self.mono_classes(self.cod(m));
        reps.into_iter()
            .find(|&r| self.mutually_factor(r, *m))
            .ok_or_else(|| Error::Precondition(format!("{} is not a mono", self.pres.arrows[*m].name)))
    }

    fn fibre_census(&self, f: &TableArr) -> Result<Vec<usize>> {
        // fibres over global points
        let t = self.terminal()?;
        let mut out = Vec::new();
        for y in self.hom(&t, &self.cod(f))? {
            let pb = super::pullback(self, f, &y)?;
            out.push(self.obj_size(&pb.obj));
        }
        Ok(out)
    }

    fn arrow_iso_key(&self, f: &TableArr) -> Option<u64> {
        let mut h = DefaultHasher::new();
        f.hash(&mut h);
        Some(h.finish())
    }
}

impl TableCat {
    fn coequalizer_search(&self, f: &TableArr, g: &TableArr) -> Result<TableArr> {
        let y = self.cod(f);
        for q_obj in 0..self.pres.n_objects() {
            for &q in &self.hom(&y, &q_obj)? {
                if self.pres.comp[q][*f] != self.pres.comp[q][*g] {
                    continue;
                }
                let universal = (0..self.pres.n_objects()).all(|z| {
                    self.hom(&y, &z).unwrap().iter().all(|&h| {
                        if self.pres.comp[h][*f] != self.pres.comp[h][*g] {
                            return true;
                        }
                        let mediators = self
                            .hom(&q_obj, &z)
                            .unwrap()
                            .iter()
                            .filter(|&&m| self.pres.comp[m][q] == Some(h))
                            .count();
                        mediators == 1
                    })
                });
                if universal {
                    return Ok(q);
                }
            }
        }
        Err(self.err_unsupported("a coequalizer"))
    }

    fn factor_through_cover_search(&self, c: &TableArr, h: &TableArr) -> Option<TableArr> {
        self.hom(&self.cod(c), &self.cod(h))
            .ok()?
            .into_iter()
            .find(|&u| self.pres.comp[u][*c] == Some(*h))
    }

    fn is_iso_raw(&self, f: &TableArr) -> bool {
        self.hom(&self.cod(f), &self.dom(f))
            .map(|inv| {
                inv.iter().any(|&g| {
                    self.pres.comp[g][*f] == Some(self.identity(&self.dom(f)))
                        && self.pres.comp[*f][g] == Some(self.identity(&self.cod(f)))
                })
            })
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_category_validates() {
        let c = FinCatPresentation::arrow_category();
        assert_eq!(c.n_objects(), 2);
        assert_eq!(c.n_arrows(), 3);
    }

    #[test]
    fn chain_poset_composes() {
        let c = FinCatPresentation::chain_poset(3);
        assert_eq!(c.n_arrows(), 6);
        // le_0_1 then le_1_2 is le_0_2
        let f = c.arrows.iter().position(|a| a.name == "le_0_1").unwrap();
        let g = c.arrows.iter().position(|a| a.name == "le_1_2").unwrap();
        let h = c.arrows.iter().position(|a| a.name == "le_0_2").unwrap();
        assert_eq!(c.compose_ids(g, f).unwrap(), h);
    }

    #[test]
    fn bad_unit_law_rejected() {
        let bad = FinCatPresentation::new(
            vec!["x".into()],
            vec![
                ArrowInfo { name: "id_x".into(), dom: 0, cod: 0 },
                ArrowInfo { name: "e".into(), dom: 0, cod: 0 },
            ],
            vec![0],
            // e ∘ e = id is fine, but id ∘ e = e must hold; break it
            vec![vec![Some(0), Some(0)], vec![Some(1), Some(0)]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn table_cat_over_poset_has_limits() {
        // the chain poset has a terminal object (the top) and products (meets)
        let pres = FinCatPresentation::chain_poset(3);
        let caps = Capabilities { finite_limits: true, regular: false, sums: false, heyting: false };
        let cat = TableCat::new("chain3", pres, caps).unwrap();
        assert_eq!(cat.terminal().unwrap(), 2);
        let prod = cat.product(&1, &2).unwrap();
        assert_eq!(prod.obj, 1);
    }
}
