//! The associated sheaf functor via the plus construction, applied twice.
//! Sections of `P⁺` at an object are matching families over the generating
//! covers, modulo agreement on a common covering refinement; everything is
//! enumerated by brute force and canonicalized by sorting class
//! representatives.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fincat::presheaf::{PsArr, PsObj};
use crate::fincat::Category;

use super::site::{Sieve, Site};

type Family = BTreeMap<usize, usize>;

/// One plus application with enough structure kept to restrict sections and
/// to extend maps into sheaves.
#[derive(Clone, Debug)]
pub struct PlusStage {
    pub source: PsObj,
    pub obj: PsObj,
    pub unit: PsArr,
    /// class representatives per object, in class order
    reps: Vec<Vec<(Sieve, Family)>>,
}

/// Enumerates the compatible matching families for a sieve: an element of
/// `P(dom f)` for every `f` in the sieve, stable under further restriction.
fn matching_families(site: &Site, p: &PsObj, sieve: &Sieve) -> Vec<Family> {
    let cat = &site.cat;
    let arrows: Vec<usize> = sieve.arrows.iter().copied().collect();
    let mut families = vec![Family::new()];
    for &f in &arrows {
        let d = cat.arrows[f].dom;
        let mut next = Vec::new();
        for fam in &families {
            for v in 0..p.sizes[d] {
                let mut fam2 = fam.clone();
                fam2.insert(f, v);
                next.push(fam2);
            }
        }
        families = next;
    }
    families
        .into_iter()
        .filter(|fam| {
            arrows.iter().all(|&f| {
                let d = cat.arrows[f].dom;
                cat.arrows_into(d).into_iter().all(|g| {
                    let fg = cat.comp[f][g].expect("composable");
                    match fam.get(&fg) {
                        Some(&vfg) => vfg == p.restr[g][fam[&f]],
                        None => true, // fg outside the sieve cannot happen: sieves are closed
                    }
                })
            })
        })
        .collect()
}

/// Two families agree on a common covering refinement.
fn equivalent(site: &Site, a: &(Sieve, Family), b: &(Sieve, Family)) -> bool {
    let inter = a.0.intersect(&b.0);
    site.generating_covers(a.0.target).iter().any(|r| {
        r.is_subset_of(&inter) && r.arrows.iter().all(|f| a.1[f] == b.1[f])
    })
}

pub fn plus(site: &Site, p: &PsObj) -> Result<PlusStage> {
    let cat = &site.cat;
    let n = cat.n_objects();
    let mut all: Vec<Vec<(Sieve, Family)>> = Vec::with_capacity(n);
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut reps: Vec<Vec<(Sieve, Family)>> = Vec::with_capacity(n);
    for c in 0..n {
        let gen = site.generating_covers(c);
        if gen.is_empty() {
            return Err(Error::Malformed(format!(
                "object {} has no covering sieve",
                cat.obj_names[c]
            )));
        }
        let mut fams: Vec<(Sieve, Family)> = Vec::new();
        for sieve in gen {
            for fam in matching_families(site, p, sieve) {
                fams.push((sieve.clone(), fam));
            }
        }
        if fams.len() > 200_000 {
            return Err(Error::resource(
                "enumerating matching families",
                format!("{} families at object {}", fams.len(), cat.obj_names[c]),
            ));
        }
        // union-find over the agreement relation
        let mut parent: Vec<usize> = (0..fams.len()).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..fams.len() {
            for j in (i + 1)..fams.len() {
                if equivalent(site, &fams[i], &fams[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi] = lo;
                    }
                }
            }
        }
        // classes ordered by their least member
        let mut roots: Vec<usize> = Vec::new();
        let mut class_idx = vec![usize::MAX; fams.len()];
        for i in 0..fams.len() {
            let r = find(&mut parent, i);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        roots.sort_unstable();
        for i in 0..fams.len() {
            let r = find(&mut parent, i);
            class_idx[i] = roots.iter().position(|&x| x == r).unwrap();
        }
        reps.push(roots.iter().map(|&r| fams[r].clone()).collect());
        class_of.push(class_idx);
        all.push(fams);
    }

    // restriction tables: restrict a representative family, land in a class
    let sizes: Vec<usize> = reps.iter().map(|r| r.len()).collect();
    let locate = |c: usize,
                  sieve: &Sieve,
                  fam: &Family,
                  all: &Vec<Vec<(Sieve, Family)>>,
                  class_of: &Vec<Vec<usize>>|
     -> Result<usize> {
        all[c]
            .iter()
            .position(|(s, f)| s == sieve && f == fam)
            .map(|i| class_of[c][i])
            .ok_or_else(|| Error::Malformed("restricted family not in enumeration".into()))
    };
    let mut restr = Vec::with_capacity(cat.n_arrows());
    for m in 0..cat.n_arrows() {
        let (c_dom, c_cod) = (cat.arrows[m].dom, cat.arrows[m].cod);
        let mut table = Vec::with_capacity(sizes[c_cod]);
        for (sieve, fam) in &reps[c_cod] {
            let pulled = sieve.pullback(cat, m);
            let base = site
                .generating_covers(c_dom)
                .iter()
                .find(|b| b.is_subset_of(&pulled))
                .ok_or_else(|| {
                    Error::Malformed("pullback of a cover admits no generating refinement".into())
                })?;
            let mut fam2 = Family::new();
            for &g in &base.arrows {
                let mg = cat.comp[m][g].expect("composable");
                fam2.insert(g, fam[&mg]);
            }
            table.push(locate(c_dom, base, &fam2, &all, &class_of)?);
        }
        restr.push(table);
    }
    let obj = PsObj { sizes, restr };

    // unit: restrict a section along a generating cover
    let mut comps = Vec::with_capacity(n);
    for c in 0..n {
        let base = &site.generating_covers(c)[0];
        let mut table = Vec::with_capacity(p.sizes[c]);
        for x in 0..p.sizes[c] {
            let mut fam = Family::new();
            for &f in &base.arrows {
                fam.insert(f, p.restr[f][x]);
            }
            table.push(locate(c, base, &fam, &all, &class_of)?);
        }
        comps.push(table);
    }
    let unit = PsArr { dom: p.clone(), cod: obj.clone(), comps };
    Ok(PlusStage { source: p.clone(), obj, unit, reps })
}

/// The associated sheaf: the plus construction applied twice, with the
/// sheaf condition verified exhaustively on the result.
#[derive(Clone, Debug)]
pub struct Sheafification {
    pub sheaf: PsObj,
    pub unit: PsArr,
    stage1: PlusStage,
    stage2: PlusStage,
}

pub fn sheafify(site: &Site, p: &PsObj) -> Result<Sheafification> {
    let stage1 = plus(site, p)?;
    let stage2 = plus(site, &stage1.obj)?;
    let cat = crate::fincat::presheaf::PresheafCat::new("psh", site.cat.clone());
    let unit = cat.compose(&stage2.unit, &stage1.unit)?;
    let sheaf = stage2.obj.clone();
    if !is_sheaf(site, &sheaf)? {
        return Err(Error::Malformed(
            "plus construction applied twice did not yield a sheaf".into(),
        ));
    }
    Ok(Sheafification { sheaf, unit, stage1, stage2 })
}

/// Unique amalgamation of every matching family over every covering sieve.
pub fn is_sheaf(site: &Site, p: &PsObj) -> Result<bool> {
    let cat = &site.cat;
    for c in 0..cat.n_objects() {
        for sieve in site.covers_of(c) {
            for fam in matching_families(site, p, sieve) {
                let mut amalgamations = 0;
                for x in 0..p.sizes[c] {
                    if sieve.arrows.iter().all(|&f| p.restr[f][x] == fam[&f]) {
                        amalgamations += 1;
                    }
                }
                if amalgamations != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Extends a presheaf map into a sheaf along the sheafification unit:
/// the mapped family of a class representative amalgamates uniquely.
pub fn extend_along_unit(site: &Site, sh: &Sheafification, h: &PsArr) -> Result<PsArr> {
    if !is_sheaf(site, &h.cod)? {
        return Err(Error::Precondition("extension target must be a sheaf".into()));
    }
    let e1 = extend_stage(site, &sh.stage1, h)?;
    extend_stage(site, &sh.stage2, &e1)
}

fn extend_stage(site: &Site, stage: &PlusStage, h: &PsArr) -> Result<PsArr> {
    if h.dom != stage.source {
        return Err(Error::Precondition("extension source mismatch".into()));
    }
    let cat = &site.cat;
    let z = &h.cod;
    let mut comps = Vec::with_capacity(cat.n_objects());
    for c in 0..cat.n_objects() {
        let mut table = Vec::with_capacity(stage.reps[c].len());
        for (sieve, fam) in &stage.reps[c] {
            let mut candidates = Vec::new();
            for zx in 0..z.sizes[c] {
                if sieve.arrows.iter().all(|&f| {
                    let d = cat.arrows[f].dom;
                    z.restr[f][zx] == h.comps[d][fam[&f]]
                }) {
                    candidates.push(zx);
                }
            }
            if candidates.len() != 1 {
                return Err(Error::Malformed(format!(
                    "mapped family has {} amalgamations in the target sheaf",
                    candidates.len()
                )));
            }
            table.push(candidates[0]);
        }
        comps.push(table);
    }
    Ok(PsArr { dom: stage.obj.clone(), cod: z.clone(), comps })
}

/// Closure of a family of sections inside a presheaf: a section joins when
/// the sieve of arrows pulling it into the family is covering. Iterated to a
/// fixed point.
pub fn closure(site: &Site, x: &PsObj, sections: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let cat = &site.cat;
    let mut current: Vec<Vec<bool>> = (0..cat.n_objects())
        .map(|c| {
            let mut v = vec![false; x.sizes[c]];
            for &t in &sections[c] {
                v[t] = true;
            }
            v
        })
        .collect();
    loop {
        let mut changed = false;
        for c in 0..cat.n_objects() {
            for t in 0..x.sizes[c] {
                if current[c][t] {
                    continue;
                }
                let arrows = cat
                    .arrows_into(c)
                    .into_iter()
                    .filter(|&f| current[cat.arrows[f].dom][x.restr[f][t]])
                    .collect();
                let sieve = Sieve { target: c, arrows };
                // the membership sieve is closed because the family is one
                if sieve.closure_violation(cat).is_none() && site.is_covering(&sieve) {
                    current[c][t] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return current
                .into_iter()
                .map(|v| v.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
                .collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::present::FinCatPresentation;

    /// Presheaf over the arrow category with given sizes and table.
    fn obj(m: usize, n: usize, table: &[usize]) -> PsObj {
        PsObj { sizes: vec![m, n], restr: vec![(0..m).collect(), (0..n).collect(), table.to_vec()] }
    }

    #[test]
    fn trivial_topology_leaves_presheaves_alone() {
        let site = Site::trivial(FinCatPresentation::arrow_category());
        let p = obj(2, 3, &[0, 1, 0]);
        let sh = sheafify(&site, &p).unwrap();
        // unit is an iso: the plus construction only repackages sections
        assert_eq!(sh.sheaf.sizes, p.sizes);
        let cat = crate::fincat::presheaf::PresheafCat::over_arrow_category();
        use crate::fincat::Category;
        assert!(cat.is_iso(&sh.unit));
    }

    #[test]
    fn separated_not_sheaf_gains_amalgamations() {
        // X(src) = 1, X(tgt) = 0 over the two-object cover site: the family
        // over the generated cover has no amalgamation, so the sheaf adds one
        let site = Site::two_object_cover();
        let p = obj(1, 0, &[]);
        assert!(!is_sheaf(&site, &p).unwrap());
        let sh = sheafify(&site, &p).unwrap();
        assert_eq!(sh.sheaf.sizes, vec![1, 1]);
        assert!(is_sheaf(&site, &sh.sheaf).unwrap());
    }

    #[test]
    fn non_separated_sections_are_identified() {
        // X(tgt) = 2 both restricting to the single src section: the first
        // plus identifies them
        let site = Site::two_object_cover();
        let p = obj(1, 2, &[0, 0]);
        assert!(!is_sheaf(&site, &p).unwrap());
        let st = plus(&site, &p).unwrap();
        assert_eq!(st.obj.sizes, vec![1, 1]);
        let sh = sheafify(&site, &p).unwrap();
        assert_eq!(sh.sheaf.sizes, vec![1, 1]);
    }

    #[test]
    fn sheafify_idempotent_up_to_iso() {
        let site = Site::two_object_cover();
        for p in [obj(1, 0, &[]), obj(1, 2, &[0, 0]), obj(2, 2, &[1, 0])] {
            let sh = sheafify(&site, &p).unwrap();
            let again = sheafify(&site, &sh.sheaf).unwrap();
            let cat = crate::fincat::presheaf::PresheafCat::over_arrow_category();
            use crate::fincat::Category;
            assert!(cat.is_iso(&again.unit));
        }
    }
}
