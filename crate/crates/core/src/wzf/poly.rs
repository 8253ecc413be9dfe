//! Polynomial functors over a signature arrow, computed through the
//! kernel's Σ/Π/pullback chain so the same code path serves skeletal finite
//! sets and presheaf categories.

use crate::error::{Error, Result};
use crate::fincat::finset::{FinArrow, SkeletalFinSet};
use crate::fincat::Category;

/// A polynomial signature in skeletal finite sets: the arrow `f: X -> Y`
/// with its per-constructor arity census and explicit fibres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSignature {
    pub arrow: FinArrow,
    pub arities: Vec<usize>,
    pub fibres: Vec<Vec<usize>>,
}

impl PolynomialSignature {
    pub fn new(arrow: FinArrow) -> Result<Self> {
        let cat = SkeletalFinSet;
        let arities = cat.fibre_census(&arrow)?;
        let mut fibres = vec![Vec::new(); arrow.cod];
        for (x, &y) in arrow.table.iter().enumerate() {
            fibres[y].push(x);
        }
        if fibres.iter().map(|f| f.len()).collect::<Vec<_>>() != arities {
            return Err(Error::Malformed("fibre census mismatch".into()));
        }
        Ok(PolynomialSignature { arrow, arities, fibres })
    }

    pub fn constructors(&self) -> usize {
        self.arrow.cod
    }
}

/// Applies the polynomial functor `P_f = Σ_Y Π_f X^*` to an object, going
/// through the kernel: `X^* Z` is the projection `Z × X -> X`, the dependent
/// product gives an object over `Y`, and Σ forgets down to the object.
pub fn polynomial_apply<C: Category>(cat: &C, f: &C::Arr, z: &C::Obj) -> Result<C::Obj> {
    let x = cat.dom(f);
    let prod = cat.product(z, &x)?;
    let xstar = prod.right;
    let q = cat
        .dependent_product(f, &xstar)?
        .ok_or_else(|| Error::unsupported(cat.name(), "a dependent-product constructor"))?;
    Ok(cat.dom(&q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_of_the_formula() {
        let cat = SkeletalFinSet;
        // f: 3 -> 2 with fibres {2, 1}: P_f(2) has 2^2 + 2^1 = 6 elements
        let f = FinArrow::new(3, 2, vec![0, 0, 1]).unwrap();
        assert_eq!(polynomial_apply(&cat, &f, &2).unwrap(), 6);
        // f: 0 -> 1: the empty product contributes a single element
        let f = FinArrow::new(0, 1, vec![]).unwrap();
        assert_eq!(polynomial_apply(&cat, &f, &0).unwrap(), 1);
        assert_eq!(polynomial_apply(&cat, &f, &5).unwrap(), 1);
    }

    #[test]
    fn signature_census_matches_kernel() {
        let f = FinArrow::new(4, 2, vec![0, 0, 1, 0]).unwrap();
        let sig = PolynomialSignature::new(f).unwrap();
        assert_eq!(sig.arities, vec![3, 1]);
        assert_eq!(sig.fibres, vec![vec![0, 1, 3], vec![2]]);
    }
}
