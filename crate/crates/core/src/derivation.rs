//! ℚ-linear derivations of finitely presented rings.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::FPRing;

/// A derivation, determined by its values on the generators.
#[derive(Clone, Debug)]
pub struct Derivation {
    ring: FPRing,
    images: Vec<Poly>,
}

impl Derivation {
    /// Fails unless every relation is sent into the ideal.
    pub fn new(ring: FPRing, images: Vec<Poly>) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(Error::Shape(format!("{} images for {} variables", images.len(), ring.nvars())));
        }
        for p in &images {
            ring.check_arity(p)?;
        }
        let images = images.iter().map(|p| ring.nf(p)).collect::<Result<Vec<Poly>>>()?;
        let d = Derivation { ring, images };
        for g in d.ring.generators() {
            let v = d.extend(g)?;
            if !v.is_zero() {
                return Err(Error::IllDefined { relation: d.ring.render(g), image: d.ring.render(&v) });
            }
        }
        Ok(d)
    }

    pub fn from_strs(ring: &FPRing, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|s| ring.poly(s)).collect::<Result<Vec<_>>>()?;
        Derivation::new(ring.clone(), imgs)
    }

    pub fn zero(ring: &FPRing) -> Self {
        Derivation { ring: ring.clone(), images: vec![ring.zero(); ring.nvars()] }
    }

    pub fn ring(&self) -> &FPRing {
        &self.ring
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|p| p.is_zero())
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        leibniz_extend(self, p)
    }

    fn extend(&self, p: &Poly) -> Result<Poly> {
        let mut acc = self.ring.zero();
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() || !p.uses_var(i) {
                continue;
            }
            acc = acc.add(&p.derivative(i).mul(img));
        }
        self.ring.nf(&acc)
    }
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_presentation(&other.ring) && self.images == other.images
    }
}

/// `Σᵢ ∂p/∂xᵢ · D(xᵢ)`, in normal form.
pub fn leibniz_extend(d: &Derivation, p: &Poly) -> Result<Poly> {
    d.ring.check_arity(p)?;
    d.extend(p)
}

/// `[D1, D2] = D1∘D2 − D2∘D1`.
pub fn lie_bracket(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    if !d1.ring.same_presentation(&d2.ring) {
        return Err(Error::RingMismatch("bracket of derivations on different rings".into()));
    }
    let images = (0..d1.ring.nvars())
        .map(|i| Ok(d1.extend(&d2.images[i])?.sub(&d2.extend(&d1.images[i])?)))
        .collect::<Result<Vec<Poly>>>()?;
    Derivation::new(d1.ring.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formal_derivative() {
        let r = FPRing::parse(&["x"], &[]).unwrap();
        let d = Derivation::from_strs(&r, &["1"]).unwrap();
        assert_eq!(d.apply(&r.poly("x^3").unwrap()).unwrap(), r.poly("3*x^2").unwrap());
        assert!(d.apply(&r.poly("7").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn product_rule_on_a_square() {
        let r = FPRing::parse(&["x"], &[]).unwrap();
        let d = Derivation::from_strs(&r, &["x^2"]).unwrap();
        let x = r.poly("x").unwrap();
        let lhs = d.apply(&x.mul(&x)).unwrap();
        let rhs = x.mul(&d.apply(&x).unwrap()).add(&d.apply(&x).unwrap().mul(&x));
        assert_eq!(lhs, r.poly("2*x^3").unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn brackets() {
        let r = FPRing::parse(&["x"], &[]).unwrap();
        let d1 = Derivation::from_strs(&r, &["1"]).unwrap();
        let d2 = Derivation::from_strs(&r, &["x"]).unwrap();
        assert_eq!(lie_bracket(&d1, &d2).unwrap().image(0), &r.poly("1").unwrap());
        assert!(lie_bracket(&d1, &d1).unwrap().is_zero());
        // on ℚ[x,y]: D1 = y∂x, D2 = x∂y; by hand [D1,D2](x) = D1(0) - D2(y) = -x, [D1,D2](y) = D1(x) - 0 = y
        let s = FPRing::parse(&["x", "y"], &[]).unwrap();
        let a = Derivation::from_strs(&s, &["y", "0"]).unwrap();
        let b = Derivation::from_strs(&s, &["0", "x"]).unwrap();
        let c = lie_bracket(&a, &b).unwrap();
        assert_eq!(c.images(), &[s.poly("-x").unwrap(), s.poly("y").unwrap()]);
    }

    #[test]
    fn ill_defined_derivation() {
        let r = FPRing::parse(&["x"], &["x^2"]).unwrap();
        assert!(Derivation::from_strs(&r, &["1"]).is_err());
        assert!(Derivation::from_strs(&r, &["x"]).is_ok());
    }
}
