//! Finitely presented commutative ℚ-algebras and the maps between them.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner;
use crate::parse::poly_from_str;
use crate::poly::{Poly, Rational};

/// The only supported monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
}

struct RingData {
    vars: Vec<String>,
    generators: Vec<Poly>,
    basis: OnceLock<Result<Vec<Poly>>>,
    order: MonomialOrder,
}

/// `ℚ[vars] / ideal`.
///
/// Rings built with [`FPRing::new`] compute their reduced Gröbner basis on
/// construction. Rings built internally for tangent bundles and pushouts
/// compute it on first use. Cloning is cheap; the presentation is shared.
#[derive(Clone)]
pub struct FPRing(Arc<RingData>);

impl FPRing {
    pub fn new(vars: Vec<String>, relations: Vec<Poly>) -> Result<Self> {
        let r = FPRing::lazy(vars, relations)?;
        r.groebner()?;
        Ok(r)
    }

    pub(crate) fn lazy(vars: Vec<String>, relations: Vec<Poly>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        for r in &relations {
            if r.nvars() != vars.len() {
                return Err(Error::VariableMismatch(format!(
                    "relation has {} variables, ring has {}",
                    r.nvars(),
                    vars.len()
                )));
            }
        }
        let generators: Vec<Poly> = relations.into_iter().filter(|p| !p.is_zero()).collect();
        let basis = OnceLock::new();
        if generators.is_empty() {
            basis.set(Ok(Vec::new())).unwrap();
        }
        Ok(FPRing(Arc::new(RingData { vars, generators, basis, order: MonomialOrder::GrevLex })))
    }

    pub fn free(vars: Vec<String>) -> Result<Self> {
        FPRing::new(vars, Vec::new())
    }

    /// ℚ itself.
    pub fn rationals() -> Self {
        FPRing::new(Vec::new(), Vec::new()).expect("empty presentation")
    }

    /// Builds a ring from variable names and relation strings.
    pub fn parse(vars: &[&str], relations: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let rels = relations.iter().map(|r| poly_from_str(r, &vars)).collect::<Result<Vec<_>>>()?;
        FPRing::new(vars, rels)
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn generators(&self) -> &[Poly] {
        &self.0.generators
    }

    /// Reduced Gröbner basis, largest leading monomial first.
    pub fn groebner(&self) -> Result<&[Poly]> {
        match self.0.basis.get_or_init(|| groebner::buchberger(&self.0.generators)) {
            Ok(b) => Ok(b),
            Err(e) => Err(e.clone()),
        }
    }

    fn ready_basis(&self) -> Option<&[Poly]> {
        match self.0.basis.get() {
            Some(Ok(b)) => Some(b),
            _ => None,
        }
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, name: &str) -> Result<Poly> {
        self.var_index(name)
            .map(|i| Poly::var(self.nvars(), i))
            .ok_or_else(|| Error::VariableMismatch(format!("no variable `{}`", name)))
    }

    pub fn gen(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars())
    }

    pub fn constant(&self, c: Rational) -> Poly {
        Poly::constant(self.nvars(), c)
    }

    /// Parses a polynomial over this ring's variables (not normalized).
    pub fn poly(&self, text: &str) -> Result<Poly> {
        poly_from_str(text, self.vars())
    }

    pub fn check_arity(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableMismatch(format!(
                "polynomial has {} variables, ring has {}",
                p.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.check_arity(p)?;
        self.nf(p)
    }

    /// Normal form without the arity check.
    pub(crate) fn nf(&self, p: &Poly) -> Result<Poly> {
        debug_assert_eq!(p.nvars(), self.nvars());
        let basis = self.groebner()?;
        if basis.is_empty() {
            return Ok(p.clone());
        }
        Ok(groebner::reduce(p, basis))
    }

    /// Normal form if the basis is already known, `p` otherwise.
    pub(crate) fn tidy(&self, p: &Poly) -> Poly {
        match self.ready_basis() {
            Some([]) | None => p.clone(),
            Some(b) => groebner::reduce(p, b),
        }
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Product in the quotient, normalized.
    pub fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.nf(&a.mul(b))
    }

    pub fn is_free(&self) -> bool {
        self.0.generators.is_empty()
    }

    /// True when the ideal is the whole polynomial ring.
    pub fn is_zero_ring(&self) -> Result<bool> {
        Ok(self.groebner()?.first().is_some_and(|g| g.is_constant()))
    }

    pub fn render(&self, p: &Poly) -> String {
        p.display(self.vars()).to_string()
    }

    /// Canonical relation strings: the reduced Gröbner basis in order.
    pub fn render_relations(&self) -> Result<Vec<String>> {
        Ok(self.groebner()?.iter().map(|g| self.render(g)).collect())
    }

    /// Same variables and same ideal. Identical generator lists
    /// short-circuit the comparison of bases.
    pub fn same_presentation(&self, other: &FPRing) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.vars != other.0.vars || self.0.order != other.0.order {
            return false;
        }
        if self.0.generators == other.0.generators {
            return true;
        }
        matches!((self.groebner(), other.groebner()), (Ok(a), Ok(b)) if a == b)
    }

    /// This ring with extra variables appended and extra relations over the
    /// enlarged variable list.
    pub fn extend(&self, new_vars: &[String], extra: Vec<Poly>) -> Result<FPRing> {
        let mut vars = self.vars().to_vec();
        vars.extend(new_vars.iter().cloned());
        let n = vars.len();
        let mut rels: Vec<Poly> = self.generators().iter().map(|g| embed(g, n)).collect();
        rels.extend(extra);
        FPRing::lazy(vars, rels)
    }
}

/// Views `p` in a ring whose variable list starts with `p`'s variables.
pub fn embed(p: &Poly, nvars: usize) -> Poly {
    let map: Vec<usize> = (0..p.nvars()).collect();
    p.remap(nvars, &map)
}

/// `name`, or `name__2`, `name__3`, ... whichever is first free.
pub fn unique_name(name: &str, taken: &[String]) -> String {
    if !taken.iter().any(|t| t == name) {
        return name.to_string();
    }
    (2..)
        .map(|k| format!("{}__{}", name, k))
        .find(|c| !taken.iter().any(|t| t == c))
        .unwrap()
}

impl PartialEq for FPRing {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other)
    }
}

impl fmt::Display for FPRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.vars().join(","))?;
        if !self.0.generators.is_empty() {
            let rels: Vec<String> = self.0.generators.iter().map(|g| self.render(g)).collect();
            write!(f, " / ({})", rels.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FPRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn normal_form(p: &Poly, ring: &FPRing) -> Result<Poly> {
    ring.normal_form(p)
}

/// Canonical-form equality of the two ideals.
pub fn ideal_equal(a: &FPRing, b: &FPRing) -> Result<bool> {
    if a.vars() != b.vars() {
        return Err(Error::VariableMismatch(format!(
            "[{}] vs [{}]",
            a.vars().join(","),
            b.vars().join(",")
        )));
    }
    Ok(a.order() == b.order() && a.groebner()? == b.groebner()?)
}

/// Plain substitution with no reduction.
pub fn substitute(p: &Poly, images: &[Poly], nvars: usize) -> Poly {
    let mut acc = Poly::zero(nvars);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(nvars, c.clone());
        for (i, e) in m.exponents().iter().enumerate() {
            if *e > 0 {
                t = t.mul(&images[i].pow(*e));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Substitution into `target`, reducing after every product once the
/// basis of `target` is known.
pub(crate) fn substitute_in(p: &Poly, images: &[Poly], target: &FPRing) -> Poly {
    let n = target.nvars();
    let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(n)]; images.len()];
    let mut acc = Poly::zero(n);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(n, c.clone());
        for (i, e) in m.exponents().iter().enumerate() {
            if *e == 0 {
                continue;
            }
            while powers[i].len() <= *e as usize {
                let next = target.tidy(&powers[i].last().unwrap().mul(&images[i]));
                powers[i].push(next);
            }
            t = target.tidy(&t.mul(&powers[i][*e as usize]));
            if t.is_zero() {
                break;
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// A ring map given by the images of the domain generators.
#[derive(Clone)]
pub struct RingMorphism {
    domain: FPRing,
    codomain: FPRing,
    images: Arc<Vec<Poly>>,
}

impl RingMorphism {
    /// Checks that every relation of the domain is sent into the codomain ideal.
    pub fn new(domain: FPRing, codomain: FPRing, images: Vec<Poly>) -> Result<Self> {
        if images.len() != domain.nvars() {
            return Err(Error::Shape(format!(
                "{} images for {} domain variables",
                images.len(),
                domain.nvars()
            )));
        }
        for p in &images {
            codomain.check_arity(p)?;
        }
        let m = RingMorphism::trusted(domain, codomain, images);
        for g in m.domain.generators() {
            let img = m.codomain.nf(&m.apply_unchecked(g))?;
            if !img.is_zero() {
                return Err(Error::IllDefined { relation: m.domain.render(g), image: m.codomain.render(&img) });
            }
        }
        Ok(m)
    }

    /// For maps that are well-defined by construction. Images are reduced
    /// only if the codomain basis is already known.
    pub(crate) fn trusted(domain: FPRing, codomain: FPRing, images: Vec<Poly>) -> Self {
        // Bare variables stay as written so structural readers still see them.
        let images = images.iter().map(|p| if p.as_variable().is_some() { p.clone() } else { codomain.tidy(p) }).collect();
        RingMorphism { domain, codomain, images: Arc::new(images) }
    }

    /// Images written as polynomials in the codomain variables, one per
    /// domain variable.
    pub fn from_strs(domain: &FPRing, codomain: &FPRing, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|s| codomain.poly(s)).collect::<Result<Vec<_>>>()?;
        RingMorphism::new(domain.clone(), codomain.clone(), imgs)
    }

    pub fn identity(ring: &FPRing) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.gen(i)).collect();
        RingMorphism::trusted(ring.clone(), ring.clone(), images)
    }

    pub fn domain(&self) -> &FPRing {
        &self.domain
    }

    pub fn codomain(&self) -> &FPRing {
        &self.codomain
    }

    /// Stored images, not necessarily in normal form.
    pub(crate) fn raw_images(&self) -> &[Poly] {
        &self.images
    }

    pub(crate) fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    /// Images in normal form.
    pub fn images(&self) -> Result<Vec<Poly>> {
        self.images.iter().map(|p| self.codomain.nf(p)).collect()
    }

    pub fn image_of(&self, name: &str) -> Result<Poly> {
        let i = self
            .domain
            .var_index(name)
            .ok_or_else(|| Error::VariableMismatch(format!("no variable `{}`", name)))?;
        self.codomain.nf(&self.images[i])
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.domain.check_arity(p)?;
        self.codomain.nf(&self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &Poly) -> Poly {
        substitute_in(p, &self.images, &self.codomain)
    }

    /// `(variable, image)` strings, images in normal form.
    pub fn render(&self) -> Result<Vec<(String, String)>> {
        let images = self.images()?;
        Ok(self.domain.vars().iter().cloned().zip(images.iter().map(|p| self.codomain.render(p))).collect())
    }
}

impl fmt::Debug for RingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (v, p)) in self.domain.vars().iter().zip(self.images.iter()).enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} |-> {}", v, self.codomain.render(p))?;
        }
        write!(f, "}} : {} -> {}", self.domain, self.codomain)
    }
}

/// `g ∘ f`.
pub fn compose(g: &RingMorphism, f: &RingMorphism) -> Result<RingMorphism> {
    if !f.codomain.same_presentation(&g.domain) {
        return Err(Error::DomainMismatch(format!("{} is not {}", f.codomain, g.domain)));
    }
    let images = f.images.iter().map(|p| g.apply_unchecked(p)).collect();
    Ok(RingMorphism::trusted(f.domain.clone(), g.codomain.clone(), images))
}

/// The first domain variable on which two parallel maps disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Difference {
    pub var: String,
    pub left: String,
    pub right: String,
}

pub fn first_difference(f: &RingMorphism, g: &RingMorphism) -> Result<Option<Difference>> {
    if !f.domain.same_presentation(&g.domain) || !f.codomain.same_presentation(&g.codomain) {
        return Err(Error::SignatureMismatch(format!(
            "{} -> {} vs {} -> {}",
            f.domain, f.codomain, g.domain, g.codomain
        )));
    }
    let c = &f.codomain;
    for (i, (a, b)) in f.images.iter().zip(g.images.iter()).enumerate() {
        if a == b || c.nf(&a.sub(b))?.is_zero() {
            continue;
        }
        return Ok(Some(Difference {
            var: f.domain.vars()[i].clone(),
            left: c.render(&c.nf(a)?),
            right: c.render(&c.nf(b)?),
        }));
    }
    Ok(None)
}

/// Equal stored images settle a variable without any reduction.
pub fn morphisms_equal(f: &RingMorphism, g: &RingMorphism) -> Result<bool> {
    Ok(first_difference(f, g)?.is_none())
}

/// A rational point: a ring map to ℚ.
#[derive(Clone, Debug)]
pub struct Point {
    ring: FPRing,
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(ring: FPRing, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != ring.nvars() {
            return Err(Error::Shape(format!("{} coordinates for {} variables", coords.len(), ring.nvars())));
        }
        for g in ring.generators() {
            if !g.evaluate(&coords).is_zero() {
                return Err(Error::InvalidPoint(ring.render(g)));
            }
        }
        Ok(Point { ring, coords })
    }

    pub fn ring(&self) -> &FPRing {
        &self.ring
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

pub fn evaluate(p: &Poly, pt: &Point) -> Result<Rational> {
    pt.ring.check_arity(p)?;
    Ok(p.evaluate(&pt.coords))
}

/// A pushout `e1 ⊗_base e2` with its two injections.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub ring: FPRing,
    pub inj1: RingMorphism,
    pub inj2: RingMorphism,
}

/// Where each variable of `e2` lands in a tensor with `e1` over `base`:
/// a fresh slot, or the base variable it is identified with.
pub(crate) fn tensor_slots(base: &FPRing, e1_nvars: usize, q2: &RingMorphism) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let e2 = q2.codomain();
    let mut elim: Vec<Option<usize>> = vec![None; e2.nvars()];
    for b in 0..base.nvars() {
        if let Some(y) = q2.image(b).as_variable() {
            if elim[y].is_none() {
                elim[y] = Some(b);
            }
        }
    }
    let mut next = e1_nvars;
    let slot = elim
        .iter()
        .map(|e| {
            e.is_none().then(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    (slot, elim)
}

/// Tensor product of `q1: base → e1` and `q2: base → e2`.
///
/// A variable of `e2` that is exactly `q2(b)` for a base variable `b` is
/// identified with `q1(b)` instead of being copied; every other variable of
/// `e2` is copied, renamed on collision.
pub fn tensor_over(
    base: &FPRing,
    e1: &FPRing,
    e2: &FPRing,
    q1: &RingMorphism,
    q2: &RingMorphism,
) -> Result<Pushout> {
    let sig = |q: &RingMorphism, c: &FPRing| q.domain.same_presentation(base) && q.codomain.same_presentation(c);
    if !sig(q1, e1) || !sig(q2, e2) {
        return Err(Error::SignatureMismatch("tensor legs do not match base and factors".into()));
    }
    let (slot, elim) = tensor_slots(base, e1.nvars(), q2);
    let mut vars = e1.vars().to_vec();
    for (y, name) in e2.vars().iter().enumerate() {
        if slot[y].is_some() {
            let fresh = unique_name(name, &vars);
            vars.push(fresh);
        }
    }
    let n = vars.len();
    let inj1_images: Vec<Poly> = (0..e1.nvars()).map(|i| Poly::var(n, i)).collect();
    let inj2_images: Vec<Poly> = (0..e2.nvars())
        .map(|y| match (slot[y], elim[y]) {
            (Some(k), _) => Poly::var(n, k),
            (None, Some(b)) => embed(q1.image(b), n),
            (None, None) => unreachable!(),
        })
        .collect();
    let mut rels: Vec<Poly> = e1.generators().iter().map(|g| embed(g, n)).collect();
    rels.extend(e2.generators().iter().map(|g| substitute(g, &inj2_images, n)));
    for b in 0..base.nvars() {
        let d = embed(q1.image(b), n).sub(&substitute(q2.image(b), &inj2_images, n));
        if !d.is_zero() {
            rels.push(d);
        }
    }
    let ring = FPRing::lazy(vars, rels)?;
    let inj1 = RingMorphism::trusted(e1.clone(), ring.clone(), inj1_images);
    let inj2 = RingMorphism::trusted(e2.clone(), ring.clone(), inj2_images);
    Ok(Pushout { ring, inj1, inj2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn normal_form_examples() {
        let r = FPRing::parse(&["x", "y"], &["x*y"]).unwrap();
        assert!(r.normal_form(&r.poly("x*y").unwrap()).unwrap().is_zero());
        let s = FPRing::parse(&["x", "y"], &["x^2 - y"]).unwrap();
        let nf = s.normal_form(&s.poly("x^2*y").unwrap()).unwrap();
        assert_eq!(nf, s.poly("y^2").unwrap());
        let free = FPRing::parse(&["x"], &[]).unwrap();
        let p = free.poly("x^2 + 1").unwrap();
        assert_eq!(free.normal_form(&p).unwrap(), p);
        assert!(free.normal_form(&Poly::var(2, 0)).is_err());
    }

    #[test]
    fn ideal_equality() {
        let a = FPRing::parse(&["x"], &["x"]).unwrap();
        let b = FPRing::parse(&["x"], &["x", "x^2"]).unwrap();
        let c = FPRing::parse(&["x"], &["x^2"]).unwrap();
        assert!(ideal_equal(&a, &b).unwrap());
        assert!(!ideal_equal(&a, &c).unwrap());
        let d = FPRing::parse(&["x", "y"], &["x + y", "y"]).unwrap();
        let e = FPRing::parse(&["x", "y"], &["x", "y"]).unwrap();
        assert!(ideal_equal(&d, &e).unwrap());
        assert!(ideal_equal(&a, &d).is_err());
    }

    #[test]
    fn composition_by_hand() {
        let qx = FPRing::parse(&["x"], &[]).unwrap();
        let qy = FPRing::parse(&["y"], &[]).unwrap();
        let qz = FPRing::parse(&["z"], &[]).unwrap();
        let f = RingMorphism::from_strs(&qx, &qy, &["y + 1"]).unwrap();
        let g = RingMorphism::from_strs(&qy, &qz, &["z^2"]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.image(0), &qz.poly("z^2 + 1").unwrap());
        assert!(morphisms_equal(&compose(&RingMorphism::identity(&qy), &f).unwrap(), &f).unwrap());
        assert!(compose(&f, &g).is_err());
    }

    #[test]
    fn equality_modulo_ideal() {
        let qx = FPRing::parse(&["x"], &[]).unwrap();
        let dual = FPRing::parse(&["y"], &["y^2"]).unwrap();
        let f = RingMorphism::from_strs(&qx, &dual, &["y"]).unwrap();
        let g = RingMorphism::from_strs(&qx, &dual, &["y + y^2"]).unwrap();
        assert!(morphisms_equal(&f, &g).unwrap());
        let qy = FPRing::parse(&["y"], &[]).unwrap();
        let h1 = RingMorphism::from_strs(&qx, &qy, &["y"]).unwrap();
        let h2 = RingMorphism::from_strs(&qx, &qy, &["2*y"]).unwrap();
        assert!(!morphisms_equal(&h1, &h2).unwrap());
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        let a = FPRing::parse(&["x"], &["x^2"]).unwrap();
        let b = FPRing::parse(&["y"], &[]).unwrap();
        assert!(matches!(RingMorphism::from_strs(&a, &b, &["y"]), Err(Error::IllDefined { .. })));
        assert!(RingMorphism::from_strs(&a, &b, &["0"]).is_ok());
    }

    #[test]
    fn tensor_of_nilpotents() {
        let q = FPRing::rationals();
        let a = FPRing::parse(&["x"], &["x^2"]).unwrap();
        let b = FPRing::parse(&["y"], &["y^2"]).unwrap();
        let qa = RingMorphism::new(q.clone(), a.clone(), vec![]).unwrap();
        let qb = RingMorphism::new(q.clone(), b.clone(), vec![]).unwrap();
        let t = tensor_over(&q, &a, &b, &qa, &qb).unwrap();
        let expect = FPRing::parse(&["x", "y"], &["x^2", "y^2"]).unwrap();
        assert!(ideal_equal(&t.ring, &expect).unwrap());
    }

    #[test]
    fn tensor_over_identity_is_the_ring() {
        let r = FPRing::parse(&["x", "y"], &["x*y"]).unwrap();
        let id = RingMorphism::identity(&r);
        let t = tensor_over(&r, &r, &r, &id, &id).unwrap();
        assert!(t.ring.same_presentation(&r));
        assert!(morphisms_equal(&t.inj1, &t.inj2).unwrap());
    }

    #[test]
    fn tensor_renames_collisions() {
        let q = FPRing::rationals();
        let a = FPRing::parse(&["x"], &[]).unwrap();
        let qa = RingMorphism::new(q.clone(), a.clone(), vec![]).unwrap();
        let t = tensor_over(&q, &a, &a, &qa, &qa).unwrap();
        assert_eq!(t.ring.vars(), &["x".to_string(), "x__2".to_string()]);
        let t3 = tensor_over(&q, &t.ring, &a, &compose(&t.inj1, &qa).unwrap(), &qa).unwrap();
        assert_eq!(t3.ring.vars()[2], "x__3");
    }

    #[test]
    fn points() {
        let r = FPRing::parse(&["x", "y"], &["x*y"]).unwrap();
        assert!(Point::new(r.clone(), vec![rat(1), rat(1)]).is_err());
        let origin = Point::new(r.clone(), vec![rat(0), rat(0)]).unwrap();
        assert_eq!(evaluate(&r.poly("x^2 - x*y^2").unwrap(), &origin).unwrap(), rat(0));
        let free = FPRing::parse(&["x", "y"], &[]).unwrap();
        let one = Point::new(free.clone(), vec![rat(1), rat(1)]).unwrap();
        assert_eq!(evaluate(&free.poly("x*y").unwrap(), &one).unwrap(), rat(1));
        assert_eq!(evaluate(&free.poly("2*x - y^2").unwrap(), &one).unwrap(), rat(1));
    }
}
