//! Tangent structures given by explicit arrows, and the diagram checker
//! shared by both sides.

use crate::category::{chain, comp, Arrow, AxiomReport, Limit, Side};
use crate::error::Result;
use crate::ring::FPRing;

/// A tangent structure on CRING or on its opposite, with every structure
/// map realized as an [`Arrow`] of that category.
pub trait TangentStructure {
    fn side(&self) -> Side;
    fn tangent(&self, x: &FPRing) -> Result<FPRing>;
    fn tangent_map(&self, f: &Arrow) -> Result<Arrow>;
    /// `Tₙ(X)`, the `n`-fold pullback of `p_X` with itself.
    fn width(&self, x: &FPRing, n: usize) -> Result<Limit>;
    /// `T` applied to a limit, presented again as a limit.
    fn tangent_limit(&self, l: &Limit) -> Result<Limit>;
    fn proj(&self, x: &FPRing) -> Result<Arrow>;
    /// `+ : T₂(X) → T(X)`.
    fn sum(&self, x: &FPRing) -> Result<Arrow>;
    fn zero(&self, x: &FPRing) -> Result<Arrow>;
    fn neg(&self, x: &FPRing) -> Result<Arrow>;
    fn lift(&self, x: &FPRing) -> Result<Arrow>;
    fn flip(&self, x: &FPRing) -> Result<Arrow>;
}

/// `ν = T(+) ∘ ⟨ℓ∘π₁, 0_{T(X)}∘π₂⟩ : T₂(X) → T²(X)`.
pub fn nu_arrow<S: TangentStructure + ?Sized>(ts: &S, x: &FPRing) -> Result<Arrow> {
    let w2 = ts.width(x, 2)?;
    let tw2 = ts.tangent_limit(&w2)?;
    let tx = ts.tangent(x)?;
    let legs = [comp(&ts.lift(x)?, w2.pi(1))?, comp(&ts.zero(&tx)?, w2.pi(2))?];
    comp(&ts.tangent_map(&ts.sum(x)?)?, &tw2.pair(&legs)?)
}

/// Every diagram of a tangent structure with negatives at the object `a`,
/// the last square checked for commutativity only.
pub fn check_tangent_structure<S: TangentStructure + ?Sized>(ts: &S, a: &FPRing) -> AxiomReport {
    let side = ts.side();
    let mut r = AxiomReport::default();
    let id = |x: &FPRing| Arrow::identity(side, x);
    let t = |x: &FPRing| ts.tangent(x);
    let tm = |f: &Arrow| ts.tangent_map(f);

    r.check("T.1:sum-proj", || {
        let w2 = ts.width(a, 2)?;
        let p = ts.proj(a)?;
        let lhs = comp(&p, &ts.sum(a)?)?;
        Ok(vec![(lhs.clone(), comp(&p, w2.pi(1))?), (lhs, comp(&p, w2.pi(2))?)])
    });
    r.check("T.1:zero-proj", || Ok(vec![(comp(&ts.proj(a)?, &ts.zero(a)?)?, id(a))]));
    r.check("T.1:assoc", || {
        let w2 = ts.width(a, 2)?;
        let w3 = ts.width(a, 3)?;
        let plus = ts.sum(a)?;
        let left_in = comp(&plus, &w2.pair(&[w3.pi(1).clone(), w3.pi(2).clone()])?)?;
        let right_in = comp(&plus, &w2.pair(&[w3.pi(2).clone(), w3.pi(3).clone()])?)?;
        let lhs = comp(&plus, &w2.pair(&[left_in, w3.pi(3).clone()])?)?;
        let rhs = comp(&plus, &w2.pair(&[w3.pi(1).clone(), right_in])?)?;
        Ok(vec![(lhs, rhs)])
    });
    r.check("T.1:unit", || {
        let w2 = ts.width(a, 2)?;
        let ta = t(a)?;
        let zp = comp(&ts.zero(a)?, &ts.proj(a)?)?;
        let plus = ts.sum(a)?;
        let l = comp(&plus, &w2.pair(&[zp.clone(), id(&ta)])?)?;
        let rr = comp(&plus, &w2.pair(&[id(&ta), zp])?)?;
        Ok(vec![(l, id(&ta)), (rr, id(&ta))])
    });
    r.check("T.1:comm", || {
        let w2 = ts.width(a, 2)?;
        let plus = ts.sum(a)?;
        let swapped = comp(&plus, &w2.pair(&[w2.pi(2).clone(), w2.pi(1).clone()])?)?;
        Ok(vec![(swapped, plus)])
    });

    r.check("T.2:proj", || {
        let p = ts.proj(a)?;
        Ok(vec![(comp(&tm(&p)?, &ts.lift(a)?)?, comp(&ts.zero(a)?, &p)?)])
    });
    r.check("T.2:sum", || {
        let w2 = ts.width(a, 2)?;
        let tw2 = ts.tangent_limit(&w2)?;
        let l = ts.lift(a)?;
        let plus = ts.sum(a)?;
        let pair = tw2.pair(&[comp(&l, w2.pi(1))?, comp(&l, w2.pi(2))?])?;
        Ok(vec![(comp(&tm(&plus)?, &pair)?, comp(&l, &plus)?)])
    });
    r.check("T.2:zero", || {
        let z = ts.zero(a)?;
        Ok(vec![(comp(&ts.lift(a)?, &z)?, comp(&tm(&z)?, &z)?)])
    });

    r.check("T.3:proj", || {
        let ta = t(a)?;
        Ok(vec![(comp(&ts.proj(&ta)?, &ts.flip(a)?)?, tm(&ts.proj(a)?)?)])
    });
    r.check("T.3:sum", || {
        let ta = t(a)?;
        let w2 = ts.width(a, 2)?;
        let tw2 = ts.tangent_limit(&w2)?;
        let w2t = ts.width(&ta, 2)?;
        let c = ts.flip(a)?;
        let legs = [comp(&c, tw2.pi(1))?, comp(&c, tw2.pi(2))?];
        let lhs = comp(&ts.sum(&ta)?, &w2t.pair(&legs)?)?;
        Ok(vec![(lhs, comp(&c, &tm(&ts.sum(a)?)?)?)])
    });
    r.check("T.3:zero", || {
        let ta = t(a)?;
        Ok(vec![(comp(&ts.flip(a)?, &tm(&ts.zero(a)?)?)?, ts.zero(&ta)?)])
    });

    r.check("T.4:involution", || {
        let c = ts.flip(a)?;
        let t2a = t(&t(a)?)?;
        Ok(vec![(comp(&c, &c)?, id(&t2a))])
    });
    r.check("T.4:yang-baxter", || {
        let ta = t(a)?;
        let ct = ts.flip(&ta)?;
        let tc = tm(&ts.flip(a)?)?;
        Ok(vec![(chain(&[&ct, &tc, &ct])?, chain(&[&tc, &ct, &tc])?)])
    });

    r.check("T.5:lift-lift", || {
        let ta = t(a)?;
        let l = ts.lift(a)?;
        Ok(vec![(comp(&ts.lift(&ta)?, &l)?, comp(&tm(&l)?, &l)?)])
    });
    r.check("T.5:flip-lift", || {
        let l = ts.lift(a)?;
        Ok(vec![(comp(&ts.flip(a)?, &l)?, l)])
    });
    r.check("T.5:lift-flip", || {
        let ta = t(a)?;
        let c = ts.flip(a)?;
        let lhs = chain(&[&ts.flip(&ta)?, &tm(&c)?, &ts.lift(&ta)?])?;
        Ok(vec![(lhs, comp(&tm(&ts.lift(a)?)?, &c)?)])
    });

    r.check("T.6:square", || {
        let w2 = ts.width(a, 2)?;
        let nu = nu_arrow(ts, a)?;
        let lhs = comp(&tm(&ts.proj(a)?)?, &nu)?;
        let zp = comp(&ts.zero(a)?, &ts.proj(a)?)?;
        Ok(vec![(lhs.clone(), comp(&zp, w2.pi(1))?), (lhs, comp(&zp, w2.pi(2))?)])
    });

    r.check("T.N:proj", || {
        let p = ts.proj(a)?;
        Ok(vec![(comp(&p, &ts.neg(a)?)?, p)])
    });
    r.check("T.N:inverse", || {
        let w2 = ts.width(a, 2)?;
        let ta = t(a)?;
        let n = ts.neg(a)?;
        let plus = ts.sum(a)?;
        let zp = comp(&ts.zero(a)?, &ts.proj(a)?)?;
        let l = comp(&plus, &w2.pair(&[id(&ta), n.clone()])?)?;
        let rr = comp(&plus, &w2.pair(&[n, id(&ta)])?)?;
        Ok(vec![(l, zp.clone()), (rr, zp)])
    });
    r
}

/// Diagram ids in report order.
pub const TANGENT_DIAGRAMS: [&str; 19] = [
    "T.1:sum-proj",
    "T.1:zero-proj",
    "T.1:assoc",
    "T.1:unit",
    "T.1:comm",
    "T.2:proj",
    "T.2:sum",
    "T.2:zero",
    "T.3:proj",
    "T.3:sum",
    "T.3:zero",
    "T.4:involution",
    "T.4:yang-baxter",
    "T.5:lift-lift",
    "T.5:flip-lift",
    "T.5:lift-flip",
    "T.6:square",
    "T.N:proj",
    "T.N:inverse",
];

/// One of the six structure maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureMap {
    Proj,
    Sum,
    Zero,
    Neg,
    Lift,
    Flip,
}

/// A structure with one map replaced at one object, for negative controls.
pub struct Overridden<'a, S: TangentStructure + ?Sized> {
    inner: &'a S,
    at: FPRing,
    which: StructureMap,
    arrow: Arrow,
}

impl<'a, S: TangentStructure + ?Sized> Overridden<'a, S> {
    pub fn new(inner: &'a S, at: &FPRing, which: StructureMap, arrow: Arrow) -> Self {
        Overridden { inner, at: at.clone(), which, arrow }
    }

    fn pick(&self, x: &FPRing, which: StructureMap, default: impl FnOnce() -> Result<Arrow>) -> Result<Arrow> {
        if which == self.which && x.same_presentation(&self.at) {
            Ok(self.arrow.clone())
        } else {
            default()
        }
    }
}

impl<S: TangentStructure + ?Sized> TangentStructure for Overridden<'_, S> {
    fn side(&self) -> Side {
        self.inner.side()
    }
    fn tangent(&self, x: &FPRing) -> Result<FPRing> {
        self.inner.tangent(x)
    }
    fn tangent_map(&self, f: &Arrow) -> Result<Arrow> {
        self.inner.tangent_map(f)
    }
    fn width(&self, x: &FPRing, n: usize) -> Result<Limit> {
        self.inner.width(x, n)
    }
    fn tangent_limit(&self, l: &Limit) -> Result<Limit> {
        self.inner.tangent_limit(l)
    }
    fn proj(&self, x: &FPRing) -> Result<Arrow> {
        self.pick(x, StructureMap::Proj, || self.inner.proj(x))
    }
    fn sum(&self, x: &FPRing) -> Result<Arrow> {
        self.pick(x, StructureMap::Sum, || self.inner.sum(x))
    }
    fn zero(&self, x: &FPRing) -> Result<Arrow> {
        self.pick(x, StructureMap::Zero, || self.inner.zero(x))
    }
    fn neg(&self, x: &FPRing) -> Result<Arrow> {
        self.pick(x, StructureMap::Neg, || self.inner.neg(x))
    }
    fn lift(&self, x: &FPRing) -> Result<Arrow> {
        self.pick(x, StructureMap::Lift, || self.inner.lift(x))
    }
    fn flip(&self, x: &FPRing) -> Result<Arrow> {
        self.pick(x, StructureMap::Flip, || self.inner.flip(x))
    }
}
