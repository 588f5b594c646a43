//! The tangent structure on affine schemes, computed on coordinate rings
//! through Kähler differentials.
//!
//! `T(R)` has one differential variable per variable of `R`, appended in
//! order, and the relations of `R` together with their total differentials.
//! Differential names use the first free prefix among `d`, `dp`, `dpp`, ...:
//! `x` becomes `d_x`, and a name that already carries a prefix is extended,
//! so `d_x` becomes `dpd_x`.

use crate::axioms::{check_tangent_structure, TangentStructure};
use crate::category::{Arrow, AxiomReport, Limit, Side};
use crate::dual::tangent_ring as dual_ring;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{embed, FPRing, Point, Pushout, RingMorphism};

fn differential_name(prefix: &str, v: &str) -> String {
    if let Some((head, rest)) = v.split_once('_') {
        if head.starts_with('d') && head.chars().all(|c| c == 'd' || c == 'p') && !rest.is_empty() {
            return format!("{}{}_{}", prefix, head, rest);
        }
    }
    format!("{}_{}", prefix, v)
}

fn differential_names(vars: &[String]) -> Vec<String> {
    (0..)
        .map(|k| {
            let prefix = format!("d{}", "p".repeat(k));
            vars.iter().map(|v| differential_name(&prefix, v)).collect::<Vec<_>>()
        })
        .find(|names| {
            names.iter().enumerate().all(|(i, n)| !vars.contains(n) && !names[..i].contains(n))
        })
        .unwrap()
}

/// `Σᵢ ∂p/∂xᵢ · dxᵢ` over `2n` variables, with `dxᵢ` at index `n + i`.
pub(crate) fn differential(p: &Poly) -> Poly {
    let n = p.nvars();
    let mut acc = Poly::zero(2 * n);
    for i in 0..n {
        let di = p.derivative(i);
        if !di.is_zero() {
            acc = acc.add(&embed(&di, 2 * n).mul(&Poly::var(2 * n, n + i)));
        }
    }
    acc
}

pub fn total_differential(p: &Poly, base: &FPRing) -> Result<Poly> {
    base.check_arity(p)?;
    Ok(differential(p))
}

/// `d′d(p)` over `4n` variables laid out as `x, dx, d′x, d′dx`.
pub fn second_differential(p: &Poly, base: &FPRing) -> Result<Poly> {
    base.check_arity(p)?;
    let n = p.nvars();
    let m = 4 * n;
    let mut acc = Poly::zero(m);
    for i in 0..n {
        let pi = p.derivative(i);
        if pi.is_zero() {
            continue;
        }
        acc = acc.add(&embed(&pi, m).mul(&Poly::var(m, 3 * n + i)));
        for j in 0..n {
            let pij = pi.derivative(j);
            if !pij.is_zero() {
                let dd = Poly::var(m, n + j).mul(&Poly::var(m, 2 * n + i));
                acc = acc.add(&embed(&pij, m).mul(&dd));
            }
        }
    }
    Ok(acc)
}

/// `T(base)`.
#[derive(Clone, Debug)]
pub struct KahlerTangent {
    pub base: FPRing,
    pub ring: FPRing,
}

/// `T²(base) = T(T(base))`.
#[derive(Clone, Debug)]
pub struct KahlerSquare {
    pub base: FPRing,
    pub ring: FPRing,
}

pub(crate) fn tangent_ring(r: &FPRing) -> Result<FPRing> {
    let names = differential_names(r.vars());
    let extra = r.generators().iter().map(differential).collect();
    r.extend(&names, extra)
}

pub fn kahler_tangent(r: &FPRing) -> Result<KahlerTangent> {
    Ok(KahlerTangent { base: r.clone(), ring: tangent_ring(r)? })
}

pub fn kahler_square(r: &FPRing) -> Result<KahlerSquare> {
    Ok(KahlerSquare { base: r.clone(), ring: tangent_ring(&tangent_ring(r)?)? })
}

/// `T(g): T(Y) → T(X)` for a ring map `g: Y → X`; `dy ↦ d(g(y))`.
pub fn apply_tangent(g: &RingMorphism) -> Result<RingMorphism> {
    let ty = tangent_ring(g.domain())?;
    let tx = tangent_ring(g.codomain())?;
    let n = tx.nvars();
    let mut images: Vec<Poly> = g.raw_images().iter().map(|p| embed(p, n)).collect();
    images.extend(g.raw_images().iter().map(differential));
    Ok(RingMorphism::trusted(ty, tx, images))
}

/// The six structure maps, in their ring directions.
#[derive(Clone, Debug)]
pub struct CoStructure {
    /// `R → T(R)`.
    pub proj: RingMorphism,
    /// `T(R) → T(R) ⊗_R T(R)`.
    pub sum: RingMorphism,
    /// `T(R) → R`.
    pub zero: RingMorphism,
    pub neg: RingMorphism,
    /// `T²(R) → T(R)`.
    pub lift: RingMorphism,
    pub flip: RingMorphism,
    pub pushout: Pushout,
}

fn proj(r: &FPRing) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    let images = (0..r.nvars()).map(|i| t.gen(i)).collect();
    Ok(RingMorphism::trusted(r.clone(), t, images))
}

fn zero(r: &FPRing) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    let n = r.nvars();
    let images = (0..2 * n).map(|i| if i < n { r.gen(i) } else { r.zero() }).collect();
    Ok(RingMorphism::trusted(t, r.clone(), images))
}

fn neg(r: &FPRing) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    let n = r.nvars();
    let images = (0..2 * n).map(|i| if i < n { t.gen(i) } else { t.gen(i).neg() }).collect();
    Ok(RingMorphism::trusted(t.clone(), t, images))
}

fn width(r: &FPRing, n: usize) -> Result<Limit> {
    Limit::pushout_power(&proj(r)?, n)
}

fn sum_into(r: &FPRing, w: &Limit) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    let n = r.nvars();
    let inj = |j: usize, v: usize| w.pi(j).map().image(v).clone();
    let images = (0..2 * n).map(|v| if v < n { inj(1, v) } else { inj(1, v).add(&inj(2, v)) }).collect();
    RingMorphism::new(t, w.object().clone(), images)
}

fn lift(r: &FPRing) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    let t2 = tangent_ring(&t)?;
    let n = r.nvars();
    let images = (0..4 * n)
        .map(|i| match i / n.max(1) {
            0 => t.gen(i),
            3 => t.gen(i - 2 * n),
            _ => t.zero(),
        })
        .collect();
    Ok(RingMorphism::trusted(t2, t, images))
}

fn flip(r: &FPRing) -> Result<RingMorphism> {
    let t2 = tangent_ring(&tangent_ring(r)?)?;
    let n = r.nvars();
    let images = (0..4 * n)
        .map(|i| match i / n.max(1) {
            1 => t2.gen(i + n),
            2 => t2.gen(i - n),
            _ => t2.gen(i),
        })
        .collect();
    Ok(RingMorphism::trusted(t2.clone(), t2, images))
}

pub fn co_structure(r: &FPRing) -> Result<CoStructure> {
    let w = width(r, 2)?;
    let pushout = Pushout {
        ring: w.object().clone(),
        inj1: w.pi(1).map().clone(),
        inj2: w.pi(2).map().clone(),
    };
    Ok(CoStructure {
        proj: proj(r)?,
        sum: sum_into(r, &w)?,
        zero: zero(r)?,
        neg: neg(r)?,
        lift: lift(r)?,
        flip: flip(r)?,
        pushout,
    })
}

/// The Kähler tangent structure on affine schemes.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahlerTangentStructure;

fn affine(m: Result<RingMorphism>) -> Result<Arrow> {
    m.map(|m| Arrow::new(Side::Affine, m))
}

impl TangentStructure for KahlerTangentStructure {
    fn side(&self) -> Side {
        Side::Affine
    }
    fn tangent(&self, x: &FPRing) -> Result<FPRing> {
        tangent_ring(x)
    }
    fn tangent_map(&self, f: &Arrow) -> Result<Arrow> {
        affine(apply_tangent(f.map()))
    }
    fn width(&self, x: &FPRing, n: usize) -> Result<Limit> {
        width(x, n)
    }
    fn tangent_limit(&self, l: &Limit) -> Result<Limit> {
        let object = tangent_ring(l.object())?;
        let projections = l.projections().iter().map(|p| self.tangent_map(p)).collect::<Result<Vec<_>>>()?;
        let base_maps = l.base_maps().iter().map(|b| self.tangent_map(b)).collect::<Result<Vec<_>>>()?;
        l.affine_tangent_of(object, projections, base_maps)
    }
    fn proj(&self, x: &FPRing) -> Result<Arrow> {
        affine(proj(x))
    }
    fn sum(&self, x: &FPRing) -> Result<Arrow> {
        affine(sum_into(x, &width(x, 2)?))
    }
    fn zero(&self, x: &FPRing) -> Result<Arrow> {
        affine(zero(x))
    }
    fn neg(&self, x: &FPRing) -> Result<Arrow> {
        affine(neg(x))
    }
    fn lift(&self, x: &FPRing) -> Result<Arrow> {
        affine(lift(x))
    }
    fn flip(&self, x: &FPRing) -> Result<Arrow> {
        affine(flip(x))
    }
}

pub fn check_costructure_axioms(r: &FPRing) -> AxiomReport {
    check_tangent_structure(&KahlerTangentStructure, r)
}

/// The tangent space of `base` at a rational point.
#[derive(Clone, Debug)]
pub struct TangentSpace {
    pub base: FPRing,
    pub point: Point,
    pub ring: FPRing,
}

pub fn tangent_space_at(r: &FPRing, pt: &Point) -> Result<TangentSpace> {
    if !pt.ring().same_presentation(r) {
        return Err(Error::RingMismatch("point lies on another ring".into()));
    }
    let n = r.nvars();
    let names = differential_names(r.vars());
    let rels = r
        .generators()
        .iter()
        .map(|g| {
            let terms = (0..n).map(|i| {
                let c = g.derivative(i).evaluate(pt.coords());
                (Poly::var(n, i).leading_monomial().unwrap().clone(), c)
            });
            Poly::from_terms(n, terms)
        })
        .collect();
    Ok(TangentSpace { base: r.clone(), point: pt.clone(), ring: FPRing::new(names, rels)? })
}

/// `f♯: T(R) → R′` for `f: R → T̅(R′)`: `a ↦ f₁(a)`, `da ↦ f₂(a)`.
pub fn sharp(f: &RingMorphism, r2: &FPRing) -> Result<RingMorphism> {
    let t2 = dual_ring(r2)?;
    if !f.codomain().same_presentation(&t2) {
        return Err(Error::SignatureMismatch(format!("{} is not {}", f.codomain(), t2)));
    }
    let m = r2.nvars();
    let keep: Vec<usize> = (0..=m).map(|i| i.min(m.saturating_sub(1))).collect();
    let mut low = Vec::new();
    let mut high = Vec::new();
    for img in f.images()? {
        let mut parts = img.split_by_var(m);
        parts.resize(2, Poly::zero(m + 1));
        low.push(parts[0].remap(m, &keep));
        high.push(parts[1].remap(m, &keep));
    }
    low.extend(high);
    RingMorphism::new(tangent_ring(f.domain())?, r2.clone(), low)
}

/// `g♭: R → T̅(R′)` for `g: T(R) → R′`: `a ↦ g(a) + g(da)ε`.
pub fn flat(g: &RingMorphism, r: &FPRing) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    if !g.domain().same_presentation(&t) {
        return Err(Error::SignatureMismatch(format!("{} is not {}", g.domain(), t)));
    }
    let r2 = g.codomain();
    let t2 = dual_ring(r2)?;
    let m = t2.nvars();
    let n = r.nvars();
    let eps = t2.gen(m - 1);
    let images = (0..n).map(|i| embed(g.image(i), m).add(&embed(g.image(n + i), m).mul(&eps))).collect();
    RingMorphism::new(r.clone(), t2, images)
}
