//! The tangent structure on commutative rings given by dual numbers.
//!
//! `T̅(R) = R[ε]/⟨ε²⟩`. Each application appends one nilpotent variable,
//! named `eps`, `eps_p`, `eps_pp`, ... (the first name not yet taken), so the
//! last variable of `T̅(R)` is always its own nilpotent.

use crate::axioms::{check_tangent_structure, nu_arrow, TangentStructure};
use crate::category::{Arrow, AxiomReport, Limit, Side};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{compose, embed, morphisms_equal, FPRing, RingMorphism};

fn fresh_eps(vars: &[String]) -> String {
    (0..)
        .map(|k| format!("eps{}{}", if k > 0 { "_" } else { "" }, "p".repeat(k)))
        .find(|c| !vars.contains(c))
        .unwrap()
}

/// `T̅ʰ(base)`.
#[derive(Clone, Debug)]
pub struct DualTower {
    pub base: FPRing,
    pub height: usize,
    pub ring: FPRing,
    pub eps_names: Vec<String>,
}

/// `T̅ₙ(base) = base[ε₁..εₙ]` with every `εᵢεⱼ = 0`.
#[derive(Clone, Debug)]
pub struct DualWidth {
    pub base: FPRing,
    pub width: usize,
    pub ring: FPRing,
    pub limit: Limit,
}

pub(crate) fn tangent_ring(r: &FPRing) -> Result<FPRing> {
    let e = fresh_eps(r.vars());
    let n = r.nvars() + 1;
    r.extend(&[e], vec![Poly::var(n, n - 1).pow(2)])
}

pub fn dual_numbers(r: &FPRing) -> Result<DualTower> {
    dual_tower(r, 1)
}

pub fn dual_tower(r: &FPRing, height: usize) -> Result<DualTower> {
    let mut ring = r.clone();
    let mut eps_names = Vec::new();
    for _ in 0..height {
        ring = tangent_ring(&ring)?;
        eps_names.push(ring.vars().last().unwrap().clone());
    }
    Ok(DualTower { base: r.clone(), height, ring, eps_names })
}

pub fn dual_width(r: &FPRing, n: usize) -> Result<DualWidth> {
    let limit = Limit::fiber(&proj(r)?, n)?;
    Ok(DualWidth { base: r.clone(), width: n, ring: limit.object().clone(), limit })
}

/// `T̅(f)`: base variables go to `f(x)`, the nilpotent to the nilpotent.
pub fn apply_t(f: &RingMorphism) -> Result<RingMorphism> {
    let dom = tangent_ring(f.domain())?;
    let cod = tangent_ring(f.codomain())?;
    let n = cod.nvars();
    let mut images: Vec<Poly> = f.raw_images().iter().map(|p| embed(p, n)).collect();
    images.push(Poly::var(n, n - 1));
    Ok(RingMorphism::trusted(dom, cod, images))
}

/// `p: T̅(R) → R`, `ε ↦ 0`.
pub fn proj(r: &FPRing) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    let mut images: Vec<Poly> = (0..r.nvars()).map(|i| r.gen(i)).collect();
    images.push(r.zero());
    Ok(RingMorphism::trusted(t, r.clone(), images))
}

/// `0: R → T̅(R)`, the inclusion.
pub fn zero(r: &FPRing) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    let images = (0..r.nvars()).map(|i| t.gen(i)).collect();
    Ok(RingMorphism::trusted(r.clone(), t, images))
}

/// `−: T̅(R) → T̅(R)`, `ε ↦ −ε`.
pub fn neg(r: &FPRing) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    let n = t.nvars();
    let mut images: Vec<Poly> = (0..n).map(|i| t.gen(i)).collect();
    images[n - 1] = images[n - 1].neg();
    Ok(RingMorphism::trusted(t.clone(), t, images))
}

/// `+: T̅₂(R) → T̅(R)`, `εⱼ ↦ ε`.
pub fn sum(r: &FPRing) -> Result<RingMorphism> {
    let w = dual_width(r, 2)?;
    let t = tangent_ring(r)?;
    let layout = w.limit.fiber_layout().unwrap();
    let mut images = vec![t.zero(); w.ring.nvars()];
    for &(x, p) in &layout.base {
        images[p] = t.gen(x);
    }
    for copy in &layout.copies {
        for &(u, p) in copy {
            images[p] = t.gen(u);
        }
    }
    Ok(RingMorphism::trusted(w.ring, t, images))
}

/// `ℓ: T̅(R) → T̅²(R)`, `ε ↦ ε·ε′`.
pub fn lift(r: &FPRing) -> Result<RingMorphism> {
    let t = tangent_ring(r)?;
    let t2 = tangent_ring(&t)?;
    let n = r.nvars();
    let mut images: Vec<Poly> = (0..n).map(|i| t2.gen(i)).collect();
    images.push(t2.gen(n).mul(&t2.gen(n + 1)));
    Ok(RingMorphism::trusted(t, t2, images))
}

/// `c: T̅²(R) → T̅²(R)`, `ε ↔ ε′`.
pub fn flip(r: &FPRing) -> Result<RingMorphism> {
    let t2 = tangent_ring(&tangent_ring(r)?)?;
    let n = r.nvars();
    let mut images: Vec<Poly> = (0..n + 2).map(|i| t2.gen(i)).collect();
    images.swap(n, n + 1);
    Ok(RingMorphism::trusted(t2.clone(), t2, images))
}

/// `ν = T̅(+) ∘ ⟨ℓ∘π₁, 0∘π₂⟩ : T̅₂(R) → T̅²(R)`.
pub fn nu(r: &FPRing) -> Result<RingMorphism> {
    Ok(nu_arrow(&DualTangent, r)?.into_map())
}

/// The dual-numbers tangent structure.
#[derive(Clone, Copy, Debug, Default)]
pub struct DualTangent;

fn ring_arrow(m: Result<RingMorphism>) -> Result<Arrow> {
    m.map(|m| Arrow::new(Side::Ring, m))
}

impl TangentStructure for DualTangent {
    fn side(&self) -> Side {
        Side::Ring
    }
    fn tangent(&self, x: &FPRing) -> Result<FPRing> {
        tangent_ring(x)
    }
    fn tangent_map(&self, f: &Arrow) -> Result<Arrow> {
        ring_arrow(apply_t(f.map()))
    }
    fn width(&self, x: &FPRing, n: usize) -> Result<Limit> {
        Ok(dual_width(x, n)?.limit)
    }
    fn tangent_limit(&self, l: &Limit) -> Result<Limit> {
        let object = tangent_ring(l.object())?;
        let projections = l.projections().iter().map(|p| self.tangent_map(p)).collect::<Result<Vec<_>>>()?;
        let base_maps = l.base_maps().iter().map(|b| self.tangent_map(b)).collect::<Result<Vec<_>>>()?;
        Ok(Limit::tangent_of(l.clone(), object, projections, base_maps))
    }
    fn proj(&self, x: &FPRing) -> Result<Arrow> {
        ring_arrow(proj(x))
    }
    fn sum(&self, x: &FPRing) -> Result<Arrow> {
        ring_arrow(sum(x))
    }
    fn zero(&self, x: &FPRing) -> Result<Arrow> {
        ring_arrow(zero(x))
    }
    fn neg(&self, x: &FPRing) -> Result<Arrow> {
        ring_arrow(neg(x))
    }
    fn lift(&self, x: &FPRing) -> Result<Arrow> {
        ring_arrow(lift(x))
    }
    fn flip(&self, x: &FPRing) -> Result<Arrow> {
        ring_arrow(flip(x))
    }
}

pub fn check_tangent_axioms(r: &FPRing) -> AxiomReport {
    check_tangent_structure(&DualTangent, r)
}

/// A section `v: R → T̅(R)` of the projection.
#[derive(Clone, Debug)]
pub struct VectorFieldDual {
    ring: FPRing,
    section: RingMorphism,
}

impl VectorFieldDual {
    pub fn new(section: RingMorphism) -> Result<Self> {
        let ring = section.domain().clone();
        let p = proj(&ring)?;
        if !section.codomain().same_presentation(p.domain()) {
            return Err(Error::NotVectorField(format!("codomain is not {}", p.domain())));
        }
        if !morphisms_equal(&compose(&p, &section)?, &RingMorphism::identity(&ring))? {
            return Err(Error::NotVectorField("p ∘ v is not the identity".into()));
        }
        Ok(VectorFieldDual { ring, section })
    }

    pub fn ring(&self) -> &FPRing {
        &self.ring
    }

    pub fn section(&self) -> &RingMorphism {
        &self.section
    }
}

/// `D(a)` is the `ε`-coefficient of `v(a)`.
pub fn vf_to_derivation(v: &VectorFieldDual) -> Result<Derivation> {
    let n = v.ring.nvars();
    let keep: Vec<usize> = (0..=n).map(|i| i.min(n.saturating_sub(1))).collect();
    let images = v
        .section
        .images()?
        .iter()
        .map(|img| {
            let mut parts = img.split_by_var(n);
            parts.resize(2, Poly::zero(n + 1));
            parts[1].remap(n, &keep)
        })
        .collect();
    Derivation::new(v.ring.clone(), images)
}

/// `v(a) = a + D(a)ε`.
pub fn derivation_to_vf(d: &Derivation) -> Result<VectorFieldDual> {
    let r = d.ring();
    let t = tangent_ring(r)?;
    let n = t.nvars();
    let images = d
        .images()
        .iter()
        .enumerate()
        .map(|(i, di)| t.gen(i).add(&embed(di, n).mul(&t.gen(n - 1))))
        .collect();
    VectorFieldDual::new(RingMorphism::new(r.clone(), t, images)?)
}
