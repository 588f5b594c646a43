//! Finitely presented modules over finitely presented rings.
//!
//! A module is given by named generators and relation rows. Elements are
//! coefficient vectors over the base ring. Equality is decided in the
//! square-zero extension `R ⊕ M`, whose ideal is graded by degree in the
//! generators, so the degree-one part of its normal form is a normal form
//! for `M`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{embed, unique_name, FPRing, RingMorphism};

#[derive(Clone, Debug)]
pub struct FPModule {
    base: FPRing,
    gens: Vec<String>,
    relations: Vec<Vec<Poly>>,
    sze: FPRing,
}

/// Generator names `u` (rank one) or `u_1 … u_k`, avoiding the base variables.
pub fn default_generator_names(base: &FPRing, rank: usize) -> Vec<String> {
    let mut taken: Vec<String> = base.vars().to_vec();
    let mut out = Vec::new();
    for k in 1..=rank {
        let stem = if rank == 1 { "u".to_string() } else { format!("u_{}", k) };
        let name = unique_name(&stem, &taken);
        taken.push(name.clone());
        out.push(name);
    }
    out
}

/// `Σ_k coeffs[k]·u_k` inside a ring whose variables are the base variables
/// followed by the generators.
fn linear_form(coeffs: &[Poly], nvars: usize, offset: usize) -> Poly {
    coeffs
        .iter()
        .enumerate()
        .fold(Poly::zero(nvars), |acc, (k, c)| acc.add(&embed(c, nvars).mul(&Poly::var(nvars, offset + k))))
}

/// Reads a polynomial of degree one in the generators back into coefficients.
fn coefficients(p: &Poly, nbase: usize, rank: usize) -> Result<Vec<Poly>> {
    let mut parts: Vec<Vec<_>> = vec![Vec::new(); rank];
    let keep: Vec<usize> = (0..nbase + rank).map(|i| i.min(nbase.saturating_sub(1))).collect();
    for (m, c) in p.terms() {
        let e = m.exponents();
        let hits: Vec<usize> = (0..rank).filter(|&k| e[nbase + k] > 0).collect();
        match hits.as_slice() {
            [k] if e[nbase + k] == 1 => {
                let mut exps = e.to_vec();
                exps[nbase + k] = 0;
                let mono = crate::poly::Monomial::from_exponents(exps).remap(nbase, &keep);
                parts[*k].push((mono, c.clone()));
            }
            _ => return Err(Error::Shape("element is not linear in the generators".into())),
        }
    }
    Ok(parts.into_iter().map(|t| Poly::from_terms(nbase, t)).collect())
}

impl FPModule {
    pub fn new(base: FPRing, gens: Vec<String>, relations: Vec<Vec<Poly>>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if base.vars().contains(g) || gens[..i].contains(g) {
                return Err(Error::DuplicateVariable(g.clone()));
            }
        }
        for row in &relations {
            if row.len() != gens.len() {
                return Err(Error::Shape(format!("relation row of length {} for rank {}", row.len(), gens.len())));
            }
            for c in row {
                base.check_arity(c)?;
            }
        }
        let relations = relations
            .iter()
            .map(|row| row.iter().map(|c| base.normal_form(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let n = base.nvars();
        let k = gens.len();
        let nv = n + k;
        let mut rels: Vec<Poly> = base.generators().iter().map(|g| embed(g, nv)).collect();
        for i in 0..k {
            for j in i..k {
                rels.push(Poly::var(nv, n + i).mul(&Poly::var(nv, n + j)));
            }
        }
        rels.extend(relations.iter().map(|row| linear_form(row, nv, n)).filter(|p| !p.is_zero()));
        let vars: Vec<String> = base.vars().iter().chain(&gens).cloned().collect();
        let sze = FPRing::new(vars, rels)?;
        Ok(FPModule { base, gens, relations, sze })
    }

    pub fn free(base: &FPRing, rank: usize) -> Result<Self> {
        FPModule::new(base.clone(), default_generator_names(base, rank), Vec::new())
    }

    /// `Rᵏ` modulo the given rows, with default generator names.
    pub fn cokernel(base: &FPRing, rank: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        FPModule::new(base.clone(), default_generator_names(base, rank), rows)
    }

    /// Rows written as polynomial strings over the base.
    pub fn parse_cokernel(base: &FPRing, rows: &[&[&str]]) -> Result<Self> {
        let rank = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| base.poly(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FPModule::cokernel(base, rank, rows)
    }

    pub fn base(&self) -> &FPRing {
        &self.base
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn relations(&self) -> &[Vec<Poly>] {
        &self.relations
    }

    pub fn same_presentation(&self, other: &FPModule) -> bool {
        self.base.same_presentation(&other.base) && self.gens == other.gens && self.relations == other.relations
    }

    pub fn zero_element(&self) -> Vec<Poly> {
        vec![self.base.zero(); self.rank()]
    }

    /// The `k`-th generator, counting from 0.
    pub fn generator(&self, k: usize) -> Vec<Poly> {
        let mut e = self.zero_element();
        e[k] = self.base.one();
        e
    }

    pub fn element(&self, coeffs: &[&str]) -> Result<Vec<Poly>> {
        let e = coeffs.iter().map(|s| self.base.poly(s)).collect::<Result<Vec<_>>>()?;
        self.check_element(&e)?;
        Ok(e)
    }

    pub(crate) fn check_element(&self, e: &[Poly]) -> Result<()> {
        if e.len() != self.rank() {
            return Err(Error::Shape(format!("element of length {} for rank {}", e.len(), self.rank())));
        }
        e.iter().try_for_each(|c| self.base.check_arity(c))
    }

    pub(crate) fn as_linear(&self, e: &[Poly]) -> Poly {
        linear_form(e, self.sze.nvars(), self.base.nvars())
    }

    pub(crate) fn from_linear(&self, p: &Poly) -> Result<Vec<Poly>> {
        coefficients(p, self.base.nvars(), self.rank())
    }

    pub fn normal_form(&self, e: &[Poly]) -> Result<Vec<Poly>> {
        self.check_element(e)?;
        self.from_linear(&self.sze.nf(&self.as_linear(e))?)
    }

    pub fn is_zero(&self, e: &[Poly]) -> Result<bool> {
        Ok(self.normal_form(e)?.iter().all(|c| c.is_zero()))
    }

    pub fn elements_equal(&self, a: &[Poly], b: &[Poly]) -> Result<bool> {
        self.check_element(a)?;
        self.check_element(b)?;
        let diff: Vec<Poly> = a.iter().zip(b).map(|(x, y)| x.sub(y)).collect();
        self.is_zero(&diff)
    }

    pub fn add(&self, a: &[Poly], b: &[Poly]) -> Result<Vec<Poly>> {
        let s: Vec<Poly> = a.iter().zip(b).map(|(x, y)| x.add(y)).collect();
        self.normal_form(&s)
    }

    pub fn render(&self, e: &[Poly]) -> String {
        self.sze.render(&self.as_linear(e))
    }
}

impl std::fmt::Display for FPModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self.relations.iter().map(|r| self.render(r)).collect();
        write!(f, "⟨{}⟩ / ⟨{}⟩ over {}", self.gens.join(", "), rows.join(", "), self.base)
    }
}

/// `a·m`.
pub fn module_action(m: &FPModule, a: &Poly, e: &[Poly]) -> Result<Vec<Poly>> {
    m.base.check_arity(a)?;
    m.check_element(e)?;
    let scaled: Vec<Poly> = e.iter().map(|c| c.mul(a)).collect();
    m.normal_form(&scaled)
}

/// A ring built from a module: the base variables followed by one variable
/// per generator.
#[derive(Clone, Debug)]
pub struct ModuleRing {
    pub module: FPModule,
    pub ring: FPRing,
    /// `R → ring`.
    pub inclusion: RingMorphism,
    pub module_vars: Vec<usize>,
}

impl ModuleRing {
    fn build(m: &FPModule, ring: FPRing) -> ModuleRing {
        let n = m.base.nvars();
        let inclusion = RingMorphism::trusted(m.base.clone(), ring.clone(), (0..n).map(|i| ring.gen(i)).collect());
        ModuleRing { module: m.clone(), inclusion, module_vars: (n..n + m.rank()).collect(), ring }
    }

    /// The generator variables and base variables as an element of the ring.
    pub fn element(&self, e: &[Poly]) -> Result<Poly> {
        self.module.check_element(e)?;
        Ok(self.module.as_linear(e))
    }
}

/// `R ⊕ M` as the ring `R[u]/⟨relations of R, uᵢuⱼ, Σ rₖuₖ⟩`.
pub fn square_zero_extension(m: &FPModule) -> ModuleRing {
    ModuleRing::build(m, m.sze.clone())
}

/// `Sym_R(M)` as the ring `R[u]/⟨relations of R, Σ rₖuₖ⟩`.
pub fn symmetric_algebra(m: &FPModule) -> Result<ModuleRing> {
    let n = m.base.nvars();
    let nv = n + m.rank();
    let mut rels: Vec<Poly> = m.base.generators().iter().map(|g| embed(g, nv)).collect();
    rels.extend(m.relations.iter().map(|row| linear_form(row, nv, n)).filter(|p| !p.is_zero()));
    Ok(ModuleRing::build(m, FPRing::new(m.sze.vars().to_vec(), rels)?))
}

/// A linear map `M → M′` over a ring map `g: R → R′`, given by the images of
/// the generators of `M`.
#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    domain: FPModule,
    codomain: FPModule,
    base_map: RingMorphism,
    columns: Vec<Vec<Poly>>,
}

impl ModuleMorphism {
    /// An `R`-linear map; both modules must share their base ring.
    pub fn new(domain: FPModule, codomain: FPModule, columns: Vec<Vec<Poly>>) -> Result<Self> {
        if !domain.base.same_presentation(&codomain.base) {
            return Err(Error::RingMismatch("modules over different rings".into()));
        }
        let g = RingMorphism::identity(&domain.base);
        ModuleMorphism::over(g, domain, codomain, columns)
    }

    /// Linear over `g`: `f(a·m) = g(a)·f(m)`.
    pub fn over(g: RingMorphism, domain: FPModule, codomain: FPModule, columns: Vec<Vec<Poly>>) -> Result<Self> {
        if !g.domain().same_presentation(&domain.base) || !g.codomain().same_presentation(&codomain.base) {
            return Err(Error::SignatureMismatch("base map does not match the modules".into()));
        }
        if columns.len() != domain.rank() {
            return Err(Error::Shape(format!("{} images for {} generators", columns.len(), domain.rank())));
        }
        let columns = columns.iter().map(|c| codomain.normal_form(c)).collect::<Result<Vec<_>>>()?;
        let f = ModuleMorphism { domain, codomain, base_map: g, columns };
        for row in &f.domain.relations {
            let img = f.apply_raw(row)?;
            if !f.codomain.is_zero(&img)? {
                return Err(Error::IllDefined {
                    relation: f.domain.render(row),
                    image: f.codomain.render(&f.codomain.normal_form(&img)?),
                });
            }
        }
        Ok(f)
    }

    pub fn from_strs(domain: &FPModule, codomain: &FPModule, columns: &[&[&str]]) -> Result<Self> {
        let cols = columns.iter().map(|c| codomain.element(c)).collect::<Result<Vec<_>>>()?;
        ModuleMorphism::new(domain.clone(), codomain.clone(), cols)
    }

    pub fn identity(m: &FPModule) -> Self {
        let columns = (0..m.rank()).map(|k| m.generator(k)).collect();
        ModuleMorphism { domain: m.clone(), codomain: m.clone(), base_map: RingMorphism::identity(&m.base), columns }
    }

    pub fn domain(&self) -> &FPModule {
        &self.domain
    }

    pub fn codomain(&self) -> &FPModule {
        &self.codomain
    }

    pub fn base_map(&self) -> &RingMorphism {
        &self.base_map
    }

    /// Image of each generator, in normal form.
    pub fn columns(&self) -> &[Vec<Poly>] {
        &self.columns
    }

    fn apply_raw(&self, e: &[Poly]) -> Result<Vec<Poly>> {
        let mut acc = self.codomain.zero_element();
        for (c, col) in e.iter().zip(&self.columns) {
            let gc = self.base_map.apply_unchecked(c);
            for (a, x) in acc.iter_mut().zip(col) {
                *a = a.add(&gc.mul(x));
            }
        }
        Ok(acc)
    }

    pub fn apply(&self, e: &[Poly]) -> Result<Vec<Poly>> {
        self.domain.check_element(e)?;
        self.codomain.normal_form(&self.apply_raw(e)?)
    }
}

/// `g ∘ f`.
pub fn compose_module(g: &ModuleMorphism, f: &ModuleMorphism) -> Result<ModuleMorphism> {
    if !f.codomain.same_presentation(&g.domain) {
        return Err(Error::DomainMismatch("codomain of the first map is not the domain of the second".into()));
    }
    let base_map = crate::ring::compose(&g.base_map, &f.base_map)?;
    let columns = f.columns.iter().map(|c| g.apply(c)).collect::<Result<Vec<_>>>()?;
    Ok(ModuleMorphism { domain: f.domain.clone(), codomain: g.codomain.clone(), base_map, columns })
}

pub fn module_morphisms_equal(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<bool> {
    if !f.domain.same_presentation(&g.domain) || !f.codomain.same_presentation(&g.codomain) {
        return Err(Error::SignatureMismatch("maps between different modules".into()));
    }
    if !crate::ring::morphisms_equal(&f.base_map, &g.base_map)? {
        return Ok(false);
    }
    for (a, b) in f.columns.iter().zip(&g.columns) {
        if !f.codomain.elements_equal(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}
