//! Differential bundles with negatives on both sides, and their
//! correspondence with modules.
//!
//! Every bundle lives on one [`Side`]. Its arrows are arrows of that
//! category, so one checker serves both: on the ring side `T` is the dual
//! numbers, on the affine side it is the Kähler tangent.

use crate::axioms::TangentStructure;
use crate::category::{arrows_equal, comp, Arrow, AxiomReport, Limit, Side};
use crate::dual::DualTangent;
use crate::error::{Error, Result};
use crate::kahler::{differential, KahlerTangentStructure};
use crate::module::{square_zero_extension, symmetric_algebra, FPModule, ModuleMorphism};
use crate::poly::{Monomial, Poly};
use crate::ring::{embed, FPRing, RingMorphism};

/// The tangent structure used for bundles on `side`.
pub fn structure(side: Side) -> &'static dyn TangentStructure {
    match side {
        Side::Ring => &DualTangent,
        Side::Affine => &KahlerTangentStructure,
    }
}

/// `E ×_A ⋯ ×_A E`, `n` times, over `q: E → A`.
pub fn bundle_width(q: &Arrow, n: usize) -> Result<Limit> {
    match q.side() {
        Side::Ring => Limit::fiber(q.map(), n),
        Side::Affine => Limit::pushout_power(q.map(), n),
    }
}

/// `(q, σ, z, λ, ι)` over a base `A` with total object `E`.
#[derive(Clone, Debug)]
pub struct DiffBundle {
    side: Side,
    q: Arrow,
    sigma: Arrow,
    zero: Arrow,
    lambda: Arrow,
    neg: Arrow,
    e2: Limit,
    e3: Limit,
}

impl DiffBundle {
    /// Builds the bundle and runs [`check_diff_bundle`] on it.
    pub fn new(q: Arrow, sigma: Arrow, zero: Arrow, lambda: Arrow, neg: Arrow) -> Result<Self> {
        let b = DiffBundle::unchecked(q, sigma, zero, lambda, neg)?;
        let report = check_diff_bundle(&b);
        if !report.all_pass() {
            return Err(Error::InvalidBundle(report.failures().join(", ")));
        }
        Ok(b)
    }

    /// Skips the axiom check; only the shapes are validated. Meant for
    /// building deliberately broken bundles.
    #[doc(hidden)]
    pub fn unchecked(q: Arrow, sigma: Arrow, zero: Arrow, lambda: Arrow, neg: Arrow) -> Result<Self> {
        let side = q.side();
        if [&sigma, &zero, &lambda, &neg].iter().any(|a| a.side() != side) {
            return Err(Error::SignatureMismatch("bundle arrows from different categories".into()));
        }
        let ts = structure(side);
        let e = q.source().clone();
        let a = q.target().clone();
        let e2 = bundle_width(&q, 2)?;
        let e3 = bundle_width(&q, 3)?;
        let te = ts.tangent(&e)?;
        let shapes: [(&str, &Arrow, &FPRing, &FPRing); 4] = [
            ("sum", &sigma, e2.object(), &e),
            ("zero", &zero, &a, &e),
            ("lift", &lambda, &e, &te),
            ("negative", &neg, &e, &e),
        ];
        for (name, f, s, t) in shapes {
            if !f.source().same_presentation(s) || !f.target().same_presentation(t) {
                return Err(Error::SignatureMismatch(format!("{} has the wrong source or target", name)));
            }
        }
        Ok(DiffBundle { side, q, sigma, zero, lambda, neg, e2, e3 })
    }

    pub fn side(&self) -> Side {
        self.side
    }
    pub fn base(&self) -> &FPRing {
        self.q.target()
    }
    pub fn total(&self) -> &FPRing {
        self.q.source()
    }
    pub fn q(&self) -> &Arrow {
        &self.q
    }
    pub fn sigma(&self) -> &Arrow {
        &self.sigma
    }
    pub fn zero(&self) -> &Arrow {
        &self.zero
    }
    pub fn lambda(&self) -> &Arrow {
        &self.lambda
    }
    pub fn neg(&self) -> &Arrow {
        &self.neg
    }
    /// `E₂` with its projections.
    pub fn width2(&self) -> &Limit {
        &self.e2
    }
    pub fn width3(&self) -> &Limit {
        &self.e3
    }

    /// The same data with one arrow replaced, unchecked.
    #[doc(hidden)]
    pub fn with_neg(&self, neg: Arrow) -> Result<Self> {
        DiffBundle::unchecked(self.q.clone(), self.sigma.clone(), self.zero.clone(), self.lambda.clone(), neg)
    }

    #[doc(hidden)]
    pub fn with_lambda(&self, lambda: Arrow) -> Result<Self> {
        DiffBundle::unchecked(self.q.clone(), self.sigma.clone(), self.zero.clone(), lambda, self.neg.clone())
    }
}

/// `(p_A, +_A, 0_A, ℓ_A, −_A)`.
pub fn tangent_bundle(side: Side, a: &FPRing) -> Result<DiffBundle> {
    let ts = structure(side);
    DiffBundle::unchecked(ts.proj(a)?, ts.sum(a)?, ts.zero(a)?, ts.lift(a)?, ts.neg(a)?)
}

/// `μ = T(σ) ∘ ⟨λ∘π₁, 0_E∘π₂⟩ : E₂ → T(E)`.
pub fn mu(b: &DiffBundle) -> Result<Arrow> {
    let ts = structure(b.side);
    let te2 = ts.tangent_limit(&b.e2)?;
    let legs = [comp(&b.lambda, b.e2.pi(1))?, comp(&ts.zero(b.total())?, b.e2.pi(2))?];
    comp(&ts.tangent_map(&b.sigma)?, &te2.pair(&legs)?)
}

/// Diagram ids reported by [`check_diff_bundle`], in order.
pub const BUNDLE_DIAGRAMS: [&str; 15] = [
    "DB.1:sum-proj",
    "DB.1:zero-proj",
    "DB.1:assoc",
    "DB.1:unit",
    "DB.1:comm",
    "DB.2:proj",
    "DB.2:sum",
    "DB.2:zero",
    "DB.3:proj",
    "DB.3:sum",
    "DB.3:zero",
    "DB.4:lift",
    "DB.5:square",
    "D.N:proj",
    "D.N:inverse",
];

pub fn check_diff_bundle(b: &DiffBundle) -> AxiomReport {
    let ts = structure(b.side);
    let a = b.base();
    let e = b.total();
    let (q, sigma, z, lambda, neg) = (&b.q, &b.sigma, &b.zero, &b.lambda, &b.neg);
    let (w2, w3) = (&b.e2, &b.e3);
    let id = |x: &FPRing| Arrow::identity(b.side, x);
    let mut r = AxiomReport::default();

    r.check("DB.1:sum-proj", || {
        let lhs = comp(q, sigma)?;
        Ok(vec![(lhs.clone(), comp(q, w2.pi(1))?), (lhs, comp(q, w2.pi(2))?)])
    });
    r.check("DB.1:zero-proj", || Ok(vec![(comp(q, z)?, id(a))]));
    r.check("DB.1:assoc", || {
        let left_in = comp(sigma, &w2.pair(&[w3.pi(1).clone(), w3.pi(2).clone()])?)?;
        let right_in = comp(sigma, &w2.pair(&[w3.pi(2).clone(), w3.pi(3).clone()])?)?;
        let lhs = comp(sigma, &w2.pair(&[left_in, w3.pi(3).clone()])?)?;
        let rhs = comp(sigma, &w2.pair(&[w3.pi(1).clone(), right_in])?)?;
        Ok(vec![(lhs, rhs)])
    });
    r.check("DB.1:unit", || {
        let zq = comp(z, q)?;
        let l = comp(sigma, &w2.pair(&[zq.clone(), id(e)])?)?;
        let rr = comp(sigma, &w2.pair(&[id(e), zq])?)?;
        Ok(vec![(l, id(e)), (rr, id(e))])
    });
    r.check("DB.1:comm", || {
        let swapped = comp(sigma, &w2.pair(&[w2.pi(2).clone(), w2.pi(1).clone()])?)?;
        Ok(vec![(swapped, sigma.clone())])
    });

    r.check("DB.2:proj", || Ok(vec![(comp(&ts.tangent_map(q)?, lambda)?, comp(&ts.zero(a)?, q)?)]));
    r.check("DB.2:sum", || {
        let tw2 = ts.tangent_limit(w2)?;
        let pair = tw2.pair(&[comp(lambda, w2.pi(1))?, comp(lambda, w2.pi(2))?])?;
        Ok(vec![(comp(&ts.tangent_map(sigma)?, &pair)?, comp(lambda, sigma)?)])
    });
    r.check("DB.2:zero", || Ok(vec![(comp(&ts.tangent_map(z)?, &ts.zero(a)?)?, comp(lambda, z)?)]));

    r.check("DB.3:proj", || Ok(vec![(comp(&ts.proj(e)?, lambda)?, comp(z, q)?)]));
    r.check("DB.3:sum", || {
        let te2 = ts.width(e, 2)?;
        let pair = te2.pair(&[comp(lambda, w2.pi(1))?, comp(lambda, w2.pi(2))?])?;
        Ok(vec![(comp(&ts.sum(e)?, &pair)?, comp(lambda, sigma)?)])
    });
    r.check("DB.3:zero", || Ok(vec![(comp(&ts.zero(e)?, z)?, comp(lambda, z)?)]));

    r.check("DB.4:lift", || {
        Ok(vec![(comp(&ts.tangent_map(lambda)?, lambda)?, comp(&ts.lift(e)?, lambda)?)])
    });

    r.check("DB.5:square", || {
        let lhs = comp(&ts.tangent_map(q)?, &mu(b)?)?;
        let zq = comp(&ts.zero(a)?, q)?;
        Ok(vec![(lhs.clone(), comp(&zq, w2.pi(1))?), (lhs, comp(&zq, w2.pi(2))?)])
    });

    r.check("D.N:proj", || Ok(vec![(comp(q, neg)?, q.clone())]));
    r.check("D.N:inverse", || {
        let zq = comp(z, q)?;
        let l = comp(sigma, &w2.pair(&[id(e), neg.clone()])?)?;
        let rr = comp(sigma, &w2.pair(&[neg.clone(), id(e)])?)?;
        Ok(vec![(l, zq.clone()), (rr, zq)])
    });
    r
}

/// The four equations of a pre-differential bundle `(q, z, λ)`.
pub fn check_pre_differential(q: &Arrow, z: &Arrow, lambda: &Arrow) -> AxiomReport {
    let ts = structure(q.side());
    let a = q.target();
    let e = q.source();
    let mut r = AxiomReport::default();
    r.check("PD:section", || Ok(vec![(comp(q, z)?, Arrow::identity(q.side(), a))]));
    r.check("PD:proj", || Ok(vec![(comp(&ts.proj(e)?, lambda)?, comp(z, q)?)]));
    r.check("PD:zero", || Ok(vec![(comp(lambda, z)?, comp(&ts.zero(e)?, z)?)]));
    r.check("PD:lift", || {
        Ok(vec![(comp(&ts.tangent_map(lambda)?, lambda)?, comp(&ts.lift(e)?, lambda)?)])
    });
    r
}

/// A bundle whose total object is the base with extra module variables.
///
/// Ring side: `q` sends the base variables of `E` onto those of `A` and the
/// module variables to zero; module variables multiply to zero. Affine side:
/// `q` sends the variables of `A` to variables of `E`, and the remaining
/// module variables satisfy only relations linear in them. On both sides
/// `z` is the evident section and `λ` is the standard lift, so that
/// `D_λ` kills the base variables and fixes the module variables.
#[derive(Clone, Debug)]
pub struct SplitForm {
    pub bundle: DiffBundle,
    /// `base_vars[i]` is the variable of `E` over variable `i` of `A`.
    pub base_vars: Vec<usize>,
    pub module_vars: Vec<usize>,
    pub module: FPModule,
}

#[derive(Clone, Debug)]
struct Split {
    base_vars: Vec<usize>,
    module_vars: Vec<usize>,
    module: FPModule,
}

fn not_split(msg: impl Into<String>) -> Error {
    Error::NotSplitForm(msg.into())
}

/// `D_λ(p)`: the `ε`-coefficient of `λ(p)` on the ring side, `λ(dp)` on the
/// affine side.
pub fn d_lambda(lambda: &Arrow, p: &Poly) -> Result<Poly> {
    let e = lambda.source();
    e.check_arity(p)?;
    let n = e.nvars();
    match lambda.side() {
        Side::Ring => {
            let t = lambda.target();
            let img = t.nf(&lambda.map().apply_unchecked(p))?;
            let mut parts = img.split_by_var(n);
            parts.resize(2, Poly::zero(n + 1));
            let keep: Vec<usize> = (0..=n).map(|i| i.min(n.saturating_sub(1))).collect();
            e.nf(&parts[1].remap(n, &keep))
        }
        Side::Affine => e.nf(&lambda.map().apply_unchecked(&differential(p))),
    }
}

fn recognize(q: &Arrow, z: &Arrow, lambda: &Arrow) -> Result<Split> {
    let side = q.side();
    let e = q.source();
    let a = q.target();
    let (n, m) = (e.nvars(), a.nvars());
    let mut over: Vec<Option<usize>> = vec![None; m];
    let mut is_base = vec![false; n];
    match side {
        Side::Ring => {
            for v in 0..n {
                let img = a.nf(q.map().image(v))?;
                if img.is_zero() {
                    continue;
                }
                match img.as_variable() {
                    Some(av) if over[av].is_none() => {
                        over[av] = Some(v);
                        is_base[v] = true;
                    }
                    _ => return Err(not_split(format!("`{}` maps to `{}`", e.vars()[v], a.render(&img)))),
                }
            }
        }
        Side::Affine => {
            for av in 0..m {
                match q.map().image(av).as_variable() {
                    Some(v) if !is_base[v] => {
                        over[av] = Some(v);
                        is_base[v] = true;
                    }
                    _ => return Err(not_split(format!("`{}` is not sent to a free variable", a.vars()[av]))),
                }
            }
        }
    }
    let base_vars = over
        .into_iter()
        .map(|o| o.ok_or_else(|| not_split("projection is not onto the base variables")))
        .collect::<Result<Vec<_>>>()?;
    let module_vars: Vec<usize> = (0..n).filter(|&v| !is_base[v]).collect();

    // z is the section over the base variables and kills the module variables.
    let zmap = z.map();
    let section_ok = match side {
        Side::Ring => {
            let mut ok = true;
            for (i, &v) in base_vars.iter().enumerate() {
                ok &= e.nf(&zmap.image(i).sub(&e.gen(v)))?.is_zero();
            }
            ok
        }
        Side::Affine => {
            let mut ok = true;
            for (i, &v) in base_vars.iter().enumerate() {
                ok &= a.nf(&zmap.image(v).sub(&a.gen(i)))?.is_zero();
            }
            for &u in &module_vars {
                ok &= a.nf(zmap.image(u))?.is_zero();
            }
            ok
        }
    };
    if !section_ok {
        return Err(not_split("zero section is not the inclusion of the base"));
    }
    if side == Side::Ring {
        for (k, &u) in module_vars.iter().enumerate() {
            for &w in &module_vars[k..] {
                if !e.nf(&e.gen(u).mul(&e.gen(w)))?.is_zero() {
                    return Err(not_split(format!("`{}*{}` is not zero", e.vars()[u], e.vars()[w])));
                }
            }
        }
    }
    for v in 0..n {
        let want = if is_base[v] { Poly::zero(n) } else { e.gen(v) };
        if !e.nf(&d_lambda(lambda, &e.gen(v))?.sub(&want))?.is_zero() {
            return Err(not_split(format!("lift is not standard at `{}`", e.vars()[v])));
        }
    }

    // Relations: homogeneous in the module variables; the linear ones give rows.
    let to_base = var_map_to_base(&base_vars, n);
    let mut rows = Vec::new();
    for g in e.generators() {
        let deg = g.degree_in(&module_vars);
        if g.part_of_degree(&module_vars, deg) != *g {
            return Err(not_split(format!("relation `{}` mixes degrees", e.render(g))));
        }
        match deg {
            0 => {}
            1 => rows.push(read_linear(g, &module_vars, &to_base, m)?),
            _ if side == Side::Ring => {}
            _ => return Err(not_split(format!("relation `{}` is not linear", e.render(g)))),
        }
    }
    let names = module_vars.iter().map(|&u| e.vars()[u].clone()).collect();
    let module = FPModule::new(a.clone(), names, rows)?;
    Ok(Split { base_vars, module_vars, module })
}

fn var_map_to_base(base_vars: &[usize], n: usize) -> Vec<usize> {
    let mut map = vec![0; n];
    for (i, &v) in base_vars.iter().enumerate() {
        map[v] = i;
    }
    map
}

/// Coefficients of a polynomial of degree exactly one in the module variables.
fn read_linear(p: &Poly, module_vars: &[usize], to_base: &[usize], m: usize) -> Result<Vec<Poly>> {
    let mut parts: Vec<Vec<_>> = vec![Vec::new(); module_vars.len()];
    for (mono, c) in p.terms() {
        let ex = mono.exponents();
        let hit: Vec<usize> = (0..module_vars.len()).filter(|&k| ex[module_vars[k]] > 0).collect();
        match hit.as_slice() {
            [k] if ex[module_vars[*k]] == 1 => {
                let mut exps = ex.to_vec();
                exps[module_vars[*k]] = 0;
                parts[*k].push((Monomial::from_exponents(exps).remap(m, to_base), c.clone()));
            }
            _ => return Err(not_split("element is not linear in the module variables")),
        }
    }
    Ok(parts.into_iter().map(|t| Poly::from_terms(m, t)).collect())
}

impl Split {
    /// An element of `E` of degree one in the module variables, as a module element.
    fn read(&self, e: &FPRing, p: &Poly) -> Result<Vec<Poly>> {
        let p = e.nf(p)?;
        let to_base = var_map_to_base(&self.base_vars, e.nvars());
        let lin = read_linear(&p, &self.module_vars, &to_base, self.base_vars.len())?;
        self.module.normal_form(&lin)
    }

    /// Relabels `E` into a module ring whose variables are the base
    /// variables followed by the module generators.
    fn relabel(&self, nvars: usize) -> Vec<usize> {
        let mut map = vec![0; self.base_vars.len() + self.module_vars.len()];
        for (i, &v) in self.base_vars.iter().enumerate() {
            map[v] = i;
        }
        for (k, &u) in self.module_vars.iter().enumerate() {
            map[u] = self.base_vars.len() + k;
        }
        debug_assert!(map.iter().all(|&i| i < nvars));
        map
    }
}

pub fn split_form(b: &DiffBundle) -> Result<SplitForm> {
    let s = recognize(&b.q, &b.zero, &b.lambda)?;
    Ok(SplitForm { bundle: b.clone(), base_vars: s.base_vars, module_vars: s.module_vars, module: s.module })
}

fn split_of(sf: &SplitForm) -> Split {
    Split { base_vars: sf.base_vars.clone(), module_vars: sf.module_vars.clone(), module: sf.module.clone() }
}

/// The sum on `E₂` over a fibre layout: every copy of a module variable goes
/// to that variable.
fn fiber_sum(w2: &Limit, e: &FPRing) -> Result<RingMorphism> {
    let layout = w2.fiber_layout().ok_or_else(|| Error::Shape("expected a fibre product".into()))?;
    let mut images = vec![e.zero(); w2.object().nvars()];
    for &(x, p) in &layout.base {
        images[p] = e.gen(x);
    }
    for copy in &layout.copies {
        for &(u, p) in copy {
            images[p] = e.gen(u);
        }
    }
    Ok(RingMorphism::trusted(w2.object().clone(), e.clone(), images))
}

/// `M̅_R(M)` on `M[ε]`.
pub fn mod_to_bundle_ring(m: &FPModule) -> Result<DiffBundle> {
    let sz = square_zero_extension(m);
    let e = sz.ring.clone();
    let a = m.base();
    let nb = a.nvars();
    let is_mod = |v: usize| v >= nb;

    let q = RingMorphism::trusted(e.clone(), a.clone(), (0..e.nvars()).map(|v| if is_mod(v) { a.zero() } else { a.gen(v) }).collect());
    let q = Arrow::new(Side::Ring, q);
    let z = Arrow::new(Side::Ring, sz.inclusion.clone());
    let neg = (0..e.nvars()).map(|v| if is_mod(v) { e.gen(v).neg() } else { e.gen(v) }).collect();
    let neg = Arrow::new(Side::Ring, RingMorphism::trusted(e.clone(), e.clone(), neg));
    let te = DualTangent.tangent(&e)?;
    let eps = te.gen(te.nvars() - 1);
    let lambda = (0..e.nvars()).map(|v| if is_mod(v) { te.gen(v).mul(&eps) } else { te.gen(v) }).collect();
    let lambda = Arrow::new(Side::Ring, RingMorphism::trusted(e.clone(), te, lambda));
    let w2 = bundle_width(&q, 2)?;
    let sigma = Arrow::new(Side::Ring, fiber_sum(&w2, &e)?);
    DiffBundle::unchecked(q, sigma, z, lambda, neg)
}

/// `M_R(M)` on `Sym_R(M)`.
pub fn mod_to_bundle_affine(m: &FPModule) -> Result<DiffBundle> {
    let sym = symmetric_algebra(m)?;
    let e = sym.ring.clone();
    let a = m.base();
    let nb = a.nvars();
    let ne = e.nvars();
    let is_mod = |v: usize| v >= nb;

    let q = Arrow::new(Side::Affine, sym.inclusion.clone());
    let z = (0..ne).map(|v| if is_mod(v) { a.zero() } else { a.gen(v) }).collect();
    let z = Arrow::new(Side::Affine, RingMorphism::trusted(e.clone(), a.clone(), z));
    let neg = (0..ne).map(|v| if is_mod(v) { e.gen(v).neg() } else { e.gen(v) }).collect();
    let neg = Arrow::new(Side::Affine, RingMorphism::trusted(e.clone(), e.clone(), neg));
    let te = KahlerTangentStructure.tangent(&e)?;
    let lambda = (0..2 * ne)
        .map(|v| if v >= ne && is_mod(v - ne) { e.gen(v - ne) } else if v < ne && !is_mod(v) { e.gen(v) } else { e.zero() })
        .collect();
    let lambda = Arrow::new(Side::Affine, RingMorphism::trusted(te, e.clone(), lambda));
    let w2 = bundle_width(&q, 2)?;
    let inj = |j: usize, v: usize| w2.pi(j).map().image(v).clone();
    let sigma = (0..ne).map(|v| if is_mod(v) { inj(1, v).add(&inj(2, v)) } else { inj(1, v) }).collect();
    let sigma = Arrow::new(Side::Affine, RingMorphism::trusted(e.clone(), w2.object().clone(), sigma));
    DiffBundle::unchecked(q, sigma, z, lambda, neg)
}

/// `ker q` with the action through `z`.
pub fn bundle_to_mod_ring(b: &DiffBundle) -> Result<FPModule> {
    if b.side != Side::Ring {
        return Err(Error::SignatureMismatch("expected a ring-side bundle".into()));
    }
    Ok(split_form(b)?.module)
}

/// `im D_λ`.
pub fn bundle_to_mod_affine(b: &DiffBundle) -> Result<FPModule> {
    if b.side != Side::Affine {
        return Err(Error::SignatureMismatch("expected an affine-side bundle".into()));
    }
    Ok(split_form(b)?.module)
}

/// The mediating arrow `S → E` of a cone `f: S → T(E)`, `g: S → A` over the
/// pullback of `λ` and `q`.
fn mediate(s: &Split, q: &Arrow, z: &Arrow, lambda: &Arrow, f: &Arrow, g: &Arrow) -> Result<Arrow> {
    let side = q.side();
    let e = q.source();
    let src = f.source().clone();
    let h = match side {
        Side::Ring => {
            // ⟨f, g⟩ = z∘g plus the ε′-part of f.
            let te = f.target();
            let n = e.nvars();
            let keep: Vec<usize> = (0..=n).map(|i| i.min(n.saturating_sub(1))).collect();
            let images = (0..src.nvars())
                .map(|v| {
                    let fe = te.nf(f.map().image(v))?;
                    let mut parts = fe.split_by_var(n);
                    parts.resize(2, Poly::zero(n + 1));
                    let low = z.map().apply_unchecked(g.map().image(v));
                    Ok(low.add(&parts[1].remap(n, &keep)))
                })
                .collect::<Result<Vec<_>>>()?;
            RingMorphism::new(src, e.clone(), images)?
        }
        Side::Affine => {
            // [f, g] sends a base variable through g and a module variable u to f(du).
            let n = e.nvars();
            let mut images = vec![Poly::zero(src.nvars()); n];
            for (i, &v) in s.base_vars.iter().enumerate() {
                images[v] = g.map().image(i).clone();
            }
            for &u in &s.module_vars {
                images[u] = f.map().image(n + u).clone();
            }
            RingMorphism::new(e.clone(), src, images)?
        }
    };
    let h = Arrow::new(side, h);
    if !arrows_equal(&comp(lambda, &h)?, f)? || !arrows_equal(&comp(q, &h)?, g)? {
        return Err(Error::Cone("the legs do not factor through the lift".into()));
    }
    Ok(h)
}

/// `σ` and `ι` from a pre-differential bundle `(q, z, λ)` by the universal
/// property of the pullback of `λ` along `0_A`.
pub fn derive_sum_and_negative_via_rosicky(q: &Arrow, z: &Arrow, lambda: &Arrow) -> Result<(Arrow, Arrow)> {
    let report = check_pre_differential(q, z, lambda);
    if !report.all_pass() {
        return Err(Error::NotPreDifferential(report.failures().join(", ")));
    }
    let s = recognize(q, z, lambda)?;
    let ts = structure(q.side());
    let e = q.source();
    let w2 = bundle_width(q, 2)?;
    let te2 = ts.width(e, 2)?;
    let legs = [comp(lambda, w2.pi(1))?, comp(lambda, w2.pi(2))?];
    let f = comp(&ts.sum(e)?, &te2.pair(&legs)?)?;
    let sigma = mediate(&s, q, z, lambda, &f, &comp(q, w2.pi(1))?)?;
    let f = comp(&ts.neg(e)?, lambda)?;
    let neg = mediate(&s, q, z, lambda, &f, q)?;
    Ok((sigma, neg))
}

/// A pair `(f, g)` of arrows `E → E′` and `A → A′`.
#[derive(Clone, Debug)]
pub struct BundleMorphism {
    pub source: DiffBundle,
    pub target: DiffBundle,
    pub f: Arrow,
    pub g: Arrow,
}

impl BundleMorphism {
    pub fn new(source: DiffBundle, target: DiffBundle, f: Arrow, g: Arrow) -> Result<Self> {
        let m = BundleMorphism::unchecked(source, target, f, g)?;
        let report = check_bundle_morphism(&m);
        if !report.all_pass() {
            return Err(Error::InvalidBundle(format!("not a bundle morphism: {}", report.failures().join(", "))));
        }
        Ok(m)
    }

    #[doc(hidden)]
    pub fn unchecked(source: DiffBundle, target: DiffBundle, f: Arrow, g: Arrow) -> Result<Self> {
        if source.side != target.side || f.side() != source.side || g.side() != source.side {
            return Err(Error::SignatureMismatch("bundle morphism across categories".into()));
        }
        let fits = |a: &Arrow, s: &FPRing, t: &FPRing| a.source().same_presentation(s) && a.target().same_presentation(t);
        if !fits(&f, source.total(), target.total()) || !fits(&g, source.base(), target.base()) {
            return Err(Error::SignatureMismatch("bundle morphism has the wrong source or target".into()));
        }
        Ok(BundleMorphism { source, target, f, g })
    }

    pub fn identity(b: &DiffBundle) -> Self {
        BundleMorphism {
            source: b.clone(),
            target: b.clone(),
            f: Arrow::identity(b.side, b.total()),
            g: Arrow::identity(b.side, b.base()),
        }
    }
}

pub fn compose_bundle(h: &BundleMorphism, k: &BundleMorphism) -> Result<BundleMorphism> {
    Ok(BundleMorphism {
        source: k.source.clone(),
        target: h.target.clone(),
        f: comp(&h.f, &k.f)?,
        g: comp(&h.g, &k.g)?,
    })
}

pub fn bundle_morphisms_equal(h: &BundleMorphism, k: &BundleMorphism) -> Result<bool> {
    Ok(arrows_equal(&h.f, &k.f)? && arrows_equal(&h.g, &k.g)?)
}

/// The two defining squares, then preservation of `σ`, `z` and `ι`.
pub fn check_bundle_morphism(m: &BundleMorphism) -> AxiomReport {
    let ts = structure(m.source.side);
    let (s, t) = (&m.source, &m.target);
    let (f, g) = (&m.f, &m.g);
    let mut r = AxiomReport::default();
    r.check("BM:proj", || Ok(vec![(comp(&t.q, f)?, comp(g, &s.q)?)]));
    r.check("BM:lift", || Ok(vec![(comp(&ts.tangent_map(f)?, &s.lambda)?, comp(&t.lambda, f)?)]));
    r.check("BM:sum", || {
        let pair = t.e2.pair(&[comp(f, s.e2.pi(1))?, comp(f, s.e2.pi(2))?])?;
        Ok(vec![(comp(&t.sigma, &pair)?, comp(f, &s.sigma)?)])
    });
    r.check("BM:zero", || Ok(vec![(comp(&t.zero, g)?, comp(f, &s.zero)?)]));
    r.check("BM:neg", || Ok(vec![(comp(&t.neg, f)?, comp(f, &s.neg)?)]));
    r
}

/// `α_M: M → ker q_M` and its inverse.
pub fn alpha_iso(m: &FPModule) -> Result<(ModuleMorphism, ModuleMorphism)> {
    let k = bundle_to_mod_ring(&mod_to_bundle_ring(m)?)?;
    let alpha = ModuleMorphism::new(m.clone(), k.clone(), (0..m.rank()).map(|i| k.generator(i)).collect())?;
    let inv = ModuleMorphism::new(k.clone(), m.clone(), (0..k.rank()).map(|i| m.generator(i)).collect())?;
    check_inverse_modules(&alpha, &inv)?;
    Ok((alpha, inv))
}

fn check_inverse_modules(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<()> {
    use crate::module::{compose_module, module_morphisms_equal};
    let gf = compose_module(g, f)?;
    let fg = compose_module(f, g)?;
    if !module_morphisms_equal(&gf, &ModuleMorphism::identity(f.domain()))?
        || !module_morphisms_equal(&fg, &ModuleMorphism::identity(f.codomain()))?
    {
        return Err(Error::InvalidBundle("maps are not mutually inverse".into()));
    }
    Ok(())
}

fn check_inverse_bundles(f: &BundleMorphism, g: &BundleMorphism) -> Result<()> {
    let gf = compose_bundle(g, f)?;
    let fg = compose_bundle(f, g)?;
    if !bundle_morphisms_equal(&gf, &BundleMorphism::identity(&f.source))?
        || !bundle_morphisms_equal(&fg, &BundleMorphism::identity(&f.target))?
    {
        return Err(Error::InvalidBundle("maps are not mutually inverse".into()));
    }
    Ok(())
}

/// `β_E: E → M̅_R(ker q)`, `x ↦ q(x) + D_λ(x)ε`, and its inverse
/// `a + xε ↦ z(a) + x`.
pub fn beta_iso(b: &DiffBundle) -> Result<(BundleMorphism, BundleMorphism)> {
    if b.side != Side::Ring {
        return Err(Error::SignatureMismatch("expected a ring-side bundle".into()));
    }
    let sf = split_form(b)?;
    let s = split_of(&sf);
    let target = mod_to_bundle_ring(&s.module)?;
    let e = b.total();
    let e2 = target.total();
    let nb = b.base().nvars();
    let images = (0..e.nvars())
        .map(|v| {
            let low = embed(&b.q.map().apply_unchecked(&e.gen(v)), e2.nvars());
            let high = s.module.as_linear(&s.read(e, &d_lambda(&b.lambda, &e.gen(v))?)?);
            Ok(low.add(&high))
        })
        .collect::<Result<Vec<_>>>()?;
    let beta = Arrow::new(Side::Ring, RingMorphism::new(e.clone(), e2.clone(), images)?);
    let inv_images = (0..e2.nvars())
        .map(|v| if v < nb { b.zero.map().image(v).clone() } else { e.gen(s.module_vars[v - nb]) })
        .collect();
    let inv = Arrow::new(Side::Ring, RingMorphism::new(e2.clone(), e.clone(), inv_images)?);
    finish_iso(b, &target, beta, inv)
}

/// `ψ_E: E → M_R(im D_λ)`; as a ring map `Sym(im D_λ) → E` it sends `a` to
/// `q(a)` and each generator `D_λ(x)` to itself. The inverse is the copairing
/// `[q, δ]` with `δ(x) = z(x)` and `δ(dx) = D_λ(x)`.
pub fn psi_iso(b: &DiffBundle) -> Result<(BundleMorphism, BundleMorphism)> {
    if b.side != Side::Affine {
        return Err(Error::SignatureMismatch("expected an affine-side bundle".into()));
    }
    let sf = split_form(b)?;
    let s = split_of(&sf);
    let target = mod_to_bundle_affine(&s.module)?;
    let e = b.total();
    let sym = target.total();
    let nb = b.base().nvars();
    let images = (0..sym.nvars())
        .map(|v| if v < nb { b.q.map().image(v).clone() } else { e.gen(s.module_vars[v - nb]) })
        .collect();
    let psi = Arrow::new(Side::Affine, RingMorphism::new(sym.clone(), e.clone(), images)?);
    let map = s.relabel(sym.nvars());
    let mut inv_images = vec![Poly::zero(sym.nvars()); e.nvars()];
    for (i, &v) in s.base_vars.iter().enumerate() {
        inv_images[v] = sym.gen(i);
    }
    for &u in &s.module_vars {
        inv_images[u] = d_lambda(&b.lambda, &e.gen(u))?.remap(sym.nvars(), &map);
    }
    let inv = Arrow::new(Side::Affine, RingMorphism::new(e.clone(), sym.clone(), inv_images)?);
    finish_iso(b, &target, psi, inv)
}

fn finish_iso(b: &DiffBundle, target: &DiffBundle, f: Arrow, inv: Arrow) -> Result<(BundleMorphism, BundleMorphism)> {
    let id = Arrow::identity(b.side, b.base());
    let fwd = BundleMorphism::new(b.clone(), target.clone(), f, id.clone())?;
    let back = BundleMorphism::new(target.clone(), b.clone(), inv, id)?;
    check_inverse_bundles(&fwd, &back)?;
    Ok((fwd, back))
}

/// The ring map `R ⊕ M → R′ ⊕ M′` (or `Sym M → Sym M′`) induced by a module map.
fn induced_ring_map(f: &ModuleMorphism, dom: &FPRing, cod: &FPRing) -> RingMorphism {
    let nb = f.domain().base().nvars();
    let nc = cod.nvars();
    let nb2 = f.codomain().base().nvars();
    let mut images: Vec<Poly> = f.base_map().raw_images().iter().map(|p| embed(p, nc)).collect();
    for col in f.columns() {
        images.push(
            col.iter()
                .enumerate()
                .fold(Poly::zero(nc), |acc, (j, c)| acc.add(&embed(c, nc).mul(&Poly::var(nc, nb2 + j)))),
        );
    }
    debug_assert_eq!(images.len(), nb + f.domain().rank());
    RingMorphism::trusted(dom.clone(), cod.clone(), images)
}

/// `M̅_R(f)(a + mε) = g(a) + f(m)ε`.
pub fn mod_map_to_bundle_ring(f: &ModuleMorphism) -> Result<BundleMorphism> {
    let source = mod_to_bundle_ring(f.domain())?;
    let target = mod_to_bundle_ring(f.codomain())?;
    let map = induced_ring_map(f, source.total(), target.total());
    let fa = Arrow::new(Side::Ring, map);
    let ga = Arrow::new(Side::Ring, f.base_map().clone());
    BundleMorphism::unchecked(source, target, fa, ga)
}

/// `M_R(f)`, the ring map `m ↦ f(m)`, read as an arrow `M_R(M′) → M_R(M)`.
pub fn mod_map_to_bundle_affine(f: &ModuleMorphism) -> Result<BundleMorphism> {
    let source = mod_to_bundle_affine(f.codomain())?;
    let target = mod_to_bundle_affine(f.domain())?;
    let map = induced_ring_map(f, target.total(), source.total());
    let fa = Arrow::new(Side::Affine, map);
    let ga = Arrow::new(Side::Affine, f.base_map().clone());
    BundleMorphism::unchecked(source, target, fa, ga)
}

/// `M°(f, g)`: on the ring side `ker q → ker q′`, `x ↦ f(x)`; on the affine
/// side `im D_λ′ → im D_λ`, `D_λ′(x) ↦ D_λ(f(x))`.
pub fn bundle_map_to_module(m: &BundleMorphism) -> Result<ModuleMorphism> {
    let src = split_of(&split_form(&m.source)?);
    let tgt = split_of(&split_form(&m.target)?);
    let fm = m.f.map();
    match m.source.side {
        Side::Ring => {
            let cols = src
                .module_vars
                .iter()
                .map(|&u| tgt.read(m.target.total(), fm.image(u)))
                .collect::<Result<Vec<_>>>()?;
            ModuleMorphism::over(m.g.map().clone(), src.module, tgt.module, cols)
        }
        Side::Affine => {
            let e = m.source.total();
            let cols = tgt
                .module_vars
                .iter()
                .map(|&u| src.read(e, &d_lambda(&m.source.lambda, fm.image(u))?))
                .collect::<Result<Vec<_>>>()?;
            ModuleMorphism::over(m.g.map().clone(), tgt.module, src.module, cols)
        }
    }
}
