//! Arrows of CRING or of its opposite, limits materialized as rings, and
//! reports of diagram checks.
//!
//! On the affine side an arrow `A → B` is carried by a ring map `B → A`,
//! and a pullback is carried by a pushout of rings.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{compose, embed, first_difference, tensor_over, tensor_slots, Difference, FPRing, RingMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Commutative rings, tangent bundle by dual numbers.
    Ring,
    /// Affine schemes, tangent bundle by Kähler differentials.
    Affine,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Ring => "ring",
            Side::Affine => "affine",
        })
    }
}

/// An arrow of the category on `side`.
#[derive(Clone)]
pub struct Arrow {
    side: Side,
    map: RingMorphism,
}

impl Arrow {
    pub fn new(side: Side, map: RingMorphism) -> Self {
        Arrow { side, map }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// The underlying ring map, in its ring direction.
    pub fn map(&self) -> &RingMorphism {
        &self.map
    }

    pub fn into_map(self) -> RingMorphism {
        self.map
    }

    pub fn source(&self) -> &FPRing {
        match self.side {
            Side::Ring => self.map.domain(),
            Side::Affine => self.map.codomain(),
        }
    }

    pub fn target(&self) -> &FPRing {
        match self.side {
            Side::Ring => self.map.codomain(),
            Side::Affine => self.map.domain(),
        }
    }

    pub fn identity(side: Side, ring: &FPRing) -> Self {
        Arrow { side, map: RingMorphism::identity(ring) }
    }
}

impl fmt::Debug for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {:?}", self.side, self.map)
    }
}

/// `g ∘ f` in the category.
pub fn comp(g: &Arrow, f: &Arrow) -> Result<Arrow> {
    if g.side != f.side {
        return Err(Error::SignatureMismatch("arrows from different categories".into()));
    }
    let map = match f.side {
        Side::Ring => compose(&g.map, &f.map)?,
        Side::Affine => compose(&f.map, &g.map)?,
    };
    Ok(Arrow { side: f.side, map })
}

/// Composite of a chain written in the usual right-to-left order:
/// `chain(&[h, g, f]) = h ∘ g ∘ f`.
pub fn chain(arrows: &[&Arrow]) -> Result<Arrow> {
    let (last, rest) = arrows.split_last().expect("empty chain");
    let mut acc = (*last).clone();
    for a in rest.iter().rev() {
        acc = comp(a, &acc)?;
    }
    Ok(acc)
}

pub fn arrow_difference(f: &Arrow, g: &Arrow) -> Result<Option<Difference>> {
    first_difference(&f.map, &g.map)
}

pub fn arrows_equal(f: &Arrow, g: &Arrow) -> Result<bool> {
    Ok(arrow_difference(f, g)?.is_none())
}

/// Where the variables of a fibre product over a split projection live.
#[derive(Clone, Debug)]
pub struct FiberLayout {
    /// `(variable of X, variable of P)` for the variables lying over the base.
    pub base: Vec<(usize, usize)>,
    /// Per copy, `(nilpotent variable of X, variable of P)`.
    pub copies: Vec<Vec<(usize, usize)>>,
    nil: Vec<usize>,
}

impl FiberLayout {
    fn slot_map(&self, x_vars: usize, copy: usize) -> Vec<usize> {
        let mut map = vec![0; x_vars];
        for &(x, p) in &self.base {
            map[x] = p;
        }
        for &(u, p) in &self.copies[copy] {
            map[u] = p;
        }
        map
    }
}

#[derive(Clone)]
enum Kind {
    Fiber(FiberLayout),
    Tangent(Box<Limit>),
    Pushout(Vec<(usize, usize)>),
}

/// A limit `X₁ ×_B ⋯ ×_B Xₙ` in the category, with its projections and the
/// maps `Xⱼ → B` it is taken over.
#[derive(Clone)]
pub struct Limit {
    side: Side,
    object: FPRing,
    projections: Vec<Arrow>,
    base_maps: Vec<Arrow>,
    kind: Kind,
}

impl fmt::Debug for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Limit[{}; {:?}]", self.side, self.object)
    }
}

impl Limit {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn object(&self) -> &FPRing {
        &self.object
    }

    pub fn width(&self) -> usize {
        self.projections.len()
    }

    pub fn projections(&self) -> &[Arrow] {
        &self.projections
    }

    /// `π_j`, counting from 1.
    pub fn pi(&self, j: usize) -> &Arrow {
        &self.projections[j - 1]
    }

    pub fn base_maps(&self) -> &[Arrow] {
        &self.base_maps
    }

    pub fn fiber_layout(&self) -> Option<&FiberLayout> {
        match &self.kind {
            Kind::Fiber(l) => Some(l),
            _ => None,
        }
    }

    /// `n` copies of a split projection `q: X → B` of rings.
    ///
    /// `q` must send some variables of `X` bijectively onto the variables of
    /// `B` and the rest to zero, and those remaining variables must multiply
    /// to zero pairwise.
    pub fn fiber(q: &RingMorphism, n: usize) -> Result<Limit> {
        let x = q.domain();
        let b = q.codomain();
        let mut over: Vec<Option<usize>> = vec![None; b.nvars()];
        let mut base = Vec::new();
        let mut nil = Vec::new();
        for v in 0..x.nvars() {
            let img = q.image(v);
            if img.is_zero() {
                nil.push(v);
            } else if let Some(bv) = img.as_variable().filter(|&bv| over[bv].is_none()) {
                over[bv] = Some(v);
                base.push(v);
            } else {
                return Err(Error::NotSplitForm(format!("`{}` maps to `{}`", x.vars()[v], b.render(img))));
            }
        }
        if over.iter().any(|o| o.is_none()) {
            return Err(Error::NotSplitForm("projection is not onto the base variables".into()));
        }
        for (k, &u) in nil.iter().enumerate() {
            for &w in &nil[k..] {
                if !x.nf(&x.gen(u).mul(&x.gen(w)))?.is_zero() {
                    return Err(Error::NotSplitForm(format!(
                        "`{}*{}` is not zero",
                        x.vars()[u],
                        x.vars()[w]
                    )));
                }
            }
        }
        let section_images: Vec<Poly> = over.iter().map(|v| x.gen(v.unwrap())).collect();
        RingMorphism::new(b.clone(), x.clone(), section_images)?;

        let mut vars: Vec<String> = base.iter().map(|&v| x.vars()[v].clone()).collect();
        let base_slots: Vec<(usize, usize)> = base.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut copies = Vec::new();
        for j in 1..=n {
            let mut c = Vec::new();
            for &u in &nil {
                let name = crate::ring::unique_name(&format!("{}_{}", x.vars()[u], j), &vars);
                c.push((u, vars.len()));
                vars.push(name);
            }
            copies.push(c);
        }
        let layout = FiberLayout { base: base_slots, copies, nil: nil.clone() };
        let np = vars.len();

        let mut b_to_p = vec![0; b.nvars()];
        for (bv, v) in over.iter().enumerate() {
            b_to_p[bv] = layout.base.iter().find(|(xv, _)| xv == &v.unwrap()).unwrap().1;
        }
        let mut rels: Vec<Poly> = b.generators().iter().map(|g| g.remap(np, &b_to_p)).collect();
        for g in x.generators() {
            let lin = g.part_of_degree(&nil, 1);
            if lin.is_zero() {
                continue;
            }
            for j in 0..n {
                rels.push(lin.remap(np, &layout.slot_map(x.nvars(), j)));
            }
        }
        let all: Vec<usize> = layout.copies.iter().flatten().map(|(_, p)| *p).collect();
        for (k, &a) in all.iter().enumerate() {
            for &c in &all[k..] {
                rels.push(Poly::var(np, a).mul(&Poly::var(np, c)));
            }
        }
        let object = FPRing::new(vars, rels)?;

        let mut projections = Vec::new();
        for j in 0..n {
            let mut images = vec![x.zero(); np];
            for &(xv, p) in &layout.base {
                images[p] = x.gen(xv);
            }
            for &(u, p) in &layout.copies[j] {
                images[p] = x.gen(u);
            }
            projections.push(Arrow::new(Side::Ring, RingMorphism::new(object.clone(), x.clone(), images)?));
        }
        let base_maps = vec![Arrow::new(Side::Ring, q.clone()); n];
        Ok(Limit { side: Side::Ring, object, projections, base_maps, kind: Kind::Fiber(layout) })
    }

    /// `T` applied to a ring-side limit, given the already built `T(P)`,
    /// `T(π_j)` and `T(q_j)`. Each `T(-)` adds one trailing variable.
    pub(crate) fn tangent_of(inner: Limit, object: FPRing, projections: Vec<Arrow>, base_maps: Vec<Arrow>) -> Limit {
        Limit { side: Side::Ring, object, projections, base_maps, kind: Kind::Tangent(Box::new(inner)) }
    }

    /// `n`-fold pushout of one ring map `b: B → X`, the affine-side limit.
    pub fn pushout_power(b: &RingMorphism, n: usize) -> Result<Limit> {
        let base = b.domain();
        let x = b.codomain();
        let mut object = x.clone();
        let mut injections = vec![RingMorphism::identity(x)];
        let mut cover: Vec<(usize, usize)> = (0..x.nvars()).map(|v| (0, v)).collect();
        for j in 1..n {
            let leg = compose(&injections[0], b)?;
            let po = tensor_over(base, &object, x, &leg, b)?;
            let (slot, _) = tensor_slots(base, object.nvars(), b);
            let mut fresh: Vec<(usize, usize)> = slot.iter().enumerate().filter_map(|(y, s)| s.map(|k| (k, y))).collect();
            fresh.sort();
            cover.extend(fresh.into_iter().map(|(_, y)| (j, y)));
            injections = injections.iter().map(|i| compose(&po.inj1, i)).collect::<Result<Vec<_>>>()?;
            injections.push(po.inj2);
            object = po.ring;
        }
        let projections = injections.into_iter().map(|i| Arrow::new(Side::Affine, i)).collect();
        let base_maps = vec![Arrow::new(Side::Affine, b.clone()); n];
        Ok(Limit { side: Side::Affine, object, projections, base_maps, kind: Kind::Pushout(cover) })
    }

    /// The tangent of an affine-side limit: `T` of the object with the
    /// tangent injections. Each `d v` is covered by the `d` of whatever
    /// covers `v`.
    pub(crate) fn affine_tangent_of(&self, object: FPRing, projections: Vec<Arrow>, base_maps: Vec<Arrow>) -> Result<Limit> {
        let Kind::Pushout(cover) = &self.kind else {
            return Err(Error::SignatureMismatch("expected an affine-side limit".into()));
        };
        let widths: Vec<usize> = self.projections.iter().map(|p| p.map().domain().nvars()).collect();
        let mut t = cover.clone();
        t.extend(cover.iter().map(|&(j, w)| (j, widths[j] + w)));
        if t.len() != object.nvars() {
            return Err(Error::Shape(format!("{} covered variables for {} in the tangent", t.len(), object.nvars())));
        }
        Ok(Limit { side: Side::Affine, object, projections, base_maps, kind: Kind::Pushout(t) })
    }

    fn check_cone(&self, legs: &[Arrow]) -> Result<()> {
        if legs.len() != self.width() {
            return Err(Error::Shape(format!("{} legs for a width-{} limit", legs.len(), self.width())));
        }
        let first = comp(&self.base_maps[0], &legs[0])?;
        for (j, leg) in legs.iter().enumerate().skip(1) {
            let other = comp(&self.base_maps[j], leg)?;
            if let Some(d) = arrow_difference(&first, &other)? {
                return Err(Error::Cone(format!(
                    "legs 1 and {} differ over the base at `{}`: {} vs {}",
                    j + 1,
                    d.var,
                    d.left,
                    d.right
                )));
            }
        }
        Ok(())
    }

    /// The mediating arrow `⟨f₁, …, fₙ⟩` into the limit.
    pub fn pair(&self, legs: &[Arrow]) -> Result<Arrow> {
        self.check_cone(legs)?;
        let source = legs[0].source().clone();
        match &self.kind {
            Kind::Pushout(cover) => {
                let images = cover.iter().map(|&(j, w)| legs[j].map().image(w).clone()).collect();
                Ok(Arrow::new(Side::Affine, RingMorphism::new(self.object.clone(), source, images)?))
            }
            _ => {
                let images = (0..source.nvars())
                    .map(|s| {
                        let elems: Vec<Poly> = legs.iter().map(|l| l.map().image(s).clone()).collect();
                        self.pair_elements(&elems)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Arrow::new(Side::Ring, RingMorphism::new(source, self.object.clone(), images)?))
            }
        }
    }

    /// Element-level pairing on the ring side: the element of the fibre
    /// product with the given components.
    fn pair_elements(&self, elems: &[Poly]) -> Result<Poly> {
        let np = self.object.nvars();
        match &self.kind {
            Kind::Fiber(layout) => {
                let xn = self.projections[0].target().nvars();
                let mut acc = Poly::zero(np);
                for (j, e) in elems.iter().enumerate() {
                    if e.degree_in(&layout.nil) > 1 {
                        return Err(Error::NotSplitForm("component of nilpotent degree above one".into()));
                    }
                    let map = layout.slot_map(xn, j);
                    if j == 0 {
                        acc = acc.add(&e.part_of_degree(&layout.nil, 0).remap(np, &map));
                    }
                    acc = acc.add(&e.part_of_degree(&layout.nil, 1).remap(np, &map));
                }
                Ok(acc)
            }
            Kind::Tangent(inner) => {
                let mut lows = Vec::new();
                let mut highs = Vec::new();
                for e in elems {
                    let t = e.nvars() - 1;
                    let mut parts = e.split_by_var(t);
                    if parts.len() > 2 {
                        return Err(Error::NotSplitForm("tangent component of degree above one".into()));
                    }
                    parts.resize(2, Poly::zero(e.nvars()));
                    let drop: Vec<usize> = (0..t).chain(std::iter::once(0)).collect();
                    lows.push(parts[0].remap(t, &drop));
                    highs.push(parts[1].remap(t, &drop));
                }
                let lo = embed(&inner.pair_elements(&lows)?, np);
                let hi = embed(&inner.pair_elements(&highs)?, np);
                Ok(lo.add(&hi.mul(&Poly::var(np, np - 1))))
            }
            Kind::Pushout(_) => unreachable!(),
        }
    }
}

/// Why a diagram failed.
#[derive(Clone, Debug, PartialEq)]
pub enum Failure {
    /// The two composites differ on a generator.
    Differs(Difference),
    /// A composite could not be formed (for instance a cone that does not
    /// commute).
    Broken(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Differs(d) => write!(f, "{}: {} != {}", d.var, d.left, d.right),
            Failure::Broken(m) => f.write_str(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomEntry {
    pub id: String,
    pub failure: Option<Failure>,
}

impl AxiomEntry {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }

    pub fn witness(&self) -> Option<String> {
        self.failure.as_ref().map(|f| f.to_string())
    }
}

/// Outcome of a batch of diagram checks, in a fixed order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass())
    }

    pub fn failures(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| !e.pass()).map(|e| e.id.as_str()).collect()
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Runs one diagram: every pair produced must be equal.
    pub fn check(&mut self, id: &str, build: impl FnOnce() -> Result<Vec<(Arrow, Arrow)>>) {
        let failure = match build() {
            Err(e) => Some(Failure::Broken(e.to_string())),
            Ok(pairs) => pairs.iter().find_map(|(l, r)| match arrow_difference(l, r) {
                Ok(None) => None,
                Ok(Some(d)) => Some(Failure::Differs(d)),
                Err(e) => Some(Failure::Broken(e.to_string())),
            }),
        };
        self.entries.push(AxiomEntry { id: id.to_string(), failure });
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.entries.extend(other.entries);
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            match &e.failure {
                None => writeln!(f, "pass  {}", e.id)?,
                Some(w) => writeln!(f, "FAIL  {}  ({})", e.id, w)?,
            }
        }
        Ok(())
    }
}
