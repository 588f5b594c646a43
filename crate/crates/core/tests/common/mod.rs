//! Shared corpus, random generators and property suites for the integration tests.
#![allow(dead_code)]

use proptest::test_runner::{Config, RngSeed, TestCaseError, TestError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tancat::axioms::TangentStructure;
use tancat::derivation::{leibniz_extend, lie_bracket, Derivation};
use tancat::dual::DualTangent;
use tancat::groebner::buchberger;
use tancat::kahler::{flat, kahler_tangent, sharp, total_differential};
use tancat::ring::embed;
use tancat::{comp, morphisms_equal, rat, ratio, Arrow, FPModule, FPRing, Monomial, Poly, Rational, RingMorphism, Side};

pub fn ring(vars: &[&str], rels: &[&str]) -> FPRing {
    FPRing::parse(vars, rels).unwrap()
}

pub fn corpus() -> Vec<(&'static str, FPRing)> {
    vec![
        ("Q", FPRing::rationals()),
        ("Q[x]", ring(&["x"], &[])),
        ("Q[x]/(x^2)", ring(&["x"], &["x^2"])),
        ("Q[x,y]/(xy)", ring(&["x", "y"], &["x*y"])),
        ("sphere", ring(&["x", "y", "z"], &["x^2 + y^2 + z^2 - 1"])),
    ]
}

/// Free modules of rank 0, 1, 2 and a few cokernels over `r`.
pub fn module_corpus(r: &FPRing) -> Vec<(String, FPModule)> {
    let mut out = Vec::new();
    for k in 0..=2 {
        out.push((format!("free{}", k), FPModule::free(r, k).unwrap()));
    }
    let vars: Vec<String> = r.vars().to_vec();
    let first = vars.first().cloned().unwrap_or_else(|| "2".into());
    let last = vars.last().cloned().unwrap_or_else(|| "3".into());
    out.push((format!("coker[{}]", first), FPModule::parse_cokernel(r, &[&[first.as_str()]]).unwrap()));
    out.push((
        format!("coker[{};{}]", first, last),
        FPModule::parse_cokernel(r, &[&[first.as_str()], &[last.as_str()]]).unwrap(),
    ));
    out.push((
        format!("coker[{},{}]", first, last),
        FPModule::parse_cokernel(r, &[&[first.as_str(), last.as_str()]]).unwrap(),
    ));
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-3..=3))
}

/// A random polynomial of degree at most `deg` in the variables of `r`.
pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let mut exps = vec![0u32; nvars];
        let mut left = rng.gen_range(0..=deg);
        while left > 0 && nvars > 0 {
            exps[rng.gen_range(0..nvars)] += 1;
            left -= 1;
        }
        p = p.add(&Poly::monomial(Monomial::from_exponents(exps), small(rng)));
    }
    p
}

fn poly_in(rng: &mut ChaCha8Rng, r: &FPRing) -> Poly {
    random_poly(rng, r.nvars(), 2, 3)
}

/// Elements of `s` that square to zero, as building blocks.
fn nilpotents(s: &FPRing) -> Vec<Poly> {
    (0..s.nvars())
        .map(|i| s.gen(i))
        .filter(|g| s.normal_form(&g.mul(g)).unwrap().is_zero())
        .collect()
}

fn var_named(s: &FPRing, name: &str) -> Option<Poly> {
    s.var(name).ok()
}

/// A well-defined map from a corpus ring into `s`, together with a
/// derivation along it: images `h` and directions `w` with
/// `Σ ∂r/∂xᵢ(h)·wᵢ = 0` for each relation `r`.
pub fn random_map_with_direction(rng: &mut ChaCha8Rng, domain: usize, s: &FPRing) -> (FPRing, Vec<Poly>, Vec<Poly>) {
    let r = corpus()[domain].1.clone();
    let n = s.nvars();
    let zero = Poly::zero(n);
    let scale = |rng: &mut ChaCha8Rng, p: &Poly| p.mul(&Poly::constant(n, small(rng)));
    let (h, w) = match domain {
        0 => (vec![], vec![]),
        1 => (vec![poly_in(rng, s)], vec![poly_in(rng, s)]),
        2 => match nilpotents(s).first() {
            Some(e) => (vec![scale(rng, e)], vec![scale(rng, e)]),
            None => (vec![zero.clone()], vec![zero.clone()]),
        },
        3 => {
            if let (Some(x), Some(y)) = (var_named(s, "x"), var_named(s, "y")) {
                if s.normal_form(&x.mul(&y)).unwrap().is_zero() && s.nvars() == 2 {
                    let (a, b) = (x.mul(&poly_in(rng, s)), y.mul(&poly_in(rng, s)));
                    let (c, d) = (x.mul(&poly_in(rng, s)), y.mul(&poly_in(rng, s)));
                    return (r, vec![a, b], vec![c, d]);
                }
            }
            (vec![poly_in(rng, s), zero.clone()], vec![poly_in(rng, s), zero.clone()])
        }
        _ => {
            // A signed permutation of the sphere, or a rational point on it.
            let h: Vec<Poly> = if s.nvars() == 3 && s.generators().len() == 1 {
                let mut perm = vec![0usize, 1, 2];
                for i in (1..3).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                perm.iter().map(|&i| if rng.gen_bool(0.5) { s.gen(i) } else { s.gen(i).neg() }).collect()
            } else {
                let pt = [ratio(3, 5), ratio(4, 5), rat(0)];
                let mut perm = vec![0usize, 1, 2];
                for i in (1..3).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                perm.iter().map(|&i| Poly::constant(n, pt[i].clone())).collect()
            };
            let c = poly_in(rng, s);
            let w = vec![h[1].neg().mul(&c), h[0].mul(&c), zero.clone()];
            (h, w)
        }
    };
    (r, h, w)
}

/// A random well-defined ring map from a corpus ring into `s`.
pub fn random_map(rng: &mut ChaCha8Rng, domain: usize, s: &FPRing) -> RingMorphism {
    let (r, h, _) = random_map_with_direction(rng, domain, s);
    RingMorphism::new(r, s.clone(), h).unwrap()
}

/// A random derivation of a corpus ring.
pub fn random_derivation(rng: &mut ChaCha8Rng, idx: usize) -> Derivation {
    let r = corpus()[idx].1.clone();
    let w = match idx {
        4 => {
            let n = 3;
            let rot = |a: usize, b: usize| {
                let mut v = vec![Poly::zero(n); n];
                v[a] = r.gen(b).neg();
                v[b] = r.gen(a);
                v
            };
            let mut acc = vec![Poly::zero(n); n];
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                let c = random_poly(rng, n, 1, 2);
                for (s, t) in acc.iter_mut().zip(rot(a, b)) {
                    *s = s.add(&t.mul(&c));
                }
            }
            acc
        }
        _ => random_map_with_direction(rng, idx, &r).2,
    };
    Derivation::new(r, w).unwrap()
}

pub fn config(seed: u64) -> Config {
    Config { cases: 200, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

/// Runs `case` on 200 seeds drawn from a fixed-seed runner.
pub fn run_cases(seed: u64, case: impl Fn(u64) -> Result<(), TestCaseError>) -> Result<(), TestError<u64>> {
    let mut runner = TestRunner::new(config(seed));
    runner.run(&proptest::num::u64::ANY, |s| case(s))
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

/// Plain multivariate division: repeatedly cancel any term divisible by a
/// leading monomial, largest term first.
pub fn naive_remainder(p: &Poly, basis: &[Poly]) -> Poly {
    let mut rest = p.clone();
    let mut rem = Poly::zero(p.nvars());
    while let Some((m, c)) = rest.terms().iter().max_by(|a, b| a.0.cmp(&b.0)).cloned() {
        match basis.iter().find(|g| g.leading_monomial().map_or(false, |lm| lm.divides(&m))) {
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let factor = Poly::monomial(lm.cofactor(&m), c / g.leading_coeff().unwrap());
                rest = rest.sub(&factor.mul(g));
            }
            None => {
                let t = Poly::monomial(m, c);
                rest = rest.sub(&t);
                rem = rem.add(&t);
            }
        }
    }
    rem
}

pub fn groebner_case(seed: u64) -> Result<(), TestCaseError> {
    let mut g = rng(seed);
    let nv = g.gen_range(1..=3);
    let ngens = g.gen_range(1..=3);
    let gens: Vec<Poly> = (0..ngens).map(|_| random_poly(&mut g, nv, 3, 3)).collect();
    let names: Vec<String> = ["a", "b", "c"][..nv].iter().map(|s| s.to_string()).collect();
    let r = ok(FPRing::new(names, gens.clone()))?;
    let basis = ok(buchberger(&gens))?;
    let p = random_poly(&mut g, nv, 3, 4);
    let q = random_poly(&mut g, nv, 3, 4);
    let member = gens.iter().fold(Poly::zero(nv), |acc, h| acc.add(&h.mul(&random_poly(&mut g, nv, 1, 2))));
    let (a, b) = (small(&mut g), small(&mut g));

    let np = ok(r.normal_form(&p))?;
    check(ok(r.normal_form(&np))? == np, "normal form is not idempotent")?;
    let lin = ok(r.normal_form(&p.scale(&a).add(&q.scale(&b))))?;
    let parts = np.scale(&a).add(&ok(r.normal_form(&q))?.scale(&b));
    check(lin == parts, "normal form is not linear")?;
    for x in [&p, &member, &p.add(&member)] {
        let nf = ok(r.normal_form(x))?;
        let naive = naive_remainder(x, &basis);
        check(nf == naive, "division disagrees with the normal form")?;
    }
    check(ok(r.normal_form(&member))?.is_zero(), "ideal member has nonzero normal form")
}

pub fn leibniz_case(seed: u64) -> Result<(), TestCaseError> {
    let mut g = rng(seed);
    let idx = g.gen_range(1..5);
    let d = random_derivation(&mut g, idx);
    let r = d.ring().clone();
    let n = r.nvars();
    let p = random_poly(&mut g, n, 2, 3);
    let q = random_poly(&mut g, n, 2, 3);
    let lhs = ok(leibniz_extend(&d, &p.mul(&q)))?;
    let rhs = p.mul(&ok(leibniz_extend(&d, &q))?).add(&q.mul(&ok(leibniz_extend(&d, &p))?));
    check(ok(r.normal_form(&lhs.sub(&rhs)))?.is_zero(), "Leibniz law fails for a derivation")?;

    let t = ok(kahler_tangent(&r))?.ring;
    let m = t.nvars();
    let dpq = ok(total_differential(&p.mul(&q), &r))?;
    let split = embed(&p, m)
        .mul(&ok(total_differential(&q, &r))?)
        .add(&embed(&q, m).mul(&ok(total_differential(&p, &r))?));
    check(ok(t.normal_form(&dpq.sub(&split)))?.is_zero(), "Leibniz law fails for d")
}

pub fn jacobi_case(seed: u64) -> Result<(), TestCaseError> {
    let mut g = rng(seed);
    let idx = g.gen_range(1..5);
    let ds: Vec<Derivation> = (0..3).map(|_| random_derivation(&mut g, idx)).collect();
    let term = |a: &Derivation, b: &Derivation, c: &Derivation| ok(lie_bracket(a, &ok(lie_bracket(b, c))?));
    let t1 = term(&ds[0], &ds[1], &ds[2])?;
    let t2 = term(&ds[1], &ds[2], &ds[0])?;
    let t3 = term(&ds[2], &ds[0], &ds[1])?;
    let r = ds[0].ring();
    for i in 0..r.nvars() {
        let s = t1.image(i).add(t2.image(i)).add(t3.image(i));
        check(ok(r.normal_form(&s))?.is_zero(), "Jacobi identity fails")?;
    }
    Ok(())
}

pub fn transpose_case(seed: u64) -> Result<(), TestCaseError> {
    let mut g = rng(seed);
    let rings = corpus();
    let idx = g.gen_range(0..rings.len());
    let s = rings[g.gen_range(0..rings.len())].1.clone();
    let ts = ok(DualTangent.tangent(&s))?;
    let (r, h, w) = random_map_with_direction(&mut g, idx, &s);
    let m = ts.nvars();
    let eps = Poly::var(m, m - 1);
    let images = h.iter().zip(&w).map(|(a, b)| embed(a, m).add(&embed(b, m).mul(&eps))).collect();
    let f = ok(RingMorphism::new(r.clone(), ts, images))?;
    let fs = ok(sharp(&f, &s))?;
    let back = ok(flat(&fs, &r))?;
    check(ok(morphisms_equal(&back, &f))?, "flat(sharp f) differs from f")?;
    let again = ok(sharp(&back, &s))?;
    check(ok(morphisms_equal(&again, &fs))?, "sharp(flat g) differs from g")
}

pub fn naturality_case(seed: u64) -> Result<(), TestCaseError> {
    let mut g = rng(seed);
    let rings = corpus();
    let idx = g.gen_range(0..rings.len());
    let s = rings[g.gen_range(0..rings.len())].1.clone();
    let f = Arrow::new(Side::Ring, random_map(&mut g, idx, &s));
    let r = f.source().clone();
    let ts = DualTangent;
    let tf = ok(ts.tangent_map(&f))?;
    let ttf = ok(ts.tangent_map(&tf))?;
    let eq = |a: tancat::Result<Arrow>, b: tancat::Result<Arrow>| -> Result<bool, TestCaseError> {
        Ok(ok(tancat::category::arrows_equal(&ok(a)?, &ok(b)?))?)
    };
    check(eq(comp(&f, &ok(ts.proj(&r))?), comp(&ok(ts.proj(&s))?, &tf))?, "p is not natural")?;
    check(eq(comp(&tf, &ok(ts.zero(&r))?), comp(&ok(ts.zero(&s))?, &f))?, "0 is not natural")?;
    check(eq(comp(&tf, &ok(ts.neg(&r))?), comp(&ok(ts.neg(&s))?, &tf))?, "- is not natural")?;
    check(eq(comp(&ttf, &ok(ts.lift(&r))?), comp(&ok(ts.lift(&s))?, &tf))?, "lift is not natural")?;
    check(eq(comp(&ttf, &ok(ts.flip(&r))?), comp(&ok(ts.flip(&s))?, &ttf))?, "flip is not natural")?;
    let wr = ok(ts.width(&r, 2))?;
    let ws = ok(ts.width(&s, 2))?;
    let t2f = ok(ws.pair(&[ok(comp(&tf, wr.pi(1)))?, ok(comp(&tf, wr.pi(2)))?]))?;
    check(eq(comp(&tf, &ok(ts.sum(&r))?), comp(&ok(ts.sum(&s))?, &t2f))?, "+ is not natural")
}

pub const PROPERTY_SUITES: [(&str, u64, fn(u64) -> Result<(), TestCaseError>); 5] = [
    ("groebner normal form", 11, groebner_case),
    ("leibniz", 12, leibniz_case),
    ("jacobi", 13, jacobi_case),
    ("sharp/flat", 14, transpose_case),
    ("naturality", 15, naturality_case),
];
