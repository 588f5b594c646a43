//! Reduced Gröbner bases under grevlex.
//!
//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer-Möller update, which covers both Buchberger criteria.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;
pub const STEP_BUDGET_ENV: &str = "TANCAT_STEP_BUDGET";

static BUDGET: AtomicU64 = AtomicU64::new(0);

/// Current S-polynomial reduction budget.
///
/// An explicit [`set_step_budget`] wins; otherwise `TANCAT_STEP_BUDGET` is
/// consulted, then the default of one million.
pub fn step_budget() -> u64 {
    let b = BUDGET.load(Ordering::Relaxed);
    if b != 0 {
        return b;
    }
    std::env::var(STEP_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|v| *v > 0)
        .unwrap_or(DEFAULT_STEP_BUDGET)
}

pub fn set_step_budget(steps: u64) {
    BUDGET.store(steps, Ordering::Relaxed);
}

/// Fully reduces `p` by a list of monic polynomials.
pub fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    let nvars = p.nvars();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut tail = p.clone();
    loop {
        let hit = tail.terms().iter().enumerate().find_map(|(k, (m, _))| {
            basis
                .iter()
                .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
                .map(|g| (k, g))
        });
        match hit {
            None => {
                rem.extend(tail.terms().iter().cloned());
                return Poly::from_sorted(nvars, rem);
            }
            Some((k, g)) => {
                rem.extend(tail.terms()[..k].iter().cloned());
                let (m, c) = tail.terms()[k].clone();
                let rest = Poly::from_sorted(nvars, tail.terms()[k..].to_vec());
                let q = g.leading_monomial().unwrap().cofactor(&m);
                let lc = g.leading_coeff().unwrap();
                tail = rest.add_mul_term(&(-c / lc), &q, g);
            }
        }
    }
}

/// Removes the leading term and returns the rest.
fn tail_of(p: &Poly) -> Poly {
    Poly::from_sorted(p.nvars(), p.terms()[1..].to_vec())
}

fn spoly(f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let a = tail_of(f).mul_term(&mf.cofactor(lcm), &cf.recip());
    a.add_mul_term(&-cg.recip(), &mg.cofactor(lcm), &tail_of(g))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State {
    polys: Vec<Poly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn active_polys(&self) -> Vec<Poly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p.clone())
            .collect()
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.lm(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lm(j).degree();
        si.max(sj)
    }

    /// Gebauer-Möller update for a new monic element.
    fn insert(&mut self, h: Poly, sugar: u32) {
        let t = self.polys.len();
        let lt = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(false);

        let mut cands: Vec<(usize, Monomial)> = (0..t)
            .filter(|&i| self.active[i])
            .map(|i| (i, self.lm(i).lcm(&lt)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((i, l)) = cands.pop() {
            let coprime = self.lm(i).coprime(&lt);
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((i, l));
            }
        }

        let lms: Vec<Monomial> = self.polys.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
        self.pairs.retain(|p| {
            !(lt.divides(&p.lcm) && lms[p.i].lcm(&lt) != p.lcm && lms[p.j].lcm(&lt) != p.lcm)
        });

        for (i, l) in kept {
            if self.lm(i).coprime(&lt) {
                continue;
            }
            let s = self.pair_sugar(i, t, &l);
            self.pairs.push(Pair { i, j: t, lcm: l, sugar: s });
        }

        for i in 0..t {
            if self.active[i] && lt.divides(self.lm(i)) {
                self.active[i] = false;
            }
        }
        self.active[t] = true;
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sugar.cmp(&b.sugar).then_with(|| a.lcm.cmp(&b.lcm)))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

fn interreduce(mut g: Vec<Poly>) -> Vec<Poly> {
    g.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            continue;
        }
        minimal.push(p);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let p = &minimal[k];
        let head = Poly::monomial(p.leading_monomial().unwrap().clone(), Rational::one());
        let rest = reduce(&tail_of(p).scale(&p.leading_coeff().unwrap().recip()), &others);
        out.push(head.add(&rest));
    }
    out.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    out
}

type Cache = Mutex<HashMap<Vec<Poly>, Arc<Vec<Poly>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// leading monomial, largest first. The zero ideal gives an empty basis.
pub fn buchberger(gens: &[Poly]) -> Result<Vec<Poly>> {
    buchberger_with_budget(gens, step_budget())
}

pub fn buchberger_with_budget(gens: &[Poly], budget: u64) -> Result<Vec<Poly>> {
    let mut key: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    key.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()).then_with(|| a.terms().len().cmp(&b.terms().len())));
    key.dedup();
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(hit.as_ref().clone());
    }
    let basis = compute(&key, budget)?;
    cache().lock().unwrap().insert(key, Arc::new(basis.clone()));
    Ok(basis)
}

fn compute(gens: &[Poly], budget: u64) -> Result<Vec<Poly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let nvars = first.nvars();
    let unit = || Ok(vec![Poly::one(nvars)]);
    let mut st = State { polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };

    let mut input: Vec<&Poly> = gens.iter().collect();
    input.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for f in input {
        let h = reduce(f, &st.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        st.insert(h.monic(), f.degree());
    }

    let mut steps: u64 = 0;
    while let Some(pair) = st.next_pair() {
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let s = spoly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm);
        let h = reduce(&s, &st.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        let sugar = pair.sugar.max(h.degree());
        st.insert(h.monic(), sugar);
    }
    Ok(interreduce(st.active_polys()))
}

/// True when every S-polynomial of `basis` reduces to zero.
pub fn is_groebner(basis: &[Poly]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let l = basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap());
            if !reduce(&spoly(&basis[i], &basis[j], &l), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// True when `p` lies in the ideal whose reduced basis is `basis`.
pub fn member(p: &Poly, basis: &[Poly]) -> bool {
    reduce(p, basis).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn single_monomial() {
        let g = buchberger(&[x(0).mul(&x(1))]).unwrap();
        assert_eq!(g, vec![x(0).mul(&x(1))]);
    }

    #[test]
    fn linear_elimination() {
        let g = buchberger(&[x(0).add(&x(1)), x(1)]).unwrap();
        assert_eq!(g, vec![x(0), x(1)]);
    }

    #[test]
    fn membership_after_substitution() {
        // x^2 - y, x^3
        let f = x(0).pow(2).sub(&x(1));
        let g = buchberger(&[f, x(0).pow(3)]).unwrap();
        assert!(member(&x(0).mul(&x(1)), &g));
        assert!(member(&x(0).pow(3), &g));
        assert!(!member(&x(0), &g));
        assert!(is_groebner(&g));
    }

    #[test]
    fn unit_ideal() {
        let g = buchberger(&[x(0), x(0).sub(&Poly::constant(3, rat(2)))]).unwrap();
        assert_eq!(g, vec![Poly::one(3)]);
    }

    #[test]
    fn budget_is_enforced() {
        let f = x(0).pow(3).sub(&x(1).pow(2).mul(&x(2)));
        let g = x(1).pow(3).sub(&x(0).mul(&x(2)).mul(&x(2)));
        let h = x(2).pow(3).sub(&x(0).pow(2).mul(&x(1)));
        let err = buchberger_with_budget(&[f, g, h, x(0).mul(&x(1)).mul(&x(2)).sub(&Poly::one(3))], 1);
        assert_eq!(err, Err(Error::BudgetExceeded(1)));
    }
}
