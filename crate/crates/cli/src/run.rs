use std::time::Instant;

use tancat::bundle::DiffBundle;
use tancat::category::Failure;
use tancat::derivation::{lie_bracket, Derivation};
use tancat::dual::{check_tangent_axioms, derivation_to_vf, dual_numbers, vf_to_derivation, VectorFieldDual};
use tancat::kahler::{check_costructure_axioms, flat, kahler_tangent, sharp, tangent_space_at};
use tancat::{
    bundle_to_mod_affine, bundle_to_mod_ring, check_diff_bundle, derive_sum_and_negative_via_rosicky, mod_to_bundle_affine,
    mod_to_bundle_ring, tangent_bundle, AxiomReport, Error, FPModule, FPRing, Point, Result, RingMorphism, Side,
};

use crate::report::{self, Payload, Report};
use crate::script::{Decl, MorphismDecl, Script};

/// Runs the script's command. `side` is used when the run line has no
/// `--side` of its own.
pub fn execute(script: &Script, side: Side) -> Report {
    let start = Instant::now();
    let payload = match dispatch(script, script.command.side.unwrap_or(side)) {
        Ok(p) => p,
        Err(e) => report::error(&e),
    };
    Report { payload, ms: start.elapsed().as_millis() }
}

struct Env<'a>(&'a Script);

impl<'a> Env<'a> {
    fn lookup(&self, name: &str) -> Result<&'a Decl> {
        self.0.get(name).ok_or_else(|| Error::VariableMismatch(format!("unresolved name `{}`", name)))
    }

    fn ring(&self, name: &str) -> Result<&'a FPRing> {
        match self.lookup(name)? {
            Decl::Ring(r) => Ok(r),
            d => Err(wrong_kind(name, d, "ring")),
        }
    }

    fn module(&self, name: &str) -> Result<&'a FPModule> {
        match self.lookup(name)? {
            Decl::Module { module, .. } => Ok(module),
            d => Err(wrong_kind(name, d, "module")),
        }
    }

    fn point(&self, name: &str) -> Result<(&'a str, &'a Point)> {
        match self.lookup(name)? {
            Decl::Point { on, point } => Ok((on, point)),
            d => Err(wrong_kind(name, d, "point")),
        }
    }

    fn morphism(&self, name: &str) -> Result<&'a MorphismDecl> {
        match self.lookup(name)? {
            Decl::Morphism(m) => Ok(m),
            d => Err(wrong_kind(name, d, "morphism")),
        }
    }

    fn ring_map(&self, name: &str) -> Result<RingMorphism> {
        let m = self.morphism(name)?;
        RingMorphism::new(self.ring(&m.domain)?.clone(), self.ring(&m.codomain)?.clone(), m.images.clone())
    }

    fn derivation(&self, name: &str) -> Result<Derivation> {
        let m = self.morphism(name)?;
        if m.domain != m.codomain {
            return Err(Error::SignatureMismatch(format!("derivation `{}` must map a ring to itself", name)));
        }
        Derivation::new(self.ring(&m.domain)?.clone(), m.images.clone())
    }

    /// A module gives its associated bundle, a ring its tangent bundle.
    fn bundle(&self, name: &str, side: Side) -> Result<DiffBundle> {
        match self.lookup(name)? {
            Decl::Module { module, .. } => match side {
                Side::Ring => mod_to_bundle_ring(module),
                Side::Affine => mod_to_bundle_affine(module),
            },
            Decl::Ring(r) => tangent_bundle(side, r),
            d => Err(wrong_kind(name, d, "module or ring")),
        }
    }
}

fn wrong_kind(name: &str, d: &Decl, want: &str) -> Error {
    Error::SignatureMismatch(format!("`{}` is a {}, expected a {}", name, d.kind(), want))
}

fn presentation(r: &FPRing) -> Result<Payload> {
    Ok(Payload::Presentation { vars: r.vars().to_vec(), relations: r.render_relations()? })
}

fn axiom_payload(rep: &AxiomReport) -> Payload {
    let budget = rep.entries.iter().find_map(|e| match &e.failure {
        Some(Failure::Broken(m)) if m.starts_with("Gröbner step budget") => Some(m.clone()),
        _ => None,
    });
    match budget {
        Some(message) => Payload::Error { message, exit: 3 },
        None => report::axioms(rep),
    }
}

fn map_pairs(f: &RingMorphism) -> Result<Vec<(String, String)>> {
    f.render()
}

fn derivation_pairs(d: &Derivation) -> Result<Vec<(String, String)>> {
    let r = d.ring();
    r.vars().iter().zip(d.images()).map(|(v, img)| Ok((v.clone(), r.render(&r.normal_form(img)?)))).collect()
}

fn dispatch(script: &Script, side: Side) -> Result<Payload> {
    let env = Env(script);
    let cmd = &script.command;
    let arity = |n: usize| -> Result<()> {
        if cmd.args.len() == n {
            Ok(())
        } else {
            Err(Error::Shape(format!("`{}` takes {} argument(s), got {}", cmd.name, n, cmd.args.len())))
        }
    };
    let a = &cmd.args;
    match cmd.name.as_str() {
        "tangent" => {
            arity(1)?;
            let r = env.ring(&a[0])?;
            match side {
                Side::Ring => presentation(&dual_numbers(r)?.ring),
                Side::Affine => presentation(&kahler_tangent(r)?.ring),
            }
        }
        "tangent-space" => {
            arity(2)?;
            if cmd.side == Some(Side::Ring) {
                return Err(Error::SignatureMismatch("tangent spaces at points are computed with --side scheme".into()));
            }
            let r = env.ring(&a[0])?;
            let (on, p) = env.point(&a[1])?;
            if on != a[0] {
                return Err(Error::RingMismatch(format!("point `{}` lies on `{}`, not `{}`", a[1], on, a[0])));
            }
            presentation(&tangent_space_at(r, p)?.ring)
        }
        "axioms" => {
            arity(1)?;
            let r = env.ring(&a[0])?;
            Ok(axiom_payload(&match side {
                Side::Ring => check_tangent_axioms(r),
                Side::Affine => check_costructure_axioms(r),
            }))
        }
        "bundle from-module" => {
            arity(1)?;
            let m = env.module(&a[0])?;
            let b = match side {
                Side::Ring => mod_to_bundle_ring(m)?,
                Side::Affine => mod_to_bundle_affine(m)?,
            };
            presentation(b.total())
        }
        "bundle check" => {
            arity(1)?;
            Ok(axiom_payload(&check_diff_bundle(&env.bundle(&a[0], side)?)))
        }
        "bundle to-module" => {
            arity(1)?;
            let b = env.bundle(&a[0], side)?;
            let m = match side {
                Side::Ring => bundle_to_mod_ring(&b)?,
                Side::Affine => bundle_to_mod_affine(&b)?,
            };
            Ok(Payload::Presentation {
                vars: m.gens().to_vec(),
                relations: m.relations().iter().map(|row| m.render(row)).collect(),
            })
        }
        "bundle derive-sum" => {
            arity(1)?;
            let b = env.bundle(&a[0], side)?;
            let (sum, neg) = derive_sum_and_negative_via_rosicky(b.q(), b.zero(), b.lambda())?;
            Ok(Payload::Maps(vec![("sum".into(), map_pairs(sum.map())?), ("negative".into(), map_pairs(neg.map())?)]))
        }
        "vf to-derivation" => {
            arity(1)?;
            let v = VectorFieldDual::new(env.ring_map(&a[0])?)?;
            Ok(Payload::Maps(vec![("derivation".into(), derivation_pairs(&vf_to_derivation(&v)?)?)]))
        }
        "vf from-derivation" => {
            arity(1)?;
            let v = derivation_to_vf(&env.derivation(&a[0])?)?;
            Ok(Payload::Maps(vec![("vector-field".into(), map_pairs(v.section())?)]))
        }
        "vf bracket" => {
            arity(2)?;
            let d = lie_bracket(&env.derivation(&a[0])?, &env.derivation(&a[1])?)?;
            Ok(Payload::Maps(vec![("bracket".into(), derivation_pairs(&d)?)]))
        }
        "transpose sharp" => {
            arity(2)?;
            let f = sharp(&env.ring_map(&a[0])?, env.ring(&a[1])?)?;
            Ok(Payload::Maps(vec![("sharp".into(), map_pairs(&f)?)]))
        }
        "transpose flat" => {
            arity(2)?;
            let g = flat(&env.ring_map(&a[0])?, env.ring(&a[1])?)?;
            Ok(Payload::Maps(vec![("flat".into(), map_pairs(&g)?)]))
        }
        other => Err(Error::Shape(format!("unknown command `{}`", other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use crate::script::parse;

    fn run(text: &str) -> Report {
        execute(&parse(text).unwrap(), Side::Affine)
    }

    #[test]
    fn tangent_on_both_sides() {
        let r = run("ring R = QQ[x] / (x^2)\nrun tangent R --side ring");
        assert_eq!(
            r.payload,
            Payload::Presentation { vars: vec!["x".into(), "eps".into()], relations: vec!["x^2".into(), "eps^2".into()] }
        );
        let r = run("ring R = QQ[x] / (x^2)\nrun tangent R");
        assert_eq!(
            r.payload,
            Payload::Presentation { vars: vec!["x".into(), "d_x".into()], relations: vec!["x^2".into(), "x*d_x".into()] }
        );
    }

    #[test]
    fn axioms_pass_on_a_line() {
        let r = run("ring R = QQ[x]\nrun axioms R --side ring");
        assert_eq!(r.status(), Status::Ok);
        assert!(matches!(&r.payload, Payload::Axioms(c) if c.len() == 19));
    }

    #[test]
    fn wrong_kinds_and_arity_are_input_errors() {
        let r = run("ring R = QQ[x]\nrun bundle from-module R");
        assert_eq!(r.exit_code(), 2);
        let r = run("ring R = QQ[x]\nrun tangent R R");
        assert_eq!(r.exit_code(), 2);
        let r = run("ring R = QQ[x]\nrun frobnicate R");
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn vector_fields_round_trip() {
        let r = run("ring R = QQ[x]\nmorphism D : R -> R = { x |-> x^2 }\nrun vf from-derivation D");
        assert_eq!(r.payload, Payload::Maps(vec![("vector-field".into(), vec![("x".into(), "x^2*eps + x".into())])]));
        let r = run("ring R = QQ[x]\nring T = QQ[x, eps] / (eps^2)\nmorphism V : R -> T = { x |-> x + x^2*eps }\nrun vf to-derivation V");
        assert_eq!(r.payload, Payload::Maps(vec![("derivation".into(), vec![("x".into(), "x^2".into())])]));
    }

    #[test]
    fn bracket_of_coordinate_fields() {
        let r = run(
            "ring R = QQ[x, y]\nmorphism A : R -> R = { x |-> 1, y |-> 0 }\nmorphism B : R -> R = { x |-> 0, y |-> x }\nrun vf bracket A B",
        );
        assert_eq!(r.payload, Payload::Maps(vec![("bracket".into(), vec![("x".into(), "0".into()), ("y".into(), "1".into())])]));
    }
}
