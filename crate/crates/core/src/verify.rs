//! Seeded randomized verification suites. Each suite checks one family of
//! identities for the bracket engine, the coordinate oracle, or both, and
//! reports how many cases passed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::epb::{
    form_to_super, multivector_to_super, super_to_form, super_to_multivector, super_to_vvform, vector_to_super,
    vvform_to_super, CalibrationConstants, Engine,
};
use crate::error::Result;
use crate::gen::{self, PolyShape};
use crate::oracle::{self, DifferentialForm, Multivector, VectorValuedForm};
use crate::scalar::Scalar;
use crate::superalgebra::{Parity, SuperPoly};
use crate::symplectic::SymplecticContext;
use crate::textio::{self, print_canonical, Value, Workspace};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CASES: usize = 50;

type CaseResult = std::result::Result<(), String>;

/// Engines for the contexts under test, sharing one set of calibration
/// constants.
pub struct Env {
    engines: Vec<Engine>,
    constants: Result<CalibrationConstants>,
}

impl Env {
    /// Standard contexts with `n = 1, 2, 3`, plus `extra` when given, each
    /// built into an engine by `make`.
    pub fn new(extra: Option<SymplecticContext>, make: &dyn Fn(SymplecticContext) -> Engine) -> Self {
        let mut ctxs: Vec<SymplecticContext> =
            (1..=3).map(|n| SymplecticContext::standard(n).expect("small n")).collect();
        if let Some(c) = extra {
            if !ctxs.contains(&c) {
                ctxs.push(c);
            }
        }
        let mut engines: Vec<Engine> = ctxs.into_iter().map(make).collect();
        let constants = engines[0].constants().cloned();
        if let Ok(c) = &constants {
            engines = engines.into_iter().map(|e| e.with_constants(c.clone())).collect();
        }
        Env { engines, constants }
    }

    pub fn standard() -> Self {
        Env::new(None, &Engine::new)
    }

    /// Engine for case `i`, cycling over contexts with `n <= max_n`.
    fn engine(&self, i: usize, max_n: usize) -> &Engine {
        let pool: Vec<&Engine> = self.engines.iter().filter(|e| e.ctx().n() <= max_n).collect();
        pool[i % pool.len()]
    }

    fn constants(&self) -> std::result::Result<&CalibrationConstants, String> {
        self.constants.as_ref().map_err(|e| format!("calibration failed: {e}"))
    }
}

pub struct Suite {
    pub name: &'static str,
    run: fn(&Env, &mut ChaCha8Rng, usize) -> CaseResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn name_hash(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

pub fn run_suite(suite: &Suite, env: &Env, seed: u64, cases: usize) -> SuiteReport {
    let mut report = SuiteReport { name: suite.name, passed: 0, failed: 0, first_failure: None };
    for i in 0..cases {
        let case_seed = seed ^ name_hash(suite.name) ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
        match (suite.run)(env, &mut rng, i) {
            Ok(()) => report.passed += 1,
            Err(msg) => {
                report.failed += 1;
                if report.first_failure.is_none() {
                    report.first_failure = Some(format!("case {i}: {msg}"));
                }
            }
        }
    }
    report
}

pub fn run_all(env: &Env, seed: u64, cases: usize) -> Vec<SuiteReport> {
    suites().iter().map(|s| run_suite(s, env, seed, cases)).collect()
}

pub fn find(name: &str) -> Option<Suite> {
    suites().into_iter().find(|s| s.name == name)
}

pub fn suites() -> Vec<Suite> {
    macro_rules! s {
        ($name:literal, $f:ident) => {
            Suite { name: $name, run: $f }
        };
    }
    vec![
        s!("fundamental-brackets", fundamental),
        s!("graded-axioms", graded_axioms),
        s!("charge-algebra", charge_algebra),
        s!("exterior-derivative", exterior_derivative),
        s!("magic-formula", magic_formula),
        s!("hamilton-equations", hamilton),
        s!("degree-operator", degree_operator),
        s!("musical-maps", musical_maps),
        s!("transformation-laws", transformation_laws),
        s!("liouvillian", liouvillian),
        s!("symplectic-invariance", symplectic_invariance),
        s!("calibration", calibration),
        s!("oracle-lie", oracle_lie),
        s!("oracle-sn", oracle_sn),
        s!("oracle-fn", oracle_fn),
        s!("oracle-nr", oracle_nr),
        s!("sn-antisymmetry", sn_antisymmetry),
        s!("fn-defining-relation", fn_defining_relation),
        s!("reductions", reductions),
        s!("oracle-identities", oracle_identities),
        s!("round-trips", round_trips),
    ]
}

fn ok(e: Result<SuperPoly>) -> std::result::Result<SuperPoly, String> {
    e.map_err(|e| e.to_string())
}

fn check(cond: bool, what: impl FnOnce() -> String) -> CaseResult {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn check_eq(lhs: &SuperPoly, rhs: &SuperPoly, what: &str) -> CaseResult {
    check(lhs == rhs, || format!("{what}: {} != {}", print_canonical(lhs), print_canonical(rhs)))
}

fn e<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn parity_sign(a: &SuperPoly, b: &SuperPoly) -> Scalar {
    let pa = a.grade().parity.unwrap_or(Parity::Even).as_int();
    let pb = b.grade().parity.unwrap_or(Parity::Even).as_int();
    Scalar::sign(pa * pb)
}

fn axiom_shape() -> PolyShape {
    PolyShape { max_terms: 3, max_phi_degree: 3, max_lambda_degree: 2, max_grassmann: 3 }
}

// ---- bracket ----

fn fundamental(env: &Env, _r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 3);
    let dim = en.dim();
    let gens = |a: usize| -> [SuperPoly; 4] {
        [
            SuperPoly::phi(dim, a).unwrap(),
            SuperPoly::lambda(dim, a).unwrap(),
            SuperPoly::c(dim, a).unwrap(),
            SuperPoly::cbar(dim, a).unwrap(),
        ]
    };
    for a in 1..=dim {
        for b in 1..=dim {
            let (x, y) = (gens(a), gens(b));
            for (s, gx) in x.iter().enumerate() {
                for (t, gy) in y.iter().enumerate() {
                    let expected = match (s, t) {
                        (0, 1) if a == b => Scalar::one(),
                        (1, 0) if a == b => Scalar::from_int(-1),
                        (2, 3) | (3, 2) if a == b => -Scalar::i(),
                        _ => Scalar::zero(),
                    };
                    let got = ok(en.epb(gx, gy))?;
                    check_eq(&got, &SuperPoly::constant(dim, expected), &format!("{{{gx:?}, {gy:?}}}"))
                        .map_err(|_| format!("generator pair ({a},{s}) ({b},{t}) gives {}", print_canonical(&got)))?;
                }
            }
        }
    }
    Ok(())
}

fn graded_axioms(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 3);
    let dim = en.dim();
    let sh = axiom_shape();
    let a = gen::homogeneous_poly(r, dim, &sh);
    let b = gen::homogeneous_poly(r, dim, &sh);
    let c = gen::homogeneous_poly(r, dim, &sh);
    let br = |x: &SuperPoly, y: &SuperPoly| ok(en.epb(x, y));
    let ab = br(&a, &b)?;
    check_eq(&ab, &-br(&b, &a)?.scale(&parity_sign(&a, &b)), "graded antisymmetry")?;
    let lhs = br(&a, &(&b * &c))?;
    let rhs = &(&ab * &c) + &(&b * &br(&a, &c)?).scale(&parity_sign(&a, &b));
    check_eq(&lhs, &rhs, "Leibniz in the right slot")?;
    let lhs = br(&(&a * &b), &c)?;
    let rhs = &(&a * &br(&b, &c)?) + &(&br(&a, &c)? * &b).scale(&parity_sign(&b, &c));
    check_eq(&lhs, &rhs, "Leibniz in the left slot")?;
    let jac = &(&br(&a, &br(&b, &c)?)?.scale(&parity_sign(&a, &c))
        + &br(&b, &br(&c, &a)?)?.scale(&parity_sign(&b, &a)))
        + &br(&c, &br(&a, &b)?)?.scale(&parity_sign(&c, &b));
    check(jac.is_zero(), || format!("Jacobi defect {}", print_canonical(&jac)))
}

fn charge_algebra(env: &Env, _r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 3);
    let ch = en.charges();
    let zero = SuperPoly::zero(en.dim());
    check_eq(&ok(en.epb(&ch.q, &ch.q))?, &zero, "{Q,Q}")?;
    check_eq(&ok(en.epb(&ch.qbar, &ch.qbar))?, &zero, "{Qbar,Qbar}")?;
    check_eq(&ok(en.epb(&ch.qg, &ch.q))?.scale(&Scalar::i()), &ch.q, "i{Qg,Q}")?;
    check_eq(&ok(en.epb(&ch.qg, &ch.qbar))?.scale(&Scalar::i()), &-&ch.qbar, "i{Qg,Qbar}")
}

// ---- Cartan calculus ----

fn random_form(r: &mut ChaCha8Rng, dim: usize) -> DifferentialForm {
    let p = r.gen_range(0..=dim);
    gen::form(r, dim, p, 3)
}

fn exterior_derivative(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 3);
    let f = random_form(r, en.dim());
    let fh = form_to_super(&f);
    let dfh = ok(en.ext_d(&fh))?;
    check_eq(&dfh, &form_to_super(&oracle::d(&f)), "d against the oracle")?;
    check_eq(&ok(en.ext_d(&dfh))?, &SuperPoly::zero(en.dim()), "d∘d")
}

fn magic_formula(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 3);
    let dim = en.dim();
    let f = random_form(r, dim);
    let v = gen::vector_field(r, dim, 2);
    let fh = form_to_super(&f);
    let vh = ok(vector_to_super(&v))?;
    let lie = ok(en.lie_derivative(&v, &fh))?;
    let cartan = &ok(en.ext_d(&ok(en.interior(&vh, &fh))?))? + &ok(en.interior(&vh, &ok(en.ext_d(&fh))?))?;
    check_eq(&lie, &cartan, "L_V = d i_V + i_V d")?;
    check_eq(&ok(en.interior(&vh, &fh))?, &form_to_super(&e(oracle::interior(&v, &f))?), "i_V against the oracle")?;
    check_eq(&lie, &form_to_super(&e(oracle::lie_form(&v, &f))?), "L_V against the oracle")?;
    check_eq(&ok(en.ext_d(&lie))?, &ok(en.lie_derivative(&v, &ok(en.ext_d(&fh))?))?, "d L_V = L_V d")
}

fn hamilton(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 4);
    let dim = en.dim();
    let h = gen::hamiltonian(r, dim, 3);
    let lift = ok(en.hamiltonian_lift(&h))?;
    for a in 1..=dim {
        let x = SuperPoly::phi(dim, a).unwrap();
        check_eq(&ok(en.epb(&x, &lift))?, &ok(en.ctx().poisson_bracket(&x, &h))?, &format!("{{phi{a}, H~}}"))?;
    }
    Ok(())
}

fn degree_operator(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 3);
    let dim = en.dim();
    for p in 0..=dim {
        let f = form_to_super(&gen::form(r, dim, p, 2));
        check_eq(&ok(en.degree(&f))?, &f.scale(&Scalar::from_int(p as i64)), &format!("degree of a {p}-form"))?;
        let m = multivector_to_super(&gen::multivector(r, dim, p, 2));
        check_eq(&ok(en.degree(&m))?, &m.scale(&Scalar::from_int(-(p as i64))), &format!("degree of a {p}-vector"))?;
    }
    Ok(())
}

fn musical_maps(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 4);
    let dim = en.dim();
    let ctx = en.ctx();
    let f = gen::hamiltonian(r, dim, 3);
    // ω^{ab} ∂_b f, written out here rather than through the context
    let mut expected = SuperPoly::zero(dim);
    for a in 1..=dim {
        for b in 1..=dim {
            let w = Scalar::real(ctx.upper(a, b).clone());
            expected = &expected + &(&SuperPoly::cbar(dim, a).unwrap() * &f.deriv_phi(b).unwrap()).scale(&w);
        }
    }
    let sharp = ok(en.sharp(&f))?;
    check_eq(&sharp, &expected, "sharp")?;
    check_eq(&ok(en.flat(&sharp))?, &ok(en.ext_d(&f))?, "flat∘sharp = d")?;
    let v = gen::vector_field(r, dim, 2);
    let mut lowered = SuperPoly::zero(dim);
    for a in 1..=dim {
        for b in 1..=dim {
            let w = Scalar::real(ctx.lower(a, b).clone());
            lowered = &lowered + &(&v[b - 1] * &SuperPoly::c(dim, a).unwrap()).scale(&w);
        }
    }
    check_eq(&ok(en.flat(&ok(vector_to_super(&v))?))?, &lowered, "flat")
}

fn transformation_laws(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 4);
    let dim = en.dim();
    let h = gen::hamiltonian(r, dim, 3);
    let field = e(en.ctx().hamiltonian_vector_field(&h))?;
    let c = |a| SuperPoly::c(dim, a).unwrap();
    let cb = |a| SuperPoly::cbar(dim, a).unwrap();
    let l = |a| SuperPoly::lambda(dim, a).unwrap();
    let d = |p: &SuperPoly, a| p.deriv_phi(a).unwrap();
    for a in 1..=dim {
        let mut dc = SuperPoly::zero(dim);
        let mut dcb = SuperPoly::zero(dim);
        let mut dl = SuperPoly::zero(dim);
        for b in 1..=dim {
            dc = &dc - &(&c(b) * &d(&field[a - 1], b));
            dcb = &dcb + &(&cb(b) * &d(&field[b - 1], a));
            dl = &dl + &(&l(b) * &d(&field[b - 1], a));
            for k in 1..=dim {
                let term = &(&cb(k) * &d(&d(&field[k - 1], b), a)) * &c(b);
                dl = &dl + &term.scale(&Scalar::i());
            }
        }
        check_eq(&ok(en.evolve_infinitesimal(&c(a), &h))?, &dc, &format!("δc^{a}"))?;
        check_eq(&ok(en.evolve_infinitesimal(&cb(a), &h))?, &dcb, &format!("δc̄_{a}"))?;
        check_eq(&ok(en.evolve_infinitesimal(&l(a), &h))?, &dl, &format!("δλ_{a}"))?;
        let phi = SuperPoly::phi(dim, a).unwrap();
        check_eq(&ok(en.evolve_infinitesimal(&phi, &h))?, &-&field[a - 1], &format!("δφ^{a}"))?;
    }
    Ok(())
}

fn liouvillian(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 4);
    let dim = en.dim();
    let h = gen::hamiltonian(r, dim, 3);
    let rho = gen::phi_poly(r, dim, 3, 3);
    let lift = ok(en.hamiltonian_lift(&h))?;
    let lam = lift.filter(|m| m.lambda_degree() == 1 && m.c_count() == 0 && m.cbar_count() == 0);
    let schrodinger = ok(en.schrodinger_apply(&lam, &rho))?.scale(&Scalar::i());
    let direct = ok(oracle::apply_vector(&e(en.ctx().hamiltonian_vector_field(&h))?, &rho))?;
    check_eq(&schrodinger, &direct, "i·(λ-part of H~)ρ = h^a ∂_a ρ")?;
    check_eq(&ok(en.liouvillian_action(&h, &rho))?, &direct, "liouvillian")
}

fn symplectic_invariance(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 4);
    let dim = en.dim();
    let h = gen::hamiltonian(r, dim, 3);
    let field = e(en.ctx().hamiltonian_vector_field(&h))?;
    check_eq(&ok(en.lie_derivative(&field, &en.charges().k))?, &SuperPoly::zero(dim), "L_h ω")?;
    let omega = e(DifferentialForm::from_components(
        dim,
        2,
        oracle::ascending_tuples(dim, 2)
            .into_iter()
            .map(|ab| (ab.clone(), SuperPoly::constant(dim, Scalar::real(en.ctx().lower(ab[0], ab[1]).clone())))),
    ))?;
    check_eq(&form_to_super(&omega), &en.charges().k, "hatted ω is K")?;
    check(e(oracle::lie_form(&field, &omega))?.is_zero(), || "oracle L_h ω is not zero".into())
}

// ---- brackets ----

/// Cases 0..4 refit one full battery each; later cases check the shared
/// constant on a fresh raw instance.
fn calibration(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let c = env.constants()?;
    let en = env.engine(i / 4, 2);
    let dim = en.dim();
    let which = ["lie", "sn", "fn", "nr"][i % 4];
    let shared = c.named().into_iter().find(|(n, _)| *n == which).map(|(_, k)| k.clone()).expect("named constant");
    if i < 4 {
        let battery = match which {
            "lie" => crate::epb::lie_battery(en.ctx(), en.bracket()),
            "sn" => crate::epb::sn_battery(en.ctx(), en.bracket()),
            "fn" => crate::epb::fn_battery(en.ctx(), en.bracket()),
            _ => crate::epb::nr_battery(en.ctx(), en.bracket()),
        };
        let fitted = e(crate::epb::solve_constant(which, &e(battery)?))?;
        return check(fitted == shared, || format!("k_{which} refits to {fitted}, shared value is {shared}"));
    }
    let (oracle, raw) = match which {
        "lie" => {
            let v = gen::vector_field(r, dim, 2);
            let w = gen::vector_field(r, dim, 2);
            (
                ok(vector_to_super(&e(oracle::lie_bracket(&v, &w))?))?,
                ok(vector_to_super(&e(en.lie_bracket_raw(&v, &w))?))?,
            )
        }
        "sn" => {
            let p = random_multivector(r, dim);
            let q = random_multivector(r, dim);
            (
                multivector_to_super(&e(oracle::sn_bracket(&p, &q))?),
                multivector_to_super(&e(en.sn_bracket_raw(&p, &q))?),
            )
        }
        "fn" => {
            let (k, v) = random_vv_pair(r, dim, 0);
            (vvform_to_super(&e(oracle::fn_bracket(&k, &v))?), vvform_to_super(&e(en.fn_bracket_raw(&k, &v))?))
        }
        _ => {
            let (k, v) = random_vv_pair(r, dim, 1);
            (vvform_to_super(&e(oracle::nr_bracket(&k, &v))?), vvform_to_super(&e(en.nr_bracket_raw(&k, &v))?))
        }
    };
    check(raw.scale(&shared) == oracle, || format!("k_{which} = {shared} does not fit a fresh instance"))
}

fn oracle_lie(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    env.constants()?;
    let en = env.engine(i, 3);
    let dim = en.dim();
    let v = gen::vector_field(r, dim, 2);
    let w = gen::vector_field(r, dim, 2);
    let got = e(en.lie_bracket(&v, &w))?;
    let want = e(oracle::lie_bracket(&v, &w))?;
    check(got == want, || "Lie bracket differs from the oracle".into())
}

fn random_multivector(r: &mut ChaCha8Rng, dim: usize) -> Multivector {
    let p = r.gen_range(0..=dim.min(3));
    if r.gen_bool(0.5) {
        gen::decomposable_multivector(r, dim, p, 1)
    } else {
        gen::multivector(r, dim, p, 2)
    }
}

fn oracle_sn(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let c = env.constants()?;
    let en = env.engine(i, 3);
    let p = random_multivector(r, en.dim());
    let q = random_multivector(r, en.dim());
    let got = e(en.sn_bracket_raw(&p, &q))?.scale(&c.k_sn);
    let want = e(oracle::sn_bracket(&p, &q))?;
    check(got == want, || format!("SN bracket of ranks {} and {} differs from the oracle", p.degree(), q.degree()))?;
    let lq = e(en.sn_generator(&q))?;
    if q.degree() > 0 {
        check_eq(&lq, &ok(en.epb(&en.charges().q, &multivector_to_super(&q)))?, "L_Q = {Q, Q^}")?;
    }
    Ok(())
}

fn random_vv_pair(r: &mut ChaCha8Rng, dim: usize, min_total: usize) -> (VectorValuedForm, VectorValuedForm) {
    loop {
        let k = r.gen_range(0..=dim.min(2));
        let l = r.gen_range(0..=dim.min(2));
        if k + l >= min_total {
            return (gen::sparse_vv_form(r, dim, k, 2, 3), gen::sparse_vv_form(r, dim, l, 2, 3));
        }
    }
}

fn oracle_fn(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    env.constants()?;
    let en = env.engine(i, 2);
    let (k, v) = random_vv_pair(r, en.dim(), 0);
    let got = e(en.fn_bracket(&k, &v))?;
    let want = e(oracle::fn_bracket(&k, &v))?;
    check(got == want, || {
        format!("FN bracket of degrees {} and {} differs from the oracle", k.form_degree(), v.form_degree())
    })
}

fn oracle_nr(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    env.constants()?;
    let en = env.engine(i, 3);
    let (k, v) = random_vv_pair(r, en.dim(), 1);
    let got = e(en.nr_bracket(&k, &v))?;
    let want = e(oracle::nr_bracket(&k, &v))?;
    check(got == want, || {
        format!("NR bracket of degrees {} and {} differs from the oracle", k.form_degree(), v.form_degree())
    })
}

fn sn_antisymmetry(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    env.constants()?;
    let en = env.engine(i, 3);
    let dim = en.dim();
    let pr = r.gen_range(1..=dim.min(3));
    let qr = r.gen_range(1..=dim.min(3));
    let p = gen::decomposable_multivector(r, dim, pr, 1);
    let q = gen::decomposable_multivector(r, dim, qr, 1);
    let sign = -Scalar::sign(((pr - 1) * (qr - 1)) as i64);
    let o_pq = e(oracle::sn_bracket(&p, &q))?;
    let o_qp = e(oracle::sn_bracket(&q, &p))?;
    check(o_pq == o_qp.scale(&sign), || "oracle SN bracket is not graded antisymmetric".into())?;
    let e_pq = e(en.sn_bracket(&p, &q))?;
    let e_qp = e(en.sn_bracket(&q, &p))?;
    check(e_pq == e_qp.scale(&sign), || "engine SN bracket is not graded antisymmetric".into())
}

fn fn_defining_relation(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    env.constants()?;
    let en = env.engine(i, 2);
    let dim = en.dim();
    let (k, v) = random_vv_pair(r, dim, 0);
    let w = e(en.fn_bracket(&k, &v))?;
    let sign = Scalar::sign((k.form_degree() * v.form_degree()) as i64);
    for theta in oracle::test_forms(dim) {
        let lhs = e(oracle::generalized_lie(&w, &theta))?;
        let kv = e(oracle::generalized_lie(&k, &e(oracle::generalized_lie(&v, &theta))?))?;
        let vk = e(oracle::generalized_lie(&v, &e(oracle::generalized_lie(&k, &theta))?))?;
        let rhs = e(kv.sub(&vk.scale(&sign)))?;
        check(lhs == rhs, || format!("L_[K,V] != [L_K, L_V] on a {}-form", theta.degree()))?;
    }
    Ok(())
}

fn reductions(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    env.constants()?;
    let en = env.engine(i, 3);
    let dim = en.dim();
    let v = gen::vector_field(r, dim, 2);
    let w = gen::vector_field(r, dim, 2);
    let lie = e(oracle::lie_bracket(&v, &w))?;
    let mv = e(Multivector::vector(&v))?;
    let mw = e(Multivector::vector(&w))?;
    let sn = e(e(en.sn_bracket(&mv, &mw))?.vector_components())?;
    check(sn == lie, || "SN bracket of vector fields is not the Lie bracket".into())?;
    let kv = e(VectorValuedForm::from_vector(&mv))?;
    let kw = e(VectorValuedForm::from_vector(&mw))?;
    if dim <= 4 {
        let fnb = e(e(en.fn_bracket(&kv, &kw))?.to_vector())?;
        check(e(fnb.vector_components())? == lie, || "FN bracket of vector fields is not the Lie bracket".into())?;
    }
    let id = VectorValuedForm::identity(dim);
    check(e(en.nr_bracket(&id, &id))?.is_zero(), || "[Id, Id]_NR is not zero".into())?;
    let f = random_form(r, dim);
    check(e(oracle::contraction(&kv, &f))? == e(oracle::interior(&v, &f))?, || {
        "i_K for a vector field is not the interior product".into()
    })
}

fn oracle_identities(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let dim = env.engine(i, 3).dim();
    let f = random_form(r, dim);
    check(oracle::d(&oracle::d(&f)).is_zero(), || "oracle d∘d is not zero".into())?;
    // Leibniz for the multivector Lie derivative
    let y = gen::vector_field(r, dim, 2);
    let p = random_multivector(r, dim);
    let q = random_multivector(r, dim);
    if p.degree() + q.degree() <= dim {
        let lhs = e(oracle::lie_multivector(&y, &e(oracle::wedge_multivectors(&p, &q))?))?;
        let rhs = e(e(oracle::wedge_multivectors(&e(oracle::lie_multivector(&y, &p))?, &q))?
            .add(&e(oracle::wedge_multivectors(&p, &e(oracle::lie_multivector(&y, &q))?))?))?;
        check(lhs == rhs, || "oracle Lie derivative is not a derivation of the wedge product".into())?;
    }
    // [K, K]_NR = 2 i_K K for odd k, 0 for even k
    let kd = r.gen_range(1..=dim.min(3));
    let k = gen::sparse_vv_form(r, dim, kd, 2, 2);
    let nr = e(oracle::nr_bracket(&k, &k))?;
    let kk = k.form_degree() - 1;
    let want = if kk % 2 == 1 {
        e(oracle::contraction_vv(&k, &k))?.scale(&Scalar::from_int(2))
    } else {
        VectorValuedForm::zero(dim, nr.form_degree())
    };
    check(nr == want, || "[K, K]_NR identity fails".into())?;
    // i_Id Θ = l Θ
    let l = r.gen_range(1..=dim);
    let theta = gen::form(r, dim, l, 2);
    check(
        e(oracle::contraction(&VectorValuedForm::identity(dim), &theta))? == theta.scale(&Scalar::from_int(l as i64)),
        || "i_Id Θ is not l Θ".into(),
    )
}

fn round_trips(env: &Env, r: &mut ChaCha8Rng, i: usize) -> CaseResult {
    let en = env.engine(i, 3);
    let dim = en.dim();
    let p = r.gen_range(0..=dim);
    let f = gen::form(r, dim, p, 3);
    check(e(super_to_form(&form_to_super(&f), Some(p)))? == f, || "form hat round trip".into())?;
    let m = gen::multivector(r, dim, p, 3);
    check(e(super_to_multivector(&multivector_to_super(&m), Some(p)))? == m, || "multivector hat round trip".into())?;
    let kd = r.gen_range(0..=dim.min(3));
    let k = gen::vv_form(r, dim, kd, 2);
    check(e(super_to_vvform(&vvform_to_super(&k), Some(kd)))? == k, || "vector-valued form hat round trip".into())?;
    let shape = PolyShape { max_terms: 5, max_phi_degree: 3, max_lambda_degree: 2, max_grassmann: 4 };
    let poly = gen::super_poly(r, dim, &shape);
    let text = print_canonical(&poly);
    check(e(textio::parse_poly(&text, dim))? == poly, || format!("parse∘print on `{text}`"))?;
    let mut ws = Workspace::new(en.ctx().clone());
    if let Ok(c) = env.constants() {
        ws.calibration = Some(c.clone());
    }
    let values = [Value::Poly(poly), Value::Form(f), Value::Multivector(m), Value::VvForm(k)];
    for (j, v) in values.into_iter().enumerate() {
        e(ws.bind(&format!("x{j}"), v))?;
    }
    let saved = textio::save_workspace(&ws);
    let loaded = e(textio::load_workspace(&saved))?;
    check(loaded == ws, || "workspace save/load".into())
}
