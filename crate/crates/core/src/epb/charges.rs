use crate::scalar::Scalar;
use crate::superalgebra::SuperPoly;
use crate::symplectic::SymplecticContext;

/// The five universal charges of a symplectic context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChargeSet {
    /// `i c^a λ_a`
    pub q: SuperPoly,
    /// `i c̄_a ω^{ab} λ_b`
    pub qbar: SuperPoly,
    /// `c^a c̄_a`
    pub qg: SuperPoly,
    /// `½ ω_{ab} c^a c^b`
    pub k: SuperPoly,
    /// `½ ω^{ab} c̄_a c̄_b`
    pub kbar: SuperPoly,
}

impl ChargeSet {
    pub fn new(ctx: &SymplecticContext) -> Self {
        let dim = ctx.dim();
        let c = |a| SuperPoly::c(dim, a).expect("index in range");
        let cb = |a| SuperPoly::cbar(dim, a).expect("index in range");
        let l = |a| SuperPoly::lambda(dim, a).expect("index in range");
        let real = |x: &num_rational::BigRational| Scalar::real(x.clone());

        let mut q = SuperPoly::zero(dim);
        let mut qbar = SuperPoly::zero(dim);
        let mut qg = SuperPoly::zero(dim);
        let mut k = SuperPoly::zero(dim);
        let mut kbar = SuperPoly::zero(dim);
        for a in 1..=dim {
            q = &q + &(&c(a) * &l(a));
            qg = &qg + &(&c(a) * &cb(a));
            for b in 1..=dim {
                qbar = &qbar + &(&cb(a) * &l(b)).scale(&real(ctx.upper(a, b)));
                // antisymmetry turns ½ Σ_{ab} into Σ_{a<b}
                if a < b {
                    k = &k + &(&c(a) * &c(b)).scale(&real(ctx.lower(a, b)));
                    kbar = &kbar + &(&cb(a) * &cb(b)).scale(&real(ctx.upper(a, b)));
                }
            }
        }
        ChargeSet { q: q.scale(&Scalar::i()), qbar: qbar.scale(&Scalar::i()), qg, k, kbar }
    }

    /// `(name, charge)` pairs in a fixed order.
    pub fn named(&self) -> [(&'static str, &SuperPoly); 5] {
        [("Q", &self.q), ("Qbar", &self.qbar), ("Qg", &self.qg), ("K", &self.k), ("Kbar", &self.kbar)]
    }
}
