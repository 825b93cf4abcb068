use std::sync::OnceLock;

use super::bracket::epb;
use super::calibrate::{calibrate_with, CalibrationConstants};
use super::charges::ChargeSet;
use super::hat::vector_to_super;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::SuperPoly;
use crate::symplectic::SymplecticContext;

/// Which charge the flat map brackets with. `K` is the working choice;
/// `Kbar` reproduces the other reading, under which flat vanishes
/// identically.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum FlatCharge {
    #[default]
    K,
    Kbar,
}

/// Signature of the graded bracket an engine is built on.
pub type BracketFn = fn(&SuperPoly, &SuperPoly) -> Result<SuperPoly>;

/// Bracket engine for one symplectic context. Calibration constants are
/// computed on first use unless supplied.
#[derive(Debug)]
pub struct Engine {
    ctx: SymplecticContext,
    bracket: BracketFn,
    charges: ChargeSet,
    flat_charge: FlatCharge,
    constants: OnceLock<Result<CalibrationConstants>>,
}

impl Clone for Engine {
    fn clone(&self) -> Self {
        let constants = OnceLock::new();
        if let Some(c) = self.constants.get() {
            let _ = constants.set(c.clone());
        }
        Engine {
            ctx: self.ctx.clone(),
            bracket: self.bracket,
            charges: self.charges.clone(),
            flat_charge: self.flat_charge,
            constants,
        }
    }
}

fn grade_err(msg: impl Into<String>) -> Error {
    Error::GradeMismatch(msg.into())
}

pub(crate) fn is_hatted_form(p: &SuperPoly) -> bool {
    p.is_lambda_free() && p.is_cbar_free()
}

pub(crate) fn is_hatted_vector(p: &SuperPoly) -> bool {
    p.is_lambda_free() && p.is_c_free() && p.terms().all(|(m, _)| m.cbar_count() == 1)
}

impl Engine {
    pub fn new(ctx: SymplecticContext) -> Self {
        let charges = ChargeSet::new(&ctx);
        Engine { ctx, bracket: epb, charges, flat_charge: FlatCharge::K, constants: OnceLock::new() }
    }

    /// Replaces the bracket used by every operation. Meant for checking
    /// that the verification suites notice a broken bracket.
    pub fn with_bracket(mut self, bracket: BracketFn) -> Self {
        self.bracket = bracket;
        self.constants = OnceLock::new();
        self
    }

    pub fn bracket(&self) -> BracketFn {
        self.bracket
    }

    pub fn with_flat_charge(mut self, which: FlatCharge) -> Self {
        self.flat_charge = which;
        self
    }

    /// Uses the given constants instead of running the calibration battery.
    pub fn with_constants(self, constants: CalibrationConstants) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(Ok(constants));
        Engine { constants: cell, ..self }
    }

    pub fn ctx(&self) -> &SymplecticContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn charges(&self) -> &ChargeSet {
        &self.charges
    }

    /// Calibration constants, running the battery once if needed.
    pub fn constants(&self) -> Result<&CalibrationConstants> {
        self.constants.get_or_init(|| calibrate_with(&self.ctx, self.bracket)).as_ref().map_err(Clone::clone)
    }

    fn check_dim(&self, p: &SuperPoly) -> Result<()> {
        if p.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim(), right: p.dim() })
        }
    }

    pub fn epb(&self, a: &SuperPoly, b: &SuperPoly) -> Result<SuperPoly> {
        self.check_dim(a)?;
        (self.bracket)(a, b)
    }

    fn check_form(&self, f: &SuperPoly) -> Result<()> {
        self.check_dim(f)?;
        if is_hatted_form(f) {
            Ok(())
        } else {
            Err(grade_err("expected a hatted form (no lambda, no cbar)"))
        }
    }

    fn check_vector(&self, v: &SuperPoly) -> Result<()> {
        self.check_dim(v)?;
        if is_hatted_vector(v) {
            Ok(())
        } else {
            Err(grade_err("expected a hatted vector field (one cbar per term, no c, no lambda)"))
        }
    }

    fn check_components(&self, v: &[SuperPoly]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::ComponentCount { expected: self.dim(), got: v.len() });
        }
        for x in v {
            self.check_dim(x)?;
            if !x.is_phi_only() {
                return Err(Error::NotPhiOnly("vector field component"));
            }
        }
        Ok(())
    }

    fn check_function(&self, f: &SuperPoly, what: &'static str) -> Result<()> {
        self.check_dim(f)?;
        if f.is_phi_only() {
            Ok(())
        } else {
            Err(Error::NotPhiOnly(what))
        }
    }

    /// `i{Q, F̂}`
    pub fn ext_d(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.check_form(f)?;
        Ok((self.bracket)(&self.charges.q, f)?.scale(&Scalar::i()))
    }

    /// `i{v̂, F̂}`
    pub fn interior(&self, v: &SuperPoly, f: &SuperPoly) -> Result<SuperPoly> {
        self.check_vector(v)?;
        self.check_form(f)?;
        Ok((self.bracket)(v, f)?.scale(&Scalar::i()))
    }

    /// `H̃_V = λ_a V^a + i c̄_a ∂_b V^a c^b`
    pub fn lie_hamiltonian(&self, v: &[SuperPoly]) -> Result<SuperPoly> {
        self.check_components(v)?;
        let dim = self.dim();
        let mut lam = SuperPoly::zero(dim);
        let mut ghost = SuperPoly::zero(dim);
        for (a, va) in v.iter().enumerate() {
            lam = &lam + &(&SuperPoly::lambda(dim, a + 1)? * va);
            let cb = SuperPoly::cbar(dim, a + 1)?;
            for b in 1..=dim {
                let dv = va.deriv_phi(b)?;
                if !dv.is_zero() {
                    ghost = &ghost + &(&(&cb * &dv) * &SuperPoly::c(dim, b)?);
                }
            }
        }
        Ok(&lam + &ghost.scale(&Scalar::i()))
    }

    /// `H̃_h` for the Hamiltonian vector field of `h`.
    pub fn hamiltonian_lift(&self, h: &SuperPoly) -> Result<SuperPoly> {
        self.lie_hamiltonian(&self.ctx.hamiltonian_vector_field(h)?)
    }

    /// `−{H̃_V, F̂}`
    pub fn lie_derivative(&self, v: &[SuperPoly], f: &SuperPoly) -> Result<SuperPoly> {
        self.check_form(f)?;
        Ok(-(self.bracket)(&self.lie_hamiltonian(v)?, f)?)
    }

    /// `i{Q_g, F̂}`; multiplies a hatted `p`-form by `p` and a hatted
    /// `p`-multivector by `−p`.
    pub fn degree(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.check_dim(f)?;
        Ok((self.bracket)(&self.charges.qg, f)?.scale(&Scalar::i()))
    }

    /// `i{K, v̂}`, the hatted 1-form `ω_{ab} V^b c^a`.
    pub fn flat(&self, v: &SuperPoly) -> Result<SuperPoly> {
        self.check_vector(v)?;
        let charge = match self.flat_charge {
            FlatCharge::K => &self.charges.k,
            FlatCharge::Kbar => &self.charges.kbar,
        };
        Ok((self.bracket)(charge, v)?.scale(&Scalar::i()))
    }

    /// `i{Q̄, f}`, the hatted vector field `ω^{ab} ∂_b f c̄_a`.
    pub fn sharp(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.check_function(f, "sharp argument")?;
        Ok((self.bracket)(&self.charges.qbar, f)?.scale(&Scalar::i()))
    }

    /// `h^a ∂_a ρ`
    pub fn liouvillian_action(&self, h: &SuperPoly, rho: &SuperPoly) -> Result<SuperPoly> {
        self.check_function(rho, "distribution")?;
        let field = self.ctx.hamiltonian_vector_field(h)?;
        let mut acc = SuperPoly::zero(self.dim());
        for (a, ha) in field.iter().enumerate() {
            acc = &acc + &(ha * &rho.deriv_phi(a + 1)?);
        }
        Ok(acc)
    }

    /// Applies a Grassmann-free operator symbol to `ρ` with `λ_a → −i∂_a`,
    /// derivatives acting on `ρ` only.
    pub fn schrodinger_apply(&self, op: &SuperPoly, rho: &SuperPoly) -> Result<SuperPoly> {
        self.check_dim(op)?;
        self.check_function(rho, "distribution")?;
        if !(op.is_c_free() && op.is_cbar_free()) {
            return Err(grade_err("Schrodinger representation needs a Grassmann-free operator"));
        }
        let dim = self.dim();
        let mut acc = SuperPoly::zero(dim);
        for (m, s) in op.terms() {
            let mut d = rho.clone();
            let mut order = 0;
            for a in 1..=dim {
                for _ in 0..m.lambda_exp(a) {
                    d = d.deriv_phi(a)?;
                    order += 1;
                }
            }
            let mut coeff = m.clone();
            coeff.lambda = vec![0; dim];
            let factor = s * &minus_i_pow(order);
            acc = &acc + &(&SuperPoly::from_term(coeff, factor) * &d);
        }
        Ok(acc)
    }

    /// First-order change `δx = {H̃_h, x}` under the flow of `h`.
    pub fn evolve_infinitesimal(&self, x: &SuperPoly, h: &SuperPoly) -> Result<SuperPoly> {
        self.check_dim(x)?;
        (self.bracket)(&self.hamiltonian_lift(h)?, x)
    }
}

fn minus_i_pow(k: u32) -> Scalar {
    match k % 4 {
        0 => Scalar::one(),
        1 => -Scalar::i(),
        2 => Scalar::from_int(-1),
        _ => Scalar::i(),
    }
}

pub(crate) fn hat_vector(v: &[SuperPoly]) -> Result<SuperPoly> {
    vector_to_super(v)
}
