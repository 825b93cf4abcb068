//! The Z₂-graded commutative algebra in `φ^a, λ_a` (even) and `c^a, c̄_a`
//! (odd), stored in a unique normal form.
//!
//! Monomials keep the factor order `φ · λ · c · c̄` with ascending Grassmann
//! indices; any reordering performed while building a product is folded into
//! the coefficient. Grassmann derivatives are left derivatives.

mod monomial;
mod poly;

pub use monomial::{Monomial, MAX_DIM};
pub use poly::{Grade, Parity, SuperPoly};

pub(crate) use poly::{mask_indices, sort_sign};

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::gen::{self, PolyShape};

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn shape() -> PolyShape {
        PolyShape { max_terms: 4, max_phi_degree: 2, max_lambda_degree: 1, max_grassmann: 3 }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_is_associative(seed in any::<u64>(), dim in 1usize..=4) {
            let mut r = rng(seed);
            let a = gen::super_poly(&mut r, dim, &shape());
            let b = gen::super_poly(&mut r, dim, &shape());
            let c = gen::super_poly(&mut r, dim, &shape());
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn graded_commutativity(seed in any::<u64>(), dim in 1usize..=4) {
            let mut r = rng(seed);
            let a = gen::homogeneous_poly(&mut r, dim, &shape());
            let b = gen::homogeneous_poly(&mut r, dim, &shape());
            let (pa, pb) = (a.grade().parity.unwrap(), b.grade().parity.unwrap());
            let sign = crate::Scalar::sign(pa.as_int() * pb.as_int());
            prop_assert_eq!(&a * &b, (&b * &a).scale(&sign));
        }

        #[test]
        fn odd_monomials_square_to_zero(seed in any::<u64>(), dim in 1usize..=4) {
            let mut r = rng(seed);
            let m = gen::monomial_poly(&mut r, dim, &shape());
            if m.grade().parity == Some(Parity::Odd) {
                prop_assert!((&m * &m).is_zero());
            }
        }

        #[test]
        fn evaluation_order_does_not_matter(seed in any::<u64>(), dim in 1usize..=3) {
            // Build the same product of generators in two random orders and
            // compare after sign correction computed from the permutation.
            let mut r = rng(seed);
            let gens = gen::generator_word(&mut r, dim, 5);
            let forward = gens.iter().fold(SuperPoly::one(dim), |acc, g| &acc * &g.poly(dim));
            let backward = gens.iter().rev().fold(SuperPoly::one(dim), |acc, g| &g.poly(dim) * &acc);
            prop_assert_eq!(forward, backward);
        }

        #[test]
        fn left_derivatives_anticommute(seed in any::<u64>(), dim in 1usize..=4) {
            let mut r = rng(seed);
            let x = gen::super_poly(&mut r, dim, &shape());
            for i in 1..=dim {
                for j in 1..=dim {
                    let ij = x.deriv_c(i).unwrap().deriv_c(j).unwrap();
                    let ji = x.deriv_c(j).unwrap().deriv_c(i).unwrap();
                    prop_assert_eq!(&ij, &(-&ji));
                    let ij = x.deriv_cbar(i).unwrap().deriv_c(j).unwrap();
                    let ji = x.deriv_c(j).unwrap().deriv_cbar(i).unwrap();
                    prop_assert_eq!(&ij, &(-&ji));
                }
            }
        }

        #[test]
        fn even_derivatives_commute_with_everything(seed in any::<u64>(), dim in 1usize..=3) {
            let mut r = rng(seed);
            let x = gen::super_poly(&mut r, dim, &shape());
            for i in 1..=dim {
                for j in 1..=dim {
                    let a = x.deriv_phi(i).unwrap().deriv_lambda(j).unwrap();
                    let b = x.deriv_lambda(j).unwrap().deriv_phi(i).unwrap();
                    prop_assert_eq!(a, b);
                    let a = x.deriv_phi(i).unwrap().deriv_c(j).unwrap();
                    let b = x.deriv_c(j).unwrap().deriv_phi(i).unwrap();
                    prop_assert_eq!(a, b);
                    let a = x.deriv_lambda(i).unwrap().deriv_cbar(j).unwrap();
                    let b = x.deriv_cbar(j).unwrap().deriv_lambda(i).unwrap();
                    prop_assert_eq!(a, b);
                }
            }
        }

        #[test]
        fn graded_leibniz_for_left_derivatives(seed in any::<u64>(), dim in 1usize..=3) {
            let mut r = rng(seed);
            let a = gen::homogeneous_poly(&mut r, dim, &shape());
            let b = gen::super_poly(&mut r, dim, &shape());
            let sa = crate::Scalar::sign(a.grade().parity.unwrap().as_int());
            for i in 1..=dim {
                let lhs = (&a * &b).deriv_c(i).unwrap();
                let rhs = &(&a.deriv_c(i).unwrap() * &b) + &(&a * &b.deriv_c(i).unwrap()).scale(&sa);
                prop_assert_eq!(lhs, rhs);
                let lhs = (&a * &b).deriv_phi(i).unwrap();
                let rhs = &(&a.deriv_phi(i).unwrap() * &b) + &(&a * &b.deriv_phi(i).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
