//! Divisor functions, characters, Bernoulli numbers, L-values at non-positive
//! integers and Cohen numbers.

mod arith;
mod bernoulli;
mod cohen;
mod disc;

pub use arith::{divisors, factorize, gcd3, is_square, is_squarefree, isqrt, kronecker, mobius, sigma, sigma_at};
pub use bernoulli::{bernoulli, bernoulli_poly, gen_bernoulli, l_value_neg, zeta_neg, zeta_nonpositive};
pub use cohen::{cohen_h, cohen_h_int};
pub use disc::{fund_disc_decomp, is_fundamental, DiscDecomp};
