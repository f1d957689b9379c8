#pragma once

namespace ampcg {

// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
// Series expansion for x < a + 1, Lentz continued fraction otherwise;
// relative accuracy around 1e-14 for the p-value ranges used here.
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of freedom.
double chi_square_survival(double x, double df);

// Two-sided standard normal tail 2 * (1 - Phi(|z|)).
double normal_two_sided_p(double z);

}  // namespace ampcg
