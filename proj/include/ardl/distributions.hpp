#pragma once

namespace ardl::dist {

/// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value P(|T| >= |t|) for Student-t with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

/// P(T <= t) for Student-t.
double student_t_cdf(double t, double dof);

/// P(F <= f) for F(d1, d2).
double f_cdf(double f, double d1, double d2);

/// Upper-tail critical value: P(F > c) = alpha.
double f_critical(double alpha, double d1, double d2);

}  // namespace ardl::dist
