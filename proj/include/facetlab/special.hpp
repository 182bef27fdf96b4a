#pragma once

#include <functional>

namespace ftl {

// log Gamma(x), x > 0.
double ln_gamma(double x);

// B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y), x, y > 0.
double beta(double x, double y);

// vol_n of the unit ball, pi^{n/2} / Gamma(n/2 + 1).
double ball_volume(int n);

// vol_{n-1} of S^{n-1}; equals n * ball_volume(n).
double sphere_area(int n);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation,
// accurate to ~1e-14 relative.
double reg_inc_beta(double x, double a, double b);

// Adaptive Simpson quadrature on [a, b] to relative tolerance rel_tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol);

}  // namespace ftl
