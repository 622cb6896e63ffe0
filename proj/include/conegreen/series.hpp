#ifndef CONEGREEN_SERIES_HPP
#define CONEGREEN_SERIES_HPP

#include <complex>

#include "conegreen/green.hpp"

namespace conegreen {

using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Equispaced product grid on the torus |x_j| = base_j used for Cauchy
/// coefficient integrals. The base point must satisfy calP(base) < 1 - 1e-9
/// so 1 - calP stays away from 0 on the whole contour.
struct TorusGrid {
    int dim = 0;
    int n_per_axis = 0;  // power of two
    Vec base;

    void validate(const JumpMeasure& measure) const;
};

// calP(x) = sum_m x^m mu(m) over the finite support.
Complex eval_calp(const JumpMeasure& measure, const CVec& x);

// Truncated exit transform F_k(x) = sum_m P_k(Z(tau)=m) x^m.
Complex eval_f_truncated(const ExitLaw& exitlaw, const CVec& x);

// Truncated Green transform H_k(x) = sum_m G(k,m) x^m over the tabulated targets.
Complex eval_h_truncated(const GreenTable& table, const CVec& x);

struct FunctionalEqCheck {
    double residual = 0.0;  // |H(x)(1 - calP(x)) - x^k + F(x)|
    double bound = 0.0;     // certified combined truncation error
    Complex h_value;
    Complex f_value;
};

/// Residual of H_k(x)(1 - calP(x)) = x^k - F_k(x) with DP-truncated H and F.
/// Requires (|x_1|,...,|x_d|) strictly inside {calP < 1}.
FunctionalEqCheck functional_eq_check(const WalkModel& model, const IVec& k, const CVec& x,
                                      const LatticeWindow& window, const DpParams& params = {});

double functional_eq_residual(const WalkModel& model, const IVec& k, const CVec& x,
                              const LatticeWindow& window, const DpParams& params = {});

/// Whole-space Green function sum_n P_k(Z(n)=m) by trapezoidal quadrature of
/// the Cauchy integral of x^k / (1 - calP(x)); spectrally convergent.
double free_green_quadrature(const JumpMeasure& measure, const IVec& k, const IVec& m,
                             const TorusGrid& grid);

/// Killed-walk Green function via the integral of
/// (x^k - F_k(x)) / (x^{m+1} (1 - calP(x))).
double killed_green_quadrature(const WalkModel& model, const IVec& k, const IVec& m,
                               const TorusGrid& grid, const ExitLaw& exitlaw);

// Same value wrapped with a certificate: exit-law truncation propagated
// through the contour plus a grid-doubling error estimate.
GreenEstimate killed_green_quadrature_estimate(const WalkModel& model, const IVec& k,
                                               const IVec& m, const TorusGrid& grid,
                                               const ExitLaw& exitlaw);

} // namespace conegreen

#endif
