#ifndef CONEGREEN_GENFUN_HPP
#define CONEGREEN_GENFUN_HPP

#include "conegreen/model.hpp"

namespace conegreen {

/// Geometry of the level set {P = 1} at direction u: the boundary point
/// alpha(u) where the outward gradient of P points along u, together with
/// the second-order data of the walk tilted to alpha(u).
struct BoundaryData {
    Vec u;          // unit direction
    Vec alpha;      // boundary point of {P <= 1}
    Vec r;          // componentwise exp(alpha)
    double lambda = 0.0;  // |grad P(alpha)|
    Vec drift;      // grad P(alpha), the tilted walk's mean step
    Mat q_full;     // second moments of the tilted step law (= Hessian of P)
    Mat rotation;   // orthogonal, maps u to e1
    Mat q_reduced;  // lower-right (d-1)x(d-1) block of rotation*q_full*rotation^T
    double det_q_reduced = 1.0;  // determinant; empty matrix counts as 1

    void validate() const;  // residual checks, throws ValidationError
};

struct SolveOptions {
    double tol = 1e-12;     // residual target for |P-1| and |grad P - lambda u|
    int max_iter = 100;
    int max_backtrack = 60;
};

double eval_p(const JumpMeasure& measure, const Vec& alpha);
Vec grad_p(const JumpMeasure& measure, const Vec& alpha);
Mat hess_p(const JumpMeasure& measure, const Vec& alpha);

// Minimizer of P (damped Newton); requires the support to span R^d.
Vec find_interior_min(const JumpMeasure& measure, const SolveOptions& opts = {});

// Inverts the normalized-gradient map: finds alpha with P(alpha)=1 and
// grad P(alpha) = lambda*u, lambda > 0. Globally initialized by ray shooting
// from the interior minimizer, then polished by a damped Newton iteration
// on the (d+1)-dimensional system.
BoundaryData solve_alpha(const JumpMeasure& measure, const Vec& u, const SolveOptions& opts = {});

// Step law reweighted by exp(alpha.k); requires P(alpha)=1 within 1e-10.
JumpMeasure twisted_measure(const JumpMeasure& measure, const Vec& alpha);

// Rotation with determinant +1 sending u to e1 and fixing the orthogonal
// complement of span{u, e1}. For u = -e1 the (e1,e2) coordinate plane is
// used; d=1 yields [1] or [-1].
Mat rotation_to_e1(const Vec& u);

// Q_ij = sum_k k_i k_j exp(alpha.k) mu(k); requires P(alpha)=1 within 1e-10.
Mat second_moments(const JumpMeasure& measure, const Vec& alpha);

// Lower-right block of rotation*q_full*rotation^T and its determinant
// (empty matrix for d=1, determinant 1).
std::pair<Mat, double> reduced_matrix(const Mat& q_full, const Mat& rotation);

} // namespace conegreen

#endif
