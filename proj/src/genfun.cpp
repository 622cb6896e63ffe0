#include "conegreen/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace conegreen {

double eval_p(const JumpMeasure& measure, const Vec& alpha) {
    double s = 0.0;
    for (const auto& a : measure.atoms)
        s += a.prob * std::exp(alpha.dot(a.step.cast<double>()));
    return s;
}

Vec grad_p(const JumpMeasure& measure, const Vec& alpha) {
    Vec g = Vec::Zero(measure.dim);
    for (const auto& a : measure.atoms) {
        Vec k = a.step.cast<double>();
        g += a.prob * std::exp(alpha.dot(k)) * k;
    }
    return g;
}

Mat hess_p(const JumpMeasure& measure, const Vec& alpha) {
    Mat h = Mat::Zero(measure.dim, measure.dim);
    for (const auto& a : measure.atoms) {
        Vec k = a.step.cast<double>();
        h += a.prob * std::exp(alpha.dot(k)) * (k * k.transpose());
    }
    return h;
}

Vec find_interior_min(const JumpMeasure& measure, const SolveOptions& opts) {
    Vec alpha = Vec::Zero(measure.dim);
    double p = eval_p(measure, alpha);
    for (int it = 0; it < opts.max_iter; ++it) {
        Vec g = grad_p(measure, alpha);
        if (g.norm() <= 1e-12) return alpha;
        Mat h = hess_p(measure, alpha);
        Eigen::LDLT<Mat> ldlt(h);
        if (ldlt.info() != Eigen::Success)
            throw NumericalError("interior minimizer: singular Hessian (support does not span)");
        Vec step = ldlt.solve(g);
        double t = 1.0;
        for (int bt = 0; bt < opts.max_backtrack; ++bt) {
            double pn = eval_p(measure, alpha - t * step);
            if (std::isfinite(pn) && pn < p) { alpha -= t * step; p = pn; break; }
            t *= 0.5;
            if (bt + 1 == opts.max_backtrack)
                throw NumericalError("interior minimizer: no descent step");
        }
    }
    if (grad_p(measure, alpha).norm() > 1e-12)
        throw NumericalError("interior minimizer did not converge (ill-conditioned measure)");
    return alpha;
}

namespace {

// Root t > 0 of P(origin + t*dir) = 1; P is strictly convex and increasing
// along rays from the minimizer, so the root is unique.
double ray_to_boundary(const JumpMeasure& measure, const Vec& origin, const Vec& dir) {
    double hi = 1.0;
    int guard = 0;
    while (eval_p(measure, origin + hi * dir) < 1.0) {
        hi *= 2.0;
        if (++guard > 120) throw NumericalError("boundary ray bracket failed");
    }
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (eval_p(measure, origin + mid * dir) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Scan candidate ray directions and keep the boundary point whose gradient
// direction best matches u.
Vec scan_start(const JumpMeasure& measure, const Vec& astar, const Vec& u, int extra) {
    const int d = measure.dim;
    std::vector<Vec> dirs;
    dirs.push_back(u);
    for (int i = 0; i < d; ++i) {
        for (double delta : {0.25, 0.5, -0.25, -0.5}) {
            Vec v = u;
            v[i] += delta;
            double n = v.norm();
            if (n > 1e-9) dirs.push_back(v / n);
        }
    }
    if (extra > 0) {
        std::mt19937_64 rng(0x5eedULL);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int i = 0; i < extra; ++i) {
            Vec v(d);
            for (int j = 0; j < d; ++j) v[j] = gauss(rng);
            double n = v.norm();
            if (n > 1e-9) dirs.push_back(v / n);
        }
    }
    Vec best;
    double best_score = -2.0;
    for (const auto& dir : dirs) {
        double t = ray_to_boundary(measure, astar, dir);
        Vec cand = astar + t * dir;
        Vec g = grad_p(measure, cand);
        double score = g.normalized().dot(u);
        if (score > best_score) { best_score = score; best = cand; }
    }
    return best;
}

// Damped Newton on (grad P(alpha) - lambda*u, P(alpha) - 1).
bool polish(const JumpMeasure& measure, const Vec& u, Vec& alpha, double& lambda,
            const SolveOptions& opts) {
    const int d = measure.dim;
    auto residual = [&](const Vec& a, double l) {
        Eigen::VectorXd f(d + 1);
        f.head(d) = grad_p(measure, a) - l * u;
        f[d] = eval_p(measure, a) - 1.0;
        return f;
    };
    Eigen::VectorXd f = residual(alpha, lambda);
    for (int it = 0; it < opts.max_iter; ++it) {
        if (f.lpNorm<Eigen::Infinity>() <= opts.tol) return true;
        Mat jac = Mat::Zero(d + 1, d + 1);
        jac.topLeftCorner(d, d) = hess_p(measure, alpha);
        jac.block(0, d, d, 1) = -u;
        jac.block(d, 0, 1, d) = grad_p(measure, alpha).transpose();
        Eigen::VectorXd step = jac.fullPivLu().solve(f);
        double t = 1.0;
        bool moved = false;
        for (int bt = 0; bt < opts.max_backtrack; ++bt) {
            Vec an = alpha - t * step.head(d);
            double ln = lambda - t * step[d];
            Eigen::VectorXd fn = residual(an, ln);
            if (fn.allFinite() && fn.norm() < f.norm() && ln > 0.0) {
                alpha = an; lambda = ln; f = fn; moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) return f.lpNorm<Eigen::Infinity>() <= opts.tol;
    }
    return residual(alpha, lambda).lpNorm<Eigen::Infinity>() <= opts.tol;
}

} // namespace

Mat rotation_to_e1(const Vec& u) {
    const int d = (int)u.size();
    if (std::abs(u.norm() - 1.0) > 1e-9)
        throw ValidationError("rotation_to_e1: direction is not a unit vector");
    if (d == 1) return Mat::Constant(1, 1, u[0] > 0 ? 1.0 : -1.0);
    Vec e1 = Vec::Zero(d);
    e1[0] = 1.0;
    double c = u.dot(e1);
    if (c >= 1.0 - 1e-14) return Mat::Identity(d, d);
    if (c <= -1.0 + 1e-14) {
        // u = -e1: rotate by pi in the (e1, e2) coordinate plane
        Mat r = Mat::Identity(d, d);
        r(0, 0) = -1.0;
        r(1, 1) = -1.0;
        return r;
    }
    Vec v2 = (u - c * e1).normalized();
    double s = u.dot(v2);
    Mat r = Mat::Identity(d, d);
    r += (c - 1.0) * (e1 * e1.transpose() + v2 * v2.transpose());
    r += s * (e1 * v2.transpose() - v2 * e1.transpose());
    return r;
}

Mat second_moments(const JumpMeasure& measure, const Vec& alpha) {
    if (std::abs(eval_p(measure, alpha) - 1.0) > 1e-10)
        throw ValidationError("second_moments: P(alpha) != 1");
    return hess_p(measure, alpha);
}

std::pair<Mat, double> reduced_matrix(const Mat& q_full, const Mat& rotation) {
    const int d = (int)q_full.rows();
    if (rotation.rows() != d || rotation.cols() != d || q_full.cols() != d)
        throw ValidationError("reduced_matrix: inconsistent dimensions");
    Mat b = rotation * q_full * rotation.transpose();
    Mat q = b.block(1, 1, d - 1, d - 1);
    double det = (d == 1) ? 1.0 : q.determinant();
    return {q, det};
}

JumpMeasure twisted_measure(const JumpMeasure& measure, const Vec& alpha) {
    double p = eval_p(measure, alpha);
    if (std::abs(p - 1.0) > 1e-10)
        throw ValidationError("twisted_measure: P(alpha) != 1 beyond tolerance");
    JumpMeasure tw;
    tw.dim = measure.dim;
    for (const auto& a : measure.atoms) {
        JumpAtom t;
        t.step = a.step;
        t.prob = a.prob * std::exp(alpha.dot(a.step.cast<double>())) / p;
        tw.atoms.push_back(std::move(t));
    }
    return tw;
}

void BoundaryData::validate() const {
    const int d = (int)u.size();
    if (std::abs(u.norm() - 1.0) > 1e-9) throw ValidationError("boundary: u not unit");
    if (drift.norm() == 0.0) throw ValidationError("boundary: zero drift");
    if ((drift.normalized() - u).norm() > 1e-8)
        throw ValidationError("boundary: gradient direction mismatch");
    if ((rotation * rotation.transpose() - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("boundary: rotation not orthogonal");
    Vec e1 = Vec::Zero(d);
    e1[0] = 1.0;
    if ((rotation * u - e1).norm() > 1e-10)
        throw ValidationError("boundary: rotation does not send u to e1");
    auto [q, det] = reduced_matrix(q_full, rotation);
    if (d > 1 && (q - q_reduced).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("boundary: reduced block mismatch");
    if (!(det_q_reduced > 0.0)) throw ValidationError("boundary: det Q_u not positive");
    for (int i = 0; i < d; ++i)
        if (std::abs(r[i] - std::exp(alpha[i])) > 1e-12 * std::max(1.0, r[i]))
            throw ValidationError("boundary: r != exp(alpha)");
}

BoundaryData solve_alpha(const JumpMeasure& measure, const Vec& u_in, const SolveOptions& opts) {
    if (u_in.size() != measure.dim) throw ValidationError("solve_alpha: dimension mismatch");
    double n = u_in.norm();
    if (n == 0.0) throw ValidationError("solve_alpha: zero direction");
    Vec u = u_in / n;

    Vec astar = find_interior_min(measure, opts);
    Vec alpha = scan_start(measure, astar, u, 0);
    double lambda = std::max(grad_p(measure, alpha).dot(u), 1e-8);
    if (!polish(measure, u, alpha, lambda, opts)) {
        // ray-shooting restart with a denser angular scan
        alpha = scan_start(measure, astar, u, 64 * measure.dim);
        lambda = std::max(grad_p(measure, alpha).dot(u), 1e-8);
        if (!polish(measure, u, alpha, lambda, opts))
            throw NumericalError("solve_alpha: Newton did not converge (tolerance too tight or broken measure)");
    }

    BoundaryData bd;
    bd.u = u;
    bd.alpha = alpha;
    bd.r = alpha.array().exp();
    bd.drift = grad_p(measure, alpha);
    bd.lambda = bd.drift.norm();
    bd.q_full = hess_p(measure, alpha);
    bd.rotation = rotation_to_e1(u);
    std::tie(bd.q_reduced, bd.det_q_reduced) = reduced_matrix(bd.q_full, bd.rotation);
    bd.validate();
    return bd;
}

} // namespace conegreen
