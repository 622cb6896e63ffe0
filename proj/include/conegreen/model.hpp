#ifndef CONEGREEN_MODEL_HPP
#define CONEGREEN_MODEL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "conegreen/errors.hpp"

namespace conegreen {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;

// Lexicographic order for integer lattice points, used as map key order.
struct LexLess {
    bool operator()(const IVec& a, const IVec& b) const {
        for (int i = 0; i < a.size() && i < b.size(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return a.size() < b.size();
    }
};

/// A finitely supported step distribution on Z^d.
struct JumpAtom {
    IVec step;
    double prob = 0.0;
};

struct JumpMeasure {
    int dim = 0;
    std::vector<JumpAtom> atoms;

    Vec mean() const;
    int max_step_norm() const; // l-infinity over the support

    // Checks mass, distinct steps and the nonzero-mean condition; throws ValidationError.
    void validate_basic() const;
};

/// Open cone given as a union of branches; each branch is an intersection of
/// open half-spaces {x : n.x > 0}. Membership is exact for lattice points.
struct Cone {
    int dim = 0;
    std::vector<std::vector<Vec>> branches;

    bool contains(const Vec& x) const;
    bool contains(const IVec& x) const;
    // Same test with >= 0: x lies in the closure of some branch.
    bool contains_closure(const Vec& x) const;

    void validate() const;
};

/// Axis-aligned integer box, the truncation domain for dynamic programming
/// and reachability checks. Also provides dense linear indexing.
struct LatticeWindow {
    IVec lo, hi;

    void validate() const;
    bool contains(const IVec& x) const;
    std::int64_t volume() const;
    std::int64_t index(const IVec& x) const;  // row-major, caller guarantees contains(x)
    IVec coord(std::int64_t idx) const;
    int extent(int axis) const { return hi[axis] - lo[axis] + 1; }
    LatticeWindow grown(int margin) const;
    LatticeWindow inner_half() const;  // shrunk by a quarter of the extent on each side
};

struct WalkModel {
    JumpMeasure measure;
    Cone cone;
    std::string name;

    void validate() const;  // dimension coherence + component validity
    bool in_state_space(const IVec& x) const { return cone.contains(x); }
};

/// Report of the (A1) checks: nonzero mean and the finite reachability proxy
/// for irreducibility (BFS over the step semigroup inside a search box).
struct A1Report {
    Vec mean;
    bool mean_nonzero = false;
    bool reachable = false;
    int box_radius = 0;
    int search_radius = 0;
};

bool cone_contains(const Cone& cone, const Vec& x);

A1Report check_a1(const JumpMeasure& measure, int box_radius);

// (A2) proxy: mutual reachability between `base` and every point of
// E ∩ inner-half(window) along paths staying in C ∩ window.
bool check_a2(const WalkModel& model, const LatticeWindow& window, const IVec& base);

WalkModel load_model(const std::string& path);
WalkModel parse_model(const std::string& json_text);
std::string save_model(const WalkModel& model);  // canonical JSON form

} // namespace conegreen

#endif
