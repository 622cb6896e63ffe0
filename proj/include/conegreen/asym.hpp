#ifndef CONEGREEN_ASYM_HPP
#define CONEGREEN_ASYM_HPP

#include <iosfwd>

#include "conegreen/green.hpp"

namespace conegreen {

// Two candidate constants for the directional asymptotics of G_C(k,m):
//   paper: |drift|^{-1} sqrt(det Q_u)
//   lclt:  |drift|^{(d-3)/2} det(Q_u)^{-1/2}
// They coincide identically at d=1; ray studies adjudicate in higher d.
enum class PrefactorVariant { paper, lclt };

const char* variant_name(PrefactorVariant v);

double prefactor_constant(PrefactorVariant variant, const BoundaryData& boundary);

struct Prediction {
    double value = 0.0;
    PrefactorVariant variant = PrefactorVariant::paper;
    BoundaryData boundary;  // solved at the exact lattice direction m/|m|
    double h_k = 0.0;
    IVec m;
    IVec k;
};

/// Asymptotic prediction h_k * C(variant, u_m) * (2 pi |m|)^{-(d-1)/2}
/// * exp(-alpha(u_m).m). The boundary data must be solved at u_m = m/|m|.
Prediction predict_green(const BoundaryData& boundary, double h_k, const IVec& k,
                         const IVec& m, PrefactorVariant variant);

struct RatioEstimate {
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Green-function ratio with interval propagation; errors out when the
// denominator's certified interval touches zero.
RatioEstimate martin_kernel(const GreenEstimate& g_km, const GreenEstimate& g_k0m);

struct StudyRow {
    double radius = 0.0;
    IVec m;
    GreenEstimate g;
    double pred_paper = 0.0;
    double pred_lclt = 0.0;
    double c_emp = 0.0;    // g * exp(alpha.m) * (2 pi |m|)^{(d-1)/2} / h_k
    double h_k = 0.0;
    BoundaryData boundary;
};

struct StudyTable {
    std::vector<StudyRow> rows;
    IVec k;
    Vec u;                // the limit direction that selects the ray
    std::uint64_t seed = 0;
    LatticeWindow window;
};

// Nearest point of E to the real vector y: componentwise rounding, then a
// 3^d scan projected into E; distance ties break lexicographically.
IVec nearest_lattice_point(const WalkModel& model, const Vec& y);

/// One DP sweep from k plus per-radius boundary/harmonic data along the ray
/// R*u; every row uses the exact lattice direction u_m of its target.
StudyTable ray_study(const WalkModel& model, const IVec& k, const Vec& u,
                     const std::vector<double>& radii, const LatticeWindow& window,
                     const DpParams& params = {}, std::uint64_t seed = 0);

struct PrefactorVerdict {
    PrefactorVariant selected = PrefactorVariant::paper;
    double rel_err_paper = 0.0;
    double rel_err_lclt = 0.0;
    double c_emp_last = 0.0;
    bool tie = false;
    std::string note;
};

/// Compares the stabilized empirical prefactor against both candidate
/// constants; requires >= 3 rows and < 5% drift between the last two.
PrefactorVerdict prefactor_select(const StudyTable& study);

void write_study_csv(const StudyTable& study, std::ostream& out);

} // namespace conegreen

#endif
