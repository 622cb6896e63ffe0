#include "conegreen/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace conegreen {

namespace {

std::string vec_to_str(const IVec& v) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

} // namespace

Vec JumpMeasure::mean() const {
    Vec m = Vec::Zero(dim);
    for (const auto& a : atoms) m += a.prob * a.step.cast<double>();
    return m;
}

int JumpMeasure::max_step_norm() const {
    int r = 0;
    for (const auto& a : atoms) r = std::max(r, a.step.cwiseAbs().maxCoeff());
    return r;
}

void JumpMeasure::validate_basic() const {
    if (dim < 1) throw ValidationError("dimension must be positive");
    if (atoms.empty()) throw ValidationError("empty support");
    double mass = 0.0;
    std::set<std::vector<int>> seen;
    for (const auto& a : atoms) {
        if (a.step.size() != dim) throw ValidationError("step dimension mismatch");
        if (!(a.prob > 0.0 && a.prob <= 1.0))
            throw ValidationError("step probability outside (0,1]");
        mass += a.prob;
        std::vector<int> key(a.step.data(), a.step.data() + a.step.size());
        if (!seen.insert(key).second)
            throw ValidationError("duplicate step " + vec_to_str(a.step));
    }
    if (std::abs(mass - 1.0) > 1e-12)
        throw ValidationError("mass != 1 (support probabilities sum to " + std::to_string(mass) + ")");
    if (mean().norm() == 0.0)
        throw ValidationError("A1(iii) violated: mean jump is zero");
}

bool Cone::contains(const Vec& x) const {
    for (const auto& branch : branches) {
        bool ok = true;
        for (const auto& n : branch) {
            if (!(n.dot(x) > 0.0)) { ok = false; break; }
        }
        if (ok) return true;
    }
    return false;
}

bool Cone::contains(const IVec& x) const { return contains(Vec(x.cast<double>())); }

bool Cone::contains_closure(const Vec& x) const {
    for (const auto& branch : branches) {
        bool ok = true;
        for (const auto& n : branch) {
            if (n.dot(x) < 0.0) { ok = false; break; }
        }
        if (ok) return true;
    }
    return false;
}

void Cone::validate() const {
    if (dim < 1) throw ValidationError("cone dimension must be positive");
    if (branches.empty()) throw ValidationError("cone needs at least one branch");
    for (const auto& branch : branches) {
        if (branch.empty()) throw ValidationError("cone branch without normals");
        for (const auto& n : branch) {
            if (n.size() != dim) throw ValidationError("cone normal dimension mismatch");
            if (n.norm() == 0.0) throw ValidationError("zero cone normal");
        }
    }
    if (contains(Vec(Vec::Zero(dim))))
        throw ValidationError("cone contains the origin");
}

void LatticeWindow::validate() const {
    if (lo.size() != hi.size() || lo.size() == 0)
        throw ValidationError("window bounds dimension mismatch");
    for (int i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) throw ValidationError("window lo > hi");
}

bool LatticeWindow::contains(const IVec& x) const {
    for (int i = 0; i < lo.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

std::int64_t LatticeWindow::volume() const {
    std::int64_t v = 1;
    for (int i = 0; i < lo.size(); ++i) v *= extent(i);
    return v;
}

std::int64_t LatticeWindow::index(const IVec& x) const {
    std::int64_t idx = 0;
    for (int i = 0; i < lo.size(); ++i) idx = idx * extent(i) + (x[i] - lo[i]);
    return idx;
}

IVec LatticeWindow::coord(std::int64_t idx) const {
    IVec x(lo.size());
    for (int i = (int)lo.size() - 1; i >= 0; --i) {
        x[i] = lo[i] + (int)(idx % extent(i));
        idx /= extent(i);
    }
    return x;
}

LatticeWindow LatticeWindow::grown(int margin) const {
    LatticeWindow w;
    w.lo = lo.array() - margin;
    w.hi = hi.array() + margin;
    return w;
}

LatticeWindow LatticeWindow::inner_half() const {
    LatticeWindow w;
    w.lo = lo;
    w.hi = hi;
    for (int i = 0; i < lo.size(); ++i) {
        int q = extent(i) / 4;
        w.lo[i] = lo[i] + q;
        w.hi[i] = hi[i] - q;
    }
    return w;
}

void WalkModel::validate() const {
    measure.validate_basic();
    cone.validate();
    if (measure.dim != cone.dim)
        throw ValidationError("measure and cone dimensions differ");
}

bool cone_contains(const Cone& cone, const Vec& x) {
    if (x.size() != cone.dim) throw ValidationError("cone_contains: dimension mismatch");
    return cone.contains(x);
}

A1Report check_a1(const JumpMeasure& measure, int box_radius) {
    if (box_radius < measure.max_step_norm())
        throw ValidationError("box radius smaller than the maximal step");
    A1Report rep;
    rep.mean = measure.mean();
    rep.mean_nonzero = rep.mean.norm() > 0.0;
    rep.box_radius = box_radius;
    rep.search_radius = 4 * box_radius;

    const int d = measure.dim;
    LatticeWindow search;
    search.lo = IVec::Constant(d, -rep.search_radius);
    search.hi = IVec::Constant(d, rep.search_radius);
    std::vector<char> visited(search.volume(), 0);
    std::deque<IVec> queue;
    IVec origin = IVec::Zero(d);
    visited[search.index(origin)] = 1;
    queue.push_back(origin);
    while (!queue.empty()) {
        IVec x = queue.front();
        queue.pop_front();
        for (const auto& a : measure.atoms) {
            IVec y = x + a.step;
            if (!search.contains(y)) continue;
            auto idx = search.index(y);
            if (!visited[idx]) {
                visited[idx] = 1;
                queue.push_back(y);
            }
        }
    }
    LatticeWindow target;
    target.lo = IVec::Constant(d, -box_radius);
    target.hi = IVec::Constant(d, box_radius);
    rep.reachable = true;
    for (std::int64_t i = 0; i < target.volume(); ++i) {
        if (!visited[search.index(target.coord(i))]) { rep.reachable = false; break; }
    }
    return rep;
}

namespace {

// BFS over E ∩ window along (possibly negated) support steps.
std::vector<char> reach_set(const WalkModel& model, const LatticeWindow& window,
                            const IVec& base, bool reverse) {
    std::vector<char> visited(window.volume(), 0);
    std::deque<IVec> queue;
    visited[window.index(base)] = 1;
    queue.push_back(base);
    while (!queue.empty()) {
        IVec x = queue.front();
        queue.pop_front();
        for (const auto& a : model.measure.atoms) {
            IVec y = reverse ? IVec(x - a.step) : IVec(x + a.step);
            if (!window.contains(y) || !model.cone.contains(y)) continue;
            auto idx = window.index(y);
            if (!visited[idx]) {
                visited[idx] = 1;
                queue.push_back(y);
            }
        }
    }
    return visited;
}

} // namespace

bool check_a2(const WalkModel& model, const LatticeWindow& window, const IVec& base) {
    window.validate();
    if (!window.contains(base) || !model.cone.contains(base))
        throw ValidationError("base point outside E ∩ window");
    auto fwd = reach_set(model, window, base, false);
    auto bwd = reach_set(model, window, base, true);
    LatticeWindow inner = window.inner_half();
    for (std::int64_t i = 0; i < inner.volume(); ++i) {
        IVec x = inner.coord(i);
        if (!model.cone.contains(x)) continue;
        auto idx = window.index(x);
        if (!fwd[idx] || !bwd[idx]) return false;
    }
    return true;
}

namespace {

using nlohmann::json;

WalkModel model_from_json(const json& j) {
    WalkModel model;
    try {
        model.name = j.at("name").get<std::string>();
        int d = j.at("dimension").get<int>();
        if (d < 1) throw ValidationError("dimension must be positive");
        model.measure.dim = d;
        for (const auto& js : j.at("steps")) {
            JumpAtom a;
            auto v = js.at("v").get<std::vector<int>>();
            if ((int)v.size() != d) throw ValidationError("step dimension mismatch");
            a.step = Eigen::Map<IVec>(v.data(), (int)v.size());
            a.prob = js.at("p").get<double>();
            model.measure.atoms.push_back(std::move(a));
        }
        model.cone.dim = d;
        for (const auto& jb : j.at("cone").at("branches")) {
            std::vector<Vec> branch;
            for (const auto& jn : jb) {
                auto n = jn.get<std::vector<double>>();
                if ((int)n.size() != d) throw ValidationError("cone normal dimension mismatch");
                branch.push_back(Eigen::Map<Vec>(n.data(), (int)n.size()));
            }
            model.cone.branches.push_back(std::move(branch));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed model file: ") + e.what());
    }
    model.validate();

    // A1(i) reachability proxy on a small box around the origin.
    int radius = std::max(2, model.measure.max_step_norm());
    A1Report a1 = check_a1(model.measure, radius);
    if (!a1.reachable)
        throw ValidationError("A1(i) proxy failed: support does not reach the test box");
    return model;
}

} // namespace

WalkModel parse_model(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("model parse error: ") + e.what());
    }
    return model_from_json(j);
}

WalkModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string save_model(const WalkModel& model) {
    json j;
    j["name"] = model.name;
    j["dimension"] = model.measure.dim;
    json steps = json::array();
    for (const auto& a : model.measure.atoms) {
        json js;
        js["v"] = std::vector<int>(a.step.data(), a.step.data() + a.step.size());
        js["p"] = a.prob;
        steps.push_back(js);
    }
    j["steps"] = steps;
    json branches = json::array();
    for (const auto& branch : model.cone.branches) {
        json jb = json::array();
        for (const auto& n : branch)
            jb.push_back(std::vector<double>(n.data(), n.data() + n.size()));
        branches.push_back(jb);
    }
    j["cone"]["branches"] = branches;
    return j.dump(2) + "\n";
}

} // namespace conegreen
