#include "reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>

#include "mobius/eigenfunction.hpp"
#include "mobius/euler.hpp"
#include "mobius/nodal.hpp"
#include "mobius/spectrum.hpp"

namespace mobius::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct ExpectedCluster {
    int value;
    int multiplicity;
    std::vector<ModePair> modes;
};

// Dirichlet eigenvalues of the strip up to 65.
const std::vector<ExpectedCluster>& expected_table() {
    static const std::vector<ExpectedCluster> t{
        {1, 1, {{1, 0}}},
        {5, 4, {{1, 2}, {2, 1}}},
        {9, 1, {{3, 0}}},
        {13, 4, {{2, 3}, {3, 2}}},
        {17, 4, {{1, 4}, {4, 1}}},
        {25, 5, {{3, 4}, {4, 3}, {5, 0}}},
        {29, 4, {{2, 5}, {5, 2}}},
        {37, 4, {{1, 6}, {6, 1}}},
        {41, 4, {{4, 5}, {5, 4}}},
        {45, 4, {{3, 6}, {6, 3}}},
        {49, 1, {{7, 0}}},
        {53, 4, {{2, 7}, {7, 2}}},
        {61, 4, {{5, 6}, {6, 5}}},
        {65, 8, {{1, 8}, {8, 1}, {4, 7}, {7, 4}}},
    };
    return t;
}

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << '}';
    return os.str();
}

StageResult stage(const std::string& name, const std::function<bool(std::string&)>& body) {
    StageResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.pass = body(r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

int count_domains(const EigenfunctionSpec& spec, int resolution) {
    NodalOptions o;
    o.resolution = resolution;
    o.with_orientability = false;
    return analyze_nodal(spec, o).domains.count;
}

}  // namespace

ReproduceReport run_reproduce_theorem(const ReproduceOptions& opt) {
    ReproduceReport rep;

    rep.stages.push_back(stage("spectrum table up to 65", [&](std::string& d) {
        const SpectrumTable table = enumerate_spectrum(1.0, 65.0);
        const auto& want = expected_table();
        if (table.clusters.size() != want.size()) {
            d = "expected " + std::to_string(want.size()) + " clusters, got " + std::to_string(table.clusters.size());
            return false;
        }
        int label = 1;
        for (std::size_t i = 0; i < want.size(); ++i) {
            const auto& c = table.clusters[i];
            auto modes = c.modes;
            auto wm = want[i].modes;
            std::sort(modes.begin(), modes.end());
            std::sort(wm.begin(), wm.end());
            if (c.value != want[i].value || c.multiplicity != want[i].multiplicity || modes != wm ||
                c.first_label != label) {
                d = "row " + std::to_string(i + 1) + " (lambda = " + std::to_string(want[i].value) + ") differs";
                return false;
            }
            label += want[i].multiplicity;
        }
        d = "14 clusters, labels 1.." + std::to_string(label - 1);
        return true;
    }));

    rep.stages.push_back(stage("screening", [&](std::string& d) {
        const ScreeningReport s = screen(enumerate_spectrum(1.0, 65.0), opt.j01);
        rep.screening_survivors = s.survivors;
        d = "survivors " + join(s.survivors) + ", Weyl cutoff " + std::to_string(static_cast<int>(s.weyl_cutoff));
        return s.survivors == std::vector<int>{1, 2, 7};
    }));

    rep.stages.push_back(stage("lambda_6: sin(3x)", [&](std::string& d) {
        const int k = count_domains(make_spec({{3, 0, YKind::Cos, 1.0}}), opt.resolution);
        d = std::to_string(k) + " nodal domains (need 6 for Courant-sharp)";
        return k == 2;
    }));

    rep.stages.push_back(stage("lambda_7: [2,3] family sweep", [&](std::string& d) {
        std::vector<FamilyParams> pts = sweep_points(Family::TwoThree, opt.sweep_samples, opt.sweep_samples);
        for (double b : {0.0, 0.3, kPi / 6.0, 0.9})
            for (double t : {0.0, kPi / 2.0}) pts.push_back(FamilyParams::two_three(b, t));
        for (double b : {0.0, kPi / 3.0})
            for (double t : {0.2, kPi / 4.0, 1.2}) pts.push_back(FamilyParams::two_three(b, t));
        int worst = 0;
        FamilyParams at{};
        for (const auto& p : pts) {
            const int k = count_domains(family_to_spec(p), opt.resolution);
            if (k > worst) {
                worst = k;
                at = p;
            }
        }
        rep.max_count_two_three = worst;
        std::ostringstream os;
        os << pts.size() << " eigenfunctions, at most " << worst << " nodal domains (beta=" << at.beta
           << ", theta=" << at.theta << "); lambda_7 needs 7";
        d = os.str();
        return worst < 7;
    }));

    rep.stages.push_back(stage("lambda_1, lambda_2 attained", [&](std::string& d) {
        const int k1 = count_domains(make_spec({{1, 0, YKind::Cos, 1.0}}), opt.resolution);
        const int k2 = count_domains(family_to_spec(FamilyParams::one_two(0.0, 0.0)), opt.resolution);
        if (k1 == 1) rep.courant_sharp.push_back(1);
        if (k2 == 2) rep.courant_sharp.push_back(2);
        d = "sin(x): " + std::to_string(k1) + " domain(s); sin(x)sin(2y): " + std::to_string(k2) + " domains";
        return k1 == 1 && k2 == 2;
    }));

    rep.pass = std::all_of(rep.stages.begin(), rep.stages.end(), [](const StageResult& s) { return s.pass; });
    if (rep.pass) {
        std::vector<int> remaining;
        for (int k : rep.screening_survivors)
            if (!(k == 7 && rep.max_count_two_three < 7)) remaining.push_back(k);
        rep.pass = remaining == rep.courant_sharp && remaining == std::vector<int>{1, 2};
        rep.stages.push_back({"conclusion", rep.pass, "Courant-sharp labels " + join(remaining), 0.0});
    }
    return rep;
}

}  // namespace mobius::cli
