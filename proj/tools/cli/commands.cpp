#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json_io.hpp"
#include "mobius/bifurcation.hpp"
#include "mobius/critical.hpp"
#include "mobius/curves.hpp"
#include "mobius/errors.hpp"
#include "mobius/euler.hpp"
#include "mobius/nodal.hpp"
#include "mobius/render.hpp"
#include "mobius/screening.hpp"
#include "mobius/spectrum.hpp"
#include "reproduce.hpp"

namespace mobius::cli {

namespace {

constexpr double kPi = std::numbers::pi;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Reports a failed mathematical check; maps to exit code 1.
class CheckFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpecSource {
    std::string family;
    double beta = 0.0;
    double theta = 0.0;
    std::string modes;
    std::string spec_file;
};

struct Resolved {
    EigenfunctionSpec spec;
    std::optional<FamilyParams> params;
};

struct Common {
    bool json = false;
    int resolution = 800;
    double zero_tol = 1e-9;
    bool no_stability = false;
};

void add_spec_options(CLI::App* sub, SpecSource& s) {
    sub->add_option("--family", s.family, "eigenfunction family: 2,3 or 1,2");
    sub->add_option("--beta", s.beta, "family phase beta");
    sub->add_option("--theta", s.theta, "family mixing angle theta in [0, pi/2]");
    sub->add_option("--modes", s.modes, "explicit modes \"m,n,kind,c;...\" with kind sin|cos");
    sub->add_option("--spec", s.spec_file, "JSON file with 'modes' or 'family'");
}

void add_common(CLI::App* sub, Common& c, bool with_resolution = true) {
    sub->add_flag("--json", c.json, "print JSON");
    if (with_resolution) {
        sub->add_option("--resolution", c.resolution, "grid cells per side")->check(CLI::Range(64, 1 << 14));
        sub->add_option("--zero-tol", c.zero_tol, "relative zero band threshold")->check(CLI::PositiveNumber);
        sub->add_flag("--no-stability", c.no_stability, "skip the refinement check");
    }
}

FamilyParams family_params(const std::string& f, double beta, double theta) {
    if (f == "2,3") return FamilyParams::two_three(beta, theta);
    if (f == "1,2") return FamilyParams::one_two(beta, theta);
    throw UsageError("--family must be 2,3 or 1,2");
}

Family family_of(const std::string& f) { return family_params(f, 0.0, 0.0).family; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<TrigMode> parse_modes(const std::string& text) {
    std::vector<TrigMode> modes;
    for (const auto& item : split(text, ';')) {
        const auto f = split(item, ',');
        if (f.size() != 4) throw UsageError("mode '" + item + "' must read m,n,kind,c");
        TrigMode t;
        try {
            t.m = std::stoi(f[0]);
            t.n = std::stoi(f[1]);
            t.c = std::stod(f[3]);
        } catch (const std::exception&) {
            throw UsageError("mode '" + item + "' has a malformed number");
        }
        if (f[2] != "sin" && f[2] != "cos") throw UsageError("mode kind must be sin or cos");
        t.kind = f[2] == "sin" ? YKind::Sin : YKind::Cos;
        modes.push_back(t);
    }
    if (modes.empty()) throw UsageError("--modes is empty");
    return modes;
}

Resolved resolve(const SpecSource& s) {
    const int given = !s.family.empty() + !s.modes.empty() + !s.spec_file.empty();
    if (given != 1) throw UsageError("give exactly one of --family, --modes, --spec");
    Resolved r;
    if (!s.family.empty()) {
        r.params = family_params(s.family, s.beta, s.theta);
        r.spec = family_to_spec(*r.params);
    } else if (!s.modes.empty()) {
        r.spec = make_spec(parse_modes(s.modes));
    } else {
        std::ifstream in(s.spec_file);
        if (!in) throw UsageError("cannot read spec file " + s.spec_file);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw UsageError(std::string("malformed spec file: ") + e.what());
        }
        r.spec = spec_from_json(j, r.params);
    }
    return r;
}

NodalOptions nodal_options(const Common& c) {
    NodalOptions o;
    o.resolution = c.resolution;
    o.zero_tol = c.zero_tol;
    o.check_stability = !c.no_stability;
    return o;
}

std::filesystem::path output_path(const std::string& given, const std::string& fallback) {
    std::filesystem::path p = given.empty() ? std::filesystem::path(fallback) : std::filesystem::path(given);
    if (p.is_relative())
        if (const char* dir = std::getenv("MOBIUS_OUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
    return p;
}

// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void print_ledger_row(std::ostream& out, const EulerLedger& l) {
    out << std::setprecision(6);
    if (l.params) out << "beta=" << std::setw(9) << l.params->beta << " theta=" << std::setw(9) << l.params->theta << "  ";
    out << "k=" << l.k << " omega=" << l.omega << " b1=" << l.b1 << " b0=" << l.b0 << " interior=" << l.interior_term
        << " boundary=" << l.boundary_term << (l.balanced() ? "  balanced" : "  UNBALANCED") << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dirichlet spectrum and nodal sets of the flat Moebius strip", "mobius"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "mobius 0.1.0");

    // spectrum
    double lambda_max = 65.0, a_param = 1.0;
    Common c_spec;
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalue clusters up to a bound");
    spectrum->add_option("--lambda-max", lambda_max, "largest eigenvalue")->check(CLI::NonNegativeNumber);
    spectrum->add_option("--a", a_param, "strip width parameter")->check(CLI::PositiveNumber);
    add_common(spectrum, c_spec, false);

    // screen
    double screen_max = 65.0, j01 = kJ01;
    Common c_screen;
    auto* screen_cmd = app.add_subcommand("screen", "Weyl and Faber-Krahn screening of Courant-sharp candidates");
    screen_cmd->add_option("--lambda-max", screen_max, "table bound (must reach the Weyl cutoff)");
    screen_cmd->add_option("--j01", j01, "first zero of J0");
    add_common(screen_cmd, c_screen, false);

    // nodal
    SpecSource s_nodal;
    Common c_nodal;
    auto* nodal = app.add_subcommand("nodal", "count nodal domains and their orientability");
    add_spec_options(nodal, s_nodal);
    add_common(nodal, c_nodal);

    // critical
    SpecSource s_crit;
    Common c_crit;
    auto* critical = app.add_subcommand("critical", "critical zeros with orders and arc counts");
    add_spec_options(critical, s_crit);
    add_common(critical, c_crit);

    // bifurcation
    std::string b_family = "2,3";
    double b_beta = kPi / 6.0;
    int b_sweep = 0;
    Common c_bif;
    auto* bif = app.add_subcommand("bifurcation", "y_beta, m_beta and theta_beta");
    bif->add_option("--family", b_family, "2,3 or 1,2");
    bif->add_option("--beta", b_beta, "phase in the open canonical range");
    bif->add_option("--sweep", b_sweep, "tabulate this many interior beta values")->check(CLI::NonNegativeNumber);
    add_common(bif, c_bif, false);

    // euler
    SpecSource s_euler;
    Common c_euler;
    bool e_sweep = false, e_bif = false;
    int e_samples = 8, e_random = 0;
    std::uint64_t e_seed = 1;
    auto* euler = app.add_subcommand("euler", "check k = omega + b1 - b0 + 1/2 sum(nu-2) + 1/2 sum(rho)");
    add_spec_options(euler, s_euler);
    add_common(euler, c_euler);
    euler->add_flag("--sweep", e_sweep, "interior (beta, theta) grid of the family (default 2,3)");
    euler->add_option("--samples", e_samples, "grid size per axis for --sweep")->check(CLI::Range(3, 64));
    euler->add_option("--random", e_random, "check this many random (beta, theta) points")->check(CLI::Range(0, 100000));
    euler->add_option("--seed", e_seed, "seed for --random");
    euler->add_flag("--include-bifurcation", e_bif, "with --sweep, also check theta = theta_beta for each sampled beta");

    // render
    SpecSource s_render;
    Common c_render;
    std::string r_out;
    bool r_labels = false;
    auto* render = app.add_subcommand("render", "SVG of the nodal set on the fundamental rectangle");
    add_spec_options(render, s_render);
    add_common(render, c_render);
    render->add_option("--out", r_out, "output file (default nodal.svg)");
    render->add_flag("--labels", r_labels, "label nodal domains");

    // mesh
    SpecSource s_mesh;
    Common c_mesh;
    std::string m_out;
    bool m_nodal = false;
    EmbeddingParams m_params;
    auto* mesh = app.add_subcommand("mesh", "OBJ mesh of the embedded strip");
    add_spec_options(mesh, s_mesh);
    add_common(mesh, c_mesh);
    mesh->add_option("--out", m_out, "output file (default strip.obj)");
    mesh->add_flag("--with-nodal", m_nodal, "also write <name>.nodal.obj with the nodal lines");
    mesh->add_option("--R", m_params.R, "centre-line radius, > pi/2");
    mesh->add_option("--u", m_params.u_samples, "samples across the strip")->check(CLI::Range(8, 1 << 14));
    mesh->add_option("--v", m_params.v_samples, "samples along the strip")->check(CLI::Range(8, 1 << 14));

    // stern
    int st_r = 2;
    double st_eps = 0.01;
    Common c_stern;
    auto* stern = app.add_subcommand("stern", "sin(x)sin(2ry) + (1+eps)sin(2rx)sin(y)");
    stern->add_option("--r", st_r, "r >= 1")->check(CLI::Range(1, 64));
    stern->add_option("--epsilon", st_eps, "perturbation, >= 0");
    add_common(stern, c_stern);

    // reproduce-theorem
    ReproduceOptions rp;
    bool rp_json = false;
    auto* repro = app.add_subcommand("reproduce-theorem", "rerun the full argument that only lambda_1, lambda_2 are Courant-sharp");
    repro->add_option("--resolution", rp.resolution, "grid cells per side")->check(CLI::Range(64, 1 << 14));
    repro->add_option("--j01", rp.j01, "first zero of J0 (for fault injection)");
    repro->add_option("--samples", rp.sweep_samples, "interior sweep size per axis")->check(CLI::Range(3, 64));
    repro->add_flag("--json", rp_json, "print JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << "mobius 0.1.0\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*spectrum) {
            const SpectrumTable t = enumerate_spectrum(a_param, lambda_max);
            if (c_spec.json) {
                out << to_json(t).dump(2) << '\n';
            } else {
                out << std::setw(8) << "lambda" << std::setw(8) << "labels" << "  mult  modes\n";
                for (const auto& cl : t.clusters) {
                    std::ostringstream labels, modes;
                    labels << cl.first_label << '-' << cl.last_label;
                    for (const auto& m : cl.modes) modes << '(' << m.m << ',' << m.n << ") ";
                    out << std::setw(8) << cl.value << std::setw(8) << labels.str() << std::setw(6) << cl.multiplicity
                        << "  " << modes.str() << '\n';
                }
            }
            return 0;
        }
        if (*screen_cmd) {
            const ScreeningReport r = screen(enumerate_spectrum(1.0, screen_max), j01);
            if (c_screen.json) {
                out << to_json(r).dump(2) << '\n';
            } else {
                out << "Weyl cutoff " << r.weyl_cutoff << " (root " << r.weyl_root << ")\n";
                out << "after multiplicity rule:";
                for (int k : r.candidates_after_multiplicity) out << ' ' << k;
                out << "\nbelow cutoff:";
                for (int k : r.candidates_below_cutoff) out << ' ' << k;
                out << "\nFaber-Krahn ratios:\n";
                for (const auto& [k, v] : r.fk_ratios)
                    out << "  k=" << std::setw(2) << k << "  " << std::fixed << std::setprecision(4) << v
                        << (k <= v ? "  kept" : "  excluded") << '\n';
                out << std::defaultfloat << "survivors:";
                for (int k : r.survivors) out << ' ' << k;
                out << '\n';
            }
            return 0;
        }
        if (*nodal) {
            const Resolved r = resolve(s_nodal);
            const NodalAnalysis a = analyze_nodal(r.spec, nodal_options(c_nodal));
            const CurveGraph curves = extract_curves(r.spec, a.grid);
            if (c_nodal.json) {
                json j = to_json(a);
                j["b0"] = curves.b0;
                j["b1"] = curves.b1;
                j["spec"] = to_json(r.spec);
                out << j.dump(2) << '\n';
            } else {
                out << "nodal domains: " << a.domains.count << " (resolution " << a.grid.nx << ")\n";
                out << "non-orientable: " << a.domains.non_orientable_count() << '\n';
                out << "b0 = " << curves.b0 << ", b1 = " << curves.b1 << '\n';
                for (int l = 0; l < a.domains.count; ++l)
                    out << "  domain " << l + 1 << (a.domains.label_sign[l] > 0 ? " +" : " -") << " area "
                        << std::setprecision(5) << a.domains.areas[l]
                        << (a.domains.orientable[l] ? "  orientable" : "  non-orientable") << '\n';
            }
            return 0;
        }
        if (*critical) {
            const Resolved r = resolve(s_crit);
            std::vector<CriticalZero> zs;
            if (r.params) {
                zs = find_critical_zeros(*r.params);
            } else {
                const SignGrid g = sample_grid(r.spec, c_crit.resolution, c_crit.resolution, c_crit.zero_tol);
                zs = find_critical_zeros(r.spec, extract_curves(r.spec, g));
            }
            if (c_crit.json) {
                json arr = json::array();
                for (const auto& z : zs) arr.push_back(to_json(z));
                out << json{{"critical_zeros", arr}}.dump(2) << '\n';
            } else {
                out << zs.size() << " critical zero(s)\n";
                for (const auto& z : zs)
                    out << std::setprecision(10) << "  (" << z.location.x << ", " << z.location.y << ") "
                        << (z.kind == ZeroKind::Interior ? "interior" : "boundary") << " order " << z.order
                        << (z.kind == ZeroKind::Interior ? " nu=" + std::to_string(z.nu) : " rho=" + std::to_string(z.rho))
                        << (z.degenerate ? " degenerate" : "") << '\n';
            }
            return 0;
        }
        if (*bif) {
            const Family fam = family_of(b_family);
            std::vector<bifurcation::BifurcationResult> rs;
            if (b_sweep > 0) {
                const double top = fam == Family::TwoThree ? kPi / 3.0 : kPi / 2.0;
                for (int i = 0; i < b_sweep; ++i) rs.push_back(bifurcation::solve_theta_beta(fam, (i + 1) * top / (b_sweep + 1)));
            } else {
                rs.push_back(bifurcation::solve_theta_beta(fam, b_beta));
            }
            if (c_bif.json) {
                json arr = json::array();
                for (const auto& r : rs) arr.push_back(to_json(r));
                out << (b_sweep > 0 ? arr : arr[0]).dump(2) << '\n';
            } else {
                out << std::setprecision(12);
                for (const auto& r : rs)
                    out << "beta=" << r.beta << " y_beta=" << r.y_beta << " m_beta=" << r.m_beta
                        << " theta_beta=" << r.theta_beta << '\n';
            }
            return 0;
        }
        if (*euler) {
            EulerOptions eo;
            eo.nodal = nodal_options(c_euler);
            std::vector<EulerLedger> ledgers;
            std::vector<FamilyParams> pts;
            if (e_sweep || e_random > 0) {
                const Family fam = family_of(s_euler.family.empty() ? "2,3" : s_euler.family);
                const double top = fam == Family::TwoThree ? kPi / 3.0 : kPi / 2.0;
                if (e_sweep) {
                    pts = sweep_points(fam, e_samples, e_samples);
                    for (int i = 0; e_bif && i < e_samples; ++i) {
                        const double beta = (i + 1) * top / (e_samples + 1);
                        const double tb = bifurcation::solve_theta_beta(fam, beta).theta_beta;
                        pts.push_back(fam == Family::TwoThree ? FamilyParams::two_three(beta, tb) : FamilyParams::one_two(beta, tb));
                    }
                }
                std::mt19937_64 rng(e_seed);
                for (int i = 0; i < e_random; ++i) {
                    const double beta = top * (0.01 + 0.98 * unit(rng));
                    double theta = (kPi / 2.0) * (0.01 + 0.98 * unit(rng));
                    const double tb = bifurcation::solve_theta_beta(fam, beta).theta_beta;
                    if (std::abs(theta - tb) < 0.02) theta = theta < tb ? tb - 0.02 : tb + 0.02;
                    pts.push_back(fam == Family::TwoThree ? FamilyParams::two_three(beta, theta)
                                                          : FamilyParams::one_two(beta, theta));
                }
                for (const auto& p : pts) ledgers.push_back(euler_ledger(family_to_spec(p), p, analyze_nodal(family_to_spec(p), eo.nodal), eo));
            } else {
                const Resolved r = resolve(s_euler);
                ledgers.push_back(euler_ledger(r.spec, r.params, analyze_nodal(r.spec, eo.nodal), eo));
            }
            bool ok = true;
            std::map<std::pair<int, int>, int> phase;
            for (const auto& l : ledgers) {
                ok = ok && l.balanced() && l.non_orientable <= 1 && l.incidence_mismatches.empty();
                ++phase[{l.k, l.omega}];
            }
            if (c_euler.json) {
                json arr = json::array();
                for (const auto& l : ledgers) arr.push_back(to_json(l));
                json phases = json::array();
                for (const auto& [key, n] : phase) phases.push_back({{"k", key.first}, {"omega", key.second}, {"points", n}});
                out << json{{"ledgers", arr}, {"phases", phases}, {"all_balanced", ok}}.dump(2) << '\n';
            } else {
                for (const auto& l : ledgers) {
                    print_ledger_row(out, l);
                    for (const auto& m : l.incidence_mismatches) out << "    " << m << '\n';
                }
                if (ledgers.size() > 1) {
                    out << "phases:";
                    for (const auto& [key, n] : phase) out << " (k=" << key.first << ", omega=" << key.second << "): " << n;
                    out << '\n';
                }
            }
            if (!ok) throw CheckFailed("unbalanced Euler ledger");
            return 0;
        }
        if (*render) {
            const Resolved r = resolve(s_render);
            NodalOptions no = nodal_options(c_render);
            const NodalAnalysis a = analyze_nodal(r.spec, no);
            const CurveGraph curves = extract_curves(r.spec, a.grid);
            PlotStyle style;
            style.domain_labels = r_labels;
            const auto path = output_path(r_out, "nodal.svg");
            plot_fundamental_domain(r.spec, curves, style, path, &a);
            if (c_render.json)
                out << json{{"path", path.string()}, {"nodal_domains", a.domains.count}, {"polylines", curves.edges.size()}}.dump(2) << '\n';
            else
                out << "wrote " << path.string() << " (" << a.domains.count << " nodal domains, " << curves.edges.size()
                    << " polylines)\n";
            return 0;
        }
        if (*mesh) {
            std::optional<EigenfunctionSpec> spec;
            if (m_nodal) spec = resolve(s_mesh).spec;
            const auto path = output_path(m_out, "strip.obj");
            const MeshFiles f = export_mesh(m_params, spec, path, c_mesh.resolution);
            const Mesh m = build_mesh(m_params);
            if (c_mesh.json) {
                json j{{"mesh", f.mesh.string()},
                       {"vertices", m.vertices.size()},
                       {"triangles", m.triangles.size()},
                       {"euler_characteristic", m.euler_characteristic()},
                       {"boundary_loops", m.boundary_loops()}};
                if (f.nodal) j["nodal"] = f.nodal->string();
                out << j.dump(2) << '\n';
            } else {
                out << "wrote " << f.mesh.string() << " (" << m.vertices.size() << " vertices, " << m.triangles.size()
                    << " triangles, chi " << m.euler_characteristic() << ", " << m.boundary_loops() << " boundary loop)\n";
                if (f.nodal) out << "wrote " << f.nodal->string() << '\n';
            }
            return 0;
        }
        if (*stern) {
            if (st_eps == 0.0) err << "warning: epsilon = 0 is the symmetric case; the nodal set has extra crossings\n";
            const EigenfunctionSpec spec = stern_spec(st_r, st_eps);
            EulerOptions eo;
            eo.nodal = nodal_options(c_stern);
            const NodalAnalysis a = analyze_nodal(spec, eo.nodal);
            const EulerLedger l = euler_ledger(spec, std::nullopt, a, eo);
            if (c_stern.json) {
                out << json{{"r", st_r}, {"epsilon", st_eps}, {"eigenvalue", spec.eigenvalue}, {"nodal", to_json(a)}, {"euler", to_json(l)}}.dump(2)
                    << '\n';
            } else {
                out << "eigenvalue " << spec.eigenvalue << ", nodal domains " << a.domains.count << '\n';
                print_ledger_row(out, l);
            }
            if (!l.balanced()) throw CheckFailed("unbalanced Euler ledger");
            return 0;
        }
        if (*repro) {
            const ReproduceReport r = run_reproduce_theorem(rp);
            if (rp_json) {
                json stages = json::array();
                for (const auto& s : r.stages) stages.push_back({{"stage", s.name}, {"pass", s.pass}, {"detail", s.detail}});
                out << json{{"pass", r.pass},
                            {"stages", stages},
                            {"screening_survivors", r.screening_survivors},
                            {"courant_sharp", r.courant_sharp},
                            {"max_nodal_count_2_3", r.max_count_two_three}}
                               .dump(2)
                    << '\n';
            } else {
                for (const auto& s : r.stages)
                    out << (s.pass ? "PASS " : "FAIL ") << std::left << std::setw(32) << s.name << std::right << s.detail
                        << std::fixed << std::setprecision(2) << "  [" << s.seconds << " s]" << std::defaultfloat << '\n';
                out << (r.pass ? "Courant-sharp eigenvalues: lambda_1, lambda_2\n" : "theorem NOT reproduced\n");
            }
            return r.pass ? 0 : 1;
        }
    } catch (const CheckFailed& e) {
        err << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const PoleError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "failed: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace mobius::cli
