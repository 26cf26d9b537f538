#include "naqi/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <map>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "naqi/advantage.hpp"
#include "naqi/complementarity.hpp"
#include "naqi/scenarios.hpp"

namespace naqi {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// State files

namespace {

std::vector<std::vector<double>> read_square(const json& doc, const char* key, std::size_t dim) {
    if (!doc.contains(key)) throw std::invalid_argument(std::string("state file: missing field \"") + key + "\"");
    const json& rows = doc.at(key);
    if (!rows.is_array() || rows.size() != dim)
        throw std::invalid_argument(std::string("state file: field \"") + key + "\" must be a " + std::to_string(dim) +
                                    "x" + std::to_string(dim) + " array");
    std::vector<std::vector<double>> out;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != dim)
            throw std::invalid_argument(std::string("state file: field \"") + key + "\" has a row of wrong length");
        std::vector<double> r;
        for (const auto& v : row) {
            if (!v.is_number()) throw std::invalid_argument(std::string("state file: field \"") + key + "\" has a non-numeric entry");
            r.push_back(v.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

DensityMatrix parse_state_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("state file: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("state file: top level must be an object");
    for (const auto& [key, _] : doc.items())
        if (key != "dim" && key != "re" && key != "im")
            throw std::invalid_argument("state file: unknown field \"" + key + "\"");
    if (!doc.contains("dim") || !doc.at("dim").is_number_integer())
        throw std::invalid_argument("state file: field \"dim\" must be an integer");
    const auto d = doc.at("dim").get<long long>();
    if (d != 2 && d != 4 && d != 8) throw std::invalid_argument("state file: field \"dim\" must be 2, 4 or 8");
    const auto dim = static_cast<std::size_t>(d);
    const auto re = read_square(doc, "re", dim);
    const auto im = read_square(doc, "im", dim);
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = {re[r][c], im[r][c]};
    return DensityMatrix(m);
}

DensityMatrix read_state_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("state file: cannot open \"" + path + "\"");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_state_json(buf.str());
}

std::string state_to_json(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json rr = json::array(), ir = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            rr.push_back(m(r, c).real());
            ir.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    json doc;
    doc["dim"] = m.dim();
    doc["re"] = std::move(re);
    doc["im"] = std::move(im);
    return doc.dump(2) + "\n";
}

void write_state_json(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write \"" + path + "\"");
    out << state_to_json(m);
}

// ---------------------------------------------------------------------------
// Command line

namespace {

class NotConverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rounds to 10 significant digits; integral values print without a fraction.
json rounded(double v) {
    if (v == 0.0) return 0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    const double r = std::strtod(buf, nullptr);
    if (std::trunc(r) == r && std::abs(r) < 1e15) return static_cast<long long>(r);
    return r;
}

json vec_json(Vec3 v, bool round) {
    if (round) return json::array({rounded(v.x), rounded(v.y), rounded(v.z)});
    return json::array({v.x, v.y, v.z});
}

unsigned default_workers() {
    if (const char* env = std::getenv("NAQI_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
        throw std::invalid_argument("NAQI_WORKERS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct OptimizerFlags {
    int grid = OptimizerConfig{}.grid_points_per_dim;
    int refine_iters = OptimizerConfig{}.refine_iterations;
    double refine_tol = OptimizerConfig{}.refine_tolerance;
    int starts = OptimizerConfig{}.multistart_count;
    std::uint64_t seed = OptimizerConfig{}.seed;
    unsigned workers = 0;
    bool two_angle = false;
    double margin = NaqiConfig{}.verdict_margin;

    void attach(CLI::App* app) {
        app->add_option("--grid", grid, "Outer grid points per dimension")->capture_default_str()->check(CLI::PositiveNumber);
        app->add_option("--refine-iters", refine_iters, "Simplex iterations per start")->capture_default_str()->check(CLI::PositiveNumber);
        app->add_option("--refine-tol", refine_tol, "Simplex diameter tolerance")->capture_default_str()->check(CLI::PositiveNumber);
        app->add_option("--starts", starts, "Simplex starts from the best grid cells")->capture_default_str()->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "Grid offset seed (0: endpoint-aligned grid)")->capture_default_str();
        app->add_option("--workers", workers, "Worker threads (default: NAQI_WORKERS, else available cores)")->check(CLI::PositiveNumber);
        app->add_flag("--two-angle-family", two_angle, "Search MUB triples over (theta1, phi1) only");
        app->add_option("--margin", margin, "Verdict requires witness > margin")->capture_default_str();
    }

    NaqiConfig config() const {
        NaqiConfig c;
        c.outer.grid_points_per_dim = grid;
        c.outer.refine_iterations = refine_iters;
        c.outer.refine_tolerance = refine_tol;
        c.outer.multistart_count = starts;
        c.outer.seed = seed;
        c.outer.workers = workers ? workers : default_workers();
        c.family = two_angle ? FrameFamily::TwoAngle : FrameFamily::FullOrbit;
        c.verdict_margin = margin;
        return c;
    }
};

const std::map<std::string, FamilyKind> kTwoQubitFamilies{{"werner", FamilyKind::Werner},
                                                          {"bell-mixture", FamilyKind::BellMixture}};

FamilyTemplate family_template(FamilyKind kind) {
    return [kind](double p) { return StateFamily{kind, p, {}}; };
}

json naqi_json(const NaqiResult& r) {
    json m = json::array();
    for (const auto& a : r.measurement_angles) m.push_back(json{{"theta", a.theta}, {"phi", a.phi}});
    json d;
    d["outer_starts"] = r.diagnostics.outer_starts;
    d["outer_iterations"] = r.diagnostics.outer_iterations;
    d["outer_evaluations"] = r.diagnostics.outer_evaluations;
    d["second_best_gap"] = r.diagnostics.second_best_gap ? json(*r.diagnostics.second_best_gap) : json(nullptr);
    d["certified"] = r.diagnostics.certified;
    json j;
    j["measure"] = std::string(to_string(r.measure));
    j["value"] = r.value;
    j["bound"] = bound_constant(r.measure).value;
    j["witness"] = r.witness;
    j["verdict"] = r.verdict;
    j["steerable_implied"] = r.steerable_implied;
    j["frame_family"] = std::string(to_string(r.family));
    j["mub"] = {{"theta1", r.theta1}, {"phi1", r.phi1}, {"chi", r.chi}};
    j["measurements"] = std::move(m);
    j["diagnostics"] = std::move(d);
    return j;
}

struct Sink {
    std::ostream& stdout_stream;
    std::string path;

    void emit(const std::string& text) const {
        if (path.empty()) {
            stdout_stream << text;
            return;
        }
        std::ofstream f(path);
        if (!f) throw std::invalid_argument("--output: cannot write \"" + path + "\"");
        f << text;
    }
};

// ---------------------------------------------------------------------------
// Selftest

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

int selftest(std::ostream& out, double margin_override, bool corrupt) {
    std::vector<Check> checks;
    NaqiConfig cfg;
    cfg.outer.workers = 1;
    if (corrupt) cfg.verdict_margin = margin_override;
    const double sqrt5 = std::sqrt(5.0);

    const StateMaximum l1 = maximize_sum_over_states(Measure::L1, mub_triple(0.0, 0.0));
    checks.push_back({"bound l1", std::abs(l1.value - sqrt5) <= 1e-6, fmt("value %.10f", l1.value)});
    const StateMaximum r = maximize_sum_over_states(Measure::RelativeEntropy, mub_triple(0.0, 0.0));
    checks.push_back({"bound r", std::abs(r.value - kPublishedRelEntropyBound) <= kRelEntropyBoundTolerance,
                      fmt("recomputed %.10f (published %.5f)", r.value, kPublishedRelEntropyBound)});

    for (double p : {0.6, 0.8, 1.0}) {
        const NaqiResult w = witness(build_state(StateFamily::werner(p)), Measure::L1, cfg);
        const bool expect = 3.0 * p > sqrt5;
        checks.push_back({"werner l1 p=" + fmt("%.1f", p), std::abs(w.value - 3.0 * p) <= 1e-6 && w.verdict == expect,
                          fmt("N %.10f, witness %.10f", w.value, w.witness)});
    }

    for (double p : {0.1, 0.3, 0.5}) {
        const NaqiResult a = witness(build_state(StateFamily::bell_mixture(p)), Measure::L1, cfg);
        const NaqiResult b = witness(build_state(StateFamily::bell_mixture(1.0 - p)), Measure::L1, cfg);
        const bool expect = p != 0.5;
        checks.push_back({"bell-mixture symmetry p=" + fmt("%.1f", p),
                          std::abs(a.witness - b.witness) <= 1e-6 && a.verdict == expect && b.verdict == expect,
                          fmt("witness %.10f vs %.10f", a.witness, b.witness)});
    }

    int failed = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        failed += c.pass ? 0 : 1;
    }
    out << (failed ? std::to_string(failed) + " check(s) failed\n" : std::string("all checks passed\n"));
    return failed ? kExitSelftestFailed : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Imaginarity measures, complementarity bounds and nonlocal advantage of quantum imaginarity"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    std::string output;
    std::string format = "json";
    bool degrees = false;
    app.add_option("--output,-o", output, "Write results to this file instead of stdout");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_flag("--degrees", degrees, "Angle arguments are in degrees");

    // bound
    auto* bound = app.add_subcommand("bound", "Complementarity bounds for a MUB triple");
    std::string bound_measure;
    bound->add_option("--measure", bound_measure, "l1 or r (default: both)");

    // measure
    auto* meas = app.add_subcommand("measure", "Imaginarity of a single-qubit state in a basis");
    std::vector<double> bloch;
    std::string meas_state;
    std::string basis = "z";
    std::vector<double> mub_angles;
    int mub_index = 0;
    std::string meas_measure;
    auto* bloch_opt = meas->add_option("--bloch", bloch, "Bloch vector x y z")->expected(3);
    auto* meas_state_opt = meas->add_option("--state", meas_state, "JSON density matrix (dim 2)");
    bloch_opt->excludes(meas_state_opt);
    auto* basis_opt = meas->add_option("--basis", basis, "Eigenbasis of a Pauli operator")
                          ->check(CLI::IsMember({"x", "y", "z"}))
                          ->capture_default_str();
    auto* mub_opt = meas->add_option("--mub", mub_angles, "MUB triple angles theta1 phi1 [chi]")->expected(2, 3);
    meas->add_option("--index", mub_index, "Basis of the MUB triple (0, 1, 2)")->check(CLI::Range(0, 2))->needs(mub_opt);
    mub_opt->excludes(basis_opt);
    meas->add_option("--measure", meas_measure, "l1 or r (default: both)");

    // naqi / scan / threshold share a state family
    auto* naqi_cmd = app.add_subcommand("naqi", "Nonlocal advantage of a two-qubit state");
    std::string naqi_family, naqi_state, naqi_measure;
    double naqi_p = 0.0;
    OptimizerFlags naqi_flags;
    auto* nf = naqi_cmd->add_option("--family", naqi_family, "werner or bell-mixture")
                   ->check(CLI::IsMember({"werner", "bell-mixture"}));
    auto* np = naqi_cmd->add_option("--p", naqi_p, "Family parameter in [0, 1]")->needs(nf);
    auto* ns = naqi_cmd->add_option("--state", naqi_state, "JSON density matrix (dim 4)");
    nf->excludes(ns);
    nf->needs(np);
    naqi_cmd->add_option("--measure", naqi_measure, "l1 or r")->required();
    naqi_flags.attach(naqi_cmd);

    auto* scan = app.add_subcommand("scan", "Witness over a grid of the family parameter (CSV by default)");
    std::string scan_fam, scan_measure;
    double scan_from = 0.0, scan_to = 1.0;
    int scan_points = 11;
    OptimizerFlags scan_flags;
    scan->add_option("--family", scan_fam, "werner or bell-mixture")
        ->check(CLI::IsMember({"werner", "bell-mixture"}))
        ->required();
    scan->add_option("--measure", scan_measure, "l1 or r")->required();
    scan->add_option("--from", scan_from, "First parameter value")->capture_default_str();
    scan->add_option("--to", scan_to, "Last parameter value")->capture_default_str();
    scan->add_option("--points", scan_points, "Grid points, endpoints included")->capture_default_str()->check(CLI::PositiveNumber);
    scan_flags.attach(scan);

    auto* thr = app.add_subcommand("threshold", "Parameter where the witness changes sign");
    std::string thr_family, thr_measure;
    double thr_lo = 0.5, thr_hi = 1.0, thr_tol = 1e-5;
    OptimizerFlags thr_flags;
    thr->add_option("--family", thr_family, "werner or bell-mixture")
        ->check(CLI::IsMember({"werner", "bell-mixture"}))
        ->required();
    thr->add_option("--measure", thr_measure, "l1 or r")->required();
    thr->add_option("--lo", thr_lo, "Bracket start")->capture_default_str();
    thr->add_option("--hi", thr_hi, "Bracket end")->capture_default_str();
    thr->add_option("--tol", thr_tol, "Bracket width at termination")->capture_default_str()->check(CLI::PositiveNumber);
    thr_flags.attach(thr);

    auto* excl = app.add_subcommand("exclusion", "Advantage of the three ordered qubit pairs of a three-qubit family (CSV by default)");
    std::string excl_family = "surface", excl_measure = "l1";
    int alpha_points = 40, beta_points = 40, theta_points = 100;
    bool reversed = false;
    OptimizerFlags excl_flags;
    excl->add_option("--family", excl_family,
                     "surface: (cos a, sin a cos b, sin a sin b); line: (1, cos t, sin t)/sqrt2")
        ->check(CLI::IsMember({"surface", "line"}))
        ->capture_default_str();
    excl->add_option("--measure", excl_measure, "l1 or r")->capture_default_str();
    excl->add_option("--alpha-points", alpha_points, "Grid points for alpha in [0, pi]")->capture_default_str()->check(CLI::PositiveNumber);
    excl->add_option("--beta-points", beta_points, "Grid points for beta in [0, 2 pi]")->capture_default_str()->check(CLI::PositiveNumber);
    excl->add_option("--theta-points", theta_points, "Grid points for theta in [0, 2 pi]")->capture_default_str()->check(CLI::PositiveNumber);
    excl->add_flag("--reversed", reversed, "Measure the second party of each pair instead of the first");
    excl_flags.attach(excl);

    auto* self = app.add_subcommand("selftest", "Fast consistency checks");
    double corrupt_margin = 0.0;
    auto* corrupt_opt = self->add_option("--debug-verdict-margin", corrupt_margin)->group("");

    const bool csv_default = true;
    auto* format_opt = app.get_option("--format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
    }

    const Sink sink{out, output};
    const double to_rad = degrees ? std::numbers::pi / 180.0 : 1.0;
    auto want_csv = [&](bool fallback_csv) { return format_opt->count() ? format == "csv" : fallback_csv; };

    try {
        if (*bound) {
            json doc;
            auto entry = [](Measure m) {
                const auto& b = bound_constant(m);
                json j;
                j["value"] = rounded(b.value);
                j["maximizer"] = vec_json(b.maximizer, true);
                return j;
            };
            if (!bound_measure.empty()) {
                doc = entry(parse_measure(bound_measure));
            } else {
                doc["l1"] = entry(Measure::L1);
                doc["r"] = entry(Measure::RelativeEntropy);
            }
            sink.emit(doc.dump() + "\n");
            return kExitOk;
        }

        if (*meas) {
            if (bloch.empty() && meas_state.empty()) throw std::invalid_argument("measure: give --bloch or --state");
            const DensityMatrix rho = bloch.empty() ? read_state_json(meas_state)
                                                    : bloch_to_density({bloch[0], bloch[1], bloch[2]});
            if (rho.dim() != 2) throw std::invalid_argument("--state: measure needs a single-qubit state");
            OrthonormalBasis b = OrthonormalBasis::computational();
            if (!mub_angles.empty()) {
                const double chi = mub_angles.size() > 2 ? mub_angles[2] * to_rad : 0.0;
                b = mub_triple(mub_angles[0] * to_rad, mub_angles[1] * to_rad, chi).bases[static_cast<std::size_t>(mub_index)];
            } else if (basis == "x") {
                b = OrthonormalBasis::pauli_x();
            } else if (basis == "y") {
                b = OrthonormalBasis::pauli_y();
            }
            json doc;
            if (meas_measure.empty() || parse_measure(meas_measure) == Measure::L1) doc["l1"] = imag_l1(rho, b);
            if (meas_measure.empty() || parse_measure(meas_measure) == Measure::RelativeEntropy)
                doc["r"] = imag_rel_entropy(rho, b);
            doc["imaginarity_axis"] = vec_json(b.imaginarity_axis(), false);
            sink.emit(doc.dump() + "\n");
            return kExitOk;
        }

        if (*naqi_cmd) {
            if (naqi_family.empty() && naqi_state.empty())
                throw std::invalid_argument("naqi: give --family with --p, or --state");
            const Measure m = parse_measure(naqi_measure);
            const DensityMatrix rho = naqi_state.empty()
                                          ? build_state(StateFamily{kTwoQubitFamilies.at(naqi_family), naqi_p, {}})
                                          : read_state_json(naqi_state);
            if (rho.dim() != 4) throw std::invalid_argument("--state: naqi needs a two-qubit state");
            const NaqiResult r = witness(rho, m, naqi_flags.config());
            sink.emit(naqi_json(r).dump(2) + "\n");
            if (!r.diagnostics.certified) throw NotConverged("naqi: refinement did not reach --refine-tol");
            return kExitOk;
        }

        if (*scan) {
            const Measure m = parse_measure(scan_measure);
            const auto grid = linspace(scan_from, scan_to, scan_points);
            const auto points = scan_family(family_template(kTwoQubitFamilies.at(scan_fam)), grid, m, scan_flags.config());
            std::ostringstream text;
            if (want_csv(csv_default)) {
                write_scan_csv(text, points);
            } else {
                json arr = json::array();
                for (const auto& p : points)
                    arr.push_back(json{{"param", p.param}, {"N", p.value}, {"witness", p.witness}, {"verdict", p.verdict}});
                text << arr.dump(2) << '\n';
            }
            sink.emit(text.str());
            for (const auto& p : points)
                if (!p.certified) throw NotConverged("scan: refinement did not reach --refine-tol at p=" + std::to_string(p.param));
            return kExitOk;
        }

        if (*thr) {
            const Measure m = parse_measure(thr_measure);
            const NaqiConfig cfg = thr_flags.config();
            const FamilyTemplate fam = family_template(kTwoQubitFamilies.at(thr_family));
            bool all_certified = true;
            const auto g = [&](double p) {
                const NaqiResult r = witness(build_state(fam(p)), m, cfg);
                all_certified = all_certified && r.diagnostics.certified;
                return r.witness;
            };
            const double p = bisect_threshold(g, thr_lo, thr_hi, thr_tol);
            json doc;
            doc["family"] = thr_family;
            doc["measure"] = std::string(to_string(m));
            doc["threshold"] = p;
            doc["tolerance"] = thr_tol;
            sink.emit(doc.dump(2) + "\n");
            if (!all_certified) throw NotConverged("threshold: refinement did not reach --refine-tol");
            return kExitOk;
        }

        if (*excl) {
            const Measure m = parse_measure(excl_measure);
            const NaqiConfig cfg = excl_flags.config();
            const PairRoles roles = reversed ? PairRoles::Reversed : PairRoles::Forward;
            const auto records = excl_family == "surface" ? exclusion_scan_surface(alpha_points, beta_points, m, cfg, roles)
                                                          : exclusion_scan_line(theta_points, m, cfg, roles);
            std::ostringstream text;
            if (want_csv(csv_default)) {
                write_exclusion_csv(text, records);
            } else {
                json arr = json::array();
                for (const auto& r : records) {
                    json rec;
                    if (r.params.size() == 2) {
                        rec["alpha"] = r.params[0];
                        rec["beta"] = r.params[1];
                    } else {
                        rec["theta"] = r.params[0];
                    }
                    rec["N_AB"] = r.pairs[0].value;
                    rec["N_BC"] = r.pairs[1].value;
                    rec["N_CA"] = r.pairs[2].value;
                    rec["count_exceeding"] = r.count_exceeding;
                    arr.push_back(std::move(rec));
                }
                text << arr.dump(2) << '\n';
            }
            sink.emit(text.str());
            for (const auto& r : records)
                for (const auto& pr : r.pairs)
                    if (!pr.diagnostics.certified) throw NotConverged("exclusion: refinement did not reach --refine-tol");
            return kExitOk;
        }

        if (*self) {
            std::ostringstream text;
            const int code = selftest(text, corrupt_margin, corrupt_opt->count() > 0);
            sink.emit(text.str());
            return code;
        }
    } catch (const NotConverged& e) {
        err << "error: " << e.what() << '\n';
        return kExitNotConverged;
    } catch (const NonFiniteObjective& e) {
        err << "error: " << e.what() << '\n';
        return kExitNotConverged;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

}  // namespace naqi
