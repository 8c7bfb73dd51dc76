#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "frobrec/io.hpp"
#include "frobrec/reconstruct.hpp"
#include "frobrec/verify.hpp"

namespace fs = std::filesystem;
using namespace frobrec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolverFailed = 3;

struct Options {
    std::string triple;
    int max_m = 1;
    std::optional<int> max_len;
    std::string format = "text";
    std::optional<std::string> out_path;
    std::optional<std::string> cache_dir;
    bool no_verify = false;
};

Orbifold parse_triple(const std::string& s) {
    std::array<int, 3> a{};
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> a[0] >> c1 >> a[1] >> c2 >> a[2]) || c1 != ',' || c2 != ',' || !in.eof())
        throw std::invalid_argument("expected --a a1,a2,a3 with integers a1 <= a2 <= a3");
    return Orbifold(a[0], a[1], a[2]);
}

Format parse_format(const std::string& f) {
    if (f == "json") return Format::Json;
    if (f == "csv") return Format::Csv;
    if (f == "text") return Format::Text;
    throw std::invalid_argument("unknown format '" + f + "' (json|csv|text)");
}

std::optional<std::string> resolve_cache_dir(const Options& opt) {
    if (const char* env = std::getenv("FROBREC_CACHE"); env && *env) return std::string(env);
    return opt.cache_dir;
}

void emit(const Options& opt, const std::string& bytes) {
    if (opt.out_path) {
        std::ofstream f(*opt.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + *opt.out_path);
        f << bytes;
    } else {
        std::cout << bytes;
    }
}

// cached (and verified) potential, or a fresh reconstruction; caches on miss
// after a clean sweep
Potential obtain_potential(const Orbifold& A, const Options& opt, bool verify_fresh,
                           bool* verified) {
    auto dir = resolve_cache_dir(opt);
    std::optional<fs::path> cache_path;
    if (dir) cache_path = fs::path(*dir) / cache_file_name(A, opt.max_m, opt.max_len);

    if (cache_path && fs::exists(*cache_path)) {
        std::ifstream f(*cache_path, std::ios::binary);
        std::stringstream buf;
        buf << f.rdbuf();
        if (verified) *verified = true;
        return deserialize(buf.str());
    }

    Reconstruction rec = reconstruct(A, opt.max_m, opt.max_len);
    bool clean = false;
    if (verify_fresh) {
        VerificationReport rep = sweep_residuals(rec.potential, opt.max_m);
        clean = rep.clean();
        if (!clean) {
            std::cerr << "verification failed: " << rep.failures.size() << " nonzero residuals\n";
            for (size_t i = 0; i < rep.failures.size() && i < 5; ++i)
                std::cerr << "  " << instance_str(A, rep.failures[i].first) << " = "
                          << rat_str(rep.failures[i].second) << "\n";
            throw std::runtime_error("residual sweep reported failures");
        }
    }
    if (verified) *verified = clean;
    if (cache_path && clean) {
        fs::create_directories(cache_path->parent_path());
        std::ofstream f(*cache_path, std::ios::binary);
        f << serialize(rec.potential, Format::Json);
    }
    return rec.potential;
}

int cmd_compute(const Options& opt) {
    Orbifold A = parse_triple(opt.triple);
    bool verified = false;
    Potential P = obtain_potential(A, opt, !opt.no_verify, &verified);
    emit(opt, serialize(P, parse_format(opt.format), !verified));
    return kExitOk;
}

int cmd_verify(const Options& opt) {
    Orbifold A = parse_triple(opt.triple);
    Options quiet = opt;
    quiet.no_verify = true;  // the explicit sweep below reports in full
    Potential P = obtain_potential(A, quiet, false, nullptr);
    VerificationReport rep = sweep_residuals(P, opt.max_m);

    std::ostringstream out;
    if (parse_format(opt.format) == Format::Json) {
        nlohmann::ordered_json j;
        j["A"] = {A.a(0), A.a(1), A.a(2)};
        j["max_m"] = opt.max_m;
        j["residuals_checked"] = rep.residuals_checked;
        j["borderline_skipped"] = rep.borderline_skipped;
        j["failures"] = nlohmann::ordered_json::array();
        for (auto& [inst, value] : rep.failures)
            j["failures"].push_back({{"instance", instance_str(A, inst)}, {"value", rat_str(value)}});
        j["homogeneity_ok"] = rep.homogeneity_ok;
        j["symmetry_ok"] = rep.symmetry_ok;
        j["algebra_ok"] = rep.algebra_ok;
        out << j.dump() << "\n";
    } else {
        out << "A = (" << A.a(0) << "," << A.a(1) << "," << A.a(2) << ")  max_m = " << opt.max_m
            << "\n";
        out << "residuals_checked: " << rep.residuals_checked << "\n";
        out << "borderline_skipped: " << rep.borderline_skipped << "\n";
        out << "failures: " << rep.failures.size() << "\n";
        for (auto& [inst, value] : rep.failures)
            out << "  " << instance_str(A, inst) << " = " << rat_str(value) << "\n";
        out << "homogeneity_ok: " << (rep.homogeneity_ok ? "true" : "false") << "\n";
        out << "symmetry_ok: " << (rep.symmetry_ok ? "true" : "false") << "\n";
        out << "algebra_ok: " << (rep.algebra_ok ? "true" : "false") << "\n";
    }
    emit(opt, out.str());
    return rep.clean() ? kExitOk : kExitVerifyFailed;
}

int cmd_invariants(const Options& opt) {
    Orbifold A = parse_triple(opt.triple);
    Potential P = obtain_potential(A, opt, !opt.no_verify, nullptr);
    auto items = P.sorted_nonzero();

    std::ostringstream out;
    Format f = parse_format(opt.format);
    if (f == Format::Json) {
        nlohmann::ordered_json j;
        j["A"] = {A.a(0), A.a(1), A.a(2)};
        j["max_m"] = P.requested_max_m();
        j["invariants"] = nlohmann::ordered_json::array();
        for (auto& [key, value] : items) {
            nlohmann::ordered_json row;
            nlohmann::ordered_json alpha = nlohmann::ordered_json::object();
            for (int t = 0; t < key.alpha.size(); ++t)
                if (key.alpha[t])
                    alpha[std::to_string(A.leg_of(t) + 1) + "," + std::to_string(A.j_of(t))] =
                        key.alpha[t];
            row["alpha"] = alpha;
            row["m"] = key.m;
            row["n_points"] = key.alpha.length();
            row["value"] = rat_str(to_gw_invariant(P, key));
            j["invariants"].push_back(row);
        }
        out << j.dump() << "\n";
    } else if (f == Format::Csv) {
        out << "alpha,m,invariant\n";
        for (auto& [key, value] : items)
            out << "\"" << key.alpha.str(A) << "\"," << key.m << ",\""
                << rat_str(to_gw_invariant(P, key)) << "\"\n";
    } else {
        out << "A = (" << A.a(0) << "," << A.a(1) << "," << A.a(2) << ")  degree-m genus-0 invariants\n";
        for (auto& [key, value] : items)
            out << "<{" << key.alpha.str(A) << "}>_m=" << key.m << " = "
                << rat_str(to_gw_invariant(P, key)) << "\n";
    }
    emit(opt, out.str());
    return kExitOk;
}

int cmd_algebra(const Options& opt) {
    Orbifold A = parse_triple(opt.triple);
    Potential P = seed(A);
    StructureConstants S = limit_algebra(A, P);
    std::vector<std::string> diagnosis;
    bool ok = check_presentation(A, S, &diagnosis);

    auto label = [&](Coord c) -> std::string {
        if (A.is_unit(c)) return "d1";
        if (A.is_divisor(c)) return "dmu";
        int t = A.twisted_index(c);
        return "d(" + std::to_string(A.leg_of(t) + 1) + "," + std::to_string(A.j_of(t)) + ")";
    };

    std::ostringstream out;
    if (parse_format(opt.format) == Format::Json) {
        nlohmann::ordered_json j;
        j["A"] = {A.a(0), A.a(1), A.a(2)};
        j["basis"] = nlohmann::ordered_json::array();
        for (Coord c = 0; c < A.mu(); ++c) j["basis"].push_back(label(c));
        j["table"] = nlohmann::ordered_json::array();
        for (Coord x = 0; x < A.mu(); ++x) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (Coord y = 0; y < A.mu(); ++y) {
                nlohmann::ordered_json vec = nlohmann::ordered_json::array();
                for (Coord k = 0; k < A.mu(); ++k) vec.push_back(rat_str(S.product(x, y)[k]));
                row.push_back(vec);
            }
            j["table"].push_back(row);
        }
        j["presentation_ok"] = ok;
        if (!ok) j["diagnosis"] = diagnosis;
        out << j.dump() << "\n";
    } else {
        out << "limit algebra for A = (" << A.a(0) << "," << A.a(1) << "," << A.a(2) << ")\n";
        for (Coord x = 0; x < A.mu(); ++x)
            for (Coord y = x; y < A.mu(); ++y) {
                out << label(x) << " o " << label(y) << " =";
                bool any = false;
                for (Coord k = 0; k < A.mu(); ++k) {
                    const Rational& v = S.product(x, y)[k];
                    if (v == 0) continue;
                    out << (any ? " + " : " ") << (v == 1 ? "" : rat_str(v) + "*") << label(k);
                    any = true;
                }
                if (!any) out << " 0";
                out << "\n";
            }
        out << "presentation_ok: " << (ok ? "true" : "false") << "\n";
        for (auto& d : diagnosis) out << "  " << d << "\n";
    }
    emit(opt, out.str());
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact WDVV reconstruction of genus-zero orbifold projective line potentials"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool needs_m) {
        sub->add_option("--a", opt.triple, "orbifold orders a1,a2,a3 (sorted)")->required();
        if (needs_m)
            sub->add_option("--max-m", opt.max_m, "divisor-exponent bound (>= 1)")->required();
        sub->add_option("--max-len", opt.max_len, "optional cap on |alpha| per level");
        sub->add_option("--format", opt.format, "json|csv|text (default text)");
        sub->add_option("--out", opt.out_path, "write output to a file instead of stdout");
        sub->add_option("--cache-dir", opt.cache_dir,
                        "cache directory (FROBREC_CACHE overrides)");
    };

    CLI::App* compute = app.add_subcommand("compute", "reconstruct and emit the coefficients");
    add_common(compute, true);
    compute->add_flag("--no-verify", opt.no_verify, "skip the residual sweep (stamps output)");

    CLI::App* verify = app.add_subcommand("verify", "residual sweep and audits");
    add_common(verify, true);

    CLI::App* invariants = app.add_subcommand("invariants", "Gromov-Witten invariant table");
    add_common(invariants, true);
    invariants->add_flag("--no-verify", opt.no_verify, "skip the residual sweep");

    CLI::App* algebra = app.add_subcommand("algebra", "limit algebra structure constants");
    algebra->add_option("--a", opt.triple, "orbifold orders a1,a2,a3 (sorted)")->required();
    algebra->add_option("--format", opt.format, "json|csv|text (default text)");
    algebra->add_option("--out", opt.out_path, "write output to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (compute->parsed()) return cmd_compute(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (invariants->parsed()) return cmd_invariants(opt);
        if (algebra->parsed()) return cmd_algebra(opt);
        return kExitUsage;
    } catch (const StalledError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailed;
    } catch (const InconsistentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailed;
    } catch (const SymmetryConflictError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}
