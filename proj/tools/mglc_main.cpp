// mglc: tables and theorem checks for multigraded local cohomology.
//
// Table commands print one CohomologyTable as JSON (or a readable chamber
// listing with --pretty). Check commands print one Verdict per line; the
// process exits 0 when every guaranteed verdict holds, 1 when a guaranteed
// verdict fails, and 2 on malformed input. Sweeps fan out over a corpus
// directory with a bounded worker pool (capped by MGLC_WORKERS) and
// aggregate in file order, so output is byte-identical across runs.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mglc/corpus.hpp"
#include "mglc/engine.hpp"
#include "mglc/monomial.hpp"
#include "mglc/theorem.hpp"

using namespace mglc;
using nlohmann::json;

namespace {

MonomialIdeal ideal_arg(const std::string& s) {
    if (!s.empty() && s.front() == '{') return ideal_from_json(s);
    return load_ideal(s);
}

Expo parse_k(const std::string& s, int d) {
    std::vector<long long> vals;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            vals.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw input_error("bad exponent list '" + s + "'");
        }
    }
    if (vals.size() == 1) return Expo((size_t)d, vals[0]);
    if ((int)vals.size() != d)
        throw input_error("exponent list '" + s + "' needs 1 or " + std::to_string(d) +
                          " entries");
    return vals;
}

std::string chamber_str(const ChamberDecomposition& cd, long long c) {
    std::vector<size_t> digits = cd.decode(c);
    std::ostringstream out;
    for (int v = 0; v < cd.nvars; ++v) {
        if (v) out << ", ";
        std::optional<long long> lo = cd.lower(v, digits[(size_t)v]);
        std::optional<long long> hi = cd.upper(v, digits[(size_t)v]);
        out << "a" << (v + 1);
        if (lo && hi && *lo == *hi) out << " = " << *lo;
        else if (lo && hi) out << " in [" << *lo << ", " << *hi << "]";
        else if (lo) out << " >= " << *lo;
        else if (hi) out << " <= " << *hi;
        else out << " unconstrained";
    }
    return out.str();
}

void print_table(const CohomologyTable& t, bool pretty) {
    if (!pretty) {
        std::cout << t.to_json() << "\n";
        return;
    }
    std::cout << t.kind << "[" << t.index << "], " << t.chambers.chamber_count()
              << " chambers\n";
    bool any = false;
    for (long long c = 0; c < t.chambers.chamber_count(); ++c) {
        if (t.dims[(size_t)c] == 0) continue;
        std::cout << "  " << chamber_str(t.chambers, c) << ": dim " << t.dims[(size_t)c]
                  << "\n";
        any = true;
    }
    if (!any) std::cout << "  zero module\n";
}

std::string pretty_verdict(const Verdict& v) {
    std::ostringstream out;
    out << v.claim;
    if (!v.instance.empty()) {
        json inst = json::parse(v.instance);
        std::string extras;
        for (auto& [key, val] : inst.items()) {
            if (key == "ideal" || key == "ideal_a" || key == "ideal_b" || key == "facets")
                continue;
            if (!extras.empty()) extras += ", ";
            extras += key + "=" + val.dump();
        }
        if (!extras.empty()) out << " (" << extras << ")";
    }
    out << ": " << to_string(v.result);
    if (v.guaranteed) out << " [guaranteed]";
    if (!v.witness.empty()) out << "  witness " << v.witness;
    return out.str();
}

// prints the verdicts and folds them into the process exit code
int emit_verdicts(const std::vector<Verdict>& vs, bool pretty) {
    int code = 0;
    for (const Verdict& v : vs) {
        if (pretty) std::cout << pretty_verdict(v) << "\n";
        else std::cout << v.to_json() << "\n";
        if (v.guaranteed && v.result != VerdictResult::holds) code = 1;
    }
    return code;
}

size_t worker_cap() {
    if (const char* env = std::getenv("MGLC_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw input_error("MGLC_WORKERS must be a positive integer");
        return (size_t)v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

long long default_rspan_window(const MonomialIdeal& a, const Expo& k) {
    long long kmax = 1;
    for (long long v : k) kmax = std::max(kmax, v);
    return 1 + kmax * (a.max_exponent() + 1);
}

std::vector<Verdict> run_checks(const MonomialIdeal& a, const std::vector<std::string>& checks,
                                const std::string& kspec, int t_max, int i_max_opt) {
    int d = a.ring.nvars;
    PowerEndomorphism phi{parse_k(kspec, d)};
    int i_max = i_max_opt >= 0 ? i_max_opt : d;
    std::vector<Verdict> out;
    for (const std::string& c : checks) {
        if (c == "injectivity") {
            std::vector<Verdict> vs = check_injectivity_chain(a, phi, t_max, i_max);
            out.insert(out.end(), vs.begin(), vs.end());
        } else if (c == "depth") {
            out.push_back(check_depth_injectivity(a));
        } else if (c == "vanishing") {
            std::vector<Verdict> vs = check_vanishing_criterion(a, phi);
            out.insert(out.end(), vs.begin(), vs.end());
            if (a.is_squarefree() && !a.is_zero() && !a.is_unit()) {
                std::vector<Verdict> eq =
                    check_vanishing_equivalence(complex_of(a), a.ring.field_char);
                out.insert(out.end(), eq.begin(), eq.end());
            }
        } else if (c == "purity") {
            out.push_back(check_purity_splitting(a, phi));
        } else if (c == "rspan") {
            for (int j = 0; j <= d; ++j)
                out.push_back(
                    check_rspan_surjectivity(a, phi, j, default_rspan_window(a, phi.k)));
        } else if (c == "phi-iso") {
            for (int i = 0; i <= (int)a.gens.size(); ++i)
                out.push_back(check_phi_ext_iso(a, phi.k, i));
        } else {
            throw input_error("unknown check '" + c + "'");
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multigraded Ext and local cohomology workbench"};
    app.require_subcommand(1);

    std::string ideal_spec, coeff_spec, kspec = "2", mode = "all-squarefree", out_dir;
    std::string corpus_dir, checks_csv = "injectivity";
    int deg_i = 0, deg_j = 0, t_max = 1, i_max = -1, dims = 2;
    long long bracket_k = 0, window = -1, field_char = 0, max_exp = 3;
    int count = 20;
    uint64_t seed = 1;
    bool pretty = false;
    int exit_code = 0;
    std::string bracket_spec;

    app.add_flag("--pretty", pretty, "human readable output instead of JSON");

    CLI::App* ext = app.add_subcommand("ext", "Ext table of R/a (optionally against R/b)")->fallthrough();
    ext->add_option("--ideal", ideal_spec, "ideal file or inline JSON")->required();
    ext->add_option("--i", deg_i, "cohomological degree")->required();
    ext->add_option("--bracket", bracket_spec, "bracket power exponents, e.g. 2 or 2,3");
    ext->add_option("--coeff", coeff_spec, "coefficient ideal b for Ext into R/b");
    ext->callback([&] {
        MonomialIdeal a = ideal_arg(ideal_spec);
        if (!bracket_spec.empty())
            a = bracket_power(a, parse_k(bracket_spec, a.ring.nvars));
        CohomologyTable t = coeff_spec.empty() ? ext_table(a, deg_i)
                                               : ext_table(a, ideal_arg(coeff_spec), deg_i);
        print_table(t, pretty);
    });

    CLI::App* lca = app.add_subcommand("lc-a", "local cohomology H^i_a(R)")->fallthrough();
    lca->add_option("--ideal", ideal_spec, "ideal file or inline JSON")->required();
    lca->add_option("--i", deg_i, "cohomological degree")->required();
    lca->callback([&] { print_table(ha_table(ideal_arg(ideal_spec), deg_i), pretty); });

    CLI::App* lcm = app.add_subcommand("lc-m", "local cohomology H^j_m(R/b)")->fallthrough();
    lcm->add_option("--ideal", ideal_spec, "ideal file or inline JSON")->required();
    lcm->add_option("--j", deg_j, "cohomological degree")->required();
    lcm->callback([&] { print_table(hm_table(ideal_arg(ideal_spec), deg_j), pretty); });

    CLI::App* check = app.add_subcommand("check", "run theorem checks, one verdict per line")->fallthrough();
    check->require_subcommand(1);

    CLI::App* inj = check->add_subcommand("injectivity", "Ext chain maps along bracket powers")->fallthrough();
    inj->add_option("--ideal", ideal_spec)->required();
    inj->add_option("--k", kspec, "endomorphism exponents (default 2)");
    inj->add_option("--t-max", t_max, "last chain step (default 1)");
    inj->add_option("--i-max", i_max, "last Ext degree (default: number of variables)");
    inj->callback([&] {
        exit_code = emit_verdicts(
            run_checks(ideal_arg(ideal_spec), {"injectivity"}, kspec, t_max, i_max), pretty);
    });

    CLI::App* dep = check->add_subcommand("depth", "injectivity at i = depth")->fallthrough();
    dep->add_option("--ideal", ideal_spec)->required();
    dep->callback([&] {
        exit_code = emit_verdicts({check_depth_injectivity(ideal_arg(ideal_spec))}, pretty);
    });

    CLI::App* van = check->add_subcommand(
        "vanishing", "automaton nilpotency vs H^i_a, plus the square-free equivalence")->fallthrough();
    van->add_option("--ideal", ideal_spec)->required();
    van->add_option("--k", kspec, "endomorphism exponents (default 2)");
    van->callback([&] {
        exit_code =
            emit_verdicts(run_checks(ideal_arg(ideal_spec), {"vanishing"}, kspec, 1, -1), pretty);
    });

    CLI::App* et = check->add_subcommand("ext-tor", "Ext against R/b vs Tor of Ext^d")->fallthrough();
    et->add_option("--ideal", ideal_spec, "m-primary ideal a")->required();
    et->add_option("--coeff", coeff_spec, "coefficient ideal b")->required();
    et->add_option("--i", deg_i, "single degree (default: all 0..d)");
    et->callback([&] {
        MonomialIdeal a = ideal_arg(ideal_spec);
        MonomialIdeal b = ideal_arg(coeff_spec);
        std::vector<Verdict> vs;
        if (et->count("--i")) vs.push_back(check_ext_tor(a, b, deg_i));
        else
            for (int i = 0; i <= a.ring.nvars; ++i) vs.push_back(check_ext_tor(a, b, i));
        exit_code = emit_verdicts(vs, pretty);
    });

    CLI::App* pur = check->add_subcommand("purity", "the monomial splitting of phi-bar")->fallthrough();
    pur->add_option("--ideal", ideal_spec)->required();
    pur->add_option("--k", kspec, "endomorphism exponents (default 2)");
    pur->callback([&] {
        exit_code =
            emit_verdicts(run_checks(ideal_arg(ideal_spec), {"purity"}, kspec, 1, -1), pretty);
    });

    CLI::App* rsp = check->add_subcommand("rspan", "H^j_m spanned by shifted phi-bar images")->fallthrough();
    rsp->add_option("--ideal", ideal_spec)->required();
    rsp->add_option("--k", kspec, "endomorphism exponents (default 2)");
    rsp->add_option("--j", deg_j, "single degree (default: all 0..d)");
    rsp->add_option("--window", window, "box radius (default 1 + kmax*(maxexp+1))");
    rsp->callback([&] {
        MonomialIdeal a = ideal_arg(ideal_spec);
        PowerEndomorphism phi{parse_k(kspec, a.ring.nvars)};
        long long w = rsp->count("--window") ? window : default_rspan_window(a, phi.k);
        std::vector<Verdict> vs;
        if (rsp->count("--j")) vs.push_back(check_rspan_surjectivity(a, phi, deg_j, w));
        else
            for (int j = 0; j <= a.ring.nvars; ++j)
                vs.push_back(check_rspan_surjectivity(a, phi, j, w));
        exit_code = emit_verdicts(vs, pretty);
    });

    CLI::App* pei = check->add_subcommand("phi-iso", "bracket Ext vs rescaled-complex Ext")->fallthrough();
    pei->add_option("--ideal", ideal_spec)->required();
    pei->add_option("--k", kspec, "endomorphism exponents (default 2)");
    pei->add_option("--i", deg_i, "single degree (default: all up to the generator count)");
    pei->callback([&] {
        MonomialIdeal a = ideal_arg(ideal_spec);
        Expo k = parse_k(kspec, a.ring.nvars);
        std::vector<Verdict> vs;
        if (pei->count("--i")) vs.push_back(check_phi_ext_iso(a, k, deg_i));
        else
            for (int i = 0; i <= (int)a.gens.size(); ++i)
                vs.push_back(check_phi_ext_iso(a, k, i));
        exit_code = emit_verdicts(vs, pretty);
    });

    CLI::App* ex32 = check->add_subcommand("example-3-2",
                                           "vanishing H^d_m with nonvanishing mixed Ext")->fallthrough();
    ex32->add_option("--d", dims, "number of variables")->required();
    ex32->add_option("--char", field_char, "field characteristic (default 0)");
    ex32->callback(
        [&] { exit_code = emit_verdicts({check_example_3_2(dims, field_char)}, pretty); });

    CLI::App* cor = app.add_subcommand("corpus", "write a corpus of ideal files")->fallthrough();
    cor->add_option("--vars", dims, "number of variables")->required();
    cor->add_option("--mode", mode, "all-squarefree or random-monomial");
    cor->add_option("--max-exp", max_exp, "exponent bound (random mode)");
    cor->add_option("--count", count, "ideal count (random mode)");
    cor->add_option("--seed", seed, "random seed");
    cor->add_option("--char", field_char, "field characteristic (default 0)");
    cor->add_option("--out", out_dir, "output directory")->required();
    cor->callback([&] {
        CorpusSpec spec;
        spec.num_vars = dims;
        spec.mode = mode;
        spec.max_exponent = max_exp;
        spec.count = count;
        spec.seed = seed;
        spec.field_char = field_char;
        std::vector<MonomialIdeal> ideals = generate_corpus(spec);
        std::filesystem::create_directories(out_dir);
        json files = json::array();
        for (size_t n = 0; n < ideals.size(); ++n) {
            char name[32];
            std::snprintf(name, sizeof name, "ideal_%04zu.json", n);
            std::ofstream out(std::filesystem::path(out_dir) / name);
            out << ideal_to_json(ideals[n]) << "\n";
            if (!out) throw input_error(std::string("cannot write ") + name);
            files.push_back(name);
        }
        json report;
        report["dir"] = out_dir;
        report["mode"] = spec.mode;
        report["num_vars"] = spec.num_vars;
        report["count"] = ideals.size();
        report["files"] = files;
        std::cout << report.dump() << "\n";
    });

    CLI::App* sw = app.add_subcommand("sweep", "run checks over every ideal in a directory")->fallthrough();
    sw->add_option("--corpus", corpus_dir, "directory of ideal JSON files")->required();
    sw->add_option("--checks", checks_csv,
                   "comma list of injectivity,depth,vanishing,purity,rspan,phi-iso");
    sw->add_option("--k", kspec, "endomorphism exponents (default 2)");
    sw->add_option("--t-max", t_max, "last chain step for injectivity (default 1)");
    sw->callback([&] {
        std::vector<std::string> checks;
        std::stringstream in(checks_csv);
        std::string item;
        while (std::getline(in, item, ','))
            if (!item.empty()) checks.push_back(item);
        if (checks.empty()) throw input_error("empty check list");

        std::vector<std::filesystem::path> files;
        if (!std::filesystem::is_directory(corpus_dir))
            throw input_error("not a directory: " + corpus_dir);
        for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw input_error("no ideal files in " + corpus_dir);

        std::vector<std::vector<Verdict>> results(files.size());
        std::vector<std::exception_ptr> errors(files.size());
        std::atomic<size_t> next{0};
        auto work = [&] {
            while (true) {
                size_t at = next.fetch_add(1);
                if (at >= files.size()) return;
                try {
                    results[at] = run_checks(load_ideal(files[at].string()), checks, kspec,
                                             t_max, -1);
                } catch (...) {
                    errors[at] = std::current_exception();
                }
            }
        };
        size_t workers = std::min(worker_cap(), files.size());
        if (workers <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
            for (std::thread& t : pool) t.join();
        }
        for (size_t n = 0; n < files.size(); ++n)
            if (errors[n]) std::rethrow_exception(errors[n]);

        json verdicts = json::array();
        long long holds = 0, fails = 0, limited = 0, na = 0, bad_guaranteed = 0;
        for (size_t n = 0; n < files.size(); ++n)
            for (const Verdict& v : results[n]) {
                json row = json::parse(v.to_json());
                row["file"] = files[n].filename().string();
                verdicts.push_back(row);
                switch (v.result) {
                case VerdictResult::holds: ++holds; break;
                case VerdictResult::fails: ++fails; break;
                case VerdictResult::window_limited: ++limited; break;
                case VerdictResult::not_applicable: ++na; break;
                }
                if (v.guaranteed && v.result != VerdictResult::holds) ++bad_guaranteed;
            }
        json report;
        report["corpus"] = corpus_dir;
        report["checks"] = checks;
        report["files"] = files.size();
        report["summary"] = {{"holds", holds},
                             {"fails", fails},
                             {"window-limited", limited},
                             {"not-applicable", na},
                             {"guaranteed_failures", bad_guaranteed},
                             {"total", verdicts.size()}};
        report["verdicts"] = verdicts;
        std::cout << report.dump() << "\n";
        if (bad_guaranteed > 0) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e);
        return c == 0 ? 0 : 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
