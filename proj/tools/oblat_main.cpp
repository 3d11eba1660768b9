#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oblat/enumeration.hpp"
#include "oblat/lattice_io.hpp"
#include "oblat/obtuse.hpp"
#include "oblat/oracle.hpp"
#include "oblat/reduction.hpp"
#include "oblat/report.hpp"
#include "oblat/rng.hpp"

namespace {

using namespace oblat;
using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point t0) {
    return (long)std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string vec_str(const IntVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += v[i].get_str();
    }
    return s + "]";
}

std::string set_str(const std::vector<int>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(v[i]);
    }
    return s + "}";
}

std::string rat_str(const Rat& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

std::string dbl_str(double x) {
    std::ostringstream ss;
    ss << std::setprecision(6) << x;
    return ss.str();
}

IntVec coeffs_to_vector(const IntMat& B, const IntVec& c) {
    IntVec v(B[0].size(), 0);
    for (size_t i = 0; i < B.size(); ++i)
        for (size_t t = 0; t < v.size(); ++t) v[t] += c[i] * B[i][t];
    return v;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct GlobalOpts {
    unsigned precision = 256;
    uint64_t seed = 1;
    unsigned long guard_bits = 1000000;
};

struct ConvertOpts {
    std::string input;
    std::string sampling = "step";
    double delta_override = 0.0; // 0 = use default 1/epsilon
    double lll_delta = 0.99;
    unsigned long probe_limit = 10000;
    std::string out;
};

SamplingConfig make_sampling(const std::string& method, double delta_override,
                             unsigned precision, unsigned long probe_limit) {
    SamplingConfig cfg;
    cfg.method = method == "binary" ? SamplingMethod::BinarySearch : SamplingMethod::Step;
    if (delta_override > 0.0) cfg.delta = BigFloat::of(delta_override, precision);
    cfg.precision = (mpfr_prec_t)precision;
    cfg.walk_probe_limit = probe_limit;
    return cfg;
}

int run_convert(const GlobalOpts& g, const ConvertOpts& o) {
    IntMat B = read_lattice_file(o.input);
    RunReport rep;
    rep.command = "convert";
    rep.add("input", o.input);
    rep.add("input-digest", digest_lattice(B));
    rep.add("dim", (long)B.size());
    rep.add("sampling", o.sampling);
    rep.add("lll-delta", dbl_str(o.lll_delta));
    rep.add("max-entry-bits-in", (unsigned long)max_entry_bits(B));

    auto t0 = Clock::now();
    IntMat L = lll_reduce(B, Rat(o.lll_delta));
    rep.add("max-entry-bits-lll", (unsigned long)max_entry_bits(L));

    ConvertConfig cfg;
    cfg.sampling = make_sampling(o.sampling, o.delta_override, g.precision, o.probe_limit);
    cfg.guard_bits = g.guard_bits;
    long flips = 0, direct = 0, transforms = 0;
    auto count_ops = [&](const CliqueState&, const std::string& op) {
        if (op == "sign-flip-add")
            ++flips;
        else if (op == "direct-add")
            ++direct;
        else
            ++transforms;
    };
    IntMat out;
    try {
        out = convert_to_obtuse(L, cfg, count_ops);
    } catch (const EntryOverflowGuard& e) {
        rep.add("error", std::string(e.what()));
        rep.add("guard-bits", g.guard_bits);
        rep.add("wall-ms", elapsed_ms(t0));
        print_report(std::cout, rep);
        return 3;
    }
    long ms = elapsed_ms(t0);

    rep.add("sign-flip-adds", flips);
    rep.add("direct-adds", direct);
    rep.add("ilp-transforms", transforms);
    rep.add("max-entry-bits-out", (unsigned long)max_entry_bits(out));
    // Verification recomputed from the final matrices, not taken from the
    // pipeline.
    bool obtuse = is_obtuse(out);
    bool lattice_ok = same_lattice(out, B);
    rep.add("obtuse", obtuse ? "yes" : "no");
    rep.add("lattice-equal", lattice_ok ? "yes" : "no");
    rep.add("wall-ms", ms);
    rep.add("output-digest", digest_lattice(out));
    print_report(std::cout, rep);

    if (!o.out.empty())
        write_lattice_file(o.out, out);
    else
        std::cout << render_lattice(out) << "\n";
    return obtuse && lattice_ok ? 0 : 1;
}

struct SvpOpts {
    std::string input;
    std::string mode = "full";
    std::string radius_sq; // decimal integer override
    bool no_shrink = false;
    bool verify_oracle = false;
    int oracle_cap = 6;
};

int run_svp(const GlobalOpts& g, const SvpOpts& o) {
    IntMat B = read_lattice_file(o.input);
    RunReport rep;
    rep.command = "svp";
    rep.add("input", o.input);
    rep.add("input-digest", digest_lattice(B));
    rep.add("dim", (long)B.size());
    rep.add("mode", o.mode);

    if ((o.mode == "signed" || o.mode == "both") && !is_obtuse(B))
        throw NotObtuse("sign-restricted enumeration requires an obtuse basis "
                        "(some off-diagonal Gram entry is positive); run "
                        "`oblat check` to see the violating pairs or `oblat "
                        "convert` to obtain an obtuse basis first");

    EnumerationBound bound;
    if (!o.radius_sq.empty()) {
        bound.r_sq = Rat(Int(o.radius_sq));
        if (bound.r_sq <= 0) throw std::invalid_argument("--radius-sq must be positive");
    } else {
        bound.r_sq = minkowski_sq_upper(B, (mpfr_prec_t)g.precision);
    }
    rep.add("radius-sq", rat_str(bound.r_sq));
    rep.add("shrink", o.no_shrink ? "no" : "yes");

    auto run_mode = [&](EnumMode m, const char* tag) -> std::optional<EnumerationResult> {
        auto t0 = Clock::now();
        auto r = enumerate(B, bound, m, !o.no_shrink);
        long ms = elapsed_ms(t0);
        std::string p(tag);
        if (r) {
            rep.add(p + "-norm-sq", r->norm_sq.get_str());
            rep.add(p + "-norm", sqrt(BigFloat::of(r->norm_sq, 64)).str(12));
            rep.add(p + "-coeffs", vec_str(r->coeffs));
            rep.add(p + "-vector", vec_str(coeffs_to_vector(B, r->coeffs)));
            rep.add(p + "-nodes", (unsigned long)r->nodes_visited);
        } else {
            rep.add(p + "-result", "none within radius");
        }
        rep.add(p + "-wall-ms", ms);
        return r;
    };

    std::optional<EnumerationResult> full, restricted;
    if (o.mode == "full" || o.mode == "both") full = run_mode(EnumMode::Full, "full");
    if (o.mode == "signed" || o.mode == "both")
        restricted = run_mode(EnumMode::SignRestricted, "signed");

    bool ok = true;
    if (o.mode == "both" && full && restricted) {
        ok = full->norm_sq == restricted->norm_sq;
        rep.add("norms-equal", ok ? "yes" : "no");
        rep.add("node-ratio", dbl_str((double)restricted->nodes_visited /
                                      (double)std::max<unsigned long long>(full->nodes_visited, 1)));
    }
    if (o.verify_oracle) {
        if ((int)B.size() <= o.oracle_cap) {
            SvpCertificate cert = brute_force_svp(B, o.oracle_cap);
            rep.add("oracle-norm-sq", cert.norm_sq.get_str());
            const auto& best = full ? full : restricted;
            bool agree = best && best->norm_sq == cert.norm_sq;
            rep.add("oracle-agreement", agree ? "yes" : "no");
            ok = ok && agree;
        } else {
            rep.add("oracle-agreement",
                    "skipped (dimension exceeds cap " + std::to_string(o.oracle_cap) + ")");
        }
    }
    print_report(std::cout, rep);
    return ok ? 0 : 1;
}

int run_check(const GlobalOpts& g, const std::string& input) {
    IntMat B = read_lattice_file(input);
    const int n = (int)B.size();
    RunReport rep;
    rep.command = "check";
    rep.add("input", input);
    rep.add("input-digest", digest_lattice(B));
    rep.add("dim", (long)n);
    rep.add("max-entry-bits", (unsigned long)max_entry_bits(B));

    IntMat G = generate_dot_product_matrix(B);
    Int diag_min = G[0][0], diag_max = G[0][0];
    Int off_min, off_max;
    bool have_off = false;
    long positive_off = 0;
    std::vector<std::pair<int, int>> violations;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                diag_min = std::min(diag_min, G[i][j]);
                diag_max = std::max(diag_max, G[i][j]);
                continue;
            }
            if (!have_off) {
                off_min = off_max = G[i][j];
                have_off = true;
            } else {
                off_min = std::min(off_min, G[i][j]);
                off_max = std::max(off_max, G[i][j]);
            }
            if (i < j && G[i][j] > 0) {
                ++positive_off;
                violations.emplace_back(i, j);
            }
        }
    rep.add("gram-diag-range", "[" + diag_min.get_str() + ", " + diag_max.get_str() + "]");
    if (have_off)
        rep.add("gram-offdiag-range", "[" + off_min.get_str() + ", " + off_max.get_str() + "]");
    rep.add("obtuse", violations.empty() ? "yes" : "no");
    rep.add("positive-pairs", positive_off);
    for (auto [i, j] : violations)
        rep.add("violating-pair",
                "(" + std::to_string(i) + "," + std::to_string(j) + ") dot=" + G[i][j].get_str());
    auto part = split_semi_obtuse(B);
    rep.add("semi-obtuse-partition",
            part ? set_str(part->first) + " | " + set_str(part->second) : std::string("none"));
    rep.add("minkowski-bound", minkowski_bound(B, (mpfr_prec_t)g.precision).str(12));
    rep.add("gaussian-heuristic", gaussian_heuristic(B, (mpfr_prec_t)g.precision).str(12));
    print_report(std::cout, rep);
    return 0;
}

struct OracleOpts {
    std::string input;
    int cap = 6;
    bool compare = false;
};

int run_oracle(const GlobalOpts& g, const OracleOpts& o) {
    IntMat B = read_lattice_file(o.input);
    RunReport rep;
    rep.command = "oracle";
    rep.add("input", o.input);
    rep.add("input-digest", digest_lattice(B));
    rep.add("dim", (long)B.size());
    rep.add("cap", (long)o.cap);

    auto t0 = Clock::now();
    SvpCertificate cert = brute_force_svp(B, o.cap);
    rep.add("norm-sq", cert.norm_sq.get_str());
    rep.add("norm", sqrt(BigFloat::of(cert.norm_sq, 64)).str(12));
    rep.add("coeffs", vec_str(cert.coeffs));
    rep.add("vector", vec_str(coeffs_to_vector(B, cert.coeffs)));
    rep.add("search-box", vec_str(cert.search_box));
    rep.add("sign-uniform", sign_uniformity(cert) ? "yes" : "no");
    rep.add("wall-ms", elapsed_ms(t0));

    bool ok = true;
    if (o.compare) {
        auto r = enumerate(B, default_bound(B), EnumMode::Full, true);
        ok = r && r->norm_sq == cert.norm_sq;
        if (r) rep.add("enumeration-norm-sq", r->norm_sq.get_str());
        rep.add("enumeration-agreement", ok ? "yes" : "no");
    }
    (void)g;
    print_report(std::cout, rep);
    return ok ? 0 : 1;
}

struct BenchOpts {
    std::vector<int> dims;
    int trials = 10;
    std::string sampling = "step";
    std::string out;
    long entry_bound = 20;
};

struct TrialRow {
    int dim = 0, trial = 0;
    uint64_t seed = 0;
    bool ok = false;
    Int norm_full, norm_signed;
    unsigned long long nodes_full = 0, nodes_signed = 0;
    size_t bits_in = 0, bits_lll = 0, bits_out = 0;
    long convert_ms = 0;
};

double mean_of(const std::vector<double>& xs) {
    return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / (double)xs.size();
}

double median_of(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    size_t h = xs.size() / 2;
    return xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

int run_bench(const GlobalOpts& g, const BenchOpts& o) {
    if (o.trials <= 0) throw std::invalid_argument("--trials must be positive");
    if (o.entry_bound <= 0) throw std::invalid_argument("--entry-bound must be positive");
    for (int d : o.dims)
        if (d < 1) throw std::invalid_argument("dimensions must be >= 1");

    std::ostringstream csv;
    csv << "# schema: oblat-bench v1\n";
    csv << "dim,trial,seed,ok,norm_sq_full,norm_sq_signed,nodes_full,nodes_signed,"
           "ratio,bits_in,bits_lll,bits_out,convert_ms\n";

    std::vector<TrialRow> rows;
    long norm_mismatches = 0;
    for (int dim : o.dims) {
        for (int t = 0; t < o.trials; ++t) {
            TrialRow row;
            row.dim = dim;
            row.trial = t;
            row.seed = splitmix64(g.seed ^ splitmix64(((uint64_t)dim << 32) | (uint64_t)t));
            Rng rng(row.seed);
            IntMat B = random_basis(dim, o.entry_bound, rng);
            row.bits_in = max_entry_bits(B);
            IntMat L = lll_reduce(B);
            row.bits_lll = max_entry_bits(L);

            ConvertConfig cfg;
            cfg.sampling = make_sampling(o.sampling, 0.0, g.precision, 10000);
            cfg.guard_bits = g.guard_bits;
            auto t0 = Clock::now();
            try {
                IntMat out = convert_to_obtuse(L, cfg);
                row.convert_ms = elapsed_ms(t0);
                row.bits_out = max_entry_bits(out);
                EnumerationBound bound = default_bound(out);
                auto full = enumerate(out, bound, EnumMode::Full, true);
                auto restr = enumerate(out, bound, EnumMode::SignRestricted, true);
                if (full && restr) {
                    row.norm_full = full->norm_sq;
                    row.norm_signed = restr->norm_sq;
                    row.nodes_full = full->nodes_visited;
                    row.nodes_signed = restr->nodes_visited;
                    row.ok = full->norm_sq == restr->norm_sq && is_obtuse(out) &&
                             same_lattice(out, B);
                    if (full->norm_sq != restr->norm_sq) ++norm_mismatches;
                }
            } catch (const EntryOverflowGuard&) {
                row.convert_ms = elapsed_ms(t0);
                row.ok = false;
            }

            csv << row.dim << "," << row.trial << "," << row.seed << "," << (row.ok ? 1 : 0)
                << ",";
            if (row.ok) {
                csv << row.norm_full.get_str() << "," << row.norm_signed.get_str() << ","
                    << row.nodes_full << "," << row.nodes_signed << ","
                    << dbl_str((double)row.nodes_signed /
                               (double)std::max<unsigned long long>(row.nodes_full, 1))
                    << "," << row.bits_in << "," << row.bits_lll << "," << row.bits_out;
            } else {
                csv << ",,,,," << row.bits_in << "," << row.bits_lll << ",";
            }
            csv << "," << row.convert_ms << "\n";
            rows.push_back(row);
        }
    }

    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw std::runtime_error("cannot open file for writing: " + o.out);
        f << csv.str();
    } else {
        std::cout << csv.str();
    }

    for (int dim : o.dims) {
        std::vector<double> nf, ns, ratio, growth;
        int ok = 0, total = 0;
        for (const auto& r : rows) {
            if (r.dim != dim) continue;
            ++total;
            if (!r.ok) continue;
            ++ok;
            nf.push_back((double)r.nodes_full);
            ns.push_back((double)r.nodes_signed);
            ratio.push_back((double)r.nodes_signed /
                            (double)std::max<unsigned long long>(r.nodes_full, 1));
            growth.push_back((double)r.bits_out - (double)r.bits_lll);
        }
        std::cout << "dim " << dim << ": trials=" << total << " ok=" << ok
                  << " mean_nodes_full=" << dbl_str(mean_of(nf))
                  << " median_nodes_full=" << dbl_str(median_of(nf))
                  << " mean_nodes_signed=" << dbl_str(mean_of(ns))
                  << " median_nodes_signed=" << dbl_str(median_of(ns))
                  << " mean_ratio=" << dbl_str(mean_of(ratio))
                  << " mean_bit_growth=" << dbl_str(mean_of(growth)) << "\n";
    }
    return norm_mismatches == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oblat: obtuse-basis lattice toolkit (convert, enumerate, verify)"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--precision", g.precision, "floating-point working precision in bits")
        ->capture_default_str()
        ->check(CLI::Range(32u, 1u << 20));
    app.add_option("--seed", g.seed, "PRNG seed for seeded subcommands")->capture_default_str();
    app.add_option("--guard-bits", g.guard_bits, "abort threshold for entry bit-length")
        ->capture_default_str();

    ConvertOpts co;
    auto* conv = app.add_subcommand("convert", "transform a basis into an obtuse basis");
    conv->fallthrough();
    conv->add_option("input", co.input, "lattice file (fplll bracketed format)")->required();
    conv->add_option("--sampling", co.sampling, "ILP sampling method")
        ->check(CLI::IsMember({"step", "binary"}))
        ->capture_default_str();
    conv->add_option("--delta-override", co.delta_override,
                     "step size for the step sampler (default 1/epsilon)");
    conv->add_option("--lll-delta", co.lll_delta, "LLL parameter in (0.25, 1)")
        ->capture_default_str();
    conv->add_option("--probe-limit", co.probe_limit,
                     "step-sampler probe budget before geometric deepening")
        ->capture_default_str();
    conv->add_option("--out", co.out, "write the obtuse basis to this file");

    SvpOpts so;
    auto* svp = app.add_subcommand("svp", "shortest-vector enumeration");
    svp->fallthrough();
    svp->add_option("input", so.input, "lattice file")->required();
    svp->add_option("--mode", so.mode, "enumeration mode")
        ->check(CLI::IsMember({"full", "signed", "both"}))
        ->capture_default_str();
    svp->add_option("--radius-sq", so.radius_sq,
                    "squared search radius (integer; default Minkowski bound)");
    svp->add_flag("--no-shrink", so.no_shrink, "keep the radius fixed during the search");
    svp->add_flag("--verify-oracle", so.verify_oracle,
                  "cross-check against the brute-force oracle (small dimensions)");
    svp->add_option("--oracle-cap", so.oracle_cap, "oracle dimension cap")->capture_default_str();

    std::string check_input;
    auto* chk = app.add_subcommand("check", "obtuseness / semi-obtuseness / bounds report");
    chk->fallthrough();
    chk->add_option("input", check_input, "lattice file")->required();

    OracleOpts oo;
    auto* orc = app.add_subcommand("oracle", "brute-force shortest-vector certificate");
    orc->fallthrough();
    orc->add_option("input", oo.input, "lattice file")->required();
    orc->add_option("--cap", oo.cap, "dimension cap")->capture_default_str();
    orc->add_flag("--compare", oo.compare, "also run full enumeration and compare");

    BenchOpts bo;
    auto* ben = app.add_subcommand("bench", "seeded conversion + enumeration benchmark (CSV)");
    ben->fallthrough();
    ben->add_option("--dims", bo.dims, "dimensions to benchmark")->required()->expected(-1);
    ben->add_option("--trials", bo.trials, "trials per dimension")->capture_default_str();
    ben->add_option("--sampling", bo.sampling, "ILP sampling method")
        ->check(CLI::IsMember({"step", "binary"}))
        ->capture_default_str();
    ben->add_option("--entry-bound", bo.entry_bound, "random basis entries drawn from [-B, B]")
        ->capture_default_str();
    ben->add_option("--out", bo.out, "write CSV to this file (summary still on stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (conv->parsed()) return run_convert(g, co);
        if (svp->parsed()) return run_svp(g, so);
        if (chk->parsed()) return run_check(g, check_input);
        if (orc->parsed()) return run_oracle(g, oo);
        if (ben->parsed()) return run_bench(g, bo);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotObtuse& e) {
        std::cerr << "error: NotObtuse: " << e.what() << "\n";
        return 1;
    } catch (const EntryOverflowGuard& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const OracleCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
