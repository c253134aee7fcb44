// Command-line front end: build / verify / code / decode / shadow.
//
// Exit codes: 0 success, 1 malformed input, 2 infeasible configuration
// (non-hyperbolic matrix, bad budget), 3 verification failure.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "anosov/io.hpp"
#include "anosov/partition.hpp"
#include "anosov/symbolic.hpp"

using namespace anosov;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitVerifyFail = 3;

std::array<std::int64_t, 4> parse_matrix(const std::string& s) {
    std::array<std::int64_t, 4> m{};
    std::istringstream is(s);
    std::string tok;
    for (int i = 0; i < 4; ++i) {
        if (!std::getline(is, tok, ',')) throw Error("expected --matrix a,b,c,d");
        m[static_cast<size_t>(i)] = std::stoll(tok);
    }
    if (std::getline(is, tok, ',')) throw Error("expected exactly four matrix entries");
    return m;
}

TorusPoint parse_point(const std::string& s) {
    const auto c = s.find(',');
    if (c == std::string::npos) throw Error("expected --point x,y");
    return TorusPoint(std::stod(s.substr(0, c)), std::stod(s.substr(c + 1)));
}

ItineraryWindow parse_word(const std::string& s) {
    ItineraryWindow w;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) w.word.push_back(static_cast<size_t>(std::stoull(tok)));
    if (w.word.empty() || w.word.size() % 2 == 0)
        throw Error("expected an odd number of comma-separated letters");
    w.window = static_cast<long long>(w.word.size() / 2);
    return w;
}

std::string word_to_string(const ItineraryWindow& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.word.size(); ++i) {
        if (i) os << ',';
        os << w.word[i];
    }
    return os.str();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct BuildArgs {
    std::string matrix = "2,1,1,1";
    double beta = 0.1;
    long long samples = 100;
    std::uint64_t seed = 42;
    std::string out = ".";
    bool svg = false;
};

int cmd_build(const BuildArgs& args) {
    const ToralAutomorphism f = make_automorphism(parse_matrix(args.matrix));
    if (!(args.beta > 0.0)) throw BudgetInfeasible("--beta must be positive");

    // request half the target so the final diameter is strictly below beta;
    // clamp to the unique-lift cap (a finer partition always satisfies the
    // same diameter bound)
    const double cap = max_pipeline_beta(f);
    const double beta_work = std::min(args.beta / 2.0, cap);
    ConstantsBudget budget;
    std::string budget_mode;
    try {
        budget = make_budget(f, beta_work);
        budget_mode = "strict-chain";
    } catch (const BudgetInfeasible&) {
        budget = geometric_budget(f, beta_work);
        budget_mode = "geometric";
    }

    const Cover cover = build_cover(f, budget);
    const MarkovPartition partition = build_partition(f, cover);
    if (!(partition.diameter < args.beta))
        throw Error("internal: partition diameter not below requested beta");

    const TransitionMatrix A = transition_matrix(f, partition);
    const MarkovReport rep = verify_markov(f, partition, args.samples, args.seed);
    const bool irr = is_irreducible(A);
    const double perron = irr ? perron_eigenvalue(A) : 0.0;

    long long edges = 0;
    for (const auto e : A.entries) edges += e;

    std::filesystem::create_directories(args.out);
    const auto path = [&](const char* name) {
        return (std::filesystem::path(args.out) / name).string();
    };
    write_file(path("partition.json"), partition_to_json(f, budget, partition));
    write_file(path("matrix.csv"), matrix_to_csv(A));
    if (args.svg) write_file(path("partition.svg"), partition_to_svg(f, partition));

    std::ostringstream r;
    r << "matrix: " << args.matrix << "\n";
    r << "det: " << f.det << " trace: " << f.trace << " disc: " << f.disc << "\n";
    r << "lambda_u: " << fmt(f.lambda_u) << " lambda_s: " << fmt(f.lambda_s) << "\n";
    r << "beta_requested: " << fmt(args.beta) << " beta_working: " << fmt(beta_work) << "\n";
    r << "budget_mode: " << budget_mode << "\n";
    r << "budget: rho=" << fmt(budget.rho) << " epsilon=" << fmt(budget.epsilon)
      << " delta=" << fmt(budget.delta) << " beta=" << fmt(budget.beta)
      << " alpha=" << fmt(budget.alpha) << " gamma=" << fmt(budget.gamma) << "\n";
    r << "cells: " << partition.cells.size() << "\n";
    r << "max_diameter: " << fmt(partition.diameter) << "\n";
    r << "degenerate_dropped: " << partition.degenerate_dropped << "\n";
    r << "seed: " << args.seed << " samples_per_pair: " << args.samples << "\n";
    r << "admissible_pairs: " << rep.admissible_pairs << "\n";
    r << "pair_violations: " << rep.pair_violations << "\n";
    r << "samples_checked: " << rep.samples_checked
      << " sample_violations: " << rep.sample_violations << "\n";
    r << "stable_boundary_invariant: " << (rep.stable_boundary_invariant ? "yes" : "no") << "\n";
    r << "unstable_boundary_invariant: " << (rep.unstable_boundary_invariant ? "yes" : "no")
      << "\n";
    r << "cylinder_checks: " << rep.cylinder_checks
      << " cylinder_violations: " << rep.cylinder_violations << "\n";
    r << "transition_edges: " << edges << "\n";
    r << "irreducible: " << (irr ? "yes" : "no") << "\n";
    r << "perron: " << fmt(perron) << " lambda_u_gap: " << fmt(std::fabs(perron - std::fabs(f.lambda_u)))
      << "\n";
    r << "verification: " << (rep.clean() ? "PASS" : "FAIL") << "\n";
    write_file(path("report.txt"), r.str());
    std::cout << r.str();
    return rep.clean() ? kExitOk : kExitVerifyFail;
}

int cmd_verify(const std::string& in, long long samples, std::uint64_t seed) {
    const PartitionFile pf = partition_from_json(read_file(in));
    const ToralAutomorphism f = make_automorphism(pf.matrix);
    MarkovPartition partition = pf.partition;
    partition.diameter = 0;
    for (const auto& c : partition.cells)
        partition.diameter = std::max(partition.diameter, diameter(f, c));
    validate_partition(f, partition);
    const MarkovReport rep = verify_markov(f, partition, samples, seed);
    std::cout << "cells: " << partition.cells.size() << "\n"
              << "admissible_pairs: " << rep.admissible_pairs << "\n"
              << "pair_violations: " << rep.pair_violations << "\n"
              << "samples_checked: " << rep.samples_checked
              << " sample_violations: " << rep.sample_violations << "\n"
              << "stable_boundary_invariant: " << (rep.stable_boundary_invariant ? "yes" : "no")
              << "\n"
              << "unstable_boundary_invariant: "
              << (rep.unstable_boundary_invariant ? "yes" : "no") << "\n"
              << "cylinder_checks: " << rep.cylinder_checks
              << " cylinder_violations: " << rep.cylinder_violations << "\n"
              << "verification: " << (rep.clean() ? "PASS" : "FAIL") << "\n";
    return rep.clean() ? kExitOk : kExitVerifyFail;
}

int cmd_code(const std::string& in, const std::string& point, long long depth, bool all_codes) {
    const PartitionFile pf = partition_from_json(read_file(in));
    const ToralAutomorphism f = make_automorphism(pf.matrix);
    const TorusPoint x = parse_point(point);
    const EncodeOutcome enc = encode(f, pf.partition, x, depth);
    if (!enc.boundary_hit) {
        std::cout << "word: " << word_to_string(enc.word) << "\n";
        return kExitOk;
    }
    std::cout << "BoundaryHit(" << enc.hit_index << ")\n";
    if (all_codes) {
        const auto words = encode_all(f, pf.partition, x, depth);
        for (const auto& w : words) std::cout << "word: " << word_to_string(w) << "\n";
    }
    return kExitOk;
}

int cmd_decode(const std::string& in, const std::string& word_arg,
               const std::string& matrix_file) {
    const PartitionFile pf = partition_from_json(read_file(in));
    const ToralAutomorphism f = make_automorphism(pf.matrix);
    const ItineraryWindow word = parse_word(word_arg);
    TransitionMatrix A;
    if (!matrix_file.empty())
        A = matrix_from_csv(read_file(matrix_file));
    else
        A = transition_matrix(f, pf.partition);
    if (!is_admissible(A, word)) throw Error("word is not admissible for this partition");
    const auto [p, radius] = pi_point(f, pf.partition, A, word);
    std::printf("point: %.17g %.17g\nradius: %.6g\n", p.x(), p.y(), radius);
    return kExitOk;
}

int cmd_shadow(const std::string& input, const std::string& matrix, double beta) {
    const ToralAutomorphism f = make_automorphism(parse_matrix(matrix));
    const auto points = pseudo_orbit_from_text(read_file(input));
    const PseudoOrbit q = make_pseudo_orbit(f, points);
    const ShadowResult res = shadow(f, q);
    const double check_beta = beta > 0 ? beta : res.beta_certified;
    const bool ok = verify_shadow(f, q, res.point, check_beta);
    std::printf("window: %lld\ndelta: %.6g\npoint: %.17g %.17g\nbeta_certified: %.6g\n"
                "tail_bound: %.6g\nverified: %s\n",
                q.window, q.delta, res.point.x(), res.point.y(), res.beta_certified,
                res.tail_bound, ok ? "true" : "false");
    return ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov partitions and symbolic dynamics for hyperbolic toral automorphisms"};
    app.require_subcommand(1);

    BuildArgs bargs;
    auto* build = app.add_subcommand("build", "build and verify a Markov partition");
    build->add_option("--matrix", bargs.matrix, "integer matrix a,b,c,d (row-major)");
    build->add_option("--beta", bargs.beta, "target partition diameter bound");
    build->add_option("--samples", bargs.samples, "verification samples per admissible pair");
    build->add_option("--seed", bargs.seed, "RNG seed for sampling");
    build->add_option("--out", bargs.out, "output directory");
    build->add_flag("--svg", bargs.svg, "also write partition.svg");

    std::string vin = "partition.json";
    long long vsamples = 100;
    std::uint64_t vseed = 42;
    auto* verify = app.add_subcommand("verify", "re-verify a stored partition");
    verify->add_option("--in", vin, "partition.json path");
    verify->add_option("--samples", vsamples, "samples per admissible pair");
    verify->add_option("--seed", vseed, "RNG seed");

    std::string cin_ = "partition.json", cpoint = "0,0";
    long long cdepth = 10;
    bool call_codes = false;
    auto* code = app.add_subcommand("code", "itinerary of a point");
    code->add_option("--in", cin_, "partition.json path");
    code->add_option("--point", cpoint, "torus point x,y");
    code->add_option("--depth", cdepth, "window half-width N");
    code->add_flag("--all-codes", call_codes, "list all closure codings on a boundary hit");

    std::string din = "partition.json", dword, dmatrix;
    auto* decode = app.add_subcommand("decode", "point of an admissible word");
    decode->add_option("--in", din, "partition.json path");
    decode->add_option("--word", dword, "comma-separated letters a_-N..a_N")->required();
    decode->add_option("--matrix-file", dmatrix, "transition matrix CSV for admissibility");

    std::string sinput, smatrix = "2,1,1,1";
    double sbeta = 0.0;
    auto* shadow_cmd = app.add_subcommand("shadow", "shadow a pseudo-orbit file");
    shadow_cmd->add_option("--input", sinput, "pseudo-orbit file, one 'x y' per line")
        ->required();
    shadow_cmd->add_option("--matrix", smatrix, "integer matrix a,b,c,d");
    shadow_cmd->add_option("--beta", sbeta, "verification tolerance (default: certified)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(bargs);
        if (verify->parsed()) return cmd_verify(vin, vsamples, vseed);
        if (code->parsed()) return cmd_code(cin_, cpoint, cdepth, call_codes);
        if (decode->parsed()) return cmd_decode(din, dword, dmatrix);
        if (shadow_cmd->parsed()) return cmd_shadow(sinput, smatrix, sbeta);
    } catch (const NotUnimodular& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const NotHyperbolic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const BudgetInfeasible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const DefectTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const WindowTooSmall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
