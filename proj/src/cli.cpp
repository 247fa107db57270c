#include "rcm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rcm/extremal.hpp"
#include "rcm/finder.hpp"
#include "rcm/oracle.hpp"

namespace rcm::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitParams = 2;
constexpr int kExitViolation = 3;
constexpr int kExitRejected = 4;
constexpr int kExitNo = 5;
constexpr int kExitBudget = 6;

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream out;
    out << "0x" << std::hex << v;
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct InstanceSpec {
    std::string family;
    std::string detail;
    std::uint64_t seed = 0;
};

// The stress corpus at the theorem bound: seeded random colourings with the
// red probability cycling {1/10, 1/2, 9/10}, or the extremal colouring plus
// one universal vertex with seeded colours and a cycling number of flips.
Colouring make_stress_instance(const std::string& family, int r, long long n,
                               std::uint64_t instance_seed, long long index,
                               InstanceSpec& spec) {
    long long bound = connected_matching_bound(r, n);
    spec.family = family;
    spec.seed = instance_seed;
    if (family == "random") {
        static const Rational kProbabilities[] = {{1, 10}, {1, 2}, {9, 10}};
        Rational p = kProbabilities[index % 3];
        spec.detail = "p=" + p.to_string();
        return random_colouring(static_cast<int>(bound), p, instance_seed);
    }
    static const long long kFlips[] = {1, 10, 100};
    long long flips = kFlips[index % 3];
    spec.detail = "flips=" + std::to_string(flips);
    Colouring base = burr_colouring(r, n);
    int total = base.vertex_count() + 1;
    ColouringBuilder b(total);
    for (int u = 0; u < base.vertex_count(); ++u)
        for (int v = u + 1; v < base.vertex_count(); ++v)
            if (base.colour_of(u, v) == Colour::red) b.set_colour(u, v, Colour::red);
    SplitMix64 rng(instance_seed);
    for (int u = 0; u < total - 1; ++u)
        if (rng.next() >> 63) b.set_colour(u, total - 1, Colour::red);
    Colouring extended = b.build();
    return perturb(extended, flips, rng.next());
}

int cmd_gen(bool burr_kind, int r, long long n, int vertices,
            const std::string& probability, std::uint64_t seed, bool seed_given,
            const std::string& out_path, std::ostream& out, std::ostream& err) {
    try {
        Colouring g = [&] {
            if (burr_kind) return burr_colouring(r, n);
            if (!seed_given) throw std::invalid_argument("gen random requires --seed");
            return random_colouring(vertices, Rational::parse(probability), seed);
        }();
        std::string text = g.serialize();
        write_file(out_path, text);
        out << "command=gen\n";
        if (burr_kind) {
            BurrLayout layout = burr_layout(r, n);
            out << "kind=burr\nr=" << r << "\nn=" << n << "\nvertices=" << layout.vertex_count
                << "\npart_sizes=";
            for (std::size_t i = 0; i < layout.parts.size(); ++i)
                out << (i ? "," : "") << (layout.parts[i].second - layout.parts[i].first);
            out << "\ny_size=" << (layout.y.second - layout.y.first) << '\n';
        } else {
            out << "kind=random\nvertices=" << vertices << "\np=" << Rational::parse(probability).to_string()
                << "\nseed=" << seed << '\n';
        }
        out << "digest=" << hex64(fnv1a64(text)) << "\nout=" << out_path << '\n';
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << "gen: " << e.what() << '\n';
        return kExitParams;
    } catch (const std::ios_base::failure& e) {
        err << "gen: " << e.what() << '\n';
        return kExitIo;
    }
}

int cmd_find(const std::string& in_path, int r, long long n, long long ramsey_bound,
             const std::string& cert_path, const std::string& report_path, std::ostream& out,
             std::ostream& err) {
    std::string text;
    Colouring g = Colouring::from_red_pairs(1, {});
    try {
        text = read_file(in_path);
        g = Colouring::parse(text);
    } catch (const std::ios_base::failure& e) {
        err << "find: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "find: " << e.what() << '\n';
        return kExitIo;
    }

    Params params;
    params.r = r;
    params.n = n;
    params.vertex_count = g.vertex_count();
    if (ramsey_bound > 0) params.ramsey_bound_override = ramsey_bound;
    if (auto regime = theorem_regime(params); !regime.ok) {
        err << "find: precondition failed: " << regime.reason << '\n';
        return kExitParams;
    }

    auto start = std::chrono::steady_clock::now();
    FindOutcome outcome = find_connected_clique_matching(g, params);
    double ms = elapsed_ms(start);

    out << "command=find\nr=" << r << "\nn=" << n << "\ninput_digest=" << hex64(fnv1a64(text))
        << "\nswapped=" << (outcome.report.swapped ? 1 : 0)
        << "\noutcome=" << outcome.report.outcome
        << "\naugmentations=" << outcome.report.trace.size() << '\n';
    err << "time_ms=" << ms << '\n';

    if (!report_path.empty()) {
        try {
            write_file(report_path, outcome.report.to_key_value_text());
        } catch (const std::ios_base::failure& e) {
            err << "find: " << e.what() << '\n';
            return kExitIo;
        }
    }

    if (const auto* violation = std::get_if<StructureViolation>(&outcome.result)) {
        err << "structure violation at " << violation->stage << ": " << violation->detail
            << '\n';
        err << "evidence=";
        for (std::size_t i = 0; i < violation->evidence.size(); ++i)
            err << (i ? "," : "") << violation->evidence[i];
        err << '\n';
        return kExitViolation;
    }
    const auto& cert = std::get<Certificate>(outcome.result);
    out << "colour=" << colour_char(cert.colour) << '\n';
    if (!cert_path.empty()) {
        try {
            write_file(cert_path, cert.serialize());
        } catch (const std::ios_base::failure& e) {
            err << "find: " << e.what() << '\n';
            return kExitIo;
        }
        out << "cert=" << cert_path << '\n';
    }
    return kExitOk;
}

int cmd_verify(const std::string& in_path, const std::string& cert_path, int r, long long n,
               std::ostream& out, std::ostream& err) {
    try {
        Colouring g = Colouring::parse(read_file(in_path));
        Certificate cert = Certificate::parse(read_file(cert_path));
        VerifyResult result = verify_certificate(g, cert, r, n);
        out << "command=verify\nresult=" << (result.ok ? "ok" : "rejected") << '\n';
        if (!result.ok) {
            err << "certificate rejected: " << result.reason;
            if (!result.evidence.empty()) {
                err << " [";
                for (std::size_t i = 0; i < result.evidence.size(); ++i)
                    err << (i ? "," : "") << result.evidence[i];
                err << ']';
            }
            err << '\n';
            return kExitRejected;
        }
        return kExitOk;
    } catch (const std::ios_base::failure& e) {
        err << "verify: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "verify: " << e.what() << '\n';
        return kExitIo;
    }
}

int cmd_decide(const std::string& in_path, int r, long long n, const std::string& mode,
               const std::string& witness_path, long long budget, std::ostream& out,
               std::ostream& err) {
    Colouring g = Colouring::from_red_pairs(1, {});
    std::string text;
    try {
        text = read_file(in_path);
        g = Colouring::parse(text);
    } catch (const std::ios_base::failure& e) {
        err << "decide: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "decide: " << e.what() << '\n';
        return kExitIo;
    }
    DecisionMode search_mode =
        mode == "unconnected" ? DecisionMode::unconnected : DecisionMode::connected;
    try {
        SearchBudget meter(budget);
        DecisionResult result = decide(g, r, n, search_mode, &meter);
        out << "command=decide\nr=" << r << "\nn=" << n << "\nmode=" << mode
            << "\ninput_digest=" << hex64(fnv1a64(text))
            << "\nanswer=" << (result.yes ? "yes" : "no") << '\n';
        if (result.yes && !witness_path.empty()) {
            write_file(witness_path, result.witness->serialize());
            out << "witness=" << witness_path << '\n';
        }
        return result.yes ? kExitOk : kExitNo;
    } catch (const BudgetExceeded&) {
        err << "decide: budget exceeded\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        err << "decide: " << e.what() << '\n';
        return kExitParams;
    } catch (const std::ios_base::failure& e) {
        err << "decide: " << e.what() << '\n';
        return kExitIo;
    }
}

int cmd_ramsey(int r, long long n, int m_max, long long budget,
               const std::string& witness_path, std::ostream& out, std::ostream& err) {
    try {
        RamseyResult result = ramsey_connected_exact(r, n, m_max, budget);
        out << "command=ramsey\nr=" << r << "\nn=" << n << "\nm_max=" << m_max << '\n';
        if (!result.known) {
            out << "value=unknown\n";
            err << "ramsey: budget or m_max insufficient\n";
            return kExitBudget;
        }
        out << "value=" << result.value << "\ndecide_calls=" << result.decide_calls << '\n';
        if (!witness_path.empty() && result.failing_witness) {
            write_file(witness_path, result.failing_witness->serialize());
            out << "failing_witness=" << witness_path << '\n';
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << "ramsey: " << e.what() << '\n';
        return kExitParams;
    } catch (const std::ios_base::failure& e) {
        err << "ramsey: " << e.what() << '\n';
        return kExitIo;
    }
}

int cmd_stress(int r, long long n, long long count, std::uint64_t seed,
               const std::string& family, std::ostream& out, std::ostream& err) {
    if (family != "random" && family != "perturbed-burr") {
        err << "stress: unknown family " << family << '\n';
        return kExitParams;
    }
    Params params;
    params.r = r;
    params.n = n;
    params.vertex_count = connected_matching_bound(r, n);
    if (auto regime = theorem_regime(params); !regime.ok) {
        err << "stress: " << regime.reason << '\n';
        return kExitParams;
    }

    SplitMix64 seeder(seed);
    std::vector<std::uint64_t> instance_seeds;
    for (long long i = 0; i < count; ++i) instance_seeds.push_back(seeder.next());

    std::vector<double> times;
    std::map<std::size_t, long long> augmentation_histogram;
    bool all_verified = true;
    out << "command=stress\nfamily=" << family << "\nr=" << r << "\nn=" << n
        << "\ncount=" << count << "\nseed=" << seed << '\n';
    for (long long i = 0; i < count; ++i) {
        InstanceSpec spec;
        Colouring g = make_stress_instance(family, r, n, instance_seeds[static_cast<std::size_t>(i)],
                                           i, spec);
        std::string text = g.serialize();
        auto start = std::chrono::steady_clock::now();
        FindOutcome outcome = find_connected_clique_matching(g, params);
        double ms = elapsed_ms(start);
        times.push_back(ms);
        err << "run=" << i << " time_ms=" << ms << '\n';

        out << "run=" << i << " " << spec.detail << " seed=" << spec.seed
            << " digest=" << hex64(fnv1a64(text)) << " outcome=" << outcome.report.outcome
            << " augmentations=" << outcome.report.trace.size();
        if (const auto* violation = std::get_if<StructureViolation>(&outcome.result)) {
            out << " verify=violation\n";
            err << "structure violation at " << violation->stage << ": " << violation->detail
                << '\n';
            err << outcome.report.to_key_value_text();
            return kExitViolation;
        }
        ++augmentation_histogram[outcome.report.trace.size()];
        // progress bound: every augmentation grows the packing strictly
        for (const auto& event : outcome.report.trace)
            if (event.packing_after <= event.packing_before) {
                out << " verify=progress-failure\n";
                return kExitViolation;
            }
        const auto& cert = std::get<Certificate>(outcome.result);
        VerifyResult verdict = verify_certificate(g, cert, r, n);
        out << " verify=" << (verdict.ok ? "ok" : "rejected") << '\n';
        if (!verdict.ok) {
            err << "certificate rejected: " << verdict.reason << '\n';
            all_verified = false;
        }
    }
    if (count > 0) {
        std::vector<double> sorted_times = times;
        std::sort(sorted_times.begin(), sorted_times.end());
        double median = sorted_times[sorted_times.size() / 2];
        double max = sorted_times.back();
        out << "median_ms=" << median << "\nmax_ms=" << max << '\n';
        out << "augmentation_histogram=";
        bool first = true;
        for (const auto& [augmentations, freq] : augmentation_histogram) {
            out << (first ? "" : ",") << augmentations << ':' << freq;
            first = false;
        }
        out << '\n';
    }
    return all_verified ? kExitOk : kExitRejected;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"connected clique matching toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a colouring");
    gen->require_subcommand(1);
    int gen_r = 0;
    long long gen_n = 0;
    int gen_vertices = 0;
    std::string gen_p = "1/2";
    std::uint64_t gen_seed = 0;
    std::string gen_out = "colouring.rcm";
    auto* gen_burr = gen->add_subcommand("burr", "extremal lower-bound colouring");
    gen_burr->add_option("--r", gen_r)->required();
    gen_burr->add_option("--n", gen_n)->required();
    gen_burr->add_option("--out", gen_out);
    auto* gen_random = gen->add_subcommand("random", "seeded random colouring");
    gen_random->add_option("--N", gen_vertices)->required();
    gen_random->add_option("--p", gen_p);
    auto* seed_opt = gen_random->add_option("--seed", gen_seed);
    gen_random->add_option("--out", gen_out);

    // find
    auto* find = app.add_subcommand("find", "find a connected clique matching");
    std::string find_in, find_cert = "out.rcmcert", find_report;
    int find_r = 0;
    long long find_n = 0, find_bound = 0;
    find->add_option("--in", find_in)->required();
    find->add_option("--r", find_r)->required();
    find->add_option("--n", find_n)->required();
    find->add_option("--cert", find_cert);
    find->add_option("--report", find_report);
    find->add_option("--ramsey-bound", find_bound);

    // verify
    auto* verify = app.add_subcommand("verify", "verify a certificate");
    std::string verify_in, verify_cert;
    int verify_r = 0;
    long long verify_n = 0;
    verify->add_option("--in", verify_in)->required();
    verify->add_option("--cert", verify_cert)->required();
    verify->add_option("--r", verify_r)->required();
    verify->add_option("--n", verify_n)->required();

    // decide
    auto* decide_cmd = app.add_subcommand("decide", "exact decision at desk scale");
    std::string decide_in, decide_mode = "connected", decide_witness;
    int decide_r = 0;
    long long decide_n = 0, decide_budget = 1ll << 30;
    decide_cmd->add_option("--in", decide_in)->required();
    decide_cmd->add_option("--r", decide_r)->required();
    decide_cmd->add_option("--n", decide_n)->required();
    decide_cmd->add_option("--mode", decide_mode)
        ->check(CLI::IsMember({"connected", "unconnected"}));
    decide_cmd->add_option("--witness", decide_witness);
    decide_cmd->add_option("--budget", decide_budget);

    // ramsey
    auto* ramsey = app.add_subcommand("ramsey", "exhaustive tiny Ramsey value");
    int ramsey_r = 0, ramsey_m_max = 0;
    long long ramsey_n = 0, ramsey_budget = 1ll << 30;
    std::string ramsey_witness;
    ramsey->add_option("--r", ramsey_r)->required();
    ramsey->add_option("--n", ramsey_n)->required();
    ramsey->add_option("--m-max", ramsey_m_max)->required();
    ramsey->add_option("--budget", ramsey_budget);
    ramsey->add_option("--witness-out", ramsey_witness);

    // stress
    auto* stress = app.add_subcommand("stress", "find+verify corpora at the theorem bound");
    int stress_r = 0;
    long long stress_n = 0, stress_count = 0;
    std::uint64_t stress_seed = 0;
    std::string stress_family = "random";
    stress->add_option("--r", stress_r)->required();
    stress->add_option("--n", stress_n)->required();
    stress->add_option("--count", stress_count)->required();
    stress->add_option("--seed", stress_seed)->required();
    stress->add_option("--family", stress_family);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << '\n';
        return kExitParams;
    }

    if (gen->parsed())
        return cmd_gen(gen_burr->parsed(), gen_r, gen_n, gen_vertices, gen_p, gen_seed,
                       seed_opt->count() > 0, gen_out, out, err);
    if (find->parsed())
        return cmd_find(find_in, find_r, find_n, find_bound, find_cert, find_report, out, err);
    if (verify->parsed())
        return cmd_verify(verify_in, verify_cert, verify_r, verify_n, out, err);
    if (decide_cmd->parsed())
        return cmd_decide(decide_in, decide_r, decide_n, decide_mode, decide_witness,
                          decide_budget, out, err);
    if (ramsey->parsed())
        return cmd_ramsey(ramsey_r, ramsey_n, ramsey_m_max, ramsey_budget, ramsey_witness, out,
                          err);
    if (stress->parsed())
        return cmd_stress(stress_r, stress_n, stress_count, stress_seed, stress_family, out,
                          err);
    err << "no command\n";
    return kExitParams;
}

}  // namespace rcm::cli
