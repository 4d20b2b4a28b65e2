#include "polyrecon/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "polyrecon/bench.hpp"
#include "polyrecon/codes.hpp"
#include "polyrecon/oracle.hpp"
#include "polyrecon/poly.hpp"
#include "polyrecon/reconstruct.hpp"
#include "polyrecon/strings.hpp"

namespace polyrecon::cli {

namespace {

// Input problems that should exit with kBadInput.
struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw BadInput("cannot read " + path);
    return in;
}

CompositionMultiset load_multiset(const std::string& path) {
    auto in = open_in(path);
    try {
        return io::read_multiset(in);
    } catch (const InputError& e) {
        throw BadInput(path + ": " + e.what());
    }
}

BitString parse_string(const std::string& text) {
    try {
        return BitString::parse(text);
    } catch (const InputError& e) {
        throw BadInput(e.what());
    }
}

// Writes to --out when given, otherwise to `out`.
template <typename Emit>
void emit_to(const std::string& path, std::ostream& out, Emit&& emit) {
    if (path.empty()) {
        emit(out);
        return;
    }
    std::ofstream file(path);
    if (!file)
        throw BadInput("cannot write " + path);
    emit(file);
}

struct Config {
    std::string string;
    std::string in;
    std::string out;
    std::string family = "t";
    std::size_t n = 0;
    bool all = false;
    bool first = false;
    bool trace = false;
    std::string field_policy = "safe";
    std::uint64_t field_prime = 0;
    unsigned threads = 0;
    std::uint64_t seed = 1;
    std::vector<std::size_t> ladder{256, 512, 1024, 2048};
    std::size_t samples = 50;
    std::size_t warmup = 3;
};

ReconOptions recon_options(const Config& c) {
    ReconOptions opts;
    opts.field_policy = c.field_policy == "paper-min" ? FieldPolicy::kSmallest : FieldPolicy::kSafe;
    if (c.field_prime != 0)
        opts.field_prime = c.field_prime;
    opts.stop_at_first = c.first;
    opts.trace = c.trace;
    return opts;
}

int cmd_compose(const Config& c, std::ostream& out) {
    const auto m = compose(parse_string(c.string));
    emit_to(c.out, out, [&](std::ostream& os) { io::write_multiset(os, m); });
    return kOk;
}

int cmd_fpoly(const Config& c, std::ostream& out) {
    BiPoly f;
    if (!c.string.empty()) {
        f = f_of(parse_string(c.string));
    } else {
        const auto m = load_multiset(c.in);
        f = f_from_multiset(s_of(m), m.n());
    }
    emit_to(c.out, out, [&](std::ostream& os) { io::write_poly(os, f); });
    return kOk;
}

int cmd_reconstruct(const Config& c, std::ostream& out, std::ostream& err) {
    const auto m = load_multiset(c.in);
    const auto f = f_from_multiset(s_of(m), m.n());
    ReconReport report;
    try {
        report = reconstruct(f, recon_options(c));
    } catch (const InputError& e) {
        throw BadInput(c.in + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
    }
    if (c.trace) {
        for (const auto& t : report.trace) {
            err << t.step << ' ' << t.pair.low << ' ' << t.pair.high;
            if (t.pause)
                err << " pause";
            if (t.backtrack)
                err << " backtrack";
            err << '\n';
        }
    }
    emit_to(c.out, out, [&](std::ostream& os) {
        for (const auto& r : report.results)
            os << r.string << '\n';
    });
    return report.results.empty() ? kVerificationFailed : kOk;
}

int cmd_gen_code(const Config& c, std::ostream& out) {
    const auto family = codes::parse_family(c.family);
    if (!family)
        throw BadInput("unknown family " + c.family);
    codes::Codebook cb;
    try {
        cb = codes::generate(*family, c.n);
    } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
    }
    emit_to(c.out, out, [&](std::ostream& os) { codes::io::write_codebook(os, cb); });
    return kOk;
}

int cmd_verify_code(const Config& c, std::ostream& out) {
    std::optional<codes::Family> family;
    std::vector<codes::Word> words;
    if (!c.in.empty()) {
        auto in = open_in(c.in);
        try {
            words = codes::io::read_codebook(in, c.n);
        } catch (const InputError& e) {
            throw BadInput(c.in + ": " + e.what());
        }
    } else {
        family = codes::parse_family(c.family);
        if (!family)
            throw BadInput("unknown family " + c.family);
        try {
            words = codes::generate(*family, c.n).words;
        } catch (const std::invalid_argument& e) {
            throw BadInput(e.what());
        }
    }
    if (words.size() > 1) {
        // Generated codebooks are sorted; files may not be.
        std::sort(words.begin(), words.end());
    }
    const auto report = codes::verify_codebook(c.n, words, family, c.threads);

    bool pass = report.ok();
    std::ostringstream size_note;
    size_note << report.words << " words";
    if (family == codes::Family::kT) {
        const auto sr = codes::sr_count(c.n);
        const bool large = 40 * codes::BigInt(report.words) >= 41 * sr;
        pass = pass && large;
        size_note.str("");
        size_note << "|T|=" << report.words << (large ? " ≥ " : " < ") << "41/40·|S_R|";
    }

    out << (pass ? "PASS: " : "FAIL: ") << report.backtracks << " backtracks, " << size_note.str() << '\n';
    out << "distinct multisets: " << (report.distinct_multisets ? "yes" : "no") << " (" << report.distinct_method
        << ")\n";
    out << "pauses on decode paths: " << report.pauses << ", type-2 pauses: " << report.type2_pauses << '\n';
    for (const auto& v : report.violations)
        out << "violation: " << v << '\n';
    return pass ? kOk : kVerificationFailed;
}

int cmd_oracle(const Config& c, std::ostream& out) {
    CompositionMultiset m;
    if (!c.string.empty()) {
        const auto s = parse_string(c.string);
        if (c.n != 0 && s.size() != c.n)
            throw BadInput("--string has length " + std::to_string(s.size()) + ", --n says " +
                           std::to_string(c.n));
        m = compose(s);
    } else if (!c.in.empty()) {
        m = load_multiset(c.in);
        if (c.n != 0 && m.n() != c.n)
            throw BadInput(c.in + " describes n=" + std::to_string(m.n()));
    } else {
        throw BadInput("oracle needs --string or --in");
    }
    std::vector<BitString> members;
    try {
        members = oracle::oracle_reconstruct(m);
    } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
    } catch (const InputError& e) {
        throw BadInput(e.what());
    }
    for (const auto& t : members)
        out << t << '\n';
    return kOk;
}

int cmd_bench(const Config& c, std::ostream& out) {
    bench::BenchConfig cfg;
    cfg.ladder = c.ladder;
    cfg.samples = c.samples;
    cfg.warmup = c.warmup;
    cfg.seed = c.seed;
    cfg.options.field_policy = recon_options(c).field_policy;
    std::vector<bench::BenchRow> rows;
    try {
        rows = bench::run_bench(cfg);
    } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
    }
    emit_to(c.out, out, [&](std::ostream& os) { bench::write_csv(os, rows); });
    return kOk;
}

void add_field_flags(CLI::App* app, Config& c) {
    app->add_option("--field-policy", c.field_policy, "Prime selection when --field-prime is absent")
        ->check(CLI::IsMember({"paper-min", "safe"}));
    app->add_option("--field-prime", c.field_prime, "Explicit prime q > n");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Binary string reconstruction from composition multisets", "polyrecon"};
    app.require_subcommand(1);
    app.add_option("--seed", c.seed, "Seed for randomized inputs");

    auto* compose_cmd = app.add_subcommand("compose", "Print the composition multiset of a string");
    compose_cmd->add_option("--string", c.string, "Binary string")->required();
    compose_cmd->add_option("--out", c.out, "Output file");

    auto* fpoly_cmd = app.add_subcommand("fpoly", "Print F(x,y) for a string or a multiset file");
    auto* fpoly_string = fpoly_cmd->add_option("--string", c.string, "Binary string");
    auto* fpoly_in = fpoly_cmd->add_option("--in", c.in, "Multiset file");
    fpoly_string->excludes(fpoly_in);
    fpoly_cmd->add_option("--out", c.out, "Output file");

    auto* recon_cmd = app.add_subcommand("reconstruct", "Recover every string with the given multiset");
    recon_cmd->add_option("--in", c.in, "Multiset file")->required();
    auto* all_flag = recon_cmd->add_flag("--all", c.all, "Report every string (default)");
    recon_cmd->add_flag("--first", c.first, "Stop at the first string")->excludes(all_flag);
    recon_cmd->add_flag("--trace", c.trace, "Step log on stderr: j a_j a_{d-j} [pause] [backtrack]");
    recon_cmd->add_option("--out", c.out, "Output file");
    add_field_flags(recon_cmd, c);

    auto* gen_cmd = app.add_subcommand("gen-code", "Write a codebook, one word per line");
    gen_cmd->add_option("--family", c.family, "sr, p, q, r or t")->required();
    gen_cmd->add_option("--n", c.n, "Word length")->required();
    gen_cmd->add_option("--out", c.out, "Output file");

    auto* verify_cmd = app.add_subcommand("verify-code", "Check a codebook decodes without backtracking");
    auto* verify_in = verify_cmd->add_option("--in", c.in, "Codebook file");
    verify_cmd->add_option("--family", c.family, "Generate and check this family instead")->excludes(verify_in);
    verify_cmd->add_option("--n", c.n, "Word length")->required();
    verify_cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force equivalence class (small n)");
    oracle_cmd->add_option("--n", c.n, "String length");
    auto* oracle_string = oracle_cmd->add_option("--string", c.string, "Binary string");
    oracle_cmd->add_option("--in", c.in, "Multiset file")->excludes(oracle_string);

    auto* bench_cmd = app.add_subcommand("bench", "Time reconstruction over random P_n codewords");
    bench_cmd->add_option("--ladder", c.ladder, "Word lengths")->delimiter(',');
    bench_cmd->add_option("--samples", c.samples, "Timed samples per rung");
    bench_cmd->add_option("--warmup", c.warmup, "Untimed samples per rung");
    bench_cmd->add_option("--seed", c.seed, "Seed for the sampled codewords");
    bench_cmd->add_option("--out", c.out, "CSV file");
    add_field_flags(bench_cmd, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*compose_cmd)
            return cmd_compose(c, out);
        if (*fpoly_cmd) {
            if (c.string.empty() && c.in.empty())
                throw BadInput("fpoly needs --string or --in");
            return cmd_fpoly(c, out);
        }
        if (*recon_cmd)
            return cmd_reconstruct(c, out, err);
        if (*gen_cmd)
            return cmd_gen_code(c, out);
        if (*verify_cmd)
            return cmd_verify_code(c, out);
        if (*oracle_cmd)
            return cmd_oracle(c, out);
        if (*bench_cmd)
            return cmd_bench(c, out);
    } catch (const BadInput& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kBadInput;
}

}  // namespace polyrecon::cli
