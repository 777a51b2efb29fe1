// Command-line front end: generate and verify chains, check seed hypotheses,
// search for admissible seeds, and split polynomials over the quadratic
// extension. Output is deterministic for fixed flags and PRNG seed; timings
// are opt-in so runs stay byte-identical.
//
// Exit codes: 0 success, 1 hypothesis-check failure, 2 usage error,
// 3 internal invariant violation (refutation alarm).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "irrchain/irrchain.hpp"
#include "irrchain/jsonio.hpp"

namespace {

using namespace irrchain;
using nlohmann::json;

struct CommonOpts {
    std::string q;
    std::string kind = "general";
    std::string sigma;
    u64 t = 2;
    bool t_given = false;
    bool verify_given = false;
    std::string c;
    std::string seed;
    std::size_t iters = 1;
    std::string verify = "fast";
    std::size_t rabin_cap = 4096;
    std::string format;
    std::string output;
    u64 prng_seed = EnumOptions{}.prng_seed;
    bool timings = false;
    std::size_t limit = static_cast<std::size_t>(-1);
    std::size_t degree = 1;
    std::string poly;
};

std::string default_format(const CommonOpts& o) {
    if (!o.format.empty()) return o.format;
    if (const char* env = std::getenv("IRRCHAIN_FORMAT")) {
        std::string v = env;
        if (v == "json" || v == "text") return v;
    }
    return "text";
}

void write_out(const CommonOpts& o, const std::string& s) {
    if (o.output.empty()) {
        std::cout << s;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + o.output);
    f << s;
}

TransformSpec build_transform(const CommonOpts& o, const FieldPtr& F) {
    if ((o.kind == "cohen" || o.kind == "mcnay") && o.t_given && o.t != 2)
        throw ParseError("--t is fixed to 2 for kind " + o.kind, 0);
    if (o.kind == "cohen") return TransformSpec::cohen(F);
    if (o.kind == "mcnay") {
        if (o.c.empty()) throw ParseError("--c is required for kind mcnay", 0);
        return TransformSpec::mcnay(parse_element(F, o.c));
    }
    if (o.kind == "singer") {
        if (o.c.empty()) throw ParseError("--c is required for kind singer", 0);
        return TransformSpec::singer(parse_element(F, o.c), o.t);
    }
    if (o.kind == "general") {
        if (o.sigma.empty()) throw ParseError("--sigma is required for kind general", 0);
        return TransformSpec::general(parse_matrix(F, o.sigma), o.t);
    }
    throw ParseError("unknown kind: " + o.kind, 0);
}

Poly parse_seed_over(const CommonOpts& o, const FieldPtr& F) {
    if (o.seed.empty()) throw ParseError("--seed is required", 0);
    Poly g = parse_poly(o.seed);
    if (!g.field()->same(*F)) throw CtxMismatchError("seed field differs from --q");
    if (g.is_zero() || *g.degree() < 1 || !g.is_monic() || !is_irreducible(g))
        throw PreconditionViolatedError("seed must be a monic irreducible polynomial");
    return g;
}

VerifyLevel parse_verify(const std::string& s) {
    if (s == "none") return VerifyLevel::none;
    if (s == "fast") return VerifyLevel::fast;
    if (s == "full") return VerifyLevel::full;
    throw ParseError("verify level must be none|fast|full", 0);
}

std::string invariance_text(const IterateRecord& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.invariance.size(); ++i) {
        const auto& e = r.invariance[i];
        if (i) s += " ";
        s += std::to_string(e.zeta_order);
        s += e.primitive ? "*" : "";
        s += e.pass ? ":pass" : ":fail";
    }
    s += "]";
    return s;
}

json meta_json(const CommonOpts& o, const char* command, const TransformSpec* spec) {
    json j = {{"command", command}, {"prng_seed", o.prng_seed}};
    if (spec) j["transform"] = to_json(*spec);
    return j;
}

std::string header_text(const CommonOpts& o, const char* command, const TransformSpec* spec) {
    std::ostringstream out;
    out << "# irrchain " << command << "\n";
    if (spec) {
        out << "# q: " << to_string_u128(spec->base_field()->order()) << "\n";
        out << "# kind: " << to_string(spec->kind()) << "\n";
        out << "# t: " << spec->t() << "\n";
        out << "# sigma: " << mat_to_string(spec->sigma()) << "\n";
        if (spec->c()) out << "# c: " << element_to_string(*spec->c()) << "\n";
    }
    out << "# prng-seed: " << o.prng_seed << "\n";
    return out.str();
}

int run_gen(const CommonOpts& o, bool verify_command) {
    FieldPtr F = parse_field(o.q);
    TransformSpec spec = build_transform(o, F);
    Poly g = parse_seed_over(o, F);
    ChainSpec cs{g, spec, o.iters,
                 verify_command && !o.verify_given ? VerifyLevel::full : parse_verify(o.verify),
                 o.rabin_cap};
    ChainResult chain = iterate_chain(cs);
    ChainReport report = verify_chain(chain, cs);

    bool seed_admissible = false;
    try {
        seed_admissible = check_for(spec, g).pass();
    } catch (const PoleAtSeedError&) {
        seed_admissible = false;
    }
    const bool refuted = report.verified && seed_admissible && !report.pass();

    if (default_format(o) == "json") {
        json j = meta_json(o, verify_command ? "verify" : "gen", &spec);
        j["seed"] = poly_to_string(g);
        j["verify"] = to_string(cs.verify_level);
        json chain_j = json::array();
        for (const Poly& p : chain.iterates) chain_j.push_back(poly_to_string(p));
        j["chain"] = chain_j;
        j["raw_first"] = poly_to_string(chain.raw_first);
        j["report"] = to_json(report, o.timings);
        write_out(o, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << header_text(o, verify_command ? "verify" : "gen", &spec);
        out << "# seed: " << poly_to_string(g) << "\n";
        out << "# verify: " << to_string(cs.verify_level) << "\n";
        for (std::size_t i = 0; i < chain.iterates.size(); ++i)
            out << "g" << (i + 1) << ": " << poly_to_string(chain.iterates[i]) << "\n";
        out << "raw_g1: " << poly_to_string(chain.raw_first) << "\n";
        if (report.verified) {
            for (const IterateRecord& r : report.iterates) {
                out << "iterate m=" << r.m << " degree=" << r.degree
                    << " expected=" << to_string_u128(r.expected_degree)
                    << " irreducible=" << to_string(r.irreducible)
                    << " invariance=" << invariance_text(r);
                if (r.structural_identity)
                    out << " structural=" << (*r.structural_identity ? "pass" : "fail");
                if (r.self_reciprocal)
                    out << " self_reciprocal=" << (*r.self_reciprocal ? "true" : "false");
                if (o.timings) out << " wall_ms=" << r.wall_ms;
                out << "\n";
            }
            out << "result: " << (report.pass() ? "PASS" : "FAIL") << "\n";
        }
        write_out(o, out.str());
    }

    if (refuted) {
        std::cerr << "refutation alarm: admissible seed " << poly_to_string(g)
                  << " produced a failing chain report\n";
        return 3;
    }
    return 0;
}

int run_check(const CommonOpts& o) {
    FieldPtr F = parse_field(o.q);
    TransformSpec spec = build_transform(o, F);
    Poly g = parse_seed_over(o, F);
    Verdict v;
    try {
        v = check_for(spec, g);
    } catch (const PoleAtSeedError& e) {
        v.theorem = "seed-pole";
        v.add("seed-avoids-pole", false, e.what());
    }
    if (default_format(o) == "json") {
        json j = meta_json(o, "check", &spec);
        j["seed"] = poly_to_string(g);
        j["verdict"] = to_json(v);
        write_out(o, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << header_text(o, "check", &spec);
        out << "# seed: " << poly_to_string(g) << "\n";
        out << "theorem: " << v.theorem << "\n";
        for (const Check& c : v.checks)
            out << "check " << c.name << ": " << to_string(c.status)
                << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        out << "result: " << (v.pass() ? "PASS" : "FAIL") << "\n";
        write_out(o, out.str());
    }
    return v.pass() ? 0 : 1;
}

int run_search(const CommonOpts& o) {
    FieldPtr F = parse_field(o.q);
    TransformSpec spec = build_transform(o, F);
    EnumOptions eo;
    eo.prng_seed = o.prng_seed;
    auto seeds = search_seeds(F, spec, o.degree, o.limit, eo);
    if (default_format(o) == "json") {
        json j = meta_json(o, "search", &spec);
        j["degree"] = o.degree;
        json arr = json::array();
        for (const auto& [p, v] : seeds)
            arr.push_back({{"seed", poly_to_string(p)}, {"verdict", to_json(v)}});
        j["seeds"] = arr;
        write_out(o, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << header_text(o, "search", &spec);
        out << "# degree: " << o.degree << "\n";
        for (const auto& [p, v] : seeds)
            out << "seed: " << poly_to_string(p) << " theorem: " << v.theorem << " pass\n";
        out << "found: " << seeds.size() << "\n";
        write_out(o, out.str());
    }
    return 0;
}

int run_factor_split(const CommonOpts& o) {
    FieldPtr F = parse_field(o.q);
    if (o.poly.empty()) throw ParseError("--poly is required", 0);
    Poly g = parse_poly(o.poly);
    if (!g.field()->same(*F)) throw CtxMismatchError("polynomial field differs from --q");
    FieldPtr ctx2 = make_extension(F, 2);
    auto [r, s] = split_over_quadratic(g, ctx2);
    if (default_format(o) == "json") {
        json j = meta_json(o, "factor-split", nullptr);
        j["q"] = field_to_string(F);
        j["poly"] = poly_to_string(g);
        j["r"] = poly_to_string(r);
        j["s"] = poly_to_string(s);
        write_out(o, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << header_text(o, "factor-split", nullptr);
        out << "# poly: " << poly_to_string(g) << "\n";
        out << "r: " << poly_to_string(r) << "\n";
        out << "s: " << poly_to_string(s) << "\n";
        write_out(o, out.str());
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_transform) {
    cmd->add_option("--q", o.q, "field spec: p or p^k")->required();
    cmd->add_option("--format", o.format, "text or json (env IRRCHAIN_FORMAT)");
    cmd->add_option("--output", o.output, "write output to a file instead of stdout");
    cmd->add_option("--prng-seed", o.prng_seed, "seed for randomized subroutines");
    if (with_transform) {
        cmd->add_option("--kind", o.kind, "cohen | mcnay | singer | general");
        cmd->add_option("--sigma", o.sigma, "matrix a,b;c,d (kind general)");
        cmd->add_option("--t", o.t, "power map exponent");
        cmd->add_option("--c", o.c, "parameter c (kind mcnay/singer)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iterated irreducible polynomial chains over finite fields"};
    app.require_subcommand(1);

    CommonOpts o;

    CLI::App* gen = app.add_subcommand("gen", "generate a chain from a seed");
    add_common(gen, o, true);
    gen->add_option("--seed", o.seed, "seed polynomial");
    gen->add_option("--iters", o.iters, "number of iterations");
    gen->add_option("--verify", o.verify, "none | fast | full");
    gen->add_option("--rabin-cap", o.rabin_cap, "degree cap for irreducibility checks");
    gen->add_flag("--timings", o.timings, "include wall times (non-deterministic output)");

    CLI::App* check = app.add_subcommand("check", "check chain hypotheses for a seed");
    add_common(check, o, true);
    check->add_option("--seed", o.seed, "seed polynomial");

    CLI::App* search = app.add_subcommand("search", "search for admissible seeds");
    add_common(search, o, true);
    search->add_option("--degree", o.degree, "seed degree");
    search->add_option("--limit", o.limit, "maximum number of seeds");

    CLI::App* verify = app.add_subcommand("verify", "generate and fully verify a chain");
    add_common(verify, o, true);
    verify->add_option("--seed", o.seed, "seed polynomial");
    verify->add_option("--iters", o.iters, "number of iterations");
    verify->add_option("--verify", o.verify, "none | fast | full (default full)");
    verify->add_option("--rabin-cap", o.rabin_cap, "degree cap for irreducibility checks");
    verify->add_flag("--timings", o.timings, "include wall times (non-deterministic output)");

    CLI::App* split = app.add_subcommand("factor-split",
                                         "split an even-degree irreducible over F_{ q^2 }");
    add_common(split, o, false);
    split->add_option("--poly", o.poly, "polynomial to split");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    for (CLI::App* sub : {gen, check, search, verify})
        o.t_given = o.t_given || sub->count("--t") > 0;
    o.verify_given = verify->count("--verify") > 0;

    try {
        if (gen->parsed()) return run_gen(o, false);
        if (verify->parsed()) return run_gen(o, true);
        if (check->parsed()) return run_check(o);
        if (search->parsed()) return run_search(o);
        if (split->parsed()) return run_factor_split(o);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const PoleAtIterateError& e) {
        std::cerr << "refutation alarm: " << e.what() << "\n";
        return 3;
    } catch (const DegreeDroppedError& e) {
        std::cerr << "refutation alarm: " << e.what() << "\n";
        return 3;
    } catch (const InternalDescentFailureError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
