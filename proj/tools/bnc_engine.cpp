#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "bnc/algebra.hpp"
#include "bnc/bimodule.hpp"
#include "bnc/errors.hpp"
#include "bnc/ffb.hpp"
#include "bnc/free_product.hpp"
#include "bnc/json_io.hpp"
#include "bnc/lr_calculus.hpp"
#include "bnc/lr_diagram.hpp"
#include "bnc/moments.hpp"
#include "bnc/partition.hpp"
#include "bnc/render.hpp"

using namespace bnc;

namespace {

constexpr int kExitParse = 2, kExitCap = 3, kExitAxioms = 4, kExitClaim = 5;

struct RunConfig {
    std::string chi, chi_hat, eps, fixture = "m2-scalar", format = "json";
    std::string pi, sigma, events, project;
    std::size_t depth = 0, word_cap = 4, max_tuples = 4;
    std::uint64_t seed = 0;
    bool perturb = false, corrupt = false, no_projections = false;
};

struct AxiomFailure : Error {
    using Error::Error;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void print_report(const RunConfig& c, const ClaimReport& r, const Json& extra = Json::object()) {
    if (c.format != "text") {
        Json j = to_json(r);
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        emit(j);
        return;
    }
    for (const auto& cl : r.claims) {
        std::cout << (cl.pass ? "PASS " : "FAIL ") << cl.id << " (" << cl.checked << " checked)";
        if (!cl.pass) std::cout << ": " << cl.witness;
        std::cout << "\n";
    }
    for (auto it = extra.begin(); it != extra.end(); ++it) std::cout << it.key() << " " << it.value().dump() << "\n";
    std::cout << (r.pass() ? "pass" : "fail") << "\n";
}

int finish(const RunConfig& c, const ClaimReport& r, const Json& extra = Json::object()) {
    print_report(c, r, extra);
    return r.pass() ? 0 : kExitClaim;
}

BBProbSpace named_space(const std::string& name) {
    if (name == "scalar") return fixture_scalar();
    if (name == "diag2") return fixture_diag2();
    if (name == "diag2-broken") return fixture_diag2_broken();
    if (name == "m2-scalar" || name == "doubled-m2") return fixture_m2_scalar();
    return space_from_json(read_json_file(name));
}

BBProbSpace load_space(const std::string& name) {
    BBProbSpace s = named_space(name);
    auto rep = check_bb_axioms(s);
    if (!rep.ok()) {
        std::string msg;
        for (const auto& c : rep.checks)
            if (!c.pass) msg += (msg.empty() ? "" : "; ") + c.name + (c.witness.empty() ? "" : " (" + c.witness + ")");
        throw AxiomFailure("fixture " + s.name + " fails the axioms: " + msg);
    }
    return s;
}

SetPartition parse_partition(const std::string& s) {
    if (s.find('{') != std::string::npos) return SetPartition::parse(s);
    return SetPartition::parse_rgs(s);
}

std::vector<Vec> sample_sides(const BBProbSpace& s, const ChiMap& chi, std::mt19937_64& rng) {
    std::vector<Vec> out;
    std::map<Side, std::vector<Vec>> bases;
    for (std::size_t i = 0; i < chi.n(); ++i) {
        Side side = chi[i];
        if (!bases.count(side)) bases[side] = side_algebra_basis(s, side);
        out.push_back(random_combination(bases[side], rng));
    }
    return out;
}

// --- enumerate -------------------------------------------------------------

int cmd_enumerate(const std::string& what, const RunConfig& c) {
    Json j;
    std::vector<std::string> lines;
    if (what == "bnc") {
        auto ctx = build_context(ChiMap::parse(c.chi));
        auto parts = enumerate_bnc(ctx);
        j["chi"] = ctx.chi.str();
        j["count"] = parts.size();
        j["partitions"] = Json::array();
        for (const auto& p : parts) {
            j["partitions"].push_back({{"rgs", p.rgs}, {"blocks", p.str()}});
            lines.push_back(p.str());
        }
    } else if (what == "bncffb") {
        auto fctx = lr_replacement(ChiMap::parse(c.chi_hat));
        auto parts = enumerate_bnc_ffb(fctx);
        j["chi_hat"] = fctx.chi_hat.str();
        j["chi"] = fctx.chi.str();
        j["bottom"] = fctx.bottom.str();
        j["count"] = parts.size();
        j["partitions"] = Json::array();
        for (const auto& p : parts) {
            j["partitions"].push_back({{"rgs", p.rgs}, {"blocks", p.str()}});
            lines.push_back(p.str());
        }
    } else {
        auto chi = ChiMap::parse(c.chi);
        auto eps = parse_epsilon(c.eps);
        auto fam = what == "lr" ? enumerate_lr(chi, eps) : enumerate_lr_lat(chi, eps);
        j["chi"] = chi.str();
        j["eps"] = eps;
        j["count"] = fam.size();
        j["diagrams"] = Json::array();
        for (const auto& d : fam.diagrams) {
            j["diagrams"].push_back(to_json(d));
            lines.push_back(d.key() + "  " + d.str());
        }
    }
    if (c.format == "text") {
        for (const auto& l : lines) std::cout << l << "\n";
        std::cout << "count " << lines.size() << "\n";
    } else {
        emit(j);
    }
    return 0;
}

// --- mobius, moments, cumulants ------------------------------------------

int cmd_mobius(const RunConfig& c) {
    auto ctx = build_context(ChiMap::parse(c.chi));
    auto pi = parse_partition(c.pi), sigma = parse_partition(c.sigma);
    long long m = mobius(pi, sigma, ctx);
    if (c.format == "text") std::cout << m << "\n";
    else emit({{"chi", ctx.chi.str()}, {"pi", pi.rgs}, {"sigma", sigma.rgs}, {"mobius", m}});
    return 0;
}

int cmd_tables(bool cumulants, const RunConfig& c) {
    BBProbSpace s = load_space(c.fixture);
    auto ctx = build_context(ChiMap::parse(c.chi));
    std::mt19937_64 rng(c.seed);
    AlgebraMoments mf(s, sample_sides(s, ctx.chi, rng));
    auto E = moment_table(ctx, mf);
    EpsilonMap eps = c.eps.empty() ? EpsilonMap(ctx.n(), 0) : parse_epsilon(c.eps);
    Json j;
    j["fixture"] = s.name;
    j["seed"] = c.seed;
    j["elements"] = Json::array();
    for (const auto& z : mf.elements()) j["elements"].push_back(to_json(z));
    if (!cumulants) {
        j["table"] = to_json(E, eps);
    } else {
        auto K = cumulant_table(E, ctx);
        auto back = moments_from_cumulants(K, ctx);
        j["table"] = to_json(K, eps);
        j["round_trip"] = back.values == E.values;
    }
    emit(j);
    return 0;
}

// --- verify ------------------------------------------------------------------

int cmd_bb_axioms(const RunConfig& c) {
    BBProbSpace s = named_space(c.fixture);
    auto rep = check_bb_axioms(s);
    ClaimReport r;
    for (const auto& a : rep.checks) r.claim(a.name).record(a.pass, [&] { return a.witness; });
    print_report(c, r);
    return r.pass() ? 0 : kExitAxioms;
}

// Random theta-images on K copies of the fixture's bimodule.
struct RepFamily {
    std::shared_ptr<const FreeProduct> fp;
    std::vector<ModuleOperator> ops;
    std::vector<LROp> lr;
};

RepFamily rep_family(const BBProbSpace& s, const ChiMap& chi, const EpsilonMap& eps, std::size_t depth,
                     std::mt19937_64& rng) {
    if (eps.size() != chi.n()) throw SizeMismatch("colouring length differs from chi");
    ThetaRep th = build_bimodule_from_space(s);
    int K = 0;
    for (int e : eps) {
        if (e < 0) throw ParseError("colours must be non-negative");
        K = std::max(K, e + 1);
    }
    RepFamily f;
    f.fp = std::make_shared<const FreeProduct>(std::vector<Bimodule>(K, th.X), depth ? depth : chi.n() + 1);
    auto zs = sample_sides(s, chi, rng);
    for (std::size_t i = 0; i < chi.n(); ++i) {
        Matrix T = th.theta(zs[i]);
        const bool left = chi[i] == Side::Left;
        f.ops.push_back(left ? ModuleOperator::lambda(*f.fp, eps[i], T) : ModuleOperator::rho(*f.fp, eps[i], T));
        f.lr.push_back({chi[i], eps[i], T});
    }
    return f;
}

int cmd_bifree(const RunConfig& c) {
    BBProbSpace s = load_space(c.fixture);
    auto chi = ChiMap::parse(c.chi);
    if (chi.has_boolean()) throw AlphabetError("bi-free words use l and r only");
    auto eps = parse_epsilon(c.eps);
    std::mt19937_64 rng(c.seed);
    auto f = rep_family(s, chi, eps, c.depth, rng);
    if (c.perturb) {
        // the first operator also acts on another component, so it is not represented on its own colour
        const int other = (eps[0] + 1) % static_cast<int>(f.fp->num_components());
        const auto& T = f.lr[0].T;
        f.ops[0] = f.ops[0] + (chi[0] == Side::Left ? ModuleOperator::lambda(*f.fp, other, T)
                                                    : ModuleOperator::rho(*f.fp, other, T));
    }
    ModuleMoments mm(f.fp, f.ops);
    auto r = bifree_moment_check(build_context(chi), eps, mm);
    ClaimReport rep;
    rep.claim("moment-cumulant").record(r.moment_ok, [&] { return "E = " + to_json(r.lhs).dump() + ", sum = " + to_json(r.rhs).dump(); });
    rep.claim("kappa-mixed-zero").record(r.kappa_ok, [&] { return "kappa = " + to_json(r.kappa_full).dump(); });
    return finish(c, rep, {{"vacuous", r.vacuous}, {"kappa", to_json(r.kappa_full)}});
}

int cmd_lr_decompose(const RunConfig& c) {
    BBProbSpace s = load_space(c.fixture);
    auto chi = ChiMap::parse(c.chi);
    auto eps = parse_epsilon(c.eps);
    std::mt19937_64 rng(c.seed);
    auto f = rep_family(s, chi, eps, c.depth, rng);
    std::vector<std::size_t> projected;
    if (!c.project.empty())
        for (int p : parse_epsilon(c.project)) {
            if (p < 1) throw ParseError("projected positions are 1-based");
            projected.push_back(static_cast<std::size_t>(p - 1));
        }
    auto d = lr_decompose(f.lr, *f.fp, projected);
    ClaimReport rep;
    rep.claim("reconstructs").record(d.reconstructs, [] { return std::string("sum of c_D E_D differs from the word"); });
    if (!projected.empty()) {
        rep.claim("kept-matches").record(d.kept_matches, [] { return std::string("kept diagrams miss the primed word"); });
        rep.claim("split-reconstructs").record(d.split_reconstructs, [] { return std::string("split does not add up"); });
        rep.claim("residual-in-family").record(d.residual_in_family, [] { return std::string("residual outside the family"); });
    }
    Json extra;
    extra["diagrams"] = d.terms.size();
    extra["kept"] = d.kept.size();
    extra["residual"] = d.residual.size();
    extra["word"] = to_json(*f.fp, d.direct);
    return finish(c, rep, extra);
}

int cmd_ffb_system(const RunConfig& c) {
    if (c.fixture != "doubled-m2") throw ParseError("ffb-system supports the doubled-m2 fixture");
    BBProbSpace s = load_space("m2-scalar");
    FfbFamily fam = fixture_m2_family(s);
    WordCheckOptions o{c.word_cap, c.max_tuples, 2, c.seed};
    auto emb = embed_ffb_family(fam, c.depth ? c.depth : c.word_cap + 2);
    ClaimReport rep = emb.checks;
    rep.merge(check_ffb_system(c.corrupt ? corrupt_system(emb.system) : emb.system, o));
    if (!c.corrupt) rep.merge(check_partial_ffb(emb, fam, o));
    return finish(c, rep);
}

int cmd_ffb_independence(const RunConfig& c) {
    WordCheckOptions o{c.word_cap, c.max_tuples, 2, c.seed};
    if (c.fixture == "doubled-m2") {
        BBProbSpace s = load_space("m2-scalar");
        FfbFamily fam = fixture_m2_family(s);
        const std::size_t depth = c.depth ? c.depth : std::max<std::size_t>(c.word_cap + 2, 6);
        auto emb = embed_ffb_family(fam, depth);
        if (c.no_projections) return finish(c, check_ffb_independence(emb.system, o, true));
        ClaimReport rep = verify_system_gives_ffb(emb.system, o);
        rep.merge(check_ffb_formulas(emb.system, std::min<std::size_t>(c.word_cap, 4), c.seed));
        return finish(c, rep);
    }
    if (c.fixture == "m2-family" || c.fixture == "m2-identical") {
        BBProbSpace s = load_space("m2-scalar");
        return finish(c, check_ffb_independence(fixture_m2_family(s, c.fixture == "m2-identical"), o));
    }
    auto loaded = family_from_json(read_json_file(c.fixture));
    auto ax = check_bb_axioms(*loaded.space);
    if (!ax.ok()) throw AxiomFailure("family space fails the axioms");
    auto faces = check_faces(loaded.family);
    if (!faces.ok) throw AxiomFailure("face conditions: " + faces.violations.front());
    return finish(c, check_ffb_independence(loaded.family, o));
}

// --- render ------------------------------------------------------------------

int cmd_render(const RunConfig& c) {
    const std::string fmt = c.format == "json" ? "tikz" : c.format;
    if (fmt != "tikz" && fmt != "dot") throw ParseError("render formats are tikz and dot");
    if (!c.events.empty() || (c.pi.empty() && !c.eps.empty())) {
        LRDiagram d;
        d.chi = ChiMap::parse(c.chi);
        d.eps = parse_epsilon(c.eps);
        for (char e : c.events) d.events.push_back(event_from_letter(e));
        try {
            d.structure();
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
        std::cout << (fmt == "tikz" ? render_diagram_tikz(d) : render_diagram_dot(d));
        return 0;
    }
    auto chi = ChiMap::parse(c.chi);
    SetPartition p = c.pi.empty() ? SetPartition::singletons(0) : parse_partition(c.pi);
    if (p.n() != chi.n()) throw SizeMismatch("partition and chi lengths differ");
    std::cout << (fmt == "tikz" ? render_partition_tikz(p, chi) : render_partition_dot(p, chi));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bi-non-crossing partitions, LR diagrams and free-free-Boolean checks"};
    app.require_subcommand(1);
    RunConfig c;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--format", c.format, "json | text | tikz | dot")->check(CLI::IsMember({"json", "text", "tikz", "dot"}));
    };
    int (*dispatch)(const RunConfig&) = nullptr;
    std::string enum_kind;

    auto* en = app.add_subcommand("enumerate", "list BNC partitions or LR diagrams");
    en->require_subcommand(1);
    for (const char* k : {"bnc", "lr", "lrlat", "bncffb"}) {
        auto* s = en->add_subcommand(k);
        add_common(s);
        if (std::string(k) == "bncffb") s->add_option("--chihat", c.chi_hat)->required();
        else s->add_option("--chi", c.chi)->required();
        if (std::string(k) == "lr" || std::string(k) == "lrlat") s->add_option("--eps", c.eps)->required();
        s->callback([&, k] { enum_kind = k; });
    }

    auto* mob = app.add_subcommand("mobius", "Moebius function of BNC(chi)");
    add_common(mob);
    mob->add_option("--chi", c.chi)->required();
    mob->add_option("--pi", c.pi, "lower element (rgs 0,1,... or blocks {1,2},{3})")->required();
    mob->add_option("--sigma", c.sigma, "upper element")->required();
    mob->callback([&] { dispatch = cmd_mobius; });

    for (const char* k : {"moments", "cumulants"}) {
        auto* s = app.add_subcommand(k, std::string(k) + " table over BNC(chi) for sampled elements");
        add_common(s);
        s->add_option("--chi", c.chi)->required();
        s->add_option("--eps", c.eps);
        s->add_option("--fixture", c.fixture, "scalar | diag2 | m2-scalar | path to a space JSON");
        s->add_option("--seed", c.seed);
        if (std::string(k) == "moments") s->callback([&] { dispatch = [](const RunConfig& r) { return cmd_tables(false, r); }; });
        else s->callback([&] { dispatch = [](const RunConfig& r) { return cmd_tables(true, r); }; });
    }

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->require_subcommand(1);
    auto* bb = ver->add_subcommand("bb-axioms");
    bb->add_option("--format", c.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    bb->add_option("--fixture", c.fixture);
    bb->callback([&] { dispatch = cmd_bb_axioms; });
    auto* bf = ver->add_subcommand("bifree");
    bf->add_option("--format", c.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    bf->add_option("--chi", c.chi)->required();
    bf->add_option("--eps", c.eps)->required();
    bf->add_option("--fixture", c.fixture);
    bf->add_option("--seed", c.seed);
    bf->add_option("--depth", c.depth);
    bf->add_flag("--perturb", c.perturb, "replace the first operator by a non-represented one");
    bf->callback([&] { dispatch = cmd_bifree; });
    auto* fs = ver->add_subcommand("ffb-system");
    fs->add_option("--format", c.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    fs->add_option("--fixture", c.fixture)->required();
    fs->add_option("--word-cap", c.word_cap);
    fs->add_option("--max-tuples", c.max_tuples);
    fs->add_option("--seed", c.seed);
    fs->add_option("--depth", c.depth);
    fs->add_flag("--corrupt", c.corrupt, "replace S by the identity");
    fs->callback([&] { dispatch = cmd_ffb_system; });
    auto* fi = ver->add_subcommand("ffb-independence");
    fi->add_option("--format", c.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    fi->add_option("--fixture", c.fixture, "doubled-m2 | m2-family | m2-identical | path to a family JSON")->required();
    fi->add_option("--word-cap", c.word_cap);
    fi->add_option("--max-tuples", c.max_tuples);
    fi->add_option("--seed", c.seed);
    fi->add_option("--depth", c.depth);
    fi->add_flag("--no-projections", c.no_projections, "reference representation without Boolean projections");
    fi->callback([&] { dispatch = cmd_ffb_independence; });
    auto* ld = ver->add_subcommand("lr-decompose");
    ld->add_option("--format", c.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    ld->add_option("--chi", c.chi)->required();
    ld->add_option("--eps", c.eps)->required();
    ld->add_option("--project", c.project, "1-based positions with a Boolean projection");
    ld->add_option("--fixture", c.fixture);
    ld->add_option("--seed", c.seed);
    ld->add_option("--depth", c.depth);
    ld->callback([&] { dispatch = cmd_lr_decompose; });

    auto* ren = app.add_subcommand("render", "TikZ or DOT markup of a partition or diagram");
    ren->add_option("--format", c.format, "tikz | dot")->check(CLI::IsMember({"json", "text", "tikz", "dot"}));
    ren->add_option("--chi", c.chi)->required();
    ren->add_option("--pi", c.pi);
    ren->add_option("--eps", c.eps);
    ren->add_option("--events", c.events, "diagram event letters, node 1 first");
    ren->callback([&] { dispatch = cmd_render; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }
    try {
        if (!enum_kind.empty()) return cmd_enumerate(enum_kind, c);
        if (dispatch) return dispatch(c);
        return kExitParse;
    } catch (const AxiomFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAxioms;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const AlphabetError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
