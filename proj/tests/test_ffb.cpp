#include <doctest.h>

#include <random>

#include "bnc/ffb.hpp"
#include "bnc/lr_calculus.hpp"

using namespace bnc;

namespace {

const BBProbSpace& m2() {
    static const BBProbSpace s = fixture_m2_scalar();
    return s;
}

const FfbEmbedding& embedding() {
    static const FfbEmbedding e = embed_ffb_family(fixture_m2_family(m2()), 6);
    return e;
}

WordCheckOptions opts(std::size_t cap) {
    WordCheckOptions o;
    o.word_cap = cap;
    return o;
}

bool claim_pass(const ClaimReport& r, const std::string& id) {
    const Claim* c = r.find(id);
    REQUIRE_MESSAGE(c != nullptr, "missing claim " << id);
    return c->pass;
}

Vec product(const std::vector<Vec>& zs) {
    Vec acc = m2().A->unit;
    for (const auto& z : zs) acc = m2().A->mul(acc, z);
    return acc;
}

}  // namespace

TEST_CASE("claim reports") {
    ClaimReport r;
    int calls = 0;
    auto detail = [&] {
        ++calls;
        return std::string("w") + std::to_string(calls);
    };
    r.claim("a").record(true, detail);
    r.claim("a").record(false, detail);
    r.claim("a").record(false, detail);
    r.claim("b").record(true, detail);
    CHECK(calls == 1);
    CHECK_FALSE(r.pass());
    CHECK(r.find("a")->witness == "w1");
    CHECK(r.find("a")->checked == 3);
    CHECK(r.find("b")->pass);
    CHECK(r.find("c") == nullptr);
    ClaimReport other;
    other.claim("a").record(true, detail);
    other.claim("c").record(true, detail);
    r.merge(other);
    CHECK(r.find("a")->checked == 4);
    CHECK_FALSE(r.find("a")->pass);
    CHECK(r.find("c") != nullptr);
}

TEST_CASE("operators of the doubling construction") {
    const auto& e = embedding();
    CHECK(claim_pass(e.checks, "side-tags"));
    CHECK(claim_pass(e.checks, "telescoping"));
    CHECK(e.Y.in_left(e.S));
    CHECK(e.Y.in_right(e.S));
    const auto& A = *m2().A;
    for (std::size_t i = 0; i < A.dim; ++i) {
        CHECK(e.Y.in_left(e.T(A.basis(i))));
        CHECK(e.Y.in_left(e.D(A.basis(i))));
        CHECK(e.Y.in_right(e.D(A.basis(i))));
    }
    // S D_Z S = 0 and T_A D_Z T_A' = 0
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j) {
            CHECK((e.S * e.D(A.basis(i)) * e.S).is_zero());
            CHECK((e.T(A.basis(j)) * e.D(A.basis(i)) * e.T(A.basis(i))).is_zero());
        }
    // D_Z1 S D_Z2 1_B sits in the second copy, so its expectation is 0
    std::mt19937_64 rng(1);
    const auto basis = side_algebra_basis(m2(), Side::Left);
    for (int t = 0; t < 10; ++t) {
        Vec z1 = random_combination(basis, rng), z2 = random_combination(basis, rng);
        Vec v = e.D(z1) * (e.S * (e.D(z2) * e.Y.unit_vector()));
        CHECK(is_zero(e.Y.projection() * v));
        CHECK(v == doubled_second(e.theta.X, e.theta.theta(m2().A->mul(z1, z2)) * e.theta.X.unit_vector()));
    }
}

TEST_CASE("the constructed system satisfies the system axioms") {
    auto r = check_ffb_system(embedding().system, opts(4));
    CHECK(r.pass());
    for (auto id : {"side-tags", "c-closure", "annihilation-c", "annihilation-d", "vanishing-cdc", "vanishing-dcd"}) {
        CHECK(claim_pass(r, id));
        CHECK(r.find(id)->checked > 0);
    }
}

TEST_CASE("zero C' and D' satisfy the axioms vacuously") {
    FfbSystem sys = embedding().system;
    const std::size_t n = embedding().Y.dim();
    for (auto& p : sys.parts) {
        p.c.assign(1, Matrix(n, n));
        p.d.assign(1, Matrix(n, n));
    }
    CHECK(check_ffb_system(sys, opts(3)).pass());
}

TEST_CASE("replacing S by the identity breaks annihilation") {
    auto r = check_ffb_system(corrupt_system(embedding().system), opts(3));
    CHECK_FALSE(r.pass());
    CHECK_FALSE(claim_pass(r, "annihilation-d"));
    CHECK_FALSE(r.find("annihilation-d")->witness.empty());
}

TEST_CASE("single-index moments are preserved") {
    const auto& e = embedding();
    auto fam = fixture_m2_family(m2());
    CHECK(check_partial_ffb(e, fam, opts(4)).pass());
    // direct recomputation on random words
    std::mt19937_64 rng(2);
    const auto& fp = *e.system.fp;
    for (int t = 0; t < 40; ++t) {
        const int k = static_cast<int>(rng() % 2);
        const std::size_t n = 1 + rng() % 4;
        std::vector<Vec> zs;
        std::vector<ModuleOperator> ops;
        for (std::size_t i = 0; i < n; ++i) {
            const int slot = static_cast<int>(rng() % 3);
            const auto& gens = fam.faces[k][slot];
            const Vec& z = gens[rng() % gens.size()];
            zs.push_back(z);
            ops.push_back(e.alpha(k, slot == 0 ? Side::Left : slot == 1 ? Side::Right : Side::Boolean, z));
        }
        std::vector<const ModuleOperator*> word;
        for (auto& o : ops) word.push_back(&o);
        CHECK(word_expectation(fp, word) == m2().E(product(zs)));
    }
}

TEST_CASE("one index is always independent") {
    auto fam = fixture_m2_family(m2());
    fam.faces.resize(1);
    CHECK(check_ffb_independence(fam, opts(3)).pass());
}

TEST_CASE("the constructed system gives an ffb family") {
    auto r = check_ffb_independence(embedding().system, opts(4));
    CHECK(r.pass());
    CHECK(r.find("independence")->checked > 1000);
}

TEST_CASE("dropping the Boolean projections is flagged") {
    auto r = check_ffb_independence(embedding().system, opts(3), true);
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.find("independence")->witness.empty());
}

TEST_CASE("families that are not independent are flagged") {
    auto same = fixture_m2_family(m2(), true);
    auto r = check_ffb_independence(same, opts(3));
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.find("independence")->witness.empty());
}

TEST_CASE("proof pipeline on the constructed system, n' <= 3") {
    auto r = verify_system_gives_ffb(embedding().system, opts(3), 3);
    for (auto id : {"independence", "ZtoT", "EATtoELT", "LRdecompofTs", "muprimeTstotildeZ", "Eofsuperfluousis0"}) {
        INFO(id);
        CHECK(claim_pass(r, id));
        CHECK(r.find(id)->checked > 0);
    }
}

TEST_CASE("moment formulas on the constructed system, n' <= 4") {
    auto r = check_ffb_formulas(embedding().system, 4, 7);
    for (auto id : {"vanishing", "main-formula", "kappa-mixed-zero", "kappa-restricted-sum"}) {
        INFO(id);
        CHECK(claim_pass(r, id));
    }
}

TEST_CASE("the (r,b,l) instance") {
    const auto& sys = embedding().system;
    const auto& fp = sys.fp;
    auto data = ffb_mobius(ChiMap::parse("rbl"));
    CHECK(std::count(data.in_ffb.begin(), data.in_ffb.end(), true) == 4);
    for (const EpsilonMap& eps : {EpsilonMap{0, 1, 1, 0}, EpsilonMap{1, 0, 0, 1}, EpsilonMap{0, 0, 0, 1}}) {
        std::vector<ModuleOperator> ops{ModuleOperator::rho(*fp, eps[0], sys.parts[eps[0]].right[0]),
                                        ModuleOperator::lambda(*fp, eps[1], sys.parts[eps[1]].c[0]),
                                        ModuleOperator::rho(*fp, eps[2], sys.parts[eps[2]].d[0]),
                                        ModuleOperator::lambda(*fp, eps[3], sys.parts[eps[3]].left[0])};
        ModuleMoments mm(fp, ops);
        auto r = ffb_moment_formula(data, eps, mm);
        CHECK(r.formula_ok);
        CHECK(r.vanishing_ok);
        CHECK(r.nonvanishing.empty());
        CHECK(is_zero(r.kappa_full));
        CHECK(r.alt_ok);
    }
}

TEST_CASE("a single boolean slot has cumulant equal to its moment") {
    const auto& sys = embedding().system;
    const auto& fp = sys.fp;
    auto data = ffb_mobius(ChiMap::parse("b"));
    for (int k = 0; k < 2; ++k)
        for (const auto& c : sys.parts[k].c) {
            std::vector<ModuleOperator> ops{ModuleOperator::lambda(*fp, k, c),
                                            ModuleOperator::rho(*fp, k, sys.parts[k].d[0])};
            ModuleMoments mm(fp, ops);
            auto r = ffb_moment_formula(data, {k, k}, mm);
            CHECK(r.kappa_alt == r.lhs);
            CHECK(r.kappa_full == r.lhs);
            CHECK(r.formula_ok);
        }
}

TEST_CASE("without boolean letters the check agrees with the bi-free criterion") {
    const auto& sys = embedding().system;
    const auto& fp = sys.fp;
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng() % 3;
        ChiMap chi;
        EpsilonMap eps;
        std::vector<ModuleOperator> ops;
        for (std::size_t i = 0; i < n; ++i) {
            const bool left = rng() % 2;
            const int k = static_cast<int>(rng() % 2);
            chi.sides.push_back(left ? Side::Left : Side::Right);
            eps.push_back(k);
            const auto& gens = left ? sys.parts[k].left : sys.parts[k].right;
            const Matrix& T = gens[rng() % gens.size()];
            ops.push_back(left ? ModuleOperator::lambda(*fp, k, T) : ModuleOperator::rho(*fp, k, T));
        }
        ModuleMoments mm(fp, ops);
        CHECK(bifree_moment_check(build_context(chi), eps, mm).pass());
    }
}
