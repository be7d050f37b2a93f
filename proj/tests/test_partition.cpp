#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "bnc/errors.hpp"
#include "bnc/partition.hpp"
#include "oracles.hpp"

using namespace bnc;

namespace {
const std::string fig_chi = "lrlllr";  // lefts {1,3,4,5}, rights {2,6}

std::vector<int> to_one_based(const std::vector<int>& v) {
    std::vector<int> out;
    for (int x : v) out.push_back(x + 1);
    return out;
}
}  // namespace

TEST_CASE("s_chi") {
    CHECK(build_context(ChiMap::parse("llll")).s_chi == std::vector<int>{0, 1, 2, 3});
    CHECK(to_one_based(build_context(ChiMap::parse("rr")).s_chi) == std::vector<int>{2, 1});
    CHECK(to_one_based(build_context(ChiMap::parse(fig_chi)).s_chi) == std::vector<int>{1, 3, 4, 5, 6, 2});
    auto ctx = build_context(ChiMap::parse(fig_chi));
    CHECK(ctx.precedes(5, 1));  // 6 before 2
    CHECK(ctx.precedes(4, 5));
}

TEST_CASE("contexts reject the boolean letter and unknown letters") {
    CHECK_THROWS_AS(build_context(ChiMap::parse("lbr")), AlphabetError);
    CHECK_THROWS_AS(ChiMap::parse("lxr"), AlphabetError);
}

TEST_CASE("figure partitions") {
    auto ctx = build_context(ChiMap::parse(fig_chi));
    CHECK(is_bnc(SetPartition::parse("{1,2,5,6},{3,4}"), ctx));
    CHECK_FALSE(is_bnc(SetPartition::parse("{1,4,5,6},{2,3}"), ctx));
    CHECK(is_bnc(SetPartition::full(6), ctx));
    CHECK_THROWS_AS(is_bnc(SetPartition::full(5), ctx), SizeMismatch);
}

TEST_CASE("enumeration agrees with the brute-force filter and Catalan numbers") {
    CHECK(enumerate_bnc(build_context(ChiMap{})).size() == 1);
    for (int n = 0; n <= 8; ++n)
        for (const auto& chi : oracle::all_chis(n)) {
            auto got = enumerate_bnc(build_context(ChiMap::parse(chi)));
            std::vector<std::vector<int>> want;
            if (n <= 6)
                for (auto& r : oracle::all_partitions(n))
                    if (oracle::bnc(r, chi)) want.push_back(r);
            CHECK(static_cast<long long>(got.size()) == oracle::catalan(n));
            if (n <= 6) {
                REQUIRE(got.size() == want.size());
                for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].rgs == want[i]);  // lexicographic rgs
            }
        }
}

TEST_CASE("enumeration cap") {
    auto ctx = build_context(ChiMap::parse("lrlrlr"));
    CHECK_THROWS_AS(enumerate_bnc(ctx, 5), CapExceeded);
    CHECK(enumerate_bnc(ctx, 6).size() == 132);
}

TEST_CASE("relabelling is an order isomorphism onto NC(n)") {
    for (const auto& chi : {std::string("lrlllr"), std::string("rrlrl"), std::string("lrrl")}) {
        auto ctx = build_context(ChiMap::parse(chi));
        auto parts = enumerate_bnc(ctx);
        auto nc = enumerate_nc(ctx.n());
        std::set<std::vector<int>> images;
        for (auto& p : parts) {
            auto q = relabel_to_nc(p, ctx);
            CHECK(is_noncrossing(q));
            CHECK(relabel_from_nc(q, ctx) == p);
            images.insert(q.rgs);
        }
        CHECK(images.size() == nc.size());
        for (auto& a : parts)
            for (auto& b : parts)
                CHECK(refines(a, b) == refines(relabel_to_nc(a, ctx), relabel_to_nc(b, ctx)));
    }
}

TEST_CASE("refinement, meet and join") {
    auto p = SetPartition::parse("{1,3},{2},{4}");
    CHECK(refines(SetPartition::singletons(4), p));
    CHECK(refines(p, SetPartition::full(4)));
    CHECK(meet(p, p) == p);

    auto ctx = build_context(ChiMap::parse("lrlr"));
    auto a = SetPartition::parse("{1,3},{2},{4}"), b = SetPartition::parse("{2,4},{1},{3}");
    auto j = join(a, b, ctx);
    // oracle: the unique minimal common upper bound in BNC(chi)
    std::vector<SetPartition> ub;
    for (auto& s : enumerate_bnc(ctx))
        if (oracle::leq(a.rgs, s.rgs) && oracle::leq(b.rgs, s.rgs)) ub.push_back(s);
    std::vector<SetPartition> minimal;
    for (auto& s : ub) {
        bool is_min = true;
        for (auto& t : ub)
            if (!(t == s) && oracle::leq(t.rgs, s.rgs)) is_min = false;
        if (is_min) minimal.push_back(s);
    }
    REQUIRE(minimal.size() == 1);
    CHECK(j == minimal[0]);
    CHECK(is_bnc(j, ctx));
    CHECK_THROWS_AS(meet(a, SetPartition::full(3)), SizeMismatch);
}

TEST_CASE("lattice laws on random samples") {
    std::mt19937_64 rng(11);
    for (const auto& chi : {std::string("lrlllr"), std::string("rlrlr"), std::string("llrr")}) {
        auto ctx = build_context(ChiMap::parse(chi));
        auto parts = enumerate_bnc(ctx);
        for (int t = 0; t < 200; ++t) {
            const auto& x = parts[rng() % parts.size()];
            const auto& y = parts[rng() % parts.size()];
            auto m = meet(x, y), jn = join(x, y, ctx);
            CHECK(is_bnc(m, ctx));
            CHECK(join(x, m, ctx) == x);
            CHECK(meet(x, jn) == x);
            CHECK(join(x, x, ctx) == x);
            CHECK(join(x, y, ctx) == join(y, x, ctx));
            CHECK(refines(m, x));
            CHECK(refines(y, jn));
        }
    }
}

TEST_CASE("Mobius values") {
    auto ctx2 = build_context(ChiMap::parse("lr"));
    CHECK(mobius(SetPartition::singletons(2), SetPartition::full(2), ctx2) == -1);
    for (const auto& chi : oracle::all_chis(3)) {
        auto ctx = build_context(ChiMap::parse(chi));
        CHECK(mobius(SetPartition::singletons(3), SetPartition::full(3), ctx) == 2);
        for (auto& p : enumerate_bnc(ctx)) CHECK(mobius(p, p, ctx) == 1);
    }
    // closed form on the full interval: (-1)^(n-1) Catalan(n-1)
    for (int n = 1; n <= 7; ++n) {
        auto ctx = build_context(ChiMap::parse(std::string(n, 'l').replace(0, n / 2, std::string(n / 2, 'r'))));
        long long want = (n % 2 ? 1 : -1) * oracle::catalan(n - 1);
        CHECK(mobius(SetPartition::singletons(n), SetPartition::full(n), ctx) == want);
    }
    auto ctx = build_context(ChiMap::parse(fig_chi));
    CHECK(mobius(SetPartition::full(6), SetPartition::singletons(6), ctx) == 0);
    CHECK_THROWS_AS(mobius(SetPartition::parse("{1,4,5,6},{2,3}"), SetPartition::full(6), ctx), NotBNC);
}

TEST_CASE("Mobius inversion on every interval, n <= 6") {
    for (int n = 0; n <= 6; ++n)
        for (const auto& chi : oracle::all_chis(n)) {
            if (n == 6 && chi != fig_chi && chi != "rlrlrl" && chi != "llllll") continue;
            auto ctx = build_context(ChiMap::parse(chi));
            auto parts = enumerate_bnc(ctx);
            for (auto& p : parts)
                for (auto& s : parts) {
                    if (!oracle::leq(p.rgs, s.rgs)) {
                        CHECK(mobius(p, s, ctx) == 0);
                        continue;
                    }
                    long long left = 0, right = 0;
                    for (auto& t : parts)
                        if (oracle::leq(p.rgs, t.rgs) && oracle::leq(t.rgs, s.rgs)) {
                            left += mobius(t, s, ctx);
                            right += mobius(p, t, ctx);
                        }
                    CHECK(left == (p == s ? 1 : 0));
                    CHECK(right == (p == s ? 1 : 0));
                }
        }
}

TEST_CASE("lr replacement") {
    auto f = lr_replacement(ChiMap::parse("lbrb"));
    CHECK(f.chi.str() == "llrrlr");
    CHECK(f.f == std::vector<int>{0, 1, 3, 4});
    CHECK(f.bottom == SetPartition::parse("{1},{2,3},{4},{5,6}"));

    auto g = lr_replacement(ChiMap::parse("lrr"));
    CHECK(g.chi.str() == "lrr");
    CHECK(g.bottom == SetPartition::singletons(3));

    auto h = lr_replacement(ChiMap::parse("b"));
    CHECK(h.chi.str() == "lr");
    CHECK(h.bottom == SetPartition::full(2));
}

TEST_CASE("BNC_ffb examples") {
    auto rbl = enumerate_bnc_ffb(lr_replacement(ChiMap::parse("rbl")));
    std::set<std::string> got;
    for (auto& p : rbl) got.insert(p.str());
    // chi = r l r l; 2 and 3 always together
    CHECK(got == std::set<std::string>{"{1},{2,3},{4}", "{1,2,3},{4}", "{1},{2,3,4}", "{1,2,3,4}"});

    auto bb = lr_replacement(ChiMap::parse("bb"));
    // only {1,2},{3,4} and the full block keep both boolean pairs together
    std::size_t want = 0;
    for (auto& r : oracle::all_partitions(4))
        if (oracle::bnc(r, "lrlr") && oracle::leq(bb.bottom.rgs, r)) ++want;
    CHECK(want == 2);
    CHECK(enumerate_bnc_ffb(bb).size() == want);

    auto none = lr_replacement(ChiMap::parse("lrrl"));
    CHECK(enumerate_bnc_ffb(none) == enumerate_bnc(build_context(none.chi)));
}

TEST_CASE("BNC_ffb is the interval above its bottom, expanded n <= 8") {
    std::size_t shapes = 0;
    for (int m = 1; m <= 8; ++m)
        for (const auto& hat : oracle::all_chis(m, "lrb")) {
            auto fctx = lr_replacement(ChiMap::parse(hat));
            if (fctx.chi.n() > 8) continue;
            ++shapes;
            auto ctx = build_context(fctx.chi);
            std::vector<SetPartition> want;
            for (auto& p : enumerate_bnc(ctx))
                if (oracle::leq(fctx.bottom.rgs, p.rgs)) want.push_back(p);
            auto got = enumerate_bnc_ffb(fctx);
            CHECK(got == want);
            for (auto& p : got) CHECK(in_bnc_ffb(p, fctx));
        }
    CHECK(shapes > 1000);
}

TEST_CASE("the two crossing oracles agree") {
    for (int n = 0; n <= 6; ++n)
        for (const auto& chi : oracle::all_chis(n))
            for (auto& r : oracle::all_partitions(n)) CHECK(oracle::bnc(r, chi) == oracle::bnc_quartic(r, chi));
}
