#pragma once
#include <string>
#include <vector>

#include "bnc/algebra.hpp"

namespace bnc {

struct ChiMap {
    std::vector<Side> sides;

    std::size_t n() const { return sides.size(); }
    bool has_boolean() const;
    static ChiMap parse(const std::string& s);  // letters l, r, b
    std::string str() const;
    Side operator[](std::size_t i) const { return sides[i]; }
    bool operator==(const ChiMap& o) const { return sides == o.sides; }
};

using EpsilonMap = std::vector<int>;
EpsilonMap parse_epsilon(const std::string& s);  // "1,1,2"
std::string epsilon_str(const EpsilonMap& e);

// Restricted-growth string, 0-based positions and block numbers.
struct SetPartition {
    std::vector<int> rgs;

    SetPartition() = default;
    explicit SetPartition(std::vector<int> r);
    static SetPartition singletons(std::size_t n);
    static SetPartition full(std::size_t n);
    static SetPartition from_blocks(std::size_t n, const std::vector<std::vector<int>>& blocks);  // 0-based
    static SetPartition from_labels(const std::vector<int>& labels);                          // any labels
    static SetPartition parse(const std::string& s);  // "{1,2,5,6},{3,4}" (1-based)
    static SetPartition parse_rgs(const std::string& s);  // "0,1,1,0"

    std::size_t n() const { return rgs.size(); }
    int num_blocks() const;
    std::vector<std::vector<int>> blocks() const;  // 0-based, ordered by minimum
    std::string str() const;                        // 1-based block lists
    std::string rgs_str() const;
    bool same_block(int i, int j) const { return rgs[i] == rgs[j]; }
    bool operator==(const SetPartition& o) const { return rgs == o.rgs; }
    bool operator<(const SetPartition& o) const { return rgs < o.rgs; }
};

bool is_valid_rgs(const std::vector<int>& r);
bool is_noncrossing(const SetPartition& p);

struct BNCContext {
    ChiMap chi;
    std::vector<int> s_chi;      // s_chi[j] = element in position j of the order (0-based)
    std::vector<int> prec_rank;  // inverse of s_chi
    std::size_t n() const { return chi.n(); }
    bool precedes(int a, int b) const { return prec_rank[a] < prec_rank[b]; }
};

BNCContext build_context(const ChiMap& chi);
SetPartition relabel_to_nc(const SetPartition& p, const BNCContext& ctx);
SetPartition relabel_from_nc(const SetPartition& q, const BNCContext& ctx);
bool is_bnc(const SetPartition& p, const BNCContext& ctx);

// Enumeration caps; BNC_ENGINE_CAP overrides both defaults.
std::size_t bnc_cap();
std::size_t lr_cap();

std::vector<SetPartition> enumerate_nc(std::size_t n);
std::vector<SetPartition> enumerate_bnc(const BNCContext& ctx);
std::vector<SetPartition> enumerate_bnc(const BNCContext& ctx, std::size_t cap);

bool refines(const SetPartition& pi, const SetPartition& sigma);
SetPartition meet(const SetPartition& pi, const SetPartition& sigma);
SetPartition join_partitions(const SetPartition& pi, const SetPartition& sigma);  // join in P(n)
SetPartition nc_closure(const SetPartition& p);
SetPartition join(const SetPartition& pi, const SetPartition& sigma, const BNCContext& ctx);

long long mobius(const SetPartition& pi, const SetPartition& sigma, const BNCContext& ctx);
long long mobius_nc(const SetPartition& pi, const SetPartition& sigma);  // both non-crossing

struct FfbContext {
    ChiMap chi_hat;
    ChiMap chi;
    std::vector<int> f;              // 0-based index map
    std::vector<int> boolean_starts;  // f-images of b positions
    SetPartition bottom;
};

FfbContext lr_replacement(const ChiMap& chi_hat);
std::vector<SetPartition> enumerate_bnc_ffb(const FfbContext& fctx);
std::vector<SetPartition> enumerate_bnc_ffb(const FfbContext& fctx, std::size_t cap);
bool in_bnc_ffb(const SetPartition& p, const FfbContext& fctx);

unsigned long long catalan(unsigned n);

}  // namespace bnc
