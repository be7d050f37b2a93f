#pragma once
#include <gmpxx.h>
#include <string>
#include <vector>

namespace bnc {

using Q = mpq_class;
using Vec = std::vector<Q>;

Q parse_rational(const std::string& s);
std::string to_string(const Q& q);

inline Q qint(long long v) { return Q(static_cast<long>(v)); }
inline Vec zero_vec(std::size_t n) { return Vec(n, Q(0)); }
inline Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n, Q(0));
    v[i] = 1;
    return v;
}
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Q& s, const Vec& v);
void axpy(Vec& y, const Q& a, const Vec& x);  // y += a*x

}  // namespace bnc
