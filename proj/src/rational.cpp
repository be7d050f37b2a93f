#include "bnc/rational.hpp"

#include "bnc/errors.hpp"

namespace bnc {

Q parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    Q q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational: " + s);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const Q& s, const Vec& v) {
    Vec r(v);
    for (auto& x : r) x *= s;
    return r;
}

void axpy(Vec& y, const Q& a, const Vec& x) {
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] += a * x[i];
}

}  // namespace bnc
