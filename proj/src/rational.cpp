#include "rsym/rational.hpp"

#include <cctype>
#include <limits>

namespace rsym {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(__int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

} // namespace

Rational Rational::from128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (!fits64(n) || !fits64(d)) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rational Rational::parse(const std::string& s) {
    auto parse_int = [&](const std::string& t) -> std::int64_t {
        if (t.empty()) throw std::invalid_argument("bad rational: '" + s + "'");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("bad rational: '" + s + "'");
        for (std::size_t k = i; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k]))) throw std::invalid_argument("bad rational: '" + s + "'");
        return std::stoll(t);
    };
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    auto slash = t.find('/');
    if (slash == std::string::npos) return Rational(parse_int(t));
    return Rational(parse_int(t.substr(0, slash)), parse_int(t.substr(slash + 1)));
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

} // namespace rsym
