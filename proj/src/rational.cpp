#include "fairdiv/rational.hpp"

#include <cctype>
#include <ostream>

namespace fairdiv {

Rational::Rational(long long num, long long den) : q_(static_cast<long>(num), static_cast<long>(den)) {
    if (den == 0) throw usage_error("Rational: zero denominator");
    q_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw usage_error("Rational: division by zero");
    return Rational(mpq_class(q_ / o.q_));
}

namespace {

bool is_integer_token(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    if (s[from] == '-') ++from;
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
    const std::size_t slash = text.find('/');
    bool ok;
    if (slash == std::string::npos) {
        ok = is_integer_token(text, 0, text.size());
    } else {
        // Denominator must be a plain positive integer (no sign).
        ok = is_integer_token(text, 0, slash) && slash + 1 < text.size() &&
             text[slash + 1] != '-' && is_integer_token(text, slash + 1, text.size());
    }
    if (!ok) throw usage_error("Rational: cannot parse '" + text + "' (expected \"p\" or \"p/q\")");

    mpq_class q;
    if (q.set_str(text, 10) != 0) throw usage_error("Rational: cannot parse '" + text + "'");
    if (sgn(q.get_den()) == 0) throw usage_error("Rational: zero denominator in '" + text + "'");
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::str() const {
    return q_.get_str();
}

Rational Rational::binomial(unsigned long n, unsigned long k) {
    if (k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(mpq_class(b));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace fairdiv
