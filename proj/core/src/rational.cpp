#include "rht/rational.hpp"

#include "rht/errors.hpp"

#include <ostream>

namespace rht {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw Error("Rational: zero denominator");
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpq_class v{mpz_class(text), mpz_class(1)};
            return Rational(std::move(v));
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) throw std::invalid_argument(text);
        mpq_class v{mpz_class(num), mpz_class(den)};
        if (sgn(v.get_den()) == 0) throw ParseError("rational literal with zero denominator: " + text);
        v.canonicalize();
        return Rational(std::move(v));
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational literal: '" + text + "'");
    }
}

Rational Rational::operator-() const {
    Rational r(*this);
    r.v_ = -r.v_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error("Rational: inverse of zero");
    return Rational(1) / *this;
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::numerator_str() const { return v_.get_num().get_str(); }
std::string Rational::denominator_str() const { return v_.get_den().get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace rht
