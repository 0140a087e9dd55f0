#include "rht/cdga.hpp"
#include "rht/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>

namespace rht {

namespace {

int monomial_degree(const GenMonomial& m, const std::vector<GeneratorSpec>& gens) {
    int d = 0;
    for (const auto& [g, e] : m) d += gens[g].degree * e;
    return d;
}

// Sorted copy with zero exponents dropped; nullopt when an odd generator
// appears with exponent >= 2 (the monomial is zero).
std::optional<GenMonomial> normal_monomial(const GenMonomial& m, const std::vector<GeneratorSpec>& gens) {
    GenMonomial out;
    for (const auto& [g, e] : m) {
        if (e == 0) continue;
        if (gens[g].degree % 2 != 0 && e > 1) return std::nullopt;
        out.emplace_back(g, e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string monomial_name(const GenMonomial& m, const std::vector<GeneratorSpec>& gens) {
    if (m.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, e] : m) {
        if (!first) os << "*";
        first = false;
        os << gens[g].name;
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

} // namespace

Cdga Cdga::free_algebra(std::vector<GeneratorSpec> gens, int k_max) {
    Cdga a;
    a.kind_ = Kind::Free;

    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].degree < 2)
            throw UsageError("free_algebra: generator '" + gens[i].name + "' has degree " +
                             std::to_string(gens[i].degree) + " < 2");
        if (gens[i].degree > k_max)
            throw UsageError("free_algebra: generator '" + gens[i].name + "' exceeds k_max");
        for (size_t j = 0; j < i; ++j)
            if (gens[j].name == gens[i].name)
                throw ValidationError("free_algebra: duplicate generator name '" + gens[i].name + "'");
    }
    a.gens_ = std::move(gens);

    // Monomial basis in Koszul normal form, lexicographically descending
    // exponent vectors within each degree (earlier generators weigh more).
    std::vector<GenMonomial> all;
    GenMonomial current;
    std::function<void(size_t, int)> emit = [&](size_t gi, int deg_left) {
        if (gi == a.gens_.size()) {
            all.push_back(current);
            return;
        }
        const auto& g = a.gens_[gi];
        int cap = deg_left / g.degree;
        if (g.degree % 2 != 0) cap = std::min(cap, 1);
        for (int e = cap; e >= 0; --e) {
            if (e > 0) current.emplace_back(static_cast<int>(gi), e);
            emit(gi + 1, deg_left - e * g.degree);
            if (e > 0) current.pop_back();
        }
    };
    emit(0, k_max);

    GradedVectorSpace space(k_max);
    std::vector<std::vector<GenMonomial>> by_deg(k_max + 1);
    for (auto& m : all) by_deg[monomial_degree(m, a.gens_)].push_back(m);
    for (int d = 0; d <= k_max; ++d) {
        for (auto& m : by_deg[d]) {
            int id = space.add(monomial_name(m, a.gens_), d);
            a.monomial_ids_.emplace(m, id);
            a.monomials_.push_back(m);
            (void)id;
        }
    }
    a.space_ = std::move(space);
    a.unit_ = a.monomial_ids_.at({});

    // Products on all in-range basis pairs, both orders computed
    // independently so the commutativity check is not vacuous.
    const int n = a.space_.total_dim();
    for (int i = 0; i < n; ++i) {
        int di = a.space_.degree(i);
        for (int j = 0; j < n; ++j) {
            if (di + a.space_.degree(j) > k_max) continue;
            auto [sign, merged] = a.merge_monomials(a.monomials_[i], a.monomials_[j]);
            if (sign == 0) continue;
            int k = a.monomial_ids_.at(merged);
            a.products_[{i, j}] = Element::basis(k) * Rational(sign);
        }
    }

    // Differentials: parse/validate generator differentials, then extend as a
    // derivation to every basis monomial.
    std::vector<Element> dgen(a.gens_.size());
    for (size_t gi = 0; gi < a.gens_.size(); ++gi) {
        auto& g = a.gens_[gi];
        Element dg;
        for (const auto& [mon, c] : g.d) {
            for (const auto& [mg, me] : mon) {
                if (mg >= static_cast<int>(gi))
                    throw ValidationError("free_algebra: differential of '" + g.name +
                                          "' uses generator '" + a.gens_[mg].name +
                                          "' that is not listed earlier");
                (void)me;
            }
            if (monomial_degree(mon, a.gens_) != g.degree + 1)
                throw ValidationError("free_algebra: differential of '" + g.name +
                                      "' has a term of degree " +
                                      std::to_string(monomial_degree(mon, a.gens_)) +
                                      ", expected " + std::to_string(g.degree + 1));
            if (g.degree + 1 > k_max) continue; // beyond truncation
            auto norm = normal_monomial(mon, a.gens_);
            if (!norm) continue; // odd square, term is zero
            int id = a.monomial_ids_.at(*norm);
            dg += Element::basis(id) * c;
        }
        dgen[gi] = std::move(dg);
    }

    a.d_.assign(n, Element());
    for (int id = 0; id < n; ++id) {
        const GenMonomial& m = a.monomials_[id];
        Element dm;
        int prefix_deg = 0;
        for (size_t t = 0; t < m.size(); ++t) {
            auto [g, e] = m[t];
            const int gdeg = a.gens_[g].degree;
            if (!dgen[g].is_zero()) {
                // Differentiate the last occurrence of g: sign from the degree
                // of everything before it, then Koszul costs of moving d(g)
                // back into sorted position past the suffix.
                GenMonomial rest = m;
                if (e == 1) rest.erase(rest.begin() + t);
                else rest[t].second = e - 1;

                int suffix_deg = 0;
                for (size_t s = t + 1; s < m.size(); ++s)
                    suffix_deg += a.gens_[m[s].first].degree * m[s].second;

                int lead_parity = (prefix_deg + (e - 1) * gdeg) % 2;
                for (const auto& [dtid, dc] : dgen[g].terms()) {
                    const GenMonomial& dmon = a.monomials_[dtid];
                    int move_parity = (suffix_deg % 2) * (a.space_.degree(dtid) % 2);
                    auto [sgn, merged] = a.merge_monomials(rest, dmon);
                    if (sgn == 0) continue;
                    if (monomial_degree(merged, a.gens_) > k_max) continue; // beyond truncation
                    int sign = ((lead_parity + move_parity) % 2 == 0 ? 1 : -1) * sgn;
                    dm += Element::basis(a.monomial_ids_.at(merged)) * (Rational(e) * dc * Rational(sign));
                }
            }
            prefix_deg += gdeg * e;
        }
        a.d_[id] = std::move(dm);
    }

    // d raises degree by one inside the truncation; terms that would land
    // beyond k_max were dropped above, which only happens for basis elements
    // of top degree (their d is not consulted by in-range operations).
    for (size_t gi = 0; gi < a.gens_.size(); ++gi) {
        int gid = a.monomial_ids_.at({{static_cast<int>(gi), 1}});
        if (a.gens_[gi].degree + 2 <= k_max) {
            Element dd = a.d(a.d_[gid]);
            if (!dd.is_zero())
                throw ValidationError("free_algebra: d*d != 0 at generator '" + a.gens_[gi].name +
                                      "': d(d(" + a.gens_[gi].name + ")) = " + dd.str(a.space_));
        }
    }
    return a;
}

GenPolynomial parse_polynomial(const std::string& text, const std::vector<GeneratorSpec>& gens) {
    struct Tok {
        enum Type { Num, Name, Star, Caret, Plus, Minus, Slash, End } type;
        std::string s;
        size_t pos;
    };
    std::vector<Tok> toks;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        if (isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) ++i;
            toks.push_back({Tok::Num, text.substr(start, i - start), start});
        } else if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() &&
                   (isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            toks.push_back({Tok::Name, text.substr(start, i - start), start});
        } else {
            Tok::Type t;
            switch (c) {
                case '*': t = Tok::Star; break;
                case '^': t = Tok::Caret; break;
                case '+': t = Tok::Plus; break;
                case '-': t = Tok::Minus; break;
                case '/': t = Tok::Slash; break;
                default:
                    throw ParseError("polynomial: unexpected character '" + std::string(1, c) +
                                     "' at position " + std::to_string(i));
            }
            toks.push_back({t, std::string(1, c), start});
            ++i;
        }
    }
    toks.push_back({Tok::End, "", text.size()});

    size_t p = 0;
    auto expect_num = [&]() -> long {
        if (toks[p].type != Tok::Num)
            throw ParseError("polynomial: expected number at position " + std::to_string(toks[p].pos));
        long v = std::stol(toks[p].s);
        ++p;
        return v;
    };

    auto gen_index = [&](const std::string& name, size_t pos) -> int {
        for (size_t g = 0; g < gens.size(); ++g)
            if (gens[g].name == name) return static_cast<int>(g);
        throw ParseError("polynomial: unknown generator '" + name + "' at position " +
                         std::to_string(pos));
    };

    std::map<GenMonomial, Rational> acc;
    bool first_term = true;
    while (toks[p].type != Tok::End) {
        Rational coeff(1);
        if (toks[p].type == Tok::Plus) {
            if (first_term) throw ParseError("polynomial: leading '+'");
            ++p;
        } else if (toks[p].type == Tok::Minus) {
            coeff = Rational(-1);
            ++p;
        } else if (!first_term) {
            throw ParseError("polynomial: expected '+' or '-' at position " +
                             std::to_string(toks[p].pos));
        }
        first_term = false;

        bool saw_factor = false;
        std::map<int, int> exps;
        while (true) {
            if (toks[p].type == Tok::Num) {
                long num = expect_num();
                long den = 1;
                if (toks[p].type == Tok::Slash) {
                    ++p;
                    den = expect_num();
                    if (den == 0) throw ParseError("polynomial: zero denominator");
                }
                coeff *= Rational(num, den);
                saw_factor = true;
            } else if (toks[p].type == Tok::Name) {
                int g = gen_index(toks[p].s, toks[p].pos);
                ++p;
                int e = 1;
                if (toks[p].type == Tok::Caret) {
                    ++p;
                    e = static_cast<int>(expect_num());
                    if (e < 0) throw ParseError("polynomial: negative exponent");
                }
                exps[g] += e;
                saw_factor = true;
            } else {
                break;
            }
            if (toks[p].type == Tok::Star) {
                ++p;
                if (toks[p].type != Tok::Num && toks[p].type != Tok::Name)
                    throw ParseError("polynomial: dangling '*' at position " +
                                     std::to_string(toks[p].pos));
                continue;
            }
            break;
        }
        if (!saw_factor)
            throw ParseError("polynomial: empty term at position " + std::to_string(toks[p].pos));
        GenMonomial mon;
        for (const auto& [g, e] : exps)
            if (e > 0) mon.emplace_back(g, e);
        acc[mon] += coeff;
    }

    GenPolynomial out;
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.emplace_back(m, c);
    return out;
}

std::string polynomial_text(const GenPolynomial& p, const std::vector<GeneratorSpec>& gens) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p) {
        Rational cc = c;
        if (!first) {
            os << (cc.sign() < 0 ? " - " : " + ");
            if (cc.sign() < 0) cc = -cc;
        }
        first = false;
        bool need_star = false;
        if (!cc.is_one() || m.empty()) {
            os << cc.str();
            need_star = true;
        }
        for (const auto& [g, e] : m) {
            if (need_star) os << "*";
            os << gens[g].name;
            if (e > 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

Element Cdga::polynomial_element(const GenPolynomial& p) const {
    if (kind_ != Kind::Free) throw UsageError("polynomial_element: algebra is not free-presented");
    Element out;
    for (const auto& [mon, c] : p) {
        GenMonomial sorted;
        std::map<int, int> exps;
        for (const auto& [g, e] : mon) exps[g] += e;
        bool zero = false;
        for (const auto& [g, e] : exps) {
            if (e == 0) continue;
            if (gens_[g].degree % 2 != 0 && e > 1) {
                zero = true;
                break;
            }
            sorted.emplace_back(g, e);
        }
        if (zero) continue;
        auto it = monomial_ids_.find(sorted);
        if (it == monomial_ids_.end())
            throw DegreeOverflowError("polynomial term beyond truncation");
        out += Element::basis(it->second) * c;
    }
    return out;
}

} // namespace rht
