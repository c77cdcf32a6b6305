#include <algorithm>
#include <numeric>

#include "dscurve/expr.hpp"
#include "dscurve/gfpoly.hpp"

namespace dsc::gf {

void MPoly::add_term(const Monomial& m, Elem c) {
    if (m.size() != vars_.size()) throw PreconditionError("monomial arity does not match the variable list");
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second = field_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

long MPoly::degree() const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(std::accumulate(m.begin(), m.end(), 0ul)));
    return d;
}

bool MPoly::is_homogeneous() const {
    long d = degree();
    for (const auto& [m, c] : terms_)
        if (static_cast<long>(std::accumulate(m.begin(), m.end(), 0ul)) != d) return false;
    return true;
}

long MPoly::degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m.at(var)));
    return d;
}

MPoly MPoly::partial(std::size_t var) const {
    MPoly r(field_, vars_);
    for (const auto& [m, c] : terms_) {
        if (m.at(var) == 0) continue;
        Monomial n = m;
        --n[var];
        r.add_term(n, field_.mul(c, field_.from_int(static_cast<long long>(m[var] % field_.p()))));
    }
    return r;
}

FieldPoly MPoly::as_univariate(std::size_t var) const {
    std::vector<Elem> c;
    for (const auto& [m, v] : terms_) {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != var && m[i] != 0) throw PreconditionError("polynomial involves more than one variable");
        if (c.size() <= m[var]) c.resize(m[var] + 1, 0);
        c[m[var]] = v;
    }
    return FieldPoly(field_, std::move(c));
}

Elem MPoly::eval(const Embedding& emb, std::span<const Elem> point) const {
    if (point.size() != vars_.size()) throw PreconditionError("point arity does not match the variable list");
    const Field& E = emb.target();
    Elem acc = 0;
    for (const auto& [m, c] : terms_) {
        Elem t = emb(c);
        for (std::size_t i = 0; i < m.size() && t; ++i)
            if (m[i]) t = E.mul(t, E.pow(point[i], m[i]));
        acc = E.add(acc, t);
    }
    return acc;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(field_, vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(field_, vars_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m(m1.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
            r.add_term(m, field_.mul(c1, c2));
        }
    return r;
}

MPoly MPoly::pow(unsigned long e) const {
    MPoly r(field_, vars_);
    r.add_term(Monomial(vars_.size(), 0), 1);
    MPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

namespace {

struct MRing {
    const Field& F;
    const std::vector<std::string>& vars;

    MPoly constant(Elem c) {
        MPoly r(F, vars);
        r.add_term(MPoly::Monomial(vars.size(), 0), c);
        return r;
    }
    MPoly number(const std::string& s) {
        std::uint64_t v = 0;
        for (char c : s) v = (v * 10 + static_cast<std::uint64_t>(c - '0')) % F.p();
        return constant(v);
    }
    MPoly symbol(const std::string& s) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == s) {
                MPoly r(F, vars);
                MPoly::Monomial m(vars.size(), 0);
                m[i] = 1;
                r.add_term(m, 1);
                return r;
            }
        if (s == "a" && F.k() > 1) return constant(F.gen());
        // Juxtaposed variables such as "xy" arrive as a single identifier.
        if (s.size() > 1) {
            MPoly r = constant(1);
            for (char c : s) r = r * symbol(std::string(1, c));
            return r;
        }
        throw ParseError("unknown symbol '" + s + "' in a curve equation");
    }
    MPoly add(const MPoly& a, const MPoly& b) { return a + b; }
    MPoly sub(const MPoly& a, const MPoly& b) { return a - b; }
    MPoly neg(const MPoly& a) { return -a; }
    MPoly mul(const MPoly& a, const MPoly& b) { return a * b; }
    MPoly div(const MPoly& a, const MPoly& b) {
        if (b.degree() != 0) throw ParseError("division by a non-constant in a curve equation");
        Elem c = b.terms().begin()->second;
        return a * constant(F.inv(c));
    }
    MPoly pow(const MPoly& a, unsigned long e) { return a.pow(e); }
};

}  // namespace

MPoly parse_mpoly(const Field& F, std::string_view text, const std::vector<std::string>& vars) {
    MRing ring{F, vars};
    auto eq = text.find('=');
    if (eq == std::string_view::npos) return expr::fold(*expr::parse(text), ring);
    if (text.find('=', eq + 1) != std::string_view::npos) throw ParseError("more than one '=' in an equation");
    auto lhs = expr::fold(*expr::parse(text.substr(0, eq)), ring);
    auto rhs = expr::fold(*expr::parse(text.substr(eq + 1)), ring);
    return lhs - rhs;
}

std::string format(const MPoly& p) {
    if (p.is_zero()) return "0";
    const Field& F = p.field();
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += p.vars()[i];
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        std::string cs = F.format(c);
        if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
        if (!out.empty()) out += "+";
        if (mono.empty())
            out += cs;
        else if (c == 1)
            out += mono;
        else
            out += cs + "*" + mono;
    }
    return out;
}

}  // namespace dsc::gf
