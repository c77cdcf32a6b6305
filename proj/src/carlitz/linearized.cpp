#include <map>

#include "dscurve/carlitz.hpp"
#include "dscurve/error.hpp"

namespace dsc::carlitz {

namespace {

RatFunc rf_one(const Field& F) { return RatFunc(FieldPoly::constant(F, 1)); }

bool needs_parens(const RatFunc& c) {
    if (!c.is_polynomial()) return true;
    int terms = 0;
    for (Elem e : c.num().coeffs()) terms += e != 0;
    return terms > 1;
}

std::string format_coeff(const RatFunc& c) {
    std::string s = gf::format(c, 't');
    return needs_parens(c) ? "(" + s + ")" : s;
}

// Proper monic divisors of the polynomial with factorization fac.
std::vector<FieldPoly> proper_divisors(const Field& F, const std::vector<std::pair<FieldPoly, int>>& fac) {
    std::vector<FieldPoly> out{FieldPoly::constant(F, 1)};
    for (const auto& [pi, e] : fac) {
        std::vector<FieldPoly> next;
        for (const auto& d : out) {
            FieldPoly x = d;
            for (int k = 0; k <= e; ++k) {
                next.push_back(x);
                x = x * pi;
            }
        }
        out = std::move(next);
    }
    out.pop_back();  // the last product is the polynomial itself
    return out;
}

}  // namespace

void XPoly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

XPoly operator*(const XPoly& a, const XPoly& b) {
    XPoly r{a.field, {}};
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, RatFunc(a.field));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            if (!b.c[j].is_zero()) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    r.trim();
    return r;
}

XPoly exact_div(const XPoly& a, const XPoly& b) {
    if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
    XPoly rem = a;
    rem.trim();
    XPoly quo{a.field, {}};
    if (rem.degree() < b.degree()) {
        if (!rem.is_zero()) throw InvariantError("torsion division leaves a nonzero remainder");
        return quo;
    }
    quo.c.assign(rem.c.size() - b.c.size() + 1, RatFunc(a.field));
    RatFunc inv_lead = rf_one(a.field) / b.c.back();
    bool monic = b.c.back() == rf_one(a.field);
    for (long i = rem.degree(); i >= b.degree(); --i) {
        if (rem.c[i].is_zero()) continue;
        RatFunc k = monic ? rem.c[i] : rem.c[i] * inv_lead;
        std::size_t shift = static_cast<std::size_t>(i - b.degree());
        quo.c[shift] = k;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            if (!b.c[j].is_zero()) rem.c[shift + j] = rem.c[shift + j] - k * b.c[j];
    }
    rem.trim();
    if (!rem.is_zero()) throw InvariantError("torsion division leaves a nonzero remainder");
    quo.trim();
    return quo;
}

std::vector<FieldPoly> reduce_mod(const XPoly& a, const FieldPoly& pi) {
    if (pi.degree() < 1) throw PreconditionError("reduction needs a nonconstant modulus");
    std::uint64_t residue = gf::checked_pow(pi.field().q(), static_cast<int>(pi.degree()));
    std::vector<FieldPoly> out;
    out.reserve(a.c.size());
    for (const auto& c : a.c) {
        FieldPoly d = c.den() % pi;
        if (d.is_zero()) throw PreconditionError("coefficient has a pole at the reducing prime");
        FieldPoly inv = gf::powmod(d, residue - 2, pi);
        out.push_back((c.num() % pi) * inv % pi);
    }
    return out;
}

FieldPoly specialize(const XPoly& a, const FieldPoly& pi) {
    auto res = reduce_mod(a, pi);
    const Field& F = pi.field();
    if (pi.degree() == 1) {
        Elem root = F.neg(F.div(pi[0], pi[1]));
        std::vector<Elem> c;
        for (const auto& r : res) c.push_back(r.eval(root));
        return FieldPoly(F, std::move(c));
    }
    Field E = Field::make(F.p(), F.k() * static_cast<int>(pi.degree()));
    gf::Embedding emb(F, E);
    auto roots = gf::roots_in_field(gf::embed(pi, emb));
    if (roots.empty()) throw PreconditionError(gf::format(pi) + " is not irreducible");
    std::vector<Elem> c;
    for (const auto& r : res) c.push_back(gf::embed(r, emb).eval(roots[0]));
    return FieldPoly(E, std::move(c));
}

bool is_polynomial(const XPoly& a) {
    for (const auto& c : a.c)
        if (!c.is_polynomial()) return false;
    return true;
}

XPoly parse_xpoly(const Field& F, std::string_view text) {
    auto m = gf::parse_mpoly(F, text, {"x", "t"});
    XPoly r{F, {}};
    for (const auto& [mono, c] : m.terms()) {
        std::size_t i = mono[0];
        if (r.c.size() <= i) r.c.resize(i + 1, RatFunc(F));
        r.c[i] = r.c[i] + RatFunc(FieldPoly::monomial(F, c, mono[1]));
    }
    r.trim();
    return r;
}

std::string format(const XPoly& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (long i = a.degree(); i >= 0; --i) {
        const RatFunc& c = a.c[i];
        if (c.is_zero()) continue;
        if (!s.empty()) s += "+";
        std::string mono = i == 0 ? "" : i == 1 ? "x" : "x^" + std::to_string(i);
        if (i == 0)
            s += gf::format(c, 't');
        else if (c == rf_one(a.field))
            s += mono;
        else
            s += format_coeff(c) + "*" + mono;
    }
    return s;
}

// ---------------------------------------------------------------------------

LinearizedPoly::LinearizedPoly(Field F, std::vector<RatFunc> coeffs) : field_(std::move(F)), c_(std::move(coeffs)) {
    trim();
}

void LinearizedPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

LinearizedPoly LinearizedPoly::identity(const Field& F) { return LinearizedPoly(F, {rf_one(F)}); }

LinearizedPoly LinearizedPoly::scalar(const RatFunc& c) { return LinearizedPoly(c.field(), {c}); }

LinearizedPoly LinearizedPoly::operator+(const LinearizedPoly& o) const {
    std::vector<RatFunc> r(std::max(c_.size(), o.c_.size()), RatFunc(field_));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return LinearizedPoly(field_, std::move(r));
}

LinearizedPoly LinearizedPoly::operator*(const LinearizedPoly& o) const {
    if (c_.empty() || o.c_.empty()) return LinearizedPoly(field_);
    std::vector<RatFunc> r(c_.size() + o.c_.size() - 1, RatFunc(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (!o.c_[j].is_zero())
                r[i + j] = r[i + j] + c_[i] * gf::frobenius_twist(o.c_[j], static_cast<int>(i));
    }
    return LinearizedPoly(field_, std::move(r));
}

LinearizedPoly LinearizedPoly::scale(const RatFunc& c) const {
    std::vector<RatFunc> r = c_;
    for (auto& x : r) x = c * x;
    return LinearizedPoly(field_, std::move(r));
}

XPoly LinearizedPoly::to_xpoly() const {
    XPoly r{field_, {}};
    if (c_.empty()) return r;
    std::uint64_t q = field_.q();
    std::uint64_t top = gf::checked_pow(q, static_cast<int>(c_.size() - 1));
    if (top > (1u << 20)) throw SizeLimitError("x-degree " + std::to_string(top) + " is too large to expand");
    r.c.assign(top + 1, RatFunc(field_));
    std::uint64_t e = 1;
    for (std::size_t i = 0; i < c_.size(); ++i, e *= q) r.c[e] = c_[i];
    return r;
}

LinearizedPoly action_from_generator(const LinearizedPoly& gen, const FieldPoly& M) {
    if (M.is_zero()) throw PreconditionError("the action needs a nonzero polynomial");
    const Field& F = gen.field();
    // Horner in the skew algebra: [M] = M_0 + g (M_1 + g (M_2 + ...)).
    LinearizedPoly acc(F);
    for (long j = M.degree(); j >= 0; --j) {
        acc = gen * acc;
        if (M[j] != 0) acc = acc + LinearizedPoly::scalar(RatFunc(FieldPoly::constant(F, M[j])));
    }
    return acc;
}

LinearizedPoly carlitz_action(const FieldPoly& M) {
    const Field& F = M.field();
    LinearizedPoly gen(F, {RatFunc(FieldPoly::variable(F)), rf_one(F)});
    return action_from_generator(gen, M);
}

XPoly torsion_phi(const LinearizedPoly& gen, const FieldPoly& M) {
    if (!M.is_monic() || M.degree() < 1) throw PreconditionError("Phi_M needs a monic M of positive degree");
    const Field& F = M.field();
    std::uint64_t top = gf::checked_pow(F.q(), static_cast<int>(gen.tau_degree() * M.degree()));
    if (top > 4096) throw SizeLimitError("x-degree " + std::to_string(top) + " of [M] exceeds 4096");
    auto fac = gf::factor(M);
    std::map<FieldPoly, XPoly> memo;
    XPoly x{F, {RatFunc(F), rf_one(F)}};
    auto phi = [&](auto&& self, const FieldPoly& Q) -> XPoly {
        if (Q.is_one()) return x;
        auto it = memo.find(Q);
        if (it != memo.end()) return it->second;
        std::vector<std::pair<FieldPoly, int>> qf;
        for (const auto& [pi, e] : fac) {
            int k = static_cast<int>(gf::multiplicity(Q, pi));
            if (k > 0) qf.emplace_back(pi, k);
        }
        XPoly A = action_from_generator(gen, Q).to_xpoly();
        for (const auto& D : proper_divisors(F, qf)) A = exact_div(A, self(self, D));
        memo.emplace(Q, A);
        return A;
    };
    return phi(phi, M);
}

XPoly carlitz_phi(const FieldPoly& M) {
    const Field& F = M.field();
    LinearizedPoly gen(F, {RatFunc(FieldPoly::variable(F)), rf_one(F)});
    return torsion_phi(gen, M);
}

}  // namespace dsc::carlitz
