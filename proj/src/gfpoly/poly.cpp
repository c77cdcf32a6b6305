#include <algorithm>
#include <random>

#include "dscurve/expr.hpp"
#include "dscurve/gfpoly.hpp"

namespace dsc::gf {

FieldPoly::FieldPoly(Field f, std::vector<Elem> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
    for (auto c : c_)
        if (c >= field_.q()) throw PreconditionError("coefficient out of range for F_" + std::to_string(field_.q()));
    trim();
}

void FieldPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FieldPoly FieldPoly::constant(const Field& f, Elem c) { return FieldPoly(f, {c}); }

FieldPoly FieldPoly::monomial(const Field& f, Elem c, std::size_t degree) {
    std::vector<Elem> v(degree + 1, 0);
    v[degree] = c;
    return FieldPoly(f, std::move(v));
}

Elem FieldPoly::eval(Elem x) const {
    Elem acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
    return acc;
}

FieldPoly FieldPoly::operator+(const FieldPoly& o) const {
    FieldPoly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = field_.add((*this)[i], o[i]);
    r.trim();
    return r;
}

FieldPoly FieldPoly::operator-() const {
    FieldPoly r(field_);
    r.c_.reserve(c_.size());
    for (auto c : c_) r.c_.push_back(field_.neg(c));
    return r;
}

FieldPoly FieldPoly::operator-(const FieldPoly& o) const {
    FieldPoly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = field_.sub((*this)[i], o[i]);
    r.trim();
    return r;
}

FieldPoly FieldPoly::operator*(const FieldPoly& o) const {
    FieldPoly r(field_);
    if (c_.empty() || o.c_.empty()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j]) r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], o.c_[j]));
    }
    r.trim();
    return r;
}

FieldPoly FieldPoly::scale(Elem s) const {
    FieldPoly r(field_);
    if (s == 0) return r;
    r.c_.reserve(c_.size());
    for (auto c : c_) r.c_.push_back(field_.mul(c, s));
    return r;
}

FieldPoly FieldPoly::shift(std::size_t n) const {
    if (c_.empty()) return *this;
    FieldPoly r(field_);
    r.c_.assign(n, 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

bool FieldPoly::operator<(const FieldPoly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

// ---------------------------------------------------------------------------

DivMod divmod(const FieldPoly& a, const FieldPoly& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    const Field& F = a.field();
    if (a.degree() < b.degree()) return {FieldPoly(F), a};
    std::vector<Elem> r = a.coeffs();
    std::vector<Elem> quo(a.degree() - b.degree() + 1, 0);
    Elem inv_lead = F.inv(b.lead());
    const auto& bc = b.coeffs();
    std::size_t db = bc.size() - 1;
    for (std::size_t i = r.size(); i-- > db;) {
        if (!r[i]) continue;
        Elem c = F.mul(r[i], inv_lead);
        quo[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j)
            if (bc[j]) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]));
    }
    r.resize(db);
    return {FieldPoly(F, std::move(quo)), FieldPoly(F, std::move(r))};
}

FieldPoly operator%(const FieldPoly& a, const FieldPoly& b) { return divmod(a, b).remainder; }

FieldPoly exact_div(const FieldPoly& a, const FieldPoly& b) {
    auto qr = divmod(a, b);
    if (!qr.remainder.is_zero()) throw InvariantError("polynomial division left a remainder");
    return qr.quotient;
}

FieldPoly monic(const FieldPoly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return a.scale(a.field().inv(a.lead()));
}

FieldPoly gcd(const FieldPoly& a, const FieldPoly& b) {
    FieldPoly x = a, y = b;
    while (!y.is_zero()) {
        auto r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

FieldPoly derivative(const FieldPoly& a) {
    const Field& F = a.field();
    std::vector<Elem> d;
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) d.push_back(F.mul(F.from_int(static_cast<long long>(i % F.p())), a[i]));
    return FieldPoly(F, std::move(d));
}

FieldPoly pow(const FieldPoly& a, std::uint64_t e) {
    FieldPoly r = FieldPoly::constant(a.field(), 1), b = a;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

FieldPoly powmod(const FieldPoly& a, std::uint64_t e, const FieldPoly& m) {
    FieldPoly r = FieldPoly::constant(a.field(), 1) % m, b = a % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        e >>= 1;
        if (e) b = (b * b) % m;
    }
    return r;
}

FieldPoly frobenius_power_mod(const FieldPoly& a, int n, const FieldPoly& m) {
    FieldPoly r = a % m;
    for (int i = 0; i < n; ++i) r = powmod(r, a.field().q(), m);
    return r;
}

FieldPoly frobenius_twist(const FieldPoly& a, int times) {
    std::uint64_t step = checked_pow(a.field().q(), times);
    if (a.is_zero()) return a;
    std::vector<Elem> c(static_cast<std::size_t>(a.degree()) * step + 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i * step] = a[i];
    return FieldPoly(a.field(), std::move(c));
}

FieldPoly embed(const FieldPoly& a, const Embedding& e) {
    std::vector<Elem> c;
    c.reserve(a.coeffs().size());
    for (auto x : a.coeffs()) c.push_back(e(x));
    return FieldPoly(e.target(), std::move(c));
}

// ---------------------------------------------------------------------------

bool is_irreducible(const FieldPoly& f0) {
    if (f0.degree() < 1) return false;
    if (f0.degree() == 1) return true;
    FieldPoly f = monic(f0);
    int d = static_cast<int>(f.degree());
    FieldPoly x = FieldPoly::variable(f.field());
    std::vector<FieldPoly> frob{x % f};  // x^{q^i} mod f
    for (int i = 1; i <= d; ++i) frob.push_back(powmod(frob.back(), f.field().q(), f));
    if (frob[d] != x % f) return false;
    for (auto [l, e] : factorize(static_cast<std::uint64_t>(d)))
        if (!gcd(frob[d / l] - x, f).is_one()) return false;
    return true;
}

std::vector<FieldPoly> irreducibles(const Field& F, int d) {
    if (d < 1) throw PreconditionError("degree must be at least 1");
    unsigned __int128 total = 1;
    for (int i = 0; i < d; ++i) {
        total *= F.q();
        if (total > (1u << 24)) throw SizeLimitError("q^d exceeds 2^24 in irreducible enumeration");
    }
    std::vector<FieldPoly> out;
    int kd = F.k() * d;
    if (d > 1 && kd <= Field::kMaxDegree) {
        // Minimal polynomials of the elements of F_{q^d} with Frobenius orbits of size d.
        Field E = Field::make(F.p(), kd);
        Embedding emb(F, E);
        std::vector<bool> seen(E.q(), false);
        std::vector<Elem> orbit;
        for (Elem z = 0; z < E.q(); ++z) {
            if (seen[z]) continue;
            orbit.clear();
            Elem w = z;
            do {
                seen[w] = true;
                orbit.push_back(w);
                w = E.pow(w, F.q());
            } while (w != z);
            if (static_cast<int>(orbit.size()) != d) continue;
            std::vector<Elem> m{1};
            for (Elem r : orbit) {
                std::vector<Elem> next(m.size() + 1, 0);
                for (std::size_t i = 0; i < m.size(); ++i) {
                    next[i + 1] = E.add(next[i + 1], m[i]);
                    next[i] = E.sub(next[i], E.mul(m[i], r));
                }
                m = std::move(next);
            }
            std::vector<Elem> c;
            for (auto v : m) c.push_back(emb.preimage(v));
            out.emplace_back(F, std::move(c));
        }
    } else {
        std::vector<Elem> c(d + 1, 0);
        c[d] = 1;
        for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(total); ++code) {
            std::uint64_t v = code;
            for (int i = 0; i < d; ++i) {
                c[i] = v % F.q();
                v /= F.q();
            }
            if (d > 1 && c[0] == 0) continue;
            FieldPoly f(F, c);
            if (is_irreducible(f)) out.push_back(std::move(f));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Distinct-degree split of a monic squarefree polynomial into (d, product of
// all degree-d irreducible factors).
std::vector<std::pair<int, FieldPoly>> ddf_blocks(const FieldPoly& f0) {
    std::vector<std::pair<int, FieldPoly>> out;
    FieldPoly g = monic(f0);
    const Field& F = g.field();
    FieldPoly x = FieldPoly::variable(F);
    FieldPoly h = x % g;
    for (int d = 1; 2 * d <= g.degree(); ++d) {
        h = powmod(h, F.q(), g);
        FieldPoly fac = gcd(h - x, g);
        if (!fac.is_one()) {
            out.emplace_back(d, fac);
            g = exact_div(g, fac);
            h = h % g;
        }
    }
    if (g.degree() > 0) out.emplace_back(static_cast<int>(g.degree()), g);
    return out;
}

FieldPoly pth_root(const FieldPoly& f) {
    const Field& F = f.field();
    std::uint64_t p = F.p();
    std::uint64_t root_exp = F.q() / p;  // c^{q/p} is the p-th root in F_q
    std::vector<Elem> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(F.pow(f[i], root_exp));
    return FieldPoly(F, std::move(c));
}

// Splits a monic squarefree product of degree-d irreducibles.
void equal_degree_split(const FieldPoly& g, int d, std::mt19937_64& rng, std::vector<FieldPoly>& out) {
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    const Field& F = g.field();
    std::uniform_int_distribution<Elem> coeff(0, F.q() - 1);
    for (;;) {
        std::vector<Elem> r(static_cast<std::size_t>(g.degree()), 0);
        for (auto& v : r) v = coeff(rng);
        FieldPoly a(F, r);
        if (a.degree() < 1) continue;
        FieldPoly b(F);
        if (F.p() == 2) {
            // Absolute trace map a + a^2 + ... + a^{2^{kd-1}} mod g.
            FieldPoly t = a % g, s = t;
            for (int i = 1; i < F.k() * d; ++i) {
                t = (t * t) % g;
                s = s + t;
            }
            b = s;
        } else {
            // (q^d - 1)/2 = (1 + q + ... + q^{d-1}) * (q - 1)/2.
            FieldPoly s = a % g, prod = s;
            for (int i = 1; i < d; ++i) {
                s = powmod(s, F.q(), g);
                prod = (prod * s) % g;
            }
            FieldPoly acc = powmod(prod, (F.q() - 1) / 2, g);
            b = acc - FieldPoly::constant(F, 1);
        }
        FieldPoly h = gcd(b, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree_split(h, d, rng, out);
            equal_degree_split(exact_div(g, h), d, rng, out);
            return;
        }
    }
}

}  // namespace

DegreeProfile ddf_degrees(const FieldPoly& f) {
    if (f.is_zero()) throw PreconditionError("distinct-degree factorization of the zero polynomial");
    if (!gcd(f, derivative(f)).is_one()) throw PreconditionError("distinct-degree factorization needs a squarefree input");
    DegreeProfile prof;
    for (auto& [d, block] : ddf_blocks(f)) prof[d] += static_cast<int>(block.degree() / d);
    return prof;
}

std::vector<std::pair<FieldPoly, int>> squarefree_decomposition(const FieldPoly& f0) {
    if (f0.is_zero()) throw PreconditionError("square-free decomposition of the zero polynomial");
    std::map<int, FieldPoly> parts;
    auto put = [&](const FieldPoly& g, int m) {
        auto it = parts.find(m);
        if (it == parts.end())
            parts.emplace(m, g);
        else
            it->second = it->second * g;
    };
    FieldPoly f = monic(f0);
    if (f.degree() > 0) {
        FieldPoly c = gcd(f, derivative(f));
        FieldPoly w = exact_div(f, c);
        int i = 1;
        while (!w.is_one()) {
            FieldPoly y = gcd(w, c);
            FieldPoly z = exact_div(w, y);
            if (z.degree() > 0) put(z, i);
            ++i;
            w = y;
            c = exact_div(c, y);
        }
        if (!c.is_one()) {
            int p = static_cast<int>(f.field().p());
            for (auto& [g, m] : squarefree_decomposition(pth_root(c))) put(g, m * p);
        }
    }
    std::vector<std::pair<FieldPoly, int>> out;
    for (auto& [m, g] : parts) out.emplace_back(g, m);
    return out;
}

std::vector<std::pair<FieldPoly, int>> factor(const FieldPoly& f) {
    std::vector<std::pair<FieldPoly, int>> out;
    std::mt19937_64 rng(0x5eed);
    for (auto& [g, m] : squarefree_decomposition(f)) {
        for (auto& [d, block] : ddf_blocks(g)) {
            std::vector<FieldPoly> pieces;
            equal_degree_split(block, d, rng, pieces);
            for (auto& piece : pieces) out.emplace_back(piece, m);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

std::vector<Elem> roots_in_field(const FieldPoly& f) {
    if (f.is_zero()) throw PreconditionError("roots of the zero polynomial");
    std::vector<Elem> out;
    if (f.degree() < 1) return out;
    const Field& F = f.field();
    FieldPoly x = FieldPoly::variable(F);
    FieldPoly g = gcd(powmod(x, F.q(), monic(f)) - x, f);
    if (g.degree() < 1) return out;
    std::mt19937_64 rng(0x5eed);
    std::vector<FieldPoly> lin;
    equal_degree_split(g, 1, rng, lin);
    for (auto& l : lin) out.push_back(F.neg(l[0]));
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t encode(const FieldPoly& f) {
    std::uint64_t q = f.field().q();
    unsigned __int128 code = 0;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        code = code * q + f[i];
        if (code >> 63) throw SizeLimitError("polynomial residue code exceeds 63 bits");
    }
    return static_cast<std::uint64_t>(code);
}

FieldPoly decode(const Field& F, std::uint64_t code) {
    std::vector<Elem> c;
    while (code) {
        c.push_back(code % F.q());
        code /= F.q();
    }
    return FieldPoly(F, std::move(c));
}

// ---------------------------------------------------------------------------

namespace {

// Sums in `a` are parenthesized so the printed form parses back unchanged.
std::string coeff_text(const Field& F, Elem c) {
    std::string s = F.format(c);
    return s.find('+') != std::string::npos ? "(" + s + ")" : s;
}

Elem decimal_mod(const std::string& digits, std::uint64_t p) {
    std::uint64_t r = 0;
    for (char c : digits) r = (r * 10 + static_cast<std::uint64_t>(c - '0')) % p;
    return r;
}

struct PolyRing {
    const Field& F;
    char var;
    FieldPoly number(const std::string& s) { return FieldPoly::constant(F, decimal_mod(s, F.p())); }
    FieldPoly symbol(const std::string& s) {
        if (s.size() == 1 && s[0] == var) return FieldPoly::variable(F);
        if (s == "a" && F.k() > 1) return FieldPoly::constant(F, F.gen());
        throw ParseError("unknown symbol '" + s + "' in a polynomial over F_" + std::to_string(F.q()));
    }
    FieldPoly add(const FieldPoly& a, const FieldPoly& b) { return a + b; }
    FieldPoly sub(const FieldPoly& a, const FieldPoly& b) { return a - b; }
    FieldPoly neg(const FieldPoly& a) { return -a; }
    FieldPoly mul(const FieldPoly& a, const FieldPoly& b) { return a * b; }
    FieldPoly div(const FieldPoly& a, const FieldPoly& b) {
        if (b.is_zero()) throw ParseError("division by zero");
        auto qr = divmod(a, b);
        if (!qr.remainder.is_zero()) throw ParseError("non-exact division in a polynomial; use a rational function");
        return qr.quotient;
    }
    FieldPoly pow(const FieldPoly& a, unsigned long e) { return gf::pow(a, e); }
};

struct RatRing {
    const Field& F;
    char var;
    RatFunc number(const std::string& s) { return RatFunc(FieldPoly::constant(F, decimal_mod(s, F.p()))); }
    RatFunc symbol(const std::string& s) { return RatFunc(PolyRing{F, var}.symbol(s)); }
    RatFunc add(const RatFunc& a, const RatFunc& b) { return a + b; }
    RatFunc sub(const RatFunc& a, const RatFunc& b) { return a - b; }
    RatFunc neg(const RatFunc& a) { return -a; }
    RatFunc mul(const RatFunc& a, const RatFunc& b) { return a * b; }
    RatFunc div(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw ParseError("division by zero");
        return a / b;
    }
    RatFunc pow(const RatFunc& a, unsigned long e) {
        RatFunc r(FieldPoly::constant(F, 1)), b = a;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }
};

}  // namespace

std::string format(const FieldPoly& f, char var) {
    if (f.is_zero()) return "0";
    const Field& F = f.field();
    std::string out;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        Elem c = f[i];
        if (!c) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += coeff_text(F, c);
            continue;
        }
        if (c != 1) out += coeff_text(F, c) + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

FieldPoly parse_poly(const Field& F, std::string_view text, char var) {
    auto tree = expr::parse(text);
    PolyRing ring{F, var};
    return expr::fold(*tree, ring);
}

// ---------------------------------------------------------------------------

RatFunc::RatFunc(FieldPoly num) : num_(std::move(num)), den_(FieldPoly::constant(num_.field(), 1)) {}

RatFunc::RatFunc(FieldPoly num, FieldPoly den) {
    if (den.is_zero()) throw PreconditionError("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = std::move(num);
        den_ = FieldPoly::constant(den.field(), 1);
        return;
    }
    FieldPoly g = gcd(num, den);
    if (!g.is_one()) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    Elem s = den.field().inv(den.lead());
    num_ = num.scale(s);
    den_ = den.scale(s);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw PreconditionError("division by the zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc frobenius_twist(const RatFunc& a, int times) {
    return RatFunc(frobenius_twist(a.num(), times), frobenius_twist(a.den(), times));
}

std::string format(const RatFunc& f, char var) {
    std::string n = format(f.num(), var);
    if (f.is_polynomial()) return n;
    std::string d = format(f.den(), var);
    auto wrap = [](const std::string& s) {
        return s.find_first_of("+*") == std::string::npos ? s : "(" + s + ")";
    };
    return wrap(n) + "/" + wrap(d);
}

RatFunc parse_ratfunc(const Field& F, std::string_view text, char var) {
    auto tree = expr::parse(text);
    RatRing ring{F, var};
    return expr::fold(*tree, ring);
}

// ---------------------------------------------------------------------------

Place Place::finite(FieldPoly pi) {
    if (!pi.is_monic() || !is_irreducible(pi)) throw PreconditionError("a finite place needs a monic irreducible polynomial");
    Place v;
    v.pi_ = std::move(pi);
    return v;
}

long multiplicity(const FieldPoly& f, const FieldPoly& pi) {
    if (f.is_zero()) throw PreconditionError("multiplicity in the zero polynomial");
    long m = 0;
    FieldPoly g = f;
    for (;;) {
        auto qr = divmod(g, pi);
        if (!qr.remainder.is_zero()) return m;
        g = std::move(qr.quotient);
        ++m;
    }
}

long ord_at(const RatFunc& f, const Place& v) {
    if (f.is_zero()) return kInfiniteValuation;
    if (v.is_infinity()) return f.den().degree() - f.num().degree();
    return multiplicity(f.num(), v.pi()) - multiplicity(f.den(), v.pi());
}

}  // namespace dsc::gf
