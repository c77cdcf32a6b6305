#include <algorithm>

#include "dscurve/expr.hpp"
#include "dscurve/zeta.hpp"

namespace dsc::zeta {

ExactPoly::ExactPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

ExactPoly ExactPoly::from_ints(const std::vector<Int>& coeffs) {
    std::vector<Rat> c(coeffs.begin(), coeffs.end());
    return ExactPoly(std::move(c));
}

ExactPoly ExactPoly::monomial(const Rat& c, std::size_t degree) {
    std::vector<Rat> v(degree + 1);
    v[degree] = c;
    return ExactPoly(std::move(v));
}

void ExactPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool ExactPoly::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& c) { return c.get_den() == 1; });
}

std::vector<Int> ExactPoly::integer_coeffs() const {
    std::vector<Int> out;
    out.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].get_den() != 1)
            throw PreconditionError("coefficient of degree " + std::to_string(i) + " is not an integer");
        out.push_back(c_[i].get_num());
    }
    return out;
}

Rat ExactPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

ExactPoly ExactPoly::operator+(const ExactPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return ExactPoly(std::move(r));
}

ExactPoly ExactPoly::operator-(const ExactPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
    return ExactPoly(std::move(r));
}

ExactPoly ExactPoly::operator-() const { return scale(-1); }

ExactPoly ExactPoly::operator*(const ExactPoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<Rat> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return ExactPoly(std::move(r));
}

ExactPoly ExactPoly::scale(const Rat& s) const {
    std::vector<Rat> r = c_;
    for (auto& c : r) c *= s;
    return ExactPoly(std::move(r));
}

ExactDivMod divmod(const ExactPoly& a, const ExactPoly& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    if (a.degree() < b.degree()) return {ExactPoly(), a};
    std::vector<Rat> r = a.coeffs();
    std::vector<Rat> quo(a.degree() - b.degree() + 1);
    const auto& bc = b.coeffs();
    std::size_t db = bc.size() - 1;
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i] == 0) continue;
        Rat c = r[i] / bc[db];
        quo[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= c * bc[j];
    }
    r.resize(db);
    return {ExactPoly(std::move(quo)), ExactPoly(std::move(r))};
}

ExactPoly derivative(const ExactPoly& a) {
    std::vector<Rat> d;
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) d.push_back(a[i] * static_cast<unsigned long>(i));
    return ExactPoly(std::move(d));
}

ExactPoly gcd(const ExactPoly& a, const ExactPoly& b) {
    ExactPoly x = primitive_part(a), y = primitive_part(b);
    while (!y.is_zero()) {
        auto r = primitive_part(divmod(x, y).remainder);
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    return x.scale(1 / x.lead());
}

ExactPoly primitive_part(const ExactPoly& a) {
    if (a.is_zero()) return a;
    Int l = 1, g = 0;
    for (const auto& c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Rat> r;
    for (const auto& c : a.coeffs()) {
        Rat v = c * l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
        r.push_back(v);
    }
    for (auto& c : r) c /= g;
    return ExactPoly(std::move(r));
}

ExactPoly pow(const ExactPoly& a, unsigned e) {
    ExactPoly r = ExactPoly::monomial(1, 0), b = a;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::string format(const ExactPoly& p, char var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        const Rat& c = p.coeffs()[i];
        if (c == 0) continue;
        bool neg = c < 0;
        Rat mag = abs(c);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? "-" : "+";
        if (i == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

namespace {

struct ExactRing {
    std::string var;
    ExactPoly number(const std::string& s) { return ExactPoly({Rat(Int(s))}); }
    ExactPoly symbol(const std::string& s) {
        if (s.size() != 1) throw ParseError("unexpected identifier '" + s + "' in an integer polynomial");
        if (var.empty()) var = s;
        if (s != var) throw ParseError("polynomial mixes variables '" + var + "' and '" + s + "'");
        return ExactPoly::monomial(1, 1);
    }
    ExactPoly add(const ExactPoly& a, const ExactPoly& b) { return a + b; }
    ExactPoly sub(const ExactPoly& a, const ExactPoly& b) { return a - b; }
    ExactPoly neg(const ExactPoly& a) { return -a; }
    ExactPoly mul(const ExactPoly& a, const ExactPoly& b) { return a * b; }
    ExactPoly div(const ExactPoly& a, const ExactPoly& b) {
        if (b.degree() != 0) throw ParseError("division by a non-constant polynomial");
        return a.scale(1 / b.lead());
    }
    ExactPoly pow(const ExactPoly& a, unsigned long e) {
        if (e > 1000000) throw ParseError("exponent too large");
        return zeta::pow(a, static_cast<unsigned>(e));
    }
};

std::vector<Int> to_primitive_ints(const ExactPoly& p) {
    auto pp = primitive_part(p);
    return pp.integer_coeffs();
}

// Sign of p(num/den) via the homogenized sum of p_i num^i den^(n-1-i), den > 0.
int sign_eval(const std::vector<Int>& p, const Rat& x) {
    if (p.empty()) return 0;
    const Int& num = x.get_num();
    const Int& den = x.get_den();
    Int acc = p.back(), dpow = 1;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        dpow *= den;
        acc = acc * num + p[i] * dpow;
    }
    return sgn(acc);
}

}  // namespace

ExactPoly parse_exact(std::string_view text) {
    auto tree = expr::parse(text);
    ExactRing ring;
    return expr::fold(*tree, ring);
}

// ---------------------------------------------------------------------------

SturmChain::SturmChain(const ExactPoly& f) {
    if (f.is_zero()) throw PreconditionError("Sturm chain of the zero polynomial");
    ExactPoly a = primitive_part(f), b = primitive_part(derivative(f));
    seq_.push_back(to_primitive_ints(a));
    while (!b.is_zero()) {
        seq_.push_back(to_primitive_ints(b));
        ExactPoly r = divmod(a, b).remainder;
        a = b;
        b = primitive_part(-r);
    }
}

int SturmChain::variations(const Rat& x) const {
    int v = 0, last = 0;
    for (const auto& p : seq_) {
        int s = sign_eval(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int SturmChain::variations_at_infinity(bool positive) const {
    int v = 0, last = 0;
    for (const auto& p : seq_) {
        int s = sgn(p.back());
        if (!positive && (p.size() - 1) % 2 == 1) s = -s;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int SturmChain::count(const Rat& a, const Rat& b) const {
    if (b <= a) return 0;
    return variations(a) - variations(b);
}

int SturmChain::count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

std::vector<RootInterval> isolate_real_roots(const ExactPoly& f, const Rat& width) {
    if (f.is_zero()) throw PreconditionError("root isolation of the zero polynomial");
    std::vector<RootInterval> out;
    if (f.degree() < 1) return out;
    ExactPoly g = divmod(f, gcd(f, derivative(f))).quotient;
    SturmChain chain(g);
    Rat bound = 0;
    for (std::size_t i = 0; i + 1 < g.coeffs().size(); ++i) bound = std::max(bound, Rat(abs(g[i] / g.lead())));
    bound += 1;
    struct Frame {
        Rat lo, hi;
        int n;
    };
    std::vector<Frame> stack{{-bound, bound, chain.count(-bound, bound)}};
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        if (fr.n == 0) continue;
        if (fr.n == 1 && g.eval(fr.hi) == 0) {
            out.push_back({fr.hi, fr.hi});
            continue;
        }
        if (fr.n == 1 && fr.hi - fr.lo <= width) {
            out.push_back({fr.lo, fr.hi});
            continue;
        }
        Rat mid = (fr.lo + fr.hi) / 2;
        int left = chain.count(fr.lo, mid);
        // Push the right half first so the left half is processed first.
        stack.push_back({mid, fr.hi, fr.n - left});
        stack.push_back({fr.lo, mid, left});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

Int floor_two_sqrt(const Int& n) {
    if (n < 0) throw PreconditionError("square root of a negative integer");
    Int r;
    Int four_n = 4 * n;
    mpz_sqrt(r.get_mpz_t(), four_n.get_mpz_t());
    return r;
}

bool is_weil_valid(const ExactPoly& h0, const Int& q) {
    if (h0.is_zero()) throw PreconditionError("Weil validity of the zero polynomial");
    if (q < 1) throw PreconditionError("q must be positive");
    if (h0.degree() < 1) return true;
    ExactPoly f = primitive_part(h0);
    f = primitive_part(divmod(f, gcd(f, derivative(f))).quotient);

    // Boundary roots are valid; remove them so the counting below never
    // meets a root at +-2 sqrt q.
    ExactPoly boundary = ExactPoly({Rat(-4 * q), 0, 1});
    if (f.degree() >= 2 && divmod(f, boundary).remainder.is_zero()) f = divmod(f, boundary).quotient;
    if (mpz_perfect_square_p(q.get_mpz_t())) {
        Int s;
        mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
        for (int sign : {1, -1}) {
            ExactPoly lin({Rat(-2 * s * sign), 1});
            if (divmod(f, lin).remainder.is_zero()) f = divmod(f, lin).quotient;
        }
    }
    if (f.degree() < 1) return true;
    SturmChain chain(f);
    long deg = f.degree();
    if (chain.count_all() < deg) return false;
    auto closed = [&](const Rat& c) { return chain.count(-c, c) + (f.eval(-c) == 0 ? 1 : 0); };
    Int scale = 1;
    for (int k = 0; k < 4096; ++k, scale *= 2) {
        Int r;
        Int target = 4 * q * scale * scale;
        mpz_sqrt(r.get_mpz_t(), target.get_mpz_t());
        Rat inner(r, scale), outer(r + 1, scale);
        inner.canonicalize();
        outer.canonicalize();
        int out_count = closed(outer);
        if (out_count < deg) return false;
        int in_count = closed(inner);
        if (in_count == deg) return true;
    }
    throw InvariantError("Weil validity refinement did not converge");
}

int sign_with_sqrt(const Rat& r, const Rat& s, const Int& n) {
    if (n < 0) throw PreconditionError("square root of a negative integer");
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Int root;
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        return sgn(Rat(r + s * root));
    }
    int sr = sgn(r), ss = sgn(s);
    if (ss == 0) return sr;
    if (sr == 0 || sr == ss) return ss;
    Rat lhs = r * r, rhs = s * s * n;
    return lhs > rhs ? sr : ss;
}

}  // namespace dsc::zeta
