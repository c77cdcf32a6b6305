#include <algorithm>
#include <mutex>

#include "dscurve/expr.hpp"
#include "dscurve/gfpoly.hpp"

namespace dsc::gf {

namespace detail {

struct FieldImpl {
    std::uint64_t p = 2, q = 2;
    int k = 1;
    std::vector<std::uint64_t> modulus;  // monic over F_p, low first; x for k = 1
    bool conway = false;
    Elem primitive = 1;
    bool tables = false;
    std::vector<std::uint32_t> exp;  // length 2(q-1)
    std::vector<std::uint32_t> log;  // length q, log[0] unused
    std::vector<std::uint64_t> basis_trace;
    std::vector<std::uint64_t> pw;  // p^i, i <= k
};

}  // namespace detail

namespace {

using detail::FieldImpl;
using Coeffs = std::vector<std::uint64_t>;

constexpr std::uint64_t kTableLimit = 1ull << 22;

// Conway polynomials, coefficients low degree first (leading 1 included).
struct ConwayEntry {
    std::uint64_t p;
    int k;
    Coeffs c;
};

const std::vector<ConwayEntry>& conway_table() {
    static const std::vector<ConwayEntry> t = {
        {2, 1, {1, 1}},
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}},
        {2, 5, {1, 0, 1, 0, 0, 1}},
        {2, 6, {1, 1, 0, 1, 1, 0, 1}},
        {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
        {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
        {2, 10, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
        {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {2, 12, {1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1}},
        {3, 1, {1, 1}},
        {3, 2, {2, 2, 1}},
        {3, 3, {1, 2, 0, 1}},
        {3, 4, {2, 0, 0, 2, 1}},
        {3, 5, {1, 2, 0, 0, 0, 1}},
        {3, 6, {2, 2, 1, 0, 2, 0, 1}},
        {5, 1, {3, 1}},
        {5, 2, {2, 4, 1}},
        {5, 3, {3, 3, 0, 1}},
        {5, 4, {2, 4, 4, 0, 1}},
        {7, 1, {4, 1}},
        {7, 2, {3, 6, 1}},
        {7, 3, {4, 0, 6, 1}},
        {11, 1, {9, 1}},
        {11, 2, {2, 7, 1}},
        {13, 1, {11, 1}},
        {13, 2, {2, 12, 1}},
    };
    return t;
}

// Dense arithmetic over F_p on coefficient vectors, used for field
// construction before any Field object exists.
Coeffs trim(Coeffs a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Coeffs mulmod_p(const Coeffs& a, const Coeffs& b, const Coeffs& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    std::size_t k = f.size() - 1;
    for (std::size_t i = r.size(); i-- > k;) {
        std::uint64_t c = r[i];
        if (!c) continue;
        for (std::size_t j = 0; j <= k; ++j) r[i - k + j] = (r[i - k + j] + (p - c) * f[j]) % p;
    }
    r.resize(std::min(r.size(), k));
    return trim(r);
}

Coeffs powmod_x(std::uint64_t e, const Coeffs& f, std::uint64_t p) {
    Coeffs result{1}, base = mulmod_p(Coeffs{0, 1}, Coeffs{1}, f, p);
    while (e) {
        if (e & 1) result = mulmod_p(result, base, f, p);
        base = mulmod_p(base, base, f, p);
        e >>= 1;
    }
    return result;
}

// x has multiplicative order p^k - 1 modulo f; this also forces f irreducible.
bool is_primitive_poly(const Coeffs& f, std::uint64_t p) {
    if (f.empty() || f[0] == 0) return false;
    std::uint64_t k = f.size() - 1;
    std::uint64_t n = checked_pow(p, static_cast<int>(k)) - 1;
    if (powmod_x(n, f, p) != Coeffs{1}) return false;
    for (auto [l, e] : factorize(n))
        if (powmod_x(n / l, f, p) == Coeffs{1}) return false;
    return true;
}

std::uint64_t least_primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    auto fac = factorize(p - 1);
    auto powm = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [l, e] : fac)
            if (powm(g, (p - 1) / l) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw InvariantError("no primitive root modulo " + std::to_string(p));
}

// Least primitive polynomial, comparing coefficients from x^{k-1} down to x^0.
Coeffs search_primitive(std::uint64_t p, int k) {
    Coeffs f(k + 1, 0);
    f[k] = 1;
    std::uint64_t total = checked_pow(p, k);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (int i = 0; i < k; ++i) {  // c_0 varies fastest
            f[i] = c % p;
            c /= p;
        }
        // x^k + c is never primitive for k >= 2: x^k = -c bounds the order by k(p-1).
        if (std::all_of(f.begin() + 1, f.begin() + k, [](std::uint64_t v) { return v == 0; })) continue;
        if (is_primitive_poly(f, p)) return f;
    }
    throw InvariantError("no primitive polynomial found");
}

std::shared_ptr<const FieldImpl> build(std::uint64_t p, int k) {
    auto impl = std::make_shared<FieldImpl>();
    impl->p = p;
    impl->k = k;
    impl->q = checked_pow(p, k);
    impl->pw.resize(k + 1);
    impl->pw[0] = 1;
    for (int i = 1; i <= k; ++i) impl->pw[i] = impl->pw[i - 1] * p;

    if (k == 1) {
        impl->modulus = {0, 1};
        impl->primitive = least_primitive_root(p);
        impl->conway = conway_polynomial(p, 1).has_value();
    } else {
        auto tab = conway_polynomial(p, k);
        if (tab) {
            if (!is_primitive_poly(*tab, p))
                throw InvariantError("shipped Conway polynomial for " + std::to_string(p) + "^" + std::to_string(k) +
                                     " is not primitive");
            impl->modulus = *tab;
            impl->conway = true;
        } else {
            impl->modulus = search_primitive(p, k);
        }
        impl->primitive = p;  // the class of a
    }
    return impl;
}

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const FieldImpl>>& cache() {
    static std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const FieldImpl>> c;
    return c;
}

}  // namespace

std::optional<std::vector<std::uint64_t>> conway_polynomial(std::uint64_t p, int k) {
    for (const auto& e : conway_table())
        if (e.p == p && e.k == k) return e.c;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generic (table-free) arithmetic lives in these helpers; the table setup
// below relies on them too.

namespace {

Elem digits_to_elem(const FieldImpl& F, const Coeffs& d) {
    Elem x = 0;
    for (std::size_t i = d.size(); i-- > 0;) x = x * F.p + d[i];
    return x;
}

Coeffs elem_to_digits(const FieldImpl& F, Elem x) {
    Coeffs d(F.k, 0);
    for (int i = 0; i < F.k; ++i) {
        d[i] = x % F.p;
        x /= F.p;
    }
    return d;
}

Elem generic_add(const FieldImpl& F, Elem x, Elem y) {
    if (F.p == 2) return x ^ y;
    if (F.k == 1) return (x + y) % F.p;
    Elem r = 0, m = 1;
    for (int i = 0; i < F.k; ++i) {
        std::uint64_t s = (x % F.p + y % F.p) % F.p;
        r += s * m;
        m *= F.p;
        x /= F.p;
        y /= F.p;
    }
    return r;
}

Elem generic_neg(const FieldImpl& F, Elem x) {
    if (F.p == 2) return x;
    if (F.k == 1) return x ? F.p - x : 0;
    Elem r = 0, m = 1;
    for (int i = 0; i < F.k; ++i) {
        std::uint64_t d = x % F.p;
        r += (d ? F.p - d : 0) * m;
        m *= F.p;
        x /= F.p;
    }
    return r;
}

Elem generic_mul(const FieldImpl& F, Elem x, Elem y) {
    if (F.k == 1) return static_cast<Elem>(static_cast<unsigned __int128>(x) * y % F.p);
    auto a = trim(elem_to_digits(F, x)), b = trim(elem_to_digits(F, y));
    return digits_to_elem(F, mulmod_p(a, b, F.modulus, F.p));
}

}  // namespace

Field Field::make(std::uint64_t p, int k) {
    if (!is_prime(p)) throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw PreconditionError("extension degree must be at least 1");
    if (p > kMaxPrime || k > kMaxDegree)
        throw SizeLimitError("field " + std::to_string(p) + "^" + std::to_string(k) + " exceeds supported limits");
    {
        unsigned __int128 q = 1;
        for (int i = 0; i < k; ++i) q *= p;
        if (q > kMaxOrder) throw SizeLimitError("field order exceeds 2^40");
    }
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto& c = cache();
    auto it = c.find({p, k});
    if (it != c.end()) return Field(it->second);

    auto base = build(p, k);
    auto impl = std::make_shared<FieldImpl>(*base);
    if (impl->q <= kTableLimit) {
        std::uint64_t n = impl->q - 1;
        impl->exp.resize(2 * n);
        impl->log.assign(impl->q, 0);
        Elem x = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            impl->exp[i] = static_cast<std::uint32_t>(x);
            impl->log[x] = static_cast<std::uint32_t>(i);
            x = generic_mul(*impl, x, impl->primitive);
        }
        if (x != 1) throw InvariantError("field generator is not primitive");
        for (std::uint64_t i = 0; i < n; ++i) impl->exp[n + i] = impl->exp[i];
        impl->tables = true;
    }
    // tr(a^i) = sum_j (a^i)^{p^j}; stored for the linear trace map.
    impl->basis_trace.resize(impl->k);
    {
        Field tmp(impl);
        Elem ai = 1;
        Elem agen = impl->k == 1 ? 1 : impl->p;
        for (int i = 0; i < impl->k; ++i) {
            Elem s = 0, y = ai;
            for (int j = 0; j < impl->k; ++j) {
                s = tmp.add(s, y);
                y = tmp.frobenius(y);
            }
            if (s >= impl->p) throw InvariantError("trace left the prime field");
            impl->basis_trace[i] = s;
            ai = tmp.mul(ai, agen);
        }
    }
    c.emplace(std::make_pair(p, k), impl);
    return Field(impl);
}

Field Field::of_order(std::uint64_t q) {
    auto pp = prime_power(q);
    if (!pp) throw PreconditionError(std::to_string(q) + " is not a prime power");
    return make(pp->first, pp->second);
}

std::uint64_t Field::p() const { return impl_->p; }
int Field::k() const { return impl_->k; }
std::uint64_t Field::q() const { return impl_->q; }
const std::vector<std::uint64_t>& Field::modulus() const { return impl_->modulus; }
bool Field::conway() const { return impl_->conway; }
Elem Field::primitive() const { return impl_->primitive; }
Elem Field::gen() const { return impl_->k == 1 ? impl_->primitive : impl_->p; }

Elem Field::from_int(long long v) const {
    long long p = static_cast<long long>(impl_->p);
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<Elem>(r);
}

Elem Field::add(Elem x, Elem y) const { return generic_add(*impl_, x, y); }
Elem Field::neg(Elem x) const { return generic_neg(*impl_, x); }
Elem Field::sub(Elem x, Elem y) const { return generic_add(*impl_, x, generic_neg(*impl_, y)); }

Elem Field::mul(Elem x, Elem y) const {
    if (x == 0 || y == 0) return 0;
    const auto& F = *impl_;
    if (F.tables) return F.exp[F.log[x] + F.log[y]];
    return generic_mul(F, x, y);
}

Elem Field::inv(Elem x) const {
    if (x == 0) throw PreconditionError("division by zero in F_" + std::to_string(impl_->q));
    const auto& F = *impl_;
    if (F.tables) return F.exp[(F.q - 1 - F.log[x]) % (F.q - 1)];
    return pow(x, F.q - 2);
}

Elem Field::pow(Elem x, std::uint64_t e) const {
    const auto& F = *impl_;
    if (e == 0) return 1;
    if (x == 0) return 0;
    if (F.tables) {
        auto l = static_cast<unsigned __int128>(F.log[x]) * e % (F.q - 1);
        return F.exp[static_cast<std::size_t>(l)];
    }
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

Elem Field::frobenius(Elem x) const { return pow(x, impl_->p); }

std::uint64_t Field::trace(Elem x) const {
    const auto& F = *impl_;
    std::uint64_t s = 0;
    for (int i = 0; i < F.k; ++i) {
        s = (s + (x % F.p) * F.basis_trace[i]) % F.p;
        x /= F.p;
    }
    return s;
}

bool Field::is_square(Elem x) const {
    const auto& F = *impl_;
    if (x == 0 || F.p == 2) return true;
    if (F.tables) return F.log[x] % 2 == 0;
    return pow(x, (F.q - 1) / 2) == 1;
}

std::uint64_t Field::order(Elem x) const {
    if (x == 0) throw PreconditionError("zero has no multiplicative order");
    std::uint64_t n = impl_->q - 1;
    for (auto [l, e] : factorize(impl_->q - 1))
        for (int i = 0; i < e && pow(x, n / l) == 1; ++i) n /= l;
    return n;
}

std::vector<std::uint64_t> Field::digits(Elem x) const { return elem_to_digits(*impl_, x); }

Elem Field::from_digits(std::span<const std::uint64_t> d) const {
    Coeffs c(impl_->k, 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i >= c.size()) {
            if (d[i] % impl_->p) throw PreconditionError("digit vector longer than the extension degree");
            continue;
        }
        c[i] = d[i] % impl_->p;
    }
    return digits_to_elem(*impl_, c);
}

std::string Field::format(Elem x) const {
    const auto& F = *impl_;
    if (F.k == 1) return std::to_string(x);
    if (x == 0) return "0";
    auto d = elem_to_digits(F, x);
    std::string out;
    for (int i = F.k - 1; i >= 0; --i) {
        if (!d[i]) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(d[i]);
            continue;
        }
        if (d[i] != 1) out += std::to_string(d[i]) + "*";
        out += "a";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

namespace {

Elem decimal_mod(const std::string& digits, std::uint64_t p) {
    std::uint64_t r = 0;
    for (char c : digits) r = (r * 10 + static_cast<std::uint64_t>(c - '0')) % p;
    return r;
}

struct ElemRing {
    const Field& F;
    Elem number(const std::string& s) { return decimal_mod(s, F.p()); }
    Elem symbol(const std::string& s) {
        if (s == "a" && F.k() > 1) return F.gen();
        throw ParseError("unknown symbol '" + s + "' in a field element");
    }
    Elem add(Elem x, Elem y) { return F.add(x, y); }
    Elem sub(Elem x, Elem y) { return F.sub(x, y); }
    Elem neg(Elem x) { return F.neg(x); }
    Elem mul(Elem x, Elem y) { return F.mul(x, y); }
    Elem div(Elem x, Elem y) {
        if (y == 0) throw ParseError("division by zero in a field element");
        return F.div(x, y);
    }
    Elem pow(Elem x, unsigned long e) { return F.pow(x, e); }
};

}  // namespace

Elem Field::parse(std::string_view text) const {
    auto tree = expr::parse(text);
    ElemRing ring{*this};
    return expr::fold(*tree, ring);
}

bool Field::operator==(const Field& o) const {
    if (impl_ == o.impl_) return true;
    return impl_->p == o.impl_->p && impl_->k == o.impl_->k && impl_->modulus == o.impl_->modulus;
}

// ---------------------------------------------------------------------------

Embedding::Embedding(Field source, Field target) : source_(std::move(source)), target_(std::move(target)) {
    if (source_.p() != target_.p() || target_.k() % source_.k() != 0)
        throw PreconditionError("F_" + std::to_string(source_.q()) + " does not embed in F_" +
                                std::to_string(target_.q()));
    int k = source_.k();
    if (k == 1) {
        basis_images_ = {1};
        return;
    }
    const auto& f = source_.modulus();
    auto eval_mod = [&](Elem z) {
        Elem acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = target_.add(target_.mul(acc, z), target_.from_int(f[i]));
        return acc;
    };
    Elem root = target_.pow(target_.primitive(), (target_.q() - 1) / (source_.q() - 1));
    if (eval_mod(root) != 0) {
        bool found = false;
        for (Elem z = 0; z < target_.q() && !found; ++z)
            if (eval_mod(z) == 0) root = z, found = true;
        if (!found) throw InvariantError("source modulus has no root in the target field");
    }
    basis_images_.resize(k);
    Elem y = 1;
    for (int i = 0; i < k; ++i) {
        basis_images_[i] = y;
        y = target_.mul(y, root);
    }
}

Elem Embedding::operator()(Elem x) const {
    if (source_.k() == 1) return x;
    Elem acc = 0;
    std::uint64_t p = source_.p();
    for (int i = 0; i < source_.k(); ++i) {
        Elem d = x % p;
        x /= p;
        if (d) acc = target_.add(acc, target_.mul(d, basis_images_[i]));
    }
    return acc;
}

bool Embedding::contains(Elem y) const { return target_.pow(y, source_.q()) == y; }

Elem Embedding::preimage(Elem y) const {
    if (!contains(y)) throw PreconditionError("element is not in the image of the embedding");
    if (source_.k() == 1) return y;
    // Solve sum_i c_i * image(a^i) = y over F_p by Gaussian elimination.
    std::uint64_t p = source_.p();
    int k = source_.k(), n = target_.k();
    std::vector<std::vector<std::uint64_t>> rows(n, std::vector<std::uint64_t>(k + 1, 0));
    for (int i = 0; i < k; ++i) {
        auto d = target_.digits(basis_images_[i]);
        for (int r = 0; r < n; ++r) rows[r][i] = d[r];
    }
    auto yd = target_.digits(y);
    for (int r = 0; r < n; ++r) rows[r][k] = yd[r];
    auto inv_p = [p](std::uint64_t a) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    int row = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < k && row < n; ++c) {
        int piv = -1;
        for (int r = row; r < n; ++r)
            if (rows[r][c]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[row], rows[piv]);
        auto iv = inv_p(rows[row][c]);
        for (auto& v : rows[row]) v = v * iv % p;
        for (int r = 0; r < n; ++r) {
            if (r == row || !rows[r][c]) continue;
            auto m = rows[r][c];
            for (int j = 0; j <= k; ++j) rows[r][j] = (rows[r][j] + (p - m) * rows[row][j]) % p;
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<std::uint64_t> sol(k, 0);
    for (int r = 0; r < row; ++r) sol[pivot_col[r]] = rows[r][k];
    return source_.from_digits(sol);
}

}  // namespace dsc::gf
