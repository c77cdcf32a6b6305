#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <map>
#include <numeric>

#include "dscurve/carlitz.hpp"
#include "dscurve/error.hpp"

namespace dsc::carlitz {

namespace {

using IntPoly = std::vector<Int>;

constexpr std::uint64_t kMonicScanLimit = 1u << 18;
constexpr long kMaxProductDegree = 20000;

void trim(IntPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// a mod m for monic m, in place.
void reduce_monic(IntPoly& a, const IntPoly& m) {
    std::size_t n = m.size() - 1;
    for (std::size_t i = a.size(); i-- > n;) {
        if (a[i] == 0) continue;
        Int k = a[i];
        for (std::size_t j = 0; j <= n; ++j) a[i - n + j] -= k * m[j];
    }
    a.resize(std::min(a.size(), n));
    a.resize(n);
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, e] : gf::factorize(n)) r = r / p * (p - 1);
    return r;
}

// Z[zeta_d] arithmetic on reduced vectors of length phi(d).
struct Cyclo {
    std::uint64_t d;
    IntPoly phi;  // cyclotomic polynomial
    std::size_t n;

    explicit Cyclo(std::uint64_t d_) : d(d_), phi(cyclotomic(d_)), n(phi.size() - 1) {}

    IntPoly reduce(IntPoly a) const {
        reduce_monic(a, phi);
        return a;
    }
    IntPoly times(const IntPoly& a, const IntPoly& b) const { return reduce(mul(a, b)); }
    IntPoly conj(const IntPoly& a, std::uint64_t k) const {
        IntPoly r(d);
        for (std::size_t i = 0; i < a.size(); ++i) r[(i * k) % d] += a[i];
        return reduce(std::move(r));
    }
    bool is_zero(const IntPoly& a) const {
        return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
    }
};

// Product over the polynomials (entries over Z[zeta_d]).
std::vector<IntPoly> poly_times(const Cyclo& C, const std::vector<IntPoly>& a, const std::vector<IntPoly>& b) {
    std::vector<IntPoly> r(a.size() + b.size() - 1, IntPoly(C.n));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (C.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (C.is_zero(b[j])) continue;
            auto prod = mul(a[i], b[j]);
            for (std::size_t k = 0; k < prod.size(); ++k) {
                if (r[i + j].size() <= k) r[i + j].resize(k + 1);
                r[i + j][k] += prod[k];
            }
        }
    }
    for (auto& c : r) c = C.reduce(std::move(c));
    return r;
}

IntPoly balanced_product(std::vector<IntPoly> v) {
    if (v.empty()) return {1};
    while (v.size() > 1) {
        std::vector<IntPoly> next;
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(mul(v[i], v[i + 1]));
        if (v.size() % 2) next.push_back(std::move(v.back()));
        v = std::move(next);
    }
    return v[0];
}

// Component logs of every monic f with deg f < deg M; entry [n][code][i].
struct MonicLogs {
    std::vector<std::vector<std::vector<std::optional<std::vector<std::uint64_t>>>>> logs;

    MonicLogs(const ModulusGroup& G, long max_deg) {
        const Field& F = G.field();
        if (static_cast<double>(max_deg) * std::log2(static_cast<double>(F.q())) > std::log2(kMonicScanLimit))
            throw SizeLimitError("monic scan up to degree " + std::to_string(max_deg) + " exceeds 2^18 polynomials");
        logs.resize(max_deg);
        for (long n = 0; n < max_deg; ++n) {
            std::uint64_t count = gf::checked_pow(F.q(), static_cast<int>(n));
            logs[n].resize(count);
            for (std::uint64_t c = 0; c < count; ++c) {
                FieldPoly f = gf::decode(F, c) + FieldPoly::monomial(F, 1, n);
                auto& row = logs[n][c];
                for (std::size_t i = 0; i < G.components().size(); ++i) row.push_back(G.component_log(i, f));
            }
        }
    }
};

// Per-component conductor exponents.
std::vector<int> conductor_exponents(const ModulusGroup& G, const Character& chi) {
    const auto& orders = G.basis_orders();
    const std::uint64_t N = G.exponent();
    std::vector<int> c;
    for (std::size_t i = 0; i < G.components().size(); ++i) {
        const auto& comp = G.components()[i];
        std::size_t first = comp.first, u0 = first + (comp.cyclic_order > 1 ? 1 : 0);
        bool trivial = true, unip_trivial = true;
        for (std::size_t j = first; j < first + comp.count; ++j)
            if (chi.a[j] % orders[j]) {
                trivial = false;
                if (j >= u0) unip_trivial = false;
            }
        if (trivial) {
            c.push_back(0);
        } else if (unip_trivial) {
            c.push_back(1);
        } else {
            int top = 0;
            for (const auto& u : G.unipotents(i)) {
                std::uint64_t s = 0;
                for (std::size_t j = 0; j < u.exps.size(); ++j) {
                    std::uint64_t o = orders[u0 + j];
                    s = (s + (chi.a[u0 + j] * u.exps[j] % o) * (N / o)) % N;
                }
                if (s) top = std::max(top, u.level);
            }
            c.push_back(top + 1);
        }
    }
    return c;
}

// Counts of chi(f) = zeta_N^k over monic f of each degree n < max_deg;
// components with use[i] false are ignored, the others must be coprime.
std::vector<IntPoly> l_counts(const ModulusGroup& G, const Character& chi, const MonicLogs& T,
                              const std::vector<bool>& use, long max_deg) {
    const auto& orders = G.basis_orders();
    const std::uint64_t N = G.exponent();
    std::vector<IntPoly> out(max_deg, IntPoly(N));
    for (long n = 0; n < max_deg; ++n)
        for (const auto& row : T.logs[n]) {
            std::uint64_t s = 0;
            bool zero = false;
            for (std::size_t i = 0; i < row.size() && !zero; ++i) {
                if (!use[i]) continue;
                if (!row[i]) {
                    zero = true;
                    break;
                }
                std::size_t first = G.components()[i].first;
                for (std::size_t j = 0; j < row[i]->size(); ++j) {
                    std::uint64_t o = orders[first + j];
                    s = (s + (chi.a[first + j] * (*row[i])[j] % o) * (N / o)) % N;
                }
            }
            if (!zero) out[n][s] += 1;
        }
    return out;
}

bool nontrivial(const Character& chi) {
    return std::any_of(chi.a.begin(), chi.a.end(), [](std::uint64_t x) { return x != 0; });
}

IntPoly orbit_product_with(const ModulusGroup& G, const Character& chi, const MonicLogs& T) {
    auto cexp = conductor_exponents(G, chi);
    long cdeg = 0;
    std::vector<bool> use;
    for (std::size_t i = 0; i < cexp.size(); ++i) {
        cdeg += cexp[i] * G.components()[i].pi.degree();
        use.push_back(cexp[i] > 0);
    }
    auto counts = l_counts(G, chi, T, use, cdeg);
    const std::uint64_t N = G.exponent(), d = character_order(G, chi), step = N / d;
    Cyclo C(d);
    std::vector<IntPoly> L;
    for (const auto& cnt : counts) {
        IntPoly v(d);
        for (std::uint64_t k = 0; k < N; ++k)
            if (cnt[k] != 0) v[k / step] += cnt[k];
        L.push_back(C.reduce(std::move(v)));
    }
    if (is_even(G, chi)) {
        // L / (1 - t): prefix sums, the total must vanish.
        std::vector<IntPoly> Q;
        IntPoly acc(C.n);
        for (const auto& c : L) {
            for (std::size_t k = 0; k < C.n; ++k) acc[k] += c[k];
            Q.push_back(acc);
        }
        if (Q.empty() || !C.is_zero(Q.back())) throw InvariantError("even character with L(1) != 0");
        Q.pop_back();
        L = std::move(Q);
    }
    std::vector<IntPoly> prod{C.reduce(IntPoly{1})};
    for (std::uint64_t k = 1; k < d; ++k) {
        if (std::gcd(k, d) != 1) continue;
        std::vector<IntPoly> conj;
        for (const auto& c : L) conj.push_back(C.conj(c, k));
        prod = poly_times(C, prod, conj);
    }
    IntPoly out;
    for (const auto& c : prod) {
        for (std::size_t k = 1; k < c.size(); ++k)
            if (c[k] != 0) throw InvariantError("orbit product has a non-integral coefficient");
        out.push_back(c.empty() ? Int(0) : c[0]);
    }
    trim(out);
    if (out.empty() || out[0] != 1) throw InvariantError("orbit product must have constant term 1");
    return out;
}

}  // namespace

std::vector<Int> cyclotomic(std::uint64_t N) {
    if (N == 0) throw PreconditionError("cyclotomic index must be positive");
    static std::map<std::uint64_t, IntPoly> memo;
    static std::mutex lock;
    {
        std::lock_guard<std::mutex> g(lock);
        auto it = memo.find(N);
        if (it != memo.end()) return it->second;
    }
    // (x^N - 1) divided by Phi_d for every proper divisor d.
    IntPoly a(N + 1);
    a[0] = -1;
    a[N] = 1;
    for (auto d : gf::divisors(N)) {
        if (d == N) continue;
        IntPoly b = cyclotomic(d);
        std::size_t n = b.size() - 1;
        IntPoly q(a.size() - n);
        for (std::size_t i = a.size(); i-- > n;) {
            Int k = a[i];
            q[i - n] = k;
            if (k != 0)
                for (std::size_t j = 0; j <= n; ++j) a[i - n + j] -= k * b[j];
        }
        a = std::move(q);
    }
    std::lock_guard<std::mutex> g(lock);
    memo.emplace(N, a);
    return a;
}

CharacterValue reduce_cyclotomic(std::uint64_t N, const std::vector<Int>& counts) {
    CharacterValue v;
    v.N = N;
    v.c = counts;
    reduce_monic(v.c, cyclotomic(N));
    return v;
}

std::uint64_t character_order(const ModulusGroup& G, const Character& chi) {
    return G.order_of_vector(chi.a);
}

std::uint64_t character_exponent(const ModulusGroup& G, const Character& chi, const FieldPoly& x) {
    auto v = G.log(x);
    const auto& orders = G.basis_orders();
    const std::uint64_t N = G.exponent();
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s = (s + (chi.a[j] * v[j] % orders[j]) * (N / orders[j])) % N;
    return s;
}

bool is_trivial_on_H(const ModulusGroup& G, const Character& chi) {
    for (const auto& h : G.H_generators())
        if (character_exponent(G, chi, h) != 0) return false;
    return true;
}

bool is_even(const ModulusGroup& G, const Character& chi) {
    const Field& F = G.field();
    if (F.q() == 2) return true;
    return character_exponent(G, chi, FieldPoly::constant(F, F.primitive())) == 0;
}

FieldPoly conductor(const ModulusGroup& G, const Character& chi) {
    auto c = conductor_exponents(G, chi);
    FieldPoly r = FieldPoly::constant(G.field(), 1);
    for (std::size_t i = 0; i < c.size(); ++i) r = r * gf::pow(G.components()[i].pi, c[i]);
    return r;
}

std::vector<Character> characters(const ModulusGroup& G) {
    std::vector<Character> out;
    for (std::uint64_t idx = 0; idx < G.order(); ++idx) {
        Character chi{G.vector_of(idx)};
        if (is_trivial_on_H(G, chi)) out.push_back(std::move(chi));
    }
    return out;
}

std::vector<CharacterValue> char_l_poly(const ModulusGroup& G, const Character& chi) {
    if (!nontrivial(chi)) throw PreconditionError("the trivial character has no L-polynomial here");
    long degM = G.modulus().degree();
    MonicLogs T(G, degM);
    auto counts = l_counts(G, chi, T, std::vector<bool>(G.components().size(), true), degM);
    std::vector<CharacterValue> out;
    for (const auto& c : counts) out.push_back(reduce_cyclotomic(G.exponent(), c));
    while (!out.empty() && std::all_of(out.back().c.begin(), out.back().c.end(), [](const Int& x) { return x == 0; }))
        out.pop_back();
    return out;
}

std::vector<Int> orbit_product(const ModulusGroup& G, const Character& chi) {
    if (!nontrivial(chi)) throw PreconditionError("the trivial character has no L-polynomial here");
    MonicLogs T(G, G.modulus().degree());
    return orbit_product_with(G, chi, T);
}

zeta::PointVector CarlitzZeta::points_upto(int n) const {
    if (zeta) return zeta->points_upto(n);
    zeta::PointVector N(n);
    Int qm = 1;
    for (int m = 0; m < n; ++m) {
        qm *= q;
        N[m] = qm + 1;
    }
    return N;
}

zeta::PlaceVector CarlitzZeta::places_upto(int n) const { return zeta::places_from_points(points_upto(n)); }

CarlitzZeta zeta_numerator(const ModulusGroup& G) {
    const std::uint64_t m = G.order();
    if (m > 1'000'000) throw SizeLimitError("character enumeration needs a group of order at most 10^6");
    long degM = G.modulus().degree();
    // Orbit representatives among characters trivial on H.
    std::vector<Character> reps;
    std::vector<bool> seen(m, false);
    seen[0] = true;
    long bound = 0;
    for (std::uint64_t idx = 1; idx < m; ++idx) {
        if (seen[idx]) continue;
        Character chi{G.vector_of(idx)};
        std::uint64_t d = character_order(G, chi);
        for (std::uint64_t k = 1; k < d; ++k) {
            if (std::gcd(k, d) != 1) continue;
            std::vector<std::uint64_t> w(chi.a.size());
            for (std::size_t j = 0; j < w.size(); ++j) w[j] = chi.a[j] * k % G.basis_orders()[j];
            seen[G.index_of(w)] = true;
        }
        if (!is_trivial_on_H(G, chi)) continue;
        bound += static_cast<long>(euler_phi(d)) * (degM - 1);
        reps.push_back(std::move(chi));
    }
    if (bound > kMaxProductDegree) {
        long exact = 0;
        for (const auto& chi : reps) {
            long cdeg = conductor(G, chi).degree();
            exact += static_cast<long>(euler_phi(character_order(G, chi))) * (cdeg - 1 - (is_even(G, chi) ? 1 : 0));
        }
        if (exact > kMaxProductDegree)
            throw SizeLimitError("zeta numerator degree " + std::to_string(exact) + " exceeds 20000");
    }
    MonicLogs T(G, degM);
    CarlitzZeta z;
    z.q = G.field().q();
    for (const auto& chi : reps) {
        auto op = orbit_product_with(G, chi, T);
        if (op.size() > 1) z.orbit_products.push_back(std::move(op));
    }
    z.P = balanced_product(z.orbit_products);
    if ((z.P.size() - 1) % 2) throw InvariantError("zeta numerator has odd degree");
    z.genus = static_cast<int>((z.P.size() - 1) / 2);
    if (z.genus > 0) {
        std::map<IntPoly, unsigned> groups;
        for (const auto& op : z.orbit_products) ++groups[op];
        std::vector<std::pair<zeta::ExactPoly, unsigned>> factors;
        for (const auto& [op, mult] : groups) {
            int g = static_cast<int>((op.size() - 1) / 2);
            factors.emplace_back(zeta::real_weil_from_frobenius_coeffs(op, Int(z.q), g), mult);
        }
        z.zeta = zeta::ZetaData::from_real_weil_factors(z.q, std::move(factors));
    }
    return z;
}

}  // namespace dsc::carlitz
