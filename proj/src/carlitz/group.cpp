#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "dscurve/carlitz.hpp"
#include "dscurve/error.hpp"

namespace dsc::carlitz {

namespace {

constexpr std::uint64_t kMaxOrder = 10'000'000;
constexpr std::uint64_t kTableLimit = 1u << 16;

FieldPoly mulmod(const FieldPoly& a, const FieldPoly& b, const FieldPoly& m) { return a * b % m; }

// Inverse of a modulo n (gcd(a, n) = 1); 0 when n = 1.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n) {
    if (n == 1) return 0;
    __int128 t = 0, nt = 1, r = n, nr = a % n;
    while (nr != 0) {
        __int128 k = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - k * nt);
        std::tie(r, nr) = std::make_pair(nr, r - k * nr);
    }
    if (t < 0) t += n;
    return static_cast<std::uint64_t>(t);
}

FieldPoly primitive_root_mod(const FieldPoly& pi, std::uint64_t n1) {
    const Field& F = pi.field();
    auto primes = gf::factorize(n1);
    for (std::uint64_t code = 1; code <= n1; ++code) {
        FieldPoly g = gf::decode(F, code);
        bool ok = true;
        for (auto [l, e] : primes)
            if (gf::powmod(g, n1 / l, pi).is_one()) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw InvariantError("no primitive root modulo " + gf::format(pi));
}

}  // namespace

ModulusGroup ModulusGroup::make(const FieldPoly& M, const std::vector<FieldPoly>& H_gens) {
    if (!M.is_monic() || M.degree() < 1) throw PreconditionError("modulus must be monic of positive degree");
    const Field& F = M.field();
    const std::uint64_t q = F.q(), p = F.p();
    ModulusGroup G;
    G.M_ = M;
    auto fac = gf::factor(M);
    std::uint64_t total = 1;
    for (const auto& [pi, e] : fac) {
        int d = static_cast<int>(pi.degree());
        std::uint64_t n1 = gf::checked_pow(q, d) - 1;
        std::uint64_t P = gf::checked_pow(q, d * (e - 1));
        if (n1 > kMaxOrder || P > kMaxOrder || (total *= n1) > kMaxOrder || (total *= P) > kMaxOrder)
            throw SizeLimitError("unit group order exceeds 10^7");
        if (P > kTableLimit) throw SizeLimitError("p-part of a component exceeds 2^16");
        Component c;
        c.pi = pi;
        c.e = e;
        c.modulus = gf::pow(pi, e);
        c.cyclic_order = n1;
        c.unipotent_order = P;
        G.comps_.push_back(c);
    }
    G.order_ = total;

    for (auto& c : G.comps_) {
        Tables T;
        const FieldPoly& mod = c.modulus;
        const std::uint64_t n1 = c.cyclic_order, P = c.unipotent_order, N = n1 * P;
        T.e_cyclic = (P % N) * inverse_mod(P % n1, n1) % N;
        T.e_unip = (N + 1 - T.e_cyclic) % N;
        c.first = G.orders_.size();
        if (n1 > 1) {
            T.cyclic_gen = gf::powmod(primitive_root_mod(c.pi, n1), P, mod);
            std::uint64_t steps = n1;
            if (n1 > kTableLimit) {
                T.bsgs = true;
                steps = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n1))));
                T.giant = steps;
                T.giant_step = gf::powmod(T.cyclic_gen, (n1 - steps % n1) % n1, mod);
            }
            FieldPoly x = FieldPoly::constant(F, 1);
            for (std::uint64_t i = 0; i < steps; ++i) {
                T.cyclic_log.emplace(gf::encode(x), i);
                x = mulmod(x, T.cyclic_gen, mod);
            }
            G.orders_.push_back(n1);
            G.basis_.push_back(T.cyclic_gen);
        }
        if (P > 1) {
            // Greedy basis of the p-group 1 + pi R: adjoin an element of
            // largest order modulo the current span, corrected so that its
            // order equals that quotient order.
            std::vector<FieldPoly> elems;
            elems.reserve(P);
            for (std::uint64_t r = 0; r < P; ++r)
                elems.push_back(FieldPoly::constant(F, 1) + c.pi * gf::decode(F, r));
            std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> span;
            span.emplace(gf::encode(FieldPoly::constant(F, 1)), std::vector<std::uint64_t>{});
            while (span.size() < P) {
                std::size_t best = 0;
                int best_k = -1;
                FieldPoly best_z;
                for (std::size_t i = 0; i < elems.size(); ++i) {
                    FieldPoly y = elems[i];
                    int k = 0;
                    while (!span.count(gf::encode(y))) {
                        y = gf::powmod(y, p, mod);
                        ++k;
                    }
                    if (k > best_k) {
                        best_k = k;
                        best = i;
                        best_z = y;
                    }
                }
                std::uint64_t pk = gf::checked_pow(p, best_k);
                const auto& ez = span.at(gf::encode(best_z));
                FieldPoly b = elems[best];
                for (std::size_t j = 0; j < ez.size(); ++j) {
                    std::uint64_t o = T.unip_orders[j], v = 0;
                    if (o <= pk) {
                        if (ez[j] != 0) throw InvariantError("p-group basis correction failed");
                    } else {
                        if (ez[j] % pk) throw InvariantError("p-group basis correction failed");
                        v = ez[j] / pk;
                    }
                    if (v) b = mulmod(b, gf::powmod(T.unip_basis[j], o - v, mod), mod);
                }
                std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> next;
                next.reserve(span.size() * pk);
                for (const auto& [code, ex] : span) {
                    FieldPoly w = gf::decode(F, code);
                    for (std::uint64_t i = 0; i < pk; ++i) {
                        auto e2 = ex;
                        e2.push_back(i);
                        if (!next.emplace(gf::encode(w), std::move(e2)).second)
                            throw InvariantError("p-group basis element is not independent");
                        w = mulmod(w, b, mod);
                    }
                }
                span = std::move(next);
                T.unip_basis.push_back(b);
                T.unip_orders.push_back(pk);
            }
            for (auto& [code, ex] : span) {
                FieldPoly u = gf::decode(F, code);
                int level = c.e;
                FieldPoly r = u - FieldPoly::constant(F, 1);
                if (!r.is_zero()) level = static_cast<int>(gf::multiplicity(r, c.pi));
                T.unip_index.emplace(code, T.unip.size());
                T.unip.push_back({code, level, std::move(ex)});
            }
            for (std::size_t j = 0; j < T.unip_basis.size(); ++j) {
                G.orders_.push_back(T.unip_orders[j]);
                G.basis_.push_back(T.unip_basis[j]);
            }
        }
        c.count = G.orders_.size() - c.first;
        G.tables_.push_back(std::move(T));
    }

    // Lift the component generators to units mod M through the idempotents.
    for (const auto& c : G.comps_) {
        FieldPoly rest = gf::exact_div(M, c.modulus);
        std::uint64_t comp_order = c.cyclic_order * c.unipotent_order;
        FieldPoly idem = rest * gf::powmod(rest % c.modulus, comp_order - 1, c.modulus);
        for (std::size_t j = c.first; j < c.first + c.count; ++j)
            G.basis_[j] = (FieldPoly::constant(F, 1) + (G.basis_[j] - FieldPoly::constant(F, 1)) * idem) % M;
    }

    G.strides_.resize(G.orders_.size());
    std::uint64_t s = 1;
    for (std::size_t j = 0; j < G.orders_.size(); ++j) {
        G.strides_[j] = s;
        s *= G.orders_[j];
        G.exponent_ = std::lcm(G.exponent_, G.orders_[j]);
    }
    if (s != G.order_) throw InvariantError("basis orders do not multiply to the group order");

    for (const auto& g : H_gens) {
        if (!G.is_unit(g)) throw PreconditionError("generator " + gf::format(g) + " of H is not a unit mod M");
        G.H_gens_.push_back(g % M);
        G.H_vecs_.push_back(G.log(g));
    }
    G.H_ = G.closure(G.H_vecs_);
    return G;
}

ModulusGroup unit_group(const FieldPoly& M, const std::vector<FieldPoly>& H_gens) {
    return ModulusGroup::make(M, H_gens);
}

std::vector<std::uint64_t> ModulusGroup::invariant_factors() const {
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_prime;
    for (auto o : orders_)
        for (auto [l, e] : gf::factorize(o)) by_prime[l].push_back(gf::checked_pow(l, e));
    std::size_t n = 0;
    for (auto& [l, v] : by_prime) {
        std::sort(v.rbegin(), v.rend());
        n = std::max(n, v.size());
    }
    std::vector<std::uint64_t> out(n, 1);
    for (auto& [l, v] : by_prime)
        for (std::size_t i = 0; i < v.size(); ++i) out[n - 1 - i] *= v[i];
    if (out.empty()) out.push_back(1);
    return out;
}

bool ModulusGroup::is_unit(const FieldPoly& x) const {
    FieldPoly r = x % M_;
    return !r.is_zero() && gf::gcd(r, M_).is_one();
}

std::optional<std::vector<std::uint64_t>> ModulusGroup::component_log(std::size_t i, const FieldPoly& x) const {
    const Component& c = comps_.at(i);
    const Tables& T = tables_[i];
    FieldPoly xm = x % c.modulus;
    if ((xm % c.pi).is_zero()) return std::nullopt;
    std::vector<std::uint64_t> out;
    out.reserve(c.count);
    if (c.cyclic_order > 1) {
        FieldPoly y = gf::powmod(xm, T.e_cyclic, c.modulus);
        std::uint64_t lg = 0;
        if (!T.bsgs) {
            lg = T.cyclic_log.at(gf::encode(y));
        } else {
            bool found = false;
            for (std::uint64_t i2 = 0; i2 <= c.cyclic_order / T.giant + 1 && !found; ++i2) {
                auto it = T.cyclic_log.find(gf::encode(y));
                if (it != T.cyclic_log.end()) {
                    lg = (i2 * T.giant + it->second) % c.cyclic_order;
                    found = true;
                }
                y = mulmod(y, T.giant_step, c.modulus);
            }
            if (!found) throw InvariantError("discrete logarithm not found");
        }
        out.push_back(lg);
    }
    if (c.unipotent_order > 1) {
        FieldPoly u = gf::powmod(xm, T.e_unip, c.modulus);
        const auto& ex = T.unip[T.unip_index.at(gf::encode(u))].exps;
        out.insert(out.end(), ex.begin(), ex.end());
    }
    return out;
}

std::vector<std::uint64_t> ModulusGroup::log(const FieldPoly& x) const {
    std::vector<std::uint64_t> out;
    out.reserve(orders_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        auto b = component_log(i, x);
        if (!b) throw PreconditionError(gf::format(x) + " is not a unit mod " + gf::format(M_));
        out.insert(out.end(), b->begin(), b->end());
    }
    return out;
}

FieldPoly ModulusGroup::exp(const std::vector<std::uint64_t>& v) const {
    FieldPoly r = FieldPoly::constant(field(), 1) % M_;
    for (std::size_t j = 0; j < v.size() && j < basis_.size(); ++j)
        if (v[j] % orders_[j]) r = mulmod(r, gf::powmod(basis_[j], v[j] % orders_[j], M_), M_);
    return r;
}

std::uint64_t ModulusGroup::index_of(const std::vector<std::uint64_t>& v) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < orders_.size(); ++j) idx += (v[j] % orders_[j]) * strides_[j];
    return idx;
}

std::vector<std::uint64_t> ModulusGroup::vector_of(std::uint64_t index) const {
    std::vector<std::uint64_t> v(orders_.size());
    for (std::size_t j = 0; j < orders_.size(); ++j) {
        v[j] = index % orders_[j];
        index /= orders_[j];
    }
    return v;
}

std::uint64_t ModulusGroup::order_of_vector(const std::vector<std::uint64_t>& v) const {
    std::uint64_t o = 1;
    for (std::size_t j = 0; j < orders_.size(); ++j) o = std::lcm(o, orders_[j] / std::gcd(v[j] % orders_[j], orders_[j]));
    return o;
}

std::uint64_t ModulusGroup::order_of(const FieldPoly& x) const { return order_of_vector(log(x)); }

bool ModulusGroup::in_H(const FieldPoly& x) const { return H_.count(index_of(log(x))) > 0; }

std::unordered_set<std::uint64_t> ModulusGroup::closure(const std::vector<std::vector<std::uint64_t>>& gens) const {
    std::unordered_set<std::uint64_t> S{0};
    std::deque<std::uint64_t> queue{0};
    while (!queue.empty()) {
        auto v = vector_of(queue.front());
        queue.pop_front();
        for (const auto& g : gens) {
            std::vector<std::uint64_t> w(v.size());
            for (std::size_t j = 0; j < v.size(); ++j) w[j] = (v[j] + g[j]) % orders_[j];
            auto idx = index_of(w);
            if (S.insert(idx).second) queue.push_back(idx);
        }
    }
    return S;
}

std::uint64_t ModulusGroup::order_mod_set(std::vector<std::uint64_t> v, const std::unordered_set<std::uint64_t>& S) const {
    for (auto f : gf::divisors(order_of_vector(v))) {
        std::vector<std::uint64_t> w(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) w[j] = (v[j] % orders_[j]) * (f % orders_[j]) % orders_[j];
        if (S.count(index_of(w))) return f;
    }
    throw InvariantError("order computation did not terminate");
}

std::vector<std::uint64_t> ModulusGroup::drop_component(std::vector<std::uint64_t> v, std::size_t i) const {
    for (std::size_t j = comps_[i].first; j < comps_[i].first + comps_[i].count; ++j) v[j] = 0;
    return v;
}

std::uint64_t ModulusGroup::order_mod_H(const FieldPoly& x) const { return order_mod_set(log(x), H_); }

std::uint64_t ModulusGroup::projected_H(std::size_t i) const {
    std::vector<std::vector<std::uint64_t>> gens;
    for (const auto& v : H_vecs_) gens.push_back(drop_component(v, i));
    return closure(gens).size();
}

std::uint64_t ModulusGroup::ramified_residual_degree(std::size_t i) const {
    const FieldPoly& pi = comps_.at(i).pi;
    std::vector<std::uint64_t> v(orders_.size(), 0);
    for (std::size_t j = 0; j < comps_.size(); ++j) {
        if (j == i) continue;
        auto b = component_log(j, pi);
        if (!b) throw InvariantError("distinct primes share a factor");
        std::copy(b->begin(), b->end(), v.begin() + static_cast<long>(comps_[j].first));
    }
    std::vector<std::vector<std::uint64_t>> gens;
    for (const auto& h : H_vecs_) gens.push_back(drop_component(h, i));
    return order_mod_set(v, closure(gens));
}

std::uint64_t ModulusGroup::constants_times_H() const {
    auto gens = H_vecs_;
    const Field& F = field();
    if (F.q() > 2) gens.push_back(log(FieldPoly::constant(F, F.primitive())));
    return closure(gens).size();
}

// ---------------------------------------------------------------------------

std::uint64_t residual_degree(const FieldPoly& pi, const ModulusGroup& G) {
    if (!G.is_unit(pi)) throw PreconditionError("prime divides the modulus; use the ramified decomposition");
    return G.order_mod_H(pi);
}

Splitting decomposition(const FieldPoly& pi, const ModulusGroup& G) {
    if (pi.degree() < 1) throw PreconditionError("a prime must be nonconstant");
    const std::uint64_t index = G.order() / G.h();
    Splitting s;
    if (G.is_unit(pi)) {
        s.f = G.order_mod_H(pi);
    } else {
        FieldPoly p = gf::monic(pi);
        std::size_t i = 0;
        while (i < G.components().size() && G.components()[i].pi != p) ++i;
        if (i == G.components().size()) throw PreconditionError(gf::format(pi) + " is not a prime divisor of M");
        const auto& c = G.components()[i];
        std::uint64_t num = c.cyclic_order * c.unipotent_order * G.projected_H(i);
        if (num % G.h()) throw InvariantError("ramification index is not an integer");
        s.e = num / G.h();
        s.f = G.ramified_residual_degree(i);
    }
    if (index % (s.e * s.f)) throw InvariantError("e f does not divide [G : H]");
    s.g = index / (s.e * s.f);
    return s;
}

Splitting decomposition_at_infinity(const ModulusGroup& G) {
    Splitting s;
    std::uint64_t cH = G.constants_times_H();
    s.e = cH / G.h();
    s.g = G.order() / cH;
    return s;
}

zeta::PlaceVector place_counts(const ModulusGroup& G, int d_max) {
    if (d_max < 1 || d_max > 16) throw PreconditionError("place counts need 1 <= d_max <= 16");
    const Field& F = G.field();
    if (static_cast<double>(d_max) * std::log2(static_cast<double>(F.q())) > 24)
        throw SizeLimitError("irreducibles of degree d_max are not enumerable");
    zeta::PlaceVector a(d_max);
    a[0] += decomposition_at_infinity(G).g;
    for (int d = 1; d <= d_max; ++d)
        for (const auto& pi : gf::irreducibles(F, d)) {
            Splitting s = decomposition(pi, G);
            std::uint64_t deg = static_cast<std::uint64_t>(d) * s.f;
            if (deg <= static_cast<std::uint64_t>(d_max)) a[deg - 1] += s.g;
        }
    return a;
}

// ---------------------------------------------------------------------------

bool ds_criterion_51(const ModulusGroup& G, int l) {
    if (l < 2 || !gf::is_prime(static_cast<std::uint64_t>(l))) throw PreconditionError("l must be prime");
    for (const auto& [pi, e] : gf::factor(G.modulus()))
        if (pi.degree() == 1 || pi.degree() == l) return false;
    const Field& F = G.field();
    for (const auto& pi : gf::irreducibles(F, 1))
        if (G.order_mod_H(pi) == static_cast<std::uint64_t>(l)) return false;
    for (const auto& pi : gf::irreducibles(F, l))
        if (G.in_H(pi)) return false;
    return true;
}

bool zero_places_52(const ModulusGroup& G, int k) {
    for (const auto& h : G.H_generators())
        if (h.degree() > 0) throw PreconditionError("H must lie in the constants F_q^*");
    if (k < 2 || k >= G.modulus().degree()) throw PreconditionError("need 2 <= k < deg M");
    for (std::size_t i = 0; i < G.components().size(); ++i)
        if (G.components()[i].pi.degree() * static_cast<long>(G.ramified_residual_degree(i)) == k) return false;
    return true;
}

std::vector<int> totally_ramified_zero_range(const FieldPoly& M) {
    auto fac = gf::factor(M);
    if (fac.size() != 1) throw PreconditionError("M must be a prime power");
    int m = static_cast<int>(fac[0].first.degree()), r = fac[0].second;
    std::vector<int> out;
    for (int k = 2; k < r * m; ++k)
        if (k != m) out.push_back(k);
    return out;
}

}  // namespace dsc::carlitz
