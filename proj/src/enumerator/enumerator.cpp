#include "dscurve/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "dscurve/error.hpp"
#include "dscurve/gfpoly.hpp"

namespace dsc::enumerator {

namespace {

constexpr int kMaxGenus = 8;
constexpr int kMaxPrecision = 256;

Int factorial(unsigned n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int binomial(const Int& n, unsigned k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

Int ipow(const Int& b, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

void check_args(std::uint64_t q, int g) {
    if (g < 1 || g > kMaxGenus) throw PreconditionError("enumeration supports 1 <= g <= 8");
    if (!gf::prime_power(q)) throw PreconditionError("q must be a prime power");
}

// A_0..A_n of (1-t)(1-qt) prod_d (1-t^d)^{-a_d}, truncated at degree n.
std::vector<Int> series_coefficients(std::uint64_t q, const std::vector<Int>& a, std::size_t n) {
    std::vector<Int> s(n + 1, 0);
    s[0] = 1;
    for (std::size_t d = 1; d <= a.size() && d <= n; ++d) {
        if (a[d - 1] == 0) continue;
        std::vector<Int> next(n + 1, 0);
        for (std::size_t j = 0; j * d <= n; ++j) {
            Int c = binomial(a[d - 1] + j - 1, static_cast<unsigned>(j));
            for (std::size_t k = 0; k + j * d <= n; ++k) next[k + j * d] += c * s[k];
        }
        s = std::move(next);
    }
    // Multiply by 1 - (1+q)t + q t^2.
    std::vector<Int> out(n + 1, 0);
    for (std::size_t k = 0; k <= n; ++k) {
        out[k] = s[k];
        if (k >= 1) out[k] -= (1 + Int(q)) * s[k - 1];
        if (k >= 2) out[k] += Int(q) * s[k - 2];
    }
    return out;
}

std::vector<Rat> solve_h(std::uint64_t q, int g, const std::vector<Int>& prefix) {
    std::size_t i = prefix.size();
    auto A = series_coefficients(q, prefix, i);
    std::vector<Int> H(i + 1);
    H[0] = 1;
    for (std::size_t n = 1; n <= i; ++n) {
        Int v = A[n];
        for (std::size_t k = n % 2; k < n; k += 2) {
            unsigned j = static_cast<unsigned>((n - k) / 2);
            v -= H[k] * binomial(Int(g - static_cast<long>(k)), j) * ipow(Int(q), j);
        }
        H[n] = v;
    }
    return std::vector<Rat>(H.begin() + 1, H.end());
}

// h^{(g-i)}(x) = sum_{n<=i} H_n (g-n)!/(i-n)! x^{i-n}.
ExactPoly shifted_derivative(int g, const std::vector<Rat>& H) {
    int i = static_cast<int>(H.size());
    std::vector<Rat> c(i + 1);
    for (int n = 0; n <= i; ++n) {
        Rat Hn = n == 0 ? Rat(1) : H[n - 1];
        Rat w(factorial(g - n), factorial(i - n));
        w.canonicalize();
        c[i - n] = Hn * w;
    }
    return ExactPoly(std::move(c));
}

struct Enclosure {
    Rat lo, hi;
};

Enclosure eval_interval(const ExactPoly& p, const Rat& lo, const Rat& hi) {
    if (lo == hi) {
        Rat v = p.eval(lo);
        return {v, v};
    }
    Rat a = 0, b = 0;
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        Rat p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
        a = std::min({p1, p2, p3, p4}) + c[k];
        b = std::max({p1, p2, p3, p4}) + c[k];
    }
    return {a, b};
}

Enclosure two_sqrt(std::uint64_t q, int precision) {
    Int scale = ipow(Int(2), precision);
    Int n = 4 * Int(q) * scale * scale, r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    Rat lo(r, scale);
    lo.canonicalize();
    if (r * r == n) return {lo, lo};
    Rat hi(r + 1, scale);
    hi.canonicalize();
    return {lo, hi};
}

Int floor_rat(const Rat& x) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Int ceil_rat(const Rat& x) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

// Yun's square-free decomposition over Q: f = c * prod a_k^k.
std::vector<std::pair<ExactPoly, int>> squarefree_factors(const ExactPoly& f) {
    std::vector<std::pair<ExactPoly, int>> out;
    if (f.degree() < 1) return out;
    ExactPoly df = derivative(f);
    ExactPoly a0 = gcd(f, df);
    ExactPoly b = divmod(f, a0).quotient;
    ExactPoly c = divmod(df, a0).quotient;
    ExactPoly d = c - derivative(b);
    for (int k = 1; b.degree() >= 1; ++k) {
        ExactPoly a = gcd(b, d);
        if (a.degree() >= 1) out.emplace_back(a, k);
        b = divmod(b, a).quotient;
        c = divmod(d, a).quotient;
        d = c - derivative(b);
    }
    return out;
}

struct Bounds {
    bool feasible = true;
    // Outer and inner estimates of the true bounds on the constant term.
    Rat lower_outer, lower_inner, upper_outer, upper_inner;
};

Bounds constant_term_bounds(const PartialCandidate& node, const ExactPoly& T, int precision) {
    int j = static_cast<int>(node.prefix.size()) + 1;
    auto crit = critical_points(node, precision);
    int total = 0;
    for (const auto& r : crit) total += r.multiplicity;
    Bounds b;
    if (total != j - 1) {
        b.feasible = false;
        return b;
    }
    std::vector<Enclosure> alphas;
    Enclosure s = two_sqrt(node.q, precision);
    alphas.push_back({-s.hi, -s.lo});
    for (const auto& r : crit)
        for (int m = 0; m < r.multiplicity; ++m) alphas.push_back({r.lo, r.hi});
    alphas.push_back(s);
    bool have_lower = false, have_upper = false;
    for (int k = 0; k <= j; ++k) {
        Enclosure v = eval_interval(T, alphas[k].lo, alphas[k].hi);
        // T(alpha_k) + c must have sign (-1)^{j-k}, ties allowed.
        if ((j - k) % 2 == 0) {
            Rat outer = -v.hi, inner = -v.lo;
            if (!have_lower || outer > b.lower_outer) b.lower_outer = outer;
            if (!have_lower || inner > b.lower_inner) b.lower_inner = inner;
            have_lower = true;
        } else {
            Rat outer = -v.lo, inner = -v.hi;
            if (!have_upper || outer < b.upper_outer) b.upper_outer = outer;
            if (!have_upper || inner < b.upper_inner) b.upper_inner = inner;
            have_upper = true;
        }
    }
    return b;
}

Range intersect(Range a, const Range& b) {
    a.lo = std::max(a.lo, b.lo);
    a.hi = std::min(a.hi, b.hi);
    return a;
}

Candidate make_candidate(const PartialCandidate& leaf) {
    Candidate c;
    c.a = leaf.prefix;
    std::vector<Rat> h(leaf.g + 1);
    h[leaf.g] = 1;
    for (int n = 1; n <= leaf.g; ++n) h[leaf.g - n] = leaf.H[n - 1];
    c.h = ExactPoly(std::move(h));
    c.P = zeta::frobenius_from_real_weil_coeffs(c.h, Int(leaf.q), leaf.g);
    return c;
}

struct Search {
    std::uint64_t q;
    int g;
    Constraints c;

    std::vector<Int> choices(const PartialCandidate& node) const {
        int j = static_cast<int>(node.prefix.size()) + 1;
        std::vector<Int> out;
        if (c.zeros.count(j)) {
            if (accept(node, Int(0))) out.emplace_back(0);
            return out;
        }
        if (j == 1 && c.a1) {
            if (accept(node, *c.a1)) out.push_back(*c.a1);
            return out;
        }
        Range r = c.prune ? prune_range(node) : weil_range(node);
        for (Int a = r.lo; a <= r.hi; ++a)
            if (accept(node, a)) out.push_back(a);
        return out;
    }

    bool final_filter(const Candidate& cand) const {
        if (!c.ds_m) return true;
        auto z = zeta::ZetaData::from_real_weil(q, g, cand.h);
        return zeta::ds_check(z, *c.ds_m);
    }

    void descend(const PartialCandidate& node, std::vector<Candidate>& sink,
                 const std::function<void(const Candidate&)>* emit) const {
        if (static_cast<int>(node.prefix.size()) == g) {
            Candidate cand = make_candidate(node);
            if (!final_filter(cand)) return;
            if (emit)
                (*emit)(cand);
            else
                sink.push_back(std::move(cand));
            return;
        }
        for (const Int& a : choices(node)) descend(child(node, a), sink, emit);
    }
};

}  // namespace

HCoefficients h_coefficients(std::uint64_t q, int g, const std::vector<Int>& prefix) {
    check_args(q, g);
    if (prefix.empty() || static_cast<int>(prefix.size()) > g)
        throw PreconditionError("prefix length must lie in 1..g");
    HCoefficients out;
    out.H = solve_h(q, g, prefix);
    auto bumped = prefix;
    bumped.back() += 1;
    out.slope = solve_h(q, g, bumped).back() - out.H.back();
    return out;
}

ExactPoly derivative_at_depth(std::uint64_t q, int g, const std::vector<Int>& prefix) {
    check_args(q, g);
    if (static_cast<int>(prefix.size()) > g) throw PreconditionError("prefix longer than g");
    return shifted_derivative(g, solve_h(q, g, prefix));
}

PartialCandidate root_node(std::uint64_t q, int g) {
    check_args(q, g);
    PartialCandidate n;
    n.q = q;
    n.g = g;
    return n;
}

PartialCandidate child(const PartialCandidate& node, const Int& a) {
    if (static_cast<int>(node.prefix.size()) >= node.g) throw PreconditionError("node is already a leaf");
    PartialCandidate c = node;
    c.prefix.push_back(a);
    c.H = solve_h(node.q, node.g, c.prefix);
    return c;
}

std::vector<RootEnclosure> critical_points(const PartialCandidate& node, int precision) {
    // T_{i+1}' is h^{(g-i)} of the node itself.
    ExactPoly d = shifted_derivative(node.g, node.H);
    std::vector<RootEnclosure> out;
    if (d.degree() < 1) return out;
    auto factors = squarefree_factors(d);
    Rat width(1, ipow(Int(2), precision));
    width.canonicalize();
    for (const auto& iv : zeta::isolate_real_roots(d, width)) {
        int mult = 0;
        for (const auto& [f, k] : factors) {
            bool here = f.sign_at(iv.lo) == 0 || (iv.lo != iv.hi && zeta::SturmChain(f).count(iv.lo, iv.hi) > 0);
            if (here) {
                mult = k;
                break;
            }
        }
        if (mult == 0) throw InvariantError("critical point without a square-free factor");
        out.push_back({iv.lo, iv.hi, mult, precision});
    }
    return out;
}

Range weil_range(const PartialCandidate& node) {
    int j = static_cast<int>(node.prefix.size()) + 1;
    if (j > node.g) throw PreconditionError("node is already a leaf");
    auto iv = zeta::hws_interval_at(ipow(Int(node.q), j), node.g);
    Int known = 0;
    for (int d = 1; d < j; ++d)
        if (j % d == 0) known += d * node.prefix[d - 1];
    Rat lo(iv.lo - known, j), hi(iv.hi - known, j);
    lo.canonicalize();
    hi.canonicalize();
    return {std::max(Int(0), ceil_rat(lo)), floor_rat(hi)};
}

Range prune_range(const PartialCandidate& node) {
    int i = static_cast<int>(node.prefix.size());
    if (i >= node.g) throw PreconditionError("node is already a leaf");
    if (i == 0) {
        auto iv = zeta::hws_interval(node.q, node.g);
        return {iv.lo, iv.hi};
    }
    int j = i + 1;
    // t(a) = t0 + s*a is the constant term of h^{(g-j)} for the child.
    auto H0 = solve_h(node.q, node.g, [&] {
        auto p = node.prefix;
        p.emplace_back(0);
        return p;
    }());
    ExactPoly full = shifted_derivative(node.g, H0);
    Rat t0 = full[0];
    ExactPoly T = full - ExactPoly::monomial(t0, 0);
    auto H1 = h_coefficients(node.q, node.g, [&] {
        auto p = node.prefix;
        p.emplace_back(0);
        return p;
    }());
    Rat s = H1.slope * Rat(factorial(node.g - j));
    if (s <= 0) throw InvariantError("constant term must increase with a_i");

    Range weil = weil_range(node);
    for (int precision = 32;; precision *= 2) {
        Bounds b = constant_term_bounds(node, T, precision);
        if (!b.feasible) return {Int(1), Int(0)};
        Range r{std::max(Int(0), ceil_rat((b.lower_outer - t0) / s)), floor_rat((b.upper_outer - t0) / s)};
        bool settled = r.hi == floor_rat((b.upper_inner - t0) / s) &&
                       r.lo == std::max(Int(0), ceil_rat((b.lower_inner - t0) / s));
        if (settled || precision >= kMaxPrecision) return intersect(r, weil);
    }
}

bool accept(const PartialCandidate& node, const Int& a) {
    if (a < 0) return false;
    PartialCandidate c = child(node, a);
    return zeta::is_weil_valid(shifted_derivative(c.g, c.H), Int(c.q));
}

void enumerate(std::uint64_t q, int g, const Constraints& c0, const std::function<void(const Candidate&)>& emit) {
    check_args(q, g);
    Search s{q, g, c0};
    if (c0.ds_m) {
        if (*c0.ds_m < 2) throw PreconditionError("DS modulus must be at least 2");
        for (int d = 2; d <= g; ++d)
            if (*c0.ds_m % d == 0) s.c.zeros.insert(d);
    }
    for (int z : s.c.zeros)
        if (z < 1 || z > g) throw PreconditionError("forced-zero index outside 1..g");
    PartialCandidate root = root_node(q, g);
    std::vector<Candidate> unused;
    if (c0.jobs <= 1) {
        s.descend(root, unused, &emit);
        return;
    }
    // Depth-1 subtrees go to workers; results are merged in a_1 order.
    auto firsts = s.choices(root);
    std::vector<std::vector<Candidate>> parts(firsts.size());
    std::vector<std::exception_ptr> errors(firsts.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < firsts.size();) {
            try {
                s.descend(child(root, firsts[k]), parts[k], nullptr);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(c0.jobs, static_cast<unsigned>(std::max<std::size_t>(firsts.size(), 1)));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& part : parts)
        for (const auto& cand : part) emit(cand);
}

std::vector<Candidate> enumerate(std::uint64_t q, int g, const Constraints& c) {
    std::vector<Candidate> out;
    enumerate(q, g, c, [&](const Candidate& cand) { out.push_back(cand); });
    return out;
}

}  // namespace dsc::enumerator
