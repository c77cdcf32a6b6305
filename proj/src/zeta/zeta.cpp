#include <cmath>
#include <numbers>

#include "dscurve/gfpoly.hpp"
#include "dscurve/zeta.hpp"

namespace dsc::zeta {

namespace {

Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

void require_prime_power(std::uint64_t q) {
    if (!gf::prime_power(q)) throw PreconditionError(std::to_string(q) + " is not a prime power");
}

// Power sums S_1..S_n of the reciprocal roots of P(t) = sum A_k t^k, A_0 = 1.
std::vector<Int> newton_power_sums(const std::vector<Int>& A, int n) {
    std::vector<Int> S(n + 1);
    for (int m = 1; m <= n; ++m) {
        Int s = (m < static_cast<int>(A.size())) ? Int(-m * A[m]) : Int(0);
        for (int k = 1; k < m && k < static_cast<int>(A.size()); ++k) s -= A[k] * S[m - k];
        S[m] = s;
    }
    return S;
}

}  // namespace

PlaceVector places_from_points(const PointVector& N) {
    if (N.empty()) throw PreconditionError("point-count vector is empty");
    PlaceVector a(N.size());
    for (std::size_t d = 1; d <= N.size(); ++d) {
        Int s = 0;
        for (auto e : gf::divisors(d)) s += gf::moebius(d / e) * N[e - 1];
        if (!mpz_divisible_ui_p(s.get_mpz_t(), d))
            throw InconsistentError("not a point-count sequence of a curve: a_" + std::to_string(d) + " is not an integer", d);
        a[d - 1] = s / static_cast<unsigned long>(d);
        if (a[d - 1] < 0)
            throw InconsistentError("not a point-count sequence of a curve: a_" + std::to_string(d) + " is negative", d);
    }
    return a;
}

PointVector points_from_places(const PlaceVector& a) {
    PointVector N(a.size());
    for (std::size_t m = 1; m <= a.size(); ++m)
        for (auto d : gf::divisors(m)) N[m - 1] += static_cast<unsigned long>(d) * a[d - 1];
    return N;
}

std::vector<Int> frobenius_from_real_weil_coeffs(const ExactPoly& h, const Int& q, int g) {
    if (g < 1) throw PreconditionError("genus must be at least 1");
    if (h.degree() != g || h.lead() != 1 || !h.is_integral())
        throw PreconditionError("real Weil polynomial must be monic of degree g with integer coefficients");
    auto c = h.integer_coeffs();
    std::vector<Int> qp(g + 1);
    qp[0] = 1;
    for (int j = 1; j <= g; ++j) qp[j] = qp[j - 1] * q;
    std::vector<Int> A(2 * g + 1);
    for (int k = 0; k <= g; ++k) {
        const Int& H = c[g - k];  // H_k is the coefficient of x^{g-k}
        if (H == 0) continue;
        for (int j = 0; j <= g - k; ++j) A[k + 2 * j] += H * binomial(g - k, j) * qp[j];
    }
    return A;
}

ExactPoly real_weil_from_frobenius_coeffs(const std::vector<Int>& P, const Int& q, int g) {
    if (g < 1) throw PreconditionError("genus must be at least 1");
    if (static_cast<int>(P.size()) != 2 * g + 1)
        throw PreconditionError("Frobenius polynomial must have 2g+1 coefficients");
    std::vector<Int> qp(g + 1);
    qp[0] = 1;
    for (int j = 1; j <= g; ++j) qp[j] = qp[j - 1] * q;
    std::vector<Int> H(g + 1);
    for (int n = 0; n <= g; ++n) {
        Int s = P[n];
        for (int k = n % 2; k < n; k += 2) s -= H[k] * binomial(g - k, (n - k) / 2) * qp[(n - k) / 2];
        H[n] = s;  // the diagonal entries are 1
    }
    std::vector<Int> hc(g + 1);
    for (int k = 0; k <= g; ++k) hc[g - k] = H[k];
    ExactPoly h = ExactPoly::from_ints(hc);
    auto back = frobenius_from_real_weil_coeffs(h, q, g);
    for (int i = 0; i <= 2 * g; ++i)
        if (back[i] != P[i])
            throw InconsistentError("P(t) is not of the form t^g h((qt^2+1)/t)", static_cast<std::size_t>(i));
    return h;
}

// ---------------------------------------------------------------------------

ZetaData ZetaData::from_frobenius(std::uint64_t q, int g, const std::vector<Int>& P) {
    require_prime_power(q);
    if (g < 1) throw PreconditionError("genus must be at least 1");
    if (static_cast<int>(P.size()) != 2 * g + 1)
        throw PreconditionError("Frobenius polynomial must have degree 2g");
    if (P[0] != 1) throw InconsistentError("P(0) must be 1", 0);
    for (int k = g + 1; k <= 2 * g; ++k)
        if (P[k] != ipow(Int(q), k - g) * P[2 * g - k])
            throw InconsistentError("functional equation A_k = q^(k-g) A_(2g-k) fails", static_cast<std::size_t>(k));
    ExactPoly h = real_weil_from_frobenius_coeffs(P, Int(q), g);
    if (!is_weil_valid(h, Int(q)))
        throw InconsistentError("no curve with these data: h has roots outside [-2 sqrt q, 2 sqrt q]");
    ZetaData z;
    z.q_ = q;
    z.g_ = g;
    z.factors_ = {{h, 1u}};
    z.factor_frobenius_ = {P};
    return z;
}

ZetaData ZetaData::from_real_weil(std::uint64_t q, int g, const ExactPoly& h) {
    if (h.degree() != g) throw PreconditionError("real Weil polynomial must have degree g");
    return from_real_weil_factors(q, {{h, 1u}});
}

ZetaData ZetaData::from_real_weil_factors(std::uint64_t q, std::vector<std::pair<ExactPoly, unsigned>> factors) {
    require_prime_power(q);
    ZetaData z;
    z.q_ = q;
    long g = 0;
    for (auto& [h, e] : factors) {
        if (h.degree() < 1 || h.lead() != 1 || !h.is_integral())
            throw PreconditionError("real Weil factors must be monic integer polynomials of positive degree");
        if (e == 0) continue;
        if (!is_weil_valid(h, Int(q)))
            throw InconsistentError("no curve with these data: h has roots outside [-2 sqrt q, 2 sqrt q]");
        g += h.degree() * static_cast<long>(e);
        z.factor_frobenius_.push_back(frobenius_from_real_weil_coeffs(h, Int(q), static_cast<int>(h.degree())));
        z.factors_.emplace_back(h, e);
    }
    if (g < 1) throw PreconditionError("genus must be at least 1");
    if (g > 1000000) throw SizeLimitError("genus too large");
    z.g_ = static_cast<int>(g);
    return z;
}

ExactPoly ZetaData::real_weil() const {
    ExactPoly h = ExactPoly::monomial(1, 0);
    for (const auto& [f, e] : factors_) h = h * pow(f, e);
    return h;
}

std::vector<Int> ZetaData::frobenius() const {
    if (factors_.size() == 1 && factors_[0].second == 1) return factor_frobenius_[0];
    return frobenius_from_real_weil_coeffs(real_weil(), Int(q_), g_);
}

std::vector<Int> ZetaData::weil_polynomial() const {
    auto P = frobenius();
    return std::vector<Int>(P.rbegin(), P.rend());
}

std::vector<Int> ZetaData::power_sums(int n) const {
    std::vector<Int> S(n + 1);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        auto s = newton_power_sums(factor_frobenius_[i], n);
        for (int m = 1; m <= n; ++m) S[m] += factors_[i].second * s[m];
    }
    return std::vector<Int>(S.begin() + 1, S.end());
}

Int ZetaData::points(int m) const {
    if (m < 1) throw PreconditionError("extension degree must be at least 1");
    return 1 + ipow(Int(q_), m) - power_sums(m).back();
}

PointVector ZetaData::points_upto(int n) const {
    if (n < 1) throw PreconditionError("need at least one count");
    auto S = power_sums(n);
    PointVector N(n);
    Int qm = 1;
    for (int m = 1; m <= n; ++m) {
        qm *= q_;
        N[m - 1] = 1 + qm - S[m - 1];
    }
    return N;
}

PlaceVector ZetaData::places_upto(int n) const { return places_from_points(points_upto(n)); }

ZetaData frobenius_from_counts(std::uint64_t q, int g, const PointVector& N) {
    require_prime_power(q);
    if (g < 1) throw PreconditionError("genus must be at least 1");
    if (static_cast<int>(N.size()) < g) throw PreconditionError("need at least g point counts");
    std::vector<Int> S(g + 1), A(2 * g + 1);
    Int qm = 1;
    for (int m = 1; m <= g; ++m) {
        qm *= q;
        S[m] = 1 + qm - N[m - 1];
    }
    A[0] = 1;
    for (int n = 1; n <= g; ++n) {
        Int s = 0;
        for (int k = 1; k <= n; ++k) s -= S[k] * A[n - k];
        if (!mpz_divisible_ui_p(s.get_mpz_t(), n))
            throw InconsistentError("no curve with these counts: A_" + std::to_string(n) + " is not an integer", n);
        A[n] = s / n;
    }
    for (int n = 0; n < g; ++n) A[2 * g - n] = ipow(Int(q), g - n) * A[n];
    ZetaData z = ZetaData::from_frobenius(q, g, A);
    for (std::size_t m = g + 1; m <= N.size(); ++m)
        if (z.points(static_cast<int>(m)) != N[m - 1])
            throw InconsistentError("count N_" + std::to_string(m) + " disagrees with the zeta function fixed by N_1..N_g", m);
    return z;
}

Int extend_counts(const ZetaData& z, int m) { return z.points(m); }

bool ds_check(const PlaceVector& a, int m) {
    if (m < 1) throw PreconditionError("extension degree must be at least 1");
    if (static_cast<int>(a.size()) < m) throw PreconditionError("insufficient data: need a_d for every d dividing m");
    for (auto d : gf::divisors(m))
        if (d > 1 && a[d - 1] != 0) return false;
    return true;
}

bool ds_check(const ZetaData& z, int m) {
    if (m < 1) throw PreconditionError("extension degree must be at least 1");
    return ds_check(z.places_upto(m), m);
}

IntInterval hws_interval_at(const Int& Q, int g) {
    if (Q < 1 || g < 1) throw PreconditionError("need Q >= 1 and g >= 1");
    Int r = g * floor_two_sqrt(Q);
    Int lo = 1 + Q - r;
    if (lo < 0) lo = 0;
    return {lo, 1 + Q + r};
}

IntInterval hws_interval(std::uint64_t q, int g) {
    require_prime_power(q);
    return hws_interval_at(Int(q), g);
}

std::vector<AdmissiblePair> admissible_pairs(int g) {
    if (g < 1 || g > 12) throw PreconditionError("admissible pairs are tabulated for 1 <= g <= 12");
    std::vector<AdmissiblePair> out;
    const Int gg = g;
    for (std::uint64_t q = 2;; ++q) {
        if (!gf::prime_power(q)) continue;
        Int upper = hws_interval(q, g).hi;
        bool m2_ok = false;
        for (int m = 2;; ++m) {
            Int Q = ipow(Int(q), m);
            if (hws_interval_at(Q, g).lo <= upper) {
                out.push_back({q, m});
                if (m == 2) m2_ok = true;
                continue;
            }
            // Beyond sqrt(Q) >= g the unfloored lower end 1+Q-2g sqrt(Q) is
            // increasing; once it clears `upper`, no larger m can succeed.
            Int gap = Q + 1 - upper;
            if (Q >= gg * gg && gap > 0 && gap * gap > 4 * gg * gg * Q) break;
        }
        // q(q-1-2g)^2 > 4g^2 makes lower(q^2) > upper(q) for this and every larger q.
        Int qq = q, d = qq - 1 - 2 * gg;
        if (!m2_ok && d > 0 && qq * d * d > 4 * gg * gg) break;
    }
    return out;
}

bool explicit_formula_filter(std::uint64_t q, int g, const PlaceVector& a, const std::vector<Rat>& c) {
    require_prime_power(q);
    if (c.empty() || c[0] == 0) throw PreconditionError("weight c_1 must be nonzero");
    if (a.empty()) throw PreconditionError("need a_1");
    {
        double worst = 0;
        std::vector<double> cd;
        for (const auto& x : c) cd.push_back(x.get_d());
        for (int i = 0; i < 4096; ++i) {
            double t = 2 * std::numbers::pi * i / 4096.0, F = 1;
            for (std::size_t n = 0; n < cd.size(); ++n) F += 2 * cd[n] * std::cos(static_cast<double>(n + 1) * t);
            worst = std::min(worst, F);
        }
        if (worst < -1e-9) throw PreconditionError("weights give a function 1 + 2 sum c_n cos(nt) that is negative");
    }
    // Quantities are carried as R + S sqrt(q).
    const Int Q = q;
    auto q_half = [&](int n, Rat& R, Rat& S, const Rat& w) {  // adds w * q^{n/2}
        if (n % 2 == 0)
            R += w * ipow(Q, n / 2);
        else
            S += w * ipow(Q, (n - 1) / 2);
    };
    auto q_minus_half = [&](int n, Rat& R, Rat& S, const Rat& w) {  // adds w * q^{-n/2}
        if (n % 2 == 0)
            R += w / ipow(Q, n / 2);
        else
            S += w / ipow(Q, (n + 1) / 2);
    };
    int n_max = static_cast<int>(c.size());
    Rat R = g, S = 0;
    for (int n = 1; n <= n_max; ++n) {
        q_half(n, R, S, c[n - 1]);
        q_minus_half(n, R, S, c[n - 1] * Rat(1 - a[0]));
    }
    for (int d = 2; d <= n_max && d <= static_cast<int>(a.size()); ++d) {
        if (a[d - 1] == 0) continue;
        for (int n = d; n <= n_max; n += d) q_minus_half(n, R, S, -Rat(d * a[d - 1]) * c[n - 1]);
    }
    return sign_with_sqrt(R, S, Q) >= 0;
}

}  // namespace dsc::zeta
