#ifndef DSCURVE_ZETA_HPP
#define DSCURVE_ZETA_HPP

// Zeta data of curves over F_q: point and place counts, the Frobenius
// polynomial P(t), the real Weil polynomial h(x), exact conversions between
// them, and the Hasse-Weil-Serre / explicit-formula tools used to decide
// Diophantine stability.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dscurve/error.hpp"

namespace dsc::zeta {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense univariate polynomial with rational coefficients, low degree first.
class ExactPoly {
   public:
    ExactPoly() = default;
    explicit ExactPoly(std::vector<Rat> coeffs);
    static ExactPoly from_ints(const std::vector<Int>& coeffs);
    static ExactPoly monomial(const Rat& c, std::size_t degree);

    const std::vector<Rat>& coeffs() const { return c_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rat operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }
    bool is_integral() const;
    /// Integer view; throws PreconditionError on a non-integral coefficient.
    std::vector<Int> integer_coeffs() const;
    Rat eval(const Rat& x) const;
    int sign_at(const Rat& x) const { return sgn(eval(x)); }

    ExactPoly operator+(const ExactPoly& o) const;
    ExactPoly operator-(const ExactPoly& o) const;
    ExactPoly operator-() const;
    ExactPoly operator*(const ExactPoly& o) const;
    ExactPoly scale(const Rat& s) const;
    bool operator==(const ExactPoly& o) const { return c_ == o.c_; }
    bool operator!=(const ExactPoly& o) const { return !(*this == o); }

   private:
    std::vector<Rat> c_;
    void trim();
};

struct ExactDivMod {
    ExactPoly quotient, remainder;
};
ExactDivMod divmod(const ExactPoly& a, const ExactPoly& b);
ExactPoly derivative(const ExactPoly& a);
/// Monic gcd over Q.
ExactPoly gcd(const ExactPoly& a, const ExactPoly& b);
/// Positive rational multiple with coprime integer coefficients.
ExactPoly primitive_part(const ExactPoly& a);
ExactPoly pow(const ExactPoly& a, unsigned e);

/// "32*t^10+96*t^9+...+6*t+1"; non-integers print as "1/2*t".
std::string format(const ExactPoly& p, char var = 't');
/// Accepts any single-letter variable.
ExactPoly parse_exact(std::string_view text);

// ---------------------------------------------------------------------------
// Exact real-root tools (Sturm sequences over Q).

class SturmChain {
   public:
    /// `f` must be nonzero; repeated roots are counted once.
    explicit SturmChain(const ExactPoly& f);
    /// Distinct real roots in the half-open interval (a, b].
    int count(const Rat& a, const Rat& b) const;
    int count_all() const;
    int variations(const Rat& x) const;

   private:
    std::vector<std::vector<Int>> seq_;  // primitive integer multiples, signs preserved
    int variations_at_infinity(bool positive) const;
};

/// Isolating interval [lo, hi] of a real root; lo == hi for an exact rational root.
struct RootInterval {
    Rat lo, hi;
};

/// Isolating intervals of the distinct real roots, ascending, each of width
/// at most `width` (or exact).
std::vector<RootInterval> isolate_real_roots(const ExactPoly& f, const Rat& width);

/// Floor of 2*sqrt(n) computed exactly.
Int floor_two_sqrt(const Int& n);

/// Whether every root of h is real and lies in [-2 sqrt q, 2 sqrt q]; exact.
bool is_weil_valid(const ExactPoly& h, const Int& q);

// ---------------------------------------------------------------------------

using PointVector = std::vector<Int>;
using PlaceVector = std::vector<Int>;

/// a_d by Moebius inversion; InconsistentError (1-based index) when an entry
/// is negative or non-integral.
PlaceVector places_from_points(const PointVector& N);
PointVector points_from_places(const PlaceVector& a);

/// P(t) = t^g h((q t^2 + 1)/t) expanded, A_0..A_2g.
std::vector<Int> frobenius_from_real_weil_coeffs(const ExactPoly& h, const Int& q, int g);
/// Triangular solve for h; InconsistentError when non-integral or when the
/// reconstructed P differs from the input.
ExactPoly real_weil_from_frobenius_coeffs(const std::vector<Int>& P, const Int& q, int g);

/// Zeta data (q, g, P). The real Weil polynomial is stored factored as
/// prod h_i^{e_i}, which keeps closed-form families of large genus cheap:
/// point counts use per-factor power sums and P is expanded only on request.
class ZetaData {
   public:
    static ZetaData from_frobenius(std::uint64_t q, int g, const std::vector<Int>& P);
    static ZetaData from_real_weil(std::uint64_t q, int g, const ExactPoly& h);
    static ZetaData from_real_weil_factors(std::uint64_t q, std::vector<std::pair<ExactPoly, unsigned>> factors);

    std::uint64_t q() const { return q_; }
    int g() const { return g_; }
    const std::vector<std::pair<ExactPoly, unsigned>>& real_weil_factors() const { return factors_; }
    /// Expanded h(x) (monic, degree g).
    ExactPoly real_weil() const;
    /// Expanded P(t): A_0..A_2g.
    std::vector<Int> frobenius() const;
    /// L(t) = t^{2g} P(1/t), the characteristic polynomial of Frobenius.
    std::vector<Int> weil_polynomial() const;

    /// S_1..S_n, S_m = sum of m-th powers of the Frobenius eigenvalues.
    std::vector<Int> power_sums(int n) const;
    /// N_m = 1 + q^m - S_m for m >= 1.
    Int points(int m) const;
    PointVector points_upto(int n) const;
    PlaceVector places_upto(int n) const;

   private:
    std::uint64_t q_ = 0;
    int g_ = 0;
    std::vector<std::pair<ExactPoly, unsigned>> factors_;
    std::vector<std::vector<Int>> factor_frobenius_;  // P of each factor
};

ZetaData frobenius_from_counts(std::uint64_t q, int g, const PointVector& N);
Int extend_counts(const ZetaData& z, int m);
inline ExactPoly real_weil_from_frobenius(const ZetaData& z) { return z.real_weil(); }
inline ZetaData frobenius_from_real_weil(const ExactPoly& h, std::uint64_t q, int g) {
    return ZetaData::from_real_weil(q, g, h);
}

/// a_d = 0 for every divisor d > 1 of m.
bool ds_check(const ZetaData& z, int m);
/// Same from a place vector; PreconditionError when it is shorter than m.
bool ds_check(const PlaceVector& a, int m);

struct IntInterval {
    Int lo, hi;
};

/// [max(0, 1+Q - g floor(2 sqrt Q)), 1+Q + g floor(2 sqrt Q)] for any Q >= 1.
IntInterval hws_interval_at(const Int& Q, int g);
/// As above, requiring q to be a prime power.
IntInterval hws_interval(std::uint64_t q, int g);

struct AdmissiblePair {
    std::uint64_t q;
    int m;
    bool operator==(const AdmissiblePair& o) const { return q == o.q && m == o.m; }
};

std::vector<AdmissiblePair> admissible_pairs(int g);

/// Weil-Serre explicit-formula test with weights c_1..c_n; exact in sqrt(q).
/// Throws PreconditionError when c_1 = 0 or F(t) = 1 + 2 sum c_n cos(nt)
/// is found negative on a 4096-point grid.
bool explicit_formula_filter(std::uint64_t q, int g, const PlaceVector& a, const std::vector<Rat>& c);

/// Sign of r + s*sqrt(n) for n >= 0, decided exactly.
int sign_with_sqrt(const Rat& r, const Rat& s, const Int& n);

}  // namespace dsc::zeta

#endif
