#ifndef DSCURVE_DRINFELD_HPP
#define DSCURVE_DRINFELD_HPP

// Rank-n Drinfeld modules over F_q[t]: torsion polynomials, the rank-3
// stability check over F_2 with its place audit, and base change / descent
// between Drinfeld curves over F_q and Carlitz curves over F_{q^n}.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dscurve/carlitz.hpp"
#include "dscurve/gfpoly.hpp"
#include "dscurve/zeta.hpp"

namespace dsc::drinfeld {

using carlitz::LinearizedPoly;
using carlitz::XPoly;
using gf::Elem;
using gf::Field;
using gf::FieldPoly;
using gf::RatFunc;
using zeta::Int;
using zeta::Rat;

/// [t] = u_n tau^n + ... + u_1 tau + t; u[i] holds u_{i+1}.
struct DrinfeldAction {
    Field field = Field::make(2, 1);
    std::vector<RatFunc> u;

    int rank() const { return static_cast<int>(u.size()); }
    /// Requires rank >= 1 and u_n != 0.
    static DrinfeldAction make(const Field& F, std::vector<RatFunc> u);
    /// h_{q,n}: [t] = tau^n + t.
    static DrinfeldAction standard(const Field& F, int n);
    LinearizedPoly generator() const;
};

/// "u1;u2;u3" with rational functions in t.
DrinfeldAction parse_action(const Field& F, std::string_view text);
std::string format(const DrinfeldAction& D);

LinearizedPoly drinfeld_action(const DrinfeldAction& D, const FieldPoly& M);
/// [M] divided by Phi_Q over the proper monic divisors Q of M.
XPoly drinfeld_phi(const DrinfeldAction& D, const FieldPoly& M);

// ---------------------------------------------------------------------------

struct Condition {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Hypotheses of the rank-3, q = 2 stability criterion for M = t.
struct Rank3Verdict {
    bool ord_t_u3_zero = false;
    bool ord_t_u2_positive = false;
    bool ord_t_u1_positive = false;
    bool integral_at_infinity = false;
    bool integral_at_t_plus_1 = false;
    bool integral_at_t2_t_1 = false;
    /// gcd(x^4 + x, Phi mod t^2+t+1) = 1 over F_4.
    bool no_F4_root_at_t2_t_1 = false;
    /// x^2+x+1 does not divide Phi mod t+1.
    bool no_quadratic_at_t_plus_1 = false;
    bool overall = false;

    std::vector<Condition> conditions() const;
};

/// u_1, u_2, u_3 over F_2(t).
Rank3Verdict rank3_check(const RatFunc& u1, const RatFunc& u2, const RatFunc& u3);

/// One edge of a Newton polygon: `length` roots of valuation `valuation`.
struct NewtonSegment {
    Rat valuation;
    long length = 0;
};

/// Lower convex hull of (i, ord(c_i)); infinite valuations are skipped.
std::vector<NewtonSegment> newton_polygon(const std::vector<long>& ords);

struct PlaceReport {
    std::string place;
    std::string status;       // "totally ramified", "factored", "not certified", "inconclusive"
    gf::DegreeProfile profile;  // factor degrees of the reduction over the residue field
    long new_places = 0;      // places of degree 2 over F_2 above this place
};

struct Rank3Audit {
    std::vector<NewtonSegment> slopes_at_t, slopes_at_infinity;
    std::vector<PlaceReport> places;  // t, 1/t, t+1, t^2+t+1
    bool conclusive = false;
    /// #X(F_4) - #X(F_2) from the audited places, when conclusive.
    long new_points = 0;
};

/// Recomputes the place data behind that criterion. PreconditionError
/// when some u_i has a pole at 1/t, t+1 or t^2+t+1.
Rank3Audit place_audit_rank3(const RatFunc& u1, const RatFunc& u2, const RatFunc& u3);

// ---------------------------------------------------------------------------

struct BaseChange {
    XPoly phi;                 // over F_q
    bool equal = false;        // Drinfeld over F_q equals Carlitz over F_{q^n}
    bool coefficients_in_base = false;
};

/// Phi_{M,h_{q,n}} through both routes. PreconditionError with the splitting
/// over F_{q^n} when M factors differently there.
BaseChange basechange_phi(std::uint64_t q, int n, const FieldPoly& M);

struct Descent {
    std::vector<int> certified;     // k with a_k(X_{M,1}) = 0
    zeta::PlaceVector carlitz_places;  // a_1..a_bound of X_{M,l} over F_{q^l}
    bool ramification_zero = false;         // a_l(X_{M,l}) = 0 by the ramification criterion
};

/// l prime, deg M > l, M irreducible over F_{q^l}.
Descent descent_zero_places(std::uint64_t q, int l, const FieldPoly& M);

/// a_k(X_{M,n}) = (1/k) sum_{d | k} mu(d) a_1(X_{M, nk/d}); a1 maps an index
/// j to a_1(X_{M,j}). InconsistentError when the sum is not divisible by k.
Int constant_extension_places(const std::map<long, Int>& a1, long n, long k);

}  // namespace dsc::drinfeld

#endif
