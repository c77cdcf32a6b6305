#ifndef DSCURVE_CURVELAB_HPP
#define DSCURVE_CURVELAB_HPP

// Concrete curve models with brute-force point counts, closed-form zeta data
// of the Deligne-Lusztig families, and Howe's hyperelliptic DS constructions.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dscurve/gfpoly.hpp"
#include "dscurve/zeta.hpp"

namespace dsc::curvelab {

using gf::Elem;
using gf::Field;
using gf::FieldPoly;
using gf::MPoly;

/// y^2 + h(x) y = f(x) on the weighted projective model of weight g+1.
struct Hyperelliptic {
    Field field = Field::make(2, 1);
    FieldPoly h, f;
    int genus = 0;
};

/// Smooth plane curve F(x, y, z) = 0.
struct PlaneProjective {
    Field field = Field::make(2, 1);
    MPoly F;
};

/// Affine plane model plus declared closed points at infinity, each given by
/// its degree over the base field.
struct PlaneAffinePlus {
    Field field = Field::make(2, 1);
    MPoly F;
    std::vector<int> infinity_degrees;
};

/// Affine space curve cut out by several equations in the same variables,
/// plus declared points at infinity.
struct SpaceAffinePlus {
    Field field = Field::make(2, 1);
    std::vector<MPoly> equations;
    std::vector<int> infinity_degrees;
};

using CurveModel = std::variant<Hyperelliptic, PlaneProjective, PlaneAffinePlus, SpaceAffinePlus>;

/// Throws PreconditionError when the model is singular or has genus < 1.
Hyperelliptic make_hyperelliptic(const Field& F, const FieldPoly& h, const FieldPoly& f);
/// Requires a homogeneous polynomial in x, y, z with no singular point over
/// F_{q^k} for k up to the tested degree.
PlaneProjective make_plane(const Field& F, const MPoly& poly);
PlaneAffinePlus make_affine_plus(const Field& F, const MPoly& poly, std::vector<int> infinity_degrees);

/// Tested extension degrees for the plane smoothness check.
int plane_smoothness_degree(const Field& F, long degree);

/// Smoothness of the affine part and of the points at infinity of y^2+hy=f.
bool hyperelliptic_smooth(const FieldPoly& h, const FieldPoly& f);
/// g with deg h <= g+1, deg f <= 2g+2, at least one bound tight.
int hyperelliptic_genus(const FieldPoly& h, const FieldPoly& f);

/// N_m, the number of F_{q^m}-rational points.
std::int64_t count_points(const CurveModel& c, int m);
std::vector<std::int64_t> count_points_upto(const CurveModel& c, int n);
/// Reference count: tries every y in F_{q^m}.
std::int64_t count_hyperelliptic_naive(const Hyperelliptic& c, int m);

/// "hyp q=2 h=x^2+x f=x^5+x^3+x^2+x", "plane q=4 F=x^3+y^3+z^3" or
/// "affine q=8 F=... inf=1".
CurveModel parse_curve(std::string_view spec);
std::string describe(const CurveModel& c);
std::uint64_t base_order(const CurveModel& c);

// ---------------------------------------------------------------------------

enum class Family { Hermitian, Suzuki, Ree, DrinfeldDL };

struct FamilyParams {
    Family family;
    std::uint64_t param;  // q0 for Hermitian, e for Suzuki, s for Ree, q for DrinfeldDL
};

struct FamilyInfo {
    std::uint64_t q;
    std::uint64_t q0;  // 0 for DrinfeldDL
    long genus;
};

FamilyInfo family_info(const FamilyParams& p);
/// Closed-form zeta data (factored real Weil polynomial). For DrinfeldDL the
/// data is recovered from brute-force counts and needs q^g <= 2^22.
zeta::ZetaData family_zeta(const FamilyParams& p);
/// Affine model plus one rational point at infinity.
CurveModel family_model(const FamilyParams& p);
Family parse_family(std::string_view name);
std::string family_name(Family f);

/// N_m of y^q - y = z^{q+1} by affine scan plus the point at infinity.
std::int64_t drinfeld_dl_counts(std::uint64_t q, int m);

// ---------------------------------------------------------------------------

struct HoweResult {
    Hyperelliptic curve;
    int attempts = 0;
    std::int64_t n1 = 0, n2 = 0;
};

/// Randomized Lagrange construction of a DS curve for F_{q^2}/F_q, q odd.
HoweResult howe_interpolation(std::uint64_t q, std::uint64_t seed = 0, int max_attempts = 64);

struct HoweCubicResult {
    Hyperelliptic curve;
    std::int64_t n1 = 0, n3 = 0;
};

/// y^2 = x^{q^3} - x + n with n a nonsquare in F_q.
HoweCubicResult howe_cubic(std::uint64_t q, Elem n);

}  // namespace dsc::curvelab

#endif
