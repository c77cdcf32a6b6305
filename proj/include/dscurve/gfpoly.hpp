#ifndef DSCURVE_GFPOLY_HPP
#define DSCURVE_GFPOLY_HPP

// Finite fields F_{p^k}, dense univariate polynomials and rational functions
// over them, sparse multivariate polynomials for curve equations, and the
// place valuations of F_q(t).

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dscurve/error.hpp"

namespace dsc::gf {

using Elem = std::uint64_t;

// ---------------------------------------------------------------------------
// Small-integer number theory used throughout.

bool is_prime(std::uint64_t n);
/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
/// (p, k) with q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t q);
int moebius(std::uint64_t n);
/// Positive divisors in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);
/// Number of monic irreducible polynomials of degree d over F_q (necklace count).
std::uint64_t count_irreducible(std::uint64_t q, int d);
/// Exact q^e, throwing SizeLimitError on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t q, int e);

// ---------------------------------------------------------------------------

namespace detail {
struct FieldImpl;
}

/// F_q with q = p^k. Elements are encoded as integers 0..q-1 whose base-p
/// digits are the coefficients of the residue polynomial in the generator `a`.
/// Cheap to copy; all state is immutable and shared.
class Field {
   public:
    static constexpr std::uint64_t kMaxPrime = 1ull << 20;
    static constexpr int kMaxDegree = 16;
    static constexpr std::uint64_t kMaxOrder = 1ull << 40;

    /// Builds F_{p^k}. The defining polynomial comes from the shipped Conway
    /// table when available, otherwise it is the least primitive polynomial.
    static Field make(std::uint64_t p, int k);
    /// Convenience: F_q for a prime power q.
    static Field of_order(std::uint64_t q);

    std::uint64_t p() const;
    int k() const;
    std::uint64_t q() const;
    /// Monic defining polynomial over F_p, low degree first. For k = 1 this is
    /// the placeholder x (the prime field needs no modulus).
    const std::vector<std::uint64_t>& modulus() const;
    /// True when the modulus came from the Conway table.
    bool conway() const;
    /// A generator of the multiplicative group: the class of `a` when k > 1,
    /// the least primitive root when k = 1.
    Elem primitive() const;
    /// The class of the symbol `a` (equals primitive() when k > 1).
    Elem gen() const;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const;
    Elem add(Elem x, Elem y) const;
    Elem sub(Elem x, Elem y) const;
    Elem neg(Elem x) const;
    Elem mul(Elem x, Elem y) const;
    Elem inv(Elem x) const;
    Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
    Elem pow(Elem x, std::uint64_t e) const;
    /// x^p.
    Elem frobenius(Elem x) const;
    /// Absolute trace to F_p, as an integer 0..p-1.
    std::uint64_t trace(Elem x) const;
    /// Quadratic residuosity; 0 counts as a square. Odd characteristic only.
    bool is_square(Elem x) const;
    /// Multiplicative order of a nonzero element.
    std::uint64_t order(Elem x) const;

    std::vector<std::uint64_t> digits(Elem x) const;
    Elem from_digits(std::span<const std::uint64_t> d) const;

    /// Text form: decimal for prime fields, a polynomial in `a` otherwise.
    std::string format(Elem x) const;
    Elem parse(std::string_view text) const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

   private:
    explicit Field(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const detail::FieldImpl> impl_;
};

/// Conway polynomial of F_{p^k} from the shipped table (low degree first).
std::optional<std::vector<std::uint64_t>> conway_polynomial(std::uint64_t p, int k);

/// Field homomorphism F_q -> F_{q^n}. Uses the Conway-compatible image of the
/// generator when it is a root of the source modulus, otherwise the least root.
class Embedding {
   public:
    Embedding(Field source, Field target);
    Elem operator()(Elem x) const;
    const Field& source() const { return source_; }
    const Field& target() const { return target_; }
    /// Whether y lies in the image (y^q = y).
    bool contains(Elem y) const;
    /// Inverse map on the image; throws PreconditionError otherwise.
    Elem preimage(Elem y) const;

   private:
    Field source_, target_;
    std::vector<Elem> basis_images_;  // image of a^i, i < k_source
};

// ---------------------------------------------------------------------------

/// Dense univariate polynomial over F_q, low degree first, no trailing zeros.
class FieldPoly {
   public:
    FieldPoly() = default;
    explicit FieldPoly(Field f) : field_(std::move(f)) {}
    FieldPoly(Field f, std::vector<Elem> coeffs);

    static FieldPoly constant(const Field& f, Elem c);
    static FieldPoly monomial(const Field& f, Elem c, std::size_t degree);
    /// The variable itself.
    static FieldPoly variable(const Field& f) { return monomial(f, 1, 1); }

    const Field& field() const { return field_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Elem lead() const { return c_.empty() ? 0 : c_.back(); }
    Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    Elem eval(Elem x) const;

    FieldPoly operator+(const FieldPoly& o) const;
    FieldPoly operator-(const FieldPoly& o) const;
    FieldPoly operator-() const;
    FieldPoly operator*(const FieldPoly& o) const;
    FieldPoly scale(Elem s) const;
    /// Multiplication by t^n.
    FieldPoly shift(std::size_t n) const;
    bool operator==(const FieldPoly& o) const { return c_ == o.c_ && (c_.empty() || field_ == o.field_); }
    bool operator!=(const FieldPoly& o) const { return !(*this == o); }
    /// Orders by degree, then coefficients from the leading one down.
    bool operator<(const FieldPoly& o) const;

   private:
    Field field_ = Field::make(2, 1);
    std::vector<Elem> c_;
    void trim();
};

struct DivMod {
    FieldPoly quotient, remainder;
};

DivMod divmod(const FieldPoly& a, const FieldPoly& b);
FieldPoly operator%(const FieldPoly& a, const FieldPoly& b);
/// Exact quotient; throws InvariantError on a nonzero remainder.
FieldPoly exact_div(const FieldPoly& a, const FieldPoly& b);
FieldPoly monic(const FieldPoly& a);
/// Monic gcd (zero only when both inputs are zero).
FieldPoly gcd(const FieldPoly& a, const FieldPoly& b);
FieldPoly derivative(const FieldPoly& a);
FieldPoly pow(const FieldPoly& a, std::uint64_t e);
FieldPoly powmod(const FieldPoly& a, std::uint64_t e, const FieldPoly& m);
/// a^(q^n) mod m by repeated q-th powering.
FieldPoly frobenius_power_mod(const FieldPoly& a, int n, const FieldPoly& m);
/// Substitution t -> t^q applied coefficientwise with the q-power map on F_q
/// (the identity), i.e. the Frobenius twist b -> b^q on F_q[t].
FieldPoly frobenius_twist(const FieldPoly& a, int times = 1);
/// Maps coefficients through an embedding.
FieldPoly embed(const FieldPoly& a, const Embedding& e);

/// Irreducibility over F_q (x^{q^d} = x mod f and gcd conditions at d/l).
bool is_irreducible(const FieldPoly& f);

/// All monic irreducibles of degree d, sorted, for q^d <= 2^24.
std::vector<FieldPoly> irreducibles(const Field& f, int d);

/// Distinct-degree profile of a squarefree polynomial: degree -> factor count.
using DegreeProfile = std::map<int, int>;
DegreeProfile ddf_degrees(const FieldPoly& f);

/// Square-free decomposition f = lc * prod_i g_i^i with g_i squarefree and
/// pairwise coprime; entry (g_i, i) is present only for nonconstant g_i.
std::vector<std::pair<FieldPoly, int>> squarefree_decomposition(const FieldPoly& f);

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted. Square-free, distinct-degree, then equal-degree splitting with a
/// fixed-seed generator so results are deterministic.
std::vector<std::pair<FieldPoly, int>> factor(const FieldPoly& f);

/// Roots lying in the coefficient field, ascending, without multiplicity.
std::vector<Elem> roots_in_field(const FieldPoly& f);

/// Residue code: sum of coefficient codes times q^i. Requires q^(deg+1) < 2^63.
std::uint64_t encode(const FieldPoly& f);
FieldPoly decode(const Field& f, std::uint64_t code);

/// Text I/O, e.g. "t^4+t+1" or "(a+1)*t^2+a".
std::string format(const FieldPoly& f, char var = 't');
FieldPoly parse_poly(const Field& f, std::string_view text, char var = 't');

// ---------------------------------------------------------------------------

/// Element of F_q(t): den monic, gcd(num, den) = 1.
class RatFunc {
   public:
    RatFunc() : RatFunc(Field::make(2, 1)) {}
    explicit RatFunc(const Field& f) : num_(f), den_(FieldPoly::constant(f, 1)) {}
    explicit RatFunc(FieldPoly num);
    RatFunc(FieldPoly num, FieldPoly den);

    const FieldPoly& num() const { return num_; }
    const FieldPoly& den() const { return den_; }
    const Field& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

   private:
    FieldPoly num_, den_;
};

RatFunc frobenius_twist(const RatFunc& a, int times = 1);
std::string format(const RatFunc& f, char var = 't');
RatFunc parse_ratfunc(const Field& f, std::string_view text, char var = 't');

/// A place of F_q(t): a monic irreducible pi, or the infinite place 1/t.
class Place {
   public:
    static Place infinity() { return Place(); }
    static Place finite(FieldPoly pi);
    bool is_infinity() const { return !pi_.has_value(); }
    const FieldPoly& pi() const { return *pi_; }
    long degree() const { return pi_ ? pi_->degree() : 1; }

   private:
    Place() = default;
    std::optional<FieldPoly> pi_;
};

/// Valuation returned for the zero function.
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

/// Multiplicity of pi dividing a nonzero polynomial.
long multiplicity(const FieldPoly& f, const FieldPoly& pi);
long ord_at(const RatFunc& f, const Place& v);

// ---------------------------------------------------------------------------

/// Sparse multivariate polynomial over F_q for curve equations.
class MPoly {
   public:
    using Monomial = std::vector<unsigned>;
    MPoly() = default;
    MPoly(Field f, std::vector<std::string> vars) : field_(std::move(f)), vars_(std::move(vars)) {}

    const Field& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Monomial, Elem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Monomial& m, Elem c);

    /// Total degree; -1 for zero.
    long degree() const;
    bool is_homogeneous() const;
    /// Degree in a single variable.
    long degree_in(std::size_t var) const;
    MPoly partial(std::size_t var) const;
    /// Univariate restriction when every other variable is absent.
    FieldPoly as_univariate(std::size_t var) const;

    /// Evaluates at a point of an extension field reached through `emb`.
    Elem eval(const Embedding& emb, std::span<const Elem> point) const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    MPoly pow(unsigned long e) const;

   private:
    Field field_ = Field::make(2, 1);
    std::vector<std::string> vars_;
    std::map<Monomial, Elem> terms_;
};

/// Parses an equation in the given variables; `lhs = rhs` becomes lhs - rhs.
MPoly parse_mpoly(const Field& f, std::string_view text, const std::vector<std::string>& vars);
std::string format(const MPoly& p);

}  // namespace dsc::gf

#endif
