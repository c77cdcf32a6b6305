#ifndef DSCURVE_CARLITZ_HPP
#define DSCURVE_CARLITZ_HPP

// Carlitz module over F_q[t]: the action [M], the torsion polynomial Phi_M,
// the unit group (F_q[t]/M)^* with a subgroup H, place counts and the zeta
// numerator of the curve X_M^H, and the Diophantine-stability criteria.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dscurve/gfpoly.hpp"
#include "dscurve/zeta.hpp"

namespace dsc::carlitz {

using gf::Elem;
using gf::Field;
using gf::FieldPoly;
using gf::RatFunc;
using zeta::Int;

/// Polynomial in x with coefficients in F_q(t); c[i] multiplies x^i.
struct XPoly {
    Field field = Field::make(2, 1);
    std::vector<RatFunc> c;

    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    RatFunc operator[](std::size_t i) const { return i < c.size() ? c[i] : RatFunc(field); }
    bool operator==(const XPoly& o) const { return c == o.c; }
    bool operator!=(const XPoly& o) const { return !(*this == o); }
    void trim();
};

XPoly operator*(const XPoly& a, const XPoly& b);
/// Exact division; InvariantError on a nonzero remainder.
XPoly exact_div(const XPoly& a, const XPoly& b);
/// Reduction of every coefficient modulo pi. Needs coefficients without pi
/// in the denominator; the result lives over F_q[t]/pi.
std::vector<FieldPoly> reduce_mod(const XPoly& a, const FieldPoly& pi);
/// Image in F_{q^d}[x], d = deg pi, through the smallest root of pi in
/// F_{q^d}; the field is F_q itself when d = 1.
FieldPoly specialize(const XPoly& a, const FieldPoly& pi);
/// Coefficients are all polynomials in t.
bool is_polynomial(const XPoly& a);
/// "x^63+(t^16+t^4+t)*x^15+t*x"; polynomial coefficients only.
XPoly parse_xpoly(const Field& F, std::string_view text);
std::string format(const XPoly& a);

/// sum c_i tau^i with tau c = c^q tau; as a map x -> sum c_i x^{q^i}.
class LinearizedPoly {
   public:
    explicit LinearizedPoly(Field F) : field_(std::move(F)) {}
    LinearizedPoly(Field F, std::vector<RatFunc> coeffs);

    static LinearizedPoly identity(const Field& F);
    static LinearizedPoly scalar(const RatFunc& c);

    const Field& field() const { return field_; }
    const std::vector<RatFunc>& coeffs() const { return c_; }
    /// Largest i with c_i != 0, -1 for the zero map.
    long tau_degree() const { return static_cast<long>(c_.size()) - 1; }
    RatFunc operator[](std::size_t i) const { return i < c_.size() ? c_[i] : RatFunc(field_); }

    LinearizedPoly operator+(const LinearizedPoly& o) const;
    /// Composition: (A * B)(x) = A(B(x)).
    LinearizedPoly operator*(const LinearizedPoly& o) const;
    /// c * A, i.e. x -> c A(x).
    LinearizedPoly scale(const RatFunc& c) const;
    bool operator==(const LinearizedPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LinearizedPoly& o) const { return !(*this == o); }

    XPoly to_xpoly() const;

   private:
    Field field_;
    std::vector<RatFunc> c_;
    void trim();
};

/// sum_j M_j g^j for the generator g = [t]; shared with the Drinfeld module.
LinearizedPoly action_from_generator(const LinearizedPoly& gen, const FieldPoly& M);
/// [M] for the Carlitz generator [t] = tau + t.
LinearizedPoly carlitz_action(const FieldPoly& M);
/// Phi_M = [M] / prod over proper monic divisors Q of Phi_Q, with Phi_1 = x,
/// for any generator. SizeLimitError when q^{n deg M} > 2^12.
XPoly torsion_phi(const LinearizedPoly& gen, const FieldPoly& M);
XPoly carlitz_phi(const FieldPoly& M);

// ---------------------------------------------------------------------------

/// (F_q[t]/M)^* as a product over prime-power components. Each component is
/// a cyclic group of order q^d - 1 times a p-group with a greedy basis.
/// Elements are addressed by exponent vectors along the basis.
class ModulusGroup {
   public:
    struct Component {
        FieldPoly pi;
        int e = 1;
        FieldPoly modulus;             // pi^e
        std::uint64_t cyclic_order;    // q^d - 1
        std::uint64_t unipotent_order; // q^{d(e-1)}
        std::size_t first = 0;         // first basis index of this component
        std::size_t count = 0;         // number of basis elements
    };

    /// Throws PreconditionError for non-monic M, deg M < 1 or a generator of H
    /// sharing a factor with M; SizeLimitError when the order exceeds 10^7 or
    /// a p-part exceeds 2^16.
    static ModulusGroup make(const FieldPoly& M, const std::vector<FieldPoly>& H_gens = {});

    const Field& field() const { return M_.field(); }
    const FieldPoly& modulus() const { return M_; }
    const std::vector<Component>& components() const { return comps_; }
    std::uint64_t order() const { return order_; }
    std::uint64_t h() const { return H_.size(); }
    const std::vector<FieldPoly>& H_generators() const { return H_gens_; }
    /// Group exponent N.
    std::uint64_t exponent() const { return exponent_; }
    /// d_1 | d_2 | ... with product the order.
    std::vector<std::uint64_t> invariant_factors() const;
    /// Basis elements lifted to units mod M and their orders.
    const std::vector<FieldPoly>& basis() const { return basis_; }
    const std::vector<std::uint64_t>& basis_orders() const { return orders_; }

    bool is_unit(const FieldPoly& x) const;
    /// Exponents of x along the basis; PreconditionError when x is not a unit.
    std::vector<std::uint64_t> log(const FieldPoly& x) const;
    /// Block of exponents for one component; nullopt when pi_i divides x.
    std::optional<std::vector<std::uint64_t>> component_log(std::size_t i, const FieldPoly& x) const;
    FieldPoly exp(const std::vector<std::uint64_t>& v) const;

    std::uint64_t order_of(const FieldPoly& x) const;
    bool in_H(const FieldPoly& x) const;
    /// Minimal f >= 1 with x^f in H.
    std::uint64_t order_mod_H(const FieldPoly& x) const;

    /// Minimal f >= 1 with pi^f in I_i H, where I_i is the kernel of the
    /// projection away from component i and pi_i is the prime of that
    /// component.
    std::uint64_t ramified_residual_degree(std::size_t i) const;

    /// Size of F_q^* H.
    std::uint64_t constants_times_H() const;
    /// Size of the image of H after dropping component i.
    std::uint64_t projected_H(std::size_t i) const;

    // Used by the character code.
    std::uint64_t index_of(const std::vector<std::uint64_t>& v) const;
    std::vector<std::uint64_t> vector_of(std::uint64_t index) const;
    std::uint64_t order_of_vector(const std::vector<std::uint64_t>& v) const;
    /// Units 1 + pi_i r of component i with their log blocks and levels v(u - 1).
    struct Unipotent {
        std::uint64_t code;
        int level;
        std::vector<std::uint64_t> exps;
    };
    const std::vector<Unipotent>& unipotents(std::size_t i) const { return tables_[i].unip; }

   private:
    struct Tables {
        FieldPoly cyclic_gen;
        std::unordered_map<std::uint64_t, std::uint64_t> cyclic_log;  // full table or baby steps
        bool bsgs = false;
        std::uint64_t giant = 0;
        FieldPoly giant_step;  // cyclic_gen^{-giant}
        std::uint64_t e_cyclic = 0, e_unip = 0;  // projection exponents
        std::unordered_map<std::uint64_t, std::size_t> unip_index;
        std::vector<Unipotent> unip;
        std::vector<FieldPoly> unip_basis;  // mod pi^e
        std::vector<std::uint64_t> unip_orders;
    };

    FieldPoly M_;
    std::vector<Component> comps_;
    std::vector<Tables> tables_;
    std::vector<FieldPoly> basis_;
    std::vector<std::uint64_t> orders_, strides_;
    std::uint64_t order_ = 1, exponent_ = 1;
    std::vector<FieldPoly> H_gens_;
    std::vector<std::vector<std::uint64_t>> H_vecs_;
    std::unordered_set<std::uint64_t> H_;

    std::unordered_set<std::uint64_t> closure(const std::vector<std::vector<std::uint64_t>>& gens) const;
    std::uint64_t order_mod_set(std::vector<std::uint64_t> v, const std::unordered_set<std::uint64_t>& S) const;
    std::vector<std::uint64_t> drop_component(std::vector<std::uint64_t> v, std::size_t i) const;
};

ModulusGroup unit_group(const FieldPoly& M, const std::vector<FieldPoly>& H_gens = {});

/// f_pi for pi coprime to M; PreconditionError when pi divides M.
std::uint64_t residual_degree(const FieldPoly& pi, const ModulusGroup& G);

/// Ramification index, residual degree and number of places of X_M^H above
/// a finite prime pi (ramified or not); e f g = [G : H].
struct Splitting {
    std::uint64_t e = 1, f = 1, g = 1;
};
Splitting decomposition(const FieldPoly& pi, const ModulusGroup& G);
/// Above the infinite place: e = [F_q^* H : H], f = 1.
Splitting decomposition_at_infinity(const ModulusGroup& G);

/// a_1..a_{d_max} of X_M^H; d_max <= 16.
zeta::PlaceVector place_counts(const ModulusGroup& G, int d_max);

// ---------------------------------------------------------------------------

/// Element of Z[zeta_N] reduced modulo the N-th cyclotomic polynomial:
/// c[i] multiplies zeta_N^i, i < phi(N).
struct CharacterValue {
    std::uint64_t N = 1;
    std::vector<Int> c;
    bool operator==(const CharacterValue& o) const { return N == o.N && c == o.c; }
};

/// Coefficients of the N-th cyclotomic polynomial, low degree first.
std::vector<Int> cyclotomic(std::uint64_t N);
/// Reduce sum_k counts[k] zeta_N^k.
CharacterValue reduce_cyclotomic(std::uint64_t N, const std::vector<Int>& counts);

/// chi(b_j) = zeta_{o_j}^{a_j} on the basis of G.
struct Character {
    std::vector<std::uint64_t> a;
};

std::uint64_t character_order(const ModulusGroup& G, const Character& chi);
/// chi(x) = zeta_N^k with N the group exponent; x must be a unit.
std::uint64_t character_exponent(const ModulusGroup& G, const Character& chi, const FieldPoly& x);
bool is_trivial_on_H(const ModulusGroup& G, const Character& chi);
/// Trivial on the constants F_q^*.
bool is_even(const ModulusGroup& G, const Character& chi);
/// Conductor of chi as a divisor of M.
FieldPoly conductor(const ModulusGroup& G, const Character& chi);
/// Every character of G trivial on H, in index order.
std::vector<Character> characters(const ModulusGroup& G);

/// L(chi, t) = sum_{n < deg M} A(n, chi) t^n over monic f coprime to M.
std::vector<CharacterValue> char_l_poly(const ModulusGroup& G, const Character& chi);
/// Product over the Galois orbit of chi of the primitive L-polynomial,
/// divided by (1 - t) when chi is even. Integer coefficients, constant 1.
std::vector<Int> orbit_product(const ModulusGroup& G, const Character& chi);

struct CarlitzZeta {
    std::uint64_t q = 0;
    int genus = 0;
    std::vector<Int> P;                            // A_0..A_{2g}
    std::vector<std::vector<Int>> orbit_products;  // one per Galois orbit
    std::optional<zeta::ZetaData> zeta;            // empty in genus 0

    zeta::PointVector points_upto(int n) const;
    zeta::PlaceVector places_upto(int n) const;
};

/// P_H(t) = prod over chi != 1 trivial on H; SizeLimitError past degree 2*10^4.
CarlitzZeta zeta_numerator(const ModulusGroup& G);

// ---------------------------------------------------------------------------

/// Sufficient condition for a_l = 0 (l prime): no factor of M has degree 1
/// or l, no degree-1 prime has order l mod H, no degree-l prime lies in H.
bool ds_criterion_51(const ModulusGroup& G, int l);
/// Sufficient condition for a_k = 0 with H inside F_q^*: k differs from
/// deg(pi) f_pi for every prime pi dividing M. Needs 2 <= k < deg M.
bool zero_places_52(const ModulusGroup& G, int k);
/// For M = pi^r: every 2 <= k < r deg(pi) with k != deg(pi).
std::vector<int> totally_ramified_zero_range(const FieldPoly& M);

}  // namespace dsc::carlitz

#endif
