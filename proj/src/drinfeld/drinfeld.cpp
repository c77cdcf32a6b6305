#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "dscurve/drinfeld.hpp"
#include "dscurve/error.hpp"

namespace dsc::drinfeld {

namespace {

const Field& F2() {
    static const Field f = Field::make(2, 1);
    return f;
}

RatFunc rf_one(const Field& F) { return RatFunc(FieldPoly::constant(F, 1)); }

FieldPoly poly2(const char* s) { return gf::parse_poly(F2(), s); }

bool integral_at(const RatFunc& u, const gf::Place& v) {
    long o = gf::ord_at(u, v);
    return o == gf::kInfiniteValuation || o >= 0;
}

// Phi_t = u3 x^7 + u2 x^3 + u1 x + t through the general torsion routine.
XPoly rank3_phi(const RatFunc& u1, const RatFunc& u2, const RatFunc& u3) {
    auto D = DrinfeldAction::make(F2(), {u1, u2, u3});
    return drinfeld_phi(D, poly2("t"));
}

std::vector<long> ords(const XPoly& phi, const gf::Place& v) {
    std::vector<long> out;
    for (const auto& c : phi.c) out.push_back(gf::ord_at(c, v));
    return out;
}

bool totally_ramified(const std::vector<NewtonSegment>& s, long degree) {
    return s.size() == 1 && s[0].length == degree && s[0].valuation.get_den() == degree;
}

void check_field(const Field& F, const std::vector<RatFunc>& u) {
    for (const auto& x : u)
        if (x.field() != F) throw PreconditionError("Drinfeld coefficients must lie over the base field");
}

}  // namespace

DrinfeldAction DrinfeldAction::make(const Field& F, std::vector<RatFunc> u) {
    if (u.empty()) throw PreconditionError("a Drinfeld module needs rank at least 1");
    if (u.back().is_zero()) throw PreconditionError("the leading coefficient u_n must be nonzero");
    check_field(F, u);
    DrinfeldAction D;
    D.field = F;
    D.u = std::move(u);
    return D;
}

DrinfeldAction DrinfeldAction::standard(const Field& F, int n) {
    if (n < 1) throw PreconditionError("rank must be at least 1");
    std::vector<RatFunc> u(n, RatFunc(F));
    u.back() = rf_one(F);
    return make(F, std::move(u));
}

LinearizedPoly DrinfeldAction::generator() const {
    std::vector<RatFunc> c{RatFunc(FieldPoly::variable(field))};
    c.insert(c.end(), u.begin(), u.end());
    return LinearizedPoly(field, std::move(c));
}

DrinfeldAction parse_action(const Field& F, std::string_view text) {
    std::vector<RatFunc> u;
    std::size_t start = 0;
    for (;;) {
        std::size_t end = text.find(';', start);
        auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        if (piece.find_first_not_of(" \t") == std::string_view::npos) throw ParseError("empty Drinfeld coefficient");
        u.push_back(gf::parse_ratfunc(F, piece));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return DrinfeldAction::make(F, std::move(u));
}

std::string format(const DrinfeldAction& D) {
    std::string s;
    for (std::size_t i = 0; i < D.u.size(); ++i) s += (i ? ";" : "") + gf::format(D.u[i], 't');
    return s;
}

LinearizedPoly drinfeld_action(const DrinfeldAction& D, const FieldPoly& M) {
    if (M.field() != D.field) throw PreconditionError("M must lie over the base field of the module");
    return carlitz::action_from_generator(D.generator(), M);
}

XPoly drinfeld_phi(const DrinfeldAction& D, const FieldPoly& M) {
    if (M.field() != D.field) throw PreconditionError("M must lie over the base field of the module");
    return carlitz::torsion_phi(D.generator(), M);
}

// ---------------------------------------------------------------------------

std::vector<Condition> Rank3Verdict::conditions() const {
    return {
        {"ord_t(u3) = 0", ord_t_u3_zero, ""},
        {"ord_t(u2) >= 1", ord_t_u2_positive, ""},
        {"ord_t(u1) >= 1", ord_t_u1_positive, ""},
        {"integral at 1/t", integral_at_infinity, ""},
        {"integral at t+1", integral_at_t_plus_1, ""},
        {"integral at t^2+t+1", integral_at_t2_t_1, ""},
        {"gcd(x^4+x, Phi mod t^2+t+1) = 1", no_F4_root_at_t2_t_1, ""},
        {"x^2+x+1 does not divide Phi mod t+1", no_quadratic_at_t_plus_1, ""},
    };
}

Rank3Verdict rank3_check(const RatFunc& u1, const RatFunc& u2, const RatFunc& u3) {
    check_field(F2(), {u1, u2, u3});
    if (u3.is_zero()) throw PreconditionError("u3 must be nonzero");
    Rank3Verdict v;
    auto at_t = gf::Place::finite(poly2("t"));
    auto t1 = gf::Place::finite(poly2("t+1"));
    auto t2 = gf::Place::finite(poly2("t^2+t+1"));
    v.ord_t_u3_zero = gf::ord_at(u3, at_t) == 0;
    v.ord_t_u2_positive = gf::ord_at(u2, at_t) >= 1;
    v.ord_t_u1_positive = gf::ord_at(u1, at_t) >= 1;
    auto all_integral = [&](const gf::Place& p) { return integral_at(u1, p) && integral_at(u2, p) && integral_at(u3, p); };
    v.integral_at_infinity = all_integral(gf::Place::infinity());
    v.integral_at_t_plus_1 = all_integral(t1);
    v.integral_at_t2_t_1 = all_integral(t2);

    XPoly phi = rank3_phi(u1, u2, u3);
    if (v.integral_at_t2_t_1) {
        FieldPoly g = carlitz::specialize(phi, poly2("t^2+t+1"));
        const Field& F4 = g.field();
        FieldPoly x4x = FieldPoly::monomial(F4, 1, 4) + FieldPoly::monomial(F4, 1, 1);
        v.no_F4_root_at_t2_t_1 = !g.is_zero() && gf::gcd(x4x, g).is_one();
    }
    if (v.integral_at_t_plus_1) {
        FieldPoly g = carlitz::specialize(phi, poly2("t+1"));
        v.no_quadratic_at_t_plus_1 = !g.is_zero() && !(g % poly2("t^2+t+1")).is_zero();
    }
    auto c = v.conditions();
    v.overall = std::all_of(c.begin(), c.end(), [](const Condition& x) { return x.pass; });
    return v;
}

std::vector<NewtonSegment> newton_polygon(const std::vector<long>& ord) {
    std::vector<std::pair<long, long>> pts;
    for (std::size_t i = 0; i < ord.size(); ++i)
        if (ord[i] != gf::kInfiniteValuation) pts.emplace_back(static_cast<long>(i), ord[i]);
    // Lower convex hull by a monotone chain.
    std::vector<std::pair<long, long>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // Drop b when it lies on or above the segment a -> p.
            __int128 cross = static_cast<__int128>(b.first - a.first) * (p.second - a.second) -
                             static_cast<__int128>(b.second - a.second) * (p.first - a.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    std::vector<NewtonSegment> out;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        long dx = hull[i].first - hull[i - 1].first;
        Rat val(hull[i - 1].second - hull[i].second, dx);
        val.canonicalize();
        out.push_back({val, dx});
    }
    return out;
}

Rank3Audit place_audit_rank3(const RatFunc& u1, const RatFunc& u2, const RatFunc& u3) {
    auto verdict = rank3_check(u1, u2, u3);
    if (!verdict.integral_at_infinity || !verdict.integral_at_t_plus_1 || !verdict.integral_at_t2_t_1)
        throw PreconditionError("the audit needs u_i integral at 1/t, t+1 and t^2+t+1");
    Rank3Audit A;
    XPoly phi = rank3_phi(u1, u2, u3);
    const long n = phi.degree();
    A.conclusive = true;

    A.slopes_at_t = newton_polygon(ords(phi, gf::Place::finite(poly2("t"))));
    PlaceReport rt{"t", "", {}, 0};
    if (totally_ramified(A.slopes_at_t, n)) {
        rt.status = "totally ramified";
        rt.profile = {{1, 1}};
    } else {
        rt.status = "not certified";
        A.conclusive = false;
    }
    A.places.push_back(rt);

    A.slopes_at_infinity = newton_polygon(ords(phi, gf::Place::infinity()));
    PlaceReport ri{"1/t", "", {}, 0};
    if (totally_ramified(A.slopes_at_infinity, n)) {
        ri.status = "totally ramified";
        ri.profile = {{1, 1}};
    } else {
        ri.status = "not certified";
        A.conclusive = false;
    }
    A.places.push_back(ri);

    // Unramified reductions: places above pi correspond to the irreducible
    // factors of Phi mod pi over the residue field.
    for (const char* name : {"t+1", "t^2+t+1"}) {
        FieldPoly pi = poly2(name);
        FieldPoly g = carlitz::specialize(phi, pi);
        PlaceReport r{name, "", {}, 0};
        if (g.degree() != n || !gf::gcd(g, gf::derivative(g)).is_one()) {
            r.status = "inconclusive";
            A.conclusive = false;
        } else {
            r.status = "factored";
            r.profile = gf::ddf_degrees(g);
            // A factor of degree f gives a place of degree f * deg pi.
            int want = 2 / static_cast<int>(pi.degree());
            auto it = r.profile.find(want);
            r.new_places = it == r.profile.end() ? 0 : it->second;
        }
        A.places.push_back(r);
    }
    if (A.conclusive)
        for (const auto& r : A.places) A.new_points += 2 * r.new_places;
    return A;
}

// ---------------------------------------------------------------------------

BaseChange basechange_phi(std::uint64_t q, int n, const FieldPoly& M) {
    if (n < 1) throw PreconditionError("n must be at least 1");
    Field F = Field::of_order(q);
    if (M.field() != F) throw PreconditionError("M must lie over F_q");
    if (!M.is_monic() || M.degree() < 1) throw PreconditionError("M must be monic of positive degree");
    Field E = Field::make(F.p(), F.k() * n);
    gf::Embedding emb(F, E);
    FieldPoly ME = gf::embed(M, emb);

    auto pattern = [](const std::vector<std::pair<FieldPoly, int>>& fac) {
        std::multiset<std::pair<long, int>> s;
        for (const auto& [pi, e] : fac) s.emplace(pi.degree(), e);
        return s;
    };
    auto facF = gf::factor(M);
    auto facE = gf::factor(ME);
    if (pattern(facF) != pattern(facE)) {
        std::string w;
        for (const auto& [pi, e] : facE) {
            if (!w.empty()) w += "*";
            w += "(" + gf::format(pi) + ")";
            if (e > 1) w += "^" + std::to_string(e);
        }
        throw PreconditionError(gf::format(M) + " = " + w + " over F_" + std::to_string(E.q()) +
                                ", so its factorization changes");
    }

    BaseChange bc;
    bc.phi = drinfeld_phi(DrinfeldAction::standard(F, n), M);
    XPoly other = carlitz::carlitz_phi(ME);
    bc.coefficients_in_base = carlitz::is_polynomial(other);
    for (const auto& c : other.c)
        for (Elem e : c.num().coeffs()) bc.coefficients_in_base = bc.coefficients_in_base && emb.contains(e);
    XPoly lifted{E, {}};
    for (const auto& c : bc.phi.c) lifted.c.emplace_back(gf::embed(c.num(), emb), gf::embed(c.den(), emb));
    bc.equal = lifted == other;
    return bc;
}

Descent descent_zero_places(std::uint64_t q, int l, const FieldPoly& M) {
    if (l < 2 || !gf::is_prime(static_cast<std::uint64_t>(l))) throw PreconditionError("l must be prime");
    Field F = Field::of_order(q);
    if (M.field() != F) throw PreconditionError("M must lie over F_q");
    if (!M.is_monic()) throw PreconditionError("M must be monic");
    if (M.degree() <= l) throw PreconditionError("need deg M > l");
    Field E = Field::make(F.p(), F.k() * l);
    FieldPoly ME = gf::embed(M, gf::Embedding(F, E));
    if (!gf::is_irreducible(ME)) throw PreconditionError(gf::format(M) + " is reducible over F_" + std::to_string(E.q()));

    auto G = carlitz::unit_group(ME);
    // Enumerating irreducibles up to degree k over F_{q^l} costs about q^{lk}.
    int bound = static_cast<int>(std::floor(16.0 / std::log2(static_cast<double>(E.q()))));
    bound = std::clamp(bound, 1, 16);
    Descent D;
    D.carlitz_places = carlitz::place_counts(G, bound);
    std::set<int> out;
    for (int k = l; k <= bound; k += l)
        if (D.carlitz_places[k - 1] == 0) out.insert(l * k);
    for (int k = l; k < M.degree(); k += l) {
        if (!carlitz::zero_places_52(G, k)) continue;
        if (k <= bound && D.carlitz_places[k - 1] != 0)
            throw InvariantError("ramification criterion disagrees with the place count at k = " + std::to_string(k));
        out.insert(l * k);
        if (k == l) D.ramification_zero = true;
    }
    if (!D.ramification_zero) throw InvariantError("a_l of the Carlitz curve over F_{q^l} is not certified zero");
    D.certified.assign(out.begin(), out.end());
    return D;
}

Int constant_extension_places(const std::map<long, Int>& a1, long n, long k) {
    if (n < 1 || k < 1) throw PreconditionError("n and k must be positive");
    Int s = 0;
    for (auto d : gf::divisors(static_cast<std::uint64_t>(k))) {
        int mu = gf::moebius(d);
        if (mu == 0) continue;
        long j = n * k / static_cast<long>(d);
        auto it = a1.find(j);
        if (it == a1.end()) throw PreconditionError("missing a_1 for the extension of degree " + std::to_string(j));
        s += mu * it->second;
    }
    if (s % k != 0) throw InconsistentError("Moebius sum " + s.get_str() + " is not divisible by " + std::to_string(k), k);
    return s / k;
}

}  // namespace dsc::drinfeld
