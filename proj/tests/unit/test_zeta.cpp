#include <doctest.h>

#include <map>
#include <set>

#include "dscurve/gfpoly.hpp"
#include "dscurve/zeta.hpp"
#include "support.hpp"

using namespace dsc::zeta;

namespace {

std::vector<Int> ints(std::initializer_list<long> v) {
    std::vector<Int> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

const std::vector<Int> kGenus6Points =
    ints({3, 5, 9, 17, 33, 11, 129, 257, 513, 1025, 2049, 4379, 8193, 16385, 32769, 65537});
const std::vector<Int> kGenus6Places =
    ints({3, 1, 2, 3, 6, 0, 18, 30, 56, 99, 186, 363, 630, 1161, 2182, 4080});
const char* kElephantP = "32*t^10+96*t^9+160*t^8+192*t^7+184*t^6+144*t^5+92*t^4+48*t^3+20*t^2+6*t+1";

// Projective point count of y^2 + h1(x) y = f(x) given as a plane cubic with
// one point at infinity, brute force over F_q.
long count_weierstrass(const dsc::gf::Field& F, const std::string& eq) {
    auto poly = dsc::gf::parse_mpoly(F, eq, {"x", "y"});
    dsc::gf::Embedding id(F, F);
    long n = 1;
    for (dsc::gf::Elem x = 0; x < F.q(); ++x)
        for (dsc::gf::Elem y = 0; y < F.q(); ++y) {
            std::vector<dsc::gf::Elem> pt{x, y};
            n += poly.eval(id, pt) == 0;
        }
    return n;
}

// Evaluates t^g h((q t^2 + 1)/t) at a rational t directly.
Rat substitute(const ExactPoly& h, const Int& q, int g, const Rat& t) {
    Rat x = (q * t * t + 1) / t;
    Rat tg = 1;
    for (int i = 0; i < g; ++i) tg *= t;
    return tg * h.eval(x);
}

Rat eval_ints(const std::vector<Int>& P, const Rat& t) {
    Rat acc = 0;
    for (std::size_t i = P.size(); i-- > 0;) acc = acc * t + P[i];
    return acc;
}

// Durand-Kerner on 256-bit floats: independent numeric Weil-validity oracle.
bool numeric_weil_valid(const ExactPoly& h, long q) {
    using F = mpf_class;
    const unsigned prec = 256;
    int n = static_cast<int>(h.degree());
    if (n < 1) return true;
    std::vector<F> c;
    for (int i = 0; i <= n; ++i) c.emplace_back(F(h[i] / h.lead(), prec));
    struct Cx {
        F re, im;
    };
    auto mul = [&](const Cx& a, const Cx& b) { return Cx{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; };
    auto sub = [&](const Cx& a, const Cx& b) { return Cx{a.re - b.re, a.im - b.im}; };
    auto div = [&](const Cx& a, const Cx& b) {
        F d = b.re * b.re + b.im * b.im;
        return Cx{(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    };
    std::vector<Cx> z(n);
    Cx seed{F(0.4, prec), F(0.9, prec)}, cur{F(1, prec), F(0, prec)};
    for (int i = 0; i < n; ++i) {
        z[i] = cur;
        cur = mul(cur, seed);
    }
    for (int iter = 0; iter < 2000; ++iter) {
        for (int i = 0; i < n; ++i) {
            Cx num{F(1, prec), F(0, prec)};
            // p(z_i) by Horner.
            Cx acc{F(1, prec), F(0, prec)};
            for (int k = n - 1; k >= 0; --k) {
                acc = mul(acc, z[i]);
                acc.re += c[k];
            }
            num = acc;
            Cx den{F(1, prec), F(0, prec)};
            for (int j = 0; j < n; ++j)
                if (j != i) den = mul(den, sub(z[i], z[j]));
            z[i] = sub(z[i], div(num, den));
        }
    }
    F bound = sqrt(F(4 * q, prec));
    for (auto& r : z) {
        if (abs(r.im) > F(1e-25, prec)) return false;
        if (abs(r.re) > bound + F(1e-25, prec)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("places from points") {
    CHECK(places_from_points(kGenus6Points) == kGenus6Places);
    CHECK(places_from_points(ints({1, 1, 1})) == ints({1, 0, 0}));
    CHECK(places_from_points(ints({5, 5})) == ints({5, 0}));
    CHECK_THROWS_AS(places_from_points(ints({5, 4})), dsc::InconsistentError);
    CHECK_THROWS_AS(places_from_points(ints({5, 3})), dsc::InconsistentError);
    try {
        places_from_points(ints({3, 5, 9, 16}));
        FAIL("expected an error");
    } catch (const dsc::InconsistentError& e) {
        CHECK(e.index() == std::optional<std::size_t>(4));
    }
}

TEST_CASE("points from places") {
    CHECK(points_from_places(ints({9, 0, 0, 2, 0})) == ints({9, 9, 9, 17, 9}));
    CHECK(points_from_places(ints({1, 0, 0})) == ints({1, 1, 1}));
    CHECK(points_from_places(kGenus6Places) == kGenus6Points);
}

TEST_CASE("place/point round trip on random place vectors") {
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Int> a;
        int n = static_cast<int>(testsupport::uniform(1, 20));
        for (int i = 0; i < n; ++i) a.emplace_back(static_cast<unsigned long>(testsupport::uniform(0, 1000)));
        CHECK(places_from_points(points_from_places(a)) == a);
    }
}

TEST_CASE("Frobenius polynomial from counts") {
    auto e1 = frobenius_from_counts(2, 1, ints({5}));
    CHECK(e1.frobenius() == ints({1, 2, 2}));
    auto F2 = dsc::gf::Field::make(2, 1);
    CHECK(count_weierstrass(F2, "y^2+y=x^3+x") == 5);
    CHECK(count_weierstrass(F2, "y^2+y=x^3+x+1") == 1);
    auto e2 = frobenius_from_counts(2, 1, ints({1}));
    CHECK(e2.frobenius() == ints({1, -2, 2}));
    // The counts over F_4 of both curves agree with extend_counts.
    auto F4 = dsc::gf::Field::make(2, 2);
    CHECK(extend_counts(e1, 2) == count_weierstrass(F4, "y^2+y=x^3+x"));
    CHECK(extend_counts(e2, 2) == count_weierstrass(F4, "y^2+y=x^3+x+1"));

    auto eleph = frobenius_from_counts(2, 5, ints({9, 9, 9, 17, 9}));
    CHECK(format(ExactPoly::from_ints(eleph.frobenius())) == kElephantP);
    CHECK(extend_counts(eleph, 2) == 9);
    CHECK_THROWS_AS(extend_counts(eleph, 0), dsc::PreconditionError);
}

TEST_CASE("genus-6 counts determine the listed Weil polynomial") {
    auto z = frobenius_from_counts(2, 6, kGenus6Points);
    ExactPoly L = parse_exact("(t^2 - t + 2)*(t^2 + t + 2)*(t^4 - t^3 - t^2 - 2t + 4)*(t^4 + t^3 - t^2 + 2t + 4)");
    CHECK(ExactPoly::from_ints(z.weil_polynomial()) == L);
    CHECK(z.places_upto(16) == kGenus6Places);
    CHECK_FALSE(ds_check(z, 6));
    CHECK(ds_check(z, 1));
}

TEST_CASE("inconsistent counts are rejected") {
    CHECK_THROWS_AS(frobenius_from_counts(2, 1, ints({7})), dsc::InconsistentError);  // |a| > 2 sqrt 2
    CHECK_THROWS_AS(frobenius_from_counts(2, 2, ints({3, 4})), dsc::InconsistentError);  // A_2 = 1/2
    CHECK_THROWS_AS(frobenius_from_counts(2, 1, ints({5, 8})), dsc::InconsistentError);  // N_2 should be 5
    CHECK_THROWS_AS(frobenius_from_counts(2, 2, ints({3})), dsc::PreconditionError);
}

TEST_CASE("real Weil polynomial conversions") {
    auto eleph = ZetaData::from_frobenius(2, 5, parse_exact(kElephantP).integer_coeffs());
    CHECK(format(eleph.real_weil(), 'x') == "x^5+6*x^4+10*x^3-8*x");
    auto e1 = ZetaData::from_frobenius(2, 1, ints({1, 2, 2}));
    CHECK(e1.real_weil() == parse_exact("x+2"));
    auto herm = ZetaData::from_frobenius(4, 1, ints({1, 4, 4}));
    CHECK(herm.real_weil() == parse_exact("x+4"));

    CHECK(frobenius_from_real_weil(parse_exact("x^5+6*x^4+10*x^3-8*x"), 2, 5).frobenius() ==
          parse_exact(kElephantP).integer_coeffs());
    CHECK(frobenius_from_real_weil(parse_exact("x+2"), 2, 1).frobenius() == ints({1, 2, 2}));
    CHECK(frobenius_from_real_weil(parse_exact("x+4"), 4, 1).frobenius() == ints({1, 4, 4}));
}

TEST_CASE("P(t) = t^g h((qt^2+1)/t) identically") {
    std::vector<ZetaData> corpus{
        frobenius_from_counts(2, 5, ints({9, 9, 9, 17, 9})),
        frobenius_from_counts(2, 6, kGenus6Points),
        frobenius_from_counts(2, 1, ints({5})),
        ZetaData::from_real_weil(3, 2, parse_exact("(x+3)*(x-1)")),
        ZetaData::from_real_weil(9, 3, parse_exact("(x+6)^3")),
    };
    for (const auto& z : corpus) {
        auto P = z.frobenius();
        auto h = z.real_weil();
        for (int i = 1; i <= 2 * z.g() + 1; ++i) {
            Rat t(i, 3);
            t.canonicalize();
            CHECK(substitute(h, Int(z.q()), z.g(), t) == eval_ints(P, t));
        }
        // Functional equation.
        for (int k = z.g() + 1; k <= 2 * z.g(); ++k) {
            Int qk;
            mpz_ui_pow_ui(qk.get_mpz_t(), z.q(), k - z.g());
            CHECK(P[k] == qk * P[2 * z.g() - k]);
        }
        CHECK(ZetaData::from_real_weil(z.q(), z.g(), h).frobenius() == P);
        CHECK(ZetaData::from_frobenius(z.q(), z.g(), P).real_weil() == h);
    }
}

TEST_CASE("factored zeta data agrees with the expanded form") {
    auto fac = ZetaData::from_real_weil_factors(27, {{parse_exact("x"), 3}, {parse_exact("x+9"), 4}});
    auto flat = ZetaData::from_real_weil(27, 7, parse_exact("x^3*(x+9)^4"));
    CHECK(fac.g() == 7);
    CHECK(fac.points_upto(12) == flat.points_upto(12));
    CHECK(fac.frobenius() == flat.frobenius());
}

TEST_CASE("Weil validity") {
    CHECK(is_weil_valid(parse_exact("x+2"), 2));
    CHECK_FALSE(is_weil_valid(parse_exact("x-3"), 2));
    CHECK(is_weil_valid(parse_exact("x^5+6*x^4+10*x^3-8*x"), 2));
    CHECK(is_weil_valid(parse_exact("x^2-8"), 2));       // boundary roots
    CHECK(is_weil_valid(parse_exact("(x-4)^2*(x+4)"), 4));  // square q, boundary
    CHECK_FALSE(is_weil_valid(parse_exact("x^2+1"), 2));  // complex roots
    CHECK(is_weil_valid(parse_exact("(x-1)^3"), 2));
    CHECK_FALSE(is_weil_valid(parse_exact("x^2-9"), 2));
    CHECK(is_weil_valid(parse_exact("1/2*x^2-1"), 2));
}

TEST_CASE("Weil validity agrees with a high-precision numeric oracle") {
    int agree = 0;
    for (int trial = 0; trial < 200; ++trial) {
        long q = static_cast<long>(testsupport::uniform(2, 9));
        // Products of distinct integer linear factors and random quadratics.
        ExactPoly h = ExactPoly::monomial(1, 0);
        std::set<long> used;
        int deg = 0, target = static_cast<int>(testsupport::uniform(1, 6));
        while (deg < target) {
            if (target - deg >= 2 && testsupport::uniform(0, 2) == 0) {
                long b = static_cast<long>(testsupport::uniform(0, 12)) - 6;
                long c = static_cast<long>(testsupport::uniform(0, 20)) - 10;
                h = h * ExactPoly(std::vector<Rat>{Rat(c), Rat(b), Rat(1)});
                deg += 2;
            } else {
                long r = static_cast<long>(testsupport::uniform(0, 12)) - 6;
                if (!used.insert(r).second) continue;
                h = h * ExactPoly(std::vector<Rat>{Rat(-r), Rat(1)});
                deg += 1;
            }
        }
        // Repeated roots slow the numeric oracle; compare on the squarefree part.
        ExactPoly sf = divmod(h, gcd(h, derivative(h))).quotient;
        CAPTURE(format(h, 'x'));
        CAPTURE(q);
        bool exact = is_weil_valid(h, q);
        CHECK(exact == numeric_weil_valid(sf, q));
        agree += exact == numeric_weil_valid(sf, q);
    }
    CHECK(agree == 200);
}

TEST_CASE("Sturm root isolation") {
    auto f = parse_exact("(x^2-2)*(x-1/3)*(x+5)");
    auto roots = isolate_real_roots(f, Rat(1, 1 << 20));
    REQUIRE(roots.size() == 4);
    CHECK(roots[0].lo <= -5);
    CHECK(roots[0].hi >= -5);
    CHECK(roots[2].lo <= Rat(1, 3));
    CHECK(roots[2].hi >= Rat(1, 3));
    auto exact = isolate_real_roots(parse_exact("x^2-1"), Rat(1, 4));
    REQUIRE(exact.size() == 2);
    CHECK(exact[1].lo <= 1);
    CHECK(exact[1].hi >= 1);
    CHECK(roots[3].lo * roots[3].lo <= 2);
    CHECK(roots[3].hi * roots[3].hi >= 2);
    CHECK(roots[3].hi - roots[3].lo <= Rat(1, 1 << 20));
    SturmChain chain(parse_exact("x^3-x"));
    CHECK(chain.count_all() == 3);
    CHECK(chain.count(Rat(-1), Rat(1)) == 2);  // (-1, 1] holds 0 and 1
}

TEST_CASE("DS check") {
    auto eleph = frobenius_from_counts(2, 5, ints({9, 9, 9, 17, 9}));
    CHECK(ds_check(eleph, 2));
    CHECK(ds_check(eleph, 3));
    CHECK_FALSE(ds_check(eleph, 4));
    CHECK(ds_check(eleph, 1));
    CHECK(ds_check(ints({3, 1}), 1));
    CHECK_THROWS_AS(ds_check(ints({3, 0}), 6), dsc::PreconditionError);
    for (int m = 1; m <= 12; ++m) CHECK(ds_check(eleph, m) == (extend_counts(eleph, m) == 9));
}

TEST_CASE("Hasse-Weil-Serre intervals") {
    auto i1 = hws_interval(2, 1);
    CHECK(i1.lo == 1);
    CHECK(i1.hi == 5);
    auto i2 = hws_interval(2, 5);
    CHECK(i2.lo == 0);
    CHECK(i2.hi == 13);
    auto i3 = hws_interval(4, 1);
    CHECK(i3.lo == 1);
    CHECK(i3.hi == 9);
    CHECK_THROWS_AS(hws_interval(6, 1), dsc::PreconditionError);
}

TEST_CASE("admissible pairs reproduce the low-genus tables") {
    using P = AdmissiblePair;
    std::map<int, std::vector<P>> table{
        {1, {{2, 2}, {2, 3}, {3, 2}, {4, 2}}},
        {2, {{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {4, 2}, {5, 2}}},
        {3, {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {5, 2}, {7, 2}, {8, 2}, {9, 2}}},
        {4, {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {3, 4}, {4, 2}, {4, 3}, {5, 2}, {7, 2},
             {8, 2}, {9, 2}, {11, 2}}},
        {5, {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {3, 4}, {4, 2}, {4, 3}, {5, 2}, {5, 3},
             {7, 2}, {8, 2}, {9, 2}, {11, 2}, {13, 2}}},
    };
    for (auto& [g, expect] : table) {
        CAPTURE(g);
        CHECK(admissible_pairs(g) == expect);
    }
}

TEST_CASE("admissible pairs match a bounded brute-force scan") {
    for (int g = 1; g <= 12; ++g) {
        std::vector<AdmissiblePair> brute;
        for (std::uint64_t q = 2; q <= 1000; ++q) {
            if (!dsc::gf::prime_power(q)) continue;
            auto up = hws_interval(q, g).hi;
            Int Q = q;
            for (int m = 2; m <= 40; ++m) {
                Q *= q;
                if (hws_interval_at(Q, g).lo <= up) brute.push_back({q, m});
            }
        }
        CAPTURE(g);
        CHECK(admissible_pairs(g) == brute);
    }
}

TEST_CASE("explicit formula filter") {
    std::vector<Rat> c{Rat(1, 2)};
    CHECK(explicit_formula_filter(2, 1, ints({5}), c));
    CHECK_FALSE(explicit_formula_filter(2, 1, ints({6}), c));
    CHECK(explicit_formula_filter(3, 2, ints({0, 0, 0}), {Rat(1, 2), Rat(1, 4)}));
    CHECK_THROWS_AS(explicit_formula_filter(2, 1, ints({5}), {Rat(0)}), dsc::PreconditionError);
    CHECK_THROWS_AS(explicit_formula_filter(2, 1, ints({5}), {Rat(2)}), dsc::PreconditionError);
}

TEST_CASE("exact sign of r + s sqrt n") {
    CHECK(sign_with_sqrt(Rat(-3), Rat(1), Int(8)) == -1);  // 2.83 - 3
    CHECK(sign_with_sqrt(Rat(-2), Rat(1), Int(8)) == 1);
    CHECK(sign_with_sqrt(Rat(-2), Rat(1), Int(4)) == 0);
    CHECK(sign_with_sqrt(Rat(0), Rat(0), Int(5)) == 0);
    CHECK(sign_with_sqrt(Rat(3), Rat(-1), Int(8)) == 1);
}

TEST_CASE("integer polynomial text round trip") {
    CHECK(format(parse_exact(kElephantP)) == kElephantP);
    CHECK(format(parse_exact("x^5 + 6 x^4 + 10 x^3 - 8 x"), 'x') == "x^5+6*x^4+10*x^3-8*x");
    CHECK_THROWS_AS(parse_exact("x+t"), dsc::ParseError);
}
