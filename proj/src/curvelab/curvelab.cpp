#include "dscurve/curvelab.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "dscurve/error.hpp"
#include "dscurve/expr.hpp"

namespace dsc::curvelab {

namespace {

constexpr std::uint64_t kScanLimit = 1ull << 28;
constexpr std::uint64_t kSmoothScanLimit = 1ull << 18;

std::uint64_t checked_order(const Field& F, int m) {
    if (m < 1) throw PreconditionError("extension degree must be positive");
    if (F.k() * m > Field::kMaxDegree)
        throw SizeLimitError("F_" + std::to_string(F.q()) + "^" + std::to_string(m) + " exceeds the field size limit");
    return gf::checked_pow(F.q(), m);
}

Field extension(const Field& F, int m) {
    checked_order(F, m);
    return Field::make(F.p(), F.k() * m);
}

// Number of y in E with y^2 + b y = c.
int quadratic_solutions(const Field& E, Elem b, Elem c) {
    if (E.p() == 2) {
        if (b == 0) return 1;
        Elem w = E.div(c, E.mul(b, b));
        return E.trace(w) == 0 ? 2 : 0;
    }
    Elem d = E.add(E.mul(b, b), E.mul(E.from_int(4), c));
    if (d == 0) return 1;
    return E.is_square(d) ? 2 : 0;
}

// A polynomial with coefficients pushed into an extension, for fast scans.
struct Compiled {
    Field E;
    std::vector<std::pair<std::vector<unsigned>, Elem>> terms;

    Compiled(const MPoly& P, const Field& target) : E(target) {
        gf::Embedding emb(P.field(), target);
        for (const auto& [mono, c] : P.terms()) terms.emplace_back(mono, emb(c));
    }

    Elem eval(std::span<const Elem> pt) const {
        Elem acc = 0;
        for (const auto& [mono, c] : terms) {
            Elem t = c;
            for (std::size_t i = 0; i < mono.size() && t != 0; ++i)
                if (mono[i]) t = E.mul(t, E.pow(pt[i], mono[i]));
            acc = E.add(acc, t);
        }
        return acc;
    }
};

long infinity_count(const std::vector<int>& degrees, int m) {
    long n = 0;
    for (int d : degrees)
        if (m % d == 0) n += d;
    return n;
}

std::int64_t count_hyperelliptic(const Hyperelliptic& c, int m) {
    Field E = extension(c.field, m);
    gf::Embedding emb(c.field, E);
    FieldPoly h = gf::embed(c.h, emb), f = gf::embed(c.f, emb);
    std::int64_t n = 0;
    for (Elem x = 0; x < E.q(); ++x) n += quadratic_solutions(E, h.eval(x), f.eval(x));
    std::size_t G = static_cast<std::size_t>(c.genus) + 1;
    n += quadratic_solutions(E, emb(c.h[G]), emb(c.f[2 * G]));
    return n;
}

std::int64_t count_plane(const PlaneProjective& c, int m) {
    std::uint64_t Q = checked_order(c.field, m);
    if (Q > kScanLimit / Q) throw SizeLimitError("projective scan over F_" + std::to_string(Q) + " is too large");
    Field E = extension(c.field, m);
    Compiled F(c.F, E);
    std::int64_t n = 0;
    std::vector<Elem> pt(3);
    pt[2] = 1;
    for (Elem x = 0; x < Q; ++x)
        for (Elem y = 0; y < Q; ++y) {
            pt[0] = x;
            pt[1] = y;
            n += F.eval(pt) == 0;
        }
    pt[1] = 1;
    pt[2] = 0;
    for (Elem x = 0; x < Q; ++x) {
        pt[0] = x;
        n += F.eval(pt) == 0;
    }
    pt = {1, 0, 0};
    n += F.eval(pt) == 0;
    return n;
}

std::int64_t count_affine(const Field& base, const std::vector<MPoly>& eqs, std::size_t nvars, int m) {
    std::uint64_t Q = checked_order(base, m);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < nvars; ++i) {
        if (total > kScanLimit / Q) throw SizeLimitError("affine scan over F_" + std::to_string(Q) + " is too large");
        total *= Q;
    }
    Field E = extension(base, m);
    std::vector<Compiled> C;
    for (const auto& e : eqs) C.emplace_back(e, E);
    std::vector<Elem> pt(nvars, 0);
    std::int64_t n = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t r = idx;
        for (std::size_t i = 0; i < nvars; ++i) {
            pt[i] = r % Q;
            r /= Q;
        }
        bool on = true;
        for (const auto& P : C)
            if (P.eval(pt) != 0) {
                on = false;
                break;
            }
        n += on;
    }
    return n;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::uint64_t ipow_u(std::uint64_t b, unsigned e) { return gf::checked_pow(b, e); }

}  // namespace

int hyperelliptic_genus(const FieldPoly& h, const FieldPoly& f) {
    long d = std::max(h.is_zero() ? -2 : 2 * h.degree(), f.degree());
    if (d < 1) return -1;
    return static_cast<int>((d + 1) / 2) - 1;
}

bool hyperelliptic_smooth(const FieldPoly& h, const FieldPoly& f) {
    const Field& F = f.is_zero() ? h.field() : f.field();
    int g = hyperelliptic_genus(h, f);
    if (g < 0) return false;
    std::size_t G = static_cast<std::size_t>(g) + 1;
    if (F.p() == 2) {
        if (h.is_zero()) return false;
        FieldPoly dh = derivative(h), df = derivative(f);
        FieldPoly crit = dh * dh * f + df * df;
        if (!gcd(h, crit).is_one()) return false;
        if (h[G] != 0) return true;
        Elem v = F.add(F.mul(F.mul(h[G - 1], h[G - 1]), f[2 * G]), F.mul(f[2 * G - 1], f[2 * G - 1]));
        return v != 0;
    }
    FieldPoly D = h * h + f.scale(F.from_int(4));
    if (D.is_zero()) return false;
    if (D.degree() < static_cast<long>(2 * G) - 1) return false;
    return gcd(D, derivative(D)).is_one();
}

Hyperelliptic make_hyperelliptic(const Field& F, const FieldPoly& h0, const FieldPoly& f0) {
    FieldPoly h = h0.is_zero() ? FieldPoly(F) : h0, f = f0.is_zero() ? FieldPoly(F) : f0;
    if ((!h.is_zero() && h.field() != F) || (!f.is_zero() && f.field() != F))
        throw PreconditionError("coefficients must lie in the curve's field");
    int g = hyperelliptic_genus(h, f);
    if (g < 1) throw PreconditionError("hyperelliptic model has genus < 1");
    if (!hyperelliptic_smooth(h, f)) throw PreconditionError("hyperelliptic model is singular");
    return Hyperelliptic{F, h, f, g};
}

int plane_smoothness_degree(const Field& F, long degree) {
    int K = 0;
    std::uint64_t Q = 1;
    while (K < 12 && F.k() * (K + 1) <= Field::kMaxDegree) {
        if (Q * F.q() > kSmoothScanLimit / (Q * F.q()) && K >= 1) break;
        Q *= F.q();
        ++K;
    }
    (void)degree;
    return std::max(K, 1);
}

PlaneProjective make_plane(const Field& F, const MPoly& poly) {
    if (poly.vars().size() != 3) throw PreconditionError("plane curves need variables x, y, z");
    if (poly.is_zero() || !poly.is_homogeneous()) throw PreconditionError("plane curve must be homogeneous");
    if (poly.degree() < 1) throw PreconditionError("plane curve must have positive degree");
    std::vector<MPoly> system{poly, poly.partial(0), poly.partial(1), poly.partial(2)};
    int K = plane_smoothness_degree(F, poly.degree());
    for (int k = 1; k <= K; ++k) {
        Field E = extension(F, k);
        std::vector<Compiled> C;
        for (const auto& s : system) C.emplace_back(s, E);
        auto singular = [&](std::span<const Elem> pt) {
            for (const auto& P : C)
                if (P.eval(pt) != 0) return false;
            return true;
        };
        std::vector<Elem> pt{0, 0, 1};
        for (Elem x = 0; x < E.q(); ++x)
            for (Elem y = 0; y < E.q(); ++y) {
                pt = {x, y, 1};
                if (singular(pt)) throw PreconditionError("plane curve is singular over F_" + std::to_string(E.q()));
            }
        for (Elem x = 0; x < E.q(); ++x) {
            pt = {x, 1, 0};
            if (singular(pt)) throw PreconditionError("plane curve is singular at infinity");
        }
        pt = {1, 0, 0};
        if (singular(pt)) throw PreconditionError("plane curve is singular at infinity");
    }
    return PlaneProjective{F, poly};
}

PlaneAffinePlus make_affine_plus(const Field& F, const MPoly& poly, std::vector<int> infinity_degrees) {
    if (poly.vars().size() != 2) throw PreconditionError("affine plane models need two variables");
    for (int d : infinity_degrees)
        if (d < 1) throw PreconditionError("point degrees must be positive");
    return PlaneAffinePlus{F, poly, std::move(infinity_degrees)};
}

std::int64_t count_points(const CurveModel& c, int m) {
    if (m < 1) throw PreconditionError("extension degree must be positive");
    return std::visit(
        [&](const auto& model) -> std::int64_t {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, Hyperelliptic>) {
                return count_hyperelliptic(model, m);
            } else if constexpr (std::is_same_v<T, PlaneProjective>) {
                return count_plane(model, m);
            } else if constexpr (std::is_same_v<T, PlaneAffinePlus>) {
                return count_affine(model.field, {model.F}, 2, m) +
                       infinity_count(model.infinity_degrees, m);
            } else {
                return count_affine(model.field, model.equations, model.equations.front().vars().size(), m) +
                       infinity_count(model.infinity_degrees, m);
            }
        },
        c);
}

std::vector<std::int64_t> count_points_upto(const CurveModel& c, int n) {
    std::vector<std::int64_t> out;
    for (int m = 1; m <= n; ++m) out.push_back(count_points(c, m));
    return out;
}

std::int64_t count_hyperelliptic_naive(const Hyperelliptic& c, int m) {
    Field E = extension(c.field, m);
    gf::Embedding emb(c.field, E);
    FieldPoly h = gf::embed(c.h, emb), f = gf::embed(c.f, emb);
    auto solutions = [&](Elem b, Elem rhs) {
        std::int64_t n = 0;
        for (Elem y = 0; y < E.q(); ++y) n += E.add(E.mul(y, y), E.mul(b, y)) == rhs;
        return n;
    };
    std::int64_t n = 0;
    for (Elem x = 0; x < E.q(); ++x) n += solutions(h.eval(x), f.eval(x));
    std::size_t G = static_cast<std::size_t>(c.genus) + 1;
    return n + solutions(emb(c.h[G]), emb(c.f[2 * G]));
}

CurveModel parse_curve(std::string_view spec) {
    std::istringstream in{std::string(spec)};
    std::string kind, tok;
    in >> kind;
    std::map<std::string, std::string> kv;
    // Values may contain spaces; a new key starts at "name=".
    std::string current;
    while (in >> tok) {
        auto eq = tok.find('=');
        static const std::set<std::string> keys{"q", "h", "f", "F", "inf"};
        bool is_key = eq != std::string::npos && keys.count(tok.substr(0, eq)) && !kv.count(tok.substr(0, eq));
        if (is_key) {
            current = tok.substr(0, eq);
            kv[current] = tok.substr(eq + 1);
        } else {
            if (current.empty()) throw ParseError("unexpected token '" + tok + "' in curve spec");
            kv[current] += " " + tok;
        }
    }
    if (!kv.count("q")) throw ParseError("curve spec needs q=");
    std::uint64_t q;
    try {
        q = std::stoull(trim(kv["q"]));
    } catch (const std::exception&) {
        throw ParseError("bad field size '" + kv["q"] + "'");
    }
    if (!gf::prime_power(q)) throw PreconditionError("q must be a prime power");
    Field F = Field::of_order(q);
    if (kind == "hyp") {
        FieldPoly h = kv.count("h") ? gf::parse_poly(F, trim(kv["h"]), 'x') : FieldPoly(F);
        FieldPoly f = kv.count("f") ? gf::parse_poly(F, trim(kv["f"]), 'x') : FieldPoly(F);
        return make_hyperelliptic(F, h, f);
    }
    if (kind == "plane") {
        if (!kv.count("F")) throw ParseError("plane curve spec needs F=");
        return make_plane(F, gf::parse_mpoly(F, trim(kv["F"]), {"x", "y", "z"}));
    }
    if (kind == "affine") {
        if (!kv.count("F")) throw ParseError("affine curve spec needs F=");
        std::vector<int> inf;
        if (kv.count("inf")) {
            for (const auto& part : expr::split_list(trim(kv["inf"]))) {
                try {
                    inf.push_back(std::stoi(part));
                } catch (const std::exception&) {
                    throw ParseError("bad point degree '" + part + "'");
                }
            }
        }
        return make_affine_plus(F, gf::parse_mpoly(F, trim(kv["F"]), {"x", "y"}), inf);
    }
    throw ParseError("unknown curve kind '" + kind + "' (expected hyp, plane or affine)");
}

std::string describe(const CurveModel& c) {
    return std::visit(
        [](const auto& model) -> std::string {
            using T = std::decay_t<decltype(model)>;
            std::string q = std::to_string(model.field.q());
            if constexpr (std::is_same_v<T, Hyperelliptic>) {
                return "hyp q=" + q + " h=" + gf::format(model.h, 'x') + " f=" + gf::format(model.f, 'x');
            } else if constexpr (std::is_same_v<T, PlaneProjective>) {
                return "plane q=" + q + " F=" + gf::format(model.F);
            } else {
                std::string inf;
                for (int d : model.infinity_degrees) inf += (inf.empty() ? "" : ",") + std::to_string(d);
                if constexpr (std::is_same_v<T, PlaneAffinePlus>) {
                    return "affine q=" + q + " F=" + gf::format(model.F) + " inf=" + inf;
                } else {
                    std::string eqs;
                    for (const auto& e : model.equations) eqs += (eqs.empty() ? "" : "; ") + gf::format(e);
                    return "space q=" + q + " F=" + eqs + " inf=" + inf;
                }
            }
        },
        c);
}

std::uint64_t base_order(const CurveModel& c) {
    return std::visit([](const auto& model) { return model.field.q(); }, c);
}

// ---------------------------------------------------------------------------

Family parse_family(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == "hermitian") return Family::Hermitian;
    if (s == "suzuki") return Family::Suzuki;
    if (s == "ree") return Family::Ree;
    if (s == "drinfeld" || s == "drinfelddl" || s == "drinfeld-dl") return Family::DrinfeldDL;
    throw ParseError("unknown family '" + std::string(name) + "'");
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Hermitian:
            return "hermitian";
        case Family::Suzuki:
            return "suzuki";
        case Family::Ree:
            return "ree";
        case Family::DrinfeldDL:
            return "drinfeld";
    }
    return "";
}

FamilyInfo family_info(const FamilyParams& p) {
    switch (p.family) {
        case Family::Hermitian: {
            std::uint64_t q0 = p.param;
            if (q0 < 2 || !gf::prime_power(q0)) throw PreconditionError("Hermitian q0 must be a prime power");
            std::uint64_t q = gf::checked_pow(q0, 2);
            return {q, q0, static_cast<long>((q - q0) / 2)};
        }
        case Family::Suzuki: {
            std::uint64_t e = p.param;
            if (e < 1 || e > 9) throw PreconditionError("Suzuki parameter must satisfy 1 <= e <= 9");
            std::uint64_t q = ipow_u(2, static_cast<unsigned>(2 * e + 1)), q0 = ipow_u(2, static_cast<unsigned>(e));
            return {q, q0, static_cast<long>(q0 * (q - 1))};
        }
        case Family::Ree: {
            std::uint64_t s = p.param;
            if (s < 1 || s > 3) throw PreconditionError("Ree parameter must satisfy 1 <= s <= 3");
            std::uint64_t q = ipow_u(3, static_cast<unsigned>(2 * s + 1)), q0 = ipow_u(3, static_cast<unsigned>(s));
            return {q, q0, static_cast<long>(3 * q0 * (q - 1) * (q + q0 + 1) / 2)};
        }
        case Family::DrinfeldDL: {
            std::uint64_t q = p.param;
            if (!gf::prime_power(q) || q % 2 == 0) throw PreconditionError("Drinfeld curve needs an odd prime power q");
            return {q, 0, static_cast<long>(q * (q - 1) / 2)};
        }
    }
    throw PreconditionError("unknown family");
}

zeta::ZetaData family_zeta(const FamilyParams& p) {
    using zeta::ExactPoly;
    FamilyInfo info = family_info(p);
    auto linear = [](std::uint64_t c) { return ExactPoly(std::vector<zeta::Rat>{zeta::Rat(zeta::Int(static_cast<unsigned long>(c))), zeta::Rat(1)}); };
    switch (p.family) {
        case Family::Hermitian:
        case Family::Suzuki:
            return zeta::ZetaData::from_real_weil_factors(
                info.q, {{linear(2 * info.q0), static_cast<unsigned>(info.genus)}});
        case Family::Ree: {
            std::uint64_t q = info.q, q0 = info.q0;
            auto A = static_cast<unsigned>(q0 * (q - 1) * (q + 3 * q0 + 1) / 2);
            auto B = static_cast<unsigned>(q0 * (q * q - 1));
            return zeta::ZetaData::from_real_weil_factors(q, {{linear(0), A}, {linear(3 * q0), B}});
        }
        case Family::DrinfeldDL: {
            int g = static_cast<int>(info.genus);
            if (g > 30 || gf::checked_pow(info.q, static_cast<unsigned>(g)) > (1ull << 22))
                throw SizeLimitError("Drinfeld curve zeta data needs counts up to F_q^g; q^g exceeds 2^22");
            zeta::PointVector N;
            for (int m = 1; m <= g; ++m) N.emplace_back(static_cast<long>(drinfeld_dl_counts(info.q, m)));
            return zeta::frobenius_from_counts(info.q, g, N);
        }
    }
    throw PreconditionError("unknown family");
}

CurveModel family_model(const FamilyParams& p) {
    FamilyInfo info = family_info(p);
    std::string q = std::to_string(info.q), q0 = std::to_string(info.q0);
    Field F = Field::of_order(info.q);
    switch (p.family) {
        case Family::Hermitian: {
            Field H = Field::of_order(info.q);
            std::string e = std::to_string(info.q0 + 1);
            return make_plane(H, gf::parse_mpoly(H, "x^" + e + "+y^" + e + "+z^" + e, {"x", "y", "z"}));
        }
        case Family::Suzuki:
            return make_affine_plus(F, gf::parse_mpoly(F, "y^" + q + "-y=x^" + q0 + "*(x^" + q + "-x)", {"x", "y"}),
                                    {1});
        case Family::Ree: {
            std::vector<std::string> vars{"x", "y", "z"};
            SpaceAffinePlus s{F,
                              {gf::parse_mpoly(F, "y^" + q + "-y=x^" + q0 + "*(x^" + q + "-x)", vars),
                               gf::parse_mpoly(F, "z^" + q + "-z=x^" + q0 + "*(y^" + q + "-y)", vars)},
                              {1}};
            return s;
        }
        case Family::DrinfeldDL:
            return make_affine_plus(
                F, gf::parse_mpoly(F, "y^" + q + "-y=z^" + std::to_string(info.q + 1), {"y", "z"}), {1});
    }
    throw PreconditionError("unknown family");
}

std::int64_t drinfeld_dl_counts(std::uint64_t q, int m) {
    if (!gf::prime_power(q) || q % 2 == 0) throw PreconditionError("Drinfeld curve needs an odd prime power q");
    Field F = Field::of_order(q);
    std::uint64_t Q = checked_order(F, m);
    if (Q > kScanLimit / Q) throw SizeLimitError("scan over F_" + std::to_string(Q) + " is too large");
    Field E = extension(F, m);
    // y^q - y = w has q solutions when Tr_{E/F_q}(w) = 0 and none otherwise.
    std::int64_t n = 1;
    for (Elem z = 0; z < Q; ++z) {
        Elem w = E.pow(z, q + 1), tr = 0, c = w;
        for (int i = 0; i < m; ++i) {
            tr = E.add(tr, c);
            c = E.pow(c, q);
        }
        if (tr == 0) n += static_cast<std::int64_t>(q);
    }
    return n;
}

// ---------------------------------------------------------------------------

HoweResult howe_interpolation(std::uint64_t q, std::uint64_t seed, int max_attempts) {
    if (!gf::prime_power(q) || q % 2 == 0) throw PreconditionError("Howe's construction needs an odd prime power q");
    if (q > 13) throw SizeLimitError("Howe interpolation is limited to q <= 13");
    Field F = Field::of_order(q);
    Field E = extension(F, 2);
    gf::Embedding emb(F, E);
    std::uint64_t Q = E.q();
    std::mt19937_64 rng(seed);

    std::vector<Elem> squares, nonsquares;
    for (Elem v = 1; v < q; ++v)
        if (F.is_square(v)) squares.push_back(v);
    for (Elem v = 1; v < Q; ++v)
        if (!E.is_square(v)) nonsquares.push_back(v);

    // x^Q - x and its quotients by x - z give the Lagrange basis: L_z = -(x^Q - x)/(x - z).
    std::vector<Elem> W(Q + 1, 0);
    W[Q] = 1;
    W[1] = E.neg(1);

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        std::vector<Elem> value(Q, 0);
        for (Elem z = 0; z < Q; ++z) {
            if (emb.contains(z)) {
                value[z] = emb(squares[rng() % squares.size()]);
            } else {
                Elem zq = E.pow(z, q);
                if (zq < z) continue;
                Elem v = nonsquares[rng() % nonsquares.size()];
                value[z] = v;
                value[zq] = E.pow(v, q);
            }
        }
        std::vector<Elem> coeffs(Q, 0);
        for (Elem z = 0; z < Q; ++z) {
            // Synthetic division of x^Q - x by x - z.
            Elem carry = 0;
            Elem scale = E.neg(value[z]);
            for (std::size_t i = Q; i >= 1; --i) {
                carry = E.add(W[i], E.mul(carry, z));
                coeffs[i - 1] = E.add(coeffs[i - 1], E.mul(scale, carry));
            }
        }
        std::vector<Elem> base(Q);
        for (std::size_t i = 0; i < Q; ++i) base[i] = emb.preimage(coeffs[i]);
        FieldPoly f(F, base);
        if (f.degree() < 3 || f.degree() % 2 == 0) continue;
        // Drop square factors: f = lc * prod g_i^i becomes lc * prod_{i odd} g_i.
        FieldPoly g = FieldPoly::constant(F, f.lead());
        for (const auto& [gi, i] : gf::squarefree_decomposition(f))
            if (i % 2 == 1) g = g * gi;
        if (g.degree() < 3) continue;
        HoweResult r;
        r.curve = make_hyperelliptic(F, FieldPoly(F), g);
        r.attempts = attempt;
        r.n1 = count_points(r.curve, 1);
        r.n2 = count_points(r.curve, 2);
        if (r.n1 != r.n2) throw InvariantError("Howe interpolation produced a curve with N_1 != N_2");
        return r;
    }
    throw Error("Howe interpolation found no odd-degree polynomial in " + std::to_string(max_attempts) + " attempts");
}

HoweCubicResult howe_cubic(std::uint64_t q, Elem n) {
    if (!gf::prime_power(q) || q % 2 == 0) throw PreconditionError("Howe's cubic construction needs an odd prime power q");
    Field F = Field::of_order(q);
    if (n >= q) throw PreconditionError("n must be an element of F_q");
    if (F.is_square(n)) throw PreconditionError("n must be a nonsquare in F_q");
    std::uint64_t q3 = gf::checked_pow(q, 3);
    if (q3 > (1ull << 16)) throw SizeLimitError("q^3 exceeds the verification scan limit");
    FieldPoly f = FieldPoly::monomial(F, 1, q3) - FieldPoly::variable(F) + FieldPoly::constant(F, n);
    HoweCubicResult r;
    r.curve = make_hyperelliptic(F, FieldPoly(F), f);
    r.n1 = count_points(r.curve, 1);
    r.n3 = count_points(r.curve, 3);
    return r;
}

}  // namespace dsc::curvelab
