#include <algorithm>

#include "dscurve/gfpoly.hpp"

namespace dsc::gf {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) n /= d, ++e;
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    auto f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

int moebius(std::uint64_t n) {
    if (n == 0) throw PreconditionError("moebius(0) is undefined");
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> lo, hi;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

std::uint64_t checked_pow(std::uint64_t q, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (q != 0 && r > std::numeric_limits<std::uint64_t>::max() / q)
            throw SizeLimitError("integer power " + std::to_string(q) + "^" + std::to_string(e) + " overflows 64 bits");
        r *= q;
    }
    return r;
}

std::uint64_t count_irreducible(std::uint64_t q, int d) {
    if (d < 1) throw PreconditionError("degree must be at least 1");
    __int128 acc = 0;
    for (auto e : divisors(static_cast<std::uint64_t>(d)))
        acc += static_cast<__int128>(moebius(e)) * checked_pow(q, d / static_cast<int>(e));
    return static_cast<std::uint64_t>(acc / d);
}

}  // namespace dsc::gf
