#ifndef DSCURVE_REPRODUCE_HPP
#define DSCURVE_REPRODUCE_HPP

// Pinned reproductions of the reference tables and examples. Each target
// recomputes its values and compares them, as strings, with embedded
// expectations.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dsc::cli {

struct Item {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct Report {
    std::string target;
    std::vector<Item> items;
    bool pass() const;
};

struct ReproduceOptions {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

const std::vector<std::string>& reproduce_targets();
/// PreconditionError for an unknown target.
Report reproduce(std::string_view target, const ReproduceOptions& opts = {});

}  // namespace dsc::cli

#endif
