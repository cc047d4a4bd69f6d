#pragma once
// Published reference values, embedded from data/*.csv at build time.
// Consumed by the verify command and the test suites only.

#include "arithperm/compat.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arithperm::fixtures {

struct Table1Entry {
    std::size_t n;
    std::string div_count;
    std::string div_root;
    std::optional<std::string> lcm_count;
    std::optional<std::string> lcm_root;
};

struct Table1Erratum {
    CompatKind kind;
    std::size_t n;
    std::string printed_root;
    std::string count;
    std::string recomputed_root;
};

struct Table2Entry {
    std::uint64_t b;
    std::string c_alpha;
    std::string exp_c_alpha;
    std::string cd_alpha;
    std::string exp_cd_alpha;
};

struct Table2Erratum {
    std::uint64_t b;
    std::string column;
    std::string printed;
    std::string recomputed;
};

struct NamedConstant {
    std::string name;
    double value;
    double tolerance;
};

const std::vector<Table1Entry>& table1();
const std::vector<Table1Erratum>& table1_errata();
const std::vector<Table2Entry>& table2();
const std::vector<Table2Erratum>& table2_errata();
const std::vector<NamedConstant>& constants();

/// Throws std::out_of_range for unknown names.
const NamedConstant& constant(std::string_view name);

std::optional<Table1Erratum> root_erratum(CompatKind kind, std::size_t n);
std::optional<Table2Erratum> table2_erratum(std::uint64_t b, std::string_view column);

} // namespace arithperm::fixtures
