#pragma once
// Exact permanents of 0-1 compatibility matrices: an exhaustive oracle and a
// Gray-code Ryser engine with partition-invariant exact accumulation.

#include "arithperm/compat.hpp"

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace arithperm {

using BigCount = boost::multiprecision::cpp_int;

/// Raised when a request exceeds a configured engine ceiling.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Engine { Auto, BruteForce, Ryser };

std::string_view to_string(Engine engine) noexcept;

inline constexpr std::size_t kBruteForceMaxN = 12;
inline constexpr std::size_t kAutoBruteForceMaxN = 10;
inline constexpr std::size_t kDefaultRyserMaxN = 35;

struct RyserOptions {
    unsigned threads = 0;              ///< 0 selects std::thread::hardware_concurrency()
    std::size_t max_n = kDefaultRyserMaxN;
    std::size_t chunks = 0;            ///< 0 derives the split from the thread count
    bool reduce = true;                ///< apply exact forced/pendant reductions before Ryser
};

BigCount permanent_bruteforce(const CompatMatrix& matrix);

BigCount permanent_ryser(const CompatMatrix& matrix, const RyserOptions& options = {});

/// Signed Ryser partial sum over Gray-code ranks [begin, end) of the 2^n
/// column subsets: sum of (-1)^{|S|} prod_i rowsum_i(S). The permanent is
/// (-1)^n times the total over [0, 2^n).
BigCount ryser_partial_sum(const CompatMatrix& matrix, std::uint64_t begin, std::uint64_t end);

struct CountResult {
    CompatKind kind;
    std::size_t n;
    BigCount count;
    double nth_root;
    Engine engine;
    std::chrono::duration<double> elapsed;
};

/// count^{1/n}, round-to-nearest at 4 decimals.
double nth_root_4dp(const BigCount& count, std::size_t n);

CountResult count_permutations(CompatKind kind, std::size_t n, Engine engine = Engine::Auto,
                               const RyserOptions& options = {});

struct Table1Row {
    std::size_t n;
    CountResult div;
    CountResult lcm;
};

std::vector<Table1Row> table1(std::size_t max_n, const RyserOptions& options = {});

} // namespace arithperm
