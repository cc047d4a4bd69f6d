#include "arithperm/permanent.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

namespace arithperm {

namespace mp = boost::multiprecision;

std::string_view to_string(Engine engine) noexcept {
    switch (engine) {
    case Engine::Auto: return "auto";
    case Engine::BruteForce: return "bruteforce";
    case Engine::Ryser: return "ryser";
    }
    return "unknown";
}

namespace {

std::uint64_t count_from(const std::vector<std::uint64_t>& rows, std::size_t row, std::uint64_t used) {
    if (row == rows.size())
        return 1;
    std::uint64_t total = 0;
    for (std::uint64_t free = rows[row] & ~used; free != 0; free &= free - 1)
        total += count_from(rows, row + 1, used | (free & (~free + 1)));
    return total;
}

using u128 = unsigned __int128;

// Positive and negative term sums kept in 128-bit registers, spilled into an
// arbitrary-precision total on overflow.
class ExactAccumulator {
public:
    void add(u128 v, bool negative) {
        u128& slot = negative ? neg_ : pos_;
        u128 next;
        if (__builtin_add_overflow(slot, v, &next)) {
            spill();
            (negative ? neg_ : pos_) = v;
        } else {
            slot = next;
        }
    }

    void add_wide(const mp::uint256_t& v, bool negative) {
        BigCount w(v);
        total_ += negative ? BigCount(-w) : w;
    }

    BigCount result() {
        spill();
        return total_;
    }

private:
    static BigCount from_u128(u128 v) {
        BigCount r(static_cast<std::uint64_t>(v >> 64));
        r <<= 64;
        r += static_cast<std::uint64_t>(v);
        return r;
    }

    void spill() {
        total_ += from_u128(pos_);
        total_ -= from_u128(neg_);
        pos_ = 0;
        neg_ = 0;
    }

    u128 pos_ = 0;
    u128 neg_ = 0;
    BigCount total_ = 0;
};

// Row i of a mask matrix is the bit set of admissible columns.
using MaskRows = std::vector<std::uint64_t>;

MaskRows to_masks(const CompatMatrix& matrix) {
    if (matrix.size() >= 63)
        throw ResourceError("permanent engines are limited to n < 63");
    MaskRows rows(matrix.size(), 0);
    for (std::size_t p = 0; p < matrix.size(); ++p)
        if (!matrix.row(p).words().empty())
            rows[p] = matrix.row(p).words().front();
    return rows;
}

std::uint64_t compress_bits(std::uint64_t word, std::uint64_t keep) noexcept {
    std::uint64_t out = 0;
    std::size_t pos = 0;
    for (; keep != 0; keep &= keep - 1, ++pos)
        if (word & keep & (~keep + 1))
            out |= std::uint64_t{1} << pos;
    return out;
}

// Deletes the rows in drop_rows and the columns in drop_cols (equal counts).
MaskRows minor(const MaskRows& rows, std::uint64_t drop_rows, std::uint64_t drop_cols) {
    const std::uint64_t all = rows.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows.size()) - 1;
    const std::uint64_t keep_cols = all & ~drop_cols;
    MaskRows out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!((drop_rows >> i) & 1U))
            out.push_back(compress_bits(rows[i], keep_cols));
    return out;
}

MaskRows column_masks(const MaskRows& rows) {
    MaskRows cols(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::uint64_t w = rows[i]; w != 0; w &= w - 1)
            cols[static_cast<std::size_t>(std::countr_zero(w))] |= std::uint64_t{1} << i;
    return cols;
}

struct RyserLayout {
    std::size_t n = 0;
    std::vector<std::vector<std::uint32_t>> column_rows;
    bool narrow_products = true;  // every product of row sums fits in 127 bits
};

RyserLayout make_layout(const MaskRows& rows) {
    RyserLayout layout;
    layout.n = rows.size();
    layout.column_rows.resize(layout.n);
    double log2_bound = 0.0;
    for (std::size_t p = 0; p < layout.n; ++p) {
        for (std::uint64_t w = rows[p]; w != 0; w &= w - 1)
            layout.column_rows[static_cast<std::size_t>(std::countr_zero(w))].push_back(static_cast<std::uint32_t>(p));
        if (rows[p] != 0)
            log2_bound += std::log2(static_cast<double>(std::popcount(rows[p])));
    }
    layout.narrow_products = log2_bound < 126.0;
    return layout;
}
std::uint64_t gray(std::uint64_t r) noexcept { return r ^ (r >> 1); }

BigCount partial_sum(const RyserLayout& layout, std::uint64_t begin, std::uint64_t end) {
    const std::size_t n = layout.n;
    std::vector<std::uint32_t> row_sums(n, 0);
    std::size_t zeros = n;
    std::uint64_t subset = gray(begin);

    auto flip = [&](std::size_t col, bool add) {
        for (auto r : layout.column_rows[col]) {
            if (add) {
                if (row_sums[r]++ == 0)
                    --zeros;
            } else if (--row_sums[r] == 0) {
                ++zeros;
            }
        }
    };
    for (std::uint64_t s = subset; s != 0; s &= s - 1)
        flip(static_cast<std::size_t>(std::countr_zero(s)), true);

    ExactAccumulator acc;
    for (std::uint64_t r = begin; r < end; ++r) {
        if (zeros == 0) {
            const bool negative = (std::popcount(subset) & 1) != 0;
            if (layout.narrow_products) {
                u128 prod = 1;
                for (auto v : row_sums)
                    prod *= v;
                acc.add(prod, negative);
            } else {
                mp::uint256_t prod = 1;
                for (auto v : row_sums)
                    prod *= v;
                acc.add_wide(prod, negative);
            }
        }
        if (r + 1 < end) {
            const auto col = static_cast<std::size_t>(std::countr_zero(r + 1));
            const std::uint64_t bit = std::uint64_t{1} << col;
            flip(col, (subset & bit) == 0);
            subset ^= bit;
        }
    }
    return acc.result();
}

BigCount ryser_masks(const MaskRows& rows, const RyserOptions& options) {
    const std::size_t n = rows.size();
    if (n == 0)
        return 1;
    const RyserLayout layout = make_layout(rows);
    const std::uint64_t total = std::uint64_t{1} << n;
    unsigned threads = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    std::uint64_t chunks = options.chunks != 0 ? options.chunks : (threads == 1 ? 1 : std::uint64_t{threads} * 8);
    chunks = std::clamp<std::uint64_t>(chunks, 1, total);
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));

    std::vector<BigCount> partials(chunks);
    auto bounds = [&](std::uint64_t c) { return total / chunks * c + std::min(c, total % chunks); };
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++)
            partials[c] = partial_sum(layout, bounds(c), bounds(c + 1));
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    // fixed-order combination keeps the result independent of scheduling
    BigCount sum = 0;
    for (const auto& p : partials)
        sum += p;
    return (n % 2 == 0) ? sum : BigCount(-sum);
}

std::uint64_t single_bit_index(std::uint64_t w) noexcept { return static_cast<std::uint64_t>(std::countr_zero(w)); }

// Exact preprocessing before Ryser:
//  - a row or column with a single entry forces that assignment;
//  - positions p with row(p) = col(p) = {h, p} either stay fixed or all but
//    one stay fixed while the other swaps with the hub h, so
//    perm = perm(M - P) + |P| perm(M - P - h).
BigCount reduced_permanent(MaskRows rows, const RyserOptions& options) {
    for (;;) {
        const std::size_t n = rows.size();
        if (n == 0)
            return 1;
        const MaskRows cols = column_masks(rows);
        bool forced = false;
        for (std::size_t i = 0; i < n && !forced; ++i) {
            if (rows[i] == 0 || cols[i] == 0)
                return 0;
            if (std::popcount(rows[i]) == 1) {
                rows = minor(rows, std::uint64_t{1} << i, rows[i]);
                forced = true;
            } else if (std::popcount(cols[i]) == 1) {
                rows = minor(rows, cols[i], std::uint64_t{1} << i);
                forced = true;
            }
        }
        if (forced)
            continue;

        std::vector<std::uint64_t> pendants(n, 0);
        for (std::size_t p = 0; p < n; ++p) {
            const std::uint64_t self = std::uint64_t{1} << p;
            if (std::popcount(rows[p]) == 2 && (rows[p] & self) && cols[p] == rows[p])
                pendants[single_bit_index(rows[p] & ~self)] |= self;
        }
        const auto best = std::max_element(pendants.begin(), pendants.end(),
                                           [](auto x, auto y) { return std::popcount(x) < std::popcount(y); });
        if (*best == 0)
            return ryser_masks(rows, options);
        const std::uint64_t group = *best;
        const std::uint64_t hub = std::uint64_t{1} << (best - pendants.begin());
        BigCount fixed = reduced_permanent(minor(rows, group, group), options);
        BigCount swapped = reduced_permanent(minor(rows, group | hub, group | hub), options);
        return fixed + BigCount(std::popcount(group)) * swapped;
    }
}

} // namespace

BigCount permanent_bruteforce(const CompatMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (n > kBruteForceMaxN)
        throw ResourceError("bruteforce oracle refuses n = " + std::to_string(n) + " (limit " +
                            std::to_string(kBruteForceMaxN) + ")");
    return BigCount(count_from(to_masks(matrix), 0, 0));
}

BigCount ryser_partial_sum(const CompatMatrix& matrix, std::uint64_t begin, std::uint64_t end) {
    const MaskRows rows = to_masks(matrix);
    const std::uint64_t total = std::uint64_t{1} << rows.size();
    if (begin > end || end > total)
        throw std::invalid_argument("ryser_partial_sum: range outside [0, 2^n)");
    return partial_sum(make_layout(rows), begin, end);
}

BigCount permanent_ryser(const CompatMatrix& matrix, const RyserOptions& options) {
    const std::size_t n = matrix.size();
    if (n > options.max_n)
        throw ResourceError("Ryser engine refuses n = " + std::to_string(n) + " (ceiling " +
                            std::to_string(options.max_n) + ")");
    MaskRows rows = to_masks(matrix);
    return options.reduce ? reduced_permanent(std::move(rows), options) : ryser_masks(rows, options);
}

double nth_root_4dp(const BigCount& count, std::size_t n) {
    if (n == 0 || count <= 0)
        return 0.0;
    const long double root = std::exp(std::log(count.convert_to<long double>()) / static_cast<long double>(n));
    return static_cast<double>(std::round(root * 10000.0L) / 10000.0L);
}

CountResult count_permutations(CompatKind kind, std::size_t n, Engine engine, const RyserOptions& options) {
    if (n == 0)
        throw std::invalid_argument("count_permutations: n must be positive");
    if (engine == Engine::Auto)
        engine = n <= kAutoBruteForceMaxN ? Engine::BruteForce : Engine::Ryser;
    const auto start = std::chrono::steady_clock::now();
    const CompatMatrix matrix = build_matrix(kind, n);
    BigCount count = engine == Engine::BruteForce ? permanent_bruteforce(matrix) : permanent_ryser(matrix, options);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    const double root = nth_root_4dp(count, n);
    return {kind, n, std::move(count), root, engine, elapsed};
}

std::vector<Table1Row> table1(std::size_t max_n, const RyserOptions& options) {
    if (max_n == 0)
        throw std::invalid_argument("table1: max_n must be positive");
    if (max_n > options.max_n)
        throw ResourceError("table1 refuses max_n = " + std::to_string(max_n) + " (ceiling " +
                            std::to_string(options.max_n) + ")");
    std::vector<Table1Row> rows;
    rows.reserve(max_n);
    for (std::size_t n = 1; n <= max_n; ++n)
        rows.push_back({n, count_permutations(CompatKind::Div, n, Engine::Auto, options),
                        count_permutations(CompatKind::Lcm, n, Engine::Auto, options)});
    return rows;
}

} // namespace arithperm
