#include "arithperm/compat.hpp"

#include "arithperm/numtheory.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace arithperm {

std::string_view to_string(CompatKind kind) noexcept {
    switch (kind) {
    case CompatKind::Lcm: return "lcm";
    case CompatKind::Div: return "div";
    case CompatKind::AntiCoprime: return "anticoprime";
    case CompatKind::Coprime: return "coprime";
    }
    return "unknown";
}

std::optional<CompatKind> parse_kind(std::string_view name) noexcept {
    for (auto k : {CompatKind::Lcm, CompatKind::Div, CompatKind::AntiCoprime, CompatKind::Coprime})
        if (name == to_string(k))
            return k;
    return std::nullopt;
}

std::size_t RowSet::count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool RowSet::is_subset_of(const RowSet& other) const noexcept {
    if (other.size_ != size_)
        return false;
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & ~other.words_[i]) != 0)
            return false;
    return true;
}

std::vector<std::size_t> RowSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        for (auto w = words_[wi]; w != 0; w &= w - 1)
            out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    }
    return out;
}

CompatMatrix::CompatMatrix(std::vector<std::uint64_t> labels, std::optional<CompatKind> kind)
    : labels_(std::move(labels)), kind_(kind), rows_(labels_.size(), RowSet(labels_.size())) {}

CompatMatrix CompatMatrix::from_relation(std::vector<std::uint64_t> labels, const Relation& relation,
                                         std::optional<CompatKind> kind) {
    CompatMatrix m(std::move(labels), kind);
    const std::size_t n = m.size();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (relation(m.labels_[p], m.labels_[q]))
                m.rows_[p].insert(q);
    return m;
}

std::vector<std::uint64_t> CompatMatrix::row_labels(std::size_t p) const {
    std::vector<std::uint64_t> out;
    for (auto q : row(p).members())
        out.push_back(labels_[q]);
    return out;
}

CompatMatrix CompatMatrix::transposed() const {
    CompatMatrix t(labels_, kind_);
    for (std::size_t p = 0; p < size(); ++p)
        for (auto q : rows_[p].members())
            t.rows_[q].insert(p);
    return t;
}

namespace {

void check_index(std::uint64_t j, std::uint64_t n, const char* what) {
    if (j < 1 || j > n)
        throw std::invalid_argument(std::string(what) + " index " + std::to_string(j) + " outside [1, " +
                                    std::to_string(n) + "]");
}

} // namespace

bool is_compatible(CompatKind kind, std::uint64_t j, std::uint64_t jp, std::uint64_t n) {
    check_index(j, n, "row");
    check_index(jp, n, "column");
    switch (kind) {
    case CompatKind::Lcm: return nt::lcm_saturating(j, jp) <= n;
    case CompatKind::Div: return jp % j == 0 || j % jp == 0;
    case CompatKind::AntiCoprime: return j == 1 || std::gcd(j, jp) > 1;
    case CompatKind::Coprime: return std::gcd(j, jp) == 1;
    }
    return false;
}

CompatMatrix build_matrix(CompatKind kind, std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("build_matrix: n must be positive");
    std::vector<std::uint64_t> labels(n);
    std::iota(labels.begin(), labels.end(), std::uint64_t{1});
    CompatMatrix m(std::move(labels), kind);

    switch (kind) {
    case CompatKind::Lcm:
        // lcm[j, j'] <= n  <=>  j = ab, j' = bc, gcd(a, c) = 1, abc <= n
        for (std::uint64_t j = 1; j <= n; ++j) {
            for (std::uint64_t a : nt::divisors(j)) {
                const std::uint64_t b = j / a;
                for (std::uint64_t c = 1; a * b * c <= n; ++c)
                    if (std::gcd(a, c) == 1)
                        m.mutable_row(j - 1).insert(b * c - 1);
            }
        }
        break;
    case CompatKind::Div:
        for (std::uint64_t d = 1; d <= n; ++d) {
            for (std::uint64_t mult = d; mult <= n; mult += d) {
                m.mutable_row(d - 1).insert(mult - 1);
                m.mutable_row(mult - 1).insert(d - 1);
            }
        }
        break;
    case CompatKind::AntiCoprime:
    case CompatKind::Coprime:
        for (std::uint64_t j = 1; j <= n; ++j)
            for (std::uint64_t jp = 1; jp <= n; ++jp)
                if (is_compatible(kind, j, jp, n))
                    m.mutable_row(j - 1).insert(jp - 1);
        break;
    }
    return m;
}

std::uint64_t neighbor_count_Nk(std::uint64_t j, std::uint64_t k, std::uint64_t n) {
    if (k == 0 || j > n || j * k <= n)
        throw std::invalid_argument("neighbor_count_Nk: j = " + std::to_string(j) + " not in (n/k, n] for n = " +
                                    std::to_string(n) + ", k = " + std::to_string(k));
    const std::uint64_t floor_nk = n / k;
    std::uint64_t count = 0;
    for (std::uint64_t a : nt::divisors(j)) {
        if (a >= k)
            break;
        const std::uint64_t b = j / a;
        for (std::uint64_t c = 1; c < k && a * b * c <= n; ++c)
            if (std::gcd(a, c) == 1 && b * c > floor_nk)
                ++count;
    }
    return count;
}

std::vector<std::uint32_t> neighbor_counts_top(std::uint64_t k, std::uint64_t n) {
    if (k < 2 || n < 1)
        throw std::invalid_argument("neighbor_counts_top: need k >= 2 and n >= 1");
    const std::uint64_t floor_nk = n / k;
    std::vector<std::uint32_t> counts(n - floor_nk, 0);
    for (std::uint64_t a = 1; a < k; ++a) {
        for (std::uint64_t c = 1; c < k; ++c) {
            if (std::gcd(a, c) != 1)
                continue;
            // b must satisfy ab, bc > n/k and abc <= n
            const std::uint64_t lo = n / (k * std::min(a, c));
            const std::uint64_t hi = n / (a * c);
            for (std::uint64_t b = lo + 1; b <= hi; ++b)
                ++counts[a * b - floor_nk - 1];
        }
    }
    return counts;
}

std::optional<Triple> triple_decomposition(std::uint64_t j, std::uint64_t jp, std::uint64_t n) {
    if (j == 0 || jp == 0)
        return std::nullopt;
    const std::uint64_t b = std::gcd(j, jp);
    const Triple t{j / b, b, jp / b};
    if (nt::lcm_saturating(j, jp) > n)
        return std::nullopt;
    return t;
}

} // namespace arithperm
