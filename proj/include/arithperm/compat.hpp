#pragma once
// Compatibility predicates on [n] and the 0-1 matrices whose permanents
// count constrained permutations.

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace arithperm {

enum class CompatKind { Lcm, Div, AntiCoprime, Coprime };

std::string_view to_string(CompatKind kind) noexcept;
std::optional<CompatKind> parse_kind(std::string_view name) noexcept;

/// Fixed-size packed bit set over positions [0, size).
class RowSet {
public:
    RowSet() = default;
    explicit RowSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }
    bool contains(std::size_t i) const noexcept { return i < size_ && ((words_[i / 64] >> (i % 64)) & 1U); }
    void insert(std::size_t i) { words_.at(i / 64) |= std::uint64_t{1} << (i % 64); }
    std::size_t count() const noexcept;
    bool is_subset_of(const RowSet& other) const noexcept;
    std::vector<std::size_t> members() const;
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const RowSet&, const RowSet&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Square 0-1 relation over labelled positions. Position p carries label(p);
/// for matrices over [n] the labels are 1..n.
class CompatMatrix {
public:
    using Relation = std::function<bool(std::uint64_t, std::uint64_t)>;

    /// Row p holds every q with relation(label(p), label(q)).
    static CompatMatrix from_relation(std::vector<std::uint64_t> labels, const Relation& relation,
                                      std::optional<CompatKind> kind = std::nullopt);

    std::size_t size() const noexcept { return rows_.size(); }
    std::optional<CompatKind> kind() const noexcept { return kind_; }
    std::uint64_t label(std::size_t p) const { return labels_.at(p); }
    const std::vector<std::uint64_t>& labels() const noexcept { return labels_; }
    const RowSet& row(std::size_t p) const { return rows_.at(p); }
    bool allows(std::size_t p, std::size_t q) const { return rows_.at(p).contains(q); }

    /// Column labels admitted by row p.
    std::vector<std::uint64_t> row_labels(std::size_t p) const;

    CompatMatrix transposed() const;

private:
    friend CompatMatrix build_matrix(CompatKind kind, std::uint64_t n);

    CompatMatrix(std::vector<std::uint64_t> labels, std::optional<CompatKind> kind);
    RowSet& mutable_row(std::size_t p) { return rows_[p]; }

    std::vector<std::uint64_t> labels_;
    std::optional<CompatKind> kind_;
    std::vector<RowSet> rows_;
};

bool is_compatible(CompatKind kind, std::uint64_t j, std::uint64_t jp, std::uint64_t n);

CompatMatrix build_matrix(CompatKind kind, std::uint64_t n);

/// #{j' in (n/k, n] : lcm[j, j'] <= n}, for j in (n/k, n].
std::uint64_t neighbor_count_Nk(std::uint64_t j, std::uint64_t k, std::uint64_t n);

/// N_k(j) for every j in (n/k, n]; entry i corresponds to j = floor(n/k) + 1 + i.
/// Accumulated over coprime (a, c) with a, c < k in O(sum n/(ac)) time.
std::vector<std::uint32_t> neighbor_counts_top(std::uint64_t k, std::uint64_t n);

struct Triple {
    std::uint64_t a;
    std::uint64_t b;
    std::uint64_t c;

    friend bool operator==(const Triple&, const Triple&) = default;
};

/// j = ab, j' = bc, gcd(a, c) = 1 with b = gcd(j, j'); empty when abc > n.
std::optional<Triple> triple_decomposition(std::uint64_t j, std::uint64_t jp, std::uint64_t n);

} // namespace arithperm
