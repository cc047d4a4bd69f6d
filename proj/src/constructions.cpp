#include "arithperm/constructions.hpp"

#include "arithperm/bounds.hpp"
#include "arithperm/numtheory.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace arithperm::construct {

namespace {

// Lexicographic enumeration of the first `limit` permanent terms of a small matrix.
class ArrangementLister {
public:
    ArrangementLister(const CompatMatrix& m, std::size_t limit) : m_(m), limit_(limit), used_(m.size(), false) {}

    std::vector<std::vector<std::size_t>> run() {
        current_.clear();
        dfs();
        return std::move(out_);
    }

private:
    void dfs() {
        if (out_.size() >= limit_)
            return;
        const std::size_t row = current_.size();
        if (row == m_.size()) {
            out_.push_back(current_);
            return;
        }
        for (auto q : m_.row(row).members()) {
            if (used_[q])
                continue;
            used_[q] = true;
            current_.push_back(q);
            dfs();
            current_.pop_back();
            used_[q] = false;
            if (out_.size() >= limit_)
                return;
        }
    }

    const CompatMatrix& m_;
    std::size_t limit_;
    std::vector<bool> used_;
    std::vector<std::size_t> current_;
    std::vector<std::vector<std::size_t>> out_;
};

} // namespace

bool admissible(std::uint64_t j, std::uint64_t b) {
    if (j == 0 || b == 0)
        throw std::invalid_argument("admissible: j and b must be positive");
    for (const auto& [p, e] : nt::factorize(b))
        if (nt::valuation(j, p) % (e + 1) != 0)
            return false;
    return true;
}

BlockFamily build_family(std::uint64_t b, std::uint64_t n) {
    if (b < 2 || n < b)
        throw std::invalid_argument("build_family: need b >= 2 and n >= b");
    BlockFamily family{b, n, nt::divisors(b), {}, {}};
    const auto& a = family.divisors;
    const std::size_t tau = a.size();
    family.per_interval_counts.assign(tau, 0);

    std::vector<bool> used(n + 1, false);
    for (std::size_t i = 1; i <= tau; ++i) {
        const std::uint64_t lo = i < tau ? n / a[i] : 0;  // I_i = (n/a_{i+1}, n/a_i], I_tau = (0, n/b]
        const std::uint64_t hi = n / a[i - 1];
        for (std::uint64_t j = lo + 1; j <= hi; ++j) {
            if (!admissible(j, b))
                continue;
            Block blk{i, j, {}};
            for (std::size_t t = 0; t < i; ++t) {
                const std::uint64_t e = a[t] * j;
                if (e > n || used[e])
                    throw std::logic_error("block T(" + std::to_string(i) + ", " + std::to_string(j) +
                                           ") collides at " + std::to_string(e));
                used[e] = true;
                blk.elements.push_back(e);
            }
            family.blocks.push_back(std::move(blk));
            ++family.per_interval_counts[i - 1];
        }
    }
    return family;
}

BigCount family_count(const BlockFamily& family) {
    BigCount total = 1;
    for (std::size_t i = 1; i <= family.per_interval_counts.size(); ++i) {
        const auto count = family.per_interval_counts[i - 1];
        if (count == 0)
            continue;
        const BigCount p = bounds::p_lcm(family.divisors[i - 1], family.b);
        total *= boost::multiprecision::pow(p, static_cast<unsigned>(count));
    }
    return total;
}

std::vector<Permutation> emit_members(const BlockFamily& family, std::size_t limit) {
    std::vector<Permutation> out;
    if (limit == 0)
        return out;

    std::map<std::size_t, std::vector<std::vector<std::size_t>>> arrangements;
    for (const auto& blk : family.blocks) {
        if (!arrangements.contains(blk.interval)) {
            const auto m = bounds::divisor_block_matrix(CompatKind::Lcm, family.divisors[blk.interval - 1], family.b);
            arrangements[blk.interval] = ArrangementLister(m, limit).run();
        }
    }

    Permutation identity(family.n);
    for (std::uint64_t j = 1; j <= family.n; ++j)
        identity[j - 1] = j;

    std::vector<std::size_t> digits(family.blocks.size(), 0);
    while (out.size() < limit) {
        Permutation perm = identity;
        for (std::size_t k = 0; k < family.blocks.size(); ++k) {
            if (digits[k] == 0)
                continue;
            const auto& blk = family.blocks[k];
            const auto& sigma = arrangements.at(blk.interval)[digits[k]];
            for (std::size_t x = 0; x < blk.elements.size(); ++x)
                perm[blk.elements[x] - 1] = blk.elements[sigma[x]];
        }
        out.push_back(std::move(perm));

        std::size_t pos = 0;
        for (; pos < digits.size(); ++pos) {
            if (++digits[pos] < arrangements.at(family.blocks[pos].interval).size())
                break;
            digits[pos] = 0;
        }
        if (pos == digits.size())
            break;
    }
    return out;
}

bool is_member(const Permutation& perm, CompatKind kind) {
    const std::uint64_t n = perm.size();
    std::vector<bool> hit(n + 1, false);
    for (std::uint64_t j = 1; j <= n; ++j) {
        const std::uint64_t image = perm[j - 1];
        if (image < 1 || image > n || hit[image])
            return false;
        hit[image] = true;
        if (!is_compatible(kind, j, image, n))
            return false;
    }
    return true;
}

} // namespace arithperm::construct
