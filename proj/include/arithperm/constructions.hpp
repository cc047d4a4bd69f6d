#pragma once
// Block families T(i, j) = {d j : d in s(a_i, b)} whose setwise stabilizers
// give explicit members of S_lcm(n).

#include "arithperm/permanent.hpp"

#include <cstdint>
#include <vector>

namespace arithperm::construct {

/// v_p(j) = 0 (mod v_p(b) + 1) for every prime p | b.
bool admissible(std::uint64_t j, std::uint64_t b);

struct Block {
    std::size_t interval;                 ///< 1-based divisor index i
    std::uint64_t generator;              ///< j
    std::vector<std::uint64_t> elements;  ///< d j for d in s(a_i, b), increasing
};

struct BlockFamily {
    std::uint64_t b;
    std::uint64_t n;
    std::vector<std::uint64_t> divisors;           ///< a_1 < ... < a_tau
    std::vector<Block> blocks;
    std::vector<std::uint64_t> per_interval_counts;  ///< entry i-1 counts blocks with interval i
};

/// Raises std::logic_error if two blocks overlap or leave [n].
BlockFamily build_family(std::uint64_t b, std::uint64_t n);

/// prod over blocks of p(a_i, b).
BigCount family_count(const BlockFamily& family);

/// A permutation of [n] stored as images: perm[j - 1] = pi(j).
using Permutation = std::vector<std::uint64_t>;

/// Up to `limit` distinct members, identity first, built by permuting inside
/// blocks with lcm-compatible arrangements and fixing everything else.
std::vector<Permutation> emit_members(const BlockFamily& family, std::size_t limit);

/// True when perm is a bijection of [n] with kind-compatible j -> pi(j) for all j.
bool is_member(const Permutation& perm, CompatKind kind);

} // namespace arithperm::construct
