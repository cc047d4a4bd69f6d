#pragma once
// Lower-bound constants from divisor-block constructions and the constants of
// the upper-bound argument for #S_lcm(n), plus the lcm/div ratio constants.

#include "arithperm/compat.hpp"
#include "arithperm/numtheory.hpp"
#include "arithperm/permanent.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace arithperm::bounds {

struct DivisorProfile {
    std::uint64_t b;
    std::vector<std::uint64_t> divisors;  ///< 1 = a_1 < ... < a_tau = b

    static DivisorProfile of(std::uint64_t b);
    std::size_t tau() const noexcept { return divisors.size(); }
};

/// The matrix on s(a, b) = {d | b : d <= a}: lcm[d, d'] <= a for Lcm,
/// d | d' or d' | d for Div. Other kinds are rejected.
CompatMatrix divisor_block_matrix(CompatKind kind, std::uint64_t a, std::uint64_t b);

BigCount p_lcm(std::uint64_t a, std::uint64_t b, const RyserOptions& options = {});
BigCount p_div(std::uint64_t a, std::uint64_t b, const RyserOptions& options = {});

double c_const(std::uint64_t b, const RyserOptions& options = {});
double c_d_const(std::uint64_t b, const RyserOptions& options = {});

inline constexpr std::size_t kMaxLowerBoundTau = 24;

struct LowerBoundReport {
    std::uint64_t b;
    std::vector<BigCount> p_lcm;  ///< p(a_i, b), i = 1..tau(b)
    std::vector<BigCount> p_div;  ///< p_d(a_i, b)
    double c;
    double c_d;
    nt::Rational alpha;
    double c_alpha;
    double cd_alpha;
    double exp_c_alpha;   ///< floored to 4 decimals
    double exp_cd_alpha;  ///< floored to 4 decimals
    double phi_variant;   ///< c(b) phi(b)/b
};

LowerBoundReport lower_bound_report(std::uint64_t b, const RyserOptions& options = {});

/// floor(x * 10^places) / 10^places
double floor_places(double x, int places);
double round_places(double x, int places);

enum class UbSeries { Yseq, Xi, Yi };

/// i-th summand (i >= 1) of the chosen series at k.
double ub_series_term(UbSeries series, double k, unsigned i);

struct SeriesValue {
    double value;
    unsigned terms;  ///< summands used before the tail dropped below 1e-15
};

SeriesValue ub_series(UbSeries series, double k);

double ub_yseq_const(double k);
double ub_xi_const(double k);
double ub_yi_const(double k);

/// Density (per n) of pairs j = ab, j' = bc in (n/k, n] with abc <= n for a
/// fixed coprime (a, c): max(0, 1/(ac) - max(1/a, 1/c)/k).
double pair_density(std::uint64_t a, std::uint64_t c, std::uint64_t k);

struct X0Analytic {
    double nu;          ///< density of j in (n/k, n] with N_k(j) > 1
    double mean_mass;   ///< density of sum_{N_k(j) > 1} N_k(j)
    double value;       ///< nu log(mean_mass / nu)
};

X0Analytic x0_analytic(std::uint64_t k);
double x0_analytic_const(std::uint64_t k);

inline constexpr std::uint64_t kDefaultEmpiricalN = 1'000'000;
inline constexpr std::uint64_t kMaxEmpiricalN = 100'000'000;

/// (1/n) sum_{j in (n/k, n]} log N_k(j), with a fixed-block compensated
/// reduction so the result does not depend on the thread count.
double x0_empirical_const(std::uint64_t k, std::uint64_t n, unsigned threads = 1);

struct UpperBoundReport {
    std::uint64_t k;
    double yseq_const;
    double xi_const;
    double yi_const;
    double x0_analytic;
    std::optional<double> x0_empirical;
    std::optional<std::uint64_t> empirical_n;
    double total_analytic;
    std::optional<double> total_empirical;
};

UpperBoundReport upper_bound_report(std::uint64_t k, std::optional<std::uint64_t> empirical_n = std::nullopt,
                                    unsigned threads = 1);

struct RatioConstants {
    double density_lhs;   ///< (1/42) prod_{p < 10^4} (1 - 1/p)
    double density_rhs;   ///< 14 / 10^4
    BigCount lcm6;
    BigCount div6;
    double ratio_base;    ///< #S_lcm(6) / #S_div(6)
    double ratio_exponent;
    double c;             ///< ratio_base^ratio_exponent
};

/// Throws std::logic_error if either inequality fails.
RatioConstants ratio_constants();

} // namespace arithperm::bounds
