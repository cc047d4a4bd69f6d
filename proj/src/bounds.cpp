#include "arithperm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace arithperm::bounds {

namespace {

class KahanSum {
public:
    void add(double x) noexcept {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const noexcept { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double log_count(const BigCount& v) { return std::log(v.convert_to<double>()); }

BigCount block_permanent(CompatKind kind, std::uint64_t a, std::uint64_t b, const RyserOptions& options) {
    const CompatMatrix m = divisor_block_matrix(kind, a, b);
    return m.size() <= kAutoBruteForceMaxN ? permanent_bruteforce(m) : permanent_ryser(m, options);
}

double c_from(const DivisorProfile& profile, const std::vector<BigCount>& p, double top_log) {
    KahanSum s;
    s.add(top_log / static_cast<double>(profile.b));
    for (std::size_t i = 0; i + 1 < profile.tau(); ++i) {
        const double weight = 1.0 / static_cast<double>(profile.divisors[i]) -
                              1.0 / static_cast<double>(profile.divisors[i + 1]);
        s.add(weight * log_count(p[i]));
    }
    return s.value();
}

double log_factorial(std::uint64_t m) {
    KahanSum s;
    for (std::uint64_t i = 2; i <= m; ++i)
        s.add(std::log(static_cast<double>(i)));
    return s.value();
}

double to_double(const nt::Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace

DivisorProfile DivisorProfile::of(std::uint64_t b) {
    if (b == 0)
        throw std::invalid_argument("DivisorProfile: b must be positive");
    return {b, nt::divisors(b)};
}

CompatMatrix divisor_block_matrix(CompatKind kind, std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0 || b % a != 0)
        throw std::invalid_argument("divisor_block_matrix: " + std::to_string(a) + " does not divide " +
                                    std::to_string(b));
    std::vector<std::uint64_t> members;
    for (auto d : nt::divisors(b))
        if (d <= a)
            members.push_back(d);
    switch (kind) {
    case CompatKind::Lcm:
        return CompatMatrix::from_relation(
            std::move(members), [a](std::uint64_t d, std::uint64_t e) { return nt::lcm_saturating(d, e) <= a; });
    case CompatKind::Div:
        return CompatMatrix::from_relation(
            std::move(members), [](std::uint64_t d, std::uint64_t e) { return d % e == 0 || e % d == 0; });
    default:
        throw std::invalid_argument("divisor_block_matrix: only lcm and div blocks are defined");
    }
}

BigCount p_lcm(std::uint64_t a, std::uint64_t b, const RyserOptions& options) {
    return block_permanent(CompatKind::Lcm, a, b, options);
}

BigCount p_div(std::uint64_t a, std::uint64_t b, const RyserOptions& options) {
    return block_permanent(CompatKind::Div, a, b, options);
}

double c_const(std::uint64_t b, const RyserOptions& options) {
    const auto profile = DivisorProfile::of(b);
    std::vector<BigCount> p;
    for (std::size_t i = 0; i + 1 < profile.tau(); ++i)
        p.push_back(p_lcm(profile.divisors[i], b, options));
    return c_from(profile, p, log_factorial(profile.tau()));
}

double c_d_const(std::uint64_t b, const RyserOptions& options) {
    const auto profile = DivisorProfile::of(b);
    std::vector<BigCount> p;
    for (auto a : profile.divisors)
        p.push_back(p_div(a, b, options));
    return c_from(profile, p, log_count(p.back()));
}

double floor_places(double x, int places) {
    const long double scale = std::pow(10.0L, places);
    return static_cast<double>(std::floor(static_cast<long double>(x) * scale) / scale);
}

double round_places(double x, int places) {
    const long double scale = std::pow(10.0L, places);
    return static_cast<double>(std::round(static_cast<long double>(x) * scale) / scale);
}

LowerBoundReport lower_bound_report(std::uint64_t b, const RyserOptions& options) {
    if (b < 2)
        throw std::invalid_argument("lower_bound_report: b must be at least 2");
    const auto profile = DivisorProfile::of(b);
    if (profile.tau() > kMaxLowerBoundTau)
        throw ResourceError("lower_bound_report: tau(" + std::to_string(b) + ") = " +
                            std::to_string(profile.tau()) + " exceeds " + std::to_string(kMaxLowerBoundTau));

    LowerBoundReport r{};
    r.b = b;
    for (auto a : profile.divisors) {
        r.p_lcm.push_back(p_lcm(a, b, options));
        r.p_div.push_back(p_div(a, b, options));
    }
    r.c = c_from(profile, r.p_lcm, log_factorial(profile.tau()));
    r.c_d = c_from(profile, r.p_div, log_count(r.p_div.back()));
    r.alpha = nt::alpha(b);
    const double alpha = to_double(r.alpha);
    r.c_alpha = r.c * alpha;
    r.cd_alpha = r.c_d * alpha;
    r.exp_c_alpha = floor_places(std::exp(r.c_alpha), 4);
    r.exp_cd_alpha = floor_places(std::exp(r.cd_alpha), 4);
    r.phi_variant = r.c * to_double(nt::phi_ratio(b));
    return r;
}

double ub_series_term(UbSeries series, double k, unsigned i) {
    if (k < 2.0 || i == 0)
        throw std::invalid_argument("ub_series_term: need k >= 2 and i >= 1");
    const double half = std::ldexp(1.0, static_cast<int>(i) - 1);  // 2^{i-1}
    const double log_k = std::log(k);
    const double weight = std::exp(-half * log_k);                  // k^{-2^{i-1}}
    const double log_top = std::log(2.0 * half * log_k + 1.0);      // log(log(k^{2^i}) + 1)
    switch (series) {
    case UbSeries::Yseq: return weight * (half * log_k + 1.0);
    case UbSeries::Xi: return weight * (half * log_k + log_top + 1.0);
    case UbSeries::Yi: return weight * (2.0 * half * log_k + log_top);
    }
    return 0.0;
}

SeriesValue ub_series(UbSeries series, double k) {
    KahanSum s;
    unsigned i = 1;
    for (;; ++i) {
        const double t = ub_series_term(series, k, i);
        if (t < 1e-15)
            break;
        s.add(t);
    }
    return {s.value(), i - 1};
}

double ub_yseq_const(double k) { return ub_series(UbSeries::Yseq, k).value; }
double ub_xi_const(double k) { return ub_series(UbSeries::Xi, k).value; }
double ub_yi_const(double k) { return ub_series(UbSeries::Yi, k).value; }

double pair_density(std::uint64_t a, std::uint64_t c, std::uint64_t k) {
    const double ac = 1.0 / static_cast<double>(a * c);
    const double edge = 1.0 / (static_cast<double>(k) * static_cast<double>(std::min(a, c)));
    return std::max(0.0, ac - edge);
}

X0Analytic x0_analytic(std::uint64_t k) {
    if (k < 2)
        throw std::invalid_argument("x0_analytic: k must be at least 2");
    const double mertens = static_cast<double>(nt::mertens_product(static_cast<std::uint32_t>(k)));
    X0Analytic r{};
    r.nu = 1.0 - 1.0 / static_cast<double>(k) - 0.5 * mertens;
    KahanSum mass;
    for (std::uint64_t a = 1; a < k; ++a)
        for (std::uint64_t c = 1; c < k; ++c)
            if (std::gcd(a, c) == 1)
                mass.add(pair_density(a, c, k));
    mass.add(-0.5 * mertens);
    r.mean_mass = mass.value();
    r.value = r.nu * std::log(r.mean_mass / r.nu);
    return r;
}

double x0_analytic_const(std::uint64_t k) { return x0_analytic(k).value; }

double x0_empirical_const(std::uint64_t k, std::uint64_t n, unsigned threads) {
    if (k < 2)
        throw std::invalid_argument("x0_empirical_const: k must be at least 2");
    if (n < 10'000)
        throw std::invalid_argument("x0_empirical_const: n must be at least 10^4");
    if (n > kMaxEmpiricalN)
        throw ResourceError("x0_empirical_const: n = " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxEmpiricalN));
    const std::vector<std::uint32_t> counts = neighbor_counts_top(k, n);

    constexpr std::size_t kBlock = 1 << 16;
    const std::size_t blocks = (counts.size() + kBlock - 1) / kBlock;
    std::vector<double> partial(blocks, 0.0);
    auto run = [&](std::size_t first, std::size_t stride) {
        for (std::size_t blk = first; blk < blocks; blk += stride) {
            KahanSum s;
            const std::size_t end = std::min(counts.size(), (blk + 1) * kBlock);
            for (std::size_t i = blk * kBlock; i < end; ++i)
                s.add(std::log(static_cast<double>(counts[i])));
            partial[blk] = s.value();
        }
    };
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
    if (threads == 1) {
        run(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(run, t, threads);
    }
    KahanSum total;
    for (double p : partial)
        total.add(p);
    return total.value() / static_cast<double>(n);
}

UpperBoundReport upper_bound_report(std::uint64_t k, std::optional<std::uint64_t> empirical_n, unsigned threads) {
    if (k < 2)
        throw std::invalid_argument("upper_bound_report: k must be at least 2");
    UpperBoundReport r{};
    r.k = k;
    const auto kd = static_cast<double>(k);
    r.yseq_const = ub_yseq_const(kd);
    r.xi_const = ub_xi_const(kd);
    r.yi_const = ub_yi_const(kd);
    r.x0_analytic = x0_analytic_const(k);
    r.total_analytic = r.yseq_const + r.xi_const + r.yi_const + r.x0_analytic;
    if (empirical_n) {
        r.empirical_n = *empirical_n;
        r.x0_empirical = x0_empirical_const(k, *empirical_n, threads);
        r.total_empirical = r.yseq_const + r.xi_const + r.yi_const + *r.x0_empirical;
    }
    return r;
}

RatioConstants ratio_constants() {
    RatioConstants r{};
    r.density_lhs = static_cast<double>(nt::mertens_product(10'000) / 42.0L);
    r.density_rhs = 14.0 / 10'000.0;
    r.lcm6 = count_permutations(CompatKind::Lcm, 6).count;
    r.div6 = count_permutations(CompatKind::Div, 6).count;
    r.ratio_base = r.lcm6.convert_to<double>() / r.div6.convert_to<double>();
    r.ratio_exponent = 13.0 / 10'000.0;
    r.c = std::pow(r.ratio_base, r.ratio_exponent);
    if (!(r.density_lhs > r.density_rhs))
        throw std::logic_error("density bound failed: " + std::to_string(r.density_lhs) + " <= 14/10^4");
    if (!(r.c > 1.00057))
        throw std::logic_error("ratio constant failed: " + std::to_string(r.c) + " <= 1.00057");
    return r;
}

} // namespace arithperm::bounds
