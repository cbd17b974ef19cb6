#include "degcorr/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace degcorr {

namespace {

// Euler-Maclaurin tail sum_{k>=M} k^(-s), valid for M not too small.
// Coefficients are B_{2j}/(2j)! for j = 1..6; with M >= 32 the first omitted
// term (and hence the error) is below 1e-21 for every s > 1.
double em_tail(double s, double m)
{
	static const double coef[6] = {
	    1.0 / 12.0,       -1.0 / 720.0,       1.0 / 30240.0,
	    -1.0 / 1209600.0, 1.0 / 47900160.0,   -691.0 / 1307674368000.0,
	};
	const double ms = std::pow(m, -s);
	double result = m * ms / (s - 1.0) + 0.5 * ms;
	double rising = s;        // rising factorial s(s+1)...(s+2j-2)
	double mp = ms / m;       // m^(-s-2j+1)
	for (int j = 0; j < 6; ++j) {
		result += coef[j] * rising * mp;
		rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
		mp /= m * m;
	}
	return result;
}

} // namespace

double zeta_tail(double s, std::uint64_t m)
{
	if (!(s > 1.0))
		throw std::domain_error("zeta_tail: requires s > 1");
	if (m == 0)
		throw std::domain_error("zeta_tail: requires m >= 1");
	const std::uint64_t m0 = std::max<std::uint64_t>(m, 32);
	double head = 0.0;
	for (std::uint64_t k = m; k < m0; ++k)
		head += std::pow(static_cast<double>(k), -s);
	return head + em_tail(s, static_cast<double>(m0));
}

double zeta(double s)
{
	return zeta_tail(s, 1);
}

double pmf(const FloorParetoLaw& law, std::int64_t k)
{
	if (k < 1)
		return 0.0;
	const double kd = static_cast<double>(k);
	return std::pow(kd, -law.gamma) - std::pow(kd + 1.0, -law.gamma);
}

double cdf(const FloorParetoLaw& law, std::int64_t k)
{
	if (k < 1)
		return 0.0;
	return 1.0 - std::pow(static_cast<double>(k) + 1.0, -law.gamma);
}

Moments moments(const FloorParetoLaw& law)
{
	Moments m;
	m.nu1 = zeta(law.gamma);
	m.nu2_finite = law.gamma > 2.0;
	m.nu2 = m.nu2_finite ? 2.0 * zeta(law.gamma - 1.0) - m.nu1
	                     : std::numeric_limits<double>::infinity();
	return m;
}

double size_biased_pmf(const FloorParetoLaw& law, std::int64_t k)
{
	if (k < 1)
		return 0.0;
	return static_cast<double>(k) * pmf(law, k) / zeta(law.gamma);
}

double size_biased_sf(const FloorParetoLaw& law, std::int64_t k)
{
	if (k < 1)
		return 1.0;
	const double kd = static_cast<double>(k);
	const double tail = zeta_tail(law.gamma, static_cast<std::uint64_t>(k) + 1);
	return (tail + kd * std::pow(kd + 1.0, -law.gamma)) / zeta(law.gamma);
}

double size_biased_cdf(const FloorParetoLaw& law, std::int64_t k)
{
	return 1.0 - size_biased_sf(law, k);
}

AnnrLimit limit_annr(const FloorParetoLaw& law, double abs_tol, std::uint64_t term_cap)
{
	if (!(abs_tol > 0.0))
		throw std::invalid_argument("limit_annr: abs_tol must be positive");
	if (term_cap == 0)
		throw std::invalid_argument("limit_annr: term_cap must be positive");

	const double g = law.gamma;
	const double zg = zeta(g);

	// Integral-test bound on the series tail: sum_{k>N} f*(k) <= g N^(1-g) / ((g-1) zg).
	const double n_real = std::pow(g / ((g - 1.0) * zg * abs_tol), 1.0 / (g - 1.0));
	std::uint64_t n_terms;
	bool capped = false;
	if (n_real >= static_cast<double>(term_cap)) {
		n_terms = term_cap;
		capped = true;
	} else {
		n_terms = std::max<std::uint64_t>(10, static_cast<std::uint64_t>(std::ceil(n_real)));
	}

	// Single pass: acc = sum_{t<=k} t f(t) = zg * F*(k), term = k f(k) = zg * f*(k).
	double prev = 1.0; // k^(-g) at k = 1
	double acc = 0.0;
	double series = 0.0;
	for (std::uint64_t k = 1; k <= n_terms; ++k) {
		const double kd = static_cast<double>(k);
		const double next = std::pow(kd + 1.0, -g);
		const double fk = prev - next;
		const double kfk = kd * fk;
		acc += kfk;
		series += acc * kfk;
		prev = next;
	}
	series /= zg * zg;

	// Remaining size-biased mass beyond N, exact. The omitted tail lies in
	// [F*(N) * rem, rem]; taking the midpoint leaves an error of rem^2 / 2.
	const double rem = size_biased_sf(law, static_cast<std::int64_t>(n_terms));
	const double fstar_n = 1.0 - rem;
	AnnrLimit out;
	out.value = series + 0.5 * (fstar_n + 1.0) * rem;
	out.terms = n_terms;
	out.error_bound = 0.5 * rem * rem + 1e-14;

	if (capped && out.error_bound > abs_tol)
		throw PrecisionUnreachable(
		    out.value, out.terms, out.error_bound,
		    "limit_annr: tolerance " + std::to_string(abs_tol) +
		        " unreachable within term cap; best bound " +
		        std::to_string(out.error_bound));
	return out;
}

DiscreteDistribution::DiscreteDistribution(std::int64_t offset, std::vector<double> probs,
                                           double tail_mass)
    : offset_(offset), probs_(std::move(probs)), tail_mass_(tail_mass)
{
	if (probs_.empty())
		throw std::invalid_argument("DiscreteDistribution: empty support");
	if (tail_mass_ < 0.0)
		throw std::invalid_argument("DiscreteDistribution: negative tail mass");
	double total = tail_mass_;
	for (double p : probs_) {
		if (p < 0.0)
			throw std::invalid_argument("DiscreteDistribution: negative probability");
		total += p;
	}
	if (std::abs(total - 1.0) > 1e-9)
		throw std::invalid_argument("DiscreteDistribution: mass sums to " +
		                            std::to_string(total) + ", expected 1");
}

DiscreteDistribution DiscreteDistribution::point_mass(std::int64_t k)
{
	return DiscreteDistribution(k, {1.0});
}

DiscreteDistribution DiscreteDistribution::truncate_law(const FloorParetoLaw& law,
                                                        std::int64_t kmax)
{
	if (kmax < 1)
		throw std::invalid_argument("truncate_law: kmax must be >= 1");
	std::vector<double> p(static_cast<std::size_t>(kmax));
	for (std::int64_t k = 1; k <= kmax; ++k)
		p[static_cast<std::size_t>(k - 1)] = pmf(law, k);
	const double tail = std::pow(static_cast<double>(kmax) + 1.0, -law.gamma);
	return DiscreteDistribution(1, std::move(p), tail);
}

double DiscreteDistribution::prob(std::int64_t k) const
{
	if (k < offset_ || k > max_support())
		return 0.0;
	return probs_[static_cast<std::size_t>(k - offset_)];
}

double DiscreteDistribution::cdf(std::int64_t k) const
{
	if (k < offset_)
		return 0.0;
	const std::int64_t last = std::min(k, max_support());
	double c = 0.0;
	for (std::int64_t t = offset_; t <= last; ++t)
		c += probs_[static_cast<std::size_t>(t - offset_)];
	return c;
}

double DiscreteDistribution::mean() const
{
	if (tail_mass_ > 0.0)
		throw std::domain_error("DiscreteDistribution::mean: undefined with tail mass");
	double m = 0.0;
	for (std::size_t i = 0; i < probs_.size(); ++i)
		m += static_cast<double>(offset_ + static_cast<std::int64_t>(i)) * probs_[i];
	return m;
}

namespace {

// Shared sweep over the union of supports; accumulates both the CDF distance
// and the pointwise density distance.
struct DistanceSums
{
	double cdf_abs;  // sum_k |F_A(k) - F_B(k)| over the explicit range
	double pmf_abs;  // sum_k |f_A(k) - f_B(k)| over the explicit range
};

DistanceSums sweep(const DiscreteDistribution& a, const DiscreteDistribution& b)
{
	const std::int64_t lo = std::min(a.min_support(), b.min_support());
	const std::int64_t hi = std::max(a.max_support(), b.max_support());
	DistanceSums s{0.0, 0.0};
	double fa = 0.0;
	double fb = 0.0;
	for (std::int64_t k = lo; k <= hi; ++k) {
		const double pa = a.prob(k);
		const double pb = b.prob(k);
		fa += pa;
		fb += pb;
		s.pmf_abs += std::abs(pa - pb);
		if (k < hi)
			s.cdf_abs += std::abs(fa - fb);
	}
	return s;
}

} // namespace

double d1(const DiscreteDistribution& a, const DiscreteDistribution& b)
{
	if (a.tail_mass() > 0.0 || b.tail_mass() > 0.0)
		throw std::domain_error(
		    "d1: undefined on truncated representations (use d1_interval)");
	return sweep(a, b).cdf_abs;
}

double dtv(const DiscreteDistribution& a, const DiscreteDistribution& b)
{
	const DistanceSums s = sweep(a, b);
	return 0.5 * s.pmf_abs + 0.5 * std::abs(a.tail_mass() - b.tail_mass());
}

DistanceInterval d1_interval(const DiscreteDistribution& a, const DiscreteDistribution& b)
{
	const double base = sweep(a, b).cdf_abs;
	if (a.tail_mass() > 0.0 || b.tail_mass() > 0.0) {
		// The CDF gap |tail_a - tail_b| persists from the last support point
		// until the displaced tails appear, which can be arbitrarily late.
		const double lower = base + std::abs(a.tail_mass() - b.tail_mass());
		return {lower, std::numeric_limits<double>::infinity()};
	}
	return {base, base};
}

DistanceInterval dtv_interval(const DiscreteDistribution& a, const DiscreteDistribution& b)
{
	const double lower = dtv(a, b);
	const double upper =
	    std::min(1.0, lower + std::min(a.tail_mass(), b.tail_mass()));
	return {lower, upper};
}

} // namespace degcorr

