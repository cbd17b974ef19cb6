#ifndef DEGCORR_DISTRIBUTIONS_HPP
#define DEGCORR_DISTRIBUTIONS_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace degcorr {

/// Riemann zeta(s) for real s > 1, via partial sum plus Euler-Maclaurin tail.
/// Absolute error well below 1e-12 over the range of interest.
double zeta(double s);

/// Tail sum  sum_{k >= m} k^(-s)  for s > 1, m >= 1, same accuracy as zeta().
double zeta_tail(double s, std::uint64_t m);

/// Heavy-tailed law on {1,2,...}:  P(D = k) = k^(-gamma) - (k+1)^(-gamma),
/// i.e. D = floor(U^(-1/gamma)) for U uniform on (0,1].  Tail P(D > k) = (k+1)^(-gamma).
struct FloorParetoLaw
{
	double gamma;

	explicit FloorParetoLaw(double g) : gamma(g)
	{
		if (!(g > 1.0))
			throw std::invalid_argument("FloorParetoLaw: gamma must be > 1");
	}
};

double pmf(const FloorParetoLaw& law, std::int64_t k);
double cdf(const FloorParetoLaw& law, std::int64_t k);

/// First two moments. nu1 = zeta(gamma) always finite (gamma > 1);
/// nu2 = 2*zeta(gamma-1) - zeta(gamma) only when gamma > 2, else flagged infinite.
struct Moments
{
	double nu1;
	double nu2;        // meaningful only when nu2_finite
	bool nu2_finite;

	/// nu2/nu1, the degenerate ANND limit for gamma > 2.
	double ratio() const
	{
		if (!nu2_finite)
			throw std::domain_error("Moments::ratio: nu2 is infinite for gamma <= 2");
		return nu2 / nu1;
	}
};

Moments moments(const FloorParetoLaw& law);

/// Size-biased density  f*(k) = k f(k) / zeta(gamma).
double size_biased_pmf(const FloorParetoLaw& law, std::int64_t k);

/// Size-biased CDF in closed form. Abel summation gives
///   sum_{t<=k} t f(t) = sum_{t<=k} t^(-gamma) - k (k+1)^(-gamma),
/// so F*(k) = 1 - (zeta_tail(gamma, k+1) + k (k+1)^(-gamma)) / zeta(gamma),
/// evaluated in O(1) for any k.
double size_biased_cdf(const FloorParetoLaw& law, std::int64_t k);

/// Survival function 1 - F*(k), computed without cancellation.
double size_biased_sf(const FloorParetoLaw& law, std::int64_t k);

/// Result of the ANNR limit series  E[F*(D*)] = sum_k F*(k) f*(k).
struct AnnrLimit
{
	double value;
	std::uint64_t terms;   // series terms actually summed
	double error_bound;    // rigorous bound on |value - true limit|
};

/// Thrown when the requested tolerance would need more series terms than the
/// cap allows. Carries the best value and bound achieved at the cap.
class PrecisionUnreachable : public std::runtime_error
{
  public:
	PrecisionUnreachable(double value, std::uint64_t terms, double bound,
	                     const std::string& what_arg)
	    : std::runtime_error(what_arg), best(value, terms, bound)
	{
	}

	AnnrLimit best;
};

/// ANNR limit E[F*(D*)] to absolute tolerance abs_tol.
/// The truncation point N comes from the integral-test bound on the series
/// tail; a midpoint estimate of the tail is then added, so the achieved
/// error_bound is typically ~abs_tol^2. Throws PrecisionUnreachable if N
/// would exceed term_cap.
AnnrLimit limit_annr(const FloorParetoLaw& law, double abs_tol,
                     std::uint64_t term_cap = 100'000'000ULL);

/// Probability mass on a contiguous integer range [offset, offset+size),
/// with any remaining mass beyond the range recorded explicitly as tail_mass
/// (truncated representations of infinite-support laws carry it; empirical
/// distributions have tail_mass 0).
class DiscreteDistribution
{
  public:
	DiscreteDistribution(std::int64_t offset, std::vector<double> probs,
	                     double tail_mass = 0.0);

	static DiscreteDistribution point_mass(std::int64_t k);

	/// The law truncated to {1..kmax}; tail_mass = (kmax+1)^(-gamma) exactly.
	static DiscreteDistribution truncate_law(const FloorParetoLaw& law, std::int64_t kmax);

	std::int64_t min_support() const { return offset_; }
	std::int64_t max_support() const { return offset_ + static_cast<std::int64_t>(probs_.size()) - 1; }
	double tail_mass() const { return tail_mass_; }

	/// P(X = k); zero outside the stored range (the tail is not located).
	double prob(std::int64_t k) const;

	/// P(X <= k) counting only the stored range (a lower bound when tail_mass > 0).
	double cdf(std::int64_t k) const;

	/// Mean of the stored range. Requires tail_mass == 0 (a displaced tail can
	/// carry arbitrary mean weight).
	double mean() const;

	const std::vector<double>& probs() const { return probs_; }

  private:
	std::int64_t offset_;
	std::vector<double> probs_;
	double tail_mass_;
};

/// Two-sided bracket for a distance computed from truncated representations.
struct DistanceInterval
{
	double lower;
	double upper;
};

/// Wasserstein-1 distance  d1(F,G) = sum_k |F(k) - G(k)|.
/// Requires both inputs to have zero tail mass (otherwise the distance is not
/// determined by the representation); throws std::domain_error if not.
double d1(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Total variation distance  (1/2) sum_k |f(k) - g(k)|, exact when both tail
/// masses are zero; with positive tails this returns the lower end of the
/// rigorous bracket (see dtv_interval).
double dtv(const DiscreteDistribution& a, const DiscreteDistribution& b);

DistanceInterval d1_interval(const DiscreteDistribution& a, const DiscreteDistribution& b);
DistanceInterval dtv_interval(const DiscreteDistribution& a, const DiscreteDistribution& b);

} // namespace degcorr

#endif
