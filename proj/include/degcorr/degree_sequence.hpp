#ifndef DEGCORR_DEGREE_SEQUENCE_HPP
#define DEGCORR_DEGREE_SEQUENCE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "degcorr/distributions.hpp"
#include "degcorr/rng.hpp"

namespace degcorr {

/// A degree sequence with an even stub total. Entries are >= 1; the sampler
/// enforces evenness by adding 1 to the last entry when the raw sum is odd.
class DegreeSequence
{
  public:
	explicit DegreeSequence(std::vector<std::int64_t> degrees);

	/// n iid floor-Pareto degrees, D_i = floor(U^(-1/gamma)), with the parity
	/// correction applied to the last entry only.
	static DegreeSequence sample_iid(const FloorParetoLaw& law, std::int64_t n,
	                                 RandomStream& stream);

	std::int64_t size() const { return static_cast<std::int64_t>(degrees_.size()); }
	std::int64_t degree(std::int64_t i) const { return degrees_[static_cast<std::size_t>(i)]; }
	const std::vector<std::int64_t>& degrees() const { return degrees_; }
	std::uint64_t stub_total() const { return stub_total_; }
	std::int64_t max_degree() const { return max_degree_; }

	/// counts[k] = #{i : D_i = k}, k = 0..max_degree (index 0 always zero).
	std::vector<std::int64_t> degree_counts() const;

  private:
	std::vector<std::int64_t> degrees_;
	std::uint64_t stub_total_;
	std::int64_t max_degree_;
};

/// Empirical degree density f_n(k) = #{i : D_i = k} / n, support {1..max degree}.
DiscreteDistribution empirical_density(const DegreeSequence& seq);

/// Size-biased empirical density f*_n(k) = k #{i : D_i = k} / L_n; its CDF is
/// the empirical degree rank F*_n.
DiscreteDistribution size_biased_empirical(const DegreeSequence& seq);

/// Newline-delimited degrees with a header comment carrying n, gamma, seed.
void write_degree_sequence(std::ostream& os, const DegreeSequence& seq, double gamma,
                           std::uint64_t seed);

struct DegreeSequenceHeader
{
	std::int64_t n = -1;
	double gamma = 0.0;
	std::uint64_t seed = 0;
	bool present = false;
};

DegreeSequence read_degree_sequence(std::istream& is,
                                    DegreeSequenceHeader* header = nullptr);

} // namespace degcorr

#endif
