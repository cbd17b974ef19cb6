#ifndef DEGCORR_MEASURES_HPP
#define DEGCORR_MEASURES_HPP

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "degcorr/degree_sequence.hpp"
#include "degcorr/graph.hpp"

namespace degcorr {

/// Empirical joint degree distribution h_n(k,l): the fraction of directed
/// edges (each undirected edge counted once per direction, each self-loop
/// contributing its G_ii directed edges) whose endpoint degrees are (k,l).
/// Stored as exact integer directed-edge counts over L_n.
class JointDegreeDistribution
{
  public:
	JointDegreeDistribution(std::unordered_map<std::uint64_t, std::uint64_t> counts,
	                        std::uint64_t stub_total)
	    : counts_(std::move(counts)), stub_total_(stub_total)
	{
	}

	std::uint64_t stub_total() const { return stub_total_; }

	/// h_n(k, l).
	double mass(std::int64_t k, std::int64_t l) const;

	/// Exact directed count behind h_n(k, l).
	std::uint64_t directed_count(std::int64_t k, std::int64_t l) const;

	/// f(k, l, directed_count) over nonzero cells, unspecified order.
	template <class F>
	void for_each(F&& f) const
	{
		for (const auto& [key, c] : counts_)
			f(static_cast<std::int64_t>(key >> 32),
			  static_cast<std::int64_t>(key & 0xffffffffULL), c);
	}

	static std::uint64_t pack(std::int64_t k, std::int64_t l)
	{
		return (static_cast<std::uint64_t>(k) << 32) | static_cast<std::uint64_t>(l);
	}

  private:
	std::unordered_map<std::uint64_t, std::uint64_t> counts_;
	std::uint64_t stub_total_;
};

JointDegreeDistribution joint_degree_density(const MultiGraph& g);
JointDegreeDistribution joint_degree_density(const SimpleGraph& g);

enum class MixingKind { annd, annr };

/// Dense curve over k = 1..max degree. present(k) iff the graph has a node of
/// degree k; value(k) = 0 when absent (the zero convention).
class MixingCurve
{
  public:
	MixingCurve(MixingKind kind, std::vector<double> values, std::vector<bool> present)
	    : kind_(kind), values_(std::move(values)), present_(std::move(present))
	{
	}

	MixingKind kind() const { return kind_; }
	std::int64_t max_degree() const { return static_cast<std::int64_t>(values_.size()); }

	double value(std::int64_t k) const
	{
		return (k >= 1 && k <= max_degree()) ? values_[static_cast<std::size_t>(k - 1)] : 0.0;
	}

	bool present(std::int64_t k) const
	{
		return k >= 1 && k <= max_degree() && present_[static_cast<std::size_t>(k - 1)];
	}

  private:
	MixingKind kind_;
	std::vector<double> values_;
	std::vector<bool> present_;
};

/// Average nearest-neighbor degree: Phi(k) = average partner degree over all
/// stubs of degree-k nodes (self-loop partners count as the node itself).
MixingCurve annd(const MultiGraph& g);
MixingCurve annd(const SimpleGraph& g);

/// Average nearest-neighbor rank: Theta(k) = average F*_n(partner degree) over
/// the same stubs, with F*_n the graph's own size-biased degree CDF; in [0,1].
MixingCurve annr(const MultiGraph& g);
MixingCurve annr(const SimpleGraph& g);

/// Formula route through h_n: Phi(k) = sum_l h(k,l) l / f*(k). Kept as an
/// independent computation path; agrees exactly with the direct route.
MixingCurve annd_from_joint(const JointDegreeDistribution& joint);
MixingCurve annr_from_joint(const JointDegreeDistribution& joint);

/// CSV with header "k,value,present", one row per k = 1..max degree.
void write_curve_csv(std::ostream& os, const MixingCurve& curve);

/// Distances between the sequence's empirical densities and the law,
/// with the law's infinite tails evaluated exactly (Euler-Maclaurin), not
/// truncated: d1(f_n, f) always; d1(f*_n, f*) only for gamma > 2 (the
/// size-biased law has infinite mean otherwise, flagged); dtv(f*_n, f*) always.
struct RegularityReport
{
	double d1_density;
	double d1_size_biased;        // +inf when !d1_size_biased_finite
	bool d1_size_biased_finite;   // gamma > 2
	double dtv_size_biased;
};

RegularityReport regularity_diagnostics(const DegreeSequence& seq, const FloorParetoLaw& law);

} // namespace degcorr

#endif
