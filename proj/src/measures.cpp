#include "degcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace degcorr {

namespace {

// Degrees above this would need impractically large dense curve arrays.
constexpr std::int64_t max_supported_degree = 100'000'000;

void check_degree_range(std::int64_t max_degree)
{
	if (max_degree > max_supported_degree)
		throw std::runtime_error("measures: max degree " + std::to_string(max_degree) +
		                         " exceeds supported range");
}

// Uniform iteration over the two graph representations: visit(u, v, m) with
// u <= v, diagonal m = G_uu (twice the self-loop count).
template <class F>
void visit_entries(const MultiGraph& g, F&& f)
{
	g.for_each_entry(f);
}

template <class F>
void visit_entries(const SimpleGraph& g, F&& f)
{
	for (const auto& [u, v] : g.edges)
		f(u, v, std::uint64_t{1});
}

const std::vector<std::int64_t>& measured_degrees(const MultiGraph& g)
{
	return g.degrees();
}

const std::vector<std::int64_t>& measured_degrees(const SimpleGraph& g)
{
	return g.degrees;
}

std::uint64_t measured_stub_total(const MultiGraph& g)
{
	return g.stub_total();
}

std::uint64_t measured_stub_total(const SimpleGraph& g)
{
	return g.stub_total;
}

// Integer accumulators per degree k: stubs at k, sum of partner degrees over
// those stubs, and sum of cumulative partner stub-ranks. Exact, so the two
// computation paths (direct and via h_n) agree bit-for-bit, and summation
// order never matters.
struct DegreeAccumulators
{
	std::vector<std::int64_t> node_count;        // index k
	std::vector<std::uint64_t> stub_count;       // k * node_count[k]
	std::vector<std::uint64_t> stub_rank;        // S(k) = sum_{t<=k} stub_count[t]
	std::vector<unsigned __int128> partner_sum;  // sum over stubs at k of partner degree
	std::vector<unsigned __int128> rank_sum;     // sum over stubs at k of S(partner degree)
	std::int64_t max_degree = 0;
};

template <class Graph>
DegreeAccumulators accumulate(const Graph& g)
{
	const auto& deg = measured_degrees(g);
	DegreeAccumulators acc;
	for (std::int64_t d : deg)
		acc.max_degree = std::max(acc.max_degree, d);
	check_degree_range(acc.max_degree);
	const auto size = static_cast<std::size_t>(acc.max_degree) + 1;
	acc.node_count.assign(size, 0);
	acc.stub_count.assign(size, 0);
	acc.stub_rank.assign(size, 0);
	acc.partner_sum.assign(size, 0);
	acc.rank_sum.assign(size, 0);
	for (std::int64_t d : deg)
		++acc.node_count[static_cast<std::size_t>(d)];
	std::uint64_t running = 0;
	for (std::size_t k = 0; k < size; ++k) {
		acc.stub_count[k] =
		    static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(acc.node_count[k]);
		running += acc.stub_count[k];
		acc.stub_rank[k] = running;
	}
	visit_entries(g, [&](MultiGraph::NodeId u, MultiGraph::NodeId v, std::uint64_t m) {
		const auto du = static_cast<std::size_t>(deg[u]);
		const auto dv = static_cast<std::size_t>(deg[v]);
		if (u == v) {
			acc.partner_sum[du] += static_cast<unsigned __int128>(m) * du;
			acc.rank_sum[du] += static_cast<unsigned __int128>(m) * acc.stub_rank[du];
		} else {
			acc.partner_sum[du] += static_cast<unsigned __int128>(m) * dv;
			acc.partner_sum[dv] += static_cast<unsigned __int128>(m) * du;
			acc.rank_sum[du] += static_cast<unsigned __int128>(m) * acc.stub_rank[dv];
			acc.rank_sum[dv] += static_cast<unsigned __int128>(m) * acc.stub_rank[du];
		}
	});
	return acc;
}

MixingCurve annd_from(const DegreeAccumulators& acc)
{
	const auto size = static_cast<std::size_t>(acc.max_degree);
	std::vector<double> values(size, 0.0);
	std::vector<bool> present(size, false);
	for (std::size_t k = 1; k <= size; ++k) {
		if (acc.node_count[k] == 0)
			continue;
		present[k - 1] = true;
		values[k - 1] = static_cast<double>(acc.partner_sum[k]) /
		                static_cast<double>(acc.stub_count[k]);
	}
	return MixingCurve(MixingKind::annd, std::move(values), std::move(present));
}

MixingCurve annr_from(const DegreeAccumulators& acc, std::uint64_t stub_total)
{
	const auto size = static_cast<std::size_t>(acc.max_degree);
	std::vector<double> values(size, 0.0);
	std::vector<bool> present(size, false);
	for (std::size_t k = 1; k <= size; ++k) {
		if (acc.node_count[k] == 0)
			continue;
		present[k - 1] = true;
		values[k - 1] = static_cast<double>(acc.rank_sum[k]) /
		                (static_cast<double>(acc.stub_count[k]) *
		                 static_cast<double>(stub_total));
	}
	return MixingCurve(MixingKind::annr, std::move(values), std::move(present));
}

template <class Graph>
JointDegreeDistribution joint_from(const Graph& g)
{
	const auto& deg = measured_degrees(g);
	std::int64_t max_degree = 0;
	for (std::int64_t d : deg)
		max_degree = std::max(max_degree, d);
	check_degree_range(max_degree);
	std::unordered_map<std::uint64_t, std::uint64_t> counts;
	std::uint64_t total = 0;
	visit_entries(g, [&](MultiGraph::NodeId u, MultiGraph::NodeId v, std::uint64_t m) {
		const std::int64_t du = deg[u];
		const std::int64_t dv = deg[v];
		if (u == v) {
			counts[JointDegreeDistribution::pack(du, du)] += m;
			total += m;
		} else {
			counts[JointDegreeDistribution::pack(du, dv)] += m;
			counts[JointDegreeDistribution::pack(dv, du)] += m;
			total += 2 * m;
		}
	});
	if (total == 0)
		throw std::domain_error("joint_degree_density: graph has no edges");
	return JointDegreeDistribution(std::move(counts), measured_stub_total(g));
}

} // namespace

double JointDegreeDistribution::mass(std::int64_t k, std::int64_t l) const
{
	return static_cast<double>(directed_count(k, l)) / static_cast<double>(stub_total_);
}

std::uint64_t JointDegreeDistribution::directed_count(std::int64_t k, std::int64_t l) const
{
	const auto it = counts_.find(pack(k, l));
	return it == counts_.end() ? 0 : it->second;
}

JointDegreeDistribution joint_degree_density(const MultiGraph& g)
{
	return joint_from(g);
}

JointDegreeDistribution joint_degree_density(const SimpleGraph& g)
{
	return joint_from(g);
}

MixingCurve annd(const MultiGraph& g)
{
	return annd_from(accumulate(g));
}

MixingCurve annd(const SimpleGraph& g)
{
	return annd_from(accumulate(g));
}

MixingCurve annr(const MultiGraph& g)
{
	return annr_from(accumulate(g), measured_stub_total(g));
}

MixingCurve annr(const SimpleGraph& g)
{
	return annr_from(accumulate(g), measured_stub_total(g));
}

namespace {

// Rebuild the per-degree accumulators from h_n cells alone: the k-marginal of
// the directed counts is exactly the stub count of degree k.
DegreeAccumulators accumulators_from_joint(const JointDegreeDistribution& joint)
{
	std::int64_t max_degree = 0;
	joint.for_each([&max_degree](std::int64_t k, std::int64_t l, std::uint64_t) {
		max_degree = std::max({max_degree, k, l});
	});
	check_degree_range(max_degree);
	DegreeAccumulators acc;
	acc.max_degree = max_degree;
	const auto size = static_cast<std::size_t>(max_degree) + 1;
	acc.node_count.assign(size, 0);
	acc.stub_count.assign(size, 0);
	acc.stub_rank.assign(size, 0);
	acc.partner_sum.assign(size, 0);
	acc.rank_sum.assign(size, 0);
	joint.for_each([&acc](std::int64_t k, std::int64_t l, std::uint64_t c) {
		acc.stub_count[static_cast<std::size_t>(k)] += c;
		acc.partner_sum[static_cast<std::size_t>(k)] +=
		    static_cast<unsigned __int128>(c) * static_cast<std::uint64_t>(l);
	});
	std::uint64_t running = 0;
	for (std::size_t k = 0; k < size; ++k) {
		// node_count is only used for presence here; degree k has stubs iff
		// some node has degree k (k >= 1 gives every such node a stub).
		acc.node_count[k] = acc.stub_count[k] > 0 ? 1 : 0;
		running += acc.stub_count[k];
		acc.stub_rank[k] = running;
	}
	joint.for_each([&acc](std::int64_t k, std::int64_t l, std::uint64_t c) {
		acc.rank_sum[static_cast<std::size_t>(k)] +=
		    static_cast<unsigned __int128>(c) *
		    acc.stub_rank[static_cast<std::size_t>(l)];
	});
	return acc;
}

} // namespace

MixingCurve annd_from_joint(const JointDegreeDistribution& joint)
{
	return annd_from(accumulators_from_joint(joint));
}

MixingCurve annr_from_joint(const JointDegreeDistribution& joint)
{
	return annr_from(accumulators_from_joint(joint), joint.stub_total());
}

void write_curve_csv(std::ostream& os, const MixingCurve& curve)
{
	os << "k,value,present\n";
	os << std::setprecision(17);
	for (std::int64_t k = 1; k <= curve.max_degree(); ++k)
		os << k << ',' << curve.value(k) << ',' << (curve.present(k) ? 1 : 0) << '\n';
}

RegularityReport regularity_diagnostics(const DegreeSequence& seq,
                                        const FloorParetoLaw& law)
{
	const double g = law.gamma;
	const double zg = zeta(g);
	const auto counts = seq.degree_counts();
	const std::int64_t dmax = seq.max_degree();
	const double n = static_cast<double>(seq.size());
	const double ln = static_cast<double>(seq.stub_total());

	RegularityReport rep;
	rep.d1_size_biased_finite = g > 2.0;

	double d1f = 0.0;
	double d1s = 0.0;
	double dtvs = 0.0;
	std::int64_t cum_nodes = 0;
	std::uint64_t cum_stubs = 0;
	double prev = 1.0;     // k^(-g)
	double law_kf = 0.0;   // sum_{t<=k} t f(t) = zg * F*(k)
	for (std::int64_t k = 1; k <= dmax; ++k) {
		const double kd = static_cast<double>(k);
		const double next = std::pow(kd + 1.0, -g);
		const double fk = prev - next;
		const std::int64_t ck = counts[static_cast<std::size_t>(k)];
		cum_nodes += ck;
		cum_stubs += static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(ck);
		law_kf += kd * fk;
		const double fstar_emp = static_cast<double>(
		                             static_cast<std::uint64_t>(k) *
		                             static_cast<std::uint64_t>(ck)) /
		                         ln;
		dtvs += std::abs(fstar_emp - kd * fk / zg);
		if (k < dmax) {
			d1f += std::abs(static_cast<double>(cum_nodes) / n - (1.0 - next));
			d1s += std::abs(static_cast<double>(cum_stubs) / ln - law_kf / zg);
		}
		prev = next;
	}

	// Beyond the max observed degree the empirical CDFs are 1; the law tails
	// are summed exactly: sum_{k>=dmax} (1 - F(k)) = zeta_tail(g, dmax+1) and
	// sum_{k>=dmax} (1 - F*(k)) = (2 zeta_tail(g-1, dmax+1)
	//                              - (dmax+1) zeta_tail(g, dmax+1)) / zeta(g).
	const auto m1 = static_cast<std::uint64_t>(dmax) + 1;
	rep.d1_density = d1f + zeta_tail(g, m1);
	dtvs += size_biased_sf(law, dmax);
	rep.dtv_size_biased = 0.5 * dtvs;
	if (rep.d1_size_biased_finite)
		rep.d1_size_biased = d1s + (2.0 * zeta_tail(g - 1.0, m1) -
		                            static_cast<double>(m1) * zeta_tail(g, m1)) /
		                               zg;
	else
		rep.d1_size_biased = std::numeric_limits<double>::infinity();
	return rep;
}

} // namespace degcorr
