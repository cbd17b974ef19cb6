#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "degcorr/degree_sequence.hpp"
#include "degcorr/distributions.hpp"
#include "degcorr/graph.hpp"
#include "degcorr/measures.hpp"
#include "degcorr/rng.hpp"

using degcorr::DegreeSequence;
using degcorr::FloorParetoLaw;
using degcorr::JointDegreeDistribution;
using degcorr::MixingCurve;
using degcorr::MultiGraph;
using degcorr::RandomStream;
using degcorr::SimpleGraph;

TEST_CASE("path graph curves by hand")
{
	// 0 - 1 - 2 with degrees 1, 2, 1 and L = 4.
	MultiGraph g(3);
	g.add_pair(0, 1);
	g.add_pair(1, 2);

	const MixingCurve phi = degcorr::annd(g);
	CHECK(phi.kind() == degcorr::MixingKind::annd);
	CHECK(phi.max_degree() == 2);
	CHECK(phi.value(1) == 2.0); // both leaves see the center
	CHECK(phi.value(2) == 1.0); // the center sees two leaves
	CHECK(phi.present(1));
	CHECK(phi.present(2));
	CHECK_FALSE(phi.present(3));
	CHECK(phi.value(3) == 0.0);

	// F*(1) = 1/2, F*(2) = 1.
	const MixingCurve theta = degcorr::annr(g);
	CHECK(theta.value(1) == 1.0);
	CHECK(theta.value(2) == 0.5);

	const JointDegreeDistribution h = degcorr::joint_degree_density(g);
	CHECK(h.stub_total() == 4);
	CHECK(h.mass(1, 2) == 0.5);
	CHECK(h.mass(2, 1) == 0.5);
	CHECK(h.mass(1, 1) == 0.0);
	CHECK(h.mass(2, 2) == 0.0);
	CHECK(h.directed_count(1, 2) == 2);
	CHECK(h.directed_count(2, 1) == 2);
}

TEST_CASE("self-loop contributes the node's own degree and rank")
{
	MultiGraph g(1);
	g.add_pair(0, 0);
	const MixingCurve phi = degcorr::annd(g);
	CHECK(phi.value(2) == 2.0);
	const MixingCurve theta = degcorr::annr(g);
	CHECK(theta.value(2) == 1.0); // F*(2) = 1: every stub belongs to degree 2
	const JointDegreeDistribution h = degcorr::joint_degree_density(g);
	CHECK(h.mass(2, 2) == 1.0);
	CHECK(h.directed_count(2, 2) == 2);
}

TEST_CASE("joint density marginals recover exact stub counts")
{
	for (double gamma : {1.5, 2.5}) {
		const FloorParetoLaw law(gamma);
		for (std::uint64_t seed = 0; seed < 25; ++seed) {
			RandomStream stream(degcorr::splitmix64_at(101, seed));
			const DegreeSequence seq = DegreeSequence::sample_iid(law, 150, stream);
			const MultiGraph g = degcorr::pair_configuration_model(seq, stream);
			const JointDegreeDistribution h = degcorr::joint_degree_density(g);
			CHECK(h.stub_total() == seq.stub_total());

			// symmetry cell by cell
			std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> cells;
			h.for_each([&](std::int64_t k, std::int64_t l, std::uint64_t c) {
				cells[{k, l}] = c;
			});
			std::uint64_t total = 0;
			std::map<std::int64_t, std::uint64_t> marginal;
			for (const auto& [kl, c] : cells) {
				CHECK(cells.at({kl.second, kl.first}) == c);
				marginal[kl.first] += c;
				total += c;
			}
			CHECK(total == seq.stub_total());

			// row marginal equals k * #{nodes of degree k} exactly
			const auto counts = seq.degree_counts();
			for (const auto& [k, c] : marginal)
				CHECK(c == static_cast<std::uint64_t>(k) *
				               static_cast<std::uint64_t>(
				                   counts[static_cast<std::size_t>(k)]));
		}
	}
}

TEST_CASE("formula route equals the direct route bitwise")
{
	int checked = 0;
	for (double gamma : {1.5, 2.0, 2.5}) {
		const FloorParetoLaw law(gamma);
		for (std::uint64_t seed = 0; seed < 40; ++seed) {
			RandomStream stream(degcorr::splitmix64_at(211, seed));
			const std::int64_t n = 2 + static_cast<std::int64_t>(stream.next_below(200));
			const DegreeSequence seq = DegreeSequence::sample_iid(law, n, stream);
			const MultiGraph g = degcorr::pair_configuration_model(seq, stream);

			const JointDegreeDistribution h = degcorr::joint_degree_density(g);
			const MixingCurve phi_direct = degcorr::annd(g);
			const MixingCurve phi_formula = degcorr::annd_from_joint(h);
			const MixingCurve theta_direct = degcorr::annr(g);
			const MixingCurve theta_formula = degcorr::annr_from_joint(h);
			REQUIRE(phi_direct.max_degree() == phi_formula.max_degree());
			REQUIRE(theta_direct.max_degree() == theta_formula.max_degree());
			for (std::int64_t k = 1; k <= phi_direct.max_degree(); ++k) {
				CHECK(phi_direct.value(k) == phi_formula.value(k));
				CHECK(phi_direct.present(k) == phi_formula.present(k));
				CHECK(theta_direct.value(k) == theta_formula.value(k));
				++checked;
			}

			// same equality on the erased graph
			const SimpleGraph sg = degcorr::erase(g);
			const JointDegreeDistribution hs = degcorr::joint_degree_density(sg);
			const MixingCurve sphi_direct = degcorr::annd(sg);
			const MixingCurve sphi_formula = degcorr::annd_from_joint(hs);
			const MixingCurve stheta_direct = degcorr::annr(sg);
			const MixingCurve stheta_formula = degcorr::annr_from_joint(hs);
			for (std::int64_t k = 1; k <= sphi_direct.max_degree(); ++k) {
				CHECK(sphi_direct.value(k) == sphi_formula.value(k));
				CHECK(stheta_direct.value(k) == stheta_formula.value(k));
			}
		}
	}
	CHECK(checked > 1000);
}

TEST_CASE("ranks stay within the unit interval")
{
	for (double gamma : {1.2, 2.5}) {
		const FloorParetoLaw law(gamma);
		for (std::uint64_t seed = 0; seed < 30; ++seed) {
			RandomStream stream(degcorr::splitmix64_at(307, seed));
			const DegreeSequence seq = DegreeSequence::sample_iid(law, 120, stream);
			const MultiGraph g = degcorr::pair_configuration_model(seq, stream);
			const MixingCurve theta = degcorr::annr(g);
			for (std::int64_t k = 1; k <= theta.max_degree(); ++k) {
				CHECK(theta.value(k) >= 0.0);
				CHECK(theta.value(k) <= 1.0);
				if (theta.present(k))
					CHECK(theta.value(k) > 0.0);
			}
		}
	}
}

TEST_CASE("stub-averaged curves collapse to size-biased moments")
{
	// Averaging Phi over stubs gives the mean partner degree, which by the
	// symmetry of the pairing equals the size-biased mean degree; the same
	// argument for Theta gives the size-biased mean of F*.
	const FloorParetoLaw law(2.5);
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		RandomStream stream(degcorr::splitmix64_at(401, seed));
		const DegreeSequence seq = DegreeSequence::sample_iid(law, 300, stream);
		const MultiGraph g = degcorr::pair_configuration_model(seq, stream);
		const degcorr::DiscreteDistribution fstar = degcorr::size_biased_empirical(seq);
		const MixingCurve phi = degcorr::annd(g);
		const MixingCurve theta = degcorr::annr(g);

		double avg_phi = 0.0;
		double avg_theta = 0.0;
		double mean_degree = 0.0;
		double mean_rank = 0.0;
		for (std::int64_t k = 1; k <= seq.max_degree(); ++k) {
			const double w = fstar.prob(k);
			avg_phi += w * phi.value(k);
			avg_theta += w * theta.value(k);
			mean_degree += w * static_cast<double>(k);
			mean_rank += w * fstar.cdf(k);
		}
		CHECK(avg_phi == doctest::Approx(mean_degree).epsilon(1e-10));
		CHECK(avg_theta == doctest::Approx(mean_rank).epsilon(1e-10));
	}
}

TEST_CASE("curve CSV is exact and stable")
{
	MultiGraph g(3);
	g.add_pair(0, 1);
	g.add_pair(1, 2);
	{
		std::stringstream buf;
		degcorr::write_curve_csv(buf, degcorr::annd(g));
		CHECK(buf.str() == "k,value,present\n1,2,1\n2,1,1\n");
	}
	{
		std::stringstream buf;
		degcorr::write_curve_csv(buf, degcorr::annr(g));
		CHECK(buf.str() == "k,value,present\n1,1,1\n2,0.5,1\n");
	}

	// absent degrees appear as zero-valued rows
	MultiGraph gapy(2);
	gapy.add_parallel(0, 1, 3);
	std::stringstream buf;
	degcorr::write_curve_csv(buf, degcorr::annd(gapy));
	CHECK(buf.str() == "k,value,present\n1,0,0\n2,0,0\n3,3,1\n");
}

namespace {

/// Direct-summation reference for the regularity distances, truncated far
/// enough out that the ignored tail is below the comparison tolerance.
struct BruteForce
{
	double d1_density = 0.0;
	double d1_size_biased = 0.0;
	double dtv_size_biased = 0.0;
};

BruteForce brute_force_report(const DegreeSequence& seq, const FloorParetoLaw& law,
                              std::int64_t kmax)
{
	const auto counts = seq.degree_counts();
	const double n = static_cast<double>(seq.size());
	const double ln = static_cast<double>(seq.stub_total());
	const double z = degcorr::zeta(law.gamma);

	BruteForce out;
	double cum_nodes = 0.0;
	double cum_stubs = 0.0;
	double cum_law_sb = 0.0;
	for (std::int64_t k = 1; k <= kmax; ++k) {
		const double c =
		    k <= seq.max_degree()
		        ? static_cast<double>(counts[static_cast<std::size_t>(k)])
		        : 0.0;
		cum_nodes += c / n;
		cum_stubs += static_cast<double>(k) * c / ln;
		const double fk = degcorr::pmf(law, k);
		// closed-form CDF: a running pmf sum would drift by ~1e-12 and the
		// 2e6-term tail magnifies that into 1e-6
		const double cum_law = degcorr::cdf(law, k);
		cum_law_sb += static_cast<double>(k) * fk / z;
		out.d1_density += std::abs(cum_nodes - cum_law);
		out.d1_size_biased += std::abs(cum_stubs - cum_law_sb);
		const double femp = static_cast<double>(k) * c / ln;
		out.dtv_size_biased += std::abs(femp - static_cast<double>(k) * fk / z);
	}
	out.dtv_size_biased *= 0.5;
	return out;
}

} // namespace

TEST_CASE("regularity diagnostics agree with direct summation")
{
	const FloorParetoLaw law(2.5);
	for (std::uint64_t seed = 0; seed < 6; ++seed) {
		RandomStream stream(degcorr::splitmix64_at(577, seed));
		const DegreeSequence seq = DegreeSequence::sample_iid(law, 400, stream);
		const degcorr::RegularityReport rep = degcorr::regularity_diagnostics(seq, law);
		const BruteForce ref = brute_force_report(seq, law, 2000000);

		CHECK(rep.d1_size_biased_finite);
		CHECK(rep.d1_density == doctest::Approx(ref.d1_density).epsilon(1e-6));
		// The truncated reference is a lower bound; the size-biased survival
		// beyond kmax is at most sum 1.243 k^(-1.5) <= 2.49/sqrt(kmax).
		CHECK(rep.d1_size_biased >= ref.d1_size_biased - 1e-9);
		CHECK(rep.d1_size_biased <= ref.d1_size_biased + 2.49 / std::sqrt(2e6));
		CHECK(rep.dtv_size_biased ==
		      doctest::Approx(ref.dtv_size_biased).epsilon(1e-8));
		CHECK(rep.dtv_size_biased >= 0.0);
		CHECK(rep.dtv_size_biased <= 1.0);
	}
}

TEST_CASE("size-biased d1 is flagged infinite when the mean diverges")
{
	const FloorParetoLaw law(1.5);
	RandomStream stream(9);
	const DegreeSequence seq = DegreeSequence::sample_iid(law, 200, stream);
	const degcorr::RegularityReport rep = degcorr::regularity_diagnostics(seq, law);
	CHECK_FALSE(rep.d1_size_biased_finite);
	CHECK(std::isinf(rep.d1_size_biased));
	CHECK(rep.d1_density > 0.0);
	CHECK(rep.dtv_size_biased > 0.0);
	CHECK(rep.dtv_size_biased <= 1.0);
}

TEST_CASE("empirical distances shrink with the sample size")
{
	const FloorParetoLaw law(2.5);
	auto median_d1 = [&](std::int64_t n) {
		std::vector<double> values;
		for (std::uint64_t seed = 0; seed < 11; ++seed) {
			RandomStream stream(degcorr::splitmix64_at(613 + n, seed));
			const DegreeSequence seq = DegreeSequence::sample_iid(law, n, stream);
			values.push_back(degcorr::regularity_diagnostics(seq, law).d1_density);
		}
		std::sort(values.begin(), values.end());
		return values[values.size() / 2];
	};
	const double coarse = median_d1(100);
	const double fine = median_d1(10000);
	CHECK(fine < coarse);
}

TEST_CASE("measured degrees follow the graph, not the original sequence")
{
	// After erasure the hatted degrees drive every ingredient: the curve
	// domain, f*, F*, and the joint density.
	RandomStream stream(1009);
	const DegreeSequence seq = DegreeSequence::sample_iid(FloorParetoLaw(1.5), 400, stream);
	const MultiGraph mg = degcorr::pair_configuration_model(seq, stream);
	const SimpleGraph sg = degcorr::erase(mg);

	const JointDegreeDistribution h = degcorr::joint_degree_density(sg);
	CHECK(h.stub_total() == sg.stub_total);

	std::vector<std::int64_t> counts(static_cast<std::size_t>(sg.node_count()) + 1, 0);
	std::int64_t max_hat = 0;
	for (std::int64_t d : sg.degrees) {
		if (d > 0)
			++counts[static_cast<std::size_t>(d)];
		max_hat = std::max(max_hat, d);
	}
	const MixingCurve phi = degcorr::annd(sg);
	CHECK(phi.max_degree() == max_hat);

	std::map<std::int64_t, std::uint64_t> marginal;
	h.for_each([&](std::int64_t k, std::int64_t, std::uint64_t c) { marginal[k] += c; });
	for (const auto& [k, c] : marginal)
		CHECK(c == static_cast<std::uint64_t>(k) *
		               static_cast<std::uint64_t>(counts[static_cast<std::size_t>(k)]));
}
