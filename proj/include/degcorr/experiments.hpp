#ifndef DEGCORR_EXPERIMENTS_HPP
#define DEGCORR_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "degcorr/distributions.hpp"
#include "degcorr/measures.hpp"

namespace degcorr {

enum class GraphModel { cm, ecm, rcm };

std::string to_string(GraphModel model);
GraphModel parse_graph_model(const std::string& name);

struct EnsembleConfig
{
	double gamma = 2.5;
	std::int64_t n = 1000;
	int replicas = 1;
	GraphModel model = GraphModel::cm;
	std::uint64_t master_seed = 1;
	bool measure_annd = true;
	bool measure_annr = true;
	int max_attempts = 1000; // repeated-model pairing attempts per replica
	int threads = 1;

	void validate() const; // throws std::invalid_argument
};

struct SummaryRow
{
	std::int64_t k;
	double zero_filled_mean;  // absent-degree replicas contribute 0
	double corrected_mean;    // averaged over replicas where k is present; NaN if none
	std::int64_t presence_count;
	double presence_fraction;
};

struct MeasureSummary
{
	MixingKind kind;
	std::vector<SummaryRow> rows; // k = 1..largest degree seen in any replica
};

struct EnsembleSummary
{
	EnsembleConfig config;
	std::vector<std::uint64_t> replica_seeds;
	std::vector<int> failed_replicas; // replica indices that exhausted max_attempts
	std::vector<MeasureSummary> measures;

	int included_replicas() const
	{
		return config.replicas - static_cast<int>(failed_replicas.size());
	}
};

/// Generate R replicas on independently derived streams (seed r =
/// splitmix64_at(master_seed, r)), measure each, and fold per-k sums in
/// replica order. Output is identical for any thread count.
EnsembleSummary run_ensemble(const EnsembleConfig& cfg);

void write_ensemble_csv(std::ostream& os, const EnsembleSummary& s);
void write_ensemble_json(std::ostream& os, const EnsembleSummary& s);

/// Presence of small degrees: for each (n, a) pair, the fraction of replicas
/// whose degree sequence contains all of {1..K} and the fraction containing K
/// itself, K = ceil(n^a). Closed-form references: exact single-degree
/// presence probability and the union lower bound for all-presence.
struct PresenceRow
{
	std::int64_t n;
	double a;
	std::int64_t k_threshold;        // ceil(n^a)
	double all_present_fraction;
	double k_present_fraction;
	double k_present_predicted;      // 1 - (1 - f(K))^n
	double all_present_lower_bound;  // 1 - sum_{k<=K} (1 - f(k))^n, clamped at 0
};

std::vector<PresenceRow> presence_experiment(const FloorParetoLaw& law,
                                             const std::vector<std::int64_t>& ns,
                                             const std::vector<double>& as, int replicas,
                                             std::uint64_t master_seed);

/// Stable-scaling probe for 1 < gamma < 2: per replica Phi_n(k) on a fresh CM
/// graph, rescaled by n^(2/gamma - 1), plus a Hill tail-index estimate over
/// the top 10% order statistics (theoretical index gamma/2).
struct CltResult
{
	double gamma;
	std::int64_t n;
	std::int64_t k;
	int replicas;
	int excluded; // replicas where degree k did not occur
	std::vector<double> phi;          // raw Phi_n(k), included replicas only
	std::vector<double> phi_rescaled; // phi / n^(2/gamma - 1)
	double hill_index;
	double theoretical_index; // gamma / 2
};

CltResult clt_experiment(const FloorParetoLaw& law, std::int64_t n, int replicas,
                         std::int64_t k, std::uint64_t master_seed);

/// Per-replica CM-vs-ECM discrepancy at degree k; the erased graph is derived
/// from the identical multigraph, so the comparison is pairwise.
struct GapReplica
{
	double phi_cm;
	double phi_ecm;
	double theta_cm;
	double theta_ecm;
	bool present_both; // k present in both the original and the erased degrees
};

struct GapResult
{
	double gamma;
	std::int64_t n;
	std::int64_t k;
	double threshold;              // n^(2/gamma-1-a) if gamma<2 else n^(-a), a=(gamma-1)^2/(2 gamma)
	std::vector<GapReplica> rows;
	int excluded;                  // rows with present_both == false

	double annd_fraction_exceeding() const;
	double annr_fraction_exceeding() const;
	double median_annd_gap() const;
	double median_phi_cm() const;
};

GapResult ecm_cm_gap(const FloorParetoLaw& law, std::int64_t n, int replicas,
                     std::int64_t k, std::uint64_t master_seed);

/// Median of a sample (empty input throws std::invalid_argument).
double median(std::vector<double> values);

} // namespace degcorr

#endif
