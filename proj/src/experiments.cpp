#include "degcorr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "degcorr/graph.hpp"

namespace degcorr {

std::string to_string(GraphModel model)
{
	switch (model) {
	case GraphModel::cm: return "cm";
	case GraphModel::ecm: return "ecm";
	case GraphModel::rcm: return "rcm";
	}
	return "?";
}

GraphModel parse_graph_model(const std::string& name)
{
	if (name == "cm")
		return GraphModel::cm;
	if (name == "ecm")
		return GraphModel::ecm;
	if (name == "rcm")
		return GraphModel::rcm;
	throw std::invalid_argument("unknown graph model '" + name +
	                            "' (expected cm, ecm, or rcm)");
}

void EnsembleConfig::validate() const
{
	FloorParetoLaw law(gamma); // checks gamma > 1
	if (n < 1)
		throw std::invalid_argument("EnsembleConfig: n must be >= 1");
	if (replicas < 1)
		throw std::invalid_argument("EnsembleConfig: replicas must be >= 1");
	if (threads < 1)
		throw std::invalid_argument("EnsembleConfig: threads must be >= 1");
	if (max_attempts < 1)
		throw std::invalid_argument("EnsembleConfig: max_attempts must be >= 1");
	if (!measure_annd && !measure_annr)
		throw std::invalid_argument("EnsembleConfig: no measures selected");
	if (model == GraphModel::rcm && gamma <= 2.0)
		throw std::invalid_argument(
		    "EnsembleConfig: the repeated model needs gamma > 2; with infinite "
		    "degree variance the simplicity probability vanishes and resampling stalls");
}

namespace {

const char* kind_name(MixingKind kind)
{
	return kind == MixingKind::annd ? "annd" : "annr";
}

struct ReplicaResult
{
	bool failed = false;
	std::optional<MixingCurve> curve_annd;
	std::optional<MixingCurve> curve_annr;
};

ReplicaResult run_replica(const EnsembleConfig& cfg, std::uint64_t seed)
{
	RandomStream stream(seed);
	const FloorParetoLaw law(cfg.gamma);
	const DegreeSequence seq = DegreeSequence::sample_iid(law, cfg.n, stream);
	ReplicaResult out;
	auto measure = [&cfg, &out](const auto& graph) {
		if (cfg.measure_annd)
			out.curve_annd = annd(graph);
		if (cfg.measure_annr)
			out.curve_annr = annr(graph);
	};
	switch (cfg.model) {
	case GraphModel::cm: {
		measure(pair_configuration_model(seq, stream));
		break;
	}
	case GraphModel::ecm: {
		measure(erase(pair_configuration_model(seq, stream)));
		break;
	}
	case GraphModel::rcm: {
		const RepeatedCmResult r = repeated_cm(seq, stream, cfg.max_attempts);
		if (!r.graph) {
			out.failed = true;
			break;
		}
		measure(*r.graph);
		break;
	}
	}
	return out;
}

struct Aggregate
{
	std::vector<double> sum;
	std::vector<std::int64_t> presence;

	void fold(const MixingCurve& curve)
	{
		const auto need = static_cast<std::size_t>(curve.max_degree());
		if (need > sum.size()) {
			sum.resize(need, 0.0);
			presence.resize(need, 0);
		}
		for (std::int64_t k = 1; k <= curve.max_degree(); ++k) {
			if (!curve.present(k))
				continue;
			sum[static_cast<std::size_t>(k - 1)] += curve.value(k);
			++presence[static_cast<std::size_t>(k - 1)];
		}
	}

	std::vector<SummaryRow> rows(int included) const
	{
		std::vector<SummaryRow> out(sum.size());
		for (std::size_t i = 0; i < sum.size(); ++i) {
			SummaryRow& row = out[i];
			row.k = static_cast<std::int64_t>(i) + 1;
			row.presence_count = presence[i];
			row.zero_filled_mean =
			    included > 0 ? sum[i] / included
			                 : std::numeric_limits<double>::quiet_NaN();
			row.corrected_mean =
			    presence[i] > 0 ? sum[i] / static_cast<double>(presence[i])
			                    : std::numeric_limits<double>::quiet_NaN();
			row.presence_fraction =
			    included > 0 ? static_cast<double>(presence[i]) / included : 0.0;
		}
		return out;
	}
};

} // namespace

EnsembleSummary run_ensemble(const EnsembleConfig& cfg)
{
	cfg.validate();
	EnsembleSummary summary;
	summary.config = cfg;
	summary.replica_seeds.resize(static_cast<std::size_t>(cfg.replicas));
	for (int r = 0; r < cfg.replicas; ++r)
		summary.replica_seeds[static_cast<std::size_t>(r)] =
		    splitmix64_at(cfg.master_seed, static_cast<std::uint64_t>(r));

	Aggregate agg_annd;
	Aggregate agg_annr;
	// Replicas run in blocks of `threads`; the fold below walks each block in
	// replica order, so the summary is independent of the thread count.
	const int block_size = cfg.threads;
	for (int base = 0; base < cfg.replicas; base += block_size) {
		const int count = std::min(block_size, cfg.replicas - base);
		std::vector<ReplicaResult> block(static_cast<std::size_t>(count));
		std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
		if (count == 1) {
			block[0] = run_replica(cfg, summary.replica_seeds[static_cast<std::size_t>(base)]);
		} else {
			std::vector<std::thread> workers;
			workers.reserve(static_cast<std::size_t>(count));
			for (int b = 0; b < count; ++b)
				workers.emplace_back([&, b] {
					try {
						block[static_cast<std::size_t>(b)] = run_replica(
						    cfg,
						    summary.replica_seeds[static_cast<std::size_t>(base + b)]);
					} catch (...) {
						errors[static_cast<std::size_t>(b)] = std::current_exception();
					}
				});
			for (auto& w : workers)
				w.join();
		}
		for (int b = 0; b < count; ++b) {
			if (errors[static_cast<std::size_t>(b)])
				std::rethrow_exception(errors[static_cast<std::size_t>(b)]);
			ReplicaResult& res = block[static_cast<std::size_t>(b)];
			if (res.failed) {
				summary.failed_replicas.push_back(base + b);
				continue;
			}
			if (res.curve_annd)
				agg_annd.fold(*res.curve_annd);
			if (res.curve_annr)
				agg_annr.fold(*res.curve_annr);
		}
	}

	const int included = summary.included_replicas();
	if (cfg.measure_annd)
		summary.measures.push_back({MixingKind::annd, agg_annd.rows(included)});
	if (cfg.measure_annr)
		summary.measures.push_back({MixingKind::annr, agg_annr.rows(included)});
	return summary;
}

void write_ensemble_csv(std::ostream& os, const EnsembleSummary& s)
{
	os << "# gamma=" << std::setprecision(17) << s.config.gamma << " n=" << s.config.n
	   << " replicas=" << s.config.replicas << " model=" << to_string(s.config.model)
	   << " master_seed=" << s.config.master_seed
	   << " failed=" << s.failed_replicas.size()
	   << " included=" << s.included_replicas() << '\n';
	os << "k,measure,zero_filled_mean,corrected_mean,presence_count,presence_fraction\n";
	for (const MeasureSummary& ms : s.measures)
		for (const SummaryRow& row : ms.rows)
			os << row.k << ',' << kind_name(ms.kind) << ',' << row.zero_filled_mean
			   << ',' << row.corrected_mean << ',' << row.presence_count << ','
			   << row.presence_fraction << '\n';
}

void write_ensemble_json(std::ostream& os, const EnsembleSummary& s)
{
	nlohmann::json j;
	// the thread count is a run-time knob, not part of the result: summaries
	// are identical for every thread count and must compare equal
	j["config"] = {
	    {"gamma", s.config.gamma},
	    {"n", s.config.n},
	    {"replicas", s.config.replicas},
	    {"model", to_string(s.config.model)},
	    {"master_seed", s.config.master_seed},
	    {"measure_annd", s.config.measure_annd},
	    {"measure_annr", s.config.measure_annr},
	    {"max_attempts", s.config.max_attempts},
	};
	j["replica_seeds"] = s.replica_seeds;
	j["failed_replicas"] = s.failed_replicas;
	j["failed_count"] = s.failed_replicas.size();
	j["included_replicas"] = s.included_replicas();
	nlohmann::json measures = nlohmann::json::array();
	for (const MeasureSummary& ms : s.measures) {
		nlohmann::json rows = nlohmann::json::array();
		for (const SummaryRow& row : ms.rows) {
			nlohmann::json r = {
			    {"k", row.k},
			    {"zero_filled_mean", row.zero_filled_mean},
			    {"presence_count", row.presence_count},
			    {"presence_fraction", row.presence_fraction},
			};
			if (row.presence_count > 0)
				r["corrected_mean"] = row.corrected_mean;
			else
				r["corrected_mean"] = nullptr;
			rows.push_back(std::move(r));
		}
		measures.push_back({{"kind", kind_name(ms.kind)}, {"rows", std::move(rows)}});
	}
	j["measures"] = std::move(measures);
	os << j.dump(2) << '\n';
}

namespace {

// ceil(n^a) with a guard against pow() landing a hair above an exact integer.
std::int64_t presence_threshold(std::int64_t n, double a)
{
	const double v = std::pow(static_cast<double>(n), a);
	return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(v - 1e-9)));
}

} // namespace

std::vector<PresenceRow> presence_experiment(const FloorParetoLaw& law,
                                             const std::vector<std::int64_t>& ns,
                                             const std::vector<double>& as, int replicas,
                                             std::uint64_t master_seed)
{
	if (replicas < 1)
		throw std::invalid_argument("presence_experiment: replicas must be >= 1");
	if (ns.empty() || as.empty())
		throw std::invalid_argument("presence_experiment: empty n or a list");
	for (double a : as)
		if (!(a > 0.0 && a < 1.0))
			throw std::invalid_argument("presence_experiment: a must be in (0,1)");
	for (std::int64_t n : ns)
		if (n < 1)
			throw std::invalid_argument("presence_experiment: n must be >= 1");

	std::vector<PresenceRow> rows;
	rows.reserve(ns.size() * as.size());
	for (std::size_t ni = 0; ni < ns.size(); ++ni) {
		const std::int64_t n = ns[ni];
		std::vector<std::int64_t> thresholds(as.size());
		std::int64_t max_k = 1;
		for (std::size_t ai = 0; ai < as.size(); ++ai) {
			thresholds[ai] = presence_threshold(n, as[ai]);
			max_k = std::max(max_k, thresholds[ai]);
		}
		std::vector<std::int64_t> all_count(as.size(), 0);
		std::vector<std::int64_t> k_count(as.size(), 0);
		const std::uint64_t sub_seed = splitmix64_at(master_seed, ni);
		std::vector<char> seen(static_cast<std::size_t>(max_k) + 1, 0);
		for (int r = 0; r < replicas; ++r) {
			RandomStream stream(splitmix64_at(sub_seed, static_cast<std::uint64_t>(r)));
			const DegreeSequence seq = DegreeSequence::sample_iid(law, n, stream);
			std::fill(seen.begin(), seen.end(), 0);
			for (std::int64_t d : seq.degrees())
				if (d <= max_k)
					seen[static_cast<std::size_t>(d)] = 1;
			std::int64_t first_missing = max_k + 1;
			for (std::int64_t k = 1; k <= max_k; ++k)
				if (!seen[static_cast<std::size_t>(k)]) {
					first_missing = k;
					break;
				}
			for (std::size_t ai = 0; ai < as.size(); ++ai) {
				if (first_missing > thresholds[ai])
					++all_count[ai];
				if (seen[static_cast<std::size_t>(thresholds[ai])])
					++k_count[ai];
			}
		}
		for (std::size_t ai = 0; ai < as.size(); ++ai) {
			PresenceRow row;
			row.n = n;
			row.a = as[ai];
			row.k_threshold = thresholds[ai];
			row.all_present_fraction =
			    static_cast<double>(all_count[ai]) / replicas;
			row.k_present_fraction = static_cast<double>(k_count[ai]) / replicas;
			const double nd = static_cast<double>(n);
			row.k_present_predicted =
			    -std::expm1(nd * std::log1p(-pmf(law, thresholds[ai])));
			double miss_sum = 0.0;
			for (std::int64_t k = 1; k <= thresholds[ai]; ++k)
				miss_sum += std::exp(nd * std::log1p(-pmf(law, k)));
			row.all_present_lower_bound = std::max(0.0, 1.0 - miss_sum);
			rows.push_back(row);
		}
	}
	return rows;
}

namespace {

// Hill estimator of the tail index over the top fraction of the sample.
double hill_tail_index(std::vector<double> sample, double top_fraction)
{
	if (sample.size() < 2)
		return std::numeric_limits<double>::quiet_NaN();
	std::sort(sample.begin(), sample.end(), std::greater<double>());
	const auto m = std::max<std::size_t>(
	    1, static_cast<std::size_t>(std::floor(top_fraction * sample.size())));
	if (m + 1 > sample.size())
		return std::numeric_limits<double>::quiet_NaN();
	double log_sum = 0.0;
	for (std::size_t i = 0; i < m; ++i)
		log_sum += std::log(sample[i] / sample[m]);
	return log_sum > 0.0 ? static_cast<double>(m) / log_sum
	                     : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

CltResult clt_experiment(const FloorParetoLaw& law, std::int64_t n, int replicas,
                         std::int64_t k, std::uint64_t master_seed)
{
	if (!(law.gamma > 1.0 && law.gamma < 2.0))
		throw std::invalid_argument("clt_experiment: requires 1 < gamma < 2");
	if (n < 1 || replicas < 1 || k < 1)
		throw std::invalid_argument("clt_experiment: n, replicas, k must be >= 1");
	const double presence_bound =
	    0.5 * std::pow(static_cast<double>(n), 1.0 / (law.gamma + 1.0));
	if (static_cast<double>(k) > presence_bound)
		throw std::invalid_argument(
		    "clt_experiment: k too large for near-certain presence (needs k <= " +
		    std::to_string(presence_bound) + ")");

	CltResult result;
	result.gamma = law.gamma;
	result.n = n;
	result.k = k;
	result.replicas = replicas;
	result.excluded = 0;
	result.theoretical_index = law.gamma / 2.0;
	const double scale = std::pow(static_cast<double>(n), 2.0 / law.gamma - 1.0);
	result.phi.reserve(static_cast<std::size_t>(replicas));
	result.phi_rescaled.reserve(static_cast<std::size_t>(replicas));
	for (int r = 0; r < replicas; ++r) {
		RandomStream stream(splitmix64_at(master_seed, static_cast<std::uint64_t>(r)));
		const DegreeSequence seq = DegreeSequence::sample_iid(law, n, stream);
		const MultiGraph mg = pair_configuration_model(seq, stream);
		const MixingCurve curve = annd(mg);
		if (!curve.present(k)) {
			++result.excluded;
			continue;
		}
		result.phi.push_back(curve.value(k));
		result.phi_rescaled.push_back(curve.value(k) / scale);
	}
	result.hill_index = hill_tail_index(result.phi_rescaled, 0.1);
	return result;
}

double GapResult::annd_fraction_exceeding() const
{
	std::int64_t over = 0;
	std::int64_t total = 0;
	for (const GapReplica& r : rows) {
		if (!r.present_both)
			continue;
		++total;
		if (std::abs(r.phi_ecm - r.phi_cm) > threshold)
			++over;
	}
	return total > 0 ? static_cast<double>(over) / static_cast<double>(total) : 0.0;
}

double GapResult::annr_fraction_exceeding() const
{
	std::int64_t over = 0;
	std::int64_t total = 0;
	for (const GapReplica& r : rows) {
		if (!r.present_both)
			continue;
		++total;
		if (std::abs(r.theta_ecm - r.theta_cm) > threshold)
			++over;
	}
	return total > 0 ? static_cast<double>(over) / static_cast<double>(total) : 0.0;
}

double GapResult::median_annd_gap() const
{
	std::vector<double> gaps;
	for (const GapReplica& r : rows)
		if (r.present_both)
			gaps.push_back(std::abs(r.phi_ecm - r.phi_cm));
	return median(std::move(gaps));
}

double GapResult::median_phi_cm() const
{
	std::vector<double> values;
	for (const GapReplica& r : rows)
		if (r.present_both)
			values.push_back(r.phi_cm);
	return median(std::move(values));
}

GapResult ecm_cm_gap(const FloorParetoLaw& law, std::int64_t n, int replicas,
                     std::int64_t k, std::uint64_t master_seed)
{
	if (n < 1 || replicas < 1 || k < 1)
		throw std::invalid_argument("ecm_cm_gap: n, replicas, k must be >= 1");
	GapResult result;
	result.gamma = law.gamma;
	result.n = n;
	result.k = k;
	result.excluded = 0;
	const double a = (law.gamma - 1.0) * (law.gamma - 1.0) / (2.0 * law.gamma);
	const double exponent = law.gamma < 2.0 ? 2.0 / law.gamma - 1.0 - a : -a;
	result.threshold = std::pow(static_cast<double>(n), exponent);
	result.rows.reserve(static_cast<std::size_t>(replicas));
	for (int r = 0; r < replicas; ++r) {
		RandomStream stream(splitmix64_at(master_seed, static_cast<std::uint64_t>(r)));
		const DegreeSequence seq = DegreeSequence::sample_iid(law, n, stream);
		const MultiGraph mg = pair_configuration_model(seq, stream);
		const SimpleGraph sg = erase(mg);
		const MixingCurve phi_cm = annd(mg);
		const MixingCurve phi_ecm = annd(sg);
		const MixingCurve theta_cm = annr(mg);
		const MixingCurve theta_ecm = annr(sg);
		GapReplica row;
		row.present_both = phi_cm.present(k) && phi_ecm.present(k);
		row.phi_cm = phi_cm.value(k);
		row.phi_ecm = phi_ecm.value(k);
		row.theta_cm = theta_cm.value(k);
		row.theta_ecm = theta_ecm.value(k);
		if (!row.present_both)
			++result.excluded;
		result.rows.push_back(row);
	}
	return result;
}

double median(std::vector<double> values)
{
	if (values.empty())
		throw std::invalid_argument("median: empty sample");
	const std::size_t mid = values.size() / 2;
	std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
	                 values.end());
	const double upper = values[mid];
	if (values.size() % 2 == 1)
		return upper;
	const double lower =
	    *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
	return 0.5 * (lower + upper);
}

} // namespace degcorr
