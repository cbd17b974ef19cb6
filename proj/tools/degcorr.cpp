// Command-line front end: graph generation, curve measurement, limit tables,
// and the ensemble/presence/clt/gap experiments. Exit codes: 0 success,
// 1 usage or validation error, 2 runtime failure.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "degcorr/degree_sequence.hpp"
#include "degcorr/distributions.hpp"
#include "degcorr/experiments.hpp"
#include "degcorr/graph.hpp"
#include "degcorr/measures.hpp"

namespace {

std::uint64_t draw_entropy_seed()
{
	std::random_device rd;
	const std::uint64_t seed =
	    (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
	std::cerr << "note: no --seed given, drew seed " << seed << '\n';
	return seed;
}

std::ofstream open_output(const std::string& path)
{
	std::ofstream os(path);
	if (!os)
		throw std::runtime_error("cannot open output file: " + path);
	return os;
}

std::ifstream open_input(const std::string& path)
{
	std::ifstream is(path);
	if (!is)
		throw std::runtime_error("cannot open input file: " + path);
	return is;
}

void cmd_limits(const std::vector<double>& gammas, double tol, std::uint64_t cap)
{
	std::cout << "gamma  nu2/nu1    annr_limit\n";
	for (double g : gammas) {
		const degcorr::FloorParetoLaw law(g);
		const degcorr::Moments m = degcorr::moments(law);
		std::cout << std::setw(5) << std::setprecision(6) << std::defaultfloat << g
		          << "  ";
		if (m.nu2_finite)
			std::cout << std::setw(9) << std::fixed << std::setprecision(6) << m.ratio();
		else
			std::cout << std::setw(9) << "-";
		bool capped = false;
		degcorr::AnnrLimit limit;
		try {
			limit = degcorr::limit_annr(law, tol, cap);
		} catch (const degcorr::PrecisionUnreachable& e) {
			limit = e.best;
			capped = true;
		}
		std::cout << "  " << std::fixed << std::setprecision(6) << limit.value << " (+/-"
		          << std::scientific << std::setprecision(1) << limit.error_bound << ")"
		          << (capped ? " *tolerance unreachable at term cap*" : "") << '\n'
		          << std::defaultfloat;
	}
}

struct GenerateArgs
{
	std::int64_t n = 0;
	double gamma = 0.0;
	std::uint64_t seed = 0;
	std::string model = "cm";
	std::string degrees_in;
	std::string degrees_out;
	std::string graph_out;
	int max_attempts = 1000;
	bool have_n = false;
	bool have_gamma = false;
};

void cmd_generate(const GenerateArgs& args)
{
	if (args.degrees_out.empty() && args.graph_out.empty())
		throw std::invalid_argument(
		    "generate: need --degrees-out and/or --graph-out");
	degcorr::RandomStream stream(args.seed);
	double gamma_note = args.gamma;
	std::optional<degcorr::DegreeSequence> seq;
	if (!args.degrees_in.empty()) {
		auto is = open_input(args.degrees_in);
		degcorr::DegreeSequenceHeader hdr;
		seq.emplace(degcorr::read_degree_sequence(is, &hdr));
		if (!args.have_gamma && hdr.present)
			gamma_note = hdr.gamma;
	} else {
		if (!args.have_n || !args.have_gamma)
			throw std::invalid_argument(
			    "generate: need --n and --gamma (or --degrees-in)");
		const degcorr::FloorParetoLaw law(args.gamma);
		seq.emplace(degcorr::DegreeSequence::sample_iid(law, args.n, stream));
	}
	if (!args.degrees_out.empty()) {
		auto os = open_output(args.degrees_out);
		degcorr::write_degree_sequence(os, *seq, gamma_note, args.seed);
		std::cout << "wrote " << args.degrees_out << " (n=" << seq->size() << ")\n";
	}
	if (args.graph_out.empty())
		return;
	const degcorr::GraphModel model = degcorr::parse_graph_model(args.model);
	auto os = open_output(args.graph_out);
	switch (model) {
	case degcorr::GraphModel::cm: {
		const degcorr::MultiGraph mg = degcorr::pair_configuration_model(*seq, stream);
		degcorr::write_edge_list(os, mg, args.seed);
		break;
	}
	case degcorr::GraphModel::ecm: {
		const degcorr::SimpleGraph sg =
		    degcorr::erase(degcorr::pair_configuration_model(*seq, stream));
		degcorr::write_edge_list(os, sg, args.seed);
		break;
	}
	case degcorr::GraphModel::rcm: {
		const degcorr::RepeatedCmResult r =
		    degcorr::repeated_cm(*seq, stream, args.max_attempts);
		if (!r.graph)
			throw std::runtime_error("generate: no simple pairing within " +
			                         std::to_string(args.max_attempts) + " attempts");
		degcorr::write_edge_list(os, *r.graph, args.seed);
		break;
	}
	}
	std::cout << "wrote " << args.graph_out << " (model=" << args.model << ")\n";
}

void cmd_measure(const std::string& in, const std::string& out, const std::string& which)
{
	auto is = open_input(in);
	const degcorr::MultiGraph mg = degcorr::read_edge_list(is);
	mg.validate();
	std::cout << "# measured " << in << ": n=" << mg.node_count()
	          << " L=" << mg.stub_total() << " measure=" << which << '\n';
	if (which == "annd" || which == "annr") {
		auto os = open_output(out);
		degcorr::write_curve_csv(os, which == "annd" ? degcorr::annd(mg)
		                                             : degcorr::annr(mg));
		std::cout << "wrote " << out << '\n';
		return;
	}
	if (which != "both")
		throw std::invalid_argument("measure: --measure must be annd, annr, or both");
	const std::string annd_path = out + ".annd.csv";
	const std::string annr_path = out + ".annr.csv";
	{
		auto os = open_output(annd_path);
		degcorr::write_curve_csv(os, degcorr::annd(mg));
	}
	{
		auto os = open_output(annr_path);
		degcorr::write_curve_csv(os, degcorr::annr(mg));
	}
	std::cout << "wrote " << annd_path << " and " << annr_path << '\n';
}

void cmd_ensemble(const degcorr::EnsembleConfig& cfg, const std::string& csv_path,
                  const std::string& json_path)
{
	const degcorr::EnsembleSummary summary = degcorr::run_ensemble(cfg);
	std::cerr << "ensemble: gamma=" << cfg.gamma << " n=" << cfg.n
	          << " replicas=" << cfg.replicas << " model=" << to_string(cfg.model)
	          << " master_seed=" << cfg.master_seed
	          << " failed=" << summary.failed_replicas.size() << '\n';
	if (!csv_path.empty()) {
		auto os = open_output(csv_path);
		degcorr::write_ensemble_csv(os, summary);
		std::cout << "wrote " << csv_path << '\n';
	}
	if (!json_path.empty()) {
		auto os = open_output(json_path);
		degcorr::write_ensemble_json(os, summary);
		std::cout << "wrote " << json_path << '\n';
	}
	if (csv_path.empty() && json_path.empty())
		degcorr::write_ensemble_csv(std::cout, summary);
}

void cmd_presence(double gamma, const std::vector<std::int64_t>& ns,
                  const std::vector<double>& as, int replicas, std::uint64_t seed,
                  const std::string& out)
{
	const degcorr::FloorParetoLaw law(gamma);
	const auto rows = degcorr::presence_experiment(law, ns, as, replicas, seed);
	std::ofstream file;
	if (!out.empty())
		file = open_output(out);
	std::ostream& os = out.empty() ? std::cout : file;
	os << "# gamma=" << std::setprecision(17) << gamma << " replicas=" << replicas
	   << " master_seed=" << seed << '\n';
	os << "n,a,k_threshold,all_present_fraction,k_present_fraction,"
	      "k_present_predicted,all_present_lower_bound\n";
	for (const auto& r : rows)
		os << r.n << ',' << r.a << ',' << r.k_threshold << ',' << r.all_present_fraction
		   << ',' << r.k_present_fraction << ',' << r.k_present_predicted << ','
		   << r.all_present_lower_bound << '\n';
	if (!out.empty())
		std::cout << "wrote " << out << '\n';
}

void cmd_clt(double gamma, std::int64_t n, std::int64_t k, int replicas,
             std::uint64_t seed, const std::string& out)
{
	const degcorr::FloorParetoLaw law(gamma);
	const degcorr::CltResult res = degcorr::clt_experiment(law, n, replicas, k, seed);
	if (!out.empty()) {
		auto os = open_output(out);
		os << "# gamma=" << std::setprecision(17) << gamma << " n=" << n << " k=" << k
		   << " replicas=" << replicas << " master_seed=" << seed << '\n';
		os << "phi,phi_rescaled\n" << std::setprecision(17);
		for (std::size_t i = 0; i < res.phi.size(); ++i)
			os << res.phi[i] << ',' << res.phi_rescaled[i] << '\n';
		std::cout << "wrote " << out << '\n';
	}
	std::cout << "clt: gamma=" << gamma << " n=" << n << " k=" << k
	          << " included=" << res.phi.size() << " excluded=" << res.excluded
	          << " median_phi=" << degcorr::median(res.phi)
	          << " median_rescaled=" << degcorr::median(res.phi_rescaled)
	          << " hill_index=" << res.hill_index
	          << " theoretical_index=" << res.theoretical_index << '\n';
}

void cmd_gap(double gamma, std::int64_t n, std::int64_t k, int replicas,
             std::uint64_t seed, const std::string& out)
{
	const degcorr::FloorParetoLaw law(gamma);
	const degcorr::GapResult res = degcorr::ecm_cm_gap(law, n, replicas, k, seed);
	if (!out.empty()) {
		auto os = open_output(out);
		os << "# gamma=" << std::setprecision(17) << gamma << " n=" << n << " k=" << k
		   << " replicas=" << replicas << " master_seed=" << seed
		   << " threshold=" << res.threshold << '\n';
		os << "phi_cm,phi_ecm,theta_cm,theta_ecm,present_both\n"
		   << std::setprecision(17);
		for (const auto& r : res.rows)
			os << r.phi_cm << ',' << r.phi_ecm << ',' << r.theta_cm << ','
			   << r.theta_ecm << ',' << (r.present_both ? 1 : 0) << '\n';
		std::cout << "wrote " << out << '\n';
	}
	std::cout << "gap: gamma=" << gamma << " n=" << n << " k=" << k
	          << " threshold=" << res.threshold
	          << " annd_fraction_exceeding=" << res.annd_fraction_exceeding()
	          << " annr_fraction_exceeding=" << res.annr_fraction_exceeding()
	          << " median_annd_gap=" << res.median_annd_gap()
	          << " median_phi_cm=" << res.median_phi_cm()
	          << " excluded=" << res.excluded << '\n';
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"configuration-model degree correlation toolkit"};
	app.require_subcommand(1);
	app.set_config("--config", "", "read options from an INI/TOML file");

	// limits
	auto* limits = app.add_subcommand("limits", "theoretical ANND/ANNR limits per gamma");
	std::vector<double> gammas{1.5, 1.8, 2.0, 2.2, 2.5};
	double tol = 1e-3;
	std::uint64_t cap = 100'000'000ULL;
	limits->add_option("--gamma", gammas, "tail exponents (repeatable)")
	    ->delimiter(',');
	limits->add_option("--tol", tol, "absolute tolerance for the ANNR limit series");
	limits->add_option("--cap", cap, "series term cap");

	// generate
	auto* generate = app.add_subcommand("generate", "sample a degree sequence and graph");
	GenerateArgs gen;
	auto* gen_n = generate->add_option("--n", gen.n, "number of nodes");
	auto* gen_gamma = generate->add_option("--gamma", gen.gamma, "tail exponent");
	auto* gen_seed = generate->add_option("--seed", gen.seed, "master seed");
	generate->add_option("--model", gen.model, "cm|ecm|rcm")->default_val("cm");
	generate->add_option("--degrees-in", gen.degrees_in,
	                     "read the degree sequence from a file instead of sampling");
	generate->add_option("--degrees-out", gen.degrees_out, "degree sequence output path");
	generate->add_option("--graph-out", gen.graph_out, "edge list output path");
	generate->add_option("--max-attempts", gen.max_attempts,
	                     "pairing attempts for model rcm");

	// measure
	auto* measure = app.add_subcommand("measure", "ANND/ANNR curves of an edge list");
	std::string measure_in;
	std::string measure_out;
	std::string measure_which = "both";
	measure->add_option("--in", measure_in, "edge list input")->required();
	measure->add_option("--out", measure_out,
	                    "output CSV (suffixed .annd.csv/.annr.csv for --measure both)")
	    ->required();
	measure->add_option("--measure", measure_which, "annd|annr|both");

	// ensemble
	auto* ensemble = app.add_subcommand("ensemble", "replica ensemble with both averaging conventions");
	degcorr::EnsembleConfig cfg;
	std::string model_name = "cm";
	std::string csv_path;
	std::string json_path;
	bool no_annd = false;
	bool no_annr = false;
	ensemble->add_option("--gamma", cfg.gamma, "tail exponent")->required();
	ensemble->add_option("--n", cfg.n, "nodes per replica")->required();
	ensemble->add_option("--replicas", cfg.replicas, "replica count")->required();
	ensemble->add_option("--model", model_name, "cm|ecm|rcm");
	auto* ens_seed = ensemble->add_option("--seed", cfg.master_seed, "master seed");
	ensemble->add_option("--threads", cfg.threads, "worker threads");
	ensemble->add_option("--max-attempts", cfg.max_attempts, "rcm pairing attempts");
	ensemble->add_flag("--no-annd", no_annd, "skip the ANND measure");
	ensemble->add_flag("--no-annr", no_annr, "skip the ANNR measure");
	ensemble->add_option("--csv", csv_path, "summary CSV path");
	ensemble->add_option("--json", json_path, "summary JSON path");

	// presence
	auto* presence = app.add_subcommand("presence", "small-degree presence fractions");
	double p_gamma = 2.5;
	std::vector<std::int64_t> p_ns;
	std::vector<double> p_as;
	int p_replicas = 100;
	std::uint64_t p_seed = 0;
	std::string p_out;
	presence->add_option("--gamma", p_gamma, "tail exponent")->required();
	presence->add_option("--n", p_ns, "sample sizes (repeatable)")
	    ->required()
	    ->delimiter(',');
	presence->add_option("--a", p_as, "thresholds K=ceil(n^a) (repeatable)")
	    ->required()
	    ->delimiter(',');
	presence->add_option("--replicas", p_replicas, "replica count");
	auto* p_seed_opt = presence->add_option("--seed", p_seed, "master seed");
	presence->add_option("--out", p_out, "CSV output path (default stdout)");

	// clt
	auto* clt = app.add_subcommand("clt", "rescaled ANND sample and Hill index (1<gamma<2)");
	double c_gamma = 1.5;
	std::int64_t c_n = 10000;
	std::int64_t c_k = 1;
	int c_replicas = 100;
	std::uint64_t c_seed = 0;
	std::string c_out;
	clt->add_option("--gamma", c_gamma, "tail exponent in (1,2)")->required();
	clt->add_option("--n", c_n, "nodes per replica")->required();
	clt->add_option("--k", c_k, "degree at which ANND is tracked");
	clt->add_option("--replicas", c_replicas, "replica count");
	auto* c_seed_opt = clt->add_option("--seed", c_seed, "master seed");
	clt->add_option("--out", c_out, "per-replica CSV output path");

	// gap
	auto* gap = app.add_subcommand("gap", "CM-vs-ECM discrepancy at a degree");
	double g_gamma = 2.5;
	std::int64_t g_n = 10000;
	std::int64_t g_k = 1;
	int g_replicas = 50;
	std::uint64_t g_seed = 0;
	std::string g_out;
	gap->add_option("--gamma", g_gamma, "tail exponent")->required();
	gap->add_option("--n", g_n, "nodes per replica")->required();
	gap->add_option("--k", g_k, "degree at which the gap is tracked");
	gap->add_option("--replicas", g_replicas, "replica count");
	auto* g_seed_opt = gap->add_option("--seed", g_seed, "master seed");
	gap->add_option("--out", g_out, "per-replica CSV output path");

	try {
		app.parse(argc, argv);

		if (limits->parsed()) {
			cmd_limits(gammas, tol, cap);
		} else if (generate->parsed()) {
			gen.have_n = gen_n->count() > 0;
			gen.have_gamma = gen_gamma->count() > 0;
			if (gen_seed->count() == 0)
				gen.seed = draw_entropy_seed();
			cmd_generate(gen);
		} else if (measure->parsed()) {
			cmd_measure(measure_in, measure_out, measure_which);
		} else if (ensemble->parsed()) {
			cfg.model = degcorr::parse_graph_model(model_name);
			cfg.measure_annd = !no_annd;
			cfg.measure_annr = !no_annr;
			if (ens_seed->count() == 0)
				cfg.master_seed = draw_entropy_seed();
			cmd_ensemble(cfg, csv_path, json_path);
		} else if (presence->parsed()) {
			if (p_seed_opt->count() == 0)
				p_seed = draw_entropy_seed();
			cmd_presence(p_gamma, p_ns, p_as, p_replicas, p_seed, p_out);
		} else if (clt->parsed()) {
			if (c_seed_opt->count() == 0)
				c_seed = draw_entropy_seed();
			cmd_clt(c_gamma, c_n, c_k, c_replicas, c_seed, c_out);
		} else if (gap->parsed()) {
			if (g_seed_opt->count() == 0)
				g_seed = draw_entropy_seed();
			cmd_gap(g_gamma, g_n, g_k, g_replicas, g_seed, g_out);
		}
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? 0 : 1;
	} catch (const std::invalid_argument& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	} catch (const std::domain_error& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}
	return 0;
}
