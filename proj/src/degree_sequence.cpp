#include "degcorr/degree_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace degcorr {

DegreeSequence::DegreeSequence(std::vector<std::int64_t> degrees)
    : degrees_(std::move(degrees)), stub_total_(0), max_degree_(0)
{
	if (degrees_.empty())
		throw std::invalid_argument("DegreeSequence: empty sequence");
	for (std::int64_t d : degrees_) {
		if (d < 1)
			throw std::invalid_argument("DegreeSequence: entry " + std::to_string(d) +
			                            " below 1");
		stub_total_ += static_cast<std::uint64_t>(d);
		max_degree_ = std::max(max_degree_, d);
	}
	if (stub_total_ % 2 != 0)
		throw std::invalid_argument("DegreeSequence: odd stub total " +
		                            std::to_string(stub_total_));
}

DegreeSequence DegreeSequence::sample_iid(const FloorParetoLaw& law, std::int64_t n,
                                          RandomStream& stream)
{
	if (n < 1)
		throw std::invalid_argument("sample_iid: n must be >= 1");
	const double inv_gamma = 1.0 / law.gamma;
	std::vector<std::int64_t> d(static_cast<std::size_t>(n));
	std::uint64_t total = 0;
	for (std::int64_t i = 0; i < n; ++i) {
		const double u = stream.next_unit_open_closed();
		const auto v = static_cast<std::int64_t>(std::floor(std::pow(u, -inv_gamma)));
		d[static_cast<std::size_t>(i)] = v;
		total += static_cast<std::uint64_t>(v);
	}
	if (total % 2 != 0)
		++d.back();
	return DegreeSequence(std::move(d));
}

std::vector<std::int64_t> DegreeSequence::degree_counts() const
{
	std::vector<std::int64_t> counts(static_cast<std::size_t>(max_degree_) + 1, 0);
	for (std::int64_t d : degrees_)
		++counts[static_cast<std::size_t>(d)];
	return counts;
}

DiscreteDistribution empirical_density(const DegreeSequence& seq)
{
	const auto counts = seq.degree_counts();
	const double n = static_cast<double>(seq.size());
	std::vector<double> probs(counts.size() - 1);
	for (std::size_t k = 1; k < counts.size(); ++k)
		probs[k - 1] = static_cast<double>(counts[k]) / n;
	return DiscreteDistribution(1, std::move(probs));
}

DiscreteDistribution size_biased_empirical(const DegreeSequence& seq)
{
	const auto counts = seq.degree_counts();
	const double ln = static_cast<double>(seq.stub_total());
	std::vector<double> probs(counts.size() - 1);
	for (std::size_t k = 1; k < counts.size(); ++k)
		probs[k - 1] =
		    static_cast<double>(static_cast<std::int64_t>(k) * counts[k]) / ln;
	return DiscreteDistribution(1, std::move(probs));
}

void write_degree_sequence(std::ostream& os, const DegreeSequence& seq, double gamma,
                           std::uint64_t seed)
{
	os << "# degcorr-degrees n=" << seq.size() << " gamma=" << std::setprecision(17)
	   << gamma << " seed=" << seed << '\n';
	for (std::int64_t d : seq.degrees())
		os << d << '\n';
}

DegreeSequence read_degree_sequence(std::istream& is, DegreeSequenceHeader* header)
{
	std::vector<std::int64_t> degrees;
	std::string line;
	std::int64_t line_no = 0;
	DegreeSequenceHeader hdr;
	while (std::getline(is, line)) {
		++line_no;
		if (line.empty())
			continue;
		if (line[0] == '#') {
			std::istringstream ls(line);
			std::string tok;
			while (ls >> tok) {
				if (tok.rfind("n=", 0) == 0) {
					hdr.n = std::stoll(tok.substr(2));
					hdr.present = true;
				} else if (tok.rfind("gamma=", 0) == 0) {
					hdr.gamma = std::stod(tok.substr(6));
				} else if (tok.rfind("seed=", 0) == 0) {
					hdr.seed = std::stoull(tok.substr(5));
				}
			}
			continue;
		}
		std::size_t consumed = 0;
		std::int64_t value = 0;
		try {
			value = std::stoll(line, &consumed);
		} catch (const std::exception&) {
			throw std::runtime_error("degree file line " + std::to_string(line_no) +
			                         ": not an integer: '" + line + "'");
		}
		while (consumed < line.size() &&
		       (line[consumed] == ' ' || line[consumed] == '\t' || line[consumed] == '\r'))
			++consumed;
		if (consumed != line.size())
			throw std::runtime_error("degree file line " + std::to_string(line_no) +
			                         ": trailing characters: '" + line + "'");
		degrees.push_back(value);
	}
	if (hdr.present && hdr.n != static_cast<std::int64_t>(degrees.size()))
		throw std::runtime_error("degree file: header says n=" + std::to_string(hdr.n) +
		                         " but found " + std::to_string(degrees.size()) +
		                         " entries");
	if (header)
		*header = hdr;
	return DegreeSequence(std::move(degrees));
}

} // namespace degcorr
