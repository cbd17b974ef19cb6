#include "degcorr/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace degcorr {

MultiGraph::MultiGraph(std::int64_t n)
{
	if (n < 1)
		throw std::invalid_argument("MultiGraph: node count must be >= 1");
	if (n > static_cast<std::int64_t>(1) << 32)
		throw std::invalid_argument("MultiGraph: node count exceeds id width");
	degrees_.assign(static_cast<std::size_t>(n), 0);
}

std::uint64_t MultiGraph::multiplicity(NodeId u, NodeId v) const
{
	const auto it = entries_.find(pack(u, v));
	return it == entries_.end() ? 0 : it->second;
}

void MultiGraph::add_pair(NodeId u, NodeId v)
{
	const std::uint64_t add = (u == v) ? 2 : 1;
	entries_[pack(u, v)] += add;
	degrees_[u] += 1;
	degrees_[v] += 1;
	stub_total_ += 2;
}

void MultiGraph::add_parallel(NodeId u, NodeId v, std::uint64_t m)
{
	if (u == v)
		throw std::invalid_argument("add_parallel: equal endpoints (use add_self_loops)");
	if (m == 0)
		throw std::invalid_argument("add_parallel: zero multiplicity");
	entries_[pack(u, v)] += m;
	degrees_[u] += static_cast<std::int64_t>(m);
	degrees_[v] += static_cast<std::int64_t>(m);
	stub_total_ += 2 * m;
}

void MultiGraph::add_self_loops(NodeId u, std::uint64_t s)
{
	if (s == 0)
		throw std::invalid_argument("add_self_loops: zero count");
	entries_[pack(u, u)] += 2 * s;
	degrees_[u] += static_cast<std::int64_t>(2 * s);
	stub_total_ += 2 * s;
}

bool MultiGraph::is_simple() const
{
	for (const auto& [key, m] : entries_) {
		const NodeId u = static_cast<NodeId>(key >> 32);
		const NodeId v = static_cast<NodeId>(key & 0xffffffffULL);
		if (u == v || m > 1)
			return false;
	}
	return true;
}

void MultiGraph::validate() const
{
	std::vector<std::int64_t> stub_sum(degrees_.size(), 0);
	std::uint64_t total = 0;
	for (const auto& [key, m] : entries_) {
		const NodeId u = static_cast<NodeId>(key >> 32);
		const NodeId v = static_cast<NodeId>(key & 0xffffffffULL);
		if (u == v) {
			if (m % 2 != 0)
				throw std::logic_error("MultiGraph: odd diagonal entry at node " +
				                       std::to_string(u));
			stub_sum[u] += static_cast<std::int64_t>(m);
			total += m;
		} else {
			stub_sum[u] += static_cast<std::int64_t>(m);
			stub_sum[v] += static_cast<std::int64_t>(m);
			total += 2 * m;
		}
	}
	if (total != stub_total_)
		throw std::logic_error("MultiGraph: stub total mismatch");
	for (std::size_t i = 0; i < degrees_.size(); ++i)
		if (stub_sum[i] != degrees_[i])
			throw std::logic_error("MultiGraph: degree mismatch at node " +
			                       std::to_string(i));
}

MultiGraph pair_configuration_model(const DegreeSequence& seq, RandomStream& stream)
{
	const std::uint64_t ln = seq.stub_total();
	std::vector<MultiGraph::NodeId> stubs;
	stubs.reserve(ln);
	for (std::int64_t i = 0; i < seq.size(); ++i)
		stubs.insert(stubs.end(), static_cast<std::size_t>(seq.degree(i)),
		             static_cast<MultiGraph::NodeId>(i));
	stream.shuffle(stubs);
	MultiGraph mg(seq.size());
	for (std::size_t t = 0; t + 1 < stubs.size(); t += 2)
		mg.add_pair(stubs[t], stubs[t + 1]);
	return mg;
}

double conditional_edge_expectation(const DegreeSequence& seq, std::int64_t i,
                                    std::int64_t j)
{
	if (seq.stub_total() < 2)
		throw std::domain_error("conditional_edge_expectation: needs at least 2 stubs");
	if (i < 0 || i >= seq.size() || j < 0 || j >= seq.size())
		throw std::invalid_argument("conditional_edge_expectation: node out of range");
	const double denom = static_cast<double>(seq.stub_total()) - 1.0;
	const double di = static_cast<double>(seq.degree(i));
	if (i == j)
		return di * (di - 1.0) / denom;
	return di * static_cast<double>(seq.degree(j)) / denom;
}

SimpleGraph erase(const MultiGraph& mg)
{
	SimpleGraph sg;
	sg.original_degrees = mg.degrees();
	sg.degrees.assign(mg.degrees().size(), 0);
	sg.edges.reserve(mg.entry_count());
	mg.for_each_entry([&sg](MultiGraph::NodeId u, MultiGraph::NodeId v, std::uint64_t) {
		if (u == v)
			return; // self-loops erased
		sg.edges.emplace_back(u, v);
		++sg.degrees[u];
		++sg.degrees[v];
	});
	sg.stub_total = 2 * sg.edges.size();
	sg.erased_stubs.resize(sg.degrees.size());
	for (std::size_t i = 0; i < sg.degrees.size(); ++i) {
		sg.erased_stubs[i] = sg.original_degrees[i] - sg.degrees[i];
		sg.erased_total += static_cast<std::uint64_t>(sg.erased_stubs[i]);
	}
	return sg;
}

RepeatedCmResult repeated_cm(const DegreeSequence& seq, RandomStream& stream,
                             int max_attempts)
{
	if (max_attempts < 1)
		throw std::invalid_argument("repeated_cm: max_attempts must be >= 1");
	RepeatedCmResult result;
	for (int attempt = 1; attempt <= max_attempts; ++attempt) {
		MultiGraph mg = pair_configuration_model(seq, stream);
		result.attempts = attempt;
		if (mg.is_simple()) {
			result.graph = erase(mg); // identity here; fills the bookkeeping
			return result;
		}
	}
	return result;
}

namespace {

// Sorted (u, v, m) rows; diagonal written as self-loop counts.
template <class EntrySource>
void write_edge_lines(std::ostream& os, std::int64_t n, std::uint64_t stub_total,
                      std::uint64_t seed, EntrySource&& collect)
{
	std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> rows;
	collect(rows);
	std::sort(rows.begin(), rows.end());
	os << "# degcorr-multigraph n=" << n << " L=" << stub_total << " seed=" << seed
	   << '\n';
	for (const auto& [u, v, m] : rows)
		os << u << ' ' << v << ' ' << (u == v ? m / 2 : m) << '\n';
}

} // namespace

void write_edge_list(std::ostream& os, const MultiGraph& mg, std::uint64_t seed)
{
	write_edge_lines(os, mg.node_count(), mg.stub_total(), seed, [&mg](auto& rows) {
		rows.reserve(mg.entry_count());
		mg.for_each_entry([&rows](MultiGraph::NodeId u, MultiGraph::NodeId v,
		                          std::uint64_t m) { rows.emplace_back(u, v, m); });
	});
}

void write_edge_list(std::ostream& os, const SimpleGraph& sg, std::uint64_t seed)
{
	write_edge_lines(os, sg.node_count(), sg.stub_total, seed, [&sg](auto& rows) {
		rows.reserve(sg.edges.size());
		for (const auto& [u, v] : sg.edges)
			rows.emplace_back(u, v, 1);
	});
}

MultiGraph read_edge_list(std::istream& is)
{
	struct Row
	{
		std::uint64_t u;
		std::uint64_t v;
		std::uint64_t m;
	};
	std::vector<Row> rows;
	std::string line;
	std::int64_t line_no = 0;
	std::int64_t header_n = -1;
	std::uint64_t max_id = 0;
	while (std::getline(is, line)) {
		++line_no;
		if (line.empty())
			continue;
		if (line[0] == '#') {
			std::istringstream ls(line);
			std::string tok;
			while (ls >> tok)
				if (tok.rfind("n=", 0) == 0)
					header_n = std::stoll(tok.substr(2));
			continue;
		}
		std::istringstream ls(line);
		Row r{0, 0, 1};
		if (!(ls >> r.u >> r.v))
			throw std::runtime_error("edge list line " + std::to_string(line_no) +
			                         ": expected 'u v [multiplicity]': '" + line + "'");
		if (!(ls >> r.m))
			r.m = 1; // bare "u v" rows mean a single edge
		std::string rest;
		if (ls.clear(), ls >> rest)
			throw std::runtime_error("edge list line " + std::to_string(line_no) +
			                         ": trailing characters: '" + line + "'");
		if (r.m == 0)
			throw std::runtime_error("edge list line " + std::to_string(line_no) +
			                         ": zero multiplicity");
		if (r.u > 0xffffffffULL || r.v > 0xffffffffULL)
			throw std::runtime_error("edge list line " + std::to_string(line_no) +
			                         ": node id out of range: '" + line + "'");
		max_id = std::max({max_id, r.u, r.v});
		rows.push_back(r);
	}
	if (rows.empty())
		throw std::runtime_error("edge list: no edges found");
	const std::int64_t n =
	    header_n >= 0 ? header_n : static_cast<std::int64_t>(max_id) + 1;
	if (static_cast<std::int64_t>(max_id) >= n)
		throw std::runtime_error("edge list: node id " + std::to_string(max_id) +
		                         " outside declared n=" + std::to_string(n));
	MultiGraph mg(n);
	for (const Row& r : rows) {
		const auto u = static_cast<MultiGraph::NodeId>(r.u);
		const auto v = static_cast<MultiGraph::NodeId>(r.v);
		if (mg.multiplicity(u, v) != 0)
			throw std::runtime_error("edge list: duplicate entry for pair (" +
			                         std::to_string(r.u) + ", " + std::to_string(r.v) +
			                         ")");
		if (u == v)
			mg.add_self_loops(u, r.m);
		else
			mg.add_parallel(u, v, r.m);
	}
	return mg;
}

} // namespace degcorr
