#ifndef DEGCORR_GRAPH_HPP
#define DEGCORR_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "degcorr/degree_sequence.hpp"
#include "degcorr/rng.hpp"

namespace degcorr {

/// Multigraph with sparse symmetric edge multiplicities. Entries are keyed by
/// the unordered pair (min,max); the diagonal entry G_uu stores *twice* the
/// self-loop count of u, so that sum_v G_uv (diagonal included once) equals
/// the degree of u.
class MultiGraph
{
  public:
	using NodeId = std::uint32_t;

	explicit MultiGraph(std::int64_t n);

	std::int64_t node_count() const { return static_cast<std::int64_t>(degrees_.size()); }
	std::uint64_t stub_total() const { return stub_total_; }
	const std::vector<std::int64_t>& degrees() const { return degrees_; }
	std::uint64_t entry_count() const { return entries_.size(); }

	/// G_uv; for u == v this is twice the self-loop count.
	std::uint64_t multiplicity(NodeId u, NodeId v) const;

	/// Record one matched stub pair (u == v adds a self-loop, G_uu += 2).
	void add_pair(NodeId u, NodeId v);

	/// Record m parallel edges between distinct nodes (parser path).
	void add_parallel(NodeId u, NodeId v, std::uint64_t m);

	/// Record s self-loops at u, i.e. G_uu += 2s (parser path).
	void add_self_loops(NodeId u, std::uint64_t s);

	/// No self-loops and no multiplicity above 1.
	bool is_simple() const;

	/// Recheck degree consistency and diagonal evenness; throws std::logic_error.
	void validate() const;

	/// f(u, v, multiplicity) over stored entries, u <= v, unspecified order.
	template <class F>
	void for_each_entry(F&& f) const
	{
		for (const auto& [key, m] : entries_) {
			const NodeId u = static_cast<NodeId>(key >> 32);
			const NodeId v = static_cast<NodeId>(key & 0xffffffffULL);
			f(u, v, m);
		}
	}

  private:
	static std::uint64_t pack(NodeId u, NodeId v)
	{
		if (u > v)
			std::swap(u, v);
		return (static_cast<std::uint64_t>(u) << 32) | v;
	}

	std::vector<std::int64_t> degrees_;
	std::unordered_map<std::uint64_t, std::uint64_t> entries_;
	std::uint64_t stub_total_ = 0;
};

/// Simple graph produced by erasure (or by a simple CM realization), together
/// with the erasure bookkeeping against the original degrees.
struct SimpleGraph
{
	std::vector<std::pair<MultiGraph::NodeId, MultiGraph::NodeId>> edges; // u < v, unique
	std::vector<std::int64_t> original_degrees;  // D_i of the generating sequence
	std::vector<std::int64_t> degrees;           // realized degrees after erasure
	std::vector<std::int64_t> erased_stubs;      // Y_i = D_i - realized degree
	std::uint64_t erased_total = 0;              // E_n = sum Y_i = L_n - realized stub total
	std::uint64_t stub_total = 0;                // realized stub total = 2 * edges.size()

	std::int64_t node_count() const { return static_cast<std::int64_t>(degrees.size()); }
};

/// Uniform stub pairing: shuffle the stub array, pair consecutive entries.
/// Uniform over perfect matchings of the L_n stubs.
MultiGraph pair_configuration_model(const DegreeSequence& seq, RandomStream& stream);

/// E[G_ij | degree sequence]: D_i D_j / (L_n - 1) off-diagonal, and
/// D_i (D_i - 1) / (L_n - 1) for i == j (expected G_ii, twice the self-loops).
double conditional_edge_expectation(const DegreeSequence& seq, std::int64_t i, std::int64_t j);

/// Remove self-loops, collapse multi-edges; deterministic.
SimpleGraph erase(const MultiGraph& mg);

struct RepeatedCmResult
{
	std::optional<SimpleGraph> graph; // empty when all attempts produced a non-simple graph
	int attempts = 0;
};

/// Re-pair until simple, at most max_attempts times.
RepeatedCmResult repeated_cm(const DegreeSequence& seq, RandomStream& stream,
                             int max_attempts = 1000);

/// Edge-list export: "u v m" per unordered pair, self-loops as "u u s" with
/// s = G_uu/2; header "# degcorr-multigraph n=<n> L=<L> seed=<seed>".
/// Entries written in sorted (u,v) order so identical graphs give identical files.
void write_edge_list(std::ostream& os, const MultiGraph& mg, std::uint64_t seed);
void write_edge_list(std::ostream& os, const SimpleGraph& sg, std::uint64_t seed);

/// Parse an edge list. Header optional; without it n = max node id + 1.
/// Malformed input throws std::runtime_error naming the line number.
MultiGraph read_edge_list(std::istream& is);

} // namespace degcorr

#endif
