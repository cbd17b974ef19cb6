#ifndef DEGCORR_RNG_HPP
#define DEGCORR_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace degcorr {

/// SplitMix64 output at a given index: finalizes seed + (index+1)*golden_gamma.
/// Used to derive independent per-replica seeds from one master seed, so that
/// replica r is reproducible on its own without generating replicas 0..r-1.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index)
{
	std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

/// Deterministic random stream with platform-stable helpers.
///
/// mt19937_64 itself is fully specified by the standard, but the standard
/// *distributions* (uniform_real_distribution, uniform_int_distribution,
/// std::shuffle) are implementation-defined, so this class hand-rolls the
/// few primitives we need: uniforms on (0,1], unbiased bounded integers,
/// and a Fisher-Yates shuffle. Same seed => same outputs everywhere.
class RandomStream
{
  public:
	explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

	std::uint64_t next_u64() { return eng_(); }

	/// Uniform double on (0,1]: ((x >> 11) + 1) * 2^-53.
	/// Open at 0 so that u^(-1/gamma) is always finite.
	double next_unit_open_closed()
	{
		return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
	}

	/// Uniform integer in [0, bound), unbiased via rejection.
	std::uint64_t next_below(std::uint64_t bound)
	{
		const std::uint64_t threshold = (0 - bound) % bound;
		for (;;) {
			const std::uint64_t r = eng_();
			if (r >= threshold)
				return r % bound;
		}
	}

	/// In-place Fisher-Yates shuffle.
	template <class T>
	void shuffle(std::vector<T>& v)
	{
		for (std::size_t i = v.size(); i > 1; --i) {
			const std::size_t j = static_cast<std::size_t>(next_below(i));
			std::swap(v[i - 1], v[j]);
		}
	}

  private:
	std::mt19937_64 eng_;
};

} // namespace degcorr

#endif
