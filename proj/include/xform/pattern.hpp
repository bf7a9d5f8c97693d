#pragma once

// Objective patterns: base patterns (fixed-width binary vectors), finite
// sequences of them, and finite sets of sequences, together with the four
// objective operators OR, AND, NOT and NEXT.
//
// Bit order: the text form "#b1b2...bN" puts component i_1 leftmost. In the
// packed word component i_k lives at bit position (N - k), so numeric order of
// the word equals lexicographic order of the text.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "xform/error.hpp"

namespace xform {

/// Number of binary components per base pattern. Set operations accept any
/// width up to 64; anything that enumerates the base pattern space is capped
/// at `max_enumerable`.
class Dimension {
public:
	static constexpr unsigned max_bits = 64;
	static constexpr unsigned max_enumerable = 24;

	explicit Dimension(unsigned n) : n_(n)
	{
		if (n == 0 || n > max_bits)
			throw Error(Errc::invalid_argument,
			            "dimension must be in [1, 64], got " + std::to_string(n));
	}

	unsigned bits() const noexcept { return n_; }

	std::uint64_t mask() const noexcept
	{
		return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
	}

	auto operator<=>(const Dimension&) const = default;

private:
	unsigned n_;
};

inline constexpr std::uint64_t default_enumeration_cap = std::uint64_t{1} << 24;

/// Maximum sequence length for bounded-universe operations, plus the cap on
/// how many sequences such an operation may materialize.
struct LengthBound {
	std::size_t l_max = 4;
	std::uint64_t cap = default_enumeration_cap;
};

inline void require_same_dim(Dimension a, Dimension b)
{
	if (a != b)
		throw Error(Errc::dimension_mismatch,
		            "dimensions differ: " + std::to_string(a.bits()) + " vs " + std::to_string(b.bits()));
}

/// Size of the N-bit space, throwing EnumerationGuard when it cannot be enumerated.
inline std::uint64_t spatial_universe_size(Dimension dim, std::uint64_t cap = default_enumeration_cap)
{
	if (dim.bits() > Dimension::max_enumerable)
		throw Error(Errc::enumeration_guard,
		            "dimension " + std::to_string(dim.bits()) + " exceeds the enumeration limit of " +
		                std::to_string(Dimension::max_enumerable));
	const std::uint64_t size = std::uint64_t{1} << dim.bits();
	if (size > cap)
		throw Error(Errc::enumeration_guard,
		            "2^" + std::to_string(dim.bits()) + " base patterns exceed the cap of " + std::to_string(cap));
	return size;
}

/// Number of sequences of length 1..l_max, throwing EnumerationGuard once the
/// running total passes the cap.
inline std::uint64_t bounded_universe_size(Dimension dim, const LengthBound& bound)
{
	if (bound.l_max == 0)
		throw Error(Errc::invalid_argument, "l_max must be positive");
	const std::uint64_t base = spatial_universe_size(dim, bound.cap);
	std::uint64_t total = 0;
	std::uint64_t layer = 1;
	for (std::size_t k = 1; k <= bound.l_max; ++k) {
		if (layer > bound.cap / base)
			throw Error(Errc::enumeration_guard, "bounded universe exceeds the cap of " + std::to_string(bound.cap));
		layer *= base;
		total += layer;
		if (total > bound.cap)
			throw Error(Errc::enumeration_guard, "bounded universe exceeds the cap of " + std::to_string(bound.cap));
	}
	return total;
}

class BasePattern {
public:
	BasePattern(Dimension dim, std::uint64_t bits) : dim_(dim), bits_(bits)
	{
		if ((bits & ~dim.mask()) != 0)
			throw Error(Errc::width_error, "bits set outside a " + std::to_string(dim.bits()) + "-bit pattern");
	}

	/// Parses "0110" (no leading '#').
	static BasePattern parse(std::string_view text)
	{
		if (text.empty() || text.size() > Dimension::max_bits)
			throw Error(Errc::width_error, "bitstring width must be in [1, 64]: '" + std::string(text) + "'");
		std::uint64_t bits = 0;
		for (char c : text) {
			if (c != '0' && c != '1')
				throw Error(Errc::syntax_error, "not a bitstring: '" + std::string(text) + "'");
			bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
		}
		return BasePattern(Dimension(static_cast<unsigned>(text.size())), bits);
	}

	/// The unit vector with a single 1 at 1-based component `i`.
	static BasePattern unit(Dimension dim, unsigned i)
	{
		if (i == 0 || i > dim.bits())
			throw Error(Errc::invalid_argument, "component index out of range");
		return BasePattern(dim, std::uint64_t{1} << (dim.bits() - i));
	}

	static BasePattern all_ones(Dimension dim) { return BasePattern(dim, dim.mask()); }

	Dimension dim() const noexcept { return dim_; }
	std::uint64_t bits() const noexcept { return bits_; }

	/// Component i_k, 1-based from the left.
	bool component(unsigned k) const noexcept { return (bits_ >> (dim_.bits() - k)) & 1u; }

	/// True when every 1-bit of `other` is also set here.
	bool covers(const BasePattern& other) const noexcept { return (bits_ & other.bits_) == other.bits_; }

	std::string to_string() const
	{
		std::string out(dim_.bits(), '0');
		for (unsigned k = 1; k <= dim_.bits(); ++k)
			if (component(k))
				out[k - 1] = '1';
		return out;
	}

	bool operator==(const BasePattern&) const = default;
	auto operator<=>(const BasePattern& other) const
	{
		if (auto c = dim_ <=> other.dim_; c != 0)
			return c;
		return bits_ <=> other.bits_;
	}

private:
	Dimension dim_;
	std::uint64_t bits_;
};

/// A finite, nonempty, ordered list of base patterns of one dimension.
class Sequence {
public:
	Sequence(Dimension dim, std::vector<std::uint64_t> steps) : dim_(dim), steps_(std::move(steps))
	{
		if (steps_.empty())
			throw Error(Errc::invalid_argument, "a sequence has at least one step");
		for (auto w : steps_)
			if ((w & ~dim.mask()) != 0)
				throw Error(Errc::width_error, "step has bits outside the dimension");
	}

	explicit Sequence(const BasePattern& b) : dim_(b.dim()), steps_{b.bits()} {}

	Sequence(std::initializer_list<BasePattern> steps) : Sequence(std::vector<BasePattern>(steps)) {}

	explicit Sequence(const std::vector<BasePattern>& steps)
		: dim_(steps.empty() ? throw Error(Errc::invalid_argument, "a sequence has at least one step")
		                     : steps.front().dim())
	{
		steps_.reserve(steps.size());
		for (const auto& b : steps) {
			require_same_dim(dim_, b.dim());
			steps_.push_back(b.bits());
		}
	}

	Dimension dim() const noexcept { return dim_; }
	std::size_t length() const noexcept { return steps_.size(); }
	BasePattern step(std::size_t i) const { return BasePattern(dim_, steps_.at(i)); }
	const std::vector<std::uint64_t>& words() const noexcept { return steps_; }

	/// [this -> other]
	Sequence concat(const Sequence& other) const
	{
		require_same_dim(dim_, other.dim_);
		std::vector<std::uint64_t> joined;
		joined.reserve(steps_.size() + other.steps_.size());
		joined.insert(joined.end(), steps_.begin(), steps_.end());
		joined.insert(joined.end(), other.steps_.begin(), other.steps_.end());
		return Sequence(dim_, std::move(joined));
	}

	/// Whitespace-separated bitstrings, e.g. "01 10 00".
	std::string to_string() const
	{
		std::string out;
		for (std::size_t i = 0; i < steps_.size(); ++i) {
			if (i)
				out += ' ';
			out += step(i).to_string();
		}
		return out;
	}

	bool operator==(const Sequence&) const = default;

	/// Orders by dimension, then length, then step-by-step lexicographically.
	std::strong_ordering operator<=>(const Sequence& other) const
	{
		if (auto c = dim_ <=> other.dim_; c != 0)
			return c;
		if (auto c = steps_.size() <=> other.steps_.size(); c != 0)
			return c;
		return std::lexicographical_compare_three_way(steps_.begin(), steps_.end(), other.steps_.begin(),
		                                              other.steps_.end());
	}

private:
	Dimension dim_;
	std::vector<std::uint64_t> steps_;
};

struct SequenceHash {
	std::size_t operator()(const Sequence& s) const noexcept
	{
		std::size_t h = std::hash<std::size_t>{}(s.length());
		for (auto w : s.words())
			h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
		return h;
	}
};

/// A finite set of sequences over one dimension. The empty set is a valid
/// (spatial) pattern; duplicate inserts collapse.
class Pattern {
public:
	using Set = std::unordered_set<Sequence, SequenceHash>;

	explicit Pattern(Dimension dim) : dim_(dim) {}

	Pattern(Dimension dim, std::initializer_list<Sequence> instances) : dim_(dim)
	{
		for (const auto& s : instances)
			insert(s);
	}

	Dimension dim() const noexcept { return dim_; }
	std::size_t size() const noexcept { return instances_.size(); }
	bool empty() const noexcept { return instances_.empty(); }

	bool insert(Sequence s)
	{
		require_same_dim(dim_, s.dim());
		return instances_.insert(std::move(s)).second;
	}

	bool insert(const BasePattern& b) { return insert(Sequence(b)); }

	bool contains(const Sequence& s) const { return s.dim() == dim_ && instances_.contains(s); }
	bool contains(const BasePattern& b) const { return contains(Sequence(b)); }

	Set::const_iterator begin() const { return instances_.begin(); }
	Set::const_iterator end() const { return instances_.end(); }

	/// Instances ordered by (length, lexicographic bits).
	std::vector<Sequence> sorted() const
	{
		std::vector<Sequence> out(instances_.begin(), instances_.end());
		std::sort(out.begin(), out.end());
		return out;
	}

	std::size_t max_length() const noexcept
	{
		std::size_t m = 0;
		for (const auto& s : instances_)
			m = std::max(m, s.length());
		return m;
	}

	bool operator==(const Pattern& other) const { return dim_ == other.dim_ && instances_ == other.instances_; }

private:
	Dimension dim_;
	Set instances_;
};

/// Vacuously true for the empty pattern.
inline bool is_spatial(const Pattern& p)
{
	return std::all_of(p.begin(), p.end(), [](const Sequence& s) { return s.length() == 1; });
}

inline Pattern or_union(const Pattern& p1, const Pattern& p2)
{
	require_same_dim(p1.dim(), p2.dim());
	Pattern out = p1;
	for (const auto& s : p2)
		out.insert(s);
	return out;
}

inline Pattern and_intersect(const Pattern& p1, const Pattern& p2)
{
	require_same_dim(p1.dim(), p2.dim());
	const Pattern& small = p1.size() <= p2.size() ? p1 : p2;
	const Pattern& large = p1.size() <= p2.size() ? p2 : p1;
	Pattern out(p1.dim());
	for (const auto& s : small)
		if (large.contains(s))
			out.insert(s);
	return out;
}

/// Complement inside the N-bit space.
inline Pattern not_spatial(const Pattern& p, std::uint64_t cap = default_enumeration_cap)
{
	if (!is_spatial(p))
		throw Error(Errc::not_spatial, "spatial complement of a pattern with sequences longer than 1");
	const std::uint64_t size = spatial_universe_size(p.dim(), cap);
	std::vector<bool> present(size, false);
	for (const auto& s : p)
		present[s.words().front()] = true;
	Pattern out(p.dim());
	for (std::uint64_t w = 0; w < size; ++w)
		if (!present[w])
			out.insert(Sequence(p.dim(), {w}));
	return out;
}

/// Calls `fn(const Sequence&)` for every sequence of length 1..l_max in
/// (length, lexicographic) order. Stops early when `fn` returns false.
template <typename Fn>
void for_each_sequence(Dimension dim, const LengthBound& bound, Fn&& fn)
{
	bounded_universe_size(dim, bound);
	const std::uint64_t base = std::uint64_t{1} << dim.bits();
	for (std::size_t k = 1; k <= bound.l_max; ++k) {
		std::vector<std::uint64_t> steps(k, 0);
		while (true) {
			if (!fn(Sequence(dim, steps)))
				return;
			// odometer increment, last step fastest
			std::size_t i = k;
			while (i > 0 && ++steps[i - 1] == base)
				steps[--i] = 0;
			if (i == 0)
				break;
		}
	}
}

inline Pattern enumerate_universe(Dimension dim, const LengthBound& bound)
{
	Pattern out(dim);
	for_each_sequence(dim, bound, [&](const Sequence& s) {
		out.insert(s);
		return true;
	});
	return out;
}

/// Complement inside the universe of sequences of length 1..l_max.
inline Pattern not_bounded(const Pattern& p, const LengthBound& bound)
{
	if (p.max_length() > bound.l_max)
		throw Error(Errc::bound_too_small, "pattern has an instance of length " + std::to_string(p.max_length()) +
		                                       " > l_max " + std::to_string(bound.l_max));
	Pattern out(p.dim());
	for_each_sequence(p.dim(), bound, [&](const Sequence& s) {
		if (!p.contains(s))
			out.insert(s);
		return true;
	});
	return out;
}

/// { [s1 -> s2] : s1 in p1, s2 in p2 }
inline Pattern next_concat(const Pattern& p1, const Pattern& p2)
{
	require_same_dim(p1.dim(), p2.dim());
	Pattern out(p1.dim());
	for (const auto& s1 : p1)
		for (const auto& s2 : p2)
			out.insert(s1.concat(s2));
	return out;
}

} // namespace xform
