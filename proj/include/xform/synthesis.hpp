#pragma once

// Constructive synthesis of X-forms denoting a given objective pattern.
//
//  - synth_sx_mask      minterm DNF over the n unit generators, Mask leaves
//  - synth_sx_singleton OR of the members themselves, Singleton leaves
//  - synth_tx_projection  NEXT chain of per-position projections; only exact
//                         when the target is the full product of them
//  - synth_x            OR over length classes, falling back to an OR of
//                       per-instance chains where projection is inexact
//
// Every result is checked against the target before it is returned.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "xform/ast.hpp"

namespace xform {

struct SynthResult {
	XForm form;
	Interpretation interp;
	bool exact;
	std::size_t footing_size;
};

struct SynthOptions {
	/// Accept an empty target by returning the contradiction u_1 . !u_1.
	bool allow_empty = false;
	std::uint64_t cap = default_enumeration_cap;
};

/// The n unit base patterns u_1..u_n. Under Mask, u_i denotes {x : x_i == 1}.
inline std::vector<BasePattern> coordinate_generators(Dimension dim)
{
	std::vector<BasePattern> units;
	units.reserve(dim.bits());
	for (unsigned i = 1; i <= dim.bits(); ++i)
		units.push_back(BasePattern::unit(dim, i));
	return units;
}

namespace detail {

inline void require_spatial_target(const Pattern& target)
{
	if (!is_spatial(target))
		throw Error(Errc::not_spatial, "sX synthesis needs a spatial target");
}

inline SynthResult finish(XForm form, Interpretation interp, const Pattern& target, std::uint64_t cap,
                          bool must_be_exact = true)
{
	const bool exact = eval(form, interp, cap) == target;
	if (must_be_exact && !exact)
		throw std::logic_error("synthesized form does not denote its target: " + std::to_string(target.size()));
	const std::size_t footing = footing_of(form).size();
	return SynthResult{std::move(form), interp, exact, footing};
}

inline XForm minterm(const BasePattern& b)
{
	std::vector<XForm> literals;
	for (unsigned i = 1; i <= b.dim().bits(); ++i) {
		XForm u = make_leaf(BasePattern::unit(b.dim(), i));
		literals.push_back(b.component(i) ? u : make_not(u));
	}
	return fold_left(literals, make_and);
}

inline std::vector<BasePattern> spatial_members(const Pattern& p)
{
	std::vector<BasePattern> out;
	for (const auto& s : p.sorted())
		out.push_back(s.step(0));
	return out;
}

/// sX-form for one spatial set under the given interpretation, without the
/// final exactness check (callers check the whole form).
inline XForm sx_form(const Pattern& target, Interpretation interp)
{
	std::vector<XForm> terms;
	for (const auto& b : spatial_members(target))
		terms.push_back(interp == Interpretation::Mask ? minterm(b) : make_leaf(b));
	return fold_left(terms, make_or);
}

} // namespace detail

inline SynthResult synth_sx_mask(const Pattern& target, const SynthOptions& opts = {})
{
	detail::require_spatial_target(target);
	spatial_universe_size(target.dim(), opts.cap);
	if (target.empty()) {
		if (!opts.allow_empty)
			throw Error(Errc::empty_target, "no sX-form denotes the empty pattern without a contradiction term");
		XForm u = make_leaf(BasePattern::unit(target.dim(), 1));
		return detail::finish(make_and(u, make_not(u)), Interpretation::Mask, target, opts.cap);
	}
	return detail::finish(detail::sx_form(target, Interpretation::Mask), Interpretation::Mask, target, opts.cap);
}

inline SynthResult synth_sx_singleton(const Pattern& target, const SynthOptions& opts = {})
{
	detail::require_spatial_target(target);
	if (target.empty())
		throw Error(Errc::empty_target, "cannot synthesize the empty pattern");
	return detail::finish(detail::sx_form(target, Interpretation::Singleton), Interpretation::Singleton, target,
	                      opts.cap);
}

inline SynthResult synth_sx(const Pattern& target, Interpretation interp, const SynthOptions& opts = {})
{
	return interp == Interpretation::Mask ? synth_sx_mask(target, opts) : synth_sx_singleton(target, opts);
}

/// Per-position projections P_1..P_k of a same-length pattern.
inline std::vector<Pattern> projections(const Pattern& target)
{
	if (target.empty())
		throw Error(Errc::empty_target, "cannot project the empty pattern");
	const std::size_t k = target.begin()->length();
	std::vector<Pattern> out(k, Pattern(target.dim()));
	for (const auto& s : target) {
		if (s.length() != k)
			throw Error(Errc::mixed_lengths, "instances have lengths " + std::to_string(k) + " and " +
			                                     std::to_string(s.length()));
		for (std::size_t i = 0; i < k; ++i)
			out[i].insert(s.step(i));
	}
	return out;
}

/// NEXT chain of the per-position projections. The result always
/// over-approximates the target; `exact` reports whether it is equal.
inline SynthResult synth_tx_projection(const Pattern& target, Interpretation interp, const SynthOptions& opts = {})
{
	std::vector<XForm> parts;
	for (const auto& column : projections(target))
		parts.push_back(detail::sx_form(column, interp));
	return detail::finish(fold_left(parts, make_next), interp, target, opts.cap, false);
}

inline SynthResult synth_x(const Pattern& target, Interpretation interp, const SynthOptions& opts = {})
{
	if (target.empty())
		throw Error(Errc::empty_target, "cannot synthesize the empty pattern");
	std::map<std::size_t, Pattern> by_length;
	for (const auto& s : target)
		by_length.try_emplace(s.length(), target.dim()).first->second.insert(s);

	std::vector<XForm> classes;
	for (const auto& [length, members] : by_length) {
		SynthResult projected = synth_tx_projection(members, interp, opts);
		if (projected.exact) {
			classes.push_back(projected.form);
			continue;
		}
		std::vector<XForm> chains;
		for (const auto& s : members.sorted()) {
			std::vector<XForm> steps;
			for (std::size_t i = 0; i < s.length(); ++i) {
				Pattern single(target.dim());
				single.insert(s.step(i));
				steps.push_back(detail::sx_form(single, interp));
			}
			chains.push_back(fold_left(steps, make_next));
		}
		classes.push_back(fold_left(chains, make_or));
	}
	return detail::finish(fold_left(classes, make_or), interp, target, opts.cap);
}

// ---------------------------------------------------------------------------
// simplify

namespace detail {

struct Literal {
	BasePattern base;
	bool positive;
	auto operator<=>(const Literal&) const = default;
};

using Cube = std::vector<Literal>;

inline std::optional<Literal> as_literal(const XForm& e)
{
	if (e.op() == Op::Leaf)
		return Literal{e.base(), true};
	if (e.op() == Op::Not && e.lhs().op() == Op::Leaf)
		return Literal{e.lhs().base(), false};
	return std::nullopt;
}

inline void flatten(const XForm& e, Op op, std::vector<XForm>& out)
{
	if (e.op() == op) {
		flatten(e.lhs(), op, out);
		flatten(e.rhs(), op, out);
	} else {
		out.push_back(e);
	}
}

inline std::optional<Cube> as_cube(const XForm& term)
{
	std::vector<XForm> factors;
	flatten(term, Op::And, factors);
	Cube cube;
	for (const auto& f : factors) {
		auto lit = as_literal(f);
		if (!lit)
			return std::nullopt;
		if (std::find(cube.begin(), cube.end(), *lit) == cube.end())
			cube.push_back(*lit);
	}
	return cube;
}

inline std::vector<Literal> sorted_copy(const Cube& c)
{
	std::vector<Literal> s(c);
	std::sort(s.begin(), s.end());
	return s;
}

inline bool subset_of(const Cube& a, const Cube& b)
{
	auto sa = sorted_copy(a), sb = sorted_copy(b);
	return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

inline bool is_contradiction(const Cube& c)
{
	for (const auto& l : c)
		if (std::find(c.begin(), c.end(), Literal{l.base, !l.positive}) != c.end())
			return true;
	return false;
}

/// If a and b are equal except for one literal of opposite polarity on the
/// same base, returns that position in a.
inline std::optional<std::size_t> merge_position(const Cube& a, const Cube& b)
{
	if (a.size() != b.size())
		return std::nullopt;
	std::optional<std::size_t> pos;
	for (std::size_t i = 0; i < a.size(); ++i) {
		if (std::find(b.begin(), b.end(), a[i]) != b.end())
			continue;
		if (pos || std::find(b.begin(), b.end(), Literal{a[i].base, !a[i].positive}) == b.end())
			return std::nullopt;
		pos = i;
	}
	return pos;
}

inline XForm literal_form(const Literal& l)
{
	XForm leaf = make_leaf(l.base);
	return l.positive ? leaf : make_not(leaf);
}

/// Rewrites an OR of literal conjunctions: drops contradictions and
/// duplicates, applies absorption, and merges x.C + !x.C into C. Returns
/// nullopt when the input is not in that shape or nothing changed.
inline std::optional<XForm> simplify_dnf(const XForm& e)
{
	std::vector<XForm> terms;
	flatten(e, Op::Or, terms);
	if (terms.size() < 2)
		return std::nullopt;
	std::vector<Cube> cubes;
	for (const auto& t : terms) {
		auto c = as_cube(t);
		if (!c)
			return std::nullopt;
		cubes.push_back(std::move(*c));
	}
	const std::size_t original_terms = cubes.size();
	std::size_t original_literals = 0;
	for (const auto& c : cubes)
		original_literals += c.size();

	std::erase_if(cubes, is_contradiction);
	if (cubes.empty())
		return std::nullopt;

	std::optional<Literal> tautology;
	bool changed = true;
	while (changed && !tautology) {
		changed = false;
		for (std::size_t i = 0; i < cubes.size() && !changed; ++i) {
			for (std::size_t j = 0; j < cubes.size() && !changed; ++j) {
				if (i == j)
					continue;
				if (subset_of(cubes[i], cubes[j])) {
					cubes.erase(cubes.begin() + static_cast<std::ptrdiff_t>(j));
					changed = true;
				} else if (auto pos = merge_position(cubes[i], cubes[j])) {
					const Literal dropped = cubes[i][*pos];
					cubes[i].erase(cubes[i].begin() + static_cast<std::ptrdiff_t>(*pos));
					cubes.erase(cubes.begin() + static_cast<std::ptrdiff_t>(j));
					if (cubes[i < j ? i : i - 1].empty())
						tautology = Literal{dropped.base, true};
					changed = true;
				}
			}
		}
	}

	if (tautology) {
		XForm u = make_leaf(tautology->base);
		return make_or(u, make_not(u));
	}
	std::size_t literals = 0;
	for (const auto& c : cubes)
		literals += c.size();
	if (cubes.size() == original_terms && literals == original_literals)
		return std::nullopt;

	std::vector<XForm> rebuilt;
	for (const auto& c : cubes) {
		std::vector<XForm> factors;
		for (const auto& l : c)
			factors.push_back(literal_form(l));
		rebuilt.push_back(fold_left(factors, make_and));
	}
	return fold_left(rebuilt, make_or);
}

class Simplifier {
public:
	Simplifier(Interpretation interp, std::uint64_t cap) : interp_(interp), cap_(cap) {}

	XForm run(const XForm& e)
	{
		switch (e.op()) {
		case Op::Leaf: return e;
		case Op::Not: {
			XForm c = run(e.lhs());
			if (c.op() == Op::Not)
				return c.lhs();
			return c.same_node(e.lhs()) ? e : make_not(c);
		}
		case Op::And: return conj(e, run(e.lhs()), run(e.rhs()));
		case Op::Or: return disj(e, run(e.lhs()), run(e.rhs()));
		case Op::Next: {
			XForm a = run(e.lhs()), b = run(e.rhs());
			if (known_empty(a))
				return a;
			if (known_empty(b))
				return b;
			return a.same_node(e.lhs()) && b.same_node(e.rhs()) ? e : make_next(a, b);
		}
		}
		return e;
	}

private:
	XForm conj(const XForm& orig, const XForm& a, const XForm& b)
	{
		if (a == b)
			return a;
		if (known_empty(a))
			return a;
		if (known_empty(b))
			return b;
		if (known_full(a))
			return b;
		if (known_full(b))
			return a;
		// a . (a + x) -> a
		if (b.op() == Op::Or && (b.lhs() == a || b.rhs() == a))
			return a;
		if (a.op() == Op::Or && (a.lhs() == b || a.rhs() == b))
			return b;
		return a.same_node(orig.lhs()) && b.same_node(orig.rhs()) ? orig : make_and(a, b);
	}

	XForm disj(const XForm& orig, const XForm& a, const XForm& b)
	{
		if (a == b)
			return a;
		if (known_empty(a))
			return b;
		if (known_empty(b))
			return a;
		if (a.kind() == Kind::Spatial && b.kind() == Kind::Spatial) {
			if (known_full(a))
				return a;
			if (known_full(b))
				return b;
		}
		// a + a . x -> a
		if (b.op() == Op::And && (b.lhs() == a || b.rhs() == a))
			return a;
		if (a.op() == Op::And && (a.lhs() == b || a.rhs() == b))
			return b;
		XForm out = a.same_node(orig.lhs()) && b.same_node(orig.rhs()) ? orig : make_or(a, b);
		if (out.kind() == Kind::Spatial)
			if (auto dnf = simplify_dnf(out))
				return *dnf;
		return out;
	}

	std::optional<Pattern> spatial_value(const XForm& e)
	{
		if (e.kind() != Kind::Spatial)
			return std::nullopt;
		try {
			return eval(e, interp_, cap_);
		} catch (const Error&) {
			return std::nullopt;
		}
	}

	bool known_empty(const XForm& e)
	{
		switch (e.op()) {
		case Op::Next: return known_empty(e.lhs()) || known_empty(e.rhs());
		case Op::Or:
			if (e.kind() == Kind::General)
				return known_empty(e.lhs()) && known_empty(e.rhs());
			[[fallthrough]];
		default: {
			auto v = spatial_value(e);
			return v && v->empty();
		}
		}
	}

	bool known_full(const XForm& e)
	{
		if (e.dim().bits() > Dimension::max_enumerable)
			return false;
		auto v = spatial_value(e);
		return v && v->size() == (std::uint64_t{1} << e.dim().bits());
	}

	Interpretation interp_;
	std::uint64_t cap_;
};

} // namespace detail

/// Denotation-preserving cleanup: double negation, idempotence, absorption,
/// identity/annihilator removal against subterms verified full or empty, and
/// merging of minterms that differ in one generator. Never grows the tree.
inline XForm simplify(const XForm& e, Interpretation interp, std::uint64_t cap = default_enumeration_cap)
{
	XForm out = detail::Simplifier(interp, cap).run(e);
	return out.node_count() <= e.node_count() ? out : e;
}

} // namespace xform
