#pragma once

// X-form expressions: base-pattern leaves combined with NOT and AND (spatial
// operands only), OR and NEXT (any operands).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "xform/pattern.hpp"

namespace xform {

enum class Op { Leaf, Not, And, Or, Next };

enum class Kind { Spatial, General };

/// What a leaf b denotes: Singleton is {[b]}; Mask is every [x] whose 1-bits
/// include the 1-bits of b.
enum class Interpretation { Singleton, Mask };

/// Immutable, structurally shared expression tree.
class XForm {
public:
	Op op() const noexcept { return node_->op; }
	Kind kind() const noexcept { return node_->kind; }
	Dimension dim() const noexcept { return node_->dim; }

	/// Leaf value; only valid when op() == Op::Leaf.
	const BasePattern& base() const { return *node_->base; }

	/// Operand of Not, or left operand of a binary node.
	XForm lhs() const { return XForm(node_->lhs); }
	XForm rhs() const { return XForm(node_->rhs); }

	std::size_t node_count() const noexcept { return node_->count; }
	std::size_t depth() const noexcept { return node_->depth; }

	bool same_node(const XForm& other) const noexcept { return node_ == other.node_; }

	friend bool operator==(const XForm& a, const XForm& b) { return equal(*a.node_, *b.node_); }

	friend XForm make_leaf(const BasePattern& b);
	friend XForm make_not(const XForm& e);
	friend XForm make_and(const XForm& a, const XForm& b);
	friend XForm make_or(const XForm& a, const XForm& b);
	friend XForm make_next(const XForm& a, const XForm& b);

private:
	struct Node {
		Op op;
		Kind kind;
		Dimension dim;
		std::optional<BasePattern> base;
		std::shared_ptr<const Node> lhs, rhs;
		std::size_t count;
		std::size_t depth;
	};

	explicit XForm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

	static bool equal(const Node& a, const Node& b)
	{
		if (&a == &b)
			return true;
		if (a.op != b.op || a.dim != b.dim || a.count != b.count)
			return false;
		switch (a.op) {
		case Op::Leaf: return *a.base == *b.base;
		case Op::Not: return equal(*a.lhs, *b.lhs);
		default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
		}
	}

	static XForm binary(Op op, Kind kind, const XForm& a, const XForm& b)
	{
		require_same_dim(a.dim(), b.dim());
		return XForm(std::make_shared<const Node>(Node{op, kind, a.dim(), std::nullopt, a.node_, b.node_,
		                                               1 + a.node_count() + b.node_count(),
		                                               1 + std::max(a.depth(), b.depth())}));
	}

	std::shared_ptr<const Node> node_;
};

inline XForm make_leaf(const BasePattern& b)
{
	return XForm(std::make_shared<const XForm::Node>(
		XForm::Node{Op::Leaf, Kind::Spatial, b.dim(), b, nullptr, nullptr, 1, 1}));
}

inline XForm make_not(const XForm& e)
{
	if (e.kind() != Kind::Spatial)
		throw Error(Errc::kind_error, "NOT applies only to spatial patterns");
	return XForm(std::make_shared<const XForm::Node>(
		XForm::Node{Op::Not, Kind::Spatial, e.dim(), std::nullopt, e.node_, nullptr, 1 + e.node_count(),
		            1 + e.depth()}));
}

inline XForm make_and(const XForm& a, const XForm& b)
{
	if (a.kind() != Kind::Spatial || b.kind() != Kind::Spatial)
		throw Error(Errc::kind_error, "AND applies only to spatial patterns");
	return XForm::binary(Op::And, Kind::Spatial, a, b);
}

inline XForm make_or(const XForm& a, const XForm& b)
{
	const bool spatial = a.kind() == Kind::Spatial && b.kind() == Kind::Spatial;
	return XForm::binary(Op::Or, spatial ? Kind::Spatial : Kind::General, a, b);
}

inline XForm make_next(const XForm& a, const XForm& b) { return XForm::binary(Op::Next, Kind::General, a, b); }

/// Left-associated fold; `items` must be nonempty.
template <typename Make>
XForm fold_left(const std::vector<XForm>& items, Make make)
{
	if (items.empty())
		throw Error(Errc::invalid_argument, "cannot fold an empty operand list");
	XForm acc = items.front();
	for (std::size_t i = 1; i < items.size(); ++i)
		acc = make(acc, items[i]);
	return acc;
}

inline Kind kind_of(const XForm& e) { return e.kind(); }

using Footing = std::set<BasePattern>;

inline void collect_footing(const XForm& e, Footing& out)
{
	if (e.op() == Op::Leaf) {
		out.insert(e.base());
		return;
	}
	collect_footing(e.lhs(), out);
	if (e.op() != Op::Not)
		collect_footing(e.rhs(), out);
}

inline Footing footing_of(const XForm& e)
{
	Footing out;
	collect_footing(e, out);
	return out;
}

inline Pattern leaf_denotation(const BasePattern& b, Interpretation interp,
                               std::uint64_t cap = default_enumeration_cap)
{
	Pattern out(b.dim());
	if (interp == Interpretation::Singleton) {
		out.insert(b);
		return out;
	}
	// enumerate the free (zero) components of b as a submask walk over ~b
	spatial_universe_size(b.dim(), cap);
	const std::uint64_t free = ~b.bits() & b.dim().mask();
	std::uint64_t sub = free;
	while (true) {
		out.insert(Sequence(b.dim(), {b.bits() | sub}));
		if (sub == 0)
			break;
		sub = (sub - 1) & free;
	}
	return out;
}

inline Pattern eval(const XForm& e, Interpretation interp, std::uint64_t cap = default_enumeration_cap)
{
	switch (e.op()) {
	case Op::Leaf: return leaf_denotation(e.base(), interp, cap);
	case Op::Not: return not_spatial(eval(e.lhs(), interp, cap), cap);
	case Op::And: return and_intersect(eval(e.lhs(), interp, cap), eval(e.rhs(), interp, cap));
	case Op::Or: return or_union(eval(e.lhs(), interp, cap), eval(e.rhs(), interp, cap));
	case Op::Next: return next_concat(eval(e.lhs(), interp, cap), eval(e.rhs(), interp, cap));
	}
	throw Error(Errc::invalid_argument, "unknown operator");
}

inline bool contains_next(const XForm& e)
{
	switch (e.op()) {
	case Op::Leaf: return false;
	case Op::Not: return contains_next(e.lhs());
	case Op::Next: return true;
	default: return contains_next(e.lhs()) || contains_next(e.rhs());
	}
}

/// Operands of a maximal NEXT chain, flattened regardless of parenthesization.
/// A non-Next expression yields itself alone.
inline std::vector<XForm> next_chain(const XForm& e)
{
	if (e.op() != Op::Next)
		return {e};
	auto out = next_chain(e.lhs());
	auto right = next_chain(e.rhs());
	out.insert(out.end(), right.begin(), right.end());
	return out;
}

inline bool is_sx(const XForm& e) { return !contains_next(e); }

inline bool is_tx(const XForm& e)
{
	if (e.op() != Op::Next)
		return false;
	for (const auto& part : next_chain(e))
		if (!is_sx(part))
			return false;
	return true;
}

} // namespace xform
