#pragma once

// Perception machines: an operational model of a learning machine that
// perceives the pattern denoted by an X-form.
//
// Every spatial subexpression becomes a spatial perception bit, a predicate on
// one input whose supporting set is the subexpression's denotation. The
// general structure above the maximal spatial subtrees becomes a
// nondeterministic automaton whose transitions are guarded by spatial bits:
// a spatial subtree is one guarded transition, NEXT concatenates, and a
// general OR alternates. Each NEXT chain and each general OR adds one more
// bit, so compiling a bigger expression always grows the bit registry.
//
// Acceptance is whole-sequence: the top bit is 1 exactly when the automaton
// ends in an accepting state after the last input.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "xform/ast.hpp"

namespace xform {

using BitId = std::size_t;
using StateId = std::size_t;

struct SpatialBit {
	BitId id;
	Pattern support;

	bool fires(const BasePattern& b) const { return support.contains(b); }
};

/// Fires when the inputs ending at the current step were perceived, in
/// consecutive order, by the bits of `chain`.
struct TemporalBit {
	BitId id;
	std::vector<BitId> chain;
};

/// Fires when any of `branches` fires; created by OR over general operands.
struct AlternationBit {
	BitId id;
	std::vector<BitId> branches;
};

using PerceptionBit = std::variant<SpatialBit, TemporalBit, AlternationBit>;

inline BitId bit_id(const PerceptionBit& bit)
{
	return std::visit([](const auto& b) { return b.id; }, bit);
}

struct Transition {
	StateId from;
	BitId guard;
	StateId to;

	bool operator==(const Transition&) const = default;
};

struct StepRecord {
	BasePattern input;
	std::vector<BitId> fired;
	std::vector<StateId> states;
};

struct RunTrace {
	std::vector<StepRecord> steps;
	bool accepted = false;
};

class PerceptionMachine {
public:
	Dimension dim() const noexcept { return dim_; }
	const std::vector<PerceptionBit>& bits() const noexcept { return bits_; }
	const std::vector<Transition>& transitions() const noexcept { return transitions_; }
	std::size_t state_count() const noexcept { return state_count_; }
	StateId initial_state() const noexcept { return initial_; }
	const std::vector<StateId>& accepting() const noexcept { return accepting_; }
	BitId top_bit() const noexcept { return top_bit_; }

	std::size_t spatial_bit_count() const { return count_of<SpatialBit>(); }
	std::size_t temporal_bit_count() const { return count_of<TemporalBit>(); }

	const PerceptionBit& bit(BitId id) const { return bits_.at(id); }

	bool is_accepting(StateId s) const { return std::binary_search(accepting_.begin(), accepting_.end(), s); }

	/// Ids of the spatial bits that fire on `b`, ascending.
	std::vector<BitId> fired_bits(const BasePattern& b) const
	{
		std::vector<BitId> out;
		for (const auto& bit : bits_)
			if (const auto* sb = std::get_if<SpatialBit>(&bit); sb && sb->fires(b))
				out.push_back(sb->id);
		return out;
	}

	/// Successor state set of `active` on input `b` (sorted, unique).
	std::vector<StateId> step(const std::vector<StateId>& active, const std::vector<BitId>& fired) const
	{
		std::vector<StateId> next;
		for (const auto& t : transitions_)
			if (std::binary_search(active.begin(), active.end(), t.from) &&
			    std::binary_search(fired.begin(), fired.end(), t.guard))
				next.push_back(t.to);
		std::sort(next.begin(), next.end());
		next.erase(std::unique(next.begin(), next.end()), next.end());
		return next;
	}

	bool any_accepting(const std::vector<StateId>& states) const
	{
		return std::any_of(states.begin(), states.end(), [&](StateId s) { return is_accepting(s); });
	}

private:
	friend class MachineBuilder;

	explicit PerceptionMachine(Dimension dim) : dim_(dim) {}

	template <typename T>
	std::size_t count_of() const
	{
		return static_cast<std::size_t>(
			std::count_if(bits_.begin(), bits_.end(), [](const auto& b) { return std::holds_alternative<T>(b); }));
	}

	Dimension dim_;
	std::vector<PerceptionBit> bits_;
	std::vector<Transition> transitions_;
	std::size_t state_count_ = 0;
	StateId initial_ = 0;
	std::vector<StateId> accepting_;
	BitId top_bit_ = 0;
};

/// Builds a PerceptionMachine from an X-form. Automaton fragments keep two
/// invariants: the start state has no incoming transitions and is never
/// accepting (every denoted sequence is nonempty), so concatenation and
/// alternation can reuse the start state's outgoing edges without epsilons.
class MachineBuilder {
public:
	MachineBuilder(Interpretation interp, std::uint64_t cap) : interp_(interp), cap_(cap) {}

	PerceptionMachine build(const XForm& e)
	{
		PerceptionMachine m(e.dim());
		machine_ = &m;
		Fragment f = compile(e);

		// renumber the surviving states densely, start state first
		std::vector<StateId> remap(next_state_, npos);
		StateId next = 0;
		remap[f.start] = next++;
		for (StateId s : f.states)
			if (remap[s] == npos)
				remap[s] = next++;
		m.state_count_ = next;
		m.initial_ = 0;
		for (const auto& t : f.transitions)
			m.transitions_.push_back(Transition{remap[t.from], t.guard, remap[t.to]});
		for (StateId s : f.accepting)
			m.accepting_.push_back(remap[s]);
		std::sort(m.accepting_.begin(), m.accepting_.end());
		m.accepting_.erase(std::unique(m.accepting_.begin(), m.accepting_.end()), m.accepting_.end());
		m.top_bit_ = f.bit;
		machine_ = nullptr;
		return m;
	}

private:
	static constexpr StateId npos = static_cast<StateId>(-1);

	struct Fragment {
		StateId start;
		std::vector<StateId> states; // excluding start
		std::vector<StateId> accepting;
		std::vector<Transition> transitions;
		BitId bit;
	};

	StateId new_state() { return next_state_++; }

	BitId add_bit(PerceptionBit bit)
	{
		auto& bits = machine_->bits_;
		std::visit([&](auto& b) { b.id = bits.size(); }, bit);
		bits.push_back(std::move(bit));
		return bits.size() - 1;
	}

	/// Registers a spatial bit for `e` and every spatial subexpression below it.
	BitId spatial_bits(const XForm& e)
	{
		if (e.op() == Op::Not) {
			spatial_bits(e.lhs());
		} else if (e.op() != Op::Leaf) {
			spatial_bits(e.lhs());
			spatial_bits(e.rhs());
		}
		return add_bit(SpatialBit{0, eval(e, interp_, cap_)});
	}

	Fragment compile(const XForm& e)
	{
		if (e.kind() == Kind::Spatial) {
			Fragment f{new_state(), {}, {}, {}, spatial_bits(e)};
			StateId end = new_state();
			f.states.push_back(end);
			f.accepting.push_back(end);
			f.transitions.push_back(Transition{f.start, f.bit, end});
			return f;
		}
		if (e.op() == Op::Next) {
			std::vector<Fragment> parts;
			for (const auto& operand : next_chain(e))
				parts.push_back(compile(operand));
			Fragment acc = std::move(parts.front());
			std::vector<BitId> chain{acc.bit};
			for (std::size_t i = 1; i < parts.size(); ++i) {
				chain.push_back(parts[i].bit);
				acc = concat(std::move(acc), std::move(parts[i]));
			}
			acc.bit = add_bit(TemporalBit{0, std::move(chain)});
			return acc;
		}
		// general OR
		Fragment a = compile(e.lhs());
		Fragment b = compile(e.rhs());
		const BitId bit = add_bit(AlternationBit{0, {a.bit, b.bit}});
		Fragment f{new_state(), {}, {}, {}, bit};
		for (Fragment* part : {&a, &b}) {
			for (const auto& t : part->transitions)
				f.transitions.push_back(Transition{t.from == part->start ? f.start : t.from, t.guard, t.to});
			f.states.insert(f.states.end(), part->states.begin(), part->states.end());
			f.accepting.insert(f.accepting.end(), part->accepting.begin(), part->accepting.end());
		}
		return f;
	}

	/// Drops b's start state and re-roots its outgoing edges at every
	/// accepting state of a.
	static Fragment concat(Fragment a, Fragment b)
	{
		Fragment f{a.start, std::move(a.states), {}, std::move(a.transitions), a.bit};
		for (const auto& t : b.transitions) {
			if (t.from == b.start) {
				for (StateId fin : a.accepting)
					f.transitions.push_back(Transition{fin, t.guard, t.to});
			} else {
				f.transitions.push_back(t);
			}
		}
		f.states.insert(f.states.end(), b.states.begin(), b.states.end());
		f.accepting = std::move(b.accepting);
		return f;
	}

	Interpretation interp_;
	std::uint64_t cap_;
	PerceptionMachine* machine_ = nullptr;
	StateId next_state_ = 0;
};

inline PerceptionMachine compile(const XForm& e, Interpretation interp, std::uint64_t cap = default_enumeration_cap)
{
	return MachineBuilder(interp, cap).build(e);
}

inline RunTrace run(const PerceptionMachine& m, const Sequence& s)
{
	require_same_dim(m.dim(), s.dim());
	RunTrace trace;
	std::vector<StateId> active{m.initial_state()};
	for (std::size_t t = 0; t < s.length(); ++t) {
		BasePattern in = s.step(t);
		auto fired = m.fired_bits(in);
		active = m.step(active, fired);
		trace.steps.push_back(StepRecord{in, std::move(fired), active});
	}
	trace.accepted = m.any_accepting(active);
	return trace;
}

/// output[t] is true when some suffix of the first t+1 inputs is accepted.
inline std::vector<bool> run_stream(const PerceptionMachine& m, const Sequence& s)
{
	require_same_dim(m.dim(), s.dim());
	std::vector<bool> out;
	std::vector<StateId> active;
	for (std::size_t t = 0; t < s.length(); ++t) {
		active.insert(std::lower_bound(active.begin(), active.end(), m.initial_state()), m.initial_state());
		active.erase(std::unique(active.begin(), active.end()), active.end());
		active = m.step(active, m.fired_bits(s.step(t)));
		out.push_back(m.any_accepting(active));
	}
	return out;
}

/// The top bit when the machine is non-constant on the bounded universe,
/// i.e. it accepts some sequences and rejects others; otherwise nullopt.
inline std::optional<BitId> find_perception_bit(const PerceptionMachine& m, const LengthBound& bound)
{
	bool seen_accept = false, seen_reject = false;
	for_each_sequence(m.dim(), bound, [&](const Sequence& s) {
		(run(m, s).accepted ? seen_accept : seen_reject) = true;
		return !(seen_accept && seen_reject);
	});
	if (seen_accept && seen_reject)
		return m.top_bit();
	return std::nullopt;
}

/// The outermost temporal bit, present iff the source form used NEXT.
inline std::optional<BitId> find_temporal_bit(const PerceptionMachine& m)
{
	for (auto it = m.bits().rbegin(); it != m.bits().rend(); ++it)
		if (std::holds_alternative<TemporalBit>(*it))
			return bit_id(*it);
	return std::nullopt;
}

namespace detail {

template <typename Range>
std::string join_ids(const Range& ids)
{
	std::string out;
	for (auto id : ids) {
		if (!out.empty())
			out += ',';
		out += std::to_string(id);
	}
	return out;
}

} // namespace detail

/// One line per step, "t=<k> in=<bits> fired=<ids> states=<ids>", then
/// "accepted=<true|false>".
inline std::string format_trace(const RunTrace& trace)
{
	std::string out;
	for (std::size_t t = 0; t < trace.steps.size(); ++t) {
		const auto& r = trace.steps[t];
		out += "t=" + std::to_string(t + 1) + " in=" + r.input.to_string() + " fired=" + detail::join_ids(r.fired) +
		       " states=" + detail::join_ids(r.states) + "\n";
	}
	out += std::string("accepted=") + (trace.accepted ? "true" : "false") + "\n";
	return out;
}

} // namespace xform
