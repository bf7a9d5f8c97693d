#pragma once

// Text syntax for X-forms.
//
//   xform := next
//   next  := or  ( "->" or  )*
//   or    := and ( "+"  and )*
//   and   := unary ( "." unary )*
//   unary := "!" unary | atom
//   atom  := BITS | "(" xform ")"
//   BITS  := "#" [01]+
//
// Binary operators associate to the left. Whitespace between tokens is
// ignored. Leftmost bit of a literal is component 1.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "xform/ast.hpp"

namespace xform {

namespace detail {

class Parser {
public:
	Parser(std::string_view src, std::optional<Dimension> dim) : src_(src), dim_(dim) {}

	XForm run()
	{
		XForm e = parse_next();
		skip_ws();
		if (pos_ < src_.size())
			fail(pos_, src_[pos_] == ')' ? "unbalanced ')'" : "unexpected trailing input");
		return e;
	}

private:
	[[noreturn]] void fail(std::size_t at, std::string msg, Errc kind = Errc::syntax_error) const
	{
		throw ParseError(Diagnostic{at, std::move(msg), kind});
	}

	void skip_ws()
	{
		while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
			++pos_;
	}

	bool accept(std::string_view tok)
	{
		skip_ws();
		if (src_.substr(pos_).starts_with(tok)) {
			pos_ += tok.size();
			return true;
		}
		return false;
	}

	XForm parse_next()
	{
		XForm acc = parse_or();
		while (true) {
			skip_ws();
			if (!accept("->"))
				return acc;
			acc = make_next(acc, parse_or());
		}
	}

	XForm parse_or()
	{
		XForm acc = parse_and();
		while (true) {
			skip_ws();
			if (!accept("+"))
				return acc;
			acc = make_or(acc, parse_and());
		}
	}

	XForm parse_and()
	{
		XForm acc = parse_unary();
		while (true) {
			skip_ws();
			const std::size_t at = pos_;
			if (!accept("."))
				return acc;
			XForm rhs = parse_unary();
			if (acc.kind() != Kind::Spatial || rhs.kind() != Kind::Spatial)
				fail(at, "'.' (AND) applies only to spatial operands", Errc::kind_error);
			acc = make_and(acc, rhs);
		}
	}

	struct DepthGuard {
		Parser& p;
		explicit DepthGuard(Parser& parser, std::size_t at) : p(parser)
		{
			if (++p.depth_ > max_nesting)
				p.fail(at, "expression nested too deeply");
		}
		~DepthGuard() { --p.depth_; }
	};

	XForm parse_unary()
	{
		skip_ws();
		const std::size_t at = pos_;
		DepthGuard guard(*this, at);
		if (accept("!")) {
			XForm operand = parse_unary();
			if (operand.kind() != Kind::Spatial)
				fail(at, "'!' (NOT) applies only to spatial operands", Errc::kind_error);
			return make_not(operand);
		}
		return parse_atom();
	}

	XForm parse_atom()
	{
		skip_ws();
		if (pos_ >= src_.size())
			fail(pos_, "unexpected end of input, expected '#bits' or '('");
		const std::size_t at = pos_;
		if (accept("(")) {
			XForm inner = parse_next();
			skip_ws();
			if (!accept(")"))
				fail(pos_, "expected ')' to close '(' at offset " + std::to_string(at));
			return inner;
		}
		if (src_[pos_] != '#')
			fail(pos_, std::string("unexpected character '") + printable(src_[pos_]) + "'");
		++pos_;
		const std::size_t start = pos_;
		while (pos_ < src_.size() && (src_[pos_] == '0' || src_[pos_] == '1'))
			++pos_;
		const std::size_t width = pos_ - start;
		if (width == 0)
			fail(at, "'#' must be followed by at least one 0 or 1");
		if (width > Dimension::max_bits)
			fail(at, "literal wider than 64 bits", Errc::width_error);
		BasePattern b = BasePattern::parse(src_.substr(start, width));
		if (!dim_)
			dim_ = b.dim();
		else if (b.dim() != *dim_)
			fail(at, "literal has width " + std::to_string(width) + ", expected " + std::to_string(dim_->bits()),
			     Errc::width_error);
		return make_leaf(b);
	}

	static std::string printable(char c)
	{
		if (std::isprint(static_cast<unsigned char>(c)))
			return std::string(1, c);
		static const char* hex = "0123456789abcdef";
		const auto u = static_cast<unsigned char>(c);
		return std::string("\\x") + hex[u >> 4] + hex[u & 15];
	}

	static constexpr std::size_t max_nesting = 2000;

	std::string_view src_;
	std::optional<Dimension> dim_;
	std::size_t pos_ = 0;
	std::size_t depth_ = 0;
};

inline int precedence(Op op)
{
	switch (op) {
	case Op::Next: return 0;
	case Op::Or: return 1;
	case Op::And: return 2;
	case Op::Not: return 3;
	case Op::Leaf: return 4;
	}
	return 4;
}

inline void print_to(const XForm& e, std::string& out)
{
	auto wrapped = [&](const XForm& sub, bool parens) {
		if (parens)
			out += '(';
		print_to(sub, out);
		if (parens)
			out += ')';
	};
	switch (e.op()) {
	case Op::Leaf:
		out += '#';
		out += e.base().to_string();
		return;
	case Op::Not:
		out += '!';
		wrapped(e.lhs(), precedence(e.lhs().op()) < precedence(Op::Not));
		return;
	default: {
		const int p = precedence(e.op());
		const char* glyph = e.op() == Op::Next ? " -> " : e.op() == Op::Or ? " + " : " . ";
		wrapped(e.lhs(), precedence(e.lhs().op()) < p);
		out += glyph;
		// a right operand at equal precedence needs parens to keep the tree shape
		wrapped(e.rhs(), precedence(e.rhs().op()) <= p);
		return;
	}
	}
}

} // namespace detail

/// Parses an X-form. When `expected_dim` is absent the first literal fixes
/// the width. Throws ParseError.
inline XForm parse(std::string_view src, std::optional<Dimension> expected_dim = std::nullopt)
{
	return detail::Parser(src, expected_dim).run();
}

/// Minimal-parenthesis rendering; parse(print(e)) == e.
inline std::string print(const XForm& e)
{
	std::string out;
	detail::print_to(e, out);
	return out;
}

/// Blanks out "#!" comments (to end of line) in the contents of an .xf file,
/// keeping byte offsets stable for diagnostics.
inline std::string strip_xf_comments(std::string_view text)
{
	std::string out(text);
	std::size_t pos = 0;
	while ((pos = out.find("#!", pos)) != std::string::npos) {
		const std::size_t eol = out.find('\n', pos);
		const std::size_t end = eol == std::string::npos ? out.size() : eol;
		for (std::size_t i = pos; i < end; ++i)
			out[i] = ' ';
		pos = end;
	}
	return out;
}

} // namespace xform
