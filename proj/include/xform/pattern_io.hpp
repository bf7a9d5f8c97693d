#pragma once

// The ".pat" text format:
//
//   N=<n>
//   01 10 00     # one sequence per line, whitespace-separated bitstrings
//
// '#' starts a comment that runs to the end of the line; blank lines are
// ignored and repeated sequences collapse.

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "xform/pattern.hpp"

namespace xform {

namespace detail {

inline std::string_view trim(std::string_view s)
{
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
		s.remove_prefix(1);
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
		s.remove_suffix(1);
	return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s)
{
	std::vector<std::string_view> out;
	std::size_t i = 0;
	while (i < s.size()) {
		while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
			++i;
		std::size_t j = i;
		while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
			++j;
		if (j > i)
			out.push_back(s.substr(i, j - i));
		i = j;
	}
	return out;
}

} // namespace detail

/// Parses "01 10 00" into a sequence. Without `dim` the width of the first
/// bitstring decides.
inline Sequence parse_sequence(std::string_view text, std::optional<Dimension> dim = std::nullopt)
{
	auto tokens = detail::split_ws(text);
	if (tokens.empty())
		throw Error(Errc::syntax_error, "empty sequence");
	std::vector<BasePattern> steps;
	steps.reserve(tokens.size());
	for (auto tok : tokens) {
		BasePattern b = BasePattern::parse(tok);
		if (!dim)
			dim = b.dim();
		if (b.dim() != *dim)
			throw Error(Errc::width_error, "bitstring '" + std::string(tok) + "' does not have width " +
			                                   std::to_string(dim->bits()));
		steps.push_back(b);
	}
	return Sequence(steps);
}

inline Pattern parse_pat(std::string_view text)
{
	std::optional<Dimension> dim;
	std::optional<Pattern> out;
	std::size_t line_no = 0;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		std::size_t eol = text.find('\n', pos);
		if (eol == std::string_view::npos)
			eol = text.size();
		std::string_view line = text.substr(pos, eol - pos);
		pos = eol + 1;
		++line_no;
		if (auto hash = line.find('#'); hash != std::string_view::npos)
			line = line.substr(0, hash);
		line = detail::trim(line);
		if (line.empty())
			continue;
		auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
		if (!dim) {
			if (!line.starts_with("N="))
				throw Error(Errc::syntax_error, where() + "expected header 'N=<n>'");
			auto digits = detail::trim(line.substr(2));
			unsigned n = 0;
			auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
			if (ec != std::errc{} || ptr != digits.data() + digits.size())
				throw Error(Errc::syntax_error, where() + "bad dimension '" + std::string(digits) + "'");
			dim = Dimension(n);
			out.emplace(*dim);
			continue;
		}
		try {
			out->insert(parse_sequence(line, dim));
		} catch (const Error& e) {
			throw Error(e.code(), where() + e.what());
		}
	}
	if (!out)
		throw Error(Errc::syntax_error, "missing header 'N=<n>'");
	return *out;
}

inline Pattern read_pat_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(Errc::invalid_argument, "cannot open '" + path + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return parse_pat(buf.str());
}

/// Header line then one instance per line, sorted by (length, bits).
inline std::string format_pat(const Pattern& p)
{
	std::string out = "N=" + std::to_string(p.dim().bits()) + "\n";
	for (const auto& s : p.sorted()) {
		out += s.to_string();
		out += '\n';
	}
	return out;
}

} // namespace xform
