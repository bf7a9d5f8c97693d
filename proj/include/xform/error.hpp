#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xform {

enum class Errc {
	dimension_mismatch,
	not_spatial,
	enumeration_guard,
	bound_too_small,
	kind_error,
	syntax_error,
	width_error,
	empty_target,
	mixed_lengths,
	invalid_argument,
};

inline std::string_view errc_name(Errc code) noexcept
{
	switch (code) {
	case Errc::dimension_mismatch: return "DimensionMismatch";
	case Errc::not_spatial: return "NotSpatial";
	case Errc::enumeration_guard: return "EnumerationGuard";
	case Errc::bound_too_small: return "BoundTooSmall";
	case Errc::kind_error: return "KindError";
	case Errc::syntax_error: return "SyntaxError";
	case Errc::width_error: return "WidthError";
	case Errc::empty_target: return "EmptyTarget";
	case Errc::mixed_lengths: return "MixedLengths";
	case Errc::invalid_argument: return "InvalidArgument";
	}
	return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
	Error(Errc code, const std::string& message)
		: std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

	Errc code() const noexcept { return code_; }

private:
	Errc code_;
};

struct Diagnostic {
	std::size_t byte_offset = 0;
	std::string message;
	Errc kind = Errc::syntax_error;
};

/// Raised by the X-form parser; the diagnostic offset always points into
/// (or one past the end of) the source text.
class ParseError : public Error {
public:
	explicit ParseError(Diagnostic diag)
		: Error(diag.kind, "at offset " + std::to_string(diag.byte_offset) + ": " + diag.message),
		  diag_(std::move(diag)) {}

	const Diagnostic& diagnostic() const noexcept { return diag_; }

private:
	Diagnostic diag_;
};

} // namespace xform
