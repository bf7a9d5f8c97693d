// xform: evaluate, synthesize, compare, compile and run X-forms.
//
// Exit codes: 0 success, 1 negative verdict (DIFFER, rejected input),
// 2 usage/parse/shape errors, 3 enumeration guard.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xform/xform.hpp"

namespace {

using namespace xform;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_error = 2;
constexpr int exit_guard = 3;

struct Options {
	std::vector<std::string> forms;
	std::vector<std::string> form_files;
	std::string pattern_path;
	std::string input;
	std::string interp = "singleton";
	std::string mode = "x";
	std::size_t l_max = 4;
	std::uint64_t cap = default_enumeration_cap;
	bool stream = false;
};

Interpretation interpretation(const Options& opt)
{
	return opt.interp == "mask" ? Interpretation::Mask : Interpretation::Singleton;
}

std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(Errc::invalid_argument, "cannot open '" + path + "'");
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

/// Inline forms first, then form files, in command-line order within each.
std::vector<XForm> load_forms(const Options& opt)
{
	std::vector<XForm> out;
	for (const auto& text : opt.forms)
		out.push_back(parse(text));
	for (const auto& path : opt.form_files)
		out.push_back(parse(strip_xf_comments(read_file(path))));
	return out;
}

XForm load_single_form(const Options& opt)
{
	auto forms = load_forms(opt);
	if (forms.size() != 1)
		throw Error(Errc::invalid_argument, "expected exactly one of --form or --form-file");
	return forms.front();
}

int cmd_eval(const Options& opt)
{
	XForm e = load_single_form(opt);
	std::cout << format_pat(eval(e, interpretation(opt), opt.cap));
	return exit_ok;
}

int cmd_synth(const Options& opt)
{
	Pattern target = read_pat_file(opt.pattern_path);
	const Interpretation interp = interpretation(opt);
	SynthOptions so;
	so.cap = opt.cap;
	std::optional<SynthResult> result;
	if (opt.mode == "sx")
		result = synth_sx(target, interp, so);
	else if (opt.mode == "tx")
		result = synth_tx_projection(target, interp, so);
	else
		result = synth_x(target, interp, so);
	std::cout << print(result->form) << "\n"
	          << "#! exact=" << (result->exact ? "true" : "false") << " footing=" << result->footing_size << "\n";
	return exit_ok;
}

int cmd_check_equiv(const Options& opt)
{
	auto forms = load_forms(opt);
	if (forms.size() != 2)
		throw Error(Errc::invalid_argument, "check-equiv needs exactly two forms");
	require_same_dim(forms[0].dim(), forms[1].dim());
	const Interpretation interp = interpretation(opt);
	const Pattern a = eval(forms[0], interp, opt.cap);
	const Pattern b = eval(forms[1], interp, opt.cap);
	std::optional<Sequence> witness;
	for_each_sequence(a.dim(), LengthBound{opt.l_max, opt.cap}, [&](const Sequence& s) {
		if (a.contains(s) != b.contains(s)) {
			witness = s;
			return false;
		}
		return true;
	});
	if (!witness) {
		std::cout << "EQUIV\n";
		return exit_ok;
	}
	std::cout << "DIFFER\n" << witness->to_string() << "\n";
	return exit_negative;
}

int cmd_compile(const Options& opt)
{
	XForm e = load_single_form(opt);
	PerceptionMachine m = compile(e, interpretation(opt), opt.cap);
	std::cout << "dim=" << m.dim().bits() << "\n"
	          << "bits=" << m.bits().size() << "\n"
	          << "spatial_bits=" << m.spatial_bit_count() << "\n"
	          << "temporal_bits=" << m.temporal_bit_count() << "\n"
	          << "states=" << m.state_count() << "\n"
	          << "transitions=" << m.transitions().size() << "\n"
	          << "accepting=" << m.accepting().size() << "\n"
	          << "top_bit=" << m.top_bit() << "\n";
	return exit_ok;
}

int cmd_run(const Options& opt)
{
	XForm e = load_single_form(opt);
	PerceptionMachine m = compile(e, interpretation(opt), opt.cap);
	std::vector<Sequence> inputs;
	if (!opt.pattern_path.empty()) {
		Pattern p = read_pat_file(opt.pattern_path);
		require_same_dim(m.dim(), p.dim());
		inputs = p.sorted();
	} else {
		inputs.push_back(parse_sequence(opt.input, m.dim()));
	}
	if (inputs.empty())
		throw Error(Errc::invalid_argument, "no input sequences");

	if (opt.stream) {
		for (const auto& s : inputs) {
			auto flags = run_stream(m, s);
			for (std::size_t i = 0; i < flags.size(); ++i)
				std::cout << (i ? " " : "") << (flags[i] ? "true" : "false");
			std::cout << "\n";
		}
		return exit_ok;
	}
	bool all = true;
	for (const auto& s : inputs) {
		RunTrace trace = run(m, s);
		std::cout << format_trace(trace);
		all = all && trace.accepted;
	}
	return all ? exit_ok : exit_negative;
}

} // namespace

int main(int argc, char** argv)
{
	Options opt;
	CLI::App app{"X-form pattern algebra: evaluate, synthesize, compare, compile and run.\n"
	             "Operators: '!' NOT, '.' AND, '+' OR, '->' NEXT (tightest to loosest); literals '#0110'."};
	app.require_subcommand(1);

	const std::vector<std::string> interps{"singleton", "mask"};

	auto add_form = [&](CLI::App* sub, bool many) {
		auto* f = sub->add_option("--form", opt.forms, "X-form text");
		auto* ff = sub->add_option("--form-file", opt.form_files, "X-form file (.xf, '#!' comments)")
		               ->check(CLI::ExistingFile);
		if (!many) {
			f->expected(1);
			ff->expected(1);
			f->excludes(ff);
		}
	};
	auto add_interp = [&](CLI::App* sub) {
		sub->add_option("--interp", opt.interp, "leaf semantics: singleton|mask")
			->check(CLI::IsMember(interps))
			->capture_default_str();
		sub->add_option("--cap", opt.cap, "enumeration cap")->capture_default_str();
	};

	auto* eval_cmd = app.add_subcommand("eval", "print the pattern denoted by a form");
	add_form(eval_cmd, false);
	add_interp(eval_cmd);
	eval_cmd->add_option("--lmax", opt.l_max, "maximum sequence length")->check(CLI::PositiveNumber);

	auto* synth_cmd = app.add_subcommand("synth", "synthesize a form denoting a .pat pattern");
	synth_cmd->add_option("--pattern", opt.pattern_path, ".pat file")->required()->check(CLI::ExistingFile);
	synth_cmd->add_option("--mode", opt.mode, "sx|tx|x")
		->check(CLI::IsMember({"sx", "tx", "x"}))
		->capture_default_str();
	add_interp(synth_cmd);

	auto* equiv_cmd = app.add_subcommand("check-equiv", "compare two forms on all sequences up to --lmax");
	add_form(equiv_cmd, true);
	add_interp(equiv_cmd);
	equiv_cmd->add_option("--lmax", opt.l_max, "maximum sequence length")
		->check(CLI::PositiveNumber)
		->capture_default_str();

	auto* compile_cmd = app.add_subcommand("compile", "print perception machine statistics");
	add_form(compile_cmd, false);
	add_interp(compile_cmd);

	auto* run_cmd = app.add_subcommand("run", "run the perception machine on an input sequence");
	add_form(run_cmd, false);
	add_interp(run_cmd);
	auto* input = run_cmd->add_option("--input", opt.input, "sequence, e.g. \"01 10\"");
	auto* pat = run_cmd->add_option("--pattern", opt.pattern_path, ".pat file of input sequences")
	                ->check(CLI::ExistingFile);
	input->excludes(pat);
	run_cmd->add_flag("--stream", opt.stream, "report suffix matches at every step");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? exit_ok : exit_error;
	}

	if (run_cmd->parsed() && opt.input.empty() && opt.pattern_path.empty()) {
		std::cerr << "error: run needs --input or --pattern\n";
		return exit_error;
	}

	try {
		if (eval_cmd->parsed())
			return cmd_eval(opt);
		if (synth_cmd->parsed())
			return cmd_synth(opt);
		if (equiv_cmd->parsed())
			return cmd_check_equiv(opt);
		if (compile_cmd->parsed())
			return cmd_compile(opt);
		return cmd_run(opt);
	} catch (const Error& e) {
		std::cerr << "error: " << e.what() << "\n";
		return e.code() == Errc::enumeration_guard ? exit_guard : exit_error;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_error;
	}
}
