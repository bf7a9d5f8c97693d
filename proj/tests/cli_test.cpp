#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support/generators.hpp"
#include "support/golden.hpp"
#include "xform/parser.hpp"
#include "xform/pattern_io.hpp"

using namespace xform;

namespace {

golden::Outcome cli(const std::vector<std::string>& args) { return golden::run_cli(XFORM_CLI_PATH, args); }

std::filesystem::path scratch(const std::string& name)
{
	auto dir = std::filesystem::temp_directory_path() / "xform_cli_test";
	std::filesystem::create_directories(dir);
	return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// drop the trailing '#! ...' line
std::string form_line(const std::string& synth_out) { return synth_out.substr(0, synth_out.find('\n')); }

} // namespace

TEST(Golden, AllCases)
{
	auto cases = golden::load(XFORM_GOLDEN_DIR);
	ASSERT_GE(cases.size(), 20u);
	for (const auto& c : cases) {
		auto o = cli(c.args);
		EXPECT_EQ(o.rc, c.expected_rc) << c.name;
		EXPECT_EQ(o.out, c.expected_out) << c.name;
	}
}

TEST(Cli, HelpExitsZero)
{
	auto o = cli({"--help"});
	EXPECT_EQ(o.rc, 0);
	EXPECT_NE(o.out.find("synth"), std::string::npos);
}

TEST(Cli, ErrorExitCodes)
{
	EXPECT_EQ(cli({"eval", "--form", "#0 +"}).rc, 2);
	EXPECT_EQ(cli({"eval", "--form", "#01 + #1"}).rc, 2);
	EXPECT_EQ(cli({"eval", "--form", "#0", "--interp", "bogus"}).rc, 2);
	EXPECT_EQ(cli({"synth", "--pattern", "/nonexistent.pat"}).rc, 2);
	EXPECT_EQ(cli({"eval", "--form", "#" + std::string(25, '1'), "--interp", "mask"}).rc, 3);
	EXPECT_EQ(cli({"check-equiv", "--form", "#0"}).rc, 2);
	EXPECT_EQ(cli({"run", "--form", "#0 -> #1"}).rc, 2);
	EXPECT_EQ(cli({"run", "--form", "#0", "--input", "01"}).rc, 2);
}

TEST(Cli, EvalOutputReadsBackAsPat)
{
	gen::Rng rng(97);
	for (int i = 0; i < 20; ++i) {
		Dimension d(static_cast<unsigned>(gen::uniform(rng, 1, 2)));
		XForm e = gen::form(rng, d, 4, 3);
		auto o = cli({"eval", "--form", print(e)});
		ASSERT_EQ(o.rc, 0);
		EXPECT_EQ(parse_pat(o.out), eval(e, Interpretation::Singleton)) << print(e);
		EXPECT_EQ(format_pat(parse_pat(o.out)), o.out);
	}
}

TEST(Cli, SynthOutputReparsesToTarget)
{
	gen::Rng rng(101);
	const char* interps[] = {"singleton", "mask"};
	for (int i = 0; i < 15; ++i) {
		Dimension d(static_cast<unsigned>(gen::uniform(rng, 1, 2)));
		Pattern target = gen::pattern(rng, d, 3, 6, 1);
		auto path = scratch("target.pat");
		write(path, format_pat(target));
		for (const char* interp : interps) {
			auto o = cli({"synth", "--pattern", path.string(), "--interp", interp});
			ASSERT_EQ(o.rc, 0);
			ASSERT_NE(o.out.find("#! exact=true"), std::string::npos);
			XForm e = parse(form_line(o.out));
			EXPECT_EQ(eval(e, interp[0] == 'm' ? Interpretation::Mask : Interpretation::Singleton), target);
			// the whole output is a valid .xf file too
			auto xf = scratch("out.xf");
			write(xf, o.out);
			EXPECT_EQ(cli({"check-equiv", "--form", print(e), "--form-file", xf.string(), "--interp", interp}).rc,
			          0);
		}
	}
}

TEST(Cli, CheckEquivWitnessIsSmallest)
{
	auto o = cli({"check-equiv", "--form", "#0 -> #0", "--form", "(#0 -> #0) + (#0 -> #0 -> #0)", "--lmax", "3"});
	EXPECT_EQ(o.rc, 1);
	EXPECT_EQ(o.out, "DIFFER\n0 0 0\n");
	// beyond the bound the difference is invisible
	o = cli({"check-equiv", "--form", "#0 -> #0", "--form", "(#0 -> #0) + (#0 -> #0 -> #0)", "--lmax", "2"});
	EXPECT_EQ(o.rc, 0);
	EXPECT_EQ(o.out, "EQUIV\n");
}

TEST(Cli, RunStreamAgreesWithSuffixRuns)
{
	auto o = cli({"run", "--form", "#1 -> #0", "--input", "1 0 1 0 0", "--stream"});
	EXPECT_EQ(o.rc, 0);
	EXPECT_EQ(o.out, "false true false true false\n");
}
