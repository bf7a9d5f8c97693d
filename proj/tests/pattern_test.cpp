#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "xform/pattern.hpp"
#include "xform/pattern_io.hpp"

using namespace xform;

namespace {

Pattern P(const std::string& text) { return parse_pat(text); }

Errc error_code(auto&& fn)
{
	try {
		fn();
	} catch (const Error& e) {
		return e.code();
	}
	ADD_FAILURE() << "expected an Error";
	return Errc::invalid_argument;
}

} // namespace

TEST(BasePattern, BitOrderIsLeftmostFirst)
{
	BasePattern b = BasePattern::parse("100");
	EXPECT_TRUE(b.component(1));
	EXPECT_FALSE(b.component(2));
	EXPECT_FALSE(b.component(3));
	EXPECT_EQ(b.to_string(), "100");
	EXPECT_EQ(BasePattern::unit(Dimension(3), 1), b);
	EXPECT_LT(BasePattern::parse("011"), BasePattern::parse("100"));
}

TEST(BasePattern, RejectsBadInput)
{
	EXPECT_EQ(error_code([] { BasePattern::parse("012"); }), Errc::syntax_error);
	EXPECT_EQ(error_code([] { BasePattern::parse(""); }), Errc::width_error);
	EXPECT_EQ(error_code([] { Dimension(0); }), Errc::invalid_argument);
	EXPECT_EQ(error_code([] { Dimension(65); }), Errc::invalid_argument);
	EXPECT_EQ(error_code([] { BasePattern(Dimension(2), 4); }), Errc::width_error);
}

TEST(BasePattern, WideDimensionsForSetOperations)
{
	Dimension d(64);
	BasePattern ones = BasePattern::all_ones(d);
	EXPECT_EQ(ones.to_string(), std::string(64, '1'));
	Pattern p(d), q(d);
	p.insert(ones);
	q.insert(BasePattern(d, 5));
	EXPECT_EQ(or_union(p, q).size(), 2u);
	EXPECT_EQ(next_concat(p, q).size(), 1u);
	EXPECT_EQ(error_code([&] { not_spatial(p); }), Errc::enumeration_guard);
}

TEST(OrUnion, Examples)
{
	Pattern simple = P("N=1\n0 1 0 0 1\n");
	EXPECT_EQ(or_union(simple, Pattern(Dimension(1))), simple);
	EXPECT_EQ(or_union(simple, simple), simple);
	EXPECT_EQ(or_union(P("N=2\n00"), P("N=2\n01")), P("N=2\n00\n01"));
	EXPECT_EQ(error_code([] { or_union(P("N=1\n0"), P("N=2\n00")); }), Errc::dimension_mismatch);
}

TEST(AndIntersect, Examples)
{
	EXPECT_EQ(and_intersect(P("N=2\n00\n01"), P("N=2\n01\n10")), P("N=2\n01"));
	Pattern p = P("N=2\n00\n01 10");
	EXPECT_EQ(and_intersect(p, p), p);
	EXPECT_TRUE(and_intersect(P("N=1\n0 1"), P("N=1\n1 0")).empty());
	EXPECT_EQ(error_code([] { and_intersect(P("N=1\n0"), P("N=2\n00")); }), Errc::dimension_mismatch);
}

TEST(NotSpatial, Examples)
{
	EXPECT_EQ(not_spatial(P("N=2\n00\n01\n10")), P("N=2\n11"));
	EXPECT_EQ(not_spatial(Pattern(Dimension(1))), P("N=1\n0\n1"));
	Pattern p = P("N=2\n01");
	EXPECT_EQ(not_spatial(not_spatial(p)), p);
	EXPECT_EQ(not_spatial(p).size(), 4u - 1u);
}

TEST(NotSpatial, Errors)
{
	EXPECT_EQ(error_code([] { not_spatial(P("N=1\n0 1")); }), Errc::not_spatial);
	EXPECT_EQ(error_code([] { not_spatial(Pattern(Dimension(25))); }), Errc::enumeration_guard);
	EXPECT_EQ(error_code([] { not_spatial(Pattern(Dimension(10)), 512); }), Errc::enumeration_guard);
}

TEST(NotBounded, Examples)
{
	EXPECT_EQ(not_bounded(P("N=1\n0"), LengthBound{1}), P("N=1\n1"));
	EXPECT_EQ(not_bounded(P("N=1\n0\n1"), LengthBound{2}), P("N=1\n0 0\n0 1\n1 0\n1 1"));

	// oracle: the full universe of length <= 2
	Pattern all = not_bounded(Pattern(Dimension(1)), LengthBound{2});
	auto expected = oracle::universe(1, 2);
	ASSERT_EQ(all.size(), expected.size());
	ASSERT_EQ(all.size(), 6u);
	for (const auto& w : expected)
		EXPECT_TRUE(all.contains(Sequence(Dimension(1), w)));
}

TEST(NotBounded, Errors)
{
	EXPECT_EQ(error_code([] { not_bounded(P("N=1\n0 1 1"), LengthBound{2}); }), Errc::bound_too_small);
	EXPECT_EQ(error_code([] { not_bounded(Pattern(Dimension(4)), LengthBound{7}); }), Errc::enumeration_guard);
	EXPECT_EQ(error_code([] { not_bounded(Pattern(Dimension(2)), LengthBound{3, 50}); }), Errc::enumeration_guard);
}

TEST(NextConcat, Examples)
{
	EXPECT_EQ(next_concat(P("N=1\n1"), P("N=1\n0")), P("N=1\n1 0"));
	EXPECT_EQ(next_concat(P("N=1\n0\n1"), P("N=1\n1")), P("N=1\n0 1\n1 1"));
	EXPECT_EQ(next_concat(P("N=2\n00 01"), P("N=2\n10 00")), P("N=2\n00 01 10 00"));
	EXPECT_EQ(error_code([] { next_concat(P("N=1\n0"), P("N=2\n00")); }), Errc::dimension_mismatch);
}

TEST(NextConcat, ProductSizeCollapsesOnlyWhenSplitIsAmbiguous)
{
	// {0, 0 0} -> {0, 0 0}: lengths overlap, [0 0 0] arises twice
	Pattern p = P("N=1\n0\n0 0");
	EXPECT_EQ(next_concat(p, p).size(), 3u);
	EXPECT_LT(next_concat(p, p).size(), p.size() * p.size());
}

TEST(EnumerateUniverse, SizesMatchDirectCount)
{
	EXPECT_EQ(enumerate_universe(Dimension(1), LengthBound{1}), P("N=1\n0\n1"));
	EXPECT_EQ(enumerate_universe(Dimension(1), LengthBound{2}).size(), 6u);
	EXPECT_EQ(enumerate_universe(Dimension(2), LengthBound{2}).size(), 20u);
	for (unsigned n = 1; n <= 3; ++n)
		for (std::size_t l = 1; l <= 3; ++l)
			EXPECT_EQ(enumerate_universe(Dimension(n), LengthBound{l}).size(), oracle::universe_size(n, l));
}

TEST(EnumerateUniverse, VisitsInSortedOrder)
{
	std::vector<Sequence> seen;
	for_each_sequence(Dimension(2), LengthBound{3}, [&](const Sequence& s) {
		seen.push_back(s);
		return true;
	});
	EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
	EXPECT_EQ(seen.size(), 84u);
}

TEST(IsSpatial, Examples)
{
	EXPECT_TRUE(is_spatial(P("N=1\n0\n1")));
	EXPECT_FALSE(is_spatial(P("N=1\n0 1")));
	EXPECT_TRUE(is_spatial(Pattern(Dimension(1))));
}

TEST(PatFormat, ParsesCommentsBlanksAndDuplicates)
{
	Pattern p = P("# header comment\nN=2\n\n01 10   # trailing\n01 10\n  11\n");
	EXPECT_EQ(p.size(), 2u);
	EXPECT_EQ(format_pat(p), "N=2\n11\n01 10\n");
}

TEST(PatFormat, Errors)
{
	EXPECT_EQ(error_code([] { P("01\n"); }), Errc::syntax_error);
	EXPECT_EQ(error_code([] { P("N=x\n"); }), Errc::syntax_error);
	EXPECT_EQ(error_code([] { P("N=2\n011\n"); }), Errc::width_error);
	EXPECT_EQ(error_code([] { P("N=2\n0a\n"); }), Errc::syntax_error);
	EXPECT_EQ(error_code([] { P(""); }), Errc::syntax_error);
}

TEST(PatFormat, FormatThenParseIsIdentity)
{
	gen::Rng rng(7);
	for (int i = 0; i < 200; ++i) {
		Dimension d(static_cast<unsigned>(gen::uniform(rng, 1, 4)));
		Pattern p = gen::pattern(rng, d, 4, 10);
		EXPECT_EQ(parse_pat(format_pat(p)), p);
	}
}

// ---------------------------------------------------------------------------
// algebraic laws

TEST(Laws, UnionAndIntersection)
{
	gen::Rng rng(11);
	for (int i = 0; i < 300; ++i) {
		Dimension d(static_cast<unsigned>(gen::uniform(rng, 1, 3)));
		Pattern a = gen::pattern(rng, d, 3, 8), b = gen::pattern(rng, d, 3, 8), c = gen::pattern(rng, d, 3, 8);
		EXPECT_EQ(or_union(a, b), or_union(b, a));
		EXPECT_EQ(and_intersect(a, b), and_intersect(b, a));
		EXPECT_EQ(or_union(or_union(a, b), c), or_union(a, or_union(b, c)));
		EXPECT_EQ(and_intersect(and_intersect(a, b), c), and_intersect(a, and_intersect(b, c)));
		EXPECT_EQ(or_union(a, a), a);
		EXPECT_EQ(and_intersect(a, a), a);
		EXPECT_EQ(and_intersect(a, or_union(b, c)), or_union(and_intersect(a, b), and_intersect(a, c)));
	}
}

TEST(Laws, DeMorganExhaustiveAtTwoBits)
{
	const Dimension d(2);
	auto subset = [&](unsigned mask) {
		Pattern p(d);
		for (std::uint64_t w = 0; w < 4; ++w)
			if (mask & (1u << w))
				p.insert(Sequence(d, {w}));
		return p;
	};
	for (unsigned m1 = 0; m1 < 16; ++m1)
		for (unsigned m2 = 0; m2 < 16; ++m2) {
			Pattern p = subset(m1), q = subset(m2);
			EXPECT_EQ(not_spatial(or_union(p, q)), and_intersect(not_spatial(p), not_spatial(q)));
			EXPECT_EQ(not_spatial(and_intersect(p, q)), or_union(not_spatial(p), not_spatial(q)));
		}
}

TEST(Laws, NextAssociativeAndDistributive)
{
	gen::Rng rng(13);
	for (int i = 0; i < 200; ++i) {
		Dimension d(static_cast<unsigned>(gen::uniform(rng, 1, 2)));
		Pattern a = gen::pattern(rng, d, 2, 5), b = gen::pattern(rng, d, 2, 5), c = gen::pattern(rng, d, 2, 5);
		EXPECT_EQ(next_concat(next_concat(a, b), c), next_concat(a, next_concat(b, c)));
		EXPECT_EQ(next_concat(or_union(a, b), c), or_union(next_concat(a, c), next_concat(b, c)));
		EXPECT_EQ(next_concat(c, or_union(a, b)), or_union(next_concat(c, a), next_concat(c, b)));
	}
}

TEST(Laws, NextIsNotCommutative)
{
	EXPECT_NE(next_concat(P("N=1\n0"), P("N=1\n1")), next_concat(P("N=1\n1"), P("N=1\n0")));
}

TEST(Laws, NextSizeIsProductWhenOneSideHasUniformLength)
{
	gen::Rng rng(17);
	for (int i = 0; i < 200; ++i) {
		Dimension d(static_cast<unsigned>(gen::uniform(rng, 1, 2)));
		Pattern a = gen::pattern(rng, d, 3, 6);
		Pattern b = gen::same_length(rng, d, gen::uniform(rng, 1, 3), 6);
		EXPECT_EQ(next_concat(a, b).size(), a.size() * b.size());
		EXPECT_EQ(next_concat(b, a).size(), a.size() * b.size());
		Pattern c = gen::pattern(rng, d, 3, 6);
		EXPECT_LE(next_concat(a, c).size(), a.size() * c.size());
	}
}

TEST(Laws, BoundedComplementIsAnInvolution)
{
	gen::Rng rng(19);
	for (int i = 0; i < 100; ++i) {
		Dimension d(static_cast<unsigned>(gen::uniform(rng, 1, 2)));
		LengthBound bound{gen::uniform(rng, 1, 3)};
		Pattern p = gen::pattern(rng, d, bound.l_max, 10);
		Pattern c = not_bounded(p, bound);
		EXPECT_EQ(c.size() + p.size(), oracle::universe_size(d.bits(), bound.l_max));
		EXPECT_EQ(not_bounded(c, bound), p);
	}
}
