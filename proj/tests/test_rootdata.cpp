#include "doctest.h"

#include "kmtk/error.hpp"
#include "kmtk/rootdata.hpp"

#include <set>

using namespace kmtk;

namespace {

// Order of s_0 s_1 on the rank-2 root lattice, by powering a 2x2 matrix.
int rank2_order(int a, int b, int cutoff = 1000)
{
	// s_0 = [[-1, -a], [0, 1]], s_1 = [[1, 0], [-b, -1]] acting on columns.
	long m00 = -1 + a * b, m01 = a, m10 = -b, m11 = -1;
	long p00 = 1, p01 = 0, p10 = 0, p11 = 1;
	for (int k = 1; k <= cutoff; ++k)
	{
		long n00 = p00 * m00 + p01 * m10, n01 = p00 * m01 + p01 * m11;
		long n10 = p10 * m00 + p11 * m10, n11 = p10 * m01 + p11 * m11;
		p00 = n00, p01 = n01, p10 = n10, p11 = n11;
		if (p00 == 1 && p01 == 0 && p10 == 0 && p11 == 1)
			return k;
		if (std::abs(p00) > 1'000'000'000 || std::abs(p01) > 1'000'000'000)
			return 0;
	}
	return 0;
}

} // namespace

TEST_CASE("GCM validation")
{
	CHECK_NOTHROW(Gcm(2, {2, -1, -3, 2}));
	CHECK_THROWS_AS(Gcm(2, {1, -1, -1, 2}), PreconditionError);
	CHECK_THROWS_AS(Gcm(2, {2, 1, -1, 2}), PreconditionError);
	CHECK_THROWS_AS(Gcm(2, {2, 0, -1, 2}), PreconditionError);
	CHECK_THROWS_AS(Gcm(2, {2, -1, -1}), PreconditionError);
	CHECK(Gcm(2, {2, -1, -1, 2}).is_symmetric());
	CHECK_FALSE(Gcm(2, {2, -1, -2, 2}).is_symmetric());
}

TEST_CASE("GCM JSON round trip")
{
	Gcm g = right_angled_fuchsian_gcm(6, 3);
	CHECK(Gcm::from_json(g.to_json()) == g);
	CHECK_THROWS(Gcm::from_json(nlohmann::json::parse("[[2, -1], [-1]]")));
}

TEST_CASE("Coxeter exponent rule")
{
	CHECK(coxeter_exponent(0, 0) == Order(2));
	CHECK(coxeter_exponent(-1, -1) == Order(3));
	CHECK(coxeter_exponent(-1, -2) == Order(4));
	CHECK(coxeter_exponent(-2, -1) == Order(4));
	CHECK(coxeter_exponent(-3, -1) == Order(6));
	CHECK(coxeter_exponent(-2, -2).is_infinite());
	CHECK(coxeter_exponent(-1, -4).is_infinite());
	CHECK(coxeter_exponent(-5, -7).is_infinite());
	CHECK_THROWS_AS(coxeter_exponent(1, -1), PreconditionError);
	CHECK_THROWS_AS(coxeter_exponent(0, -1), PreconditionError);

	for (int a = 0; a >= -6; --a)
		for (int b = 0; b >= -6; --b)
		{
			if ((a == 0) != (b == 0))
				continue;
			CAPTURE(a);
			CAPTURE(b);
			CHECK(coxeter_exponent(a, b).value() == rank2_order(a, b));
		}
}

TEST_CASE("Coxeter matrix of the right-angled Fuchsian GCM")
{
	for (int r = 5; r <= 8; ++r)
	{
		auto m = coxeter_matrix_of(right_angled_fuchsian_gcm(r));
		CHECK(m == CoxeterMatrix::right_angled_polygon(r));
		for (int i = 0; i < r; ++i)
		{
			CHECK(m(i, (i + 1) % r) == Order(2));
			CHECK(m(i, i) == Order(1));
			if (r > 3)
				CHECK(m(i, (i + 2) % r).is_infinite());
		}
	}
	CHECK_THROWS_AS(CoxeterMatrix(2, {Order(1), Order(5), Order(5), Order(1)}), PreconditionError);
}

TEST_CASE("Fuchsian admissibility")
{
	Gcm good = right_angled_fuchsian_gcm(5);
	auto v = fuchsian_admissible(good, 5);
	CHECK(v.admissible);
	CHECK_FALSE(v.offending);

	auto rows = std::vector<std::vector<int>>(5, std::vector<int>(5, 0));
	for (int i = 0; i < 5; ++i)
		for (int j = 0; j < 5; ++j)
			rows[std::size_t(i)][std::size_t(j)] = good(i, j);

	SUBCASE("adjacent entry nonzero")
	{
		rows[0][1] = rows[1][0] = -1;
		auto w = fuchsian_admissible(Gcm(rows), 5);
		CHECK_FALSE(w.admissible);
		REQUIRE(w.offending);
		CHECK(*w.offending == std::pair{0, 1});
		CHECK(w.exponent == Order(3));
		CHECK_FALSE(w.reason.empty());
	}
	SUBCASE("non-adjacent product below 4")
	{
		rows[1][3] = rows[3][1] = -1;
		auto w = fuchsian_admissible(Gcm(rows), 5);
		CHECK_FALSE(w.admissible);
		REQUIRE(w.offending);
		CHECK(*w.offending == std::pair{1, 3});
	}
	SUBCASE("rank mismatch")
	{
		CHECK_THROWS_AS(fuchsian_admissible(good, 6), PreconditionError);
	}
}

TEST_CASE("Abelian radical condition")
{
	Gcm g = right_angled_fuchsian_gcm(5);
	for (int i = 0; i < 5; ++i)
		CHECK(abelian_radical_condition(g, i));
	auto rows = std::vector<std::vector<int>>(5, std::vector<int>(5, 0));
	for (int i = 0; i < 5; ++i)
		for (int j = 0; j < 5; ++j)
			rows[std::size_t(i)][std::size_t(j)] = g(i, j);
	rows[4][1] = -1; // pair (i-1, i+1) = (4, 1) for i = 0
	rows[1][4] = -4;
	Gcm h(rows);
	CHECK(fuchsian_admissible(h, 5).admissible);
	CHECK_FALSE(abelian_radical_condition(h, 0));
	CHECK(abelian_radical_condition(h, 2));
}

TEST_CASE("Enumeration of admissible GCMs")
{
	// Non-adjacent pairs of a pentagon: 5, each with (a, b) in [-3, -1]^2 and
	// ab >= 4: (-2,-2), (-2,-3), (-3,-2), (-3,-3).
	auto all = enumerate_admissible_gcms(5, 3);
	CHECK(all.size() == 1024);
	std::set<std::vector<int>> distinct;
	for (std::size_t k = 0; k < all.size(); ++k)
	{
		CHECK(fuchsian_admissible(all[k], 5).admissible);
		distinct.insert(all[k].entries());
		if (k > 0)
			CHECK(all[k - 1].entries() < all[k].entries());
	}
	CHECK(distinct.size() == all.size());
	CHECK(enumerate_admissible_gcms(5, 2).size() == 1);
	CHECK(enumerate_admissible_gcms(5, 1).empty());
	CHECK_THROWS_AS(enumerate_admissible_gcms(5, 3, 100), ResourceError);
}

TEST_CASE("Fuchsian parameters")
{
	auto p = FuchsianParams::uniform(5, 2);
	CHECK_NOTHROW(p.validate());
	CHECK(p.constant_thickness());
	FuchsianParams bad{4, {2, 2, 2, 2}, 0};
	CHECK_THROWS_AS(bad.validate(), PreconditionError);
	FuchsianParams mixed{5, {2, 3, 2, 3, 2}, 0};
	CHECK_NOTHROW(mixed.validate());
	CHECK_FALSE(mixed.constant_thickness());
	FuchsianParams char2{5, {2, 4, 2, 8, 2}, 2};
	CHECK_NOTHROW(char2.validate(true));
	FuchsianParams wrong{5, {2, 3, 2, 2, 2}, 2};
	CHECK_THROWS_AS(wrong.validate(true), PreconditionError);
}
