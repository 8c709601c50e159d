#include "doctest.h"

#include "kmtk/error.hpp"
#include "kmtk/field.hpp"
#include "kmtk/laurent_matrix.hpp"
#include "kmtk/treewall.hpp"

#include <random>
#include <set>

using namespace kmtk;

namespace {

bool same_on_ball(FieldPtr const &f, int radius, VertexMap const &a, VertexMap const &b)
{
	VertexRegistry reg(f);
	BallDomain dom(reg, TreeVertex(0, Series(f)), radius);
	return dom.table_of(a) == dom.table_of(b);
}

VertexMap element_map(TreeWallElement g)
{
	return [g = std::move(g)](TreeVertex const &v) { return g.act(v); };
}

VertexMap matrix_map(LaurentMatrix g)
{
	return [g = std::move(g)](TreeVertex const &v) { return act(g, v); };
}

} // namespace

TEST_CASE("Affine action and composition")
{
	auto f = FiniteField::make(3);
	std::mt19937_64 rng(1);
	VertexRegistry reg(f);
	auto ids = ball(reg, TreeVertex(0, Series(f)), 3);
	for (int k = 0; k < 100; ++k)
	{
		auto g = TreeWallElement::general(int(rng() % 5) - 2, random_unit(f, rng, 4),
		                                  random_series(f, rng, -3, 3));
		auto h = TreeWallElement::general(int(rng() % 5) - 2, random_unit(f, rng, 4),
		                                  random_series(f, rng, -3, 3));
		auto gh = g * h;
		auto gi = g.inverse();
		for (int s = 0; s < 10; ++s)
		{
			auto const &v = reg.vertex(ids[rng() % ids.size()]);
			CHECK(gh.act(v) == g.act(h.act(v)));
			CHECK(gi.act(g.act(v)) == v);
			CHECK(busemann(g.act(v)) - busemann(v) == -2 * g.tau_exponent());
			auto w = reg.vertex(ids[rng() % ids.size()]);
			CHECK(tree_distance(g.act(v), g.act(w)) == tree_distance(v, w));
		}
	}
	CHECK_THROWS_AS(TreeWallElement::scaling(Series::monomial(f, 1, 1)), PreconditionError);
	CHECK(TreeWallElement::translation(Series::one(f)).is_translation());
	CHECK(TreeWallElement::scaling(Series::monomial(f, 2, 0)).is_scaling());
}

TEST_CASE("Matrix dictionary")
{
	for (int q : {2, 3, 4})
	{
		auto f = FiniteField::make(q);
		std::mt19937_64 rng{std::uint64_t(q)};
		for (int k = 0; k < 10; ++k)
		{
			auto x = random_series(f, rng, -2, 6);
			CHECK(same_on_ball(f, 3, matrix_map(LaurentMatrix::upper(x)),
			                   element_map(TreeWallElement::translation(x))));
			auto s = random_unit(f, rng, 6);
			CHECK(same_on_ball(f, 3, matrix_map(LaurentMatrix::diagonal(s, Series::one(f))),
			                   element_map(TreeWallElement::scaling(s))));
		}
		for (int m = -2; m <= 2; ++m)
			CHECK(same_on_ball(f, 3, matrix_map(LaurentMatrix::tau_power(f, m)),
			                   element_map(TreeWallElement::tau_power(f, m))));
	}
}

TEST_CASE("Parametrized vertices cover the horosphere sphere")
{
	auto f = FiniteField::make(3);
	int N = 2, m = 3;
	std::set<std::string> seen;
	TreeVertex vN = TreeVertex::line(f, N);
	for (int code = 0; code < 27; ++code)
	{
		std::vector<int> c{code % 3, (code / 3) % 3, code / 9};
		auto v = parametrized_vertex(f, N, c);
		CHECK(busemann(v) == m - N);
		CHECK(tree_distance(v, vN) == m);
		seen.insert(v.str());
	}
	CHECK(seen.size() == 27);
	CHECK(parametrized_vertex(f, N, {}) == vN);
}

TEST_CASE("Conjugation by tau")
{
	auto f = FiniteField::make(2);
	auto u = Series::monomial(f, 1, 1) + Series::monomial(f, 1, 4);
	for (int m = -3; m <= 3; ++m)
	{
		auto c = conj_by_tau(TreeWallElement::translation(u), m);
		CHECK(c.shift().valuation() == 1 - 2 * m);
		CHECK(c.shift() == u.shifted(-2 * m));
	}
	CHECK_THROWS_AS(conj_by_tau(TreeWallElement::tau_power(f, 1), 1), PreconditionError);
	// V_n is fixed pointwise exactly on the horoball {h <= -n}.
	CHECK(translation_fixes(Series::monomial(f, 1, -2), TreeVertex(-2, Series(f))));
	CHECK_FALSE(translation_fixes(Series::monomial(f, 1, -2), TreeVertex(-1, Series(f))));
}

TEST_CASE("Audited properties at small size")
{
	for (int q : {2, 3})
	{
		CAPTURE(q);
		auto f = FiniteField::make(q);
		CHECK(fixator_law_check(f, -4, 4, 4).passed);
		for (int n = -2; n <= 2; ++n)
			CHECK(horoball_check(f, n, 4, 4).passed);
		CHECK(intersection_check(f, 2, 4, -4, 4, 50, 2).passed);
		CHECK(abelian_exponent_check(f, -4, 4, 50, 2).passed);
		CHECK(tau_normalization_check(f, -4, 4, 4, 50, 2).passed);
		CHECK(decomposition_check(f, 4, -4, 4, 100, 2).passed);
	}
}

TEST_CASE("D_xi decomposition")
{
	auto f = FiniteField::make(3);
	auto s = Series::one(f) + Series::monomial(f, 1, 2);
	auto u0 = Series::monomial(f, 2, -3) + Series::monomial(f, 1, 1);
	auto d = TreeWallElement::scaling(s) * TreeWallElement::translation(u0);
	auto dec = decompose_D_xi(d, 6);
	// d = Translation(u) o k, so u = s u0 below the depth.
	CHECK(dec.u == (s * u0).truncated(6));
	CHECK((TreeWallElement::translation(dec.u) * dec.remainder).act(TreeVertex(2, u0)) ==
	      d.act(TreeVertex(2, u0)));
	for (int h = -6; h <= 6; ++h)
		CHECK(dec.remainder.act(TreeVertex(h, Series(f))) == TreeVertex(h, Series(f)));

	// The map version agrees with the exact one.
	auto dm = decompose_D_xi(f, element_map(d), 6);
	CHECK(dm.u == dec.u);

	// tau moves horospheres and is rejected.
	CHECK_THROWS_AS(decompose_D_xi(TreeWallElement::tau_power(f, 1), 4), PreconditionError);
	CHECK_THROWS_AS(decompose_D_xi(f, element_map(TreeWallElement::tau_power(f, 1)), 4),
	                PreconditionError);
}

TEST_CASE("P_xi decomposition recovers the tau exponent")
{
	auto f = FiniteField::make(2);
	std::mt19937_64 rng(4);
	for (int k = 0; k < 50; ++k)
	{
		int m = int(rng() % 7) - 3;
		auto g = TreeWallElement::general(m, random_unit(f, rng, 5), random_series(f, rng, -4, 4));
		auto p = decompose_P_xi(g, 6);
		CHECK(p.m == m);
		auto back = TreeWallElement::tau_power(f, p.m) * TreeWallElement::translation(p.u) * p.remainder;
		VertexRegistry reg(f);
		for (auto id : ball(reg, TreeVertex(0, Series(f)), 3))
			CHECK(back.act(reg.vertex(id)) == g.act(reg.vertex(id)));
	}
	// tau^2 has Busemann displacement -4, so m = 2; tau has displacement -2.
	CHECK(decompose_P_xi(TreeWallElement::tau_power(f, 2), 4).m == 2);
	CHECK(decompose_P_xi(TreeWallElement::tau_power(f, 1), 4).m == 1);
}

TEST_CASE("Sylow ball check")
{
	auto two = sylow_ball_check(FiniteField::make(2), 3);
	CHECK(two.passed);
	CHECK(two.details["order_U"] == 64);
	CHECK(two.details["order_S"] == 1);
	auto three = sylow_ball_check(FiniteField::make(3), 2);
	CHECK(three.passed);
	CHECK(three.details["order_S"] == 2);
	CHECK(three.details["order_B"] == 2 * three.details["order_U"].get<int>());
	CHECK_THROWS_AS(sylow_ball_check(FiniteField::make(2), 0), PreconditionError);
}

TEST_CASE("Proximality")
{
	auto f = FiniteField::make(2);
	std::vector<End> ends{{true, Series(f)},
	                      {false, Series::one(f)},
	                      {false, Series::monomial(f, 1, -3)},
	                      {false, Series::monomial(f, 1, 3)}};
	auto ck = proximality_demo(f, ends, 8, 4);
	CHECK(ck.passed);
	auto const &rows = ck.details["ends"];
	CHECK(rows[1]["threshold"] == 2);  // ceil((4 + 0) / 2)
	CHECK(rows[2]["threshold"] == 1);  // ceil((4 - 3) / 2)
	CHECK(rows[3]["threshold"] == 4);  // ceil((4 + 3) / 2)
	CHECK_THROWS_AS(proximality_demo(f, {{false, Series(f)}}, 4, 2), PreconditionError);
}
