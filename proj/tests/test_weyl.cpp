#include "doctest.h"

#include "kmtk/error.hpp"
#include "kmtk/weyl.hpp"

#include <deque>
#include <map>
#include <random>

using namespace kmtk;

namespace {

// Lengths of all elements within distance N of 1 in the Cayley graph, by
// breadth-first search on reflection matrices.
std::vector<std::uint64_t> cayley_bfs(Gcm const &gcm, int N)
{
	int n = gcm.rank();
	std::vector<IntMatrix> gens;
	for (int i = 0; i < n; ++i)
		gens.push_back(simple_reflection(gcm, i).matrix);
	std::map<std::vector<std::int64_t>, int> seen;
	auto key = [n](IntMatrix const &m) {
		std::vector<std::int64_t> k;
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
				k.push_back(m(i, j));
		return k;
	};
	std::deque<IntMatrix> queue{IntMatrix::identity(n)};
	seen[key(queue.front())] = 0;
	std::vector<std::uint64_t> counts(std::size_t(N + 1), 0);
	counts[0] = 1;
	while (!queue.empty())
	{
		IntMatrix m = queue.front();
		queue.pop_front();
		int d = seen[key(m)];
		if (d == N)
			continue;
		for (auto const &g : gens)
		{
			IntMatrix x = m * g;
			if (seen.emplace(key(x), d + 1).second)
			{
				++counts[std::size_t(d + 1)];
				queue.push_back(x);
			}
		}
	}
	return counts;
}

std::vector<int> reversed(std::vector<int> w)
{
	return {w.rbegin(), w.rend()};
}

} // namespace

TEST_CASE("Simple reflections")
{
	Gcm g = right_angled_fuchsian_gcm(5);
	for (int i = 0; i < 5; ++i)
	{
		auto s = simple_reflection(g, i);
		CHECK(s.word == std::vector<int>{i});
		CHECK((s.matrix * s.matrix).is_identity());
		auto a = real_root(g, s, i);
		CHECK(a == -RootVector::simple(5, i));
		CHECK_FALSE(a.positive);
	}
}

TEST_CASE("Normal forms in the right-angled pentagon group")
{
	Gcm g = right_angled_fuchsian_gcm(5);
	int w1[] = {1, 0};
	CHECK(normal_form(g, w1).word == std::vector<int>{0, 1}); // adjacent types commute
	int w2[] = {2, 0};
	CHECK(normal_form(g, w2).word == std::vector<int>{2, 0});
	int w3[] = {3, 3};
	CHECK(normal_form(g, w3).length() == 0);
	int w4[] = {0, 1, 0};
	CHECK(normal_form(g, w4).word == std::vector<int>{1});
	int w5[] = {4, 2, 0, 1};
	CHECK(normal_form(g, w5).word == std::vector<int>{4, 1, 2, 0});
	int bad[] = {5};
	CHECK_THROWS_AS(normal_form(g, bad), PreconditionError);

	std::mt19937_64 rng(7);
	for (int k = 0; k < 200; ++k)
	{
		std::vector<int> w(std::size_t(rng() % 10));
		for (auto &x : w)
			x = int(rng() % 5);
		auto e = normal_form(g, w);
		auto f = normal_form(g, e.word);
		CHECK(f.word == e.word);
		CHECK(f.matrix == e.matrix);
		CHECK(e.length() <= int(w.size()));
		CHECK((int(w.size()) - e.length()) % 2 == 0);
		// w^-1 is the reversed word with the same length.
		CHECK(normal_form(g, reversed(w)).length() == e.length());
		CHECK(multiply(g, e, normal_form(g, reversed(w))).length() == 0);
	}
}

TEST_CASE("Order of products against the 2x2 oracle")
{
	CHECK(order_of_product(Gcm(2, {2, -1, -1, 2}), 0, 1) == Order(3));
	CHECK(order_of_product(Gcm(2, {2, -1, -2, 2}), 0, 1) == Order(4));
	CHECK(order_of_product(Gcm(2, {2, -3, -1, 2}), 0, 1) == Order(6));
	CHECK(order_of_product(Gcm(2, {2, 0, 0, 2}), 0, 1) == Order(2));
	CHECK(order_of_product(Gcm(2, {2, -2, -2, 2}), 0, 1).is_infinite());
	CHECK_THROWS_AS(order_of_product(Gcm(2, {2, -1, -1, 2}), 0, 1, 2), PreconditionError);
	Gcm g = right_angled_fuchsian_gcm(6);
	CHECK_THROWS_AS(order_of_product(g, 0, 0), PreconditionError);
	CHECK(order_of_product(g, 0, 1) == Order(2));
	CHECK(order_of_product(g, 0, 3).is_infinite());
}

TEST_CASE("Ball enumeration against Cayley-graph BFS")
{
	for (int r : {5, 6, 7})
	{
		Gcm g = right_angled_fuchsian_gcm(r);
		auto oracle = cayley_bfs(g, 5);
		auto ball = enumerate_ball(g, 5);
		REQUIRE(ball.size() == 6);
		for (int n = 0; n <= 5; ++n)
		{
			CHECK(ball[std::size_t(n)].size() == oracle[std::size_t(n)]);
			for (std::size_t k = 0; k < ball[std::size_t(n)].size(); ++k)
			{
				auto const &w = ball[std::size_t(n)][k];
				CHECK(w.length() == n);
				CHECK(normal_form(g, w.word).word == w.word);
				if (k > 0)
					CHECK(ball[std::size_t(n)][k - 1].word < w.word);
			}
		}
		std::size_t visited = 0;
		for_each_element(g, 5, [&](WeylElement const &) { return ++visited, true; });
		std::size_t total = 0;
		for (auto c : oracle)
			total += c;
		CHECK(visited == total);
	}
	// The finite group A_2 has six elements.
	Gcm a2(2, {2, -1, -1, 2});
	auto b = enumerate_ball(a2, 10);
	std::size_t size = 0;
	for (auto const &level : b)
		size += level.size();
	CHECK(size == 6);
	CHECK_THROWS_AS(enumerate_ball(right_angled_fuchsian_gcm(5), 8, 100), ResourceError);
}

TEST_CASE("Growth series and the closed form")
{
	std::vector<std::uint64_t> r5{1, 5, 15, 40, 105, 275};
	auto gs = growth_coefficients(right_angled_fuchsian_gcm(5), 5);
	CHECK(gs.coefficients == r5);
	for (int r : {5, 6, 7, 8})
	{
		auto cf = fuchsian_closed_form(r);
		auto bfs = cayley_bfs(right_angled_fuchsian_gcm(r), 6);
		auto ex = cf.expand(6);
		for (int n = 0; n <= 6; ++n)
			CHECK(ex[std::size_t(n)] == BigInt(bfs[std::size_t(n)]));
		auto g = growth_coefficients(right_angled_fuchsian_gcm(r), 6);
		REQUIRE(g.closed_form);
		CHECK(g.consistent());
	}
	// Recurrence a_n = (r-2) a_{n-1} - a_{n-2} for n >= 3.
	auto e = fuchsian_closed_form(6).expand(20);
	for (int n = 3; n <= 20; ++n)
		CHECK(e[std::size_t(n)] == 4 * e[std::size_t(n - 1)] - e[std::size_t(n - 2)]);
}

TEST_CASE("Lattice criterion")
{
	for (int r = 5; r <= 9; ++r)
		for (int q = 2; q <= 8; ++q)
		{
			CAPTURE(r);
			CAPTURE(q);
			auto v = lattice_criterion(r, q);
			// W(1/q) = (q+1)^2 / (q^2 - (r-2) q + 1) where the denominator is
			// positive and the ratio test passes.
			long den = long(q) * q - long(r - 2) * q + 1;
			bool finite = q >= r - 2;
			CHECK(v.lattice == finite);
			if (finite)
			{
				REQUIRE(v.value);
				CHECK(den > 0);
				CHECK(*v.value == Rational(long(q + 1) * (q + 1), den));
				CHECK(growth_partial_sum(r, q, 30) < *v.value);
			}
			else
			{
				CHECK_FALSE(v.value);
				CHECK(growth_partial_sum(r, q, 60) > 1000);
			}
		}
	CHECK(*lattice_criterion(5, 3).value == 16);
	CHECK(growth_partial_sum(5, 3, 0) == 1);
	CHECK(growth_partial_sum(5, 3, 1) == Rational(8, 3));
}

TEST_CASE("Prenilpotency certificates on the all-(-2) pentagon GCM")
{
	Gcm g = right_angled_fuchsian_gcm(5);
	auto a0 = -RootVector::simple(5, 0);
	auto a2 = -RootVector::simple(5, 2);
	auto s0a2 = apply(simple_reflection(g, 0), a2);
	CHECK(bilinear_form(g, a0, a2) == -2);
	CHECK(bilinear_form(g, a0, s0a2) == 2);

	auto r1 = prenilpotent_pair(g, a0, a2, 8);
	CHECK(r1.verdict == Prenilpotency::NonPrenilpotent);
	CHECK(verify(g, a0, a2, r1));

	auto r2 = prenilpotent_pair(g, a0, s0a2, 8);
	CHECK(r2.verdict == Prenilpotency::Prenilpotent);
	REQUIRE(r2.positive_witness);
	REQUIRE(r2.negative_witness);
	CHECK(verify(g, a0, s0a2, r2));

	// A forged verdict does not verify.
	auto forged = r1;
	forged.verdict = Prenilpotency::Prenilpotent;
	CHECK_FALSE(verify(g, a0, a2, forged));
	auto swapped = r2;
	swapped.positive_witness = swapped.negative_witness;
	CHECK_FALSE(verify(g, a0, s0a2, swapped));

	// Commuting simple roots are prenilpotent; s_0 s_1 makes both negative.
	auto r3 = prenilpotent_pair(g, RootVector::simple(5, 0), RootVector::simple(5, 1), 4);
	CHECK(r3.verdict == Prenilpotency::Prenilpotent);
	CHECK(verify(g, RootVector::simple(5, 0), RootVector::simple(5, 1), r3));
	// Simple roots of an infinite dihedral pair are not.
	auto r4 = prenilpotent_pair(g, RootVector::simple(5, 0), RootVector::simple(5, 2), 6);
	CHECK(r4.verdict == Prenilpotency::NonPrenilpotent);
	CHECK(verify(g, RootVector::simple(5, 0), RootVector::simple(5, 2), r4));
}

TEST_CASE("Real roots are signed coherently")
{
	Gcm g = right_angled_fuchsian_gcm(5);
	for (auto const &level : enumerate_ball(g, 4))
		for (auto const &w : level)
			for (int i = 0; i < 5; ++i)
			{
				auto a = real_root(g, w, i);
				CHECK(root_sign(a.coords) == (a.positive ? 1 : -1));
				// l(w s_i) > l(w) iff w(alpha_i) > 0.
				std::vector<int> ws = w.word;
				ws.push_back(i);
				CHECK((normal_form(g, ws).length() > w.length()) == a.positive);
			}
}

TEST_CASE("Panel-crossing successors")
{
	Gcm g = right_angled_fuchsian_gcm(5);
	auto id = identity_element(g);
	auto up = panel_crossing_successors(g, id, 2);
	REQUIRE(up.size() == 1);
	CHECK(up[0].word == std::vector<int>{2});
	auto down = panel_crossing_successors(g, simple_reflection(g, 2), 2);
	CHECK(down.size() == 2);
}
