// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include "kmtk/apartment.hpp"
#include "kmtk/building.hpp"
#include "kmtk/chabauty.hpp"
#include "kmtk/field.hpp"
#include "kmtk/random.hpp"
#include "kmtk/treewall.hpp"
#include "kmtk/weyl.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace kmtk;

namespace {

struct Outcome
{
	bool passed = true;
	std::string note;

	void need(bool ok, std::string const &what)
	{
		if (!ok && passed)
		{
			passed = false;
			note = what;
		}
	}
	void absorb(Check const &c)
	{
		need(c.passed, c.name + (c.failures.empty() ? "" : ": " + c.failures.front()));
	}
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome growth_agreement()
{
	Outcome o;
	for (int r : {5, 6, 7})
	{
		auto t0 = std::chrono::steady_clock::now();
		auto gs = growth_coefficients(right_angled_fuchsian_gcm(r), 8);
		auto cf = fuchsian_closed_form(r).expand(8);
		for (int n = 0; n <= 8; ++n)
			o.need(BigInt(gs.coefficients[std::size_t(n)]) == cf[std::size_t(n)],
			       "r=" + std::to_string(r) + " degree " + std::to_string(n));
		o.need(seconds_since(t0) < 10.0, "r=" + std::to_string(r) + " over 10 s");
		if (r == 5)
			o.need(std::vector<std::uint64_t>(gs.coefficients.begin(), gs.coefficients.begin() + 6) ==
			           std::vector<std::uint64_t>{1, 5, 15, 40, 105, 275},
			       "r=5 sample values");
	}
	return o;
}

Outcome lattice_grid()
{
	Outcome o;
	int cells = 0;
	for (int r = 5; r <= 9; ++r)
		for (int q = 2; q <= 8; ++q, ++cells)
			o.need(lattice_criterion(r, q).lattice == (q >= r - 2),
			       "cell r=" + std::to_string(r) + " q=" + std::to_string(q));
	o.need(cells == 35, "grid size");
	auto v = lattice_criterion(5, 3);
	o.need(v.value && *v.value == 16, "W(1/3) at r=5 is not 16");
	return o;
}

Outcome coxeter_oracle()
{
	Outcome o;
	std::vector<std::pair<int, int>> pairs{{0, 0}, {-1, -1}, {-1, -2}, {-2, -1}, {-1, -3}, {-3, -1}};
	std::mt19937_64 rng(2024);
	std::set<std::pair<int, int>> sampled;
	while (sampled.size() < 10)
	{
		int a = -uniform_int(rng, 1, 8), b = -uniform_int(rng, 1, 8);
		if (a * b >= 4)
			sampled.insert({a, b});
	}
	pairs.insert(pairs.end(), sampled.begin(), sampled.end());
	for (auto [a, b] : pairs)
		o.need(coxeter_exponent(a, b) == order_of_product(Gcm(2, {2, a, b, 2}), 0, 1, 1000),
		       "pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
	return o;
}

Outcome building_audits()
{
	Outcome o;
	auto t0 = std::chrono::steady_clock::now();
	Building b(FuchsianParams::uniform(5, 2));
	auto ball = b.ball(3);
	std::vector<std::size_t> want{1, 11, 71, 391};
	std::size_t total = 0;
	std::vector<Chamber> all;
	for (int n = 0; n <= 3; ++n)
	{
		total += ball[std::size_t(n)].size();
		o.need(total == want[std::size_t(n)], "ball count at N=" + std::to_string(n));
		all.insert(all.end(), ball[std::size_t(n)].begin(), ball[std::size_t(n)].end());
	}
	for (auto const &c : all)
		for (int i = 0; i < 5; ++i)
		{
			auto p = b.panel_chambers(c, i);
			o.need(std::set<Chamber>(p.begin(), p.end()).size() == 3, "panel without 3 chambers");
		}
	std::mt19937_64 rng(7);
	for (int k = 0; k < 20; ++k)
	{
		VertexResidue v{all[uniform_below(rng, all.size())], int(uniform_below(rng, 5))};
		auto g = b.link(v);
		o.need(g.complete_bipartite() && g.left == 3 && g.right == 3, "link is not K_{3,3}");
	}
	auto pr = b.verify_presentation(1000, 7);
	o.need(pr.passed() && pr.samples == 1000, "presentation relations");
	o.need(seconds_since(t0) < 10.0, "over 10 s");
	return o;
}

Outcome treewall_suite()
{
	Outcome o;
	for (int q : {2, 3})
	{
		auto f = FiniteField::make(q);
		o.absorb(fixator_law_check(f, -8, 8, 8));
		for (int n = -4; n <= 4; ++n)
			o.absorb(horoball_check(f, n, 8, 8));
		o.absorb(intersection_check(f, 8, 8, -8, 8, 100, 5));
		o.absorb(abelian_exponent_check(f, -8, 8, 200, 5));
		o.absorb(tau_normalization_check(f, -8, 8, 8, 200, 5));
	}
	return o;
}

Outcome decompositions()
{
	Outcome o;
	for (int q : {2, 3})
	{
		auto c = decomposition_check(FiniteField::make(q), 8, -8, 8, 1000, 11);
		o.absorb(c);
		o.need(c.details["D_xi_round_trips"] == 1000, "D_xi round trips");
		o.need(c.details["P_xi_round_trips"] == 1000, "P_xi round trips");
	}
	return o;
}

Outcome chabauty_limit()
{
	Outcome o;
	auto t0 = std::chrono::steady_clock::now();
	auto f = FiniteField::make(2);
	for (int N : {2, 3, 4})
	{
		auto c = conjugate_stabilizer_limit(f, N, 8, 24);
		o.absorb(c);
		o.need(c.details["verdict"] == "Converged", "limit did not converge");
		o.need(!c.details["n0"].is_null() && c.details["n0"].get<int>() <= N + 2,
		       "threshold above N+2 at N=" + std::to_string(N));
		auto u = unipotent_contraction(f, N, 8, 24);
		o.absorb(u);
		o.need(u.details["verdict"] == "Converged", "unipotent conjugates did not converge");
	}
	o.need(seconds_since(t0) < 60.0, "over 60 s");
	return o;
}

Outcome prenilpotency()
{
	Outcome o;
	Gcm g = right_angled_fuchsian_gcm(5);
	auto a0 = -RootVector::simple(5, 0);
	auto a2 = -RootVector::simple(5, 2);
	auto s0a2 = apply(simple_reflection(g, 0), a2);

	o.need(bilinear_form(g, a0, a2) == -2, "B(-a0, -a2) != -2");
	auto r1 = prenilpotent_pair(g, a0, a2, 8);
	o.need(r1.verdict == Prenilpotency::NonPrenilpotent, "{-a0, -a2} not certified non-prenilpotent");
	o.need(verify(g, a0, a2, r1), "{-a0, -a2} certificate does not re-verify");

	o.need(bilinear_form(g, a0, s0a2) == 2, "B(-a0, s0(-a2)) != 2");
	auto r2 = prenilpotent_pair(g, a0, s0a2, 8);
	o.need(r2.verdict == Prenilpotency::Prenilpotent, "{-a0, s0(-a2)} not certified prenilpotent");
	o.need(verify(g, a0, s0a2, r2), "{-a0, s0(-a2)} certificate does not re-verify");
	return o;
}

Outcome sylow()
{
	Outcome o;
	for (int q : {2, 3})
		o.absorb(sylow_ball_check(FiniteField::make(q), 4));
	return o;
}

Outcome svg_tiling()
{
	Outcome o;
	std::vector<std::size_t> want{1, 6, 21, 61};
	for (int d = 0; d <= 3; ++d)
	{
		auto t = apartment_svg(5, d);
		std::size_t total = 0;
		for (auto c : t.polygons_per_depth)
			total += c;
		o.need(total == want[std::size_t(d)], "polygon count at depth " + std::to_string(d));
		try
		{
			std::istringstream in(t.svg);
			boost::property_tree::ptree tree;
			boost::property_tree::read_xml(in, tree);
			auto const &svg = tree.get_child("svg");
			o.need(svg.get<std::string>("<xmlattr>.xmlns") == "http://www.w3.org/2000/svg",
			       "missing SVG namespace");
			std::size_t polys = 0;
			std::function<void(boost::property_tree::ptree const &)> walk =
			    [&](boost::property_tree::ptree const &node) {
				    for (auto const &[name, child] : node)
				    {
					    polys += name == "polygon";
					    walk(child);
				    }
			    };
			walk(svg);
			o.need(polys == total, "polygon elements differ from the count at depth " +
			                           std::to_string(d));
		}
		catch (std::exception const &e)
		{
			o.need(false, std::string("malformed SVG: ") + e.what());
		}
	}
	return o;
}

} // namespace

int main()
{
	struct Criterion
	{
		int id;
		char const *name;
		Outcome (*run)();
	};
	Criterion const criteria[] = {
	    {1, "growth series agrees with the closed form, r = 5, 6, 7", growth_agreement},
	    {2, "lattice criterion grid and W(1/3) = 16", lattice_grid},
	    {3, "Coxeter exponent rule against order of products", coxeter_oracle},
	    {4, "building audits at (r, q) = (5, 2)", building_audits},
	    {5, "tree-wall horoball, intersection, exponent and tau checks", treewall_suite},
	    {6, "D_xi and P_xi decomposition round trips", decompositions},
	    {7, "Chabauty limit of conjugated stabilizers at q = 2", chabauty_limit},
	    {8, "prenilpotency certificates on the all-(-2) pentagon GCM", prenilpotency},
	    {9, "Sylow ball check at q = 2, 3", sylow},
	    {10, "SVG apartment tiling for r = 5", svg_tiling},
	};
	int failed = 0;
	for (auto const &c : criteria)
	{
		auto t0 = std::chrono::steady_clock::now();
		Outcome o;
		try
		{
			o = c.run();
		}
		catch (std::exception const &e)
		{
			o.passed = false;
			o.note = std::string("exception: ") + e.what();
		}
		double s = seconds_since(t0);
		std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", o.passed ? "PASS" : "FAIL", c.id, c.name,
		            s, o.passed ? "" : " -- ", o.note.c_str());
		std::fflush(stdout);
		failed += !o.passed;
	}
	std::printf("%d of %zu criteria passed\n", int(std::size(criteria)) - failed, std::size(criteria));
	return failed == 0 ? 0 : 1;
}
