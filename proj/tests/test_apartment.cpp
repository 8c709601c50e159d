#include "doctest.h"

#include "kmtk/apartment.hpp"
#include "kmtk/building.hpp"

#include <cmath>
#include <regex>

using namespace kmtk;

TEST_CASE("Mirror reflections are involutions fixing their mirror")
{
	PoincareApartment ap(5);
	auto base = ap.place(identity_element(right_angled_fuchsian_gcm(5)));
	REQUIRE(base.vertices.size() == 5);
	for (int i = 0; i < 5; ++i)
	{
		DiskPoint z(0.1 * i - 0.2, 0.05 * i);
		CHECK(std::abs(ap.reflect(i, ap.reflect(i, z)) - z) < 1e-9);
		// Corners i and i+1 lie on mirror i.
		for (int k : {i, (i + 1) % 5})
			CHECK(std::abs(ap.reflect(i, base.vertices[std::size_t(k)]) -
			               base.vertices[std::size_t(k)]) < 1e-9);
	}
	for (auto const &v : base.vertices)
		CHECK(std::abs(v) < 1.0);
}

TEST_CASE("Corner angles are right angles")
{
	PoincareApartment ap(6);
	auto gcm = right_angled_fuchsian_gcm(6);
	auto base = ap.place(identity_element(gcm));
	// Four polygons meet at every corner: the base, s_i, s_{i+1}, s_i s_{i+1}.
	for (int i = 0; i < 6; ++i)
	{
		int w[] = {i, (i + 1) % 6};
		auto opposite = ap.place(normal_form(gcm, w));
		DiskPoint corner = base.vertices[std::size_t((i + 1) % 6)];
		bool shared = false;
		for (auto const &v : opposite.vertices)
			shared = shared || std::abs(v - corner) < 1e-7;
		CHECK(shared);
	}
}

TEST_CASE("SVG tiling polygon counts")
{
	std::vector<std::size_t> cumulative{1, 6, 21, 61};
	for (int d = 0; d <= 3; ++d)
	{
		auto t = apartment_svg(5, d);
		std::size_t total = 0;
		for (auto c : t.polygons_per_depth)
			total += c;
		CHECK(total == cumulative[std::size_t(d)]);
		std::regex poly("<polygon ");
		auto n = std::distance(std::sregex_iterator(t.svg.begin(), t.svg.end(), poly),
		                       std::sregex_iterator());
		CHECK(std::size_t(n) == total);
		CHECK(t.svg.rfind("<?xml", 0) == 0);
		CHECK(t.svg.find("</svg>") != std::string::npos);
	}
	// Identical inputs give identical bytes.
	CHECK(apartment_svg(5, 2).svg == apartment_svg(5, 2).svg);
}

TEST_CASE("Retraction onto the standard apartment")
{
	Building b(FuchsianParams::uniform(5, 2));
	PoincareApartment ap(5);
	for (auto const &level : b.ball(3))
		for (auto const &c : level)
		{
			auto p = apartment_retraction(b, ap, c);
			CHECK(p.w.length() == c.gallery_length());
			CHECK(p.polygon.w == p.w);
			CHECK(std::abs(p.polygon.center) < 1.0);
		}
}
