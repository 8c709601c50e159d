#include "kmtk/apartment.hpp"

#include "kmtk/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace kmtk {

PoincareApartment::PoincareApartment(int r) : r_(r), gcm_(right_angled_fuchsian_gcm(r))
{
	double const pi = std::numbers::pi;
	// cosh(rho) = cot(pi/r) for the circumradius; Euclidean radius tanh(rho/2).
	double rho = std::acosh(1.0 / std::tan(pi / r));
	double e = std::tanh(rho / 2);
	double d = (e * e + 1) / (2 * e * std::cos(pi / r));
	radius_ = std::sqrt(d * d - 1);
	for (int k = 0; k < r; ++k)
	{
		double phi = 2 * pi * k / r;
		centers_.push_back(std::polar(d, phi));
		corners_.push_back(std::polar(e, phi - pi / r));
	}
}

DiskPoint PoincareApartment::reflect(int side, DiskPoint z) const
{
	DiskPoint c = centers_[std::size_t(side)];
	return c + radius_ * radius_ / std::conj(z - c);
}

DiskPoint PoincareApartment::act(WeylElement const &w, DiskPoint z) const
{
	for (auto it = w.word.rbegin(); it != w.word.rend(); ++it)
		z = reflect(*it, z);
	return z;
}

PlacedPolygon PoincareApartment::place(WeylElement const &w) const
{
	PlacedPolygon p{w, {}, act(w, DiskPoint(0, 0))};
	for (auto v : corners_)
		p.vertices.push_back(act(w, v));
	return p;
}

std::vector<DiskPoint> PoincareApartment::outline(WeylElement const &w, int samples) const
{
	require(samples >= 1, "samples per side must be >= 1");
	std::vector<DiskPoint> out;
	for (int k = 0; k < r_; ++k)
	{
		DiskPoint c = centers_[std::size_t(k)];
		DiskPoint a = corners_[std::size_t(k)];
		DiskPoint b = corners_[std::size_t((k + 1) % r_)];
		double ta = std::arg(a - c), tb = std::arg(b - c);
		double delta = std::remainder(tb - ta, 2 * std::numbers::pi);
		for (int s = 0; s < samples; ++s)
			out.push_back(act(w, c + std::polar(radius_, ta + delta * s / samples)));
	}
	return out;
}

ApartmentPlacement apartment_retraction(Building const &b, PoincareApartment const &ap,
                                        Chamber const &c)
{
	require(b.rank() == ap.r(), "apartment and building have different polygon sizes");
	WeylElement w = b.w_distance(b.base(), c);
	return {w, ap.place(w)};
}

SvgTiling apartment_svg(int r, int depth, int samples_per_side)
{
	require(depth >= 0, "depth must be >= 0");
	PoincareApartment ap(r);
	auto ball = enumerate_ball(right_angled_fuchsian_gcm(r), depth);

	static char const *const palette[] = {"#f4a261", "#e9c46a", "#2a9d8f", "#8ab17d",
	                                      "#457b9d", "#a8dadc", "#b5838d", "#6d6875"};
	std::string svg =
	    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
	    "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.02 -1.02 2.04 2.04\" "
	    "width=\"800\" height=\"800\">\n"
	    "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"#ffffff\" stroke=\"#000000\" "
	    "stroke-width=\"0.004\"/>\n";
	SvgTiling out;
	char buf[64];
	for (std::size_t n = 0; n < ball.size(); ++n)
	{
		out.polygons_per_depth.push_back(ball[n].size());
		for (auto const &w : ball[n])
		{
			std::string word;
			for (int s : w.word)
				word += std::to_string(s);
			svg += "<polygon data-length=\"" + std::to_string(n) + "\" data-word=\"" +
			       (word.empty() ? "e" : word) + "\" fill=\"" + palette[n % 8] +
			       "\" stroke=\"#222222\" stroke-width=\"0.002\" points=\"";
			bool first = true;
			for (auto z : ap.outline(w, samples_per_side))
			{
				// SVG's y axis points down; flip so the picture has the usual orientation.
				std::snprintf(buf, sizeof buf, "%s%.6f,%.6f", first ? "" : " ", z.real(),
				              -z.imag() + 0.0);
				svg += buf;
				first = false;
			}
			svg += "\"/>\n";
		}
	}
	svg += "</svg>\n";
	out.svg = std::move(svg);
	return out;
}

} // namespace kmtk
