#pragma once

#include "kmtk/building.hpp"
#include "kmtk/weyl.hpp"

#include <complex>
#include <string>
#include <vector>

namespace kmtk {

using DiskPoint = std::complex<double>;

/// Placements are for plotting only; coordinates are accurate to about 1e-9
/// for the depths rendered here.
inline constexpr double kPlacementTolerance = 1e-9;

struct PlacedPolygon
{
	WeylElement w;
	std::vector<DiskPoint> vertices; // r corners, counter-clockwise for even length
	DiskPoint center;
};

/// Tiling of the Poincaré disk by regular right-angled r-gons. Side i of the
/// base polygon is the mirror of s_i; sides i and i+1 meet at a right angle.
class PoincareApartment
{
  public:
	explicit PoincareApartment(int r);

	int r() const noexcept { return r_; }
	DiskPoint reflect(int side, DiskPoint z) const;
	DiskPoint act(WeylElement const &w, DiskPoint z) const;
	PlacedPolygon place(WeylElement const &w) const;

	/// Closed outline of w·P with `samples` points per side, following the
	/// circular arcs.
	std::vector<DiskPoint> outline(WeylElement const &w, int samples) const;

  private:
	int r_;
	std::vector<DiskPoint> corners_;  // corner k joins sides k-1 and k
	std::vector<DiskPoint> centers_;  // mirror circle centers
	double radius_ = 0;               // common mirror circle radius
	Gcm gcm_;
};

struct ApartmentPlacement
{
	WeylElement w;
	PlacedPolygon polygon;
};

ApartmentPlacement apartment_retraction(Building const &b, PoincareApartment const &ap,
                                        Chamber const &c);

struct SvgTiling
{
	std::string svg;
	std::vector<std::size_t> polygons_per_depth;
};

/// One <polygon> per Weyl element of length <= depth, colored by length.
SvgTiling apartment_svg(int r, int depth, int samples_per_side = 12);

} // namespace kmtk
