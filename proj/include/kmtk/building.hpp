#pragma once

#include "kmtk/rootdata.hpp"
#include "kmtk/weyl.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kmtk {

/// gamma_type^exponent, exponent in 1..q_type.
struct Syllable
{
	int type = 0;
	int exponent = 1;
	auto operator<=>(Syllable const &) const = default;
};

/// A chamber of the right-angled building, identified with the element of
/// the graph product that carries the base chamber onto it. Syllables are
/// stored in the lexicographically least reduced form.
class Chamber
{
  public:
	Chamber() = default;

	std::span<Syllable const> syllables() const noexcept { return s_; }
	int gallery_length() const noexcept { return int(s_.size()); }
	bool is_base() const noexcept { return s_.empty(); }
	std::string str() const;

	// ShortLex: shorter first, then lexicographic on (type, exponent).
	std::strong_ordering operator<=>(Chamber const &o) const;
	bool operator==(Chamber const &) const = default;

  private:
	friend class Building;
	explicit Chamber(std::vector<Syllable> s) : s_(std::move(s)) {}
	std::vector<Syllable> s_;
};

struct VertexResidue
{
	Chamber base;
	int type = 0; // the residue has types {type, type+1}
};

/// Panels of type i against panels of type i+1; an edge is a chamber.
struct LinkGraph
{
	int left = 0;  // panels of type i
	int right = 0; // panels of type i+1
	std::size_t chambers = 0;
	std::vector<int> incidence; // left x right, chamber counts

	bool complete_bipartite() const;
};

struct PresentationReport
{
	bool cyclic_relations = false;
	bool adjacent_commutators = false;
	bool nonadjacent_commutators_nontrivial = false;
	int samples = 0;
	int sample_failures = 0;
	std::vector<std::string> failures;

	bool passed() const
	{
		return cyclic_relations && adjacent_commutators &&
		       nonadjacent_commutators_nontrivial && sample_failures == 0;
	}
};

/// Right-angled Fuchsian building with polygon size r and thickness 1+q_i,
/// realized as the Cayley model of the graph product of cyclic groups
/// Z/(q_i+1) over the r-cycle.
class Building
{
  public:
	explicit Building(FuchsianParams params);
	Building(FuchsianParams params, Gcm weyl_gcm);

	FuchsianParams const &params() const noexcept { return params_; }
	Gcm const &weyl_gcm() const noexcept { return gcm_; }
	int rank() const noexcept { return params_.r; }
	int thickness(int type) const { return params_.q[std::size_t(type)]; }
	bool commute(int i, int j) const;

	Chamber base() const { return Chamber(); }
	Chamber multiply(Chamber const &c, Syllable s) const;
	Chamber multiply(Chamber const &c, Chamber const &d) const;
	Chamber inverse(Chamber const &c) const;
	/// Normal form of an arbitrary syllable word.
	Chamber from_word(std::span<Syllable const> word) const;

	std::vector<Chamber> panel_chambers(Chamber const &c, int type) const;
	WeylElement w_distance(Chamber const &c, Chamber const &d) const;

	/// Chambers at gallery distance <= N from the base, grouped by distance,
	/// ShortLex inside each group.
	std::vector<std::vector<Chamber>> ball(int N, std::size_t limit = 10'000'000) const;

	std::vector<Chamber> residue_chambers(VertexResidue const &v) const;
	LinkGraph link(VertexResidue const &v) const;

	PresentationReport verify_presentation(int sample_size, std::uint64_t seed) const;

	/// Expected ball size: sum over Weyl elements of length <= N of the
	/// product of thicknesses along a reduced word.
	std::uint64_t expected_ball_size(int N) const;

  private:
	Chamber canonical(std::vector<Syllable> reduced) const;
	int modulus(int type) const { return params_.q[std::size_t(type)] + 1; }

	FuchsianParams params_;
	Gcm gcm_;
};

} // namespace kmtk
