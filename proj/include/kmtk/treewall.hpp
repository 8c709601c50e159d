#pragma once

#include "kmtk/laurent_matrix.hpp"
#include "kmtk/report.hpp"
#include "kmtk/series.hpp"
#include "kmtk/tree.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace kmtk {

/// Element (m, s, u) of the tree-wall model acting by
///   (h, x) -> (h - 2m, t^(-2m) s x + u).
/// Translation(u) = (0, 1, u), TauPower(m) = (m, 1, 0), Scaling(s) = (0, s, 0)
/// with s a unit series.
class TreeWallElement
{
  public:
	static TreeWallElement identity(FieldPtr f);
	static TreeWallElement translation(Series u);
	static TreeWallElement tau_power(FieldPtr f, int m);
	static TreeWallElement scaling(Series s);
	static TreeWallElement general(int m, Series s, Series u);

	int tau_exponent() const noexcept { return m_; }
	Series const &scale() const noexcept { return s_; }
	Series const &shift() const noexcept { return u_; }
	FieldPtr const &field() const noexcept { return s_.field(); }
	bool is_translation() const;
	bool is_scaling() const;

	TreeVertex act(TreeVertex const &v) const;
	/// this after o.
	TreeWallElement operator*(TreeWallElement const &o) const;
	TreeWallElement inverse(int rel_precision = 64) const;
	std::string str() const;

  private:
	TreeWallElement(int m, Series s, Series u) : m_(m), s_(std::move(s)), u_(std::move(u)) {}
	int m_;
	Series s_, u_;
};

using VertexMap = std::function<TreeVertex(TreeVertex const &)>;

inline int busemann(TreeVertex const &v)
{
	return v.h;
}

/// (u_N u_{N-1} ... u_{N-m+1}) . v_{N-m}; u_k is the coefficient of the
/// monomial c t^(-k) in the root group U_{a_k}. `coeffs[j]` belongs to u_{N-j}.
TreeVertex parametrized_vertex(FieldPtr f, int N, std::vector<int> const &coeffs);

/// tau^m g tau^-m for a translation or scaling g.
TreeWallElement conj_by_tau(TreeWallElement const &g, int m);

/// Translation(u) fixes v iff nu(u) >= h(v).
bool translation_fixes(Series const &u, TreeVertex const &v);

struct DDecomposition
{
	Series u;            // support below `depth`
	VertexMap remainder; // Translation(-u) after d; fixes L within depth
};

/// d = Translation(u) o k with k fixing the line within the ball of radius
/// `depth` about v_0. Rejects maps that move a horosphere near the line.
DDecomposition decompose_D_xi(FieldPtr f, VertexMap const &d, int depth);

struct DDecompositionExact
{
	Series u;
	TreeWallElement remainder;
};

DDecompositionExact decompose_D_xi(TreeWallElement const &d, int depth);

/// g = tau^m o Translation(u) o k.
struct PDecomposition
{
	TreeWallElement remainder;
	int m;
	Series u;
};

PDecomposition decompose_P_xi(TreeWallElement const &g, int depth);

/// Random series with support in [lo, hi).
Series random_series(FieldPtr const &f, std::mt19937_64 &rng, int lo, int hi);
/// Random unit series: nonzero constant term, support in [0, hi).
Series random_unit(FieldPtr const &f, std::mt19937_64 &rng, int hi);

// --- audited properties ---------------------------------------------------

/// Fixator law on all monomials c t^k, k in [lo, hi], and all vertices of
/// the ball of radius `depth` about v_0.
Check fixator_law_check(FieldPtr const &f, int lo, int hi, int depth);

/// V_n acts trivially on the horoball {h <= -n}, and U_{a_n} is simply
/// transitive on the upward edges at each horosphere vertex.
Check horoball_check(FieldPtr const &f, int n, int depth, int window_hi);

/// Intersections of the V_n and the fixators of rays towards xi, decided
/// from the action on the line.
Check intersection_check(FieldPtr const &f, int n_max, int depth, int lo, int hi,
                         int samples, std::uint64_t seed);

/// Translations commute and have exponent p.
Check abelian_exponent_check(FieldPtr const &f, int lo, int hi, int samples,
                             std::uint64_t seed);

/// Conjugation by tau^m shifts valuations by exactly -2m and matches the
/// composed action.
Check tau_normalization_check(FieldPtr const &f, int lo, int hi, int depth, int samples,
                              std::uint64_t seed);

/// Round trips of the D_xi and P_xi decompositions plus the pairwise trivial
/// intersections of K_L, <tau> and V.
Check decomposition_check(FieldPtr const &f, int depth, int lo, int hi, int samples,
                          std::uint64_t seed);

/// Finite shadow of the Iwahori subgroup of the edge [v_0, v_1] on the ball:
/// semidirect structure, normal Sylow subgroup and a normalizer
/// falsification search.
Check sylow_ball_check(FieldPtr const &f, int depth);

/// An end other than xi, given by the series x, or xi itself.
struct End
{
	bool is_xi = false;
	Series x;
};

/// tau^n pushes every end except -xi towards xi; reports the first n where
/// the rays from v_0 agree to `target_depth`.
Check proximality_demo(FieldPtr const &f, std::vector<End> const &ends, int n_max,
                       int target_depth);

} // namespace kmtk
