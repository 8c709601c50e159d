#pragma once

#include "kmtk/rootdata.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace kmtk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense square integer matrix with overflow-checked arithmetic.
class IntMatrix
{
  public:
	IntMatrix() = default;
	explicit IntMatrix(int n) : n_(n), a_(std::size_t(n * n), 0) {}
	static IntMatrix identity(int n);

	int size() const noexcept { return n_; }
	std::int64_t &operator()(int i, int j) { return a_[std::size_t(i * n_ + j)]; }
	std::int64_t operator()(int i, int j) const { return a_[std::size_t(i * n_ + j)]; }
	std::vector<std::int64_t> column(int j) const;
	bool is_identity() const;

	friend IntMatrix operator*(IntMatrix const &x, IntMatrix const &y);
	bool operator==(IntMatrix const &) const = default;
	std::size_t hash() const;

  private:
	int n_ = 0;
	std::vector<std::int64_t> a_;
};

/// A real root, in coordinates over the simple roots.
struct RootVector
{
	std::vector<std::int64_t> coords;
	bool positive = true;

	RootVector operator-() const;
	bool operator==(RootVector const &) const = default;
	static RootVector simple(int n, int i);
};

/// Element of the Weyl group of a GCM. `matrix` has the images of the simple
/// roots as columns; `word` is its ShortLex-least reduced expression.
struct WeylElement
{
	IntMatrix matrix;
	std::vector<int> word;

	int length() const noexcept { return int(word.size()); }
	bool operator==(WeylElement const &o) const { return matrix == o.matrix; }
};

// Reflection convention: s_i(alpha_j) = alpha_j - A[i][j] alpha_i.
WeylElement simple_reflection(Gcm const &gcm, int i);
WeylElement identity_element(Gcm const &gcm);

/// ShortLex normal form of the element represented by an arbitrary word.
WeylElement normal_form(Gcm const &gcm, std::span<int const> word);

/// Product of two elements, returned in normal form.
WeylElement multiply(Gcm const &gcm, WeylElement const &x, WeylElement const &y);

/// Exact order of s_i s_j when it is at most `cutoff`, otherwise infinity.
Order order_of_product(Gcm const &gcm, int i, int j, int cutoff = 1000);

/// Image w(alpha_i); the sign is checked to be coherent.
RootVector real_root(Gcm const &gcm, WeylElement const &w, int i);

/// Apply w to an arbitrary root-lattice vector.
RootVector apply(WeylElement const &w, RootVector const &v);

/// Sign of a root-lattice vector that must be a real root: +1 or -1.
int root_sign(std::span<std::int64_t const> coords);

inline constexpr std::size_t kDefaultElementLimit = 10'000'000;

/// Depth-first walk over every element of length <= max_length, each
/// reached exactly once through its smallest left descent. Returning false
/// from the visitor stops the walk.
void for_each_element(Gcm const &gcm, int max_length,
                      std::function<bool(WeylElement const &)> const &visit,
                      std::size_t limit = kDefaultElementLimit);

/// All elements of length <= N, grouped by length, ShortLex order inside
/// each group.
std::vector<std::vector<WeylElement>> enumerate_ball(Gcm const &gcm, int N,
                                                     std::size_t limit = kDefaultElementLimit);

/// Numerator and denominator of a rational generating function, lowest
/// degree first.
struct ClosedForm
{
	std::vector<std::int64_t> numerator;
	std::vector<std::int64_t> denominator;

	/// Power-series coefficients through degree N.
	std::vector<BigInt> expand(int N) const;
	Rational evaluate(Rational const &t) const;
};

struct GrowthSeries
{
	std::vector<std::uint64_t> coefficients;
	std::optional<ClosedForm> closed_form;

	/// True when the closed form (if any) expands to `coefficients`.
	bool consistent() const;
};

GrowthSeries growth_coefficients(Gcm const &gcm, int N,
                                 std::size_t limit = kDefaultElementLimit);

/// (1+t)^2 / (1 - (r-2)t + t^2).
ClosedForm fuchsian_closed_form(int r);

struct LatticeVerdict
{
	bool lattice = false;
	std::optional<Rational> value; // W(1/q) when the series converges
};

LatticeVerdict lattice_criterion(int r, int q);

/// sum_{n<=N} a_n q^{-n} for the right-angled r-gon growth series.
Rational growth_partial_sum(int r, int q, int N);

// --- prenilpotency -------------------------------------------------------

enum class Prenilpotency
{
	Prenilpotent,
	NonPrenilpotent,
	Unknown
};

char const *to_string(Prenilpotency p);

/// Records why x ∩ y is empty: x ⊆ c and y = -c. The form value B(x,c) >= 2
/// says the walls of x and c do not cross, and `chamber` (w with w·c > 0,
/// w·x < 0) orients the nesting.
struct SeparationCertificate
{
	RootVector x, y, c;
	std::int64_t form_value = 0;
	std::optional<WeylElement> chamber;
};

struct PrenilpotencyResult
{
	Prenilpotency verdict = Prenilpotency::Unknown;
	int depth = 0;
	std::optional<WeylElement> positive_witness; // w·a > 0 and w·b > 0
	std::optional<WeylElement> negative_witness; // w·a < 0 and w·b < 0
	std::optional<SeparationCertificate> separation;
};

/// Symmetric bilinear form x^T A y; only meaningful for symmetric GCMs.
std::int64_t bilinear_form(Gcm const &gcm, RootVector const &x, RootVector const &y);

PrenilpotencyResult prenilpotent_pair(Gcm const &gcm, RootVector const &a,
                                      RootVector const &b, int depth);

/// Re-check every certificate in `result` by direct matrix application and
/// the wall-relation oracle.
bool verify(Gcm const &gcm, RootVector const &a, RootVector const &b,
            PrenilpotencyResult const &result);

/// Weyl shadow of BwB·BsB: {ws} if l(ws) > l(w), otherwise {ws, w}.
std::vector<WeylElement> panel_crossing_successors(Gcm const &gcm, WeylElement const &w,
                                                   int s);

} // namespace kmtk
