#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace kmtk {

/// Integer matrix with 2 on the diagonal, non-positive off-diagonal entries
/// and matched zero pattern. Immutable once constructed.
class Gcm
{
  public:
	Gcm(int n, std::vector<int> entries);
	Gcm(std::vector<std::vector<int>> const &rows);

	int rank() const noexcept { return n_; }
	int operator()(int i, int j) const { return a_[std::size_t(i * n_ + j)]; }
	std::vector<int> const &entries() const noexcept { return a_; }
	bool is_symmetric() const;

	nlohmann::json to_json() const;
	static Gcm from_json(nlohmann::json const &j);
	static Gcm load(std::string const &path);

	auto operator<=>(Gcm const &) const = default;

  private:
	int n_;
	std::vector<int> a_;
};

/// Order of a product of two generators. Either finite or infinite.
class Order
{
  public:
	constexpr Order() = default;
	constexpr explicit Order(int v) : value_(v) {}
	static constexpr Order infinite() { return Order(); }

	constexpr bool is_infinite() const noexcept { return value_ == 0; }
	constexpr int value() const noexcept { return value_; }
	std::string str() const;

	constexpr bool operator==(Order const &) const = default;

  private:
	int value_ = 0; // 0 encodes infinity
};

class CoxeterMatrix
{
  public:
	// Only 1 on the diagonal and {2,3,4,6,inf} off it are accepted.
	CoxeterMatrix(int n, std::vector<Order> m);

	int rank() const noexcept { return n_; }
	Order operator()(int i, int j) const { return m_[std::size_t(i * n_ + j)]; }

	/// Right-angled r-gon group: 2 for cyclic neighbours, inf otherwise.
	static CoxeterMatrix right_angled_polygon(int r);

	bool operator==(CoxeterMatrix const &) const = default;

  private:
	int n_;
	std::vector<Order> m_;
};

/// Polygon size, per-panel thickness parameters and characteristic.
struct FuchsianParams
{
	int r = 5;
	std::vector<int> q; // size r; q[i] >= 2
	int p = 0;          // 0 when no finite-field model was requested

	static FuchsianParams uniform(int r, int q);
	void validate(bool need_prime_power = false) const;
	bool constant_thickness() const;
};

/// Exponent of the edge {i,j} of the Coxeter diagram of a GCM from the pair
/// (A[i][j], A[j][i]).
Order coxeter_exponent(int a, int b);

CoxeterMatrix coxeter_matrix_of(Gcm const &gcm);

struct AdmissibilityVerdict
{
	bool admissible = false;
	std::optional<std::pair<int, int>> offending; // first failing pair
	std::optional<Order> exponent;                // its Coxeter exponent
	std::string reason;
};

/// Does the GCM have the right-angled r-gon group as Weyl group, with every
/// non-adjacent pair having both entries <= -1? Indices are read mod r.
AdmissibilityVerdict fuchsian_admissible(Gcm const &gcm, int r);

/// Both A[i-1][i+1] and A[i+1][i-1] are <= -2 (indices mod r).
bool abelian_radical_condition(Gcm const &gcm, int i);

/// Every admissible rank-r GCM with |A[i][j]| <= coeff_bound, in
/// lexicographic order of the row-major entries.
std::vector<Gcm> enumerate_admissible_gcms(int r, int coeff_bound,
                                           std::size_t limit = 1'000'000);

/// The admissible GCM with every non-adjacent entry equal to -c.
Gcm right_angled_fuchsian_gcm(int r, int c = 2);

} // namespace kmtk
