#pragma once

#include "kmtk/field.hpp"

#include <climits>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace kmtk {

/// Laurent series sum c_k t^k over F_q known exactly for k < precision().
/// Coefficients at or above the precision are unknown; reading them raises
/// PrecisionError. An exact series has precision kExact.
class Series
{
  public:
	static constexpr int kExact = INT_MAX;
	static constexpr int kInfiniteValuation = INT_MAX;

	explicit Series(FieldPtr f) : f_(std::move(f)) {}
	static Series monomial(FieldPtr f, int c, int k);
	static Series one(FieldPtr f) { return monomial(std::move(f), 1, 0); }
	/// coeffs[i] is the coefficient of t^(lo+i).
	static Series from_coeffs(FieldPtr f, int lo, std::vector<int> coeffs, int precision = kExact);
	static Series from_terms(FieldPtr f, std::vector<std::pair<int, int>> const &terms,
	                         int precision = kExact);

	FieldPtr const &field() const noexcept { return f_; }
	int precision() const noexcept { return hi_; }
	bool is_exact() const noexcept { return hi_ == kExact; }
	int coeff(int k) const;

	/// Least exponent with a nonzero coefficient inside the window, or
	/// kInfiniteValuation if there is none.
	int valuation() const noexcept { return c_.empty() ? kInfiniteValuation : lo_; }
	/// Largest n with nu >= n certain.
	int valuation_lower_bound() const noexcept { return c_.empty() ? hi_ : lo_; }
	bool is_known_zero() const noexcept { return c_.empty() && is_exact(); }
	/// nu >= n, deciding from the window; PrecisionError if undecidable.
	bool valuation_at_least(int n) const;

	/// Sparse (exponent, coefficient) list of the nonzero known terms.
	std::vector<std::pair<int, int>> terms() const;
	std::string str() const;

	Series operator-() const;
	friend Series operator+(Series const &a, Series const &b);
	friend Series operator-(Series const &a, Series const &b);
	friend Series operator*(Series const &a, Series const &b);
	Series scaled(int c) const;
	Series shifted(int k) const; // multiply by t^k

	/// Exact representative of the class modulo {nu >= h}: the terms below h.
	Series truncated(int h) const;
	Series with_precision(int hi) const;
	/// Multiplicative inverse with relative precision at most `rel_precision`
	/// for non-monomial inputs.
	Series inverse(int rel_precision) const;
	/// a / b with the quotient known at least below `needed`, if the inputs allow.
	static Series divide(Series const &a, Series const &b, int needed);

	/// Structural equality: same precision and same known coefficients.
	bool operator==(Series const &o) const;
	/// Known coefficients agree below h (both must be known there).
	bool agrees_below(Series const &o, int h) const;
	std::size_t hash() const noexcept;

  private:
	Series(FieldPtr f, int lo, std::vector<int> c, int hi);
	void normalize();

	FieldPtr f_;
	int lo_ = 0;
	std::vector<int> c_; // empty, or both ends nonzero
	int hi_ = kExact;
};

} // namespace kmtk
