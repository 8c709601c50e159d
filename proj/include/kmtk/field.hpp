#pragma once

#include <memory>
#include <string>
#include <vector>

namespace kmtk {

/// The finite field F_q with elements encoded as integers 0..q-1. For
/// q = p^k with k > 1 an element is the base-p digit string of its
/// polynomial coefficients modulo a monic irreducible polynomial.
class FiniteField
{
  public:
	/// Primes are native and q = 4 uses x^2 + x + 1. Other prime powers need
	/// `modulus`: monic, degree k, lowest coefficient first.
	static std::shared_ptr<FiniteField const> make(int q, std::vector<int> modulus = {});

	int q() const noexcept { return q_; }
	int p() const noexcept { return p_; }
	int degree() const noexcept { return k_; }
	std::vector<int> const &modulus() const noexcept { return modulus_; }

	int add(int a, int b) const { return add_[idx(a, b)]; }
	int sub(int a, int b) const { return add_[idx(a, neg_[std::size_t(b)])]; }
	int neg(int a) const { return neg_[std::size_t(a)]; }
	int mul(int a, int b) const { return mul_[idx(a, b)]; }
	int inv(int a) const; // throws on 0
	bool contains(int a) const noexcept { return a >= 0 && a < q_; }

	std::string describe() const;

  private:
	FiniteField(int q, int p, int k, std::vector<int> modulus);
	std::size_t idx(int a, int b) const { return std::size_t(a) * std::size_t(q_) + std::size_t(b); }

	int q_, p_, k_;
	std::vector<int> modulus_;
	std::vector<int> add_, mul_, neg_, inv_;
};

using FieldPtr = std::shared_ptr<FiniteField const>;

/// (p, k) with q = p^k, or (0, 0) when q is not a prime power.
std::pair<int, int> prime_power(int q);

} // namespace kmtk
